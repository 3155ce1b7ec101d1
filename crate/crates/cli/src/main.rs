//! `plm`: command-line access to the plactic-like monoid library.

use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use plm_core::congruences::{equivalent_capped, CongruenceKind, DEFAULT_CAP};
use plm_core::deduction::{derive, is_isoterm, DeductionStep};
use plm_core::lattice::{build, to_dot, verify, LatticeName};
use plm_core::monoids::{builtin, falsify};
use plm_core::parse::{parse_basis, parse_identity, parse_identity_raw, parse_letter_word, parse_var_word};
use plm_core::properties::profile;
use plm_core::suite::{self, Mode};
use plm_core::varieties::{classify, descriptor, theory_satisfies};
use plm_core::{Error, Identity, Var, Word};

#[derive(Parser)]
#[command(name = "plm", version, about = "Identities, congruences and variety lattices of plactic-like monoids")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Exit with status 1 when the answer is negative.
    #[arg(long, global = true)]
    strict: bool,
    /// Largest content class a search may enumerate.
    #[arg(long, env = "PLM_CAP", default_value_t = DEFAULT_CAP, global = true)]
    cap: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// List the properties and catalogued varieties satisfied by an identity.
    Classify {
        identity: String,
        /// Only report membership in this variety.
        #[arg(long)]
        variety: Option<String>,
    },
    /// Decide whether two letter words are congruent, e.g. `equiv sylv "2 1 1" "1 2 1"`.
    Equiv { kind: String, u: String, v: String },
    /// Derive an identity from a basis given as a comma list or a file.
    Consequence {
        #[arg(long)]
        basis: String,
        identity: String,
    },
    /// Decide whether a word is an isoterm for a variety.
    Isoterm { variety: String, word: String },
    /// Print a built-in monoid or test an identity in it.
    Monoid {
        name: String,
        /// Print the full Cayley table.
        #[arg(long)]
        table: bool,
        /// Search for an assignment falsifying this identity.
        #[arg(long)]
        check: Option<String>,
    },
    /// Print, render or verify one of the lattices.
    Lattice {
        name: String,
        #[arg(long)]
        dot: bool,
        #[arg(long)]
        verify: bool,
    },
    /// Run the verification suite.
    Verify {
        #[arg(long, value_parser = ["paper", "quick"], default_value = "paper")]
        suite: String,
        /// Run a single criterion.
        #[arg(long)]
        criterion: Option<u8>,
    },
}

/// What a command produced: text, JSON, and whether the answer was positive.
struct Output {
    text: String,
    json: Value,
    positive: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Text => print!("{}", out.text),
                Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("serializable")),
            }
            if !out.positive && (cli.strict || matches!(cli.command, Command::Verify { .. })) {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<Output, Error> {
    match &cli.command {
        Command::Classify { identity, variety } => cmd_classify(identity, variety.as_deref()),
        Command::Equiv { kind, u, v } => cmd_equiv(kind, u, v, cli.cap),
        Command::Consequence { basis, identity } => cmd_consequence(basis, identity, cli.cap),
        Command::Isoterm { variety, word } => cmd_isoterm(variety, word, cli.cap),
        Command::Monoid { name, table, check } => cmd_monoid(name, *table, check.as_deref()),
        Command::Lattice { name, dot, verify } => cmd_lattice(name, *dot, *verify),
        Command::Verify { suite, criterion } => cmd_verify(suite, *criterion),
    }
}

fn cmd_classify(text: &str, variety: Option<&str>) -> Result<Output, Error> {
    let id = parse_identity(text)?;
    let prof = profile(&id);
    if let Some(name) = variety {
        let v = descriptor(name)?;
        let holds = theory_satisfies(&v, &id);
        return Ok(Output {
            text: format!("{id} {} {}\n", if holds { "holds in" } else { "fails in" }, v.name),
            json: json!({ "identity": id, "variety": v.name, "satisfied": holds }),
            positive: holds,
        });
    }
    let names = classify(&id);
    let props: Vec<&str> = prof.satisfied.iter().map(|p| p.tag()).collect();
    let text = format!(
        "identity:   {id}\nbalanced:   {}\nproperties: {}\nvarieties:  {}\n",
        prof.balanced,
        if props.is_empty() { "-".into() } else { props.join(", ") },
        if names.is_empty() { "-".into() } else { names.join(", ") },
    );
    Ok(Output {
        text,
        json: json!({ "identity": id, "balanced": prof.balanced, "properties": props, "varieties": names }),
        positive: !names.is_empty(),
    })
}

fn cmd_equiv(kind: &str, u: &str, v: &str, cap: usize) -> Result<Output, Error> {
    let k: CongruenceKind = kind.parse()?;
    let (a, b) = (parse_letter_word(u)?, parse_letter_word(v)?);
    let eq = equivalent_capped(k, &a, &b, cap)?;
    Ok(Output {
        text: format!("{}\n", if eq { "equivalent" } else { "not equivalent" }),
        json: json!({ "kind": k.name(), "u": a, "v": b, "equivalent": eq }),
        positive: eq,
    })
}

fn read_basis(arg: &str) -> Result<Vec<plm_core::parse::BasisEntry>, Error> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse { pos: 0, msg: format!("cannot read {arg}: {e}") })?;
        parse_basis(&text)
    } else {
        parse_basis(arg)
    }
}

fn describe_step(step: &DeductionStep, label: &str) -> String {
    let arrow = if step.forward { "→" } else { "←" };
    let sub: Vec<String> = step.substitution.iter().map(|(v, w)| format!("{v}↦{w}")).collect();
    format!("by {label} ({arrow}) with {}", sub.join(", "))
}

fn cmd_consequence(basis_arg: &str, text: &str, cap: usize) -> Result<Output, Error> {
    let entries = read_basis(basis_arg)?;
    let basis: Vec<Identity> = entries.iter().map(|e| e.identity.clone()).collect();
    let id = match parse_identity_raw(text) {
        Ok(id) => id,
        Err(e) => parse_identity(text).map_err(|_| e)?,
    };
    let labels: Vec<&str> = entries.iter().map(|e| e.label.as_str()).collect();
    match derive(&id, &basis, cap)? {
        Some(steps) => {
            let mut out = format!("{}\n", id.lhs);
            for s in &steps {
                out.push_str(&format!("  = {}    {}\n", s.result, describe_step(s, labels[s.basis_index])));
            }
            out.push_str(&format!("derivable in {} step(s)\n", steps.len()));
            Ok(Output {
                text: out,
                json: json!({ "identity": id, "basis": labels, "derivable": true, "steps": steps }),
                positive: true,
            })
        }
        None => Ok(Output {
            text: format!("{id}: not derivable (complete within content class)\n"),
            json: json!({ "identity": id, "basis": labels, "derivable": false, "steps": [] }),
            positive: false,
        }),
    }
}

fn cmd_isoterm(variety: &str, word: &str, cap: usize) -> Result<Output, Error> {
    let v = descriptor(variety)?;
    let w: Word<Var> = parse_var_word(word)?;
    let iso = is_isoterm(&v, &w, cap)?;
    Ok(Output {
        text: format!("{w} {} an isoterm for {}\n", if iso { "is" } else { "is not" }, v.name),
        json: json!({ "variety": v.name, "word": w, "isoterm": iso }),
        positive: iso,
    })
}

fn cmd_monoid(name: &str, table: bool, check: Option<&str>) -> Result<Output, Error> {
    let m = builtin(name)?;
    if let Some(text) = check {
        let id = parse_identity_raw(text).or_else(|_| parse_identity(text))?;
        let witness = falsify(&m, &id)?;
        let (text, json) = match &witness {
            None => {
                (format!("{} satisfies {id}\n", m.name), json!({ "monoid": m.name, "identity": id, "satisfied": true }))
            }
            Some(ev) => (
                format!("{} falsifies {id} at {}\n", m.name, ev.describe(&m)),
                json!({
                    "monoid": m.name,
                    "identity": id,
                    "satisfied": false,
                    "evaluation": ev.assignment.iter().map(|(v, &e)| (v.name(), m.element_name(e).to_string())).collect::<std::collections::BTreeMap<_, _>>(),
                }),
            ),
        };
        return Ok(Output { text, json, positive: witness.is_none() });
    }
    let zero = m.zero_element().map(|z| m.element_name(z).to_string());
    let mut json = json!({
        "monoid": m.name,
        "size": m.size(),
        "elements": m.element_names(),
        "identity": m.element_name(m.identity_element()),
        "zero": zero,
    });
    let text = if table {
        json["table"] = json!(m.table());
        m.to_string()
    } else {
        let mut elems: Vec<&str> = m.element_names().iter().take(32).map(String::as_str).collect();
        if m.size() > 32 {
            elems.push("...");
        }
        format!(
            "{}: {} elements, identity {}, zero {}\n  {}\n",
            m.name,
            m.size(),
            m.element_name(m.identity_element()),
            zero.as_deref().unwrap_or("-"),
            elems.join(" ")
        )
    };
    Ok(Output { text, json, positive: true })
}

fn cmd_lattice(name: &str, dot: bool, check: bool) -> Result<Output, Error> {
    let l: LatticeName = name.parse()?;
    let lat = build(l);
    if check {
        let report = verify(&lat);
        let mut text = format!("{l}: {} nodes, {} covers\n", report.nodes, report.covers);
        for c in &report.checks {
            text.push_str(&format!("{} {}\n", if c.passed { "ok  " } else { "FAIL" }, c.name));
            for f in &c.failures {
                text.push_str(&format!("     {f}\n"));
            }
        }
        let positive = report.passed();
        return Ok(Output { text, json: serde_json::to_value(&report).expect("serializable"), positive });
    }
    let covers: Vec<(&str, &str)> = lat.cover_names();
    if dot {
        let d = to_dot(&lat);
        return Ok(Output { text: d.clone(), json: json!({ "lattice": l, "dot": d }), positive: true });
    }
    let mut text = format!("{l}: {} nodes, top {}, bottom {}\n", lat.len(), lat.top(), lat.bottom());
    for (a, b) in &covers {
        text.push_str(&format!("  {a} < {b}\n"));
    }
    Ok(Output {
        text,
        json: json!({ "lattice": l, "nodes": lat.nodes, "covers": covers, "top": lat.top(), "bottom": lat.bottom() }),
        positive: true,
    })
}

fn cmd_verify(suite_name: &str, criterion: Option<u8>) -> Result<Output, Error> {
    let mode: Mode = suite_name.parse()?;
    let outcomes = match criterion {
        Some(id) => vec![suite::run(id, mode)?],
        None => suite::run_all(mode),
    };
    let mut text = String::new();
    for o in &outcomes {
        text.push_str(&format!(
            "{} {:>2} {} ({} ms): {}\n",
            if o.passed { "PASS" } else { "FAIL" },
            o.id,
            o.name,
            o.millis,
            o.detail
        ));
    }
    let positive = outcomes.iter().all(|o| o.passed);
    Ok(Output { text, json: json!({ "suite": suite_name, "passed": positive, "criteria": outcomes }), positive })
}
