//! The 26 overcommutative varieties, each characterized by a conjunction of
//! properties over balanced identities, with finite bases and generators.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::identity::{Identity, NamedIdentity};
use crate::properties::{clause, closure, PropertyKind};

use NamedIdentity::*;
use PropertyKind::*;

/// A variety given by its property characterization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VarietyDescriptor {
    pub name: String,
    pub properties: BTreeSet<PropertyKind>,
    pub basis: Option<Vec<NamedIdentity>>,
    pub generator_note: Option<String>,
}

impl VarietyDescriptor {
    pub fn is_canonical(&self) -> bool {
        CATALOG.iter().any(|e| e.name == self.name)
    }

    /// The basis as identities with their usual variable names.
    pub fn basis_identities(&self) -> Vec<Identity> {
        self.basis.iter().flatten().map(|n| n.identity()).collect()
    }
}

impl fmt::Display for VarietyDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

struct Entry {
    name: &'static str,
    properties: &'static [PropertyKind],
    basis: &'static [NamedIdentity],
    generator: Option<&'static str>,
}

const fn e(
    name: &'static str,
    properties: &'static [PropertyKind],
    basis: &'static [NamedIdentity],
    generator: Option<&'static str>,
) -> Entry {
    Entry { name, properties, basis, generator }
}

const CATALOG: [Entry; 26] = [
    e("baxt", &[CPre, CSuf], &[O22, T22], Some("N*/≡baxt")),
    e("sylvh", &[CPre], &[L2], Some("N*/≡sylv#")),
    e("sylv", &[CSuf], &[R2], Some("N*/≡sylv")),
    e("rstvsylvh", &[CPre, SSuf], &[O21, E21], Some("N*/(≡rSt ∧ ≡sylv#)")),
    e("lstvsylv", &[CSuf, SPre], &[O12, E12], Some("N*/(≡lSt ∧ ≡sylv)")),
    e("mstvS", &[Sub2, Rst1v, SPre, SSuf], &[O12, E12, O21, E21], None),
    e("lstvS", &[Sub2, Rst1v, SPre], &[O12, E12, L2], None),
    e("rstvS", &[Sub2, Rst1v, SSuf], &[O21, E21, R2], None),
    e("S", &[Sub2, Rst1v], &[L2, R2], None),
    e("hypo", &[Sub2], &[L2, R2, M3], Some("N*/≡hypo")),
    e("hypovlst", &[Sub2, SPre], &[M3, L2], Some("N*/(≡hypo ∧ ≡lSt)")),
    e("hypovrst", &[Sub2, SSuf], &[M3, R2], Some("N*/(≡hypo ∧ ≡rSt)")),
    e("hypovmst", &[Sub2, SPre, SSuf], &[M3], Some("N*/(≡hypo ∧ ≡mSt)")),
    e("M2v", &[Rst1v, SPre, SSuf], &[M2], None),
    e("M2v^sylvh", &[Rst1v, SPre], &[M2, L2], None),
    e("M2v^sylv", &[Rst1v, SSuf], &[M2, R2], None),
    e("M2v^S", &[Rst1v], &[M2, L2, R2], None),
    e("mst", &[SPre, SSuf], &[M2, M3], Some("N*/≡mSt")),
    e("lst", &[SPre], &[L1], Some("N*/≡lSt")),
    e("rst", &[SSuf], &[R1], Some("N*/≡rSt")),
    e("mst^sylvh", &[SPre, S1Suf], &[L2, M2, M3], Some("N*/(≡mSt ∨ ≡sylv#)")),
    e("mst^sylv", &[SSuf, S1Pre], &[R2, M2, M3], Some("N*/(≡mSt ∨ ≡sylv)")),
    e("mst^S", &[S1Pre, S1Suf], &[L2, R2, M2, M3], Some("N*/(≡hypo ∨ ≡mSt)")),
    e("lst^sylv", &[S1Pre], &[L1, M4], Some("N*/(≡lSt ∨ ≡sylv)")),
    e("rst^sylvh", &[S1Suf], &[R1, M4], Some("N*/(≡rSt ∨ ≡sylv#)")),
    e("jst", &[Rst1], &[L1, R1], Some("N*/≡jSt")),
];

/// Canonical names in catalog order.
pub fn canonical_names() -> Vec<&'static str> {
    CATALOG.iter().map(|e| e.name).collect()
}

/// All 26 descriptors in catalog order.
pub fn all() -> Vec<VarietyDescriptor> {
    CATALOG.iter().map(to_descriptor).collect()
}

fn to_descriptor(e: &Entry) -> VarietyDescriptor {
    VarietyDescriptor {
        name: e.name.to_string(),
        properties: e.properties.iter().copied().collect(),
        basis: Some(e.basis.to_vec()),
        generator_note: e.generator.map(str::to_string),
    }
}

/// Finite monoids whose varietal join with the commutative monoids is the named
/// variety, written as products of built-in monoids.
pub fn com_join_generator(name: &str) -> Option<&'static str> {
    Some(match name {
        "lst" => "FlipL",
        "rst" => "FlipR",
        "mst" => "FlipLxFlipR",
        "jst" => "SAB",
        "hypo" => "J2",
        "lst^sylv" => "J1dual",
        "rst^sylvh" => "J1",
        "mst^S" => "J1dualxJ1",
        "mst^sylvh" => "FlipLxJ1",
        "mst^sylv" => "FlipRxJ1dual",
        "hypovlst" => "J2xFlipL",
        "hypovrst" => "J2xFlipR",
        "hypovmst" => "J2xFlipLxFlipR",
        _ => return None,
    })
}

fn lookup(name: &str) -> Option<&'static Entry> {
    CATALOG.iter().find(|e| e.name.eq_ignore_ascii_case(name))
}

fn normalize_atom(atom: &str) -> String {
    let a = atom.trim();
    let a = a.strip_prefix("V_").unwrap_or(a);
    let a = a.replace("sylv#", "sylvh");
    match a.as_str() {
        "M2" | "M2var" | "m2" | "m2var" => "M2v".to_string(),
        "lSt" | "rSt" | "mSt" | "jSt" => a.to_lowercase(),
        _ => a,
    }
}

/// Resolves a name, an alias, or an expression built with `^`/`∧`/`&` (meet) and
/// `v`/`∨`/`|` (join) and parentheses.
pub fn descriptor(name: &str) -> Result<VarietyDescriptor> {
    let unknown = || Error::UnknownVariety(name.to_string());
    let text = name.replace(['∧', '&'], "^").replace('∨', "|").replace(" v ", "|");
    let tokens = tokenize(&text).ok_or_else(unknown)?;
    let mut p = ExprParser { tokens, i: 0 };
    let d = p.expr().map_err(|_| unknown())?;
    if p.i != p.tokens.len() {
        return Err(unknown());
    }
    Ok(d)
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Atom(String),
    Meet,
    Join,
    Open,
    Close,
}

fn tokenize(s: &str) -> Option<Vec<Tok>> {
    let mut out = Vec::new();
    let mut chars = s.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            c if c.is_whitespace() => {
                chars.next();
            }
            '^' => {
                chars.next();
                out.push(Tok::Meet)
            }
            '|' => {
                chars.next();
                out.push(Tok::Join)
            }
            '(' => {
                chars.next();
                out.push(Tok::Open)
            }
            ')' => {
                chars.next();
                out.push(Tok::Close)
            }
            c if c.is_alphanumeric() || c == '_' || c == '#' => {
                let mut atom = String::new();
                while let Some(&c) = chars.peek().filter(|c| c.is_alphanumeric() || **c == '_' || **c == '#') {
                    atom.push(c);
                    chars.next();
                }
                out.push(Tok::Atom(atom));
            }
            _ => return None,
        }
    }
    // canonical compound names such as "M2v^sylvh" stay single atoms
    let mut merged: Vec<Tok> = Vec::new();
    let mut i = 0;
    while i < out.len() {
        if let (Some(Tok::Atom(a)), Some(Tok::Meet), Some(Tok::Atom(b))) = (out.get(i), out.get(i + 1), out.get(i + 2))
        {
            let joined = format!("{}^{}", normalize_atom(a), normalize_atom(b));
            if lookup(&joined).is_some() && !matches!(out.get(i + 3), Some(Tok::Meet)) {
                merged.push(Tok::Atom(joined));
                i += 3;
                continue;
            }
        }
        merged.push(out[i].clone());
        i += 1;
    }
    Some(merged)
}

struct ExprParser {
    tokens: Vec<Tok>,
    i: usize,
}

impl ExprParser {
    fn expr(&mut self) -> Result<VarietyDescriptor> {
        let mut acc = self.operand()?;
        loop {
            match self.tokens.get(self.i) {
                Some(Tok::Meet) => {
                    self.i += 1;
                    let rhs = self.operand()?;
                    acc = meet(&acc, &rhs)?;
                }
                Some(Tok::Join) => {
                    self.i += 1;
                    let rhs = self.operand()?;
                    acc = join(&acc, &rhs);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn operand(&mut self) -> Result<VarietyDescriptor> {
        let fail = || Error::UnknownVariety(String::new());
        match self.tokens.get(self.i).cloned() {
            Some(Tok::Open) => {
                self.i += 1;
                let d = self.expr()?;
                if self.tokens.get(self.i) != Some(&Tok::Close) {
                    return Err(fail());
                }
                self.i += 1;
                Ok(d)
            }
            Some(Tok::Atom(a)) => {
                self.i += 1;
                atom(&normalize_atom(&a)).ok_or_else(fail)
            }
            _ => Err(fail()),
        }
    }
}

/// A single name, possibly a join written with an inner `v` such as `sylvhvsylv`.
fn atom(a: &str) -> Option<VarietyDescriptor> {
    if let Some(e) = lookup(a) {
        return Some(to_descriptor(e));
    }
    a.char_indices().filter(|&(_, c)| c == 'v').find_map(|(i, _)| {
        let (l, r) = (&a[..i], &a[i + 1..]);
        Some(join(&atom(&normalize_atom(l))?, &atom(&normalize_atom(r))?))
    })
}

/// Truth values of the nine properties on `id`, or `None` when the sides differ in
/// support or simple variables.
pub fn property_values(id: &Identity) -> Option<BTreeSet<PropertyKind>> {
    if !crate::properties::shares_support_and_simples(id) {
        return None;
    }
    Some(PropertyKind::ALL.into_iter().filter(|&p| clause(&id.lhs, &id.rhs, p)).collect())
}

/// Membership of `id` in the equational theory of `v`.
pub fn theory_satisfies(v: &VarietyDescriptor, id: &Identity) -> bool {
    if id.is_trivial() {
        return true;
    }
    if !id.is_balanced() {
        return false;
    }
    v.properties.iter().all(|&p| clause(&id.lhs, &id.rhs, p))
}

/// Names of every catalogued variety whose theory contains `id`.
pub fn classify(id: &Identity) -> Vec<&'static str> {
    if id.is_trivial() {
        return canonical_names();
    }
    if !id.is_balanced() {
        return Vec::new();
    }
    // each property is evaluated at most once
    let mut cache: [Option<bool>; 9] = [None; 9];
    let mut holds = |p: PropertyKind| {
        let i = PropertyKind::ALL.iter().position(|&q| q == p).expect("listed");
        *cache[i].get_or_insert_with(|| clause(&id.lhs, &id.rhs, p))
    };
    CATALOG.iter().filter(|e| e.properties.iter().all(|&p| holds(p))).map(|e| e.name).collect()
}

/// `a ≤ b` as varieties: the properties of `b` entail those of `a`.
pub fn leq(a: &VarietyDescriptor, b: &VarietyDescriptor) -> bool {
    closure(&b.properties).is_superset(&a.properties)
}

fn same_theory(a: &BTreeSet<PropertyKind>, b: &BTreeSet<PropertyKind>) -> bool {
    closure(a) == closure(b)
}

/// The canonical descriptor whose properties are equivalent to `props`, if any.
pub fn resolve(props: &BTreeSet<PropertyKind>) -> Option<VarietyDescriptor> {
    CATALOG.iter().find(|e| same_theory(&e.properties.iter().copied().collect(), props)).map(to_descriptor)
}

/// Varietal join: the theory is the intersection, so the properties are united.
pub fn join(a: &VarietyDescriptor, b: &VarietyDescriptor) -> VarietyDescriptor {
    let props: BTreeSet<PropertyKind> = a.properties.union(&b.properties).copied().collect();
    resolve(&props).unwrap_or_else(|| VarietyDescriptor {
        name: format!("({} v {})", a.name, b.name),
        properties: props,
        basis: None,
        generator_note: None,
    })
}

/// Varietal meet, looked up as the greatest lower bound among the catalogued varieties.
pub fn meet(a: &VarietyDescriptor, b: &VarietyDescriptor) -> Result<VarietyDescriptor> {
    for d in [a, b] {
        if !d.is_canonical() {
            return Err(Error::UnknownNode(d.name.clone(), "L3".into()));
        }
    }
    let lower: Vec<VarietyDescriptor> = all().into_iter().filter(|c| leq(c, a) && leq(c, b)).collect();
    lower
        .iter()
        .find(|c| lower.iter().all(|d| leq(d, c)))
        .cloned()
        .ok_or_else(|| Error::Construction(format!("no greatest lower bound for {a} and {b}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_identity;

    fn d(n: &str) -> VarietyDescriptor {
        descriptor(n).unwrap()
    }

    #[test]
    fn lookups_and_aliases() {
        assert_eq!(d("sylv").basis, Some(vec![R2]));
        assert_eq!(d("jst").properties, [Rst1].into());
        assert_eq!(d("mst∧S").name, "mst^S");
        assert_eq!(d("mst ^ S").basis, Some(vec![L2, R2, M2, M3]));
        assert_eq!(d("V_sylv#").name, "sylvh");
        assert_eq!(d("M2var").name, "M2v");
        assert_eq!(d("M2 ∧ V_sylv#").name, "M2v^sylvh");
        assert_eq!(d("sylvh ∨ sylv").name, "baxt");
        assert_eq!(d("sylv | sylvh").name, "baxt");
        assert_eq!(d("lst v rst").name, "mst");
        assert_eq!(d("(lst^sylv) v (rst^sylvh)").name, "mst^S");
        assert_eq!(d("sylv ^ lst").name, "lst^sylv");
        assert!(matches!(descriptor("plactic"), Err(Error::UnknownVariety(_))));
        assert!(descriptor("lst ^").is_err());
        assert_eq!(all().len(), 26);
    }

    #[test]
    fn theory_examples() {
        assert!(theory_satisfies(&d("hypo"), &M3.identity()));
        assert!(!theory_satisfies(&d("S"), &M3.identity()));
        assert!(theory_satisfies(&d("mst"), &M2.identity()));
        assert!(!theory_satisfies(&d("hypo"), &M2.identity()));
        assert!(theory_satisfies(&d("baxt"), &parse_identity("x = x").unwrap()));
        assert!(!theory_satisfies(&d("jst"), &parse_identity("xx = x").unwrap()));
    }

    #[test]
    fn bases_are_sound() {
        for v in all() {
            for id in v.basis_identities() {
                assert!(theory_satisfies(&v, &id), "{v}: {id}");
            }
        }
    }

    #[test]
    fn classification() {
        let m2 = classify(&M2.identity());
        assert!(m2.contains(&"M2v") && m2.contains(&"mst") && m2.contains(&"jst"));
        assert!(!m2.contains(&"hypo") && !m2.contains(&"S"));
        assert_eq!(classify(&parse_identity("xy = xy").unwrap()).len(), 26);
        assert!(classify(&parse_identity("xy = x").unwrap()).is_empty());
    }

    #[test]
    fn joins_and_meets() {
        assert_eq!(join(&d("sylvh"), &d("sylv")).name, "baxt");
        assert_eq!(join(&d("lst"), &d("rst")).name, "mst");
        for v in all() {
            assert_eq!(join(&v, &v), v);
        }
        assert_eq!(meet(&d("lst"), &d("sylv")).unwrap().properties, [S1Pre].into());
        assert_eq!(meet(&d("rst"), &d("lst")).unwrap().name, "jst");
        assert_eq!(meet(&d("M2v"), &d("hypo")).unwrap().name, "mst^S");
        let odd = VarietyDescriptor { name: "x".into(), properties: [CPre].into(), basis: None, generator_note: None };
        assert!(meet(&odd, &d("lst")).is_err());
    }

    #[test]
    fn order() {
        assert!(leq(&d("jst"), &d("S")));
        assert!(!leq(&d("lst"), &d("sylv")) && !leq(&d("sylv"), &d("lst")));
        assert!(leq(&d("M2v"), &d("baxt")));
        for v in all() {
            assert!(leq(&d("jst"), &v) && leq(&v, &d("baxt")));
        }
    }
}
