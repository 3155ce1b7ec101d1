//! The three variety lattices as explicit posets built from their drawn Hasse
//! diagrams, with verification against the property order.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::identity::{Identity, NamedIdentity};
use crate::parse::parse_identity;
use crate::varieties::{self, canonical_names, descriptor, theory_satisfies, VarietyDescriptor};
use crate::word::{partitions, var_content};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum LatticeName {
    L1,
    L2,
    L3,
}

impl LatticeName {
    pub const ALL: [LatticeName; 3] = [LatticeName::L1, LatticeName::L2, LatticeName::L3];

    fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for LatticeName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L{}", self.index() + 1)
    }
}

impl FromStr for LatticeName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "L1" | "l1" | "1" => Ok(LatticeName::L1),
            "L2" | "l2" | "2" => Ok(LatticeName::L2),
            "L3" | "l3" | "3" => Ok(LatticeName::L3),
            _ => Err(Error::UnknownNode(s.to_string(), "lattice names".into())),
        }
    }
}

type Point = (f64, f64);

struct Figure {
    nodes: &'static [(f64, f64, &'static str)],
    paths: &'static [&'static [Point]],
}

const L1_FIGURE: Figure = Figure {
    nodes: &[
        (0.0, 1.0, "baxt"),
        (-2.0, 0.0, "rstvsylvh"),
        (2.0, 0.0, "lstvsylv"),
        (-4.0, -1.0, "sylvh"),
        (0.0, -1.0, "mstvS"),
        (4.0, -1.0, "sylv"),
        (-4.0, -3.0, "lstvS"),
        (4.0, -3.0, "rstvS"),
        (-2.0, -4.5, "S"),
        (2.0, -4.5, "mst"),
        (-4.0, -6.0, "mst^sylvh"),
        (4.0, -6.0, "mst^sylv"),
        (-4.0, -8.0, "lst"),
        (4.0, -8.0, "rst"),
        (0.0, -8.0, "mst^S"),
        (-2.0, -9.0, "lst^sylv"),
        (2.0, -9.0, "rst^sylvh"),
        (0.0, -10.0, "jst"),
    ],
    paths: &[
        &[(0.0, 1.0), (-2.0, 0.0), (-4.0, -1.0), (-4.0, -3.0), (-4.0, -8.0), (-2.0, -9.0), (0.0, -10.0)],
        &[(0.0, 1.0), (2.0, 0.0), (4.0, -1.0), (4.0, -3.0), (4.0, -8.0), (2.0, -9.0), (0.0, -10.0)],
        &[(-2.0, 0.0), (0.0, -1.0), (2.0, 0.0)],
        &[(2.0, -9.0), (0.0, -8.0), (-2.0, -9.0)],
        &[(-2.0, -4.5), (-4.0, -3.0), (0.0, -1.0), (4.0, -3.0), (-2.0, -4.5), (0.0, -8.0)],
        &[(0.0, -1.0), (2.0, -4.5), (-4.0, -6.0), (0.0, -8.0), (4.0, -6.0), (2.0, -4.5)],
    ],
};

const L2_FIGURE: Figure = Figure {
    nodes: &[
        (0.0, 1.0, "baxt"),
        (-2.25, 0.0, "rstvsylvh"),
        (2.25, 0.0, "lstvsylv"),
        (-4.5, -1.0, "sylvh"),
        (0.0, -1.0, "mstvS"),
        (4.5, -1.0, "sylv"),
        (-4.5, -3.0, "lstvS"),
        (0.0, -3.0, "hypovmst"),
        (4.5, -3.0, "rstvS"),
        (-4.5, -6.0, "hypovlst"),
        (-1.5, -6.0, "S"),
        (1.5, -6.0, "mst"),
        (4.5, -6.0, "hypovrst"),
        (-4.5, -9.0, "mst^sylvh"),
        (0.0, -9.0, "hypo"),
        (4.5, -9.0, "mst^sylv"),
        (-4.5, -11.0, "lst"),
        (4.5, -11.0, "rst"),
        (0.0, -11.0, "mst^S"),
        (-2.25, -12.0, "lst^sylv"),
        (2.25, -12.0, "rst^sylvh"),
        (0.0, -13.0, "jst"),
    ],
    paths: &[
        &[
            (0.0, 1.0),
            (-2.25, 0.0),
            (-4.5, -1.0),
            (-4.5, -3.0),
            (-4.5, -6.0),
            (-4.5, -11.0),
            (-2.25, -12.0),
            (0.0, -13.0),
        ],
        &[(0.0, 1.0), (2.25, 0.0), (4.5, -1.0), (4.5, -3.0), (4.5, -6.0), (4.5, -11.0), (2.25, -12.0), (0.0, -13.0)],
        &[(-2.25, 0.0), (0.0, -1.0), (-4.5, -3.0), (-1.5, -6.0), (0.0, -9.0), (0.0, -11.0), (-2.25, -12.0)],
        &[(2.25, 0.0), (0.0, -1.0), (4.5, -3.0), (-1.5, -6.0)],
        &[(0.0, -1.0), (0.0, -3.0), (-4.5, -6.0), (0.0, -9.0)],
        &[(0.0, -3.0), (1.5, -6.0), (4.5, -9.0), (0.0, -11.0), (2.25, -12.0)],
        &[(0.0, -3.0), (4.5, -6.0), (0.0, -9.0)],
        &[(1.5, -6.0), (-4.5, -9.0), (0.0, -11.0)],
    ],
};

const L3_FIGURE: Figure = Figure {
    nodes: &[
        (0.0, 1.0, "baxt"),
        (-3.0, 0.0, "rstvsylvh"),
        (3.0, 0.0, "lstvsylv"),
        (-6.0, -1.0, "sylvh"),
        (0.0, -1.0, "mstvS"),
        (6.0, -1.0, "sylv"),
        (-6.0, -3.0, "lstvS"),
        (-2.0, -3.0, "M2v"),
        (2.0, -3.0, "hypovmst"),
        (6.0, -3.0, "rstvS"),
        (-6.0, -6.0, "M2v^sylvh"),
        (-3.6, -6.0, "hypovlst"),
        (-1.2, -6.0, "S"),
        (1.2, -6.0, "mst"),
        (3.6, -6.0, "hypovrst"),
        (6.0, -6.0, "M2v^sylv"),
        (-6.0, -9.0, "mst^sylvh"),
        (-2.0, -9.0, "hypo"),
        (2.0, -9.0, "M2v^S"),
        (6.0, -9.0, "mst^sylv"),
        (-6.0, -11.0, "lst"),
        (6.0, -11.0, "rst"),
        (0.0, -11.0, "mst^S"),
        (-3.0, -12.0, "lst^sylv"),
        (3.0, -12.0, "rst^sylvh"),
        (0.0, -13.0, "jst"),
    ],
    paths: &[
        &[
            (0.0, 1.0),
            (-3.0, 0.0),
            (-6.0, -1.0),
            (-6.0, -3.0),
            (-6.0, -6.0),
            (-6.0, -11.0),
            (-3.0, -12.0),
            (0.0, -13.0),
        ],
        &[(0.0, 1.0), (3.0, 0.0), (6.0, -1.0), (6.0, -3.0), (6.0, -6.0), (6.0, -11.0), (3.0, -12.0), (0.0, -13.0)],
        &[(-3.0, 0.0), (0.0, -1.0), (-2.0, -3.0), (-6.0, -6.0), (2.0, -9.0), (0.0, -11.0), (-3.0, -12.0)],
        &[(3.0, 0.0), (0.0, -1.0), (2.0, -3.0), (3.6, -6.0), (-2.0, -9.0), (0.0, -11.0), (3.0, -12.0)],
        &[(0.0, -1.0), (-6.0, -3.0), (-3.6, -6.0), (-6.0, -9.0), (0.0, -11.0)],
        &[(-6.0, -3.0), (-1.2, -6.0), (-2.0, -9.0)],
        &[(6.0, -3.0), (-1.2, -6.0), (2.0, -9.0)],
        &[(0.0, -1.0), (6.0, -3.0), (3.6, -6.0), (6.0, -9.0), (0.0, -11.0)],
        &[(-2.0, -3.0), (1.2, -6.0), (-6.0, -9.0)],
        &[(-2.0, -3.0), (6.0, -6.0), (2.0, -9.0)],
        &[(2.0, -3.0), (-3.6, -6.0), (-2.0, -9.0)],
        &[(2.0, -3.0), (1.2, -6.0), (6.0, -9.0)],
    ],
};

fn figure(name: LatticeName) -> &'static Figure {
    match name {
        LatticeName::L1 => &L1_FIGURE,
        LatticeName::L2 => &L2_FIGURE,
        LatticeName::L3 => &L3_FIGURE,
    }
}

/// A finite lattice of varieties with its cover relation and order.
#[derive(Clone, Debug)]
pub struct Lattice {
    pub name: LatticeName,
    pub nodes: Vec<String>,
    pub coordinates: Vec<(f64, f64)>,
    /// Cover pairs `(lower, upper)` as node indices.
    pub covers: BTreeSet<(usize, usize)>,
    order: Vec<Vec<bool>>,
}

const EPS: f64 = 1e-9;

/// Nodes strictly inside the segment `a`–`b`, ordered from `a`.
fn interior_points(a: Point, b: Point, nodes: &[(f64, f64, &str)]) -> Vec<(f64, usize)> {
    let mut out: Vec<(f64, usize)> = nodes
        .iter()
        .enumerate()
        .filter_map(|(i, &(x, y, _))| {
            let cross = (b.0 - a.0) * (y - a.1) - (b.1 - a.1) * (x - a.0);
            if cross.abs() > EPS {
                return None;
            }
            let len2 = (b.0 - a.0).powi(2) + (b.1 - a.1).powi(2);
            let t = ((x - a.0) * (b.0 - a.0) + (y - a.1) * (b.1 - a.1)) / len2;
            (t > EPS && t < 1.0 - EPS).then_some((t, i))
        })
        .collect();
    out.sort_by(|p, q| p.0.total_cmp(&q.0));
    out
}

/// Builds the lattice from its drawing; segments passing through a node are split there.
pub fn build(name: LatticeName) -> Lattice {
    let fig = figure(name);
    let at = |p: Point| {
        fig.nodes
            .iter()
            .position(|&(x, y, _)| (x - p.0).abs() < EPS && (y - p.1).abs() < EPS)
            .unwrap_or_else(|| panic!("figure point {p:?} is not a node"))
    };
    let mut covers = BTreeSet::new();
    for path in fig.paths {
        for seg in path.windows(2) {
            let mut chain = vec![at(seg[0])];
            chain.extend(interior_points(seg[0], seg[1], fig.nodes).into_iter().map(|(_, i)| i));
            chain.push(at(seg[1]));
            for pair in chain.windows(2) {
                let (i, j) = (pair[0], pair[1]);
                let (lo, hi) = if fig.nodes[i].1 < fig.nodes[j].1 { (i, j) } else { (j, i) };
                covers.insert((lo, hi));
            }
        }
    }
    let n = fig.nodes.len();
    let mut order = vec![vec![false; n]; n];
    for (i, row) in order.iter_mut().enumerate() {
        row[i] = true;
    }
    for &(lo, hi) in &covers {
        order[lo][hi] = true;
    }
    for k in 0..n {
        let via = order[k].clone();
        for row in order.iter_mut().filter(|r| r[k]) {
            for (x, &y) in row.iter_mut().zip(&via) {
                *x |= y;
            }
        }
    }
    Lattice {
        name,
        nodes: fig.nodes.iter().map(|n| n.2.to_string()).collect(),
        coordinates: fig.nodes.iter().map(|n| (n.0, n.1)).collect(),
        covers,
        order,
    }
}

impl Lattice {
    pub fn index(&self, node: &str) -> Result<usize> {
        let canon = descriptor(node).map(|d| d.name).unwrap_or_else(|_| node.to_string());
        self.nodes
            .iter()
            .position(|n| *n == canon)
            .ok_or_else(|| Error::UnknownNode(node.to_string(), self.name.to_string()))
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Reachability in the drawn diagram.
    pub fn leq(&self, a: &str, b: &str) -> Result<bool> {
        Ok(self.order[self.index(a)?][self.index(b)?])
    }

    fn leq_idx(&self, a: usize, b: usize) -> bool {
        self.order[a][b]
    }

    pub fn top(&self) -> &str {
        let n = self.len();
        &self.nodes[(0..n).find(|&i| (0..n).all(|j| self.order[j][i])).expect("has a top")]
    }

    pub fn bottom(&self) -> &str {
        let n = self.len();
        &self.nodes[(0..n).find(|&i| (0..n).all(|j| self.order[i][j])).expect("has a bottom")]
    }

    fn bound(&self, a: usize, b: usize, lower: bool) -> Option<usize> {
        let n = self.len();
        let rel = |x: usize, y: usize| if lower { self.order[x][y] } else { self.order[y][x] };
        let cands: Vec<usize> = (0..n).filter(|&c| rel(c, a) && rel(c, b)).collect();
        cands.iter().copied().find(|&c| cands.iter().all(|&d| rel(d, c)))
    }

    pub fn meet(&self, a: &str, b: &str) -> Result<&str> {
        let (i, j) = (self.index(a)?, self.index(b)?);
        self.bound(i, j, true)
            .map(|k| self.nodes[k].as_str())
            .ok_or_else(|| Error::Construction(format!("{a} and {b} have no meet in {}", self.name)))
    }

    pub fn join(&self, a: &str, b: &str) -> Result<&str> {
        let (i, j) = (self.index(a)?, self.index(b)?);
        self.bound(i, j, false)
            .map(|k| self.nodes[k].as_str())
            .ok_or_else(|| Error::Construction(format!("{a} and {b} have no join in {}", self.name)))
    }

    /// Cover pairs by name, lower first.
    pub fn cover_names(&self) -> Vec<(&str, &str)> {
        self.covers.iter().map(|&(a, b)| (self.nodes[a].as_str(), self.nodes[b].as_str())).collect()
    }

    /// Evaluates an expression over node names with ` & ` (meet), ` | ` (join) and
    /// parentheses, using this lattice's own bounds.
    pub fn evaluate(&self, expr: &str) -> Result<usize> {
        let spaced = expr.replace('(', " ( ").replace(')', " ) ");
        let tokens: Vec<&str> = spaced.split_whitespace().collect();
        let mut pos = 0;
        let v = self.eval_expr(&tokens, &mut pos)?;
        if pos != tokens.len() {
            return Err(Error::Parse { pos, msg: format!("trailing input in {expr:?}") });
        }
        Ok(v)
    }

    fn eval_expr(&self, t: &[&str], pos: &mut usize) -> Result<usize> {
        let mut acc = self.eval_operand(t, pos)?;
        while let Some(&op) = t.get(*pos).filter(|op| **op == "&" || **op == "|") {
            *pos += 1;
            let rhs = self.eval_operand(t, pos)?;
            acc = self
                .bound(acc, rhs, op == "&")
                .ok_or_else(|| Error::Construction(format!("missing bound in {}", self.name)))?;
        }
        Ok(acc)
    }

    fn eval_operand(&self, t: &[&str], pos: &mut usize) -> Result<usize> {
        let tok = t.get(*pos).copied().ok_or(Error::Parse { pos: *pos, msg: "expected operand".into() })?;
        *pos += 1;
        if tok == "(" {
            let v = self.eval_expr(t, pos)?;
            if t.get(*pos) != Some(&")") {
                return Err(Error::Parse { pos: *pos, msg: "expected ')'".into() });
            }
            *pos += 1;
            return Ok(v);
        }
        self.nodes
            .iter()
            .position(|n| n == tok)
            .ok_or_else(|| Error::UnknownNode(tok.to_string(), self.name.to_string()))
    }
}

/// Equalities between lattice expressions; the first lattice in which each holds.
const EQUALITIES: &[(LatticeName, &str)] = &[
    (LatticeName::L1, "sylvh | sylv = baxt"),
    (LatticeName::L1, "lst | rst = mst"),
    (LatticeName::L1, "lst & rst = jst"),
    (LatticeName::L1, "sylvh & sylv = S"),
    (LatticeName::L1, "rst | sylvh = rstvsylvh"),
    (LatticeName::L1, "lst | sylv = lstvsylv"),
    (LatticeName::L1, "mst | S = mstvS"),
    (LatticeName::L1, "lst | S = lstvS"),
    (LatticeName::L1, "rst | S = rstvS"),
    (LatticeName::L1, "mst & sylvh = mst^sylvh"),
    (LatticeName::L1, "mst & sylv = mst^sylv"),
    (LatticeName::L1, "mst & S = mst^S"),
    (LatticeName::L1, "lst & sylv = lst^sylv"),
    (LatticeName::L1, "rst & sylvh = rst^sylvh"),
    (LatticeName::L1, "lst^sylv = (mst^S) & lst"),
    (LatticeName::L1, "rst^sylvh = (mst^S) & rst"),
    (LatticeName::L1, "mst^S = lst^sylv | rst^sylvh"),
    (LatticeName::L1, "mst^sylvh = lst | rst^sylvh = mst & lstvS"),
    (LatticeName::L1, "mst^sylv = rst | lst^sylv = mst & rstvS"),
    (LatticeName::L1, "rstvsylvh = mstvS | sylvh"),
    (LatticeName::L1, "lstvsylv = mstvS | sylv"),
    (LatticeName::L1, "mstvS = rstvsylvh & lstvsylv"),
    (LatticeName::L1, "lstvS = sylvh & lstvsylv = mst^sylvh | S"),
    (LatticeName::L1, "rstvS = sylv & rstvsylvh = mst^sylv | S"),
    (LatticeName::L2, "hypo | lst = hypovlst"),
    (LatticeName::L2, "hypo | rst = hypovrst"),
    (LatticeName::L2, "hypo | mst = hypovmst"),
    (LatticeName::L2, "hypo = S & hypovmst = hypovlst & sylv = hypovrst & sylvh"),
    (LatticeName::L2, "hypovlst = hypo | mst^sylvh = lstvS & hypovmst = sylvh & hypovmst"),
    (LatticeName::L2, "hypovrst = hypo | mst^sylv = rstvS & hypovmst = sylv & hypovmst"),
    (LatticeName::L2, "hypo & mst = hypovlst & mst^sylv = hypovrst & mst^sylvh = mst^S"),
    (LatticeName::L3, "M2v & sylvh = M2v^sylvh"),
    (LatticeName::L3, "M2v & sylv = M2v^sylv"),
    (LatticeName::L3, "M2v & S = M2v^S"),
    (LatticeName::L3, "M2v = mst | M2v^S = M2v^sylvh | rst = M2v^sylv | lst"),
    (LatticeName::L3, "M2v^sylvh = M2v & lstvS = mst^sylvh | M2v^S = lst | M2v^S"),
    (LatticeName::L3, "M2v^sylv = M2v & rstvS = mst^sylv | M2v^S = rst | M2v^S"),
    (LatticeName::L3, "M2v | hypo = M2v^sylvh | hypovrst = M2v^sylv | hypovlst = mstvS"),
    (LatticeName::L3, "M2v & hypo = mst^S"),
    (LatticeName::L3, "M2v & hypovmst = mst"),
    (LatticeName::L3, "M2v^S | hypo = S"),
];

/// Incomparable pairs `(a, b)` with identities in `theory(a) \ theory(b)` and
/// `theory(b) \ theory(a)`; the first lattice containing both.
const INCOMPARABLE: &[(LatticeName, &str, &str, &str, &str)] = &[
    (LatticeName::L1, "lst", "rst", "L1", "R1"),
    (LatticeName::L1, "sylvh", "sylv", "L2", "R2"),
    (LatticeName::L1, "lst", "S", "M3", "R2"),
    (LatticeName::L1, "rst", "S", "M3", "L2"),
    (LatticeName::L1, "mst", "sylvh", "M3", "L2"),
    (LatticeName::L1, "mst", "sylv", "M3", "R2"),
    (LatticeName::L1, "lst", "sylv", "M3", "R2"),
    (LatticeName::L1, "rst", "sylvh", "M3", "L2"),
    (LatticeName::L1, "S", "mst", "R2", "M3"),
    (LatticeName::L1, "mst^S", "lst", "xyyx = yxxy", "L1"),
    (LatticeName::L1, "mst^S", "rst", "xyyx = yxxy", "R1"),
    (LatticeName::L1, "mstvS", "sylvh", "xyxyxy = xxyxyy", "L2"),
    (LatticeName::L1, "mstvS", "sylv", "xyxyxy = xxyxyy", "R2"),
    (LatticeName::L1, "lst^sylv", "rst^sylvh", "L1", "R1"),
    (LatticeName::L1, "lst^sylv", "rst", "L1", "R1"),
    (LatticeName::L1, "rst^sylvh", "lst", "R1", "L1"),
    (LatticeName::L1, "rstvsylvh", "lstvsylv", "O21", "O12"),
    (LatticeName::L1, "rstvsylvh", "sylv", "O21", "O12"),
    (LatticeName::L1, "lstvsylv", "sylvh", "O12", "O21"),
    (LatticeName::L1, "mst^sylvh", "S", "M2", "R2"),
    (LatticeName::L1, "mst^sylvh", "rst", "L2", "R2"),
    (LatticeName::L1, "mst^sylvh", "sylv", "L2", "R2"),
    (LatticeName::L1, "mst^sylv", "S", "M2", "L2"),
    (LatticeName::L1, "mst^sylv", "lst", "R2", "L2"),
    (LatticeName::L1, "mst^sylv", "sylvh", "R2", "L2"),
    (LatticeName::L1, "lstvS", "mst", "L2", "M2"),
    (LatticeName::L1, "lstvS", "rst", "L2", "R2"),
    (LatticeName::L1, "lstvS", "sylv", "L2", "R2"),
    (LatticeName::L1, "rstvS", "mst", "R2", "M2"),
    (LatticeName::L1, "rstvS", "lst", "R2", "L2"),
    (LatticeName::L1, "rstvS", "sylvh", "R2", "L2"),
    (LatticeName::L2, "hypo", "lst", "R2", "M2"),
    (LatticeName::L2, "hypo", "rst", "L2", "M2"),
    (LatticeName::L2, "hypo", "mst", "L2", "M2"),
    (LatticeName::L2, "hypovlst", "S", "M3", "R2"),
    (LatticeName::L2, "hypovlst", "mst", "L2", "M2"),
    (LatticeName::L2, "hypovlst", "rst", "L2", "M2"),
    (LatticeName::L2, "hypovlst", "sylv", "L2", "R2"),
    (LatticeName::L2, "hypovrst", "S", "M3", "L2"),
    (LatticeName::L2, "hypovrst", "mst", "R2", "M2"),
    (LatticeName::L2, "hypovrst", "lst", "R2", "M2"),
    (LatticeName::L2, "hypovrst", "sylvh", "R2", "L2"),
    (LatticeName::L2, "hypovmst", "S", "M3", "L2"),
    (LatticeName::L2, "hypovmst", "sylvh", "M3", "L2"),
    (LatticeName::L2, "hypovmst", "sylv", "M3", "R2"),
    (LatticeName::L3, "M2v", "hypo", "M2", "M3"),
    (LatticeName::L3, "M2v", "hypovmst", "M2", "M3"),
    (LatticeName::L3, "M2v", "sylvh", "M2", "L2"),
    (LatticeName::L3, "M2v", "sylv", "M2", "R2"),
    (LatticeName::L3, "M2v^sylvh", "rst", "L2", "R2"),
    (LatticeName::L3, "M2v^sylvh", "hypo", "M2", "M3"),
    (LatticeName::L3, "M2v^sylvh", "hypovmst", "M2", "M3"),
    (LatticeName::L3, "M2v^sylvh", "sylv", "L2", "R2"),
    (LatticeName::L3, "M2v^sylv", "lst", "R2", "L2"),
    (LatticeName::L3, "M2v^sylv", "hypo", "M2", "M3"),
    (LatticeName::L3, "M2v^sylv", "hypovmst", "M2", "M3"),
    (LatticeName::L3, "M2v^sylv", "sylvh", "R2", "L2"),
    (LatticeName::L3, "M2v^S", "lst", "R2", "M3"),
    (LatticeName::L3, "M2v^S", "rst", "L2", "M3"),
    (LatticeName::L3, "M2v^S", "hypo", "M2", "M3"),
    (LatticeName::L3, "M2v^S", "hypovmst", "M2", "M3"),
];

/// Identities tried before enumeration when looking for separators.
const SEEDS: &[&str] = &[
    "L1",
    "R1",
    "L2",
    "R2",
    "M2",
    "M3",
    "M4",
    "O21",
    "E21",
    "O12",
    "E12",
    "O22",
    "T22",
    "xyyx = yxxy",
    "xxyy = xyxy",
    "xxyy = yxxy",
    "xxyy = xyyx",
    "xyxyxy = xxyxyy",
];

fn named_or_parsed(text: &str) -> Identity {
    NamedIdentity::from_tag(text)
        .map(NamedIdentity::identity)
        .unwrap_or_else(|| parse_identity(text).expect("built-in identity parses"))
}

fn seeds() -> Vec<Identity> {
    SEEDS.iter().map(|s| named_or_parsed(s)).collect()
}

/// Every balanced identity with at most 3 variables and sides of length at most 6,
/// one per unordered pair with nonincreasing multiplicities, with the set of
/// catalogued varieties (as a bit mask in catalog order) satisfying it.
fn enumerated() -> &'static [(Identity, u32)] {
    static CELL: OnceLock<Vec<(Identity, u32)>> = OnceLock::new();
    CELL.get_or_init(|| {
        let all = varieties::all();
        let mut out = Vec::new();
        for len in 2..=6 {
            for counts in partitions(len, 3) {
                let words = var_content(&counts).words();
                for (i, u) in words.iter().enumerate() {
                    for w in &words[i + 1..] {
                        let id = Identity::new(u.clone(), w.clone());
                        let mask = mask_of(&all, &id);
                        out.push((id, mask));
                    }
                }
            }
        }
        out
    })
}

fn mask_of(all: &[VarietyDescriptor], id: &Identity) -> u32 {
    all.iter().enumerate().filter(|(_, v)| theory_satisfies(v, id)).fold(0, |m, (i, _)| m | 1 << i)
}

fn catalog_index(name: &str) -> usize {
    canonical_names().iter().position(|n| *n == name).expect("catalogued")
}

/// An identity in `theory(b) \ theory(a)`, from the seeds or by enumeration.
pub fn separating_identity(a: &str, b: &str) -> Result<Option<Identity>> {
    let (da, db) = (descriptor(a)?, descriptor(b)?);
    if let Some(id) = seeds().into_iter().find(|id| theory_satisfies(&db, id) && !theory_satisfies(&da, id)) {
        return Ok(Some(id));
    }
    let (ia, ib) = (catalog_index(&da.name), catalog_index(&db.name));
    Ok(enumerated().iter().find(|(_, m)| m >> ib & 1 == 1 && m >> ia & 1 == 0).map(|(id, _)| id.clone()))
}

/// Two identities showing `a` and `b` incomparable: the first holds in `a` only and
/// the second in `b` only.
pub fn witness_incomparable(a: &str, b: &str) -> Result<(Identity, Identity)> {
    let (da, db) = (descriptor(a)?, descriptor(b)?);
    if varieties::leq(&da, &db) || varieties::leq(&db, &da) {
        return Err(Error::ComparablePair(da.name, db.name));
    }
    for &(_, x, y, ix, iy) in INCOMPARABLE {
        if (x, y) == (da.name.as_str(), db.name.as_str()) {
            return Ok((named_or_parsed(ix), named_or_parsed(iy)));
        }
        if (y, x) == (da.name.as_str(), db.name.as_str()) {
            return Ok((named_or_parsed(iy), named_or_parsed(ix)));
        }
    }
    let first = separating_identity(&db.name, &da.name)?;
    let second = separating_identity(&da.name, &db.name)?;
    match (first, second) {
        (Some(p), Some(q)) => Ok((p, q)),
        _ => Err(Error::BoundExceeded(format!("no witnesses for {a} and {b} within the search bounds"))),
    }
}

/// One verification check.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub lattice: LatticeName,
    pub nodes: usize,
    pub covers: usize,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn check(name: &str, failures: Vec<String>) -> Check {
    Check { name: name.to_string(), passed: failures.is_empty(), failures }
}

/// Verifies the drawn lattice against the property order, the equalities, the
/// incomparability witnesses and an exhaustive search over small identities.
pub fn verify(lat: &Lattice) -> VerifyReport {
    let n = lat.len();
    let descs: Vec<VarietyDescriptor> =
        lat.nodes.iter().map(|s| descriptor(s).expect("lattice nodes are catalogued")).collect();
    let sym = |i: usize, j: usize| varieties::leq(&descs[i], &descs[j]);

    // covers of the property order
    let mut failures = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let covers = i != j
                && sym(i, j)
                && !(0..n).any(|k| k != i && k != j && sym(i, k) && sym(k, j) && !sym(k, i) && !sym(j, k));
            let drawn = lat.covers.contains(&(i, j));
            if covers != drawn {
                let what = if drawn { "drawn but not a cover" } else { "cover missing from drawing" };
                failures.push(format!("{} < {}: {what}", lat.nodes[i], lat.nodes[j]));
            }
            if sym(i, j) && sym(j, i) && i != j {
                failures.push(format!("{} and {} have equal theories", lat.nodes[i], lat.nodes[j]));
            }
        }
    }
    let covers = check("covers equal the property order's transitive reduction", failures);

    let mut failures = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if lat.bound(i, j, true).is_none() {
                failures.push(format!("no meet for {} and {}", lat.nodes[i], lat.nodes[j]));
            }
            if lat.bound(i, j, false).is_none() {
                failures.push(format!("no join for {} and {}", lat.nodes[i], lat.nodes[j]));
            }
        }
    }
    let lattice = check("every pair has a meet and a join", failures);

    let mut failures = Vec::new();
    for &(first, eq) in EQUALITIES.iter().filter(|e| e.0 <= lat.name) {
        match eq.split('=').map(|side| lat.evaluate(side)).collect::<Result<Vec<usize>>>() {
            Ok(v) if v.windows(2).all(|w| w[0] == w[1]) => {}
            Ok(v) => failures.push(format!(
                "{eq} (from {first}): sides evaluate to {}",
                v.iter().map(|&i| lat.nodes[i].as_str()).collect::<Vec<_>>().join(", ")
            )),
            Err(e) => failures.push(format!("{eq}: {e}")),
        }
    }
    let equalities = check("equalities hold in the meet and join tables", failures);

    let mut failures = Vec::new();
    for &(_, a, b, ia, ib) in INCOMPARABLE.iter().filter(|e| e.0 <= lat.name) {
        let (i, j) = (lat.index(a).expect("node"), lat.index(b).expect("node"));
        if lat.leq_idx(i, j) || lat.leq_idx(j, i) {
            failures.push(format!("{a} and {b} are comparable in the drawing"));
        }
        let (x, y) = (named_or_parsed(ia), named_or_parsed(ib));
        if !(theory_satisfies(&descs[i], &x) && !theory_satisfies(&descs[j], &x)) {
            failures.push(format!("{ia} does not separate {a} from {b}"));
        }
        if !(theory_satisfies(&descs[j], &y) && !theory_satisfies(&descs[i], &y)) {
            failures.push(format!("{ib} does not separate {b} from {a}"));
        }
    }
    let incomparable = check("incomparable pairs have two-sided witnesses", failures);

    // order against actual identities: a ≤ b means theory(b) ⊆ theory(a)
    let mut failures = Vec::new();
    let idx: Vec<usize> = lat.nodes.iter().map(|s| catalog_index(s)).collect();
    for i in 0..n {
        for j in 0..n {
            if lat.leq_idx(i, j) {
                if let Some((id, _)) = enumerated().iter().find(|(_, m)| m >> idx[j] & 1 == 1 && m >> idx[i] & 1 == 0) {
                    failures.push(format!("{} ≤ {} but {id} separates them", lat.nodes[i], lat.nodes[j]));
                }
            } else {
                match separating_identity(&lat.nodes[i], &lat.nodes[j]) {
                    Ok(Some(_)) => {}
                    _ => failures.push(format!("no identity shows {} ≰ {}", lat.nodes[i], lat.nodes[j])),
                }
            }
        }
    }
    let empirical = check("order agrees with identities up to 3 variables and length 6", failures);

    VerifyReport {
        lattice: lat.name,
        nodes: n,
        covers: lat.covers.len(),
        checks: vec![covers, lattice, equalities, incomparable, empirical],
    }
}

/// Graphviz rendering with upward cover edges.
pub fn to_dot(lat: &Lattice) -> String {
    let mut s = format!("digraph {} {{\n  rankdir=BT;\n  node [shape=plaintext];\n", lat.name);
    for name in &lat.nodes {
        s.push_str(&format!("  \"{name}\";\n"));
    }
    for (a, b) in lat.cover_names() {
        s.push_str(&format!("  \"{a}\" -> \"{b}\";\n"));
    }
    s.push_str("}\n");
    s
}

/// Meet and join tables by node name.
pub fn tables(lat: &Lattice) -> BTreeMap<(String, String), (String, String)> {
    let mut out = BTreeMap::new();
    for a in &lat.nodes {
        for b in &lat.nodes {
            if let (Ok(m), Ok(j)) = (lat.meet(a, b), lat.join(a, b)) {
                out.insert((a.clone(), b.clone()), (m.to_string(), j.to_string()));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes_and_extremes() {
        let sizes: Vec<usize> = LatticeName::ALL.iter().map(|&l| build(l).len()).collect();
        assert_eq!(sizes, [18, 22, 26]);
        for l in LatticeName::ALL {
            let lat = build(l);
            assert_eq!(lat.top(), "baxt");
            assert_eq!(lat.bottom(), "jst");
        }
    }

    #[test]
    fn order_examples() {
        let l1 = build(LatticeName::L1);
        assert!(l1.leq("jst", "S").unwrap());
        assert!(!l1.leq("lst", "sylv").unwrap() && !l1.leq("sylv", "lst").unwrap());
        assert!(build(LatticeName::L3).leq("M2v", "baxt").unwrap());
        assert!(matches!(l1.leq("M2v", "baxt"), Err(Error::UnknownNode(..))));
        assert_eq!(l1.meet("lst", "rst").unwrap(), "jst");
        assert_eq!(l1.join("sylvh", "sylv").unwrap(), "baxt");
    }

    #[test]
    fn collinear_segments_are_split() {
        let l1 = build(LatticeName::L1);
        let covers = l1.cover_names();
        assert!(covers.contains(&("mst^sylvh", "lstvS")));
        assert!(covers.contains(&("lst", "mst^sylvh")));
        assert!(!covers.contains(&("lst", "lstvS")));
    }

    #[test]
    fn all_lattices_verify() {
        for l in LatticeName::ALL {
            let report = verify(&build(l));
            for c in &report.checks {
                assert!(c.passed, "{l}: {}: {:?}", c.name, c.failures);
            }
        }
    }

    #[test]
    fn witnesses() {
        let (a, b) = witness_incomparable("mst^S", "lst").unwrap();
        assert!(a.equivalent_to(&parse_identity("xyyx = yxxy").unwrap()));
        assert_eq!(b, NamedIdentity::L1.identity());
        let (a, b) = witness_incomparable("hypo", "mst").unwrap();
        assert!(a == NamedIdentity::L2.identity() || a == NamedIdentity::R2.identity());
        assert_eq!(b, NamedIdentity::M2.identity());
        let (a, b) = witness_incomparable("sylv", "sylvh").unwrap();
        assert_eq!((a, b), (NamedIdentity::R2.identity(), NamedIdentity::L2.identity()));
        assert!(matches!(witness_incomparable("jst", "S"), Err(Error::ComparablePair(..))));
        // pairs without a recorded witness fall back to search
        let (a, b) = witness_incomparable("hypovlst", "M2v^sylv").unwrap();
        let (x, y) = (descriptor("hypovlst").unwrap(), descriptor("M2v^sylv").unwrap());
        assert!(theory_satisfies(&x, &a) && !theory_satisfies(&y, &a));
        assert!(theory_satisfies(&y, &b) && !theory_satisfies(&x, &b));
    }

    #[test]
    fn dot_output_is_stable() {
        let l1 = build(LatticeName::L1);
        let dot = to_dot(&l1);
        assert_eq!(dot, to_dot(&build(LatticeName::L1)));
        assert!(dot.starts_with("digraph L1 {"));
        assert_eq!(dot.matches(";\n").count(), 2 + 18 + l1.covers.len());
        assert!(dot.contains("\"jst\" -> \"lst^sylv\";"));
    }
}
