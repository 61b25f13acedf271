//! The tricyclic graphs with exactly two Q-main eigenvalues.
//!
//! `G1`..`G27` are pendant-free: a base shape with fixed slot lengths.
//! `G28`..`G42` carry pendants: a base plus a set of attachment sites, each
//! of which is topped up with pendant vertices until its degree is
//! `a + b - 1`. Five families are parametric:
//!
//! | family | parameters | order |
//! |--------|------------|-------|
//! | G32 | `k >= 2`, length of the chain of degree-4 vertices | `3k + 2` |
//! | G34, G35 | `p, q >= 1`, not both 1 | `2(p + q) + 4` |
//! | G37 | `k >= 1`, length of the subdivided edge | `4k + 4` |
//! | G42 | `b = -3`, `a >= 8` | `4(a - 7) + 4` |
//!
//! Every builder is gated by an oracle: the realized graph must satisfy the
//! vertex equations for the family's `(a, b)` and have exactly two main
//! eigenvalues by exact walk-matrix rank.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::canon::{canonical_form, CanonicalForm};
use crate::criterion::{check_membership, k4_attachment_solutions};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::spectral::exact_main_count;
use crate::structure::{realize_shape, ShapeId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FamilyId(u8);

impl FamilyId {
    pub fn new(k: u8) -> Result<Self> {
        if (1..=42).contains(&k) {
            Ok(FamilyId(k))
        } else {
            Err(Error::UnknownFamily(format!("G{k}")))
        }
    }

    pub fn number(self) -> u8 {
        self.0
    }

    pub fn all() -> impl Iterator<Item = FamilyId> {
        (1..=42).map(FamilyId)
    }

    pub fn has_pendants(self) -> bool {
        self.0 >= 28
    }

    /// Parameter names accepted by the family, empty for single graphs.
    pub fn param_names(self) -> &'static [&'static str] {
        match self.0 {
            32 | 37 => &["k"],
            34 | 35 => &["p", "q"],
            42 => &["a", "b"],
            _ => &[],
        }
    }

    /// Smallest parameters of the family.
    pub fn minimal_params(self) -> Params {
        let pairs: &[(&str, i64)] = match self.0 {
            32 => &[("k", 2)],
            34 | 35 => &[("p", 1), ("q", 2)],
            37 => &[("k", 1)],
            42 => &[("a", 8), ("b", -3)],
            _ => &[],
        };
        Params(pairs.iter().map(|&(k, v)| (k.to_string(), v)).collect())
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G{}", self.0)
    }
}

impl FromStr for FamilyId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let digits = s
            .strip_prefix('G')
            .or_else(|| s.strip_prefix('g'))
            .ok_or_else(|| Error::UnknownFamily(s.to_string()))?;
        let k: u8 = digits
            .parse()
            .map_err(|_| Error::UnknownFamily(s.to_string()))?;
        FamilyId::new(k).map_err(|_| Error::UnknownFamily(s.to_string()))
    }
}

impl Serialize for FamilyId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FamilyId {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Named integer parameters of a family.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Params(pub BTreeMap<String, i64>);

impl Params {
    pub fn get(&self, name: &str) -> Option<i64> {
        self.0.get(name).copied()
    }

    fn require(&self, name: &str) -> Result<i64> {
        self.get(name)
            .ok_or_else(|| Error::InvalidParams(format!("missing parameter {name}")))
    }
}

impl FromStr for Params {
    type Err = Error;

    /// Parses `k=v,k=v`.
    fn from_str(s: &str) -> Result<Self> {
        let mut map = BTreeMap::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| Error::InvalidParams(format!("expected key=value, got {part:?}")))?;
            let v: i64 = v
                .trim()
                .parse()
                .map_err(|_| Error::InvalidParams(format!("{k} is not an integer")))?;
            map.insert(k.trim().to_string(), v);
        }
        Ok(Params(map))
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(k, v)| format!("{k}={v}")).collect();
        f.write_str(&parts.join(","))
    }
}

/// Base vertex that receives pendants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Site {
    /// Branch vertex `i` of the shape.
    Branch(usize),
    /// The `pos`-th interior vertex of `slot`, counted from the slot's first
    /// endpoint starting at 1.
    Interior { slot: usize, pos: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyDescriptor {
    pub id: FamilyId,
    pub shape: ShapeId,
    pub lengths: Vec<usize>,
    pub attachments: Vec<Site>,
    pub a: i64,
    pub b: i64,
    pub params: Params,
}

impl FamilyDescriptor {
    /// Degree of every attached vertex.
    pub fn attached_degree(&self) -> i64 {
        self.a + self.b - 1
    }
}

use Site::{Branch, Interior};

fn interiors(slot: usize, len: usize) -> impl Iterator<Item = Site> {
    (1..len).map(move |pos| Interior { slot, pos })
}

fn check_range(ok: bool, id: FamilyId, params: &Params) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidParams(format!("{params} out of range for {id}")))
    }
}

/// Descriptor of family `id` with the given parameters (ignored for single
/// graphs; unknown names are rejected).
pub fn descriptor(id: FamilyId, params: &Params) -> Result<FamilyDescriptor> {
    use ShapeId::*;
    if let Some(name) = params.0.keys().find(|k| !id.param_names().contains(&k.as_str())) {
        return Err(Error::InvalidParams(format!("{id} has no parameter {name}")));
    }
    let fixed = |shape, lengths: &[usize], a, b| (shape, lengths.to_vec(), Vec::new(), a, b);
    let (shape, lengths, attachments, a, b): (ShapeId, Vec<usize>, Vec<Site>, i64, i64) = match id.0 {
        1 => fixed(T1, &[3, 1, 3, 3], 8, -6),
        2 => fixed(T1, &[3, 3, 3, 3], 7, -4),
        3 => fixed(T3, &[3, 3, 3], 9, -6),
        4 => fixed(T4, &[3, 3, 1, 1, 3, 3], 7, -5),
        5 => fixed(T4, &[3; 6], 6, -3),
        6 => fixed(T6, &[3; 6], 6, -3),
        7 => fixed(T8, &[1, 2, 1, 1, 3], 8, -6),
        8 => fixed(T11, &[1, 3, 3, 3, 1, 3], 7, -5),
        9 => fixed(T11, &[3; 6], 6, -3),
        10 => fixed(T12, &[1, 2, 2, 2], 7, -2),
        11 => fixed(T12, &[1, 3, 3, 3], 8, -6),
        12 => fixed(T12, &[2, 2, 2, 2], 6, 0),
        13 => fixed(T12, &[3, 3, 3, 3], 7, -4),
        14 => fixed(T14, &[1, 2, 1, 2, 1, 1], 7, -4),
        15 => fixed(T14, &[1, 2, 1, 2, 2, 2], 6, -2),
        16 => fixed(T14, &[2, 2, 2, 2, 1, 1], 6, -2),
        17 => fixed(T14, &[2; 6], 5, 0),
        18 => fixed(T14, &[1, 3, 1, 3, 1, 1], 8, -7),
        19 => fixed(T14, &[1, 3, 1, 3, 3, 3], 7, -5),
        20 => fixed(T14, &[3, 3, 3, 3, 1, 1], 7, -5),
        21 => fixed(T14, &[3; 6], 6, -3),
        22 => fixed(T15, &[1, 1, 2, 2, 1, 1], 7, -4),
        23 => fixed(T15, &[1, 1, 3, 3, 1, 1], 8, -7),
        24 => fixed(T15, &[1, 2, 2, 2, 1, 2], 6, -2),
        25 => fixed(T15, &[1, 3, 3, 3, 1, 3], 7, -5),
        26 => fixed(T15, &[2; 6], 5, 0),
        27 => fixed(T15, &[3; 6], 6, -3),
        28 => (
            T4,
            vec![2, 2, 2, 3, 3, 3],
            vec![Branch(0), Interior { slot: 3, pos: 1 }, Interior { slot: 4, pos: 2 }, Interior { slot: 5, pos: 2 }],
            6,
            -1,
        ),
        29 => (
            T6,
            vec![2, 2, 2, 3, 3, 3],
            vec![Branch(0), Interior { slot: 3, pos: 2 }, Interior { slot: 4, pos: 2 }, Interior { slot: 5, pos: 2 }],
            6,
            -1,
        ),
        30 => (
            T11,
            vec![3, 3, 2, 2, 2, 3],
            vec![Interior { slot: 0, pos: 2 }, Interior { slot: 1, pos: 1 }, Branch(1), Interior { slot: 5, pos: 2 }],
            6,
            -1,
        ),
        31 => (
            T11,
            vec![2, 2, 2, 3, 3, 3],
            vec![Interior { slot: 4, pos: 2 }, Interior { slot: 3, pos: 1 }, Branch(2), Interior { slot: 5, pos: 2 }],
            6,
            -1,
        ),
        32 => {
            let k = params.require("k")?;
            check_range(k >= 2, id, params)?;
            let k = k as usize;
            (T12, vec![2, 2, 2, k], interiors(3, k).collect(), 7, -2)
        }
        33 => (
            T14,
            vec![2, 2, 3, 3, 3, 2],
            vec![Interior { slot: 4, pos: 1 }, Branch(1), Interior { slot: 2, pos: 2 }, Interior { slot: 3, pos: 1 }],
            6,
            -1,
        ),
        34 | 35 => {
            let p = params.require("p")?;
            let q = params.require("q")?;
            check_range(p >= 1 && q >= 1 && p + q > 2, id, params)?;
            let (p, q) = (p as usize, q as usize);
            if id.0 == 34 {
                let att = interiors(4, p).chain(interiors(5, q)).collect();
                (T14, vec![2, 2, 2, 2, p, q], att, 6, -2)
            } else {
                let att = interiors(0, p).chain(interiors(3, q)).collect();
                (T14, vec![p, 2, 2, q, 2, 2], att, 6, -2)
            }
        }
        36 => (
            T14,
            vec![2, 1, 1, 2, 1, 1],
            vec![Interior { slot: 0, pos: 1 }, Interior { slot: 3, pos: 1 }],
            7,
            -1,
        ),
        37 => {
            let k = params.require("k")?;
            check_range(k >= 1, id, params)?;
            let k = k as usize;
            let att = [Branch(2), Branch(3)].into_iter().chain(interiors(4, k)).collect();
            (T15, vec![1, 1, 1, 1, k, 1], att, 8, -2)
        }
        38 => (T15, vec![1; 6], vec![Branch(3)], 7, -2),
        39 => (
            T15,
            vec![1, 1, 2, 2, 1, 1],
            vec![Interior { slot: 2, pos: 1 }, Interior { slot: 3, pos: 1 }],
            7,
            -1,
        ),
        40 => (T15, vec![2, 1, 1, 2, 1, 2], vec![Branch(1)], 6, -1),
        41 => (
            T15,
            vec![3, 2, 3, 2, 2, 3],
            vec![Interior { slot: 0, pos: 2 }, Interior { slot: 2, pos: 1 }, Interior { slot: 5, pos: 2 }, Branch(2)],
            6,
            -1,
        ),
        42 => {
            let a = params.require("a")?;
            let b = params.require("b")?;
            check_range(k4_attachment_solutions(b..=b, a..=a).len() == 1, id, params)?;
            (T15, vec![1; 6], (0..4).map(Branch).collect(), a, b)
        }
        _ => unreachable!("family ids are validated on construction"),
    };
    let mut params = params.clone();
    for &name in id.param_names() {
        if !params.0.contains_key(name) {
            return Err(Error::InvalidParams(format!("missing parameter {name}")));
        }
    }
    params.0.retain(|k, _| id.param_names().contains(&k.as_str()));
    Ok(FamilyDescriptor {
        id,
        shape,
        lengths,
        attachments,
        a,
        b,
        params,
    })
}

/// Realizes a descriptor without running the oracle.
pub fn realize(desc: &FamilyDescriptor) -> Result<Graph> {
    let base = realize_shape(desc.shape, &desc.lengths)?;
    let mut g = base.graph;
    let target = desc.attached_degree();
    for &site in &desc.attachments {
        let v = match site {
            Branch(i) => i,
            Interior { slot, pos } => *base
                .interiors
                .get(slot)
                .and_then(|inner| inner.get(pos.wrapping_sub(1)))
                .ok_or_else(|| Error::InvalidParams(format!("no attachment site {site:?}")))?,
        };
        let missing = target - g.degree(v) as i64;
        if missing <= 0 {
            return Err(Error::InvalidParams(format!(
                "site {site:?} already has degree {} >= {target}",
                g.degree(v)
            )));
        }
        for _ in 0..missing {
            let p = g.add_vertex();
            g.add_edge(v, p)?;
        }
    }
    Ok(g)
}

/// Realizes a descriptor and checks it against the vertex equations and the
/// exact main-eigenvalue count.
pub fn build_family(desc: &FamilyDescriptor) -> Result<Graph> {
    let g = realize(desc)?;
    let m = check_membership(&g, desc.a, desc.b);
    if !m.is_member() {
        return Err(Error::Oracle(format!(
            "{} ({}) violates the vertex equations for ({}, {}): residuals {:?}",
            desc.id, desc.params, desc.a, desc.b, m.residuals
        )));
    }
    let mains = exact_main_count(&g);
    if mains != 2 {
        return Err(Error::Oracle(format!(
            "{} ({}) has {mains} main eigenvalues",
            desc.id, desc.params
        )));
    }
    Ok(g)
}

/// Builds family `id` at its minimal parameters.
pub fn build_minimal(id: FamilyId) -> Result<(FamilyDescriptor, Graph)> {
    let desc = descriptor(id, &id.minimal_params())?;
    let g = build_family(&desc)?;
    Ok((desc, g))
}

fn params(pairs: &[(&str, i64)]) -> Params {
    Params(pairs.iter().map(|&(k, v)| (k.to_string(), v)).collect())
}

/// Parameter choices of family `id` that give graphs of order `n`.
pub fn params_for_order(id: FamilyId, n: usize) -> Vec<Params> {
    let n = n as i64;
    match id.0 {
        32 if n >= 8 && (n - 2) % 3 == 0 => vec![params(&[("k", (n - 2) / 3)])],
        34 | 35 if n >= 10 && n % 2 == 0 => {
            let sum = (n - 4) / 2;
            (1..=sum / 2)
                .map(|p| params(&[("p", p), ("q", sum - p)]))
                .collect()
        }
        37 if n >= 8 && n % 4 == 0 => vec![params(&[("k", (n - 4) / 4)])],
        42 if n >= 8 && n % 4 == 0 => vec![params(&[("a", (n - 4) / 4 + 7), ("b", -3)])],
        32 | 34 | 35 | 37 | 42 => Vec::new(),
        _ => vec![Params::default()],
    }
}

/// Every family instance of order `n`, oracle-checked.
pub fn enumerate_family_instances(n: usize) -> Result<Vec<(FamilyDescriptor, Graph)>> {
    let mut out = Vec::new();
    for id in FamilyId::all() {
        for p in params_for_order(id, n) {
            let desc = descriptor(id, &p)?;
            let g = realize(&desc)?;
            if g.order() == n {
                let g = build_family(&desc)?;
                out.push((desc, g));
            }
        }
    }
    Ok(out)
}

/// Family instance isomorphic to `g`, if any.
pub fn match_family(g: &Graph) -> Result<Option<FamilyDescriptor>> {
    if !g.is_connected() || g.order() > 64 || g.cyclomatic_number()? != 3 {
        return Ok(None);
    }
    let key = canonical_form(g)?;
    for (desc, h) in enumerate_family_instances(g.order())? {
        if canonical_form(&h)? == key {
            return Ok(Some(desc));
        }
    }
    Ok(None)
}

/// Canonical forms of all family instances of order `n`, with the family
/// of each.
pub fn family_forms(n: usize) -> Result<BTreeMap<CanonicalForm, FamilyDescriptor>> {
    let mut out = BTreeMap::new();
    for (desc, g) in enumerate_family_instances(n)? {
        out.insert(canonical_form(&g)?, desc);
    }
    Ok(out)
}
