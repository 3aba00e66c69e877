//! The po-prop of wiring.
//!
//! A morphism `m → n` is stored in canonical form: a partition of the
//! boundary ports `d1..dm, c1..cn` (indexed `0..m` then `m..m+n`), or, when
//! there are no ports at all, a single flag telling whether the morphism is
//! the identity on `0` ("truth", `false`) or `η⨾ε` ("inhabitedness", `true`).
//!
//! Composition joins the two partitions across the shared interface and
//! forgets every block that no longer meets the outer boundary, which is the
//! pushout of cospans followed by the poset reflection. The order is reverse
//! refinement: `f ≤ g` iff every block of `g` sits inside a block of `f`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::{labels_of, refines, set_partitions, UnionFind};

/// Largest port count accepted by [`enum_homs`].
pub const ENUM_GUARD: usize = 8;

/// A cospan of finite sets `m → k ← n`, legs 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cospan {
    pub dom_size: usize,
    pub cod_size: usize,
    pub apex_size: usize,
    pub left_leg: Vec<usize>,
    pub right_leg: Vec<usize>,
}

impl Cospan {
    pub fn new(apex_size: usize, left_leg: Vec<usize>, right_leg: Vec<usize>) -> Result<Self> {
        if let Some(&bad) = left_leg.iter().chain(&right_leg).find(|&&x| x >= apex_size) {
            return Err(Error::MalformedWiring(format!(
                "leg value {bad} outside apex of size {apex_size}"
            )));
        }
        Ok(Cospan {
            dom_size: left_leg.len(),
            cod_size: right_leg.len(),
            apex_size,
            left_leg,
            right_leg,
        })
    }

    pub fn identity(n: usize) -> Self {
        Cospan {
            dom_size: n,
            cod_size: n,
            apex_size: n,
            left_leg: (0..n).collect(),
            right_leg: (0..n).collect(),
        }
    }

    /// Composite by pushout over the shared interface. The apex is kept in
    /// full, including elements no port reaches.
    pub fn compose(&self, other: &Cospan) -> Result<Cospan> {
        if self.cod_size != other.dom_size {
            return Err(Error::ArityMismatch {
                expected: format!("domain {}", self.cod_size),
                found: format!("domain {}", other.dom_size),
            });
        }
        let k1 = self.apex_size;
        let mut uf = UnionFind::new(k1 + other.apex_size);
        for (i, &a) in self.right_leg.iter().enumerate() {
            uf.union(a, k1 + other.left_leg[i]);
        }
        let blocks = uf.blocks();
        let label = labels_of(&blocks, k1 + other.apex_size);
        Ok(Cospan {
            dom_size: self.dom_size,
            cod_size: other.cod_size,
            apex_size: blocks.len(),
            left_leg: self.left_leg.iter().map(|&a| label[a]).collect(),
            right_leg: other.right_leg.iter().map(|&a| label[k1 + a]).collect(),
        })
    }

    pub fn tensor(&self, other: &Cospan) -> Cospan {
        let k = self.apex_size;
        Cospan {
            dom_size: self.dom_size + other.dom_size,
            cod_size: self.cod_size + other.cod_size,
            apex_size: k + other.apex_size,
            left_leg: self.left_leg.iter().copied().chain(other.left_leg.iter().map(|a| a + k)).collect(),
            right_leg: self.right_leg.iter().copied().chain(other.right_leg.iter().map(|a| a + k)).collect(),
        }
    }

    /// The copairing `{0..m+n} → apex`.
    pub fn copairing(&self) -> Vec<usize> {
        self.left_leg.iter().chain(&self.right_leg).copied().collect()
    }
}

/// The body of a canonical morphism.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Body {
    /// Partition of the boundary ports; only used when there is at least one port.
    Blocks(Vec<Vec<usize>>),
    /// The `0 → 0` case: `false` is truth (`id₀`), `true` is inhabitedness (`η⨾ε`).
    Flag(bool),
}

/// A canonical morphism of the wiring po-prop.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WMor {
    dom: usize,
    cod: usize,
    body: Body,
}

/// Named generators and derived morphisms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    Epsilon,
    Delta,
    Eta,
    Mu,
    Sigma,
    DeltaN(usize),
    MuN(usize),
    Identity(usize),
    Cup,
    Cap,
}

impl Generator {
    /// The arity `(dom, cod)` of the untyped generator.
    pub fn arity(self) -> (usize, usize) {
        match self {
            Generator::Epsilon => (1, 0),
            Generator::Delta => (1, 2),
            Generator::Eta => (0, 1),
            Generator::Mu => (2, 1),
            Generator::Sigma => (2, 2),
            Generator::DeltaN(n) => (1, n),
            Generator::MuN(n) => (n, 1),
            Generator::Identity(n) => (n, n),
            Generator::Cup => (0, 2),
            Generator::Cap => (2, 0),
        }
    }

    pub fn parse(s: &str) -> Option<Generator> {
        let lower = s.to_ascii_lowercase();
        let (head, arg) = match lower.split_once(':') {
            Some((h, a)) => (h.to_string(), a.parse::<usize>().ok()),
            None => (lower.clone(), None),
        };
        Some(match (head.as_str(), arg) {
            ("epsilon", None) => Generator::Epsilon,
            ("delta", None) => Generator::Delta,
            ("eta", None) => Generator::Eta,
            ("mu", None) => Generator::Mu,
            ("sigma", None) => Generator::Sigma,
            ("cup", None) => Generator::Cup,
            ("cap", None) => Generator::Cap,
            ("identity", None) | ("id", None) => Generator::Identity(1),
            ("identity", Some(n)) | ("id", Some(n)) => Generator::Identity(n),
            ("delta_n", Some(n)) | ("delta", Some(n)) => Generator::DeltaN(n),
            ("mu_n", Some(n)) | ("mu", Some(n)) => Generator::MuN(n),
            _ => return None,
        })
    }
}

impl WMor {
    /// Builds a morphism from arbitrary blocks, checking they partition the
    /// ports and sorting them into canonical order.
    pub fn from_blocks(dom: usize, cod: usize, blocks: Vec<Vec<usize>>) -> Result<WMor> {
        let n = dom + cod;
        if n == 0 {
            return Err(Error::MalformedWiring(
                "a 0 → 0 morphism is a flag, not a partition".into(),
            ));
        }
        let mut seen = vec![false; n];
        for block in &blocks {
            if block.is_empty() {
                return Err(Error::MalformedWiring("empty block".into()));
            }
            for &x in block {
                if x >= n || seen[x] {
                    return Err(Error::MalformedWiring(format!(
                        "port {x} repeated or out of range"
                    )));
                }
                seen[x] = true;
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::MalformedWiring("blocks do not cover all ports".into()));
        }
        Ok(WMor { dom, cod, body: Body::Blocks(sort_blocks(blocks)) })
    }

    pub fn flag(inhabited: bool) -> WMor {
        WMor { dom: 0, cod: 0, body: Body::Flag(inhabited) }
    }

    pub fn dom(&self) -> usize {
        self.dom
    }

    pub fn cod(&self) -> usize {
        self.cod
    }

    pub fn body(&self) -> &Body {
        &self.body
    }

    pub fn ports(&self) -> usize {
        self.dom + self.cod
    }

    /// The blocks, empty in the flag case.
    pub fn blocks(&self) -> &[Vec<usize>] {
        match &self.body {
            Body::Blocks(b) => b,
            Body::Flag(_) => &[],
        }
    }

    pub fn flag_value(&self) -> Option<bool> {
        match self.body {
            Body::Flag(b) => Some(b),
            Body::Blocks(_) => None,
        }
    }

    pub fn identity(n: usize) -> WMor {
        generator(Generator::Identity(n))
    }

    /// The canonical representative cospan (jointly surjective, or `0→0←0` /
    /// `0→1←0` in the flag case).
    pub fn to_cospan(&self) -> Cospan {
        match &self.body {
            Body::Flag(b) => Cospan {
                dom_size: 0,
                cod_size: 0,
                apex_size: usize::from(*b),
                left_leg: vec![],
                right_leg: vec![],
            },
            Body::Blocks(blocks) => {
                let label = labels_of(blocks, self.ports());
                Cospan {
                    dom_size: self.dom,
                    cod_size: self.cod,
                    apex_size: blocks.len(),
                    left_leg: label[..self.dom].to_vec(),
                    right_leg: label[self.dom..].to_vec(),
                }
            }
        }
    }

    pub fn then(&self, g: &WMor) -> Result<WMor> {
        compose_w(self, g)
    }

    pub fn plus(&self, g: &WMor) -> WMor {
        tensor_w(self, g)
    }

    /// `f ≤ g` in the hom-poset.
    pub fn leq(&self, g: &WMor) -> Result<bool> {
        leq_w(self, g)
    }

    /// Swaps domain and codomain.
    pub fn transpose(&self) -> WMor {
        match &self.body {
            Body::Flag(_) => self.clone(),
            Body::Blocks(blocks) => {
                let (m, n) = (self.dom, self.cod);
                let relabel = |x: usize| if x < m { n + x } else { x - m };
                let blocks = blocks.iter().map(|b| b.iter().map(|&x| relabel(x)).collect()).collect();
                WMor { dom: n, cod: m, body: Body::Blocks(sort_blocks(blocks)) }
            }
        }
    }

    /// Whether two ports lie in the same block.
    pub fn connected(&self, a: usize, b: usize) -> bool {
        self.blocks().iter().any(|blk| blk.contains(&a) && blk.contains(&b))
    }
}

pub(crate) fn sort_blocks(mut blocks: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    for b in blocks.iter_mut() {
        b.sort_unstable();
    }
    blocks.sort_unstable_by_key(|b| b[0]);
    blocks
}

/// The canonical morphism of a generator.
pub fn generator(kind: Generator) -> WMor {
    let all = |m: usize, n: usize| -> WMor {
        if m + n == 0 {
            WMor::flag(false)
        } else {
            WMor { dom: m, cod: n, body: Body::Blocks(vec![(0..m + n).collect()]) }
        }
    };
    match kind {
        Generator::Epsilon => all(1, 0),
        Generator::Delta => all(1, 2),
        Generator::Eta => all(0, 1),
        Generator::Mu => all(2, 1),
        Generator::DeltaN(n) => all(1, n),
        Generator::MuN(n) => all(n, 1),
        Generator::Sigma => WMor { dom: 2, cod: 2, body: Body::Blocks(vec![vec![0, 3], vec![1, 2]]) },
        Generator::Identity(0) => WMor::flag(false),
        Generator::Identity(n) => WMor {
            dom: n,
            cod: n,
            body: Body::Blocks((0..n).map(|i| vec![i, n + i]).collect()),
        },
        Generator::Cup => compose_w(&generator(Generator::Eta), &generator(Generator::Delta))
            .expect("eta and delta compose"),
        Generator::Cap => compose_w(&generator(Generator::Mu), &generator(Generator::Epsilon))
            .expect("mu and epsilon compose"),
    }
}

/// The canonical form of a cospan: the epi part of its copairing, with
/// unreached apex elements discarded; a flag when there are no ports.
pub fn canonicalize(c: &Cospan) -> WMor {
    let n = c.dom_size + c.cod_size;
    if n == 0 {
        return WMor::flag(c.apex_size >= 1);
    }
    let copair = c.copairing();
    let mut by_apex: Vec<Vec<usize>> = vec![Vec::new(); c.apex_size];
    for (port, &a) in copair.iter().enumerate() {
        by_apex[a].push(port);
    }
    let blocks = by_apex.into_iter().filter(|b| !b.is_empty()).collect();
    WMor { dom: c.dom_size, cod: c.cod_size, body: Body::Blocks(sort_blocks(blocks)) }
}

/// Sequential composite `f ⨾ g`.
pub fn compose_w(f: &WMor, g: &WMor) -> Result<WMor> {
    if f.cod != g.dom {
        return Err(Error::ArityMismatch {
            expected: format!("domain {}", f.cod),
            found: format!("domain {}", g.dom),
        });
    }
    let (m, n, p) = (f.dom, f.cod, g.cod);
    // nodes: f's domain 0..m, interface m..m+n, g's codomain m+n..m+n+p
    let mut uf = UnionFind::new(m + n + p);
    for block in f.blocks() {
        for w in block.windows(2) {
            uf.union(w[0], w[1]);
        }
    }
    for block in g.blocks() {
        for w in block.windows(2) {
            uf.union(m + w[0], m + w[1]);
        }
    }
    if m + p == 0 {
        let inhabited = n >= 1 || f.flag_value() == Some(true) || g.flag_value() == Some(true);
        return Ok(WMor::flag(inhabited));
    }
    let mut outer: Vec<Vec<usize>> = Vec::new();
    let mut root_index = std::collections::HashMap::new();
    for x in (0..m).chain(m + n..m + n + p) {
        let r = uf.find(x);
        let port = if x < m { x } else { x - n };
        let i = *root_index.entry(r).or_insert_with(|| {
            outer.push(Vec::new());
            outer.len() - 1
        });
        outer[i].push(port);
    }
    Ok(WMor { dom: m, cod: p, body: Body::Blocks(sort_blocks(outer)) })
}

/// Monoidal product; a flag operand is absorbed by an operand with ports.
pub fn tensor_w(f: &WMor, g: &WMor) -> WMor {
    match (&f.body, &g.body) {
        (Body::Flag(a), Body::Flag(b)) => WMor::flag(*a || *b),
        (Body::Flag(_), _) => g.clone(),
        (_, Body::Flag(_)) => f.clone(),
        (Body::Blocks(fb), Body::Blocks(gb)) => {
            let (m1, n1, m2) = (f.dom, f.cod, g.dom);
            let m = m1 + m2;
            let rf = |x: usize| if x < m1 { x } else { m + (x - m1) };
            let rg = |x: usize| if x < m2 { m1 + x } else { m + n1 + (x - m2) };
            let blocks = fb
                .iter()
                .map(|b| b.iter().map(|&x| rf(x)).collect())
                .chain(gb.iter().map(|b| b.iter().map(|&x| rg(x)).collect()))
                .collect();
            WMor { dom: m, cod: n1 + g.cod, body: Body::Blocks(sort_blocks(blocks)) }
        }
    }
}

/// `f ≤ g`: `g`'s partition refines `f`'s; in the flag case `g ⇒ f`.
pub fn leq_w(f: &WMor, g: &WMor) -> Result<bool> {
    if f.dom != g.dom || f.cod != g.cod {
        return Err(Error::ArityMismatch {
            expected: format!("{} → {}", f.dom, f.cod),
            found: format!("{} → {}", g.dom, g.cod),
        });
    }
    Ok(match (&f.body, &g.body) {
        (Body::Flag(a), Body::Flag(b)) => !*b || *a,
        (Body::Blocks(fb), Body::Blocks(gb)) => refines(gb, fb, f.ports()),
        _ => unreachable!("equal arities share a body variant"),
    })
}

/// Every canonical morphism `m → n`, without duplicates.
pub fn enum_homs(m: usize, n: usize) -> Result<Vec<WMor>> {
    if m + n > ENUM_GUARD {
        return Err(Error::EnumerationGuard(m + n));
    }
    if m + n == 0 {
        return Ok(vec![WMor::flag(false), WMor::flag(true)]);
    }
    Ok(set_partitions(m + n)
        .into_iter()
        .map(|blocks| WMor { dom: m, cod: n, body: Body::Blocks(blocks) })
        .collect())
}

impl fmt::Display for WMor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}→{} ", self.dom, self.cod)?;
        match &self.body {
            Body::Flag(false) => write!(f, "truth"),
            Body::Flag(true) => write!(f, "inhabited"),
            Body::Blocks(blocks) => {
                let name = |x: usize| {
                    if x < self.dom {
                        format!("d{}", x + 1)
                    } else {
                        format!("c{}", x - self.dom + 1)
                    }
                };
                let parts: Vec<String> = blocks
                    .iter()
                    .map(|b| format!("{{{}}}", b.iter().map(|&x| name(x)).collect::<Vec<_>>().join(",")))
                    .collect();
                write!(f, "{}", parts.join(" "))
            }
        }
    }
}

#[derive(Serialize, Deserialize)]
struct WMorRepr {
    dom: usize,
    cod: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    blocks: Option<Vec<Vec<usize>>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    flag: Option<bool>,
}

impl Serialize for WMor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let repr = match &self.body {
            Body::Flag(b) => WMorRepr { dom: 0, cod: 0, blocks: None, flag: Some(*b) },
            Body::Blocks(b) => WMorRepr { dom: self.dom, cod: self.cod, blocks: Some(b.clone()), flag: None },
        };
        repr.serialize(s)
    }
}

impl<'de> Deserialize<'de> for WMor {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = WMorRepr::deserialize(d)?;
        if repr.dom + repr.cod == 0 {
            return Ok(WMor::flag(repr.flag.unwrap_or(false)));
        }
        WMor::from_blocks(repr.dom, repr.cod, repr.blocks.unwrap_or_default())
            .map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Generator::*;

    fn g(k: Generator) -> WMor {
        generator(k)
    }

    #[test]
    fn generator_forms() {
        assert_eq!(g(Epsilon), WMor::from_blocks(1, 0, vec![vec![0]]).unwrap());
        assert_eq!(g(Delta), WMor::from_blocks(1, 2, vec![vec![0, 1, 2]]).unwrap());
        assert_eq!(g(Identity(0)), WMor::flag(false));
        assert_eq!(g(Cup), WMor::from_blocks(0, 2, vec![vec![0, 1]]).unwrap());
        assert_eq!(g(Cap), WMor::from_blocks(2, 0, vec![vec![0, 1]]).unwrap());
        assert_eq!(g(Sigma).to_string(), "2→2 {d1,c2} {d2,c1}");
        assert_eq!(g(DeltaN(0)), g(Epsilon));
        assert_eq!(g(MuN(0)), g(Eta));
        assert_eq!(g(MuN(3)), WMor::from_blocks(3, 1, vec![vec![0, 1, 2, 3]]).unwrap());
    }

    #[test]
    fn canonicalize_examples() {
        let eps = Cospan::new(1, vec![0], vec![]).unwrap();
        assert_eq!(canonicalize(&eps), g(Epsilon));
        let inhabited = Cospan::new(1, vec![], vec![]).unwrap();
        assert_eq!(canonicalize(&inhabited), WMor::flag(true));
        let c = Cospan::new(2, vec![0, 0], vec![0, 1]).unwrap();
        assert_eq!(canonicalize(&c), WMor::from_blocks(2, 2, vec![vec![0, 1, 2], vec![3]]).unwrap());
        // unreached apex elements disappear
        let c = Cospan::new(3, vec![2], vec![2]).unwrap();
        assert_eq!(canonicalize(&c), WMor::identity(1));
    }

    #[test]
    fn compose_examples() {
        assert_eq!(compose_w(&g(Delta), &g(Mu)).unwrap(), WMor::identity(1));
        assert_eq!(compose_w(&g(Eta), &g(Epsilon)).unwrap(), WMor::flag(true));
        assert_eq!(compose_w(&WMor::identity(0), &WMor::identity(0)).unwrap(), WMor::identity(0));
        assert_eq!(
            compose_w(&g(Mu), &g(Delta)).unwrap(),
            WMor::from_blocks(2, 2, vec![vec![0, 1, 2, 3]]).unwrap()
        );
        assert!(matches!(compose_w(&g(Delta), &g(Delta)), Err(Error::ArityMismatch { .. })));
    }

    #[test]
    fn tensor_examples() {
        assert_eq!(tensor_w(&g(Epsilon), &WMor::identity(0)), g(Epsilon));
        assert_eq!(tensor_w(&g(Epsilon), &WMor::flag(true)), g(Epsilon));
        assert_eq!(tensor_w(&WMor::flag(true), &WMor::flag(true)), WMor::flag(true));
        assert_eq!(tensor_w(&WMor::flag(false), &WMor::flag(false)), WMor::flag(false));
        let s = tensor_w(&g(Epsilon), &g(Eta));
        assert_eq!(s, WMor::from_blocks(1, 1, vec![vec![0], vec![1]]).unwrap());
    }

    #[test]
    fn leq_examples() {
        let eps_eta = compose_w(&g(Epsilon), &g(Eta)).unwrap();
        assert!(leq_w(&WMor::identity(1), &eps_eta).unwrap());
        assert!(!leq_w(&eps_eta, &WMor::identity(1)).unwrap());
        assert!(leq_w(&WMor::flag(true), &WMor::identity(0)).unwrap());
        assert!(!leq_w(&WMor::identity(0), &WMor::flag(true)).unwrap());
        assert!(leq_w(&g(Delta), &g(Epsilon)).is_err());
    }

    #[test]
    fn enumeration_sizes() {
        assert_eq!(enum_homs(0, 0).unwrap(), vec![WMor::flag(false), WMor::flag(true)]);
        assert_eq!(enum_homs(1, 1).unwrap().len(), 2);
        assert_eq!(enum_homs(2, 1).unwrap().len(), 5);
        assert_eq!(enum_homs(5, 3).unwrap().len(), 4140);
        assert_eq!(enum_homs(5, 4), Err(Error::EnumerationGuard(9)));
    }

    #[test]
    fn cospan_round_trip() {
        for m in 0..3 {
            for n in 0..3 {
                for w in enum_homs(m, n).unwrap() {
                    assert_eq!(canonicalize(&w.to_cospan()), w);
                }
            }
        }
    }

    #[test]
    fn transpose_swaps_generators() {
        assert_eq!(g(Delta).transpose(), g(Mu));
        assert_eq!(g(Epsilon).transpose(), g(Eta));
        assert_eq!(g(Sigma).transpose(), g(Sigma));
    }

    #[test]
    fn json_shape() {
        let s = serde_json::to_string(&g(Delta)).unwrap();
        assert_eq!(s, r#"{"dom":1,"cod":2,"blocks":[[0,1,2]]}"#);
        let back: WMor = serde_json::from_str(&s).unwrap();
        assert_eq!(back, g(Delta));
        let f: WMor = serde_json::from_str(r#"{"dom":0,"cod":0,"flag":true}"#).unwrap();
        assert_eq!(f, WMor::flag(true));
        assert!(serde_json::from_str::<WMor>(r#"{"dom":1,"cod":1,"blocks":[[0]]}"#).is_err());
    }
}
