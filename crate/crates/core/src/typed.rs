//! Sort-labelled wiring diagrams.
//!
//! A [`TypedWiring`] is a morphism of the coproduct of one copy of the
//! wiring po-prop per sort, presented with ordered contexts. It has a list
//! of inner shells, one outer boundary, a sort-uniform partition of all
//! ports, and a set of floating sorts: sorts that carry a dot touching no
//! port. A floating sort never appears on any port, because a dot of a sort
//! that is already present on the boundary is absorbed.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::UnionFind;
use crate::wiring::{self, Body, Generator, WMor};

/// A sort name.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Sort(pub String);

impl Sort {
    pub fn new(name: impl Into<String>) -> Sort {
        Sort(name.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Sort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Sort {
    fn from(s: &str) -> Sort {
        Sort(s.to_string())
    }
}

/// An ordered list of sorts; the empty context is the monoidal unit.
pub type Context = Vec<Sort>;

/// Shorthand for building contexts in code and tests.
pub fn ctx(names: &[&str]) -> Context {
    names.iter().map(|&n| Sort::from(n)).collect()
}

pub(crate) fn show_ctx(c: &[Sort]) -> String {
    format!("[{}]", c.iter().map(|s| s.0.as_str()).collect::<Vec<_>>().join(","))
}

/// A port: position `p` of inner shell `s`, or position `o` of the outer boundary.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Port {
    Shell { s: usize, p: usize },
    Out { o: usize },
}

impl Port {
    pub fn shell(s: usize, p: usize) -> Port {
        Port::Shell { s, p }
    }

    pub fn out(o: usize) -> Port {
        Port::Out { o }
    }
}

impl fmt::Display for Port {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Port::Shell { s, p } => write!(f, "s{s}.{p}"),
            Port::Out { o } => write!(f, "o{o}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TypedWiring {
    shells: Vec<Context>,
    out: Context,
    blocks: Vec<Vec<Port>>,
    floating: BTreeSet<Sort>,
}

impl TypedWiring {
    /// Validates and canonicalizes: blocks must be nonempty, disjoint,
    /// covering and sort-uniform; floating sorts present on a port are
    /// absorbed.
    pub fn new(
        shells: Vec<Context>,
        out: Context,
        blocks: Vec<Vec<Port>>,
        floating: BTreeSet<Sort>,
    ) -> Result<TypedWiring> {
        let mut w = TypedWiring { shells, out, blocks, floating };
        let mut seen: BTreeSet<Port> = BTreeSet::new();
        for block in &w.blocks {
            let first = block
                .first()
                .ok_or_else(|| Error::MalformedWiring("empty block".into()))?;
            let sort = w
                .port_sort(*first)
                .ok_or_else(|| Error::MalformedWiring(format!("port {first} does not exist")))?
                .clone();
            for &port in block {
                match w.port_sort(port) {
                    None => return Err(Error::MalformedWiring(format!("port {port} does not exist"))),
                    Some(s) if *s != sort => {
                        return Err(Error::MalformedWiring(format!(
                            "block mixes sorts {sort} and {s}"
                        )))
                    }
                    _ => {}
                }
                if !seen.insert(port) {
                    return Err(Error::MalformedWiring(format!("port {port} in two blocks")));
                }
            }
        }
        let total = w.shells.iter().map(Vec::len).sum::<usize>() + w.out.len();
        if seen.len() != total {
            return Err(Error::MalformedWiring("blocks do not cover all ports".into()));
        }
        w.normalize();
        Ok(w)
    }

    /// Canonical block order and floating absorption. Assumes a valid partition.
    fn normalize(&mut self) {
        for b in self.blocks.iter_mut() {
            b.sort_unstable();
        }
        self.blocks.sort_unstable_by_key(|b| b[0]);
        let present = self.boundary_sorts();
        self.floating.retain(|s| !present.contains(s));
    }

    /// No shells, empty boundary, no dots: the identity on the unit.
    pub fn empty() -> TypedWiring {
        TypedWiring { shells: vec![], out: vec![], blocks: vec![], floating: BTreeSet::new() }
    }

    /// The identity on a context, as a one-shell wiring.
    pub fn identity(c: &[Sort]) -> TypedWiring {
        supply_gen(Generator::Identity(1), c)
    }

    /// `η_Γ` with no inner shells: every outer port is its own dot.
    pub fn discard_term(c: &[Sort]) -> TypedWiring {
        let blocks = (0..c.len()).map(|o| vec![Port::out(o)]).collect();
        TypedWiring { shells: vec![], out: c.to_vec(), blocks, floating: BTreeSet::new() }
    }

    /// The permutation `c → [c[perm[0]], c[perm[1]], ...]`.
    pub fn symmetry(c: &[Sort], perm: &[usize]) -> Result<TypedWiring> {
        let mut check = perm.to_vec();
        check.sort_unstable();
        if check != (0..c.len()).collect::<Vec<_>>() {
            return Err(Error::MalformedWiring(format!("{perm:?} is not a permutation")));
        }
        let out = perm.iter().map(|&i| c[i].clone()).collect();
        let blocks = perm.iter().enumerate().map(|(o, &i)| vec![Port::shell(0, i), Port::out(o)]).collect();
        TypedWiring::new(vec![c.to_vec()], out, blocks, BTreeSet::new())
    }

    pub fn shells(&self) -> &[Context] {
        &self.shells
    }

    pub fn out(&self) -> &Context {
        &self.out
    }

    pub fn blocks(&self) -> &[Vec<Port>] {
        &self.blocks
    }

    pub fn floating(&self) -> &BTreeSet<Sort> {
        &self.floating
    }

    pub fn port_sort(&self, port: Port) -> Option<&Sort> {
        match port {
            Port::Shell { s, p } => self.shells.get(s)?.get(p),
            Port::Out { o } => self.out.get(o),
        }
    }

    /// All ports in canonical order.
    pub fn ports(&self) -> Vec<Port> {
        let mut v: Vec<Port> = Vec::new();
        for (s, c) in self.shells.iter().enumerate() {
            v.extend((0..c.len()).map(|p| Port::shell(s, p)));
        }
        v.extend((0..self.out.len()).map(Port::out));
        v
    }

    pub fn boundary_sorts(&self) -> BTreeSet<Sort> {
        self.shells.iter().flatten().chain(&self.out).cloned().collect()
    }

    /// Every sort mentioned on a port or floating.
    pub fn sorts(&self) -> BTreeSet<Sort> {
        let mut s = self.boundary_sorts();
        s.extend(self.floating.iter().cloned());
        s
    }

    /// Index of the block containing `port`.
    pub fn block_of(&self, port: Port) -> Option<usize> {
        self.blocks.iter().position(|b| b.contains(&port))
    }

    /// A port → block index map.
    pub fn block_index(&self) -> HashMap<Port, usize> {
        let mut m = HashMap::new();
        for (i, b) in self.blocks.iter().enumerate() {
            for &p in b {
                m.insert(p, i);
            }
        }
        m
    }

    /// Restriction to one sort, as an untyped morphism whose domain is the
    /// sort's shell ports (shell-major order) and codomain its out ports.
    pub fn restrict(&self, sort: &Sort) -> WMor {
        let dom: Vec<Port> = self.ports().into_iter().filter(|p| matches!(p, Port::Shell { .. }) && self.port_sort(*p) == Some(sort)).collect();
        let cod: Vec<Port> = (0..self.out.len()).map(Port::out).filter(|p| self.port_sort(*p) == Some(sort)).collect();
        if dom.is_empty() && cod.is_empty() {
            return WMor::flag(self.floating.contains(sort));
        }
        let index: HashMap<Port, usize> = dom.iter().chain(&cod).enumerate().map(|(i, &p)| (p, i)).collect();
        let blocks = self
            .blocks
            .iter()
            .filter(|b| self.port_sort(b[0]) == Some(sort))
            .map(|b| b.iter().map(|p| index[p]).collect())
            .collect();
        WMor::from_blocks(dom.len(), cod.len(), blocks).expect("restriction of a valid wiring")
    }

    /// Per-sort decomposition over every sort in [`TypedWiring::sorts`].
    pub fn per_sort(&self) -> BTreeMap<Sort, WMor> {
        self.sorts().into_iter().map(|s| {
            let w = self.restrict(&s);
            (s, w)
        }).collect()
    }

    /// Inverse of [`TypedWiring::per_sort`] for the given shells and boundary.
    pub fn from_per_sort(shells: Vec<Context>, out: Context, parts: &BTreeMap<Sort, WMor>) -> Result<TypedWiring> {
        let skeleton = TypedWiring { shells, out, blocks: vec![], floating: BTreeSet::new() };
        let mut blocks = Vec::new();
        let mut floating = BTreeSet::new();
        for (sort, w) in parts {
            let dom: Vec<Port> = skeleton.ports().into_iter().filter(|p| matches!(p, Port::Shell { .. }) && skeleton.port_sort(*p) == Some(sort)).collect();
            let cod: Vec<Port> = (0..skeleton.out.len()).map(Port::out).filter(|p| skeleton.port_sort(*p) == Some(sort)).collect();
            if w.dom() != dom.len() || w.cod() != cod.len() {
                return Err(Error::ArityMismatch {
                    expected: format!("{} → {} for sort {sort}", dom.len(), cod.len()),
                    found: format!("{} → {}", w.dom(), w.cod()),
                });
            }
            let all: Vec<Port> = dom.into_iter().chain(cod).collect();
            match w.body() {
                Body::Flag(true) => {
                    floating.insert(sort.clone());
                }
                Body::Flag(false) => {}
                Body::Blocks(bs) => blocks.extend(bs.iter().map(|b| b.iter().map(|&i| all[i]).collect::<Vec<_>>())),
            }
        }
        TypedWiring::new(skeleton.shells, skeleton.out, blocks, floating)
    }

    /// Concatenates all shells into a single one.
    pub fn merge_shells(&self) -> TypedWiring {
        let mut offset = Vec::with_capacity(self.shells.len());
        let mut acc = 0;
        for c in &self.shells {
            offset.push(acc);
            acc += c.len();
        }
        let relabel = |p: Port| match p {
            Port::Shell { s, p } => Port::shell(0, offset[s] + p),
            o => o,
        };
        let blocks = self.blocks.iter().map(|b| b.iter().map(|&p| relabel(p)).collect()).collect();
        let mut w = TypedWiring {
            shells: vec![self.shells.concat()],
            out: self.out.clone(),
            blocks,
            floating: self.floating.clone(),
        };
        w.normalize();
        w
    }

    /// `self ⨾ next` for one-shell wirings.
    pub fn then(&self, next: &TypedWiring) -> Result<TypedWiring> {
        compose_at(next, 0, self)
    }

    pub fn leq(&self, other: &TypedWiring) -> Result<bool> {
        leq_t(self, other)
    }

    fn single_shell(&self) -> Result<&Context> {
        if self.shells.len() != 1 {
            return Err(Error::NotSingleShell(self.shells.len()));
        }
        Ok(&self.shells[0])
    }

    fn relabeled(&self, shells: Vec<Context>, out: Context, f: impl Fn(Port) -> Port) -> TypedWiring {
        let blocks = self.blocks.iter().map(|b| b.iter().map(|&p| f(p)).collect()).collect();
        let mut w = TypedWiring { shells, out, blocks, floating: self.floating.clone() };
        w.normalize();
        w
    }
}

/// The generator supplied to a context: the untyped generator applied
/// wire-wise, one copy per context entry. Copy `i` of the context occupies
/// positions `i*|Γ|..(i+1)*|Γ|` on each side.
pub fn supply_gen(kind: Generator, c: &[Sort]) -> TypedWiring {
    supply_w(&wiring::generator(kind), c)
}

/// Supplies an arbitrary untyped morphism to a context.
pub fn supply_w(w: &WMor, c: &[Sort]) -> TypedWiring {
    let (m, n, k) = (w.dom(), w.cod(), c.len());
    let dom_ctx: Context = (0..m).flat_map(|_| c.iter().cloned()).collect();
    let out: Context = (0..n).flat_map(|_| c.iter().cloned()).collect();
    let mut blocks = Vec::new();
    for j in 0..k {
        for b in w.blocks() {
            let block = b
                .iter()
                .map(|&x| if x < m { Port::shell(0, x * k + j) } else { Port::out((x - m) * k + j) })
                .collect();
            blocks.push(block);
        }
    }
    let floating = if w.flag_value() == Some(true) { c.iter().cloned().collect() } else { BTreeSet::new() };
    let mut t = TypedWiring { shells: vec![dom_ctx], out, blocks, floating };
    t.normalize();
    t
}

/// Operadic substitution of `inner` into shell `i` of `outer`.
pub fn compose_at(outer: &TypedWiring, i: usize, inner: &TypedWiring) -> Result<TypedWiring> {
    let slot = outer
        .shells
        .get(i)
        .ok_or(Error::ShellIndex { index: i, count: outer.shells.len() })?;
    if *slot != inner.out {
        return Err(Error::ContextMismatch { expected: show_ctx(slot), found: show_ctx(&inner.out) });
    }
    let outer_ports = outer.ports();
    let inner_ports = inner.ports();
    let id_outer: HashMap<Port, usize> = outer_ports.iter().enumerate().map(|(x, &p)| (p, x)).collect();
    let base = outer_ports.len();
    let id_inner: HashMap<Port, usize> = inner_ports.iter().enumerate().map(|(x, &p)| (p, base + x)).collect();
    let mut uf = UnionFind::new(base + inner_ports.len());
    for b in &outer.blocks {
        for w in b.windows(2) {
            uf.union(id_outer[&w[0]], id_outer[&w[1]]);
        }
    }
    for b in &inner.blocks {
        for w in b.windows(2) {
            uf.union(id_inner[&w[0]], id_inner[&w[1]]);
        }
    }
    for p in 0..slot.len() {
        uf.union(id_outer[&Port::shell(i, p)], id_inner[&Port::out(p)]);
    }

    let k = inner.shells.len();
    let mut result_port: Vec<Option<Port>> = vec![None; base + inner_ports.len()];
    let mut node_sort: Vec<&Sort> = Vec::with_capacity(base + inner_ports.len());
    for (x, &p) in outer_ports.iter().enumerate() {
        node_sort.push(outer.port_sort(p).expect("port exists"));
        result_port[x] = match p {
            Port::Shell { s, .. } if s == i => None,
            Port::Shell { s, p } if s < i => Some(Port::shell(s, p)),
            Port::Shell { s, p } => Some(Port::shell(s - 1 + k, p)),
            o => Some(o),
        };
    }
    for (x, &p) in inner_ports.iter().enumerate() {
        node_sort.push(inner.port_sort(p).expect("port exists"));
        result_port[base + x] = match p {
            Port::Shell { s, p } => Some(Port::shell(i + s, p)),
            Port::Out { .. } => None,
        };
    }

    let mut class_blocks: HashMap<usize, Vec<Port>> = HashMap::new();
    let mut internal: BTreeSet<Sort> = BTreeSet::new();
    let mut roots: Vec<usize> = Vec::new();
    for x in 0..result_port.len() {
        let r = uf.find(x);
        roots.push(r);
        if let Some(p) = result_port[x] {
            class_blocks.entry(r).or_default().push(p);
        }
    }
    for (x, &r) in roots.iter().enumerate() {
        if !class_blocks.contains_key(&r) {
            internal.insert(node_sort[x].clone());
        }
    }

    let mut shells: Vec<Context> = outer.shells[..i].to_vec();
    shells.extend(inner.shells.iter().cloned());
    shells.extend(outer.shells[i + 1..].iter().cloned());
    let mut floating = internal;
    floating.extend(outer.floating.iter().cloned());
    floating.extend(inner.floating.iter().cloned());
    let mut w = TypedWiring { shells, out: outer.out.clone(), blocks: class_blocks.into_values().collect(), floating };
    w.normalize();
    Ok(w)
}

/// Monoidal product: shells and outer boundaries concatenated.
pub fn tensor_t(a: &TypedWiring, b: &TypedWiring) -> TypedWiring {
    let (sa, oa) = (a.shells.len(), a.out.len());
    let shift = |p: Port| match p {
        Port::Shell { s, p } => Port::shell(s + sa, p),
        Port::Out { o } => Port::out(o + oa),
    };
    let mut blocks = a.blocks.clone();
    blocks.extend(b.blocks.iter().map(|bl| bl.iter().map(|&p| shift(p)).collect()));
    let mut w = TypedWiring {
        shells: a.shells.iter().chain(&b.shells).cloned().collect(),
        out: a.out.iter().chain(&b.out).cloned().collect(),
        blocks,
        floating: a.floating.union(&b.floating).cloned().collect(),
    };
    w.normalize();
    w
}

/// `a ≤ b`: `b`'s partition refines `a`'s and `b`'s dots are among `a`'s.
pub fn leq_t(a: &TypedWiring, b: &TypedWiring) -> Result<bool> {
    if a.shells != b.shells || a.out != b.out {
        return Err(Error::ContextMismatch {
            expected: format!("{:?} → {}", a.shells, show_ctx(&a.out)),
            found: format!("{:?} → {}", b.shells, show_ctx(&b.out)),
        });
    }
    let index = a.block_index();
    let refined = b.blocks.iter().all(|bl| bl.iter().all(|p| index[p] == index[&bl[0]]));
    Ok(refined && b.floating.is_subset(&a.floating))
}

/// Swaps the single shell with the outer boundary.
pub fn transpose(w: &TypedWiring) -> Result<TypedWiring> {
    let dom = w.single_shell()?.clone();
    Ok(w.relabeled(vec![w.out.clone()], dom, |p| match p {
        Port::Shell { p, .. } => Port::out(p),
        Port::Out { o } => Port::shell(0, o),
    }))
}

/// The name `I → Γ ⊗ Δ` of a one-shell wiring `Γ → Δ`; the result keeps a
/// single shell with the empty context.
pub fn name(w: &TypedWiring) -> Result<TypedWiring> {
    let dom = w.single_shell()?.clone();
    let n = dom.len();
    let out = dom.iter().chain(&w.out).cloned().collect();
    Ok(w.relabeled(vec![vec![]], out, |p| match p {
        Port::Shell { p, .. } => Port::out(p),
        Port::Out { o } => Port::out(n + o),
    }))
}

/// The unfolding of a named wiring: the first `split` outer ports become the shell.
pub fn unname(w: &TypedWiring, split: usize) -> Result<TypedWiring> {
    let dom = w.single_shell()?;
    if !dom.is_empty() {
        return Err(Error::ContextMismatch { expected: "[]".into(), found: show_ctx(dom) });
    }
    if split > w.out.len() {
        return Err(Error::MalformedSplit { split, len: w.out.len() });
    }
    let shell = w.out[..split].to_vec();
    let out = w.out[split..].to_vec();
    Ok(w.relabeled(vec![shell], out, |p| match p {
        Port::Out { o } if o < split => Port::shell(0, o),
        Port::Out { o } => Port::out(o - split),
        s => s,
    }))
}

impl fmt::Display for TypedWiring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let shells: Vec<String> = self.shells.iter().map(|c| show_ctx(c)).collect();
        write!(f, "({}) → {} ", shells.join(" ⊗ "), show_ctx(&self.out))?;
        let blocks: Vec<String> = self
            .blocks
            .iter()
            .map(|b| format!("{{{}}}", b.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "{}", blocks.join(" "))?;
        if !self.floating.is_empty() {
            let fl: Vec<&str> = self.floating.iter().map(Sort::as_str).collect();
            write!(f, " •{{{}}}", fl.join(","))?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
pub(crate) struct WiringRepr {
    pub shells: Vec<Context>,
    pub out: Context,
    pub blocks: Vec<Vec<Port>>,
    #[serde(default)]
    pub floating: Vec<Sort>,
}

impl From<&TypedWiring> for WiringRepr {
    fn from(w: &TypedWiring) -> Self {
        WiringRepr {
            shells: w.shells.clone(),
            out: w.out.clone(),
            blocks: w.blocks.clone(),
            floating: w.floating.iter().cloned().collect(),
        }
    }
}

impl TryFrom<WiringRepr> for TypedWiring {
    type Error = Error;
    fn try_from(r: WiringRepr) -> Result<Self> {
        TypedWiring::new(r.shells, r.out, r.blocks, r.floating.into_iter().collect())
    }
}

impl Serialize for TypedWiring {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        WiringRepr::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for TypedWiring {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        TypedWiring::try_from(WiringRepr::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Generator::*;

    fn x() -> Context {
        ctx(&["X"])
    }

    #[test]
    fn supplied_generators() {
        let d = supply_gen(Delta, &x());
        assert_eq!(d.blocks(), &[vec![Port::shell(0, 0), Port::out(0), Port::out(1)]]);
        let id = supply_gen(Identity(1), &ctx(&["X", "Y"]));
        assert_eq!(
            id.blocks(),
            &[vec![Port::shell(0, 0), Port::out(0)], vec![Port::shell(0, 1), Port::out(1)]]
        );
        let mu = supply_gen(Mu, &ctx(&["X", "Y"]));
        assert_eq!(mu.shells(), &[ctx(&["X", "Y", "X", "Y"])]);
        assert_eq!(
            mu.blocks(),
            &[
                vec![Port::shell(0, 0), Port::shell(0, 2), Port::out(0)],
                vec![Port::shell(0, 1), Port::shell(0, 3), Port::out(1)]
            ]
        );
    }

    #[test]
    fn composition_examples() {
        // δ then μ is the identity
        let dm = supply_gen(Delta, &x()).then(&supply_gen(Mu, &x())).unwrap();
        assert_eq!(dm, TypedWiring::identity(&x()));
        let w = supply_gen(Delta, &x());
        assert_eq!(compose_at(&w, 0, &TypedWiring::identity(&x())).unwrap(), w);
        // η into ε leaves a floating dot
        let dot = compose_at(&supply_gen(Epsilon, &x()), 0, &supply_gen(Eta, &x())).unwrap();
        assert!(dot.out().is_empty());
        assert_eq!(dot.floating(), &[Sort::from("X")].into_iter().collect());
        assert!(matches!(
            compose_at(&w, 0, &supply_gen(Delta, &x())),
            Err(Error::ContextMismatch { .. })
        ));
        assert!(matches!(compose_at(&w, 3, &w), Err(Error::ShellIndex { .. })));
    }

    #[test]
    fn tensor_examples() {
        let e = supply_gen(Epsilon, &x());
        assert_eq!(tensor_t(&e, &TypedWiring::empty()), e);
        let dot = compose_at(&supply_gen(Epsilon, &x()), 0, &supply_gen(Eta, &x())).unwrap();
        let absorbed = tensor_t(&dot, &supply_gen(Delta, &x()));
        assert!(absorbed.floating().is_empty());
        let y_dot = compose_at(&supply_gen(Epsilon, &ctx(&["Y"])), 0, &supply_gen(Eta, &ctx(&["Y"]))).unwrap();
        assert_eq!(tensor_t(&y_dot, &e).floating().len(), 1);
    }

    #[test]
    fn order_examples() {
        let w = supply_gen(Delta, &x());
        assert!(leq_t(&w, &w).unwrap());
        let dot = compose_at(&supply_gen(Epsilon, &x()), 0, &supply_gen(Eta, &x())).unwrap();
        let blank = TypedWiring::new(vec![vec![]], vec![], vec![], BTreeSet::new()).unwrap();
        assert!(leq_t(&dot, &blank).unwrap());
        assert!(!leq_t(&blank, &dot).unwrap());
        let split = TypedWiring::new(
            vec![x()],
            ctx(&["X", "X"]),
            vec![vec![Port::shell(0, 0), Port::out(0)], vec![Port::out(1)]],
            BTreeSet::new(),
        )
        .unwrap();
        assert!(leq_t(&w, &split).unwrap());
        assert!(!leq_t(&split, &w).unwrap());
    }

    #[test]
    fn transpose_and_name() {
        assert_eq!(transpose(&supply_gen(Delta, &x())).unwrap(), supply_gen(Mu, &x()));
        assert_eq!(transpose(&supply_gen(Epsilon, &x())).unwrap(), supply_gen(Eta, &x()));
        let id = TypedWiring::identity(&x());
        assert_eq!(transpose(&id).unwrap(), id);
        let cup = name(&id).unwrap();
        assert_eq!(cup.out(), &ctx(&["X", "X"]));
        assert_eq!(cup.blocks(), &[vec![Port::out(0), Port::out(1)]]);
        assert_eq!(name(&supply_gen(Epsilon, &x())).unwrap(), supply_gen(Eta, &x()));
        let mu = supply_gen(Mu, &x());
        assert_eq!(unname(&name(&mu).unwrap(), 2).unwrap(), mu);
        assert!(matches!(unname(&cup, 3), Err(Error::MalformedSplit { .. })));
        assert!(matches!(unname(&mu, 0), Err(Error::ContextMismatch { .. })));
        assert!(matches!(transpose(&TypedWiring::empty()), Err(Error::NotSingleShell(0))));
    }

    #[test]
    fn validation() {
        let mixed = TypedWiring::new(
            vec![ctx(&["X"])],
            ctx(&["Y"]),
            vec![vec![Port::shell(0, 0), Port::out(0)]],
            BTreeSet::new(),
        );
        assert!(matches!(mixed, Err(Error::MalformedWiring(_))));
        let uncovered = TypedWiring::new(vec![ctx(&["X"])], vec![], vec![], BTreeSet::new());
        assert!(uncovered.is_err());
    }

    #[test]
    fn json_schema() {
        let text = r#"{"shells":[["X","X"],["Y"]],"out":["X"],"blocks":[[{"s":0,"p":0},{"o":0}],[{"s":0,"p":1}],[{"s":1,"p":0}]],"floating":["Z"]}"#;
        let w: TypedWiring = serde_json::from_str(text).unwrap();
        assert_eq!(w.floating().len(), 1);
        assert_eq!(serde_json::to_string(&w).unwrap(), text);
    }

    #[test]
    fn per_sort_round_trip() {
        let w = tensor_t(&supply_gen(Mu, &ctx(&["X", "Y"])), &supply_gen(Eta, &ctx(&["Z"])));
        let parts = w.per_sort();
        assert_eq!(parts[&Sort::from("X")], wiring::generator(Mu));
        let back = TypedWiring::from_per_sort(w.shells().to_vec(), w.out().clone(), &parts).unwrap();
        assert_eq!(back, w);
    }
}
