//! Relations between finite sets, the supply of wirings they carry, the
//! calculus of predicates `Prd(Rel)`, kite folding, and finite models of
//! theories.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formulas::{Formula, Theory};
use crate::terms::{GraphicalTerm, Leq, RegularCalculus};
use crate::typed::{show_ctx, Context, Port, Sort, TypedWiring};
use crate::wiring::{Body, Generator, WMor};

/// A relation between `{0..dom}` and `{0..cod}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FinRel {
    dom: usize,
    cod: usize,
    pairs: BTreeSet<(usize, usize)>,
}

impl FinRel {
    pub fn new(dom: usize, cod: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<FinRel> {
        let pairs: BTreeSet<(usize, usize)> = pairs.into_iter().collect();
        if let Some(&(a, b)) = pairs.iter().find(|&&(a, b)| a >= dom || b >= cod) {
            return Err(Error::BoundaryMismatch(format!("pair ({a},{b}) outside {dom}×{cod}")));
        }
        Ok(FinRel { dom, cod, pairs })
    }

    pub fn identity(n: usize) -> FinRel {
        FinRel { dom: n, cod: n, pairs: (0..n).map(|x| (x, x)).collect() }
    }

    pub fn empty(dom: usize, cod: usize) -> FinRel {
        FinRel { dom, cod, pairs: BTreeSet::new() }
    }

    /// The graph of a function given by its values.
    pub fn graph(cod: usize, values: &[usize]) -> Result<FinRel> {
        FinRel::new(values.len(), cod, values.iter().copied().enumerate())
    }

    /// The relation whose pairs are the bits of `mask`, row-major.
    pub fn from_mask(dom: usize, cod: usize, mask: u64) -> FinRel {
        let pairs = (0..dom * cod).filter(|i| mask >> i & 1 == 1).map(|i| (i / cod, i % cod)).collect();
        FinRel { dom, cod, pairs }
    }

    pub fn dom(&self) -> usize {
        self.dom
    }

    pub fn cod(&self) -> usize {
        self.cod
    }

    pub fn pairs(&self) -> &BTreeSet<(usize, usize)> {
        &self.pairs
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.pairs.contains(&(a, b))
    }

    pub fn leq(&self, other: &FinRel) -> bool {
        self.dom == other.dom && self.cod == other.cod && self.pairs.is_subset(&other.pairs)
    }

    /// Whether the relation is the graph of a total function.
    pub fn is_function(&self) -> bool {
        (0..self.dom).all(|a| self.pairs.range((a, 0)..(a + 1, 0)).count() == 1)
    }

    pub fn image(&self) -> BTreeSet<usize> {
        self.pairs.iter().map(|&(_, b)| b).collect()
    }
}

pub fn rel_compose(f: &FinRel, g: &FinRel) -> Result<FinRel> {
    if f.cod != g.dom {
        return Err(Error::BoundaryMismatch(format!("cannot compose {}→{} with {}→{}", f.dom, f.cod, g.dom, g.cod)));
    }
    let mut pairs = BTreeSet::new();
    for &(a, b) in &f.pairs {
        for &(_, c) in g.pairs.range((b, 0)..(b + 1, 0)) {
            pairs.insert((a, c));
        }
    }
    Ok(FinRel { dom: f.dom, cod: g.cod, pairs })
}

/// Cartesian product; the pair `(x, y)` is encoded as `x * |second| + y`.
pub fn rel_tensor(f: &FinRel, g: &FinRel) -> FinRel {
    let mut pairs = BTreeSet::new();
    for &(a, b) in &f.pairs {
        for &(c, d) in &g.pairs {
            pairs.insert((a * g.dom + c, b * g.cod + d));
        }
    }
    FinRel { dom: f.dom * g.dom, cod: f.cod * g.cod, pairs }
}

pub fn rel_dagger(f: &FinRel) -> FinRel {
    FinRel { dom: f.cod, cod: f.dom, pairs: f.pairs.iter().map(|&(a, b)| (b, a)).collect() }
}

/// Big-endian mixed-radix encoding of a tuple.
pub fn encode(tuple: &[usize], sizes: &[usize]) -> usize {
    tuple.iter().zip(sizes).fold(0, |acc, (&t, &s)| acc * s + t)
}

pub fn decode(mut index: usize, sizes: &[usize]) -> Vec<usize> {
    let mut out = vec![0; sizes.len()];
    for i in (0..sizes.len()).rev() {
        out[i] = index % sizes[i];
        index /= sizes[i];
    }
    out
}

/// All tuples of the product of `sizes`, in lexicographic order.
pub fn tuples(sizes: &[usize]) -> Vec<Vec<usize>> {
    let total: usize = sizes.iter().product();
    (0..total).map(|i| decode(i, sizes)).collect()
}

/// The structure map of a generator on a set of size `n`.
pub fn rel_supply(kind: Generator, n: usize) -> FinRel {
    rel_supply_w(&crate::wiring::generator(kind), n)
}

/// An untyped wiring supplied to a set of size `n`: `n^dom → n^cod`,
/// relating tuples constant on every block.
pub fn rel_supply_w(w: &WMor, n: usize) -> FinRel {
    let (m, k) = (w.dom(), w.cod());
    match w.body() {
        Body::Flag(inhabited) => {
            let holds = !inhabited || n > 0;
            FinRel { dom: 1, cod: 1, pairs: if holds { [(0, 0)].into() } else { BTreeSet::new() } }
        }
        Body::Blocks(blocks) => {
            let mut pairs = BTreeSet::new();
            let dom_sizes = vec![n; m];
            let cod_sizes = vec![n; k];
            for values in tuples(&vec![n; blocks.len()]) {
                let mut ports = vec![0; m + k];
                for (b, block) in blocks.iter().enumerate() {
                    for &x in block {
                        ports[x] = values[b];
                    }
                }
                pairs.insert((encode(&ports[..m], &dom_sizes), encode(&ports[m..], &cod_sizes)));
            }
            FinRel { dom: n.pow(m as u32), cod: n.pow(k as u32), pairs }
        }
    }
}

/// A tabulation `(f_R, f_L)` of `f : A → B` through its set of pairs `T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tabulation {
    pub tab: Vec<(usize, usize)>,
    /// `A → T`, the converse of the projection to `A`.
    pub right: FinRel,
    /// `T → B`, the projection to `B`.
    pub left: FinRel,
}

impl Tabulation {
    /// `f̂ = δ_T ⨾ (f_L ⊗ f_R†) : T → B ⊗ A`.
    pub fn hat(&self) -> FinRel {
        let t = self.tab.len();
        let delta = rel_supply(Generator::Delta, t);
        rel_compose(&delta, &rel_tensor(&self.left, &rel_dagger(&self.right))).expect("matching boundaries")
    }
}

pub fn tabulate(f: &FinRel) -> Tabulation {
    let tab: Vec<(usize, usize)> = f.pairs.iter().copied().collect();
    let right = FinRel { dom: f.dom, cod: tab.len(), pairs: tab.iter().enumerate().map(|(t, &(a, _))| (a, t)).collect() };
    let left = FinRel { dom: tab.len(), cod: f.cod, pairs: tab.iter().enumerate().map(|(t, &(_, b))| (t, b)).collect() };
    Tabulation { tab, right, left }
}

/// A predicate of `Prd(Rel)`: a set of tuples.
pub type Subset = BTreeSet<Vec<usize>>;

/// The calculus of predicates of `Rel(FinSet)`, with a finite set per sort.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrdCalculus {
    pub carriers: BTreeMap<Sort, usize>,
}

impl PrdCalculus {
    pub fn new(carriers: BTreeMap<Sort, usize>) -> Self {
        PrdCalculus { carriers }
    }

    /// Every sort in `sorts` gets a carrier of size `n`.
    pub fn uniform(sorts: &[&str], n: usize) -> Self {
        PrdCalculus { carriers: sorts.iter().map(|&s| (Sort::from(s), n)).collect() }
    }

    pub fn size(&self, s: &Sort) -> Result<usize> {
        self.carriers.get(s).copied().ok_or_else(|| Error::MissingCarrier(s.0.clone()))
    }

    pub fn sizes(&self, c: &[Sort]) -> Result<Vec<usize>> {
        c.iter().map(|s| self.size(s)).collect()
    }

    /// Every subset of the product over `c`.
    pub fn all_subsets(&self, c: &[Sort]) -> Result<Vec<Subset>> {
        let elems = tuples(&self.sizes(c)?);
        if elems.len() > 16 {
            return Err(Error::EnumerationGuard(elems.len()));
        }
        Ok((0u32..1 << elems.len())
            .map(|mask| elems.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, t)| t.clone()).collect())
            .collect())
    }

    /// The relation `∏Γ → ∏Δ` a one-shell wiring denotes.
    pub fn wiring_relation(&self, w: &TypedWiring) -> Result<FinRel> {
        let shell = w.shells().first().ok_or(Error::NotSingleShell(0))?;
        let dom_sizes = self.sizes(shell)?;
        let cod_sizes = self.sizes(w.out())?;
        let all: Subset = tuples(&dom_sizes).into_iter().collect();
        let mut pairs = BTreeSet::new();
        for u in &all {
            for v in self.image_of(w, u)? {
                pairs.insert((encode(u, &dom_sizes), encode(&v, &cod_sizes)));
            }
        }
        FinRel::new(dom_sizes.iter().product(), cod_sizes.iter().product(), pairs)
    }

    /// Out tuples related to the shell tuple `u` by `w`.
    fn image_of(&self, w: &TypedWiring, u: &[usize]) -> Result<Vec<Vec<usize>>> {
        for s in w.floating() {
            if self.size(s)? == 0 {
                return Ok(vec![]);
            }
        }
        let mut fixed: Vec<Option<usize>> = vec![None; w.blocks().len()];
        let mut free: Vec<usize> = Vec::new();
        for (b, block) in w.blocks().iter().enumerate() {
            for &p in block {
                if let Port::Shell { p, .. } = p {
                    match fixed[b] {
                        Some(v) if v != u[p] => return Ok(vec![]),
                        _ => fixed[b] = Some(u[p]),
                    }
                }
            }
            if fixed[b].is_none() && block.iter().any(|p| matches!(p, Port::Out { .. })) {
                free.push(b);
            }
        }
        let free_sizes = free.iter().map(|&b| self.size(w.port_sort(w.blocks()[b][0]).expect("port"))).collect::<Result<Vec<_>>>()?;
        let mut out = Vec::new();
        for values in tuples(&free_sizes) {
            let mut v = vec![0; w.out().len()];
            for (b, block) in w.blocks().iter().enumerate() {
                let val = match fixed[b] {
                    Some(x) => x,
                    None => match free.iter().position(|&f| f == b) {
                        Some(k) => values[k],
                        None => continue,
                    },
                };
                for &p in block {
                    if let Port::Out { o } = p {
                        v[o] = val;
                    }
                }
            }
            out.push(v);
        }
        Ok(out)
    }
}

/// The two coordinate projections of a subset of `Γ₁ ⧺ Γ₂`.
pub fn prd_pi(h: &Subset, split: usize) -> (Subset, Subset) {
    (h.iter().map(|t| t[..split].to_vec()).collect(), h.iter().map(|t| t[split..].to_vec()).collect())
}

impl RegularCalculus for PrdCalculus {
    type Pred = Subset;

    fn check(&self, c: &[Sort], p: &Subset) -> Result<()> {
        let sizes = self.sizes(c)?;
        for t in p {
            if t.len() != sizes.len() || t.iter().zip(&sizes).any(|(&x, &n)| x >= n) {
                return Err(Error::BoundaryMismatch(format!("tuple {t:?} outside {}", show_ctx(c))));
            }
        }
        Ok(())
    }

    fn truth_unit(&self) -> Subset {
        [vec![]].into()
    }

    fn apply(&self, w: &TypedWiring, p: &Subset) -> Result<Subset> {
        if w.shells().len() != 1 {
            return Err(Error::NotSingleShell(w.shells().len()));
        }
        self.check(&w.shells()[0], p)?;
        self.sizes(w.out())?;
        let mut out = Subset::new();
        for u in p {
            out.extend(self.image_of(w, u)?);
        }
        Ok(out)
    }

    fn boxplus(&self, _g1: &[Sort], p1: &Subset, _g2: &[Sort], p2: &Subset) -> Subset {
        let mut out = Subset::new();
        for a in p1 {
            for b in p2 {
                out.insert(a.iter().chain(b).copied().collect());
            }
        }
        out
    }

    fn lambda_split(&self, g1: &[Sort], _g2: &[Sort], p: &Subset) -> (Subset, Subset) {
        prd_pi(p, g1.len())
    }

    fn leq3(&self, _c: &[Sort], a: &Subset, b: &Subset) -> Leq {
        a.is_subset(b).into()
    }
}

/// A relation between products of sorted finite sets, used as a kite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Kite {
    pub dom: Context,
    pub cod: Context,
    pub rel: FinRel,
}

/// A wiring diagram with open shells and kites. The wiring's shells are
/// the open shells followed by one shell per kite, whose context is the
/// kite's domain followed by its codomain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KiteDiagram {
    pub carriers: BTreeMap<Sort, usize>,
    pub shells: Vec<Context>,
    pub kites: Vec<Kite>,
    pub wiring: TypedWiring,
}

impl KiteDiagram {
    pub fn validate(&self) -> Result<()> {
        let calc = PrdCalculus::new(self.carriers.clone());
        let expected: Vec<Context> = self
            .shells
            .iter()
            .cloned()
            .chain(self.kites.iter().map(|k| k.dom.iter().chain(&k.cod).cloned().collect()))
            .collect();
        if expected != self.wiring.shells() {
            return Err(Error::BoundaryMismatch("wiring shells do not match open shells and kites".into()));
        }
        for k in &self.kites {
            let (d, c): (usize, usize) = (calc.sizes(&k.dom)?.iter().product(), calc.sizes(&k.cod)?.iter().product());
            if k.rel.dom() != d || k.rel.cod() != c {
                return Err(Error::BoundaryMismatch(format!("kite relation is {}→{}, boundary is {d}→{c}", k.rel.dom(), k.rel.cod())));
            }
        }
        Ok(())
    }
}

/// `⌜f⌝`: the name of a kite as a subset of `dom ⧺ cod`.
pub fn kite_name(calc: &PrdCalculus, k: &Kite) -> Result<Subset> {
    let ds = calc.sizes(&k.dom)?;
    let cs = calc.sizes(&k.cod)?;
    Ok(k.rel.pairs().iter().map(|&(a, b)| decode(a, &ds).into_iter().chain(decode(b, &cs)).collect()).collect())
}

/// Folds kites into shell predicates. Open shells move to the front of the
/// outer boundary, so the result represents the name of the diagram's
/// relation `∏ shells → ∏ out`.
pub fn fold_kites(k: &KiteDiagram) -> Result<GraphicalTerm<Subset>> {
    k.validate()?;
    let calc = PrdCalculus::new(k.carriers.clone());
    let open = k.shells.len();
    let mut offset = Vec::new();
    let mut acc = 0;
    for c in &k.shells {
        offset.push(acc);
        acc += c.len();
    }
    let w = &k.wiring;
    let blocks = w
        .blocks()
        .iter()
        .map(|b| {
            b.iter()
                .map(|&p| match p {
                    Port::Shell { s, p } if s < open => Port::out(offset[s] + p),
                    Port::Shell { s, p } => Port::shell(s - open, p),
                    Port::Out { o } => Port::out(acc + o),
                })
                .collect()
        })
        .collect();
    let out: Context = k.shells.concat().into_iter().chain(w.out().iter().cloned()).collect();
    let wiring = TypedWiring::new(w.shells()[open..].to_vec(), out, blocks, w.floating().clone())?;
    let preds = k.kites.iter().map(|kite| kite_name(&calc, kite)).collect::<Result<Vec<_>>>()?;
    GraphicalTerm::new(preds, wiring)
}

/// A finite interpretation of a signature: labelled carriers and relations
/// as sets of index tuples.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Model {
    pub carriers: BTreeMap<Sort, Vec<String>>,
    pub rels: BTreeMap<String, BTreeSet<Vec<usize>>>,
}

impl Model {
    /// Carriers labelled `0, 1, ..`.
    pub fn with_sizes(sizes: &[(&str, usize)]) -> Model {
        Model {
            carriers: sizes.iter().map(|&(s, n)| (Sort::from(s), (0..n).map(|i| i.to_string()).collect())).collect(),
            rels: BTreeMap::new(),
        }
    }

    pub fn with_rel(mut self, r: &str, tuples: &[&[usize]]) -> Model {
        self.rels.insert(r.to_string(), tuples.iter().map(|t| t.to_vec()).collect());
        self
    }

    pub fn size(&self, s: &Sort) -> Result<usize> {
        self.carriers.get(s).map(Vec::len).ok_or_else(|| Error::MissingCarrier(s.0.clone()))
    }

    pub fn sizes(&self, c: &[Sort]) -> Result<Vec<usize>> {
        c.iter().map(|s| self.size(s)).collect()
    }

    pub fn calculus(&self) -> PrdCalculus {
        PrdCalculus::new(self.carriers.iter().map(|(s, v)| (s.clone(), v.len())).collect())
    }

    /// Checks the relations against a theory's arities.
    pub fn validate(&self, theory: &Theory) -> Result<()> {
        for (r, ts) in &self.rels {
            let arity = theory.relsyms.get(r).ok_or_else(|| Error::UnknownRelation(r.clone()))?;
            let sizes = self.sizes(arity)?;
            if let Some(t) = ts.iter().find(|t| t.len() != sizes.len() || t.iter().zip(&sizes).any(|(&x, &n)| x >= n)) {
                return Err(Error::BoundaryMismatch(format!("tuple {t:?} of {r} outside {}", show_ctx(arity))));
            }
        }
        Ok(())
    }

    fn holds(&self, phi: &Formula, env: &mut Vec<usize>) -> Result<bool> {
        Ok(match phi {
            Formula::True => true,
            Formula::Atom(r, args) => {
                let t: Vec<usize> = args.iter().map(|&v| env[v]).collect();
                self.rels.get(r).is_some_and(|s| s.contains(&t))
            }
            Formula::Eq(a, b) => env[*a] == env[*b],
            Formula::And(a, b) => self.holds(a, env)? && self.holds(b, env)?,
            Formula::Exists(s, body) => {
                let mut found = false;
                for x in 0..self.size(s)? {
                    env.push(x);
                    let h = self.holds(body, env);
                    env.pop();
                    if h? {
                        found = true;
                        break;
                    }
                }
                found
            }
        })
    }

    /// Tuples over `c` satisfying `phi`, by direct recursive semantics.
    pub fn eval_formula(&self, c: &[Sort], phi: &Formula) -> Result<Subset> {
        let mut out = Subset::new();
        for t in tuples(&self.sizes(c)?) {
            let mut env = t.clone();
            if self.holds(phi, &mut env)? {
                out.insert(t);
            }
        }
        Ok(out)
    }

    /// Whether every axiom's left side is contained in its right side.
    pub fn check_axioms(&self, theory: &Theory) -> Result<bool> {
        for ax in &theory.axioms {
            let l = self.eval_formula(&ax.context, &ax.lhs)?;
            let r = self.eval_formula(&ax.context, &ax.rhs)?;
            if !l.is_subset(&r) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Outer tuples of a term over formulas: assignments of elements to
    /// wiring blocks under which every shell's formula holds.
    pub fn eval_term(&self, t: &GraphicalTerm<Formula>) -> Result<Subset> {
        let w = &t.wiring;
        for s in w.floating() {
            if self.size(s)? == 0 {
                return Ok(Subset::new());
            }
        }
        let shell_sets = w
            .shells()
            .iter()
            .zip(&t.preds)
            .map(|(c, p)| self.eval_formula(c, p))
            .collect::<Result<Vec<_>>>()?;
        let block_sizes = w
            .blocks()
            .iter()
            .map(|b| self.size(w.port_sort(b[0]).expect("port")))
            .collect::<Result<Vec<_>>>()?;
        let index = w.block_index();
        let mut out = Subset::new();
        for values in tuples(&block_sizes) {
            let ok = w.shells().iter().enumerate().all(|(s, c)| {
                let tup: Vec<usize> = (0..c.len()).map(|p| values[index[&Port::shell(s, p)]]).collect();
                shell_sets[s].contains(&tup)
            });
            if ok {
                out.insert((0..w.out().len()).map(|o| values[index[&Port::out(o)]]).collect());
            }
        }
        Ok(out)
    }

    pub fn label(&self, s: &Sort, i: usize) -> &str {
        &self.carriers[s][i]
    }

    pub fn show_tuple(&self, c: &[Sort], t: &[usize]) -> Vec<String> {
        c.iter().zip(t).map(|(s, &i)| self.label(s, i).to_string()).collect()
    }
}

/// `model_eval`: the tuples over a term's outer boundary it denotes in `m`.
pub fn model_eval(m: &Model, t: &GraphicalTerm<Formula>) -> Result<Subset> {
    m.eval_term(t)
}

pub fn check_axioms(m: &Model, theory: &Theory) -> Result<bool> {
    m.check_axioms(theory)
}

#[derive(Serialize, Deserialize)]
struct ModelRepr {
    carriers: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    rels: BTreeMap<String, Vec<Vec<String>>>,
}

impl Model {
    /// Parses the JSON model format; relation arities come from `theory`.
    pub fn from_json(text: &str, theory: &Theory) -> Result<Model> {
        let repr: ModelRepr = serde_json::from_str(text)?;
        let carriers: BTreeMap<Sort, Vec<String>> = repr.carriers.into_iter().map(|(s, v)| (Sort(s), v)).collect();
        let mut rels = BTreeMap::new();
        for (r, ts) in repr.rels {
            let arity = theory.relsyms.get(&r).ok_or_else(|| Error::UnknownRelation(r.clone()))?;
            let mut set = BTreeSet::new();
            for t in ts {
                if t.len() != arity.len() {
                    return Err(Error::ArityMismatch { expected: show_ctx(arity), found: format!("{t:?}") });
                }
                let idx = t
                    .iter()
                    .zip(arity)
                    .map(|(label, s)| {
                        carriers
                            .get(s)
                            .ok_or_else(|| Error::MissingCarrier(s.0.clone()))?
                            .iter()
                            .position(|l| l == label)
                            .ok_or_else(|| Error::BoundaryMismatch(format!("`{label}` is not an element of {s}")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                set.insert(idx);
            }
            rels.insert(r, set);
        }
        Ok(Model { carriers, rels })
    }

    /// Serializes to the JSON model format; relation arities come from `theory`.
    pub fn to_json(&self, theory: &Theory) -> Result<serde_json::Value> {
        let mut rels = BTreeMap::new();
        for (r, ts) in &self.rels {
            let arity = theory.relsyms.get(r).ok_or_else(|| Error::UnknownRelation(r.clone()))?;
            rels.insert(r.clone(), ts.iter().map(|t| self.show_tuple(arity, t)).collect::<Vec<_>>());
        }
        let repr = ModelRepr { carriers: self.carriers.iter().map(|(s, v)| (s.0.clone(), v.clone())).collect(), rels };
        Ok(serde_json::to_value(repr)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::terms::represent;
    use crate::typed::{ctx, supply_gen};
    use Generator::*;

    #[test]
    fn composition_examples() {
        let f = FinRel::new(2, 2, [(0, 1)]).unwrap();
        let g = FinRel::new(2, 2, [(1, 0)]).unwrap();
        assert_eq!(rel_compose(&f, &g).unwrap().pairs(), &[(0, 0)].into());
        assert_eq!(rel_compose(&f, &FinRel::identity(2)).unwrap(), f);
        assert_eq!(rel_dagger(&rel_dagger(&f)), f);
        assert!(rel_compose(&f, &FinRel::identity(3)).is_err());
    }

    #[test]
    fn supply_examples() {
        let dm = rel_compose(&rel_supply(Delta, 2), &rel_supply(Mu, 2)).unwrap();
        assert_eq!(dm, FinRel::identity(2));
        let f = FinRel::new(2, 2, [(0, 1)]).unwrap();
        let fe = rel_compose(&f, &rel_supply(Epsilon, 2)).unwrap();
        assert!(fe.leq(&rel_supply(Epsilon, 2)) && fe != rel_supply(Epsilon, 2));
        assert!(rel_supply(Epsilon, 0).pairs().is_empty());
        assert_eq!(rel_supply(Sigma, 2).pairs(), &[(0, 0), (1, 2), (2, 1), (3, 3)].into());
    }

    #[test]
    fn tabulation_examples() {
        let id = tabulate(&FinRel::identity(2));
        assert_eq!(id.tab.len(), 2);
        let f = FinRel::new(2, 2, [(0, 0), (0, 1)]).unwrap();
        let t = tabulate(&f);
        assert_eq!(rel_compose(&t.right, &t.left).unwrap(), f);
        let h = t.hat();
        assert_eq!(rel_compose(&h, &rel_dagger(&h)).unwrap(), FinRel::identity(2));
        let e = tabulate(&FinRel::empty(2, 2));
        assert_eq!(rel_compose(&e.hat(), &rel_dagger(&e.hat())).unwrap(), FinRel::identity(0));
    }

    #[test]
    fn prd_examples() {
        let calc = PrdCalculus::uniform(&["X"], 2);
        let h: Subset = [vec![0, 1]].into();
        assert_eq!(prd_pi(&h, 1), ([vec![0]].into(), [vec![1]].into()));
        assert_eq!(calc.truth_unit(), [vec![]].into());
        let x = ctx(&["X"]);
        let eps = supply_gen(Epsilon, &x);
        assert_eq!(calc.apply(&eps, &[vec![1]].into()).unwrap(), calc.truth_unit());
        assert!(calc.apply(&eps, &Subset::new()).unwrap().is_empty());
        assert_eq!(calc.truth(&x), [vec![0], vec![1]].into());
    }

    #[test]
    fn kite_examples() {
        let carriers: BTreeMap<Sort, usize> = [(Sort::from("X"), 2)].into();
        let calc = PrdCalculus::new(carriers.clone());
        let x = ctx(&["X"]);
        let xx = ctx(&["X", "X"]);
        let f = FinRel::new(2, 2, [(0, 1), (1, 1)]).unwrap();
        let g = FinRel::new(2, 2, [(1, 0)]).unwrap();
        let kite = |r: &FinRel| Kite { dom: x.clone(), cod: x.clone(), rel: r.clone() };
        let single = KiteDiagram {
            carriers: carriers.clone(),
            shells: vec![],
            kites: vec![kite(&f)],
            wiring: TypedWiring::identity(&xx),
        };
        let t = fold_kites(&single).unwrap();
        assert_eq!(represent(&calc, &t).unwrap(), [vec![0, 1], vec![1, 1]].into());
        let o = Port::out;
        let s = Port::shell;
        let chain = KiteDiagram {
            carriers,
            shells: vec![],
            kites: vec![kite(&f), kite(&g)],
            wiring: TypedWiring::new(
                vec![xx.clone(), xx.clone()],
                xx.clone(),
                vec![vec![s(0, 0), o(0)], vec![s(0, 1), s(1, 0)], vec![s(1, 1), o(1)]],
                BTreeSet::new(),
            )
            .unwrap(),
        };
        let fg = rel_compose(&f, &g).unwrap();
        let want: Subset = fg.pairs().iter().map(|&(a, b)| vec![a, b]).collect();
        assert_eq!(represent(&calc, &fold_kites(&chain).unwrap()).unwrap(), want);
    }

    fn preorder() -> Theory {
        Theory::new("Preorder")
            .with_sort("X")
            .with_rel("P", &["X", "X"])
            .with_axiom("refl", ctx(&["X"]), Formula::True, Formula::atom("P", &[0, 0]))
            .with_axiom(
                "trans",
                ctx(&["X", "X"]),
                Formula::exists("X", Formula::and(Formula::atom("P", &[0, 2]), Formula::atom("P", &[2, 1]))),
                Formula::atom("P", &[0, 1]),
            )
    }

    #[test]
    fn model_examples() {
        let th = preorder();
        let le = Model::with_sizes(&[("X", 2)]).with_rel("P", &[&[0, 0], &[0, 1], &[1, 1]]);
        assert!(le.check_axioms(&th).unwrap());
        let lt = Model::with_sizes(&[("X", 2)]).with_rel("P", &[&[0, 1]]);
        assert!(!lt.check_axioms(&th).unwrap());
        assert!(lt.check_axioms(&Theory::new("empty")).unwrap());
        let xx = ctx(&["X", "X"]);
        let ante = crate::terms::formula_to_term(&th, &xx, &th.axioms[1].lhs).unwrap();
        assert_eq!(model_eval(&le, &ante).unwrap(), [vec![0, 0], vec![0, 1], vec![1, 1]].into());
        let empty = Model::with_sizes(&[("X", 0)]);
        let dot = GraphicalTerm::new(vec![], TypedWiring::new(vec![], vec![], vec![], [Sort::from("X")].into()).unwrap()).unwrap();
        assert!(model_eval(&empty, &dot).unwrap().is_empty());
        let top = GraphicalTerm::new(vec![], TypedWiring::empty()).unwrap();
        assert_eq!(model_eval(&empty, &top).unwrap(), [vec![]].into());
    }

    #[test]
    fn model_json_round_trip() {
        let th = preorder();
        let text = r#"{"carriers":{"X":["a","b"]},"rels":{"P":[["a","a"],["a","b"],["b","b"]]}}"#;
        let m = Model::from_json(text, &th).unwrap();
        assert!(m.check_axioms(&th).unwrap());
        assert_eq!(m.to_json(&th).unwrap().to_string(), text);
    }
}
