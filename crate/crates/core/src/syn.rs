//! The syntactic po-category of a regular calculus: objects are contexts
//! with a predicate, morphisms are predicates on the joint context bounded
//! by the exterior conjunction of the endpoints.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::relsem::{PrdCalculus, Subset};
use crate::terms::{represent, GraphicalTerm, Leq, RegularCalculus};
use crate::typed::{show_ctx, supply_gen, Context, Port, Sort, TypedWiring};
use crate::wiring::Generator;

#[derive(Clone, Debug, PartialEq)]
pub struct SynObject<P> {
    pub context: Context,
    pub pred: P,
}

impl<P> SynObject<P> {
    pub fn new(context: Context, pred: P) -> Self {
        SynObject { context, pred }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SynMorphism<P> {
    pub src: SynObject<P>,
    pub dst: SynObject<P>,
    /// A predicate on `src.context ⧺ dst.context`.
    pub theta: P,
    /// Verdict of `theta ≤ src.pred ⊞ dst.pred`.
    pub certificate: Leq,
    /// Set when the certificate is `Unknown` and the morphism was admitted anyway.
    pub unchecked: bool,
}

fn joint(a: &[Sort], b: &[Sort]) -> Context {
    a.iter().chain(b).cloned().collect()
}

impl<P: Clone + std::fmt::Debug + PartialEq> SynMorphism<P> {
    /// Certifies the hom condition; refuses `No` and `Unknown`.
    pub fn new<C: RegularCalculus<Pred = P>>(calc: &C, src: SynObject<P>, dst: SynObject<P>, theta: P) -> Result<Self> {
        let m = Self::unchecked(calc, src, dst, theta)?;
        if m.unchecked {
            return Err(Error::Certification("hom condition could not be decided".into()));
        }
        Ok(m)
    }

    /// Like [`SynMorphism::new`] but admits an `Unknown` certificate, flagging it.
    pub fn unchecked<C: RegularCalculus<Pred = P>>(calc: &C, src: SynObject<P>, dst: SynObject<P>, theta: P) -> Result<Self> {
        let c = joint(&src.context, &dst.context);
        calc.check(&src.context, &src.pred)?;
        calc.check(&dst.context, &dst.pred)?;
        calc.check(&c, &theta)?;
        let bound = calc.boxplus(&src.context, &src.pred, &dst.context, &dst.pred);
        let certificate = calc.leq3(&c, &theta, &bound);
        if certificate == Leq::No {
            return Err(Error::Certification(format!("{theta:?} is not below the endpoints")));
        }
        Ok(SynMorphism { src, dst, theta, certificate, unchecked: certificate == Leq::Unknown })
    }

    pub fn context(&self) -> Context {
        joint(&self.src.context, &self.dst.context)
    }
}

fn same_object<C: RegularCalculus>(calc: &C, a: &SynObject<C::Pred>, b: &SynObject<C::Pred>) -> bool {
    a.context == b.context && (a.pred == b.pred || calc.equal3(&a.context, &a.pred, &b.pred) == Leq::Yes)
}

fn admit<C: RegularCalculus>(calc: &C, src: SynObject<C::Pred>, dst: SynObject<C::Pred>, theta: C::Pred, lenient: bool) -> Result<SynMorphism<C::Pred>> {
    if lenient {
        SynMorphism::unchecked(calc, src, dst, theta)
    } else {
        SynMorphism::new(calc, src, dst, theta)
    }
}

/// The identity on `(Γ, p)`: `P(δ_Γ)(p)`.
pub fn syn_identity<C: RegularCalculus>(calc: &C, o: &SynObject<C::Pred>) -> Result<SynMorphism<C::Pred>> {
    let theta = calc.apply(&supply_gen(Generator::Delta, &o.context), &o.pred)?;
    SynMorphism::unchecked(calc, o.clone(), o.clone(), theta)
}

/// The wiring joining `Γ₁ ⧺ Γ₂` and `Γ₂ ⧺ Γ₃` along `Γ₂`, with outer
/// boundary `Γ₁ ⧺ Γ₃`.
pub fn composite_wiring(g1: &[Sort], g2: &[Sort], g3: &[Sort]) -> TypedWiring {
    let (n1, n2, n3) = (g1.len(), g2.len(), g3.len());
    let mut blocks = Vec::new();
    blocks.extend((0..n1).map(|i| vec![Port::shell(0, i), Port::out(i)]));
    blocks.extend((0..n2).map(|j| vec![Port::shell(0, n1 + j), Port::shell(1, j)]));
    blocks.extend((0..n3).map(|k| vec![Port::shell(1, n2 + k), Port::out(n1 + k)]));
    TypedWiring::new(vec![joint(g1, g2), joint(g2, g3)], joint(g1, g3), blocks, BTreeSet::new())
        .expect("composite wiring is well formed")
}

/// `f ⨾ g`, re-certified.
pub fn syn_compose<C: RegularCalculus>(calc: &C, f: &SynMorphism<C::Pred>, g: &SynMorphism<C::Pred>) -> Result<SynMorphism<C::Pred>> {
    if !same_object(calc, &f.dst, &g.src) {
        return Err(Error::BoundaryMismatch(format!(
            "codomain {} does not match domain {}",
            show_ctx(&f.dst.context),
            show_ctx(&g.src.context)
        )));
    }
    let w = composite_wiring(&f.src.context, &f.dst.context, &g.dst.context);
    let theta = represent(calc, &GraphicalTerm::new(vec![f.theta.clone(), g.theta.clone()], w)?)?;
    admit(calc, f.src.clone(), g.dst.clone(), theta, f.unchecked || g.unchecked)
}

/// Supply generators of `Syn` on the object `(Γ, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SupplyKind {
    /// `(Γ,p) → (I,true)`.
    Epsilon,
    /// `(I,true) → (Γ,p)`.
    Eta,
    /// `(Γ,p) → (Γ,p) ⊗ (Γ,p)`.
    Delta,
    /// `(Γ,p) ⊗ (Γ,p) → (Γ,p)`.
    Mu,
}

impl SupplyKind {
    pub fn parse(s: &str) -> Option<SupplyKind> {
        Some(match s {
            "epsilon" => SupplyKind::Epsilon,
            "eta" => SupplyKind::Eta,
            "delta" => SupplyKind::Delta,
            "mu" => SupplyKind::Mu,
            _ => return None,
        })
    }
}

/// `(Γ₁,p₁) ⊗ (Γ₂,p₂) = (Γ₁ ⧺ Γ₂, p₁ ⊞ p₂)`.
pub fn syn_tensor_obj<C: RegularCalculus>(calc: &C, a: &SynObject<C::Pred>, b: &SynObject<C::Pred>) -> SynObject<C::Pred> {
    SynObject::new(joint(&a.context, &b.context), calc.boxplus(&a.context, &a.pred, &b.context, &b.pred))
}

pub fn syn_supply<C: RegularCalculus>(calc: &C, o: &SynObject<C::Pred>, kind: SupplyKind) -> Result<SynMorphism<C::Pred>> {
    let unit = SynObject::new(vec![], calc.truth_unit());
    let pair = syn_tensor_obj(calc, o, o);
    let three = || calc.apply(&supply_gen(Generator::DeltaN(3), &o.context), &o.pred);
    match kind {
        SupplyKind::Epsilon => SynMorphism::unchecked(calc, o.clone(), unit, o.pred.clone()),
        SupplyKind::Eta => SynMorphism::unchecked(calc, unit, o.clone(), o.pred.clone()),
        SupplyKind::Delta => SynMorphism::unchecked(calc, o.clone(), pair, three()?),
        SupplyKind::Mu => SynMorphism::unchecked(calc, pair, o.clone(), three()?),
    }
}

/// `f ⊗ g`: the exterior conjunction of the two predicates with the middle
/// contexts swapped into place.
pub fn syn_tensor<C: RegularCalculus>(calc: &C, f: &SynMorphism<C::Pred>, g: &SynMorphism<C::Pred>) -> Result<SynMorphism<C::Pred>> {
    let (a, b, c, d) = (&f.src.context, &f.dst.context, &g.src.context, &g.dst.context);
    let all: Context = [a, b, c, d].iter().flat_map(|x| x.iter().cloned()).collect();
    let (na, nb, nc, nd) = (a.len(), b.len(), c.len(), d.len());
    let perm: Vec<usize> = (0..na)
        .chain(na + nb..na + nb + nc)
        .chain(na..na + nb)
        .chain(na + nb + nc..na + nb + nc + nd)
        .collect();
    let w = TypedWiring::symmetry(&all, &perm)?;
    let theta = calc.apply(&w, &calc.boxplus(&joint(a, b), &f.theta, &joint(c, d), &g.theta))?;
    admit(
        calc,
        syn_tensor_obj(calc, &f.src, &g.src),
        syn_tensor_obj(calc, &f.dst, &g.dst),
        theta,
        f.unchecked || g.unchecked,
    )
}

/// `f ≤ g` for parallel morphisms.
pub fn syn_leq<C: RegularCalculus>(calc: &C, f: &SynMorphism<C::Pred>, g: &SynMorphism<C::Pred>) -> Leq {
    if f.context() != g.context() {
        return Leq::No;
    }
    calc.leq3(&f.context(), &f.theta, &g.theta)
}

pub fn syn_equal<C: RegularCalculus>(calc: &C, f: &SynMorphism<C::Pred>, g: &SynMorphism<C::Pred>) -> Leq {
    syn_leq(calc, f, g).and(syn_leq(calc, g, f))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LimitKind {
    Equalizer,
    Image,
}

/// Equalizer `e(x) = ∃y. h(x,y) ∧ k(x,y)` or image `im(y) = ∃x. h(x,y)`,
/// for parallel maps `h, k`. Left-adjointness is the caller's assertion.
pub fn graphical_limits<C: RegularCalculus>(
    calc: &C,
    h: &SynMorphism<C::Pred>,
    k: &SynMorphism<C::Pred>,
    kind: LimitKind,
) -> Result<SynObject<C::Pred>> {
    if h.src.context != k.src.context || h.dst.context != k.dst.context {
        return Err(Error::NotParallel(format!(
            "{} → {} against {} → {}",
            show_ctx(&h.src.context),
            show_ctx(&h.dst.context),
            show_ctx(&k.src.context),
            show_ctx(&k.dst.context)
        )));
    }
    let (g1, g2) = (&h.src.context, &h.dst.context);
    let (n1, n2) = (g1.len(), g2.len());
    let both = joint(g1, g2);
    match kind {
        LimitKind::Equalizer => {
            let mut blocks: Vec<Vec<Port>> = (0..n1).map(|i| vec![Port::shell(0, i), Port::shell(1, i), Port::out(i)]).collect();
            blocks.extend((0..n2).map(|j| vec![Port::shell(0, n1 + j), Port::shell(1, n1 + j)]));
            let w = TypedWiring::new(vec![both.clone(), both], g1.clone(), blocks, BTreeSet::new())?;
            let e = represent(calc, &GraphicalTerm::new(vec![h.theta.clone(), k.theta.clone()], w)?)?;
            Ok(SynObject::new(g1.clone(), e))
        }
        LimitKind::Image => {
            let mut blocks: Vec<Vec<Port>> = (0..n1).map(|i| vec![Port::shell(0, i)]).collect();
            blocks.extend((0..n2).map(|j| vec![Port::shell(0, n1 + j), Port::out(j)]));
            let w = TypedWiring::new(vec![both], g2.clone(), blocks, BTreeSet::new())?;
            Ok(SynObject::new(g2.clone(), calc.apply(&w, &h.theta)?))
        }
    }
}

/// In `Prd(Rel)` a morphism is a left adjoint iff its predicate is the
/// graph of a function on the domain predicate.
pub fn prd_is_map(m: &SynMorphism<Subset>) -> bool {
    let n = m.src.context.len();
    m.src.pred.iter().all(|x| m.theta.iter().filter(|t| t[..n] == x[..]).count() == 1)
        && m.theta.iter().all(|t| m.src.pred.contains(&t[..n].to_vec()))
}

/// [`graphical_limits`] in `Prd(Rel)`, checking that both morphisms are maps.
pub fn graphical_limits_prd(calc: &PrdCalculus, h: &SynMorphism<Subset>, k: &SynMorphism<Subset>, kind: LimitKind) -> Result<SynObject<Subset>> {
    if !prd_is_map(h) || !prd_is_map(k) {
        return Err(Error::Precondition { rule: "graphical_limits", reason: "morphisms must be left adjoints".into() });
    }
    graphical_limits(calc, h, k, kind)
}

/// A finite bounded meet-semilattice, as a regular calculus over the
/// terminal category of contexts: only the empty context exists, every
/// wiring acts as the identity, `⊞` is meet and `λ(γ) = (γ, γ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeetSemilattice {
    leq: Vec<Vec<bool>>,
    meet: Vec<Vec<usize>>,
    top: usize,
}

impl MeetSemilattice {
    /// Validates that `leq` is a partial order with a top and all binary meets.
    pub fn new(leq: Vec<Vec<bool>>) -> Option<MeetSemilattice> {
        let n = leq.len();
        let ok = (0..n).all(|a| leq[a][a])
            && (0..n).all(|a| (0..n).all(|b| a == b || !(leq[a][b] && leq[b][a])))
            && (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| !(leq[a][b] && leq[b][c]) || leq[a][c])));
        if !ok {
            return None;
        }
        let top = (0..n).find(|&t| (0..n).all(|a| leq[a][t]))?;
        let mut meet = vec![vec![0; n]; n];
        for a in 0..n {
            for b in 0..n {
                let lower: Vec<usize> = (0..n).filter(|&c| leq[c][a] && leq[c][b]).collect();
                meet[a][b] = *lower.iter().find(|&&m| lower.iter().all(|&c| leq[c][m]))?;
            }
        }
        Some(MeetSemilattice { leq, meet, top })
    }

    pub fn len(&self) -> usize {
        self.leq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.leq.is_empty()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    pub fn meet_of(&self, a: usize, b: usize) -> usize {
        self.meet[a][b]
    }

    pub fn top(&self) -> usize {
        self.top
    }

    /// Every bounded meet-semilattice structure on `{0..n}` (not up to isomorphism).
    pub fn enumerate(n: usize) -> Vec<MeetSemilattice> {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b))).collect();
        let mut out = Vec::new();
        for mask in 0u64..1 << pairs.len() {
            let mut leq = vec![vec![false; n]; n];
            for (a, row) in leq.iter_mut().enumerate() {
                row[a] = true;
            }
            for (i, &(a, b)) in pairs.iter().enumerate() {
                leq[a][b] = mask >> i & 1 == 1;
            }
            if let Some(l) = MeetSemilattice::new(leq) {
                out.push(l);
            }
        }
        out
    }
}

impl RegularCalculus for MeetSemilattice {
    type Pred = usize;

    fn check(&self, c: &[Sort], p: &usize) -> Result<()> {
        if !c.is_empty() {
            return Err(Error::UnknownSort(c[0].0.clone()));
        }
        if *p >= self.len() {
            return Err(Error::BoundaryMismatch(format!("element {p} outside a lattice of {}", self.len())));
        }
        Ok(())
    }

    fn truth_unit(&self) -> usize {
        self.top
    }

    fn apply(&self, w: &TypedWiring, p: &usize) -> Result<usize> {
        if w.shells().len() != 1 {
            return Err(Error::NotSingleShell(w.shells().len()));
        }
        if let Some(s) = w.sorts().into_iter().next() {
            return Err(Error::UnknownSort(s.0));
        }
        Ok(*p)
    }

    fn boxplus(&self, _g1: &[Sort], p1: &usize, _g2: &[Sort], p2: &usize) -> usize {
        self.meet[*p1][*p2]
    }

    fn lambda_split(&self, _g1: &[Sort], _g2: &[Sort], p: &usize) -> (usize, usize) {
        (*p, *p)
    }

    fn leq3(&self, _c: &[Sort], a: &usize, b: &usize) -> Leq {
        self.leq[*a][*b].into()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulas::{Formula, Theory};
    use crate::terms::TheoryCalculus;
    use crate::typed::ctx;

    #[test]
    fn prd_identity_is_diagonal() {
        let calc = PrdCalculus::uniform(&["X"], 3);
        let o = SynObject::new(ctx(&["X"]), [vec![0], vec![2]].into());
        let id = syn_identity(&calc, &o).unwrap();
        assert_eq!(id.theta, [vec![0, 0], vec![2, 2]].into());
        assert_eq!(id.certificate, Leq::Yes);
        let unit = SynObject::new(vec![], calc.truth_unit());
        assert_eq!(syn_identity(&calc, &unit).unwrap().theta, calc.truth_unit());
    }

    #[test]
    fn theory_identity() {
        let th = Theory::new("t").with_sort("X").with_rel("P", &["X"]);
        let calc = TheoryCalculus::new(th);
        let o = SynObject::new(ctx(&["X"]), Formula::atom("P", &[0]));
        let id = syn_identity(&calc, &o).unwrap();
        let want = Formula::and(Formula::atom("P", &[0]), Formula::eq(0, 1));
        assert_eq!(calc.equal3(&ctx(&["X", "X"]), &id.theta, &want), Leq::Yes);
    }

    #[test]
    fn prd_composition_and_supply() {
        let calc = PrdCalculus::uniform(&["X"], 2);
        let x = ctx(&["X"]);
        let o = SynObject::new(x.clone(), [vec![0], vec![1]].into());
        let f = SynMorphism::new(&calc, o.clone(), o.clone(), [vec![0, 1], vec![1, 1]].into()).unwrap();
        let id = syn_identity(&calc, &o).unwrap();
        assert_eq!(syn_compose(&calc, &f, &id).unwrap().theta, f.theta);
        assert_eq!(syn_compose(&calc, &id, &f).unwrap().theta, f.theta);
        let d = syn_supply(&calc, &o, SupplyKind::Delta).unwrap();
        let m = syn_supply(&calc, &o, SupplyKind::Mu).unwrap();
        assert_eq!(syn_compose(&calc, &d, &m).unwrap().theta, id.theta);
        let e = syn_supply(&calc, &o, SupplyKind::Epsilon).unwrap();
        let n = syn_supply(&calc, &o, SupplyKind::Eta).unwrap();
        assert_eq!(syn_leq(&calc, &id, &syn_compose(&calc, &e, &n).unwrap()), Leq::Yes);
        let bad = SynMorphism::new(&calc, SynObject::new(x.clone(), [vec![0]].into()), o, [vec![1, 1]].into());
        assert!(matches!(bad, Err(Error::Certification(_))));
    }

    #[test]
    fn limits_in_prd() {
        let calc = PrdCalculus::uniform(&["X"], 3);
        let x = ctx(&["X"]);
        let all: Subset = [vec![0], vec![1], vec![2]].into();
        let o = SynObject::new(x.clone(), all.clone());
        let h = SynMorphism::new(&calc, o.clone(), o.clone(), [vec![0, 0], vec![1, 2], vec![2, 2]].into()).unwrap();
        let k = SynMorphism::new(&calc, o.clone(), o.clone(), [vec![0, 1], vec![1, 2], vec![2, 2]].into()).unwrap();
        let eq = graphical_limits_prd(&calc, &h, &k, LimitKind::Equalizer).unwrap();
        assert_eq!(eq.pred, [vec![1], vec![2]].into());
        let im = graphical_limits_prd(&calc, &h, &h, LimitKind::Image).unwrap();
        assert_eq!(im.pred, [vec![0], vec![2]].into());
        assert_eq!(graphical_limits_prd(&calc, &h, &h, LimitKind::Equalizer).unwrap().pred, all);
    }

    #[test]
    fn meet_semilattices() {
        assert_eq!(MeetSemilattice::enumerate(1).len(), 1);
        assert_eq!(MeetSemilattice::enumerate(2).len(), 2);
        // chains only on three elements: 3! labellings
        assert_eq!(MeetSemilattice::enumerate(3).len(), 6);
        let l = &MeetSemilattice::enumerate(3)[0];
        let objs: Vec<SynObject<usize>> = (0..3).map(|a| SynObject::new(vec![], a)).collect();
        for a in &objs {
            for b in &objs {
                let f = SynMorphism::new(l, a.clone(), b.clone(), l.meet_of(a.pred, b.pred)).unwrap();
                let id = syn_identity(l, b).unwrap();
                assert_eq!(syn_compose(l, &f, &id).unwrap().theta, f.theta);
            }
        }
    }
}
