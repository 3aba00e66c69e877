//! Graphical terms over an abstract regular calculus: representation, the
//! rewrite rules, and translation to and from regular formulas.

use std::collections::BTreeMap;
use std::fmt::Debug;

use crate::entail;
use crate::error::{Error, Result};
use crate::formulas::{self, Formula, Theory, CQNF};
use crate::typed::{self, show_ctx, supply_gen, Context, Port, Sort, TypedWiring};
use crate::wiring::Generator;

/// Three-valued answer of an order query.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Leq {
    Yes,
    No,
    Unknown,
}

impl Leq {
    pub fn and(self, other: Leq) -> Leq {
        match (self, other) {
            (Leq::No, _) | (_, Leq::No) => Leq::No,
            (Leq::Yes, Leq::Yes) => Leq::Yes,
            _ => Leq::Unknown,
        }
    }
}

impl From<bool> for Leq {
    fn from(b: bool) -> Leq {
        if b {
            Leq::Yes
        } else {
            Leq::No
        }
    }
}

/// A regular calculus: a poset of predicates per context, acted on by
/// one-shell wirings, with exterior conjunction `⊞` and its left adjoint.
pub trait RegularCalculus {
    type Pred: Clone + Debug + PartialEq;

    /// Membership of `p` in the predicates on `c`.
    fn check(&self, c: &[Sort], p: &Self::Pred) -> Result<()>;

    /// The top predicate on the empty context.
    fn truth_unit(&self) -> Self::Pred;

    /// `P(w)`, for a wiring with exactly one shell.
    fn apply(&self, w: &TypedWiring, p: &Self::Pred) -> Result<Self::Pred>;

    fn boxplus(&self, g1: &[Sort], p1: &Self::Pred, g2: &[Sort], p2: &Self::Pred) -> Self::Pred;

    fn lambda_split(&self, g1: &[Sort], g2: &[Sort], p: &Self::Pred) -> (Self::Pred, Self::Pred);

    fn leq3(&self, c: &[Sort], a: &Self::Pred, b: &Self::Pred) -> Leq;

    /// `true_Γ = P(η_Γ)(true)`.
    fn truth(&self, c: &[Sort]) -> Self::Pred {
        self.apply(&supply_gen(Generator::Eta, c), &self.truth_unit())
            .expect("η applies to the unit")
    }

    /// `a ∧ b = P(μ_Γ)(a ⊞ b)`.
    fn meet(&self, c: &[Sort], a: &Self::Pred, b: &Self::Pred) -> Result<Self::Pred> {
        self.apply(&supply_gen(Generator::Mu, c), &self.boxplus(c, a, c, b))
    }

    fn equal3(&self, c: &[Sort], a: &Self::Pred, b: &Self::Pred) -> Leq {
        self.leq3(c, a, b).and(self.leq3(c, b, a))
    }
}

/// Shells labelled by predicates, connected by a wiring diagram.
#[derive(Clone, Debug, PartialEq)]
pub struct GraphicalTerm<P> {
    pub preds: Vec<P>,
    pub wiring: TypedWiring,
}

impl<P: Clone> GraphicalTerm<P> {
    pub fn new(preds: Vec<P>, wiring: TypedWiring) -> Result<Self> {
        if preds.len() != wiring.shells().len() {
            return Err(Error::ArityMismatch {
                expected: format!("{} shell predicates", wiring.shells().len()),
                found: preds.len().to_string(),
            });
        }
        Ok(GraphicalTerm { preds, wiring })
    }

    /// `(θ; Γ)`: one shell with the identity wiring.
    pub fn single(c: &[Sort], pred: P) -> Self {
        GraphicalTerm { preds: vec![pred], wiring: TypedWiring::identity(c) }
    }

    pub fn out(&self) -> &Context {
        self.wiring.out()
    }

    pub fn shell_context(&self, i: usize) -> &Context {
        &self.wiring.shells()[i]
    }

    pub fn check<C: RegularCalculus<Pred = P>>(&self, calc: &C) -> Result<()> {
        for (c, p) in self.wiring.shells().iter().zip(&self.preds) {
            calc.check(c, p)?;
        }
        Ok(())
    }
}

/// `⟦t⟧ = P(ω)(θ₁ ⊞ ⋯ ⊞ θ_s)`.
pub fn represent<C: RegularCalculus>(calc: &C, t: &GraphicalTerm<C::Pred>) -> Result<C::Pred> {
    t.check(calc)?;
    let mut ctx: Context = Vec::new();
    let mut acc = calc.truth_unit();
    for (i, (c, p)) in t.wiring.shells().iter().zip(&t.preds).enumerate() {
        if i == 0 {
            acc = p.clone();
        } else {
            acc = calc.boxplus(&ctx, &acc, c, p);
        }
        ctx.extend(c.iter().cloned());
    }
    calc.apply(&t.wiring.merge_shells(), &acc)
}

/// The rewrite rules on graphical terms.
#[derive(Clone, Debug)]
pub enum Rule<P> {
    /// Replace shell `shell`'s predicate by a larger one.
    Monotone { shell: usize, pred: P },
    /// Replace the wiring by a larger one (fewer connections or dots).
    Break(TypedWiring),
    /// Flatten `inner` into shell `shell`, whose predicate it represents.
    Nest { shell: usize, inner: GraphicalTerm<P> },
    /// Merge two shells with equal contexts wired port-by-port together.
    MeetMerge { i: usize, j: usize },
    /// Drop a shell holding the top predicate.
    RemoveTrue(usize),
    /// Replace everything by the empty term on the outer boundary.
    Discard,
}

/// How the represented predicates of a rewrite's input and output relate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Equal,
    Entails,
}

fn precondition(rule: &'static str, reason: impl Into<String>) -> Error {
    Error::Precondition { rule, reason: reason.into() }
}

fn shell_index<P>(t: &GraphicalTerm<P>, i: usize) -> Result<()> {
    if i >= t.preds.len() {
        return Err(Error::ShellIndex { index: i, count: t.preds.len() });
    }
    Ok(())
}

pub fn rewrite<C: RegularCalculus>(
    calc: &C,
    rule: &Rule<C::Pred>,
    t: &GraphicalTerm<C::Pred>,
) -> Result<(GraphicalTerm<C::Pred>, Relation)> {
    t.check(calc)?;
    match rule {
        Rule::Monotone { shell, pred } => {
            shell_index(t, *shell)?;
            let c = t.shell_context(*shell);
            calc.check(c, pred)?;
            match calc.leq3(c, &t.preds[*shell], pred) {
                Leq::Yes => {}
                v => return Err(precondition("monotone", format!("new predicate not shown larger ({v:?})"))),
            }
            let mut preds = t.preds.clone();
            preds[*shell] = pred.clone();
            Ok((GraphicalTerm { preds, wiring: t.wiring.clone() }, Relation::Entails))
        }
        Rule::Break(w) => {
            let ok = typed::leq_t(&t.wiring, w).map_err(|e| precondition("break", e.to_string()))?;
            if !ok {
                return Err(precondition("break", "new wiring is not larger"));
            }
            Ok((GraphicalTerm { preds: t.preds.clone(), wiring: w.clone() }, Relation::Entails))
        }
        Rule::Nest { shell, inner } => {
            shell_index(t, *shell)?;
            let c = t.shell_context(*shell);
            if inner.out() != c {
                return Err(Error::ContextMismatch { expected: show_ctx(c), found: show_ctx(inner.out()) });
            }
            let rep = represent(calc, inner)?;
            match calc.equal3(c, &rep, &t.preds[*shell]) {
                Leq::Yes => {}
                v => return Err(precondition("nest", format!("inner term does not represent the shell predicate ({v:?})"))),
            }
            let wiring = typed::compose_at(&t.wiring, *shell, &inner.wiring)?;
            let mut preds = t.preds[..*shell].to_vec();
            preds.extend(inner.preds.iter().cloned());
            preds.extend(t.preds[shell + 1..].iter().cloned());
            Ok((GraphicalTerm { preds, wiring }, Relation::Equal))
        }
        Rule::MeetMerge { i, j } => {
            let (i, j) = (*i.min(j), *i.max(j));
            shell_index(t, j)?;
            if i == j {
                return Err(precondition("meet_merge", "needs two distinct shells"));
            }
            let c = t.shell_context(i).clone();
            if *t.shell_context(j) != c {
                return Err(precondition("meet_merge", "shell contexts differ"));
            }
            let index = t.wiring.block_index();
            if (0..c.len()).any(|k| index[&Port::shell(i, k)] != index[&Port::shell(j, k)]) {
                return Err(precondition("meet_merge", "shells are not wired together port by port"));
            }
            let met = calc.meet(&c, &t.preds[i], &t.preds[j])?;
            let blocks: Vec<Vec<Port>> = t
                .wiring
                .blocks()
                .iter()
                .map(|b| {
                    b.iter()
                        .filter(|p| !matches!(p, Port::Shell { s, .. } if *s == j))
                        .map(|&p| match p {
                            Port::Shell { s, p } if s > j => Port::shell(s - 1, p),
                            other => other,
                        })
                        .collect()
                })
                .collect();
            let mut shells = t.wiring.shells().to_vec();
            shells.remove(j);
            let wiring = TypedWiring::new(shells, t.out().clone(), blocks, t.wiring.floating().clone())?;
            let mut preds = t.preds.clone();
            preds[i] = met;
            preds.remove(j);
            Ok((GraphicalTerm { preds, wiring }, Relation::Equal))
        }
        Rule::RemoveTrue(i) => {
            shell_index(t, *i)?;
            let c = t.shell_context(*i);
            match calc.leq3(c, &calc.truth(c), &t.preds[*i]) {
                Leq::Yes => {}
                v => return Err(precondition("remove_true", format!("shell predicate is not true ({v:?})"))),
            }
            let wiring = typed::compose_at(&t.wiring, *i, &TypedWiring::discard_term(c))?;
            let mut preds = t.preds.clone();
            preds.remove(*i);
            Ok((GraphicalTerm { preds, wiring }, Relation::Equal))
        }
        Rule::Discard => Ok((
            GraphicalTerm { preds: vec![], wiring: TypedWiring::discard_term(t.out()) },
            Relation::Entails,
        )),
    }
}

/// The regular calculus of a theory: predicates are formulas up to
/// provable equivalence; the order is decided by the entailment engine.
#[derive(Clone, Debug)]
pub struct TheoryCalculus {
    pub theory: Theory,
    pub chase_depth: usize,
    pub model_size: usize,
}

impl TheoryCalculus {
    pub fn new(theory: Theory) -> Self {
        TheoryCalculus { theory, chase_depth: 4, model_size: 2 }
    }
}

impl RegularCalculus for TheoryCalculus {
    type Pred = Formula;

    fn check(&self, c: &[Sort], p: &Formula) -> Result<()> {
        self.theory.check_formula(c, p)
    }

    fn truth_unit(&self) -> Formula {
        Formula::True
    }

    fn truth(&self, _c: &[Sort]) -> Formula {
        Formula::True
    }

    fn apply(&self, w: &TypedWiring, p: &Formula) -> Result<Formula> {
        formulas::act_wiring(&self.theory, w, p)
    }

    fn boxplus(&self, g1: &[Sort], p1: &Formula, g2: &[Sort], p2: &Formula) -> Formula {
        formulas::boxplus(g1, p1, g2, p2)
    }

    fn lambda_split(&self, g1: &[Sort], g2: &[Sort], p: &Formula) -> (Formula, Formula) {
        formulas::lambda_split(g1, g2, p)
    }

    fn meet(&self, c: &[Sort], a: &Formula, b: &Formula) -> Result<Formula> {
        self.check(c, a)?;
        self.check(c, b)?;
        Ok(Formula::and(a.clone(), b.clone()))
    }

    fn leq3(&self, c: &[Sort], a: &Formula, b: &Formula) -> Leq {
        if self.theory.axioms.is_empty() {
            return entail::formula_entails_free(c, a, b).into();
        }
        match entail::formula_entails_with_axioms(&self.theory, c, a, b, self.chase_depth, self.model_size) {
            entail::Verdict::Proved => Leq::Yes,
            entail::Verdict::Refuted(_) => Leq::No,
            entail::Verdict::Unknown => Leq::Unknown,
        }
    }
}

/// The formula a term over theory formulas represents, in normal form.
pub fn term_to_formula(theory: &Theory, t: &GraphicalTerm<Formula>) -> Result<Formula> {
    Ok(term_to_cqnf(theory, t)?.to_formula())
}

pub fn term_to_cqnf(theory: &Theory, t: &GraphicalTerm<Formula>) -> Result<CQNF> {
    for (c, p) in t.wiring.shells().iter().zip(&t.preds) {
        theory.check_formula(c, p)?;
    }
    let shells: Vec<(&Context, &Formula)> = t.wiring.shells().iter().zip(&t.preds).collect();
    Ok(formulas::wire_formulas(&shells, &t.wiring))
}

/// One atomic shell per atom of the normal form, wired by its merge
/// partition.
pub fn formula_to_term(theory: &Theory, c: &[Sort], phi: &Formula) -> Result<GraphicalTerm<Formula>> {
    let nf = formulas::normalize(theory, c, phi)?;
    Ok(cqnf_to_term(&nf))
}

pub fn cqnf_to_term(nf: &CQNF) -> GraphicalTerm<Formula> {
    let n = nf.context.len();
    // node reference → ports; context blocks are keyed by their least position
    let mut ports: BTreeMap<usize, Vec<Port>> = BTreeMap::new();
    for b in &nf.merge {
        let key = b[0];
        for &x in b {
            if x < n {
                ports.entry(key).or_default().push(Port::out(x));
            }
        }
    }
    let mut shells = Vec::new();
    let mut preds = Vec::new();
    for (s, (r, args)) in nf.atoms.iter().enumerate() {
        let arity: Context = args
            .iter()
            .map(|&x| if x < n { nf.context[x].clone() } else { nf.exist_vars[x - n].clone() })
            .collect();
        for (p, &x) in args.iter().enumerate() {
            ports.entry(x).or_default().push(Port::shell(s, p));
        }
        preds.push(Formula::Atom(r.clone(), (0..args.len()).collect()));
        shells.push(arity);
    }
    let wiring = TypedWiring::new(shells, nf.context.clone(), ports.into_values().collect(), nf.floating.clone())
        .expect("normal form yields a valid wiring");
    GraphicalTerm { preds, wiring }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::typed::ctx;
    use std::collections::BTreeSet;

    fn preorder() -> Theory {
        Theory::new("Preorder").with_sort("X").with_rel("P", &["X", "X"])
    }

    fn p(a: usize, b: usize) -> Formula {
        Formula::atom("P", &[a, b])
    }

    #[test]
    fn represent_single_shell_is_identity() {
        let calc = TheoryCalculus::new(preorder());
        let xx = ctx(&["X", "X"]);
        let t = GraphicalTerm::single(&xx, p(0, 1));
        assert_eq!(CQNF::of(&xx, &represent(&calc, &t).unwrap()), CQNF::of(&xx, &p(0, 1)));
    }

    #[test]
    fn represent_without_shells() {
        let calc = TheoryCalculus::new(preorder());
        let t: GraphicalTerm<Formula> = GraphicalTerm::new(vec![], TypedWiring::discard_term(&ctx(&["X"]))).unwrap();
        assert_eq!(represent(&calc, &t).unwrap(), Formula::True);
    }

    #[test]
    fn worked_three_shell_example() {
        let th = Theory::new("t")
            .with_sort("X")
            .with_rel("T1", &["X", "X", "X"])
            .with_rel("T2", &["X", "X", "X"])
            .with_rel("T3", &["X", "X", "X", "X"]);
        let s = |i, p| Port::shell(i, p);
        let o = Port::out;
        let w = TypedWiring::new(
            vec![ctx(&["X"; 3]), ctx(&["X"; 3]), ctx(&["X"; 4])],
            ctx(&["X"; 6]),
            vec![
                vec![s(0, 0), s(1, 1)],
                vec![s(0, 1), s(2, 1)],
                vec![s(0, 2), s(2, 0), o(0)],
                vec![o(1), o(2)],
                vec![s(1, 2), o(3)],
                vec![s(1, 0), s(2, 2), s(2, 3), o(4)],
                vec![o(5)],
            ],
            BTreeSet::new(),
        )
        .unwrap();
        let t = GraphicalTerm::new(
            vec![Formula::atom("T1", &[0, 1, 2]), Formula::atom("T2", &[0, 1, 2]), Formula::atom("T3", &[0, 1, 2, 3])],
            w,
        )
        .unwrap();
        // ψ(y,z,z',x,x',z'') = ∃x̃,ỹ. T1(x̃,ỹ,y) ∧ T2(x',x̃,x) ∧ T3(y,ỹ,x',x') ∧ z = z'
        let psi = Formula::exists(
            "X",
            Formula::exists(
                "X",
                Formula::conj([
                    Formula::atom("T1", &[6, 7, 0]),
                    Formula::atom("T2", &[4, 6, 3]),
                    Formula::atom("T3", &[0, 7, 4, 4]),
                    Formula::eq(1, 2),
                ]),
            ),
        );
        let out = ctx(&["X"; 6]);
        assert_eq!(term_to_cqnf(&th, &t).unwrap(), formulas::normalize(&th, &out, &psi).unwrap());
    }

    #[test]
    fn formula_term_round_trip() {
        let th = preorder();
        let xx = ctx(&["X", "X"]);
        let trans = Formula::exists("X", Formula::and(p(0, 2), p(2, 1)));
        let t = formula_to_term(&th, &xx, &trans).unwrap();
        assert_eq!(t.preds.len(), 2);
        assert_eq!(t.wiring.blocks().len(), 3);
        assert_eq!(term_to_cqnf(&th, &t).unwrap(), CQNF::of(&xx, &trans));
        let one = formula_to_term(&th, &xx, &p(0, 1)).unwrap();
        assert_eq!(one.wiring, TypedWiring::identity(&xx));
    }

    #[test]
    fn merged_ports_give_diagonal() {
        let th = preorder();
        let w = TypedWiring::new(
            vec![ctx(&["X", "X"])],
            ctx(&["X"]),
            vec![vec![Port::shell(0, 0), Port::shell(0, 1), Port::out(0)]],
            BTreeSet::new(),
        )
        .unwrap();
        let t = GraphicalTerm::new(vec![p(0, 1)], w).unwrap();
        assert_eq!(term_to_formula(&th, &t).unwrap(), p(0, 0));
    }

    #[test]
    fn rewrite_rules() {
        let calc = TheoryCalculus::new(preorder());
        let x = ctx(&["X"]);
        let xx = ctx(&["X", "X"]);
        let t = GraphicalTerm::single(&xx, p(0, 1));
        let (d, rel) = rewrite(&calc, &Rule::Discard, &t).unwrap();
        assert_eq!(rel, Relation::Entails);
        assert_eq!(represent(&calc, &d).unwrap(), Formula::True);

        let tt = GraphicalTerm::single(&x, Formula::True);
        let (r, rel) = rewrite(&calc, &Rule::RemoveTrue(0), &tt).unwrap();
        assert_eq!(rel, Relation::Equal);
        assert_eq!(r.wiring, TypedWiring::discard_term(&x));

        let mu = supply_gen(Generator::Mu, &xx);
        let two = GraphicalTerm::new(vec![p(0, 1)], mu.clone()).unwrap();
        assert!(rewrite(&calc, &Rule::MeetMerge { i: 0, j: 1 }, &two).is_err());
        let pair = GraphicalTerm::new(
            vec![p(0, 1), p(1, 0)],
            TypedWiring::new(
                vec![xx.clone(), xx.clone()],
                xx.clone(),
                vec![
                    vec![Port::shell(0, 0), Port::shell(1, 0), Port::out(0)],
                    vec![Port::shell(0, 1), Port::shell(1, 1), Port::out(1)],
                ],
                BTreeSet::new(),
            )
            .unwrap(),
        )
        .unwrap();
        let (merged, rel) = rewrite(&calc, &Rule::MeetMerge { i: 0, j: 1 }, &pair).unwrap();
        assert_eq!(rel, Relation::Equal);
        assert_eq!(merged.preds, vec![Formula::and(p(0, 1), p(1, 0))]);
        assert!(matches!(
            rewrite(&calc, &Rule::Monotone { shell: 0, pred: p(1, 0) }, &t),
            Err(Error::Precondition { rule: "monotone", .. })
        ));
    }

    #[test]
    fn nest_flattens() {
        let calc = TheoryCalculus::new(preorder());
        let xx = ctx(&["X", "X"]);
        let trans = Formula::exists("X", Formula::and(p(0, 2), p(2, 1)));
        let inner = formula_to_term(&calc.theory, &xx, &trans).unwrap();
        let outer = GraphicalTerm::single(&xx, trans.clone());
        let (flat, rel) = rewrite(&calc, &Rule::Nest { shell: 0, inner }, &outer).unwrap();
        assert_eq!(rel, Relation::Equal);
        assert_eq!(flat.preds.len(), 2);
        assert_eq!(
            CQNF::of(&xx, &represent(&calc, &flat).unwrap()),
            CQNF::of(&xx, &represent(&calc, &outer).unwrap())
        );
    }
}
