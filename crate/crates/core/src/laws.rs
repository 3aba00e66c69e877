//! Law suites: the equations and inequalities of the wiring po-prop,
//! checked by direct evaluation in each model at a bounded size.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::Rng;

use crate::entail::{canonical_structure, entails_free, formula_entails_free};
use crate::error::{Error, Result};
use crate::formulas::{act_gen, act_wiring, permute, Action, Formula, Theory, CQNF};
use crate::gen;
use crate::relsem::{rel_compose, rel_dagger, rel_supply, rel_tensor, tabulate, FinRel, PrdCalculus, Subset};
use crate::syn::{
    graphical_limits_prd, prd_is_map, syn_compose, syn_identity, syn_supply, syn_tensor, syn_tensor_obj, LimitKind,
    MeetSemilattice, SupplyKind, SynMorphism, SynObject,
};
use crate::terms::{cqnf_to_term, formula_to_term, term_to_cqnf, GraphicalTerm, Leq, RegularCalculus};
use crate::typed::{ctx, supply_w, Context, Sort};
use crate::wiring::{canonicalize, compose_w, enum_homs, generator, leq_w, tensor_w, Generator, WMor};

/// An expression in the generators, built with `⨾` and `⊗`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Gen(Generator),
    Seq(Box<Expr>, Box<Expr>),
    Par(Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn gen(g: Generator) -> Expr {
        Expr::Gen(g)
    }

    pub fn then(self, next: Expr) -> Expr {
        Expr::Seq(Box::new(self), Box::new(next))
    }

    pub fn par(self, other: Expr) -> Expr {
        Expr::Par(Box::new(self), Box::new(other))
    }

    pub fn arity(&self) -> Result<(usize, usize)> {
        match self {
            Expr::Gen(g) => Ok(g.arity()),
            Expr::Seq(a, b) => {
                let (m, n) = a.arity()?;
                let (n2, p) = b.arity()?;
                if n != n2 {
                    return Err(Error::ArityMismatch { expected: format!("domain {n}"), found: format!("domain {n2}") });
                }
                Ok((m, p))
            }
            Expr::Par(a, b) => {
                let (m1, n1) = a.arity()?;
                let (m2, n2) = b.arity()?;
                Ok((m1 + m2, n1 + n2))
            }
        }
    }

    /// Evaluation in the wiring po-prop.
    pub fn eval_w(&self) -> Result<WMor> {
        match self {
            Expr::Gen(g) => Ok(generator(*g)),
            Expr::Seq(a, b) => compose_w(&a.eval_w()?, &b.eval_w()?),
            Expr::Par(a, b) => Ok(tensor_w(&a.eval_w()?, &b.eval_w()?)),
        }
    }

    /// Evaluation in `Rel`, on a carrier of size `n`.
    pub fn eval_rel(&self, n: usize) -> Result<FinRel> {
        match self {
            Expr::Gen(g) => Ok(rel_supply(*g, n)),
            Expr::Seq(a, b) => rel_compose(&a.eval_rel(n)?, &b.eval_rel(n)?),
            Expr::Par(a, b) => Ok(rel_tensor(&a.eval_rel(n)?, &b.eval_rel(n)?)),
        }
    }

    /// The generator occurrences in order of application, each with the
    /// index of the first wire it acts on.
    pub fn steps(&self) -> Result<Vec<(usize, Generator)>> {
        let mut out = Vec::new();
        self.push_steps(0, &mut out)?;
        Ok(out)
    }

    fn push_steps(&self, offset: usize, out: &mut Vec<(usize, Generator)>) -> Result<()> {
        match self {
            Expr::Gen(g) => out.push((offset, *g)),
            Expr::Seq(a, b) => {
                a.push_steps(offset, out)?;
                b.push_steps(offset, out)?;
            }
            Expr::Par(a, b) => {
                let (_, n1) = a.arity()?;
                a.push_steps(offset, out)?;
                b.push_steps(offset + n1, out)?;
            }
        }
        Ok(())
    }
}

fn gen_symbol(g: Generator) -> String {
    match g {
        Generator::Epsilon => "ε".into(),
        Generator::Delta => "δ".into(),
        Generator::Eta => "η".into(),
        Generator::Mu => "μ".into(),
        Generator::Sigma => "σ".into(),
        Generator::DeltaN(n) => format!("δ{n}"),
        Generator::MuN(n) => format!("μ{n}"),
        Generator::Identity(1) => "id".into(),
        Generator::Identity(n) => format!("id{n}"),
        Generator::Cup => "cup".into(),
        Generator::Cap => "cap".into(),
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Gen(g) => write!(f, "{}", gen_symbol(*g)),
            Expr::Seq(a, b) => {
                write!(f, "{a} ⨾ ")?;
                match **b {
                    Expr::Seq(..) => write!(f, "({b})"),
                    _ => write!(f, "{b}"),
                }
            }
            Expr::Par(a, b) => {
                let wrap = |e: &Expr, f: &mut fmt::Formatter<'_>| match e {
                    Expr::Gen(_) => write!(f, "{e}"),
                    _ => write!(f, "({e})"),
                };
                wrap(a, f)?;
                write!(f, " ⊗ ")?;
                wrap(b, f)
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LawKind {
    Equal,
    /// `lhs ≤ rhs`.
    Leq,
}

#[derive(Clone, Debug)]
pub struct Law {
    pub name: &'static str,
    pub lhs: Expr,
    pub rhs: Expr,
    pub kind: LawKind,
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = if self.kind == LawKind::Equal { "=" } else { "≤" };
        write!(f, "{}: {} {op} {}", self.name, self.lhs, self.rhs)
    }
}

/// The relations among the generators: (co)commutativity, (co)unitality,
/// (co)associativity, the special and Frobenius laws, the adjunction
/// inequalities, yanking, and `δ⨾μ ≤ id`.
pub fn wiring_laws() -> Vec<Law> {
    use Generator::*;
    let g = Expr::gen;
    let id = || g(Identity(1));
    let eq = |name, lhs, rhs| Law { name, lhs, rhs, kind: LawKind::Equal };
    let le = |name, lhs, rhs| Law { name, lhs, rhs, kind: LawKind::Leq };
    vec![
        eq("cocommutativity", g(Delta).then(g(Sigma)), g(Delta)),
        eq("left counit", g(Delta).then(g(Epsilon).par(id())), id()),
        eq("right counit", g(Delta).then(id().par(g(Epsilon))), id()),
        eq("coassociativity", g(Delta).then(g(Delta).par(id())), g(Delta).then(id().par(g(Delta)))),
        eq("commutativity", g(Sigma).then(g(Mu)), g(Mu)),
        eq("left unit", g(Eta).par(id()).then(g(Mu)), id()),
        eq("right unit", id().par(g(Eta)).then(g(Mu)), id()),
        eq("associativity", g(Mu).par(id()).then(g(Mu)), id().par(g(Mu)).then(g(Mu))),
        eq("special", g(Delta).then(g(Mu)), id()),
        eq("left frobenius", g(Delta).par(id()).then(id().par(g(Mu))), g(Mu).then(g(Delta))),
        eq("right frobenius", id().par(g(Delta)).then(g(Mu).par(id())), g(Mu).then(g(Delta))),
        le("discard unit", id(), g(Epsilon).then(g(Eta))),
        le("discard counit", g(Eta).then(g(Epsilon)), g(Identity(0))),
        le("merge counit", g(Mu).then(g(Delta)), g(Identity(2))),
        eq("left yanking", g(Cup).par(id()).then(id().par(g(Cap))), id()),
        eq("right yanking", id().par(g(Cup)).then(g(Cap).par(id())), id()),
        le("split then merge", g(Delta).then(g(Mu)), id()),
    ]
}

/// Outcome of one named check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawResult {
    pub suite: &'static str,
    pub name: String,
    pub passed: bool,
    pub cases: usize,
    pub detail: String,
}

impl fmt::Display for LawResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{mark} [{}] {} ({} cases)", self.suite, self.name, self.cases)?;
        if !self.detail.is_empty() {
            write!(f, ": {}", self.detail)?;
        }
        Ok(())
    }
}

/// Collects cases for one check, keeping the first failure.
struct Tally {
    suite: &'static str,
    name: String,
    cases: usize,
    failure: Option<String>,
}

impl Tally {
    fn new(suite: &'static str, name: impl Into<String>) -> Tally {
        Tally { suite, name: name.into(), cases: 0, failure: None }
    }

    fn check(&mut self, ok: bool, why: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(why());
        }
    }

    fn fail(&mut self, why: String) {
        self.check(false, || why);
    }

    fn done(self) -> LawResult {
        LawResult {
            suite: self.suite,
            name: self.name,
            passed: self.failure.is_none(),
            cases: self.cases,
            detail: self.failure.unwrap_or_default(),
        }
    }
}

/// Size caps for the exhaustive suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Scale {
    /// Largest carrier enumerated exhaustively.
    pub carriers: usize,
    /// Largest wiring arity enumerated exhaustively.
    pub arity: usize,
    /// Number of random instances for sampled checks.
    pub samples: usize,
    pub seed: u64,
}

impl Default for Scale {
    fn default() -> Self {
        Scale { carriers: 2, arity: 3, samples: 50, seed: 0 }
    }
}

impl Scale {
    /// Reads `GRL_LAW_SCALE` as `C` (carriers) or `C,A` (carriers, arities).
    pub fn from_env() -> Result<Scale> {
        let mut s = Scale::default();
        if let Ok(v) = std::env::var("GRL_LAW_SCALE") {
            let bad = || Error::IllFormed(format!("GRL_LAW_SCALE must be N or N,M, got {v:?}"));
            let mut parts = v.split(',').map(|p| p.trim().parse::<usize>());
            s.carriers = parts.next().ok_or_else(bad)?.map_err(|_| bad())?;
            if let Some(a) = parts.next() {
                s.arity = a.map_err(|_| bad())?;
            }
            if parts.next().is_some() {
                return Err(bad());
            }
        }
        Ok(s)
    }
}

pub const SUITES: [&str; 6] = ["wiring", "rel", "prd", "theory", "entail", "syn"];

/// Runs a named suite, or all of them for `"all"`.
pub fn run_suite(name: &str, scale: &Scale) -> Result<Vec<LawResult>> {
    let mut out = Vec::new();
    let all = name == "all";
    if !all && !SUITES.contains(&name) {
        return Err(Error::IllFormed(format!("unknown suite {name:?}; expected one of {} or all", SUITES.join(", "))));
    }
    if all || name == "wiring" {
        out.push(hom_cardinalities(scale.arity.max(2) + 2));
        out.push(wiring_law_check());
        out.push(pushout_agreement(scale.arity));
        out.push(canonicalize_idempotent(scale.arity));
        out.push(order_axioms(scale.arity));
        out.push(category_axioms(scale.arity.min(2)));
        out.push(monotonicity(scale.arity.min(2)));
    }
    if all || name == "rel" {
        out.push(rel_law_check(scale.carriers + 1));
        out.push(lax_homomorphism(scale.carriers + 1, scale.carriers + 2, scale.samples, scale.seed));
        out.push(tabulation(scale.carriers, scale.carriers + 1, scale.samples, scale.seed));
        out.push(left_adjoints(scale.carriers));
    }
    if all || name == "prd" {
        out.push(prd_ajax(scale.carriers));
        out.push(prd_meets_are_merges(scale.carriers));
    }
    if all || name == "theory" {
        out.push(theory_functor_laws(scale.samples, scale.seed));
        out.push(theory_action_composition(scale.samples, scale.seed));
        out.push(theory_round_trip(scale.samples, scale.seed));
    }
    if all || name == "entail" {
        out.push(entail_completeness(scale.samples, scale.seed));
    }
    if all || name == "syn" {
        out.extend(syn_prd_laws(scale.carriers));
        out.push(meet_semilattice_laws(scale.carriers + 2));
        out.push(limits_prd(scale.carriers + 1));
    }
    Ok(out)
}

/// Bell numbers by the Bell triangle.
pub fn bell(n: usize) -> usize {
    let mut row = vec![1usize];
    for _ in 0..n {
        let mut next = vec![*row.last().expect("nonempty")];
        for &x in &row {
            let last = *next.last().expect("nonempty");
            next.push(last + x);
        }
        row = next;
    }
    row[0]
}

/// `|𝕎(0,0)| = 2` and `|𝕎(m,n)| = Bell(m+n)` for `1 ≤ m+n ≤ max`.
pub fn hom_cardinalities(max: usize) -> LawResult {
    let mut t = Tally::new("wiring", "hom-set sizes are Bell numbers");
    match enum_homs(0, 0) {
        Ok(h) => t.check(h.len() == 2, || format!("|W(0,0)| = {}", h.len())),
        Err(e) => t.fail(e.to_string()),
    }
    for total in 1..=max {
        for m in 0..=total {
            match enum_homs(m, total - m) {
                Ok(h) => {
                    let distinct: BTreeSet<&WMor> = h.iter().collect();
                    let want = bell(total);
                    t.check(h.len() == want && distinct.len() == want, || {
                        format!("|W({m},{})| = {} (distinct {}), Bell = {want}", total - m, h.len(), distinct.len())
                    });
                }
                Err(e) => t.fail(e.to_string()),
            }
        }
    }
    t.done()
}

fn law_holds_w(law: &Law) -> Result<bool> {
    let (l, r) = (law.lhs.eval_w()?, law.rhs.eval_w()?);
    match law.kind {
        LawKind::Equal => Ok(l == r),
        LawKind::Leq => leq_w(&l, &r),
    }
}

/// Every generator law by direct evaluation in the wiring po-prop.
pub fn wiring_law_check() -> LawResult {
    let mut t = Tally::new("wiring", "generator laws");
    for law in wiring_laws() {
        match law_holds_w(&law) {
            Ok(ok) => t.check(ok, || format!("{law} fails")),
            Err(e) => t.fail(format!("{law}: {e}")),
        }
    }
    t.done()
}

fn homs_upto(max: usize) -> Vec<Vec<Vec<WMor>>> {
    (0..=max).map(|m| (0..=max).map(|n| enum_homs(m, n).expect("within guard")).collect()).collect()
}

/// Partition-join composition agrees with the cospan pushout followed by
/// canonicalization, for all composable pairs with arities `≤ max`.
pub fn pushout_agreement(max: usize) -> LawResult {
    let mut t = Tally::new("wiring", format!("composition is the cospan pushout (arities ≤ {max})"));
    let homs = homs_upto(max);
    for m in 0..=max {
        for n in 0..=max {
            for p in 0..=max {
                for f in &homs[m][n] {
                    for g in &homs[n][p] {
                        let join = compose_w(f, g);
                        let push = f.to_cospan().compose(&g.to_cospan()).map(|c| canonicalize(&c));
                        match (join, push) {
                            (Ok(a), Ok(b)) => t.check(a == b, || format!("{f} ⨾ {g}: join {a}, pushout {b}")),
                            (a, b) => t.fail(format!("{f} ⨾ {g}: {a:?} vs {b:?}")),
                        }
                    }
                }
            }
        }
    }
    t.done()
}

pub fn canonicalize_idempotent(max: usize) -> LawResult {
    let mut t = Tally::new("wiring", format!("canonical forms are fixed by canonicalize (arities ≤ {max})"));
    let homs = homs_upto(max);
    for row in &homs {
        for hs in row {
            for w in hs {
                let c = canonicalize(&w.to_cospan());
                t.check(c == *w, || format!("{w} canonicalizes to {c}"));
            }
        }
    }
    t.done()
}

/// Reflexivity, antisymmetry and transitivity of the hom orders.
pub fn order_axioms(max: usize) -> LawResult {
    let mut t = Tally::new("wiring", format!("hom-sets are posets (arities ≤ {max})"));
    let homs = homs_upto(max);
    for row in &homs {
        for hs in row {
            let le: Vec<Vec<bool>> = hs.iter().map(|a| hs.iter().map(|b| leq_w(a, b).expect("parallel")).collect()).collect();
            let k = hs.len();
            for i in 0..k {
                t.check(le[i][i], || format!("{} ≰ itself", hs[i]));
                for j in 0..k {
                    t.check(i == j || !(le[i][j] && le[j][i]), || format!("{} and {} are mutually below", hs[i], hs[j]));
                    if le[i][j] {
                        for l in 0..k {
                            t.check(!le[j][l] || le[i][l], || format!("transitivity fails at {} {} {}", hs[i], hs[j], hs[l]));
                        }
                    }
                }
            }
        }
    }
    t.done()
}

/// Unitality and associativity of composition on all triples with
/// arities `≤ max`.
pub fn category_axioms(max: usize) -> LawResult {
    let mut t = Tally::new("wiring", format!("composition is unital and associative (arities ≤ {max})"));
    let homs = homs_upto(max);
    for m in 0..=max {
        for n in 0..=max {
            for f in &homs[m][n] {
                let l = compose_w(&WMor::identity(m), f).expect("composable");
                let r = compose_w(f, &WMor::identity(n)).expect("composable");
                t.check(l == *f && r == *f, || format!("identity law fails at {f}"));
                for p in 0..=max {
                    for g in &homs[n][p] {
                        let fg = compose_w(f, g).expect("composable");
                        for q in 0..=max {
                            for h in &homs[p][q] {
                                let a = compose_w(&fg, h).expect("composable");
                                let b = compose_w(f, &compose_w(g, h).expect("composable")).expect("composable");
                                t.check(a == b, || format!("({f} ⨾ {g}) ⨾ {h} = {a} but {f} ⨾ ({g} ⨾ {h}) = {b}"));
                            }
                        }
                    }
                }
            }
        }
    }
    t.done()
}

/// Composition and tensor are monotone in both arguments.
pub fn monotonicity(max: usize) -> LawResult {
    let mut t = Tally::new("wiring", format!("composition and tensor are monotone (arities ≤ {max})"));
    let homs = homs_upto(max);
    let below = |hs: &Vec<WMor>| -> Vec<(WMor, WMor)> {
        let mut out = Vec::new();
        for a in hs {
            for b in hs {
                if leq_w(a, b).expect("parallel") {
                    out.push((a.clone(), b.clone()));
                }
            }
        }
        out
    };
    for m in 0..=max {
        for n in 0..=max {
            let fs = below(&homs[m][n]);
            for p in 0..=max {
                let gs = below(&homs[n][p]);
                for (f, f2) in &fs {
                    for (g, g2) in &gs {
                        let a = compose_w(f, g).expect("composable");
                        let b = compose_w(f2, g2).expect("composable");
                        t.check(leq_w(&a, &b).expect("parallel"), || format!("{f} ≤ {f2}, {g} ≤ {g2} but composites are not"));
                    }
                }
            }
            for m2 in 0..=max {
                for n2 in 0..=max {
                    for (f, f2) in &fs {
                        for (g, g2) in below(&homs[m2][n2]) {
                            let ok = leq_w(&tensor_w(f, &g), &tensor_w(f2, &g2)).expect("parallel");
                            t.check(ok, || format!("{f} ≤ {f2}, {g} ≤ {g2} but tensors are not"));
                        }
                    }
                }
            }
        }
    }
    t.done()
}

fn law_holds_rel(law: &Law, n: usize) -> Result<bool> {
    let (l, r) = (law.lhs.eval_rel(n)?, law.rhs.eval_rel(n)?);
    match law.kind {
        LawKind::Equal => Ok(l == r),
        LawKind::Leq => Ok(l.leq(&r)),
    }
}

/// The generator laws in `Rel`, on every carrier of size `≤ max`.
pub fn rel_law_check(max: usize) -> LawResult {
    let mut t = Tally::new("rel", format!("generator laws on carriers ≤ {max}"));
    for n in 0..=max {
        for law in wiring_laws() {
            match law_holds_rel(&law, n) {
                Ok(ok) => t.check(ok, || format!("{law} fails on a carrier of size {n}")),
                Err(e) => t.fail(format!("{law}: {e}")),
            }
        }
    }
    t.done()
}

fn all_relations(dom: usize, cod: usize) -> impl Iterator<Item = FinRel> {
    (0u64..1 << (dom * cod)).map(move |mask| FinRel::from_mask(dom, cod, mask))
}

fn lax_ok(f: &FinRel) -> Result<bool> {
    let (c, d) = (f.dom(), f.cod());
    let eps = rel_compose(f, &rel_supply(Generator::Epsilon, d))?.leq(&rel_supply(Generator::Epsilon, c));
    let lhs = rel_compose(f, &rel_supply(Generator::Delta, d))?;
    let rhs = rel_compose(&rel_supply(Generator::Delta, c), &rel_tensor(f, f))?;
    Ok(eps && lhs.leq(&rhs))
}

/// `f⨾ε ≤ ε` and `f⨾δ ≤ δ⨾(f⊗f)` for every relation between sets of size
/// `≤ max`, and for `samples` random relations between sets of size `random`.
pub fn lax_homomorphism(max: usize, random: usize, samples: usize, seed: u64) -> LawResult {
    let mut t = Tally::new("rel", format!("relations are lax homomorphisms (all ≤ {max}, {samples} random at {random})"));
    let run = |f: FinRel, t: &mut Tally| match lax_ok(&f) {
        Ok(ok) => t.check(ok, || format!("{f:?} is not a lax homomorphism")),
        Err(e) => t.fail(e.to_string()),
    };
    for a in 0..=max {
        for b in 0..=max {
            for f in all_relations(a, b) {
                run(f, &mut t);
            }
        }
    }
    let mut rng = gen::rng(seed);
    for _ in 0..samples {
        run(gen::random_relation(&mut rng, random, random), &mut t);
    }
    t.done()
}

fn tabulation_ok(f: &FinRel) -> Result<bool> {
    let tab = tabulate(f);
    let hat = tab.hat();
    let ok_legs = rel_compose(&tab.right, &tab.left)? == *f;
    Ok(ok_legs && rel_compose(&hat, &rel_dagger(&hat))? == FinRel::identity(tab.tab.len()))
}

/// `f̂⨾f̂† = id` and `f = f_R⨾f_L` for all relations between sets of size
/// `≤ max` and random ones at size `random`.
pub fn tabulation(max: usize, random: usize, samples: usize, seed: u64) -> LawResult {
    let mut t = Tally::new("rel", format!("tabulations (all ≤ {max}, {samples} random at {random})"));
    let run = |f: FinRel, t: &mut Tally| match tabulation_ok(&f) {
        Ok(ok) => t.check(ok, || format!("tabulation of {f:?} fails")),
        Err(e) => t.fail(e.to_string()),
    };
    for a in 0..=max {
        for b in 0..=max {
            for f in all_relations(a, b) {
                run(f, &mut t);
            }
        }
    }
    let mut rng = gen::rng(seed ^ 0x7ab);
    for _ in 0..samples {
        run(gen::random_relation(&mut rng, random, random), &mut t);
    }
    t.done()
}

/// `id ≤ f⨾f†` and `f†⨾f ≤ id` exactly when `f` is a function graph.
pub fn left_adjoints(max: usize) -> LawResult {
    let mut t = Tally::new("rel", format!("left adjoints are functions (all ≤ {max})"));
    for a in 0..=max {
        for b in 0..=max {
            for f in all_relations(a, b) {
                let d = rel_dagger(&f);
                let unit = FinRel::identity(a).leq(&rel_compose(&f, &d).expect("composable"));
                let counit = rel_compose(&d, &f).expect("composable").leq(&FinRel::identity(b));
                let function = (0..a).all(|x| (0..b).filter(|&y| f.contains(x, y)).count() == 1);
                t.check((unit && counit) == function, || format!("{f:?}: adjoint {}, function {function}", unit && counit));
            }
        }
    }
    t.done()
}

fn subsets_of(elems: &[Vec<usize>]) -> Vec<Subset> {
    (0u32..1 << elems.len())
        .map(|mask| elems.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, e)| e.clone()).collect())
        .collect()
}

fn all_tuples(n: usize, len: usize) -> Vec<Vec<usize>> {
    crate::relsem::tuples(&vec![n; len])
}

/// `θ ≤ ⊞(π(θ))` and `π(θ₁ ⊞ θ₂) ≤ (θ₁, θ₂)` for all subsets, on carriers
/// of size `≤ max` and contexts of total length `≤ 3`.
pub fn prd_ajax(max: usize) -> LawResult {
    let mut t = Tally::new("prd", format!("exterior conjunction is right adjoint to projection (carriers ≤ {max})"));
    for n in 0..=max {
        let calc = PrdCalculus::uniform(&["X"], n);
        for a in 0..=3usize {
            for b in 0..=3 - a {
                let (g1, g2) = (vec![Sort::from("X"); a], vec![Sort::from("X"); b]);
                for theta in subsets_of(&all_tuples(n, a + b)) {
                    let (p1, p2) = calc.lambda_split(&g1, &g2, &theta);
                    // independent projections
                    let q1: Subset = theta.iter().map(|x| x[..a].to_vec()).collect();
                    let q2: Subset = theta.iter().map(|x| x[a..].to_vec()).collect();
                    t.check(p1 == q1 && p2 == q2, || format!("projection of {theta:?}"));
                    let back = calc.boxplus(&g1, &p1, &g2, &p2);
                    t.check(theta.is_subset(&back), || format!("{theta:?} is not below the product of its projections"));
                }
                let (s1, s2) = (subsets_of(&all_tuples(n, a)), subsets_of(&all_tuples(n, b)));
                for x in &s1 {
                    for y in &s2 {
                        let prod = calc.boxplus(&g1, x, &g2, y);
                        let want: Subset = x.iter().flat_map(|u| y.iter().map(move |v| [u.clone(), v.clone()].concat())).collect();
                        t.check(prod == want, || format!("{x:?} ⊞ {y:?}"));
                        let (p1, p2) = calc.lambda_split(&g1, &g2, &prod);
                        t.check(p1.is_subset(x) && p2.is_subset(y), || format!("projections of {x:?} ⊞ {y:?} are too large"));
                    }
                }
            }
        }
    }
    t.done()
}

/// `⟦(θ₁∧θ₂; Γ)⟧ = ⟦(θ₁,θ₂; μ_Γ)⟧` for all pairs of subsets on `[X]`.
pub fn prd_meets_are_merges(max: usize) -> LawResult {
    let mut t = Tally::new("prd", format!("meets are merges (carriers ≤ {max})"));
    for n in 0..=max {
        let calc = PrdCalculus::uniform(&["X"], n);
        let x = ctx(&["X"]);
        let subs = subsets_of(&all_tuples(n, 1));
        let w = crate::typed::compose_at(
            &crate::typed::supply_gen(Generator::Mu, &x),
            0,
            &pair_wiring(&x),
        )
        .expect("shell contexts match");
        for a in &subs {
            for b in &subs {
                let merged = crate::terms::represent(&calc, &GraphicalTerm::new(vec![a.clone(), b.clone()], w.clone()).expect("two shells"));
                let want: Subset = a.intersection(b).cloned().collect();
                match merged {
                    Ok(m) => t.check(m == want, || format!("{a:?} ∧ {b:?}: got {m:?}")),
                    Err(e) => t.fail(e.to_string()),
                }
            }
        }
    }
    t.done()
}

/// Two shells on `c` side by side, feeding one shell on `c ⧺ c`.
fn pair_wiring(c: &[Sort]) -> crate::typed::TypedWiring {
    use crate::typed::{Port, TypedWiring};
    let n = c.len();
    let mut blocks = Vec::new();
    for i in 0..n {
        blocks.push(vec![Port::shell(0, i), Port::out(i)]);
        blocks.push(vec![Port::shell(1, i), Port::out(n + i)]);
    }
    TypedWiring::new(vec![c.to_vec(), c.to_vec()], [c, c].concat(), blocks, BTreeSet::new()).expect("well formed")
}

/// The theory used by the sampled theory-calculus suites.
pub fn sample_theory() -> Theory {
    Theory::new("Sample")
        .with_sort("X")
        .with_sort("Y")
        .with_rel("P", &["X", "X"])
        .with_rel("Q", &["X", "Y"])
        .with_rel("U", &["Y"])
}

/// A formula on a context whose variables are tagged by `(wire, component)`.
struct Tagged<'a> {
    theory: &'a Theory,
    width: &'a [Sort],
    ctx: Context,
    phi: Formula,
    tags: Vec<(usize, usize)>,
}

impl Tagged<'_> {
    fn position(&self, tag: (usize, usize)) -> usize {
        self.tags.iter().position(|&t| t == tag).expect("tag present")
    }

    fn reorder(&mut self, perm: &[usize]) -> Result<()> {
        let (c, phi) = permute(&self.ctx, perm, &self.phi)?;
        self.ctx = c;
        self.phi = phi;
        self.tags = perm.iter().map(|&i| self.tags[i]).collect();
        Ok(())
    }

    fn to_end(&mut self, tag: (usize, usize)) -> Result<()> {
        let p = self.position(tag);
        let n = self.ctx.len();
        let perm: Vec<usize> = (0..n).filter(|&i| i != p).chain([p]).collect();
        self.reorder(&perm)
    }

    fn act(&mut self, a: Action) -> Result<()> {
        let (c, phi) = act_gen(self.theory, &a, &self.ctx, &self.phi)?;
        self.ctx = c;
        self.phi = phi;
        Ok(())
    }

    /// Applies one untyped generator at wire `j`, variable by variable.
    fn step(&mut self, j: usize, g: Generator) -> Result<()> {
        match g {
            Generator::Cup => return self.step(j, Generator::Eta).and_then(|_| self.step(j, Generator::Delta)),
            Generator::Cap => return self.step(j, Generator::Mu).and_then(|_| self.step(j, Generator::Epsilon)),
            Generator::DeltaN(_) | Generator::MuN(_) => {
                return Err(Error::IllFormed(format!("{g:?} is not a basic generator")));
            }
            _ => {}
        }
        let k = self.width.len();
        let (a, b) = g.arity();
        // park the inputs so that renumbering later wires cannot collide
        for t in self.tags.iter_mut() {
            if t.0 >= j && t.0 < j + a {
                t.0 = PARK + (t.0 - j);
            } else if t.0 >= j + a {
                t.0 = t.0 + b - a;
            }
        }
        match g {
            Generator::Identity(_) => {
                for t in self.tags.iter_mut().filter(|t| t.0 >= PARK) {
                    t.0 = j + (t.0 - PARK);
                }
            }
            Generator::Sigma => {
                for t in self.tags.iter_mut().filter(|t| t.0 >= PARK) {
                    t.0 = j + 1 - (t.0 - PARK);
                }
            }
            Generator::Epsilon => {
                for i in 0..k {
                    self.to_end((PARK, i))?;
                    self.act(Action::Epsilon)?;
                    self.tags.pop();
                }
            }
            Generator::Eta => {
                for i in 0..k {
                    self.act(Action::Eta(self.width[i].clone()))?;
                    self.tags.push((j, i));
                }
            }
            Generator::Delta => {
                for i in 0..k {
                    self.to_end((PARK, i))?;
                    self.act(Action::Delta)?;
                    *self.tags.last_mut().expect("moved") = (j, i);
                    self.tags.push((j + 1, i));
                }
            }
            Generator::Mu => {
                for i in 0..k {
                    self.to_end((PARK, i))?;
                    self.to_end((PARK + 1, i))?;
                    self.act(Action::Mu)?;
                    self.tags.pop();
                    *self.tags.last_mut().expect("moved") = (j, i);
                }
            }
            _ => unreachable!("handled above"),
        }
        let mut order: Vec<usize> = (0..self.tags.len()).collect();
        order.sort_by_key(|&i| self.tags[i]);
        self.reorder(&order)
    }
}

/// Wire index marking the inputs of the generator being applied.
const PARK: usize = usize::MAX / 2;

/// The image of `φ` on `Γ^m` under an expression, computed one generator
/// action at a time on individual variables.
pub fn act_expr(theory: &Theory, width: &[Sort], e: &Expr, phi: &Formula) -> Result<(Context, Formula)> {
    let (m, _) = e.arity()?;
    let k = width.len();
    let mut st = Tagged {
        theory,
        width,
        ctx: (0..m).flat_map(|_| width.iter().cloned()).collect(),
        phi: phi.clone(),
        tags: (0..m).flat_map(|j| (0..k).map(move |i| (j, i))).collect(),
    };
    for (j, g) in e.steps()? {
        st.step(j, g)?;
    }
    Ok((st.ctx, st.phi))
}

/// Images of the generator laws under the theory calculus: equalities as
/// equal normal forms, inequalities as free entailments, for `samples`
/// random formulas per law on contexts of length `≤ 3`.
pub fn theory_functor_laws(samples: usize, seed: u64) -> LawResult {
    let mut t = Tally::new("theory", format!("generator laws act on formulas ({samples} random per law)"));
    let th = sample_theory();
    let sorts: Vec<Sort> = th.sorts.iter().cloned().collect();
    let mut rng = gen::rng(seed ^ 0x5eed);
    for law in wiring_laws() {
        let (m, _) = law.lhs.arity().expect("well typed");
        for _ in 0..samples {
            let width = gen::random_context(&mut rng, &sorts, 3);
            let c: Context = (0..m).flat_map(|_| width.iter().cloned()).collect();
            let phi = gen::random_formula(&mut rng, &th, &c, 3);
            let l = act_expr(&th, &width, &law.lhs, &phi);
            let r = act_expr(&th, &width, &law.rhs, &phi);
            let (Ok((cl, fl)), Ok((cr, fr))) = (l, r) else {
                t.fail(format!("{law}: action failed on {}", phi.show(c.len())));
                continue;
            };
            if cl != cr {
                t.fail(format!("{law}: contexts differ"));
                continue;
            }
            let ok = match law.kind {
                LawKind::Equal => CQNF::of(&cl, &fl) == CQNF::of(&cr, &fr),
                LawKind::Leq => formula_entails_free(&cl, &fl, &fr),
            };
            t.check(ok, || {
                format!("{law} on width {} with φ = {}: {} vs {}", width.len(), phi.show(c.len()), fl.show(cl.len()), fr.show(cr.len()))
            });
        }
    }
    t.done()
}

/// `act_wiring(w₁⨾w₂) = act_wiring(w₂) ∘ act_wiring(w₁)` and agreement of
/// `act_wiring` with the generator-by-generator action.
pub fn theory_action_composition(samples: usize, seed: u64) -> LawResult {
    let mut t = Tally::new("theory", format!("wiring action is functorial ({samples} random)"));
    let th = sample_theory();
    let sorts: Vec<Sort> = th.sorts.iter().cloned().collect();
    let mut rng = gen::rng(seed ^ 0xac7);
    for _ in 0..samples {
        let c1 = gen::random_context(&mut rng, &sorts, 3);
        let c2 = gen::random_context(&mut rng, &sorts, 3);
        let c3 = gen::random_context(&mut rng, &sorts, 3);
        let w1 = gen::random_typed(&mut rng, vec![c1.clone()], c2.clone(), &sorts);
        let w2 = gen::random_typed(&mut rng, vec![c2], c3.clone(), &sorts);
        let phi = gen::random_formula(&mut rng, &th, &c1, 3);
        let run = || -> Result<bool> {
            let both = act_wiring(&th, &w1.then(&w2)?, &phi)?;
            let stepwise = act_wiring(&th, &w2, &act_wiring(&th, &w1, &phi)?)?;
            Ok(CQNF::of(&c3, &both) == CQNF::of(&c3, &stepwise))
        };
        match run() {
            Ok(ok) => t.check(ok, || format!("{w1} then {w2} on {}", phi.show(c1.len()))),
            Err(e) => t.fail(e.to_string()),
        }
    }
    // untyped expressions supplied to a single sort
    let mut rng = gen::rng(seed ^ 0xe4);
    let x = ctx(&["X"]);
    for law in wiring_laws() {
        for e in [&law.lhs, &law.rhs] {
            let (m, _) = e.arity().expect("well typed");
            let phi = gen::random_formula(&mut rng, &th, &vec![Sort::from("X"); m], 3);
            let run = || -> Result<bool> {
                let w = supply_w(&e.eval_w()?, &x);
                let whole = act_wiring(&th, &w, &phi)?;
                let (c, steps) = act_expr(&th, &x, e, &phi)?;
                Ok(CQNF::of(&c, &whole) == CQNF::of(&c, &steps))
            };
            match run() {
                Ok(ok) => t.check(ok, || format!("{e} on {}", phi.show(m))),
                Err(err) => t.fail(format!("{e}: {err}")),
            }
        }
    }
    t.done()
}

/// `normalize(term_to_formula(formula_to_term(φ))) = normalize(φ)`.
pub fn theory_round_trip(samples: usize, seed: u64) -> LawResult {
    let mut t = Tally::new("theory", format!("formula-term round trip ({samples} random)"));
    let th = sample_theory();
    let sorts: Vec<Sort> = th.sorts.iter().cloned().collect();
    let mut rng = gen::rng(seed ^ 0x707);
    for _ in 0..samples {
        let c = gen::random_context(&mut rng, &sorts, 3);
        let phi = gen::random_formula(&mut rng, &th, &c, 4);
        let run = || -> Result<bool> {
            let term = formula_to_term(&th, &c, &phi)?;
            let back = term_to_cqnf(&th, &term)?;
            let again = term_to_cqnf(&th, &cqnf_to_term(&back))?;
            Ok(back == CQNF::of(&c, &phi) && again == back)
        };
        match run() {
            Ok(ok) => t.check(ok, || format!("round trip of {}", phi.show(c.len()))),
            Err(e) => t.fail(e.to_string()),
        }
    }
    t.done()
}

/// The signature of the entailment sample: one sort, a unary and a binary
/// relation.
pub fn entail_theory() -> Theory {
    Theory::new("Graphs").with_sort("X").with_rel("U", &["X"]).with_rel("P", &["X", "X"])
}

/// A conjunctive query in flat form: atoms over variables `0..vars`, the
/// first `outs.len()` positions of the tuple read from `outs`.
struct Flat {
    vars: usize,
    atoms: Vec<(bool, Vec<usize>)>,
    outs: Vec<usize>,
}

impl Flat {
    fn of(nf: &CQNF) -> Flat {
        let s = crate::entail::CanonicalStructure::of_cqnf(nf);
        Flat {
            vars: s.len(),
            atoms: s.facts.iter().map(|(r, a)| (r == "P", a.clone())).collect(),
            outs: s.distinguished.clone(),
        }
    }
}

/// A model on `{0..n}` as bit tables.
struct Bits {
    n: usize,
    u: u64,
    p: u64,
}

impl Bits {
    fn holds(&self, atom: &(bool, Vec<usize>), val: &[usize]) -> bool {
        if atom.0 {
            self.p >> (val[atom.1[0]] * self.n + val[atom.1[1]]) & 1 == 1
        } else {
            self.u >> val[atom.1[0]] & 1 == 1
        }
    }

    /// Whether some assignment extending `val` satisfies every atom.
    fn satisfiable(&self, q: &Flat, val: &mut Vec<Option<usize>>, k: usize) -> bool {
        let done = |val: &Vec<Option<usize>>, a: &(bool, Vec<usize>)| a.1.iter().all(|&x| val[x].is_some());
        for a in &q.atoms {
            if done(val, a) {
                let v: Vec<usize> = val.iter().map(|x| x.unwrap_or(0)).collect();
                if !self.holds(a, &v) {
                    return false;
                }
            }
        }
        if k == q.vars {
            return true;
        }
        if val[k].is_some() {
            return self.satisfiable(q, val, k + 1);
        }
        for x in 0..self.n {
            val[k] = Some(x);
            if self.satisfiable(q, val, k + 1) {
                val[k] = None;
                return true;
            }
        }
        val[k] = None;
        false
    }

    /// The answer tuples of `q`.
    fn answers(&self, q: &Flat, width: usize) -> BTreeSet<Vec<usize>> {
        let mut out = BTreeSet::new();
        for tuple in all_tuples(self.n, width) {
            let mut val = vec![None; q.vars];
            let mut clash = false;
            for (pos, &e) in q.outs.iter().enumerate() {
                match val[e] {
                    Some(v) if v != tuple[pos] => clash = true,
                    _ => val[e] = Some(tuple[pos]),
                }
            }
            if !clash && self.satisfiable(q, &mut val, 0) {
                out.insert(tuple);
            }
        }
        out
    }
}

/// Containment of answer sets in every model on at most `max` elements.
fn contained_everywhere(a: &Flat, b: &Flat, width: usize, max: usize) -> bool {
    for n in 0..=max {
        for u in 0u64..1 << n {
            for p in 0u64..1 << (n * n) {
                let m = Bits { n, u, p };
                let lhs = m.answers(a, width);
                if lhs.is_empty() {
                    continue;
                }
                let rhs = m.answers(b, width);
                if !lhs.is_subset(&rhs) {
                    return false;
                }
            }
        }
    }
    true
}

/// Elements of the left term's canonical structure allowed in the
/// completeness sample; keeps the model enumeration exhaustive.
pub const COMPLETENESS_ELEMENTS: usize = 3;

/// Random pairs of terms with the same boundary; the right term is a
/// weakening of the left one half of the time.
pub fn completeness_pairs(samples: usize, seed: u64) -> Vec<(GraphicalTerm<Formula>, GraphicalTerm<Formula>)> {
    let th = entail_theory();
    let mut rng = gen::rng(seed ^ 0xc0);
    let mut out = Vec::new();
    while out.len() < samples {
        let width = rng.gen_range(0..=4);
        let c = vec![Sort::from("X"); width];
        let t = gen::random_atomic_term(&mut rng, &th, c.clone(), 3);
        let Ok(s) = canonical_structure(&th, &t) else { continue };
        if s.len() > COMPLETENESS_ELEMENTS {
            continue;
        }
        let t2 = if rng.gen_bool(0.5) {
            let nf = term_to_cqnf(&th, &t).expect("valid term");
            let atoms = nf.atoms.iter().filter(|_| rng.gen_bool(0.6)).cloned().collect();
            let weaker = CQNF { atoms, ..nf };
            let mut t2 = cqnf_to_term(&weaker);
            if rng.gen_bool(0.5) {
                if let Ok((u, _)) = crate::terms::rewrite(
                    &crate::terms::TheoryCalculus::new(th.clone()),
                    &crate::terms::Rule::Break(gen::random_typed(&mut rng, t2.wiring.shells().to_vec(), c.clone(), &[Sort::from("X")])),
                    &t2,
                ) {
                    t2 = u;
                }
            }
            t2
        } else {
            gen::random_atomic_term(&mut rng, &th, c, 3)
        };
        out.push((t, t2));
    }
    out
}

/// `entails_free` agrees with containment of answer sets in every model on
/// at most as many elements as the left term's canonical structure.
pub fn entail_completeness(samples: usize, seed: u64) -> LawResult {
    let mut t = Tally::new("entail", format!("free entailment is semantic containment ({samples} random pairs)"));
    let th = entail_theory();
    let mut positives = 0;
    for (a, b) in completeness_pairs(samples, seed) {
        let run = || -> Result<(bool, bool)> {
            let fast = entails_free(&th, &a, &b)?;
            let fa = Flat::of(&term_to_cqnf(&th, &a)?);
            let fb = Flat::of(&term_to_cqnf(&th, &b)?);
            let bound = fa.vars;
            Ok((fast, contained_everywhere(&fa, &fb, a.out().len(), bound)))
        };
        match run() {
            Ok((fast, slow)) => {
                positives += usize::from(fast);
                t.check(fast == slow, || format!("engine {fast}, models {slow} on {} vs {}", a.wiring, b.wiring));
            }
            Err(e) => t.fail(e.to_string()),
        }
    }
    let mut r = t.done();
    if r.passed {
        r.detail = format!("{positives} entailed");
    }
    r
}

type PrdObj = SynObject<Subset>;

fn prd_objects(calc: &PrdCalculus) -> Vec<PrdObj> {
    let mut out = Vec::new();
    for c in [vec![], ctx(&["X"])] {
        for p in calc.all_subsets(&c).expect("small") {
            out.push(SynObject::new(c.clone(), p));
        }
    }
    out
}

fn prd_homs(calc: &PrdCalculus, a: &PrdObj, b: &PrdObj) -> Vec<SynMorphism<Subset>> {
    let bound = calc.boxplus(&a.context, &a.pred, &b.context, &b.pred);
    let elems: Vec<Vec<usize>> = bound.into_iter().collect();
    subsets_of(&elems)
        .into_iter()
        .map(|theta| SynMorphism::new(calc, a.clone(), b.clone(), theta).expect("below the bound"))
        .collect()
}

/// Category laws, certification of composites and the supply laws of
/// `Syn(Prd(Rel))`, exhaustively on carriers of size `≤ max`.
pub fn syn_prd_laws(max: usize) -> Vec<LawResult> {
    let mut cat = Tally::new("syn", format!("Syn is a category (carriers ≤ {max})"));
    let mut cert = Tally::new("syn", format!("composites satisfy the hom condition (carriers ≤ {max})"));
    let mut supply = Tally::new("syn", format!("supply laws in Syn (carriers ≤ {max})"));
    for n in 0..=max {
        let calc = PrdCalculus::uniform(&["X"], n);
        let objs = prd_objects(&calc);
        let homs: Vec<Vec<Vec<SynMorphism<Subset>>>> =
            objs.iter().map(|a| objs.iter().map(|b| prd_homs(&calc, a, b)).collect()).collect();
        let ids: Vec<SynMorphism<Subset>> = objs.iter().map(|o| syn_identity(&calc, o).expect("identity")).collect();
        let k = objs.len();
        for i in 0..k {
            for j in 0..k {
                for f in &homs[i][j] {
                    let l = syn_compose(&calc, &ids[i], f).expect("composable");
                    let r = syn_compose(&calc, f, &ids[j]).expect("composable");
                    cat.check(l.theta == f.theta && r.theta == f.theta, || format!("unit law fails at {:?}", f.theta));
                    for l2 in 0..k {
                        for g in &homs[j][l2] {
                            let fg = match syn_compose(&calc, f, g) {
                                Ok(fg) => fg,
                                Err(e) => {
                                    cert.fail(e.to_string());
                                    continue;
                                }
                            };
                            // independent relational composite
                            let na = objs[i].context.len();
                            let want: Subset = f
                                .theta
                                .iter()
                                .flat_map(|x| {
                                    g.theta.iter().filter(move |y| x[na..] == y[..x.len() - na]).map(move |y| {
                                        [&x[..na], &y[x.len() - na..]].concat()
                                    })
                                })
                                .collect();
                            cat.check(fg.theta == want, || format!("{:?} ⨾ {:?} = {:?}", f.theta, g.theta, fg.theta));
                            cert.check(fg.certificate == Leq::Yes && !fg.unchecked, || format!("{:?} uncertified", fg.theta));
                            for l3 in 0..k {
                                for h in &homs[l2][l3] {
                                    let a = syn_compose(&calc, &fg, h).expect("composable");
                                    let gh = syn_compose(&calc, g, h).expect("composable");
                                    let b = syn_compose(&calc, f, &gh).expect("composable");
                                    cat.check(a.theta == b.theta, || "associativity".into());
                                }
                            }
                        }
                    }
                }
            }
        }
        for o in &objs {
            let run = || -> Result<Vec<(&'static str, bool)>> {
                let d = syn_supply(&calc, o, SupplyKind::Delta)?;
                let m = syn_supply(&calc, o, SupplyKind::Mu)?;
                let e = syn_supply(&calc, o, SupplyKind::Epsilon)?;
                let h = syn_supply(&calc, o, SupplyKind::Eta)?;
                let id = syn_identity(&calc, o)?;
                let pair = syn_tensor_obj(&calc, o, o);
                let id2 = syn_identity(&calc, &pair)?;
                let unit = SynObject::new(vec![], calc.truth_unit());
                let id0 = syn_identity(&calc, &unit)?;
                let special = syn_compose(&calc, &d, &m)?.theta == id.theta;
                let md = syn_compose(&calc, &m, &d)?;
                let left = syn_compose(&calc, &syn_tensor(&calc, &d, &id)?, &syn_tensor(&calc, &id, &m)?)?;
                let right = syn_compose(&calc, &syn_tensor(&calc, &id, &d)?, &syn_tensor(&calc, &m, &id)?)?;
                let frob = left.theta == md.theta && right.theta == md.theta;
                let counit = syn_compose(&calc, &d, &syn_tensor(&calc, &e, &id)?)?.theta == id.theta;
                let unitl = syn_compose(&calc, &syn_tensor(&calc, &h, &id)?, &m)?.theta == id.theta;
                let adj1 = id.theta.is_subset(&syn_compose(&calc, &e, &h)?.theta);
                let adj2 = syn_compose(&calc, &h, &e)?.theta.is_subset(&id0.theta);
                let adj3 = md.theta.is_subset(&id2.theta);
                Ok(vec![
                    ("special", special),
                    ("frobenius", frob),
                    ("counit", counit),
                    ("unit", unitl),
                    ("id ≤ ε⨾η", adj1),
                    ("η⨾ε ≤ id", adj2),
                    ("μ⨾δ ≤ id", adj3),
                ])
            };
            match run() {
                Ok(checks) => {
                    for (name, ok) in checks {
                        supply.check(ok, || format!("{name} fails at {:?} on {}", o.pred, crate::typed::show_ctx(&o.context)));
                    }
                }
                Err(e) => supply.fail(e.to_string()),
            }
        }
    }
    vec![cat.done(), cert.done(), supply.done()]
}

/// Syn of a meet-semilattice: composition is meet and the category laws
/// hold, for every bounded meet-semilattice on at most `max` elements.
pub fn meet_semilattice_laws(max: usize) -> LawResult {
    let mut t = Tally::new("syn", format!("Syn of a meet-semilattice (≤ {max} elements)"));
    for size in 1..=max {
        for l in MeetSemilattice::enumerate(size) {
            let objs: Vec<SynObject<usize>> = (0..size).map(|a| SynObject::new(vec![], a)).collect();
            let homs = |a: &SynObject<usize>, b: &SynObject<usize>| -> Vec<SynMorphism<usize>> {
                (0..size)
                    .filter(|&x| l.leq(x, l.meet_of(a.pred, b.pred)))
                    .map(|x| SynMorphism::new(&l, a.clone(), b.clone(), x).expect("certified"))
                    .collect()
            };
            for a in &objs {
                let id = syn_identity(&l, a).expect("identity");
                t.check(id.theta == a.pred, || format!("identity on {} is {}", a.pred, id.theta));
                for b in &objs {
                    for f in homs(a, b) {
                        for c in &objs {
                            for g in homs(b, c) {
                                let fg = syn_compose(&l, &f, &g).expect("composable");
                                t.check(fg.theta == l.meet_of(f.theta, g.theta) && fg.certificate == Leq::Yes, || {
                                    format!("{} ⨾ {} = {}", f.theta, g.theta, fg.theta)
                                });
                            }
                        }
                        let r = syn_compose(&l, &f, &syn_identity(&l, b).expect("identity")).expect("composable");
                        t.check(r.theta == f.theta, || "right unit".into());
                    }
                }
            }
        }
    }
    t.done()
}

/// Graphical equalizers and images of function graphs against pointwise
/// computation, for all pairs of functions between carriers of size `≤ max`.
pub fn limits_prd(max: usize) -> LawResult {
    let mut t = Tally::new("syn", format!("equalizers and images of maps (carriers ≤ {max})"));
    for a in 0..=max {
        for b in 0..=max {
            let calc = PrdCalculus::new(BTreeMap::from([(Sort::from("X"), a), (Sort::from("Y"), b)]));
            let src = SynObject::new(ctx(&["X"]), all_tuples(a, 1).into_iter().collect());
            let dst = SynObject::new(ctx(&["Y"]), all_tuples(b, 1).into_iter().collect());
            let funcs = all_tuples(b, a);
            let maps: Vec<SynMorphism<Subset>> = funcs
                .iter()
                .map(|f| {
                    let theta = f.iter().enumerate().map(|(x, &y)| vec![x, y]).collect();
                    SynMorphism::new(&calc, src.clone(), dst.clone(), theta).expect("graph is below")
                })
                .collect();
            for (fh, h) in funcs.iter().zip(&maps) {
                t.check(prd_is_map(h), || format!("{fh:?} not recognized as a map"));
                let image: Subset = fh.iter().map(|&y| vec![y]).collect();
                match graphical_limits_prd(&calc, h, h, LimitKind::Image) {
                    Ok(o) => t.check(o.pred == image, || format!("image of {fh:?}: {:?}", o.pred)),
                    Err(e) => t.fail(e.to_string()),
                }
                for (fk, k) in funcs.iter().zip(&maps) {
                    let agree: Subset = (0..a).filter(|&x| fh[x] == fk[x]).map(|x| vec![x]).collect();
                    match graphical_limits_prd(&calc, h, k, LimitKind::Equalizer) {
                        Ok(o) => t.check(o.pred == agree, || format!("equalizer of {fh:?}, {fk:?}: {:?}", o.pred)),
                        Err(e) => t.fail(e.to_string()),
                    }
                }
            }
        }
    }
    t.done()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bell_numbers() {
        assert_eq!((0..7).map(bell).collect::<Vec<_>>(), vec![1, 1, 2, 5, 15, 52, 203]);
    }

    #[test]
    fn laws_are_well_typed() {
        for law in wiring_laws() {
            assert_eq!(law.lhs.arity().unwrap(), law.rhs.arity().unwrap(), "{law}");
        }
    }

    #[test]
    fn wiring_laws_hold() {
        let r = wiring_law_check();
        assert!(r.passed, "{r}");
    }

    #[test]
    fn expression_action_matches_known_images() {
        let th = sample_theory();
        let x = ctx(&["X"]);
        let p = Formula::atom("P", &[0, 1]);
        let merge = Expr::gen(Generator::Mu);
        let (c, phi) = act_expr(&th, &x, &merge, &p).unwrap();
        assert_eq!(c, x);
        assert_eq!(CQNF::of(&c, &phi), CQNF::of(&x, &Formula::atom("P", &[0, 0])));
        let swap = Expr::gen(Generator::Sigma);
        let (_, phi) = act_expr(&th, &x, &swap, &p).unwrap();
        assert_eq!(phi, Formula::atom("P", &[1, 0]));
    }

    #[test]
    fn scale_parsing() {
        assert_eq!(Scale::default().carriers, 2);
        assert_eq!(Scale::default().arity, 3);
    }
}
