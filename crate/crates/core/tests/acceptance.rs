//! Acceptance run: one line per criterion with its verdict and wall time.
//! Exits non-zero if any criterion fails or overruns its time bound.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use grl::dsl::{parse_pred, parse_theory};
use grl::entail::{formula_entails_with_axioms, Verdict};
use grl::formulas::{act_wiring, normalize, Formula, Theory, CQNF};
use grl::laws::{self, LawResult};
use grl::relsem::Model;
use grl::terms::{cqnf_to_term, formula_to_term, term_to_cqnf, GraphicalTerm};
use grl::typed::{ctx, supply_gen, Port, TypedWiring};
use grl::wiring::{enum_homs, Generator};

const SEED: u64 = 0x5eed;

struct Outcome {
    passed: bool,
    detail: String,
}

impl From<LawResult> for Outcome {
    fn from(r: LawResult) -> Outcome {
        let detail = if r.detail.is_empty() {
            format!("{} ({} cases)", r.name, r.cases)
        } else {
            format!("{} ({} cases): {}", r.name, r.cases, r.detail)
        };
        Outcome { passed: r.passed, detail }
    }
}

fn all(results: Vec<LawResult>) -> Outcome {
    let passed = results.iter().all(|r| r.passed);
    let detail = results
        .iter()
        .map(|r| format!("{} [{} cases{}]", r.name, r.cases, if r.passed { String::new() } else { format!(", {}", r.detail) }))
        .collect::<Vec<_>>()
        .join("; ");
    Outcome { passed, detail }
}

fn ok(detail: impl Into<String>) -> Outcome {
    Outcome { passed: true, detail: detail.into() }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome { passed: false, detail: detail.into() }
}

/// Partitions of `n` labelled points, counted by restricted growth strings.
fn partitions_by_rgs(n: usize) -> usize {
    fn go(i: usize, n: usize, max: usize) -> usize {
        if i == n {
            return 1;
        }
        (0..=max + 1).map(|b| go(i + 1, n, max.max(b))).sum()
    }
    if n == 0 {
        1
    } else {
        go(1, n, 0)
    }
}

fn c1_hom_cardinalities() -> Outcome {
    let mut sizes = Vec::new();
    for total in 1..=5 {
        let want = partitions_by_rgs(total);
        for m in 0..=total {
            let got = enum_homs(m, total - m).map(|h| h.len()).unwrap_or(0);
            if got != want {
                return fail(format!("|W({m},{})| = {got}, expected {want}", total - m));
            }
        }
        sizes.push(want);
    }
    let zero = enum_homs(0, 0).map(|h| h.len()).unwrap_or(0);
    if zero != 2 {
        return fail(format!("|W(0,0)| = {zero}"));
    }
    let r = laws::hom_cardinalities(5);
    if !r.passed {
        return r.into();
    }
    ok(format!("|W(0,0)| = 2, Bell(1..5) = {sizes:?}"))
}

const PREORDER: &str = "theory Preorder
sort X
rel P : X X
axiom refl : [x:X] true |- P(x,x)
axiom trans : [x:X, z:X] exists y:X. P(x,y) /\\ P(y,z) |- P(x,z)
";

fn pred(th: &Theory, text: &str) -> (grl::typed::Context, Formula) {
    parse_pred(text, Some(th)).unwrap_or_else(|e| panic!("{text}: {e}"))
}

/// The countermodel satisfies the axioms and has a left tuple missing on the right.
fn genuine_countermodel(th: &Theory, m: &Model, c: &[grl::typed::Sort], a: &Formula, b: &Formula) -> bool {
    let holds = m.check_axioms(th).unwrap_or(false);
    let (l, r) = (m.eval_formula(c, a), m.eval_formula(c, b));
    holds && matches!((l, r), (Ok(l), Ok(r)) if !l.is_subset(&r))
}

fn c9_reproductions() -> Outcome {
    let th = parse_theory(PREORDER).expect("preorder parses");
    let (xx, eq) = pred(&th, "[x:X, x':X] x = x'");
    let (_, p) = pred(&th, "[x:X, x':X] P(x,x')");
    let top = Formula::True;
    let verdict = |a: &Formula, b: &Formula, depth| formula_entails_with_axioms(&th, &xx, a, b, depth, 2);

    if !matches!(verdict(&eq, &p, 4), Verdict::Proved) {
        return fail("[x=x'] |- P(x,x') not proved");
    }
    if !matches!(verdict(&p, &top, 4), Verdict::Proved) {
        return fail("P(x,x') |- true not proved");
    }
    for (a, b, what) in [(&p, &eq, "P(x,x') |- x=x'"), (&top, &p, "true |- P(x,x')")] {
        match verdict(a, b, 4) {
            Verdict::Refuted(m) if genuine_countermodel(&th, &m, &xx, a, b) => {}
            Verdict::Refuted(_) => return fail(format!("{what}: countermodel does not refute")),
            _ => return fail(format!("{what}: not refuted")),
        }
    }

    let (xz, chain) = pred(&th, "[x:X, z:X] exists y:X. exists w:X. P(x,y) /\\ P(y,w) /\\ P(w,z)");
    let (_, pxz) = pred(&th, "[x:X, z:X] P(x,z)");
    let depth = (1..=2).find(|&d| matches!(formula_entails_with_axioms(&th, &xz, &chain, &pxz, d, 2), Verdict::Proved));
    let Some(depth) = depth else {
        return fail("three-step transitivity not proved within chase depth 2");
    };
    let (_, two) = pred(&th, "[x:X, z:X] exists y:X. P(x,y) /\\ P(y,z)");
    if !matches!(formula_entails_with_axioms(&th, &xz, &two, &pxz, 1, 2), Verdict::Proved) {
        return fail("transitivity axiom not proved at depth 1");
    }

    let inhabited = Theory::new("Inhabited").with_sort("S");
    let w = supply_gen(Generator::Eta, &ctx(&["S"])).then(&supply_gen(Generator::Epsilon, &ctx(&["S"]))).expect("composable");
    let image = match act_wiring(&inhabited, &w, &Formula::True) {
        Ok(f) => f,
        Err(e) => return fail(format!("η⨾ε action: {e}")),
    };
    let exists_s = Formula::exists("S", Formula::True);
    if CQNF::of(&[], &image) != CQNF::of(&[], &exists_s) || CQNF::of(&[], &image) == CQNF::of(&[], &Formula::True) {
        return fail(format!("η⨾ε image is {}", image.show(0)));
    }

    let monoid = parse_theory("theory Monoid\nsort M\nrel star : M M M\nrel e : M\n").expect("monoid");
    let (mm, comm) = pred(&monoid, "[x:M, y:M] exists m:M. exists m':M. star(x,y,m) /\\ star(y,x,m') /\\ m = m'");
    let t = formula_to_term(&monoid, &mm, &comm).expect("term");
    let nf = normalize(&monoid, &mm, &comm).expect("normal form");
    if term_to_cqnf(&monoid, &t).ok().as_ref() != Some(&nf) {
        return fail("commutativity formula does not round-trip");
    }
    let stars = cqnf_to_term(&nf);
    if stars.preds.len() != 2 || stars.wiring.blocks().len() != 3 {
        return fail(format!("commutativity term has {} shells and {} wires", stars.preds.len(), stars.wiring.blocks().len()));
    }

    let cat = parse_theory(
        "theory Category\nsort O\nsort M\nrel dom : M O\nrel cod : M O\nrel id : O M\nrel comp : M M M\n",
    )
    .expect("category");
    let (fg, iso) = pred(
        &cat,
        "[f:M, g:M] exists h:M. exists k:M. exists x:O. exists x':O. exists y:O. exists y':O.
           dom(f,x) /\\ cod(f,y) /\\ dom(g,y') /\\ cod(g,x') /\\ x = x' /\\ y = y'
           /\\ comp(f,g,h) /\\ comp(g,f,k) /\\ id(x,h) /\\ id(y,k)",
    );
    let t = formula_to_term(&cat, &fg, &iso).expect("term");
    let nf = normalize(&cat, &fg, &iso).expect("normal form");
    if term_to_cqnf(&cat, &t).ok().as_ref() != Some(&nf) {
        return fail("isomorphism formula does not round-trip");
    }
    ok(format!(
        "[x=x'] < P < true strict, 3-chain transitivity at depth {depth}, η⨾ε gives {}, monoid and category formulas round-trip",
        image.show(0)
    ))
}

fn c10_worked_example() -> Outcome {
    let th = Theory::new("t")
        .with_sort("X")
        .with_rel("T1", &["X", "X", "X"])
        .with_rel("T2", &["X", "X", "X"])
        .with_rel("T3", &["X", "X", "X", "X"]);
    let s = Port::shell;
    let o = Port::out;
    // out ports: y, z, z', x, x', z''
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
    .expect("wiring");
    let t = GraphicalTerm::new(
        vec![Formula::atom("T1", &[0, 1, 2]), Formula::atom("T2", &[0, 1, 2]), Formula::atom("T3", &[0, 1, 2, 3])],
        w,
    )
    .expect("term");
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
    let want = normalize(&th, &ctx(&["X"; 6]), &psi).expect("ψ normalizes");
    match term_to_cqnf(&th, &t) {
        Ok(got) if got == want => ok(format!("ψ = {}", got.to_formula().show(6))),
        Ok(got) => fail(format!("got {}", got.to_formula().show(6))),
        Err(e) => fail(e.to_string()),
    }
}

fn main() {
    type Criterion = (&'static str, u64, Box<dyn Fn() -> Outcome>);
    let criteria: Vec<Criterion> = vec![
        ("hom-poset cardinalities", 1, Box::new(c1_hom_cardinalities)),
        ("generator laws, yanking and split-merge", 1, Box::new(|| laws::wiring_law_check().into())),
        ("composition is the cospan pushout", 30, Box::new(|| laws::pushout_agreement(3).into())),
        (
            "relations supply wiring laxly",
            60,
            Box::new(|| all(vec![laws::rel_law_check(3), laws::lax_homomorphism(3, 4, 500, SEED)])),
        ),
        ("tabulations", 30, Box::new(|| laws::tabulation(2, 3, 500, SEED).into())),
        ("predicate adjunctions", 10, Box::new(|| laws::prd_ajax(2).into())),
        ("free entailment completeness", 120, Box::new(|| laws::entail_completeness(200, SEED).into())),
        ("theory calculus functor laws", 60, Box::new(|| laws::theory_functor_laws(50, SEED).into())),
        ("preorder, inhabited, monoid and category examples", 30, Box::new(c9_reproductions)),
        ("three-shell worked example", 1, Box::new(c10_worked_example)),
        (
            "syntactic category laws",
            120,
            Box::new(|| {
                let mut rs = laws::syn_prd_laws(2);
                rs.push(laws::meet_semilattice_laws(4));
                all(rs)
            }),
        ),
        ("graphical equalizers and images", 10, Box::new(|| laws::limits_prd(3).into())),
    ];
    let mut failures = 0;
    for (i, (name, bound, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = run();
        let took = start.elapsed();
        let in_time = took <= Duration::from_secs(*bound);
        let passed = out.passed && in_time;
        failures += usize::from(!passed);
        let timing = if in_time { String::new() } else { format!(" OVER {bound}s BOUND") };
        println!(
            "{} {:>2}. {name} [{:.2}s / {bound}s{timing}] {}",
            if passed { "PASS" } else { "FAIL" },
            i + 1,
            took.as_secs_f64(),
            out.detail
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
