//! Property tests: structural invariants of wirings, the semantics of terms,
//! soundness of rewriting and of the chase.

use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::Rng;

use grl::entail::{formula_entails_with_axioms, Verdict};
use grl::formulas::{Formula, Theory};
use grl::gen::{self, Rng64};
use grl::relsem::{Model, Subset};
use grl::terms::{formula_to_term, represent, rewrite, GraphicalTerm, Relation, Rule, TheoryCalculus};
use grl::typed::{compose_at, ctx, name, supply_w, tensor_t, transpose, unname, Context, Sort, TypedWiring};
use grl::wiring::{compose_w, generator, leq_w, tensor_w, Generator, WMor};

fn sorts() -> Vec<Sort> {
    vec![Sort::from("X"), Sort::from("Y")]
}

fn one_shell<R: Rng>(rng: &mut R, max_len: usize) -> TypedWiring {
    let a = gen::random_context(rng, &sorts(), max_len);
    let b = gen::random_context(rng, &sorts(), max_len);
    gen::random_typed(rng, vec![a], b, &sorts())
}

/// A wiring `≥ w`: every block is split in two at random.
fn refine<R: Rng>(rng: &mut R, w: &WMor) -> WMor {
    let mut blocks = Vec::new();
    for b in w.blocks() {
        let (l, r): (Vec<usize>, Vec<usize>) = b.iter().partition(|_| rng.gen_bool(0.5));
        blocks.extend([l, r].into_iter().filter(|x| !x.is_empty()));
    }
    WMor::from_blocks(w.dom(), w.cod(), blocks).expect("refinement of a partition")
}

fn models(th: &Theory, max: usize) -> Vec<Model> {
    // every structure with one sort X of size 1..=max and a binary P
    let mut out = Vec::new();
    for n in 1..=max {
        let pairs: Vec<Vec<usize>> = (0..n).flat_map(|a| (0..n).map(move |b| vec![a, b])).collect();
        for mask in 0u32..(1 << pairs.len()) {
            let rel: BTreeSet<Vec<usize>> = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, p)| p.clone()).collect();
            let mut m = Model::with_sizes(&[("X", n)]);
            m.rels.insert("P".into(), rel);
            if m.check_axioms(th).unwrap() {
                out.push(m);
            }
        }
    }
    out
}

fn preorder() -> Theory {
    grl::dsl::parse_theory(
        "theory Preorder\nsort X\nrel P : X X\naxiom refl : [x:X] true |- P(x,x)\naxiom trans : [x:X, z:X] exists y:X. P(x,y) /\\ P(y,z) |- P(x,z)\n",
    )
    .unwrap()
}

fn rng(seed: u64) -> Rng64 {
    gen::rng(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn per_sort_round_trip(seed in any::<u64>()) {
        let mut r = rng(seed);
        let shells: Vec<Context> = (0..r.gen_range(0..3)).map(|_| gen::random_context(&mut r, &sorts(), 3)).collect();
        let out = gen::random_context(&mut r, &sorts(), 3);
        let w = gen::random_typed(&mut r, shells.clone(), out.clone(), &sorts());
        let back = TypedWiring::from_per_sort(shells, out, &w.per_sort()).unwrap();
        prop_assert_eq!(back, w);
    }

    #[test]
    fn nesting_is_per_sort_composition(seed in any::<u64>()) {
        let mut r = rng(seed);
        let inner = one_shell(&mut r, 3);
        let mid = inner.out().clone();
        let out = gen::random_context(&mut r, &sorts(), 3);
        let outer = gen::random_typed(&mut r, vec![mid], out, &sorts());
        let nested = compose_at(&outer, 0, &inner).unwrap();
        for s in sorts() {
            let want = compose_w(&inner.restrict(&s), &outer.restrict(&s)).unwrap();
            prop_assert_eq!(nested.restrict(&s), want, "sort {}", s);
        }
    }

    #[test]
    fn composition_is_associative(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n: Vec<usize> = (0..4).map(|_| r.gen_range(0..=3)).collect();
        let f = gen::random_wmor(&mut r, n[0], n[1]);
        let g = gen::random_wmor(&mut r, n[1], n[2]);
        let h = gen::random_wmor(&mut r, n[2], n[3]);
        let left = compose_w(&compose_w(&f, &g).unwrap(), &h).unwrap();
        let right = compose_w(&f, &compose_w(&g, &h).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn interchange(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n: Vec<usize> = (0..6).map(|_| r.gen_range(0..=2)).collect();
        let f = gen::random_wmor(&mut r, n[0], n[1]);
        let h = gen::random_wmor(&mut r, n[1], n[2]);
        let g = gen::random_wmor(&mut r, n[3], n[4]);
        let k = gen::random_wmor(&mut r, n[4], n[5]);
        let left = compose_w(&tensor_w(&f, &g), &tensor_w(&h, &k)).unwrap();
        let right = tensor_w(&compose_w(&f, &h).unwrap(), &compose_w(&g, &k).unwrap());
        prop_assert_eq!(left, right);
    }

    #[test]
    fn transpose_and_name_are_involutions(seed in any::<u64>()) {
        let mut r = rng(seed);
        let w = one_shell(&mut r, 3);
        prop_assert_eq!(transpose(&transpose(&w).unwrap()).unwrap(), w.clone());
        let split = w.shells()[0].len();
        prop_assert_eq!(unname(&name(&w).unwrap(), split).unwrap(), w);
    }

    #[test]
    fn yanking_on_any_context(seed in any::<u64>()) {
        let mut r = rng(seed);
        let c = gen::random_context(&mut r, &sorts(), 3);
        let id = TypedWiring::identity(&c);
        let cup = supply_w(&generator(Generator::Cup), &c);
        let cap = supply_w(&generator(Generator::Cap), &c);
        let left = tensor_t(&id, &cup).merge_shells();
        let right = tensor_t(&cap, &id).merge_shells();
        prop_assert_eq!(left.then(&right).unwrap(), id.clone());
        let left = tensor_t(&cup, &id).merge_shells();
        let right = tensor_t(&id, &cap).merge_shells();
        prop_assert_eq!(left.then(&right).unwrap(), id);
    }

    #[test]
    fn composition_is_monotone(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n: Vec<usize> = (0..3).map(|_| r.gen_range(1..=3)).collect();
        let f = gen::random_wmor(&mut r, n[0], n[1]);
        let g = gen::random_wmor(&mut r, n[1], n[2]);
        let (f2, g2) = (refine(&mut r, &f), refine(&mut r, &g));
        prop_assert!(leq_w(&f, &f2).unwrap() && leq_w(&g, &g2).unwrap());
        let (a, b) = (compose_w(&f, &g).unwrap(), compose_w(&f2, &g2).unwrap());
        prop_assert!(leq_w(&a, &b).unwrap(), "{} ≰ {}", a, b);
        prop_assert!(leq_w(&tensor_w(&f, &g), &tensor_w(&f2, &g2)).unwrap());
    }

    #[test]
    fn model_evaluation_matches_relational_terms(seed in any::<u64>()) {
        let mut r = rng(seed);
        let th = grl::laws::sample_theory();
        let m = gen::random_model(&mut r, &th, 2);
        let out = gen::random_context(&mut r, &th.sorts.iter().cloned().collect::<Vec<_>>(), 3);
        let t = gen::random_atomic_term(&mut r, &th, out, 3);
        let calc = m.calculus();
        let preds: Vec<Subset> = t.preds.iter().enumerate().map(|(i, f)| m.eval_formula(t.shell_context(i), f).unwrap()).collect();
        let rel = GraphicalTerm::new(preds, t.wiring.clone()).unwrap();
        prop_assert_eq!(m.eval_term(&t).unwrap(), represent(&calc, &rel).unwrap());
    }

    #[test]
    fn rewrites_are_sound(seed in any::<u64>()) {
        let mut r = rng(seed);
        let th = grl::laws::entail_theory();
        let calc = TheoryCalculus::new(th.clone());
        let out = ctx(&["X"; 2]);
        let t = gen::random_atomic_term(&mut r, &th, out.clone(), 3);
        let mut rules: Vec<Rule<Formula>> = vec![Rule::Discard];
        let broken = gen::random_typed(&mut r, t.wiring.shells().to_vec(), out.clone(), &[Sort::from("X")]);
        if t.wiring.leq(&broken).unwrap() {
            rules.push(Rule::Break(broken));
        }
        if !t.preds.is_empty() {
            let i = r.gen_range(0..t.preds.len());
            rules.push(Rule::Monotone { shell: i, pred: Formula::True });
            let c = t.shell_context(i).clone();
            let inner = formula_to_term(&th, &c, &t.preds[i]).unwrap();
            rules.push(Rule::Nest { shell: i, inner });
        }
        for rule in rules {
            let (t2, rel) = rewrite(&calc, &rule, &t).unwrap();
            for _ in 0..5 {
                let m = gen::random_model(&mut r, &th, 2);
                let (a, b) = (m.eval_term(&t).unwrap(), m.eval_term(&t2).unwrap());
                match rel {
                    Relation::Equal => prop_assert_eq!(&a, &b, "{:?}", rule),
                    Relation::Entails => prop_assert!(a.is_subset(&b), "{:?}", rule),
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn chase_verdicts_are_sound(seed in any::<u64>()) {
        let mut r = rng(seed);
        let th = preorder();
        let c = ctx(&["X"; 2]);
        let a = gen::random_formula(&mut r, &th, &c, 3);
        let b = gen::random_formula(&mut r, &th, &c, 2);
        match formula_entails_with_axioms(&th, &c, &a, &b, 3, 2) {
            Verdict::Proved => {
                for m in models(&th, 2) {
                    let (l, rr) = (m.eval_formula(&c, &a).unwrap(), m.eval_formula(&c, &b).unwrap());
                    prop_assert!(l.is_subset(&rr), "proved {} |- {} fails in {:?}", a.show(2), b.show(2), m);
                }
            }
            Verdict::Refuted(m) => {
                prop_assert!(m.check_axioms(&th).unwrap());
                let (l, rr) = (m.eval_formula(&c, &a).unwrap(), m.eval_formula(&c, &b).unwrap());
                prop_assert!(!l.is_subset(&rr));
            }
            Verdict::Unknown => {}
        }
    }
}
