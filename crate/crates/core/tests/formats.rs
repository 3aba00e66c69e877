//! Serialization round trips and DOT rendering.

use rand::Rng;

use grl::dot::{render_term, render_wiring};
use grl::gen;
use grl::io::{formula_term, formula_term_json, parse_raw_term};
use grl::relsem::Model;
use grl::typed::{Context, Port, Sort, TypedWiring};
use grl::wiring::WMor;

const CASES: u64 = 100;

fn sorts() -> Vec<Sort> {
    vec![Sort::from("X"), Sort::from("Y")]
}

#[test]
fn untyped_morphisms_round_trip() {
    let mut r = gen::rng(11);
    for _ in 0..CASES {
        let (m, n) = (r.gen_range(0..=3), r.gen_range(0..=3));
        let w = gen::random_wmor(&mut r, m, n);
        let text = serde_json::to_string(&w).unwrap();
        assert_eq!(serde_json::from_str::<WMor>(&text).unwrap(), w, "{text}");
    }
}

#[test]
fn sorted_wirings_round_trip() {
    let mut r = gen::rng(12);
    for _ in 0..CASES {
        let shells: Vec<Context> = (0..r.gen_range(0..=3)).map(|_| gen::random_context(&mut r, &sorts(), 3)).collect();
        let out = gen::random_context(&mut r, &sorts(), 3);
        let w = gen::random_typed(&mut r, shells, out, &sorts());
        let text = serde_json::to_string(&w).unwrap();
        assert_eq!(serde_json::from_str::<TypedWiring>(&text).unwrap(), w, "{text}");
    }
}

#[test]
fn formula_terms_round_trip() {
    let th = grl::laws::sample_theory();
    let all: Vec<Sort> = th.sorts.iter().cloned().collect();
    let mut r = gen::rng(13);
    for _ in 0..CASES {
        let out = gen::random_context(&mut r, &all, 3);
        let t = gen::random_atomic_term(&mut r, &th, out, 3);
        let text = formula_term_json(&t).unwrap().to_string();
        let back = formula_term(&th, &parse_raw_term(&text).unwrap()).unwrap();
        assert_eq!(back, t, "{text}");
    }
}

#[test]
fn models_round_trip() {
    let th = grl::laws::sample_theory();
    let mut r = gen::rng(14);
    for _ in 0..CASES {
        let m = gen::random_model(&mut r, &th, 3);
        let text = m.to_json(&th).unwrap().to_string();
        assert_eq!(Model::from_json(&text, &th).unwrap(), m, "{text}");
    }
}

#[test]
fn dot_is_deterministic_and_total() {
    let mut r = gen::rng(15);
    for _ in 0..CASES {
        // at most 10 ports in all
        let shells: Vec<Context> = (0..r.gen_range(0..=3)).map(|_| gen::random_context(&mut r, &sorts(), 2)).collect();
        let out = gen::random_context(&mut r, &sorts(), 4);
        let w = gen::random_typed(&mut r, shells, out, &sorts());
        assert!(w.ports().len() <= 10);
        let d = render_wiring(&w);
        assert_eq!(d, render_wiring(&w));
        assert!(d.starts_with("graph wiring {") && d.ends_with("}\n"));
        for (i, _) in w.shells().iter().enumerate() {
            assert!(d.contains(&format!("  s{i} [shape=circle")), "shell {i} missing:\n{d}");
        }
        for o in 0..w.out().len() {
            assert!(d.contains(&format!("    o{o} [shape=plaintext")), "out {o} missing:\n{d}");
        }
        let edges = d.lines().filter(|l| l.contains(" -- ")).count();
        let want: usize = w.blocks().iter().map(|b| if b.len() == 2 { 1 } else { b.len() }).sum();
        assert_eq!(edges, want, "{d}");
        for p in w.ports() {
            let node = match p {
                Port::Shell { s, .. } => format!("s{s}"),
                Port::Out { o } => format!("o{o}"),
            };
            assert!(d.lines().any(|l| l.contains(" -- ") && l.contains(&node)), "{p} unconnected:\n{d}");
        }
        assert_eq!(d.matches("shape=point").count(), w.blocks().iter().filter(|b| b.len() != 2).count() + w.floating().len());
    }
}

#[test]
fn term_rendering_labels_shells() {
    let th = grl::laws::sample_theory();
    let t = gen::random_atomic_term(&mut gen::rng(3), &th, vec![Sort::from("X")], 3);
    let d = render_term(&t, |i, f| f.show(t.shell_context(i).len()));
    for (i, f) in t.preds.iter().enumerate() {
        assert!(d.contains(&f.show(t.shell_context(i).len())), "{d}");
    }
    assert_eq!(d.matches("shape=circle").count(), t.preds.len());
}
