//! Seeded random generation of wirings, formulas and relations for law
//! checking and tests.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::formulas::{Formula, Theory};
use crate::partition::set_partitions;
use crate::relsem::{tuples, FinRel, Model};
use crate::terms::GraphicalTerm;
use crate::typed::{Context, Port, Sort, TypedWiring};
use crate::wiring::WMor;

pub type Rng64 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng64 {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A uniformly random restricted growth string of length `n`, as blocks.
fn random_partition<R: Rng>(rng: &mut R, n: usize) -> Vec<Vec<usize>> {
    let mut label = vec![0usize; n];
    let mut count = 0;
    for l in label.iter_mut() {
        let b = rng.gen_range(0..=count);
        *l = b;
        if b == count {
            count += 1;
        }
    }
    let mut blocks = vec![Vec::new(); count];
    for (x, &b) in label.iter().enumerate() {
        blocks[b].push(x);
    }
    blocks
}

/// A random morphism `m → n`; uniform over partitions when `m + n ≤ 6`.
pub fn random_wmor<R: Rng>(rng: &mut R, m: usize, n: usize) -> WMor {
    if m + n == 0 {
        return WMor::flag(rng.gen_bool(0.5));
    }
    let blocks = if m + n <= 6 {
        set_partitions(m + n).choose(rng).expect("nonempty").clone()
    } else {
        random_partition(rng, m + n)
    };
    WMor::from_blocks(m, n, blocks).expect("valid partition")
}

pub fn random_context<R: Rng>(rng: &mut R, sorts: &[Sort], max_len: usize) -> Context {
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| sorts.choose(rng).expect("sorts").clone()).collect()
}

/// A random sort-uniform wiring with the given shells and outer boundary.
pub fn random_typed<R: Rng>(rng: &mut R, shells: Vec<Context>, out: Context, sorts: &[Sort]) -> TypedWiring {
    let mut ports: Vec<(Port, Sort)> = Vec::new();
    for (s, c) in shells.iter().enumerate() {
        ports.extend(c.iter().enumerate().map(|(p, x)| (Port::shell(s, p), x.clone())));
    }
    ports.extend(out.iter().enumerate().map(|(o, x)| (Port::out(o), x.clone())));
    let mut blocks = Vec::new();
    for sort in sorts {
        let these: Vec<Port> = ports.iter().filter(|(_, x)| x == sort).map(|(p, _)| *p).collect();
        for b in random_partition(rng, these.len()) {
            blocks.push(b.into_iter().map(|i| these[i]).collect());
        }
    }
    let floating = sorts.iter().filter(|_| rng.gen_bool(0.2)).cloned().collect();
    TypedWiring::new(shells, out, blocks, floating).expect("random wiring is valid")
}

/// A random formula on `c` using the theory's relation symbols: up to
/// `atoms` atoms, a few equalities and existentials.
pub fn random_formula<R: Rng>(rng: &mut R, theory: &Theory, c: &[Sort], atoms: usize) -> Formula {
    let sorts: Vec<Sort> = theory.sorts.iter().cloned().collect();
    let rels: Vec<(&String, &Context)> = theory.relsyms.iter().collect();
    let mut env: Vec<Sort> = c.to_vec();
    let n_exists = rng.gen_range(0..=2);
    let mut bound = Vec::new();
    for _ in 0..n_exists {
        let s = sorts.choose(rng).expect("sorts").clone();
        env.push(s.clone());
        bound.push(s);
    }
    let pick = |rng: &mut R, s: &Sort| -> Option<usize> {
        let cands: Vec<usize> = (0..env.len()).filter(|&i| env[i] == *s).collect();
        cands.choose(rng).copied()
    };
    let mut parts = Vec::new();
    for _ in 0..rng.gen_range(0..=atoms) {
        let (r, ar) = rels.choose(rng).expect("relations");
        let args: Option<Vec<usize>> = ar.iter().map(|s| pick(rng, s)).collect();
        if let Some(args) = args {
            parts.push(Formula::Atom((*r).clone(), args));
        }
    }
    if !env.is_empty() && rng.gen_bool(0.3) {
        let a = rng.gen_range(0..env.len());
        if let Some(b) = pick(rng, &env[a].clone()) {
            parts.push(Formula::eq(a, b));
        }
    }
    parts.shuffle(rng);
    Formula::exists_all(&bound, Formula::conj(parts))
}

/// A random relation between sets of the given sizes, each pair present
/// with probability one half.
pub fn random_relation<R: Rng>(rng: &mut R, dom: usize, cod: usize) -> FinRel {
    let pairs: Vec<(usize, usize)> = (0..dom).flat_map(|a| (0..cod).map(move |b| (a, b))).collect();
    FinRel::new(dom, cod, pairs.into_iter().filter(|_| rng.gen_bool(0.5))).expect("pairs in range")
}

/// A random term of atomic shells: up to `atoms` shells, each an atom over
/// its own ports, wired to an outer boundary of `out`.
pub fn random_atomic_term<R: Rng>(rng: &mut R, theory: &Theory, out: Context, atoms: usize) -> GraphicalTerm<Formula> {
    let rels: Vec<(&String, &Context)> = theory.relsyms.iter().collect();
    let k = rng.gen_range(0..=atoms);
    let mut shells = Vec::new();
    let mut preds = Vec::new();
    for _ in 0..k {
        let (r, ar) = rels.choose(rng).expect("relations");
        shells.push((*ar).clone());
        preds.push(Formula::Atom((*r).clone(), (0..ar.len()).collect()));
    }
    let sorts: Vec<Sort> = theory.sorts.iter().cloned().collect();
    let w = random_typed(rng, shells, out, &sorts);
    GraphicalTerm::new(preds, w).expect("shell count matches")
}

/// A model with carriers of size `0..=max` and each tuple present with probability one half.
pub fn random_model<R: Rng>(rng: &mut R, theory: &Theory, max: usize) -> Model {
    let mut m = Model::default();
    for s in &theory.sorts {
        let n = rng.gen_range(0..=max);
        m.carriers.insert(s.clone(), (0..n).map(|i| format!("e{i}")).collect());
    }
    for (r, ar) in &theory.relsyms {
        let sizes: Vec<usize> = ar.iter().map(|s| m.carriers[s].len()).collect();
        let set = tuples(&sizes).into_iter().filter(|_| rng.gen_bool(0.5)).collect();
        m.rels.insert(r.clone(), set);
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::typed::ctx;

    #[test]
    fn seeded_generation_is_reproducible() {
        let th = Theory::new("t").with_sort("X").with_rel("P", &["X", "X"]);
        let a = random_formula(&mut rng(7), &th, &ctx(&["X"]), 3);
        let b = random_formula(&mut rng(7), &th, &ctx(&["X"]), 3);
        assert_eq!(a, b);
        th.check_formula(&ctx(&["X"]), &a).unwrap();
        let w = random_wmor(&mut rng(1), 2, 2);
        assert_eq!(w, random_wmor(&mut rng(1), 2, 2));
        let t = random_atomic_term(&mut rng(3), &th, ctx(&["X", "X"]), 3);
        assert_eq!(t.wiring.out(), &ctx(&["X", "X"]));
    }
}
