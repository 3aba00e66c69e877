//! Entailment between conjunctive formulas and graphical terms.
//!
//! In the free theory `t ⊢ t′` holds exactly when the canonical structure
//! of `t′` maps homomorphically into that of `t`, fixing the distinguished
//! tuple. With axioms, a restricted chase saturates the canonical structure
//! of `t` before the same test, and a bounded search looks for countermodels.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::formulas::{Formula, Theory, CQNF};
use crate::relsem::{tuples, Model};
use crate::terms::{term_to_cqnf, GraphicalTerm};
use crate::typed::{show_ctx, Sort};

/// The frozen model of a conjunctive query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalStructure {
    pub sorts: Vec<Sort>,
    pub facts: BTreeSet<(String, Vec<usize>)>,
    pub distinguished: Vec<usize>,
}

impl CanonicalStructure {
    /// One element per context block, per existential variable and per
    /// floating sort; one fact per atom.
    pub fn of_cqnf(nf: &CQNF) -> CanonicalStructure {
        let n = nf.context.len();
        let mut sorts = Vec::new();
        let mut elem: HashMap<usize, usize> = HashMap::new();
        for b in &nf.merge {
            if b[0] < n {
                elem.insert(b[0], sorts.len());
                sorts.push(nf.context[b[0]].clone());
            }
        }
        for (k, s) in nf.exist_vars.iter().enumerate() {
            elem.insert(n + k, sorts.len());
            sorts.push(s.clone());
        }
        sorts.extend(nf.floating.iter().cloned());
        let facts = nf.atoms.iter().map(|(r, a)| (r.clone(), a.iter().map(|x| elem[x]).collect())).collect();
        let distinguished = (0..n).map(|i| elem[&nf.context_block(i)[0]]).collect();
        CanonicalStructure { sorts, facts, distinguished }
    }

    pub fn len(&self) -> usize {
        self.sorts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sorts.is_empty()
    }

    /// The structure as a model: each sort's carrier lists its elements.
    pub fn to_model(&self, theory: &Theory) -> Model {
        let mut carriers: BTreeMap<Sort, Vec<String>> = theory.sorts.iter().map(|s| (s.clone(), vec![])).collect();
        let mut local = Vec::with_capacity(self.len());
        for (e, s) in self.sorts.iter().enumerate() {
            let c = carriers.entry(s.clone()).or_default();
            local.push(c.len());
            c.push(format!("e{e}"));
        }
        let mut rels: BTreeMap<String, BTreeSet<Vec<usize>>> = theory.relsyms.keys().map(|r| (r.clone(), BTreeSet::new())).collect();
        for (r, a) in &self.facts {
            rels.entry(r.clone()).or_default().insert(a.iter().map(|&e| local[e]).collect());
        }
        Model { carriers, rels }
    }
}

/// The canonical structure of a term over theory formulas.
pub fn canonical_structure(theory: &Theory, t: &GraphicalTerm<Formula>) -> Result<CanonicalStructure> {
    Ok(CanonicalStructure::of_cqnf(&term_to_cqnf(theory, t)?))
}

/// Backtracking homomorphism search from `from` into `to`, extending the
/// partial assignment `fixed`. Elements are tried in order of descending
/// fact degree; candidates in increasing order. `visit` receives each
/// homomorphism and returns whether to continue.
pub fn for_each_hom(
    from: &CanonicalStructure,
    to: &CanonicalStructure,
    fixed: &[(usize, usize)],
    visit: &mut dyn FnMut(&[usize]) -> bool,
) {
    let n = from.len();
    let mut assign: Vec<Option<usize>> = vec![None; n];
    for &(a, b) in fixed {
        if from.sorts[a] != to.sorts[b] {
            return;
        }
        match assign[a] {
            Some(prev) if prev != b => return,
            _ => assign[a] = Some(b),
        }
    }
    let from_facts: Vec<&(String, Vec<usize>)> = from.facts.iter().collect();
    let mut by_rel: HashMap<&str, Vec<&Vec<usize>>> = HashMap::new();
    for (r, a) in &to.facts {
        by_rel.entry(r.as_str()).or_default().push(a);
    }
    let mut touching: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (fi, (_, a)) in from_facts.iter().enumerate() {
        for &e in a {
            if touching[e].last() != Some(&fi) {
                touching[e].push(fi);
            }
        }
    }
    let consistent = |assign: &[Option<usize>], fi: usize| -> bool {
        let (r, a) = from_facts[fi];
        by_rel.get(r.as_str()).is_some_and(|cands| {
            cands.iter().any(|c| a.iter().zip(c.iter()).all(|(&x, &y)| assign[x].is_none_or(|v| v == y)))
        })
    };
    for fi in 0..from_facts.len() {
        if from_facts[fi].1.iter().all(|&e| assign[e].is_some()) && !consistent(&assign, fi) {
            return;
        }
    }
    let mut order: Vec<usize> = (0..n).filter(|&e| assign[e].is_none()).collect();
    order.sort_by_key(|&e| (std::cmp::Reverse(touching[e].len()), e));
    let candidates: Vec<Vec<usize>> = (0..n)
        .map(|e| (0..to.len()).filter(|&y| to.sorts[y] == from.sorts[e]).collect())
        .collect();

    fn go(
        k: usize,
        order: &[usize],
        assign: &mut Vec<Option<usize>>,
        candidates: &[Vec<usize>],
        touching: &[Vec<usize>],
        consistent: &dyn Fn(&[Option<usize>], usize) -> bool,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if k == order.len() {
            let h: Vec<usize> = assign.iter().map(|v| v.expect("assigned")).collect();
            return visit(&h);
        }
        let e = order[k];
        for &y in &candidates[e] {
            assign[e] = Some(y);
            if touching[e].iter().all(|&fi| consistent(assign, fi))
                && !go(k + 1, order, assign, candidates, touching, consistent, visit)
            {
                assign[e] = None;
                return false;
            }
        }
        assign[e] = None;
        true
    }
    go(0, &order, &mut assign, &candidates, &touching, &consistent, visit);
}

/// The least homomorphism fixing the distinguished tuples, if any.
pub fn find_hom(from: &CanonicalStructure, to: &CanonicalStructure) -> Option<Vec<usize>> {
    if from.distinguished.len() != to.distinguished.len() {
        return None;
    }
    let fixed: Vec<(usize, usize)> = from.distinguished.iter().copied().zip(to.distinguished.iter().copied()).collect();
    let mut found = None;
    for_each_hom(from, to, &fixed, &mut |h| {
        found = Some(h.to_vec());
        false
    });
    found
}

/// `a ⊢ b` on context `c` in the free theory.
pub fn formula_entails_free(c: &[Sort], a: &Formula, b: &Formula) -> bool {
    let sa = CanonicalStructure::of_cqnf(&CQNF::of(c, a));
    let sb = CanonicalStructure::of_cqnf(&CQNF::of(c, b));
    find_hom(&sb, &sa).is_some()
}

fn same_boundary(t: &GraphicalTerm<Formula>, u: &GraphicalTerm<Formula>) -> Result<()> {
    if t.out() != u.out() {
        return Err(Error::ContextMismatch { expected: show_ctx(t.out()), found: show_ctx(u.out()) });
    }
    Ok(())
}

/// `⟦t⟧ ⊢ ⟦t′⟧` in the free theory.
pub fn entails_free(theory: &Theory, t: &GraphicalTerm<Formula>, t2: &GraphicalTerm<Formula>) -> Result<bool> {
    same_boundary(t, t2)?;
    let s = canonical_structure(theory, t)?;
    let s2 = canonical_structure(theory, t2)?;
    Ok(find_hom(&s2, &s).is_some())
}

/// Outcome of entailment modulo axioms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Proved,
    /// A model of the axioms in which the left side does not entail the right.
    Refuted(Model),
    Unknown,
}

pub fn entails_with_axioms(
    theory: &Theory,
    t: &GraphicalTerm<Formula>,
    t2: &GraphicalTerm<Formula>,
    depth: usize,
    model_size: usize,
) -> Result<Verdict> {
    same_boundary(t, t2)?;
    let a = term_to_cqnf(theory, t)?;
    let b = term_to_cqnf(theory, t2)?;
    Ok(chase_verdict(theory, &a, &b, depth, model_size))
}

/// `a ⊢ b` on context `c` modulo the theory's axioms.
pub fn formula_entails_with_axioms(theory: &Theory, c: &[Sort], a: &Formula, b: &Formula, depth: usize, model_size: usize) -> Verdict {
    chase_verdict(theory, &CQNF::of(c, a), &CQNF::of(c, b), depth, model_size)
}

/// Largest structure the chase may build before giving up.
const CHASE_LIMIT: usize = 256;

struct Trigger {
    lhs: CanonicalStructure,
    rhs: CanonicalStructure,
}

fn chase_verdict(theory: &Theory, a: &CQNF, b: &CQNF, depth: usize, model_size: usize) -> Verdict {
    let goal = CanonicalStructure::of_cqnf(b);
    let triggers: Vec<Trigger> = theory
        .axioms
        .iter()
        .map(|ax| Trigger {
            lhs: CanonicalStructure::of_cqnf(&CQNF::of(&ax.context, &ax.lhs)),
            rhs: CanonicalStructure::of_cqnf(&CQNF::of(&ax.context, &ax.rhs)),
        })
        .collect();
    let mut s = CanonicalStructure::of_cqnf(a);
    let mut fixpoint = false;
    for round in 0..=depth {
        if find_hom(&goal, &s).is_some() {
            return Verdict::Proved;
        }
        if round == depth {
            break;
        }
        match chase_round(&mut s, &triggers) {
            Some(false) => {
                fixpoint = true;
                break;
            }
            Some(true) => {}
            None => break,
        }
    }
    if fixpoint {
        let m = s.to_model(theory);
        if m.carriers.values().all(|c| c.len() <= model_size) {
            return Verdict::Refuted(m);
        }
    }
    match search_countermodel(theory, a, b, model_size) {
        Some(m) => Verdict::Refuted(m),
        None => Verdict::Unknown,
    }
}

/// One round of the restricted chase. Returns whether anything changed, or
/// `None` when the structure outgrew [`CHASE_LIMIT`].
fn chase_round(s: &mut CanonicalStructure, triggers: &[Trigger]) -> Option<bool> {
    let mut changed = false;
    for tr in triggers {
        let mut matches: BTreeSet<Vec<usize>> = BTreeSet::new();
        for_each_hom(&tr.lhs, s, &[], &mut |h| {
            matches.insert(tr.lhs.distinguished.iter().map(|&e| h[e]).collect());
            true
        });
        let mut pending: Vec<Vec<usize>> = matches.into_iter().collect();
        while let Some(m) = pending.pop() {
            let fixed: Vec<(usize, usize)> = tr.rhs.distinguished.iter().copied().zip(m.iter().copied()).collect();
            let mut satisfied = false;
            for_each_hom(&tr.rhs, s, &fixed, &mut |_| {
                satisfied = true;
                false
            });
            if satisfied {
                continue;
            }
            changed = true;
            if let Some(remap) = apply_trigger(s, &tr.rhs, &m) {
                for p in pending.iter_mut() {
                    for e in p.iter_mut() {
                        *e = remap[*e];
                    }
                }
            }
            if s.len() > CHASE_LIMIT {
                return None;
            }
        }
    }
    Some(changed)
}

/// Adjoins the right side of a sequent at the match `m`; returns the
/// element renumbering when equalities merged elements.
fn apply_trigger(s: &mut CanonicalStructure, rhs: &CanonicalStructure, m: &[usize]) -> Option<Vec<usize>> {
    let mut image: Vec<Option<usize>> = vec![None; rhs.len()];
    let mut merges: Vec<(usize, usize)> = Vec::new();
    for (&r, &x) in rhs.distinguished.iter().zip(m) {
        match image[r] {
            Some(y) if y != x => merges.push((y, x)),
            _ => image[r] = Some(x),
        }
    }
    for (e, slot) in image.iter_mut().enumerate() {
        if slot.is_none() {
            *slot = Some(s.sorts.len());
            s.sorts.push(rhs.sorts[e].clone());
        }
    }
    for (r, a) in &rhs.facts {
        s.facts.insert((r.clone(), a.iter().map(|&e| image[e].expect("mapped")).collect()));
    }
    if merges.is_empty() {
        return None;
    }
    let mut uf = crate::partition::UnionFind::new(s.len());
    for (x, y) in merges {
        uf.union(x, y);
    }
    let blocks = uf.blocks();
    let mut remap = vec![0; s.len()];
    for (k, b) in blocks.iter().enumerate() {
        for &e in b {
            remap[e] = k;
        }
    }
    s.sorts = blocks.iter().map(|b| s.sorts[b[0]].clone()).collect();
    s.facts = s.facts.iter().map(|(r, a)| (r.clone(), a.iter().map(|&e| remap[e]).collect())).collect();
    s.distinguished = s.distinguished.iter().map(|&e| remap[e]).collect();
    Some(remap)
}

/// Total relation-table bits the countermodel search will enumerate per
/// carrier assignment.
const SEARCH_BITS: usize = 20;

/// Finds a model of the axioms, with every carrier of size at most `max`,
/// in which `a` holds at some tuple where `b` fails. Carriers are tried in
/// increasing total size.
pub fn search_countermodel(theory: &Theory, a: &CQNF, b: &CQNF, max: usize) -> Option<Model> {
    let mut sorts: BTreeSet<Sort> = theory.sorts.clone();
    sorts.extend(a.context.iter().cloned());
    let sorts: Vec<Sort> = sorts.into_iter().collect();
    let mut shapes = tuples(&vec![max + 1; sorts.len()]);
    shapes.sort_by_key(|v| (v.iter().sum::<usize>(), v.clone()));
    let af = a.to_formula();
    let bf = b.to_formula();
    let rels: Vec<(&String, &Vec<Sort>)> = theory.relsyms.iter().collect();
    for shape in shapes {
        let sizes: BTreeMap<Sort, usize> = sorts.iter().cloned().zip(shape.iter().copied()).collect();
        let cells: Vec<Vec<Vec<usize>>> = rels
            .iter()
            .map(|(_, ar)| tuples(&ar.iter().map(|s| sizes[s]).collect::<Vec<_>>()))
            .collect();
        if cells.iter().map(Vec::len).sum::<usize>() > SEARCH_BITS {
            continue;
        }
        let mut m = Model {
            carriers: sizes.iter().map(|(s, &n)| (s.clone(), (0..n).map(|i| i.to_string()).collect())).collect(),
            rels: BTreeMap::new(),
        };
        if let Some(found) = extend(theory, &rels, &cells, 0, &mut m, &a.context, &af, &bf) {
            return Some(found);
        }
    }
    None
}

#[allow(clippy::too_many_arguments)]
fn extend(
    theory: &Theory,
    rels: &[(&String, &Vec<Sort>)],
    cells: &[Vec<Vec<usize>>],
    k: usize,
    m: &mut Model,
    c: &[Sort],
    a: &Formula,
    b: &Formula,
) -> Option<Model> {
    if k == rels.len() {
        if !m.check_axioms(theory).ok()? {
            return None;
        }
        let ea = m.eval_formula(c, a).ok()?;
        let eb = m.eval_formula(c, b).ok()?;
        return (!ea.is_subset(&eb)).then(|| m.clone());
    }
    let name = rels[k].0.clone();
    let assigned: BTreeSet<&str> = rels[..=k].iter().map(|(r, _)| r.as_str()).collect();
    let decided: Vec<&crate::formulas::Sequent> = theory
        .axioms
        .iter()
        .filter(|ax| {
            let mut used = BTreeSet::new();
            relations_of(&ax.lhs, &mut used);
            relations_of(&ax.rhs, &mut used);
            used.contains(name.as_str()) && used.iter().all(|r| assigned.contains(r))
        })
        .collect();
    let cell = &cells[k];
    for mask in 0u64..1 << cell.len() {
        let set: BTreeSet<Vec<usize>> = cell.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, t)| t.clone()).collect();
        m.rels.insert(name.clone(), set);
        let ok = decided.iter().all(|ax| {
            match (m.eval_formula(&ax.context, &ax.lhs), m.eval_formula(&ax.context, &ax.rhs)) {
                (Ok(l), Ok(r)) => l.is_subset(&r),
                _ => false,
            }
        });
        if ok {
            if let Some(found) = extend(theory, rels, cells, k + 1, m, c, a, b) {
                return Some(found);
            }
        }
    }
    m.rels.remove(&name);
    None
}

fn relations_of<'a>(phi: &'a Formula, out: &mut BTreeSet<&'a str>) {
    match phi {
        Formula::Atom(r, _) => {
            out.insert(r);
        }
        Formula::And(a, b) => {
            relations_of(a, out);
            relations_of(b, out);
        }
        Formula::Exists(_, body) => relations_of(body, out),
        _ => {}
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::terms::formula_to_term;
    use crate::typed::ctx;

    fn p(a: usize, b: usize) -> Formula {
        Formula::atom("P", &[a, b])
    }

    fn preorder() -> Theory {
        Theory::new("Preorder")
            .with_sort("X")
            .with_rel("P", &["X", "X"])
            .with_axiom("refl", ctx(&["X"]), Formula::True, p(0, 0))
            .with_axiom("trans", ctx(&["X", "X"]), Formula::exists("X", Formula::and(p(0, 2), p(2, 1))), p(0, 1))
    }

    #[test]
    fn canonical_structure_shapes() {
        let th = preorder();
        let xx = ctx(&["X", "X"]);
        let t = formula_to_term(&th, &xx, &Formula::exists("X", Formula::and(p(0, 2), p(2, 1)))).unwrap();
        let s = canonical_structure(&th, &t).unwrap();
        assert_eq!((s.len(), s.facts.len(), s.distinguished.clone()), (3, 2, vec![0, 1]));
        assert!(CanonicalStructure::of_cqnf(&CQNF::of(&[], &Formula::True)).is_empty());
        let dot = CanonicalStructure::of_cqnf(&CQNF::of(&[], &Formula::exists("X", Formula::True)));
        assert_eq!((dot.len(), dot.facts.len(), dot.distinguished.len()), (1, 0, 0));
    }

    #[test]
    fn free_entailment_examples() {
        let xx = ctx(&["X", "X"]);
        assert!(formula_entails_free(&xx, &p(0, 1), &p(0, 1)));
        assert!(formula_entails_free(&xx, &p(0, 1), &Formula::True));
        let dot = Formula::exists("X", Formula::True);
        assert!(!formula_entails_free(&[], &Formula::True, &dot));
        assert!(formula_entails_free(&[], &dot, &Formula::True));
        assert!(formula_entails_free(&xx, &Formula::eq(0, 1), &Formula::True));
        assert!(!formula_entails_free(&xx, &Formula::True, &Formula::eq(0, 1)));
        assert!(formula_entails_free(&xx, &Formula::and(p(0, 1), p(0, 1)), &p(0, 1)));
    }

    #[test]
    fn chase_examples() {
        let th = preorder();
        let xx = ctx(&["X", "X"]);
        assert_eq!(formula_entails_with_axioms(&th, &xx, &Formula::eq(0, 1), &p(0, 1), 2, 2), Verdict::Proved);
        match formula_entails_with_axioms(&th, &xx, &p(0, 1), &Formula::eq(0, 1), 2, 2) {
            Verdict::Refuted(m) => {
                assert!(m.check_axioms(&th).unwrap());
                let l = m.eval_formula(&xx, &p(0, 1)).unwrap();
                let r = m.eval_formula(&xx, &Formula::eq(0, 1)).unwrap();
                assert!(!l.is_subset(&r));
            }
            v => panic!("expected refutation, got {v:?}"),
        }
        let ante = Formula::exists("X", Formula::and(p(0, 2), p(2, 1)));
        assert_eq!(formula_entails_with_axioms(&th, &xx, &ante, &p(0, 1), 1, 2), Verdict::Proved);
        assert!(matches!(formula_entails_with_axioms(&th, &xx, &Formula::True, &p(0, 1), 2, 2), Verdict::Refuted(_)));
    }

    #[test]
    fn countermodel_search_handles_empty_carriers() {
        let th = Theory::new("t").with_sort("X");
        let v = formula_entails_with_axioms(&th, &[], &Formula::True, &Formula::exists("X", Formula::True), 1, 1);
        match v {
            Verdict::Refuted(m) => assert_eq!(m.carriers[&Sort::from("X")].len(), 0),
            v => panic!("expected refutation, got {v:?}"),
        }
    }

    #[test]
    fn boundary_mismatch_is_an_error() {
        let th = preorder();
        let a = formula_to_term(&th, &ctx(&["X"]), &Formula::True).unwrap();
        let b = formula_to_term(&th, &ctx(&["X", "X"]), &Formula::True).unwrap();
        assert!(matches!(entails_free(&th, &a, &b), Err(Error::ContextMismatch { .. })));
    }
}
