//! Regular formulas over a signature, the regular calculus of a theory, and
//! conjunctive-query normal forms.
//!
//! Variables are positional: index `i < |Γ|` is the `i`-th context entry and
//! each `Exists` binds the next index after every variable in scope (de Bruijn
//! levels), so α-equivalent formulas are syntactically equal.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::partition::UnionFind;
use crate::typed::{show_ctx, Context, Port, Sort, TypedWiring};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    True,
    Atom(String, Vec<usize>),
    Eq(usize, usize),
    And(Box<Formula>, Box<Formula>),
    Exists(Sort, Box<Formula>),
}

impl Formula {
    pub fn atom(rel: &str, args: &[usize]) -> Formula {
        Formula::Atom(rel.to_string(), args.to_vec())
    }

    pub fn eq(a: usize, b: usize) -> Formula {
        Formula::Eq(a, b)
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn exists(sort: impl Into<Sort>, body: Formula) -> Formula {
        Formula::Exists(sort.into(), Box::new(body))
    }

    /// Left-nested conjunction; the empty conjunction is `True`.
    pub fn conj(parts: impl IntoIterator<Item = Formula>) -> Formula {
        parts.into_iter().reduce(Formula::and).unwrap_or(Formula::True)
    }

    /// Existential closure over `sorts`, the first sort outermost.
    pub fn exists_all(sorts: &[Sort], body: Formula) -> Formula {
        sorts.iter().rev().fold(body, |acc, s| Formula::exists(s.clone(), acc))
    }

    /// Renders in the theory DSL syntax with context variables `x0, x1, ..`
    /// and bound variables `y0, y1, ..`.
    pub fn show(&self, ctx_len: usize) -> String {
        let mut s = String::new();
        self.write(ctx_len, 0, &mut s);
        s
    }

    fn write(&self, n: usize, depth: usize, out: &mut String) {
        let var = |v: usize| if v < n { format!("x{v}") } else { format!("y{}", v - n) };
        match self {
            Formula::True => out.push_str("true"),
            Formula::Atom(r, args) => {
                let a: Vec<String> = args.iter().map(|&v| var(v)).collect();
                out.push_str(&format!("{r}({})", a.join(",")));
            }
            Formula::Eq(a, b) => out.push_str(&format!("{} = {}", var(*a), var(*b))),
            Formula::And(a, b) => {
                let wrap_left = matches!(**a, Formula::Exists(..));
                let wrap_right = matches!(**b, Formula::Exists(..) | Formula::And(..));
                if wrap_left {
                    out.push('(');
                }
                a.write(n, depth, out);
                if wrap_left {
                    out.push(')');
                }
                out.push_str(" /\\ ");
                if wrap_right {
                    out.push('(');
                }
                b.write(n, depth, out);
                if wrap_right {
                    out.push(')');
                }
            }
            Formula::Exists(s, body) => {
                out.push_str(&format!("exists y{depth}:{s}. "));
                body.write(n, depth + 1, out);
            }
        }
    }

    /// Renames free variables by `map` (old context position → new position)
    /// into a context of length `new_len`; bound variables shift accordingly.
    pub fn rename(&self, map: &[usize], new_len: usize) -> Formula {
        let n = map.len();
        let r = |v: usize| if v < n { map[v] } else { v - n + new_len };
        match self {
            Formula::True => Formula::True,
            Formula::Atom(rel, args) => Formula::Atom(rel.clone(), args.iter().map(|&v| r(v)).collect()),
            Formula::Eq(a, b) => Formula::Eq(r(*a), r(*b)),
            Formula::And(a, b) => Formula::and(a.rename(map, new_len), b.rename(map, new_len)),
            Formula::Exists(s, body) => Formula::exists(s.clone(), body.rename(map, new_len)),
        }
    }

    /// Relation symbols with the sorts they are used at, given a context.
    fn collect_uses(&self, env: &mut Vec<Sort>, uses: &mut Vec<(String, Context)>, sorts: &mut BTreeSet<Sort>) -> Result<()> {
        let get = |env: &Vec<Sort>, v: usize| {
            env.get(v).cloned().ok_or_else(|| Error::IllFormed(format!("variable {v} out of scope")))
        };
        match self {
            Formula::True => {}
            Formula::Atom(r, args) => {
                let a = args.iter().map(|&v| get(env, v)).collect::<Result<Context>>()?;
                uses.push((r.clone(), a));
            }
            Formula::Eq(a, b) => {
                get(env, *a)?;
                get(env, *b)?;
            }
            Formula::And(a, b) => {
                a.collect_uses(env, uses, sorts)?;
                b.collect_uses(env, uses, sorts)?;
            }
            Formula::Exists(s, body) => {
                sorts.insert(s.clone());
                env.push(s.clone());
                let r = body.collect_uses(env, uses, sorts);
                env.pop();
                r?;
            }
        }
        Ok(())
    }
}

/// A sequent `lhs ⊢ rhs` in a shared context.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sequent {
    pub name: String,
    pub context: Context,
    pub lhs: Formula,
    pub rhs: Formula,
}

/// A regular theory: sorts, relation symbols with arities, and axioms.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Theory {
    pub name: String,
    pub sorts: BTreeSet<Sort>,
    pub relsyms: BTreeMap<String, Context>,
    pub axioms: Vec<Sequent>,
}

impl Theory {
    pub fn new(name: &str) -> Theory {
        Theory { name: name.to_string(), ..Theory::default() }
    }

    pub fn with_sort(mut self, s: &str) -> Theory {
        self.sorts.insert(Sort::from(s));
        self
    }

    pub fn with_rel(mut self, r: &str, arity: &[&str]) -> Theory {
        self.relsyms.insert(r.to_string(), arity.iter().map(|&s| Sort::from(s)).collect());
        self
    }

    pub fn with_axiom(mut self, name: &str, context: Context, lhs: Formula, rhs: Formula) -> Theory {
        self.axioms.push(Sequent { name: name.to_string(), context, lhs, rhs });
        self
    }

    /// The axiom-free theory whose signature is exactly what the given
    /// formulas use.
    pub fn infer(items: &[(&[Sort], &Formula)]) -> Result<Theory> {
        let mut th = Theory::new("open");
        for (c, f) in items {
            th.sorts.extend(c.iter().cloned());
            let mut uses = Vec::new();
            f.collect_uses(&mut c.to_vec(), &mut uses, &mut th.sorts)?;
            for (r, a) in uses {
                match th.relsyms.get(&r) {
                    Some(prev) if *prev != a => {
                        return Err(Error::ArityMismatch { expected: format!("{r}{}", show_ctx(prev)), found: show_ctx(&a) })
                    }
                    Some(_) => {}
                    None => {
                        th.sorts.extend(a.iter().cloned());
                        th.relsyms.insert(r, a);
                    }
                }
            }
        }
        Ok(th)
    }

    pub fn check_context(&self, c: &[Sort]) -> Result<()> {
        match c.iter().find(|s| !self.sorts.contains(*s)) {
            Some(s) => Err(Error::UnknownSort(s.0.clone())),
            None => Ok(()),
        }
    }

    /// Well-sortedness of `phi` in context `c`.
    pub fn check_formula(&self, c: &[Sort], phi: &Formula) -> Result<()> {
        self.check_context(c)?;
        let mut uses = Vec::new();
        let mut bound = BTreeSet::new();
        phi.collect_uses(&mut c.to_vec(), &mut uses, &mut bound)?;
        if let Some(s) = bound.iter().find(|s| !self.sorts.contains(*s)) {
            return Err(Error::UnknownSort(s.0.clone()));
        }
        for (r, a) in uses {
            let arity = self.relsyms.get(&r).ok_or_else(|| Error::UnknownRelation(r.clone()))?;
            if *arity != a {
                return Err(Error::ArityMismatch { expected: format!("{r}{}", show_ctx(arity)), found: show_ctx(&a) });
            }
        }
        check_equalities(&mut c.to_vec(), phi)
    }

    /// Checks every arity and axiom.
    pub fn validate(&self) -> Result<()> {
        for a in self.relsyms.values() {
            self.check_context(a)?;
        }
        for ax in &self.axioms {
            self.check_formula(&ax.context, &ax.lhs)?;
            self.check_formula(&ax.context, &ax.rhs)?;
        }
        Ok(())
    }
}

fn check_equalities(env: &mut Vec<Sort>, phi: &Formula) -> Result<()> {
    match phi {
        Formula::Eq(a, b) if env[*a] != env[*b] => Err(Error::SortMismatch(format!("equality between {} and {}", env[*a], env[*b]))),
        Formula::And(a, b) => {
            check_equalities(env, a)?;
            check_equalities(env, b)
        }
        Formula::Exists(s, body) => {
            env.push(s.clone());
            let r = check_equalities(env, body);
            env.pop();
            r
        }
        _ => Ok(()),
    }
}

/// The generator actions of the theory calculus, acting on the trailing
/// context entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Action {
    /// Weakening by a fresh trailing variable of the given sort.
    Eta(Sort),
    Epsilon,
    Mu,
    Delta,
}

/// Applies a generator to `phi` on context `c`; returns the new context and formula.
pub fn act_gen(theory: &Theory, action: &Action, c: &[Sort], phi: &Formula) -> Result<(Context, Formula)> {
    theory.check_formula(c, phi)?;
    let n = c.len();
    let ident: Vec<usize> = (0..n).collect();
    match action {
        Action::Eta(s) => {
            theory.check_context(std::slice::from_ref(s))?;
            let mut out = c.to_vec();
            out.push(s.clone());
            Ok((out, phi.rename(&ident, n + 1)))
        }
        Action::Epsilon => {
            let (last, rest) = c.split_last().ok_or(Error::EmptyContext)?;
            Ok((rest.to_vec(), Formula::exists(last.clone(), phi.clone())))
        }
        Action::Mu => {
            if n < 2 {
                return Err(Error::EmptyContext);
            }
            if c[n - 1] != c[n - 2] {
                return Err(Error::SortMismatch(format!("cannot merge {} with {}", c[n - 2], c[n - 1])));
            }
            let mut map = ident;
            map[n - 1] = n - 2;
            Ok((c[..n - 1].to_vec(), phi.rename(&map, n - 1)))
        }
        Action::Delta => {
            let last = c.last().ok_or(Error::EmptyContext)?;
            let mut out = c.to_vec();
            out.push(last.clone());
            Ok((out, Formula::and(phi.rename(&ident, n + 1), Formula::eq(n - 1, n))))
        }
    }
}

/// Reorders the context: the result lives on `[c[perm[0]], c[perm[1]], ..]`.
pub fn permute(c: &[Sort], perm: &[usize], phi: &Formula) -> Result<(Context, Formula)> {
    let mut check = perm.to_vec();
    check.sort_unstable();
    if check != (0..c.len()).collect::<Vec<_>>() {
        return Err(Error::IllFormed(format!("{perm:?} is not a permutation of {}", c.len())));
    }
    let mut map = vec![0; c.len()];
    for (j, &i) in perm.iter().enumerate() {
        map[i] = j;
    }
    Ok((perm.iter().map(|&i| c[i].clone()).collect(), phi.rename(&map, c.len())))
}

/// Exterior conjunction `φ₁ ⊞ φ₂` on `Γ₁ ⧺ Γ₂`.
pub fn boxplus(g1: &[Sort], phi1: &Formula, g2: &[Sort], phi2: &Formula) -> Formula {
    let n1 = g1.len();
    let shift: Vec<usize> = (0..g2.len()).map(|i| i + n1).collect();
    Formula::and(phi1.clone(), phi2.rename(&shift, n1 + g2.len()))
}

/// The left adjoint of `⊞`: `(∃Γ₂.γ, ∃Γ₁.γ)`.
pub fn lambda_split(g1: &[Sort], g2: &[Sort], gamma: &Formula) -> (Formula, Formula) {
    let (n1, n2) = (g1.len(), g2.len());
    let left = Formula::exists_all(g2, gamma.clone());
    let map: Vec<usize> = (0..n1).map(|i| n2 + i).chain(0..n2).collect();
    let right = Formula::exists_all(g1, gamma.rename(&map, n1 + n2));
    (left, right)
}

/// Applies a one-shell wiring to `phi`, computed on the normal form.
pub fn act_wiring(theory: &Theory, w: &TypedWiring, phi: &Formula) -> Result<Formula> {
    if w.shells().len() != 1 {
        return Err(Error::NotSingleShell(w.shells().len()));
    }
    theory.check_formula(&w.shells()[0], phi)?;
    Ok(wire_formulas(&[(&w.shells()[0], phi)], w).to_formula())
}

/// Normal form of `phi` on context `c`.
pub fn normalize(theory: &Theory, c: &[Sort], phi: &Formula) -> Result<CQNF> {
    theory.check_formula(c, phi)?;
    Ok(CQNF::of(c, phi))
}

/// Conjunctive-query normal form.
///
/// Node references `0..|context|` are context positions and
/// `|context|..|context|+|exist_vars|` existential variables. `merge`
/// partitions all node references; existential nodes are always singletons
/// and atoms mention each context block by its least position. Existential
/// nodes are numbered canonically, so isomorphic queries compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CQNF {
    pub context: Context,
    pub exist_vars: Vec<Sort>,
    pub atoms: Vec<(String, Vec<usize>)>,
    pub merge: Vec<Vec<usize>>,
    pub floating: BTreeSet<Sort>,
}

impl CQNF {
    /// Normal form without signature checks.
    pub fn of(c: &[Sort], phi: &Formula) -> CQNF {
        let mut q = Query::default();
        let mut env: Vec<usize> = c.iter().map(|s| q.node(s.clone())).collect();
        q.add(&mut env, phi);
        let outs = env;
        q.finish(&outs)
    }

    /// The displayed prenex shape: `∃ exist_vars. atoms ∧ equalities ∧ ∃-floats`.
    pub fn to_formula(&self) -> Formula {
        let mut parts: Vec<Formula> = self.atoms.iter().map(|(r, a)| Formula::Atom(r.clone(), a.clone())).collect();
        let n = self.context.len();
        for b in &self.merge {
            if b[0] < n {
                parts.extend(b[1..].iter().map(|&x| Formula::eq(b[0], x)));
            }
        }
        parts.extend(self.floating.iter().map(|s| Formula::exists(s.clone(), Formula::True)));
        Formula::exists_all(&self.exist_vars, Formula::conj(parts))
    }

    /// Block of the merge partition containing a context position.
    pub fn context_block(&self, pos: usize) -> &[usize] {
        self.merge.iter().find(|b| b.contains(&pos)).expect("context position in merge partition")
    }

    pub fn is_true(&self) -> bool {
        self.atoms.is_empty() && self.exist_vars.is_empty() && self.floating.is_empty() && self.merge.iter().all(|b| b.len() == 1)
    }
}

/// Substitutes formulas into the shells of a wiring and normalizes.
pub(crate) fn wire_formulas(shells: &[(&Context, &Formula)], w: &TypedWiring) -> CQNF {
    let mut q = Query::default();
    let mut port_node: BTreeMap<Port, usize> = BTreeMap::new();
    for (s, (c, phi)) in shells.iter().enumerate() {
        let mut env: Vec<usize> = c.iter().map(|x| q.node(x.clone())).collect();
        for (p, &node) in env.iter().enumerate() {
            port_node.insert(Port::shell(s, p), node);
        }
        q.add(&mut env, phi);
    }
    let mut outs = vec![0; w.out().len()];
    for block in w.blocks() {
        let node = match block.iter().find_map(|p| port_node.get(p)) {
            Some(&n) => n,
            None => q.node(w.port_sort(block[0]).expect("valid port").clone()),
        };
        for &p in block {
            match p {
                Port::Out { o } => outs[o] = node,
                shell_port => {
                    q.uf.union(node, port_node[&shell_port]);
                }
            }
        }
    }
    q.floating.extend(w.floating().iter().cloned());
    q.finish(&outs)
}

/// A conjunctive query under construction: sorted nodes, equalities as a
/// union-find, atoms over nodes and floating sorts.
#[derive(Default)]
pub(crate) struct Query {
    pub sorts: Vec<Sort>,
    pub uf: UnionFind,
    pub atoms: Vec<(String, Vec<usize>)>,
    pub floating: BTreeSet<Sort>,
}

impl Query {
    pub fn node(&mut self, s: Sort) -> usize {
        self.sorts.push(s);
        self.uf.push()
    }

    /// Adds `phi`, whose variable `v` denotes node `env[v]`.
    pub fn add(&mut self, env: &mut Vec<usize>, phi: &Formula) {
        match phi {
            Formula::True => {}
            Formula::Atom(r, args) => {
                let a = args.iter().map(|&v| env[v]).collect();
                self.atoms.push((r.clone(), a));
            }
            Formula::Eq(a, b) => {
                self.uf.union(env[*a], env[*b]);
            }
            Formula::And(a, b) => {
                self.add(env, a);
                self.add(env, b);
            }
            Formula::Exists(s, body) => {
                let n = self.node(s.clone());
                env.push(n);
                self.add(env, body);
                env.pop();
            }
        }
    }

    /// Normalizes with `outs[i]` the node of context position `i`.
    pub fn finish(mut self, outs: &[usize]) -> CQNF {
        let context: Context = outs.iter().map(|&n| self.sorts[n].clone()).collect();
        let n = outs.len();
        // class root → least context position
        let mut ctx_of: BTreeMap<usize, usize> = BTreeMap::new();
        let mut merge_map: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (i, &node) in outs.iter().enumerate() {
            let r = self.uf.find(node);
            ctx_of.entry(r).or_insert(i);
            merge_map.entry(r).or_default().push(i);
        }
        let mut ex_roots: Vec<usize> = Vec::new();
        let mut ex_index: BTreeMap<usize, usize> = BTreeMap::new();
        let atoms_raw: Vec<(String, Vec<Ref>)> = self
            .atoms
            .iter()
            .map(|(r, args)| {
                let a = args
                    .iter()
                    .map(|&x| {
                        let root = self.uf.find(x);
                        match ctx_of.get(&root) {
                            Some(&i) => Ref::Ctx(i),
                            None => Ref::Ex(*ex_index.entry(root).or_insert_with(|| {
                                ex_roots.push(root);
                                ex_roots.len() - 1
                            })),
                        }
                    })
                    .collect();
                (r.clone(), a)
            })
            .collect();
        let ex_sorts: Vec<Sort> = ex_roots.iter().map(|&r| self.sorts[r].clone()).collect();
        // existential classes mentioned by no atom become floating dots
        let mut floating = std::mem::take(&mut self.floating);
        for x in 0..self.sorts.len() {
            let r = self.uf.find(x);
            if !ctx_of.contains_key(&r) && !ex_index.contains_key(&r) {
                floating.insert(self.sorts[x].clone());
            }
        }
        floating.retain(|s| !context.contains(s) && !ex_sorts.contains(s));

        let order = canonical_order(n, &ex_sorts, &atoms_raw);
        let mut rank = vec![0; order.len()];
        for (k, &e) in order.iter().enumerate() {
            rank[e] = k;
        }
        let mut atoms = encode_atoms(n, &atoms_raw, &rank);
        atoms.sort();
        let exist_vars = order.iter().map(|&e| ex_sorts[e].clone()).collect();
        let mut merge: Vec<Vec<usize>> = merge_map.into_values().collect();
        merge.extend((0..order.len()).map(|k| vec![n + k]));
        merge.sort();
        CQNF { context, exist_vars, atoms, merge, floating }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Ref {
    Ctx(usize),
    Ex(usize),
}

fn encode_atoms(n: usize, atoms: &[(String, Vec<Ref>)], rank: &[usize]) -> Vec<(String, Vec<usize>)> {
    atoms
        .iter()
        .map(|(r, a)| {
            let args = a
                .iter()
                .map(|x| match *x {
                    Ref::Ctx(i) => i,
                    Ref::Ex(e) => n + rank[e],
                })
                .collect();
            (r.clone(), args)
        })
        .collect()
}

/// Canonical numbering of existential nodes: colour refinement followed by
/// individualization, keeping the ordering whose sorted atom encoding is least.
/// An atom seen from one of its existential positions: relation, position
/// and the colours of its arguments.
type Incidence = (String, usize, Vec<(u8, usize)>);

/// Encoded atoms together with the ordering that produced them.
type Encoding = (Vec<(String, Vec<usize>)>, Vec<usize>);

fn canonical_order(n: usize, ex_sorts: &[Sort], atoms: &[(String, Vec<Ref>)]) -> Vec<usize> {
    let m = ex_sorts.len();
    if m == 0 {
        return vec![];
    }
    // incidence: for each existential node, (atom index, argument position)
    let mut incid: Vec<Vec<(usize, usize)>> = vec![Vec::new(); m];
    for (ai, (_, args)) in atoms.iter().enumerate() {
        for (pos, r) in args.iter().enumerate() {
            if let Ref::Ex(e) = r {
                incid[*e].push((ai, pos));
            }
        }
    }
    let mut sort_rank: Vec<&Sort> = ex_sorts.iter().collect();
    sort_rank.sort();
    sort_rank.dedup();
    let initial: Vec<usize> = ex_sorts.iter().map(|s| sort_rank.binary_search(&s).unwrap()).collect();
    let refine = |mut colour: Vec<usize>| -> Vec<usize> {
        loop {
            let sigs: Vec<(usize, Vec<Incidence>)> = (0..m)
                .map(|e| {
                    let mut s: Vec<Incidence> = incid[e]
                        .iter()
                        .map(|&(ai, pos)| {
                            let (r, args) = &atoms[ai];
                            let cols = args
                                .iter()
                                .map(|x| match *x {
                                    Ref::Ctx(i) => (0u8, i),
                                    Ref::Ex(f) => (1u8, colour[f]),
                                })
                                .collect();
                            (r.clone(), pos, cols)
                        })
                        .collect();
                    s.sort();
                    (colour[e], s)
                })
                .collect();
            let mut uniq: Vec<&(usize, Vec<Incidence>)> = sigs.iter().collect();
            uniq.sort();
            uniq.dedup();
            let next: Vec<usize> = sigs.iter().map(|s| uniq.binary_search(&s).unwrap()).collect();
            let classes = |c: &[usize]| c.iter().collect::<BTreeSet<_>>().len();
            if classes(&next) == classes(&colour) {
                return next;
            }
            colour = next;
        }
    };
    let mut best: Option<Encoding> = None;
    let mut stack = vec![refine(initial)];
    while let Some(colour) = stack.pop() {
        let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
        for &c in &colour {
            *counts.entry(c).or_default() += 1;
        }
        match counts.iter().find(|(_, &k)| k > 1) {
            None => {
                let mut order: Vec<usize> = (0..m).collect();
                order.sort_by_key(|&e| colour[e]);
                let mut rank = vec![0; m];
                for (k, &e) in order.iter().enumerate() {
                    rank[e] = k;
                }
                let mut enc = encode_atoms(n, atoms, &rank);
                enc.sort();
                let sorts: Vec<&Sort> = order.iter().map(|&e| &ex_sorts[e]).collect();
                let better = match &best {
                    None => true,
                    Some((b, bo)) => {
                        let bs: Vec<&Sort> = bo.iter().map(|&e| &ex_sorts[e]).collect();
                        (&sorts, &enc) < (&bs, b)
                    }
                };
                if better {
                    best = Some((enc, order));
                }
            }
            Some((&cell, _)) => {
                for v in (0..m).filter(|&e| colour[e] == cell) {
                    let split: Vec<usize> = (0..m).map(|e| 2 * colour[e] + usize::from(colour[e] == cell && e != v)).collect();
                    stack.push(refine(split));
                }
            }
        }
    }
    best.expect("at least one leaf").1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::typed::{ctx, supply_gen};
    use crate::wiring::Generator;

    fn preorder() -> Theory {
        Theory::new("Preorder").with_sort("X").with_rel("P", &["X", "X"])
    }

    fn p(a: usize, b: usize) -> Formula {
        Formula::atom("P", &[a, b])
    }

    #[test]
    fn generator_actions() {
        let th = preorder();
        let xx = ctx(&["X", "X"]);
        let (c, f) = act_gen(&th, &Action::Mu, &xx, &p(0, 1)).unwrap();
        assert_eq!((c, f), (ctx(&["X"]), p(0, 0)));
        let (c, f) = act_gen(&th, &Action::Delta, &ctx(&["X"]), &p(0, 0)).unwrap();
        assert_eq!(c, xx);
        assert_eq!(f, Formula::and(p(0, 0), Formula::eq(0, 1)));
        let phi = Formula::exists("X", p(0, 1));
        let (c2, f2) = act_gen(&th, &Action::Delta, &ctx(&["X"]), &phi).unwrap();
        let (c3, f3) = act_gen(&th, &Action::Mu, &c2, &f2).unwrap();
        assert_eq!(CQNF::of(&c3, &f3), CQNF::of(&ctx(&["X"]), &phi));
        assert!(matches!(act_gen(&th, &Action::Epsilon, &[], &Formula::True), Err(Error::EmptyContext)));
    }

    #[test]
    fn rename_shifts_bound_variables() {
        let phi = Formula::exists("X", p(0, 1));
        assert_eq!(phi.rename(&[0], 2), Formula::exists("X", p(0, 2)));
        let (_, g) = act_gen(&preorder(), &Action::Eta(Sort::from("X")), &ctx(&["X"]), &phi).unwrap();
        assert_eq!(g, Formula::exists("X", p(0, 2)));
    }

    #[test]
    fn boxplus_and_lambda() {
        let th = Theory::new("t").with_sort("X").with_sort("Y").with_rel("P", &["X"]).with_rel("Q", &["Y"]);
        let f = boxplus(&ctx(&["X"]), &Formula::atom("P", &[0]), &ctx(&["Y"]), &Formula::atom("Q", &[0]));
        assert_eq!(f, Formula::and(Formula::atom("P", &[0]), Formula::atom("Q", &[1])));
        let (l, r) = lambda_split(&ctx(&["X"]), &ctx(&["Y"]), &f);
        th.check_formula(&ctx(&["X"]), &l).unwrap();
        th.check_formula(&ctx(&["Y"]), &r).unwrap();
        let expect_l = Formula::and(Formula::atom("P", &[0]), Formula::exists("Y", Formula::atom("Q", &[1])));
        assert_eq!(CQNF::of(&ctx(&["X"]), &l), CQNF::of(&ctx(&["X"]), &expect_l));
    }

    #[test]
    fn normal_form_examples() {
        let th = preorder().with_rel("U", &["X"]);
        let phi = Formula::exists("X", Formula::and(Formula::eq(0, 1), Formula::atom("U", &[1])));
        let nf = normalize(&th, &ctx(&["X"]), &phi).unwrap();
        assert!(nf.exist_vars.is_empty());
        assert_eq!(nf.atoms, vec![("U".to_string(), vec![0])]);
        assert!(normalize(&th, &[], &Formula::True).unwrap().is_true());
        let (c, d) = act_gen(&th, &Action::Delta, &ctx(&["X"]), &Formula::True).unwrap();
        assert_eq!(normalize(&th, &c, &d).unwrap().merge, vec![vec![0, 1]]);
    }

    #[test]
    fn canonical_numbering_is_order_independent() {
        // ∃a,b. P(x,a) ∧ P(a,b) ∧ P(b,x) written with two binder orders
        let one = Formula::exists("X", Formula::exists("X", Formula::conj([p(0, 1), p(1, 2), p(2, 0)])));
        let two = Formula::exists("X", Formula::exists("X", Formula::conj([p(1, 0), p(2, 1), p(0, 2)])));
        let c = ctx(&["X"]);
        assert_eq!(CQNF::of(&c, &one), CQNF::of(&c, &two));
        let three = Formula::exists("X", Formula::exists("X", Formula::conj([p(0, 1), p(2, 1), p(2, 0)])));
        assert_ne!(CQNF::of(&c, &one), CQNF::of(&c, &three));
    }

    #[test]
    fn floating_dots() {
        let c: Context = vec![];
        let dot = Formula::exists("X", Formula::True);
        let nf = CQNF::of(&c, &dot);
        assert_eq!(nf.floating, [Sort::from("X")].into_iter().collect());
        assert_eq!(nf.to_formula(), dot);
        // absorbed by a context variable of the same sort
        assert!(CQNF::of(&ctx(&["X"]), &dot).is_true());
        // η then ε on the empty context gives the inhabitedness formula
        let w = supply_gen(Generator::Eta, &ctx(&["X"])).then(&supply_gen(Generator::Epsilon, &ctx(&["X"]))).unwrap();
        let th = preorder();
        let w0 = TypedWiring::new(vec![vec![]], vec![], vec![], w.floating().clone()).unwrap();
        assert_eq!(act_wiring(&th, &w0, &Formula::True).unwrap(), dot);
    }

    #[test]
    fn wiring_action() {
        let th = preorder();
        let xx = ctx(&["X", "X"]);
        let id = TypedWiring::identity(&xx);
        assert_eq!(CQNF::of(&xx, &act_wiring(&th, &id, &p(0, 1)).unwrap()), CQNF::of(&xx, &p(0, 1)));
        let w = supply_gen(Generator::Mu, &ctx(&["X"])).then(&supply_gen(Generator::Delta, &ctx(&["X"]))).unwrap();
        let got = act_wiring(&th, &w, &p(0, 1)).unwrap();
        let want = Formula::and(p(0, 0), Formula::eq(0, 1));
        assert_eq!(CQNF::of(&xx, &got), CQNF::of(&xx, &want));
    }

    #[test]
    fn sortedness_errors() {
        let th = preorder();
        assert!(matches!(th.check_formula(&ctx(&["Y"]), &Formula::True), Err(Error::UnknownSort(_))));
        assert!(matches!(th.check_formula(&ctx(&["X"]), &Formula::atom("R", &[0])), Err(Error::UnknownRelation(_))));
        assert!(matches!(th.check_formula(&ctx(&["X"]), &Formula::atom("P", &[0])), Err(Error::ArityMismatch { .. })));
        assert!(th.check_formula(&ctx(&["X"]), &p(0, 3)).is_err());
        let inferred = Theory::infer(&[(&ctx(&["X", "Y"]), &Formula::atom("R", &[1, 0]))]).unwrap();
        assert_eq!(inferred.relsyms["R"], ctx(&["Y", "X"]));
    }

    #[test]
    fn show_round_trips_shape() {
        let phi = Formula::and(Formula::exists("X", p(0, 1)), Formula::eq(0, 0));
        assert_eq!(phi.show(1), "(exists y0:X. P(x0,y0)) /\\ x0 = x0");
    }
}
