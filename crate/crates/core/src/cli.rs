//! Command-line front end.
//!
//! Exit status: 0 for success, `true` or `Proved`; 1 for `false` or
//! `Refuted`; 2 for `Unknown`; 3 for bad input.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::dot::{render_term, render_wiring};
use crate::dsl::{parse_expr, parse_pred, parse_theory, show_pred, show_theory};
use crate::entail::{canonical_structure, entails_free, entails_with_axioms, Verdict};
use crate::error::{Error, Result};
use crate::formulas::{Formula, Theory};
use crate::io::{self, RawTerm};
use crate::laws::{self, LawResult, Scale};
use crate::relsem::{Model, PrdCalculus, Subset};
use crate::syn::{self, SupplyKind, SynMorphism, SynObject};
use crate::terms::{self, represent, rewrite, term_to_cqnf, GraphicalTerm, Leq, RegularCalculus, Relation, Rule, TheoryCalculus};
use crate::typed::{self, compose_at, supply_w, tensor_t, Sort, TypedWiring};
use crate::wiring::{canonicalize, compose_w, leq_w, tensor_w, Cospan, WMor};

#[derive(Parser, Debug)]
#[command(name = "grl", version, about = "Wiring diagrams, regular theories and graphical terms")]
pub struct Cli {
    /// Machine-readable JSON on stdout.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Morphisms of the wiring po-prop and sorted wiring diagrams.
    #[command(subcommand)]
    Wd(WdCommand),
    /// Regular theories in the text format.
    #[command(subcommand)]
    Theory(TheoryCommand),
    /// Graphical terms.
    #[command(subcommand)]
    Term(TermCommand),
    /// Decide whether one term entails another.
    Entail {
        #[arg(long)]
        theory: Option<PathBuf>,
        #[arg(long, default_value_t = 4)]
        chase_depth: usize,
        #[arg(long, default_value_t = 2)]
        model_size: usize,
        lhs: String,
        rhs: String,
    },
    /// Finite models.
    #[command(subcommand)]
    Model(ModelCommand),
    /// The syntactic category of a calculus.
    #[command(subcommand)]
    Syn(SynCommand),
    /// Law suites.
    #[command(subcommand)]
    Laws(LawsCommand),
}

#[derive(Subcommand, Debug)]
pub enum WdCommand {
    /// Canonical form of a morphism, cospan, expression or sorted wiring.
    Canon { input: String },
    /// Sequential composite; with `--at`, nest the second wiring into a shell of the first.
    Compose {
        a: String,
        b: String,
        #[arg(long)]
        at: Option<usize>,
    },
    Tensor { a: String, b: String },
    /// Whether `a ≤ b`.
    Leq { a: String, b: String },
    /// Graphviz DOT for a wiring or a term.
    Render { input: String },
}

#[derive(Subcommand, Debug)]
pub enum TheoryCommand {
    Check { file: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum TermCommand {
    /// The one-shell term of a predicate `[x:X, ..] formula`.
    OfFormula {
        #[arg(long)]
        theory: Option<PathBuf>,
        pred: String,
    },
    /// The normal-form formula a term represents.
    ToFormula {
        #[arg(long)]
        theory: Option<PathBuf>,
        term: String,
    },
    /// The predicate a term represents, in its calculus.
    Represent {
        #[arg(long)]
        theory: Option<PathBuf>,
        term: String,
    },
    /// Apply one rewrite rule.
    Rewrite {
        #[arg(long)]
        theory: Option<PathBuf>,
        term: String,
        /// monotone, break, nest, meet-merge, remove-true or discard.
        rule: String,
        #[arg(long)]
        shell: Option<usize>,
        /// Second shell for meet-merge.
        #[arg(long)]
        with: Option<usize>,
        /// New predicate for monotone.
        #[arg(long)]
        pred: Option<String>,
        /// New wiring for break.
        #[arg(long)]
        wiring: Option<String>,
        /// Inner term for nest.
        #[arg(long)]
        inner: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
pub enum ModelCommand {
    /// Tuples of the model satisfying a term or predicate.
    Eval {
        #[arg(long)]
        theory: Option<PathBuf>,
        model: String,
        term: String,
    },
    CheckAxioms {
        #[arg(long)]
        theory: PathBuf,
        model: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum SynCommand {
    Id {
        #[arg(long)]
        theory: Option<PathBuf>,
        object: String,
    },
    Compose {
        #[arg(long)]
        theory: Option<PathBuf>,
        f: String,
        g: String,
    },
    /// epsilon, eta, delta or mu on an object.
    Supply {
        #[arg(long)]
        theory: Option<PathBuf>,
        object: String,
        kind: String,
    },
    /// The syntactic-category law suite.
    Laws {
        #[arg(long)]
        max_carrier: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
pub enum LawsCommand {
    /// Run a suite (wiring, rel, prd, theory, entail, syn) or all of them.
    Run {
        #[arg(default_value = "all")]
        suite: String,
        #[arg(long)]
        samples: Option<usize>,
    },
}

/// Where a command writes, and the status it ends with.
pub struct Output<'a> {
    pub out: &'a mut dyn Write,
    pub err: &'a mut dyn Write,
    pub json: bool,
}

impl Output<'_> {
    fn line(&mut self, s: impl AsRef<str>) {
        let _ = writeln!(self.out, "{}", s.as_ref());
    }

    fn value(&mut self, v: &Value) {
        let text = if self.json { v.to_string() } else { serde_json::to_string_pretty(v).expect("json") };
        self.line(text);
    }

    /// JSON when asked for, human text otherwise.
    fn either(&mut self, v: &Value, human: impl FnOnce() -> String) {
        if self.json {
            self.line(v.to_string());
        } else {
            self.line(human());
        }
    }
}

/// Parses arguments and runs; returns the exit status.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    let mut o = Output { out, err, json: cli.json };
    match dispatch(&cli, &mut o) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(o.err, "error: {e}");
            3
        }
    }
}

pub fn dispatch(cli: &Cli, o: &mut Output) -> Result<i32> {
    match &cli.command {
        Command::Wd(c) => wd(c, o),
        Command::Theory(TheoryCommand::Check { file }) => theory_check(file, o),
        Command::Term(c) => term(c, o),
        Command::Entail { theory, chase_depth, model_size, lhs, rhs } => {
            entail(theory.as_ref(), *chase_depth, *model_size, lhs, rhs, o)
        }
        Command::Model(c) => model(c, o),
        Command::Syn(c) => syn_cmd(c, o),
        Command::Laws(LawsCommand::Run { suite, samples }) => {
            let mut scale = Scale::from_env()?;
            scale.seed = cli.seed;
            if let Some(n) = samples {
                scale.samples = *n;
            }
            report_laws(&laws::run_suite(suite, &scale)?, o)
        }
    }
}

fn load_theory(path: &PathBuf) -> Result<Theory> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::IllFormed(format!("cannot read {}: {e}", path.display())))?;
    let th = parse_theory(&text)?;
    th.validate()?;
    Ok(th)
}

fn load_theory_opt(path: Option<&PathBuf>) -> Result<Option<Theory>> {
    path.map(load_theory).transpose()
}

/// A wiring argument: untyped or sorted.
enum WInput {
    Untyped(WMor),
    Typed(TypedWiring),
    Term(RawTerm),
}

fn wiring_input(arg: &str) -> Result<WInput> {
    let text = io::read_input(arg)?;
    if !text.trim_start().starts_with('{') {
        return Ok(WInput::Untyped(parse_expr(&text)?.eval_w()?));
    }
    let v: Value = serde_json::from_str(&text)?;
    if v.get("preds").is_some() {
        return Ok(WInput::Term(io::parse_raw_term(&text)?));
    }
    if v.get("shells").is_some() {
        return Ok(WInput::Typed(serde_json::from_value(v)?));
    }
    if v.get("apex").is_some() {
        let apex = serde_json::from_value(v["apex"].clone())?;
        let left = serde_json::from_value(v.get("left").cloned().unwrap_or(json!([])))?;
        let right = serde_json::from_value(v.get("right").cloned().unwrap_or(json!([])))?;
        return Ok(WInput::Untyped(canonicalize(&Cospan::new(apex, left, right)?)));
    }
    Ok(WInput::Untyped(serde_json::from_value(v)?))
}

fn show_untyped(w: &WMor, o: &mut Output) -> Result<()> {
    let v = serde_json::to_value(w)?;
    o.either(&v, || w.to_string());
    Ok(())
}

fn show_typed(w: &TypedWiring, o: &mut Output) -> Result<()> {
    let v = serde_json::to_value(w)?;
    if o.json {
        o.line(v.to_string());
    } else {
        o.line(w.to_string());
        o.value(&v);
    }
    Ok(())
}

fn boolean(b: bool, o: &mut Output) -> i32 {
    o.either(&json!(b), || b.to_string());
    if b {
        0
    } else {
        1
    }
}

fn wd(c: &WdCommand, o: &mut Output) -> Result<i32> {
    use WInput::*;
    let mismatch = || Error::IllFormed("both arguments must be untyped morphisms or both sorted wirings".into());
    match c {
        WdCommand::Canon { input } => match wiring_input(input)? {
            Untyped(w) => show_untyped(&w, o)?,
            Typed(w) => show_typed(&w, o)?,
            Term(_) => return Err(Error::IllFormed("expected a wiring, found a term".into())),
        },
        WdCommand::Compose { a, b, at } => match (wiring_input(a)?, wiring_input(b)?) {
            (Untyped(f), Untyped(g)) => show_untyped(&compose_w(&f, &g)?, o)?,
            (Typed(f), Typed(g)) => {
                let w = match at {
                    Some(i) => compose_at(&f, *i, &g)?,
                    None => f.then(&g)?,
                };
                show_typed(&w, o)?
            }
            _ => return Err(mismatch()),
        },
        WdCommand::Tensor { a, b } => match (wiring_input(a)?, wiring_input(b)?) {
            (Untyped(f), Untyped(g)) => show_untyped(&tensor_w(&f, &g), o)?,
            (Typed(f), Typed(g)) => show_typed(&tensor_t(&f, &g), o)?,
            _ => return Err(mismatch()),
        },
        WdCommand::Leq { a, b } => {
            let r = match (wiring_input(a)?, wiring_input(b)?) {
                (Untyped(f), Untyped(g)) => leq_w(&f, &g)?,
                (Typed(f), Typed(g)) => typed::leq_t(&f, &g)?,
                _ => return Err(mismatch()),
            };
            return Ok(boolean(r, o));
        }
        WdCommand::Render { input } => {
            let dot = match wiring_input(input)? {
                Untyped(w) => render_wiring(&supply_w(&w, &[Sort::from("X")])),
                Typed(w) => render_wiring(&w),
                Term(raw) if raw.is_relational() => {
                    let (_, t) = io::prd_term(&raw)?;
                    render_term(&t, |_, p| format!("{} tuples", p.len()))
                }
                Term(raw) => {
                    let th = io::theory_for(None, &[&raw])?;
                    let t = io::formula_term(&th, &raw)?;
                    render_term(&t, |i, f| f.show(t.shell_context(i).len()))
                }
            };
            if o.json {
                o.line(json!({ "dot": dot }).to_string());
            } else {
                let _ = write!(o.out, "{dot}");
            }
        }
    }
    Ok(0)
}

fn theory_json(th: &Theory) -> Value {
    let axioms: Vec<Value> = th
        .axioms
        .iter()
        .map(|a| {
            let n = a.context.len();
            json!({ "name": a.name, "context": a.context, "lhs": a.lhs.show(n), "rhs": a.rhs.show(n) })
        })
        .collect();
    json!({ "name": th.name, "sorts": th.sorts, "relations": th.relsyms, "axioms": axioms })
}

fn theory_check(file: &PathBuf, o: &mut Output) -> Result<i32> {
    let th = load_theory(file)?;
    let v = theory_json(&th);
    o.either(&v, || {
        format!(
            "theory {}: {} sorts, {} relations, {} axioms\n{}",
            th.name,
            th.sorts.len(),
            th.relsyms.len(),
            th.axioms.len(),
            show_theory(&th).trim_end()
        )
    });
    Ok(0)
}

fn print_formula_term(t: &GraphicalTerm<Formula>, o: &mut Output) -> Result<()> {
    o.value(&io::formula_term_json(t)?);
    Ok(())
}

fn tuples_json(calc: &PrdCalculus, c: &[Sort], p: &Subset) -> Value {
    json!({ "context": c, "carriers": calc.carriers, "tuples": p })
}

fn term(c: &TermCommand, o: &mut Output) -> Result<i32> {
    match c {
        TermCommand::OfFormula { theory, pred } => {
            let text = io::read_input(pred)?;
            let th = match load_theory_opt(theory.as_ref())? {
                Some(th) => th,
                None => io::infer_theory(&[&text], &[])?,
            };
            let (ctx, f) = parse_pred(&text, Some(&th))?;
            print_formula_term(&terms::formula_to_term(&th, &ctx, &f)?, o)?;
        }
        TermCommand::ToFormula { theory, term } | TermCommand::Represent { theory, term } => {
            let raw = io::parse_raw_term(&io::read_input(term)?)?;
            if raw.is_relational() {
                if matches!(c, TermCommand::ToFormula { .. }) {
                    return Err(Error::IllFormed("a relational term has no formula; use `term represent`".into()));
                }
                let (calc, t) = io::prd_term(&raw)?;
                let p = represent(&calc, &t)?;
                let v = tuples_json(&calc, t.out(), &p);
                o.either(&v, || format!("{} tuples on {}: {:?}", p.len(), typed::show_ctx(t.out()), p));
            } else {
                let th = io::theory_for(load_theory_opt(theory.as_ref())?, &[&raw])?;
                let t = io::formula_term(&th, &raw)?;
                let f = term_to_cqnf(&th, &t)?.to_formula();
                let text = show_pred(t.out(), &f);
                o.either(&json!({ "context": t.out(), "formula": f.show(t.out().len()), "pred": text }), || text.clone());
            }
        }
        TermCommand::Rewrite { theory, term, rule, shell, with, pred, wiring, inner } => {
            let raw = io::parse_raw_term(&io::read_input(term)?)?;
            let need_shell = || shell.ok_or_else(|| Error::IllFormed(format!("rule {rule} needs --shell")));
            let new_wiring = || -> Result<TypedWiring> {
                let text = io::read_input(wiring.as_deref().ok_or_else(|| Error::IllFormed("rule break needs --wiring".into()))?)?;
                Ok(serde_json::from_str(&text)?)
            };
            let inner_raw = || -> Result<RawTerm> {
                io::parse_raw_term(&io::read_input(inner.as_deref().ok_or_else(|| Error::IllFormed("rule nest needs --inner".into()))?)?)
            };
            let pred_text = || -> Result<String> {
                io::read_input(pred.as_deref().ok_or_else(|| Error::IllFormed("rule monotone needs --pred".into()))?)
            };
            let (value, relation) = if raw.is_relational() {
                let (calc, t) = io::prd_term(&raw)?;
                let r = match rule.as_str() {
                    "monotone" => Rule::Monotone { shell: need_shell()?, pred: serde_json::from_str(&pred_text()?)? },
                    "break" => Rule::Break(new_wiring()?),
                    "nest" => Rule::Nest { shell: need_shell()?, inner: io::prd_term(&inner_raw()?)?.1 },
                    _ => generic_rule(rule, *shell, *with)?,
                };
                let (t2, rel) = rewrite(&calc, &r, &t)?;
                (io::prd_term_json(&calc, &t2)?, rel)
            } else {
                let inner_parsed = if rule == "nest" { Some(inner_raw()?) } else { None };
                let mut raws = vec![&raw];
                raws.extend(inner_parsed.as_ref());
                let th = io::theory_for(load_theory_opt(theory.as_ref())?, &raws)?;
                let calc = TheoryCalculus::new(th.clone());
                let t = io::formula_term(&th, &raw)?;
                let r = match rule.as_str() {
                    "monotone" => {
                        let s = need_shell()?;
                        if s >= t.preds.len() {
                            return Err(Error::IllFormed(format!("no shell {s}; the term has {}", t.preds.len())));
                        }
                        Rule::Monotone { shell: s, pred: io::pred_on(&th, t.shell_context(s), &pred_text()?)? }
                    }
                    "break" => Rule::Break(new_wiring()?),
                    "nest" => Rule::Nest {
                        shell: need_shell()?,
                        inner: io::formula_term(&th, inner_parsed.as_ref().expect("parsed above"))?,
                    },
                    _ => generic_rule(rule, *shell, *with)?,
                };
                let (t2, rel) = rewrite(&calc, &r, &t)?;
                (io::formula_term_json(&t2)?, rel)
            };
            let rel = match relation {
                Relation::Equal => "equal",
                Relation::Entails => "entails",
            };
            if o.json {
                o.line(json!({ "relation": rel, "term": value }).to_string());
            } else {
                o.line(format!("relation: {rel}"));
                o.value(&value);
            }
        }
    }
    Ok(0)
}

fn generic_rule<P>(rule: &str, shell: Option<usize>, with: Option<usize>) -> Result<Rule<P>> {
    let need = |x: Option<usize>, flag: &str| x.ok_or_else(|| Error::IllFormed(format!("rule {rule} needs --{flag}")));
    Ok(match rule {
        "meet-merge" => Rule::MeetMerge { i: need(shell, "shell")?, j: need(with, "with")? },
        "remove-true" => Rule::RemoveTrue(need(shell, "shell")?),
        "discard" => Rule::Discard,
        _ => {
            return Err(Error::IllFormed(format!(
                "unknown rule {rule}; expected monotone, break, nest, meet-merge, remove-true or discard"
            )))
        }
    })
}

fn entail(theory: Option<&PathBuf>, depth: usize, size: usize, lhs: &str, rhs: &str, o: &mut Output) -> Result<i32> {
    let a = io::parse_raw_term(&io::read_input(lhs)?)?;
    let b = io::parse_raw_term(&io::read_input(rhs)?)?;
    let th = io::theory_for(load_theory_opt(theory)?, &[&a, &b])?;
    let (t, t2) = (io::formula_term(&th, &a)?, io::formula_term(&th, &b)?);
    let verdict = if th.axioms.is_empty() {
        if entails_free(&th, &t, &t2)? {
            Verdict::Proved
        } else {
            Verdict::Refuted(canonical_structure(&th, &t)?.to_model(&th))
        }
    } else {
        entails_with_axioms(&th, &t, &t2, depth, size)?
    };
    Ok(match verdict {
        Verdict::Proved => {
            o.either(&json!({ "verdict": "proved" }), || "Proved".into());
            0
        }
        Verdict::Refuted(m) => {
            let mv = m.to_json(&th)?;
            if o.json {
                o.line(json!({ "verdict": "refuted", "model": mv }).to_string());
            } else {
                o.line("Refuted; countermodel:");
                o.value(&mv);
            }
            1
        }
        Verdict::Unknown => {
            o.either(&json!({ "verdict": "unknown" }), || "Unknown".into());
            2
        }
    })
}

fn model(c: &ModelCommand, o: &mut Output) -> Result<i32> {
    match c {
        ModelCommand::Eval { theory, model, term } => {
            let raw = io::parse_raw_term(&io::read_input(term)?)?;
            let th = io::theory_for(load_theory_opt(theory.as_ref())?, &[&raw])?;
            let m = Model::from_json(&io::read_input(model)?, &th)?;
            m.validate(&th)?;
            let t = io::formula_term(&th, &raw)?;
            let set = m.eval_term(&t)?;
            let rows: Vec<Vec<String>> = set.iter().map(|tu| m.show_tuple(t.out(), tu)).collect();
            let v = json!(rows);
            o.line(v.to_string());
        }
        ModelCommand::CheckAxioms { theory, model } => {
            let th = load_theory(theory)?;
            let m = Model::from_json(&io::read_input(model)?, &th)?;
            m.validate(&th)?;
            let mut failing = Vec::new();
            for ax in &th.axioms {
                let l = m.eval_formula(&ax.context, &ax.lhs)?;
                let r = m.eval_formula(&ax.context, &ax.rhs)?;
                if !l.is_subset(&r) {
                    failing.push(ax.name.clone());
                }
            }
            let ok = failing.is_empty();
            o.either(&json!({ "holds": ok, "failing": failing }), || {
                if ok {
                    "true".into()
                } else {
                    format!("false: {} fails", failing.join(", "))
                }
            });
            return Ok(if ok { 0 } else { 1 });
        }
    }
    Ok(0)
}

fn leq_name(l: Leq) -> &'static str {
    match l {
        Leq::Yes => "yes",
        Leq::No => "no",
        Leq::Unknown => "unknown",
    }
}

fn formula_morphism_json(m: &SynMorphism<Formula>) -> Value {
    let joint = m.context();
    json!({
        "src": io::formula_object_json(&m.src.context, &m.src.pred),
        "dst": io::formula_object_json(&m.dst.context, &m.dst.pred),
        "theta": show_pred(&joint, &m.theta),
        "certificate": leq_name(m.certificate),
        "unchecked": m.unchecked,
    })
}

fn prd_morphism_json(calc: &PrdCalculus, m: &SynMorphism<Subset>) -> Value {
    json!({
        "carriers": calc.carriers,
        "src": io::prd_object_json(&m.src.context, &m.src.pred),
        "dst": io::prd_object_json(&m.dst.context, &m.dst.pred),
        "theta": m.theta,
        "certificate": leq_name(m.certificate),
        "unchecked": m.unchecked,
    })
}

/// Syn data resolved in one of the two concrete calculi.
enum SynData {
    Theory(TheoryCalculus, Vec<SynItem<Formula>>),
    Prd(PrdCalculus, Vec<SynItem<Subset>>),
}

enum SynItem<P> {
    Object(SynObject<P>),
    Morphism(SynMorphism<P>),
}

impl<P: Clone> SynItem<P> {
    fn object(&self) -> Result<SynObject<P>> {
        match self {
            SynItem::Object(x) => Ok(x.clone()),
            SynItem::Morphism(_) => Err(Error::IllFormed("expected an object, found a morphism".into())),
        }
    }

    fn morphism(&self) -> Result<SynMorphism<P>> {
        match self {
            SynItem::Morphism(m) => Ok(m.clone()),
            SynItem::Object(_) => Err(Error::IllFormed("expected a morphism, found an object".into())),
        }
    }
}

fn load_syn(theory: Option<&PathBuf>, args: &[&str]) -> Result<SynData> {
    let raws = args.iter().map(|a| io::parse_raw_syn(&io::read_input(a)?)).collect::<Result<Vec<_>>>()?;
    if let Some(c) = raws[0].carriers() {
        let calc = PrdCalculus::new(c.clone());
        let mut items = Vec::new();
        for r in &raws {
            if r.carriers() != Some(c) {
                return Err(Error::IllFormed("all arguments need the same `carriers`".into()));
            }
            items.push(match r {
                io::RawSyn::Object { object, .. } => {
                    let (ctx, p) = io::prd_object(&calc, object)?;
                    SynItem::Object(SynObject::new(ctx, p))
                }
                io::RawSyn::Morphism { src, dst, theta, .. } => {
                    let (c1, p1) = io::prd_object(&calc, src)?;
                    let (c2, p2) = io::prd_object(&calc, dst)?;
                    let th = match theta {
                        io::RawPred::Tuples(t) => t.clone(),
                        io::RawPred::Text(_) => return Err(Error::IllFormed("relational morphisms take tuple predicates".into())),
                    };
                    SynItem::Morphism(SynMorphism::new(&calc, SynObject::new(c1, p1), SynObject::new(c2, p2), th)?)
                }
            });
        }
        return Ok(SynData::Prd(calc, items));
    }
    let th = match load_theory_opt(theory)? {
        Some(th) => th,
        None => {
            let texts: Vec<&str> = raws.iter().flat_map(|r| r.pred_texts()).collect();
            io::infer_theory(&texts, &[])?
        }
    };
    let calc = TheoryCalculus::new(th.clone());
    let mut items = Vec::new();
    for r in &raws {
        items.push(match r {
            io::RawSyn::Object { object, .. } => {
                let (c, f) = io::formula_object(&th, object)?;
                SynItem::Object(SynObject::new(c, f))
            }
            io::RawSyn::Morphism { src, dst, theta, .. } => {
                let (c1, f1) = io::formula_object(&th, src)?;
                let (c2, f2) = io::formula_object(&th, dst)?;
                let joint: Vec<Sort> = c1.iter().chain(&c2).cloned().collect();
                let text = match theta {
                    io::RawPred::Text(s) => s,
                    io::RawPred::Tuples(_) => return Err(Error::IllFormed("tuple predicates need `carriers`".into())),
                };
                let t = io::pred_on(&th, &joint, text)?;
                SynItem::Morphism(SynMorphism::unchecked(&calc, SynObject::new(c1, f1), SynObject::new(c2, f2), t)?)
            }
        });
    }
    Ok(SynData::Theory(calc, items))
}

fn syn_cmd(c: &SynCommand, o: &mut Output) -> Result<i32> {
    let (theory, args): (Option<&PathBuf>, Vec<&str>) = match c {
        SynCommand::Id { theory, object } => (theory.as_ref(), vec![object]),
        SynCommand::Compose { theory, f, g } => (theory.as_ref(), vec![f, g]),
        SynCommand::Supply { theory, object, .. } => (theory.as_ref(), vec![object]),
        SynCommand::Laws { max_carrier } => {
            let cap = match max_carrier {
                Some(n) => *n,
                None => Scale::from_env()?.carriers,
            };
            let mut results = laws::syn_prd_laws(cap);
            results.push(laws::meet_semilattice_laws(cap + 2));
            results.push(laws::limits_prd(cap + 1));
            return report_laws(&results, o);
        }
    };
    let kind = match c {
        SynCommand::Supply { kind, .. } => Some(
            SupplyKind::parse(kind).ok_or_else(|| Error::IllFormed(format!("unknown supply {kind}; expected epsilon, eta, delta or mu")))?,
        ),
        _ => None,
    };
    fn go<C: RegularCalculus>(calc: &C, items: &[SynItem<C::Pred>], c: &SynCommand, kind: Option<SupplyKind>) -> Result<SynMorphism<C::Pred>> {
        match c {
            SynCommand::Id { .. } => syn::syn_identity(calc, &items[0].object()?),
            SynCommand::Compose { .. } => syn::syn_compose(calc, &items[0].morphism()?, &items[1].morphism()?),
            SynCommand::Supply { .. } => syn::syn_supply(calc, &items[0].object()?, kind.expect("parsed")),
            SynCommand::Laws { .. } => unreachable!("handled earlier"),
        }
    }
    let v = match load_syn(theory, &args)? {
        SynData::Theory(calc, items) => formula_morphism_json(&go(&calc, &items, c, kind)?),
        SynData::Prd(calc, items) => prd_morphism_json(&calc, &go(&calc, &items, c, kind)?),
    };
    o.value(&v);
    Ok(0)
}

fn report_laws(results: &[LawResult], o: &mut Output) -> Result<i32> {
    let ok = results.iter().all(|r| r.passed);
    if o.json {
        let rows: Vec<Value> = results
            .iter()
            .map(|r| json!({ "suite": r.suite, "name": r.name, "passed": r.passed, "cases": r.cases, "detail": r.detail }))
            .collect();
        o.line(json!({ "passed": ok, "results": rows }).to_string());
    } else {
        for r in results {
            o.line(r.to_string());
        }
        let failed = results.iter().filter(|r| !r.passed).count();
        o.line(format!("{} checks, {failed} failed", results.len()));
    }
    Ok(if ok { 0 } else { 1 })
}
