//! JSON formats for terms, predicates and syntactic-category data.
//!
//! A term is a wiring object (`shells`, `out`, `blocks`, `floating`) with a
//! `preds` array holding one predicate per shell. Over a theory each
//! predicate is text such as `"[x:X, y:X] P(x,y)"`; with a `carriers`
//! object the term lives in the relational calculus and each predicate is a
//! list of index tuples.

use std::collections::BTreeMap;
use std::path::Path;

use serde_json::{json, Value};

use crate::dsl::{parse_pred, show_pred};
use crate::error::{Error, Result};
use crate::formulas::{Formula, Theory};
use crate::relsem::{PrdCalculus, Subset};
use crate::terms::{formula_to_term, GraphicalTerm};
use crate::typed::{show_ctx, Context, Sort, TypedWiring};

/// The text of a file argument, or the argument itself when no such file exists.
pub fn read_input(arg: &str) -> Result<String> {
    let path = Path::new(arg);
    if !arg.trim_start().starts_with(['{', '[']) && path.is_file() {
        return std::fs::read_to_string(path).map_err(|e| Error::IllFormed(format!("cannot read {arg}: {e}")));
    }
    Ok(arg.to_string())
}

/// A predicate as written, before it is resolved against a calculus.
#[derive(Clone, Debug, PartialEq)]
pub enum RawPred {
    Text(String),
    Tuples(Subset),
}

impl RawPred {
    fn of_value(v: &Value) -> Result<RawPred> {
        match v {
            Value::String(s) => Ok(RawPred::Text(s.clone())),
            Value::Array(_) => Ok(RawPred::Tuples(serde_json::from_value(v.clone())?)),
            other => Err(Error::IllFormed(format!("a predicate is text or a list of tuples, not {other}"))),
        }
    }

    fn text(&self) -> Result<&str> {
        match self {
            RawPred::Text(s) => Ok(s),
            RawPred::Tuples(_) => Err(Error::IllFormed("tuple predicates need a `carriers` object".into())),
        }
    }

    fn tuples(&self) -> Result<&Subset> {
        match self {
            RawPred::Tuples(t) => Ok(t),
            RawPred::Text(_) => Err(Error::IllFormed("with `carriers`, predicates are lists of tuples".into())),
        }
    }
}

/// A term or predicate file, unresolved.
#[derive(Clone, Debug, PartialEq)]
pub enum RawTerm {
    Term { wiring: TypedWiring, preds: Vec<RawPred>, carriers: Option<BTreeMap<Sort, usize>> },
    /// A bare predicate, read as the one-shell term that represents it.
    Pred(String),
}

fn carriers_of(v: &Value) -> Result<Option<BTreeMap<Sort, usize>>> {
    match v.get("carriers") {
        None => Ok(None),
        Some(c) => Ok(Some(serde_json::from_value(c.clone())?)),
    }
}

pub fn parse_raw_term(text: &str) -> Result<RawTerm> {
    let trimmed = text.trim_start();
    if !trimmed.starts_with('{') {
        return Ok(RawTerm::Pred(text.to_string()));
    }
    let v: Value = serde_json::from_str(text)?;
    let wiring: TypedWiring = serde_json::from_value(v.clone())?;
    let preds = match v.get("preds") {
        Some(Value::Array(ps)) => ps.iter().map(RawPred::of_value).collect::<Result<Vec<_>>>()?,
        Some(_) => return Err(Error::IllFormed("`preds` must be an array".into())),
        None => vec![],
    };
    if preds.len() != wiring.shells().len() {
        return Err(Error::IllFormed(format!("{} predicates for {} shells", preds.len(), wiring.shells().len())));
    }
    Ok(RawTerm::Term { wiring, preds, carriers: carriers_of(&v)? })
}

impl RawTerm {
    pub fn is_relational(&self) -> bool {
        matches!(self, RawTerm::Term { carriers: Some(_), .. })
    }

    fn pred_texts(&self) -> Vec<&str> {
        match self {
            RawTerm::Term { preds, .. } => preds.iter().filter_map(|p| p.text().ok()).collect(),
            RawTerm::Pred(s) => vec![s],
        }
    }
}

/// Every `(context, formula)` in the given predicate texts, parsed against
/// an open signature, and the theory they determine.
pub fn infer_theory(texts: &[&str], extra_contexts: &[Context]) -> Result<Theory> {
    let parsed = texts.iter().map(|t| parse_pred(t, None)).collect::<Result<Vec<_>>>()?;
    let items: Vec<(&[Sort], &Formula)> = parsed.iter().map(|(c, f)| (c.as_slice(), f)).collect();
    let mut th = Theory::infer(&items)?;
    for c in extra_contexts {
        th.sorts.extend(c.iter().cloned());
    }
    Ok(th)
}

/// The theory to use for some formula terms: the given one, or the open
/// signature their predicates use.
pub fn theory_for(theory: Option<Theory>, raws: &[&RawTerm]) -> Result<Theory> {
    if let Some(th) = theory {
        return Ok(th);
    }
    let texts: Vec<&str> = raws.iter().flat_map(|r| r.pred_texts()).collect();
    let contexts: Vec<Context> = raws
        .iter()
        .filter_map(|r| match r {
            RawTerm::Term { wiring, .. } => Some(wiring.shells().iter().chain([wiring.out()]).flatten().cloned().collect()),
            RawTerm::Pred(_) => None,
        })
        .collect();
    infer_theory(&texts, &contexts)
}

/// Parses a predicate on a known context.
pub fn pred_on(theory: &Theory, c: &[Sort], text: &str) -> Result<Formula> {
    let (got, f) = parse_pred(text, Some(theory))?;
    if got != c {
        return Err(Error::ContextMismatch { expected: show_ctx(c), found: show_ctx(&got) });
    }
    Ok(f)
}

pub fn formula_term(theory: &Theory, raw: &RawTerm) -> Result<GraphicalTerm<Formula>> {
    match raw {
        RawTerm::Pred(text) => {
            let (c, f) = parse_pred(text, Some(theory))?;
            formula_to_term(theory, &c, &f)
        }
        RawTerm::Term { carriers: Some(_), .. } => Err(Error::IllFormed("expected a term over formulas, found one with carriers".into())),
        RawTerm::Term { wiring, preds, carriers: None } => {
            let fs = preds
                .iter()
                .zip(wiring.shells())
                .map(|(p, c)| pred_on(theory, c, p.text()?))
                .collect::<Result<Vec<_>>>()?;
            let t = GraphicalTerm::new(fs, wiring.clone())?;
            theory.check_context(t.out())?;
            Ok(t)
        }
    }
}

pub fn prd_term(raw: &RawTerm) -> Result<(PrdCalculus, GraphicalTerm<Subset>)> {
    match raw {
        RawTerm::Term { wiring, preds, carriers: Some(c) } => {
            let calc = PrdCalculus::new(c.clone());
            let ps = preds.iter().map(|p| p.tuples().cloned()).collect::<Result<Vec<_>>>()?;
            let t = GraphicalTerm::new(ps, wiring.clone())?;
            t.check(&calc)?;
            calc.sizes(t.out())?;
            Ok((calc, t))
        }
        _ => Err(Error::IllFormed("a relational term needs a `carriers` object".into())),
    }
}

fn with_preds(wiring: &TypedWiring, preds: Vec<Value>) -> Result<Value> {
    let mut v = serde_json::to_value(wiring)?;
    v.as_object_mut().expect("wiring is an object").insert("preds".into(), Value::Array(preds));
    Ok(v)
}

pub fn formula_term_json(t: &GraphicalTerm<Formula>) -> Result<Value> {
    let preds = t.preds.iter().zip(t.wiring.shells()).map(|(f, c)| Value::String(show_pred(c, f))).collect();
    with_preds(&t.wiring, preds)
}

pub fn prd_term_json(calc: &PrdCalculus, t: &GraphicalTerm<Subset>) -> Result<Value> {
    let preds = t.preds.iter().map(serde_json::to_value).collect::<std::result::Result<Vec<_>, _>>()?;
    let mut v = with_preds(&t.wiring, preds)?;
    v.as_object_mut().expect("object").insert("carriers".into(), serde_json::to_value(&calc.carriers)?);
    Ok(v)
}

/// A syntactic-category object or morphism as written.
#[derive(Clone, Debug, PartialEq)]
pub struct RawObject {
    pub context: Option<Context>,
    pub pred: RawPred,
}

fn raw_object(v: &Value) -> Result<RawObject> {
    let context = match v.get("context") {
        Some(c) => Some(serde_json::from_value(c.clone())?),
        None => None,
    };
    let pred = RawPred::of_value(v.get("pred").ok_or_else(|| Error::IllFormed("an object needs `pred`".into()))?)?;
    Ok(RawObject { context, pred })
}

#[derive(Clone, Debug, PartialEq)]
pub enum RawSyn {
    Object { carriers: Option<BTreeMap<Sort, usize>>, object: RawObject },
    Morphism { carriers: Option<BTreeMap<Sort, usize>>, src: RawObject, dst: RawObject, theta: RawPred },
}

impl RawSyn {
    pub fn carriers(&self) -> Option<&BTreeMap<Sort, usize>> {
        match self {
            RawSyn::Object { carriers, .. } | RawSyn::Morphism { carriers, .. } => carriers.as_ref(),
        }
    }

    pub fn pred_texts(&self) -> Vec<&str> {
        let objs: Vec<&RawPred> = match self {
            RawSyn::Object { object, .. } => vec![&object.pred],
            RawSyn::Morphism { src, dst, theta, .. } => vec![&src.pred, &dst.pred, theta],
        };
        objs.into_iter().filter_map(|p| p.text().ok()).collect()
    }
}

pub fn parse_raw_syn(text: &str) -> Result<RawSyn> {
    let v: Value = serde_json::from_str(text)?;
    let carriers = carriers_of(&v)?;
    if v.get("theta").is_some() {
        let get = |k: &str| v.get(k).ok_or_else(|| Error::IllFormed(format!("a morphism needs `{k}`")));
        Ok(RawSyn::Morphism {
            carriers,
            src: raw_object(get("src")?)?,
            dst: raw_object(get("dst")?)?,
            theta: RawPred::of_value(get("theta")?)?,
        })
    } else {
        Ok(RawSyn::Object { carriers, object: raw_object(&v)? })
    }
}

/// Resolves an object over a theory; the context is read from the predicate.
pub fn formula_object(theory: &Theory, o: &RawObject) -> Result<(Context, Formula)> {
    let (c, f) = parse_pred(o.pred.text()?, Some(theory))?;
    if let Some(want) = &o.context {
        if *want != c {
            return Err(Error::ContextMismatch { expected: show_ctx(want), found: show_ctx(&c) });
        }
    }
    Ok((c, f))
}

pub fn prd_object(calc: &PrdCalculus, o: &RawObject) -> Result<(Context, Subset)> {
    let c = o.context.clone().ok_or_else(|| Error::IllFormed("relational objects need `context`".into()))?;
    let p = o.pred.tuples()?.clone();
    use crate::terms::RegularCalculus;
    calc.check(&c, &p)?;
    Ok((c, p))
}

pub fn formula_object_json(c: &[Sort], f: &Formula) -> Value {
    json!({ "context": c, "pred": show_pred(c, f) })
}

pub fn prd_object_json(c: &[Sort], p: &Subset) -> Value {
    json!({ "context": c, "pred": p })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::typed::ctx;

    #[test]
    fn formula_terms_round_trip() {
        let text = r#"{"shells":[["X","X"]],"out":["X"],"blocks":[[{"s":0,"p":0},{"o":0}],[{"s":0,"p":1}]],"preds":["[a:X, b:X] P(a,b)"]}"#;
        let raw = parse_raw_term(text).unwrap();
        let th = theory_for(None, &[&raw]).unwrap();
        assert_eq!(th.relsyms["P"], ctx(&["X", "X"]));
        let t = formula_term(&th, &raw).unwrap();
        let again = formula_term(&th, &parse_raw_term(&formula_term_json(&t).unwrap().to_string()).unwrap()).unwrap();
        assert_eq!(again, t);
    }

    #[test]
    fn relational_terms_round_trip() {
        let text = r#"{"carriers":{"X":2},"shells":[["X"]],"out":["X"],"blocks":[[{"s":0,"p":0},{"o":0}]],"preds":[[[1]]]}"#;
        let (calc, t) = prd_term(&parse_raw_term(text).unwrap()).unwrap();
        let back = prd_term(&parse_raw_term(&prd_term_json(&calc, &t).unwrap().to_string()).unwrap()).unwrap();
        assert_eq!(back, (calc, t));
    }

    #[test]
    fn bare_predicates_are_terms() {
        let th = Theory::new("t").with_sort("X").with_rel("P", &["X"]);
        let t = formula_term(&th, &parse_raw_term("[x:X] P(x)").unwrap()).unwrap();
        assert_eq!(t.out(), &ctx(&["X"]));
        assert!(matches!(formula_term(&th, &parse_raw_term("[x:X] Q(x)").unwrap()), Err(Error::Parse { .. })));
    }
}
