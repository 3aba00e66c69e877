//! Graphical terms: translation from formulas, the predicate a term
//! represents, and the rewrite rules.

use grl::dsl::{parse_pred, parse_theory, show_pred};
use grl::formulas::Formula;
use grl::terms::{formula_to_term, represent, rewrite, Rule, TheoryCalculus};

fn main() -> grl::Result<()> {
    let th = parse_theory("theory Monoid\nsort M\nrel star : M M M\nrel e : M\n")?;
    let calc = TheoryCalculus::new(th.clone());

    let (c, comm) = parse_pred("[x:M, y:M] exists m:M. exists m':M. star(x,y,m) /\\ star(y,x,m') /\\ m = m'", Some(&th))?;
    let t = formula_to_term(&th, &c, &comm)?;
    println!("commutativity as a term: {} shells, wiring {}", t.preds.len(), t.wiring);
    println!("represents {}", show_pred(&c, &represent(&calc, &t)?));

    let steps: Vec<(&str, Rule<Formula>)> = vec![
        ("weaken shell 1 to true", Rule::Monotone { shell: 1, pred: Formula::True }),
        ("drop the true shell", Rule::RemoveTrue(1)),
        ("discard everything", Rule::Discard),
    ];
    let mut cur = t;
    for (what, rule) in steps {
        let (next, rel) = rewrite(&calc, &rule, &cur)?;
        println!("{what}: {:?} -> {}", rel, show_pred(next.out(), &represent(&calc, &next)?));
        cur = next;
    }
    Ok(())
}
