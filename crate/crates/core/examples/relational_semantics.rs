//! Finite relations, tabulations, the predicates calculus of sets and
//! evaluation of terms in a model.

use grl::dsl::{parse_pred, parse_theory};
use grl::relsem::{rel_compose, rel_dagger, rel_supply_w, tabulate, FinRel, Model, PrdCalculus};
use grl::terms::{formula_to_term, RegularCalculus};
use grl::typed::ctx;
use grl::wiring::{generator, Generator};

fn main() -> grl::Result<()> {
    let f = FinRel::new(2, 3, [(0, 0), (0, 2), (1, 1)])?;
    println!("f = {:?}", f.pairs());
    println!("f† ⨾ f = {:?}", rel_compose(&rel_dagger(&f), &f)?.pairs());

    let tab = tabulate(&f);
    let hat = tab.hat();
    let back = rel_compose(&hat, &rel_dagger(&hat))?;
    println!("tabulation through {} pairs, f̂⨾f̂† is the identity: {}", tab.tab.len(), back == FinRel::identity(tab.tab.len()));

    let delta2 = rel_supply_w(&generator(Generator::Delta), 2);
    println!("δ on a 2-element set: {:?}", delta2.pairs());

    let calc = PrdCalculus::uniform(&["X"], 3);
    let diag = calc.truth(&ctx(&["X", "X"]));
    println!("true on [X,X] has {} tuples", diag.len());

    let th = parse_theory("theory Graph\nsort V\nrel E : V V\n")?;
    let m = Model::with_sizes(&[("V", 4)]).with_rel("E", &[&[0, 1], &[1, 2], &[2, 3], &[3, 0]]);
    m.validate(&th)?;
    let (c, two_step) = parse_pred("[a:V, b:V] exists m:V. E(a,m) /\\ E(m,b)", Some(&th))?;
    let t = formula_to_term(&th, &c, &two_step)?;
    for tuple in m.eval_term(&t)? {
        println!("  two steps: {:?}", m.show_tuple(&c, &tuple));
    }
    Ok(())
}
