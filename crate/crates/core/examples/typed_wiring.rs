//! Sorted wiring diagrams: nesting, per-sort decomposition, transpose and name.

use std::collections::BTreeSet;

use grl::typed::{compose_at, ctx, name, supply_gen, transpose, unname, Port, TypedWiring};
use grl::wiring::Generator;

fn main() -> grl::Result<()> {
    // two shells [X,Y] and [Y,X] sharing their Y wire, X wires exposed
    let outer = TypedWiring::new(
        vec![ctx(&["X", "Y"]), ctx(&["Y", "X"])],
        ctx(&["X", "X"]),
        vec![
            vec![Port::shell(0, 0), Port::out(0)],
            vec![Port::shell(0, 1), Port::shell(1, 0)],
            vec![Port::shell(1, 1), Port::out(1)],
        ],
        BTreeSet::new(),
    )?;
    println!("outer: {outer}");

    // fill the first shell with a diagram that copies its X input
    let inner = TypedWiring::new(
        vec![ctx(&["X"])],
        ctx(&["X", "Y"]),
        vec![vec![Port::shell(0, 0), Port::out(0)], vec![Port::out(1)]],
        BTreeSet::new(),
    )?;
    let nested = compose_at(&outer, 0, &inner)?;
    println!("nested into shell 0: {nested}");

    for (sort, w) in nested.per_sort() {
        println!("  sort {sort}: {w}");
    }

    let xy = ctx(&["X", "Y"]);
    let delta = supply_gen(Generator::Delta, &xy);
    println!("δ on [X,Y]: {delta}");
    println!("its transpose: {}", transpose(&delta)?);
    let named = name(&delta)?;
    println!("its name: {named}");
    assert_eq!(unname(&named, 2)?, delta);

    let inhabited = supply_gen(Generator::Eta, &ctx(&["X"])).then(&supply_gen(Generator::Epsilon, &ctx(&["X"])))?;
    println!("η⨾ε on [X] leaves a floating dot: {inhabited}");
    Ok(())
}
