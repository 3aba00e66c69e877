//! The wiring po-prop: generators, composition by connectivity and the order.

use grl::laws::{bell, wiring_laws};
use grl::wiring::{compose_w, enum_homs, generator, leq_w, tensor_w, Generator, WMor};

fn main() -> grl::Result<()> {
    let delta = generator(Generator::Delta);
    let mu = generator(Generator::Mu);
    let eta = generator(Generator::Eta);
    let eps = generator(Generator::Epsilon);

    println!("δ = {delta}");
    println!("δ⨾μ = {}", compose_w(&delta, &mu)?);
    println!("μ⨾δ = {}", compose_w(&mu, &delta)?);
    println!("η⨾ε = {}   (inhabitedness)", compose_w(&eta, &eps)?);
    println!("ε⨾η = {}", compose_w(&eps, &eta)?);
    println!("η ⊗ ε = {}", tensor_w(&eta, &eps));

    // μ⨾δ connects all four ports; the identity on 2 keeps two wires apart
    let md = compose_w(&mu, &delta)?;
    println!("μ⨾δ ≤ id₂: {}", leq_w(&md, &WMor::identity(2))?);
    println!("id₂ ≤ μ⨾δ: {}", leq_w(&WMor::identity(2), &md)?);

    for total in 0..=5 {
        let homs = enum_homs(total, 0)?;
        println!("|W({total},0)| = {} (Bell {})", homs.len(), if total == 0 { 2 } else { bell(total) });
    }

    for law in wiring_laws() {
        let (l, r) = (law.lhs.eval_w()?, law.rhs.eval_w()?);
        println!("{law}\n    {l}  vs  {r}");
    }
    Ok(())
}
