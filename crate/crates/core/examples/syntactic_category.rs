//! The syntactic category of the predicates calculus of finite sets:
//! identities, composition, supply, equalizers and images.

use std::collections::BTreeSet;

use grl::relsem::{PrdCalculus, Subset};
use grl::syn::{graphical_limits_prd, syn_compose, syn_identity, syn_supply, LimitKind, SupplyKind, SynMorphism, SynObject};
use grl::typed::ctx;

fn set(items: &[&[usize]]) -> Subset {
    items.iter().map(|t| t.to_vec()).collect::<BTreeSet<_>>()
}

fn main() -> grl::Result<()> {
    let calc = PrdCalculus::uniform(&["X"], 3);
    let x = ctx(&["X"]);
    let all = SynObject::new(x.clone(), set(&[&[0], &[1], &[2]]));

    let id = syn_identity(&calc, &all)?;
    println!("identity: {:?}", id.theta);

    // h(x) = x + 1 mod 3 and k(x) = 2x mod 3, as graphs
    let h = SynMorphism::new(&calc, all.clone(), all.clone(), set(&[&[0, 1], &[1, 2], &[2, 0]]))?;
    let k = SynMorphism::new(&calc, all.clone(), all.clone(), set(&[&[0, 0], &[1, 2], &[2, 1]]))?;
    let hk = syn_compose(&calc, &h, &k)?;
    println!("h⨾k: {:?} ({:?})", hk.theta, hk.certificate);

    let eq = graphical_limits_prd(&calc, &h, &k, LimitKind::Equalizer)?;
    println!("equalizer of h and k: {:?}", eq.pred);
    let im = graphical_limits_prd(&calc, &k, &k, LimitKind::Image)?;
    println!("image of k: {:?}", im.pred);

    for kind in [SupplyKind::Epsilon, SupplyKind::Eta, SupplyKind::Delta, SupplyKind::Mu] {
        let m = syn_supply(&calc, &eq, kind)?;
        println!("{kind:?} on the equalizer: {:?}", m.theta);
    }
    Ok(())
}
