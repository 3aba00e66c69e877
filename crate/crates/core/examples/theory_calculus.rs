//! The regular calculus of a theory: wirings act on formulas.

use grl::dsl::{parse_pred, parse_theory, show_pred, show_theory};
use grl::formulas::{act_wiring, boxplus, lambda_split, normalize};
use grl::typed::{ctx, supply_gen};
use grl::wiring::Generator;

const THEORY: &str = "
theory Preorder
sort X
rel P : X X
axiom refl : [x:X] true |- P(x,x)
axiom trans : [x:X, z:X] exists y:X. P(x,y) /\\ P(y,z) |- P(x,z)
";

fn main() -> grl::Result<()> {
    let th = parse_theory(THEORY)?;
    print!("{}", show_theory(&th));

    let (xx, p) = parse_pred("[x:X, y:X] P(x,y)", Some(&th))?;
    let (x, refl) = parse_pred("[x:X] P(x,x)", Some(&th))?;
    for (label, g, c, phi) in [
        ("ε", Generator::Epsilon, &x, &refl),
        ("δ", Generator::Delta, &x, &refl),
        ("μ", Generator::Mu, &x, &p),
        ("η", Generator::Eta, &x, &grl::formulas::Formula::True),
    ] {
        let w = supply_gen(g, c);
        let q = act_wiring(&th, &w, phi)?;
        println!("{label} · {} = {}", show_pred(&w.shells()[0], phi), show_pred(w.out(), &q));
    }

    let both = boxplus(&x, &refl, &xx, &p);
    let joint = ctx(&["X", "X", "X"]);
    println!("⊞: {}", show_pred(&joint, &both));
    let (l, r) = lambda_split(&x, &xx, &both);
    println!("λ: {} and {}", show_pred(&x, &l), show_pred(&xx, &r));

    let (c, messy) = parse_pred("[a:X, b:X] exists u:X. (P(a,u) /\\ u = b) /\\ exists v:X. P(v,v)", Some(&th))?;
    let nf = normalize(&th, &c, &messy)?;
    println!("normal form of {} is {}", show_pred(&c, &messy), show_pred(&c, &nf.to_formula()));
    Ok(())
}
