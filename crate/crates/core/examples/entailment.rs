//! Deciding entailment: homomorphisms of canonical structures, and the
//! chase with countermodel search under axioms.

use grl::dsl::{parse_pred, parse_theory, show_pred};
use grl::entail::{entails_free, formula_entails_with_axioms, Verdict};
use grl::terms::formula_to_term;

const THEORY: &str = "
theory Preorder
sort X
rel P : X X
axiom refl : [x:X] true |- P(x,x)
axiom trans : [x:X, z:X] exists y:X. P(x,y) /\\ P(y,z) |- P(x,z)
";

fn main() -> grl::Result<()> {
    let th = parse_theory(THEORY)?;
    let mut free = th.clone();
    free.axioms.clear();

    let pairs = [
        ("[x:X, z:X] P(x,z) /\\ P(z,x)", "[x:X, z:X] exists y:X. P(x,y)"),
        ("[x:X, z:X] exists y:X. P(x,y) /\\ P(y,z)", "[x:X, z:X] P(x,z)"),
        ("[x:X, z:X] x = z", "[x:X, z:X] P(x,z)"),
        ("[x:X, z:X] P(x,z)", "[x:X, z:X] x = z"),
    ];
    for (a, b) in pairs {
        let (c, fa) = parse_pred(a, Some(&th))?;
        let (_, fb) = parse_pred(b, Some(&th))?;
        let plain = entails_free(&free, &formula_to_term(&free, &c, &fa)?, &formula_to_term(&free, &c, &fb)?)?;
        let with_axioms = match formula_entails_with_axioms(&th, &c, &fa, &fb, 4, 3) {
            Verdict::Proved => "proved".to_string(),
            Verdict::Refuted(m) => format!("refuted by {}", m.to_json(&th)?),
            Verdict::Unknown => "unknown".to_string(),
        };
        println!("{}  ⊢  {}", show_pred(&c, &fa), show_pred(&c, &fb));
        println!("    without axioms: {plain}; as a preorder: {with_axioms}");
    }
    Ok(())
}
