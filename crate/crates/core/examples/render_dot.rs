//! Graphviz output for a graphical term; pipe into `dot -Tsvg`.

use grl::dot::render_term;
use grl::dsl::{parse_pred, parse_theory};
use grl::terms::formula_to_term;

fn main() -> grl::Result<()> {
    let th = parse_theory("theory Category\nsort O\nsort M\nrel dom : M O\nrel cod : M O\nrel comp : M M M\n")?;
    let (c, composable) = parse_pred(
        "[f:M, g:M] exists h:M. exists y:O. cod(f,y) /\\ dom(g,y) /\\ comp(f,g,h)",
        Some(&th),
    )?;
    let t = formula_to_term(&th, &c, &composable)?;
    print!("{}", render_term(&t, |i, f| f.show(t.shell_context(i).len())));
    Ok(())
}
