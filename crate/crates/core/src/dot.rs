//! Graphviz rendering of wiring diagrams and graphical terms.
//!
//! A block with exactly two ports is drawn as a plain edge; any other block
//! becomes a dot joined to each of its ports. Floating sorts are isolated
//! dots and the outer boundary sits on its own rank.

use std::fmt::Write;

use crate::typed::{Port, TypedWiring};

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"").replace('\n', "\\n")
}

fn endpoint(p: Port) -> (String, usize) {
    match p {
        Port::Shell { s, p } => (format!("s{s}"), p),
        Port::Out { o } => (format!("o{o}"), o),
    }
}

/// DOT for a wiring with optional shell labels.
pub fn render(w: &TypedWiring, labels: &[String]) -> String {
    let mut out = String::new();
    out.push_str("graph wiring {\n  rankdir=LR;\n  node [fontname=\"Helvetica\", fontsize=10];\n  edge [fontname=\"Helvetica\", fontsize=8];\n");
    for (i, c) in w.shells().iter().enumerate() {
        let mut label = format!("s{i}");
        if let Some(l) = labels.get(i) {
            label.push('\n');
            label.push_str(l);
        } else if !c.is_empty() {
            let sorts: Vec<&str> = c.iter().map(|s| s.as_str()).collect();
            label.push('\n');
            label.push_str(&sorts.join(" "));
        }
        let _ = writeln!(out, "  s{i} [shape=circle, label=\"{}\"];", escape(&label));
    }
    if !w.out().is_empty() {
        out.push_str("  subgraph boundary {\n    rank=sink;\n");
        for (o, s) in w.out().iter().enumerate() {
            let _ = writeln!(out, "    o{o} [shape=plaintext, label=\"{}\"];", escape(&format!("{o}:{s}")));
        }
        out.push_str("  }\n");
    }
    for (b, block) in w.blocks().iter().enumerate() {
        let sort = w.port_sort(block[0]).map(|s| s.to_string()).unwrap_or_default();
        if block.len() == 2 {
            let (a, pa) = endpoint(block[0]);
            let (c, pc) = endpoint(block[1]);
            let _ = writeln!(out, "  {a} -- {c} [label=\"{}\", taillabel=\"{pa}\", headlabel=\"{pc}\"];", escape(&sort));
        } else {
            let _ = writeln!(out, "  b{b} [shape=point, width=0.08, xlabel=\"{}\"];", escape(&sort));
            for &p in block {
                let (a, pa) = endpoint(p);
                let _ = writeln!(out, "  b{b} -- {a} [headlabel=\"{pa}\"];");
            }
        }
    }
    for (f, s) in w.floating().iter().enumerate() {
        let _ = writeln!(out, "  f{f} [shape=point, width=0.08, xlabel=\"{}\"];", escape(s.as_str()));
    }
    out.push_str("}\n");
    out
}

pub fn render_wiring(w: &TypedWiring) -> String {
    render(w, &[])
}

/// DOT for a term, each shell labelled by its predicate.
pub fn render_term<P>(t: &crate::terms::GraphicalTerm<P>, show: impl Fn(usize, &P) -> String) -> String {
    let labels: Vec<String> = t.preds.iter().enumerate().map(|(i, p)| show(i, p)).collect();
    render(&t.wiring, &labels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::typed::{ctx, supply_gen};
    use crate::wiring::Generator;

    fn count(s: &str, pat: &str) -> usize {
        s.matches(pat).count()
    }

    #[test]
    fn discard_has_one_dot_and_one_edge() {
        let d = render_wiring(&supply_gen(Generator::Epsilon, &ctx(&["X"])));
        assert_eq!(count(&d, "shape=circle"), 1);
        assert_eq!(count(&d, "shape=point"), 1);
        assert_eq!(count(&d, " -- "), 1);
    }

    #[test]
    fn pass_through_wire_has_no_dot() {
        let d = render_wiring(&TypedWiring::identity(&ctx(&["X"])));
        assert_eq!(count(&d, "shape=point"), 0);
        assert_eq!(count(&d, "s0 -- o0"), 1);
    }

    #[test]
    fn floating_dot_is_isolated() {
        let w = TypedWiring::new(vec![], vec![], vec![], [crate::typed::Sort::from("X")].into()).unwrap();
        let d = render_wiring(&w);
        assert_eq!(count(&d, "f0 [shape=point"), 1);
        assert_eq!(count(&d, " -- "), 0);
        assert_eq!(d, render_wiring(&w));
    }
}
