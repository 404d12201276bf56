//! Hasse diagram emitter in the DOT language.
//!
//! The output sticks to a small subset: a `digraph` whose node statements
//! carry only `label`, `style` and `shape` attributes. Nodes are labeled
//! `order:measure`; CD members are filled, and the minimal and maximal
//! members get a double border. Output is byte-deterministic for a fixed
//! lattice.

use std::fmt::Write;

use crate::lattice::Lattice;
use crate::measure::CdResult;

pub fn hasse_dot(lattice: &Lattice, cd: &CdResult) -> String {
    let mut out = String::new();
    out.push_str("digraph lattice {\n");
    out.push_str("  node [shape=ellipse];\n");
    for index in 0..lattice.len() {
        let mut attrs = format!(
            "label=\"{}:{}\"",
            lattice.order_of(index),
            cd.measure_of(index)
        );
        if cd.is_member(index) {
            attrs.push_str(", style=filled");
        }
        if index == cd.min_member() || index == cd.max_member() {
            attrs.push_str(", shape=doublecircle");
        }
        writeln!(out, "  s{index} [{attrs}];").unwrap();
    }
    for &(h, k) in lattice.covers() {
        writeln!(out, "  s{h} -> s{k};").unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::parse_spec;
    use crate::lattice::enumerate_subgroups;
    use crate::measure::cd_lattice;

    fn dot_for(spec: &str) -> String {
        let group = parse_spec(spec).unwrap().build().unwrap();
        let lattice = enumerate_subgroups(&group).unwrap();
        let cd = cd_lattice(&group, &lattice);
        hasse_dot(&lattice, &cd)
    }

    #[test]
    fn c2_has_two_nodes_and_one_edge() {
        let dot = dot_for("C(2)");
        assert_eq!(dot.matches("label=").count(), 2);
        assert_eq!(dot.matches(" -> ").count(), 1);
    }

    #[test]
    fn d8_highlights_the_five_members() {
        let dot = dot_for("D(8)");
        assert_eq!(dot.matches("label=").count(), 10);
        assert_eq!(dot.matches("style=filled").count(), 5);
        assert_eq!(dot.matches("shape=doublecircle").count(), 2);
    }

    #[test]
    fn s3_highlights_only_a3() {
        let dot = dot_for("S(3)");
        assert_eq!(dot.matches("label=").count(), 6);
        assert_eq!(dot.matches("style=filled").count(), 1);
        // A3 is both the minimal and maximal member.
        assert_eq!(dot.matches("shape=doublecircle").count(), 1);
        assert!(dot.contains("label=\"3:9\", style=filled, shape=doublecircle"));
    }

    #[test]
    fn output_is_deterministic() {
        assert_eq!(dot_for("D(12)"), dot_for("D(12)"));
    }
}
