//! Hasse diagrams of set families as DAGs.
//!
//! Vertices are labeled by the canonical set string of their member (sorted
//! element labels joined by `+`), so the diagram can be fed to every DAG
//! operation directly.

use std::fmt::Write as _;
use std::sync::Arc;

use crate::bitset::{BitSet, LeafSet};
use crate::dag::{Dag, Vertex};
use crate::error::{Error, Result};
use crate::report::{Property, PropertyReport, Witness};
use crate::set_system::SetSystem;

#[derive(Debug, Clone)]
pub struct HasseDiagram {
    dag: Dag,
    sets: Vec<LeafSet>,
}

/// Label of a member in the diagram: `a+b+c`.
pub fn set_label(sys: &SetSystem, set: &LeafSet) -> String {
    sys.names(set).join("+")
}

/// Cover relation of `⊊` on the members of `sys`. Vertices are declared from
/// the largest member down.
pub fn build_hasse(sys: &SetSystem) -> Result<HasseDiagram> {
    if sys.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let sets: Vec<LeafSet> = sys.members().iter().rev().cloned().collect();
    let m = sets.len();
    let below: Vec<BitSet> = sets
        .iter()
        .map(|a| BitSet::from_indices(m, (0..m).filter(|&j| sets[j].is_proper_subset(a))))
        .collect();
    let mut edges = Vec::new();
    for (i, b) in below.iter().enumerate() {
        let mut covers = b.clone();
        for j in b.iter() {
            covers.difference_with(&below[j]);
        }
        edges.extend(covers.iter().map(|j| (i, j)));
    }
    let labels: Arc<[String]> = sets.iter().map(|s| set_label(sys, s)).collect();
    let dag = Dag::from_parts(labels, edges)?;
    Ok(HasseDiagram { dag, sets })
}

impl HasseDiagram {
    pub fn dag(&self) -> &Dag {
        &self.dag
    }

    pub fn into_dag(self) -> Dag {
        self.dag
    }

    /// The member represented by `v`.
    pub fn set(&self, v: Vertex) -> &LeafSet {
        &self.sets[v.index()]
    }

    /// DOT rendering with one node per member.
    pub fn to_dot(&self, sys: &SetSystem) -> String {
        let mut out = String::from("digraph hasse {\n");
        for v in self.dag.vertices() {
            let name = self.dag.label(v);
            let shown = crate::report::braces(&sys.names(self.set(v)));
            let _ = writeln!(out, "  \"{name}\" [label=\"{shown}\"];");
        }
        for (p, c) in self.dag.edges() {
            let _ = writeln!(
                out,
                "  \"{}\" -> \"{}\";",
                self.dag.label(p),
                self.dag.label(c)
            );
        }
        out.push_str("}\n");
        out
    }
}

/// Whether the Hasse diagram of `sys` has a single root. A failure lists
/// the inclusion-maximal members.
pub fn hasse_is_network(sys: &SetSystem) -> Result<PropertyReport> {
    let h = build_hasse(sys)?;
    let roots = h.dag().roots();
    if roots.len() == 1 {
        return Ok(PropertyReport::pass(Property::Network, None));
    }
    let roots = roots
        .into_iter()
        .map(|r| h.dag().label(r).to_string())
        .collect();
    Ok(PropertyReport::fail(
        Property::Network,
        None,
        Witness::Roots { roots },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subsets::all_subsets;

    fn fig1() -> SetSystem {
        SetSystem::from_labels(
            &["w", "x", "y", "z"],
            &[
                &["w"],
                &["x"],
                &["y"],
                &["z"],
                &["x", "y"],
                &["w", "x", "y"],
                &["x", "y", "z"],
                &["w", "x", "y", "z"],
            ],
        )
        .unwrap()
    }

    fn edge_labels(d: &Dag) -> Vec<(String, String)> {
        let mut e: Vec<_> = d
            .edges()
            .map(|(p, c)| (d.label(p).to_string(), d.label(c).to_string()))
            .collect();
        e.sort();
        e
    }

    fn pairs(xs: &[(&str, &str)]) -> Vec<(String, String)> {
        let mut v: Vec<_> = xs
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        v.sort();
        v
    }

    #[test]
    fn ex1_transit_sets_form_a_tree() {
        let sys = SetSystem::from_labels(
            &["a", "b", "c", "d"],
            &[
                &["a"],
                &["b"],
                &["c"],
                &["d"],
                &["a", "b", "c"],
                &["a", "b", "c", "d"],
            ],
        )
        .unwrap();
        let h = build_hasse(&sys).unwrap();
        assert_eq!(
            edge_labels(h.dag()),
            pairs(&[
                ("a+b+c+d", "a+b+c"),
                ("a+b+c+d", "d"),
                ("a+b+c", "a"),
                ("a+b+c", "b"),
                ("a+b+c", "c"),
            ])
        );
        assert!(hasse_is_network(&sys).unwrap().holds);
        assert!(h.dag().vertices().all(|v| h.dag().in_degree(v) <= 1));
    }

    #[test]
    fn star_and_two_roots() {
        let star = SetSystem::from_labels(&["a", "b"], &[&["a"], &["b"], &["a", "b"]]).unwrap();
        let h = build_hasse(&star).unwrap();
        assert_eq!(edge_labels(h.dag()), pairs(&[("a+b", "a"), ("a+b", "b")]));

        let two = SetSystem::from_labels(
            &["a", "b", "c"],
            &[&["a"], &["b"], &["a", "c"], &["b", "c"], &["c"]],
        )
        .unwrap();
        let r = hasse_is_network(&two).unwrap();
        assert_eq!(
            r.witness,
            Some(Witness::Roots {
                roots: vec!["b+c".into(), "a+c".into()]
            })
        );
        assert!(build_hasse(&SetSystem::from_members(two.ground().clone(), vec![])).is_err());
    }

    #[test]
    fn fig1_hasse_reproduces_the_family() {
        let sys = fig1();
        let h = build_hasse(&sys).unwrap();
        let d = h.dag();
        assert_eq!(d.len(), 8);
        assert!(d.is_network());
        let xy = d.vertex("x+y").unwrap();
        let mut parents: Vec<&str> = d
            .vertices()
            .filter(|&p| d.children(p).any(|c| c == xy))
            .map(|p| d.label(p))
            .collect();
        parents.sort();
        assert_eq!(parents, vec!["w+x+y", "x+y+z"]);
        assert_eq!(d.cluster_system(), sys);
    }

    #[test]
    fn reachability_is_inclusion() {
        let sys = fig1();
        let h = build_hasse(&sys).unwrap();
        let d = h.dag();
        for u in d.vertices() {
            for v in d.vertices() {
                assert_eq!(d.precedes(v, u), h.set(v).is_subset(h.set(u)));
            }
        }
        let all = SetSystem::from_members(sys.ground().clone(), all_subsets(4).collect());
        let h = build_hasse(&all).unwrap();
        assert_eq!(h.dag().edge_count(), 28);
    }

    #[test]
    fn dot_output() {
        let sys = SetSystem::from_labels(&["a", "b"], &[&["a"], &["a", "b"]]).unwrap();
        let dot = build_hasse(&sys).unwrap().to_dot(&sys);
        assert_eq!(
            dot,
            "digraph hasse {\n  \"a+b\" [label=\"{a,b}\"];\n  \"a\" [label=\"{a}\"];\n  \"a+b\" -> \"a\";\n}\n"
        );
    }
}
