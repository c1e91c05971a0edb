//! LCA properties of DAGs: (PCC), (CL), the lca- and k-lca-properties and
//! their strict and strong refinements.

use crate::bitset::LeafSet;
use crate::dag::{Dag, Lca, Vertex};
use crate::error::Result;
use crate::report::{Property, PropertyReport, Span, Witness};
use crate::set_system::{check_k, guard};
use crate::subsets::{all_subsets, bounded_subsets, bounded_subsets_of};

fn lca_names(dag: &Dag, lca: &Lca) -> Vec<String> {
    match lca {
        Lca::Unique(v) => vec![dag.label(*v).to_string()],
        Lca::NoCommonAncestor => Vec::new(),
        Lca::Ambiguous(s) => dag.vertex_names(s),
    }
}

fn lca_witness(dag: &Dag, a: &LeafSet, lca: &Lca) -> Witness {
    Witness::Lca {
        set: dag.leaf_names(a),
        lca: lca_names(dag, lca),
    }
}

/// First subset in `candidates` whose lca is undefined.
fn first_undefined(dag: &Dag, candidates: impl Iterator<Item = LeafSet>) -> Option<Witness> {
    candidates.into_iter().find_map(|a| {
        let lca = dag.lca_of_leaves(&a);
        (!lca.is_defined()).then(|| lca_witness(dag, &a, &lca))
    })
}

/// (PCC): `u` and `v` are comparable iff their clusters are nested.
pub fn has_pcc(dag: &Dag) -> PropertyReport {
    let vs: Vec<Vertex> = dag.vertices().collect();
    for (i, &u) in vs.iter().enumerate() {
        for &v in &vs[i + 1..] {
            let (cu, cv) = (dag.cluster(u), dag.cluster(v));
            if dag.is_comparable(u, v) != (cu.is_subset(cv) || cv.is_subset(cu)) {
                return PropertyReport::fail(
                    Property::Pcc,
                    None,
                    Witness::VertexPair {
                        u: dag.label(u).to_string(),
                        v: dag.label(v).to_string(),
                        cluster_u: dag.leaf_names(cu),
                        cluster_v: dag.leaf_names(cv),
                    },
                );
            }
        }
    }
    PropertyReport::pass(Property::Pcc, None)
}

/// (CL): `lca(C(v))` is defined for every vertex.
pub fn has_cl(dag: &Dag) -> PropertyReport {
    for v in dag.vertices() {
        let c = dag.cluster(v);
        let lca = dag.lca_of_leaves(c);
        if !lca.is_defined() {
            return PropertyReport::fail(
                Property::Cl,
                None,
                Witness::Vertex {
                    vertex: dag.label(v).to_string(),
                    cluster: dag.leaf_names(c),
                    lca: lca_names(dag, &lca),
                },
            );
        }
    }
    PropertyReport::pass(Property::Cl, None)
}

/// `lca(A)` is defined for every non-empty `A ⊆ X`. Exhaustive, so the leaf
/// count is bounded.
pub fn has_lca_property(dag: &Dag) -> Result<PropertyReport> {
    guard(dag.leaf_count())?;
    Ok(match first_undefined(dag, all_subsets(dag.leaf_count())) {
        Some(w) => PropertyReport::fail(Property::Lca, None, w),
        None => PropertyReport::pass(Property::Lca, None),
    })
}

/// `lca(A)` is defined for every `A ∈ X^(k)`.
pub fn has_klca_property(dag: &Dag, k: usize) -> Result<PropertyReport> {
    check_k(k, 1)?;
    Ok(
        match first_undefined(dag, bounded_subsets(dag.leaf_count(), k)) {
            Some(w) => PropertyReport::fail(Property::Klca, Some(k), w),
            None => PropertyReport::pass(Property::Klca, Some(k)),
        },
    )
}

/// k-lca, then (CL), then for every vertex `w` some `U ∈ X^(k)` with
/// `lca(C(w)) = lca(U)`. The passing report maps each vertex to its `U`.
pub fn has_strict_klca(dag: &Dag, k: usize) -> Result<PropertyReport> {
    let klca = has_klca_property(dag, k)?;
    if !klca.holds {
        return Ok(PropertyReport::failed_stage(
            Property::StrictKlca,
            Some(k),
            klca,
        ));
    }
    let cl = has_cl(dag);
    if !cl.holds {
        return Ok(PropertyReport::failed_stage(
            Property::StrictKlca,
            Some(k),
            cl,
        ));
    }
    let n = dag.leaf_count();
    let mut spans = Vec::with_capacity(dag.len());
    for w in dag.vertices() {
        let c = dag.cluster(w);
        let target = dag.lca_of_leaves(c);
        // lca(U) = lca(C(w)) forces U ⊆ C(lca(C(w))) = C(w).
        match bounded_subsets_of(c, n, k).find(|u| dag.lca_of_leaves(u) == target) {
            Some(u) => spans.push(Span {
                target: vec![dag.label(w).to_string()],
                by: dag.leaf_names(&u),
            }),
            None => {
                return Ok(PropertyReport::fail(
                    Property::StrictKlca,
                    Some(k),
                    Witness::Vertex {
                        vertex: dag.label(w).to_string(),
                        cluster: dag.leaf_names(c),
                        lca: lca_names(dag, &target),
                    },
                ));
            }
        }
    }
    Ok(PropertyReport::pass_with(
        Property::StrictKlca,
        Some(k),
        Witness::Spans { spans },
    ))
}

/// The lca-property, and for every non-empty `A ⊆ X` some `U ⊆ A` with
/// `|U| <= k` and `lca(U) = lca(A)`.
pub fn has_strong_klca(dag: &Dag, k: usize) -> Result<PropertyReport> {
    strong(dag, k, true)
}

/// The strong k-lca condition with `U` ranging over all of `X^(k)` rather
/// than over subsets of `A`.
pub fn has_strong_klca_literal(dag: &Dag, k: usize) -> Result<PropertyReport> {
    strong(dag, k, false)
}

fn strong(dag: &Dag, k: usize, within: bool) -> Result<PropertyReport> {
    check_k(k, 1)?;
    let lca = has_lca_property(dag)?;
    if !lca.holds {
        return Ok(PropertyReport::failed_stage(
            Property::StrongKlca,
            Some(k),
            lca,
        ));
    }
    let n = dag.leaf_count();
    for a in all_subsets(n) {
        let target = dag.lca_of_leaves(&a);
        let v = target.vertex().expect("lca-property holds");
        // Any U with lca(U) = v lies inside C(v).
        let pool = if within {
            a.clone()
        } else {
            dag.cluster(v).clone()
        };
        if !bounded_subsets_of(&pool, n, k).any(|u| dag.lca_of_leaves(&u) == target) {
            return Ok(PropertyReport::fail(
                Property::StrongKlca,
                Some(k),
                lca_witness(dag, &a, &target),
            ));
        }
    }
    Ok(PropertyReport::pass(Property::StrongKlca, Some(k)))
}
