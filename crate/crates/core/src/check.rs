//! Evaluates a named property on a DAG, a set system or a transit function.
//!
//! Set-system properties requested on a DAG are evaluated on its cluster
//! system.

use crate::dag::Dag;
use crate::error::{Error, Result};
use crate::hasse::hasse_is_network;
use crate::lca::{
    has_cl, has_klca_property, has_lca_property, has_pcc, has_strict_klca, has_strong_klca,
};
use crate::report::{Property, PropertyReport, Witness};
use crate::set_system::SetSystem;
use crate::transit::{canonical_of_setsystem, is_identified_by_canonical, TransitFunction};

fn need_k(p: Property, k: Option<usize>) -> Result<usize> {
    k.ok_or_else(|| Error::MissingK(p.name().to_string()))
}

fn unsupported(p: Property, input: &'static str) -> Error {
    Error::UnsupportedProperty {
        property: p.name().to_string(),
        input,
    }
}

/// A network has exactly one vertex of in-degree 0.
pub fn dag_network(dag: &Dag) -> PropertyReport {
    if dag.is_network() {
        return PropertyReport::pass(Property::Network, None);
    }
    let roots = dag
        .roots()
        .into_iter()
        .map(|r| dag.label(r).to_string())
        .collect();
    PropertyReport::fail(Property::Network, None, Witness::Roots { roots })
}

pub fn check_dag(dag: &Dag, p: Property, k: Option<usize>) -> Result<PropertyReport> {
    match p {
        Property::Pcc => Ok(has_pcc(dag)),
        Property::Cl => Ok(has_cl(dag)),
        Property::Lca => has_lca_property(dag),
        Property::Klca => has_klca_property(dag, need_k(p, k)?),
        Property::StrictKlca => has_strict_klca(dag, need_k(p, k)?),
        Property::StrongKlca => has_strong_klca(dag, need_k(p, k)?),
        Property::Network => Ok(dag_network(dag)),
        Property::T1 | Property::T3 | Property::Monotone | Property::APrime => {
            Err(unsupported(p, "a DAG"))
        }
        _ => check_sets(&dag.cluster_system(), p, k),
    }
}

pub fn check_sets(sys: &SetSystem, p: Property, k: Option<usize>) -> Result<PropertyReport> {
    match p {
        Property::Ks => Ok(sys.check_ks()),
        Property::K1 => Ok(sys.check_k1()),
        Property::Kc => sys.check_kc(need_k(p, k)?),
        Property::Kr => sys.check_kr(need_k(p, k)?),
        Property::Closed => Ok(sys.is_closed()),
        Property::WeakHier => Ok(sys.is_weak_hierarchy()),
        Property::KWeakHier => sys.is_k_weak_hierarchy(need_k(p, k)?),
        Property::KWeakClosure => sys.k_weak_closure_criterion(need_k(p, k)?),
        Property::KWeakRemoval => sys.k_weak_removal_criterion(need_k(p, k)?),
        Property::TSystem => sys.is_t_system(need_k(p, k)?),
        Property::Clustering => Ok(sys.is_clustering_system()),
        Property::Identified => is_identified_by_canonical(sys, need_k(p, k)?),
        Property::Network => hasse_is_network(sys),
        _ => Err(unsupported(p, "a set system")),
    }
}

/// Transit properties use the arity of `tf` as `k`. `IDENTIFIED` asks
/// whether `tf` is the canonical transit function of its transit sets.
pub fn check_transit(tf: &TransitFunction, p: Property) -> Result<PropertyReport> {
    match p {
        Property::T1 => Ok(tf.check_t1()),
        Property::T3 => Ok(tf.check_t3()),
        Property::Monotone => Ok(tf.check_monotone()),
        Property::APrime => Ok(tf.check_a_prime()),
        Property::Network => hasse_is_network(&tf.transit_sets()?),
        Property::Identified => identifies_its_transit_sets(tf),
        _ => Err(unsupported(p, "a transit function")),
    }
}

/// `R = R_{𝒞_R}`. A failure names the first argument `U` where they differ,
/// with `cl(U)` in `𝒞_R`.
pub fn identifies_its_transit_sets(tf: &TransitFunction) -> Result<PropertyReport> {
    let k = tf.arity();
    let canonical = canonical_of_setsystem(&tf.transit_sets()?, k)?;
    let g = tf.ground();
    for ((u, r), (_, c)) in tf.entries().zip(canonical.entries()) {
        if r != c {
            return Ok(PropertyReport::fail(
                Property::Identified,
                Some(k),
                Witness::Closure {
                    set: g.names(u),
                    closure: Some(g.names(c)),
                },
            ));
        }
    }
    Ok(PropertyReport::pass(Property::Identified, Some(k)))
}
