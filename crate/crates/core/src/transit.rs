//! k-ary transit functions stored as tables over `X^(k)`, the non-empty
//! subsets of the ground set with at most `k` elements.
//!
//! Tables are indexed by sets rather than tuples, so symmetry under
//! permutation of the arguments holds by construction. [`TransitFunction::eval`]
//! accepts a tuple and looks up its underlying set.

use std::collections::HashMap;
use std::fmt;

use crate::bitset::LeafSet;
use crate::dag::{Dag, Lca};
use crate::error::{Error, Result};
use crate::report::{Property, PropertyReport, Witness};
use crate::set_system::{check_k, GroundSet, SetSystem};
use crate::subsets::{bounded_subsets, bounded_subsets_of};

#[derive(Clone)]
pub struct TransitFunction {
    ground: GroundSet,
    arity: usize,
    domain: Vec<LeafSet>,
    images: Vec<LeafSet>,
    index: HashMap<LeafSet, usize>,
}

impl TransitFunction {
    /// Builds a table from `(U, R(U))` entries. Every `U ∈ X^(k)` must
    /// appear exactly once.
    pub fn new(ground: GroundSet, arity: usize, entries: Vec<(LeafSet, LeafSet)>) -> Result<Self> {
        check_k(arity, 2)?;
        let n = ground.len();
        let full = ground.full();
        let domain: Vec<LeafSet> = bounded_subsets(n, arity).collect();
        let index: HashMap<LeafSet, usize> = domain
            .iter()
            .enumerate()
            .map(|(i, u)| (u.clone(), i))
            .collect();
        let mut images: Vec<Option<LeafSet>> = vec![None; domain.len()];
        for (u, r) in entries {
            let Some(&i) = index.get(&u) else {
                return Err(Error::NotInDomain(ground.format(&u)));
            };
            if !r.is_subset(&full) {
                return Err(Error::ElementNotInGround(format!("{r:?}")));
            }
            if images[i].replace(r).is_some() {
                return Err(Error::DuplicateEntry(ground.format(&u)));
            }
        }
        let images = images
            .into_iter()
            .enumerate()
            .map(|(i, r)| r.ok_or_else(|| Error::TableNotTotal(ground.format(&domain[i]))))
            .collect::<Result<Vec<_>>>()?;
        Ok(TransitFunction {
            ground,
            arity,
            domain,
            images,
            index,
        })
    }

    /// Tabulates `f` over `X^(k)`.
    pub fn from_fn<F>(ground: GroundSet, arity: usize, mut f: F) -> Result<Self>
    where
        F: FnMut(&LeafSet) -> Result<LeafSet>,
    {
        check_k(arity, 2)?;
        let entries = bounded_subsets(ground.len(), arity)
            .map(|u| f(&u).map(|r| (u, r)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(ground, arity, entries)
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// `(U, R(U))` pairs in canonical order of `U`.
    pub fn entries(&self) -> impl Iterator<Item = (&LeafSet, &LeafSet)> {
        self.domain.iter().zip(self.images.iter())
    }

    pub fn get(&self, u: &LeafSet) -> Option<&LeafSet> {
        self.index.get(u).map(|&i| &self.images[i])
    }

    /// `R(u_1, ..., u_m)` for a tuple of at most `k` labels; repeated
    /// arguments collapse.
    pub fn eval<S: AsRef<str>>(&self, tuple: &[S]) -> Result<&LeafSet> {
        let u = self.ground.subset(tuple)?;
        if tuple.len() > self.arity {
            return Err(Error::NotInDomain(self.ground.format(&u)));
        }
        self.get(&u)
            .ok_or_else(|| Error::NotInDomain(self.ground.format(&u)))
    }

    fn names(&self, s: &LeafSet) -> Vec<String> {
        self.ground.names(s)
    }

    /// (t1) in set form: `U ⊆ R(U)`.
    pub fn check_t1(&self) -> PropertyReport {
        for (u, r) in self.entries() {
            if !u.is_subset(r) {
                return PropertyReport::fail(
                    Property::T1,
                    Some(self.arity),
                    Witness::Image {
                        set: self.names(u),
                        image: self.names(r),
                    },
                );
            }
        }
        PropertyReport::pass(Property::T1, Some(self.arity))
    }

    /// (t3): `R({x}) = {x}`.
    pub fn check_t3(&self) -> PropertyReport {
        for x in 0..self.ground.len() {
            let s = self.ground.singleton(x);
            let r = self.get(&s).expect("table is total");
            if *r != s {
                return PropertyReport::fail(
                    Property::T3,
                    Some(self.arity),
                    Witness::Image {
                        set: self.names(&s),
                        image: self.names(r),
                    },
                );
            }
        }
        PropertyReport::pass(Property::T3, Some(self.arity))
    }

    /// (m): `W ⊆ R(U)` implies `R(W) ⊆ R(U)` for all `U, W ∈ X^(k)`.
    pub fn check_monotone(&self) -> PropertyReport {
        let n = self.ground.len();
        for (u, ru) in self.entries() {
            for w in bounded_subsets_of(ru, n, self.arity) {
                let rw = self.get(&w).expect("table is total");
                if !rw.is_subset(ru) {
                    return PropertyReport::fail(
                        Property::Monotone,
                        Some(self.arity),
                        Witness::Monotone {
                            u: self.names(u),
                            image_u: self.names(ru),
                            w: self.names(&w),
                            image_w: self.names(rw),
                        },
                    );
                }
            }
        }
        PropertyReport::pass(Property::Monotone, Some(self.arity))
    }

    /// (a'): some `U` has `R(U) = X`. The passing report names the first
    /// such `U`; a failing one lists the inclusion-maximal transit sets.
    pub fn check_a_prime(&self) -> PropertyReport {
        let full = self.ground.full();
        if let Some((u, _)) = self.entries().find(|(_, r)| **r == full) {
            return PropertyReport::pass_with(
                Property::APrime,
                Some(self.arity),
                Witness::Set { set: self.names(u) },
            );
        }
        let mut values: Vec<&LeafSet> = self.images.iter().collect();
        values.sort();
        values.dedup();
        let maximal: Vec<Vec<String>> = values
            .iter()
            .filter(|a| !values.iter().any(|b| a.is_proper_subset(b)))
            .map(|a| self.names(a))
            .collect();
        PropertyReport::fail(
            Property::APrime,
            Some(self.arity),
            Witness::Members { sets: maximal },
        )
    }

    /// `𝒞_R`: the distinct values of the table.
    pub fn transit_sets(&self) -> Result<SetSystem> {
        if let Some((u, _)) = self.entries().find(|(_, r)| r.is_empty()) {
            return Err(Error::EmptyTransitSet(self.ground.format(u)));
        }
        Ok(SetSystem::from_members(
            self.ground.clone(),
            self.images.clone(),
        ))
    }
}

impl PartialEq for TransitFunction {
    fn eq(&self, other: &Self) -> bool {
        self.ground == other.ground && self.arity == other.arity && self.images == other.images
    }
}

impl Eq for TransitFunction {}

impl fmt::Debug for TransitFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .entries()
            .map(|(u, r)| format!("{}->{}", self.ground.format(u), self.ground.format(r)))
            .collect();
        write!(f, "TransitFunction(k={}) [{}]", self.arity, rows.join(", "))
    }
}

/// The canonical k-ary transit function `U ↦ cl(U)` of a set system.
pub fn canonical_of_setsystem(sys: &SetSystem, k: usize) -> Result<TransitFunction> {
    TransitFunction::from_fn(sys.ground().clone(), k, |u| {
        sys.closure(u)
            .ok_or_else(|| Error::UncoveredTuple(sys.ground().format(u)))
    })
}

/// `R_G(U) = C(lca(U))` for a DAG with the k-lca property.
pub fn r_g_of_dag(dag: &Dag, k: usize) -> Result<TransitFunction> {
    TransitFunction::from_fn(dag.leaf_ground().clone(), k, |u| {
        match dag.lca_of_leaves(u) {
            Lca::Unique(v) => Ok(dag.cluster(v).clone()),
            other => {
                let lca = match other {
                    Lca::Ambiguous(s) => dag.vertex_names(&s),
                    _ => Vec::new(),
                };
                Err(Error::KlcaViolation {
                    set: dag.leaf_ground().format(u),
                    lca: crate::report::braces(&lca),
                })
            }
        }
    })
}

/// Whether `sys` equals the transit sets of its canonical k-ary transit
/// function. A failure lists members missing from `𝒞_R` and transit sets
/// that are not members.
pub fn is_identified_by_canonical(sys: &SetSystem, k: usize) -> Result<PropertyReport> {
    let canonical = canonical_of_setsystem(sys, k)?;
    let transit = canonical.transit_sets()?;
    if transit == *sys {
        return Ok(PropertyReport::pass(Property::Identified, Some(k)));
    }
    let missing = sys
        .members()
        .iter()
        .filter(|m| !transit.contains(m))
        .map(|m| sys.names(m))
        .collect();
    let extra = transit
        .members()
        .iter()
        .filter(|m| !sys.contains(m))
        .map(|m| sys.names(m))
        .collect();
    Ok(PropertyReport::fail(
        Property::Identified,
        Some(k),
        Witness::Difference { missing, extra },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ground(xs: &[&str]) -> GroundSet {
        GroundSet::new(xs.iter().copied()).unwrap()
    }

    /// R({a,b}) = X, R({a,c}) = {a,b,c}, every other pair ↦ X.
    fn ex1() -> TransitFunction {
        let g = ground(&["a", "b", "c", "d"]);
        let abc = g.subset(&["a", "b", "c"]).unwrap();
        let ac = g.subset(&["a", "c"]).unwrap();
        TransitFunction::from_fn(g.clone(), 2, |u| {
            Ok(if u.len() == 1 {
                u.clone()
            } else if *u == ac {
                abc.clone()
            } else {
                g.full()
            })
        })
        .unwrap()
    }

    fn labels(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn table_must_be_total() {
        let g = ground(&["a", "b"]);
        let a = g.subset(&["a"]).unwrap();
        let err = TransitFunction::new(g.clone(), 2, vec![(a.clone(), a.clone())]).unwrap_err();
        assert!(matches!(err, Error::TableNotTotal(_)));
        let err = TransitFunction::new(g.clone(), 1, vec![]).unwrap_err();
        assert_eq!(err, Error::InvalidK { k: 1, min: 2 });
        let err = TransitFunction::new(g.clone(), 2, vec![(g.empty_set(), a.clone())]).unwrap_err();
        assert!(matches!(err, Error::NotInDomain(_)));
    }

    #[test]
    fn tuple_facade_is_symmetric() {
        let r = ex1();
        assert_eq!(r.eval(&["a", "c"]).unwrap(), r.eval(&["c", "a"]).unwrap());
        assert_eq!(r.eval(&["b", "b"]).unwrap(), r.eval(&["b"]).unwrap());
        assert!(r.eval(&["a", "b", "c"]).is_err());
    }

    #[test]
    fn ex1_axioms() {
        let r = ex1();
        assert!(r.check_t1().holds);
        assert!(r.check_t3().holds);
        let m = r.check_monotone();
        assert_eq!(
            m.witness,
            Some(Witness::Monotone {
                u: labels(&["a", "c"]),
                image_u: labels(&["a", "b", "c"]),
                w: labels(&["a", "b"]),
                image_w: labels(&["a", "b", "c", "d"]),
            })
        );
        let a = r.check_a_prime();
        assert!(a.holds);
        assert_eq!(
            a.witness,
            Some(Witness::Set {
                set: labels(&["a", "b"])
            })
        );
        let sets = r.transit_sets().unwrap();
        assert_eq!(
            sets.to_label_sets(),
            vec![
                labels(&["a"]),
                labels(&["b"]),
                labels(&["c"]),
                labels(&["d"]),
                labels(&["a", "b", "c"]),
                labels(&["a", "b", "c", "d"])
            ]
        );
    }

    #[test]
    fn axiom_failures() {
        let g = ground(&["a", "b"]);
        let a = g.subset(&["a"]).unwrap();
        let r = TransitFunction::from_fn(g.clone(), 2, |u| {
            Ok(if u.len() == 2 { a.clone() } else { u.clone() })
        })
        .unwrap();
        let t1 = r.check_t1();
        assert_eq!(
            t1.witness,
            Some(Witness::Image {
                set: labels(&["a", "b"]),
                image: labels(&["a"])
            })
        );
        let r = TransitFunction::from_fn(g.clone(), 2, |_| Ok(g.full())).unwrap();
        assert!(!r.check_t3().holds);
        let g3 = ground(&["a", "b", "c"]);
        let id = TransitFunction::from_fn(g3, 2, |u| Ok(u.clone())).unwrap();
        assert!(!id.check_a_prime().holds);
        let empty = TransitFunction::from_fn(g.clone(), 2, |_| Ok(g.empty_set())).unwrap();
        assert!(matches!(
            empty.transit_sets(),
            Err(Error::EmptyTransitSet(_))
        ));
    }

    #[test]
    fn canonical_transit() {
        let fig1 = SetSystem::from_labels(
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
        .unwrap();
        let r = canonical_of_setsystem(&fig1, 2).unwrap();
        assert_eq!(r.eval(&["w", "z"]).unwrap(), &fig1.ground().full());
        assert!(r.check_monotone().holds);
        assert!(r.check_t1().holds && r.check_t3().holds);
        assert_eq!(r.transit_sets().unwrap(), fig1);

        let fig2 = SetSystem::from_labels(
            &["w", "x", "y", "z"],
            &[
                &["x"],
                &["y"],
                &["z"],
                &["w"],
                &["x", "y", "z"],
                &["w", "x", "y", "z"],
            ],
        )
        .unwrap();
        let r = canonical_of_setsystem(&fig2, 2).unwrap();
        assert_eq!(
            fig2.names(r.eval(&["x", "y"]).unwrap()),
            labels(&["x", "y", "z"])
        );
        let a = r.check_a_prime();
        assert_eq!(
            a.witness,
            Some(Witness::Set {
                set: labels(&["w", "x"])
            })
        );
        assert!(is_identified_by_canonical(&fig2, 2).unwrap().holds);

        let star = SetSystem::from_labels(
            &["a", "b", "c", "d"],
            &[&["a"], &["b"], &["c"], &["d"], &["a", "b", "c", "d"]],
        )
        .unwrap();
        assert!(is_identified_by_canonical(&star, 2).unwrap().holds);

        let uncovered = SetSystem::from_labels(&["a", "b"], &[&["a"], &["b"]]).unwrap();
        assert!(matches!(
            canonical_of_setsystem(&uncovered, 2),
            Err(Error::UncoveredTuple(_))
        ));
    }

    #[test]
    fn rg_of_dags() {
        let fig3 = Dag::new(
            &["r", "a", "b", "c", "w", "x", "y", "z"],
            &[
                ("r", "a"),
                ("r", "b"),
                ("r", "c"),
                ("r", "z"),
                ("a", "w"),
                ("a", "x"),
                ("b", "w"),
                ("b", "y"),
                ("c", "x"),
                ("c", "y"),
            ],
        )
        .unwrap();
        let r = r_g_of_dag(&fig3, 2).unwrap();
        assert_eq!(
            fig3.leaf_names(r.eval(&["w", "x"]).unwrap()),
            labels(&["w", "x"])
        );
        assert!(r.check_monotone().holds);
        assert_eq!(
            r,
            canonical_of_setsystem(&fig3.cluster_system(), 2).unwrap()
        );

        let fig1 = Dag::new(
            &["r", "p", "v", "q", "w", "x", "y", "z"],
            &[
                ("r", "p"),
                ("r", "v"),
                ("r", "q"),
                ("p", "w"),
                ("p", "x"),
                ("p", "y"),
                ("v", "x"),
                ("v", "y"),
                ("q", "x"),
                ("q", "y"),
                ("q", "z"),
            ],
        )
        .unwrap();
        assert_eq!(
            r_g_of_dag(&fig1, 2).unwrap_err(),
            Error::KlcaViolation {
                set: "{x,y}".into(),
                lca: "{p,v,q}".into()
            }
        );

        let single = Dag::new(&["a"], &[]).unwrap();
        let r = r_g_of_dag(&single, 3).unwrap();
        assert_eq!(single.leaf_names(r.eval(&["a"]).unwrap()), labels(&["a"]));
    }
}
