//! Concrete instances separating properties that do not imply each other.
//!
//! Every entry is re-verified when the catalog is built.

use serde::Serialize;

use crate::check::{check_dag, check_transit};
use crate::dag::Dag;
use crate::error::{Error, Result};
use crate::hasse::build_hasse;
use crate::report::Property;
use crate::set_system::SetSystem;
use crate::validate::fixtures::{fixture, FixtureName, Payload};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Target {
    /// The instance itself.
    Instance,
    /// The Hasse diagram of the transit sets of a transit function.
    HasseOfTransitSets,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Requirement {
    pub property: Property,
    pub k: Option<usize>,
    pub target: Target,
    pub holds: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CatalogEntry {
    /// The non-implication, as `P =/=> Q`.
    pub claim: &'static str,
    /// Fixture name, or the name of a generated instance.
    pub instance: &'static str,
    pub requirements: Vec<Requirement>,
    #[serde(skip)]
    pub payload: Payload,
}

impl CatalogEntry {
    /// Re-checks every requirement against the instance.
    pub fn verify(&self) -> Result<()> {
        for r in &self.requirements {
            let report = match (r.target, &self.payload) {
                (Target::Instance, Payload::Dag(d)) => check_dag(d, r.property, r.k),
                (Target::Instance, Payload::Transit(t)) => check_transit(t, r.property),
                (Target::HasseOfTransitSets, Payload::Transit(t)) => t
                    .transit_sets()
                    .and_then(|s| build_hasse(&s))
                    .and_then(|h| check_dag(h.dag(), r.property, r.k)),
                (Target::HasseOfTransitSets, Payload::Dag(_)) => Err(Error::UnsupportedProperty {
                    property: r.property.name().to_string(),
                    input: "a DAG",
                }),
            };
            if !report.is_ok_and(|rep| rep.holds == r.holds) {
                return Err(Error::FixtureAssertionFailed {
                    fixture: self.instance.to_string(),
                    claim: self.claim.to_string(),
                });
            }
        }
        Ok(())
    }
}

fn req(property: Property, k: Option<usize>, holds: bool) -> Requirement {
    Requirement {
        property,
        k,
        target: Target::Instance,
        holds,
    }
}

fn hasse_of(ground: &[&str], members: &[&[&str]]) -> Dag {
    let sys = SetSystem::from_labels(ground, members).expect("catalog families are valid");
    build_hasse(&sys)
        .expect("catalog families are non-empty")
        .into_dag()
}

/// Hasse diagram of all non-empty subsets of `{a,b,c}`.
pub fn triangle() -> Dag {
    hasse_of(
        &["a", "b", "c"],
        &[
            &["a"],
            &["b"],
            &["c"],
            &["a", "b"],
            &["a", "c"],
            &["b", "c"],
            &["a", "b", "c"],
        ],
    )
}

/// Hasse diagram of all non-empty subsets of `{a,b,c,d}`.
pub fn power4() -> Dag {
    let ground = ["a", "b", "c", "d"];
    let members: Vec<Vec<&str>> = (1u32..16)
        .map(|m| {
            ground
                .iter()
                .enumerate()
                .filter(|(i, _)| m >> i & 1 == 1)
                .map(|(_, s)| *s)
                .collect()
        })
        .collect();
    let refs: Vec<&[&str]> = members.iter().map(Vec::as_slice).collect();
    hasse_of(&ground, &refs)
}

/// Pairs of `{x,y,z}` below two incomparable clusters `{a,x,y,z}` and
/// `{b,x,y,z}`, so `lca(x,y,z)` is ambiguous.
pub fn twin_tops_pairs() -> Dag {
    hasse_of(
        &["a", "b", "x", "y", "z"],
        &[
            &["a"],
            &["b"],
            &["x"],
            &["y"],
            &["z"],
            &["x", "y"],
            &["x", "z"],
            &["y", "z"],
            &["a", "x", "y", "z"],
            &["b", "x", "y", "z"],
            &["a", "b", "x", "y", "z"],
        ],
    )
}

/// Pairs and triples of `{w,x,y,z}` below `{a,w,x,y,z}` and `{b,w,x,y,z}`.
pub fn twin_tops_triples() -> Dag {
    hasse_of(
        &["a", "b", "w", "x", "y", "z"],
        &[
            &["a"],
            &["b"],
            &["w"],
            &["x"],
            &["y"],
            &["z"],
            &["w", "x"],
            &["w", "y"],
            &["w", "z"],
            &["x", "y"],
            &["x", "z"],
            &["y", "z"],
            &["w", "x", "y"],
            &["w", "x", "z"],
            &["w", "y", "z"],
            &["x", "y", "z"],
            &["a", "w", "x", "y", "z"],
            &["b", "w", "x", "y", "z"],
            &["a", "b", "w", "x", "y", "z"],
        ],
    )
}

fn from_fixture(
    name: FixtureName,
    claim: &'static str,
    requirements: Vec<Requirement>,
) -> Result<CatalogEntry> {
    let f = fixture(name)?;
    Ok(CatalogEntry {
        claim,
        instance: name.name(),
        requirements,
        payload: f.payload,
    })
}

fn generated(
    instance: &'static str,
    dag: Dag,
    claim: &'static str,
    requirements: Vec<Requirement>,
) -> CatalogEntry {
    CatalogEntry {
        claim,
        instance,
        requirements,
        payload: Payload::Dag(dag),
    }
}

/// Every separating instance, each re-checked before it is returned.
pub fn counterexample_catalog() -> Result<Vec<CatalogEntry>> {
    use Property::*;
    let entries = vec![
        from_fixture(
            FixtureName::Fig1,
            "pre-binary =/=> pairwise lca",
            vec![
                req(Kc, Some(2), true),
                req(Closed, None, true),
                req(Klca, Some(2), false),
            ],
        )?,
        from_fixture(
            FixtureName::Fig1,
            "closed =/=> lca-property",
            vec![req(Closed, None, true), req(Lca, None, false)],
        )?,
        from_fixture(
            FixtureName::Fig2,
            "pre-k-ary =/=> k-lca without (PCC)",
            vec![
                req(Kc, Some(2), true),
                req(Kc, Some(3), true),
                req(Pcc, None, false),
                req(Klca, Some(2), false),
                req(Klca, Some(3), false),
            ],
        )?,
        from_fixture(
            FixtureName::Fig3,
            "lca =/=> strong 2-lca",
            vec![req(Lca, None, true), req(StrongKlca, Some(2), false)],
        )?,
        from_fixture(
            FixtureName::Ex1,
            "Hasse has k-lca =/=> R monotone",
            vec![
                Requirement {
                    property: Klca,
                    k: Some(2),
                    target: Target::HasseOfTransitSets,
                    holds: true,
                },
                req(Monotone, None, false),
            ],
        )?,
        generated(
            "TRIANGLE",
            triangle(),
            "lca =/=> strict 2-lca",
            vec![req(Lca, None, true), req(StrictKlca, Some(2), false)],
        ),
        generated(
            "TRIANGLE",
            triangle(),
            "strict 3-lca =/=> strict 2-lca",
            vec![
                req(StrictKlca, Some(3), true),
                req(StrictKlca, Some(2), false),
            ],
        ),
        generated(
            "POWER4",
            power4(),
            "lca =/=> strict 3-lca",
            vec![req(Lca, None, true), req(StrictKlca, Some(3), false)],
        ),
        generated(
            "TWIN_TOPS_PAIRS",
            twin_tops_pairs(),
            "strict 2-lca =/=> lca",
            vec![req(StrictKlca, Some(2), true), req(Lca, None, false)],
        ),
        generated(
            "TWIN_TOPS_PAIRS",
            twin_tops_pairs(),
            "strict 2-lca =/=> strict 3-lca",
            vec![
                req(StrictKlca, Some(2), true),
                req(StrictKlca, Some(3), false),
            ],
        ),
        generated(
            "TWIN_TOPS_TRIPLES",
            twin_tops_triples(),
            "strict 3-lca =/=> lca",
            vec![req(StrictKlca, Some(3), true), req(Lca, None, false)],
        ),
    ];
    for e in &entries {
        e.verify()?;
    }
    Ok(entries)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_separations_use_the_fixtures() {
        let cat = counterexample_catalog().unwrap();
        let by_claim = |c: &str| cat.iter().find(|e| e.claim == c).map(|e| e.instance);
        assert_eq!(by_claim("pre-binary =/=> pairwise lca"), Some("FIG1"));
        assert_eq!(by_claim("pre-k-ary =/=> k-lca without (PCC)"), Some("FIG2"));
        assert_eq!(by_claim("lca =/=> strong 2-lca"), Some("FIG3"));
        assert_eq!(by_claim("Hasse has k-lca =/=> R monotone"), Some("EX1"));
    }

    #[test]
    fn lca_and_strict_variants_are_pairwise_independent() {
        let cat = counterexample_catalog().unwrap();
        let names = ["lca", "strict 2-lca", "strict 3-lca"];
        for p in names {
            for q in names {
                if p != q {
                    let claim = format!("{p} =/=> {q}");
                    assert!(cat.iter().any(|e| e.claim == claim), "{claim}");
                }
            }
        }
    }

    #[test]
    fn a_wrong_requirement_fails_verification() {
        let mut e = counterexample_catalog().unwrap().remove(0);
        e.requirements.push(req(Property::Pcc, None, true));
        assert!(matches!(
            e.verify(),
            Err(Error::FixtureAssertionFailed { .. })
        ));
        e.requirements = vec![Requirement {
            property: Property::Lca,
            k: None,
            target: Target::HasseOfTransitSets,
            holds: true,
        }];
        assert!(e.verify().is_err());
    }

    #[test]
    fn generated_instances_are_networks() {
        for d in [triangle(), power4(), twin_tops_pairs(), twin_tops_triples()] {
            assert!(d.is_network());
        }
        assert_eq!(twin_tops_pairs().len(), 11);
        assert_eq!(twin_tops_triples().len(), 19);
    }
}
