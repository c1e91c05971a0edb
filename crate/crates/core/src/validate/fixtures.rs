//! Named reference instances with the verdicts they must reproduce.
//!
//! [`fixture`] rebuilds an instance and re-checks every expectation; a
//! mismatch is a [`Error::FixtureAssertionFailed`].

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::check::{check_dag, check_transit};
use crate::dag::{Dag, Lca};
use crate::error::{Error, Result};
use crate::hasse::build_hasse;
use crate::lca::has_klca_property;
use crate::report::{Property, PropertyReport, Witness};
use crate::set_system::SetSystem;
use crate::transit::TransitFunction;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum FixtureName {
    Fig1,
    Fig2,
    Fig3,
    Ex1,
    Sec2NoAnc,
}

impl FixtureName {
    pub const ALL: [FixtureName; 5] = [
        FixtureName::Fig1,
        FixtureName::Fig2,
        FixtureName::Fig3,
        FixtureName::Ex1,
        FixtureName::Sec2NoAnc,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FixtureName::Fig1 => "FIG1",
            FixtureName::Fig2 => "FIG2",
            FixtureName::Fig3 => "FIG3",
            FixtureName::Ex1 => "EX1",
            FixtureName::Sec2NoAnc => "SEC2_NO_ANC",
        }
    }
}

impl fmt::Display for FixtureName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FixtureName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FixtureName::ALL
            .into_iter()
            .find(|n| n.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::BoundExceeded(format!("unknown fixture `{s}`")))
    }
}

#[derive(Debug, Clone)]
pub enum Payload {
    Dag(Dag),
    Transit(TransitFunction),
}

/// Expected verdict of one property; a `Some` witness must match exactly.
#[derive(Debug, Clone)]
pub struct Expectation {
    pub property: Property,
    pub k: Option<usize>,
    pub holds: bool,
    pub witness: Option<Witness>,
    pub claim: &'static str,
}

/// A structural claim that is not a single property verdict.
#[derive(Clone)]
pub struct Fact {
    pub claim: &'static str,
    check: fn(&Payload) -> bool,
}

impl fmt::Debug for Fact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Fact").field("claim", &self.claim).finish()
    }
}

#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: FixtureName,
    pub payload: Payload,
    pub expected: Vec<Expectation>,
    pub facts: Vec<Fact>,
}

impl Fixture {
    pub fn dag(&self) -> Option<&Dag> {
        match &self.payload {
            Payload::Dag(d) => Some(d),
            Payload::Transit(_) => None,
        }
    }

    pub fn transit(&self) -> Option<&TransitFunction> {
        match &self.payload {
            Payload::Transit(t) => Some(t),
            Payload::Dag(_) => None,
        }
    }

    /// Evaluates one property on the payload.
    pub fn evaluate(&self, property: Property, k: Option<usize>) -> Result<PropertyReport> {
        match &self.payload {
            Payload::Dag(d) => check_dag(d, property, k),
            Payload::Transit(t) => check_transit(t, property),
        }
    }

    pub fn verify(&self) -> Result<()> {
        let failed = |claim: &str| Error::FixtureAssertionFailed {
            fixture: self.name.to_string(),
            claim: claim.to_string(),
        };
        for e in &self.expected {
            let r = self
                .evaluate(e.property, e.k)
                .map_err(|_| failed(e.claim))?;
            if r.holds != e.holds
                || e.witness
                    .as_ref()
                    .is_some_and(|w| r.witness.as_ref() != Some(w))
            {
                return Err(failed(e.claim));
            }
        }
        for f in &self.facts {
            if !(f.check)(&self.payload) {
                return Err(failed(f.claim));
            }
        }
        Ok(())
    }
}

fn build(vertices: &[&str], edges: &[(&str, &str)]) -> Dag {
    Dag::new(vertices, edges).expect("fixture edge lists are valid")
}

pub fn fig1_dag() -> Dag {
    build(
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
}

pub fn fig2_dag() -> Dag {
    build(
        &["r", "u1", "u2", "w", "x", "y", "z"],
        &[
            ("r", "u1"),
            ("r", "u2"),
            ("r", "w"),
            ("u1", "x"),
            ("u1", "y"),
            ("u1", "z"),
            ("u2", "x"),
            ("u2", "y"),
            ("u2", "z"),
        ],
    )
}

pub fn fig3_dag() -> Dag {
    build(
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
}

/// Three leaves under two roots: `C(p) = {x,y}`, `C(q) = {x,z}`.
pub fn sec2_no_anc_dag() -> Dag {
    build(
        &["p", "q", "x", "y", "z"],
        &[("p", "x"), ("p", "y"), ("q", "x"), ("q", "z")],
    )
}

/// `R({a,b}) = X`, `R({a,c}) = {a,b,c}`, `R({x}) = {x}`, every other pair ↦ `X`.
pub fn ex1_transit() -> TransitFunction {
    let g = crate::set_system::GroundSet::new(["a", "b", "c", "d"]).expect("distinct labels");
    let ac = g.subset(&["a", "c"]).expect("in ground");
    let abc = g.subset(&["a", "b", "c"]).expect("in ground");
    TransitFunction::from_fn(g.clone(), 2, |u| {
        Ok(match u.len() {
            1 => u.clone(),
            _ if *u == ac => abc.clone(),
            _ => g.full(),
        })
    })
    .expect("total table")
}

fn labels(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

fn lca(set: &[&str], lca: &[&str]) -> Option<Witness> {
    Some(Witness::Lca {
        set: labels(set),
        lca: labels(lca),
    })
}

fn expect(
    property: Property,
    k: Option<usize>,
    holds: bool,
    witness: Option<Witness>,
    claim: &'static str,
) -> Expectation {
    Expectation {
        property,
        k,
        holds,
        witness,
        claim,
    }
}

fn fact(claim: &'static str, check: fn(&Payload) -> bool) -> Fact {
    Fact { claim, check }
}

fn on_dag(p: &Payload) -> &Dag {
    match p {
        Payload::Dag(d) => d,
        Payload::Transit(_) => unreachable!("DAG fixture"),
    }
}

fn on_transit(p: &Payload) -> &TransitFunction {
    match p {
        Payload::Transit(t) => t,
        Payload::Dag(_) => unreachable!("transit fixture"),
    }
}

fn family(dag: &Dag, sets: &[&[&str]]) -> bool {
    let ground: Vec<&str> = dag
        .leaf_ground()
        .labels()
        .iter()
        .map(String::as_str)
        .collect();
    SetSystem::from_labels(&ground, sets).is_ok_and(|s| s == dag.cluster_system())
}

fn lca_names(dag: &Dag, leaves: &[&str]) -> Option<Vec<String>> {
    let a = dag.leaf_set(leaves).ok()?;
    Some(dag.vertex_names(&dag.lca_set_of_leaves(&a)))
}

fn vertex_set_is(dag: &Dag, got: Option<crate::bitset::VertexSet>, want: &[&str]) -> bool {
    got.zip(dag.vertex_set(want).ok())
        .is_some_and(|(g, w)| g == w)
}

fn fig1_facts() -> Vec<Fact> {
    vec![
        fact("leaf set is {w,x,y,z}", |p| {
            on_dag(p).leaf_names(&on_dag(p).all_leaves()) == labels(&["w", "x", "y", "z"])
        }),
        fact(
            "cluster system is {w},{x},{y},{z},{x,y},{w,x,y},{x,y,z},X",
            |p| {
                family(
                    on_dag(p),
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
            },
        ),
        fact("LCA({x,y}) = {p,v,q}", |p| {
            lca_names(on_dag(p), &["x", "y"]) == Some(labels(&["p", "v", "q"]))
        }),
        fact("the graph is a network", |p| on_dag(p).is_network()),
        fact("C(p) = {w,x,y}", |p| {
            let d = on_dag(p);
            d.vertex("p")
                .is_ok_and(|v| d.leaf_names(d.cluster(v)) == labels(&["w", "x", "y"]))
        }),
        fact("p and v are incomparable", |p| {
            let d = on_dag(p);
            matches!((d.vertex("p"), d.vertex("v")), (Ok(a), Ok(b)) if !d.is_comparable(a, b))
        }),
        fact("Anc(z) = {z,q,r}", |p| {
            let d = on_dag(p);
            vertex_set_is(
                d,
                d.vertex("z").ok().map(|z| d.ancestors(z).clone()),
                &["z", "q", "r"],
            )
        }),
        fact("common ancestors of {x,y} are p, v, q, r", |p| {
            let d = on_dag(p);
            vertex_set_is(
                d,
                d.vertex_set(&["x", "y"])
                    .ok()
                    .and_then(|y| d.common_ancestors(&y).ok()),
                &["r", "p", "v", "q"],
            )
        }),
    ]
}

fn fig2_facts() -> Vec<Fact> {
    vec![
        fact("leaf set is {w,x,y,z}", |p| on_dag(p).leaf_count() == 4),
        fact("cluster system is {x},{y},{z},{w},{x,y,z},X", |p| {
            family(
                on_dag(p),
                &[
                    &["w"],
                    &["x"],
                    &["y"],
                    &["z"],
                    &["x", "y", "z"],
                    &["w", "x", "y", "z"],
                ],
            )
        }),
        fact("lca(x,y), lca(x,z), lca(y,z) are undefined", |p| {
            let d = on_dag(p);
            [["x", "y"], ["x", "z"], ["y", "z"]].iter().all(|pair| {
                d.leaf_set(pair)
                    .is_ok_and(|a| !d.lca_of_leaves(&a).is_defined())
            })
        }),
    ]
}

fn fig3_facts() -> Vec<Fact> {
    vec![
        fact(
            "cluster system is {x},{y},{z},{w},{w,x},{w,y},{x,y},X",
            |p| {
                family(
                    on_dag(p),
                    &[
                        &["w"],
                        &["x"],
                        &["y"],
                        &["z"],
                        &["w", "x"],
                        &["w", "y"],
                        &["x", "y"],
                        &["w", "x", "y", "z"],
                    ],
                )
            },
        ),
        fact(
            "lca({w,x,y}) = r differs from lca of every pair in {w,x,y}",
            |p| {
                let d = on_dag(p);
                let Ok(r) = d.vertex("r") else { return false };
                let Ok(a) = d.leaf_set(&["w", "x", "y"]) else {
                    return false;
                };
                d.lca_of_leaves(&a) == Lca::Unique(r)
                    && [["w", "x"], ["w", "y"], ["x", "y"]].iter().all(|pair| {
                        d.leaf_set(pair)
                            .is_ok_and(|u| matches!(d.lca_of_leaves(&u), Lca::Unique(v) if v != r))
                    })
            },
        ),
        fact("lca({w,x}) = a", |p| {
            lca_names(on_dag(p), &["w", "x"]) == Some(labels(&["a"]))
        }),
        fact("Anc(w) = {w,a,b,r}", |p| {
            let d = on_dag(p);
            vertex_set_is(
                d,
                d.vertex("w").ok().map(|w| d.ancestors(w).clone()),
                &["w", "a", "b", "r"],
            )
        }),
        fact("the graph is a network", |p| on_dag(p).is_network()),
    ]
}

fn ex1_facts() -> Vec<Fact> {
    vec![
        fact("transit sets are {a},{b},{c},{d},{a,b,c},X", |p| {
            on_transit(p).transit_sets().is_ok_and(|s| {
                s.to_label_sets()
                    == vec![
                        labels(&["a"]),
                        labels(&["b"]),
                        labels(&["c"]),
                        labels(&["d"]),
                        labels(&["a", "b", "c"]),
                        labels(&["a", "b", "c", "d"]),
                    ]
            })
        }),
        fact(
            "Hasse diagram of the transit sets is a network rooted at X",
            |p| {
                let Ok(sets) = on_transit(p).transit_sets() else {
                    return false;
                };
                build_hasse(&sets).is_ok_and(|h| {
                    h.dag().is_network()
                        && h.dag().roots().first().map(|&r| h.dag().label(r)) == Some("a+b+c+d")
                })
            },
        ),
        fact("Hasse diagram of the transit sets is a rooted tree", |p| {
            let Ok(sets) = on_transit(p).transit_sets() else {
                return false;
            };
            build_hasse(&sets).is_ok_and(|h| h.dag().vertices().all(|v| h.dag().in_degree(v) <= 1))
        }),
        fact(
            "Hasse diagram of the transit sets has the pairwise lca-property",
            |p| {
                let Ok(sets) = on_transit(p).transit_sets() else {
                    return false;
                };
                build_hasse(&sets)
                    .is_ok_and(|h| has_klca_property(h.dag(), 2).is_ok_and(|r| r.holds))
            },
        ),
    ]
}

fn sec2_facts() -> Vec<Fact> {
    vec![
        fact("{y,z} has no common ancestor", |p| {
            let d = on_dag(p);
            d.leaf_set(&["y", "z"]).is_ok_and(|a| {
                d.common_ancestors_of_leaves(&a).is_empty()
                    && d.lca_of_leaves(&a) == Lca::NoCommonAncestor
            })
        }),
        fact("q is a common ancestor of {x,z}", |p| {
            let d = on_dag(p);
            vertex_set_is(
                d,
                d.leaf_set(&["x", "z"])
                    .ok()
                    .map(|a| d.common_ancestors_of_leaves(&a)),
                &["q"],
            )
        }),
        fact("the graph has two maximal vertices", |p| {
            on_dag(p).roots().len() == 2
        }),
    ]
}

/// Builds the named fixture and checks every expectation.
pub fn fixture(name: FixtureName) -> Result<Fixture> {
    use Property::*;
    let f = match name {
        FixtureName::Fig1 => Fixture {
            name,
            payload: Payload::Dag(fig1_dag()),
            expected: vec![
                expect(
                    Klca,
                    Some(2),
                    false,
                    lca(&["x", "y"], &["p", "v", "q"]),
                    "no pairwise lca: LCA({x,y}) = {p,v,q}",
                ),
                expect(
                    Lca,
                    None,
                    false,
                    lca(&["x", "y"], &["p", "v", "q"]),
                    "no lca-property",
                ),
                expect(Closed, None, true, None, "cluster system is closed"),
                expect(Kc, Some(1), true, None, "(KC) holds for k = 1"),
                expect(Kc, Some(2), true, None, "(KC) holds for k = 2"),
                expect(Kc, Some(3), true, None, "(KC) holds for k = 3"),
                expect(Kc, Some(4), true, None, "(KC) holds for k = 4"),
                expect(Pcc, None, false, None, "(PCC) fails"),
                expect(
                    Clustering,
                    None,
                    true,
                    None,
                    "cluster system is a clustering system",
                ),
            ],
            facts: fig1_facts(),
        },
        FixtureName::Fig2 => Fixture {
            name,
            payload: Payload::Dag(fig2_dag()),
            expected: vec![
                expect(Ks, None, true, None, "(KS) holds"),
                expect(Kc, Some(2), true, None, "(KC) holds for k = 2"),
                expect(Kc, Some(3), true, None, "(KC) holds for k = 3"),
                expect(
                    Klca,
                    Some(2),
                    false,
                    lca(&["x", "y"], &["u1", "u2"]),
                    "lca(x,y) is undefined",
                ),
                expect(
                    Klca,
                    Some(3),
                    false,
                    lca(&["x", "y", "z"], &["u1", "u2"]),
                    "lca(x,y,z) is undefined",
                ),
                expect(
                    Cl,
                    None,
                    false,
                    None,
                    "(CL) fails at a vertex with cluster {x,y,z}",
                ),
                expect(
                    TSystem,
                    Some(2),
                    true,
                    None,
                    "cluster system is a 2-ary T-system",
                ),
            ],
            facts: fig2_facts(),
        },
        FixtureName::Fig3 => Fixture {
            name,
            payload: Payload::Dag(fig3_dag()),
            expected: vec![
                expect(Ks, None, true, None, "(KS) holds"),
                expect(Lca, None, true, None, "the graph has the lca-property"),
                expect(
                    Klca,
                    Some(2),
                    true,
                    None,
                    "lca(u,v) is defined for all leaves u, v",
                ),
                expect(Kc, Some(2), true, None, "(KC) holds for k = 2"),
                expect(Kc, Some(3), true, None, "(KC) holds for k = 3"),
                expect(Kc, Some(4), true, None, "(KC) holds for k = 4"),
                expect(Kr, Some(2), true, None, "(KR) holds for k = 2"),
                expect(Kr, Some(3), true, None, "(KR) holds for k = 3"),
                expect(Kr, Some(4), true, None, "(KR) holds for k = 4"),
                expect(
                    TSystem,
                    Some(2),
                    true,
                    None,
                    "cluster system is a 2-ary T-system",
                ),
                expect(
                    WeakHier,
                    None,
                    false,
                    Some(Witness::Members {
                        sets: vec![
                            labels(&["w", "x"]),
                            labels(&["w", "y"]),
                            labels(&["x", "y"]),
                        ],
                    }),
                    "{w,x}, {w,y}, {x,y} violate the weak hierarchy condition",
                ),
                expect(
                    StrictKlca,
                    Some(2),
                    true,
                    None,
                    "strict 2-lca-property holds",
                ),
                expect(
                    StrongKlca,
                    Some(2),
                    false,
                    lca(&["w", "x", "y"], &["r"]),
                    "not strong 2-lca: lca({w,x,y}) = r",
                ),
                expect(
                    StrongKlca,
                    Some(3),
                    true,
                    None,
                    "strong 3-lca-property holds",
                ),
            ],
            facts: fig3_facts(),
        },
        FixtureName::Ex1 => Fixture {
            name,
            payload: Payload::Transit(ex1_transit()),
            expected: vec![
                expect(T1, None, true, None, "(t1) holds"),
                expect(T3, None, true, None, "(t3) holds"),
                expect(
                    Monotone,
                    None,
                    false,
                    Some(Witness::Monotone {
                        u: labels(&["a", "c"]),
                        image_u: labels(&["a", "b", "c"]),
                        w: labels(&["a", "b"]),
                        image_w: labels(&["a", "b", "c", "d"]),
                    }),
                    "not monotone: R(a,b) = X is not inside R(a,c)",
                ),
                expect(
                    APrime,
                    None,
                    true,
                    Some(Witness::Set {
                        set: labels(&["a", "b"]),
                    }),
                    "(a') holds",
                ),
                expect(
                    Network,
                    None,
                    true,
                    None,
                    "Hasse diagram of the transit sets is a network",
                ),
            ],
            facts: ex1_facts(),
        },
        FixtureName::Sec2NoAnc => Fixture {
            name,
            payload: Payload::Dag(sec2_no_anc_dag()),
            expected: vec![
                expect(Network, None, false, None, "two vertices of in-degree 0"),
                expect(
                    Klca,
                    Some(2),
                    false,
                    lca(&["y", "z"], &[]),
                    "{y,z} has no LCA",
                ),
            ],
            facts: sec2_facts(),
        },
    };
    f.verify()?;
    Ok(f)
}

pub fn all_fixtures() -> Result<Vec<Fixture>> {
    FixtureName::ALL.into_iter().map(fixture).collect()
}
