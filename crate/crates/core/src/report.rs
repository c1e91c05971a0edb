//! Verdicts of the property checkers.
//!
//! Every checker returns a [`PropertyReport`]. Failing reports always carry a
//! [`Witness`]; some passing reports carry a certificate in the same slot
//! (spanning sets, the vertex ↦ spanning-set map of the strict check, the
//! argument realizing `R(U) = X`).

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Property {
    Pcc,
    Cl,
    Lca,
    Klca,
    StrictKlca,
    StrongKlca,
    Ks,
    K1,
    Kc,
    Kr,
    Closed,
    WeakHier,
    KWeakHier,
    KWeakClosure,
    KWeakRemoval,
    TSystem,
    Clustering,
    T1,
    T3,
    Monotone,
    APrime,
    Network,
    Identified,
}

impl Property {
    pub fn name(self) -> &'static str {
        match self {
            Property::Pcc => "PCC",
            Property::Cl => "CL",
            Property::Lca => "LCA",
            Property::Klca => "KLCA",
            Property::StrictKlca => "STRICT_KLCA",
            Property::StrongKlca => "STRONG_KLCA",
            Property::Ks => "KS",
            Property::K1 => "K1",
            Property::Kc => "KC",
            Property::Kr => "KR",
            Property::Closed => "CLOSED",
            Property::WeakHier => "WEAK_HIER",
            Property::KWeakHier => "K_WEAK_HIER",
            Property::KWeakClosure => "K_WEAK_CLOSURE",
            Property::KWeakRemoval => "K_WEAK_REMOVAL",
            Property::TSystem => "T_SYSTEM",
            Property::Clustering => "CLUSTERING",
            Property::T1 => "T1",
            Property::T3 => "T3",
            Property::Monotone => "MONOTONE",
            Property::APrime => "A_PRIME",
            Property::Network => "NETWORK",
            Property::Identified => "IDENTIFIED",
        }
    }
}

impl Property {
    pub const ALL: [Property; 23] = [
        Property::Pcc,
        Property::Cl,
        Property::Lca,
        Property::Klca,
        Property::StrictKlca,
        Property::StrongKlca,
        Property::Ks,
        Property::K1,
        Property::Kc,
        Property::Kr,
        Property::Closed,
        Property::WeakHier,
        Property::KWeakHier,
        Property::KWeakClosure,
        Property::KWeakRemoval,
        Property::TSystem,
        Property::Clustering,
        Property::T1,
        Property::T3,
        Property::Monotone,
        Property::APrime,
        Property::Network,
        Property::Identified,
    ];

    /// Whether the property is parameterized by `k`.
    pub fn takes_k(self) -> bool {
        matches!(
            self,
            Property::Klca
                | Property::StrictKlca
                | Property::StrongKlca
                | Property::Kc
                | Property::Kr
                | Property::KWeakHier
                | Property::KWeakClosure
                | Property::KWeakRemoval
                | Property::TSystem
                | Property::Identified
        )
    }
}

/// Accepts report names in any case, with `-` or `_` or neither between
/// words, plus the short forms `strict`, `strong`, `weak` and `kweak`.
impl std::str::FromStr for Property {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key: String = s
            .chars()
            .filter(|c| *c != '-' && *c != '_')
            .collect::<String>()
            .to_ascii_lowercase();
        let alias = match key.as_str() {
            "strict" => Some(Property::StrictKlca),
            "strong" => Some(Property::StrongKlca),
            "weak" => Some(Property::WeakHier),
            "kweak" => Some(Property::KWeakHier),
            _ => None,
        };
        alias
            .or_else(|| {
                Property::ALL
                    .into_iter()
                    .find(|p| p.name().replace('_', "").to_ascii_lowercase() == key)
            })
            .ok_or_else(|| crate::error::Error::UnknownProperty(s.to_string()))
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A set `T` that spans `target`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Span {
    pub target: Vec<String>,
    pub by: Vec<String>,
}

/// Counterexample or certificate attached to a report. Leaf sets are sorted
/// label lists; vertex sets follow vertex declaration order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Set {
        set: Vec<String>,
    },
    Lca {
        set: Vec<String>,
        lca: Vec<String>,
    },
    Closure {
        set: Vec<String>,
        closure: Option<Vec<String>>,
    },
    Members {
        sets: Vec<Vec<String>>,
    },
    Image {
        set: Vec<String>,
        image: Vec<String>,
    },
    Monotone {
        u: Vec<String>,
        image_u: Vec<String>,
        w: Vec<String>,
        image_w: Vec<String>,
    },
    Vertex {
        vertex: String,
        cluster: Vec<String>,
        lca: Vec<String>,
    },
    VertexPair {
        u: String,
        v: String,
        cluster_u: Vec<String>,
        cluster_v: Vec<String>,
    },
    Spans {
        spans: Vec<Span>,
    },
    Roots {
        roots: Vec<String>,
    },
    Difference {
        missing: Vec<Vec<String>>,
        extra: Vec<Vec<String>>,
    },
    Stage {
        stage: Property,
        k: Option<usize>,
        detail: Box<Witness>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub property: Property,
    pub k: Option<usize>,
    pub holds: bool,
    pub witness: Option<Witness>,
}

impl PropertyReport {
    pub fn pass(property: Property, k: Option<usize>) -> Self {
        PropertyReport {
            property,
            k,
            holds: true,
            witness: None,
        }
    }

    pub fn pass_with(property: Property, k: Option<usize>, certificate: Witness) -> Self {
        PropertyReport {
            property,
            k,
            holds: true,
            witness: Some(certificate),
        }
    }

    pub fn fail(property: Property, k: Option<usize>, witness: Witness) -> Self {
        PropertyReport {
            property,
            k,
            holds: false,
            witness: Some(witness),
        }
    }

    /// Re-labels a failing prerequisite report as a stage failure of a
    /// layered property.
    pub fn failed_stage(property: Property, k: Option<usize>, stage: PropertyReport) -> Self {
        let detail = stage.witness.unwrap_or(Witness::Set { set: Vec::new() });
        PropertyReport::fail(
            property,
            k,
            Witness::Stage {
                stage: stage.property,
                k: stage.k,
                detail: Box::new(detail),
            },
        )
    }
}

pub(crate) fn braces(set: &[String]) -> String {
    format!("{{{}}}", set.join(","))
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Set { set } => write!(f, "witness={}", braces(set)),
            Witness::Lca { set, lca } => {
                write!(f, "witness={} LCA={}", braces(set), braces(lca))
            }
            Witness::Closure { set, closure } => match closure {
                Some(c) => write!(f, "witness={} cl={}", braces(set), braces(c)),
                None => write!(f, "witness={} cl=undefined", braces(set)),
            },
            Witness::Members { sets } => {
                let parts: Vec<String> = sets.iter().map(|s| braces(s)).collect();
                write!(f, "witness=({})", parts.join(","))
            }
            Witness::Image { set, image } => {
                write!(f, "witness={} R={}", braces(set), braces(image))
            }
            Witness::Monotone {
                u,
                image_u,
                w,
                image_w,
            } => write!(
                f,
                "witness=(U={},W={}) R(U)={} R(W)={}",
                braces(u),
                braces(w),
                braces(image_u),
                braces(image_w)
            ),
            Witness::Vertex {
                vertex,
                cluster,
                lca,
            } => write!(
                f,
                "witness={} C={} LCA={}",
                vertex,
                braces(cluster),
                braces(lca)
            ),
            Witness::VertexPair {
                u,
                v,
                cluster_u,
                cluster_v,
            } => write!(
                f,
                "witness=({},{}) C({})={} C({})={}",
                u,
                v,
                u,
                braces(cluster_u),
                v,
                braces(cluster_v)
            ),
            Witness::Spans { spans } => {
                let parts: Vec<String> = spans
                    .iter()
                    .map(|s| format!("{}<-{}", braces(&s.target), braces(&s.by)))
                    .collect();
                write!(f, "spans=[{}]", parts.join(" "))
            }
            Witness::Roots { roots } => write!(f, "roots={}", braces(roots)),
            Witness::Difference { missing, extra } => {
                let m: Vec<String> = missing.iter().map(|s| braces(s)).collect();
                let e: Vec<String> = extra.iter().map(|s| braces(s)).collect();
                write!(f, "missing=[{}] extra=[{}]", m.join(" "), e.join(" "))
            }
            Witness::Stage { stage, k, detail } => {
                match k {
                    Some(k) => write!(f, "stage={stage}(k={k}) ")?,
                    None => write!(f, "stage={stage} ")?,
                }
                detail.fmt(f)
            }
        }
    }
}

/// One line: `KLCA(k=2): FAIL witness={x,y} LCA={p,v,q}`.
impl fmt::Display for PropertyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.k {
            Some(k) => write!(f, "{}(k={}): ", self.property, k)?,
            None => write!(f, "{}: ", self.property)?,
        }
        f.write_str(if self.holds { "PASS" } else { "FAIL" })?;
        if let Some(w) = &self.witness {
            write!(f, " {w}")?;
        }
        Ok(())
    }
}

/// Serializes reports as a JSON array, one object per report, in input order.
pub fn reports_to_json(reports: &[PropertyReport]) -> String {
    serde_json::to_string(reports).expect("reports serialize")
}

pub fn reports_to_text(reports: &[PropertyReport]) -> String {
    let mut out = String::new();
    for r in reports {
        out.push_str(&r.to_string());
        out.push('\n');
    }
    out
}
