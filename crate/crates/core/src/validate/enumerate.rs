//! Exhaustive, deterministic enumeration of small instances.

use std::sync::Arc;

use crate::bitset::LeafSet;
use crate::dag::Dag;
use crate::error::{Error, Result};
use crate::lca::has_pcc;
use crate::set_system::{GroundSet, SetSystem};
use crate::subsets::bounded_subsets;
use crate::transit::TransitFunction;

/// Largest ground set for set-system and transit enumeration.
pub const MAX_GROUND: usize = 4;
/// Largest vertex count for exhaustive DAG enumeration.
pub const MAX_VERTICES: usize = 6;

const LABELS: [&str; 8] = ["a", "b", "c", "d", "e", "f", "g", "h"];

/// The canonical ground set `{a, b, ...}` with `n` elements.
pub fn canonical_ground(n: usize) -> GroundSet {
    GroundSet::new(LABELS[..n].iter().copied()).expect("canonical labels are distinct")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scope {
    /// Every non-empty family of non-empty subsets.
    All,
    /// Families containing every singleton and the ground set.
    Clustering,
}

fn check_bound(what: &str, value: usize, min: usize, max: usize) -> Result<()> {
    if value < min || value > max {
        return Err(Error::BoundExceeded(format!(
            "{what} = {value} outside {min}..={max}"
        )));
    }
    Ok(())
}

/// Every set system over the canonical `n`-element ground set within
/// `scope`. Families are ordered by the bit pattern of their optional
/// members, subsets being numbered by bit mask.
pub fn enumerate_set_systems(n: usize, scope: Scope) -> Result<impl Iterator<Item = SetSystem>> {
    check_bound("n", n, 1, MAX_GROUND)?;
    let ground = canonical_ground(n);
    let masks: Vec<u64> = (1..1u64 << n).collect();
    let full = (1u64 << n) - 1;
    let (fixed, optional): (Vec<u64>, Vec<u64>) = match scope {
        Scope::All => (Vec::new(), masks),
        Scope::Clustering => masks
            .into_iter()
            .partition(|m| m.count_ones() == 1 || *m == full),
    };
    let start = u64::from(scope == Scope::All);
    Ok((start..1u64 << optional.len()).map(move |pick| {
        let members = fixed
            .iter()
            .copied()
            .chain(
                optional
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| pick >> i & 1 == 1)
                    .map(|(_, &m)| m),
            )
            .map(|m| LeafSet::from_mask(n, m))
            .collect();
        SetSystem::from_members(ground.clone(), members)
    }))
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DagFilter {
    pub network: bool,
    pub pcc: bool,
}

impl DagFilter {
    pub fn accepts(&self, dag: &Dag) -> bool {
        (!self.network || dag.is_network()) && (!self.pcc || has_pcc(dag).holds)
    }
}

/// Vertex labels of enumerated DAGs.
pub fn dag_labels(m: usize) -> Arc<[String]> {
    LABELS[..m].iter().map(|s| s.to_string()).collect()
}

/// Acyclicity of a digraph given as child bit masks.
fn acyclic(children: &[u8]) -> bool {
    let m = children.len();
    let mut alive: u8 = if m == 8 { u8::MAX } else { (1u8 << m) - 1 };
    while alive != 0 {
        // A vertex is removable when none of its children are still alive.
        let sinks = (0..m)
            .filter(|&v| alive >> v & 1 == 1 && children[v] & alive == 0)
            .fold(0u8, |acc, v| acc | 1 << v);
        if sinks == 0 {
            return false;
        }
        alive &= !sinks;
    }
    true
}

/// Edge lists of every labeled DAG on exactly `m` vertices. Each unordered
/// pair `{i, j}` (i < j) is absent, `i -> j` or `j -> i`; candidates are
/// visited by their base-3 code over the pairs in lexicographic order.
pub fn dag_edge_lists(m: usize) -> Result<impl Iterator<Item = Vec<(usize, usize)>>> {
    check_bound("vertices", m, 1, MAX_VERTICES)?;
    let pairs: Vec<(usize, usize)> = (0..m)
        .flat_map(|i| (i + 1..m).map(move |j| (i, j)))
        .collect();
    let total = 3u64.pow(pairs.len() as u32);
    Ok((0..total).filter_map(move |code| {
        let mut c = code;
        let mut children = [0u8; MAX_VERTICES];
        let mut edges = Vec::new();
        for &(i, j) in &pairs {
            match c % 3 {
                1 => {
                    children[i] |= 1 << j;
                    edges.push((i, j));
                }
                2 => {
                    children[j] |= 1 << i;
                    edges.push((j, i));
                }
                _ => {}
            }
            c /= 3;
        }
        acyclic(&children[..m]).then_some(edges)
    }))
}

/// Every labeled DAG on exactly `m` vertices that passes `filter`.
pub fn enumerate_dags(m: usize, filter: DagFilter) -> Result<impl Iterator<Item = Dag>> {
    let labels = dag_labels(m);
    Ok(dag_edge_lists(m)?.filter_map(move |edges| {
        let dag = Dag::from_parts(labels.clone(), edges).expect("enumerated graphs are acyclic");
        filter.accepts(&dag).then_some(dag)
    }))
}

/// Every k-ary transit function on the canonical `n`-element ground set:
/// tables with `R({x}) = {x}` and `U ⊆ R(U)`.
pub fn enumerate_transit_functions(
    n: usize,
    k: usize,
) -> Result<impl Iterator<Item = TransitFunction>> {
    check_bound("n", n, 1, MAX_GROUND)?;
    check_bound("k", k, 2, usize::MAX)?;
    let ground = canonical_ground(n);
    let domain: Vec<LeafSet> = bounded_subsets(n, k).collect();
    // Free bits of each argument: the elements outside it.
    let free: Vec<Vec<usize>> = domain
        .iter()
        .map(|u| {
            if u.len() == 1 {
                Vec::new()
            } else {
                (0..n).filter(|&x| !u.contains(x)).collect()
            }
        })
        .collect();
    let total_bits: usize = free.iter().map(Vec::len).sum();
    if total_bits > 20 {
        return Err(Error::BoundExceeded(format!(
            "2^{total_bits} transit tables"
        )));
    }
    Ok((0..1u64 << total_bits).map(move |code| {
        let mut bit = 0;
        let mut images = Vec::with_capacity(domain.len());
        for (u, f) in domain.iter().zip(&free) {
            let mut r = u.clone();
            for &x in f {
                if code >> bit & 1 == 1 {
                    r.insert(x);
                }
                bit += 1;
            }
            images.push(r);
        }
        let mut it = images.into_iter();
        TransitFunction::from_fn(ground.clone(), k, |_| {
            Ok(it.next().expect("one image per argument"))
        })
        .expect("tables are total")
    }))
}
