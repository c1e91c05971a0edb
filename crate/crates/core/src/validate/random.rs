//! Seeded random instances. The same seed always yields the same instance.

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bitset::{BitSet, LeafSet};
use crate::dag::Dag;
use crate::error::{Error, Result};
use crate::set_system::{GroundSet, SetSystem};

fn vertex_labels(n: usize) -> Arc<[String]> {
    (0..n).map(|i| format!("v{i}")).collect()
}

/// Shuffles the vertices into a random topological order and keeps each
/// forward pair as an edge with probability `density`.
pub fn random_dag(seed: u64, vertices: usize, density: f64) -> Result<Dag> {
    if !(0.0..=1.0).contains(&density) {
        return Err(Error::BoundExceeded(format!(
            "edge density {density} outside [0, 1]"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..vertices).collect();
    order.shuffle(&mut rng);
    let mut edges = Vec::new();
    for i in 0..vertices {
        for j in i + 1..vertices {
            if rng.gen_bool(density) {
                edges.push((order[i], order[j]));
            }
        }
    }
    Dag::from_parts(vertex_labels(vertices), edges)
}

/// `members` distinct non-empty subsets of an `n`-element ground set
/// `e0, e1, ...`; with `force_clustering`, all singletons and the ground set
/// are added on top.
pub fn random_set_system(
    seed: u64,
    n: usize,
    members: usize,
    force_clustering: bool,
) -> Result<SetSystem> {
    let available = if n >= 128 {
        u128::MAX
    } else {
        (1u128 << n) - 1
    };
    if members as u128 > available {
        return Err(Error::TooManyMembers {
            requested: members as u128,
            available,
        });
    }
    let width = n.max(1).to_string().len();
    let ground = GroundSet::new((0..n).map(|i| format!("e{i:0width$}")))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut chosen: BTreeSet<LeafSet> = BTreeSet::new();
    if n <= 16 {
        let picks = rand::seq::index::sample(&mut rng, available as usize, members);
        let mut picks = picks.into_vec();
        picks.sort_unstable();
        chosen.extend(
            picks
                .into_iter()
                .map(|p| LeafSet::from_mask(n, p as u64 + 1)),
        );
    } else {
        while chosen.len() < members {
            let set = BitSet::from_indices(n, (0..n).filter(|_| rng.gen_bool(0.5)));
            if !set.is_empty() {
                chosen.insert(set);
            }
        }
    }
    if force_clustering {
        chosen.extend((0..n).map(|i| ground.singleton(i)));
        chosen.insert(ground.full());
    }
    SetSystem::new(ground, chosen.into_iter().collect())
}
