//! Reproducible inputs for the benchmarks.

use lcadag_core::validate::random::{random_dag, random_set_system};
use lcadag_core::{Dag, SetSystem};

/// `count` random DAGs on `vertices` vertices, seeded `0..count`.
pub fn dag_workload(count: u64, vertices: usize, density: f64) -> Vec<Dag> {
    (0..count)
        .map(|seed| random_dag(seed, vertices, density).expect("valid generator arguments"))
        .collect()
}

/// `count` random clustering systems on `n` elements.
pub fn clustering_workload(count: u64, n: usize, members: usize) -> Vec<SetSystem> {
    (0..count)
        .map(|seed| random_set_system(seed, n, members, true).expect("valid generator arguments"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn workloads_are_sized_and_reproducible() {
        let a = dag_workload(5, 10, 0.3);
        assert_eq!(a.len(), 5);
        assert!(a.iter().all(|d| d.len() == 10));
        assert_eq!(a, dag_workload(5, 10, 0.3));

        let s = clustering_workload(3, 6, 5);
        assert!(s.iter().all(|sys| sys.check_ks().holds));
    }
}
