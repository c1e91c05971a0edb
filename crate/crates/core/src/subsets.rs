//! Subset enumeration in canonical order.
//!
//! Every search over subsets in this crate visits candidates by decreasing
//! cardinality and, within one cardinality, by increasing bit-mask value
//! (colexicographic order of the index lists). Witnesses are the first
//! failing candidate in that order, so they are deterministic.

use std::ops::ControlFlow;

use crate::bitset::BitSet;

/// All `size`-element index lists over `0..n`, in colexicographic order.
#[derive(Debug, Clone)]
pub struct Combinations {
    n: usize,
    current: Vec<usize>,
    done: bool,
}

impl Combinations {
    pub fn new(n: usize, size: usize) -> Self {
        Combinations {
            n,
            current: (0..size).collect(),
            done: size > n,
        }
    }

    fn advance(&mut self) {
        let size = self.current.len();
        for i in 0..size {
            let limit = if i + 1 < size {
                self.current[i + 1]
            } else {
                self.n
            };
            if self.current[i] + 1 < limit {
                self.current[i] += 1;
                for (j, slot) in self.current[..i].iter_mut().enumerate() {
                    *slot = j;
                }
                return;
            }
        }
        self.done = true;
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        if self.current.is_empty() {
            self.done = true;
        } else {
            self.advance();
        }
        Some(out)
    }
}

/// Visits every `size`-element index list over `0..n` in colexicographic
/// order without allocating per combination.
pub fn for_each_combination<F>(n: usize, size: usize, mut visit: F) -> ControlFlow<()>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    if size > n {
        return ControlFlow::Continue(());
    }
    let mut c: Vec<usize> = (0..size).collect();
    loop {
        visit(&c)?;
        let mut i = 0;
        loop {
            if i == size {
                return ControlFlow::Continue(());
            }
            let limit = if i + 1 < size { c[i + 1] } else { n };
            if c[i] + 1 < limit {
                c[i] += 1;
                for (j, slot) in c[..i].iter_mut().enumerate() {
                    *slot = j;
                }
                break;
            }
            i += 1;
        }
    }
}

/// Non-empty subsets of `0..universe` with at most `max_size` elements, in
/// canonical order.
pub fn bounded_subsets(universe: usize, max_size: usize) -> impl Iterator<Item = BitSet> {
    let top = max_size.min(universe);
    (1..=top).rev().flat_map(move |size| {
        Combinations::new(universe, size)
            .map(move |idx| BitSet::from_indices(universe, idx.iter().copied()))
    })
}

/// All non-empty subsets of `0..universe`, in canonical order.
pub fn all_subsets(universe: usize) -> impl Iterator<Item = BitSet> {
    bounded_subsets(universe, universe)
}

/// Non-empty subsets of `set` with at most `max_size` elements, in canonical
/// order relative to the universe.
pub fn bounded_subsets_of(
    set: &BitSet,
    universe: usize,
    max_size: usize,
) -> impl Iterator<Item = BitSet> {
    let elems: Vec<usize> = set.iter().collect();
    let top = max_size.min(elems.len());
    (1..=top).rev().flat_map(move |size| {
        let elems = elems.clone();
        Combinations::new(elems.len(), size)
            .map(move |idx| BitSet::from_indices(universe, idx.iter().map(|&i| elems[i])))
    })
}

/// Number of non-empty subsets of an `n`-set with at most `k` elements.
pub fn bounded_subset_count(n: usize, k: usize) -> u128 {
    let mut total = 0u128;
    let mut binom = 1u128;
    for size in 1..=k.min(n) {
        binom = binom * (n - size + 1) as u128 / size as u128;
        total += binom;
    }
    total
}
