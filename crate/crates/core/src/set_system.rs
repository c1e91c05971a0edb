//! Finite set systems, their closure function and the axiom checkers.

use std::fmt;
use std::ops::ControlFlow;
use std::sync::Arc;

use crate::bitset::{BitSet, LeafSet};
use crate::error::{Error, Result};
use crate::limits::exhaustive_bound;
use crate::report::{Property, PropertyReport, Span, Witness};
use crate::subsets::{bounded_subsets, bounded_subsets_of, for_each_combination};

/// The ground set `X`: distinct labels kept in sorted order, so that two
/// ground sets over the same labels always index elements identically.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroundSet {
    labels: Arc<[String]>,
}

impl GroundSet {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::EmptyGround);
        }
        if labels.iter().any(|l| l.is_empty()) {
            return Err(Error::EmptyLabel);
        }
        labels.sort();
        if let Some(w) = labels.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateElement(w[0].clone()));
        }
        Ok(GroundSet {
            labels: labels.into(),
        })
    }

    pub(crate) fn from_sorted(labels: Arc<[String]>) -> Self {
        debug_assert!(labels.windows(2).all(|w| w[0] < w[1]));
        GroundSet { labels }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index(&self, label: &str) -> Option<usize> {
        self.labels.binary_search_by(|l| l.as_str().cmp(label)).ok()
    }

    pub fn empty_set(&self) -> LeafSet {
        BitSet::new(self.len())
    }

    pub fn full(&self) -> LeafSet {
        BitSet::full(self.len())
    }

    pub fn singleton(&self, i: usize) -> LeafSet {
        BitSet::singleton(self.len(), i)
    }

    /// Converts element labels to a subset; duplicates collapse.
    pub fn subset<S: AsRef<str>>(&self, labels: &[S]) -> Result<LeafSet> {
        let mut set = self.empty_set();
        for l in labels {
            let l = l.as_ref();
            let i = self
                .index(l)
                .ok_or_else(|| Error::ElementNotInGround(l.to_string()))?;
            set.insert(i);
        }
        Ok(set)
    }

    pub fn names(&self, set: &BitSet) -> Vec<String> {
        set.iter().map(|i| self.labels[i].clone()).collect()
    }

    /// `{a,b,c}`
    pub fn format(&self, set: &BitSet) -> String {
        crate::report::braces(&self.names(set))
    }
}

impl fmt::Debug for GroundSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.labels.iter()).finish()
    }
}

/// Returns true iff `a ∩ b ∉ {a, b, ∅}`.
pub fn overlaps(a: &BitSet, b: &BitSet) -> bool {
    a.intersects(b) && !a.is_subset(b) && !b.is_subset(a)
}

/// A family of distinct non-empty subsets of a ground set. Members are kept
/// in canonical order (by size, then by bit value), which is also the order
/// in which checkers visit them.
#[derive(Clone, PartialEq, Eq)]
pub struct SetSystem {
    ground: GroundSet,
    members: Vec<LeafSet>,
}

impl SetSystem {
    /// Rejects empty members, members outside the ground set and duplicates.
    pub fn new(ground: GroundSet, members: Vec<LeafSet>) -> Result<Self> {
        let full = ground.full();
        for m in &members {
            if m.is_empty() {
                return Err(Error::EmptyMember);
            }
            if !m.is_subset(&full) || m.iter().last().unwrap_or(0) >= ground.len() {
                return Err(Error::ElementNotInGround(format!("{m:?}")));
            }
        }
        let mut members = members;
        members.sort();
        if let Some(w) = members.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateMember(ground.format(&w[0])));
        }
        Ok(SetSystem { ground, members })
    }

    /// Builds a system from possibly repeated members, keeping one copy of
    /// each. Members must be non-empty subsets of the ground set.
    pub fn from_members(ground: GroundSet, mut members: Vec<LeafSet>) -> Self {
        members.sort();
        members.dedup();
        debug_assert!(members.iter().all(|m| !m.is_empty()));
        SetSystem { ground, members }
    }

    /// Convenience constructor from labels.
    pub fn from_labels<S: AsRef<str>>(ground: &[S], members: &[&[S]]) -> Result<Self> {
        let ground = GroundSet::new(ground.iter().map(|s| s.as_ref().to_string()))?;
        let sets = members
            .iter()
            .map(|m| ground.subset(m))
            .collect::<Result<Vec<_>>>()?;
        SetSystem::new(ground, sets)
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn members(&self) -> &[LeafSet] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, set: &LeafSet) -> bool {
        self.members.binary_search(set).is_ok()
    }

    pub fn names(&self, set: &BitSet) -> Vec<String> {
        self.ground.names(set)
    }

    /// Members as sorted label lists, in canonical member order.
    pub fn to_label_sets(&self) -> Vec<Vec<String>> {
        self.members.iter().map(|m| self.names(m)).collect()
    }

    /// `cl(A)`: the intersection of all members containing `A`, or `None`
    /// when no member contains `A`.
    pub fn closure(&self, a: &LeafSet) -> Option<LeafSet> {
        let mut out: Option<LeafSet> = None;
        for m in &self.members {
            if a.is_subset(m) {
                match &mut out {
                    Some(acc) => acc.intersect_with(m),
                    None => out = Some(m.clone()),
                }
            }
        }
        out
    }

    pub fn closure_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<Option<LeafSet>> {
        Ok(self.closure(&self.ground.subset(labels)?))
    }

    pub fn check_ks(&self) -> PropertyReport {
        for x in 0..self.ground.len() {
            let s = self.ground.singleton(x);
            if !self.contains(&s) {
                return PropertyReport::fail(
                    Property::Ks,
                    None,
                    Witness::Set {
                        set: self.names(&s),
                    },
                );
            }
        }
        PropertyReport::pass(Property::Ks, None)
    }

    pub fn check_k1(&self) -> PropertyReport {
        let full = self.ground.full();
        if self.contains(&full) {
            PropertyReport::pass(Property::K1, None)
        } else {
            PropertyReport::fail(
                Property::K1,
                None,
                Witness::Set {
                    set: self.names(&full),
                },
            )
        }
    }

    /// (KC): the closure of every non-empty `U` with `|U| <= k` is defined
    /// and is a member. A system passing this is pre-k-ary.
    pub fn check_kc(&self, k: usize) -> Result<PropertyReport> {
        check_k(k, 1)?;
        for u in bounded_subsets(self.ground.len(), k) {
            let cl = self.closure(&u);
            let ok = cl.as_ref().is_some_and(|c| self.contains(c));
            if !ok {
                return Ok(PropertyReport::fail(
                    Property::Kc,
                    Some(k),
                    Witness::Closure {
                        set: self.names(&u),
                        closure: cl.map(|c| self.names(&c)),
                    },
                ));
            }
        }
        Ok(PropertyReport::pass(Property::Kc, Some(k)))
    }

    /// Finds the first `T ⊆ C` with `|T| <= k` such that every member
    /// containing `T` contains `C`.
    pub fn spanning_set(&self, c: &LeafSet, k: usize) -> Option<LeafSet> {
        bounded_subsets_of(c, self.ground.len(), k).find(|t| self.closure(t).as_ref() == Some(c))
    }

    /// (KR). The passing report carries the spanning set found for each
    /// member.
    pub fn check_kr(&self, k: usize) -> Result<PropertyReport> {
        check_k(k, 1)?;
        let mut spans = Vec::with_capacity(self.members.len());
        for c in &self.members {
            match self.spanning_set(c, k) {
                Some(t) => spans.push(Span {
                    target: self.names(c),
                    by: self.names(&t),
                }),
                None => {
                    return Ok(PropertyReport::fail(
                        Property::Kr,
                        Some(k),
                        Witness::Set { set: self.names(c) },
                    ))
                }
            }
        }
        Ok(PropertyReport::pass_with(
            Property::Kr,
            Some(k),
            Witness::Spans { spans },
        ))
    }

    /// Closed under non-empty pairwise intersection.
    pub fn is_closed(&self) -> PropertyReport {
        let m = &self.members;
        for i in 0..m.len() {
            for j in i + 1..m.len() {
                let meet = m[i].intersection(&m[j]);
                if !meet.is_empty() && !self.contains(&meet) {
                    return PropertyReport::fail(
                        Property::Closed,
                        None,
                        Witness::Members {
                            sets: vec![self.names(&m[i]), self.names(&m[j])],
                        },
                    );
                }
            }
        }
        PropertyReport::pass(Property::Closed, None)
    }

    /// The first `k + 1` distinct members none of which can be dropped
    /// without enlarging their common intersection.
    fn k_weak_violation(&self, k: usize) -> Option<Vec<usize>> {
        let m = &self.members;
        let size = k + 1;
        let mut prefix: Vec<LeafSet> = Vec::with_capacity(size + 1);
        let mut suffix: Vec<LeafSet> = vec![BitSet::new(0); size + 1];
        let full = self.ground.full();
        let mut found = None;
        let _ = for_each_combination(m.len(), size, |idx| {
            prefix.clear();
            prefix.push(full.clone());
            for &i in idx {
                let next = prefix.last().unwrap().intersection(&m[i]);
                prefix.push(next);
            }
            suffix[size] = full.clone();
            for p in (0..size).rev() {
                suffix[p] = suffix[p + 1].intersection(&m[idx[p]]);
            }
            let total = &prefix[size];
            let redundant = (0..size).any(|j| {
                let mut without = prefix[j].clone();
                without.intersect_with(&suffix[j + 1]);
                &without == total
            });
            if redundant {
                ControlFlow::Continue(())
            } else {
                found = Some(idx.to_vec());
                ControlFlow::Break(())
            }
        });
        found
    }

    /// For any three members `A, B, C`: `A∩B∩C ∈ {A∩B, A∩C, B∩C}`.
    pub fn is_weak_hierarchy(&self) -> PropertyReport {
        match self.k_weak_violation(2) {
            None => PropertyReport::pass(Property::WeakHier, None),
            Some(idx) => PropertyReport::fail(Property::WeakHier, None, self.tuple_witness(&idx)),
        }
    }

    /// For any `k + 1` distinct members, one of them is redundant in their
    /// common intersection.
    pub fn is_k_weak_hierarchy(&self, k: usize) -> Result<PropertyReport> {
        check_k(k, 2)?;
        Ok(match self.k_weak_violation(k) {
            None => PropertyReport::pass(Property::KWeakHier, Some(k)),
            Some(idx) => {
                PropertyReport::fail(Property::KWeakHier, Some(k), self.tuple_witness(&idx))
            }
        })
    }

    fn tuple_witness(&self, idx: &[usize]) -> Witness {
        Witness::Members {
            sets: idx.iter().map(|&i| self.names(&self.members[i])).collect(),
        }
    }

    /// Every non-empty `A` has some `U ⊆ A`, `|U| <= k`, with
    /// `cl(A) = cl(U)`. An undefined closure only equals another undefined
    /// closure. Exhaustive over all subsets of the ground set.
    pub fn k_weak_closure_criterion(&self, k: usize) -> Result<PropertyReport> {
        check_k(k, 2)?;
        let n = self.ground.len();
        guard(n)?;
        for a in bounded_subsets(n, n) {
            let target = self.closure(&a);
            let spanned = bounded_subsets_of(&a, n, k).any(|u| self.closure(&u) == target);
            if !spanned {
                return Ok(PropertyReport::fail(
                    Property::KWeakClosure,
                    Some(k),
                    Witness::Closure {
                        set: self.names(&a),
                        closure: target.map(|c| self.names(&c)),
                    },
                ));
            }
        }
        Ok(PropertyReport::pass(Property::KWeakClosure, Some(k)))
    }

    /// Every `A` with `|A| > k` has some `z ∈ A` with `z ∈ cl(A \ {z})`.
    /// An undefined closure is treated as the whole ground set.
    pub fn k_weak_removal_criterion(&self, k: usize) -> Result<PropertyReport> {
        check_k(k, 2)?;
        let n = self.ground.len();
        guard(n)?;
        for a in bounded_subsets(n, n).take_while(|a| a.len() > k) {
            let removable = a.iter().any(|z| {
                let mut rest = a.clone();
                rest.remove(z);
                self.closure(&rest).is_none_or(|c| c.contains(z))
            });
            if !removable {
                return Ok(PropertyReport::fail(
                    Property::KWeakRemoval,
                    Some(k),
                    Witness::Set {
                        set: self.names(&a),
                    },
                ));
            }
        }
        Ok(PropertyReport::pass(Property::KWeakRemoval, Some(k)))
    }

    /// k-ary T-system: (KS), (KR) and (KC) for `k`. A failure reports the
    /// first failing axiom in that order.
    pub fn is_t_system(&self, k: usize) -> Result<PropertyReport> {
        check_k(k, 2)?;
        for stage in [self.check_ks(), self.check_kr(k)?, self.check_kc(k)?] {
            if !stage.holds {
                return Ok(PropertyReport::failed_stage(
                    Property::TSystem,
                    Some(k),
                    stage,
                ));
            }
        }
        Ok(PropertyReport::pass(Property::TSystem, Some(k)))
    }

    /// (KS) and (K1).
    pub fn is_clustering_system(&self) -> PropertyReport {
        for stage in [self.check_ks(), self.check_k1()] {
            if !stage.holds {
                return PropertyReport::failed_stage(Property::Clustering, None, stage);
            }
        }
        PropertyReport::pass(Property::Clustering, None)
    }
}

impl fmt::Debug for SetSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sets: Vec<String> = self.members.iter().map(|m| self.ground.format(m)).collect();
        write!(
            f,
            "SetSystem {{ ground: {:?}, members: [{}] }}",
            self.ground,
            sets.join(", ")
        )
    }
}

pub(crate) fn check_k(k: usize, min: usize) -> Result<()> {
    if k < min {
        Err(Error::InvalidK { k, min })
    } else {
        Ok(())
    }
}

pub(crate) fn guard(n: usize) -> Result<()> {
    let bound = exhaustive_bound();
    if n > bound {
        Err(Error::LeafSetTooLarge { leaves: n, bound })
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(ground: &[&str], members: &[&[&str]]) -> SetSystem {
        SetSystem::from_labels(ground, members).unwrap()
    }

    fn fig1() -> SetSystem {
        sys(
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
    }

    fn fig2() -> SetSystem {
        sys(
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
    }

    fn fig3() -> SetSystem {
        sys(
            &["w", "x", "y", "z"],
            &[
                &["x"],
                &["y"],
                &["z"],
                &["w"],
                &["w", "x"],
                &["w", "y"],
                &["x", "y"],
                &["w", "x", "y", "z"],
            ],
        )
    }

    fn labels(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    fn set_witness(r: &PropertyReport) -> Vec<String> {
        match r.witness.as_ref().unwrap() {
            Witness::Set { set } => set.clone(),
            Witness::Closure { set, .. } => set.clone(),
            other => panic!("unexpected witness {other:?}"),
        }
    }

    #[test]
    fn construction_rejects_bad_members() {
        let g = GroundSet::new(["a", "b"]).unwrap();
        assert_eq!(
            SetSystem::new(g.clone(), vec![g.empty_set()]),
            Err(Error::EmptyMember)
        );
        let a = g.subset(&["a"]).unwrap();
        assert!(matches!(
            SetSystem::new(g.clone(), vec![a.clone(), a]),
            Err(Error::DuplicateMember(_))
        ));
        assert_eq!(g.subset(&["c"]), Err(Error::ElementNotInGround("c".into())));
        assert_eq!(
            GroundSet::new(["a", "a"]),
            Err(Error::DuplicateElement("a".into()))
        );
        assert_eq!(
            GroundSet::new(Vec::<String>::new()),
            Err(Error::EmptyGround)
        );
    }

    #[test]
    fn closure_examples() {
        let s = fig1();
        let cl = s.closure_of(&["x", "y"]).unwrap().unwrap();
        assert_eq!(s.names(&cl), labels(&["x", "y"]));
        let s3 = fig3();
        let cl = s3.closure_of(&["x", "z"]).unwrap().unwrap();
        assert_eq!(cl, s3.ground().full());
        let ab = sys(&["a", "b"], &[&["a"], &["b"]]);
        assert_eq!(ab.closure_of(&["a", "b"]).unwrap(), None);
        // cl(∅) is the intersection of all members
        assert_eq!(
            ab.closure(&ab.ground().empty_set()),
            Some(ab.ground().empty_set())
        );
    }

    #[test]
    fn overlap_examples() {
        let g = GroundSet::new(["x", "y", "z"]).unwrap();
        let s = |l: &[&str]| g.subset(l).unwrap();
        assert!(overlaps(&s(&["x", "y"]), &s(&["y", "z"])));
        assert!(!overlaps(&s(&["x", "y"]), &s(&["x", "y", "z"])));
        assert!(!overlaps(&s(&["x"]), &s(&["y"])));
    }

    #[test]
    fn ks_and_k1() {
        assert!(fig2().check_ks().holds);
        assert!(fig3().check_ks().holds);
        let r = sys(&["a", "b"], &[&["a", "b"]]).check_ks();
        assert!(!r.holds);
        assert_eq!(set_witness(&r), labels(&["a"]));
        assert!(fig1().check_k1().holds);
        assert!(fig3().check_k1().holds);
        assert!(!sys(&["a", "b"], &[&["a"], &["b"]]).check_k1().holds);
    }

    #[test]
    fn kc_examples() {
        assert!(fig2().check_kc(2).unwrap().holds);
        for k in 1..=4 {
            assert!(fig1().check_kc(k).unwrap().holds, "k={k}");
        }
        let s = sys(
            &["w", "x", "y", "z"],
            &[
                &["x"],
                &["y"],
                &["z"],
                &["w"],
                &["x", "y", "w"],
                &["x", "z", "w"],
                &["w", "x", "y", "z"],
            ],
        );
        let r = s.check_kc(2).unwrap();
        assert!(!r.holds);
        assert_eq!(
            r.witness,
            Some(Witness::Closure {
                set: labels(&["w", "x"]),
                closure: Some(labels(&["w", "x"]))
            })
        );
        assert_eq!(s.check_kc(0), Err(Error::InvalidK { k: 0, min: 1 }));
    }

    #[test]
    fn kr_examples() {
        assert!(fig3().check_kr(2).unwrap().holds);
        let pairs = sys(
            &["a", "b", "c", "d"],
            &[
                &["a"],
                &["b"],
                &["c"],
                &["d"],
                &["a", "b"],
                &["a", "c"],
                &["a", "d"],
                &["b", "c"],
                &["b", "d"],
                &["c", "d"],
                &["a", "b", "c", "d"],
            ],
        );
        let r = pairs.check_kr(2).unwrap();
        assert!(!r.holds);
        assert_eq!(set_witness(&r), labels(&["a", "b", "c", "d"]));
        assert!(
            sys(&["a", "b"], &[&["a"], &["a", "b"], &["b"]])
                .check_kr(2)
                .unwrap()
                .holds
        );
    }

    #[test]
    fn closedness() {
        assert!(fig1().is_closed().holds);
        let s = sys(
            &["w", "x", "y", "z"],
            &[
                &["w"],
                &["x"],
                &["y"],
                &["z"],
                &["w", "x", "y"],
                &["x", "y", "z"],
                &["w", "x", "y", "z"],
            ],
        );
        let r = s.is_closed();
        assert_eq!(
            r.witness,
            Some(Witness::Members {
                sets: vec![labels(&["w", "x", "y"]), labels(&["x", "y", "z"])]
            })
        );
        assert!(
            sys(&["a", "b", "c"], &[&["a"], &["b"], &["a", "b"], &["c"]])
                .is_closed()
                .holds
        );
    }

    #[test]
    fn weak_hierarchies() {
        let r = fig3().is_weak_hierarchy();
        assert_eq!(
            r.witness,
            Some(Witness::Members {
                sets: vec![
                    labels(&["w", "x"]),
                    labels(&["w", "y"]),
                    labels(&["x", "y"])
                ]
            })
        );
        assert!(fig1().is_weak_hierarchy().holds);
        assert!(
            sys(&["x", "y"], &[&["x"], &["y"], &["x", "y"]])
                .is_weak_hierarchy()
                .holds
        );
        assert!(!fig3().is_k_weak_hierarchy(2).unwrap().holds);
        assert!(fig3().is_k_weak_hierarchy(3).unwrap().holds);
        let small = sys(&["a", "b", "c"], &[&["a", "b"], &["b", "c"], &["a", "c"]]);
        assert!(small.is_k_weak_hierarchy(3).unwrap().holds);
    }

    #[test]
    fn k_weak_criteria() {
        let r = fig3().k_weak_closure_criterion(2).unwrap();
        assert!(!r.holds);
        assert_eq!(set_witness(&r), labels(&["w", "x", "y"]));
        assert!(fig3().k_weak_closure_criterion(3).unwrap().holds);
        assert!(
            sys(&["a", "b"], &[&["a"]])
                .k_weak_closure_criterion(2)
                .unwrap()
                .holds
        );

        let r = fig3().k_weak_removal_criterion(2).unwrap();
        assert_eq!(set_witness(&r), labels(&["w", "x", "y"]));
        assert!(fig1().k_weak_removal_criterion(2).unwrap().holds);
        assert!(fig3().k_weak_removal_criterion(4).unwrap().holds);
    }

    #[test]
    fn t_systems_and_clustering() {
        assert!(fig3().is_t_system(2).unwrap().holds);
        assert!(fig2().is_t_system(2).unwrap().holds);
        let r = sys(&["a", "b"], &[&["a", "b"]]).is_t_system(2).unwrap();
        assert!(matches!(
            r.witness,
            Some(Witness::Stage {
                stage: Property::Ks,
                ..
            })
        ));
        assert!(fig1().is_clustering_system().holds);
        assert!(fig2().is_clustering_system().holds);
        let r = sys(&["a", "b"], &[&["a"], &["b"]]).is_clustering_system();
        assert!(matches!(
            r.witness,
            Some(Witness::Stage {
                stage: Property::K1,
                ..
            })
        ));
    }
}
