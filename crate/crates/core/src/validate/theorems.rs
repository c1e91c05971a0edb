//! Executable statements checked over enumerated and sampled instances.
//!
//! Every theorem is a row of [`REGISTRY`]: a list of clauses, each pairing a
//! left and a right predicate with a direction. A clause with `given` is
//! only evaluated on instances satisfying it. Predicates share a per-instance
//! memo, so running many theorems in one pass evaluates each checker once.

use std::cell::OnceCell;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bitset::LeafSet;
use crate::dag::{Dag, Lca};
use crate::error::{Error, Result};
use crate::hasse::{build_hasse, hasse_is_network};
use crate::lca::{
    has_cl, has_klca_property, has_lca_property, has_pcc, has_strict_klca, has_strong_klca,
    has_strong_klca_literal,
};
use crate::set_system::{guard, SetSystem};
use crate::subsets::all_subsets;
use crate::text::{emit_dag, emit_set_system, emit_transit};
use crate::transit::{canonical_of_setsystem, r_g_of_dag, TransitFunction};
use crate::validate::enumerate::{
    dag_edge_lists, dag_labels, enumerate_set_systems, enumerate_transit_functions, Scope,
    MAX_GROUND, MAX_VERTICES,
};
use crate::validate::random::random_dag;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum TheoremId {
    Obs1,
    Prop1,
    Lem2,
    Fact2,
    Lem3,
    Lem4,
    Fact3,
    Prop2,
    Prop3,
    Thm1,
    Lem5,
    Thm2,
    Lem9,
    Prop5,
    Lem6,
    Prop6,
    Thm3,
    ImplDiagram,
}

impl TheoremId {
    pub const ALL: [TheoremId; 18] = [
        TheoremId::Obs1,
        TheoremId::Prop1,
        TheoremId::Lem2,
        TheoremId::Fact2,
        TheoremId::Lem3,
        TheoremId::Lem4,
        TheoremId::Fact3,
        TheoremId::Prop2,
        TheoremId::Prop3,
        TheoremId::Thm1,
        TheoremId::Lem5,
        TheoremId::Thm2,
        TheoremId::Lem9,
        TheoremId::Prop5,
        TheoremId::Lem6,
        TheoremId::Prop6,
        TheoremId::Thm3,
        TheoremId::ImplDiagram,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TheoremId::Obs1 => "OBS1",
            TheoremId::Prop1 => "PROP1",
            TheoremId::Lem2 => "LEM2",
            TheoremId::Fact2 => "FACT2",
            TheoremId::Lem3 => "LEM3",
            TheoremId::Lem4 => "LEM4",
            TheoremId::Fact3 => "FACT3",
            TheoremId::Prop2 => "PROP2",
            TheoremId::Prop3 => "PROP3",
            TheoremId::Thm1 => "THM1",
            TheoremId::Lem5 => "LEM5",
            TheoremId::Thm2 => "THM2",
            TheoremId::Lem9 => "LEM9",
            TheoremId::Prop5 => "PROP5",
            TheoremId::Lem6 => "LEM6",
            TheoremId::Prop6 => "PROP6",
            TheoremId::Thm3 => "THM3",
            TheoremId::ImplDiagram => "IMPL_DIAGRAM",
        }
    }

    pub fn spec(self) -> &'static TheoremSpec {
        REGISTRY
            .iter()
            .find(|t| t.id == self)
            .expect("every id is registered")
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().replace('-', "_");
        TheoremId::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(&key))
            .ok_or_else(|| Error::UnknownTheorem(s.to_string()))
    }
}

/// Instance bounds. DAGs on 1 to `max_vertices` vertices are enumerated
/// exhaustively; `random_dags` more are sampled with `random_vertices`
/// vertices each.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    pub n: usize,
    pub max_vertices: usize,
    pub k_range: (usize, usize),
    pub random_dags: usize,
    pub random_vertices: usize,
    pub seed: u64,
}

/// Largest `k` accepted in a bound; clauses may look at `k + 1`.
pub const MAX_K: usize = 8;
/// Sampled DAGs checked on top of the exhaustive enumeration by default.
pub const DEFAULT_RANDOM_DAGS: usize = 10_000;
/// Largest vertex count for sampled DAGs.
pub const MAX_RANDOM_VERTICES: usize = 16;

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            n: MAX_GROUND,
            max_vertices: MAX_VERTICES,
            k_range: (2, 3),
            random_dags: DEFAULT_RANDOM_DAGS,
            random_vertices: 12,
            seed: 0,
        }
    }
}

impl Bounds {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::BoundExceeded(msg));
        if !(1..=MAX_GROUND).contains(&self.n) {
            return bad(format!("n = {} outside 1..={MAX_GROUND}", self.n));
        }
        if self.max_vertices > MAX_VERTICES {
            return bad(format!(
                "max_vertices = {} exceeds {MAX_VERTICES}",
                self.max_vertices
            ));
        }
        let (lo, hi) = self.k_range;
        if lo < 2 || lo > hi || hi > MAX_K {
            return bad(format!("k range {lo}..={hi} outside 2..={MAX_K}"));
        }
        if self.random_dags > 0 {
            if !(1..=MAX_RANDOM_VERTICES).contains(&self.random_vertices) {
                return bad(format!(
                    "random_vertices = {} outside 1..={MAX_RANDOM_VERTICES}",
                    self.random_vertices
                ));
            }
            guard(self.random_vertices)?;
        }
        guard(self.max_vertices)
    }

    fn ks(&self) -> std::ops::RangeInclusive<usize> {
        self.k_range.0..=self.k_range.1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Discrepancy {
    /// The instance in its text format.
    pub instance: String,
    pub k: Option<usize>,
    pub clause: String,
    pub left: bool,
    pub right: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub theorem: TheoremId,
    pub bounds: Bounds,
    pub instances_checked: u64,
    pub discrepancies: Vec<Discrepancy>,
    /// Instances where two readings of the same statement disagree.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub form_divergences: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub elapsed_ms: Option<u64>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.discrepancies.is_empty()
    }

    /// Exposes the measured wall time in the serialized form.
    pub fn with_timing(mut self) -> Self {
        self.elapsed_ms = Some(self.elapsed.as_millis() as u64);
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Iff,
    Implies,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Domain {
    ClusteringSystems,
    TransitFunctions,
    Dags,
}

type Pred<C> = fn(&C, usize) -> bool;

pub struct Clause<C: 'static> {
    pub label: &'static str,
    pub direction: Direction,
    /// Whether the predicates depend on `k`.
    pub per_k: bool,
    given: Option<Pred<C>>,
    left: Pred<C>,
    right: Pred<C>,
}

impl<C> Clause<C> {
    const fn new(
        label: &'static str,
        direction: Direction,
        per_k: bool,
        left: Pred<C>,
        right: Pred<C>,
    ) -> Self {
        Clause {
            label,
            direction,
            per_k,
            given: None,
            left,
            right,
        }
    }

    const fn given(mut self, given: Pred<C>) -> Self {
        self.given = Some(given);
        self
    }

    /// `Some((left, right))` when the clause is violated.
    fn violation(&self, ctx: &C, k: usize) -> Option<(bool, bool)> {
        if self.given.is_some_and(|g| !g(ctx, k)) {
            return None;
        }
        let left = (self.left)(ctx, k);
        if self.direction == Direction::Implies && !left {
            return None;
        }
        let right = (self.right)(ctx, k);
        let broken = match self.direction {
            Direction::Iff => left != right,
            Direction::Implies => !right,
        };
        broken.then_some((left, right))
    }
}

pub struct TheoremSpec {
    pub id: TheoremId,
    pub statement: &'static str,
    pub sets: &'static [Clause<SetCtx>],
    pub transit: &'static [Clause<TransitCtx>],
    pub dags: &'static [Clause<DagCtx>],
    /// Clause whose violations are counted as form divergences.
    pub divergence: Option<&'static Clause<DagCtx>>,
}

impl TheoremSpec {
    pub fn domains(&self) -> Vec<Domain> {
        let mut out = Vec::new();
        if !self.sets.is_empty() {
            out.push(Domain::ClusteringSystems);
        }
        if !self.transit.is_empty() {
            out.push(Domain::TransitFunctions);
        }
        if !self.dags.is_empty() {
            out.push(Domain::Dags);
        }
        out
    }

    /// `(domain, label, direction)` of every clause.
    pub fn clauses(&self) -> Vec<(Domain, &'static str, Direction)> {
        let mut out: Vec<_> = self
            .sets
            .iter()
            .map(|c| (Domain::ClusteringSystems, c.label, c.direction))
            .collect();
        out.extend(
            self.transit
                .iter()
                .map(|c| (Domain::TransitFunctions, c.label, c.direction)),
        );
        out.extend(
            self.dags
                .iter()
                .map(|c| (Domain::Dags, c.label, c.direction)),
        );
        out
    }
}

struct PerK<T>([OnceCell<T>; MAX_K + 2]);

impl<T> PerK<T> {
    fn new() -> Self {
        PerK(std::array::from_fn(|_| OnceCell::new()))
    }

    fn get(&self, k: usize, f: impl FnOnce() -> T) -> &T {
        self.0[k].get_or_init(f)
    }
}

fn holds(r: Result<crate::report::PropertyReport>) -> bool {
    r.expect("bounds are validated before evaluation").holds
}

/// A clustering system with memoized predicates.
pub struct SetCtx {
    sys: SetSystem,
    kweak: PerK<bool>,
    closure: PerK<bool>,
    removal: PerK<bool>,
    kc: PerK<bool>,
    kr: PerK<bool>,
    closed: OnceCell<bool>,
    weak: OnceCell<bool>,
    hasse: OnceCell<Dag>,
}

impl SetCtx {
    fn new(sys: SetSystem) -> Self {
        SetCtx {
            sys,
            kweak: PerK::new(),
            closure: PerK::new(),
            removal: PerK::new(),
            kc: PerK::new(),
            kr: PerK::new(),
            closed: OnceCell::new(),
            weak: OnceCell::new(),
            hasse: OnceCell::new(),
        }
    }

    fn kweak(&self, k: usize) -> bool {
        *self.kweak.get(k, || holds(self.sys.is_k_weak_hierarchy(k)))
    }
    fn closure(&self, k: usize) -> bool {
        *self
            .closure
            .get(k, || holds(self.sys.k_weak_closure_criterion(k)))
    }
    fn removal(&self, k: usize) -> bool {
        *self
            .removal
            .get(k, || holds(self.sys.k_weak_removal_criterion(k)))
    }
    fn kc(&self, k: usize) -> bool {
        *self.kc.get(k, || holds(self.sys.check_kc(k)))
    }
    fn kr(&self, k: usize) -> bool {
        *self.kr.get(k, || holds(self.sys.check_kr(k)))
    }
    fn closed(&self) -> bool {
        *self.closed.get_or_init(|| self.sys.is_closed().holds)
    }
    fn weak(&self) -> bool {
        *self.weak.get_or_init(|| self.sys.is_weak_hierarchy().holds)
    }
    fn hasse(&self) -> &Dag {
        self.hasse.get_or_init(|| {
            build_hasse(&self.sys)
                .expect("clustering systems are non-empty")
                .into_dag()
        })
    }
}

/// A transit function with memoized predicates.
pub struct TransitCtx {
    tf: TransitFunction,
    monotone: OnceCell<bool>,
    a_prime: OnceCell<bool>,
    sets: OnceCell<SetSystem>,
    hasse: OnceCell<Dag>,
    hasse_klca: OnceCell<bool>,
}

impl TransitCtx {
    fn new(tf: TransitFunction) -> Self {
        TransitCtx {
            tf,
            monotone: OnceCell::new(),
            a_prime: OnceCell::new(),
            sets: OnceCell::new(),
            hasse: OnceCell::new(),
            hasse_klca: OnceCell::new(),
        }
    }

    fn monotone(&self) -> bool {
        *self.monotone.get_or_init(|| self.tf.check_monotone().holds)
    }
    fn a_prime(&self) -> bool {
        *self.a_prime.get_or_init(|| self.tf.check_a_prime().holds)
    }
    fn sets(&self) -> &SetSystem {
        self.sets.get_or_init(|| {
            self.tf
                .transit_sets()
                .expect("(t1) makes every transit set non-empty")
        })
    }
    fn hasse(&self) -> &Dag {
        self.hasse.get_or_init(|| {
            build_hasse(self.sets())
                .expect("transit sets are non-empty")
                .into_dag()
        })
    }
    fn hasse_klca(&self) -> bool {
        *self
            .hasse_klca
            .get_or_init(|| holds(has_klca_property(self.hasse(), self.tf.arity())))
    }
}

/// A DAG with memoized predicates.
pub struct DagCtx {
    dag: Dag,
    lca: OnceCell<bool>,
    pcc: OnceCell<bool>,
    cl: OnceCell<bool>,
    klca: PerK<bool>,
    strict: PerK<bool>,
    strong: PerK<bool>,
    strong_literal: PerK<bool>,
    rg: PerK<Option<TransitFunction>>,
    sets: SetCtx,
}

impl DagCtx {
    fn new(dag: Dag) -> Self {
        let sys = dag.cluster_system();
        DagCtx {
            dag,
            lca: OnceCell::new(),
            pcc: OnceCell::new(),
            cl: OnceCell::new(),
            klca: PerK::new(),
            strict: PerK::new(),
            strong: PerK::new(),
            strong_literal: PerK::new(),
            rg: PerK::new(),
            sets: SetCtx::new(sys),
        }
    }

    fn sys(&self) -> &SetSystem {
        &self.sets.sys
    }
    fn lca(&self) -> bool {
        *self.lca.get_or_init(|| holds(has_lca_property(&self.dag)))
    }
    fn pcc(&self) -> bool {
        *self.pcc.get_or_init(|| has_pcc(&self.dag).holds)
    }
    fn cl(&self) -> bool {
        *self.cl.get_or_init(|| has_cl(&self.dag).holds)
    }
    fn klca(&self, k: usize) -> bool {
        *self.klca.get(k, || holds(has_klca_property(&self.dag, k)))
    }
    fn strict(&self, k: usize) -> bool {
        *self.strict.get(k, || holds(has_strict_klca(&self.dag, k)))
    }
    fn strong(&self, k: usize) -> bool {
        *self.strong.get(k, || holds(has_strong_klca(&self.dag, k)))
    }
    fn strong_literal(&self, k: usize) -> bool {
        *self
            .strong_literal
            .get(k, || holds(has_strong_klca_literal(&self.dag, k)))
    }
    fn rg(&self, k: usize) -> Option<&TransitFunction> {
        self.rg.get(k, || r_g_of_dag(&self.dag, k).ok()).as_ref()
    }
    fn tsystem(&self, k: usize) -> bool {
        holds(self.sys().is_t_system(k))
    }

    /// Leaf subsets with a defined lca, paired with it.
    fn defined_lcas(&self) -> impl Iterator<Item = (LeafSet, crate::dag::Vertex)> + '_ {
        all_subsets(self.dag.leaf_count())
            .filter_map(|a| self.dag.lca_of_leaves(&a).vertex().map(|v| (a, v)))
    }
}

fn always<C>(_: &C, _: usize) -> bool {
    true
}

use Direction::{Iff, Implies};

// Set-system predicates.
fn s_kweak(c: &SetCtx, k: usize) -> bool {
    c.kweak(k)
}
fn s_kweak_next(c: &SetCtx, k: usize) -> bool {
    c.kweak(k + 1)
}
fn s_weak(c: &SetCtx, _: usize) -> bool {
    c.weak()
}
fn s_2weak(c: &SetCtx, _: usize) -> bool {
    c.kweak(2)
}
fn s_closure(c: &SetCtx, k: usize) -> bool {
    c.closure(k)
}
fn s_removal(c: &SetCtx, k: usize) -> bool {
    c.removal(k)
}
fn s_kc(c: &SetCtx, k: usize) -> bool {
    c.kc(k)
}
fn s_kc2(c: &SetCtx, _: usize) -> bool {
    c.kc(2)
}
fn s_kr(c: &SetCtx, k: usize) -> bool {
    c.kr(k)
}
fn s_closed(c: &SetCtx, _: usize) -> bool {
    c.closed()
}
fn s_hasse_realizes(c: &SetCtx, k: usize) -> bool {
    let h = c.hasse();
    holds(has_klca_property(h, k)) && h.cluster_system() == c.sys
}

// Transit predicates; `k` is always the arity.
fn t_monotone(c: &TransitCtx, _: usize) -> bool {
    c.monotone()
}
fn t_a_prime(c: &TransitCtx, _: usize) -> bool {
    c.a_prime()
}
fn t_hasse_network(c: &TransitCtx, _: usize) -> bool {
    holds(hasse_is_network(c.sets()))
}
fn t_hasse_klca(c: &TransitCtx, _: usize) -> bool {
    c.hasse_klca()
}
fn t_hasse_identifies(c: &TransitCtx, k: usize) -> bool {
    let h = c.hasse();
    if !c.hasse_klca() {
        return false;
    }
    let ch = h.cluster_system();
    &ch == c.sets() && canonical_of_setsystem(&ch, k).is_ok_and(|r| r == c.tf)
}

// DAG predicates.
fn d_lca(c: &DagCtx, _: usize) -> bool {
    c.lca()
}
fn d_pcc(c: &DagCtx, _: usize) -> bool {
    c.pcc()
}
fn d_cl(c: &DagCtx, _: usize) -> bool {
    c.cl()
}
fn d_klca(c: &DagCtx, k: usize) -> bool {
    c.klca(k)
}
fn d_strict(c: &DagCtx, k: usize) -> bool {
    c.strict(k)
}
fn d_strong(c: &DagCtx, k: usize) -> bool {
    c.strong(k)
}
fn d_strong_literal(c: &DagCtx, k: usize) -> bool {
    c.strong_literal(k)
}
fn d_klca_and_strict(c: &DagCtx, k: usize) -> bool {
    c.klca(k) && c.strict(k)
}
fn d_kc(c: &DagCtx, k: usize) -> bool {
    c.sets.kc(k)
}
fn d_closed(c: &DagCtx, _: usize) -> bool {
    c.sets.closed()
}
fn d_kweak(c: &DagCtx, k: usize) -> bool {
    c.sets.kweak(k)
}
fn d_closure(c: &DagCtx, k: usize) -> bool {
    c.sets.closure(k)
}
fn d_tsystem(c: &DagCtx, k: usize) -> bool {
    c.tsystem(k)
}
fn d_lca_and_kweak(c: &DagCtx, k: usize) -> bool {
    c.lca() && c.sets.kweak(k)
}

fn d_precedence_in_clusters(c: &DagCtx, _: usize) -> bool {
    let d = &c.dag;
    d.vertices().all(|w| {
        d.descendants(w)
            .iter()
            .all(|v| d.clusters()[v].is_subset(d.cluster(w)))
    })
}

fn d_lca_below_covering(c: &DagCtx, _: usize) -> bool {
    let d = &c.dag;
    c.defined_lcas().all(|(a, l)| {
        d.vertices()
            .filter(|&v| a.is_subset(d.cluster(v)))
            .all(|v| d.precedes(l, v))
    })
}

fn d_lca_cluster_is_least(c: &DagCtx, _: usize) -> bool {
    let d = &c.dag;
    c.defined_lcas().all(|(a, l)| {
        let cl = d.cluster(l);
        let containing: Vec<&LeafSet> = d.clusters().iter().filter(|x| a.is_subset(x)).collect();
        let minimal: Vec<&LeafSet> = containing
            .iter()
            .copied()
            .filter(|x| !containing.iter().any(|y| y.is_proper_subset(x)))
            .collect();
        minimal.iter().all(|m| *m == cl)
    })
}

fn d_lca_of_lca_cluster(c: &DagCtx, _: usize) -> bool {
    let d = &c.dag;
    c.defined_lcas()
        .all(|(_, l)| d.lca_of_leaves(d.cluster(l)) == Lca::Unique(l))
}

fn d_lca_cluster_is_closure(c: &DagCtx, _: usize) -> bool {
    let d = &c.dag;
    all_subsets(d.leaf_count()).all(|y| match d.lca_of_leaves(&y).vertex() {
        Some(v) => c.sys().closure(&y).as_ref() == Some(d.cluster(v)),
        None => false,
    })
}

fn d_rg_monotone(c: &DagCtx, k: usize) -> bool {
    c.rg(k)
        .is_some_and(|r| r.check_t1().holds && r.check_t3().holds && r.check_monotone().holds)
}

fn d_rg_is_canonical(c: &DagCtx, k: usize) -> bool {
    c.rg(k)
        .is_some_and(|r| canonical_of_setsystem(c.sys(), k).is_ok_and(|can| &can == r))
}

fn d_rg_identifies(c: &DagCtx, k: usize) -> bool {
    c.rg(k)
        .is_some_and(|r| r.transit_sets().is_ok_and(|s| &s == c.sys()))
}

fn d_cl_fixes_clusters(c: &DagCtx, _: usize) -> bool {
    let d = &c.dag;
    d.vertices().all(|v| {
        let own = d.cluster(v);
        d.lca_of_leaves(own)
            .vertex()
            .is_some_and(|l| d.cluster(l) == own)
    })
}

pub static REGISTRY: [TheoremSpec; 18] = [
    TheoremSpec {
        id: TheoremId::Obs1,
        statement: "k-weak hierarchy iff every A with |A| > k has z in A with z in cl(A - z)",
        sets: &[Clause::new("k-weak hierarchy <=> removal criterion", Iff, true, s_kweak, s_removal)],
        transit: &[],
        dags: &[],
        divergence: None,
    },
    TheoremSpec {
        id: TheoremId::Prop1,
        statement: "k-weak hierarchy iff every non-empty A has U in A, |U| <= k, with cl(A) = cl(U)",
        sets: &[Clause::new("k-weak hierarchy <=> closure criterion", Iff, true, s_kweak, s_closure)],
        transit: &[],
        dags: &[],
        divergence: None,
    },
    TheoremSpec {
        id: TheoremId::Lem2,
        statement: "v below w implies C(v) within C(w)",
        sets: &[],
        transit: &[],
        dags: &[Clause::new("v <= w => C(v) <= C(w)", Implies, false, always, d_precedence_in_clusters)],
        divergence: None,
    },
    TheoremSpec {
        id: TheoremId::Fact2,
        statement: "when lca(A) is defined it lies below every vertex covering A, its cluster is the least cluster containing A, and it is the lca of its own cluster",
        sets: &[],
        transit: &[],
        dags: &[
            Clause::new("(i) lca(A) <= v whenever A <= C(v)", Implies, false, always, d_lca_below_covering),
            Clause::new("(ii) C(lca(A)) is the unique minimal cluster containing A", Implies, false, always, d_lca_cluster_is_least),
            Clause::new("(iii) lca(C(lca(A))) = lca(A)", Implies, false, always, d_lca_of_lca_cluster),
        ],
        divergence: None,
    },
    TheoremSpec {
        id: TheoremId::Lem3,
        statement: "the Hasse diagram of the transit sets is a network iff (a') holds",
        sets: &[],
        transit: &[Clause::new("Hasse(C_R) network <=> (a')", Iff, true, t_hasse_network, t_a_prime)],
        dags: &[],
        divergence: None,
    },
    TheoremSpec {
        id: TheoremId::Lem4,
        statement: "the lca-property implies a closed cluster system",
        sets: &[],
        transit: &[],
        dags: &[Clause::new("lca => C_G closed", Implies, false, d_lca, d_closed)],
        divergence: None,
    },
    TheoremSpec {
        id: TheoremId::Fact3,
        statement: "with the lca-property, C(lca(Y)) = cl(Y) for every non-empty Y",
        sets: &[],
        transit: &[],
        dags: &[Clause::new("lca => C(lca(Y)) = cl(Y)", Implies, false, d_lca, d_lca_cluster_is_closure)],
        divergence: None,
    },
    TheoremSpec {
        id: TheoremId::Prop2,
        statement: "with the k-lca-property, R_G is a monotone k-ary transit function equal to the canonical one, and C_G is pre-k-ary",
        sets: &[],
        transit: &[],
        dags: &[
            Clause::new("k-lca => R_G satisfies (t1), (t3), (m)", Implies, true, d_klca, d_rg_monotone),
            Clause::new("k-lca => R_G = R_{C_G}", Implies, true, d_klca, d_rg_is_canonical),
            Clause::new("k-lca => (KC)", Implies, true, d_klca, d_kc),
        ],
        divergence: None,
    },
    TheoremSpec {
        id: TheoremId::Prop3,
        statement: "under (PCC), the k-lca-property holds iff C_G is pre-k-ary",
        sets: &[],
        transit: &[],
        dags: &[Clause::new("(PCC) => (k-lca <=> (KC))", Iff, true, d_klca, d_kc).given(d_pcc)],
        divergence: None,
    },
    TheoremSpec {
        id: TheoremId::Thm1,
        statement: "a clustering system is pre-k-ary iff some DAG with the k-lca-property has it as cluster system",
        sets: &[Clause::new("(KC) <=> Hasse(C) has k-lca and C_Hasse = C", Iff, true, s_kc, s_hasse_realizes)],
        transit: &[],
        dags: &[Clause::new("k-lca => C_G pre-k-ary", Implies, true, d_klca, d_kc)],
        divergence: None,
    },
    TheoremSpec {
        id: TheoremId::Lem5,
        statement: "for monotone R the Hasse diagram of the transit sets has the k-lca-property",
        sets: &[],
        transit: &[Clause::new("(m) => Hasse(C_R) has k-lca", Implies, true, t_monotone, t_hasse_klca)],
        dags: &[],
        divergence: None,
    },
    TheoremSpec {
        id: TheoremId::Thm2,
        statement: "R is monotone iff some DAG G with the k-lca-property has C_G = C_R and R_{C_G} = R",
        transit: &[Clause::new(
            "(m) <=> Hasse(C_R) has k-lca, C_Hasse = C_R and R_{C_Hasse} = R",
            Iff,
            true,
            t_monotone,
            t_hasse_identifies,
        )],
        sets: &[],
        dags: &[],
        divergence: None,
    },
    TheoremSpec {
        id: TheoremId::Lem9,
        statement: "under (CL), C(lca(C(v))) = C(v) for every vertex",
        sets: &[],
        transit: &[],
        dags: &[Clause::new("(CL) => C(lca(C(v))) = C(v)", Implies, false, d_cl, d_cl_fixes_clusters)],
        divergence: None,
    },
    TheoremSpec {
        id: TheoremId::Prop5,
        statement: "with the k-lca-property, strict k-lca iff C_G is a k-ary T-system, and then R_G identifies C_G",
        sets: &[],
        transit: &[],
        dags: &[
            Clause::new("k-lca => (strict k-lca <=> T-system)", Iff, true, d_strict, d_tsystem).given(d_klca),
            Clause::new("strict k-lca => C_{R_G} = C_G", Implies, true, d_klca_and_strict, d_rg_identifies),
        ],
        divergence: None,
    },
    TheoremSpec {
        id: TheoremId::Lem6,
        statement: "strong k-lca implies strict k-lca",
        sets: &[],
        transit: &[],
        dags: &[Clause::new("strong k-lca => strict k-lca", Implies, true, d_strong, d_strict)],
        divergence: None,
    },
    TheoremSpec {
        id: TheoremId::Prop6,
        statement: "with the lca-property, strong k-lca iff every non-empty A has U in A, |U| <= k, with cl(A) = cl(U) in C_G",
        sets: &[],
        transit: &[],
        dags: &[Clause::new("lca => (strong k-lca <=> closure criterion)", Iff, true, d_strong, d_closure).given(d_lca)],
        divergence: Some(&PROP6_FORMS),
    },
    TheoremSpec {
        id: TheoremId::Thm3,
        statement: "strong k-lca iff the lca-property holds and C_G is a k-weak hierarchy",
        sets: &[],
        transit: &[],
        dags: &[Clause::new("strong k-lca <=> lca and k-weak C_G", Iff, true, d_strong, d_lca_and_kweak)],
        divergence: None,
    },
    TheoremSpec {
        id: TheoremId::ImplDiagram,
        statement: "the implications between the lca-type properties and the set-system axioms",
        sets: &[
            Clause::new("k-weak => (k+1)-weak", Implies, true, s_kweak, s_kweak_next),
            Clause::new("k-weak => (KR)", Implies, true, s_kweak, s_kr),
            Clause::new("weak hierarchy <=> 2-weak hierarchy", Iff, false, s_weak, s_2weak),
            Clause::new("weak hierarchy => ((KC) for k = 2 <=> closed)", Iff, false, s_kc2, s_closed).given(s_weak),
        ],
        transit: &[],
        dags: &[
            Clause::new("strong k-lca => strict k-lca", Implies, true, d_strong, d_strict),
            Clause::new("strict k-lca => k-lca", Implies, true, d_strict, d_klca),
            Clause::new("strict k-lca => (CL)", Implies, true, d_strict, d_cl),
            Clause::new("lca => k-lca", Implies, true, d_lca, d_klca),
            Clause::new("lca => (CL)", Implies, false, d_lca, d_cl),
            Clause::new("lca => closed", Implies, false, d_lca, d_closed),
            Clause::new("k-lca => (KC)", Implies, true, d_klca, d_kc),
            Clause::new("strong k-lca => k-weak C_G", Implies, true, d_strong, d_kweak),
            Clause::new("strict k-lca => T-system", Implies, true, d_strict, d_tsystem),
        ],
        divergence: None,
    },
];

static PROP6_FORMS: Clause<DagCtx> = Clause::new(
    "strong k-lca with U within A <=> with U anywhere",
    Iff,
    true,
    d_strong,
    d_strong_literal,
);

struct Acc {
    spec: &'static TheoremSpec,
    instances: u64,
    discrepancies: Vec<Discrepancy>,
    divergences: u64,
}

#[derive(Default)]
struct Outcome {
    discrepancies: Vec<(usize, Discrepancy)>,
    divergences: Vec<usize>,
}

/// Output slot, clauses, and the optional form-divergence clause of one theorem.
type Job<C> = (usize, &'static [Clause<C>], Option<&'static Clause<C>>);

fn evaluate<C>(ctx: &C, ks: &[usize], jobs: &[Job<C>], show: fn(&C) -> String) -> Outcome {
    let mut out = Outcome::default();
    let mut shown: Option<String> = None;
    for &(slot, clauses, divergence) in jobs {
        for clause in clauses {
            let ks_here: &[usize] = if clause.per_k { ks } else { &ks[..1] };
            for &k in ks_here {
                if let Some((left, right)) = clause.violation(ctx, k) {
                    let instance = shown.get_or_insert_with(|| show(ctx)).clone();
                    out.discrepancies.push((
                        slot,
                        Discrepancy {
                            instance,
                            k: clause.per_k.then_some(k),
                            clause: clause.label.to_string(),
                            left,
                            right,
                        },
                    ));
                }
            }
        }
        if let Some(d) = divergence {
            out.divergences.extend(
                ks.iter()
                    .filter(|&&k| d.violation(ctx, k).is_some())
                    .map(|_| slot),
            );
        }
    }
    out
}

const CHUNK: usize = 4096;

/// Evaluates `items` in ordered chunks; the merge is independent of the
/// number of worker threads.
fn run_domain<T, C, I>(
    items: I,
    make: impl Fn(T) -> (C, Vec<usize>) + Sync,
    jobs: &[Job<C>],
    show: fn(&C) -> String,
    acc: &mut [Acc],
) where
    I: Iterator<Item = T>,
    T: Send,
{
    if jobs.is_empty() {
        return;
    }
    let mut items = items.peekable();
    while items.peek().is_some() {
        let chunk: Vec<T> = items.by_ref().take(CHUNK).collect();
        let count = chunk.len() as u64;
        let outcomes: Vec<Outcome> = chunk
            .into_par_iter()
            .map(|item| {
                let (ctx, ks) = make(item);
                evaluate(&ctx, &ks, jobs, show)
            })
            .collect();
        for &(slot, _, _) in jobs {
            acc[slot].instances += count;
        }
        for o in outcomes {
            for (slot, d) in o.discrepancies {
                acc[slot].discrepancies.push(d);
            }
            for slot in o.divergences {
                acc[slot].divergences += 1;
            }
        }
    }
}

/// Checks one theorem on every in-scope instance.
pub fn cross_validate(theorem: TheoremId, bounds: &Bounds) -> Result<ValidationReport> {
    Ok(cross_validate_many(&[theorem], bounds)?.remove(0))
}

pub fn cross_validate_all(bounds: &Bounds) -> Result<Vec<ValidationReport>> {
    cross_validate_many(&TheoremId::ALL, bounds)
}

/// Checks several theorems in a single pass over the instances. Reports
/// come back in the order of `theorems`; the elapsed time of each is the
/// time of the whole pass.
pub fn cross_validate_many(
    theorems: &[TheoremId],
    bounds: &Bounds,
) -> Result<Vec<ValidationReport>> {
    bounds.validate()?;
    let start = Instant::now();
    let mut acc: Vec<Acc> = theorems
        .iter()
        .map(|t| Acc {
            spec: t.spec(),
            instances: 0,
            discrepancies: Vec::new(),
            divergences: 0,
        })
        .collect();
    let ks: Vec<usize> = bounds.ks().collect();

    let set_jobs: Vec<_> = acc
        .iter()
        .enumerate()
        .filter(|(_, a)| !a.spec.sets.is_empty())
        .map(|(i, a)| (i, a.spec.sets, None))
        .collect();
    for n in 1..=bounds.n {
        let ks = ks.clone();
        let systems = enumerate_set_systems(n, Scope::Clustering)?;
        run_domain(
            systems,
            |s| (SetCtx::new(s), ks.clone()),
            &set_jobs,
            |c| emit_set_system(&c.sys),
            &mut acc,
        );
    }

    let transit_jobs: Vec<_> = acc
        .iter()
        .enumerate()
        .filter(|(_, a)| !a.spec.transit.is_empty())
        .map(|(i, a)| (i, a.spec.transit, None))
        .collect();
    if !transit_jobs.is_empty() {
        for n in 1..=bounds.n {
            for &k in &ks {
                let functions = enumerate_transit_functions(n, k)?;
                run_domain(
                    functions,
                    |t| (TransitCtx::new(t), vec![k]),
                    &transit_jobs,
                    |c| emit_transit(&c.tf),
                    &mut acc,
                );
            }
        }
    }

    let dag_jobs: Vec<_> = acc
        .iter()
        .enumerate()
        .filter(|(_, a)| !a.spec.dags.is_empty())
        .map(|(i, a)| (i, a.spec.dags, a.spec.divergence))
        .collect();
    if !dag_jobs.is_empty() {
        for m in 1..=bounds.max_vertices {
            let labels = dag_labels(m);
            let make = |edges| {
                let dag =
                    Dag::from_parts(labels.clone(), edges).expect("enumerated graphs are acyclic");
                (DagCtx::new(dag), ks.clone())
            };
            run_domain(
                dag_edge_lists(m)?,
                make,
                &dag_jobs,
                |c| emit_dag(&c.dag),
                &mut acc,
            );
        }
        let make = |i: u64| {
            let seed = bounds.seed.wrapping_add(i);
            let density = 0.15 + 0.7 * (i % 8) as f64 / 7.0;
            let dag =
                random_dag(seed, bounds.random_vertices, density).expect("density within [0, 1]");
            (DagCtx::new(dag), ks.clone())
        };
        run_domain(
            0..bounds.random_dags as u64,
            make,
            &dag_jobs,
            |c| emit_dag(&c.dag),
            &mut acc,
        );
    }

    let elapsed = start.elapsed();
    Ok(acc
        .into_iter()
        .map(|a| ValidationReport {
            theorem: a.spec.id,
            bounds: bounds.clone(),
            instances_checked: a.instances,
            discrepancies: a.discrepancies,
            form_divergences: a.spec.divergence.map(|_| a.divergences),
            elapsed_ms: None,
            elapsed,
        })
        .collect())
}
