//! Acceptance criteria, one printed line each. Exits non-zero when any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use lcadag_core::lca::{
    has_cl, has_klca_property, has_lca_property, has_pcc, has_strict_klca, has_strong_klca,
};
use lcadag_core::report::Witness;
use lcadag_core::set_system::SetSystem;
use lcadag_core::subsets::all_subsets;
use lcadag_core::transit::canonical_of_setsystem;
use lcadag_core::validate::catalog::counterexample_catalog;
use lcadag_core::validate::enumerate::{enumerate_set_systems, Scope};
use lcadag_core::validate::fixtures::{fixture, FixtureName};
use lcadag_core::validate::random::random_set_system;
use lcadag_core::validate::theorems::{cross_validate_all, Bounds, TheoremId};
use lcadag_core::{build_hasse, Dag, Lca};

type Outcome = Result<String, String>;

fn ensure(cond: bool, what: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(
        elapsed < limit,
        format!("took {elapsed:.2?}, limit {limit:?}"),
    )
}

fn labels(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

fn lca_witness(set: &[&str], lca: &[&str]) -> Option<Witness> {
    Some(Witness::Lca {
        set: labels(set),
        lca: labels(lca),
    })
}

fn dag_of(name: FixtureName) -> Result<Dag, String> {
    let f = fixture(name).map_err(|e| e.to_string())?;
    f.dag()
        .cloned()
        .ok_or_else(|| format!("{name} is not a DAG"))
}

fn fig1() -> Outcome {
    let start = Instant::now();
    let d = dag_of(FixtureName::Fig1)?;
    let caption = SetSystem::from_labels(
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
    .map_err(|e| e.to_string())?;
    let sys = d.cluster_system();
    ensure(
        sys == caption && sys.len() == 8,
        "cluster system differs from the 8 caption sets",
    )?;
    let xy = d.vertex_set(&["x", "y"]).map_err(|e| e.to_string())?;
    let lca = d.lca_set(&xy).map_err(|e| e.to_string())?;
    ensure(
        d.vertex_names(&lca) == labels(&["p", "v", "q"]),
        "LCA({x,y}) != {p,v,q}",
    )?;
    let klca = has_klca_property(&d, 2).map_err(|e| e.to_string())?;
    ensure(
        !klca.holds && klca.witness == lca_witness(&["x", "y"], &["p", "v", "q"]),
        "k-lca(2) verdict",
    )?;
    ensure(sys.is_closed().holds, "not closed")?;
    for k in 1..=4 {
        ensure(
            sys.check_kc(k).map_err(|e| e.to_string())?.holds,
            format!("(KC) fails for k={k}"),
        )?;
    }
    ensure(!has_pcc(&d).holds, "(PCC) holds")?;
    within(start.elapsed(), Duration::from_secs(1))?;
    Ok(format!("{:.1?}", start.elapsed()))
}

fn fig2() -> Outcome {
    let start = Instant::now();
    let d = dag_of(FixtureName::Fig2)?;
    let sys = d.cluster_system();
    for k in [2, 3] {
        ensure(
            sys.check_kc(k).map_err(|e| e.to_string())?.holds,
            format!("(KC) fails for k={k}"),
        )?;
    }
    let k2 = has_klca_property(&d, 2).map_err(|e| e.to_string())?;
    ensure(
        !k2.holds && k2.witness == lca_witness(&["x", "y"], &["u1", "u2"]),
        "k-lca(2) witness {x,y}",
    )?;
    let k3 = has_klca_property(&d, 3).map_err(|e| e.to_string())?;
    ensure(
        !k3.holds && k3.witness == lca_witness(&["x", "y", "z"], &["u1", "u2"]),
        "k-lca(3) witness {x,y,z}",
    )?;
    ensure(!has_cl(&d).holds, "(CL) holds")?;
    within(start.elapsed(), Duration::from_secs(1))?;
    Ok(format!("{:.1?}", start.elapsed()))
}

fn fig3() -> Outcome {
    let start = Instant::now();
    let d = dag_of(FixtureName::Fig3)?;
    let err = |e: lcadag_core::Error| e.to_string();
    ensure(
        has_lca_property(&d).map_err(err)?.holds,
        "lca-property fails",
    )?;
    let root = d.vertex("r").map_err(err)?;
    let wxy = d.vertex_set(&["w", "x", "y"]).map_err(err)?;
    ensure(
        d.unique_lca(&wxy).map_err(err)? == Lca::Unique(root),
        "lca({w,x,y}) != r",
    )?;
    for pair in [["w", "x"], ["w", "y"], ["x", "y"]] {
        let lca = d
            .unique_lca(&d.vertex_set(&pair).map_err(err)?)
            .map_err(err)?;
        ensure(
            matches!(lca, Lca::Unique(v) if v != root),
            format!("lca({pair:?}) is r or undefined"),
        )?;
    }
    let sys = d.cluster_system();
    ensure(
        sys.is_t_system(2).map_err(err)?.holds,
        "not a 2-ary T-system",
    )?;
    let weak = sys.is_weak_hierarchy();
    let expected = Witness::Members {
        sets: vec![
            labels(&["w", "x"]),
            labels(&["w", "y"]),
            labels(&["x", "y"]),
        ],
    };
    ensure(
        !weak.holds && weak.witness == Some(expected),
        "weak hierarchy verdict or witness",
    )?;
    ensure(
        has_strict_klca(&d, 2).map_err(err)?.holds,
        "strict 2-lca fails",
    )?;
    ensure(
        !has_strong_klca(&d, 2).map_err(err)?.holds,
        "strong 2-lca holds",
    )?;
    ensure(
        has_strong_klca(&d, 3).map_err(err)?.holds,
        "strong 3-lca fails",
    )?;
    within(start.elapsed(), Duration::from_secs(1))?;
    Ok(format!("{:.1?}", start.elapsed()))
}

fn ex1() -> Outcome {
    let start = Instant::now();
    let f = fixture(FixtureName::Ex1).map_err(|e| e.to_string())?;
    let tf = f.transit().ok_or("EX1 is not a transit function")?;
    let m = tf.check_monotone();
    let ok_witness = matches!(&m.witness, Some(Witness::Monotone { u, w, .. }) if *u == labels(&["a", "c"]) && *w == labels(&["a", "b"]));
    ensure(
        !m.holds && ok_witness,
        "monotone verdict or witness (U={a,c}, W={a,b})",
    )?;
    ensure(tf.check_a_prime().holds, "(a') fails")?;
    let sets = tf.transit_sets().map_err(|e| e.to_string())?;
    let h = build_hasse(&sets).map_err(|e| e.to_string())?;
    let g = h.dag();
    ensure(g.is_network(), "Hasse diagram is not a network")?;
    ensure(
        g.vertices().all(|v| g.in_degree(v) <= 1) && g.edge_count() + 1 == g.len(),
        "Hasse diagram is not a tree",
    )?;
    ensure(
        has_klca_property(g, 2).map_err(|e| e.to_string())?.holds,
        "Hasse diagram fails k-lca(2)",
    )?;
    within(start.elapsed(), Duration::from_secs(1))?;
    Ok(format!("{:.1?}", start.elapsed()))
}

fn harness() -> Outcome {
    let start = Instant::now();
    let bounds = Bounds::default();
    ensure(
        bounds.n == 4 && bounds.max_vertices == 6 && bounds.k_range == (2, 3),
        "default bounds changed",
    )?;
    let reports = cross_validate_all(&bounds).map_err(|e| e.to_string())?;
    let mut dags = 0;
    for r in &reports {
        ensure(
            r.discrepancies.is_empty(),
            format!("{}: {} discrepancies", r.theorem, r.discrepancies.len()),
        )?;
        if r.theorem == TheoremId::Lem2 {
            dags = r.instances_checked;
        }
    }
    let required = [
        "OBS1", "PROP1", "LEM2", "FACT2", "LEM3", "LEM4", "FACT3", "PROP2", "PROP3", "THM1",
        "LEM5", "THM2", "LEM9", "PROP5", "LEM6", "PROP6", "THM3",
    ];
    for id in required {
        ensure(
            reports
                .iter()
                .any(|r| r.theorem.name() == id && r.instances_checked > 0),
            format!("{id} not checked"),
        )?;
    }
    // 1 + 3 + 25 + 543 + 29281 + 3781503 labeled DAGs on 1..=6 vertices.
    ensure(dags >= 3_811_356, format!("only {dags} DAG instances"))?;
    within(start.elapsed(), Duration::from_secs(300))?;
    Ok(format!(
        "{} theorems, {dags} DAGs, {:.1?}",
        reports.len(),
        start.elapsed()
    ))
}

fn closure_suite() -> Outcome {
    let start = Instant::now();
    for seed in 0..1000u64 {
        let n = 3 + (seed % 4) as usize;
        let members = 1 + (seed as usize * 7) % ((1 << n) - 1);
        let sys = random_set_system(seed, n, members, true).map_err(|e| e.to_string())?;
        let subsets: Vec<_> = all_subsets(n).collect();
        let cl: Vec<_> = subsets.iter().map(|a| sys.closure(a)).collect();
        for (a, ca) in subsets.iter().zip(&cl) {
            let ca = ca
                .as_ref()
                .ok_or_else(|| format!("seed {seed}: cl undefined in a clustering system"))?;
            ensure(a.is_subset(ca), format!("seed {seed}: extensivity"))?;
            ensure(
                sys.closure(ca).as_ref() == Some(ca),
                format!("seed {seed}: idempotency"),
            )?;
            for (b, cb) in subsets.iter().zip(&cl) {
                if a.is_subset(b) {
                    ensure(
                        cb.as_ref().is_some_and(|cb| ca.is_subset(cb)),
                        format!("seed {seed}: isotony"),
                    )?;
                }
            }
        }
        for k in [2, 3] {
            let r = canonical_of_setsystem(&sys, k).map_err(|e| format!("seed {seed}: {e}"))?;
            ensure(
                r.check_monotone().holds,
                format!("seed {seed}: canonical k={k} not monotone"),
            )?;
        }
    }
    within(start.elapsed(), Duration::from_secs(30))?;
    Ok(format!("1000 systems, {:.1?}", start.elapsed()))
}

fn oracle() -> Outcome {
    let start = Instant::now();
    let mut systems = 0u64;
    for n in 1..=4 {
        for sys in enumerate_set_systems(n, Scope::All).map_err(|e| e.to_string())? {
            systems += 1;
            for k in 2..=4 {
                let a = sys.is_k_weak_hierarchy(k).map_err(|e| e.to_string())?.holds;
                let b = sys
                    .k_weak_closure_criterion(k)
                    .map_err(|e| e.to_string())?
                    .holds;
                let c = sys
                    .k_weak_removal_criterion(k)
                    .map_err(|e| e.to_string())?
                    .holds;
                ensure(a == b && b == c, format!("{sys:?} k={k}: {a} {b} {c}"))?;
            }
        }
    }
    within(start.elapsed(), Duration::from_secs(120))?;
    Ok(format!("{systems} systems, {:.1?}", start.elapsed()))
}

fn catalog() -> Outcome {
    let cat = counterexample_catalog().map_err(|e| e.to_string())?;
    for (claim, instance) in [
        ("pre-binary =/=> pairwise lca", "FIG1"),
        ("pre-k-ary =/=> k-lca without (PCC)", "FIG2"),
        ("lca =/=> strong 2-lca", "FIG3"),
        ("Hasse has k-lca =/=> R monotone", "EX1"),
    ] {
        ensure(
            cat.iter()
                .any(|e| e.claim == claim && e.instance == instance),
            format!("missing `{claim}` on {instance}"),
        )?;
    }
    Ok(format!("{} separations re-verified", cat.len()))
}

fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

fn cli(args: &[&str]) -> Result<(Vec<u8>, Option<i32>), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_lcadag"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    Ok((out.stdout, out.status.code()))
}

fn determinism() -> Outcome {
    let fig1 = fixture_path("fig1.dag");
    let fig3 = fixture_path("fig3.sets");
    let ex1 = fixture_path("ex1.transit");
    let (fig1, fig3, ex1) = (
        fig1.to_str().unwrap(),
        fig3.to_str().unwrap(),
        ex1.to_str().unwrap(),
    );
    let commands: Vec<Vec<&str>> = vec![
        vec![
            "validate", "--bounds", "n=3,v=5", "--random", "300", "--seed", "7",
        ],
        vec![
            "validate",
            "PROP6",
            "THM3",
            "--bounds",
            "n=4,v=4",
            "--random",
            "200",
            "--random-vertices",
            "9",
        ],
        vec!["check-dag", fig1, "--k", "2"],
        vec!["check-sets", fig3, "--k", "2"],
        vec!["check-transit", ex1],
    ];
    for cmd in &commands {
        let mut first: Option<(Vec<u8>, Option<i32>)> = None;
        for jobs in ["1", "1", "2", "4"] {
            let mut args = cmd.clone();
            args.extend(["--format", "json", "--jobs", jobs]);
            let run = cli(&args)?;
            ensure(
                run.1 == Some(0) || run.1 == Some(1),
                format!("{cmd:?}: exit {:?}", run.1),
            )?;
            match &first {
                None => first = Some(run),
                Some(f) => ensure(
                    *f == run,
                    format!("{cmd:?}: output differs with --jobs {jobs}"),
                )?,
            }
        }
    }
    Ok(format!(
        "{} commands x 4 runs byte-identical",
        commands.len()
    ))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 9] = [
        ("1 FIG1 fixture", fig1),
        ("2 FIG2 fixture", fig2),
        ("3 FIG3 fixture", fig3),
        ("4 EX1 fixture", ex1),
        ("5 theorem harness", harness),
        ("6 closure-operator suite", closure_suite),
        ("7 k-weak oracle equivalence", oracle),
        ("8 counterexample catalog", catalog),
        ("9 determinism", determinism),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let outcome =
            catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".to_string()));
        match outcome {
            Ok(detail) => println!("criterion {name}: PASS ({detail})"),
            Err(reason) => {
                failed += 1;
                println!("criterion {name}: FAIL ({reason})");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
