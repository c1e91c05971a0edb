use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use lcadag_core::report::{reports_to_json, reports_to_text};
use lcadag_core::text::{
    emit_dag, emit_set_system, emit_transit, parse_dag, parse_set_system, parse_transit, ParseError,
};
use lcadag_core::transit::{canonical_of_setsystem, r_g_of_dag};
use lcadag_core::validate::catalog::{counterexample_catalog, Target};
use lcadag_core::validate::random::{random_dag, random_set_system};
use lcadag_core::validate::theorems::{cross_validate_many, TheoremId, ValidationReport};
use lcadag_core::{
    build_hasse, check_dag, check_sets, check_transit, Property, PropertyReport, SetSystem,
};
use serde_json::json;
use thiserror::Error;

use crate::cli::{Cli, Command, Format, GenKind, PropArgs, ValidateArgs};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: ParseError },
    #[error("{0}")]
    Core(#[from] lcadag_core::Error),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    /// 2 for unusable input or flags, 1 when the requested operation is not
    /// defined on a valid input.
    pub fn exit_code(&self) -> u8 {
        use lcadag_core::Error as E;
        match self {
            CliError::Io { .. } | CliError::Parse { .. } | CliError::Usage(_) => 2,
            CliError::Core(
                E::UnknownProperty(_)
                | E::MissingK(_)
                | E::UnsupportedProperty { .. }
                | E::UnknownTheorem(_)
                | E::BoundExceeded(_)
                | E::InvalidK { .. }
                | E::ElementNotInGround(_)
                | E::EmptyQuery
                | E::LeafSetTooLarge { .. }
                | E::TooManyMembers { .. },
            ) => 2,
            CliError::Core(_) => 1,
        }
    }
}

/// What to print and whether it counts as success.
pub struct Outcome {
    pub text: String,
    pub ok: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, ok: true }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn parsed<T>(path: &Path, r: Result<T, ParseError>) -> Result<T, CliError> {
    r.map_err(|source| CliError::Parse {
        path: path.to_path_buf(),
        source,
    })
}

const DAG_DEFAULTS: [Property; 7] = [
    Property::Network,
    Property::Pcc,
    Property::Cl,
    Property::Lca,
    Property::Klca,
    Property::StrictKlca,
    Property::StrongKlca,
];

const SET_DEFAULTS: [Property; 10] = [
    Property::Ks,
    Property::K1,
    Property::Clustering,
    Property::Closed,
    Property::WeakHier,
    Property::Kc,
    Property::Kr,
    Property::KWeakHier,
    Property::TSystem,
    Property::Identified,
];

const TRANSIT_DEFAULTS: [Property; 6] = [
    Property::T1,
    Property::T3,
    Property::Monotone,
    Property::APrime,
    Property::Network,
    Property::Identified,
];

/// Explicit properties, or the defaults minus k-parameterized ones when no
/// k is given.
fn selected(args: &PropArgs, defaults: &[Property]) -> Vec<Property> {
    if !args.props.is_empty() {
        return args.props.clone();
    }
    defaults
        .iter()
        .copied()
        .filter(|p| args.k.is_some() || !p.takes_k())
        .collect()
}

fn k_for(p: Property, k: Option<usize>) -> Option<usize> {
    if p.takes_k() {
        k
    } else {
        None
    }
}

fn reports(reports: Vec<PropertyReport>, format: Format) -> Outcome {
    let ok = reports.iter().all(|r| r.holds);
    let text = match format {
        Format::Json => reports_to_json(&reports) + "\n",
        Format::Text => reports_to_text(&reports),
    };
    Outcome { text, ok }
}

fn set_system_json(sys: &SetSystem) -> serde_json::Value {
    json!({ "ground": sys.ground().labels(), "members": sys.to_label_sets() })
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let format = cli.format;
    match &cli.command {
        Command::CheckDag { file, props } => {
            let dag = parsed(file, parse_dag(&read(file)?))?;
            let out = selected(props, &DAG_DEFAULTS)
                .into_iter()
                .map(|p| check_dag(&dag, p, k_for(p, props.k)))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(reports(out, format))
        }
        Command::CheckSets { file, props } => {
            let sys = parsed(file, parse_set_system(&read(file)?))?;
            let out = selected(props, &SET_DEFAULTS)
                .into_iter()
                .map(|p| check_sets(&sys, p, k_for(p, props.k)))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(reports(out, format))
        }
        Command::CheckTransit {
            file,
            implicit_t3,
            props,
        } => {
            let tf = parsed(file, parse_transit(&read(file)?, *implicit_t3))?;
            let chosen = if props.is_empty() {
                TRANSIT_DEFAULTS.to_vec()
            } else {
                props.clone()
            };
            let out = chosen
                .into_iter()
                .map(|p| check_transit(&tf, p))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(reports(out, format))
        }
        Command::Clusters { file } => {
            let dag = parsed(file, parse_dag(&read(file)?))?;
            let sys = dag.cluster_system();
            Ok(Outcome::ok(match format {
                Format::Text => emit_set_system(&sys),
                Format::Json => set_system_json(&sys).to_string() + "\n",
            }))
        }
        Command::Closure { file, of } => {
            let sys = parsed(file, parse_set_system(&read(file)?))?;
            let closure = sys.closure_of(of)?;
            Ok(Outcome::ok(match format {
                Format::Text => match &closure {
                    Some(c) => sys.ground().format(c) + "\n",
                    None => "undefined\n".to_string(),
                },
                Format::Json => {
                    json!({ "set": of, "closure": closure.map(|c| sys.names(&c)) }).to_string()
                        + "\n"
                }
            }))
        }
        Command::Canonical { file, k } => {
            let sys = parsed(file, parse_set_system(&read(file)?))?;
            Ok(Outcome::ok(emit_transit(&canonical_of_setsystem(
                &sys, *k,
            )?)))
        }
        Command::Rg { file, k } => {
            let dag = parsed(file, parse_dag(&read(file)?))?;
            Ok(Outcome::ok(emit_transit(&r_g_of_dag(&dag, *k)?)))
        }
        Command::Hasse {
            file,
            transit,
            implicit_t3,
            dot,
        } => {
            let input = read(file)?;
            let sys = if *transit {
                parsed(file, parse_transit(&input, *implicit_t3))?.transit_sets()?
            } else {
                parsed(file, parse_set_system(&input))?
            };
            let h = build_hasse(&sys)?;
            Ok(Outcome::ok(if *dot {
                h.to_dot(&sys)
            } else {
                emit_dag(h.dag())
            }))
        }
        Command::Validate(args) => validate(args, cli.jobs, format),
        Command::Catalog => catalog(format),
        Command::Gen { kind } => Ok(Outcome::ok(match kind {
            GenKind::Dag {
                seed,
                vertices,
                density,
            } => {
                if *vertices == 0 {
                    return Err(CliError::Usage("--vertices must be at least 1".into()));
                }
                emit_dag(&random_dag(*seed, *vertices, *density)?)
            }
            GenKind::Sets {
                seed,
                n,
                members,
                clustering,
            } => {
                if *n == 0 || (*members == 0 && !clustering) {
                    return Err(CliError::Usage(
                        "a set system needs a non-empty ground set and at least one member".into(),
                    ));
                }
                emit_set_system(&random_set_system(*seed, *n, *members, *clustering)?)
            }
        })),
    }
}

fn validate(args: &ValidateArgs, jobs: u16, format: Format) -> Result<Outcome, CliError> {
    let bounds = args.to_bounds();
    let ids: Vec<TheoremId> = if args.theorems.is_empty() {
        TheoremId::ALL.to_vec()
    } else {
        args.theorems.clone()
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(usize::from(jobs))
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start {jobs} worker threads: {e}")))?;
    let mut out = pool.install(|| cross_validate_many(&ids, &bounds))?;
    if args.timing {
        out = out.into_iter().map(ValidationReport::with_timing).collect();
    }
    let ok = out.iter().all(ValidationReport::passed);
    let text = match format {
        Format::Json if out.len() == 1 => {
            serde_json::to_string(&out[0]).expect("reports serialize") + "\n"
        }
        Format::Json => serde_json::to_string(&out).expect("reports serialize") + "\n",
        Format::Text => validation_text(&out),
    };
    Ok(Outcome { text, ok })
}

fn validation_text(reports: &[ValidationReport]) -> String {
    let mut s = String::new();
    for r in reports {
        let verdict = if r.passed() { "PASS" } else { "FAIL" };
        let _ = write!(
            s,
            "{}: {verdict} instances={} discrepancies={}",
            r.theorem,
            r.instances_checked,
            r.discrepancies.len()
        );
        if let Some(d) = r.form_divergences {
            let _ = write!(s, " form_divergences={d}");
        }
        if let Some(ms) = r.elapsed_ms {
            let _ = write!(s, " elapsed_ms={ms}");
        }
        s.push('\n');
        for d in &r.discrepancies {
            let k = d.k.map(|k| format!(" k={k}")).unwrap_or_default();
            let _ = writeln!(s, "  {}{k}: left={} right={}", d.clause, d.left, d.right);
            for line in d.instance.lines() {
                let _ = writeln!(s, "    {line}");
            }
        }
    }
    s
}

fn catalog(format: Format) -> Result<Outcome, CliError> {
    let entries = counterexample_catalog()?;
    let text = match format {
        Format::Json => serde_json::to_string(&entries).expect("catalog serializes") + "\n",
        Format::Text => {
            let mut s = String::new();
            for e in &entries {
                let reqs: Vec<String> = e
                    .requirements
                    .iter()
                    .map(|r| {
                        let k = r.k.map(|k| format!("(k={k})")).unwrap_or_default();
                        let on = if r.target == Target::HasseOfTransitSets {
                            " of Hasse(C_R)"
                        } else {
                            ""
                        };
                        format!(
                            "{}{k}{on} {}",
                            r.property,
                            if r.holds { "holds" } else { "fails" }
                        )
                    })
                    .collect();
                let _ = writeln!(s, "{}: {} [{}]", e.claim, e.instance, reqs.join(", "));
            }
            s
        }
    };
    Ok(Outcome::ok(text))
}
