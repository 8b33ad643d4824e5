//! Argument definitions and command implementations. `run` never exits the
//! process; `main` writes the output and maps the exit code.

use std::path::{Path, PathBuf};

use chromvec_core::coloring::{lift_coloring, vector_coloring, verify_coloring, VectorColoring};
use chromvec_core::graph::{generate, Family};
use chromvec_core::identities::{self, IdentityConfig, SuiteOutcome};
use chromvec_core::params::{
    chromatic_number_capped, closed_form_vector_chromatic, one_homogeneous_check, solve_param, spectral_lower_bound,
    Chromatic,
};
use chromvec_core::quantum::{self, classical_embedding, quantum_sabidussi, verify_quantum_hom, QuantumHomomorphism};
use chromvec_core::sdp::{Form, ParamKind};
use chromvec_core::{Error as CoreError, Graph, SolverConfig, Status};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use crate::corpus::{named_corpus, random_pairs, random_unitary, same_order_pairs};
use crate::formats::{read_certificate, read_coloring, write_certificate, write_coloring, write_edge_list};
use crate::record::{CheckEntry, ColoringEntry, ConfigSnapshot, OneHomEntry, ParameterEntry, QuantumEntry, RunRecord};
use crate::spec::{resolve_graph, GraphDescriptor};
use crate::{Exit, ToolError};

/// Default tolerance for identity checks.
pub const IDENTITY_TOL: f64 = 1e-3;
/// Default tolerance for vector coloring checks.
pub const COLORING_TOL: f64 = 1e-5;

#[derive(Debug, Parser)]
#[command(
    name = "chromvec",
    version,
    about = "Vector and quantum chromatic parameters of graphs"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Relative residual tolerance of the SDP solver.
    #[arg(long, global = true, default_value_t = 1e-7)]
    pub tol: f64,
    /// Duality gap tolerance of the SDP solver.
    #[arg(long, global = true, default_value_t = 1e-5)]
    pub gap_tol: f64,
    #[arg(long, global = true, default_value_t = 50_000)]
    pub max_iter: usize,
    /// Largest graph, including products, handed to the SDP solver.
    #[arg(long, global = true, default_value_t = 110)]
    pub cap: usize,
    /// Largest graph for the exact chromatic number in `param chromatic`.
    #[arg(long, global = true, default_value_t = chromvec_core::params::DEFAULT_CHROMATIC_CAP)]
    pub chromatic_cap: usize,
    /// Tolerance for identity, coloring and certificate checks; each
    /// command has its own default.
    #[arg(long, global = true)]
    pub check_tol: Option<f64>,
    /// Seed for `random:N` graphs and generated pairs.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

impl GlobalArgs {
    pub fn solver(&self) -> SolverConfig {
        SolverConfig {
            tol: self.tol,
            gap_tol: self.gap_tol,
            max_iter: self.max_iter,
            ..SolverConfig::default()
        }
    }

    fn snapshot(&self, check_tol: Option<f64>) -> ConfigSnapshot {
        ConfigSnapshot {
            tol: self.tol,
            gap_tol: self.gap_tol,
            max_iter: self.max_iter,
            cap: self.cap,
            chromatic_cap: self.chromatic_cap,
            seed: self.seed,
            check_tol,
        }
    }

    fn identity_config(&self) -> IdentityConfig {
        IdentityConfig {
            solver: self.solver(),
            tol: self.check_tol.unwrap_or(IDENTITY_TOL),
            max_order: self.cap,
            chromatic_cap: self.cap.max(self.chromatic_cap),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    ThetaBar,
    ChiVec,
    Chromatic,
    Spectral,
    Onehom,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Sabidussi,
    Hedetniemi,
    Products,
    Union,
    Chain,
    Coloring,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SdpParam {
    ThetaBar,
    ChiVec,
}

impl SdpParam {
    fn kind(self) -> ParamKind {
        match self {
            SdpParam::ThetaBar => ParamKind::ThetaBar,
            SdpParam::ChiVec => ParamKind::ChiVec,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormArg {
    Primal,
    Dual,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute one parameter of a graph.
    Param {
        which: Which,
        graph: String,
        /// Which SDP formulation to solve.
        #[arg(long, value_enum, default_value = "dual")]
        form: FormArg,
        /// Search limit for `chromatic`; defaults to the vertex count.
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Check product and union identities, the parameter chain, or a
    /// vector coloring file.
    Verify {
        suite: Suite,
        graph: String,
        /// Second factor for the pair suites.
        other: Option<String>,
        /// Coloring file for the `coloring` suite.
        #[arg(long)]
        coloring: Option<PathBuf>,
    },
    /// Verify a quantum homomorphism certificate.
    Qverify { certificate: PathBuf },
    /// Run every suite on the named corpus and seeded random pairs.
    Report {
        /// Random pairs for the Sabidussi and Hedetniemi suites.
        #[arg(long, default_value_t = 20)]
        pairs: usize,
        /// Random pairs for the multiplicativity and union suites.
        #[arg(long, default_value_t = 10)]
        product_pairs: usize,
    },
    /// Write a graph, coloring or certificate file.
    Generate {
        #[command(subcommand)]
        what: Generate,
    },
}

#[derive(Debug, Subcommand)]
pub enum Generate {
    /// Edge list of a graph spec.
    Graph { spec: String },
    /// Vector coloring extracted from the primal SDP.
    Coloring {
        graph: String,
        #[arg(long, value_enum, default_value = "theta-bar")]
        param: SdpParam,
        /// Lift the extracted coloring to this target.
        #[arg(long)]
        lift: Option<f64>,
    },
    /// Certificate of an optimal classical coloring, optionally tensored up
    /// to dimension `dim` and conjugated by a seeded unitary.
    Qcert {
        graph: String,
        #[arg(long)]
        colors: Option<usize>,
        #[arg(long, default_value_t = 1)]
        dim: usize,
    },
    /// Certificate for the Cartesian product of two graphs built from
    /// certificates of each factor.
    Qsabidussi {
        graph: String,
        other: String,
        #[arg(long, default_value_t = 1)]
        dim: usize,
    },
}

/// Text to write and the exit code; `error` goes to standard error.
#[derive(Debug)]
pub struct Outcome {
    pub output: String,
    pub exit: Exit,
    pub error: Option<String>,
}

pub fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Generate { what } => match generate_file(&cli.global, what) {
            Ok(output) => Outcome {
                output,
                exit: Exit::Success,
                error: None,
            },
            Err(e) => Outcome {
                output: String::new(),
                exit: e.exit(),
                error: Some(e.to_string()),
            },
        },
        command => {
            let record = run_record(&cli.global, command);
            let error = record.error.clone();
            let exit = match record.exit_code {
                0 => Exit::Success,
                1 => Exit::Usage,
                2 => Exit::Solver,
                _ => Exit::Validation,
            };
            match record.to_json() {
                Ok(output) => Outcome { output, exit, error },
                Err(e) => Outcome {
                    output: String::new(),
                    exit: e.exit(),
                    error: Some(e.to_string()),
                },
            }
        }
    }
}

fn command_name(command: &Command) -> String {
    match command {
        Command::Param { which, .. } => format!("param {}", value_name(which)),
        Command::Verify { suite, .. } => format!("verify {}", value_name(suite)),
        Command::Qverify { .. } => "qverify".into(),
        Command::Report { .. } => "report".into(),
        Command::Generate { .. } => "generate".into(),
    }
}

fn value_name(v: &impl ValueEnum) -> String {
    v.to_possible_value()
        .map(|p| p.get_name().to_string())
        .unwrap_or_default()
}

fn default_check_tol(command: &Command) -> Option<f64> {
    match command {
        Command::Verify {
            suite: Suite::Coloring, ..
        } => Some(COLORING_TOL),
        Command::Verify { .. } | Command::Report { .. } => Some(IDENTITY_TOL),
        Command::Qverify { .. } => Some(quantum::DEFAULT_TOL),
        _ => None,
    }
}

fn run_record(global: &GlobalArgs, command: &Command) -> RunRecord {
    let check_tol = global.check_tol.or(default_check_tol(command));
    let mut record = RunRecord::new(command_name(command), global.snapshot(check_tol));
    let result = global
        .solver()
        .validate()
        .map_err(ToolError::from)
        .and_then(|()| match command {
            Command::Param {
                which,
                graph,
                form,
                limit,
            } => param(global, &mut record, *which, graph, *form, *limit),
            Command::Verify {
                suite,
                graph,
                other,
                coloring,
            } => verify(
                global,
                &mut record,
                *suite,
                graph,
                other.as_deref(),
                coloring.as_deref(),
            ),
            Command::Qverify { certificate } => qverify(global, &mut record, certificate),
            Command::Report { pairs, product_pairs } => report(global, &mut record, *pairs, *product_pairs),
            Command::Generate { .. } => unreachable!("generate writes files, not records"),
        });
    if let Err(e) = result {
        if let ToolError::Core(CoreError::Solver { status, partial }) = &e {
            let subject = record.graphs.first().map(|d| d.name.clone()).unwrap_or_default();
            let name = record.command.trim_start_matches("param ").to_string();
            record.parameters.push(ParameterEntry::from_result(
                &subject,
                &name,
                status_name(*status),
                partial,
            ));
        }
        record.exit_code = e.exit() as u8;
        record.error = Some(e.to_string());
    }
    record.finish();
    record
}

fn status_name(s: Status) -> &'static str {
    match s {
        Status::Optimal => "optimal",
        Status::MaxIter => "max-iter",
        Status::InfeasibleSuspected => "infeasible-suspected",
    }
}

fn load(record: &mut RunRecord, spec: &str, seed: u64) -> Result<Graph, ToolError> {
    let (g, d) = resolve_graph(spec, None, seed)?;
    record.graphs.push(d);
    Ok(g)
}

fn check_cap(g: &Graph, cap: usize) -> Result<(), ToolError> {
    if g.order() > cap {
        return Err(CoreError::Capacity {
            what: "vertices for SDP",
            size: g.order(),
            limit: cap,
        }
        .into());
    }
    Ok(())
}

fn param(
    global: &GlobalArgs,
    record: &mut RunRecord,
    which: Which,
    spec: &str,
    form: FormArg,
    limit: Option<usize>,
) -> Result<(), ToolError> {
    let g = load(record, spec, global.seed)?;
    match which {
        Which::ThetaBar | Which::ChiVec => {
            check_cap(&g, global.cap)?;
            let kind = if which == Which::ThetaBar {
                ParamKind::ThetaBar
            } else {
                ParamKind::ChiVec
            };
            let form = if form == FormArg::Primal {
                Form::Primal
            } else {
                Form::Dual
            };
            let r = solve_param(&g, kind, form, &global.solver())?;
            record
                .parameters
                .push(ParameterEntry::from_result(spec, kind.name(), "optimal", &r));
        }
        Which::Chromatic => {
            let limit = limit.unwrap_or(g.order());
            match chromatic_number_capped(&g, limit, global.chromatic_cap)? {
                Chromatic::Exact { number, coloring } => {
                    let mut e = ParameterEntry::exact(spec, "chromatic", number as f64);
                    e.coloring = Some(coloring);
                    record.parameters.push(e);
                }
                Chromatic::ExceedsLimit { limit } => {
                    let mut e = ParameterEntry::bare(spec, "chromatic", "exceeds-limit");
                    e.exceeds_limit = Some(limit);
                    record.parameters.push(e);
                }
            }
        }
        Which::Spectral => {
            record.parameters.push(match spectral_lower_bound(&g) {
                Ok(b) => ParameterEntry {
                    method: Some("spectral".into()),
                    ..ParameterEntry::exact(spec, "spectral-lower-bound", b)
                },
                Err(CoreError::Domain(_)) => ParameterEntry::bare(spec, "spectral-lower-bound", "not-applicable"),
                Err(e) => return Err(e.into()),
            });
            record.parameters.push(match closed_form_vector_chromatic(&g) {
                Ok(r) => ParameterEntry::from_result(spec, "chi-vec", "complete", &r),
                Err(CoreError::Domain(_)) => ParameterEntry::bare(spec, "chi-vec", "not-applicable"),
                Err(e) => return Err(e.into()),
            });
        }
        Which::Onehom => record.onehom.push(OneHomEntry::new(spec, &one_homogeneous_check(&g))),
    }
    Ok(())
}

fn suite_subject(g: &str, h: &str) -> String {
    format!("{g}, {h}")
}

fn verify(
    global: &GlobalArgs,
    record: &mut RunRecord,
    suite: Suite,
    spec: &str,
    other: Option<&str>,
    coloring: Option<&Path>,
) -> Result<(), ToolError> {
    let g = load(record, spec, global.seed)?;
    let needs_pair = matches!(
        suite,
        Suite::Sabidussi | Suite::Hedetniemi | Suite::Products | Suite::Union
    );
    match (needs_pair, other) {
        (true, None) => {
            return Err(ToolError::Usage(format!(
                "suite `{}` needs two graphs",
                value_name(&suite)
            )))
        }
        (false, Some(h)) => {
            return Err(ToolError::Usage(format!(
                "suite `{}` takes one graph, got extra `{h}`",
                value_name(&suite)
            )))
        }
        _ => {}
    }
    if suite != Suite::Coloring && coloring.is_some() {
        return Err(ToolError::Usage(
            "--coloring only applies to the `coloring` suite".into(),
        ));
    }
    let cfg = global.identity_config();
    let outcome = match suite {
        Suite::Chain => {
            check_cap(&g, global.cap)?;
            identities::chain(&g, &cfg)?
        }
        Suite::Coloring => {
            let path = coloring.ok_or_else(|| ToolError::Usage("the `coloring` suite needs --coloring FILE".into()))?;
            let text = std::fs::read_to_string(path).map_err(|e| ToolError::io(path, e))?;
            let c = read_coloring(&text)?;
            let tol = record.config.check_tol.unwrap_or(COLORING_TOL);
            record.coloring = Some(coloring_entry(&verify_coloring(&g, &c, tol)?, &c));
            return Ok(());
        }
        _ => {
            let h_spec = other.expect("pair suites have a second graph");
            // A second `random:N` uses the next seed so the factors differ.
            let h = load(record, h_spec, global.seed.wrapping_add(1))?;
            match suite {
                Suite::Sabidussi => identities::sabidussi(&g, &h, &cfg)?,
                Suite::Hedetniemi => identities::hedetniemi(&g, &h, &cfg)?,
                Suite::Products => identities::multiplicativity(&g, &h, &cfg)?,
                _ => identities::union_bound(&g, &h, &cfg)?,
            }
        }
    };
    let subject = match other {
        Some(h) => suite_subject(spec, h),
        None => spec.to_string(),
    };
    record.add_suite(&subject, &outcome);
    Ok(())
}

fn coloring_entry(r: &chromvec_core::coloring::ColoringReport, c: &VectorColoring) -> ColoringEntry {
    ColoringEntry {
        k: c.k(),
        strict: c.is_strict(),
        dim: c.dim(),
        pass: r.pass,
        worst_residual: r.worst_residual,
        norm_residual: r.norm_residual,
        tolerance: r.tolerance,
        worst_edge: r.worst_edge.map(|(u, v)| [u, v]),
    }
}

fn qverify(global: &GlobalArgs, record: &mut RunRecord, path: &Path) -> Result<(), ToolError> {
    let bytes = std::fs::read(path).map_err(|e| ToolError::io(path, e))?;
    let text = String::from_utf8(bytes.clone())
        .map_err(|_| ToolError::Validation(format!("{}: not UTF-8 text", path.display())))?;
    let q = read_certificate(&text, path.parent(), global.seed)?;
    record.graphs.push(GraphDescriptor {
        sha256: Some(hex::encode(Sha256::digest(&bytes))),
        ..GraphDescriptor::of(path.display().to_string(), q.source())
    });
    record.graphs.push(GraphDescriptor::of("target", q.target()));
    let tol = record.config.check_tol.unwrap_or(quantum::DEFAULT_TOL);
    let report = verify_quantum_hom(&q, tol);
    record.quantum = Some(QuantumEntry::new(q.d(), q.target().order(), &report, tol));
    Ok(())
}

/// The named pairs that accompany the random ones in `report`.
pub fn named_pairs() -> Vec<(Graph, Graph)> {
    let g = |f, n| generate(f, n).expect("small named graphs");
    vec![
        (g(Family::Cycle, 5), g(Family::Complete, 3)),
        (g(Family::Petersen, 10), g(Family::Cycle, 5)),
    ]
}

fn label(g: &Graph) -> String {
    g.label().unwrap_or("unnamed").to_string()
}

fn report(global: &GlobalArgs, record: &mut RunRecord, pairs: usize, product_pairs: usize) -> Result<(), ToolError> {
    let cfg = global.identity_config();
    let corpus = named_corpus(global.seed);
    for g in &corpus {
        record.graphs.push(GraphDescriptor::of(label(g), g));
        record
            .onehom
            .push(OneHomEntry::new(&label(g), &one_homogeneous_check(g)));
        let outcome: SuiteOutcome = identities::chain(g, &cfg)?;
        record.add_suite(&label(g), &outcome);
    }
    let mut pair_list = random_pairs(global.seed, pairs, 3, 8);
    pair_list.extend(named_pairs());
    for (g, h) in &pair_list {
        let subject = suite_subject(&label(g), &label(h));
        record.add_suite(&subject, &identities::sabidussi(g, h, &cfg)?);
        record.add_suite(&subject, &identities::hedetniemi(g, h, &cfg)?);
    }
    for (g, h) in random_pairs(global.seed.wrapping_add(1), product_pairs, 3, 6) {
        record.add_suite(
            &suite_subject(&label(&g), &label(&h)),
            &identities::multiplicativity(&g, &h, &cfg)?,
        );
    }
    for (g, h) in same_order_pairs(global.seed.wrapping_add(2), product_pairs, 3, 8) {
        record.add_suite(
            &suite_subject(&label(&g), &label(&h)),
            &identities::union_bound(&g, &h, &cfg)?,
        );
    }
    let gap_limit = 2.0 * global.gap_tol;
    let worst = record.parameters.iter().filter_map(|p| p.gap).fold(0.0_f64, f64::max);
    record.checks.push(CheckEntry {
        name: "max SDP gap <= 2 gap-tol".into(),
        relation: "at-most".into(),
        lhs: worst,
        rhs: gap_limit,
        residual: (worst - gap_limit).max(0.0),
        tolerance: 0.0,
        pass: worst <= gap_limit,
        subject: None,
    });
    Ok(())
}

/// Optimal classical coloring with `colors` colors as a certificate of
/// dimension `dim`; `rng` supplies the conjugating unitary.
pub fn classical_certificate(
    g: &Graph,
    colors: Option<usize>,
    dim: usize,
    chromatic_cap: usize,
    rng: &mut ChaCha8Rng,
) -> Result<QuantumHomomorphism, ToolError> {
    if dim == 0 {
        return Err(ToolError::Usage("--dim must be positive".into()));
    }
    let (chi, coloring) = match chromatic_number_capped(g, g.order(), chromatic_cap)? {
        Chromatic::Exact { number, coloring } => (number, coloring),
        Chromatic::ExceedsLimit { .. } => unreachable!("χ never exceeds the vertex count"),
    };
    let n = colors.unwrap_or(chi.max(1));
    if n < chi {
        return Err(ToolError::Usage(format!("graph needs {chi} colors, {n} requested")));
    }
    let q = classical_embedding(g, &generate(Family::Complete, n)?, &coloring)?;
    if dim == 1 {
        return Ok(q);
    }
    Ok(q.tensor_identity(dim).conjugate(&random_unitary(dim, rng))?)
}

fn generate_file(global: &GlobalArgs, what: &Generate) -> Result<String, ToolError> {
    match what {
        Generate::Graph { spec } => Ok(write_edge_list(&resolve_graph(spec, None, global.seed)?.0)),
        Generate::Coloring { graph, param, lift } => {
            let g = resolve_graph(graph, None, global.seed)?.0;
            check_cap(&g, global.cap)?;
            let mut c = vector_coloring(&g, param.kind(), &global.solver())?;
            if let Some(k) = lift {
                c = lift_coloring(&c, *k)?;
            }
            Ok(write_coloring(&c))
        }
        Generate::Qcert { graph, colors, dim } => {
            let g = resolve_graph(graph, None, global.seed)?.0;
            let mut rng = ChaCha8Rng::seed_from_u64(global.seed);
            Ok(write_certificate(&classical_certificate(
                &g,
                *colors,
                *dim,
                global.chromatic_cap,
                &mut rng,
            )?))
        }
        Generate::Qsabidussi { graph, other, dim } => {
            let g = resolve_graph(graph, None, global.seed)?.0;
            let h = resolve_graph(other, None, global.seed.wrapping_add(1))?.0;
            let colors = |x: &Graph| match chromatic_number_capped(x, x.order(), global.chromatic_cap) {
                Ok(c) => Ok(c.number().unwrap_or(1)),
                Err(e) => Err(ToolError::from(e)),
            };
            let n = colors(&g)?.max(colors(&h)?);
            let mut rng = ChaCha8Rng::seed_from_u64(global.seed);
            let q1 = classical_certificate(&g, Some(n), *dim, global.chromatic_cap, &mut rng)?;
            let q2 = classical_certificate(&h, Some(n), *dim, global.chromatic_cap, &mut rng)?;
            Ok(write_certificate(&quantum_sabidussi(&q1, &q2)?))
        }
    }
}
