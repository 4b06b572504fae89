use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use specbound::bounds::{
    eigen_bound_report, sv_bound_report, sv_degenerate_report, BlockHermitian,
};
use specbound::certifier::certify;
use specbound::eigensolvers::lanczos_demo;
use specbound::fuzz::{run_fuzz, FuzzConfig};
use specbound::io::generate::{generate, Ensemble, GeneratorSpec};
use specbound::io::matrix_market::{read_matrix_market, write_hermitian};
use specbound::io::report::{MatrixDescriptor, Metadata, ReportBody, ReportDocument};
use specbound::linalg::DenseMatrix;

#[derive(Parser, Debug)]
#[command(
    name = "specbound",
    version,
    about = "Perturbation bounds for block Hermitian matrices"
)]
struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, env = "SPECBOUND_SEED", default_value_t = 0)]
    seed: u64,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,

    /// Leave the generation time out of JSON output.
    #[arg(long, global = true)]
    no_timestamp: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Eigenvalue bounds for the partition whose leading block has size SPLIT.
    Bound {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        split: usize,
        /// Also eigensolve the full matrix and report true differences.
        #[arg(long)]
        oracle: bool,
    },
    /// Singular value bounds for B = [[G1, E1], [E2, G2]], G1 of size ROW_SPLIT x COL_SPLIT.
    ///
    /// A split that leaves one side empty falls back to the one-sided bound.
    Svbound {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        row_split: usize,
        #[arg(long)]
        col_split: usize,
        #[arg(long)]
        oracle: bool,
    },
    /// Checks the bounds on seeded random instances; exits 1 on any violation.
    Fuzz {
        #[arg(long, default_value_t = 10_000)]
        trials: usize,
        #[arg(long, default_value_t = 12)]
        max_dim: usize,
    },
    /// Certifies the Ritz values of the subspace spanned by the columns of SUBSPACE.
    Certify {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        subspace: PathBuf,
        #[arg(long)]
        oracle: bool,
    },
    /// Lanczos on a seeded test matrix followed by certification.
    LanczosDemo {
        #[arg(long, default_value_t = 100)]
        dim: usize,
        #[arg(long, default_value_t = 15)]
        steps: usize,
        /// Number of extreme Ritz pairs to certify; all of them by default.
        #[arg(long)]
        select: Option<usize>,
    },
    /// Writes a generated block Hermitian matrix in Matrix Market format.
    Generate {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = EnsembleArg::GaussianHermitian)]
        ensemble: EnsembleArg,
        #[arg(long, default_value_t = 1.0)]
        gap: f64,
        #[arg(long, default_value_t = 0.1)]
        coupling: f64,
        #[arg(long)]
        output: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum EnsembleArg {
    GaussianHermitian,
    ClusteredSpectrum,
    SharedEigenvalue,
}

impl From<EnsembleArg> for Ensemble {
    fn from(e: EnsembleArg) -> Self {
        match e {
            EnsembleArg::GaussianHermitian => Ensemble::GaussianHermitian,
            EnsembleArg::ClusteredSpectrum => Ensemble::ClusteredSpectrum,
            EnsembleArg::SharedEigenvalue => Ensemble::SharedEigenvalue,
        }
    }
}

fn describe(role: &str, m: &DenseMatrix, path: &Path) -> MatrixDescriptor {
    MatrixDescriptor {
        role: role.into(),
        rows: m.rows(),
        cols: m.cols(),
        source: path.display().to_string(),
    }
}

/// Output plus whether a bound violation was found.
struct Outcome {
    doc: Option<ReportDocument>,
    violated: bool,
}

fn run(cli: &Cli) -> specbound::Result<Outcome> {
    let meta = |name: &str, seed: Option<u64>| {
        let m = Metadata::new(name, seed);
        if cli.no_timestamp {
            m
        } else {
            m.stamped()
        }
    };
    let doc = match &cli.command {
        Command::Bound {
            matrix,
            split,
            oracle,
        } => {
            let a = read_matrix_market(matrix)?.into_hermitian()?;
            let desc = describe("A", a.as_matrix(), matrix);
            let p = BlockHermitian::split(&a, *split)?;
            let report = eigen_bound_report(&p, *oracle)?;
            ReportDocument::new(meta("bound", None), vec![desc], ReportBody::Bound(report))
        }
        Command::Svbound {
            matrix,
            row_split,
            col_split,
            oracle,
        } => {
            let b = read_matrix_market(matrix)?.into_dense();
            let desc = describe("B", &b, matrix);
            let (p, q) = b.shape();
            if *row_split > p || *col_split > q {
                return Err(specbound::Error::Shape(format!(
                    "split ({row_split}, {col_split}) outside a {p}x{q} matrix"
                )));
            }
            let (m, k) = (*row_split, *col_split);
            let g1 = b.block(0, 0, m, k)?;
            let e1 = b.block(0, k, m, q - k)?;
            let e2 = b.block(m, 0, p - m, k)?;
            let g2 = b.block(m, k, p - m, q - k)?;
            let body = if m == p && k < q {
                ReportBody::OneSided {
                    rows: sv_degenerate_report(&g1, &e1, *oracle)?,
                }
            } else {
                ReportBody::Singular(sv_bound_report(&g1, &e1, &e2, &g2, *oracle)?)
            };
            ReportDocument::new(meta("svbound", None), vec![desc], body)
        }
        Command::Fuzz { trials, max_dim } => {
            let config = FuzzConfig::from_trials(*trials, *max_dim, cli.seed);
            let summary = run_fuzz(&config)?;
            let violated = !summary.passed();
            let doc = ReportDocument::new(
                meta("fuzz", Some(cli.seed)),
                vec![],
                ReportBody::Fuzz { config, summary },
            );
            return Ok(Outcome {
                doc: Some(doc),
                violated,
            });
        }
        Command::Certify {
            matrix,
            subspace,
            oracle,
        } => {
            let a = read_matrix_market(matrix)?.into_hermitian()?;
            let x1 = read_matrix_market(subspace)?.into_dense();
            let descs = vec![
                describe("A", a.as_matrix(), matrix),
                describe("X1", &x1, subspace),
            ];
            let report = certify(&a, &x1, *oracle)?;
            let violated = !report
                .violations(specbound::tolerance::bound_tolerance(report.norm_a))
                .is_empty();
            let doc = ReportDocument::new(
                meta("certify", None),
                descs,
                ReportBody::Certification(report),
            );
            return Ok(Outcome {
                doc: Some(doc),
                violated,
            });
        }
        Command::LanczosDemo { dim, steps, select } => {
            let demo = lanczos_demo(*dim, *steps, *select, cli.seed)?;
            let desc = MatrixDescriptor {
                role: "A".into(),
                rows: *dim,
                cols: *dim,
                source: format!("demo_matrix(dim = {dim}, seed = {})", cli.seed),
            };
            ReportDocument::new(
                meta("lanczos-demo", Some(cli.seed)),
                vec![desc],
                ReportBody::LanczosDemo(demo),
            )
        }
        Command::Generate {
            m,
            n,
            ensemble,
            gap,
            coupling,
            output,
        } => {
            let p = generate(&GeneratorSpec {
                m: *m,
                n: *n,
                gap_target: *gap,
                coupling_scale: *coupling,
                seed: cli.seed,
                ensemble: (*ensemble).into(),
            })?;
            write_hermitian(output, &p.assemble())?;
            return Ok(Outcome {
                doc: None,
                violated: false,
            });
        }
    };
    Ok(Outcome {
        doc: Some(doc),
        violated: false,
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if let Some(doc) = outcome.doc {
        let text = match cli.format {
            Format::Table => Ok(doc.to_text()),
            Format::Csv => doc.to_csv(),
            Format::Json => doc.to_json().map(|s| s + "\n"),
        };
        match text {
            Ok(t) => print!("{t}"),
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
        }
    }
    if outcome.violated {
        eprintln!("bound violation detected");
        return ExitCode::from(1);
    }
    ExitCode::SUCCESS
}
