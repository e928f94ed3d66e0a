//! Command-line front end.
//!
//! Exit codes: 0 when every requested check passes, 1 on a check failure,
//! 2 on input errors (malformed files, bad flags, size guard).

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};

use hopfdouble::bimodule::{check_qybe, lambda_matrix, rep_to_bimodule, DoubleRepresentation};
use hopfdouble::double::DrinfeldDouble;
use hopfdouble::format::{
    effective_max_dim, read_json, AlgebraSpecFile, GroupSpecFile, RepSpecFile,
};
use hopfdouble::group::{
    class_calculus, function_hopf, ConjugacyClass, FiniteGroup, GroupDoubleContext,
};
use hopfdouble::hopf::{verify_hopf_axioms, DualPair, HopfAlgebra};
use hopfdouble::report::{self, Envelope};
use hopfdouble::{Error, Result};

#[derive(Parser)]
#[command(
    name = "hopfdouble",
    version,
    about = "Quantum doubles, bicovariant bimodules, differential calculi and Hochschild cohomology for finite-dimensional Hopf algebras, in exact arithmetic"
)]
struct Cli {
    /// Write the JSON report to this path instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Cap on algebra dimension and group order (default 24; the
    /// HOPFDOUBLE_MAX_DIM environment variable overrides the default)
    #[arg(long, global = true)]
    max_dim: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct GroupSource {
    /// Permutation generators in cycle notation, e.g. "(12),(123)"
    #[arg(long)]
    generators: Option<String>,

    /// JSON file with a Cayley table
    #[arg(long)]
    table: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct RepSource {
    #[command(flatten)]
    group: GroupSource,

    /// Conjugacy class index (with a group source); defaults to all classes
    /// where a sweep makes sense
    #[arg(long)]
    class: Option<usize>,

    /// Hopf algebra JSON file (with --rep)
    #[arg(long)]
    algebra: Option<PathBuf>,

    /// Double representation JSON file (with --algebra)
    #[arg(long)]
    rep: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum GroupAction {
    /// Order, labels and conjugacy classes
    Info,
    /// Conjugacy classes only
    Classes,
    /// Conjugacy-class calculi for every class
    Calculi,
    /// Serialize the function Hopf algebra
    ExportHopf,
}

#[derive(Subcommand)]
enum Command {
    /// Check the Hopf axioms of an algebra file, reporting each identity
    VerifyHopf { file: PathBuf },

    /// Build the quantum double and verify its axioms and quasi-triangularity
    Double {
        /// Hopf algebra JSON file
        #[arg(long)]
        algebra: Option<PathBuf>,
        #[command(flatten)]
        group: GroupSource,
    },

    /// Bicovariant bimodule data: f, R, braiding matrix, exact checks
    Bimodule {
        #[command(flatten)]
        source: RepSource,
    },

    /// Quantum Lie algebra search, differential and ideal checks
    Calculi {
        #[command(flatten)]
        source: RepSource,
    },

    /// Hochschild cohomology in degrees 0 and 1 with the cocycle
    /// correspondences
    Cohomology {
        #[command(flatten)]
        source: RepSource,
    },

    /// Group utilities
    Group {
        #[command(flatten)]
        source: GroupSource,
        #[arg(value_enum)]
        action: GroupAction,
    },

    /// Residual table for the deformed-Euclidean five-dimensional
    /// representation
    Eq2 {
        /// Deformation parameter; repeatable. Defaults to 0.3, 0.7, 1.1
        #[arg(long = "z")]
        z: Vec<f64>,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command_echo: Vec<String> = std::env::args().collect();
    let max_dim = effective_max_dim(cli.max_dim);
    match dispatch(&cli.command, command_echo, max_dim) {
        Ok((passed, json)) => {
            if let Some(path) = &cli.out {
                if let Err(e) = std::fs::write(path, &json) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            } else {
                print!("{json}");
            }
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::Parse(_)
        | Error::InvalidGroup(_)
        | Error::Shape(_)
        | Error::LimitExceeded { .. }
        | Error::InvalidInput(_)
        | Error::ParentMismatch(_)
        | Error::DivisionByZero => 2,
        Error::AxiomsFailed(_) | Error::Inconsistent(_) | Error::SingularMatrix => 1,
    }
}

fn dispatch(command: &Command, echo: Vec<String>, max_dim: usize) -> Result<(bool, String)> {
    match command {
        Command::VerifyHopf { file } => cmd_verify_hopf(file, echo, max_dim),
        Command::Double { algebra, group } => cmd_double(algebra.as_deref(), group, echo, max_dim),
        Command::Bimodule { source } => cmd_bimodule(source, echo, max_dim),
        Command::Calculi { source } => cmd_calculi(source, echo, max_dim),
        Command::Cohomology { source } => cmd_cohomology(source, echo, max_dim),
        Command::Group { source, action } => cmd_group(source, *action, echo, max_dim),
        Command::Eq2 { z, tol } => cmd_eq2(z, *tol, echo),
    }
}

fn load_group(source: &GroupSource, max_dim: usize) -> Result<FiniteGroup> {
    match (&source.generators, &source.table) {
        (Some(gens), None) => FiniteGroup::from_generators(gens, max_dim),
        (None, Some(path)) => {
            let file: GroupSpecFile = read_json(path)?;
            file.to_group(max_dim)
        }
        (Some(_), Some(_)) => Err(Error::InvalidInput(
            "give either --generators or --table, not both".into(),
        )),
        (None, None) => Err(Error::InvalidInput(
            "a group source is required: --generators or --table".into(),
        )),
    }
}

fn load_algebra(path: &std::path::Path, max_dim: usize) -> Result<Arc<HopfAlgebra>> {
    let file: AlgebraSpecFile = read_json(path)?;
    if file.dim > max_dim {
        return Err(Error::LimitExceeded {
            dim: file.dim,
            max: max_dim,
        });
    }
    HopfAlgebra::new(file.to_structure()?)
}

enum RepInput {
    Classes {
        ctx: GroupDoubleContext,
        selected: Option<usize>,
    },
    File {
        rep: DoubleRepresentation,
    },
}

fn load_rep_source(source: &RepSource, max_dim: usize) -> Result<RepInput> {
    let has_group = source.group.generators.is_some() || source.group.table.is_some();
    match (&source.algebra, &source.rep) {
        (Some(algebra), Some(rep_path)) => {
            if has_group {
                return Err(Error::InvalidInput(
                    "give either a group source or --algebra/--rep, not both".into(),
                ));
            }
            let hopf = load_algebra(algebra, max_dim)?;
            let pair = DualPair::new(hopf)?;
            let double = Arc::new(DrinfeldDouble::new(pair)?);
            let file: RepSpecFile = read_json(rep_path)?;
            let (rho_f, rho_u) = file.parse_matrices(double.base_dim())?;
            let rep = DoubleRepresentation::new(double, file.n, rho_f, rho_u)?;
            Ok(RepInput::File { rep })
        }
        (None, None) if has_group => {
            let group = load_group(&source.group, max_dim)?;
            let ctx = GroupDoubleContext::new(group)?;
            Ok(RepInput::Classes {
                ctx,
                selected: source.class,
            })
        }
        _ => Err(Error::InvalidInput(
            "representation source: a group (with optional --class) or --algebra together with --rep".into(),
        )),
    }
}

fn cmd_verify_hopf(
    file: &std::path::Path,
    echo: Vec<String>,
    max_dim: usize,
) -> Result<(bool, String)> {
    let spec: AlgebraSpecFile = read_json(file)?;
    if spec.dim > max_dim {
        return Err(Error::LimitExceeded {
            dim: spec.dim,
            max: max_dim,
        });
    }
    let structure = spec.to_structure()?;
    let axioms = verify_hopf_axioms(&structure)?;
    let passed = axioms.all_passed();
    let out = report::VerifyHopfReport {
        dim: structure.dim,
        basis_labels: structure.labels.clone(),
        axioms: report::AxiomReportOut::from_report(&axioms),
    };
    Ok((passed, Envelope::new(echo, passed, out).to_json()))
}

fn cmd_double(
    algebra: Option<&std::path::Path>,
    group: &GroupSource,
    echo: Vec<String>,
    max_dim: usize,
) -> Result<(bool, String)> {
    let hopf = match algebra {
        Some(path) => load_algebra(path, max_dim)?,
        None => {
            let g = load_group(group, max_dim)?;
            function_hopf(&g)?
        }
    };
    let pair = DualPair::new(hopf)?;
    let double = DrinfeldDouble::new(pair)?;
    let (passed, out) = report::double_report(&double)?;
    Ok((passed, Envelope::new(echo, passed, out).to_json()))
}

fn class_out(ctx: &GroupDoubleContext, index: usize, class: &ConjugacyClass) -> report::ClassOut {
    report::ClassOut::new(index, class, ctx.group.labels())
}

fn cmd_bimodule(source: &RepSource, echo: Vec<String>, max_dim: usize) -> Result<(bool, String)> {
    let (rep, class) = match load_rep_source(source, max_dim)? {
        RepInput::File { rep } => (rep, None),
        RepInput::Classes { ctx, selected } => {
            let classes = ctx.classes();
            let index = selected.unwrap_or_else(|| if classes.len() > 1 { 1 } else { 0 });
            let class = classes
                .get(index)
                .ok_or_else(|| Error::InvalidInput(format!("class index {index} out of range")))?;
            let rep = ctx.class_representation(class)?;
            let out = class_out(&ctx, index, class);
            (rep, Some(out))
        }
    };
    let verification = rep.verify();
    let bim = rep_to_bimodule(&rep)?;
    let lambda = lambda_matrix(&bim)?;
    let qybe = check_qybe(&lambda);
    let (f, r) = report::bimodule_strings(&bim);
    let passed = verification.all_passed() && qybe;
    let out = report::BimoduleReport {
        n: rep.n,
        class,
        representation: report::RepReportOut::from_report(&verification),
        f,
        r,
        lambda: report::matrix_strings(&lambda),
        lambda_routes_agree: true,
        qybe,
    };
    Ok((passed, Envelope::new(echo, passed, out).to_json()))
}

fn cmd_calculi(source: &RepSource, echo: Vec<String>, max_dim: usize) -> Result<(bool, String)> {
    let (passed, out) = match load_rep_source(source, max_dim)? {
        RepInput::Classes { ctx, selected } => report::class_calculi_report(&ctx, selected)?,
        RepInput::File { rep } => report::rep_calculi_report(&rep)?,
    };
    Ok((passed, Envelope::new(echo, passed, out).to_json()))
}

fn cmd_cohomology(source: &RepSource, echo: Vec<String>, max_dim: usize) -> Result<(bool, String)> {
    let (rep, class, calc) = match load_rep_source(source, max_dim)? {
        RepInput::File { rep } => (rep, None, None),
        RepInput::Classes { ctx, selected } => {
            let classes = ctx.classes();
            let index = selected.unwrap_or_else(|| if classes.len() > 1 { 1 } else { 0 });
            let class = classes
                .get(index)
                .ok_or_else(|| Error::InvalidInput(format!("class index {index} out of range")))?;
            let result = class_calculus(&ctx, class)?;
            let rep = ctx.class_representation(class)?;
            let out = class_out(&ctx, index, class);
            (rep, Some(out), result.calculus)
        }
    };
    let (passed, out) = report::cohomology_report(&rep, class, calc.as_ref())?;
    Ok((passed, Envelope::new(echo, passed, out).to_json()))
}

fn cmd_group(
    source: &GroupSource,
    action: GroupAction,
    echo: Vec<String>,
    max_dim: usize,
) -> Result<(bool, String)> {
    let group = load_group(source, max_dim)?;
    match action {
        GroupAction::Info | GroupAction::Classes => {
            let classes: Vec<report::ClassOut> = group
                .conjugacy_classes()
                .iter()
                .enumerate()
                .map(|(i, c)| report::ClassOut::new(i, c, group.labels()))
                .collect();
            let out = report::GroupInfoReport {
                order: group.order(),
                labels: group.labels().to_vec(),
                classes,
            };
            Ok((true, Envelope::new(echo, true, out).to_json()))
        }
        GroupAction::Calculi => {
            let ctx = GroupDoubleContext::new(group)?;
            let (passed, out) = report::class_calculi_report(&ctx, None)?;
            Ok((passed, Envelope::new(echo, passed, out).to_json()))
        }
        GroupAction::ExportHopf => {
            let hopf = function_hopf(&group)?;
            let out = AlgebraSpecFile::from_structure(hopf.structure());
            Ok((true, Envelope::new(echo, true, out).to_json()))
        }
    }
}

fn cmd_eq2(zs: &[f64], tol: f64, echo: Vec<String>) -> Result<(bool, String)> {
    let (passed, out) = report::eq2_report(zs, tol)?;
    Ok((passed, Envelope::new(echo, passed, out).to_json()))
}
