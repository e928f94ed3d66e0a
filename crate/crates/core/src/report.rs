//! Serializable report structures shared by the CLI and the C bindings.
//!
//! Field order is the serialization order; every collection is emitted in a
//! deterministic order so identical inputs produce identical bytes.

use serde::Serialize;

use crate::bimodule::{BicovariantBimodule, DoubleRepresentation, RepReport};
use crate::calculus::{self, ChiSelection, FirstOrderCalculus};
use crate::double::{DrinfeldDouble, QuasiTriangularReport};
use crate::eq2;
use crate::group::{class_calculus, ConjugacyClass, GroupDoubleContext};
use crate::hochschild::{self, CochainBase, InvGammaBimodule};
use crate::hopf::AxiomReport;
use crate::linalg::Matrix;
use crate::scalar;
use crate::Result;

pub const TOOL: &str = "hopfdouble";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Serialize)]
pub struct Envelope<T: Serialize> {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: Vec<String>,
    pub passed: bool,
    pub report: T,
}

impl<T: Serialize> Envelope<T> {
    pub fn new(command: Vec<String>, passed: bool, report: T) -> Self {
        Envelope {
            tool: TOOL,
            version: VERSION,
            command,
            passed,
            report,
        }
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("reports serialize");
        text.push('\n');
        text
    }
}

/// Pretty-printed JSON with a trailing newline; deterministic for the
/// report types in this module.
pub fn to_json_pretty<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("reports serialize");
    text.push('\n');
    text
}

#[derive(Serialize)]
pub struct CheckOut {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Serialize)]
pub struct AxiomReportOut {
    pub all_passed: bool,
    pub checks: Vec<CheckOut>,
}

impl AxiomReportOut {
    pub fn from_report(r: &AxiomReport) -> Self {
        AxiomReportOut {
            all_passed: r.all_passed(),
            checks: r
                .checks
                .iter()
                .map(|c| CheckOut {
                    name: c.name.to_string(),
                    passed: c.passed,
                    witness: c.witness.as_ref().map(|w| format!("{w:?}")),
                })
                .collect(),
        }
    }
}

#[derive(Serialize)]
pub struct RepReportOut {
    pub all_passed: bool,
    pub checks: Vec<CheckOut>,
}

impl RepReportOut {
    pub fn from_report(r: &RepReport) -> Self {
        RepReportOut {
            all_passed: r.all_passed(),
            checks: r
                .checks
                .iter()
                .map(|c| CheckOut {
                    name: c.name.to_string(),
                    passed: c.passed,
                    witness: c.witness.map(|w| format!("{w:?}")),
                })
                .collect(),
        }
    }
}

#[derive(Serialize)]
pub struct ClassOut {
    pub index: usize,
    pub size: usize,
    pub representative: String,
    pub members: Vec<String>,
}

impl ClassOut {
    pub fn new(index: usize, class: &ConjugacyClass, labels: &[String]) -> Self {
        ClassOut {
            index,
            size: class.size(),
            representative: labels[class.representative].clone(),
            members: class.members.iter().map(|&m| labels[m].clone()).collect(),
        }
    }
}

pub fn matrix_strings(m: &Matrix) -> Vec<Vec<String>> {
    (0..m.nrows())
        .map(|r| {
            (0..m.ncols())
                .map(|c| scalar::format(m.get(r, c)))
                .collect()
        })
        .collect()
}

pub fn coords_strings(coords: &[crate::scalar::Scalar]) -> Vec<String> {
    coords.iter().map(scalar::format).collect()
}

/// f and R rendered as matrices of coordinate vectors.
pub fn element_matrix_strings(rows: &[Vec<crate::hopf::AlgebraElement>]) -> Vec<Vec<Vec<String>>> {
    rows.iter()
        .map(|row| row.iter().map(|e| coords_strings(&e.coords)).collect())
        .collect()
}

#[derive(Serialize)]
pub struct VerifyHopfReport {
    pub dim: usize,
    pub basis_labels: Vec<String>,
    pub axioms: AxiomReportOut,
}

#[derive(Serialize)]
pub struct QuasiTriangularOut {
    pub basis_checked: usize,
    pub intertwiner_failures: Vec<usize>,
    pub twisted_failures: Vec<usize>,
    pub r_inverse_ok: bool,
    pub passed: bool,
}

impl QuasiTriangularOut {
    pub fn from_report(r: &QuasiTriangularReport) -> Self {
        QuasiTriangularOut {
            basis_checked: r.basis_checked,
            intertwiner_failures: r.intertwiner_failures.clone(),
            twisted_failures: r.twisted_failures.clone(),
            r_inverse_ok: r.r_inverse_ok,
            passed: r.passed(),
        }
    }
}

#[derive(Serialize)]
pub struct DoubleReport {
    pub base_dim: usize,
    pub dim: usize,
    pub canonical_terms: usize,
    pub axioms: AxiomReportOut,
    pub quasitriangular: QuasiTriangularOut,
    pub cross_relation_failures: Vec<(usize, usize)>,
}

#[derive(Serialize)]
pub struct BimoduleReport {
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub class: Option<ClassOut>,
    pub representation: RepReportOut,
    pub f: Vec<Vec<Vec<String>>>,
    pub r: Vec<Vec<Vec<String>>>,
    pub lambda: Vec<Vec<String>>,
    pub lambda_routes_agree: bool,
    pub qybe: bool,
}

#[derive(Serialize)]
pub struct CalculusOut {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub class: Option<ClassOut>,
    pub n: usize,
    pub degenerate: bool,
    /// How the tuple was obtained: "class-tuple", "found",
    /// "none-exists" (provably no nonzero tuple), "search-exhausted"
    /// (bounded sweep gave up), or "degenerate-class".
    pub selection: String,
    pub solution_space_dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chi: Option<Vec<Vec<String>>>,
    pub ideal_dim: usize,
    pub ideal_basis: Vec<Vec<String>>,
    pub ideal_ad_star_invariant: bool,
    pub d_unit_is_zero: bool,
    pub leibniz_all_pairs: bool,
    pub left_right_relation: bool,
    pub extended_verified: bool,
    pub extended_lambda_qybe: bool,
    pub cocycle_closed: bool,
    pub cocycle_vanishes_on_dual: bool,
    pub cocycle_is_coboundary: bool,
}

#[derive(Serialize)]
pub struct CalculiReport {
    pub nontrivial_classes: usize,
    pub calculi_found: usize,
    pub calculi: Vec<CalculusOut>,
}

#[derive(Serialize)]
pub struct CohomologyDims {
    pub z0: usize,
    pub z1: usize,
    pub b1: usize,
    pub h1: usize,
}

#[derive(Serialize)]
pub struct CohomologyReportOut {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub class: Option<ClassOut>,
    pub carrier_dim: usize,
    pub function_algebra: CohomologyDims,
    pub double_algebra: CohomologyDims,
    pub invariant_function_cocycles: usize,
    pub vanishing_double_cocycles: usize,
    pub dims_equal: bool,
    pub round_trips_ok: bool,
    pub delta_preserves_invariance: bool,
    pub universal_cocycle_closed: bool,
    pub universal_cocycle_vanishes_on_dual: bool,
    pub universal_projection_on_functions: bool,
    pub universal_differential_ok: bool,
    /// Each found calculus with its coboundary status.
    pub correspondence_table: Vec<CorrespondenceRow>,
}

#[derive(Serialize)]
pub struct CorrespondenceRow {
    pub description: String,
    pub is_cocycle: bool,
    pub is_coboundary: bool,
}

#[derive(Serialize)]
pub struct GroupInfoReport {
    pub order: usize,
    pub labels: Vec<String>,
    pub classes: Vec<ClassOut>,
}

#[derive(Serialize)]
pub struct Eq2Run {
    pub relations: crate::eq2::RelationReport,
    pub block: crate::eq2::BlockReport,
}

#[derive(Serialize)]
pub struct Eq2Report {
    pub tol: f64,
    pub runs: Vec<Eq2Run>,
    pub reference_f: Vec<Vec<String>>,
    pub reference_r: Vec<Vec<String>>,
}

pub fn reference_matrices() -> (Vec<Vec<String>>, Vec<Vec<String>>) {
    let f = crate::eq2::REFERENCE_F_MATRIX
        .iter()
        .map(|row| row.iter().map(|s| s.to_string()).collect())
        .collect();
    let r = crate::eq2::REFERENCE_R_MATRIX
        .iter()
        .map(|row| row.iter().map(|s| s.to_string()).collect())
        .collect();
    (f, r)
}

/// Bimodule payload for a report.
pub fn bimodule_strings(
    bim: &BicovariantBimodule,
) -> (Vec<Vec<Vec<String>>>, Vec<Vec<Vec<String>>>) {
    (
        element_matrix_strings(&bim.f),
        element_matrix_strings(&bim.r),
    )
}

// ---------------------------------------------------------------------------
// report assembly, shared by the CLI and the C bindings
// ---------------------------------------------------------------------------

/// Double report: axioms of the product algebra, quasi-triangularity, and
/// the structure-constant cross-check.
pub fn double_report(double: &DrinfeldDouble) -> Result<(bool, DoubleReport)> {
    let d_hopf = double.as_hopf()?;
    let qt = double.verify_quasitriangular()?;
    let cross = double.verify_cross_relation();
    let passed = d_hopf.axiom_report().all_passed() && qt.passed() && cross.is_empty();
    let out = DoubleReport {
        base_dim: double.base_dim(),
        dim: double.dim(),
        canonical_terms: double.base_dim(),
        axioms: AxiomReportOut::from_report(d_hopf.axiom_report()),
        quasitriangular: QuasiTriangularOut::from_report(&qt),
        cross_relation_failures: cross,
    };
    Ok((passed, out))
}

/// One calculus row; `calc = None` marks the degenerate case.
pub fn calculus_row(
    class: Option<ClassOut>,
    rep: &DoubleRepresentation,
    calc: Option<&FirstOrderCalculus>,
    selection: &str,
    solution_space_dim: usize,
) -> Result<CalculusOut> {
    let pair = &rep.double.pair;
    let f_alg = &pair.algebra;
    let dim = f_alg.dim();
    match calc {
        None => {
            let ideal = calculus::ideal_j(pair, &[]);
            Ok(CalculusOut {
                class,
                n: rep.n,
                degenerate: true,
                selection: selection.to_string(),
                solution_space_dim,
                chi: None,
                ideal_dim: ideal.dim,
                ideal_basis: ideal.basis.iter().map(|v| coords_strings(v)).collect(),
                ideal_ad_star_invariant: ideal.ad_star_invariant,
                d_unit_is_zero: true,
                leibniz_all_pairs: true,
                left_right_relation: true,
                extended_verified: true,
                extended_lambda_qybe: true,
                cocycle_closed: true,
                cocycle_vanishes_on_dual: true,
                cocycle_is_coboundary: true,
            })
        }
        Some(calc) => {
            let d_unit_is_zero = calc.differential(&f_alg.unit_element())?.is_zero();
            let mut leibniz_all_pairs = true;
            for a in 0..dim {
                for b in 0..dim {
                    if !calc.check_leibniz(&f_alg.basis_element(a), &f_alg.basis_element(b))? {
                        leibniz_all_pairs = false;
                    }
                }
            }
            let mut left_right_relation = true;
            for a in 0..dim {
                if !calc.left_right_relation_check(&f_alg.basis_element(a))? {
                    left_right_relation = false;
                }
            }
            let extended_verified = calc.extended.verify().all_passed();
            let (_, extended_lambda_qybe) = calc.extended_lambda()?;
            let ideal = calc.ideal();

            let phi = hochschild::calculus_to_cocycle(calc)?;
            let bim = InvGammaBimodule::new(rep.clone());
            let cocycle_closed = hochschild::coboundary(&bim, &phi)?.is_zero();
            let cocycle_vanishes_on_dual = hochschild::vanishes_on_dual(&phi, &rep.double);
            let cocycle_is_coboundary = hochschild::coboundary_preimage(&bim, &phi)?.is_some();

            Ok(CalculusOut {
                class,
                n: rep.n,
                degenerate: false,
                selection: selection.to_string(),
                solution_space_dim,
                chi: Some(
                    calc.chi_coords()
                        .iter()
                        .map(|v| coords_strings(v))
                        .collect(),
                ),
                ideal_dim: ideal.dim,
                ideal_basis: ideal.basis.iter().map(|v| coords_strings(v)).collect(),
                ideal_ad_star_invariant: ideal.ad_star_invariant,
                d_unit_is_zero,
                leibniz_all_pairs,
                left_right_relation,
                extended_verified,
                extended_lambda_qybe,
                cocycle_closed,
                cocycle_vanishes_on_dual,
                cocycle_is_coboundary,
            })
        }
    }
}

pub fn calculus_row_passed(out: &CalculusOut) -> bool {
    out.ideal_ad_star_invariant
        && out.d_unit_is_zero
        && out.leibniz_all_pairs
        && out.left_right_relation
        && out.extended_verified
        && out.extended_lambda_qybe
        && out.cocycle_closed
        && out.cocycle_vanishes_on_dual
}

/// Conjugacy-class calculi, one row per selected class.
pub fn class_calculi_report(
    ctx: &GroupDoubleContext,
    selected: Option<usize>,
) -> Result<(bool, CalculiReport)> {
    let classes = ctx.classes();
    let indices: Vec<usize> = match selected {
        Some(i) => {
            if i >= classes.len() {
                return Err(crate::Error::InvalidInput(format!(
                    "class index {i} out of range"
                )));
            }
            vec![i]
        }
        None => (0..classes.len()).collect(),
    };
    let mut rows = Vec::new();
    for i in indices {
        let class = &classes[i];
        let result = class_calculus(ctx, class)?;
        let rep = ctx.class_representation(class)?;
        let space = calculus::solve_chi_space(&rep)?;
        let selection = if result.calculus.is_some() {
            "class-tuple"
        } else {
            "degenerate-class"
        };
        rows.push(calculus_row(
            Some(ClassOut::new(i, class, ctx.group.labels())),
            &rep,
            result.calculus.as_ref(),
            selection,
            space.len(),
        )?);
    }
    let nontrivial = classes.iter().filter(|c| !c.is_trivial(&ctx.group)).count();
    let found = rows.iter().filter(|r| !r.degenerate).count();
    let report = CalculiReport {
        nontrivial_classes: nontrivial,
        calculi_found: found,
        calculi: rows,
    };
    let passed = report.calculi.iter().all(calculus_row_passed);
    Ok((passed, report))
}

/// Calculi report for a standalone representation.
pub fn rep_calculi_report(rep: &DoubleRepresentation) -> Result<(bool, CalculiReport)> {
    let space = calculus::solve_chi_space(rep)?;
    let (calc, selection) =
        match calculus::select_independent_chi(&space, rep.n, rep.double.base_dim()) {
            ChiSelection::Found(tuple) => (Some(calculus::build_calculus(rep, tuple)?), "found"),
            ChiSelection::NoneExists => (None, "none-exists"),
            ChiSelection::SearchExhausted => (None, "search-exhausted"),
        };
    let row = calculus_row(None, rep, calc.as_ref(), selection, space.len())?;
    let report = CalculiReport {
        nontrivial_classes: 0,
        calculi_found: usize::from(!row.degenerate),
        calculi: vec![row],
    };
    let passed = report.calculi.iter().all(calculus_row_passed);
    Ok((passed, report))
}

fn cohomology_dims(bim: &InvGammaBimodule, base: CochainBase) -> Result<CohomologyDims> {
    let deg0 = hochschild::cohomology_spaces(bim, base, 0)?;
    let deg1 = hochschild::cohomology_spaces(bim, base, 1)?;
    Ok(CohomologyDims {
        z0: deg0.z_dim,
        z1: deg1.z_dim,
        b1: deg1.b_dim,
        h1: deg1.h_dim,
    })
}

/// Full cohomology report for a representation, with the correspondence
/// table for an optional attached calculus.
pub fn cohomology_report(
    rep: &DoubleRepresentation,
    class: Option<ClassOut>,
    calc: Option<&FirstOrderCalculus>,
) -> Result<(bool, CohomologyReportOut)> {
    let bim = InvGammaBimodule::new(rep.clone());
    let function_algebra = cohomology_dims(&bim, CochainBase::Function)?;
    let double_algebra = cohomology_dims(&bim, CochainBase::Double)?;
    let correspondence = hochschild::correspondence_report(&bim)?;
    let universal = {
        let phi = hochschild::universal_cocycle(&rep.double)?;
        hochschild::verify_universal_cocycle(&rep.double, &phi)?
    };
    let universal_differential_ok =
        hochschild::universal_differential_check(&rep.double.pair.algebra)?;

    let mut table = Vec::new();
    if let Some(calc) = calc {
        let phi = hochschild::calculus_to_cocycle(calc)?;
        table.push(CorrespondenceRow {
            description: "calculus cocycle over the double".into(),
            is_cocycle: hochschild::coboundary(&bim, &phi)?.is_zero(),
            is_coboundary: hochschild::coboundary_preimage(&bim, &phi)?.is_some(),
        });
        let psi = hochschild::restrict_to_function_algebra(&phi, &rep.double);
        table.push(CorrespondenceRow {
            description: "restricted cocycle over the function algebra".into(),
            is_cocycle: hochschild::coboundary(&bim, &psi)?.is_zero(),
            is_coboundary: hochschild::coboundary_preimage(&bim, &psi)?.is_some(),
        });
    }

    let passed = correspondence.dims_equal
        && correspondence.round_trips_ok
        && correspondence.delta_preserves_invariance
        && universal.passed()
        && universal_differential_ok
        && table.iter().all(|r| r.is_cocycle);
    let out = CohomologyReportOut {
        class,
        carrier_dim: rep.n,
        function_algebra,
        double_algebra,
        invariant_function_cocycles: correspondence.invariant_function_cocycles,
        vanishing_double_cocycles: correspondence.vanishing_double_cocycles,
        dims_equal: correspondence.dims_equal,
        round_trips_ok: correspondence.round_trips_ok,
        delta_preserves_invariance: correspondence.delta_preserves_invariance,
        universal_cocycle_closed: universal.delta_is_zero,
        universal_cocycle_vanishes_on_dual: universal.vanishes_on_dual,
        universal_projection_on_functions: universal.projection_on_functions,
        universal_differential_ok,
        correspondence_table: table,
    };
    Ok((passed, out))
}

/// Numeric residual report over a list of deformation parameters.
pub fn eq2_report(zs: &[f64], tol: f64) -> Result<(bool, Eq2Report)> {
    let zs: Vec<f64> = if zs.is_empty() {
        vec![0.3, 0.7, 1.1]
    } else {
        zs.to_vec()
    };
    let mut runs = Vec::new();
    for &z in &zs {
        let rep = eq2::eq2_matrices(z)?;
        runs.push(Eq2Run {
            relations: eq2::verify_relations(&rep, tol),
            block: eq2::verify_block(&rep, tol),
        });
    }
    let passed = runs.iter().all(|r| r.relations.passed && r.block.passed);
    let (reference_f, reference_r) = reference_matrices();
    Ok((
        passed,
        Eq2Report {
            tol,
            runs,
            reference_f,
            reference_r,
        },
    ))
}
