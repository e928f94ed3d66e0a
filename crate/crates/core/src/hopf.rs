//! Finite-dimensional Hopf algebras by structure constants.
//!
//! A [`HopfStructure`] is plain data: multiplication and comultiplication
//! tensors, counit and unit vectors, and the antipode matrix. The axiom
//! checker runs on that data and reports every identity separately with a
//! witness index on failure. A [`HopfAlgebra`] is a structure that passed
//! the checker at construction; the report is cached.
//!
//! Conventions, fixed once for the whole crate:
//! * `mult[(A,B,C)]`:  e_A e_B = Σ_C mult[(A,B,C)] e_C
//! * `comult[(A,B,C)]`: Δ(e_A) = Σ comult[(A,B,C)] e_B ⊗ e_C
//! * `antipode[A][B]`:  S(e_A) = Σ_B antipode[A][B] e_B
//! * the dual algebra carries the coproduct opposite to the transpose of the
//!   multiplication, matching its embedding in the quantum double; wherever
//!   a formula needs the dual's own coproduct the legs are flipped
//!   explicitly.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::linalg::Matrix;
use crate::scalar::{self, Scalar};
use crate::tensor::SparseTensor3;
use crate::{Error, Result};

/// Structure constants of a candidate Hopf algebra.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HopfStructure {
    pub dim: usize,
    pub labels: Vec<String>,
    pub mult: SparseTensor3,
    pub comult: SparseTensor3,
    pub counit: Vec<Scalar>,
    pub antipode: Matrix,
    pub unit: Vec<Scalar>,
}

/// One verified identity.
#[derive(Clone, Debug)]
pub struct AxiomCheck {
    pub name: &'static str,
    pub passed: bool,
    /// Basis indices of the first failing instance.
    pub witness: Option<Vec<usize>>,
}

/// Outcome of the full axiom suite.
#[derive(Clone, Debug)]
pub struct AxiomReport {
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| !c.passed)
    }

    pub fn summary(&self) -> String {
        match self.first_failure() {
            None => "all axioms hold".into(),
            Some(c) => format!(
                "axiom {:?} fails at indices {:?}",
                c.name,
                c.witness.clone().unwrap_or_default()
            ),
        }
    }
}

type PairFibers = Vec<Vec<(usize, Scalar)>>;
type RowFibers = Vec<Vec<(usize, usize, Scalar)>>;

fn mult_fibers(t: &SparseTensor3, dim: usize) -> PairFibers {
    let mut fibers = vec![Vec::new(); dim * dim];
    for (&[a, b, c], v) in t.iter() {
        fibers[a * dim + b].push((c, v.clone()));
    }
    fibers
}

fn comult_fibers(t: &SparseTensor3, dim: usize) -> RowFibers {
    let mut fibers = vec![Vec::new(); dim];
    for (&[a, b, c], v) in t.iter() {
        fibers[a].push((b, c, v.clone()));
    }
    fibers
}

/// Check the full Hopf axiom list on raw structure constants.
///
/// Fails with [`Error::Shape`] before checking anything when the tensors are
/// dimensionally inconsistent.
pub fn verify_hopf_axioms(s: &HopfStructure) -> Result<AxiomReport> {
    let dim = s.dim;
    if dim == 0 {
        return Err(Error::Shape("zero-dimensional algebra".into()));
    }
    if s.mult.dims() != [dim; 3] || s.comult.dims() != [dim; 3] {
        return Err(Error::Shape("tensor dimensions disagree with dim".into()));
    }
    if s.counit.len() != dim || s.unit.len() != dim || s.labels.len() != dim {
        return Err(Error::Shape("vector lengths disagree with dim".into()));
    }
    if s.antipode.nrows() != dim || s.antipode.ncols() != dim {
        return Err(Error::Shape("antipode matrix is not dim x dim".into()));
    }

    let mult = mult_fibers(&s.mult, dim);
    let comult = comult_fibers(&s.comult, dim);
    let mul_basis = |a: usize, b: usize| -> &[(usize, Scalar)] { &mult[a * dim + b] };

    let mut checks = Vec::new();
    let mut push = |name: &'static str, witness: Option<Vec<usize>>| {
        checks.push(AxiomCheck {
            name,
            passed: witness.is_none(),
            witness,
        });
    };

    // (e_A e_B) e_C = e_A (e_B e_C)
    let mut witness = None;
    'assoc: for a in 0..dim {
        for b in 0..dim {
            for c in 0..dim {
                let mut lhs = scalar::zeros(dim);
                for (d, v) in mul_basis(a, b) {
                    for (e, w) in mul_basis(*d, c) {
                        lhs[*e] += v * w;
                    }
                }
                let mut rhs = scalar::zeros(dim);
                for (d, v) in mul_basis(b, c) {
                    for (e, w) in mul_basis(a, *d) {
                        rhs[*e] += v * w;
                    }
                }
                if lhs != rhs {
                    witness = Some(vec![a, b, c]);
                    break 'assoc;
                }
            }
        }
    }
    push("associativity", witness);

    // 1 · e_A = e_A and e_A · 1 = e_A
    let mut witness = None;
    for a in 0..dim {
        let mut out = scalar::zeros(dim);
        for (u_idx, u) in s.unit.iter().enumerate() {
            if u.is_zero() {
                continue;
            }
            for (c, v) in mul_basis(u_idx, a) {
                out[*c] += u * v;
            }
        }
        if out != scalar::basis_vec(dim, a) {
            witness = Some(vec![a]);
            break;
        }
    }
    push("unit-left", witness);

    let mut witness = None;
    for a in 0..dim {
        let mut out = scalar::zeros(dim);
        for (u_idx, u) in s.unit.iter().enumerate() {
            if u.is_zero() {
                continue;
            }
            for (c, v) in mul_basis(a, u_idx) {
                out[*c] += u * v;
            }
        }
        if out != scalar::basis_vec(dim, a) {
            witness = Some(vec![a]);
            break;
        }
    }
    push("unit-right", witness);

    // (Δ ⊗ id)Δ = (id ⊗ Δ)Δ
    let mut witness = None;
    'coassoc: for a in 0..dim {
        let mut lhs: BTreeMap<[usize; 3], Scalar> = BTreeMap::new();
        let mut rhs: BTreeMap<[usize; 3], Scalar> = BTreeMap::new();
        for (b, c, v) in &comult[a] {
            for (d, e, w) in &comult[*b] {
                add_sparse3(&mut lhs, [*d, *e, *c], v * w);
            }
            for (d, e, w) in &comult[*c] {
                add_sparse3(&mut rhs, [*b, *d, *e], v * w);
            }
        }
        if lhs != rhs {
            witness = Some(vec![a]);
            break 'coassoc;
        }
    }
    push("coassociativity", witness);

    // (ε ⊗ id)Δ = id = (id ⊗ ε)Δ
    let mut left_witness = None;
    let mut right_witness = None;
    for a in 0..dim {
        let mut left = scalar::zeros(dim);
        let mut right = scalar::zeros(dim);
        for (b, c, v) in &comult[a] {
            left[*c] += v * &s.counit[*b];
            right[*b] += v * &s.counit[*c];
        }
        if left != scalar::basis_vec(dim, a) && left_witness.is_none() {
            left_witness = Some(vec![a]);
        }
        if right != scalar::basis_vec(dim, a) && right_witness.is_none() {
            right_witness = Some(vec![a]);
        }
    }
    push("counit-left", left_witness);
    push("counit-right", right_witness);

    // Δ(e_A e_B) = Δ(e_A)Δ(e_B)
    let mut witness = None;
    'compat: for a in 0..dim {
        for b in 0..dim {
            let mut lhs: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
            for (c, v) in mul_basis(a, b) {
                for (d, e, w) in &comult[*c] {
                    add_sparse2(&mut lhs, (*d, *e), v * w);
                }
            }
            let mut rhs: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
            for (p, q, v) in &comult[a] {
                for (r, sc, w) in &comult[b] {
                    let coeff = v * w;
                    for (d, m1) in mul_basis(*p, *r) {
                        for (e, m2) in mul_basis(*q, *sc) {
                            add_sparse2(&mut rhs, (*d, *e), &coeff * m1 * m2);
                        }
                    }
                }
            }
            prune2(&mut lhs);
            prune2(&mut rhs);
            if lhs != rhs {
                witness = Some(vec![a, b]);
                break 'compat;
            }
        }
    }
    push("comult-multiplicative", witness);

    // Δ(1) = 1 ⊗ 1
    let mut lhs: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
    for (a, u) in s.unit.iter().enumerate() {
        if u.is_zero() {
            continue;
        }
        for (b, c, v) in &comult[a] {
            add_sparse2(&mut lhs, (*b, *c), u * v);
        }
    }
    let mut rhs: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
    for (b, ub) in s.unit.iter().enumerate() {
        for (c, uc) in s.unit.iter().enumerate() {
            add_sparse2(&mut rhs, (b, c), ub * uc);
        }
    }
    prune2(&mut lhs);
    prune2(&mut rhs);
    push("comult-unit", (lhs != rhs).then(Vec::new));

    // ε(e_A e_B) = ε(e_A) ε(e_B)
    let mut witness = None;
    'eps: for a in 0..dim {
        for b in 0..dim {
            let mut lhs = scalar::zero();
            for (c, v) in mul_basis(a, b) {
                lhs += v * &s.counit[*c];
            }
            if lhs != &s.counit[a] * &s.counit[b] {
                witness = Some(vec![a, b]);
                break 'eps;
            }
        }
    }
    push("counit-multiplicative", witness);

    // ε(1) = 1
    let eps_unit = scalar::dot(&s.counit, &s.unit);
    push("counit-unit", (!eps_unit.is_one()).then(Vec::new));

    // m(S ⊗ id)Δ = η ε = m(id ⊗ S)Δ
    let mut left_witness = None;
    let mut right_witness = None;
    for a in 0..dim {
        let mut left = scalar::zeros(dim);
        let mut right = scalar::zeros(dim);
        for (b, c, v) in &comult[a] {
            for d in 0..dim {
                let sb = s.antipode.get(*b, d);
                if !sb.is_zero() {
                    for (e, w) in mul_basis(d, *c) {
                        left[*e] += v * sb * w;
                    }
                }
                let sc = s.antipode.get(*c, d);
                if !sc.is_zero() {
                    for (e, w) in mul_basis(*b, d) {
                        right[*e] += v * sc * w;
                    }
                }
            }
        }
        let expected = scalar::scale_vec(&s.unit, &s.counit[a]);
        if left != expected && left_witness.is_none() {
            left_witness = Some(vec![a]);
        }
        if right != expected && right_witness.is_none() {
            right_witness = Some(vec![a]);
        }
    }
    push("antipode-left", left_witness);
    push("antipode-right", right_witness);

    push(
        "antipode-invertible",
        (s.antipode.rank() != dim).then(Vec::new),
    );

    Ok(AxiomReport { checks })
}

fn add_sparse2(map: &mut BTreeMap<(usize, usize), Scalar>, key: (usize, usize), v: Scalar) {
    if v.is_zero() {
        return;
    }
    let entry = map.entry(key).or_insert_with(scalar::zero);
    *entry += v;
}

fn add_sparse3(map: &mut BTreeMap<[usize; 3], Scalar>, key: [usize; 3], v: Scalar) {
    if v.is_zero() {
        return;
    }
    let entry = map.entry(key).or_insert_with(scalar::zero);
    *entry += v;
    if entry.is_zero() {
        map.remove(&key);
    }
}

fn prune2(map: &mut BTreeMap<(usize, usize), Scalar>) {
    map.retain(|_, v| !v.is_zero());
}

/// A Hopf algebra whose axioms were verified at construction.
pub struct HopfAlgebra {
    structure: HopfStructure,
    mult: PairFibers,
    comult: RowFibers,
    antipode_inv: Matrix,
    report: AxiomReport,
}

impl std::fmt::Debug for HopfAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "HopfAlgebra(dim={})", self.structure.dim)
    }
}

impl PartialEq for HopfAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.structure == other.structure
    }
}

impl HopfAlgebra {
    /// Verify the axioms and freeze the structure. The report is cached.
    pub fn new(structure: HopfStructure) -> Result<Arc<Self>> {
        let report = verify_hopf_axioms(&structure)?;
        if !report.all_passed() {
            return Err(Error::AxiomsFailed(report.summary()));
        }
        let antipode_inv = structure
            .antipode
            .inverse()
            .map_err(|_| Error::AxiomsFailed("antipode matrix is singular".into()))?;
        let mult = mult_fibers(&structure.mult, structure.dim);
        let comult = comult_fibers(&structure.comult, structure.dim);
        Ok(Arc::new(HopfAlgebra {
            structure,
            mult,
            comult,
            antipode_inv,
            report,
        }))
    }

    pub fn dim(&self) -> usize {
        self.structure.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.structure.labels
    }

    pub fn structure(&self) -> &HopfStructure {
        &self.structure
    }

    pub fn axiom_report(&self) -> &AxiomReport {
        &self.report
    }

    pub fn counit_vector(&self) -> &[Scalar] {
        &self.structure.counit
    }

    pub fn unit_coords(&self) -> &[Scalar] {
        &self.structure.unit
    }

    pub fn antipode_matrix(&self) -> &Matrix {
        &self.structure.antipode
    }

    pub fn antipode_inverse_matrix(&self) -> &Matrix {
        &self.antipode_inv
    }

    pub fn mult_basis(&self, a: usize, b: usize) -> &[(usize, Scalar)] {
        &self.mult[a * self.structure.dim + b]
    }

    pub fn comult_basis(&self, a: usize) -> &[(usize, usize, Scalar)] {
        &self.comult[a]
    }

    pub fn mul_coords(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let dim = self.structure.dim;
        let mut out = scalar::zeros(dim);
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, yb) in y.iter().enumerate() {
                if yb.is_zero() {
                    continue;
                }
                let coeff = xa * yb;
                for (c, m) in self.mult_basis(a, b) {
                    out[*c] += &coeff * m;
                }
            }
        }
        out
    }

    /// Δ(x) as sparse pairs `((b, c), coeff)`.
    pub fn coproduct_coords(&self, x: &[Scalar]) -> BTreeMap<(usize, usize), Scalar> {
        let mut out = BTreeMap::new();
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, c, v) in &self.comult[a] {
                add_sparse2(&mut out, (*b, *c), xa * v);
            }
        }
        prune2(&mut out);
        out
    }

    /// (Δ ⊗ id)Δ(e_A): coefficients on e_p ⊗ e_q ⊗ e_r.
    pub fn iterated_coproduct_basis(&self, a: usize) -> Vec<([usize; 3], Scalar)> {
        let mut out: BTreeMap<[usize; 3], Scalar> = BTreeMap::new();
        for (b, c, v) in &self.comult[a] {
            for (d, e, w) in &self.comult[*b] {
                add_sparse3(&mut out, [*d, *e, *c], v * w);
            }
        }
        out.into_iter().collect()
    }

    pub fn counit_of(&self, x: &[Scalar]) -> Scalar {
        scalar::dot(&self.structure.counit, x)
    }

    pub fn apply_antipode(&self, x: &[Scalar]) -> Vec<Scalar> {
        let dim = self.structure.dim;
        let mut out = scalar::zeros(dim);
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for b in 0..dim {
                let s = self.structure.antipode.get(a, b);
                if !s.is_zero() {
                    out[b] += xa * s;
                }
            }
        }
        out
    }

    pub fn apply_antipode_inv(&self, x: &[Scalar]) -> Vec<Scalar> {
        let dim = self.structure.dim;
        let mut out = scalar::zeros(dim);
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for b in 0..dim {
                let s = self.antipode_inv.get(a, b);
                if !s.is_zero() {
                    out[b] += xa * s;
                }
            }
        }
        out
    }

    /// ad_x(y) = Σ S(x₍₁₎) y x₍₂₎ in this algebra's own structure.
    pub fn adjoint_coords(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let dim = self.structure.dim;
        let mut out = scalar::zeros(dim);
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, c, v) in &self.comult[a] {
                let s_leg = self.apply_antipode(&scalar::basis_vec(dim, *b));
                let left = self.mul_coords(&s_leg, y);
                let full = self.mul_coords(&left, &scalar::basis_vec(dim, *c));
                let coeff = xa * v;
                for (i, f) in full.iter().enumerate() {
                    if !f.is_zero() {
                        out[i] += &coeff * f;
                    }
                }
            }
        }
        out
    }

    /// ad*(x) = Σ x₍₂₎ ⊗ S(x₍₁₎) x₍₃₎ as sparse pairs.
    pub fn ad_star_coords(&self, x: &[Scalar]) -> BTreeMap<(usize, usize), Scalar> {
        let dim = self.structure.dim;
        let mut out = BTreeMap::new();
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for ([p, q, r], v) in self.iterated_coproduct_basis(a) {
                let s_leg = self.apply_antipode(&scalar::basis_vec(dim, p));
                let prod = self.mul_coords(&s_leg, &scalar::basis_vec(dim, r));
                let coeff = xa * &v;
                for (t, pv) in prod.iter().enumerate() {
                    if !pv.is_zero() {
                        add_sparse2(&mut out, (q, t), &coeff * pv);
                    }
                }
            }
        }
        prune2(&mut out);
        out
    }

    pub fn basis_element(self: &Arc<Self>, i: usize) -> AlgebraElement {
        AlgebraElement {
            parent: Arc::clone(self),
            coords: scalar::basis_vec(self.dim(), i),
        }
    }

    pub fn unit_element(self: &Arc<Self>) -> AlgebraElement {
        AlgebraElement {
            parent: Arc::clone(self),
            coords: self.structure.unit.clone(),
        }
    }

    pub fn element(self: &Arc<Self>, coords: Vec<Scalar>) -> Result<AlgebraElement> {
        if coords.len() != self.dim() {
            return Err(Error::Shape(format!(
                "element has {} coordinates, algebra dimension is {}",
                coords.len(),
                self.dim()
            )));
        }
        Ok(AlgebraElement {
            parent: Arc::clone(self),
            coords,
        })
    }

    pub fn zero_element(self: &Arc<Self>) -> AlgebraElement {
        AlgebraElement {
            parent: Arc::clone(self),
            coords: scalar::zeros(self.dim()),
        }
    }
}

pub fn same_algebra(a: &Arc<HopfAlgebra>, b: &Arc<HopfAlgebra>) -> bool {
    Arc::ptr_eq(a, b) || a.structure == b.structure
}

/// Element of a Hopf algebra, as coordinates over the chosen basis.
#[derive(Clone, Debug)]
pub struct AlgebraElement {
    pub parent: Arc<HopfAlgebra>,
    pub coords: Vec<Scalar>,
}

impl PartialEq for AlgebraElement {
    fn eq(&self, other: &Self) -> bool {
        same_algebra(&self.parent, &other.parent) && self.coords == other.coords
    }
}

impl AlgebraElement {
    pub fn is_zero(&self) -> bool {
        scalar::is_zero_vec(&self.coords)
    }

    pub fn add(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.check_parent(other)?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a + b)
            .collect();
        Ok(AlgebraElement {
            parent: Arc::clone(&self.parent),
            coords,
        })
    }

    pub fn sub(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.check_parent(other)?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a - b)
            .collect();
        Ok(AlgebraElement {
            parent: Arc::clone(&self.parent),
            coords,
        })
    }

    pub fn scale(&self, c: &Scalar) -> AlgebraElement {
        AlgebraElement {
            parent: Arc::clone(&self.parent),
            coords: scalar::scale_vec(&self.coords, c),
        }
    }

    pub fn mul(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.check_parent(other)?;
        Ok(AlgebraElement {
            parent: Arc::clone(&self.parent),
            coords: self.parent.mul_coords(&self.coords, &other.coords),
        })
    }

    pub fn counit(&self) -> Scalar {
        self.parent.counit_of(&self.coords)
    }

    pub fn antipode(&self) -> AlgebraElement {
        AlgebraElement {
            parent: Arc::clone(&self.parent),
            coords: self.parent.apply_antipode(&self.coords),
        }
    }

    fn check_parent(&self, other: &AlgebraElement) -> Result<()> {
        if same_algebra(&self.parent, &other.parent) {
            Ok(())
        } else {
            Err(Error::ParentMismatch("elements of different algebras"))
        }
    }
}

/// ad_x(y) for two elements of the same algebra.
pub fn adjoint_action(x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
    if !same_algebra(&x.parent, &y.parent) {
        return Err(Error::ParentMismatch("adjoint action"));
    }
    Ok(AlgebraElement {
        parent: Arc::clone(&x.parent),
        coords: x.parent.adjoint_coords(&x.coords, &y.coords),
    })
}

/// Build the dual algebra as it sits in the quantum double: multiplication
/// dual to the coproduct, coproduct opposite to the dual of the
/// multiplication, antipode the transposed inverse.
pub fn dual_hopf(f: &Arc<HopfAlgebra>) -> Result<Arc<HopfAlgebra>> {
    let dim = f.dim();
    let s = f.structure();

    let mut mult = SparseTensor3::new([dim; 3]);
    for (&[c, a, b], v) in s.comult.iter() {
        mult.add_to([a, b, c], v)?;
    }
    let mut comult = SparseTensor3::new([dim; 3]);
    for (&[c, b, a], v) in s.mult.iter() {
        comult.add_to([a, b, c], v)?;
    }
    let antipode = f.antipode_inverse_matrix().transpose();

    HopfAlgebra::new(HopfStructure {
        dim,
        labels: s.labels.clone(),
        mult,
        comult,
        counit: s.unit.clone(),
        antipode,
        unit: s.counit.clone(),
    })
}

/// A Hopf algebra together with its dual; the context for every operation
/// mixing functions and functionals.
#[derive(Clone, Debug)]
pub struct DualPair {
    pub algebra: Arc<HopfAlgebra>,
    pub dual: Arc<HopfAlgebra>,
}

impl DualPair {
    pub fn new(algebra: Arc<HopfAlgebra>) -> Result<Self> {
        let dual = dual_hopf(&algebra)?;
        Ok(DualPair { algebra, dual })
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    fn check_functional(&self, f: &AlgebraElement) -> Result<()> {
        if same_algebra(&f.parent, &self.dual) {
            Ok(())
        } else {
            Err(Error::ParentMismatch("functional not in the dual algebra"))
        }
    }

    fn check_function(&self, a: &AlgebraElement) -> Result<()> {
        if same_algebra(&a.parent, &self.algebra) {
            Ok(())
        } else {
            Err(Error::ParentMismatch("element not in the base algebra"))
        }
    }

    /// Natural duality coupling ⟨f, a⟩.
    pub fn pair(&self, f: &AlgebraElement, a: &AlgebraElement) -> Result<Scalar> {
        self.check_functional(f)?;
        self.check_function(a)?;
        Ok(scalar::dot(&f.coords, &a.coords))
    }

    /// f ⋆ a = Σ a₍₁₎ ⟨f, a₍₂₎⟩.
    pub fn star_left(&self, f: &AlgebraElement, a: &AlgebraElement) -> Result<AlgebraElement> {
        self.check_functional(f)?;
        self.check_function(a)?;
        Ok(AlgebraElement {
            parent: Arc::clone(&self.algebra),
            coords: self.star_left_coords(&f.coords, &a.coords),
        })
    }

    pub fn star_left_coords(&self, f: &[Scalar], a: &[Scalar]) -> Vec<Scalar> {
        let dim = self.dim();
        let mut out = scalar::zeros(dim);
        for (idx, xa) in a.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, c, v) in self.algebra.comult_basis(idx) {
                if !f[*c].is_zero() {
                    out[*b] += xa * v * &f[*c];
                }
            }
        }
        out
    }

    /// a ⋆ f = Σ ⟨f, a₍₁₎⟩ a₍₂₎.
    pub fn star_right(&self, a: &AlgebraElement, f: &AlgebraElement) -> Result<AlgebraElement> {
        self.check_functional(f)?;
        self.check_function(a)?;
        Ok(AlgebraElement {
            parent: Arc::clone(&self.algebra),
            coords: self.star_right_coords(&a.coords, &f.coords),
        })
    }

    pub fn star_right_coords(&self, a: &[Scalar], f: &[Scalar]) -> Vec<Scalar> {
        let dim = self.dim();
        let mut out = scalar::zeros(dim);
        for (idx, xa) in a.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, c, v) in self.algebra.comult_basis(idx) {
                if !f[*b].is_zero() {
                    out[*c] += xa * v * &f[*b];
                }
            }
        }
        out
    }

    /// Ad_x(a) = (1 ⊗ x) ad*(a).
    pub fn big_ad(&self, x: &AlgebraElement, a: &AlgebraElement) -> Result<AlgebraElement> {
        self.check_functional(x)?;
        self.check_function(a)?;
        Ok(AlgebraElement {
            parent: Arc::clone(&self.algebra),
            coords: self.big_ad_coords(&x.coords, &a.coords),
        })
    }

    pub fn big_ad_coords(&self, x: &[Scalar], a: &[Scalar]) -> Vec<Scalar> {
        let dim = self.dim();
        let mut out = scalar::zeros(dim);
        for ((q, t), v) in self.algebra.ad_star_coords(a) {
            if !x[t].is_zero() {
                out[q] += v * &x[t];
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{function_hopf, group_algebra, FiniteGroup};
    use crate::scalar::{int, one, zero};
    use proptest::prelude::*;

    fn f_z2() -> Arc<HopfAlgebra> {
        function_hopf(&FiniteGroup::cyclic(2)).unwrap()
    }

    fn f_s3() -> Arc<HopfAlgebra> {
        function_hopf(&FiniteGroup::symmetric_3()).unwrap()
    }

    #[test]
    fn function_algebra_axioms_pass() {
        let report = f_z2().axiom_report().clone();
        assert!(report.all_passed());
        assert_eq!(report.checks.len(), 13);
    }

    #[test]
    fn corrupted_mult_entry_fails_with_witness() {
        let good = f_z2();
        let mut s = good.structure().clone();
        let cur = s.mult.get([0, 0, 0]).clone();
        s.mult.set([0, 0, 0], cur + one()).unwrap();
        let report = verify_hopf_axioms(&s).unwrap();
        assert!(!report.all_passed());
        assert!(report.first_failure().unwrap().witness.is_some());
        assert!(HopfAlgebra::new(s).is_err());
    }

    #[test]
    fn group_algebra_of_z3_passes() {
        let kz3 = group_algebra(&FiniteGroup::cyclic(3)).unwrap();
        assert!(kz3.axiom_report().all_passed());
    }

    #[test]
    fn dual_of_function_algebra_is_group_algebra() {
        let g = FiniteGroup::symmetric_3();
        let f = function_hopf(&g).unwrap();
        let dual = dual_hopf(&f).unwrap();
        let kg = group_algebra(&g).unwrap();
        // same structure constants: kG is cocommutative, so the opposite
        // coproduct is invisible
        assert_eq!(dual.structure(), kg.structure());
        assert!(dual.axiom_report().all_passed());
    }

    #[test]
    fn dual_of_one_dimensional_algebra_is_itself() {
        let f = function_hopf(&FiniteGroup::cyclic(1)).unwrap();
        let dual = dual_hopf(&f).unwrap();
        assert_eq!(dual.structure(), f.structure());
    }

    #[test]
    fn dual_basis_pairing() {
        let pair = DualPair::new(f_z2()).unwrap();
        let e0 = pair.algebra.basis_element(0);
        let e1 = pair.algebra.basis_element(1);
        let u0 = pair.dual.basis_element(0);
        assert_eq!(pair.pair(&u0, &e0).unwrap(), one());
        assert_eq!(pair.pair(&u0, &e1).unwrap(), zero());
        // u against δ_u
        let u1 = pair.dual.basis_element(1);
        assert_eq!(pair.pair(&u1, &e1).unwrap(), one());
    }

    #[test]
    fn pairing_rejects_foreign_elements() {
        let pair = DualPair::new(f_z2()).unwrap();
        let a = pair.algebra.basis_element(0);
        assert!(pair.pair(&a, &a).is_err());
    }

    #[test]
    fn star_left_examples() {
        // In F(Z2): basis δ_e, δ_u; dual basis e, u.
        let pair = DualPair::new(f_z2()).unwrap();
        let delta_e = pair.algebra.basis_element(0);
        let delta_u = pair.algebra.basis_element(1);
        let u = pair.dual.basis_element(1);

        // unit of the dual acts as identity
        let eps = pair.dual.unit_element();
        assert_eq!(pair.star_left(&eps, &delta_u).unwrap(), delta_u);

        // u ⋆ δ_u = δ_e
        assert_eq!(pair.star_left(&u, &delta_u).unwrap(), delta_e);

        // (u - e) ⋆ δ_u = δ_e - δ_u
        let e = pair.dual.basis_element(0);
        let chi = u.sub(&e).unwrap();
        let expected = delta_e.sub(&delta_u).unwrap();
        assert_eq!(pair.star_left(&chi, &delta_u).unwrap(), expected);
    }

    #[test]
    fn star_right_examples() {
        let pair = DualPair::new(f_z2()).unwrap();
        let delta_e = pair.algebra.basis_element(0);
        let delta_u = pair.algebra.basis_element(1);
        let u = pair.dual.basis_element(1);
        let eps = pair.dual.unit_element();

        assert_eq!(pair.star_right(&delta_u, &eps).unwrap(), delta_u);
        assert_eq!(pair.star_right(&delta_u, &u).unwrap(), delta_e);

        // 1 ⋆ f = ε̃(f) 1
        let one_f = pair.algebra.unit_element();
        let result = pair.star_right(&one_f, &u).unwrap();
        let expected = one_f.scale(&pair.dual.counit_of(&u.coords));
        assert_eq!(result, expected);
    }

    #[test]
    fn adjoint_action_on_group_likes() {
        let g = FiniteGroup::symmetric_3();
        let kg = group_algebra(&g).unwrap();
        // group-likes: ad_g(h) = g^{-1} h g
        for gi in 0..g.order() {
            for hi in 0..g.order() {
                let x = kg.basis_element(gi);
                let y = kg.basis_element(hi);
                let conj = g.mul(g.mul(g.inverse(gi), hi), gi);
                assert_eq!(adjoint_action(&x, &y).unwrap(), kg.basis_element(conj));
            }
        }
        // ad_1(y) = y
        let one_el = kg.unit_element();
        let y = kg.basis_element(3);
        assert_eq!(adjoint_action(&one_el, &y).unwrap(), y);
    }

    #[test]
    fn ad_star_examples() {
        let f = f_z2();
        // ad*(1) = 1 ⊗ 1
        let unit = f.unit_coords().to_vec();
        let t = f.ad_star_coords(&unit);
        let mut expected = BTreeMap::new();
        for (a, ua) in unit.iter().enumerate() {
            for (b, ub) in unit.iter().enumerate() {
                if !ua.is_zero() && !ub.is_zero() {
                    expected.insert((a, b), ua * ub);
                }
            }
        }
        assert_eq!(t, expected);

        // ad*(δ_u) = δ_u ⊗ (δ_e + δ_u)
        let du = scalar::basis_vec(2, 1);
        let t = f.ad_star_coords(&du);
        let mut expected = BTreeMap::new();
        expected.insert((1, 0), one());
        expected.insert((1, 1), one());
        assert_eq!(t, expected);
    }

    #[test]
    fn ad_star_second_leg_groups_by_conjugation() {
        // For commutative F(G) the second leg of ad*(δ_x) pairs against a
        // group-like g exactly when g x g^{-1} lands on the first leg: check
        // by brute force on S3 that big_ad moves evaluation points by
        // conjugation.
        let g = FiniteGroup::symmetric_3();
        let pair = DualPair::new(function_hopf(&g).unwrap()).unwrap();
        for gi in 0..g.order() {
            for xi in 0..g.order() {
                let x = pair.dual.basis_element(gi);
                let a = pair.algebra.basis_element(xi);
                let moved = pair.big_ad(&x, &a).unwrap();
                let conj = g.mul(g.mul(gi, xi), g.inverse(gi));
                assert_eq!(moved, pair.algebra.basis_element(conj));
            }
        }
    }

    #[test]
    fn big_ad_trivial_cases() {
        let pair = DualPair::new(f_z2()).unwrap();
        let a = pair.algebra.basis_element(1);
        let one_u = pair.dual.unit_element();
        assert_eq!(pair.big_ad(&one_u, &a).unwrap(), a);

        let x = pair.dual.basis_element(1);
        let one_f = pair.algebra.unit_element();
        let expected = one_f.scale(&pair.dual.counit_of(&x.coords));
        assert_eq!(pair.big_ad(&x, &one_f).unwrap(), expected);
    }

    #[test]
    fn duality_compatibility_on_random_elements() {
        let pair = DualPair::new(f_s3()).unwrap();
        let dim = pair.dim();
        let mut next = 17u64;
        let mut rand_coords = || -> Vec<Scalar> {
            (0..dim)
                .map(|_| {
                    next = next
                        .wrapping_mul(6364136223846793005)
                        .wrapping_add(1442695040888963407);
                    int(((next >> 33) % 7) as i64 - 3)
                })
                .collect()
        };
        for _ in 0..8 {
            let f = rand_coords();
            let g = rand_coords();
            let a = rand_coords();
            let b = rand_coords();

            // ⟨fg, a⟩ = Σ ⟨f, a₍₁₎⟩⟨g, a₍₂₎⟩
            let fg = pair.dual.mul_coords(&f, &g);
            let lhs = scalar::dot(&fg, &a);
            let mut rhs = zero();
            for ((p, q), v) in pair.algebra.coproduct_coords(&a) {
                rhs += v * &f[p] * &g[q];
            }
            assert_eq!(lhs, rhs);

            // ⟨Δ̃f, a ⊗ b⟩ = ⟨f, b a⟩ with the double's coproduct
            let ba = pair.algebra.mul_coords(&b, &a);
            let lhs = scalar::dot(&f, &ba);
            let mut rhs = zero();
            for ((p, q), v) in pair.dual.coproduct_coords(&f) {
                rhs += v * &a[p] * &b[q];
            }
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn antipode_inverse_is_exact() {
        let f = f_s3();
        assert!(f
            .antipode_matrix()
            .mul(f.antipode_inverse_matrix())
            .is_identity());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]
        #[test]
        fn star_module_associativity(seed in 0u64..1000) {
            let pair = DualPair::new(f_z2()).unwrap();
            let dim = pair.dim();
            let mut state = seed.wrapping_add(1);
            let mut rand_coords = || -> Vec<Scalar> {
                (0..dim).map(|_| {
                    state = state.wrapping_mul(2862933555777941757).wrapping_add(3037000493);
                    int(((state >> 32) % 9) as i64 - 4)
                }).collect()
            };
            let f = rand_coords();
            let g = rand_coords();
            let a = rand_coords();
            // f ⋆ (g ⋆ a) = (fg) ⋆ a
            let inner = pair.star_left_coords(&g, &a);
            let lhs = pair.star_left_coords(&f, &inner);
            let fg = pair.dual.mul_coords(&f, &g);
            let rhs = pair.star_left_coords(&fg, &a);
            prop_assert_eq!(lhs, rhs);
        }
    }
}
