//! Double representations and bicovariant bimodules.
//!
//! A representation of the double is stored as its restrictions to the two
//! factors: matrices for the function part and for the dual part, with the
//! cross products checked through the straightening table. The translation
//! to a bimodule follows
//!
//!   f_ij = [ρ(e_A)]_ij e^A ,      R_ij = e_A [ρ(S̃⁻¹(e^A))]_ji ,
//!
//! and back. The braiding matrix is computed two independent ways, by the
//! duality pairing of f against R and by representing the flipped inverse
//! canonical element, and the two must agree entrywise.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;

use crate::double::DrinfeldDouble;
use crate::hopf::AlgebraElement;
use crate::linalg::Matrix;
use crate::scalar::{self, Scalar};
use crate::{Error, Result};

/// Matrices assigned to the basis of each factor of the double.
#[derive(Clone)]
pub struct DoubleRepresentation {
    pub double: Arc<DrinfeldDouble>,
    pub n: usize,
    pub rho_f: Vec<Matrix>,
    pub rho_u: Vec<Matrix>,
    rho_d: Vec<Matrix>,
}

/// One verified representation identity.
#[derive(Clone, Debug)]
pub struct RepCheck {
    pub name: &'static str,
    pub passed: bool,
    pub witness: Option<(usize, usize)>,
}

#[derive(Clone, Debug)]
pub struct RepReport {
    pub checks: Vec<RepCheck>,
}

impl RepReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&RepCheck> {
        self.checks.iter().find(|c| !c.passed)
    }

    pub fn summary(&self) -> String {
        match self.first_failure() {
            None => "representation verified".into(),
            Some(c) => format!("{} fails at {:?}", c.name, c.witness),
        }
    }
}

impl DoubleRepresentation {
    /// Shape-check and verify multiplicativity on both factors and across.
    pub fn new(
        double: Arc<DrinfeldDouble>,
        n: usize,
        rho_f: Vec<Matrix>,
        rho_u: Vec<Matrix>,
    ) -> Result<Self> {
        let rep = Self::new_unchecked(double, n, rho_f, rho_u)?;
        let report = rep.verify();
        if !report.all_passed() {
            return Err(Error::Inconsistent(report.summary()));
        }
        Ok(rep)
    }

    /// Shape-check only; used to feed deliberately broken data to `verify`.
    pub fn new_unchecked(
        double: Arc<DrinfeldDouble>,
        n: usize,
        rho_f: Vec<Matrix>,
        rho_u: Vec<Matrix>,
    ) -> Result<Self> {
        let dim = double.base_dim();
        if rho_f.len() != dim || rho_u.len() != dim {
            return Err(Error::Shape(format!(
                "expected {dim} matrices per factor, found {} and {}",
                rho_f.len(),
                rho_u.len()
            )));
        }
        for m in rho_f.iter().chain(&rho_u) {
            if m.nrows() != n || m.ncols() != n {
                return Err(Error::Shape(format!(
                    "representation matrices must be {n}x{n}"
                )));
            }
        }
        let mut rho_d = Vec::with_capacity(dim * dim);
        for a in 0..dim {
            for b in 0..dim {
                rho_d.push(rho_f[a].mul(&rho_u[b]));
            }
        }
        Ok(DoubleRepresentation {
            double,
            n,
            rho_f,
            rho_u,
            rho_d,
        })
    }

    /// ρ_D on a basis element of the double.
    pub fn rho_d_basis(&self, i: usize) -> &Matrix {
        &self.rho_d[i]
    }

    /// ρ_D extended linearly to coordinates over the double.
    pub fn rho_d(&self, coords: &[Scalar]) -> Matrix {
        let mut out = Matrix::zeros(self.n, self.n);
        for (i, c) in coords.iter().enumerate() {
            if !c.is_zero() {
                out = out.add(&self.rho_d[i].scale(c));
            }
        }
        out
    }

    pub fn verify(&self) -> RepReport {
        let f = &self.double.pair.algebra;
        let u = &self.double.pair.dual;
        let dim = f.dim();
        let mut checks = Vec::new();

        let unit_f = self.rho_d(&self.double.embed_f_coords(f.unit_coords()).coords);
        checks.push(RepCheck {
            name: "unit-function-factor",
            passed: unit_f.is_identity(),
            witness: None,
        });
        let unit_u = self.rho_d(&self.double.embed_u_coords(u.unit_coords()).coords);
        checks.push(RepCheck {
            name: "unit-dual-factor",
            passed: unit_u.is_identity(),
            witness: None,
        });

        let mut witness = None;
        'f_mult: for a in 0..dim {
            for b in 0..dim {
                let lhs = self.rho_f[a].mul(&self.rho_f[b]);
                let mut rhs = Matrix::zeros(self.n, self.n);
                for (c, v) in f.mult_basis(a, b) {
                    rhs = rhs.add(&self.rho_f[*c].scale(v));
                }
                if lhs != rhs {
                    witness = Some((a, b));
                    break 'f_mult;
                }
            }
        }
        checks.push(RepCheck {
            name: "multiplicative-function-factor",
            passed: witness.is_none(),
            witness,
        });

        let mut witness = None;
        'u_mult: for a in 0..dim {
            for b in 0..dim {
                let lhs = self.rho_u[a].mul(&self.rho_u[b]);
                let mut rhs = Matrix::zeros(self.n, self.n);
                for (c, v) in u.mult_basis(a, b) {
                    rhs = rhs.add(&self.rho_u[*c].scale(v));
                }
                if lhs != rhs {
                    witness = Some((a, b));
                    break 'u_mult;
                }
            }
        }
        checks.push(RepCheck {
            name: "multiplicative-dual-factor",
            passed: witness.is_none(),
            witness,
        });

        // ρ(e^B) ρ(e_A) must match the straightened product
        let mut witness = None;
        'cross: for b in 0..dim {
            for a in 0..dim {
                let lhs = self.rho_u[b].mul(&self.rho_f[a]);
                let mut rhs = Matrix::zeros(self.n, self.n);
                for (&(p, q), v) in self.double.straighten_basis(b, a) {
                    rhs = rhs.add(&self.rho_f[p].mul(&self.rho_u[q]).scale(v));
                }
                if lhs != rhs {
                    witness = Some((b, a));
                    break 'cross;
                }
            }
        }
        checks.push(RepCheck {
            name: "cross-relations",
            passed: witness.is_none(),
            witness,
        });

        RepReport { checks }
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let report = self.verify();
        if report.all_passed() {
            Ok(())
        } else {
            Err(Error::Inconsistent(report.summary()))
        }
    }

    /// The one-dimensional representation by the counits.
    pub fn trivial(double: Arc<DrinfeldDouble>) -> Result<Self> {
        let f = &double.pair.algebra;
        let u = &double.pair.dual;
        let dim = f.dim();
        let rho_f = (0..dim)
            .map(|a| {
                let mut m = Matrix::zeros(1, 1);
                m.set(0, 0, f.counit_vector()[a].clone());
                m
            })
            .collect();
        let rho_u = (0..dim)
            .map(|b| {
                let mut m = Matrix::zeros(1, 1);
                m.set(0, 0, u.counit_vector()[b].clone());
                m
            })
            .collect();
        DoubleRepresentation::new(double, 1, rho_f, rho_u)
    }
}

/// The pair of element matrices characterizing a bicovariant bimodule.
#[derive(Clone)]
pub struct BicovariantBimodule {
    pub double: Arc<DrinfeldDouble>,
    pub n: usize,
    /// f_ij in the dual algebra.
    pub f: Vec<Vec<AlgebraElement>>,
    /// R_ij in the base algebra.
    pub r: Vec<Vec<AlgebraElement>>,
}

/// Free left module element Σ a_i ω_i with function coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct GammaElement {
    pub coords: Vec<AlgebraElement>,
}

impl GammaElement {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(AlgebraElement::is_zero)
    }

    pub fn add(&self, other: &GammaElement) -> Result<GammaElement> {
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a.add(b))
            .collect::<Result<_>>()?;
        Ok(GammaElement { coords })
    }

    pub fn sub(&self, other: &GammaElement) -> Result<GammaElement> {
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a.sub(b))
            .collect::<Result<_>>()?;
        Ok(GammaElement { coords })
    }
}

impl BicovariantBimodule {
    /// Check all defining identities of the pair (f, R) and freeze it.
    pub fn new(
        double: Arc<DrinfeldDouble>,
        f: Vec<Vec<AlgebraElement>>,
        r: Vec<Vec<AlgebraElement>>,
    ) -> Result<Self> {
        let n = f.len();
        if r.len() != n || f.iter().any(|row| row.len() != n) || r.iter().any(|row| row.len() != n)
        {
            return Err(Error::Shape("f and R must be square of equal size".into()));
        }
        let bim = BicovariantBimodule { double, n, f, r };
        bim.verify_invariants()?;
        Ok(bim)
    }

    fn verify_invariants(&self) -> Result<()> {
        let u = &self.double.pair.dual;
        let f_alg = &self.double.pair.algebra;
        let n = self.n;

        for i in 0..n {
            for j in 0..n {
                let eps = u.counit_of(&self.f[i][j].coords);
                let expected = if i == j {
                    scalar::one()
                } else {
                    scalar::zero()
                };
                if eps != expected {
                    return Err(Error::Inconsistent(format!(
                        "counit of f[{i}][{j}] is {} instead of {}",
                        scalar::format(&eps),
                        scalar::format(&expected)
                    )));
                }
                let eps = f_alg.counit_of(&self.r[i][j].coords);
                if eps != expected {
                    return Err(Error::Inconsistent(format!(
                        "counit of R[{i}][{j}] is {} instead of {}",
                        scalar::format(&eps),
                        scalar::format(&expected)
                    )));
                }
            }
        }

        // Δ̃(f_ij) = Σ_k f_kj ⊗ f_ik in the stored opposite coproduct,
        // equivalently f_ik ⊗ f_kj in the dual's own coproduct.
        for i in 0..n {
            for j in 0..n {
                let lhs = u.coproduct_coords(&self.f[i][j].coords);
                let mut rhs: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
                for k in 0..n {
                    for (p, vp) in self.f[k][j].coords.iter().enumerate() {
                        if vp.is_zero() {
                            continue;
                        }
                        for (q, vq) in self.f[i][k].coords.iter().enumerate() {
                            if !vq.is_zero() {
                                let entry = rhs.entry((p, q)).or_insert_with(scalar::zero);
                                *entry += vp * vq;
                            }
                        }
                    }
                }
                rhs.retain(|_, v| !v.is_zero());
                if lhs != rhs {
                    return Err(Error::Inconsistent(format!(
                        "coproduct of f[{i}][{j}] is not matrix-comultiplicative"
                    )));
                }
            }
        }

        // Δ(R_ij) = Σ_k R_ik ⊗ R_kj
        for i in 0..n {
            for j in 0..n {
                let lhs = f_alg.coproduct_coords(&self.r[i][j].coords);
                let mut rhs: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
                for k in 0..n {
                    for (p, vp) in self.r[i][k].coords.iter().enumerate() {
                        if vp.is_zero() {
                            continue;
                        }
                        for (q, vq) in self.r[k][j].coords.iter().enumerate() {
                            if !vq.is_zero() {
                                let entry = rhs.entry((p, q)).or_insert_with(scalar::zero);
                                *entry += vp * vq;
                            }
                        }
                    }
                }
                rhs.retain(|_, v| !v.is_zero());
                if lhs != rhs {
                    return Err(Error::Inconsistent(format!(
                        "coproduct of R[{i}][{j}] is not matrix-comultiplicative"
                    )));
                }
            }
        }

        self.verify_compatibility()?;
        Ok(())
    }

    /// The f/R compatibility in the index form that follows from the cross
    /// relations of the double (the printed form has a stray repeated index;
    /// this is the arrangement equivalent to the proof's identity). Free
    /// indices: a basis element B of the base algebra and a basis element D,
    /// with an n×n matrix identity for each pair.
    fn verify_compatibility(&self) -> Result<()> {
        let f_alg = &self.double.pair.algebra;
        let dim = f_alg.dim();
        let n = self.n;

        // matrices read back from the bimodule data
        let rho_f: Vec<Matrix> = (0..dim)
            .map(|a| Matrix::from_fn(n, n, |i, j| self.f[i][j].coords[a].clone()))
            .collect();
        let rho_u_from_r: Vec<Matrix> = (0..dim)
            .map(|a| Matrix::from_fn(n, n, |i, j| self.r[i][j].coords[a].clone()))
            .collect();

        for b in 0..dim {
            let legs: Vec<(usize, usize, Scalar)> = f_alg
                .comult_basis(b)
                .iter()
                .map(|(p, q, v)| (*p, *q, v.clone()))
                .collect();
            for d in 0..dim {
                let mut lhs = Matrix::zeros(n, n);
                let mut rhs = Matrix::zeros(n, n);
                for (leg1, leg2, v) in &legs {
                    // lhs: Δ_B^{AC} m_EC^D with A = leg1, C = leg2
                    for e in 0..dim {
                        for (dd, w) in f_alg.mult_basis(e, *leg2) {
                            if *dd == d {
                                let term = rho_u_from_r[e].transpose().mul(&rho_f[*leg1]);
                                lhs = lhs.add(&term.scale(&(v * w)));
                            }
                        }
                    }
                    // rhs: Δ_B^{CA} m_CE^D with C = leg1, A = leg2
                    for e in 0..dim {
                        for (dd, w) in f_alg.mult_basis(*leg1, e) {
                            if *dd == d {
                                let term = rho_f[*leg2].mul(&rho_u_from_r[e].transpose());
                                rhs = rhs.add(&term.scale(&(v * w)));
                            }
                        }
                    }
                }
                if lhs != rhs {
                    return Err(Error::Inconsistent(format!(
                        "f/R compatibility fails at basis pair ({b}, {d})"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn trivial(double: Arc<DrinfeldDouble>) -> Result<Self> {
        let rep = DoubleRepresentation::trivial(Arc::clone(&double))?;
        rep_to_bimodule(&rep)
    }
}

/// f and R from a verified double representation.
pub fn rep_to_bimodule(rep: &DoubleRepresentation) -> Result<BicovariantBimodule> {
    rep.ensure_valid()?;
    let dim = rep.double.base_dim();
    let n = rep.n;
    let u = &rep.double.pair.dual;
    let f_alg = &rep.double.pair.algebra;

    let mut f = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            let coords: Vec<Scalar> = (0..dim).map(|a| rep.rho_f[a].get(i, j).clone()).collect();
            row.push(u.element(coords)?);
        }
        f.push(row);
    }

    // ρ(S̃⁻¹ e^A) expanded through the dual antipode inverse
    let su_inv = u.antipode_inverse_matrix();
    let mut rho_s: Vec<Matrix> = Vec::with_capacity(dim);
    for a in 0..dim {
        let mut m = Matrix::zeros(n, n);
        for b in 0..dim {
            let c = su_inv.get(a, b);
            if !c.is_zero() {
                m = m.add(&rep.rho_u[b].scale(c));
            }
        }
        rho_s.push(m);
    }

    let mut r = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            let coords: Vec<Scalar> = (0..dim).map(|a| rho_s[a].get(j, i).clone()).collect();
            row.push(f_alg.element(coords)?);
        }
        r.push(row);
    }

    BicovariantBimodule::new(Arc::clone(&rep.double), f, r)
}

/// Double representation from a bimodule; inverse of [`rep_to_bimodule`].
pub fn bimodule_to_rep(
    bim: &BicovariantBimodule,
    double: &Arc<DrinfeldDouble>,
) -> Result<DoubleRepresentation> {
    let dim = double.base_dim();
    let n = bim.n;
    let u = &double.pair.dual;

    let rho_f: Vec<Matrix> = (0..dim)
        .map(|a| Matrix::from_fn(n, n, |i, j| bim.f[i][j].coords[a].clone()))
        .collect();

    // matrix-element form read off R, then the double restriction (ρ_U ∘ S̃)^t
    let rho_u_from_r: Vec<Matrix> = (0..dim)
        .map(|a| Matrix::from_fn(n, n, |i, j| bim.r[i][j].coords[a].clone()))
        .collect();
    let su = u.antipode_matrix();
    let mut rho_u = Vec::with_capacity(dim);
    for a in 0..dim {
        let mut m = Matrix::zeros(n, n);
        for b in 0..dim {
            let c = su.get(a, b);
            if !c.is_zero() {
                m = m.add(&rho_u_from_r[b].scale(c));
            }
        }
        rho_u.push(m.transpose());
    }

    DoubleRepresentation::new(Arc::clone(double), n, rho_f, rho_u)
}

/// Braiding matrix Λ with rows (i,j) and columns (k,l),
/// Λ[(i,j)][(k,l)] = ⟨f_jl, R_ki⟩, checked against the representation of
/// the flipped inverse canonical element.
pub fn lambda_matrix(bim: &BicovariantBimodule) -> Result<Matrix> {
    let n = bim.n;
    let pairing = Matrix::from_fn(n * n, n * n, |row, col| {
        let (i, j) = (row / n, row % n);
        let (k, l) = (col / n, col % n);
        scalar::dot(&bim.f[j][l].coords, &bim.r[k][i].coords)
    });

    let rep = bimodule_to_rep(bim, &bim.double)?;
    let (_, r_inv) = bim.double.canonical_r()?;
    let mut via_canonical = Matrix::zeros(n * n, n * n);
    for (&(p, q), v) in &r_inv {
        let slot1 = rep.rho_d_basis(q);
        let slot2 = rep.rho_d_basis(p);
        for i in 0..n {
            for k in 0..n {
                let a = slot1.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    for l in 0..n {
                        let b = slot2.get(j, l);
                        if !b.is_zero() {
                            let cur = via_canonical.get(i * n + j, k * n + l) + v * a * b;
                            via_canonical.set(i * n + j, k * n + l, cur);
                        }
                    }
                }
            }
        }
    }

    if pairing != via_canonical {
        return Err(Error::Inconsistent(
            "braiding from the pairing disagrees with the canonical element".into(),
        ));
    }
    Ok(pairing)
}

/// Exact check of Λ₁₂Λ₁₃Λ₂₃ = Λ₂₃Λ₁₃Λ₁₂ on the tensor cube.
pub fn check_qybe(lambda: &Matrix) -> bool {
    let nn = lambda.nrows();
    if nn != lambda.ncols() {
        return false;
    }
    let n = (1..=nn).find(|k| k * k == nn).expect("square side") as usize;
    let cube = n * n * n;
    let entry = |i: usize, j: usize, k: usize, l: usize| lambda.get(i * n + j, k * n + l).clone();

    let mut l12 = Matrix::zeros(cube, cube);
    let mut l13 = Matrix::zeros(cube, cube);
    let mut l23 = Matrix::zeros(cube, cube);
    for p in 0..n {
        for q in 0..n {
            for r in 0..n {
                let row = (p * n + q) * n + r;
                for pp in 0..n {
                    for qq in 0..n {
                        for rr in 0..n {
                            let col = (pp * n + qq) * n + rr;
                            if r == rr {
                                l12.set(row, col, entry(p, q, pp, qq));
                            }
                            if q == qq {
                                l13.set(row, col, entry(p, r, pp, rr));
                            }
                            if p == pp {
                                l23.set(row, col, entry(q, r, qq, rr));
                            }
                        }
                    }
                }
            }
        }
    }
    let lhs = l12.mul(&l13).mul(&l23);
    let rhs = l23.mul(&l13).mul(&l12);
    lhs == rhs
}

/// ω_i · b = Σ_j (f_ij ⋆ b) ω_j.
pub fn module_right_action(
    bim: &BicovariantBimodule,
    i: usize,
    b: &AlgebraElement,
) -> Result<GammaElement> {
    let pair = &bim.double.pair;
    let coords = (0..bim.n)
        .map(|j| pair.star_left(&bim.f[i][j], b))
        .collect::<Result<_>>()?;
    Ok(GammaElement { coords })
}

/// Right action extended to a general element Σ a_i ω_i.
pub fn gamma_right_action(
    bim: &BicovariantBimodule,
    x: &GammaElement,
    b: &AlgebraElement,
) -> Result<GammaElement> {
    let mut coords = vec![bim.double.pair.algebra.zero_element(); bim.n];
    for (i, a) in x.coords.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let moved = module_right_action(bim, i, b)?;
        for (j, m) in moved.coords.iter().enumerate() {
            coords[j] = coords[j].add(&a.mul(m)?)?;
        }
    }
    Ok(GammaElement { coords })
}

/// Left multiplication a · (Σ b_i ω_i) = Σ (a b_i) ω_i.
pub fn gamma_left_mul(
    bim: &BicovariantBimodule,
    a: &AlgebraElement,
    x: &GammaElement,
) -> Result<GammaElement> {
    let _ = bim;
    let coords = x.coords.iter().map(|b| a.mul(b)).collect::<Result<_>>()?;
    Ok(GammaElement { coords })
}

/// Left coaction of Σ a_i ω_i, sparse over (F basis, F basis, ω index).
pub fn left_coaction(
    bim: &BicovariantBimodule,
    x: &GammaElement,
) -> BTreeMap<(usize, usize, usize), Scalar> {
    let f_alg = &bim.double.pair.algebra;
    let mut out = BTreeMap::new();
    for (i, a) in x.coords.iter().enumerate() {
        for ((p, q), v) in f_alg.coproduct_coords(&a.coords) {
            let entry = out.entry((p, q, i)).or_insert_with(scalar::zero);
            *entry += v;
        }
    }
    out.retain(|_, v: &mut Scalar| !v.is_zero());
    out
}

/// Right coaction of Σ a_i ω_i, sparse over (F basis, ω index, F basis).
pub fn right_coaction(
    bim: &BicovariantBimodule,
    x: &GammaElement,
) -> Result<BTreeMap<(usize, usize, usize), Scalar>> {
    let f_alg = &bim.double.pair.algebra;
    let mut out = BTreeMap::new();
    for (i, a) in x.coords.iter().enumerate() {
        for ((p, q), v) in f_alg.coproduct_coords(&a.coords) {
            for j in 0..bim.n {
                // second leg: a₍₂₎ R_ji
                let second =
                    f_alg.mul_coords(&scalar::basis_vec(f_alg.dim(), q), &bim.r[j][i].coords);
                for (t, w) in second.iter().enumerate() {
                    if !w.is_zero() {
                        let entry = out.entry((p, j, t)).or_insert_with(scalar::zero);
                        *entry += &v * w;
                    }
                }
            }
        }
    }
    out.retain(|_, v: &mut Scalar| !v.is_zero());
    Ok(out)
}

/// Bicovariance on a generator: (id ⊗ δ_R) δ_L(ω_i) = (δ_L ⊗ id) δ_R(ω_i).
pub fn check_bicovariance_on_generator(bim: &BicovariantBimodule, i: usize) -> Result<bool> {
    let f_alg = &bim.double.pair.algebra;
    let dim = f_alg.dim();
    let unit = f_alg.unit_coords();

    // lhs: 1 ⊗ δ_R(ω_i) = Σ_j 1 ⊗ ω_j ⊗ R_ji
    let mut lhs: BTreeMap<(usize, usize, usize, usize), Scalar> = BTreeMap::new();
    for j in 0..bim.n {
        for (p, up) in unit.iter().enumerate() {
            if up.is_zero() {
                continue;
            }
            for (t, w) in bim.r[j][i].coords.iter().enumerate() {
                if !w.is_zero() {
                    let entry = lhs.entry((p, j, t, 0)).or_insert_with(scalar::zero);
                    *entry += up * w;
                }
            }
        }
    }
    // rhs: Σ_j δ_L(ω_j) ⊗ R_ji = Σ_j 1 ⊗ ω_j ⊗ R_ji, built through the
    // left coaction so both code paths are exercised
    let mut rhs: BTreeMap<(usize, usize, usize, usize), Scalar> = BTreeMap::new();
    for j in 0..bim.n {
        let omega_j = GammaElement {
            coords: (0..bim.n)
                .map(|k| {
                    if k == j {
                        f_alg.unit_element()
                    } else {
                        f_alg.zero_element()
                    }
                })
                .collect(),
        };
        for ((p, q, k), v) in left_coaction(bim, &omega_j) {
            // left coaction lands in F ⊗ Γ; the Γ leg is e_q ω_k
            for (t, w) in bim.r[j][i].coords.iter().enumerate() {
                if !w.is_zero() && q < dim {
                    let entry = rhs.entry((p, k, t, q)).or_insert_with(scalar::zero);
                    *entry += &v * w;
                }
            }
        }
    }
    // Normalize: in lhs the Γ coefficient is the unit written as basis index
    // q folded into the (p, j, t, q) key with q the coefficient index of 1.
    let mut lhs_full: BTreeMap<(usize, usize, usize, usize), Scalar> = BTreeMap::new();
    for ((p, j, t, _), v) in lhs {
        for (q, uq) in unit.iter().enumerate() {
            if !uq.is_zero() {
                let entry = lhs_full.entry((p, j, t, q)).or_insert_with(scalar::zero);
                *entry += &v * uq;
            }
        }
    }
    lhs_full.retain(|_, v| !v.is_zero());
    rhs.retain(|_, v| !v.is_zero());
    Ok(lhs_full == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{FiniteGroup, GroupDoubleContext};
    use num_traits::One;

    fn z2_class_rep() -> (GroupDoubleContext, DoubleRepresentation) {
        let ctx = GroupDoubleContext::new(FiniteGroup::cyclic(2)).unwrap();
        let classes = ctx.classes();
        let rep = ctx.class_representation(&classes[1]).unwrap();
        (ctx, rep)
    }

    fn s3_class_rep(class_index: usize) -> (GroupDoubleContext, DoubleRepresentation) {
        let ctx = GroupDoubleContext::new(FiniteGroup::symmetric_3()).unwrap();
        let classes = ctx.classes();
        let rep = ctx.class_representation(&classes[class_index]).unwrap();
        (ctx, rep)
    }

    #[test]
    fn trivial_representation_verifies() {
        let ctx = GroupDoubleContext::new(FiniteGroup::symmetric_3()).unwrap();
        let rep = DoubleRepresentation::trivial(Arc::clone(&ctx.double)).unwrap();
        assert!(rep.verify().all_passed());
    }

    #[test]
    fn z2_class_representation_verifies() {
        let (_, rep) = z2_class_rep();
        assert!(rep.verify().all_passed());
        assert_eq!(rep.n, 1);
    }

    #[test]
    fn perturbed_representation_fails_with_witness() {
        let (ctx, rep) = z2_class_rep();
        let mut rho_f = rep.rho_f.clone();
        let bumped = rho_f[0].get(0, 0) + scalar::one();
        rho_f[0].set(0, 0, bumped);
        let broken = DoubleRepresentation::new_unchecked(
            Arc::clone(&ctx.double),
            1,
            rho_f,
            rep.rho_u.clone(),
        )
        .unwrap();
        let report = broken.verify();
        assert!(!report.all_passed());
        assert!(report
            .checks
            .iter()
            .any(|c| !c.passed && (c.witness.is_some() || c.name.starts_with("unit"))));
    }

    #[test]
    fn z2_class_bimodule_is_u_and_unit() {
        let (ctx, rep) = z2_class_rep();
        let bim = rep_to_bimodule(&rep).unwrap();
        assert_eq!(bim.n, 1);
        // f = [u], the nontrivial group-like of the dual
        assert_eq!(bim.f[0][0], ctx.double.pair.dual.basis_element(1));
        // R = [1_F]
        assert_eq!(bim.r[0][0], ctx.double.pair.algebra.unit_element());
    }

    #[test]
    fn trivial_bimodule_is_units() {
        let ctx = GroupDoubleContext::new(FiniteGroup::cyclic(2)).unwrap();
        let bim = BicovariantBimodule::trivial(Arc::clone(&ctx.double)).unwrap();
        assert_eq!(bim.f[0][0], ctx.double.pair.dual.unit_element());
        assert_eq!(bim.r[0][0], ctx.double.pair.algebra.unit_element());
    }

    #[test]
    fn round_trips_are_identities() {
        for (ctx, rep) in [z2_class_rep(), s3_class_rep(1), s3_class_rep(2)] {
            let bim = rep_to_bimodule(&rep).unwrap();
            let back = bimodule_to_rep(&bim, &ctx.double).unwrap();
            for a in 0..ctx.double.base_dim() {
                assert_eq!(rep.rho_f[a], back.rho_f[a]);
                assert_eq!(rep.rho_u[a], back.rho_u[a]);
            }
            let bim2 = rep_to_bimodule(&back).unwrap();
            for i in 0..bim.n {
                for j in 0..bim.n {
                    assert_eq!(bim.f[i][j], bim2.f[i][j]);
                    assert_eq!(bim.r[i][j], bim2.r[i][j]);
                }
            }
        }
    }

    #[test]
    fn lambda_for_small_fixtures() {
        let ctx = GroupDoubleContext::new(FiniteGroup::cyclic(2)).unwrap();
        let bim = BicovariantBimodule::trivial(Arc::clone(&ctx.double)).unwrap();
        let lambda = lambda_matrix(&bim).unwrap();
        assert!(lambda.is_identity());

        let (_, rep) = z2_class_rep();
        let bim = rep_to_bimodule(&rep).unwrap();
        let lambda = lambda_matrix(&bim).unwrap();
        assert!(lambda.is_identity());
        assert_eq!(lambda.nrows(), 1);
    }

    #[test]
    fn lambda_s3_transpositions_is_permutation_pattern() {
        let (_, rep) = s3_class_rep(1);
        let bim = rep_to_bimodule(&rep).unwrap();
        let lambda = lambda_matrix(&bim).unwrap();
        assert_eq!(lambda.nrows(), 9);
        for row in 0..9 {
            let ones = (0..9)
                .filter(|&c| !lambda.get(row, c).is_zero())
                .collect::<Vec<_>>();
            assert_eq!(ones.len(), 1, "row {row} not a permutation row");
            assert!(lambda.get(row, ones[0]).is_one());
        }
        assert!(check_qybe(&lambda));
    }

    #[test]
    fn qybe_identity_passes_and_generic_fails() {
        assert!(check_qybe(&Matrix::identity(4)));
        let mut bad = Matrix::identity(4);
        bad.set(0, 1, scalar::int(1));
        bad.set(2, 3, scalar::int(2));
        bad.set(3, 0, scalar::int(3));
        assert!(!check_qybe(&bad));
    }

    #[test]
    fn right_action_examples() {
        let (ctx, rep) = z2_class_rep();
        let bim = rep_to_bimodule(&rep).unwrap();
        let f_alg = &ctx.double.pair.algebra;

        // b = 1 leaves ω fixed
        let moved = module_right_action(&bim, 0, &f_alg.unit_element()).unwrap();
        assert_eq!(moved.coords[0], f_alg.unit_element());

        // ω · δ_u = δ_e ω and ω · δ_e = δ_u ω
        let moved = module_right_action(&bim, 0, &f_alg.basis_element(1)).unwrap();
        assert_eq!(moved.coords[0], f_alg.basis_element(0));
        let moved = module_right_action(&bim, 0, &f_alg.basis_element(0)).unwrap();
        assert_eq!(moved.coords[0], f_alg.basis_element(1));
    }

    #[test]
    fn right_module_axiom_on_s3() {
        let (ctx, rep) = s3_class_rep(1);
        let bim = rep_to_bimodule(&rep).unwrap();
        let f_alg = &ctx.double.pair.algebra;
        let omega0 = GammaElement {
            coords: (0..bim.n)
                .map(|k| {
                    if k == 0 {
                        f_alg.unit_element()
                    } else {
                        f_alg.zero_element()
                    }
                })
                .collect(),
        };
        for a in 0..f_alg.dim() {
            for b in 0..f_alg.dim() {
                let ea = f_alg.basis_element(a);
                let eb = f_alg.basis_element(b);
                let step = gamma_right_action(&bim, &omega0, &ea).unwrap();
                let lhs = gamma_right_action(&bim, &step, &eb).unwrap();
                let rhs = gamma_right_action(&bim, &omega0, &ea.mul(&eb).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn coaction_examples() {
        let (ctx, rep) = z2_class_rep();
        let bim = rep_to_bimodule(&rep).unwrap();
        let f_alg = &ctx.double.pair.algebra;
        let omega = GammaElement {
            coords: vec![f_alg.unit_element()],
        };
        // left coaction of ω is 1 ⊗ ω
        let left = left_coaction(&bim, &omega);
        let mut expected = BTreeMap::new();
        for (p, up) in f_alg.unit_coords().iter().enumerate() {
            for (q, uq) in f_alg.unit_coords().iter().enumerate() {
                if !up.is_zero() && !uq.is_zero() {
                    expected.insert((p, q, 0usize), up * uq);
                }
            }
        }
        assert_eq!(left, expected);

        // right coaction of ω is ω ⊗ 1 because R = [1]
        let right = right_coaction(&bim, &omega).unwrap();
        let mut expected = BTreeMap::new();
        for (p, up) in f_alg.unit_coords().iter().enumerate() {
            for (t, ut) in f_alg.unit_coords().iter().enumerate() {
                if !up.is_zero() && !ut.is_zero() {
                    expected.insert((p, 0usize, t), up * ut);
                }
            }
        }
        assert_eq!(right, expected);
    }

    #[test]
    fn right_coaction_on_s3_generators_uses_r() {
        let (ctx, rep) = s3_class_rep(1);
        let bim = rep_to_bimodule(&rep).unwrap();
        let f_alg = &ctx.double.pair.algebra;
        for i in 0..bim.n {
            let omega_i = GammaElement {
                coords: (0..bim.n)
                    .map(|k| {
                        if k == i {
                            f_alg.unit_element()
                        } else {
                            f_alg.zero_element()
                        }
                    })
                    .collect(),
            };
            let right = right_coaction(&bim, &omega_i).unwrap();
            let mut expected = BTreeMap::new();
            for j in 0..bim.n {
                for (p, up) in f_alg.unit_coords().iter().enumerate() {
                    if up.is_zero() {
                        continue;
                    }
                    for (t, w) in bim.r[j][i].coords.iter().enumerate() {
                        if !w.is_zero() {
                            let e = expected.entry((p, j, t)).or_insert_with(scalar::zero);
                            *e += up * w;
                        }
                    }
                }
            }
            assert_eq!(right, expected);
            assert!(check_bicovariance_on_generator(&bim, i).unwrap());
        }
    }
}
