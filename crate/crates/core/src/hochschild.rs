//! Hochschild cochains with values in the space of invariant forms.
//!
//! The carrier of an n-dimensional double representation becomes a bimodule
//! through α·v = ε(α)v and v·α = ρ(α)ᵗv; cochains are stored by their
//! values on basis tuples and the coboundary is the usual alternating sum.
//! Degrees 0 and 1 are supported (the degree-2 target of δ¹ is built
//! internally). The same machinery runs over the double and over the
//! function algebra; the bridge between the two pictures is the universal
//! cocycle α ↦ Ad_{S̃(X)}(a) − ε(a)ε(X) with values in ker ε.

use std::sync::Arc;

use num_traits::Zero;

use crate::bimodule::{rep_to_bimodule, DoubleRepresentation, GammaElement};
use crate::calculus::{self, FirstOrderCalculus};
use crate::double::DrinfeldDouble;
use crate::linalg::{Eliminator, Matrix};
use crate::scalar::{self, Scalar};
use crate::{Error, Result};

/// Which algebra the cochain arguments run over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CochainBase {
    Double,
    Function,
}

/// The invariant-form bimodule attached to a double representation.
#[derive(Clone)]
pub struct InvGammaBimodule {
    pub rep: DoubleRepresentation,
}

impl InvGammaBimodule {
    pub fn new(rep: DoubleRepresentation) -> Self {
        InvGammaBimodule { rep }
    }

    pub fn carrier_dim(&self) -> usize {
        self.rep.n
    }

    pub fn base_dim(&self, base: CochainBase) -> usize {
        match base {
            CochainBase::Double => self.rep.double.dim(),
            CochainBase::Function => self.rep.double.base_dim(),
        }
    }

    fn counit(&self, base: CochainBase, idx: usize) -> Scalar {
        match base {
            CochainBase::Double => {
                let (a, b) = self.rep.double.unindex(idx);
                let f = &self.rep.double.pair.algebra;
                let u = &self.rep.double.pair.dual;
                &f.counit_vector()[a] * &u.counit_vector()[b]
            }
            CochainBase::Function => self.rep.double.pair.algebra.counit_vector()[idx].clone(),
        }
    }

    fn rho(&self, base: CochainBase, idx: usize) -> &Matrix {
        match base {
            CochainBase::Double => self.rep.rho_d_basis(idx),
            CochainBase::Function => &self.rep.rho_f[idx],
        }
    }

    /// v · α = ρ(α)ᵗ v on a basis index of the chosen base.
    pub fn right_action(&self, base: CochainBase, idx: usize, v: &[Scalar]) -> Vec<Scalar> {
        self.rho(base, idx).transpose().apply(v)
    }

    fn mult_basis(&self, base: CochainBase, a: usize, b: usize) -> Result<Vec<(usize, Scalar)>> {
        match base {
            CochainBase::Double => {
                let hopf = self.rep.double.as_hopf()?;
                Ok(hopf.mult_basis(a, b).to_vec())
            }
            CochainBase::Function => Ok(self.rep.double.pair.algebra.mult_basis(a, b).to_vec()),
        }
    }
}

/// Multilinear map stored by its values on basis tuples.
#[derive(Clone, Debug, PartialEq)]
pub struct Cochain {
    pub base: CochainBase,
    pub degree: usize,
    /// Degree 0: one vector. Degree k: one vector per basis k-tuple, indexed
    /// row-major.
    pub values: Vec<Vec<Scalar>>,
}

impl Cochain {
    pub fn zero(base: CochainBase, degree: usize, basis_dim: usize, n: usize) -> Self {
        let slots = basis_dim.pow(degree as u32);
        Cochain {
            base,
            degree,
            values: vec![scalar::zeros(n); slots],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| scalar::is_zero_vec(v))
    }

    pub fn scale(&self, c: &Scalar) -> Cochain {
        Cochain {
            base: self.base,
            degree: self.degree,
            values: self
                .values
                .iter()
                .map(|v| scalar::scale_vec(v, c))
                .collect(),
        }
    }

    pub fn add(&self, other: &Cochain) -> Cochain {
        assert_eq!(self.base, other.base);
        assert_eq!(self.degree, other.degree);
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
            .collect();
        Cochain {
            base: self.base,
            degree: self.degree,
            values,
        }
    }

    pub fn flatten(&self) -> Vec<Scalar> {
        self.values.iter().flatten().cloned().collect()
    }

    pub fn from_flat(
        base: CochainBase,
        degree: usize,
        basis_dim: usize,
        n: usize,
        flat: &[Scalar],
    ) -> Self {
        let slots = basis_dim.pow(degree as u32);
        assert_eq!(flat.len(), slots * n);
        Cochain {
            base,
            degree,
            values: flat.chunks(n).map(<[Scalar]>::to_vec).collect(),
        }
    }

    /// Value on a linear combination of basis elements (degree 1).
    pub fn eval(&self, coords: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.degree, 1);
        let n = self.values[0].len();
        let mut out = scalar::zeros(n);
        for (i, c) in coords.iter().enumerate() {
            if !c.is_zero() {
                for (slot, v) in out.iter_mut().zip(&self.values[i]) {
                    *slot += c * v;
                }
            }
        }
        out
    }
}

/// The standard coboundary; degree 0 → 1 and 1 → 2.
pub fn coboundary(bim: &InvGammaBimodule, phi: &Cochain) -> Result<Cochain> {
    let base = phi.base;
    let bd = bim.base_dim(base);
    let n = bim.carrier_dim();
    match phi.degree {
        0 => {
            let gamma = &phi.values[0];
            let mut out = Cochain::zero(base, 1, bd, n);
            for a in 0..bd {
                let eps = bim.counit(base, a);
                let acted = bim.right_action(base, a, gamma);
                out.values[a] = gamma
                    .iter()
                    .zip(&acted)
                    .map(|(g, r)| &eps * g - r)
                    .collect();
            }
            Ok(out)
        }
        1 => {
            let mut out = Cochain::zero(base, 2, bd, n);
            for a1 in 0..bd {
                let eps1 = bim.counit(base, a1);
                for a2 in 0..bd {
                    let mut v = scalar::scale_vec(&phi.values[a2], &eps1);
                    for (c, m) in bim.mult_basis(base, a1, a2)? {
                        for (slot, pv) in v.iter_mut().zip(&phi.values[c]) {
                            *slot -= &m * pv;
                        }
                    }
                    let acted = bim.right_action(base, a2, &phi.values[a1]);
                    for (slot, r) in v.iter_mut().zip(&acted) {
                        *slot += r;
                    }
                    out.values[a1 * bd + a2] = v;
                }
            }
            Ok(out)
        }
        d => Err(Error::InvalidInput(format!(
            "coboundary implemented for degrees 0 and 1, got {d}"
        ))),
    }
}

/// Dimensions and bases of cocycles, coboundaries and cohomology.
pub struct CohomologyReport {
    pub base: CochainBase,
    pub degree: usize,
    pub z_dim: usize,
    pub b_dim: usize,
    pub h_dim: usize,
    pub z_basis: Vec<Cochain>,
    pub b_basis: Vec<Cochain>,
}

/// Exact kernel of δ¹ as a basis of 1-cocycles.
pub fn z1_basis(bim: &InvGammaBimodule, base: CochainBase) -> Result<Vec<Cochain>> {
    let bd = bim.base_dim(base);
    let n = bim.carrier_dim();
    let cols = bd * n;
    let mut elim = Eliminator::new(cols);
    for a1 in 0..bd {
        let eps1 = bim.counit(base, a1);
        for a2 in 0..bd {
            let rho2t = bim.rho(base, a2).transpose();
            let products = bim.mult_basis(base, a1, a2)?;
            for t in 0..n {
                let mut row: Vec<(usize, Scalar)> = Vec::new();
                if !eps1.is_zero() {
                    row.push((a2 * n + t, eps1.clone()));
                }
                for (c, m) in &products {
                    row.push((c * n + t, -m.clone()));
                }
                for s in 0..n {
                    let r = rho2t.get(t, s);
                    if !r.is_zero() {
                        row.push((a1 * n + s, r.clone()));
                    }
                }
                elim.push_sparse(&row);
            }
        }
    }
    Ok(elim
        .kernel_basis()
        .into_iter()
        .map(|flat| Cochain::from_flat(base, 1, bd, n, &flat))
        .collect())
}

/// Independent coboundaries δγ over a basis of 0-cochains.
pub fn b1_basis(bim: &InvGammaBimodule, base: CochainBase) -> Result<Vec<Cochain>> {
    let n = bim.carrier_dim();
    let bd = bim.base_dim(base);
    let mut picked = Vec::new();
    let mut elim = Eliminator::new(bd * n);
    for i in 0..n {
        let gamma = Cochain {
            base,
            degree: 0,
            values: vec![scalar::basis_vec(n, i)],
        };
        let image = coboundary(bim, &gamma)?;
        let rank_before = elim.rank();
        elim.push_dense(&image.flatten());
        if elim.rank() > rank_before {
            picked.push(image);
        }
    }
    Ok(picked)
}

/// Cocycles, coboundaries and cohomology in degree `k ∈ {0, 1}`.
pub fn cohomology_spaces(
    bim: &InvGammaBimodule,
    base: CochainBase,
    k: usize,
) -> Result<CohomologyReport> {
    let n = bim.carrier_dim();
    let bd = bim.base_dim(base);
    match k {
        0 => {
            let mut elim = Eliminator::new(n);
            for a in 0..bd {
                let eps = bim.counit(base, a);
                let rho_t = bim.rho(base, a).transpose();
                for t in 0..n {
                    let mut row: Vec<(usize, Scalar)> = Vec::new();
                    for s in 0..n {
                        let mut coeff = -rho_t.get(t, s).clone();
                        if s == t {
                            coeff += &eps;
                        }
                        if !coeff.is_zero() {
                            row.push((s, coeff));
                        }
                    }
                    elim.push_sparse(&row);
                }
            }
            let z_basis: Vec<Cochain> = elim
                .kernel_basis()
                .into_iter()
                .map(|v| Cochain {
                    base,
                    degree: 0,
                    values: vec![v],
                })
                .collect();
            Ok(CohomologyReport {
                base,
                degree: 0,
                z_dim: z_basis.len(),
                b_dim: 0,
                h_dim: z_basis.len(),
                z_basis,
                b_basis: Vec::new(),
            })
        }
        1 => {
            let z_basis = z1_basis(bim, base)?;
            let b_basis = b1_basis(bim, base)?;
            // coboundaries are cocycles, exactly
            for b in &b_basis {
                if !coboundary(bim, b)?.is_zero() {
                    return Err(Error::Inconsistent(
                        "a coboundary failed the cocycle condition".into(),
                    ));
                }
            }
            let z_dim = z_basis.len();
            let b_dim = b_basis.len();
            Ok(CohomologyReport {
                base,
                degree: 1,
                z_dim,
                b_dim,
                h_dim: z_dim - b_dim,
                z_basis,
                b_basis,
            })
        }
        d => Err(Error::InvalidInput(format!(
            "cohomology implemented for degrees 0 and 1, got {d}"
        ))),
    }
}

/// Does δγ = φ have a solution? Returns the preimage when it exists.
pub fn coboundary_preimage(bim: &InvGammaBimodule, phi: &Cochain) -> Result<Option<Vec<Scalar>>> {
    let n = bim.carrier_dim();
    let bd = bim.base_dim(phi.base);
    let target = phi.flatten();
    let rows = bd * n;
    let mut a = Matrix::zeros(rows, n);
    for i in 0..n {
        let gamma = Cochain {
            base: phi.base,
            degree: 0,
            values: vec![scalar::basis_vec(n, i)],
        };
        let image = coboundary(bim, &gamma)?.flatten();
        for (r, v) in image.into_iter().enumerate() {
            a.set(r, i, v);
        }
    }
    Ok(a.solve(&target))
}

/// The 1-cocycle over the double attached to a calculus. On the function
/// factor φ(a) = (⟨χ_i, a⟩)_i; a dual factor is transported through the
/// right action, φ(a X) = ρ(X)ᵗ φ(a), which reduces to ε(X) φ(a) exactly
/// when the dual factor acts trivially on the carrier. δφ = 0 and φ|_U = 0
/// are both checked.
pub fn calculus_to_cocycle(calc: &FirstOrderCalculus) -> Result<Cochain> {
    let rep = &calc.rep;
    let double = &rep.double;
    let ddim = double.dim();
    let n = rep.n;
    let chi = calc.chi_coords();

    let mut values = Vec::with_capacity(ddim);
    for i in 0..ddim {
        let (a, b) = double.unindex(i);
        let on_function: Vec<Scalar> = (0..n).map(|k| chi[k][a].clone()).collect();
        values.push(rep.rho_u[b].transpose().apply(&on_function));
    }
    let phi = Cochain {
        base: CochainBase::Double,
        degree: 1,
        values,
    };

    let bim = InvGammaBimodule::new(rep.clone());
    if !coboundary(&bim, &phi)?.is_zero() {
        return Err(Error::Inconsistent("calculus cocycle is not closed".into()));
    }
    if !vanishes_on_dual(&phi, double) {
        return Err(Error::Inconsistent(
            "calculus cocycle does not vanish on the dual factor".into(),
        ));
    }
    Ok(phi)
}

/// φ evaluated on the embedded dual factor is identically zero.
pub fn vanishes_on_dual(phi: &Cochain, double: &Arc<DrinfeldDouble>) -> bool {
    debug_assert_eq!(phi.base, CochainBase::Double);
    let dim = double.base_dim();
    (0..dim).all(|b| {
        let emb = double.embed_u_coords(&scalar::basis_vec(dim, b));
        scalar::is_zero_vec(&phi.eval(&emb.coords))
    })
}

/// χ recovered from a closed cochain vanishing on the dual factor; the
/// calculus conditions are re-derived rather than assumed.
pub fn cocycle_to_calculus(
    phi: &Cochain,
    rep: &DoubleRepresentation,
) -> Result<FirstOrderCalculus> {
    if phi.base != CochainBase::Double || phi.degree != 1 {
        return Err(Error::InvalidInput(
            "expected a degree-1 cochain over the double".into(),
        ));
    }
    let double = &rep.double;
    let bim = InvGammaBimodule::new(rep.clone());
    if !coboundary(&bim, phi)?.is_zero() {
        return Err(Error::InvalidInput("cochain is not a cocycle".into()));
    }
    if !vanishes_on_dual(phi, double) {
        return Err(Error::InvalidInput(
            "cocycle does not vanish on the dual factor".into(),
        ));
    }
    let dim = double.base_dim();
    let n = rep.n;
    let mut chi = vec![scalar::zeros(dim); n];
    for a in 0..dim {
        let emb = double.embed_f_coords(&scalar::basis_vec(dim, a));
        let v = phi.eval(&emb.coords);
        for i in 0..n {
            chi[i][a] = v[i].clone();
        }
    }
    calculus::build_calculus(rep, chi)
}

/// Restriction of a double cochain to the embedded function algebra.
pub fn restrict_to_function_algebra(phi: &Cochain, double: &Arc<DrinfeldDouble>) -> Cochain {
    debug_assert_eq!(phi.base, CochainBase::Double);
    let dim = double.base_dim();
    let values = (0..dim)
        .map(|a| {
            let emb = double.embed_f_coords(&scalar::basis_vec(dim, a));
            phi.eval(&emb.coords)
        })
        .collect();
    Cochain {
        base: CochainBase::Function,
        degree: 1,
        values,
    }
}

/// Action of a dual element on function-algebra cochains,
/// (ψ • X)(a) = Σ ρ(X₍₂₎)ᵗ ψ(Ad_{X₍₁₎}(a)); degree 0 drops the argument legs.
pub fn bullet_action(bim: &InvGammaBimodule, psi: &Cochain, x: &[Scalar]) -> Result<Cochain> {
    if psi.base != CochainBase::Function {
        return Err(Error::InvalidInput(
            "the dual action is defined on function-algebra cochains".into(),
        ));
    }
    let pair = &bim.rep.double.pair;
    let u = &pair.dual;
    let dim = u.dim();
    let n = bim.carrier_dim();
    match psi.degree {
        0 => {
            let mut out = scalar::zeros(n);
            for (b, xb) in x.iter().enumerate() {
                if xb.is_zero() {
                    continue;
                }
                let acted = bim.rep.rho_u[b].transpose().apply(&psi.values[0]);
                for (slot, v) in out.iter_mut().zip(&acted) {
                    *slot += xb * v;
                }
            }
            Ok(Cochain {
                base: CochainBase::Function,
                degree: 0,
                values: vec![out],
            })
        }
        1 => {
            let mut out = Cochain::zero(CochainBase::Function, 1, dim, n);
            for (b, xb) in x.iter().enumerate() {
                if xb.is_zero() {
                    continue;
                }
                for (leg1, leg2, v) in u.comult_basis(b) {
                    let coeff = xb * v;
                    for a in 0..dim {
                        let moved = pair.big_ad_coords(
                            &scalar::basis_vec(dim, *leg1),
                            &scalar::basis_vec(dim, a),
                        );
                        let inner = psi.eval_on_function(&moved);
                        let acted = bim.rep.rho_u[*leg2].transpose().apply(&inner);
                        for (slot, av) in out.values[a].iter_mut().zip(&acted) {
                            *slot += &coeff * av;
                        }
                    }
                }
            }
            Ok(out)
        }
        d => Err(Error::InvalidInput(format!(
            "dual action implemented for degrees 0 and 1, got {d}"
        ))),
    }
}

impl Cochain {
    /// Degree-1 evaluation for function-base cochains.
    fn eval_on_function(&self, coords: &[Scalar]) -> Vec<Scalar> {
        self.eval(coords)
    }
}

/// Sub-basis of the span of `cochains` invariant under the dual action.
pub fn invariant_subspace(bim: &InvGammaBimodule, cochains: &[Cochain]) -> Result<Vec<Cochain>> {
    if cochains.is_empty() {
        return Ok(Vec::new());
    }
    let u = &bim.rep.double.pair.dual;
    let dim = u.dim();
    let images: Vec<Vec<Vec<Scalar>>> = cochains
        .iter()
        .map(|psi| {
            (0..dim)
                .map(|b| {
                    let moved = bullet_action(bim, psi, &scalar::basis_vec(dim, b))?;
                    let eps = &u.counit_vector()[b];
                    let diff = moved.add(&psi.scale(&-eps.clone()));
                    Ok(diff.flatten())
                })
                .collect::<Result<_>>()
        })
        .collect::<Result<_>>()?;

    let slot_len = images[0][0].len();
    let mut elim = Eliminator::new(cochains.len());
    for b in 0..dim {
        for t in 0..slot_len {
            let row: Vec<(usize, Scalar)> = (0..cochains.len())
                .map(|s| (s, images[s][b][t].clone()))
                .filter(|(_, v)| !v.is_zero())
                .collect();
            elim.push_sparse(&row);
        }
    }
    let combos = elim.kernel_basis();
    Ok(combos
        .into_iter()
        .map(|coeffs| {
            let mut acc = cochains[0].scale(&coeffs[0]);
            for (c, psi) in coeffs.iter().zip(cochains).skip(1) {
                acc = acc.add(&psi.scale(c));
            }
            acc
        })
        .collect())
}

/// 0-cochains with ρ(X)ᵗγ = ε(X)γ for every dual basis element.
pub fn invariant_zero_cochains(bim: &InvGammaBimodule) -> Vec<Vec<Scalar>> {
    let u = &bim.rep.double.pair.dual;
    let dim = u.dim();
    let n = bim.carrier_dim();
    let mut elim = Eliminator::new(n);
    for b in 0..dim {
        let rho_t = bim.rep.rho_u[b].transpose();
        let eps = &u.counit_vector()[b];
        for t in 0..n {
            let mut row: Vec<(usize, Scalar)> = Vec::new();
            for s in 0..n {
                let mut coeff = rho_t.get(t, s).clone();
                if s == t {
                    coeff -= eps;
                }
                if !coeff.is_zero() {
                    row.push((s, coeff));
                }
            }
            elim.push_sparse(&row);
        }
    }
    elim.kernel_basis()
}

/// The one-forms produced by an invariant 0-cochain through the commutator
/// da = (1 ⊗ γ)a − a(1 ⊗ γ), oriented to agree with the crate's sign
/// convention χ_g = g − e for class calculi (γ ↦ −γ gives the opposite
/// orientation).
pub struct InnerDifferential {
    /// Image of every basis element of the function algebra.
    pub images: Vec<GammaElement>,
    pub left_invariant: bool,
    pub right_invariant: bool,
}

pub fn inner_differential(bim: &InvGammaBimodule, gamma: &[Scalar]) -> Result<InnerDifferential> {
    let u = &bim.rep.double.pair.dual;
    let f = &bim.rep.double.pair.algebra;
    let dim = f.dim();
    let n = bim.carrier_dim();
    if gamma.len() != n {
        return Err(Error::Shape("invariant cochain has wrong length".into()));
    }
    for b in 0..dim {
        let acted = bim.rep.rho_u[b].transpose().apply(gamma);
        let expected = scalar::scale_vec(gamma, &u.counit_vector()[b]);
        if acted != expected {
            return Err(Error::InvalidInput(format!(
                "0-cochain is not invariant under basis functional {b}"
            )));
        }
    }

    // da = −Σ a₍₁₎ ⊗ (δγ)(a₍₂₎), the orientation matching χ_g = g − e
    let mut images = Vec::with_capacity(dim);
    for a in 0..dim {
        let mut coords = vec![f.zero_element(); n];
        for (p, q, v) in f.comult_basis(a) {
            let eps = &f.counit_vector()[*q];
            let acted = bim.rep.rho_f[*q].transpose().apply(gamma);
            for i in 0..n {
                let w = v * (&acted[i] - eps * &gamma[i]);
                if !w.is_zero() {
                    let mut add = scalar::zeros(dim);
                    add[*p] = w;
                    coords[i] = coords[i].add(&f.element(add)?)?;
                }
            }
        }
        images.push(GammaElement { coords });
    }

    // γ is right-invariant when Σ_i R_ji γ_i = γ_j 1 for every j
    let bimodule = rep_to_bimodule(&bim.rep)?;
    let mut right_invariant = true;
    for j in 0..n {
        let mut acc = f.zero_element();
        for i in 0..n {
            acc = acc.add(&bimodule.r[j][i].scale(&gamma[i]))?;
        }
        let expected = f.unit_element().scale(&gamma[j]);
        if acc != expected {
            right_invariant = false;
        }
    }

    // left coaction of 1 ⊗ γ must be 1 ⊗ (1 ⊗ γ)
    let gamma_form = GammaElement {
        coords: gamma.iter().map(|c| f.unit_element().scale(c)).collect(),
    };
    let coaction = crate::bimodule::left_coaction(&bimodule, &gamma_form);
    let mut expected = std::collections::BTreeMap::new();
    for (p, up) in f.unit_coords().iter().enumerate() {
        if up.is_zero() {
            continue;
        }
        for (q, uq) in f.unit_coords().iter().enumerate() {
            if uq.is_zero() {
                continue;
            }
            for (i, c) in gamma.iter().enumerate() {
                let v = up * uq * c;
                if !v.is_zero() {
                    let entry = expected.entry((p, q, i)).or_insert_with(scalar::zero);
                    *entry += v;
                }
            }
        }
    }
    expected.retain(|_, v: &mut Scalar| !v.is_zero());
    let left_invariant = coaction == expected;

    Ok(InnerDifferential {
        images,
        left_invariant,
        right_invariant,
    })
}

/// The universal cocycle over the double, valued in ker ε through the
/// projection a ↦ a − ε(a)1.
pub struct UniversalCocycle {
    /// Value in the function algebra for every double basis element.
    pub values: Vec<Vec<Scalar>>,
}

pub fn universal_cocycle(double: &Arc<DrinfeldDouble>) -> Result<UniversalCocycle> {
    let dim = double.base_dim();
    let ddim = double.dim();
    let pair = &double.pair;
    let f = &pair.algebra;
    let u = &pair.dual;

    let mut values = Vec::with_capacity(ddim);
    for i in 0..ddim {
        let (a, b) = double.unindex(i);
        // S̃ restricted to the dual factor
        let sx: Vec<Scalar> = (0..dim)
            .map(|t| u.antipode_matrix().get(b, t).clone())
            .collect();
        let mut v = pair.big_ad_coords(&sx, &scalar::basis_vec(dim, a));
        let correction = &f.counit_vector()[a] * &u.counit_vector()[b];
        if !correction.is_zero() {
            for (slot, unit) in v.iter_mut().zip(f.unit_coords()) {
                *slot -= &correction * unit;
            }
        }
        values.push(v);
    }
    Ok(UniversalCocycle { values })
}

impl UniversalCocycle {
    pub fn eval(&self, coords: &[Scalar]) -> Vec<Scalar> {
        let dim_f = self.values[0].len();
        let mut out = scalar::zeros(dim_f);
        for (i, c) in coords.iter().enumerate() {
            if !c.is_zero() {
                for (slot, v) in out.iter_mut().zip(&self.values[i]) {
                    *slot += c * v;
                }
            }
        }
        out
    }
}

/// Checks of the universal cocycle: closedness for the ker ε bimodule,
/// vanishing on the dual factor, and the explicit form a − ε(a)1 on the
/// function factor.
pub struct UniversalReport {
    pub delta_is_zero: bool,
    pub vanishes_on_dual: bool,
    pub projection_on_functions: bool,
}

impl UniversalReport {
    pub fn passed(&self) -> bool {
        self.delta_is_zero && self.vanishes_on_dual && self.projection_on_functions
    }
}

pub fn verify_universal_cocycle(
    double: &Arc<DrinfeldDouble>,
    phi: &UniversalCocycle,
) -> Result<UniversalReport> {
    let dim = double.base_dim();
    let ddim = double.dim();
    let pair = &double.pair;
    let f = &pair.algebra;
    let u = &pair.dual;
    let hopf = double.as_hopf()?;

    // right action of a double basis element on h ∈ ker ε:
    // h · (e_b e^y) = Ad_{S̃(e^y)}(h e_b)
    let right_act = |h: &[Scalar], j: usize| -> Vec<Scalar> {
        let (b, y) = double.unindex(j);
        let hb = f.mul_coords(h, &scalar::basis_vec(dim, b));
        let sy: Vec<Scalar> = (0..dim)
            .map(|t| u.antipode_matrix().get(y, t).clone())
            .collect();
        pair.big_ad_coords(&sy, &hb)
    };

    let mut delta_is_zero = true;
    'outer: for i in 0..ddim {
        let eps_i = hopf.counit_of(&scalar::basis_vec(ddim, i));
        for j in 0..ddim {
            // ε(α) φ(β) − φ(αβ) + φ(α)·β
            let mut v = scalar::scale_vec(&phi.values[j], &eps_i);
            for (c, m) in hopf.mult_basis(i, j) {
                for (slot, pv) in v.iter_mut().zip(&phi.values[*c]) {
                    *slot -= m * pv;
                }
            }
            let acted = right_act(&phi.values[i], j);
            for (slot, av) in v.iter_mut().zip(&acted) {
                *slot += av;
            }
            if !scalar::is_zero_vec(&v) {
                delta_is_zero = false;
                break 'outer;
            }
        }
    }

    let vanishes_on_dual = (0..dim).all(|b| {
        let emb = double.embed_u_coords(&scalar::basis_vec(dim, b));
        scalar::is_zero_vec(&phi.eval(&emb.coords))
    });

    let projection_on_functions = (0..dim).all(|a| {
        let emb = double.embed_f_coords(&scalar::basis_vec(dim, a));
        let got = phi.eval(&emb.coords);
        let mut expected = scalar::basis_vec(dim, a);
        let eps = &f.counit_vector()[a];
        for (slot, unit) in expected.iter_mut().zip(f.unit_coords()) {
            *slot -= eps * unit;
        }
        got == expected
    });

    Ok(UniversalReport {
        delta_is_zero,
        vanishes_on_dual,
        projection_on_functions,
    })
}

/// ψ ∘ φ̂ as a cochain over the double.
pub fn compose_with_universal(bim: &InvGammaBimodule, psi: &Cochain) -> Result<Cochain> {
    if psi.base != CochainBase::Function || psi.degree != 1 {
        return Err(Error::InvalidInput(
            "expected a degree-1 function-algebra cochain".into(),
        ));
    }
    let double = &bim.rep.double;
    let phi_hat = universal_cocycle(double)?;
    let ddim = double.dim();
    let values = (0..ddim).map(|i| psi.eval(&phi_hat.values[i])).collect();
    Ok(Cochain {
        base: CochainBase::Double,
        degree: 1,
        values,
    })
}

/// The universal differential identity r ∘ D = D′ on every basis element,
/// and the image of ker m under r landing in F ⊗ ker ε.
pub fn universal_differential_check(f: &Arc<crate::hopf::HopfAlgebra>) -> Result<bool> {
    let dim = f.dim();
    type Sparse2 = std::collections::BTreeMap<(usize, usize), Scalar>;

    let r_map = |x: &Sparse2| -> Sparse2 {
        let mut out = Sparse2::new();
        for (&(a, b), v) in x {
            for (p, q, w) in f.comult_basis(b) {
                let prod = f.mul_coords(&scalar::basis_vec(dim, a), &scalar::basis_vec(dim, *p));
                for (t, pv) in prod.iter().enumerate() {
                    if !pv.is_zero() {
                        let entry = out.entry((t, *q)).or_insert_with(scalar::zero);
                        *entry += v * w * pv;
                    }
                }
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    };

    for a in 0..dim {
        // D a = 1 ⊗ a − a ⊗ 1
        let mut d_a = Sparse2::new();
        for (i, ui) in f.unit_coords().iter().enumerate() {
            if !ui.is_zero() {
                *d_a.entry((i, a)).or_insert_with(scalar::zero) += ui;
                *d_a.entry((a, i)).or_insert_with(scalar::zero) -= ui;
            }
        }
        d_a.retain(|_, v| !v.is_zero());
        // D′ a = Δa − a ⊗ 1
        let mut d_prime = Sparse2::new();
        for (p, q, w) in f.comult_basis(a) {
            *d_prime.entry((*p, *q)).or_insert_with(scalar::zero) += w;
        }
        for (i, ui) in f.unit_coords().iter().enumerate() {
            if !ui.is_zero() {
                *d_prime.entry((a, i)).or_insert_with(scalar::zero) -= ui;
            }
        }
        d_prime.retain(|_, v| !v.is_zero());
        if r_map(&d_a) != d_prime {
            return Ok(false);
        }
    }

    // r(ker m) ⊆ F ⊗ ker ε
    let mut elim = Eliminator::new(dim * dim);
    for c in 0..dim {
        let mut row: Vec<(usize, Scalar)> = Vec::new();
        for a in 0..dim {
            for b in 0..dim {
                for (cc, m) in f.mult_basis(a, b) {
                    if *cc == c && !m.is_zero() {
                        row.push((a * dim + b, m.clone()));
                    }
                }
            }
        }
        elim.push_sparse(&row);
    }
    for v in elim.kernel_basis() {
        let mut x = Sparse2::new();
        for (flat, c) in v.iter().enumerate() {
            if !c.is_zero() {
                x.insert((flat / dim, flat % dim), c.clone());
            }
        }
        let image = r_map(&x);
        // apply id ⊗ ε
        let mut collapsed = scalar::zeros(dim);
        for (&(p, q), w) in &image {
            let eps = &f.counit_vector()[q];
            if !eps.is_zero() {
                collapsed[p] += w * eps;
            }
        }
        if !scalar::is_zero_vec(&collapsed) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Equal dimensions and mutually inverse maps between invariant function
/// cocycles and double cocycles vanishing on the dual factor.
pub struct CorrespondenceReport {
    pub invariant_function_cocycles: usize,
    pub vanishing_double_cocycles: usize,
    pub dims_equal: bool,
    pub round_trips_ok: bool,
    pub delta_preserves_invariance: bool,
}

/// Basis of { φ ∈ Z¹(double) : φ|_dual = 0 }.
pub fn z1_d_vanishing_on_dual(bim: &InvGammaBimodule) -> Result<Vec<Cochain>> {
    let double = &bim.rep.double;
    let bd = double.dim();
    let dim = double.base_dim();
    let n = bim.carrier_dim();
    let cols = bd * n;
    let mut elim = Eliminator::new(cols);

    // δφ = 0 rows
    let hopf = double.as_hopf()?;
    for a1 in 0..bd {
        let eps1 = hopf.counit_of(&scalar::basis_vec(bd, a1));
        for a2 in 0..bd {
            let rho2t = bim.rep.rho_d_basis(a2).transpose();
            for t in 0..n {
                let mut row: Vec<(usize, Scalar)> = Vec::new();
                if !eps1.is_zero() {
                    row.push((a2 * n + t, eps1.clone()));
                }
                for (c, m) in hopf.mult_basis(a1, a2) {
                    row.push((c * n + t, -m.clone()));
                }
                for s in 0..n {
                    let r = rho2t.get(t, s);
                    if !r.is_zero() {
                        row.push((a1 * n + s, r.clone()));
                    }
                }
                elim.push_sparse(&row);
            }
        }
    }
    // vanishing on the embedded dual factor
    for b in 0..dim {
        let emb = double.embed_u_coords(&scalar::basis_vec(dim, b));
        for t in 0..n {
            let row: Vec<(usize, Scalar)> = emb
                .coords
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(i, v)| (i * n + t, v.clone()))
                .collect();
            elim.push_sparse(&row);
        }
    }
    Ok(elim
        .kernel_basis()
        .into_iter()
        .map(|flat| Cochain::from_flat(CochainBase::Double, 1, bd, n, &flat))
        .collect())
}

pub fn correspondence_report(bim: &InvGammaBimodule) -> Result<CorrespondenceReport> {
    let double = &bim.rep.double;
    let u = &double.pair.dual;
    let dim = double.base_dim();

    let z1_f = z1_basis(bim, CochainBase::Function)?;
    let invariant = invariant_subspace(bim, &z1_f)?;
    let vanishing = z1_d_vanishing_on_dual(bim)?;
    let dims_equal = invariant.len() == vanishing.len();

    let mut round_trips_ok = true;
    for phi in &vanishing {
        let psi = restrict_to_function_algebra(phi, double);
        let back = compose_with_universal(bim, &psi)?;
        if &back != phi {
            round_trips_ok = false;
        }
    }
    for psi in &invariant {
        let phi = compose_with_universal(bim, psi)?;
        // φ must be closed over the double and vanish on the dual
        let closed = coboundary(bim, &phi)?.is_zero();
        if !closed || !vanishes_on_dual(&phi, double) {
            round_trips_ok = false;
        }
        let back = restrict_to_function_algebra(&phi, double);
        if &back != psi {
            round_trips_ok = false;
        }
    }

    // δ sends invariant 0-cochains to invariant 1-cocycles
    let mut delta_preserves_invariance = true;
    for gamma in invariant_zero_cochains(bim) {
        let g = Cochain {
            base: CochainBase::Function,
            degree: 0,
            values: vec![gamma],
        };
        let image = coboundary(bim, &g)?;
        if !coboundary(bim, &image)?.is_zero() {
            delta_preserves_invariance = false;
        }
        for b in 0..dim {
            let moved = bullet_action(bim, &image, &scalar::basis_vec(dim, b))?;
            let expected = image.scale(&u.counit_vector()[b]);
            if moved != expected {
                delta_preserves_invariance = false;
            }
        }
    }

    Ok(CorrespondenceReport {
        invariant_function_cocycles: invariant.len(),
        vanishing_double_cocycles: vanishing.len(),
        dims_equal,
        round_trips_ok,
        delta_preserves_invariance,
    })
}
