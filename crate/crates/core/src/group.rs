//! Finite groups: Cayley tables, permutation generators, conjugacy classes,
//! and the associated Hopf algebras.
//!
//! `function_hopf` builds the commutative algebra of functions on the group
//! with basis the point evaluations; `group_algebra` builds the group
//! algebra. Class representations of the quantum double and the class
//! calculi live here too, next to the group data they come from.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::bimodule::DoubleRepresentation;
use crate::calculus::{self, FirstOrderCalculus};
use crate::double::DrinfeldDouble;
use crate::hochschild::{self, Cochain, CochainBase, InvGammaBimodule};
use crate::hopf::{DualPair, HopfAlgebra, HopfStructure};
use crate::linalg::Matrix;
use crate::scalar::{self, Scalar};
use crate::tensor::SparseTensor3;
use crate::{Error, Result};

/// Finite group given by its Cayley table; `table[i][j]` is the index of
/// the product of elements `i` and `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
    labels: Vec<String>,
}

/// Conjugacy class: sorted member indices and the smallest one as
/// representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClass {
    pub members: Vec<usize>,
    pub representative: usize,
}

impl ConjugacyClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn is_trivial(&self, group: &FiniteGroup) -> bool {
        self.members == [group.identity()]
    }
}

impl FiniteGroup {
    /// Validate a Cayley table: closure, associativity, identity, inverses.
    pub fn from_table(table: Vec<Vec<usize>>, labels: Option<Vec<String>>) -> Result<Self> {
        let order = table.len();
        if order == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != order {
                return Err(Error::InvalidGroup(format!("row {i} has wrong length")));
            }
            for (j, &v) in row.iter().enumerate() {
                if v >= order {
                    return Err(Error::InvalidGroup(format!(
                        "entry ({i},{j}) = {v} out of range"
                    )));
                }
            }
        }
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidGroup(format!(
                            "associativity fails at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
        let mut inverses = vec![usize::MAX; order];
        for a in 0..order {
            inverses[a] = (0..order)
                .find(|&b| table[a][b] == identity && table[b][a] == identity)
                .ok_or_else(|| Error::InvalidGroup(format!("element {a} has no inverse")))?;
        }
        let labels = labels.unwrap_or_else(|| (0..order).map(|i| format!("g{i}")).collect());
        if labels.len() != order {
            return Err(Error::InvalidGroup("label count differs from order".into()));
        }
        Ok(FiniteGroup {
            order,
            table,
            identity,
            inverses,
            labels,
        })
    }

    /// Close a set of permutations (cycle notation, comma-separated) into a
    /// group, enumerating elements breadth first from the identity.
    pub fn from_generators(input: &str, max_order: usize) -> Result<Self> {
        let gens = parse_generators(input)?;
        let degree = gens.iter().map(|p| p.len()).max().unwrap_or(1);
        let gens: Vec<Vec<usize>> = gens
            .into_iter()
            .map(|mut p| {
                p.extend(p.len()..degree);
                p
            })
            .collect();

        let identity: Vec<usize> = (0..degree).collect();
        let mut elements = vec![identity.clone()];
        let mut seen: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        seen.insert(identity, 0);
        let mut frontier = 0;
        while frontier < elements.len() {
            let current = elements[frontier].clone();
            frontier += 1;
            for g in &gens {
                // apply g after current
                let product: Vec<usize> = (0..degree).map(|x| g[current[x]]).collect();
                if !seen.contains_key(&product) {
                    if elements.len() >= max_order {
                        return Err(Error::LimitExceeded {
                            dim: elements.len() + 1,
                            max: max_order,
                        });
                    }
                    seen.insert(product.clone(), elements.len());
                    elements.push(product);
                }
            }
        }

        let order = elements.len();
        let mut table = vec![vec![0usize; order]; order];
        for (i, p) in elements.iter().enumerate() {
            for (j, q) in elements.iter().enumerate() {
                let product: Vec<usize> = (0..degree).map(|x| p[q[x]]).collect();
                table[i][j] = *seen
                    .get(&product)
                    .expect("generated set is closed by construction");
            }
        }
        let labels = elements.iter().map(|p| cycle_notation(p)).collect();
        FiniteGroup::from_table(table, Some(labels))
    }

    /// Cyclic group of order `n`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0);
        let table: Vec<Vec<usize>> = (0..n)
            .map(|i| (0..n).map(|j| (i + j) % n).collect())
            .collect();
        let labels = (0..n)
            .map(|i| {
                if i == 0 {
                    "e".to_string()
                } else {
                    format!("u{i}")
                }
            })
            .collect();
        FiniteGroup::from_table(table, Some(labels)).expect("cyclic table is a group")
    }

    /// Symmetric group on three points, generated by (12) and (123).
    pub fn symmetric_3() -> Self {
        FiniteGroup::from_generators("(12),(123)", 24).expect("S3 generators are valid")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn conjugate(&self, t: usize, g: usize) -> usize {
        self.mul(self.mul(t, g), self.inverse(t))
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    /// Conjugacy classes ordered by smallest representative.
    pub fn conjugacy_classes(&self) -> Vec<ConjugacyClass> {
        let mut assigned = vec![false; self.order];
        let mut classes = Vec::new();
        for rep in 0..self.order {
            if assigned[rep] {
                continue;
            }
            let mut members: Vec<usize> = (0..self.order).map(|t| self.conjugate(t, rep)).collect();
            members.sort_unstable();
            members.dedup();
            for &m in &members {
                assigned[m] = true;
            }
            classes.push(ConjugacyClass {
                representative: rep,
                members,
            });
        }
        classes
    }
}

fn parse_generators(input: &str) -> Result<Vec<Vec<usize>>> {
    let mut generators = Vec::new();
    let mut depth = 0usize;
    let mut current = String::new();
    for ch in input.chars() {
        match ch {
            '(' => {
                depth += 1;
                current.push(ch);
            }
            ')' => {
                if depth == 0 {
                    return Err(Error::Parse("unbalanced ')' in generators".into()));
                }
                depth -= 1;
                current.push(ch);
            }
            ',' | ';' if depth == 0 => {
                if !current.trim().is_empty() {
                    generators.push(parse_permutation(current.trim())?);
                }
                current.clear();
            }
            _ => current.push(ch),
        }
    }
    if depth != 0 {
        return Err(Error::Parse("unbalanced '(' in generators".into()));
    }
    if !current.trim().is_empty() {
        generators.push(parse_permutation(current.trim())?);
    }
    if generators.is_empty() {
        return Err(Error::Parse("no generators given".into()));
    }
    Ok(generators)
}

/// Parse one permutation in cycle notation. Points are 1-based. Inside a
/// cycle, points may be separated by spaces or commas; a bare digit string
/// like `(123)` is read one digit per point.
fn parse_permutation(text: &str) -> Result<Vec<usize>> {
    let text = text.trim();
    if text == "e" || text == "()" {
        return Ok(vec![0]);
    }
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let mut rest = text;
    while !rest.is_empty() {
        let start = rest
            .find('(')
            .ok_or_else(|| Error::Parse(format!("expected '(' in permutation {text:?}")))?;
        let end = rest[start..]
            .find(')')
            .map(|e| start + e)
            .ok_or_else(|| Error::Parse(format!("missing ')' in permutation {text:?}")))?;
        let body = &rest[start + 1..end];
        let points: Vec<usize> = if body.contains(' ') || body.contains(',') {
            body.split([' ', ','])
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad point {t:?} in cycle")))
                })
                .collect::<Result<_>>()?
        } else {
            body.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| Error::Parse(format!("bad digit {c:?} in cycle")))
                })
                .collect::<Result<_>>()?
        };
        if points.iter().any(|&p| p == 0) {
            return Err(Error::Parse("cycle points are 1-based".into()));
        }
        cycles.push(points);
        rest = &rest[end + 1..];
        rest = rest.trim_start();
    }
    let degree = cycles.iter().flatten().copied().max().unwrap_or(1);
    let mut perm: Vec<usize> = (0..degree).collect();
    // right-to-left composition of the cycles of one generator
    for cycle in cycles.iter().rev() {
        let mut step: Vec<usize> = (0..degree).collect();
        for w in 0..cycle.len() {
            let from = cycle[w] - 1;
            let to = cycle[(w + 1) % cycle.len()] - 1;
            step[from] = to;
        }
        let mut seenpoints = cycle.clone();
        seenpoints.sort_unstable();
        seenpoints.dedup();
        if seenpoints.len() != cycle.len() {
            return Err(Error::Parse(format!("repeated point in cycle {cycle:?}")));
        }
        perm = (0..degree).map(|x| step[perm[x]]).collect();
    }
    Ok(perm)
}

fn cycle_notation(perm: &[usize]) -> String {
    let mut seen = vec![false; perm.len()];
    let mut out = String::new();
    let wide = perm.len() > 9;
    for start in 0..perm.len() {
        if seen[start] || perm[start] == start {
            continue;
        }
        let mut cycle = vec![start];
        seen[start] = true;
        let mut next = perm[start];
        while next != start {
            seen[next] = true;
            cycle.push(next);
            next = perm[next];
        }
        out.push('(');
        let parts: Vec<String> = cycle.iter().map(|p| (p + 1).to_string()).collect();
        out.push_str(&parts.join(if wide { " " } else { "" }));
        out.push(')');
    }
    if out.is_empty() {
        out.push('e');
    }
    out
}

/// Algebra of functions on `G` with basis the point evaluations δ_g.
pub fn function_hopf(group: &FiniteGroup) -> Result<Arc<HopfAlgebra>> {
    let n = group.order();
    let mut mult = SparseTensor3::new([n; 3]);
    for g in 0..n {
        mult.set([g, g, g], scalar::one())?;
    }
    let mut comult = SparseTensor3::new([n; 3]);
    for g in 0..n {
        for h in 0..n {
            let k = group.mul(group.inverse(h), g);
            comult.set([g, h, k], scalar::one())?;
        }
    }
    let counit: Vec<Scalar> = (0..n)
        .map(|g| {
            if g == group.identity() {
                scalar::one()
            } else {
                scalar::zero()
            }
        })
        .collect();
    let antipode = Matrix::from_fn(n, n, |a, b| {
        if b == group.inverse(a) {
            scalar::one()
        } else {
            scalar::zero()
        }
    });
    let unit = vec![scalar::one(); n];
    let labels = group.labels().to_vec();
    HopfAlgebra::new(HopfStructure {
        dim: n,
        labels,
        mult,
        comult,
        counit,
        antipode,
        unit,
    })
}

/// Group algebra kG with its usual Hopf structure.
pub fn group_algebra(group: &FiniteGroup) -> Result<Arc<HopfAlgebra>> {
    let n = group.order();
    let mut mult = SparseTensor3::new([n; 3]);
    for a in 0..n {
        for b in 0..n {
            mult.set([a, b, group.mul(a, b)], scalar::one())?;
        }
    }
    let mut comult = SparseTensor3::new([n; 3]);
    for g in 0..n {
        comult.set([g, g, g], scalar::one())?;
    }
    let counit = vec![scalar::one(); n];
    let antipode = Matrix::from_fn(n, n, |a, b| {
        if b == group.inverse(a) {
            scalar::one()
        } else {
            scalar::zero()
        }
    });
    let unit: Vec<Scalar> = (0..n)
        .map(|g| {
            if g == group.identity() {
                scalar::one()
            } else {
                scalar::zero()
            }
        })
        .collect();
    let labels = group.labels().to_vec();
    HopfAlgebra::new(HopfStructure {
        dim: n,
        labels,
        mult,
        comult,
        counit,
        antipode,
        unit,
    })
}

/// A finite group together with its function algebra and quantum double.
pub struct GroupDoubleContext {
    pub group: FiniteGroup,
    pub hopf: Arc<HopfAlgebra>,
    pub double: Arc<DrinfeldDouble>,
}

impl GroupDoubleContext {
    pub fn new(group: FiniteGroup) -> Result<Self> {
        let hopf = function_hopf(&group)?;
        let pair = DualPair::new(Arc::clone(&hopf))?;
        let double = Arc::new(DrinfeldDouble::new(pair)?);
        Ok(GroupDoubleContext {
            group,
            hopf,
            double,
        })
    }

    pub fn classes(&self) -> Vec<ConjugacyClass> {
        self.group.conjugacy_classes()
    }

    /// Double representation carried by a conjugacy class: the group part
    /// permutes the class members by conjugation, the function part acts by
    /// evaluation.
    pub fn class_representation(&self, class: &ConjugacyClass) -> Result<DoubleRepresentation> {
        let n = class.size();
        let g = &self.group;
        let pos = |el: usize| -> usize {
            class
                .members
                .iter()
                .position(|&m| m == el)
                .expect("conjugation stays inside the class")
        };
        let dim = g.order();
        let mut rho_f = Vec::with_capacity(dim);
        for x in 0..dim {
            rho_f.push(Matrix::from_fn(n, n, |r, c| {
                if r == c && class.members[r] == x {
                    scalar::one()
                } else {
                    scalar::zero()
                }
            }));
        }
        let mut rho_u = Vec::with_capacity(dim);
        for h in 0..dim {
            let mut m = Matrix::zeros(n, n);
            for (col, &member) in class.members.iter().enumerate() {
                m.set(pos(g.conjugate(h, member)), col, scalar::one());
            }
            rho_u.push(m);
        }
        DoubleRepresentation::new(Arc::clone(&self.double), n, rho_f, rho_u)
    }
}

/// Everything the class calculus construction asserts about one class.
pub struct ClassCalculus {
    pub class: ConjugacyClass,
    /// None for the trivial class, whose candidate χ vanishes.
    pub calculus: Option<FirstOrderCalculus>,
    pub degenerate: bool,
    /// The invariant cocycle with components ε(a) − ⟨g, a⟩.
    pub psi: Cochain,
    pub psi_is_cocycle: bool,
    /// ψ equals the coboundary of the sum of the invariant forms.
    pub psi_is_coboundary_of_class_sum: bool,
    /// The cocycle attached to the calculus is −ψ (sign fixed by χ_g = g−e).
    pub cocycle_matches_minus_psi: bool,
}

/// Build the conjugacy-class calculus with χ_g = g − e and cross-check it
/// against the generic solver and the cohomological description.
pub fn class_calculus(ctx: &GroupDoubleContext, class: &ConjugacyClass) -> Result<ClassCalculus> {
    let rep = ctx.class_representation(class)?;
    let g = &ctx.group;
    let dim = g.order();
    let n = class.size();

    // χ_g = g − e in the group algebra
    let chi: Vec<Vec<Scalar>> = class
        .members
        .iter()
        .map(|&m| {
            let mut v = scalar::zeros(dim);
            v[m] += scalar::one();
            v[g.identity()] -= scalar::one();
            v
        })
        .collect();

    let degenerate = class.is_trivial(g);

    // ⟨χ_g, a⟩ = a(g) − a(e), confirmed against the generic linear solver:
    // every χ tuple must lie in the solution space of the defining
    // conditions.
    let space = calculus::solve_chi_space(&rep)?;
    let flat: Vec<Scalar> = chi.iter().flatten().cloned().collect();
    if !calculus::in_span(&space, &flat) {
        return Err(Error::Inconsistent(
            "class tuple escapes the solver's solution space".into(),
        ));
    }

    let calc = if degenerate {
        None
    } else {
        Some(calculus::build_calculus(&rep, chi.clone())?)
    };

    // ψ(a)_g = ε(a) − ⟨g, a⟩ over the function algebra
    let mut psi_values = Vec::with_capacity(dim);
    for a in 0..dim {
        let eps = ctx.hopf.counit_vector()[a].clone();
        let row: Vec<Scalar> = class
            .members
            .iter()
            .map(|&m| {
                let mut v = eps.clone();
                if m == a {
                    v -= scalar::one();
                }
                v
            })
            .collect();
        psi_values.push(row);
    }
    let psi = Cochain {
        base: CochainBase::Function,
        degree: 1,
        values: psi_values,
    };

    let bim = InvGammaBimodule::new(rep.clone());
    let psi_is_cocycle = hochschild::coboundary(&bim, &psi)?.is_zero();

    // ψ = δ(Σ_C ω_g): the class sum is the all-ones zero-cochain
    let class_sum = Cochain {
        base: CochainBase::Function,
        degree: 0,
        values: vec![vec![scalar::one(); n]],
    };
    let delta_sum = hochschild::coboundary(&bim, &class_sum)?;
    let psi_is_coboundary_of_class_sum = delta_sum == psi;

    let cocycle_matches_minus_psi = match &calc {
        Some(c) => {
            let phi = hochschild::calculus_to_cocycle(c)?;
            let restricted = hochschild::restrict_to_function_algebra(&phi, &ctx.double);
            let minus_psi = psi.scale(&-scalar::one());
            restricted == minus_psi
        }
        None => true,
    };

    if !psi_is_cocycle || !psi_is_coboundary_of_class_sum || !cocycle_matches_minus_psi {
        return Err(Error::Inconsistent(format!(
            "class calculus checks failed: cocycle={psi_is_cocycle} coboundary={psi_is_coboundary_of_class_sum} sign={cocycle_matches_minus_psi}"
        )));
    }

    Ok(ClassCalculus {
        class: class.clone(),
        calculus: calc,
        degenerate,
        psi,
        psi_is_cocycle,
        psi_is_coboundary_of_class_sum,
        cocycle_matches_minus_psi,
    })
}
