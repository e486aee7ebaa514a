//! Right and left G-integrals, their symmetrised versions, the G-comodulus and
//! unibalancedness.

use std::collections::BTreeMap;
use std::sync::{Arc, RwLock};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hopf_core::{
    column_matrix, dot, form_matrix, pivot_inverse, tensor_elem, CheckReport, Elem, GradedAlgebraData,
    HopfGFamily,
};
use crate::linalg::Matrix;
use crate::scalar::CycNumber;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Right,
    Left,
}

/// Equations of the `(α, β)` instance as rows acting on the unknown `μ_α`:
/// returns `(A, b)` with `A μ_α = b ⊗ μ_{αβ}`-coefficients, one row per
/// `(basis x of H_{αβ}, output coordinate in H_β)`.
fn right_integral_system<F: HopfGFamily + ?Sized>(
    fam: &F,
    a: &F::Grade,
    b: &F::Grade,
) -> Result<(Matrix, Vec<(usize, usize)>)> {
    let ab = fam.compose(a, b);
    let (da, db, dab) = (fam.dim(a)?, fam.dim(b)?, fam.dim(&ab)?);
    let delta = fam.coproduct(a, b)?;
    let mut rows: Vec<Vec<(usize, CycNumber)>> = vec![Vec::new(); dab * db];
    let mut keys = Vec::with_capacity(dab * db);
    for j in 0..dab {
        for k in 0..db {
            keys.push((j, k));
        }
    }
    // Δ[(i,k), j] contributes μ_i to row (j, k)
    for p in 0..da * db {
        let (i, k) = (p / db, p % db);
        for (j, c) in delta.row(p) {
            rows[j * db + k].push((i, c.clone()));
        }
    }
    let m = Matrix::from_sparse_rows(da, fam.modulus(), rows);
    Ok((m, keys))
}

/// Dimension of the solution space of the `(α, 1)` right integral equations.
pub fn integral_space_dimension<F: HopfGFamily + ?Sized>(fam: &F, a: &F::Grade) -> Result<usize> {
    Ok(homogeneous_solutions(fam, a)?.len())
}

fn homogeneous_solutions<F: HopfGFamily + ?Sized>(fam: &F, a: &F::Grade) -> Result<Vec<Elem>> {
    let one = fam.unit_grade();
    let (sys, keys) = right_integral_system(fam, a, &one)?;
    let unit1 = fam.algebra(&one)?.unit().clone();
    let da = fam.dim(a)?;
    // subtract μ_j u_k on row (j, k)
    let mut rows: Vec<Vec<(usize, CycNumber)>> = Vec::with_capacity(keys.len());
    for (r, &(j, k)) in keys.iter().enumerate() {
        let mut row: Vec<(usize, CycNumber)> = sys.row(r).to_vec();
        if !unit1[k].is_zero() {
            match row.iter_mut().find(|(c, _)| *c == j) {
                Some((_, x)) => *x -= &unit1[k],
                None => row.push((j, -&unit1[k])),
            }
        }
        rows.push(row);
    }
    Ok(Matrix::from_sparse_rows(da, fam.modulus(), rows).nullspace())
}

fn normalize_first_nonzero(v: &mut Elem) {
    if let Some(x) = v.iter().find(|x| !x.is_zero()).cloned() {
        let inv = x.inv().unwrap();
        for c in v.iter_mut() {
            *c = &*c * &inv;
        }
    }
}

/// A right G-integral `(μ_α)` computed lazily per grade, with `μ_1` fixed by
/// the family's normalization (or the first nonzero basis value set to 1).
pub struct GIntegral<'a, F: HopfGFamily + ?Sized> {
    fam: &'a F,
    mu1: Arc<Elem>,
    cache: RwLock<BTreeMap<F::Grade, Arc<Elem>>>,
}

impl<'a, F: HopfGFamily + ?Sized> GIntegral<'a, F> {
    pub fn new(fam: &'a F) -> Result<Self> {
        let one = fam.unit_grade();
        let sols = homogeneous_solutions(fam, &one)?;
        if sols.len() != 1 {
            return Err(Error::IntegralSpaceDimension {
                grade: one.to_string(),
                dim: sols.len(),
            });
        }
        let mut mu1 = sols.into_iter().next().unwrap();
        match fam.integral_normalization() {
            Some((idx, val)) => {
                if mu1[idx].is_zero() {
                    return Err(Error::InconsistentNormalization(one.to_string()));
                }
                let c = val.try_div(&mu1[idx])?;
                for x in mu1.iter_mut() {
                    *x = &*x * &c;
                }
            }
            None => normalize_first_nonzero(&mut mu1),
        }
        let mu1 = Arc::new(mu1);
        let mut cache = BTreeMap::new();
        cache.insert(one, mu1.clone());
        Ok(GIntegral {
            fam,
            mu1,
            cache: RwLock::new(cache),
        })
    }

    pub fn family(&self) -> &'a F {
        self.fam
    }

    pub fn normalization_label(&self) -> &'static str {
        if self.fam.integral_normalization().is_some() {
            "eta=1"
        } else {
            "first-nonzero=1"
        }
    }

    /// `μ_α`.
    pub fn right(&self, a: &F::Grade) -> Result<Arc<Elem>> {
        if let Some(m) = self.cache.read().unwrap().get(a) {
            return Ok(m.clone());
        }
        let mu = Arc::new(self.solve_grade(a)?);
        Ok(self.cache.write().unwrap().entry(a.clone()).or_insert(mu).clone())
    }

    fn solve_grade(&self, a: &F::Grade) -> Result<Elem> {
        let fam = self.fam;
        let ai = fam.inverse(a);
        let sols = homogeneous_solutions(fam, a)?;
        match sols.len() {
            0 => Err(Error::IntegralSpaceDimension {
                grade: a.to_string(),
                dim: 0,
            }),
            1 => {
                let nu = &sols[0];
                let (sys, keys) = right_integral_system(fam, a, &ai)?;
                let unit = fam.algebra(&ai)?.unit().clone();
                let lhs = sys.mul_vec(nu);
                // c * lhs[(j,k)] = μ_1(x_j) u_k for all rows
                let mut scale: Option<CycNumber> = None;
                for (r, &(j, k)) in keys.iter().enumerate() {
                    let rhs = &self.mu1[j] * &unit[k];
                    if lhs[r].is_zero() {
                        if !rhs.is_zero() {
                            return Err(Error::InconsistentNormalization(a.to_string()));
                        }
                        continue;
                    }
                    let c = rhs.try_div(&lhs[r])?;
                    match &scale {
                        None => scale = Some(c),
                        Some(s) if *s != c => return Err(Error::InconsistentNormalization(a.to_string())),
                        _ => {}
                    }
                }
                let c = scale.ok_or_else(|| Error::InconsistentNormalization(a.to_string()))?;
                Ok(nu.iter().map(|x| x * &c).collect())
            }
            _ => self.solve_combined(a),
        }
    }

    // Fallback when the (α, 1) equations leave more than a line: add the
    // inhomogeneous (α, α⁻¹) equations and require a unique solution.
    fn solve_combined(&self, a: &F::Grade) -> Result<Elem> {
        let fam = self.fam;
        let one = fam.unit_grade();
        let ai = fam.inverse(a);
        let da = fam.dim(a)?;
        let n = fam.modulus();
        let (s1, k1) = right_integral_system(fam, a, &one)?;
        let (s2, k2) = right_integral_system(fam, a, &ai)?;
        let u1 = fam.algebra(&one)?.unit().clone();
        let u2 = fam.algebra(&ai)?.unit().clone();
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for (r, &(j, k)) in k1.iter().enumerate() {
            let mut row = s1.row(r).to_vec();
            if !u1[k].is_zero() {
                match row.iter_mut().find(|(c, _)| *c == j) {
                    Some((_, x)) => *x -= &u1[k],
                    None => row.push((j, -&u1[k])),
                }
            }
            rows.push(row);
            rhs.push(CycNumber::zero(n));
        }
        for (r, &(j, k)) in k2.iter().enumerate() {
            rows.push(s2.row(r).to_vec());
            rhs.push(&self.mu1[j] * &u2[k]);
        }
        let m = Matrix::from_sparse_rows(da, n, rows);
        let kernel = m.nullspace().len();
        if kernel != 0 {
            return Err(Error::IntegralSpaceDimension {
                grade: a.to_string(),
                dim: kernel,
            });
        }
        m.solve(&rhs)
            .map_err(|_| Error::InconsistentNormalization(a.to_string()))
    }

    /// `μ^l_α = μ_{α⁻¹} ∘ S_α`.
    pub fn left(&self, a: &F::Grade) -> Result<Elem> {
        let mu = self.right(&self.fam.inverse(a))?;
        Ok(compose_form(&mu, &*self.fam.antipode(a)?))
    }

    /// `μ̃_α = μ_α(g_α ·)`.
    pub fn symmetrised_right(&self, a: &F::Grade) -> Result<Elem> {
        let alg = self.fam.algebra(a)?;
        let g = self.fam.pivot(a)?;
        Ok(compose_form(&self.right(a)?, &alg.left_mult(&g)))
    }

    /// `μ̃^l_α = μ^l_α(g_α⁻¹ ·)`.
    pub fn symmetrised_left(&self, a: &F::Grade) -> Result<Elem> {
        let alg = self.fam.algebra(a)?;
        let gi = pivot_inverse(self.fam, a)?;
        Ok(compose_form(&self.left(a)?, &alg.left_mult(&gi)))
    }

    pub fn symmetrised(&self, a: &F::Grade, side: Side) -> Result<Elem> {
        match side {
            Side::Right => self.symmetrised_right(a),
            Side::Left => self.symmetrised_left(a),
        }
    }
}

/// The form `x ↦ λ(M x)`.
pub fn compose_form(lambda: &[CycNumber], m: &Matrix) -> Elem {
    m.transpose().mul_vec(lambda)
}

fn labels(alg: &GradedAlgebraData) -> impl Fn(usize) -> String + '_ {
    move |j| alg.label_of(j).to_string()
}

/// The full right integral relation `(μ_α ⊗ Id)Δ_{α,β} = μ_{αβ}(·) 1_β`.
pub fn check_right_integral<F: HopfGFamily + ?Sized>(
    integral: &GIntegral<'_, F>,
    a: &F::Grade,
    b: &F::Grade,
) -> Result<CheckReport> {
    let fam = integral.family();
    let ab = fam.compose(a, b);
    let n = fam.modulus();
    let db = fam.dim(b)?;
    let lhs = form_matrix(&integral.right(a)?, n)
        .kron(Matrix::identity(db, n))
        .mul(&fam.coproduct(a, b)?);
    let rhs = column_matrix(fam.algebra(b)?.unit(), n).mul(form_matrix(&integral.right(&ab)?, n));
    let mut report = CheckReport::new();
    let alg = fam.algebra(&ab)?;
    report.push_matrix_eq(format!("right_integral[{a},{b}]"), &lhs, &rhs, labels(&alg));
    Ok(report)
}

/// The left relation `(Id ⊗ μ^l_β)Δ_{α,β} = μ^l_{αβ}(·) 1_α`.
pub fn check_left_integral<F: HopfGFamily + ?Sized>(
    integral: &GIntegral<'_, F>,
    a: &F::Grade,
    b: &F::Grade,
) -> Result<CheckReport> {
    let fam = integral.family();
    let ab = fam.compose(a, b);
    let n = fam.modulus();
    let da = fam.dim(a)?;
    let lhs = Matrix::identity(da, n)
        .kron(form_matrix(&integral.left(b)?, n))
        .mul(&fam.coproduct(a, b)?);
    let rhs = column_matrix(fam.algebra(a)?.unit(), n).mul(form_matrix(&integral.left(&ab)?, n));
    let mut report = CheckReport::new();
    let alg = fam.algebra(&ab)?;
    report.push_matrix_eq(format!("left_integral[{a},{b}]"), &lhs, &rhs, labels(&alg));
    Ok(report)
}

/// Pivot-twisted relations of the symmetrised integrals:
/// `Σ μ̃_α(x_(1)) g_β x_(2) = μ̃_{αβ}(x) 1_β` and
/// `Σ g_α⁻¹ x_(1) μ̃^l_β(x_(2)) = μ̃^l_{αβ}(x) 1_α`.
pub fn check_symmetrised_relations<F: HopfGFamily + ?Sized>(
    integral: &GIntegral<'_, F>,
    a: &F::Grade,
    b: &F::Grade,
) -> Result<CheckReport> {
    let fam = integral.family();
    let ab = fam.compose(a, b);
    let n = fam.modulus();
    let (a_alg, b_alg, ab_alg) = (fam.algebra(a)?, fam.algebra(b)?, fam.algebra(&ab)?);
    let delta = fam.coproduct(a, b)?;
    let mut report = CheckReport::new();

    let gb = b_alg.left_mult(&fam.pivot(b)?);
    let lhs = form_matrix(&integral.symmetrised_right(a)?, n).kron(&gb).mul(&delta);
    let rhs = column_matrix(b_alg.unit(), n).mul(form_matrix(&integral.symmetrised_right(&ab)?, n));
    report.push_matrix_eq(format!("symmetrised_right_relation[{a},{b}]"), &lhs, &rhs, labels(&ab_alg));

    let gai = a_alg.left_mult(&pivot_inverse(fam, a)?);
    let lhs = gai.kron(form_matrix(&integral.symmetrised_left(b)?, n)).mul(&delta);
    let rhs = column_matrix(a_alg.unit(), n).mul(form_matrix(&integral.symmetrised_left(&ab)?, n));
    report.push_matrix_eq(format!("symmetrised_left_relation[{a},{b}]"), &lhs, &rhs, labels(&ab_alg));
    Ok(report)
}

/// Right and left cointegral lines of `H_1`: `c h = ε(h) c` and `h c = ε(h) c`.
pub fn cointegral_lines<F: HopfGFamily + ?Sized>(fam: &F) -> Result<(Vec<Elem>, Vec<Elem>)> {
    let one = fam.unit_grade();
    let alg = fam.algebra(&one)?;
    let eps = fam.counit()?;
    let n = fam.modulus();
    let d = alg.dim();
    let hs: Vec<Elem> = match fam.generators(&one) {
        Some(g) => g,
        None => (0..d).map(|i| alg.basis(i)).collect(),
    };
    let stack = |make: &dyn Fn(&Elem) -> Matrix| -> Matrix {
        let mut rows = Vec::new();
        for h in &hs {
            let m = make(h).sub(&Matrix::scalar(d, &dot(&eps, h)));
            for i in 0..d {
                rows.push(m.row(i).to_vec());
            }
        }
        Matrix::from_sparse_rows(d, n, rows)
    };
    let right = stack(&|h| alg.right_mult(h)).nullspace();
    let left = stack(&|h| alg.left_mult(h)).nullspace();
    Ok((right, left))
}

pub fn is_unimodular<F: HopfGFamily + ?Sized>(fam: &F) -> Result<bool> {
    let (right, left) = cointegral_lines(fam)?;
    if right.len() != 1 || left.len() != 1 {
        return Ok(false);
    }
    let n = fam.modulus();
    let m = Matrix::from_columns(right[0].len(), n, &[right[0].clone(), left[0].clone()]);
    Ok(m.rank() == 1)
}

/// Symmetry `λ(xy) = λ(yx)` on all basis pairs and invertibility of the Gram
/// matrix `λ(b_i b_j)`. Fails with `NotUnimodular` unless `H_1` is unimodular.
pub fn check_symmetric_nondegenerate<F: HopfGFamily + ?Sized>(
    fam: &F,
    form: &[CycNumber],
    a: &F::Grade,
) -> Result<CheckReport> {
    if !is_unimodular(fam)? {
        return Err(Error::NotUnimodular);
    }
    let (report, _) = symmetric_nondegenerate_report(fam, form, a)?;
    Ok(report)
}

/// Same checks without the unimodularity precondition; also returns the Gram determinant.
pub fn symmetric_nondegenerate_report<F: HopfGFamily + ?Sized>(
    fam: &F,
    form: &[CycNumber],
    a: &F::Grade,
) -> Result<(CheckReport, CycNumber)> {
    let alg = fam.algebra(a)?;
    let d = alg.dim();
    let n = fam.modulus();
    let gram_entry = |i: usize, j: usize| -> CycNumber {
        let mut s = CycNumber::zero(n);
        for (k, c) in alg.basis_product(i, j) {
            if !form[*k].is_zero() {
                s += &(c * &form[*k]);
            }
        }
        s
    };
    let gram: Vec<Vec<CycNumber>> = (0..d).map(|i| (0..d).map(|j| gram_entry(i, j)).collect()).collect();
    let mut witness = None;
    'outer: for i in 0..d {
        for j in i + 1..d {
            if gram[i][j] != gram[j][i] {
                witness = Some(format!(
                    "({}, {}): {} vs {}",
                    alg.label_of(i),
                    alg.label_of(j),
                    gram[i][j],
                    gram[j][i]
                ));
                break 'outer;
            }
        }
    }
    let mut report = CheckReport::new();
    report.push(format!("symmetric[{a}]"), witness.is_none(), witness);
    let det = Matrix::from_dense(n, &gram).det()?;
    let entry = report.push(
        format!("nondegenerate[{a}]"),
        !det.is_zero(),
        det.is_zero().then(|| "Gram determinant vanishes".to_string()),
    );
    entry.values.push(crate::hopf_core::NamedValue::new("gram_determinant", &det));
    Ok((report, det))
}

/// `a_α` with `(Id ⊗ μ_1)Δ_{α,1}(x) = μ_α(x) a_α`, read off a basis vector where `μ_α ≠ 0`.
pub fn comodulus<F: HopfGFamily + ?Sized>(integral: &GIntegral<'_, F>, a: &F::Grade) -> Result<Elem> {
    let fam = integral.family();
    let one = fam.unit_grade();
    let mu_a = integral.right(a)?;
    let xstar = mu_a
        .iter()
        .position(|x| !x.is_zero())
        .ok_or_else(|| Error::NoNonvanishingWitness(a.to_string()))?;
    let n = fam.modulus();
    let da = fam.dim(a)?;
    let contract = Matrix::identity(da, n)
        .kron(form_matrix(&integral.right(&one)?, n))
        .mul(&fam.coproduct(a, &one)?);
    let inv = mu_a[xstar].inv()?;
    Ok(contract.column(xstar).iter().map(|x| x * &inv).collect())
}

/// The comodulus relation for `(α, β)` on all basis vectors, and grouplikeness.
pub fn check_comodulus<F: HopfGFamily + ?Sized>(
    integral: &GIntegral<'_, F>,
    a: &F::Grade,
    b: &F::Grade,
) -> Result<CheckReport> {
    let fam = integral.family();
    let ab = fam.compose(a, b);
    let n = fam.modulus();
    let da = fam.dim(a)?;
    let aa = comodulus(integral, a)?;
    let mut report = CheckReport::new();
    let lhs = Matrix::identity(da, n)
        .kron(form_matrix(&integral.right(b)?, n))
        .mul(&fam.coproduct(a, b)?);
    let rhs = column_matrix(&aa, n).mul(form_matrix(&integral.right(&ab)?, n));
    let alg = fam.algebra(&ab)?;
    report.push_matrix_eq(format!("comodulus_relation[{a},{b}]"), &lhs, &rhs, labels(&alg));

    let a_ab = comodulus(integral, &ab)?;
    let ok = fam.coproduct(a, b)?.mul_vec(&a_ab) == tensor_elem(&aa, &comodulus(integral, b)?);
    report.push(
        format!("comodulus_grouplike[{a},{b}]"),
        ok,
        (!ok).then(|| "Δ(a) != a ⊗ a".to_string()),
    );
    let one = fam.unit_grade();
    let e = dot(&fam.counit()?, &comodulus(integral, &one)?);
    report.push("comodulus_counit", e.is_one(), (!e.is_one()).then(|| format!("ε(a_1) = {e}")));
    Ok(report)
}

/// `μ_{α⁻¹}(S_α(x)) = μ_α(a_α x)` on all basis vectors.
pub fn check_left_via_comodulus<F: HopfGFamily + ?Sized>(
    integral: &GIntegral<'_, F>,
    a: &F::Grade,
) -> Result<CheckReport> {
    let fam = integral.family();
    let alg = fam.algebra(a)?;
    let lhs = integral.left(a)?;
    let rhs = compose_form(&integral.right(a)?, &alg.left_mult(&comodulus(integral, a)?));
    let n = fam.modulus();
    let mut report = CheckReport::new();
    report.push_matrix_eq(
        format!("left_integral_via_comodulus[{a}]"),
        &form_matrix(&lhs, n),
        &form_matrix(&rhs, n),
        labels(&alg),
    );
    Ok(report)
}

/// Unibalancedness at `α`: `a_α = g_α²` and `μ̃_α = μ̃^l_α`; also records whether
/// the two verdicts agree.
pub fn check_unibalanced<F: HopfGFamily + ?Sized>(
    integral: &GIntegral<'_, F>,
    a: &F::Grade,
) -> Result<CheckReport> {
    let fam = integral.family();
    let alg = fam.algebra(a)?;
    let g = fam.pivot(a)?;
    let g2 = alg.mul(&g, &g);
    let aa = comodulus(integral, a)?;
    let mut report = CheckReport::new();
    let by_comodulus = aa == g2;
    report.push(
        format!("comodulus_is_pivot_squared[{a}]"),
        by_comodulus,
        (!by_comodulus).then(|| format!("a = {}, g^2 = {}", alg.format_elem(&aa), alg.format_elem(&g2))),
    );
    let r = integral.symmetrised_right(a)?;
    let l = integral.symmetrised_left(a)?;
    let by_forms = r == l;
    report.push(
        format!("symmetrised_right_equals_left[{a}]"),
        by_forms,
        (!by_forms).then(|| match proportionality(&r, &l) {
            Some(c) => format!("forms differ by the scalar {c}"),
            None => "forms are not proportional".to_string(),
        }),
    );
    report.push(
        format!("unibalanced_verdicts_agree[{a}]"),
        by_comodulus == by_forms,
        None,
    );
    Ok(report)
}

/// `c` with `b = c a`, if it exists and `a ≠ 0`.
pub fn proportionality(a: &[CycNumber], b: &[CycNumber]) -> Option<CycNumber> {
    let i = a.iter().position(|x| !x.is_zero())?;
    let c = b[i].try_div(&a[i]).ok()?;
    a.iter().zip(b).all(|(x, y)| &(x * &c) == y).then_some(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf_core::{PatchedFamily, TableFamily};
    use crate::uqsl2::{Sl2Family, Sl2Grade};

    #[test]
    fn sl2_r2_integral_formula() {
        let fam = Sl2Family::new(2, 2);
        let integral = GIntegral::new(&fam).unwrap();
        let a = Sl2Grade::from_ratio(1, 2);
        assert_eq!(integral_space_dimension(&fam, &a).unwrap(), 1);
        let mu = integral.right(&a).unwrap();
        let witness = fam.index(1, 1, 1);
        for (i, x) in mu.iter().enumerate() {
            if i == witness {
                assert_eq!(*x, crate::scalar::make_root_of_unity(8, 2));
            } else {
                assert!(x.is_zero());
            }
        }
        let sym = integral.symmetrised_right(&a).unwrap();
        assert!(sym[fam.index(1, 1, 0)].is_one());
        assert!(sym[fam.index(1, 1, 1)].is_zero());
    }

    #[test]
    fn sl2_r2_relations_and_comodulus() {
        let fam = Sl2Family::new(2, 2);
        let integral = GIntegral::new(&fam).unwrap();
        let a = Sl2Grade::from_ratio(1, 2);
        for b in [a, Sl2Grade::zero(), Sl2Grade::from_ratio(3, 2)] {
            assert!(check_right_integral(&integral, &a, &b).unwrap().all_passed());
            assert!(check_left_integral(&integral, &a, &b).unwrap().all_passed());
            assert!(check_symmetrised_relations(&integral, &a, &b).unwrap().all_passed());
            assert!(check_comodulus(&integral, &a, &b).unwrap().all_passed());
        }
        assert!(check_left_via_comodulus(&integral, &a).unwrap().all_passed());
        let r = check_unibalanced(&integral, &a).unwrap();
        assert!(r.all_passed(), "{:?}", r.failures());
        // a_1 = K^2
        let a0 = comodulus(&integral, &Sl2Grade::zero()).unwrap();
        assert_eq!(a0, fam.monomial(0, 0, 0));
    }

    #[test]
    fn symmetric_and_nondegenerate() {
        let fam = Sl2Family::new(2, 2);
        let integral = GIntegral::new(&fam).unwrap();
        let a = Sl2Grade::from_ratio(1, 2);
        let sym = integral.symmetrised_right(&a).unwrap();
        assert!(check_symmetric_nondegenerate(&fam, &sym, &a).unwrap().all_passed());
        let plain = integral.right(&a).unwrap();
        let (r, _) = symmetric_nondegenerate_report(&fam, &plain, &a).unwrap();
        assert!(!r.entries[0].passed);
    }

    #[test]
    fn pivot_k_is_not_unibalanced() {
        let fam = Sl2Family::new(2, 2);
        let a = Sl2Grade::from_ratio(1, 2);
        let mut patched = PatchedFamily::new(&fam);
        for g in [a, Sl2Grade::from_ratio(3, 2), Sl2Grade::zero(), Sl2Grade::from_ratio(1, 1)] {
            patched = patched.with_pivot(g, fam.monomial(0, 0, 1));
        }
        let integral = GIntegral::new(&patched).unwrap();
        let r = check_unibalanced(&integral, &a).unwrap();
        assert!(!r.entries[0].passed);
        assert!(!r.entries[1].passed);
        assert!(r.entries[2].passed);
    }

    #[test]
    fn group_algebra_integral() {
        let json = r#"{
            "scalar_modulus": 1,
            "group": {"elements": ["1"], "mul_table": [[0]], "unit": 0, "inv": [0]},
            "algebras": {"1": {"dim": 2, "labels": ["e", "g"], "unit": [1, 0],
                               "mul": [[0,0,0,1],[0,1,1,1],[1,0,1,1],[1,1,0,1]]}},
            "coproduct": {"1,1": [[1,0],[0,0],[0,0],[0,1]]},
            "counit": [1, 1],
            "antipode": {"1": [[1,0],[0,1]]},
            "pivot": {"1": [1, 0]}
        }"#;
        let fam = TableFamily::from_json_str(json).unwrap();
        let one = fam.unit_grade();
        assert_eq!(integral_space_dimension(&fam, &one).unwrap(), 1);
        let integral = GIntegral::new(&fam).unwrap();
        let mu = integral.right(&one).unwrap();
        assert!(mu[0].is_one() && mu[1].is_zero());
        // commutative and cocommutative with S = Id
        assert_eq!(integral.left(&one).unwrap(), *mu);
        assert!(is_unimodular(&fam).unwrap());
    }
}
