//! Modified traces built from symmetric linear forms.
//!
//! Projective modules are presented as `P = H^n · E` with `E² = E` in `Mat_n(H)`.
//! Elements of the free module `H^n` are row vectors and a matrix `M` acts by
//! `x ↦ x·M`, so these maps are left `H`-linear and composition "first `A`,
//! then `B`" is the matrix product `A·B`.

use crate::error::{Error, Result};
use crate::hopf_core::{dot, pivot_inverse, CheckReport, Elem, GradedAlgebraData, HopfGFamily, NamedValue};
use crate::integrals::{GIntegral, Side};
use crate::linalg::Matrix;
use crate::modcat::{
    intertwiner_witness, partial_trace_left, partial_trace_right, phi, phi_left, psi, psi_left,
    random_element, random_endomorphism, random_endomorphism_left, regular_module, seeded_rng, ModuleRep,
};
use crate::scalar::CycNumber;

/// A family of linear forms `λ_α` on the pieces `H_α`.
pub type FormFamily<'a, G> = dyn Fn(&G) -> Result<Elem> + 'a;

/// An `rows × cols` matrix with entries in one algebra `H_α`.
#[derive(Debug, Clone, PartialEq)]
pub struct HMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Elem>,
}

impl HMatrix {
    pub fn zeros(alg: &GradedAlgebraData, rows: usize, cols: usize) -> Self {
        HMatrix {
            rows,
            cols,
            entries: vec![alg.zero(); rows * cols],
        }
    }

    pub fn identity(alg: &GradedAlgebraData, n: usize) -> Self {
        let mut m = Self::zeros(alg, n, n);
        for i in 0..n {
            m.set(i, i, alg.unit().clone());
        }
        m
    }

    pub fn from_entries(rows: usize, cols: usize, entries: Vec<Elem>) -> Self {
        assert_eq!(entries.len(), rows * cols);
        HMatrix { rows, cols, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Elem {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Elem) {
        self.entries[i * self.cols + j] = x;
    }

    pub fn mul(&self, alg: &GradedAlgebraData, other: &HMatrix) -> HMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in Mat(H) product");
        let mut out = HMatrix::zeros(alg, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = alg.zero();
                for k in 0..self.cols {
                    let p = alg.mul(self.get(i, k), other.get(k, j));
                    for (a, b) in acc.iter_mut().zip(&p) {
                        *a += b;
                    }
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn add(&self, other: &HMatrix) -> HMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(x, y)| x.iter().zip(y).map(|(a, b)| a + b).collect())
            .collect();
        HMatrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }
}

/// `P = H_α^n · E`.
#[derive(Debug, Clone)]
pub struct ProjPresentation<G> {
    pub grade: G,
    pub n: usize,
    pub idempotent: HMatrix,
}

impl<G: Clone> ProjPresentation<G> {
    pub fn new(alg: &GradedAlgebraData, grade: G, idempotent: HMatrix) -> Result<Self> {
        if idempotent.rows() != idempotent.cols() {
            return Err(Error::ShapeMismatch("idempotent must be square".into()));
        }
        if idempotent.mul(alg, &idempotent) != idempotent {
            return Err(Error::ShapeMismatch("presentation matrix is not idempotent".into()));
        }
        Ok(ProjPresentation {
            grade,
            n: idempotent.rows(),
            idempotent,
        })
    }

    /// The free module `H_α^n`.
    pub fn free(alg: &GradedAlgebraData, grade: G, n: usize) -> Self {
        ProjPresentation {
            grade,
            n,
            idempotent: HMatrix::identity(alg, n),
        }
    }
}

/// `Σ_i λ(f_ii)` for an endomorphism `f` of `P`.
pub fn hs_trace<G: Clone>(
    alg: &GradedAlgebraData,
    lambda: &[CycNumber],
    p: &ProjPresentation<G>,
    f: &HMatrix,
) -> Result<CycNumber> {
    if f.rows() != p.n || f.cols() != p.n {
        return Err(Error::NotEndomorphismOfP(format!(
            "{}x{} matrix on a rank {} presentation",
            f.rows(),
            f.cols(),
            p.n
        )));
    }
    let efe = p.idempotent.mul(alg, f).mul(alg, &p.idempotent);
    if &efe != f {
        return Err(Error::NotEndomorphismOfP("E f E differs from f".into()));
    }
    let mut acc = CycNumber::zero(alg.modulus());
    for i in 0..p.n {
        acc += &dot(lambda, f.get(i, i));
    }
    Ok(acc)
}

/// `λ_α(f(1_α))` for an `H_α`-linear endomorphism of the regular module.
pub fn trace_on_regular<F: HopfGFamily + ?Sized>(
    fam: &F,
    lambda: &[CycNumber],
    a: &F::Grade,
    f: &Matrix,
) -> Result<CycNumber> {
    let reg = regular_module(fam, a)?;
    if let Some(w) = intertwiner_witness(fam, &reg, &reg, f)? {
        return Err(Error::NotIntertwiner(w));
    }
    let alg = fam.algebra(a)?;
    Ok(dot(lambda, &f.mul_vec(alg.unit())))
}

/// `h ↦ t(R_h)` on `H_α`.
pub fn trace_to_integral<F: HopfGFamily + ?Sized>(
    fam: &F,
    a: &F::Grade,
    trace: impl Fn(&Matrix) -> Result<CycNumber>,
) -> Result<Elem> {
    let alg = fam.algebra(a)?;
    (0..alg.dim()).map(|i| trace(&alg.right_mult(&alg.basis(i)))).collect()
}

/// Right: `tr(ρ_M(g_α) f)`; left: `tr(ρ_M(g_α⁻¹) f)`.
pub fn categorical_trace<F: HopfGFamily + ?Sized>(
    fam: &F,
    m: &ModuleRep<F::Grade>,
    f: &Matrix,
    side: Side,
) -> Result<CycNumber> {
    let g = match side {
        Side::Right => fam.pivot(m.grade())?.to_vec(),
        Side::Left => pivot_inverse(fam, m.grade())?,
    };
    Ok(m.act(&g).mul(f).trace())
}

/// Reads an `H_{αβ}`-linear map on `H_{αβ} ⊗ _εH_β` as a `d_β × d_β` matrix over `H_{αβ}`.
pub fn free_matrix_right(alg: &GradedAlgebraData, db: usize, f: &Matrix) -> HMatrix {
    let dab = alg.dim();
    let n = alg.modulus();
    let mut out = HMatrix::zeros(alg, db, db);
    for i in 0..db {
        let mut v = vec![CycNumber::zero(n); dab * db];
        for (p, u) in alg.unit().iter().enumerate() {
            v[p * db + i] = u.clone();
        }
        let image = f.mul_vec(&v);
        for j in 0..db {
            out.set(i, j, (0..dab).map(|p| image[p * db + j].clone()).collect());
        }
    }
    out
}

/// Reads an `H_{αβ}`-linear map on `_εH_α ⊗ H_{αβ}` as a `d_α × d_α` matrix over `H_{αβ}`.
pub fn free_matrix_left(alg: &GradedAlgebraData, da: usize, f: &Matrix) -> HMatrix {
    let dab = alg.dim();
    let n = alg.modulus();
    let mut out = HMatrix::zeros(alg, da, da);
    for i in 0..da {
        let mut v = vec![CycNumber::zero(n); da * dab];
        v[i * dab..(i + 1) * dab].clone_from_slice(alg.unit());
        let image = f.mul_vec(&v);
        for j in 0..da {
            out.set(i, j, image[j * dab..(j + 1) * dab].to_vec());
        }
    }
    out
}

/// Both sides of the reduction identity for one endomorphism `f` of `H_α ⊗ H_β`.
///
/// Right: `t_{H_α⊗H_β}(f)` via `ψ f φ` on the free module, against `t_{H_α}(tr^r_{H_β}(f))`.
/// Left: via `ψ^l f φ^l`, against `t_{H_β}(tr^l_{H_α}(f))`.
pub fn reduction_sides<F: HopfGFamily + ?Sized>(
    fam: &F,
    forms: &FormFamily<'_, F::Grade>,
    a: &F::Grade,
    b: &F::Grade,
    f: &Matrix,
    side: Side,
) -> Result<(CycNumber, CycNumber)> {
    let ab = fam.compose(a, b);
    let ab_alg = fam.algebra(&ab)?;
    let (da, db) = (fam.dim(a)?, fam.dim(b)?);
    let lambda_ab = forms(&ab)?;
    match side {
        Side::Right => {
            let moved = psi(fam, a, b)?.mul(f).mul(phi(fam, a, b)?);
            let m = free_matrix_right(&ab_alg, db, &moved);
            let lhs = hs_trace(&ab_alg, &lambda_ab, &ProjPresentation::free(&ab_alg, ab.clone(), db), &m)?;
            let g = fam.algebra(b)?.left_mult(&fam.pivot(b)?);
            let reduced = partial_trace_right(f, da, da, &g)?;
            let rhs = trace_on_regular(fam, &forms(a)?, a, &reduced)?;
            Ok((lhs, rhs))
        }
        Side::Left => {
            let moved = psi_left(fam, a, b)?.mul(f).mul(phi_left(fam, a, b)?);
            let m = free_matrix_left(&ab_alg, da, &moved);
            let lhs = hs_trace(&ab_alg, &lambda_ab, &ProjPresentation::free(&ab_alg, ab.clone(), da), &m)?;
            let gi = fam.algebra(a)?.left_mult(&pivot_inverse(fam, a)?);
            let reduced = partial_trace_left(f, db, db, &gi)?;
            let rhs = trace_on_regular(fam, &forms(b)?, b, &reduced)?;
            Ok((lhs, rhs))
        }
    }
}

fn side_tag(side: Side) -> &'static str {
    match side {
        Side::Right => "right",
        Side::Left => "left",
    }
}

/// The reduction identity on seeded random `H_{αβ}`-linear endomorphisms of `H_α ⊗ H_β`.
pub fn check_reduction_lemma<F: HopfGFamily + ?Sized>(
    fam: &F,
    forms: &FormFamily<'_, F::Grade>,
    a: &F::Grade,
    b: &F::Grade,
    seeds: &[u64],
    side: Side,
) -> Result<CheckReport> {
    let mut report = CheckReport::new();
    for &seed in seeds {
        let f = match side {
            Side::Right => random_endomorphism(fam, a, b, seed)?,
            Side::Left => random_endomorphism_left(fam, a, b, seed)?,
        };
        let (lhs, rhs) = reduction_sides(fam, forms, a, b, &f.matrix, side)?;
        report.push_eq(format!("reduction_{}[{a},{b}][seed={seed}]", side_tag(side)), &lhs, &rhs);
    }
    Ok(report)
}

/// The reduction identity on the spanning set `φ ∘ (R_{b_k} ⊗ E_{ij}) ∘ ψ` (right)
/// or `φ^l ∘ (E_{ij} ⊗ R_{b_k}) ∘ ψ^l` (left) of the endomorphism space.
pub fn check_reduction_lemma_exhaustive<F: HopfGFamily + ?Sized>(
    fam: &F,
    forms: &FormFamily<'_, F::Grade>,
    a: &F::Grade,
    b: &F::Grade,
    side: Side,
) -> Result<CheckReport> {
    let ab = fam.compose(a, b);
    let ab_alg = fam.algebra(&ab)?;
    let n = fam.modulus();
    let d = match side {
        Side::Right => fam.dim(b)?,
        Side::Left => fam.dim(a)?,
    };
    let (outer, inner) = match side {
        Side::Right => (phi(fam, a, b)?, psi(fam, a, b)?),
        Side::Left => (phi_left(fam, a, b)?, psi_left(fam, a, b)?),
    };
    let mut failures = Vec::new();
    let mut count = 0usize;
    for k in 0..ab_alg.dim() {
        let rk = ab_alg.right_mult(&ab_alg.basis(k));
        for i in 0..d {
            for j in 0..d {
                let mut eij = Matrix::zeros(d, d, n);
                eij.set(i, j, CycNumber::one(n));
                let middle = match side {
                    Side::Right => rk.kron(&eij),
                    Side::Left => eij.kron(&rk),
                };
                let f = outer.mul(&middle).mul(&inner);
                let (lhs, rhs) = reduction_sides(fam, forms, a, b, &f, side)?;
                count += 1;
                if lhs != rhs {
                    failures.push(format!("{}, E_{i}{j}: {lhs} vs {rhs}", ab_alg.label_of(k)));
                }
            }
        }
    }
    let mut report = CheckReport::new();
    report.push(
        format!("reduction_{}_spanning[{a},{b}] ({count} maps)", side_tag(side)),
        failures.is_empty(),
        failures.first().cloned(),
    );
    Ok(report)
}

/// `φ(1⊗m) = 1⊗m` and `(μ̃_{αβ} ⊗ Id)ψ = μ̃_α ⊗ g_β·Id`, plus the left mirror
/// `(Id ⊗ μ̃^l_{αβ})ψ^l = g_α⁻¹·Id ⊗ μ̃^l_β`.
pub fn check_decomposition_integral<F: HopfGFamily + ?Sized>(
    integral: &GIntegral<'_, F>,
    a: &F::Grade,
    b: &F::Grade,
) -> Result<CheckReport> {
    let fam = integral.family();
    let n = fam.modulus();
    let ab = fam.compose(a, b);
    let (da, db, dab) = (fam.dim(a)?, fam.dim(b)?, fam.dim(&ab)?);
    let mut report = CheckReport::new();
    let tag = format!("{a},{b}");
    let label = |j: usize| format!("e{j}");

    // φ(1 ⊗ m) = 1 ⊗ m
    let p = phi(fam, a, b)?;
    let unit_ab = Matrix::from_columns(dab, n, &[fam.algebra(&ab)?.unit().clone()]);
    let unit_a = Matrix::from_columns(da, n, &[fam.algebra(a)?.unit().clone()]);
    let id_b = Matrix::identity(db, n);
    report.push_matrix_eq(
        format!("phi_unit[{tag}]"),
        &p.mul(unit_ab.kron(&id_b)),
        &unit_a.kron(&id_b),
        label,
    );

    let mu_ab = Matrix::from_dense(n, &[integral.symmetrised_right(&ab)?]);
    let mu_a = Matrix::from_dense(n, &[integral.symmetrised_right(a)?]);
    let g_b = fam.algebra(b)?.left_mult(&fam.pivot(b)?);
    report.push_matrix_eq(
        format!("integral_psi[{tag}]"),
        &mu_ab.kron(&id_b).mul(psi(fam, a, b)?),
        &mu_a.kron(&g_b),
        label,
    );

    let mul_ab = Matrix::from_dense(n, &[integral.symmetrised_left(&ab)?]);
    let mul_b = Matrix::from_dense(n, &[integral.symmetrised_left(b)?]);
    let gi_a = fam.algebra(a)?.left_mult(&pivot_inverse(fam, a)?);
    let id_a = Matrix::identity(da, n);
    report.push_matrix_eq(
        format!("integral_psi_left[{tag}]"),
        &id_a.kron(&mul_ab).mul(psi_left(fam, a, b)?),
        &gi_a.kron(&mul_b),
        label,
    );
    Ok(report)
}

/// `t_{V⊗_εW}(f) = t_V(tr^r_{_εW}(f))` for `V = H_α`, `W = H_β` with trivial action,
/// on random `f ∈ Mat_{d_β}(H_α)`.
pub fn check_trivial_factor<F: HopfGFamily + ?Sized>(
    fam: &F,
    lambda: &[CycNumber],
    a: &F::Grade,
    b: &F::Grade,
    seed: u64,
) -> Result<CheckReport> {
    let alg = fam.algebra(a)?;
    let (da, db) = (alg.dim(), fam.dim(b)?);
    let n = fam.modulus();
    let mut rng = seeded_rng(seed);
    let entries = (0..db * db)
        .map(|_| random_element(&mut rng, da, n, 0.3))
        .collect();
    let m = HMatrix::from_entries(db, db, entries);
    let lhs = hs_trace(&alg, lambda, &ProjPresentation::free(&alg, a.clone(), db), &m)?;
    // k-linear matrix of x ↦ x·M on H_α ⊗ k^{d_β}: (h ⊗ e_i) ↦ Σ_j h M_ij ⊗ e_j
    let mut f = Matrix::zeros(da * db, da * db, n);
    for i in 0..db {
        for j in 0..db {
            let r = alg.right_mult(m.get(i, j));
            for p in 0..da {
                for (q, x) in r.row(p) {
                    f.set(p * db + j, q * db + i, x.clone());
                }
            }
        }
    }
    let eps_g = dot(&fam.counit()?, &fam.pivot(&fam.unit_grade())?);
    let reduced = partial_trace_right(&f, da, da, &Matrix::scalar(db, &eps_g))?;
    let rhs = trace_on_regular(fam, lambda, a, &reduced)?;
    let mut report = CheckReport::new();
    report.push_eq(format!("trivial_factor[{a},{b}][seed={seed}]"), &lhs, &rhs);
    Ok(report)
}

/// `λ_α^t(h) = t_{H_α}(R_h)` recovers the symmetrised integral on every basis element.
pub fn check_roundtrip<F: HopfGFamily + ?Sized>(
    integral: &GIntegral<'_, F>,
    a: &F::Grade,
    side: Side,
) -> Result<CheckReport> {
    let fam = integral.family();
    let mu = integral.symmetrised(a, side)?;
    let recovered = trace_to_integral(fam, a, |f| trace_on_regular(fam, &mu, a, f))?;
    let alg = fam.algebra(a)?;
    let mut report = CheckReport::new();
    let bad = (0..alg.dim()).find(|&i| recovered[i] != mu[i]);
    report.push(
        format!("roundtrip_{}[{a}]", side_tag(side)),
        bad.is_none(),
        bad.map(|i| format!("{}: {} vs {}", alg.label_of(i), recovered[i], mu[i])),
    );
    Ok(report)
}

/// Seeded pairs `g: U → V`, `h: V → U` between `U = H_α^2` and `V` the image of a
/// rank-one idempotent in `Mat_2(H_α)`; checks `t_V(g∘h) = t_U(h∘g)`.
pub fn check_cyclicity<F: HopfGFamily + ?Sized>(
    fam: &F,
    lambda: &[CycNumber],
    a: &F::Grade,
    seed: u64,
) -> Result<CheckReport> {
    let alg = fam.algebra(a)?;
    let (d, n) = (alg.dim(), fam.modulus());
    let mut rng = seeded_rng(seed);
    let mut rand_elem = || random_element(&mut rng, d, n, 0.3);
    let x = rand_elem();
    let e = HMatrix::from_entries(2, 2, vec![alg.unit().clone(), x, alg.zero(), alg.zero()]);
    let v = ProjPresentation::new(&alg, a.clone(), e.clone())?;
    let u = ProjPresentation::free(&alg, a.clone(), 2);
    // g: U → V is x ↦ x·G·E, h: V → U is x ↦ x·E·H
    let g = HMatrix::from_entries(2, 2, (0..4).map(|_| rand_elem()).collect()).mul(&alg, &e);
    let h = e.mul(&alg, &HMatrix::from_entries(2, 2, (0..4).map(|_| rand_elem()).collect()));
    // endomorphism of V: first h then g, i.e. H·G; endomorphism of U: G·H
    let on_v = hs_trace(&alg, lambda, &v, &h.mul(&alg, &g))?;
    let on_u = hs_trace(&alg, lambda, &u, &g.mul(&alg, &h))?;
    let mut report = CheckReport::new();
    report.push_eq(format!("cyclicity[{a}][seed={seed}]"), &on_v, &on_u);
    Ok(report)
}

/// Gram matrix of `(R_h, R_k) ↦ t(R_h R_k)` on `End(H_α)` is invertible.
pub fn check_nondegenerate<F: HopfGFamily + ?Sized>(
    fam: &F,
    lambda: &[CycNumber],
    a: &F::Grade,
) -> Result<CheckReport> {
    let alg = fam.algebra(a)?;
    let d = alg.dim();
    let rights: Vec<Matrix> = (0..d).map(|i| alg.right_mult(&alg.basis(i))).collect();
    let mut gram = Vec::with_capacity(d);
    for ri in &rights {
        let mut row = Vec::with_capacity(d);
        for rj in &rights {
            row.push(dot(lambda, &ri.mul(rj).mul_vec(alg.unit())));
        }
        gram.push(row);
    }
    let det = Matrix::from_dense(fam.modulus(), &gram).det()?;
    let mut report = CheckReport::new();
    let entry = report.push(format!("trace_pairing_nondegenerate[{a}]"), !det.is_zero(), None);
    entry.values.push(NamedValue::new("det", &det));
    Ok(report)
}

/// Right and left trace families agree on random endomorphisms of `H_α^2`.
/// Expected to pass exactly when the family is unibalanced.
pub fn check_right_left_traces_agree<F: HopfGFamily + ?Sized>(
    integral: &GIntegral<'_, F>,
    a: &F::Grade,
    seeds: &[u64],
) -> Result<CheckReport> {
    let fam = integral.family();
    let alg = fam.algebra(a)?;
    let (d, n) = (alg.dim(), fam.modulus());
    let mu_r = integral.symmetrised_right(a)?;
    let mu_l = integral.symmetrised_left(a)?;
    let p = ProjPresentation::free(&alg, a.clone(), 2);
    let mut report = CheckReport::new();
    for &seed in seeds {
        let mut rng = seeded_rng(seed);
        let f = HMatrix::from_entries(2, 2, (0..4).map(|_| random_element(&mut rng, d, n, 0.4)).collect());
        let tr = hs_trace(&alg, &mu_r, &p, &f)?;
        let tl = hs_trace(&alg, &mu_l, &p, &f)?;
        report.push_eq(format!("right_trace_equals_left[{a}][seed={seed}]"), &tr, &tl);
    }
    Ok(report)
}

/// The categorical trace of `R_h` on `H_α` is a single multiple `c·λ(h)` across samples.
/// Returns the report and the constant.
pub fn check_categorical_proportional<F: HopfGFamily + ?Sized>(
    fam: &F,
    lambda: &[CycNumber],
    a: &F::Grade,
    seeds: &[u64],
    side: Side,
) -> Result<(CheckReport, Option<CycNumber>)> {
    let alg = fam.algebra(a)?;
    let reg = regular_module(fam, a)?;
    let n = fam.modulus();
    let mut constant: Option<CycNumber> = None;
    let mut witness = None;
    let mut report = CheckReport::new();
    for &seed in seeds {
        let mut rng = seeded_rng(seed);
        // dense, so that λ(h) = 0 only by cancellation
        let h = random_element(&mut rng, alg.dim(), n, 1.0);
        let f = alg.right_mult(&h);
        let cat = categorical_trace(fam, &reg, &f, side)?;
        let t = dot(lambda, &h);
        if t.is_zero() {
            if !cat.is_zero() {
                witness.get_or_insert(format!("seed {seed}: λ(h) = 0 but categorical trace = {cat}"));
            }
            continue;
        }
        let c = &cat * &t.inv()?;
        match &constant {
            None => constant = Some(c),
            Some(c0) if *c0 != c => {
                witness.get_or_insert(format!("seed {seed}: ratio {c} differs from {c0}"));
            }
            Some(_) => {}
        }
    }
    let entry = report.push(
        format!("categorical_proportional_{}[{a}]", side_tag(side)),
        witness.is_none() && constant.is_some(),
        witness.or_else(|| constant.is_none().then(|| "λ(h) vanished on every sample".to_string())),
    );
    if let Some(c) = &constant {
        entry.values.push(NamedValue::new("constant", c));
    }
    Ok((report, constant))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::uqsl2::{Sl2Family, Sl2Grade};

    fn half() -> Sl2Grade {
        Sl2Grade::from_ratio(1, 2)
    }

    #[test]
    fn regular_trace_values() {
        let fam = Sl2Family::new(2, 2);
        let a = half();
        let integral = GIntegral::new(&fam).unwrap();
        let mu = integral.symmetrised_right(&a).unwrap();
        let alg = fam.algebra(&a).unwrap();
        let ef = fam.monomial(1, 1, 0);
        assert!(trace_on_regular(&fam, &mu, &a, &alg.right_mult(&ef)).unwrap().is_one());
        assert!(trace_on_regular(&fam, &mu, &a, &Matrix::identity(8, fam.modulus())).unwrap().is_zero());
        let not_linear = alg.left_mult(&ef);
        assert!(matches!(
            trace_on_regular(&fam, &mu, &a, &not_linear),
            Err(Error::NotIntertwiner(_))
        ));
    }

    #[test]
    fn hs_trace_rejects_non_endomorphism() {
        let fam = Sl2Family::new(2, 2);
        let a = half();
        let alg = fam.algebra(&a).unwrap();
        let x = fam.monomial(1, 0, 0);
        let e = HMatrix::from_entries(2, 2, vec![alg.unit().clone(), x, alg.zero(), alg.zero()]);
        let p = ProjPresentation::new(&alg, a, e).unwrap();
        let f = HMatrix::identity(&alg, 2);
        assert!(matches!(
            hs_trace(&alg, alg.unit(), &p, &f),
            Err(Error::NotEndomorphismOfP(_))
        ));
    }

    #[test]
    fn reduction_holds_r2() {
        let fam = Sl2Family::new(2, 2);
        let a = half();
        let integral = GIntegral::new(&fam).unwrap();
        let right = |g: &Sl2Grade| integral.symmetrised_right(g);
        let left = |g: &Sl2Grade| integral.symmetrised_left(g);
        let r = check_reduction_lemma(&fam, &right, &a, &a, &[1, 2, 3], Side::Right).unwrap();
        assert!(r.all_passed(), "{:?}", r.failures());
        let l = check_reduction_lemma(&fam, &left, &a, &a, &[1, 2, 3], Side::Left).unwrap();
        assert!(l.all_passed(), "{:?}", l.failures());
    }

    #[test]
    fn cyclicity_and_roundtrip() {
        let fam = Sl2Family::new(2, 2);
        let a = half();
        let integral = GIntegral::new(&fam).unwrap();
        let mu = integral.symmetrised_right(&a).unwrap();
        assert!(check_cyclicity(&fam, &mu, &a, 5).unwrap().all_passed());
        assert!(check_roundtrip(&integral, &a, Side::Right).unwrap().all_passed());
        assert!(check_roundtrip(&integral, &a, Side::Left).unwrap().all_passed());
        assert!(check_nondegenerate(&fam, &mu, &a).unwrap().all_passed());
        assert!(check_trivial_factor(&fam, &mu, &a, &a, 3).unwrap().all_passed());
        let r = check_decomposition_integral(&integral, &a, &a).unwrap();
        assert!(r.all_passed(), "{:?}", r.failures());
    }
}
