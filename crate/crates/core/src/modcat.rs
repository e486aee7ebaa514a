//! The pivotal G-graded category of modules: actions, duals, tensor products,
//! (co)evaluations, partial traces and the `φ`/`ψ` decomposition maps.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::hopf_core::{dot, pivot_inverse, CheckReport, Elem, HopfGFamily};
use crate::linalg::{Matrix, SparseVec};
use crate::scalar::CycNumber;

#[derive(Debug)]
enum Kind<G> {
    /// `ρ(b_i)` for every basis element.
    Explicit(Vec<Matrix>),
    Tensor {
        left: ModuleRep<G>,
        right: ModuleRep<G>,
        coproduct: Arc<Matrix>,
    },
    /// `ρ(h) = ρ_base(S(h))^T` with `S = S_{α⁻¹}`.
    Dual {
        base: ModuleRep<G>,
        antipode: Arc<Matrix>,
    },
    /// `ρ(h) = ε(h) Id`.
    Trivial { counit: Arc<Elem> },
}

/// A finite-dimensional module over `H_α`.
#[derive(Debug, Clone)]
pub struct ModuleRep<G> {
    grade: G,
    dim: usize,
    algebra_dim: usize,
    modulus: u32,
    kind: Arc<Kind<G>>,
}

impl<G: Clone + std::fmt::Display> ModuleRep<G> {
    /// A module given by the action matrices of all basis elements of `H_α`.
    pub fn explicit(grade: G, dim: usize, modulus: u32, basis_action: Vec<Matrix>) -> Self {
        assert!(basis_action.iter().all(|m| m.rows() == dim && m.cols() == dim));
        ModuleRep {
            grade,
            dim,
            algebra_dim: basis_action.len(),
            modulus,
            kind: Arc::new(Kind::Explicit(basis_action)),
        }
    }

    pub fn grade(&self) -> &G {
        &self.grade
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn algebra_dim(&self) -> usize {
        self.algebra_dim
    }

    /// `ρ(h)`.
    pub fn act(&self, h: &[CycNumber]) -> Matrix {
        assert_eq!(h.len(), self.algebra_dim, "element of the wrong grade piece");
        match &*self.kind {
            Kind::Explicit(basis) => {
                let mut m = Matrix::zeros(self.dim, self.dim, self.modulus);
                for (c, b) in h.iter().zip(basis) {
                    if !c.is_zero() {
                        m = m.axpy(b, c);
                    }
                }
                m
            }
            Kind::Tensor {
                left,
                right,
                coproduct,
            } => {
                let dh = coproduct.mul_vec(h);
                let dr = right.algebra_dim;
                let mut m = Matrix::zeros(self.dim, self.dim, self.modulus);
                for i in 0..left.algebra_dim {
                    let y = &dh[i * dr..(i + 1) * dr];
                    if y.iter().all(CycNumber::is_zero) {
                        continue;
                    }
                    let mut bi = vec![CycNumber::zero(self.modulus); left.algebra_dim];
                    bi[i] = CycNumber::one(self.modulus);
                    m = m.add(&left.act(&bi).kron(right.act(y)));
                }
                m
            }
            Kind::Dual { base, antipode } => base.act(&antipode.mul_vec(h)).transpose(),
            Kind::Trivial { counit } => Matrix::scalar(self.dim, &dot(counit, h)),
        }
    }

    pub fn act_basis(&self, i: usize) -> Matrix {
        if let Kind::Explicit(basis) = &*self.kind {
            return basis[i].clone();
        }
        let mut b = vec![CycNumber::zero(self.modulus); self.algebra_dim];
        b[i] = CycNumber::one(self.modulus);
        self.act(&b)
    }
}

/// A linear map between modules of the same grade.
#[derive(Debug, Clone)]
pub struct Morphism<G> {
    pub source: ModuleRep<G>,
    pub target: ModuleRep<G>,
    pub matrix: Matrix,
}

impl<G: Clone + Eq + std::fmt::Display> Morphism<G> {
    pub fn new(source: ModuleRep<G>, target: ModuleRep<G>, matrix: Matrix) -> Result<Self> {
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} matrix between modules of dimension {} and {}",
                matrix.rows(),
                matrix.cols(),
                source.dim(),
                target.dim()
            )));
        }
        if source.grade() != target.grade() {
            return Err(Error::ShapeMismatch(format!(
                "morphism between grades {} and {}",
                source.grade(),
                target.grade()
            )));
        }
        Ok(Morphism {
            source,
            target,
            matrix,
        })
    }
}

fn test_elements<F: HopfGFamily + ?Sized>(fam: &F, a: &F::Grade) -> Result<Vec<(String, Elem)>> {
    let alg = fam.algebra(a)?;
    Ok(match fam.generators(a) {
        Some(gens) => gens
            .into_iter()
            .map(|g| (alg.format_elem(&g), g))
            .collect(),
        None => (0..alg.dim())
            .map(|i| (alg.label_of(i).to_string(), alg.basis(i)))
            .collect(),
    })
}

/// `None` when `X ρ_src(h) = ρ_tgt(h) X` for all test elements, otherwise a witness.
pub fn intertwiner_witness<F: HopfGFamily + ?Sized>(
    fam: &F,
    source: &ModuleRep<F::Grade>,
    target: &ModuleRep<F::Grade>,
    x: &Matrix,
) -> Result<Option<String>> {
    if source.grade() != target.grade() {
        return Ok(Some(format!(
            "source grade {} differs from target grade {}",
            source.grade(),
            target.grade()
        )));
    }
    for (name, h) in test_elements(fam, source.grade())? {
        let lhs = x.mul(source.act(&h));
        let rhs = target.act(&h).mul(x);
        if let Some(&(i, j)) = lhs.diff_positions(&rhs).first() {
            return Ok(Some(format!("element {name}, entry ({i}, {j})")));
        }
    }
    Ok(None)
}

pub fn check_intertwiner<F: HopfGFamily + ?Sized>(
    fam: &F,
    name: &str,
    m: &Morphism<F::Grade>,
) -> Result<CheckReport> {
    let w = intertwiner_witness(fam, &m.source, &m.target, &m.matrix)?;
    let mut report = CheckReport::new();
    report.push(name, w.is_none(), w);
    Ok(report)
}

/// `ρ(b_i) ρ(b_j) = ρ(b_i b_j)` for all basis pairs and `ρ(1) = Id`.
pub fn check_module_axioms<F: HopfGFamily + ?Sized>(fam: &F, m: &ModuleRep<F::Grade>) -> Result<CheckReport> {
    let alg = fam.algebra(m.grade())?;
    let d = alg.dim();
    let acts: Vec<Matrix> = (0..d).map(|i| m.act_basis(i)).collect();
    let mut witness = None;
    'outer: for i in 0..d {
        for j in 0..d {
            let lhs = acts[i].mul(&acts[j]);
            let mut rhs = Matrix::zeros(m.dim(), m.dim(), m.modulus());
            for (k, c) in alg.basis_product(i, j) {
                rhs = rhs.axpy(&acts[*k], c);
            }
            if lhs != rhs {
                witness = Some(format!("({}, {})", alg.label_of(i), alg.label_of(j)));
                break 'outer;
            }
        }
    }
    let mut report = CheckReport::new();
    report.push(format!("module_multiplicative[{}]", m.grade()), witness.is_none(), witness);
    let unit_ok = m.act(alg.unit()).is_identity();
    report.push(format!("module_unit[{}]", m.grade()), unit_ok, None);
    Ok(report)
}

/// `H_α` acting on itself by left multiplication.
pub fn regular_module<F: HopfGFamily + ?Sized>(fam: &F, a: &F::Grade) -> Result<ModuleRep<F::Grade>> {
    let alg = fam.algebra(a)?;
    let acts = (0..alg.dim()).map(|i| alg.left_mult(&alg.basis(i))).collect();
    Ok(ModuleRep::explicit(a.clone(), alg.dim(), fam.modulus(), acts))
}

/// The vector space `H_β` as an `H_1`-module through the counit.
pub fn trivial_twist_module<F: HopfGFamily + ?Sized>(fam: &F, b: &F::Grade) -> Result<ModuleRep<F::Grade>> {
    trivial_module(fam, fam.dim(b)?)
}

/// `k^n` with `H_1` acting by the counit.
pub fn trivial_module<F: HopfGFamily + ?Sized>(fam: &F, n: usize) -> Result<ModuleRep<F::Grade>> {
    let one = fam.unit_grade();
    let counit = fam.counit()?;
    Ok(ModuleRep {
        grade: one,
        dim: n,
        algebra_dim: counit.len(),
        modulus: fam.modulus(),
        kind: Arc::new(Kind::Trivial { counit }),
    })
}

/// `V*` in grade `α⁻¹` with `(h f)(x) = f(S_{α⁻¹}(h) x)`.
pub fn dual_module<F: HopfGFamily + ?Sized>(fam: &F, m: &ModuleRep<F::Grade>) -> Result<ModuleRep<F::Grade>> {
    let ai = fam.inverse(m.grade());
    let antipode = fam.antipode(&ai)?;
    Ok(ModuleRep {
        grade: ai.clone(),
        dim: m.dim(),
        algebra_dim: fam.dim(&ai)?,
        modulus: m.modulus(),
        kind: Arc::new(Kind::Dual {
            base: m.clone(),
            antipode,
        }),
    })
}

/// `M ⊗ N` in grade `αβ`, acting through `Δ_{α,β}`.
pub fn tensor_module<F: HopfGFamily + ?Sized>(
    fam: &F,
    m: &ModuleRep<F::Grade>,
    n: &ModuleRep<F::Grade>,
) -> Result<ModuleRep<F::Grade>> {
    let ab = fam.compose(m.grade(), n.grade());
    let coproduct = fam.coproduct(m.grade(), n.grade())?;
    Ok(ModuleRep {
        grade: ab.clone(),
        dim: m.dim() * n.dim(),
        algebra_dim: fam.dim(&ab)?,
        modulus: m.modulus(),
        kind: Arc::new(Kind::Tensor {
            left: m.clone(),
            right: n.clone(),
            coproduct,
        }),
    })
}

/// The four duality morphisms of `V`:
/// `ev_right: V*⊗V → 1, f⊗v ↦ f(v)`; `coev_right: 1 → V⊗V*, 1 ↦ Σ v_j⊗v^j`;
/// `ev_left: V⊗V* → 1, v⊗f ↦ f(g v)`; `coev_left: 1 → V*⊗V, 1 ↦ Σ v^i⊗g⁻¹v_i`.
#[derive(Debug, Clone)]
pub struct Duality<G> {
    pub ev_right: Morphism<G>,
    pub coev_right: Morphism<G>,
    pub ev_left: Morphism<G>,
    pub coev_left: Morphism<G>,
}

pub fn duality_morphisms<F: HopfGFamily + ?Sized>(fam: &F, v: &ModuleRep<F::Grade>) -> Result<Duality<F::Grade>> {
    let d = v.dim();
    let n = v.modulus();
    let one = CycNumber::one(n);
    let dual = dual_module(fam, v)?;
    let unit = trivial_module(fam, 1)?;
    let g = v.act(&fam.pivot(v.grade())?);
    let g_inv = v.act(&pivot_inverse(fam, v.grade())?);

    let pairing: SparseVec = (0..d).map(|i| (i * d + i, one.clone())).collect();
    let ev_right = Matrix::from_sparse_rows(d * d, n, vec![pairing.clone()]);
    let coev_right = Matrix::from_sparse_columns(d * d, n, &[pairing]);
    // ev_left(v_i ⊗ f_j) = ρ(g)_{ji}
    let ev_row: SparseVec = (0..d * d)
        .map(|p| (p, g.get(p % d, p / d)))
        .filter(|(_, x)| !x.is_zero())
        .collect();
    let ev_left = Matrix::from_sparse_rows(d * d, n, vec![ev_row]);
    // coev_left = Σ_{i,k} ρ(g⁻¹)_{ki} v^i ⊗ v_k
    let coev_col: SparseVec = (0..d * d)
        .map(|p| (p, g_inv.get(p % d, p / d)))
        .filter(|(_, x)| !x.is_zero())
        .collect();
    let coev_left = Matrix::from_sparse_columns(d * d, n, &[coev_col]);

    Ok(Duality {
        ev_right: Morphism::new(tensor_module(fam, &dual, v)?, unit.clone(), ev_right)?,
        coev_right: Morphism::new(unit.clone(), tensor_module(fam, v, &dual)?, coev_right)?,
        ev_left: Morphism::new(tensor_module(fam, v, &dual)?, unit.clone(), ev_left)?,
        coev_left: Morphism::new(unit, tensor_module(fam, &dual, v)?, coev_left)?,
    })
}

/// Intertwiner checks of the four duality maps, the four zig-zag identities,
/// and invertibility plus H-linearity of `Φ_V = (ev_left ⊗ Id)(Id ⊗ coev_right_{V*})`.
pub fn check_duality<F: HopfGFamily + ?Sized>(fam: &F, v: &ModuleRep<F::Grade>) -> Result<CheckReport> {
    let d = v.dim();
    let n = v.modulus();
    let id = Matrix::identity(d, n);
    let du = duality_morphisms(fam, v)?;
    let tag = v.grade().to_string();
    let mut report = CheckReport::new();
    for (name, m) in [
        ("ev_right", &du.ev_right),
        ("coev_right", &du.coev_right),
        ("ev_left", &du.ev_left),
        ("coev_left", &du.coev_left),
    ] {
        report.extend(check_intertwiner(fam, &format!("{name}_linear[{tag}]"), m)?);
    }
    let label = |j: usize| format!("v{j}");
    let z1 = id.kron(&du.ev_right.matrix).mul(du.coev_right.matrix.kron(&id));
    report.push_matrix_eq(format!("zigzag_right_V[{tag}]"), &z1, &id, label);
    let z2 = du.ev_right.matrix.kron(&id).mul(id.kron(&du.coev_right.matrix));
    report.push_matrix_eq(format!("zigzag_right_dual[{tag}]"), &z2, &id, label);
    let z3 = du.ev_left.matrix.kron(&id).mul(id.kron(&du.coev_left.matrix));
    report.push_matrix_eq(format!("zigzag_left_V[{tag}]"), &z3, &id, label);
    let z4 = id.kron(&du.ev_left.matrix).mul(du.coev_left.matrix.kron(&id));
    report.push_matrix_eq(format!("zigzag_left_dual[{tag}]"), &z4, &id, label);

    let phi = pivotal_iso(fam, v)?;
    report.extend(check_intertwiner(fam, &format!("pivotal_iso_linear[{tag}]"), &phi)?);
    let invertible = phi.matrix.det()?.is_zero().then_some(()).is_none();
    report.push(format!("pivotal_iso_invertible[{tag}]"), invertible, None);
    Ok(report)
}

/// `Φ_V: V → V**`.
pub fn pivotal_iso<F: HopfGFamily + ?Sized>(fam: &F, v: &ModuleRep<F::Grade>) -> Result<Morphism<F::Grade>> {
    let d = v.dim();
    let n = v.modulus();
    let dual = dual_module(fam, v)?;
    let ddual = dual_module(fam, &dual)?;
    let du_v = duality_morphisms(fam, v)?;
    let du_dual = duality_morphisms(fam, &dual)?;
    let id = Matrix::identity(d, n);
    let m = du_v
        .ev_left
        .matrix
        .kron(&id)
        .mul(id.kron(&du_dual.coev_right.matrix));
    Morphism::new(v.clone(), ddual, m)
}

/// `tr^r_W(f)` for `f: U⊗W → V⊗W`, by contraction against `ρ_W(g)`:
/// `tr(f)_{v,u} = Σ_{j,k} f_{(v,k),(u,j)} ρ_W(g)_{jk}`.
pub fn partial_trace_right(f: &Matrix, du: usize, dv: usize, w_pivot: &Matrix) -> Result<Matrix> {
    let dw = w_pivot.rows();
    if f.rows() != dv * dw || f.cols() != du * dw {
        return Err(Error::ShapeMismatch(format!(
            "{}x{} map is not U⊗W → V⊗W with dim U = {du}, dim V = {dv}, dim W = {dw}",
            f.rows(),
            f.cols()
        )));
    }
    let n = f.modulus();
    let mut out = Matrix::zeros(dv, du, n);
    let mut acc = vec![vec![CycNumber::zero(n); du]; dv];
    for row in 0..f.rows() {
        let (v, k) = (row / dw, row % dw);
        for (col, x) in f.row(row) {
            let (u, j) = (col / dw, col % dw);
            let g = w_pivot.get(j, k);
            if !g.is_zero() {
                acc[v][u] += &(x * &g);
            }
        }
    }
    for (v, row) in acc.into_iter().enumerate() {
        for (u, x) in row.into_iter().enumerate() {
            out.set(v, u, x);
        }
    }
    Ok(out)
}

/// `tr^l_W(f)` for `f: W⊗U → W⊗V`:
/// `tr(f)_{v,u} = Σ_{i,k} ρ_W(g⁻¹)_{ki} f_{(i,v),(k,u)}`.
pub fn partial_trace_left(f: &Matrix, du: usize, dv: usize, w_pivot_inv: &Matrix) -> Result<Matrix> {
    let dw = w_pivot_inv.rows();
    if f.rows() != dw * dv || f.cols() != dw * du {
        return Err(Error::ShapeMismatch(format!(
            "{}x{} map is not W⊗U → W⊗V with dim U = {du}, dim V = {dv}, dim W = {dw}",
            f.rows(),
            f.cols()
        )));
    }
    let n = f.modulus();
    let mut acc = vec![vec![CycNumber::zero(n); du]; dv];
    for row in 0..f.rows() {
        let (i, v) = (row / dv, row % dv);
        for (col, x) in f.row(row) {
            let (k, u) = (col / du, col % du);
            let g = w_pivot_inv.get(k, i);
            if !g.is_zero() {
                acc[v][u] += &(x * &g);
            }
        }
    }
    let mut out = Matrix::zeros(dv, du, n);
    for (v, row) in acc.into_iter().enumerate() {
        for (u, x) in row.into_iter().enumerate() {
            out.set(v, u, x);
        }
    }
    Ok(out)
}

/// `(Id_V ⊗ ev_left_W)(f ⊗ Id_{W*})(Id_U ⊗ coev_right_W)` built from explicit matrices.
pub fn partial_trace_right_composite<F: HopfGFamily + ?Sized>(
    fam: &F,
    f: &Matrix,
    du: usize,
    dv: usize,
    w: &ModuleRep<F::Grade>,
) -> Result<Matrix> {
    let n = f.modulus();
    let du_w = duality_morphisms(fam, w)?;
    let dw = w.dim();
    let step1 = Matrix::identity(du, n).kron(&du_w.coev_right.matrix);
    let step2 = f.kron(Matrix::identity(dw, n));
    let step3 = Matrix::identity(dv, n).kron(&du_w.ev_left.matrix);
    Ok(step3.mul(step2.mul(step1)))
}

/// `(ev_right_W ⊗ Id_V)(Id_{W*} ⊗ f)(coev_left_W ⊗ Id_U)` built from explicit matrices.
pub fn partial_trace_left_composite<F: HopfGFamily + ?Sized>(
    fam: &F,
    f: &Matrix,
    du: usize,
    dv: usize,
    w: &ModuleRep<F::Grade>,
) -> Result<Matrix> {
    let n = f.modulus();
    let du_w = duality_morphisms(fam, w)?;
    let dw = w.dim();
    let step1 = du_w.coev_left.matrix.kron(Matrix::identity(du, n));
    let step2 = Matrix::identity(dw, n).kron(f);
    let step3 = du_w.ev_right.matrix.kron(Matrix::identity(dv, n));
    Ok(step3.mul(step2.mul(step1)))
}

/// Which of the four decomposition maps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Decomposition {
    /// `H_{αβ} ⊗ _εH_β → H_α ⊗ H_β`, `h⊗m ↦ h_(1) ⊗ h_(2) m`.
    Phi,
    /// Inverse of `Phi`, `x⊗y ↦ x_(1) ⊗ S_{β⁻¹}(x_(2)) y`.
    Psi,
    /// `_εH_α ⊗ H_{αβ} → H_α ⊗ H_β`, `m⊗h ↦ h_(1) m ⊗ h_(2)`.
    PhiLeft,
    /// Inverse of `PhiLeft`, `x⊗y ↦ S_α⁻¹(y_(1)) x ⊗ y_(2)`.
    PsiLeft,
}

/// Matrix of `φ_{α,β}`.
pub fn phi<F: HopfGFamily + ?Sized>(fam: &F, a: &F::Grade, b: &F::Grade) -> Result<Matrix> {
    let ab = fam.compose(a, b);
    let (da, db, dab) = (fam.dim(a)?, fam.dim(b)?, fam.dim(&ab)?);
    let b_alg = fam.algebra(b)?;
    let delta = fam.coproduct(a, b)?.sparse_columns();
    let n = fam.modulus();
    let mut cols: Vec<SparseVec> = Vec::with_capacity(dab * db);
    for col in delta.iter().take(dab) {
        for j in 0..db {
            let mut acc = vec![CycNumber::zero(n); da * db];
            for (pq, c) in col {
                let (p, q) = (pq / db, pq % db);
                for (t, c2) in b_alg.basis_product(q, j) {
                    acc[p * db + t] += &(c * c2);
                }
            }
            cols.push(crate::linalg::to_sparse(&acc));
        }
    }
    Ok(Matrix::from_sparse_columns(da * db, n, &cols))
}

/// Matrix of `ψ_{α,β}`.
pub fn psi<F: HopfGFamily + ?Sized>(fam: &F, a: &F::Grade, b: &F::Grade) -> Result<Matrix> {
    let ab = fam.compose(a, b);
    let bi = fam.inverse(b);
    let (da, db, dab, dbi) = (fam.dim(a)?, fam.dim(b)?, fam.dim(&ab)?, fam.dim(&bi)?);
    let b_alg = fam.algebra(b)?;
    let delta = fam.coproduct(&ab, &bi)?.sparse_columns();
    let s = fam.antipode(&bi)?.sparse_columns();
    let n = fam.modulus();
    let mut cols: Vec<SparseVec> = Vec::with_capacity(da * db);
    for col in delta.iter().take(da) {
        for j in 0..db {
            let mut acc = vec![CycNumber::zero(n); dab * db];
            for (pq, c) in col {
                let (p, q) = (pq / dbi, pq % dbi);
                for (sq, c2) in &s[q] {
                    let c12 = c * c2;
                    for (t, c3) in b_alg.basis_product(*sq, j) {
                        acc[p * db + t] += &(&c12 * c3);
                    }
                }
            }
            cols.push(crate::linalg::to_sparse(&acc));
        }
    }
    Ok(Matrix::from_sparse_columns(dab * db, n, &cols))
}

/// Matrix of `φ^l_{α,β}`.
pub fn phi_left<F: HopfGFamily + ?Sized>(fam: &F, a: &F::Grade, b: &F::Grade) -> Result<Matrix> {
    let ab = fam.compose(a, b);
    let (da, db, dab) = (fam.dim(a)?, fam.dim(b)?, fam.dim(&ab)?);
    let a_alg = fam.algebra(a)?;
    let delta = fam.coproduct(a, b)?.sparse_columns();
    let n = fam.modulus();
    let mut cols: Vec<SparseVec> = Vec::with_capacity(da * dab);
    for j in 0..da {
        for col in delta.iter().take(dab) {
            let mut acc = vec![CycNumber::zero(n); da * db];
            for (pq, c) in col {
                let (p, q) = (pq / db, pq % db);
                for (t, c2) in a_alg.basis_product(p, j) {
                    acc[t * db + q] += &(c * c2);
                }
            }
            cols.push(crate::linalg::to_sparse(&acc));
        }
    }
    Ok(Matrix::from_sparse_columns(da * db, n, &cols))
}

/// Matrix of `ψ^l_{α,β}`.
pub fn psi_left<F: HopfGFamily + ?Sized>(fam: &F, a: &F::Grade, b: &F::Grade) -> Result<Matrix> {
    let ab = fam.compose(a, b);
    let ai = fam.inverse(a);
    let (da, db, dab) = (fam.dim(a)?, fam.dim(b)?, fam.dim(&ab)?);
    let a_alg = fam.algebra(a)?;
    let delta = fam.coproduct(&ai, &ab)?.sparse_columns();
    let s_inv = fam.antipode(a)?.inverse()?.sparse_columns();
    let n = fam.modulus();
    let mut cols: Vec<SparseVec> = Vec::with_capacity(da * db);
    for i in 0..da {
        for col in delta.iter().take(db) {
            let mut acc = vec![CycNumber::zero(n); da * dab];
            for (pq, c) in col {
                let (p, q) = (pq / dab, pq % dab);
                for (sp, c2) in &s_inv[p] {
                    let c12 = c * c2;
                    for (t, c3) in a_alg.basis_product(*sp, i) {
                        acc[t * dab + q] += &(&c12 * c3);
                    }
                }
            }
            cols.push(crate::linalg::to_sparse(&acc));
        }
    }
    Ok(Matrix::from_sparse_columns(da * dab, n, &cols))
}

/// Source and target modules of a decomposition map.
pub fn decomposition_modules<F: HopfGFamily + ?Sized>(
    fam: &F,
    a: &F::Grade,
    b: &F::Grade,
    which: Decomposition,
) -> Result<(ModuleRep<F::Grade>, ModuleRep<F::Grade>)> {
    let ab = fam.compose(a, b);
    let split = tensor_module(fam, &regular_module(fam, a)?, &regular_module(fam, b)?)?;
    let right = tensor_module(fam, &regular_module(fam, &ab)?, &trivial_twist_module(fam, b)?)?;
    let left = tensor_module(fam, &trivial_twist_module(fam, a)?, &regular_module(fam, &ab)?)?;
    Ok(match which {
        Decomposition::Phi => (right, split),
        Decomposition::Psi => (split, right),
        Decomposition::PhiLeft => (left, split),
        Decomposition::PsiLeft => (split, left),
    })
}

pub fn decomposition_morphism<F: HopfGFamily + ?Sized>(
    fam: &F,
    a: &F::Grade,
    b: &F::Grade,
    which: Decomposition,
) -> Result<Morphism<F::Grade>> {
    let m = match which {
        Decomposition::Phi => phi(fam, a, b)?,
        Decomposition::Psi => psi(fam, a, b)?,
        Decomposition::PhiLeft => phi_left(fam, a, b)?,
        Decomposition::PsiLeft => psi_left(fam, a, b)?,
    };
    let (s, t) = decomposition_modules(fam, a, b, which)?;
    Morphism::new(s, t, m)
}

/// Mutual inverseness and H-linearity of `φ, ψ, φ^l, ψ^l`.
pub fn check_decomposition<F: HopfGFamily + ?Sized>(fam: &F, a: &F::Grade, b: &F::Grade) -> Result<CheckReport> {
    let mut report = CheckReport::new();
    let tag = format!("{a},{b}");
    let label = |j: usize| format!("e{j}");
    let mut maps = Vec::new();
    for which in [
        Decomposition::Phi,
        Decomposition::Psi,
        Decomposition::PhiLeft,
        Decomposition::PsiLeft,
    ] {
        let m = decomposition_morphism(fam, a, b, which)?;
        report.extend(check_intertwiner(fam, &format!("{which:?}_linear[{tag}]"), &m)?);
        maps.push(m.matrix);
    }
    let n = fam.modulus();
    let id = |k: usize| Matrix::identity(k, n);
    let (p, s, pl, sl) = (&maps[0], &maps[1], &maps[2], &maps[3]);
    report.push_matrix_eq(format!("psi_phi[{tag}]"), &s.mul(p), &id(p.cols()), label);
    report.push_matrix_eq(format!("phi_psi[{tag}]"), &p.mul(s), &id(s.cols()), label);
    report.push_matrix_eq(format!("psi_left_phi_left[{tag}]"), &sl.mul(pl), &id(pl.cols()), label);
    report.push_matrix_eq(format!("phi_left_psi_left[{tag}]"), &pl.mul(sl), &id(sl.cols()), label);
    Ok(report)
}

/// All intertwiners `M → N` via the nullspace of `X ρ_M(h) - ρ_N(h) X = 0`.
pub fn hom_space<F: HopfGFamily + ?Sized>(
    fam: &F,
    m: &ModuleRep<F::Grade>,
    n: &ModuleRep<F::Grade>,
) -> Result<Vec<Morphism<F::Grade>>> {
    if m.grade() != n.grade() {
        return Err(Error::ShapeMismatch(format!(
            "Hom between grades {} and {} is zero by grading",
            m.grade(),
            n.grade()
        )));
    }
    let (dm, dn) = (m.dim(), n.dim());
    let modulus = fam.modulus();
    let mut rows: Vec<SparseVec> = Vec::new();
    for (_, h) in test_elements(fam, m.grade())? {
        let rm = m.act(&h);
        let rn = n.act(&h);
        let rm_t = rm.transpose();
        // equation (a, c): Σ_b X_{ab} ρ_M(h)_{bc} - Σ_b ρ_N(h)_{ab} X_{bc}
        for a in 0..dn {
            for c in 0..dm {
                let mut row: SparseVec = Vec::new();
                for (b, x) in rm_t.row(c) {
                    row.push((a * dm + b, x.clone()));
                }
                for (b, x) in rn.row(a) {
                    let idx = b * dm + c;
                    match row.iter_mut().find(|(k, _)| *k == idx) {
                        Some((_, y)) => *y -= x,
                        None => row.push((idx, -x)),
                    }
                }
                if !row.is_empty() {
                    rows.push(row);
                }
            }
        }
    }
    let system = Matrix::from_sparse_rows(dm * dn, modulus, rows);
    system
        .nullspace()
        .into_iter()
        .map(|v| {
            let dense: Vec<Vec<CycNumber>> = v.chunks(dm).map(<[CycNumber]>::to_vec).collect();
            Morphism::new(m.clone(), n.clone(), Matrix::from_dense(modulus, &dense))
        })
        .collect()
}

/// Deterministic pseudo-random element of `H_α` with small cyclotomic coefficients.
pub fn random_element(rng: &mut ChaCha8Rng, dim: usize, modulus: u32, density: f64) -> Elem {
    let mut v: Elem = (0..dim)
        .map(|_| {
            if rng.gen_bool(density) {
                random_scalar(rng, modulus)
            } else {
                CycNumber::zero(modulus)
            }
        })
        .collect();
    if v.iter().all(CycNumber::is_zero) {
        let i = rng.gen_range(0..dim);
        v[i] = random_scalar(rng, modulus);
    }
    v
}

pub fn random_scalar(rng: &mut ChaCha8Rng, modulus: u32) -> CycNumber {
    let mut c = rng.gen_range(-3i64..=3);
    if c == 0 {
        c = 1;
    }
    let k = rng.gen_range(0..modulus as i64);
    &CycNumber::from_integer(modulus, c) * &CycNumber::root_of_unity(modulus, k)
}

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A pseudo-random `H_{αβ}`-linear endomorphism of `H_α ⊗ H_β`:
/// `f = φ ∘ (Σ_t R_{h_t} ⊗ u_t v_tᵀ) ∘ ψ`.
pub fn random_endomorphism<F: HopfGFamily + ?Sized>(
    fam: &F,
    a: &F::Grade,
    b: &F::Grade,
    seed: u64,
) -> Result<Morphism<F::Grade>> {
    let ab = fam.compose(a, b);
    let ab_alg = fam.algebra(&ab)?;
    let db = fam.dim(b)?;
    let n = fam.modulus();
    let mut rng = seeded_rng(seed);
    let mut middle = Matrix::zeros(ab_alg.dim() * db, ab_alg.dim() * db, n);
    for _ in 0..2 {
        let h = random_element(&mut rng, ab_alg.dim(), n, 0.3);
        let u = random_element(&mut rng, db, n, 0.4);
        let v = random_element(&mut rng, db, n, 0.4);
        let rank_one = Matrix::from_columns(db, n, &[u]).mul(Matrix::from_dense(n, &[v]));
        middle = middle.add(&ab_alg.right_mult(&h).kron(&rank_one));
    }
    let f = phi(fam, a, b)?.mul(&middle).mul(psi(fam, a, b)?);
    let (split, _) = decomposition_modules(fam, a, b, Decomposition::Psi)?;
    Morphism::new(split.clone(), split, f)
}

/// The left-handed counterpart `φ^l ∘ (Σ_t u_t v_tᵀ ⊗ R_{h_t}) ∘ ψ^l`.
pub fn random_endomorphism_left<F: HopfGFamily + ?Sized>(
    fam: &F,
    a: &F::Grade,
    b: &F::Grade,
    seed: u64,
) -> Result<Morphism<F::Grade>> {
    let ab = fam.compose(a, b);
    let ab_alg = fam.algebra(&ab)?;
    let da = fam.dim(a)?;
    let n = fam.modulus();
    let mut rng = seeded_rng(seed ^ 0x5eed_1ef7);
    let mut middle = Matrix::zeros(ab_alg.dim() * da, ab_alg.dim() * da, n);
    for _ in 0..2 {
        let h = random_element(&mut rng, ab_alg.dim(), n, 0.3);
        let u = random_element(&mut rng, da, n, 0.4);
        let v = random_element(&mut rng, da, n, 0.4);
        let rank_one = Matrix::from_columns(da, n, &[u]).mul(Matrix::from_dense(n, &[v]));
        middle = middle.add(&rank_one.kron(ab_alg.right_mult(&h)));
    }
    let f = phi_left(fam, a, b)?.mul(&middle).mul(psi_left(fam, a, b)?);
    let (split, _) = decomposition_modules(fam, a, b, Decomposition::Psi)?;
    Morphism::new(split.clone(), split, f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::uqsl2::{Sl2Family, Sl2Grade};

    fn setup() -> (Sl2Family, Sl2Grade) {
        (Sl2Family::new(2, 2), Sl2Grade::from_ratio(1, 2))
    }

    #[test]
    fn regular_module_is_a_module() {
        let (fam, a) = setup();
        let m = regular_module(&fam, &a).unwrap();
        assert_eq!(m.dim(), 8);
        assert!(check_module_axioms(&fam, &m).unwrap().all_passed());
        let t = tensor_module(&fam, &m, &m).unwrap();
        assert_eq!(*t.grade(), Sl2Grade::from_ratio(1, 1));
        let d = dual_module(&fam, &m).unwrap();
        assert!(check_module_axioms(&fam, &d).unwrap().all_passed());
    }

    #[test]
    fn trivial_twist_acts_by_counit() {
        let (fam, a) = setup();
        let m = trivial_twist_module(&fam, &a).unwrap();
        let e = fam.generator(&Sl2Grade::zero(), crate::uqsl2::Generator::E).unwrap();
        assert!(m.act(&e).is_zero());
        assert!(m.act(&fam.monomial(0, 0, 0)).is_identity());
    }

    #[test]
    fn duality_on_regular() {
        let (fam, a) = setup();
        let m = regular_module(&fam, &a).unwrap();
        let r = check_duality(&fam, &m).unwrap();
        assert!(r.all_passed(), "{:?}", r.failures());
    }

    #[test]
    fn decomposition_maps_r2() {
        let (fam, a) = setup();
        let r = check_decomposition(&fam, &a, &a).unwrap();
        assert!(r.all_passed(), "{:?}", r.failures());
    }

    #[test]
    fn hom_of_regular_has_dimension_of_algebra() {
        let (fam, a) = setup();
        let m = regular_module(&fam, &a).unwrap();
        assert_eq!(hom_space(&fam, &m, &m).unwrap().len(), 8);
    }

    #[test]
    fn partial_traces_agree_with_composites() {
        let (fam, a) = setup();
        let f = random_endomorphism(&fam, &a, &a, 7).unwrap();
        assert!(intertwiner_witness(&fam, &f.source, &f.target, &f.matrix).unwrap().is_none());
        let w = regular_module(&fam, &a).unwrap();
        let g = w.act(&fam.pivot(&a).unwrap());
        let gi = w.act(&pivot_inverse(&fam, &a).unwrap());
        let c = partial_trace_right(&f.matrix, 8, 8, &g).unwrap();
        assert_eq!(c, partial_trace_right_composite(&fam, &f.matrix, 8, 8, &w).unwrap());
        let l = partial_trace_left(&f.matrix, 8, 8, &gi).unwrap();
        assert_eq!(l, partial_trace_left_composite(&fam, &f.matrix, 8, 8, &w).unwrap());
    }

    #[test]
    fn seeds_give_different_endomorphisms() {
        let (fam, a) = setup();
        let f1 = random_endomorphism(&fam, &a, &a, 1).unwrap();
        let f2 = random_endomorphism(&fam, &a, &a, 2).unwrap();
        assert_ne!(f1.matrix, f2.matrix);
        let l = random_endomorphism_left(&fam, &a, &a, 1).unwrap();
        assert!(intertwiner_witness(&fam, &l.source, &l.target, &l.matrix).unwrap().is_none());
    }
}
