//! Finite-type pivotal Hopf G-coalgebras and their axiom checker.
//!
//! A family `{H_α}` is provided lazily per grade. Linear maps are matrices in
//! the standard column convention: `Δ_{α,β}` is a `(dim H_α · dim H_β) × dim H_{αβ}`
//! matrix, `S_α` is `dim H_{α⁻¹} × dim H_α`.

pub mod table;

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, SparseVec};
use crate::scalar::CycNumber;

pub use table::{TableFamily, TableGrade};

/// An element of some `H_α`, in coordinates of its basis.
pub type Elem = Vec<CycNumber>;

/// One algebra `H_α` given by structure constants.
#[derive(Debug, Clone)]
pub struct GradedAlgebraData {
    modulus: u32,
    labels: Vec<String>,
    unit: Elem,
    // b_i * b_j at index i * dim + j
    table: Vec<SparseVec>,
}

impl GradedAlgebraData {
    pub fn new(modulus: u32, labels: Vec<String>, unit: Elem, table: Vec<SparseVec>) -> Result<Self> {
        let dim = labels.len();
        if unit.len() != dim {
            return Err(Error::ShapeMismatch(format!("unit of length {} for dimension {dim}", unit.len())));
        }
        if table.len() != dim * dim {
            return Err(Error::ShapeMismatch(format!(
                "{} structure-constant rows for dimension {dim}",
                table.len()
            )));
        }
        if table.iter().flatten().any(|(k, _)| *k >= dim) {
            return Err(Error::ShapeMismatch("structure constant index out of range".into()));
        }
        Ok(GradedAlgebraData {
            modulus,
            labels,
            unit,
            table,
        })
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> &Elem {
        &self.unit
    }

    pub fn zero(&self) -> Elem {
        vec![CycNumber::zero(self.modulus); self.dim()]
    }

    pub fn basis(&self, i: usize) -> Elem {
        let mut e = self.zero();
        e[i] = CycNumber::one(self.modulus);
        e
    }

    /// `b_i b_j` as a sparse vector.
    pub fn basis_product(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i * self.dim() + j]
    }

    pub fn mul(&self, x: &[CycNumber], y: &[CycNumber]) -> Elem {
        let d = self.dim();
        let mut out = self.zero();
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, c) in &self.table[i * d + j] {
                    out[*k] += &(&ab * c);
                }
            }
        }
        out
    }

    /// Matrix of `y ↦ x y`.
    pub fn left_mult(&self, x: &[CycNumber]) -> Matrix {
        let cols: Vec<Elem> = (0..self.dim()).map(|j| self.mul(x, &self.basis(j))).collect();
        Matrix::from_columns(self.dim(), self.modulus, &cols)
    }

    /// Matrix of `y ↦ y x`, the map `R_x`.
    pub fn right_mult(&self, x: &[CycNumber]) -> Matrix {
        let cols: Vec<Elem> = (0..self.dim()).map(|j| self.mul(&self.basis(j), x)).collect();
        Matrix::from_columns(self.dim(), self.modulus, &cols)
    }

    /// The multiplication map `H ⊗ H → H` as a `dim × dim²` matrix.
    pub fn mult_matrix(&self) -> Matrix {
        Matrix::from_sparse_columns(self.dim(), self.modulus, &self.table)
    }

    pub fn label_of(&self, i: usize) -> &str {
        &self.labels[i]
    }

    /// Human-readable rendering of an element.
    pub fn format_elem(&self, x: &[CycNumber]) -> String {
        let terms: Vec<String> = x
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("({c})*{}", self.labels[i]))
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

/// Product in `H_α ⊗ H_β`: `(x ⊗ y)(x' ⊗ y') = x x' ⊗ y y'`.
pub fn tensor_mul(a: &GradedAlgebraData, b: &GradedAlgebraData, x: &[CycNumber], y: &[CycNumber]) -> Elem {
    let (da, db) = (a.dim(), b.dim());
    let mut out = vec![CycNumber::zero(a.modulus()); da * db];
    for (p, u) in x.iter().enumerate() {
        if u.is_zero() {
            continue;
        }
        let (i, j) = (p / db, p % db);
        for (q, v) in y.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let (k, l) = (q / db, q % db);
            let uv = u * v;
            for (s, c1) in a.basis_product(i, k) {
                let w = &uv * c1;
                for (t, c2) in b.basis_product(j, l) {
                    out[s * db + t] += &(&w * c2);
                }
            }
        }
    }
    out
}

pub fn tensor_elem(x: &[CycNumber], y: &[CycNumber]) -> Elem {
    let mut out = Vec::with_capacity(x.len() * y.len());
    for a in x {
        for b in y {
            out.push(a * b);
        }
    }
    out
}

/// Permutation `H_a ⊗ H_b → H_b ⊗ H_a`.
pub fn flip_matrix(da: usize, db: usize, modulus: u32) -> Matrix {
    let one = CycNumber::one(modulus);
    let cols: Vec<SparseVec> = (0..da * db)
        .map(|p| {
            let (i, j) = (p / db, p % db);
            vec![(j * da + i, one.clone())]
        })
        .collect();
    Matrix::from_sparse_columns(da * db, modulus, &cols)
}

/// A row vector (linear form) as a `1 × n` matrix.
pub fn form_matrix(form: &[CycNumber], modulus: u32) -> Matrix {
    Matrix::from_dense(modulus, &[form.to_vec()])
}

/// A vector as an `n × 1` matrix.
pub fn column_matrix(v: &[CycNumber], modulus: u32) -> Matrix {
    Matrix::from_columns(v.len(), modulus, &[v.to_vec()])
}

pub fn dot(a: &[CycNumber], b: &[CycNumber]) -> CycNumber {
    assert_eq!(a.len(), b.len(), "dot of vectors of different length");
    let modulus = a.first().map_or(1, CycNumber::modulus);
    let mut s = CycNumber::zero(modulus);
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            s += &(x * y);
        }
    }
    s
}

/// A lazily indexed pivotal Hopf G-coalgebra of finite type.
pub trait HopfGFamily: Send + Sync {
    type Grade: Clone + Eq + Ord + Hash + fmt::Debug + fmt::Display + Send + Sync;

    fn modulus(&self) -> u32;
    fn unit_grade(&self) -> Self::Grade;
    fn compose(&self, a: &Self::Grade, b: &Self::Grade) -> Self::Grade;
    fn inverse(&self, a: &Self::Grade) -> Self::Grade;

    /// Whether the grade belongs to the window of this family.
    fn contains(&self, a: &Self::Grade) -> bool;

    fn algebra(&self, a: &Self::Grade) -> Result<Arc<GradedAlgebraData>>;
    fn coproduct(&self, a: &Self::Grade, b: &Self::Grade) -> Result<Arc<Matrix>>;
    /// The counit as a linear form on `H_1`.
    fn counit(&self) -> Result<Arc<Elem>>;
    fn antipode(&self, a: &Self::Grade) -> Result<Arc<Matrix>>;
    fn pivot(&self, a: &Self::Grade) -> Result<Arc<Elem>>;

    /// Algebra generators of `H_α`, when the instance knows a small set.
    fn generators(&self, _a: &Self::Grade) -> Option<Vec<Elem>> {
        None
    }

    /// Basis index of `H_1` and the value the right integral `μ_1` takes there.
    fn integral_normalization(&self) -> Option<(usize, CycNumber)> {
        None
    }

    fn dim(&self, a: &Self::Grade) -> Result<usize> {
        Ok(self.algebra(a)?.dim())
    }
}

/// `S_{α⁻¹}(g_{α⁻¹})`, the inverse of the pivot `g_α`.
pub fn pivot_inverse<F: HopfGFamily + ?Sized>(fam: &F, a: &F::Grade) -> Result<Elem> {
    let ai = fam.inverse(a);
    Ok(fam.antipode(&ai)?.mul_vec(&fam.pivot(&ai)?))
}

/// Inverse of `S_α`, a map `H_{α⁻¹} → H_α`.
pub fn antipode_inverse<F: HopfGFamily + ?Sized>(fam: &F, a: &F::Grade) -> Result<Matrix> {
    Ok(fam.antipode(a)?.inverse()?)
}

#[derive(Debug, Clone, Serialize)]
pub struct NamedValue {
    pub name: String,
    pub value: CycNumber,
    pub decimal: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckEntry {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub values: Vec<NamedValue>,
}

/// Outcome of a batch of exact identity checks.
#[derive(Debug, Clone, Default, Serialize)]
pub struct CheckReport {
    pub entries: Vec<CheckEntry>,
}

impl CheckReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, name: impl Into<String>, passed: bool, witness: Option<String>) -> &mut CheckEntry {
        self.entries.push(CheckEntry {
            name: name.into(),
            passed,
            witness,
            values: Vec::new(),
        });
        self.entries.last_mut().unwrap()
    }

    /// Records `lhs == rhs` together with both values.
    pub fn push_eq(&mut self, name: impl Into<String>, lhs: &CycNumber, rhs: &CycNumber) -> bool {
        let passed = lhs == rhs;
        let witness = (!passed).then(|| format!("lhs = {lhs}, rhs = {rhs}"));
        let entry = self.push(name, passed, witness);
        entry.values.push(NamedValue::new("lhs", lhs));
        entry.values.push(NamedValue::new("rhs", rhs));
        passed
    }

    /// Records a matrix identity; the witness names the first failing basis vector.
    pub fn push_matrix_eq(
        &mut self,
        name: impl Into<String>,
        lhs: &Matrix,
        rhs: &Matrix,
        column_label: impl Fn(usize) -> String,
    ) -> bool {
        let name = name.into();
        if (lhs.rows(), lhs.cols()) != (rhs.rows(), rhs.cols()) {
            self.push(
                name,
                false,
                Some(format!(
                    "shapes differ: {}x{} vs {}x{}",
                    lhs.rows(),
                    lhs.cols(),
                    rhs.rows(),
                    rhs.cols()
                )),
            );
            return false;
        }
        let diffs = lhs.diff_positions(rhs);
        let witness = diffs.iter().min_by_key(|(i, j)| (*j, *i)).map(|&(i, j)| {
            format!(
                "basis vector {} (column {j}), output coordinate {i}: {} vs {}",
                column_label(j),
                lhs.get(i, j),
                rhs.get(i, j)
            )
        });
        let passed = witness.is_none();
        self.push(name, passed, witness);
        passed
    }

    pub fn extend(&mut self, other: CheckReport) {
        self.entries.extend(other.entries);
    }

    pub fn extend_prefixed(&mut self, prefix: &str, other: CheckReport) {
        for mut e in other.entries {
            e.name = format!("{prefix}.{}", e.name);
            self.entries.push(e);
        }
    }

    pub fn all_passed(&self) -> bool {
        self.entries.iter().all(|e| e.passed)
    }

    pub fn failures(&self) -> Vec<&CheckEntry> {
        self.entries.iter().filter(|e| !e.passed).collect()
    }
}

impl NamedValue {
    pub fn new(name: impl Into<String>, value: &CycNumber) -> Self {
        NamedValue {
            name: name.into(),
            value: value.clone(),
            decimal: value.decimal(),
        }
    }
}

fn label_fn(alg: &GradedAlgebraData) -> impl Fn(usize) -> String + '_ {
    move |j| alg.label_of(j).to_string()
}

fn require<F: HopfGFamily + ?Sized>(fam: &F, grades: &[&F::Grade]) -> Result<()> {
    for g in grades {
        if !fam.contains(g) {
            return Err(Error::WindowIncomplete(format!("grade {g} is not in the window")));
        }
    }
    Ok(())
}

/// Associativity and unit laws of `H_α` on all basis triples.
pub fn check_algebra<F: HopfGFamily + ?Sized>(fam: &F, a: &F::Grade) -> Result<CheckReport> {
    require(fam, &[a])?;
    let alg = fam.algebra(a)?;
    let d = alg.dim();
    let mut report = CheckReport::new();
    let mut witness = None;
    'outer: for i in 0..d {
        for j in 0..d {
            let bij = alg.basis_product(i, j);
            for k in 0..d {
                let mut left = alg.zero();
                for (s, c) in bij {
                    for (t, c2) in alg.basis_product(*s, k) {
                        left[*t] += &(c * c2);
                    }
                }
                let right = alg.mul(&alg.basis(i), &alg.mul(&alg.basis(j), &alg.basis(k)));
                if left != right {
                    witness = Some(format!(
                        "({} {}) {} != {} ({} {})",
                        alg.label_of(i),
                        alg.label_of(j),
                        alg.label_of(k),
                        alg.label_of(i),
                        alg.label_of(j),
                        alg.label_of(k)
                    ));
                    break 'outer;
                }
            }
        }
    }
    report.push(format!("associativity[{a}]"), witness.is_none(), witness);
    let unit = alg.unit().clone();
    let lu = alg.left_mult(&unit);
    let ru = alg.right_mult(&unit);
    let id = Matrix::identity(d, alg.modulus());
    report.push_matrix_eq(format!("left_unit[{a}]"), &lu, &id, label_fn(&alg));
    report.push_matrix_eq(format!("right_unit[{a}]"), &ru, &id, label_fn(&alg));
    Ok(report)
}

/// Coassociativity on `(α, β, γ)` and both counit laws at `α`.
pub fn check_coalgebra<F: HopfGFamily + ?Sized>(
    fam: &F,
    a: &F::Grade,
    b: &F::Grade,
    c: &F::Grade,
) -> Result<CheckReport> {
    let ab = fam.compose(a, b);
    let bc = fam.compose(b, c);
    let abc = fam.compose(&ab, c);
    let one = fam.unit_grade();
    require(fam, &[a, b, c, &ab, &bc, &abc, &one])?;
    let n = fam.modulus();
    let (da, dc) = (fam.dim(a)?, fam.dim(c)?);
    let mut report = CheckReport::new();

    let lhs = fam
        .coproduct(a, b)?
        .kron(Matrix::identity(dc, n))
        .mul(&*fam.coproduct(&ab, c)?);
    let rhs = Matrix::identity(da, n)
        .kron(&*fam.coproduct(b, c)?)
        .mul(&*fam.coproduct(a, &bc)?);
    let abc_alg = fam.algebra(&abc)?;
    report.push_matrix_eq(format!("coassociativity[{a},{b},{c}]"), &lhs, &rhs, label_fn(&abc_alg));

    let eps = form_matrix(&fam.counit()?, n);
    let a_alg = fam.algebra(a)?;
    let id = Matrix::identity(da, n);
    let right = Matrix::identity(da, n).kron(&eps).mul(&*fam.coproduct(a, &one)?);
    report.push_matrix_eq(format!("right_counit[{a}]"), &right, &id, label_fn(&a_alg));
    let left = eps.kron(Matrix::identity(da, n)).mul(&*fam.coproduct(&one, a)?);
    report.push_matrix_eq(format!("left_counit[{a}]"), &left, &id, label_fn(&a_alg));
    Ok(report)
}

/// Antipode axioms at `α`, multiplicativity of `Δ_{α,β}` and of `ε`, and `Δ(1) = 1 ⊗ 1`.
pub fn check_hopf<F: HopfGFamily + ?Sized>(fam: &F, a: &F::Grade, b: &F::Grade) -> Result<CheckReport> {
    let ab = fam.compose(a, b);
    let ai = fam.inverse(a);
    let one = fam.unit_grade();
    require(fam, &[a, b, &ab, &ai, &one])?;
    let n = fam.modulus();
    let mut report = CheckReport::new();

    let a_alg = fam.algebra(a)?;
    let one_alg = fam.algebra(&one)?;
    let da = a_alg.dim();
    let m_a = a_alg.mult_matrix();
    let s_ai = fam.antipode(&ai)?;
    let eps = fam.counit()?;
    // ε(·) 1_α as a dim_α × dim_1 matrix
    let eps_unit = column_matrix(a_alg.unit(), n).mul(form_matrix(&eps, n));
    let left = m_a
        .mul(s_ai.kron(Matrix::identity(da, n)))
        .mul(&*fam.coproduct(&ai, a)?);
    report.push_matrix_eq(format!("antipode_left[{a}]"), &left, &eps_unit, label_fn(&one_alg));
    let right = m_a
        .mul(Matrix::identity(da, n).kron(&s_ai))
        .mul(&*fam.coproduct(a, &ai)?);
    report.push_matrix_eq(format!("antipode_right[{a}]"), &right, &eps_unit, label_fn(&one_alg));

    // Δ_{α,β} is an algebra map
    let ab_alg = fam.algebra(&ab)?;
    let b_alg = fam.algebra(b)?;
    let delta = fam.coproduct(a, b)?;
    let cols = delta.sparse_columns();
    let dense_col = |j: usize| crate::linalg::to_dense(&cols[j], da * b_alg.dim(), n);
    let dense_cols: Vec<Elem> = (0..ab_alg.dim()).map(dense_col).collect();
    let mut witness = None;
    'outer: for i in 0..ab_alg.dim() {
        for j in 0..ab_alg.dim() {
            let lhs = delta.apply_sparse(ab_alg.basis_product(i, j));
            let rhs = tensor_mul(&a_alg, &b_alg, &dense_cols[i], &dense_cols[j]);
            if crate::linalg::to_dense(&lhs, rhs.len(), n) != rhs {
                witness = Some(format!("Δ({} {})", ab_alg.label_of(i), ab_alg.label_of(j)));
                break 'outer;
            }
        }
    }
    report.push(format!("coproduct_multiplicative[{a},{b}]"), witness.is_none(), witness);
    let unit_img = delta.mul_vec(ab_alg.unit());
    let unit_ok = unit_img == tensor_elem(a_alg.unit(), b_alg.unit());
    report.push(
        format!("coproduct_unit[{a},{b}]"),
        unit_ok,
        (!unit_ok).then(|| "Δ(1) != 1 ⊗ 1".to_string()),
    );

    let mut witness = None;
    'eps: for i in 0..one_alg.dim() {
        for j in 0..one_alg.dim() {
            let prod = crate::linalg::to_dense(one_alg.basis_product(i, j), one_alg.dim(), n);
            if dot(&eps, &prod) != &eps[i] * &eps[j] {
                witness = Some(format!("ε({} {})", one_alg.label_of(i), one_alg.label_of(j)));
                break 'eps;
            }
        }
    }
    report.push("counit_multiplicative", witness.is_none(), witness);
    let e1 = dot(&eps, one_alg.unit());
    report.push("counit_unit", e1.is_one(), (!e1.is_one()).then(|| format!("ε(1) = {e1}")));
    Ok(report)
}

/// Leg order used when comparing `Δ S` against `(S ⊗ S) Δ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LegOrder {
    Flipped,
    Straight,
}

/// Derived antipode properties: anti-multiplicativity, unit, anti-comultiplicativity, `ε S_1 = ε`.
pub fn check_antipode_properties<F: HopfGFamily + ?Sized>(
    fam: &F,
    a: &F::Grade,
    b: &F::Grade,
) -> Result<CheckReport> {
    check_antipode_properties_with(fam, a, b, LegOrder::Flipped)
}

/// As [`check_antipode_properties`], with a configurable leg order for the
/// coproduct identity. `LegOrder::Straight` is wrong in general and serves as
/// a negative control.
pub fn check_antipode_properties_with<F: HopfGFamily + ?Sized>(
    fam: &F,
    a: &F::Grade,
    b: &F::Grade,
    legs: LegOrder,
) -> Result<CheckReport> {
    let ab = fam.compose(a, b);
    let (ai, bi) = (fam.inverse(a), fam.inverse(b));
    let one = fam.unit_grade();
    require(fam, &[a, b, &ab, &ai, &bi, &one])?;
    let n = fam.modulus();
    let mut report = CheckReport::new();

    let a_alg = fam.algebra(a)?;
    let ai_alg = fam.algebra(&ai)?;
    let s_a = fam.antipode(a)?;
    let s_cols: Vec<Elem> = (0..a_alg.dim()).map(|j| s_a.column(j)).collect();
    let mut witness = None;
    'outer: for i in 0..a_alg.dim() {
        for j in 0..a_alg.dim() {
            let lhs = s_a.apply_sparse(a_alg.basis_product(i, j));
            let rhs = ai_alg.mul(&s_cols[j], &s_cols[i]);
            if crate::linalg::to_dense(&lhs, rhs.len(), n) != rhs {
                witness = Some(format!("S({} {})", a_alg.label_of(i), a_alg.label_of(j)));
                break 'outer;
            }
        }
    }
    report.push(format!("antipode_antimultiplicative[{a}]"), witness.is_none(), witness);
    let su = s_a.mul_vec(a_alg.unit());
    let ok = &su == ai_alg.unit();
    report.push(format!("antipode_unit[{a}]"), ok, (!ok).then(|| ai_alg.format_elem(&su)));

    let (da, db) = (fam.dim(&ai)?, fam.dim(&bi)?);
    let lhs = fam.coproduct(&bi, &ai)?.mul(&*fam.antipode(&ab)?);
    let straight = fam
        .antipode(a)?
        .kron(&*fam.antipode(b)?)
        .mul(&*fam.coproduct(a, b)?);
    let rhs = match legs {
        LegOrder::Flipped => flip_matrix(da, db, n).mul(&straight),
        LegOrder::Straight => straight,
    };
    let ab_alg = fam.algebra(&ab)?;
    report.push_matrix_eq(format!("antipode_anticomultiplicative[{a},{b}]"), &lhs, &rhs, label_fn(&ab_alg));

    let eps = fam.counit()?;
    let s1 = fam.antipode(&one)?;
    let eps_s = form_matrix(&eps, n).mul(&s1);
    let one_alg = fam.algebra(&one)?;
    report.push_matrix_eq("counit_antipode", &eps_s, &form_matrix(&eps, n), label_fn(&one_alg));
    Ok(report)
}

/// Pivot laws: grouplike, `ε(g_1) = 1`, inverse law and the double-antipode conjugation.
pub fn check_pivot<F: HopfGFamily + ?Sized>(fam: &F, a: &F::Grade, b: &F::Grade) -> Result<CheckReport> {
    let ab = fam.compose(a, b);
    let ai = fam.inverse(a);
    let one = fam.unit_grade();
    require(fam, &[a, b, &ab, &ai, &one])?;
    let mut report = CheckReport::new();

    let g_ab = fam.pivot(&ab)?;
    let lhs = fam.coproduct(a, b)?.mul_vec(&g_ab);
    let rhs = tensor_elem(&fam.pivot(a)?[..], &fam.pivot(b)?[..]);
    let ok = lhs == rhs;
    report.push(
        format!("pivot_grouplike[{a},{b}]"),
        ok,
        (!ok).then(|| "Δ(g) != g ⊗ g".to_string()),
    );
    let e = dot(&fam.counit()?[..], &fam.pivot(&one)?[..]);
    report.push("pivot_counit", e.is_one(), (!e.is_one()).then(|| format!("ε(g_1) = {e}")));

    let a_alg = fam.algebra(a)?;
    let g = fam.pivot(a)?;
    let g_inv = pivot_inverse(fam, a)?;
    let p1 = a_alg.mul(&g, &g_inv);
    let p2 = a_alg.mul(&g_inv, &g);
    let ok = &p1 == a_alg.unit() && &p2 == a_alg.unit();
    report.push(
        format!("pivot_inverse[{a}]"),
        ok,
        (!ok).then(|| format!("g S(g) = {}", a_alg.format_elem(&p1))),
    );

    let s2 = fam.antipode(&ai)?.mul(&*fam.antipode(a)?);
    let lhs = a_alg.right_mult(&g).mul(&s2);
    let rhs = a_alg.left_mult(&g);
    report.push_matrix_eq(format!("pivot_conjugation[{a}]"), &lhs, &rhs, label_fn(&a_alg));
    Ok(report)
}

/// Every structural check on one pair of grades.
pub fn check_all_axioms<F: HopfGFamily + ?Sized>(fam: &F, a: &F::Grade, b: &F::Grade) -> Result<CheckReport> {
    let mut report = CheckReport::new();
    report.extend(check_algebra(fam, a)?);
    report.extend(check_coalgebra(fam, a, b, a)?);
    report.extend(check_hopf(fam, a, b)?);
    report.extend(check_antipode_properties(fam, a, b)?);
    report.extend(check_pivot(fam, a, b)?);
    Ok(report)
}

/// Every structural check over a window of grades closed under the operations used:
/// the algebra laws once per grade, coassociativity on all triples whose products
/// stay in the window, Hopf and pivot laws on all pairs.
pub fn check_axioms_window<F: HopfGFamily + ?Sized>(fam: &F, window: &[F::Grade]) -> Result<CheckReport> {
    let inside = |g: &F::Grade| window.contains(g);
    let mut report = CheckReport::new();
    for a in window {
        report.extend(check_algebra(fam, a)?);
    }
    for a in window {
        for b in window {
            for c in window {
                let ab = fam.compose(a, b);
                let bc = fam.compose(b, c);
                if inside(&ab) && inside(&bc) && inside(&fam.compose(&ab, c)) {
                    report.extend(check_coalgebra(fam, a, b, c)?);
                }
            }
            let ab = fam.compose(a, b);
            if inside(&ab) && inside(&fam.inverse(a)) && inside(&fam.inverse(b)) && inside(&fam.inverse(&ab)) {
                report.extend(check_hopf(fam, a, b)?);
                report.extend(check_antipode_properties(fam, a, b)?);
                report.extend(check_pivot(fam, a, b)?);
            }
        }
    }
    Ok(report)
}

/// A family with some structure maps replaced; used for negative controls.
pub struct PatchedFamily<'a, F: HopfGFamily + ?Sized> {
    base: &'a F,
    coproducts: HashMap<(F::Grade, F::Grade), Arc<Matrix>>,
    antipodes: HashMap<F::Grade, Arc<Matrix>>,
    pivots: HashMap<F::Grade, Arc<Elem>>,
    counit: Option<Arc<Elem>>,
}

impl<'a, F: HopfGFamily + ?Sized> PatchedFamily<'a, F> {
    pub fn new(base: &'a F) -> Self {
        PatchedFamily {
            base,
            coproducts: HashMap::new(),
            antipodes: HashMap::new(),
            pivots: HashMap::new(),
            counit: None,
        }
    }

    pub fn with_coproduct(mut self, a: F::Grade, b: F::Grade, m: Matrix) -> Self {
        self.coproducts.insert((a, b), Arc::new(m));
        self
    }

    pub fn with_antipode(mut self, a: F::Grade, m: Matrix) -> Self {
        self.antipodes.insert(a, Arc::new(m));
        self
    }

    pub fn with_pivot(mut self, a: F::Grade, g: Elem) -> Self {
        self.pivots.insert(a, Arc::new(g));
        self
    }

    pub fn with_counit(mut self, e: Elem) -> Self {
        self.counit = Some(Arc::new(e));
        self
    }
}

impl<F: HopfGFamily + ?Sized> HopfGFamily for PatchedFamily<'_, F> {
    type Grade = F::Grade;

    fn modulus(&self) -> u32 {
        self.base.modulus()
    }
    fn unit_grade(&self) -> Self::Grade {
        self.base.unit_grade()
    }
    fn compose(&self, a: &Self::Grade, b: &Self::Grade) -> Self::Grade {
        self.base.compose(a, b)
    }
    fn inverse(&self, a: &Self::Grade) -> Self::Grade {
        self.base.inverse(a)
    }
    fn contains(&self, a: &Self::Grade) -> bool {
        self.base.contains(a)
    }
    fn algebra(&self, a: &Self::Grade) -> Result<Arc<GradedAlgebraData>> {
        self.base.algebra(a)
    }
    fn coproduct(&self, a: &Self::Grade, b: &Self::Grade) -> Result<Arc<Matrix>> {
        match self.coproducts.get(&(a.clone(), b.clone())) {
            Some(m) => Ok(m.clone()),
            None => self.base.coproduct(a, b),
        }
    }
    fn counit(&self) -> Result<Arc<Elem>> {
        match &self.counit {
            Some(e) => Ok(e.clone()),
            None => self.base.counit(),
        }
    }
    fn antipode(&self, a: &Self::Grade) -> Result<Arc<Matrix>> {
        match self.antipodes.get(a) {
            Some(m) => Ok(m.clone()),
            None => self.base.antipode(a),
        }
    }
    fn pivot(&self, a: &Self::Grade) -> Result<Arc<Elem>> {
        match self.pivots.get(a) {
            Some(g) => Ok(g.clone()),
            None => self.base.pivot(a),
        }
    }
    fn generators(&self, a: &Self::Grade) -> Option<Vec<Elem>> {
        self.base.generators(a)
    }
    fn integral_normalization(&self) -> Option<(usize, CycNumber)> {
        self.base.integral_normalization()
    }
}
