//! Casimir element, simple modules and modified dimensions.
//!
//! `V_β` is the `r`-dimensional module of highest weight `λ = β + r - 1`.
//! Because `K^r` acts on it by `q^{rλ}`, it is a module over the piece of grade
//! `β + r - 1`, which is `β̄` only for odd `r`.

use num_rational::Rational64;

use super::{Generator, Sl2Family, Sl2Grade};
use crate::error::{Error, Result};
use crate::hopf_core::{dot, CheckReport, Elem, HopfGFamily, NamedValue};
use crate::integrals::GIntegral;
use crate::linalg::Matrix;
use crate::modcat::{check_module_axioms, ModuleRep};
use crate::mtrace::{hs_trace, HMatrix, ProjPresentation};
use crate::scalar::{rational, CycNumber};

fn rat(n: i64) -> Rational64 {
    Rational64::from_integer(n)
}

fn lin(terms: &[(&CycNumber, &Elem)]) -> Elem {
    let mut out = terms[0].1.iter().map(|_| CycNumber::zero(terms[0].0.modulus())).collect::<Elem>();
    for (c, x) in terms {
        for (o, v) in out.iter_mut().zip(x.iter()) {
            if !v.is_zero() {
                *o += &(*c * v);
            }
        }
    }
    out
}

fn is_zero_elem(x: &[CycNumber]) -> bool {
    x.iter().all(CycNumber::is_zero)
}

/// Grade of `V_β`.
pub fn simple_module_grade(fam: &Sl2Family, beta: Rational64) -> Sl2Grade {
    Sl2Grade::new(beta + rat(fam.r() as i64 - 1))
}

fn require_non_integral(beta: Rational64) -> Result<()> {
    if beta.is_integer() {
        Err(Error::AlphaIntegralSingular(beta.to_string()))
    } else {
        Ok(())
    }
}

fn require_weight(fam: &Sl2Family, beta: Rational64) -> Result<()> {
    if fam.contains(&Sl2Grade::new(beta)) {
        Ok(())
    } else {
        Err(Error::WindowIncomplete(format!(
            "weight {beta} needs a larger cyclotomic field than Q(zeta_{})",
            fam.modulus()
        )))
    }
}

/// `{1}^{-2}`.
fn inv_brace1_sq(fam: &Sl2Family) -> CycNumber {
    let b = fam.brace(rat(1));
    (&b * &b).inv().expect("{1} is nonzero")
}

/// `[x] = {x}/{1}`.
pub fn qint(fam: &Sl2Family, x: Rational64) -> CycNumber {
    &fam.brace(x) * &fam.brace(rat(1)).inv().expect("{1} is nonzero")
}

/// The two expressions `FE + (qK + q⁻¹K⁻¹)/{1}²` and `EF + (q⁻¹K + qK⁻¹)/{1}²`.
pub fn casimir_expressions(fam: &Sl2Family, a: &Sl2Grade) -> Result<(Elem, Elem)> {
    let alg = fam.algebra(a)?;
    let e = fam.generator(a, Generator::E)?;
    let f = fam.generator(a, Generator::F)?;
    let k = fam.generator(a, Generator::K)?;
    let ki = fam.generator(a, Generator::KInv)?;
    let c = inv_brace1_sq(fam);
    let q = &fam.qpow(rat(1)) * &c;
    let qi = &fam.qpow(rat(-1)) * &c;
    let one = CycNumber::one(fam.modulus());
    let fe = alg.mul(&f, &e);
    let ef = alg.mul(&e, &f);
    Ok((
        lin(&[(&one, &fe), (&q, &k), (&qi, &ki)]),
        lin(&[(&one, &ef), (&qi, &k), (&q, &ki)]),
    ))
}

/// `Ω ∈ U_ᾱ`.
pub fn casimir(fam: &Sl2Family, a: &Sl2Grade) -> Result<Elem> {
    Ok(casimir_expressions(fam, a)?.0)
}

/// The two expressions agree and `Ω` commutes with `E`, `F`, `K`.
pub fn check_casimir(fam: &Sl2Family, a: &Sl2Grade) -> Result<CheckReport> {
    let alg = fam.algebra(a)?;
    let (w1, w2) = casimir_expressions(fam, a)?;
    let mut report = CheckReport::new();
    report.push(format!("casimir_expressions_agree[{a}]"), w1 == w2, None);
    for (name, g) in [("E", Generator::E), ("F", Generator::F), ("K", Generator::K)] {
        let x = fam.generator(a, g)?;
        let comm: Elem = alg
            .mul(&w1, &x)
            .iter()
            .zip(alg.mul(&x, &w1))
            .map(|(u, v)| u - &v)
            .collect();
        let ok = is_zero_elem(&comm);
        report.push(
            format!("casimir_central_{name}[{a}]"),
            ok,
            (!ok).then(|| format!("[Ω, {name}] = {}", alg.format_elem(&comm))),
        );
    }
    Ok(report)
}

/// The product identity `∏_{i<k}(Ω - (q^{-2i-1}K + q^{2i+1}K⁻¹)/{1}²) = E^k F^k`,
/// the span statement `Ω^k - E^kF^k ∈ span{E^jF^jK^i : j < k}`, and
/// `μ̃(Ω^k) = 0` for `k < r-1`, `μ̃(Ω^{r-1}) = 1`.
pub fn casimir_power_identities(integral: &GIntegral<'_, Sl2Family>, a: &Sl2Grade) -> Result<CheckReport> {
    let fam = integral.family();
    let r = fam.r();
    let alg = fam.algebra(a)?;
    let omega = casimir(fam, a)?;
    let k_el = fam.generator(a, Generator::K)?;
    let ki_el = fam.generator(a, Generator::KInv)?;
    let c = inv_brace1_sq(fam);
    let one = CycNumber::one(fam.modulus());
    let minus = -&one;
    let mu = integral.symmetrised_right(a)?;
    let mut report = CheckReport::new();

    let mut product = alg.unit().clone();
    let mut power = alg.unit().clone();
    for k in 0..r {
        if k > 0 {
            let i = (k - 1) as i64;
            let ck = &fam.qpow(rat(-2 * i - 1)) * &c;
            let cki = &fam.qpow(rat(2 * i + 1)) * &c;
            let ck = -&ck;
            let cki = -&cki;
            let factor = lin(&[(&one, &omega), (&ck, &k_el), (&cki, &ki_el)]);
            product = alg.mul(&product, &factor);
            power = alg.mul(&power, &omega);
            let ekfk = fam.monomial(k, k, 0);
            let ok = product == ekfk;
            report.push(
                format!("casimir_product_identity[{a}][k={k}]"),
                ok,
                (!ok).then(|| format!("residual {}", alg.format_elem(&lin(&[(&one, &product), (&minus, &ekfk)])))),
            );
            let diff = lin(&[(&one, &power), (&minus, &ekfk)]);
            let outside: Vec<usize> = diff
                .iter()
                .enumerate()
                .filter(|(idx, x)| {
                    let (m, n, _) = fam.exponents(*idx);
                    !x.is_zero() && !(m == n && m < k)
                })
                .map(|(idx, _)| idx)
                .collect();
            report.push(
                format!("casimir_power_span[{a}][k={k}]"),
                outside.is_empty(),
                outside.first().map(|&i| format!("coefficient of {} is nonzero", alg.label_of(i))),
            );
        }
        let value = dot(&mu, &power);
        let expected = if k == r - 1 { one.clone() } else { CycNumber::zero(fam.modulus()) };
        report.push_eq(format!("integral_of_casimir_power[{a}][k={k}]"), &value, &expected);
    }
    Ok(report)
}

/// `w_β = (q^{β+r} + q^{-β-r})/{1}²`, the Casimir scalar on `V_β`.
pub fn casimir_eigenvalue(fam: &Sl2Family, beta: Rational64) -> CycNumber {
    let x = beta + rat(fam.r() as i64);
    &(&fam.qpow(x) + &fam.qpow(-x)) * &inv_brace1_sq(fam)
}

/// `V_β` with its generator matrices and the coefficients `E v_i = e_i v_{i-1}`.
#[derive(Debug, Clone)]
pub struct SimpleModule {
    pub weight: Rational64,
    pub module: ModuleRep<Sl2Grade>,
    pub e: Matrix,
    pub f: Matrix,
    pub k: Matrix,
    pub e_coeffs: Vec<CycNumber>,
}

pub fn simple_module(fam: &Sl2Family, beta: Rational64) -> Result<SimpleModule> {
    require_non_integral(beta)?;
    require_weight(fam, beta)?;
    let r = fam.r() as usize;
    let n = fam.modulus();
    let lambda = beta + rat(r as i64 - 1);
    let grade = simple_module_grade(fam, beta);

    let mut e_coeffs = vec![CycNumber::zero(n)];
    for i in 0..r - 1 {
        let next = &e_coeffs[i] + &qint(fam, lambda - rat(2 * i as i64));
        e_coeffs.push(next);
    }
    let mut e = Matrix::zeros(r, r, n);
    let mut f = Matrix::zeros(r, r, n);
    let mut k = Matrix::zeros(r, r, n);
    for i in 0..r {
        k.set(i, i, fam.qpow(lambda - rat(2 * i as i64)));
        if i + 1 < r {
            f.set(i + 1, i, CycNumber::one(n));
        }
        if i > 0 {
            e.set(i - 1, i, e_coeffs[i].clone());
        }
    }
    let mut acts = Vec::with_capacity(r * r * r);
    let pow = |m: &Matrix, p: usize| (0..p).fold(Matrix::identity(r, n), |acc, _| acc.mul(m));
    for m in 0..r {
        for nn in 0..r {
            for l in 0..r {
                acts.push(pow(&e, m).mul(pow(&f, nn)).mul(pow(&k, l)));
            }
        }
    }
    Ok(SimpleModule {
        weight: beta,
        module: ModuleRep::explicit(grade, r, n, acts),
        e,
        f,
        k,
        e_coeffs,
    })
}

/// Defining relations, the closed form `e_i = [i][β+r-i]`, the module axioms,
/// and the Casimir scalar `w_β`.
pub fn check_simple_module(fam: &Sl2Family, v: &SimpleModule) -> Result<CheckReport> {
    let r = fam.r() as usize;
    let n = fam.modulus();
    let beta = v.weight;
    let grade = *v.module.grade();
    let tag = beta.to_string();
    let mut report = CheckReport::new();
    let q2 = fam.qpow(rat(2));
    let q2i = fam.qpow(rat(-2));
    let k_inv = v.k.inverse()?;
    let label = |j: usize| format!("v{j}");

    report.push_matrix_eq(
        format!("simple_KE[{tag}]"),
        &v.k.mul(&v.e),
        &v.e.mul(&v.k).scale(&q2),
        label,
    );
    report.push_matrix_eq(
        format!("simple_KF[{tag}]"),
        &v.k.mul(&v.f),
        &v.f.mul(&v.k).scale(&q2i),
        label,
    );
    let comm = v.e.mul(&v.f).sub(&v.f.mul(&v.e));
    let rhs = v.k.sub(&k_inv).scale(&fam.brace(rat(1)).inv()?);
    report.push_matrix_eq(format!("simple_EF_commutator[{tag}]"), &comm, &rhs, label);
    let pow = |m: &Matrix, p: usize| (0..p).fold(Matrix::identity(r, n), |acc, _| acc.mul(m));
    report.push(format!("simple_E_nilpotent[{tag}]"), pow(&v.e, r).is_zero(), None);
    report.push(format!("simple_F_nilpotent[{tag}]"), pow(&v.f, r).is_zero(), None);
    let kr = fam.qpow(grade.value() * rat(r as i64));
    report.push_matrix_eq(
        format!("simple_K_power_in_grade[{tag}]"),
        &pow(&v.k, r),
        &Matrix::scalar(r, &kr),
        label,
    );
    for i in 0..=r {
        let closed = &qint(fam, rat(i as i64)) * &qint(fam, beta + rat(r as i64 - i as i64));
        let actual = if i < r {
            v.e_coeffs[i].clone()
        } else {
            &v.e_coeffs[r - 1] + &qint(fam, beta + rat(r as i64 - 1) - rat(2 * (r as i64 - 1)))
        };
        report.push_eq(format!("simple_e_closed_form[{tag}][i={i}]"), &actual, &closed);
    }
    report.extend(check_module_axioms(fam, &v.module)?);
    let omega = casimir(fam, &grade)?;
    report.push_matrix_eq(
        format!("simple_casimir_scalar[{tag}]"),
        &v.module.act(&omega),
        &Matrix::scalar(r, &casimir_eigenvalue(fam, beta)),
        label,
    );
    Ok(report)
}

/// `H_r = {-(r-1), -(r-3), …, r-1}`.
pub fn h_r(r: u32) -> Vec<i64> {
    let r = r as i64;
    (0..r).map(|j| -(r - 1) + 2 * j).collect()
}

/// `U_ᾱ → ⊕_{k∈H_r} End(V_{α+k})` is injective, hence bijective; the Casimir
/// scalars of the summands are pairwise distinct.
pub fn density_decomposition_check(fam: &Sl2Family, alpha: Rational64) -> Result<CheckReport> {
    require_non_integral(alpha)?;
    let a = Sl2Grade::new(alpha);
    let r = fam.r() as usize;
    let d = fam.dim_piece();
    let modules = h_r(fam.r())
        .into_iter()
        .map(|k| simple_module(fam, alpha + rat(k)))
        .collect::<Result<Vec<_>>>()?;
    let mut report = CheckReport::new();
    let grades_ok = modules.iter().all(|m| *m.module.grade() == a);
    report.push(format!("density_summands_in_grade[{a}]"), grades_ok, None);
    report.push(
        format!("density_dimension_count[{a}]"),
        modules.len() * r * r == d,
        (modules.len() * r * r != d).then(|| format!("{} summands of dimension {}", modules.len(), r * r)),
    );
    let mut columns = Vec::with_capacity(d);
    for i in 0..d {
        let mut col = Vec::with_capacity(d);
        for m in &modules {
            let act = m.module.act_basis(i);
            for row in act.to_dense() {
                col.extend(row);
            }
        }
        columns.push(col);
    }
    let map = Matrix::from_columns(modules.len() * r * r, fam.modulus(), &columns);
    let kernel = map.nullspace();
    let alg = fam.algebra(&a)?;
    report.push(
        format!("density_injective[{a}]"),
        kernel.is_empty(),
        kernel.first().map(|v| format!("kernel element {}", alg.format_elem(v))),
    );
    let ws: Vec<CycNumber> = modules.iter().map(|m| casimir_eigenvalue(fam, m.weight)).collect();
    let mut collision = None;
    for i in 0..ws.len() {
        for j in i + 1..ws.len() {
            if ws[i] == ws[j] {
                collision.get_or_insert(format!("w_{} = w_{}", modules[i].weight, modules[j].weight));
            }
        }
    }
    report.push(format!("casimir_separation[{a}]"), collision.is_none(), collision);
    Ok(report)
}

/// `L_β(Ω) = ∏_{k=1}^{r-1}(Ω - w_{β+2k}) / ∏_{k=1}^{r-1}(w_β - w_{β+2k})` in the grade of `V_β`.
pub fn casimir_projector(fam: &Sl2Family, beta: Rational64) -> Result<Elem> {
    require_non_integral(beta)?;
    require_weight(fam, beta)?;
    let grade = simple_module_grade(fam, beta);
    let alg = fam.algebra(&grade)?;
    let omega = casimir(fam, &grade)?;
    let one = CycNumber::one(fam.modulus());
    let wb = casimir_eigenvalue(fam, beta);
    let mut num = alg.unit().clone();
    let mut den = one.clone();
    for k in 1..fam.r() as i64 {
        let wk = casimir_eigenvalue(fam, beta + rat(2 * k));
        let diff = &wb - &wk;
        if diff.is_zero() {
            return Err(Error::DegenerateEigenvalues(format!("w_{beta} = w_{}", beta + rat(2 * k))));
        }
        den = &den * &diff;
        let neg = -&wk;
        num = alg.mul(&num, &lin(&[(&one, &omega), (&neg, alg.unit())]));
    }
    let c = den.inv()?;
    Ok(num.iter().map(|x| x * &c).collect())
}

/// `L² = L`, `L` acts as `1` on `V_β` and `0` on `V_{β+2k}`, and the scalar
/// polynomial satisfies `L(w_{β+2k}) = δ_{0,k}`.
pub fn check_casimir_projector(fam: &Sl2Family, beta: Rational64) -> Result<CheckReport> {
    let grade = simple_module_grade(fam, beta);
    let alg = fam.algebra(&grade)?;
    let l = casimir_projector(fam, beta)?;
    let tag = beta.to_string();
    let mut report = CheckReport::new();
    report.push(format!("projector_idempotent[{tag}]"), alg.mul(&l, &l) == l, None);
    let wb = casimir_eigenvalue(fam, beta);
    for k in 0..fam.r() as i64 {
        let wk = casimir_eigenvalue(fam, beta + rat(2 * k));
        let mut val = CycNumber::one(fam.modulus());
        for j in 1..fam.r() as i64 {
            let wj = casimir_eigenvalue(fam, beta + rat(2 * j));
            val = &val * &(&(&wk - &wj) * &(&wb - &wj).inv()?);
        }
        let expected = CycNumber::from_integer(fam.modulus(), (k == 0) as i64);
        report.push_eq(format!("projector_scalar[{tag}][k={k}]"), &val, &expected);
        let v = simple_module(fam, beta + rat(2 * k))?;
        let act = v.module.act(&l);
        let ok = if k == 0 { act.is_identity() } else { act.is_zero() };
        report.push(format!("projector_on_simple[{tag}][k={k}]"), ok, None);
    }
    Ok(report)
}

/// `∏_{k=1}^{r-1}(w_β - w_{β+2k})` against the brace products, the pairwise
/// difference formula `w_{β+2i} - w_{β+2j} = {i-j}{β+r+i+j}/{1}²`, and
/// `∏_{k=1}^{r-1}{k}² = (-1)^{r-1} r²`.
pub fn product_identities(fam: &Sl2Family, beta: Rational64) -> Result<CheckReport> {
    require_weight(fam, beta)?;
    let r = fam.r() as i64;
    let n = fam.modulus();
    let c = inv_brace1_sq(fam);
    let tag = beta.to_string();
    let mut report = CheckReport::new();

    let mut diff_fail = None;
    for i in 0..r {
        for j in 0..r {
            let lhs = &casimir_eigenvalue(fam, beta + rat(2 * i)) - &casimir_eigenvalue(fam, beta + rat(2 * j));
            let rhs = &(&fam.brace(rat(i - j)) * &fam.brace(beta + rat(r + i + j))) * &c;
            if lhs != rhs {
                diff_fail.get_or_insert(format!("i={i}, j={j}: {lhs} vs {rhs}"));
            }
        }
    }
    report.push(format!("casimir_difference_formula[{tag}]"), diff_fail.is_none(), diff_fail);

    let wb = casimir_eigenvalue(fam, beta);
    let mut lhs = CycNumber::one(n);
    let mut braces = CycNumber::one(n);
    let mut squares = CycNumber::one(n);
    for k in 1..r {
        lhs = &lhs * &(&wb - &casimir_eigenvalue(fam, beta + rat(2 * k)));
        braces = &(&braces * &(&fam.brace(rat(k)) * &fam.brace(beta + rat(k)))) * &c;
        squares = &squares * &(&fam.brace(rat(k)) * &fam.brace(rat(k)));
    }
    report.push_eq(format!("casimir_gap_product[{tag}]"), &lhs, &braces);
    let sign = CycNumber::from_integer(n, if r % 2 == 0 { -1 } else { 1 });
    report.push_eq(format!("casimir_gap_product_signed[{tag}]"), &lhs, &(&sign * &braces));
    report.push_eq(
        format!("brace_square_product[r={r}]"),
        &squares,
        &(&sign * &CycNumber::from_integer(n, r * r)),
    );
    Ok(report)
}

/// `t_{V_β}(Id)` computed several ways.
#[derive(Debug, Clone)]
pub struct ModifiedDimension {
    pub weight: Rational64,
    /// `{1}^{2r-2} / r³`.
    pub d0: CycNumber,
    /// `μ̃(L_β(Ω))`.
    pub integral_of_projector: CycNumber,
    /// `μ̃(L_β(Ω)) / r`.
    pub via_integral: CycNumber,
    /// `d_0 r{β}/{rβ}`.
    pub via_formula: CycNumber,
    /// `d_0 ∏_{k=1}^{r-1}{k}/{β+r-k}`.
    pub via_product: CycNumber,
    /// Trace of the identity of `H·L ≅ V_β^{⊕r}`, divided by `r`.
    pub via_presented_sum: CycNumber,
    /// Trace of the identity of `H·e ≅ V_β`, `e = L·P_λ` with `P_λ` the projector
    /// onto the `K`-eigenvalue `q^λ`.
    pub via_primitive_idempotent: CycNumber,
}

pub fn modified_dimension(integral: &GIntegral<'_, Sl2Family>, beta: Rational64) -> Result<ModifiedDimension> {
    let fam = integral.family();
    require_non_integral(beta)?;
    require_weight(fam, beta)?;
    let r = fam.r() as i64;
    let n = fam.modulus();
    let grade = simple_module_grade(fam, beta);
    let alg = fam.algebra(&grade)?;
    let mu = integral.symmetrised_right(&grade)?;
    let l = casimir_projector(fam, beta)?;
    let r_inv = CycNumber::from_rational(n, &rational(1, r));

    let b1 = fam.brace(rat(1));
    let mut d0 = CycNumber::one(n);
    for _ in 0..2 * r - 2 {
        d0 = &d0 * &b1;
    }
    d0 = &d0 * &CycNumber::from_rational(n, &rational(1, r * r * r));

    let integral_of_projector = dot(&mu, &l);
    let via_integral = &integral_of_projector * &r_inv;
    let via_formula = &d0 * &(&(&CycNumber::from_integer(n, r) * &fam.brace(beta)) * &fam.brace(beta * rat(r)).inv()?);
    let mut via_product = d0.clone();
    for k in 1..r {
        via_product = &via_product * &(&fam.brace(rat(k)) * &fam.brace(beta + rat(r - k)).inv()?);
    }

    let one_by_one = |x: Elem| HMatrix::from_entries(1, 1, vec![x]);
    let p_sum = ProjPresentation::new(&alg, grade, one_by_one(l.clone()))?;
    let via_presented_sum = &hs_trace(&alg, &mu, &p_sum, &one_by_one(l.clone()))? * &r_inv;

    let lambda = beta + rat(r - 1);
    let k_el = fam.generator(&grade, Generator::K)?;
    let target = fam.qpow(lambda);
    let mut proj = alg.unit().clone();
    for j in 0..r {
        let ev = fam.qpow(grade.value() + rat(2 * j));
        if ev == target {
            continue;
        }
        let c = (&target - &ev).inv()?;
        let minus = -&(&ev * &c);
        proj = alg.mul(&proj, &lin(&[(&c, &k_el), (&minus, alg.unit())]));
    }
    let e = alg.mul(&l, &proj);
    let p_prim = ProjPresentation::new(&alg, grade, one_by_one(e.clone()))?;
    let via_primitive_idempotent = hs_trace(&alg, &mu, &p_prim, &one_by_one(e))?;

    Ok(ModifiedDimension {
        weight: beta,
        d0,
        integral_of_projector,
        via_integral,
        via_formula,
        via_product,
        via_presented_sum,
        via_primitive_idempotent,
    })
}

pub fn check_modified_dimension(integral: &GIntegral<'_, Sl2Family>, beta: Rational64) -> Result<CheckReport> {
    let md = modified_dimension(integral, beta)?;
    let tag = beta.to_string();
    let mut report = CheckReport::new();
    report.push_eq(format!("dimension_product_forms_agree[{tag}]"), &md.via_product, &md.via_formula);
    report.push_eq(
        format!("dimension_presented_sum[{tag}]"),
        &md.via_presented_sum,
        &md.via_integral,
    );
    report.push_eq(
        format!("dimension_primitive_idempotent[{tag}]"),
        &md.via_primitive_idempotent,
        &md.via_integral,
    );
    report.push_eq(
        format!("integral_of_projector_is_r_times_dimension[{tag}]"),
        &md.via_integral,
        &md.via_formula,
    );
    if let Some(entry) = report.entries.last_mut() {
        entry.values.push(NamedValue::new("d0", &md.d0));
        entry.values.push(NamedValue::new("integral_of_projector", &md.integral_of_projector));
    }
    Ok(report)
}

/// The character `χ_α(E^m F^n K^l) = δ_{m,0} δ_{n,0} q^{αl}`: a symmetric form
/// on `U_ᾱ` that restricts to the counit at `α = 0` and is not an integral.
pub fn character_form(fam: &Sl2Family, a: &Sl2Grade) -> Result<Elem> {
    fam.algebra(a)?;
    Ok((0..fam.dim_piece())
        .map(|i| {
            let (m, n, l) = fam.exponents(i);
            if m == 0 && n == 0 {
                fam.qpow(a.value() * rat(l as i64))
            } else {
                CycNumber::zero(fam.modulus())
            }
        })
        .collect())
}

/// Everything specific to the quantum group at grade `ᾱ` and the module `V_α`.
pub fn sl2_full_report(integral: &GIntegral<'_, Sl2Family>, alpha: Rational64) -> Result<CheckReport> {
    let fam = integral.family();
    let a = Sl2Grade::new(alpha);
    let grade_v = simple_module_grade(fam, alpha);
    let mut report = CheckReport::new();
    report.extend(check_casimir(fam, &a)?);
    report.extend(casimir_power_identities(integral, &a)?);
    if grade_v != a {
        report.extend(casimir_power_identities(integral, &grade_v)?);
    }
    let v = simple_module(fam, alpha)?;
    report.extend(check_simple_module(fam, &v)?);
    report.extend(density_decomposition_check(fam, alpha)?);
    report.extend(check_casimir_projector(fam, alpha)?);
    report.extend(product_identities(fam, alpha)?);
    report.extend(check_modified_dimension(integral, alpha)?);
    Ok(report)
}
