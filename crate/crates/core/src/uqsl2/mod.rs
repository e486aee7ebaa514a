//! The unrestricted quantum group of sl(2) at `q = e^{iπ/r}`, as a Hopf
//! G-coalgebra over `G = C/2Z` with grade pieces `U_ᾱ = U/(E^r, F^r, K^r - q^{rα})`.
//!
//! Basis of every `U_ᾱ`: PBW monomials `E^m F^n K^l`, `0 <= m, n, l < r`,
//! at index `m r² + n r + l`.

mod identities;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::hopf_core::{Elem, GradedAlgebraData, HopfGFamily};
use crate::linalg::{Matrix, SparseVec};
use crate::scalar::{CycNumber, QPowers};

pub use identities::*;

/// A grade `ᾱ ∈ Q/2Z`, stored by its representative in `[0, 2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sl2Grade(Rational64);

impl Sl2Grade {
    pub fn new(alpha: Rational64) -> Self {
        let two = Rational64::from_integer(2);
        let k = (alpha / two).floor();
        Sl2Grade(alpha - two * k)
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::new(Rational64::new(n, d))
    }

    pub fn zero() -> Self {
        Sl2Grade(Rational64::zero())
    }

    /// Representative in `[0, 2)`.
    pub fn value(&self) -> Rational64 {
        self.0
    }

    pub fn big(&self) -> BigRational {
        to_big(self.0)
    }
}

impl fmt::Display for Sl2Grade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for Sl2Grade {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_rational64(s).map(Sl2Grade::new)
    }
}

pub fn parse_rational64(s: &str) -> Result<Rational64> {
    let bad = || Error::Schema(format!("cannot parse {s:?} as a rational number"));
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: i64 = p.trim().parse().map_err(|_| bad())?;
            let q: i64 = q.trim().parse().map_err(|_| bad())?;
            if q == 0 {
                return Err(bad());
            }
            Ok(Rational64::new(p, q))
        }
        None => Ok(Rational64::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn to_big(x: Rational64) -> BigRational {
    BigRational::new(BigInt::from(*x.numer()), BigInt::from(*x.denom()))
}

/// Left multiplication operators by the generators on one grade piece.
struct GeneratorOps {
    e: Matrix,
    f: Matrix,
    k: Matrix,
    k_inv: Matrix,
}

#[derive(Default)]
struct Cache {
    algebras: HashMap<Sl2Grade, Arc<GradedAlgebraData>>,
    ops: HashMap<Sl2Grade, Arc<GeneratorOps>>,
    coproducts: HashMap<(Sl2Grade, Sl2Grade), Arc<Matrix>>,
    antipodes: HashMap<Sl2Grade, Arc<Matrix>>,
    pivots: HashMap<Sl2Grade, Arc<Elem>>,
}

/// The family `{U_ᾱ}` restricted to grades whose denominator divides `s`.
pub struct Sl2Family {
    r: u32,
    s: u32,
    q: QPowers,
    cache: RwLock<Cache>,
}

impl Sl2Family {
    /// Family over `Q(ζ_{2rs})`, containing every grade with denominator dividing `s`.
    pub fn new(r: u32, s: u32) -> Self {
        assert!(r >= 2, "r must be at least 2");
        assert!(s >= 1);
        Sl2Family {
            r,
            s,
            q: QPowers::new(r, 2 * r * s),
            cache: RwLock::new(Cache::default()),
        }
    }

    /// The smallest family containing the grade of `alpha`.
    pub fn for_alpha(r: u32, alpha: Rational64) -> Self {
        Self::new(r, *alpha.denom() as u32)
    }

    /// Family that also contains the grades of all listed weights.
    pub fn for_weights(r: u32, weights: &[Rational64]) -> Self {
        let s = weights.iter().fold(1i64, |acc, w| acc.lcm(w.denom()));
        Self::new(r, s as u32)
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn q(&self) -> &QPowers {
        &self.q
    }

    pub fn dim_piece(&self) -> usize {
        (self.r * self.r * self.r) as usize
    }

    pub fn index(&self, m: u32, n: u32, l: u32) -> usize {
        let r = self.r;
        assert!(m < r && n < r && l < r);
        (m * r * r + n * r + l) as usize
    }

    pub fn exponents(&self, i: usize) -> (u32, u32, u32) {
        let r = self.r as usize;
        ((i / (r * r)) as u32, ((i / r) % r) as u32, (i % r) as u32)
    }

    pub fn monomial(&self, m: u32, n: u32, l: u32) -> Elem {
        let mut e = vec![CycNumber::zero(self.q.modulus()); self.dim_piece()];
        e[self.index(m, n, l)] = CycNumber::one(self.q.modulus());
        e
    }

    /// `q^x` for rational `x`.
    pub fn qpow(&self, x: Rational64) -> CycNumber {
        self.q.pow(&to_big(x)).expect("exponent lies in the working field")
    }

    pub fn qpow_big(&self, x: &BigRational) -> CycNumber {
        self.q.pow(x).expect("exponent lies in the working field")
    }

    pub fn scalar(&self, n: i64) -> CycNumber {
        CycNumber::from_integer(self.q.modulus(), n)
    }

    /// `{x} = q^x - q^{-x}`.
    pub fn brace(&self, x: Rational64) -> CycNumber {
        self.q.brace(&to_big(x)).expect("exponent lies in the working field")
    }

    /// `q^{rα}` for the chosen representative of the grade.
    fn k_power_scalar(&self, a: &Sl2Grade) -> CycNumber {
        self.qpow(a.value() * Rational64::from_integer(self.r as i64))
    }

    fn check_grade(&self, a: &Sl2Grade) -> Result<()> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(Error::WindowIncomplete(format!(
                "grade {a} needs denominators beyond {} in Q(zeta_{})",
                self.s,
                self.q.modulus()
            )))
        }
    }

    fn label(m: u32, n: u32, l: u32) -> String {
        let part = |g: &str, e: u32| match e {
            0 => None,
            1 => Some(g.to_string()),
            _ => Some(format!("{g}^{e}")),
        };
        let parts: Vec<String> = [part("E", m), part("F", n), part("K", l)]
            .into_iter()
            .flatten()
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join(" ")
        }
    }

    fn build_ops(&self, a: &Sl2Grade) -> GeneratorOps {
        let r = self.r;
        let n = self.q.modulus();
        let d = self.dim_piece();
        let kr = self.k_power_scalar(a);
        let kr_inv = kr.inv().unwrap();
        let mut e_cols: Vec<SparseVec> = Vec::with_capacity(d);
        let mut k_cols: Vec<SparseVec> = Vec::with_capacity(d);
        let mut ki_cols: Vec<SparseVec> = Vec::with_capacity(d);
        for i in 0..d {
            let (m, nn, l) = self.exponents(i);
            e_cols.push(if m + 1 < r {
                vec![(self.index(m + 1, nn, l), CycNumber::one(n))]
            } else {
                vec![]
            });
            // K E^m F^n = q^{2(m-n)} E^m F^n K
            let w = self.q.pow_int(2 * (m as i64 - nn as i64));
            k_cols.push(if l + 1 < r {
                vec![(self.index(m, nn, l + 1), w)]
            } else {
                vec![(self.index(m, nn, 0), &w * &kr)]
            });
            let wi = self.q.pow_int(-2 * (m as i64 - nn as i64));
            ki_cols.push(if l > 0 {
                vec![(self.index(m, nn, l - 1), wi)]
            } else {
                vec![(self.index(m, nn, r - 1), &wi * &kr_inv)]
            });
        }
        let e = Matrix::from_sparse_columns(d, n, &e_cols);
        let k = Matrix::from_sparse_columns(d, n, &k_cols);
        let k_inv = Matrix::from_sparse_columns(d, n, &ki_cols);

        // F E^m X = E (F E^{m-1} X) - ({1})^{-1} (K - K^{-1}) E^{m-1} X, from [E, F] = (K - K^{-1})/{1}.
        let brace1_inv = self.brace(Rational64::one()).inv().unwrap();
        let mut f_cols: Vec<SparseVec> = vec![Vec::new(); d];
        for m in 0..r {
            for nn in 0..r {
                for l in 0..r {
                    let i = self.index(m, nn, l);
                    f_cols[i] = if m == 0 {
                        if nn + 1 < r {
                            vec![(self.index(0, nn + 1, l), CycNumber::one(n))]
                        } else {
                            vec![]
                        }
                    } else {
                        let y = vec![(self.index(m - 1, nn, l), CycNumber::one(n))];
                        let fy = &f_cols[self.index(m - 1, nn, l)];
                        let efy = e.apply_sparse(fy);
                        let corr = crate::linalg::sparse_axpy(
                            &k.apply_sparse(&y),
                            &k_inv.apply_sparse(&y),
                            &-CycNumber::one(n),
                        );
                        crate::linalg::sparse_axpy(&efy, &corr, &-&brace1_inv)
                    };
                }
            }
        }
        let f = Matrix::from_sparse_columns(d, n, &f_cols);
        GeneratorOps { e, f, k, k_inv }
    }

    fn ops(&self, a: &Sl2Grade) -> Result<Arc<GeneratorOps>> {
        self.check_grade(a)?;
        if let Some(o) = self.cache.read().unwrap().ops.get(a) {
            return Ok(o.clone());
        }
        let o = Arc::new(self.build_ops(a));
        Ok(self.cache.write().unwrap().ops.entry(*a).or_insert(o).clone())
    }

    fn build_algebra(&self, a: &Sl2Grade) -> Result<GradedAlgebraData> {
        let ops = self.ops(a)?;
        let r = self.r;
        let n = self.q.modulus();
        let d = self.dim_piece();
        let mut table: Vec<SparseVec> = vec![Vec::new(); d * d];
        for j in 0..d {
            let bj: SparseVec = vec![(j, CycNumber::one(n))];
            let mut kl = vec![bj];
            for _ in 1..r {
                let next = ops.k.apply_sparse(kl.last().unwrap());
                kl.push(next);
            }
            for (l, v) in kl.iter().enumerate() {
                let mut fv = v.clone();
                for nn in 0..r {
                    if nn > 0 {
                        fv = ops.f.apply_sparse(&fv);
                    }
                    let mut efv = fv.clone();
                    for m in 0..r {
                        if m > 0 {
                            efv = ops.e.apply_sparse(&efv);
                        }
                        table[self.index(m, nn, l as u32) * d + j] = efv.clone();
                    }
                }
            }
        }
        let labels = (0..d)
            .map(|i| {
                let (m, nn, l) = self.exponents(i);
                Self::label(m, nn, l)
            })
            .collect();
        GradedAlgebraData::new(n, labels, self.monomial(0, 0, 0), table)
    }

    fn build_coproduct(&self, a: &Sl2Grade, b: &Sl2Grade) -> Result<Matrix> {
        let (oa, ob) = (self.ops(a)?, self.ops(b)?);
        let n = self.q.modulus();
        let d = self.dim_piece();
        let id = Matrix::identity(d, n);
        // left multiplication by Δ(E), Δ(F), Δ(K) on H_α ⊗ H_β
        let de = id.kron(&ob.e).add(&oa.e.kron(&ob.k));
        let df = oa.k_inv.kron(&ob.f).add(&oa.f.kron(&id));
        let dk = oa.k.kron(&ob.k);
        let r = self.r;
        let mut cols: Vec<SparseVec> = vec![Vec::new(); d];
        let unit: SparseVec = vec![(self.index(0, 0, 0) * d + self.index(0, 0, 0), CycNumber::one(n))];
        let mut kl = vec![unit];
        for _ in 1..r {
            let next = dk.apply_sparse(kl.last().unwrap());
            kl.push(next);
        }
        for (l, v) in kl.iter().enumerate() {
            let mut fv = v.clone();
            for nn in 0..r {
                if nn > 0 {
                    fv = df.apply_sparse(&fv);
                }
                let mut efv = fv.clone();
                for m in 0..r {
                    if m > 0 {
                        efv = de.apply_sparse(&efv);
                    }
                    cols[self.index(m, nn, l as u32)] = efv.clone();
                }
            }
        }
        Ok(Matrix::from_sparse_columns(d * d, n, &cols))
    }

    fn build_antipode(&self, a: &Sl2Grade) -> Result<Matrix> {
        let target = self.inverse(a);
        let o = self.ops(&target)?;
        let n = self.q.modulus();
        let d = self.dim_piece();
        let minus = -CycNumber::one(n);
        // S(E) = -E K^{-1}, S(F) = -K F, S(K) = K^{-1}; S(E^m F^n K^l) = S(K)^l S(F)^n S(E)^m.
        let se = o.e.mul(&o.k_inv).scale(&minus);
        let sf = o.k.mul(&o.f).scale(&minus);
        let r = self.r;
        let mut cols: Vec<SparseVec> = vec![Vec::new(); d];
        let unit: SparseVec = vec![(self.index(0, 0, 0), CycNumber::one(n))];
        let mut em = vec![unit];
        for _ in 1..r {
            let next = se.apply_sparse(em.last().unwrap());
            em.push(next);
        }
        for (m, v) in em.iter().enumerate() {
            let mut fv = v.clone();
            for nn in 0..r {
                if nn > 0 {
                    fv = sf.apply_sparse(&fv);
                }
                let mut kv = fv.clone();
                for l in 0..r {
                    if l > 0 {
                        kv = o.k_inv.apply_sparse(&kv);
                    }
                    cols[self.index(m as u32, nn, l)] = kv.clone();
                }
            }
        }
        Ok(Matrix::from_sparse_columns(d, n, &cols))
    }

    /// Element `E`, `F`, `K` or `K^{-1}` of `U_ᾱ`.
    pub fn generator(&self, a: &Sl2Grade, which: Generator) -> Result<Elem> {
        let one = self.monomial(0, 0, 0);
        let o = self.ops(a)?;
        let m = match which {
            Generator::E => &o.e,
            Generator::F => &o.f,
            Generator::K => &o.k,
            Generator::KInv => &o.k_inv,
        };
        Ok(m.mul_vec(&one))
    }

    /// Matrix of left multiplication by a generator on `U_ᾱ`.
    pub fn generator_action(&self, a: &Sl2Grade, which: Generator) -> Result<Matrix> {
        let o = self.ops(a)?;
        Ok(match which {
            Generator::E => o.e.clone(),
            Generator::F => o.f.clone(),
            Generator::K => o.k.clone(),
            Generator::KInv => o.k_inv.clone(),
        })
    }

    /// The grades `{0, ±α, ±2α}`, without repetitions.
    pub fn window(alpha: Rational64) -> Vec<Sl2Grade> {
        let mut w: Vec<Sl2Grade> = [0, 1, -1, 2, -2]
            .iter()
            .map(|&k| Sl2Grade::new(alpha * Rational64::from_integer(k)))
            .collect();
        let mut seen = std::collections::HashSet::new();
        w.retain(|g| seen.insert(*g));
        w
    }

    /// Index in `U_0̄` of `E^{r-1} F^{r-1} K`.
    pub fn integral_witness_index(&self) -> usize {
        self.index(self.r - 1, self.r - 1, 1 % self.r)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Generator {
    E,
    F,
    K,
    KInv,
}

impl HopfGFamily for Sl2Family {
    type Grade = Sl2Grade;

    fn modulus(&self) -> u32 {
        self.q.modulus()
    }

    fn unit_grade(&self) -> Sl2Grade {
        Sl2Grade::zero()
    }

    fn compose(&self, a: &Sl2Grade, b: &Sl2Grade) -> Sl2Grade {
        Sl2Grade::new(a.value() + b.value())
    }

    fn inverse(&self, a: &Sl2Grade) -> Sl2Grade {
        Sl2Grade::new(-a.value())
    }

    fn contains(&self, a: &Sl2Grade) -> bool {
        self.s as i64 % a.value().denom() == 0
    }

    fn algebra(&self, a: &Sl2Grade) -> Result<Arc<GradedAlgebraData>> {
        self.check_grade(a)?;
        if let Some(x) = self.cache.read().unwrap().algebras.get(a) {
            return Ok(x.clone());
        }
        let x = Arc::new(self.build_algebra(a)?);
        Ok(self.cache.write().unwrap().algebras.entry(*a).or_insert(x).clone())
    }

    fn coproduct(&self, a: &Sl2Grade, b: &Sl2Grade) -> Result<Arc<Matrix>> {
        self.check_grade(a)?;
        self.check_grade(b)?;
        if let Some(x) = self.cache.read().unwrap().coproducts.get(&(*a, *b)) {
            return Ok(x.clone());
        }
        let x = Arc::new(self.build_coproduct(a, b)?);
        Ok(self
            .cache
            .write()
            .unwrap()
            .coproducts
            .entry((*a, *b))
            .or_insert(x)
            .clone())
    }

    fn counit(&self) -> Result<Arc<Elem>> {
        let n = self.q.modulus();
        let eps = (0..self.dim_piece())
            .map(|i| {
                let (m, nn, _) = self.exponents(i);
                if m == 0 && nn == 0 {
                    CycNumber::one(n)
                } else {
                    CycNumber::zero(n)
                }
            })
            .collect();
        Ok(Arc::new(eps))
    }

    fn antipode(&self, a: &Sl2Grade) -> Result<Arc<Matrix>> {
        self.check_grade(a)?;
        if let Some(x) = self.cache.read().unwrap().antipodes.get(a) {
            return Ok(x.clone());
        }
        let x = Arc::new(self.build_antipode(a)?);
        Ok(self.cache.write().unwrap().antipodes.entry(*a).or_insert(x).clone())
    }

    /// `g_ᾱ = q^{-rα} K`.
    fn pivot(&self, a: &Sl2Grade) -> Result<Arc<Elem>> {
        self.check_grade(a)?;
        if let Some(x) = self.cache.read().unwrap().pivots.get(a) {
            return Ok(x.clone());
        }
        let mut g = self.monomial(0, 0, 1 % self.r);
        let c = self.k_power_scalar(a).inv().unwrap();
        g[self.index(0, 0, 1)] = c;
        let x = Arc::new(g);
        Ok(self.cache.write().unwrap().pivots.entry(*a).or_insert(x).clone())
    }

    fn generators(&self, a: &Sl2Grade) -> Option<Vec<Elem>> {
        [Generator::E, Generator::F, Generator::K]
            .into_iter()
            .map(|g| self.generator(a, g).ok())
            .collect()
    }

    /// `μ_0̄(E^{r-1} F^{r-1} K) = η = 1`.
    fn integral_normalization(&self) -> Option<(usize, CycNumber)> {
        Some((self.integral_witness_index(), CycNumber::one(self.q.modulus())))
    }
}
