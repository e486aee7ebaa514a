//! Exact arithmetic in cyclotomic fields `Q(ζ_N)`.
//!
//! An element is stored in the power basis `1, ζ, …, ζ^{φ(N)-1}` of
//! `Q[x]/Φ_N(x)` as integer numerators over one positive common denominator.
//! The representation is canonical (reduced modulo `Φ_N`, content coprime to
//! the denominator), so structural equality is field equality.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("modulus mismatch: Q(zeta_{0}) vs Q(zeta_{1})")]
    ModulusMismatch(u32, u32),
    #[error("cannot embed Q(zeta_{from}) into Q(zeta_{to}): {from} does not divide {to}")]
    NotASubfield { from: u32, to: u32 },
    #[error("invalid cyclotomic number: {0}")]
    Invalid(String),
}

fn cyclotomic_cache() -> &'static RwLock<HashMap<u32, Arc<Vec<i64>>>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Coefficients (low degree first) of the `n`-th cyclotomic polynomial.
///
/// Computed by exact division `Φ_n = (x^n - 1) / ∏_{d | n, d < n} Φ_d` and
/// memoized per `n`.
pub fn cyclotomic_polynomial(n: u32) -> Arc<Vec<i64>> {
    assert!(n >= 1, "cyclotomic polynomial needs n >= 1");
    if let Some(p) = cyclotomic_cache().read().unwrap().get(&n) {
        return p.clone();
    }
    let mut num: Vec<BigInt> = vec![BigInt::zero(); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            let divisor = cyclotomic_polynomial(d);
            num = exact_poly_div(&num, &divisor);
        }
    }
    let coeffs: Vec<i64> = num
        .iter()
        .map(|c| c.to_i64().expect("cyclotomic coefficient overflows i64"))
        .collect();
    let coeffs = Arc::new(coeffs);
    cyclotomic_cache()
        .write()
        .unwrap()
        .insert(n, coeffs.clone());
    coeffs
}

// Divides by a monic integer polynomial; panics on a nonzero remainder.
fn exact_poly_div(num: &[BigInt], den: &[i64]) -> Vec<BigInt> {
    let dn = den.len() - 1;
    assert_eq!(den[dn], 1);
    let mut rem = num.to_vec();
    let qlen = rem.len() - dn;
    let mut quot = vec![BigInt::zero(); qlen];
    for k in (0..qlen).rev() {
        let c = rem[k + dn].clone();
        if c.is_zero() {
            continue;
        }
        for (j, &dj) in den.iter().enumerate() {
            if dj != 0 {
                rem[k + j] -= &c * dj;
            }
        }
        quot[k] = c;
    }
    assert!(rem.iter().all(Zero::is_zero), "inexact cyclotomic division");
    quot
}

/// Euler's totient, which is the degree of `Φ_n`.
pub fn euler_phi(n: u32) -> usize {
    cyclotomic_polynomial(n).len() - 1
}

/// An element of `Q(ζ_N)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycNumber {
    modulus: u32,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CycNumber {
    pub fn zero(modulus: u32) -> Self {
        CycNumber {
            modulus,
            num: vec![BigInt::zero(); euler_phi(modulus)],
            den: BigInt::one(),
        }
    }

    pub fn one(modulus: u32) -> Self {
        Self::from_integer(modulus, 1)
    }

    pub fn from_integer(modulus: u32, value: i64) -> Self {
        let mut z = Self::zero(modulus);
        z.num[0] = BigInt::from(value);
        z
    }

    pub fn from_rational(modulus: u32, value: &BigRational) -> Self {
        let mut z = Self::zero(modulus);
        z.num[0] = value.numer().clone();
        z.den = value.denom().clone();
        z.normalize();
        z
    }

    /// Builds `Σ c_k ζ^k` from arbitrary-length rational coefficients,
    /// reducing modulo `Φ_N`.
    pub fn from_coeffs(modulus: u32, coeffs: &[BigRational]) -> Self {
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut num: Vec<BigInt> = coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        let d = euler_phi(modulus);
        if num.len() < d {
            num.resize(d, BigInt::zero());
        }
        reduce_mod_cyclotomic(&mut num, modulus);
        let mut z = CycNumber { modulus, num, den };
        z.normalize();
        z
    }

    /// `ζ_N^k`, reduced modulo `Φ_N`.
    pub fn root_of_unity(modulus: u32, k: i64) -> Self {
        let e = k.rem_euclid(modulus as i64) as usize;
        let mut num = vec![BigInt::zero(); euler_phi(modulus).max(e + 1)];
        num[e] = BigInt::one();
        reduce_mod_cyclotomic(&mut num, modulus);
        CycNumber {
            modulus,
            num,
            den: BigInt::one(),
        }
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// Rational coordinates in the power basis.
    pub fn coeffs(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    /// Returns the value as a rational number if it lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.num[1..].iter().all(Zero::is_zero) {
            Some(BigRational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    fn normalize(&mut self) {
        if self.is_zero() {
            self.den = BigInt::one();
            return;
        }
        if self.den.is_negative() {
            self.den = -&self.den;
            for c in &mut self.num {
                *c = -&*c;
            }
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            if !c.is_zero() {
                g = g.gcd(c);
            }
        }
        if !g.is_one() {
            self.den /= &g;
            for c in &mut self.num {
                *c /= &g;
            }
        }
    }

    fn check_modulus(&self, other: &Self) -> Result<(), ScalarError> {
        if self.modulus == other.modulus {
            Ok(())
        } else {
            Err(ScalarError::ModulusMismatch(self.modulus, other.modulus))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, ScalarError> {
        self.check_modulus(other)?;
        Ok(self.add_unchecked(other, false))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, ScalarError> {
        self.check_modulus(other)?;
        Ok(self.add_unchecked(other, true))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, ScalarError> {
        self.check_modulus(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, ScalarError> {
        self.check_modulus(other)?;
        Ok(self.mul_unchecked(&other.inv()?))
    }

    fn add_unchecked(&self, other: &Self, subtract: bool) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if subtract { -other } else { other.clone() };
        }
        let (num, den) = if self.den == other.den {
            let num = self
                .num
                .iter()
                .zip(&other.num)
                .map(|(a, b)| if subtract { a - b } else { a + b })
                .collect();
            (num, self.den.clone())
        } else {
            let num = self
                .num
                .iter()
                .zip(&other.num)
                .map(|(a, b)| {
                    let x = a * &other.den;
                    let y = b * &self.den;
                    if subtract {
                        x - y
                    } else {
                        x + y
                    }
                })
                .collect();
            (num, &self.den * &other.den)
        };
        let mut z = CycNumber {
            modulus: self.modulus,
            num,
            den,
        };
        z.normalize();
        z
    }

    fn scale_by_rational(&self, num: &BigInt, den: &BigInt) -> Self {
        let mut z = CycNumber {
            modulus: self.modulus,
            num: self.num.iter().map(|c| c * num).collect(),
            den: &self.den * den,
        };
        z.normalize();
        z
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.modulus);
        }
        if let Some(r) = other.as_rational() {
            return self.scale_by_rational(r.numer(), r.denom());
        }
        if let Some(r) = self.as_rational() {
            return other.scale_by_rational(r.numer(), r.denom());
        }
        let d = self.num.len();
        let mut prod = vec![BigInt::zero(); 2 * d - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.num.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        reduce_mod_cyclotomic(&mut prod, self.modulus);
        let mut z = CycNumber {
            modulus: self.modulus,
            num: prod,
            den: &self.den * &other.den,
        };
        z.normalize();
        z
    }

    /// Multiplicative inverse by the extended Euclidean algorithm against `Φ_N`.
    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(Self::from_rational(self.modulus, &r.recip()));
        }
        let phi: Vec<BigRational> = cyclotomic_polynomial(self.modulus)
            .iter()
            .map(|&c| BigRational::from_integer(BigInt::from(c)))
            .collect();
        let a = poly_trim(self.coeffs());
        // Invariant: s * a ≡ r (mod Φ).
        let (mut r0, mut r1) = (phi, a);
        let (mut s0, mut s1): (Vec<BigRational>, Vec<BigRational>) =
            (vec![], vec![BigRational::one()]);
        while r1.len() > 1 {
            let (q, rem) = poly_divrem(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, rem);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r1 is a nonzero constant since Φ_N is irreducible.
        let c = r1[0].recip();
        let inv: Vec<BigRational> = s1.iter().map(|x| x * &c).collect();
        Ok(Self::from_coeffs(self.modulus, &inv))
    }

    /// Complex conjugation `ζ ↦ ζ^{-1}`.
    pub fn conj(&self) -> Self {
        let n = self.modulus as usize;
        let mut out = vec![BigRational::zero(); n.max(1)];
        for (k, c) in self.coeffs().into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = (n - k % n) % n;
            out[e] += c;
        }
        Self::from_coeffs(self.modulus, &out)
    }

    /// Embeds into `Q(ζ_M)` via `ζ_N ↦ ζ_M^{M/N}`.
    pub fn embed(&self, target: u32) -> Result<Self, ScalarError> {
        if !target.is_multiple_of(self.modulus) {
            return Err(ScalarError::NotASubfield {
                from: self.modulus,
                to: target,
            });
        }
        if target == self.modulus {
            return Ok(self.clone());
        }
        let step = (target / self.modulus) as usize;
        let mut out = vec![BigRational::zero(); (self.num.len() - 1) * step + 1];
        for (k, c) in self.coeffs().into_iter().enumerate() {
            out[k * step] = c;
        }
        Ok(Self::from_coeffs(target, &out))
    }

    pub fn pow(&self, e: i64) -> Result<Self, ScalarError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one(self.modulus);
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// Floating-point value for display only.
    pub fn to_complex(&self) -> (f64, f64) {
        let den = self.den.to_f64().unwrap_or(f64::NAN);
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let theta = 2.0 * std::f64::consts::PI * k as f64 / self.modulus as f64;
            let v = c.to_f64().unwrap_or(f64::NAN) / den;
            re += v * theta.cos();
            im += v * theta.sin();
        }
        (re, im)
    }

    /// Display helper such as `1.414214+0.000000i`.
    pub fn decimal(&self) -> String {
        let (re, im) = self.to_complex();
        let clean = |x: f64| if x.abs() < 1e-12 { 0.0 } else { x };
        let (re, im) = (clean(re), clean(im));
        if im < 0.0 {
            format!("{re:.6}-{:.6}i", -im)
        } else {
            format!("{re:.6}+{im:.6}i")
        }
    }
}

/// Reduces an integer polynomial in place modulo `Φ_n`, truncating to degree `< φ(n)`.
fn reduce_mod_cyclotomic(p: &mut Vec<BigInt>, n: u32) {
    let phi = cyclotomic_polynomial(n);
    let d = phi.len() - 1;
    if p.len() > d {
        for k in (d..p.len()).rev() {
            if p[k].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut p[k]);
            for (j, &pj) in phi[..d].iter().enumerate() {
                match pj {
                    0 => {}
                    1 => p[k - d + j] -= &c,
                    -1 => p[k - d + j] += &c,
                    _ => p[k - d + j] -= &c * pj,
                }
            }
        }
    }
    p.resize(d, BigInt::zero());
}

fn poly_trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
            let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
            x - y
        })
        .collect();
    poly_trim(out)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    poly_trim(out)
}

fn poly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = poly_trim(a.to_vec());
    let b = poly_trim(b.to_vec());
    let db = b.len() - 1;
    let lead = b[db].clone();
    if rem.len() < b.len() {
        return (vec![], rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    while rem.len() >= b.len() {
        let k = rem.len() - b.len();
        let c = rem.last().unwrap() / &lead;
        for (j, bj) in b.iter().enumerate() {
            rem[k + j] -= &c * bj;
        }
        quot[k] = c;
        rem = poly_trim(rem);
    }
    (poly_trim(quot), rem)
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $inner:expr) => {
        impl $tr<&CycNumber> for &CycNumber {
            type Output = CycNumber;
            fn $method(self, rhs: &CycNumber) -> CycNumber {
                if let Err(e) = self.check_modulus(rhs) {
                    panic!("{e}");
                }
                $inner(self, rhs)
            }
        }
        impl $tr<CycNumber> for CycNumber {
            type Output = CycNumber;
            fn $method(self, rhs: CycNumber) -> CycNumber {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&CycNumber> for CycNumber {
            type Output = CycNumber;
            fn $method(self, rhs: &CycNumber) -> CycNumber {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a: &CycNumber, b| a.add_unchecked(b, false));
forward_binop!(Sub, sub, |a: &CycNumber, b| a.add_unchecked(b, true));
forward_binop!(Mul, mul, |a: &CycNumber, b| a.mul_unchecked(b));

impl AddAssign<&CycNumber> for CycNumber {
    fn add_assign(&mut self, rhs: &CycNumber) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&CycNumber> for CycNumber {
    fn sub_assign(&mut self, rhs: &CycNumber) {
        *self = &*self - rhs;
    }
}

impl Neg for &CycNumber {
    type Output = CycNumber;
    fn neg(self) -> CycNumber {
        CycNumber {
            modulus: self.modulus,
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl Neg for CycNumber {
    type Output = CycNumber;
    fn neg(self) -> CycNumber {
        -&self
    }
}

impl fmt::Display for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let mono = match k {
                0 => String::new(),
                1 => format!("z{}", self.modulus),
                _ => format!("z{}^{}", self.modulus, k),
            };
            if k == 0 {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{abs}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycNumber({self})")
    }
}

#[derive(Serialize, Deserialize)]
struct CycRepr {
    #[serde(rename = "N")]
    n: u32,
    coeffs: Vec<(String, String)>,
}

impl Serialize for CycNumber {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let coeffs = self
            .coeffs()
            .into_iter()
            .map(|c| (c.numer().to_string(), c.denom().to_string()))
            .collect();
        CycRepr {
            n: self.modulus,
            coeffs,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CycNumber {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = CycRepr::deserialize(deserializer)?;
        if repr.n == 0 {
            return Err(D::Error::custom("modulus must be positive"));
        }
        let coeffs = repr
            .coeffs
            .iter()
            .map(|(n, d)| {
                let n: BigInt = n.parse().map_err(D::Error::custom)?;
                let d: BigInt = d.parse().map_err(D::Error::custom)?;
                if d.is_zero() {
                    return Err(D::Error::custom("zero denominator"));
                }
                Ok(BigRational::new(n, d))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(CycNumber::from_coeffs(repr.n, &coeffs))
    }
}

/// Powers `q^x` of `q = e^{iπ/r}` for rational `x`, realized in a fixed
/// field `Q(ζ_N)` with `2r | N`.
#[derive(Debug, Clone)]
pub struct QPowers {
    r: u32,
    modulus: u32,
}

impl QPowers {
    /// `modulus` must be a multiple of `2r`; an exponent `x` is representable
    /// when `x · modulus / (2r)` is an integer.
    pub fn new(r: u32, modulus: u32) -> Self {
        assert!(r >= 1 && modulus.is_multiple_of(2 * r), "2r must divide the modulus");
        QPowers { r, modulus }
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    fn zeta_exponent(&self, x: &BigRational) -> Result<i64, ScalarError> {
        let scaled = x * BigRational::from_integer(BigInt::from(self.modulus / (2 * self.r)));
        if !scaled.is_integer() {
            return Err(ScalarError::Invalid(format!(
                "q^{x} does not lie in Q(zeta_{})",
                self.modulus
            )));
        }
        let n = BigInt::from(self.modulus);
        let e = scaled.to_integer().mod_floor(&n);
        Ok(e.to_i64().unwrap())
    }

    /// `q^x`.
    pub fn pow(&self, x: &BigRational) -> Result<CycNumber, ScalarError> {
        Ok(CycNumber::root_of_unity(self.modulus, self.zeta_exponent(x)?))
    }

    pub fn pow_int(&self, k: i64) -> CycNumber {
        let step = (self.modulus / (2 * self.r)) as i64;
        CycNumber::root_of_unity(self.modulus, k * step)
    }

    /// The quantum brace `{x} = q^x - q^{-x}`.
    pub fn brace(&self, x: &BigRational) -> Result<CycNumber, ScalarError> {
        Ok(self.pow(x)? - self.pow(&-x)?)
    }

    /// The quantum number `[x] = {x}/{1}`.
    pub fn bracket(&self, x: &BigRational) -> Result<CycNumber, ScalarError> {
        self.brace(x)?.try_div(&self.brace(&BigRational::one())?)
    }
}

/// `q^x - q^{-x}` for `q = e^{iπ/r}`, in `Q(ζ_{2rs})` with `s` the denominator of `x`.
pub fn qbrace(r: u32, x: &BigRational) -> CycNumber {
    let s = x.denom().to_u32().expect("exponent denominator too large");
    QPowers::new(r, 2 * r * s)
        .brace(x)
        .expect("exponent lies in its own field")
}

/// `ζ_N^k` reduced modulo `Φ_N`.
pub fn make_root_of_unity(modulus: u32, k: i64) -> CycNumber {
    CycNumber::root_of_unity(modulus, k)
}

pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        rational(n, d)
    }

    #[test]
    fn cyclotomic_polynomials_small() {
        assert_eq!(*cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(*cyclotomic_polynomial(8), vec![1, 0, 0, 0, 1]);
        assert_eq!(euler_phi(18), 6);
    }

    #[test]
    fn roots_of_unity() {
        assert_eq!(make_root_of_unity(4, 2), CycNumber::from_integer(4, -1));
        assert!(make_root_of_unity(1, 0).is_one());
        // x^4 = x^2 - 1 mod x^4 - x^2 + 1
        let z = make_root_of_unity(12, 4);
        assert_eq!(z, make_root_of_unity(12, 2) - CycNumber::one(12));
    }

    #[test]
    fn inverses() {
        let i = make_root_of_unity(4, 1);
        assert_eq!(i.inv().unwrap(), -&i);
        let z8 = make_root_of_unity(8, 1);
        assert!((&z8 * &make_root_of_unity(8, 7)).is_one());
        // (1 + i)^{-1} = (1 - i)/2
        let one = CycNumber::one(4);
        let x = (&one + &i).inv().unwrap();
        let half = CycNumber::from_rational(4, &q(1, 2));
        assert_eq!(x, &half * &(&one - &i));
        assert_eq!(
            CycNumber::zero(5).inv().unwrap_err(),
            ScalarError::DivisionByZero
        );
    }

    #[test]
    fn modulus_mismatch_is_an_error() {
        let a = CycNumber::one(4);
        let b = CycNumber::one(8);
        assert_eq!(a.try_add(&b).unwrap_err(), ScalarError::ModulusMismatch(4, 8));
        let e = a.embed(8).unwrap();
        assert!(e.try_add(&b).is_ok());
        assert!(a.embed(6).is_err());
    }

    #[test]
    fn conjugation() {
        let z = make_root_of_unity(12, 1);
        assert_eq!(z.conj(), make_root_of_unity(12, 11));
        let i = make_root_of_unity(4, 1);
        assert_eq!(i.conj(), -&i);
    }

    #[test]
    fn qbrace_values() {
        // {1} at r = 2 is i - (-i) = 2i
        let b = qbrace(2, &q(1, 1));
        assert_eq!(b, &CycNumber::from_integer(4, 2) * &make_root_of_unity(4, 1));
        assert!(qbrace(5, &q(0, 1)).is_zero());
        assert_eq!(&b * &b, CycNumber::from_integer(4, -4));
    }

    #[test]
    fn serde_roundtrip() {
        let x = CycNumber::from_coeffs(12, &[q(1, 2), q(-3, 7), q(0, 1), q(5, 1)]);
        let s = serde_json::to_string(&x).unwrap();
        assert!(s.starts_with("{\"N\":12,\"coeffs\":[[\"1\",\"2\"]"));
        let back: CycNumber = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn decimal_display() {
        let z8 = make_root_of_unity(8, 1);
        let s = &z8 + &z8.conj();
        assert_eq!(s.decimal(), "1.414214+0.000000i");
    }
}
