//! Test-side oracles, written without reusing the library's algorithms.

#![allow(dead_code)]

use std::collections::BTreeMap;

use hopfg::linalg::Matrix;
use hopfg::scalar::CycNumber;
use num_rational::Rational64;

pub fn rat(n: i64, d: i64) -> Rational64 {
    Rational64::new(n, d)
}

/// Scalars of `Q(ζ_N)`, `N = 2rs`, with `q = ζ_N^s`.
#[derive(Clone, Copy)]
pub struct Field {
    pub r: u32,
    pub s: u32,
}

impl Field {
    pub fn modulus(&self) -> u32 {
        2 * self.r * self.s
    }

    pub fn q(&self, x: Rational64) -> CycNumber {
        let e = x * Rational64::from_integer(self.s as i64);
        assert!(e.is_integer(), "q^{x} is outside the field");
        CycNumber::root_of_unity(self.modulus(), e.to_integer())
    }

    pub fn brace(&self, x: Rational64) -> CycNumber {
        &self.q(x) - &self.q(-x)
    }

    pub fn int(&self, n: i64) -> CycNumber {
        CycNumber::from_integer(self.modulus(), n)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
enum Letter {
    E,
    F,
    K,
    Ki,
}

fn rank(l: Letter) -> u8 {
    match l {
        Letter::E => 0,
        Letter::F => 1,
        Letter::K | Letter::Ki => 2,
    }
}

/// Multiplies two PBW monomials `E^m F^n K^l` of the grade-`alpha` piece by
/// rewriting words letter by letter, then reading off coefficients in the
/// basis indexed `m r² + n r + l`.
pub fn word_product(field: Field, alpha: Rational64, x: (u32, u32, u32), y: (u32, u32, u32)) -> Vec<CycNumber> {
    let r = field.r;
    let mut word = Vec::new();
    for (m, n, l) in [x, y] {
        word.extend(std::iter::repeat_n(Letter::E, m as usize));
        word.extend(std::iter::repeat_n(Letter::F, n as usize));
        word.extend(std::iter::repeat_n(Letter::K, l as usize));
    }
    let inv_brace1 = field.brace(rat(1, 1)).inv().unwrap();
    let mut pending: Vec<(Vec<Letter>, CycNumber)> = vec![(word, field.int(1))];
    let mut normal: BTreeMap<(u32, u32, i64), CycNumber> = BTreeMap::new();
    while let Some((w, c)) = pending.pop() {
        let bad = (0..w.len().saturating_sub(1)).find(|&i| {
            rank(w[i]) > rank(w[i + 1]) || (rank(w[i]) == 2 && rank(w[i + 1]) == 2 && w[i] != w[i + 1])
        });
        let Some(i) = bad else {
            let m = w.iter().filter(|&&l| l == Letter::E).count() as u32;
            let n = w.iter().filter(|&&l| l == Letter::F).count() as u32;
            let k = w.iter().map(|&l| match l {
                Letter::K => 1,
                Letter::Ki => -1,
                _ => 0,
            });
            let slot = normal.entry((m, n, k.sum())).or_insert_with(|| field.int(0));
            *slot += &c;
            continue;
        };
        let (head, tail) = (&w[..i], &w[i + 2..]);
        let splice = |mid: &[Letter]| -> Vec<Letter> { head.iter().chain(mid).chain(tail).copied().collect() };
        use Letter::*;
        match (w[i], w[i + 1]) {
            (F, E) => {
                pending.push((splice(&[E, F]), c.clone()));
                let t = &c * &inv_brace1;
                pending.push((splice(&[K]), -&t));
                pending.push((splice(&[Ki]), t));
            }
            (K, E) => pending.push((splice(&[E, K]), &c * &field.q(rat(2, 1)))),
            (Ki, E) => pending.push((splice(&[E, Ki]), &c * &field.q(rat(-2, 1)))),
            (K, F) => pending.push((splice(&[F, K]), &c * &field.q(rat(-2, 1)))),
            (Ki, F) => pending.push((splice(&[F, Ki]), &c * &field.q(rat(2, 1)))),
            (K, Ki) | (Ki, K) => pending.push((splice(&[]), c)),
            _ => unreachable!(),
        }
    }
    let kr = field.q(alpha * Rational64::from_integer(r as i64));
    let mut out = vec![field.int(0); (r * r * r) as usize];
    for ((m, n, l), c) in normal {
        if m >= r || n >= r || c.is_zero() {
            continue;
        }
        let (wraps, rem) = (l.div_euclid(r as i64), l.rem_euclid(r as i64) as u32);
        let idx = (m * r * r + n * r + rem) as usize;
        out[idx] += &(&c * &kr.pow(wraps).unwrap());
    }
    out
}

pub fn exponents(r: u32, i: usize) -> (u32, u32, u32) {
    let r = r as usize;
    ((i / (r * r)) as u32, ((i / r) % r) as u32, (i % r) as u32)
}

pub fn dense(v: &[(usize, CycNumber)], len: usize, modulus: u32) -> Vec<CycNumber> {
    let mut out = vec![CycNumber::zero(modulus); len];
    for (i, x) in v {
        out[*i] += x;
    }
    out
}

/// Floating-point evaluation of `q^x` with `q = e^{iπ/r}`.
#[derive(Clone, Copy, Debug)]
pub struct C(pub f64, pub f64);

impl C {
    pub fn q(r: u32, x: f64) -> C {
        let t = std::f64::consts::PI * x / r as f64;
        C(t.cos(), t.sin())
    }
    pub fn add(self, o: C) -> C {
        C(self.0 + o.0, self.1 + o.1)
    }
    pub fn sub(self, o: C) -> C {
        C(self.0 - o.0, self.1 - o.1)
    }
    pub fn mul(self, o: C) -> C {
        C(self.0 * o.0 - self.1 * o.1, self.0 * o.1 + self.1 * o.0)
    }
    pub fn div(self, o: C) -> C {
        let n = o.0 * o.0 + o.1 * o.1;
        C((self.0 * o.0 + self.1 * o.1) / n, (self.1 * o.0 - self.0 * o.1) / n)
    }
    pub fn scale(self, k: f64) -> C {
        C(self.0 * k, self.1 * k)
    }
    pub fn close(self, o: (f64, f64), tol: f64) -> bool {
        (self.0 - o.0).abs() < tol && (self.1 - o.1).abs() < tol
    }
}

pub fn brace_f(r: u32, x: f64) -> C {
    C::q(r, x).sub(C::q(r, -x))
}

/// `d_0 r{α}/{rα}` with `d_0 = {1}^{2r-2}/r³`.
pub fn modified_dimension_f(r: u32, alpha: f64) -> C {
    let mut d0 = C(1.0, 0.0);
    for _ in 0..(2 * r - 2) {
        d0 = d0.mul(brace_f(r, 1.0));
    }
    d0 = d0.scale(1.0 / (r as f64).powi(3));
    d0.mul(brace_f(r, alpha).scale(r as f64)).div(brace_f(r, r as f64 * alpha))
}

/// Casimir eigenvalue on the highest weight module of highest weight `β + r - 1`.
pub fn casimir_eigenvalue_f(r: u32, beta: f64) -> C {
    let b1 = brace_f(r, 1.0);
    C::q(r, beta + r as f64).add(C::q(r, -beta - r as f64)).div(b1.mul(b1))
}

/// The integral of the Lagrange projector at `β`, given that the integral kills
/// `Ω^k` for `k < r-1` and is 1 on `Ω^{r-1}`: the reciprocal of `∏_{k=1}^{r-1}(w_β - w_{β+2k})`.
/// The other simple summands of the same grade have weights `β + 2k` modulo `2r`.
pub fn integral_of_projector_f(r: u32, beta: f64) -> C {
    let w = casimir_eigenvalue_f(r, beta);
    let mut den = C(1.0, 0.0);
    for k in 1..r {
        den = den.mul(w.sub(casimir_eigenvalue_f(r, beta + 2.0 * k as f64)));
    }
    C(1.0, 0.0).div(den)
}

/// `(Id_V ⊗ ev)(f ⊗ Id_{W*})(Id_U ⊗ coev)` assembled from Kronecker products,
/// with `coev = Σ w_j ⊗ w^j` and `ev(w ⊗ φ) = φ(g w)`.
pub fn partial_trace_oracle(f: &Matrix, du: usize, dv: usize, g: &Matrix) -> Matrix {
    let n = f.modulus();
    let dw = g.rows();
    let mut coev = Matrix::zeros(dw * dw, 1, n);
    for j in 0..dw {
        coev.set(j * dw + j, 0, CycNumber::one(n));
    }
    let mut ev = Matrix::zeros(1, dw * dw, n);
    for k in 0..dw {
        for j in 0..dw {
            ev.set(0, k * dw + j, g.get(j, k));
        }
    }
    let id = |d: usize| Matrix::identity(d, n);
    id(dv)
        .kron(&ev)
        .mul(f.kron(id(dw)))
        .mul(id(du).kron(&coev))
}

/// Proptest configuration with a fixed seed and no failure persistence files.
pub fn fixed_config(cases: u32, seed: u64) -> proptest::test_runner::Config {
    proptest::test_runner::Config {
        cases,
        rng_seed: proptest::test_runner::RngSeed::Fixed(seed),
        failure_persistence: None,
        ..Default::default()
    }
}
