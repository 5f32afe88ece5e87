//! Exact density of states for nondegenerate spectra.
//!
//! For an (n+1)-level system in which every unit-norm pure state with energy
//! expectation ⟨H⟩ = E is equally probable, the density of ⟨H⟩ has a closed
//! form built from n-fold integrals of the Dirac δ:
//!
//!   μ(E) = (−1)ⁿ n! Σₖ δ^(−n)(Eₖ − E) Πₗ≠ₖ (Eₗ − Eₖ)⁻¹
//!
//! The π factors of the underlying phase-space volume cancel against the
//! unit-sphere normalization, so everything here stays rational and every
//! identity (normalization, symmetry, vanishing of the full alternating sum)
//! can be asserted with zero tolerance.
//!
//! For the rescaled linear spectrum {0, 1/n, …, 1} the same density is
//!
//!   μ(E) = (−1)ⁿ⁺¹ n² Σ_{k=0}^{⌊nE⌋} (−1)ᵏ (k − nE)ⁿ⁻¹ / (k!(n−k)!)
//!
//! a degree-(n−1) polynomial on each interval [j/n, (j+1)/n].
//!
//! Knot conventions: δ^(−n)(x) uses the right-closed branch (x ≥ 0, with
//! 0⁰ = 1), and the piecewise form clamps the interval index at E = 1 so the
//! last piece is right-closed. With these choices μ₁ ≡ 1 on all of [0, 1]
//! and the E ↔ 1−E symmetry is exact for every n. The only residual clash
//! is μ for n = 1 at the bottom edge of a general spectrum, where the full
//! alternating sum telescopes to 0 rather than 1.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{big, binomial_row, factorial, lcm_upto};

/// An ordered list of distinct rational energy eigenvalues E₀ < … < Eₙ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spectrum {
    levels: Vec<BigRational>,
}

impl Spectrum {
    /// Build a spectrum from at least two strictly increasing levels.
    pub fn new(levels: Vec<BigRational>) -> Result<Self> {
        if levels.len() < 2 {
            return Err(Error::Parameter(format!(
                "spectrum needs at least two levels, got {}",
                levels.len()
            )));
        }
        for (i, pair) in levels.windows(2).enumerate() {
            if pair[0] >= pair[1] {
                return Err(Error::DegenerateSpectrum(format!(
                    "levels must be strictly increasing, violated at index {i} ({} >= {})",
                    pair[0], pair[1]
                )));
            }
        }
        Ok(Self { levels })
    }

    /// The rescaled linear spectrum {0, 1/n, …, 1}.
    pub fn linear(n: usize) -> Self {
        assert!(n >= 1, "linear spectrum needs n >= 1");
        let levels = (0..=n)
            .map(|k| BigRational::new(big(k as i64), big(n as i64)))
            .collect();
        Self { levels }
    }

    /// Number of levels minus one.
    pub fn n(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn levels(&self) -> &[BigRational] {
        &self.levels
    }

    pub fn min(&self) -> &BigRational {
        &self.levels[0]
    }

    pub fn max(&self) -> &BigRational {
        self.levels.last().expect("nonempty")
    }
}

/// n-fold integral of the Dirac δ: zero for x < 0, xⁿ⁻¹/(n−1)! for x ≥ 0.
///
/// The x ≥ 0 branch is right-closed; at x = 0 with n = 1 the value is
/// 0⁰/0! = 1.
pub fn delta_int(x: &BigRational, n: usize) -> BigRational {
    assert!(n >= 1, "delta_int needs n >= 1");
    if x.is_negative() {
        return BigRational::zero();
    }
    let e = (n - 1) as u32;
    let num = Pow::pow(x.numer(), e);
    let den = Pow::pow(x.denom(), e) * factorial(n - 1);
    BigRational::new(num, den)
}

/// Exact density of states of a general nondegenerate spectrum at energy E.
///
/// Zero outside [E₀, Eₙ]; inside, the δ-integral sum above. All arithmetic
/// is rational, so values at the eigenvalues themselves follow the
/// right-closed convention of [`delta_int`].
pub fn mu_general(spectrum: &Spectrum, e: &BigRational) -> BigRational {
    let n = spectrum.n();
    if e < spectrum.min() || e > spectrum.max() {
        return BigRational::zero();
    }
    let mut sum = BigRational::zero();
    for (k, ek) in spectrum.levels().iter().enumerate() {
        let x = ek - e;
        if x.is_negative() {
            continue;
        }
        let mut prod = BigRational::one();
        for (l, el) in spectrum.levels().iter().enumerate() {
            if l != k {
                prod *= el - ek;
            }
        }
        sum += delta_int(&x, n) / prod;
    }
    let signed = if n % 2 == 1 { -sum } else { sum };
    signed * BigRational::from(factorial(n))
}

/// Exact density of states of the rescaled linear spectrum at E ∈ [0, 1].
///
/// Evaluates the alternating sum over k = 0..=⌊nE⌋ with the interval index
/// clamped to n−1, over the common denominator qⁿ⁻¹·n! for E = p/q.
pub fn mu_linear(n: usize, e: &BigRational) -> Result<BigRational> {
    assert!(n >= 1, "mu_linear needs n >= 1");
    if e.is_negative() || e > &BigRational::one() {
        return Err(Error::Domain(format!(
            "mu_linear wants E in [0, 1], got {e}"
        )));
    }
    let p = e.numer();
    let q = e.denom();
    let n_big = big(n as i64);
    let j = num_integer::Integer::div_floor(&(&n_big * p), q)
        .to_usize()
        .map_or(n - 1, |floor| floor.min(n - 1));
    let binom = binomial_row(n);
    let np = &n_big * p;
    let mut sum = BigInt::zero();
    for (k, c) in binom.iter().enumerate().take(j + 1) {
        let base = big(k as i64) * q - &np;
        let term = c * Pow::pow(&base, (n - 1) as u32);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    let num = &n_big * &n_big * sum;
    let den = Pow::pow(q, (n - 1) as u32) * factorial(n);
    let value = BigRational::new(num, den);
    Ok(if n % 2 == 0 { -value } else { value })
}

/// The density of the linear spectrum as exact per-interval polynomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiecewisePolynomial {
    knots: Vec<BigRational>,
    pieces: Vec<Vec<BigRational>>,
}

impl PiecewisePolynomial {
    /// Breakpoints 0, 1/n, …, 1.
    pub fn knots(&self) -> &[BigRational] {
        &self.knots
    }

    /// Ascending coefficients of the polynomial on [j/n, (j+1)/n].
    pub fn pieces(&self) -> &[Vec<BigRational>] {
        &self.pieces
    }

    pub fn piece_count(&self) -> usize {
        self.pieces.len()
    }

    /// Index of the piece containing E, with the last piece right-closed.
    fn piece_index(&self, e: &BigRational) -> usize {
        let n = self.pieces.len();
        let scaled = e * BigRational::from(big(n as i64));
        let idx = num_integer::Integer::div_floor(scaled.numer(), scaled.denom())
            .to_usize()
            .unwrap_or(n);
        idx.min(n - 1)
    }

    /// Evaluate the piecewise polynomial at E ∈ [0, 1] (Horner).
    pub fn evaluate(&self, e: &BigRational) -> Result<BigRational> {
        if e.is_negative() || e > &BigRational::one() {
            return Err(Error::Domain(format!(
                "evaluation wants E in [0, 1], got {e}"
            )));
        }
        let coeffs = &self.pieces[self.piece_index(e)];
        let mut acc = BigRational::zero();
        for c in coeffs.iter().rev() {
            acc = acc * e + c;
        }
        Ok(acc)
    }

    /// Exact antiderivative of piece `j` evaluated at E.
    fn antiderivative_at(&self, j: usize, e: &BigRational) -> BigRational {
        let coeffs = &self.pieces[j];
        let mut acc = BigRational::zero();
        for (m, c) in coeffs.iter().enumerate().rev() {
            acc = acc * e + c / BigRational::from(big((m + 1) as i64));
        }
        acc * e
    }

    /// Exact integral over [0, 1]: the sum of per-piece antiderivative
    /// differences at the knots.
    pub fn integral(&self) -> BigRational {
        let mut total = BigRational::zero();
        for j in 0..self.pieces.len() {
            total += self.antiderivative_at(j, &self.knots[j + 1])
                - self.antiderivative_at(j, &self.knots[j]);
        }
        total
    }

    /// Exact integral over [a, b] ⊆ [0, 1], splitting at interior knots.
    pub fn integrate_range(&self, a: &BigRational, b: &BigRational) -> Result<BigRational> {
        if a.is_negative() || b > &BigRational::one() || a > b {
            return Err(Error::Parameter(format!(
                "integration range [{a}, {b}] must satisfy 0 <= a <= b <= 1"
            )));
        }
        let mut total = BigRational::zero();
        for j in 0..self.pieces.len() {
            let lo = if a > &self.knots[j] {
                a
            } else {
                &self.knots[j]
            };
            let hi = if b < &self.knots[j + 1] {
                b
            } else {
                &self.knots[j + 1]
            };
            if lo < hi {
                total += self.antiderivative_at(j, hi) - self.antiderivative_at(j, lo);
            }
        }
        Ok(total)
    }
}

/// Prefix sums Sⱼ[t] = Σ_{k=0}^{j} (−1)ᵏ C(n,k) kᵗ drive both the piecewise
/// coefficients and the exact integral; this advances S by the k = j term.
fn advance_prefix(s: &mut [BigInt], binom_n: &BigInt, j: usize) {
    let j_big = big(j as i64);
    let mut p = BigInt::one();
    for slot in s.iter_mut() {
        let term = binom_n * &p;
        if j % 2 == 0 {
            *slot += term;
        } else {
            *slot -= term;
        }
        p *= &j_big;
    }
}

/// Exact coefficients of μ on every interval [j/n, (j+1)/n].
///
/// Expanding (k − nE)ⁿ⁻¹ binomially, the coefficient of Eᵐ on piece j is
/// (−1)ⁿ⁺¹⁺ᵐ nᵐ⁺² C(n−1,m) Sⱼ[n−1−m] / n!.
pub fn piecewise_mu(n: usize) -> PiecewisePolynomial {
    assert!(n >= 1, "piecewise_mu needs n >= 1");
    let binom_n = binomial_row(n);
    let binom_nm1 = binomial_row(n - 1);
    let n_fact = factorial(n);
    let n_big = big(n as i64);

    let mut s = vec![BigInt::zero(); n];
    let mut pieces = Vec::with_capacity(n);
    for j in 0..n {
        advance_prefix(&mut s, &binom_n[j], j);
        let mut coeffs = Vec::with_capacity(n);
        let mut npow = &n_big * &n_big; // n^(m+2)
        for m in 0..n {
            let mut num = &npow * &binom_nm1[m] * &s[n - 1 - m];
            if (n + 1 + m) % 2 == 1 {
                num = -num;
            }
            coeffs.push(BigRational::new(num, n_fact.clone()));
            npow *= &n_big;
        }
        pieces.push(coeffs);
    }
    let knots = (0..=n)
        .map(|j| BigRational::new(big(j as i64), n_big.clone()))
        .collect();
    PiecewisePolynomial { knots, pieces }
}

/// Exact ∫₀¹ μ(E) dE for the linear spectrum, by per-piece antiderivatives.
///
/// Same prefix sums as [`piecewise_mu`], but the per-piece antiderivative
/// differences are accumulated as one integer numerator over the common
/// denominator n!·lcm(1..n)·n, which keeps the n ≤ few-hundred verification
/// sweep fast. The result must be exactly 1.
pub fn integrate_mu(n: usize) -> BigRational {
    assert!(n >= 1, "integrate_mu needs n >= 1");
    let binom_n = binomial_row(n);
    let binom_nm1 = binomial_row(n - 1);
    let n_big = big(n as i64);

    // acc[m] = Σ_j S_j[n-1-m] * ((j+1)^(m+1) - j^(m+1))
    let mut s = vec![BigInt::zero(); n];
    let mut acc = vec![BigInt::zero(); n];
    for j in 0..n {
        advance_prefix(&mut s, &binom_n[j], j);
        let a = big((j + 1) as i64);
        let b = big(j as i64);
        let mut apow = a.clone();
        let mut bpow = b.clone();
        for m in 0..n {
            acc[m] += &s[n - 1 - m] * (&apow - &bpow);
            apow *= &a;
            bpow *= &b;
        }
    }

    // ∫ = n · Σ_m (−1)^(n+1+m) C(n−1,m) (L/(m+1)) acc[m] / (n!·L)
    let l = lcm_upto(n);
    let mut num = BigInt::zero();
    for m in 0..n {
        let weight = &l / big((m + 1) as i64);
        let term = &binom_nm1[m] * weight * &acc[m];
        if (n + 1 + m) % 2 == 1 {
            num -= term;
        } else {
            num += term;
        }
    }
    BigRational::new(n_big * num, factorial(n) * l)
}

/// Both sides of the alternating binomial identity
/// Σ_{k=0}^{n} C(n,k)(−1)ᵏ kⁿ = (−1)ⁿ n!  (the nth discrete difference of kⁿ).
pub fn discrete_difference_identity(n: usize) -> (BigInt, BigInt) {
    assert!(n >= 1, "identity needs n >= 1");
    let binom = binomial_row(n);
    let mut lhs = BigInt::zero();
    for (k, c) in binom.iter().enumerate() {
        let term = c * Pow::pow(&big(k as i64), n as u32);
        if k % 2 == 0 {
            lhs += term;
        } else {
            lhs -= term;
        }
    }
    let rhs = if n % 2 == 1 {
        -factorial(n)
    } else {
        factorial(n)
    };
    (lhs, rhs)
}
