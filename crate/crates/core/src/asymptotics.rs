//! Large-J behaviour of the density at the off-centre energy E = 1/α.
//!
//! With n = αJ levels, ω_J(α) = μ(1/α) is the alternating sum
//!
//!   ω_J(α) = α²J² Σ_{k=0}^{J} (−1)ᵏ (J−k)^{αJ−1} / (k!(αJ−k)!)
//!
//! For α > e every term is already exponentially small. For 2 < α ≤ e the
//! individual terms grow exponentially while the sum shrinks exponentially,
//! so the value survives only in exact arithmetic; the float projection is
//! taken after the exact summation. α is restricted to rationals with
//! αJ ∈ ℤ for the same reason. Logarithms of projected values are computed
//! straight from the big-integer representation, so ratios and decay rates
//! stay meaningful even when the magnitudes leave the f64 range.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Pow, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{big, binomial_row, factorial, ln_abs, ratio, to_f64};

/// Rational α ≥ 2 selecting the energy E = 1/α; by the E ↔ 1−E symmetry
/// this covers every off-centre energy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphaParam {
    value: BigRational,
}

impl AlphaParam {
    pub fn new(value: BigRational) -> Result<Self> {
        if value < ratio(2, 1) {
            return Err(Error::Parameter(format!("alpha must be >= 2, got {value}")));
        }
        Ok(Self { value })
    }

    pub fn value(&self) -> &BigRational {
        &self.value
    }

    /// The energy the series probes: E = 1/α.
    pub fn energy(&self) -> BigRational {
        self.value.recip()
    }

    /// n = αJ, which must come out to an integer level count.
    pub fn level_count(&self, j: u64) -> Result<usize> {
        let num = self.value.numer() * big(j as i64);
        let (n, rem) = num_integer::Integer::div_rem(&num, self.value.denom());
        if !rem.is_zero() {
            return Err(Error::Parameter(format!(
                "alpha*J = {}*{} is not an integer",
                self.value, j
            )));
        }
        n.to_usize()
            .ok_or_else(|| Error::Parameter(format!("level count alpha*J = {n} too large")))
    }
}

/// One evaluated series member: the exact value, its float projection and
/// the magnitude of the largest single term (the cancellation diagnostic).
#[derive(Debug, Clone)]
pub struct SeriesRow {
    pub j: u64,
    pub omega_exact: BigRational,
    pub omega_float: f64,
    pub max_term_float: f64,
}

/// ω_J(α) over a strictly increasing J grid.
#[derive(Debug, Clone)]
pub struct SeriesTable {
    pub alpha: AlphaParam,
    pub rows: Vec<SeriesRow>,
}

/// Signed integer sum and largest |term| of Σ (−1)ᵏ C(n,k) (J−k)ⁿ⁻¹,
/// both over the implicit denominator n!.
fn omega_terms(n: usize, j: u64) -> (BigInt, BigInt) {
    let binom = binomial_row(n);
    let mut sum = BigInt::zero();
    let mut max_term = BigInt::zero();
    for k in 0..=j as usize {
        let base = big((j as usize - k) as i64);
        let term = &binom[k] * Pow::pow(&base, (n - 1) as u32);
        if term > max_term {
            max_term = term.clone();
        }
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    (sum, max_term)
}

/// Exact ω_J(α). Equals `mu_linear(αJ, 1/α)` term for term.
pub fn omega_j(alpha: &AlphaParam, j: u64) -> Result<BigRational> {
    if j == 0 {
        return Err(Error::Parameter("J must be >= 1".into()));
    }
    let n = alpha.level_count(j)?;
    let (sum, _) = omega_terms(n, j);
    let n_big = big(n as i64);
    Ok(BigRational::new(&n_big * &n_big * sum, factorial(n)))
}

/// Evaluate the series for every J in the grid (sorted, deduplicated),
/// with float projections and max-term diagnostics per row.
pub fn build_series(alpha: &AlphaParam, j_grid: &[u64]) -> Result<SeriesTable> {
    let mut js: Vec<u64> = j_grid.to_vec();
    js.sort_unstable();
    js.dedup();
    let mut rows = Vec::with_capacity(js.len());
    for &j in &js {
        if j == 0 {
            return Err(Error::Parameter("J must be >= 1".into()));
        }
        let n = alpha.level_count(j)?;
        let (sum, max_term) = omega_terms(n, j);
        let n_big = big(n as i64);
        let n_fact = factorial(n);
        let omega_exact = BigRational::new(&n_big * &n_big * sum, n_fact.clone());
        let max_rational = BigRational::new(&n_big * &n_big * max_term, n_fact);
        rows.push(SeriesRow {
            j,
            omega_float: to_f64(&omega_exact),
            max_term_float: to_f64(&max_rational),
            omega_exact,
        });
    }
    Ok(SeriesTable {
        alpha: alpha.clone(),
        rows,
    })
}

/// Estimate the exponential decay rate lim −ln|ω_J|/J from a series table.
///
/// Successive log-ratios r = ln(|ω_J|/|ω_J'|)/(J'−J) carry an O(1/J) bias
/// from the algebraic prefactor; indexing each ratio at J+J' (twice the
/// midpoint, which leaves extrapolation to 1/J → 0 unchanged) and applying
/// one Richardson step removes it. Logarithms come from the exact values,
/// so the estimate survives ω far outside the f64 range.
pub fn measure_decay_rate(table: &SeriesTable) -> Result<f64> {
    if table.alpha.value() <= &ratio(2, 1) {
        return Err(Error::Parameter(
            "decay rate is defined for alpha > 2 (at alpha = 2 the series grows)".into(),
        ));
    }
    if table.rows.len() < 3 {
        return Err(Error::InsufficientData(format!(
            "decay-rate estimate needs >= 3 rows, got {}",
            table.rows.len()
        )));
    }
    let mut lns = Vec::with_capacity(table.rows.len());
    for row in &table.rows {
        let ln = ln_abs(&row.omega_exact).ok_or_else(|| {
            Error::DegenerateData(format!("omega at J={} vanishes exactly", row.j))
        })?;
        lns.push((row.j, ln));
    }
    let mut rates = Vec::with_capacity(lns.len() - 1);
    for pair in lns.windows(2) {
        let (j0, l0) = pair[0];
        let (j1, l1) = pair[1];
        rates.push((j0 + j1, (l0 - l1) / (j1 - j0) as f64));
    }
    richardson(&rates, 1)
}

/// Richardson extrapolation of a sequence a(J) → limit as J → ∞, assuming
/// an asymptotic tail in powers of 1/J.
///
/// Iterated polynomial (Neville) extrapolation in x = 1/J evaluated at
/// x = 0; the returned value is the highest-order entry built from the
/// largest indices. A sequence that is already constant is returned
/// unchanged, bit for bit.
pub fn richardson(sequence: &[(u64, f64)], order: usize) -> Result<f64> {
    if sequence.len() <= order {
        return Err(Error::InsufficientData(format!(
            "order-{order} extrapolation needs > {order} points, got {}",
            sequence.len()
        )));
    }
    let mut x = Vec::with_capacity(sequence.len());
    let mut t = Vec::with_capacity(sequence.len());
    for (i, &(j, v)) in sequence.iter().enumerate() {
        if j == 0 {
            return Err(Error::Parameter("sequence indices must be positive".into()));
        }
        if i > 0 && j <= sequence[i - 1].0 {
            return Err(Error::Parameter(
                "sequence indices must be strictly increasing".into(),
            ));
        }
        x.push(1.0 / j as f64);
        t.push(v);
    }
    let m = t.len();
    for k in 1..=order {
        for i in (k..m).rev() {
            if t[i] == t[i - 1] {
                continue; // already converged at this level
            }
            t[i] = (x[i - k] * t[i] - x[i] * t[i - 1]) / (x[i - k] - x[i]);
        }
    }
    Ok(t[m - 1])
}

/// Per-row ratio max|term| / |ω_J|: how deep the global cancellation runs,
/// i.e. how many digits exact arithmetic had to carry. A vanishing ω is
/// reported as an infinite ratio.
pub fn cancellation_profile(table: &SeriesTable) -> Vec<(u64, f64)> {
    table
        .rows
        .iter()
        .map(|row| {
            let ratio = if row.omega_float == 0.0 {
                f64::INFINITY
            } else {
                row.max_term_float / row.omega_float.abs()
            };
            (row.j, ratio)
        })
        .collect()
}
