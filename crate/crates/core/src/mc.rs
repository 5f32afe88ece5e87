//! Monte Carlo validation of the exact density.
//!
//! Pure states are drawn uniformly on the unit sphere of the
//! (n+1)-dimensional Hilbert space by normalizing 2(n+1) independent
//! standard Gaussians (real and imaginary parts of the amplitudes). The
//! squared moduli then follow the flat simplex law, so ⟨H⟩ = Σ pₖ Eₖ is a
//! direct sample from the density that `spectral` computes exactly.
//!
//! Reproducibility: sample i draws from its own generator seeded as
//! `mix64(seed ^ mix64((i+1)·φ))` with φ = 0x9E3779B97F4A7C15 and `mix64`
//! the SplitMix64 finalizer. Streams depend only on (seed, i), never on
//! sampling order, so any parallel split reproduces the serial histogram.

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::exact::{big, to_f64};
use crate::spectral::{piecewise_mu, Spectrum};

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;
const INV_2_53: f64 = 1.0 / (1u64 << 53) as f64;

fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Small deterministic PRNG (SplitMix64), enough state for the Gaussian
/// draws of one sample and cheap enough to reseed per sample.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN);
        mix64(self.state)
    }

    /// Uniform in [0, 1).
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * INV_2_53
    }

    /// Two independent standard normals (Box–Muller; the radial uniform is
    /// shifted into (0, 1] so the logarithm is finite).
    pub fn normal_pair(&mut self) -> (f64, f64) {
        let u1 = ((self.next_u64() >> 11) + 1) as f64 * INV_2_53;
        let u2 = (self.next_u64() >> 11) as f64 * INV_2_53;
        let r = (-2.0 * u1.ln()).sqrt();
        let (s, c) = (std::f64::consts::TAU * u2).sin_cos();
        (r * c, r * s)
    }
}

/// The per-sample generator of the counter-based scheme above.
pub fn substream(seed: u64, index: u64) -> SplitMix64 {
    SplitMix64::new(mix64(
        seed ^ mix64(index.wrapping_add(1).wrapping_mul(GOLDEN)),
    ))
}

/// Squared-modulus weights p₀…pₙ of one uniformly drawn pure state.
#[derive(Debug, Clone)]
pub struct PureStateSample {
    pub weights: Vec<f64>,
}

impl PureStateSample {
    /// Draw the flat-simplex weights for `levels` = n+1 amplitudes.
    pub fn draw(levels: usize, rng: &mut SplitMix64) -> Self {
        let mut weights = Vec::with_capacity(levels);
        let mut total = 0.0;
        for _ in 0..levels {
            let (x, y) = rng.normal_pair();
            let w = x * x + y * y;
            weights.push(w);
            total += w;
        }
        for w in &mut weights {
            *w /= total;
        }
        Self { weights }
    }
}

/// One draw of ⟨H⟩ for a spectrum rescaled into [0, 1].
pub fn sample_energy(spectrum: &Spectrum, rng: &mut SplitMix64) -> Result<f64> {
    let zero = BigRational::from(big(0));
    let one = BigRational::from(big(1));
    if spectrum.min() < &zero || spectrum.max() > &one {
        return Err(Error::Parameter(format!(
            "sampling wants a spectrum rescaled into [0, 1], got [{}, {}]",
            spectrum.min(),
            spectrum.max()
        )));
    }
    let levels: Vec<f64> = spectrum.levels().iter().map(to_f64).collect();
    let state = PureStateSample::draw(levels.len(), rng);
    Ok(state.weights.iter().zip(&levels).map(|(w, e)| w * e).sum())
}

/// Histogram of ⟨H⟩ draws over a uniform grid on [0, 1].
#[derive(Debug, Clone)]
pub struct EmpiricalDensity {
    pub n: usize,
    pub bin_edges: Vec<f64>,
    pub counts: Vec<u64>,
    /// counts / (N · bin width); integrates to 1 across the bins.
    pub normalized_heights: Vec<f64>,
    pub sample_count: u64,
    pub seed: u64,
}

/// Draw `samples` energies from the (n+1)-level linear spectrum and bin
/// them over [0, 1]. Deterministic per (n, samples, bins, seed).
pub fn build_histogram(n: usize, samples: u64, bins: usize, seed: u64) -> Result<EmpiricalDensity> {
    if n < 1 || bins < 1 {
        return Err(Error::Parameter("need n >= 1 and bins >= 1".into()));
    }
    if samples < bins as u64 * 100 {
        return Err(Error::Parameter(format!(
            "undersampled: {samples} draws for {bins} bins (want at least {})",
            bins as u64 * 100
        )));
    }
    let levels: Vec<f64> = (0..=n).map(|k| k as f64 / n as f64).collect();
    let mut counts = vec![0u64; bins];
    let mut weights = vec![0.0f64; n + 1];
    for i in 0..samples {
        let mut rng = substream(seed, i);
        let mut total = 0.0;
        for w in weights.iter_mut() {
            let (x, y) = rng.normal_pair();
            *w = x * x + y * y;
            total += *w;
        }
        let energy: f64 = weights.iter().zip(&levels).map(|(w, e)| w * e).sum::<f64>() / total;
        let idx = ((energy * bins as f64) as usize).min(bins - 1);
        counts[idx] += 1;
    }
    let normalized_heights = counts
        .iter()
        .map(|&c| c as f64 * bins as f64 / samples as f64)
        .collect();
    let bin_edges = (0..=bins).map(|i| i as f64 / bins as f64).collect();
    Ok(EmpiricalDensity {
        n,
        bin_edges,
        counts,
        normalized_heights,
        sample_count: samples,
        seed,
    })
}

/// Exact probability mass of each histogram bin under μ_n, from the
/// piecewise antiderivatives (bins may straddle knots). Sums to 1 exactly.
pub fn exact_bin_masses(n: usize, bins: usize) -> Vec<BigRational> {
    let pw = piecewise_mu(n);
    let bins_big = big(bins as i64);
    (0..bins)
        .map(|i| {
            let lo = BigRational::new(big(i as i64), bins_big.clone());
            let hi = BigRational::new(big((i + 1) as i64), bins_big.clone());
            pw.integrate_range(&lo, &hi)
                .expect("bins lie inside [0, 1]")
        })
        .collect()
}

/// Histogram vs exact density: sup-norm on bin-averaged heights and a χ²
/// statistic with bins−1 degrees of freedom.
#[derive(Debug, Clone)]
pub struct DensityComparison {
    pub sup_deviation: f64,
    pub chi_square: f64,
    pub degrees_of_freedom: usize,
    pub tolerance: f64,
    pub passed: bool,
}

/// Compare an empirical density against exact bin averages of μ_n.
/// The exact side integrates μ over each bin (no midpoint bias).
pub fn compare_density(
    emp: &EmpiricalDensity,
    n: usize,
    tolerance: f64,
) -> Result<DensityComparison> {
    if emp.n != n {
        return Err(Error::Parameter(format!(
            "histogram was built for n = {}, compared against n = {n}",
            emp.n
        )));
    }
    let bins = emp.counts.len();
    let masses = exact_bin_masses(n, bins);
    let samples = emp.sample_count as f64;
    let mut sup = 0.0f64;
    let mut chi_square = 0.0f64;
    for (i, mass) in masses.iter().enumerate() {
        let exact_height = to_f64(&(mass * BigRational::from(big(bins as i64))));
        sup = sup.max((emp.normalized_heights[i] - exact_height).abs());
        let expected = samples * to_f64(mass);
        let observed = emp.counts[i] as f64;
        if expected > 0.0 {
            let d = observed - expected;
            chi_square += d * d / expected;
        } else if observed > 0.0 {
            chi_square = f64::INFINITY;
        }
    }
    Ok(DensityComparison {
        sup_deviation: sup,
        chi_square,
        degrees_of_freedom: bins - 1,
        tolerance,
        passed: sup <= tolerance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, Zero};

    #[test]
    fn substreams_ignore_call_order() {
        let a: Vec<u64> = (0..4).map(|i| substream(9, i).next_u64()).collect();
        let b: Vec<u64> = (0..4).rev().map(|i| substream(9, i).next_u64()).collect();
        assert_eq!(a[0], b[3]);
        assert_eq!(a[3], b[0]);
        assert_ne!(a[0], a[1]);
    }

    #[test]
    fn weights_form_a_distribution() {
        let mut rng = SplitMix64::new(7);
        for _ in 0..100 {
            let s = PureStateSample::draw(5, &mut rng);
            assert!(s.weights.iter().all(|&w| w >= 0.0));
            let total: f64 = s.weights.iter().sum();
            assert!((total - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn draws_stay_in_hull() {
        let spec = Spectrum::linear(3);
        let mut rng = SplitMix64::new(11);
        for _ in 0..1000 {
            let e = sample_energy(&spec, &mut rng).unwrap();
            assert!((0.0..=1.0).contains(&e), "draw {e} escaped [0, 1]");
        }
    }

    #[test]
    fn sample_energy_wants_rescaled_spectrum() {
        let spec =
            Spectrum::new(vec![BigRational::from(big(0)), BigRational::from(big(3))]).unwrap();
        let mut rng = SplitMix64::new(1);
        assert!(sample_energy(&spec, &mut rng).is_err());
    }

    #[test]
    fn histogram_is_deterministic() {
        let a = build_histogram(2, 20_000, 50, 42).unwrap();
        let b = build_histogram(2, 20_000, 50, 42).unwrap();
        assert_eq!(a.counts, b.counts);
        let c = build_histogram(2, 20_000, 50, 43).unwrap();
        assert_ne!(a.counts, c.counts);
        assert_eq!(a.counts.iter().sum::<u64>(), 20_000);
    }

    #[test]
    fn histogram_heights_integrate_to_one() {
        let h = build_histogram(3, 30_000, 64, 5).unwrap();
        let integral: f64 = h.normalized_heights.iter().sum::<f64>() / 64.0;
        assert!((integral - 1.0).abs() < 1e-12);
    }

    #[test]
    fn undersampled_request_rejected() {
        let err = build_histogram(2, 999, 10, 0).unwrap_err();
        assert!(matches!(err, Error::Parameter(_)), "{err}");
    }

    #[test]
    fn exact_masses_sum_to_one_exactly() {
        for (n, bins) in [(1usize, 10usize), (3, 7), (9, 100)] {
            let total: BigRational = exact_bin_masses(n, bins).into_iter().sum();
            assert!(total.is_one(), "n={n}, bins={bins}");
        }
    }

    #[test]
    fn comparison_contract() {
        let h = build_histogram(2, 50_000, 40, 123).unwrap();
        let report = compare_density(&h, 2, 0.08).unwrap();
        assert!(report.passed, "sup deviation {}", report.sup_deviation);
        assert!(report.chi_square.is_finite() && report.chi_square > 0.0);
        assert_eq!(report.degrees_of_freedom, 39);
        assert!(compare_density(&h, 3, 0.08).is_err());
    }

    #[test]
    fn sample_mean_near_center() {
        let spec = Spectrum::linear(2);
        let mut sum = 0.0;
        let draws = 100_000;
        for i in 0..draws {
            let mut rng = substream(77, i);
            sum += sample_energy(&spec, &mut rng).unwrap();
        }
        let mean = sum / draws as f64;
        assert!((mean - 0.5).abs() < 0.005, "mean = {mean}");
    }

    #[test]
    fn two_level_draws_are_uniform() {
        // For n = 1 the flat simplex law makes ⟨H⟩ exactly uniform; check
        // with a Kolmogorov–Smirnov statistic on a deterministic stream.
        let draws = 200_000usize;
        let spec = Spectrum::linear(1);
        let mut xs: Vec<f64> = (0..draws)
            .map(|i| {
                let mut rng = substream(2024, i as u64);
                sample_energy(&spec, &mut rng).unwrap()
            })
            .collect();
        xs.sort_by(f64::total_cmp);
        let mut d = 0.0f64;
        for (i, x) in xs.iter().enumerate() {
            let lo = i as f64 / draws as f64;
            let hi = (i + 1) as f64 / draws as f64;
            d = d.max((x - lo).abs()).max((hi - x).abs());
        }
        let scaled = d * (draws as f64).sqrt();
        assert!(scaled < 1.7, "KS statistic sqrt(N)*D = {scaled}");
    }

    #[test]
    fn zero_expected_bins_do_not_poison_chi_square() {
        // n large concentrates the density; edge bins carry astronomically
        // small exact mass whose float projection can flush to zero.
        let h = build_histogram(27, 10_000, 100, 3).unwrap();
        let report = compare_density(&h, 27, 1.0).unwrap();
        assert!(report.chi_square.is_finite());
        assert!(!report.sup_deviation.is_nan());
        let zero = BigRational::zero();
        assert!(exact_bin_masses(27, 100).iter().all(|m| m > &zero));
    }
}
