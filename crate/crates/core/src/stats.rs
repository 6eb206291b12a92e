//! Kolmogorov-Smirnov distances and small summary statistics.

use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};

/// Reference law for a one-sample KS comparison.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Reference {
    StdNormal,
    /// Law of `e^(σZ)` with `Z` standard normal.
    LogNormal { sigma: f64 },
    /// Any other law supplied by the caller.
    Custom,
}

impl Reference {
    /// CDF of the reference; `Custom` has none.
    pub fn cdf(&self) -> Option<Box<dyn Fn(f64) -> f64>> {
        match *self {
            Reference::StdNormal => Some(Box::new(std_normal_cdf)),
            Reference::LogNormal { sigma } => Some(Box::new(move |x: f64| {
                if x <= 0.0 {
                    0.0
                } else {
                    std_normal_cdf(x.ln() / sigma)
                }
            })),
            Reference::Custom => None,
        }
    }
}

/// Sorted sample of a statistic together with its KS distance to a reference.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmpiricalSummary {
    pub sorted_samples: Vec<f64>,
    pub ks_distance: f64,
    pub reference: Reference,
}

impl EmpiricalSummary {
    /// Sorts `samples` and measures them against `reference`.
    pub fn against(mut samples: Vec<f64>, reference: Reference, cdf: impl Fn(f64) -> f64) -> Self {
        sort(&mut samples);
        let ks_distance = ks_sorted(&samples, cdf);
        Self { sorted_samples: samples, ks_distance, reference }
    }

    pub fn len(&self) -> usize {
        self.sorted_samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sorted_samples.is_empty()
    }

    pub fn mean(&self) -> f64 {
        mean(&self.sorted_samples)
    }
}

pub fn std_normal_cdf(x: f64) -> f64 {
    Normal::standard().cdf(x)
}

fn sort(xs: &mut [f64]) {
    xs.sort_by(f64::total_cmp);
}

fn ks_sorted(sorted: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    let n = sorted.len() as f64;
    let mut d = 0.0f64;
    for (i, &x) in sorted.iter().enumerate() {
        let f = cdf(x);
        d = d.max(f - i as f64 / n).max((i + 1) as f64 / n - f);
    }
    d
}

/// `sup_x |F_n(x) − F(x)|` for a continuous reference CDF.
pub fn ks_one_sample(samples: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    let mut xs = samples.to_vec();
    sort(&mut xs);
    ks_sorted(&xs, cdf)
}

/// `sup_x |F_n(x) − G_m(x)|`; ties (including atoms) are stepped over together.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> f64 {
    let mut xs = a.to_vec();
    let mut ys = b.to_vec();
    sort(&mut xs);
    sort(&mut ys);
    let (n, m) = (xs.len() as f64, ys.len() as f64);
    let (mut i, mut j) = (0, 0);
    let mut d = 0.0f64;
    while i < xs.len() && j < ys.len() {
        let v = if xs[i].total_cmp(&ys[j]).is_le() { xs[i] } else { ys[j] };
        while i < xs.len() && xs[i] == v {
            i += 1;
        }
        while j < ys.len() && ys[j] == v {
            j += 1;
        }
        d = d.max((i as f64 / n - j as f64 / m).abs());
    }
    d
}

/// Asymptotic critical value of the two-sample statistic at level `alpha`.
pub fn ks_two_sample_critical(n: usize, m: usize, alpha: f64) -> f64 {
    let c = (-(alpha / 2.0).ln() / 2.0).sqrt();
    c * ((n + m) as f64 / (n as f64 * m as f64)).sqrt()
}

pub fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Mean and standard error of the mean.
pub fn mean_and_se(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mu = mean(xs);
    let var = xs.iter().map(|x| (x - mu) * (x - mu)).sum::<f64>() / (n - 1.0);
    (mu, (var / n).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_sample_identical_is_zero() {
        let a = [0.1, 0.5, 0.3, 0.9];
        assert_eq!(ks_two_sample(&a, &a), 0.0);
    }

    #[test]
    fn two_sample_disjoint_is_one() {
        assert_eq!(ks_two_sample(&[1.0, 2.0], &[3.0, 4.0, 5.0]), 1.0);
    }

    #[test]
    fn two_sample_handles_atoms() {
        let a = [0.0, 0.0, 0.0, 1.0];
        let b = [0.0, 0.0, 1.0, 1.0];
        assert!((ks_two_sample(&a, &b) - 0.25).abs() < 1e-15);
    }

    #[test]
    fn one_sample_uniform_grid() {
        let xs: Vec<f64> = (0..100).map(|i| (i as f64 + 0.5) / 100.0).collect();
        assert!((ks_one_sample(&xs, |x| x) - 0.005).abs() < 1e-12);
    }

    #[test]
    fn critical_value() {
        let c = ks_two_sample_critical(20_000, 20_000, 1e-3);
        assert!(c > 0.0194 && c < 0.0196);
    }

    #[test]
    fn lognormal_reference() {
        let cdf = Reference::LogNormal { sigma: 0.5 }.cdf().unwrap();
        assert!((cdf(1.0) - 0.5).abs() < 1e-15);
        assert_eq!(cdf(-1.0), 0.0);
    }
}
