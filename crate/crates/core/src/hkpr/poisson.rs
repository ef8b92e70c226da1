//! Poisson walk-length weights and an exact Poisson sampler.

use rand::Rng;
use rand_distr::{Distribution as _, Poisson};

use crate::error::{invalid, Result};

/// Largest mean sampled by cumulative inversion. Above it the sampler
/// switches to transformed rejection, which is also exact.
pub const INVERSION_LIMIT: f64 = 30.0;

fn check_t(t: f64) -> Result<()> {
    if t.is_finite() && t >= 0.0 {
        Ok(())
    } else {
        Err(invalid(format!("t must be finite and nonnegative, got {t}")))
    }
}

/// `log p_k` where `p_k = e^{-t} t^k / k!`, by the recurrence
/// `log p_k = log p_{k-1} + log t - log k`.
pub(crate) fn log_weight_step(log_prev: f64, t: f64, k: u64) -> f64 {
    if t == 0.0 {
        f64::NEG_INFINITY
    } else {
        log_prev + t.ln() - (k as f64).ln()
    }
}

/// `p_k = e^{-t} t^k / k!` for `k = 0..=k_max`.
pub fn poisson_weights(t: f64, k_max: usize) -> Result<Vec<f64>> {
    check_t(t)?;
    let mut weights = Vec::with_capacity(k_max + 1);
    let mut log_p = -t;
    weights.push(log_p.exp());
    for k in 1..=k_max as u64 {
        log_p = log_weight_step(log_p, t, k);
        weights.push(log_p.exp());
    }
    Ok(weights)
}

/// Draws walk lengths `k ~ Poisson(t)`.
#[derive(Debug, Clone)]
pub struct PoissonSampler {
    t: f64,
    method: Method,
}

#[derive(Debug, Clone)]
enum Method {
    Inversion { p0: f64 },
    Rejection(Poisson<f64>),
}

impl PoissonSampler {
    pub fn new(t: f64) -> Result<Self> {
        check_t(t)?;
        let method = if t <= INVERSION_LIMIT {
            Method::Inversion { p0: (-t).exp() }
        } else {
            let poisson = Poisson::new(t).map_err(|e| invalid(format!("poisson mean {t}: {e}")))?;
            Method::Rejection(poisson)
        };
        Ok(Self { t, method })
    }

    pub fn mean(&self) -> f64 {
        self.t
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        match &self.method {
            Method::Inversion { p0 } => {
                let u: f64 = rng.random();
                let mut k = 0u64;
                let mut p = *p0;
                let mut cdf = p;
                while u >= cdf {
                    k += 1;
                    p *= self.t / k as f64;
                    cdf += p;
                    // Rounding can leave the cdf just short of 1.
                    if p < f64::MIN_POSITIVE && k as f64 > self.t {
                        break;
                    }
                }
                k
            }
            Method::Rejection(poisson) => poisson.sample(rng) as u64,
        }
    }
}

/// One Poisson(`t`) draw.
pub fn sample_walk_length<R: Rng + ?Sized>(t: f64, rng: &mut R) -> Result<u64> {
    Ok(PoissonSampler::new(t)?.sample(rng))
}
