//! Scalar special functions: log-gamma, digamma, and the increment function
//! `f(x) = x[ψ(x+1) − ln x]` that drives every information-gain bound in this
//! crate.
//!
//! All three are plain `f64` routines, valid for strictly positive arguments.
//! Gains derived from them are measured in nats.

use crate::error::{Error, Result};

/// ln(2·sqrt(e/π)), auxiliary constant of the Lanczos expansion.
const LN_2_SQRT_E_OVER_PI: f64 = 0.620_782_237_635_245_2;

/// Lanczos coefficients (Pugh's 11-term set for g = 10.900511), accurate to
/// roughly 16 significant digits over the positive axis.
const LANCZOS_DK: [f64; 11] = [
    2.485_740_891_387_535_5e-5,
    1.051_423_785_817_219_7,
    -3.456_870_972_220_162_5,
    4.512_277_094_668_948,
    -2.982_852_253_235_766_4,
    1.056_397_115_771_267,
    -1.954_287_731_916_458_7e-1,
    1.709_705_434_044_412e-2,
    -5.719_261_174_043_057e-4,
    4.633_994_733_599_057e-6,
    -2.719_949_084_886_077_2e-9,
];

const LANCZOS_R: f64 = 10.900511;

/// B_{2k}/(2k) for k = 1..7; the asymptotic tail of ψ is
/// ψ(z) ≈ ln z − 1/(2z) − Σ_k B_{2k}/(2k · z^{2k}).
const PSI_TAIL: [f64; 7] = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
];

fn check_positive(x: f64, op: &str) -> Result<()> {
    if !x.is_finite() || x <= 0.0 {
        return Err(Error::Domain(format!(
            "{op} requires finite x > 0, got {x}"
        )));
    }
    Ok(())
}

/// Natural log of the gamma function, ln Γ(x), for x > 0.
pub fn log_gamma(x: f64) -> Result<f64> {
    check_positive(x, "log_gamma")?;
    Ok(log_gamma_raw(x))
}

pub(crate) fn log_gamma_raw(x: f64) -> f64 {
    if x < 0.5 {
        // ln Γ(x) = ln Γ(x+1) − ln x; one shift lands in the stable region.
        return log_gamma_raw(x + 1.0) - x.ln();
    }
    let mut s = LANCZOS_DK[0];
    for (i, dk) in LANCZOS_DK.iter().enumerate().skip(1) {
        s += dk / (x + i as f64 - 1.0);
    }
    s.ln() + LN_2_SQRT_E_OVER_PI + (x - 0.5) * ((x - 0.5 + LANCZOS_R) / std::f64::consts::E).ln()
}

/// Digamma function ψ(x) = d/dx ln Γ(x), for x > 0.
///
/// Shifts the argument above 10 with ψ(x) = ψ(x+1) − 1/x, then applies the
/// asymptotic expansion in 1/x².
pub fn digamma(x: f64) -> Result<f64> {
    check_positive(x, "digamma")?;
    Ok(digamma_raw(x))
}

pub(crate) fn digamma_raw(x: f64) -> f64 {
    let mut shift = 0.0;
    let mut z = x;
    while z < 10.0 {
        shift -= 1.0 / z;
        z += 1.0;
    }
    let inv = 1.0 / z;
    let inv2 = inv * inv;
    let mut tail = 0.0;
    for c in PSI_TAIL.iter().rev() {
        tail = inv2 * (c + tail);
    }
    shift + z.ln() - 0.5 * inv - tail
}

/// The function f(x) = x·[ψ(x+1) − ln x].
///
/// Strictly increasing and strictly concave on (0, ∞), with f(0+) = 0 and
/// f(∞) = 1/2. Expected information gains of Dirichlet rows decompose as
/// `g(n) = (Σ_s f(n_s) − f(n*)) / n*`.
pub fn f_alzer(x: f64) -> Result<f64> {
    check_positive(x, "f_alzer")?;
    Ok(f_alzer_raw(x))
}

pub(crate) fn f_alzer_raw(x: f64) -> f64 {
    if x < 16.0 {
        return x * (digamma_raw(x + 1.0) - x.ln());
    }
    // ψ(x+1) − ln x = 1/(2x) − Σ_k B_{2k}/(2k · x^{2k}), so the product with x
    // telescopes to 1/2 − Σ_k B_{2k}/(2k) · x^{1−2k}. Summed directly, this
    // avoids the cancellation of two ~ln x terms.
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let mut tail = 0.0;
    for c in PSI_TAIL.iter().rev() {
        tail = inv2 * (c + tail);
    }
    0.5 - tail / inv
}

#[cfg(test)]
mod tests {
    use super::*;
    use curiosity_testkit::{digamma_series_oracle, ln_gamma_half_quadrature};
    use proptest::prelude::*;

    const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

    #[test]
    fn log_gamma_of_one_and_factorials() {
        assert!(log_gamma(1.0).unwrap().abs() < 1e-14);
        assert!((log_gamma(5.0).unwrap() - 24f64.ln()).abs() < 1e-13);
        assert!((log_gamma(2.0).unwrap()).abs() < 1e-14);
    }

    #[test]
    fn log_gamma_of_half_matches_quadrature() {
        // Independent oracle: Γ(1/2) = ∫ t^{-1/2} e^{-t} dt by quadrature.
        let oracle = ln_gamma_half_quadrature();
        assert!((log_gamma(0.5).unwrap() - oracle).abs() < 1e-13);
        assert!((log_gamma(0.5).unwrap() - 0.572_364_942_924_700_1).abs() < 1e-12);
    }

    #[test]
    fn digamma_matches_series_oracle() {
        assert!((digamma(1.0).unwrap() + EULER_GAMMA).abs() < 1e-13);
        assert!((digamma(1.0).unwrap() - digamma_series_oracle(1.0)).abs() < 1e-13);
        assert!((digamma(100.0).unwrap() - digamma_series_oracle(100.0)).abs() < 1e-12);
        // ψ(100) = H_99 − γ.
        let h99: f64 = (1..100).map(|k| 1.0 / k as f64).sum();
        assert!((digamma(100.0).unwrap() - (h99 - EULER_GAMMA)).abs() < 1e-12);
    }

    #[test]
    fn digamma_recurrence_step() {
        let lhs = digamma(2.0).unwrap();
        let rhs = digamma(1.0).unwrap() + 1.0;
        assert!((lhs - rhs).abs() < 1e-14);
    }

    #[test]
    fn domain_errors() {
        assert!(log_gamma(0.0).is_err());
        assert!(log_gamma(-1.0).is_err());
        assert!(log_gamma(f64::NAN).is_err());
        assert!(digamma(0.0).is_err());
        assert!(digamma(f64::INFINITY).is_err());
        assert!(f_alzer(-2.0).is_err());
    }

    #[test]
    fn f_alzer_limits_and_fixed_point() {
        // f(0+) = 0.
        assert!(f_alzer(1e-8).unwrap() < 1e-6);
        assert!(f_alzer(1e-8).unwrap() > 0.0);
        // f(∞) = 1/2, approached from below.
        let big = f_alzer(1e6).unwrap();
        assert!((big - 0.5).abs() < 1e-5);
        assert!(big < 0.5);
        // f(1) = ψ(2).
        assert!((f_alzer(1.0).unwrap() - digamma_series_oracle(2.0)).abs() < 1e-13);
        assert!((f_alzer(1.0).unwrap() - 0.422_784_335_098_467_1).abs() < 1e-12);
    }

    #[test]
    fn f_alzer_branches_agree_at_threshold() {
        for &x in &[15.5, 15.999, 16.0, 16.001, 17.0] {
            let direct = x * (digamma_raw(x + 1.0) - x.ln());
            let value = f_alzer(x).unwrap();
            assert!((direct - value).abs() < 1e-13, "x = {x}");
        }
    }

    fn log_uniform(u: f64, lo: f64, hi: f64) -> f64 {
        (lo.ln() + u * (hi.ln() - lo.ln())).exp()
    }

    proptest! {
        #[test]
        fn recurrences_hold(u in 0.0f64..1.0) {
            let x = log_uniform(u, 1e-6, 1e7);
            let psi = digamma(x).unwrap();
            let psi1 = digamma(x + 1.0).unwrap();
            prop_assert!((psi1 - psi - 1.0 / x).abs() <= 1e-12 * (1.0 / x).max(1.0));
            let lg = log_gamma(x).unwrap();
            let lg1 = log_gamma(x + 1.0).unwrap();
            prop_assert!((lg1 - lg - x.ln()).abs() <= 1e-12 * lg1.abs().max(1.0));
        }

        #[test]
        fn f_is_strictly_increasing(u in 0.0f64..1.0, v in 0.0f64..1.0) {
            let a = log_uniform(u, 1e-4, 1e6);
            let b = log_uniform(v, 1e-4, 1e6);
            prop_assume!(a != b);
            let (x, y) = if a < b { (a, b) } else { (b, a) };
            prop_assert!(f_alzer(x).unwrap() < f_alzer(y).unwrap());
        }

        #[test]
        fn f_is_concave(u in 0.0f64..1.0, w in 0.01f64..0.99) {
            let x = log_uniform(u, 1e-4, 1e6);
            let h = w * x;
            let lhs = f_alzer(x + h).unwrap() + f_alzer(x - h).unwrap();
            prop_assert!(lhs <= 2.0 * f_alzer(x).unwrap() + 1e-12);
        }

        #[test]
        fn f_is_sub_additive(u in 0.0f64..1.0, v in 0.0f64..1.0) {
            let x = log_uniform(u, 1e-4, 1e6);
            let y = log_uniform(v, 1e-4, 1e6);
            prop_assert!(f_alzer(x).unwrap() + f_alzer(y).unwrap() > f_alzer(x + y).unwrap());
        }

        #[test]
        fn scaled_increment_bound(u in 0.0f64..1.0, v in 0.0f64..1.0) {
            let x = log_uniform(u, 1e-4, 1e6);
            // Relative increments: below ~x·1e-9 the change in f falls under
            // one ulp of 1/2 and cannot be resolved in double precision.
            let m = x * log_uniform(v, 1e-6, 10.0);
            let scaled = x * (f_alzer(x + m).unwrap() - f_alzer(x).unwrap());
            prop_assert!(scaled > 0.0);
            prop_assert!(scaled < (1.0 - (-1.0f64).exp()) / 2.0 * m);
        }
    }
}
