//! Zeta-regularized spectral determinant of the twisted Laplacian on the
//! circle, via the Hurwitz zeta function and its continuation by
//! Euler-Maclaurin summation, and the comparison against cellular torsion.

use num_complex::Complex64;
use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::group_ring::Representation;
use crate::spaces::circle_complex;
use crate::torsion::torsion_milnor;

/// A flat rotation bundle over the circle, described by its holonomy angle
/// normalized into (0, 2 pi). The trivial angle is rejected: the twisted
/// complex would not be acyclic.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CircleBundle {
    psi: f64,
}

impl CircleBundle {
    pub fn new(psi: f64) -> Result<Self> {
        let reduced = psi.rem_euclid(TAU);
        if reduced.min(TAU - reduced) < 1e-12 {
            return Err(Error::TrivialHolonomy);
        }
        Ok(CircleBundle { psi: reduced })
    }

    pub fn psi(&self) -> f64 {
        self.psi
    }
}

/// Head terms of the Euler-Maclaurin evaluation.
const HEAD: usize = 32;
/// Even-index Bernoulli numbers B_2 through B_16.
const BERNOULLI: [f64; 8] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
];

fn check_domain(s: Complex64, a: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&a) || a == 0.0 {
        return Err(Error::InvalidRepresentation("offset must lie in (0, 1]".into()));
    }
    if (s - 1.0).norm() < 1e-12 {
        return Err(Error::ZetaPole);
    }
    Ok(())
}

/// Value and s-derivative of the Hurwitz zeta function, continued by
/// Euler-Maclaurin: head sum, tail integral, half correction, and Bernoulli
/// corrections with the rising-factorial polynomial differentiated in
/// closed form. Corrections stop once two successive orders agree.
fn hurwitz_zeta_both(s: Complex64, a: f64) -> Result<(Complex64, Complex64)> {
    check_domain(s, a)?;
    let mut value = Complex64::new(0.0, 0.0);
    let mut deriv = Complex64::new(0.0, 0.0);
    for k in 0..HEAD {
        let base = k as f64 + a;
        let ln = base.ln();
        let term = (-s * ln).exp();
        value += term;
        deriv -= ln * term;
    }
    let base = HEAD as f64 + a;
    let ln = base.ln();
    // tail integral (K+a)^(1-s)/(s-1) and half term (K+a)^(-s)/2
    let pow1 = ((1.0 - s) * ln).exp();
    value += pow1 / (s - 1.0);
    deriv += pow1 * (-ln / (s - 1.0) - 1.0 / ((s - 1.0) * (s - 1.0)));
    let pow0 = (-s * ln).exp();
    value += pow0 * 0.5;
    deriv -= pow0 * 0.5 * ln;

    // Bernoulli corrections: B_2j/(2j)! * p_j(s) * (K+a)^(-s-2j+1) with
    // p_j the rising factorial s(s+1)...(s+2j-2)
    let mut p = s;
    let mut dp = Complex64::new(1.0, 0.0);
    let mut factorial = 1.0f64;
    let mut prev_correction = Complex64::new(f64::INFINITY, 0.0);
    for (j, &b2j) in BERNOULLI.iter().enumerate() {
        let two_j = 2 * (j + 1);
        factorial *= ((two_j - 1) * two_j) as f64;
        // extend the rising factorial to order 2j-1 factors
        if j > 0 {
            for i in (two_j - 3)..(two_j - 1) {
                let f = s + i as f64;
                dp = dp * f + p;
                p *= f;
            }
        }
        let coeff = b2j / factorial;
        let pw = ((-s - (two_j as f64 - 1.0)) * ln).exp();
        let correction = coeff * p * pw;
        let correction_d = coeff * (dp * pw - p * pw * ln);
        value += correction;
        deriv += correction_d;
        let size = correction.norm().max(correction_d.norm());
        if size < 1e-15 && prev_correction.norm() < 1e-15 {
            break;
        }
        prev_correction = Complex64::new(size, 0.0);
    }
    Ok((value, deriv))
}

/// The Hurwitz zeta function, accurate to about 1e-11 absolute for
/// Re(s) in [-1, 4] and offsets in (0, 1].
pub fn hurwitz_zeta(s: Complex64, a: f64) -> Result<Complex64> {
    hurwitz_zeta_both(s, a).map(|(v, _)| v)
}

/// The s-derivative of the Hurwitz zeta function on the same domain.
pub fn hurwitz_zeta_ds(s: Complex64, a: f64) -> Result<Complex64> {
    hurwitz_zeta_both(s, a).map(|(_, d)| d)
}

/// Spectral zeta function of the twisted circle Laplacian:
/// 2 (2 pi)^(-2s) (zeta(2s, a) + zeta(2s, 1-a)) with a = psi / 2 pi.
/// The factor 2 accounts for the two-dimensional rotation bundle.
pub fn circle_zeta(s: Complex64, bundle: &CircleBundle) -> Result<Complex64> {
    let a = bundle.psi / TAU;
    let z = hurwitz_zeta(2.0 * s, a)? + hurwitz_zeta(2.0 * s, 1.0 - a)?;
    Ok(2.0 * (-2.0 * s * TAU.ln()).exp() * z)
}

/// Zeta-regularized determinant e^(-zeta'(0)) of the twisted Laplacian;
/// closed form (2 sin(psi/2))^4.
pub fn circle_det_laplacian(bundle: &CircleBundle) -> Result<f64> {
    let a = bundle.psi / TAU;
    let zero = Complex64::new(0.0, 0.0);
    // zeta_Delta(0) = 0 for this spectrum, so the (2 pi)^(-2s) prefactor
    // does not contribute to the derivative
    let ds = 2.0 * 2.0 * (hurwitz_zeta_ds(zero, a)? + hurwitz_zeta_ds(zero, 1.0 - a)?);
    Ok((-ds.re).exp())
}

/// Analytic torsion of the circle bundle: the square root of the
/// determinant, closed form (2 sin(psi/2))^2.
pub fn circle_rs_torsion(bundle: &CircleBundle) -> Result<f64> {
    circle_det_laplacian(bundle).map(f64::sqrt)
}

/// Relative discrepancy between the cellular torsion of an N-cell circle
/// and the analytic torsion: the cellular chain torsion tau gives the
/// rotation-bundle cochain value |tau|^(-2), which the comparison theorem
/// equates with the analytic value.
pub fn cheeger_muller_check(bundle: &CircleBundle, cells: usize) -> Result<f64> {
    let rep = Representation::angle(bundle.psi)?;
    let complex = circle_complex(cells, &rep)?;
    let tau = torsion_milnor(&complex, None)?;
    let cellular = tau.modulus_squared().recip();
    let analytic = circle_rs_torsion(bundle)?;
    Ok((cellular - analytic).abs() / analytic)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn real(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn reduces_to_riemann_values() {
        let z = hurwitz_zeta(real(2.0), 1.0).unwrap();
        assert!((z.re - PI * PI / 6.0).abs() < 1e-12);
        assert!(z.im.abs() < 1e-12);
        // zeta(-1) = -1/12, well outside the convergent region
        let z = hurwitz_zeta(real(-1.0), 1.0).unwrap();
        assert!((z.re + 1.0 / 12.0).abs() < 1e-11);
        // zeta(4) = pi^4 / 90
        let z = hurwitz_zeta(real(4.0), 1.0).unwrap();
        assert!((z.re - PI.powi(4) / 90.0).abs() < 1e-12);
    }

    #[test]
    fn value_at_zero_is_half_minus_a() {
        for a in [0.25, 0.5, 1.0] {
            let z = hurwitz_zeta(real(0.0), a).unwrap();
            assert!((z.re - (0.5 - a)).abs() < 1e-12, "a = {a}: {}", z.re);
            assert!(z.im.abs() < 1e-12);
        }
    }

    #[test]
    fn convergent_region_matches_direct_summation() {
        for (s, a) in [(3.0, 0.5), (2.5, 0.25), (4.0, 0.75)] {
            // summed smallest-first so rounding stays near machine precision
            let direct: f64 = (0..4_000_000).rev().map(|k| (k as f64 + a).powf(-s)).sum();
            // integral tail bound for the truncated sum
            let tail = (4_000_000.0 + a).powf(1.0 - s) / (s - 1.0);
            let z = hurwitz_zeta(real(s), a).unwrap();
            assert!((z.re - direct - tail).abs() < 1e-10, "s={s} a={a}");
        }
    }

    #[test]
    fn derivative_matches_finite_differences() {
        let h = 1e-5;
        for (s, a) in [(0.0, 0.3), (2.0, 0.7), (-0.5, 0.5), (3.0, 1.0)] {
            let fd = (hurwitz_zeta(real(s + h), a).unwrap()
                - hurwitz_zeta(real(s - h), a).unwrap())
                / (2.0 * h);
            let ds = hurwitz_zeta_ds(real(s), a).unwrap();
            assert!((ds - fd).norm() < 1e-8, "s={s} a={a}: {ds} vs {fd}");
        }
    }

    #[test]
    fn pole_and_domain_errors() {
        assert!(matches!(hurwitz_zeta(real(1.0), 0.5), Err(Error::ZetaPole)));
        assert!(hurwitz_zeta(real(2.0), 0.0).is_err());
        assert!(hurwitz_zeta(real(2.0), 1.5).is_err());
        assert!(CircleBundle::new(0.0).is_err());
        assert!(CircleBundle::new(2.0 * TAU).is_err());
    }

    #[test]
    fn circle_zeta_against_spectral_sum() {
        let bundle = CircleBundle::new(PI).unwrap();
        let s = real(2.0);
        let formula = circle_zeta(s, &bundle).unwrap();
        // eigenvalues (2 pi k + psi)^2 over all integers k, multiplicity 2
        let mut direct = 0.0f64;
        for k in 0..1_000_000i64 {
            direct += 2.0 * (TAU * k as f64 + PI).powi(4).recip();
            direct += 2.0 * (TAU * (k + 1) as f64 - PI).powi(4).recip();
        }
        assert!((formula.re - direct).abs() < 1e-9);
        assert!(formula.im.abs() < 1e-12);

        // spectrum symmetry psi vs 2 pi - psi
        let b1 = CircleBundle::new(1.3).unwrap();
        let b2 = CircleBundle::new(TAU - 1.3).unwrap();
        let (z1, z2) =
            (circle_zeta(s, &b1).unwrap(), circle_zeta(s, &b2).unwrap());
        assert!((z1 - z2).norm() < 1e-12);

        // zeta_Delta(0) = 0
        let z0 = circle_zeta(real(0.0), &b1).unwrap();
        assert!(z0.norm() < 1e-11);
    }

    #[test]
    fn determinant_closed_form() {
        let cases = [(PI, 16.0), (TAU / 3.0, 9.0)];
        for (psi, expect) in cases {
            let det = circle_det_laplacian(&CircleBundle::new(psi).unwrap()).unwrap();
            assert_relative_eq!(det, expect, max_relative = 1e-10);
        }
        let det = circle_det_laplacian(&CircleBundle::new(0.5).unwrap()).unwrap();
        assert_relative_eq!(det, (2.0 * 0.25f64.sin()).powi(4), max_relative = 1e-10);

        for i in 0..20 {
            let psi = 0.1 + (TAU - 0.2) * i as f64 / 19.0;
            let det = circle_det_laplacian(&CircleBundle::new(psi).unwrap()).unwrap();
            assert_relative_eq!(det, (2.0 * (psi / 2.0).sin()).powi(4), max_relative = 1e-8);
        }
    }

    #[test]
    fn rs_torsion_closed_form_and_symmetry() {
        assert_relative_eq!(
            circle_rs_torsion(&CircleBundle::new(PI).unwrap()).unwrap(),
            4.0,
            max_relative = 1e-10
        );
        assert_relative_eq!(
            circle_rs_torsion(&CircleBundle::new(TAU / 3.0).unwrap()).unwrap(),
            3.0,
            max_relative = 1e-10
        );
        let a = circle_rs_torsion(&CircleBundle::new(0.8).unwrap()).unwrap();
        let b = circle_rs_torsion(&CircleBundle::new(TAU - 0.8).unwrap()).unwrap();
        assert_relative_eq!(a, b, max_relative = 1e-10);
    }

    #[test]
    fn cellular_equals_analytic() {
        for psi in [0.5, 1.0, 2.0, PI] {
            let bundle = CircleBundle::new(psi).unwrap();
            for cells in [1usize, 2, 8, 64] {
                let err = cheeger_muller_check(&bundle, cells).unwrap();
                assert!(err < 1e-9, "psi={psi} cells={cells}: {err}");
            }
        }
    }
}
