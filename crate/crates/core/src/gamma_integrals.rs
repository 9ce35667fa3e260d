//! Complex Gamma, the modulus identity on the imaginary axis, the damped
//! oscillatory integral ∫₀^∞ t^{p−1}e^{−it}dt and its contour cross-check.

use crate::error::{domain, Error, Result};
use crate::quadrature::{integrate_with_breaks, GaussLegendre, Tolerance};
use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, LN_2, PI};
use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

const LANCZOS_G: f64 = 607.0 / 128.0;
#[allow(clippy::excessive_precision)]
const LANCZOS: [f64; 15] = [
    0.999_999_999_999_997_1,
    57.156_235_665_862_923_517,
    -59.597_960_355_475_491_248,
    14.136_097_974_741_747_174,
    -0.491_913_816_097_620_199_78,
    0.339_946_499_848_118_886_99e-4,
    0.465_236_289_270_485_756_65e-4,
    -0.983_744_753_048_795_646_77e-4,
    0.158_088_703_224_912_488_84e-3,
    -0.210_264_441_724_104_883_19e-3,
    0.217_439_618_115_212_643_20e-3,
    -0.164_318_106_536_763_890_22e-3,
    0.844_182_239_838_527_432_93e-4,
    -0.261_908_384_015_814_086_70e-4,
    0.368_991_826_595_316_227_04e-5,
];
const HALF_LN_TWO_PI: f64 = 0.918_938_533_204_672_7;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn check_pole(z: Complex64) -> Result<()> {
    if z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round() {
        return Err(Error::Pole { re: z.re, im: z.im });
    }
    Ok(())
}

/// Lanczos sum for Re z ≥ 1/2.
fn ln_gamma_right(z: Complex64) -> Complex64 {
    let zm = z - 1.0;
    let mut series = c(LANCZOS[0], 0.0);
    for (k, &coef) in LANCZOS.iter().enumerate().skip(1) {
        series += coef / (zm + k as f64);
    }
    let t = zm + LANCZOS_G + 0.5;
    (zm + 0.5) * t.ln() - t + HALF_LN_TWO_PI + series.ln()
}

/// A logarithm of sin(πz) that does not overflow for large |Im z|.
fn ln_sin_pi(z: Complex64) -> Complex64 {
    if z.im == 0.0 {
        return c((PI * z.re).sin(), 0.0).ln();
    }
    if z.im < 0.0 {
        return ln_sin_pi(z.conj()).conj();
    }
    // sin(πz) = (i/2) e^{−iπz} (1 − e^{2πiz}), ln(i/2) = −ln 2 + iπ/2
    let i = c(0.0, 1.0);
    -i * PI * z + c(-LN_2, FRAC_PI_2) + (1.0 - (2.0 * PI * i * z).exp()).ln()
}

/// A branch of ln Γ(z); exp of it is Γ(z). Reflection handles Re z < 1/2.
pub fn ln_gamma(z: Complex64) -> Result<Complex64> {
    check_pole(z)?;
    if z.re >= 0.5 {
        Ok(ln_gamma_right(z))
    } else {
        Ok(c(PI.ln(), 0.0) - ln_sin_pi(z) - ln_gamma_right(1.0 - z))
    }
}

pub fn complex_gamma(z: Complex64) -> Result<Complex64> {
    if z.im == 0.0 && z.re > 0.0 && z.re <= 171.0 && z.re == z.re.round() {
        let n = z.re as u32;
        return Ok(c((1..n).fold(1.0, |acc, k| acc * k as f64), 0.0));
    }
    ln_gamma(z).map(Complex64::exp)
}

/// (|Γ(ix)|² − π/(x sinh πx)) / (π/(x sinh πx)).
pub fn gamma_imag_identity_residual(x: f64) -> Result<f64> {
    if x == 0.0 || !x.is_finite() {
        return Err(domain("gamma_imag_identity_residual", "x must be finite and non-zero"));
    }
    let lhs = complex_gamma(c(0.0, x))?.norm_sqr();
    let rhs = PI / (x * (PI * x).sinh());
    Ok((lhs - rhs) / rhs)
}

/// Exponent p with 0 ≤ Re p < 1 and p ≠ 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexParameter(Complex64);

impl ComplexParameter {
    pub fn new(p: Complex64) -> Result<Self> {
        if !(p.re >= 0.0 && p.re < 1.0) || p == c(0.0, 0.0) || !p.im.is_finite() {
            return Err(domain("ComplexParameter", format!("need 0 <= Re p < 1 and p != 0, got {p}")));
        }
        Ok(Self(p))
    }

    pub fn value(&self) -> Complex64 {
        self.0
    }
}

/// (−i)^p Γ(p), the limit the regularized integral approaches.
pub fn oscillatory_target(p: ComplexParameter) -> Result<Complex64> {
    let p = p.value();
    Ok((c(0.0, -FRAC_PI_2) * p).exp() * complex_gamma(p)?)
}

/// Relative residual allowed between the last two Richardson diagonals.
pub const RICHARDSON_TOLERANCE: f64 = 1e-8;

/// ∫₀^∞ t^{p−1}e^{−zt}dt for Re z > 0: power series on [0, 1] (the analytic
/// continuation in p, so Re p = 0 is admitted), Gauss–Legendre panels up to
/// 50/Re z, and nothing beyond (the tail is below e^{−50}/Re z).
fn damped_integral(p: Complex64, z: Complex64, rule: &GaussLegendre) -> Complex64 {
    let mut head = c(0.0, 0.0);
    let mut term = c(1.0, 0.0);
    for k in 0..200 {
        let add = term / (p + k as f64);
        head += add;
        if add.norm() < 1e-18 * head.norm() && k > 4 {
            break;
        }
        term *= -z / (k as f64 + 1.0);
    }
    let upper = 50.0 / z.re;
    // about four panels per unit length keeps 16-point panels exact to
    // rounding for e^{−it}
    let panels = ((upper - 1.0) * 4.0).ceil().max(1.0) as usize;
    let pm1 = p - 1.0;
    let tail = rule.composite(|t| (pm1 * t.ln() - z * t).exp(), 1.0, upper, panels);
    head + tail
}

/// ∫₀^∞ t^{p−1}e^{−(ε+i)t}dt at ε = damping_eps·2^{−k}, k < levels,
/// extrapolated to ε → 0 by Richardson (Neville) in ε.
pub fn regularized_oscillatory_integral(p: ComplexParameter, damping_eps: f64, richardson_levels: usize) -> Result<Complex64> {
    if !(damping_eps > 0.0 && damping_eps.is_finite()) {
        return Err(domain("regularized_oscillatory_integral", "damping_eps must be > 0"));
    }
    if richardson_levels < 2 {
        return Err(domain("regularized_oscillatory_integral", "need at least two Richardson levels"));
    }
    let rule = GaussLegendre::new(16);
    let pv = p.value();
    let eps: Vec<f64> = (0..richardson_levels).map(|k| damping_eps * 0.5f64.powi(k as i32)).collect();
    let mut table: Vec<Complex64> = eps.iter().map(|&e| damped_integral(pv, c(e, 1.0), &rule)).collect();
    // Neville at ε = 0: after pass m, table[j] uses samples j..=j+m
    let mut previous = table[0];
    let mut last = table[0];
    for m in 1..richardson_levels {
        for j in 0..richardson_levels - m {
            table[j] = (eps[j] * table[j + 1] - eps[j + m] * table[j]) / (eps[j] - eps[j + m]);
        }
        previous = last;
        last = table[0];
    }
    let residual = (last - previous).norm() / last.norm();
    if !(residual <= RICHARDSON_TOLERANCE) {
        return Err(Error::NonConvergence {
            op: "regularized_oscillatory_integral",
            residual,
            tolerance: RICHARDSON_TOLERANCE,
        });
    }
    Ok(last)
}

/// The five legs of the first-quadrant contour for z^{p−1}e^{−z}:
/// I1 along [ε, a], I2 up the imaginary axis from iε to ia, I3 up the line
/// Re z = a, I4 along Im z = a from ia to a + ia, I5 the quarter arc from iε
/// to ε. Cauchy gives −I1 + I2 − I3 + I4 − I5 = 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContourLegs {
    pub p: Complex64,
    pub a: f64,
    pub epsilon: f64,
    pub legs: [Complex64; 5],
    /// Sum of the quadrature error estimates of the five legs.
    pub quadrature_error: f64,
}

/// Upper bounds on the three vanishing legs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LegBounds {
    /// a(√2a)^{x−1}e^{π|y|/4}e^{−a}.
    pub i3: f64,
    /// (√2a)^{x−1}e^{π|y|/2}(1 − e^{−a}); a lower estimate of |z|^{x−1} on the
    /// top edge, so it can fail for real p.
    pub i4_spherical: f64,
    /// a^{x−1}e^{π|y|/2}(1 − e^{−a}), using |z| ≥ a on the top edge.
    pub i4: f64,
    /// (π/2)e^{−πy/2}ε^x e^{π|y|/2}.
    pub i5: f64,
}

impl ContourLegs {
    pub fn alternating_sum(&self) -> Complex64 {
        self.legs
            .iter()
            .enumerate()
            .map(|(j, &v)| if j % 2 == 0 { -v } else { v })
            .sum()
    }

    /// I2 / i^p, which should equal ∫_ε^a t^{p−1}e^{−it}dt.
    pub fn i2_stripped(&self) -> Complex64 {
        self.legs[1] / (c(0.0, FRAC_PI_2) * self.p).exp()
    }

    pub fn bounds(&self) -> LegBounds {
        let (x, y, a) = (self.p.re, self.p.im, self.a);
        let diag = (2.0f64.sqrt() * a).powf(x - 1.0);
        let edge = -(-a).exp_m1();
        LegBounds {
            i3: a * diag * (PI * y.abs() / 4.0).exp() * (-a).exp(),
            i4_spherical: diag * (PI * y.abs() / 2.0).exp() * edge,
            i4: a.powf(x - 1.0) * (PI * y.abs() / 2.0).exp() * edge,
            i5: FRAC_PI_2 * (-PI * y / 2.0).exp() * self.epsilon.powf(x) * (PI * y.abs() / 2.0).exp(),
        }
    }
}

fn power(p: Complex64, z: Complex64) -> Complex64 {
    ((p - 1.0) * z.ln() - z).exp()
}

/// Log-spaced breakpoints from `lo` to 1 for integrands singular at `lo → 0`.
fn geometric_breaks(lo: f64, hi: f64) -> Vec<f64> {
    let mut b = Vec::new();
    let mut x = lo * 4.0;
    while x < hi.min(1.0) {
        b.push(x);
        x *= 4.0;
    }
    let mut x = 1.0;
    while x < hi {
        b.push(x);
        x += 1.0;
    }
    b
}

pub fn contour_decomposition(p: ComplexParameter, a: f64, epsilon: f64) -> Result<ContourLegs> {
    let pv = p.value();
    if !(pv.re > 0.0) {
        return Err(domain("contour_decomposition", "need Re p > 0"));
    }
    if !(epsilon > 0.0 && epsilon < 1.0 && a > 1.0 && a.is_finite()) {
        return Err(domain("contour_decomposition", "need 0 < epsilon < 1 < a"));
    }
    let tol = Tolerance::new(1e-15, 1e-13);
    let i = c(0.0, 1.0);
    let radial = geometric_breaks(epsilon, a);
    let uniform: Vec<f64> = (1..a.ceil() as usize).map(|k| k as f64).collect();

    let legs = [
        integrate_with_breaks(|t| power(pv, c(t, 0.0)), epsilon, a, &radial, tol)?,
        integrate_with_breaks(|t| power(pv, c(0.0, t)) * i, epsilon, a, &radial, tol)?,
        integrate_with_breaks(|s| power(pv, c(a, s)) * i, 0.0, a, &uniform, tol)?,
        integrate_with_breaks(|s| power(pv, c(s, a)), 0.0, a, &uniform, tol)?,
        integrate_with_breaks(
            |phi| {
                let w = c(0.0, -phi).exp();
                power(pv, i * epsilon * w) * epsilon * w
            },
            0.0,
            FRAC_PI_2,
            &[],
            tol,
        )?,
    ];
    Ok(ContourLegs {
        p: pv,
        a,
        epsilon,
        legs: [legs[0].value, legs[1].value, legs[2].value, legs[3].value, legs[4].value],
        quadrature_error: legs.iter().map(|e| e.error).sum(),
    })
}

#[cfg(test)]
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm()
    }

    fn param(re: f64, im: f64) -> ComplexParameter {
        ComplexParameter::new(c(re, im)).unwrap()
    }

    #[test]
    fn gamma_classical_values() {
        assert!(rel(complex_gamma(c(0.5, 0.0)).unwrap(), c(PI.sqrt(), 0.0)) < 1e-14);
        assert_eq!(complex_gamma(c(1.0, 0.0)).unwrap(), c(1.0, 0.0));
        assert_eq!(complex_gamma(c(5.0, 0.0)).unwrap(), c(24.0, 0.0));
        assert!((complex_gamma(c(0.0, 1.0)).unwrap().norm() - 0.521_564_046_864_939_8).abs() < 1e-13);
    }

    #[test]
    fn gamma_against_reference_values() {
        let cases = [
            ((0.3, 0.7), (0.309_686_256_743_749_155_57, -0.856_787_752_939_270_572_54)),
            ((-1.5, 0.2), (1.962_555_125_802_847_219_3, 0.278_459_553_121_262_463_38)),
            ((2.5, -3.0), (-0.218_118_971_081_122_897_48, -0.072_034_763_407_175_033_565)),
            ((10.0, 10.0), (1_423.851_941_789_183_074, -3_496.081_973_307_944_589)),
            ((-3.7, 0.0), (0.251_643_995_902_422_681_29, 0.0)),
            ((0.5, 0.001), (1.772_446_060_848_673_521_1, -0.003_480_215_112_210_123_003_4)),
            ((0.05, 20.0), (9.619_323_456_082_943_528_4e-16, 1.475_522_473_696_299_550_3e-14)),
        ];
        for ((zr, zi), (gr, gi)) in cases {
            let g = complex_gamma(c(zr, zi)).unwrap();
            assert!(rel(g, c(gr, gi)) < 1e-12, "z = {zr}+{zi}i: {g}");
        }
    }

    #[test]
    fn gamma_poles() {
        for n in [0.0, -1.0, -7.0] {
            assert!(matches!(complex_gamma(c(n, 0.0)), Err(Error::Pole { .. })));
        }
        assert!(complex_gamma(c(-1.0, 1e-9)).is_ok());
    }

    #[test]
    fn gamma_recurrence() {
        for i in -12..=12 {
            for j in -6..=6 {
                let z = c(0.37 * i as f64 + 0.01, 0.53 * j as f64);
                let lhs = complex_gamma(z + 1.0).unwrap();
                let rhs = z * complex_gamma(z).unwrap();
                assert!(rel(lhs, rhs) < 1e-12, "z = {z}");
            }
        }
    }

    #[test]
    fn imaginary_axis_identity() {
        assert!(gamma_imag_identity_residual(1.0).unwrap().abs() < 1e-10);
        assert!(gamma_imag_identity_residual(0.1).unwrap().abs() < 1e-10);
        assert!(gamma_imag_identity_residual(5.0).unwrap().abs() < 1e-9);
        assert!(gamma_imag_identity_residual(0.0).is_err());
        for k in 0..=40 {
            let x = 0.05 * 200f64.powf(k as f64 / 40.0);
            assert!(gamma_imag_identity_residual(x).unwrap().abs() < 1e-9, "x = {x}");
            assert!(gamma_imag_identity_residual(-x).unwrap().abs() < 1e-9);
        }
    }

    #[test]
    fn parameter_validation() {
        assert!(ComplexParameter::new(c(0.0, 0.0)).is_err());
        assert!(ComplexParameter::new(c(1.0, 0.0)).is_err());
        assert!(ComplexParameter::new(c(-0.1, 0.0)).is_err());
        assert!(ComplexParameter::new(c(0.0, 0.3)).is_ok());
    }

    #[test]
    fn regularized_integral_examples() {
        let cases = [
            ((0.5, 0.0), (1.253_314_137_315_500_251_2, -1.253_314_137_315_500_251_2)),
            ((0.25, 0.3), (0.836_925_293_364_495_912_4, -3.425_691_568_637_413_748_7)),
            ((0.9, 0.0), (0.167_170_359_342_671_911_91, -1.055_472_109_508_566_259_6)),
            ((0.0, 0.3), (-0.805_523_628_592_105_090_08, -4.903_509_537_493_614_746_7)),
        ];
        for ((pr, pi), (tr, ti)) in cases {
            let p = param(pr, pi);
            let v = regularized_oscillatory_integral(p, 0.25, 7).unwrap();
            assert!(rel(v, c(tr, ti)) < 1e-6, "p = {pr}+{pi}i: {v}");
            assert!(rel(oscillatory_target(p).unwrap(), c(tr, ti)) < 1e-12);
        }
        assert!(regularized_oscillatory_integral(param(0.5, 0.0), 0.0, 7).is_err());
        assert!(regularized_oscillatory_integral(param(0.5, 0.0), 0.25, 1).is_err());
    }

    #[test]
    fn too_few_levels_fail_to_converge() {
        let r = regularized_oscillatory_integral(param(0.5, 0.0), 1.0, 2);
        assert!(matches!(r, Err(Error::NonConvergence { .. })), "{r:?}");
    }

    #[test]
    fn contour_cancels_and_limits() {
        let legs = contour_decomposition(param(0.5, 0.0), 30.0, 1e-6).unwrap();
        assert!(legs.alternating_sum().norm() <= 1e-8);
        let g = c(PI.sqrt(), 0.0);
        // I1 misses only ∫_0^ε and the e^{-a} tail
        assert!((legs.legs[0] - g).norm() < 3e-3);
        // I2 → i^p (−i)^p Γ(p) = Γ(p) with an O(a^{x−1}) top-edge gap
        assert!((legs.legs[1] - g).norm() <= legs.legs[3].norm() + 3e-3);
    }

    #[test]
    fn i2_branch_matches_real_line_integral() {
        for p in [param(0.5, 0.0), param(0.25, 0.3), param(0.9, 0.0)] {
            let legs = contour_decomposition(p, 20.0, 1e-4).unwrap();
            let pv = p.value();
            let radial = geometric_breaks(1e-4, 20.0);
            let direct = integrate_with_breaks(
                |t| ((pv - 1.0) * t.ln() - c(0.0, t)).exp(),
                1e-4,
                20.0,
                &radial,
                Tolerance::new(1e-15, 1e-13),
            )
            .unwrap()
            .value;
            assert!(rel(legs.i2_stripped(), direct) < 1e-10);
        }
    }

    #[test]
    fn vanishing_legs_shrink() {
        let p = param(0.5, 0.0);
        let near = contour_decomposition(p, 20.0, 1e-4).unwrap();
        let far = contour_decomposition(p, 40.0, 1e-4).unwrap();
        assert!(far.legs[2].norm() / near.legs[2].norm() <= (-19.0f64).exp());
        let half = contour_decomposition(p, 20.0, 5e-5).unwrap();
        assert!(half.legs[4].norm() / near.legs[4].norm() <= 0.5f64.powf(0.5) * (1.0 + 1e-3));
    }

    #[test]
    fn leg_bounds() {
        for p in [param(0.5, 0.0), param(0.25, 0.3), param(0.9, 0.0), param(0.05, 1.0)] {
            for (a, eps) in [(20.0, 1e-4), (40.0, 1e-8)] {
                let legs = contour_decomposition(p, a, eps).unwrap();
                let b = legs.bounds();
                assert!(legs.legs[2].norm() <= b.i3, "I3 p={:?} a={a}", p);
                assert!(legs.legs[3].norm() <= b.i4, "I4 p={:?} a={a}", p);
                assert!(legs.legs[4].norm() <= b.i5, "I5 p={:?} eps={eps}", p);
            }
        }
        // the √2a form underestimates |z|^{x−1} on the top edge
        let legs = contour_decomposition(param(0.5, 0.0), 20.0, 1e-4).unwrap();
        assert!(legs.legs[3].norm() > legs.bounds().i4_spherical);
    }

    #[test]
    fn contour_domain() {
        assert!(contour_decomposition(param(0.0, 0.3), 20.0, 1e-4).is_err());
        assert!(contour_decomposition(param(0.5, 0.0), 0.5, 1e-4).is_err());
        assert!(contour_decomposition(param(0.5, 0.0), 20.0, 1.5).is_err());
    }
}
