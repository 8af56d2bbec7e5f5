//! Complex Gamma function, Lanczos approximation.
//!
//! Uses the 15-term g = 607/128 coefficient set, which delivers close to
//! machine precision in double arithmetic for Re z >= 0.5; the reflection
//! formula covers the left half plane. `recip_gamma` is provided separately
//! because 1/Gamma is entire — it evaluates to exactly zero at the poles,
//! which downstream hypergeometric coefficient ratios rely on.

use crate::C64;
use std::f64::consts::PI;

const LANCZOS_G: f64 = 607.0 / 128.0;

const LANCZOS_C: [f64; 15] = [
    0.99999999999999709,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    3.3994649984811888699e-5,
    4.6523628927048575665e-5,
    -9.8374475304879564677e-5,
    1.5808870322491248884e-4,
    -2.1026444172410488319e-4,
    2.1743961811521264320e-4,
    -1.6431810653676389022e-4,
    8.4418223983852743293e-5,
    -2.6190838401581408670e-5,
    3.6899182659531622704e-6,
];

const SQRT_2PI: f64 = 2.5066282746310005;

// core Lanczos sum, valid for Re z >= 0.5
fn gamma_right(z: C64) -> C64 {
    let mut ser = C64::new(LANCZOS_C[0], 0.0);
    for (j, &c) in LANCZOS_C.iter().enumerate().skip(1) {
        ser += c / (z + j as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    // Gamma(z) = sqrt(2 pi) * t^(z + 1/2) * e^(-t) * ser / z
    SQRT_2PI * (t.ln() * (z + 0.5) - t).exp() * ser / z
}

/// Gamma(z) for complex z. Poles at non-positive integers return infinity.
pub fn gamma(z: C64) -> C64 {
    if z.re >= 0.5 {
        gamma_right(z)
    } else {
        // reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z)
        let s = (PI * z).sin();
        if s == C64::new(0.0, 0.0) {
            return C64::new(f64::INFINITY, 0.0);
        }
        PI / (s * gamma_right(1.0 - z))
    }
}

/// 1/Gamma(z), entire in z; exactly zero at the poles of Gamma.
pub fn recip_gamma(z: C64) -> C64 {
    if z.re >= 0.5 {
        1.0 / gamma_right(z)
    } else {
        if z.im == 0.0 && z.re == z.re.round() {
            // exact pole; sin(pi n) would only be zero up to rounding
            return C64::new(0.0, 0.0);
        }
        (PI * z).sin() * gamma_right(1.0 - z) / PI
    }
}
