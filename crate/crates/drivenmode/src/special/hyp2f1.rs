//! Gauss hypergeometric function 2F1 for complex parameters.
//!
//! Power series inside |z| <= 1/2, the z -> 1-z linear transformation near
//! z = 1 (the region reached by the scattering solution as t -> +infinity).
//! The transformation coefficients are assembled with `recip_gamma`, so
//! parameter combinations that put a Gamma pole in a denominator silently
//! drop that term instead of producing NaN — this is what makes the
//! reflectionless cases come out as exact zeros.

use super::gamma::{gamma, recip_gamma};
use crate::error::{Error, Result};
use crate::C64;

const MAX_TERMS: usize = 100_000;
const REL_STOP: f64 = 1e-16;

fn is_nonpositive_int(z: C64) -> Option<i64> {
    if z.im != 0.0 || z.re > 0.0 {
        return None;
    }
    let n = z.re.round();
    if (z.re - n).abs() < 1e-12 {
        Some(n as i64)
    } else {
        None
    }
}

fn series(a: C64, b: C64, c: C64, z: C64) -> Result<C64> {
    let mut sum = C64::new(1.0, 0.0);
    let mut term = C64::new(1.0, 0.0);
    let mut small_streak = 0;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        term *= (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)) * z;
        sum += term;
        if term.norm() <= REL_STOP * sum.norm() {
            small_streak += 1;
            if small_streak >= 2 {
                return Ok(sum);
            }
        } else {
            small_streak = 0;
        }
    }
    Err(Error::Convergence {
        context: "hyp2f1 series",
        achieved: term.norm() / sum.norm().max(f64::MIN_POSITIVE),
        required: REL_STOP,
    })
}

fn terminating(n: u64, a: C64, b: C64, c: C64, z: C64) -> Result<C64> {
    // a = -n: polynomial of degree n
    let mut sum = C64::new(1.0, 0.0);
    let mut term = C64::new(1.0, 0.0);
    for k in 0..n {
        let kf = k as f64;
        let den = c + kf;
        if den.norm() < 1e-300 {
            return Err(Error::Domain(format!(
                "hyp2f1: c = {c} hits a pole inside the terminating sum"
            )));
        }
        term *= (a + kf) * (b + kf) / (den * (kf + 1.0)) * z;
        sum += term;
    }
    Ok(sum)
}

/// 2F1(a, b; c; z) with complex parameters.
///
/// Supported argument region: terminating cases (a or b a non-positive
/// integer) for any z, otherwise |z| < 1 reachable by the direct series or
/// the z -> 1-z transformation. c at a non-positive integer is a domain
/// error, as is a non-integer-safe transformation (c-a-b integral).
pub fn hyp2f1(a: C64, b: C64, c: C64, z: C64) -> Result<C64> {
    if let Some(n) = is_nonpositive_int(a) {
        return terminating((-n) as u64, a, b, c, z);
    }
    if let Some(n) = is_nonpositive_int(b) {
        return terminating((-n) as u64, b, a, c, z);
    }
    if is_nonpositive_int(c).is_some() {
        return Err(Error::Domain(format!(
            "hyp2f1: c = {c} is a non-positive integer"
        )));
    }
    if z.norm() <= 0.5 {
        return series(a, b, c, z);
    }
    let omz = 1.0 - z;
    if omz.norm() <= 0.75 {
        return transform_near_one(a, b, c, omz);
    }
    if z.norm() < 0.98 {
        return series(a, b, c, z);
    }
    Err(Error::Domain(format!(
        "hyp2f1: argument z = {z} outside the implemented transformation region"
    )))
}

/// 2F1(a, b; c; 1 - omz) with the complement supplied directly, for callers
/// whose argument is so close to 1 that forming 1 - z would round it away.
pub fn hyp2f1_one_minus(a: C64, b: C64, c: C64, omz: C64) -> Result<C64> {
    if is_nonpositive_int(c).is_some() {
        return Err(Error::Domain(format!(
            "hyp2f1: c = {c} is a non-positive integer"
        )));
    }
    if omz.norm() > 0.75 {
        return hyp2f1(a, b, c, 1.0 - omz);
    }
    transform_near_one(a, b, c, omz)
}

// linear transformation z -> 1-z
fn transform_near_one(a: C64, b: C64, c: C64, omz: C64) -> Result<C64> {
    let cab = c - a - b;
    if cab.im == 0.0 && (cab.re - cab.re.round()).abs() < 1e-8 {
        return Err(Error::Domain(
            "hyp2f1: c-a-b within 1e-8 of an integer; logarithmic case not implemented".into(),
        ));
    }
    for sub_c in [a + b - c + 1.0, cab + 1.0] {
        if is_nonpositive_int(sub_c).is_some() {
            return Err(Error::Domain(
                "hyp2f1: transformed series parameter is a non-positive integer".into(),
            ));
        }
    }
    let coef1 = gamma(c) * gamma(cab) * recip_gamma(c - a) * recip_gamma(c - b);
    let coef2 = gamma(c) * gamma(-cab) * recip_gamma(a) * recip_gamma(b) * omz.powc(cab);
    let f1 = if coef1.norm() == 0.0 {
        C64::new(0.0, 0.0)
    } else {
        series(a, b, a + b - c + 1.0, omz)?
    };
    let f2 = if coef2.norm() == 0.0 {
        C64::new(0.0, 0.0)
    } else {
        series(c - a, c - b, cab + 1.0, omz)?
    };
    Ok(coef1 * f1 + coef2 * f2)
}
