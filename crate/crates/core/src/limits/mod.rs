//! Numerics of the limit argument: the gap `Δ = a/b − p^{1/n}` with its
//! `6b²/n` bound, convergence tables, and scans of certified points.

mod convergence;
mod scan;

use num_bigint::BigInt;
use num_traits::Signed;
use serde_json::{json, Value};

use crate::construction::{derive, ConstructionError, ConstructionParams};
use crate::exact::{big, int, pow_int, to_decimal, Scalar};

pub use convergence::{convergence_table, convergence_csv, ConvergenceRow};
pub use scan::{point_gap, scan, scan_csv, spot_check, FamilyTag, ScanLimits, ScanPoint, SpotCheckReport};

/// Default number of decimal digits in root enclosures.
pub const ROOT_DIGITS: u32 = 60;

/// Enclosure `lower ≤ x^{1/n} ≤ upper` of a nonnegative integer root, with
/// `upper − lower ≤ 10^{−digits}`; `exact` when `lower = upper`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootInterval {
    pub lower: Scalar,
    pub upper: Scalar,
    pub exact: bool,
}

pub fn nth_root_interval(x: &BigInt, n: u32, digits: u32) -> RootInterval {
    assert!(n >= 1, "root degree must be positive");
    assert!(!x.is_negative(), "root of a negative number");
    let scale = pow_int(&BigInt::from(10), digits);
    let scaled = x * pow_int(&scale, n);
    let floor = scaled.nth_root(n);
    let exact = pow_int(&floor, n) == scaled;
    let lower = Scalar::new(floor.clone(), scale.clone());
    let upper = if exact {
        lower.clone()
    } else {
        Scalar::new(floor + 1, scale)
    };
    RootInterval { lower, upper, exact }
}

/// `Δ(n, k, b, r, s)` enclosed in an interval, with the `6b²/n` comparison.
#[derive(Debug, Clone)]
pub struct DeltaRecord {
    pub params: ConstructionParams,
    pub a: BigInt,
    pub p: BigInt,
    pub ratio: Scalar,
    pub root: RootInterval,
    pub delta_lower: Scalar,
    pub delta_upper: Scalar,
    pub bound: Scalar,
    pub hypotheses_met: bool,
}

impl DeltaRecord {
    /// `Δ ≤ 6b²/n`, decided on the upper end of the enclosure.
    pub fn bound_holds(&self) -> bool {
        self.delta_upper <= self.bound
    }

    pub fn to_json(&self, digits: usize) -> Value {
        json!({
            "params": self.params,
            "a": self.a.to_string(),
            "p": self.p.to_string(),
            "ratio": crate::exact::scalar_to_string(&self.ratio),
            "delta_lower": to_decimal(&self.delta_lower, digits),
            "delta_upper": to_decimal(&self.delta_upper, digits),
            "bound": crate::exact::scalar_to_string(&self.bound),
            "hypotheses_met": self.hypotheses_met,
            "bound_holds": self.bound_holds(),
        })
    }
}

/// `k, r ≤ b` and `s ≤ b^n`.
pub fn hypotheses_met(params: &ConstructionParams) -> bool {
    params.k <= params.b
        && params.r <= params.b
        && BigInt::from(params.s) <= pow_int(&BigInt::from(params.b), params.n)
}

/// `Δ = a/b − ((r/k·s^n + a^n)/(r/k + b^n))^{1/n}`. The fraction under the
/// root equals `p`.
pub fn delta(params: &ConstructionParams) -> Result<DeltaRecord, ConstructionError> {
    delta_with_digits(params, ROOT_DIGITS)
}

pub fn delta_with_digits(params: &ConstructionParams, digits: u32) -> Result<DeltaRecord, ConstructionError> {
    let t = derive(params)?;
    let b = BigInt::from(params.b);
    let inner = (big(BigInt::from(params.r)) / big(BigInt::from(params.k))
        * big(pow_int(&BigInt::from(params.s), params.n))
        + big(pow_int(&t.a, params.n)))
        / (big(BigInt::from(params.r)) / big(BigInt::from(params.k)) + big(pow_int(&b, params.n)));
    if inner != big(t.p.clone()) {
        return Err(ConstructionError::Identity(format!(
            "root argument {inner} differs from p = {}",
            t.p
        )));
    }
    let ratio = Scalar::new(t.a.clone(), b.clone());
    let root = nth_root_interval(&t.p, params.n, digits);
    let delta_lower = &ratio - &root.upper;
    let delta_upper = &ratio - &root.lower;
    let bound = int(6) * big(&b * &b) / int(params.n as i64);
    Ok(DeltaRecord {
        params: *params,
        a: t.a,
        p: t.p,
        ratio,
        root,
        delta_lower,
        delta_upper,
        bound,
        hypotheses_met: hypotheses_met(params),
    })
}
