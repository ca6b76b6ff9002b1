use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::exact::{big, pow_scalar, ExactMatrix, Scalar};

use super::{
    build_d, build_m_alpha, build_r_alpha, build_xy, check_det_identity, derive, ConstructionError,
    ConstructionParams,
};

/// `M_α·(R_α − I) = R_α + α·I`.
pub fn check_m_alpha_identity(n: usize, alpha: &Scalar) -> bool {
    let m = build_m_alpha(n, alpha);
    let r = build_r_alpha(n, alpha);
    let id = ExactMatrix::identity(n);
    &m * &(&r - &id) == &r + &id.scale(alpha)
}

/// `D_β·R_α·D_β^{−1} = β·R_{αβ^{−n}}`; false for `β = 0`.
pub fn check_dmd_identity(n: usize, alpha: &Scalar, beta: &Scalar) -> bool {
    if beta.is_zero() {
        return false;
    }
    let d = build_d(n, beta);
    let d_inv = build_d(n, &beta.recip());
    let lhs = &(&d * &build_r_alpha(n, alpha)) * &d_inv;
    let rhs = build_r_alpha(n, &(alpha * pow_scalar(beta, -(n as i64)))).scale(beta);
    lhs == rhs
}

/// Compares the entry-formula `X, Y` with
/// `(k·a^{n−1}/s)·D_{s/a}·M_{rs^n/(ka^n)}·D_{a/s}` and
/// `−k·b^{n−1}·D_{1/b}·M_{r/(kb^n)}·D_b`. Requires `s ≥ 1`.
pub fn check_factorization(params: &ConstructionParams) -> Result<bool, ConstructionError> {
    if params.s == 0 {
        return Err(ConstructionError::InvalidParams(
            "factorized form needs s >= 1".into(),
        ));
    }
    let t = derive(params)?;
    let n = params.order();
    let ni = params.n as i64;
    let (k, b, r, s) = (
        big(BigInt::from(params.k)),
        big(BigInt::from(params.b)),
        big(BigInt::from(params.r)),
        big(BigInt::from(params.s)),
    );
    let a = big(t.a);

    let x_alpha = &r * pow_scalar(&s, ni) / (&k * pow_scalar(&a, ni));
    if x_alpha < Scalar::zero() || x_alpha > Scalar::one() {
        return Err(ConstructionError::Identity(format!(
            "rs^n/(ka^n) = {x_alpha} outside [0, 1]"
        )));
    }
    let x_scale = &k * pow_scalar(&a, ni - 1) / &s;
    let x = (&(&build_d(n, &(&s / &a)) * &build_m_alpha(n, &x_alpha)) * &build_d(n, &(&a / &s)))
        .scale(&x_scale);

    let y_alpha = &r / (&k * pow_scalar(&b, ni));
    let y_scale = -(&k * pow_scalar(&b, ni - 1));
    let y = (&(&build_d(n, &b.recip()) * &build_m_alpha(n, &y_alpha)) * &build_d(n, &b)).scale(&y_scale);

    let (xe, ye) = build_xy(params)?;
    Ok(x == xe && y == ye)
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct IdentityTally {
    pub passed: usize,
    pub failed: usize,
}

impl IdentityTally {
    fn record(&mut self, ok: bool) {
        if ok {
            self.passed += 1;
        } else {
            self.failed += 1;
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentitySuiteReport {
    pub seed: u64,
    pub instances: usize,
    pub m_alpha_product: IdentityTally,
    pub diagonal_conjugation: IdentityTally,
    pub det_formula: IdentityTally,
    pub xy_factorization: IdentityTally,
}

impl IdentitySuiteReport {
    pub fn all_passed(&self) -> bool {
        [
            &self.m_alpha_product,
            &self.diagonal_conjugation,
            &self.det_formula,
            &self.xy_factorization,
        ]
        .iter()
        .all(|t| t.failed == 0 && t.passed == self.instances)
    }
}

fn random_rational(rng: &mut ChaCha8Rng, nonzero: bool) -> Scalar {
    loop {
        let num: i64 = rng.gen_range(-12..=12);
        let den: i64 = rng.gen_range(1..=9);
        if !(nonzero && num == 0) {
            return Scalar::new(BigInt::from(num), BigInt::from(den));
        }
    }
}

/// Checks each identity on `instances` random rational inputs drawn from a
/// seeded generator.
pub fn random_identity_suite(seed: u64, instances: usize) -> IdentitySuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = IdentitySuiteReport {
        seed,
        instances,
        m_alpha_product: IdentityTally::default(),
        diagonal_conjugation: IdentityTally::default(),
        det_formula: IdentityTally::default(),
        xy_factorization: IdentityTally::default(),
    };
    for _ in 0..instances {
        let n = rng.gen_range(1..=6);
        let alpha = random_rational(&mut rng, false);
        report.m_alpha_product.record(check_m_alpha_identity(n, &alpha));

        let beta = random_rational(&mut rng, true);
        report
            .diagonal_conjugation
            .record(check_dmd_identity(n, &alpha, &beta));

        let x = random_rational(&mut rng, false);
        let y = random_rational(&mut rng, false);
        report.det_formula.record(check_det_identity(n, &x, &y, &alpha));

        let b = rng.gen_range(1..=6);
        let params = ConstructionParams {
            n: rng.gen_range(1..=6),
            k: rng.gen_range(1..=6),
            b,
            r: rng.gen_range(0..=b),
            s: rng.gen_range(1..=8),
        };
        report
            .xy_factorization
            .record(check_factorization(&params).unwrap_or(false));
    }
    report
}
