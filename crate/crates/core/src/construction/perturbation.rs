use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::exact::{big, is_p0, pow_int, ratio, scalar_to_string, ExactError, ExactMatrix, Scalar};
use crate::report::{first_failure, Check, CheckStatus, Verdict};

use super::{build_ab, ConstructionError, ConstructionParams};

/// The perturbed pair `(A', B')` with targets `p', q'`.
#[derive(Debug, Clone)]
pub struct Perturbation {
    pub d: u32,
    pub ell: u64,
    pub m: BigInt,
    pub p_prime: Scalar,
    pub q_prime: Scalar,
    pub b: ExactMatrix,
    pub b_prime: ExactMatrix,
    pub a_prime: ExactMatrix,
}

/// Builds every piece without asserting integrality.
fn build_parts(d: u32, ell: u64) -> Result<Perturbation, ConstructionError> {
    if d < 2 {
        return Err(ConstructionError::InvalidParams("d must be at least 2".into()));
    }
    if ell < 1 {
        return Err(ConstructionError::InvalidParams("ell must be at least 1".into()));
    }
    let n = d as usize;
    let l = BigInt::from(ell);
    let two = BigInt::from(2);
    let m = &l * pow_int(&two, d) + pow_int(&two, d - 1) + 1;
    // m is odd, so (m - 1)/2 is exact
    let p_prime = &l * pow_int(&m, d - 1) + pow_int(&m, d - 2) * ((&m - 1) / 2);
    let p_prime = big(p_prime);
    let q_prime = &p_prime * Scalar::from_integer(two.clone()) / big(m.clone());

    let params = ConstructionParams::new(d, ell, 2, 1, 1u64 << (d - 2))?;
    let (_, b) = build_ab(&params)?;

    let mut c = ExactMatrix::zeros(n);
    for i in 1..n {
        c.set(i, i - 1, ratio(1, 2));
    }
    let mut c_tilde = c.clone();
    if n >= 2 {
        c_tilde.set(n - 1, n - 2, Scalar::from_integer(BigInt::from(0)));
    }
    let geometric = (&ExactMatrix::identity(n) - &c).inverse()?;
    let shift = big(pow_int(&two, d - 2));
    let b_prime = &b + &(&c_tilde * &geometric).scale(&shift);
    let a_prime = match b_prime.inverse() {
        Ok(inv) => inv.scale(&p_prime),
        Err(ExactError::Singular) => {
            return Err(ConstructionError::Identity("B' is singular".into()));
        }
        Err(e) => return Err(e.into()),
    };
    Ok(Perturbation {
        d,
        ell,
        m,
        p_prime,
        q_prime,
        b,
        b_prime,
        a_prime,
    })
}

/// `m = ℓ·2^d + 2^{d−1} + 1`, `p' = ℓ·m^{d−1} + m^{d−2}(m−1)/2`,
/// `q' = 2p'/m`, `B' = B + 2^{d−2}·C̃·(I − C)^{−1}`, `A' = p'·B'^{−1}`, where
/// `B` comes from `(d, ℓ, 2, 1, 2^{d−2})`. Fails when `p'` or `q'` is not an
/// integer.
pub fn bohman_perturbation(d: u32, ell: u64) -> Result<Perturbation, ConstructionError> {
    let parts = build_parts(d, ell)?;
    for (what, v) in [("p'", &parts.p_prime), ("q'", &parts.q_prime)] {
        if !v.is_integer() {
            return Err(ConstructionError::NonIntegral {
                what,
                value: scalar_to_string(v),
            });
        }
    }
    Ok(parts)
}

#[derive(Debug, Clone)]
pub struct PerturbationReport {
    pub d: u32,
    pub ell: u64,
    pub m: BigInt,
    pub p_prime: Scalar,
    pub q_prime: Scalar,
    pub det_b_prime: Scalar,
    pub b_prime: ExactMatrix,
    pub a_prime: ExactMatrix,
    pub checks: Vec<Check>,
    pub verdict: Verdict,
}

impl PerturbationReport {
    pub fn is_valid(&self) -> bool {
        self.verdict.is_valid()
    }

    pub fn to_json(&self) -> Value {
        let rows = |m: &ExactMatrix| -> Vec<Vec<String>> {
            m.rows().map(|r| r.iter().map(scalar_to_string).collect()).collect()
        };
        json!({
            "d": self.d,
            "ell": self.ell,
            "m": self.m.to_string(),
            "p_prime": scalar_to_string(&self.p_prime),
            "q_prime": scalar_to_string(&self.q_prime),
            "detB_prime": scalar_to_string(&self.det_b_prime),
            "B_prime": rows(&self.b_prime),
            "A_prime": rows(&self.a_prime),
            "checks": self.checks,
            "failed_check": first_failure(&self.checks),
            "verdict": self.verdict,
        })
    }
}

/// Checks `A'B' = p'I`, `det B' = p'`, integrality of `A'` and that
/// `A' − q'I` is P0. Non-integral targets are recorded as a failing check
/// rather than an error.
pub fn verify_perturbation(d: u32, ell: u64, p0_cap: usize) -> Result<PerturbationReport, ConstructionError> {
    let parts = build_parts(d, ell)?;
    let n = d as usize;
    let mut checks = Vec::new();
    let targets = parts.p_prime.is_integer() && parts.q_prime.is_integer();
    checks.push(Check::new(
        "targets_integral",
        CheckStatus::from_bool(targets),
        format!(
            "p' = {}, q' = {}",
            scalar_to_string(&parts.p_prime),
            scalar_to_string(&parts.q_prime)
        ),
    ));
    let product = &parts.a_prime * &parts.b_prime;
    checks.push(Check::new(
        "product",
        CheckStatus::from_bool(product.is_identity_multiple(&parts.p_prime)),
        "A'·B' = p'·I",
    ));
    let det = parts.b_prime.det();
    checks.push(Check::new(
        "det",
        CheckStatus::from_bool(det == parts.p_prime),
        format!("det B' = {}", scalar_to_string(&det)),
    ));
    checks.push(Check::new(
        "integral",
        CheckStatus::from_bool(parts.a_prime.is_integral()),
        "",
    ));
    let shifted = &parts.a_prime - &ExactMatrix::scalar(n, parts.q_prime.clone());
    match is_p0(&shifted, p0_cap) {
        Ok(v) => checks.push(Check::new(
            "p0",
            CheckStatus::from_bool(v.is_p0),
            match v.witness {
                Some(w) => format!("violating subset {w:?}"),
                None => format!("{} principal minors nonnegative", v.minors_checked),
            },
        )),
        Err(e @ ExactError::CapExceeded { .. }) => {
            checks.push(Check::new("p0", CheckStatus::Skipped, e.to_string()));
        }
        Err(e) => return Err(e.into()),
    }
    let verdict = if checks.iter().all(|c| c.status == CheckStatus::Pass) {
        Verdict::Valid
    } else {
        Verdict::Invalid
    };
    Ok(PerturbationReport {
        d,
        ell,
        m: parts.m,
        p_prime: parts.p_prime,
        q_prime: parts.q_prime,
        det_b_prime: det,
        b_prime: parts.b_prime,
        a_prime: parts.a_prime,
        checks,
        verdict,
    })
}
