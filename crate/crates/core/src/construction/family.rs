use serde_json::{json, Value};

use crate::exact::{big, is_p0, ExactMatrix, ExactError};
use crate::lattice::{certify, BoundCertificate};
use crate::report::{find, first_failure, Check, CheckStatus, Verdict};
use crate::Caps;

use super::{build_ab, build_xy, derive, ConstructionError, ConstructionParams, DerivedTriple};

/// Verification of one member of the family.
#[derive(Debug, Clone)]
pub struct FamilyReport {
    pub params: ConstructionParams,
    pub triple: DerivedTriple,
    pub a: ExactMatrix,
    pub b: ExactMatrix,
    pub checks: Vec<Check>,
    pub certificate: BoundCertificate,
    pub verdict: Verdict,
}

impl FamilyReport {
    pub fn is_valid(&self) -> bool {
        self.verdict.is_valid()
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        find(&self.checks, name)
    }

    pub fn to_json(&self) -> Value {
        let checks: serde_json::Map<String, Value> = self
            .checks
            .iter()
            .map(|c| (c.name.clone(), serde_json::to_value(c).expect("plain data")))
            .collect();
        json!({
            "params": self.params,
            "a": self.triple.a.to_string(),
            "p": self.triple.p.to_string(),
            "q": self.triple.q.to_string(),
            "checks": checks,
            "failed_check": first_failure(&self.checks),
            "certificate": self.certificate.to_json(),
            "verdict": self.verdict,
        })
    }
}

/// Runs the P0 test on `X`, compares `AB` with `pI` and `det B` with `p`,
/// and certifies the lattice of `A` (direct `λ∞` and independence).
/// Valid when the algebra checks pass, nothing fails, and `λ∞ ≥ q` is
/// established by the P0 test or by direct computation.
pub fn verify_family(params: &ConstructionParams, caps: &Caps) -> Result<FamilyReport, ConstructionError> {
    let triple = derive(params)?;
    let (x, _) = build_xy(params)?;
    let (a, b) = build_ab(params)?;
    let mut checks = Vec::new();

    match is_p0(&x, caps.p0_order) {
        Ok(v) => {
            let detail = match &v.witness {
                Some(w) => format!("violating subset {w:?}"),
                None => format!("{} principal minors nonnegative", v.minors_checked),
            };
            checks.push(Check::new("p0", CheckStatus::from_bool(v.is_p0), detail));
        }
        Err(e @ ExactError::CapExceeded { .. }) => {
            checks.push(Check::new("p0", CheckStatus::Skipped, e.to_string()));
        }
        Err(e) => return Err(e.into()),
    }

    let product = a.try_mul(&b)?;
    let p_scalar = big(triple.p.clone());
    checks.push(Check::new(
        "product",
        CheckStatus::from_bool(product.is_identity_multiple(&p_scalar)),
        format!("A·B = {}·I", triple.p),
    ));
    let det_b = b.det();
    checks.push(Check::new(
        "det",
        CheckStatus::from_bool(det_b == p_scalar),
        format!("det B = {det_b}"),
    ));

    let certificate = certify(&a, &b, &triple.p, &triple.q, caps);
    for name in ["lambda_inf", "independence", "subgroup_size"] {
        if let Some(c) = find(&certificate.checks, name) {
            checks.push(c.clone());
        }
    }

    let status = |name: &str| find(&checks, name).map(|c| c.status);
    let algebra = status("product") == Some(CheckStatus::Pass) && status("det") == Some(CheckStatus::Pass);
    let lambda_established =
        status("p0") == Some(CheckStatus::Pass) || status("lambda_inf") == Some(CheckStatus::Pass);
    let none_failed = checks.iter().all(|c| c.status != CheckStatus::Fail);
    let verdict = if algebra && lambda_established && none_failed {
        Verdict::Valid
    } else {
        Verdict::Invalid
    };
    Ok(FamilyReport {
        params: *params,
        triple,
        a,
        b,
        checks,
        certificate,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn report(n: u32, k: u64, b: u64, r: u64, s: u64) -> FamilyReport {
        verify_family(&ConstructionParams::new(n, k, b, r, s).unwrap(), &Caps::default()).unwrap()
    }

    #[test]
    fn five_halves_is_valid() {
        let r = report(2, 1, 2, 1, 0);
        assert!(r.is_valid(), "{:?}", r.checks);
        assert_eq!(r.certificate.lambda_inf, Some(BigInt::from(2)));
        let j = r.to_json();
        assert_eq!(j["p"], "5");
        assert_eq!(j["checks"]["p0"]["status"], "pass");
        assert_eq!(j["verdict"], "VALID");
    }

    #[test]
    fn spec_instances_are_valid() {
        let r = report(3, 1, 2, 1, 0);
        assert!(r.is_valid());
        assert!(r.certificate.lambda_inf.clone().unwrap() >= BigInt::from(18));
        let r = report(2, 1, 2, 1, 1);
        assert!(r.is_valid());
        assert!(r.certificate.lambda_inf.clone().unwrap() >= BigInt::from(3));
    }

    #[test]
    fn p0_skipped_above_cap_still_valid() {
        let caps = Caps {
            p0_order: 2,
            ..Caps::default()
        };
        let r = verify_family(&ConstructionParams::new(3, 1, 2, 1, 0).unwrap(), &caps).unwrap();
        assert_eq!(r.check("p0").unwrap().status, CheckStatus::Skipped);
        assert!(r.is_valid());
    }
}
