use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};
use serde::Serialize;
use serde_json::{json, Value};

use crate::exact::{ExactMatrix, Scalar};
use crate::graphs::FractionGraphPower;
use crate::report::{first_failure, Check, CheckStatus, Verdict};
use crate::Caps;

use super::{lambda_inf_coefficient_box, lambda_inf_coset_scan, LambdaMethod, SubgroupSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IndependenceMethod {
    /// Every element of the enumerated subgroup was checked.
    Explicit,
    /// The subgroup is too large to list; independence follows from `λ∞ ≥ q`.
    LambdaBound,
    NotEstablished,
}

/// Outcome of turning a pair `AB = pI` into the bound
/// `α_grp(E_{p/q}^{⊠n}) ≥ |det B|`.
#[derive(Debug, Clone)]
pub struct BoundCertificate {
    pub n: usize,
    pub p: BigInt,
    pub q: BigInt,
    pub det_b: Option<BigInt>,
    pub lambda_inf: Option<BigInt>,
    pub lambda_method: Option<LambdaMethod>,
    pub independent: bool,
    pub independence: IndependenceMethod,
    pub checks: Vec<Check>,
    pub verdict: Verdict,
    pub subgroup: Option<SubgroupSet>,
}

impl BoundCertificate {
    pub fn is_valid(&self) -> bool {
        self.verdict.is_valid()
    }

    /// `|det B|`, the certified lower bound, when valid.
    pub fn bound(&self) -> Option<BigInt> {
        if self.is_valid() {
            self.det_b.as_ref().map(Signed::abs)
        } else {
            None
        }
    }

    pub fn failed_check(&self) -> Option<String> {
        first_failure(&self.checks)
    }

    /// Human-readable claim, e.g. `α_grp(E_{5/2}^⊠2) ≥ 5`.
    pub fn claim(&self) -> Option<String> {
        self.bound()
            .map(|b| format!("α_grp(E_{{{}/{}}}^⊠{}) ≥ {}", self.p, self.q, self.n, b))
    }

    pub fn to_json(&self) -> Value {
        let opt = |v: &Option<BigInt>| v.as_ref().map_or(Value::Null, |x| json!(x.to_string()));
        json!({
            "n": self.n,
            "p": self.p.to_string(),
            "q": self.q.to_string(),
            "detB": opt(&self.det_b),
            "lambda_inf": opt(&self.lambda_inf),
            "lambda_method": self.lambda_method,
            "independent": self.independent,
            "independence_method": self.independence,
            "bound": opt(&self.bound()),
            "claim": self.claim(),
            "checks": self.checks,
            "failed_check": self.failed_check(),
            "verdict": self.verdict,
        })
    }
}

/// Verifies `AB = pI`, computes `λ∞(Λ(A))` and `|det B|`, and checks that
/// `S = Λ mod p` is independent in `E_{p/q}^{⊠n}`. Never panics on bad
/// input: failures are recorded as failing checks.
pub fn certify(a: &ExactMatrix, b: &ExactMatrix, p: &BigInt, q: &BigInt, caps: &Caps) -> BoundCertificate {
    let n = a.order();
    let mut cert = BoundCertificate {
        n,
        p: p.clone(),
        q: q.clone(),
        det_b: None,
        lambda_inf: None,
        lambda_method: None,
        independent: false,
        independence: IndependenceMethod::NotEstablished,
        checks: Vec::new(),
        verdict: Verdict::Invalid,
        subgroup: None,
    };
    let finish = |mut cert: BoundCertificate| {
        let required = ["parameters", "integral", "product", "lambda_inf", "independence"];
        let all_ok = required.iter().all(|name| {
            cert.checks
                .iter()
                .any(|c| c.name == *name && c.status.is_ok())
        }) && cert.checks.iter().all(|c| c.status != CheckStatus::Fail);
        cert.verdict = if all_ok { Verdict::Valid } else { Verdict::Invalid };
        cert
    };

    let params_ok = p >= &BigInt::one() && q >= &BigInt::one() && b.order() == n;
    cert.checks.push(Check::new(
        "parameters",
        CheckStatus::from_bool(params_ok),
        if params_ok {
            String::new()
        } else {
            format!("need p, q >= 1 and equal orders (A is {n}, B is {})", b.order())
        },
    ));
    if !params_ok {
        return finish(cert);
    }
    let integral = a.is_integral() && b.is_integral();
    cert.checks.push(Check::new("integral", CheckStatus::from_bool(integral), ""));
    if !integral {
        return finish(cert);
    }
    let product_ok = a
        .try_mul(b)
        .map(|m| m.is_identity_multiple(&Scalar::from_integer(p.clone())))
        .unwrap_or(false);
    cert.checks.push(Check::new(
        "product",
        CheckStatus::from_bool(product_ok),
        format!("A·B = {p}·I"),
    ));
    if !product_ok {
        return finish(cert);
    }
    let det_b = b.det().to_integer();
    let index = det_b.abs();
    cert.det_b = Some(det_b);

    // explicit subgroup when small enough
    let p_small = p.to_u64();
    let subgroup = match p_small {
        Some(pu) if index <= BigInt::from(caps.enumeration) => {
            super::reduce_mod_p(a, pu, caps.enumeration).ok()
        }
        _ => None,
    };

    let lambda = match &subgroup {
        Some(s) => Ok((BigInt::from(lambda_inf_coset_scan(s)), LambdaMethod::CosetScan)),
        None => lambda_inf_coefficient_box(&super::PAryLattice::new(a.clone(), b.clone(), p.clone()).expect("checked"), caps.coefficient_box)
            .map(|v| (v, LambdaMethod::CoefficientBox)),
    };
    let lambda_ok = match lambda {
        Ok((value, method)) => {
            let ok = &value >= q;
            cert.checks.push(Check::new(
                "lambda_inf",
                CheckStatus::from_bool(ok),
                format!("λ∞ = {value}, q = {q}"),
            ));
            cert.lambda_inf = Some(value);
            cert.lambda_method = Some(method);
            Some(ok)
        }
        Err(e) => {
            cert.checks.push(Check::new("lambda_inf", CheckStatus::Skipped, e.to_string()));
            None
        }
    };

    match subgroup {
        Some(s) => {
            let size_ok = BigInt::from(s.len()) == index;
            cert.checks.push(Check::new(
                "subgroup_size",
                CheckStatus::from_bool(size_ok),
                format!("|S| = {}, |det B| = {index}", s.len()),
            ));
            let graph = FractionGraphPower::new(
                p_small.expect("subgroup built"),
                q.to_u64().unwrap_or(u64::MAX),
                n,
            );
            let independent = graph.map(|g| g.is_independent(&s)).unwrap_or(false);
            cert.checks.push(Check::new(
                "independence",
                CheckStatus::from_bool(independent),
                "every nonzero element checked",
            ));
            cert.independent = independent;
            cert.independence = IndependenceMethod::Explicit;
            cert.subgroup = Some(s);
        }
        None => {
            let status = match lambda_ok {
                Some(true) => CheckStatus::Implied,
                Some(false) => CheckStatus::Fail,
                None => CheckStatus::Skipped,
            };
            cert.checks.push(Check::new(
                "independence",
                status,
                "subgroup above enumeration cap; follows from λ∞ ≥ q",
            ));
            cert.independent = status == CheckStatus::Implied;
            if cert.independent {
                cert.independence = IndependenceMethod::LambdaBound;
            }
        }
    }
    finish(cert)
}
