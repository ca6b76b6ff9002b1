//! The parameterized lattice family: `(n, k, b, r, s)` determines
//! `a = k·b^n + s·b + r`, the integers `p, q`, and integer matrices `A, B`
//! with `AB = pI` whose lattice has `λ∞ ≥ q`.

mod family;
mod identities;
mod perturbation;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::exact::{big, int, pow_int, pow_scalar, ExactError, ExactMatrix, Scalar};

pub use family::{verify_family, FamilyReport};
pub use identities::{
    check_dmd_identity, check_factorization, check_m_alpha_identity, random_identity_suite,
    IdentitySuiteReport,
};
pub use perturbation::{bohman_perturbation, verify_perturbation, Perturbation, PerturbationReport};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConstructionError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("{what} is not an integer ({value})")]
    NonIntegral { what: &'static str, value: String },
    #[error("identity check failed: {0}")]
    Identity(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// The tuple `(n, k, b, r, s)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ConstructionParams {
    pub n: u32,
    pub k: u64,
    pub b: u64,
    pub r: u64,
    pub s: u64,
}

impl ConstructionParams {
    pub fn new(n: u32, k: u64, b: u64, r: u64, s: u64) -> Result<Self, ConstructionError> {
        let p = Self { n, k, b, r, s };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), ConstructionError> {
        let bad = |msg: String| Err(ConstructionError::InvalidParams(msg));
        if self.n < 1 {
            return bad("n must be at least 1".into());
        }
        if self.k < 1 {
            return bad("k must be at least 1".into());
        }
        if self.b < 1 {
            return bad("b must be at least 1".into());
        }
        if self.r > self.b {
            return bad(format!("r must not exceed b (r={}, b={})", self.r, self.b));
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.n as usize
    }
}

impl fmt::Display for ConstructionParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {}, {})", self.n, self.k, self.b, self.r, self.s)
    }
}

/// `(a, p, q)` for a parameter tuple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivedTriple {
    pub a: BigInt,
    pub p: BigInt,
    pub q: BigInt,
}

fn exact_div(num: BigInt, den: &BigInt, what: &'static str) -> Result<BigInt, ConstructionError> {
    let (quot, rem) = num.div_rem(den);
    if !rem.is_zero() {
        return Err(ConstructionError::NonIntegral {
            what,
            value: format!("{num}/{den}"),
        });
    }
    Ok(quot)
}

/// Computes `a`, `p`, `q` and checks `p = qs + k·a^{n−1}`,
/// `pb = qa − r·s^{n−1}`, `q ≥ 1` and `p/q ≤ a/b`.
pub fn derive(params: &ConstructionParams) -> Result<DerivedTriple, ConstructionError> {
    params.validate()?;
    let n = params.n;
    let (k, b, r, s) = (
        BigInt::from(params.k),
        BigInt::from(params.b),
        BigInt::from(params.r),
        BigInt::from(params.s),
    );
    let bn = pow_int(&b, n);
    let a = &k * &bn + &s * &b + &r;
    let den = &r + &k * &bn;
    let p = exact_div(pow_int(&s, n) * &r + &k * pow_int(&a, n), &den, "p")?;
    let q = exact_div(
        pow_int(&s, n - 1) * &r + &k * &b * pow_int(&a, n - 1),
        &den,
        "q",
    )?;

    let fail = |msg: &str| Err(ConstructionError::Identity(format!("{msg} for {params}")));
    if p != &q * &s + &k * pow_int(&a, n - 1) {
        return fail("p = qs + k·a^(n-1)");
    }
    if &p * &b != &q * &a - &r * pow_int(&s, n - 1) {
        return fail("pb = qa - r·s^(n-1)");
    }
    if q < BigInt::one() {
        return fail("q >= 1");
    }
    if &p * &b > &q * &a {
        return fail("p/q <= a/b");
    }
    Ok(DerivedTriple { a, p, q })
}

/// `M_α`: `α` above the diagonal, `−1` below.
pub fn build_m_alpha(n: usize, alpha: &Scalar) -> ExactMatrix {
    ExactMatrix::from_fn(n, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Less => alpha.clone(),
        std::cmp::Ordering::Greater => int(-1),
        std::cmp::Ordering::Equal => Scalar::zero(),
    })
}

/// `R_α`: ones on the subdiagonal and `−α` in the top-right corner.
pub fn build_r_alpha(n: usize, alpha: &Scalar) -> ExactMatrix {
    let mut m = ExactMatrix::zeros(n);
    for i in 1..n {
        m.set(i, i - 1, Scalar::one());
    }
    let corner = m.get(0, n - 1) - alpha;
    m.set(0, n - 1, corner);
    m
}

/// `D_β = diag(1, β, …, β^{n−1})`.
pub fn build_d(n: usize, beta: &Scalar) -> ExactMatrix {
    let diag: Vec<Scalar> = (0..n).map(|i| pow_scalar(beta, i as i64)).collect();
    ExactMatrix::diagonal(&diag)
}

/// Evaluates both sides of `det(x·R_α + y·I) = (−x)^n·α + y^n`.
pub fn check_det_identity(n: usize, x: &Scalar, y: &Scalar, alpha: &Scalar) -> bool {
    let lhs = (&build_r_alpha(n, alpha).scale(x) + &ExactMatrix::scalar(n, y.clone())).det();
    let rhs = pow_scalar(&-x, n as i64) * alpha + pow_scalar(y, n as i64);
    lhs == rhs
}

/// `X` and `Y` from their polynomial entry formulas (1-based `i, j`).
pub fn build_xy(params: &ConstructionParams) -> Result<(ExactMatrix, ExactMatrix), ConstructionError> {
    let triple = derive(params)?;
    let n = params.order();
    let (k, b, r, s) = (
        BigInt::from(params.k),
        BigInt::from(params.b),
        BigInt::from(params.r),
        BigInt::from(params.s),
    );
    let a = &triple.a;
    let nn = n as u32;
    let x = ExactMatrix::from_fn(n, |i, j| {
        if i < j {
            let d = (j - i) as u32;
            big(&r * pow_int(a, d - 1) * pow_int(&s, nn - (d + 1)))
        } else if i > j {
            let d = (i - j) as u32;
            big(-(&k * pow_int(a, nn - (d + 1)) * pow_int(&s, d - 1)))
        } else {
            Scalar::zero()
        }
    });
    let y = ExactMatrix::from_fn(n, |i, j| {
        if i < j {
            let d = (j - i) as u32;
            big(-(&r * pow_int(&b, d - 1)))
        } else if i > j {
            let d = (i - j) as u32;
            big(&k * pow_int(&b, nn - (d + 1)))
        } else {
            Scalar::zero()
        }
    });
    Ok((x, y))
}

/// `A = qI + X` and `B = ((a − r)/b)·I + Y`.
pub fn build_ab(params: &ConstructionParams) -> Result<(ExactMatrix, ExactMatrix), ConstructionError> {
    let triple = derive(params)?;
    let (x, y) = build_xy(params)?;
    let n = params.order();
    let shift = exact_div(
        &triple.a - BigInt::from(params.r),
        &BigInt::from(params.b),
        "(a - r)/b",
    )?;
    let a = &ExactMatrix::scalar(n, big(triple.q)) + &x;
    let b = &ExactMatrix::scalar(n, big(shift)) + &y;
    Ok((a, b))
}
