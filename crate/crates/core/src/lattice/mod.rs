//! p-ary lattices `pZ^n ⊆ Λ(A) ⊆ Z^n`, their image mod p, exact ℓ∞ minimum
//! distance, and certificates turning a basis pair `AB = pI` into a
//! subgroup independent set of a fraction-graph power.

mod certificate;
mod shortest;
mod subgroup;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};

use crate::exact::{ExactError, ExactMatrix, Scalar};

pub use certificate::{certify, BoundCertificate, IndependenceMethod};
pub use shortest::{
    lambda_inf, lambda_inf_coefficient_box, lambda_inf_coset_scan, LambdaInf, LambdaMethod,
};
pub use subgroup::SubgroupSet;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    #[error("modulus must be at least 1")]
    InvalidModulus,
    #[error("basis matrix must have integer entries")]
    NonIntegral,
    #[error("A·B is not p·I")]
    NotPAry,
    #[error("vector has dimension {got}, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("{what} exceeds cap {cap}")]
    CapExceeded { what: &'static str, cap: u64 },
    #[error("modulus {0} does not fit in 64 bits")]
    ModulusTooLarge(BigInt),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// Lattice generated by the columns of an integer basis `A`, together with
/// an integer matrix `B` witnessing `AB = pI`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PAryLattice {
    basis: ExactMatrix,
    witness: ExactMatrix,
    modulus: BigInt,
}

impl PAryLattice {
    pub fn new(basis: ExactMatrix, witness: ExactMatrix, modulus: BigInt) -> Result<Self, LatticeError> {
        if modulus < BigInt::one() {
            return Err(LatticeError::InvalidModulus);
        }
        if !basis.is_integral() || !witness.is_integral() {
            return Err(LatticeError::NonIntegral);
        }
        let product = basis.try_mul(&witness)?;
        if !product.is_identity_multiple(&Scalar::from_integer(modulus.clone())) {
            return Err(LatticeError::NotPAry);
        }
        Ok(Self {
            basis,
            witness,
            modulus,
        })
    }

    pub fn basis(&self) -> &ExactMatrix {
        &self.basis
    }

    pub fn witness(&self) -> &ExactMatrix {
        &self.witness
    }

    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }

    pub fn dim(&self) -> usize {
        self.basis.order()
    }

    /// `|Λ / pZ^n| = |det B|`.
    pub fn index(&self) -> BigInt {
        self.witness.det().to_integer().abs()
    }

    pub fn subgroup(&self, cap: u64) -> Result<SubgroupSet, LatticeError> {
        let p = self
            .modulus
            .to_u64()
            .ok_or_else(|| LatticeError::ModulusTooLarge(self.modulus.clone()))?;
        if self.index() > BigInt::from(cap) {
            return Err(LatticeError::CapExceeded {
                what: "subgroup enumeration",
                cap,
            });
        }
        reduce_mod_p(&self.basis, p, cap)
    }
}

/// Columns of `A` reduced into `[0, p)`.
pub fn columns_mod_p(a: &ExactMatrix, p: u64) -> Result<Vec<Vec<u64>>, LatticeError> {
    let ints = a.to_integers().ok_or(LatticeError::NonIntegral)?;
    let n = a.order();
    let pb = BigInt::from(p);
    Ok((0..n)
        .map(|j| {
            (0..n)
                .map(|i| {
                    let r = ((&ints[i * n + j] % &pb) + &pb) % &pb;
                    r.to_u64().expect("residue below p")
                })
                .collect()
        })
        .collect())
}

/// The subgroup `{v mod p : v ∈ Λ(A)}` of `(Z/pZ)^n`, generated by the
/// columns of `A`.
pub fn reduce_mod_p(a: &ExactMatrix, p: u64, cap: u64) -> Result<SubgroupSet, LatticeError> {
    if p == 0 {
        return Err(LatticeError::InvalidModulus);
    }
    let cols = columns_mod_p(a, p)?;
    SubgroupSet::generated_by(p, a.order(), &cols, cap)
}

/// Representative of `x mod p` in `(-p/2, p/2]`.
pub fn centered(x: u64, p: u64) -> i128 {
    let x = (x % p) as i128;
    let p = p as i128;
    if 2 * x > p {
        x - p
    } else {
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ExactMatrix;

    fn five_halves() -> (ExactMatrix, ExactMatrix) {
        (
            ExactMatrix::from_i64_rows(&[&[2, 1], &[-1, 2]]).unwrap(),
            ExactMatrix::from_i64_rows(&[&[2, -1], &[1, 2]]).unwrap(),
        )
    }

    #[test]
    fn two_dim_subgroup_is_shannon_set() {
        let (a, _) = five_halves();
        let s = reduce_mod_p(&a, 5, 100).unwrap();
        let expected = SubgroupSet::generated_by(5, 2, &[vec![1, 2]], 100).unwrap();
        assert_eq!(s.elements(), expected.elements());
    }

    #[test]
    fn scalar_basis_reduces_to_zero() {
        for (n, p) in [(1usize, 3i64), (3, 7), (4, 2)] {
            let a = ExactMatrix::scalar(n, crate::exact::int(p));
            let s = reduce_mod_p(&a, p as u64, 10).unwrap();
            assert_eq!(s.elements(), vec![vec![0; n]]);
        }
    }

    #[test]
    fn p_ary_constructor_rejects_bad_witness() {
        let (a, b) = five_halves();
        assert!(PAryLattice::new(a.clone(), b.clone(), BigInt::from(5)).is_ok());
        assert_eq!(
            PAryLattice::new(a.clone(), b.clone(), BigInt::from(4)),
            Err(LatticeError::NotPAry)
        );
        assert_eq!(
            PAryLattice::new(a.clone(), b, BigInt::from(0)),
            Err(LatticeError::InvalidModulus)
        );
        let half = a.scale(&crate::exact::ratio(1, 2));
        assert_eq!(
            PAryLattice::new(half, a, BigInt::from(5)),
            Err(LatticeError::NonIntegral)
        );
    }

    #[test]
    fn centering_prefers_positive_half() {
        assert_eq!(centered(2, 4), 2);
        assert_eq!(centered(3, 4), -1);
        assert_eq!(centered(2, 5), 2);
        assert_eq!(centered(3, 5), -2);
        assert_eq!(centered(0, 5), 0);
    }
}
