//! Exact arithmetic: big integers, prime fields, GF(p)[x], factorization and
//! normal forms over Euclidean domains.

pub mod euclid;
pub mod factor;
pub mod gf;
pub mod integer;
pub mod lattice;
pub mod matrix;
pub mod unipoly;

use thiserror::Error;

pub use euclid::{EuclideanRing, GfPolyRing, IntegerRing};
pub use factor::{factor_univariate_gf, factor_univariate_gf_grouped, is_irreducible_brute, is_irreducible_gf};
pub use gf::GfElement;
pub use integer::{factor_integer, factor_integer_grouped, is_prime, is_prime_u64, Integer};
pub use lattice::Lattice;
pub use matrix::{smith_normal_form, Matrix, NormalFormResult};
pub use unipoly::UniPoly;

use crate::ring::PidElem;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NumericError {
    #[error("{0} is not prime")]
    NotPrime(String),
    #[error("expected a positive integer, got {0}")]
    NonPositive(String),
    #[error("cannot factor the zero polynomial")]
    ZeroPolynomial,
    #[error("matrix mixes entries from different rings")]
    MixedDomain,
    #[error("ragged matrix: row {row} has {found} entries, expected {expected}")]
    Ragged { row: usize, found: usize, expected: usize },
}

/// Smith normal form of a matrix whose entry types are only known at run
/// time. All entries must come from one Euclidean domain.
pub fn smith_normal_form_dyn(cols: usize, rows: &[Vec<PidElem>]) -> Result<NormalFormResult<PidElem>, NumericError> {
    for (i, r) in rows.iter().enumerate() {
        if r.len() != cols {
            return Err(NumericError::Ragged { row: i, found: r.len(), expected: cols });
        }
    }
    let first = rows.iter().flatten().next();
    match first {
        None | Some(PidElem::Int(_)) => {
            let ring = IntegerRing;
            let m = lift(&ring, cols, rows)?;
            Ok(lower(&ring, smith_normal_form(&ring, &m)))
        }
        Some(PidElem::Poly(f)) => {
            let ring = GfPolyRing::new(f.modulus(), "x");
            let m = lift(&ring, cols, rows)?;
            Ok(lower(&ring, smith_normal_form(&ring, &m)))
        }
    }
}

fn lift<R: EuclideanRing>(ring: &R, cols: usize, rows: &[Vec<PidElem>]) -> Result<Matrix<R::Elem>, NumericError> {
    let data = rows
        .iter()
        .map(|r| r.iter().map(|e| ring.from_pid_elem(e).ok_or(NumericError::MixedDomain)).collect())
        .collect::<Result<Vec<Vec<_>>, _>>()?;
    Ok(Matrix::from_rows(cols, data))
}

fn lower<R: EuclideanRing>(ring: &R, res: NormalFormResult<R::Elem>) -> NormalFormResult<PidElem> {
    let conv = |m: &Matrix<R::Elem>| {
        Matrix::from_rows(
            m.ncols(),
            m.rows().iter().map(|r| r.iter().map(|e| ring.to_pid_elem(e)).collect()).collect(),
        )
    };
    NormalFormResult {
        diagonal: res.diagonal.iter().map(|e| ring.to_pid_elem(e)).collect(),
        left: conv(&res.left),
        right: conv(&res.right),
        right_inverse: conv(&res.right_inverse),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn dynamic_snf_rejects_mixed_entries() {
        let rows = vec![vec![PidElem::Int(BigInt::from(2)), PidElem::Poly(UniPoly::x(3))]];
        assert_eq!(smith_normal_form_dyn(2, &rows), Err(NumericError::MixedDomain));
    }

    #[test]
    fn dynamic_snf_integer_path() {
        let rows = vec![
            vec![PidElem::Int(BigInt::from(2)), PidElem::Int(BigInt::from(4))],
            vec![PidElem::Int(BigInt::from(6)), PidElem::Int(BigInt::from(8))],
        ];
        let res = smith_normal_form_dyn(2, &rows).unwrap();
        assert_eq!(res.diagonal, vec![PidElem::Int(BigInt::from(2)), PidElem::Int(BigInt::from(4))]);
    }
}
