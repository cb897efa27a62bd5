//! Ring declarations and canonical prime ideals.

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::numeric::UniPoly;

/// Coefficient field of a monomial ring. Only used for display: monomial
/// computations never touch coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CoefficientField {
    Rationals,
    Prime(u64),
}

/// The concrete Noetherian ring a computation lives over.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RingSpec {
    Integers,
    UnivariateGf { modulus: u64, var: String },
    Monomial { field: CoefficientField, vars: Vec<String> },
}

impl RingSpec {
    pub fn is_pid(&self) -> bool {
        !matches!(self, RingSpec::Monomial { .. })
    }

    pub fn var_names(&self) -> &[String] {
        match self {
            RingSpec::Integers => &[],
            RingSpec::UnivariateGf { var, .. } => std::slice::from_ref(var),
            RingSpec::Monomial { vars, .. } => vars,
        }
    }

    /// Human rendering of a prime, e.g. `(2)`, `(x^2+1)`, `(x,y)`, `(0)`.
    pub fn format_prime(&self, p: &PrimeIdealRef) -> String {
        format!("({})", self.prime_generators(p).join(","))
    }

    /// Canonical generator strings of a prime.
    pub fn prime_generators(&self, p: &PrimeIdealRef) -> Vec<String> {
        match p {
            PrimeIdealRef::Zero => vec!["0".to_string()],
            PrimeIdealRef::Integer(n) => vec![n.to_string()],
            PrimeIdealRef::Irreducible(f) => vec![f.format_with(self.poly_var())],
            PrimeIdealRef::Variables(s) => s
                .iter()
                .map(|&i| self.var_names().get(i).cloned().unwrap_or_else(|| format!("x{}", i + 1)))
                .collect(),
        }
    }

    pub fn format_elem(&self, e: &PidElem) -> String {
        match e {
            PidElem::Int(n) => n.to_string(),
            PidElem::Poly(f) => f.format_with(self.poly_var()),
        }
    }

    fn poly_var(&self) -> &str {
        match self {
            RingSpec::UnivariateGf { var, .. } => var,
            _ => "x",
        }
    }

    /// Whether `p` is syntactically a prime of this ring.
    pub fn owns(&self, p: &PrimeIdealRef) -> bool {
        match (self, p) {
            (_, PrimeIdealRef::Zero) => true,
            (RingSpec::Integers, PrimeIdealRef::Integer(_)) => true,
            (RingSpec::UnivariateGf { modulus, .. }, PrimeIdealRef::Irreducible(f)) => f.modulus() == *modulus,
            (RingSpec::Monomial { vars, .. }, PrimeIdealRef::Variables(s)) => {
                !s.is_empty() && s.iter().all(|&i| i < vars.len())
            }
            _ => false,
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Integers => write!(f, "Z"),
            RingSpec::UnivariateGf { modulus, var } => write!(f, "GF({modulus})[{var}]"),
            RingSpec::Monomial { field, vars } => {
                match field {
                    CoefficientField::Rationals => write!(f, "Q")?,
                    CoefficientField::Prime(p) => write!(f, "GF({p})")?,
                }
                write!(f, "[{}] monomial", vars.join(","))
            }
        }
    }
}

/// An element of one of the principal ideal domain backends.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PidElem {
    Int(BigInt),
    Poly(UniPoly),
}

/// A prime ideal in canonical form. Variant order, then the payload order,
/// gives the lexicographic tiebreak used by canonical well-orders.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PrimeIdealRef {
    Zero,
    /// positive prime integer
    Integer(BigInt),
    /// monic irreducible over GF(p)
    Irreducible(UniPoly),
    /// sorted, nonempty variable index set
    Variables(Vec<usize>),
}

impl PrimeIdealRef {
    pub fn is_zero(&self) -> bool {
        matches!(self, PrimeIdealRef::Zero)
    }

    /// Ideal containment `self ⊆ other`.
    pub fn contained_in(&self, other: &PrimeIdealRef) -> bool {
        match (self, other) {
            (PrimeIdealRef::Zero, _) => true,
            (PrimeIdealRef::Variables(a), PrimeIdealRef::Variables(b)) => a.iter().all(|i| b.contains(i)),
            (a, b) => a == b,
        }
    }

    /// Strict containment `self ⊊ other`; this is the specialization order.
    pub fn strictly_below(&self, other: &PrimeIdealRef) -> bool {
        self != other && self.contained_in(other)
    }

    /// `self + other = (1)`. Distinct nonzero primes of a PID are maximal,
    /// hence comaximal; sums of monomial primes are never the unit ideal.
    pub fn comaximal(&self, other: &PrimeIdealRef) -> bool {
        match (self, other) {
            (PrimeIdealRef::Integer(a), PrimeIdealRef::Integer(b)) => a != b,
            (PrimeIdealRef::Irreducible(a), PrimeIdealRef::Irreducible(b)) => a != b,
            _ => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn containment_and_comaximality() {
        let x = PrimeIdealRef::Variables(vec![0]);
        let xy = PrimeIdealRef::Variables(vec![0, 1]);
        let y = PrimeIdealRef::Variables(vec![1]);
        assert!(x.strictly_below(&xy));
        assert!(!xy.contained_in(&x));
        assert!(!x.contained_in(&y));
        assert!(!x.comaximal(&y));
        let two = PrimeIdealRef::Integer(BigInt::from(2));
        let three = PrimeIdealRef::Integer(BigInt::from(3));
        assert!(two.comaximal(&three));
        assert!(!two.comaximal(&two));
        assert!(PrimeIdealRef::Zero.strictly_below(&two));
        assert!(!PrimeIdealRef::Zero.comaximal(&two));
    }

    #[test]
    fn rendering() {
        let ring = RingSpec::Monomial {
            field: CoefficientField::Rationals,
            vars: vec!["x".into(), "y".into()],
        };
        assert_eq!(ring.format_prime(&PrimeIdealRef::Variables(vec![0, 1])), "(x,y)");
        assert_eq!(ring.format_prime(&PrimeIdealRef::Zero), "(0)");
        assert_eq!(ring.to_string(), "Q[x,y] monomial");
        let gf = RingSpec::UnivariateGf { modulus: 5, var: "t".into() };
        let f = UniPoly::from_i64(5, &[1, 0, 1]);
        assert_eq!(gf.format_prime(&PrimeIdealRef::Irreducible(f)), "(t^2+1)");
    }
}
