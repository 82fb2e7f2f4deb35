//! Exact scalars, sparse multivariate polynomials, dense matrices and the
//! determinant routines everything else is built on.

mod assignment;
mod matrix;
mod modular;
mod poly;
mod univariate;

pub use assignment::{random_assignment, Assignment, EVALUATION_RANGE};
pub use matrix::{det_bareiss, det_exact, det_integer, det_symbolic, Ring, SquareMatrix};
pub use modular::{char_poly_integer, det_modular};
pub use poly::{Monomial, MultiPoly, Var};
pub use univariate::{char_poly, char_poly_interpolated, UniPoly};

use num_bigint::BigInt;
use num_rational::BigRational;

/// Exact rational scalar, always in lowest terms with a positive denominator.
pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q == BigInt::from(0) {
                return None;
            }
            Some(Rat::new(p, q))
        }
        None => s.parse::<BigInt>().ok().map(Rat::from_integer),
    }
}

pub fn pow_rat(base: &Rat, exp: u64) -> Rat {
    let mut acc = rat(1);
    let mut b = base.clone();
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            acc *= &b;
        }
        e >>= 1;
        if e > 0 {
            b = &b * &b;
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_rat_forms() {
        assert_eq!(parse_rat("3"), Some(rat(3)));
        assert_eq!(parse_rat("-6/4"), Some(Rat::new(BigInt::from(-3), BigInt::from(2))));
        assert_eq!(parse_rat("1/0"), None);
        assert_eq!(parse_rat("x"), None);
    }

    #[test]
    fn pow_rat_small() {
        assert_eq!(pow_rat(&rat(3), 0), rat(1));
        assert_eq!(pow_rat(&rat(-2), 5), rat(-32));
    }
}
