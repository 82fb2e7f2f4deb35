use std::fmt;

use num_traits::{One, Zero};

use num_bigint::BigInt;
use num_integer::Integer;

use super::{char_poly_integer, det_exact, rat, MultiPoly, Rat, SquareMatrix, Var};

/// Dense univariate polynomial in `z`, coefficients in ascending degree.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<Rat>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn one() -> Self {
        UniPoly::new(vec![rat(1)])
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, at: &Rat) -> Rat {
        self.coeffs
            .iter()
            .rev()
            .fold(Rat::zero(), |acc, c| acc * at + c)
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return UniPoly::default();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }

    pub fn pow(&self, exp: u64) -> UniPoly {
        (0..exp).fold(UniPoly::one(), |acc, _| acc.mul(self))
    }

    pub fn to_multi(&self) -> MultiPoly {
        self.coeffs
            .iter()
            .enumerate()
            .fold(MultiPoly::zero(), |acc, (k, c)| {
                &acc + &MultiPoly::var(Var::Z).pow(k as u64).scale(c)
            })
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_multi())
    }
}

/// Exact characteristic polynomial `det(zI - m)`. With `d` the common
/// denominator of the entries, `det(zI - m) = d^-n det(dz I - dm)`.
pub fn char_poly(m: &SquareMatrix<Rat>) -> UniPoly {
    let n = m.dim();
    let d = m
        .rows()
        .flat_map(|r| r.iter())
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let scaled = m.map(|x| x.numer() * (&d / x.denom()));
    let coeffs = char_poly_integer(&scaled);
    let mut power = BigInt::one();
    let mut out = vec![Rat::zero(); n + 1];
    for k in (0..=n).rev() {
        out[k] = Rat::new(coeffs[k].clone(), power.clone());
        power *= &d;
    }
    UniPoly::new(out)
}

/// The same polynomial by evaluating the determinant at `z = 0..=n` and
/// interpolating in Newton form.
pub fn char_poly_interpolated(m: &SquareMatrix<Rat>) -> UniPoly {
    let n = m.dim();
    let xs: Vec<Rat> = (0..=n as i64).map(rat).collect();
    let mut dd: Vec<Rat> = xs.iter().map(|c| det_exact(&m.shifted(c))).collect();
    for level in 1..=n {
        for i in (level..=n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - level]);
        }
    }
    // Horner on the Newton basis: p = dd[0] + (z-x0)(dd[1] + (z-x1)(...))
    let mut acc = UniPoly::new(vec![dd[n].clone()]);
    for i in (0..n).rev() {
        let factor = UniPoly::new(vec![-xs[i].clone(), Rat::one()]);
        let mut next = acc.mul(&factor);
        if next.coeffs.is_empty() {
            next.coeffs.push(Rat::zero());
        }
        next.coeffs[0] += &dd[i];
        acc = UniPoly::new(next.coeffs);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rm(rows: &[&[i64]]) -> SquareMatrix<Rat> {
        SquareMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect())
    }

    fn up(c: &[i64]) -> UniPoly {
        UniPoly::new(c.iter().map(|&x| rat(x)).collect())
    }

    #[test]
    fn one_by_one() {
        assert_eq!(char_poly(&rm(&[&[7]])), up(&[-7, 1]));
    }

    #[test]
    fn zero_matrix() {
        assert_eq!(char_poly(&rm(&[&[0, 0], &[0, 0]])), up(&[0, 0, 1]));
    }

    #[test]
    fn directed_three_cycle_adjacency() {
        let p = rm(&[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]]);
        assert_eq!(char_poly(&p), up(&[-1, 0, 0, 1]));
    }

    #[test]
    fn empty_matrix() {
        assert_eq!(char_poly(&SquareMatrix::<Rat>::zeros(0)), UniPoly::one());
    }

    #[test]
    fn mul_and_eval() {
        let a = up(&[1, 1]);
        let sq = a.pow(2);
        assert_eq!(sq, up(&[1, 2, 1]));
        assert_eq!(sq.eval(&rat(3)), rat(16));
    }

    #[test]
    fn rational_entries_agree_with_interpolation() {
        let half = Rat::new(BigInt::from(1), BigInt::from(2));
        let third = Rat::new(BigInt::from(-1), BigInt::from(3));
        let m = SquareMatrix::from_rows(vec![
            vec![half.clone(), rat(2), third.clone()],
            vec![rat(0), third.clone(), rat(5)],
            vec![half, rat(1), rat(-4)],
        ]);
        assert_eq!(char_poly(&m), char_poly_interpolated(&m));
        for c in [-3, 0, 7] {
            assert_eq!(char_poly(&m).eval(&rat(c)), det_exact(&m.shifted(&rat(c))));
        }
    }
}
