use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{MultiPoly, Rat};
use crate::error::{Error, Result};

/// Commutative ring operations needed by the matrix builders.
pub trait Ring:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
{
}

impl<T> Ring for T where
    T: Clone
        + Debug
        + PartialEq
        + Zero
        + One
        + Neg<Output = T>
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
{
}

/// Dense row-major square matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct SquareMatrix<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: Clone> SquareMatrix<T> {
    pub fn filled(n: usize, value: T) -> Self {
        SquareMatrix {
            n,
            data: vec![value; n * n],
        }
    }

    /// Panics when the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            assert_eq!(row.len(), n, "matrix rows must have length {n}");
            data.extend(row);
        }
        SquareMatrix { n, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.n + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut T {
        &mut self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[T]> {
        (0..self.n).map(move |i| self.row(i))
    }

    /// Principal submatrix on the given indices, in the given order.
    pub fn principal(&self, idx: &[usize]) -> Self {
        let mut data = Vec::with_capacity(idx.len() * idx.len());
        for &i in idx {
            for &j in idx {
                data.push(self.get(i, j).clone());
            }
        }
        SquareMatrix { n: idx.len(), data }
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> SquareMatrix<U> {
        SquareMatrix {
            n: self.n,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn try_map<U, E>(&self, f: impl FnMut(&T) -> std::result::Result<U, E>) -> std::result::Result<SquareMatrix<U>, E> {
        Ok(SquareMatrix {
            n: self.n,
            data: self.data.iter().map(f).collect::<std::result::Result<_, _>>()?,
        })
    }

    pub fn transpose(&self) -> Self {
        let mut out = self.clone();
        for i in 0..self.n {
            for j in 0..self.n {
                out.set(i, j, self.get(j, i).clone());
            }
        }
        out
    }
}

impl<T: Ring> SquareMatrix<T> {
    pub fn zeros(n: usize) -> Self {
        Self::filled(n, T::zero())
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    pub fn neg(&self) -> Self {
        self.map(|x| -x.clone())
    }

    /// `c*I - self`.
    pub fn shifted(&self, c: &T) -> Self {
        let mut out = self.neg();
        for i in 0..self.n {
            let v = out.get(i, i).clone() + c.clone();
            out.set(i, i, v);
        }
        out
    }

    /// Row vector times matrix.
    pub fn left_mul(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.n);
        (0..self.n)
            .map(|j| {
                (0..self.n).fold(T::zero(), |acc, i| {
                    if v[i].is_zero() || self.get(i, j).is_zero() {
                        acc
                    } else {
                        acc + v[i].clone() * self.get(i, j).clone()
                    }
                })
            })
            .collect()
    }
}

/// Fraction-free (Bareiss) determinant over the integers.
/// Exact determinant of an integer matrix. Small matrices use fraction-free
/// elimination, larger ones the multi-modular routine.
pub fn det_integer(m: &SquareMatrix<BigInt>) -> BigInt {
    if m.dim() <= BAREISS_MAX_DIM {
        det_bareiss(m)
    } else {
        super::modular::det_modular(m)
    }
}

const BAREISS_MAX_DIM: usize = 12;

/// Bareiss fraction-free elimination with row pivoting.
pub fn det_bareiss(m: &SquareMatrix<BigInt>) -> BigInt {
    let n = m.dim();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m.rows().map(|r| r.to_vec()).collect();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        let (top, bottom) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        let pivot = &pivot_row[k];
        for row in bottom.iter_mut() {
            let lead = row[k].clone();
            for j in k + 1..n {
                let mut v = &row[j] * pivot;
                if !lead.is_zero() && !pivot_row[j].is_zero() {
                    v -= &lead * &pivot_row[j];
                }
                // exact by Sylvester's identity
                row[j] = if prev.is_one() { v } else { v / &prev };
            }
            row[k] = BigInt::zero();
        }
        prev = top[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Exact determinant of a rational matrix. Each row is scaled to integers
/// and the fraction-free elimination runs on the result.
pub fn det_exact(m: &SquareMatrix<Rat>) -> Rat {
    let n = m.dim();
    let mut scale = BigInt::one();
    let mut rows = Vec::with_capacity(n);
    for row in m.rows() {
        let l = row
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        rows.push(
            row.iter()
                .map(|x| x.numer() * (&l / x.denom()))
                .collect::<Vec<_>>(),
        );
        scale *= l;
    }
    let d = det_integer(&SquareMatrix::from_rows(rows));
    let out = Rat::new(d, scale);
    debug_assert!(!out.denom().is_negative());
    out
}

/// Exact polynomial determinant by Laplace expansion, memoized on the set of
/// columns already used by the leading rows.
pub fn det_symbolic(m: &SquareMatrix<MultiPoly>, limit: usize) -> Result<MultiPoly> {
    let n = m.dim();
    if n > limit {
        return Err(Error::SymbolicGuard { dim: n, limit });
    }
    if n == 0 {
        return Ok(MultiPoly::one());
    }
    let full = (1usize << n) - 1;
    let mut dp: Vec<Option<MultiPoly>> = vec![None; 1 << n];
    dp[0] = Some(MultiPoly::one());
    // masks grouped by popcount so each row is processed once
    let mut by_count: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    for mask in 0..=full {
        by_count[mask.count_ones() as usize].push(mask);
    }
    for (row, masks) in by_count.iter().enumerate().take(n) {
        for &mask in masks {
            let Some(acc) = dp[mask].take() else { continue };
            if acc.is_zero() {
                continue;
            }
            for col in 0..n {
                if mask & (1 << col) != 0 {
                    continue;
                }
                let entry = m.get(row, col);
                if entry.is_zero() {
                    continue;
                }
                let above = (mask >> (col + 1)).count_ones();
                let mut term = &acc * entry;
                if above % 2 == 1 {
                    term = -term;
                }
                let slot = &mut dp[mask | (1 << col)];
                *slot = Some(match slot.take() {
                    Some(prev) => &prev + &term,
                    None => term,
                });
            }
        }
    }
    Ok(dp[full].take().unwrap_or_default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, Var};

    fn rm(rows: &[&[i64]]) -> SquareMatrix<Rat> {
        SquareMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect())
    }

    #[test]
    fn identity_and_triangular() {
        assert_eq!(det_exact(&SquareMatrix::<Rat>::identity(3)), rat(1));
        assert_eq!(det_exact(&rm(&[&[-1, 1], &[0, -1]])), rat(1));
        assert_eq!(det_exact(&SquareMatrix::<Rat>::zeros(0)), rat(1));
    }

    #[test]
    fn needs_pivoting() {
        assert_eq!(det_exact(&rm(&[&[0, 1], &[1, 0]])), rat(-1));
        assert_eq!(det_exact(&rm(&[&[0, 0, 1], &[0, 2, 0], &[3, 0, 0]])), rat(-6));
        assert_eq!(det_exact(&rm(&[&[1, 2], &[2, 4]])), rat(0));
    }

    #[test]
    fn rational_entries() {
        let half = Rat::new(1.into(), 2.into());
        let third = Rat::new(1.into(), 3.into());
        let m = SquareMatrix::from_rows(vec![vec![half.clone(), third.clone()], vec![third, half]]);
        // 1/4 - 1/9 = 5/36
        assert_eq!(det_exact(&m), Rat::new(5.into(), 36.into()));
    }

    #[test]
    fn symbolic_small_cases() {
        let y = |i| MultiPoly::var(Var::Y(i));
        let x = MultiPoly::var(Var::X(0));
        let z = MultiPoly::zero();
        let d = det_symbolic(&SquareMatrix::from_rows(vec![vec![y(1), z.clone()], vec![z, y(2)]]), 10).unwrap();
        assert_eq!(d, &y(1) * &y(2));
        let lap = SquareMatrix::from_rows(vec![vec![-x.clone(), x.clone()], vec![y(0), -y(0)]]);
        assert!(det_symbolic(&lap, 10).unwrap().is_zero());
        let single = SquareMatrix::from_rows(vec![vec![y(0)]]);
        assert_eq!(det_symbolic(&single, 10).unwrap(), y(0));
    }

    #[test]
    fn symbolic_guard() {
        let m = SquareMatrix::<MultiPoly>::identity(4);
        assert_eq!(
            det_symbolic(&m, 3),
            Err(Error::SymbolicGuard { dim: 4, limit: 3 })
        );
    }
}
