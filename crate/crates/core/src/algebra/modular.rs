//! Multi-modular determinants and characteristic polynomials of integer
//! matrices: elimination modulo 62-bit primes in Montgomery form, then
//! Chinese remaindering up to a Hadamard-type bound. The results are exact.

use std::sync::Mutex;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::SquareMatrix;

/// Montgomery arithmetic modulo an odd `p < 2^62`.
#[derive(Clone, Copy, Debug)]
struct Field {
    p: u64,
    neg_inv: u64,
    r2: u64,
}

impl Field {
    fn new(p: u64) -> Field {
        let mut inv = p;
        for _ in 0..6 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(p.wrapping_mul(inv)));
        }
        let r = ((1u128 << 64) % p as u128) as u64;
        let r2 = ((r as u128 * r as u128) % p as u128) as u64;
        Field { p, neg_inv: inv.wrapping_neg(), r2 }
    }

    #[inline]
    fn reduce(&self, t: u128) -> u64 {
        let m = (t as u64).wrapping_mul(self.neg_inv);
        let u = ((t + m as u128 * self.p as u128) >> 64) as u64;
        if u >= self.p {
            u - self.p
        } else {
            u
        }
    }

    #[inline]
    fn mul(&self, a: u64, b: u64) -> u64 {
        self.reduce(a as u128 * b as u128)
    }

    #[inline]
    fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    fn enter(&self, a: u64) -> u64 {
        self.mul(a % self.p, self.r2)
    }

    fn leave(&self, a: u64) -> u64 {
        self.reduce(a as u128)
    }

    fn one(&self) -> u64 {
        self.enter(1)
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = self.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    fn inv(&self, a: u64) -> u64 {
        self.pow(a, self.p - 2)
    }

    fn reduce_bigint(&self, x: &BigInt) -> u64 {
        let r = x.mod_floor(&BigInt::from(self.p)).to_u64().expect("residue fits");
        self.enter(r)
    }
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    (a as u128 * b as u128 % m as u128) as u64
}

fn powmod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b, m);
        }
        b = mulmod(b, b, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit integers.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for &b in &BASES {
        let mut x = powmod(b, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

static PRIMES: Mutex<Vec<u64>> = Mutex::new(Vec::new());

/// The `i`-th largest prime below `2^62`.
fn prime(i: usize) -> u64 {
    let mut primes = PRIMES.lock().expect("prime cache");
    while primes.len() <= i {
        let mut c = primes.last().map_or((1u64 << 62) - 1, |&p| p - 2);
        while !is_prime(c) {
            c -= 2;
        }
        primes.push(c);
    }
    primes[i]
}

/// Bits needed to cover `2 * bound` where `log2(bound) <= log2_bound`.
fn prime_count(log2_bound: f64) -> usize {
    ((log2_bound + 2.0) / 61.0).ceil().max(1.0) as usize
}

fn log2_abs(x: &BigInt) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    let shift = bits.saturating_sub(60);
    let top = (x.abs() >> shift).to_f64().expect("fits");
    top.log2() + shift as f64
}

fn row_log2_norms(m: &SquareMatrix<BigInt>) -> Vec<f64> {
    m.rows()
        .map(|row| {
            let max = row.iter().map(log2_abs).fold(f64::NEG_INFINITY, f64::max);
            if max == f64::NEG_INFINITY {
                return f64::NEG_INFINITY;
            }
            let sum: f64 = row.iter().map(|x| (log2_abs(x) - max).exp2()).sum();
            max + 0.5 * sum.log2()
        })
        .collect()
}

/// Incremental Chinese remaindering of a vector of residues.
struct Crt {
    modulus: BigInt,
    values: Vec<BigInt>,
}

impl Crt {
    fn new(len: usize) -> Crt {
        Crt {
            modulus: BigInt::one(),
            values: vec![BigInt::zero(); len],
        }
    }

    fn absorb(&mut self, p: u64, residues: &[u64]) {
        let pb = BigInt::from(p);
        let m_mod_p = self.modulus.mod_floor(&pb).to_u64().expect("residue fits");
        let m_inv = powmod(m_mod_p, p - 2, p);
        for (x, &r) in self.values.iter_mut().zip(residues) {
            let x_mod_p = x.mod_floor(&pb).to_u64().expect("residue fits");
            let diff = (r + p - x_mod_p) % p;
            let t = mulmod(diff, m_inv, p);
            if t != 0 {
                *x += &self.modulus * BigInt::from(t);
            }
        }
        self.modulus *= pb;
    }

    /// Symmetric representatives in `(-M/2, M/2]`.
    fn finish(self) -> Vec<BigInt> {
        let half = &self.modulus >> 1u32;
        self.values
            .into_iter()
            .map(|x| if x > half { x - &self.modulus } else { x })
            .collect()
    }
}

fn reduce_matrix(f: &Field, m: &SquareMatrix<BigInt>) -> Vec<u64> {
    m.rows().flat_map(|row| row.iter().map(|x| f.reduce_bigint(x))).collect()
}

fn det_mod(f: &Field, mut a: Vec<u64>, n: usize) -> u64 {
    let mut det = f.one();
    for k in 0..n {
        let Some(piv) = (k..n).find(|&i| a[i * n + k] != 0) else {
            return 0;
        };
        if piv != k {
            for j in 0..n {
                a.swap(k * n + j, piv * n + j);
            }
            det = f.sub(0, det);
        }
        let pivot = a[k * n + k];
        det = f.mul(det, pivot);
        let inv = f.inv(pivot);
        for i in k + 1..n {
            let lead = a[i * n + k];
            if lead == 0 {
                continue;
            }
            let factor = f.mul(lead, inv);
            let (top, bottom) = a.split_at_mut(i * n);
            let pivot_row = &top[k * n..k * n + n];
            let row = &mut bottom[..n];
            for j in k + 1..n {
                row[j] = f.sub(row[j], f.mul(factor, pivot_row[j]));
            }
            row[k] = 0;
        }
    }
    f.leave(det)
}

/// Exact determinant of an integer matrix.
pub fn det_modular(m: &SquareMatrix<BigInt>) -> BigInt {
    let n = m.dim();
    if n == 0 {
        return BigInt::one();
    }
    let norms = row_log2_norms(m);
    if norms.contains(&f64::NEG_INFINITY) {
        return BigInt::zero();
    }
    let count = prime_count(norms.iter().sum());
    let mut crt = Crt::new(1);
    for i in 0..count {
        let p = prime(i);
        let f = Field::new(p);
        let d = det_mod(&f, reduce_matrix(&f, m), n);
        crt.absorb(p, &[d]);
    }
    crt.finish().pop().expect("one value")
}

/// Coefficients (ascending) of `det(zI - A)` modulo `p`, via reduction to
/// upper Hessenberg form.
fn char_poly_mod(f: &Field, mut a: Vec<u64>, n: usize) -> Vec<u64> {
    let at = |i: usize, j: usize| i * n + j;
    for j in 0..n.saturating_sub(2) {
        let Some(piv) = (j + 1..n).find(|&i| a[at(i, j)] != 0) else {
            continue;
        };
        if piv != j + 1 {
            for c in 0..n {
                a.swap(at(piv, c), at(j + 1, c));
            }
            for r in 0..n {
                a.swap(at(r, piv), at(r, j + 1));
            }
        }
        let inv = f.inv(a[at(j + 1, j)]);
        for k in j + 2..n {
            let u = f.mul(a[at(k, j)], inv);
            if u == 0 {
                continue;
            }
            for c in 0..n {
                a[at(k, c)] = f.sub(a[at(k, c)], f.mul(u, a[at(j + 1, c)]));
            }
            for r in 0..n {
                a[at(r, j + 1)] = f.add(a[at(r, j + 1)], f.mul(u, a[at(r, k)]));
            }
        }
    }
    // p_m = (z - h_mm) p_{m-1} - sum_{i<m} h_im (prod_{l=i+1}^{m} h_{l,l-1}) p_{i-1}
    let one = f.one();
    let mut polys: Vec<Vec<u64>> = vec![vec![one]];
    for m in 0..n {
        let prev = &polys[m];
        let mut next = vec![0u64; m + 2];
        for (k, &c) in prev.iter().enumerate() {
            next[k + 1] = f.add(next[k + 1], c);
            next[k] = f.sub(next[k], f.mul(a[at(m, m)], c));
        }
        let mut sub = one;
        for i in (0..m).rev() {
            sub = f.mul(sub, a[at(i + 1, i)]);
            let coeff = f.mul(a[at(i, m)], sub);
            if coeff == 0 {
                continue;
            }
            for (k, &c) in polys[i].iter().enumerate() {
                next[k] = f.sub(next[k], f.mul(coeff, c));
            }
        }
        polys.push(next);
    }
    polys.pop().expect("n + 1 polynomials").into_iter().map(|c| f.leave(c)).collect()
}

/// Exact coefficients (ascending) of `det(zI - A)` for an integer matrix.
pub fn char_poly_integer(m: &SquareMatrix<BigInt>) -> Vec<BigInt> {
    let n = m.dim();
    if n == 0 {
        return vec![BigInt::one()];
    }
    // Every coefficient is a signed sum of principal minors, bounded by
    // prod_i (1 + |row_i|).
    let log2_bound: f64 = row_log2_norms(m).iter().map(|&x| (1.0 + x.exp2()).log2()).sum();
    let count = prime_count(log2_bound);
    let mut crt = Crt::new(n + 1);
    for i in 0..count {
        let p = prime(i);
        let f = Field::new(p);
        crt.absorb(p, &char_poly_mod(&f, reduce_matrix(&f, m), n));
    }
    crt.finish()
}
