use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{pow_rat, rat, Assignment, Rat};
use crate::error::{Error, Result};

/// Polynomial indeterminate: `x_e` per edge, `y_v` per vertex, the spectral
/// variable `z`, and auxiliary variables for fixtures.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X(u32),
    Y(u32),
    Z,
    Aux(u32),
}

impl Var {
    pub fn x(e: usize) -> Var {
        Var::X(e as u32)
    }

    pub fn y(v: usize) -> Var {
        Var::Y(v as u32)
    }

    /// Dense code used to place the variable in a random stream.
    pub(crate) fn code(self) -> u64 {
        match self {
            Var::X(i) => 4 * i as u64,
            Var::Y(i) => 4 * i as u64 + 1,
            Var::Z => 2,
            Var::Aux(i) => 4 * i as u64 + 3,
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::X(i) => write!(f, "x_{i}"),
            Var::Y(i) => write!(f, "y_{i}"),
            Var::Z => write!(f, "z"),
            Var::Aux(i) => write!(f, "u_{i}"),
        }
    }
}

impl FromStr for Var {
    type Err = Error;

    fn from_str(s: &str) -> Result<Var> {
        if s == "z" {
            return Ok(Var::Z);
        }
        let bad = || Error::Parse(format!("unknown variable name {s:?}"));
        let (head, idx) = s.split_once('_').ok_or_else(bad)?;
        let idx: u32 = idx.parse().map_err(|_| bad())?;
        match head {
            "x" => Ok(Var::X(idx)),
            "y" => Ok(Var::Y(idx)),
            "u" => Ok(Var::Aux(idx)),
            _ => Err(bad()),
        }
    }
}

/// Power product of variables. Exponents are positive; variables are sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn from_powers(powers: impl IntoIterator<Item = (Var, u32)>) -> Self {
        let mut acc: BTreeMap<Var, u32> = BTreeMap::new();
        for (v, e) in powers {
            *acc.entry(v).or_insert(0) += e;
        }
        Monomial(acc.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn product_of(vars: impl IntoIterator<Item = Var>) -> Self {
        Self::from_powers(vars.into_iter().map(|v| (v, 1)))
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0
            .binary_search_by(|(w, _)| w.cmp(&v))
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    pub fn powers(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    pub fn evaluate(&self, asg: &Assignment) -> Result<Rat> {
        let mut acc = rat(1);
        for &(v, e) in &self.0 {
            let val = asg
                .get(v)
                .ok_or_else(|| Error::MissingVariable(v.to_string()))?;
            acc *= pow_rat(val, e as u64);
        }
        Ok(acc)
    }
}

// Graded lexicographic: total degree first, then the larger exponent on the
// smallest differing variable wins.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use std::cmp::Ordering::*;
        match self.degree().cmp(&other.degree()) {
            Equal => {}
            o => return o,
        }
        let (a, b) = (&self.0, &other.0);
        for (x, y) in a.iter().zip(b.iter()) {
            if x.0 != y.0 {
                // the side holding the smaller variable has the larger exponent on it
                return if x.0 < y.0 { Greater } else { Less };
            }
            if x.1 != y.1 {
                return x.1.cmp(&y.1);
            }
        }
        a.len().cmp(&b.len())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, (v, e)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Sparse polynomial with rational coefficients. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, Rat>,
}

impl MultiPoly {
    pub fn constant(c: Rat) -> Self {
        let mut p = MultiPoly::default();
        if !c.is_zero() {
            p.terms.insert(Monomial::one(), c);
        }
        p
    }

    pub fn var(v: Var) -> Self {
        Self::monomial(Monomial::var(v), rat(1))
    }

    pub fn monomial(m: Monomial, c: Rat) -> Self {
        let mut p = MultiPoly::default();
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn variables(&self) -> BTreeSet<Var> {
        self.terms
            .keys()
            .flat_map(|m| m.powers().iter().map(|&(v, _)| v))
            .collect()
    }

    /// Adds `c·m` in place.
    pub fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rat) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::default();
        }
        MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k * c))
                .collect(),
        }
    }

    pub fn pow(&self, exp: u64) -> MultiPoly {
        let mut acc = MultiPoly::one();
        let mut b = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        acc
    }

    pub fn evaluate(&self, asg: &Assignment) -> Result<Rat> {
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            acc += m.evaluate(asg)? * c;
        }
        Ok(acc)
    }

    /// Replaces every occurrence of `v` by `by`.
    pub fn substitute(&self, v: Var, by: &MultiPoly) -> MultiPoly {
        let mut powers: Vec<MultiPoly> = vec![MultiPoly::one()];
        let mut out = MultiPoly::default();
        for (m, c) in &self.terms {
            let e = m.exponent(v) as usize;
            while powers.len() <= e {
                let next = &powers[powers.len() - 1] * by;
                powers.push(next);
            }
            let rest = Monomial(m.0.iter().copied().filter(|&(w, _)| w != v).collect());
            let factor = MultiPoly::monomial(rest, c.clone());
            out = &out + &(&factor * &powers[e]);
        }
        out
    }

    /// JSON form: list of `{"coeff": "p/q", "monomial": {"x_0": 1}}` in
    /// ascending monomial order.
    pub fn to_json(&self) -> Vec<PolyTerm> {
        self.terms
            .iter()
            .map(|(m, c)| PolyTerm {
                coeff: c.to_string(),
                monomial: m.0.iter().map(|(v, e)| (v.to_string(), *e)).collect(),
            })
            .collect()
    }

    pub fn from_json(terms: &[PolyTerm]) -> Result<MultiPoly> {
        let mut p = MultiPoly::default();
        for t in terms {
            let c = super::parse_rat(&t.coeff)
                .ok_or_else(|| Error::Parse(format!("bad coefficient {:?}", t.coeff)))?;
            let mut powers = Vec::new();
            for (name, e) in &t.monomial {
                powers.push((name.parse::<Var>()?, *e));
            }
            p.add_term(Monomial::from_powers(powers), c);
        }
        Ok(p)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyTerm {
    pub coeff: String,
    pub monomial: BTreeMap<String, u32>,
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "({c})*{m}")?;
            }
        }
        Ok(())
    }
}

impl Zero for MultiPoly {
    fn zero() -> Self {
        MultiPoly::default()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for MultiPoly {
    fn one() -> Self {
        MultiPoly::constant(rat(1))
    }
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;

    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;

    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;

    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::default();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;

    fn neg(self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(mut self, rhs: MultiPoly) -> MultiPoly {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: MultiPoly) -> MultiPoly {
        &self - &rhs
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        &self * &rhs
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: u32) -> MultiPoly {
        MultiPoly::var(Var::X(i))
    }

    #[test]
    fn arithmetic_cancels_to_zero() {
        let p = &(&x(0) * &x(1)) - &(&x(1) * &x(0));
        assert!(p.is_zero());
        assert_eq!(p.term_count(), 0);
    }

    #[test]
    fn binomial_square() {
        let s = &x(0) + &x(1);
        let sq = s.pow(2);
        assert_eq!(sq.term_count(), 3);
        let mid = Monomial::product_of([Var::X(0), Var::X(1)]);
        assert_eq!(sq.coefficient(&mid), rat(2));
    }

    #[test]
    fn substitute_var_by_sum() {
        // y_0^2 with y_0 -> x_0 + 1
        let p = MultiPoly::var(Var::Y(0)).pow(2);
        let by = &x(0) + &MultiPoly::one();
        let q = p.substitute(Var::Y(0), &by);
        assert_eq!(q, by.pow(2));
    }

    #[test]
    fn graded_lex_order() {
        let a = Monomial::product_of([Var::X(0), Var::X(0)]);
        let b = Monomial::product_of([Var::X(0), Var::X(1)]);
        let c = Monomial::var(Var::X(5));
        assert!(a > b);
        assert!(b > c);
        assert!(Monomial::var(Var::X(0)) > Monomial::var(Var::X(1)));
        assert!(Monomial::one() < c);
    }

    #[test]
    fn json_round_trip() {
        let p = &(&x(3) * &MultiPoly::var(Var::Y(1))).scale(&Rat::new(2.into(), 3.into())) - &MultiPoly::var(Var::Z);
        let back = MultiPoly::from_json(&p.to_json()).unwrap();
        assert_eq!(back, p);
        let json = serde_json::to_string(&p.to_json()).unwrap();
        assert!(json.contains("\"coeff\":\"2/3\""));
        assert!(json.contains("\"x_3\":1"));
    }

    #[test]
    fn var_names_parse() {
        for v in [Var::X(4), Var::Y(0), Var::Z, Var::Aux(7)] {
            assert_eq!(v.to_string().parse::<Var>().unwrap(), v);
        }
        assert!("w_1".parse::<Var>().is_err());
    }
}
