//! Exact arithmetic in the Novikov coefficient ring.
//!
//! The ring is Λ = ℤ[t^ℚ][q, q⁻¹]: finite integer combinations of monomials
//! q^k t^s with k ∈ ℤ and s ∈ ℚ. The variable q is graded in degree 2 and t
//! in degree 0, so a scalar has a well-defined degree exactly when all of its
//! terms share one q-exponent.
//!
//! Values are kept in canonical form: no stored coefficient is zero, and
//! equality is term-wise coefficient equality.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Builds an exact rational from an integer pair.
///
/// Panics when `den` is zero; descriptor loaders reject zero denominators
/// before calling this.
pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// A monomial exponent pair: the q-exponent and the t-exponent.
pub type Exponents = (i64, BigRational);

/// An element of the coefficient ring Λ: a finite sum of integer multiples
/// of q^k t^s, stored sparsely by exponent pair.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct NovikovScalar {
    terms: BTreeMap<Exponents, BigInt>,
}

impl NovikovScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0, BigRational::zero())
    }

    /// The single term c · q^k t^s (canonicalized: c = 0 gives zero).
    pub fn monomial(coef: impl Into<BigInt>, q_exp: i64, t_exp: BigRational) -> Self {
        let coef = coef.into();
        let mut terms = BTreeMap::new();
        if !coef.is_zero() {
            terms.insert((q_exp, t_exp), coef);
        }
        Self { terms }
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        Self::monomial(n, 0, BigRational::zero())
    }

    /// The monomial q^k.
    pub fn q_power(k: i64) -> Self {
        Self::monomial(1, k, BigRational::zero())
    }

    /// The monomial t^s.
    pub fn t_power(s: BigRational) -> Self {
        Self::monomial(1, 0, s)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&(0, BigRational::zero()))
                .is_some_and(|c| c.is_one())
    }

    /// Iterates terms as (q_exp, t_exp, coefficient) in exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigRational, &BigInt)> {
        self.terms.iter().map(|((q, t), c)| (*q, t, c))
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Returns (coef, q_exp, t_exp) when the scalar is a single term.
    pub fn as_monomial(&self) -> Option<(&BigInt, i64, &BigRational)> {
        if self.terms.len() == 1 {
            let ((q, t), c) = self.terms.iter().next().unwrap();
            Some((c, *q, t))
        } else {
            None
        }
    }

    /// True when the scalar is ±q^k t^s, i.e. a unit of Λ.
    pub fn is_unit_monomial(&self) -> bool {
        self.as_monomial()
            .is_some_and(|(c, _, _)| c.magnitude().is_one())
    }

    fn insert_term(&mut self, key: Exponents, coef: BigInt) {
        if coef.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coef);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coef;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Degree of a q-homogeneous scalar: 2 · q_exp (t counts for nothing).
    pub fn degree(&self) -> Result<i64> {
        let mut q_exps = self.terms.keys().map(|(q, _)| *q);
        let first = q_exps.next().ok_or(Error::ZeroElement)?;
        if q_exps.all(|q| q == first) {
            Ok(2 * first)
        } else {
            Err(Error::MixedDegrees)
        }
    }

    /// Largest t-exponent present, if any.
    pub fn max_t_exp(&self) -> Option<&BigRational> {
        self.terms.keys().map(|(_, t)| t).max()
    }

    /// Multiplies every exponent pair by (shift_q, shift_t); this is
    /// multiplication by the monomial q^shift_q t^shift_t.
    pub fn shifted(&self, shift_q: i64, shift_t: &BigRational) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|((q, t), c)| ((q + shift_q, t + shift_t), c.clone()))
            .collect();
        Self { terms }
    }

    pub fn scaled(&self, by: &BigInt) -> Self {
        if by.is_zero() {
            return Self::zero();
        }
        let terms = self
            .terms
            .iter()
            .map(|(k, c)| (k.clone(), c * by))
            .collect();
        Self { terms }
    }

    /// Exact quotient self / den in Λ, or None when den does not divide
    /// self. Works by leading-term elimination in the lexicographic
    /// exponent order, which is compatible with multiplication. An exact
    /// quotient has its support bounded below by min(self) − min(den), so
    /// the descent stops once an emitted exponent falls under that bound.
    pub fn exact_div(&self, den: &Self) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (dk, dc) = {
            let (k, c) = den.terms.iter().next_back().unwrap();
            (k.clone(), c.clone())
        };
        let low = {
            let self_min = self.terms.keys().next().unwrap();
            let den_min = den.terms.keys().next().unwrap();
            (self_min.0 - den_min.0, &self_min.1 - &den_min.1)
        };
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while !rem.is_zero() {
            let ((rq, rt), rc) = {
                let (k, c) = rem.terms.iter().next_back().unwrap();
                (k.clone(), c.clone())
            };
            let exps = (rq - dk.0, rt - &dk.1);
            if exps < low {
                return None;
            }
            let (qc, r) = num_integer::div_rem(rc, dc.clone());
            if !r.is_zero() {
                return None;
            }
            let factor = Self::monomial(qc, exps.0, exps.1);
            rem = &rem - &(&factor * den);
            quot = &quot + &factor;
        }
        Some(quot)
    }

    /// Renders one exponent pair with its coefficient, e.g. `2*q^-3*t^7/2`.
    fn render_term(coef: &BigInt, q_exp: i64, t_exp: &BigRational) -> String {
        let mut s = coef.to_string();
        if q_exp != 0 {
            s.push_str(&format!("*q^{q_exp}"));
        }
        if !t_exp.is_zero() {
            s.push_str(&format!("*t^{}", render_rational(t_exp)));
        }
        s
    }
}

/// Renders a rational as `p` or `p/q` with the sign on the numerator.
pub fn render_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p` or `p/q`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("invalid rational `{s}`"));
    match s.split_once('/') {
        None => {
            let n: BigInt = s.trim().parse().map_err(|_| bad())?;
            Ok(BigRational::from_integer(n))
        }
        Some((num, den)) => {
            let n: BigInt = num.trim().parse().map_err(|_| bad())?;
            let d: BigInt = den.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
    }
}

/// Parses one scalar monomial of the form `coef`, `coef*q^k`, `coef*t^s` or
/// `coef*q^k*t^s`.
pub fn parse_monomial(s: &str) -> Result<(BigInt, i64, BigRational)> {
    let mut coef: Option<BigInt> = None;
    let mut q_exp = 0i64;
    let mut t_exp = BigRational::zero();
    let mut seen_q = false;
    let mut seen_t = false;
    for (pos, piece) in s.split('*').enumerate() {
        let piece = piece.trim();
        if pos == 0 {
            coef = Some(
                piece
                    .parse()
                    .map_err(|_| Error::Parse(format!("invalid coefficient `{piece}`")))?,
            );
        } else if let Some(exp) = piece.strip_prefix("q^") {
            if seen_q || seen_t {
                return Err(Error::Parse(format!("misordered monomial `{s}`")));
            }
            seen_q = true;
            q_exp = exp
                .parse()
                .map_err(|_| Error::Parse(format!("invalid q-exponent `{exp}`")))?;
        } else if let Some(exp) = piece.strip_prefix("t^") {
            if seen_t {
                return Err(Error::Parse(format!("repeated t factor in `{s}`")));
            }
            seen_t = true;
            t_exp = parse_rational(exp)?;
        } else {
            return Err(Error::Parse(format!("unexpected factor `{piece}`")));
        }
    }
    let coef = coef.ok_or_else(|| Error::Parse(format!("empty monomial `{s}`")))?;
    Ok((coef, q_exp, t_exp))
}

impl Add for &NovikovScalar {
    type Output = NovikovScalar;
    fn add(self, rhs: &NovikovScalar) -> NovikovScalar {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.insert_term(k.clone(), c.clone());
        }
        out
    }
}

impl Sub for &NovikovScalar {
    type Output = NovikovScalar;
    fn sub(self, rhs: &NovikovScalar) -> NovikovScalar {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.insert_term(k.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &NovikovScalar {
    type Output = NovikovScalar;
    fn neg(self) -> NovikovScalar {
        let terms = self
            .terms
            .iter()
            .map(|(k, c)| (k.clone(), -c.clone()))
            .collect();
        NovikovScalar { terms }
    }
}

impl Mul for &NovikovScalar {
    type Output = NovikovScalar;
    fn mul(self, rhs: &NovikovScalar) -> NovikovScalar {
        let mut out = NovikovScalar::zero();
        for ((q1, t1), c1) in &self.terms {
            for ((q2, t2), c2) in &rhs.terms {
                out.insert_term((q1 + q2, t1 + t2), c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for NovikovScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let rendered: Vec<String> = self
            .terms
            .iter()
            .map(|((q, t), c)| Self::render_term(c, *q, t))
            .collect();
        write!(f, "{}", rendered.join(" + "))
    }
}

impl FromStr for NovikovScalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "0" {
            return Ok(Self::zero());
        }
        let mut out = Self::zero();
        for term in s.split(" + ") {
            let (coef, q, t) = parse_monomial(term)?;
            out.insert_term((q, t), coef);
        }
        Ok(out)
    }
}
