//! Exact Laurent polynomials in one indeterminate `q` with big-integer
//! coefficients.
//!
//! Values are kept in canonical sparse form: a map from exponent to a
//! nonzero coefficient. Two polynomials are equal iff their maps are equal.
//!
//! Variable convention: throughout the crate `q` is the square root of the
//! inverse of the classical Kazhdan–Lusztig variable. The polynomial attached
//! to a pair `x <= w` is `h_{x,w}(q) = q^{l(w)-l(x)} P_{x,w}(q^{-2})`, where
//! `P_{x,w}` is the classical Kazhdan–Lusztig polynomial; see
//! [`LaurentPoly::normalize_kl`] and [`LaurentPoly::classical_kl`].

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest admissible absolute value of an exponent (exclusive).
pub const EXPONENT_LIMIT: i64 = 1 << 31;

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i32, BigInt>,
}

fn checked_exponent(e: i64) -> i32 {
    assert!(
        e.abs() < EXPONENT_LIMIT,
        "Laurent exponent {e} out of range"
    );
    e as i32
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    /// The indeterminate `q`.
    pub fn q() -> Self {
        Self::monomial(1, 1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * q^e`.
    pub fn monomial(c: impl Into<BigInt>, e: i64) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(checked_exponent(e), c);
        }
        Self { terms }
    }

    /// `(-q)^e`, for `e >= 0` or negative.
    pub fn neg_q_pow(e: i64) -> Self {
        Self::monomial(if e.rem_euclid(2) == 0 { 1 } else { -1 }, e)
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, summing
    /// repeated exponents.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(checked_exponent(e), c.into());
        }
        p
    }

    fn add_term(&mut self, e: i32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    /// Iterates `(exponent, coefficient)` in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i32, &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: i64) -> BigInt {
        i32::try_from(e)
            .ok()
            .and_then(|e| self.terms.get(&e).cloned())
            .unwrap_or_default()
    }

    /// Highest exponent, `None` for zero.
    pub fn degree(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    /// Lowest exponent, `None` for zero.
    pub fn low_degree(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    /// True when no exponent is negative (zero counts as a polynomial).
    pub fn is_polynomial(&self) -> bool {
        self.low_degree().map_or(true, |d| d >= 0)
    }

    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// Substitution `q -> q^{-1}`.
    pub fn bar(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (-*e, c.clone())).collect(),
        }
    }

    /// Substitution `q -> -q`.
    pub fn substitute_neg_q(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (*e, if e % 2 == 0 { c.clone() } else { -c }))
                .collect(),
        }
    }

    /// Multiplication by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (checked_exponent(*e as i64 + k), c.clone()))
                .collect(),
        }
    }

    /// Substitution `q -> q^k` for a nonzero integer `k`.
    pub fn substitute_pow(&self, k: i64) -> Self {
        assert!(k != 0, "substitution q -> q^0 is not invertible");
        Self {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (checked_exponent(*e as i64 * k), c.clone()))
                .collect(),
        }
    }

    /// Converts a classical Kazhdan–Lusztig polynomial `P(q)` attached to a
    /// pair with length difference `gap` into `q^gap * P(q^{-2})`.
    pub fn normalize_kl(&self, gap: i64) -> Self {
        self.substitute_pow(-2).shift(gap)
    }

    /// Inverse of [`normalize_kl`](Self::normalize_kl): recovers `P(q)` from
    /// `q^gap * P(q^{-2})`. Fails if an exponent has the wrong parity or the
    /// result is not a polynomial.
    pub fn classical_kl(&self, gap: i64) -> Result<Self> {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let d = gap - *e as i64;
            if d < 0 || d % 2 != 0 {
                return Err(Error::InvalidArgument(format!(
                    "{self} is not of the form q^{gap} P(q^-2)"
                )));
            }
            out.add_term(checked_exponent(d / 2), c.clone());
        }
        Ok(out)
    }

    /// Value at `x`, where `x` must be `1` or `-1`.
    pub fn eval_at(&self, x: i64) -> Result<BigInt> {
        match x {
            1 => Ok(self.terms.values().sum()),
            -1 => Ok(self
                .terms
                .iter()
                .map(|(e, c)| if e % 2 == 0 { c.clone() } else { -c })
                .sum()),
            _ => Err(Error::InvalidArgument(format!(
                "evaluation is only defined at q = 1 and q = -1, got {x}"
            ))),
        }
    }

    /// Bar-invariant part built from the constant and negative-exponent
    /// terms of `self`; `self` minus it always lies in `q Z[q]`.
    pub fn bar_invariant_correction(&self) -> Self {
        let mut out = Self::zero();
        for (e, c) in self.terms.range(..=0) {
            out.add_term(*e, c.clone());
            if *e != 0 {
                out.add_term(-*e, c.clone());
            }
        }
        out
    }

    /// Exact division. Fails when `divisor` is zero or does not divide `self`.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        let (&dtop, dlead) = divisor
            .terms
            .iter()
            .next_back()
            .ok_or_else(|| Error::InvalidArgument("division by zero polynomial".into()))?;
        let dlow = divisor.low_degree().unwrap_or(0);
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some((&top, lead)) = rem.terms.iter().next_back() {
            let rem_low = rem.low_degree().unwrap_or(0);
            if (top as i64 - dtop as i64) < (rem_low as i64 - dlow as i64) {
                break;
            }
            let (c, r) = (lead / dlead, lead % dlead);
            if !r.is_zero() {
                break;
            }
            let e = top as i64 - dtop as i64;
            let t = Self::monomial(c, e);
            rem -= &(&t * divisor);
            quot += &t;
        }
        if rem.is_zero() {
            Ok(quot)
        } else {
            Err(Error::InvalidArgument(format!(
                "{divisor} does not divide {self}"
            )))
        }
    }

    /// Symmetric quantum integer `[k] = q^{k-1} + q^{k-3} + ... + q^{1-k}`.
    pub fn quantum_integer(k: u32) -> Self {
        let k = k as i64;
        Self::from_terms((0..k).map(|j| (k - 1 - 2 * j, 1)))
    }

    /// `[k]! = [1][2]...[k]`.
    pub fn quantum_factorial(k: u32) -> Self {
        (1..=k).fold(Self::one(), |acc, j| &acc * &Self::quantum_integer(j))
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

impl<'a> AddAssign<&'a LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &'a LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl<'a> SubAssign<&'a LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &'a LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, -c);
        }
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self -= &rhs;
        self
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(checked_exponent(*ea as i64 + *eb as i64), ca * cb);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl std::iter::Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::zero(), |mut acc, p| {
            acc += &p;
            acc
        })
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if *e == 0 {
                write!(f, "{abs}")?;
                continue;
            }
            if !abs.is_one() {
                write!(f, "{abs}*")?;
            }
            if *e == 1 {
                write!(f, "q")?;
            } else {
                write!(f, "q^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

struct TermParser<'a> {
    src: &'a str,
    chars: Vec<char>,
    pos: usize,
}

impl<'a> TermParser<'a> {
    fn err(&self, what: &str) -> Error {
        Error::Parse(format!(
            "polynomial {:?}: {what} at offset {}",
            self.src, self.pos
        ))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn digits(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().collect())
    }

    fn signed_int(&mut self) -> Result<i64> {
        let neg = match self.peek() {
            Some('-') => {
                self.pos += 1;
                true
            }
            Some('+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let d = self.digits().ok_or_else(|| self.err("expected exponent"))?;
        let v: i64 = d.parse().map_err(|_| self.err("exponent too large"))?;
        let v = if neg { -v } else { v };
        if v.abs() >= EXPONENT_LIMIT {
            return Err(self.err("exponent out of range"));
        }
        Ok(v)
    }

    /// Parses an unsigned term, returning (exponent, coefficient).
    fn term(&mut self) -> Result<(i64, BigInt)> {
        let coeff = match self.digits() {
            Some(d) => {
                let c: BigInt = d.parse().map_err(|_| self.err("bad integer"))?;
                if self.peek() == Some('*') {
                    self.pos += 1;
                } else {
                    return Ok((0, c));
                }
                c
            }
            None => BigInt::one(),
        };
        if self.peek() != Some('q') {
            return Err(self.err("expected 'q'"));
        }
        self.pos += 1;
        let exp = if self.peek() == Some('^') {
            self.pos += 1;
            self.signed_int()?
        } else {
            1
        };
        Ok((exp, coeff))
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = TermParser {
            src: s,
            chars: s.chars().collect(),
            pos: 0,
        };
        let mut out = LaurentPoly::zero();
        let mut first = true;
        loop {
            let sign = match p.peek() {
                None if first => return Err(p.err("empty input")),
                None => break,
                Some('+') if !first => {
                    p.pos += 1;
                    1
                }
                Some('-') => {
                    p.pos += 1;
                    -1
                }
                Some(_) if first => 1,
                Some(_) => return Err(p.err("expected '+' or '-'")),
            };
            let (e, c) = p.term()?;
            out.add_term(e as i32, c * sign);
            first = false;
        }
        Ok(out)
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.terms.len()))?;
        for (e, c) in &self.terms {
            match c.to_i64() {
                Some(v) => map.serialize_entry(&e.to_string(), &v)?,
                // coefficients beyond i64 are written as decimal strings
                None => map.serialize_entry(&e.to_string(), &c.to_string())?,
            }
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct PolyVisitor;

        impl<'de> Visitor<'de> for PolyVisitor {
            type Value = LaurentPoly;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                write!(f, "a map from exponent strings to integer coefficients")
            }

            fn visit_map<A: MapAccess<'de>>(self, mut access: A) -> std::result::Result<LaurentPoly, A::Error> {
                let mut out = LaurentPoly::zero();
                while let Some((k, v)) = access.next_entry::<String, serde_json::Value>()? {
                    let e: i64 = k.parse().map_err(de::Error::custom)?;
                    if e.abs() >= EXPONENT_LIMIT {
                        return Err(de::Error::custom("exponent out of range"));
                    }
                    let c: BigInt = match v {
                        serde_json::Value::Number(n) => n
                            .as_i64()
                            .map(BigInt::from)
                            .ok_or_else(|| de::Error::custom("coefficient must be an integer"))?,
                        serde_json::Value::String(s) => s.parse().map_err(de::Error::custom)?,
                        _ => return Err(de::Error::custom("coefficient must be an integer")),
                    };
                    out.add_term(e as i32, c);
                }
                Ok(out)
            }
        }

        deserializer.deserialize_map(PolyVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn addition() {
        assert!((&p("q") + &p("-q")).is_zero());
        assert_eq!(&p("1 + q") + &p("q"), p("1 + 2*q"));
        assert_eq!(&p("q^-1") + &p("q"), p("q^-1 + q"));
    }

    #[test]
    fn multiplication() {
        assert_eq!(&p("1 + q") * &p("1 - q"), p("1 - q^2"));
        assert!((&p("q^3") * &p("q^-3")).is_one());
        assert!((&LaurentPoly::zero() * &p("3 + q^7")).is_zero());
    }

    #[test]
    fn bar_and_sign_substitution() {
        assert_eq!(p("1 + q").bar(), p("1 + q^-1"));
        assert_eq!(p("5").bar(), p("5"));
        assert_eq!(p("q^3").bar(), p("q^-3"));
        assert_eq!(p("1 + q").substitute_neg_q(), p("1 - q"));
        assert_eq!(p("q^2").substitute_neg_q(), p("q^2"));
    }

    #[test]
    fn evaluation() {
        assert_eq!(p("1 + 2*q").eval_at(1).unwrap(), 3.into());
        assert_eq!(p("q").eval_at(-1).unwrap(), (-1).into());
        assert_eq!(p("q^-1 + q").eval_at(-1).unwrap(), (-2).into());
        assert!(p("q").eval_at(2).is_err());
    }

    #[test]
    fn text_form() {
        assert_eq!(p("q^-1 + 2 + 3*q^2").to_string(), "q^-1 + 2 + 3*q^2");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!(p("-q + 1").to_string(), "1 - q");
        assert_eq!(p("- 2*q^-3 - q").to_string(), "-2*q^-3 - q");
        assert!("q^".parse::<LaurentPoly>().is_err());
        assert!("1 +".parse::<LaurentPoly>().is_err());
        assert!("".parse::<LaurentPoly>().is_err());
        assert!("q^9999999999".parse::<LaurentPoly>().is_err());
    }

    #[test]
    fn json_form() {
        let v = p("q^-1 + 2 - 3*q^2");
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, r#"{"-1":1,"0":2,"2":-3}"#);
        let back: LaurentPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
        let big = LaurentPoly::constant(BigInt::from(i64::MAX) * 4);
        let back: LaurentPoly = serde_json::from_str(&serde_json::to_string(&big).unwrap()).unwrap();
        assert_eq!(back, big);
    }

    #[test]
    fn exact_division_by_quantum_factorials() {
        let f3 = LaurentPoly::quantum_factorial(3);
        assert_eq!(LaurentPoly::quantum_integer(2), p("q^-1 + q"));
        let x = p("2 - q^5 + 7*q^-2");
        assert_eq!((&x * &f3).div_exact(&f3).unwrap(), x);
        assert!(p("1 + q").div_exact(&p("q^-1 + q")).is_err());
        assert!(p("1").div_exact(&LaurentPoly::zero()).is_err());
    }

    #[test]
    fn bar_invariant_correction_removes_nonpositive_part() {
        let c = p("3*q^-2 + 2 + 5*q + q^3");
        let a = c.bar_invariant_correction();
        assert_eq!(a, a.bar());
        let rest = &c - &a;
        assert!(rest.low_degree().unwrap() >= 1);
    }

    #[test]
    fn kl_normalization() {
        // P = 1 + q at length gap 3 becomes q^3 + q
        assert_eq!(p("1 + q").normalize_kl(3), p("q + q^3"));
        assert_eq!(p("q + q^3").classical_kl(3).unwrap(), p("1 + q"));
        assert!(p("q^2").classical_kl(3).is_err());
        assert!(p("q^5").classical_kl(3).is_err());
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((-6i64..7, -5i64..6), 0..6).prop_map(LaurentPoly::from_terms)
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a + &b, &b + &a);
        }

        #[test]
        fn involutions_commute(a in arb_poly()) {
            prop_assert_eq!(a.bar().bar(), a.clone());
            prop_assert_eq!(a.substitute_neg_q().substitute_neg_q(), a.clone());
            prop_assert_eq!(a.bar().substitute_neg_q(), a.substitute_neg_q().bar());
        }

        #[test]
        fn text_round_trip_is_fixed_point(a in arb_poly()) {
            let s = a.to_string();
            let back: LaurentPoly = s.parse().unwrap();
            prop_assert_eq!(&back, &a);
            prop_assert_eq!(back.to_string(), s);
        }
    }
}
