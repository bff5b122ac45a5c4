//! Sparse polynomials with arbitrary-precision integer coefficients.
//!
//! Text form is descending with caret exponents and explicit `*`, e.g.
//! `q^4 + 6*q^3 + 22*q^2 + 51*q + 66`. JSON form is `[[exp, coeff], ...]`
//! for one variable and `[[xexp, yexp, coeff], ...]` for two, both sorted
//! descending.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Polynomial in one variable.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct UniPoly {
    coeffs: BTreeMap<u32, BigInt>,
}

/// Polynomial in `x` and `y`, keyed by `(x-exponent, y-exponent)`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct BiPoly {
    coeffs: BTreeMap<(u32, u32), BigInt>,
}

fn add_term<K: Ord + Copy>(map: &mut BTreeMap<K, BigInt>, key: K, c: BigInt) {
    if c.is_zero() {
        return;
    }
    let slot = map.entry(key).or_insert_with(BigInt::zero);
    *slot += c;
    if slot.is_zero() {
        map.remove(&key);
    }
}

impl UniPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(0, c)
    }

    pub fn monomial(exp: u32, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero();
        add_term(&mut p.coeffs, exp, c.into());
        p
    }

    /// Builds from `(exponent, coefficient)` terms; repeated exponents add up.
    pub fn from_terms(terms: impl IntoIterator<Item = (u32, BigInt)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            add_term(&mut p.coeffs, e, c);
        }
        p
    }

    /// Dense constructor, lowest degree first.
    pub fn from_coeffs(coeffs: &[i64]) -> Self {
        Self::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (i as u32, BigInt::from(*c))),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn coeff(&self, exp: u32) -> BigInt {
        self.coeffs.get(&exp).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (u32, &BigInt)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn scalar_mul(&self, k: &BigInt) -> Self {
        Self::from_terms(self.terms().map(|(e, c)| (e, c * k)))
    }

    pub fn eval(&self, at: &BigInt) -> BigInt {
        self.terms()
            .map(|(e, c)| c * num_traits::pow(at.clone(), e as usize))
            .sum()
    }

    /// Text form in the given variable.
    pub fn render(&self, var: &str) -> String {
        render_terms(
            self.terms()
                .rev()
                .map(|(e, c)| (c.clone(), monomial_text(&[(var, e)]))),
        )
    }

    pub fn parse_in(s: &str, var: &str) -> Result<Self> {
        let terms = parse_terms(s, &[var])?;
        Ok(Self::from_terms(
            terms.into_iter().map(|(c, exps)| (exps[0], c)),
        ))
    }
}

impl BiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 0, 1)
    }

    pub fn x() -> Self {
        Self::monomial(1, 0, 1)
    }

    pub fn y() -> Self {
        Self::monomial(0, 1, 1)
    }

    pub fn monomial(xe: u32, ye: u32, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero();
        add_term(&mut p.coeffs, (xe, ye), c.into());
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((u32, u32), BigInt)>) -> Self {
        let mut p = Self::zero();
        for (k, c) in terms {
            add_term(&mut p.coeffs, k, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, xe: u32, ye: u32) -> BigInt {
        self.coeffs.get(&(xe, ye)).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = ((u32, u32), &BigInt)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    pub fn scalar_mul(&self, k: &BigInt) -> Self {
        Self::from_terms(self.terms().map(|(e, c)| (e, c * k)))
    }

    /// Multiplies by `x^a y^b`.
    pub fn shift(&self, a: u32, b: u32) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .map(|((i, j), c)| ((i + a, j + b), c.clone()))
                .collect(),
        }
    }

    /// `P(1, y)` as a polynomial in `y`.
    pub fn specialize_x1(&self) -> UniPoly {
        UniPoly::from_terms(self.terms().map(|((_, j), c)| (j, c.clone())))
    }

    /// `P(k, y)` for an integer `k`.
    pub fn specialize_x(&self, k: &BigInt) -> UniPoly {
        UniPoly::from_terms(
            self.terms()
                .map(|((i, j), c)| (j, c * num_traits::pow(k.clone(), i as usize))),
        )
    }

    pub fn eval(&self, x: &BigInt, y: &BigInt) -> BigInt {
        self.terms()
            .map(|((i, j), c)| {
                c * num_traits::pow(x.clone(), i as usize) * num_traits::pow(y.clone(), j as usize)
            })
            .sum()
    }

    pub fn render(&self) -> String {
        render_terms(
            self.terms()
                .rev()
                .map(|((i, j), c)| (c.clone(), monomial_text(&[("x", i), ("y", j)]))),
        )
    }
}

fn monomial_text(factors: &[(&str, u32)]) -> String {
    factors
        .iter()
        .filter(|(_, e)| *e > 0)
        .map(|(v, e)| {
            if *e == 1 {
                (*v).to_string()
            } else {
                format!("{v}^{e}")
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

fn render_terms(terms: impl Iterator<Item = (BigInt, String)>) -> String {
    let mut out = String::new();
    for (c, mono) in terms {
        let negative = c.is_negative();
        let mag = c.abs();
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        match (mono.is_empty(), mag.is_one()) {
            (true, _) => out.push_str(&mag.to_string()),
            (false, true) => out.push_str(&mono),
            (false, false) => {
                out.push_str(&mag.to_string());
                out.push('*');
                out.push_str(&mono);
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Parses a sum of terms `c*v1^a*v2^b` over the allowed variables. Returns
/// `(coefficient, exponents per variable)`.
fn parse_terms(s: &str, vars: &[&str]) -> Result<Vec<(BigInt, Vec<u32>)>> {
    let err = |msg: &str| Error::Parse(format!("{msg} in polynomial {s:?}"));
    let word = |c: char| c.is_ascii_alphanumeric() || c == '^';
    let mut prev: Option<char> = None;
    let mut gap = false;
    for c in s.chars() {
        if c.is_whitespace() {
            gap = true;
            continue;
        }
        if gap && prev.is_some_and(word) && word(c) {
            return Err(err("juxtaposed factors"));
        }
        gap = false;
        prev = Some(c);
    }
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(err("empty input"));
    }
    let mut terms = Vec::new();
    let mut rest = compact.as_str();
    let mut first = true;
    while !rest.is_empty() {
        let mut sign = BigInt::one();
        if let Some(r) = rest.strip_prefix('+') {
            if first {
                return Err(err("leading '+'"));
            }
            rest = r;
        } else if let Some(r) = rest.strip_prefix('-') {
            sign = -sign;
            rest = r;
        } else if !first {
            return Err(err("missing operator"));
        }
        first = false;
        let end = rest.find(['+', '-']).unwrap_or(rest.len());
        let (term, tail) = rest.split_at(end);
        rest = tail;
        if term.is_empty() {
            return Err(err("empty term"));
        }
        let mut coeff = sign;
        let mut exps = vec![0u32; vars.len()];
        let mut saw_number = false;
        for factor in term.split('*') {
            if factor.is_empty() {
                return Err(err("empty factor"));
            }
            if factor.bytes().all(|b| b.is_ascii_digit()) {
                if saw_number {
                    return Err(err("two numeric factors"));
                }
                saw_number = true;
                coeff *= BigInt::from_str(factor).map_err(|_| err("bad number"))?;
                continue;
            }
            let (name, exp) = match factor.split_once('^') {
                Some((n, e)) => {
                    if e.is_empty() || !e.bytes().all(|b| b.is_ascii_digit()) {
                        return Err(err("bad exponent"));
                    }
                    (n, e.parse::<u32>().map_err(|_| err("exponent too large"))?)
                }
                None => (factor, 1),
            };
            let slot = vars
                .iter()
                .position(|v| *v == name)
                .ok_or_else(|| err("unknown variable"))?;
            exps[slot] = exps[slot]
                .checked_add(exp)
                .ok_or_else(|| err("exponent too large"))?;
        }
        terms.push((coeff, exps));
    }
    Ok(terms)
}

impl FromStr for BiPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let terms = parse_terms(s, &["x", "y"])?;
        Ok(Self::from_terms(
            terms.into_iter().map(|(c, e)| ((e[0], e[1]), c)),
        ))
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("q"))
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&UniPoly> for UniPoly {
    fn add_assign(&mut self, rhs: &UniPoly) {
        for (e, c) in rhs.terms() {
            add_term(&mut self.coeffs, e, c.clone());
        }
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::from_terms(self.terms().map(|(e, c)| (e, -c)))
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        self + &(-rhs)
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        let mut out = UniPoly::zero();
        for (a, ca) in self.terms() {
            for (b, cb) in rhs.terms() {
                add_term(&mut out.coeffs, a + b, ca * cb);
            }
        }
        out
    }
}

impl std::iter::Sum for UniPoly {
    fn sum<I: Iterator<Item = UniPoly>>(iter: I) -> UniPoly {
        iter.fold(UniPoly::zero(), |mut acc, p| {
            acc += &p;
            acc
        })
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&BiPoly> for BiPoly {
    fn add_assign(&mut self, rhs: &BiPoly) {
        for (k, c) in rhs.terms() {
            add_term(&mut self.coeffs, k, c.clone());
        }
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly::from_terms(self.terms().map(|(k, c)| (k, -c)))
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        self + &(-rhs)
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for ((a1, b1), ca) in self.terms() {
            for ((a2, b2), cb) in rhs.terms() {
                add_term(&mut out.coeffs, (a1 + a2, b1 + b2), ca * cb);
            }
        }
        out
    }
}

impl std::iter::Sum for BiPoly {
    fn sum<I: Iterator<Item = BiPoly>>(iter: I) -> BiPoly {
        iter.fold(BiPoly::zero(), |mut acc, p| {
            acc += &p;
            acc
        })
    }
}

fn coeff_number(c: &BigInt) -> serde_json::Number {
    match c.to_i64() {
        Some(v) => v.into(),
        None => serde_json::Number::from_str(&c.to_string())
            .expect("a decimal integer is a valid JSON number"),
    }
}

fn number_coeff<E: de::Error>(n: &serde_json::Number) -> std::result::Result<BigInt, E> {
    BigInt::from_str(&n.to_string())
        .map_err(|_| E::custom(format!("coefficient {n} is not an integer")))
}

fn number_exp<E: de::Error>(n: &serde_json::Number) -> std::result::Result<u32, E> {
    n.to_string()
        .parse::<u32>()
        .map_err(|_| E::custom(format!("exponent {n} is not a small nonnegative integer")))
}

impl Serialize for UniPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.coeffs.len()))?;
        for (e, c) in self.terms().rev() {
            seq.serialize_element(&(e, coeff_number(c)))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for UniPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw: Vec<(serde_json::Number, serde_json::Number)> = Vec::deserialize(d)?;
        let mut seen = std::collections::BTreeSet::new();
        let mut terms = Vec::with_capacity(raw.len());
        for (e, c) in &raw {
            let e = number_exp(e)?;
            if !seen.insert(e) {
                return Err(de::Error::custom(format!("repeated exponent {e}")));
            }
            terms.push((e, number_coeff(c)?));
        }
        Ok(Self::from_terms(terms))
    }
}

impl Serialize for BiPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.coeffs.len()))?;
        for ((i, j), c) in self.terms().rev() {
            seq.serialize_element(&(i, j, coeff_number(c)))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for BiPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw: Vec<(serde_json::Number, serde_json::Number, serde_json::Number)> =
            Vec::deserialize(d)?;
        let mut seen = std::collections::BTreeSet::new();
        let mut terms = Vec::with_capacity(raw.len());
        for (i, j, c) in &raw {
            let key = (number_exp(i)?, number_exp(j)?);
            if !seen.insert(key) {
                return Err(de::Error::custom(format!("repeated exponent {key:?}")));
            }
            terms.push((key, number_coeff(c)?));
        }
        Ok(Self::from_terms(terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn uni(c: &[i64]) -> UniPoly {
        UniPoly::from_coeffs(c)
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(&uni(&[4, 1]) + &uni(&[11, 5, 1]), uni(&[15, 6, 1]));
        assert_eq!(&BiPoly::x() * &BiPoly::x(), BiPoly::monomial(2, 0, 1));
        let p = uni(&[3, 0, 7]);
        assert!((&UniPoly::zero() * &p).is_zero());
        assert!(p.scalar_mul(&BigInt::zero()).is_zero());
        assert!((&p - &p).is_zero());
    }

    #[test]
    fn specialization_examples() {
        let c4: BiPoly = "x^3 + x^2 + x + y".parse().unwrap();
        assert_eq!(c4.specialize_x1(), uni(&[3, 1]));
        let tri: BiPoly = "x^2 + x + y".parse().unwrap();
        assert_eq!(tri.specialize_x1(), uni(&[2, 1]));
        assert_eq!(BiPoly::one().specialize_x1(), UniPoly::one());
    }

    #[test]
    fn text_rendering() {
        assert_eq!(
            uni(&[66, 51, 22, 6, 1]).to_string(),
            "q^4 + 6*q^3 + 22*q^2 + 51*q + 66"
        );
        assert_eq!(uni(&[4, 1]).render("q"), "q + 4");
        assert_eq!(uni(&[3, 1]).render("y"), "y + 3");
        assert_eq!(uni(&[-3, 0, -1]).to_string(), "-q^2 - 3");
        assert_eq!(UniPoly::zero().to_string(), "0");
        let b = BiPoly::from_terms([((2, 1), BigInt::from(3)), ((0, 2), BigInt::from(-1))]);
        assert_eq!(b.render(), "3*x^2*y - y^2");
        assert_eq!(
            "x^3 + x^2 + x + y".parse::<BiPoly>().unwrap().render(),
            "x^3 + x^2 + x + y"
        );
    }

    #[test]
    fn text_parse_errors() {
        for bad in [
            "",
            "q^",
            "2**q",
            "+q",
            "q +",
            "z",
            "q^-1",
            "3 4",
            "q^99999999999",
        ] {
            assert!(
                UniPoly::parse_in(bad, "q").is_err(),
                "{bad:?} should not parse"
            );
        }
        assert_eq!(
            UniPoly::parse_in("2*q*q^2 - 1", "q").unwrap(),
            uni(&[-1, 0, 0, 2])
        );
    }

    #[test]
    fn json_forms() {
        let p = uni(&[66, 51, 22, 6, 1]);
        assert_eq!(
            serde_json::to_string(&p).unwrap(),
            "[[4,1],[3,6],[2,22],[1,51],[0,66]]"
        );
        let c4: BiPoly = "x^3 + x^2 + x + y".parse().unwrap();
        assert_eq!(
            serde_json::to_string(&c4).unwrap(),
            "[[3,0,1],[2,0,1],[1,0,1],[0,1,1]]"
        );
        let big = UniPoly::monomial(
            2,
            BigInt::from_str("123456789012345678901234567890").unwrap(),
        );
        let text = serde_json::to_string(&big).unwrap();
        assert_eq!(text, "[[2,123456789012345678901234567890]]");
        assert_eq!(serde_json::from_str::<UniPoly>(&text).unwrap(), big);
        assert!(serde_json::from_str::<UniPoly>("[[1,2],[1,3]]").is_err());
        assert!(serde_json::from_str::<UniPoly>("[[1.5,2]]").is_err());
        assert!(serde_json::from_str::<UniPoly>("[[1,2.5]]").is_err());
    }

    fn small_uni() -> impl Strategy<Value = UniPoly> {
        prop::collection::vec(-20i64..20, 0..5).prop_map(|c| UniPoly::from_coeffs(&c))
    }

    fn small_bi() -> impl Strategy<Value = BiPoly> {
        prop::collection::vec(((0u32..3, 0u32..3), -9i64..9), 0..5)
            .prop_map(|t| BiPoly::from_terms(t.into_iter().map(|(k, c)| (k, BigInt::from(c)))))
    }

    proptest! {
        #[test]
        fn ring_axioms(a in small_uni(), b in small_uni(), c in small_uni()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
        }

        #[test]
        fn specialization_is_multiplicative(p in small_bi(), q in small_bi()) {
            prop_assert_eq!((&p * &q).specialize_x1(), &p.specialize_x1() * &q.specialize_x1());
        }

        #[test]
        fn text_and_json_round_trip(p in small_bi(), u in small_uni()) {
            prop_assert_eq!(p.render().parse::<BiPoly>().unwrap(), p.clone());
            prop_assert_eq!(UniPoly::parse_in(&u.render("q"), "q").unwrap(), u.clone());
            let js = serde_json::to_string(&p).unwrap();
            prop_assert_eq!(serde_json::from_str::<BiPoly>(&js).unwrap(), p);
        }
    }
}
