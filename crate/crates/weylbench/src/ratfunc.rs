//! Rational functions: reduced fractions of Laurent polynomials.
//!
//! Normal form: the denominator is an ordinary polynomial (no negative
//! exponents), has per-variable minimum exponent zero, leading lex
//! coefficient 1, and shares no factor with the ordinary part of the
//! numerator. Monomial units are pushed into the numerator, which may stay
//! Laurent. Equality is then structural and agrees with cross-multiplication.

use std::collections::BTreeMap;
use std::fmt;

use num::One;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;
use crate::poly::{LaurentPoly, Q, Vars};
use crate::Result;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFunc {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RatFunc {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut r = RatFunc { num, den };
        r.normalize()?;
        Ok(r)
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        let den = LaurentPoly::one(p.vars());
        RatFunc { num: p, den }
    }

    pub fn zero(vars: &Vars) -> Self {
        Self::from_poly(LaurentPoly::zero(vars))
    }

    pub fn one(vars: &Vars) -> Self {
        Self::from_poly(LaurentPoly::one(vars))
    }

    pub fn constant(vars: &Vars, c: Q) -> Self {
        Self::from_poly(LaurentPoly::constant(vars, c))
    }

    pub fn var(vars: &Vars, name: &str) -> Result<Self> {
        Ok(Self::from_poly(LaurentPoly::var(vars, name)?))
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn vars(&self) -> &Vars {
        self.num.vars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// Denominator-free after reduction (the value is a Laurent polynomial).
    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The underlying Laurent polynomial, when denominator-free.
    pub fn as_poly(&self) -> Result<LaurentPoly> {
        if self.is_polynomial() {
            Ok(self.num.clone())
        } else {
            Err(Error::NonExactDivision(self.to_string()))
        }
    }

    fn normalize(&mut self) -> Result<()> {
        if self.num.is_zero() {
            self.den = LaurentPoly::one(self.num.vars());
            return Ok(());
        }
        let (mn, n0) = self.num.split_monomial();
        let (md, d0) = self.den.split_monomial();
        let g = n0.gcd(&d0)?;
        let mut n1 = n0.exact_div(&g)?;
        let mut d1 = d0.exact_div(&g)?;
        // make the denominator monic in lex order, absorbing the scale and the
        // monomial shift into the numerator
        let lead = d1
            .terms()
            .next_back()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Q::one);
        let inv = Q::one() / lead;
        d1 = d1.scale(&inv);
        let shift: Vec<i64> = mn.iter().zip(md.iter()).map(|(a, b)| a - b).collect();
        n1 = n1.mul_monomial(&shift, &inv);
        self.num = n1;
        self.den = d1;
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let num = self
            .num
            .mul(&other.den)?
            .add(&other.num.mul(&self.den)?)?;
        let den = self.den.mul(&other.den)?;
        RatFunc::new(num, den)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        RatFunc::new(self.num.mul(&other.num)?, self.den.mul(&other.den)?)
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut r = RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        };
        r.normalize().expect("scaling keeps denominator nonzero");
        r
    }

    pub fn inv(&self) -> Result<Self> {
        if self.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.mul(&other.inv()?)
    }

    pub fn pow_i(&self, n: i64) -> Result<Self> {
        if n < 0 {
            return self.inv()?.pow_i(-n);
        }
        let mut r = RatFunc::one(self.vars());
        for _ in 0..n {
            r = r.mul(self)?;
        }
        Ok(r)
    }

    /// Cross-multiplication equality test, independent of the normal form.
    pub fn eq_cross(&self, other: &Self) -> Result<bool> {
        Ok(self.num.mul(&other.den)?.eq(&other.num.mul(&self.den)?))
    }

    /// Substitute variables by rational functions.
    pub fn substitute(&self, map: &BTreeMap<String, RatFunc>) -> Result<Self> {
        let target = map
            .values()
            .next()
            .map(|r| r.vars().clone())
            .unwrap_or_else(|| self.vars().clone());
        let image = |p: &LaurentPoly| -> Result<RatFunc> {
            let mut acc = RatFunc::zero(&target);
            for (e, c) in p.terms() {
                let mut t = RatFunc::constant(&target, c.clone());
                for (i, k) in e.iter().enumerate() {
                    if *k == 0 {
                        continue;
                    }
                    let name = &p.vars().names()[i];
                    let img = match map.get(name) {
                        Some(r) => r.clone(),
                        None => RatFunc::var(&target, name)?,
                    };
                    t = t.mul(&img.pow_i(*k)?)?;
                }
                acc = acc.add(&t)?;
            }
            Ok(acc)
        };
        image(&self.num)?.div(&image(&self.den)?)
    }

    /// Substitute a single variable by a polynomial.
    pub fn eval_var(&self, name: &str, value: &LaurentPoly) -> Result<Self> {
        let mut m = BTreeMap::new();
        m.insert(name.to_string(), RatFunc::from_poly(value.clone()));
        self.substitute(&m)
    }

    /// Parse `num` or `(num)/(den)` in the canonical text format.
    pub fn parse(vars: &Vars, input: &str) -> Result<Self> {
        let s = input.trim();
        if let Some((n, d)) = split_fraction(s) {
            let num = LaurentPoly::parse(vars, n)?;
            let den = LaurentPoly::parse(vars, d)?;
            RatFunc::new(num, den)
        } else {
            Ok(RatFunc::from_poly(LaurentPoly::parse(vars, s)?))
        }
    }
}

/// Split `"(a)/(b)"` into `("a", "b")`; anything else is a plain polynomial.
fn split_fraction(s: &str) -> Option<(&str, &str)> {
    if !s.starts_with('(') || !s.ends_with(')') {
        return None;
    }
    let bytes = s.as_bytes();
    let mut depth = 0usize;
    for i in 0..bytes.len() {
        match bytes[i] {
            b'(' => depth += 1,
            b')' => {
                depth -= 1;
                if depth == 0 {
                    // expect ")/(" here unless this is the final char
                    if i + 2 < bytes.len() && &s[i + 1..i + 3] == "/(" {
                        return Some((&s[1..i], &s[i + 3..s.len() - 1]));
                    }
                    return None;
                }
            }
            _ => {}
        }
    }
    None
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[derive(Serialize, Deserialize)]
struct RatFuncJson {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl Serialize for RatFunc {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RatFuncJson {
            num: self.num.clone(),
            den: self.den.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RatFunc {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rj = RatFuncJson::deserialize(d)?;
        RatFunc::new(rj.num, rj.den).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn v2() -> Vars {
        Vars::new(vec!["x", "y"])
    }

    #[test]
    fn reduces_difference_of_squares() {
        // (y^2 - 1)/(y - 1) -> y + 1
        let v = Vars::new(vec!["y"]);
        let num = LaurentPoly::parse(&v, "y^2 - 1").unwrap();
        let den = LaurentPoly::parse(&v, "y - 1").unwrap();
        let r = RatFunc::new(num, den).unwrap();
        assert!(r.is_polynomial());
        assert_eq!(r.num(), &LaurentPoly::parse(&v, "y + 1").unwrap());
    }

    #[test]
    fn no_common_factor_unchanged() {
        // (t - t^-1)/(x - x^-1) stays a genuine fraction; the denominator is
        // normalized to the ordinary polynomial x^2 - 1 with the monomial
        // pushed into the numerator.
        let v = Vars::new(vec!["x", "t"]);
        let num = LaurentPoly::parse(&v, "t - t^-1").unwrap();
        let den = LaurentPoly::parse(&v, "x - x^-1").unwrap();
        let r = RatFunc::new(num.clone(), den.clone()).unwrap();
        assert!(!r.is_polynomial());
        // cross-multiplied identity with the original data
        let back = r.num().mul(&den).unwrap();
        let orig = num.mul(r.den()).unwrap();
        assert_eq!(back, orig);
    }

    #[test]
    fn equality_cross_multiplication_random() {
        // equality is an equivalence relation consistent with cross-multiplication
        let v = v2();
        let mut rng = StdRng::seed_from_u64(7);
        let rand_poly = |rng: &mut StdRng| {
            let mut p = LaurentPoly::zero(&v);
            for _ in 0..3 {
                let e = vec![rng.random_range(-2..3), rng.random_range(0..3)];
                let c = crate::poly::qi(rng.random_range(-4..5));
                p = p.add(&LaurentPoly::monomial(&v, e, c)).unwrap();
            }
            if p.is_zero() {
                LaurentPoly::one(&v)
            } else {
                p
            }
        };
        for _ in 0..200 {
            let a = rand_poly(&mut rng);
            let b = rand_poly(&mut rng);
            let c = rand_poly(&mut rng);
            let r1 = RatFunc::new(a.mul(&c).unwrap(), b.mul(&c).unwrap()).unwrap();
            let r2 = RatFunc::new(a.clone(), b.clone()).unwrap();
            assert_eq!(r1, r2);
            assert!(r1.eq_cross(&r2).unwrap());
        }
    }

    #[test]
    fn text_round_trip() {
        let v = v2();
        let r = RatFunc::parse(&v, "(y - 1)/(x)").unwrap();
        let shown = r.to_string();
        let back = RatFunc::parse(&v, &shown).unwrap();
        assert_eq!(r, back);
    }
}
