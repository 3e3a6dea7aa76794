//! Exact multivariate Laurent polynomials over the rationals.
//!
//! Terms are kept in a `BTreeMap` from integer exponent vectors to nonzero
//! rational coefficients, so every polynomial has one canonical
//! representation. The term order used for display and leading-term
//! extraction is descending lexicographic on exponent vectors in the fixed
//! variable order of the context.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;
use crate::Result;

/// Exact rational scalar.
pub type Q = BigRational;

/// Build a rational from an integer pair.
pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Build a rational from an integer.
pub fn qi(n: i64) -> Q {
    Q::from(BigInt::from(n))
}

/// An ordered variable context, shared cheaply between polynomials.
#[derive(Clone, Debug, Eq)]
pub struct Vars(Arc<Vec<String>>);

impl Vars {
    pub fn new<S: Into<String>>(names: Vec<S>) -> Self {
        Vars(Arc::new(names.into_iter().map(Into::into).collect()))
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.0
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }
}

impl PartialEq for Vars {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl fmt::Display for Vars {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.0.join(","))
    }
}

/// Exact multivariate Laurent polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPoly {
    vars: Vars,
    terms: BTreeMap<Vec<i64>, Q>,
}

fn lex_ge(a: &[i64], b: &[i64]) -> bool {
    for (x, y) in a.iter().zip(b.iter()) {
        match x.cmp(y) {
            Ordering::Greater => return true,
            Ordering::Less => return false,
            Ordering::Equal => {}
        }
    }
    true
}

impl LaurentPoly {
    pub fn zero(vars: &Vars) -> Self {
        LaurentPoly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(vars: &Vars) -> Self {
        Self::constant(vars, Q::one())
    }

    pub fn constant(vars: &Vars, c: Q) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![0; vars.len()], c);
        }
        LaurentPoly {
            vars: vars.clone(),
            terms,
        }
    }

    pub fn var(vars: &Vars, name: &str) -> Result<Self> {
        Self::monomial_named(vars, &[(name, 1)], Q::one())
    }

    /// Monomial `c * prod name^exp`.
    pub fn monomial_named(vars: &Vars, exps: &[(&str, i64)], c: Q) -> Result<Self> {
        let mut e = vec![0i64; vars.len()];
        for (name, k) in exps {
            e[vars.index_of(name)?] += k;
        }
        Ok(Self::monomial(vars, e, c))
    }

    pub fn monomial(vars: &Vars, exp: Vec<i64>, c: Q) -> Self {
        assert_eq!(exp.len(), vars.len(), "exponent vector length");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        LaurentPoly {
            vars: vars.clone(),
            terms,
        }
    }

    pub fn from_terms(vars: &Vars, list: Vec<(Vec<i64>, Q)>) -> Self {
        let mut p = Self::zero(vars);
        for (e, c) in list {
            p.add_term(e, c);
        }
        p
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn terms(&self) -> std::collections::btree_map::Iter<'_, Vec<i64>, Q> {
        self.terms.iter()
    }

    /// Leading term in descending lex order, if nonzero.
    pub fn leading_term(&self) -> Option<(&Vec<i64>, &Q)> {
        self.terms.iter().next_back()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.is_constant() && self.constant_value().is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty()
            || (self.terms.len() == 1 && self.terms.keys().next().unwrap().iter().all(|&e| e == 0))
    }

    /// Constant term (zero exponent vector) coefficient.
    pub fn constant_value(&self) -> Q {
        self.terms
            .get(&vec![0; self.vars.len()])
            .cloned()
            .unwrap_or_else(Q::zero)
    }

    /// True if this is a single term (a monomial), hence a unit in the Laurent ring.
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// True if no variable occurs with negative exponent.
    pub fn is_ordinary(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&k| k >= 0))
    }

    pub fn coeff(&self, exp: &[i64]) -> Q {
        self.terms.get(exp).cloned().unwrap_or_else(Q::zero)
    }

    fn add_term(&mut self, exp: Vec<i64>, c: Q) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().clone() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check_vars(&self, other: &Self) -> Result<()> {
        if self.vars != other.vars {
            return Err(Error::VariableMismatch(
                self.vars.to_string(),
                other.vars.to_string(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut r = self.clone();
        for (e, c) in &other.terms {
            r.add_term(e.clone(), c.clone());
        }
        Ok(r)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, k)| (e.clone(), k.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut r = Self::zero(&self.vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<i64> = ea.iter().zip(eb.iter()).map(|(x, y)| x + y).collect();
                r.add_term(e, ca.clone() * cb.clone());
            }
        }
        Ok(r)
    }

    pub fn mul_monomial(&self, exp: &[i64], c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, k)| {
                    (
                        e.iter().zip(exp.iter()).map(|(x, y)| x + y).collect(),
                        k.clone() * c.clone(),
                    )
                })
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Result<Self> {
        let mut r = Self::one(&self.vars);
        for _ in 0..n {
            r = r.mul(self)?;
        }
        Ok(r)
    }

    /// Integer power; negative exponents require a monomial.
    pub fn pow_i(&self, n: i64) -> Result<Self> {
        if n >= 0 {
            return self.pow(n as u32);
        }
        if !self.is_monomial() {
            return Err(Error::NonUnitInverse(self.to_string()));
        }
        let (e, c) = self.terms.iter().next().unwrap();
        let inv_e: Vec<i64> = e.iter().map(|k| -k).collect();
        let inv = LaurentPoly::monomial(&self.vars, inv_e, Q::one() / c.clone());
        inv.pow((-n) as u32)
    }

    /// Per-variable minimum exponent over all terms; zero polynomial gives zeros.
    pub fn min_exponents(&self) -> Vec<i64> {
        let n = self.vars.len();
        let mut m = vec![i64::MAX; n];
        for e in self.terms.keys() {
            for i in 0..n {
                m[i] = m[i].min(e[i]);
            }
        }
        if self.terms.is_empty() {
            m = vec![0; n];
        }
        m
    }

    /// Splits `self = monomial * ordinary` where the ordinary part has
    /// per-variable minimum exponent zero. Returns (monomial exponents, ordinary part).
    pub fn split_monomial(&self) -> (Vec<i64>, LaurentPoly) {
        let m = self.min_exponents();
        let neg: Vec<i64> = m.iter().map(|k| -k).collect();
        (m, self.mul_monomial(&neg, &Q::one()))
    }

    /// Leading term in descending lex order.
    fn leading(&self) -> Option<(&Vec<i64>, &Q)> {
        self.terms.iter().next_back()
    }

    /// Exact division; errors when `self` is not a multiple of `d`.
    pub fn exact_div(&self, d: &Self) -> Result<Self> {
        self.check_vars(d)?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero(&self.vars));
        }
        let (ms, s) = self.split_monomial();
        let (md, dd) = d.split_monomial();
        let mut rem = s;
        let mut quo = Self::zero(&self.vars);
        let (lde, ldc) = {
            let (e, c) = dd.leading().unwrap();
            (e.clone(), c.clone())
        };
        while !rem.is_zero() {
            let (lre, lrc) = {
                let (e, c) = rem.leading().unwrap();
                (e.clone(), c.clone())
            };
            let qe: Vec<i64> = lre.iter().zip(lde.iter()).map(|(a, b)| a - b).collect();
            if qe.iter().any(|&k| k < 0) {
                return Err(Error::NonExactDivision(format!(
                    "{} by {}",
                    self, d
                )));
            }
            let qc = lrc / ldc.clone();
            let qt = Self::monomial(&self.vars, qe, qc);
            rem = rem.sub(&qt.mul(&dd)?)?;
            if let Some((e, _)) = rem.leading() {
                if lex_ge(e, &lre) {
                    return Err(Error::NonExactDivision(format!("{} by {}", self, d)));
                }
            }
            quo = quo.add(&qt)?;
        }
        let shift: Vec<i64> = ms.iter().zip(md.iter()).map(|(a, b)| a - b).collect();
        Ok(quo.mul_monomial(&shift, &Q::one()))
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.exact_div(self).is_ok()
    }

    /// Substitute variables by polynomials. Images must be monomials when the
    /// variable occurs with a negative exponent. Unmapped variables map to themselves.
    pub fn substitute(&self, map: &BTreeMap<String, LaurentPoly>) -> Result<Self> {
        let target_vars = map
            .values()
            .next()
            .map(|p| p.vars.clone())
            .unwrap_or_else(|| self.vars.clone());
        for p in map.values() {
            if p.vars != target_vars {
                return Err(Error::VariableMismatch(
                    p.vars.to_string(),
                    target_vars.to_string(),
                ));
            }
        }
        let images: Vec<LaurentPoly> = self
            .vars
            .names()
            .iter()
            .map(|n| match map.get(n) {
                Some(p) => Ok(p.clone()),
                None => LaurentPoly::var(&target_vars, n),
            })
            .collect::<Result<_>>()?;
        let mut acc = LaurentPoly::zero(&target_vars);
        for (e, c) in &self.terms {
            let mut t = LaurentPoly::constant(&target_vars, c.clone());
            for (i, k) in e.iter().enumerate() {
                if *k == 0 {
                    continue;
                }
                t = t.mul(&images[i].pow_i(*k)?)?;
            }
            acc = acc.add(&t)?;
        }
        Ok(acc)
    }

    /// Substitute a single variable.
    pub fn eval_var(&self, name: &str, value: &LaurentPoly) -> Result<Self> {
        let mut m = BTreeMap::new();
        m.insert(name.to_string(), value.clone());
        // keep all other variables in place: images must share the value's context,
        // which callers arrange by using the same Vars.
        self.substitute(&m)
    }

    /// Reinterpret in a new variable context (a superset or reordering).
    pub fn extend_vars(&self, vars: &Vars) -> Result<Self> {
        let idx: Vec<usize> = self
            .vars
            .names()
            .iter()
            .map(|n| vars.index_of(n))
            .collect::<Result<_>>()?;
        let mut p = LaurentPoly::zero(vars);
        for (e, c) in &self.terms {
            let mut ne = vec![0i64; vars.len()];
            for (i, k) in e.iter().enumerate() {
                ne[idx[i]] = *k;
            }
            p.add_term(ne, c.clone());
        }
        Ok(p)
    }

    /// Partial derivative with respect to a named variable.
    pub fn derivative(&self, name: &str) -> Result<Self> {
        let i = self.vars.index_of(name)?;
        let mut out = Self::zero(&self.vars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            out.add_term(e2, c.clone() * qi(e[i]));
        }
        Ok(out)
    }

    /// Total degree of the highest term (ordinary polynomials).
    pub fn total_degree(&self) -> i64 {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<i64>())
            .max()
            .unwrap_or(0)
    }

    /// Drop all terms of total degree > `order` (used for truncated series).
    pub fn truncate(&self, order: i64) -> Self {
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<i64>() <= order)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Multivariate GCD. Monomial parts contribute the componentwise minimum
    /// exponent; the polynomial part is normalized with leading lex
    /// coefficient 1. The result genuinely divides both arguments.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        if self.is_zero() && other.is_zero() {
            return Ok(Self::zero(&self.vars));
        }
        if self.is_zero() {
            let (m, o) = other.split_monomial();
            return Ok(monic(&o).mul_monomial(&m, &Q::one()));
        }
        if other.is_zero() {
            let (m, o) = self.split_monomial();
            return Ok(monic(&o).mul_monomial(&m, &Q::one()));
        }
        let (ma, a) = self.split_monomial();
        let (mb, b) = other.split_monomial();
        let g0 = monic(&gcd_ordinary(&a, &b)?);
        let m: Vec<i64> = ma.iter().zip(mb.iter()).map(|(x, y)| (*x).min(*y)).collect();
        Ok(g0.mul_monomial(&m, &Q::one()))
    }
}

/// Scale so the leading lex coefficient is 1.
fn monic(p: &LaurentPoly) -> LaurentPoly {
    match p.leading() {
        None => p.clone(),
        Some((_, c)) => {
            let inv = Q::one() / c.clone();
            p.scale(&inv)
        }
    }
}

/// GCD of ordinary polynomials with min exponent 0, by univariate-recursive
/// content computation (primitive pseudo-remainder sequence in the last
/// variable that actually occurs).
fn gcd_ordinary(a: &LaurentPoly, b: &LaurentPoly) -> Result<LaurentPoly> {
    let vars = a.vars().clone();
    if a.is_constant() || b.is_constant() {
        return Ok(if a.is_zero() && b.is_zero() {
            LaurentPoly::zero(&vars)
        } else {
            LaurentPoly::one(&vars)
        });
    }
    // main variable: last one occurring in either polynomial
    let n = vars.len();
    let mut main = None;
    for i in (0..n).rev() {
        let occurs = a.terms.keys().chain(b.terms.keys()).any(|e| e[i] != 0);
        if occurs {
            main = Some(i);
            break;
        }
    }
    let main = match main {
        Some(i) => i,
        None => return Ok(LaurentPoly::one(&vars)),
    };
    let ua = to_univariate(a, main);
    let ub = to_univariate(b, main);
    let (ca, pa) = content_primitive(&ua)?;
    let (cb, pb) = content_primitive(&ub)?;
    let cont_gcd = ca.gcd(&cb)?;
    let prim_gcd = primitive_prs(pa, pb, main)?;
    cont_gcd.mul(&prim_gcd)
}

/// Dense coefficient list in the chosen main variable.
fn to_univariate(p: &LaurentPoly, main: usize) -> Vec<LaurentPoly> {
    let deg = p.terms.keys().map(|e| e[main]).max().unwrap_or(0) as usize;
    let mut out = vec![LaurentPoly::zero(p.vars()); deg + 1];
    for (e, c) in &p.terms {
        let mut e2 = e.clone();
        let d = e2[main] as usize;
        e2[main] = 0;
        out[d].add_term(e2, c.clone());
    }
    out
}

fn from_univariate(coeffs: &[LaurentPoly], main: usize, vars: &Vars) -> LaurentPoly {
    let mut p = LaurentPoly::zero(vars);
    for (d, c) in coeffs.iter().enumerate() {
        for (e, q) in &c.terms {
            let mut e2 = e.clone();
            e2[main] += d as i64;
            p.add_term(e2, q.clone());
        }
    }
    p
}

fn uni_trim(c: &mut Vec<LaurentPoly>) {
    while c.len() > 1 && c.last().unwrap().is_zero() {
        c.pop();
    }
}

/// (content, primitive part) of a univariate-over-ring polynomial.
fn content_primitive(u: &[LaurentPoly]) -> Result<(LaurentPoly, Vec<LaurentPoly>)> {
    let vars = u[0].vars().clone();
    let mut cont = LaurentPoly::zero(&vars);
    for c in u {
        cont = cont.gcd(c)?;
        if cont.is_one() {
            break;
        }
    }
    if cont.is_zero() {
        return Ok((LaurentPoly::zero(&vars), u.to_vec()));
    }
    let prim: Vec<LaurentPoly> = u
        .iter()
        .map(|c| c.exact_div(&cont))
        .collect::<Result<_>>()?;
    Ok((cont, prim))
}

fn uni_is_zero(c: &[LaurentPoly]) -> bool {
    c.iter().all(|p| p.is_zero())
}

/// Pseudo-remainder of `a` by `b` (trimmed, nonzero) in the main variable.
fn pseudo_rem(a: &[LaurentPoly], b: &[LaurentPoly]) -> Result<Vec<LaurentPoly>> {
    let vars = b[0].vars().clone();
    let db = b.len() - 1;
    let lb = b[db].clone();
    let mut r = a.to_vec();
    uni_trim(&mut r);
    while !uni_is_zero(&r) && r.len() - 1 >= db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        // r := lb*r - lr*x^(dr-db)*b
        let mut nr = vec![LaurentPoly::zero(&vars); dr + 1];
        for (i, c) in r.iter().enumerate() {
            nr[i] = c.mul(&lb)?;
        }
        for (i, c) in b.iter().enumerate() {
            nr[i + dr - db] = nr[i + dr - db].sub(&c.mul(&lr)?)?;
        }
        r = nr;
        uni_trim(&mut r);
    }
    Ok(r)
}

/// Primitive PRS gcd of two primitive univariate-over-ring polynomials.
fn primitive_prs(
    mut a: Vec<LaurentPoly>,
    mut b: Vec<LaurentPoly>,
    main: usize,
) -> Result<LaurentPoly> {
    let vars = a[0].vars().clone();
    uni_trim(&mut a);
    uni_trim(&mut b);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        if uni_is_zero(&b) {
            return Ok(from_univariate(&a, main, &vars));
        }
        let r = pseudo_rem(&a, &b)?;
        let rp = if uni_is_zero(&r) {
            r
        } else {
            content_primitive(&r)?.1
        };
        a = b;
        b = rp;
        uni_trim(&mut a);
        uni_trim(&mut b);
    }
}

// ---------------------------------------------------------------------------
// text format
// ---------------------------------------------------------------------------

fn fmt_q(c: &Q) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        // descending lex
        for (e, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let mag = c.abs();
            let mut parts: Vec<String> = Vec::new();
            let is_const = e.iter().all(|&k| k == 0);
            if !mag.is_one() || is_const {
                parts.push(fmt_q(&mag));
            }
            for (i, k) in e.iter().enumerate() {
                if *k == 0 {
                    continue;
                }
                if *k == 1 {
                    parts.push(self.vars.names()[i].clone());
                } else {
                    parts.push(format!("{}^{}", self.vars.names()[i], k));
                }
            }
            let body = parts.join("*");
            if first {
                if neg {
                    write!(f, "-{}", body)?;
                } else {
                    write!(f, "{}", body)?;
                }
                first = false;
            } else if neg {
                write!(f, " - {}", body)?;
            } else {
                write!(f, " + {}", body)?;
            }
        }
        Ok(())
    }
}

struct Lexer<'a> {
    s: &'a [u8],
    pos: usize,
}

#[derive(Debug, PartialEq, Clone)]
enum Tok {
    Plus,
    Minus,
    Star,
    Caret,
    Int(BigInt),
    Ident(String),
    Slash,
    End,
}

impl<'a> Lexer<'a> {
    fn new(s: &'a str) -> Self {
        Lexer { s: s.as_bytes(), pos: 0 }
    }

    fn next(&mut self) -> Result<Tok> {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        if self.pos >= self.s.len() {
            return Ok(Tok::End);
        }
        let c = self.s[self.pos];
        self.pos += 1;
        match c {
            b'+' => Ok(Tok::Plus),
            b'-' => Ok(Tok::Minus),
            b'*' => Ok(Tok::Star),
            b'^' => Ok(Tok::Caret),
            b'/' => Ok(Tok::Slash),
            b'0'..=b'9' => {
                let start = self.pos - 1;
                while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let txt = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
                Ok(Tok::Int(BigInt::from_str(txt).map_err(|e| Error::Parse(e.to_string()))?))
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos - 1;
                while self.pos < self.s.len()
                    && (self.s[self.pos].is_ascii_alphanumeric() || self.s[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                Ok(Tok::Ident(
                    std::str::from_utf8(&self.s[start..self.pos]).unwrap().to_string(),
                ))
            }
            other => Err(Error::Parse(format!("unexpected character '{}'", other as char))),
        }
    }

    fn peek(&mut self) -> Result<Tok> {
        let save = self.pos;
        let t = self.next()?;
        self.pos = save;
        Ok(t)
    }
}

impl LaurentPoly {
    /// Parse the canonical text format, e.g. `3*x^2*y^-1 + 1/2*t - 4`.
    pub fn parse(vars: &Vars, input: &str) -> Result<Self> {
        let mut lx = Lexer::new(input);
        let mut acc = LaurentPoly::zero(vars);
        let mut sign = Q::one();
        // optional leading sign
        match lx.peek()? {
            Tok::Minus => {
                lx.next()?;
                sign = -Q::one();
            }
            Tok::Plus => {
                lx.next()?;
            }
            _ => {}
        }
        loop {
            let term = Self::parse_term(vars, &mut lx)?;
            acc = acc.add(&term.scale(&sign))?;
            match lx.next()? {
                Tok::Plus => sign = Q::one(),
                Tok::Minus => sign = -Q::one(),
                Tok::End => break,
                t => return Err(Error::Parse(format!("unexpected token {:?}", t))),
            }
        }
        Ok(acc)
    }

    fn parse_term(vars: &Vars, lx: &mut Lexer) -> Result<Self> {
        let mut coeff = Q::one();
        let mut exp = vec![0i64; vars.len()];
        let mut saw_factor = false;
        loop {
            match lx.peek()? {
                Tok::Int(_) => {
                    let n = match lx.next()? {
                        Tok::Int(n) => n,
                        _ => unreachable!(),
                    };
                    let mut val = Q::from(n);
                    if lx.peek()? == Tok::Slash {
                        lx.next()?;
                        match lx.next()? {
                            Tok::Int(d) => {
                                if d.is_zero() {
                                    return Err(Error::Parse("zero denominator".into()));
                                }
                                val /= Q::from(d);
                            }
                            t => return Err(Error::Parse(format!("expected denominator, got {:?}", t))),
                        }
                    }
                    coeff *= val;
                    saw_factor = true;
                }
                Tok::Ident(_) => {
                    let name = match lx.next()? {
                        Tok::Ident(n) => n,
                        _ => unreachable!(),
                    };
                    let idx = vars.index_of(&name)?;
                    let mut k: i64 = 1;
                    if lx.peek()? == Tok::Caret {
                        lx.next()?;
                        let mut neg = false;
                        if lx.peek()? == Tok::Minus {
                            lx.next()?;
                            neg = true;
                        }
                        match lx.next()? {
                            Tok::Int(n) => {
                                let v: i64 = n
                                    .try_into()
                                    .map_err(|_| Error::Parse("exponent too large".into()))?;
                                k = if neg { -v } else { v };
                            }
                            t => return Err(Error::Parse(format!("expected exponent, got {:?}", t))),
                        }
                    }
                    exp[idx] += k;
                    saw_factor = true;
                }
                _ => break,
            }
            if lx.peek()? == Tok::Star {
                lx.next()?;
            } else {
                break;
            }
        }
        if !saw_factor {
            return Err(Error::Parse("empty term".into()));
        }
        Ok(LaurentPoly::monomial(vars, exp, coeff))
    }
}

// ---------------------------------------------------------------------------
// JSON format: {vars, terms:[{exp:[...], num, den}]}
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct TermJson {
    exp: Vec<i64>,
    num: String,
    den: String,
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    vars: Vec<String>,
    terms: Vec<TermJson>,
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| TermJson {
                exp: e.clone(),
                num: c.numer().to_string(),
                den: c.denom().to_string(),
            })
            .collect();
        PolyJson {
            vars: self.vars.names().to_vec(),
            terms,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let pj = PolyJson::deserialize(d)?;
        let vars = Vars::new(pj.vars);
        let mut p = LaurentPoly::zero(&vars);
        for t in pj.terms {
            let num = BigInt::from_str(&t.num).map_err(D::Error::custom)?;
            let den = BigInt::from_str(&t.den).map_err(D::Error::custom)?;
            if den.is_zero() {
                return Err(D::Error::custom("zero denominator"));
            }
            p.add_term(t.exp, Q::new(num, den));
        }
        Ok(p)
    }
}
