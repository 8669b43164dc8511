//! Multivariate power series known modulo a power of the maximal ideal, and a
//! small parser for polynomial input.

use crate::scalar::{fmt_rational, rat, Rational};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

/// Largest exponent the parser accepts.
pub const MAX_EXPONENT: u32 = 100_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("variable count mismatch: {0} vs {1}")]
    VarMismatch(usize, usize),
    #[error("series is not a unit (ord >= 1)")]
    NonUnit,
    #[error("syntax error at offset {offset}: {msg}")]
    Syntax { offset: usize, msg: String },
    #[error("unknown variable `{name}` at offset {offset}")]
    UnknownVariable { name: String, offset: usize },
    #[error("exponent overflow at offset {offset}")]
    ExponentOverflow { offset: usize },
}

impl SeriesError {
    pub fn offset(&self) -> Option<usize> {
        match self {
            SeriesError::Syntax { offset, .. }
            | SeriesError::UnknownVariable { offset, .. }
            | SeriesError::ExponentOverflow { offset } => Some(*offset),
            _ => None,
        }
    }
}

/// Exponent vector. Ordered by total degree, then with `x` heavier terms first,
/// so `x^3 < x^2*y < x*y^2 < y^3`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Monomial {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Monomial {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, o: &Monomial) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a <= b)
    }

    /// `o / self`, assuming `self` divides `o`.
    pub fn quotient(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| b - a).collect())
    }

    /// All monomials in `nvars` variables of total degree exactly `d`, in order.
    pub fn of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; nvars];
        fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            let n = cur.len();
            if i + 1 == n {
                cur[i] = left;
                out.push(Monomial(cur.clone()));
                return;
            }
            for e in (0..=left).rev() {
                cur[i] = e;
                rec(i + 1, left - e, cur, out);
            }
            cur[i] = 0;
        }
        if nvars == 0 {
            if d == 0 {
                out.push(Monomial(vec![]));
            }
            return out;
        }
        rec(0, d, &mut cur, &mut out);
        out
    }

    /// All monomials of total degree `< n`, in order.
    pub fn below(nvars: usize, n: u32) -> Vec<Monomial> {
        (0..n).flat_map(|d| Monomial::of_degree(nvars, d)).collect()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            for (a, b) in self.0.iter().zip(&other.0) {
                match b.cmp(a) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Total-degree precision: known modulo `m^N`, or exact.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum Precision {
    Trunc(u32),
    Exact,
}

impl Precision {
    pub fn min(self, o: Precision) -> Precision {
        match (self, o) {
            (Precision::Exact, p) | (p, Precision::Exact) => p,
            (Precision::Trunc(a), Precision::Trunc(b)) => Precision::Trunc(a.min(b)),
        }
    }

    pub fn admits(self, deg: u32) -> bool {
        match self {
            Precision::Exact => true,
            Precision::Trunc(n) => deg < n,
        }
    }
}

impl fmt::Display for Precision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Precision::Exact => write!(f, "inf"),
            Precision::Trunc(n) => write!(f, "{n}"),
        }
    }
}

/// Result of `ord`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Order {
    Finite(u32),
    Infinite,
    /// Zero modulo `m^N`; the true order is at least `N`.
    AtLeast(u32),
}

impl Order {
    pub fn finite(self) -> Option<u32> {
        match self {
            Order::Finite(d) => Some(d),
            _ => None,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(d) => write!(f, "{d}"),
            Order::Infinite => write!(f, "inf"),
            Order::AtLeast(n) => write!(f, ">={n}"),
        }
    }
}

/// Power series in `nvars` variables, stored as a zero-free coefficient table.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct TruncatedSeries {
    nvars: usize,
    prec: Precision,
    #[serde(with = "terms_serde")]
    terms: BTreeMap<Monomial, Rational>,
}

/// Coefficient tables serialize as `[[exponents], "n/d"]` pairs.
mod terms_serde {
    use super::{Monomial, Rational};
    use serde::{de::Error, Deserialize, Deserializer, Serialize, Serializer};
    use std::collections::BTreeMap;

    pub fn serialize<S: Serializer>(t: &BTreeMap<Monomial, Rational>, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<(&Vec<u32>, String)> = t.iter().map(|(m, c)| (&m.0, c.to_string())).collect();
        v.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<Monomial, Rational>, D::Error> {
        let v: Vec<(Vec<u32>, String)> = Vec::deserialize(d)?;
        v.into_iter()
            .map(|(e, c)| c.parse::<Rational>().map(|c| (Monomial(e), c)).map_err(D::Error::custom))
            .collect()
    }
}

impl TruncatedSeries {
    pub fn zero(nvars: usize) -> Self {
        TruncatedSeries { nvars, prec: Precision::Exact, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::monomial(nvars, Monomial::one(nvars), c)
    }

    pub fn from_int(nvars: usize, c: i64) -> Self {
        Self::constant(nvars, rat(c))
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_int(nvars, 1)
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::monomial(nvars, Monomial::var(nvars, i), rat(1))
    }

    pub fn monomial(nvars: usize, m: Monomial, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        TruncatedSeries { nvars, prec: Precision::Exact, terms }
    }

    /// Builds a series from `(exponents, coefficient)` pairs, summing repeats.
    pub fn from_terms(nvars: usize, prec: Precision, it: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut s = TruncatedSeries { nvars, prec, terms: BTreeMap::new() };
        for (m, c) in it {
            if prec.admits(m.degree()) {
                s.add_term(m, c);
            }
        }
        s
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m.clone()).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn precision(&self) -> Precision {
        self.prec
    }

    pub fn is_exact(&self) -> bool {
        self.prec == Precision::Exact
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::one(self.nvars))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest total degree present (`None` for zero).
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn truncate(&self, n: u32) -> Self {
        let prec = self.prec.min(Precision::Trunc(n));
        TruncatedSeries {
            nvars: self.nvars,
            prec,
            terms: self.terms.iter().filter(|(m, _)| m.degree() < n).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// Same coefficients, but with the precision marker replaced.
    pub fn with_precision(&self, prec: Precision) -> Self {
        match prec {
            Precision::Exact => TruncatedSeries { prec, ..self.clone() },
            Precision::Trunc(n) => {
                let mut t = self.truncate(n);
                t.prec = prec;
                t
            }
        }
    }

    fn check(&self, o: &Self) -> Result<(), SeriesError> {
        if self.nvars != o.nvars {
            Err(SeriesError::VarMismatch(self.nvars, o.nvars))
        } else {
            Ok(())
        }
    }

    pub fn try_add(&self, o: &Self) -> Result<Self, SeriesError> {
        self.check(o)?;
        let prec = self.prec.min(o.prec);
        let mut out = self.with_precision(prec);
        for (m, c) in &o.terms {
            if prec.admits(m.degree()) {
                out.add_term(m.clone(), c.clone());
            }
        }
        Ok(out)
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self, SeriesError> {
        self.check(o)?;
        let prec = self.prec.min(o.prec);
        let mut out = TruncatedSeries { nvars: self.nvars, prec, terms: BTreeMap::new() };
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                if prec.admits(m1.degree() + m2.degree()) {
                    out.add_term(m1.mul(m2), c1 * c2);
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, o: &Self) -> Self {
        self.try_add(o).expect("variable count mismatch")
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.try_mul(o).expect("variable count mismatch")
    }

    pub fn neg(&self) -> Self {
        self.scale(&rat(-1))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return TruncatedSeries { terms: BTreeMap::new(), ..self.clone() };
        }
        TruncatedSeries {
            nvars: self.nvars,
            prec: self.prec,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = TruncatedSeries::one(self.nvars).with_precision(self.prec);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Lowest total degree of a nonzero coefficient.
    pub fn ord(&self) -> Order {
        match self.terms.keys().next() {
            Some(m) => Order::Finite(m.degree()),
            None => match self.prec {
                Precision::Exact => Order::Infinite,
                Precision::Trunc(n) => Order::AtLeast(n),
            },
        }
    }

    /// Homogeneous part of degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        TruncatedSeries {
            nvars: self.nvars,
            prec: Precision::Exact,
            terms: self.terms.iter().filter(|(m, _)| m.degree() == d).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// Lowest-degree homogeneous part (the initial form).
    pub fn initial_form(&self) -> Self {
        match self.ord() {
            Order::Finite(d) => self.homogeneous_part(d),
            _ => TruncatedSeries::zero(self.nvars),
        }
    }

    /// `b` with `a*b = 1 mod m^n`.
    pub fn invert_unit(&self, n: u32) -> Result<Self, SeriesError> {
        let c0 = self.constant_term();
        if c0.is_zero() {
            return Err(SeriesError::NonUnit);
        }
        let a = self.truncate(n);
        let inv0 = c0.recip();
        // a = c0 (1 - u) with u in m; a^{-1} = c0^{-1} sum u^k
        let u = TruncatedSeries::one(self.nvars).sub(&a.scale(&inv0)).truncate(n);
        let mut acc = TruncatedSeries::one(self.nvars).truncate(n);
        let mut pw = acc.clone();
        for _ in 1..n.max(1) {
            pw = pw.mul(&u).truncate(n);
            if pw.is_zero() {
                break;
            }
            acc = acc.add(&pw);
        }
        Ok(acc.scale(&inv0).with_precision(Precision::Trunc(n)))
    }

    /// Partial derivative in variable `i`.
    pub fn derivative(&self, i: usize) -> Self {
        let mut out = TruncatedSeries::zero(self.nvars);
        out.prec = match self.prec {
            Precision::Exact => Precision::Exact,
            Precision::Trunc(n) => Precision::Trunc(n.saturating_sub(1)),
        };
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e > 0 {
                let mut mm = m.clone();
                mm.0[i] -= 1;
                out.add_term(mm, c * rat(e as i64));
            }
        }
        out
    }

    /// Exact polynomial quotient `self / d` if `d` divides `self`.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        if d.is_zero() || self.nvars != d.nvars {
            return None;
        }
        let (lm, lc) = d.terms.iter().next_back().map(|(m, c)| (m.clone(), c.clone()))?;
        let mut r = self.clone();
        r.prec = Precision::Exact;
        let mut q = TruncatedSeries::zero(self.nvars);
        while let Some((m, c)) = r.terms.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
            if !lm.divides(&m) {
                return None;
            }
            let t = TruncatedSeries::monomial(self.nvars, lm.quotient(&m), &c / &lc);
            q = q.add(&t);
            r = r.sub(&t.mul(d));
        }
        Some(q)
    }

    /// True if `self = c * o` for a nonzero rational `c`.
    pub fn is_scalar_multiple_of(&self, o: &Self) -> bool {
        if self.is_zero() || o.is_zero() || self.terms.len() != o.terms.len() {
            return false;
        }
        let (m0, c0) = o.terms.iter().next().unwrap();
        let Some(s0) = self.terms.get(m0) else { return false };
        let ratio = s0 / c0;
        o.terms.iter().all(|(m, c)| self.terms.get(m) == Some(&(c * &ratio)))
    }

    /// Substitutes `x_i := vals[i]` (all series in the target ring).
    pub fn substitute(&self, vals: &[TruncatedSeries]) -> TruncatedSeries {
        let nv = vals.first().map(|v| v.nvars).unwrap_or(0);
        let mut out = TruncatedSeries::zero(nv);
        for (m, c) in &self.terms {
            let mut t = TruncatedSeries::constant(nv, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                t = t.mul(&vals[i].pow(e));
            }
            out = out.add(&t);
        }
        out
    }

    /// Same polynomial in a ring with `n >= nvars` variables.
    pub fn extend_vars(&self, n: usize) -> TruncatedSeries {
        TruncatedSeries {
            nvars: n,
            prec: self.prec,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = m.0.clone();
                    e.resize(n, 0);
                    (Monomial(e), c.clone())
                })
                .collect(),
        }
    }

    pub fn to_string_with(&self, vars: &[&str]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    let name = vars.get(i).copied().unwrap_or("?");
                    if e == 1 {
                        name.to_string()
                    } else {
                        format!("{name}^{e}")
                    }
                })
                .collect();
            let is_one = a.is_one();
            if mono.is_empty() {
                s.push_str(&fmt_rational(&a));
            } else {
                if !is_one {
                    s.push_str(&fmt_rational(&a));
                    s.push('*');
                }
                s.push_str(&mono.join("*"));
            }
        }
        s
    }
}

/// Default variable names for `n` variables.
pub fn default_vars(n: usize) -> Vec<&'static str> {
    match n {
        1 => vec!["t"],
        2 => vec!["x", "y"],
        3 => vec!["x", "y", "z"],
        4 => vec!["x", "y", "u", "v"],
        _ => ["x0", "x1", "x2", "x3", "x4", "x5", "x6", "x7"][..n].to_vec(),
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_with(&default_vars(self.nvars)))?;
        if let Precision::Trunc(n) = self.prec {
            write!(f, " + O({n})")?;
        }
        Ok(())
    }
}

/// Parser switches.
#[derive(Clone, Copy, Debug, Default)]
pub struct ParseOptions {
    /// Accept the compact notation `x3+xy3` (juxtaposition multiplies, digits
    /// after a variable are an exponent).
    pub compact: bool,
}

/// Parses a polynomial in the given variables.
pub fn parse(text: &str, vars: &[&str]) -> Result<TruncatedSeries, SeriesError> {
    parse_with(text, vars, ParseOptions::default())
}

pub fn parse_with(text: &str, vars: &[&str], opts: ParseOptions) -> Result<TruncatedSeries, SeriesError> {
    let mut p = Parser { s: text.as_bytes(), pos: 0, vars, opts };
    p.skip_ws();
    if p.pos >= p.s.len() {
        return Err(SeriesError::Syntax { offset: 0, msg: "empty input".into() });
    }
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.s.len() {
        return Err(p.unexpected());
    }
    Ok(e)
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    vars: &'a [&'a str],
    opts: ParseOptions,
}

impl<'a> Parser<'a> {
    fn nv(&self) -> usize {
        self.vars.len()
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn unexpected(&self) -> SeriesError {
        match self.s.get(self.pos) {
            Some(&c) => SeriesError::Syntax { offset: self.pos, msg: format!("unexpected `{}`", c as char) },
            None => SeriesError::Syntax { offset: self.pos, msg: "unexpected end of input".into() },
        }
    }

    fn expr(&mut self) -> Result<TruncatedSeries, SeriesError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn starts_factor(&mut self) -> bool {
        matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == b'(' || c == b'_')
    }

    fn term(&mut self) -> Result<TruncatedSeries, SeriesError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.unary()?);
                }
                Some(_) if self.starts_factor() => {
                    if !self.opts.compact {
                        return Err(SeriesError::Syntax {
                            offset: self.pos,
                            msg: "implicit multiplication; write `*`".into(),
                        });
                    }
                    acc = acc.mul(&self.power()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<TruncatedSeries, SeriesError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<TruncatedSeries, SeriesError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.exponent()?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<u32, SeriesError> {
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.unexpected());
        }
        let txt = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
        match txt.parse::<u32>() {
            Ok(e) if e <= MAX_EXPONENT => Ok(e),
            _ => Err(SeriesError::ExponentOverflow { offset: start }),
        }
    }

    fn atom(&mut self) -> Result<TruncatedSeries, SeriesError> {
        let nv = self.nv();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.unexpected());
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let txt = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
                let n: BigInt = txt.parse().unwrap();
                Ok(TruncatedSeries::constant(nv, Rational::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => self.identifier(),
            _ => Err(self.unexpected()),
        }
    }

    fn identifier(&mut self) -> Result<TruncatedSeries, SeriesError> {
        let start = self.pos;
        let nv = self.nv();
        if self.opts.compact {
            // longest variable name that matches here, then optional digits
            let rest = &self.s[self.pos..];
            let best = self
                .vars
                .iter()
                .enumerate()
                .filter(|(_, v)| rest.starts_with(v.as_bytes()))
                .max_by_key(|(_, v)| v.len());
            let Some((i, v)) = best else {
                let mut end = self.pos;
                while end < self.s.len() && (self.s[end].is_ascii_alphanumeric() || self.s[end] == b'_') {
                    end += 1;
                }
                return Err(SeriesError::UnknownVariable {
                    name: String::from_utf8_lossy(&self.s[start..end]).into(),
                    offset: start,
                });
            };
            self.pos += v.len();
            let mut e = 1;
            if self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                e = self.exponent()?;
            }
            return Ok(TruncatedSeries::var(nv, i).pow(e));
        }
        while self.pos < self.s.len() && (self.s[self.pos].is_ascii_alphanumeric() || self.s[self.pos] == b'_') {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
        match self.vars.iter().position(|v| *v == name) {
            Some(i) => Ok(TruncatedSeries::var(nv, i)),
            None => Err(SeriesError::UnknownVariable { name: name.to_string(), offset: start }),
        }
    }
}

/// Shorthand used throughout the catalogs: parses in `x, y`.
pub fn xy(text: &str) -> TruncatedSeries {
    parse(text, &["x", "y"]).unwrap_or_else(|e| panic!("bad catalog polynomial `{text}`: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat_frac;
    use proptest::prelude::*;

    #[test]
    fn parse_examples() {
        let f = xy("x^3 + x*y^3");
        assert_eq!(f.ord(), Order::Finite(3));
        assert!(xy("0").is_zero());
        let err = parse("x + * y", &["x", "y"]).unwrap_err();
        assert_eq!(err.offset(), Some(4));
        assert!(matches!(parse("x*z", &["x", "y"]), Err(SeriesError::UnknownVariable { .. })));
        assert!(matches!(parse("x^99999999999", &["x", "y"]), Err(SeriesError::ExponentOverflow { .. })));
        assert!(parse("xy", &["x", "y"]).is_err());
        assert!(parse("2x", &["x", "y"]).is_err());
    }

    #[test]
    fn compact_notation() {
        let opts = ParseOptions { compact: true };
        let f = parse_with("x3+xy3", &["x", "y"], opts).unwrap();
        assert_eq!(f, xy("x^3 + x*y^3"));
        let g = parse_with("2xy - y2", &["x", "y"], opts).unwrap();
        assert_eq!(g, xy("2*x*y - y^2"));
    }

    #[test]
    fn mul_examples() {
        assert_eq!(xy("x").mul(&xy("y")), xy("x*y"));
        let t36 = xy("y").mul(&xy("y - x^2").mul(&xy("y - 2*x^2")));
        assert_eq!(t36, xy("y^3 - 3*x^2*y^2 + 2*x^4*y"));
        let a = xy("x^2").truncate(4);
        let b = xy("y^3").truncate(4);
        assert!(a.mul(&b).is_zero());
    }

    #[test]
    fn ord_examples() {
        assert_eq!(xy("x^2 + y^3").ord(), Order::Finite(2));
        assert_eq!(xy("x - y^5").ord(), Order::Finite(1));
        assert_eq!(TruncatedSeries::zero(2).ord(), Order::Infinite);
        assert_eq!(xy("x^5").truncate(4).ord(), Order::AtLeast(4));
    }

    #[test]
    fn invert_examples() {
        let a = xy("1 - x");
        assert_eq!(a.invert_unit(4).unwrap(), xy("1 + x + x^2 + x^3").truncate(4));
        let t = parse("2 - t", &["t"]).unwrap();
        let inv = t.invert_unit(3).unwrap();
        let want = TruncatedSeries::from_terms(
            1,
            Precision::Trunc(3),
            vec![
                (Monomial(vec![0]), rat_frac(1, 2)),
                (Monomial(vec![1]), rat_frac(1, 4)),
                (Monomial(vec![2]), rat_frac(1, 8)),
            ],
        );
        assert_eq!(inv, want);
        assert_eq!(xy("x").invert_unit(4), Err(SeriesError::NonUnit));
    }

    #[test]
    fn display_roundtrip() {
        let f = xy("-3*x^2*y + 7 + x");
        assert_eq!(f.to_string_with(&["x", "y"]), "7 + x - 3*x^2*y");
        let g = xy("x^3 + x*y^3 - 2*y");
        assert_eq!(xy(&g.to_string_with(&["x", "y"])), g);
    }

    #[test]
    fn exact_division() {
        let f = xy("(x - y^3)*(x + y^3)");
        assert_eq!(f.exact_div(&xy("x - y^3")).unwrap(), xy("x + y^3"));
        assert!(f.exact_div(&xy("x")).is_none());
    }

    #[test]
    fn monomial_order() {
        let ms = Monomial::of_degree(2, 3);
        assert_eq!(ms, vec![Monomial(vec![3, 0]), Monomial(vec![2, 1]), Monomial(vec![1, 2]), Monomial(vec![0, 3])]);
        assert!(ms.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(Monomial::below(3, 3).len(), 10);
    }

    fn arb_series(n: u32) -> impl Strategy<Value = TruncatedSeries> {
        proptest::collection::vec(((0u32..5, 0u32..5), -4i64..5), 0..6).prop_map(move |v| {
            TruncatedSeries::from_terms(
                2,
                Precision::Trunc(n),
                v.into_iter().map(|((a, b), c)| (Monomial(vec![a, b]), rat(c))),
            )
        })
    }

    fn arb_poly() -> impl Strategy<Value = TruncatedSeries> {
        proptest::collection::vec(((0u32..4, 0u32..4), -4i64..5), 0..6).prop_map(|v| {
            TruncatedSeries::from_terms(2, Precision::Exact, v.into_iter().map(|((a, b), c)| (Monomial(vec![a, b]), rat(c))))
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_series(6), b in arb_series(6), c in arb_series(6)) {
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.add(&b), b.add(&a));
        }

        #[test]
        fn truncation_is_a_ring_map(a in arb_poly(), b in arb_poly(), n in 1u32..8, m in 1u32..8) {
            let k = n.min(m);
            prop_assert_eq!(a.mul(&b).truncate(k), a.truncate(n).mul(&b.truncate(m)).truncate(k));
            prop_assert_eq!(a.mul(&b).truncate(k), a.truncate(k).mul(&b.truncate(k)));
        }

        #[test]
        fn print_parse_roundtrip(a in arb_poly()) {
            let s = a.to_string_with(&["x", "y"]);
            prop_assert_eq!(parse(&s, &["x", "y"]).unwrap(), a);
        }

        #[test]
        fn unit_inverse(a in arb_poly(), c in 1i64..6, n in 1u32..7) {
            let u = a.sub(&TruncatedSeries::constant(2, a.constant_term())).add(&TruncatedSeries::from_int(2, c));
            let inv = u.invert_unit(n).unwrap();
            prop_assert_eq!(u.mul(&inv).truncate(n), TruncatedSeries::one(2).truncate(n));
        }
    }
}
