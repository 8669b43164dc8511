//! Rigid and cluster tilting objects indexed by a factor list `f = f_1...f_n`.
//!
//! The indecomposable rigid objects are the cyclic modules
//! `S_I = S/(prod_{i in I} f_i)`, and the cluster tilting objects are the
//! chains `M_w = S^w_1 + ... + S^w_n` with `S^w_i = S/(f_{w(1)}...f_{w(i)})`.
//! Mutation at `i` replaces `S^w_i` and gives `M_{w s_i}`.

use crate::homalg::{ext1_dim, HomSpace, HomalgConfig, HomalgError};
use crate::linalg::{Echelon, SparseRow};
use crate::matfac::{chain_for, mf_subset, MatrixFactorization, PolyMatrix};
use crate::scalar::{fmt_rational, rat, Rational};
use crate::series::{default_vars, parse, parse_with, Monomial, ParseOptions, TruncatedSeries};
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ClusterError {
    #[error("factor {0} has order 0 (a unit)")]
    Unit(usize),
    #[error("factors {0} and {1} are associates")]
    Associates(usize, usize),
    #[error("condition (A) fails: factor {index} has order {ord}")]
    ConditionA { index: usize, ord: u32 },
    #[error("irreducibility of factor {0} is unresolved")]
    Unresolved(usize),
    #[error("{0}")]
    Parse(String),
    #[error("not a permutation: {0:?}")]
    BadPermutation(Vec<usize>),
    #[error("index {0} out of range 1..{1}")]
    IndexRange(usize, usize),
    #[error("order {0} is below 2")]
    LowOrder(u32),
    #[error("Milnor number did not stabilize up to degree {0}; possibly non-isolated")]
    NotIsolated(u32),
    #[error("inconsistency: {0}")]
    Inconsistency(String),
    #[error(transparent)]
    Homalg(#[from] HomalgError),
}

/// How sure we are that a factor is irreducible in `k[[x,y]]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Irreducibility {
    /// Order one: a smooth branch.
    Certified,
    /// Newton polygon is one edge with coprime ends.
    HeuristicYes,
    /// Taken on the caller's word.
    Asserted,
    Unknown,
}

impl fmt::Display for Irreducibility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Irreducibility::Certified => "certified",
            Irreducibility::HeuristicYes => "heuristic-yes",
            Irreducibility::Asserted => "asserted",
            Irreducibility::Unknown => "unknown",
        })
    }
}

/// Newton polygon test: order one is certified; a single edge from `(a,0)` to
/// `(0,b)` with `gcd(a,b) = 1` is heuristic-yes; anything else is unknown.
pub fn irreducibility_heuristic(f: &TruncatedSeries) -> Irreducibility {
    match f.ord().finite() {
        Some(1) => return Irreducibility::Certified,
        Some(d) if d >= 2 && f.nvars() == 2 => {}
        _ => return Irreducibility::Unknown,
    }
    let pts: Vec<(u32, u32)> = f.terms().map(|(m, _)| (m.0[0], m.0[1])).collect();
    let a = pts.iter().filter(|p| p.1 == 0).map(|p| p.0).min();
    let b = pts.iter().filter(|p| p.0 == 0).map(|p| p.1).min();
    let (Some(a), Some(b)) = (a, b) else { return Irreducibility::Unknown };
    // every exponent on or above the segment: i/a + j/b >= 1
    let above = pts.iter().all(|&(i, j)| (i as u64) * (b as u64) + (j as u64) * (a as u64) >= (a as u64) * (b as u64));
    if above && a.gcd(&b) == 1 {
        Irreducibility::HeuristicYes
    } else {
        Irreducibility::Unknown
    }
}

fn ord_of(f: &TruncatedSeries) -> u32 {
    f.ord().finite().unwrap_or(u32::MAX)
}

/// Reduced factorization `f = f_1...f_n` in `k[[x,y]]`.
#[derive(Clone, Debug, PartialEq)]
pub struct FactorList {
    factors: Vec<TruncatedSeries>,
    status: Vec<Irreducibility>,
}

impl FactorList {
    /// Checks order and associates; irreducibility comes from the heuristic.
    pub fn new(factors: Vec<TruncatedSeries>) -> Result<Self, ClusterError> {
        let status = factors.iter().map(irreducibility_heuristic).collect();
        Self::with_status(factors, status)
    }

    pub fn with_status(factors: Vec<TruncatedSeries>, status: Vec<Irreducibility>) -> Result<Self, ClusterError> {
        for (i, f) in factors.iter().enumerate() {
            if ord_of(f) == 0 {
                return Err(ClusterError::Unit(i + 1));
            }
            for j in 0..i {
                if associates(&factors[j], f) {
                    return Err(ClusterError::Associates(j + 1, i + 1));
                }
            }
        }
        assert_eq!(factors.len(), status.len());
        Ok(FactorList { factors, status })
    }

    /// Parses each string in `x, y`.
    pub fn parse(texts: &[&str]) -> Result<Self, ClusterError> {
        let mut fs = Vec::new();
        for t in texts {
            if t.trim().is_empty() {
                return Err(ClusterError::Parse("empty factor".into()));
            }
            fs.push(parse(t, &["x", "y"]).map_err(|e| ClusterError::Parse(e.to_string()))?);
        }
        Self::new(fs)
    }

    /// Splits an equation at top-level `*` and parses the pieces. Constant
    /// pieces are dropped.
    pub fn parse_product(text: &str) -> Result<Self, ClusterError> {
        Self::parse_product_with(text, ParseOptions::default())
    }

    pub fn parse_product_with(text: &str, opts: ParseOptions) -> Result<Self, ClusterError> {
        let mut pieces = Vec::new();
        let mut depth = 0i32;
        let mut cur = String::new();
        for ch in text.chars() {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                _ => {}
            }
            if ch == '*' && depth == 0 {
                pieces.push(std::mem::take(&mut cur));
            } else {
                cur.push(ch);
            }
        }
        pieces.push(cur);
        let mut fs = Vec::new();
        for p in pieces {
            let t = p.trim();
            if t.is_empty() {
                return Err(ClusterError::Parse(format!("empty factor in `{text}`")));
            }
            let s = parse_with(t, &["x", "y"], opts).map_err(|e| ClusterError::Parse(e.to_string()))?;
            if ord_of(&s) > 0 {
                fs.push(s);
            }
        }
        if fs.is_empty() {
            return Err(ClusterError::Parse(format!("`{text}` has no non-unit factor")));
        }
        Self::new(fs)
    }

    /// Marks factor `i` (0-based) irreducible by assertion.
    pub fn assert_irreducible(mut self, i: usize) -> Self {
        if self.status[i] == Irreducibility::Unknown {
            self.status[i] = Irreducibility::Asserted;
        }
        self
    }

    pub fn assert_all(mut self) -> Self {
        for s in &mut self.status {
            if *s == Irreducibility::Unknown {
                *s = Irreducibility::Asserted;
            }
        }
        self
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn factors(&self) -> &[TruncatedSeries] {
        &self.factors
    }

    pub fn status(&self) -> &[Irreducibility] {
        &self.status
    }

    pub fn ords(&self) -> Vec<u32> {
        self.factors.iter().map(ord_of).collect()
    }

    pub fn product(&self) -> TruncatedSeries {
        self.factors.iter().fold(TruncatedSeries::one(2), |a, g| a.mul(g))
    }

    /// Condition (A): every factor has order one.
    pub fn condition_a(&self) -> Result<(), ClusterError> {
        match self.ords().iter().position(|&o| o != 1) {
            Some(i) => Err(ClusterError::ConditionA { index: i + 1, ord: self.ords()[i] }),
            None => Ok(()),
        }
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.factors.iter().map(|f| f.to_string_with(&default_vars(2))).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "factors": self.to_strings(),
            "ord": self.ords(),
            "irreducibility": self.status,
        })
    }
}

impl fmt::Display for FactorList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.to_strings().into_iter().map(|s| format!("({s})")).collect();
        f.write_str(&parts.join(""))
    }
}

/// Each divides the other (as polynomials).
pub fn associates(a: &TruncatedSeries, b: &TruncatedSeries) -> bool {
    match (a.exact_div(b), b.exact_div(a)) {
        (Some(q), Some(_)) => q.degree() == Some(0),
        _ => false,
    }
}

/// Branch lists of the curves in the classification tables.
#[derive(Clone, Debug, PartialEq)]
pub enum Curve {
    A(u32),
    D(u32),
    E(u32),
    /// `T_{p,q}(λ)`; `λ` is ignored in the cusp case.
    T(u32, u32, Rational),
}

impl fmt::Display for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Curve::A(n) => write!(f, "A{n}"),
            Curve::D(n) => write!(f, "D{n}"),
            Curve::E(n) => write!(f, "E{n}"),
            Curve::T(p, q, l) => write!(f, "T{p},{q}({})", fmt_rational(l)),
        }
    }
}

fn xy(s: &str) -> TruncatedSeries {
    crate::series::xy(s)
}

/// Splits `x^a - y^b` into branches when `a` is 1 or 2 and `b` is even.
fn binomial_branches(a: u32, b: u32, swap: bool) -> Vec<TruncatedSeries> {
    let (u, v) = if swap { ("y", "x") } else { ("x", "y") };
    if a == 2 && b % 2 == 0 {
        let h = b / 2;
        vec![xy(&format!("{u} - {v}^{h}")), xy(&format!("{u} + {v}^{h}"))]
    } else if b == 2 && a % 2 == 0 {
        let h = a / 2;
        vec![xy(&format!("{u}^{h} - {v}")), xy(&format!("{u}^{h} + {v}"))]
    } else {
        vec![xy(&format!("{u}^{a} - {v}^{b}"))]
    }
}

/// Branches of the curve over an algebraically closed field of
/// characteristic zero, in split form.
pub fn curve_factors(c: &Curve) -> Result<FactorList, ClusterError> {
    let fs = match c {
        Curve::A(n) if *n >= 1 => binomial_branches(2, n + 1, false),
        Curve::D(n) if *n >= 4 => {
            let mut v = vec![xy("y")];
            v.extend(binomial_branches(2, n - 2, false));
            v
        }
        Curve::E(6) => vec![xy("x^3 + y^4")],
        Curve::E(7) => vec![xy("x"), xy("x^2 + y^3")],
        Curve::E(8) => vec![xy("x^3 + y^5")],
        Curve::T(3, 6, l) | Curve::T(4, 4, l) if l.is_zero() || *l == rat(1) => {
            return Err(ClusterError::Parse("lambda must avoid 0 and 1".into()));
        }
        Curve::T(3, 6, l) => {
            let x2 = xy("x^2");
            vec![xy("y"), xy("y - x^2"), xy("y").sub(&x2.scale(l))]
        }
        Curve::T(4, 4, l) => vec![xy("x"), xy("y"), xy("x - y"), xy("x").sub(&xy("y").scale(l))],
        Curve::T(p, q, _) if *p >= 3 && p <= q && 2 * (p + q) < p * q => {
            let mut v = binomial_branches(p - 2, 2, false);
            v.extend(binomial_branches(2, q - 2, false));
            v
        }
        other => return Err(ClusterError::Parse(format!("no curve {other}"))),
    };
    let list = FactorList::new(fs)?;
    if list.status.contains(&Irreducibility::Unknown) {
        return Err(ClusterError::Inconsistency(format!("unresolved branch of {c}")));
    }
    Ok(list)
}

/// Condition (A).
pub fn has_cluster_tilting(factors: &FactorList) -> bool {
    factors.condition_a().is_ok()
}

/// `(2^n - 2, n!, n - 1)` for `n` branches.
pub fn count_formula(n: usize) -> (u64, u64, u64) {
    let fact: u64 = (1..=n as u64).product();
    ((1u64 << n) - 2, fact, n as u64 - 1)
}

/// Counts of indecomposable rigid objects, basic cluster tilting objects and
/// their summands in the stable category.
pub fn stable_counts(factors: &FactorList) -> Result<(u64, u64, u64), ClusterError> {
    factors.condition_a()?;
    Ok(count_formula(factors.len()))
}

/// Nonempty subsets, by size then lexicographically (0-based).
pub fn subsets(n: usize, proper: bool) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (1u32..(1 << n))
        .map(|mask| (0..n).filter(|i| mask & (1 << i) != 0).collect::<Vec<_>>())
        .filter(|s: &Vec<usize>| !(proper && s.len() == n))
        .collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    out
}

/// The `S_I`. In stable mode the free module `I = {1..n}` is left out. With a
/// config, each object is checked rigid.
pub fn indec_rigid_objects(factors: &FactorList, stable: bool, verify: Option<&HomalgConfig>) -> Result<Vec<MatrixFactorization>, ClusterError> {
    factors.condition_a()?;
    let mut out = Vec::new();
    for s in subsets(factors.len(), stable) {
        let m = mf_subset(&factors.factors, &s);
        if let Some(cfg) = verify {
            if !m.is_free() {
                let e = ext1_dim(&m, &m, cfg)?;
                if e.dimension != 0 {
                    return Err(ClusterError::Inconsistency(format!("Ext^1({0},{0}) = {1}", m.name, e.dimension)));
                }
            }
        }
        out.push(m);
    }
    Ok(out)
}

/// A bijection of `{1..n}`, stored 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self, ClusterError> {
        let mut seen = vec![false; images.len()];
        for &k in &images {
            if k >= images.len() || seen[k] {
                return Err(ClusterError::BadPermutation(images));
            }
            seen[k] = true;
        }
        Ok(Permutation(images))
    }

    /// From 1-based one-line notation.
    pub fn one_line(images: &[usize]) -> Result<Self, ClusterError> {
        if images.contains(&0) {
            return Err(ClusterError::BadPermutation(images.to_vec()));
        }
        Self::new(images.iter().map(|k| k - 1).collect())
    }

    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    /// `w s_i` for `1 <= i < n`.
    pub fn times_s(&self, i: usize) -> Result<Self, ClusterError> {
        if i == 0 || i >= self.0.len() {
            return Err(ClusterError::IndexRange(i, self.0.len().saturating_sub(1)));
        }
        let mut v = self.0.clone();
        v.swap(i - 1, i);
        Ok(Permutation(v))
    }

    /// `+1` for even permutations.
    pub fn sign(&self) -> i32 {
        let mut inv = 0;
        for i in 0..self.0.len() {
            for j in i + 1..self.0.len() {
                if self.0[i] > self.0[j] {
                    inv += 1;
                }
            }
        }
        if inv % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// All permutations in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        let mut used = vec![false; n];
        fn rec(n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Permutation>) {
            if cur.len() == n {
                out.push(Permutation(cur.clone()));
                return;
            }
            for k in 0..n {
                if !used[k] {
                    used[k] = true;
                    cur.push(k);
                    rec(n, cur, used, out);
                    cur.pop();
                    used[k] = false;
                }
            }
        }
        rec(n, &mut cur, &mut used, &mut out);
        out
    }

    /// Index sets `{w(1),...,w(i)}` of the non-free summands of `M_w`.
    pub fn summand_sets(&self) -> Vec<BTreeSet<usize>> {
        (1..self.0.len()).map(|i| self.0[..i].iter().copied().collect()).collect()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|k| (k + 1).to_string()).collect();
        write!(f, "({})", s.join(" "))
    }
}

/// The summands `S^w_1, ..., S^w_n` of `M_w`; the last one is free.
pub fn cluster_tilting_summands(factors: &FactorList, w: &Permutation) -> Result<Vec<MatrixFactorization>, ClusterError> {
    factors.condition_a()?;
    if w.len() != factors.len() {
        return Err(ClusterError::BadPermutation(w.0.clone()));
    }
    Ok(chain_for(&factors.factors, &w.0))
}

/// `M_w` as one factorization.
pub fn cluster_tilting_object(factors: &FactorList, w: &Permutation) -> Result<MatrixFactorization, ClusterError> {
    let parts = cluster_tilting_summands(factors, w)?;
    let mut it = parts.into_iter();
    let mut m = it.next().expect("n >= 1");
    for p in it {
        m = m.direct_sum(&p).map_err(|e| ClusterError::Inconsistency(e.to_string()))?;
    }
    Ok(m.renamed(format!("M_{w}")))
}

/// All pairwise `Ext^1` between the non-free summands vanish.
pub fn verify_rigid_sum(parts: &[MatrixFactorization], cfg: &HomalgConfig) -> Result<(), ClusterError> {
    let parts: Vec<&MatrixFactorization> = parts.iter().filter(|m| !m.is_free()).collect();
    for (i, a) in parts.iter().enumerate() {
        for b in &parts[i..] {
            let e = ext1_dim(a, b, cfg)?;
            if e.dimension != 0 {
                return Err(ClusterError::Inconsistency(format!("Ext^1({}, {}) = {}", a.name, b.name, e.dimension)));
            }
        }
    }
    Ok(())
}

/// `Ext^1(T, X) = 0` only for `X` in `add T`, for `X` running over
/// `candidates` (compared by name).
pub fn is_maximal_among(parts: &[MatrixFactorization], candidates: &[MatrixFactorization], cfg: &HomalgConfig) -> Result<bool, ClusterError> {
    for x in candidates {
        if x.is_free() || parts.iter().any(|p| p.name == x.name) {
            continue;
        }
        let mut orth = true;
        for p in parts.iter().filter(|p| !p.is_free()) {
            if ext1_dim(p, x, cfg)?.dimension != 0 {
                orth = false;
                break;
            }
        }
        if orth {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A cyclic summand `S/(prod_{i in I} f_i)` of a term in a sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summand {
    pub label: String,
    /// 0-based factor indices.
    pub subset: Vec<usize>,
}

impl Summand {
    fn new(subset: Vec<usize>) -> Summand {
        let mut s = subset;
        s.sort_unstable();
        let label = if s.is_empty() {
            "0".to_string()
        } else {
            let l: Vec<String> = s.iter().map(|k| (k + 1).to_string()).collect();
            format!("S/({})", l.iter().map(|k| format!("f{k}")).collect::<Vec<_>>().join(""))
        };
        Summand { label, subset: s }
    }
}

/// What the last (and first) map of a sequence is claimed to be.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MapRole {
    /// Approximations by the other summands of the chain.
    Approximation,
    /// Right almost split at the end; left almost split at the start too
    /// unless the sequence is not left-exact at its first term.
    AlmostSplit { left: bool },
}

/// `terms[0] -> terms[1] -> ...` with `maps[k]` of shape
/// `|terms[k+1]| x |terms[k]|`.
#[derive(Clone, Debug)]
pub struct MapSequence {
    pub terms: Vec<Vec<Summand>>,
    pub maps: Vec<PolyMatrix>,
    pub role: MapRole,
    /// Summands the approximation is taken against.
    pub test_objects: Vec<Summand>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verification {
    Unverified,
    Passed,
    Failed(Vec<String>),
}

/// Exchange sequences of one mutation, or an almost split sequence.
#[derive(Clone, Debug)]
pub struct ExchangeData {
    pub factors: Vec<TruncatedSeries>,
    pub permutation: Permutation,
    /// 1-based mutation index.
    pub index: usize,
    pub sequences: Vec<MapSequence>,
    pub status: Verification,
}

/// Drops zero-module summands and the matching rows and columns.
fn prune(terms: Vec<Vec<Summand>>, maps: Vec<PolyMatrix>) -> (Vec<Vec<Summand>>, Vec<PolyMatrix>) {
    let keep: Vec<Vec<usize>> = terms.iter().map(|t| (0..t.len()).filter(|&k| !t[k].subset.is_empty()).collect()).collect();
    let new_terms = terms.iter().zip(&keep).map(|(t, k)| k.iter().map(|&i| t[i].clone()).collect()).collect();
    let new_maps = maps
        .iter()
        .enumerate()
        .map(|(s, m)| {
            let rows: Vec<Vec<TruncatedSeries>> = keep[s + 1]
                .iter()
                .map(|&r| keep[s].iter().map(|&c| m.get(r, c).clone()).collect())
                .collect();
            if rows.is_empty() || rows[0].is_empty() {
                PolyMatrix::zeros(rows.len(), keep[s].len(), 2)
            } else {
                PolyMatrix::from_rows(rows)
            }
        })
        .collect();
    (new_terms, new_maps)
}

fn row(v: Vec<TruncatedSeries>) -> PolyMatrix {
    PolyMatrix::from_rows(vec![v])
}

fn col(v: Vec<TruncatedSeries>) -> PolyMatrix {
    PolyMatrix::from_rows(v.into_iter().map(|e| vec![e]).collect())
}

fn chain_set(w: &Permutation, i: usize) -> Vec<usize> {
    w.0[..i].to_vec()
}

fn chain_tests(w: &Permutation, skip: usize) -> Vec<Summand> {
    (1..=w.len()).filter(|&j| j != skip).map(|j| Summand::new(chain_set(w, j))).collect()
}

/// Mutation of `M_w` at `i`: the new permutation and the two exchange
/// sequences
/// `0 -> S_i -> S_{i+1} + S_{i-1} -> S/(g_1...g_{i-1} g_{i+1}) -> 0` and back,
/// with `g_k = f_{w(k)}` and `S_0 = 0` dropped.
pub fn mutate(factors: &FactorList, w: &Permutation, i: usize) -> Result<(Permutation, ExchangeData), ClusterError> {
    let w2 = w.times_s(i)?;
    let g = |k: usize| factors.factors[w.0[k - 1]].clone();
    let one = TruncatedSeries::one(2);
    let si = Summand::new(chain_set(w, i));
    let sup = Summand::new(chain_set(w, i + 1));
    let sdown = Summand::new(chain_set(w, i - 1));
    let mut other = chain_set(w, i - 1);
    other.push(w.0[i]);
    let snew = Summand::new(other);
    let tests = chain_tests(w, i);
    let mid = vec![sup.clone(), sdown.clone()];
    let (t1, m1) = prune(
        vec![vec![si.clone()], mid.clone(), vec![snew.clone()]],
        vec![col(vec![g(i + 1), one.neg()]), row(vec![one.clone(), g(i + 1)])],
    );
    let (t2, m2) = prune(
        vec![vec![snew], mid, vec![si]],
        vec![col(vec![g(i), one.clone()]), row(vec![one.neg(), g(i)])],
    );
    let seqs = vec![
        MapSequence { terms: t1, maps: m1, role: MapRole::Approximation, test_objects: tests.clone() },
        MapSequence { terms: t2, maps: m2, role: MapRole::Approximation, test_objects: tests },
    ];
    Ok((w2, ExchangeData { factors: factors.factors.clone(), permutation: w.clone(), index: i, sequences: seqs, status: Verification::Unverified }))
}

/// `(a, b) = m`: both in `m` with independent linear parts.
pub fn spans_maximal_ideal(a: &TruncatedSeries, b: &TruncatedSeries) -> bool {
    if !a.constant_term().is_zero() || !b.constant_term().is_zero() {
        return false;
    }
    let x = Monomial(vec![1, 0]);
    let y = Monomial(vec![0, 1]);
    let det = a.coeff(&x) * b.coeff(&y) - a.coeff(&y) * b.coeff(&x);
    !det.is_zero()
}

/// The 2-almost split sequence at `S^w_i` when `(g_i, g_{i+1}) = m`.
pub fn almost_split_sequence(factors: &FactorList, w: &Permutation, i: usize) -> Result<ExchangeData, ClusterError> {
    let n = factors.len();
    if i == 0 || i >= n {
        return Err(ClusterError::IndexRange(i, n.saturating_sub(1)));
    }
    let g = |k: usize| factors.factors[w.0[k - 1]].clone();
    if !spans_maximal_ideal(&g(i), &g(i + 1)) {
        return Err(ClusterError::Inconsistency(format!("(g_{i}, g_{}) is not the maximal ideal", i + 1)));
    }
    let one = TruncatedSeries::one(2);
    let si = Summand::new(chain_set(w, i));
    let mid = vec![Summand::new(chain_set(w, i + 1)), Summand::new(chain_set(w, i - 1))];
    let middle = PolyMatrix::from_rows(vec![vec![g(i), g(i).mul(&g(i + 1))], vec![one.clone(), g(i + 1)]]);
    let (t, m) = prune(
        vec![vec![si.clone()], mid.clone(), mid, vec![si]],
        vec![col(vec![g(i + 1), one.neg()]), middle, row(vec![one.neg(), g(i)])],
    );
    let seq = MapSequence { terms: t, maps: m, role: MapRole::AlmostSplit { left: true }, test_objects: chain_tests(w, i) };
    Ok(ExchangeData { factors: factors.factors.clone(), permutation: w.clone(), index: i, sequences: vec![seq], status: Verification::Unverified })
}

/// First of `y, x, x+y, x+2y, ...` coprime to every factor and spanning `m`
/// together with `last`.
pub fn auxiliary_factor(factors: &FactorList, last: &TruncatedSeries) -> TruncatedSeries {
    let mut cands = vec![xy("y"), xy("x")];
    cands.extend((1..).take(64).map(|c| xy("x").add(&xy("y").scale(&rat(c)))));
    cands
        .into_iter()
        .find(|l| spans_maximal_ideal(last, l) && factors.factors.iter().all(|f| f.exact_div(l).is_none()))
        .expect("a linear form avoids finitely many branches")
}

/// `0 -> S_{n-1} -> S_n + S_{n-1} -> S_n` ending in the minimal right almost
/// split map `(f_{n+1} f_n)`, with `f_{n+1}` from [`auxiliary_factor`].
pub fn end_sequence(factors: &FactorList, w: &Permutation) -> Result<(TruncatedSeries, ExchangeData), ClusterError> {
    factors.condition_a()?;
    let n = factors.len();
    let g = |k: usize| factors.factors[w.0[k - 1]].clone();
    let h = auxiliary_factor(factors, &g(n));
    let sn = Summand::new(chain_set(w, n));
    let sm = Summand::new(chain_set(w, n - 1));
    let (t, m) = prune(
        vec![vec![sm.clone()], vec![sn.clone(), sm], vec![sn]],
        vec![col(vec![g(n), h.neg()]), row(vec![h.clone(), g(n)])],
    );
    let seq = MapSequence { terms: t, maps: m, role: MapRole::AlmostSplit { left: false }, test_objects: chain_tests(w, n) };
    Ok((h, ExchangeData { factors: factors.factors.clone(), permutation: w.clone(), index: n, sequences: vec![seq], status: Verification::Unverified }))
}

/// Outcome of [`verify_exchange`].
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ExchangeReport {
    pub well_defined: bool,
    pub compositions: bool,
    pub approximations: bool,
    /// Hom basis elements tested for factorization.
    pub tested: usize,
    pub failures: Vec<String>,
}

impl ExchangeReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn into_result(self) -> Result<ExchangeReport, ClusterError> {
        if self.passed() {
            Ok(self)
        } else {
            Err(ClusterError::Inconsistency(self.failures.join("; ")))
        }
    }
}

/// Truncation used for Hom bases in [`verify_exchange`].
pub const EXCHANGE_PRECISION: u32 = 8;

struct Ctx<'a> {
    factors: &'a [TruncatedSeries],
}

impl Ctx<'_> {
    fn gen(&self, s: &[usize]) -> TruncatedSeries {
        s.iter().fold(TruncatedSeries::one(2), |a, &k| a.mul(&self.factors[k]))
    }

    /// Generator of `(gen(t) : gen(s))`.
    fn colon(&self, t: &[usize], s: &[usize]) -> TruncatedSeries {
        let d: Vec<usize> = t.iter().copied().filter(|k| !s.contains(k)).collect();
        self.gen(&d)
    }

    fn mf(&self, s: &Summand) -> MatrixFactorization {
        mf_subset(self.factors, &s.subset)
    }
}

/// `h` lies in the ideal generated by `gens` modulo `m^n`.
fn in_ideal_mod(h: &TruncatedSeries, gens: &[TruncatedSeries], n: u32) -> bool {
    let mons = Monomial::below(2, n);
    let idx: HashMap<&Monomial, usize> = mons.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let to_row = |s: &TruncatedSeries| -> SparseRow<Rational> {
        let mut r: SparseRow<Rational> = s.truncate(n).terms().map(|(m, c)| (idx[m], c.clone())).collect();
        r.sort_by_key(|e| e.0);
        r
    };
    let mut ech: Echelon<Rational> = Echelon::new(mons.len());
    for g in gens {
        for mu in &mons {
            let p = g.mul(&TruncatedSeries::monomial(2, mu.clone(), rat(1))).truncate(n);
            if !p.is_zero() {
                ech.insert(to_row(&p));
            }
        }
    }
    ech.contains(to_row(h))
}

/// Composition, well-definedness and approximation checks.
pub fn verify_exchange(data: &ExchangeData) -> Result<ExchangeReport, ClusterError> {
    let ctx = Ctx { factors: &data.factors };
    let mut rep = ExchangeReport { well_defined: true, compositions: true, approximations: true, ..Default::default() };
    for (si, seq) in data.sequences.iter().enumerate() {
        for (k, m) in seq.maps.iter().enumerate() {
            let (src, tgt) = (&seq.terms[k], &seq.terms[k + 1]);
            for (r, t) in tgt.iter().enumerate() {
                for (c, s) in src.iter().enumerate() {
                    let e = m.get(r, c).mul(&ctx.gen(&s.subset));
                    if !e.is_zero() && e.exact_div(&ctx.gen(&t.subset)).is_none() {
                        rep.well_defined = false;
                        rep.failures.push(format!("sequence {}: map {} entry ({r},{c}) is not well defined", si + 1, k + 1));
                    }
                }
            }
        }
        for k in 0..seq.maps.len().saturating_sub(1) {
            let p = seq.maps[k + 1].mul(&seq.maps[k]);
            for (r, t) in seq.terms[k + 2].iter().enumerate() {
                for c in 0..seq.terms[k].len() {
                    let e = p.get(r, c);
                    if !e.is_zero() && e.exact_div(&ctx.gen(&t.subset)).is_none() {
                        rep.compositions = false;
                        rep.failures.push(format!("sequence {}: maps {} and {} compose to {} at ({r},{c})", si + 1, k + 1, k + 2, e.to_string_with(&["x", "y"])));
                    }
                }
            }
        }
        if !rep.well_defined || !rep.compositions {
            continue;
        }
        let n = EXCHANGE_PRECISION;
        // right side: maps into the last term factor through the last map
        let last = seq.terms.last().unwrap();
        let right = seq.maps.last().unwrap();
        let before = &seq.terms[seq.terms.len() - 2];
        if last.len() == 1 {
            let tgt = &last[0];
            let b = ctx.gen(&tgt.subset);
            let mut targets: Vec<(String, Vec<TruncatedSeries>, Vec<TruncatedSeries>)> = Vec::new();
            for j in &seq.test_objects {
                let hs = HomSpace::build(&ctx.mf(j), &ctx.mf(tgt), n, false)?;
                let hom: Vec<TruncatedSeries> = hs.basis.iter().map(|p| p.alpha.get(0, 0).clone()).collect();
                let gens: Vec<TruncatedSeries> = before.iter().enumerate().map(|(k, y)| right.get(0, k).mul(&ctx.colon(&y.subset, &j.subset))).collect();
                targets.push((j.label.clone(), hom, gens));
            }
            if let MapRole::AlmostSplit { .. } = seq.role {
                let rad: Vec<TruncatedSeries> = Monomial::below(2, n).into_iter().filter(|m| m.degree() > 0).map(|m| TruncatedSeries::monomial(2, m, rat(1))).collect();
                let gens = before.iter().enumerate().map(|(k, y)| right.get(0, k).mul(&ctx.colon(&y.subset, &tgt.subset))).collect();
                targets.push((format!("rad End({})", tgt.label), rad, gens));
            }
            for (label, hom, mut gens) in targets {
                gens.push(b.clone());
                for h in hom {
                    rep.tested += 1;
                    if !in_ideal_mod(&h, &gens, n) {
                        rep.approximations = false;
                        rep.failures.push(format!("sequence {}: {} from {label} does not factor through the right map", si + 1, h.to_string_with(&["x", "y"])));
                    }
                }
            }
        }
        // left side: maps out of the first term extend along the first map
        let first = &seq.terms[0];
        let left_role = matches!(seq.role, MapRole::Approximation | MapRole::AlmostSplit { left: true });
        if first.len() == 1 && left_role {
            let src = &first[0];
            let l = &seq.maps[0];
            let next = &seq.terms[1];
            let mut targets: Vec<(Summand, Vec<TruncatedSeries>)> = Vec::new();
            for j in &seq.test_objects {
                let hs = HomSpace::build(&ctx.mf(src), &ctx.mf(j), n, false)?;
                targets.push((j.clone(), hs.basis.iter().map(|p| p.alpha.get(0, 0).clone()).collect()));
            }
            if let MapRole::AlmostSplit { .. } = seq.role {
                let rad = Monomial::below(2, n).into_iter().filter(|m| m.degree() > 0).map(|m| TruncatedSeries::monomial(2, m, rat(1))).collect();
                targets.push((src.clone(), rad));
            }
            for (j, hom) in targets {
                let mut gens: Vec<TruncatedSeries> = next.iter().enumerate().map(|(k, y)| l.get(k, 0).mul(&ctx.colon(&j.subset, &y.subset))).collect();
                gens.push(ctx.gen(&j.subset));
                for h in hom {
                    rep.tested += 1;
                    if !in_ideal_mod(&h, &gens, n) {
                        rep.approximations = false;
                        rep.failures.push(format!("sequence {}: {} into {} does not extend along the left map", si + 1, h.to_string_with(&["x", "y"]), j.label));
                    }
                }
            }
        }
    }
    Ok(rep)
}

impl ExchangeData {
    /// Runs [`verify_exchange`] and records the outcome.
    pub fn verify(&mut self) -> Result<ExchangeReport, ClusterError> {
        let rep = verify_exchange(self)?;
        self.status = if rep.passed() { Verification::Passed } else { Verification::Failed(rep.failures.clone()) };
        Ok(rep)
    }
}

/// Exchange graph on the `M_w`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MutationGraph {
    pub n: usize,
    pub vertices: Vec<Permutation>,
    pub labels: Vec<String>,
    /// `(u, v, i)` with `v = u s_i`, `u < v`.
    pub edges: Vec<(usize, usize, usize)>,
}

/// Vertices are all of `S_n`; edges come from [`Permutation::times_s`].
pub fn mutation_graph(n: usize) -> MutationGraph {
    let vertices = Permutation::all(n);
    let index: HashMap<&Permutation, usize> = vertices.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut edges = Vec::new();
    for (u, w) in vertices.iter().enumerate() {
        for i in 1..n {
            let v = index[&w.times_s(i).unwrap()];
            if u < v {
                edges.push((u, v, i));
            }
        }
    }
    let labels = vertices.iter().map(|w| format!("M{w}")).collect();
    MutationGraph { n, vertices, labels, edges }
}

impl MutationGraph {
    pub fn with_labels(mut self, f: impl Fn(&Permutation) -> String) -> Self {
        self.labels = self.vertices.iter().map(f).collect();
        self
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for &(u, v, _) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency().iter().map(|a| a.len()).collect()
    }

    /// Degree `n-1` everywhere, `n!` vertices, connected and bipartite by sign.
    pub fn check_cayley(&self) -> Result<(), String> {
        let fact: usize = (1..=self.n).product();
        if self.vertices.len() != fact {
            return Err(format!("{} vertices, expected {fact}", self.vertices.len()));
        }
        if let Some(d) = self.degrees().into_iter().find(|&d| d != self.n.saturating_sub(1)) {
            return Err(format!("a vertex has degree {d}"));
        }
        for &(u, v, _) in &self.edges {
            if self.vertices[u].sign() == self.vertices[v].sign() {
                return Err(format!("edge {u}-{v} joins equal signs"));
            }
        }
        let adj = self.adjacency();
        let mut seen = vec![false; adj.len()];
        let mut q = VecDeque::from([0]);
        seen[0] = true;
        while let Some(u) = q.pop_front() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    q.push_back(v);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err("graph is disconnected".into());
        }
        Ok(())
    }

    /// The graph is a single cycle through all vertices.
    pub fn is_cycle(&self) -> bool {
        self.vertices.len() >= 3 && self.degrees().iter().all(|&d| d == 2) && self.edges.len() == self.vertices.len() && self.check_connected()
    }

    fn check_connected(&self) -> bool {
        let adj = self.adjacency();
        let mut seen = vec![false; adj.len()];
        let mut stack = vec![0];
        while let Some(u) = stack.pop() {
            if !std::mem::replace(&mut seen[u], true) {
                stack.extend(adj[u].iter().copied());
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Length of a shortest cycle, if any.
    pub fn girth(&self) -> Option<usize> {
        let adj = self.adjacency();
        let mut best: Option<usize> = None;
        for s in 0..adj.len() {
            let mut dist = vec![usize::MAX; adj.len()];
            let mut parent = vec![usize::MAX; adj.len()];
            dist[s] = 0;
            let mut q = VecDeque::from([s]);
            while let Some(u) = q.pop_front() {
                for &v in &adj[u] {
                    if dist[v] == usize::MAX {
                        dist[v] = dist[u] + 1;
                        parent[v] = u;
                        q.push_back(v);
                    } else if parent[u] != v {
                        let c = dist[u] + dist[v] + 1;
                        best = Some(best.map_or(c, |b| b.min(c)));
                    }
                }
            }
        }
        best
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph mutations {\n");
        for (i, l) in self.labels.iter().enumerate() {
            s.push_str(&format!("  v{i} [label=\"{l}\"];\n"));
        }
        for &(u, v, i) in &self.edges {
            s.push_str(&format!("  v{u} -- v{v} [label=\"s{i}\"];\n"));
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "n": self.n,
            "vertices": self.labels,
            "edges": self.edges.iter().map(|&(u, v, i)| serde_json::json!([u, v, i])).collect::<Vec<_>>(),
        })
    }
}

/// Names of the rigid objects for the split `D_{2n}` curve with branches
/// `y, x - y^n, x + y^n`, as subsets (0-based) of the branches.
pub const D_EVEN_NAMES: &[(&str, &[usize])] = &[
    ("A", &[0]),
    ("B", &[1, 2]),
    ("C+", &[0, 1]),
    ("D+", &[2]),
    ("C-", &[0, 2]),
    ("D-", &[1]),
];

/// `{X,Y}` label of the stable part of `M_w` for the split `D_{2n}` curve.
pub fn d_even_label(w: &Permutation) -> String {
    let mut names: Vec<&str> = w
        .summand_sets()
        .into_iter()
        .map(|s| {
            let v: Vec<usize> = s.into_iter().collect();
            D_EVEN_NAMES.iter().find(|(_, sub)| *sub == v.as_slice()).map(|(n, _)| *n).unwrap_or("?")
        })
        .collect();
    names.sort_unstable();
    format!("{{{}}}", names.join(","))
}

/// Number of branches.
pub fn branch_count(factors: &FactorList) -> Result<usize, ClusterError> {
    if let Some(i) = factors.status.iter().position(|s| *s == Irreducibility::Unknown) {
        return Err(ClusterError::Unresolved(i + 1));
    }
    Ok(factors.len())
}

/// The branch count is `m + 1`.
pub fn katz_check(factors: &FactorList, m: u32) -> Result<bool, ClusterError> {
    Ok(branch_count(factors)? == m as usize + 1)
}

/// `m = ord(g) - 1` for the `cA_m` type of `g(x,y) + uv`.
pub fn cam_type(g: &TruncatedSeries) -> Result<u32, ClusterError> {
    let d = ord_of(g);
    if d < 2 {
        return Err(ClusterError::LowOrder(d));
    }
    Ok(d - 1)
}

/// `dim S / (J(f) + m^d)`.
pub fn milnor_at(f: &TruncatedSeries, d: u32) -> usize {
    let nv = f.nvars();
    let mons = Monomial::below(nv, d);
    let idx: HashMap<&Monomial, usize> = mons.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut ech: Echelon<Rational> = Echelon::new(mons.len());
    for i in 0..nv {
        let p = f.derivative(i);
        if p.is_zero() {
            continue;
        }
        let o = ord_of(&p);
        for mu in mons.iter().filter(|m| m.degree() + o < d) {
            let q = p.mul(&TruncatedSeries::monomial(nv, mu.clone(), rat(1))).truncate(d);
            let mut r: SparseRow<Rational> = q.terms().map(|(m, c)| (idx[m], c.clone())).collect();
            r.sort_by_key(|e| e.0);
            ech.insert(r);
        }
    }
    mons.len() - ech.rank()
}

/// Highest truncation degree tried by [`milnor_number`].
pub const MILNOR_MAX_DEGREE: u32 = 40;

/// Milnor number, by escalating the truncation until the value is the same
/// for two further degrees.
pub fn milnor_number(f: &TruncatedSeries) -> Result<usize, ClusterError> {
    let mut prev = milnor_at(f, 1);
    let mut same = 0;
    for d in 2..=MILNOR_MAX_DEGREE {
        let cur = milnor_at(f, d);
        if cur == prev {
            same += 1;
            if same == 2 {
                return Ok(cur);
            }
        } else {
            same = 0;
        }
        prev = cur;
    }
    Err(ClusterError::NotIsolated(MILNOR_MAX_DEGREE))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lines(n: usize) -> FactorList {
        FactorList::new((0..n).map(|c| xy("x").sub(&xy("y").scale(&rat(c as i64)))).collect()).unwrap()
    }

    fn quick() -> HomalgConfig {
        HomalgConfig::default()
    }

    #[test]
    fn factor_list_invariants() {
        assert!(matches!(FactorList::parse(&["x", "2*x"]), Err(ClusterError::Associates(1, 2))));
        assert!(matches!(FactorList::parse(&["x", "1 + y"]), Err(ClusterError::Unit(2))));
        assert!(FactorList::parse(&["x", ""]).is_err());
        let l = FactorList::parse_product("x*(x^2+y^3)").unwrap();
        assert_eq!(l.len(), 2);
        assert_eq!(l.ords(), vec![1, 2]);
        assert_eq!(l.status(), &[Irreducibility::Certified, Irreducibility::HeuristicYes]);
    }

    #[test]
    fn heuristic() {
        assert_eq!(irreducibility_heuristic(&xy("x - y^5")), Irreducibility::Certified);
        assert_eq!(irreducibility_heuristic(&xy("x^2 + y^3")), Irreducibility::HeuristicYes);
        assert_eq!(irreducibility_heuristic(&xy("x^2 + y^4")), Irreducibility::Unknown);
        assert_eq!(irreducibility_heuristic(&xy("x^3 + x*y^3")), Irreducibility::Unknown);
        assert_eq!(irreducibility_heuristic(&xy("x^3 + y^5 + x^2*y^2")), Irreducibility::HeuristicYes);
        assert_eq!(irreducibility_heuristic(&xy("x^3 + y^5 + x*y")), Irreducibility::Unknown);
    }

    #[test]
    fn existence_examples() {
        assert!(has_cluster_tilting(&FactorList::parse(&["x - y^3", "x + y^3"]).unwrap()));
        assert!(!has_cluster_tilting(&FactorList::parse(&["x", "x^2 + y^3"]).unwrap()));
        assert!(has_cluster_tilting(&FactorList::parse(&["y", "y - x^2", "y - 2*x^2"]).unwrap()));
    }

    #[test]
    fn ade_and_t_curves() {
        let ct = |c: Curve| has_cluster_tilting(&curve_factors(&c).unwrap());
        for n in 1..=9 {
            assert_eq!(ct(Curve::A(n)), n % 2 == 1, "A{n}");
        }
        for n in 4..=9 {
            assert_eq!(ct(Curve::D(n)), n % 2 == 0, "D{n}");
        }
        for n in 6..=8 {
            assert!(!ct(Curve::E(n)));
        }
        assert!(ct(Curve::T(3, 6, rat(2))));
        assert!(ct(Curve::T(4, 4, rat(2))));
        assert!(ct(Curve::T(3, 8, rat(0))));
        assert!(ct(Curve::T(6, 6, rat(0))));
        assert!(!ct(Curve::T(3, 7, rat(0))));
        assert!(!ct(Curve::T(5, 6, rat(0))));
        assert!(ct(Curve::T(4, 6, rat(0))));
        assert!(curve_factors(&Curve::T(3, 5, rat(0))).is_err());
        assert_eq!(stable_counts(&curve_factors(&Curve::T(6, 6, rat(0))).unwrap()).unwrap(), (14, 24, 3));
    }

    #[test]
    fn counts() {
        assert_eq!(count_formula(1), (0, 1, 0));
        assert_eq!(count_formula(2), (2, 2, 1));
        assert_eq!(count_formula(3), (6, 6, 2));
        assert_eq!(count_formula(4), (14, 24, 3));
        assert!(stable_counts(&FactorList::parse(&["x", "x^2 + y^3"]).unwrap()).is_err());
    }

    #[test]
    fn rigid_objects() {
        let l = lines(3);
        let all = indec_rigid_objects(&l, false, Some(&quick())).unwrap();
        assert_eq!(all.len(), 7);
        assert_eq!(indec_rigid_objects(&l, true, None).unwrap().len(), 6);
        assert!(indec_rigid_objects(&lines(1), true, None).unwrap().is_empty());
        let two = indec_rigid_objects(&lines(2), false, None).unwrap();
        let names: Vec<&str> = two.iter().map(|m| m.name.as_str()).collect();
        assert_eq!(names, ["S_{1}", "S_{2}", "S_{1,2}"]);
    }

    #[test]
    fn permutations() {
        let w = Permutation::identity(3);
        let v = w.times_s(2).unwrap();
        assert_eq!(v.to_string(), "(1 3 2)");
        assert_eq!(v.times_s(2).unwrap(), w);
        assert!(w.times_s(3).is_err());
        assert_eq!(Permutation::all(4).len(), 24);
        assert!(Permutation::new(vec![0, 0]).is_err());
        assert_eq!(v.sign(), -1);
    }

    #[test]
    fn ct_object_a5() {
        let l = FactorList::parse(&["x - y^3", "x + y^3"]).unwrap();
        let w = Permutation::one_line(&[2, 1]).unwrap();
        let parts = cluster_tilting_summands(&l, &w).unwrap();
        assert_eq!(parts[0].a.get(0, 0), &xy("x + y^3"));
        assert!(parts[1].is_free());
        let cfg = quick();
        verify_rigid_sum(&parts, &cfg).unwrap();
        let cands = indec_rigid_objects(&l, false, None).unwrap();
        assert!(is_maximal_among(&parts, &cands, &cfg).unwrap());
        let m = cluster_tilting_object(&l, &w).unwrap();
        assert_eq!(m.rank(), 2);
        assert!(m.validate().is_ok());
    }

    #[test]
    fn mutation_sequences() {
        let l = lines(2);
        let (w2, mut data) = mutate(&l, &Permutation::identity(2), 1).unwrap();
        assert_eq!(w2.to_string(), "(2 1)");
        assert_eq!(data.sequences[0].terms[1].len(), 1);
        assert!(data.verify().unwrap().passed());
        let l3 = lines(3);
        let (_, data) = mutate(&l3, &Permutation::identity(3), 2).unwrap();
        let mid: Vec<&str> = data.sequences[0].terms[1].iter().map(|s| s.label.as_str()).collect();
        assert_eq!(mid, ["S/(f1f2f3)", "S/(f1)"]);
        let rep = verify_exchange(&data).unwrap();
        assert!(rep.passed(), "{:?}", rep.failures);
        assert!(rep.tested > 0);
    }

    #[test]
    fn sign_flip_is_detected() {
        let l3 = lines(3);
        let (_, mut data) = mutate(&l3, &Permutation::identity(3), 2).unwrap();
        let m = &mut data.sequences[0].maps[1];
        let v = m.get(0, 0).neg();
        m.set(0, 0, v);
        let rep = verify_exchange(&data).unwrap();
        assert!(!rep.compositions);
        assert!(!rep.passed());
    }

    #[test]
    fn almost_split() {
        let l = lines(2);
        let d = almost_split_sequence(&l, &Permutation::identity(2), 1).unwrap();
        let rep = verify_exchange(&d).unwrap();
        assert!(rep.passed(), "{:?}", rep.failures);
        let l3 = lines(3);
        let (h, d) = end_sequence(&l3, &Permutation::identity(3)).unwrap();
        assert_eq!(h, xy("y"));
        assert!(verify_exchange(&d).unwrap().passed());
        // y is a branch here, so x is chosen
        let (h, _) = end_sequence(&FactorList::parse(&["y", "x - y"]).unwrap(), &Permutation::identity(2)).unwrap();
        assert_eq!(h, xy("x"));
    }

    #[test]
    fn wrong_approximation_is_detected() {
        // (-1 0) with left map (g_1 g_2, 0): still a complex, but maps from
        // S_1 no longer factor
        let l3 = lines(3);
        let (_, mut data) = mutate(&l3, &Permutation::identity(3), 2).unwrap();
        let f = l3.factors();
        data.sequences[1].maps[1].set(0, 1, TruncatedSeries::zero(2));
        data.sequences[1].maps[0].set(0, 0, f[0].mul(&f[1]));
        data.sequences[1].maps[0].set(1, 0, TruncatedSeries::zero(2));
        let rep = verify_exchange(&data).unwrap();
        assert!(rep.compositions);
        assert!(!rep.approximations);
    }

    #[test]
    fn graphs() {
        let g2 = mutation_graph(2);
        assert_eq!((g2.vertices.len(), g2.edges.len()), (2, 1));
        let g3 = mutation_graph(3);
        assert!(g3.is_cycle());
        assert_eq!(g3.vertices.len(), 6);
        g3.check_cayley().unwrap();
        let g4 = mutation_graph(4);
        g4.check_cayley().unwrap();
        assert_eq!(g4.edges.len(), 36);
        assert_eq!(g4.girth(), Some(4));
        assert_eq!(g3.girth(), Some(6));
        assert!(g3.to_dot().contains("v0 -- v1"));
    }

    #[test]
    fn d4_exchange_graph_labels() {
        let g = mutation_graph(3).with_labels(d_even_label);
        let mut labels = g.labels.clone();
        labels.sort();
        assert_eq!(labels, ["{A,C+}", "{A,C-}", "{B,D+}", "{B,D-}", "{C+,D-}", "{C-,D+}"]);
        // adjacency as drawn: {C+,D-} - {A,C+} - {A,C-} - {C-,D+} - {B,D+} - {B,D-} - {C+,D-}
        let ring = ["{C+,D-}", "{A,C+}", "{A,C-}", "{C-,D+}", "{B,D+}", "{B,D-}"];
        let pos = |l: &str| g.labels.iter().position(|x| x == l).unwrap();
        for k in 0..6 {
            let (a, b) = (pos(ring[k]), pos(ring[(k + 1) % 6]));
            assert!(g.edges.iter().any(|&(u, v, _)| (u, v) == (a.min(b), a.max(b))));
        }
    }

    #[test]
    fn geometry() {
        let e7 = FactorList::parse(&["x", "x^2 + y^3"]).unwrap();
        assert_eq!(branch_count(&e7).unwrap(), 2);
        assert!(!katz_check(&e7, 2).unwrap());
        let t44 = curve_factors(&Curve::T(4, 4, rat(2))).unwrap();
        assert!(katz_check(&t44, 3).unwrap());
        assert!(katz_check(&FactorList::parse(&["x"]).unwrap(), 0).unwrap());
        let unk = FactorList::parse(&["x^2 + y^4"]).unwrap();
        assert!(matches!(branch_count(&unk), Err(ClusterError::Unresolved(1))));
        assert_eq!(branch_count(&unk.assert_all()).unwrap(), 1);
        assert_eq!(cam_type(&xy("x^2 + y^6")).unwrap(), 1);
        assert_eq!(cam_type(&xy("y*(x - y^2)*(x + y^2)")).unwrap(), 2);
        assert_eq!(cam_type(&xy("x*y*(x - y)*(x - 2*y)")).unwrap(), 3);
        assert!(cam_type(&xy("x + y^2")).is_err());
    }

    /// Dense elimination over GF(p) on all monomials of degree < d.
    fn milnor_oracle(f: &TruncatedSeries, d: u32) -> usize {
        use crate::scalar::{with_prime, Field, Fp};
        let p = 32003;
        with_prime(p, || {
            let mons = Monomial::below(f.nvars(), d);
            let mut rows = Vec::new();
            for i in 0..f.nvars() {
                let df = f.derivative(i);
                for mu in &mons {
                    let q = df.mul(&TruncatedSeries::monomial(f.nvars(), mu.clone(), rat(1))).truncate(d);
                    rows.push(mons.iter().map(|m| Fp::from_rational(&q.coeff(m)).unwrap()).collect::<Vec<Fp>>());
                }
            }
            mons.len() - crate::linalg::dense_rank(&rows)
        })
    }

    #[test]
    fn milnor() {
        let f = xy("x^3 + x*y^3");
        assert_eq!(milnor_number(&f).unwrap(), 7);
        assert_eq!(milnor_oracle(&f, 12), 7);
        for n in 2..=5 {
            let g = crate::series::parse(&format!("x^2 + y^2 + z^{n}"), &["x", "y", "z"]).unwrap();
            assert_eq!(milnor_number(&g).unwrap(), (n - 1) as usize);
        }
        assert_eq!(milnor_number(&xy("x + y^2")).unwrap(), 0);
        assert_eq!(milnor_number(&xy("x^2 + y^7")).unwrap(), 6);
        assert_eq!(milnor_oracle(&xy("x*y*(x - y)*(x - 2*y)"), 10), milnor_number(&xy("x*y*(x - y)*(x - 2*y)")).unwrap());
        assert_eq!(milnor_number(&xy("x^2")), Err(ClusterError::NotIsolated(MILNOR_MAX_DEGREE)));
    }
}
