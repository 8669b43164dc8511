//! Stable endomorphism algebras as finite-dimensional algebras.
//!
//! The basis of `End(M_1 + ... + M_r)` is the union of bases of the stable
//! Hom spaces `Hom(M_i, M_j)`; products are compositions of representatives,
//! written right to left: `a*b = a ∘ b`.

use crate::cluster::{spans_maximal_ideal, FactorList};
use crate::homalg::{stable_hom_dim, HomSpace, HomalgConfig, HomalgError, MorphismPair};
use crate::linalg::{determinant, Echelon, SparseRow};
use crate::matfac::MatrixFactorization;
use crate::scalar::{fmt_rational, rat, Rational};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EndoError {
    #[error(transparent)]
    Homalg(#[from] HomalgError),
    #[error("structure constants are not associative at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("idempotents fail: {0}")]
    Idempotents(String),
    #[error("generator `{0}` is not in the algebra")]
    Generator(String),
    #[error("cannot parse relation `{0}`: {1}")]
    Relation(String, String),
}

/// Coordinates in the basis of a [`FiniteDimAlgebra`].
pub type Element = Vec<Rational>;

/// Exhaustive associativity check is skipped above this dimension.
pub const ASSOCIATIVITY_LIMIT: usize = 30;

#[derive(Clone, Debug)]
pub struct FiniteDimAlgebra {
    pub vertices: Vec<String>,
    pub precision: u32,
    /// `(source, target)` summand of each basis element.
    pub ends: Vec<(usize, usize)>,
    pub representatives: Vec<MorphismPair>,
    /// `constants[a][b]` are the coordinates of `a ∘ b`.
    pub constants: Vec<Vec<SparseRow<Rational>>>,
    pub idempotents: Vec<Element>,
    spaces: HashMap<(usize, usize), (usize, HomSpace)>,
}

fn zero_el(n: usize) -> Element {
    vec![Rational::zero(); n]
}

/// Stable endomorphism algebra of the direct sum of the non-free `summands`.
pub fn stable_endo_algebra(summands: &[MatrixFactorization], cfg: &HomalgConfig) -> Result<FiniteDimAlgebra, EndoError> {
    let parts: Vec<MatrixFactorization> = summands
        .iter()
        .map(|m| {
            let r = m.reduce().mf;
            MatrixFactorization { name: m.name.clone(), ..r }
        })
        .filter(|m| m.rank() > 0)
        .collect();
    let r = parts.len();
    let mut precision = 0;
    let mut dims = HashMap::new();
    for (i, a) in parts.iter().enumerate() {
        for (j, b) in parts.iter().enumerate() {
            let rep = stable_hom_dim(a, b, cfg)?;
            precision = precision.max(rep.ladder.last().map(|e| e.0).unwrap_or(0));
            dims.insert((i, j), rep.dimension);
        }
    }
    let mut spaces = HashMap::new();
    let mut ends = Vec::new();
    let mut representatives = Vec::new();
    for j in 0..r {
        for i in 0..r {
            let hs = HomSpace::build(&parts[i], &parts[j], precision, true)?;
            if hs.dim() != dims[&(i, j)] {
                return Err(HomalgError::PrecisionCap { cap: precision, ladder: vec![(precision, hs.dim())] }.into());
            }
            let off = ends.len();
            for b in &hs.basis {
                ends.push((i, j));
                representatives.push(b.clone());
            }
            spaces.insert((i, j), (off, hs));
        }
    }
    let mut alg = FiniteDimAlgebra {
        vertices: parts.iter().map(|m| m.name.clone()).collect(),
        precision,
        ends,
        representatives,
        constants: Vec::new(),
        idempotents: Vec::new(),
        spaces,
    };
    let d = alg.dim();
    let mut constants = vec![vec![Vec::new(); d]; d];
    for a in 0..d {
        for b in 0..d {
            let (bi, bj) = alg.ends[b];
            let (ai, aj) = alg.ends[a];
            if ai != bj {
                continue;
            }
            let comp = alg.representatives[b].then(&alg.representatives[a]);
            let v = alg.coords(bi, aj, &comp)?;
            constants[a][b] = v.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
        }
    }
    alg.constants = constants;
    for (i, m) in parts.iter().enumerate() {
        let e = alg.element(i, i, &MorphismPair::identity(m, precision))?;
        alg.idempotents.push(e);
    }
    alg.check_idempotents()?;
    if d <= ASSOCIATIVITY_LIMIT {
        alg.check_associativity()?;
    }
    Ok(alg)
}

impl FiniteDimAlgebra {
    pub fn dim(&self) -> usize {
        self.ends.len()
    }

    fn coords(&self, i: usize, j: usize, p: &MorphismPair) -> Result<Element, HomalgError> {
        let (off, hs) = &self.spaces[&(i, j)];
        let local = hs.coordinates(p)?;
        let mut v = zero_el(self.dim());
        for (k, c) in local.into_iter().enumerate() {
            v[off + k] = c;
        }
        Ok(v)
    }

    /// A morphism from summand `i` to summand `j` as an element.
    pub fn element(&self, i: usize, j: usize, p: &MorphismPair) -> Result<Element, EndoError> {
        let mut q = p.clone();
        q.precision = q.precision.max(self.precision);
        self.coords(i, j, &q).map_err(|_| EndoError::Generator(format!("{} -> {}", self.vertices[i], self.vertices[j])))
    }

    pub fn vertex(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn zero(&self) -> Element {
        zero_el(self.dim())
    }

    pub fn one(&self) -> Element {
        self.idempotents.iter().fold(self.zero(), |a, e| add(&a, e))
    }

    pub fn basis_element(&self, k: usize) -> Element {
        let mut v = self.zero();
        v[k] = Rational::one();
        v
    }

    /// `a ∘ b`.
    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        let mut out = self.zero();
        for (k, ak) in a.iter().enumerate() {
            if ak.is_zero() {
                continue;
            }
            for (l, bl) in b.iter().enumerate() {
                if bl.is_zero() {
                    continue;
                }
                let s = ak * bl;
                for (m, c) in &self.constants[k][l] {
                    out[*m] += &s * c;
                }
            }
        }
        out
    }

    pub fn pow(&self, a: &Element, e: u32) -> Element {
        (0..e).fold(self.one(), |acc, _| self.mul(&acc, a))
    }

    fn check_idempotents(&self) -> Result<(), EndoError> {
        for (i, e) in self.idempotents.iter().enumerate() {
            for (j, f) in self.idempotents.iter().enumerate() {
                let p = self.mul(e, f);
                let want = if i == j { e.clone() } else { self.zero() };
                if p != want {
                    return Err(EndoError::Idempotents(format!("e{i} e{j}")));
                }
            }
        }
        let one = self.one();
        for k in 0..self.dim() {
            let b = self.basis_element(k);
            if self.mul(&one, &b) != b || self.mul(&b, &one) != b {
                return Err(EndoError::Idempotents(format!("1 is not a unit on basis element {k}")));
            }
        }
        Ok(())
    }

    /// Exhaustive on basis triples.
    pub fn check_associativity(&self) -> Result<(), EndoError> {
        let d = self.dim();
        let basis: Vec<Element> = (0..d).map(|k| self.basis_element(k)).collect();
        for a in 0..d {
            for b in 0..d {
                let ab = self.mul(&basis[a], &basis[b]);
                for c in 0..d {
                    if self.mul(&ab, &basis[c]) != self.mul(&basis[a], &self.mul(&basis[b], &basis[c])) {
                        return Err(EndoError::NotAssociative(a, b, c));
                    }
                }
            }
        }
        Ok(())
    }

    /// Basis elements from `i` to `j`.
    fn block(&self, i: usize, j: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&k| self.ends[k] == (i, j)).collect()
    }

    /// Kernel of `x -> trace(constant part of α)` on `End(M_i)`, together with
    /// all maps between different summands.
    pub fn radical(&self) -> Vec<Element> {
        let mut out = Vec::new();
        for k in 0..self.dim() {
            let (i, j) = self.ends[k];
            if i != j {
                out.push(self.basis_element(k));
            }
        }
        for i in 0..self.vertices.len() {
            let blk = self.block(i, i);
            let tr: Vec<Rational> = blk.iter().map(|&k| trace0(&self.representatives[k])).collect();
            let Some(p) = tr.iter().position(|t| !t.is_zero()) else {
                out.extend(blk.iter().map(|&k| self.basis_element(k)));
                continue;
            };
            for (q, &k) in blk.iter().enumerate() {
                if q == p {
                    continue;
                }
                let mut v = self.basis_element(k);
                v[blk[p]] = -(&tr[q] / &tr[p]);
                out.push(v);
            }
        }
        out
    }

    /// Span of all products of two radical elements.
    pub fn radical_square(&self, rad: &[Element]) -> Vec<Element> {
        let mut ech = Echelon::new(self.dim());
        let mut out = Vec::new();
        for a in rad {
            for b in rad {
                let p = self.mul(a, b);
                if ech.insert(sparse(&p)) {
                    out.push(p);
                }
            }
        }
        out
    }

    /// True if `rad^k = 0` for some `k <= dim + 1`.
    pub fn radical_is_nilpotent(&self) -> bool {
        let rad = self.radical();
        let mut cur = rad.clone();
        for _ in 0..=self.dim() {
            if cur.iter().all(|v| v.iter().all(|c| c.is_zero())) {
                return true;
            }
            let mut ech = Echelon::new(self.dim());
            let mut next = Vec::new();
            for a in &cur {
                for b in &rad {
                    let p = self.mul(a, b);
                    if ech.insert(sparse(&p)) {
                        next.push(p);
                    }
                }
            }
            cur = next;
        }
        false
    }

    /// Smallest `k` with `a^k = 0`.
    pub fn nilpotency(&self, a: &Element) -> Option<u32> {
        let mut p = a.clone();
        for k in 1..=(self.dim() as u32 + 1) {
            if p.iter().all(|c| c.is_zero()) {
                return Some(k);
            }
            p = self.mul(&p, a);
        }
        None
    }

    /// `C_ij = dim e_i A e_j = dim Hom(M_j, M_i)`.
    pub fn cartan(&self) -> Cartan {
        let r = self.vertices.len();
        let mut m = vec![vec![0i64; r]; r];
        for &(i, j) in &self.ends {
            m[j][i] += 1;
        }
        let symmetric = (0..r).all(|i| (0..r).all(|j| m[i][j] == m[j][i]));
        let q: Vec<Vec<Rational>> = m.iter().map(|row| row.iter().map(|&v| rat(v)).collect()).collect();
        let det = if r == 0 { Rational::one() } else { determinant(&q) };
        Cartan { matrix: m, symmetric, determinant: fmt_rational(&det), nonsingular: !det.is_zero() }
    }

    /// Arrows: a basis of `rad/rad^2` split by idempotents. Arrow
    /// representatives are the first basis elements not in `rad^2`.
    pub fn quiver(&self) -> QuiverPresentation {
        let rad = self.radical();
        let sq = self.radical_square(&rad);
        let mut ech = Echelon::new(self.dim());
        for v in &sq {
            ech.insert(sparse(v));
        }
        let mut arrows = Vec::new();
        for (i, j, v) in self.split_by_ends(&rad) {
            if ech.insert(sparse(&v)) {
                arrows.push((i, j, v));
            }
        }
        let mut counts: Vec<Arrow> = Vec::new();
        for (i, j, _) in &arrows {
            match counts.iter_mut().find(|a| a.from == *i && a.to == *j) {
                Some(a) => a.multiplicity += 1,
                None => counts.push(Arrow { from: *i, to: *j, multiplicity: 1 }),
            }
        }
        counts.sort_by_key(|a| (a.from, a.to));
        QuiverPresentation { vertices: self.vertices.clone(), arrows: counts, relations: Vec::new() }
    }

    /// Radical elements are supported on a single `(i, j)` block.
    fn split_by_ends(&self, rad: &[Element]) -> Vec<(usize, usize, Element)> {
        rad.iter()
            .map(|v| {
                let k = v.iter().position(|c| !c.is_zero()).expect("nonzero");
                (self.ends[k].0, self.ends[k].1, v.clone())
            })
            .collect()
    }

    /// Structure constants as `[a, b, c, "value"]` entries.
    pub fn to_json(&self) -> serde_json::Value {
        let mut entries = Vec::new();
        for (a, row) in self.constants.iter().enumerate() {
            for (b, v) in row.iter().enumerate() {
                for (c, x) in v {
                    entries.push(serde_json::json!([a, b, c, fmt_rational(x)]));
                }
            }
        }
        serde_json::json!({
            "vertices": self.vertices,
            "dimension": self.dim(),
            "precision": self.precision,
            "ends": self.ends,
            "constants": entries,
        })
    }
}

fn trace0(p: &MorphismPair) -> Rational {
    (0..p.alpha.rows.min(p.alpha.cols)).fold(Rational::zero(), |acc, i| acc + p.alpha.get(i, i).constant_term())
}

fn sparse(v: &Element) -> SparseRow<Rational> {
    v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.clone())).collect()
}

fn add(a: &Element, b: &Element) -> Element {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn scale(a: &Element, s: &Rational) -> Element {
    a.iter().map(|x| x * s).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cartan {
    pub matrix: Vec<Vec<i64>>,
    pub symmetric: bool,
    pub determinant: String,
    pub nonsingular: bool,
}

/// Cartan matrix with its flags.
pub fn cartan_matrix(alg: &FiniteDimAlgebra) -> Cartan {
    alg.cartan()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub from: usize,
    pub to: usize,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RelationStatus {
    VerifiedZero,
    VerifiedEqual,
    Failed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverPresentation {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
    pub relations: Vec<(String, RelationStatus)>,
}

impl QuiverPresentation {
    pub fn loops(&self) -> Vec<usize> {
        self.arrows.iter().filter(|a| a.from == a.to).map(|a| a.from).collect()
    }

    pub fn arrow_count(&self, from: usize, to: usize) -> usize {
        self.arrows.iter().find(|a| a.from == from && a.to == to).map_or(0, |a| a.multiplicity)
    }

    pub fn all_verified(&self) -> bool {
        self.relations.iter().all(|(_, s)| *s != RelationStatus::Failed)
    }

    /// Parallel arrows are drawn as parallel edges.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph quiver {\n");
        for (i, v) in self.vertices.iter().enumerate() {
            let _ = writeln!(s, "  q{i} [label=\"{v}\"];");
        }
        for a in &self.arrows {
            for _ in 0..a.multiplicity {
                let _ = writeln!(s, "  q{} -> q{};", a.from, a.to);
            }
        }
        s.push_str("}\n");
        s
    }
}

/// Quiver of `End(S_1 + ... + S_n)` for the chain of partial products: a
/// double path, a loop at `S_n`, and a loop at `S_i` (`i < n`) exactly when
/// `(f_i, f_{i+1})` is not the maximal ideal. Stable mode drops `S_n`.
pub fn chain_quiver(factors: &FactorList, stable: bool) -> QuiverPresentation {
    let fs = factors.factors();
    let n = fs.len();
    let keep = if stable { n - 1 } else { n };
    let vertices: Vec<String> = (1..=keep).map(|i| format!("S_{i}")).collect();
    let mut arrows = Vec::new();
    for i in 0..keep {
        let looped = if i + 1 == n { true } else { !spans_maximal_ideal(&fs[i], &fs[i + 1]) };
        if looped {
            arrows.push(Arrow { from: i, to: i, multiplicity: 1 });
        }
        if i + 1 < keep {
            arrows.push(Arrow { from: i, to: i + 1, multiplicity: 1 });
            arrows.push(Arrow { from: i + 1, to: i, multiplicity: 1 });
        }
    }
    arrows.sort_by_key(|a| (a.from, a.to));
    QuiverPresentation { vertices, arrows, relations: Vec::new() }
}

/// Noncommutative polynomial in named generators; words are read as
/// compositions, right to left.
#[derive(Clone, Debug, PartialEq)]
pub struct Relation {
    pub text: String,
    pub lhs: Vec<(Rational, Vec<String>)>,
    pub rhs: Option<Vec<(Rational, Vec<String>)>>,
}

fn canonical(name: &str) -> String {
    match name {
        "φ" => "phi",
        "ψ" => "psi",
        "α" => "alpha",
        "β" => "beta",
        "γ" => "gamma",
        "δ" => "delta",
        other => other,
    }
    .to_string()
}

fn parse_side(src: &str, text: &str) -> Result<Vec<(Rational, Vec<String>)>, EndoError> {
    let err = |m: &str| EndoError::Relation(src.to_string(), m.to_string());
    let mut terms = Vec::new();
    let t = text.replace('−', "-");
    let mut chunks: Vec<(bool, String)> = Vec::new();
    let mut cur = String::new();
    let mut neg = false;
    let mut depth = 0;
    for ch in t.chars() {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch);
            }
            ')' => {
                depth -= 1;
                cur.push(ch);
            }
            '+' | '-' if depth == 0 => {
                if !cur.trim().is_empty() {
                    chunks.push((neg, std::mem::take(&mut cur)));
                } else if ch == '-' && !chunks.is_empty() {
                    return Err(err("dangling sign"));
                }
                neg = ch == '-';
            }
            _ => cur.push(ch),
        }
    }
    if !cur.trim().is_empty() {
        chunks.push((neg, cur));
    }
    if chunks.is_empty() {
        return Err(err("empty side"));
    }
    for (neg, c) in chunks {
        let mut coeff = if neg { rat(-1) } else { rat(1) };
        let mut word = Vec::new();
        for tok in c.split(|ch: char| ch == '*' || ch.is_whitespace()).filter(|s| !s.is_empty()) {
            if tok == "0" {
                coeff = Rational::zero();
                continue;
            }
            if tok.chars().next().is_some_and(|ch| ch.is_ascii_digit() || ch == '(') {
                let inner = tok.trim_start_matches('(').trim_end_matches(')');
                let v: Rational = match inner.split_once('/') {
                    Some((a, b)) => {
                        let (a, b): (i64, i64) = (a.parse().map_err(|_| err(tok))?, b.parse().map_err(|_| err(tok))?);
                        if b == 0 {
                            return Err(err("zero denominator"));
                        }
                        Rational::new(a.into(), b.into())
                    }
                    None => rat(inner.parse().map_err(|_| err(tok))?),
                };
                coeff *= v;
                continue;
            }
            let (name, exp) = match tok.split_once('^') {
                Some((n, e)) => (n, e.parse::<usize>().map_err(|_| err(tok))?),
                None => (tok, 1),
            };
            for _ in 0..exp {
                word.push(canonical(name));
            }
        }
        terms.push((coeff, word));
    }
    Ok(terms)
}

impl Relation {
    /// `"psi*alpha - alpha*phi"`, `"alpha beta alpha"`, `"phi^2 = beta*alpha"`.
    pub fn parse(text: &str) -> Result<Relation, EndoError> {
        match text.split_once('=') {
            Some((l, r)) => Ok(Relation { text: text.to_string(), lhs: parse_side(text, l)?, rhs: Some(parse_side(text, r)?) }),
            None => Ok(Relation { text: text.to_string(), lhs: parse_side(text, text)?, rhs: None }),
        }
    }

    fn generators(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for (_, w) in self.lhs.iter().chain(self.rhs.iter().flatten()) {
            for g in w {
                if !out.contains(g) {
                    out.push(g.clone());
                }
            }
        }
        out
    }
}

/// Named elements of an algebra.
#[derive(Clone, Debug)]
pub struct Generators {
    pub names: Vec<String>,
    pub values: Vec<Element>,
}

impl Generators {
    pub fn new() -> Self {
        Generators { names: Vec::new(), values: Vec::new() }
    }

    /// Adds a morphism from summand `from` to summand `to`.
    pub fn with(mut self, alg: &FiniteDimAlgebra, name: &str, from: &str, to: &str, p: &MorphismPair) -> Result<Self, EndoError> {
        let i = alg.vertex(from).ok_or_else(|| EndoError::Generator(from.to_string()))?;
        let j = alg.vertex(to).ok_or_else(|| EndoError::Generator(to.to_string()))?;
        let v = alg.element(i, j, p).map_err(|_| EndoError::Generator(name.to_string()))?;
        self.names.push(canonical(name));
        self.values.push(v);
        Ok(self)
    }

    fn get(&self, n: &str) -> Option<&Element> {
        self.names.iter().position(|m| m == n).map(|k| &self.values[k])
    }

    /// Same generators with each value multiplied by a scalar.
    pub fn rescaled(&self, s: &[Rational]) -> Generators {
        Generators { names: self.names.clone(), values: self.values.iter().zip(s).map(|(v, c)| scale(v, c)).collect() }
    }
}

impl Default for Generators {
    fn default() -> Self {
        Self::new()
    }
}

fn eval_side(alg: &FiniteDimAlgebra, gens: &Generators, side: &[(Rational, Vec<String>)]) -> Result<Element, EndoError> {
    let mut out = alg.zero();
    for (c, w) in side {
        let mut p: Option<Element> = None;
        for g in w {
            let v = gens.get(g).ok_or_else(|| EndoError::Generator(g.clone()))?;
            p = Some(match p {
                None => v.clone(),
                Some(acc) => alg.mul(&acc, v),
            });
        }
        let p = p.unwrap_or_else(|| alg.one());
        out = add(&out, &scale(&p, c));
    }
    Ok(out)
}

/// Evaluates `lhs - rhs`.
pub fn evaluate(alg: &FiniteDimAlgebra, gens: &Generators, rel: &Relation) -> Result<Element, EndoError> {
    let l = eval_side(alg, gens, &rel.lhs)?;
    match &rel.rhs {
        Some(r) => {
            let r = eval_side(alg, gens, r)?;
            Ok(l.iter().zip(&r).map(|(a, b)| a - b).collect())
        }
        None => Ok(l),
    }
}

/// Status of each relation word.
pub fn check_relations(alg: &FiniteDimAlgebra, gens: &Generators, relations: &[&str]) -> Result<QuiverPresentation, EndoError> {
    let mut q = alg.quiver();
    for r in relations {
        let rel = Relation::parse(r)?;
        let v = evaluate(alg, gens, &rel)?;
        let ok = v.iter().all(|c| c.is_zero());
        let status = match (ok, rel.rhs.is_some()) {
            (false, _) => RelationStatus::Failed,
            (true, true) => RelationStatus::VerifiedEqual,
            (true, false) => RelationStatus::VerifiedZero,
        };
        q.relations.push((r.to_string(), status));
    }
    Ok(q)
}

/// Scalars tried by [`rescaling_search`].
pub fn default_scalars() -> Vec<Rational> {
    let mut out = Vec::new();
    for k in 1..=4i64 {
        for s in [1i64, -1] {
            out.push(rat(s * k));
            if k > 1 {
                out.push(Rational::new((s).into(), k.into()));
            }
        }
    }
    out
}

/// Searches scalars `s_g` (at most four generators) such that every relation
/// holds for the rescaled generators. Each relation is split into its
/// monomial words once, so a candidate costs only scalar arithmetic.
pub fn rescaling_search(alg: &FiniteDimAlgebra, gens: &Generators, relations: &[&str], scalars: &[Rational]) -> Result<Option<Vec<Rational>>, EndoError> {
    let rels: Vec<Relation> = relations.iter().map(|r| Relation::parse(r)).collect::<Result<_, _>>()?;
    let mut used: Vec<String> = Vec::new();
    for r in &rels {
        for g in r.generators() {
            if !used.contains(&g) {
                used.push(g);
            }
        }
    }
    if used.len() > 4 {
        return Err(EndoError::Generator(format!("{} generators; at most 4 are rescaled", used.len())));
    }
    // per relation: list of (coefficient, exponent vector over `used`, value)
    let mut compiled: Vec<Vec<(Rational, Vec<u32>, Element)>> = Vec::new();
    for r in &rels {
        let mut terms = Vec::new();
        let sides = [(rat(1), &r.lhs)].into_iter().chain(r.rhs.iter().map(|s| (rat(-1), s)));
        for (sign, side) in sides {
            for (c, w) in side.iter() {
                let mut e = vec![0u32; used.len()];
                for g in w {
                    e[used.iter().position(|u| u == g).unwrap()] += 1;
                }
                let v = eval_side(alg, gens, &[(rat(1), w.clone())])?;
                terms.push((&sign * c, e, v));
            }
        }
        compiled.push(terms);
    }
    let k = used.len();
    let mut idx = vec![0usize; k];
    loop {
        let s: Vec<Rational> = idx.iter().map(|&i| scalars[i].clone()).collect();
        let ok = compiled.iter().all(|terms| {
            let mut acc = alg.zero();
            for (c, e, v) in terms {
                let mut f = c.clone();
                for (g, &p) in e.iter().enumerate() {
                    for _ in 0..p {
                        f *= &s[g];
                    }
                }
                acc = add(&acc, &scale(v, &f));
            }
            acc.iter().all(|x| x.is_zero())
        });
        if ok {
            let full = gens.names.iter().map(|n| used.iter().position(|u| u == n).map_or(rat(1), |p| s[p].clone())).collect();
            return Ok(Some(full));
        }
        let mut p = 0;
        loop {
            if p == k {
                return Ok(None);
            }
            idx[p] += 1;
            if idx[p] < scalars.len() {
                break;
            }
            idx[p] = 0;
            p += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cluster::{cluster_tilting_summands, Permutation};
    use crate::matfac::{catalog, mf_partial_product, CatalogParams};
    use crate::matfac::PolyMatrix;
    use crate::scalar::rat_frac;
    use crate::series::{xy, TruncatedSeries};

    fn cfg() -> HomalgConfig {
        HomalgConfig::default()
    }

    #[test]
    fn a_odd_endo() {
        for n in [3u32, 5, 7] {
            let e = catalog("A_odd", &CatalogParams { n: Some(n), ..Default::default() }).unwrap();
            let alg = stable_endo_algebra(&e.objects[..1], &cfg()).unwrap();
            let k = (n as usize + 1) / 2;
            assert_eq!(alg.dim(), k);
            assert_eq!(alg.idempotents.len(), 1);
            let rad = alg.radical();
            assert_eq!(rad.len(), k - 1);
            let q = alg.quiver();
            assert_eq!(q.loops(), if k > 1 { vec![0] } else { vec![] });
            if k > 1 {
                let y = alg.element(0, 0, &MorphismPair::scalar_xy(&e.objects[0], &e.objects[0], "y", "y", alg.precision)).unwrap();
                assert_eq!(alg.nilpotency(&y), Some(k as u32));
            }
            assert!(alg.radical_is_nilpotent());
        }
    }

    #[test]
    fn free_module_gives_zero_algebra() {
        let f = vec![xy("x"), xy("y")];
        let alg = stable_endo_algebra(&[mf_partial_product(&f, 2).unwrap()], &cfg()).unwrap();
        assert_eq!(alg.dim(), 0);
        assert!(alg.vertices.is_empty());
    }

    #[test]
    fn t36_relations() {
        let e = catalog("T36", &CatalogParams { lambda: Some(rat(2)), ..Default::default() }).unwrap();
        let (m, n) = (&e.objects[0], &e.objects[1]);
        let alg = stable_endo_algebra(&e.objects, &cfg()).unwrap();
        assert_eq!(alg.dim(), 12);
        let p = alg.precision;
        let gens = Generators::new()
            .with(&alg, "phi", "M", "M", &MorphismPair::scalar_xy(m, m, "x", "x", p))
            .unwrap()
            .with(&alg, "psi", "N", "N", &MorphismPair::scalar_xy(n, n, "x", "x", p))
            .unwrap()
            .with(&alg, "alpha", "M", "N", &MorphismPair::scalar_xy(m, n, "1", "y", p))
            .unwrap()
            .with(&alg, "beta", "N", "M", &MorphismPair::scalar_xy(n, m, "y", "1", p))
            .unwrap();
        let phi = gens.get("phi").unwrap();
        assert_eq!(alg.nilpotency(phi), Some(4));
        let q = check_relations(&alg, &gens, &["psi alpha - alpha phi", "beta psi - phi beta", "phi^2 - beta alpha", "psi^2 - (1/2) alpha beta"]).unwrap();
        assert!(q.all_verified(), "{:?}", q.relations);
        let q = check_relations(&alg, &gens, &["psi^2 - 2 alpha beta"]).unwrap();
        assert_eq!(q.relations[0].1, RelationStatus::Failed);
        let c = alg.cartan();
        assert_eq!(c.matrix, vec![vec![4, 2], vec![2, 4]]);
        assert!(c.symmetric && c.nonsingular);
    }

    #[test]
    fn relation_parser() {
        let r = Relation::parse("psi^2 - 2 alpha*beta").unwrap();
        assert_eq!(r.lhs.len(), 2);
        assert_eq!(r.lhs[1].0, rat(-2));
        assert_eq!(r.lhs[0].1, vec!["psi", "psi"]);
        let r = Relation::parse("φ² = βα");
        assert!(r.is_ok());
        let r = Relation::parse("phi^2 = beta alpha").unwrap();
        assert!(r.rhs.is_some());
        assert!(Relation::parse("").is_err());
    }

    #[test]
    fn d4_split_algebras() {
        let e = catalog("D_even_split", &CatalogParams { n: Some(1), ..Default::default() }).unwrap();
        let fl = FactorList::new(e.factors.clone()).unwrap();
        for w in Permutation::all(3) {
            let parts = cluster_tilting_summands(&fl, &w).unwrap();
            let alg = stable_endo_algebra(&parts, &cfg()).unwrap();
            assert_eq!(alg.vertices.len(), 2);
            let q = alg.quiver();
            assert!(q.loops().is_empty());
            assert_eq!((q.arrow_count(0, 1), q.arrow_count(1, 0)), (1, 1));
            assert_eq!(alg.dim(), 6);
            let c = alg.cartan();
            assert!(c.symmetric);
        }
    }

    #[test]
    fn chain_quivers() {
        let l = FactorList::parse(&["x", "x - y", "x - 2*y"]).unwrap();
        let q = chain_quiver(&l, false);
        assert_eq!(q.loops(), vec![2]);
        assert_eq!(q.arrows.len(), 5);
        let s = chain_quiver(&l, true);
        assert_eq!(s.vertices.len(), 2);
        assert!(s.loops().is_empty());
        let p = FactorList::parse(&["x", "x + y^2"]).unwrap();
        assert_eq!(chain_quiver(&p, false).loops(), vec![0, 1]);
        let one = FactorList::parse(&["x"]).unwrap();
        assert_eq!(chain_quiver(&one, false).loops(), vec![0]);
        assert!(chain_quiver(&one, true).vertices.is_empty());
    }

    #[test]
    fn rescaling() {
        let e = catalog("T36", &CatalogParams { lambda: Some(rat(2)), ..Default::default() }).unwrap();
        let (m, n) = (&e.objects[0], &e.objects[1]);
        let alg = stable_endo_algebra(&e.objects, &cfg()).unwrap();
        let p = alg.precision;
        let gens = Generators::new()
            .with(&alg, "phi", "M", "M", &MorphismPair::scalar_xy(m, m, "x", "x", p))
            .unwrap()
            .with(&alg, "psi", "N", "N", &MorphismPair::scalar_xy(n, n, "x", "x", p))
            .unwrap()
            .with(&alg, "alpha", "M", "N", &MorphismPair::scalar_xy(m, n, "1", "y", p))
            .unwrap()
            .with(&alg, "beta", "N", "M", &MorphismPair::scalar_xy(n, m, "y", "1", p))
            .unwrap();
        let rels = ["psi alpha - alpha phi", "beta psi - phi beta", "phi^2 - beta alpha", "psi^2 - 2 alpha beta"];
        assert_eq!(rescaling_search(&alg, &gens, &rels, &default_scalars()).unwrap(), None);
        let half = ["psi alpha - alpha phi", "beta psi - phi beta", "phi^2 - beta alpha", "psi^2 - (1/2) alpha beta"];
        assert!(rescaling_search(&alg, &gens, &half, &default_scalars()).unwrap().is_some());
    }

    fn t36_swapped(alg: &FiniteDimAlgebra, m: &MatrixFactorization, n: &MatrixFactorization) -> Generators {
        let p = alg.precision;
        Generators::new()
            .with(alg, "phi", "N", "N", &MorphismPair::scalar_xy(n, n, "x", "x", p))
            .unwrap()
            .with(alg, "psi", "M", "M", &MorphismPair::scalar_xy(m, m, "x", "x", p))
            .unwrap()
            .with(alg, "alpha", "N", "M", &MorphismPair::scalar_xy(n, m, "y", "1", p))
            .unwrap()
            .with(alg, "beta", "M", "N", &MorphismPair::scalar_xy(m, n, "1", "y", p).scale(&rat_frac(1, 2)))
            .unwrap()
    }

    #[test]
    fn t36_swapped_dictionary() {
        let e = catalog("T36", &CatalogParams { lambda: Some(rat(2)), ..Default::default() }).unwrap();
        let alg = stable_endo_algebra(&e.objects, &cfg()).unwrap();
        let gens = t36_swapped(&alg, &e.objects[0], &e.objects[1]);
        let rels = ["psi alpha - alpha phi", "beta psi - phi beta", "phi^2 - beta alpha", "psi^2 - 2 alpha beta"];
        let zero = ["alpha beta alpha", "beta alpha beta", "alpha phi^2", "psi^2 alpha", "phi^2 beta", "beta psi^2", "phi^4", "psi^4"];
        let q = check_relations(&alg, &gens, &rels).unwrap();
        assert!(q.all_verified(), "{:?}", q.relations);
        let q = check_relations(&alg, &gens, &zero).unwrap();
        assert!(q.all_verified(), "{:?}", q.relations);
        assert!(check_relations(&alg, &gens, &["phi^3"]).unwrap().relations[0].1 == RelationStatus::Failed);
        let q = alg.quiver();
        assert_eq!(q.loops(), vec![0, 1]);
        assert_eq!((q.arrow_count(0, 1), q.arrow_count(1, 0)), (1, 1));
    }

    #[test]
    fn t44_b11() {
        let e = catalog("T44", &CatalogParams { lambda: Some(rat(2)), ..Default::default() }).unwrap();
        let (m, n, k) = (&e.objects[0], &e.objects[1], &e.objects[2]);
        let alg = stable_endo_algebra(&e.objects, &cfg()).unwrap();
        let p = alg.precision;
        let gens = Generators::new()
            .with(&alg, "alpha", "M", "N", &MorphismPair::scalar_xy(m, n, "1", "x", p))
            .unwrap()
            .with(&alg, "beta", "N", "M", &MorphismPair::scalar_xy(n, m, "x", "1", p))
            .unwrap()
            .with(&alg, "gamma", "N", "K", &MorphismPair::scalar_xy(n, k, "1", "y", p))
            .unwrap()
            .with(&alg, "delta", "K", "N", &MorphismPair::scalar_xy(k, n, "y", "1", p))
            .unwrap();
        let rels = [
            "alpha beta alpha - delta gamma alpha",
            "alpha beta delta - 2 delta gamma delta",
            "gamma alpha beta - 2 gamma delta gamma",
            "beta delta gamma - beta alpha beta",
        ];
        let q = check_relations(&alg, &gens, &rels).unwrap();
        assert!(q.all_verified(), "{:?}", q.relations);
        let q = alg.quiver();
        assert!(q.loops().is_empty());
        assert_eq!(q.arrows.iter().map(|a| a.multiplicity).sum::<usize>(), 4);
        assert_eq!(q.arrow_count(0, 2), 0);
        let c = alg.cartan();
        assert_eq!(c.matrix.len(), 3);
        assert!(c.symmetric && c.nonsingular, "{c:?}");
    }

    #[test]
    fn d4_zero_relations() {
        let e = catalog("D_even_split", &CatalogParams { n: Some(1), ..Default::default() }).unwrap();
        let fl = FactorList::new(e.factors.clone()).unwrap();
        for w in Permutation::all(3) {
            let parts = cluster_tilting_summands(&fl, &w).unwrap();
            let alg = stable_endo_algebra(&parts, &cfg()).unwrap();
            let g = &fl.factors()[w.images()[1]];
            let (s, t) = (&parts[0], &parts[1]);
            let one = TruncatedSeries::one(2);
            let p = alg.precision;
            let a = MorphismPair::from_resolution(s, t, PolyMatrix::scalar(1, &one), PolyMatrix::scalar(1, g), p);
            let b = MorphismPair::from_resolution(t, s, PolyMatrix::scalar(1, g), PolyMatrix::scalar(1, &one), p);
            let gens = Generators::new()
                .with(&alg, "alpha", &alg.vertices[0], &alg.vertices[1], &a)
                .unwrap()
                .with(&alg, "beta", &alg.vertices[1], &alg.vertices[0], &b)
                .unwrap();
            let q = check_relations(&alg, &gens, &["alpha beta alpha", "beta alpha beta"]).unwrap();
            assert!(q.all_verified(), "{w}: {:?}", q.relations);
            let q = check_relations(&alg, &gens, &["alpha beta", "beta alpha"]).unwrap();
            assert!(q.relations.iter().all(|r| r.1 == RelationStatus::Failed));
        }
    }

    #[test]
    fn loop_corpus() {
        let corpus = [
            ("x", "y", false),
            ("x", "x + y^2", true),
            ("x - y", "x + y", false),
            ("x", "x + y", false),
            ("y", "y - x^2", true),
            ("x - y^3", "x + y^3", true),
            ("x", "x^2 + y^3", true),
            ("x + y", "x - y + y^2", false),
            ("x", "y + x^2", false),
            ("x^2 - y^3", "y", true),
        ];
        for (a, b, looped) in corpus {
            let fl = FactorList::parse(&[a, b]).unwrap();
            assert_eq!(!spans_maximal_ideal(&fl.factors()[0], &fl.factors()[1]), looped, "{a}, {b}");
            assert_eq!(chain_quiver(&fl, true).loops().is_empty(), !looped);
            let s1 = mf_partial_product(fl.factors(), 1).unwrap();
            let alg = stable_endo_algebra(&[s1], &cfg()).unwrap();
            assert_eq!(alg.quiver().loops().is_empty(), !looped, "{a}, {b}");
        }
    }
}
