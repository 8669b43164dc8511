//! Hom, stable Hom and Ext¹ between matrix factorizations.
//!
//! A morphism `(A,B) -> (C,D)` is a pair `(α, β)` with `αA = Cβ` and
//! `βB = Dα`. It is null-homotopic when `α = CH + KB`, `β = HA + DK`.
//! Module homomorphisms of the cokernels are pairs modulo `(CH, HA)`.
//!
//! Everything is computed on truncations: at precision `N` the cycle
//! equations are solved with unknowns of degree `< 2N` and the solution space
//! is projected to degree `< N`. Dimensions are taken along the ladder
//! `8, 16, 32, ...` until two consecutive values agree.

use crate::linalg::{normalize_row, solve_modulo, Echelon, SparseRow};
use crate::matfac::{MatrixFactorization, PolyMatrix};
use crate::scalar::{with_prime, FieldChoice, Fp, Field, Rational};
use crate::series::{Monomial, TruncatedSeries};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::sync::Mutex;
use thiserror::Error;

pub mod presented;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HomalgError {
    #[error("no stabilization up to precision {cap}; ladder {ladder:?}")]
    PrecisionCap { cap: u32, ladder: Vec<(u32, usize)> },
    #[error("a coefficient has denominator divisible by the characteristic")]
    Characteristic,
    #[error("factorizations of different equations")]
    EquationMismatch,
    #[error("morphism does not lie in the Hom space")]
    NotAMorphism,
}

/// Precision ladder and field.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HomalgConfig {
    pub field: FieldChoice,
    pub ladder: Vec<u32>,
    pub cap: u32,
    pub certify: bool,
}

impl Default for HomalgConfig {
    fn default() -> Self {
        HomalgConfig { field: FieldChoice::Rational, ladder: vec![8, 16, 32, 64, 128], cap: 128, certify: false }
    }
}

impl HomalgConfig {
    /// Defaults overridden by `MF_PRECISION_MAX` and `MF_FIELD`.
    pub fn from_env() -> Result<Self, String> {
        let mut c = HomalgConfig::default();
        if let Ok(v) = std::env::var("MF_PRECISION_MAX") {
            c.cap = v.trim().parse().map_err(|_| format!("bad MF_PRECISION_MAX `{v}`"))?;
        }
        if let Ok(v) = std::env::var("MF_FIELD") {
            c.field = v.parse()?;
        }
        Ok(c)
    }

    pub fn with_cap(mut self, cap: u32) -> Self {
        self.cap = cap;
        self
    }

    fn steps(&self) -> Vec<u32> {
        self.ladder.iter().copied().filter(|&n| n <= self.cap).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExtKind {
    Hom,
    StableHom,
    Ext1,
}

/// A dimension together with the ladder that produced it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExtReport {
    pub kind: ExtKind,
    pub source: String,
    pub target: String,
    pub dimension: usize,
    pub ladder: Vec<(u32, usize)>,
    pub stabilized: bool,
    pub certified: bool,
    pub certification_bound: Option<u32>,
    pub field: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// A morphism of factorizations, truncated at `precision`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MorphismPair {
    pub source: String,
    pub target: String,
    pub alpha: PolyMatrix,
    pub beta: PolyMatrix,
    pub precision: u32,
}

impl MorphismPair {
    /// `self` followed by `next` (`next ∘ self`).
    pub fn then(&self, next: &MorphismPair) -> MorphismPair {
        let n = self.precision.min(next.precision);
        MorphismPair {
            source: self.source.clone(),
            target: next.target.clone(),
            alpha: next.alpha.mul(&self.alpha).truncate(n),
            beta: next.beta.mul(&self.beta).truncate(n),
            precision: n,
        }
    }

    /// Pair written as `(map on the source of A, map on the target of A)`,
    /// the order used when morphisms are drawn on periodic resolutions.
    pub fn from_resolution(m: &MatrixFactorization, n: &MatrixFactorization, f1: PolyMatrix, f0: PolyMatrix, precision: u32) -> MorphismPair {
        MorphismPair { source: m.name.clone(), target: n.name.clone(), alpha: f0, beta: f1, precision }
    }

    /// 1x1 version of [`MorphismPair::from_resolution`] from `x, y` strings.
    pub fn scalar_xy(m: &MatrixFactorization, n: &MatrixFactorization, f1: &str, f0: &str, precision: u32) -> MorphismPair {
        let e = |s: &str| PolyMatrix::from_rows(vec![vec![crate::series::xy(s)]]);
        MorphismPair::from_resolution(m, n, e(f1), e(f0), precision)
    }

    pub fn identity(m: &MatrixFactorization, precision: u32) -> MorphismPair {
        let id = PolyMatrix::identity(m.rank(), m.nvars());
        MorphismPair { source: m.name.clone(), target: m.name.clone(), alpha: id.clone(), beta: id, precision }
    }

    pub fn add(&self, o: &MorphismPair) -> MorphismPair {
        MorphismPair { alpha: self.alpha.add(&o.alpha), beta: self.beta.add(&o.beta), ..self.clone() }
    }

    pub fn scale(&self, c: &Rational) -> MorphismPair {
        MorphismPair { alpha: self.alpha.scale(c), beta: self.beta.scale(c), ..self.clone() }
    }

    /// Residues of the cycle equations modulo `m^precision`.
    pub fn is_cycle(&self, m: &MatrixFactorization, n: &MatrixFactorization) -> bool {
        let p = self.precision;
        let e1 = self.alpha.mul(&m.a).sub(&n.a.mul(&self.beta)).truncate(p);
        let e2 = self.beta.mul(&m.b).sub(&n.b.mul(&self.alpha)).truncate(p);
        e1.is_zero() && e2.is_zero()
    }
}

/// Coordinates of `(α, β)` truncated at `n`: monomial-major, then
/// `(which, row, col)`.
#[derive(Clone, Debug)]
struct Layout {
    r: usize,
    s: usize,
    monos: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl Layout {
    fn new(nvars: usize, r: usize, s: usize, n: u32) -> Layout {
        let monos = Monomial::below(nvars, n);
        let index = monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        Layout { r, s, monos, index }
    }

    fn block(&self) -> usize {
        2 * self.s * self.r
    }

    fn dim(&self) -> usize {
        self.block() * self.monos.len()
    }

    fn coord(&self, which: usize, i: usize, j: usize, k: usize) -> usize {
        k * self.block() + (which * self.s + i) * self.r + j
    }

    fn to_row<F: Field>(&self, p: &MorphismPair) -> Option<SparseRow<F>> {
        let mut row = Vec::new();
        for (which, m) in [(0, &p.alpha), (1, &p.beta)] {
            for i in 0..self.s {
                for j in 0..self.r {
                    for (mono, c) in m.get(i, j).terms() {
                        if let Some(&k) = self.index.get(mono) {
                            row.push((self.coord(which, i, j, k), F::from_rational(c)?));
                        }
                    }
                }
            }
        }
        Some(normalize_row(row))
    }

    fn to_pair(&self, row: &[(usize, Rational)], nvars: usize, n: u32, src: &str, tgt: &str) -> MorphismPair {
        let mut alpha = PolyMatrix::zeros(self.s, self.r, nvars);
        let mut beta = PolyMatrix::zeros(self.s, self.r, nvars);
        for (c, v) in row {
            let k = c / self.block();
            let rest = c % self.block();
            let which = rest / (self.s * self.r);
            let i = (rest / self.r) % self.s;
            let j = rest % self.r;
            let t = TruncatedSeries::monomial(nvars, self.monos[k].clone(), v.clone());
            let m = if which == 0 { &mut alpha } else { &mut beta };
            let e = m.get(i, j).add(&t);
            m.set(i, j, e);
        }
        MorphismPair { source: src.into(), target: tgt.into(), alpha, beta, precision: n }
    }
}

type Terms<F> = Vec<(Monomial, F)>;

fn entry_terms<F: Field>(m: &PolyMatrix) -> Result<Vec<Terms<F>>, HomalgError> {
    m.entries
        .iter()
        .map(|e| e.terms().map(|(mo, c)| F::from_rational(c).map(|v| (mo.clone(), v)).ok_or(HomalgError::Characteristic)).collect())
        .collect()
}

struct Mats<F> {
    r: usize,
    s: usize,
    a: Vec<Terms<F>>,
    b: Vec<Terms<F>>,
    c: Vec<Terms<F>>,
    d: Vec<Terms<F>>,
}

impl<F: Field> Mats<F> {
    fn new(m: &MatrixFactorization, n: &MatrixFactorization) -> Result<Self, HomalgError> {
        Ok(Mats {
            r: m.rank(),
            s: n.rank(),
            a: entry_terms(&m.a)?,
            b: entry_terms(&m.b)?,
            c: entry_terms(&n.a)?,
            d: entry_terms(&n.b)?,
        })
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Splits rows into groups with disjoint column support.
fn components<F: Field>(ncols: usize, rows: Vec<SparseRow<F>>) -> Vec<Vec<SparseRow<F>>> {
    let mut uf = UnionFind::new(ncols);
    for r in &rows {
        for w in r.windows(2) {
            uf.union(w[0].0, w[1].0);
        }
    }
    let mut groups: HashMap<usize, Vec<SparseRow<F>>> = HashMap::new();
    for r in rows {
        if let Some(&(c, _)) = r.first() {
            let root = uf.find(c);
            groups.entry(root).or_default().push(r);
        }
    }
    let mut keys: Vec<usize> = groups.keys().copied().collect();
    keys.sort_unstable();
    keys.into_iter().map(|k| groups.remove(&k).unwrap()).collect()
}

/// Result of the cycle computation at one precision.
struct Cycles<F> {
    layout: Layout,
    /// Constraints cutting out the truncated cycle space in low coordinates.
    low_rows: Vec<SparseRow<F>>,
    dim: usize,
}

/// Truncated cycle space `T_N`: projection to degree `< n` of the solutions of
/// the cycle equations modulo `m^{2n}`.
fn cycles<F: Field>(m: &MatrixFactorization, t: &MatrixFactorization, n: u32, want_rows: bool) -> Result<Cycles<F>, HomalgError> {
    let mats: Mats<F> = Mats::new(m, t)?;
    let nvars = m.nvars();
    let (r, s) = (mats.r, mats.s);
    let low = Layout::new(nvars, r, s, n);
    let solve_deg = 2 * n;
    let all = Layout::new(nvars, r, s, solve_deg);
    let n_low = low.dim();
    let n_high = all.dim() - n_low;
    // columns: high unknowns first, then low coordinates
    let col = |which: usize, i: usize, j: usize, k: usize| -> usize {
        if k < low.monos.len() {
            n_high + low.coord(which, i, j, k)
        } else {
            all.coord(which, i, j, k) - n_low
        }
    };
    let neq = 2 * s * r * all.monos.len();
    let eq = |e: usize, i: usize, j: usize, k: usize| ((e * s + i) * r + j) * all.monos.len() + k;
    let mut rows: Vec<Vec<(usize, F)>> = vec![Vec::new(); neq];
    let mut push = |mono: &Monomial, e: usize, i: usize, j: usize, cidx: usize, v: F| {
        if mono.degree() < solve_deg {
            let k = all.index[mono];
            rows[eq(e, i, j, k)].push((cidx, v));
        }
    };
    for (k, mu) in all.monos.iter().enumerate() {
        for p in 0..s {
            for q in 0..r {
                let ca = col(0, p, q, k);
                let cb = col(1, p, q, k);
                // alpha[p][q]: eq0 (p,j) += mu*A[q][j]; eq1 (i,q) -= D[i][p]*mu
                for j in 0..r {
                    for (nu, v) in &mats.a[q * r + j] {
                        push(&mu.mul(nu), 0, p, j, ca, v.clone());
                    }
                    for (nu, v) in &mats.b[q * r + j] {
                        push(&mu.mul(nu), 1, p, j, cb, v.clone());
                    }
                }
                for i in 0..s {
                    for (nu, v) in &mats.d[i * s + p] {
                        push(&mu.mul(nu), 1, i, q, ca, v.neg());
                    }
                    for (nu, v) in &mats.c[i * s + p] {
                        push(&mu.mul(nu), 0, i, q, cb, v.neg());
                    }
                }
            }
        }
    }
    let rows: Vec<SparseRow<F>> = rows.into_iter().map(normalize_row).filter(|r| !r.is_empty()).collect();
    let ncols = n_high + n_low;
    let mut low_pivots = 0;
    let mut low_rows = Vec::new();
    for group in components(ncols, rows) {
        let mut e = Echelon::new(ncols);
        for row in group {
            e.insert(row);
        }
        low_pivots += e.rank() - e.count_pivots_below(n_high);
        if want_rows {
            for row in e.rows_from(n_high) {
                low_rows.push(row.into_iter().map(|(c, v)| (c - n_high, v)).collect());
            }
        }
    }
    Ok(Cycles { layout: low, low_rows, dim: n_low - low_pivots })
}

/// Truncated image of the homotopy map in low coordinates. With `stable`
/// false only `H` is used (module homomorphisms).
fn boundaries<F: Field>(m: &MatrixFactorization, t: &MatrixFactorization, layout: &Layout, stable: bool) -> Result<Echelon<F>, HomalgError> {
    let mats: Mats<F> = Mats::new(m, t)?;
    let (r, s) = (mats.r, mats.s);
    let mut rows = Vec::new();
    for mu in &layout.monos {
        for p in 0..s {
            for q in 0..r {
                // H[p][q]: alpha(i,q) += C[i][p] mu ; beta(p,j) += mu A[q][j]
                let mut h = Vec::new();
                for i in 0..s {
                    for (nu, v) in &mats.c[i * s + p] {
                        if let Some(&k) = layout.index.get(&mu.mul(nu)) {
                            h.push((layout.coord(0, i, q, k), v.clone()));
                        }
                    }
                }
                for j in 0..r {
                    for (nu, v) in &mats.a[q * r + j] {
                        if let Some(&k) = layout.index.get(&mu.mul(nu)) {
                            h.push((layout.coord(1, p, j, k), v.clone()));
                        }
                    }
                }
                rows.push(normalize_row(h));
                if !stable {
                    continue;
                }
                // K[p][q]: alpha(p,j) += mu B[q][j] ; beta(i,q) += D[i][p] mu
                let mut kk = Vec::new();
                for j in 0..r {
                    for (nu, v) in &mats.b[q * r + j] {
                        if let Some(&k) = layout.index.get(&mu.mul(nu)) {
                            kk.push((layout.coord(0, p, j, k), v.clone()));
                        }
                    }
                }
                for i in 0..s {
                    for (nu, v) in &mats.d[i * s + p] {
                        if let Some(&k) = layout.index.get(&mu.mul(nu)) {
                            kk.push((layout.coord(1, i, q, k), v.clone()));
                        }
                    }
                }
                rows.push(normalize_row(kk));
            }
        }
    }
    let mut e = Echelon::new(layout.dim());
    for group in components(layout.dim(), rows.into_iter().filter(|r| !r.is_empty()).collect()) {
        for row in group {
            e.insert(row);
        }
    }
    Ok(e)
}

fn boundary_rank<F: Field>(m: &MatrixFactorization, t: &MatrixFactorization, layout: &Layout, stable: bool) -> Result<usize, HomalgError> {
    Ok(boundaries::<F>(m, t, layout, stable)?.rank())
}

fn check_pair(m: &MatrixFactorization, n: &MatrixFactorization) -> Result<(), HomalgError> {
    if m.f.truncate(64) != n.f.truncate(64) {
        return Err(HomalgError::EquationMismatch);
    }
    Ok(())
}

fn quotient_dim_in<F: Field>(m: &MatrixFactorization, n: &MatrixFactorization, prec: u32, stable: bool) -> Result<usize, HomalgError> {
    if m.rank() == 0 || n.rank() == 0 {
        return Ok(0);
    }
    let c = cycles::<F>(m, n, prec, false)?;
    let b = boundary_rank::<F>(m, n, &c.layout, stable)?;
    Ok(c.dim - b)
}

fn quotient_dim(m: &MatrixFactorization, n: &MatrixFactorization, prec: u32, stable: bool, field: FieldChoice) -> Result<usize, HomalgError> {
    match field {
        FieldChoice::Rational => quotient_dim_in::<Rational>(m, n, prec, stable),
        FieldChoice::Prime(p) => with_prime(p, || quotient_dim_in::<Fp>(m, n, prec, stable)),
    }
}

/// Dimension of the truncated module Hom, `Hom_R(coker A, coker C)` mod `m^prec`.
/// This is not a stable quantity: it grows with `prec`.
pub fn hom_dim_at(m: &MatrixFactorization, n: &MatrixFactorization, prec: u32, field: FieldChoice) -> Result<usize, HomalgError> {
    check_pair(m, n)?;
    quotient_dim(m, n, prec, false, field)
}

/// Stable Hom dimension at a single precision.
pub fn stable_hom_dim_at(m: &MatrixFactorization, n: &MatrixFactorization, prec: u32, field: FieldChoice) -> Result<usize, HomalgError> {
    check_pair(m, n)?;
    let (m, n) = (m.reduce().mf, n.reduce().mf);
    quotient_dim(&m, &n, prec, true, field)
}

fn ladder_run(
    kind: ExtKind,
    src: &MatrixFactorization,
    tgt: &MatrixFactorization,
    cfg: &HomalgConfig,
) -> Result<ExtReport, HomalgError> {
    check_pair(src, tgt)?;
    let (m, n) = (src.reduce().mf, tgt.reduce().mf);
    let mut ladder = Vec::new();
    let mut stabilized = false;
    for step in cfg.steps() {
        let d = quotient_dim(&m, &n, step, true, cfg.field)?;
        if let Some(&(_, prev)) = ladder.last() {
            if prev == d {
                ladder.push((step, d));
                stabilized = true;
                break;
            }
        }
        ladder.push((step, d));
        if m.rank() == 0 || n.rank() == 0 {
            // nothing to stabilize
            stabilized = true;
            break;
        }
    }
    if !stabilized {
        return Err(HomalgError::PrecisionCap { cap: cfg.cap, ladder });
    }
    let dimension = ladder.last().map(|e| e.1).unwrap_or(0);
    let (mut certified, mut bound) = (false, None);
    if cfg.certify && cfg.field == FieldChoice::Rational {
        let top = ladder.last().unwrap().0;
        if certify(&m, &n, top)? {
            certified = true;
            bound = Some(top);
        }
    }
    let note = if dimension == 0 { Some("zero module".to_string()) } else { None };
    Ok(ExtReport {
        kind,
        source: src.name.clone(),
        target: tgt.name.clone(),
        dimension,
        ladder,
        stabilized,
        certified,
        certification_bound: bound,
        field: cfg.field.to_string(),
        note,
    })
}

/// Stable Hom dimension with the precision ladder.
pub fn stable_hom_dim(m: &MatrixFactorization, n: &MatrixFactorization, cfg: &HomalgConfig) -> Result<ExtReport, HomalgError> {
    ladder_run(ExtKind::StableHom, m, n, cfg)
}

/// `dim Ext¹(M, N) = dim Hom(ΩM, N)` in the stable category.
pub fn ext1_dim(m: &MatrixFactorization, n: &MatrixFactorization, cfg: &HomalgConfig) -> Result<ExtReport, HomalgError> {
    let mut rep = ladder_run(ExtKind::Ext1, &m.shift(), n, cfg)?;
    rep.source = m.name.clone();
    Ok(rep)
}

pub fn is_rigid(m: &MatrixFactorization, cfg: &HomalgConfig) -> Result<bool, HomalgError> {
    Ok(ext1_dim(m, m, cfg)?.dimension == 0)
}

/// Pairwise Ext¹ dimensions.
pub fn ext_matrix(objects: &[MatrixFactorization], cfg: &HomalgConfig) -> Result<Vec<Vec<usize>>, HomalgError> {
    let mut out = vec![vec![0; objects.len()]; objects.len()];
    for (i, a) in objects.iter().enumerate() {
        for (j, b) in objects.iter().enumerate() {
            out[i][j] = ext1_dim(a, b, cfg)?.dimension;
        }
    }
    Ok(out)
}

/// Thread-safe memo of Ext¹ dimensions keyed by the rendered factorizations.
#[derive(Default)]
pub struct ExtCache {
    map: Mutex<HashMap<(String, String, String), usize>>,
}

impl ExtCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn ext1(&self, m: &MatrixFactorization, n: &MatrixFactorization, cfg: &HomalgConfig) -> Result<usize, HomalgError> {
        let key = (m.to_string(), n.to_string(), format!("{}:{}", cfg.field, cfg.cap));
        if let Some(&d) = self.map.lock().unwrap().get(&key) {
            return Ok(d);
        }
        let d = ext1_dim(m, n, cfg)?.dimension;
        self.map.lock().unwrap().insert(key, d);
        Ok(d)
    }

    pub fn len(&self) -> usize {
        self.map.lock().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Checks that both partials of `f` send every truncated cycle into the
/// homotopies, the annihilation that makes the stable Hom finite.
fn certify(m: &MatrixFactorization, n: &MatrixFactorization, prec: u32) -> Result<bool, HomalgError> {
    let c = cycles::<Rational>(m, n, prec, true)?;
    let b = boundaries::<Rational>(m, n, &c.layout, true)?;
    let mut cons = Echelon::new(c.layout.dim());
    for r in c.low_rows {
        cons.insert(r);
    }
    let basis = cons.kernel_basis();
    let nvars = m.nvars();
    for i in 0..nvars {
        let g = m.f.derivative(i);
        for v in &basis {
            let p = c.layout.to_pair(v, nvars, prec, &m.name, &n.name);
            let q = MorphismPair {
                alpha: p.alpha.mul_series(&g).truncate(prec),
                beta: p.beta.mul_series(&g).truncate(prec),
                ..p
            };
            let row = c.layout.to_row::<Rational>(&q).unwrap();
            if !b.contains(row) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Module homomorphisms `coker(A) -> coker(C)` truncated at `prec`: a basis of
/// representatives for the cycle space modulo `(CH, HA)`.
pub fn hom_space(m: &MatrixFactorization, n: &MatrixFactorization, prec: u32) -> Result<Vec<MorphismPair>, HomalgError> {
    check_pair(m, n)?;
    Ok(HomSpace::build(m, n, prec, false)?.basis)
}

/// A Hom space modulo homotopies, with coordinates.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub source: MatrixFactorization,
    pub target: MatrixFactorization,
    pub precision: u32,
    pub stable: bool,
    pub basis: Vec<MorphismPair>,
    layout: Layout,
    cycles: Echelon<Rational>,
    homotopies: Echelon<Rational>,
    reps: Vec<SparseRow<Rational>>,
}

impl HomSpace {
    /// Basis of (stable) Hom modulo homotopies at precision `prec`. The
    /// representatives are kernel vectors chosen lowest-degree first.
    pub fn build(m: &MatrixFactorization, n: &MatrixFactorization, prec: u32, stable: bool) -> Result<HomSpace, HomalgError> {
        check_pair(m, n)?;
        let c = cycles::<Rational>(m, n, prec, true)?;
        let layout = c.layout;
        let homotopies = boundaries::<Rational>(m, n, &layout, stable)?;
        let mut cons = Echelon::new(layout.dim());
        for r in c.low_rows {
            cons.insert(r);
        }
        let kernel = cons.kernel_basis();
        let mut span = homotopies.clone();
        let mut reps = Vec::new();
        for v in kernel {
            if span.insert(v.clone()) {
                reps.push(v);
            }
        }
        let nvars = m.nvars();
        let basis = reps.iter().map(|v| layout.to_pair(v, nvars, prec, &m.name, &n.name)).collect();
        Ok(HomSpace {
            source: m.clone(),
            target: n.clone(),
            precision: prec,
            stable,
            basis,
            layout,
            cycles: cons,
            homotopies,
            reps,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of a morphism in the chosen basis.
    pub fn coordinates(&self, p: &MorphismPair) -> Result<Vec<Rational>, HomalgError> {
        let mut q = p.clone();
        q.alpha = q.alpha.truncate(self.precision);
        q.beta = q.beta.truncate(self.precision);
        let row = self.layout.to_row::<Rational>(&q).ok_or(HomalgError::Characteristic)?;
        if !self.satisfies_cycles(&row) {
            return Err(HomalgError::NotAMorphism);
        }
        solve_modulo(self.layout.dim(), &self.reps, &self.homotopies, &row).ok_or(HomalgError::NotAMorphism)
    }

    fn satisfies_cycles(&self, row: &SparseRow<Rational>) -> bool {
        self.cycles.rows().all(|(_, c)| {
            let mut acc = Rational::from_integer(0.into());
            let (mut i, mut j) = (0, 0);
            while i < c.len() && j < row.len() {
                match c[i].0.cmp(&row[j].0) {
                    std::cmp::Ordering::Less => i += 1,
                    std::cmp::Ordering::Greater => j += 1,
                    std::cmp::Ordering::Equal => {
                        acc += &c[i].1 * &row[j].1;
                        i += 1;
                        j += 1;
                    }
                }
            }
            num_traits::Zero::is_zero(&acc)
        })
    }

    /// True if the morphism is homotopic to zero (at this precision).
    pub fn is_zero(&self, p: &MorphismPair) -> Result<bool, HomalgError> {
        Ok(self.coordinates(p)?.iter().all(num_traits::Zero::is_zero))
    }

    /// The morphism with the given coordinates.
    pub fn element(&self, coords: &[Rational]) -> MorphismPair {
        let mut out = MorphismPair {
            source: self.source.name.clone(),
            target: self.target.name.clone(),
            alpha: PolyMatrix::zeros(self.target.rank(), self.source.rank(), self.source.nvars()),
            beta: PolyMatrix::zeros(self.target.rank(), self.source.rank(), self.source.nvars()),
            precision: self.precision,
        };
        for (c, b) in coords.iter().zip(&self.basis) {
            if !num_traits::Zero::is_zero(c) {
                out = out.add(&b.scale(c));
            }
        }
        out
    }
}

/// Constant-term matrix of a series matrix.
fn constant_part(m: &PolyMatrix) -> Vec<Vec<Rational>> {
    (0..m.rows).map(|i| (0..m.cols).map(|j| m.get(i, j).constant_term()).collect()).collect()
}

fn fingerprint(m: &MatrixFactorization, n: &MatrixFactorization, cfg: &HomalgConfig) -> Result<[usize; 5], HomalgError> {
    Ok([
        m.rank(),
        stable_hom_dim(m, m, cfg)?.dimension,
        stable_hom_dim(m, n, cfg)?.dimension,
        stable_hom_dim(n, m, cfg)?.dimension,
        stable_hom_dim(n, n, cfg)?.dimension,
    ])
}

/// Decides `coker(A) ≅ coker(C)` for reduced factorizations: Hom-dimension
/// fingerprints for fast negatives, then a search for a morphism whose
/// constant parts are invertible.
pub fn is_isomorphic(m: &MatrixFactorization, n: &MatrixFactorization, cfg: &HomalgConfig) -> Result<bool, HomalgError> {
    check_pair(m, n)?;
    let (m, n) = (m.reduce().mf, n.reduce().mf);
    if m.rank() != n.rank() {
        return Ok(false);
    }
    if m.rank() == 0 {
        return Ok(true);
    }
    if m.a == n.a && m.b == n.b {
        return Ok(true);
    }
    let fp = fingerprint(&m, &n, cfg)?;
    if fp[1] != fp[4] || fp[2] != fp[1] || fp[3] != fp[1] {
        return Ok(false);
    }
    let hs = HomSpace::build(&m, &n, 8, false)?;
    let consts: Vec<(Vec<Vec<Rational>>, Vec<Vec<Rational>>)> =
        hs.basis.iter().map(|p| (constant_part(&p.alpha), constant_part(&p.beta))).collect();
    let r = m.rank();
    let k = consts.len();
    if k == 0 {
        return Ok(false);
    }
    // det of the generic combination is a polynomial of degree <= 2r in the
    // coefficients; points on the moment curve avoid its zero set
    for t in 1..=(2 * r * k + 2) as i64 {
        let mut a = vec![vec![Rational::from_integer(0.into()); r]; r];
        let mut b = a.clone();
        let mut w = Rational::from_integer(1.into());
        for (ca, cb) in &consts {
            for i in 0..r {
                for j in 0..r {
                    a[i][j] += &w * &ca[i][j];
                    b[i][j] += &w * &cb[i][j];
                }
            }
            w *= Rational::from_integer(t.into());
        }
        let da = crate::linalg::determinant(&a);
        let db = crate::linalg::determinant(&b);
        if !num_traits::Zero::is_zero(&da) && !num_traits::Zero::is_zero(&db) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Truncated cycle-space dimension, exposed for tests of the projection.
pub fn cycle_dim(m: &MatrixFactorization, n: &MatrixFactorization, prec: u32) -> Result<usize, HomalgError> {
    Ok(cycles::<Rational>(m, n, prec, false)?.dim)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matfac::{catalog, mf_partial_product, mf_subset, CatalogParams};
    use crate::scalar::rat;
    use crate::series::xy;

    fn cfg() -> HomalgConfig {
        HomalgConfig::default()
    }

    #[test]
    fn module_hom_of_cyclic() {
        let f = vec![xy("x"), xy("x - y")];
        let s1 = mf_partial_product(&f, 1).unwrap();
        assert_eq!(hom_dim_at(&s1, &s1, 6, FieldChoice::Rational).unwrap(), 6);
        let basis = hom_space(&s1, &s1, 6).unwrap();
        assert_eq!(basis.len(), 6);
        let ids = HomSpace::build(&s1, &s1, 6, false).unwrap();
        let id = MorphismPair::identity(&s1, 6);
        assert!(!ids.is_zero(&id).unwrap());
    }

    #[test]
    fn t36_stable_hom() {
        let e = catalog("T36", &CatalogParams { lambda: Some(rat(2)), ..Default::default() }).unwrap();
        let (m, n) = (&e.objects[0], &e.objects[1]);
        assert_eq!(stable_hom_dim(m, n, &cfg()).unwrap().dimension, 2);
        assert_eq!(stable_hom_dim(m, m, &cfg()).unwrap().dimension, 4);
        let hs = HomSpace::build(m, n, 16, true).unwrap();
        assert_eq!(hs.dim(), 2);
        let u = MorphismPair::scalar_xy(m, n, "1", "y", 16);
        let v = MorphismPair::scalar_xy(m, n, "x", "x*y", 16);
        assert!(u.is_cycle(m, n));
        let cu = hs.coordinates(&u).unwrap();
        let cv = hs.coordinates(&v).unwrap();
        let det = &cu[0] * &cv[1] - &cu[1] * &cv[0];
        assert!(!num_traits::Zero::is_zero(&det));
    }

    #[test]
    fn free_is_stably_zero() {
        let f = vec![xy("x"), xy("x - y")];
        let free = mf_partial_product(&f, 2).unwrap();
        let s1 = mf_partial_product(&f, 1).unwrap();
        assert_eq!(stable_hom_dim(&free, &s1, &cfg()).unwrap().dimension, 0);
        assert!(is_rigid(&free, &cfg()).unwrap());
    }

    #[test]
    fn e7_small_values() {
        let e = catalog("E7", &CatalogParams::default()).unwrap();
        let (a, c) = (&e.objects[0], &e.objects[1]);
        let r = ext1_dim(a, a, &cfg()).unwrap();
        assert_eq!(r.dimension, 0);
        assert!(r.stabilized);
        assert_eq!(r.note.as_deref(), Some("zero module"));
        assert_eq!(ext1_dim(c, c, &cfg()).unwrap().dimension, 2);
        assert_eq!(ext1_dim(a, c, &cfg()).unwrap().dimension, 0);
    }

    #[test]
    fn rigid_subsets_three_lines() {
        let f: Vec<_> = ["x", "x - y", "x - 2*y"].iter().map(|s| xy(s)).collect();
        for subset in [vec![0], vec![1], vec![2], vec![0, 1], vec![0, 2], vec![1, 2], vec![0, 1, 2]] {
            let s = mf_subset(&f, &subset);
            assert!(is_rigid(&s, &cfg()).unwrap(), "{}", s.name);
        }
    }

    #[test]
    fn gf_p_agrees() {
        let e = catalog("E7", &CatalogParams::default()).unwrap();
        let c = &e.objects[1];
        let g = HomalgConfig { field: FieldChoice::Prime(32003), ..cfg() };
        assert_eq!(ext1_dim(c, c, &g).unwrap().dimension, 2);
    }

    #[test]
    fn isomorphism_checks() {
        let f: Vec<_> = ["x", "x - y", "x - 2*y"].iter().map(|s| xy(s)).collect();
        let s1 = mf_subset(&f, &[0]);
        let s2 = mf_subset(&f, &[1]);
        assert!(is_isomorphic(&s1, &s1.shift().shift(), &cfg()).unwrap());
        assert!(!is_isomorphic(&s1, &s2, &cfg()).unwrap());
        // a unit multiple is isomorphic
        let s1u = MatrixFactorization::rank_one("u", xy("2*x"), f[1].mul(&f[2]).scale(&crate::scalar::rat_frac(1, 2)));
        assert!(is_isomorphic(&s1, &s1u, &cfg()).unwrap());
    }

    #[test]
    fn certification_on_c() {
        let e = catalog("E7", &CatalogParams::default()).unwrap();
        let c = &e.objects[1];
        let g = HomalgConfig { certify: true, ..cfg() };
        let r = ext1_dim(c, c, &g).unwrap();
        assert!(r.certified);
        assert!(r.certification_bound.is_some());
    }
}
