//! Matrix factorizations `(A, B)` with `AB = BA = f*I`, representing the
//! Cohen-Macaulay module `coker(A)` over `R = S/(f)`.

use crate::scalar::{rat, Rational};
use crate::series::{default_vars, xy, Precision, TruncatedSeries};
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MatfacError {
    #[error("{which} fails at entry ({row},{col}): got {got}, expected {want}")]
    Identity { which: &'static str, row: usize, col: usize, got: String, want: String },
    #[error("matrix shapes do not match")]
    Shape,
    #[error("equations differ")]
    EquationMismatch,
    #[error("index {0} out of range 1..={1}")]
    IndexRange(usize, usize),
    #[error("unknown catalog `{0}`")]
    UnknownCatalog(String),
    #[error("parameter error: {0}")]
    Parameter(String),
}

/// Dense matrix of series.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct PolyMatrix {
    pub rows: usize,
    pub cols: usize,
    pub nvars: usize,
    pub entries: Vec<TruncatedSeries>,
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize, nvars: usize) -> Self {
        PolyMatrix { rows, cols, nvars, entries: vec![TruncatedSeries::zero(nvars); rows * cols] }
    }

    pub fn scalar(n: usize, s: &TruncatedSeries) -> Self {
        let mut m = PolyMatrix::zeros(n, n, s.nvars());
        for i in 0..n {
            m.set(i, i, s.clone());
        }
        m
    }

    pub fn identity(n: usize, nvars: usize) -> Self {
        Self::scalar(n, &TruncatedSeries::one(nvars))
    }

    pub fn from_rows(rows: Vec<Vec<TruncatedSeries>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        let nvars = rows.first().and_then(|x| x.first()).map(|s| s.nvars()).unwrap_or(2);
        PolyMatrix { rows: r, cols: c, nvars, entries: rows.into_iter().flatten().collect() }
    }

    /// Builds from polynomial strings in `x, y`.
    pub fn parse_xy(rows: &[&[&str]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|s| xy(s)).collect()).collect())
    }

    pub fn get(&self, i: usize, j: usize) -> &TruncatedSeries {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: TruncatedSeries) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn mul(&self, o: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.cols, o.rows, "shape mismatch");
        let mut out = PolyMatrix::zeros(self.rows, o.cols, self.nvars);
        for i in 0..self.rows {
            for j in 0..o.cols {
                let mut acc = TruncatedSeries::zero(self.nvars);
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    let b = o.get(k, j);
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    acc = acc.add(&a.mul(b));
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn add(&self, o: &PolyMatrix) -> PolyMatrix {
        let mut out = self.clone();
        for (e, f) in out.entries.iter_mut().zip(&o.entries) {
            *e = e.add(f);
        }
        out
    }

    pub fn sub(&self, o: &PolyMatrix) -> PolyMatrix {
        self.add(&o.scale(&rat(-1)))
    }

    pub fn scale(&self, c: &Rational) -> PolyMatrix {
        PolyMatrix { entries: self.entries.iter().map(|e| e.scale(c)).collect(), ..self.clone() }
    }

    pub fn mul_series(&self, s: &TruncatedSeries) -> PolyMatrix {
        PolyMatrix { entries: self.entries.iter().map(|e| e.mul(s)).collect(), ..self.clone() }
    }

    pub fn truncate(&self, n: u32) -> PolyMatrix {
        PolyMatrix { entries: self.entries.iter().map(|e| e.truncate(n)).collect(), ..self.clone() }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    /// Block diagonal sum.
    pub fn block_diag(&self, o: &PolyMatrix) -> PolyMatrix {
        let mut m = PolyMatrix::zeros(self.rows + o.rows, self.cols + o.cols, self.nvars);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..o.rows {
            for j in 0..o.cols {
                m.set(self.rows + i, self.cols + j, o.get(i, j).clone());
            }
        }
        m
    }

    /// Determinant by cofactor expansion (small sizes only).
    pub fn det(&self) -> TruncatedSeries {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return TruncatedSeries::one(self.nvars);
        }
        if n == 1 {
            return self.get(0, 0).clone();
        }
        let mut acc = TruncatedSeries::zero(self.nvars);
        for j in 0..n {
            let e = self.get(0, j);
            if e.is_zero() {
                continue;
            }
            let minor = self.minor(0, j);
            let t = e.mul(&minor.det());
            acc = if j % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
        }
        acc
    }

    fn minor(&self, r: usize, c: usize) -> PolyMatrix {
        let mut rows = Vec::new();
        for i in 0..self.rows {
            if i == r {
                continue;
            }
            let mut row = Vec::new();
            for j in 0..self.cols {
                if j != c {
                    row.push(self.get(i, j).clone());
                }
            }
            rows.push(row);
        }
        let mut m = PolyMatrix::from_rows(rows);
        m.nvars = self.nvars;
        m
    }

    /// Largest total degree among the entries.
    pub fn max_degree(&self) -> u32 {
        self.entries.iter().filter_map(|e| e.degree()).max().unwrap_or(0)
    }

    pub fn precision(&self) -> Precision {
        self.entries.iter().fold(Precision::Exact, |p, e| p.min(e.precision()))
    }

    pub fn render(&self) -> String {
        let vars = default_vars(self.nvars);
        let rows: Vec<String> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).to_string_with(&vars)).collect::<Vec<_>>().join(", "))
            .collect();
        format!("[{}]", rows.join("; "))
    }

    /// Entries as strings, row-major, for JSON output.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        let vars = default_vars(self.nvars);
        (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j).to_string_with(&vars)).collect()).collect()
    }

    fn remove_row_col(&self, r: usize, c: usize) -> PolyMatrix {
        let mut m = self.minor(r, c);
        if m.rows == 0 {
            m.cols = 0;
        }
        m
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

/// A matrix factorization of `f`.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct MatrixFactorization {
    pub name: String,
    pub f: TruncatedSeries,
    pub a: PolyMatrix,
    pub b: PolyMatrix,
    /// Where the presentation comes from (free text).
    #[serde(default)]
    pub provenance: String,
}

/// What [`MatrixFactorization::reduce`] split off.
#[derive(Clone, Debug, PartialEq)]
pub struct Reduced {
    pub mf: MatrixFactorization,
    pub free_rank: usize,
    pub zero_blocks: usize,
}

impl MatrixFactorization {
    pub fn new(name: impl Into<String>, f: TruncatedSeries, a: PolyMatrix, b: PolyMatrix) -> Self {
        MatrixFactorization { name: name.into(), f, a, b, provenance: String::new() }
    }

    pub fn with_provenance(mut self, p: impl Into<String>) -> Self {
        self.provenance = p.into();
        self
    }

    /// 1x1 factorization `(a, b)` of `a*b`.
    pub fn rank_one(name: impl Into<String>, a: TruncatedSeries, b: TruncatedSeries) -> Self {
        let f = a.mul(&b);
        MatrixFactorization::new(name, f, PolyMatrix::from_rows(vec![vec![a]]), PolyMatrix::from_rows(vec![vec![b]]))
    }

    pub fn rank(&self) -> usize {
        self.a.rows
    }

    pub fn nvars(&self) -> usize {
        self.f.nvars()
    }

    /// Checks `AB = BA = f*I`.
    pub fn validate(&self) -> Result<(), MatfacError> {
        let r = self.a.rows;
        if self.a.cols != r || self.b.rows != r || self.b.cols != r {
            return Err(MatfacError::Shape);
        }
        let prec = self.a.precision().min(self.b.precision()).min(self.f.precision());
        for (which, prod) in [("A*B", self.a.mul(&self.b)), ("B*A", self.b.mul(&self.a))] {
            for i in 0..r {
                for j in 0..r {
                    let want = if i == j { self.f.clone() } else { TruncatedSeries::zero(self.nvars()) };
                    let (got, want) = match prec {
                        Precision::Exact => (prod.get(i, j).clone(), want),
                        Precision::Trunc(n) => (prod.get(i, j).truncate(n), want.truncate(n)),
                    };
                    if got != want {
                        let vars = default_vars(self.nvars());
                        return Err(MatfacError::Identity {
                            which,
                            row: i,
                            col: j,
                            got: got.to_string_with(&vars),
                            want: want.to_string_with(&vars),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// `(B, A)`: the syzygy, equal to the shift in the stable category.
    pub fn shift(&self) -> Self {
        MatrixFactorization {
            name: format!("Ω({})", self.name),
            f: self.f.clone(),
            a: self.b.clone(),
            b: self.a.clone(),
            provenance: self.provenance.clone(),
        }
    }

    pub fn direct_sum(&self, o: &Self) -> Result<Self, MatfacError> {
        if self.f != o.f {
            return Err(MatfacError::EquationMismatch);
        }
        Ok(MatrixFactorization {
            name: format!("{}⊕{}", self.name, o.name),
            f: self.f.clone(),
            a: self.a.block_diag(&o.a),
            b: self.b.block_diag(&o.b),
            provenance: String::new(),
        })
    }

    /// True for `(f, 1)` up to units: a free module of rank one.
    pub fn is_free(&self) -> bool {
        let r = self.reduce();
        r.mf.rank() == 0 && r.free_rank > 0
    }

    /// Splits off unit-pivot blocks. `(unit, f/unit)` blocks are zero modules and
    /// are discarded; `(f/unit, unit)` blocks are free summands and are counted.
    pub fn reduce(&self) -> Reduced {
        let mut a = self.a.clone();
        let mut b = self.b.clone();
        let mut free_rank = 0;
        let mut zero_blocks = 0;
        loop {
            if let Some((i, j)) = find_unit(&a) {
                eliminate(&mut a, &mut b, i, j);
                a = a.remove_row_col(i, j);
                b = b.remove_row_col(j, i);
                zero_blocks += 1;
            } else if let Some((i, j)) = find_unit(&b) {
                eliminate(&mut b, &mut a, i, j);
                b = b.remove_row_col(i, j);
                a = a.remove_row_col(j, i);
                free_rank += 1;
            } else {
                break;
            }
        }
        let name = if free_rank + zero_blocks == 0 { self.name.clone() } else { format!("red({})", self.name) };
        Reduced {
            mf: MatrixFactorization { name, f: self.f.clone(), a, b, provenance: self.provenance.clone() },
            free_rank,
            zero_blocks,
        }
    }

    /// `det(A) * det(B)`.
    pub fn det_product(&self) -> TruncatedSeries {
        self.a.det().mul(&self.b.det())
    }

    /// Largest entry degree, a bound used to size truncations.
    pub fn max_degree(&self) -> u32 {
        self.a.max_degree().max(self.b.max_degree())
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }
}

impl fmt::Display for MatrixFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: A = {}, B = {}", self.name, self.a, self.b)
    }
}

fn find_unit(m: &PolyMatrix) -> Option<(usize, usize)> {
    // constant pivots first, they keep everything polynomial
    let mut fallback = None;
    for i in 0..m.rows {
        for j in 0..m.cols {
            let e = m.get(i, j);
            let c = e.constant_term();
            if !c.is_zero() {
                if e.num_terms() == 1 {
                    return Some((i, j));
                }
                fallback.get_or_insert((i, j));
            }
        }
    }
    fallback
}

/// Clears row `i` and column `j` of `p` (pivot `p[i][j]` a unit) with
/// elementary operations, applying the inverse operations to the partner `q`
/// so that `p*q` and `q*p` are preserved.
fn eliminate(p: &mut PolyMatrix, q: &mut PolyMatrix, i: usize, j: usize) {
    let u = p.get(i, j).clone();
    let uinv = if u.num_terms() == 1 {
        TruncatedSeries::constant(u.nvars(), u.constant_term().recip())
    } else {
        // a non-constant unit pivot forces power-series arithmetic
        u.invert_unit(64).expect("unit")
    };
    let n = p.rows;
    for k in 0..n {
        if k == j {
            continue;
        }
        let c = p.get(i, k).mul(&uinv);
        if c.is_zero() {
            continue;
        }
        // P <- P * (I - c e_j e_k^T): col_k -= c col_j
        for r in 0..n {
            let v = p.get(r, k).sub(&c.mul(p.get(r, j)));
            p.set(r, k, v);
        }
        // Q <- (I + c e_j e_k^T) Q: row_j += c row_k
        for s in 0..n {
            let v = q.get(j, s).add(&c.mul(q.get(k, s)));
            q.set(j, s, v);
        }
    }
    for k in 0..n {
        if k == i {
            continue;
        }
        let c = p.get(k, j).mul(&uinv);
        if c.is_zero() {
            continue;
        }
        // P <- (I - c e_k e_i^T) P: row_k -= c row_i
        for s in 0..n {
            let v = p.get(k, s).sub(&c.mul(p.get(i, s)));
            p.set(k, s, v);
        }
        // Q <- Q (I + c e_k e_i^T): col_i += c col_k
        for r in 0..n {
            let v = q.get(r, i).add(&c.mul(q.get(r, k)));
            q.set(r, i, v);
        }
    }
}

/// 1x1 factorization `(f_1...f_i, f_{i+1}...f_n)`: the module `S/(f_1...f_i)`.
pub fn mf_partial_product(factors: &[TruncatedSeries], i: usize) -> Result<MatrixFactorization, MatfacError> {
    let n = factors.len();
    if i == 0 || i > n {
        return Err(MatfacError::IndexRange(i, n));
    }
    let nv = factors[0].nvars();
    let a = factors[..i].iter().fold(TruncatedSeries::one(nv), |acc, g| acc.mul(g));
    let b = factors[i..].iter().fold(TruncatedSeries::one(nv), |acc, g| acc.mul(g));
    Ok(MatrixFactorization::rank_one(format!("S_{i}"), a, b))
}

/// 1x1 factorization for `S_I = S/(prod_{i in I} f_i)` (indices 0-based).
pub fn mf_subset(factors: &[TruncatedSeries], subset: &[usize]) -> MatrixFactorization {
    let nv = factors[0].nvars();
    let mut a = TruncatedSeries::one(nv);
    let mut b = TruncatedSeries::one(nv);
    for (k, g) in factors.iter().enumerate() {
        if subset.contains(&k) {
            a = a.mul(g);
        } else {
            b = b.mul(g);
        }
    }
    let label: Vec<String> = subset.iter().map(|k| (k + 1).to_string()).collect();
    MatrixFactorization::rank_one(format!("S_{{{}}}", label.join(",")), a, b)
}

/// The 2x2 lift of `S/(a)` to `f + u*v` over `k[[x,y,u,v]]`:
/// `A = (u a; b -v)`, `B = (v a; b -u)` where `a = f_{w(1)}...f_{w(i)}`.
pub fn knoerrer_lift(factors: &[TruncatedSeries], w: &[usize], i: usize) -> MatrixFactorization {
    let n = factors.len();
    let a2 = w[..i].iter().fold(TruncatedSeries::one(2), |acc, &k| acc.mul(&factors[k]));
    let b2 = w[i..n].iter().fold(TruncatedSeries::one(2), |acc, &k| acc.mul(&factors[k]));
    let a = a2.extend_vars(4);
    let b = b2.extend_vars(4);
    let u = TruncatedSeries::var(4, 2);
    let v = TruncatedSeries::var(4, 3);
    let f = a2.mul(&b2).extend_vars(4).add(&u.mul(&v));
    let am = PolyMatrix::from_rows(vec![vec![u.clone(), a.clone()], vec![b.clone(), v.neg()]]);
    let bm = PolyMatrix::from_rows(vec![vec![v, a], vec![b, u.neg()]]);
    MatrixFactorization::new(format!("Kn(S^w_{i})"), f, am, bm)
}

/// Names accepted by [`catalog`].
pub const CATALOG_NAMES: &[&str] = &["A_odd", "D_even_split", "E7", "T36", "T3_2q2", "T44", "T2p2_2q2", "linear_forms"];

/// Parameters for [`catalog`].
#[derive(Clone, Debug, Default)]
pub struct CatalogParams {
    pub n: Option<u32>,
    pub p: Option<u32>,
    pub q: Option<u32>,
    pub lambda: Option<Rational>,
    pub lambdas: Vec<Rational>,
}

/// A named family of factorizations together with its factor list, if any.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub equation: TruncatedSeries,
    pub factors: Vec<TruncatedSeries>,
    pub objects: Vec<MatrixFactorization>,
    pub provenance: String,
}

fn lin(c: &Rational) -> TruncatedSeries {
    // x - c*y
    xy("x").sub(&xy("y").scale(c))
}

fn check_lambda(l: &Rational) -> Result<(), MatfacError> {
    if l.is_zero() || *l == rat(1) {
        return Err(MatfacError::Parameter("lambda must avoid 0 and 1".into()));
    }
    Ok(())
}

/// The factorizations printed in the source material.
pub fn catalog(name: &str, params: &CatalogParams) -> Result<CatalogEntry, MatfacError> {
    let e = match name {
        "A_odd" => {
            let n = params.n.unwrap_or(5);
            if n % 2 == 0 || n < 1 {
                return Err(MatfacError::Parameter("A_odd needs odd n".into()));
            }
            let k = (n + 1) / 2;
            let f1 = xy(&format!("x - y^{k}"));
            let f2 = xy(&format!("x + y^{k}"));
            let factors = vec![f1, f2];
            let s1 = mf_partial_product(&factors, 1)?.renamed("N+");
            let s2 = s1.shift().renamed("N-");
            CatalogEntry {
                name: format!("A_{n}"),
                equation: factors[0].mul(&factors[1]),
                objects: vec![s1, s2],
                factors,
                provenance: "split form (x-y^k)(x+y^k)".into(),
            }
        }
        "D_even_split" => {
            let n = params.n.unwrap_or(1);
            if n < 1 {
                return Err(MatfacError::Parameter("D_even_split needs n >= 1".into()));
            }
            let factors = vec![xy("y"), xy(&format!("x - y^{n}")), xy(&format!("x + y^{n}"))];
            let f = factors.iter().fold(TruncatedSeries::one(2), |a, g| a.mul(g));
            let mut objects = Vec::new();
            for subset in [vec![0], vec![1], vec![2], vec![0, 1], vec![0, 2], vec![1, 2]] {
                objects.push(mf_subset(&factors, &subset));
            }
            CatalogEntry {
                name: format!("D_{}", 2 * n + 2),
                equation: f,
                factors,
                objects,
                provenance: "split form y(x-y^n)(x+y^n)".into(),
            }
        }
        "E7" => {
            let f = xy("x^3 + x*y^3");
            let a = MatrixFactorization::rank_one("A", xy("x"), xy("x^2 + y^3"));
            let c = MatrixFactorization::new(
                "C",
                f.clone(),
                PolyMatrix::parse_xy(&[&["x^2", "x*y"], &["x*y^2", "-x^2"]]),
                PolyMatrix::parse_xy(&[&["x", "y"], &["y^2", "-x"]]),
            );
            let m1 = MatrixFactorization::new(
                "M1",
                f.clone(),
                PolyMatrix::parse_xy(&[&["x", "y"], &["x*y^2", "-x^2"]]),
                PolyMatrix::parse_xy(&[&["x^2", "y"], &["x*y^2", "-x"]]),
            );
            CatalogEntry {
                name: "E7".into(),
                equation: f,
                factors: vec![xy("x"), xy("x^2 + y^3")],
                objects: vec![a, c, m1],
                provenance: "E7 presentations of A, C, M1".into(),
            }
        }
        "T36" => {
            let l = params.lambda.clone().unwrap_or_else(|| rat(2));
            check_lambda(&l)?;
            let factors = vec![xy("y"), xy("y - x^2"), xy("y - x^2").sub(&xy("x^2").scale(&(&l - rat(1))))];
            let f = factors.iter().fold(TruncatedSeries::one(2), |a, g| a.mul(g));
            // M = (y - x^2, y(y - l x^2)), N = (y(y - x^2), y - l x^2)
            let m = MatrixFactorization::rank_one("M", factors[1].clone(), factors[0].mul(&factors[2]));
            let nn = MatrixFactorization::rank_one("N", factors[0].mul(&factors[1]), factors[2].clone());
            CatalogEntry { name: "T36".into(), equation: f, factors, objects: vec![m, nn], provenance: "T_{3,6}(lambda)".into() }
        }
        "T3_2q2" => {
            let q = params.q.unwrap_or(3);
            if q < 3 {
                return Err(MatfacError::Parameter("T3_2q2 needs q >= 3".into()));
            }
            let factors = vec![xy("x - y^2"), xy(&format!("x - y^{q}")), xy(&format!("x + y^{q}"))];
            let f = factors.iter().fold(TruncatedSeries::one(2), |a, g| a.mul(g));
            // M = (x - y^2, x^2 - y^{2q}), N = ((x - y^2)(x + y^q), x - y^q)
            let m = MatrixFactorization::rank_one("M", factors[0].clone(), factors[1].mul(&factors[2]));
            let nn = MatrixFactorization::rank_one("N", factors[0].mul(&factors[2]), factors[1].clone());
            CatalogEntry {
                name: format!("T_3,{}", 2 * q + 2),
                equation: f,
                factors,
                objects: vec![m, nn],
                provenance: "T_{3,2q+2}".into(),
            }
        }
        "T44" => {
            let l = params.lambda.clone().unwrap_or_else(|| rat(2));
            check_lambda(&l)?;
            let factors = vec![xy("x"), xy("y"), xy("x - y"), lin(&l)];
            let f = factors.iter().fold(TruncatedSeries::one(2), |a, g| a.mul(g));
            let (x, y, xmy, xml) = (&factors[0], &factors[1], &factors[2], &factors[3]);
            // M = (x - y, xy(x - l y)), N = (x(x - y), y(x - l y)), K = (xy(x - y), x - l y)
            let m = MatrixFactorization::rank_one("M", xmy.clone(), x.mul(y).mul(xml));
            let nn = MatrixFactorization::rank_one("N", x.mul(xmy), y.mul(xml));
            let k = MatrixFactorization::rank_one("K", x.mul(y).mul(xmy), xml.clone());
            CatalogEntry { name: "T44".into(), equation: f, factors, objects: vec![m, nn, k], provenance: "T_{4,4}(lambda)".into() }
        }
        "T2p2_2q2" => {
            let p = params.p.unwrap_or(1);
            let q = params.q.unwrap_or(2);
            if p < 1 || q < 1 || (p, q) == (1, 1) {
                return Err(MatfacError::Parameter("T2p2_2q2 needs p,q >= 1 and (p,q) != (1,1)".into()));
            }
            let g1 = xy(&format!("x^{p} - y"));
            let g2 = xy(&format!("x^{p} + y"));
            let g3 = xy(&format!("y^{q} - x"));
            let g4 = xy(&format!("y^{q} + x"));
            let f = g1.mul(&g2).mul(&g3).mul(&g4);
            let m = MatrixFactorization::rank_one("M", g1.clone(), g4.mul(&g3).mul(&g2));
            let nn = MatrixFactorization::rank_one("N", g1.mul(&g2), g3.mul(&g4));
            let k = MatrixFactorization::rank_one("K", g1.mul(&g2).mul(&g4), g3.clone());
            CatalogEntry {
                name: format!("T_{},{}", 2 * p + 2, 2 * q + 2),
                equation: f,
                factors: vec![g1, g2, g4, g3],
                objects: vec![m, nn, k],
                provenance: "T_{2p+2,2q+2}".into(),
            }
        }
        "linear_forms" => {
            let ls = if params.lambdas.is_empty() { vec![rat(0), rat(1), rat(2)] } else { params.lambdas.clone() };
            for (i, a) in ls.iter().enumerate() {
                if ls[..i].contains(a) {
                    return Err(MatfacError::Parameter("lambdas must be distinct".into()));
                }
            }
            let factors: Vec<TruncatedSeries> = ls.iter().map(lin).collect();
            let f = factors.iter().fold(TruncatedSeries::one(2), |a, g| a.mul(g));
            let objects = (1..=factors.len()).map(|i| mf_partial_product(&factors, i).unwrap()).collect();
            CatalogEntry { name: format!("lines_{}", ls.len()), equation: f, factors, objects, provenance: "distinct lines".into() }
        }
        other => return Err(MatfacError::UnknownCatalog(other.to_string())),
    };
    for o in &e.objects {
        o.validate()?;
    }
    Ok(e)
}

/// `M_w`-style chain: the partial products `S^w_1, ..., S^w_n` for a permutation
/// `w` (0-based images).
pub fn chain_for(factors: &[TruncatedSeries], w: &[usize]) -> Vec<MatrixFactorization> {
    let perm: Vec<TruncatedSeries> = w.iter().map(|&k| factors[k].clone()).collect();
    (1..=perm.len())
        .map(|i| {
            let mut m = mf_partial_product(&perm, i).unwrap();
            let mut idx = w[..i].to_vec();
            idx.sort_unstable();
            let label: Vec<String> = idx.iter().map(|k| (k + 1).to_string()).collect();
            m.name = format!("S_{{{}}}", label.join(","));
            m
        })
        .collect()
}

/// Convenience: is the series a unit?
pub fn is_unit(s: &TruncatedSeries) -> bool {
    !s.constant_term().is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lines(n: usize) -> Vec<TruncatedSeries> {
        (0..n).map(|i| lin(&rat(i as i64))).collect()
    }

    #[test]
    fn validate_examples() {
        let f = lines(3);
        let m = mf_partial_product(&f, 1).unwrap();
        assert!(m.validate().is_ok());
        assert!(MatrixFactorization::rank_one("xy", xy("x"), xy("y")).validate().is_ok());
        let bad = MatrixFactorization::new(
            "bad",
            xy("x*y"),
            PolyMatrix::parse_xy(&[&["x"]]),
            PolyMatrix::parse_xy(&[&["x"]]),
        );
        assert!(matches!(bad.validate(), Err(MatfacError::Identity { .. })));
    }

    #[test]
    fn partial_products() {
        let a5 = vec![xy("x - y^3"), xy("x + y^3")];
        let m = mf_partial_product(&a5, 1).unwrap();
        assert_eq!(m.a.get(0, 0), &xy("x - y^3"));
        assert_eq!(m.b.get(0, 0), &xy("x + y^3"));
        let free = mf_partial_product(&a5, 2).unwrap();
        assert!(free.is_free());
        let t = vec![xy("y"), xy("y - x^2"), xy("y - 2*x^2")];
        let m2 = mf_partial_product(&t, 2).unwrap();
        assert_eq!(m2.a.get(0, 0), &xy("y*(y - x^2)"));
        assert!(mf_partial_product(&t, 4).is_err());
    }

    #[test]
    fn shift_and_sum() {
        let a5 = vec![xy("x - y^3"), xy("x + y^3")];
        let m = mf_partial_product(&a5, 1).unwrap();
        let s = m.shift();
        assert_eq!(s.a.get(0, 0), &xy("x + y^3"));
        assert_eq!(s.shift().a, m.a);
        assert_eq!(s.shift().b, m.b);
        let zero = mf_partial_product(&a5, 2).unwrap().shift();
        assert_eq!(zero.a.get(0, 0), &TruncatedSeries::one(2));
        let sum = zero.direct_sum(&m).unwrap();
        assert_eq!(sum.rank(), 2);
        assert!(sum.validate().is_ok());
        let red = sum.reduce();
        assert_eq!(red.mf.a, m.a);
        assert_eq!(red.zero_blocks, 1);
    }

    #[test]
    fn chain_direct_sum_validates() {
        let f = lines(3);
        let parts = chain_for(&f, &[0, 1, 2]);
        let mw = parts[0].direct_sum(&parts[1]).unwrap().direct_sum(&parts[2]).unwrap();
        assert_eq!(mw.rank(), 3);
        assert!(mw.validate().is_ok());
        let red = mw.reduce();
        assert_eq!(red.free_rank, 1);
        assert_eq!(red.mf.rank(), 2);
    }

    #[test]
    fn catalog_entries_validate() {
        let e7 = catalog("E7", &CatalogParams::default()).unwrap();
        assert_eq!(e7.objects.len(), 3);
        let c = &e7.objects[1];
        let red = c.reduce();
        assert_eq!(red.mf.rank(), 2);
        assert_eq!(red.free_rank + red.zero_blocks, 0);
        let t36 = catalog("T36", &CatalogParams { lambda: Some(rat(2)), ..Default::default() }).unwrap();
        assert_eq!(t36.objects[0].a.get(0, 0), &xy("y - x^2"));
        assert_eq!(t36.objects[0].b.get(0, 0), &xy("y*(y - 2*x^2)"));
        assert_eq!(t36.objects[1].a.get(0, 0), &xy("y*(y - x^2)"));
        let lf = catalog("linear_forms", &CatalogParams::default()).unwrap();
        assert_eq!(lf.equation, xy("x*(x - y)*(x - 2*y)"));
        for name in CATALOG_NAMES {
            assert!(catalog(name, &CatalogParams::default()).is_ok(), "{name}");
        }
        assert!(catalog("T36", &CatalogParams { lambda: Some(rat(1)), ..Default::default() }).is_err());
        assert!(catalog("nope", &CatalogParams::default()).is_err());
    }

    #[test]
    fn knoerrer_examples() {
        let k = knoerrer_lift(&[xy("x")], &[0], 1);
        assert!(k.validate().is_ok());
        assert_eq!(k.a.get(1, 0), &TruncatedSeries::one(4));
        let a5 = vec![xy("x - y^3"), xy("x + y^3")];
        let k2 = knoerrer_lift(&a5, &[0, 1], 1);
        assert!(k2.validate().is_ok());
        let red = k.reduce();
        assert!(red.free_rank + red.zero_blocks >= 1);
    }

    #[test]
    fn det_identity() {
        for name in CATALOG_NAMES {
            let e = catalog(name, &CatalogParams::default()).unwrap();
            for m in &e.objects {
                assert_eq!(m.det_product(), e.equation.pow(m.rank() as u32), "{}", m.name);
            }
        }
    }

    #[test]
    fn nonconstant_unit_pivot() {
        // (1+x) * (f/(1+x)) block with f = x*y*(1+x)
        let f = xy("x*y*(1 + x)");
        let m = MatrixFactorization::new("u", f, PolyMatrix::parse_xy(&[&["1 + x"]]), PolyMatrix::parse_xy(&[&["x*y"]]));
        let r = m.reduce();
        assert_eq!(r.mf.rank(), 0);
        assert_eq!(r.zero_blocks, 1);
    }
}
