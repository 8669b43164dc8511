//! Ext¹ over `R = S/(f)` for finitely presented modules that need not be
//! Cohen-Macaulay.
//!
//! A module is given as `coker(P: R^b -> R^a)` together with generators
//! `Q: R^c -> R^b` of `ker_R(P)`. Then
//! `Ext¹(coker P, coker P') = {ψ : ψQ ∈ im P' + fS} / {χP} + (im P' + fS)`
//! where `ψ` runs over `a' x b` matrices.

use super::{components, HomalgConfig, HomalgError};
use crate::linalg::{normalize_row, Echelon, SparseRow};
use crate::matfac::PolyMatrix;
use crate::scalar::{with_prime, FieldChoice, Fp, Field, Rational};
use crate::series::{Monomial, TruncatedSeries};
use std::collections::HashMap;

/// `coker(p)` over `S/(f)` with kernel generators `syz`.
#[derive(Clone, Debug)]
pub struct PresentedModule {
    pub name: String,
    pub f: TruncatedSeries,
    pub p: PolyMatrix,
    pub syz: PolyMatrix,
}

impl PresentedModule {
    pub fn new(name: impl Into<String>, f: TruncatedSeries, p: PolyMatrix, syz: PolyMatrix) -> Self {
        PresentedModule { name: name.into(), f, p, syz }
    }

    /// `P * syz ≡ 0 mod f`, entrywise exact division.
    pub fn syzygies_vanish(&self) -> bool {
        let prod = self.p.mul(&self.syz);
        prod.entries.iter().all(|e| e.is_zero() || e.exact_div(&self.f).is_some())
    }

    /// Truncated test that `syz` generates all of `ker_R(P)`: the projected
    /// kernel at precision `n` has the same dimension as the span of
    /// `syz*u + f*w`.
    pub fn syzygies_complete(&self, n: u32) -> bool {
        let nv = self.f.nvars();
        let (a, b, c) = (self.p.rows, self.p.cols, self.syz.cols);
        let f_a = PolyMatrix::scalar(a, &self.f);
        let f_b = PolyMatrix::scalar(b, &self.f);
        // v (b x 1), w (a x 1): P v - f w = 0
        let sys = System {
            nvars: nv,
            blocks: vec![(b, 1), (a, 1)],
            equations: vec![vec![Term::new(0, Some(&self.p), None, false), Term::new(1, Some(&f_a), None, true)]],
        };
        let bnd = vec![(c, 1, Some(self.syz.clone()), None), (b, 1, Some(f_b), None)];
        let t = sys.projected_dim::<Rational>(0, n);
        let r = boundary_rank::<Rational>(nv, (b, 1), &bnd, n);
        t == r
    }
}

#[derive(Clone)]
struct Term {
    block: usize,
    left: Option<PolyMatrix>,
    right: Option<PolyMatrix>,
    negate: bool,
}

impl Term {
    fn new(block: usize, left: Option<&PolyMatrix>, right: Option<&PolyMatrix>, negate: bool) -> Term {
        Term { block, left: left.cloned(), right: right.cloned(), negate }
    }
}

/// Linear equations `sum L U R = 0` in unknown matrices `U` with series
/// entries.
struct System {
    nvars: usize,
    blocks: Vec<(usize, usize)>,
    equations: Vec<Vec<Term>>,
}

fn entry(m: &Option<PolyMatrix>, i: usize, j: usize, nvars: usize) -> TruncatedSeries {
    match m {
        Some(m) => m.get(i, j).clone(),
        None if i == j => TruncatedSeries::one(nvars),
        None => TruncatedSeries::zero(nvars),
    }
}

fn term_shape(t: &Term, blocks: &[(usize, usize)]) -> (usize, usize) {
    let (p, q) = blocks[t.block];
    (t.left.as_ref().map(|l| l.rows).unwrap_or(p), t.right.as_ref().map(|r| r.cols).unwrap_or(q))
}

fn conv<F: Field>(s: &TruncatedSeries) -> Vec<(Monomial, F)> {
    s.terms().map(|(m, c)| (m.clone(), F::from_rational(c).expect("characteristic"))).collect()
}

impl System {
    /// Dimension of the projection to degree `< n` of block `proj`, solving
    /// all equations with unknowns of degree `< 2n`.
    fn projected_dim<F: Field>(&self, proj: usize, n: u32) -> usize {
        let d = 2 * n;
        let monos = Monomial::below(self.nvars, d);
        let idx: HashMap<Monomial, usize> = monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let nm = monos.len();
        let nl = Monomial::below(self.nvars, n).len();
        let (pr, pc) = self.blocks[proj];
        let n_low = pr * pc * nl;
        // offsets for the remaining coordinates
        let mut offsets = Vec::new();
        let mut acc = 0;
        for &(r, c) in &self.blocks {
            offsets.push(acc);
            acc += r * c * nm;
        }
        let total = acc;
        let n_high = total - n_low;
        let col = |blk: usize, e: usize, k: usize| -> usize {
            if blk == proj && k < nl {
                n_high + e * nl + k
            } else {
                let raw = offsets[blk] + e * nm + k;
                // squeeze out the low part of the projected block
                let lo = offsets[proj];
                let (pr_, pc_) = self.blocks[proj];
                if raw < lo {
                    raw
                } else if blk == proj {
                    lo + e * (nm - nl) + (k - nl)
                } else {
                    raw - pr_ * pc_ * nl
                }
            }
        };
        let mut rows: Vec<SparseRow<F>> = Vec::new();
        for eqn in &self.equations {
            let (er, ec) = term_shape(&eqn[0], &self.blocks);
            let mut eq_rows: Vec<Vec<(usize, F)>> = vec![Vec::new(); er * ec * nm];
            for t in eqn {
                let (p, q) = self.blocks[t.block];
                for i in 0..er {
                    for j in 0..ec {
                        for a in 0..p {
                            let l = entry(&t.left, i, a, self.nvars);
                            if l.is_zero() {
                                continue;
                            }
                            for bb in 0..q {
                                let r = entry(&t.right, bb, j, self.nvars);
                                if r.is_zero() {
                                    continue;
                                }
                                let coef: Vec<(Monomial, F)> = conv(&l.mul(&r));
                                for (k, mu) in monos.iter().enumerate() {
                                    for (nu, v) in &coef {
                                        let m = mu.mul(nu);
                                        if m.degree() < d {
                                            let v = if t.negate { v.neg() } else { v.clone() };
                                            eq_rows[(i * ec + j) * nm + idx[&m]].push((col(t.block, a * q + bb, k), v));
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
            rows.extend(eq_rows.into_iter().map(normalize_row).filter(|r| !r.is_empty()));
        }
        let mut low_piv = 0;
        for g in components(total, rows) {
            let mut e = Echelon::new(total);
            for r in g {
                e.insert(r);
            }
            low_piv += e.rank() - e.count_pivots_below(n_high);
        }
        n_low - low_piv
    }
}

/// Rank of the truncation at `n` of `sum L V R` over boundary blocks
/// `(rows, cols, L, R)`, in a target of shape `shape`.
fn boundary_rank<F: Field>(nvars: usize, shape: (usize, usize), blocks: &[(usize, usize, Option<PolyMatrix>, Option<PolyMatrix>)], n: u32) -> usize {
    let monos = Monomial::below(nvars, n);
    let idx: HashMap<Monomial, usize> = monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let nl = monos.len();
    let (sr, sc) = shape;
    let dim = sr * sc * nl;
    let mut rows = Vec::new();
    for (p, q, left, right) in blocks {
        for a in 0..*p {
            for bb in 0..*q {
                let mut per_mono: Vec<Vec<(usize, F)>> = vec![Vec::new(); nl];
                for i in 0..sr {
                    let l = entry(left, i, a, nvars);
                    if l.is_zero() {
                        continue;
                    }
                    for j in 0..sc {
                        let r = entry(right, bb, j, nvars);
                        if r.is_zero() {
                            continue;
                        }
                        for (nu, v) in conv::<F>(&l.mul(&r)) {
                            for (k, mu) in monos.iter().enumerate() {
                                if let Some(&t) = idx.get(&mu.mul(&nu)) {
                                    per_mono[k].push(((i * sc + j) * nl + t, v.clone()));
                                }
                            }
                        }
                    }
                }
                rows.extend(per_mono.into_iter().map(normalize_row).filter(|r| !r.is_empty()));
            }
        }
    }
    let mut e = Echelon::new(dim);
    for g in components(dim, rows) {
        for r in g {
            e.insert(r);
        }
    }
    e.rank()
}

fn ext1_at<F: Field>(m: &PresentedModule, n_mod: &PresentedModule, n: u32) -> usize {
    let nv = m.f.nvars();
    let (a, b) = (m.p.rows, m.p.cols);
    let c = m.syz.cols;
    let (a2, b2) = (n_mod.p.rows, n_mod.p.cols);
    let f_a2 = PolyMatrix::scalar(a2, &m.f);
    // ψ (a2 x b): ψ Q - P' X - f Y = 0 with X (b2 x c), Y (a2 x c)
    let sys = System {
        nvars: nv,
        blocks: vec![(a2, b), (b2, c), (a2, c)],
        equations: vec![vec![
            Term::new(0, None, Some(&m.syz), false),
            Term::new(1, Some(&n_mod.p), None, true),
            Term::new(2, Some(&f_a2), None, true),
        ]],
    };
    let t = sys.projected_dim::<F>(0, n);
    // χP (χ: a2 x a), P'Z (Z: b2 x b), fW (W: a2 x b)
    let bnd = vec![
        (a2, a, None, Some(m.p.clone())),
        (b2, b, Some(n_mod.p.clone()), None),
        (a2, b, Some(f_a2.clone()), None),
    ];
    t - boundary_rank::<F>(nv, (a2, b), &bnd, n)
}

/// `dim Ext¹_R(M, N)` for presented modules, with the precision ladder.
pub fn presented_ext1_dim(m: &PresentedModule, n: &PresentedModule, cfg: &HomalgConfig) -> Result<(usize, Vec<(u32, usize)>), HomalgError> {
    let mut ladder: Vec<(u32, usize)> = Vec::new();
    for step in cfg.ladder.iter().copied().filter(|&s| s <= cfg.cap) {
        let d = match cfg.field {
            FieldChoice::Rational => ext1_at::<Rational>(m, n, step),
            FieldChoice::Prime(p) => with_prime(p, || ext1_at::<Fp>(m, n, step)),
        };
        let done = ladder.last().map(|e| e.1 == d).unwrap_or(false);
        ladder.push((step, d));
        if done {
            return Ok((d, ladder));
        }
    }
    Err(HomalgError::PrecisionCap { cap: cfg.cap, ladder })
}

/// The module `coker(A)` of a factorization, with `B` as kernel generators.
pub fn from_factorization(m: &crate::matfac::MatrixFactorization) -> PresentedModule {
    PresentedModule::new(m.name.clone(), m.f.clone(), m.a.clone(), m.b.clone())
}

/// The three modules typed into the computer algebra session for the E7
/// curve `x^3 + x*y^3`, read column by column as written there, with
/// kernel generators over `R`.
pub fn e7_session_modules() -> Vec<PresentedModule> {
    let f = crate::series::xy("x^3 + x*y^3");
    vec![
        PresentedModule::new("A", f.clone(), PolyMatrix::parse_xy(&[&["x"]]), PolyMatrix::parse_xy(&[&["x^2 + y^3"]])),
        PresentedModule::new(
            "C",
            f.clone(),
            PolyMatrix::parse_xy(&[&["x^2", "x*y"], &["x*y^2", "-x^2"]]),
            PolyMatrix::parse_xy(&[&["x", "y"], &["y^2", "-x"]]),
        ),
        // not a matrix factorization: det = -x(x^3 + y^3)
        PresentedModule::new(
            "M1",
            f,
            PolyMatrix::parse_xy(&[&["x^2", "y"], &["x*y^2", "-x^2"]]),
            PolyMatrix::parse_xy(&[&["x^2 + y^3"], &["0"]]),
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matfac::{catalog, CatalogParams};
    use crate::series::xy;

    #[test]
    fn agrees_with_factorization_route() {
        let e = catalog("E7", &CatalogParams::default()).unwrap();
        let cfg = HomalgConfig { ladder: vec![8, 16], ..Default::default() };
        for o in &e.objects {
            let pm = from_factorization(o);
            assert!(pm.syzygies_vanish());
            assert!(pm.syzygies_complete(8));
            let (d, _) = presented_ext1_dim(&pm, &pm, &cfg).unwrap();
            assert_eq!(d, super::super::ext1_dim(o, o, &cfg).unwrap().dimension, "{}", o.name);
        }
    }

    #[test]
    fn session_modules() {
        let mods = e7_session_modules();
        let cfg = HomalgConfig { ladder: vec![8, 16], field: FieldChoice::Prime(32003), ..Default::default() };
        for m in &mods {
            assert!(m.syzygies_vanish(), "{}", m.name);
            assert!(m.syzygies_complete(8), "{}", m.name);
        }
        let d = |i: usize, j: usize| presented_ext1_dim(&mods[i], &mods[j], &cfg).unwrap().0;
        assert_eq!(d(0, 0), 0);
        assert_eq!(d(1, 1), 2);
        assert_eq!(d(2, 2), 10);
        assert_eq!(d(0, 1), 0);
    }

    #[test]
    fn incomplete_syzygies_detected() {
        let f = xy("x^3 + x*y^3");
        let p = PolyMatrix::parse_xy(&[&["x"]]);
        let half = PresentedModule::new("A'", f, p, PolyMatrix::parse_xy(&[&["x^3 + x*y^3"]]));
        assert!(half.syzygies_vanish());
        assert!(!half.syzygies_complete(8));
    }
}
