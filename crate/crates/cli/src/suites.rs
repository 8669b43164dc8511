//! Verification suites. Each suite returns its checks as data; nothing here
//! panics on a failed comparison.

use std::fmt;
use std::str::FromStr;

use mcmkit::arquiver::{curve_quiver, enumerate_rigid, sweep_quotients, D4Reading};
use mcmkit::cluster::{
    cluster_tilting_summands, curve_factors, has_cluster_tilting, indec_rigid_objects, is_maximal_among, mutate,
    mutation_graph, spans_maximal_ideal, stable_counts, verify_rigid_sum, Curve, D_EVEN_NAMES,
};
use mcmkit::endoalg::{chain_quiver, check_relations, stable_endo_algebra, Generators, RelationStatus};
use mcmkit::homalg::presented::{e7_session_modules, presented_ext1_dim};
use mcmkit::homalg::{ext1_dim, stable_hom_dim};
use mcmkit::matfac::{catalog, knoerrer_lift, mf_partial_product, CatalogParams};
use mcmkit::scalar::{rat, rat_frac};
use mcmkit::{FactorList, FieldChoice, HomalgConfig, MatrixFactorization, MorphismPair, Permutation};
use serde_json::{json, Value};

use crate::golden::{parse_tables, HAMMOCKS};
use crate::input::name_d_even;
use crate::reference::{CURVE_TABLE, E7_TRANSCRIPT, LINES, T_TABLE};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub id: String,
    pub expected: String,
    pub got: String,
    pub pass: bool,
    pub note: Option<String>,
}

impl Check {
    pub fn new(id: impl Into<String>, expected: impl ToString, got: impl ToString) -> Check {
        let (expected, got) = (expected.to_string(), got.to_string());
        Check { id: id.into(), pass: expected == got, expected, got, note: None }
    }

    pub fn note(mut self, n: impl Into<String>) -> Check {
        self.note = Some(n.into());
        self
    }

    fn error(id: impl Into<String>, expected: impl ToString, e: impl fmt::Display) -> Check {
        Check { id: id.into(), expected: expected.to_string(), got: format!("error: {e}"), pass: false, note: None }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Curves,
    TSingularities,
    Lines,
    E7Ext,
    Relations,
    Quotients,
    CrossEngine,
    Properties,
    Hammocks,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Curves,
        Suite::TSingularities,
        Suite::Lines,
        Suite::E7Ext,
        Suite::Relations,
        Suite::Quotients,
        Suite::CrossEngine,
        Suite::Properties,
        Suite::Hammocks,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Curves => "thm1_2",
            Suite::TSingularities => "main2",
            Suite::Lines => "main3",
            Suite::E7Ext => "singular_e7",
            Suite::Relations => "relations",
            Suite::Quotients => "section8",
            Suite::CrossEngine => "cross_engine",
            Suite::Properties => "properties",
            Suite::Hammocks => "hammocks",
        }
    }

    pub fn describe(self) -> &'static str {
        match self {
            Suite::Curves => "rigid and cluster tilting counts of the simple curve singularities",
            Suite::TSingularities => "existence and counts for T_{p,q}",
            Suite::Lines => "distinct lines: counts, rigidity and the mutation graph",
            Suite::E7Ext => "Ext^1 on the E7 presentations A, C, M1",
            Suite::Relations => "stable endomorphism algebras and their relations",
            Suite::Quotients => "cluster tilting and rigid objects in ZΔ/G",
            Suite::CrossEngine => "mesh engine against symbolic engine",
            Suite::Properties => "structural identities across the catalog",
            Suite::Hammocks => "golden Hom(X,-) tables",
        }
    }

    pub fn run(self, cfg: &HomalgConfig) -> SuiteReport {
        let checks = match self {
            Suite::Curves => curves(),
            Suite::TSingularities => t_singularities(cfg),
            Suite::Lines => lines(cfg, LinesMode::default()),
            Suite::E7Ext => e7_ext(cfg),
            Suite::Relations => relations(cfg),
            Suite::Quotients => quotients(8, 200),
            Suite::CrossEngine => cross_engine(cfg),
            Suite::Properties => properties(cfg),
            Suite::Hammocks => hammocks(),
        };
        SuiteReport { suite: self, checks }
    }
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Suite, String> {
        let t = s.trim().to_ascii_lowercase().replace('-', "_");
        let alias = match t.as_str() {
            "curves" => Some(Suite::Curves),
            "t_singularities" => Some(Suite::TSingularities),
            "lines" => Some(Suite::Lines),
            "e7" | "e7_ext" => Some(Suite::E7Ext),
            "quotients" => Some(Suite::Quotients),
            _ => None,
        };
        alias
            .or_else(|| Suite::ALL.into_iter().find(|x| x.name() == t))
            .ok_or_else(|| format!("unknown suite `{s}`; expected one of {}, all", Suite::ALL.map(|x| x.name()).join(", ")))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.pass).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "suite": self.suite.name(),
            "passed": self.passed(),
            "total": self.checks.len(),
            "failed": self.failures().len(),
            "checks": self.checks.iter().map(|c| {
                let mut v = json!({"id": c.id, "expected": c.expected, "got": c.got, "pass": c.pass});
                if let Some(n) = &c.note {
                    v["note"] = json!(n);
                }
                v
            }).collect::<Vec<_>>(),
        })
    }

    pub fn render(&self) -> String {
        let mut s = format!(
            "{} {}: {}/{} checks pass ({})\n",
            if self.passed() { "PASS" } else { "FAIL" },
            self.suite,
            self.checks.len() - self.failures().len(),
            self.checks.len(),
            self.suite.describe()
        );
        for c in &self.checks {
            if c.pass {
                continue;
            }
            s.push_str(&format!("  - {}: expected {}, got {}\n", c.id, c.expected, c.got));
            if let Some(n) = &c.note {
                s.push_str(&format!("    {n}\n"));
            }
        }
        s
    }
}

/// Runs the suites on separate threads; the reports come back in input order.
pub fn run_all(suites: &[Suite], cfg: &HomalgConfig) -> Vec<SuiteReport> {
    std::thread::scope(|s| {
        let handles: Vec<_> = suites.iter().map(|&x| s.spawn(move || x.run(cfg))).collect();
        handles
            .into_iter()
            .zip(suites)
            .map(|(h, &x)| {
                h.join().unwrap_or_else(|_| SuiteReport { suite: x, checks: vec![Check::new("suite", "completed", "panicked")] })
            })
            .collect()
    })
}

fn quad((a, b, c, d): (usize, usize, usize, Option<usize>)) -> String {
    format!("{a},{b},{c},{}", d.map_or("-".to_string(), |d| d.to_string()))
}

fn triple((a, b, c): (u64, u64, u64)) -> String {
    format!("{a},{b},{c}")
}

pub fn curves() -> Vec<Check> {
    let mut out = Vec::new();
    for (family, names, want) in CURVE_TABLE {
        let expected = quad((want[0], want[1], want[2], Some(want[3])));
        for name in *names {
            let id = format!("{family}: {name}");
            out.push(match curve_quiver(name) {
                Ok(q) => Check::new(id, &expected, quad(enumerate_rigid(&q).counts())),
                Err(e) => Check::error(id, &expected, e),
            });
        }
    }
    out
}

pub fn t_singularities(cfg: &HomalgConfig) -> Vec<Check> {
    let mut out = Vec::new();
    for &(p, q, ct, counts) in T_TABLE {
        let id = format!("T{p},{q}(2)");
        let fl = match curve_factors(&Curve::T(p, q, rat(2))) {
            Ok(f) => f,
            Err(e) => {
                out.push(Check::error(id, ct, e));
                continue;
            }
        };
        out.push(Check::new(format!("{id} has cluster tilting"), ct, has_cluster_tilting(&fl)));
        if let Some(c) = counts {
            let got = stable_counts(&fl).map(triple).unwrap_or_else(|e| format!("error: {e}"));
            out.push(Check::new(format!("{id} counts"), triple(c), got));
        }
    }
    for name in ["T36", "T44"] {
        let id = format!("{name}(2) printed summands rigid");
        let e = catalog(name, &CatalogParams { lambda: Some(rat(2)), ..Default::default() });
        out.push(match e.map_err(|e| e.to_string()).and_then(|e| verify_rigid_sum(&e.objects, cfg).map_err(|e| e.to_string())) {
            Ok(()) => Check::new(id, true, true),
            Err(e) => Check::error(id, true, e),
        });
    }
    out
}

/// How much of the line arrangement is re-verified by the Ext engine.
#[derive(Clone, Copy, Debug)]
pub struct LinesMode {
    /// Every statement is checked for `n` up to this bound.
    pub full_up_to: usize,
    /// Above the bound, this many permutations are checked.
    pub sample: usize,
}

impl Default for LinesMode {
    fn default() -> Self {
        LinesMode { full_up_to: 3, sample: 4 }
    }
}

pub fn line_factors(n: usize) -> FactorList {
    let fs: Vec<String> = (0..n).map(|c| format!("x - {c}*y")).collect();
    let refs: Vec<&str> = fs.iter().map(String::as_str).collect();
    FactorList::parse(&refs).expect("distinct lines")
}

/// Evenly spaced permutations, always including the first and last.
fn sample_perms(n: usize, k: usize) -> Vec<Permutation> {
    let all = Permutation::all(n);
    if k >= all.len() {
        return all;
    }
    let step = (all.len() - 1) as f64 / (k.max(2) - 1) as f64;
    let mut idx: Vec<usize> = (0..k.max(2)).map(|i| (i as f64 * step).round() as usize).collect();
    idx.dedup();
    idx.into_iter().map(|i| all[i].clone()).collect()
}

pub fn lines(cfg: &HomalgConfig, mode: LinesMode) -> Vec<Check> {
    let mut out = Vec::new();
    for &(n, want) in LINES {
        let fl = line_factors(n);
        let full = n <= mode.full_up_to;
        out.push(Check::new(format!("n={n} counts"), triple(want), stable_counts(&fl).map(triple).unwrap_or_else(|e| e.to_string())));
        let perms = if full { Permutation::all(n) } else { sample_perms(n, mode.sample) };
        let cands = match indec_rigid_objects(&fl, true, if full { Some(cfg) } else { None }) {
            Ok(c) => c,
            Err(e) => {
                out.push(Check::error(format!("n={n} rigid objects"), want.0, e));
                continue;
            }
        };
        if full {
            out.push(Check::new(format!("n={n} indecomposable rigid, Ext-verified"), want.0, cands.len()));
        }
        let mut bad = Vec::new();
        for w in &perms {
            let r = cluster_tilting_summands(&fl, w).map_err(|e| e.to_string()).and_then(|parts| {
                let stable: Vec<MatrixFactorization> = parts.into_iter().filter(|m| !m.is_free()).collect();
                verify_rigid_sum(&stable, cfg).map_err(|e| e.to_string())?;
                if full && !is_maximal_among(&stable, &cands, cfg).map_err(|e| e.to_string())? {
                    return Err("not maximal".into());
                }
                if stable.len() as u64 != want.2 {
                    return Err(format!("{} summands", stable.len()));
                }
                Ok(())
            });
            if let Err(e) = r {
                bad.push(format!("{w}: {e}"));
            }
        }
        let what = if full { "all" } else { "sampled" };
        out.push(
            Check::new(format!("n={n} M_w rigid and maximal ({what} {} permutations)", perms.len()), "none failing", if bad.is_empty() { "none failing".into() } else { bad.join("; ") }),
        );
        if full {
            let mut failed = Vec::new();
            for w in Permutation::all(n) {
                for i in 1..n {
                    match mutate(&fl, &w, i) {
                        Ok((_, mut d)) => match d.verify() {
                            Ok(r) if r.passed() => {}
                            Ok(r) => failed.push(format!("{w} s{i}: {}", r.failures.join(", "))),
                            Err(e) => failed.push(format!("{w} s{i}: {e}")),
                        },
                        Err(e) => failed.push(format!("{w} s{i}: {e}")),
                    }
                }
            }
            out.push(Check::new(format!("n={n} exchange sequences"), "none failing", if failed.is_empty() { "none failing".into() } else { failed.join("; ") }));
        }
        let g = mutation_graph(n);
        let shape = match n {
            2 => format!("{} vertices, {} edges", g.vertices.len(), g.edges.len()),
            3 => format!("cycle: {}, {} vertices", g.is_cycle(), g.vertices.len()),
            _ => format!(
                "cayley: {}, {} vertices, girth {}",
                g.check_cayley().map_or_else(|e| e, |_| "ok".into()),
                g.vertices.len(),
                g.girth().map_or("-".into(), |x| x.to_string())
            ),
        };
        let want_shape = match n {
            2 => "2 vertices, 1 edges".to_string(),
            3 => "cycle: true, 6 vertices".to_string(),
            _ => format!("cayley: ok, {} vertices, girth 4", (1..=n).product::<usize>()),
        };
        out.push(Check::new(format!("n={n} mutation graph"), want_shape, shape));
    }
    out
}

pub fn e7_ext(cfg: &HomalgConfig) -> Vec<Check> {
    let cfg = cfg.clone().with_cap(cfg.cap.min(32));
    let e = match catalog("E7", &CatalogParams::default()) {
        Ok(e) => e,
        Err(err) => return vec![Check::error("E7 catalog", "available", err)],
    };
    let obj = |n: &str| e.objects.iter().find(|o| o.name == n).unwrap();
    let mut out = Vec::new();
    for &(a, b, want) in E7_TRANSCRIPT {
        let id = format!("Ext1({a},{b})");
        out.push(match ext1_dim(obj(a), obj(b), &cfg) {
            Ok(r) => {
                let mut c = Check::new(id, want, r.dimension).note(format!("ladder {:?}, stabilized {}", r.ladder, r.stabilized));
                if !r.stabilized {
                    c.pass = false;
                }
                if a == "M1" && !c.pass {
                    let ladder = c.note.take().unwrap_or_default();
                    c = c.note(ladder
                        + "; the transcript's M1 matrix is not a matrix factorization of f; on that literal presentation the \
                         finitely presented Ext routine gives 10 (see the next check), on the displayed factorization both engines give 2",
                    );
                }
                c
            }
            Err(err) => Check::error(id, want, err),
        });
    }
    let mods = e7_session_modules();
    let pcfg = HomalgConfig { ladder: vec![8, 16], field: FieldChoice::Prime(32003), cap: 16, certify: false };
    if let Some(m1) = mods.iter().find(|m| m.name == "M1") {
        let id = "Ext1(M1,M1) on the transcript's literal presentation";
        out.push(match presented_ext1_dim(m1, m1, &pcfg) {
            Ok((d, _)) => Check::new(id, 10, d).note("cokernel of a non-factorization; not an MCM module"),
            Err(err) => Check::error(id, 10, err),
        });
    }
    out
}

fn status(s: &RelationStatus) -> &'static str {
    match s {
        RelationStatus::VerifiedZero => "verified-zero",
        RelationStatus::VerifiedEqual => "verified-equal",
        RelationStatus::Failed => "failed",
    }
}

fn relation_checks(out: &mut Vec<Check>, prefix: &str, alg: &mcmkit::FiniteDimAlgebra, gens: &Generators, rels: &[&str]) {
    match check_relations(alg, gens, rels) {
        Ok(q) => {
            for (r, s) in &q.relations {
                out.push(Check::new(format!("{prefix}: {r}"), "verified-zero", status(s)));
            }
        }
        Err(e) => out.push(Check::error(prefix, "verified-zero", e)),
    }
}

/// The zero relations of `A_2(λ)` on top of the defining ones.
pub const A2_ZERO_RELATIONS: &[&str] = &["alpha beta alpha", "beta alpha beta", "alpha phi^2", "psi^2 alpha", "phi^2 beta", "beta psi^2", "phi^4", "psi^4"];

pub fn a2_relations(lambda: &str) -> Vec<String> {
    vec!["psi alpha - alpha phi".into(), "beta psi - phi beta".into(), "phi^2 - beta alpha".into(), format!("psi^2 - {lambda} alpha beta")]
}

pub const B11_RELATIONS: &[&str] = &[
    "alpha beta alpha - delta gamma alpha",
    "alpha beta delta - 2 delta gamma delta",
    "gamma alpha beta - 2 gamma delta gamma",
    "beta delta gamma - beta alpha beta",
];

/// Factor pairs with the expected answer to "the quiver has a loop".
pub const LOOP_CORPUS: &[(&str, &str, bool)] = &[
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

pub fn relations(cfg: &HomalgConfig) -> Vec<Check> {
    let mut out = Vec::new();
    if let Err(e) = relations_into(&mut out, cfg) {
        out.push(Check::error("relations", "computed", e));
    }
    out
}

fn relations_into(out: &mut Vec<Check>, cfg: &HomalgConfig) -> Result<(), String> {
    let s = |e: &dyn fmt::Display| e.to_string();
    for n in [3u32, 5, 7] {
        let e = catalog("A_odd", &CatalogParams { n: Some(n), ..Default::default() }).map_err(|e| s(&e))?;
        let alg = stable_endo_algebra(&e.objects[..1], cfg).map_err(|e| s(&e))?;
        let k = (n + 1) / 2;
        let y = MorphismPair::scalar_xy(&e.objects[0], &e.objects[0], "y", "y", alg.precision);
        let nil = alg.element(0, 0, &y).map_err(|e| s(&e))?;
        let got = format!("dim {}, idempotents {}, nilpotency {}", alg.dim(), alg.idempotents.len(), alg.nilpotency(&nil).map_or("-".into(), |v| v.to_string()));
        out.push(Check::new(format!("A{n}: stable End(N+)"), format!("dim {k}, idempotents 1, nilpotency {k}"), got));
    }

    let lambda = CatalogParams { lambda: Some(rat(2)), ..Default::default() };
    let e = catalog("T36", &lambda).map_err(|e| s(&e))?;
    let (m, n) = (&e.objects[0], &e.objects[1]);
    let alg = stable_endo_algebra(&e.objects, cfg).map_err(|e| s(&e))?;
    let p = alg.precision;
    let literal = Generators::new()
        .with(&alg, "phi", "M", "M", &MorphismPair::scalar_xy(m, m, "x", "x", p))
        .and_then(|g| g.with(&alg, "psi", "N", "N", &MorphismPair::scalar_xy(n, n, "x", "x", p)))
        .and_then(|g| g.with(&alg, "alpha", "M", "N", &MorphismPair::scalar_xy(m, n, "1", "y", p)))
        .and_then(|g| g.with(&alg, "beta", "N", "M", &MorphismPair::scalar_xy(n, m, "y", "1", p)))
        .map_err(|e| s(&e))?;
    let q = check_relations(&alg, &literal, &["psi^2 - 2 alpha beta", "psi^2 - (1/2) alpha beta"]).map_err(|e| s(&e))?;
    out.push(
        Check::new("T3,6(2) printed dictionary: psi^2 - lambda alpha beta / psi^2 - lambda^-1 alpha beta", "failed / verified-zero", format!("{} / {}", status(&q.relations[0].1), status(&q.relations[1].1)))
            .note("the printed dictionary realises A_2(1/lambda); the swapped dictionary below realises A_2(lambda)"),
    );
    let swapped = Generators::new()
        .with(&alg, "phi", "N", "N", &MorphismPair::scalar_xy(n, n, "x", "x", p))
        .and_then(|g| g.with(&alg, "psi", "M", "M", &MorphismPair::scalar_xy(m, m, "x", "x", p)))
        .and_then(|g| g.with(&alg, "alpha", "N", "M", &MorphismPair::scalar_xy(n, m, "y", "1", p)))
        .and_then(|g| g.with(&alg, "beta", "M", "N", &MorphismPair::scalar_xy(m, n, "1", "y", p).scale(&rat_frac(1, 2))))
        .map_err(|e| s(&e))?;
    let rels = a2_relations("2");
    let rels: Vec<&str> = rels.iter().map(String::as_str).collect();
    relation_checks(out, "T3,6(2) A_2(2)", &alg, &swapped, &rels);
    relation_checks(out, "T3,6(2) zero relation", &alg, &swapped, A2_ZERO_RELATIONS);
    let c = alg.cartan();
    out.push(Check::new("T3,6(2) Cartan symmetric, nonsingular", "true, true", format!("{}, {}", c.symmetric, c.nonsingular)).note(format!("{:?}", c.matrix)));

    let e = catalog("T44", &lambda).map_err(|e| s(&e))?;
    let (m, n, k) = (&e.objects[0], &e.objects[1], &e.objects[2]);
    let alg = stable_endo_algebra(&e.objects, cfg).map_err(|e| s(&e))?;
    let p = alg.precision;
    let gens = Generators::new()
        .with(&alg, "alpha", "M", "N", &MorphismPair::scalar_xy(m, n, "1", "x", p))
        .and_then(|g| g.with(&alg, "beta", "N", "M", &MorphismPair::scalar_xy(n, m, "x", "1", p)))
        .and_then(|g| g.with(&alg, "gamma", "N", "K", &MorphismPair::scalar_xy(n, k, "1", "y", p)))
        .and_then(|g| g.with(&alg, "delta", "K", "N", &MorphismPair::scalar_xy(k, n, "y", "1", p)))
        .map_err(|e| s(&e))?;
    relation_checks(out, "T4,4(2) B_1,1(2)", &alg, &gens, B11_RELATIONS);
    let c = alg.cartan();
    out.push(Check::new("T4,4(2) Cartan symmetric, nonsingular", "true, true", format!("{}, {}", c.symmetric, c.nonsingular)).note(format!("{:?}", c.matrix)));

    for &(a, b, looped) in LOOP_CORPUS {
        let id = format!("loop rule ({a}, {b})");
        let fl = FactorList::parse(&[a, b]).map_err(|e| s(&e))?;
        let rule = !spans_maximal_ideal(&fl.factors()[0], &fl.factors()[1]);
        let chain = !chain_quiver(&fl, true).loops().is_empty();
        let s1 = mf_partial_product(fl.factors(), 1).map_err(|e| s(&e))?;
        let computed = !stable_endo_algebra(&[s1], cfg).map_err(|e| s(&e))?.quiver().loops().is_empty();
        out.push(Check::new(id, format!("{looped} {looped} {looped}"), format!("{rule} {chain} {computed}")).note("rule, chain quiver, computed algebra"));
    }
    Ok(())
}

pub fn quotients(max_rank: usize, max_vertices: usize) -> Vec<Check> {
    let mut out = Vec::new();
    for r in sweep_quotients(max_rank, max_vertices, D4Reading::Identity) {
        if !r.listed_legal {
            continue;
        }
        let id = format!("{} {} ({} vertices)", r.diagram, r.g, r.vertices);
        let expected = format!("ct {}, rigid {}", r.listed_has_ct, !r.listed_no_rigid);
        let got = format!("ct {}, rigid {}", r.has_ct, r.has_rigid);
        let mut c = Check::new(id, expected, got);
        if !c.pass {
            c = c.note(format!("counts {}", quad(r.counts)));
        }
        out.push(c);
    }
    out
}

/// Pairs computed by both engines.
fn cross_pairs(out: &mut Vec<Check>, curve: &str, objects: &[MatrixFactorization], names: &[(&str, &str)], cfg: &HomalgConfig) {
    let q = match curve_quiver(curve) {
        Ok(q) => q,
        Err(e) => return out.push(Check::error(curve, "quiver", e)),
    };
    for (oa, ma) in names {
        for (ob, mb) in names {
            let id = format!("{curve} Ext1({ma},{mb})");
            let (Some(x), Some(y)) = (objects.iter().find(|o| o.name == *oa), objects.iter().find(|o| o.name == *ob)) else {
                out.push(Check::error(id, "objects", "missing presentation"));
                continue;
            };
            let (Some(i), Some(j)) = (q.find(ma), q.find(mb)) else {
                out.push(Check::error(id, "vertices", "missing vertex"));
                continue;
            };
            out.push(match ext1_dim(x, y, cfg) {
                Ok(r) => Check::new(id, format!("mesh {}", q.ext1_dim(i, j)), format!("mesh {}", r.dimension)).note("expected is the mesh value, got is the symbolic value"),
                Err(e) => Check::error(id, q.ext1_dim(i, j), e),
            });
        }
    }
}

pub fn cross_engine(cfg: &HomalgConfig) -> Vec<Check> {
    let mut out = Vec::new();
    match catalog("E7", &CatalogParams::default()) {
        Ok(e) => cross_pairs(&mut out, "E7", &e.objects, &[("A", "A"), ("C", "C"), ("M1", "M1")], cfg),
        Err(e) => out.push(Check::error("E7", "catalog", e)),
    }
    for n in [3u32, 5] {
        match catalog("A_odd", &CatalogParams { n: Some(n), ..Default::default() }) {
            Ok(e) => cross_pairs(&mut out, &format!("A{n}"), &e.objects, &[("N+", "N+"), ("N-", "N-")], cfg),
            Err(e) => out.push(Check::error("A_odd", "catalog", e)),
        }
    }
    match catalog("D_even_split", &CatalogParams { n: Some(1), ..Default::default() }) {
        Ok(e) => {
            let e = name_d_even(e);
            let names: Vec<(&str, &str)> = D_EVEN_NAMES.iter().map(|(n, _)| (*n, *n)).collect();
            cross_pairs(&mut out, "D4", &e.objects, &names, cfg);
        }
        Err(e) => out.push(Check::error("D_even_split", "catalog", e)),
    }
    out
}

/// Every catalog entry with its default parameters, plus a few variants.
pub fn catalog_sample() -> Vec<(String, mcmkit::matfac::CatalogEntry)> {
    let mut out = Vec::new();
    let variants: Vec<(&str, CatalogParams)> = vec![
        ("A_odd", CatalogParams { n: Some(3), ..Default::default() }),
        ("A_odd", CatalogParams { n: Some(5), ..Default::default() }),
        ("D_even_split", CatalogParams { n: Some(1), ..Default::default() }),
        ("D_even_split", CatalogParams { n: Some(2), ..Default::default() }),
        ("E7", CatalogParams::default()),
        ("T36", CatalogParams { lambda: Some(rat(2)), ..Default::default() }),
        ("T3_2q2", CatalogParams { q: Some(3), ..Default::default() }),
        ("T44", CatalogParams { lambda: Some(rat(2)), ..Default::default() }),
        ("T2p2_2q2", CatalogParams { p: Some(1), q: Some(2), ..Default::default() }),
        ("linear_forms", CatalogParams::default()),
    ];
    for (name, p) in variants {
        if let Ok(e) = catalog(name, &p) {
            out.push((e.name.clone(), e));
        }
    }
    out
}

pub fn properties(cfg: &HomalgConfig) -> Vec<Check> {
    let mut out = Vec::new();
    for (label, e) in catalog_sample() {
        let mut validate = Vec::new();
        let mut sigma = Vec::new();
        let mut sym = Vec::new();
        let mut duality = Vec::new();
        for o in &e.objects {
            for m in [o.clone(), o.shift()] {
                if let Err(err) = m.validate() {
                    validate.push(format!("{}: {err}", m.name));
                }
            }
            let back = o.shift().shift();
            if back.a != o.a || back.b != o.b {
                sigma.push(o.name.clone());
            }
        }
        for x in &e.objects {
            for y in &e.objects {
                let pair = format!("({},{})", x.name, y.name);
                match (ext1_dim(x, y, cfg), ext1_dim(y, x, cfg)) {
                    (Ok(a), Ok(b)) if a.dimension == b.dimension => {}
                    (Ok(a), Ok(b)) => sym.push(format!("{pair}: {} vs {}", a.dimension, b.dimension)),
                    (Err(e), _) | (_, Err(e)) => sym.push(format!("{pair}: {e}")),
                }
                match (stable_hom_dim(x, y, cfg), ext1_dim(y, &x.shift(), cfg)) {
                    (Ok(a), Ok(b)) if a.dimension == b.dimension => {}
                    (Ok(a), Ok(b)) => duality.push(format!("{pair}: {} vs {}", a.dimension, b.dimension)),
                    (Err(e), _) | (_, Err(e)) => duality.push(format!("{pair}: {e}")),
                }
            }
        }
        let ok = |v: Vec<String>| if v.is_empty() { "none failing".to_string() } else { v.join("; ") };
        out.push(Check::new(format!("{label}: validate M and ΣM"), "none failing", ok(validate)));
        out.push(Check::new(format!("{label}: Σ² = id"), "none failing", ok(sigma)));
        out.push(Check::new(format!("{label}: Ext1(M,N) = Ext1(N,M)"), "none failing", ok(sym)));
        out.push(Check::new(format!("{label}: stable Hom(M,N) = Ext1(N,ΣM)"), "none failing", ok(duality)));
    }
    for (label, fl) in [("lines n=3", line_factors(3)), ("split D4", FactorList::parse(&["y", "x - y", "x + y"]).unwrap())] {
        let mut exch = Vec::new();
        let mut lifts = Vec::new();
        for w in Permutation::all(fl.len()) {
            for i in 1..fl.len() {
                match mutate(&fl, &w, i).map_err(|e| e.to_string()).and_then(|(_, mut d)| d.verify().map_err(|e| e.to_string())) {
                    Ok(r) if r.passed() => {}
                    Ok(r) => exch.push(format!("{w} s{i}: {}", r.failures.join(", "))),
                    Err(e) => exch.push(format!("{w} s{i}: {e}")),
                }
            }
            for i in 1..=fl.len() {
                let k = knoerrer_lift(fl.factors(), w.images(), i);
                if let Err(e) = k.validate() {
                    lifts.push(format!("{w} {i}: {e}"));
                }
            }
        }
        let ok = |v: Vec<String>| if v.is_empty() { "none failing".to_string() } else { v.join("; ") };
        out.push(Check::new(format!("{label}: exchange sequences"), "none failing", ok(exch)));
        out.push(Check::new(format!("{label}: Knörrer lifts validate"), "none failing", ok(lifts)));
    }
    out
}

pub fn hammocks() -> Vec<Check> {
    let tables = match parse_tables(HAMMOCKS) {
        Ok(t) => t,
        Err(e) => return vec![Check::error("golden/hammocks.txt", "parses", e)],
    };
    tables
        .iter()
        .map(|t| match t.compare() {
            Ok(m) if m.is_empty() => Check::new(&t.label, format!("{} cells", t.cells()), format!("{} cells", t.cells())),
            Ok(m) => {
                let diff: Vec<String> = m.iter().map(|x| format!("row {} col {}: {} vs {}", x.row, x.col, x.expected, x.got)).collect();
                Check::new(&t.label, format!("{} cells", t.cells()), format!("{} mismatches", m.len())).note(diff.join("; "))
            }
            Err(e) => Check::error(&t.label, "comparable", e),
        })
        .collect()
}
