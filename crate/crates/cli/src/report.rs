//! The `analyze` report.

use std::fmt::Write as _;

use mcmkit::arquiver::enumerate_rigid;
use mcmkit::cluster::{
    branch_count, cam_type, cluster_tilting_summands, count_formula, indec_rigid_objects, milnor_number, verify_rigid_sum,
};
use mcmkit::{HomalgConfig, Irreducibility, MatrixFactorization, Permutation};
use serde_json::{json, Value};

use crate::error::CliError;
use crate::input::Resolved;
use crate::reference::UNVERIFIED;

/// How a number was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Label {
    Formula,
    Verified,
    CrossChecked,
    Asserted,
    Unverified,
}

impl Label {
    pub fn as_str(self) -> &'static str {
        match self {
            Label::Formula => "formula",
            Label::Verified => "verified",
            Label::CrossChecked => "cross-checked",
            Label::Asserted => "asserted",
            Label::Unverified => "unverified",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Number {
    pub value: Option<u64>,
    pub label: Label,
    pub source: String,
}

impl Number {
    fn new(value: impl Into<Option<u64>>, label: Label, source: impl Into<String>) -> Number {
        Number { value: value.into(), label, source: source.into() }
    }

    fn show(&self) -> String {
        self.value.map_or("?".into(), |v| v.to_string())
    }

    fn to_json(&self) -> Value {
        json!({"value": self.value, "label": self.label.as_str(), "source": self.source})
    }
}

#[derive(Clone, Debug)]
pub struct FactorLine {
    pub text: String,
    pub ord: u32,
    pub irreducibility: Irreducibility,
}

#[derive(Clone, Debug)]
pub struct AnalysisReport {
    pub input: String,
    pub factors: Vec<FactorLine>,
    pub condition_a: Result<(), (usize, u32)>,
    pub counts: [(&'static str, Number); 3],
    pub mesh_counts: Option<(String, (usize, usize, usize, Option<usize>))>,
    pub geometry: Vec<(&'static str, Number)>,
    pub katz: Option<bool>,
    pub quadruple: Vec<(&'static str, Number)>,
    pub notes: Vec<String>,
}

fn irr(s: Irreducibility) -> &'static str {
    match s {
        Irreducibility::Certified => "certified",
        Irreducibility::HeuristicYes => "heuristic",
        Irreducibility::Asserted => "asserted",
        Irreducibility::Unknown => "unresolved",
    }
}

/// Permutations checked in verify mode; all of them up to three branches.
pub const VERIFY_ALL_UP_TO: usize = 3;
pub const VERIFY_SAMPLE: usize = 4;

fn verified_counts(r: &Resolved, cfg: &HomalgConfig, notes: &mut Vec<String>) -> Result<(Number, Number, Number), CliError> {
    let fl = &r.factors;
    let n = fl.len();
    let (rig, ct, sum) = count_formula(n);
    let full = n <= VERIFY_ALL_UP_TO;
    let rigid = indec_rigid_objects(fl, true, if full { Some(cfg) } else { None })?;
    if rigid.len() as u64 != rig {
        return Err(CliError::Verification(format!("{} indecomposable rigid objects, formula gives {rig}", rigid.len())));
    }
    let perms: Vec<Permutation> = if full {
        Permutation::all(n)
    } else {
        let all = Permutation::all(n);
        let step = all.len() / VERIFY_SAMPLE;
        all.into_iter().step_by(step.max(1)).take(VERIFY_SAMPLE).collect()
    };
    let mut seen = std::collections::BTreeSet::new();
    for w in &perms {
        let parts: Vec<MatrixFactorization> = cluster_tilting_summands(fl, w)?.into_iter().filter(|m| !m.is_free()).collect();
        verify_rigid_sum(&parts, cfg)?;
        if parts.len() as u64 != sum {
            return Err(CliError::Verification(format!("M_{w} has {} non-free summands, formula gives {sum}", parts.len())));
        }
        seen.insert(w.summand_sets());
    }
    if full {
        if seen.len() as u64 != ct {
            return Err(CliError::Verification(format!("{} distinct M_w, formula gives {ct}", seen.len())));
        }
        Ok((
            Number::new(rig, Label::Verified, "Ext^1 vanishing on every candidate"),
            Number::new(ct, Label::Verified, "every M_w rigid, pairwise distinct"),
            Number::new(sum, Label::Verified, "summands of every M_w"),
        ))
    } else {
        notes.push(format!("verify: {} of {} permutations checked for rigidity", perms.len(), (1..=n as u64).product::<u64>()));
        Ok((
            Number::new(rig, Label::Formula, "2^n - 2; candidates enumerated, Ext not recomputed"),
            Number::new(ct, Label::Formula, "n!; sampled M_w verified rigid"),
            Number::new(sum, Label::Verified, "summands of the sampled M_w"),
        ))
    }
}

pub fn analyze(r: &Resolved, cfg: &HomalgConfig, verify: bool) -> Result<AnalysisReport, CliError> {
    let fl = &r.factors;
    let n = fl.len();
    let mut notes = Vec::new();
    let ords = fl.ords();
    let factors: Vec<FactorLine> =
        fl.to_strings().into_iter().zip(&ords).zip(fl.status()).map(|((text, &ord), &irreducibility)| FactorLine { text, ord, irreducibility }).collect();
    if factors.iter().any(|f| f.irreducibility == Irreducibility::Unknown) {
        notes.push("irreducibility of some factors is unresolved; the analysis treats them as irreducible (asserted)".into());
    }
    let condition_a = match ords.iter().position(|&o| o != 1) {
        Some(i) => Err((i + 1, ords[i])),
        None => Ok(()),
    };
    let has_ct = condition_a.is_ok();
    let mesh_counts = r.quiver().map(|q| (r.mesh.clone().unwrap(), enumerate_rigid(&q).counts()));

    let mut counts = if has_ct {
        let (rig, ct, sum) = count_formula(n);
        [
            ("indecomposable rigid", Number::new(rig, Label::Formula, "2^n - 2")),
            ("basic cluster tilting", Number::new(ct, Label::Formula, "n!")),
            ("summands", Number::new(sum, Label::Formula, "n - 1")),
        ]
    } else {
        [
            ("indecomposable rigid", Number::new(None, Label::Unverified, "no formula without condition (A)")),
            ("basic cluster tilting", Number::new(0, Label::Formula, "condition (A) fails")),
            ("summands", Number::new(None, Label::Unverified, "no formula without condition (A)")),
        ]
    };
    if has_ct && verify {
        let (a, b, c) = verified_counts(r, cfg, &mut notes)?;
        counts = [("indecomposable rigid", a), ("basic cluster tilting", b), ("summands", c)];
    }
    if let Some((name, (rig, ct, _, sum))) = &mesh_counts {
        let mesh = [Some(*rig as u64), Some(*ct as u64), sum.map(|s| s as u64)];
        for (slot, m) in counts.iter_mut().zip(mesh) {
            let n = &mut slot.1;
            if n.value.is_none() {
                *n = Number::new(m, Label::Verified, format!("mesh engine on the AR quiver of {name}"));
            } else if n.value == m {
                n.label = Label::CrossChecked;
                n.source = format!("{}; mesh engine on {name} agrees", n.source);
            } else {
                return Err(CliError::Verification(format!("mesh engine on {name} gives {m:?}, formula gives {:?}", n.value)));
            }
        }
    }

    let mut geometry = Vec::new();
    let branches = match branch_count(fl) {
        Ok(b) => Number::new(b as u64, Label::Verified, "irreducibility of every factor resolved"),
        Err(_) => Number::new(n as u64, Label::Asserted, "some factors asserted irreducible"),
    };
    geometry.push(("branches", branches.clone()));
    let f = fl.product();
    let m = cam_type(&f).ok();
    geometry.push(("cA_m type m", Number::new(m.map(u64::from), Label::Formula, "ord(f) - 1")));
    match milnor_number(&f) {
        Ok(mu) => geometry.push(("Milnor number", Number::new(mu as u64, Label::Verified, "dim k[[x,y]]/J(f), stabilized"))),
        Err(e) => {
            geometry.push(("Milnor number", Number::new(None, Label::Unverified, e.to_string())));
        }
    }
    let katz = m.map(|m| branches.value == Some(m as u64 + 1));
    let mut quadruple = Vec::new();
    if has_ct {
        quadruple.push(("exceptional curves + 1", Number::new(n as u64, Label::Unverified, "geometric resolution not computed")));
        quadruple.push(("branches", branches));
        quadruple.push(("simples of an NCCR", Number::new(n as u64, Label::Unverified, "not computed")));
        let s = counts[2].1.value.map(|s| s + 1);
        quadruple.push(("1 + summands of a cluster tilting object", Number::new(s, Label::Formula, "1 + (n - 1)")));
    }
    Ok(AnalysisReport { input: r.label.clone(), factors, condition_a, counts, mesh_counts, geometry, katz, quadruple, notes })
}

impl AnalysisReport {
    pub fn verdict(&self) -> &'static str {
        if self.condition_a.is_ok() {
            "cluster tilting objects exist"
        } else {
            "no cluster tilting object"
        }
    }

    pub fn to_json(&self) -> Value {
        let list = |v: &[(&str, Number)]| -> Value {
            Value::Array(v.iter().map(|(k, n)| {
                let mut j = n.to_json();
                j["name"] = json!(k);
                j
            }).collect())
        };
        json!({
            "schema": mcmkit::JSON_SCHEMA,
            "input": self.input,
            "factors": self.factors.iter().map(|f| json!({"factor": f.text, "ord": f.ord, "irreducibility": irr(f.irreducibility)})).collect::<Vec<_>>(),
            "condition_a": match self.condition_a {
                Ok(()) => json!({"holds": true}),
                Err((i, o)) => json!({"holds": false, "factor": i, "ord": o}),
            },
            "verdict": self.verdict(),
            "counts": list(&self.counts),
            "geometry": list(&self.geometry),
            "katz": self.katz,
            "quadruple": list(&self.quadruple),
            "unverified": UNVERIFIED,
            "notes": self.notes,
        })
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "input: {}", self.input);
        let _ = writeln!(s, "factors:");
        for (i, f) in self.factors.iter().enumerate() {
            let _ = writeln!(s, "  f{} = {}  (ord {}, irreducibility {})", i + 1, f.text, f.ord, irr(f.irreducibility));
        }
        match self.condition_a {
            Ok(()) => {
                let _ = writeln!(s, "condition (A): holds (every factor has order 1)");
            }
            Err((i, o)) => {
                let _ = writeln!(s, "condition (A): fails (f{i} has order {o})");
            }
        }
        let _ = writeln!(s, "verdict: {}", self.verdict());
        let section = |s: &mut String, title: &str, v: &[(&str, Number)]| {
            let _ = writeln!(s, "{title}:");
            for (k, n) in v {
                let _ = writeln!(s, "  {k:<42} {:>4}  [{}] {}", n.show(), n.label.as_str(), n.source);
            }
        };
        section(&mut s, "counts", &self.counts);
        if let Some((name, c)) = &self.mesh_counts {
            let _ = writeln!(
                s,
                "  mesh engine on {name}: rigid {}, cluster tilting {}, maximal rigid {}, summands {}",
                c.0,
                c.1,
                c.2,
                c.3.map_or("-".into(), |x| x.to_string())
            );
        }
        section(&mut s, "geometry", &self.geometry);
        if let Some(k) = self.katz {
            let _ = writeln!(s, "  branches = m + 1: {k}  [verified]");
        }
        if !self.quadruple.is_empty() {
            section(&mut s, "equal quantities", &self.quadruple);
        }
        let _ = writeln!(s, "not checked:");
        for u in UNVERIFIED {
            let _ = writeln!(s, "  {u}  [unverified]");
        }
        for n in &self.notes {
            let _ = writeln!(s, "note: {n}");
        }
        s
    }
}
