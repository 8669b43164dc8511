//! Ext tables and mutation graphs.

use std::fmt::Write as _;

use mcmkit::cluster::{d_even_label, mutation_graph, MutationGraph};
use mcmkit::homalg::ext1_dim;
use mcmkit::HomalgConfig;
use serde_json::{json, Value};

use crate::error::CliError;
use crate::input::Resolved;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Engine {
    Symbolic,
    Mesh,
    Both,
}

impl std::str::FromStr for Engine {
    type Err = String;
    fn from_str(s: &str) -> Result<Engine, String> {
        match s {
            "symbolic" => Ok(Engine::Symbolic),
            "mesh" => Ok(Engine::Mesh),
            "both" => Ok(Engine::Both),
            _ => Err(format!("unknown engine `{s}`; expected symbolic, mesh or both")),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ExtTable {
    pub catalog: String,
    pub objects: Vec<String>,
    pub symbolic: Option<Vec<Vec<usize>>>,
    pub mesh: Option<Vec<Vec<usize>>>,
    /// Precision at which each symbolic entry stabilized.
    pub precision: Option<Vec<Vec<u32>>>,
}

pub fn ext_table(r: &Resolved, engine: Engine, cfg: &HomalgConfig) -> Result<ExtTable, CliError> {
    let want_sym = engine != Engine::Mesh;
    let want_mesh = engine != Engine::Symbolic;
    let entry = r.entry.as_ref();
    if want_sym && entry.is_none() {
        return Err(CliError::Usage("no symbolic presentations in catalog".into()));
    }
    let quiver = r.quiver();
    if want_mesh && quiver.is_none() {
        return Err(CliError::Usage(format!("no stable AR quiver for {}", r.label)));
    }
    let objects: Vec<String> = match (entry, &quiver) {
        (Some(e), _) => e.objects.iter().map(|o| o.name.clone()).collect(),
        (None, Some(q)) => {
            let mut names: Vec<String> = Vec::new();
            for i in 0..q.len() {
                if !names.iter().any(|n| n == q.name(i)) {
                    names.push(q.name(i).to_string());
                }
            }
            names
        }
        (None, None) => unreachable!(),
    };
    let (symbolic, precision) = if want_sym {
        let objs = &entry.unwrap().objects;
        let mut t = vec![vec![0; objs.len()]; objs.len()];
        let mut p = t.iter().map(|row| vec![0u32; row.len()]).collect::<Vec<_>>();
        for (i, a) in objs.iter().enumerate() {
            for (j, b) in objs.iter().enumerate() {
                let rep = ext1_dim(a, b, cfg)?;
                t[i][j] = rep.dimension;
                p[i][j] = rep.ladder.last().map_or(0, |s| s.0);
            }
        }
        (Some(t), Some(p))
    } else {
        (None, None)
    };
    let mesh = match (&quiver, want_mesh) {
        (Some(q), true) => {
            let mut idx = Vec::new();
            for o in &objects {
                idx.push(q.find(o).ok_or_else(|| CliError::Usage(format!("object {o} is not a vertex of the AR quiver")))?);
            }
            Some(idx.iter().map(|&i| idx.iter().map(|&j| q.ext1_dim(i, j)).collect()).collect())
        }
        _ => None,
    };
    Ok(ExtTable { catalog: r.label.clone(), objects, symbolic, mesh, precision })
}

impl ExtTable {
    pub fn agrees(&self) -> Option<bool> {
        Some(self.symbolic.as_ref()? == self.mesh.as_ref()?)
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({"schema": mcmkit::JSON_SCHEMA, "catalog": self.catalog, "objects": self.objects});
        if let Some(s) = &self.symbolic {
            v["symbolic"] = json!(s);
            v["symbolic_label"] = json!("verified");
            v["stabilized_at"] = json!(self.precision);
        }
        if let Some(m) = &self.mesh {
            v["mesh"] = json!(m);
            v["mesh_label"] = json!("verified");
        }
        if let Some(a) = self.agrees() {
            v["agree"] = json!(a);
        }
        v
    }

    pub fn render(&self) -> String {
        let mut s = format!("Ext^1 on {}\n", self.catalog);
        let w = self.objects.iter().map(|o| o.len()).max().unwrap_or(1).max(3);
        match (&self.symbolic, &self.mesh) {
            (Some(a), Some(b)) => {
                let _ = writeln!(s, "{:<w$} {:<w$} {:>8} {:>6} {:>6}", "X", "Y", "symbolic", "mesh", "agree");
                for (i, x) in self.objects.iter().enumerate() {
                    for (j, y) in self.objects.iter().enumerate() {
                        let ok = if a[i][j] == b[i][j] { "yes" } else { "NO" };
                        let _ = writeln!(s, "{x:<w$} {y:<w$} {:>8} {:>6} {:>6}", a[i][j], b[i][j], ok);
                    }
                }
            }
            (Some(t), None) | (None, Some(t)) => {
                let _ = write!(s, "{:<w$}", "");
                for o in &self.objects {
                    let _ = write!(s, " {o:>w$}");
                }
                s.push('\n');
                for (i, x) in self.objects.iter().enumerate() {
                    let _ = write!(s, "{x:<w$}");
                    for v in &t[i] {
                        let _ = write!(s, " {v:>w$}");
                    }
                    s.push('\n');
                }
                let _ = writeln!(s, "engine: {}", if self.symbolic.is_some() { "symbolic [verified]" } else { "mesh [verified]" });
            }
            (None, None) => {}
        }
        s
    }
}

/// Mutation graph of the cluster tilting objects `M_w`.
pub fn graph_for(r: &Resolved) -> Result<MutationGraph, CliError> {
    r.factors.condition_a()?;
    let g = mutation_graph(r.factors.len());
    let d_even = r.entry.as_ref().is_some_and(|e| e.name.starts_with("D_"));
    Ok(if d_even { g.with_labels(d_even_label) } else { g })
}

pub fn render_graph(g: &MutationGraph) -> String {
    let mut s = format!("{} vertices, {} edges", g.vertices.len(), g.edges.len());
    if g.is_cycle() {
        s.push_str(&format!(" ({}-cycle)", g.vertices.len()));
    }
    s.push('\n');
    for (i, l) in g.labels.iter().enumerate() {
        let _ = writeln!(s, "  v{i} {l}");
    }
    for &(u, v, i) in &g.edges {
        let _ = writeln!(s, "  v{u} -- v{v}  (mutation at {i})");
    }
    s
}

pub fn graph_json(g: &MutationGraph) -> Value {
    let mut v = g.to_json();
    v["schema"] = json!(mcmkit::JSON_SCHEMA);
    v["label"] = json!("formula");
    v
}
