//! Golden `Hom(X, -)` tables and their comparison against the mesh engine.

use mcmkit::arquiver::{curve_quiver, hammock, StableTranslationQuiver};

/// The bundled tables, `golden/hammocks.txt`.
pub const HAMMOCKS: &str = include_str!("../golden/hammocks.txt");

#[derive(Clone, Debug)]
pub struct Segment {
    pub offset: i64,
    pub vertices: Vec<usize>,
    pub cells: Vec<(i64, String, usize)>,
}

#[derive(Clone, Debug)]
pub struct Table {
    pub label: String,
    pub curve: String,
    pub source: String,
    pub source_row: usize,
    pub source_col: i64,
    pub rows: Vec<Vec<Segment>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub row: usize,
    pub col: i64,
    pub expected: String,
    pub got: String,
}

fn bad(line: usize, msg: &str) -> String {
    format!("line {line}: {msg}")
}

fn parse_row(text: &str, line: usize) -> Result<Vec<Segment>, String> {
    let mut out: Vec<Segment> = Vec::new();
    for tok in text.split_whitespace() {
        if let Some(rest) = tok.strip_prefix('@') {
            let (off, vs) = rest.split_once('[').ok_or_else(|| bad(line, "segment needs [vertices]"))?;
            let vertices = vs
                .trim_end_matches(']')
                .split(',')
                .map(|v| v.parse().map_err(|_| bad(line, "bad vertex")))
                .collect::<Result<Vec<usize>, _>>()?;
            let offset = off.parse().map_err(|_| bad(line, "bad offset"))?;
            out.push(Segment { offset, vertices, cells: Vec::new() });
        } else {
            let parts: Vec<&str> = tok.split(':').collect();
            let [col, name, value] = parts[..] else { return Err(bad(line, "cell is col:name:value")) };
            let cell = (
                col.parse().map_err(|_| bad(line, "bad column"))?,
                name.to_string(),
                value.parse().map_err(|_| bad(line, "bad value"))?,
            );
            out.last_mut().ok_or_else(|| bad(line, "cell before any segment"))?.cells.push(cell);
        }
    }
    Ok(out)
}

pub fn parse_tables(text: &str) -> Result<Vec<Table>, String> {
    let mut out: Vec<Table> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("table ") {
            let f: Vec<&str> = rest.splitn(5, ' ').collect();
            if f.len() < 4 {
                return Err(bad(i + 1, "table <curve> <source> <row> <col> [label]"));
            }
            out.push(Table {
                curve: f[0].into(),
                source: f[1].into(),
                source_row: f[2].parse().map_err(|_| bad(i + 1, "bad row"))?,
                source_col: f[3].parse().map_err(|_| bad(i + 1, "bad column"))?,
                label: f.get(4).map_or_else(|| format!("{} from {}", f[0], f[1]), |s| s.to_string()),
                rows: Vec::new(),
            });
        } else if line == "row" || line.starts_with("row ") {
            let segs = parse_row(&line[3..], i + 1)?;
            out.last_mut().ok_or_else(|| bad(i + 1, "row before table"))?.rows.push(segs);
        } else {
            return Err(bad(i + 1, "expected `table` or `row`"));
        }
    }
    Ok(out)
}

fn lift(q: &StableTranslationQuiver, vertices: &[usize], name: &str) -> Option<(i64, usize)> {
    let d = &q.diagram;
    (0..2 * d.coxeter())
        .flat_map(|c| vertices.iter().map(move |&v| (c, v)))
        .find(|&(c, v)| (c - d.parity(v)).rem_euclid(2) == 0 && q.name(q.orbit((c, v))) == name)
}

impl Table {
    /// Cells where the table and the computed hammock disagree.
    pub fn compare(&self) -> Result<Vec<Mismatch>, String> {
        let q = curve_quiver(&self.curve).map_err(|e| e.to_string())?;
        let d = &q.diagram;
        let src_vertices = &self.rows.get(self.source_row).and_then(|r| r.first()).ok_or("source row is empty")?.vertices;
        let source = lift(&q, src_vertices, &self.source).ok_or_else(|| format!("no lift of {}", self.source))?;
        let h = hammock(d, source, 2 * d.coxeter()).map_err(|e| e.to_string())?;
        let mut out = Vec::new();
        for (r, segs) in self.rows.iter().enumerate() {
            for seg in segs {
                for (col, name, value) in &seg.cells {
                    let c = source.0 + col - self.source_col + seg.offset;
                    let expected = format!("{name}={value}");
                    let Some(&v) = seg.vertices.iter().find(|&&v| (c - d.parity(v)).rem_euclid(2) == 0) else {
                        out.push(Mismatch { row: r, col: *col, expected, got: "no vertex of this parity".into() });
                        continue;
                    };
                    let got_name = q.name(q.orbit((c, v)));
                    let got = h.get((c, v));
                    if got != *value || (name != "_" && name != got_name) {
                        out.push(Mismatch { row: r, col: *col, expected, got: format!("{got_name}={got}") });
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn cells(&self) -> usize {
        self.rows.iter().flatten().map(|s| s.cells.len()).sum()
    }
}
