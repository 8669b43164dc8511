//! Turning catalog names, equations and factor lists into analysis input.

use mcmkit::arquiver::curve_quiver;
use mcmkit::cluster::{curve_factors, Curve, D_EVEN_NAMES};
use mcmkit::matfac::{catalog, mf_subset, CatalogEntry, CatalogParams, CATALOG_NAMES};
use mcmkit::{FactorList, ParseOptions, Rational, StableTranslationQuiver};

use crate::error::CliError;

/// Catalog parameters as given on the command line.
#[derive(Clone, Debug, Default)]
pub struct Params {
    pub n: Option<u32>,
    pub p: Option<u32>,
    pub q: Option<u32>,
    pub lambda: Option<String>,
}

impl Params {
    pub fn lambda(&self) -> Result<Option<Rational>, CliError> {
        self.lambda
            .as_deref()
            .map(|l| l.trim().parse::<Rational>().map_err(|_| CliError::Parse(format!("bad lambda `{l}`"))))
            .transpose()
    }

    fn catalog_params(&self) -> Result<CatalogParams, CliError> {
        Ok(CatalogParams { n: self.n, p: self.p, q: self.q, lambda: self.lambda()?, lambdas: Vec::new() })
    }
}

/// What an input resolved to.
pub struct Resolved {
    pub label: String,
    pub factors: FactorList,
    /// Printed presentations, when the catalog has them.
    pub entry: Option<CatalogEntry>,
    /// Name of the stable AR quiver, when the curve is simple.
    pub mesh: Option<String>,
}

impl Resolved {
    pub fn quiver(&self) -> Option<StableTranslationQuiver> {
        self.mesh.as_deref().and_then(|m| curve_quiver(m).ok())
    }
}

pub fn from_equation(text: &str, compact: bool) -> Result<Resolved, CliError> {
    let factors = FactorList::parse_product_with(text, ParseOptions { compact })?;
    Ok(Resolved { label: text.trim().to_string(), factors, entry: None, mesh: None })
}

pub fn from_factors(texts: &[String]) -> Result<Resolved, CliError> {
    let refs: Vec<&str> = texts.iter().map(String::as_str).collect();
    let factors = FactorList::parse(&refs)?;
    Ok(Resolved { label: format!("{factors}"), factors, entry: None, mesh: None })
}

fn curve_of(name: &str, lambda: Option<Rational>) -> Option<Curve> {
    let t = name.trim();
    let (head, rest) = t.split_at(1.min(t.len()));
    let num = |s: &str| s.parse::<u32>().ok();
    match head {
        "A" => num(rest).map(Curve::A),
        "D" => num(rest).map(Curve::D),
        "E" => num(rest).map(Curve::E),
        "T" => {
            let (p, q) = rest.split_once(',')?;
            Some(Curve::T(num(p)?, num(q)?, lambda.unwrap_or_else(|| mcmkit::scalar::rat(2))))
        }
        _ => None,
    }
}

/// Catalog objects of the split `D_{2n+2}` curve carry the names of the
/// drawn AR quiver.
pub fn name_d_even(mut e: CatalogEntry) -> CatalogEntry {
    for o in &mut e.objects {
        if let Some((n, _)) = D_EVEN_NAMES.iter().find(|(_, s)| {
            let m = mf_subset(&e.factors, s);
            m.a == o.a && m.b == o.b
        }) {
            o.name = n.to_string();
        }
    }
    e
}

pub fn from_catalog(name: &str, params: &Params) -> Result<Resolved, CliError> {
    if CATALOG_NAMES.contains(&name) {
        let mut e = catalog(name, &params.catalog_params()?)?;
        let mesh = match name {
            "E7" => Some("E7".to_string()),
            "A_odd" => Some(format!("A{}", params.n.unwrap_or(5))),
            "D_even_split" => {
                e = name_d_even(e);
                Some(format!("D{}", 2 * params.n.unwrap_or(1) + 2))
            }
            _ => None,
        };
        let factors = FactorList::new(e.factors.clone())?;
        return Ok(Resolved { label: e.name.clone(), factors, entry: Some(e), mesh });
    }
    let curve = curve_of(name, params.lambda()?).ok_or_else(|| {
        CliError::Usage(format!("unknown catalog `{name}`; known: {}, or a curve A<n>, D<n>, E6, E7, E8, T<p>,<q>", CATALOG_NAMES.join(", ")))
    })?;
    let factors = curve_factors(&curve).map_err(|e| CliError::Usage(e.to_string()))?;
    let mesh = curve_quiver(name).ok().map(|_| name.to_string());
    Ok(Resolved { label: curve.to_string(), factors, entry: None, mesh })
}
