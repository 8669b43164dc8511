use mcmkit::{FieldChoice, HomalgConfig};

/// Flags that override the environment.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub precision_max: Option<u32>,
    pub field: Option<String>,
}

/// Flags, then `MF_PRECISION_MAX` / `MF_FIELD`, then the defaults.
pub fn resolve(o: &Overrides) -> Result<HomalgConfig, String> {
    let mut c = HomalgConfig::from_env()?;
    if let Some(cap) = o.precision_max {
        c.cap = cap;
    }
    if let Some(f) = &o.field {
        c.field = f.parse::<FieldChoice>()?;
    }
    if c.ladder.iter().all(|&n| n > c.cap) {
        return Err(format!("precision cap {} is below the first ladder step {}", c.cap, c.ladder[0]));
    }
    Ok(c)
}
