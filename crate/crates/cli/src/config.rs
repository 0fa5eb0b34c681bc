//! The `buk run` configuration file: a TOML document describing one
//! pipeline run.
//!
//! ```toml
//! mu = 2
//! target = [0]
//! kappa = 2
//!
//! # optional knobs
//! # domain_max_size = 3
//! # image_size = 1
//! # discover_dense = true
//! # domain_cap = 2000000
//! # fragment = ["a0", "(not a0)"]          # explicit fragment
//! # extra_dense = [["a0"], ["a0", "(not a0)"]]
//! # covering = [{ gamma = ["a0", "(not a0)"], g = ["a0"] }]
//! ```

use forcelab::bukovsky::{
    CoveringPolicy, FragmentPolicy, PipelineConfig, DEFAULT_DOMAIN_MAX_SIZE,
};
use forcelab::formula::{parse_formula, AtomUniverse, Formula};
use forcelab::semantics::Valuation;
use serde::Deserialize;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BukConfigFile {
    pub mu: usize,
    pub target: Vec<u32>,
    pub kappa: usize,
    pub domain_max_size: Option<usize>,
    pub image_size: Option<usize>,
    pub discover_dense: Option<bool>,
    pub domain_cap: Option<usize>,
    pub fragment: Option<Vec<String>>,
    pub extra_dense: Option<Vec<Vec<String>>>,
    pub covering: Option<Vec<CoveringEntryFile>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoveringEntryFile {
    pub gamma: Vec<String>,
    pub g: Vec<String>,
}

pub fn load_config(text: &str) -> Result<PipelineConfig, String> {
    let file: BukConfigFile = toml::from_str(text).map_err(|e| e.to_string())?;
    let u = AtomUniverse::new(file.mu);
    let target = Valuation::from_members(file.target.iter().copied(), file.mu)
        .map_err(|e| e.to_string())?;
    let parse_all = |texts: &[String]| -> Result<Vec<Formula>, String> {
        texts
            .iter()
            .map(|t| parse_formula(t, u).map_err(|e| format!("`{t}`: {e}")))
            .collect()
    };

    let mut cfg = PipelineConfig::new(u, target, file.kappa);
    if let Some(cap) = file.domain_cap {
        cfg.domain_cap = cap;
    }
    if let Some(d) = file.discover_dense {
        cfg.discover_dense = d;
    }
    if let Some(fs) = &file.fragment {
        cfg.fragment = FragmentPolicy::Explicit(parse_all(fs)?);
    }
    cfg.covering = match &file.covering {
        Some(entries) => {
            if file.domain_max_size.is_some() || file.image_size.is_some() {
                return Err(
                    "domain_max_size/image_size do not apply to an explicit covering".into()
                );
            }
            let mut map = Vec::new();
            for e in entries {
                map.push((parse_all(&e.gamma)?, parse_all(&e.g)?));
            }
            CoveringPolicy::Explicit(map)
        }
        None => CoveringPolicy::Synthesize {
            domain_max_size: file.domain_max_size.unwrap_or(DEFAULT_DOMAIN_MAX_SIZE),
            image_size: file.image_size,
        },
    };
    if let Some(dense) = &file.extra_dense {
        cfg.extra_dense = dense
            .iter()
            .map(|set| parse_all(set))
            .collect::<Result<Vec<_>, _>>()?;
    }
    Ok(cfg)
}
