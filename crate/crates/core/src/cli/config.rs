use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lambda::AdamsRing;
use crate::msk2::{Reading, DEFAULT_MAX_SIZE};
use crate::zrings::Params;

pub const DEFAULT_SEED: u64 = 20240613;

/// A named group of checks run by `verify`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    FpabCore,
    SringEquivalence,
    LambdaTransformations,
    FunctorTensorlike,
    Squares,
    K2lDecomposition,
    MsK2,
    /// Deliberately broken structure maps; always reports failures.
    NegativeControl,
}

impl Suite {
    pub const DEFAULT: [Suite; 7] = [
        Suite::FpabCore,
        Suite::SringEquivalence,
        Suite::LambdaTransformations,
        Suite::FunctorTensorlike,
        Suite::Squares,
        Suite::K2lDecomposition,
        Suite::MsK2,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::FpabCore => "fpab-core",
            Suite::SringEquivalence => "sring-equivalence",
            Suite::LambdaTransformations => "lambda-transformations",
            Suite::FunctorTensorlike => "functor-tensorlike",
            Suite::Squares => "squares",
            Suite::K2lDecomposition => "k2l-decomposition",
            Suite::MsK2 => "ms-k2",
            Suite::NegativeControl => "negative-control",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    #[default]
    Text,
    Json,
}

/// A catalog ring as written in the config; a cyclic group ring without `r`
/// uses `r = p` for each params triple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum RingEntry {
    Integers,
    TruncatedPoly { n: usize },
    CyclicGroupRing {
        #[serde(default)]
        r: Option<usize>,
    },
}

impl RingEntry {
    pub fn resolve(&self, p: u32) -> AdamsRing {
        match *self {
            RingEntry::Integers => AdamsRing::Integers,
            RingEntry::TruncatedPoly { n } => AdamsRing::TruncatedPoly { n },
            RingEntry::CyclicGroupRing { r } => AdamsRing::CyclicGroupRing { r: r.unwrap_or(p as usize) },
        }
    }
}

#[derive(Clone, Copy, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ParamsEntry {
    p: u32,
    e: u32,
    m: u32,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    params: Option<Vec<toml::Spanned<ParamsEntry>>>,
    rings: Option<Vec<toml::Spanned<RingEntry>>>,
    suites: Option<Vec<Suite>>,
    format: Option<Format>,
    seed: Option<u64>,
    max_ring_size: Option<u64>,
    ms_reading: Option<Reading>,
}

/// Everything a run depends on; two runs with equal configs produce equal JSON.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub params: Vec<Params>,
    pub rings: Vec<RingEntry>,
    pub suites: Vec<Suite>,
    pub format: Format,
    pub seed: u64,
    pub max_ring_size: u64,
    pub ms_reading: Reading,
}

/// Command-line values that take precedence over the file.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub format: Option<Format>,
    pub seed: Option<u64>,
    pub suites: Vec<Suite>,
    pub max_ring_size: Option<u64>,
}

pub fn default_params() -> Vec<Params> {
    [(2, 2, 2), (2, 2, 3), (3, 1, 1), (3, 1, 2)]
        .into_iter()
        .map(|(p, e, m)| Params::new(p, e, m).expect("default params are valid"))
        .collect()
}

pub fn default_rings() -> Vec<RingEntry> {
    vec![RingEntry::Integers, RingEntry::TruncatedPoly { n: 2 }, RingEntry::CyclicGroupRing { r: None }]
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            params: default_params(),
            rings: default_rings(),
            suites: Suite::DEFAULT.to_vec(),
            format: Format::Text,
            seed: DEFAULT_SEED,
            max_ring_size: DEFAULT_MAX_SIZE,
            ms_reading: Reading::default(),
        }
    }
}

fn line_of(src: &str, offset: usize) -> usize {
    src[..offset.min(src.len())].bytes().filter(|&b| b == b'\n').count() + 1
}

impl RunConfig {
    /// Parses a TOML config; errors name the offending line.
    pub fn from_toml(src: &str) -> Result<Self> {
        let file: ConfigFile = toml::from_str(src).map_err(|e| Error::Config(e.to_string().trim_end().to_string()))?;
        let mut cfg = RunConfig::default();
        if let Some(ps) = file.params {
            cfg.params = ps
                .iter()
                .enumerate()
                .map(|(i, s)| {
                    let v = s.get_ref();
                    Params::new(v.p, v.e, v.m).map_err(|e| {
                        Error::Config(format!("params[{i}] (line {}): {e}", line_of(src, s.span().start)))
                    })
                })
                .collect::<Result<_>>()?;
        }
        if let Some(rs) = file.rings {
            for (i, s) in rs.iter().enumerate() {
                let bad = match *s.get_ref() {
                    RingEntry::TruncatedPoly { n } => n == 0,
                    RingEntry::CyclicGroupRing { r } => r == Some(0),
                    RingEntry::Integers => false,
                };
                if bad {
                    return Err(Error::Config(format!(
                        "rings[{i}] (line {}): size parameter must be positive",
                        line_of(src, s.span().start)
                    )));
                }
            }
            cfg.rings = rs.into_iter().map(|s| s.into_inner()).collect();
        }
        if let Some(s) = file.suites {
            cfg.suites = s;
        }
        if let Some(f) = file.format {
            cfg.format = f;
        }
        if let Some(s) = file.seed {
            cfg.seed = s;
        }
        if let Some(b) = file.max_ring_size {
            cfg.max_ring_size = b;
        }
        if let Some(r) = file.ms_reading {
            cfg.ms_reading = r;
        }
        Ok(cfg)
    }

    pub fn apply(&mut self, o: &Overrides) {
        if let Some(f) = o.format {
            self.format = f;
        }
        if let Some(s) = o.seed {
            self.seed = s;
        }
        if !o.suites.is_empty() {
            self.suites = o.suites.clone();
        }
        if let Some(b) = o.max_ring_size {
            self.max_ring_size = b;
        }
    }

    /// Distinct primes among the params, in first-seen order.
    pub fn primes(&self) -> Vec<u32> {
        let mut out: Vec<u32> = Vec::new();
        for pr in &self.params {
            if !out.contains(&pr.p) {
                out.push(pr.p);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_two_is_rejected_with_location() {
        let src = "seed = 1\n\n[[params]]\np = 3\ne = 1\nm = 1\n\n[[params]]\np = 2\ne = 1\nm = 1\n";
        let err = RunConfig::from_toml(src).unwrap_err().to_string();
        assert!(err.contains("q>2 required"), "{err}");
        assert!(err.contains("params[1]"), "{err}");
        assert!(err.contains("line 8"), "{err}");
    }

    #[test]
    fn file_values_and_overrides() {
        let src = r#"
            format = "json"
            suites = ["ms-k2"]
            rings = [{ kind = "cyclic-group-ring" }, { kind = "truncated-poly", n = 3 }]
        "#;
        let mut cfg = RunConfig::from_toml(src).unwrap();
        assert_eq!(cfg.format, Format::Json);
        assert_eq!(cfg.rings[0].resolve(3), AdamsRing::CyclicGroupRing { r: 3 });
        assert_eq!(cfg.params, default_params());
        cfg.apply(&Overrides { seed: Some(5), suites: vec![Suite::Squares], ..Default::default() });
        assert_eq!((cfg.seed, cfg.suites.clone()), (5, vec![Suite::Squares]));
        assert!(RunConfig::from_toml("bogus = 1").is_err());
        assert!(RunConfig::from_toml("rings = [{ kind = \"truncated-poly\", n = 0 }]").is_err());
    }
}
