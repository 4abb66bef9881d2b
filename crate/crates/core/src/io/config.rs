//! Run configuration files (TOML) and their content hash.

use std::path::Path;

use sha2::{Digest, Sha256};

use crate::capacity::SimConfig;
use crate::error::{Error, Result};

pub fn parse_config(text: &str) -> Result<SimConfig> {
    let config: SimConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
    config.validate()?;
    Ok(config)
}

pub fn load_config(path: &Path) -> Result<SimConfig> {
    let text = std::fs::read_to_string(path)?;
    parse_config(&text).map_err(|e| match e {
        Error::Config(m) => Error::Config(format!("{}: {m}", path.display())),
        other => other,
    })
}

/// SHA-256 of the canonical JSON form. The worker count is not part of it.
pub fn config_hash(config: &SimConfig) -> String {
    let json = serde_json::to_string(config).expect("config serializes");
    hex::encode(Sha256::digest(json.as_bytes()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::capacity::{InputKind, Matching};

    #[test]
    fn empty_file_gives_defaults() {
        assert_eq!(parse_config("").unwrap(), SimConfig::default());
    }

    #[test]
    fn values_and_unknown_keys() {
        let c = parse_config("n = 4\nspacings = [0.1, 0.2]\nmatching = \"perfect\"\ninput = \"model\"\nfit_band = [0.9, 1.1]\n").unwrap();
        assert_eq!(c.n, 4);
        assert_eq!(c.matching, Matching::Perfect);
        assert_eq!(c.input, InputKind::Model);
        assert!(matches!(parse_config("colour = 3\n"), Err(Error::Config(_))));
        assert!(matches!(parse_config("[grid]\npoints = 10\nextra = 1\n"), Err(Error::Config(_))));
        assert!(matches!(parse_config("spacings = []\n"), Err(Error::Config(_))));
    }

    #[test]
    fn hash_ignores_workers_only() {
        let base = SimConfig::default();
        let h = config_hash(&base);
        assert_eq!(h.len(), 64);
        assert_eq!(config_hash(&SimConfig { workers: 7, ..base.clone() }), h);
        let variants = [
            SimConfig { n: 3, ..base.clone() },
            SimConfig { spacings: vec![0.1], ..base.clone() },
            SimConfig { subcarriers: 32, ..base.clone() },
            SimConfig { bandwidth_hz: 10e6, ..base.clone() },
            SimConfig { relative_bandwidth: 0.03, ..base.clone() },
            SimConfig { snr_db: 11.0, ..base.clone() },
            SimConfig { t_antenna: 1.5, ..base.clone() },
            SimConfig { t_forward: 1.0, ..base.clone() },
            SimConfig { t_reverse: 0.5, ..base.clone() },
            SimConfig { realizations: 4000, ..base.clone() },
            SimConfig { outage_level: 0.05, ..base.clone() },
            SimConfig { seed: 2, ..base.clone() },
            SimConfig { retune: false, ..base.clone() },
            SimConfig { taps: vec![1.0; 4], ..base.clone() },
            SimConfig { plane_waves: 64, ..base.clone() },
            SimConfig { coupling: false, ..base.clone() },
            SimConfig { correlation: false, ..base.clone() },
            SimConfig { matching: Matching::Perfect, ..base.clone() },
            SimConfig { fit_band: [0.9, 1.1], ..base.clone() },
            SimConfig { input: InputKind::Fixture, ..base.clone() },
            SimConfig { isolated: Some([73.0, 6.0, 1.0]), ..base.clone() },
        ];
        let mut seen = std::collections::HashSet::new();
        seen.insert(h);
        for v in variants {
            assert!(seen.insert(config_hash(&v)), "{v:?}");
        }
    }

    #[test]
    fn toml_round_trip() {
        let c = SimConfig {
            isolated: Some([73.0, 6.0, 1.0]),
            ..SimConfig::default()
        };
        let text = toml::to_string(&c).unwrap();
        assert_eq!(parse_config(&text).unwrap(), c);
    }
}
