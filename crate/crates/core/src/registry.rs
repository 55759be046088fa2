//! The persisted wiring registry (`wirings.json`): the frozen
//! [`GadgetWiring`], content digests of the gadgets it produces, and a
//! digest of the checks it passed. Loading recomputes every digest and
//! refuses a file that no longer matches the builders.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::constructions::wiring::CHECKS;
use crate::constructions::{build_j, build_m_variant, build_n_variant, build_y, build_z_variant, GadgetWiring};
use crate::error::{Error, Result};
use crate::io::digest;

pub const FORMAT_VERSION: u32 = 1;
pub const ENV_VAR: &str = "SNARK_REGISTRY";
pub const DEFAULT_FILE: &str = "wirings.json";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Registry {
    pub format_version: u32,
    pub wiring: GadgetWiring,
    /// sha256 of the canonical JSON of `M`, `N`, `Z`, `Y_1` and `J`.
    pub digests: BTreeMap<String, String>,
    pub checks: Vec<String>,
    /// sha256 over the wiring and the check names.
    pub check_digest: String,
}

fn check_digest(w: &GadgetWiring, checks: &[String]) -> Result<String> {
    let mut h = Sha256::new();
    h.update(serde_json::to_vec(w)?);
    for c in checks {
        h.update(b"\n");
        h.update(c.as_bytes());
    }
    Ok(hex::encode(h.finalize()))
}

impl Registry {
    /// Registry contents for `w`, computed from the builders.
    pub fn for_wiring(w: &GadgetWiring) -> Result<Registry> {
        w.check_shape()?;
        let mut digests = BTreeMap::new();
        digests.insert("M".to_string(), digest(&build_m_variant(w.m_variant)));
        digests.insert("N".to_string(), digest(&build_n_variant(w.n_variant)));
        digests.insert("Z".to_string(), digest(&build_z_variant(w.m_variant, w.n_variant)));
        digests.insert("Y_1".to_string(), digest(&build_y(1, w)?.graph));
        digests.insert("J".to_string(), digest(&build_j(w)?.graph));
        let checks: Vec<String> = CHECKS.iter().map(|s| s.to_string()).collect();
        Ok(Registry {
            format_version: FORMAT_VERSION,
            wiring: *w,
            check_digest: check_digest(w, &checks)?,
            digests,
            checks,
        })
    }

    pub fn frozen() -> Result<Registry> {
        Self::for_wiring(&GadgetWiring::frozen())
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data");
        s.push('\n');
        s
    }

    /// Parses and validates: the version must not be newer than this build
    /// and every digest must match what the builders produce now.
    pub fn parse(text: &str) -> Result<Registry> {
        let reg: Registry = serde_json::from_str(text)?;
        if reg.format_version == 0 || reg.format_version > FORMAT_VERSION {
            return Err(Error::Registry(format!(
                "unsupported format version {}",
                reg.format_version
            )));
        }
        let fresh = Self::for_wiring(&reg.wiring)?;
        for (name, want) in &fresh.digests {
            match reg.digests.get(name) {
                Some(got) if got == want => {}
                Some(got) => {
                    return Err(Error::Registry(format!(
                        "digest of {name} is {got}, builders give {want}"
                    )))
                }
                None => return Err(Error::Registry(format!("missing digest for {name}"))),
            }
        }
        if reg.digests.len() != fresh.digests.len() {
            return Err(Error::Registry("unexpected digest entries".into()));
        }
        if check_digest(&reg.wiring, &reg.checks)? != reg.check_digest {
            return Err(Error::Registry("check digest mismatch".into()));
        }
        Ok(reg)
    }

    pub fn load(path: &Path) -> Result<Registry> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json())?;
        Ok(())
    }

    /// `$SNARK_REGISTRY`, or `wirings.json` in the working directory.
    pub fn default_path() -> PathBuf {
        std::env::var_os(ENV_VAR)
            .map(PathBuf::from)
            .unwrap_or_else(|| PathBuf::from(DEFAULT_FILE))
    }

    /// The registry at `path` if the file exists (a bad file is an error),
    /// otherwise the built-in frozen one.
    pub fn load_or_frozen(path: &Path) -> Result<Registry> {
        if path.exists() {
            Self::load(path)
        } else {
            Self::frozen()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_tamper_detection() {
        let reg = Registry::frozen().unwrap();
        let text = reg.to_json();
        assert_eq!(Registry::parse(&text).unwrap(), reg);

        let mut bad = reg.clone();
        bad.digests.insert("Z".into(), "00".repeat(32));
        assert!(matches!(Registry::parse(&bad.to_json()), Err(Error::Registry(_))));

        let mut drift = reg.clone();
        drift.wiring.outputs ^= 1;
        assert!(Registry::parse(&drift.to_json()).is_err());

        let mut newer = reg;
        newer.format_version = FORMAT_VERSION + 1;
        assert!(Registry::parse(&newer.to_json()).is_err());
    }
}
