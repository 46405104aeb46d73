//! Certificate documents: a certificate together with the input it certifies.

use anyhow::{bail, Result};
use serde::{Deserialize, Serialize};
use solvcert_core::gate::{verify_certificate, Certificate};
use solvcert_core::seifert::MetabolizerSearch;

use crate::spec::{load, spec_hash, DerivedBlock, KnotSpec};

pub const TOOL: &str = "solvcert";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateDoc {
    pub tool: String,
    pub version: String,
    pub input_sha256: String,
    pub issued_at: String,
    pub input: KnotSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub derived: Option<DerivedBlock>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub certificate: Certificate,
}

impl CertificateDoc {
    pub fn new(input: KnotSpec, derived: Option<DerivedBlock>, notes: Vec<String>, certificate: Certificate, issued_at: String) -> Self {
        CertificateDoc {
            tool: TOOL.into(),
            version: env!("CARGO_PKG_VERSION").into(),
            input_sha256: spec_hash(&input),
            issued_at,
            input,
            derived,
            notes,
            certificate,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// Re-checks the hash, the derived block and every witness.
    pub fn verify(&self) -> Result<()> {
        if self.tool != TOOL {
            bail!("not a {TOOL} certificate");
        }
        if spec_hash(&self.input) != self.input_sha256 {
            bail!("input hash does not match the embedded input");
        }
        let loaded = load(&self.input, self.derived.as_ref(), MetabolizerSearch::default())?;
        if loaded.derived != self.derived {
            bail!("derived block recorded for an input that does not need one");
        }
        if !verify_certificate(&self.certificate, &loaded.input) {
            bail!("certificate witnesses do not check out");
        }
        Ok(())
    }
}
