//! JSON object documents, tagged by `kind`.

use serde::{Deserialize, Serialize};
use statone_core::bauer::BauerCertificate;
use statone_core::simplex::IntertwiningCertificate;
use statone_core::stone::BooleanDualityCertificate;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Document {
    Product {
        chains: Vec<u32>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        sigma: Option<Vec<usize>>,
    },
    Table {
        oplus: Vec<Vec<usize>>,
        star: Vec<usize>,
        zero: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        tau: Option<Vec<usize>>,
    },
    Stone {
        points: Vec<String>,
        g: Vec<usize>,
    },
    Bauer {
        vertices: usize,
        g: Vec<usize>,
    },
    Cube {
        dim: usize,
        sigma: Vec<usize>,
    },
    BooleanCertificate {
        certificate: BooleanDualityCertificate,
    },
    BauerCertificate {
        certificate: BauerCertificate,
    },
    IntertwiningCertificate {
        certificate: IntertwiningCertificate,
    },
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Product { .. } => "product",
            Document::Table { .. } => "table",
            Document::Stone { .. } => "stone",
            Document::Bauer { .. } => "bauer",
            Document::Cube { .. } => "cube",
            Document::BooleanCertificate { .. } => "boolean-certificate",
            Document::BauerCertificate { .. } => "bauer-certificate",
            Document::IntertwiningCertificate { .. } => "intertwining-certificate",
        }
    }

    pub fn parse(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents always serialize");
        s.push('\n');
        s
    }
}
