//! Outcome records for identity verification runs.

use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

/// Labels for every verifiable identity, plus the four classical bivariate
/// product identities underlying them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum IdentityId {
    #[serde(rename = "OS1")]
    Os1,
    #[serde(rename = "OS2")]
    Os2,
    #[serde(rename = "THM-QUIN")]
    ThmQuin,
    #[serde(rename = "LEM-QUIN")]
    LemQuin,
    #[serde(rename = "COR-QUIN")]
    CorQuin,
    #[serde(rename = "THM-SEPT-14")]
    ThmSept14,
    #[serde(rename = "THM-SEPT-23")]
    ThmSept23,
    #[serde(rename = "LEM-SEPT-14")]
    LemSept14,
    #[serde(rename = "LEM-SEPT-23")]
    LemSept23,
    #[serde(rename = "COR-SEPT-14")]
    CorSept14,
    #[serde(rename = "COR-SEPT-23")]
    CorSept23,
    #[serde(rename = "JTP1")]
    Jtp1,
    #[serde(rename = "JTP2")]
    Jtp2,
    #[serde(rename = "THM16")]
    Thm16,
    #[serde(rename = "QUINTUPLE")]
    QuintupleProduct,
    #[serde(rename = "SEPTUPLE")]
    SeptupleProduct,
    #[serde(rename = "JTP-ODD")]
    JtpOddForm,
    #[serde(rename = "JTP-EVEN")]
    JtpEvenForm,
}

impl IdentityId {
    pub const ALL: [IdentityId; 18] = [
        IdentityId::Os1,
        IdentityId::Os2,
        IdentityId::ThmQuin,
        IdentityId::LemQuin,
        IdentityId::CorQuin,
        IdentityId::ThmSept14,
        IdentityId::ThmSept23,
        IdentityId::LemSept14,
        IdentityId::LemSept23,
        IdentityId::CorSept14,
        IdentityId::CorSept23,
        IdentityId::Jtp1,
        IdentityId::Jtp2,
        IdentityId::Thm16,
        IdentityId::QuintupleProduct,
        IdentityId::SeptupleProduct,
        IdentityId::JtpOddForm,
        IdentityId::JtpEvenForm,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            IdentityId::Os1 => "OS1",
            IdentityId::Os2 => "OS2",
            IdentityId::ThmQuin => "THM-QUIN",
            IdentityId::LemQuin => "LEM-QUIN",
            IdentityId::CorQuin => "COR-QUIN",
            IdentityId::ThmSept14 => "THM-SEPT-14",
            IdentityId::ThmSept23 => "THM-SEPT-23",
            IdentityId::LemSept14 => "LEM-SEPT-14",
            IdentityId::LemSept23 => "LEM-SEPT-23",
            IdentityId::CorSept14 => "COR-SEPT-14",
            IdentityId::CorSept23 => "COR-SEPT-23",
            IdentityId::Jtp1 => "JTP1",
            IdentityId::Jtp2 => "JTP2",
            IdentityId::Thm16 => "THM16",
            IdentityId::QuintupleProduct => "QUINTUPLE",
            IdentityId::SeptupleProduct => "SEPTUPLE",
            IdentityId::JtpOddForm => "JTP-ODD",
            IdentityId::JtpEvenForm => "JTP-EVEN",
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for IdentityId {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        IdentityId::ALL
            .iter()
            .find(|id| id.as_str().eq_ignore_ascii_case(s))
            .copied()
            .ok_or_else(|| format!("unknown identity id: {s}"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Outcome {
    #[serde(rename = "exact-to-order")]
    ExactToOrder,
    #[serde(rename = "valid-to-claimed-order")]
    ValidToClaimedOrder,
    #[serde(rename = "mismatch")]
    Mismatch,
}

impl Outcome {
    pub fn as_str(&self) -> &'static str {
        match self {
            Outcome::ExactToOrder => "exact-to-order",
            Outcome::ValidToClaimedOrder => "valid-to-claimed-order",
            Outcome::Mismatch => "mismatch",
        }
    }

    pub fn passed(&self) -> bool {
        !matches!(self, Outcome::Mismatch)
    }
}

/// Record of one verification run at one parameter cell.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub identity: IdentityId,
    pub params: BTreeMap<String, i64>,
    pub order: i64,
    pub outcome: Outcome,
    pub first_mismatch: Option<i64>,
    pub millis: u128,
    pub variant: Option<String>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.outcome.passed()
    }

    /// Stable `key=value` rendering of the parameter cell.
    pub fn params_str(&self) -> String {
        self.params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

pub fn params(kv: &[(&str, i64)]) -> BTreeMap<String, i64> {
    kv.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}
