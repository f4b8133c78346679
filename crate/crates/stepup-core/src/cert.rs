//! Verification certificates: what was checked, over which scope, and the
//! verdict, as JSON with stable key order so byte-level comparison works.
//!
//! Wall-clock time is deliberately opt-in: certificates from identical seeds
//! and inputs must be byte-identical across runs, and a timestamp would break
//! that. Pass `wall_ms` only when the caller asked for timings.

use serde::Serialize;
use sha2::{Digest, Sha256};

pub const TOOL_VERSION: &str = concat!("stepup ", env!("CARGO_PKG_VERSION"));

/// What part of the subset space a verifier actually enumerated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Scope {
    /// Every subset of the ground set.
    Full,
    /// Subsets drawn from the vertex interval [lo, hi).
    Window { lo: u64, hi: u64 },
    /// `count` subsets drawn from a seeded generator.
    Sample { seed: u64, count: u64 },
}

impl Scope {
    /// Accepts `full`, `window:LO:HI`, `sample:SEED:COUNT`.
    pub fn parse(s: &str) -> Result<Scope, String> {
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            ["full"] => Ok(Scope::Full),
            ["window", lo, hi] => {
                let lo = lo.parse().map_err(|_| format!("bad window lower bound `{lo}`"))?;
                let hi = hi.parse().map_err(|_| format!("bad window upper bound `{hi}`"))?;
                if lo >= hi {
                    return Err(format!("empty window {lo}:{hi}"));
                }
                Ok(Scope::Window { lo, hi })
            }
            ["sample", seed, count] => {
                let seed = seed.parse().map_err(|_| format!("bad sample seed `{seed}`"))?;
                let count = count.parse().map_err(|_| format!("bad sample count `{count}`"))?;
                Ok(Scope::Sample { seed, count })
            }
            _ => Err(format!("unknown scope `{s}` (full | window:lo:hi | sample:seed:count)")),
        }
    }
}

impl std::fmt::Display for Scope {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Scope::Full => write!(f, "full"),
            Scope::Window { lo, hi } => write!(f, "window:{lo}:{hi}"),
            Scope::Sample { seed, count } => write!(f, "sample:{seed}:{count}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// How the verified object was built: rule name, parameters, and the digest
/// of any base file so the certificate pins its exact inputs.
#[derive(Debug, Clone, Serialize)]
pub struct Construction {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub uniformity: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ground: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub base_path: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub base_sha256: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub params: Option<serde_json::Value>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Certificate {
    pub task: String,
    pub version: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub construction: Option<Construction>,
    pub property: String,
    pub scope: Scope,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<u64>,
}

impl Certificate {
    pub fn new(task: impl Into<String>, property: impl Into<String>, scope: Scope, pass: bool) -> Self {
        Certificate {
            task: task.into(),
            version: TOOL_VERSION,
            construction: None,
            property: property.into(),
            scope,
            verdict: if pass { Verdict::Pass } else { Verdict::Fail },
            witness: None,
            wall_ms: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    /// Pretty JSON with a trailing newline; keys in declaration order.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("certificate serializes");
        s.push('\n');
        s
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    let mut out = String::with_capacity(64);
    for b in digest {
        out.push_str(&format!("{b:02x}"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scope_roundtrip() {
        for s in ["full", "window:0:64", "sample:7:1000"] {
            assert_eq!(Scope::parse(s).unwrap().to_string(), s);
        }
        assert!(Scope::parse("window:9:3").is_err());
        assert!(Scope::parse("everything").is_err());
    }

    #[test]
    fn certificate_json_is_stable() {
        let mut c = Certificate::new("verify.example", "no counterexample", Scope::Full, true);
        c.witness = None;
        let a = c.to_json();
        let b = c.to_json();
        assert_eq!(a, b);
        assert!(a.contains("\"verdict\": \"pass\""));
        assert!(!a.contains("wall_ms"), "timing must be opt-in");
        assert!(a.ends_with('\n'));
    }

    #[test]
    fn digest_is_hex() {
        let d = sha256_hex(b"abc");
        assert_eq!(d.len(), 64);
        assert_eq!(&d[..8], "ba7816bf");
    }
}
