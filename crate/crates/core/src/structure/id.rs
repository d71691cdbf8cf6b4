use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{MascotError, Result};

/// A PDB entry code with an optional chain selector, e.g. `1TTQ:B` or `7ACN`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StructureId {
    code: String,
    chain: Option<char>,
}

impl StructureId {
    pub fn new(code: &str, chain: Option<char>) -> Result<Self> {
        let token = match chain {
            Some(c) => format!("{code}:{c}"),
            None => code.to_string(),
        };
        if code.len() != 4 || !code.chars().all(|c| c.is_ascii_alphanumeric()) {
            return Err(MascotError::InputFormat {
                token,
                reason: "entry code must be exactly 4 alphanumeric characters".into(),
            });
        }
        if let Some(c) = chain {
            if !c.is_ascii_graphic() {
                return Err(MascotError::InputFormat {
                    token,
                    reason: "chain must be one printable character".into(),
                });
            }
        }
        Ok(StructureId {
            code: code.to_ascii_uppercase(),
            chain,
        })
    }

    /// Uppercased 4-character entry code.
    pub fn code(&self) -> &str {
        &self.code
    }

    pub fn chain(&self) -> Option<char> {
        self.chain
    }

    /// Stem used for per-structure output files: `1TTQ_B` or `7ACN`.
    pub fn file_stem(&self) -> String {
        match self.chain {
            Some(c) => format!("{}_{}", self.code, c),
            None => self.code.clone(),
        }
    }
}

/// Parses a `CODE` or `CODE:CHAIN` token.
pub fn parse_structure_spec(token: &str) -> Result<StructureId> {
    let trimmed = token.trim();
    if trimmed.is_empty() {
        return Err(MascotError::InputFormat {
            token: token.to_string(),
            reason: "empty token".into(),
        });
    }
    let bad = |reason: &str| MascotError::InputFormat {
        token: token.to_string(),
        reason: reason.to_string(),
    };
    match trimmed.split_once(':') {
        None => StructureId::new(trimmed, None).map_err(|_| bad("entry code must be exactly 4 alphanumeric characters")),
        Some((code, chain)) => {
            let mut chars = chain.chars();
            let c = match (chars.next(), chars.next()) {
                (Some(c), None) => c,
                (None, _) => return Err(bad("empty chain after ':'")),
                (Some(_), Some(_)) => return Err(bad("chain must be a single character")),
            };
            StructureId::new(code, Some(c)).map_err(|e| match e {
                MascotError::InputFormat { reason, .. } => bad(&reason),
                other => other,
            })
        }
    }
}

impl FromStr for StructureId {
    type Err = MascotError;

    fn from_str(s: &str) -> Result<Self> {
        parse_structure_spec(s)
    }
}

impl fmt::Display for StructureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.chain {
            Some(c) => write!(f, "{}:{}", self.code, c),
            None => f.write_str(&self.code),
        }
    }
}

impl Serialize for StructureId {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}
