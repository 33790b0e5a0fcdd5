//! Fano threefolds with `b2 ≤ 3` and which of them have elliptic homotopy
//! type.
//!
//! A Fano threefold has no holomorphic forms, so its Hodge diamond is
//! fixed by `b2` and `b3`; it is elliptic exactly when `b3 = 0` and
//! `b2 ∈ {1, 2, 3}`, with diamond (a), (b) or (c) respectively. The table
//! is compiled in from `data/fano.tsv`.

use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;
use thiserror::Error;

const SOURCE: &str = include_str!("../data/fano.tsv");

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FanoError {
    #[error("unknown Fano family `{0}`")]
    UnknownId(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum B3 {
    Exact(u32),
    AtLeast(u32),
    /// Positive, value not recorded.
    Unknown,
}

impl B3 {
    pub fn is_zero(&self) -> bool {
        *self == B3::Exact(0)
    }
}

impl fmt::Display for B3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            B3::Exact(v) => write!(f, "{}", v),
            B3::AtLeast(v) => write!(f, ">={}", v),
            B3::Unknown => f.write_str("?"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FanoFamily {
    pub id: String,
    pub b2: u32,
    pub b3: B3,
    pub index_r: Option<u32>,
    /// Degree `d` for `V_d`, genus `g` for `X_{2g-2}`.
    pub genus_or_degree: Option<u32>,
    pub description: String,
    pub elliptic: bool,
    /// `'a'`, `'b'` or `'c'` for elliptic families.
    pub diamond: Option<char>,
    pub homogeneous: bool,
    pub note: Option<String>,
}

fn parse_b3(s: &str) -> B3 {
    match s {
        "?" => B3::Unknown,
        _ => match s.strip_prefix(">=") {
            Some(v) => B3::AtLeast(v.parse().expect("b3 lower bound")),
            None => B3::Exact(s.parse().expect("b3 value")),
        },
    }
}

fn opt_u32(s: Option<&str>) -> Option<u32> {
    s.filter(|v| !v.is_empty()).map(|v| v.parse().expect("integer column"))
}

fn parse_line(line: &str) -> FanoFamily {
    let cols: Vec<&str> = line.split('\t').collect();
    assert!(cols.len() >= 5, "short record: {}", line);
    let b2: u32 = cols[1].parse().expect("b2");
    let elliptic = cols[3] == "1";
    FanoFamily {
        id: cols[0].to_string(),
        b2,
        b3: parse_b3(cols[2]),
        index_r: opt_u32(cols.get(5).copied()),
        genus_or_degree: opt_u32(cols.get(6).copied()),
        description: cols[4].to_string(),
        elliptic,
        diamond: if elliptic {
            [None, Some('a'), Some('b'), Some('c')].get(b2 as usize).copied().flatten()
        } else {
            None
        },
        homogeneous: cols.get(7) == Some(&"1"),
        note: cols.get(8).filter(|s| !s.is_empty()).map(|s| s.to_string()),
    }
}

/// All records, in file order (by `b2`, then index and entry number).
pub fn families() -> &'static [FanoFamily] {
    static TABLE: OnceLock<Vec<FanoFamily>> = OnceLock::new();
    TABLE.get_or_init(|| {
        SOURCE
            .lines()
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(parse_line)
            .collect()
    })
}

pub fn list_families(b2: Option<u32>, elliptic: Option<bool>) -> Vec<&'static FanoFamily> {
    families()
        .iter()
        .filter(|f| b2.is_none_or(|b| f.b2 == b))
        .filter(|f| elliptic.is_none_or(|e| f.elliptic == e))
        .collect()
}

pub fn lookup(id: &str) -> Result<&'static FanoFamily, FanoError> {
    families()
        .iter()
        .find(|f| f.id == id)
        .ok_or_else(|| FanoError::UnknownId(id.to_string()))
}

pub fn elliptic_families() -> Vec<&'static FanoFamily> {
    list_families(None, Some(true))
}
