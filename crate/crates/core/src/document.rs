//! Line-oriented `key: value` documents used for certificates and witnesses.
//!
//! ```text
//! dualpoly-document v1
//! kind: or-certificate
//! n: 4
//! ...
//! end
//! ```
//!
//! Keys may repeat. Lines starting with `#` are comments. A document
//! without the closing `end` line is treated as truncated.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::numeric::Rat;

pub const HEADER: &str = "dualpoly-document v1";
const TRAILER: &str = "end";

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Document {
    entries: Vec<(String, String)>,
}

impl Document {
    pub fn new(kind: &str) -> Self {
        let mut doc = Document::default();
        doc.push("kind", kind);
        doc
    }

    pub fn push(&mut self, key: &str, value: impl fmt::Display) {
        debug_assert!(!key.contains(':') && !key.contains('\n'));
        let value = value.to_string();
        debug_assert!(!value.contains('\n'));
        self.entries.push((key.to_string(), value));
    }

    pub fn entries(&self) -> &[(String, String)] {
        &self.entries
    }

    pub fn entries_mut(&mut self) -> &mut Vec<(String, String)> {
        &mut self.entries
    }

    pub fn kind(&self) -> Result<&str> {
        self.get("kind")
    }

    /// The single value for `key`; missing or repeated keys are errors.
    pub fn get(&self, key: &str) -> Result<&str> {
        let mut found = self.entries.iter().filter(|(k, _)| k == key);
        match (found.next(), found.next()) {
            (Some((_, v)), None) => Ok(v),
            (None, _) => Err(Error::Parse(format!("missing field {key:?}"))),
            (Some(_), Some(_)) => Err(Error::Parse(format!("repeated field {key:?}"))),
        }
    }

    pub fn get_all<'a>(&'a self, key: &'a str) -> impl Iterator<Item = &'a str> + 'a {
        self.entries
            .iter()
            .filter(move |(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn parse_field<T: FromStr>(&self, key: &str) -> Result<T> {
        let raw = self.get(key)?;
        raw.parse()
            .map_err(|_| Error::Parse(format!("field {key:?}: cannot parse {raw:?}")))
    }

    pub fn rat(&self, key: &str) -> Result<Rat> {
        self.get(key)?
            .parse()
            .map_err(|e| Error::Parse(format!("field {key:?}: {e}")))
    }

    /// Whitespace-separated list of values.
    pub fn list<T: FromStr>(&self, key: &str) -> Result<Vec<T>> {
        self.get(key)?
            .split_whitespace()
            .map(|t| {
                t.parse()
                    .map_err(|_| Error::Parse(format!("field {key:?}: cannot parse {t:?}")))
            })
            .collect()
    }
}

impl fmt::Display for Document {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{HEADER}")?;
        for (k, v) in &self.entries {
            writeln!(f, "{k}: {v}")?;
        }
        writeln!(f, "{TRAILER}")
    }
}

impl FromStr for Document {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s.lines();
        match lines.next() {
            Some(h) if h.trim_end() == HEADER => {}
            _ => return Err(Error::Parse(format!("missing header {HEADER:?}"))),
        }
        let mut entries = Vec::new();
        let mut closed = false;
        for (lineno, line) in lines.enumerate() {
            let line = line.trim_end();
            if closed {
                if line.is_empty() {
                    continue;
                }
                return Err(Error::Parse("content after end marker".into()));
            }
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if line == TRAILER {
                closed = true;
                continue;
            }
            let (k, v) = line.split_once(':').ok_or_else(|| {
                Error::Parse(format!("line {}: expected `key: value`", lineno + 2))
            })?;
            let k = k.trim();
            if k.is_empty() || k.contains(char::is_whitespace) {
                return Err(Error::Parse(format!("line {}: bad key {k:?}", lineno + 2)));
            }
            entries.push((k.to_string(), v.trim().to_string()));
        }
        if !closed {
            return Err(Error::Parse("document truncated (no end marker)".into()));
        }
        Ok(Document { entries })
    }
}
