//! Structured text reports: `key=value` lines in a fixed order, floats with
//! 17 significant digits so every value parses back bit-exactly.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::geometry::fmt_f64;

const HEADER: &str = "fhp-report v1";

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Report {
    entries: Vec<(String, String)>,
}

impl Report {
    pub fn new(kind: &str) -> Self {
        let mut r = Self::default();
        r.set("kind", kind);
        r
    }

    pub fn kind(&self) -> Option<&str> {
        self.get("kind")
    }

    /// Replaces an existing key in place, otherwise appends.
    pub fn set(&mut self, key: &str, value: impl ToString) {
        assert!(valid_key(key), "invalid report key `{key}`");
        let value = value.to_string();
        assert!(!value.contains('\n'), "report values are single-line");
        match self.entries.iter_mut().find(|(k, _)| k == key) {
            Some(slot) => slot.1 = value,
            None => self.entries.push((key.to_string(), value)),
        }
    }

    pub fn set_f64(&mut self, key: &str, x: f64) {
        self.set(key, fmt_f64(x));
    }

    pub fn set_vec(&mut self, key: &str, xs: &[f64]) {
        let parts: Vec<String> = xs.iter().map(|&x| fmt_f64(x)).collect();
        self.set(key, parts.join(" "));
    }

    pub fn set_check(&mut self, name: &str, pass: bool) {
        self.set(&format!("check.{name}"), if pass { "pass" } else { "fail" });
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn require(&self, key: &str) -> Result<&str> {
        self.get(key).ok_or_else(|| Error::InvalidInput(format!("report has no `{key}`")))
    }

    pub fn get_f64(&self, key: &str) -> Result<f64> {
        let v = self.require(key)?;
        v.parse().map_err(|_| Error::InvalidInput(format!("`{key}` is not a number: {v}")))
    }

    pub fn get_usize(&self, key: &str) -> Result<usize> {
        let v = self.require(key)?;
        v.parse().map_err(|_| Error::InvalidInput(format!("`{key}` is not a count: {v}")))
    }

    pub fn get_u64(&self, key: &str) -> Result<u64> {
        let v = self.require(key)?;
        v.parse().map_err(|_| Error::InvalidInput(format!("`{key}` is not an integer: {v}")))
    }

    pub fn get_vec(&self, key: &str) -> Result<Vec<f64>> {
        self.require(key)?
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::InvalidInput(format!("`{key}` has a bad entry `{t}`"))))
            .collect()
    }

    pub fn entries(&self) -> &[(String, String)] {
        &self.entries
    }

    /// Entries whose key starts with `prefix.`, with the prefix stripped.
    pub fn section<'a>(&'a self, prefix: &'a str) -> impl Iterator<Item = (&'a str, &'a str)> + 'a {
        self.entries.iter().filter_map(move |(k, v)| {
            k.strip_prefix(prefix).and_then(|rest| rest.strip_prefix('.')).map(|rest| (rest, v.as_str()))
        })
    }

    pub fn remove_section(&mut self, prefix: &str) {
        let dotted = format!("{prefix}.");
        self.entries.retain(|(k, _)| !k.starts_with(&dotted));
    }

    /// Names of failed `check.*` entries.
    pub fn failed_checks(&self) -> Vec<&str> {
        self.section("check").filter(|(_, v)| *v != "pass").map(|(k, _)| k).collect()
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{HEADER}\n");
        for (k, v) in &self.entries {
            let _ = writeln!(out, "{k}={v}");
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        match lines.next() {
            Some((_, l)) if l.trim_end() == HEADER => {}
            _ => return Err(Error::parse(1, format!("expected `{HEADER}` header"))),
        }
        let mut r = Report::default();
        for (idx, line) in lines {
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::parse(idx + 1, "expected `key=value`"))?;
            if !valid_key(k) {
                return Err(Error::parse(idx + 1, format!("invalid key `{k}`")));
            }
            if r.get(k).is_some() {
                return Err(Error::parse(idx + 1, format!("duplicate key `{k}`")));
            }
            r.entries.push((k.to_string(), v.to_string()));
        }
        if r.kind().is_none() {
            return Err(Error::parse(1, "report has no `kind`"));
        }
        Ok(r)
    }
}

fn valid_key(key: &str) -> bool {
    !key.is_empty() && key.chars().all(|c| c.is_ascii_alphanumeric() || matches!(c, '.' | '_' | '-'))
}

/// `+`/`-` string for a labeling.
pub fn labels_signature(labels: &[i8]) -> String {
    labels.iter().map(|&y| if y > 0 { '+' } else { '-' }).collect()
}

pub fn parse_signature(s: &str) -> Result<Vec<i8>> {
    s.chars()
        .map(|c| match c {
            '+' => Ok(1),
            '-' => Ok(-1),
            other => Err(Error::InvalidInput(format!("bad label `{other}`"))),
        })
        .collect()
}

/// 64-bit FNV-1a digest, used to tie reports to the exact input bytes.
pub fn fnv1a(bytes: &[u8]) -> String {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    format!("{h:016x}")
}
