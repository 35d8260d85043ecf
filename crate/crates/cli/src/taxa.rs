//! Translation of named leaves to integer taxa.
//!
//! A map file holds one `name<TAB>integer` pair per line. Blank lines and
//! lines starting with `#` are skipped.

use std::collections::HashMap;
use std::path::Path;

use treescape::Taxon;

use crate::error::{CliError, Result};

#[derive(Clone, Debug, Default)]
pub struct TaxonMap {
    by_name: HashMap<String, Taxon>,
}

/// A translated line and, for each of its bytes, the byte offset in the
/// original line it came from.
pub struct Translated {
    pub text: String,
    pub origin: Vec<usize>,
}

impl TaxonMap {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(CliError::io(path))?;
        Self::parse(&text).map_err(|(line, message)| CliError::Taxa {
            path: path.to_owned(),
            line,
            message,
        })
    }

    pub fn parse(text: &str) -> std::result::Result<Self, (usize, String)> {
        let mut by_name = HashMap::new();
        let mut seen = HashMap::new();
        for (k, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((name, value)) = line.split_once('\t') else {
                return Err((k + 1, "expected name<TAB>integer".into()));
            };
            let (name, value) = (name.trim(), value.trim());
            let taxon = value
                .parse::<u64>()
                .ok()
                .and_then(Taxon::new)
                .ok_or_else(|| (k + 1, format!("{value:?} is not a positive integer")))?;
            if by_name.insert(name.to_string(), taxon).is_some() {
                return Err((k + 1, format!("name {name:?} appears twice")));
            }
            if let Some(first) = seen.insert(taxon, k + 1) {
                return Err((k + 1, format!("taxon {taxon} already used on line {first}")));
            }
        }
        Ok(TaxonMap { by_name })
    }

    pub fn len(&self) -> usize {
        self.by_name.len()
    }

    pub fn is_empty(&self) -> bool {
        self.by_name.is_empty()
    }

    pub fn get(&self, name: &str) -> Option<Taxon> {
        self.by_name.get(name).copied()
    }

    /// Replace every leaf name in a Newick line by its integer. Internal
    /// labels and branch lengths are copied unchanged. On an unknown name,
    /// returns its byte offset.
    pub fn translate(&self, line: &str) -> std::result::Result<Translated, (usize, String)> {
        let bytes = line.as_bytes();
        let mut text = String::with_capacity(line.len());
        let mut origin = Vec::with_capacity(line.len());
        // Last structural byte seen, which decides what a token is.
        let mut last = b'(';
        let mut pos = 0;
        while pos < bytes.len() {
            let b = bytes[pos];
            if is_token_byte(b) {
                let start = pos;
                while pos < bytes.len() && is_token_byte(bytes[pos]) {
                    pos += 1;
                }
                let token = &line[start..pos];
                if matches!(last, b'(' | b',') {
                    let taxon = self
                        .get(token)
                        .ok_or_else(|| (start, format!("unknown taxon name {token:?}")))?;
                    let digits = taxon.to_string();
                    origin.extend(std::iter::repeat_n(start, digits.len()));
                    text.push_str(&digits);
                } else {
                    origin.extend(start..pos);
                    text.push_str(token);
                }
                last = b'a';
                continue;
            }
            if !b.is_ascii_whitespace() {
                last = b;
            }
            origin.push(pos);
            text.push(b as char);
            pos += 1;
        }
        Ok(Translated { text, origin })
    }
}

fn is_token_byte(b: u8) -> bool {
    !matches!(b, b'(' | b')' | b',' | b':' | b';') && !b.is_ascii_whitespace()
}
