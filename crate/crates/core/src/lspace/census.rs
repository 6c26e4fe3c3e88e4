use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::LspaceError;

/// Known L-space status by manifold name.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CensusTable {
    entries: BTreeMap<String, bool>,
}

impl CensusTable {
    pub fn new() -> CensusTable {
        CensusTable::default()
    }

    /// Fails if `name` is already recorded with the other value.
    pub fn insert(&mut self, name: &str, value: bool) -> Result<(), LspaceError> {
        match self.entries.insert(name.to_string(), value) {
            Some(old) if old != value => Err(LspaceError::Contradiction(name.to_string())),
            _ => Ok(()),
        }
    }

    pub fn get(&self, name: &str) -> Option<bool> {
        self.entries.get(name).copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, bool)> {
        self.entries.iter().map(|(k, &v)| (k.as_str(), v))
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.entries {
            let _ = writeln!(out, "{k}\t{}", u8::from(*v));
        }
        out
    }
}

/// Two columns, `name value`, separated by tabs or spaces. `1` and `true`
/// mean an L-space; `0`, `-1` and `false` mean not. `#` starts a comment.
pub fn parse_census(text: &str) -> Result<CensusTable, LspaceError> {
    let mut t = CensusTable::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| LspaceError::Format { line: i + 1, msg };
        let words: Vec<&str> = line.split_whitespace().collect();
        let [name, value] = words[..] else {
            return Err(err(format!("expected `name value`, got `{line}`")));
        };
        let v = match value {
            "1" | "true" | "True" => true,
            "0" | "-1" | "false" | "False" => false,
            _ => return Err(err(format!("bad value `{value}`"))),
        };
        t.insert(name, v).map_err(|e| err(e.to_string()))?;
    }
    Ok(t)
}
