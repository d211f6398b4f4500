//! Named initial invariants.
//!
//! The text format is one `name = prime` binding per line; `#` starts a
//! comment. Primes must be at least 5 (2 and 3 belong to the episodics) and
//! both names and primes must be unique.

use indexmap::IndexMap;
use thiserror::Error;

use super::invariant::{is_prime, Invariant, FIRST_USER_PRIME};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct RegistryError {
    pub line: usize,
    pub message: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct InvariantRegistry {
    entries: IndexMap<String, u64>,
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl InvariantRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn parse(text: &str) -> Result<Self, RegistryError> {
        let mut reg = Self::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let err = |message: String| RegistryError { line, message };
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (name, value) = content
                .split_once('=')
                .ok_or_else(|| err("expected `name = prime`".into()))?;
            let (name, value) = (name.trim(), value.trim());
            if !valid_name(name) {
                return Err(err(format!("invalid name '{name}'")));
            }
            let p: u64 = value
                .parse()
                .map_err(|_| err(format!("'{value}' is not a natural number")))?;
            reg.insert(name, p).map_err(err)?;
        }
        Ok(reg)
    }

    /// Binds `name` to the prime `p`.
    pub fn insert(&mut self, name: &str, p: u64) -> Result<Invariant, String> {
        if p < FIRST_USER_PRIME || !is_prime(p) {
            return Err(format!("{p} is not a prime >= {FIRST_USER_PRIME}"));
        }
        if self.entries.contains_key(name) {
            return Err(format!("duplicate name '{name}'"));
        }
        if let Some((other, _)) = self.entries.iter().find(|(_, q)| **q == p) {
            return Err(format!("prime {p} already bound to '{other}'"));
        }
        self.entries.insert(name.to_owned(), p);
        Ok(Invariant::initial(p).expect("checked prime"))
    }

    /// Binds `name` to the smallest unused prime, or returns its existing
    /// invariant.
    pub fn register(&mut self, name: &str) -> Invariant {
        if let Some(inv) = self.get(name) {
            return inv;
        }
        let p = (FIRST_USER_PRIME..)
            .filter(|n| is_prime(*n))
            .find(|n| !self.entries.values().any(|q| q == n))
            .expect("primes are unbounded");
        self.entries.insert(name.to_owned(), p);
        Invariant::initial(p).expect("prime")
    }

    pub fn get(&self, name: &str) -> Option<Invariant> {
        self.entries.get(name).and_then(|p| Invariant::initial(*p))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, u64)> {
        self.entries.iter().map(|(k, v)| (k.as_str(), *v))
    }
}
