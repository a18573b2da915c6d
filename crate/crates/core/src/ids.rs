//! Argument names interned to dense integer ids.

use std::collections::HashMap;
use std::fmt;
use std::sync::{OnceLock, RwLock};

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Prefix reserved for the checker's pool of fresh arguments.
pub const FRESH_PREFIX: &str = "_fresh";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NameError {
    #[error("empty argument name")]
    Empty,
    #[error("invalid character {1:?} in argument name {0:?}")]
    InvalidChar(String, char),
    #[error("argument name {0:?} uses the reserved prefix `{FRESH_PREFIX}`")]
    Reserved(String),
}

#[derive(Default)]
struct Interner {
    names: Vec<&'static str>,
    ids: HashMap<&'static str, u32>,
}

fn interner() -> &'static RwLock<Interner> {
    static INTERNER: OnceLock<RwLock<Interner>> = OnceLock::new();
    INTERNER.get_or_init(Default::default)
}

/// An argument of the (unbounded) argument universe.
///
/// Ids are assigned in first-seen order and never reused, so ordering by id is
/// stable for the lifetime of the process.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArgumentId(u32);

impl ArgumentId {
    /// Interns a user-supplied name, rejecting malformed and reserved names.
    pub fn new(name: &str) -> Result<Self, NameError> {
        validate(name)?;
        if is_reserved(name) {
            return Err(NameError::Reserved(name.to_string()));
        }
        Ok(Self::intern(name))
    }

    /// The `index`-th member of the fresh-symbol pool.
    pub fn fresh(index: usize) -> Self {
        Self::intern(&format!("{FRESH_PREFIX}{index}"))
    }

    fn intern(name: &str) -> Self {
        if let Some(&id) = interner().read().unwrap().ids.get(name) {
            return ArgumentId(id);
        }
        let mut table = interner().write().unwrap();
        if let Some(&id) = table.ids.get(name) {
            return ArgumentId(id);
        }
        let id = u32::try_from(table.names.len()).expect("argument table overflow");
        let name: &'static str = Box::leak(name.to_owned().into_boxed_str());
        table.names.push(name);
        table.ids.insert(name, id);
        ArgumentId(id)
    }

    pub fn name(self) -> &'static str {
        interner().read().unwrap().names[self.0 as usize]
    }

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_fresh(self) -> bool {
        is_reserved(self.name())
    }
}

pub(crate) fn validate(name: &str) -> Result<(), NameError> {
    if name.is_empty() {
        return Err(NameError::Empty);
    }
    match name.chars().find(|c| !(c.is_ascii_alphanumeric() || *c == '_')) {
        Some(c) => Err(NameError::InvalidChar(name.to_string(), c)),
        None => Ok(()),
    }
}

pub(crate) fn is_reserved(name: &str) -> bool {
    name.starts_with(FRESH_PREFIX)
}

impl fmt::Debug for ArgumentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl fmt::Display for ArgumentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for ArgumentId {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for ArgumentId {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let name = String::deserialize(deserializer)?;
        ArgumentId::new(&name).map_err(serde::de::Error::custom)
    }
}

/// Shorthand used heavily by tests: interns `name`, panicking on bad input.
pub fn arg(name: &str) -> ArgumentId {
    ArgumentId::new(name).unwrap_or_else(|e| panic!("{e}"))
}
