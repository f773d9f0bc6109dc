//! Typed JSON inputs. Structural errors carry a JSON pointer.

use std::collections::BTreeMap;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::Value;

use relpres_core::backend::Backend;
use relpres_core::word::{FreeProduct, Word};

use crate::CliError;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationInput {
    #[serde(default)]
    pub factors: BTreeMap<String, Value>,
    #[serde(default)]
    pub free_gens: Vec<String>,
    pub relator: Value,
    #[serde(default)]
    pub t_factor: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelatorsInput {
    #[serde(default)]
    pub factors: BTreeMap<String, Value>,
    #[serde(default)]
    pub free_gens: Vec<String>,
    pub relators: Vec<Value>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UpInput {
    pub backend: Value,
    pub x: Vec<Value>,
    pub y: Vec<Value>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemInput {
    pub labels: Vec<String>,
    pub omega: Vec<Vec<String>>,
    #[serde(default)]
    pub n_flags: Option<Vec<bool>>,
}

/// RFC 6901 escaping of one pointer segment.
pub fn escape(segment: &str) -> String {
    segment.replace('~', "~0").replace('/', "~1")
}

fn pointer_of(path: &serde_path_to_error::Path) -> String {
    use serde_path_to_error::Segment;
    let mut out = String::new();
    for seg in path.iter() {
        match seg {
            Segment::Seq { index } => out.push_str(&format!("/{index}")),
            Segment::Map { key } => out.push_str(&format!("/{}", escape(key))),
            Segment::Enum { variant } => out.push_str(&format!("/{}", escape(variant))),
            Segment::Unknown => {}
        }
    }
    out
}

pub fn parse_str<T: DeserializeOwned>(text: &str) -> Result<T, CliError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| CliError::Json {
        pointer: pointer_of(e.path()),
        message: e.into_inner().to_string(),
    })
}

pub fn read<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_str(&text)
}

pub fn build_ctx(factors: &BTreeMap<String, Value>, free_gens: &[String]) -> Result<FreeProduct, CliError> {
    let mut list = Vec::with_capacity(factors.len());
    for (name, spec) in factors {
        let backend = Backend::from_json(spec).map_err(|e| CliError::Json {
            pointer: format!("/factors/{}", escape(name)),
            message: e.to_string(),
        })?;
        list.push((name.clone(), backend));
    }
    for (i, g) in free_gens.iter().enumerate() {
        if factors.contains_key(g) || free_gens[..i].contains(g) {
            return Err(CliError::Json {
                pointer: format!("/free_gens/{i}"),
                message: format!("duplicate name \"{g}\""),
            });
        }
    }
    Ok(FreeProduct::new(list, free_gens.to_vec()))
}

pub fn word(ctx: &FreeProduct, value: &Value, pointer: &str) -> Result<Word, CliError> {
    ctx.parse_word(value, pointer).map_err(CliError::from_word)
}
