//! Flat key-value config files. Keys are the long flag names; `-` and `_`
//! are interchangeable. Flags given on the command line win.

use std::collections::BTreeMap;
use std::path::Path;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Config {
    map: BTreeMap<String, toml::Value>,
}

fn norm(key: &str) -> String {
    key.replace('-', "_")
}

impl Config {
    pub fn parse(text: &str, known: &[&str]) -> Result<Self> {
        let table: toml::Table = text.parse().map_err(|e: toml::de::Error| Error::Config(e.to_string()))?;
        let mut map = BTreeMap::new();
        for (k, v) in table {
            if matches!(v, toml::Value::Table(_)) {
                return Err(Error::Config(format!("key {k:?}: nested tables are not allowed")));
            }
            let k = norm(&k);
            if !known.iter().any(|n| norm(n) == k) {
                return Err(Error::Config(format!("unknown key {k:?}")));
            }
            map.insert(k, v);
        }
        Ok(Config { map })
    }

    pub fn load(path: &Path, known: &[&str]) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Self::parse(&text, known)
    }

    fn get(&self, key: &str) -> Option<&toml::Value> {
        self.map.get(&norm(key))
    }

    pub fn opt_f64(&self, key: &str, flag: Option<f64>) -> Result<Option<f64>> {
        if flag.is_some() {
            return Ok(flag);
        }
        match self.get(key) {
            None => Ok(None),
            Some(toml::Value::Float(v)) => Ok(Some(*v)),
            Some(toml::Value::Integer(v)) => Ok(Some(*v as f64)),
            Some(v) => Err(Error::Config(format!("{key}: expected a number, got {v}"))),
        }
    }

    pub fn f64(&self, key: &str, flag: Option<f64>, default: f64) -> Result<f64> {
        Ok(self.opt_f64(key, flag)?.unwrap_or(default))
    }

    pub fn opt_i64(&self, key: &str, flag: Option<i64>) -> Result<Option<i64>> {
        if flag.is_some() {
            return Ok(flag);
        }
        match self.get(key) {
            None => Ok(None),
            Some(toml::Value::Integer(v)) => Ok(Some(*v)),
            Some(v) => Err(Error::Config(format!("{key}: expected an integer, got {v}"))),
        }
    }

    pub fn usize(&self, key: &str, flag: Option<usize>, default: usize) -> Result<usize> {
        match self.opt_i64(key, flag.map(|v| v as i64))? {
            None => Ok(default),
            Some(v) if v >= 0 => Ok(v as usize),
            Some(v) => Err(Error::Config(format!("{key}: expected a non-negative integer, got {v}"))),
        }
    }

    pub fn i32(&self, key: &str, flag: Option<i32>, default: i32) -> Result<i32> {
        self.opt_i64(key, flag.map(i64::from))?.map_or(Ok(default), |v| {
            i32::try_from(v).map_err(|_| Error::Config(format!("{key}: {v} out of range")))
        })
    }

    pub fn bool(&self, key: &str, flag: bool) -> Result<bool> {
        if flag {
            return Ok(true);
        }
        match self.get(key) {
            None => Ok(false),
            Some(toml::Value::Boolean(b)) => Ok(*b),
            Some(v) => Err(Error::Config(format!("{key}: expected true or false, got {v}"))),
        }
    }

    pub fn opt_string(&self, key: &str, flag: Option<String>) -> Result<Option<String>> {
        if flag.is_some() {
            return Ok(flag);
        }
        match self.get(key) {
            None => Ok(None),
            Some(toml::Value::String(s)) => Ok(Some(s.clone())),
            Some(v) => Err(Error::Config(format!("{key}: expected a string, got {v}"))),
        }
    }

    pub fn string(&self, key: &str, flag: Option<String>, default: &str) -> Result<String> {
        Ok(self.opt_string(key, flag)?.unwrap_or_else(|| default.to_string()))
    }

    /// A list given as "1, 2.5, -3" or as a TOML array.
    pub fn f64_list(&self, key: &str, flag: Option<String>, default: &[f64]) -> Result<Vec<f64>> {
        if let Some(s) = flag {
            return parse_list(key, &s);
        }
        match self.get(key) {
            None => Ok(default.to_vec()),
            Some(toml::Value::String(s)) => parse_list(key, s),
            Some(toml::Value::Array(a)) => a
                .iter()
                .map(|v| match v {
                    toml::Value::Float(x) => Ok(*x),
                    toml::Value::Integer(x) => Ok(*x as f64),
                    _ => Err(Error::Config(format!("{key}: non-numeric entry {v}"))),
                })
                .collect(),
            Some(v) => Err(Error::Config(format!("{key}: expected a list, got {v}"))),
        }
    }
}

pub fn parse_list(key: &str, s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<f64>().map_err(|e| Error::Config(format!("{key}: {t:?}: {e}"))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_file() {
        let c = Config::parse("v2 = -5\nn-max = 4\nformat = \"json\"\nz = [0.5, 1]", &["v2", "n_max", "format", "z"]).unwrap();
        assert_eq!(c.f64("v2", None, 1.0).unwrap(), -5.0);
        assert_eq!(c.f64("v2", Some(3.0), 1.0).unwrap(), 3.0);
        assert_eq!(c.usize("n_max", None, 8).unwrap(), 4);
        assert_eq!(c.string("format", None, "csv").unwrap(), "json");
        assert_eq!(c.f64_list("z", None, &[]).unwrap(), vec![0.5, 1.0]);
        assert_eq!(c.f64("mass", None, 1.0).unwrap(), 1.0);
    }

    #[test]
    fn rejects_bad_files() {
        assert!(Config::parse("[section]\na = 1", &["section"]).is_err());
        assert!(Config::parse("typo = 1", &["v2"]).is_err());
        assert!(Config::parse("v2 = \"x\"", &["v2"]).unwrap().f64("v2", None, 0.0).is_err());
    }
}
