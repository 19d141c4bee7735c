//! Line-oriented `key = value` configuration files. Values given on the
//! command line always win over the file.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::path::Path;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};

#[derive(Default, Debug)]
pub struct ConfigFile {
    entries: BTreeMap<String, String>,
}

impl ConfigFile {
    pub fn load(path: Option<&Path>) -> Result<Self> {
        match path {
            None => Ok(ConfigFile::default()),
            Some(p) => {
                let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
                Self::parse(&text).with_context(|| format!("in {}", p.display()))
            }
        }
    }

    /// Blank lines and `#` comments are skipped; keys may be written with
    /// dashes or underscores.
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| anyhow!("line {}: expected key = value", no + 1))?;
            let key = k.trim().replace('_', "-");
            if entries.insert(key.clone(), v.trim().to_string()).is_some() {
                bail!("line {}: duplicate key {key}", no + 1);
            }
        }
        Ok(ConfigFile { entries })
    }

    /// The flag if set, otherwise the parsed file entry.
    pub fn pick<T>(&mut self, key: &str, flag: Option<T>) -> Result<Option<T>>
    where
        T: FromStr,
        T::Err: Display,
    {
        let from_file = self.entries.remove(key);
        if flag.is_some() {
            return Ok(flag);
        }
        from_file
            .map(|v| v.parse::<T>().map_err(|e| anyhow!("config key {key} = {v:?}: {e}")))
            .transpose()
    }

    pub fn flag(&mut self, key: &str, flag: bool) -> Result<bool> {
        Ok(self.pick(key, flag.then_some(true))?.unwrap_or(false))
    }

    /// Fails on keys that no option consumed.
    pub fn finish(self) -> Result<()> {
        if self.entries.is_empty() {
            return Ok(());
        }
        let keys: Vec<&str> = self.entries.keys().map(String::as_str).collect();
        bail!("unknown config key(s) for this subcommand: {}", keys.join(", "))
    }
}

/// `3`, `3,4,5` or `3-5`.
pub fn parse_degrees(s: &str) -> Result<Vec<u32>> {
    let mut out = Vec::new();
    for piece in s.split(',') {
        let piece = piece.trim();
        match piece.split_once('-') {
            Some((a, b)) => {
                let (a, b): (u32, u32) = (a.trim().parse()?, b.trim().parse()?);
                if a > b {
                    bail!("empty degree range {piece}");
                }
                out.extend(a..=b);
            }
            None => out.push(piece.parse()?),
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_win_over_file() {
        let mut c = ConfigFile::parse("q = 3\n# comment\nn=2  # trailing\nworker_count = 4\n").unwrap();
        assert_eq!(c.pick::<u32>("q", Some(2)).unwrap(), Some(2));
        assert_eq!(c.pick::<u32>("n", None).unwrap(), Some(2));
        assert_eq!(c.pick::<u32>("d", None).unwrap(), None);
        let err = c.finish().unwrap_err().to_string();
        assert!(err.contains("worker-count"), "{err}");
    }

    #[test]
    fn bad_lines() {
        assert!(ConfigFile::parse("q 2").is_err());
        assert!(ConfigFile::parse("q=2\nq=3").is_err());
        let mut c = ConfigFile::parse("q = two").unwrap();
        assert!(c.pick::<u32>("q", None).is_err());
    }

    #[test]
    fn degree_lists() {
        assert_eq!(parse_degrees("5").unwrap(), vec![5]);
        assert_eq!(parse_degrees("3-5").unwrap(), vec![3, 4, 5]);
        assert_eq!(parse_degrees("6,3-4,4").unwrap(), vec![3, 4, 6]);
        assert!(parse_degrees("5-3").is_err());
        assert!(parse_degrees("x").is_err());
    }
}
