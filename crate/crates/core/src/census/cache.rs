//! Binary cache of census reports.
//!
//! Layout (all integers little-endian): magic `SSCENSUS`, format version
//! (u32), code version (u32 length + UTF-8), q, n, d, K (u32 each), the
//! modulus identifiers of `F_{q^e}` for `e <= K` (u32 count, then u32 length +
//! UTF-8 each), total and smooth (u64), row count (u64), then the rows sorted
//! by key as `a_1..a_K` (u32 each) followed by a u64 count.

use std::collections::BTreeMap;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use super::enumerate::{census, CensusOptions};
use super::field::Field;
use super::report::CensusReport;
use crate::{Error, Result};

pub const MAGIC: &[u8; 8] = b"SSCENSUS";
pub const FORMAT_VERSION: u32 = 1;
/// Bumped whenever enumeration or smoothness logic changes.
pub const CODE_VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "+census1");
pub const CACHE_DIR_ENV: &str = "STABLESECT_CACHE_DIR";

pub fn file_name(q: u32, n: u32, d: u32, k: u32) -> String {
    format!("census_q{q}_n{n}_d{d}_K{k}.bin")
}

/// `$STABLESECT_CACHE_DIR`, falling back to a directory under the system temp dir.
pub fn default_dir() -> PathBuf {
    std::env::var_os(CACHE_DIR_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("stablesect-cache"))
}

fn modulus_ids(q: u32, k: u32) -> Result<Vec<String>> {
    (1..=k).map(|e| Field::new(q, e).map(|f| f.modulus_id())).collect()
}

fn put_u32(out: &mut Vec<u8>, x: u32) {
    out.extend_from_slice(&x.to_le_bytes());
}

fn put_u64(out: &mut Vec<u8>, x: u64) {
    out.extend_from_slice(&x.to_le_bytes());
}

fn put_str(out: &mut Vec<u8>, s: &str) {
    put_u32(out, s.len() as u32);
    out.extend_from_slice(s.as_bytes());
}

pub fn encode(report: &CensusReport) -> Result<Vec<u8>> {
    let mut out = Vec::new();
    out.extend_from_slice(MAGIC);
    put_u32(&mut out, FORMAT_VERSION);
    put_str(&mut out, CODE_VERSION);
    for x in [report.q, report.n, report.d, report.k] {
        put_u32(&mut out, x);
    }
    let ids = modulus_ids(report.q, report.k)?;
    put_u32(&mut out, ids.len() as u32);
    for id in &ids {
        put_str(&mut out, id);
    }
    put_u64(&mut out, report.total);
    put_u64(&mut out, report.smooth);
    put_u64(&mut out, report.histogram.len() as u64);
    for (a, &m) in &report.histogram {
        for &x in a {
            put_u32(&mut out, x);
        }
        put_u64(&mut out, m);
    }
    Ok(out)
}

struct Reader<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl Reader<'_> {
    fn take(&mut self, n: usize) -> Result<&[u8]> {
        let end = self.pos.checked_add(n).filter(|&e| e <= self.buf.len());
        let end = end.ok_or_else(|| Error::Cache("truncated file".into()))?;
        let s = &self.buf[self.pos..end];
        self.pos = end;
        Ok(s)
    }

    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }

    fn string(&mut self) -> Result<String> {
        let n = self.u32()? as usize;
        String::from_utf8(self.take(n)?.to_vec()).map_err(|e| Error::Cache(e.to_string()))
    }
}

/// Decode a cache file, checking it was written for `(q, n, d, K)` by this code version.
pub fn decode(buf: &[u8], q: u32, n: u32, d: u32, k: u32) -> Result<CensusReport> {
    let mut r = Reader { buf, pos: 0 };
    if r.take(8)? != MAGIC {
        return Err(Error::Cache("bad magic".into()));
    }
    let fv = r.u32()?;
    if fv != FORMAT_VERSION {
        return Err(Error::Cache(format!("format version {fv}, expected {FORMAT_VERSION}")));
    }
    let cv = r.string()?;
    if cv != CODE_VERSION {
        return Err(Error::Cache(format!("code version {cv}, expected {CODE_VERSION}")));
    }
    let params = [r.u32()?, r.u32()?, r.u32()?, r.u32()?];
    if params != [q, n, d, k] {
        return Err(Error::ParameterMismatch(format!("cache holds (q, n, d, K) = {params:?}, wanted {:?}", [q, n, d, k])));
    }
    let count = r.u32()?;
    let ids = (0..count).map(|_| r.string()).collect::<Result<Vec<_>>>()?;
    if ids != modulus_ids(q, k)? {
        return Err(Error::Cache("field moduli differ".into()));
    }
    let total = r.u64()?;
    let smooth = r.u64()?;
    let rows = r.u64()?;
    let mut histogram = BTreeMap::new();
    for _ in 0..rows {
        let key = (0..k).map(|_| r.u32()).collect::<Result<Vec<_>>>()?;
        histogram.insert(key, r.u64()?);
    }
    if r.pos != buf.len() {
        return Err(Error::Cache("trailing bytes".into()));
    }
    if histogram.values().sum::<u64>() != smooth {
        return Err(Error::Cache("histogram does not sum to the smooth count".into()));
    }
    Ok(CensusReport { q, n, d, k, total, smooth, histogram })
}

pub fn write(dir: &Path, report: &CensusReport) -> Result<PathBuf> {
    let io = |e: std::io::Error| Error::Cache(format!("{}: {e}", dir.display()));
    std::fs::create_dir_all(dir).map_err(io)?;
    let path = dir.join(file_name(report.q, report.n, report.d, report.k));
    let tmp = path.with_extension("tmp");
    let mut f = std::fs::File::create(&tmp).map_err(io)?;
    f.write_all(&encode(report)?).map_err(io)?;
    f.sync_all().map_err(io)?;
    std::fs::rename(&tmp, &path).map_err(io)?;
    Ok(path)
}

/// `Ok(None)` when there is no file; an error when it exists but is unusable.
pub fn read(dir: &Path, q: u32, n: u32, d: u32, k: u32) -> Result<Option<CensusReport>> {
    let path = dir.join(file_name(q, n, d, k));
    let mut f = match std::fs::File::open(&path) {
        Ok(f) => f,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(Error::Cache(format!("{}: {e}", path.display()))),
    };
    let mut buf = Vec::new();
    f.read_to_end(&mut buf).map_err(|e| Error::Cache(e.to_string()))?;
    decode(&buf, q, n, d, k).map(Some)
}

/// Load a cached report, recomputing (and rewriting) it when absent or stale.
/// The flag is true when the cache was used.
pub fn load_or_run(dir: &Path, q: u32, n: u32, d: u32, k: u32, opts: &CensusOptions) -> Result<(CensusReport, bool)> {
    if let Ok(Some(r)) = read(dir, q, n, d, k) {
        return Ok((r, true));
    }
    let report = census(q, n, d, k, opts)?;
    write(dir, &report)?;
    Ok((report, false))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scratch_dir(tag: &str) -> PathBuf {
        let d = std::env::temp_dir().join(format!("stablesect-test-{tag}-{}", std::process::id()));
        let _ = std::fs::remove_dir_all(&d);
        d
    }

    #[test]
    fn roundtrip_and_rejections() {
        let r = census(2, 2, 2, 3, &CensusOptions::default()).unwrap();
        let bytes = encode(&r).unwrap();
        assert_eq!(&bytes[..8], MAGIC);
        assert_eq!(decode(&bytes, 2, 2, 2, 3).unwrap(), r);
        assert!(matches!(decode(&bytes, 2, 2, 3, 3), Err(Error::ParameterMismatch(_))));
        assert!(decode(&bytes[..bytes.len() - 1], 2, 2, 2, 3).is_err());
        let mut bad = bytes.clone();
        bad[0] = b'X';
        assert!(decode(&bad, 2, 2, 2, 3).is_err());
    }

    #[test]
    fn load_or_run_is_idempotent() {
        let dir = scratch_dir("cache");
        let (a, hit) = load_or_run(&dir, 2, 1, 4, 2, &CensusOptions::default()).unwrap();
        assert!(!hit);
        let (b, hit) = load_or_run(&dir, 2, 1, 4, 2, &CensusOptions::default()).unwrap();
        assert!(hit);
        assert_eq!(a, b);
        let _ = std::fs::remove_dir_all(&dir);
    }
}
