//! JSON-lines persistence for [`HurwitzCache`].
//!
//! The first line is a header record; every following line is one solved
//! `(g, α)` with `H` encoded as a `"num/den"` string. Records are sorted by
//! `(r, g, canonical partition order)`.

use std::fs;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::HurwitzCache;
use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::rational::{format_rational, parse_rational};

pub const FORMAT_ID: &str = "hodge-hurwitz-cache";
pub const FORMAT_VERSION: u32 = 1;
pub const NORMALIZATION_TAG: &str = "F-over-prod-alpha";

#[derive(Serialize, Deserialize)]
struct Header {
    format: String,
    version: u32,
    d_max: u32,
    g_max: u32,
    normalization: String,
}

#[derive(Serialize, Deserialize)]
struct Record {
    g: u32,
    alpha: Vec<u32>,
    r: i64,
    #[serde(rename = "H")]
    h: String,
}

impl HurwitzCache {
    pub fn write_to<W: Write>(&self, mut w: W) -> Result<()> {
        let (d_max, g_max) = self.bounds();
        let header = Header {
            format: FORMAT_ID.to_string(),
            version: FORMAT_VERSION,
            d_max,
            g_max,
            normalization: NORMALIZATION_TAG.to_string(),
        };
        serde_json::to_writer(&mut w, &header)?;
        writeln!(w)?;
        for (g, alpha, h) in self.entries() {
            let rec = Record {
                g,
                r: alpha.transposition_count(g),
                alpha: alpha.parts().to_vec(),
                h: format_rational(&h),
            };
            serde_json::to_writer(&mut w, &rec)?;
            writeln!(w)?;
        }
        Ok(())
    }

    pub fn read_from<R: Read>(r: R) -> Result<Self> {
        let mut lines = BufReader::new(r).lines();
        let first = lines
            .next()
            .ok_or_else(|| Error::CacheFormat("missing header".into()))??;
        let header: Header = serde_json::from_str(&first)
            .map_err(|e| Error::CacheFormat(format!("bad header: {e}")))?;
        if header.format != FORMAT_ID {
            return Err(Error::CacheFormat(format!(
                "unknown format {:?}",
                header.format
            )));
        }
        if header.version != FORMAT_VERSION {
            return Err(Error::CacheFormat(format!(
                "unsupported version {}",
                header.version
            )));
        }
        if header.normalization != NORMALIZATION_TAG {
            return Err(Error::NormalizationMismatch {
                found: header.normalization,
                expected: NORMALIZATION_TAG.to_string(),
            });
        }
        let mut cache = HurwitzCache::new();
        for line in lines {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let rec: Record = serde_json::from_str(&line)
                .map_err(|e| Error::CacheFormat(format!("bad record: {e}")))?;
            let alpha = Partition::new(rec.alpha)?;
            if alpha.transposition_count(rec.g) != rec.r {
                return Err(Error::CacheFormat(format!(
                    "record ({}, {alpha}) has inconsistent r = {}",
                    rec.g, rec.r
                )));
            }
            cache.insert_h(rec.g, alpha, &parse_rational(&rec.h)?)?;
        }
        cache.d_max = cache.d_max.max(header.d_max);
        cache.g_max = cache.g_max.max(header.g_max);
        Ok(cache)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::read_from(fs::File::open(path)?)
    }

    /// Writes to a sibling temporary file, then renames over `path`.
    pub fn save(&self, path: &Path) -> Result<()> {
        let mut tmp = path.as_os_str().to_owned();
        tmp.push(".tmp");
        let tmp = std::path::PathBuf::from(tmp);
        {
            let mut f = std::io::BufWriter::new(fs::File::create(&tmp)?);
            self.write_to(&mut f)?;
            f.flush()?;
        }
        fs::rename(&tmp, path)?;
        Ok(())
    }

    /// Loads `path` if it exists, otherwise starts empty.
    pub fn load_or_new(path: &Path) -> Result<Self> {
        if path.exists() {
            Self::load(path)
        } else {
            Ok(Self::new())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::{solve_closure, Region};
    use super::*;

    #[test]
    fn round_trip_is_exact_and_byte_stable() {
        let mut cache = HurwitzCache::new();
        solve_closure(5, 1, &mut cache);
        let mut first = Vec::new();
        cache.write_to(&mut first).unwrap();
        let back = HurwitzCache::read_from(first.as_slice()).unwrap();
        assert_eq!(back.entries(), cache.entries());
        let mut second = Vec::new();
        back.write_to(&mut second).unwrap();
        assert_eq!(first, second);

        // re-solving a complete cache changes nothing
        let mut again = back.clone();
        again.solve(Region::new(5, 1));
        let mut third = Vec::new();
        again.write_to(&mut third).unwrap();
        assert_eq!(first, third);
    }

    #[test]
    fn header_is_first_and_tagged() {
        let mut cache = HurwitzCache::new();
        solve_closure(2, 0, &mut cache);
        let mut buf = Vec::new();
        cache.write_to(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let first = text.lines().next().unwrap();
        assert!(first.contains("\"normalization\":\"F-over-prod-alpha\""));
        assert!(text.lines().nth(1).unwrap().contains("\"H\":\"1\""));
    }

    #[test]
    fn rejects_foreign_normalization() {
        let text = r#"{"format":"hodge-hurwitz-cache","version":1,"d_max":1,"g_max":0,"normalization":"F-over-d-factorial"}"#;
        assert!(matches!(
            HurwitzCache::read_from(text.as_bytes()),
            Err(Error::NormalizationMismatch { .. })
        ));
        assert!(matches!(
            HurwitzCache::read_from("".as_bytes()),
            Err(Error::CacheFormat(_))
        ));
        let bad_r = format!(
            "{}\n{}",
            r#"{"format":"hodge-hurwitz-cache","version":1,"d_max":1,"g_max":0,"normalization":"F-over-prod-alpha"}"#,
            r#"{"g":0,"alpha":[1],"r":5,"H":"1"}"#
        );
        assert!(HurwitzCache::read_from(bad_r.as_bytes()).is_err());
    }

    #[test]
    fn save_and_load_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("t.hwz.jsonl");
        let mut cache = HurwitzCache::new();
        solve_closure(4, 1, &mut cache);
        cache.save(&path).unwrap();
        let back = HurwitzCache::load(&path).unwrap();
        assert_eq!(back.entries(), cache.entries());
        assert_eq!(back.bounds(), (4, 1));
    }
}
