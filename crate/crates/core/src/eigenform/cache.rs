//! On-disk coefficient tables.
//!
//! ```text
//! #eigenform-table v1 weight=12 level=1 limit=5 sha256=<hex of body>
//! 1,1
//! 2,-24
//! ...
//! ```

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use num_bigint::BigInt;
use sha2::{Digest, Sha256};

use super::form::FormDescriptor;
use super::table::CoefficientTable;
use crate::error::{Error, Result};

const MAGIC: &str = "#eigenform-table";
const VERSION: &str = "v1";

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> Error + '_ {
    move |source| Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

pub(crate) fn body_of(table: &CoefficientTable) -> String {
    let mut body = String::new();
    for (n, c) in table.iter() {
        writeln!(body, "{n},{c}").unwrap();
    }
    body
}

/// Serialize a table to the cache format.
pub fn render_table(table: &CoefficientTable) -> String {
    let body = body_of(table);
    let digest = hex::encode(Sha256::digest(body.as_bytes()));
    format!(
        "{MAGIC} {VERSION} weight={} level={} limit={} sha256={digest}\n{body}",
        table.form().weight(),
        table.form().level(),
        table.limit()
    )
}

pub fn save_table(path: &Path, table: &CoefficientTable) -> Result<()> {
    if let Some(dir) = path.parent() {
        if !dir.as_os_str().is_empty() {
            fs::create_dir_all(dir).map_err(io_err(dir))?;
        }
    }
    fs::write(path, render_table(table)).map_err(io_err(path))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableHeader {
    pub weight: u32,
    pub level: u32,
    pub limit: u64,
    pub sha256: String,
}

fn parse_header(line: &str) -> Result<TableHeader> {
    let malformed = |reason: &str| Error::Malformed {
        line: 1,
        reason: reason.to_string(),
    };
    let mut parts = line.split_whitespace();
    if parts.next() != Some(MAGIC) {
        return Err(malformed("missing #eigenform-table header"));
    }
    match parts.next() {
        Some(VERSION) => {}
        Some(v) => return Err(Error::Version(v.to_string())),
        None => return Err(malformed("missing version")),
    }
    let (mut weight, mut level, mut limit, mut sha) = (None, None, None, None);
    for kv in parts {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| malformed("header field without '='"))?;
        match k {
            "weight" => weight = v.parse().ok(),
            "level" => level = v.parse().ok(),
            "limit" => limit = v.parse().ok(),
            "sha256" => sha = Some(v.to_string()),
            _ => return Err(malformed("unknown header field")),
        }
    }
    Ok(TableHeader {
        weight: weight.ok_or_else(|| malformed("bad or missing weight"))?,
        level: level.ok_or_else(|| malformed("bad or missing level"))?,
        limit: limit.ok_or_else(|| malformed("bad or missing limit"))?,
        sha256: sha.ok_or_else(|| malformed("missing sha256"))?,
    })
}

/// Parse a cache file's text, checking the checksum and row structure.
pub fn parse_table(text: &str, expected: Option<FormDescriptor>) -> Result<CoefficientTable> {
    let (header_line, body) = text.split_once('\n').ok_or(Error::Malformed {
        line: 1,
        reason: "no header line".into(),
    })?;
    let header = parse_header(header_line)?;
    let actual = hex::encode(Sha256::digest(body.as_bytes()));
    if actual != header.sha256 {
        return Err(Error::Checksum {
            expected: header.sha256,
            actual,
        });
    }
    let form = FormDescriptor::new(header.weight)?;
    if header.level != 1 {
        return Err(Error::Malformed {
            line: 1,
            reason: format!("level {} is not supported", header.level),
        });
    }
    if let Some(exp) = expected {
        if exp != form {
            return Err(Error::DescriptorMismatch {
                expected: exp.to_string(),
                found: form.to_string(),
            });
        }
    }
    let mut values = Vec::with_capacity(header.limit as usize);
    for (i, row) in body.lines().enumerate() {
        let line = i + 2;
        let bad = |reason: &str| Error::Malformed {
            line,
            reason: reason.to_string(),
        };
        let (n, v) = row.split_once(',').ok_or_else(|| bad("expected <n>,<value>"))?;
        let n: u64 = n.parse().map_err(|_| bad("index is not an integer"))?;
        if n != i as u64 + 1 {
            return Err(bad("indices must run 1, 2, 3, ..."));
        }
        let v: BigInt = v.parse().map_err(|_| bad("value is not a decimal integer"))?;
        values.push(v);
    }
    if values.len() as u64 != header.limit {
        return Err(Error::Malformed {
            line: values.len() + 1,
            reason: format!("header limit {} but {} rows", header.limit, values.len()),
        });
    }
    Ok(CoefficientTable::from_coefficients(form, values))
}

pub fn load_table(path: &Path, expected: Option<FormDescriptor>) -> Result<CoefficientTable> {
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    parse_table(&text, expected)
}

/// Header of an existing cache file, without reading the body.
pub fn read_header(path: &Path) -> Result<TableHeader> {
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    parse_header(text.lines().next().unwrap_or(""))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigenform::{delta_series, eigenform_table};

    #[test]
    fn round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("delta.csv");
        let t = delta_series(1000).unwrap();
        save_table(&path, &t).unwrap();
        let back = load_table(&path, Some(FormDescriptor::DELTA)).unwrap();
        assert_eq!(back, t);
        let text = fs::read_to_string(&path).unwrap();
        assert!(text.starts_with("#eigenform-table v1 weight=12 level=1 limit=1000 sha256="));
        assert!(text.contains("\n2,-24\n"));
    }

    #[test]
    fn truncated_file_fails_checksum() {
        let text = render_table(&delta_series(50).unwrap());
        let cut = &text[..text.len() - 20];
        assert!(matches!(parse_table(cut, None), Err(Error::Checksum { .. })));
    }

    #[test]
    fn wrong_form_is_rejected() {
        let t = eigenform_table(FormDescriptor::new(16).unwrap(), 20).unwrap();
        let text = render_table(&t);
        assert!(matches!(
            parse_table(&text, Some(FormDescriptor::DELTA)),
            Err(Error::DescriptorMismatch { .. })
        ));
        assert!(parse_table(&text, None).is_ok());
    }

    #[test]
    fn version_and_rows() {
        let text = render_table(&delta_series(5).unwrap()).replacen("v1", "v2", 1);
        assert!(matches!(parse_table(&text, None), Err(Error::Version(_))));

        let body = "1,1\n3,252\n";
        let digest = hex::encode(Sha256::digest(body.as_bytes()));
        let text = format!("#eigenform-table v1 weight=12 level=1 limit=2 sha256={digest}\n{body}");
        assert!(matches!(
            parse_table(&text, None),
            Err(Error::Malformed { line: 3, .. })
        ));
    }
}
