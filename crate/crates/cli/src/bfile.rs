//! OEIS b-file ingestion: lines `index value`, `#` comments, blank lines.

use std::path::Path;

use num_bigint::BigInt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BFileRecord {
    pub index: u64,
    pub value: BigInt,
}

#[derive(Debug, thiserror::Error)]
pub enum BFileError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub fn parse_bfile(text: &str) -> Result<Vec<BFileRecord>, BFileError> {
    let mut out: Vec<BFileRecord> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |message: String| BFileError::Parse { line: i + 1, message };
        let mut fields = line.split_whitespace();
        let (Some(n), Some(v), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(err(format!("expected `index value`, got `{line}`")));
        };
        let index: u64 = n.parse().map_err(|_| err(format!("bad index `{n}`")))?;
        let value: BigInt = v.parse().map_err(|_| err(format!("bad value `{v}`")))?;
        if let Some(prev) = out.last() {
            if index <= prev.index {
                return Err(err(format!("index {index} does not increase (previous {})", prev.index)));
            }
        }
        out.push(BFileRecord { index, value });
    }
    Ok(out)
}

pub fn read_bfile(path: &Path) -> Result<Vec<BFileRecord>, BFileError> {
    let text = std::fs::read_to_string(path).map_err(|source| BFileError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_bfile(&text)
}

/// Downloads `https://oeis.org/<tag>/b<digits>.txt` with the system `curl`.
pub fn fetch_bfile(tag: &str, dest: &Path) -> Result<(), String> {
    let digits = tag.trim_start_matches(['A', 'a']);
    let url = format!("https://oeis.org/{tag}/b{digits}.txt");
    let status = std::process::Command::new("curl")
        .args(["--fail", "--silent", "--show-error", "--location", "--output"])
        .arg(dest)
        .arg(&url)
        .status()
        .map_err(|e| format!("cannot run curl: {e}"))?;
    if status.success() {
        Ok(())
    } else {
        Err(format!("download of {url} failed ({status})"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let r = parse_bfile("0 1\n1 1\n2 2").unwrap();
        assert_eq!(r.len(), 3);
        assert_eq!(r[2], BFileRecord { index: 2, value: BigInt::from(2) });
        let r = parse_bfile("# comment\n5 53").unwrap();
        assert_eq!(r, vec![BFileRecord { index: 5, value: BigInt::from(53) }]);
        match parse_bfile("3 x") {
            Err(BFileError::Parse { line, .. }) => assert_eq!(line, 1),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn rejects_bad_order_and_shape() {
        assert!(matches!(parse_bfile("1 1\n\n1 2"), Err(BFileError::Parse { line: 3, .. })));
        assert!(matches!(parse_bfile("2 1\n1 2"), Err(BFileError::Parse { line: 2, .. })));
        assert!(parse_bfile("1 2 3").is_err());
        assert!(parse_bfile("-1 2").is_err());
        let big = parse_bfile("20 1358836910105329123456789").unwrap();
        assert_eq!(big[0].value.to_string(), "1358836910105329123456789");
    }
}
