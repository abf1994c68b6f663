//! Matrix files and comma-separated argument lists.

use std::path::Path;

use bilat_core::lattice::validate_seed;
use bilat_core::{Error, IntMatrix, Result, TriangularSeed};
use num::BigInt;

/// Parses the plain-text matrix format: the rank `n` on the first line,
/// then `n` rows of `n` whitespace-separated integers. Blank lines and
/// lines starting with `#` are ignored.
pub fn parse_matrix(text: &str) -> Result<TriangularSeed> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines.next().ok_or_else(|| Error::Parse("empty matrix file".into()))?;
    let n: usize = header
        .parse()
        .map_err(|_| Error::Parse(format!("first line must be the rank, got {header:?}")))?;
    if n == 0 {
        return Err(Error::Parse("rank must be positive".into()));
    }
    let mut entries = Vec::with_capacity(n * n);
    for i in 0..n {
        let line = lines
            .next()
            .ok_or_else(|| Error::Parse(format!("expected {n} rows, found {i}")))?;
        let row: Vec<BigInt> = line
            .split_whitespace()
            .map(|t| t.parse::<BigInt>().map_err(|_| Error::Parse(format!("row {}: bad integer {t:?}", i + 1))))
            .collect::<Result<_>>()?;
        if row.len() != n {
            return Err(Error::Parse(format!("row {} has {} entries, expected {n}", i + 1, row.len())));
        }
        entries.extend(row);
    }
    if let Some(extra) = lines.next() {
        return Err(Error::Parse(format!("unexpected trailing line {extra:?}")));
    }
    validate_seed(IntMatrix::new(n, n, entries)?)
}

pub fn read_input(path: &Path) -> Result<Vec<u8>> {
    std::fs::read(path).map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))
}

pub fn read_matrix(path: &Path) -> Result<(TriangularSeed, Vec<u8>)> {
    let bytes = read_input(path)?;
    let text = std::str::from_utf8(&bytes).map_err(|_| Error::Parse("matrix file is not UTF-8".into()))?;
    Ok((parse_matrix(text)?, bytes))
}

/// `"1,2,3"` as a list of positive integers.
pub fn parse_index_list(s: &str) -> Result<Vec<u64>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<u64>()
                .ok()
                .filter(|&m| m > 0)
                .ok_or_else(|| Error::Parse(format!("bad index {t:?}")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_format() {
        let s = parse_matrix("2\n1 -1\n0 1\n").unwrap();
        assert_eq!(s, TriangularSeed::from_rows(&[[1, -1], [0, 1]]));
        let s = parse_matrix("# A_1\n\n1\n  1 \n").unwrap();
        assert_eq!(s.rank(), 1);
    }

    #[test]
    fn malformed_matrices() {
        assert!(matches!(parse_matrix(""), Err(Error::Parse(_))));
        assert!(matches!(parse_matrix("2\n1 0\n"), Err(Error::Parse(_))));
        assert!(matches!(parse_matrix("2\n1 0 0\n0 1\n"), Err(Error::Parse(_))));
        assert!(matches!(parse_matrix("2\n1 x\n0 1\n"), Err(Error::Parse(_))));
        assert!(matches!(parse_matrix("1\n1\n1\n"), Err(Error::Parse(_))));
        assert_eq!(parse_matrix("2\n1 0\n1 1\n").unwrap_err(), Error::NotUnitUpperTriangular);
        assert_eq!(parse_matrix("2\n2 0\n0 1\n").unwrap_err(), Error::NotUnitUpperTriangular);
    }

    #[test]
    fn index_lists() {
        assert_eq!(parse_index_list("1, 2,16").unwrap(), vec![1, 2, 16]);
        assert!(parse_index_list("1,,2").is_err());
        assert!(parse_index_list("0").is_err());
    }
}
