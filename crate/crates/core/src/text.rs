//! Plain-text permutation files: one permutation per line, whitespace
//! separated labels, `-` marks a negative element, `#` starts a comment line.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::perm::{RawLabel, Sign};

pub fn parse_permutations(text: &str) -> Result<Vec<Vec<RawLabel>>> {
    let mut rows = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let row = line
            .split_whitespace()
            .map(|token| parse_label(token).ok_or_else(|| Error::Parse { line: i + 1, token: token.to_owned() }))
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    Ok(rows)
}

fn parse_label(token: &str) -> Option<RawLabel> {
    let (sign, digits) = match token.as_bytes().first()? {
        b'-' => (Sign::Minus, &token[1..]),
        b'+' => (Sign::Plus, &token[1..]),
        _ => (Sign::Plus, token),
    };
    if digits.is_empty() || !digits.bytes().all(|c| c.is_ascii_digit()) {
        return None;
    }
    Some(RawLabel { label: digits.parse().ok()?, sign })
}

/// Renders rows of signed labels in the format read by [`parse_permutations`].
pub fn format_rows(rows: &[Vec<i64>]) -> String {
    let mut out = String::new();
    for row in rows {
        for (i, v) in row.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            write!(out, "{v}").unwrap();
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_signs_comments_and_blanks() {
        let rows = parse_permutations("# genomes\n1 2 3\n\n  1 -3 +2 \n").unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[1][1], RawLabel { label: 3, sign: Sign::Minus });
        assert_eq!(rows[1][2], RawLabel { label: 2, sign: Sign::Plus });
    }

    #[test]
    fn rejects_garbage() {
        assert_eq!(
            parse_permutations("1 2\n1 x\n"),
            Err(Error::Parse { line: 2, token: "x".into() })
        );
        assert!(parse_permutations("1 -\n").is_err());
        assert!(parse_permutations("1 --2\n").is_err());
    }

    #[test]
    fn format_then_parse() {
        let rows = vec![vec![1, 2, 3], vec![1, -3, -2]];
        let parsed = parse_permutations(&format_rows(&rows)).unwrap();
        let back: Vec<Vec<i64>> = parsed
            .iter()
            .map(|r| r.iter().map(|l| l.sign.apply(l.label as i64)).collect())
            .collect();
        assert_eq!(back, rows);
    }
}
