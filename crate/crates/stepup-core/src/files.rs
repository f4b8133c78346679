//! Line-oriented parsing shared by the on-disk formats.
//!
//! All three formats are plain UTF-8: a one-line header, then one record per
//! line. Blank lines and lines starting with `#` are skipped on input and
//! never produced on output, so writers are canonical.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}: {msg}")]
pub struct ParseError {
    /// 1-based line number in the input.
    pub line: usize,
    pub msg: String,
}

impl ParseError {
    pub fn new(line: usize, msg: impl Into<String>) -> Self {
        ParseError { line, msg: msg.into() }
    }
}

/// Yields (1-based line number, trimmed content) for content lines only.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

/// Parses a `<keyword> <int> <int>` header.
pub(crate) fn parse_header(line_no: usize, line: &str, keyword: &str) -> Result<(usize, u64), ParseError> {
    let mut it = line.split_whitespace();
    let word = it.next().unwrap_or("");
    if word != keyword {
        return Err(ParseError::new(
            line_no,
            format!("expected `{keyword}` header, found `{word}`"),
        ));
    }
    let k = it
        .next()
        .and_then(|t| t.parse::<usize>().ok())
        .ok_or_else(|| ParseError::new(line_no, "header missing uniformity"))?;
    let v = it
        .next()
        .and_then(|t| t.parse::<u64>().ok())
        .ok_or_else(|| ParseError::new(line_no, "header missing ground size"))?;
    if let Some(extra) = it.next() {
        return Err(ParseError::new(line_no, format!("unexpected token `{extra}` in header")));
    }
    Ok((k, v))
}

/// Parses one record line as a strictly increasing k-subset of [0, v).
pub(crate) fn parse_subset_line(line_no: usize, line: &str, k: usize, v: u64) -> Result<Vec<u64>, ParseError> {
    let mut out = Vec::with_capacity(k);
    for tok in line.split_whitespace() {
        let x: u64 = tok
            .parse()
            .map_err(|_| ParseError::new(line_no, format!("`{tok}` is not a vertex index")))?;
        if x >= v {
            return Err(ParseError::new(line_no, format!("vertex {x} outside ground [0, {v})")));
        }
        if let Some(&last) = out.last() {
            if last >= x {
                return Err(ParseError::new(
                    line_no,
                    format!("indices must be strictly increasing ({last} then {x})"),
                ));
            }
        }
        out.push(x);
    }
    if out.len() != k {
        return Err(ParseError::new(
            line_no,
            format!("expected {k} indices, found {}", out.len()),
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_and_subset_lines() {
        assert_eq!(parse_header(1, "hypergraph 4 6", "hypergraph").unwrap(), (4, 6));
        assert!(parse_header(1, "coloring 3", "coloring").is_err());
        assert!(parse_header(1, "graph 3 6", "coloring").is_err());
        assert_eq!(parse_subset_line(2, "0 2 5", 3, 6).unwrap(), vec![0, 2, 5]);
        assert!(parse_subset_line(2, "0 2 2", 3, 6).is_err());
        assert!(parse_subset_line(2, "0 2 6", 3, 6).is_err());
        assert!(parse_subset_line(2, "0 2", 3, 6).is_err());
        assert_eq!(parse_subset_line(3, "0 2 9", 3, 8).unwrap_err().line, 3);
    }

    #[test]
    fn comments_and_blanks_skipped() {
        let got: Vec<_> = content_lines("a\n\n# c\n b \n").collect();
        assert_eq!(got, vec![(1, "a"), (4, "b")]);
    }
}
