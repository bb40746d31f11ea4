//! Line-oriented tokenizing shared by the text formats.

use std::str::FromStr;

use thiserror::Error;

/// A format error pinned to a 1-based input line (0 when the problem is not
/// tied to one line, e.g. a missing header).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("malformed header: {0}")]
    Header(String),
    #[error("missing header line")]
    MissingHeader,
    #[error("{0}")]
    Syntax(String),
    #[error("self-loop on node {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("id {id} out of range 1..={max}")]
    OutOfRange { id: usize, max: usize },
    #[error("expected {expected} {what}, found {found}")]
    Count {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("{0}")]
    Invalid(String),
}

impl ParseError {
    pub fn new(line: usize, kind: ParseErrorKind) -> Self {
        ParseError { line, kind }
    }

    pub fn syntax(line: usize, message: impl Into<String>) -> Self {
        ParseError::new(line, ParseErrorKind::Syntax(message.into()))
    }
}

/// One non-blank, non-comment line split on whitespace.
pub struct Line<'a> {
    pub number: usize,
    pub tokens: Vec<&'a str>,
}

impl<'a> Line<'a> {
    pub fn key(&self) -> &'a str {
        self.tokens[0]
    }

    pub fn args(&self) -> &[&'a str] {
        &self.tokens[1..]
    }

    pub fn expect_args(&self, count: usize) -> Result<&[&'a str], ParseError> {
        if self.args().len() != count {
            return Err(ParseError::syntax(
                self.number,
                format!(
                    "`{}` line takes {count} fields, found {}",
                    self.key(),
                    self.args().len()
                ),
            ));
        }
        Ok(self.args())
    }

    pub fn number_at<T: FromStr>(&self, index: usize) -> Result<T, ParseError> {
        let raw = self.tokens[index];
        raw.parse()
            .map_err(|_| ParseError::syntax(self.number, format!("`{raw}` is not a valid number")))
    }

    /// A 1-based id in `1..=max`, returned 0-based.
    pub fn id_at(&self, index: usize, max: usize) -> Result<usize, ParseError> {
        let id: usize = self.number_at(index)?;
        if id == 0 || id > max {
            return Err(ParseError::new(
                self.number,
                ParseErrorKind::OutOfRange { id, max },
            ));
        }
        Ok(id - 1)
    }
}

/// Content lines; blank lines and lines starting with `c` are skipped.
pub fn lines(text: &str) -> impl Iterator<Item = Line<'_>> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let tokens: Vec<&str> = raw.split_whitespace().collect();
        match tokens.first() {
            None | Some(&"c") => None,
            Some(_) => Some(Line {
                number: i + 1,
                tokens,
            }),
        }
    })
}

/// Whitespace or comma separated 1-based ids, returned 0-based.
pub fn parse_id_list(text: &str, max: usize) -> Result<Vec<usize>, ParseError> {
    let mut ids = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("");
        for token in content
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
        {
            let id: usize = token
                .parse()
                .map_err(|_| ParseError::syntax(i + 1, format!("`{token}` is not a node id")))?;
            if id == 0 || id > max {
                return Err(ParseError::new(
                    i + 1,
                    ParseErrorKind::OutOfRange { id, max },
                ));
            }
            ids.push(id - 1);
        }
    }
    ids.sort_unstable();
    ids.dedup();
    Ok(ids)
}
