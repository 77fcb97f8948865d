//! Shared line tokenizer for the text formats.

use std::fmt;

use thiserror::Error;

/// Syntax error with a 1-based line and column.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError { line, column, message: message.into() }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Token<'a> {
    pub text: &'a str,
    pub line: usize,
    pub column: usize,
}

impl Token<'_> {
    pub fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError::new(self.line, self.column, message)
    }

    pub fn error_at(&self, column: usize, message: impl Into<String>) -> ParseError {
        ParseError::new(self.line, column, message)
    }

    pub fn parse_usize(&self) -> Result<usize, ParseError> {
        self.text.parse().map_err(|_| self.error(format!("expected a non-negative integer, found {:?}", self.text)))
    }

    /// Parses a 1-based index in `1..=max` and returns it 0-based.
    pub fn parse_index(&self, max: usize, what: &str) -> Result<usize, ParseError> {
        let v = self.parse_usize()?;
        if v == 0 || v > max {
            return Err(self.error(format!("{what} {v} out of range 1..={max}")));
        }
        Ok(v - 1)
    }
}

/// Whitespace-separated tokens of one line, with 1-based columns.
pub fn tokens(line_text: &str, line: usize) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line_text.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push(Token { text: &line_text[s..i], line, column: s + 1 });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push(Token { text: &line_text[s..], line, column: s + 1 });
    }
    out
}

/// Non-comment, non-blank lines with their 1-based numbers.
pub fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().map(|(i, l)| (i + 1, l)).filter(|(_, l)| !(l.trim().is_empty() || *l == "c" || l.starts_with("c ")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn columns_are_one_based() {
        let t = tokens("  ab  c", 4);
        assert_eq!(t.len(), 2);
        assert_eq!((t[0].text, t[0].column, t[0].line), ("ab", 3, 4));
        assert_eq!((t[1].text, t[1].column), ("c", 7));
    }
}
