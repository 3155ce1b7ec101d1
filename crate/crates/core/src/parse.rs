//! Text formats for identities, variable words, letter words and basis lists.
//!
//! ```text
//! identity := tag | word ('=' | '≈') word
//! word     := '1' | item+          item := [a-z] ('^' digits)?
//! letters  := positive integers separated by whitespace or commas
//! basis    := entries separated by ',', ';' or newlines; '#' starts a comment
//! ```
//! Whitespace between items is ignored. Reported positions count characters.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::identity::{Identity, NamedIdentity};
use crate::word::{Letter, Var, Word};

/// Largest exponent accepted in `x^n`, to keep inputs bounded.
pub const MAX_EXPONENT: usize = 100_000;

fn err(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse { pos, msg: msg.into() }
}

struct Cursor<'a> {
    chars: Vec<(usize, char)>,
    i: usize,
    _src: &'a str,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor { chars: src.chars().enumerate().collect(), i: 0, _src: src }
    }

    fn pos(&self) -> usize {
        self.chars.get(self.i).map(|c| c.0).unwrap_or(self.chars.len())
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.i).map(|c| c.1)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.i += 1;
        }
    }

    fn digits(&mut self) -> Result<usize> {
        let start = self.pos();
        let mut n: usize = 0;
        let mut any = false;
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            any = true;
            n = n
                .checked_mul(10)
                .and_then(|n| n.checked_add(c as usize - '0' as usize))
                .ok_or_else(|| err(start, "number too large"))?;
            self.i += 1;
        }
        if any {
            Ok(n)
        } else {
            Err(err(start, "expected digits"))
        }
    }

    /// Reads a variable word; `names` interns letters across both sides.
    fn var_word(&mut self, names: &mut HashMap<char, Var>) -> Result<Word<Var>> {
        self.skip_ws();
        if self.peek() == Some('1') {
            self.i += 1;
            return Ok(Word::empty());
        }
        let start = self.pos();
        let mut out = Vec::new();
        loop {
            self.skip_ws();
            match self.peek() {
                Some(c) if c.is_ascii_lowercase() => {
                    self.i += 1;
                    let next = Var(names.len() as u32);
                    let v = *names.entry(c).or_insert(next);
                    let mut times = 1;
                    if self.peek() == Some('^') {
                        self.i += 1;
                        let p = self.pos();
                        times = self.digits()?;
                        if times > MAX_EXPONENT {
                            return Err(err(p, format!("exponent above {MAX_EXPONENT}")));
                        }
                    }
                    out.extend(std::iter::repeat(v).take(times));
                }
                _ => break,
            }
        }
        if out.is_empty() && self.pos() == start {
            return Err(match self.peek() {
                Some(c) => err(self.pos(), format!("expected a variable, found {c:?}")),
                None => err(self.pos(), "expected a word, found end of input"),
            });
        }
        Ok(Word::new(out))
    }
}

/// Parses an identity or a named tag such as `L2`; the result is canonical.
pub fn parse_identity(text: &str) -> Result<Identity> {
    if let Some(named) = NamedIdentity::from_tag(text.trim()) {
        return Ok(named.identity().canonical());
    }
    parse_identity_raw(text).map(|id| id.canonical())
}

/// Parses `u = v` keeping the orientation and the order of first appearance.
pub fn parse_identity_raw(text: &str) -> Result<Identity> {
    let mut cur = Cursor::new(text);
    let mut names = HashMap::new();
    let lhs = cur.var_word(&mut names)?;
    cur.skip_ws();
    match cur.peek() {
        Some('=') | Some('≈') => cur.i += 1,
        Some(c) => return Err(err(cur.pos(), format!("expected '=', found {c:?}"))),
        None => return Err(err(cur.pos(), "expected '=', found end of input")),
    }
    let rhs = cur.var_word(&mut names)?;
    cur.skip_ws();
    if let Some(c) = cur.peek() {
        return Err(err(cur.pos(), format!("unexpected {c:?} after identity")));
    }
    Ok(Identity::new(lhs, rhs))
}

/// Parses a single variable word, renaming variables in order of first appearance.
pub fn parse_var_word(text: &str) -> Result<Word<Var>> {
    let mut cur = Cursor::new(text);
    let w = cur.var_word(&mut HashMap::new())?;
    cur.skip_ws();
    if let Some(c) = cur.peek() {
        return Err(err(cur.pos(), format!("unexpected {c:?} after word")));
    }
    Ok(w)
}

/// Parses a letter word such as `"2 1 1"`. An empty string or `ε` is the empty word.
pub fn parse_letter_word(text: &str) -> Result<Word<Letter>> {
    let mut cur = Cursor::new(text);
    let mut out = Vec::new();
    loop {
        while cur.peek().is_some_and(|c| c.is_whitespace() || c == ',') {
            cur.i += 1;
        }
        match cur.peek() {
            None => break,
            Some('ε') if out.is_empty() => {
                cur.i += 1;
                cur.skip_ws();
                if let Some(c) = cur.peek() {
                    return Err(err(cur.pos(), format!("unexpected {c:?} after ε")));
                }
                break;
            }
            Some(c) if c.is_ascii_digit() => {
                let p = cur.pos();
                let n = cur.digits()?;
                let v = u32::try_from(n).map_err(|_| err(p, "letter too large"))?;
                out.push(Letter::new(v).ok_or_else(|| err(p, "letters are positive integers"))?);
                if let Some(c) = cur.peek().filter(|c| !c.is_whitespace() && *c != ',') {
                    return Err(err(cur.pos(), format!("unexpected {c:?} in letter")));
                }
            }
            Some(c) => return Err(err(cur.pos(), format!("expected a positive integer, found {c:?}"))),
        }
    }
    Ok(Word::new(out))
}

/// One entry of a basis list, labelled by its tag or its source text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisEntry {
    pub label: String,
    pub identity: Identity,
}

/// Parses a list of identities and tags. Named tags keep their usual variable names.
pub fn parse_basis(text: &str) -> Result<Vec<BasisEntry>> {
    let mut out = Vec::new();
    let mut offset = 0;
    for line in text.split_inclusive('\n') {
        let body = line.split('#').next().unwrap_or("");
        let mut col = 0;
        for entry in body.split([',', ';']) {
            let trimmed = entry.trim();
            if !trimmed.is_empty() {
                let at = offset + col + entry.chars().take_while(|c| c.is_whitespace()).count();
                let parsed = match NamedIdentity::from_tag(trimmed) {
                    Some(n) => BasisEntry { label: n.tag().to_string(), identity: n.identity() },
                    None => {
                        let identity = parse_identity_raw(trimmed).map_err(|e| match e {
                            Error::Parse { pos, msg } => Error::Parse { pos: pos + at, msg },
                            other => other,
                        })?;
                        BasisEntry { label: trimmed.to_string(), identity }
                    }
                };
                out.push(parsed);
            }
            col += entry.chars().count() + 1;
        }
        offset += line.chars().count();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_examples() {
        let l2 = parse_identity("xzytxy = xzytyx").unwrap();
        assert_eq!(l2, NamedIdentity::L2.identity().canonical());
        assert_eq!(parse_identity("L2").unwrap(), l2);
        assert!(parse_identity("x = x").unwrap().is_trivial());
        assert!(matches!(parse_identity("xy ="), Err(Error::Parse { pos: 4, .. })));
    }

    #[test]
    fn exponents_and_unicode_equals() {
        let a = parse_identity("x^2y^2 ≈ y^2x^2").unwrap();
        assert!(a.equivalent_to(&NamedIdentity::M4.identity()));
        assert_eq!(parse_identity_raw("1 = x").unwrap().lhs, Word::empty());
        assert!(parse_identity("x^ = x").is_err());
        assert!(parse_identity("x^999999 = x").is_err());
    }

    #[test]
    fn error_positions() {
        match parse_identity("xy = xQ") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 6),
            other => panic!("{other:?}"),
        }
        match parse_identity("xy + yx") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 3),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn letter_words() {
        assert_eq!(parse_letter_word("2 1 1").unwrap(), Word::letters(&[2, 1, 1]));
        assert_eq!(parse_letter_word("10,2").unwrap(), Word::letters(&[10, 2]));
        assert_eq!(parse_letter_word("").unwrap(), Word::empty());
        assert_eq!(parse_letter_word(" ε ").unwrap(), Word::empty());
        assert!(matches!(parse_letter_word("1 0"), Err(Error::Parse { pos: 2, .. })));
        assert!(parse_letter_word("1 x").is_err());
        assert!(parse_letter_word("12a").is_err());
        assert!(parse_letter_word("99999999999").is_err());
    }

    #[test]
    fn basis_lists() {
        let b = parse_basis("L1, R2\n# comment\nxxyy = yyxx ; M3").unwrap();
        let labels: Vec<&str> = b.iter().map(|e| e.label.as_str()).collect();
        assert_eq!(labels, ["L1", "R2", "xxyy = yyxx", "M3"]);
        assert_eq!(b[0].identity, NamedIdentity::L1.identity());
        match parse_basis("L1,\nxy = ?") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 9),
            other => panic!("{other:?}"),
        }
    }
}
