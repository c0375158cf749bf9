//! Text forms used by the CLI, reports and relator dumps.
//!
//! - words: space-separated letters, `e` for the identity (`"2 1 2"`);
//! - automorphism tokens: `t1`, `s1,2`, `p1,3`, `ad(2 1 2)`, `map(w1,..,wn/v1,..,vn)`,
//!   each optionally suffixed with `^-1`;
//! - expressions: `;`-joined tokens applied right to left, `e` for the identity.

use crate::automorphism::{CoxAutomorphism, Token};
use crate::error::{Error, Result};
use crate::word::Word;

fn parse_index(s: &str) -> Result<usize> {
    s.trim()
        .parse::<usize>()
        .map_err(|_| Error::Parse(format!("bad index `{s}`")))
}

pub fn parse_word(s: &str, rank: usize) -> Result<Word> {
    let s = s.trim();
    if s.is_empty() || s == "e" {
        return if rank == 0 || rank > u8::MAX as usize {
            Err(Error::Unsupported(format!("rank {rank}")))
        } else {
            Ok(Word::identity(rank))
        };
    }
    let raw = s
        .split_whitespace()
        .map(parse_index)
        .collect::<Result<Vec<_>>>()?;
    Word::reduce(&raw, rank)
}

fn parse_pair(s: &str) -> Result<(usize, usize)> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| Error::Parse(format!("expected `i,j`, got `{s}`")))?;
    Ok((parse_index(a)?, parse_index(b)?))
}

fn parse_word_list(s: &str, rank: usize) -> Result<Vec<Word>> {
    s.split(',').map(|w| parse_word(w, rank)).collect()
}

/// Parses one token, without the optional `^-1` suffix.
pub fn parse_token(s: &str, rank: usize) -> Result<Token> {
    let s = s.trim();
    if let Some(inner) = s.strip_prefix("ad(").and_then(|r| r.strip_suffix(')')) {
        return Ok(Token::Ad(parse_word(inner, rank)?));
    }
    if let Some(inner) = s.strip_prefix("map(").and_then(|r| r.strip_suffix(')')) {
        let (a, b) = inner
            .split_once('/')
            .ok_or_else(|| Error::Parse("map(...) needs `images/inverse_images`".into()))?;
        return Ok(Token::Verified {
            images: parse_word_list(a, rank)?,
            inverse_images: parse_word_list(b, rank)?,
        });
    }
    if let Some(rest) = s.strip_prefix('t') {
        return Ok(Token::Tau(parse_index(rest)?));
    }
    if let Some(rest) = s.strip_prefix('s') {
        let (i, j) = parse_pair(rest)?;
        return Ok(Token::Sigma(i, j));
    }
    if let Some(rest) = s.strip_prefix('p') {
        let (i, j) = parse_pair(rest)?;
        return Ok(Token::Swap(i, j));
    }
    Err(Error::Parse(format!("unknown token `{s}`")))
}

/// Parses a `;`-joined expression into an automorphism.
pub fn parse_expr(s: &str, rank: usize) -> Result<CoxAutomorphism> {
    let s = s.trim();
    if rank == 0 || rank > u8::MAX as usize {
        return Err(Error::Unsupported(format!("rank {rank}")));
    }
    let mut acc = CoxAutomorphism::identity(rank);
    if s == "e" {
        return Ok(acc);
    }
    for part in s.split(';') {
        let part = part.trim();
        if part.is_empty() {
            return Err(Error::Parse("empty token".into()));
        }
        let (body, inverted) = match part.strip_suffix("^-1") {
            Some(b) => (b, true),
            None => (part, false),
        };
        let a = if body.trim() == "e" {
            CoxAutomorphism::identity(rank)
        } else {
            CoxAutomorphism::from_token(parse_token(body, rank)?, rank)?
        };
        let a = if inverted { a.inverse() } else { a };
        acc = acc.compose(&a)?;
    }
    Ok(acc)
}

/// Parses `"4"` or `"3..5"` (inclusive).
pub fn parse_range(s: &str) -> Result<(usize, usize)> {
    let s = s.trim();
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (parse_index(a)?, parse_index(b.trim_start_matches('='))?),
        None => {
            let n = parse_index(s)?;
            (n, n)
        }
    };
    if lo > hi {
        return Err(Error::Parse(format!("empty range `{s}`")));
    }
    Ok((lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn words_roundtrip() {
        let w = parse_word("2 1 1 2 3", 3).unwrap();
        assert_eq!(w.to_string(), "3");
        assert!(parse_word("e", 3).unwrap().is_identity());
        assert!(parse_word("4", 3).is_err());
        assert!(parse_word("x", 3).is_err());
        let w = parse_word("1 2 3 1", 3).unwrap();
        assert_eq!(parse_word(&w.to_string(), 3).unwrap(), w);
    }

    #[test]
    fn expressions() {
        let a = parse_expr("s1,4;s2,4;s3,4", 4).unwrap();
        assert_eq!(a, CoxAutomorphism::ad(&parse_word("4", 4).unwrap()));
        let t = parse_expr("t1", 4).unwrap();
        assert_eq!(t, CoxAutomorphism::tau(1, 4).unwrap());
        let p = parse_expr("p1,3", 4).unwrap();
        let q = parse_expr("t1;t2;t1", 4).unwrap();
        assert_eq!(p, q);
        let i = parse_expr("ad(1 2)^-1", 4).unwrap();
        assert_eq!(i, parse_expr("ad(2 1)", 4).unwrap());
        assert!(parse_expr("e", 4).unwrap().is_identity());
        assert!(parse_expr("s1,1", 4).is_err());
        assert!(parse_expr("t1;;t2", 4).is_err());
        assert!(parse_expr("q7", 4).is_err());
    }

    #[test]
    fn trace_text_reparses() {
        let a = parse_expr("t1;s1,2;ad(3 2)", 3).unwrap();
        let b = parse_expr(&a.trace_string(), 3).unwrap();
        assert_eq!(a, b);
        let mut c = a.clone();
        c.compact();
        let d = parse_expr(&c.trace_string(), 3).unwrap();
        assert_eq!(a, d);
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range("3..5").unwrap(), (3, 5));
        assert_eq!(parse_range("4").unwrap(), (4, 4));
        assert!(parse_range("5..3").is_err());
    }
}
