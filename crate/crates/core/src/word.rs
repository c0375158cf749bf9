//! Reduced words in the universal Coxeter group `W_n = <x_1, ..., x_n | x_i^2 = 1>`.
//!
//! Every element has a unique reduced spelling (no two equal adjacent letters),
//! so words are stored reduced and equality is structural.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// An element of `W_n` in free-product normal form.
///
/// Letters are 1-based generator indices. Ordering is by rank, then length,
/// then lexicographic on letters; this is the tie-breaking order used by every
/// canonical form in the crate.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Word {
    rank: usize,
    letters: Vec<u8>,
}

fn check_rank(rank: usize) -> Result<()> {
    if rank == 0 || rank > u8::MAX as usize {
        return Err(Error::Unsupported(format!("rank {rank}")));
    }
    Ok(())
}

/// Appends `letter` to a reduced buffer, cancelling `x_i x_i`.
#[inline]
fn push_reduced(buf: &mut Vec<u8>, letter: u8) {
    if buf.last() == Some(&letter) {
        buf.pop();
    } else {
        buf.push(letter);
    }
}

impl Word {
    pub fn identity(rank: usize) -> Self {
        Word {
            rank,
            letters: Vec::new(),
        }
    }

    /// The generator `x_i`.
    pub fn generator(i: usize, rank: usize) -> Result<Self> {
        check_rank(rank)?;
        if i == 0 || i > rank {
            return Err(Error::IndexOutOfRank { index: i, rank });
        }
        Ok(Word {
            rank,
            letters: vec![i as u8],
        })
    }

    /// Reduces an arbitrary sequence of generator indices.
    pub fn reduce(raw: &[usize], rank: usize) -> Result<Self> {
        check_rank(rank)?;
        let mut buf = Vec::with_capacity(raw.len());
        for &i in raw {
            if i == 0 || i > rank {
                return Err(Error::IndexOutOfRank { index: i, rank });
            }
            push_reduced(&mut buf, i as u8);
        }
        Ok(Word { rank, letters: buf })
    }

    /// Builds a word from letters already known to be reduced and in range.
    pub(crate) fn from_reduced(rank: usize, letters: Vec<u8>) -> Self {
        debug_assert!(letters.windows(2).all(|w| w[0] != w[1]));
        debug_assert!(letters.iter().all(|&l| l >= 1 && l as usize <= rank));
        Word { rank, letters }
    }

    /// Reduces a letter buffer whose entries are already in range.
    pub(crate) fn from_raw_letters(rank: usize, raw: impl IntoIterator<Item = u8>) -> Self {
        let mut buf = Vec::new();
        for l in raw {
            push_reduced(&mut buf, l);
        }
        Word { rank, letters: buf }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn first(&self) -> Option<usize> {
        self.letters.first().map(|&l| l as usize)
    }

    pub fn last(&self) -> Option<usize> {
        self.letters.last().map(|&l| l as usize)
    }

    fn same_rank(&self, other: &Word) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch {
                left: self.rank,
                right: other.rank,
            });
        }
        Ok(())
    }

    /// Reduced product `self * other`.
    pub fn mul(&self, other: &Word) -> Result<Word> {
        self.same_rank(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Word) -> Word {
        debug_assert_eq!(self.rank, other.rank);
        let a = &self.letters;
        let b = &other.letters;
        let mut k = 0;
        while k < a.len() && k < b.len() && a[a.len() - 1 - k] == b[k] {
            k += 1;
        }
        let mut letters = Vec::with_capacity(a.len() + b.len() - 2 * k);
        letters.extend_from_slice(&a[..a.len() - k]);
        letters.extend_from_slice(&b[k..]);
        Word {
            rank: self.rank,
            letters,
        }
    }

    /// Product of several words of the same rank.
    pub(crate) fn product<'a>(rank: usize, parts: impl IntoIterator<Item = &'a Word>) -> Word {
        let mut buf = Vec::new();
        for w in parts {
            debug_assert_eq!(w.rank, rank);
            for &l in &w.letters {
                push_reduced(&mut buf, l);
            }
        }
        Word { rank, letters: buf }
    }

    /// Each generator is an involution, so the inverse is the reversal.
    pub fn inverse(&self) -> Word {
        let mut letters = self.letters.clone();
        letters.reverse();
        Word {
            rank: self.rank,
            letters,
        }
    }

    /// Reduced form of `g * self * g^-1`.
    pub fn conjugate(&self, g: &Word) -> Result<Word> {
        self.same_rank(g)?;
        Ok(Word::product(self.rank, [g, self, &g.inverse()]))
    }

    /// Splits `self = conjugator * core * conjugator^-1` with `core` cyclically
    /// reduced (first letter differs from last, or length at most one).
    pub fn cyclic_reduce(&self) -> (Word, Word) {
        let l = &self.letters;
        let mut k = 0;
        while l.len() >= 2 * k + 2 && l[k] == l[l.len() - 1 - k] {
            k += 1;
        }
        let core = Word::from_reduced(self.rank, l[k..l.len() - k].to_vec());
        let conj = Word::from_reduced(self.rank, l[..k].to_vec());
        (core, conj)
    }

    /// Conjugacy in `W_n`: cyclic cores agree up to rotation.
    pub fn is_conjugate(&self, other: &Word) -> Result<bool> {
        self.same_rank(other)?;
        let (a, _) = self.cyclic_reduce();
        let (b, _) = other.cyclic_reduce();
        if a.len() != b.len() {
            return Ok(false);
        }
        if a.len() <= 1 {
            return Ok(a == b);
        }
        let n = a.len();
        Ok((0..n).any(|r| (0..n).all(|i| a.letters[(i + r) % n] == b.letters[i])))
    }

    /// An element is an involution iff it is a nonempty odd-length palindrome.
    pub fn is_involution(&self) -> bool {
        let l = &self.letters;
        l.len() % 2 == 1 && l.iter().eq(l.iter().rev())
    }

    /// Writes an involution as `w * x_j * w^-1` with `w` not ending in `x_j`.
    pub fn involution_decompose(&self) -> Result<(Word, usize)> {
        if !self.is_involution() {
            return Err(Error::NotAnInvolution(self.to_string()));
        }
        let k = self.letters.len() / 2;
        let w = Word::from_reduced(self.rank, self.letters[..k].to_vec());
        Ok((w, self.letters[k] as usize))
    }
}

/// Every reduced word of length at most `max_len`, shortest first.
pub fn all_words(rank: usize, max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::identity(rank)];
    let mut layer = vec![Vec::<u8>::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for x in 1..=rank as u8 {
                if w.last() != Some(&x) {
                    let mut v = w.clone();
                    v.push(x);
                    next.push(v);
                }
            }
        }
        out.extend(next.iter().map(|l| Word::from_reduced(rank, l.clone())));
        layer = next;
    }
    out
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rank
            .cmp(&other.rank)
            .then(self.letters.len().cmp(&other.letters.len()))
            .then_with(|| self.letters.cmp(&other.letters))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("e");
        }
        for (k, l) in self.letters.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word[{}]({})", self.rank, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(raw: &[usize], n: usize) -> Word {
        Word::reduce(raw, n).unwrap()
    }

    #[test]
    fn reduce_examples() {
        assert!(w(&[1, 1], 3).is_identity());
        assert_eq!(w(&[1, 2, 2, 3], 3).letters(), &[1, 3]);
        assert_eq!(w(&[2, 1, 1, 2, 3], 3).letters(), &[3]);
    }

    #[test]
    fn reduce_rejects_out_of_range() {
        assert_eq!(
            Word::reduce(&[1, 4], 3),
            Err(Error::IndexOutOfRank { index: 4, rank: 3 })
        );
        assert!(Word::reduce(&[0], 3).is_err());
    }

    #[test]
    fn multiply_examples() {
        assert!(w(&[1, 2], 3).mul(&w(&[2, 1], 3)).unwrap().is_identity());
        assert_eq!(w(&[1, 2], 3).mul(&w(&[3], 3)).unwrap().letters(), &[1, 2, 3]);
        assert_eq!(w(&[2], 3).mul(&w(&[1, 2], 3)).unwrap().letters(), &[2, 1, 2]);
        assert!(matches!(
            w(&[1], 3).mul(&w(&[1], 4)),
            Err(Error::RankMismatch { .. })
        ));
    }

    #[test]
    fn invert_examples() {
        assert!(Word::identity(3).inverse().is_identity());
        assert_eq!(w(&[1, 2, 3], 3).inverse().letters(), &[3, 2, 1]);
        assert_eq!(w(&[2, 1, 2], 3).inverse().letters(), &[2, 1, 2]);
    }

    #[test]
    fn conjugate_examples() {
        let x1 = w(&[1], 3);
        let x2 = w(&[2], 3);
        assert_eq!(x1.conjugate(&x2).unwrap().letters(), &[2, 1, 2]);
        assert_eq!(x1.conjugate(&Word::identity(3)).unwrap(), x1);
        assert_eq!(w(&[2, 1, 2], 3).conjugate(&x2).unwrap(), x1);
    }

    #[test]
    fn cyclic_reduce_examples() {
        let (core, conj) = w(&[2, 1, 2], 3).cyclic_reduce();
        assert_eq!(core.letters(), &[1]);
        assert_eq!(conj.letters(), &[2]);
        let (core, conj) = w(&[1, 2, 3], 3).cyclic_reduce();
        assert_eq!(core.letters(), &[1, 2, 3]);
        assert!(conj.is_identity());
        let (core, conj) = Word::identity(3).cyclic_reduce();
        assert!(core.is_identity() && conj.is_identity());
    }

    #[test]
    fn conjugacy_examples() {
        assert!(!w(&[1], 3).is_conjugate(&w(&[2], 3)).unwrap());
        assert!(w(&[2, 1, 2], 3).is_conjugate(&w(&[1], 3)).unwrap());
        assert!(w(&[1, 2, 3], 3).is_conjugate(&w(&[2, 3, 1], 3)).unwrap());
    }

    #[test]
    fn involution_examples() {
        assert_eq!(
            w(&[2, 1, 2], 3).involution_decompose().unwrap(),
            (w(&[2], 3), 1)
        );
        assert_eq!(
            w(&[1], 3).involution_decompose().unwrap(),
            (Word::identity(3), 1)
        );
        assert!(matches!(
            w(&[1, 2, 3], 3).involution_decompose(),
            Err(Error::NotAnInvolution(_))
        ));
        assert!(Word::identity(3).involution_decompose().is_err());
    }

    #[test]
    fn order_is_length_then_lex() {
        let mut v = [w(&[2, 1], 3), w(&[3], 3), w(&[1, 2], 3), Word::identity(3)];
        v.sort();
        let s: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        assert_eq!(s, ["e", "3", "1 2", "2 1"]);
    }
}
