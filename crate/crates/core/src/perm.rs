use std::fmt;

use crate::error::{Error, Result};

/// A permutation of `{1, ..., m}`, stored as a 0-based image table.
///
/// Composition applies the right factor first: `p.compose(&q)` is `p ∘ q`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u8>,
}

impl Perm {
    pub fn identity(m: usize) -> Self {
        Perm {
            images: (0..m as u8).collect(),
        }
    }

    /// From 1-based images `i -> images[i - 1]`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let m = images.len();
        let mut seen = vec![false; m];
        for &j in images {
            if j == 0 || j > m {
                return Err(Error::IndexOutOfRank { index: j, rank: m });
            }
            if std::mem::replace(&mut seen[j - 1], true) {
                return Err(Error::PermutationNotBijective);
            }
        }
        Ok(Perm {
            images: images.iter().map(|&j| (j - 1) as u8).collect(),
        })
    }

    /// The transposition swapping 1-based `i` and `j`.
    pub fn transposition(i: usize, j: usize, m: usize) -> Result<Self> {
        for k in [i, j] {
            if k == 0 || k > m {
                return Err(Error::IndexOutOfRank { index: k, rank: m });
            }
        }
        let mut p = Perm::identity(m);
        p.images.swap(i - 1, j - 1);
        Ok(p)
    }

    /// Product of disjoint or overlapping cycles, rightmost applied first.
    pub fn from_cycles(cycles: &[&[usize]], m: usize) -> Result<Self> {
        let mut p = Perm::identity(m);
        for cycle in cycles.iter().rev() {
            let mut c = Perm::identity(m);
            for (k, &a) in cycle.iter().enumerate() {
                let b = cycle[(k + 1) % cycle.len()];
                for x in [a, b] {
                    if x == 0 || x > m {
                        return Err(Error::IndexOutOfRank { index: x, rank: m });
                    }
                }
                c.images[a - 1] = (b - 1) as u8;
            }
            p = c.compose(&p);
        }
        Ok(p)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 1-based point `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1] as usize + 1
    }


    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            images: other.images.iter().map(|&j| self.images[j as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u8; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j as usize] = i as u8;
        }
        Perm { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j as usize)
    }

    pub fn fixes(&self, i: usize) -> bool {
        self.apply(i) == i
    }

    /// 1-based images.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&j| j as usize + 1).collect()
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let m = self.images.len();
        let mut seen = vec![false; m];
        let mut out = Vec::new();
        for start in 0..m {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            let mut cyc = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cyc.push(x + 1);
                x = self.images[x] as usize;
            }
            out.push(cyc);
        }
        out
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("id");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_applies_right_first() {
        let a = Perm::transposition(1, 2, 3).unwrap();
        let b = Perm::transposition(2, 3, 3).unwrap();
        // a∘b sends 3 -> 2 -> 1
        assert_eq!(a.compose(&b).apply(3), 1);
        assert_eq!(a.compose(&b).to_string(), "(1 2 3)");
    }

    #[test]
    fn cycles_roundtrip() {
        let p = Perm::from_cycles(&[&[1, 2], &[3, 4], &[5, 6]], 6).unwrap();
        assert_eq!(p.to_string(), "(1 2)(3 4)(5 6)");
        assert!(p.compose(&p).is_identity());
        assert_eq!(p.inverse(), p);
    }

    #[test]
    fn from_images_validates() {
        assert!(Perm::from_images(&[2, 1, 3]).is_ok());
        assert_eq!(
            Perm::from_images(&[1, 1, 3]),
            Err(Error::PermutationNotBijective)
        );
    }
}
