//! Rank 3: the parity map, the even subgroup as a free group on
//! `a = x1 x2`, `b = x2 x3`, and the induced action on its abelianization.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::ops::Mul;

use rand::Rng;
use serde::Serialize;

use crate::automorphism::CoxAutomorphism;
use crate::error::{Error, Result};
use crate::gilbert::{enumerate_relators, Interpretation};
use crate::word::Word;

/// A freely reduced word in `a, b`; letters are `1 = a`, `2 = b`, negated for inverses.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct FreeWord2 {
    letters: Vec<i8>,
}

impl FreeWord2 {
    pub fn identity() -> Self {
        FreeWord2::default()
    }

    pub fn from_letters(raw: &[i8]) -> Result<Self> {
        let mut w = FreeWord2::identity();
        for &l in raw {
            if !matches!(l, 1 | -1 | 2 | -2) {
                return Err(Error::Parse(format!("free letter {l}")));
            }
            w.push(l);
        }
        Ok(w)
    }

    fn push(&mut self, l: i8) {
        if self.letters.last() == Some(&-l) {
            self.letters.pop();
        } else {
            self.letters.push(l);
        }
    }

    pub fn letters(&self) -> &[i8] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        FreeWord2 {
            letters: self.letters.iter().rev().map(|l| -l).collect(),
        }
    }

    /// Exponent sums `(a, b)`.
    pub fn exponent_sums(&self) -> (i64, i64) {
        let mut s = (0, 0);
        for &l in &self.letters {
            match l {
                1 => s.0 += 1,
                -1 => s.0 -= 1,
                2 => s.1 += 1,
                _ => s.1 -= 1,
            }
        }
        s
    }
}

impl Mul for &FreeWord2 {
    type Output = FreeWord2;

    fn mul(self, rhs: &FreeWord2) -> FreeWord2 {
        let mut out = self.clone();
        for &l in &rhs.letters {
            out.push(l);
        }
        out
    }
}

impl fmt::Display for FreeWord2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("e");
        }
        let parts: Vec<&str> = self
            .letters
            .iter()
            .map(|l| match l {
                1 => "a",
                -1 => "a^-1",
                2 => "b",
                _ => "b^-1",
            })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

fn check_rank(u: &Word) -> Result<()> {
    if u.rank() != 3 {
        return Err(Error::RankMismatch {
            left: 3,
            right: u.rank(),
        });
    }
    Ok(())
}

/// Length parity.
pub fn epsilon(u: &Word) -> Result<u8> {
    check_rank(u)?;
    Ok((u.len() % 2) as u8)
}

fn pair(i: u8, j: u8) -> &'static [i8] {
    match (i, j) {
        (1, 2) => &[1],
        (2, 3) => &[2],
        (1, 3) => &[1, 2],
        (2, 1) => &[-1],
        (3, 2) => &[-2],
        (3, 1) => &[-2, -1],
        _ => &[],
    }
}

/// Rewrites an even word two letters at a time.
pub fn to_free(u: &Word) -> Result<FreeWord2> {
    if epsilon(u)? != 0 {
        return Err(Error::OddLength);
    }
    let mut w = FreeWord2::identity();
    for p in u.letters().chunks_exact(2) {
        for &l in pair(p[0], p[1]) {
            w.push(l);
        }
    }
    Ok(w)
}

/// Substitutes `a = x1 x2`, `b = x2 x3`.
pub fn from_free(w: &FreeWord2) -> Word {
    let raw: Vec<usize> = w
        .letters
        .iter()
        .flat_map(|l| match l {
            1 => [1, 2],
            -1 => [2, 1],
            2 => [2, 3],
            _ => [3, 2],
        })
        .collect();
    Word::reduce(&raw, 3).expect("letters within rank 3")
}

/// A 2x2 integer matrix, row-major.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct IntMatrix2(pub [[i64; 2]; 2]);

impl IntMatrix2 {
    pub const IDENTITY: IntMatrix2 = IntMatrix2([[1, 0], [0, 1]]);

    pub fn from_columns(c1: (i64, i64), c2: (i64, i64)) -> Self {
        IntMatrix2([[c1.0, c2.0], [c1.1, c2.1]])
    }

    pub fn det(&self) -> i64 {
        let m = self.0;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    pub fn neg(&self) -> Self {
        IntMatrix2(self.0.map(|r| r.map(|x| -x)))
    }

    /// The representative of `±M` whose first nonzero entry is positive.
    pub fn pgl_normalized(&self) -> Self {
        let first = self.0.iter().flatten().copied().find(|&x| x != 0).unwrap_or(0);
        if first < 0 {
            self.neg()
        } else {
            *self
        }
    }

    pub fn pgl_eq(&self, other: &IntMatrix2) -> bool {
        self.pgl_normalized() == other.pgl_normalized()
    }

    pub fn is_pgl_identity(&self) -> bool {
        self.pgl_eq(&IntMatrix2::IDENTITY)
    }
}

impl Mul for IntMatrix2 {
    type Output = IntMatrix2;

    fn mul(self, rhs: IntMatrix2) -> IntMatrix2 {
        let (a, b) = (self.0, rhs.0);
        let mut m = [[0i64; 2]; 2];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        IntMatrix2(m)
    }
}

impl fmt::Display for IntMatrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.0;
        write!(f, "[[{}, {}], [{}, {}]]", m[0][0], m[0][1], m[1][0], m[1][1])
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MatrixReport {
    pub matrix: [[i64; 2]; 2],
    pub pgl_sign_normalized: [[i64; 2]; 2],
    pub determinant: i64,
}

impl From<IntMatrix2> for MatrixReport {
    fn from(m: IntMatrix2) -> Self {
        MatrixReport {
            matrix: m.0,
            pgl_sign_normalized: m.pgl_normalized().0,
            determinant: m.det(),
        }
    }
}

/// Columns are the exponent sums of the images of `a` and `b`.
pub fn induced_matrix(alpha: &CoxAutomorphism) -> Result<IntMatrix2> {
    if alpha.rank() != 3 {
        return Err(Error::RankMismatch {
            left: 3,
            right: alpha.rank(),
        });
    }
    let a = Word::reduce(&[1, 2], 3)?;
    let b = Word::reduce(&[2, 3], 3)?;
    let ia = to_free(&alpha.apply(&a)?)?;
    let ib = to_free(&alpha.apply(&b)?)?;
    Ok(IntMatrix2::from_columns(ia.exponent_sums(), ib.exponent_sums()))
}

/// A product of `len` random generators of `Aut(W_3)`.
pub fn random_automorphism<R: Rng>(rng: &mut R, len: usize) -> CoxAutomorphism {
    let mut a = CoxAutomorphism::identity(3);
    for _ in 0..len {
        let g = match rng.gen_range(0..4) {
            0 => CoxAutomorphism::tau(rng.gen_range(1..=2), 3),
            1 => {
                let i = rng.gen_range(1..=3);
                let j = (i + rng.gen_range(0..2)) % 3 + 1;
                CoxAutomorphism::sigma(i, j, 3)
            }
            2 => Ok(CoxAutomorphism::ad(&Word::generator(rng.gen_range(1..=3), 3).expect("rank 3"))),
            _ => CoxAutomorphism::transposition(1, 3, 3),
        }
        .expect("valid indices");
        a = a.compose(&g).expect("rank 3");
    }
    a
}

/// Bounded search: PGL classes reachable from the matrices of `τ1, τ2, σ1,2`
/// by products of at most `depth` factors.
pub fn reachable_pgl_classes(depth: usize) -> Result<BTreeSet<IntMatrix2>> {
    let gens: Vec<IntMatrix2> = [
        CoxAutomorphism::tau(1, 3)?,
        CoxAutomorphism::tau(2, 3)?,
        CoxAutomorphism::sigma(1, 2, 3)?,
    ]
    .iter()
    .map(induced_matrix)
    .collect::<Result<_>>()?;
    let mut seen = BTreeSet::from([IntMatrix2::IDENTITY]);
    let mut queue = VecDeque::from([(IntMatrix2::IDENTITY, 0usize)]);
    while let Some((m, d)) = queue.pop_front() {
        if d == depth {
            continue;
        }
        for g in &gens {
            let p = (m * *g).pgl_normalized();
            if seen.insert(p) {
                queue.push_back((p, d + 1));
            }
        }
    }
    Ok(seen)
}

/// Necessary conditions for the rank-3 isomorphism with `PGL(2, Z)`.
pub fn verify_pgl_bridge<R: Rng>(rng: &mut R, samples: usize) -> Result<String> {
    let minus_id = IntMatrix2::IDENTITY.neg();
    let ensure = |ok: bool, clause: &str, details: String| -> Result<()> {
        if ok {
            Ok(())
        } else {
            Err(Error::assertion(clause, details))
        }
    };
    for i in 1..=3 {
        let m = induced_matrix(&CoxAutomorphism::ad(&Word::generator(i, 3)?))?;
        ensure(m == minus_id, "inner-minus-identity", format!("ad(x{i}) gives {m}"))?;
    }
    for _ in 0..samples {
        let len_a = rng.gen_range(0..8);
        let len_b = rng.gen_range(0..8);
        let a = random_automorphism(rng, len_a);
        let b = random_automorphism(rng, len_b);
        let (ma, mb) = (induced_matrix(&a)?, induced_matrix(&b)?);
        let mab = induced_matrix(&a.compose(&b)?)?;
        ensure(
            mab.pgl_eq(&(ma * mb)),
            "multiplicative",
            format!("{} then {}: {mab} vs {}", b.trace_string(), a.trace_string(), ma * mb),
        )?;
        ensure(
            ma.det().abs() == 1,
            "determinant",
            format!("{} has determinant {}", a.trace_string(), ma.det()),
        )?;
    }
    let interp = Interpretation::standard(3)?;
    let relators = enumerate_relators(3)?;
    for r in &relators {
        let c = interp.eval(&r.word())?;
        let m = induced_matrix(c.representative())?;
        ensure(
            m.is_pgl_identity(),
            "relators",
            format!("relator {:?} {:?} maps to {m}", r.family, r.indices),
        )?;
    }
    Ok(format!(
        "ad(x_i) -> -Id for i = 1..3; {samples} random pairs multiplicative with det = ±1; {} relators PGL-trivial",
        relators.len()
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn w(s: &[usize]) -> Word {
        Word::reduce(s, 3).unwrap()
    }

    #[test]
    fn epsilon_examples() {
        assert_eq!(epsilon(&w(&[1, 2, 3])).unwrap(), 1);
        assert_eq!(epsilon(&w(&[1, 2])).unwrap(), 0);
        assert!(epsilon(&Word::identity(4)).is_err());
    }

    #[test]
    fn to_free_examples() {
        assert_eq!(to_free(&w(&[2, 1])).unwrap().to_string(), "a^-1");
        assert_eq!(to_free(&w(&[1, 3])).unwrap().to_string(), "a b");
        let u = w(&[2, 1, 2, 3, 1, 2]);
        let f = to_free(&u).unwrap();
        assert_eq!(f.to_string(), "a^-1 b a");
        assert_eq!(from_free(&f), u);
        assert_eq!(to_free(&w(&[1])), Err(Error::OddLength));
    }

    #[test]
    fn matrix_examples() {
        assert_eq!(induced_matrix(&CoxAutomorphism::identity(3)).unwrap(), IntMatrix2::IDENTITY);
        let t1 = induced_matrix(&CoxAutomorphism::tau(1, 3).unwrap()).unwrap();
        assert_eq!(t1, IntMatrix2::from_columns((-1, 0), (1, 1)));
        assert_eq!(t1.det(), -1);
        let ad2 = induced_matrix(&CoxAutomorphism::ad(&w(&[2]))).unwrap();
        assert_eq!(ad2, IntMatrix2::IDENTITY.neg());
        assert!(ad2.is_pgl_identity());
        assert_eq!(ad2.pgl_normalized(), IntMatrix2::IDENTITY);
    }

    #[test]
    fn gl2_generators_reachable() {
        let classes = reachable_pgl_classes(6).unwrap();
        for m in [
            IntMatrix2([[0, 1], [1, 0]]),
            IntMatrix2([[1, 1], [0, 1]]),
            IntMatrix2([[-1, 0], [0, 1]]),
        ] {
            assert!(classes.contains(&m.pgl_normalized()), "{m}");
        }
    }

    #[test]
    fn prop_report() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        verify_pgl_bridge(&mut rng, 200).unwrap();
    }
}
