//! Automorphisms of `W_n` in `(π, w_1..w_n)` normal form.
//!
//! Every automorphism sends each generator to an involution, and every
//! involution is uniquely `w x_j w^-1` with `w` not ending in `x_j`. An
//! automorphism is therefore stored as the permutation `π` together with the
//! conjugators `w_i`, so that `x_i ↦ w_i x_{π(i)} w_i^-1`.
//!
//! Values are only produced from invertible building blocks (the basic
//! generators, composition, inversion and [`CoxAutomorphism::from_images`]),
//! and each carries the trace of tokens it was built from. The trace is what
//! makes [`CoxAutomorphism::inverse`] computable without a Whitehead-style
//! algorithm.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::word::Word;

/// Default bound for [`OuterClass::order`].
pub const DEFAULT_ORDER_BOUND: usize = 10_000;

/// Traces longer than this are replaced by one verified image token.
const TRACE_COMPACT_LEN: usize = 24;

/// One building block of an automorphism.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Token {
    /// `τ_i` swaps `x_i` and `x_{i+1}`.
    Tau(usize),
    /// `σ_{i,j}` sends `x_i` to `x_j x_i x_j`.
    Sigma(usize, usize),
    /// The transposition of `x_i` and `x_j`.
    Swap(usize, usize),
    /// Global conjugation `u ↦ w u w^-1`.
    Ad(Word),
    /// An explicit map whose inverse has been checked.
    Verified {
        images: Vec<Word>,
        inverse_images: Vec<Word>,
    },
}

impl Token {
    pub fn inverse(&self) -> Token {
        match self {
            Token::Ad(w) => Token::Ad(w.inverse()),
            Token::Verified {
                images,
                inverse_images,
            } => Token::Verified {
                images: inverse_images.clone(),
                inverse_images: images.clone(),
            },
            t => t.clone(),
        }
    }

    fn to_map(&self, rank: usize) -> Result<Map> {
        let m = match self {
            Token::Tau(i) => {
                if *i == 0 || *i >= rank {
                    return Err(Error::IndexOutOfRank {
                        index: *i,
                        rank: rank.saturating_sub(1),
                    });
                }
                Map {
                    perm: Perm::transposition(*i, i + 1, rank)?,
                    conj: vec![Word::identity(rank); rank],
                }
            }
            Token::Swap(i, j) => {
                if i == j {
                    return Err(Error::EqualIndices(*i));
                }
                Map {
                    perm: Perm::transposition(*i, *j, rank)?,
                    conj: vec![Word::identity(rank); rank],
                }
            }
            Token::Sigma(i, j) => {
                if i == j {
                    return Err(Error::EqualIndices(*i));
                }
                let xj = Word::generator(*j, rank)?;
                Word::generator(*i, rank)?;
                let mut conj = vec![Word::identity(rank); rank];
                conj[i - 1] = xj;
                Map {
                    perm: Perm::identity(rank),
                    conj,
                }
            }
            Token::Ad(w) => {
                if w.rank() != rank {
                    return Err(Error::RankMismatch {
                        left: rank,
                        right: w.rank(),
                    });
                }
                Map {
                    perm: Perm::identity(rank),
                    conj: (1..=rank).map(|i| normalize(w.clone(), i)).collect(),
                }
            }
            Token::Verified { images, .. } => Map::from_images(images, rank)?,
        };
        Ok(m)
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Tau(i) => write!(f, "t{i}"),
            Token::Sigma(i, j) => write!(f, "s{i},{j}"),
            Token::Swap(i, j) => write!(f, "p{i},{j}"),
            Token::Ad(w) => write!(f, "ad({w})"),
            Token::Verified {
                images,
                inverse_images,
            } => {
                let a: Vec<String> = images.iter().map(|w| w.to_string()).collect();
                let b: Vec<String> = inverse_images.iter().map(|w| w.to_string()).collect();
                write!(f, "map({}/{})", a.join(","), b.join(","))
            }
        }
    }
}

impl fmt::Debug for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Strips a trailing `x_target` so that `w x_target w^-1` has a unique spelling.
fn normalize(w: Word, target: usize) -> Word {
    if w.last() == Some(target) {
        let l = w.letters();
        Word::from_reduced(w.rank(), l[..l.len() - 1].to_vec())
    } else {
        w
    }
}

/// The bare `(π, w)` data without a trace.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Map {
    perm: Perm,
    conj: Vec<Word>,
}

impl Map {
    fn identity(rank: usize) -> Map {
        Map {
            perm: Perm::identity(rank),
            conj: vec![Word::identity(rank); rank],
        }
    }

    fn rank(&self) -> usize {
        self.conj.len()
    }

    fn image(&self, i: usize) -> Word {
        let rank = self.rank();
        let w = &self.conj[i - 1];
        let x = Word::from_reduced(rank, vec![self.perm.apply(i) as u8]);
        Word::product(rank, [w, &x, &w.inverse()])
    }

    fn apply(&self, u: &Word) -> Word {
        let rank = self.rank();
        let mut buf: Vec<u8> = Vec::new();
        for &l in u.letters() {
            let img = self.image(l as usize);
            buf.extend_from_slice(img.letters());
        }
        Word::from_raw_letters(rank, buf)
    }

    /// `self ∘ other`.
    fn compose(&self, other: &Map) -> Map {
        let rank = self.rank();
        let perm = self.perm.compose(&other.perm);
        let conj = (1..=rank)
            .map(|i| {
                let moved = self.apply(&other.conj[i - 1]);
                let w = moved.mul_unchecked(&self.conj[other.perm.apply(i) - 1]);
                normalize(w, perm.apply(i))
            })
            .collect();
        Map { perm, conj }
    }

    fn from_images(images: &[Word], rank: usize) -> Result<Map> {
        if images.len() != rank {
            return Err(Error::RankMismatch {
                left: rank,
                right: images.len(),
            });
        }
        let mut targets = Vec::with_capacity(rank);
        let mut conj = Vec::with_capacity(rank);
        for img in images {
            if img.rank() != rank {
                return Err(Error::RankMismatch {
                    left: rank,
                    right: img.rank(),
                });
            }
            let (w, j) = img.involution_decompose()?;
            targets.push(j);
            conj.push(w);
        }
        let perm = Perm::from_images(&targets).map_err(|_| Error::PermutationNotBijective)?;
        Ok(Map { perm, conj })
    }

    fn images(&self) -> Vec<Word> {
        (1..=self.rank()).map(|i| self.image(i)).collect()
    }
}

/// An automorphism of `W_n` in normal form, together with a construction trace.
///
/// Equality, hashing and ordering look only at the normal form; two values
/// with different traces but the same action are equal.
#[derive(Clone)]
pub struct CoxAutomorphism {
    map: Map,
    trace: Vec<Token>,
}

impl PartialEq for CoxAutomorphism {
    fn eq(&self, other: &Self) -> bool {
        self.map == other.map
    }
}

impl Eq for CoxAutomorphism {}

impl Hash for CoxAutomorphism {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.map.hash(state);
    }
}

impl Ord for CoxAutomorphism {
    fn cmp(&self, other: &Self) -> Ordering {
        self.map.cmp(&other.map)
    }
}

impl PartialOrd for CoxAutomorphism {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl CoxAutomorphism {
    pub fn identity(rank: usize) -> Self {
        CoxAutomorphism {
            map: Map::identity(rank),
            trace: Vec::new(),
        }
    }

    /// Builds the automorphism named by a single token.
    pub fn from_token(token: Token, rank: usize) -> Result<Self> {
        if rank == 0 {
            return Err(Error::Unsupported("rank 0".into()));
        }
        let map = token.to_map(rank)?;
        if let Token::Verified { .. } = token {
            // Only reachable through from_images, which has checked the inverse.
            return CoxAutomorphism::from_verified_token(token, rank);
        }
        Ok(CoxAutomorphism {
            map,
            trace: vec![token],
        })
    }

    fn from_verified_token(token: Token, rank: usize) -> Result<Self> {
        let Token::Verified {
            images,
            inverse_images,
        } = &token
        else {
            unreachable!()
        };
        let fwd = Map::from_images(images, rank)?;
        let bwd = Map::from_images(inverse_images, rank)?;
        let id = Map::identity(rank);
        if fwd.compose(&bwd) != id || bwd.compose(&fwd) != id {
            return Err(Error::NotInverse(token.to_string()));
        }
        Ok(CoxAutomorphism {
            map: fwd,
            trace: vec![token],
        })
    }

    pub fn tau(i: usize, rank: usize) -> Result<Self> {
        Self::from_token(Token::Tau(i), rank)
    }

    pub fn sigma(i: usize, j: usize, rank: usize) -> Result<Self> {
        Self::from_token(Token::Sigma(i, j), rank)
    }

    /// The automorphism exchanging `x_i` and `x_j`.
    pub fn transposition(i: usize, j: usize, rank: usize) -> Result<Self> {
        Self::from_token(Token::Swap(i, j), rank)
    }

    /// Global conjugation by `w`.
    pub fn ad(w: &Word) -> Self {
        CoxAutomorphism {
            map: Token::Ad(w.clone())
                .to_map(w.rank())
                .expect("ad of a word is always defined"),
            trace: vec![Token::Ad(w.clone())],
        }
    }

    /// Checks that `images` and `inverse_images` are mutually inverse
    /// involution-to-involution maps and returns the automorphism `x_i ↦ images[i]`.
    pub fn from_images(images: Vec<Word>, inverse_images: Vec<Word>) -> Result<Self> {
        let rank = images.len();
        if rank == 0 {
            return Err(Error::Unsupported("rank 0".into()));
        }
        if inverse_images.len() != rank {
            return Err(Error::RankMismatch {
                left: rank,
                right: inverse_images.len(),
            });
        }
        for w in images.iter().chain(&inverse_images) {
            if !w.is_involution() {
                return Err(Error::NotAnInvolution(w.to_string()));
            }
        }
        Self::from_verified_token(
            Token::Verified {
                images,
                inverse_images,
            },
            rank,
        )
    }

    /// Composition of tokens, applied right to left.
    pub fn from_tokens(tokens: &[Token], rank: usize) -> Result<Self> {
        let mut acc = CoxAutomorphism::identity(rank);
        for t in tokens {
            acc = acc.compose(&CoxAutomorphism::from_token(t.clone(), rank)?)?;
        }
        Ok(acc)
    }

    pub fn rank(&self) -> usize {
        self.map.rank()
    }

    /// The permutation `π` with `x_i ↦ w_i x_{π(i)} w_i^-1`.
    pub fn perm(&self) -> &Perm {
        &self.map.perm
    }

    pub fn conjugators(&self) -> &[Word] {
        &self.map.conj
    }

    pub fn trace(&self) -> &[Token] {
        &self.trace
    }

    pub fn trace_string(&self) -> String {
        if self.trace.is_empty() {
            return "e".into();
        }
        let parts: Vec<String> = self.trace.iter().map(|t| t.to_string()).collect();
        parts.join(";")
    }

    pub fn is_identity(&self) -> bool {
        self.map == Map::identity(self.rank())
    }

    /// Image of the generator `x_i` (1-based).
    pub fn image(&self, i: usize) -> Word {
        self.map.image(i)
    }

    pub fn images(&self) -> Vec<Word> {
        self.map.images()
    }

    fn same_rank(&self, rank: usize) -> Result<()> {
        if self.rank() != rank {
            return Err(Error::RankMismatch {
                left: self.rank(),
                right: rank,
            });
        }
        Ok(())
    }

    pub fn apply(&self, u: &Word) -> Result<Word> {
        self.same_rank(u.rank())?;
        Ok(self.map.apply(u))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &CoxAutomorphism) -> Result<CoxAutomorphism> {
        self.same_rank(other.rank())?;
        let mut trace = Vec::with_capacity(self.trace.len() + other.trace.len());
        trace.extend_from_slice(&self.trace);
        trace.extend_from_slice(&other.trace);
        let mut out = CoxAutomorphism {
            map: self.map.compose(&other.map),
            trace,
        };
        if out.trace.len() > TRACE_COMPACT_LEN {
            out.compact();
        }
        Ok(out)
    }

    /// Inverse, obtained by running the trace backwards.
    pub fn inverse(&self) -> CoxAutomorphism {
        let rank = self.rank();
        let trace: Vec<Token> = self.trace.iter().rev().map(Token::inverse).collect();
        let mut map = Map::identity(rank);
        for t in &trace {
            map = map.compose(&t.to_map(rank).expect("trace tokens are valid"));
        }
        debug_assert!(map.compose(&self.map) == Map::identity(rank));
        let mut out = CoxAutomorphism { map, trace };
        if out.trace.len() > TRACE_COMPACT_LEN {
            out.compact();
        }
        out
    }

    /// Replaces the trace by one verified token carrying images and inverse images.
    pub fn compact(&mut self) {
        if self.trace.len() <= 1 {
            return;
        }
        let inv = self.inverse_map();
        self.trace = vec![Token::Verified {
            images: self.map.images(),
            inverse_images: inv.images(),
        }];
    }

    fn inverse_map(&self) -> Map {
        let rank = self.rank();
        let mut map = Map::identity(rank);
        for t in self.trace.iter().rev() {
            map = map.compose(&t.inverse().to_map(rank).expect("trace tokens are valid"));
        }
        map
    }

    /// Evaluates the trace from scratch; equals `self` for every value built
    /// through the public constructors.
    pub fn evaluate_trace(&self) -> CoxAutomorphism {
        let rank = self.rank();
        let mut map = Map::identity(rank);
        for t in &self.trace {
            map = map.compose(&t.to_map(rank).expect("trace tokens are valid"));
        }
        CoxAutomorphism {
            map,
            trace: self.trace.clone(),
        }
    }

    /// The canonical representative of the class modulo `Inn(W_n)`.
    pub fn outer(&self) -> OuterClass {
        OuterClass::new(self)
    }

    /// True iff `self = ad(g) ∘ other` for some `g`.
    pub fn outer_equal(&self, other: &CoxAutomorphism) -> Result<bool> {
        self.same_rank(other.rank())?;
        Ok(self.outer() == other.outer())
    }
}

impl fmt::Display for CoxAutomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let imgs: Vec<String> = (1..=self.rank())
            .map(|i| format!("x{} -> {}", i, self.image(i)))
            .collect();
        write!(f, "{}", imgs.join(", "))
    }
}

impl fmt::Debug for CoxAutomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Aut[{}](π={}, w=[{}])",
            self.rank(),
            self.map.perm,
            self.map
                .conj
                .iter()
                .map(|w| w.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        )
    }
}

/// A coset `a·Inn(W_n)` with a deterministic representative.
///
/// The representative is chosen among the two inner translates that make the
/// first conjugator trivial; their number is two because the centralizer of a
/// generator is the order-2 subgroup it generates.
#[derive(Clone)]
pub struct OuterClass {
    canonical: CoxAutomorphism,
}

impl PartialEq for OuterClass {
    fn eq(&self, other: &Self) -> bool {
        self.canonical == other.canonical
    }
}

impl Eq for OuterClass {}

impl Hash for OuterClass {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.canonical.hash(state);
    }
}

impl Ord for OuterClass {
    fn cmp(&self, other: &Self) -> Ordering {
        self.canonical.cmp(&other.canonical)
    }
}

impl PartialOrd for OuterClass {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl OuterClass {
    fn new(a: &CoxAutomorphism) -> Self {
        let rank = a.rank();
        let w1_inv = a.map.conj[0].inverse();
        let x = Word::from_reduced(rank, vec![a.map.perm.apply(1) as u8]);
        let g2 = x.mul_unchecked(&w1_inv);
        let translate = |g: &Word| -> Map {
            Map {
                perm: a.map.perm.clone(),
                conj: a
                    .map
                    .conj
                    .iter()
                    .enumerate()
                    .map(|(k, w)| normalize(g.mul_unchecked(w), a.map.perm.apply(k + 1)))
                    .collect(),
            }
        };
        let m1 = translate(&w1_inv);
        let m2 = translate(&g2);
        let (map, g) = if m1 <= m2 { (m1, w1_inv) } else { (m2, g2) };
        let mut trace = Vec::with_capacity(a.trace.len() + 1);
        if !g.is_identity() {
            trace.push(Token::Ad(g));
        }
        trace.extend_from_slice(&a.trace);
        let mut canonical = CoxAutomorphism { map, trace };
        if canonical.trace.len() > TRACE_COMPACT_LEN {
            canonical.compact();
        }
        OuterClass { canonical }
    }

    pub fn identity(rank: usize) -> Self {
        CoxAutomorphism::identity(rank).outer()
    }

    pub fn rank(&self) -> usize {
        self.canonical.rank()
    }

    pub fn representative(&self) -> &CoxAutomorphism {
        &self.canonical
    }

    pub fn is_identity(&self) -> bool {
        self.canonical.is_identity()
    }

    /// Product `self · other` in `Out(W_n)`.
    pub fn mul(&self, other: &OuterClass) -> Result<OuterClass> {
        Ok(self.canonical.compose(&other.canonical)?.outer())
    }

    pub fn inverse(&self) -> OuterClass {
        self.canonical.inverse().outer()
    }

    /// The permutation induced on conjugacy classes of generators; a
    /// homomorphism `Out(W_n) → Sym(n)`.
    pub fn class_permutation(&self) -> &Perm {
        self.canonical.perm()
    }

    /// Smallest `k <= bound` with `self^k = 1`.
    pub fn order(&self, bound: usize) -> Result<usize> {
        let mut acc = self.clone();
        for k in 1..=bound {
            if acc.is_identity() {
                return Ok(k);
            }
            acc = acc.mul(self)?;
        }
        Err(Error::OrderExceedsBound(bound))
    }
}

impl fmt::Display for OuterClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.canonical)
    }
}

impl fmt::Debug for OuterClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Outer({:?})", self.canonical)
    }
}
