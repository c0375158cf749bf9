//! Random samplers and brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use coxrig::{CoxAutomorphism, Word};
use rand::Rng;

pub fn random_word<R: Rng>(rng: &mut R, n: usize, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    let raw: Vec<usize> = (0..len).map(|_| rng.gen_range(1..=n)).collect();
    Word::reduce(&raw, n).unwrap()
}

/// A product of up to `max_len` elementary automorphisms.
pub fn random_aut<R: Rng>(rng: &mut R, n: usize, max_len: usize) -> CoxAutomorphism {
    let mut a = CoxAutomorphism::identity(n);
    for _ in 0..rng.gen_range(0..=max_len) {
        a = a.compose(&random_elementary(rng, n)).unwrap();
    }
    a
}

/// A single `τ`, `σ`, or `ad(x_i)`.
pub fn random_elementary<R: Rng>(rng: &mut R, n: usize) -> CoxAutomorphism {
    match rng.gen_range(0..3) {
        0 => CoxAutomorphism::tau(rng.gen_range(1..n), n).unwrap(),
        1 => random_non_inner(rng, n),
        _ => CoxAutomorphism::ad(&Word::generator(rng.gen_range(1..=n), n).unwrap()),
    }
}

/// A `τ_i` or `σ_{i,j}`; none of these is inner.
pub fn random_non_inner<R: Rng>(rng: &mut R, n: usize) -> CoxAutomorphism {
    if rng.gen_bool(0.5) {
        return CoxAutomorphism::tau(rng.gen_range(1..n), n).unwrap();
    }
    let i = rng.gen_range(1..=n);
    let mut j = rng.gen_range(1..n);
    if j >= i {
        j += 1;
    }
    CoxAutomorphism::sigma(i, j, n).unwrap()
}

/// Every reduced word of length at most `max_len`, written out naively.
pub fn words_up_to(n: usize, max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::identity(n)];
    let mut frontier: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for x in 1..=n {
                if w.last() != Some(&x) {
                    let mut v = w.clone();
                    v.push(x);
                    out.push(Word::reduce(&v, n).unwrap());
                    next.push(v);
                }
            }
        }
        frontier = next;
    }
    out
}

/// Reduction by repeated deletion of adjacent equal pairs.
pub fn naive_reduce(raw: &[usize]) -> Vec<usize> {
    let mut v = raw.to_vec();
    loop {
        let pos = v.windows(2).position(|p| p[0] == p[1]);
        match pos {
            Some(i) => {
                v.drain(i..i + 2);
            }
            None => return v,
        }
    }
}

/// `g u g^-1` written out letter by letter and naively reduced.
pub fn naive_conjugate(u: &Word, g: &Word) -> Vec<usize> {
    let g: Vec<usize> = g.letters().iter().map(|&x| x as usize).collect();
    let mut raw = g.clone();
    raw.extend(u.letters().iter().map(|&x| x as usize));
    raw.extend(g.iter().rev());
    naive_reduce(&raw)
}

/// Some `g` with `|g| <= max_len` and `g u g^-1 = v`.
pub fn brute_conjugator(u: &Word, v: &Word, pool: &[Word]) -> Option<Word> {
    let target: Vec<usize> = v.letters().iter().map(|&x| x as usize).collect();
    pool.iter().find(|g| naive_conjugate(u, g) == target).cloned()
}

/// Some `g` in `pool` with `g b(x_i) g^-1 = a(x_i)` for every `i`.
pub fn brute_inner_witness(a: &CoxAutomorphism, b: &CoxAutomorphism, pool: &[Word]) -> Option<Word> {
    let ai = a.images();
    let bi = b.images();
    pool.iter()
        .find(|g| {
            ai.iter().zip(&bi).all(|(x, y)| {
                let target: Vec<usize> = x.letters().iter().map(|&l| l as usize).collect();
                naive_conjugate(y, g) == target
            })
        })
        .cloned()
}
