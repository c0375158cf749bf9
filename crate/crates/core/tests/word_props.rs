mod common;

use common::*;
use coxrig::text::parse_word;
use coxrig::Word;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn raw_word(n: usize, max_len: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(1..=n, 0..=max_len)
}

proptest! {
    #[test]
    fn reduce_matches_naive(raw in raw_word(4, 20)) {
        let w = Word::reduce(&raw, 4).unwrap();
        let naive: Vec<u8> = naive_reduce(&raw).into_iter().map(|x| x as u8).collect();
        prop_assert_eq!(w.letters(), &naive[..]);
        prop_assert!(w.letters().windows(2).all(|p| p[0] != p[1]));
    }

    #[test]
    fn multiplication_is_associative(a in raw_word(3, 8), b in raw_word(3, 8), c in raw_word(3, 8)) {
        let (a, b, c) = (Word::reduce(&a, 3).unwrap(), Word::reduce(&b, 3).unwrap(), Word::reduce(&c, 3).unwrap());
        let l = a.mul(&b).unwrap().mul(&c).unwrap();
        let r = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn inverse_cancels(raw in raw_word(5, 12)) {
        let w = Word::reduce(&raw, 5).unwrap();
        prop_assert!(w.mul(&w.inverse()).unwrap().is_identity());
        prop_assert!(w.inverse().mul(&w).unwrap().is_identity());
    }

    #[test]
    fn text_roundtrip(raw in raw_word(4, 12)) {
        let w = Word::reduce(&raw, 4).unwrap();
        prop_assert_eq!(parse_word(&w.to_string(), 4).unwrap(), w);
    }

    #[test]
    fn cyclic_reduce_recomposes(raw in raw_word(4, 12)) {
        let w = Word::reduce(&raw, 4).unwrap();
        let (core, g) = w.cyclic_reduce();
        prop_assert_eq!(core.conjugate(&g).unwrap(), w.clone());
        if core.len() >= 2 {
            prop_assert_ne!(core.first(), core.last());
        }
    }

    #[test]
    fn conjugates_are_conjugate(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = random_word(&mut rng, 4, 8);
        let g = random_word(&mut rng, 4, 8);
        prop_assert!(u.is_conjugate(&u.conjugate(&g).unwrap()).unwrap());
    }

    #[test]
    fn involutions_are_odd_palindromes(raw in raw_word(3, 9)) {
        let w = Word::reduce(&raw, 3).unwrap();
        let squares_to_one = !w.is_identity() && w.mul(&w).unwrap().is_identity();
        prop_assert_eq!(w.is_involution(), squares_to_one);
        if let Ok((c, j)) = w.involution_decompose() {
            prop_assert_eq!(Word::generator(j, 3).unwrap().conjugate(&c).unwrap(), w);
        }
    }
}

#[test]
fn involutions_exhaustive_at_length_seven() {
    for w in words_up_to(3, 7) {
        let sq = !w.is_identity() && w.mul(&w).unwrap().is_identity();
        assert_eq!(w.is_involution(), sq, "{w}");
    }
}

#[test]
fn enumerator_matches_naive() {
    let mut a = coxrig::word::all_words(3, 6);
    let mut b = words_up_to(3, 6);
    a.sort();
    b.sort();
    assert_eq!(a, b);
    assert_eq!(a.len(), 1 + 3 * (1 + 2 + 4 + 8 + 16 + 32));
}

#[test]
fn rank_errors() {
    assert!(Word::reduce(&[5], 4).is_err());
    assert!(Word::generator(0, 4).is_err());
    let a = Word::generator(1, 3).unwrap();
    let b = Word::generator(1, 4).unwrap();
    assert!(a.mul(&b).is_err());
}
