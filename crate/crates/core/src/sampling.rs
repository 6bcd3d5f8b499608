//! Seeded random words, subgroup elements and automorphism products.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::homs::VerifiedAut;
use crate::quotients::SchreierSystem;
use crate::words::{Alphabet, Letter, Word};

/// A uniformly random freely reduced word of exactly `len` letters.
pub fn reduced_word<R: Rng + ?Sized>(alphabet: &Arc<Alphabet>, len: usize, rng: &mut R) -> Word {
    let rank = alphabet.rank();
    let mut letters: Vec<Letter> = Vec::with_capacity(len);
    while letters.len() < len {
        let l = Letter {
            generator: rng.gen_range(0..rank),
            inverse: rng.gen_bool(0.5),
        };
        if letters.last().is_some_and(|p| p.generator == l.generator && p.inverse != l.inverse) {
            continue;
        }
        letters.push(l);
    }
    Word::from_letters(alphabet, letters)
}

/// A reduced word whose length is uniform in `0..=max_len`.
pub fn word_up_to<R: Rng + ?Sized>(alphabet: &Arc<Alphabet>, max_len: usize, rng: &mut R) -> Word {
    let len = rng.gen_range(0..=max_len);
    reduced_word(alphabet, len, rng)
}

/// A product of `factors` random Schreier generators and their inverses.
pub fn subgroup_element<R: Rng + ?Sized>(s: &SchreierSystem, factors: usize, rng: &mut R) -> Word {
    let mut w = Word::identity(s.alphabet());
    for _ in 0..factors {
        let g = &s.generators()[rng.gen_range(0..s.rank())];
        w = if rng.gen_bool(0.5) { &w * g } else { &w * &g.inverse() };
    }
    w
}

/// A composition of `1..=max_len` automorphisms drawn from `pool`, each
/// possibly inverted.
pub fn aut_product<R: Rng + ?Sized>(pool: &[VerifiedAut], max_len: usize, rng: &mut R) -> VerifiedAut {
    let first = pool.choose(rng).expect("nonempty pool");
    let mut acc = VerifiedAut::identity(first.alphabet());
    for _ in 0..rng.gen_range(1..=max_len) {
        let a = pool.choose(rng).expect("nonempty pool");
        let a = if rng.gen_bool(0.5) { a.clone() } else { a.inverse() };
        acc = acc.compose(&a).expect("same alphabet");
    }
    acc
}

/// Every freely reduced word of length at most `max_len`, shortest first.
pub fn all_reduced_words(alphabet: &Arc<Alphabet>, max_len: usize) -> Vec<Word> {
    let rank = alphabet.rank();
    let mut layer: Vec<Vec<Letter>> = vec![Vec::new()];
    let mut out = vec![Word::identity(alphabet)];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for g in 0..rank {
                for inverse in [false, true] {
                    if w.last().is_some_and(|p| p.generator == g && p.inverse != inverse) {
                        continue;
                    }
                    let mut v = w.clone();
                    v.push(Letter { generator: g, inverse });
                    next.push(v);
                }
            }
        }
        out.extend(next.iter().map(|v| Word::from_letters(alphabet, v.iter().copied())));
        layer = next;
    }
    out
}
