//! Randomized invariants of words, endomorphisms and Schreier systems.

use std::sync::Arc;

use anyhow::Result;
use freecsp::quotients::builtin::delta;
use freecsp::quotients::schreier_rank;
use freecsp::sampling::{reduced_word, subgroup_element, word_up_to};
use freecsp::{Alphabet, FiniteQuotient, FreeHom, Letter, SchreierSystem, Word};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::tally;
use crate::runner::CheckFn;

fn alphabet(rank: usize) -> Arc<Alphabet> {
    Alphabet::new(["x", "y", "z"].into_iter().take(rank)).expect("valid names")
}

fn random_alphabet(rng: &mut ChaCha8Rng) -> Arc<Alphabet> {
    alphabet(rng.gen_range(1..=3))
}

fn group_axioms(rng: &mut ChaCha8Rng) -> Result<String> {
    tally(10_000, rng, |rng| {
        let a = random_alphabet(rng);
        let [u, v, w] = [(); 3].map(|_| word_up_to(&a, 64, rng));
        let one = Word::identity(&a);
        Ok(&(&u * &v) * &w == &u * &(&v * &w)
            && (&u * &u.inverse()).is_identity()
            && (&u.inverse() * &u).is_identity()
            && &u * &one == u
            && &one * &u == u)
    })
}

/// Inserting cancelling pairs anywhere in the letter sequence and reducing
/// gives back the original word; concatenated text parses to the product.
fn normal_form(rng: &mut ChaCha8Rng) -> Result<String> {
    tally(10_000, rng, |rng| {
        let a = random_alphabet(rng);
        let u = word_up_to(&a, 32, rng);
        let v = word_up_to(&a, 32, rng);
        let mut letters: Vec<Letter> = u.letters().collect();
        for _ in 0..rng.gen_range(0..8) {
            let at = rng.gen_range(0..=letters.len());
            let l = Letter { generator: rng.gen_range(0..a.rank()), inverse: rng.gen_bool(0.5) };
            letters.splice(at..at, [l, Letter { inverse: !l.inverse, ..l }]);
        }
        let concatenated = Word::parse(&format!("{u} {v}"), &a)?;
        Ok(Word::from_letters(&a, letters) == u && concatenated == &u * &v)
    })
}

fn print_parse(rng: &mut ChaCha8Rng) -> Result<String> {
    tally(10_000, rng, |rng| {
        let a = random_alphabet(rng);
        let w = word_up_to(&a, 64, rng);
        Ok(Word::parse(&w.to_string(), &a)? == w)
    })
}

fn endo(a: &Arc<Alphabet>, rng: &mut ChaCha8Rng) -> Result<FreeHom> {
    let images = (0..a.rank()).map(|_| word_up_to(a, 8, rng)).collect();
    Ok(FreeHom::new(a, a, images)?)
}

fn functorial(rng: &mut ChaCha8Rng) -> Result<String> {
    tally(1_000, rng, |rng| {
        let a = random_alphabet(rng);
        let (f, g) = (endo(&a, rng)?, endo(&a, rng)?);
        Ok(f.compose(&g)?.abelianization()? == &f.abelianization()? * &g.abelianization()?)
    })
}

fn homomorphism(rng: &mut ChaCha8Rng) -> Result<String> {
    tally(1_000, rng, |rng| {
        let a = random_alphabet(rng);
        let (f, g) = (endo(&a, rng)?, endo(&a, rng)?);
        let u = word_up_to(&a, 20, rng);
        let v = word_up_to(&a, 20, rng);
        let law = f.apply(&(&u * &v))? == &f.apply(&u)? * &f.apply(&v)?;
        let composed = f.compose(&g)?.apply(&u)? == f.apply(&g.apply(&u)?)?;
        Ok(law && composed)
    })
}

fn round_trip(rng: &mut ChaCha8Rng) -> Result<String> {
    let s = delta();
    tally(1_000, rng, |rng| {
        let factors = rng.gen_range(0..12);
        let w = subgroup_element(&s, factors, rng);
        let v = s.rewrite(&w)?;
        Ok(s.expand(&v)? == w)
    })
}

fn random_quotient(rng: &mut ChaCha8Rng) -> Result<FiniteQuotient> {
    let a = random_alphabet(rng);
    let size = rng.gen_range(1..=9);
    let perms = (0..a.rank())
        .map(|_| {
            let mut p: Vec<usize> = (0..size).collect();
            p.shuffle(rng);
            p
        })
        .collect();
    Ok(FiniteQuotient::new(&a, perms)?)
}

/// Rank is `1 + index·(rank − 1)`, the transversal is prefix closed and every
/// Schreier generator lies in the subgroup.
fn schreier_formula(rng: &mut ChaCha8Rng) -> Result<String> {
    tally(1_000, rng, |rng| {
        let q = random_quotient(rng)?;
        let s = SchreierSystem::new(&q);
        let mut ok = s.index() == q.orbit(0).len()
            && s.is_prefix_closed()
            && s.rank() == schreier_rank(s.index(), q.alphabet().rank());
        for g in s.generators() {
            ok &= q.stabilizes_base(g)?;
        }
        for _ in 0..10 {
            let w = reduced_word(q.alphabet(), rng.gen_range(0..12), rng);
            let back = &w * &s.representative(&w)?.inverse();
            ok &= s.contains(&back)? && s.expand(&s.rewrite(&back)?)? == back;
        }
        Ok(ok)
    })
}

pub(super) fn checks() -> Vec<(&'static str, CheckFn)> {
    vec![
        ("properties.words.group-axioms", group_axioms),
        ("properties.words.normal-form", normal_form),
        ("properties.words.print-parse", print_parse),
        ("properties.homs.functorial", functorial),
        ("properties.homs.homomorphism", homomorphism),
        ("properties.quotients.round-trip", round_trip),
        ("properties.quotients.schreier-formula", schreier_formula),
    ]
}
