//! Fox calculus, the Magnus embedding into Φ_{n,m}, the J matrices and
//! commutators of congruence subgroups over ℤ/p^k.

use std::collections::HashSet;
use std::sync::Arc;

use anyhow::{ensure, Result};
use freecsp::homs::builtin::{alpha2, beta2, rank2, rank3, right_transvection};
use freecsp::magnus::{
    all_ideal_matrices, composition_law, fox_coordinates, fox_identity_holds, ka_check,
    layer_abelian_check, local_commutator_check, FreeGroupRingElement, LocalCommutatorReport,
    PhiElement,
};
use freecsp::sampling::{all_reduced_words, word_up_to};
use freecsp::{Alphabet, FreeHom, Letter, ModMatrix, VerifiedAut, Word};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::tally;
use crate::runner::CheckFn;

fn alphabet(rank: usize) -> Arc<Alphabet> {
    Alphabet::new(["x", "y", "z"].into_iter().take(rank)).expect("valid names")
}

/// Fox coordinates by telescoping over an unreduced letter sequence.
fn suffix_oracle(a: &Arc<Alphabet>, letters: &[Letter]) -> Vec<FreeGroupRingElement> {
    let mut coords = vec![FreeGroupRingElement::zero(a); a.rank()];
    for (k, l) in letters.iter().enumerate() {
        let from = if l.inverse { k } else { k + 1 };
        let suffix = Word::from_letters(a, letters[from..].iter().copied());
        coords[l.generator].add_term(suffix, if l.inverse { -1 } else { 1 });
    }
    coords
}

fn fox_identity(rng: &mut ChaCha8Rng) -> Result<String> {
    tally(10_000, rng, |rng| {
        let rank = rng.gen_range(1..=3);
        let a = alphabet(rank);
        let len = rng.gen_range(0..=30);
        let letters: Vec<Letter> = (0..len)
            .map(|_| Letter { generator: rng.gen_range(0..rank), inverse: rng.gen_bool(0.5) })
            .collect();
        let w = Word::from_letters(&a, letters.iter().copied());
        let coords = fox_coordinates(&w);
        Ok(fox_identity_holds(&w, &coords) && coords == suffix_oracle(&a, &letters))
    })
}

fn fox_injectivity(_: &mut ChaCha8Rng) -> Result<String> {
    let words = all_reduced_words(&rank2(), 8);
    let distinct: HashSet<Vec<Vec<(Word, i64)>>> = words
        .iter()
        .map(|w| {
            fox_coordinates(w)
                .iter()
                .map(|c| c.terms().iter().map(|(k, &v)| (k.clone(), v)).collect())
                .collect()
        })
        .collect();
    Ok(format!("{}/{}", distinct.len(), words.len()))
}

fn homomorphism(rng: &mut ChaCha8Rng, n: usize, m: u64) -> Result<String> {
    let a = alphabet(n);
    tally(1_000, rng, |rng| {
        let u = word_up_to(&a, 16, rng);
        let v = word_up_to(&a, 16, rng);
        let pu = PhiElement::magnus_image(&u, m)?;
        let pv = PhiElement::magnus_image(&v, m)?;
        Ok(pu.mul(&pv)? == PhiElement::magnus_image(&(&u * &v), m)?)
    })
}

fn j_law_alpha_beta(_: &mut ChaCha8Rng) -> Result<String> {
    let (alpha, beta) = (alpha2(), beta2());
    for (s, t) in [(&alpha, &beta), (&beta, &alpha)] {
        let (lhs, rhs) = composition_law(s.forward(), t.forward())?;
        ensure!(lhs == rhs, "J law fails");
    }
    Ok("holds".into())
}

fn j_law_sampled(rng: &mut ChaCha8Rng) -> Result<String> {
    let a = rank2();
    let endo = |rng: &mut ChaCha8Rng| -> Result<FreeHom> {
        let images = (0..2).map(|_| word_up_to(&a, 4, rng)).collect();
        Ok(FreeHom::new(&a, &a, images)?)
    };
    tally(100, rng, |rng| {
        let (s, t) = (endo(rng)?, endo(rng)?);
        let (lhs, rhs) = composition_law(&s, &t)?;
        Ok(lhs == rhs)
    })
}

fn ka(rng: &mut ChaCha8Rng) -> Result<String> {
    let a = rank3();
    let mut auts: Vec<VerifiedAut> = (0..4).map(|_| VerifiedAut::inner(&word_up_to(&a, 5, rng))).collect();
    for (i, j) in [(0, 1), (1, 2), (2, 0)] {
        let t = right_transvection(&a, i, j, 1);
        auts.push(t.compose(&t)?);
    }
    let report = ka_check(&auts, 2)?;
    Ok(format!(
        "{} pairs, {} precondition violations, {} failures",
        report.pairs,
        report.precondition_violations.len(),
        report.failures.len()
    ))
}

fn ratio(r: &LocalCommutatorReport) -> String {
    format!("{}/{}", r.pairs - r.failures.len(), r.pairs)
}

fn local_z9(rng: &mut ChaCha8Rng) -> Result<String> {
    let samples: Vec<ModMatrix> = (0..200).map(|_| ModMatrix::random_multiple(9, 3, 3, 3, rng)).collect();
    Ok(ratio(&local_commutator_check(3, 2, 1, 1, &samples, &samples)))
}

fn local_z8(rng: &mut ChaCha8Rng) -> Result<String> {
    let a: Vec<ModMatrix> = (0..200).map(|_| ModMatrix::random_multiple(8, 3, 3, 2, rng)).collect();
    Ok(ratio(&local_commutator_check(2, 3, 1, 2, &a, &all_ideal_matrices(2, 3, 2, 3))))
}

fn layer_abelian(rng: &mut ChaCha8Rng) -> Result<String> {
    let (mut pairs, mut failures) = (0, 0);
    for (p, j) in [(3u64, 1u32), (2, 2), (5, 1)] {
        let m = p.pow(j + 1);
        let samples: Vec<ModMatrix> = (0..60).map(|_| ModMatrix::random_multiple(m, 3, 3, 1, rng)).collect();
        let r = layer_abelian_check(p, j, &samples);
        pairs += r.pairs;
        failures += r.failures.len();
    }
    Ok(format!("{}/{pairs}", pairs - failures))
}

pub(super) fn checks() -> Vec<(&'static str, CheckFn)> {
    vec![
        ("magnus.fox-identity", fox_identity),
        ("magnus.fox-injectivity", fox_injectivity),
        ("magnus.homomorphism.n2-m2", |rng| homomorphism(rng, 2, 2)),
        ("magnus.homomorphism.n2-m4", |rng| homomorphism(rng, 2, 4)),
        ("magnus.homomorphism.n3-m2", |rng| homomorphism(rng, 3, 2)),
        ("magnus.homomorphism.n3-m3", |rng| homomorphism(rng, 3, 3)),
        ("magnus.j-law.alpha-beta", j_law_alpha_beta),
        ("magnus.j-law.sampled", j_law_sampled),
        ("magnus.ka", ka),
        ("magnus.local.z9", local_z9),
        ("magnus.local.z8", local_z8),
        ("magnus.layer-abelian", layer_abelian),
    ]
}
