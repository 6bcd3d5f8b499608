use std::collections::HashSet;
use std::sync::Arc;

use freecsp::homs::builtin::{alpha2, beta2, rank2, rank3, right_transvection};
use freecsp::magnus::{
    all_ideal_matrices, composition_law, composition_law_mod, fox_coordinates, fox_coordinates_mod,
    fox_identity_holds, j_matrix, j_matrix_mod, ka_check, layer_abelian_check,
    local_commutator_check, FiniteGroupRingElement, FreeGroupRingElement, MagnusError, PhiElement,
    RingElement,
};
use freecsp::modmat::ModMatrix;
use freecsp::sampling::{all_reduced_words, aut_product, word_up_to};
use freecsp::words::{Alphabet, Letter, Word};
use freecsp::VerifiedAut;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn alphabet(rank: usize) -> Arc<Alphabet> {
    Alphabet::new(["x", "y", "z"].into_iter().take(rank)).unwrap()
}

/// Coordinates from the telescoping sum over letters: a letter `x_i` at
/// position k contributes the suffix after it, `x_i^-1` contributes minus the
/// suffix starting at it. Works on unreduced letter sequences.
fn suffix_oracle(a: &Arc<Alphabet>, letters: &[Letter]) -> Vec<FreeGroupRingElement> {
    let mut coords = vec![FreeGroupRingElement::zero(a); a.rank()];
    for (k, l) in letters.iter().enumerate() {
        let from = if l.inverse { k } else { k + 1 };
        let suffix = Word::from_letters(a, letters[from..].iter().copied());
        let sign = if l.inverse { -1 } else { 1 };
        coords[l.generator].add_term(suffix, sign);
    }
    coords
}

fn random_letters(rng: &mut ChaCha8Rng, rank: usize, max_len: usize) -> Vec<Letter> {
    let len = rng.gen_range(0..=max_len);
    (0..len)
        .map(|_| Letter {
            generator: rng.gen_range(0..rank),
            inverse: rng.gen_bool(0.5),
        })
        .collect()
}

#[test]
fn fox_identity_on_random_words() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..10_000 {
        let rank = rng.gen_range(1..=3);
        let a = alphabet(rank);
        let letters = random_letters(&mut rng, rank, 30);
        let w = Word::from_letters(&a, letters.iter().copied());
        let coords = fox_coordinates(&w);
        assert!(fox_identity_holds(&w, &coords), "{w}");
        assert_eq!(coords, suffix_oracle(&a, &letters), "{w}");
    }
}

#[test]
fn fox_coordinates_separate_short_words() {
    let a = rank2();
    let words = all_reduced_words(&a, 8);
    assert_eq!(words.len(), 13_121);
    let mut seen = HashSet::new();
    for w in &words {
        let key: Vec<Vec<(String, i64)>> = fox_coordinates(w)
            .iter()
            .map(|c| c.terms().iter().map(|(k, &v)| (k.to_string(), v)).collect())
            .collect();
        assert!(seen.insert(key), "collision at {w}");
    }
}

#[test]
fn reduction_routes_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..500 {
        let rank = rng.gen_range(1..=3);
        let a = alphabet(rank);
        let w = word_up_to(&a, 20, &mut rng);
        for m in [2, 3, 4] {
            let via_integral: Vec<_> = fox_coordinates(&w).iter().map(|c| c.reduce(m)).collect();
            assert_eq!(via_integral, fox_coordinates_mod(&w, m), "{w} mod {m}");
        }
    }
}

#[test]
fn magnus_image_is_a_homomorphism() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (n, m) in [(2, 2), (2, 4), (3, 2), (3, 3)] {
        let a = alphabet(n);
        for _ in 0..1_000 {
            let u = word_up_to(&a, 16, &mut rng);
            let v = word_up_to(&a, 16, &mut rng);
            let pu = PhiElement::magnus_image(&u, m).unwrap();
            let pv = PhiElement::magnus_image(&v, m).unwrap();
            let puv = PhiElement::magnus_image(&(&u * &v), m).unwrap();
            assert_eq!(pu.mul(&pv).unwrap(), puv, "({n},{m}) {u} * {v}");
            assert!(pu.mul(&pu.inverse()).unwrap().is_identity());
            assert_eq!(pu.inverse(), PhiElement::magnus_image(&u.inverse(), m).unwrap());
        }
    }
}

#[test]
fn magnus_examples() {
    let a = rank2();
    let w = |t: &str| Word::parse(t, &a).unwrap();
    let x = PhiElement::magnus_image(&w("x"), 3).unwrap();
    assert_eq!(x.top(), [1, 0]);
    assert_eq!(x.bottom()[0], FiniteGroupRingElement::one(3, 2));
    assert!(x.bottom()[1].is_zero());
    let y = PhiElement::magnus_image(&w("y"), 3).unwrap();
    assert_eq!(x.mul(&y).unwrap(), PhiElement::magnus_image(&w("x y"), 3).unwrap());
    assert!(PhiElement::magnus_image(&Word::identity(&a), 3).unwrap().is_identity());
    assert_eq!(x.mul(&PhiElement::identity(3, 2)).unwrap(), x);

    let factors = ["x^2", "y", "x^-2", "y^-1"]
        .iter()
        .map(|t| PhiElement::magnus_image(&w(t), 2).unwrap())
        .reduce(|acc, f| acc.mul(&f).unwrap())
        .unwrap();
    let direct = PhiElement::magnus_image(&w("x^2 y x^-2 y^-1"), 2).unwrap();
    assert_eq!(direct, factors);
    // x^m has trivial top row but a nonzero Fox part; x^(m^2) is trivial.
    assert!(!PhiElement::magnus_image(&w("x^2"), 2).unwrap().is_identity());
    assert!(PhiElement::magnus_image(&w("x^4"), 2).unwrap().is_identity());

    let bad = PhiElement::new(3, vec![1, 0], vec![FiniteGroupRingElement::zero(3, 2); 2]);
    assert_eq!(bad, Err(MagnusError::Inconsistent));
    let mismatch = PhiElement::magnus_image(&w("x"), 2).unwrap().mul(&x);
    assert!(mismatch.is_err());
}

fn random_ring_element(rng: &mut ChaCha8Rng, m: u64, n: usize) -> FiniteGroupRingElement {
    let mut e = FiniteGroupRingElement::zero(m, n);
    for _ in 0..rng.gen_range(0..6) {
        let g: Vec<u64> = (0..n).map(|_| rng.gen_range(0..m)).collect();
        let c = rng.gen_range(1..m);
        e = e.add(&FiniteGroupRingElement::group_element(m, &g).scale(c));
    }
    e
}

#[test]
fn finite_group_ring_axioms() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..1_000 {
        let m = rng.gen_range(2..=6);
        let n = rng.gen_range(1..=3);
        let a = random_ring_element(&mut rng, m, n);
        let b = random_ring_element(&mut rng, m, n);
        let c = random_ring_element(&mut rng, m, n);
        assert_eq!(a.mul(&b), b.mul(&a));
        assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        assert!(a.add(&a.neg()).is_zero());
        assert_eq!(a.mul(&a.one_like()), a);
    }
}

#[test]
fn j_composition_law_exact() {
    let (alpha, beta) = (alpha2(), beta2());
    for (s, t) in [(&alpha, &beta), (&beta, &alpha)] {
        let (lhs, rhs) = composition_law(s.forward(), t.forward()).unwrap();
        assert_eq!(lhs, rhs);
        for m in [2, 3, 5] {
            let (lhs, rhs) = composition_law_mod(s.forward(), t.forward(), m).unwrap();
            assert_eq!(lhs, rhs, "mod {m}");
        }
    }
    let a = rank2();
    assert!(j_matrix(&freecsp::FreeHom::identity(&a)).unwrap().is_identity());

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let pool = vec![alpha, beta, VerifiedAut::inner(&Word::generator(&a, 1))];
    for _ in 0..30 {
        let s = aut_product(&pool, 3, &mut rng);
        let t = aut_product(&pool, 3, &mut rng);
        let (lhs, rhs) = composition_law_mod(s.forward(), t.forward(), 3).unwrap();
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn j_of_inner_automorphism() {
    let a = rank2();
    let ix = VerifiedAut::inner(&Word::generator(&a, 0));
    let j = j_matrix_mod(ix.forward(), 2).unwrap();
    let one = FiniteGroupRingElement::one(2, 2);
    let g = |v: &[u64]| FiniteGroupRingElement::group_element(2, v);
    assert_eq!(*j.entry(0, 0), one);
    assert!(j.entry(1, 0).is_zero());
    // d_x(x^-1 y x) = -x^-1 y x + 1 ; d_y = x.
    assert_eq!(*j.entry(0, 1), one.sub(&g(&[0, 1])));
    assert_eq!(*j.entry(1, 1), g(&[1, 0]));
    let (id, via_law) = composition_law_mod(ix.forward(), ix.backward(), 2).unwrap();
    assert!(id.is_identity());
    assert!(via_law.is_identity());
}

#[test]
fn ka_on_trivially_acting_automorphisms() {
    let a = rank3();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut auts: Vec<VerifiedAut> = (0..4).map(|_| VerifiedAut::inner(&word_up_to(&a, 5, &mut rng))).collect();
    for (i, j) in [(0, 1), (1, 2), (2, 0)] {
        let t = right_transvection(&a, i, j, 1);
        auts.push(t.compose(&t).unwrap());
    }
    let report = ka_check(&auts, 2).unwrap();
    assert!(report.passed(), "{:?}", report.failures);
    assert_eq!(report.elements, 7);
    assert_eq!(report.pairs, 49);

    let ix = VerifiedAut::inner(&Word::generator(&a, 0));
    let j = j_matrix_mod(ix.forward(), 2).unwrap();
    assert!(j.mul(&j_matrix_mod(ix.backward(), 2).unwrap()).is_identity());

    let b = rank2();
    let (al, be) = (alpha2(), beta2());
    let comm = al.compose(&be).unwrap().compose(&al.inverse()).unwrap().compose(&be.inverse()).unwrap();
    let report = ka_check(&[comm, al.clone(), VerifiedAut::identity(&b)], 2).unwrap();
    assert!(report.passed());
    let report = ka_check(&[al, VerifiedAut::identity(&b)], 3).unwrap();
    assert_eq!(report.precondition_violations, vec![0]);
    assert!(!report.passed());
}

#[test]
fn commutators_in_local_rings() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let samples: Vec<ModMatrix> = (0..200).map(|_| ModMatrix::random_multiple(9, 3, 3, 3, &mut rng)).collect();
    let report = local_commutator_check(3, 2, 1, 1, &samples, &samples);
    assert_eq!(report.pairs, 40_000);
    assert!(report.passed());
    for x in &samples[..20] {
        for y in &samples[..20] {
            let (ix, iy) = (ModMatrix::identity(9, 3).add(x), ModMatrix::identity(9, 3).add(y));
            assert_eq!(ix.mul(&iy), iy.mul(&ix));
        }
    }

    let a_samples: Vec<ModMatrix> = (0..200).map(|_| ModMatrix::random_multiple(8, 3, 3, 2, &mut rng)).collect();
    let b_all = all_ideal_matrices(2, 3, 2, 3);
    assert_eq!(b_all.len(), 512);
    let report = local_commutator_check(2, 3, 1, 2, &a_samples, &b_all);
    assert_eq!(report.pairs, 102_400);
    assert!(report.passed());

    let zero = ModMatrix::zeros(8, 3, 3);
    let report = local_commutator_check(2, 3, 1, 1, &[zero], &a_samples);
    assert!(report.passed());

    // Entries outside the maximal ideal make I + A singular or break the bound.
    let unit = ModMatrix::from_rows(9, &[vec![1, 1, 0], vec![0, 1, 0], vec![0, 0, 1]]);
    let other = ModMatrix::from_rows(9, &[vec![1, 0, 0], vec![1, 1, 0], vec![0, 0, 1]]);
    assert!(!local_commutator_check(3, 2, 1, 1, &[unit], &[other]).passed());
}

#[test]
fn reduction_layers_are_abelian() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for (p, j) in [(3u64, 1u32), (2, 2), (5, 1)] {
        let m = p.pow(j + 1);
        let samples: Vec<ModMatrix> = (0..60).map(|_| ModMatrix::random_multiple(m, 3, 3, 1, &mut rng)).collect();
        let report = layer_abelian_check(p, j, &samples);
        assert_eq!(report.pairs, 60 * 59 / 2);
        assert!(report.passed());
    }
}
