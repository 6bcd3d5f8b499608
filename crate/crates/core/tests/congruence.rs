use std::collections::HashMap;

use freecsp::congruence::{
    certify, index_bound, spot_check, CongruenceError, CongruenceInput, MOracle, NOracle,
};
use freecsp::homs::builtin::rank2;
use freecsp::quotients::builtin::pi_target;
use freecsp::quotients::signed_letters;
use freecsp::sampling::{subgroup_element, word_up_to};
use freecsp::words::Word;
use freecsp::FiniteQuotient;
use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Counts cosets of `N` using only the definitional membership test:
/// breadth-first over words, merging `w` into a known representative `s`
/// when `w s⁻¹ ∈ N`.
fn enumerate_cosets(n: &NOracle) -> usize {
    let f2 = rank2();
    let class = |w: &Word| -> Vec<i64> { w.exponent_sums().iter().map(|e| e.rem_euclid(6)).collect() };
    let mut reps = vec![Word::identity(&f2)];
    let mut by_class: HashMap<Vec<i64>, Vec<usize>> = HashMap::from([(class(&reps[0]), vec![0])]);
    let mut head = 0;
    while head < reps.len() {
        let r = reps[head].clone();
        head += 1;
        for l in signed_letters(2) {
            let w = &r * &Word::from_letters(&f2, [l]);
            let bucket = by_class.entry(class(&w)).or_default();
            let known = bucket
                .iter()
                .any(|&s| n.contains_by_definition(&(&w * &reps[s].inverse())).unwrap());
            if !known {
                bucket.push(reps.len());
                reps.push(w);
            }
        }
    }
    reps.len()
}

fn k_swap_alpha() -> FiniteQuotient {
    FiniteQuotient::new(&pi_target(), vec![vec![1, 0], vec![0, 1]]).unwrap()
}

fn k_swap_both() -> FiniteQuotient {
    FiniteQuotient::new(&pi_target(), vec![vec![1, 0], vec![1, 0]]).unwrap()
}

#[test]
fn trivial_k_with_p7() {
    let n = NOracle::build(&CongruenceInput::trivial(7).unwrap()).unwrap();
    assert_eq!((n.index(), n.rank()), (36, 37));
    assert_eq!(enumerate_cosets(&n), 36);
    let c = certify(&n);
    let seven37 = BigUint::from(7u32).pow(37);
    assert_eq!(c.order_of_f2_mod_np_n, BigUint::from(36u32) * &seven37);
    assert_eq!(c.image_order_in4_torus, 4);
    assert_eq!(c.order_of_f2_mod_m, BigUint::from(144u32) * &seven37);
    assert_eq!(c.bound, c.order_of_f2_mod_m);
    assert!(c.divides);
}

#[test]
fn index_two_k() {
    for (k, p) in [(k_swap_alpha(), 5), (k_swap_both(), 5), (k_swap_alpha(), 7)] {
        let input = CongruenceInput::new(&k, p).unwrap();
        assert_eq!(input.n(), 2);
        let n = NOracle::build(&input).unwrap();
        assert_eq!(n.index(), enumerate_cosets(&n));
        assert_eq!((36 * 16) % n.index(), 0);
        assert_eq!(n.rank(), n.index() + 1);
        let c = certify(&n);
        assert_eq!(c.order_of_f2_mod_m, &c.order_of_f2_mod_np_n * BigUint::from(c.image_order_in4_torus));
        assert_eq!(c.bound, index_bound(2, p));
        assert!(c.divides);
        let mut rng = ChaCha8Rng::seed_from_u64(p);
        let report = spot_check(&n, 300, &mut rng).unwrap();
        assert!(report.passed(), "{report:?}");
        assert!(report.m_samples > 0);
    }
}

#[test]
fn index_two_k_goldens() {
    let n = NOracle::build(&CongruenceInput::new(&k_swap_alpha(), 5).unwrap()).unwrap();
    assert_eq!(n.index(), 72);
    let n = NOracle::build(&CongruenceInput::new(&k_swap_both(), 5).unwrap()).unwrap();
    assert_eq!(n.index(), 72);
}

#[test]
fn cyclic_three_k() {
    let c3 = FiniteQuotient::abelian(&pi_target(), &[3], &[vec![1], vec![1]]).unwrap();
    let input = CongruenceInput::new(&c3, 5).unwrap();
    let n = NOracle::build(&input).unwrap();
    assert_eq!((36 * 81) % n.index(), 0);
    let c = certify(&n);
    assert!(c.divides);
    let f2 = rank2();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..300 {
        let w = word_up_to(&f2, 20, &mut rng);
        assert_eq!(n.contains(&w).unwrap(), n.contains_by_definition(&w).unwrap(), "{w}");
        let v = subgroup_element(n.schreier(), 3, &mut rng);
        assert!(n.contains_by_definition(&v).unwrap());
        assert!(input.in_k(&n.pi(&v).unwrap()).unwrap());
    }
}

#[test]
fn m_membership() {
    let n = NOracle::build(&CongruenceInput::trivial(5).unwrap()).unwrap();
    let m = MOracle::build(&n);
    let w = |t: &str| Word::parse(t, &rank2()).unwrap();
    assert!(!m.contains(&w("x^30")).unwrap());
    assert!(m.contains(&w("x^60")).unwrap());
    assert!(!m.contains(&w("x^12")).unwrap());
    assert!(!n.contains(&w("x")).unwrap());
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..100 {
        let a = subgroup_element(n.schreier(), 2, &mut rng);
        let b = subgroup_element(n.schreier(), 2, &mut rng);
        let c = Word::commutator(&a, &b).unwrap();
        assert!(m.contains(&c).unwrap());
    }
}

#[test]
fn rejected_inputs() {
    assert_eq!(CongruenceInput::trivial(3).unwrap_err(), CongruenceError::PrimeDividesSixN { p: 3, n: 1 });
    assert!(matches!(CongruenceInput::trivial(1), Err(CongruenceError::NotOddPrime(1))));
    assert!(matches!(CongruenceInput::trivial(15), Err(CongruenceError::NotOddPrime(15))));
    let rank3 = FiniteQuotient::trivial(&freecsp::homs::builtin::rank3());
    assert!(matches!(CongruenceInput::new(&rank3, 5), Err(CongruenceError::Rank(3))));
    let c7 = FiniteQuotient::abelian(&pi_target(), &[7], &[vec![1], vec![3]]).unwrap();
    assert_eq!(
        CongruenceInput::new(&c7, 7).unwrap_err(),
        CongruenceError::PrimeDividesSixN { p: 7, n: 7 }
    );
}

#[test]
fn certificate_json() {
    let n = NOracle::build(&CongruenceInput::trivial(5).unwrap()).unwrap();
    let json = serde_json::to_value(certify(&n)).unwrap();
    assert_eq!(json["indexOfN"], 36);
    assert_eq!(json["rankOfN"], 37);
    assert_eq!(json["imageOrderIn4Torus"], 4);
    let expected = (BigUint::from(144u32) * BigUint::from(5u32).pow(37)).to_string();
    assert_eq!(json["orderOfF2ModM"], expected.as_str());
    assert_eq!(json["bound"], expected.as_str());
    assert_eq!(json["divides"], true);
}
