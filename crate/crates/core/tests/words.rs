use std::sync::Arc;

use freecsp::words::{Alphabet, Letter, Word};
use proptest::prelude::*;

fn xyz() -> Arc<Alphabet> {
    Alphabet::new(["x", "y", "z"]).unwrap()
}

fn letters(rank: usize, max_len: usize) -> impl Strategy<Value = Vec<Letter>> {
    prop::collection::vec(
        (0..rank, any::<bool>()).prop_map(|(generator, inverse)| Letter { generator, inverse }),
        0..=max_len,
    )
}

fn word(max_len: usize) -> impl Strategy<Value = Word> {
    letters(3, max_len).prop_map(|ls| Word::from_letters(&xyz(), ls))
}

/// Independent reducer: stack-based cancellation over single letters.
fn reduce_by_stack(ls: &[Letter]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::new();
    for &l in ls {
        match out.last() {
            Some(p) if p.generator == l.generator && p.inverse != l.inverse => {
                out.pop();
            }
            _ => out.push(l),
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn group_axioms(a in word(64), b in word(64), c in word(64)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        let id = Word::identity(&xyz());
        prop_assert_eq!(&a * &id, a.clone());
        prop_assert_eq!(&id * &a, a.clone());
        prop_assert!((&a * &a.inverse()).is_identity());
        prop_assert!((&a.inverse() * &a).is_identity());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1_000))]

    #[test]
    fn normal_form_matches_stack_reduction(ls in letters(3, 64)) {
        let w = Word::from_letters(&xyz(), ls.iter().copied());
        let expected = reduce_by_stack(&ls);
        prop_assert_eq!(w.letters().collect::<Vec<_>>(), expected);
        let syl = w.syllables();
        prop_assert!(syl.iter().all(|s| s.exponent != 0));
        prop_assert!(syl.windows(2).all(|p| p[0].generator != p[1].generator));
    }

    #[test]
    fn inserting_cancelling_pairs_is_invisible(
        w in word(40),
        inserts in prop::collection::vec((0usize..64, 0usize..3, any::<bool>()), 0..10),
    ) {
        let mut ls: Vec<Letter> = w.letters().collect();
        for (pos, generator, inverse) in inserts {
            let at = pos % (ls.len() + 1);
            let l = Letter { generator, inverse };
            ls.splice(at..at, [l, Letter { generator, inverse: !inverse }]);
        }
        prop_assert_eq!(Word::from_letters(&xyz(), ls), w);
    }

    #[test]
    fn print_parse_round_trip(w in word(64)) {
        let text = w.to_string();
        prop_assert_eq!(Word::parse(&text, &xyz()).unwrap(), w);
    }

    #[test]
    fn concatenated_text_is_product(a in word(30), b in word(30)) {
        let text = format!("{} {}", a, b);
        let parsed = Word::parse(&text, &xyz()).unwrap();
        prop_assert_eq!(parsed, &a * &b);
    }

    #[test]
    fn exponent_sums_are_additive(a in word(40), b in word(40)) {
        let sum: Vec<i64> = a.exponent_sums().iter().zip(b.exponent_sums()).map(|(p, q)| p + q).collect();
        prop_assert_eq!((&a * &b).exponent_sums(), sum);
    }
}

#[test]
fn conventions() {
    let a = Alphabet::new(["x", "y"]).unwrap();
    let w = |t: &str| Word::parse(t, &a).unwrap();
    assert_eq!(Word::commutator(&w("y"), &w("x")).unwrap().to_string(), "y x y^-1 x^-1");
    assert_eq!(w("y").conjugate(&w("x")).unwrap().to_string(), "x^-1 y x");
    assert_eq!(w("x y").inverse().to_string(), "y^-1 x^-1");
    assert_eq!(Word::identity(&a).to_string(), "1");
    assert_eq!(w("x*x*y^-2").to_string(), "x^2 y^-2");
}

#[test]
fn parse_errors() {
    let a = Alphabet::new(["x", "y"]).unwrap();
    for bad in ["", "x^0", "x^", "q", "x ^2", "1^2", "x^-", "x^1.5", "x*"] {
        assert!(Word::parse(bad, &a).is_err(), "{bad:?} should be rejected");
    }
}

#[test]
fn alphabet_mismatch() {
    let a = Alphabet::new(["x", "y"]).unwrap();
    let b = Alphabet::new(["x", "y"]).unwrap();
    let c = Alphabet::new(["u", "v"]).unwrap();
    let u = Word::generator(&a, 0);
    assert!(u.try_mul(&Word::generator(&b, 1)).is_ok());
    assert!(u.try_mul(&Word::generator(&c, 1)).is_err());
}
