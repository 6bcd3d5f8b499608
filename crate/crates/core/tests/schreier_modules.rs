use freecsp::homs::builtin::{alpha3, beta3, inversion, rank3, right_transvection};
use freecsp::intmat::elementary_divisors;
use freecsp::quotients::builtin::parity_kernel;
use freecsp::sampling::aut_product;
use freecsp::schreier_modules::{
    action_matrix, conjugation_matrix, eigen_lattice, induced_action, ModuleError,
};
use freecsp::words::Word;
use freecsp::{IntMatrix, VerifiedAut};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Automorphisms of F₃ that preserve R.
fn pool() -> Vec<VerifiedAut> {
    let a = rank3();
    let mut pool = vec![alpha3(), beta3()];
    for g in 0..3 {
        pool.push(VerifiedAut::inner(&Word::generator(&a, g)));
    }
    pool.push(right_transvection(&a, 0, 1, 1));
    pool.push(right_transvection(&a, 2, 1, -1));
    pool.push(inversion(&a, 0));
    pool
}

fn b_matrix() -> IntMatrix {
    conjugation_matrix(&parity_kernel(), &Word::generator(&rank3(), 0)).unwrap()
}

#[test]
fn preserving_automorphisms_commute_with_b() {
    let r = parity_kernel();
    let b = b_matrix();
    let pool = pool();
    for sigma in &pool {
        let m = action_matrix(&r, sigma).unwrap();
        assert_eq!(&m * &b, &b * &m);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..60 {
        let sigma = aut_product(&pool, 6, &mut rng);
        let m = action_matrix(&r, &sigma).unwrap();
        assert_eq!(&m * &b, &b * &m);
    }
}

#[test]
fn inner_actions() {
    let r = parity_kernel();
    let a = rank3();
    let x = action_matrix(&r, &VerifiedAut::inner(&Word::generator(&a, 0))).unwrap();
    assert_eq!(x, b_matrix());
    for g in 1..3 {
        let m = action_matrix(&r, &VerifiedAut::inner(&Word::generator(&a, g))).unwrap();
        assert!(m.is_identity());
    }
    // y lies in R, so conjugating by it is trivial on R/R'.
    assert!(conjugation_matrix(&r, &Word::generator(&a, 1)).unwrap().is_identity());
}

#[test]
fn nu_is_multiplicative() {
    let r = parity_kernel();
    let minus = eigen_lattice(&b_matrix(), -1).unwrap();
    let pool = pool();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..60 {
        let s = aut_product(&pool, 4, &mut rng);
        let t = aut_product(&pool, 4, &mut rng);
        let st = s.compose(&t).unwrap();
        let lhs = induced_action(&r, &st, &minus).unwrap();
        let rhs = &induced_action(&r, &s, &minus).unwrap() * &induced_action(&r, &t, &minus).unwrap();
        assert_eq!(lhs, rhs);
        let full = &action_matrix(&r, &s).unwrap() * &action_matrix(&r, &t).unwrap();
        assert_eq!(action_matrix(&r, &st).unwrap(), full);
    }
    let nu_a = induced_action(&r, &alpha3(), &minus).unwrap();
    let nu_b = induced_action(&r, &beta3(), &minus).unwrap();
    let ab = induced_action(&r, &alpha3().compose(&beta3()).unwrap(), &minus).unwrap();
    assert_eq!(ab.to_rows(), vec![vec![2, 1], vec![1, 1]]);
    assert_eq!(ab, &nu_a * &nu_b);
}

#[test]
fn eigenlattices_are_exact_and_saturated() {
    let b = b_matrix();
    for lambda in [1, -1] {
        let l = eigen_lattice(&b, lambda).unwrap();
        for v in l.basis() {
            let image = b.apply(v);
            assert_eq!(image, v.iter().map(|x| lambda * x).collect::<Vec<_>>());
        }
        assert!(elementary_divisors(l.basis()).iter().all(|&d| d == 1));
        assert!(l.is_saturated());
    }
    assert_eq!(eigen_lattice(&b, 1).unwrap().rank() + eigen_lattice(&b, -1).unwrap().rank(), 5);
    assert_eq!(eigen_lattice(&b, 2).unwrap().rank(), 0);
    let rect = IntMatrix::zeros(2, 3);
    assert_eq!(eigen_lattice(&rect, 1), Err(ModuleError::NotSquare));
}

#[test]
fn plus_lattice_action() {
    let r = parity_kernel();
    let plus = eigen_lattice(&b_matrix(), 1).unwrap();
    let a = induced_action(&r, &alpha3(), &plus).unwrap();
    assert_eq!(a.rows(), 3);
    let inv = induced_action(&r, &alpha3().inverse(), &plus).unwrap();
    assert!((&a * &inv).is_identity());
}
