//! R = ker(F₃ → C₂), its abelianization as a module and the map ν to GL₂(ℤ).

use anyhow::Result;
use freecsp::homs::builtin::{alpha3, beta3, inversion, rank3, right_transvection};
use freecsp::quotients::builtin::parity_kernel;
use freecsp::sampling::aut_product;
use freecsp::schreier_modules::{action_matrix, conjugation_matrix, eigen_lattice, induced_action};
use freecsp::{IntMatrix, VerifiedAut, Word};
use rand_chacha::ChaCha8Rng;

use super::{join, matrix, tally};
use crate::runner::CheckFn;

fn b_matrix() -> Result<IntMatrix> {
    Ok(conjugation_matrix(&parity_kernel(), &Word::generator(&rank3(), 0))?)
}

/// Automorphisms of F₃ known to preserve R.
fn pool() -> Vec<VerifiedAut> {
    let a = rank3();
    let mut pool = vec![alpha3(), beta3()];
    pool.extend((0..3).map(|g| VerifiedAut::inner(&Word::generator(&a, g))));
    pool.push(right_transvection(&a, 0, 1, 1));
    pool.push(right_transvection(&a, 2, 1, -1));
    pool.push(inversion(&a, 0));
    pool
}

fn nu(aut: &VerifiedAut) -> Result<IntMatrix> {
    let minus = eigen_lattice(&b_matrix()?, -1)?;
    Ok(induced_action(&parity_kernel(), aut, &minus)?)
}

fn generators(_: &mut ChaCha8Rng) -> Result<String> {
    Ok(join(parity_kernel().generators(), ", "))
}

fn b(_: &mut ChaCha8Rng) -> Result<String> {
    Ok(matrix(&b_matrix()?.to_rows()))
}

fn eigen(lambda: i64) -> Result<String> {
    Ok(matrix(eigen_lattice(&b_matrix()?, lambda)?.basis()))
}

fn b_commutation(rng: &mut ChaCha8Rng) -> Result<String> {
    let r = parity_kernel();
    let b = b_matrix()?;
    let pool = pool();
    tally(60, rng, |rng| {
        let m = action_matrix(&r, &aut_product(&pool, 6, rng))?;
        Ok(&m * &b == &b * &m)
    })
}

fn nu_multiplicative(rng: &mut ChaCha8Rng) -> Result<String> {
    let pool = pool();
    tally(60, rng, |rng| {
        let s = aut_product(&pool, 4, rng);
        let t = aut_product(&pool, 4, rng);
        Ok(nu(&s.compose(&t)?)? == &nu(&s)? * &nu(&t)?)
    })
}

pub(super) fn checks() -> Vec<(&'static str, CheckFn)> {
    vec![
        ("largeness.r.generators", generators),
        ("largeness.b", b),
        ("largeness.b-squared", |_| {
            let b = b_matrix()?;
            Ok(matrix(&(&b * &b).to_rows()))
        }),
        ("largeness.v-plus", |_| eigen(1)),
        ("largeness.v-minus", |_| eigen(-1)),
        ("largeness.nu-alpha", |_| Ok(matrix(&nu(&alpha3())?.to_rows()))),
        ("largeness.nu-beta", |_| Ok(matrix(&nu(&beta3())?.to_rows()))),
        ("largeness.b-commutation", b_commutation),
        ("largeness.nu-multiplicative", nu_multiplicative),
    ]
}
