//! Certificates for N = pullback of K through π, and M = N'Nᵖ ∩ F₂'F₂⁴.

use anyhow::Result;
use freecsp::congruence::{certify, spot_check, Certificate, CongruenceInput, NOracle};
use freecsp::quotients::builtin::pi_target;
use freecsp::FiniteQuotient;
use rand_chacha::ChaCha8Rng;

use crate::runner::CheckFn;

/// K of index 2 in ⟨α, β⟩: α acts as a transposition, β trivially.
fn k_index_two() -> Result<FiniteQuotient> {
    Ok(FiniteQuotient::new(&pi_target(), vec![vec![1, 0], vec![0, 1]])?)
}

fn certificate(k: Option<FiniteQuotient>, p: u64) -> Result<Certificate> {
    let input = match k {
        Some(k) => CongruenceInput::new(&k, p)?,
        None => CongruenceInput::trivial(p)?,
    };
    Ok(certify(&NOracle::build(&input)?))
}

fn trivial(p: u64, field: fn(&Certificate) -> String) -> Result<String> {
    Ok(field(&certificate(None, p)?))
}

fn pi_in_k(rng: &mut ChaCha8Rng) -> Result<String> {
    let n = NOracle::build(&CongruenceInput::trivial(5)?)?;
    let r = spot_check(&n, 1_000, rng)?;
    Ok(format!("{}/{}", r.pi_in_k, r.samples))
}

fn spot(rng: &mut ChaCha8Rng, k: Option<FiniteQuotient>, p: u64) -> Result<String> {
    let input = match k {
        Some(k) => CongruenceInput::new(&k, p)?,
        None => CongruenceInput::trivial(p)?,
    };
    let r = spot_check(&NOracle::build(&input)?, 300, rng)?;
    Ok(if r.passed() { "pass".into() } else { format!("{r:?}") })
}

pub(super) fn checks() -> Vec<(&'static str, CheckFn)> {
    vec![
        ("congruence.n1-p5.index", |_| trivial(5, |c| c.index_of_n.to_string())),
        ("congruence.n1-p5.rank", |_| trivial(5, |c| c.rank_of_n.to_string())),
        ("congruence.n1-p5.torus", |_| trivial(5, |c| c.image_order_in4_torus.to_string())),
        ("congruence.n1-p5.order", |_| trivial(5, |c| c.order_of_f2_mod_m.to_string())),
        ("congruence.n1-p5.bound", |_| trivial(5, |c| c.bound.to_string())),
        ("congruence.n1-p5.divides", |_| trivial(5, |c| c.divides.to_string())),
        ("congruence.n1-p5.pi-in-k", pi_in_k),
        ("congruence.n1-p5.spot-check", |rng| spot(rng, None, 5)),
        ("congruence.n1-p7.order", |_| trivial(7, |c| c.order_of_f2_mod_m.to_string())),
        ("congruence.n2-p5.index", |_| Ok(certificate(Some(k_index_two()?), 5)?.index_of_n.to_string())),
        ("congruence.n2-p5.divides", |_| Ok(certificate(Some(k_index_two()?), 5)?.divides.to_string())),
        ("congruence.n2-p5.spot-check", |rng| spot(rng, Some(k_index_two()?), 5)),
    ]
}
