//! The affine group Δ = ⟨D, S⟩ ≤ GL_{r−1}(F_p) and the two-generated Γ = W ⋊ Δ.

use anyhow::Result;
use freecsp::affine::{
    irreducibility_certificate, two_generation_certificate, AffineGroup, AffineParams, Gamma,
};
use rand_chacha::ChaCha8Rng;

use crate::runner::CheckFn;

fn params(r: u64, p: u64) -> Result<AffineParams> {
    Ok(AffineParams::new(r, p, None)?)
}

fn delta_order(r: u64, p: u64) -> Result<String> {
    // Closure of ⟨D, S⟩ as matrices, not the formula r(r − 1).
    Ok(AffineGroup::new(params(r, p)?).generated_order().to_string())
}

fn irreducible(r: u64, p: u64) -> Result<String> {
    Ok(irreducibility_certificate(&params(r, p)?).irreducible.to_string())
}

fn copy_dimensions(r: u64, p: u64) -> Result<String> {
    let rep = two_generation_certificate(&params(r, p)?);
    Ok(serde_json::to_string(&rep.copy_dimensions)?)
}

fn vandermonde(r: u64, p: u64) -> Result<String> {
    let rep = two_generation_certificate(&params(r, p)?);
    Ok(if rep.c_is_e11 { "E11".into() } else { format!("betas {:?}", rep.vandermonde_betas) })
}

fn two_generation(r: u64, p: u64) -> Result<String> {
    let params = params(r, p)?;
    let rep = two_generation_certificate(&params);
    Ok(if rep.passed(&params) { "pass".into() } else { format!("{rep:?}") })
}

fn gamma_order(r: u64, p: u64) -> Result<String> {
    Ok(Gamma::new(params(r, p)?).order().to_string())
}

macro_rules! affine_checks {
    ($($prefix:literal => ($r:literal, $p:literal)),* $(,)?) => {
        vec![$(
            (concat!("affine.", $prefix, ".delta-order"), (|_: &mut ChaCha8Rng| delta_order($r, $p)) as CheckFn),
            (concat!("affine.", $prefix, ".irreducible"), |_| irreducible($r, $p)),
            (concat!("affine.", $prefix, ".copy-dimensions"), |_| copy_dimensions($r, $p)),
            (concat!("affine.", $prefix, ".vandermonde"), |_| vandermonde($r, $p)),
            (concat!("affine.", $prefix, ".two-generation"), |_| two_generation($r, $p)),
            (concat!("affine.", $prefix, ".gamma-order"), |_| gamma_order($r, $p)),
        )*]
    };
}

pub(super) fn checks() -> Vec<(&'static str, CheckFn)> {
    affine_checks! {
        "r5-p11" => (5, 11),
        "r3-p7" => (3, 7),
        "r7-p29" => (7, 29),
    }
}
