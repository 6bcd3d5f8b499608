//! Δ = ker(F₂ → (ℤ/2)²), the action of α and β on its basis and the map π onto ⟨α, β⟩.

use anyhow::{ensure, Result};
use freecsp::homs::builtin::{alpha2, beta2, rank2};
use freecsp::quotients::builtin::{delta, pi_images, pi_target};
use freecsp::{SchreierSystem, VerifiedAut, Word};
use rand_chacha::ChaCha8Rng;

use super::join;
use crate::runner::CheckFn;

fn sw(s: &SchreierSystem, text: &str) -> Result<Word> {
    Ok(Word::parse(text, s.subgroup_alphabet())?)
}

/// `σ(v)` rewritten in the basis of Δ.
fn image(s: &SchreierSystem, aut: &VerifiedAut, v: &str) -> Result<Word> {
    let w = s.expand(&sw(s, v)?)?;
    Ok(s.rewrite(&aut.apply(&w)?)?)
}

/// A row of the action table: the image in F₂ and its rewriting.
fn table_row(aut: VerifiedAut, e: &str) -> Result<String> {
    let s = delta();
    let w = aut.apply(&s.expand(&sw(&s, e)?)?)?;
    Ok(format!("{w} = {}", s.rewrite(&w)?))
}

/// `σ(v)` in the basis, followed by its value under π.
fn invariance(aut: VerifiedAut, v: &str) -> Result<String> {
    let s = delta();
    let target = pi_target();
    let pi = s.subgroup_hom(pi_images(&target), &target)?;
    let img = image(&s, &aut, v)?;
    Ok(format!("{img}; pi={}", pi.evaluate_subgroup_word(&img)?))
}

/// Checks a displayed factorization of `σ(v)` both in the basis of Δ and,
/// after expansion, in F₂. Reports the F₂ word.
fn factorization(aut: VerifiedAut, v: &str, factored: &str) -> Result<String> {
    let s = delta();
    let factored = sw(&s, factored)?;
    let img = image(&s, &aut, v)?;
    ensure!(img == factored, "basis words differ: {img} vs {factored}");
    let in_f2 = aut.apply(&s.expand(&sw(&s, v)?)?)?;
    let expanded = s.expand(&factored)?;
    ensure!(in_f2 == expanded, "F2 words differ: {in_f2} vs {expanded}");
    Ok(in_f2.to_string())
}

fn induced(aut: VerifiedAut, e: &str) -> Result<String> {
    let s = delta();
    let target = pi_target();
    let pi = s.subgroup_hom(pi_images(&target), &target)?;
    Ok(pi.evaluate_subgroup_word(&image(&s, &aut, e)?)?.to_string())
}

fn transversal(_: &mut ChaCha8Rng) -> Result<String> {
    Ok(join(delta().transversal(), ", "))
}

fn generators(_: &mut ChaCha8Rng) -> Result<String> {
    Ok(join(delta().generators(), ", "))
}

fn rank(_: &mut ChaCha8Rng) -> Result<String> {
    Ok(delta().rank().to_string())
}

fn kernel_generators(_: &mut ChaCha8Rng) -> Result<String> {
    let s = delta();
    let target = pi_target();
    let pi = s.subgroup_hom(pi_images(&target), &target)?;
    let mut out = Vec::new();
    for v in ["e2", "e1 e4", "e3 e5"] {
        out.push(format!("{v} -> {}", pi.evaluate_subgroup_word(&sw(&s, v)?)?));
    }
    Ok(out.join(", "))
}

fn commutator_fixed(_: &mut ChaCha8Rng) -> Result<String> {
    let a = rank2();
    let c = Word::commutator(&Word::generator(&a, 1), &Word::generator(&a, 0))?;
    let mut out = Vec::new();
    for (name, aut) in [("alpha", alpha2()), ("beta", beta2())] {
        out.push(format!("{name}: {}", aut.apply(&c)?));
    }
    Ok(out.join("; "))
}

pub(super) fn checks() -> Vec<(&'static str, CheckFn)> {
    vec![
        ("free2.delta.transversal", transversal),
        ("free2.delta.generators", generators),
        ("free2.delta.rank", rank),
        ("free2.alpha.e1", |_| table_row(alpha2(), "e1")),
        ("free2.alpha.e2", |_| table_row(alpha2(), "e2")),
        ("free2.alpha.e3", |_| table_row(alpha2(), "e3")),
        ("free2.alpha.e4", |_| table_row(alpha2(), "e4")),
        ("free2.alpha.e5", |_| table_row(alpha2(), "e5")),
        ("free2.beta.e1", |_| table_row(beta2(), "e1")),
        ("free2.beta.e2", |_| table_row(beta2(), "e2")),
        ("free2.beta.e3", |_| table_row(beta2(), "e3")),
        ("free2.beta.e4", |_| table_row(beta2(), "e4")),
        ("free2.beta.e5", |_| table_row(beta2(), "e5")),
        ("free2.pi.kernel-generators", kernel_generators),
        ("free2.invariance.alpha.e2", |_| invariance(alpha2(), "e2")),
        ("free2.invariance.alpha.e1e4", |_| invariance(alpha2(), "e1 e4")),
        ("free2.invariance.alpha.e3e5", |_| invariance(alpha2(), "e3 e5")),
        ("free2.invariance.beta.e2", |_| invariance(beta2(), "e2")),
        ("free2.invariance.beta.e1e4", |_| invariance(beta2(), "e1 e4")),
        ("free2.invariance.beta.e3e5", |_| invariance(beta2(), "e3 e5")),
        ("free2.factorization.alpha-e3e5", |_| {
            factorization(alpha2(), "e3 e5", "e4 e4^-1 e2 e4 e3 e1 e4 e2 e3^-1 e3 e5 e1 e4 e4^-1")
        }),
        ("free2.factorization.beta-e1e4", |_| {
            factorization(beta2(), "e1 e4", "e5 e1 e3 e5 e1^-1 e1 e4 e3 e5 e5^-1")
        }),
        ("free2.induced.alpha.alpha", |_| induced(alpha2(), "e1")),
        ("free2.induced.alpha.beta", |_| induced(alpha2(), "e3")),
        ("free2.induced.beta.alpha", |_| induced(beta2(), "e1")),
        ("free2.induced.beta.beta", |_| induced(beta2(), "e3")),
        ("free2.commutator-fixed", commutator_fixed),
    ]
}
