//! Check implementations, keyed by the ids in `checks.toml`.

use rand_chacha::ChaCha8Rng;

use crate::runner::CheckFn;

mod affine;
mod congruence;
mod free2;
mod largeness;
mod magnus;
mod properties;

pub(crate) fn registry() -> Vec<(&'static str, CheckFn)> {
    let mut all = Vec::new();
    all.extend(free2::checks());
    all.extend(largeness::checks());
    all.extend(magnus::checks());
    all.extend(congruence::checks());
    all.extend(affine::checks());
    all.extend(properties::checks());
    all
}

/// Runs `trial` `n` times and reports `"passed/n"`.
pub(crate) fn tally(
    n: usize,
    rng: &mut ChaCha8Rng,
    mut trial: impl FnMut(&mut ChaCha8Rng) -> anyhow::Result<bool>,
) -> anyhow::Result<String> {
    let mut passed = 0;
    for _ in 0..n {
        passed += usize::from(trial(rng)?);
    }
    Ok(format!("{passed}/{n}"))
}

pub(crate) fn join<T: std::fmt::Display>(items: impl IntoIterator<Item = T>, sep: &str) -> String {
    items.into_iter().map(|t| t.to_string()).collect::<Vec<_>>().join(sep)
}

pub(crate) fn matrix<T: serde::Serialize>(rows: &[Vec<T>]) -> String {
    serde_json::to_string(rows).expect("plain data")
}
