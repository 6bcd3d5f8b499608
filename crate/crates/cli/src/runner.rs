use std::collections::HashMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use clap::ValueEnum;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::manifest::{CheckSpec, Manifest};
use crate::report::{normalize, CheckResult, Report, Status};
use crate::suites;

/// A check computes a string that is compared with the manifest's
/// `expected` value.
pub type CheckFn = fn(&mut ChaCha8Rng) -> anyhow::Result<String>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    /// Rank-2 automorphism tables on the Klein-four kernel and the map to ⟨α, β⟩.
    Free2,
    /// The index-2 subgroup of F₃ and its integral representation.
    Largeness,
    /// Fox calculus, the Magnus embedding and local-ring commutators.
    Magnus,
    /// Congruence-subgroup certificates.
    Congruence,
    /// Affine group and two-generation certificates.
    Affine,
    /// Randomized invariants of words, homomorphisms and Schreier systems.
    Properties,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Free2 => "free2",
            Suite::Largeness => "largeness",
            Suite::Magnus => "magnus",
            Suite::Congruence => "congruence",
            Suite::Affine => "affine",
            Suite::Properties => "properties",
            Suite::All => "all",
        }
    }

    fn includes(self, suite: &str) -> bool {
        self == Suite::All || self.name() == suite
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct RunOptions {
    pub seed: u64,
    /// Record wall-clock timestamp and per-check durations. Off by default so
    /// reports are reproducible byte for byte.
    pub timings: bool,
}

/// Per-check generator: SHA-256 of the seed and the check id.
pub fn check_rng(seed: u64, id: &str) -> ChaCha8Rng {
    let mut h = Sha256::new();
    h.update(seed.to_le_bytes());
    h.update(id.as_bytes());
    ChaCha8Rng::from_seed(h.finalize().into())
}

fn panic_message(e: &(dyn std::any::Any + Send)) -> String {
    e.downcast_ref::<&str>()
        .map(|s| s.to_string())
        .or_else(|| e.downcast_ref::<String>().cloned())
        .unwrap_or_else(|| "unknown panic".into())
}

fn run_check(spec: &CheckSpec, f: Option<CheckFn>, opts: RunOptions) -> CheckResult {
    let start = Instant::now();
    let (status, computed) = match f {
        None => (Status::Skipped, "no implementation".to_string()),
        Some(f) => {
            let mut rng = check_rng(opts.seed, &spec.id);
            let outcome = catch_unwind(AssertUnwindSafe(|| f(&mut rng)));
            match outcome {
                Ok(Ok(computed)) => {
                    let ok = normalize(&computed) == normalize(&spec.expected);
                    (if ok { Status::Pass } else { Status::Fail }, computed)
                }
                Ok(Err(e)) => (Status::Fail, format!("error: {e:#}")),
                Err(p) => (Status::Fail, format!("panic: {}", panic_message(p.as_ref()))),
            }
        }
    };
    let elapsed = if opts.timings { start.elapsed().as_millis() as u64 } else { 0 };
    CheckResult {
        id: spec.id.clone(),
        reference: spec.reference.clone(),
        status,
        expected: spec.expected.clone(),
        computed,
        elapsed_millis: elapsed,
    }
}

/// Runs every manifest check belonging to `suite`, in parallel, and returns
/// the results in manifest order.
pub fn run_suite(suite: Suite, opts: RunOptions) -> Report {
    run_manifest(&Manifest::builtin(), suite, opts)
}

pub fn run_manifest(manifest: &Manifest, suite: Suite, opts: RunOptions) -> Report {
    let registry: HashMap<&str, CheckFn> = suites::registry().into_iter().collect();
    let specs: Vec<&CheckSpec> = manifest.checks.iter().filter(|c| suite.includes(&c.suite)).collect();
    let results: Vec<CheckResult> = specs
        .par_iter()
        .map(|spec| run_check(spec, registry.get(spec.id.as_str()).copied(), opts))
        .collect();
    let timestamp = opts
        .timings
        .then(|| chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true));
    Report::new(suite.name(), opts.seed, timestamp, results)
}
