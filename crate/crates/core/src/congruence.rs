//! Explicit congruence quotients of `F₂ = ⟨x, y⟩` built from a finite-index
//! normal subgroup `K` of the free group `⟨α, β⟩`.
//!
//! With `Δ = ker(F₂ → (ℤ/2)²)`, transversal `t = 1, x, y, xy` and the
//! surjection `π: Δ → ⟨α, β⟩`, the subgroups are
//!
//! * `N = F₂'F₂⁶ ∩ ⋂_i t_i⁻¹ π⁻¹(K) t_i`, normal of index dividing `36·n⁴`;
//! * `M = F₂'F₂⁴ ∩ N'Nᵖ`, of index dividing `144·n⁴·p^(36·n⁴ + 1)`,
//!
//! where `n = [⟨α, β⟩ : K]` and `p ∤ 6n` is prime.

use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::Zero;
use rand::Rng;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::homs::FreeHom;
use crate::quotients::builtin::{delta, pi_images, pi_target};
use crate::quotients::{FiniteQuotient, QuotientError, SchreierSystem};
use crate::sampling;
use crate::words::{check_alphabet, Alphabet, Word, WordError};

/// Largest index of `N` that will be enumerated.
pub const MAX_INDEX: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CongruenceError {
    #[error(transparent)]
    Quotient(#[from] QuotientError),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("p = {p} divides 6n (n = {n})")]
    PrimeDividesSixN { p: u64, n: usize },
    #[error("K must be given by a quotient of a rank-2 free group, got rank {0}")]
    Rank(usize),
    #[error("K is not normal: the action on the orbit of point 0 is not regular")]
    NotNormal,
    #[error("index of N exceeds {MAX_INDEX}")]
    TooLarge,
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// `K` as the stabilizer of point 0 in a transitive action of `⟨α, β⟩`,
/// together with a prime `p ∤ 6n`.
#[derive(Debug, Clone)]
pub struct CongruenceInput {
    k_quotient: FiniteQuotient,
    n: usize,
    p: u64,
}

impl CongruenceInput {
    /// Generators of `k_quotient` are matched to `α, β` by position. The
    /// action is restricted to the orbit of 0, whose size is `n`.
    pub fn new(k_quotient: &FiniteQuotient, p: u64) -> Result<Self, CongruenceError> {
        let rank = k_quotient.alphabet().rank();
        if rank != 2 {
            return Err(CongruenceError::Rank(rank));
        }
        if p == 2 || !is_prime(p) {
            return Err(CongruenceError::NotOddPrime(p));
        }
        let orbit = k_quotient.orbit(0);
        let n = orbit.len();
        if p % 3 == 0 || (n as u64) % p == 0 {
            return Err(CongruenceError::PrimeDividesSixN { p, n });
        }
        let mut position = vec![usize::MAX; k_quotient.target_size()];
        for (i, &q) in orbit.iter().enumerate() {
            position[q] = i;
        }
        let images = (0..2)
            .map(|g| orbit.iter().map(|&q| position[k_quotient.permutation(g)[q]]).collect())
            .collect();
        let restricted = FiniteQuotient::new(&pi_target(), images)?;
        let k = SchreierSystem::new(&restricted);
        for g in k.generators() {
            for q in 0..n {
                if restricted.act(q, g)? != q {
                    return Err(CongruenceError::NotNormal);
                }
            }
        }
        Ok(CongruenceInput {
            k_quotient: restricted,
            n,
            p,
        })
    }

    /// `K = ⟨α, β⟩`.
    pub fn trivial(p: u64) -> Result<Self, CongruenceError> {
        Self::new(&FiniteQuotient::trivial(&pi_target()), p)
    }

    /// The action of `⟨α, β⟩` on `⟨α, β⟩/K`, relabelled over `{alpha, beta}`.
    pub fn k_quotient(&self) -> &FiniteQuotient {
        &self.k_quotient
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn in_k(&self, v: &Word) -> Result<bool, CongruenceError> {
        Ok(self.k_quotient.stabilizes_base(v)?)
    }
}

/// Membership in `N`, decided both from the definition and through a
/// Schreier system for `N`.
#[derive(Debug, Clone)]
pub struct NOracle {
    input: CongruenceInput,
    delta: SchreierSystem,
    pi: FreeHom,
    conjugators: Vec<Word>,
    schreier: SchreierSystem,
}

fn exponent_sums_divisible(w: &Word, m: i64) -> bool {
    w.exponent_sums().iter().all(|e| e % m == 0)
}

impl NOracle {
    pub fn build(input: &CongruenceInput) -> Result<Self, CongruenceError> {
        let delta = delta();
        let target = pi_target();
        let pi = FreeHom::new(delta.subgroup_alphabet(), &target, pi_images(&target))
            .map_err(QuotientError::from)?;
        let f2 = Arc::clone(delta.alphabet());
        let conjugators: Vec<Word> = ["1", "x", "y", "x y"]
            .iter()
            .map(|t| Word::parse(t, &f2))
            .collect::<Result<_, _>>()?;

        let mod6 = FiniteQuotient::mod_abelianization(&f2, 6)?;
        let hom = delta.subgroup_hom(pi.images().to_vec(), &target)?;
        let preimage = hom.pullback_action(input.k_quotient())?;
        let mut factors: Vec<(&FiniteQuotient, usize)> = vec![(&mod6, 0)];
        let bases = conjugators
            .iter()
            .map(|t| preimage.act(0, t))
            .collect::<Result<Vec<_>, _>>()?;
        factors.extend(bases.iter().map(|&b| (&preimage, b)));
        let product = match FiniteQuotient::orbit_product(&factors, MAX_INDEX) {
            Err(QuotientError::TooLarge { .. }) => return Err(CongruenceError::TooLarge),
            other => other?,
        };
        let schreier = SchreierSystem::new(&product);
        Ok(NOracle {
            input: input.clone(),
            delta,
            pi,
            conjugators,
            schreier,
        })
    }

    pub fn input(&self) -> &CongruenceInput {
        &self.input
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        self.delta.alphabet()
    }

    pub fn schreier(&self) -> &SchreierSystem {
        &self.schreier
    }

    pub fn index(&self) -> usize {
        self.schreier.index()
    }

    pub fn rank(&self) -> usize {
        self.schreier.rank()
    }

    /// `π(w)` for `w ∈ Δ`.
    pub fn pi(&self, w: &Word) -> Result<Word, CongruenceError> {
        let v = self.delta.rewrite(w)?;
        Ok(self.pi.apply(&v).map_err(QuotientError::from)?)
    }

    /// `w ∈ F₂'F₂⁶` and `π(t_i w t_i⁻¹) ∈ K` for every `t_i`.
    pub fn contains_by_definition(&self, w: &Word) -> Result<bool, CongruenceError> {
        check_alphabet(self.alphabet(), w.alphabet())?;
        if !exponent_sums_divisible(w, 6) {
            return Ok(false);
        }
        for t in &self.conjugators {
            let c = &(t * w) * &t.inverse();
            if !self.input.in_k(&self.pi(&c)?)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Membership via the coset action of `N`.
    pub fn contains(&self, w: &Word) -> Result<bool, CongruenceError> {
        Ok(self.schreier.contains(w)?)
    }
}

/// Membership in `M = F₂'F₂⁴ ∩ N'Nᵖ`.
#[derive(Debug, Clone)]
pub struct MOracle {
    n: NOracle,
}

impl MOracle {
    pub fn build(n: &NOracle) -> Self {
        MOracle { n: n.clone() }
    }

    pub fn n_oracle(&self) -> &NOracle {
        &self.n
    }

    /// `w` has exponent sums ≡ 0 mod 4, lies in `N`, and its class in
    /// `N/N'` vanishes mod `p`.
    pub fn contains(&self, w: &Word) -> Result<bool, CongruenceError> {
        check_alphabet(self.n.alphabet(), w.alphabet())?;
        if !exponent_sums_divisible(w, 4) || !self.n.contains(w)? {
            return Ok(false);
        }
        let v = self.n.schreier.rewrite(w)?;
        Ok(exponent_sums_divisible(&v, self.n.input.p as i64))
    }
}

fn decimal<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_str_radix(10))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Certificate {
    pub n: usize,
    pub p: u64,
    pub index_of_n: usize,
    pub rank_of_n: usize,
    #[serde(serialize_with = "decimal")]
    pub order_of_f2_mod_np_n: BigUint,
    pub image_order_in4_torus: usize,
    #[serde(serialize_with = "decimal")]
    pub order_of_f2_mod_m: BigUint,
    #[serde(serialize_with = "decimal")]
    pub bound: BigUint,
    pub divides: bool,
}

/// Order of the subgroup of `(ℤ/4)²` generated by `vectors` mod 4.
pub fn subgroup_order_mod4(vectors: &[Vec<i64>]) -> usize {
    let mut seen = [[false; 4]; 4];
    seen[0][0] = true;
    let mut stack = vec![(0usize, 0usize)];
    let gens: Vec<(usize, usize)> = vectors
        .iter()
        .map(|v| (v[0].rem_euclid(4) as usize, v[1].rem_euclid(4) as usize))
        .collect();
    let mut count = 1;
    while let Some((a, b)) = stack.pop() {
        for &(g, h) in &gens {
            let (c, d) = ((a + g) % 4, (b + h) % 4);
            if !seen[c][d] {
                seen[c][d] = true;
                count += 1;
                stack.push((c, d));
            }
        }
    }
    count
}

/// `144·n⁴·p^(36·n⁴ + 1)`.
pub fn index_bound(n: usize, p: u64) -> BigUint {
    let n4 = (n as u64).pow(4);
    let exponent = u32::try_from(36 * n4 + 1).expect("exponent fits in u32");
    BigUint::from(144u64) * BigUint::from(n4) * BigUint::from(p).pow(exponent)
}

/// `[F₂ : N'Nᵖ] = [F₂ : N]·p^rank(N)`, the image of `N'Nᵖ` in
/// `F₂/F₂'F₂⁴`, their product `[F₂ : M]`, and the bound it must divide.
pub fn certify(n: &NOracle) -> Certificate {
    let input = n.input();
    let p = input.p;
    let index = n.index();
    let rank = n.rank();
    let order_np = BigUint::from(index) * BigUint::from(p).pow(rank as u32);
    let images: Vec<Vec<i64>> = n
        .schreier()
        .generators()
        .iter()
        .map(|g| g.exponent_sums().iter().map(|e| e * p as i64).collect())
        .collect();
    let torus = subgroup_order_mod4(&images);
    let order_m = &order_np * BigUint::from(torus);
    let bound = index_bound(input.n, p);
    let divides = !order_m.is_zero() && (&bound % &order_m).is_zero();
    Certificate {
        n: input.n,
        p,
        index_of_n: index,
        rank_of_n: rank,
        order_of_f2_mod_np_n: order_np,
        image_order_in4_torus: torus,
        order_of_f2_mod_m: order_m,
        bound,
        divides,
    }
}

/// Sample-based checks of the containments used by the construction.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SpotCheck {
    pub samples: usize,
    /// Sampled `N`-elements whose `π`-image lies in `K`.
    pub pi_in_k: usize,
    /// Words on which the definitional and Schreier membership tests agree.
    pub routes_agree: usize,
    /// Sampled `M`-elements that lie in `N` and `F₂'F₂⁴`.
    pub m_in_n: usize,
    pub m_samples: usize,
    /// Words `w` with `w ∈ N ⇔ g w g⁻¹ ∈ N` for a random `g`.
    pub conjugation_invariant: usize,
}

impl SpotCheck {
    pub fn passed(&self) -> bool {
        self.pi_in_k == self.samples
            && self.routes_agree == 2 * self.samples
            && self.m_in_n == self.m_samples
            && self.conjugation_invariant == 2 * self.samples
    }
}

pub fn spot_check<R: Rng + ?Sized>(
    n: &NOracle,
    samples: usize,
    rng: &mut R,
) -> Result<SpotCheck, CongruenceError> {
    let m = MOracle::build(n);
    let f2 = Arc::clone(n.alphabet());
    let p = n.input.p as i64;
    let mut report = SpotCheck {
        samples,
        ..SpotCheck::default()
    };
    for _ in 0..samples {
        let w = sampling::subgroup_element(n.schreier(), rng.gen_range(1..=3), rng);
        let other = sampling::word_up_to(&f2, 24, rng);
        if n.input.in_k(&n.pi(&w)?)? {
            report.pi_in_k += 1;
        }
        for v in [&w, &other] {
            if n.contains(v)? == n.contains_by_definition(v)? {
                report.routes_agree += 1;
            }
            let g = sampling::word_up_to(&f2, 8, rng);
            let conj = &(&g * v) * &g.inverse();
            if n.contains(v)? == n.contains(&conj)? {
                report.conjugation_invariant += 1;
            }
        }
        // Elements of M: p-th powers of N-elements with exponent sums ≡ 0
        // mod 4, and commutators of N-elements.
        let u = sampling::subgroup_element(n.schreier(), rng.gen_range(1..=2), rng);
        let candidates = [w.pow(4 * p), Word::commutator(&w, &u)?];
        for c in candidates {
            if m.contains(&c)? {
                report.m_samples += 1;
                if n.contains(&c)? && exponent_sums_divisible(&c, 4) {
                    report.m_in_n += 1;
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(t: &str) -> Word {
        Word::parse(t, &crate::homs::builtin::rank2()).unwrap()
    }

    #[test]
    fn input_validation() {
        assert_eq!(CongruenceInput::trivial(3).unwrap_err(), CongruenceError::PrimeDividesSixN { p: 3, n: 1 });
        assert_eq!(CongruenceInput::trivial(9).unwrap_err(), CongruenceError::NotOddPrime(9));
        assert_eq!(CongruenceInput::trivial(2).unwrap_err(), CongruenceError::NotOddPrime(2));
        let c5 = FiniteQuotient::abelian(&pi_target(), &[5], &[vec![1], vec![0]]).unwrap();
        assert_eq!(
            CongruenceInput::new(&c5, 5).unwrap_err(),
            CongruenceError::PrimeDividesSixN { p: 5, n: 5 }
        );
        let s3 = FiniteQuotient::new(&pi_target(), vec![vec![1, 0, 2], vec![1, 2, 0]]).unwrap();
        assert_eq!(CongruenceInput::new(&s3, 5).unwrap_err(), CongruenceError::NotNormal);
    }

    #[test]
    fn trivial_k_gives_mod_six() {
        let input = CongruenceInput::trivial(5).unwrap();
        let n = NOracle::build(&input).unwrap();
        assert_eq!(n.index(), 36);
        assert_eq!(n.rank(), 37);
        assert!(n.contains(&word("x^6")).unwrap());
        assert!(!n.contains(&word("x")).unwrap());
        assert!(n.contains_by_definition(&word("x^6")).unwrap());
    }

    #[test]
    fn m_membership_examples() {
        let n = NOracle::build(&CongruenceInput::trivial(5).unwrap()).unwrap();
        let m = MOracle::build(&n);
        assert!(!m.contains(&word("x^30")).unwrap());
        assert!(m.contains(&word("x^60")).unwrap());
    }

    #[test]
    fn certificate_for_trivial_k() {
        let n = NOracle::build(&CongruenceInput::trivial(5).unwrap()).unwrap();
        let c = certify(&n);
        let five37 = BigUint::from(5u32).pow(37);
        assert_eq!(c.order_of_f2_mod_np_n, BigUint::from(36u32) * &five37);
        assert_eq!(c.image_order_in4_torus, 4);
        assert_eq!(c.order_of_f2_mod_m, BigUint::from(144u32) * &five37);
        assert_eq!(c.bound, BigUint::from(144u32) * &five37);
        assert!(c.divides);
    }

    #[test]
    fn torus_orders() {
        assert_eq!(subgroup_order_mod4(&[]), 1);
        assert_eq!(subgroup_order_mod4(&[vec![2, 0], vec![0, 2]]), 4);
        assert_eq!(subgroup_order_mod4(&[vec![1, 1]]), 4);
        assert_eq!(subgroup_order_mod4(&[vec![1, 0], vec![0, 3]]), 16);
    }
}
