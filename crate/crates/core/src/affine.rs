//! The affine group `AGL₁(r)` acting on `V = F_p^{r−1}`, the semidirect
//! product `Γ = W ⋊ AGL₁(r)` with `W = V^{r−2}`, and certificates that `V`
//! is irreducible and that `Γ` is generated by two elements.
//!
//! `D = diag(ξ, ξ², …, ξ^{r−1})` for `ξ` of multiplicative order `r` in
//! `F_p`, and for `a ∈ F_r^*` the permutation matrix `P_a: e_i ↦ e_{a⁻¹ i}`
//! satisfies `P_a D P_a⁻¹ = D^a`. The pair `(a, b)` stands for `P_a D^b`, so
//! `(a, b)(a', b') = (aa', b·a'⁻¹ + b')`.

use std::collections::{HashSet, VecDeque};

use num_bigint::BigUint;
use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::congruence::is_prime;
use crate::modmat::{inv_mod, pow_mod, ModMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AffineError {
    #[error("r = {0} must be a prime greater than 2")]
    BadR(u64),
    #[error("p = {0} is not prime")]
    BadP(u64),
    #[error("r = {r} does not divide p - 1 (p = {p})")]
    NotCongruent { r: u64, p: u64 },
    #[error("xi = {xi} does not have multiplicative order {r} mod {p}")]
    BadXi { xi: u64, r: u64, p: u64 },
}

/// `r` prime, `p ≡ 1 mod r` prime, and `ξ ∈ F_p` of order `r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AffineParams {
    pub r: u64,
    pub p: u64,
    pub xi: u64,
}

/// Smallest prime `p ≡ 1 mod r`.
pub fn smallest_prime_congruent_one(r: u64) -> u64 {
    (1..).map(|k| k * r + 1).find(|&p| is_prime(p)).expect("primes in progressions")
}

/// Smallest generator of `F_q^*` for prime `q`.
pub fn primitive_root(q: u64) -> u64 {
    if q == 2 {
        return 1;
    }
    let factors: Vec<u64> = (2..q).filter(|&d| (q - 1) % d == 0 && is_prime(d)).collect();
    (2..q)
        .find(|&g| factors.iter().all(|&f| pow_mod(g, (q - 1) / f, q) != 1))
        .expect("prime fields have primitive roots")
}

impl AffineParams {
    /// Validates `(r, p)` and picks the smallest valid `ξ` when none is given.
    pub fn new(r: u64, p: u64, xi: Option<u64>) -> Result<Self, AffineError> {
        if r <= 2 || !is_prime(r) {
            return Err(AffineError::BadR(r));
        }
        if !is_prime(p) {
            return Err(AffineError::BadP(p));
        }
        if (p - 1) % r != 0 {
            return Err(AffineError::NotCongruent { r, p });
        }
        let has_order_r = |x: u64| x % p != 1 && pow_mod(x, r, p) == 1;
        let xi = match xi {
            Some(x) if has_order_r(x) => x % p,
            Some(x) => return Err(AffineError::BadXi { xi: x, r, p }),
            None => (2..p).find(|&x| has_order_r(x)).expect("r | p - 1"),
        };
        Ok(AffineParams { r, p, xi })
    }

    /// Dimension of `V`.
    pub fn dim(&self) -> usize {
        (self.r - 1) as usize
    }

    /// Number of copies of `V` in `W`.
    pub fn copies(&self) -> usize {
        (self.r - 2) as usize
    }

    /// The generator `a` of `F_r^*` used for `S`.
    pub fn generator(&self) -> u64 {
        primitive_root(self.r)
    }
}

/// An element `(a, b)` of `AGL₁(r)`, acting on `V` as `P_a D^b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct DeltaElement {
    pub a: u64,
    pub b: u64,
}

/// `AGL₁(r)` with its representation on `V`.
#[derive(Debug, Clone)]
pub struct AffineGroup {
    params: AffineParams,
    d: ModMatrix,
    s: ModMatrix,
}

impl AffineGroup {
    pub fn new(params: AffineParams) -> Self {
        let n = params.dim();
        let mut d = ModMatrix::zeros(params.p, n, n);
        for i in 0..n {
            d[(i, i)] = pow_mod(params.xi, i as u64 + 1, params.p);
        }
        let s = Self::permutation(&params, params.generator());
        AffineGroup { params, d, s }
    }

    /// `P_a: e_i ↦ e_{a⁻¹ i}` (indices `1..r−1` taken mod `r`).
    fn permutation(params: &AffineParams, a: u64) -> ModMatrix {
        let n = params.dim();
        let ainv = inv_mod(a, params.r).expect("a is a unit mod r");
        let mut m = ModMatrix::zeros(params.p, n, n);
        for i in 1..=params.r - 1 {
            let j = i * ainv % params.r;
            m[(j as usize - 1, i as usize - 1)] = 1;
        }
        m
    }

    pub fn params(&self) -> &AffineParams {
        &self.params
    }

    pub fn d(&self) -> &ModMatrix {
        &self.d
    }

    pub fn s(&self) -> &ModMatrix {
        &self.s
    }

    pub fn order(&self) -> u64 {
        self.params.r * (self.params.r - 1)
    }

    pub fn identity(&self) -> DeltaElement {
        DeltaElement { a: 1, b: 0 }
    }

    pub fn d_element(&self) -> DeltaElement {
        DeltaElement { a: 1, b: 1 }
    }

    pub fn s_element(&self) -> DeltaElement {
        DeltaElement { a: self.params.generator(), b: 0 }
    }

    pub fn mul(&self, x: DeltaElement, y: DeltaElement) -> DeltaElement {
        let r = self.params.r;
        let yinv = inv_mod(y.a, r).expect("unit");
        DeltaElement {
            a: x.a * y.a % r,
            b: (x.b * yinv + y.b) % r,
        }
    }

    pub fn inverse(&self, x: DeltaElement) -> DeltaElement {
        let r = self.params.r;
        // (a, b)(a⁻¹, b') = (1, b·a + b') = identity.
        DeltaElement {
            a: inv_mod(x.a, r).expect("unit"),
            b: (r - x.b * x.a % r) % r,
        }
    }

    pub fn matrix(&self, x: DeltaElement) -> ModMatrix {
        Self::permutation(&self.params, x.a).mul(&self.d.pow(x.b))
    }

    /// All `r(r − 1)` elements.
    pub fn elements(&self) -> Vec<DeltaElement> {
        (1..self.params.r)
            .flat_map(|a| (0..self.params.r).map(move |b| DeltaElement { a, b }))
            .collect()
    }

    /// Order of the matrix group generated by `D` and `S`, by closure.
    pub fn generated_order(&self) -> usize {
        let mut seen: HashSet<ModMatrix> = HashSet::new();
        let id = ModMatrix::identity(self.params.p, self.params.dim());
        let mut queue = VecDeque::from([id.clone()]);
        seen.insert(id);
        while let Some(m) = queue.pop_front() {
            for g in [&self.d, &self.s] {
                let next = m.mul(g);
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
        seen.len()
    }
}

/// A subspace of `F_p^n` kept in reduced row echelon form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    p: u64,
    dim: usize,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn new(p: u64, dim: usize) -> Self {
        Subspace {
            p,
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn dimension(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.dim
    }

    fn reduce(&self, v: &[u64]) -> Vec<u64> {
        let mut v: Vec<u64> = v.iter().map(|x| x % self.p).collect();
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let f = v[c];
            if f != 0 {
                for (x, y) in v.iter_mut().zip(row) {
                    *x = (*x + self.p - f * y % self.p) % self.p;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Adds `v`; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[u64]) -> bool {
        assert_eq!(v.len(), self.dim);
        let mut v = self.reduce(v);
        let Some(c) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = inv_mod(v[c], self.p).expect("p is prime");
        v.iter_mut().for_each(|x| *x = *x * inv % self.p);
        for row in &mut self.rows {
            let f = row[c];
            if f != 0 {
                for (x, y) in row.iter_mut().zip(&v) {
                    *x = (*x + self.p - f * y % self.p) % self.p;
                }
            }
        }
        self.rows.push(v);
        self.pivots.push(c);
        true
    }

    /// Closes the subspace under the given linear maps.
    pub fn spin(&mut self, maps: &[&dyn Fn(&[u64]) -> Vec<u64>]) {
        let mut queue: VecDeque<Vec<u64>> = self.rows.iter().cloned().collect();
        while let Some(v) = queue.pop_front() {
            for f in maps {
                let image = f(&v);
                if self.insert(&image) {
                    queue.push_back(image);
                }
            }
        }
    }

    /// `dim(self ∩ other)` via `dim U + dim V − dim(U + V)`.
    pub fn intersection_dimension(&self, other: &Subspace) -> usize {
        let mut sum = self.clone();
        for row in &other.rows {
            sum.insert(row);
        }
        self.dimension() + other.dimension() - sum.dimension()
    }

    /// The subspace spanned by the standard basis vectors with indices in `range`.
    pub fn coordinate(p: u64, dim: usize, range: std::ops::Range<usize>) -> Self {
        let mut s = Self::new(p, dim);
        for i in range {
            let mut v = vec![0; dim];
            v[i] = 1;
            s.insert(&v);
        }
        s
    }
}

/// An element `(w, δ)` of `Γ = W ⋊ AGL₁(r)` with
/// `(w₁, δ₁)(w₂, δ₂) = (w₁ + δ₁·w₂, δ₁δ₂)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GammaElement {
    pub w_part: Vec<Vec<u64>>,
    pub delta_part: DeltaElement,
}

/// `Γ` with its two distinguished generators `D′ = ((e₁, …, e_{r−2}), D)` and
/// `S′ = (0, S)`.
#[derive(Debug, Clone)]
pub struct Gamma {
    delta: AffineGroup,
}

impl Gamma {
    pub fn new(params: AffineParams) -> Self {
        Gamma {
            delta: AffineGroup::new(params),
        }
    }

    pub fn delta(&self) -> &AffineGroup {
        &self.delta
    }

    fn params(&self) -> &AffineParams {
        self.delta.params()
    }

    /// `|Γ| = p^{(r−1)(r−2)} · r(r−1)`.
    pub fn order(&self) -> BigUint {
        let p = self.params();
        BigUint::from(p.p).pow((p.dim() * p.copies()) as u32) * BigUint::from(self.delta.order())
    }

    pub fn identity(&self) -> GammaElement {
        GammaElement {
            w_part: vec![vec![0; self.params().dim()]; self.params().copies()],
            delta_part: self.delta.identity(),
        }
    }

    pub fn d_prime(&self) -> GammaElement {
        let n = self.params().dim();
        let w_part = (0..self.params().copies())
            .map(|i| (0..n).map(|j| u64::from(i == j)).collect())
            .collect();
        GammaElement {
            w_part,
            delta_part: self.delta.d_element(),
        }
    }

    pub fn s_prime(&self) -> GammaElement {
        GammaElement {
            delta_part: self.delta.s_element(),
            ..self.identity()
        }
    }

    /// The element `(w, 1)` of `W`.
    pub fn translation(&self, w_part: Vec<Vec<u64>>) -> GammaElement {
        GammaElement {
            w_part,
            delta_part: self.delta.identity(),
        }
    }

    fn act(&self, delta: DeltaElement, w: &[Vec<u64>]) -> Vec<Vec<u64>> {
        let m = self.delta.matrix(delta);
        w.iter().map(|v| m.apply(v)).collect()
    }

    pub fn mul(&self, x: &GammaElement, y: &GammaElement) -> GammaElement {
        let p = self.params().p;
        let moved = self.act(x.delta_part, &y.w_part);
        GammaElement {
            w_part: x
                .w_part
                .iter()
                .zip(&moved)
                .map(|(a, b)| a.iter().zip(b).map(|(s, t)| (s + t) % p).collect())
                .collect(),
            delta_part: self.delta.mul(x.delta_part, y.delta_part),
        }
    }

    /// `(−δ⁻¹·w, δ⁻¹)`.
    pub fn inverse(&self, x: &GammaElement) -> GammaElement {
        let p = self.params().p;
        let dinv = self.delta.inverse(x.delta_part);
        GammaElement {
            w_part: self
                .act(dinv, &x.w_part)
                .iter()
                .map(|v| v.iter().map(|&c| (p - c) % p).collect())
                .collect(),
            delta_part: dinv,
        }
    }

    pub fn pow(&self, x: &GammaElement, e: i64) -> GammaElement {
        let base = if e < 0 { self.inverse(x) } else { x.clone() };
        (0..e.unsigned_abs()).fold(self.identity(), |acc, _| self.mul(&acc, &base))
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> GammaElement {
        let p = self.params();
        GammaElement {
            w_part: (0..p.copies())
                .map(|_| (0..p.dim()).map(|_| rng.gen_range(0..p.p)).collect())
                .collect(),
            delta_part: DeltaElement {
                a: rng.gen_range(1..p.r),
                b: rng.gen_range(0..p.r),
            },
        }
    }

    /// Flattened `W`-part, copy `i` occupying block `i`.
    pub fn flatten(w_part: &[Vec<u64>]) -> Vec<u64> {
        w_part.concat()
    }

    fn unflatten(&self, v: &[u64]) -> Vec<Vec<u64>> {
        v.chunks(self.params().dim()).map(<[u64]>::to_vec).collect()
    }

    /// `δ` acting diagonally on flattened `W`.
    pub fn act_flat(&self, delta: DeltaElement, v: &[u64]) -> Vec<u64> {
        Self::flatten(&self.act(delta, &self.unflatten(v)))
    }

    /// Closure of `vectors` under `D` and `S` acting on `W`.
    pub fn delta_submodule(&self, vectors: &[Vec<u64>]) -> Subspace {
        let p = self.params();
        let mut s = Subspace::new(p.p, p.dim() * p.copies());
        for v in vectors {
            s.insert(v);
        }
        let d = |v: &[u64]| self.act_flat(self.delta.d_element(), v);
        let sm = |v: &[u64]| self.act_flat(self.delta.s_element(), v);
        s.spin(&[&d, &sm]);
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct IrreducibilityReport {
    pub eigenvalues: Vec<u64>,
    pub distinct_eigenvalues: bool,
    /// Eigenline indices (1-based) visited by powers of `S` starting at line 1.
    pub eigenline_orbit: Vec<usize>,
    pub transitive: bool,
    /// Dimension of the `Δ`-span of each standard basis vector.
    pub spin_dimensions: Vec<usize>,
    pub irreducible: bool,
}

/// Distinct eigenvalues of `D` force every `D`-invariant subspace to be a
/// sum of eigenlines; `S` permutes the eigenlines transitively, so `V` is
/// irreducible. Spinning each basis vector is reported as a direct check.
pub fn irreducibility_certificate(params: &AffineParams) -> IrreducibilityReport {
    let g = AffineGroup::new(*params);
    let n = params.dim();
    let eigenvalues: Vec<u64> = (0..n).map(|i| g.d()[(i, i)]).collect();
    let distinct_eigenvalues = eigenvalues.iter().collect::<HashSet<_>>().len() == n;
    let diagonal = (0..n).all(|i| (0..n).all(|j| i == j || g.d()[(i, j)] == 0));

    let mut orbit = vec![0usize];
    loop {
        let last = *orbit.last().expect("nonempty");
        let mut e = vec![0; n];
        e[last] = 1;
        let image = g.s().apply(&e);
        let next = image.iter().position(|&x| x != 0).expect("permutation matrix");
        if next == orbit[0] {
            break;
        }
        orbit.push(next);
    }
    let transitive = orbit.len() == n;

    let spin_dimensions: Vec<usize> = (0..n)
        .map(|i| {
            let mut s = Subspace::new(params.p, n);
            let mut e = vec![0; n];
            e[i] = 1;
            s.insert(&e);
            let d = |v: &[u64]| g.d().apply(v);
            let sm = |v: &[u64]| g.s().apply(v);
            s.spin(&[&d, &sm]);
            s.dimension()
        })
        .collect();
    IrreducibilityReport {
        eigenvalues,
        distinct_eigenvalues,
        eigenline_orbit: orbit.iter().map(|i| i + 1).collect(),
        transitive,
        irreducible: diagonal
            && distinct_eigenvalues
            && transitive
            && spin_dimensions.iter().all(|&d| d == n),
        spin_dimensions,
    }
}

/// `1 + η + … + η^k ≠ 0` for every `η = ξ^j` (`1 ≤ j ≤ r − 1`) and
/// `1 ≤ k ≤ r − 2`.
pub fn partial_geometric_sums_nonzero(params: &AffineParams) -> bool {
    (1..params.r).all(|j| {
        let eta = pow_mod(params.xi, j, params.p);
        let mut sum = 1;
        let mut power = 1;
        (1..=params.r - 2).all(|_| {
            power = power * eta % params.p;
            sum = (sum + power) % params.p;
            sum != 0
        })
    })
}

/// Solves the Vandermonde system `Σ_i β_i diag(D^i) = e₁` for
/// `i = 0, …, r − 2`, returning the `β_i`.
pub fn vandermonde_coefficients(params: &AffineParams) -> Option<Vec<u64>> {
    let n = params.dim();
    let p = params.p;
    let mut m = ModMatrix::zeros(p, n, n);
    for row in 0..n {
        for col in 0..n {
            m[(row, col)] = pow_mod(params.xi, ((row + 1) * col) as u64, p);
        }
    }
    let inv = m.inverse()?;
    let mut e1 = vec![0; n];
    e1[0] = 1;
    Some(inv.apply(&e1))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TwoGenerationReport {
    /// Generator of `F_r^*` defining `S`.
    pub generator: u64,
    /// `S^l e_{r−1} = e₁`.
    pub l: u64,
    /// `S^l D S^{−l} = D^{r−k}`.
    pub k: u64,
    pub partial_sums_nonzero: bool,
    /// Coefficients `α_i` of `D′^k = ((α_i e_i), D^k)`.
    pub alphas: Vec<u64>,
    pub alphas_nonzero: bool,
    /// `W`-part of `S′^l D′ S′^{−l} D′^k`.
    pub w: Vec<Vec<u64>>,
    pub w_in_w: bool,
    pub e1_only_in_first_entry: bool,
    pub vandermonde_betas: Vec<u64>,
    pub c_is_e11: bool,
    /// `C(w)`: zero outside the first entry.
    pub c_of_w: Vec<Vec<u64>>,
    pub c_of_w_supported_on_first_copy: bool,
    /// Dimension of the `Δ`-span of `C(w)`; equals `r − 1` when it fills
    /// the first copy of `V`.
    pub first_copy_dimension: usize,
    /// Dimension of the `Δ`-span of `w` alone.
    pub span_of_w_dimension: usize,
    /// Dimension of `⟨D′, S′⟩ ∩ W`, computed as the `Δ`-submodule generated
    /// by the values of the defining relators of `AGL₁(r)` at `(D′, S′)`.
    pub generated_w_dimension: usize,
    pub w_dimension: usize,
    /// `dim(⟨D′, S′⟩ ∩ copy_i)` for each copy of `V`.
    pub copy_dimensions: Vec<usize>,
    pub generates: bool,
}

/// Relators of `AGL₁(r) = ⟨d, s | d^r, s^{r−1}, s d s⁻¹ d^{−g}⟩` evaluated at
/// `(D′, S′)`; all lie in `W`.
pub fn relator_values(gamma: &Gamma) -> Vec<GammaElement> {
    let params = gamma.delta().params();
    let (d, s) = (gamma.d_prime(), gamma.s_prime());
    let r = params.r as i64;
    let g = params.generator() as i64;
    let conj = gamma.mul(&gamma.mul(&s, &d), &gamma.inverse(&s));
    vec![
        gamma.pow(&d, r),
        gamma.pow(&s, r - 1),
        gamma.mul(&conj, &gamma.pow(&d, -g)),
    ]
}

pub fn two_generation_certificate(params: &AffineParams) -> TwoGenerationReport {
    let gamma = Gamma::new(*params);
    let delta = gamma.delta();
    let (n, copies, p, r) = (params.dim(), params.copies(), params.p, params.r);
    let s_mat = delta.s();
    let d_mat = delta.d();

    let mut e_last = vec![0; n];
    e_last[n - 1] = 1;
    let mut e1 = vec![0; n];
    e1[0] = 1;
    let l = (1..=r - 2)
        .find(|&l| s_mat.pow(l).apply(&e_last) == e1)
        .unwrap_or(0);
    let s_inv_l = s_mat.inverse().expect("permutation").pow(l);
    let conj = s_mat.pow(l).mul(d_mat).mul(&s_inv_l);
    let k = (1..=r - 2).find(|&k| conj == d_mat.pow(r - k)).unwrap_or(0);

    let (d, s) = (gamma.d_prime(), gamma.s_prime());
    let dk = gamma.pow(&d, k as i64);
    let alphas: Vec<u64> = (0..copies).map(|i| dk.w_part[i][i]).collect();
    let alphas_diagonal = dk
        .w_part
        .iter()
        .enumerate()
        .all(|(i, v)| v.iter().enumerate().all(|(j, &c)| i == j || c == 0));
    let alphas_nonzero = alphas_diagonal && alphas.iter().all(|&a| a != 0);

    let sl = gamma.pow(&s, l as i64);
    let w_elem = gamma.mul(
        &gamma.mul(&gamma.mul(&sl, &d), &gamma.inverse(&sl)),
        &dk,
    );
    let w_in_w = w_elem.delta_part == delta.identity();
    let w = w_elem.w_part.clone();
    let e1_only_in_first_entry = w[0][0] != 0 && w.iter().skip(1).all(|v| v[0] == 0);

    let betas = vandermonde_coefficients(params);
    let c = betas.as_ref().map(|b| {
        b.iter().enumerate().fold(ModMatrix::zeros(p, n, n), |acc, (i, &beta)| {
            acc.add(&d_mat.pow(i as u64).scale(beta))
        })
    });
    let mut e11 = ModMatrix::zeros(p, n, n);
    e11[(0, 0)] = 1;
    let c_is_e11 = c.as_ref() == Some(&e11);
    let c_of_w: Vec<Vec<u64>> = match &c {
        Some(c) => w.iter().map(|v| c.apply(v)).collect(),
        None => vec![vec![0; n]; copies],
    };
    let c_of_w_supported_on_first_copy =
        c_of_w[0].iter().any(|&x| x != 0) && c_of_w.iter().skip(1).all(|v| v.iter().all(|&x| x == 0));

    let first_copy = gamma.delta_submodule(&[Gamma::flatten(&c_of_w)]);
    let span_of_w = gamma.delta_submodule(&[Gamma::flatten(&w)]);
    let relators: Vec<Vec<u64>> = relator_values(&gamma)
        .iter()
        .filter(|x| x.delta_part == delta.identity())
        .map(|x| Gamma::flatten(&x.w_part))
        .collect();
    let relators_in_w = relators.len() == 3;
    let generated = gamma.delta_submodule(&relators);
    let copy_dimensions: Vec<usize> = (0..copies)
        .map(|i| generated.intersection_dimension(&Subspace::coordinate(p, n * copies, i * n..(i + 1) * n)))
        .collect();
    let w_dimension = n * copies;
    let generates = relators_in_w
        && generated.contains(&Gamma::flatten(&w))
        && generated.contains(&Gamma::flatten(&c_of_w))
        && generated.dimension() == w_dimension;

    TwoGenerationReport {
        generator: params.generator(),
        l,
        k,
        partial_sums_nonzero: partial_geometric_sums_nonzero(params),
        alphas,
        alphas_nonzero,
        w,
        w_in_w,
        e1_only_in_first_entry,
        vandermonde_betas: betas.unwrap_or_default(),
        c_is_e11,
        c_of_w,
        c_of_w_supported_on_first_copy,
        first_copy_dimension: first_copy.dimension(),
        span_of_w_dimension: span_of_w.dimension(),
        generated_w_dimension: generated.dimension(),
        w_dimension,
        copy_dimensions,
        generates,
    }
}

impl TwoGenerationReport {
    pub fn passed(&self, params: &AffineParams) -> bool {
        let n = params.dim();
        self.l != 0
            && self.k != 0
            && self.partial_sums_nonzero
            && self.alphas_nonzero
            && self.w_in_w
            && self.e1_only_in_first_entry
            && self.c_is_e11
            && self.c_of_w_supported_on_first_copy
            && self.first_copy_dimension == n
            && self.copy_dimensions.iter().all(|&d| d == n)
            && self.generates
    }
}
