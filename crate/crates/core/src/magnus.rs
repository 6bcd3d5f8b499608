//! Fox calculus and the Magnus embedding.
//!
//! Fox coordinates use the right convention: every `w ∈ F_n` satisfies
//! `w − 1 = Σ_i (x_i − 1)·w_i` in `ℤ[F_n]` for unique `w_i`. Writing
//! `t = (w_1, …, w_n)`, the map `w ↦ (w, t)` is a homomorphism into the
//! block lower-triangular group with product
//! `(g₁, t₁)·(g₂, t₂) = (g₁g₂, t₁·g₂ + t₂)`. Reducing coefficients mod `m` and
//! group elements through `F_n → (ℤ/m)^n` gives [`PhiElement`].
//!
//! For an endomorphism `h`, `J(h)` has entry `(i, j)` equal to the `i`-th Fox
//! coordinate of `h(x_j)`, and `J(α ∘ β) = J(α) · α(J(β))` with `α` applied
//! entrywise.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::homs::{FreeHom, HomError, VerifiedAut};
use crate::modmat::ModMatrix;
use crate::words::{same_alphabet, Alphabet, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MagnusError {
    #[error(transparent)]
    Hom(#[from] HomError),
    #[error("bottom row does not satisfy sum (x_i - 1) t_i = g - 1")]
    Inconsistent,
    #[error("parameters differ: (m, n) = ({0}, {1}) vs ({2}, {3})")]
    Mismatch(u64, usize, u64, usize),
    #[error("expected {expected} coordinates, got {got}")]
    Length { expected: usize, got: usize },
    #[error("map is not an endomorphism")]
    NotEndomorphism,
    #[error("modulus must be at least 2")]
    Modulus,
}

/// Operations shared by the integral and finite group rings.
pub trait RingElement: Clone + PartialEq {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn is_zero(&self) -> bool;
}

/// An element of `ℤ[F_n]`: finitely many reduced words with nonzero
/// integer coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct FreeGroupRingElement {
    alphabet: Arc<Alphabet>,
    terms: BTreeMap<Word, i64>,
}

impl FreeGroupRingElement {
    pub fn zero(alphabet: &Arc<Alphabet>) -> Self {
        FreeGroupRingElement {
            alphabet: Arc::clone(alphabet),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(alphabet: &Arc<Alphabet>) -> Self {
        Self::from_word(&Word::identity(alphabet))
    }

    pub fn from_word(w: &Word) -> Self {
        let mut e = Self::zero(w.alphabet());
        e.add_term(w.clone(), 1);
        e
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn terms(&self) -> &BTreeMap<Word, i64> {
        &self.terms
    }

    pub fn coefficient(&self, w: &Word) -> i64 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    pub fn add_term(&mut self, w: Word, c: i64) {
        assert!(same_alphabet(&self.alphabet, w.alphabet()), "alphabet mismatch");
        match self.terms.entry(w) {
            Entry::Vacant(v) => {
                if c != 0 {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if *o.get() == 0 {
                    o.remove();
                }
            }
        }
    }

    pub fn neg(&self) -> Self {
        FreeGroupRingElement {
            alphabet: Arc::clone(&self.alphabet),
            terms: self.terms.iter().map(|(w, &c)| (w.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// `self · g` for a group element `g`.
    pub fn mul_word(&self, g: &Word) -> Self {
        FreeGroupRingElement {
            alphabet: Arc::clone(&self.alphabet),
            terms: self.terms.iter().map(|(w, &c)| (w * g, c)).collect(),
        }
    }

    /// `g · self`.
    pub fn word_mul(&self, g: &Word) -> Self {
        FreeGroupRingElement {
            alphabet: Arc::clone(&self.alphabet),
            terms: self.terms.iter().map(|(w, &c)| (g * w, c)).collect(),
        }
    }

    /// The ring map induced by a homomorphism of free groups.
    pub fn map(&self, h: &FreeHom) -> Result<Self, HomError> {
        let mut out = Self::zero(h.codomain());
        for (w, &c) in &self.terms {
            out.add_term(h.apply(w)?, c);
        }
        Ok(out)
    }

    /// Image in `ℤ/m[(ℤ/m)^n]`.
    pub fn reduce(&self, modulus: u64) -> FiniteGroupRingElement {
        let mut out = FiniteGroupRingElement::zero(modulus, self.alphabet.rank());
        for (w, &c) in &self.terms {
            let key = out.encode_signed(&w.exponent_sums());
            out.add_term(key, c.rem_euclid(modulus as i64) as u64);
        }
        out
    }
}

impl RingElement for FreeGroupRingElement {
    fn zero_like(&self) -> Self {
        Self::zero(&self.alphabet)
    }

    fn one_like(&self) -> Self {
        Self::one(&self.alphabet)
    }

    fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, &c) in &other.terms {
            out.add_term(w.clone(), c);
        }
        out
    }

    fn mul(&self, other: &Self) -> Self {
        let mut out = self.zero_like();
        for (u, &a) in &self.terms {
            for (v, &b) in &other.terms {
                out.add_term(u * v, a * b);
            }
        }
        out
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl fmt::Display for FreeGroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (w, &c)) in self.terms.iter().enumerate() {
            let sign = if c < 0 { "-" } else if k > 0 { "+" } else { "" };
            if k > 0 {
                write!(f, " {sign} ")?;
            } else {
                write!(f, "{sign}")?;
            }
            match (c.abs(), w.is_identity()) {
                (1, _) => write!(f, "{w}")?,
                (a, true) => write!(f, "{a}")?,
                (a, false) => write!(f, "{a}*({w})")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FreeGroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// An element of `ℤ/m[(ℤ/m)^n]`. Group elements are stored as mixed-radix
/// keys `Σ e_i m^i`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteGroupRingElement {
    modulus: u64,
    rank: usize,
    terms: BTreeMap<u64, u64>,
}

impl FiniteGroupRingElement {
    pub fn zero(modulus: u64, rank: usize) -> Self {
        assert!(modulus >= 2, "modulus must be at least 2");
        assert!(
            (modulus as f64).powi(rank as i32) < 2f64.powi(63),
            "(Z/m)^n too large to index"
        );
        FiniteGroupRingElement {
            modulus,
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(modulus: u64, rank: usize) -> Self {
        Self::group_element(modulus, &vec![0; rank])
    }

    /// The basis element of `g ∈ (ℤ/m)^n`.
    pub fn group_element(modulus: u64, g: &[u64]) -> Self {
        let mut e = Self::zero(modulus, g.len());
        let key = e.encode(g);
        e.add_term(key, 1);
        e
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    fn encode(&self, g: &[u64]) -> u64 {
        g.iter().rev().fold(0, |acc, &e| acc * self.modulus + e % self.modulus)
    }

    fn encode_signed(&self, g: &[i64]) -> u64 {
        let m = self.modulus as i64;
        g.iter().rev().fold(0, |acc, &e| acc * self.modulus + e.rem_euclid(m) as u64)
    }

    fn decode(&self, mut key: u64) -> Vec<u64> {
        (0..self.rank)
            .map(|_| {
                let e = key % self.modulus;
                key /= self.modulus;
                e
            })
            .collect()
    }

    fn add_key(&self, a: u64, b: u64) -> u64 {
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.rank {
            out += ((a % self.modulus + b % self.modulus) % self.modulus) * place;
            a /= self.modulus;
            b /= self.modulus;
            place *= self.modulus;
        }
        out
    }

    fn add_term(&mut self, key: u64, c: u64) {
        let c = c % self.modulus;
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(key).or_insert(0);
        *entry = (*entry + c) % self.modulus;
        if *entry == 0 {
            self.terms.remove(&key);
        }
    }

    /// `(group element, coefficient)` pairs in key order.
    pub fn terms(&self) -> Vec<(Vec<u64>, u64)> {
        self.terms.iter().map(|(&k, &c)| (self.decode(k), c)).collect()
    }

    pub fn coefficient(&self, g: &[u64]) -> u64 {
        self.terms.get(&self.encode(g)).copied().unwrap_or(0)
    }

    pub fn neg(&self) -> Self {
        let mut out = self.zero_like();
        for (&k, &c) in &self.terms {
            out.add_term(k, self.modulus - c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: u64) -> Self {
        let mut out = self.zero_like();
        for (&k, &a) in &self.terms {
            out.add_term(k, crate::modmat::mul_mod(a, c, self.modulus));
        }
        out
    }

    /// Translation by a group element.
    pub fn mul_group(&self, g: &[u64]) -> Self {
        let gk = self.encode(g);
        let mut out = self.zero_like();
        for (&k, &c) in &self.terms {
            out.add_term(self.add_key(k, gk), c);
        }
        out
    }

    /// Ring automorphism induced by a linear map of `(ℤ/m)^n` (matrix acting
    /// on column vectors).
    pub fn map_group(&self, a: &ModMatrix) -> Self {
        let mut out = self.zero_like();
        for (&k, &c) in &self.terms {
            let g = a.apply(&self.decode(k));
            out.add_term(self.encode(&g), c);
        }
        out
    }

    fn check(&self, other: &Self) {
        assert_eq!(
            (self.modulus, self.rank),
            (other.modulus, other.rank),
            "group ring parameter mismatch"
        );
    }
}

impl RingElement for FiniteGroupRingElement {
    fn zero_like(&self) -> Self {
        Self::zero(self.modulus, self.rank)
    }

    fn one_like(&self) -> Self {
        Self::one(self.modulus, self.rank)
    }

    fn add(&self, other: &Self) -> Self {
        self.check(other);
        let mut out = self.clone();
        for (&k, &c) in &other.terms {
            out.add_term(k, c);
        }
        out
    }

    fn mul(&self, other: &Self) -> Self {
        self.check(other);
        let mut out = self.zero_like();
        for (&a, &c) in &self.terms {
            for (&b, &d) in &other.terms {
                out.add_term(self.add_key(a, b), crate::modmat::mul_mod(c, d, self.modulus));
            }
        }
        out
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl fmt::Display for FiniteGroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms()
            .iter()
            .map(|(g, c)| {
                let g: Vec<String> = g.iter().map(u64::to_string).collect();
                format!("{c}*[{}]", g.join(","))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for FiniteGroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Fox coordinates of `w` in `ℤ[F_n]`, built letter by letter:
/// `(u x_i)_j = u_j x_i + δ_ij` and `(u x_i⁻¹)_j = u_j x_i⁻¹ − δ_ij x_i⁻¹`.
pub fn fox_coordinates(w: &Word) -> Vec<FreeGroupRingElement> {
    let alphabet = w.alphabet();
    let mut coords = vec![FreeGroupRingElement::zero(alphabet); alphabet.rank()];
    for l in w.letters() {
        let step = Word::from_letters(alphabet, [l]);
        for c in coords.iter_mut() {
            *c = c.mul_word(&step);
        }
        if l.inverse {
            coords[l.generator].add_term(step, -1);
        } else {
            coords[l.generator].add_term(Word::identity(alphabet), 1);
        }
    }
    coords
}

/// `Σ (x_i − 1)·coords_i`.
pub fn fox_sum(alphabet: &Arc<Alphabet>, coords: &[FreeGroupRingElement]) -> FreeGroupRingElement {
    let mut out = FreeGroupRingElement::zero(alphabet);
    for (i, c) in coords.iter().enumerate() {
        out = out.add(&c.word_mul(&Word::generator(alphabet, i)).sub(c));
    }
    out
}

/// Does `Σ (x_i − 1)·coords_i = w − 1` hold exactly?
pub fn fox_identity_holds(w: &Word, coords: &[FreeGroupRingElement]) -> bool {
    let alphabet = w.alphabet();
    let mut target = FreeGroupRingElement::from_word(w);
    target.add_term(Word::identity(alphabet), -1);
    coords.len() == alphabet.rank() && fox_sum(alphabet, coords) == target
}

/// Fox coordinates computed directly in `ℤ/m[(ℤ/m)^n]`.
pub fn fox_coordinates_mod(w: &Word, modulus: u64) -> Vec<FiniteGroupRingElement> {
    let n = w.alphabet().rank();
    let mut coords = vec![FiniteGroupRingElement::zero(modulus, n); n];
    let unit = |g: usize, inverse: bool| -> Vec<u64> {
        (0..n)
            .map(|k| match (k == g, inverse) {
                (false, _) => 0,
                (true, false) => 1,
                (true, true) => modulus - 1,
            })
            .collect()
    };
    for l in w.letters() {
        let step = unit(l.generator, l.inverse);
        for c in coords.iter_mut() {
            *c = c.mul_group(&step);
        }
        let delta = if l.inverse {
            FiniteGroupRingElement::group_element(modulus, &step).neg()
        } else {
            FiniteGroupRingElement::one(modulus, n)
        };
        coords[l.generator] = coords[l.generator].add(&delta);
    }
    coords
}

/// `(g, t)` with `g ∈ (ℤ/m)^n` and `t ∈ ℤ/m[(ℤ/m)^n]^n` satisfying
/// `Σ (x_i − 1)·t_i = g − 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PhiElement {
    modulus: u64,
    top: Vec<u64>,
    bottom: Vec<FiniteGroupRingElement>,
}

impl PhiElement {
    pub fn new(modulus: u64, top: Vec<u64>, bottom: Vec<FiniteGroupRingElement>) -> Result<Self, MagnusError> {
        if modulus < 2 {
            return Err(MagnusError::Modulus);
        }
        let n = top.len();
        if bottom.len() != n {
            return Err(MagnusError::Length { expected: n, got: bottom.len() });
        }
        if let Some(b) = bottom.iter().find(|b| b.modulus != modulus || b.rank != n) {
            return Err(MagnusError::Mismatch(modulus, n, b.modulus, b.rank));
        }
        let top: Vec<u64> = top.iter().map(|&e| e % modulus).collect();
        let mut lhs = FiniteGroupRingElement::zero(modulus, n);
        for (i, t) in bottom.iter().enumerate() {
            let mut xi = vec![0; n];
            xi[i] = 1;
            lhs = lhs.add(&t.mul_group(&xi).sub(t));
        }
        let rhs = FiniteGroupRingElement::group_element(modulus, &top)
            .sub(&FiniteGroupRingElement::one(modulus, n));
        if lhs != rhs {
            return Err(MagnusError::Inconsistent);
        }
        Ok(PhiElement { modulus, top, bottom })
    }

    pub fn identity(modulus: u64, rank: usize) -> Self {
        Self::new(modulus, vec![0; rank], vec![FiniteGroupRingElement::zero(modulus, rank); rank])
            .expect("identity is consistent")
    }

    /// The image of `w` in `Φ_{n,m}`.
    pub fn magnus_image(w: &Word, modulus: u64) -> Result<Self, MagnusError> {
        if modulus < 2 {
            return Err(MagnusError::Modulus);
        }
        let m = modulus as i64;
        let top = w.exponent_sums().iter().map(|&e| e.rem_euclid(m) as u64).collect();
        Self::new(modulus, top, fox_coordinates_mod(w, modulus))
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn rank(&self) -> usize {
        self.top.len()
    }

    pub fn top(&self) -> &[u64] {
        &self.top
    }

    pub fn bottom(&self) -> &[FiniteGroupRingElement] {
        &self.bottom
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.modulus, self.rank())
    }

    fn check(&self, other: &Self) -> Result<(), MagnusError> {
        if self.modulus != other.modulus || self.rank() != other.rank() {
            return Err(MagnusError::Mismatch(self.modulus, self.rank(), other.modulus, other.rank()));
        }
        Ok(())
    }

    /// `(g₁, t₁)·(g₂, t₂) = (g₁g₂, t₁·g₂ + t₂)`.
    pub fn mul(&self, other: &Self) -> Result<Self, MagnusError> {
        self.check(other)?;
        let top = self
            .top
            .iter()
            .zip(&other.top)
            .map(|(a, b)| (a + b) % self.modulus)
            .collect();
        let bottom = self
            .bottom
            .iter()
            .zip(&other.bottom)
            .map(|(t1, t2)| t1.mul_group(&other.top).add(t2))
            .collect();
        Self::new(self.modulus, top, bottom)
    }

    /// `(g⁻¹, −t·g⁻¹)`.
    pub fn inverse(&self) -> Self {
        let ginv: Vec<u64> = self.top.iter().map(|&e| (self.modulus - e) % self.modulus).collect();
        let bottom = self.bottom.iter().map(|t| t.mul_group(&ginv).neg()).collect();
        Self::new(self.modulus, ginv, bottom).expect("inverse is consistent")
    }
}

impl fmt::Debug for PhiElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PhiElement")
            .field("modulus", &self.modulus)
            .field("top", &self.top)
            .field("bottom", &self.bottom)
            .finish()
    }
}

/// A square matrix over a group ring.
#[derive(Clone, PartialEq)]
pub struct RingMatrix<T> {
    entries: Vec<Vec<T>>,
}

impl<T: RingElement> RingMatrix<T> {
    pub fn from_entries(entries: Vec<Vec<T>>) -> Self {
        let n = entries.len();
        assert!(n > 0 && entries.iter().all(|r| r.len() == n), "square matrix expected");
        RingMatrix { entries }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &T {
        &self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<T>] {
        &self.entries
    }

    pub fn identity_like(&self) -> Self {
        let zero = self.entries[0][0].zero_like();
        let one = zero.one_like();
        let n = self.dim();
        RingMatrix {
            entries: (0..n)
                .map(|i| (0..n).map(|j| if i == j { one.clone() } else { zero.clone() }).collect())
                .collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == self.identity_like()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.dim();
        assert_eq!(n, other.dim());
        let zero = self.entries[0][0].zero_like();
        let entries = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        (0..n).fold(zero.clone(), |acc, k| {
                            acc.add(&self.entries[i][k].mul(&other.entries[k][j]))
                        })
                    })
                    .collect()
            })
            .collect();
        RingMatrix { entries }
    }

    /// Applies a ring map to every entry.
    pub fn map<U: RingElement>(&self, f: impl Fn(&T) -> U) -> RingMatrix<U> {
        RingMatrix {
            entries: self.entries.iter().map(|r| r.iter().map(&f).collect()).collect(),
        }
    }
}

impl<T: fmt::Display> fmt::Display for RingMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.entries.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            write!(f, "[{}]", cells.join(" | "))?;
        }
        Ok(())
    }
}

impl<T: fmt::Display> fmt::Debug for RingMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn check_endo(h: &FreeHom) -> Result<(), MagnusError> {
    if h.is_endomorphism() {
        Ok(())
    } else {
        Err(MagnusError::NotEndomorphism)
    }
}

/// `J(h)` over `ℤ[F_n]`: entry `(i, j)` is the `i`-th Fox coordinate of `h(x_j)`.
pub fn j_matrix(h: &FreeHom) -> Result<RingMatrix<FreeGroupRingElement>, MagnusError> {
    check_endo(h)?;
    let columns: Vec<Vec<FreeGroupRingElement>> = h.images().iter().map(fox_coordinates).collect();
    let n = columns.len();
    Ok(RingMatrix::from_entries(
        (0..n).map(|i| (0..n).map(|j| columns[j][i].clone()).collect()).collect(),
    ))
}

/// `J_m(h)` over `ℤ/m[(ℤ/m)^n]`.
pub fn j_matrix_mod(h: &FreeHom, modulus: u64) -> Result<RingMatrix<FiniteGroupRingElement>, MagnusError> {
    check_endo(h)?;
    if modulus < 2 {
        return Err(MagnusError::Modulus);
    }
    let columns: Vec<Vec<FiniteGroupRingElement>> =
        h.images().iter().map(|w| fox_coordinates_mod(w, modulus)).collect();
    let n = columns.len();
    Ok(RingMatrix::from_entries(
        (0..n).map(|i| (0..n).map(|j| columns[j][i].clone()).collect()).collect(),
    ))
}

/// Abelianization of `h` reduced mod `m`.
pub fn abelianization_mod(h: &FreeHom, modulus: u64) -> Result<ModMatrix, MagnusError> {
    let ab = h.abelianization()?;
    Ok(ModMatrix::from_rows(modulus, &ab.to_rows()))
}

/// Both sides of `J(α ∘ β) = J(α) · α(J(β))` over `ℤ[F_n]`.
pub fn composition_law(
    alpha: &FreeHom,
    beta: &FreeHom,
) -> Result<(RingMatrix<FreeGroupRingElement>, RingMatrix<FreeGroupRingElement>), MagnusError> {
    let lhs = j_matrix(&alpha.compose(beta)?)?;
    let twisted = j_matrix(beta)?.map(|e| e.map(alpha).expect("endomorphism"));
    Ok((lhs, j_matrix(alpha)?.mul(&twisted)))
}

/// Both sides of `J_m(α ∘ β) = J_m(α) · α(J_m(β))`, `α` acting through its
/// abelianization mod `m`.
pub fn composition_law_mod(
    alpha: &FreeHom,
    beta: &FreeHom,
    modulus: u64,
) -> Result<(RingMatrix<FiniteGroupRingElement>, RingMatrix<FiniteGroupRingElement>), MagnusError> {
    let lhs = j_matrix_mod(&alpha.compose(beta)?, modulus)?;
    let ab = abelianization_mod(alpha, modulus)?;
    let twisted = j_matrix_mod(beta, modulus)?.map(|e| e.map_group(&ab));
    Ok((lhs, j_matrix_mod(alpha, modulus)?.mul(&twisted)))
}

/// Does `σ` act trivially on `(ℤ/m)^n`?
pub fn acts_trivially_mod(aut: &VerifiedAut, modulus: u64) -> Result<bool, MagnusError> {
    Ok(abelianization_mod(aut.forward(), modulus)?.is_identity())
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct KaReport {
    pub elements: usize,
    pub pairs: usize,
    /// Indices of inputs whose abelianization is not the identity mod `m`.
    pub precondition_violations: Vec<usize>,
    pub failures: Vec<String>,
}

impl KaReport {
    pub fn passed(&self) -> bool {
        self.precondition_violations.is_empty() && self.failures.is_empty()
    }
}

/// For automorphisms acting trivially mod `m`, checks that `J_m` is
/// multiplicative on all ordered pairs and that `J_m(σ⁻¹)` is a two-sided
/// inverse of `J_m(σ)`.
pub fn ka_check(auts: &[VerifiedAut], modulus: u64) -> Result<KaReport, MagnusError> {
    let mut report = KaReport::default();
    let mut members = Vec::new();
    for (k, a) in auts.iter().enumerate() {
        if acts_trivially_mod(a, modulus)? {
            members.push(a);
        } else {
            report.precondition_violations.push(k);
        }
    }
    report.elements = members.len();
    let js = members
        .iter()
        .map(|a| j_matrix_mod(a.forward(), modulus))
        .collect::<Result<Vec<_>, _>>()?;
    for (k, (a, j)) in members.iter().zip(&js).enumerate() {
        let jinv = j_matrix_mod(a.backward(), modulus)?;
        if !j.mul(&jinv).is_identity() || !jinv.mul(j).is_identity() {
            report.failures.push(format!("element {k}: J_m(s) J_m(s^-1) != I"));
        }
    }
    for (a, (sa, ja)) in members.iter().zip(&js).enumerate() {
        for (b, (sb, jb)) in members.iter().zip(&js).enumerate() {
            report.pairs += 1;
            let lhs = j_matrix_mod(sa.compose(sb)?.forward(), modulus)?;
            if lhs != ja.mul(jb) {
                report.failures.push(format!("pair ({a}, {b}): J_m(st) != J_m(s) J_m(t)"));
            }
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LocalCommutatorReport {
    pub pairs: usize,
    pub failures: Vec<String>,
}

impl LocalCommutatorReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Every matrix of the given shape with entries in `p^s·ℤ/p^k`.
pub fn all_ideal_matrices(p: u64, k: u32, s: u32, dim: usize) -> Vec<ModMatrix> {
    let modulus = p.pow(k);
    let step = p.pow(s.min(k));
    let choices = modulus / step;
    let cells = dim * dim;
    let total = choices.pow(cells as u32);
    (0..total)
        .map(|mut code| {
            let mut m = ModMatrix::zeros(modulus, dim, dim);
            for c in 0..cells {
                m[(c / dim, c % dim)] = (code % choices) * step;
                code /= choices;
            }
            m
        })
        .collect()
}

/// For `A` with entries in `S = (p^s)` and `B` in `T = (p^t)` over
/// `ℤ/p^k`, checks `[I + A, I + B] ≡ I mod p^{s+t}`.
pub fn local_commutator_check(
    p: u64,
    k: u32,
    s: u32,
    t: u32,
    a_samples: &[ModMatrix],
    b_samples: &[ModMatrix],
) -> LocalCommutatorReport {
    let modulus = p.pow(k);
    let target = p.pow((s + t).min(k));
    let mut report = LocalCommutatorReport::default();
    for (i, a) in a_samples.iter().enumerate() {
        let ia = ModMatrix::identity(modulus, a.rows()).add(a);
        for (j, b) in b_samples.iter().enumerate() {
            report.pairs += 1;
            let ib = ModMatrix::identity(modulus, b.rows()).add(b);
            match ModMatrix::commutator(&ia, &ib) {
                Some(c) if c.reduce(target).is_identity() => {}
                Some(_) => report.failures.push(format!("({i}, {j}): commutator not trivial mod {target}")),
                None => report.failures.push(format!("({i}, {j}): I + A or I + B not invertible")),
            }
        }
    }
    report
}

/// Pairwise commutation of `I + p^j·A_i` in `GL(ℤ/p^{j+1})`: the kernel of
/// reduction mod `p^j` is abelian on the samples.
pub fn layer_abelian_check(p: u64, j: u32, samples: &[ModMatrix]) -> LocalCommutatorReport {
    let modulus = p.pow(j + 1);
    let lift = |a: &ModMatrix| ModMatrix::identity(modulus, a.rows()).add(&a.reduce(modulus).scale(p.pow(j)));
    let lifted: Vec<ModMatrix> = samples.iter().map(lift).collect();
    let mut report = LocalCommutatorReport::default();
    for (a, x) in lifted.iter().enumerate() {
        for (b, y) in lifted.iter().enumerate().skip(a + 1) {
            report.pairs += 1;
            if x.mul(y) != y.mul(x) {
                report.failures.push(format!("({a}, {b}) do not commute"));
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homs::builtin::{alpha2, beta2, rank2, rank3};

    fn w(text: &str, a: &Arc<Alphabet>) -> Word {
        Word::parse(text, a).unwrap()
    }

    #[test]
    fn fox_of_generators() {
        let a = rank2();
        let c = fox_coordinates(&w("x", &a));
        assert_eq!(c[0], FreeGroupRingElement::one(&a));
        assert!(c[1].is_zero());
        let c = fox_coordinates(&w("x^-1", &a));
        assert_eq!(c[0], FreeGroupRingElement::from_word(&w("x^-1", &a)).neg());
        assert!(fox_coordinates(&Word::identity(&a)).iter().all(RingElement::is_zero));
    }

    #[test]
    fn fox_identity_on_examples() {
        let a = rank3();
        for t in ["x y z x^-1", "x^3 y^-2 z", "y x y^-1 x^-1", "1"] {
            let v = w(t, &a);
            assert!(fox_identity_holds(&v, &fox_coordinates(&v)), "{t}");
        }
    }

    #[test]
    fn reduced_fox_matches_direct() {
        let a = rank2();
        let v = w("x y^-2 x^3 y x^-1", &a);
        let free: Vec<_> = fox_coordinates(&v).iter().map(|c| c.reduce(3)).collect();
        assert_eq!(free, fox_coordinates_mod(&v, 3));
    }

    #[test]
    fn magnus_of_generator_and_identity() {
        let a = rank2();
        let x = PhiElement::magnus_image(&w("x", &a), 3).unwrap();
        assert_eq!(x.top(), [1, 0]);
        assert_eq!(x.bottom()[0], FiniteGroupRingElement::one(3, 2));
        assert!(x.bottom()[1].is_zero());
        assert!(PhiElement::magnus_image(&Word::identity(&a), 3).unwrap().is_identity());
    }

    #[test]
    fn magnus_multiplicative() {
        let a = rank2();
        let x = PhiElement::magnus_image(&w("x", &a), 3).unwrap();
        let y = PhiElement::magnus_image(&w("y", &a), 3).unwrap();
        assert_eq!(x.mul(&y).unwrap(), PhiElement::magnus_image(&w("x y", &a), 3).unwrap());
        assert!(x.mul(&x.inverse()).unwrap().is_identity());
        let c = w("x^2 y x^-2 y^-1", &a);
        let factors = ["x^2", "y", "x^-2", "y^-1"]
            .iter()
            .map(|t| PhiElement::magnus_image(&w(t, &a), 2).unwrap())
            .reduce(|p, q| p.mul(&q).unwrap())
            .unwrap();
        assert_eq!(factors, PhiElement::magnus_image(&c, 2).unwrap());
    }

    #[test]
    fn magnus_kernel_elements() {
        let a = rank2();
        for m in [2u64, 3, 4] {
            let xm = w("x", &a).pow(m as i64);
            let ym = w("y", &a).pow(m as i64);
            assert!(PhiElement::magnus_image(&xm.pow(m as i64), m).unwrap().is_identity());
            let c = Word::commutator(&xm, &ym).unwrap();
            assert!(PhiElement::magnus_image(&c, m).unwrap().is_identity());
            assert!(!PhiElement::magnus_image(&xm, m).unwrap().is_identity());
        }
    }

    #[test]
    fn inconsistent_phi_rejected() {
        let bottom = vec![FiniteGroupRingElement::one(2, 2), FiniteGroupRingElement::zero(2, 2)];
        assert_eq!(PhiElement::new(2, vec![0, 1], bottom), Err(MagnusError::Inconsistent));
    }

    #[test]
    fn j_of_identity() {
        let id = FreeHom::identity(&rank2());
        assert!(j_matrix(&id).unwrap().is_identity());
        assert!(j_matrix_mod(&id, 3).unwrap().is_identity());
    }

    #[test]
    fn j_composition_law_for_alpha_beta() {
        let (a, b) = (alpha2(), beta2());
        let (lhs, rhs) = composition_law(a.forward(), b.forward()).unwrap();
        assert_eq!(lhs, rhs);
        let (lhs, rhs) = composition_law(b.forward(), a.forward()).unwrap();
        assert_eq!(lhs, rhs);
        for m in [2, 3, 5] {
            let (lhs, rhs) = composition_law_mod(a.forward(), b.forward(), m).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn j_of_inner_by_x() {
        let a = rank2();
        let inner = VerifiedAut::inner(&w("x", &a));
        let j = j_matrix_mod(inner.forward(), 2).unwrap();
        let jinv = j_matrix_mod(inner.backward(), 2).unwrap();
        assert!(j.mul(&jinv).is_identity());
        let (lhs, rhs) = composition_law_mod(inner.forward(), inner.backward(), 2).unwrap();
        assert_eq!(lhs, rhs);
        assert!(lhs.is_identity());
    }

    #[test]
    fn ka_inner_rank3() {
        let a = rank3();
        let x = VerifiedAut::inner(&w("x", &a));
        let report = ka_check(&[x.clone(), x.inverse()], 2).unwrap();
        assert!(report.passed(), "{report:?}");
        assert_eq!(report.pairs, 4);
        let bad = ka_check(&[alpha2()], 3).unwrap();
        assert_eq!(bad.precondition_violations, vec![0]);
    }

    #[test]
    fn local_commutator_small() {
        let zero = ModMatrix::zeros(9, 3, 3);
        let b = ModMatrix::from_rows(9, &[vec![3, 0, 6], vec![0, 3, 0], vec![3, 3, 3]]);
        let r = local_commutator_check(3, 2, 1, 1, &[zero], &[b]);
        assert!(r.passed());
        assert_eq!(all_ideal_matrices(2, 3, 2, 3).len(), 512);
    }
}
