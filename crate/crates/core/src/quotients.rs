//! Finite-index subgroups of free groups presented as point stabilizers of
//! finite permutation actions, with Schreier transversals and
//! Reidemeister–Schreier rewriting.
//!
//! Actions are on the right: the point `p·w` is obtained by applying the
//! letters of `w` from left to right. The subgroup attached to a
//! [`FiniteQuotient`] is the stabilizer of point 0; right cosets `H·g`
//! correspond to the points `0·g` of the orbit of 0.

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::homs::{FreeHom, HomError};
use crate::words::{check_alphabet, Alphabet, Letter, Word, WordError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuotientError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Hom(#[from] HomError),
    #[error("invalid quotient: {0}")]
    Invalid(String),
    #[error("word {0} is not in the subgroup")]
    NotInSubgroup(String),
    #[error("expected {expected} images (one per Schreier generator), got {got}")]
    ImageCount { expected: usize, got: usize },
    #[error("orbit exceeds the cap of {cap} points")]
    TooLarge { cap: usize },
    #[error("json: {0}")]
    Json(String),
}

/// A homomorphism from a free group to a finite permutation group on
/// `{0, …, target_size − 1}`, given by one permutation per generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteQuotient {
    alphabet: Arc<Alphabet>,
    target_size: usize,
    images: Vec<Vec<usize>>,
    inverses: Vec<Vec<usize>>,
}

/// On-disk form: `{"alphabet": [...], "targetSize": n, "permutations": [[...], ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct FiniteQuotientFile {
    pub alphabet: Vec<String>,
    pub target_size: usize,
    pub permutations: Vec<Vec<usize>>,
}

impl FiniteQuotient {
    pub fn new(alphabet: &Arc<Alphabet>, images: Vec<Vec<usize>>) -> Result<Self, QuotientError> {
        if images.len() != alphabet.rank() {
            return Err(QuotientError::Invalid(format!(
                "{} permutations for {} generators",
                images.len(),
                alphabet.rank()
            )));
        }
        let target_size = images.first().map_or(0, Vec::len);
        if target_size == 0 {
            return Err(QuotientError::Invalid("target size must be positive".into()));
        }
        let mut inverses = Vec::with_capacity(images.len());
        for (g, perm) in images.iter().enumerate() {
            if perm.len() != target_size {
                return Err(QuotientError::Invalid(format!(
                    "permutation {g} has length {}, expected {target_size}",
                    perm.len()
                )));
            }
            let mut inv = vec![usize::MAX; target_size];
            for (i, &p) in perm.iter().enumerate() {
                if p >= target_size || inv[p] != usize::MAX {
                    return Err(QuotientError::Invalid(format!(
                        "image of generator {} is not a bijection",
                        alphabet.name(g)
                    )));
                }
                inv[p] = i;
            }
            inverses.push(inv);
        }
        Ok(FiniteQuotient {
            alphabet: Arc::clone(alphabet),
            target_size,
            images,
            inverses,
        })
    }

    /// The one-point quotient: its stabilizer is the whole free group.
    pub fn trivial(alphabet: &Arc<Alphabet>) -> Self {
        Self::new(alphabet, vec![vec![0]; alphabet.rank()]).expect("identity permutations")
    }

    /// Regular action of `ℤ/m₁ × … × ℤ/m_k` in which generator `i` adds
    /// `shifts[i]`. Points are mixed-radix encodings of tuples.
    pub fn abelian(
        alphabet: &Arc<Alphabet>,
        moduli: &[usize],
        shifts: &[Vec<usize>],
    ) -> Result<Self, QuotientError> {
        if moduli.iter().any(|&m| m == 0) {
            return Err(QuotientError::Invalid("moduli must be positive".into()));
        }
        if shifts.len() != alphabet.rank() || shifts.iter().any(|s| s.len() != moduli.len()) {
            return Err(QuotientError::Invalid("one shift vector per generator".into()));
        }
        let size: usize = moduli.iter().product();
        let decode = |mut p: usize| -> Vec<usize> {
            moduli
                .iter()
                .map(|&m| {
                    let d = p % m;
                    p /= m;
                    d
                })
                .collect()
        };
        let encode = |v: &[usize]| -> usize {
            v.iter().zip(moduli).rev().fold(0, |acc, (&d, &m)| acc * m + d)
        };
        let images = shifts
            .iter()
            .map(|shift| {
                (0..size)
                    .map(|p| {
                        let v: Vec<usize> = decode(p)
                            .iter()
                            .zip(shift)
                            .zip(moduli)
                            .map(|((a, b), m)| (a + b) % m)
                            .collect();
                        encode(&v)
                    })
                    .collect()
            })
            .collect();
        Self::new(alphabet, images)
    }

    /// `F → (ℤ/m)^rank`, each generator to its own unit vector.
    pub fn mod_abelianization(alphabet: &Arc<Alphabet>, m: usize) -> Result<Self, QuotientError> {
        let rank = alphabet.rank();
        let shifts = (0..rank)
            .map(|i| (0..rank).map(|j| usize::from(i == j)).collect())
            .collect::<Vec<_>>();
        Self::abelian(alphabet, &vec![m; rank], &shifts)
    }

    pub fn from_file(file: FiniteQuotientFile) -> Result<Self, QuotientError> {
        let alphabet = Alphabet::new(file.alphabet)?;
        let q = Self::new(&alphabet, file.permutations)?;
        if q.target_size != file.target_size {
            return Err(QuotientError::Invalid(format!(
                "targetSize {} does not match permutation length {}",
                file.target_size, q.target_size
            )));
        }
        Ok(q)
    }

    pub fn from_json(text: &str) -> Result<Self, QuotientError> {
        let file: FiniteQuotientFile =
            serde_json::from_str(text).map_err(|e| QuotientError::Json(e.to_string()))?;
        Self::from_file(file)
    }

    pub fn to_file(&self) -> FiniteQuotientFile {
        FiniteQuotientFile {
            alphabet: self.alphabet.names().to_vec(),
            target_size: self.target_size,
            permutations: self.images.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("plain data")
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn target_size(&self) -> usize {
        self.target_size
    }

    pub fn permutation(&self, generator: usize) -> &[usize] {
        &self.images[generator]
    }

    pub fn act_letter(&self, point: usize, letter: Letter) -> usize {
        if letter.inverse {
            self.inverses[letter.generator][point]
        } else {
            self.images[letter.generator][point]
        }
    }

    pub fn act(&self, point: usize, w: &Word) -> Result<usize, QuotientError> {
        check_alphabet(&self.alphabet, w.alphabet())?;
        Ok(w.letters().fold(point, |p, l| self.act_letter(p, l)))
    }

    /// Does `w` fix point 0?
    pub fn stabilizes_base(&self, w: &Word) -> Result<bool, QuotientError> {
        Ok(self.act(0, w)? == 0)
    }

    /// Points reachable from `base`, in breadth-first order.
    pub fn orbit(&self, base: usize) -> Vec<usize> {
        let mut seen = vec![false; self.target_size];
        let mut order = vec![base];
        seen[base] = true;
        let mut head = 0;
        while head < order.len() {
            let p = order[head];
            head += 1;
            for l in signed_letters(self.alphabet.rank()) {
                let q = self.act_letter(p, l);
                if !seen[q] {
                    seen[q] = true;
                    order.push(q);
                }
            }
        }
        order
    }

    /// Swaps the labels of `point` and 0, so the stabilizer of `point`
    /// becomes the stabilizer of the base point.
    pub fn rebased(&self, point: usize) -> Self {
        let relabel = |p: usize| {
            if p == point {
                0
            } else if p == 0 {
                point
            } else {
                p
            }
        };
        let images = self
            .images
            .iter()
            .map(|perm| {
                let mut out = vec![0; self.target_size];
                for (i, &j) in perm.iter().enumerate() {
                    out[relabel(i)] = relabel(j);
                }
                out
            })
            .collect();
        Self::new(&self.alphabet, images).expect("relabelled permutations")
    }

    /// The diagonal action on tuples, restricted to the orbit of the tuple of
    /// base points (each factor is `(quotient, base point)`). The stabilizer
    /// of the new point 0 is the intersection of the factor stabilizers.
    pub fn orbit_product(
        factors: &[(&FiniteQuotient, usize)],
        cap: usize,
    ) -> Result<Self, QuotientError> {
        let (first, _) = factors
            .first()
            .ok_or_else(|| QuotientError::Invalid("empty product".into()))?;
        let alphabet = Arc::clone(&first.alphabet);
        for (q, _) in factors {
            check_alphabet(&alphabet, &q.alphabet)?;
        }
        let letters = signed_letters(alphabet.rank());
        let start: Vec<usize> = factors.iter().map(|&(_, b)| b).collect();
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(start.clone(), 0)]);
        let mut points = vec![start];
        let mut edges: Vec<Vec<usize>> = Vec::new();
        let mut head = 0;
        while head < points.len() {
            let current = points[head].clone();
            head += 1;
            let mut row = Vec::with_capacity(letters.len());
            for &l in &letters {
                let next: Vec<usize> = factors
                    .iter()
                    .zip(&current)
                    .map(|((q, _), &p)| q.act_letter(p, l))
                    .collect();
                let id = match index.get(&next) {
                    Some(&id) => id,
                    None => {
                        if points.len() >= cap {
                            return Err(QuotientError::TooLarge { cap });
                        }
                        index.insert(next.clone(), points.len());
                        points.push(next);
                        points.len() - 1
                    }
                };
                row.push(id);
            }
            edges.push(row);
        }
        let images = (0..alphabet.rank())
            .map(|g| edges.iter().map(|row| row[2 * g]).collect())
            .collect();
        Self::new(&alphabet, images)
    }
}

/// `x_0, x_0^-1, x_1, x_1^-1, …`: the fixed breadth-first letter order.
pub fn signed_letters(rank: usize) -> Vec<Letter> {
    (0..rank)
        .flat_map(|g| {
            [
                Letter { generator: g, inverse: false },
                Letter { generator: g, inverse: true },
            ]
        })
        .collect()
}

fn letter_column(l: Letter) -> usize {
    2 * l.generator + usize::from(l.inverse)
}

/// Words over the Schreier-generator alphabet of a subgroup.
pub type SubgroupWord = Word;

/// Coset table, prefix-closed transversal and free Schreier basis of the
/// stabilizer of point 0.
#[derive(Debug, Clone)]
pub struct SchreierSystem {
    quotient: FiniteQuotient,
    coset_points: Vec<usize>,
    coset_of_point: Vec<Option<usize>>,
    transversal: Vec<Word>,
    table: Vec<Vec<usize>>,
    generators: Vec<Word>,
    generator_at: Vec<Vec<Option<usize>>>,
    subgroup_alphabet: Arc<Alphabet>,
}

/// `index·(rank − 1) + 1`.
pub fn schreier_rank(index: usize, rank: usize) -> usize {
    index * (rank - 1) + 1
}

impl SchreierSystem {
    /// Breadth-first coset enumeration from point 0 (generators ascending,
    /// each positive letter before its inverse); Schreier generators
    /// `t·x·(overline{t x})^-1 ≠ 1` in `(t, x)` lexicographic order and named
    /// `e1, e2, …`.
    pub fn new(quotient: &FiniteQuotient) -> Self {
        Self::build(quotient, None).expect("default names are valid")
    }

    pub fn with_generator_names(
        quotient: &FiniteQuotient,
        names: &[&str],
    ) -> Result<Self, QuotientError> {
        Self::build(quotient, Some(names))
    }

    fn build(quotient: &FiniteQuotient, names: Option<&[&str]>) -> Result<Self, QuotientError> {
        let alphabet = quotient.alphabet();
        let rank = alphabet.rank();
        let letters = signed_letters(rank);
        let mut coset_of_point = vec![None; quotient.target_size()];
        let mut coset_points = vec![0usize];
        let mut transversal = vec![Word::identity(alphabet)];
        coset_of_point[0] = Some(0);
        let mut table: Vec<Vec<usize>> = Vec::new();
        let mut head = 0;
        while head < coset_points.len() {
            let p = coset_points[head];
            let mut row = Vec::with_capacity(letters.len());
            for &l in &letters {
                let q = quotient.act_letter(p, l);
                let c = match coset_of_point[q] {
                    Some(c) => c,
                    None => {
                        let c = coset_points.len();
                        coset_of_point[q] = Some(c);
                        coset_points.push(q);
                        transversal.push(&transversal[head] * &Word::from_letters(alphabet, [l]));
                        c
                    }
                };
                row.push(c);
            }
            table.push(row);
            head += 1;
        }

        let mut generators = Vec::new();
        let mut generator_at = vec![vec![None; rank]; coset_points.len()];
        for (t, rep) in transversal.iter().enumerate() {
            for (x, slot) in generator_at[t].iter_mut().enumerate() {
                let target = table[t][2 * x];
                let s = &(rep * &Word::generator(alphabet, x)) * &transversal[target].inverse();
                if !s.is_identity() {
                    *slot = Some(generators.len());
                    generators.push(s);
                }
            }
        }
        let subgroup_alphabet = match names {
            Some(names) => {
                if names.len() != generators.len() {
                    return Err(QuotientError::ImageCount {
                        expected: generators.len(),
                        got: names.len(),
                    });
                }
                Alphabet::new(names.iter().copied())?
            }
            None => Alphabet::numbered("e", generators.len())?,
        };
        Ok(SchreierSystem {
            quotient: quotient.clone(),
            coset_points,
            coset_of_point,
            transversal,
            table,
            generators,
            generator_at,
            subgroup_alphabet,
        })
    }

    pub fn quotient(&self) -> &FiniteQuotient {
        &self.quotient
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        self.quotient.alphabet()
    }

    pub fn index(&self) -> usize {
        self.transversal.len()
    }

    pub fn transversal(&self) -> &[Word] {
        &self.transversal
    }

    /// Row per coset; columns in [`signed_letters`] order.
    pub fn coset_table(&self) -> &[Vec<usize>] {
        &self.table
    }

    /// Point of the underlying action for each coset.
    pub fn coset_points(&self) -> &[usize] {
        &self.coset_points
    }

    pub fn generators(&self) -> &[Word] {
        &self.generators
    }

    /// Coset whose point in the underlying action is `point`, if it lies in
    /// the orbit of 0.
    pub fn coset_at_point(&self, point: usize) -> Option<usize> {
        self.coset_of_point.get(point).copied().flatten()
    }

    /// Renumbers the Schreier basis: new generator `k` is old generator
    /// `order[k]`. Names stay positional, so the new `k`-th generator takes
    /// the `k`-th name.
    pub fn reorder_generators(&mut self, order: &[usize]) -> Result<(), QuotientError> {
        let n = self.generators.len();
        let mut new_index = vec![usize::MAX; n];
        for (k, &old) in order.iter().enumerate() {
            if old >= n || new_index[old] != usize::MAX {
                return Err(QuotientError::Invalid("order is not a permutation".into()));
            }
            new_index[old] = k;
        }
        if order.len() != n {
            return Err(QuotientError::Invalid("order is not a permutation".into()));
        }
        self.generators = order.iter().map(|&i| self.generators[i].clone()).collect();
        for row in &mut self.generator_at {
            for slot in row.iter_mut() {
                *slot = slot.map(|g| new_index[g]);
            }
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn subgroup_alphabet(&self) -> &Arc<Alphabet> {
        &self.subgroup_alphabet
    }

    /// The Schreier generator `t·x·(overline{t x})^-1`, if nontrivial.
    pub fn generator_for(&self, coset: usize, generator: usize) -> Option<usize> {
        self.generator_at[coset][generator]
    }

    pub fn coset_of(&self, w: &Word) -> Result<usize, QuotientError> {
        check_alphabet(self.alphabet(), w.alphabet())?;
        Ok(w.letters().fold(0, |c, l| self.table[c][letter_column(l)]))
    }

    /// `overline{w}`: the transversal element of the coset `H·w`.
    pub fn representative(&self, w: &Word) -> Result<&Word, QuotientError> {
        Ok(&self.transversal[self.coset_of(w)?])
    }

    pub fn contains(&self, w: &Word) -> Result<bool, QuotientError> {
        Ok(self.coset_of(w)? == 0)
    }

    /// Reidemeister–Schreier rewriting: the unique word in the Schreier
    /// basis representing `w`.
    pub fn rewrite(&self, w: &Word) -> Result<SubgroupWord, QuotientError> {
        check_alphabet(self.alphabet(), w.alphabet())?;
        let mut coset = 0;
        let mut out: Vec<Letter> = Vec::new();
        for l in w.letters() {
            let next = self.table[coset][letter_column(l)];
            if l.inverse {
                // t x^-1 = (s x t^-1)^-1 · s with s = overline{t x^-1}.
                if let Some(g) = self.generator_at[next][l.generator] {
                    out.push(Letter { generator: g, inverse: true });
                }
            } else if let Some(g) = self.generator_at[coset][l.generator] {
                out.push(Letter { generator: g, inverse: false });
            }
            coset = next;
        }
        if coset != 0 {
            return Err(QuotientError::NotInSubgroup(w.to_string()));
        }
        Ok(Word::from_letters(&self.subgroup_alphabet, out))
    }

    /// Substitutes each Schreier generator by its word in the free group.
    pub fn expand(&self, v: &SubgroupWord) -> Result<Word, QuotientError> {
        check_alphabet(&self.subgroup_alphabet, v.alphabet())?;
        let mut out = Word::identity(self.alphabet());
        for s in v.syllables() {
            out = &out * &self.generators[s.generator].pow(s.exponent);
        }
        Ok(out)
    }

    /// Every prefix of every representative is itself a representative.
    pub fn is_prefix_closed(&self) -> bool {
        let set: std::collections::HashSet<&Word> = self.transversal.iter().collect();
        self.transversal.iter().all(|t| {
            let letters: Vec<Letter> = t.letters().collect();
            (0..letters.len()).all(|k| {
                set.contains(&Word::from_letters(self.alphabet(), letters[..k].iter().copied()))
            })
        })
    }

    pub fn subgroup_hom(&self, images: Vec<Word>, target: &Arc<Alphabet>) -> Result<SubgroupHom<'_>, QuotientError> {
        SubgroupHom::new(self, images, target)
    }
}

/// A homomorphism from a Schreier subgroup to a free group, defined on the
/// Schreier basis and evaluated by rewriting then substituting.
#[derive(Debug, Clone)]
pub struct SubgroupHom<'a> {
    system: &'a SchreierSystem,
    on_basis: FreeHom,
}

impl<'a> SubgroupHom<'a> {
    pub fn new(
        system: &'a SchreierSystem,
        images: Vec<Word>,
        target: &Arc<Alphabet>,
    ) -> Result<Self, QuotientError> {
        if images.len() != system.rank() {
            return Err(QuotientError::ImageCount {
                expected: system.rank(),
                got: images.len(),
            });
        }
        let on_basis = FreeHom::new(system.subgroup_alphabet(), target, images)?;
        Ok(SubgroupHom { system, on_basis })
    }

    pub fn system(&self) -> &SchreierSystem {
        self.system
    }

    pub fn target(&self) -> &Arc<Alphabet> {
        self.on_basis.codomain()
    }

    pub fn on_basis(&self) -> &FreeHom {
        &self.on_basis
    }

    /// Image of an element of the subgroup given as a word in the ambient group.
    pub fn evaluate(&self, w: &Word) -> Result<Word, QuotientError> {
        let v = self.system.rewrite(w)?;
        Ok(self.on_basis.apply(&v)?)
    }

    /// Image of a word over the Schreier basis.
    pub fn evaluate_subgroup_word(&self, v: &SubgroupWord) -> Result<Word, QuotientError> {
        Ok(self.on_basis.apply(v)?)
    }

    pub fn in_kernel(&self, w: &Word) -> Result<bool, QuotientError> {
        Ok(self.evaluate(w)?.is_identity())
    }

    /// The ambient group's action on the right cosets of the preimage of the
    /// point stabilizer of `target`: points `(coset, target point)` encoded
    /// as `coset·|target| + point`, with
    /// `(t, q)·x = (overline{t x}, q·φ(t x overline{t x}^-1))`.
    /// The stabilizer of point 0 is `{ w ∈ H : φ(w) fixes 0 }`.
    pub fn pullback_action(&self, target: &FiniteQuotient) -> Result<FiniteQuotient, QuotientError> {
        check_alphabet(self.target(), target.alphabet())?;
        let m = target.target_size();
        let image_words = self.on_basis.images();
        let ambient = self.system.alphabet();
        let images = (0..ambient.rank())
            .map(|x| {
                let mut perm = vec![0; self.system.index() * m];
                for t in 0..self.system.index() {
                    let next = self.system.table[t][2 * x];
                    for q in 0..m {
                        let moved = match self.system.generator_at[t][x] {
                            Some(g) => target.act(q, &image_words[g])?,
                            None => q,
                        };
                        perm[t * m + q] = next * m + moved;
                    }
                }
                Ok(perm)
            })
            .collect::<Result<Vec<_>, QuotientError>>()?;
        FiniteQuotient::new(ambient, images)
    }
}

/// The subgroups and maps used throughout the verification suites.
pub mod builtin {
    use super::*;
    use crate::homs::builtin::{rank2, rank3};

    /// `Δ = ker(F₂ → (ℤ/2)²)` with basis `e1 = x², e2 = yxy⁻¹x⁻¹, e3 = y²,
    /// e4 = xyxy⁻¹, e5 = xy²x⁻¹`.
    pub fn delta() -> SchreierSystem {
        let q = FiniteQuotient::mod_abelianization(&rank2(), 2).expect("valid quotient");
        SchreierSystem::new(&q)
    }

    /// `R = ker(F₃ → C₂)`, `x ↦ g`, `y, z ↦ 1`, with basis
    /// `x², y, xyx⁻¹, z, xzx⁻¹` (named `e1 … e5`).
    pub fn parity_kernel() -> SchreierSystem {
        let q = FiniteQuotient::abelian(&rank3(), &[2], &[vec![1], vec![0], vec![0]])
            .expect("valid quotient");
        let mut s = SchreierSystem::new(&q);
        s.reorder_generators(&[2, 0, 3, 1, 4]).expect("permutation");
        s
    }

    /// Target alphabet `{alpha, beta}` of [`pi_images`].
    pub fn pi_target() -> Arc<Alphabet> {
        Alphabet::new(["alpha", "beta"]).expect("valid alphabet")
    }

    /// `e1 ↦ α, e2 ↦ 1, e3 ↦ β, e4 ↦ α⁻¹, e5 ↦ β⁻¹` on the basis of [`delta`].
    pub fn pi_images(target: &Arc<Alphabet>) -> Vec<Word> {
        ["alpha", "1", "beta", "alpha^-1", "beta^-1"]
            .iter()
            .map(|t| Word::parse(t, target).expect("valid word"))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy() -> Arc<Alphabet> {
        Alphabet::new(["x", "y"]).unwrap()
    }

    fn klein(a: &Arc<Alphabet>) -> FiniteQuotient {
        FiniteQuotient::mod_abelianization(a, 2).unwrap()
    }

    fn strs(ws: &[Word]) -> Vec<String> {
        ws.iter().map(ToString::to_string).collect()
    }

    #[test]
    fn klein_four_kernel() {
        let a = xy();
        let s = SchreierSystem::new(&klein(&a));
        assert_eq!(strs(s.transversal()), ["1", "x", "y", "x y"]);
        assert_eq!(
            strs(s.generators()),
            ["x^2", "y x y^-1 x^-1", "y^2", "x y x y^-1", "x y^2 x^-1"]
        );
        assert_eq!(s.rank(), schreier_rank(4, 2));
        assert!(s.is_prefix_closed());
    }

    #[test]
    fn cyclic_two_kernel_rank3() {
        let a = Alphabet::new(["x", "y", "z"]).unwrap();
        let q = FiniteQuotient::abelian(&a, &[2], &[vec![1], vec![0], vec![0]]).unwrap();
        let mut s = SchreierSystem::new(&q);
        assert_eq!(strs(s.transversal()), ["1", "x"]);
        assert_eq!(strs(s.generators()), ["y", "z", "x^2", "x y x^-1", "x z x^-1"]);
        s.reorder_generators(&[2, 0, 3, 1, 4]).unwrap();
        assert_eq!(strs(s.generators()), ["x^2", "y", "x y x^-1", "z", "x z x^-1"]);
        let w = Word::parse("x y x^-1 z x^2", &a).unwrap();
        assert_eq!(s.rewrite(&w).unwrap().to_string(), "e3 e4 e1");
        assert!(s.reorder_generators(&[0, 0, 1, 2, 3]).is_err());
    }

    #[test]
    fn trivial_quotient() {
        let a = xy();
        let s = SchreierSystem::new(&FiniteQuotient::trivial(&a));
        assert_eq!(strs(s.transversal()), ["1"]);
        assert_eq!(strs(s.generators()), ["x", "y"]);
    }

    #[test]
    fn schreier_rank_examples() {
        assert_eq!(schreier_rank(4, 2), 5);
        assert_eq!(schreier_rank(2, 3), 5);
        assert_eq!(schreier_rank(1, 7), 7);
    }

    #[test]
    fn membership_and_rewriting() {
        let a = xy();
        let s = SchreierSystem::new(&klein(&a));
        let w = |t: &str| Word::parse(t, &a).unwrap();
        assert!(s.contains(&w("x^2")).unwrap());
        assert!(!s.contains(&w("x")).unwrap());
        assert!(s.contains(&Word::identity(&a)).unwrap());
        assert_eq!(s.rewrite(&w("y x^2 y x^2")).unwrap().to_string(), "e2 e4 e3 e1");
        assert_eq!(s.rewrite(&w("x y^2 x y^2")).unwrap().to_string(), "e5 e1 e3");
        assert_eq!(s.rewrite(&w("y x y^-1 x^-1")).unwrap().to_string(), "e2");
        assert!(matches!(s.rewrite(&w("x y")), Err(QuotientError::NotInSubgroup(_))));
    }

    #[test]
    fn invalid_quotients() {
        let a = xy();
        assert!(FiniteQuotient::new(&a, vec![vec![0, 0], vec![0, 1]]).is_err());
        assert!(FiniteQuotient::new(&a, vec![vec![0, 1]]).is_err());
        assert!(FiniteQuotient::new(&a, vec![vec![0, 1], vec![0]]).is_err());
        assert!(FiniteQuotient::from_json(r#"{"alphabet":["x"],"targetSize":3,"permutations":[[1,0]]}"#).is_err());
    }

    #[test]
    fn json_round_trip() {
        let q = klein(&xy());
        let back = FiniteQuotient::from_json(&q.to_json()).unwrap();
        assert_eq!(back, q);
    }

    #[test]
    fn non_normal_stabilizer() {
        // S3 acting on 3 points: stabilizer of 0 has index 3.
        let a = xy();
        let q = FiniteQuotient::new(&a, vec![vec![1, 0, 2], vec![1, 2, 0]]).unwrap();
        let s = SchreierSystem::new(&q);
        assert_eq!(s.index(), 3);
        assert_eq!(s.rank(), 4);
        for g in s.generators() {
            assert!(s.contains(g).unwrap());
        }
    }

    #[test]
    fn rebase_and_product() {
        let a = xy();
        let q = FiniteQuotient::new(&a, vec![vec![1, 0, 2], vec![1, 2, 0]]).unwrap();
        let r = q.rebased(2);
        let w = Word::parse("y x", &a).unwrap();
        assert_eq!(q.act(2, &w).unwrap() == 2, r.stabilizes_base(&w).unwrap());
        let p = FiniteQuotient::orbit_product(&[(&q, 0), (&q, 1)], 100).unwrap();
        assert_eq!(p.target_size(), 6);
        assert!(matches!(
            FiniteQuotient::orbit_product(&[(&q, 0), (&q, 1)], 3),
            Err(QuotientError::TooLarge { cap: 3 })
        ));
    }
}
