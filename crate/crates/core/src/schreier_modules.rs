//! The abelianization `H/H'` of a Schreier subgroup as a `ℤ`-module:
//! conjugation matrices, eigenlattices and the integral representation
//! induced by automorphisms that preserve `H`.
//!
//! Coordinates are exponent sums over the Schreier basis. Matrices act on
//! column vectors, so column `j` is the image of the `j`-th basis vector and
//! `action(σ ∘ τ) = action(σ) · action(τ)`.

use thiserror::Error;

use crate::homs::{HomError, VerifiedAut};
use crate::intmat::{elementary_divisors, hermite_normal_form, integer_kernel, IntMatrix};
use crate::quotients::{QuotientError, SchreierSystem};
use crate::words::{check_alphabet, Word, WordError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModuleError {
    #[error(transparent)]
    Quotient(#[from] QuotientError),
    #[error(transparent)]
    Hom(#[from] HomError),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("conjugation by {0} does not preserve the subgroup")]
    NotNormalizing(String),
    #[error("automorphism sends generator {generator} outside the subgroup")]
    NotPreserved { generator: String },
    #[error("lattice is not invariant under the action")]
    NotInvariant,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("matrix is not square")]
    NotSquare,
}

/// A sublattice of `ℤ^n`, stored by its row Hermite normal form basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    ambient_dim: usize,
    basis: Vec<Vec<i64>>,
}

impl Lattice {
    /// The lattice spanned by `vectors` (any spanning set).
    pub fn span(ambient_dim: usize, vectors: &[Vec<i64>]) -> Result<Self, ModuleError> {
        if let Some(v) = vectors.iter().find(|v| v.len() != ambient_dim) {
            return Err(ModuleError::Dimension {
                expected: ambient_dim,
                got: v.len(),
            });
        }
        Ok(Lattice {
            ambient_dim,
            basis: hermite_normal_form(vectors),
        })
    }

    pub fn full(ambient_dim: usize) -> Self {
        let basis = (0..ambient_dim)
            .map(|i| (0..ambient_dim).map(|j| i64::from(i == j)).collect())
            .collect();
        Lattice { ambient_dim, basis }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn basis(&self) -> &[Vec<i64>] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Integer coordinates of `v` in the stored basis, if `v` lies in the lattice.
    pub fn coordinates(&self, v: &[i64]) -> Option<Vec<i64>> {
        if v.len() != self.ambient_dim {
            return None;
        }
        let mut rest = v.to_vec();
        let mut coords = Vec::with_capacity(self.basis.len());
        for b in &self.basis {
            let pivot = b.iter().position(|&x| x != 0)?;
            if rest[pivot] % b[pivot] != 0 {
                return None;
            }
            let c = rest[pivot] / b[pivot];
            for (r, x) in rest.iter_mut().zip(b) {
                *r -= c * x;
            }
            coords.push(c);
        }
        rest.iter().all(|&x| x == 0).then_some(coords)
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        self.coordinates(v).is_some()
    }

    /// `L = (L ⊗ ℚ) ∩ ℤ^n`, i.e. all elementary divisors of the basis are 1.
    pub fn is_saturated(&self) -> bool {
        elementary_divisors(&self.basis).iter().all(|&d| d == 1)
    }

    /// Matrix of `m` restricted to the lattice, in the stored basis.
    pub fn restrict(&self, m: &IntMatrix) -> Result<IntMatrix, ModuleError> {
        if m.rows() != self.ambient_dim || m.cols() != self.ambient_dim {
            return Err(ModuleError::Dimension {
                expected: self.ambient_dim,
                got: m.rows(),
            });
        }
        let columns = self
            .basis
            .iter()
            .map(|b| self.coordinates(&m.apply(b)).ok_or(ModuleError::NotInvariant))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(IntMatrix::from_columns(&columns))
    }
}

/// Exponent-sum vector of a word over the Schreier basis.
pub fn abelianize(s: &SchreierSystem, v: &Word) -> Result<Vec<i64>, ModuleError> {
    check_alphabet(s.subgroup_alphabet(), v.alphabet())?;
    Ok(v.exponent_sums())
}

/// Matrix of `v ↦ g⁻¹ v g` on `H/H'`.
pub fn conjugation_matrix(s: &SchreierSystem, g: &Word) -> Result<IntMatrix, ModuleError> {
    let ginv = g.inverse();
    let columns = s
        .generators()
        .iter()
        .map(|e| {
            let c = &(&ginv * e) * g;
            match s.rewrite(&c) {
                Ok(v) => Ok(v.exponent_sums()),
                Err(QuotientError::NotInSubgroup(_)) => Err(ModuleError::NotNormalizing(g.to_string())),
                Err(e) => Err(e.into()),
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(IntMatrix::from_columns(&columns))
}

/// Matrix of an automorphism preserving `H` on `H/H'`; column `j` is the
/// class of `σ(e_j)`.
pub fn action_matrix(s: &SchreierSystem, aut: &VerifiedAut) -> Result<IntMatrix, ModuleError> {
    check_alphabet(s.alphabet(), aut.alphabet())?;
    let columns = s
        .generators()
        .iter()
        .enumerate()
        .map(|(j, e)| {
            let image = aut.apply(e)?;
            match s.rewrite(&image) {
                Ok(v) => Ok(v.exponent_sums()),
                Err(QuotientError::NotInSubgroup(_)) => Err(ModuleError::NotPreserved {
                    generator: s.subgroup_alphabet().name(j).to_string(),
                }),
                Err(e) => Err(e.into()),
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(IntMatrix::from_columns(&columns))
}

/// `ker(m − λ·I) ∩ ℤ^n`, saturated, in Hermite normal form.
pub fn eigen_lattice(m: &IntMatrix, lambda: i64) -> Result<Lattice, ModuleError> {
    if !m.is_square() {
        return Err(ModuleError::NotSquare);
    }
    Ok(Lattice {
        ambient_dim: m.cols(),
        basis: integer_kernel(&m.shifted(lambda)),
    })
}

/// The action of `aut` on an invariant sublattice of `H/H'`, in the
/// lattice's basis.
pub fn induced_action(
    s: &SchreierSystem,
    aut: &VerifiedAut,
    lattice: &Lattice,
) -> Result<IntMatrix, ModuleError> {
    if lattice.ambient_dim() != s.rank() {
        return Err(ModuleError::Dimension {
            expected: s.rank(),
            got: lattice.ambient_dim(),
        });
    }
    lattice.restrict(&action_matrix(s, aut)?)
}
