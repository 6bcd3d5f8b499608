//! Homomorphisms between free groups, given by generator images.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::intmat::IntMatrix;
use crate::words::{check_alphabet, Alphabet, Word, WordError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("expected {expected} generator images, got {got}")]
    ImageCount { expected: usize, got: usize },
    #[error("maps are not mutually inverse: {0}")]
    NotInverse(String),
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
    #[error("abelianization matrix needs an endomorphism")]
    NotEndomorphism,
}

#[derive(Clone, PartialEq, Eq)]
pub struct FreeHom {
    domain: Arc<Alphabet>,
    codomain: Arc<Alphabet>,
    images: Vec<Word>,
}

impl FreeHom {
    pub fn new(
        domain: &Arc<Alphabet>,
        codomain: &Arc<Alphabet>,
        images: Vec<Word>,
    ) -> Result<Self, HomError> {
        if images.len() != domain.rank() {
            return Err(HomError::ImageCount {
                expected: domain.rank(),
                got: images.len(),
            });
        }
        for image in &images {
            check_alphabet(codomain, image.alphabet())?;
        }
        Ok(FreeHom {
            domain: Arc::clone(domain),
            codomain: Arc::clone(codomain),
            images,
        })
    }

    /// Endomorphism from image strings in the word grammar.
    pub fn parse_images(alphabet: &Arc<Alphabet>, images: &[&str]) -> Result<Self, HomError> {
        let words = images
            .iter()
            .map(|s| Word::parse(s, alphabet))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(alphabet, alphabet, words)
    }

    pub fn identity(alphabet: &Arc<Alphabet>) -> Self {
        let images = (0..alphabet.rank()).map(|i| Word::generator(alphabet, i)).collect();
        FreeHom {
            domain: Arc::clone(alphabet),
            codomain: Arc::clone(alphabet),
            images,
        }
    }

    pub fn domain(&self) -> &Arc<Alphabet> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<Alphabet> {
        &self.codomain
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn image(&self, generator: usize) -> &Word {
        &self.images[generator]
    }

    pub fn is_endomorphism(&self) -> bool {
        crate::words::same_alphabet(&self.domain, &self.codomain)
    }

    pub fn apply(&self, w: &Word) -> Result<Word, HomError> {
        check_alphabet(&self.domain, w.alphabet())?;
        let mut out = Word::identity(&self.codomain);
        for s in w.syllables() {
            out = &out * &self.images[s.generator].pow(s.exponent);
        }
        Ok(out)
    }

    /// `self ∘ inner`: first `inner`, then `self`.
    pub fn compose(&self, inner: &FreeHom) -> Result<FreeHom, HomError> {
        check_alphabet(&self.domain, &inner.codomain)?;
        let images = inner
            .images
            .iter()
            .map(|w| self.apply(w))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(FreeHom {
            domain: Arc::clone(&inner.domain),
            codomain: Arc::clone(&self.codomain),
            images,
        })
    }

    pub fn fixes(&self, w: &Word) -> Result<bool, HomError> {
        Ok(&self.apply(w)? == w)
    }

    /// Column `i` is the exponent-sum vector of the image of generator `i`,
    /// so `abelianization(f ∘ g) = abelianization(f) · abelianization(g)`.
    pub fn abelianization(&self) -> Result<IntMatrix, HomError> {
        if !self.is_endomorphism() {
            return Err(HomError::NotEndomorphism);
        }
        let cols: Vec<Vec<i64>> = self.images.iter().map(Word::exponent_sums).collect();
        Ok(IntMatrix::from_columns(&cols))
    }

    /// Parses the `name -> word` line format. Blank lines and `#` comments
    /// are skipped; every domain generator must appear exactly once.
    pub fn parse(
        text: &str,
        domain: &Arc<Alphabet>,
        codomain: &Arc<Alphabet>,
    ) -> Result<Self, HomError> {
        let mut images: Vec<Option<Word>> = vec![None; domain.rank()];
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| HomError::Format {
                line: n + 1,
                message,
            };
            let (name, image) = line
                .split_once("->")
                .ok_or_else(|| err("expected `name -> word`".into()))?;
            let name = name.trim();
            let index = domain
                .index_of(name)
                .ok_or_else(|| err(format!("unknown generator {name:?}")))?;
            if images[index].is_some() {
                return Err(err(format!("generator {name:?} given twice")));
            }
            let word = Word::parse(image.trim(), codomain).map_err(|e| err(e.to_string()))?;
            images[index] = Some(word);
        }
        let images = images
            .into_iter()
            .enumerate()
            .map(|(i, w)| {
                w.ok_or_else(|| HomError::Format {
                    line: 0,
                    message: format!("no image for {:?}", domain.name(i)),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(domain, codomain, images)
    }
}

impl fmt::Display for FreeHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, image) in self.images.iter().enumerate() {
            if i > 0 {
                f.write_str("\n")?;
            }
            write!(f, "{} -> {}", self.domain.name(i), image)?;
        }
        Ok(())
    }
}

impl fmt::Debug for FreeHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .images
            .iter()
            .enumerate()
            .map(|(i, w)| format!("{} -> {}", self.domain.name(i), w))
            .collect();
        write!(f, "FreeHom({})", parts.join("; "))
    }
}

/// An automorphism together with an explicit inverse, checked on
/// construction.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VerifiedAut {
    forward: FreeHom,
    backward: FreeHom,
}

impl VerifiedAut {
    pub fn new(forward: FreeHom, backward: FreeHom) -> Result<Self, HomError> {
        if !forward.is_endomorphism() || !backward.is_endomorphism() {
            return Err(HomError::NotEndomorphism);
        }
        check_alphabet(forward.domain(), backward.domain())?;
        let id = FreeHom::identity(forward.domain());
        if forward.compose(&backward)? != id {
            return Err(HomError::NotInverse("forward ∘ backward is not the identity".into()));
        }
        if backward.compose(&forward)? != id {
            return Err(HomError::NotInverse("backward ∘ forward is not the identity".into()));
        }
        Ok(VerifiedAut { forward, backward })
    }

    pub fn identity(alphabet: &Arc<Alphabet>) -> Self {
        let id = FreeHom::identity(alphabet);
        VerifiedAut {
            forward: id.clone(),
            backward: id,
        }
    }

    /// `w ↦ g^-1 w g`. With this convention
    /// `inner(g1) ∘ inner(g2) = inner(g2 g1)`.
    pub fn inner(g: &Word) -> Self {
        let alphabet = g.alphabet();
        let ginv = g.inverse();
        let conj = |a: &Word, b: &Word| -> FreeHom {
            let images = (0..alphabet.rank())
                .map(|i| &(a * &Word::generator(alphabet, i)) * b)
                .collect();
            FreeHom {
                domain: Arc::clone(alphabet),
                codomain: Arc::clone(alphabet),
                images,
            }
        };
        VerifiedAut {
            forward: conj(&ginv, g),
            backward: conj(g, &ginv),
        }
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        self.forward.domain()
    }

    pub fn forward(&self) -> &FreeHom {
        &self.forward
    }

    pub fn backward(&self) -> &FreeHom {
        &self.backward
    }

    pub fn inverse(&self) -> Self {
        VerifiedAut {
            forward: self.backward.clone(),
            backward: self.forward.clone(),
        }
    }

    pub fn apply(&self, w: &Word) -> Result<Word, HomError> {
        self.forward.apply(w)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &VerifiedAut) -> Result<Self, HomError> {
        Ok(VerifiedAut {
            forward: self.forward.compose(&inner.forward)?,
            backward: inner.backward.compose(&self.backward)?,
        })
    }
}

/// Named automorphisms and Nielsen moves.
pub mod builtin {
    use super::*;

    fn aut(alphabet: &Arc<Alphabet>, forward: &[&str], backward: &[&str]) -> VerifiedAut {
        let f = FreeHom::parse_images(alphabet, forward).expect("builtin image");
        let b = FreeHom::parse_images(alphabet, backward).expect("builtin image");
        VerifiedAut::new(f, b).expect("builtin automorphism")
    }

    pub fn rank2() -> Arc<Alphabet> {
        Alphabet::new(["x", "y"]).expect("valid alphabet")
    }

    pub fn rank3() -> Arc<Alphabet> {
        Alphabet::new(["x", "y", "z"]).expect("valid alphabet")
    }

    /// `x ↦ x, y ↦ y x^2` on `⟨x, y⟩`; abelianizes to `[[1,2],[0,1]]`.
    pub fn alpha2() -> VerifiedAut {
        aut(&rank2(), &["x", "y x^2"], &["x", "y x^-2"])
    }

    /// `x ↦ x y^2, y ↦ y` on `⟨x, y⟩`; abelianizes to `[[1,0],[2,1]]`.
    pub fn beta2() -> VerifiedAut {
        aut(&rank2(), &["x y^2", "y"], &["x y^-2", "y"])
    }

    /// `z ↦ z y` on `⟨x, y, z⟩`, fixing `x` and `y`.
    pub fn alpha3() -> VerifiedAut {
        aut(&rank3(), &["x", "y", "z y"], &["x", "y", "z y^-1"])
    }

    /// `y ↦ y z` on `⟨x, y, z⟩`, fixing `x` and `z`.
    pub fn beta3() -> VerifiedAut {
        aut(&rank3(), &["x", "y z", "z"], &["x", "y z^-1", "z"])
    }

    /// Right transvection `x_i ↦ x_i x_j^sign` (`i ≠ j`).
    pub fn right_transvection(alphabet: &Arc<Alphabet>, i: usize, j: usize, sign: i64) -> VerifiedAut {
        assert!(i != j && sign.abs() == 1);
        let make = |s: i64| {
            let mut images: Vec<Word> =
                (0..alphabet.rank()).map(|k| Word::generator(alphabet, k)).collect();
            images[i] = &images[i] * &Word::power_of_generator(alphabet, j, s);
            FreeHom::new(alphabet, alphabet, images).expect("same alphabet")
        };
        VerifiedAut::new(make(sign), make(-sign)).expect("transvection is invertible")
    }

    /// Left transvection `x_i ↦ x_j^sign x_i` (`i ≠ j`).
    pub fn left_transvection(alphabet: &Arc<Alphabet>, i: usize, j: usize, sign: i64) -> VerifiedAut {
        assert!(i != j && sign.abs() == 1);
        let make = |s: i64| {
            let mut images: Vec<Word> =
                (0..alphabet.rank()).map(|k| Word::generator(alphabet, k)).collect();
            images[i] = &Word::power_of_generator(alphabet, j, s) * &images[i];
            FreeHom::new(alphabet, alphabet, images).expect("same alphabet")
        };
        VerifiedAut::new(make(sign), make(-sign)).expect("transvection is invertible")
    }

    /// `x_i ↦ x_i^-1`.
    pub fn inversion(alphabet: &Arc<Alphabet>, i: usize) -> VerifiedAut {
        let mut images: Vec<Word> =
            (0..alphabet.rank()).map(|k| Word::generator(alphabet, k)).collect();
        images[i] = images[i].inverse();
        let f = FreeHom::new(alphabet, alphabet, images).expect("same alphabet");
        VerifiedAut::new(f.clone(), f).expect("involution")
    }

    /// `x_i ↦ x_{perm[i]}`. Panics unless `perm` is a permutation.
    pub fn permutation(alphabet: &Arc<Alphabet>, perm: &[usize]) -> VerifiedAut {
        assert_eq!(perm.len(), alphabet.rank());
        let mut inv = vec![usize::MAX; perm.len()];
        for (i, &p) in perm.iter().enumerate() {
            inv[p] = i;
        }
        assert!(inv.iter().all(|&i| i != usize::MAX), "not a permutation");
        let make = |p: &[usize]| {
            let images = p.iter().map(|&k| Word::generator(alphabet, k)).collect();
            FreeHom::new(alphabet, alphabet, images).expect("same alphabet")
        };
        VerifiedAut::new(make(perm), make(&inv)).expect("permutation is invertible")
    }
}

#[cfg(test)]
mod tests {
    use super::builtin::*;
    use super::*;

    fn w2(s: &str) -> Word {
        Word::parse(s, &rank2()).unwrap()
    }

    #[test]
    fn alpha_images() {
        let a = alpha2();
        assert_eq!(a.apply(&w2("y")).unwrap(), w2("y x^2"));
        assert_eq!(a.apply(&w2("y^2")).unwrap(), w2("y x^2 y x^2"));
        let id = FreeHom::identity(&rank2());
        assert_eq!(id.apply(&w2("x y^-3 x")).unwrap(), w2("x y^-3 x"));
    }

    #[test]
    fn compose_examples() {
        let a = alpha2();
        let b = beta2();
        let id = FreeHom::identity(&rank2());
        assert_eq!(id.compose(a.forward()).unwrap(), *a.forward());
        assert_eq!(a.forward().compose(a.backward()).unwrap(), id);
        let ab = a.forward().compose(b.forward()).unwrap();
        assert_eq!(ab.image(0), &w2("x y x^2 y x^2"));
    }

    #[test]
    fn inner_automorphisms() {
        let id = VerifiedAut::inner(&Word::identity(&rank2()));
        assert_eq!(id, VerifiedAut::identity(&rank2()));
        let ix = VerifiedAut::inner(&w2("x"));
        assert_eq!(ix.apply(&w2("y")).unwrap(), w2("x^-1 y x"));
        assert_eq!(ix.apply(&w2("x")).unwrap(), w2("x"));
        let g1 = w2("x y");
        let g2 = w2("y^-1 x^3");
        let lhs = VerifiedAut::inner(&g1).compose(&VerifiedAut::inner(&g2)).unwrap();
        let rhs = VerifiedAut::inner(&(&g2 * &g1));
        assert_eq!(lhs.forward(), rhs.forward());
    }

    #[test]
    fn abelianization_examples() {
        assert_eq!(alpha2().forward().abelianization().unwrap().to_string(), "[[1,2],[0,1]]");
        assert_eq!(beta2().forward().abelianization().unwrap().to_string(), "[[1,0],[2,1]]");
        assert!(FreeHom::identity(&rank3()).abelianization().unwrap().is_identity());
    }

    #[test]
    fn fixes_commutator() {
        let yx = Word::commutator(&w2("y"), &w2("x")).unwrap();
        assert!(alpha2().forward().fixes(&yx).unwrap());
        assert!(beta2().forward().fixes(&yx).unwrap());
        assert!(!alpha2().forward().fixes(&w2("y")).unwrap());
    }

    #[test]
    fn rejects_non_invertible() {
        let a = rank2();
        let f = FreeHom::parse_images(&a, &["x", "x"]).unwrap();
        let g = FreeHom::identity(&a);
        assert!(matches!(VerifiedAut::new(f, g), Err(HomError::NotInverse(_))));
    }

    #[test]
    fn text_format_round_trip() {
        let a = rank2();
        let h = FreeHom::parse("y -> y x^2\n# comment\nx -> x\n", &a, &a).unwrap();
        assert_eq!(h, *alpha2().forward());
        assert_eq!(h.to_string(), "x -> x\ny -> y x^2");
        assert_eq!(FreeHom::parse(&h.to_string(), &a, &a).unwrap(), h);
        assert!(FreeHom::parse("x -> x", &a, &a).is_err());
        assert!(FreeHom::parse("x -> x\nx -> y\ny -> y", &a, &a).is_err());
        assert!(FreeHom::parse("x => x", &a, &a).is_err());
    }

    #[test]
    fn builtins_are_automorphisms() {
        let a = rank3();
        right_transvection(&a, 0, 2, -1);
        left_transvection(&a, 1, 0, 1);
        inversion(&a, 2);
        let p = permutation(&a, &[2, 0, 1]);
        assert_eq!(p.apply(&Word::parse("x", &a).unwrap()).unwrap(), Word::parse("z", &a).unwrap());
        alpha3();
        beta3();
    }
}
