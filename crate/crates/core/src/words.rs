//! Freely reduced words in finitely generated free groups.
//!
//! A [`Word`] is stored in run-length ("syllable") form: a sequence of
//! `(generator, exponent)` pairs with nonzero exponents and no two adjacent
//! syllables on the same generator. This is the unique normal form, so
//! structural equality is group equality.
//!
//! Conventions used throughout the crate:
//!
//! * **Commutator**: `[a, b] = a b a^-1 b^-1`. With this choice `[y, x]`
//!   is literally `y x y^-1 x^-1`. Many texts use the opposite convention.
//! * **Conjugation** is on the right: `a^t = t^-1 a t`.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::Mul;
use std::sync::Arc;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown generator {name:?} at byte {position}")]
    UnknownGenerator { name: String, position: usize },
    #[error("words live over different alphabets ({left} vs {right})")]
    AlphabetMismatch { left: String, right: String },
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),
}

/// An ordered list of distinct generator names.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Alphabet {
    names: Vec<String>,
}

fn is_valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Alphabet {
    pub fn new<I, S>(names: I) -> Result<Arc<Self>, WordError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(WordError::InvalidAlphabet("rank must be at least 1".into()));
        }
        for (i, name) in names.iter().enumerate() {
            if !is_valid_name(name) {
                return Err(WordError::InvalidAlphabet(format!(
                    "{name:?} is not a valid generator name"
                )));
            }
            if names[..i].contains(name) {
                return Err(WordError::InvalidAlphabet(format!("duplicate name {name:?}")));
            }
        }
        Ok(Arc::new(Alphabet { names }))
    }

    /// `prefix1, prefix2, ..., prefix{rank}`.
    pub fn numbered(prefix: &str, rank: usize) -> Result<Arc<Self>, WordError> {
        Self::new((1..=rank).map(|i| format!("{prefix}{i}")))
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.names.join(","))
    }
}

pub(crate) fn same_alphabet(a: &Arc<Alphabet>, b: &Arc<Alphabet>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

pub(crate) fn check_alphabet(a: &Arc<Alphabet>, b: &Arc<Alphabet>) -> Result<(), WordError> {
    if same_alphabet(a, b) {
        Ok(())
    } else {
        Err(WordError::AlphabetMismatch {
            left: a.to_string(),
            right: b.to_string(),
        })
    }
}

/// One run `generator^exponent` of a reduced word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Syllable {
    pub generator: usize,
    pub exponent: i64,
}

/// A single letter `x_i^{±1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

/// Appends `s` to a reduced syllable stack, merging and cancelling.
fn push_syllable(stack: &mut Vec<Syllable>, s: Syllable) {
    if s.exponent == 0 {
        return;
    }
    if let Some(last) = stack.last_mut() {
        if last.generator == s.generator {
            last.exponent += s.exponent;
            if last.exponent == 0 {
                stack.pop();
            }
            return;
        }
    }
    stack.push(s);
}

/// A freely reduced word over an [`Alphabet`].
#[derive(Clone)]
pub struct Word {
    alphabet: Arc<Alphabet>,
    syllables: Vec<Syllable>,
}

impl Word {
    pub fn identity(alphabet: &Arc<Alphabet>) -> Self {
        Word {
            alphabet: Arc::clone(alphabet),
            syllables: Vec::new(),
        }
    }

    /// The word `x_index`. Panics if `index` is out of range.
    pub fn generator(alphabet: &Arc<Alphabet>, index: usize) -> Self {
        Self::power_of_generator(alphabet, index, 1)
    }

    pub fn power_of_generator(alphabet: &Arc<Alphabet>, index: usize, exponent: i64) -> Self {
        assert!(index < alphabet.rank(), "generator index {index} out of range");
        Self::from_syllables(alphabet, [Syllable { generator: index, exponent }])
    }

    /// Builds a word from arbitrary (not necessarily reduced) syllables.
    pub fn from_syllables<I>(alphabet: &Arc<Alphabet>, syllables: I) -> Self
    where
        I: IntoIterator<Item = Syllable>,
    {
        let mut stack = Vec::new();
        for s in syllables {
            assert!(s.generator < alphabet.rank(), "generator index out of range");
            push_syllable(&mut stack, s);
        }
        Word {
            alphabet: Arc::clone(alphabet),
            syllables: stack,
        }
    }

    pub fn from_letters<I>(alphabet: &Arc<Alphabet>, letters: I) -> Self
    where
        I: IntoIterator<Item = Letter>,
    {
        Self::from_syllables(
            alphabet,
            letters.into_iter().map(|l| Syllable {
                generator: l.generator,
                exponent: l.sign(),
            }),
        )
    }

    pub fn parse(text: &str, alphabet: &Arc<Alphabet>) -> Result<Self, WordError> {
        Parser::new(text, alphabet).parse()
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Number of letters.
    pub fn len(&self) -> usize {
        self.syllables.iter().map(|s| s.exponent.unsigned_abs() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn letters(&self) -> impl DoubleEndedIterator<Item = Letter> + '_ {
        self.syllables.iter().flat_map(|s| {
            let letter = Letter {
                generator: s.generator,
                inverse: s.exponent < 0,
            };
            std::iter::repeat(letter).take(s.exponent.unsigned_abs() as usize)
        })
    }

    /// Exponent sum of each generator: the image in the abelianization.
    pub fn exponent_sums(&self) -> Vec<i64> {
        let mut sums = vec![0; self.alphabet.rank()];
        for s in &self.syllables {
            sums[s.generator] += s.exponent;
        }
        sums
    }

    pub fn try_mul(&self, other: &Word) -> Result<Word, WordError> {
        check_alphabet(&self.alphabet, &other.alphabet)?;
        let mut stack = self.syllables.clone();
        for &s in &other.syllables {
            push_syllable(&mut stack, s);
        }
        Ok(Word {
            alphabet: Arc::clone(&self.alphabet),
            syllables: stack,
        })
    }

    pub fn inverse(&self) -> Word {
        Word {
            alphabet: Arc::clone(&self.alphabet),
            syllables: self
                .syllables
                .iter()
                .rev()
                .map(|s| Syllable {
                    generator: s.generator,
                    exponent: -s.exponent,
                })
                .collect(),
        }
    }

    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut result = Word::identity(&self.alphabet);
        for _ in 0..k.unsigned_abs() {
            result = &result * &base;
        }
        result
    }

    /// Right conjugation `by^-1 · self · by`.
    pub fn conjugate(&self, by: &Word) -> Result<Word, WordError> {
        by.inverse().try_mul(self)?.try_mul(by)
    }

    /// `[a, b] = a b a^-1 b^-1`.
    pub fn commutator(a: &Word, b: &Word) -> Result<Word, WordError> {
        a.try_mul(b)?.try_mul(&a.inverse())?.try_mul(&b.inverse())
    }

    /// Same syllables reinterpreted over another alphabet of equal rank.
    pub fn relabel(&self, alphabet: &Arc<Alphabet>) -> Result<Word, WordError> {
        if alphabet.rank() != self.alphabet.rank() {
            return Err(WordError::AlphabetMismatch {
                left: self.alphabet.to_string(),
                right: alphabet.to_string(),
            });
        }
        Ok(Word {
            alphabet: Arc::clone(alphabet),
            syllables: self.syllables.clone(),
        })
    }
}

/// Panics on alphabet mismatch; use [`Word::try_mul`] for the checked form.
impl Mul for &Word {
    type Output = Word;

    fn mul(self, rhs: &Word) -> Word {
        self.try_mul(rhs).expect("alphabet mismatch in word product")
    }
}

impl Mul for Word {
    type Output = Word;

    fn mul(self, rhs: Word) -> Word {
        &self * &rhs
    }
}

impl PartialEq for Word {
    fn eq(&self, other: &Self) -> bool {
        self.syllables == other.syllables && same_alphabet(&self.alphabet, &other.alphabet)
    }
}

impl Eq for Word {}

impl Hash for Word {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.syllables.hash(state);
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Shortlex on letters would be nicer to read but syllable order is cheaper;
/// it is only used to key sorted maps.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.syllables
            .cmp(&other.syllables)
            .then_with(|| {
                if same_alphabet(&self.alphabet, &other.alphabet) {
                    Ordering::Equal
                } else {
                    self.alphabet.cmp(&other.alphabet)
                }
            })
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return f.write_str("1");
        }
        for (i, s) in self.syllables.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(self.alphabet.name(s.generator))?;
            if s.exponent != 1 {
                write!(f, "^{}", s.exponent)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

struct Parser<'a> {
    text: &'a str,
    bytes: &'a [u8],
    pos: usize,
    alphabet: &'a Arc<Alphabet>,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, alphabet: &'a Arc<Alphabet>) -> Self {
        Parser {
            text,
            bytes: text.as_bytes(),
            pos: 0,
            alphabet,
        }
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, WordError> {
        Err(WordError::Syntax {
            position: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) -> bool {
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        self.pos > start
    }

    fn parse(mut self) -> Result<Word, WordError> {
        self.skip_ws();
        if self.pos == self.bytes.len() {
            return self.error("empty input (write 1 for the identity)");
        }
        let mut syllables = Vec::new();
        loop {
            syllables.extend(self.term()?);
            let had_ws = self.skip_ws();
            if self.pos == self.bytes.len() {
                break;
            }
            if self.bytes[self.pos] == b'*' {
                self.pos += 1;
                self.skip_ws();
                if self.pos == self.bytes.len() {
                    return self.error("expected a term after '*'");
                }
            } else if !had_ws {
                return self.error(format!(
                    "unexpected character {:?}",
                    self.text[self.pos..].chars().next().unwrap()
                ));
            }
        }
        Ok(Word::from_syllables(self.alphabet, syllables))
    }

    /// A generator power, or `1` standing for the identity.
    fn term(&mut self) -> Result<Option<Syllable>, WordError> {
        let start = self.pos;
        if self.bytes.get(self.pos) == Some(&b'1')
            && !self.bytes.get(self.pos + 1).is_some_and(|c| c.is_ascii_alphanumeric() || *c == b'^')
        {
            self.pos += 1;
            return Ok(None);
        }
        match self.bytes.get(self.pos) {
            Some(c) if c.is_ascii_alphabetic() => self.pos += 1,
            _ => return self.error("expected a generator name"),
        }
        while self.pos < self.bytes.len()
            && (self.bytes[self.pos].is_ascii_alphanumeric() || self.bytes[self.pos] == b'_')
        {
            self.pos += 1;
        }
        let name = &self.text[start..self.pos];
        let generator = self
            .alphabet
            .index_of(name)
            .ok_or_else(|| WordError::UnknownGenerator {
                name: name.to_string(),
                position: start,
            })?;
        let mut exponent = 1;
        if self.bytes.get(self.pos) == Some(&b'^') {
            self.pos += 1;
            let num_start = self.pos;
            if self.bytes.get(self.pos) == Some(&b'-') {
                self.pos += 1;
            }
            let digits_start = self.pos;
            while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if self.pos == digits_start {
                return self.error("expected an integer exponent");
            }
            exponent = match self.text[num_start..self.pos].parse::<i64>() {
                Ok(v) => v,
                Err(_) => {
                    self.pos = num_start;
                    return self.error("exponent out of range");
                }
            };
            if exponent == 0 {
                self.pos = num_start;
                return self.error("exponent must be nonzero");
            }
        }
        Ok(Some(Syllable { generator, exponent }))
    }
}
