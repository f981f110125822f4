//! Words in the free monoid over the generators, their dihedral segments,
//! glued products, and the unique-reduced-word criterion that cuts out the
//! subregular cell.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

use crate::diagram::{CoxeterDiagram, Gen};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WordError {
    #[error("word is empty")]
    EmptyWord,
    #[error("letter index {0} out of range for rank {1}")]
    LetterOutOfRange(u8, usize),
    #[error("letter {0} appears consecutively")]
    ConsecutiveLetter(u8),
    #[error("boundary mismatch: left word ends with {0}, right word starts with {1}")]
    BoundaryMismatch(u8, u8),
    #[error("word is not the unique reduced word of a subregular element")]
    NotSubregular,
    #[error("unknown letter {0:?} in word")]
    UnknownLetter(String),
}

/// A finite sequence of generator indices (possibly empty).
///
/// Orders by length first, then lexicographically; this is the canonical
/// order used for all deterministic output.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Word(Vec<Gen>);

impl Word {
    pub fn new(letters: Vec<Gen>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Alternating word (s,t)_k: s t s t ... with k letters.
    pub fn alternating(s: Gen, t: Gen, k: usize) -> Self {
        Word((0..k).map(|i| if i % 2 == 0 { s } else { t }).collect())
    }

    pub fn letters(&self) -> &[Gen] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<Gen> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<Gen> {
        self.0.last().copied()
    }

    pub fn reverse(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// The set of distinct letters, at most two of which may appear in a
    /// dihedral segment. Returns (first letter, first other letter) when the
    /// word is nonempty.
    pub fn support2(&self) -> Option<(Gen, Option<Gen>)> {
        let first = self.first()?;
        let other = self.0.iter().copied().find(|&g| g != first);
        Some((first, other))
    }

    /// True when the two words use the same letter set and both letter sets
    /// have at most two elements. Single letters count as contained.
    pub fn same_pair_support(&self, other: &Word) -> bool {
        match (self.support2(), other.support2()) {
            (Some((a, ao)), Some((b, bo))) => {
                let mut set = vec![a];
                if let Some(x) = ao {
                    set.push(x);
                }
                for g in [Some(b), bo].into_iter().flatten() {
                    if !set.contains(&g) {
                        set.push(g);
                    }
                }
                set.len() <= 2
            }
            _ => false,
        }
    }

    pub fn validate(&self, diagram: &CoxeterDiagram) -> Result<(), WordError> {
        for &g in &self.0 {
            if g as usize >= diagram.rank() {
                return Err(WordError::LetterOutOfRange(g, diagram.rank()));
            }
        }
        Ok(())
    }

    pub fn render(&self, diagram: &CoxeterDiagram) -> String {
        let parts: Vec<&str> = self.0.iter().map(|&g| diagram.label(g)).collect();
        if diagram.single_char_labels() {
            parts.concat()
        } else {
            parts.join(".")
        }
    }

    /// Parses a word from the CLI syntax: juxtaposed characters when all
    /// labels are single characters, dot-separated labels otherwise.
    pub fn parse(src: &str, diagram: &CoxeterDiagram) -> Result<Word, WordError> {
        let mut letters = Vec::new();
        if diagram.single_char_labels() && !src.contains('.') {
            for ch in src.chars() {
                let label = ch.to_string();
                let g = diagram
                    .gen_by_label(&label)
                    .ok_or(WordError::UnknownLetter(label))?;
                letters.push(g);
            }
        } else {
            for part in src.split('.') {
                if part.is_empty() {
                    continue;
                }
                let g = diagram
                    .gen_by_label(part)
                    .ok_or_else(|| WordError::UnknownLetter(part.to_string()))?;
                letters.push(g);
            }
        }
        Ok(Word(letters))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &g in &self.0 {
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

impl From<&[Gen]> for Word {
    fn from(letters: &[Gen]) -> Self {
        Word(letters.to_vec())
    }
}

impl<const N: usize> From<[Gen; N]> for Word {
    fn from(letters: [Gen; N]) -> Self {
        Word(letters.to_vec())
    }
}

/// Splits a word into its dihedral segments: the maximal contiguous subwords
/// involving at most two letters. Adjacent segments overlap in exactly their
/// shared boundary letter, so the glued product of the segments is the word.
pub fn dihedral_segments(w: &Word) -> Result<Vec<Word>, WordError> {
    let letters = w.letters();
    if letters.is_empty() {
        return Err(WordError::EmptyWord);
    }
    for pair in letters.windows(2) {
        if pair[0] == pair[1] {
            return Err(WordError::ConsecutiveLetter(pair[0]));
        }
    }
    if letters.len() == 1 {
        return Ok(vec![w.clone()]);
    }
    let mut segments = Vec::new();
    let mut start = 0;
    while start + 1 < letters.len() {
        let (a, b) = (letters[start], letters[start + 1]);
        let mut end = start + 1;
        while end + 1 < letters.len() && (letters[end + 1] == a || letters[end + 1] == b) {
            end += 1;
        }
        segments.push(Word(letters[start..=end].to_vec()));
        start = end;
    }
    Ok(segments)
}

/// Concatenates two words sharing a boundary letter, deleting one copy of
/// the shared letter.
pub fn glued_product(x: &Word, y: &Word) -> Result<Word, WordError> {
    let last = x.last().ok_or(WordError::EmptyWord)?;
    let first = y.first().ok_or(WordError::EmptyWord)?;
    if last != first {
        return Err(WordError::BoundaryMismatch(last, first));
    }
    let mut letters = x.letters().to_vec();
    letters.extend_from_slice(&y.letters()[1..]);
    Ok(Word(letters))
}

/// Glues a nonempty sequence of words left to right.
pub fn glue_all(words: &[Word]) -> Result<Word, WordError> {
    let mut iter = words.iter();
    let mut acc = iter.next().ok_or(WordError::EmptyWord)?.clone();
    for w in iter {
        acc = glued_product(&acc, w)?;
    }
    Ok(acc)
}

/// The subregular criterion: a word is the unique reduced word of a
/// non-identity group element exactly when it is nonempty, no letter repeats
/// consecutively, and every dihedral segment (s,t)_k satisfies k < m(s,t).
pub fn is_subregular(w: &Word, diagram: &CoxeterDiagram) -> bool {
    if w.is_empty() || w.validate(diagram).is_err() {
        return false;
    }
    let segments = match dihedral_segments(w) {
        Ok(s) => s,
        Err(_) => return false,
    };
    segments.iter().all(|seg| match seg.support2() {
        Some((s, Some(t))) => diagram.weight(s, t).exceeds(seg.len()),
        Some((_, None)) => seg.len() == 1,
        None => false,
    })
}

/// A validated element of the subregular cell: a nonempty word that is the
/// unique reduced word of its group element.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct SubregularElement {
    word: Word,
}

impl SubregularElement {
    pub fn new(word: Word, diagram: &CoxeterDiagram) -> Result<Self, WordError> {
        if is_subregular(&word, diagram) {
            Ok(SubregularElement { word })
        } else {
            Err(WordError::NotSubregular)
        }
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn first(&self) -> Gen {
        self.word.first().expect("subregular words are nonempty")
    }

    pub fn last(&self) -> Gen {
        self.word.last().expect("subregular words are nonempty")
    }

    /// The reduced word of the inverse element is the reversal.
    pub fn inverse(&self) -> SubregularElement {
        SubregularElement {
            word: self.word.reverse(),
        }
    }

    pub fn parse(src: &str, diagram: &CoxeterDiagram) -> Result<Self, WordError> {
        SubregularElement::new(Word::parse(src, diagram)?, diagram)
    }
}
