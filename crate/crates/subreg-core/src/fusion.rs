//! Verlinde algebras and free fusion rings, together with the letter
//! encodings that match specific boxes of the subregular ring: words over
//! {a, b} for the triangle with an infinite edge, and matrix-unit letters
//! e_ij for the star-over-a-path family.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::diagram::{CoxeterDiagram, Gen, Weight};
use crate::jring::JringError;
use crate::word::{glue_all, SubregularElement, Word, WordError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FusionError {
    #[error("index {0} out of range 1..={1}")]
    IndexOutOfRange(u32, u32),
    #[error("n must be at least 2")]
    InvalidN,
    #[error("element does not lie in the required box")]
    NotInBox,
    #[error("letter index {0} is not valid for this fusion set")]
    InvalidLetter(usize),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Jring(#[from] JringError),
}

// ---------------------------------------------------------------------------
// Verlinde algebras

/// An element of the weight-M Verlinde algebra: a combination of L_k with
/// 1 <= k <= M-1. Odd-part elements use only odd k.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VerlindeElement {
    m: Weight,
    terms: BTreeMap<u32, i64>,
}

impl VerlindeElement {
    pub fn zero(m: Weight) -> Self {
        VerlindeElement {
            m,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(k: u32, m: Weight) -> Result<Self, FusionError> {
        check_index(k, m)?;
        let mut out = VerlindeElement::zero(m);
        out.add_term(k, 1);
        Ok(out)
    }

    pub fn weight(&self) -> Weight {
        self.m
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, i64)> + '_ {
        self.terms.iter().map(|(&k, &c)| (k, c))
    }

    pub fn add_term(&mut self, k: u32, c: i64) {
        use std::collections::btree_map::Entry;
        if c == 0 {
            return;
        }
        match self.terms.entry(k) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if *e.get() == 0 {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    /// Bilinear extension of the truncated Clebsch-Gordan rule.
    pub fn mul(&self, other: &VerlindeElement) -> Result<VerlindeElement, FusionError> {
        let mut out = VerlindeElement::zero(self.m);
        for (k, ck) in self.terms() {
            for (l, cl) in other.terms() {
                for (z, cz) in verlinde_mul(k, l, self.m)?.terms() {
                    out.add_term(z, ck * cl * cz);
                }
            }
        }
        Ok(out)
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        self.terms()
            .map(|(k, c)| format!("{c}*L{k}"))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Display for VerlindeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

fn check_index(k: u32, m: Weight) -> Result<(), FusionError> {
    let ok = match m {
        Weight::Finite(m) => k >= 1 && k < m,
        Weight::Infinite => k >= 1,
    };
    if ok {
        Ok(())
    } else {
        Err(FusionError::IndexOutOfRange(
            k,
            m.finite().map(|m| m - 1).unwrap_or(u32::MAX),
        ))
    }
}

/// L_k L_l = sum of L_{k+l-1-2d} for d from max(k+l-M, 0) to min(k,l)-1.
/// The odd part is closed: odd k, l produce only odd indices.
pub fn verlinde_mul(k: u32, l: u32, m: Weight) -> Result<VerlindeElement, FusionError> {
    check_index(k, m)?;
    check_index(l, m)?;
    let lower = match m {
        Weight::Finite(m) => (k + l).saturating_sub(m),
        Weight::Infinite => 0,
    };
    let upper = k.min(l) - 1;
    let mut out = VerlindeElement::zero(m);
    for d in lower..=upper {
        out.add_term(k + l - 1 - 2 * d, 1);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Fusion sets and free fusion rings

/// A letter set with an involution and a partial fusion map.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FusionSet {
    labels: Vec<String>,
    bar: Vec<usize>,
    fusion: Vec<Option<usize>>, // n*n, row major
}

impl FusionSet {
    /// Builds a fusion set from raw tables: `bar` must be an involution and
    /// `fusion` a row-major n-by-n table of optional letter indices.
    pub fn from_parts(
        labels: Vec<String>,
        bar: Vec<usize>,
        fusion: Vec<Option<usize>>,
    ) -> Result<Self, FusionError> {
        let n = labels.len();
        if bar.len() != n || fusion.len() != n * n {
            return Err(FusionError::InvalidN);
        }
        for (i, &b) in bar.iter().enumerate() {
            if b >= n || bar[b] != i {
                return Err(FusionError::InvalidLetter(b));
            }
        }
        for &f in fusion.iter().flatten() {
            if f >= n {
                return Err(FusionError::InvalidLetter(f));
            }
        }
        Ok(FusionSet {
            labels,
            bar,
            fusion,
        })
    }

    fn new(labels: Vec<String>, bar: Vec<usize>, fusion: Vec<Option<usize>>) -> Self {
        FusionSet::from_parts(labels, bar, fusion).expect("built-in fusion sets are valid")
    }

    pub fn letter_count(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn letter_by_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn bar_letter(&self, i: usize) -> usize {
        self.bar[i]
    }

    pub fn fuse(&self, i: usize, j: usize) -> Option<usize> {
        self.fusion[i * self.labels.len() + j]
    }

    /// Involution extended to words: reverse and bar each letter.
    pub fn bar_word(&self, w: &FusionWord) -> FusionWord {
        FusionWord(w.0.iter().rev().map(|&i| self.bar[i]).collect())
    }

    pub fn render_word(&self, w: &FusionWord) -> String {
        if w.0.is_empty() {
            return "()".to_string();
        }
        let parts: Vec<&str> = w.0.iter().map(|&i| self.label(i)).collect();
        if self.labels.iter().all(|l| l.chars().count() == 1) {
            parts.concat()
        } else {
            parts.join(".")
        }
    }
}

/// Singleton letter with trivial involution and empty fusion.
pub fn fusion_set_o() -> FusionSet {
    FusionSet::new(vec!["a".into()], vec![0], vec![None])
}

/// Two letters swapped by the involution, all fusions empty.
pub fn fusion_set_u() -> FusionSet {
    FusionSet::new(
        vec!["a".into(), "b".into()],
        vec![1, 0],
        vec![None, None, None, None],
    )
}

/// Matrix-unit letters e_ij, i,j in [n]: bar transposes and fusion composes
/// like matrix units.
pub fn fusion_set_z(n: usize) -> Result<FusionSet, FusionError> {
    if n < 2 {
        return Err(FusionError::InvalidN);
    }
    let labels: Vec<String> = (1..=n)
        .flat_map(|i| (1..=n).map(move |j| format!("e{i}{j}")))
        .collect();
    let idx = |i: usize, j: usize| (i - 1) * n + (j - 1);
    let mut bar = vec![0; n * n];
    for i in 1..=n {
        for j in 1..=n {
            bar[idx(i, j)] = idx(j, i);
        }
    }
    let mut fusion = vec![None; n * n * n * n];
    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                for l in 1..=n {
                    if j == k {
                        fusion[idx(i, j) * n * n + idx(k, l)] = Some(idx(i, l));
                    }
                }
            }
        }
    }
    Ok(FusionSet::new(labels, bar, fusion))
}

/// A word in the free monoid over a fusion set. Orders by length, then
/// lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct FusionWord(pub Vec<usize>);

impl FusionWord {
    pub fn empty() -> Self {
        FusionWord(Vec::new())
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl PartialOrd for FusionWord {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FusionWord {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

/// An integer combination of fusion words.
#[derive(Clone, Debug)]
pub struct FreeFusionElement {
    set: Arc<FusionSet>,
    terms: BTreeMap<FusionWord, i64>,
}

impl PartialEq for FreeFusionElement {
    fn eq(&self, other: &Self) -> bool {
        self.set == other.set && self.terms == other.terms
    }
}

impl Eq for FreeFusionElement {}

impl FreeFusionElement {
    pub fn zero(set: Arc<FusionSet>) -> Self {
        FreeFusionElement {
            set,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(w: FusionWord, set: Arc<FusionSet>) -> Result<Self, FusionError> {
        for &i in w.letters() {
            if i >= set.letter_count() {
                return Err(FusionError::InvalidLetter(i));
            }
        }
        let mut out = FreeFusionElement::zero(set);
        out.add_term(w, 1);
        Ok(out)
    }

    pub fn set(&self) -> &Arc<FusionSet> {
        &self.set
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FusionWord, i64)> {
        self.terms.iter().map(|(w, &c)| (w, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: FusionWord, c: i64) {
        use std::collections::btree_map::Entry;
        if c == 0 {
            return;
        }
        match self.terms.entry(w) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if *e.get() == 0 {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn add(&self, other: &FreeFusionElement) -> FreeFusionElement {
        let mut out = self.clone();
        for (w, c) in other.terms() {
            out.add_term(w.clone(), c);
        }
        out
    }

    pub fn mul(&self, other: &FreeFusionElement) -> FreeFusionElement {
        let mut out = FreeFusionElement::zero(self.set.clone());
        for (v, cv) in self.terms() {
            for (w, cw) in other.terms() {
                for (z, cz) in ffr_mul(v, w, &self.set).terms() {
                    out.add_term(z.clone(), cv * cw * cz);
                }
            }
        }
        out
    }

    pub fn bar(&self) -> FreeFusionElement {
        let mut out = FreeFusionElement::zero(self.set.clone());
        for (w, c) in self.terms() {
            out.add_term(self.set.bar_word(w), c);
        }
        out
    }

    /// Coefficient on the empty word, the distinguished basis element.
    pub fn tau(&self) -> i64 {
        self.terms.get(&FusionWord::empty()).copied().unwrap_or(0)
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        self.terms()
            .map(|(w, c)| format!("{}*{}", c, self.set.render_word(w)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Free fusion ring product of two basis words: sum over all splittings
/// v = xy, w = bar(y)z of the juxtaposition xz plus the boundary fusion
/// x o z when defined and both parts nonempty.
pub fn ffr_mul(v: &FusionWord, w: &FusionWord, set: &Arc<FusionSet>) -> FreeFusionElement {
    let mut out = FreeFusionElement::zero(set.clone());
    let vl = v.letters();
    let wl = w.letters();
    for cut in 0..=vl.len().min(wl.len()) {
        let y = &vl[vl.len() - cut..];
        let matches = y
            .iter()
            .rev()
            .map(|&i| set.bar_letter(i))
            .eq(wl[..cut].iter().copied());
        if !matches {
            continue;
        }
        let x = &vl[..vl.len() - cut];
        let z = &wl[cut..];
        let mut juxtaposed = x.to_vec();
        juxtaposed.extend_from_slice(z);
        out.add_term(FusionWord(juxtaposed), 1);
        if let (Some(&xk), Some(&z1)) = (x.last(), z.first()) {
            if let Some(fused) = set.fuse(xk, z1) {
                let mut word = x[..x.len() - 1].to_vec();
                word.push(fused);
                word.extend_from_slice(&z[1..]);
                out.add_term(FusionWord(word), 1);
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// The triangle with an infinite edge: words over {a, b}

/// Generators 0, 1, 2 with m(0,1) = m(0,2) = 3 and m(1,2) = infinite.
pub fn thm_d_diagram() -> Arc<CoxeterDiagram> {
    Arc::new(
        CoxeterDiagram::new(
            vec!["0", "1", "2"],
            &[
                (0, 1, Weight::Finite(3)),
                (0, 2, Weight::Finite(3)),
                (1, 2, Weight::Infinite),
            ],
        )
        .expect("valid diagram"),
    )
}

const LETTER_A: usize = 0;
const LETTER_B: usize = 1;

/// Reads the {a, b} word off a box element at 0: an `a` for each step from
/// 1 to 2 in the walk, a `b` for each step from 2 to 1.
pub fn encode_unitary(x: &SubregularElement) -> Result<FusionWord, FusionError> {
    if x.first() != 0 || x.last() != 0 {
        return Err(FusionError::NotInBox);
    }
    let mut letters = Vec::new();
    for pair in x.word().letters().windows(2) {
        match (pair[0], pair[1]) {
            (1, 2) => letters.push(LETTER_A),
            (2, 1) => letters.push(LETTER_B),
            _ => {}
        }
    }
    Ok(FusionWord(letters))
}

/// Rebuilds the box element from its {a, b} word. The walk is forced: it
/// visits 0 exactly at the start, the end, and between repeated letters.
pub fn decode_unitary(
    w: &FusionWord,
    d: &Arc<CoxeterDiagram>,
) -> Result<SubregularElement, FusionError> {
    let letters = w.letters();
    for &i in letters {
        if i > LETTER_B {
            return Err(FusionError::InvalidLetter(i));
        }
    }
    let mut seq: Vec<Gen> = vec![0];
    if !letters.is_empty() {
        match letters[0] {
            LETTER_A => seq.extend([1, 2]),
            _ => seq.extend([2, 1]),
        }
        for pair in letters.windows(2) {
            if pair[1] == pair[0] {
                // the walk must return to 0 and come back around
                match pair[1] {
                    LETTER_A => seq.extend([0, 1, 2]),
                    _ => seq.extend([0, 2, 1]),
                }
            } else {
                match pair[1] {
                    LETTER_A => seq.push(2),
                    _ => seq.push(1),
                }
            }
        }
        seq.push(0);
    }
    Ok(SubregularElement::new(Word::new(seq), d)?)
}

// ---------------------------------------------------------------------------
// The star over a path: matrix-unit letters e_ij

/// Generators 0..=n with m(0,i) infinite for i in [n], m(i,i+1) = 3 along
/// the bottom path, and 2 otherwise.
pub fn thm_e_diagram(n: usize) -> Result<Arc<CoxeterDiagram>, FusionError> {
    if n < 2 {
        return Err(FusionError::InvalidN);
    }
    let labels: Vec<String> = (0..=n).map(|i| i.to_string()).collect();
    let mut entries = Vec::new();
    for i in 1..=n {
        entries.push((0, i, Weight::Infinite));
    }
    for i in 1..n {
        entries.push((i, i + 1, Weight::Finite(3)));
    }
    Ok(Arc::new(
        CoxeterDiagram::new(labels, &entries).expect("valid diagram"),
    ))
}

/// The simply-laced path on n generators labeled 1..=n, the bottom part of
/// the star diagram.
pub fn bottom_path_diagram(n: usize) -> Result<Arc<CoxeterDiagram>, FusionError> {
    if n < 2 {
        return Err(FusionError::InvalidN);
    }
    let labels: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let entries: Vec<(usize, usize, Weight)> =
        (0..n - 1).map(|i| (i, i + 1, Weight::Finite(3))).collect();
    Ok(Arc::new(
        CoxeterDiagram::new(labels, &entries).expect("valid diagram"),
    ))
}

fn monotone_path(i: usize, j: usize) -> Vec<usize> {
    if i <= j {
        (i..=j).collect()
    } else {
        (j..=i).rev().collect()
    }
}

/// The walk for one letter e_ij: leave 0, travel the bottom path from i to
/// j, return to 0.
fn letter_word(n: usize, letter: usize) -> Result<Vec<Gen>, FusionError> {
    if letter >= n * n {
        return Err(FusionError::InvalidLetter(letter));
    }
    let i = letter / n + 1;
    let j = letter % n + 1;
    let mut seq: Vec<Gen> = vec![0];
    seq.extend(monotone_path(i, j).into_iter().map(|v| v as Gen));
    seq.push(0);
    Ok(seq)
}

/// Glues the letter images of a word over the e_ij alphabet into a box
/// element at 0. The empty word decodes to the single letter 0.
pub fn decode_amalg(
    n: usize,
    w: &FusionWord,
    d: &Arc<CoxeterDiagram>,
) -> Result<SubregularElement, FusionError> {
    if n < 2 {
        return Err(FusionError::InvalidN);
    }
    let mut pieces = Vec::new();
    for &letter in w.letters() {
        pieces.push(Word::new(letter_word(n, letter)?));
    }
    let word = if pieces.is_empty() {
        Word::new(vec![0])
    } else {
        glue_all(&pieces)?
    };
    Ok(SubregularElement::new(word, d)?)
}

/// Splits a box element at 0 into maximal 0-to-0 stretches and reads each
/// as a letter e_ij.
pub fn encode_amalg(n: usize, x: &SubregularElement) -> Result<FusionWord, FusionError> {
    if n < 2 {
        return Err(FusionError::InvalidN);
    }
    if x.first() != 0 || x.last() != 0 {
        return Err(FusionError::NotInBox);
    }
    let letters = x.word().letters();
    if letters.len() == 1 {
        return Ok(FusionWord::empty());
    }
    let zeros: Vec<usize> = (0..letters.len()).filter(|&p| letters[p] == 0).collect();
    let mut out = Vec::new();
    for pair in zeros.windows(2) {
        let inner = &letters[pair[0] + 1..pair[1]];
        if inner.is_empty() {
            return Err(FusionError::NotInBox);
        }
        let i = inner[0] as usize;
        let j = inner[inner.len() - 1] as usize;
        if i == 0 || i > n || j == 0 || j > n {
            return Err(FusionError::NotInBox);
        }
        let expected: Vec<Gen> = monotone_path(i, j).into_iter().map(|v| v as Gen).collect();
        if inner != expected {
            return Err(FusionError::NotInBox);
        }
        out.push((i - 1) * n + (j - 1));
    }
    Ok(FusionWord(out))
}

/// Path elements multiply like composable paths in the bottom subsystem:
/// t over the i-to-j path times t over the j-to-k path is t over the i-to-k
/// path. Verified by direct ring computation.
pub fn path_mult_check(n: usize, i: usize, j: usize, k: usize) -> Result<bool, FusionError> {
    if n < 2 || !(1..=n).contains(&i) || !(1..=n).contains(&j) || !(1..=n).contains(&k) {
        return Err(FusionError::InvalidN);
    }
    let d = bottom_path_diagram(n)?;
    let word_of = |from: usize, to: usize| {
        Word::new(
            monotone_path(from, to)
                .into_iter()
                .map(|v| (v - 1) as Gen)
                .collect(),
        )
    };
    let t_ij = crate::jring::JElement::t(word_of(i, j), &d)?;
    let t_jk = crate::jring::JElement::t(word_of(j, k), &d)?;
    let t_ik = crate::jring::JElement::t(word_of(i, k), &d)?;
    Ok(t_ij.mul(&t_jk)? == t_ik)
}
