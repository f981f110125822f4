//! The based ring spanned by the subregular cell.
//!
//! Basis elements t_x are indexed by unique reduced words. Products are
//! computed purely combinatorially: a basis pair multiplies to zero unless
//! the boundary letters match; factor sequences of dihedral segments are
//! then rewritten with the truncated Clebsch-Gordan rule until every
//! adjacent pair has distinct supports, at which point the factors glue back
//! into a single basis word.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::diagram::{CoxeterDiagram, Gen, Weight};
use crate::word::{dihedral_segments, glue_all, SubregularElement, Word, WordError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum JringError {
    #[error("operands live over different diagrams")]
    DiagramMismatch,
    #[error("factors are not alternating words in a common generator pair")]
    SupportMismatch,
    #[error("boundary mismatch: left factor ends with {0}, right factor starts with {1}")]
    BoundaryMismatch(Gen, Gen),
    #[error(transparent)]
    Word(#[from] WordError),
}

/// A finite integer combination of basis elements t_x, x in the subregular
/// cell of a fixed diagram. Zero coefficients are never stored.
#[derive(Clone, Debug)]
pub struct JElement {
    diagram: Arc<CoxeterDiagram>,
    terms: BTreeMap<SubregularElement, i64>,
}

impl PartialEq for JElement {
    fn eq(&self, other: &Self) -> bool {
        self.diagram == other.diagram && self.terms == other.terms
    }
}

impl Eq for JElement {}

impl JElement {
    pub fn zero(diagram: Arc<CoxeterDiagram>) -> Self {
        JElement {
            diagram,
            terms: BTreeMap::new(),
        }
    }

    /// The basis element t_x.
    pub fn basis(x: SubregularElement, diagram: Arc<CoxeterDiagram>) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(x, 1);
        JElement { diagram, terms }
    }

    /// Builds t_x from a raw word, validating it against the diagram.
    pub fn t(word: Word, diagram: &Arc<CoxeterDiagram>) -> Result<Self, JringError> {
        let x = SubregularElement::new(word, diagram)?;
        Ok(JElement::basis(x, diagram.clone()))
    }

    /// Parses t_x from the CLI word syntax.
    pub fn t_parse(src: &str, diagram: &Arc<CoxeterDiagram>) -> Result<Self, JringError> {
        JElement::t(Word::parse(src, diagram)?, diagram)
    }

    pub fn diagram(&self) -> &Arc<CoxeterDiagram> {
        &self.diagram
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SubregularElement, i64)> {
        self.terms.iter().map(|(x, &c)| (x, c))
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, x: &SubregularElement) -> i64 {
        self.terms.get(x).copied().unwrap_or(0)
    }

    pub fn add_term(&mut self, x: SubregularElement, c: i64) {
        use std::collections::btree_map::Entry;
        if c == 0 {
            return;
        }
        match self.terms.entry(x) {
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

    pub fn add(&self, other: &JElement) -> Result<JElement, JringError> {
        if self.diagram != other.diagram {
            return Err(JringError::DiagramMismatch);
        }
        let mut out = self.clone();
        for (x, c) in other.terms() {
            out.add_term(x.clone(), c);
        }
        Ok(out)
    }

    pub fn scale(&self, c: i64) -> JElement {
        let mut out = JElement::zero(self.diagram.clone());
        if c != 0 {
            for (x, cx) in self.terms() {
                out.terms.insert(x.clone(), cx * c);
            }
        }
        out
    }

    /// Bilinear product: zero on boundary mismatch, glue on distinct
    /// boundary supports, truncated Clebsch-Gordan rewriting otherwise.
    pub fn mul(&self, other: &JElement) -> Result<JElement, JringError> {
        if self.diagram != other.diagram {
            return Err(JringError::DiagramMismatch);
        }
        let mut out = JElement::zero(self.diagram.clone());
        for (x, cx) in self.terms() {
            for (y, cy) in other.terms() {
                for (z, cz) in mul_basis_words(x.word(), y.word(), &self.diagram) {
                    out.add_term(
                        SubregularElement::new(z, &self.diagram)
                            .expect("rewriting preserves the subregular criterion"),
                        cx * cy * cz,
                    );
                }
            }
        }
        Ok(out)
    }

    /// The anti-involution t_x -> t_{x^{-1}}: every basis word reversed.
    pub fn anti_involution(&self) -> JElement {
        let mut out = JElement::zero(self.diagram.clone());
        for (x, c) in self.terms() {
            out.add_term(x.inverse(), c);
        }
        out
    }

    /// Sum of coefficients on length-1 words: the trace against the
    /// distinguished index set.
    pub fn tau(&self) -> i64 {
        self.terms()
            .filter(|(x, _)| x.len() == 1)
            .map(|(_, c)| c)
            .sum()
    }

    /// Keeps the terms whose words start with `s` and end with `t`.
    pub fn project_box(&self, s: Gen, t: Gen) -> JElement {
        let mut out = JElement::zero(self.diagram.clone());
        for (x, c) in self.terms() {
            if x.first() == s && x.last() == t {
                out.add_term(x.clone(), c);
            }
        }
        out
    }

    /// Canonical rendering: `c*word` terms joined by ` + `, words in
    /// (length, lex) order; `0` for the zero element.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        self.terms()
            .map(|(x, c)| format!("{}*{}", c, x.word().render(&self.diagram)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Display for JElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

/// The unit of the subregular ring: the sum of t_s over all generators.
pub fn unit_jc(diagram: &Arc<CoxeterDiagram>) -> JElement {
    let mut out = JElement::zero(diagram.clone());
    for s in diagram.generators() {
        let x = SubregularElement::new(Word::new(vec![s]), diagram)
            .expect("single letters are subregular");
        out.add_term(x, 1);
    }
    out
}

/// Truncated Clebsch-Gordan product of two alternating words over a common
/// generator pair with matching boundary letter. Every output coefficient is
/// 1; lengths run over k+l-1-2d for d from max(k+l-M, 0) to min(k,l)-1.
pub fn mul_dihedral(
    x: &SubregularElement,
    y: &SubregularElement,
    diagram: &Arc<CoxeterDiagram>,
) -> Result<JElement, JringError> {
    if !x.word().same_pair_support(y.word()) {
        return Err(JringError::SupportMismatch);
    }
    if x.last() != y.first() {
        return Err(JringError::BoundaryMismatch(x.last(), y.first()));
    }
    let mut out = JElement::zero(diagram.clone());
    for z in clebsch_gordan(x.word(), y.word(), diagram) {
        out.add_term(
            SubregularElement::new(z, diagram).expect("truncated lengths stay below m"),
            1,
        );
    }
    Ok(out)
}

/// Core of the dihedral rule. Inputs are alternating words over a common
/// pair with matching boundary letter; output words start with the first
/// letter of `x` and end with the last letter of `y`, all coefficient 1.
fn clebsch_gordan(x: &Word, y: &Word, d: &CoxeterDiagram) -> Vec<Word> {
    let k = x.len();
    let l = y.len();
    let u = x.first().expect("nonempty");
    // partner letter of the shared support; for a pure single-letter
    // product the alternation never reaches it
    let other = x
        .letters()
        .iter()
        .chain(y.letters())
        .copied()
        .find(|&g| g != u)
        .unwrap_or(u);
    let m = if other == u {
        Weight::Infinite
    } else {
        d.weight(u, other)
    };
    let lower = match m {
        Weight::Finite(m) => (k + l).saturating_sub(m as usize),
        Weight::Infinite => 0,
    };
    let upper = k.min(l) - 1;
    debug_assert!(lower <= upper, "the truncation window is never empty");
    let mut out = Vec::with_capacity(upper - lower + 1);
    for dd in lower..=upper {
        let len = k + l - 1 - 2 * dd;
        let z = Word::alternating(u, other, len);
        debug_assert_eq!(z.last(), y.last());
        out.push(z);
    }
    out
}

/// Product of two basis words as a coefficient map. Zero (empty map) when
/// the boundary letters differ.
fn mul_basis_words(x: &Word, y: &Word, d: &CoxeterDiagram) -> BTreeMap<Word, i64> {
    let mut out = BTreeMap::new();
    if x.last() != y.first() {
        return out;
    }
    let mut init = dihedral_segments(x).expect("basis words are subregular");
    init.extend(dihedral_segments(y).expect("basis words are subregular"));
    // each work item is a sequence of dihedral factors with matching
    // boundary letters; (factor count, total letters) drops on every step
    let mut stack = vec![init];
    while let Some(mut factors) = stack.pop() {
        while factors.len() > 1 {
            match factors.iter().position(|f| f.len() == 1) {
                Some(i) => {
                    factors.remove(i);
                }
                None => break,
            }
        }
        if factors.len() == 1 {
            let f = factors.pop().expect("nonempty");
            *out.entry(f).or_insert(0) += 1;
            continue;
        }
        match (0..factors.len() - 1).find(|&i| factors[i].same_pair_support(&factors[i + 1])) {
            Some(i) => {
                for z in clebsch_gordan(&factors[i], &factors[i + 1], d) {
                    let mut next = factors.clone();
                    next.splice(i..i + 2, [z]);
                    stack.push(next);
                }
            }
            None => {
                // adjacent supports all differ: the factors are exactly the
                // dihedral segments of their glued product
                let word = glue_all(&factors).expect("boundary letters match");
                *out.entry(word).or_insert(0) += 1;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::enumerate_cell;

    fn arc(d: CoxeterDiagram) -> Arc<CoxeterDiagram> {
        Arc::new(d)
    }

    fn dihedral(m: u32) -> Arc<CoxeterDiagram> {
        arc(CoxeterDiagram::dihedral(Weight::Finite(m)))
    }

    fn triangle_456() -> Arc<CoxeterDiagram> {
        arc(CoxeterDiagram::new(
            vec!["1", "2", "3"],
            &[
                (0, 1, Weight::Finite(4)),
                (0, 2, Weight::Finite(5)),
                (1, 2, Weight::Finite(6)),
            ],
        )
        .unwrap())
    }

    fn chain_44() -> Arc<CoxeterDiagram> {
        arc(CoxeterDiagram::new(
            vec!["1", "2", "3"],
            &[(0, 1, Weight::Finite(4)), (1, 2, Weight::Finite(4))],
        )
        .unwrap())
    }

    fn t(src: &str, d: &Arc<CoxeterDiagram>) -> JElement {
        JElement::t_parse(src, d).unwrap()
    }

    #[test]
    fn basis_constructor() {
        let d = dihedral(7);
        assert_eq!(t("1", &d).render(), "1*1");
        assert_eq!(t("121", &d).render(), "1*121");
        assert!(JElement::t(Word::empty(), &d).is_err());
    }

    #[test]
    fn dihedral_products_at_m7() {
        // with s=1, t=2: stst*tst, stst*tsts, tst*tststs
        let d = dihedral(7);
        let p = t("1212", &d).mul(&t("212", &d)).unwrap();
        assert_eq!(p.render(), "1*12 + 1*1212 + 1*121212");
        let p = t("1212", &d).mul(&t("2121", &d)).unwrap();
        assert_eq!(p.render(), "1*1 + 1*121 + 1*12121");
        let p = t("212", &d).mul(&t("212121", &d)).unwrap();
        assert_eq!(p.render(), "1*2121");
    }

    #[test]
    fn mul_dihedral_requires_common_support() {
        let d = triangle_456();
        let x = SubregularElement::parse("12", &d).unwrap();
        let y = SubregularElement::parse("23", &d).unwrap();
        assert_eq!(
            mul_dihedral(&x, &y, &d).unwrap_err(),
            JringError::SupportMismatch
        );
        let z = SubregularElement::parse("21", &d).unwrap();
        let w = SubregularElement::parse("21", &d).unwrap();
        assert_eq!(
            mul_dihedral(&z, &w, &d).unwrap_err(),
            JringError::BoundaryMismatch(0, 1)
        );
    }

    #[test]
    fn single_letter_absorption() {
        let d = dihedral(7);
        assert_eq!(t("1", &d).mul(&t("1", &d)).unwrap(), t("1", &d));
        let x = t("12121", &d);
        assert_eq!(t("1", &d).mul(&x).unwrap(), x);
        assert_eq!(x.mul(&t("1", &d)).unwrap(), x);
    }

    #[test]
    fn rank_three_worked_products() {
        let d = triangle_456();
        let p = t("123", &d).mul(&t("323213", &d)).unwrap();
        assert_eq!(p.render(), "1*123213 + 1*12323213");
        let p = t("123", &d).mul(&t("3213", &d)).unwrap();
        assert_eq!(p.render(), "1*13 + 1*1213 + 1*123213");
    }

    #[test]
    fn boundary_mismatch_kills_product() {
        let d = triangle_456();
        assert!(t("12", &d).mul(&t("13", &d)).unwrap().is_zero());
        assert_eq!(t("12", &d).mul(&t("13", &d)).unwrap().render(), "0");
    }

    #[test]
    fn distinct_supports_glue() {
        let d = triangle_456();
        let p = t("121", &d).mul(&t("13", &d)).unwrap();
        assert_eq!(p.render(), "1*1213");
    }

    #[test]
    fn counter_example_chain_law() {
        // t_m t_n = t_{|m-n|} + t_{m+n} with t_0 = t_1 + t_121
        let d = chain_44();
        let y = Word::parse("12321", &d).unwrap();
        let y_n = |n: usize| {
            let mut w = y.clone();
            for _ in 1..n {
                w = crate::word::glued_product(&w, &y).unwrap();
            }
            JElement::t(w, &d).unwrap()
        };
        let t0 = t("1", &d).add(&t("121", &d)).unwrap();
        for m in 1..=4usize {
            for n in 1..=4usize {
                let got = y_n(m).mul(&y_n(n)).unwrap();
                let diff = m.abs_diff(n);
                let expected = if diff == 0 {
                    t0.add(&y_n(m + n)).unwrap()
                } else {
                    y_n(diff).add(&y_n(m + n)).unwrap()
                };
                assert_eq!(got, expected, "m={m} n={n}");
            }
        }
        // t_x t_n = t_n and t_x^2 = t_1
        let x = t("121", &d);
        assert_eq!(x.mul(&x).unwrap(), t("1", &d));
        for n in 1..=4usize {
            assert_eq!(x.mul(&y_n(n)).unwrap(), y_n(n));
            assert_eq!(y_n(n).mul(&x).unwrap(), y_n(n));
        }
    }

    #[test]
    fn odd_triangle_doubled_product() {
        let d = arc(CoxeterDiagram::new(
            vec!["1", "2", "3"],
            &[
                (0, 1, Weight::Finite(3)),
                (0, 2, Weight::Finite(3)),
                (1, 2, Weight::Finite(4)),
            ],
        )
        .unwrap());
        let x = t("1231", &d);
        let y = t("1321", &d);
        let p = x.mul(&y).unwrap().mul(&x).unwrap();
        assert_eq!(p, x.scale(2));
        assert_eq!(p.render(), "2*1231");
    }

    #[test]
    fn anti_involution_reverses_words() {
        let d = triangle_456();
        assert_eq!(t("1231", &d).anti_involution().render(), "1*1321");
        assert_eq!(t("121", &d).anti_involution(), t("121", &d));
        // anti-multiplicativity on a worked pair
        let x = t("123", &d);
        let y = t("3213", &d);
        let lhs = x.mul(&y).unwrap().anti_involution();
        let rhs = y.anti_involution().mul(&x.anti_involution()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn unit_absorbs() {
        let d = triangle_456();
        let unit = unit_jc(&d);
        assert_eq!(unit.render(), "1*1 + 1*2 + 1*3");
        let x = t("12321", &d);
        assert_eq!(unit.mul(&x).unwrap(), x);
        assert_eq!(x.mul(&unit).unwrap(), x);
    }

    #[test]
    fn tau_detects_inverse_pairs() {
        let d = triangle_456();
        assert_eq!(t("1", &d).add(&t("121", &d).scale(2)).unwrap().tau(), 1);
        let x = t("1231", &d);
        let xi = x.anti_involution();
        assert_eq!(x.mul(&xi).unwrap().tau(), 1);
        assert_eq!(x.mul(&x).unwrap().tau(), 0);
    }

    #[test]
    fn project_box_filters() {
        let d = triangle_456();
        let a = t("121", &d)
            .add(&t("13", &d))
            .unwrap()
            .add(&t("1231", &d))
            .unwrap();
        assert_eq!(a.project_box(0, 0).render(), "1*121 + 1*1231");
        assert_eq!(a.project_box(0, 2).render(), "1*13");
        assert_eq!(a.project_box(1, 1).render(), "0");
    }

    #[test]
    fn support_law_and_positivity_on_small_cells() {
        for d in [dihedral(5), triangle_456(), chain_44()] {
            let cell = enumerate_cell(&d, 4);
            for x in &cell {
                for y in &cell {
                    let p = JElement::basis(x.clone(), d.clone())
                        .mul(&JElement::basis(y.clone(), d.clone()))
                        .unwrap();
                    if x.last() != y.first() {
                        assert!(p.is_zero());
                        continue;
                    }
                    for (z, c) in p.terms() {
                        assert!(c > 0);
                        assert_eq!(z.first(), x.first());
                        assert_eq!(z.last(), y.last());
                        assert!(z.len() <= x.len() + y.len());
                    }
                }
            }
        }
    }

    #[test]
    fn associativity_on_small_cells() {
        // exhaustive over all basis triples up to the length bound
        for (d, max_len) in [
            (dihedral(4), 6),
            (dihedral(7), 6),
            (triangle_456(), 4),
            (chain_44(), 4),
        ] {
            let cell = enumerate_cell(&d, max_len);
            for x in &cell {
                for y in &cell {
                    for z in &cell {
                        let tx = JElement::basis(x.clone(), d.clone());
                        let ty = JElement::basis(y.clone(), d.clone());
                        let tz = JElement::basis(z.clone(), d.clone());
                        let lhs = tx.mul(&ty).unwrap().mul(&tz).unwrap();
                        let rhs = tx.mul(&ty.mul(&tz).unwrap()).unwrap();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn diagram_mismatch_rejected() {
        let a = t("1", &dihedral(5));
        let b = t("1", &dihedral(7));
        assert_eq!(a.mul(&b).unwrap_err(), JringError::DiagramMismatch);
    }

    #[test]
    fn theorem_f_factorization_small() {
        let d = triangle_456();
        for x in enumerate_cell(&d, 6) {
            let segs = dihedral_segments(x.word()).unwrap();
            let mut acc = JElement::t(segs[0].clone(), &d).unwrap();
            for seg in &segs[1..] {
                acc = acc.mul(&JElement::t(seg.clone(), &d).unwrap()).unwrap();
            }
            assert_eq!(acc, JElement::basis(x.clone(), d.clone()));
        }
    }

    #[test]
    fn dihedral_closure_length_list() {
        // the output length list is {|k-l|+1, |k-l|+3, ..., k+l-1} minus
        // lengths r >= M and their mirrors 2M - r
        for m in 3..=8u32 {
            let d = dihedral(m);
            for k in 1..m as usize {
                for l in 1..m as usize {
                    let x = SubregularElement::new(Word::alternating(0, 1, k), &d).unwrap();
                    let start = if k % 2 == 0 { 1 } else { 0 };
                    let y =
                        SubregularElement::new(Word::alternating(start, 1 - start, l), &d).unwrap();
                    let got: Vec<usize> = mul_dihedral(&x, &y, &d)
                        .unwrap()
                        .terms()
                        .map(|(z, _)| z.len())
                        .collect();
                    let mut expected: Vec<usize> = (0..)
                        .map(|i| k.abs_diff(l) + 1 + 2 * i)
                        .take_while(|&r| r < k + l)
                        .collect();
                    let m = m as usize;
                    let deleted: Vec<usize> =
                        expected.iter().copied().filter(|&r| r >= m).collect();
                    expected.retain(|&r| r < m && !deleted.contains(&(2 * m - r)));
                    assert_eq!(got, expected, "m={m} k={k} l={l}");
                }
            }
        }
    }
}
