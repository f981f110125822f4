//! The subregular graph: a finite-state acceptor whose walks spell out the
//! unique reduced words of the subregular cell, one letter per vertex.
//!
//! Vertices are alternating words (s,t)_k with 0 < k < m(s,t). An edge
//! either extends the current dihedral segment by one letter or starts a new
//! two-letter segment whose first letter is the old segment's last letter.

use thiserror::Error;

use crate::diagram::{CoxeterDiagram, Gen, Weight};
use crate::word::{is_subregular, SubregularElement, Word};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AutomatonError {
    #[error("vertex sequence is not a walk on the subregular graph")]
    NotAWalk,
    #[error("word is not subregular")]
    NotSubregular,
    #[error("diagram is not irreducible (Coxeter graph disconnected)")]
    NotIrreducible,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum EdgeKind {
    /// (s,t)_{k-1} -> (s,t)_k
    Extend,
    /// start a new two-letter segment sharing the boundary letter
    NewSegment,
}

/// The subregular graph, materialized up to alternating length `k_cap`.
#[derive(Clone, Debug)]
pub struct SubregularGraph {
    vertices: Vec<Word>,
    /// out-edges per vertex, targets sorted
    edges: Vec<Vec<(usize, EdgeKind)>>,
}

/// True when `w` is a vertex: a nonempty alternating word (s,t)_k with
/// k < m(s,t) (single letters are always vertices).
fn is_vertex(w: &Word, d: &CoxeterDiagram) -> bool {
    if w.validate(d).is_err() {
        return false;
    }
    match w.support2() {
        Some((s, Some(t))) => {
            let alternating = w
                .letters()
                .iter()
                .enumerate()
                .all(|(i, &g)| g == if i % 2 == 0 { s } else { t });
            alternating && d.weight(s, t).exceeds(w.len())
        }
        Some((_, None)) => w.len() == 1,
        None => false,
    }
}

/// Classifies the directed pair (v, w), both assumed valid vertices.
fn edge_kind(v: &Word, w: &Word, d: &CoxeterDiagram) -> Option<EdgeKind> {
    if w.len() == v.len() + 1 && w.letters()[..v.len()] == *v.letters() && is_vertex(w, d) {
        return Some(EdgeKind::Extend);
    }
    if v.len() >= 2 && w.len() == 2 && v.last() == w.first() && !v.same_pair_support(w) {
        return Some(EdgeKind::NewSegment);
    }
    None
}

impl SubregularGraph {
    /// Builds the graph with per-pair alternating length capped at
    /// min(m(s,t) - 1, k_cap). Panics if `k_cap < 2`.
    pub fn build(d: &CoxeterDiagram, k_cap: usize) -> SubregularGraph {
        assert!(k_cap >= 2, "k_cap must be at least 2");
        let mut vertices: Vec<Word> = d.generators().map(|s| Word::new(vec![s])).collect();
        for s in d.generators() {
            for t in d.generators() {
                if s == t {
                    continue;
                }
                let m = d.weight(s, t);
                let mut k = 2;
                while k <= k_cap && m.exceeds(k) {
                    vertices.push(Word::alternating(s, t, k));
                    k += 1;
                }
            }
        }
        vertices.sort();
        vertices.dedup();
        let edges = vertices
            .iter()
            .map(|v| {
                vertices
                    .iter()
                    .enumerate()
                    .filter_map(|(j, w)| edge_kind(v, w, d).map(|kind| (j, kind)))
                    .collect()
            })
            .collect();
        SubregularGraph { vertices, edges }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[Word] {
        &self.vertices
    }

    pub fn vertex_index(&self, w: &Word) -> Option<usize> {
        self.vertices.binary_search(w).ok()
    }

    pub fn out_edges(&self, v: usize) -> &[(usize, EdgeKind)] {
        &self.edges[v]
    }

    pub fn edge_count(&self) -> usize {
        self.edges.iter().map(Vec::len).sum()
    }

    pub fn edges_of_kind(&self, kind: EdgeKind) -> usize {
        self.edges
            .iter()
            .flatten()
            .filter(|(_, k)| *k == kind)
            .count()
    }
}

/// A walk on the subregular graph. Walks start at a length-1 vertex, so the
/// word read off along the walk gains one letter per vertex and each vertex
/// is the dihedral segment ending the word so far.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Walk {
    vertices: Vec<Word>,
}

impl Walk {
    pub fn new(vertices: Vec<Word>, d: &CoxeterDiagram) -> Result<Walk, AutomatonError> {
        let first = vertices.first().ok_or(AutomatonError::NotAWalk)?;
        if first.len() != 1 || !is_vertex(first, d) {
            return Err(AutomatonError::NotAWalk);
        }
        for pair in vertices.windows(2) {
            if !is_vertex(&pair[1], d) || edge_kind(&pair[0], &pair[1], d).is_none() {
                return Err(AutomatonError::NotAWalk);
            }
        }
        Ok(Walk { vertices })
    }

    pub fn vertices(&self) -> &[Word] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Reads the word off a walk: the i-th letter is the last letter of the
/// i-th vertex.
pub fn walk_to_word(walk: &Walk) -> Word {
    Word::new(
        walk.vertices
            .iter()
            .map(|v| v.last().expect("vertices are nonempty"))
            .collect(),
    )
}

/// The inverse direction: the i-th vertex is the dihedral segment ending the
/// length-i prefix of the word.
pub fn word_to_walk(x: &Word, d: &CoxeterDiagram) -> Result<Walk, AutomatonError> {
    if !is_subregular(x, d) {
        return Err(AutomatonError::NotSubregular);
    }
    let letters = x.letters();
    let mut vertices = Vec::with_capacity(letters.len());
    let mut seg_start = 0;
    for i in 0..letters.len() {
        if i > 0 {
            // the segment ending at i starts where the alternation in the
            // current two letters breaks
            let mut start = i - 1;
            let (a, b) = (letters[i - 1], letters[i]);
            while start > 0 && (letters[start - 1] == a || letters[start - 1] == b) {
                start -= 1;
            }
            seg_start = start;
        }
        vertices.push(Word::new(letters[seg_start..=i].to_vec()));
    }
    Walk::new(vertices, d)
}

/// All elements of the subregular cell with word length at most `max_len`,
/// in canonical (length, then lexicographic) order.
pub fn enumerate_cell(d: &CoxeterDiagram, max_len: usize) -> Vec<SubregularElement> {
    enumerate_from(d, None, None, max_len)
}

/// The elements of the cell whose words start with `a` and end with `b`:
/// the box Gamma_a^{-1} n Gamma_b.
pub fn enumerate_box(d: &CoxeterDiagram, a: Gen, b: Gen, max_len: usize) -> Vec<SubregularElement> {
    enumerate_from(d, Some(a), Some(b), max_len)
}

fn enumerate_from(
    d: &CoxeterDiagram,
    start: Option<Gen>,
    end: Option<Gen>,
    max_len: usize,
) -> Vec<SubregularElement> {
    // breadth-first over walks: a frontier entry is (word, end segment)
    let mut out: Vec<SubregularElement> = Vec::new();
    let mut frontier: Vec<(Word, Word)> = d
        .generators()
        .filter(|&s| start.is_none_or(|a| a == s))
        .map(|s| (Word::new(vec![s]), Word::new(vec![s])))
        .collect();
    let mut len = 1;
    while len <= max_len && !frontier.is_empty() {
        for (word, _) in &frontier {
            if end.is_none_or(|b| word.last() == Some(b)) {
                out.push(
                    SubregularElement::new(word.clone(), d)
                        .expect("enumerated words satisfy the criterion"),
                );
            }
        }
        let mut next = Vec::new();
        for (word, seg) in frontier {
            let tail = seg.last().expect("segments are nonempty");
            for u in d.generators() {
                if u == tail {
                    continue;
                }
                let in_support = seg
                    .support2()
                    .map(|(s, t)| u == s || t == Some(u))
                    .unwrap_or(false);
                let new_seg = if seg.len() >= 2 && in_support {
                    // extend the alternation by one letter
                    let mut letters = seg.letters().to_vec();
                    letters.push(u);
                    let ext = Word::new(letters);
                    let (s, t) = (seg.letters()[0], seg.letters()[1]);
                    if !d.weight(s, t).exceeds(ext.len()) {
                        continue;
                    }
                    ext
                } else if !in_support || seg.len() == 1 {
                    if !d.weight(tail, u).exceeds(2) {
                        continue;
                    }
                    Word::new(vec![tail, u])
                } else {
                    continue;
                };
                let mut letters = word.letters().to_vec();
                letters.push(u);
                next.push((Word::new(letters), new_seg));
            }
        }
        next.sort();
        frontier = next;
        len += 1;
    }
    out
}

/// Whether the boxes Gamma_s n Gamma_s^{-1} are finite: the Coxeter graph
/// must be a tree with no infinite edge and at most one edge of weight
/// greater than 3. The answer does not depend on `s`.
pub fn is_box_finite(d: &CoxeterDiagram, s: Gen) -> Result<bool, AutomatonError> {
    if (s as usize) >= d.rank() {
        return Err(AutomatonError::NotAWalk);
    }
    if !d.is_irreducible() {
        return Err(AutomatonError::NotIrreducible);
    }
    let edges = d.edges();
    let is_tree = edges.len() == d.rank() - 1;
    let no_infinite = edges.iter().all(|&(_, _, w)| w.is_finite());
    let heavy = edges
        .iter()
        .filter(|&&(_, _, w)| w > Weight::Finite(3))
        .count();
    Ok(is_tree && no_infinite && heavy <= 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(letters: &[Gen]) -> Word {
        Word::new(letters.to_vec())
    }

    fn triangle_334() -> CoxeterDiagram {
        CoxeterDiagram::new(
            vec!["1", "2", "3"],
            &[
                (0, 1, Weight::Finite(3)),
                (0, 2, Weight::Finite(3)),
                (1, 2, Weight::Finite(4)),
            ],
        )
        .unwrap()
    }

    fn thm_d_triangle() -> CoxeterDiagram {
        CoxeterDiagram::new(
            vec!["0", "1", "2"],
            &[
                (0, 1, Weight::Finite(3)),
                (0, 2, Weight::Finite(3)),
                (1, 2, Weight::Infinite),
            ],
        )
        .unwrap()
    }

    fn chain_44() -> CoxeterDiagram {
        CoxeterDiagram::new(
            vec!["1", "2", "3"],
            &[(0, 1, Weight::Finite(4)), (1, 2, Weight::Finite(4))],
        )
        .unwrap()
    }

    #[test]
    fn graph_of_odd_triangle() {
        let d = triangle_334();
        let g = SubregularGraph::build(&d, 8);
        let expected: Vec<Word> = vec![
            w(&[0]),
            w(&[1]),
            w(&[2]),
            w(&[0, 1]),
            w(&[0, 2]),
            w(&[1, 0]),
            w(&[1, 2]),
            w(&[2, 0]),
            w(&[2, 1]),
            w(&[1, 2, 1]),
            w(&[2, 1, 2]),
        ]
        .into_iter()
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect();
        assert_eq!(g.vertices(), &expected[..]);
    }

    #[test]
    fn graph_of_dihedral_3() {
        let d = CoxeterDiagram::dihedral(Weight::Finite(3));
        let g = SubregularGraph::build(&d, 8);
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edges_of_kind(EdgeKind::Extend), 2);
        assert_eq!(g.edges_of_kind(EdgeKind::NewSegment), 0);
    }

    #[test]
    fn graph_caps_infinite_weight() {
        let d = CoxeterDiagram::dihedral(Weight::Infinite);
        let g = SubregularGraph::build(&d, 5);
        // (1,2)_k and (2,1)_k for k <= 5
        assert_eq!(g.vertex_count(), 2 + 2 * 4);
        assert!(g.vertex_index(&Word::alternating(0, 1, 5)).is_some());
        assert!(g.vertex_index(&Word::alternating(0, 1, 6)).is_none());
    }

    #[test]
    fn walks_round_trip() {
        let d = triangle_334();
        // walk (1),(12),(23),(31) spells 1231
        let walk = Walk::new(vec![w(&[0]), w(&[0, 1]), w(&[1, 2]), w(&[2, 0])], &d).unwrap();
        assert_eq!(walk_to_word(&walk), w(&[0, 1, 2, 0]));
        let back = word_to_walk(&w(&[0, 1, 2, 0]), &d).unwrap();
        assert_eq!(back, walk);

        // single vertex
        let walk = Walk::new(vec![w(&[2])], &d).unwrap();
        assert_eq!(walk_to_word(&walk), w(&[2]));

        // type-(a) extension inside a heavy edge
        let chain = chain_44();
        let walk = Walk::new(vec![w(&[0]), w(&[0, 1]), w(&[0, 1, 0])], &chain).unwrap();
        assert_eq!(walk_to_word(&walk), w(&[0, 1, 0]));
    }

    #[test]
    fn invalid_walks_rejected() {
        let d = triangle_334();
        // must start at a length-1 vertex
        assert_eq!(
            Walk::new(vec![w(&[0, 1])], &d).unwrap_err(),
            AutomatonError::NotAWalk
        );
        // same-support hop is not an edge
        assert!(Walk::new(vec![w(&[0]), w(&[0, 1]), w(&[1, 0])], &d).is_err());
        // boundary letters must match
        assert!(Walk::new(vec![w(&[0]), w(&[0, 1]), w(&[0, 2])], &d).is_err());
        assert!(word_to_walk(&w(&[0, 0]), &d).is_err());
    }

    #[test]
    fn enumerate_dihedral_7() {
        let d = CoxeterDiagram::dihedral(Weight::Finite(7));
        let cell = enumerate_cell(&d, 3);
        let words: Vec<Word> = cell.iter().map(|x| x.word().clone()).collect();
        assert_eq!(
            words,
            vec![
                w(&[0]),
                w(&[1]),
                w(&[0, 1]),
                w(&[1, 0]),
                w(&[0, 1, 0]),
                w(&[1, 0, 1])
            ]
        );
    }

    #[test]
    fn enumerate_thm_d_length_two() {
        let d = thm_d_triangle();
        let words: Vec<String> = enumerate_cell(&d, 2)
            .iter()
            .map(|x| x.word().render(&d))
            .collect();
        assert_eq!(
            words,
            vec!["0", "1", "2", "01", "02", "10", "12", "20", "21"]
        );
    }

    #[test]
    fn enumerate_simply_laced_path() {
        let d = CoxeterDiagram::new(
            vec!["1", "2", "3"],
            &[(0, 1, Weight::Finite(3)), (1, 2, Weight::Finite(3))],
        )
        .unwrap();
        let words: Vec<String> = enumerate_cell(&d, 3)
            .iter()
            .map(|x| x.word().render(&d))
            .collect();
        assert_eq!(
            words,
            vec!["1", "2", "3", "12", "21", "23", "32", "123", "321"]
        );
    }

    #[test]
    fn enumeration_matches_brute_force() {
        // independent oracle: filter every word of bounded length through
        // the criterion
        for d in [triangle_334(), chain_44(), thm_d_triangle()] {
            let max_len = 6;
            let mut expected = Vec::new();
            let mut stack: Vec<Vec<Gen>> = vec![vec![]];
            while let Some(cur) = stack.pop() {
                if !cur.is_empty() {
                    let word = Word::new(cur.clone());
                    if is_subregular(&word, &d) {
                        expected.push(word);
                    }
                }
                if cur.len() < max_len {
                    for g in d.generators() {
                        let mut next = cur.clone();
                        next.push(g);
                        stack.push(next);
                    }
                }
            }
            expected.sort();
            expected.dedup();
            let got: Vec<Word> = enumerate_cell(&d, max_len)
                .into_iter()
                .map(|x| x.word().clone())
                .collect();
            assert_eq!(got, expected);
        }
    }

    #[test]
    fn all_enumerated_words_round_trip_through_walks() {
        let d = triangle_334();
        for x in enumerate_cell(&d, 7) {
            let walk = word_to_walk(x.word(), &d).unwrap();
            assert_eq!(&walk_to_word(&walk), x.word());
        }
    }

    #[test]
    fn box_of_counter_example_chain() {
        let d = chain_44();
        let words: Vec<String> = enumerate_box(&d, 0, 0, 5)
            .iter()
            .map(|x| x.word().render(&d))
            .collect();
        assert_eq!(words, vec!["1", "121", "12321"]);
        // boxes agree with filtering the full cell
        let filtered: Vec<Word> = enumerate_cell(&d, 5)
            .into_iter()
            .map(|x| x.word().clone())
            .filter(|x| x.first() == Some(0) && x.last() == Some(0))
            .collect();
        let boxed: Vec<Word> = enumerate_box(&d, 0, 0, 5)
            .into_iter()
            .map(|x| x.word().clone())
            .collect();
        assert_eq!(boxed, filtered);
    }

    #[test]
    fn box_of_dihedral_5() {
        let d = CoxeterDiagram::dihedral(Weight::Finite(5));
        let words: Vec<String> = enumerate_box(&d, 0, 0, 10)
            .iter()
            .map(|x| x.word().render(&d))
            .collect();
        assert_eq!(words, vec!["1", "121"]);
    }

    #[test]
    fn disconnected_box_is_empty() {
        let d = CoxeterDiagram::new(vec!["1", "2"], &[]).unwrap();
        assert!(enumerate_box(&d, 0, 1, 6).is_empty());
    }

    #[test]
    fn box_finiteness_criterion() {
        let path = CoxeterDiagram::new(
            vec!["1", "2", "3"],
            &[(0, 1, Weight::Finite(3)), (1, 2, Weight::Finite(3))],
        )
        .unwrap();
        assert_eq!(is_box_finite(&path, 0), Ok(true));
        assert_eq!(is_box_finite(&chain_44(), 0), Ok(false));
        assert_eq!(is_box_finite(&thm_d_triangle(), 0), Ok(false));

        let disconnected = CoxeterDiagram::new(vec!["1", "2"], &[]).unwrap();
        assert_eq!(
            is_box_finite(&disconnected, 0),
            Err(AutomatonError::NotIrreducible)
        );
        // independence of s
        for s in 0..3 {
            assert_eq!(is_box_finite(&chain_44(), s), Ok(false));
            assert_eq!(is_box_finite(&triangle_334(), s), Ok(false));
        }
    }

    #[test]
    fn finite_box_enumeration_stabilizes() {
        let d = CoxeterDiagram::new(
            vec!["1", "2", "3"],
            &[(0, 1, Weight::Finite(5)), (1, 2, Weight::Finite(3))],
        )
        .unwrap();
        assert_eq!(is_box_finite(&d, 0), Ok(true));
        let sizes: Vec<usize> = (8..16)
            .map(|len| enumerate_box(&d, 0, 0, len).len())
            .collect();
        assert!(sizes.windows(2).all(|p| p[0] == p[1]));
    }
}
