//! Randomized invariants over words, products, walks, and encodings.

use std::sync::Arc;

use proptest::prelude::*;

use subreg_core::automaton::{walk_to_word, word_to_walk};
use subreg_core::fusion::{decode_unitary, encode_unitary, thm_d_diagram, FusionWord};
use subreg_core::groupoid::spur_normalize;
use subreg_core::jring::{mul_dihedral, JElement};
use subreg_core::suites::SplitMix64;
use subreg_core::word::{dihedral_segments, glue_all, SubregularElement};
use subreg_core::{is_subregular, CoxeterDiagram, Weight, Word};

fn triangle_456() -> Arc<CoxeterDiagram> {
    Arc::new(
        CoxeterDiagram::new(
            vec!["1", "2", "3"],
            &[
                (0, 1, Weight::Finite(4)),
                (0, 2, Weight::Finite(5)),
                (1, 2, Weight::Finite(6)),
            ],
        )
        .unwrap(),
    )
}

fn cycle_4() -> Arc<CoxeterDiagram> {
    Arc::new(
        CoxeterDiagram::new(
            vec!["1", "2", "3", "4"],
            &[
                (0, 1, Weight::Finite(3)),
                (1, 2, Weight::Finite(3)),
                (2, 3, Weight::Finite(3)),
                (0, 3, Weight::Finite(3)),
            ],
        )
        .unwrap(),
    )
}

/// Random letter sequences over three generators, filtered down to
/// subregular words of the (4,5,6) triangle.
fn subregular_word_456() -> impl Strategy<Value = Word> {
    proptest::collection::vec(0u8..3, 1..10)
        .prop_map(Word::new)
        .prop_filter("subregular", |w| is_subregular(w, &triangle_456()))
}

proptest! {
    #[test]
    fn segments_glue_back(w in subregular_word_456()) {
        let segments = dihedral_segments(&w).unwrap();
        prop_assert_eq!(glue_all(&segments).unwrap(), w.clone());
        // adjacent segments share exactly the boundary letter and have
        // different supports
        for pair in segments.windows(2) {
            prop_assert_eq!(pair[0].last(), pair[1].first());
            prop_assert!(!pair[0].same_pair_support(&pair[1]));
        }
    }

    #[test]
    fn reversal_is_an_involution(w in subregular_word_456()) {
        prop_assert_eq!(w.reverse().reverse(), w.clone());
        prop_assert!(is_subregular(&w.reverse(), &triangle_456()));
    }

    #[test]
    fn walks_and_words_are_inverse(w in subregular_word_456()) {
        let d = triangle_456();
        let walk = word_to_walk(&w, &d).unwrap();
        prop_assert_eq!(walk_to_word(&walk), w);
    }

    #[test]
    fn products_satisfy_the_based_ring_laws(
        x in subregular_word_456(),
        y in subregular_word_456(),
    ) {
        let d = triangle_456();
        let tx = JElement::t(x.clone(), &d).unwrap();
        let ty = JElement::t(y.clone(), &d).unwrap();
        let product = tx.mul(&ty).unwrap();
        // support law
        if x.last() != y.first() {
            prop_assert!(product.is_zero());
        } else {
            for (z, c) in product.terms() {
                prop_assert!(c > 0);
                prop_assert_eq!(z.first(), x.first().unwrap());
                prop_assert_eq!(z.last(), y.last().unwrap());
            }
        }
        // tau pairing
        let expected_tau = i64::from(y == x.reverse());
        prop_assert_eq!(product.tau(), expected_tau);
        // anti-involution
        prop_assert_eq!(
            product.anti_involution(),
            ty.anti_involution().mul(&tx.anti_involution()).unwrap()
        );
    }

    #[test]
    fn products_associate(
        x in subregular_word_456(),
        y in subregular_word_456(),
        z in subregular_word_456(),
    ) {
        let d = triangle_456();
        let tx = JElement::t(x, &d).unwrap();
        let ty = JElement::t(y, &d).unwrap();
        let tz = JElement::t(z, &d).unwrap();
        prop_assert_eq!(
            tx.mul(&ty).unwrap().mul(&tz).unwrap(),
            tx.mul(&ty.mul(&tz).unwrap()).unwrap()
        );
    }

    #[test]
    fn dihedral_rule_matches_the_length_list(
        m in 3u32..9,
        k in 1usize..8,
        l in 1usize..8,
        start in 0u8..2,
    ) {
        prop_assume!(k < m as usize && l < m as usize);
        let d = Arc::new(CoxeterDiagram::dihedral(Weight::Finite(m)));
        let x = Word::alternating(start, 1 - start, k);
        let boundary = x.last().unwrap();
        let y = Word::alternating(boundary, 1 - boundary, l);
        let sx = SubregularElement::new(x, &d).unwrap();
        let sy = SubregularElement::new(y, &d).unwrap();
        let got: Vec<usize> = mul_dihedral(&sx, &sy, &d)
            .unwrap()
            .terms()
            .map(|(z, _)| z.len())
            .collect();
        // ladder |k-l|+1, |k-l|+3, ..., k+l-1 with r >= m and mirrors
        // 2m - r removed
        let ladder: Vec<usize> = (0..)
            .map(|i| k.abs_diff(l) + 1 + 2 * i)
            .take_while(|&r| r < k + l)
            .collect();
        let m = m as usize;
        let expected: Vec<usize> = ladder
            .iter()
            .copied()
            .filter(|&r| r < m && !ladder.contains(&(2 * m - r)))
            .collect();
        prop_assert_eq!(got, expected);
    }

    #[test]
    fn spur_insertion_normalizes_away(
        base in proptest::collection::vec(0u8..4, 1..6),
        choices in proptest::collection::vec(any::<u64>(), 5),
    ) {
        let d = cycle_4();
        // build a spur-free walk on the 4-cycle from the raw letters
        let mut walk: Vec<u8> = Vec::new();
        for &step in &base {
            let v = step % 4;
            match walk.last() {
                None => walk.push(v),
                Some(&prev) => {
                    let next = if d.weight(prev, v) > Weight::Finite(2) { v } else { (prev + 1) % 4 };
                    if walk.len() < 2 || walk[walk.len() - 2] != next {
                        walk.push(next);
                    }
                }
            }
        }
        let clean = spur_normalize(&walk, &d).unwrap();
        // insert random spurs one at a time
        let mut noisy = clean.vertices().to_vec();
        let mut rng = SplitMix64::new(choices.first().copied().unwrap_or(7));
        for _ in 0..choices.len() {
            let at = rng.below(noisy.len());
            let v = noisy[at];
            let neighbours: Vec<u8> = d.neighbours(v);
            let u = neighbours[rng.below(neighbours.len())];
            noisy.splice(at + 1..at + 1, [u, v]);
        }
        prop_assert_eq!(spur_normalize(&noisy, &d).unwrap(), clean);
    }

    #[test]
    fn unitary_words_round_trip(letters in proptest::collection::vec(0usize..2, 0..9)) {
        let d = thm_d_diagram();
        let w = FusionWord(letters);
        let x = decode_unitary(&w, &d).unwrap();
        prop_assert_eq!(encode_unitary(&x).unwrap(), w);
    }
}
