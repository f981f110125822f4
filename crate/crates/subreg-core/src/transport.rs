//! Transport along odd-weight edges: the maps that multiply by the
//! length-(M-1) alternating elements, their compositions along walks, the
//! matrix-algebra isomorphism for oddly-connected diagrams, and the
//! classification of the finite boxes.

use std::collections::VecDeque;
use std::sync::Arc;

use thiserror::Error;

use crate::automaton::is_box_finite;
use crate::diagram::{CoxeterDiagram, Gen, Weight};
use crate::jring::{JElement, JringError};
use crate::word::Word;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TransportError {
    #[error("edge weight m({0},{1}) is not odd and finite")]
    WeightNotOddFinite(Gen, Gen),
    #[error("diagram is not oddly-connected")]
    NotOddlyConnected,
    #[error("diagram is not irreducible (Coxeter graph disconnected)")]
    NotIrreducible,
    #[error("image term {0:?} does not lie in the expected box")]
    OutsideBox(String),
    #[error(transparent)]
    Jring(#[from] JringError),
}

/// The alternating word of length m(s,t) - 1 starting with s. Defined when
/// m(s,t) is odd and finite; it then ends with t.
pub fn z_word(s: Gen, t: Gen, d: &CoxeterDiagram) -> Result<Word, TransportError> {
    match d.weight(s, t) {
        Weight::Finite(m) if m % 2 == 1 && m >= 3 => Ok(Word::alternating(s, t, m as usize - 1)),
        _ => Err(TransportError::WeightNotOddFinite(s, t)),
    }
}

fn z_element(s: Gen, t: Gen, d: &Arc<CoxeterDiagram>) -> Result<JElement, TransportError> {
    Ok(JElement::t(z_word(s, t, d)?, d)?)
}

/// Left multiplication by t_{z(ts)}: sends terms starting with s to terms
/// starting with t and kills everything else.
pub fn lambda_edge(s: Gen, t: Gen, a: &JElement) -> Result<JElement, TransportError> {
    let z = z_element(t, s, a.diagram())?;
    Ok(z.mul(a)?)
}

/// Right multiplication by t_{z(st)}: sends terms ending with s to terms
/// ending with t and kills everything else.
pub fn rho_edge(s: Gen, t: Gen, a: &JElement) -> Result<JElement, TransportError> {
    let z = z_element(s, t, a.diagram())?;
    Ok(a.mul(&z)?)
}

/// Conjugation-style transport across one odd edge; restricted to the box
/// at s it is an isomorphism of based rings onto the box at t.
pub fn phi_edge(s: Gen, t: Gen, a: &JElement) -> Result<JElement, TransportError> {
    rho_edge(s, t, &lambda_edge(s, t, a)?)
}

fn is_odd_edge(w: Weight) -> bool {
    w.is_odd_finite() && w > Weight::Finite(2)
}

fn check_odd_walk(walk: &[Gen], d: &CoxeterDiagram) -> Result<(), TransportError> {
    if walk.is_empty() {
        return Err(TransportError::NotOddlyConnected);
    }
    for pair in walk.windows(2) {
        if !is_odd_edge(d.weight(pair[0], pair[1])) {
            return Err(TransportError::WeightNotOddFinite(pair[0], pair[1]));
        }
    }
    Ok(())
}

/// Composition of edge maps along a walk whose edges all have odd finite
/// weight, applied first-edge-first.
pub fn lambda_path(walk: &[Gen], a: &JElement) -> Result<JElement, TransportError> {
    check_odd_walk(walk, a.diagram())?;
    let mut acc = a.clone();
    for pair in walk.windows(2) {
        acc = lambda_edge(pair[0], pair[1], &acc)?;
    }
    Ok(acc)
}

pub fn rho_path(walk: &[Gen], a: &JElement) -> Result<JElement, TransportError> {
    check_odd_walk(walk, a.diagram())?;
    let mut acc = a.clone();
    for pair in walk.windows(2) {
        acc = rho_edge(pair[0], pair[1], &acc)?;
    }
    Ok(acc)
}

pub fn phi_path(walk: &[Gen], a: &JElement) -> Result<JElement, TransportError> {
    lambda_path(walk, &rho_path(walk, a)?)
}

/// True when every pair of generators is joined by a path of odd finite
/// weights.
pub fn is_oddly_connected(d: &CoxeterDiagram) -> bool {
    odd_component(d, 0).len() == d.rank()
}

fn odd_component(d: &CoxeterDiagram, start: Gen) -> Vec<Gen> {
    let mut seen = vec![false; d.rank()];
    let mut queue = VecDeque::from([start]);
    seen[start as usize] = true;
    let mut out = vec![start];
    while let Some(s) = queue.pop_front() {
        for t in d.generators() {
            if !seen[t as usize] && is_odd_edge(d.weight(s, t)) {
                seen[t as usize] = true;
                out.push(t);
                queue.push_back(t);
            }
        }
    }
    out
}

/// An S x S matrix with entries in the box at a fixed base generator.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MatrixJElement {
    base: Gen,
    n: usize,
    entries: Vec<JElement>, // n*n, row major
}

impl MatrixJElement {
    pub fn zero(d: &Arc<CoxeterDiagram>, base: Gen) -> Self {
        let n = d.rank();
        MatrixJElement {
            base,
            n,
            entries: (0..n * n).map(|_| JElement::zero(d.clone())).collect(),
        }
    }

    pub fn base(&self) -> Gen {
        self.base
    }

    fn rank(&self) -> usize {
        self.n
    }

    pub fn entry(&self, a: Gen, b: Gen) -> &JElement {
        &self.entries[a as usize * self.rank() + b as usize]
    }

    pub fn entry_mut(&mut self, a: Gen, b: Gen) -> &mut JElement {
        let n = self.rank();
        &mut self.entries[a as usize * n + b as usize]
    }

    /// Matrix unit E_{a,b}(f).
    pub fn unit_at(d: &Arc<CoxeterDiagram>, base: Gen, a: Gen, b: Gen, f: JElement) -> Self {
        let mut out = MatrixJElement::zero(d, base);
        *out.entry_mut(a, b) = f;
        out
    }

    pub fn add(&self, other: &MatrixJElement) -> Result<MatrixJElement, TransportError> {
        let mut out = self.clone();
        for (e, o) in out.entries.iter_mut().zip(&other.entries) {
            *e = e.add(o)?;
        }
        Ok(out)
    }

    /// Ordinary matrix multiplication with ring products in the entries.
    pub fn mul(&self, other: &MatrixJElement) -> Result<MatrixJElement, TransportError> {
        let n = self.rank();
        let d = self.entries[0].diagram().clone();
        let mut out = MatrixJElement::zero(&d, self.base);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let prod = self
                        .entry(a as Gen, b as Gen)
                        .mul(other.entry(b as Gen, c as Gen))?;
                    let target = out.entry_mut(a as Gen, c as Gen);
                    *target = target.add(&prod)?;
                }
            }
        }
        Ok(out)
    }

    pub fn is_single_unit(&self) -> Option<(Gen, Gen, &JElement)> {
        let mut found = None;
        let n = self.rank();
        for a in 0..n {
            for b in 0..n {
                let e = self.entry(a as Gen, b as Gen);
                if !e.is_zero() {
                    if found.is_some() {
                        return None;
                    }
                    found = Some((a as Gen, b as Gen, e));
                }
            }
        }
        found
    }

    pub fn render(&self, d: &CoxeterDiagram) -> String {
        let n = self.rank();
        let mut lines = Vec::new();
        for a in 0..n {
            for b in 0..n {
                let e = self.entry(a as Gen, b as Gen);
                if !e.is_zero() {
                    lines.push(format!(
                        "E[{},{}] = {}",
                        d.label(a as Gen),
                        d.label(b as Gen),
                        e.render()
                    ));
                }
            }
        }
        if lines.is_empty() {
            lines.push("0".to_string());
        }
        lines.join("\n")
    }
}

/// Transport data for an oddly-connected diagram: a fixed base generator
/// and, for every generator t, a chosen odd walk from the base to t. Walks
/// are found breadth-first with lexicographic tie-breaking, so the table is
/// deterministic.
#[derive(Clone, Debug)]
pub struct PsiTransport {
    diagram: Arc<CoxeterDiagram>,
    base: Gen,
    /// walk_to[t] is the chosen odd walk from base to t
    walk_to: Vec<Vec<Gen>>,
}

impl PsiTransport {
    pub fn new(diagram: Arc<CoxeterDiagram>, base: Gen) -> Result<Self, TransportError> {
        if !is_oddly_connected(&diagram) {
            return Err(TransportError::NotOddlyConnected);
        }
        let n = diagram.rank();
        let mut walk_to: Vec<Option<Vec<Gen>>> = vec![None; n];
        walk_to[base as usize] = Some(vec![base]);
        let mut queue = VecDeque::from([base]);
        while let Some(s) = queue.pop_front() {
            for t in diagram.generators() {
                if walk_to[t as usize].is_none()
                    && diagram.weight(s, t).is_odd_finite()
                    && diagram.weight(s, t) > Weight::Finite(2)
                {
                    let mut walk = walk_to[s as usize].clone().expect("visited");
                    walk.push(t);
                    walk_to[t as usize] = Some(walk);
                    queue.push_back(t);
                }
            }
        }
        Ok(PsiTransport {
            diagram,
            base,
            walk_to: walk_to.into_iter().map(|w| w.expect("connected")).collect(),
        })
    }

    pub fn base(&self) -> Gen {
        self.base
    }

    /// The chosen walk from the base generator to t.
    pub fn walk_to(&self, t: Gen) -> &[Gen] {
        &self.walk_to[t as usize]
    }

    fn walk_from(&self, t: Gen) -> Vec<Gen> {
        let mut w = self.walk_to[t as usize].clone();
        w.reverse();
        w
    }

    /// The algebra map into S x S matrices over the box at the base: a term
    /// supported on words from a to b lands in entry (a, b), transported to
    /// the base box on both sides.
    pub fn psi(&self, a: &JElement) -> Result<MatrixJElement, TransportError> {
        let mut out = MatrixJElement::zero(&self.diagram, self.base);
        for (x, c) in a.terms() {
            let (first, last) = (x.first(), x.last());
            let term = JElement::basis(x.clone(), self.diagram.clone()).scale(c);
            let moved = lambda_path(
                &self.walk_from(first),
                &rho_path(&self.walk_from(last), &term)?,
            )?;
            for (w, _) in moved.terms() {
                if w.first() != self.base || w.last() != self.base {
                    return Err(TransportError::OutsideBox(w.word().render(&self.diagram)));
                }
            }
            let entry = out.entry_mut(first, last);
            *entry = entry.add(&moved)?;
        }
        Ok(out)
    }

    /// Inverse of `psi` on matrix units: transports the entry back out to
    /// the (a, b) box.
    pub fn psi_inverse(&self, a: Gen, b: Gen, f: &JElement) -> Result<JElement, TransportError> {
        lambda_path(self.walk_to(a), &rho_path(self.walk_to(b), f)?)
    }
}

/// When the box at s is finite, the largest finite edge weight of the
/// diagram (3 for a simply-laced tree); the box ring is then the odd part of
/// the Verlinde algebra at that weight. Empty when the box is infinite.
pub fn classify_fusion(d: &CoxeterDiagram, s: Gen) -> Result<Option<u32>, TransportError> {
    let finite = is_box_finite(d, s).map_err(|_| TransportError::NotIrreducible)?;
    if !finite {
        return Ok(None);
    }
    let m = d
        .edges()
        .iter()
        .filter_map(|&(_, _, w)| w.finite())
        .max()
        .unwrap_or(3);
    Ok(Some(m))
}
