//! The groupoid algebra of walks on the Coxeter graph, with spur-free walks
//! as canonical class representatives, and the basis correspondence that
//! identifies it with the subregular ring in the simply-laced case.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::diagram::{CoxeterDiagram, Gen, Weight};
use crate::jring::JElement;
use crate::word::Word;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupoidError {
    #[error("vertex sequence is not a walk on the Coxeter graph")]
    NotAWalk,
    #[error("operands live over different graphs")]
    GraphMismatch,
    #[error("diagram is not simply-laced")]
    NotSimplyLaced,
}

/// A homotopy class of walks on the Coxeter graph, stored as its unique
/// spur-free representative. A single vertex is the constant walk.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct WalkClass {
    vertices: Word,
}

impl WalkClass {
    pub fn vertices(&self) -> &[Gen] {
        self.vertices.letters()
    }

    pub fn start(&self) -> Gen {
        self.vertices.first().expect("walks are nonempty")
    }

    pub fn end(&self) -> Gen {
        self.vertices.last().expect("walks are nonempty")
    }

    pub fn inverse(&self) -> WalkClass {
        WalkClass {
            vertices: self.vertices.reverse(),
        }
    }

    pub fn render(&self, d: &CoxeterDiagram) -> String {
        format!(
            "({})",
            self.vertices()
                .iter()
                .map(|&g| d.label(g))
                .collect::<Vec<_>>()
                .join(",")
        )
    }
}

fn check_walk(vertices: &[Gen], d: &CoxeterDiagram) -> Result<(), GroupoidError> {
    if vertices.is_empty() {
        return Err(GroupoidError::NotAWalk);
    }
    for &v in vertices {
        if v as usize >= d.rank() {
            return Err(GroupoidError::NotAWalk);
        }
    }
    for pair in vertices.windows(2) {
        if d.weight(pair[0], pair[1]) <= Weight::Finite(2) {
            return Err(GroupoidError::NotAWalk);
        }
    }
    Ok(())
}

/// Removes spurs (v, v', v) until none remain. The result is independent of
/// removal order and idempotent.
pub fn spur_normalize(vertices: &[Gen], d: &CoxeterDiagram) -> Result<WalkClass, GroupoidError> {
    check_walk(vertices, d)?;
    let mut v = vertices.to_vec();
    loop {
        let spur = (1..v.len().saturating_sub(1)).find(|&i| v[i - 1] == v[i + 1]);
        match spur {
            Some(i) => {
                v.drain(i..=i + 1);
            }
            None => break,
        }
    }
    Ok(WalkClass {
        vertices: Word::new(v),
    })
}

/// An integer combination of walk classes.
#[derive(Clone, Debug)]
pub struct GroupoidElement {
    diagram: Arc<CoxeterDiagram>,
    terms: BTreeMap<WalkClass, i64>,
}

impl PartialEq for GroupoidElement {
    fn eq(&self, other: &Self) -> bool {
        self.diagram == other.diagram && self.terms == other.terms
    }
}

impl Eq for GroupoidElement {}

impl GroupoidElement {
    pub fn zero(diagram: Arc<CoxeterDiagram>) -> Self {
        GroupoidElement {
            diagram,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(class: WalkClass, diagram: Arc<CoxeterDiagram>) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(class, 1);
        GroupoidElement { diagram, terms }
    }

    pub fn from_walk(
        vertices: &[Gen],
        diagram: &Arc<CoxeterDiagram>,
    ) -> Result<Self, GroupoidError> {
        Ok(GroupoidElement::basis(
            spur_normalize(vertices, diagram)?,
            diagram.clone(),
        ))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&WalkClass, i64)> {
        self.terms.iter().map(|(p, &c)| (p, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, class: WalkClass, c: i64) {
        use std::collections::btree_map::Entry;
        if c == 0 {
            return;
        }
        match self.terms.entry(class) {
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

    pub fn add(&self, other: &GroupoidElement) -> Result<GroupoidElement, GroupoidError> {
        if self.diagram != other.diagram {
            return Err(GroupoidError::GraphMismatch);
        }
        let mut out = self.clone();
        for (p, c) in other.terms() {
            out.add_term(p.clone(), c);
        }
        Ok(out)
    }

    /// Bilinear product: concatenate when endpoints match, else zero.
    pub fn mul(&self, other: &GroupoidElement) -> Result<GroupoidElement, GroupoidError> {
        if self.diagram != other.diagram {
            return Err(GroupoidError::GraphMismatch);
        }
        let mut out = GroupoidElement::zero(self.diagram.clone());
        for (p, cp) in self.terms() {
            for (q, cq) in other.terms() {
                if p.end() != q.start() {
                    continue;
                }
                let mut vertices = p.vertices().to_vec();
                vertices.extend_from_slice(&q.vertices()[1..]);
                let class = spur_normalize(&vertices, &self.diagram)
                    .expect("concatenation of walks is a walk");
                out.add_term(class, cp * cq);
            }
        }
        Ok(out)
    }

    pub fn anti_involution(&self) -> GroupoidElement {
        let mut out = GroupoidElement::zero(self.diagram.clone());
        for (p, c) in self.terms() {
            out.add_term(p.inverse(), c);
        }
        out
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        self.terms()
            .map(|(p, c)| format!("{}*{}", c, p.render(&self.diagram)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Display for GroupoidElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

/// The two-sided unit: the sum of constant walks over all vertices.
pub fn groupoid_unit(diagram: &Arc<CoxeterDiagram>) -> GroupoidElement {
    let mut out = GroupoidElement::zero(diagram.clone());
    for s in diagram.generators() {
        out.add_term(
            spur_normalize(&[s], diagram).expect("constant walks are walks"),
            1,
        );
    }
    out
}

/// Sends t_x to the class of the walk spelled by the letters of x. Only
/// defined for simply-laced diagrams, where subregular words are exactly the
/// spur-free walks, and multiplicative there.
pub fn phi_simply_laced(a: &JElement) -> Result<GroupoidElement, GroupoidError> {
    let diagram = a.diagram();
    if !diagram.is_simply_laced() {
        return Err(GroupoidError::NotSimplyLaced);
    }
    let mut out = GroupoidElement::zero(diagram.clone());
    for (x, c) in a.terms() {
        let class = spur_normalize(x.word().letters(), diagram)?;
        debug_assert_eq!(
            class.vertices(),
            x.word().letters(),
            "subregular words are spur-free"
        );
        out.add_term(class, c);
    }
    Ok(out)
}
