//! Coxeter diagrams: a finite generator set together with the symmetric
//! weight matrix m(s,t).
//!
//! Generators are stored as dense indices `0..n`; the textual labels are
//! surface syntax used only when parsing and rendering words.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

/// Index of a generator in its diagram.
pub type Gen = u8;

/// An entry of the weight matrix: a finite order or infinity.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Weight {
    Finite(u32),
    Infinite,
}

impl Weight {
    /// `k < m`, treating infinity as larger than every integer.
    pub fn exceeds(self, k: usize) -> bool {
        match self {
            Weight::Finite(m) => (k as u64) < m as u64,
            Weight::Infinite => true,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Weight::Finite(_))
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            Weight::Finite(m) => Some(m),
            Weight::Infinite => None,
        }
    }

    pub fn is_odd_finite(self) -> bool {
        matches!(self, Weight::Finite(m) if m % 2 == 1)
    }
}

impl PartialOrd for Weight {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Weight {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Weight::Finite(a), Weight::Finite(b)) => a.cmp(b),
            (Weight::Finite(_), Weight::Infinite) => Ordering::Less,
            (Weight::Infinite, Weight::Finite(_)) => Ordering::Greater,
            (Weight::Infinite, Weight::Infinite) => Ordering::Equal,
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Weight::Finite(m) => write!(f, "{m}"),
            Weight::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DiagramError {
    #[error("weight matrix is not symmetric at ({0}, {1})")]
    AsymmetricWeights(String, String),
    #[error("diagonal weight m({0},{0}) must be 1")]
    DiagonalNotOne(String),
    #[error("weight m({0},{1}) must be at least 2")]
    WeightBelowTwo(String, String),
    #[error("duplicate generator label {0:?}")]
    DuplicateLabel(String),
    #[error("generator set is empty")]
    EmptyGeneratorSet,
    #[error("too many generators (at most 255 supported)")]
    TooManyGenerators,
    #[error("unknown generator label {0:?}")]
    UnknownLabel(String),
}

/// Errors from reading the diagram JSON file format.
#[derive(Debug, Error)]
pub enum DiagramParseError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Shape(String),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

/// A Coxeter diagram: generator labels plus the symmetric weight matrix.
///
/// Invariants established at construction: labels are pairwise distinct,
/// m(s,s) = 1 and m(s,t) = m(t,s) >= 2 for s != t.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CoxeterDiagram {
    labels: Vec<String>,
    weights: Vec<Weight>, // n*n, row major
}

impl CoxeterDiagram {
    /// Builds a diagram from labels and a list of off-diagonal weight
    /// entries. Unlisted pairs default to weight 2; listing a pair twice is
    /// fine as long as the values agree.
    pub fn new<L: Into<String>>(
        labels: Vec<L>,
        entries: &[(usize, usize, Weight)],
    ) -> Result<Self, DiagramError> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(DiagramError::EmptyGeneratorSet);
        }
        if labels.len() > u8::MAX as usize {
            return Err(DiagramError::TooManyGenerators);
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(DiagramError::DuplicateLabel(l.clone()));
            }
        }
        let n = labels.len();
        let mut weights = vec![None; n * n];
        for &(a, b, w) in entries {
            if a == b {
                if w != Weight::Finite(1) {
                    return Err(DiagramError::DiagonalNotOne(labels[a].clone()));
                }
                continue;
            }
            if matches!(w, Weight::Finite(m) if m < 2) {
                return Err(DiagramError::WeightBelowTwo(
                    labels[a].clone(),
                    labels[b].clone(),
                ));
            }
            for (i, j) in [(a, b), (b, a)] {
                match weights[i * n + j] {
                    None => weights[i * n + j] = Some(w),
                    Some(prev) if prev == w => {}
                    Some(_) => {
                        return Err(DiagramError::AsymmetricWeights(
                            labels[a].clone(),
                            labels[b].clone(),
                        ))
                    }
                }
            }
        }
        let weights = (0..n * n)
            .map(|idx| {
                let (i, j) = (idx / n, idx % n);
                if i == j {
                    Weight::Finite(1)
                } else {
                    weights[idx].unwrap_or(Weight::Finite(2))
                }
            })
            .collect();
        Ok(CoxeterDiagram { labels, weights })
    }

    /// The dihedral diagram on labels "1", "2" with m(1,2) = m.
    pub fn dihedral(m: Weight) -> Self {
        CoxeterDiagram::new(vec!["1", "2"], &[(0, 1, m)]).expect("valid dihedral diagram")
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn generators(&self) -> impl Iterator<Item = Gen> + '_ {
        (0..self.rank() as u8).map(|g| g as Gen)
    }

    pub fn label(&self, g: Gen) -> &str {
        &self.labels[g as usize]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn gen_by_label(&self, label: &str) -> Option<Gen> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|i| i as Gen)
    }

    pub fn weight(&self, s: Gen, t: Gen) -> Weight {
        self.weights[s as usize * self.rank() + t as usize]
    }

    /// Edges of the Coxeter graph G: pairs with m(s,t) >= 3, s < t.
    pub fn edges(&self) -> Vec<(Gen, Gen, Weight)> {
        let mut out = Vec::new();
        for s in 0..self.rank() {
            for t in s + 1..self.rank() {
                let w = self.weight(s as Gen, t as Gen);
                if w > Weight::Finite(2) {
                    out.push((s as Gen, t as Gen, w));
                }
            }
        }
        out
    }

    /// Neighbours of s in G (pairs with m >= 3).
    pub fn neighbours(&self, s: Gen) -> Vec<Gen> {
        self.generators()
            .filter(|&t| t != s && self.weight(s, t) > Weight::Finite(2))
            .collect()
    }

    pub fn is_simply_laced(&self) -> bool {
        self.generators().all(|s| {
            self.generators()
                .all(|t| s == t || matches!(self.weight(s, t), Weight::Finite(2 | 3)))
        })
    }

    /// Irreducible means the Coxeter graph G is connected.
    pub fn is_irreducible(&self) -> bool {
        let n = self.rank();
        let mut seen = vec![false; n];
        let mut stack = vec![0 as Gen];
        seen[0] = true;
        while let Some(s) = stack.pop() {
            for t in self.neighbours(s) {
                if !seen[t as usize] {
                    seen[t as usize] = true;
                    stack.push(t);
                }
            }
        }
        seen.into_iter().all(|b| b)
    }

    /// Single-character labels render words as plain strings; otherwise
    /// letters are joined with dots.
    pub fn single_char_labels(&self) -> bool {
        self.labels.iter().all(|l| l.chars().count() == 1)
    }

    /// Reads the diagram file format:
    /// `{"generators": [...], "m": [[a, b, w], ...]}` where `w` is an
    /// integer >= 2 or the string "inf"; unlisted pairs default to 2.
    pub fn from_json_str(src: &str) -> Result<Self, DiagramParseError> {
        use serde_json::Value;
        let v: Value = serde_json::from_str(src)?;
        let obj = v
            .as_object()
            .ok_or_else(|| DiagramParseError::Shape("top level must be an object".into()))?;
        let gens = obj
            .get("generators")
            .and_then(Value::as_array)
            .ok_or_else(|| DiagramParseError::Shape("missing \"generators\" array".into()))?;
        let labels: Vec<String> = gens.iter().map(label_of).collect::<Result<_, _>>()?;
        let mut entries = Vec::new();
        if let Some(m) = obj.get("m") {
            let rows = m
                .as_array()
                .ok_or_else(|| DiagramParseError::Shape("\"m\" must be an array".into()))?;
            for row in rows {
                let triple = row.as_array().filter(|r| r.len() == 3).ok_or_else(|| {
                    DiagramParseError::Shape("each \"m\" entry must be [a, b, weight]".into())
                })?;
                let a = label_of(&triple[0])?;
                let b = label_of(&triple[1])?;
                let ai = labels
                    .iter()
                    .position(|l| *l == a)
                    .ok_or(DiagramError::UnknownLabel(a))?;
                let bi = labels
                    .iter()
                    .position(|l| *l == b)
                    .ok_or(DiagramError::UnknownLabel(b))?;
                let w = match &triple[2] {
                    Value::String(s) if s == "inf" => Weight::Infinite,
                    Value::Number(n) => {
                        let k = n
                            .as_u64()
                            .ok_or_else(|| DiagramParseError::Shape(format!("bad weight {n}")))?;
                        Weight::Finite(k.try_into().map_err(|_| {
                            DiagramParseError::Shape(format!("weight {k} out of range"))
                        })?)
                    }
                    other => {
                        return Err(DiagramParseError::Shape(format!(
                            "weight must be an integer or \"inf\", got {other}"
                        )))
                    }
                };
                entries.push((ai, bi, w));
            }
        }
        Ok(CoxeterDiagram::new(labels, &entries)?)
    }
}

fn label_of(v: &serde_json::Value) -> Result<String, DiagramParseError> {
    match v {
        serde_json::Value::String(s) => Ok(s.clone()),
        serde_json::Value::Number(n) => Ok(n.to_string()),
        other => Err(DiagramParseError::Shape(format!(
            "generator label must be a string or number, got {other}"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_dihedral() {
        let d = CoxeterDiagram::new(vec!["1", "2"], &[(0, 1, Weight::Finite(7))]).unwrap();
        assert_eq!(d.rank(), 2);
        assert_eq!(d.weight(0, 1), Weight::Finite(7));
        assert_eq!(d.weight(1, 0), Weight::Finite(7));
        assert_eq!(d.weight(0, 0), Weight::Finite(1));
    }

    #[test]
    fn weight_below_two_rejected() {
        let err = CoxeterDiagram::new(vec!["1", "2"], &[(0, 1, Weight::Finite(1))]).unwrap_err();
        assert_eq!(err, DiagramError::WeightBelowTwo("1".into(), "2".into()));
    }

    #[test]
    fn duplicate_label_rejected() {
        let err = CoxeterDiagram::new(vec!["1", "1"], &[]).unwrap_err();
        assert_eq!(err, DiagramError::DuplicateLabel("1".into()));
    }

    #[test]
    fn asymmetric_entries_rejected() {
        let err = CoxeterDiagram::new(
            vec!["1", "2"],
            &[(0, 1, Weight::Finite(3)), (1, 0, Weight::Finite(4))],
        )
        .unwrap_err();
        assert_eq!(err, DiagramError::AsymmetricWeights("2".into(), "1".into()));
    }

    #[test]
    fn infinite_edge_diagram() {
        // three generators, two simple edges and one infinite edge
        let d = CoxeterDiagram::new(
            vec!["0", "1", "2"],
            &[
                (0, 1, Weight::Finite(3)),
                (0, 2, Weight::Finite(3)),
                (1, 2, Weight::Infinite),
            ],
        )
        .unwrap();
        assert_eq!(d.weight(1, 2), Weight::Infinite);
        assert!(d.weight(1, 2).exceeds(1_000_000));
        assert!(!d.is_simply_laced());
        assert!(d.is_irreducible());
    }

    #[test]
    fn weight_order_puts_infinity_on_top() {
        assert!(Weight::Finite(1000) < Weight::Infinite);
        assert!(Weight::Finite(2) < Weight::Finite(3));
        assert!(Weight::Infinite.exceeds(usize::MAX));
        assert!(!Weight::Finite(4).exceeds(4));
        assert!(Weight::Finite(4).exceeds(3));
    }

    #[test]
    fn json_round_trip() {
        let src = r#"{"generators": [1, 2], "m": [[1, 2, 7]]}"#;
        let d = CoxeterDiagram::from_json_str(src).unwrap();
        assert_eq!(d.weight(0, 1), Weight::Finite(7));

        let src = r#"{"generators": ["0", "1", "2"],
                      "m": [["0","1",3], ["0","2",3], ["1","2","inf"]]}"#;
        let d = CoxeterDiagram::from_json_str(src).unwrap();
        assert_eq!(d.weight(1, 2), Weight::Infinite);
        // unlisted pairs default to 2
        let src = r#"{"generators": ["a", "b", "c"], "m": [["a","b",5]]}"#;
        let d = CoxeterDiagram::from_json_str(src).unwrap();
        assert_eq!(d.weight(1, 2), Weight::Finite(2));
        assert!(!d.is_irreducible());
    }

    #[test]
    fn json_errors() {
        assert!(CoxeterDiagram::from_json_str("not json").is_err());
        assert!(CoxeterDiagram::from_json_str(r#"{"generators": []}"#).is_err());
        assert!(CoxeterDiagram::from_json_str(r#"{"generators": [1], "m": [[1, 9, 3]]}"#).is_err());
    }
}
