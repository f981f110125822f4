//! Independent oracle over the Hecke algebra: a length-bounded ball of
//! group elements with canonical reduced words, the Kazhdan-Lusztig basis
//! computed by the generator recursion, and extraction of the degree-one
//! coefficients that are the structure constants of the subregular ring.
//!
//! Nothing here shares code with the combinatorial product: equality of the
//! two routes is the main cross-check of the whole crate.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::diagram::{CoxeterDiagram, Gen, Weight};
use crate::word::{is_subregular, Word};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HeckeError {
    #[error("ball would exceed the configured cap of {0} elements")]
    BallTooLarge(usize),
    #[error("product leaves the computed ball")]
    BallOverflow,
    #[error("element is not in the subregular cell")]
    NotSubregular,
    #[error("word does not index a ball element")]
    NotInBall,
}

// ---------------------------------------------------------------------------
// Laurent polynomials

/// An integer Laurent polynomial in v, stored sparsely with no zero
/// coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i32, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::v_pow(0)
    }

    /// The monomial v^e.
    pub fn v_pow(e: i32) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(e, 1);
        LaurentPoly { terms }
    }

    /// v + v^{-1}
    pub fn v_plus_v_inv() -> Self {
        let mut p = LaurentPoly::v_pow(1);
        p.add_term(-1, 1);
        p
    }

    /// v - v^{-1}
    pub fn v_minus_v_inv() -> Self {
        let mut p = LaurentPoly::v_pow(1);
        p.add_term(-1, -1);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: i32) -> i64 {
        self.terms.get(&e).copied().unwrap_or(0)
    }

    pub fn max_degree(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn add_term(&mut self, e: i32, c: i64) {
        use std::collections::btree_map::Entry;
        if c == 0 {
            return;
        }
        match self.terms.entry(e) {
            Entry::Occupied(mut en) => {
                *en.get_mut() += c;
                if *en.get() == 0 {
                    en.remove();
                }
            }
            Entry::Vacant(en) => {
                en.insert(c);
            }
        }
    }

    pub fn add_assign(&mut self, other: &LaurentPoly) {
        for (e, c) in other.terms() {
            self.add_term(e, c);
        }
    }

    pub fn sub_assign(&mut self, other: &LaurentPoly) {
        for (e, c) in other.terms() {
            self.add_term(e, -c);
        }
    }

    pub fn scaled(&self, c: i64) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        if c != 0 {
            for (e, k) in self.terms() {
                out.terms.insert(e, k * c);
            }
        }
        out
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in other.terms() {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }

    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|&c| c > 0)
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        self.terms()
            .map(|(e, c)| match e {
                0 => format!("{c}"),
                1 => format!("{c}v"),
                -1 => format!("{c}v^-1"),
                _ => format!("{c}v^{e}"),
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

// ---------------------------------------------------------------------------
// Word reduction by braid moves

fn braid_closure(word: &[Gen], d: &CoxeterDiagram) -> Vec<Vec<Gen>> {
    let mut seen: HashSet<Vec<Gen>> = HashSet::new();
    let mut queue = vec![word.to_vec()];
    seen.insert(word.to_vec());
    while let Some(w) = queue.pop() {
        for i in 0..w.len().saturating_sub(1) {
            let (s, t) = (w[i], w[i + 1]);
            if s == t {
                continue;
            }
            if let Weight::Finite(m) = d.weight(s, t) {
                let m = m as usize;
                if i + m > w.len() {
                    continue;
                }
                let alternates = (0..m).all(|j| w[i + j] == if j % 2 == 0 { s } else { t });
                if !alternates {
                    continue;
                }
                let mut moved = w.clone();
                for (j, slot) in moved[i..i + m].iter_mut().enumerate() {
                    *slot = if j % 2 == 0 { t } else { s };
                }
                if seen.insert(moved.clone()) {
                    queue.push(moved);
                }
            }
        }
    }
    seen.into_iter().collect()
}

fn first_double(w: &[Gen]) -> Option<usize> {
    w.windows(2).position(|p| p[0] == p[1])
}

/// Canonical reduced word: repeatedly cancel a doubled letter reachable by
/// braid moves, then take the lexicographically least word in the braid
/// closure. Terminates because each cancellation shortens the word.
fn reduce_full(word: Vec<Gen>, d: &CoxeterDiagram) -> Vec<Gen> {
    let mut w = word;
    'outer: loop {
        if w.is_empty() {
            return w;
        }
        let closure = braid_closure(&w, d);
        for c in &closure {
            if let Some(i) = first_double(c) {
                let mut shorter = c.clone();
                shorter.drain(i..=i + 1);
                w = shorter;
                continue 'outer;
            }
        }
        return closure.into_iter().min().expect("closure is nonempty");
    }
}

fn is_reduced(word: &[Gen], d: &CoxeterDiagram) -> bool {
    braid_closure(word, d)
        .iter()
        .all(|c| first_double(c).is_none())
}

// ---------------------------------------------------------------------------
// The ball

pub const DEFAULT_BALL_CAP: usize = 20_000;

pub type ElemId = usize;

/// All group elements of length at most `radius`, indexed in canonical
/// (length, then lex) order of their canonical reduced words, together with
/// descent sets, a left-multiplication table, and the Kazhdan-Lusztig basis
/// in standard-basis coordinates. Immutable once built.
pub struct Ball {
    diagram: Arc<CoxeterDiagram>,
    radius: usize,
    words: Vec<Word>,
    index: HashMap<Word, ElemId>,
    left_desc: Vec<u64>,
    right_desc: Vec<u64>,
    /// left_mult[s][x] = id of s*x, None when s*x leaves the ball
    left_mult: Vec<Vec<Option<ElemId>>>,
    /// T-coordinates of c_y: kl[y][x] is the KL polynomial p_{x,y}
    kl: Vec<BTreeMap<ElemId, LaurentPoly>>,
}

/// An element of the Hecke algebra in standard-basis coordinates over a
/// ball.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct HeckeElement {
    terms: BTreeMap<ElemId, LaurentPoly>,
}

impl HeckeElement {
    pub fn zero() -> Self {
        HeckeElement::default()
    }

    pub fn unit() -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(0, LaurentPoly::one());
        HeckeElement { terms }
    }

    pub fn basis(x: ElemId) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(x, LaurentPoly::one());
        HeckeElement { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (ElemId, &LaurentPoly)> {
        self.terms.iter().map(|(&x, p)| (x, p))
    }

    pub fn coeff(&self, x: ElemId) -> LaurentPoly {
        self.terms.get(&x).cloned().unwrap_or_default()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    fn add_poly(&mut self, x: ElemId, p: &LaurentPoly) {
        if p.is_zero() {
            return;
        }
        let slot = self.terms.entry(x).or_default();
        slot.add_assign(p);
        if slot.is_zero() {
            self.terms.remove(&x);
        }
    }
}

impl Ball {
    pub fn build(d: &Arc<CoxeterDiagram>, radius: usize) -> Result<Ball, HeckeError> {
        Ball::build_capped(d, radius, DEFAULT_BALL_CAP)
    }

    pub fn build_capped(
        d: &Arc<CoxeterDiagram>,
        radius: usize,
        cap: usize,
    ) -> Result<Ball, HeckeError> {
        // breadth-first by length, deduplicating by canonical form
        let mut level: Vec<Vec<Gen>> = vec![Vec::new()];
        let mut words: Vec<Word> = vec![Word::empty()];
        for _ in 0..radius {
            let mut next: BTreeSet<Vec<Gen>> = BTreeSet::new();
            for w in &level {
                for s in d.generators() {
                    let mut cand = Vec::with_capacity(w.len() + 1);
                    cand.push(s);
                    cand.extend_from_slice(w);
                    let closure = braid_closure(&cand, d);
                    if closure.iter().any(|c| first_double(c).is_some()) {
                        continue;
                    }
                    next.insert(closure.into_iter().min().expect("nonempty"));
                }
            }
            if words.len() + next.len() > cap {
                return Err(HeckeError::BallTooLarge(cap));
            }
            level = next.into_iter().collect();
            words.extend(level.iter().cloned().map(Word::new));
        }
        let index: HashMap<Word, ElemId> = words
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, w)| (w, i))
            .collect();

        assert!(d.rank() <= 64, "descent masks are 64 bits");
        let mut left_desc = vec![0u64; words.len()];
        let mut right_desc = vec![0u64; words.len()];
        for (id, w) in words.iter().enumerate() {
            for c in braid_closure(w.letters(), d) {
                if let (Some(&f), Some(&l)) = (c.first(), c.last()) {
                    left_desc[id] |= 1 << f;
                    right_desc[id] |= 1 << l;
                }
            }
        }

        let mut left_mult: Vec<Vec<Option<ElemId>>> = vec![vec![None; words.len()]; d.rank()];
        for (id, w) in words.iter().enumerate() {
            for s in d.generators() {
                let mut cand = Vec::with_capacity(w.len() + 1);
                cand.push(s);
                cand.extend_from_slice(w.letters());
                let product = reduce_full(cand, d);
                if product.len() <= radius {
                    left_mult[s as usize][id] = Some(index[&Word::new(product)]);
                }
            }
        }

        let mut ball = Ball {
            diagram: d.clone(),
            radius,
            words,
            index,
            left_desc,
            right_desc,
            left_mult,
            kl: Vec::new(),
        };
        ball.build_kl();
        Ok(ball)
    }

    /// Kazhdan-Lusztig basis by induction on length: peel the first letter
    /// s off y, multiply c_s against the rest, and subtract the
    /// mu-correction terms read from the already-computed table.
    fn build_kl(&mut self) {
        let n = self.words.len();
        let mut kl: Vec<BTreeMap<ElemId, LaurentPoly>> = Vec::with_capacity(n);
        kl.push(BTreeMap::from([(0, LaurentPoly::one())]));
        for y in 1..n {
            let word = self.words[y].clone();
            let s = word.letters()[0];
            let rest = reduce_full(word.letters()[1..].to_vec(), &self.diagram);
            let y1 = self.index[&Word::new(rest)];

            // c_s * c_{y1} = (T_s + v^{-1}) * c_{y1}
            let mut cc: BTreeMap<ElemId, LaurentPoly> = BTreeMap::new();
            for (&x, p) in &kl[y1] {
                // v^{-1} T_x
                cc.entry(x)
                    .or_default()
                    .add_assign(&p.mul(&LaurentPoly::v_pow(-1)));
                // T_s T_x
                let sx = self.left_mult[s as usize][x].expect("c_s c_{y1} stays in ball");
                cc.entry(sx).or_default().add_assign(p);
                if self.has_left_descent(s, x) {
                    cc.entry(x)
                        .or_default()
                        .add_assign(&p.mul(&LaurentPoly::v_minus_v_inv()));
                }
            }
            // subtract mu(z, y1) c_z over z < y1 with sz < z
            let corrections: Vec<(ElemId, i64)> = kl[y1]
                .iter()
                .filter(|&(&z, _)| z != y1 && self.has_left_descent(s, z))
                .map(|(&z, p)| (z, p.coeff(-1)))
                .filter(|&(_, mu)| mu != 0)
                .collect();
            for (z, mu) in corrections {
                let correction: Vec<(ElemId, LaurentPoly)> =
                    kl[z].iter().map(|(&x, p)| (x, p.scaled(mu))).collect();
                for (x, p) in correction {
                    cc.entry(x).or_default().sub_assign(&p);
                }
            }
            cc.retain(|_, p| !p.is_zero());

            // sanity: unitriangular with p in N[v^{-1}]
            assert_eq!(
                cc.get(&y),
                Some(&LaurentPoly::one()),
                "KL leading coefficient must be 1"
            );
            for (&x, p) in &cc {
                assert!(
                    p.is_nonnegative(),
                    "KL polynomial has a negative coefficient: p[{x}] = {p}"
                );
                if x != y {
                    assert!(
                        p.max_degree().unwrap() <= -1,
                        "KL polynomial not in v^-1 Z[v^-1]: p[{x}] = {p}"
                    );
                }
            }
            kl.push(cc);
        }
        self.kl = kl;
    }

    pub fn diagram(&self) -> &Arc<CoxeterDiagram> {
        &self.diagram
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn element_count(&self) -> usize {
        self.words.len()
    }

    pub fn word(&self, x: ElemId) -> &Word {
        &self.words[x]
    }

    pub fn length(&self, x: ElemId) -> usize {
        self.words[x].len()
    }

    /// Looks up an element by any word for it, canonical or not.
    pub fn id_of(&self, w: &Word) -> Option<ElemId> {
        self.index.get(w).copied().or_else(|| {
            let canon = reduce_full(w.letters().to_vec(), &self.diagram);
            self.index.get(&Word::new(canon)).copied()
        })
    }

    pub fn has_left_descent(&self, s: Gen, x: ElemId) -> bool {
        self.left_desc[x] & (1 << s) != 0
    }

    pub fn has_right_descent(&self, s: Gen, x: ElemId) -> bool {
        self.right_desc[x] & (1 << s) != 0
    }

    /// Ids of the ball elements lying in the subregular cell.
    pub fn subregular_ids(&self) -> Vec<ElemId> {
        (0..self.words.len())
            .filter(|&x| is_subregular(&self.words[x], &self.diagram))
            .collect()
    }

    /// Bruhat order through the subword property: x <= y exactly when the
    /// canonical word of y contains some reduced word of x as a subword.
    pub fn bruhat_leq(&self, x: ElemId, y: ElemId) -> bool {
        if x == y {
            return true;
        }
        let lx = self.length(x);
        let ly = self.length(y);
        if lx >= ly {
            return false;
        }
        let target = self.words[x].letters().to_vec();
        let source = self.words[y].letters().to_vec();
        let mut cache: HashMap<Vec<Gen>, bool> = HashMap::new();
        subwords_of_length(&source, lx, &mut |candidate| {
            *cache.entry(candidate.to_vec()).or_insert_with(|| {
                is_reduced(candidate, &self.diagram)
                    && reduce_full(candidate.to_vec(), &self.diagram) == target
            })
        })
    }

    /// T_s T_w: T_{sw} when the length goes up, T_{sw} + (v - v^{-1}) T_w
    /// when it goes down.
    pub fn t_mul_left(&self, s: Gen, h: &HeckeElement) -> Result<HeckeElement, HeckeError> {
        let mut out = HeckeElement::zero();
        for (x, p) in h.terms() {
            let sx = self.left_mult[s as usize][x].ok_or(HeckeError::BallOverflow)?;
            out.add_poly(sx, p);
            if self.has_left_descent(s, x) {
                out.add_poly(x, &p.mul(&LaurentPoly::v_minus_v_inv()));
            }
        }
        Ok(out)
    }

    /// c_y in standard-basis coordinates.
    pub fn kl_basis(&self, y: ElemId) -> HeckeElement {
        HeckeElement {
            terms: self.kl[y].clone(),
        }
    }

    /// The KL polynomial p_{x,y}.
    pub fn kl_polynomial(&self, x: ElemId, y: ElemId) -> LaurentPoly {
        self.kl[y].get(&x).cloned().unwrap_or_default()
    }

    /// The coefficient of v^{-1} in p_{x,y}.
    pub fn mu(&self, x: ElemId, y: ElemId) -> i64 {
        self.kl_polynomial(x, y).coeff(-1)
    }

    /// c_x c_y expanded in the KL basis: the map z -> h_{x,y,z}. Computed
    /// by multiplying in standard coordinates and converting back through
    /// the unitriangular KL matrix.
    pub fn c_mul(&self, x: ElemId, y: ElemId) -> Result<BTreeMap<ElemId, LaurentPoly>, HeckeError> {
        if self.length(x) + self.length(y) > self.radius {
            return Err(HeckeError::BallOverflow);
        }
        let cy = self.kl_basis(y);
        let mut product = HeckeElement::zero();
        for (u, pu) in self.kl[x].iter() {
            // T_u * c_y, letters applied right to left
            let mut acc = cy.clone();
            for &s in self.words[*u].letters().iter().rev() {
                acc = self.t_mul_left(s, &acc)?;
            }
            for (z, pz) in acc.terms() {
                product.add_poly(z, &pz.mul(pu));
            }
        }
        Ok(self.t_to_c(product))
    }

    /// Converts standard-basis coordinates to KL-basis coordinates by
    /// repeatedly stripping the longest remaining term.
    fn t_to_c(&self, mut h: HeckeElement) -> BTreeMap<ElemId, LaurentPoly> {
        let mut out = BTreeMap::new();
        while let Some((&top, _)) = h.terms.iter().next_back() {
            let f = h.terms[&top].clone();
            for (&u, p) in &self.kl[top] {
                h.add_poly(u, &p.mul(&f).scaled(-1));
            }
            debug_assert!(!h.terms.contains_key(&top));
            out.insert(top, f);
        }
        out.retain(|_, p: &mut LaurentPoly| !p.is_zero());
        out
    }

    /// The structure constant of the subregular ring: the coefficient of
    /// v^1 in h_{x,y,z}. All three elements must lie in the cell.
    pub fn gamma(&self, x: ElemId, y: ElemId, z: ElemId) -> Result<i64, HeckeError> {
        for e in [x, y, z] {
            if !is_subregular(&self.words[e], &self.diagram) {
                return Err(HeckeError::NotSubregular);
            }
        }
        let h = self.c_mul(x, y)?;
        Ok(h.get(&z).map(|p| p.coeff(1)).unwrap_or(0))
    }

    /// All products c_x c_y for the fixed right factor y and every x with
    /// l(x) <= max_left_len, in KL coordinates, by dynamic programming over
    /// left multiplications by c_s. Entry x of the result is c_x c_y.
    pub fn c_products_for_right_factor(
        &self,
        y: ElemId,
        max_left_len: usize,
    ) -> Result<Vec<BTreeMap<ElemId, LaurentPoly>>, HeckeError> {
        if max_left_len + self.length(y) > self.radius {
            return Err(HeckeError::BallOverflow);
        }
        let bound = (0..self.words.len())
            .take_while(|&x| self.length(x) <= max_left_len)
            .count();
        let mut dp: Vec<BTreeMap<ElemId, LaurentPoly>> = Vec::with_capacity(bound);
        dp.push(BTreeMap::from([(y, LaurentPoly::one())]));
        for x in 1..bound {
            let s = self.words[x].letters()[0];
            let x1 = self.left_mult[s as usize][x].expect("shorter stays in ball");
            let mut acc = self.c_s_apply(s, &dp[x1]);
            let corrections: Vec<(ElemId, i64)> = self.kl[x1]
                .iter()
                .filter(|&(&z, _)| z != x1 && self.has_left_descent(s, z))
                .map(|(&z, p)| (z, p.coeff(-1)))
                .filter(|&(_, mu)| mu != 0)
                .collect();
            for (z, mu) in corrections {
                for (w, p) in &dp[z] {
                    acc.entry(*w).or_default().sub_assign(&p.scaled(mu));
                }
            }
            acc.retain(|_, p| !p.is_zero());
            dp.push(acc);
        }
        Ok(dp)
    }

    /// Left multiplication by c_s of a KL-coordinate vector.
    fn c_s_apply(
        &self,
        s: Gen,
        f: &BTreeMap<ElemId, LaurentPoly>,
    ) -> BTreeMap<ElemId, LaurentPoly> {
        let mut out: BTreeMap<ElemId, LaurentPoly> = BTreeMap::new();
        for (&w, p) in f {
            if self.has_left_descent(s, w) {
                out.entry(w)
                    .or_default()
                    .add_assign(&p.mul(&LaurentPoly::v_plus_v_inv()));
            } else {
                let sw = self.left_mult[s as usize][w].expect("length bound respected");
                out.entry(sw).or_default().add_assign(p);
                for (&z, q) in &self.kl[w] {
                    if z == w || !self.has_left_descent(s, z) {
                        continue;
                    }
                    let mu = q.coeff(-1);
                    if mu != 0 {
                        out.entry(z).or_default().add_assign(&p.scaled(mu));
                    }
                }
            }
        }
        out.retain(|_, p| !p.is_zero());
        out
    }

    /// Degree-bound check: over sampled cell pairs (x, y), the highest
    /// v-degree of h_{x,y,z} equals one. The sample always includes the
    /// pairs involving z itself plus all short pairs.
    pub fn a_one_check(&self, z: ElemId) -> Result<bool, HeckeError> {
        let cell = self.subregular_ids();
        let mut max_deg: Option<i32> = None;
        let mut sampled = 0usize;
        'outer: for &x in &cell {
            for &y in &cell {
                let relevant = x == z || y == z || self.length(x) + self.length(y) <= 4;
                if !relevant || self.length(x) + self.length(y) > self.radius {
                    continue;
                }
                if sampled >= 500 {
                    break 'outer;
                }
                sampled += 1;
                let h = self.c_mul(x, y)?;
                if let Some(p) = h.get(&z) {
                    if let Some(d) = p.max_degree() {
                        max_deg = Some(max_deg.map_or(d, |m| m.max(d)));
                    }
                }
            }
        }
        Ok(max_deg == Some(1))
    }

    /// CSV rows (x, y, z, h_{x,y,z}) for audit, over all cell pairs with
    /// length sum at most `max_sum`.
    pub fn h_csv(&self, max_sum: usize) -> Result<String, HeckeError> {
        let cell = self.subregular_ids();
        let mut out = String::from("x,y,z,h\n");
        for &x in &cell {
            for &y in &cell {
                if self.length(x) + self.length(y) > max_sum.min(self.radius) {
                    continue;
                }
                for (z, p) in self.c_mul(x, y)? {
                    out.push_str(&format!(
                        "{},{},{},\"{}\"\n",
                        self.words[x].render(&self.diagram),
                        self.words[y].render(&self.diagram),
                        self.words[z].render(&self.diagram),
                        p.render()
                    ));
                }
            }
        }
        Ok(out)
    }
}

/// Calls `found` on each subword of the given length; stops early on a hit.
fn subwords_of_length(source: &[Gen], len: usize, found: &mut impl FnMut(&[Gen]) -> bool) -> bool {
    fn rec(
        source: &[Gen],
        len: usize,
        acc: &mut Vec<Gen>,
        from: usize,
        found: &mut dyn FnMut(&[Gen]) -> bool,
    ) -> bool {
        if acc.len() == len {
            return found(acc);
        }
        if source.len() - from < len - acc.len() {
            return false;
        }
        for i in from..source.len() {
            acc.push(source[i]);
            if rec(source, len, acc, i + 1, found) {
                return true;
            }
            acc.pop();
        }
        false
    }
    rec(source, len, &mut Vec::new(), 0, found)
}
