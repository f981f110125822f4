//! Verification suites shared by the CLI and the acceptance tests: each
//! suite runs a family of checks against a diagram and reports one
//! pass/fail line per case.

use std::sync::Arc;

use thiserror::Error;

use crate::automaton::{enumerate_box, enumerate_cell};
use crate::diagram::{CoxeterDiagram, Gen, Weight};
use crate::fusion::{
    decode_amalg, decode_unitary, encode_amalg, encode_unitary, ffr_mul, fusion_set_u,
    fusion_set_z, path_mult_check, verlinde_mul, FusionSet, FusionWord,
};
use crate::groupoid::{groupoid_unit, phi_simply_laced, GroupoidElement};
use crate::hecke::Ball;
use crate::jring::{unit_jc, JElement};
use crate::transport::{classify_fusion, is_oddly_connected, phi_path, PsiTransport};
use crate::word::{SubregularElement, Word};

#[derive(Debug, Error)]
pub enum SuiteError {
    #[error("suite does not apply to this diagram: {0}")]
    Mismatch(String),
    #[error("suite failed to run: {0}")]
    Internal(String),
}

#[derive(Clone, Debug)]
pub struct CaseResult {
    pub name: String,
    pub pass: bool,
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Default)]
pub struct SuiteReport {
    pub cases: Vec<CaseResult>,
}

impl SuiteReport {
    pub fn push(&mut self, name: impl Into<String>, pass: bool, detail: Option<String>) {
        self.cases.push(CaseResult {
            name: name.into(),
            pass,
            detail,
        });
    }

    pub fn check(&mut self, name: impl Into<String>, pass: bool) {
        self.push(name, pass, None);
    }

    pub fn all_passed(&self) -> bool {
        self.cases.iter().all(|c| c.pass)
    }

    pub fn failed_count(&self) -> usize {
        self.cases.iter().filter(|c| !c.pass).count()
    }

    pub fn render_tap(&self) -> String {
        let mut out = format!("1..{}\n", self.cases.len());
        for (i, case) in self.cases.iter().enumerate() {
            let verdict = if case.pass { "ok" } else { "not ok" };
            out.push_str(&format!("{verdict} {} - {}\n", i + 1, case.name));
            if let Some(detail) = &case.detail {
                if !case.pass {
                    out.push_str(&format!("# {detail}\n"));
                }
            }
        }
        out
    }
}

/// Deterministic sampler for the property suites.
pub struct SplitMix64(u64);

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, n: usize) -> usize {
        (self.next_u64() % n as u64) as usize
    }
}

fn basis(x: &SubregularElement, d: &Arc<CoxeterDiagram>) -> JElement {
    JElement::basis(x.clone(), d.clone())
}

// ---------------------------------------------------------------------------
// Property suites

/// Associativity on sampled basis triples.
pub fn assoc_suite(
    d: &Arc<CoxeterDiagram>,
    max_len: usize,
    samples: usize,
    seed: u64,
) -> Result<SuiteReport, SuiteError> {
    let cell = enumerate_cell(d, max_len);
    if cell.is_empty() {
        return Err(SuiteError::Internal("empty cell".into()));
    }
    let mut rng = SplitMix64::new(seed);
    let mut report = SuiteReport::default();
    let mut failures = 0usize;
    for _ in 0..samples {
        let x = &cell[rng.below(cell.len())];
        let y = &cell[rng.below(cell.len())];
        let z = &cell[rng.below(cell.len())];
        let (tx, ty, tz) = (basis(x, d), basis(y, d), basis(z, d));
        let lhs = tx.mul(&ty).and_then(|p| p.mul(&tz));
        let rhs = ty.mul(&tz).and_then(|p| tx.mul(&p));
        if lhs.ok() != rhs.ok() {
            failures += 1;
        }
    }
    report.push(
        format!("associativity on {samples} sampled basis triples (length <= {max_len})"),
        failures == 0,
        (failures > 0).then(|| format!("{failures} failing triples")),
    );
    Ok(report)
}

/// Based-ring laws on sampled basis pairs: the tau pairing, the
/// anti-involution, the boundary-letter support law, and absorption by the
/// end letters.
pub fn basedring_suite(
    d: &Arc<CoxeterDiagram>,
    max_len: usize,
    samples: usize,
    seed: u64,
) -> Result<SuiteReport, SuiteError> {
    let cell = enumerate_cell(d, max_len);
    if cell.is_empty() {
        return Err(SuiteError::Internal("empty cell".into()));
    }
    let mut rng = SplitMix64::new(seed);
    let mut report = SuiteReport::default();
    let unit = unit_jc(d);
    let mut tau_failures = 0usize;
    let mut star_failures = 0usize;
    let mut support_failures = 0usize;
    let mut head_failures = 0usize;
    for _ in 0..samples {
        let x = &cell[rng.below(cell.len())];
        let y = &cell[rng.below(cell.len())];
        let (tx, ty) = (basis(x, d), basis(y, d));
        let product = tx.mul(&ty).map_err(to_internal)?;

        let expected_tau = i64::from(y.word() == &x.word().reverse());
        if product.tau() != expected_tau {
            tau_failures += 1;
        }

        let star_lhs = product.anti_involution();
        let star_rhs = ty
            .anti_involution()
            .mul(&tx.anti_involution())
            .map_err(to_internal)?;
        if star_lhs != star_rhs {
            star_failures += 1;
        }

        if x.last() != y.first() {
            if !product.is_zero() {
                support_failures += 1;
            }
        } else if !product
            .terms()
            .all(|(z, c)| c > 0 && z.first() == x.first() && z.last() == y.last())
        {
            support_failures += 1;
        }

        let head = JElement::t(Word::new(vec![x.first()]), d).map_err(to_internal)?;
        let tail = JElement::t(Word::new(vec![x.last()]), d).map_err(to_internal)?;
        let absorbed = head.mul(&tx).ok() == Some(tx.clone())
            && tx.mul(&tail).ok() == Some(tx.clone())
            && unit.mul(&tx).ok() == Some(tx.clone())
            && tx.mul(&unit).ok() == Some(tx.clone());
        if !absorbed {
            head_failures += 1;
        }
    }
    let mut push = |name: &str, failures: usize| {
        report.push(
            format!("{name} on {samples} sampled basis pairs (length <= {max_len})"),
            failures == 0,
            (failures > 0).then(|| format!("{failures} failing pairs")),
        );
    };
    push("tau pairing law", tau_failures);
    push("anti-involution anti-multiplicativity", star_failures);
    push("boundary support law", support_failures);
    push("head and tail absorption", head_failures);
    Ok(report)
}

// ---------------------------------------------------------------------------
// Structural isomorphism suites

/// Simply-laced diagrams: the basis correspondence onto walk classes is
/// multiplicative and unit-preserving.
pub fn thm_a_suite(d: &Arc<CoxeterDiagram>, max_len: usize) -> Result<SuiteReport, SuiteError> {
    if !d.is_simply_laced() {
        return Err(SuiteError::Mismatch("diagram is not simply-laced".into()));
    }
    let cell = enumerate_cell(d, max_len);
    let mut report = SuiteReport::default();

    let unit_image = phi_simply_laced(&unit_jc(d)).map_err(to_internal)?;
    report.check(
        "unit maps to the sum of constant walks",
        unit_image == groupoid_unit(d),
    );

    let images: Vec<GroupoidElement> = cell
        .iter()
        .map(|x| phi_simply_laced(&basis(x, d)))
        .collect::<Result<_, _>>()
        .map_err(to_internal)?;
    let distinct: std::collections::BTreeSet<String> = images.iter().map(|p| p.render()).collect();
    report.check(
        format!("walk classes of {} basis elements are distinct", cell.len()),
        distinct.len() == images.len(),
    );

    let mut failures = 0usize;
    let mut pairs = 0usize;
    for (i, x) in cell.iter().enumerate() {
        for (j, y) in cell.iter().enumerate() {
            pairs += 1;
            let product = basis(x, d).mul(&basis(y, d)).map_err(to_internal)?;
            let lhs = phi_simply_laced(&product).map_err(to_internal)?;
            let rhs = images[i].mul(&images[j]).map_err(to_internal)?;
            if lhs != rhs {
                failures += 1;
            }
        }
    }
    report.push(
        format!("multiplicativity on all {pairs} basis pairs (length <= {max_len})"),
        failures == 0,
        (failures > 0).then(|| format!("{failures} failing pairs")),
    );
    Ok(report)
}

/// Oddly-connected diagrams: transport into S x S matrices over the base
/// box is multiplicative and bijective on bases.
pub fn thm_b_suite(
    d: &Arc<CoxeterDiagram>,
    base: Gen,
    max_len: usize,
) -> Result<SuiteReport, SuiteError> {
    if !is_oddly_connected(d) {
        return Err(SuiteError::Mismatch(
            "diagram is not oddly-connected".into(),
        ));
    }
    let psi = PsiTransport::new(d.clone(), base).map_err(to_internal)?;
    let cell = enumerate_cell(d, max_len);
    let mut report = SuiteReport::default();

    let mut units: std::collections::BTreeSet<(Gen, Gen, String)> =
        std::collections::BTreeSet::new();
    let mut unit_count = 0usize;
    let mut unit_shape = true;
    let mut round_trip = true;
    for x in &cell {
        let image = psi.psi(&basis(x, d)).map_err(to_internal)?;
        match image.is_single_unit() {
            Some((a, b, f)) if f.term_count() == 1 => {
                if psi.psi_inverse(a, b, f).map_err(to_internal)? != basis(x, d) {
                    round_trip = false;
                }
                units.insert((a, b, f.render()));
                unit_count += 1;
            }
            _ => unit_shape = false,
        }
    }
    report.check(
        format!("{} basis elements map to matrix units", cell.len()),
        unit_shape,
    );
    report.check("images are pairwise distinct", units.len() == unit_count);
    report.check("inverse transport recovers every basis element", round_trip);

    let mut failures = 0usize;
    let mut pairs = 0usize;
    for x in &cell {
        for y in &cell {
            pairs += 1;
            let lhs = psi
                .psi(&basis(x, d).mul(&basis(y, d)).map_err(to_internal)?)
                .map_err(to_internal)?;
            let rhs = psi
                .psi(&basis(x, d))
                .map_err(to_internal)?
                .mul(&psi.psi(&basis(y, d)).map_err(to_internal)?)
                .map_err(to_internal)?;
            if lhs != rhs {
                failures += 1;
            }
        }
    }
    report.push(
        format!("multiplicativity on all {pairs} basis pairs (length <= {max_len})"),
        failures == 0,
        (failures > 0).then(|| format!("{failures} failing pairs")),
    );
    Ok(report)
}

/// Classification of finite boxes: reports the Verlinde weight and, when the
/// box is finite, verifies the explicit elementwise isomorphism onto the odd
/// part of the Verlinde algebra.
pub fn thm_c_suite(d: &Arc<CoxeterDiagram>, s: Gen) -> Result<SuiteReport, SuiteError> {
    let mut report = SuiteReport::default();
    let class = classify_fusion(d, s).map_err(|e| SuiteError::Mismatch(e.to_string()))?;
    match class {
        None => {
            report.check("box is infinite: no fusion ring", true);
            Ok(report)
        }
        Some(m) => {
            report.check(format!("box is finite with largest weight {m}"), true);
            for (name, pass) in verlinde_iso_cases(d, s, m).map_err(SuiteError::Internal)? {
                report.check(name, pass);
            }
            Ok(report)
        }
    }
}

/// Elementwise check of the isomorphism from the box at `s` onto the odd
/// Verlinde part: transport the box to an endpoint of the heaviest edge
/// along simple edges, read off alternating lengths, compare all products.
fn verlinde_iso_cases(
    d: &Arc<CoxeterDiagram>,
    s: Gen,
    m: u32,
) -> Result<Vec<(String, bool)>, String> {
    // endpoint of the heaviest edge, reached from s through weight-3 edges
    let heavy = d
        .edges()
        .iter()
        .find(|&&(_, _, w)| w == Weight::Finite(m) && m > 3)
        .map(|&(a, b, _)| (a, b));
    let mut path = vec![s];
    if let Some((a, b)) = heavy {
        let mut prev: Vec<Option<Gen>> = vec![None; d.rank()];
        let mut queue = std::collections::VecDeque::from([s]);
        prev[s as usize] = Some(s);
        let mut target = None;
        while let Some(u) = queue.pop_front() {
            if u == a || u == b {
                target = Some(u);
                break;
            }
            for v in d.neighbours(u) {
                if d.weight(u, v) == Weight::Finite(3) && prev[v as usize].is_none() {
                    prev[v as usize] = Some(u);
                    queue.push_back(v);
                }
            }
        }
        let target = target.ok_or("heavy edge unreachable through simple edges")?;
        let mut walk = vec![target];
        while *walk.last().unwrap() != s {
            walk.push(prev[*walk.last().unwrap() as usize].unwrap());
        }
        walk.reverse();
        path = walk;
    }
    let anchor = *path.last().unwrap();

    // a bound that sees the whole finite box: transported elements are
    // alternating words shorter than m, and each edge map changes length by
    // less than 2(m-1)
    let bound = (m as usize) + 2 * (m as usize) * path.len() + 2;
    let box_s = enumerate_box(d, s, s, bound);
    let mut cases = Vec::new();

    let mut index_of = std::collections::BTreeMap::new();
    let mut single_images = true;
    for x in &box_s {
        let image = phi_path(&path, &basis(x, d)).map_err(|e| e.to_string())?;
        let mut terms = image.terms();
        match (terms.next(), terms.next()) {
            (Some((w, 1)), None) if w.first() == anchor && w.last() == anchor => {
                index_of.insert(x.clone(), w.len() as u32);
            }
            _ => single_images = false,
        }
    }
    cases.push((
        format!("transport along {path:?} sends the box to alternating words"),
        single_images,
    ));

    let expected: Vec<u32> = (1..m).filter(|k| k % 2 == 1).collect();
    let mut got: Vec<u32> = index_of.values().copied().collect();
    got.sort_unstable();
    cases.push((
        format!("box basis matches odd indices below {m}"),
        got == expected,
    ));

    let mut product_failures = 0usize;
    for (x, &kx) in &index_of {
        for (y, &ky) in &index_of {
            let product = basis(x, d).mul(&basis(y, d)).map_err(|e| e.to_string())?;
            let mut residual =
                verlinde_mul(kx, ky, Weight::Finite(m)).map_err(|e| e.to_string())?;
            for (z, c) in product.terms() {
                let kz = index_of.get(z).ok_or("product left the box")?;
                residual.add_term(*kz, -c);
            }
            if residual.terms().count() != 0 {
                product_failures += 1;
            }
        }
    }
    cases.push((
        format!(
            "all {} box products match the odd Verlinde rule at weight {m}",
            index_of.len() * index_of.len()
        ),
        product_failures == 0,
    ));
    Ok(cases)
}

// ---------------------------------------------------------------------------
// Free fusion ring suites

fn is_thm_d_diagram(d: &CoxeterDiagram) -> bool {
    d.rank() == 3
        && d.weight(0, 1) == Weight::Finite(3)
        && d.weight(0, 2) == Weight::Finite(3)
        && d.weight(1, 2) == Weight::Infinite
}

/// Detects the star-over-a-path diagram and returns its n.
fn thm_e_n(d: &CoxeterDiagram) -> Option<usize> {
    let n = d.rank().checked_sub(1)?;
    if n < 2 {
        return None;
    }
    for i in 1..=n {
        if d.weight(0, i as Gen) != Weight::Infinite {
            return None;
        }
        for j in i + 1..=n {
            let expected = if j == i + 1 {
                Weight::Finite(3)
            } else {
                Weight::Finite(2)
            };
            if d.weight(i as Gen, j as Gen) != expected {
                return None;
            }
        }
    }
    Some(n)
}

fn all_fusion_words(set: &FusionSet, max_len: usize) -> Vec<FusionWord> {
    let mut out = vec![FusionWord::empty()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for letter in 0..set.letter_count() {
                let mut nw = w.clone();
                nw.push(letter);
                out.push(FusionWord(nw.clone()));
                next.push(nw);
            }
        }
        frontier = next;
    }
    out
}

/// Checks that decoding intertwines the free fusion product with the ring
/// product for every pair. Decoded words are memoized, since each word
/// recurs across many pairs.
fn homomorphism_failures(
    d: &Arc<CoxeterDiagram>,
    set: &Arc<FusionSet>,
    pairs: &[(FusionWord, FusionWord)],
    decode: impl Fn(&FusionWord) -> Result<SubregularElement, String>,
) -> Result<usize, String> {
    let mut cache: std::collections::HashMap<FusionWord, SubregularElement> =
        std::collections::HashMap::new();
    let decode_cached = |w: &FusionWord,
                         cache: &mut std::collections::HashMap<FusionWord, SubregularElement>|
     -> Result<SubregularElement, String> {
        if let Some(x) = cache.get(w) {
            return Ok(x.clone());
        }
        let x = decode(w)?;
        cache.insert(w.clone(), x.clone());
        Ok(x)
    };
    let mut failures = 0usize;
    for (v, w) in pairs {
        let tv = basis(&decode_cached(v, &mut cache)?, d);
        let tw = basis(&decode_cached(w, &mut cache)?, d);
        let lhs = tv.mul(&tw).map_err(|e| e.to_string())?;
        let mut rhs = JElement::zero(d.clone());
        for (z, c) in ffr_mul(v, w, set).terms() {
            rhs.add_term(decode_cached(z, &mut cache)?, c);
        }
        if lhs != rhs {
            failures += 1;
        }
    }
    Ok(failures)
}

/// The infinite-edge triangle: words over {a, b} multiply exactly like the
/// box at the apex, and the encodings are mutually inverse.
pub fn thm_d_suite(
    d: &Arc<CoxeterDiagram>,
    max_word_sum: usize,
    round_trip_len: usize,
) -> Result<SuiteReport, SuiteError> {
    if !is_thm_d_diagram(d) {
        return Err(SuiteError::Mismatch(
            "diagram is not the infinite-edge triangle".into(),
        ));
    }
    let set = Arc::new(fusion_set_u());
    let mut report = SuiteReport::default();

    let words = all_fusion_words(&set, max_word_sum);
    let pairs: Vec<(FusionWord, FusionWord)> = words
        .iter()
        .flat_map(|v| {
            words
                .iter()
                .filter(move |w| v.len() + w.len() <= max_word_sum)
                .map(move |w| (v.clone(), w.clone()))
        })
        .collect();
    let failures = homomorphism_failures(d, &set, &pairs, |w| {
        decode_unitary(w, d).map_err(|e| e.to_string())
    })
    .map_err(SuiteError::Internal)?;
    report.push(
        format!(
            "product homomorphism on {} word pairs (length sum <= {max_word_sum})",
            pairs.len()
        ),
        failures == 0,
        (failures > 0).then(|| format!("{failures} failing pairs")),
    );

    let box_elements = enumerate_box(d, 0, 0, round_trip_len);
    let mut round_failures = 0usize;
    for x in &box_elements {
        let ok = encode_unitary(x)
            .and_then(|w| decode_unitary(&w, d))
            .map(|back| back == *x)
            .unwrap_or(false);
        if !ok {
            round_failures += 1;
        }
    }
    report.push(
        format!(
            "encode/decode round trip on {} box elements (length <= {round_trip_len})",
            box_elements.len()
        ),
        round_failures == 0,
        (round_failures > 0).then(|| format!("{round_failures} failures")),
    );

    let mut word_failures = 0usize;
    for w in all_fusion_words(&set, 4) {
        let ok = decode_unitary(&w, d)
            .map_err(|e| e.to_string())
            .and_then(|x| encode_unitary(&x).map_err(|e| e.to_string()))
            .map(|back| back == w)
            .unwrap_or(false);
        if !ok {
            word_failures += 1;
        }
    }
    report.push(
        "decode/encode round trip on all words of length <= 4",
        word_failures == 0,
        (word_failures > 0).then(|| format!("{word_failures} failures")),
    );
    Ok(report)
}

/// The star-over-a-path family: matrix-unit words multiply like the box at
/// the apex, and path elements compose.
pub fn thm_e_suite(
    d: &Arc<CoxeterDiagram>,
    max_word_len: usize,
) -> Result<SuiteReport, SuiteError> {
    let n = thm_e_n(d).ok_or_else(|| {
        SuiteError::Mismatch("diagram is not a star over a simply-laced path".into())
    })?;
    let set = Arc::new(fusion_set_z(n).map_err(to_internal)?);
    let mut report = SuiteReport::default();

    // keep the all-pairs check tractable for wide alphabets
    let mut max_word_len = max_word_len;
    while max_word_len > 1 && all_fusion_words(&set, max_word_len).len() > 1000 {
        max_word_len -= 1;
    }
    let words = all_fusion_words(&set, max_word_len);
    let pairs: Vec<(FusionWord, FusionWord)> = words
        .iter()
        .flat_map(|v| words.iter().map(move |w| (v.clone(), w.clone())))
        .collect();
    let failures = homomorphism_failures(d, &set, &pairs, |w| {
        decode_amalg(n, w, d).map_err(|e| e.to_string())
    })
    .map_err(SuiteError::Internal)?;
    report.push(
        format!(
            "product homomorphism on {} word pairs (each length <= {max_word_len})",
            pairs.len()
        ),
        failures == 0,
        (failures > 0).then(|| format!("{failures} failing pairs")),
    );

    let mut path_failures = 0usize;
    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                if !path_mult_check(n, i, j, k).map_err(to_internal)? {
                    path_failures += 1;
                }
            }
        }
    }
    report.push(
        format!("path composition on all {} triples", n * n * n),
        path_failures == 0,
        (path_failures > 0).then(|| format!("{path_failures} failing triples")),
    );

    let box_elements = enumerate_box(d, 0, 0, 3 + 2 * n);
    let mut round_failures = 0usize;
    for x in &box_elements {
        let ok = encode_amalg(n, x)
            .and_then(|w| decode_amalg(n, &w, d))
            .map(|back| back == *x)
            .unwrap_or(false);
        if !ok {
            round_failures += 1;
        }
    }
    report.push(
        format!(
            "encode/decode round trip on {} box elements",
            box_elements.len()
        ),
        round_failures == 0,
        (round_failures > 0).then(|| format!("{round_failures} failures")),
    );
    Ok(report)
}

// ---------------------------------------------------------------------------
// Oracle suite

/// Compares every structure constant produced by the combinatorial product
/// against the degree-one coefficient computed from the Kazhdan-Lusztig
/// basis, over all cell pairs with bounded length sum. Cases are grouped by
/// the pair of lengths.
pub fn hecke_suite(
    d: &Arc<CoxeterDiagram>,
    radius: usize,
    max_sum: usize,
) -> Result<SuiteReport, SuiteError> {
    let ball = Ball::build(d, radius).map_err(to_internal)?;
    let cell = ball.subregular_ids();
    let mut report = SuiteReport::default();
    report.check(
        format!(
            "ball of radius {radius} has {} elements, {} in the cell",
            ball.element_count(),
            cell.len()
        ),
        true,
    );

    let max_sum = max_sum.min(radius);
    // pair counts and failures grouped by (l(x), l(y))
    let mut buckets: std::collections::BTreeMap<(usize, usize), (usize, usize)> =
        std::collections::BTreeMap::new();
    for &y in &cell {
        let ly = ball.length(y);
        if ly + 1 > max_sum {
            continue;
        }
        let table = ball
            .c_products_for_right_factor(y, max_sum - ly)
            .map_err(to_internal)?;
        for &x in &cell {
            let lx = ball.length(x);
            if lx + ly > max_sum {
                continue;
            }
            let tx = JElement::t(ball.word(x).clone(), d).map_err(to_internal)?;
            let ty = JElement::t(ball.word(y).clone(), d).map_err(to_internal)?;
            let product = tx.mul(&ty).map_err(to_internal)?;

            let mut ok = table[x].values().all(|p| p.is_nonnegative());
            let mut ours = std::collections::BTreeMap::new();
            for (z, c) in product.terms() {
                match ball.id_of(z.word()) {
                    Some(zid) => {
                        ours.insert(zid, c);
                    }
                    None => ok = false,
                }
            }
            for &z in &cell {
                let oracle = table[x].get(&z).map(|p| p.coeff(1)).unwrap_or(0);
                if oracle != ours.get(&z).copied().unwrap_or(0) {
                    ok = false;
                }
            }
            let bucket = buckets.entry((lx, ly)).or_insert((0, 0));
            bucket.0 += 1;
            if !ok {
                bucket.1 += 1;
            }
        }
    }
    for ((lx, ly), (count, failures)) in buckets {
        report.push(
            format!("structure constants agree for {count} pairs with lengths ({lx}, {ly})"),
            failures == 0,
            (failures > 0).then(|| format!("{failures} failing pairs")),
        );
    }
    Ok(report)
}

// ---------------------------------------------------------------------------
// Dihedral factorization suite

/// Every cell element is the ordered product of the basis elements of its
/// dihedral segments.
pub fn factorization_suite(
    d: &Arc<CoxeterDiagram>,
    max_len: usize,
) -> Result<SuiteReport, SuiteError> {
    let cell = enumerate_cell(d, max_len);
    let mut failures = 0usize;
    for x in &cell {
        let segments = crate::word::dihedral_segments(x.word()).map_err(to_internal)?;
        let mut acc = JElement::t(segments[0].clone(), d).map_err(to_internal)?;
        for seg in &segments[1..] {
            let factor = JElement::t(seg.clone(), d).map_err(to_internal)?;
            acc = acc.mul(&factor).map_err(to_internal)?;
        }
        if acc != basis(x, d) {
            failures += 1;
        }
    }
    let mut report = SuiteReport::default();
    report.push(
        format!(
            "segment factorization on all {} cell elements (length <= {max_len})",
            cell.len()
        ),
        failures == 0,
        (failures > 0).then(|| format!("{failures} failures")),
    );
    Ok(report)
}

/// Scans basis pairs for coefficients of size at least two; such a
/// multiplicity is a finding to report, not an error.
pub fn multiplicity_scan(d: &Arc<CoxeterDiagram>, max_sum: usize) -> Vec<String> {
    let cell = enumerate_cell(d, max_sum.saturating_sub(1));
    let mut findings = Vec::new();
    for x in &cell {
        for y in &cell {
            if x.len() + y.len() > max_sum {
                continue;
            }
            if let Ok(product) = basis(x, d).mul(&basis(y, d)) {
                for (z, c) in product.terms() {
                    if c >= 2 {
                        findings.push(format!(
                            "coefficient {c} at {} in {} * {}",
                            z.word().render(d),
                            x.word().render(d),
                            y.word().render(d)
                        ));
                    }
                }
            }
        }
    }
    findings
}

fn to_internal(e: impl std::fmt::Display) -> SuiteError {
    SuiteError::Internal(e.to_string())
}
