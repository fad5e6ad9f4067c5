//! Maximum matchings on the arcs from `X` to `Y` inside a tournament, with the
//! König cover that certifies optimality, and the counting thresholds that
//! force large matchings or dominating vertices.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::tournament::{Tournament, VertexSet};

/// Vertex-disjoint arcs `(x, y)` with `x ∈ X`, `y ∈ Y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    pub pairs: Vec<(usize, usize)>,
}

impl Matching {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// The partner of `x` on the `X` side, if matched.
    pub fn partner_of_source(&self, x: usize) -> Option<usize> {
        self.pairs.iter().find(|p| p.0 == x).map(|p| p.1)
    }

    /// The partner of `y` on the `Y` side, if matched.
    pub fn partner_of_target(&self, y: usize) -> Option<usize> {
        self.pairs.iter().find(|p| p.1 == y).map(|p| p.0)
    }
}

/// A set of vertices meeting every arc from `X` to `Y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexCover {
    pub members: VertexSet,
}

impl VertexCover {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

fn check_disjoint(x: &VertexSet, y: &VertexSet) -> Result<()> {
    match x.intersection_witness(y) {
        Some(v) => Err(Error::Overlap(v)),
        None => Ok(()),
    }
}

struct Kuhn<'a> {
    t: &'a Tournament,
    y: &'a VertexSet,
    match_of_y: Vec<Option<usize>>,
    seen: Vec<bool>,
}

impl Kuhn<'_> {
    fn augment(&mut self, x: usize) -> bool {
        let mut targets = self.t.out_neighbors(x);
        targets.intersect_with(self.y);
        for y in targets.iter() {
            if self.seen[y] {
                continue;
            }
            self.seen[y] = true;
            let free = match self.match_of_y[y] {
                None => true,
                Some(other) => self.augment(other),
            };
            if free {
                self.match_of_y[y] = Some(x);
                return true;
            }
        }
        false
    }
}

/// Maximum matching from `x` to `y` together with a minimum vertex cover of
/// the same size (König). The cover is `(X ∖ Z) ∪ (Y ∩ Z)`, where `Z` is the
/// set reached by alternating paths from unmatched vertices of `X`.
pub fn max_matching_with_cover(
    t: &Tournament,
    x: &VertexSet,
    y: &VertexSet,
) -> Result<(Matching, VertexCover)> {
    check_disjoint(x, y)?;
    let n = t.n();
    let mut k = Kuhn {
        t,
        y,
        match_of_y: vec![None; n],
        seen: vec![false; n],
    };
    for v in x.iter() {
        k.seen.iter_mut().for_each(|s| *s = false);
        k.augment(v);
    }
    let mut match_of_x = vec![None; n];
    let mut pairs = Vec::new();
    for w in y.iter() {
        if let Some(v) = k.match_of_y[w] {
            match_of_x[v] = Some(w);
            pairs.push((v, w));
        }
    }
    pairs.sort_unstable();

    let mut reached = VertexSet::empty(n);
    let mut queue: VecDeque<usize> = x.iter().filter(|&v| match_of_x[v].is_none()).collect();
    for &v in &queue {
        reached.insert(v);
    }
    while let Some(v) = queue.pop_front() {
        let mut targets = t.out_neighbors(v);
        targets.intersect_with(y);
        for w in targets.iter() {
            if match_of_x[v] == Some(w) || !reached.insert(w) {
                continue;
            }
            if let Some(u) = k.match_of_y[w] {
                if reached.insert(u) {
                    queue.push_back(u);
                }
            }
        }
    }
    let mut members = x.difference(&reached);
    members.union_with(&y.intersection(&reached));
    Ok((Matching { pairs }, VertexCover { members }))
}

/// True iff there are `k` vertex-disjoint arcs from `x` to `y`.
pub fn has_k_matching(t: &Tournament, x: &VertexSet, y: &VertexSet, k: usize) -> Result<bool> {
    Ok(max_matching_with_cover(t, x, y)?.0.len() >= k)
}

/// All `v ∈ x` dominating `y`.
pub fn dominating_vertices(t: &Tournament, x: &VertexSet, y: &VertexSet) -> Result<VertexSet> {
    check_disjoint(x, y)?;
    let need = y.len();
    let mut out = VertexSet::empty(t.n());
    for v in x.iter().filter(|&v| t.out_degree_into(v, y) == need) {
        out.insert(v);
    }
    Ok(out)
}

/// Which counting threshold a pair `(S₁, S₂)` is tested against, with `|S₂| = q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Threshold {
    /// `|S₁| = q + 1`, `d⁺(S₁,S₂) ≥ q² − q − 1` forces a `(q − 1)`-matching.
    NearFullMinusOne,
    /// `|S₁| = q + 1`, `d⁺(S₁,S₂) ≥ q²` forces a `q`-matching.
    NearFull,
    /// `|S₁| = q`, `d⁺(S₁,S₂) ≥ q² − q + 3` forces a `q`-matching and three vertices dominating `S₂`.
    Square,
}

impl Threshold {
    pub fn source_size(self, q: usize) -> usize {
        match self {
            Threshold::NearFullMinusOne | Threshold::NearFull => q + 1,
            Threshold::Square => q,
        }
    }

    pub fn min_arcs(self, q: usize) -> usize {
        match self {
            Threshold::NearFullMinusOne => q * q - q - 1,
            Threshold::NearFull => q * q,
            Threshold::Square => q * q - q + 3,
        }
    }

    pub fn promised_matching(self, q: usize) -> usize {
        match self {
            Threshold::NearFullMinusOne => q - 1,
            Threshold::NearFull | Threshold::Square => q,
        }
    }
}

/// Outcome of checking one threshold instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThresholdCheck {
    pub arcs: usize,
    pub applies: bool,
    pub matching: usize,
    pub dominating: usize,
    pub holds: bool,
}

/// Checks the threshold promise on `(s1, s2)`: returns whether the arc count
/// meets it and, if so, whether the promised structure is present.
pub fn check_threshold(
    t: &Tournament,
    s1: &VertexSet,
    s2: &VertexSet,
    q: usize,
    which: Threshold,
) -> Result<ThresholdCheck> {
    if s2.len() != q || s1.len() != which.source_size(q) {
        return Err(Error::Precondition(format!(
            "threshold needs |S1| = {} and |S2| = {q}, got {} and {}",
            which.source_size(q),
            s1.len(),
            s2.len()
        )));
    }
    let arcs = t.arcs_between(s1, s2)?;
    let (m, _) = max_matching_with_cover(t, s1, s2)?;
    let dominating = dominating_vertices(t, s1, s2)?.len();
    let applies = arcs >= which.min_arcs(q);
    let mut holds = m.len() >= which.promised_matching(q);
    if which == Threshold::Square {
        holds &= dominating >= 3;
    }
    Ok(ThresholdCheck {
        arcs,
        applies,
        matching: m.len(),
        dominating,
        holds: !applies || holds,
    })
}
