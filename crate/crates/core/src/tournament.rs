//! Bit-matrix tournaments, vertex sets, cycles and paths.
//!
//! A [`Tournament`] stores one row of `n` bits per vertex for its out-neighbours
//! and a transposed copy for in-neighbours, so that every counting query
//! (`d⁺(X, Y)`, domination, degrees into a set) reduces to masked popcounts.

use std::fmt;

use crate::error::{Error, Result};

/// Largest vertex count accepted anywhere, bounded by the TRN format.
pub const MAX_VERTICES: usize = 4096;

#[inline]
fn words_for(n: usize) -> usize {
    n.div_ceil(64).max(1)
}

/// A subset of the vertices `0..n` of a tournament, stored as a bitset.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    universe: usize,
    words: Vec<u64>,
}

impl VertexSet {
    pub fn empty(universe: usize) -> Self {
        VertexSet {
            universe,
            words: vec![0; words_for(universe)],
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = Self::empty(universe);
        for v in 0..universe {
            s.insert(v);
        }
        s
    }

    /// Builds a set from vertices, rejecting out-of-range labels. Duplicates collapse.
    pub fn from_vertices(universe: usize, vertices: &[usize]) -> Result<Self> {
        let mut s = Self::empty(universe);
        for &v in vertices {
            if v >= universe {
                return Err(Error::VertexOutOfRange { vertex: v, n: universe });
            }
            s.insert(v);
        }
        Ok(s)
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    /// Panics if `v` is outside the universe.
    pub fn insert(&mut self, v: usize) -> bool {
        assert!(v < self.universe, "vertex {v} outside universe {}", self.universe);
        let (w, b) = (v / 64, v % 64);
        let fresh = self.words[w] & (1 << b) == 0;
        self.words[w] |= 1 << b;
        fresh
    }

    pub fn remove(&mut self, v: usize) -> bool {
        if v >= self.universe {
            return false;
        }
        let (w, b) = (v / 64, v % 64);
        let present = self.words[w] & (1 << b) != 0;
        self.words[w] &= !(1 << b);
        present
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        v < self.universe && self.words[v / 64] & (1 << (v % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    None
                } else {
                    let b = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    Some(i * 64 + b)
                }
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// First common vertex, if any.
    pub fn intersection_witness(&self, other: &VertexSet) -> Option<usize> {
        self.words
            .iter()
            .zip(&other.words)
            .enumerate()
            .find(|(_, (a, b))| *a & *b != 0)
            .map(|(i, (a, b))| i * 64 + (a & b).trailing_zeros() as usize)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.intersection_witness(other).is_none()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn difference_with(&mut self, other: &VertexSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn intersect_with(&mut self, other: &VertexSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        let mut s = self.clone();
        s.difference_with(other);
        s
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    #[inline]
    fn count_and(&self, row: &[u64]) -> usize {
        self.words
            .iter()
            .zip(row)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A tournament on the vertices `0..n`.
///
/// Immutable once built; every query is a pure function.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tournament {
    n: usize,
    stride: usize,
    out: Vec<u64>,
    inn: Vec<u64>,
}

impl Tournament {
    /// Builds from an orientation rule: `i_beats_j(i, j)` is consulted once
    /// for every pair `i < j`, in lexicographic order.
    pub fn from_fn(n: usize, mut i_beats_j: impl FnMut(usize, usize) -> bool) -> Result<Self> {
        if n == 0 {
            return Err(Error::Empty);
        }
        if n > MAX_VERTICES {
            return Err(Error::TooLarge(n));
        }
        let stride = words_for(n);
        let mut t = Tournament {
            n,
            stride,
            out: vec![0; n * stride],
            inn: vec![0; n * stride],
        };
        for i in 0..n {
            for j in i + 1..n {
                if i_beats_j(i, j) {
                    t.set(i, j);
                } else {
                    t.set(j, i);
                }
            }
        }
        Ok(t)
    }

    fn set(&mut self, from: usize, to: usize) {
        self.out[from * self.stride + to / 64] |= 1 << (to % 64);
        self.inn[to * self.stride + from / 64] |= 1 << (from % 64);
    }

    /// Builds from an explicit arc list in which every unordered pair appears exactly once.
    pub fn from_arcs(n: usize, arcs: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::Empty);
        }
        if n > MAX_VERTICES {
            return Err(Error::TooLarge(n));
        }
        // oriented[i][j] for i<j: Some(true) if i->j
        let mut oriented: Vec<Option<bool>> = vec![None; n * n];
        for &(a, b) in arcs {
            for v in [a, b] {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
            }
            if a == b {
                return Err(Error::SelfLoop(a));
            }
            let (lo, hi) = (a.min(b), a.max(b));
            let slot = &mut oriented[lo * n + hi];
            if slot.is_some() {
                return Err(Error::DuplicatePair(lo, hi));
            }
            *slot = Some(a == lo);
        }
        for i in 0..n {
            for j in i + 1..n {
                if oriented[i * n + j].is_none() {
                    return Err(Error::MissingPair(i, j));
                }
            }
        }
        Self::from_fn(n, |i, j| oriented[i * n + j] == Some(true))
    }

    /// The transitive tournament in which `i` beats `j` whenever `i < j`.
    pub fn transitive(n: usize) -> Result<Self> {
        Self::from_fn(n, |_, _| true)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn beats(&self, i: usize, j: usize) -> bool {
        debug_assert!(i < self.n && j < self.n);
        self.out[i * self.stride + j / 64] & (1 << (j % 64)) != 0
    }

    #[inline]
    pub(crate) fn out_row(&self, v: usize) -> &[u64] {
        &self.out[v * self.stride..(v + 1) * self.stride]
    }

    #[inline]
    pub(crate) fn in_row(&self, v: usize) -> &[u64] {
        &self.inn[v * self.stride..(v + 1) * self.stride]
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    fn check_set(&self, s: &VertexSet) -> Result<()> {
        if s.universe() == self.n {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!(
                "vertex set over {} vertices used with a tournament on {}",
                s.universe(),
                self.n
            )))
        }
    }

    pub fn out_degree(&self, v: usize) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.out_row(v).iter().map(|w| w.count_ones() as usize).sum())
    }

    pub fn in_degree(&self, v: usize) -> Result<usize> {
        self.out_degree(v).map(|d| self.n - 1 - d)
    }

    pub fn out_neighbors(&self, v: usize) -> VertexSet {
        VertexSet {
            universe: self.n,
            words: self.out_row(v).to_vec(),
        }
    }

    pub fn in_neighbors(&self, v: usize) -> VertexSet {
        VertexSet {
            universe: self.n,
            words: self.in_row(v).to_vec(),
        }
    }

    pub fn score_sequence(&self) -> Vec<usize> {
        (0..self.n)
            .map(|v| self.out_row(v).iter().map(|w| w.count_ones() as usize).sum())
            .collect()
    }

    /// δ⁺(T).
    pub fn min_out_degree(&self) -> usize {
        self.score_sequence().into_iter().min().unwrap_or(0)
    }

    /// δ⁻(T).
    pub fn min_in_degree(&self) -> usize {
        self.n - 1 - self.score_sequence().into_iter().max().unwrap_or(0)
    }

    /// Number of out-neighbours of `v` inside `set`; `v` itself never counts.
    #[inline]
    pub fn out_degree_into(&self, v: usize, set: &VertexSet) -> usize {
        set.count_and(self.out_row(v))
    }

    /// Number of in-neighbours of `v` inside `set`.
    #[inline]
    pub fn in_degree_from(&self, v: usize, set: &VertexSet) -> usize {
        set.count_and(self.in_row(v))
    }

    /// d⁺(X, Y): the number of arcs from `x` to `y`. The sets must be disjoint.
    pub fn arcs_between(&self, x: &VertexSet, y: &VertexSet) -> Result<usize> {
        self.check_set(x)?;
        self.check_set(y)?;
        if let Some(v) = x.intersection_witness(y) {
            return Err(Error::Overlap(v));
        }
        Ok(x.iter().map(|v| self.out_degree_into(v, y)).sum())
    }

    pub fn dominates(&self, x: &VertexSet, y: &VertexSet) -> Result<bool> {
        let arcs = self.arcs_between(x, y)?;
        Ok(arcs == x.len() * y.len())
    }

    /// The sub-tournament induced by `s`, plus the map from new labels to parent labels
    /// (new vertex `i` is the `i`-th smallest member of `s`).
    pub fn induced(&self, s: &VertexSet) -> Result<(Tournament, Vec<usize>)> {
        self.check_set(s)?;
        let map = s.to_vec();
        if map.is_empty() {
            return Err(Error::EmptySet);
        }
        let t = Tournament::from_fn(map.len(), |i, j| self.beats(map[i], map[j]))?;
        Ok((t, map))
    }

    /// Strong components of the whole tournament, in condensation order:
    /// each component dominates every later one.
    pub fn strong_components(&self) -> Vec<VertexSet> {
        self.strong_components_within(&self.vertices())
    }

    /// Strong components of the sub-tournament induced by `s`, in parent labels.
    ///
    /// Vertices are ranked by score inside `s`; the first `t` of them form a
    /// dominating union of components exactly when their scores sum to
    /// `t(t-1)/2 + t(|s|-t)`.
    pub fn strong_components_within(&self, s: &VertexSet) -> Vec<VertexSet> {
        let m = s.len();
        let mut ranked: Vec<(usize, usize)> = s
            .iter()
            .map(|v| (self.out_degree_into(v, s), v))
            .collect();
        ranked.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        let mut comps = Vec::new();
        let mut current = VertexSet::empty(self.n);
        let mut prefix = 0usize;
        for (t, &(score, v)) in ranked.iter().enumerate() {
            current.insert(v);
            prefix += score;
            let t = t + 1;
            if prefix == t * (t - 1) / 2 + t * (m - t) {
                comps.push(std::mem::replace(&mut current, VertexSet::empty(self.n)));
            }
        }
        comps
    }

    pub fn is_strong(&self) -> bool {
        self.strong_components().len() == 1
    }

    /// True iff the tournament has no directed cycle of length `q`; by Moon's
    /// theorem that is the case iff every strong component has fewer than `q` vertices.
    ///
    /// Panics if `q < 3`.
    pub fn is_q_cycle_free(&self, q: usize) -> bool {
        self.is_q_cycle_free_within(&self.vertices(), q)
    }

    pub fn is_q_cycle_free_within(&self, s: &VertexSet, q: usize) -> bool {
        assert!(q >= 3, "cycle length must be at least 3");
        self.strong_components_within(s).iter().all(|c| c.len() < q)
    }

    /// TRN text: `n` on the first line, then `n` rows of `0`/`1`.
    pub fn to_trn(&self) -> String {
        let mut s = String::with_capacity((self.n + 1) * (self.n + 1) + 8);
        s.push_str(&self.n.to_string());
        s.push('\n');
        for i in 0..self.n {
            for j in 0..self.n {
                s.push(if i != j && self.beats(i, j) { '1' } else { '0' });
            }
            s.push('\n');
        }
        s
    }

    /// Single-line TRN: `n` followed by the concatenated rows.
    pub fn to_trn_inline(&self) -> String {
        let mut s = self.n.to_string();
        s.push(' ');
        for i in 0..self.n {
            for j in 0..self.n {
                s.push(if i != j && self.beats(i, j) { '1' } else { '0' });
            }
        }
        s
    }

    pub fn from_trn(text: &str) -> Result<Self> {
        let err = |line: usize, msg: String| Error::Parse { line, msg };
        let body = text.strip_suffix('\n').unwrap_or(text);
        let mut lines = body.split('\n');
        let header = lines.next().unwrap_or("");
        if header.is_empty() || !header.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err(1, format!("expected a decimal vertex count, found {header:?}")));
        }
        let n: usize = header
            .parse()
            .map_err(|_| err(1, format!("vertex count {header:?} does not fit")))?;
        if n == 0 {
            return Err(err(1, "vertex count must be at least 1".into()));
        }
        if n > MAX_VERTICES {
            return Err(err(1, format!("vertex count {n} exceeds {MAX_VERTICES}")));
        }
        let rows: Vec<&str> = lines.collect();
        if rows.len() != n {
            return Err(err(
                rows.len().min(n) + 2,
                format!("expected {n} rows, found {}", rows.len()),
            ));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(err(i + 2, format!("expected {n} characters, found {}", row.len())));
            }
            if let Some(pos) = row.bytes().position(|b| b != b'0' && b != b'1') {
                return Err(err(i + 2, format!("unexpected byte {:?} in column {pos}", row.as_bytes()[pos] as char)));
            }
            if row.as_bytes()[i] != b'0' {
                return Err(err(i + 2, format!("diagonal entry ({i},{i}) must be 0")));
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                let a = rows[i].as_bytes()[j] == b'1';
                let b = rows[j].as_bytes()[i] == b'1';
                if a == b {
                    return Err(err(
                        i + 2,
                        format!("pair ({i},{j}) violates antisymmetry: both entries are {}", a as u8),
                    ));
                }
            }
        }
        Tournament::from_fn(n, |i, j| rows[i].as_bytes()[j] == b'1')
    }
}

impl fmt::Debug for Tournament {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tournament({})", self.to_trn_inline())
    }
}

/// Mutable orientation matrix used by generators; starts out transitive.
#[derive(Clone, Debug)]
pub struct TournamentBuilder {
    n: usize,
    beats: Vec<bool>,
}

impl TournamentBuilder {
    pub fn new(n: usize) -> Self {
        let mut beats = vec![false; n * n];
        for i in 0..n {
            for j in i + 1..n {
                beats[i * n + j] = true;
            }
        }
        TournamentBuilder { n, beats }
    }

    pub fn from_tournament(t: &Tournament) -> Self {
        let n = t.n();
        let mut beats = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                beats[i * n + j] = i != j && t.beats(i, j);
            }
        }
        TournamentBuilder { n, beats }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Orients the pair so that `from` beats `to`.
    pub fn arc(&mut self, from: usize, to: usize) -> &mut Self {
        assert!(from != to && from < self.n && to < self.n);
        self.beats[from * self.n + to] = true;
        self.beats[to * self.n + from] = false;
        self
    }

    pub fn beats(&self, i: usize, j: usize) -> bool {
        self.beats[i * self.n + j]
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.beats[v * self.n..(v + 1) * self.n].iter().filter(|&&b| b).count()
    }

    pub fn build(&self) -> Result<Tournament> {
        Tournament::from_fn(self.n, |i, j| self.beats[i * self.n + j])
    }
}

fn check_distinct_in_range(n: usize, seq: &[usize]) -> std::result::Result<(), String> {
    let mut seen = VertexSet::empty(n);
    for &v in seq {
        if v >= n {
            return Err(format!("vertex {v} out of range for {n} vertices"));
        }
        if !seen.insert(v) {
            return Err(format!("vertex {v} repeated"));
        }
    }
    Ok(())
}

/// A directed cycle `(v_1 … v_m v_1)`, `m ≥ 3`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Cycle {
    seq: Vec<usize>,
}

impl Cycle {
    pub fn new(t: &Tournament, seq: Vec<usize>) -> Result<Self> {
        let c = Cycle { seq };
        c.validate(t)?;
        Ok(c)
    }

    /// Wraps a vertex sequence without checking it; see [`Cycle::validate`].
    pub fn from_raw(seq: Vec<usize>) -> Self {
        Cycle { seq }
    }

    pub fn validate(&self, t: &Tournament) -> Result<()> {
        if self.seq.len() < 3 {
            return Err(Error::InvalidCycle(format!(
                "length {} is below 3",
                self.seq.len()
            )));
        }
        check_distinct_in_range(t.n(), &self.seq).map_err(Error::InvalidCycle)?;
        for (a, b) in self.arcs() {
            if !t.beats(a, b) {
                return Err(Error::InvalidCycle(format!("missing arc {a} -> {b}")));
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    pub fn vertices(&self) -> &[usize] {
        &self.seq
    }

    pub fn into_vertices(self) -> Vec<usize> {
        self.seq
    }

    pub fn vertex_set(&self, n: usize) -> VertexSet {
        let mut s = VertexSet::empty(n);
        for &v in &self.seq {
            s.insert(v);
        }
        s
    }

    pub fn contains(&self, v: usize) -> bool {
        self.seq.contains(&v)
    }

    pub fn position(&self, v: usize) -> Option<usize> {
        self.seq.iter().position(|&x| x == v)
    }

    /// Consecutive arcs including the closing one.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let m = self.seq.len();
        (0..m).map(move |i| (self.seq[i], self.seq[(i + 1) % m]))
    }

    /// The same cycle started at `v`. Panics if `v` is not on it.
    pub fn rotated_to(&self, v: usize) -> Cycle {
        let p = self.position(v).expect("vertex on cycle");
        let mut seq = self.seq[p..].to_vec();
        seq.extend_from_slice(&self.seq[..p]);
        Cycle { seq }
    }

    /// Rotation starting at the smallest label.
    pub fn canonical(&self) -> Cycle {
        match self.seq.iter().min() {
            Some(&m) => self.rotated_to(m),
            None => self.clone(),
        }
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_labels(f, &self.seq)
    }
}

fn write_labels(f: &mut fmt::Formatter<'_>, seq: &[usize]) -> fmt::Result {
    for (i, v) in seq.iter().enumerate() {
        if i > 0 {
            f.write_str(" ")?;
        }
        write!(f, "{v}")?;
    }
    Ok(())
}

/// A directed path; may be empty.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Path {
    seq: Vec<usize>,
}

impl Path {
    pub fn new(t: &Tournament, seq: Vec<usize>) -> Result<Self> {
        let p = Path { seq };
        p.validate(t)?;
        Ok(p)
    }

    pub fn from_raw(seq: Vec<usize>) -> Self {
        Path { seq }
    }

    pub fn validate(&self, t: &Tournament) -> Result<()> {
        check_distinct_in_range(t.n(), &self.seq).map_err(Error::InvalidPath)?;
        for w in self.seq.windows(2) {
            if !t.beats(w[0], w[1]) {
                return Err(Error::InvalidPath(format!("missing arc {} -> {}", w[0], w[1])));
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    pub fn vertices(&self) -> &[usize] {
        &self.seq
    }

    pub fn into_vertices(self) -> Vec<usize> {
        self.seq
    }

    pub fn first(&self) -> Option<usize> {
        self.seq.first().copied()
    }

    pub fn last(&self) -> Option<usize> {
        self.seq.last().copied()
    }

    pub fn vertex_set(&self, n: usize) -> VertexSet {
        let mut s = VertexSet::empty(n);
        for &v in &self.seq {
            s.insert(v);
        }
        s
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_labels(f, &self.seq)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn paley7() -> Tournament {
        Tournament::from_fn(7, |i, j| [1, 2, 4].contains(&((j + 7 - i) % 7))).unwrap()
    }

    fn set(n: usize, vs: &[usize]) -> VertexSet {
        VertexSet::from_vertices(n, vs).unwrap()
    }

    fn three_cycle() -> Tournament {
        Tournament::from_arcs(3, &[(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    #[test]
    fn build_from_arc_lists() {
        let t = Tournament::from_arcs(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(t, Tournament::transitive(3).unwrap());
        let c = three_cycle();
        assert!(c.beats(2, 0) && !c.beats(0, 2));
        assert!(c.is_strong());
    }

    #[test]
    fn build_rejects_each_defect_distinctly() {
        assert_eq!(
            Tournament::from_arcs(3, &[(0, 1), (1, 0), (1, 2), (0, 2)]),
            Err(Error::DuplicatePair(0, 1))
        );
        assert_eq!(
            Tournament::from_arcs(3, &[(0, 1), (1, 2)]),
            Err(Error::MissingPair(0, 2))
        );
        assert_eq!(
            Tournament::from_arcs(3, &[(0, 0), (0, 1), (1, 2), (0, 2)]),
            Err(Error::SelfLoop(0))
        );
        assert_eq!(
            Tournament::from_arcs(3, &[(0, 3)]),
            Err(Error::VertexOutOfRange { vertex: 3, n: 3 })
        );
    }

    #[test]
    fn degrees() {
        let tr = Tournament::transitive(3).unwrap();
        assert_eq!(tr.out_degree(0).unwrap(), 2);
        assert_eq!(Tournament::transitive(6).unwrap().min_out_degree(), 0);
        let c = three_cycle();
        assert!((0..3).all(|v| c.out_degree(v).unwrap() == 1));
        assert_eq!(c.min_out_degree(), 1);
        let p = paley7();
        assert!((0..7).all(|v| p.out_degree(v).unwrap() == 3));
        assert_eq!(p.min_out_degree(), 3);
        assert_eq!(p.min_in_degree(), 3);
        assert!(p.out_degree(7).is_err());
    }

    #[test]
    fn arcs_between_and_domination() {
        let t4 = Tournament::transitive(4).unwrap();
        assert_eq!(t4.arcs_between(&set(4, &[0, 1]), &set(4, &[2, 3])).unwrap(), 4);
        assert_eq!(t4.arcs_between(&set(4, &[2, 3]), &set(4, &[0, 1])).unwrap(), 0);
        assert_eq!(
            t4.arcs_between(&set(4, &[0, 1]), &set(4, &[1, 2])),
            Err(Error::Overlap(1))
        );

        // pair-by-pair count over the 9 pairs
        let p = paley7();
        let qr = [1usize, 2, 4];
        let mut brute = 0;
        for x in 0..3usize {
            for y in 3..6usize {
                if qr.contains(&((y + 7 - x) % 7)) {
                    brute += 1;
                }
            }
        }
        assert_eq!(p.arcs_between(&set(7, &[0, 1, 2]), &set(7, &[3, 4, 5])).unwrap(), brute);

        assert!(t4.dominates(&set(4, &[0]), &set(4, &[1, 2, 3])).unwrap());
        assert!(!three_cycle().dominates(&set(3, &[0]), &set(3, &[1, 2])).unwrap());
        assert!(p.dominates(&VertexSet::empty(7), &set(7, &[1, 2])).unwrap());
    }

    #[test]
    fn induced_subtournaments() {
        let t5 = Tournament::transitive(5).unwrap();
        let (sub, map) = t5.induced(&set(5, &[1, 3, 4])).unwrap();
        assert_eq!(sub, Tournament::transitive(3).unwrap());
        assert_eq!(map, vec![1, 3, 4]);

        // 0->1 (1 is a residue), 1->3 (2), 3->0 (4)
        let (sub, map) = paley7().induced(&set(7, &[0, 1, 3])).unwrap();
        assert_eq!(sub, three_cycle());
        assert_eq!(map, vec![0, 1, 3]);

        let p = paley7();
        let (whole, map) = p.induced(&p.vertices()).unwrap();
        assert_eq!(whole, p);
        assert_eq!(map, (0..7).collect::<Vec<_>>());

        assert_eq!(p.induced(&VertexSet::empty(7)).unwrap_err(), Error::EmptySet);
    }

    #[test]
    fn strong_components_in_condensation_order() {
        let t4 = Tournament::transitive(4).unwrap();
        let comps: Vec<_> = t4.strong_components().iter().map(|c| c.to_vec()).collect();
        assert_eq!(comps, vec![vec![0], vec![1], vec![2], vec![3]]);

        let comps: Vec<_> = three_cycle().strong_components().iter().map(|c| c.to_vec()).collect();
        assert_eq!(comps, vec![vec![0, 1, 2]]);

        let mut b = TournamentBuilder::new(5);
        b.arc(1, 2).arc(2, 0).arc(0, 1).arc(3, 4);
        let t = b.build().unwrap();
        let comps: Vec<_> = t.strong_components().iter().map(|c| c.to_vec()).collect();
        assert_eq!(comps, vec![vec![0, 1, 2], vec![3], vec![4]]);
    }

    #[test]
    fn q_cycle_freeness() {
        assert!(Tournament::transitive(8).unwrap().is_q_cycle_free(3));
        assert!(!paley7().is_q_cycle_free(7));
        assert!(three_cycle().is_q_cycle_free(4));
        assert!(!three_cycle().is_q_cycle_free(3));
    }

    #[test]
    fn trn_text_format() {
        let t = three_cycle();
        assert_eq!(t.to_trn(), "3\n010\n001\n100\n");
        assert_eq!(Tournament::from_trn("3\n010\n001\n100\n").unwrap(), t);
        assert_eq!(Tournament::from_trn("3\n010\n001\n100").unwrap(), t);
        assert_eq!(t.to_trn_inline(), "3 010001100");

        for bad in [
            "",
            "3\n010\n001\n",
            "3\n010\n001\n100\n\n",
            "3\n010\n001\n101\n",
            "3\n110\n001\n100\n",
            "3\n011\n001\n100\n",
            "3\n010\n0x1\n100\n",
            "3\r\n010\r\n001\r\n100\r\n",
            " 3\n010\n001\n100\n",
            "0\n",
            "4097\n",
        ] {
            assert!(matches!(Tournament::from_trn(bad), Err(Error::Parse { .. })), "{bad:?}");
        }
    }

    #[test]
    fn cycle_and_path_validation() {
        let t = paley7();
        assert!(Cycle::new(&t, vec![0, 1, 3]).is_ok());
        assert!(Cycle::new(&t, vec![0, 3, 1]).is_err());
        assert!(Cycle::new(&t, vec![0, 1]).is_err());
        assert!(Cycle::new(&t, vec![0, 1, 0]).is_err());
        assert!(Path::new(&t, vec![0, 1, 2]).is_ok());
        assert!(Path::new(&t, vec![]).is_ok());
        assert!(Path::new(&t, vec![1, 0]).is_err());
        let c = Cycle::new(&t, vec![1, 3, 0]).unwrap();
        assert_eq!(c.canonical().vertices(), &[0, 1, 3]);
        assert_eq!(c.to_string(), "1 3 0");
    }

    #[test]
    fn vertex_set_ops() {
        let mut s = set(130, &[0, 64, 129]);
        assert_eq!(s.len(), 3);
        assert!(s.contains(129) && !s.contains(128));
        assert!(!s.insert(64));
        assert!(s.remove(64));
        assert_eq!(s.to_vec(), vec![0, 129]);
        let o = set(130, &[129, 5]);
        assert_eq!(s.intersection_witness(&o), Some(129));
        assert_eq!(s.union(&o).to_vec(), vec![0, 5, 129]);
        assert_eq!(s.difference(&o).to_vec(), vec![0]);
        assert!(set(130, &[0]).is_subset(&s));
        assert!(VertexSet::from_vertices(3, &[3]).is_err());
    }
}
