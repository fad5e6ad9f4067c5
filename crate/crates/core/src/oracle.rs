//! Exact answers at small sizes: enumeration of all `q`-cycles, maximum
//! vertex-disjoint packing by branch and bound, and exhaustive or sampled
//! searches for tournaments that miss a packing target.
//!
//! Vertex sets are `u64` masks here, so the oracle handles at most 64 vertices.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gen;
use crate::packer::CyclePacking;
use crate::rng::{derive_seed, stream_rng, Stream};
use crate::tournament::{Cycle, Tournament};
use rand::Rng as _;

pub const MAX_ORACLE_VERTICES: usize = 64;

/// Default bound on the number of `q`-cycles the exact packing will enumerate.
pub const DEFAULT_CYCLE_CAP: usize = 1_000_000;

fn require_small(t: &Tournament, q: usize) -> Result<()> {
    if q < 3 {
        return Err(Error::InvalidParameter(format!("cycle length q={q} is below 3")));
    }
    if t.n() > MAX_ORACLE_VERTICES {
        return Err(Error::TooLarge(t.n()));
    }
    Ok(())
}

fn masks(t: &Tournament) -> (Vec<u64>, Vec<u64>) {
    let n = t.n();
    let mut out = vec![0u64; n];
    let mut inn = vec![0u64; n];
    for i in 0..n {
        for j in 0..n {
            if t.beats(i, j) {
                out[i] |= 1 << j;
                inn[j] |= 1 << i;
            }
        }
    }
    (out, inn)
}

fn reach(start: usize, adj: &[u64], within: u64) -> u64 {
    let mut seen = 1u64 << start;
    let mut frontier = seen;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let new = adj[v] & within & !seen;
        seen |= new;
        frontier |= new;
    }
    seen
}

fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(v)
        }
    })
}

/// All `q`-cycles, each once, rotated to start at its smallest label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleEnumeration {
    pub cycles: Vec<Cycle>,
    /// More than `cap` cycles exist; `cycles` holds the first `cap`.
    pub overflow: bool,
}

struct Enumerator<'a> {
    out: &'a [u64],
    inn: &'a [u64],
    q: usize,
    cap: usize,
    start: usize,
    allowed: u64,
    path: Vec<usize>,
    found: Vec<Vec<usize>>,
    overflow: bool,
}

impl Enumerator<'_> {
    fn extend(&mut self, v: usize, visited: u64) {
        if self.overflow {
            return;
        }
        let depth = self.path.len();
        if depth == self.q {
            if self.out[v] >> self.start & 1 == 1 {
                if self.found.len() == self.cap {
                    self.overflow = true;
                } else {
                    self.found.push(self.path.clone());
                }
            }
            return;
        }
        let mut cand = self.out[v] & self.allowed & !visited;
        if depth + 1 == self.q {
            cand &= self.inn[self.start];
        }
        for w in bits(cand) {
            self.path.push(w);
            self.extend(w, visited | 1 << w);
            self.path.pop();
        }
    }
}

/// Depth-first enumeration from each start vertex `s`, restricted to the
/// strong component of `s` among the vertices `≥ s`.
pub fn enumerate_q_cycles(t: &Tournament, q: usize, cap: usize) -> Result<CycleEnumeration> {
    require_small(t, q)?;
    let n = t.n();
    let (out, inn) = masks(t);
    let mut e = Enumerator {
        out: &out,
        inn: &inn,
        q,
        cap,
        start: 0,
        allowed: 0,
        path: Vec::with_capacity(q),
        found: Vec::new(),
        overflow: false,
    };
    for s in 0..n {
        let above = if s == 63 { 1u64 << 63 } else { !((1u64 << s) - 1) } & low_mask(n);
        let allowed = reach(s, &out, above) & reach(s, &inn, above);
        if (allowed.count_ones() as usize) < q {
            continue;
        }
        e.start = s;
        e.allowed = allowed;
        e.path.clear();
        e.path.push(s);
        e.extend(s, 1 << s);
        if e.overflow {
            break;
        }
    }
    Ok(CycleEnumeration {
        cycles: e.found.into_iter().map(Cycle::from_raw).collect(),
        overflow: e.overflow,
    })
}

fn low_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// A maximum packing and its size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaxPacking {
    pub count: usize,
    pub witness: CyclePacking,
}

struct Search<'a> {
    masks: &'a [u64],
    by_vertex: &'a [Vec<usize>],
    q: usize,
    limit: usize,
    chosen: Vec<usize>,
    best: Vec<usize>,
}

impl Search<'_> {
    fn run(&mut self, avail: u64) {
        if self.chosen.len() > self.best.len() {
            self.best = self.chosen.clone();
        }
        if self.best.len() >= self.limit {
            return;
        }
        if self.chosen.len() + avail.count_ones() as usize / self.q <= self.best.len() {
            return;
        }
        let pivot = bits(avail).find(|&v| self.by_vertex[v].iter().any(|&c| self.masks[c] & !avail == 0));
        let Some(v) = pivot else { return };
        let by_vertex = self.by_vertex;
        for &c in &by_vertex[v] {
            if self.masks[c] & !avail == 0 {
                self.chosen.push(c);
                self.run(avail & !self.masks[c]);
                self.chosen.pop();
                if self.best.len() >= self.limit {
                    return;
                }
            }
        }
        // below the pivot every remaining cycle avoids v
        let rest = avail & !(1u64 << v) & !((1u64 << v) - 1);
        self.run(rest);
    }
}

/// Maximum number of vertex-disjoint `q`-cycles, with a witness. With
/// `limit`, stops as soon as `limit` disjoint cycles are found.
pub fn max_disjoint_q_cycles(t: &Tournament, q: usize, limit: Option<usize>) -> Result<MaxPacking> {
    max_disjoint_q_cycles_capped(t, q, limit, DEFAULT_CYCLE_CAP)
}

/// As [`max_disjoint_q_cycles`], failing with [`Error::CapExceeded`] when `T`
/// has more than `cap` `q`-cycles.
pub fn max_disjoint_q_cycles_capped(
    t: &Tournament,
    q: usize,
    limit: Option<usize>,
    cap: usize,
) -> Result<MaxPacking> {
    let e = enumerate_q_cycles(t, q, cap)?;
    if e.overflow {
        return Err(Error::CapExceeded { cap });
    }
    let n = t.n();
    let cycle_masks: Vec<u64> = e
        .cycles
        .iter()
        .map(|c| c.vertices().iter().fold(0u64, |m, &v| m | 1 << v))
        .collect();
    let mut by_vertex = vec![Vec::new(); n];
    for (i, c) in e.cycles.iter().enumerate() {
        by_vertex[c.vertices()[0]].push(i);
    }
    let mut s = Search {
        masks: &cycle_masks,
        by_vertex: &by_vertex,
        q,
        limit: limit.unwrap_or(usize::MAX),
        chosen: Vec::new(),
        best: Vec::new(),
    };
    s.run(low_mask(n));
    let mut picked = s.best;
    picked.sort_unstable();
    Ok(MaxPacking {
        count: picked.len(),
        witness: CyclePacking {
            q,
            cycles: picked.into_iter().map(|i| e.cycles[i].clone()).collect(),
        },
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMode {
    /// Every labelled tournament in the range, as upper-triangle bit patterns.
    Exhaustive,
    /// `sample_count` seeded tournaments meeting the degree floor.
    Sampled,
}

/// A search for tournaments with minimum out-degree `≥ degree_floor` that do
/// not contain `k` disjoint `q`-cycles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchSpec {
    pub q: usize,
    pub k: usize,
    pub n_min: usize,
    pub n_max: usize,
    pub mode: SearchMode,
    pub sample_count: usize,
    pub seed: u64,
    /// Defaults to `(q − 1)k − 1`.
    pub degree_floor: Option<usize>,
    /// Exhaustive mode splits the pattern space into this many prefix shards (a power of two).
    pub shards: usize,
    pub cycle_cap: usize,
}

impl SearchSpec {
    pub fn new(q: usize, k: usize, n_min: usize, n_max: usize, mode: SearchMode) -> Self {
        SearchSpec {
            q,
            k,
            n_min,
            n_max,
            mode,
            sample_count: 0,
            seed: 0,
            degree_floor: None,
            shards: 64,
            cycle_cap: DEFAULT_CYCLE_CAP,
        }
    }

    pub fn floor(&self) -> usize {
        self.degree_floor.unwrap_or(((self.q - 1) * self.k).saturating_sub(1))
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidParameter(m));
        if self.q < 3 {
            return bad(format!("cycle length q={} is below 3", self.q));
        }
        if self.k == 0 {
            return bad("k must be at least 1".into());
        }
        if self.n_min < self.q {
            return bad(format!("smallest order {} is below q={}", self.n_min, self.q));
        }
        if self.n_min > self.n_max {
            return bad(format!("empty order range {}..={}", self.n_min, self.n_max));
        }
        if self.n_max > MAX_ORACLE_VERTICES {
            return bad(format!("order {} exceeds the oracle limit of {MAX_ORACLE_VERTICES}", self.n_max));
        }
        if !self.shards.is_power_of_two() {
            return bad(format!("shard count {} is not a power of two", self.shards));
        }
        if self.mode == SearchMode::Sampled && 2 * self.floor() + 1 > self.n_min {
            return Err(Error::Infeasible(format!(
                "no tournament on {} vertices has minimum out-degree {}",
                self.n_min,
                self.floor()
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchReport {
    pub examined: u64,
    pub violators: Vec<Tournament>,
    /// Instances with too many `q`-cycles for the exact check.
    pub undetermined: Vec<Tournament>,
    pub seed: u64,
}

impl SearchReport {
    /// One inline TRN line per violator, `undetermined <trn>` lines, then the summary.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for t in &self.violators {
            s.push_str(&t.to_trn_inline());
            s.push('\n');
        }
        for t in &self.undetermined {
            s.push_str(&format!("undetermined {}\n", t.to_trn_inline()));
        }
        s.push_str(&format!(
            "examined={} violators={} seed={}\n",
            self.examined,
            self.violators.len(),
            self.seed
        ));
        s
    }
}

#[derive(Default)]
struct Tally {
    examined: u64,
    violators: Vec<Tournament>,
    undetermined: Vec<Tournament>,
}

impl Tally {
    fn check(&mut self, t: Tournament, spec: &SearchSpec) {
        self.examined += 1;
        match max_disjoint_q_cycles_capped(&t, spec.q, Some(spec.k), spec.cycle_cap) {
            Ok(m) if m.count >= spec.k => {}
            Ok(_) => self.violators.push(t),
            Err(_) => self.undetermined.push(t),
        }
    }

    fn merge(&mut self, other: Tally) {
        self.examined += other.examined;
        self.violators.extend(other.violators);
        self.undetermined.extend(other.undetermined);
    }
}

/// Depth-first walk over upper-triangle patterns of order `n`, pruning any
/// vertex whose out-degree can no longer reach the floor.
struct Patterns<'a> {
    spec: &'a SearchSpec,
    n: usize,
    pairs: Vec<(usize, usize)>,
    floor: usize,
    out: Vec<usize>,
    open: Vec<usize>,
    bits: Vec<bool>,
    tally: Tally,
}

impl Patterns<'_> {
    fn set(&mut self, p: usize, bit: bool) -> bool {
        let (i, j) = self.pairs[p];
        self.bits[p] = bit;
        self.open[i] -= 1;
        self.open[j] -= 1;
        self.out[if bit { i } else { j }] += 1;
        self.out[i] + self.open[i] >= self.floor && self.out[j] + self.open[j] >= self.floor
    }

    fn unset(&mut self, p: usize) {
        let (i, j) = self.pairs[p];
        self.open[i] += 1;
        self.open[j] += 1;
        self.out[if self.bits[p] { i } else { j }] -= 1;
    }

    fn walk(&mut self, p: usize) {
        if p == self.pairs.len() {
            let mut it = self.bits.iter();
            let t = Tournament::from_fn(self.n, |_, _| *it.next().expect("one bit per pair")).expect("valid order");
            self.tally.check(t, self.spec);
            return;
        }
        for bit in [false, true] {
            if self.set(p, bit) {
                self.walk(p + 1);
            }
            self.unset(p);
        }
    }
}

fn exhaustive_shard(spec: &SearchSpec, n: usize, shard: usize, prefix: usize) -> Tally {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let m = pairs.len();
    let mut w = Patterns {
        spec,
        n,
        pairs,
        floor: spec.floor(),
        out: vec![0; n],
        open: vec![n - 1; n],
        bits: vec![false; m],
        tally: Tally::default(),
    };
    let mut alive = true;
    for p in 0..prefix {
        let bit = shard >> (prefix - 1 - p) & 1 == 1;
        alive &= w.set(p, bit);
    }
    if alive {
        w.walk(prefix);
    }
    w.tally
}

/// Runs the search; shard results are merged in shard order, so the report is
/// identical for identical specs whatever the thread count.
pub fn counterexample_search(spec: &SearchSpec) -> Result<SearchReport> {
    spec.validate()?;
    let mut total = Tally::default();
    match spec.mode {
        SearchMode::Exhaustive => {
            for n in spec.n_min..=spec.n_max {
                let m = n * (n - 1) / 2;
                let prefix = (spec.shards.trailing_zeros() as usize).min(m);
                let tallies: Vec<Tally> = (0..1usize << prefix)
                    .into_par_iter()
                    .map(|s| exhaustive_shard(spec, n, s, prefix))
                    .collect();
                tallies.into_iter().for_each(|t| total.merge(t));
            }
        }
        SearchMode::Sampled => {
            let floor = spec.floor();
            let tallies: Vec<Result<Tally>> = (0..spec.sample_count as u64)
                .into_par_iter()
                .map(|i| {
                    let seed = derive_seed(spec.seed, i);
                    let n = stream_rng(seed, Stream::Search).gen_range(spec.n_min..=spec.n_max);
                    let mut tally = Tally::default();
                    tally.check(gen::min_degree_tournament(n, floor, seed)?, spec);
                    Ok(tally)
                })
                .collect();
            for t in tallies {
                total.merge(t?);
            }
        }
    }
    Ok(SearchReport {
        examined: total.examined,
        violators: total.violators,
        undetermined: total.undetermined,
        seed: spec.seed,
    })
}
