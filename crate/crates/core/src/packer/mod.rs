//! Packing disjoint `q`-cycles: greedy maximal packing, local improvement
//! moves, and an exact fallback at small sizes.

use std::fmt;

use crate::classic;
use crate::error::{Error, Result};
use crate::oracle;
use crate::tournament::{Cycle, Path, Tournament, VertexSet};

mod moves;
mod tail;

pub use moves::{
    claim2_hypothesis, claim4_hypothesis, claim5_hypothesis, move_absorb, move_three_for_two,
    move_two_for_one,
};
pub use tail::{classify_tail, grow_tail, select_receptive_cycle, tail_length, TailCase, TailGrowth};

/// A family of pairwise vertex-disjoint cycles, all of length `q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclePacking {
    pub q: usize,
    pub cycles: Vec<Cycle>,
}

impl CyclePacking {
    pub fn new(q: usize) -> Self {
        CyclePacking { q, cycles: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    /// Vertices on some cycle of the family.
    pub fn covered(&self, n: usize) -> VertexSet {
        let mut s = VertexSet::empty(n);
        for c in &self.cycles {
            for &v in c.vertices() {
                s.insert(v);
            }
        }
        s
    }

    /// `V(T) ∖ V(F)`.
    pub fn remainder(&self, t: &Tournament) -> VertexSet {
        t.vertices().difference(&self.covered(t.n()))
    }

    /// The family with cycle `index` replaced by `cycles`.
    pub(crate) fn replacing(&self, index: &[usize], cycles: Vec<Cycle>) -> CyclePacking {
        let mut out: Vec<Cycle> = self
            .cycles
            .iter()
            .enumerate()
            .filter(|(i, _)| !index.contains(i))
            .map(|(_, c)| c.clone())
            .collect();
        out.extend(cycles);
        CyclePacking { q: self.q, cycles: out }
    }
}

/// First violated packing invariant, as reported by [`verify_packing`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PackingViolation {
    QMismatch { declared: usize, expected: usize },
    WrongLength { cycle: usize, len: usize, q: usize },
    OutOfRange { cycle: usize, vertex: usize },
    RepeatedVertex { cycle: usize, vertex: usize },
    MissingArc { cycle: usize, from: usize, to: usize },
    SharedVertex { vertex: usize, first: usize, second: usize },
    TooFew { found: usize, k: usize },
}

impl fmt::Display for PackingViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use PackingViolation::*;
        match *self {
            QMismatch { declared, expected } => {
                write!(f, "packing declares q={declared} but q={expected} was requested")
            }
            WrongLength { cycle, len, q } => write!(f, "cycle {cycle} has length {len}, expected {q}"),
            OutOfRange { cycle, vertex } => write!(f, "cycle {cycle} uses vertex {vertex}, which is out of range"),
            RepeatedVertex { cycle, vertex } => write!(f, "cycle {cycle} repeats vertex {vertex}"),
            MissingArc { cycle, from, to } => write!(f, "cycle {cycle} steps {from} -> {to}, which is not an arc"),
            SharedVertex { vertex, first, second } => {
                write!(f, "vertex {vertex} is shared by cycles {first} and {second}")
            }
            TooFew { found, k } => write!(f, "found {found} cycles, need at least {k}"),
        }
    }
}

/// Checks every packing invariant and the size target, reporting the first violation.
pub fn verify_packing(
    t: &Tournament,
    packing: &CyclePacking,
    q: usize,
    k: usize,
) -> std::result::Result<(), PackingViolation> {
    if packing.q != q {
        return Err(PackingViolation::QMismatch { declared: packing.q, expected: q });
    }
    let n = t.n();
    let mut owner: Vec<Option<usize>> = vec![None; n];
    for (ci, c) in packing.cycles.iter().enumerate() {
        if c.len() != q {
            return Err(PackingViolation::WrongLength { cycle: ci, len: c.len(), q });
        }
        for &v in c.vertices() {
            if v >= n {
                return Err(PackingViolation::OutOfRange { cycle: ci, vertex: v });
            }
            match owner[v] {
                Some(o) if o == ci => return Err(PackingViolation::RepeatedVertex { cycle: ci, vertex: v }),
                Some(o) => return Err(PackingViolation::SharedVertex { vertex: v, first: o, second: ci }),
                None => owner[v] = Some(ci),
            }
        }
        if let Some((from, to)) = c.arcs().find(|&(a, b)| !t.beats(a, b)) {
            return Err(PackingViolation::MissingArc { cycle: ci, from, to });
        }
    }
    if packing.len() < k {
        return Err(PackingViolation::TooFew { found: packing.len(), k });
    }
    Ok(())
}

fn require_q(q: usize) -> Result<()> {
    if q < 3 {
        Err(Error::InvalidParameter(format!("cycle length q={q} is below 3")))
    } else {
        Ok(())
    }
}

/// Adds `q`-cycles to `f` until the remainder is `q`-cycle-free: each new
/// cycle comes from the first strong component of size `≥ q` of the remainder.
pub(crate) fn top_up(t: &Tournament, mut f: CyclePacking) -> CyclePacking {
    let q = f.q;
    loop {
        let rest = f.remainder(t);
        let comps = t.strong_components_within(&rest);
        let Some(comp) = comps.iter().find(|c| c.len() >= q) else {
            return f;
        };
        let c = classic::cycle_of_length_within(t, comp, q).expect("strong component");
        f.cycles.push(c);
    }
}

/// A maximal (not necessarily maximum) family of disjoint `q`-cycles.
pub fn greedy_maximal_packing(t: &Tournament, q: usize) -> Result<CyclePacking> {
    require_q(q)?;
    Ok(top_up(t, CyclePacking::new(q)))
}

/// The split of a Hamiltonian path `P = (u_l … u_2 u_1)` of the remainder:
/// `U₁` is the last `q + 1` vertices, `S` the `3q − 6` before them, `U₂` the rest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathPartition {
    pub q: usize,
    /// In path direction: `path.last()` is `u_1`.
    pub path: Path,
    pub u1: VertexSet,
    pub s: VertexSet,
    pub u2: VertexSet,
}

impl PathPartition {
    /// Too short for the segment moves: `|P| < 4q − 5`.
    pub fn is_degenerate(&self) -> bool {
        self.path.len() + 5 < 4 * self.q
    }

    /// `u_i`, counting from the end of the path (`u_1` is the last vertex).
    pub fn u(&self, i: usize) -> usize {
        let len = self.path.len();
        assert!(i >= 1 && i <= len, "u_{i} outside a path of {len} vertices");
        self.path.vertices()[len - i]
    }

    /// The `i` with `u_i = v`.
    pub fn index_of(&self, v: usize) -> Option<usize> {
        let len = self.path.len();
        self.path.vertices().iter().position(|&x| x == v).map(|p| len - p)
    }

    /// `(u_from, u_{from-1}, …, u_to)` along the path, `from ≥ to`.
    pub fn run(&self, from: usize, to: usize) -> Vec<usize> {
        (to..=from).rev().map(|i| self.u(i)).collect()
    }
}

/// Hamiltonian path of the `q`-cycle-free remainder of `f`, split into `U₁`, `S`, `U₂`.
/// Short remainders fill `U₁` then `S` with what exists.
pub fn partition_remainder(t: &Tournament, f: &CyclePacking) -> Result<PathPartition> {
    require_q(f.q)?;
    let rest = f.remainder(t);
    if !t.is_q_cycle_free_within(&rest, f.q) {
        return Err(Error::Precondition(format!(
            "the remainder still contains a {}-cycle",
            f.q
        )));
    }
    let path = classic::hamiltonian_path_within(t, &rest);
    Ok(split_path(t.n(), f.q, path))
}

pub(crate) fn split_path(n: usize, q: usize, path: Path) -> PathPartition {
    let len = path.len();
    let mut u1 = VertexSet::empty(n);
    let mut s = VertexSet::empty(n);
    let mut u2 = VertexSet::empty(n);
    for (pos, &v) in path.vertices().iter().enumerate() {
        let i = len - pos;
        if i <= q + 1 {
            u1.insert(v);
        } else if i + 5 <= 4 * q {
            s.insert(v);
        } else {
            u2.insert(v);
        }
    }
    PathPartition { q, path, u1, s, u2 }
}

/// Limits for [`pack`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Improvement attempts; `None` means `n²`.
    pub max_moves: Option<usize>,
    /// The exact oracle runs only when `T` has at most this many `q`-cycles.
    pub oracle_cycle_limit: usize,
    pub use_oracle: bool,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_moves: None,
            oracle_cycle_limit: 200_000,
            use_oracle: true,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PackStatus {
    TargetMet,
    MaximalButShort,
    HypothesisUnmet,
}

impl PackStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            PackStatus::TargetMet => "target_met",
            PackStatus::MaximalButShort => "maximal_but_short",
            PackStatus::HypothesisUnmet => "hypothesis_unmet",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "target_met" => Some(PackStatus::TargetMet),
            "maximal_but_short" => Some(PackStatus::MaximalButShort),
            "hypothesis_unmet" => Some(PackStatus::HypothesisUnmet),
            _ => None,
        }
    }
}

/// One applied improvement move.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoveRecord {
    pub name: String,
    pub before: usize,
    pub after: usize,
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PackReport {
    pub q: usize,
    pub k: usize,
    pub packing: CyclePacking,
    pub status: PackStatus,
    pub moves: Vec<MoveRecord>,
    pub fallback_used: bool,
    /// Set when `δ⁺ ≥ (q−1)k − 1`, `q ≥ 11`, and even the exact maximum is below `k`.
    pub counterexample: bool,
    pub diagnostics: Vec<String>,
}

impl PackReport {
    pub fn target_met(&self) -> bool {
        self.packing.len() >= self.k
    }

    /// Line-oriented document: `key=value` header lines, one line of
    /// space-separated labels per cycle, then `MOVE` lines.
    pub fn to_document(&self) -> String {
        let mut s = String::new();
        s.push_str(&format!("status={}\n", self.status.as_str()));
        s.push_str(&format!("q={}\n", self.q));
        s.push_str(&format!("k={}\n", self.k));
        s.push_str(&format!("size={}\n", self.packing.len()));
        s.push_str(&format!("fallback_used={}\n", self.fallback_used));
        if self.counterexample {
            s.push_str("counterexample=true\n");
        }
        for c in &self.packing.cycles {
            s.push_str(&c.to_string());
            s.push('\n');
        }
        for m in &self.moves {
            s.push_str(&format!("MOVE {} before={} after={}", m.name, m.before, m.after));
            if let Some(d) = &m.detail {
                s.push(' ');
                s.push_str(d);
            }
            s.push('\n');
        }
        for d in &self.diagnostics {
            s.push_str(&format!("diagnostic={d}\n"));
        }
        s
    }
}

/// Reads the cycles (and `q`, when present) back out of a report document.
/// Lines made only of labels are cycles; every other line is ignored.
pub fn parse_packing_document(text: &str, default_q: usize) -> Result<CyclePacking> {
    let mut q = default_q;
    let mut cycles = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if let Some(v) = line.strip_prefix("q=") {
            q = v.parse().map_err(|_| Error::Parse { line: i + 1, msg: format!("bad q value {v:?}") })?;
            continue;
        }
        if line.is_empty() || !line.bytes().all(|b| b.is_ascii_digit() || b == b' ') {
            continue;
        }
        let seq = line
            .split_whitespace()
            .map(|w| w.parse::<usize>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::Parse { line: i + 1, msg: e.to_string() })?;
        cycles.push(Cycle::from_raw(seq));
    }
    Ok(CyclePacking { q, cycles })
}

fn hypothesis_holds(t: &Tournament, q: usize, k: usize) -> bool {
    t.min_out_degree() + 1 >= (q - 1) * k
}

/// Packs at least `k` disjoint `q`-cycles if it can.
///
/// Greedy maximal packing, then repeatedly: absorb, two-for-one,
/// three-for-two, and tail growth (applied until the remainder gains a
/// `q`-cycle or no case applies). On a stall the exact oracle is consulted
/// when `T` has few enough `q`-cycles. Deterministic in its inputs.
pub fn pack(t: &Tournament, q: usize, k: usize, budget: &Budget) -> Result<PackReport> {
    require_q(q)?;
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    let n = t.n();
    let max_moves = budget.max_moves.unwrap_or(n * n);
    let hypothesis = hypothesis_holds(t, q, k);
    let mut f = greedy_maximal_packing(t, q)?;
    let mut moves = Vec::new();
    let mut diagnostics = Vec::new();
    let mut attempts = 0usize;

    'improve: while f.len() < k {
        if attempts >= max_moves {
            diagnostics.push(format!("move budget of {max_moves} attempts exhausted"));
            break;
        }
        attempts += 1;
        let part = partition_remainder(t, &f)?;
        let before = f.len();
        type Move = fn(&Tournament, &CyclePacking, &PathPartition) -> Option<CyclePacking>;
        let extension: [(&str, Move); 3] = [
            ("absorb", move_absorb),
            ("two_for_one", move_two_for_one),
            ("three_for_two", move_three_for_two),
        ];
        for (name, mv) in extension {
            if let Some(next) = mv(t, &f, &part) {
                f = top_up(t, next);
                moves.push(MoveRecord { name: name.into(), before, after: f.len(), detail: None });
                continue 'improve;
            }
        }

        let mut omega = f.clone();
        let mut path = part.path.clone();
        let mut tail_moves = Vec::new();
        while attempts < max_moves {
            let old = tail_length(t, &omega);
            let Some(g) = grow_tail(t, &omega, &path)? else { break };
            attempts += 1;
            let rest = g.packing.remainder(t);
            tail_moves.push(MoveRecord {
                name: "grow_tail".into(),
                before,
                after: before,
                detail: Some(format!("case={} tail={}->{}", g.case.as_str(), old, g.tail.len())),
            });
            omega = g.packing;
            path = g.path;
            if !t.is_q_cycle_free_within(&rest, q) {
                f = top_up(t, omega);
                if let Some(last) = tail_moves.last_mut() {
                    last.after = f.len();
                }
                moves.extend(tail_moves);
                continue 'improve;
            }
        }
        break;
    }

    let mut fallback_used = false;
    let mut counterexample = false;
    if f.len() < k && budget.use_oracle {
        if n > oracle::MAX_ORACLE_VERTICES {
            diagnostics.push(format!("oracle skipped: {n} vertices exceed {}", oracle::MAX_ORACLE_VERTICES));
        } else {
            match oracle::max_disjoint_q_cycles_capped(t, q, None, budget.oracle_cycle_limit) {
                Ok(best) => {
                    fallback_used = true;
                    if best.count > f.len() {
                        f = best.witness;
                    }
                    if hypothesis && q >= 11 && best.count < k {
                        counterexample = true;
                    }
                }
                Err(Error::CapExceeded { cap }) => {
                    diagnostics.push(format!("oracle skipped: more than {cap} {q}-cycles"));
                }
                Err(e) => return Err(e),
            }
        }
    }

    let status = if !hypothesis {
        PackStatus::HypothesisUnmet
    } else if f.len() >= k {
        PackStatus::TargetMet
    } else {
        PackStatus::MaximalButShort
    };
    if let Err(v) = verify_packing(t, &f, q, 0) {
        panic!("pack produced an invalid packing: {v}");
    }
    Ok(PackReport {
        q,
        k,
        packing: f,
        status,
        moves,
        fallback_used,
        counterexample,
        diagnostics,
    })
}
