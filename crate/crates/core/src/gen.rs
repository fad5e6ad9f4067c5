//! Seeded tournament generators. Every generator is a pure function of its
//! arguments and seed.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng as _;

use crate::error::{Error, Result};
use crate::matching::Threshold;
use crate::packer::{partition_remainder, CyclePacking};
use crate::rng::{stream_rng, Rng, Stream};
use crate::surgery;
use crate::tournament::{Cycle, Tournament, TournamentBuilder, VertexSet};

/// Uniform random tournament: one fair coin per pair `i < j`, in lexicographic order.
pub fn random_tournament(n: usize, seed: u64) -> Result<Tournament> {
    let mut rng = stream_rng(seed, Stream::Random);
    Tournament::from_fn(n, |_, _| rng.gen::<bool>())
}

/// The circulant tournament on `Z_n` with `i -> j` iff `j − i mod n ∈ symbols`.
/// `n` must be odd and `symbols` must contain exactly one of `s, n − s` for each `s`.
pub fn rotational_tournament(n: usize, symbols: &[usize]) -> Result<Tournament> {
    if n.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!("rotational tournaments need odd n, got {n}")));
    }
    let mut has = vec![false; n];
    for &s in symbols {
        if s == 0 || s >= n {
            return Err(Error::InvalidParameter(format!("symbol {s} outside 1..{n}")));
        }
        if has[s] {
            return Err(Error::InvalidParameter(format!("symbol {s} repeated")));
        }
        has[s] = true;
    }
    for s in 1..n {
        if has[s] == has[n - s] {
            return Err(Error::InvalidParameter(format!(
                "exactly one of {s} and {} must be a symbol",
                n - s
            )));
        }
    }
    Tournament::from_fn(n, |i, j| has[(j + n - i) % n])
}

/// A tournament with minimum out-degree at least `d`: a random tournament,
/// repaired by reversing directed paths from a vertex with spare out-degree
/// into a deficient one.
pub fn min_degree_tournament(n: usize, d: usize, seed: u64) -> Result<Tournament> {
    if n == 0 || 2 * d + 1 > n {
        return Err(Error::Infeasible(format!(
            "no tournament on {n} vertices has minimum out-degree {d}"
        )));
    }
    let mut rng = stream_rng(seed, Stream::MinDegree);
    let start = Tournament::from_fn(n, |_, _| rng.gen::<bool>())?;
    let mut b = TournamentBuilder::from_tournament(&start);
    let budget = n * n;
    for _ in 0..=budget {
        let Some(v) = (0..n).find(|&v| b.out_degree(v) < d) else {
            return b.build();
        };
        // breadth-first search backwards along arcs into v
        let mut parent = vec![usize::MAX; n];
        parent[v] = v;
        let mut queue = VecDeque::from([v]);
        let mut found = None;
        while let Some(x) = queue.pop_front() {
            if x != v && b.out_degree(x) > d {
                found = Some(x);
                break;
            }
            for w in 0..n {
                if parent[w] == usize::MAX && w != x && b.beats(w, x) {
                    parent[w] = x;
                    queue.push_back(w);
                }
            }
        }
        let mut w = found.ok_or_else(|| Error::Infeasible("no vertex with spare out-degree reaches the deficient one".into()))?;
        while w != v {
            let next = parent[w];
            b.arc(next, w);
            w = next;
        }
    }
    Err(Error::Infeasible(format!("repair budget of {budget} reversals exhausted")))
}

/// A random strong tournament on `s ≥ 3` local vertices: a Hamiltonian cycle
/// `0 -> 1 -> … -> s−1 -> 0` plus random chords.
fn strong_block(s: usize, rng: &mut Rng) -> Result<Tournament> {
    Tournament::from_fn(s, |i, j| {
        if j == i + 1 {
            true
        } else if i == 0 && j == s - 1 {
            false
        } else {
            rng.gen::<bool>()
        }
    })
}

/// A random `q`-cycle-free tournament on `n` local vertices, randomly relabelled.
fn cycle_free_local(n: usize, q: usize, rng: &mut Rng) -> Result<Tournament> {
    let mut blocks: Vec<Tournament> = Vec::new();
    let mut block_of = Vec::with_capacity(n);
    let mut local = Vec::with_capacity(n);
    let mut left = n;
    while left > 0 {
        let sizes: Vec<usize> = std::iter::once(1).chain(3..q.min(left + 1)).collect();
        let s = *sizes.choose(rng).expect("size 1 always fits");
        let block = if s == 1 { Tournament::transitive(1)? } else { strong_block(s, rng)? };
        for i in 0..s {
            block_of.push(blocks.len());
            local.push(i);
        }
        blocks.push(block);
        left -= s;
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut pos = vec![0; n];
    for (p, &label) in perm.iter().enumerate() {
        pos[label] = p;
    }
    Tournament::from_fn(n, |i, j| {
        let (a, b) = (pos[i], pos[j]);
        if block_of[a] == block_of[b] {
            blocks[block_of[a]].beats(local[a], local[b])
        } else {
            block_of[a] < block_of[b]
        }
    })
}

/// A random tournament with no `q`-cycle: strong components of sizes in
/// `{1} ∪ [3, q − 1]`, each a Hamiltonian cycle with random chords, arranged in
/// a dominating chain and randomly relabelled. For `q = 3` it is transitive.
pub fn q_cycle_free_tournament(n: usize, q: usize, seed: u64) -> Result<Tournament> {
    if q < 3 {
        return Err(Error::InvalidParameter(format!("cycle length q={q} is below 3")));
    }
    let mut rng = stream_rng(seed, Stream::CycleFree);
    cycle_free_local(n, q, &mut rng)
}

/// A threshold test instance: `S₁ = {0, …, s−1}` with `s = which.source_size(q)`,
/// `S₂ = {s, …, s+q−1}`. All arcs start from `S₁` to `S₂`; a random number of
/// them, up to three past the threshold, are reversed, either scattered or
/// packed into a few rows or columns.
pub fn threshold_instance(q: usize, which: Threshold, seed: u64) -> Result<(Tournament, VertexSet, VertexSet)> {
    if q < 3 {
        return Err(Error::InvalidParameter(format!("cycle length q={q} is below 3")));
    }
    let mut rng = stream_rng(seed, Stream::Threshold);
    let s = which.source_size(q);
    let n = s + q;
    let slack = s * q - which.min_arcs(q);
    let flips = rng.gen_range(0..=slack + 3);
    let mut cells: Vec<(usize, usize)> = (0..s).flat_map(|a| (s..n).map(move |b| (a, b))).collect();
    match rng.gen_range(0..3) {
        0 => cells.shuffle(&mut rng),
        1 => {
            let mut rows: Vec<usize> = (0..s).collect();
            rows.shuffle(&mut rng);
            cells.sort_by_key(|&(a, b)| (rows.iter().position(|&r| r == a), b));
        }
        _ => {
            let mut cols: Vec<usize> = (s..n).collect();
            cols.shuffle(&mut rng);
            cells.sort_by_key(|&(a, b)| (cols.iter().position(|&c| c == b), a));
        }
    }
    let flipped: std::collections::HashSet<(usize, usize)> = cells[..flips].iter().copied().collect();
    let t = Tournament::from_fn(n, |i, j| {
        if i < s && j >= s {
            !flipped.contains(&(i, j))
        } else {
            rng.gen::<bool>()
        }
    })?;
    let s1 = VertexSet::from_vertices(n, &(0..s).collect::<Vec<_>>())?;
    let s2 = VertexSet::from_vertices(n, &(s..n).collect::<Vec<_>>())?;
    Ok((t, s1, s2))
}

/// Which improvement move a planted instance is built for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlantedKind {
    Claim2,
    Claim4,
    Claim5,
    TailCaseA,
    TailCaseB,
}

impl PlantedKind {
    pub const ALL: [PlantedKind; 5] = [
        PlantedKind::Claim2,
        PlantedKind::Claim4,
        PlantedKind::Claim5,
        PlantedKind::TailCaseA,
        PlantedKind::TailCaseB,
    ];

    /// Smallest `q` the construction supports.
    pub fn min_q(self) -> usize {
        match self {
            PlantedKind::Claim2 => 3,
            _ => 9,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            PlantedKind::Claim2 => "claim2",
            PlantedKind::Claim4 => "claim4",
            PlantedKind::Claim5 => "claim5",
            PlantedKind::TailCaseA => "tail_case_a",
            PlantedKind::TailCaseB => "tail_case_b",
        }
    }
}

impl fmt::Display for PlantedKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PlantedKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PlantedKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s || k.as_str().replace('_', "-") == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown planted kind {s:?}")))
    }
}

/// What the named move should achieve on a planted instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Expected {
    /// The family grows to this many cycles.
    FamilyGrows { to: usize },
    /// The tail cycle grows from `from` vertices to between `min` and `max`.
    TailGrows { from: usize, min: usize, max: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlantedInstance {
    pub kind: PlantedKind,
    pub tournament: Tournament,
    pub packing: CyclePacking,
    pub expected: Expected,
}

/// Labels for a planted instance: `cycles` consecutive `q`-blocks, then the remainder.
struct Layout {
    cycles: Vec<Vec<usize>>,
    rest: Vec<usize>,
}

fn layout(n: usize, q: usize, cycles: usize, rng: &mut Rng) -> Layout {
    let mut labels: Vec<usize> = (0..n).collect();
    labels.shuffle(rng);
    let cyc = (0..cycles).map(|i| labels[i * q..(i + 1) * q].to_vec()).collect();
    let mut rest = labels[cycles * q..].to_vec();
    rest.sort_unstable();
    Layout { cycles: cyc, rest }
}

fn base(n: usize, lay: &Layout, rng: &mut Rng) -> Result<TournamentBuilder> {
    let mut b = TournamentBuilder::from_tournament(&Tournament::from_fn(n, |_, _| rng.gen::<bool>())?);
    for c in &lay.cycles {
        for i in 0..c.len() {
            b.arc(c[i], c[(i + 1) % c.len()]);
        }
    }
    Ok(b)
}

fn copy_into(b: &mut TournamentBuilder, local: &Tournament, labels: &[usize]) {
    for i in 0..labels.len() {
        for j in i + 1..labels.len() {
            if local.beats(i, j) {
                b.arc(labels[i], labels[j]);
            } else {
                b.arc(labels[j], labels[i]);
            }
        }
    }
}

fn packing_of(q: usize, lay: &Layout) -> CyclePacking {
    CyclePacking {
        q,
        cycles: lay.cycles.iter().map(|c| Cycle::from_raw(c.clone())).collect(),
    }
}

fn check_q(kind: PlantedKind, q: usize) -> Result<()> {
    if q < kind.min_q() {
        return Err(Error::InvalidParameter(format!(
            "{kind} instances need q ≥ {}, got {q}",
            kind.min_q()
        )));
    }
    Ok(())
}

/// An instance whose packing is stuck at greedy but satisfies the hypothesis
/// of one improvement move by construction.
pub fn planted_move_instance(kind: PlantedKind, q: usize, seed: u64) -> Result<PlantedInstance> {
    check_q(kind, q)?;
    let mut rng = stream_rng(seed, Stream::Planted);
    match kind {
        PlantedKind::Claim2 => planted_claim2(q, &mut rng),
        PlantedKind::Claim4 => planted_claim4(q, &mut rng),
        PlantedKind::Claim5 => planted_claim5(q, &mut rng),
        PlantedKind::TailCaseA => {
            let l = rng.gen_range(4..q);
            let first = rng.gen::<bool>();
            planted_tail(q, l, first, &mut rng)
        }
        PlantedKind::TailCaseB => {
            let first = rng.gen::<bool>();
            planted_tail(q, 3, first, &mut rng)
        }
    }
}

/// A tail instance with a tail cycle of `tail_len` vertices (`3 ≤ tail_len < q`).
/// With `y_enters` the tail receives one arc from the vertex `y` of the double
/// shrink; otherwise the tail dominates it.
pub fn planted_tail_instance(q: usize, tail_len: usize, y_enters: bool, seed: u64) -> Result<PlantedInstance> {
    let kind = if tail_len == 3 { PlantedKind::TailCaseB } else { PlantedKind::TailCaseA };
    check_q(kind, q)?;
    if tail_len < 3 || tail_len >= q {
        return Err(Error::InvalidParameter(format!("tail length {tail_len} outside 3..{q}")));
    }
    let mut rng = stream_rng(seed, Stream::Planted);
    planted_tail(q, tail_len, y_enters, &mut rng)
}

fn planted_claim2(q: usize, rng: &mut Rng) -> Result<PlantedInstance> {
    let r = 7 * q - 5 + rng.gen_range(0..=q);
    let n = 2 * q + r;
    let lay = layout(n, q, 2, rng);
    let mut b = base(n, &lay, rng)?;
    copy_into(&mut b, &cycle_free_local(r, q, rng)?, &lay.rest);
    let packing = packing_of(q, &lay);
    let part = partition_remainder(&b.build()?, &packing)?;

    let c = &lay.cycles[0];
    let mut u2 = part.u2.to_vec();
    u2.shuffle(rng);
    for &u in &u2[..3 * q] {
        b.arc(c[0], u).arc(u, c[1]).arc(u, c[2]);
    }
    let run = part.run(q - 1, 1);
    b.arc(run[q - 2], c[1]).arc(c[1], run[0]);
    Ok(PlantedInstance {
        kind: PlantedKind::Claim2,
        tournament: b.build()?,
        expected: Expected::FamilyGrows { to: packing.len() + 1 },
        packing,
    })
}

/// Random `k` distinct elements of `from`.
fn pick(from: &[usize], k: usize, rng: &mut Rng) -> Vec<usize> {
    from.choose_multiple(rng, k).copied().collect()
}

/// Plants a perfect matching from `q` of the `q + 1` vertices of `U₁` into `c`.
fn plant_u1_matching(b: &mut TournamentBuilder, u1: &[usize], c: &[usize], rng: &mut Rng) {
    let sources = pick(u1, c.len(), rng);
    for (&u, &x) in sources.iter().zip(c) {
        b.arc(u, x);
    }
}

fn planted_claim4(q: usize, rng: &mut Rng) -> Result<PlantedInstance> {
    let r = 4 * q - 3 + rng.gen_range(0..=q);
    let n = 2 * q + r;
    let lay = layout(n, q, 2, rng);
    let mut b = base(n, &lay, rng)?;
    copy_into(&mut b, &cycle_free_local(r, q, rng)?, &lay.rest);
    let packing = packing_of(q, &lay);
    let part = partition_remainder(&b.build()?, &packing)?;

    let c = &lay.cycles[0];
    plant_u1_matching(&mut b, &part.u1.to_vec(), c, rng);
    let xs = pick(c, 2, rng);
    let ws = pick(&part.u2.to_vec(), 2, rng);
    b.arc(xs[0], ws[0]).arc(xs[1], ws[1]);
    Ok(PlantedInstance {
        kind: PlantedKind::Claim4,
        tournament: b.build()?,
        expected: Expected::FamilyGrows { to: packing.len() + 1 },
        packing,
    })
}

fn planted_claim5(q: usize, rng: &mut Rng) -> Result<PlantedInstance> {
    let r = 4 * q - 2 + rng.gen_range(0..=q);
    let cycles = rng.gen_range(2..=3);
    let n = cycles * q + r;
    let lay = layout(n, q, cycles, rng);
    let mut b = base(n, &lay, rng)?;
    copy_into(&mut b, &cycle_free_local(r, q, rng)?, &lay.rest);
    let packing = packing_of(q, &lay);
    let part = partition_remainder(&b.build()?, &packing)?;

    let (ci, cj) = (&lay.cycles[0], &lay.cycles[1]);
    plant_u1_matching(&mut b, &part.u1.to_vec(), ci, rng);
    for &a in ci {
        for &c in cj {
            b.arc(a, c);
        }
    }
    let dominators = pick(ci, 3, rng);
    let mut flippable: Vec<(usize, usize)> = ci
        .iter()
        .filter(|a| !dominators.contains(a))
        .flat_map(|&a| cj.iter().map(move |&c| (a, c)))
        .collect();
    flippable.shuffle(rng);
    let flips = rng.gen_range(0..=q - 3);
    for &(a, c) in &flippable[..flips] {
        b.arc(c, a);
    }
    let ys = pick(cj, 3, rng);
    let ws = pick(&part.u2.to_vec(), 3, rng);
    for (&y, &w) in ys.iter().zip(&ws) {
        b.arc(y, w);
    }
    Ok(PlantedInstance {
        kind: PlantedKind::Claim5,
        tournament: b.build()?,
        expected: Expected::FamilyGrows { to: packing.len() + 1 },
        packing,
    })
}

fn planted_tail(q: usize, l: usize, y_enters: bool, rng: &mut Rng) -> Result<PlantedInstance> {
    let kind = if l == 3 { PlantedKind::TailCaseB } else { PlantedKind::TailCaseA };
    let p = q + rng.gen_range(0..=q);
    let n = 2 * q + p + l;
    let lay = layout(n, q, 2, rng);
    let mut b = base(n, &lay, rng)?;
    let mut rest = lay.rest.clone();
    rest.shuffle(rng);
    let (pp, cl) = rest.split_at(p);
    let mut pp = pp.to_vec();
    let mut cl = cl.to_vec();
    pp.sort_unstable();
    cl.sort_unstable();
    copy_into(&mut b, &cycle_free_local(p, q, rng)?, &pp);
    copy_into(&mut b, &strong_block(l, rng)?, &cl);
    for &u in &pp {
        for &v in &cl {
            b.arc(u, v);
        }
    }
    let packing = packing_of(q, &lay);
    let (_, (_, y)) = surgery::fact3_double_shrink(&b.build()?, &packing.cycles[0])?;

    let (ci, co) = (&lay.cycles[0], &lay.cycles[1]);
    for &v in &cl {
        for &c in ci {
            b.arc(v, c);
        }
    }
    if y_enters {
        let w = *cl.choose(rng).expect("non-empty tail");
        b.arc(y, w);
    }
    for &z in ci {
        for &u in &pick(&pp, 2, rng) {
            b.arc(z, u);
        }
    }
    let o = *co.choose(rng).expect("non-empty cycle");
    let w = *cl.choose(rng).expect("non-empty tail");
    b.arc(o, w);
    Ok(PlantedInstance {
        kind,
        tournament: b.build()?,
        expected: Expected::TailGrows { from: l, min: l + 1, max: l + 2 },
        packing,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::packer::verify_packing;

    #[test]
    fn random_is_deterministic() {
        assert_eq!(random_tournament(20, 3).unwrap(), random_tournament(20, 3).unwrap());
        assert_ne!(random_tournament(20, 3).unwrap(), random_tournament(20, 4).unwrap());
    }

    #[test]
    fn rotational_validation() {
        let t = rotational_tournament(7, &[1, 2, 4]).unwrap();
        assert!(t.score_sequence().iter().all(|&s| s == 3));
        assert!(rotational_tournament(8, &[1, 2, 3, 4]).is_err());
        assert!(rotational_tournament(7, &[1, 2, 5]).is_err());
        assert!(rotational_tournament(7, &[1, 2]).is_err());
        assert!(rotational_tournament(7, &[1, 1, 2]).is_err());
    }

    #[test]
    fn min_degree_meets_floor() {
        for n in 1..16 {
            for d in 0..=(n - 1) / 2 {
                let t = min_degree_tournament(n, d, n as u64 * 31 + d as u64).unwrap();
                assert!(t.min_out_degree() >= d, "n={n} d={d}");
            }
        }
        assert!(matches!(min_degree_tournament(10, 5, 0), Err(Error::Infeasible(_))));
        // regular tournaments are reachable
        let t = min_degree_tournament(9, 4, 1).unwrap();
        assert!(t.score_sequence().iter().all(|&s| s == 4));
    }

    #[test]
    fn cycle_free_examples() {
        let t = q_cycle_free_tournament(12, 3, 0).unwrap();
        assert!(t.strong_components().iter().all(|c| c.len() == 1));
        for seed in 0..20 {
            let t = q_cycle_free_tournament(30, 6, seed).unwrap();
            assert!(t.is_q_cycle_free(6));
            assert!(t.strong_components().iter().all(|c| c.len() != 2 && c.len() < 6));
        }
        assert!(q_cycle_free_tournament(5, 2, 0).is_err());
    }

    #[test]
    fn planted_instances_are_consistent() {
        for kind in PlantedKind::ALL {
            for seed in 0..4 {
                let q = kind.min_q().max(9);
                let inst = planted_move_instance(kind, q, seed).unwrap();
                let t = &inst.tournament;
                verify_packing(t, &inst.packing, q, inst.packing.len()).unwrap();
                assert!(t.is_q_cycle_free_within(&inst.packing.remainder(t), q));
                assert_eq!(inst, planted_move_instance(kind, q, seed).unwrap());
            }
            assert!(planted_move_instance(kind, kind.min_q() - 1, 0).is_err());
        }
        assert_eq!("tail-case-a".parse::<PlantedKind>().unwrap(), PlantedKind::TailCaseA);
        assert!("claim3".parse::<PlantedKind>().is_err());
    }
}
