//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero when any criterion fails.
//!
//! Every check below recomputes what it asserts (cycle validity, degrees,
//! strongness, maximum packings) with small local code instead of trusting
//! the library's own validators.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use cyclemill::classic::{cycle_through_vertex, hamiltonian_cycle};
use cyclemill::gen::{self, Expected, PlantedKind};
use cyclemill::matching::{check_threshold, max_matching_with_cover, Threshold};
use cyclemill::oracle::{counterexample_search, max_disjoint_q_cycles, SearchMode, SearchSpec};
use cyclemill::packer::{
    grow_tail, move_absorb, move_three_for_two, move_two_for_one, pack, partition_remainder, verify_packing, Budget,
    CyclePacking, PackStatus,
};
use cyclemill::rng::{derive_seed, stream_rng, Stream};
use cyclemill::surgery::{fact1_shrink, fact2_shrink, fact3_double_shrink};
use cyclemill::{Cycle, Tournament, VertexSet};
use rand::Rng;

type Verdict = Result<String, String>;

/// Local adjacency rows and vertex sets; planted instances reach 70 vertices.
type Mask = u128;

const SEED: u64 = 20_240_601;

fn main() -> ExitCode {
    let results = [
        criterion(1, "triangle packing with out-degree 2k-1 (q=3, k<=3, n<=21)", Some(60), triangle_packing),
        criterion(2, "lower bound ceil(k-1-(k-2)/q) at (4,2), (5,2), (4,3)", None, weak_bound),
        criterion(3, "exact oracle vs set packing on all 6-vertex tournaments", Some(300), oracle_ground_truth),
        criterion(4, "cycles of every length through every vertex, n<=6", None, moon_suite),
        criterion(5, "cycle shrink degree bounds on strong 7..9-vertex tournaments", None, shrink_bounds),
        criterion(6, "matching thresholds and Konig duality at q=9,10", None, thresholds),
        criterion(7, "planted instances trigger their move", None, planted_moves),
        criterion(8, "exhaustive search q=3 k=2 n=7 floor 3", None, search_smoke),
        criterion(9, "11-cycle in 23-vertex tournaments with out-degree 10", None, eleven_cycles),
    ];
    let failed = results.iter().filter(|&&ok| !ok).count();
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

/// Runs one criterion; `limit` is a wall-clock bound in seconds.
fn criterion(id: u32, name: &str, limit: Option<u64>, f: fn() -> Verdict) -> bool {
    let start = Instant::now();
    let mut verdict = f();
    let took = start.elapsed();
    if let (Ok(detail), Some(secs)) = (&verdict, limit) {
        if took > Duration::from_secs(secs) {
            verdict = Err(format!("{detail}; exceeded the {secs}s limit"));
        }
    }
    let (tag, detail) = match &verdict {
        Ok(d) => ("PASS", d),
        Err(d) => ("FAIL", d),
    };
    println!("{tag} [{id}] {name}: {detail} [{:.2}s]", took.as_secs_f64());
    verdict.is_ok()
}

fn err<E: std::fmt::Display>(ctx: impl std::fmt::Display) -> impl FnOnce(E) -> String {
    move |e| format!("{ctx}: {e}")
}

// ---- local oracles ----

/// Tournament on `n` vertices whose upper-triangle pair `i < j` (row-major)
/// is `i -> j` iff the matching bit of `pattern` is set, with its out-masks.
fn from_pattern(n: usize, pattern: u64) -> (Tournament, Vec<Mask>) {
    let adj = pattern_masks(n, pattern);
    let t = Tournament::from_fn(n, |i, j| adj[i] >> j & 1 == 1).unwrap();
    (t, adj)
}

fn masks(t: &Tournament) -> Vec<Mask> {
    (0..t.n())
        .map(|i| (0..t.n()).filter(|&j| t.beats(i, j)).fold(0 as Mask, |m, j| m | 1 << j))
        .collect()
}

/// Every vertex reaches every other.
fn strong(adj: &[Mask]) -> bool {
    let full = Mask::MAX >> (128 - adj.len());
    let mut seen: Mask = 1;
    let mut frontier: Mask = 1;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let new = adj[v] & !seen;
        seen |= new;
        frontier |= new;
    }
    seen == full && (0..adj.len()).all(|v| v == 0 || reaches(adj, v, 0))
}

fn reaches(adj: &[Mask], from: usize, to: usize) -> bool {
    let mut seen: Mask = 1 << from;
    let mut frontier = seen;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let new = adj[v] & !seen;
        seen |= new;
        frontier |= new;
    }
    seen >> to & 1 == 1
}

fn min_out(adj: &[Mask]) -> u32 {
    adj.iter().map(|m| m.count_ones()).min().unwrap_or(0)
}

/// `seq` is a directed cycle of length `len` on distinct vertices.
fn check_cycle(adj: &[Mask], seq: &[usize], len: usize) -> Result<Mask, String> {
    if seq.len() != len {
        return Err(format!("cycle {seq:?} has length {}, expected {len}", seq.len()));
    }
    let mut set: Mask = 0;
    for (i, &v) in seq.iter().enumerate() {
        let next = seq[(i + 1) % len];
        if v >= adj.len() || set >> v & 1 == 1 {
            return Err(format!("cycle {seq:?} repeats or leaves the vertex range at {v}"));
        }
        if adj[v] >> next & 1 == 0 {
            return Err(format!("cycle {seq:?} uses a missing arc {v} -> {next}"));
        }
        set |= 1 << v;
    }
    Ok(set)
}

/// Pairwise disjoint `q`-cycles, at least `k` of them; returns the covered mask.
fn check_family(adj: &[Mask], cycles: &[Cycle], q: usize, k: usize) -> Result<Mask, String> {
    let mut covered: Mask = 0;
    for c in cycles {
        let set = check_cycle(adj, c.vertices(), q)?;
        if covered & set != 0 {
            return Err(format!("cycle {:?} overlaps an earlier one", c.vertices()));
        }
        covered |= set;
    }
    if cycles.len() < k {
        return Err(format!("{} cycles, need {k}", cycles.len()));
    }
    Ok(covered)
}

fn triangles(adj: &[Mask]) -> Vec<Mask> {
    let n = adj.len();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let fwd = adj[a] >> b & 1 == 1 && adj[b] >> c & 1 == 1 && adj[c] >> a & 1 == 1;
                let back = adj[a] >> c & 1 == 1 && adj[c] >> b & 1 == 1 && adj[b] >> a & 1 == 1;
                if fwd || back {
                    out.push(1 << a | 1 << b | 1 << c);
                }
            }
        }
    }
    out
}

/// Maximum number of disjoint sets among `sets` inside `mask`, by memoised
/// recursion on the lowest vertex of the mask: either it stays uncovered or
/// one of the sets through it is taken.
fn set_packing(sets: &[Mask], mask: Mask, memo: &mut Vec<Option<u8>>) -> u8 {
    if mask == 0 {
        return 0;
    }
    if let Some(v) = memo[mask as usize] {
        return v;
    }
    let low = mask & mask.wrapping_neg();
    let mut best = set_packing(sets, mask & !low, memo);
    for &s in sets {
        if s & low != 0 && s & mask == s {
            best = best.max(1 + set_packing(sets, mask & !s, memo));
        }
    }
    memo[mask as usize] = Some(best);
    best
}

fn pack_checked(t: &Tournament, q: usize, k: usize) -> Result<(PackStatus, usize), String> {
    let r = pack(t, q, k, &Budget::default()).map_err(err("pack"))?;
    check_family(&masks(t), &r.packing.cycles, q, 0)?;
    Ok((r.status, r.packing.len()))
}

// ---- criteria ----

fn triangles_instance(i: u64) -> Result<(Tournament, usize), String> {
    let mut rng = stream_rng(derive_seed(SEED, i), Stream::Trials);
    let k = 1 + (i % 3) as usize;
    let d = 2 * k - 1;
    let n = rng.gen_range(7.max(2 * d + 1)..=21);
    let t = gen::min_degree_tournament(n, d, derive_seed(SEED + 1, i)).map_err(err(format!("instance {i}")))?;
    Ok((t, k))
}

fn triangle_packing() -> Verdict {
    let trials = 1000;
    for i in 0..trials {
        let (t, k) = triangles_instance(i)?;
        let adj = masks(&t);
        if (min_out(&adj) as usize) < 2 * k - 1 {
            return Err(format!("instance {i}: generator gave out-degree {} < {}", min_out(&adj), 2 * k - 1));
        }
        let r = pack(&t, 3, k, &Budget::default()).map_err(err(format!("instance {i}")))?;
        if r.status != PackStatus::TargetMet {
            return Err(format!("instance {i} (n={}, k={k}): status {}", t.n(), r.status.as_str()));
        }
        verify_packing(&t, &r.packing, 3, k).map_err(err(format!("instance {i}")))?;
        check_family(&adj, &r.packing.cycles, 3, k).map_err(|e| format!("instance {i}: {e}"))?;
    }
    Ok(format!("{trials}/{trials} target_met and verified"))
}

fn weak_bound() -> Verdict {
    let mut summary = Vec::new();
    for (q, k) in [(4usize, 2usize), (5, 2), (4, 3)] {
        let d = (q - 1) * k - 1;
        let need = (q * (k - 1) - (k - 2)).div_ceil(q);
        let mut reached_k = 0;
        for i in 0..200u64 {
            let mut rng = stream_rng(derive_seed(SEED + 2, i), Stream::Trials);
            let n = rng.gen_range(2 * d + 1..=2 * d + 9);
            let t = gen::min_degree_tournament(n, d, derive_seed(SEED + 3, i)).map_err(err(format!("instance {i}")))?;
            if (min_out(&masks(&t)) as usize) < d {
                return Err(format!("(q,k)=({q},{k}) instance {i}: out-degree below {d}"));
            }
            let (status, size) = pack_checked(&t, q, k).map_err(|e| format!("(q,k)=({q},{k}) instance {i}: {e}"))?;
            if status == PackStatus::HypothesisUnmet || size < need {
                return Err(format!(
                    "(q,k)=({q},{k}) instance {i} (n={n}): {size} cycles, need {need}, status {}",
                    status.as_str()
                ));
            }
            reached_k += usize::from(size >= k);
        }
        summary.push(format!("({q},{k}) 200/200 >= {need}, {reached_k} reached k"));
    }
    Ok(summary.join("; "))
}

fn oracle_ground_truth() -> Verdict {
    let n = 6;
    let total = 1u64 << 15;
    let mut histogram = [0u32; 3];
    for pattern in 0..total {
        let (t, adj) = from_pattern(n, pattern);
        let expect = set_packing(&triangles(&adj), (1 << n) - 1, &mut vec![None; 1 << n]);
        let got = max_disjoint_q_cycles(&t, 3, None).map_err(err(format!("pattern {pattern}")))?;
        if got.count != usize::from(expect) {
            return Err(format!("pattern {pattern}: oracle {} vs set packing {expect}", got.count));
        }
        check_family(&adj, &got.witness.cycles, 3, got.count).map_err(|e| format!("pattern {pattern}: {e}"))?;
        histogram[got.count] += 1;
    }
    Ok(format!(
        "{total} tournaments agree (max 0/1/2: {}/{}/{})",
        histogram[0], histogram[1], histogram[2]
    ))
}

fn moon_suite() -> Verdict {
    let mut strong_count = 0;
    let mut calls = 0;
    for n in 3..=6usize {
        for pattern in 0..1u64 << (n * (n - 1) / 2) {
            let (t, adj) = from_pattern(n, pattern);
            let is_strong = strong(&adj);
            if t.is_strong() != is_strong {
                return Err(format!("n={n} pattern {pattern}: strongness disagrees"));
            }
            if !is_strong {
                continue;
            }
            strong_count += 1;
            for v in 0..n {
                for l in 3..=n {
                    let c = cycle_through_vertex(&t, v, l).map_err(err(format!("n={n} pattern {pattern} v={v} l={l}")))?;
                    check_cycle(&adj, c.vertices(), l).map_err(|e| format!("n={n} pattern {pattern}: {e}"))?;
                    if !c.contains(v) {
                        return Err(format!("n={n} pattern {pattern}: cycle misses {v}"));
                    }
                    calls += 1;
                }
            }
        }
    }
    Ok(format!("{strong_count} strong tournaments, {calls} cycles checked"))
}

fn shrink_bounds() -> Verdict {
    let trials = 10_000u64;
    for i in 0..trials {
        let seed = derive_seed(SEED + 4, i);
        let n = stream_rng(seed, Stream::Trials).gen_range(7..=9);
        let (t, adj) = (0..)
            .map(|j| {
                let t = gen::random_tournament(n, derive_seed(seed, j)).unwrap();
                let adj = masks(&t);
                (t, adj)
            })
            .find(|(_, adj)| strong(adj))
            .unwrap();
        let c = hamiltonian_cycle(&t).map_err(err(format!("trial {i}")))?;
        let m = c.len();
        let on = check_cycle(&adj, c.vertices(), n).map_err(|e| format!("trial {i}: {e}"))?;
        let into = |u: usize| (adj[u] & on).count_ones() as usize;
        let without = |short: &Cycle, gone: Mask| -> Result<(), String> {
            let set = check_cycle(&adj, short.vertices(), m - gone.count_ones() as usize)?;
            if set | gone != on || set & gone != 0 {
                return Err(format!("shortened cycle {:?} has the wrong vertex set", short.vertices()));
            }
            Ok(())
        };

        let (short, u) = fact1_shrink(&t, &c).map_err(err(format!("trial {i} single shrink")))?;
        without(&short, 1 << u).map_err(|e| format!("trial {i} single shrink: {e}"))?;
        if into(u) > m - 3 {
            return Err(format!("trial {i}: single shrink removed {u} with {} > {} arcs into C", into(u), m - 3));
        }

        let (short, u) = fact2_shrink(&t, &c).map_err(err(format!("trial {i} tight shrink")))?;
        without(&short, 1 << u).map_err(|e| format!("trial {i} tight shrink: {e}"))?;
        if into(u) > m - 4 {
            return Err(format!("trial {i}: tight shrink removed {u} with {} > {} arcs into C", into(u), m - 4));
        }

        let (short, (x, y)) = fact3_double_shrink(&t, &c).map_err(err(format!("trial {i} double shrink")))?;
        without(&short, 1 << x | 1 << y).map_err(|e| format!("trial {i} double shrink: {e}"))?;
        if adj[x] >> y & 1 == 0 || into(y) > m - 4 {
            return Err(format!("trial {i}: double shrink pair ({x}, {y}) fails the arc or degree bound"));
        }
    }
    Ok(format!("{trials} trials, 0 violations"))
}

fn thresholds() -> Verdict {
    let mut summary = Vec::new();
    for which in [Threshold::NearFullMinusOne, Threshold::NearFull, Threshold::Square] {
        let mut applied = 0;
        let mut trials = 0;
        for q in [9, 10] {
            for i in 0..1000u64 {
                let ctx = format!("{which:?} q={q} instance {i}");
                let (t, s1, s2) = gen::threshold_instance(q, which, derive_seed(SEED + 5, i)).map_err(err(&ctx))?;
                let adj = masks(&t);
                let (xs, ys) = (mask_of(&s1), mask_of(&s2));
                let arcs: usize = s1.iter().map(|x| (adj[x] & ys).count_ones() as usize).sum();
                let (m, cover) = max_matching_with_cover(&t, &s1, &s2).map_err(err(&ctx))?;

                let mut used: Mask = 0;
                for &(a, b) in &m.pairs {
                    if xs >> a & 1 == 0 || ys >> b & 1 == 0 || adj[a] >> b & 1 == 0 || used >> a & 1 == 1 || used >> b & 1 == 1 {
                        return Err(format!("{ctx}: bad matching pair ({a}, {b})"));
                    }
                    used |= 1 << a | 1 << b;
                }
                let cov = mask_of(&cover.members);
                for x in s1.iter() {
                    let missed = adj[x] & ys & !cov;
                    if cov >> x & 1 == 0 && missed != 0 {
                        return Err(format!("{ctx}: cover misses arc {x} -> {}", missed.trailing_zeros()));
                    }
                }
                if m.len() != cover.len() {
                    return Err(format!("{ctx}: matching {} vs cover {}", m.len(), cover.len()));
                }

                let dominating = s1.iter().filter(|&x| adj[x] & ys == ys).count();
                let applies = arcs >= which.min_arcs(q);
                let holds = m.len() >= which.promised_matching(q) && (which != Threshold::Square || dominating >= 3);
                if applies && !holds {
                    return Err(format!("{ctx}: {arcs} arcs but matching {} and {dominating} dominating", m.len()));
                }
                let lib = check_threshold(&t, &s1, &s2, q, which).map_err(err(&ctx))?;
                if lib.applies != applies || lib.arcs != arcs || !lib.holds {
                    return Err(format!("{ctx}: library check disagrees: {lib:?}"));
                }
                applied += usize::from(applies);
                trials += 1;
            }
        }
        if applied == 0 {
            return Err(format!("{which:?}: no instance met the arc threshold"));
        }
        summary.push(format!("{which:?} {applied}/{trials} at threshold"));
    }
    Ok(format!("0 violations; {}", summary.join(", ")))
}

fn mask_of(s: &VertexSet) -> Mask {
    s.iter().fold(0, |m, v| m | 1 << v)
}

fn planted_moves() -> Verdict {
    let mut summary = Vec::new();
    for kind in PlantedKind::ALL {
        let q = kind.min_q();
        for i in 0..100u64 {
            let ctx = format!("{kind} q={q} seed {i}");
            let inst = gen::planted_move_instance(kind, q, derive_seed(SEED + 6, i)).map_err(err(&ctx))?;
            let t = &inst.tournament;
            let adj = masks(t);
            let before = &inst.packing;
            check_family(&adj, &before.cycles, q, 0).map_err(|e| format!("{ctx}: planted family: {e}"))?;
            let part = partition_remainder(t, before).map_err(err(&ctx))?;
            match inst.expected {
                Expected::FamilyGrows { to } => {
                    let next = match kind {
                        PlantedKind::Claim2 => move_absorb(t, before, &part),
                        PlantedKind::Claim4 => move_two_for_one(t, before, &part),
                        _ => move_three_for_two(t, before, &part),
                    }
                    .ok_or_else(|| format!("{ctx}: move did not fire"))?;
                    verify_packing(t, &next, q, to).map_err(err(&ctx))?;
                    check_family(&adj, &next.cycles, q, to).map_err(|e| format!("{ctx}: {e}"))?;
                }
                Expected::TailGrows { from, min, max } => {
                    let g = grow_tail(t, before, &part.path)
                        .map_err(err(&ctx))?
                        .ok_or_else(|| format!("{ctx}: tail did not grow"))?;
                    check_growth(&adj, before, &g.packing, g.path.vertices(), g.tail.vertices(), from, min, max)
                        .map_err(|e| format!("{ctx}: {e}"))?;
                }
            }
        }
        summary.push(format!("{kind}@q={q} 100/100"));
    }
    Ok(summary.join(", "))
}

/// The family keeps its size, the path spans the new remainder, and its last
/// vertex lies on a tail cycle inside the remainder that is longer than before.
#[allow(clippy::too_many_arguments)]
fn check_growth(
    adj: &[Mask],
    before: &CyclePacking,
    after: &CyclePacking,
    path: &[usize],
    tail: &[usize],
    from: usize,
    min: usize,
    max: usize,
) -> Result<(), String> {
    let q = before.q;
    let covered = check_family(adj, &after.cycles, q, before.len())?;
    if after.len() != before.len() {
        return Err(format!("family changed size {} -> {}", before.len(), after.len()));
    }
    let mut on_path: Mask = 0;
    for (i, &v) in path.iter().enumerate() {
        if on_path >> v & 1 == 1 || (i > 0 && adj[path[i - 1]] >> v & 1 == 0) {
            return Err(format!("path breaks at {v}"));
        }
        on_path |= 1 << v;
    }
    let all = Mask::MAX >> (128 - adj.len());
    if on_path != all & !covered {
        return Err("path does not span the remainder".into());
    }
    if tail.len() < min || tail.len() > max || tail.len() <= from {
        return Err(format!("tail has {} vertices, expected {min}..={max} (was {from})", tail.len()));
    }
    let tail_set = check_cycle(adj, tail, tail.len())?;
    if tail_set & !on_path != 0 || path.last().is_none_or(|&l| tail_set >> l & 1 == 0) {
        return Err("tail is not at the end of the path".into());
    }
    Ok(())
}

fn search_smoke() -> Verdict {
    let mut spec = SearchSpec::new(3, 2, 7, 7, SearchMode::Exhaustive);
    spec.degree_floor = Some(3);
    let first = counterexample_search(&spec).map_err(err("first run"))?;
    let second = counterexample_search(&spec).map_err(err("second run"))?;
    let (a, b) = (first.to_text(), second.to_text());
    if a.as_bytes() != b.as_bytes() {
        return Err("reports differ between runs".into());
    }
    if !first.violators.is_empty() || !first.undetermined.is_empty() {
        return Err(format!("{} violators, {} undetermined", first.violators.len(), first.undetermined.len()));
    }

    // direct enumeration: every 7-vertex tournament with out-degree >= 3 has two disjoint triangles
    let mut regular = 0u64;
    for pattern in 0..1u64 << 21 {
        let adj = pattern_masks(7, pattern);
        if min_out(&adj) < 3 {
            continue;
        }
        regular += 1;
        let tri = triangles(&adj);
        if !tri.iter().any(|&a| tri.iter().any(|&b| a & b == 0)) {
            return Err(format!("pattern {pattern} lacks two disjoint triangles"));
        }
    }
    if first.examined != regular {
        return Err(format!("search examined {}, direct count {regular}", first.examined));
    }
    Ok(format!("examined={} violators=0, identical bytes over two runs", first.examined))
}

fn pattern_masks(n: usize, pattern: u64) -> Vec<Mask> {
    let mut adj = vec![0 as Mask; n];
    let mut bit = 0;
    for i in 0..n {
        for j in i + 1..n {
            if pattern >> bit & 1 == 1 {
                adj[i] |= 1 << j;
            } else {
                adj[j] |= 1 << i;
            }
            bit += 1;
        }
    }
    adj
}

fn eleven_cycles() -> Verdict {
    let mut oracle_runs = 0;
    for i in 0..50u64 {
        let t = gen::min_degree_tournament(23, 10, derive_seed(SEED + 7, i)).map_err(err(format!("instance {i}")))?;
        let adj = masks(&t);
        if min_out(&adj) < 10 {
            return Err(format!("instance {i}: out-degree {} < 10", min_out(&adj)));
        }
        let r = pack(&t, 11, 1, &Budget::default()).map_err(err(format!("instance {i}")))?;
        if r.status != PackStatus::TargetMet {
            return Err(format!("instance {i}: status {}", r.status.as_str()));
        }
        check_family(&adj, &r.packing.cycles, 11, 1).map_err(|e| format!("instance {i}: {e}"))?;
        oracle_runs += usize::from(r.fallback_used);
    }
    Ok(format!("50/50 target_met, {oracle_runs} needed the exact fallback"))
}
