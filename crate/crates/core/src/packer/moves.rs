//! Moves that enlarge a maximal packing by one cycle.

use super::{CyclePacking, PathPartition};
use crate::classic;
use crate::matching::{dominating_vertices, max_matching_with_cover, Matching};
use crate::surgery;
use crate::tournament::{Cycle, Path, Tournament, VertexSet};

fn matching(t: &Tournament, x: &VertexSet, y: &VertexSet) -> Matching {
    max_matching_with_cover(t, x, y).expect("disjoint sides").0
}

/// A cycle on `kept ∪ {u}`: absorbs `u` into a Hamiltonian cycle of `T[kept]`
/// when possible, else any Hamiltonian cycle of the union.
fn swap_in(t: &Tournament, kept: &VertexSet, u: usize) -> Option<Cycle> {
    if kept.len() >= 3 {
        if let Some(base) = classic::hamiltonian_cycle_within(t, kept) {
            if let Ok(c) = surgery::absorb(t, &base, u) {
                return Some(c);
            }
        }
    }
    let mut joined = kept.clone();
    joined.insert(u);
    classic::hamiltonian_cycle_within(t, &joined)
}

/// `(cycle index, v)` with `v` on that cycle sending `≥ 3q` arcs into `U₂`,
/// at least `3q` of whose heads have two or more out-neighbours on the cycle.
pub fn claim2_hypothesis(t: &Tournament, f: &CyclePacking, part: &PathPartition) -> Option<(usize, usize)> {
    let q = f.q;
    let n = t.n();
    for (ci, c) in f.cycles.iter().enumerate() {
        let on = c.vertex_set(n);
        for &v in c.vertices() {
            let heads = t.out_neighbors(v).intersection(&part.u2);
            if heads.len() < 3 * q {
                continue;
            }
            if heads.iter().filter(|&u| t.out_degree_into(u, &on) >= 2).count() >= 3 * q {
                return Some((ci, v));
            }
        }
    }
    None
}

/// Swaps one cycle vertex `w` for a remainder vertex `u` so that the cycle
/// survives and `w` closes a new `q`-cycle with the rest of the remainder.
pub fn move_absorb(t: &Tournament, f: &CyclePacking, part: &PathPartition) -> Option<CyclePacking> {
    let q = f.q;
    let n = t.n();
    let rest = part.path.vertex_set(n);
    for (ci, c) in f.cycles.iter().enumerate() {
        let on = c.vertex_set(n);
        for &w in c.vertices() {
            let ins = t.in_degree_from(w, &rest);
            let outs = t.out_degree_into(w, &rest);
            if ins == 0 || outs == 0 {
                continue;
            }
            let mut kept = on.clone();
            kept.remove(w);
            for u in rest.iter() {
                let mut freed = rest.clone();
                freed.remove(u);
                freed.insert(w);
                let comps = t.strong_components_within(&freed);
                let Some(comp) = comps.iter().find(|s| s.len() >= q) else {
                    continue;
                };
                let Some(swapped) = swap_in(t, &kept, u) else {
                    continue;
                };
                let extra = classic::cycle_of_length_within(t, comp, q).expect("strong component");
                return Some(f.replacing(&[ci], vec![swapped, extra]));
            }
        }
    }
    None
}

/// Index of a cycle `C` with either a `q`-matching from `U₁` into `C` and a
/// 2-matching from `C` into `U₂`, or a `(q−1)`-matching and a 3-matching.
pub fn claim4_hypothesis(t: &Tournament, f: &CyclePacking, part: &PathPartition) -> Option<usize> {
    if part.is_degenerate() {
        return None;
    }
    let q = f.q;
    f.cycles.iter().position(|c| {
        let on = c.vertex_set(t.n());
        let inward = matching(t, &part.u1, &on).len();
        let outward = matching(t, &on, &part.u2).len();
        (inward >= q && outward >= 2) || (inward + 1 >= q && outward >= 3)
    })
}

/// The two cycles built from `U₁ → {a, b}` and `{a, b} → U₂` matchings.
fn two_for_one_cycles(t: &Tournament, part: &PathPartition, inward: &Matching, outward: &Matching) -> Option<Vec<Cycle>> {
    let q = part.q;
    let (a, wa) = outward.pairs[0];
    let (b, wb) = outward.pairs[1];
    let (ia, ib) = (part.index_of(wa)?, part.index_of(wb)?);
    let ((x_hi, w_hi), (x_lo, i_lo)) = if ia > ib { ((a, wa), (b, ib)) } else { ((b, wb), (a, ia)) };
    let entry_hi = inward.partner_of_target(x_hi)?;
    let entry_lo = inward.partner_of_target(x_lo)?;

    let low = Path::from_raw(part.run(i_lo, 3 * q - 2));
    let c1 = surgery::splice_and_trim(t, entry_lo, &low, x_lo, q).ok()?;
    let mut high = vec![w_hi];
    high.extend(part.run(3 * q - 3, 2 * q));
    let c2 = surgery::splice_and_trim(t, entry_hi, &Path::from_raw(high), x_hi, q).ok()?;
    Some(vec![c1, c2])
}

/// Replaces one cycle by two, using two of its vertices that are matched
/// both from `U₁` and into `U₂`, and segments of the path through `S` and `U₂`.
pub fn move_two_for_one(t: &Tournament, f: &CyclePacking, part: &PathPartition) -> Option<CyclePacking> {
    if part.is_degenerate() || part.u2.len() < 2 {
        return None;
    }
    let n = t.n();
    for (ci, c) in f.cycles.iter().enumerate() {
        let on = c.vertex_set(n);
        if matching(t, &part.u1, &on).len() < 2 || matching(t, &on, &part.u2).len() < 2 {
            continue;
        }
        let vs = c.vertices();
        for i in 0..vs.len() {
            for j in i + 1..vs.len() {
                let pair = VertexSet::from_vertices(n, &[vs[i], vs[j]]).expect("cycle vertices");
                let inward = matching(t, &part.u1, &pair);
                if inward.len() < 2 {
                    continue;
                }
                let outward = matching(t, &pair, &part.u2);
                if outward.len() < 2 {
                    continue;
                }
                if let Some(cycles) = two_for_one_cycles(t, part, &inward, &outward) {
                    return Some(f.replacing(&[ci], cycles));
                }
            }
        }
    }
    None
}

/// `(i, j)` with `q² − q + 3` or more arcs from `C_i` to `C_j`, a
/// `q`-matching from `U₁` into `C_i` and a 3-matching from `C_j` into `U₂`.
pub fn claim5_hypothesis(t: &Tournament, f: &CyclePacking, part: &PathPartition) -> Option<(usize, usize)> {
    if part.is_degenerate() {
        return None;
    }
    let q = f.q;
    let n = t.n();
    let sets: Vec<VertexSet> = f.cycles.iter().map(|c| c.vertex_set(n)).collect();
    for i in 0..sets.len() {
        if matching(t, &part.u1, &sets[i]).len() < q {
            continue;
        }
        for j in 0..sets.len() {
            if i != j
                && t.arcs_between(&sets[i], &sets[j]).expect("disjoint cycles") + q >= q * q + 3
                && matching(t, &sets[j], &part.u2).len() >= 3
            {
                return Some((i, j));
            }
        }
    }
    None
}

/// Three cycles from three vertices of `C_i` dominating `C_j`, matched from
/// `U₁`, and three vertices of `C_j` matched into `U₂`.
fn three_for_two_cycles(t: &Tournament, part: &PathPartition, inward: &Matching, outward: &Matching) -> Option<Vec<Cycle>> {
    let q = part.q;
    // (x, index of its U₁ partner), highest index first
    let mut xs: Vec<(usize, usize)> = inward.pairs[..3]
        .iter()
        .map(|&(u, x)| part.index_of(u).map(|i| (x, i)))
        .collect::<Option<_>>()?;
    xs.sort_by_key(|x| std::cmp::Reverse(x.1));
    // (y, v, index of v), highest index first
    let mut ys: Vec<(usize, usize, usize)> = outward.pairs[..3]
        .iter()
        .map(|&(y, v)| part.index_of(v).map(|i| (y, v, i)))
        .collect::<Option<_>>()?;
    ys.sort_by_key(|y| std::cmp::Reverse(y.2));

    let (x3, i3) = xs[0];
    let (x2, i2) = xs[1];
    let (x1, i1) = xs[2];
    let (y1, v1, _) = ys[0];
    let (y2, v2, _) = ys[1];
    let (y3, _, iv3) = ys[2];

    let mut b = vec![v1];
    b.extend(part.run(2 * q - 1, i3));
    let mut c = vec![v2];
    c.extend(part.run(3 * q - 3, 2 * q));
    c.push(part.u(i2));
    let mut d = part.run(iv3, 3 * q - 2);
    d.push(part.u(i1));

    let cb = surgery::splice_and_trim(t, x3, &Path::from_raw(b), y1, q).ok()?;
    let cc = surgery::splice_and_trim(t, x2, &Path::from_raw(c), y2, q).ok()?;
    let cd = surgery::splice_and_trim(t, x1, &Path::from_raw(d), y3, q).ok()?;
    Some(vec![cb, cc, cd])
}

/// Replaces two cycles `C_i, C_j` with `q² − q + 3` or more arcs from `C_i`
/// to `C_j` by three.
pub fn move_three_for_two(t: &Tournament, f: &CyclePacking, part: &PathPartition) -> Option<CyclePacking> {
    if part.is_degenerate() || part.u2.len() < 3 {
        return None;
    }
    let q = f.q;
    let n = t.n();
    let sets: Vec<VertexSet> = f.cycles.iter().map(|c| c.vertex_set(n)).collect();
    for i in 0..sets.len() {
        for j in 0..sets.len() {
            if i == j || t.arcs_between(&sets[i], &sets[j]).expect("disjoint cycles") + q < q * q + 3 {
                continue;
            }
            let dom = dominating_vertices(t, &sets[i], &sets[j]).expect("disjoint cycles");
            if dom.len() < 3 {
                continue;
            }
            let inward = matching(t, &part.u1, &dom);
            let outward = matching(t, &sets[j], &part.u2);
            if inward.len() < 3 || outward.len() < 3 {
                continue;
            }
            if let Some(cycles) = three_for_two_cycles(t, part, &inward, &outward) {
                return Some(f.replacing(&[i, j], cycles));
            }
        }
    }
    None
}
