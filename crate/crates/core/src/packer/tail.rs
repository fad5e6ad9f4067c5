//! Growing the cycle at the end of the remainder path.
//!
//! When the remainder `R` is `q`-cycle-free, its Hamiltonian path ends in the
//! sink strong component. If that component has three or more vertices it is
//! the tail cycle `C_L`; otherwise the last one or two components are
//! singletons or a small block `B`. Each case borrows two vertices from a
//! cycle of the family (shrunk with degree control), returns other vertices to
//! keep the family the same size, and leaves a longer strong tail at the end
//! of the new remainder path. Repeating until the tail reaches `q` vertices
//! yields an extra cycle.

use super::CyclePacking;
use crate::classic;
use crate::error::{Error, Result};
use crate::surgery;
use crate::tournament::{Cycle, Path, Tournament, VertexSet};

/// Which branch of the tail-growth case analysis applied.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TailCase {
    /// The path ends in two singleton components.
    Case1,
    /// A block of `q − 1` vertices precedes the final singleton.
    Case2Long,
    /// Block precedes the final singleton; `y` beats a block vertex.
    Case2A,
    /// `y` beats no block vertex but beats the final vertex.
    Case2B,
    /// `y` beats neither the block nor the final vertex.
    Case2C,
    /// Tail of 4+ vertices; `y` beats a tail vertex.
    CaseA1,
    /// Tail of 4+ vertices dominating `y`.
    CaseA2,
    /// Tail triangle; `y` beats exactly one of its vertices.
    CaseB1,
    /// Tail triangle dominating `y`.
    CaseB2,
}

impl TailCase {
    pub fn as_str(self) -> &'static str {
        match self {
            TailCase::Case1 => "case1",
            TailCase::Case2Long => "case2_long",
            TailCase::Case2A => "case2_1",
            TailCase::Case2B => "case2_2",
            TailCase::Case2C => "case2_3",
            TailCase::CaseA1 => "case_a1",
            TailCase::CaseA2 => "case_a2",
            TailCase::CaseB1 => "case_b1",
            TailCase::CaseB2 => "case_b2",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TailGrowth {
    pub packing: CyclePacking,
    /// Hamiltonian path of the new remainder, ending on `tail`.
    pub path: Path,
    pub tail: Cycle,
    pub case: TailCase,
}

/// Size of the sink strong component of the remainder when it is a tail cycle
/// (three or more vertices), else 0.
pub fn tail_length(t: &Tournament, omega: &CyclePacking) -> usize {
    let rest = omega.remainder(t);
    match t.strong_components_within(&rest).last() {
        Some(s) if s.len() >= 3 => s.len(),
        _ => 0,
    }
}

/// The cycle of `omega` receiving the most arcs from `f1`; ties go to the lowest index.
pub fn select_receptive_cycle(t: &Tournament, f1: &VertexSet, omega: &CyclePacking) -> Result<(usize, Cycle)> {
    if omega.is_empty() {
        return Err(Error::EmptySet);
    }
    let mut best: Option<(usize, usize)> = None;
    for (i, c) in omega.cycles.iter().enumerate() {
        let arcs = t.arcs_between(f1, &c.vertex_set(t.n()))?;
        if best.is_none_or(|(_, b)| arcs > b) {
            best = Some((i, arcs));
        }
    }
    let (i, _) = best.expect("non-empty family");
    Ok((i, omega.cycles[i].clone()))
}

struct Analysis {
    case: TailCase,
    ci_index: usize,
    ci: Cycle,
    /// Remainder minus the final components named by the case.
    p_prime: VertexSet,
    /// The tail cycle's vertices, or the final singleton.
    sink: VertexSet,
    /// The block (or second singleton) before a final singleton; empty otherwise.
    block: VertexSet,
    short: Cycle,
    x: usize,
    y: Option<usize>,
}

fn check_inputs(t: &Tournament, omega: &CyclePacking, path: &Path) -> Result<VertexSet> {
    path.validate(t)?;
    let rest = omega.remainder(t);
    if path.vertex_set(t.n()) != rest {
        return Err(Error::InvalidPath("not a Hamiltonian path of the remainder".into()));
    }
    if !t.is_q_cycle_free_within(&rest, omega.q) {
        return Err(Error::Precondition(format!("the remainder still contains a {}-cycle", omega.q)));
    }
    Ok(rest)
}

fn analyse(t: &Tournament, omega: &CyclePacking, rest: &VertexSet) -> Result<Option<Analysis>> {
    let q = omega.q;
    let n = t.n();
    if q < 7 || omega.is_empty() || rest.is_empty() {
        return Ok(None);
    }
    let comps = t.strong_components_within(rest);
    let sink = comps.last().expect("non-empty remainder").clone();
    if sink.len() >= 3 {
        let p_prime = rest.difference(&sink);
        let (ci_index, ci) = select_receptive_cycle(t, &sink, omega)?;
        let (short, (x, y)) = surgery::fact3_double_shrink(t, &ci)?;
        let dy = t.out_degree_into(y, &sink);
        let case = match (sink.len() >= 4, dy) {
            (true, d) if d >= 1 => TailCase::CaseA1,
            (true, _) => TailCase::CaseA2,
            (false, 1) => TailCase::CaseB1,
            (false, 0) => TailCase::CaseB2,
            _ => return Ok(None),
        };
        return Ok(Some(Analysis {
            case,
            ci_index,
            ci,
            p_prime,
            sink,
            block: VertexSet::empty(n),
            short,
            x,
            y: Some(y),
        }));
    }
    if comps.len() < 2 {
        return Ok(None);
    }
    let u1 = sink.first().expect("singleton");
    let block = comps[comps.len() - 2].clone();
    let f1 = block.union(&sink);
    let p_prime = rest.difference(&f1);
    let (ci_index, ci) = select_receptive_cycle(t, &f1, omega)?;
    if block.len() + 1 == q {
        let (short, x) = surgery::fact2_shrink(t, &ci)?;
        return Ok(Some(Analysis {
            case: TailCase::Case2Long,
            ci_index,
            ci,
            p_prime,
            sink,
            block,
            short,
            x,
            y: None,
        }));
    }
    let (short, (x, y)) = surgery::fact3_double_shrink(t, &ci)?;
    let case = if block.len() == 1 {
        TailCase::Case1
    } else if t.out_degree_into(y, &block) >= 1 {
        TailCase::Case2A
    } else if t.beats(y, u1) {
        TailCase::Case2B
    } else {
        TailCase::Case2C
    };
    Ok(Some(Analysis {
        case,
        ci_index,
        ci,
        p_prime,
        sink,
        block,
        short,
        x,
        y: Some(y),
    }))
}

/// The branch of the case analysis [`grow_tail`] would take, if any.
pub fn classify_tail(t: &Tournament, omega: &CyclePacking, path: &Path) -> Result<Option<TailCase>> {
    let rest = check_inputs(t, omega, path)?;
    Ok(analyse(t, omega, &rest)?.map(|a| a.case))
}

fn first_out(t: &Tournament, v: usize, set: &VertexSet) -> Option<usize> {
    t.out_neighbors(v).intersection(set).first()
}

fn with(set: &VertexSet, extra: &[usize]) -> VertexSet {
    let mut s = set.clone();
    for &v in extra {
        s.insert(v);
    }
    s
}

fn without(set: &VertexSet, gone: &[usize]) -> VertexSet {
    let mut s = set.clone();
    for &v in gone {
        s.remove(v);
    }
    s
}

/// A vertex `z` of the shortened cycle with no out-neighbour in `f1` and an
/// out-neighbour `u_i` in `P'`. Among the first three candidates, the one
/// picked by the low-degree rule is tried first.
fn pick_z(t: &Tournament, a: &Analysis, f1: &VertexSet) -> Option<(usize, usize)> {
    let q = a.ci.len();
    let on = a.ci.vertex_set(t.n());
    let cands: Vec<usize> = a
        .short
        .vertices()
        .iter()
        .copied()
        .filter(|&z| t.out_degree_into(z, f1) == 0)
        .collect();
    let mut order = Vec::new();
    if cands.len() >= 3 {
        if let Ok(z) = surgery::fact4_low_vertex(t, &a.ci, [cands[0], cands[1], cands[2]]) {
            order.push(z);
        }
    }
    order.extend(cands.iter().copied().filter(|&z| t.out_degree_into(z, &on) + 3 <= q));
    order.extend(cands.iter().copied());
    order.into_iter().find_map(|z| first_out(t, z, &a.p_prime).map(|u| (z, u)))
}

/// Hamiltonian path of `rest ∪ V(tail)` that ends by running around `tail`.
fn assemble(t: &Tournament, rest: &VertexSet, tail: &Cycle) -> Option<Path> {
    let n = t.n();
    let tail_set = tail.vertex_set(n);
    if rest.is_empty() {
        return Some(Path::from_raw(tail.vertices().to_vec()));
    }
    let comps = t.strong_components_within(rest);
    let last = comps.last().expect("non-empty");
    let (end, mut head) = if last.len() == 1 {
        let end = last.first().expect("singleton");
        (end, classic::hamiltonian_path_within(t, &without(rest, &[end])).into_vertices())
    } else {
        let end = last.iter().find(|&v| t.out_degree_into(v, &tail_set) > 0)?;
        let cyc = classic::hamiltonian_cycle_within(t, last)?;
        let pos = cyc.position(end)?;
        let before = classic::hamiltonian_path_within(t, &rest.difference(last)).into_vertices();
        let len = cyc.len();
        let mut head = before;
        head.extend((1..len).map(|i| cyc.vertices()[(pos + i) % len]));
        (end, head)
    };
    head.push(end);
    let entry = first_out(t, end, &tail_set)?;
    head.extend(tail.rotated_to(entry).into_vertices());
    Some(Path::from_raw(head))
}

/// One tail-growth step on a family `omega` whose remainder is `q`-cycle-free,
/// given a Hamiltonian path of that remainder.
///
/// Returns a family of the same size and a Hamiltonian path of its remainder
/// ending on a strictly longer tail cycle, or `None` when no case applies
/// (including `q < 7`, where the double shrink is unavailable). Errors when the
/// remainder contains a `q`-cycle or `path` does not span it.
pub fn grow_tail(t: &Tournament, omega: &CyclePacking, path: &Path) -> Result<Option<TailGrowth>> {
    let rest = check_inputs(t, omega, path)?;
    let Some(a) = analyse(t, omega, &rest)? else {
        return Ok(None);
    };
    let old = tail_length(t, omega);
    Ok(build(t, omega, &a).and_then(|(newc, tail)| {
        let packing = omega.replacing(&[a.ci_index], vec![newc]);
        super::verify_packing(t, &packing, omega.q, omega.len()).ok()?;
        tail.validate(t).ok()?;
        if tail.len() <= old {
            return None;
        }
        let rest2 = packing.remainder(t);
        let tail_set = tail.vertex_set(t.n());
        if !tail_set.is_subset(&rest2) {
            return None;
        }
        let path = assemble(t, &rest2.difference(&tail_set), &tail)?;
        path.validate(t).ok()?;
        if path.vertex_set(t.n()) != rest2 {
            return None;
        }
        Some(TailGrowth { packing, path, tail, case: a.case })
    }))
}

/// The replacement for `C_i` and the new tail cycle.
fn build(t: &Tournament, omega: &CyclePacking, a: &Analysis) -> Option<(Cycle, Cycle)> {
    let q = omega.q;
    let n = t.n();
    let ham = |s: &VertexSet| classic::hamiltonian_cycle_within(t, s);
    let short_set = a.short.vertex_set(n);
    let x = a.x;
    match a.case {
        TailCase::Case1 => {
            let y = a.y?;
            let u1 = a.sink.first()?;
            let u2 = a.block.first()?;
            let mut zs = a.short.vertices().to_vec();
            zs.sort_by_key(|&z| (t.out_degree_into(z, &short_set), z));
            let ui = zs.iter().find_map(|&z| first_out(t, z, &a.p_prime))?;
            let newc = ham(&with(&short_set, &[u2, ui]))?;
            let uj = first_out(t, y, &without(&a.p_prime, &[ui]))?;
            let tail = Cycle::new(t, vec![u1, x, y, uj]).ok()?;
            Some((newc, tail))
        }
        TailCase::Case2Long => {
            if t.out_degree_into(x, &a.block) >= 1 {
                let newc = ham(&with(&a.block, &[x]))?;
                Some((newc, a.short.clone()))
            } else {
                let ui = first_out(t, x, &a.p_prime)?;
                let newc = classic::cycle_through_within(t, &with(&a.block, &[x, ui]), x, q)?;
                Some((newc, a.short.clone()))
            }
        }
        TailCase::Case2A => {
            let y = a.y?;
            let u1 = a.sink.first()?;
            let f1 = a.block.union(&a.sink);
            let (_, ui) = pick_z(t, a, &f1)?;
            let newc = ham(&with(&short_set, &[u1, ui]))?;
            let tail = ham(&with(&a.block, &[x, y]))?;
            Some((newc, tail))
        }
        TailCase::Case2B => {
            let u1 = a.sink.first()?;
            let big = ham(&with(&a.ci.vertex_set(n), &[u1]))?;
            let (newc, z) = surgery::fact2_shrink(t, &big).ok()?;
            if z == u1 {
                return None;
            }
            let tail = if t.out_degree_into(z, &a.block) >= 1 {
                ham(&with(&a.block, &[z]))?
            } else {
                let ui = first_out(t, z, &a.p_prime)?;
                ham(&with(&a.block, &[z, ui]))?
            };
            Some((newc, tail))
        }
        TailCase::Case2C => {
            let y = a.y?;
            let u1 = a.sink.first()?;
            let f1 = a.block.union(&a.sink);
            let (_, ui) = pick_z(t, a, &f1)?;
            let newc = ham(&with(&short_set, &[u1, ui]))?;
            let us = first_out(t, y, &without(&a.p_prime, &[ui]))?;
            let tail = ham(&with(&a.block, &[x, y, us]))?;
            Some((newc, tail))
        }
        TailCase::CaseA1 => {
            let y = a.y?;
            let (_, ui) = pick_z(t, a, &a.sink)?;
            let us = first_out(t, y, &a.sink)?;
            let cl_short = classic::cycle_through_within(t, &a.sink, us, a.sink.len() - 1)?;
            let u = a.sink.difference(&cl_short.vertex_set(n)).first()?;
            let newc = ham(&with(&short_set, &[u, ui]))?;
            let tail = ham(&with(&cl_short.vertex_set(n), &[x, y]))?;
            Some((newc, tail))
        }
        TailCase::CaseA2 => {
            let y = a.y?;
            let (_, ui) = pick_z(t, a, &a.sink)?;
            let cl_short = classic::cycle_of_length_within(t, &a.sink, a.sink.len() - 1)?;
            let u = a.sink.difference(&cl_short.vertex_set(n)).first()?;
            let newc = ham(&with(&short_set, &[u, ui]))?;
            let us = first_out(t, y, &without(&a.p_prime, &[ui]))?;
            let tail = ham(&with(&cl_short.vertex_set(n), &[x, y, us]))?;
            Some((newc, tail))
        }
        TailCase::CaseB1 | TailCase::CaseB2 => {
            let y = a.y?;
            let (_, ui) = pick_z(t, a, &a.sink)?;
            let tri = ham(&a.sink)?;
            let tv = tri.vertices();
            let start = if a.case == TailCase::CaseB1 {
                let w = first_out(t, y, &a.sink)?;
                tri.position(w)?
            } else {
                (0..3).find(|&r| t.beats(tv[(r + 1) % 3], x))?
            };
            let (u1, u2, u3) = (tv[start], tv[(start + 1) % 3], tv[(start + 2) % 3]);
            let newc = ham(&with(&short_set, &[u3, ui]))?;
            let tail = if a.case == TailCase::CaseB1 {
                Cycle::new(t, vec![u1, u2, x, y]).ok()?
            } else {
                let us = first_out(t, y, &without(&a.p_prime, &[ui]))?;
                Cycle::new(t, vec![u1, u2, x, y, us]).ok()?
            };
            Some((newc, tail))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::{partition_remainder, verify_packing};
    use super::*;
    use crate::gen::{self, PlantedKind};

    fn check_growth(t: &Tournament, omega: &CyclePacking, g: &TailGrowth) {
        verify_packing(t, &g.packing, omega.q, omega.len()).unwrap();
        g.path.validate(t).unwrap();
        assert_eq!(g.path.vertex_set(t.n()), g.packing.remainder(t));
        let last = g.path.last().unwrap();
        assert!(g.tail.contains(last));
        assert!(g.tail.len() > tail_length(t, omega));
    }

    #[test]
    fn planted_tails_grow() {
        for seed in 0..8 {
            for q in [9, 10] {
                for kind in [PlantedKind::TailCaseA, PlantedKind::TailCaseB] {
                    let inst = gen::planted_move_instance(kind, q, seed).unwrap();
                    let part = partition_remainder(&inst.tournament, &inst.packing).unwrap();
                    let case = classify_tail(&inst.tournament, &inst.packing, &part.path).unwrap().unwrap();
                    match kind {
                        PlantedKind::TailCaseA => assert!(matches!(case, TailCase::CaseA1 | TailCase::CaseA2)),
                        _ => assert!(matches!(case, TailCase::CaseB1 | TailCase::CaseB2)),
                    }
                    let g = grow_tail(&inst.tournament, &inst.packing, &part.path).unwrap().unwrap();
                    check_growth(&inst.tournament, &inst.packing, &g);
                    let old = tail_length(&inst.tournament, &inst.packing);
                    assert!(g.tail.len() == old + 1 || g.tail.len() == old + 2);
                }
            }
        }
    }

    #[test]
    fn full_length_tail_yields_a_cycle() {
        let q = 9;
        for seed in 0..4 {
            let inst = gen::planted_tail_instance(q, q - 1, true, seed).unwrap();
            let part = partition_remainder(&inst.tournament, &inst.packing).unwrap();
            let g = grow_tail(&inst.tournament, &inst.packing, &part.path).unwrap().unwrap();
            check_growth(&inst.tournament, &inst.packing, &g);
            assert!(g.tail.len() >= q);
            assert!(!inst.tournament.is_q_cycle_free_within(&g.packing.remainder(&inst.tournament), q));
        }
    }

    #[test]
    fn rejects_remainder_with_a_cycle() {
        let t = gen::rotational_tournament(9, &[1, 2, 3, 4]).unwrap();
        let omega = CyclePacking::new(7);
        let path = classic::hamiltonian_path(&t);
        assert!(matches!(grow_tail(&t, &omega, &path), Err(Error::Precondition(_))));
    }

    #[test]
    fn receptive_cycle_ties_go_low() {
        let t = gen::rotational_tournament(9, &[1, 2, 3, 4]).unwrap();
        let omega = CyclePacking {
            q: 3,
            cycles: vec![Cycle::new(&t, vec![0, 3, 6]).unwrap(), Cycle::new(&t, vec![1, 4, 7]).unwrap()],
        };
        let f1 = VertexSet::from_vertices(9, &[2, 5, 8]).unwrap();
        let (i, _) = select_receptive_cycle(&t, &f1, &omega).unwrap();
        let a0 = t.arcs_between(&f1, &omega.cycles[0].vertex_set(9)).unwrap();
        let a1 = t.arcs_between(&f1, &omega.cycles[1].vertex_set(9)).unwrap();
        assert_eq!(i, if a1 > a0 { 1 } else { 0 });
        assert!(select_receptive_cycle(&t, &f1, &CyclePacking::new(3)).is_err());
    }
}
