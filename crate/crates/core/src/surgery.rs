//! Cycle surgery: shrinking a cycle by one or two vertices while controlling
//! the out-degree of what is left over, absorbing a vertex into a cycle, and
//! closing a spliced walk into a cycle of a prescribed length.
//!
//! Degrees are always measured into the vertex set of the original cycle:
//! `d⁺(u, C)` is the number of out-neighbours of `u` inside `V(C)`.

use crate::classic;
use crate::error::{Error, Result};
use crate::tournament::{Cycle, Path, Tournament, VertexSet};

fn require_len(c: &Cycle, min: usize) -> Result<()> {
    if c.len() < min {
        Err(Error::CycleTooShort { len: c.len(), min })
    } else {
        Ok(())
    }
}

/// Shrinks `c` (length `m ≥ 4`) to an `(m−1)`-cycle on `V(C) ∖ {u}` with
/// `d⁺(u, C) ≤ m − 3`.
///
/// Takes the `(m−1)`-cycle given by pancyclicity of `T[V(C)]`; if its leftover
/// beats all but one vertex `v_i`, the leftover replaces `v_{i+1}` instead.
pub fn fact1_shrink(t: &Tournament, c: &Cycle) -> Result<(Cycle, usize)> {
    c.validate(t)?;
    require_len(c, 4)?;
    let m = c.len();
    let on = c.vertex_set(t.n());
    let shorter = classic::cycle_of_length_within(t, &on, m - 1)
        .expect("the vertex set of a cycle induces a strong tournament");
    let leftover = on.difference(&shorter.vertex_set(t.n())).first().expect("one vertex left");
    if t.out_degree_into(leftover, &on) <= m - 3 {
        return Ok((shorter, leftover));
    }
    let seq = shorter.vertices();
    let len = seq.len();
    let i = (0..len)
        .find(|&i| t.beats(seq[i], leftover))
        .expect("a cycle vertex has an in-neighbour on the cycle");
    let mut out = seq.to_vec();
    let next = (i + 1) % len;
    let freed = out[next];
    out[next] = leftover;
    Ok((Cycle::from_raw(out), freed))
}

/// Shrinks `c` (length `m ≥ 7`) to an `(m−1)`-cycle whose leftover `u`
/// satisfies `d⁺(u, C) ≤ m − 4`.
///
/// Starts from [`fact1_shrink`]; if its leftover already meets the bound it is
/// returned as is. Otherwise the leftover has exactly two in-neighbours
/// `v_i, v_j` on the shorter cycle and the walk `v_{j+1}, v_{j+2}, v_{j+3}`
/// along the arc from `v_j` finds a vertex to swap out. When neither arc
/// between the two in-neighbours holds three vertices (possible only for
/// `m = 7`), the leftover is chosen directly: the smallest vertex with
/// `d⁺ ≤ m − 4` whose removal leaves `T[V(C)]` strong.
pub fn fact2_shrink(t: &Tournament, c: &Cycle) -> Result<(Cycle, usize)> {
    c.validate(t)?;
    require_len(c, 7)?;
    let m = c.len();
    let on = c.vertex_set(t.n());
    let (shorter, u) = fact1_shrink(t, c)?;
    if t.out_degree_into(u, &on) <= m - 4 {
        return Ok((shorter, u));
    }
    let seq = shorter.vertices();
    let len = seq.len();
    let ins: Vec<usize> = (0..len).filter(|&p| t.beats(seq[p], u)).collect();
    debug_assert_eq!(ins.len(), 2);
    let gap_after = |from: usize, to: usize| (to + len - from - 1) % len;
    let mut starts: Vec<usize> = Vec::new();
    if gap_after(ins[0], ins[1]) >= 3 {
        starts.push(ins[0]);
    }
    if gap_after(ins[1], ins[0]) >= 3 {
        starts.push(ins[1]);
    }
    let Some(&j) = starts.iter().min_by_key(|&&p| seq[p]) else {
        return shrink_by_search(t, c, &on);
    };
    let w = |k: usize| seq[(j + k) % len];
    let rest = |from: usize| (from..len).map(w);
    let low = |v: usize| t.out_degree_into(v, &on) <= m - 4;

    let (cycle, freed) = if low(w(1)) {
        let mut out = vec![w(0), u];
        out.extend(rest(2));
        (out, w(1))
    } else if low(w(2)) {
        let mut out = vec![w(0), u, w(1)];
        out.extend(rest(3));
        (out, w(2))
    } else {
        let mut out = vec![w(0), u, w(1), w(2)];
        out.extend(rest(4));
        (out, w(3))
    };
    let cycle = Cycle::from_raw(cycle);
    debug_assert!(cycle.validate(t).is_ok());
    Ok((cycle, freed))
}

fn shrink_by_search(t: &Tournament, c: &Cycle, on: &VertexSet) -> Result<(Cycle, usize)> {
    let m = c.len();
    for x in on.iter() {
        if t.out_degree_into(x, on) > m - 4 {
            continue;
        }
        let mut rest = on.clone();
        rest.remove(x);
        if let Some(cycle) = classic::hamiltonian_cycle_within(t, &rest) {
            return Ok((cycle, x));
        }
    }
    Err(Error::Infeasible(format!(
        "no vertex of the {m}-cycle has out-degree at most {} and leaves a strong remainder",
        m - 4
    )))
}

/// Shrinks `c` (length `m ≥ 7`) by two vertices: returns the `(m−2)`-cycle
/// and the removed pair as an arc `(x, y)` with `d⁺(y, C) ≤ m − 4`.
///
/// The first vertex comes from [`fact2_shrink`]; the second from
/// [`fact2_shrink`] again when the intermediate cycle still has seven or more
/// vertices, and from [`fact1_shrink`] otherwise. Either way the vertex at the
/// head of the removed arc meets the bound.
pub fn fact3_double_shrink(t: &Tournament, c: &Cycle) -> Result<(Cycle, (usize, usize))> {
    c.validate(t)?;
    require_len(c, 7)?;
    let (mid, first) = fact2_shrink(t, c)?;
    let (short, second) = if mid.len() >= 7 {
        fact2_shrink(t, &mid)?
    } else {
        fact1_shrink(t, &mid)?
    };
    let arc = if t.beats(first, second) {
        (first, second)
    } else {
        (second, first)
    };
    Ok((short, arc))
}

/// Among three distinct vertices of `c` (length `m ≥ 4`), the first with
/// `d⁺(x, C) ≤ m − 3`. One always exists: if the first two each beat all but
/// one vertex of `C`, the third is beaten by both.
pub fn fact4_low_vertex(t: &Tournament, c: &Cycle, xs: [usize; 3]) -> Result<usize> {
    c.validate(t)?;
    require_len(c, 4)?;
    for &x in &xs {
        if !c.contains(x) {
            return Err(Error::NotOnCycle(x));
        }
    }
    if xs[0] == xs[1] || xs[0] == xs[2] || xs[1] == xs[2] {
        return Err(Error::InvalidParameter(format!("vertices {xs:?} are not distinct")));
    }
    let m = c.len();
    let on = c.vertex_set(t.n());
    xs.into_iter()
        .find(|&x| t.out_degree_into(x, &on) <= m - 3)
        .ok_or(Error::NoLowVertex)
}

/// Absorbs `u` into `c`: a Hamiltonian cycle of `T[V(C) ∪ {u}]`, obtained by
/// inserting `u` between some `c_i -> u -> c_{i+1}`. Needs `u` to have both an
/// in- and an out-neighbour on `c`.
pub fn absorb(t: &Tournament, c: &Cycle, u: usize) -> Result<Cycle> {
    c.validate(t)?;
    if u >= t.n() {
        return Err(Error::VertexOutOfRange { vertex: u, n: t.n() });
    }
    if c.contains(u) {
        return Err(Error::OnCycle(u));
    }
    let on = c.vertex_set(t.n());
    let out = t.out_degree_into(u, &on);
    if out == c.len() {
        return Err(Error::DominatesCycle(u));
    }
    if out == 0 {
        return Err(Error::DominatedByCycle(u));
    }
    let seq = c.vertices();
    let m = seq.len();
    let i = (0..m)
        .find(|&i| t.beats(seq[i], u) && t.beats(u, seq[(i + 1) % m]))
        .expect("mixed neighbourhood gives an insertion point");
    let mut v = seq[..=i].to_vec();
    v.push(u);
    v.extend_from_slice(&seq[i + 1..]);
    Ok(Cycle::from_raw(v))
}

/// Closes `exit -> segment… -> entry -> exit` into a cycle and trims it to
/// exactly `q` vertices by pancyclicity of the tournament it induces.
pub fn splice_and_trim(
    t: &Tournament,
    entry: usize,
    segment: &Path,
    exit: usize,
    q: usize,
) -> Result<Cycle> {
    if q < 3 {
        return Err(Error::InvalidParameter(format!("cycle length {q} is below 3")));
    }
    let mut seq = Vec::with_capacity(segment.len() + 2);
    seq.push(exit);
    seq.extend_from_slice(segment.vertices());
    seq.push(entry);
    let mut seen = VertexSet::empty(t.n());
    for &v in &seq {
        if v >= t.n() {
            return Err(Error::VertexOutOfRange { vertex: v, n: t.n() });
        }
        if !seen.insert(v) {
            return Err(Error::InvalidCycle(format!("vertex {v} repeated")));
        }
    }
    let len = seq.len();
    for i in 0..len {
        let (a, b) = (seq[i], seq[(i + 1) % len]);
        if !t.beats(a, b) {
            return Err(Error::MissingArc(a, b));
        }
    }
    if len < q {
        return Err(Error::CycleTooShort { len, min: q });
    }
    if len == q {
        return Ok(Cycle::from_raw(seq));
    }
    Ok(classic::cycle_of_length_within(t, &seen, q).expect("a cycle induces a strong tournament"))
}
