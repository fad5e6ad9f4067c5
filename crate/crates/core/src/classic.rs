//! Constructive versions of the classical tournament theorems: Rédei's
//! Hamiltonian path, Camion's Hamiltonian cycle and Moon's (vertex-)pancyclicity.

use crate::error::{Error, Result};
use crate::tournament::{Cycle, Path, Tournament, VertexSet};

/// Inserts the given vertices one by one, each at the first feasible position
/// scanning left to right.
pub(crate) fn hamiltonian_path_of(t: &Tournament, order: impl IntoIterator<Item = usize>) -> Vec<usize> {
    let mut path: Vec<usize> = Vec::new();
    for v in order {
        let len = path.len();
        let pos = (0..=len)
            .find(|&p| (p == 0 || t.beats(path[p - 1], v)) && (p == len || t.beats(v, path[p])))
            .expect("a tournament path always admits an insertion point");
        path.insert(pos, v);
    }
    path
}

/// A Hamiltonian path, built by insertion in label order.
pub fn hamiltonian_path(t: &Tournament) -> Path {
    Path::from_raw(hamiltonian_path_of(t, 0..t.n()))
}

/// Hamiltonian path of the sub-tournament induced by `s`.
pub fn hamiltonian_path_within(t: &Tournament, s: &VertexSet) -> Path {
    Path::from_raw(hamiltonian_path_of(t, s.iter()))
}

pub(crate) fn require_strong(t: &Tournament) -> Result<()> {
    let comps = t.strong_components();
    if comps.len() == 1 {
        Ok(())
    } else {
        Err(Error::NotStrong {
            sizes: comps.iter().map(VertexSet::len).collect(),
        })
    }
}

/// The triangle `(v x y)` with `x` the smallest out-neighbour of `v` having an
/// out-neighbour among the in-neighbours of `v`, and `y` the smallest such.
pub(crate) fn triangle_through(t: &Tournament, v: usize) -> Option<Cycle> {
    let ins = t.in_neighbors(v);
    t.out_neighbors(v).iter().find_map(|x| {
        let mut targets = t.out_neighbors(x);
        targets.intersect_with(&ins);
        targets.first().map(|y| Cycle::from_raw(vec![v, x, y]))
    })
}

/// One Moon step. Prefers inserting a single outside vertex (lowest label, first
/// insertion point), keeping all of `V(C)`. When no outside vertex has both an
/// in- and an out-neighbour on `C`, every outside vertex either dominates or is
/// dominated by `C`; an arc `b -> a` from the dominated side to the dominating
/// side then replaces one cycle vertex (never `keep`) by `b, a`.
pub(crate) fn extend_cycle_keeping(t: &Tournament, c: &Cycle, keep: Option<usize>) -> Result<Cycle> {
    let n = t.n();
    let m = c.len();
    if m >= n {
        return Err(Error::AlreadyHamiltonian);
    }
    let seq = c.vertices();
    let on = c.vertex_set(n);
    let outside = VertexSet::full(n).difference(&on);

    for u in outside.iter() {
        if let Some(i) = (0..m).find(|&i| t.beats(seq[i], u) && t.beats(u, seq[(i + 1) % m])) {
            let mut out = Vec::with_capacity(m + 1);
            out.extend_from_slice(&seq[..=i]);
            out.push(u);
            out.extend_from_slice(&seq[i + 1..]);
            return Ok(Cycle::from_raw(out));
        }
    }

    let (dominating, dominated): (Vec<usize>, Vec<usize>) =
        outside.iter().partition(|&u| t.out_degree_into(u, &on) == m);
    let pair = dominated
        .iter()
        .find_map(|&b| dominating.iter().find(|&&a| t.beats(b, a)).map(|&a| (b, a)));
    let Some((b, a)) = pair else {
        return Err(Error::NotStrong {
            sizes: t.strong_components().iter().map(VertexSet::len).collect(),
        });
    };
    let i = (0..m)
        .find(|&i| Some(seq[(i + 1) % m]) != keep)
        .expect("a cycle has at least two vertices other than `keep`");
    let mut out = Vec::with_capacity(m + 1);
    out.push(seq[i]);
    out.push(b);
    out.push(a);
    out.extend((2..m).map(|k| seq[(i + k) % m]));
    Ok(Cycle::from_raw(out))
}

/// A cycle one longer than `c`, per the inductive step of Moon's theorem.
///
/// The result contains all of `V(C)` plus one new vertex whenever such a cycle
/// exists; otherwise it is `V(C)` with one vertex exchanged for two.
pub fn extend_cycle(t: &Tournament, c: &Cycle) -> Result<Cycle> {
    c.validate(t)?;
    if c.len() >= t.n() {
        return Err(Error::AlreadyHamiltonian);
    }
    require_strong(t)?;
    extend_cycle_keeping(t, c, None)
}

fn grow(t: &Tournament, mut c: Cycle, len: usize, keep: Option<usize>) -> Result<Cycle> {
    while c.len() < len {
        c = extend_cycle_keeping(t, &c, keep)?;
    }
    Ok(c)
}

fn check_length(t: &Tournament, l: usize) -> Result<()> {
    if l < 3 || l > t.n() {
        Err(Error::LengthOutOfRange { len: l, n: t.n() })
    } else {
        Ok(())
    }
}

/// Camion: a Hamiltonian cycle of a strong tournament, grown from a triangle through vertex 0.
pub fn hamiltonian_cycle(t: &Tournament) -> Result<Cycle> {
    require_strong(t)?;
    check_length(t, t.n())?;
    let start = triangle_through(t, 0).expect("strong tournaments on 3+ vertices have triangles");
    grow(t, start, t.n(), None)
}

/// Moon: a cycle of exactly `l` vertices, grown from a triangle through vertex 0.
pub fn cycle_of_length(t: &Tournament, l: usize) -> Result<Cycle> {
    require_strong(t)?;
    check_length(t, l)?;
    let start = triangle_through(t, 0).expect("strong tournaments on 3+ vertices have triangles");
    grow(t, start, l, None)
}

/// Moon: a cycle of exactly `l` vertices through `v`, listed starting at `v`.
pub fn cycle_through_vertex(t: &Tournament, v: usize, l: usize) -> Result<Cycle> {
    if v >= t.n() {
        return Err(Error::VertexOutOfRange { vertex: v, n: t.n() });
    }
    require_strong(t)?;
    check_length(t, l)?;
    let start = triangle_through(t, v).expect("strong tournaments on 3+ vertices have triangles");
    Ok(grow(t, start, l, Some(v))?.rotated_to(v))
}

/// Hamiltonian cycle of `T[s]` in parent labels, if `T[s]` is strong with at least 3 vertices.
pub(crate) fn hamiltonian_cycle_within(t: &Tournament, s: &VertexSet) -> Option<Cycle> {
    if s.len() < 3 {
        return None;
    }
    let (sub, map) = t.induced(s).ok()?;
    let c = hamiltonian_cycle(&sub).ok()?;
    Some(Cycle::from_raw(c.vertices().iter().map(|&i| map[i]).collect()))
}

/// Cycle of length `l` inside `T[s]` through `v` (parent labels), if `T[s]` is strong.
pub(crate) fn cycle_through_within(t: &Tournament, s: &VertexSet, v: usize, l: usize) -> Option<Cycle> {
    let (sub, map) = t.induced(s).ok()?;
    let local = map.iter().position(|&x| x == v)?;
    let c = cycle_through_vertex(&sub, local, l).ok()?;
    Some(Cycle::from_raw(c.vertices().iter().map(|&i| map[i]).collect()))
}

/// Cycle of length `l` inside `T[s]` (parent labels), if `T[s]` is strong.
pub(crate) fn cycle_of_length_within(t: &Tournament, s: &VertexSet, l: usize) -> Option<Cycle> {
    let (sub, map) = t.induced(s).ok()?;
    let c = cycle_of_length(&sub, l).ok()?;
    Some(Cycle::from_raw(c.vertices().iter().map(|&i| map[i]).collect()))
}
