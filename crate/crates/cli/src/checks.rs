//! Property suites behind `claim-check`.

use std::fmt;
use std::str::FromStr;

use cyclemill::classic;
use cyclemill::gen;
use cyclemill::matching::{check_threshold, max_matching_with_cover, Threshold};
use cyclemill::rng::{derive_seed, stream_rng, Rng, Stream};
use cyclemill::surgery;
use cyclemill::{Cycle, Error, Result, Tournament, VertexSet};
use rand::seq::SliceRandom;
use rand::Rng as _;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClaimId {
    Fact1,
    Fact2,
    Fact3,
    Fact4,
    Claim1,
    Konig,
}

impl ClaimId {
    pub const ALL: [ClaimId; 6] = [
        ClaimId::Fact1,
        ClaimId::Fact2,
        ClaimId::Fact3,
        ClaimId::Fact4,
        ClaimId::Claim1,
        ClaimId::Konig,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ClaimId::Fact1 => "fact1",
            ClaimId::Fact2 => "fact2",
            ClaimId::Fact3 => "fact3",
            ClaimId::Fact4 => "fact4",
            ClaimId::Claim1 => "claim1",
            ClaimId::Konig => "konig",
        }
    }
}

impl fmt::Display for ClaimId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ClaimId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ClaimId::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown claim id {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClaimReport {
    pub claim: ClaimId,
    pub trials: usize,
    pub seed: u64,
    pub violations: usize,
    /// Trial index and description of the first violation.
    pub first_violation: Option<(usize, String)>,
}

impl ClaimReport {
    pub fn to_text(&self) -> String {
        let mut s = format!(
            "{}: {} trials, {} violations (seed {})\n",
            self.claim, self.trials, self.violations, self.seed
        );
        if let Some((i, msg)) = &self.first_violation {
            s.push_str(&format!("first violation at trial {i}: {msg}\n"));
        }
        s
    }

    pub fn to_structured(&self) -> String {
        let mut s = format!(
            "claim={}\ntrials={}\nviolations={}\nseed={}\n",
            self.claim, self.trials, self.violations, self.seed
        );
        if let Some((i, msg)) = &self.first_violation {
            s.push_str(&format!("first_violation_trial={i}\nfirst_violation={msg}\n"));
        }
        s
    }
}

/// A strong random tournament with `lo ≤ n ≤ hi`, retrying seeds until strong.
fn strong_instance(rng: &mut Rng, seed: u64, lo: usize, hi: usize) -> Result<Tournament> {
    let n = rng.gen_range(lo..=hi);
    for j in 0.. {
        let t = gen::random_tournament(n, derive_seed(seed, j))?;
        if t.is_strong() {
            return Ok(t);
        }
    }
    unreachable!("unbounded retry loop")
}

fn out_into(t: &Tournament, v: usize, c: &Cycle) -> usize {
    t.out_degree_into(v, &c.vertex_set(t.n()))
}

/// `short` is a valid cycle on `V(c)` minus exactly `removed`.
fn check_shrunk(t: &Tournament, c: &Cycle, short: &Cycle, removed: &[usize]) -> std::result::Result<(), String> {
    short.validate(t).map_err(|e| e.to_string())?;
    let mut all = short.vertex_set(t.n());
    for &r in removed {
        if short.contains(r) || !c.contains(r) || !all.insert(r) {
            return Err(format!("removed vertex {r} misplaced"));
        }
    }
    if all != c.vertex_set(t.n()) {
        return Err("shortened cycle leaves the original vertex set".into());
    }
    Ok(())
}

fn bound(what: &str, got: usize, max: usize) -> std::result::Result<(), String> {
    if got <= max {
        Ok(())
    } else {
        Err(format!("{what} = {got} exceeds {max}"))
    }
}

fn one_trial(claim: ClaimId, seed: u64, q: usize, index: usize) -> Result<std::result::Result<(), String>> {
    let mut rng = stream_rng(seed, Stream::Trials);
    let outcome = match claim {
        ClaimId::Fact1 | ClaimId::Fact4 => {
            let t = strong_instance(&mut rng, seed, 4, 12)?;
            let c = classic::hamiltonian_cycle(&t)?;
            let m = c.len();
            if claim == ClaimId::Fact1 {
                let (short, u) = surgery::fact1_shrink(&t, &c)?;
                check_shrunk(&t, &c, &short, &[u]).and_then(|_| bound("d+(u, C)", out_into(&t, u, &c), m - 3))
            } else {
                let xs: Vec<usize> = c.vertices().choose_multiple(&mut rng, 3).copied().collect();
                match surgery::fact4_low_vertex(&t, &c, [xs[0], xs[1], xs[2]]) {
                    Ok(x) if xs.contains(&x) => bound("d+(x, C)", out_into(&t, x, &c), m - 3),
                    Ok(x) => Err(format!("returned {x}, not one of {xs:?}")),
                    Err(e) => Err(e.to_string()),
                }
            }
        }
        ClaimId::Fact2 => {
            let t = strong_instance(&mut rng, seed, 7, 12)?;
            let c = classic::hamiltonian_cycle(&t)?;
            let (short, u) = surgery::fact2_shrink(&t, &c)?;
            check_shrunk(&t, &c, &short, &[u]).and_then(|_| bound("d+(u, C)", out_into(&t, u, &c), c.len() - 4))
        }
        ClaimId::Fact3 => {
            let t = strong_instance(&mut rng, seed, 7, 12)?;
            let c = classic::hamiltonian_cycle(&t)?;
            let (short, (x, y)) = surgery::fact3_double_shrink(&t, &c)?;
            check_shrunk(&t, &c, &short, &[x, y])
                .and_then(|_| if t.beats(x, y) { Ok(()) } else { Err(format!("{x} -> {y} is not an arc")) })
                .and_then(|_| bound("d+(y, C)", out_into(&t, y, &c), c.len() - 4))
        }
        ClaimId::Claim1 => {
            let which = [Threshold::NearFullMinusOne, Threshold::NearFull, Threshold::Square][index % 3];
            let (t, s1, s2) = gen::threshold_instance(q, which, seed)?;
            let r = check_threshold(&t, &s1, &s2, q, which)?;
            if r.holds {
                konig_holds(&t, &s1, &s2)
            } else {
                Err(format!(
                    "{which:?}: {} arcs but matching {} and {} dominating vertices",
                    r.arcs, r.matching, r.dominating
                ))
            }
        }
        ClaimId::Konig => {
            let n = rng.gen_range(2..=24);
            let t = gen::random_tournament(n, seed)?;
            let mut x = VertexSet::empty(n);
            let mut y = VertexSet::empty(n);
            for v in 0..n {
                match rng.gen_range(0..3) {
                    0 => x.insert(v),
                    1 => y.insert(v),
                    _ => false,
                };
            }
            konig_holds(&t, &x, &y)
        }
    };
    Ok(outcome)
}

/// Matching arcs are real and disjoint, the cover meets every arc, and the sizes agree.
fn konig_holds(t: &Tournament, x: &VertexSet, y: &VertexSet) -> std::result::Result<(), String> {
    let (m, cover) = max_matching_with_cover(t, x, y).map_err(|e| e.to_string())?;
    let mut used = VertexSet::empty(t.n());
    for &(a, b) in &m.pairs {
        if !x.contains(a) || !y.contains(b) || !t.beats(a, b) || !used.insert(a) || !used.insert(b) {
            return Err(format!("bad matching pair ({a}, {b})"));
        }
    }
    for a in x.iter() {
        for b in y.iter() {
            if t.beats(a, b) && !cover.members.contains(a) && !cover.members.contains(b) {
                return Err(format!("arc {a} -> {b} is uncovered"));
            }
        }
    }
    if m.len() != cover.len() {
        return Err(format!("matching {} but cover {}", m.len(), cover.len()));
    }
    Ok(())
}

/// Runs `trials` seeded instances of the property suite for `claim`.
/// `q` is used by `claim1` only.
pub fn claim_check(claim: ClaimId, trials: usize, seed: u64, q: usize) -> Result<ClaimReport> {
    if claim == ClaimId::Claim1 && q < 3 {
        return Err(Error::InvalidParameter(format!("cycle length q={q} is below 3")));
    }
    let mut report = ClaimReport {
        claim,
        trials,
        seed,
        violations: 0,
        first_violation: None,
    };
    for i in 0..trials {
        let outcome = match one_trial(claim, derive_seed(seed, i as u64), q, i) {
            Ok(o) => o,
            Err(e) => Err(e.to_string()),
        };
        if let Err(msg) = outcome {
            report.violations += 1;
            report.first_violation.get_or_insert((i, msg));
        }
    }
    Ok(report)
}
