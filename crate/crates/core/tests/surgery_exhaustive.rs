use cyclemill::classic::hamiltonian_cycle;
use cyclemill::surgery::{fact2_shrink, fact3_double_shrink};
use cyclemill::Tournament;

/// Every strong tournament on 7 labelled vertices, shrunk from its Hamiltonian cycle.
#[test]
fn shrinks_hold_on_every_strong_seven_vertex_tournament() {
    let pairs = 21;
    let mut strong = 0u32;
    for pattern in 0u32..1 << pairs {
        let mut bit = pairs;
        let t = Tournament::from_fn(7, |_, _| {
            bit -= 1;
            pattern >> bit & 1 == 1
        })
        .unwrap();
        if !t.is_strong() {
            continue;
        }
        strong += 1;
        let c = hamiltonian_cycle(&t).unwrap();
        let on = c.vertex_set(7);

        let (short, u) = fact2_shrink(&t, &c).unwrap();
        short.validate(&t).unwrap();
        assert_eq!(short.len(), 6);
        assert!(!short.contains(u) && on.contains(u));
        assert!(t.out_degree_into(u, &on) <= 3, "pattern {pattern}");

        let (short, (x, y)) = fact3_double_shrink(&t, &c).unwrap();
        short.validate(&t).unwrap();
        assert_eq!(short.len(), 5);
        assert!(t.beats(x, y) && !short.contains(x) && !short.contains(y));
        assert!(t.out_degree_into(y, &on) <= 3, "pattern {pattern}");
    }
    assert_eq!(u64::from(strong), labelled_strong(7));
}

/// `S(n) = 2^C(n,2) − Σ_{k<n} C(n,k) S(k) 2^C(n−k,2)`: split off the dominating strong component.
fn labelled_strong(n: u64) -> u64 {
    let all = |m: u64| 1u64 << (m * m.saturating_sub(1) / 2);
    let binom = |n: u64, k: u64| (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1));
    let mut s = vec![0u64; n as usize + 1];
    for m in 1..=n {
        s[m as usize] = all(m) - (1..m).map(|k| binom(m, k) * s[k as usize] * all(m - k)).sum::<u64>();
    }
    s[n as usize]
}
