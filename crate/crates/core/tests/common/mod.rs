//! Brute-force helpers shared by the integration tests. Nothing here calls
//! the library's membership or Apéry machinery.

#![allow(dead_code)]

use repunit_core::{RepunitParams, RepunitSemigroup};

pub fn sg(b: i64, n: i64, a: i64) -> RepunitSemigroup {
    RepunitSemigroup::new(RepunitParams::new(b, n, a)).expect("valid parameters")
}

/// `member[t]` for `0 <= t <= limit`, by the recurrence
/// `t in S  <=>  t = 0 or t - g in S for some generator g`.
pub fn members_upto(generators: &[i64], limit: i64) -> Vec<bool> {
    let mut member = vec![false; limit as usize + 1];
    member[0] = true;
    for t in 1..=limit as usize {
        member[t] = generators
            .iter()
            .any(|&g| g as usize <= t && member[t - g as usize]);
    }
    member
}

/// Largest gap, found by scanning until `min(gens)` consecutive members.
pub fn frobenius_scan(generators: &[i64]) -> i64 {
    let m = *generators.iter().min().unwrap();
    let mut limit = 64 * m;
    loop {
        let member = members_upto(generators, limit);
        let mut run = 0;
        let mut last_gap = -1i64;
        for (t, &is) in member.iter().enumerate() {
            if is {
                run += 1;
                if run == m {
                    return last_gap;
                }
            } else {
                run = 0;
                last_gap = t as i64;
            }
        }
        limit *= 2;
    }
}

/// Gaps `x` with `x + g` in S for every generator `g`.
pub fn pseudo_frobenius_scan(generators: &[i64]) -> Vec<i64> {
    let f = frobenius_scan(generators);
    let max_g = *generators.iter().max().unwrap();
    let member = members_upto(generators, f + max_g);
    (1..=f)
        .filter(|&x| !member[x as usize])
        .filter(|&x| generators.iter().all(|&g| member[(x + g) as usize]))
        .collect()
}
