//! Fourier-Motzkin projection of the relaxed rows onto coordinate prefixes.
//!
//! Level `k` holds the rows of the projection onto positions `0..=k` whose
//! coefficient on position `k` is nonzero; rows that do not involve position
//! `k` live on an earlier level. Combinations are pruned with Chernikov's
//! support bound and the algebraic adjacency test (rank of the support rows
//! on the eliminated positions, computed modulo a prime). A wrong answer
//! from either test can only keep a redundant row or drop a valid one, and
//! dropping implied rows never excludes an integer point.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use super::relax::{magnitudes, IntRow, Tidy};

const P: u64 = (1 << 61) - 1;

fn mulmod(a: u64, b: u64) -> u64 {
    ((u128::from(a) * u128::from(b)) % u128::from(P)) as u64
}

fn powmod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a);
        }
        a = mulmod(a, a);
        e >>= 1;
    }
    r
}

fn reduce(v: i128) -> u64 {
    v.rem_euclid(i128::from(P)) as u64
}

pub(crate) fn rank_mod_p(mut rows: Vec<Vec<u64>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = powmod(rows[rank][col], P - 2);
        for r in rank + 1..rows.len() {
            if rows[r][col] == 0 {
                continue;
            }
            let f = mulmod(rows[r][col], inv);
            for j in col..cols {
                let t = mulmod(f, rows[rank][j]);
                rows[r][j] = (rows[r][j] + P - t) % P;
            }
        }
        rank += 1;
    }
    rank
}

pub(crate) struct Projection {
    pub levels: Vec<Vec<IntRow>>,
    /// Set when some derived row is violated on the whole box.
    pub empty: bool,
}

fn combine(p: &IntRow, n: &IntRow, k: usize) -> Option<IntRow> {
    let (cp, cn) = (p.c[k + 1], -n.c[k + 1]);
    let g = {
        let (mut a, mut b) = (cp, cn);
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a
    };
    let (a, b) = (cn / g, cp / g);
    let mut c = vec![0i128; k + 1];
    for (t, slot) in c.iter_mut().enumerate() {
        *slot = a.checked_mul(p.c[t])?.checked_add(b.checked_mul(n.c[t])?)?;
    }
    Some(IntRow { c, support: p.support | n.support })
}

/// Projects `base` (rows in position order, bit `i` of the support marking
/// base row `i`) level by level. `boxes` are per-position bounds.
pub(crate) fn project(base: &[IntRow], boxes: &[(i64, i64)]) -> Projection {
    let d = boxes.len();
    let mags = magnitudes(boxes);
    let mut levels = vec![Vec::new(); d];
    let mut current = Vec::new();
    for row in base {
        match row.clone().tidy(boxes, &mags) {
            Tidy::Keep(r) => current.push(r),
            Tidy::Redundant => {}
            Tidy::Infeasible => return Projection { levels, empty: true },
        }
    }
    let base_mod: Vec<Vec<u64>> = base.iter().map(|r| r.c.iter().map(|&v| reduce(v)).collect()).collect();
    for k in (0..d).rev() {
        let (here, rest): (Vec<IntRow>, Vec<IntRow>) = current.into_iter().partition(|r| r.c[k + 1] != 0);
        let mut next: Vec<IntRow> = rest.into_iter().map(|mut r| {
            r.c.truncate(k + 1);
            r
        })
        .collect();
        if k > 0 {
            let eliminated = (d - k) as u32;
            let mut seen: BTreeSet<u64> = next.iter().map(|r| r.support).collect();
            for p in here.iter().filter(|r| r.c[k + 1] > 0) {
                for n in here.iter().filter(|r| r.c[k + 1] < 0) {
                    let support = p.support | n.support;
                    let size = support.count_ones();
                    if size > eliminated + 1 || seen.contains(&support) {
                        continue;
                    }
                    let block: Vec<Vec<u64>> = (0..base.len())
                        .filter(|i| support >> i & 1 == 1)
                        .map(|i| base_mod[i][k + 1..].to_vec())
                        .collect();
                    if rank_mod_p(block) + 1 != size as usize {
                        continue;
                    }
                    let Some(row) = combine(p, n, k) else { continue };
                    match row.tidy(&boxes[..k], &mags[..k]) {
                        Tidy::Keep(r) => {
                            seen.insert(support);
                            next.push(r);
                        }
                        Tidy::Redundant => {}
                        Tidy::Infeasible => {
                            levels[k] = here;
                            return Projection { levels, empty: true };
                        }
                    }
                }
            }
        }
        levels[k] = here;
        current = next;
    }
    Projection { levels, empty: false }
}
