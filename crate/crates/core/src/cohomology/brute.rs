use std::collections::HashSet;
use std::sync::Arc;

use num_traits::ToPrimitive;
use rayon::prelude::*;

use super::{coboundary_between, Cochain, CochainSpace};
use crate::coefficients::DMModule;
use crate::error::{Error, Result};
use crate::group::FinAbGroup;

/// Largest cochain group the enumeration will visit.
pub const BRUTE_FORCE_BOUND: u64 = 1 << 20;

/// `H^n` by listing every cochain. Shares no linear algebra with the lattice
/// form path: cocycles and coboundaries are sets of element tuples, and the
/// group structure is read off from the number of classes killed by each `k`.
pub fn brute_force_cohomology(module: &Arc<DMModule>, n: usize) -> Result<FinAbGroup> {
    if n == 0 {
        return Err(Error::ShapeMismatch(
            "cohomology is computed in degrees n >= 1".into(),
        ));
    }
    let spaces = [
        CochainSpace::new(module, n - 1)?,
        CochainSpace::new(module, n)?,
        CochainSpace::new(module, n + 1)?,
    ];
    let sizes: Vec<u64> = spaces
        .iter()
        .map(|s| s.order().to_u64().filter(|&o| o <= BRUTE_FORCE_BOUND))
        .collect::<Option<_>>()
        .ok_or_else(|| {
            Error::TooLarge(format!(
                "cochain groups around degree {n} exceed {BRUTE_FORCE_BOUND}"
            ))
        })?;
    let [prev, here, next] = &spaces;

    let boundaries: HashSet<Vec<usize>> = (0..sizes[0])
        .into_par_iter()
        .map(|i| coboundary_between(prev, here, &nth(prev, i)).values)
        .collect();
    let zero_next = next.zero().values;
    let cocycles: Vec<Cochain> = (0..sizes[1])
        .into_par_iter()
        .map(|i| nth(here, i))
        .filter(|c| coboundary_between(here, next, c).values == zero_next)
        .collect();
    let (z, b) = (cocycles.len() as u64, boundaries.len() as u64);
    if z % b != 0 {
        return Err(Error::NotACocycle(
            "coboundaries do not partition the cocycles".into(),
        ));
    }
    let order = z / b;

    // |H[k]| for each prime power k dividing the order.
    let mut orders = Vec::new();
    for (p, e) in factorize(order) {
        let mut counts = vec![0u32];
        let mut k = 1u64;
        for _ in 0..e {
            k *= p;
            let killed = cocycles
                .iter()
                .filter(|c| boundaries.contains(&multiple(here, c, k).values))
                .count() as u64;
            counts.push(exponent(killed / b, p));
        }
        // Cyclic factors of order at least p^j number counts[j] - counts[j-1].
        let at_least: Vec<u32> = counts.windows(2).map(|w| w[1] - w[0]).collect();
        for j in 0..at_least.len() {
            let next = at_least.get(j + 1).copied().unwrap_or(0);
            for _ in 0..(at_least[j] - next) {
                orders.push(p.pow(j as u32 + 1));
            }
        }
    }
    Ok(FinAbGroup::from_orders(&orders))
}

fn nth(space: &CochainSpace, mut i: u64) -> Cochain {
    let groups: Vec<u64> = (0..space.tuples().len())
        .map(|t| space.module().bundle().group(space.product(t)).size() as u64)
        .collect();
    let mut values = vec![0; groups.len()];
    for (slot, &g) in values.iter_mut().zip(&groups).rev() {
        *slot = (i % g) as usize;
        i /= g;
    }
    Cochain {
        degree: space.degree(),
        values,
    }
}

fn multiple(space: &CochainSpace, c: &Cochain, k: u64) -> Cochain {
    let mut acc = space.zero();
    for _ in 0..k {
        acc = space.add(&acc, c);
    }
    acc
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn exponent(mut n: u64, p: u64) -> u32 {
    let mut e = 0;
    while n > 1 {
        debug_assert_eq!(n % p, 0);
        n /= p;
        e += 1;
    }
    e
}
