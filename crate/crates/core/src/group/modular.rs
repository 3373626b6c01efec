//! Lattices between `eZ^n` and `Z^n`, handled with every entry reduced mod `e`.
//!
//! Kernels and cokernels of maps between finite abelian groups of exponent
//! dividing `e` only ever see such lattices, so working mod `e` keeps the
//! entries small where a plain integer Smith form would let them grow.

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut r0, mut r1, mut s0, mut s1, mut t0, mut t1) = (a, b, 1, 0, 0, 1);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    (r0, s0, t0)
}

/// Bezout coefficients for clearing `x` against the pivot `p`, preferring
/// plain subtraction so that the pivot line stays put when `p | x`.
fn pivot_gcd(p: i128, x: i128) -> (i128, i128, i128) {
    if x % p == 0 {
        (p, 1, 0)
    } else {
        ext_gcd(p, x)
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    ext_gcd(a as i128, b as i128).0 as u64
}

/// `(x * a + y * b) mod e` on vectors of residues.
fn combine(x: &[u64], a: i128, y: &[u64], b: i128, e: u64) -> Vec<u64> {
    let e = e as i128;
    let (a, b) = (a.rem_euclid(e), b.rem_euclid(e));
    x.iter()
        .zip(y)
        .map(|(&u, &v)| ((u as i128 * a + v as i128 * b) % e) as u64)
        .collect()
}

/// Generators (besides `eZ^k`) of `{x in Z^k : r . x = 0 mod t}` over all
/// constraints `(r, t)`. Every `t` must divide `e`.
pub(crate) fn congruence_lattice<'a>(
    k: usize,
    e: u64,
    constraints: impl IntoIterator<Item = (&'a [u64], u64)>,
) -> Vec<Vec<u64>> {
    let mut basis: Vec<Vec<u64>> = (0..k)
        .map(|j| (0..k).map(|i| u64::from(i == j) % e).collect())
        .collect();
    for (row, t) in constraints {
        debug_assert!(e.is_multiple_of(t));
        if t == 1 {
            continue;
        }
        let value = |b: &[u64]| {
            (row.iter()
                .zip(b)
                .map(|(&r, &x)| r as u128 * x as u128 % t as u128)
                .sum::<u128>()
                % t as u128) as u64
        };
        let mut pivot: Option<(usize, u64)> = None;
        for j in 0..k {
            let c = value(&basis[j]);
            if c == 0 {
                continue;
            }
            let Some((p, cp)) = pivot else {
                pivot = Some((j, c));
                continue;
            };
            let (g, a, b) = ext_gcd(cp as i128, c as i128);
            let merged = combine(&basis[p], a, &basis[j], b, e);
            basis[j] = combine(&basis[j], cp as i128 / g, &basis[p], -(c as i128 / g), e);
            basis[p] = merged;
            pivot = Some((p, g as u64));
        }
        if let Some((p, g)) = pivot {
            basis[p] = combine(&basis[p], (t / gcd(g, t)) as i128, &basis[p], 0, e);
        }
    }
    basis
}

/// Some `c` with `sum_j c_j columns[j] = rhs` modulo `moduli` coordinatewise,
/// reduced mod `lcm(moduli)`.
pub(crate) fn solve_congruences(
    columns: &[Vec<u64>],
    moduli: &[u64],
    rhs: &[u64],
) -> Option<Vec<u64>> {
    let e = moduli.iter().fold(1u64, |acc, &t| num_integer::lcm(acc, t));
    let k = columns.len();
    let rows: Vec<Vec<u64>> = moduli
        .iter()
        .enumerate()
        .map(|(i, &t)| {
            let mut r: Vec<u64> = columns.iter().map(|c| c[i] % t).collect();
            r.push((t - rhs[i] % t) % t);
            r
        })
        .collect();
    let lattice = congruence_lattice(
        k + 1,
        e,
        rows.iter()
            .map(|r| r.as_slice())
            .zip(moduli.iter().copied()),
    );
    // Start from e * e_k, whose last coordinate is e as an integer.
    let mut v = vec![0u64; k + 1];
    let mut last = e as i128;
    for w in &lattice {
        let c = w[k] as i128;
        if c == 0 {
            continue;
        }
        let (g, a, b) = pivot_gcd(last, c);
        v = combine(&v, a, w, b, e);
        last = g;
    }
    (last == 1).then(|| v[..k].to_vec())
}

/// `Z^m / (span(columns) + eZ^m)` in invariant-factor form.
pub(crate) struct ModCokernel {
    pub factors: Vec<u64>,
    /// Coordinate `t` of the class of `y` is `project[t] . y mod factors[t]`.
    pub project: Vec<Vec<u64>>,
    /// Lifts in `Z^m` of the generators.
    pub lifts: Vec<Vec<u64>>,
}

pub(crate) fn modular_cokernel(m: usize, e: u64, columns: &[Vec<u64>]) -> ModCokernel {
    let mut s: Vec<Vec<u64>> = (0..m)
        .map(|i| columns.iter().map(|c| c[i] % e).collect())
        .collect();
    let n = columns.len();
    let mut u: Vec<Vec<u64>> = (0..m)
        .map(|i| (0..m).map(|j| u64::from(i == j) % e).collect())
        .collect();
    // Columns of `u_inv` are stored as rows.
    let mut u_inv = u.clone();
    let mut diag = vec![0u64; m];

    // rows (k, i) <- [[a, b], [c, d]] (rows k, i), a unimodular 2x2 step.
    let row_step = |s: &mut Vec<Vec<u64>>,
                    u: &mut Vec<Vec<u64>>,
                    u_inv: &mut Vec<Vec<u64>>,
                    k: usize,
                    i: usize,
                    [a, b, c, d]: [i128; 4]| {
        let (sk, si) = (
            combine(&s[k], a, &s[i], b, e),
            combine(&s[k], c, &s[i], d, e),
        );
        (s[k], s[i]) = (sk, si);
        let (uk, ui) = (
            combine(&u[k], a, &u[i], b, e),
            combine(&u[k], c, &u[i], d, e),
        );
        (u[k], u[i]) = (uk, ui);
        // The inverse [[d, -b], [-c, a]] acts on the columns of u_inv.
        let (vk, vi) = (
            combine(&u_inv[k], d, &u_inv[i], -c, e),
            combine(&u_inv[k], -b, &u_inv[i], a, e),
        );
        (u_inv[k], u_inv[i]) = (vk, vi);
    };

    for k in 0..m.min(n) {
        let mut best: Option<(usize, usize, u64)> = None;
        for i in k..m {
            for j in k..n {
                if s[i][j] != 0 {
                    let g = gcd(s[i][j], e);
                    if best.is_none_or(|(_, _, h)| g < h) {
                        best = Some((i, j, g));
                    }
                }
            }
        }
        let Some((pi, pj, _)) = best else { break };
        s.swap(k, pi);
        u.swap(k, pi);
        u_inv.swap(k, pi);
        for row in s.iter_mut() {
            row.swap(k, pj);
        }
        loop {
            for i in k + 1..m {
                let (p, x) = (s[k][k] as i128, s[i][k] as i128);
                if x != 0 {
                    let (g, a, b) = pivot_gcd(p, x);
                    row_step(&mut s, &mut u, &mut u_inv, k, i, [a, b, -x / g, p / g]);
                }
            }
            let mut dirty = false;
            for j in k + 1..n {
                let (p, x) = (s[k][k] as i128, s[k][j] as i128);
                if x != 0 {
                    let (g, a, b) = pivot_gcd(p, x);
                    for row in s.iter_mut() {
                        let (ck, cj) = (row[k] as i128, row[j] as i128);
                        row[k] = ((ck * a + cj * b).rem_euclid(e as i128)) as u64;
                        row[j] = ((-ck * (x / g) + cj * (p / g)).rem_euclid(e as i128)) as u64;
                    }
                    dirty = true;
                }
            }
            if dirty && (k + 1..m).any(|i| s[i][k] != 0) {
                continue;
            }
            let g = gcd(s[k][k], e);
            match (k + 1..m).find(|&i| (k + 1..n).any(|j| !s[i][j].is_multiple_of(g))) {
                Some(i) => row_step(&mut s, &mut u, &mut u_inv, k, i, [1, 1, 0, 1]),
                None => break,
            }
        }
        diag[k] = s[k][k];
    }

    let mut out = ModCokernel {
        factors: vec![],
        project: vec![],
        lifts: vec![],
    };
    for t in 0..m {
        let d = gcd(diag[t], e);
        if d > 1 {
            out.factors.push(d);
            out.project.push(u[t].clone());
            out.lifts.push(u_inv[t].clone());
        }
    }
    out
}
