use std::sync::Arc;

use num_integer::Integer;
use num_traits::ToPrimitive;

use super::{coboundary_matrix_with_guard, Cochain, CochainMap, CochainSpace, Guard};
use crate::coefficients::DMModule;
use crate::error::{Error, Result};
use crate::group::modular::{congruence_lattice, modular_cokernel, solve_congruences};
use crate::group::{AbElement, FinAbGroup};

/// `H^n` with effective maps between classes and cocycles.
///
/// Classes are computed inside `Q = C^n / B^n`, presented in invariant-factor
/// form: `H^n` is the kernel of the map `Q -> C^{n+1}` induced by `d`, and its
/// generators are recorded in `Q`-coordinates.
#[derive(Clone, Debug)]
pub struct CohomologyGroup {
    degree: usize,
    group: FinAbGroup,
    prev: CochainSpace,
    differential: CochainMap,
    /// Columns of `d^{n-1}` in tuple coordinates.
    boundaries: Vec<Vec<u64>>,
    quotient: FinAbGroup,
    /// Row `t` gives `Q`-coordinate `t` of a cochain.
    project: Vec<Vec<u64>>,
    /// Cochain coordinates lifting the generators of `Q`.
    lifts: Vec<Vec<u64>>,
    /// Generators of `H^n` in `Q`-coordinates.
    generators: Vec<AbElement>,
}

pub fn cohomology(module: &Arc<DMModule>, n: usize) -> Result<CohomologyGroup> {
    cohomology_with_guard(module, n, &Guard::default())
}

pub fn cohomology_with_guard(
    module: &Arc<DMModule>,
    n: usize,
    guard: &Guard,
) -> Result<CohomologyGroup> {
    if n == 0 {
        return Err(Error::ShapeMismatch(
            "cohomology is computed in degrees n >= 1".into(),
        ));
    }
    let incoming = coboundary_matrix_with_guard(module, n - 1, guard)?;
    let outgoing = coboundary_matrix_with_guard(module, n, guard)?;
    let space = &outgoing.source;
    let m = space.dim();

    let boundaries = columns(&incoming);
    let mut relations = boundaries.clone();
    relations.extend(space.moduli().iter().enumerate().map(|(i, &d)| {
        let mut c = vec![0; m];
        c[i] = d;
        c
    }));
    let q = modular_cokernel(m, lcm(space.moduli()), &relations);
    let quotient = FinAbGroup::new(q.factors)?;

    // The map Q -> C^{n+1} on generators, and its kernel.
    let rows = rows(&outgoing);
    let target = outgoing.target.moduli();
    let images: Vec<Vec<u64>> = q.lifts.iter().map(|l| apply(&rows, target, l)).collect();
    let constraints: Vec<Vec<u64>> = (0..target.len())
        .map(|i| images.iter().map(|im| im[i]).collect())
        .collect();
    let e = lcm(target).lcm(&quotient.exponent());
    let kernel: Vec<AbElement> = congruence_lattice(
        quotient.rank(),
        e,
        constraints
            .iter()
            .map(|r| r.as_slice())
            .zip(target.iter().copied()),
    )
    .iter()
    .map(|c| {
        c.iter()
            .zip(quotient.factors())
            .map(|(&x, &d)| x % d)
            .collect()
    })
    .collect();
    let (group, generators) = quotient.subgroup_of(&kernel);

    Ok(CohomologyGroup {
        degree: n,
        group,
        prev: incoming.source.clone(),
        differential: outgoing,
        boundaries,
        quotient,
        project: q.project,
        lifts: q.lifts,
        generators,
    })
}

fn lcm(moduli: &[u64]) -> u64 {
    moduli.iter().fold(1, |acc, d| acc.lcm(d))
}

fn rows(map: &CochainMap) -> Vec<Vec<u64>> {
    (0..map.matrix.rows())
        .map(|i| {
            map.matrix
                .row(i)
                .iter()
                .map(|v| v.to_u64().expect("entries are reduced"))
                .collect()
        })
        .collect()
}

fn columns(map: &CochainMap) -> Vec<Vec<u64>> {
    (0..map.matrix.cols())
        .map(|j| {
            map.matrix
                .column(j)
                .iter()
                .map(|v| v.to_u64().expect("entries are reduced"))
                .collect()
        })
        .collect()
}

/// `rows . x`, coordinate `i` reduced mod `moduli[i]`.
fn apply(rows: &[Vec<u64>], moduli: &[u64], x: &[u64]) -> Vec<u64> {
    rows.iter()
        .zip(moduli)
        .map(|(r, &d)| {
            let d = d as u128;
            (r.iter()
                .zip(x)
                .map(|(&a, &b)| a as u128 * (b as u128 % d) % d)
                .sum::<u128>()
                % d) as u64
        })
        .collect()
}

impl CohomologyGroup {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn factors(&self) -> &[u64] {
        self.group.factors()
    }

    pub fn space(&self) -> &CochainSpace {
        &self.differential.source
    }

    pub fn differential(&self) -> &CochainMap {
        &self.differential
    }

    pub fn is_cocycle(&self, z: &Cochain) -> Result<bool> {
        self.space().check(z)?;
        let image = self.differential.apply(&self.space().coords(z));
        Ok(image.iter().all(|&v| v == 0))
    }

    pub fn class_of(&self, z: &Cochain) -> Result<AbElement> {
        if !self.is_cocycle(z)? {
            return Err(Error::NotACocycle(format!(
                "{}-cochain has nonzero coboundary",
                self.degree
            )));
        }
        if self.group.is_trivial() {
            return Ok(vec![]);
        }
        let q = apply(
            &self.project,
            self.quotient.factors(),
            &self.space().coords(z),
        );
        let c = solve_congruences(&self.generators, self.quotient.factors(), &q)
            .expect("cocycles lie in the kernel");
        Ok(c.iter()
            .zip(self.group.factors())
            .map(|(&x, &d)| x % d)
            .collect())
    }

    pub fn representative_of(&self, class: &[u64]) -> Result<Cochain> {
        if !self.group.contains(class) {
            return Err(Error::ShapeMismatch(format!(
                "{class:?} is not an element of {:?}",
                self.group.factors()
            )));
        }
        let q: Vec<u64> = self
            .quotient
            .factors()
            .iter()
            .enumerate()
            .map(|(s, &d)| {
                let d = d as u128;
                (class
                    .iter()
                    .zip(&self.generators)
                    .map(|(&c, g)| c as u128 * g[s] as u128 % d)
                    .sum::<u128>()
                    % d) as u64
            })
            .collect();
        let moduli = self.space().moduli();
        let z: Vec<u64> = moduli
            .iter()
            .enumerate()
            .map(|(i, &d)| {
                let d = d as u128;
                (q.iter()
                    .zip(&self.lifts)
                    .map(|(&c, l)| c as u128 * (l[i] as u128 % d) % d)
                    .sum::<u128>()
                    % d) as u64
            })
            .collect();
        Ok(self.space().cochain(&z))
    }

    /// A cochain `phi` with `d phi = z`, or `None` when `z` is not a coboundary.
    /// The witness is a deterministic function of `z`.
    pub fn is_coboundary(&self, z: &Cochain) -> Result<Option<Cochain>> {
        self.space().check(z)?;
        let coords = self.space().coords(z);
        let Some(w) = solve_congruences(&self.boundaries, self.space().moduli(), &coords) else {
            return Ok(None);
        };
        let phi: Vec<u64> = w
            .iter()
            .zip(self.prev.moduli())
            .map(|(&x, &d)| x % d)
            .collect();
        Ok(Some(self.prev.cochain(&phi)))
    }

    pub fn previous_space(&self) -> &CochainSpace {
        &self.prev
    }
}
