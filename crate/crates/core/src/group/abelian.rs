use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::intmat::{cokernel, IntMatrix};
use super::modular::{congruence_lattice, modular_cokernel};
use crate::error::{Error, Result};

/// `Z/d_1 + ... + Z/d_k` with `d_1 | d_2 | ... | d_k`, every `d_i >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FinAbGroup {
    factors: Vec<u64>,
}

pub type AbElement = Vec<u64>;

impl FinAbGroup {
    pub fn new(factors: Vec<u64>) -> Result<Self> {
        if factors.iter().any(|&d| d < 2) {
            return Err(Error::ShapeMismatch(format!(
                "invariant factors must be at least 2, got {factors:?}"
            )));
        }
        if factors.windows(2).any(|w| w[1] % w[0] != 0) {
            return Err(Error::ShapeMismatch(format!(
                "invariant factors {factors:?} do not form a divisibility chain"
            )));
        }
        Ok(Self { factors })
    }

    pub fn trivial() -> Self {
        Self { factors: vec![] }
    }

    pub fn cyclic(n: u64) -> Self {
        Self::from_orders(&[n])
    }

    /// Canonical form of `Z/n_1 + ... + Z/n_k` for arbitrary positive orders.
    pub fn from_orders(orders: &[u64]) -> Self {
        let factors = orders_to_factors(orders);
        Self { factors }
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> BigInt {
        self.factors.iter().map(|&d| BigInt::from(d)).product()
    }

    pub fn order_u64(&self) -> Option<u64> {
        self.factors
            .iter()
            .try_fold(1u64, |acc, &d| acc.checked_mul(d))
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn zero(&self) -> AbElement {
        vec![0; self.rank()]
    }

    pub fn generator(&self, i: usize) -> AbElement {
        let mut x = self.zero();
        x[i] = 1;
        x
    }

    pub fn contains(&self, x: &[u64]) -> bool {
        x.len() == self.rank() && x.iter().zip(&self.factors).all(|(v, d)| v < d)
    }

    pub fn add(&self, x: &[u64], y: &[u64]) -> AbElement {
        x.iter()
            .zip(y)
            .zip(&self.factors)
            .map(|((a, b), d)| (a + b) % d)
            .collect()
    }

    pub fn neg(&self, x: &[u64]) -> AbElement {
        x.iter()
            .zip(&self.factors)
            .map(|(a, d)| (d - a) % d)
            .collect()
    }

    pub fn reduce(&self, x: &[BigInt]) -> AbElement {
        x.iter()
            .zip(&self.factors)
            .map(|(v, &d)| {
                v.mod_floor(&BigInt::from(d))
                    .to_u64()
                    .expect("reduced value fits")
            })
            .collect()
    }

    /// Mixed-radix index of an element, first coordinate most significant.
    pub fn index_of(&self, x: &[u64]) -> usize {
        x.iter()
            .zip(&self.factors)
            .fold(0usize, |acc, (&v, &d)| acc * d as usize + v as usize)
    }

    pub fn element_at(&self, mut i: usize) -> AbElement {
        let mut x = self.zero();
        for (slot, &d) in x.iter_mut().zip(&self.factors).rev() {
            *slot = (i % d as usize) as u64;
            i /= d as usize;
        }
        x
    }

    /// All elements in index order. Only sensible for small groups.
    pub fn elements(&self) -> impl Iterator<Item = AbElement> + '_ {
        let n = self.order_u64().expect("group too large to enumerate") as usize;
        (0..n).map(|i| self.element_at(i))
    }

    /// Largest invariant factor, 1 for the trivial group.
    pub fn exponent(&self) -> u64 {
        self.factors.last().copied().unwrap_or(1)
    }

    /// The subgroup generated by `gens` (integer lifts of elements), in
    /// canonical form together with generators realizing the invariant factors.
    pub fn subgroup(&self, gens: &[Vec<BigInt>]) -> (FinAbGroup, Vec<AbElement>) {
        let gens: Vec<AbElement> = gens.iter().map(|g| self.reduce(g)).collect();
        self.subgroup_of(&gens)
    }

    pub(crate) fn subgroup_of(&self, gens: &[AbElement]) -> (FinAbGroup, Vec<AbElement>) {
        if gens.is_empty() || self.is_trivial() {
            return (FinAbGroup::trivial(), vec![]);
        }
        let e = self.exponent();
        let rows: Vec<Vec<u64>> = (0..self.rank())
            .map(|i| gens.iter().map(|g| g[i]).collect())
            .collect();
        let relations = congruence_lattice(
            gens.len(),
            e,
            rows.iter()
                .map(|r| r.as_slice())
                .zip(self.factors.iter().copied()),
        );
        let c = modular_cokernel(gens.len(), e, &relations);
        let new_gens = c
            .lifts
            .iter()
            .map(|l| {
                (0..self.rank())
                    .map(|i| {
                        let d = self.factors[i] as u128;
                        (rows[i]
                            .iter()
                            .zip(l)
                            .map(|(&a, &b)| a as u128 * b as u128 % d)
                            .sum::<u128>()
                            % d) as u64
                    })
                    .collect()
            })
            .collect();
        (
            FinAbGroup::new(c.factors).expect("cokernel is canonical"),
            new_gens,
        )
    }
}

fn orders_to_factors(orders: &[u64]) -> Vec<u64> {
    let diag: Vec<BigInt> = orders.iter().map(|&d| BigInt::from(d)).collect();
    if diag.is_empty() {
        return vec![];
    }
    cokernel(&IntMatrix::diagonal(&diag))
        .factors
        .iter()
        .map(|d| d.to_u64().expect("factor fits in u64"))
        .collect()
}

/// A homomorphism between invariant-factor groups; column `j` of `matrix`
/// is the image of the `j`-th source generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbHom {
    pub source: FinAbGroup,
    pub target: FinAbGroup,
    matrix: Vec<Vec<u64>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbKernel {
    pub group: FinAbGroup,
    /// Source elements generating the kernel, one per invariant factor.
    pub generators: Vec<AbElement>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbCokernel {
    pub group: FinAbGroup,
    project: Vec<Vec<u64>>,
    lifts: Vec<AbElement>,
}

impl AbCokernel {
    pub fn project(&self, y: &[u64]) -> AbElement {
        self.project
            .iter()
            .zip(self.group.factors())
            .map(|(row, &d)| {
                (row.iter()
                    .zip(y)
                    .map(|(&a, &b)| a as u128 * b as u128 % d as u128)
                    .sum::<u128>()
                    % d as u128) as u64
            })
            .collect()
    }

    /// Target elements mapping onto the cokernel generators.
    pub fn lifts(&self) -> &[AbElement] {
        &self.lifts
    }
}

impl AbHom {
    pub fn new(source: FinAbGroup, target: FinAbGroup, matrix: Vec<Vec<i64>>) -> Result<Self> {
        if matrix.len() != target.rank() || matrix.iter().any(|r| r.len() != source.rank()) {
            return Err(Error::ShapeMismatch(format!(
                "matrix must be {}x{}",
                target.rank(),
                source.rank()
            )));
        }
        let reduced: Vec<Vec<u64>> = matrix
            .iter()
            .zip(target.factors())
            .map(|(row, &t)| row.iter().map(|&v| v.rem_euclid(t as i64) as u64).collect())
            .collect();
        for (j, &s) in source.factors().iter().enumerate() {
            for (i, &t) in target.factors().iter().enumerate() {
                if !(reduced[i][j] as u128 * s as u128).is_multiple_of(t as u128) {
                    return Err(Error::ShapeMismatch(format!(
                        "generator {j} of order {s} cannot map to {} in Z/{t}",
                        reduced[i][j]
                    )));
                }
            }
        }
        Ok(Self {
            source,
            target,
            matrix: reduced,
        })
    }

    /// Builds the matrix from images of generators.
    pub fn from_images(
        source: FinAbGroup,
        target: FinAbGroup,
        images: &[AbElement],
    ) -> Result<Self> {
        let m = (0..target.rank())
            .map(|i| images.iter().map(|x| x[i] as i64).collect())
            .collect();
        Self::new(source, target, m)
    }

    pub fn identity(g: FinAbGroup) -> Self {
        let n = g.rank();
        let m = (0..n)
            .map(|i| (0..n).map(|j| u64::from(i == j)).collect())
            .collect();
        Self {
            source: g.clone(),
            target: g,
            matrix: m,
        }
    }

    pub fn zero(source: FinAbGroup, target: FinAbGroup) -> Self {
        let m = vec![vec![0; source.rank()]; target.rank()];
        Self {
            source,
            target,
            matrix: m,
        }
    }

    pub fn matrix(&self) -> &[Vec<u64>] {
        &self.matrix
    }

    pub fn int_matrix(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.target.rank(), self.source.rank());
        for (i, row) in self.matrix.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, BigInt::from(v));
            }
        }
        m
    }

    pub fn apply(&self, x: &[u64]) -> AbElement {
        self.matrix
            .iter()
            .zip(self.target.factors())
            .map(|(row, &t)| {
                let s: u128 = row
                    .iter()
                    .zip(x)
                    .map(|(&a, &b)| a as u128 * b as u128 % t as u128)
                    .sum();
                (s % t as u128) as u64
            })
            .collect()
    }

    /// `self . inner`.
    pub fn compose(&self, inner: &AbHom) -> Result<AbHom> {
        if inner.target != self.source {
            return Err(Error::NotComposable(
                "abelian homomorphisms do not meet".into(),
            ));
        }
        let images: Vec<AbElement> = (0..inner.source.rank())
            .map(|j| self.apply(&inner.apply(&inner.source.generator(j))))
            .collect();
        AbHom::from_images(inner.source.clone(), self.target.clone(), &images)
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.iter().flatten().all(|&v| v == 0)
    }

    pub fn kernel(&self) -> AbKernel {
        let e = self.source.exponent().lcm(&self.target.exponent());
        let lattice = congruence_lattice(
            self.source.rank(),
            e,
            self.matrix
                .iter()
                .map(|r| r.as_slice())
                .zip(self.target.factors().iter().copied()),
        );
        let lattice: Vec<AbElement> = lattice
            .iter()
            .map(|c| {
                c.iter()
                    .zip(self.source.factors())
                    .map(|(&x, &d)| x % d)
                    .collect()
            })
            .collect();
        let (group, generators) = self.source.subgroup_of(&lattice);
        AbKernel { group, generators }
    }

    pub fn image_order(&self) -> BigInt {
        let gens: Vec<AbElement> = (0..self.source.rank())
            .map(|j| self.matrix.iter().map(|r| r[j]).collect())
            .collect();
        self.target.subgroup_of(&gens).0.order()
    }

    pub fn cokernel(&self) -> AbCokernel {
        let m = self.target.rank();
        let mut columns: Vec<Vec<u64>> = (0..self.source.rank())
            .map(|j| self.matrix.iter().map(|r| r[j]).collect())
            .collect();
        columns.extend(self.target.factors().iter().enumerate().map(|(i, &d)| {
            let mut c = vec![0; m];
            c[i] = d;
            c
        }));
        let c = modular_cokernel(m, self.target.exponent(), &columns);
        let group = FinAbGroup::new(c.factors).expect("cokernel is canonical");
        let lifts = c
            .lifts
            .iter()
            .map(|l| {
                l.iter()
                    .zip(self.target.factors())
                    .map(|(&x, &d)| x % d)
                    .collect()
            })
            .collect();
        AbCokernel {
            group,
            project: c.project,
            lifts,
        }
    }
}

/// Exhaustive kernel, kept as an oracle for the lattice computation.
pub fn brute_kernel(f: &AbHom) -> Vec<AbElement> {
    let zero = f.target.zero();
    f.source.elements().filter(|x| f.apply(x) == zero).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    fn z(n: u64) -> FinAbGroup {
        FinAbGroup::cyclic(n)
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(FinAbGroup::from_orders(&[2, 3]).factors(), &[6]);
        assert_eq!(FinAbGroup::from_orders(&[4, 2, 1]).factors(), &[2, 4]);
        assert!(FinAbGroup::from_orders(&[1]).is_trivial());
        assert!(FinAbGroup::new(vec![3, 2]).is_err());
    }

    #[test]
    fn kernel_examples() {
        let zero = AbHom::zero(z(2), z(2));
        assert_eq!(zero.kernel().group, z(2));
        assert!(AbHom::identity(z(2)).kernel().group.is_trivial());
        let twice = AbHom::new(z(4), z(4), vec![vec![2]]).unwrap();
        let k = twice.kernel();
        assert_eq!(k.group, z(2));
        assert_eq!(k.generators, vec![vec![2]]);
        assert_eq!(brute_kernel(&twice), vec![vec![0], vec![2]]);
    }

    #[test]
    fn cokernel_examples() {
        let zero = AbHom::zero(z(2), z(2));
        let c = zero.cokernel();
        assert_eq!(c.group, z(2));
        assert_eq!(c.project(&[1]), vec![1]);
        assert!(AbHom::identity(z(2)).cokernel().group.is_trivial());
        let twice = AbHom::new(z(4), z(4), vec![vec![2]]).unwrap();
        let c = twice.cokernel();
        assert_eq!(c.group, z(2));
        assert_eq!(c.project(&[2]), vec![0]);
        assert_eq!(c.project(&[1]), vec![1]);
    }

    #[test]
    fn ill_defined_matrix_rejected() {
        assert!(AbHom::new(z(2), z(4), vec![vec![1]]).is_err());
        assert!(AbHom::new(z(2), z(4), vec![vec![2]]).is_ok());
    }

    fn arb_group() -> impl Strategy<Value = FinAbGroup> {
        prop::collection::vec(1u64..7, 0..3).prop_map(|o| FinAbGroup::from_orders(&o))
    }

    fn arb_hom() -> impl Strategy<Value = AbHom> {
        (arb_group(), arb_group(), prop::collection::vec(0i64..12, 9)).prop_map(|(s, t, seed)| {
            // Scale each entry so the map is well defined.
            let m = (0..t.rank())
                .map(|i| {
                    (0..s.rank())
                        .map(|j| {
                            let (si, ti) = (s.factors()[j] as i64, t.factors()[i] as i64);
                            let step = ti / num_integer::gcd(si, ti);
                            seed[i * 3 + j] * step
                        })
                        .collect()
                })
                .collect();
            AbHom::new(s, t, m).unwrap()
        })
    }

    proptest! {
        #[test]
        fn kernel_times_image_is_source(f in arb_hom()) {
            let k = f.kernel();
            prop_assert_eq!(k.group.order() * f.image_order(), f.source.order());
            let brute: BTreeSet<_> = brute_kernel(&f).into_iter().collect();
            prop_assert_eq!(BigInt::from(brute.len()), k.group.order());
            for g in &k.generators {
                prop_assert!(brute.contains(g));
            }
            // The generators span the whole kernel.
            let mut span = BTreeSet::from([f.source.zero()]);
            loop {
                let next: BTreeSet<_> = span
                    .iter()
                    .flat_map(|x| k.generators.iter().map(move |g| (x, g)))
                    .map(|(x, g)| f.source.add(x, g))
                    .chain(span.iter().cloned())
                    .collect();
                if next.len() == span.len() { break; }
                span = next;
            }
            prop_assert_eq!(span, brute);
        }

        #[test]
        fn cokernel_projection_is_exact(f in arb_hom()) {
            let c = f.cokernel();
            prop_assert_eq!(c.group.order() * f.image_order(), f.target.order());
            for j in 0..f.source.rank() {
                let img = f.apply(&f.source.generator(j));
                prop_assert_eq!(c.project(&img), c.group.zero());
            }
            for (t, l) in c.lifts().iter().enumerate() {
                prop_assert_eq!(c.project(l), c.group.generator(t));
            }
        }
    }
}
