//! Normalized cochains of a monoid with coefficients in a strict module.
//!
//! Values are stored additively: a cochain of degree `n` assigns to every
//! tuple `(a_1, ..., a_n)` of non-unit elements an element of `A_{a_1...a_n}`.
//! Tuples containing the unit are not stored; their value is zero. The
//! coboundary is
//!
//! ```text
//! (dλ)(a_1..a_{n+1}) = (a_1)_* λ(a_2..a_{n+1})
//!                    + sum_i (-1)^i λ(.., a_i a_{i+1}, ..)
//!                    + (-1)^{n+1} (a_{n+1})^* λ(a_1..a_n)
//! ```

mod bar;
mod brute;
mod homology;

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use crate::coefficients::DMModule;
use crate::error::{Error, Result};
use crate::group::{AbHom, FinAbGroup, GroupHom, IntMatrix};
use crate::monoid::MonoidHom;

pub use bar::{categorical_reduction, reduce_cochain, BarComplex};
pub use brute::{brute_force_cohomology, BRUTE_FORCE_BOUND};
pub use homology::{cohomology, cohomology_with_guard, CohomologyGroup};

/// Size limits for cochain spaces.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Guard {
    /// Largest source degree of a coboundary; cochains exist one degree higher.
    pub max_degree: usize,
    pub max_tuples: usize,
}

impl Default for Guard {
    fn default() -> Self {
        Self {
            max_degree: 4,
            max_tuples: 1 << 16,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cochain {
    pub degree: usize,
    /// One group element per unit-free tuple, in tuple order.
    pub values: Vec<usize>,
}

/// The cochain group `C^n` with its tuple index and coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainSpace {
    module: Arc<DMModule>,
    degree: usize,
    nonunits: Vec<usize>,
    /// Position of each element among the non-units.
    position: Vec<Option<usize>>,
    tuples: Vec<Vec<usize>>,
    products: Vec<usize>,
    offsets: Vec<usize>,
    moduli: Vec<u64>,
}

impl CochainSpace {
    pub fn new(module: &Arc<DMModule>, degree: usize) -> Result<Self> {
        Self::with_guard(module, degree, &Guard::default())
    }

    pub fn with_guard(module: &Arc<DMModule>, degree: usize, guard: &Guard) -> Result<Self> {
        if degree > guard.max_degree + 1 {
            return Err(Error::DegreeTooLarge {
                degree,
                limit: guard.max_degree + 1,
            });
        }
        let m = module.base();
        let nonunits: Vec<usize> = m.elements().filter(|&a| a != m.unit()).collect();
        let k = nonunits.len();
        let count = (0..degree).try_fold(1usize, |acc, _| acc.checked_mul(k));
        match count {
            Some(c) if c <= guard.max_tuples => {}
            _ => {
                return Err(Error::TooLarge(format!(
                    "{k}^{degree} tuples exceed the limit of {}",
                    guard.max_tuples
                )))
            }
        }
        let mut position = vec![None; m.size()];
        for (i, &a) in nonunits.iter().enumerate() {
            position[a] = Some(i);
        }
        let count = count.unwrap_or(0);
        let tuples: Vec<Vec<usize>> = (0..count)
            .map(|mut i| {
                let mut t = vec![0; degree];
                for slot in t.iter_mut().rev() {
                    *slot = nonunits[i % k];
                    i /= k;
                }
                t
            })
            .collect();
        let products: Vec<usize> = tuples.iter().map(|t| m.mul_all(t)).collect();
        let mut offsets = Vec::with_capacity(tuples.len() + 1);
        let mut moduli = Vec::new();
        offsets.push(0);
        for &p in &products {
            moduli.extend_from_slice(module.structure(p).group.factors());
            offsets.push(moduli.len());
        }
        Ok(Self {
            module: module.clone(),
            degree,
            nonunits,
            position,
            tuples,
            products,
            offsets,
            moduli,
        })
    }

    pub fn module(&self) -> &Arc<DMModule> {
        &self.module
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn tuples(&self) -> &[Vec<usize>] {
        &self.tuples
    }

    /// `a_1 ... a_n` for the tuple at `index`.
    pub fn product(&self, index: usize) -> usize {
        self.products[index]
    }

    /// `None` when the tuple contains the unit.
    pub fn tuple_index(&self, tuple: &[usize]) -> Option<usize> {
        debug_assert_eq!(tuple.len(), self.degree);
        let k = self.nonunits.len();
        tuple
            .iter()
            .try_fold(0usize, |acc, &a| Some(acc * k + self.position[a]?))
    }

    /// Coordinates belonging to the tuple at `index`.
    pub fn block(&self, index: usize) -> std::ops::Range<usize> {
        self.offsets[index]..self.offsets[index + 1]
    }

    /// Orders of the coordinates, tuple by tuple.
    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn dim(&self) -> usize {
        self.moduli.len()
    }

    /// The group in invariant-factor form.
    pub fn group(&self) -> FinAbGroup {
        FinAbGroup::from_orders(&self.moduli)
    }

    pub fn order(&self) -> BigInt {
        self.moduli.iter().map(|&d| BigInt::from(d)).product()
    }

    pub fn zero(&self) -> Cochain {
        Cochain {
            degree: self.degree,
            values: self
                .products
                .iter()
                .map(|&p| self.module.bundle().group(p).unit())
                .collect(),
        }
    }

    pub fn check(&self, c: &Cochain) -> Result<()> {
        if c.degree != self.degree || c.values.len() != self.tuples.len() {
            return Err(Error::ShapeMismatch(format!(
                "expected a {}-cochain with {} values",
                self.degree,
                self.tuples.len()
            )));
        }
        for (i, (&v, &p)) in c.values.iter().zip(&self.products).enumerate() {
            let size = self.module.bundle().group(p).size();
            if v >= size {
                return Err(Error::OutOfRange {
                    location: format!("cochain value at tuple {:?}", self.tuples[i]),
                    value: v,
                    size,
                });
            }
        }
        Ok(())
    }

    pub fn coords(&self, c: &Cochain) -> Vec<u64> {
        c.values
            .iter()
            .zip(&self.products)
            .flat_map(|(&v, &p)| self.module.structure(p).coords(v).iter().copied())
            .collect()
    }

    pub fn cochain(&self, coords: &[u64]) -> Cochain {
        let values = (0..self.tuples.len())
            .map(|i| {
                let s = self.module.structure(self.products[i]);
                let local: Vec<u64> = coords[self.block(i)]
                    .iter()
                    .zip(s.group.factors())
                    .map(|(&x, &d)| x % d)
                    .collect();
                s.element(&local)
            })
            .collect();
        Cochain {
            degree: self.degree,
            values,
        }
    }

    pub fn reduce(&self, v: &[BigInt]) -> Vec<u64> {
        v.iter()
            .zip(&self.moduli)
            .map(|(x, &d)| x.mod_floor(&BigInt::from(d)).to_u64().expect("reduced"))
            .collect()
    }

    pub fn add(&self, x: &Cochain, y: &Cochain) -> Cochain {
        let values = x
            .values
            .iter()
            .zip(&y.values)
            .zip(&self.products)
            .map(|((&u, &v), &p)| self.module.bundle().group(p).mul(u, v))
            .collect();
        Cochain {
            degree: self.degree,
            values,
        }
    }

    pub fn neg(&self, x: &Cochain) -> Cochain {
        let values = x
            .values
            .iter()
            .zip(&self.products)
            .map(|(&u, &p)| self.module.bundle().group(p).inv(u))
            .collect();
        Cochain {
            degree: self.degree,
            values,
        }
    }

    /// Value at an arbitrary tuple, zero when it contains the unit.
    pub fn value_at(&self, c: &Cochain, tuple: &[usize]) -> usize {
        match self.tuple_index(tuple) {
            Some(i) => c.values[i],
            None => {
                let p = self.module.base().mul_all(tuple);
                self.module.bundle().group(p).unit()
            }
        }
    }
}

pub fn cochain_group(module: &Arc<DMModule>, n: usize) -> Result<CochainSpace> {
    CochainSpace::new(module, n)
}

/// The alternating formula evaluated at any tuple of length `n + 1`.
fn coboundary_at(src: &CochainSpace, lam: &Cochain, t: &[usize]) -> usize {
    let module = &src.module;
    let m = module.base();
    let bundle = module.bundle();
    let n = t.len() - 1;
    let g = bundle.group(m.mul_all(t));
    let signed = |v: usize, i: usize| if i % 2 == 1 { g.inv(v) } else { v };
    let tail = &t[1..];
    let mut acc = bundle.push(t[0], m.mul_all(tail), src.value_at(lam, tail));
    let mut merged = Vec::with_capacity(n);
    for i in 0..n {
        merged.clear();
        merged.extend_from_slice(&t[..i]);
        merged.push(m.mul(t[i], t[i + 1]));
        merged.extend_from_slice(&t[i + 2..]);
        acc = g.mul(acc, signed(src.value_at(lam, &merged), i + 1));
    }
    let head = &t[..n];
    let last = bundle.pull(m.mul_all(head), t[n], src.value_at(lam, head));
    g.mul(acc, signed(last, n + 1))
}

/// The coboundary computed element-wise in the coefficient groups.
pub fn coboundary(module: &Arc<DMModule>, lam: &Cochain) -> Result<Cochain> {
    let src = CochainSpace::new(module, lam.degree)?;
    src.check(lam)?;
    let tgt = CochainSpace::new(module, lam.degree + 1)?;
    if cfg!(debug_assertions) {
        check_normalized_image(&src, lam)?;
    }
    Ok(coboundary_between(&src, &tgt, lam))
}

pub(crate) fn coboundary_between(src: &CochainSpace, tgt: &CochainSpace, lam: &Cochain) -> Cochain {
    let values = tgt
        .tuples
        .iter()
        .map(|t| coboundary_at(src, lam, t))
        .collect();
    Cochain {
        degree: tgt.degree,
        values,
    }
}

/// The formula must vanish on tuples containing the unit.
fn check_normalized_image(src: &CochainSpace, lam: &Cochain) -> Result<()> {
    let m = src.module.base();
    let n = src.degree + 1;
    let size = m.size();
    let total = size.pow(n as u32);
    let mut t = vec![0; n];
    for mut i in 0..total {
        for slot in t.iter_mut().rev() {
            *slot = i % size;
            i /= size;
        }
        if t.contains(&m.unit()) {
            let v = coboundary_at(src, lam, &t);
            if v != src.module.bundle().group(m.mul_all(&t)).unit() {
                return Err(Error::NotACocycle(format!(
                    "coboundary is nonzero on the unit-containing tuple {t:?}"
                )));
            }
        }
    }
    Ok(())
}

/// A homomorphism between cochain groups in their tuple coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainMap {
    pub source: CochainSpace,
    pub target: CochainSpace,
    /// Reduced modulo the row moduli.
    pub matrix: IntMatrix,
}

impl CochainMap {
    pub fn apply(&self, x: &[u64]) -> Vec<u64> {
        let v: Vec<BigInt> = x.iter().map(|&c| BigInt::from(c)).collect();
        self.target.reduce(&self.matrix.mul_vec(&v))
    }

    pub fn apply_cochain(&self, c: &Cochain) -> Cochain {
        self.target.cochain(&self.apply(&self.source.coords(c)))
    }

    pub fn is_zero(&self) -> bool {
        (0..self.matrix.rows()).all(|i| {
            let d = BigInt::from(self.target.moduli[i]);
            (0..self.matrix.cols()).all(|j| self.matrix.get(i, j).mod_floor(&d).is_zero())
        })
    }

    /// `self . inner`.
    pub fn compose(&self, inner: &CochainMap) -> Result<CochainMap> {
        if inner.target.moduli != self.source.moduli {
            return Err(Error::NotComposable("cochain maps do not meet".into()));
        }
        Ok(CochainMap {
            source: inner.source.clone(),
            target: self.target.clone(),
            matrix: reduce_rows(self.matrix.mul(&inner.matrix), &self.target.moduli),
        })
    }
}

fn reduce_rows(mut m: IntMatrix, moduli: &[u64]) -> IntMatrix {
    for (i, &d) in moduli.iter().enumerate() {
        let d = BigInt::from(d);
        for j in 0..m.cols() {
            let v = m.get(i, j).mod_floor(&d);
            m.set(i, j, v);
        }
    }
    m
}

/// The coboundary `C^n -> C^{n+1}` assembled from the structure matrices.
pub fn coboundary_matrix(module: &Arc<DMModule>, n: usize) -> Result<CochainMap> {
    coboundary_matrix_with_guard(module, n, &Guard::default())
}

pub fn coboundary_matrix_with_guard(
    module: &Arc<DMModule>,
    n: usize,
    guard: &Guard,
) -> Result<CochainMap> {
    if n > guard.max_degree {
        return Err(Error::DegreeTooLarge {
            degree: n,
            limit: guard.max_degree,
        });
    }
    let src = CochainSpace::with_guard(module, n, guard)?;
    let tgt = CochainSpace::with_guard(module, n + 1, guard)?;
    let m = module.base();
    let size = m.size();
    let lstar: Vec<AbHom> = (0..size * size)
        .map(|i| module.lstar_matrix(i / size, i % size))
        .collect();
    let rstar: Vec<AbHom> = (0..size * size)
        .map(|i| module.rstar_matrix(i / size, i % size))
        .collect();

    // Each target tuple contributes a horizontal strip of rows.
    let entries: Vec<(usize, usize, i64)> = (0..tgt.tuples.len())
        .into_par_iter()
        .flat_map_iter(|ti| {
            let t = &tgt.tuples[ti];
            let rows = tgt.block(ti);
            let mut out = Vec::new();
            let mut put = |block: &[Vec<u64>], j: usize, sign: i64| {
                for (r, row) in rows.clone().zip(block) {
                    for (c, &v) in src.block(j).zip(row) {
                        if v != 0 {
                            out.push((r, c, sign * v as i64));
                        }
                    }
                }
            };
            let tail = &t[1..];
            if let Some(j) = src.tuple_index(tail) {
                put(lstar[t[0] * size + src.products[j]].matrix(), j, 1);
            }
            for i in 0..n {
                let mut merged = t[..i].to_vec();
                merged.push(m.mul(t[i], t[i + 1]));
                merged.extend_from_slice(&t[i + 2..]);
                if let Some(j) = src.tuple_index(&merged) {
                    let k = src.block(j).len();
                    let id: Vec<Vec<u64>> = (0..k)
                        .map(|r| (0..k).map(|c| u64::from(r == c)).collect())
                        .collect();
                    put(&id, j, if (i + 1) % 2 == 1 { -1 } else { 1 });
                }
            }
            let head = &t[..n];
            if let Some(j) = src.tuple_index(head) {
                let sign = if (n + 1) % 2 == 1 { -1 } else { 1 };
                put(rstar[src.products[j] * size + t[n]].matrix(), j, sign);
            }
            out
        })
        .collect();
    let mut matrix = IntMatrix::zeros(tgt.dim(), src.dim());
    for (r, c, v) in entries {
        let cur = matrix.get(r, c) + BigInt::from(v);
        matrix.set(r, c, cur);
    }
    let matrix = reduce_rows(matrix, &tgt.moduli);
    Ok(CochainMap {
        source: src,
        target: tgt,
        matrix,
    })
}

/// `(q_* λ)(a_1..a_n) = q_{a_1...a_n}(λ(a_1..a_n))` for a module map over the same base.
pub fn pushforward(
    source: &Arc<DMModule>,
    target: &Arc<DMModule>,
    q: &[GroupHom],
    lam: &Cochain,
) -> Result<Cochain> {
    if source.base() != target.base() || q.len() != source.base().size() {
        return Err(Error::ShapeMismatch(
            "module map does not fit the modules".into(),
        ));
    }
    let src = CochainSpace::new(source, lam.degree)?;
    src.check(lam)?;
    let values = lam
        .values
        .iter()
        .enumerate()
        .map(|(i, &v)| q[src.products[i]].apply(v))
        .collect();
    let out = Cochain {
        degree: lam.degree,
        values,
    };
    CochainSpace::new(target, lam.degree)?.check(&out)?;
    Ok(out)
}

/// `(p^* λ')(a_1..a_n) = λ'(p(a_1)..p(a_n))`, a cochain with values in the
/// pulled-back module.
pub fn pullback_cochain(
    p: &MonoidHom,
    target: &Arc<DMModule>,
    lam: &Cochain,
) -> Result<(Arc<DMModule>, Cochain)> {
    if p.target != *target.base() {
        return Err(Error::ShapeMismatch(
            "monoid map does not land in the module base".into(),
        ));
    }
    let tgt_space = CochainSpace::new(target, lam.degree)?;
    tgt_space.check(lam)?;
    let pulled = Arc::new(DMModule::pullback(p, target)?);
    let space = CochainSpace::new(&pulled, lam.degree)?;
    let values = space
        .tuples
        .iter()
        .map(|t| {
            let image: Vec<usize> = t.iter().map(|&a| p.apply(a)).collect();
            tgt_space.value_at(lam, &image)
        })
        .collect();
    Ok((
        pulled,
        Cochain {
            degree: lam.degree,
            values,
        },
    ))
}

#[cfg(test)]
mod tests;
