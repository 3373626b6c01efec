use std::sync::Arc;

use super::{Cochain, CochainSpace};
use crate::coefficients::DMModule;
use crate::error::{Error, Result};
use crate::group::{AbElement, AbHom, FinAbGroup, FiniteGroup};

/// The unnormalized inhomogeneous complex of a group acting on the left on
/// an abelian group: cochains are all functions `G^n -> A`.
///
/// Coordinates of `C^n` are ordered factor-major so that `C^n` is already in
/// invariant-factor form: all copies of the first factor of `A`, then all
/// copies of the second, and so on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BarComplex {
    group: FiniteGroup,
    module: FinAbGroup,
    action: Vec<AbHom>,
}

const MAX_BAR_DEGREE: usize = 3;
const MAX_BAR_TUPLES: usize = 1 << 12;

impl BarComplex {
    pub fn new(group: FiniteGroup, module: FinAbGroup, action: Vec<AbHom>) -> Result<Self> {
        if action.len() != group.size()
            || action
                .iter()
                .any(|h| h.source != module || h.target != module)
        {
            return Err(Error::ShapeMismatch(
                "one endomorphism of the module per group element".into(),
            ));
        }
        let id = AbHom::identity(module.clone());
        if action[group.unit()] != id {
            return Err(Error::NotAGroup("the unit does not act trivially".into()));
        }
        for x in group.elements() {
            for y in group.elements() {
                if action[group.mul(x, y)] != action[x].compose(&action[y])? {
                    return Err(Error::NotAGroup(format!(
                        "action of {x}{y} is not the composite"
                    )));
                }
            }
        }
        Ok(Self {
            group,
            module,
            action,
        })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn module(&self) -> &FinAbGroup {
        &self.module
    }

    pub fn action(&self, x: usize) -> &AbHom {
        &self.action[x]
    }

    fn tuples(&self, n: usize) -> Result<usize> {
        if n > MAX_BAR_DEGREE + 1 {
            return Err(Error::DegreeTooLarge {
                degree: n,
                limit: MAX_BAR_DEGREE + 1,
            });
        }
        let count = self.group.size().pow(n as u32);
        if count > MAX_BAR_TUPLES {
            return Err(Error::TooLarge(format!("{count} tuples in degree {n}")));
        }
        Ok(count)
    }

    fn tuple(&self, n: usize, mut i: usize) -> Vec<usize> {
        let g = self.group.size();
        let mut t = vec![0; n];
        for slot in t.iter_mut().rev() {
            *slot = i % g;
            i /= g;
        }
        t
    }

    fn index(&self, t: &[usize]) -> usize {
        t.iter().fold(0, |acc, &x| acc * self.group.size() + x)
    }

    pub fn cochains(&self, n: usize) -> Result<FinAbGroup> {
        let count = self.tuples(n)?;
        let factors = self
            .module
            .factors()
            .iter()
            .flat_map(|&d| std::iter::repeat_n(d, count))
            .collect();
        FinAbGroup::new(factors)
    }

    /// Evaluates `d f` on a cochain given as one value per tuple of `G^n`.
    pub fn coboundary(&self, n: usize, f: &[AbElement]) -> Result<Vec<AbElement>> {
        if f.len() != self.tuples(n)? {
            return Err(Error::ShapeMismatch(format!(
                "a {n}-cochain has {} values",
                self.tuples(n)?
            )));
        }
        let a = &self.module;
        let count = self.tuples(n + 1)?;
        Ok((0..count)
            .map(|i| {
                let t = self.tuple(n + 1, i);
                let mut acc = self.action[t[0]].apply(&f[self.index(&t[1..])]);
                for k in 0..n {
                    let mut merged = t[..k].to_vec();
                    merged.push(self.group.mul(t[k], t[k + 1]));
                    merged.extend_from_slice(&t[k + 2..]);
                    let v = &f[self.index(&merged)];
                    acc = if k % 2 == 0 {
                        a.add(&acc, &a.neg(v))
                    } else {
                        a.add(&acc, v)
                    };
                }
                let v = &f[self.index(&t[..n])];
                if n.is_multiple_of(2) {
                    a.add(&acc, &a.neg(v))
                } else {
                    a.add(&acc, v)
                }
            })
            .collect())
    }

    fn flatten(&self, f: &[AbElement]) -> AbElement {
        (0..self.module.rank())
            .flat_map(|r| f.iter().map(move |v| v[r]))
            .collect()
    }

    fn unflatten(&self, n: usize, x: &[u64]) -> Vec<AbElement> {
        let count = self.group.size().pow(n as u32);
        (0..count)
            .map(|i| (0..self.module.rank()).map(|r| x[r * count + i]).collect())
            .collect()
    }

    pub fn coboundary_hom(&self, n: usize) -> Result<AbHom> {
        let src = self.cochains(n)?;
        let tgt = self.cochains(n + 1)?;
        let images = (0..src.rank())
            .map(|j| {
                let f = self.unflatten(n, &src.generator(j));
                Ok(self.flatten(&self.coboundary(n, &f)?))
            })
            .collect::<Result<Vec<_>>>()?;
        AbHom::from_images(src, tgt, &images)
    }

    /// `H^n` as the kernel of the map `C^n / B^n -> C^{n+1}` induced by `d`.
    pub fn cohomology(&self, n: usize) -> Result<FinAbGroup> {
        let incoming = if n == 0 {
            AbHom::zero(FinAbGroup::trivial(), self.cochains(0)?)
        } else {
            self.coboundary_hom(n - 1)?
        };
        let outgoing = self.coboundary_hom(n)?;
        let quotient = incoming.cokernel();
        let images: Vec<AbElement> = quotient.lifts().iter().map(|l| outgoing.apply(l)).collect();
        let induced = AbHom::from_images(quotient.group.clone(), outgoing.target.clone(), &images)?;
        Ok(induced.kernel().group)
    }

    pub fn is_cocycle(&self, n: usize, f: &[AbElement]) -> Result<bool> {
        Ok(self
            .coboundary(n, f)?
            .iter()
            .all(|v| v.iter().all(|&x| x == 0)))
    }

    pub fn is_coboundary(&self, n: usize, f: &[AbElement]) -> Result<bool> {
        if n == 0 {
            return Ok(f.iter().all(|v| v.iter().all(|&x| x == 0)));
        }
        let incoming = self.coboundary_hom(n - 1)?;
        let quotient = incoming.cokernel();
        let class = quotient.project(&self.flatten(f));
        Ok(class.iter().all(|&x| x == 0))
    }
}

/// The group, coefficient group and action obtained from a module over a
/// group: `A = A_1` and `θ(a) = (a^*)^{-1} a_*`, both maps `A_1 -> A_a`.
pub fn categorical_reduction(module: &DMModule) -> Result<BarComplex> {
    let m = module.base();
    if !m.is_group() {
        return Err(Error::NotAGroup(
            "the base monoid has non-invertible elements".into(),
        ));
    }
    let group = FiniteGroup::from_monoid(m)?;
    let bundle = module.bundle();
    let unit = m.unit();
    let s1 = module.structure(unit);
    let mut action = Vec::with_capacity(m.size());
    for a in m.elements() {
        let pull = bundle.rstar(unit, a);
        let inverse = pull.inverse(bundle.group(a).size()).ok_or_else(|| {
            Error::NotAGroup(format!("{a}^* is not invertible on the unit group"))
        })?;
        let images: Vec<AbElement> = (0..s1.group.rank())
            .map(|j| {
                let x = s1.element(&s1.group.generator(j));
                s1.coords(inverse.apply(bundle.push(a, unit, x))).clone()
            })
            .collect();
        action.push(AbHom::from_images(
            s1.group.clone(),
            s1.group.clone(),
            &images,
        )?);
    }
    BarComplex::new(group, s1.group.clone(), action)
}

/// `λ̂(a_1..a_n) = ((a_1...a_n)^*)^{-1} λ(a_1..a_n)`, extended by zero to
/// tuples containing the unit. This is a chain map onto the normalized part
/// of the bar complex of [`categorical_reduction`].
pub fn reduce_cochain(module: &Arc<DMModule>, lam: &Cochain) -> Result<Vec<AbElement>> {
    let m = module.base();
    if !m.is_group() {
        return Err(Error::NotAGroup(
            "the base monoid has non-invertible elements".into(),
        ));
    }
    let space = CochainSpace::new(module, lam.degree)?;
    space.check(lam)?;
    let bundle = module.bundle();
    let unit = m.unit();
    let s1 = module.structure(unit);
    let n = lam.degree;
    let size = m.size();
    let mut out = Vec::with_capacity(size.pow(n as u32));
    for mut i in 0..size.pow(n as u32) {
        let mut t = vec![0; n];
        for slot in t.iter_mut().rev() {
            *slot = i % size;
            i /= size;
        }
        let p = m.mul_all(&t);
        let pull = bundle.rstar(unit, p);
        let inverse = pull.inverse(bundle.group(p).size()).ok_or_else(|| {
            Error::NotAGroup(format!("{p}^* is not invertible on the unit group"))
        })?;
        out.push(s1.coords(inverse.apply(space.value_at(lam, &t))).clone());
    }
    Ok(out)
}
