//! Divisor classes on the compactified Hurwitz space in the boundary basis
//! `E_{i:mu}`.
//!
//! With `b = 2g + 2k - 2` ordered branch points, `E_{i:mu}` is the closure of
//! covers whose target splits into two rational curves, `i` branch points
//! on one side and fibre type `mu` over the node. The branch map to
//! `M_{0,b}` is ramified to order `m(mu) = lcm(mu)` along `E_{i:mu}`.
//! Classes are coefficient vectors; the boundary classes are treated as
//! linearly independent.

use std::collections::BTreeMap;

use crate::divisor::{canonical_m0b, BasisLabel, DivisorClass, SpaceDescriptor};
use crate::error::{input, Error, Result};
use crate::partitions::{boundary_index_set, branch_point_count};
pub use crate::partitions::BoundaryIndex;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct HurwitzClass<T: Scalar = crate::Rational> {
    g: u32,
    k: u32,
    coefficients: BTreeMap<BoundaryIndex, T>,
}

impl<T: Scalar> HurwitzClass<T> {
    pub fn zero(g: u32, k: u32) -> Result<Self> {
        branch_point_count(g, k)?;
        Ok(HurwitzClass { g, k, coefficients: BTreeMap::new() })
    }

    /// Builds a class from `(index, coefficient)` pairs, rejecting indices
    /// outside the boundary index set.
    pub fn from_terms(g: u32, k: u32, terms: impl IntoIterator<Item = (BoundaryIndex, T)>) -> Result<Self> {
        let allowed = boundary_index_set(g, k)?;
        let mut class = Self::zero(g, k)?;
        for (index, value) in terms {
            if allowed.binary_search(&index.unprimed()).is_err() {
                return input(format!("{index} is not a boundary divisor of H_{g}^{k}"));
            }
            if index.prime {
                index.primed()?;
            }
            class.add_unchecked(index, value);
        }
        Ok(class)
    }

    fn add_unchecked(&mut self, index: BoundaryIndex, value: T) {
        let entry = self.coefficients.remove(&index).unwrap_or_else(T::zero) + value;
        if !entry.is_zero() {
            self.coefficients.insert(index, entry);
        }
    }

    pub fn genus(&self) -> u32 {
        self.g
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn branch_points(&self) -> u32 {
        2 * self.g + 2 * self.k - 2
    }

    pub fn space(&self) -> SpaceDescriptor {
        SpaceDescriptor::Hurwitz { g: self.g, k: self.k }
    }

    pub fn get(&self, index: &BoundaryIndex) -> T {
        self.coefficients.get(index).cloned().unwrap_or_else(T::zero)
    }

    /// Coefficient of `E_{i:mu}` counting the `E'` component as part of it.
    pub fn total_coefficient(&self, index: &BoundaryIndex) -> T {
        let plain = index.unprimed();
        let primed = BoundaryIndex { prime: true, ..plain.clone() };
        self.get(&plain) + self.get(&primed)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BoundaryIndex, &T)> {
        self.coefficients.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if (self.g, self.k) != (other.g, other.k) {
            return Err(Error::SpaceMismatch { left: self.space().to_string(), right: other.space().to_string() });
        }
        let mut out = self.clone();
        for (index, value) in other.terms() {
            out.add_unchecked(index.clone(), value.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, factor: &T) -> Self {
        let coefficients = if factor.is_zero() {
            BTreeMap::new()
        } else {
            self.coefficients.iter().map(|(i, v)| (i.clone(), v.clone() * factor.clone())).collect()
        };
        HurwitzClass { g: self.g, k: self.k, coefficients }
    }

    /// Coefficient-exact comparison (up to the scalar's precision).
    pub fn same_as(&self, other: &Self) -> bool {
        (self.g, self.k) == (other.g, other.k)
            && self.coefficients.keys().chain(other.coefficients.keys()).all(|i| self.get(i).same(&other.get(i)))
    }
}

fn tabulate<T: Scalar>(g: u32, k: u32, f: impl Fn(&BoundaryIndex, i64) -> T) -> Result<HurwitzClass<T>> {
    let b = i64::from(branch_point_count(g, k)?);
    HurwitzClass::from_terms(g, k, boundary_index_set(g, k)?.into_iter().map(|ix| {
        let v = f(&ix, b);
        (ix, v)
    }))
}

fn lcm_of<T: Scalar>(index: &BoundaryIndex) -> T {
    T::from_int(index.mu.lcm() as i64)
}

/// `λ = Σ m(mu) (i(b-i)/(8(b-1)) - (k - 1/mu)/12) E_{i:mu}`.
pub fn hodge_class<T: Scalar>(g: u32, k: u32) -> Result<HurwitzClass<T>> {
    let kk = T::from_int(i64::from(k));
    tabulate(g, k, |ix, b| {
        let i = i64::from(ix.i);
        let first = T::from_ratio(i * (b - i), 8 * (b - 1));
        let second = (kk.clone() - ix.mu.harmonic_inverse::<T>()) / T::from_int(12);
        lcm_of::<T>(ix) * (first - second)
    })
}

/// `b^*(B_i) = Σ_mu m(mu) E_{i:mu}`.
pub fn branch_pullback_bi<T: Scalar>(g: u32, k: u32, i: u32) -> Result<HurwitzClass<T>> {
    let b = branch_point_count(g, k)?;
    if i < 2 || i > b / 2 {
        return input(format!("B_{i} is not a boundary divisor of M_0,{b}"));
    }
    HurwitzClass::from_terms(
        g,
        k,
        boundary_index_set(g, k)?.into_iter().filter(|ix| ix.i == i).map(|ix| {
            let m = lcm_of::<T>(&ix);
            (ix, m)
        }),
    )
}

/// Linear extension of [`branch_pullback_bi`] to a class on `M_{0,b}`.
pub fn branch_pullback<T: Scalar>(g: u32, k: u32, class: &DivisorClass<T>) -> Result<HurwitzClass<T>> {
    let b = branch_point_count(g, k)?;
    if class.space() != (SpaceDescriptor::GenusZeroPointed { b }) {
        return input(format!("branch pullback to H_{g}^{k} needs a class on M_0,{b}, got {}", class.space()));
    }
    let mut out = HurwitzClass::zero(g, k)?;
    for (label, value) in class.terms() {
        let BasisLabel::Boundary(i) = label else { unreachable!("M_0,b classes only carry B_i") };
        out = out.try_add(&branch_pullback_bi::<T>(g, k, i)?.scale(value))?;
    }
    Ok(out)
}

/// Ramification divisor of the branch map, `Σ (m(mu) - 1) E_{i:mu}`.
pub fn ramification_class<T: Scalar>(g: u32, k: u32) -> Result<HurwitzClass<T>> {
    tabulate(g, k, |ix, _| lcm_of::<T>(ix) - T::one())
}

/// `K = Σ (m(mu)(i(b-i)/(b-1) - 1) - 1) E_{i:mu}` on the stack, checked
/// against `b^* K_{M_0,b} + Ram`.
pub fn canonical_stack<T: Scalar>(g: u32, k: u32) -> Result<HurwitzClass<T>> {
    let direct = canonical_stack_formula::<T>(g, k)?;
    let via_pullback = canonical_stack_via_pullback::<T>(g, k)?;
    if !direct.same_as(&via_pullback) {
        return Err(Error::Consistency(format!("canonical class of H_{g}^{k}: formula and Riemann-Hurwitz disagree")));
    }
    Ok(direct)
}

pub fn canonical_stack_formula<T: Scalar>(g: u32, k: u32) -> Result<HurwitzClass<T>> {
    tabulate(g, k, |ix, b| {
        let i = i64::from(ix.i);
        lcm_of::<T>(ix) * (T::from_ratio(i * (b - i), b - 1) - T::one()) - T::one()
    })
}

/// Riemann-Hurwitz for the branch map.
pub fn canonical_stack_via_pullback<T: Scalar>(g: u32, k: u32) -> Result<HurwitzClass<T>> {
    let b = branch_point_count(g, k)?;
    branch_pullback(g, k, &canonical_m0b::<T>(b)?)?.try_add(&ramification_class(g, k)?)
}

/// Whether `E_{i:mu}` meets the branch locus of the stack-to-coarse map:
/// some `a >= 1` with `(2^a) ⊆ mu` and `i >= a`.
pub fn has_branch_component(index: &BoundaryIndex) -> bool {
    let twos = index.mu.multiplicity(2);
    (1..=twos).any(|a| index.i >= a)
}

/// `-Σ E'_{i:mu}` over indices with a branch component, carried on primed indices.
pub fn coarse_correction<T: Scalar>(g: u32, k: u32) -> Result<HurwitzClass<T>> {
    let mut terms = Vec::new();
    for ix in boundary_index_set(g, k)? {
        if has_branch_component(&ix) {
            terms.push((ix.primed()?, -T::one()));
        }
    }
    HurwitzClass::from_terms(g, k, terms)
}

/// Canonical class of the coarse moduli space.
pub fn canonical_coarse<T: Scalar>(g: u32, k: u32) -> Result<HurwitzClass<T>> {
    canonical_stack::<T>(g, k)?.try_add(&coarse_correction(g, k)?)
}

/// `b^*(κ_1)`, strictly positive on every boundary divisor.
pub fn kappa1_pullback<T: Scalar>(g: u32, k: u32) -> Result<HurwitzClass<T>> {
    let b = branch_point_count(g, k)?;
    branch_pullback(g, k, &crate::divisor::kappa1_m0b::<T>(b)?)
}
