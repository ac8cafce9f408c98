//! Pullback along the elliptic-tail map `j: M_{g,1} -> M_{g+1}`, formal
//! products of divisors on `M_{g,1}`, and pushforward of those products
//! along the forgetful map `π: M_{g,1} -> M_g`.

use std::collections::BTreeMap;

use crate::divisor::{BasisLabel, DivisorClass, SpaceDescriptor};
use crate::error::{input, Error, Result};
use crate::scalar::Scalar;

/// A symmetric degree-two polynomial in the generators of `M_{g,1}`.
/// Keys are sorted pairs `(x, y)` with `x <= y`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticClass<T: Scalar = crate::Rational> {
    g: u32,
    coefficients: BTreeMap<(BasisLabel, BasisLabel), T>,
}

fn ordered(x: BasisLabel, y: BasisLabel) -> (BasisLabel, BasisLabel) {
    if x <= y {
        (x, y)
    } else {
        (y, x)
    }
}

impl<T: Scalar> QuadraticClass<T> {
    pub fn zero(g: u32) -> Result<Self> {
        SpaceDescriptor::MgOnePointed { g }.validate()?;
        Ok(QuadraticClass { g, coefficients: BTreeMap::new() })
    }

    pub fn from_terms(g: u32, terms: impl IntoIterator<Item = ((BasisLabel, BasisLabel), T)>) -> Result<Self> {
        let mut q = Self::zero(g)?;
        for ((x, y), v) in terms {
            q.add_term(x, y, v)?;
        }
        Ok(q)
    }

    pub fn space(&self) -> SpaceDescriptor {
        SpaceDescriptor::MgOnePointed { g: self.g }
    }

    pub fn genus(&self) -> u32 {
        self.g
    }

    pub fn get(&self, x: BasisLabel, y: BasisLabel) -> T {
        self.coefficients.get(&ordered(x, y)).cloned().unwrap_or_else(T::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = ((BasisLabel, BasisLabel), &T)> {
        self.coefficients.iter().map(|(k, v)| (*k, v))
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn add_term(&mut self, x: BasisLabel, y: BasisLabel, value: T) -> Result<()> {
        let space = self.space();
        for label in [x, y] {
            if !space.has_label(label) {
                return input(format!("{label} is not a generator of {space}"));
            }
        }
        let key = ordered(x, y);
        let entry = self.coefficients.remove(&key).unwrap_or_else(T::zero) + value;
        if !entry.is_zero() {
            self.coefficients.insert(key, entry);
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if self.g != other.g {
            return Err(Error::SpaceMismatch { left: self.space().to_string(), right: other.space().to_string() });
        }
        let mut out = self.clone();
        for ((x, y), v) in other.terms() {
            out.add_term(x, y, v.clone())?;
        }
        Ok(out)
    }

    pub fn scale(&self, factor: &T) -> Self {
        let coefficients = if factor.is_zero() {
            BTreeMap::new()
        } else {
            self.coefficients.iter().map(|(k, v)| (*k, v.clone() * factor.clone())).collect()
        };
        QuadraticClass { g: self.g, coefficients }
    }
}

/// `j^*` from `M_{g+1}` to `M_{g,1}`: `λ ↦ λ`, `δ_0 ↦ δ_0`,
/// `δ_1 ↦ -ψ + δ_{g-1}`, `δ_i ↦ δ_{i-1} + δ_{g-i}` for `i >= 2`.
pub fn j_pullback<T: Scalar>(class: &DivisorClass<T>) -> Result<DivisorClass<T>> {
    let SpaceDescriptor::Mg { g: big_g } = class.space() else {
        return input(format!("j pullback expects a class on M_g+1, got {}", class.space()));
    };
    if big_g < 3 {
        return input(format!("j pullback needs a target genus >= 3, got {big_g}"));
    }
    let g = big_g - 1;
    let mut out = DivisorClass::zero(SpaceDescriptor::MgOnePointed { g })?;
    for (label, value) in class.terms() {
        match label {
            BasisLabel::Lambda => out.add_term(BasisLabel::Lambda, value.clone())?,
            BasisLabel::Delta(0) => out.add_term(BasisLabel::Delta(0), value.clone())?,
            BasisLabel::Delta(1) => {
                out.add_term(BasisLabel::Psi, -value.clone())?;
                out.add_term(BasisLabel::Delta(g - 1), value.clone())?;
            }
            BasisLabel::Delta(i) => {
                out.add_term(BasisLabel::Delta(i - 1), value.clone())?;
                out.add_term(BasisLabel::Delta(g - i), value.clone())?;
            }
            other => unreachable!("{other} is not a generator of M_g"),
        }
    }
    Ok(out)
}

/// Formal symmetric product of two classes on the same `M_{g,1}`.
pub fn multiply<T: Scalar>(left: &DivisorClass<T>, right: &DivisorClass<T>) -> Result<QuadraticClass<T>> {
    let SpaceDescriptor::MgOnePointed { g } = left.space() else {
        return input(format!("products are formed on M_g,1, got {}", left.space()));
    };
    if left.space() != right.space() {
        return Err(Error::SpaceMismatch { left: left.space().to_string(), right: right.space().to_string() });
    }
    let mut q = QuadraticClass::zero(g)?;
    for (x, a) in left.terms() {
        for (y, b) in right.terms() {
            q.add_term(x, y, a.clone() * b.clone())?;
        }
    }
    Ok(q)
}

/// `π_*` of a single monomial, as a class on `M_g`.
///
/// Only monomials containing `ψ` survive: `ψ² ↦ 12λ - δ`, `ψλ ↦ (2g-2)λ`,
/// `ψδ_0 ↦ (2g-2)δ_0`, `ψδ_i ↦ (2i-2)δ_{min(i, g-i)}`. Products of two
/// classes pulled back from (or supported over the boundary of) `M_g`
/// push forward to zero.
pub fn pi_pushforward_monomial<T: Scalar>(g: u32, x: BasisLabel, y: BasisLabel) -> Result<DivisorClass<T>> {
    let base = SpaceDescriptor::Mg { g };
    let gg = i64::from(g);
    let (x, y) = ordered(x, y);
    let mut out = DivisorClass::zero(base)?;
    match (x, y) {
        (BasisLabel::Psi, BasisLabel::Psi) => {
            out.add_term(BasisLabel::Lambda, T::from_int(12))?;
            for i in 0..=g / 2 {
                out.add_term(BasisLabel::Delta(i), -T::one())?;
            }
        }
        (BasisLabel::Lambda, BasisLabel::Psi) => out.add_term(BasisLabel::Lambda, T::from_int(2 * gg - 2))?,
        (BasisLabel::Psi, BasisLabel::Delta(0)) => out.add_term(BasisLabel::Delta(0), T::from_int(2 * gg - 2))?,
        (BasisLabel::Psi, BasisLabel::Delta(i)) => {
            out.add_term(BasisLabel::Delta(i.min(g - i)), T::from_int(2 * i64::from(i) - 2))?
        }
        _ => {}
    }
    Ok(out)
}

/// Linear extension of [`pi_pushforward_monomial`].
pub fn pi_pushforward<T: Scalar>(q: &QuadraticClass<T>) -> Result<DivisorClass<T>> {
    let g = q.genus();
    let mut out = DivisorClass::zero(SpaceDescriptor::Mg { g })?;
    for ((x, y), v) in q.terms() {
        out = out.try_add(&pi_pushforward_monomial::<T>(g, x, y)?.scale(v))?;
    }
    Ok(out)
}
