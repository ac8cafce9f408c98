//! Divisor-class vector spaces on `M_{0,b}`, `M_g`, the pseudo-stable
//! model of `M_g` and the universal curve `M_{g,1}`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{input, Error, Result};
use crate::scalar::Scalar;

/// A named generator of a rational Picard group.
///
/// The derived order (λ, λ^ps, ψ, δ_i, δ_i^ps, B_i) is the order used in reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisLabel {
    Lambda,
    LambdaPs,
    Psi,
    Delta(u32),
    DeltaPs(u32),
    /// Boundary divisor `B_i` of `M_{0,b}`.
    Boundary(u32),
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisLabel::Lambda => write!(f, "lambda"),
            BasisLabel::LambdaPs => write!(f, "lambda_ps"),
            BasisLabel::Psi => write!(f, "psi"),
            BasisLabel::Delta(i) => write!(f, "delta_{i}"),
            BasisLabel::DeltaPs(i) => write!(f, "delta_{i}_ps"),
            BasisLabel::Boundary(i) => write!(f, "B_{i}"),
        }
    }
}

impl FromStr for BasisLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let index = |t: &str| {
            t.parse::<u32>()
                .map_err(|_| Error::Parse(format!("bad basis label {s:?}")))
        };
        match s {
            "lambda" => Ok(BasisLabel::Lambda),
            "lambda_ps" => Ok(BasisLabel::LambdaPs),
            "psi" => Ok(BasisLabel::Psi),
            _ => {
                if let Some(rest) = s.strip_prefix("delta_") {
                    match rest.strip_suffix("_ps") {
                        Some(j) => Ok(BasisLabel::DeltaPs(index(j)?)),
                        None => Ok(BasisLabel::Delta(index(rest)?)),
                    }
                } else if let Some(rest) = s.strip_prefix("B_") {
                    Ok(BasisLabel::Boundary(index(rest)?))
                } else {
                    Err(Error::Parse(format!("unknown basis label {s:?}")))
                }
            }
        }
    }
}

/// The moduli space a class lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum SpaceDescriptor {
    GenusZeroPointed { b: u32 },
    Mg { g: u32 },
    MgPseudoStable { g: u32 },
    MgOnePointed { g: u32 },
    Hurwitz { g: u32, k: u32 },
}

impl SpaceDescriptor {
    pub fn validate(&self) -> Result<()> {
        match *self {
            SpaceDescriptor::GenusZeroPointed { b } if b < 4 => input(format!("M_0,b needs b >= 4, got {b}")),
            SpaceDescriptor::Mg { g } | SpaceDescriptor::MgOnePointed { g } if g < 2 => {
                input(format!("genus must be at least 2, got {g}"))
            }
            SpaceDescriptor::MgPseudoStable { g } if g < 3 => {
                input(format!("pseudo-stable model needs g >= 3, got {g}"))
            }
            SpaceDescriptor::Hurwitz { g, k } => crate::partitions::branch_point_count(g, k).map(|_| ()),
            _ => Ok(()),
        }
    }

    /// Ordered generators. Hurwitz spaces use the boundary index set instead
    /// and have no label basis here.
    pub fn basis(&self) -> Vec<BasisLabel> {
        match *self {
            SpaceDescriptor::GenusZeroPointed { b } => (2..=b / 2).map(BasisLabel::Boundary).collect(),
            SpaceDescriptor::Mg { g } => std::iter::once(BasisLabel::Lambda)
                .chain((0..=g / 2).map(BasisLabel::Delta))
                .collect(),
            SpaceDescriptor::MgPseudoStable { g } => [BasisLabel::LambdaPs, BasisLabel::DeltaPs(0)]
                .into_iter()
                .chain((2..=g / 2).map(BasisLabel::DeltaPs))
                .collect(),
            SpaceDescriptor::MgOnePointed { g } => [BasisLabel::Lambda, BasisLabel::Psi]
                .into_iter()
                .chain((0..g).map(BasisLabel::Delta))
                .collect(),
            SpaceDescriptor::Hurwitz { .. } => Vec::new(),
        }
    }

    pub fn has_label(&self, label: BasisLabel) -> bool {
        match (*self, label) {
            (SpaceDescriptor::GenusZeroPointed { b }, BasisLabel::Boundary(i)) => (2..=b / 2).contains(&i),
            (SpaceDescriptor::Mg { .. }, BasisLabel::Lambda) => true,
            (SpaceDescriptor::Mg { g }, BasisLabel::Delta(i)) => i <= g / 2,
            (SpaceDescriptor::MgPseudoStable { .. }, BasisLabel::LambdaPs) => true,
            (SpaceDescriptor::MgPseudoStable { g }, BasisLabel::DeltaPs(j)) => j == 0 || (2..=g / 2).contains(&j),
            (SpaceDescriptor::MgOnePointed { .. }, BasisLabel::Lambda | BasisLabel::Psi) => true,
            (SpaceDescriptor::MgOnePointed { g }, BasisLabel::Delta(i)) => i < g,
            _ => false,
        }
    }
}

impl fmt::Display for SpaceDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceDescriptor::GenusZeroPointed { b } => write!(f, "M_0,{b}"),
            SpaceDescriptor::Mg { g } => write!(f, "M_{g}"),
            SpaceDescriptor::MgPseudoStable { g } => write!(f, "M_{g}^ps"),
            SpaceDescriptor::MgOnePointed { g } => write!(f, "M_{g},1"),
            SpaceDescriptor::Hurwitz { g, k } => write!(f, "H_{g}^{k}"),
        }
    }
}

/// A sparse divisor class: absent coefficients are zero and zeros are never stored.
#[derive(Debug, Clone, PartialEq)]
pub struct DivisorClass<T: Scalar = crate::Rational> {
    space: SpaceDescriptor,
    coefficients: BTreeMap<BasisLabel, T>,
}

impl<T: Scalar> DivisorClass<T> {
    pub fn zero(space: SpaceDescriptor) -> Result<Self> {
        space.validate()?;
        if matches!(space, SpaceDescriptor::Hurwitz { .. }) {
            return input("Hurwitz-space classes are indexed by boundary divisors; use HurwitzClass");
        }
        Ok(DivisorClass { space, coefficients: BTreeMap::new() })
    }

    pub fn from_terms(space: SpaceDescriptor, terms: impl IntoIterator<Item = (BasisLabel, T)>) -> Result<Self> {
        let mut class = Self::zero(space)?;
        for (label, value) in terms {
            class.add_term(label, value)?;
        }
        Ok(class)
    }

    pub fn space(&self) -> SpaceDescriptor {
        self.space
    }

    pub fn get(&self, label: BasisLabel) -> T {
        self.coefficients.get(&label).cloned().unwrap_or_else(T::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (BasisLabel, &T)> {
        self.coefficients.iter().map(|(l, v)| (*l, v))
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn add_term(&mut self, label: BasisLabel, value: T) -> Result<()> {
        if !self.space.has_label(label) {
            return input(format!("{label} is not a generator of {}", self.space));
        }
        let entry = self.coefficients.remove(&label).unwrap_or_else(T::zero) + value;
        if !entry.is_zero() {
            self.coefficients.insert(label, entry);
        }
        Ok(())
    }

    fn check_same_space(&self, other: &Self) -> Result<()> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch { left: self.space.to_string(), right: other.space.to_string() });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same_space(other)?;
        let mut out = self.clone();
        for (label, value) in other.terms() {
            out.add_term(label, value.clone())?;
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.scale(&-T::one()))
    }

    pub fn scale(&self, factor: &T) -> Self {
        let coefficients = if factor.is_zero() {
            BTreeMap::new()
        } else {
            self.coefficients.iter().map(|(l, v)| (*l, v.clone() * factor.clone())).collect()
        };
        DivisorClass { space: self.space, coefficients }
    }
}

/// The total boundary `δ = δ_0 + ... + δ_⌊g/2⌋`, expanded.
pub fn total_boundary<T: Scalar>(g: u32) -> Result<DivisorClass<T>> {
    DivisorClass::from_terms(SpaceDescriptor::Mg { g }, (0..=g / 2).map(|i| (BasisLabel::Delta(i), T::one())))
}

/// `a λ - δ` on `M_g`.
pub fn lambda_minus_delta<T: Scalar>(g: u32, a: T) -> Result<DivisorClass<T>> {
    let mut class = total_boundary::<T>(g)?.scale(&-T::one());
    class.add_term(BasisLabel::Lambda, a)?;
    Ok(class)
}

fn genus_zero_class<T: Scalar>(b: u32, coefficient: impl Fn(i64, i64) -> T) -> Result<DivisorClass<T>> {
    let space = SpaceDescriptor::GenusZeroPointed { b };
    let bb = i64::from(b);
    DivisorClass::from_terms(space, (2..=b / 2).map(|i| (BasisLabel::Boundary(i), coefficient(i64::from(i), bb))))
}

/// Canonical class of `M_{0,b}`: `Σ (i(b-i)/(b-1) - 2) B_i`.
pub fn canonical_m0b<T: Scalar>(b: u32) -> Result<DivisorClass<T>> {
    genus_zero_class(b, |i, b| T::from_ratio(i * (b - i), b - 1) - T::from_int(2))
}

/// `κ_1` on `M_{0,b}`: `Σ (i-1)(b-i-1)/(b-1) B_i`.
pub fn kappa1_m0b<T: Scalar>(b: u32) -> Result<DivisorClass<T>> {
    genus_zero_class(b, |i, b| T::from_ratio((i - 1) * (b - i - 1), b - 1))
}

/// Boundary positivity test on `M_{0,b}`.
///
/// Returns the verdict together with `α = min_i c_i / κ1_i`, the largest
/// rational for which `D - α κ_1` is coefficient-wise non-negative. The
/// class is big when every coefficient is positive, i.e. when `α > 0`.
pub fn is_big_boundary_positive<T: Scalar>(class: &DivisorClass<T>) -> Result<(bool, T)> {
    let SpaceDescriptor::GenusZeroPointed { b } = class.space() else {
        return input(format!("boundary positivity is defined on M_0,b, not {}", class.space()));
    };
    let kappa = kappa1_m0b::<T>(b)?;
    let alpha = (2..=b / 2)
        .map(|i| class.get(BasisLabel::Boundary(i)) / kappa.get(BasisLabel::Boundary(i)))
        .reduce(|a, c| if c < a { c } else { a })
        .expect("b >= 4 gives at least one boundary divisor");
    Ok((alpha > T::zero(), alpha))
}

/// Slope `a / min_i b_i` of `a λ - Σ b_i δ_i` on `M_g`; `None` when some
/// `b_i <= 0` or `a <= 0`.
pub fn slope<T: Scalar>(class: &DivisorClass<T>) -> Result<Option<T>> {
    let SpaceDescriptor::Mg { g } = class.space() else {
        return input(format!("slope is defined for classes on M_g, not {}", class.space()));
    };
    let a = class.get(BasisLabel::Lambda);
    if a <= T::zero() {
        return Ok(None);
    }
    let mut min_b: Option<T> = None;
    for i in 0..=g / 2 {
        let b = -class.get(BasisLabel::Delta(i));
        if b <= T::zero() {
            return Ok(None);
        }
        min_b = Some(match min_b {
            Some(m) if m <= b => m,
            _ => b,
        });
    }
    Ok(min_b.map(|m| a / m))
}

/// Closure of the Weierstrass divisor on `M_{g,1}`:
/// `-λ + C(g+1,2) ψ - Σ_{i=1}^{g-1} C(g-i+1,2) δ_i`.
pub fn weierstrass_class<T: Scalar>(g: u32) -> Result<DivisorClass<T>> {
    let gg = i64::from(g);
    let mut terms = vec![(BasisLabel::Lambda, -T::one()), (BasisLabel::Psi, T::from_int(gg * (gg + 1) / 2))];
    for i in 1..g {
        let n = gg - i64::from(i) + 1;
        terms.push((BasisLabel::Delta(i), -T::from_int(n * (n - 1) / 2)));
    }
    DivisorClass::from_terms(SpaceDescriptor::MgOnePointed { g }, terms)
}

/// Pullback along the contraction of elliptic tails to cusps:
/// `λ^ps ↦ λ + δ_1`, `δ_0^ps ↦ δ_0 + 12 δ_1`, `δ_j^ps ↦ δ_j` for `j >= 2`.
pub fn phi_pullback<T: Scalar>(class: &DivisorClass<T>) -> Result<DivisorClass<T>> {
    let SpaceDescriptor::MgPseudoStable { g } = class.space() else {
        return input(format!("phi pullback expects a pseudo-stable class, got {}", class.space()));
    };
    let mut out = DivisorClass::zero(SpaceDescriptor::Mg { g })?;
    for (label, value) in class.terms() {
        match label {
            BasisLabel::LambdaPs => {
                out.add_term(BasisLabel::Lambda, value.clone())?;
                out.add_term(BasisLabel::Delta(1), value.clone())?;
            }
            BasisLabel::DeltaPs(0) => {
                out.add_term(BasisLabel::Delta(0), value.clone())?;
                out.add_term(BasisLabel::Delta(1), value.clone() * T::from_int(12))?;
            }
            BasisLabel::DeltaPs(j) => out.add_term(BasisLabel::Delta(j), value.clone())?,
            other => unreachable!("{other} is not a pseudo-stable generator"),
        }
    }
    Ok(out)
}
