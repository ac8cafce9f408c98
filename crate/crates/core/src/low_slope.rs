//! Effective divisors on `M_g` of slope below 8 that avoid a gonality
//! locus, together with the closed forms of their slopes.
//!
//! Effectivity and non-containment are geometric facts that are not
//! verified here; every recipe carries them as explicit [`Hypothesis`]
//! entries so that downstream certificates state their logical status.

use std::fmt;
use std::str::FromStr;

use crate::divisor::{lambda_minus_delta, phi_pullback, slope, weierstrass_class, BasisLabel, DivisorClass, SpaceDescriptor};
use crate::error::{input, Error, Result};
use crate::pushpull::{j_pullback, multiply, pi_pushforward};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RecipeName {
    Hilbert2Even,
    OddPushforward,
    SyzygyG7,
    UserSupplied,
}

impl fmt::Display for RecipeName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RecipeName::Hilbert2Even => "Hilbert2Even",
            RecipeName::OddPushforward => "OddPushforward",
            RecipeName::SyzygyG7 => "SyzygyG7",
            RecipeName::UserSupplied => "UserSupplied",
        })
    }
}

impl FromStr for RecipeName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Hilbert2Even" => Ok(RecipeName::Hilbert2Even),
            "OddPushforward" => Ok(RecipeName::OddPushforward),
            "SyzygyG7" => Ok(RecipeName::SyzygyG7),
            "UserSupplied" => Ok(RecipeName::UserSupplied),
            _ => Err(Error::Parse(format!("unknown recipe name {s:?}"))),
        }
    }
}

/// A geometric input that is assumed, never checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Hypothesis {
    /// The class is represented by an effective divisor.
    Effective,
    /// The divisor does not contain the closure of the locus of curves with
    /// a pencil of the given degree. Avoiding the `j`-gonal locus implies
    /// avoiding the `k`-gonal locus for every `k >= j`.
    AvoidsGonalLocus(u32),
    /// The map to `M_g` is generically finite onto the gonality locus.
    SigmaGenericallyFinite,
    /// Stated by the user on the command line.
    UserAsserted,
}

impl Hypothesis {
    pub fn covers_gonality(&self, k: u32) -> bool {
        matches!(*self, Hypothesis::AvoidsGonalLocus(j) if j <= k)
    }

    fn tag(&self) -> String {
        match self {
            Hypothesis::Effective => "effective".to_string(),
            Hypothesis::AvoidsGonalLocus(j) => format!("avoids-gonal-locus({j})"),
            Hypothesis::SigmaGenericallyFinite => "sigma-generically-finite".to_string(),
            Hypothesis::UserAsserted => "user-asserted".to_string(),
        }
    }

    fn description(&self) -> String {
        match self {
            Hypothesis::Effective => "the class is that of an effective divisor".to_string(),
            Hypothesis::AvoidsGonalLocus(3) => "the divisor does not contain the trigonal locus".to_string(),
            Hypothesis::AvoidsGonalLocus(j) => format!("the divisor does not contain the {j}-gonal locus"),
            Hypothesis::SigmaGenericallyFinite => {
                "the source-curve map is generically finite onto the k-gonal locus".to_string()
            }
            Hypothesis::UserAsserted => "slope and avoidance supplied by the user".to_string(),
        }
    }
}

/// Rendered as `tag: description (assumed, not verified)`.
impl fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} (assumed, not verified)", self.tag(), self.description())
    }
}

impl FromStr for Hypothesis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let tag = s.split(':').next().unwrap_or_default().trim();
        match tag {
            "effective" => Ok(Hypothesis::Effective),
            "sigma-generically-finite" => Ok(Hypothesis::SigmaGenericallyFinite),
            "user-asserted" => Ok(Hypothesis::UserAsserted),
            _ => tag
                .strip_prefix("avoids-gonal-locus(")
                .and_then(|r| r.strip_suffix(')'))
                .and_then(|j| j.parse().ok())
                .map(Hypothesis::AvoidsGonalLocus)
                .ok_or_else(|| Error::Parse(format!("unknown hypothesis {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DivisorRecipe<T: Scalar = crate::Rational> {
    pub name: RecipeName,
    pub g: u32,
    pub class: DivisorClass<T>,
    pub slope: T,
    pub hypotheses: Vec<Hypothesis>,
    pub notes: Vec<String>,
}

impl<T: Scalar> DivisorRecipe<T> {
    fn build(
        name: RecipeName,
        class: DivisorClass<T>,
        hypotheses: Vec<Hypothesis>,
        notes: Vec<String>,
    ) -> Result<Self> {
        let SpaceDescriptor::Mg { g } = class.space() else {
            return input("recipes live on M_g");
        };
        let slope = slope(&class)?.ok_or_else(|| Error::Input(format!("recipe class on M_{g} has no slope")))?;
        Ok(DivisorRecipe { name, g, class, slope, hypotheses, notes })
    }

    /// A divisor of class `sλ - δ` whose effectivity and avoidance of the
    /// `k`-gonal locus are asserted by the caller.
    pub fn user_supplied(g: u32, k: u32, slope: T) -> Result<Self> {
        if slope <= T::zero() {
            return input("a user-supplied slope must be positive");
        }
        Self::build(
            RecipeName::UserSupplied,
            lambda_minus_delta(g, slope)?,
            vec![Hypothesis::Effective, Hypothesis::AvoidsGonalLocus(k), Hypothesis::UserAsserted],
            Vec::new(),
        )
    }

    pub fn avoids_gonality(&self, k: u32) -> bool {
        self.hypotheses.iter().any(|h| h.covers_gonality(k))
    }
}

/// The class `(7 + 6/g)λ - δ_0 - (5 - 6/g)δ_1 - δ_2 - ... - δ_⌊g/2⌋`.
fn hilbert2_normalized<T: Scalar>(g: u32) -> Result<DivisorClass<T>> {
    let gg = i64::from(g);
    let mut class = lambda_minus_delta(g, T::from_int(7) + T::from_ratio(6, gg))?;
    class.add_term(BasisLabel::Delta(1), T::from_int(-4) + T::from_ratio(6, gg))?;
    Ok(class)
}

/// Pullback of the Plücker polarization through the second Hilbert point,
/// computed on the pseudo-stable model as `C(g+1,2)((7+6/g)λ^ps - δ^ps)`.
pub fn hilbert2_class<T: Scalar>(g: u32) -> Result<DivisorRecipe<T>> {
    if g < 6 || g % 2 == 1 {
        return input(format!("the second Hilbert point divisor is built for even g >= 6, got {g}"));
    }
    let gg = i64::from(g);
    let binom = T::from_int(gg * (gg + 1) / 2);
    let ps = SpaceDescriptor::MgPseudoStable { g };
    let mut on_ps = DivisorClass::zero(ps)?;
    on_ps.add_term(BasisLabel::LambdaPs, T::from_int(7) + T::from_ratio(6, gg))?;
    for label in ps.basis().into_iter().filter(|l| *l != BasisLabel::LambdaPs) {
        on_ps.add_term(label, -T::one())?;
    }
    let class = phi_pullback(&on_ps.scale(&binom))?;

    let displayed = hilbert2_normalized::<T>(g)?.scale(&binom);
    if !same_class(&class, &displayed) {
        return Err(Error::Consistency(format!(
            "pseudo-stable pullback disagrees with the expanded class in genus {g}"
        )));
    }
    DivisorRecipe::build(
        RecipeName::Hilbert2Even,
        class,
        vec![Hypothesis::Effective, Hypothesis::AvoidsGonalLocus(3)],
        vec!["built as phi^*(C(g+1,2)((7+6/g)lambda_ps - delta_ps))".to_string()],
    )
}

fn same_class<T: Scalar>(a: &DivisorClass<T>, b: &DivisorClass<T>) -> bool {
    a.space() == b.space() && a.space().basis().into_iter().all(|l| a.get(l).same(&b.get(l)))
}

/// `π_*(j^*(D_{g+1}) · W_g)` for odd `g`, with `D_{g+1}` the normalized
/// second-Hilbert-point class of the even genus `g + 1`.
pub fn odd_pushforward_class<T: Scalar>(g: u32) -> Result<DivisorRecipe<T>> {
    if g < 5 || g % 2 == 0 {
        return input(format!("the pushforward divisor is built for odd g >= 5, got {g}"));
    }
    let even = hilbert2_normalized::<T>(g + 1)?;
    let product = multiply(&j_pullback(&even)?, &weierstrass_class(g)?)?;
    let class = pi_pushforward(&product)?;
    let recipe = DivisorRecipe::build(
        RecipeName::OddPushforward,
        class,
        vec![Hypothesis::Effective, Hypothesis::AvoidsGonalLocus(3)],
        vec![
            "pi_*(j^*(D_{g+1}) . W_g) with D_{g+1} = (7+6/(g+1))lambda - delta_0 - (5-6/(g+1))delta_1 - ...".to_string(),
            "the psi.lambda term contributes -(2g-2)(5-6/(g+1))lambda; the full expansion is used".to_string(),
        ],
    )?;
    let closed = closed_form_slope_odd::<T>(g)?;
    if !recipe.slope.same(&closed) {
        return Err(Error::Consistency(format!("pushforward slope differs from the closed form in genus {g}")));
    }
    Ok(recipe)
}

/// `2(7g⁴+43g³+7g²-7g-2) / (g(g+1)(g+3)(2g-1))`.
pub fn closed_form_slope_odd_polynomial<T: Scalar>(g: u32) -> T {
    let x = T::from_int(i64::from(g));
    let c = |n: i64| T::from_int(n);
    let x2 = x.clone() * x.clone();
    let x3 = x2.clone() * x.clone();
    let x4 = x3.clone() * x.clone();
    let numer = c(2) * (c(7) * x4 + c(43) * x3 + c(7) * x2 - c(7) * x.clone() - c(2));
    let denom = x.clone() * (x.clone() + c(1)) * (x.clone() + c(3)) * (c(2) * x - c(1));
    numer / denom
}

/// `7 + 6/(g+1) + (5g-1)(5g²-5g+4) / (g(g+3)(2g-1)(g+1))`.
pub fn closed_form_slope_odd_split<T: Scalar>(g: u32) -> T {
    let x = T::from_int(i64::from(g));
    let c = |n: i64| T::from_int(n);
    let tail_numer = (c(5) * x.clone() - c(1)) * (c(5) * x.clone() * x.clone() - c(5) * x.clone() + c(4));
    let tail_denom = x.clone() * (x.clone() + c(3)) * (c(2) * x.clone() - c(1)) * (x.clone() + c(1));
    c(7) + c(6) / (x + c(1)) + tail_numer / tail_denom
}

/// Slope of the odd-genus pushforward divisor; both closed forms are
/// evaluated and must agree.
pub fn closed_form_slope_odd<T: Scalar>(g: u32) -> Result<T> {
    if g < 5 || g % 2 == 0 {
        return input(format!("closed form is stated for odd g >= 5, got {g}"));
    }
    let poly = closed_form_slope_odd_polynomial::<T>(g);
    let split = closed_form_slope_odd_split::<T>(g);
    if !poly.same(&split) {
        return Err(Error::Consistency(format!("closed forms disagree at g = {g}")));
    }
    Ok(poly)
}

/// `(54/7)λ - δ` on `M_7`, from the first syzygy point.
pub fn syzygy_class_g7<T: Scalar>() -> Result<DivisorRecipe<T>> {
    DivisorRecipe::build(
        RecipeName::SyzygyG7,
        lambda_minus_delta(7, T::from_ratio(54, 7))?,
        vec![Hypothesis::Effective, Hypothesis::AvoidsGonalLocus(4)],
        vec!["normalized with multiplier 1; slope 54/7 = 7 + 5/7".to_string()],
    )
}

/// The built-in divisor of slope below 8 used for `(g, k)`, if any.
pub fn best_recipe<T: Scalar>(g: u32, k: u32) -> Result<Option<DivisorRecipe<T>>> {
    if g < 4 || k < 3 {
        return Ok(None);
    }
    let recipe = if g % 2 == 0 && g >= 8 {
        hilbert2_class(g)?
    } else if g % 2 == 1 && g >= 15 {
        odd_pushforward_class(g)?
    } else if (g, k) == (7, 4) {
        syzygy_class_g7()?
    } else {
        return Ok(None);
    };
    Ok(Some(recipe))
}
