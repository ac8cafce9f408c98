//! Bigness certificates for the canonical class of the Hurwitz space.
//!
//! Given an effective divisor `D` on `M_g` with slope `s < 8` that avoids
//! the `k`-gonal locus, `σ^*(sλ - δ)` is effective on the Hurwitz space and
//! the canonical class decomposes as
//!
//! ```text
//!     K = α · b^*(κ_1) + σ^*(sλ - δ) + E
//! ```
//!
//! with `E` an effective boundary combination. The engine checks this
//! coefficient by coefficient on every `E_{i:mu}`, using lower bounds for
//! the multiplicity of `E_{i:mu}` in `σ^*(δ)`. For the coarse space the
//! check is done against `σ^*(8λ - δ)` instead.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{input, Error, Result};
use crate::hurwitz::{
    canonical_coarse, canonical_stack, coarse_correction, has_branch_component, hodge_class, kappa1_pullback,
    BoundaryIndex, HurwitzClass,
};
use crate::low_slope::{best_recipe, DivisorRecipe, Hypothesis, RecipeName};
use crate::partitions::{boundary_index_set, branch_point_count};
use crate::scalar::Scalar;
use crate::Rational;

pub const MAX_SCAN_GENUS: u32 = 60;
pub const MAX_SCAN_DEGREE: u32 = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundJustification {
    /// General covers in `E_{i:(1^k)}` have a two-nodal source.
    TwoNodes,
    /// The source of a general cover in `E_{i:(2,1^{k-2})}` is nodal.
    OneNode,
    /// No positivity is claimed.
    None,
    /// Two-node count on a branch component of the stack-to-coarse map.
    BranchComponentTwoNodes,
}

impl fmt::Display for BoundJustification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundJustification::TwoNodes => "two-nodes",
            BoundJustification::OneNode => "one-node",
            BoundJustification::None => "none",
            BoundJustification::BranchComponentTwoNodes => "branch-component-two-nodes",
        })
    }
}

/// Lower bound for the coefficient of `E_{i:mu}` in `σ^*(δ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaDeltaBound {
    pub index: BoundaryIndex,
    pub bound: u32,
    pub justification: BoundJustification,
}

pub fn sigma_delta_lower_bound(index: &BoundaryIndex, coarse_branch_context: bool) -> SigmaDeltaBound {
    let (bound, justification) = if index.mu.is_all_ones() {
        (2, BoundJustification::TwoNodes)
    } else if index.mu.two_cycle_count() == Some(1) {
        if coarse_branch_context {
            (2, BoundJustification::BranchComponentTwoNodes)
        } else {
            (1, BoundJustification::OneNode)
        }
    } else {
        (0, BoundJustification::None)
    };
    SigmaDeltaBound { index: index.unprimed(), bound, justification }
}

fn check_index(g: u32, k: u32, index: &BoundaryIndex) -> Result<i64> {
    let b = branch_point_count(g, k)?;
    if index.mu.weight() != k || index.i < 2 || index.i > b / 2 {
        return input(format!("{index} is not a boundary index of H_{g}^{k}"));
    }
    if !crate::partitions::transposition_feasible(&index.mu, index.i) {
        return input(format!("{index} is not feasible"));
    }
    Ok(i64::from(b))
}

/// `(1 - s/8) m i(b-i)/(b-1) - m - 1 + σ + (s/12) m (k - 1/mu)` with the
/// stack lower bound `σ` for `σ^*(δ)`.
pub fn stack_inequality_lhs<T: Scalar>(g: u32, k: u32, s: &T, index: &BoundaryIndex) -> Result<T> {
    let b = check_index(g, k, index)?;
    if *s <= T::zero() || *s > T::from_int(8) {
        return input("slope must satisfy 0 < s <= 8");
    }
    let i = i64::from(index.i);
    let m = T::from_int(index.mu.lcm() as i64);
    let sigma = T::from_int(i64::from(sigma_delta_lower_bound(index, false).bound));
    let k_minus = T::from_int(i64::from(k)) - index.mu.harmonic_inverse::<T>();
    let first = (T::one() - s.clone() / T::from_int(8)) * m.clone() * T::from_ratio(i * (b - i), b - 1);
    let last = s.clone() / T::from_int(12) * m.clone() * k_minus;
    Ok(first - m - T::one() + sigma + last)
}

/// `σ^*(δ)` coefficient, `♯` indicator and margin of the coarse inequality at `s = 8`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoarseTerms<T> {
    pub sharp: u32,
    pub sigma: SigmaDeltaBound,
    pub lhs: T,
}

/// `-m - 1 + σ + (8/12) m (k - 1/mu) - ♯`.
pub fn coarse_inequality_terms<T: Scalar>(g: u32, k: u32, index: &BoundaryIndex) -> Result<CoarseTerms<T>> {
    check_index(g, k, index)?;
    let sharp = u32::from(has_branch_component(index));
    let sigma = sigma_delta_lower_bound(index, sharp == 1);
    let m = T::from_int(index.mu.lcm() as i64);
    let k_minus = T::from_int(i64::from(k)) - index.mu.harmonic_inverse::<T>();
    let lhs = -m.clone() - T::one() + T::from_int(i64::from(sigma.bound)) + T::from_ratio(2, 3) * m * k_minus
        - T::from_int(i64::from(sharp));
    Ok(CoarseTerms { sharp, sigma, lhs })
}

pub fn coarse_inequality_lhs<T: Scalar>(g: u32, k: u32, index: &BoundaryIndex) -> Result<T> {
    Ok(coarse_inequality_terms(g, k, index)?.lhs)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    Stack,
    Coarse,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Stack => "stack",
            Mode::Coarse => "coarse",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "stack" => Ok(Mode::Stack),
            "coarse" => Ok(Mode::Coarse),
            _ => Err(Error::Parse(format!("unknown mode {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Verdict {
    Certified,
    Failed,
    NoDivisor,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Certified => "Certified",
            Verdict::Failed => "Failed",
            Verdict::NoDivisor => "NoDivisor",
        })
    }
}

impl FromStr for Verdict {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Certified" => Ok(Verdict::Certified),
            "Failed" => Ok(Verdict::Failed),
            "NoDivisor" => Ok(Verdict::NoDivisor),
            _ => Err(Error::Parse(format!("unknown verdict {s:?}"))),
        }
    }
}

pub const NOTE_ABSORBED: &str = "absorbed by ample term";

#[derive(Debug, Clone, PartialEq)]
pub struct IndexMargin {
    pub index: BoundaryIndex,
    pub margin: Rational,
    pub sigma_bound: u32,
    pub sharp: u32,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BignessCertificate {
    pub g: u32,
    pub k: u32,
    pub mode: Mode,
    /// Slope at which the inequalities were evaluated (8 in coarse mode).
    pub slope: Rational,
    pub recipe: Option<RecipeName>,
    pub recipe_slope: Option<Rational>,
    pub alpha: Rational,
    pub indices: Vec<IndexMargin>,
    pub hypotheses: Vec<Hypothesis>,
    pub notes: Vec<String>,
    pub verdict: Verdict,
}

impl BignessCertificate {
    pub fn no_divisor(g: u32, k: u32, mode: Mode) -> Self {
        BignessCertificate {
            g,
            k,
            mode,
            slope: Rational::from_int(8),
            recipe: None,
            recipe_slope: None,
            alpha: Rational::from_int(0),
            indices: Vec::new(),
            hypotheses: Vec::new(),
            notes: vec!["no built-in divisor of slope < 8 avoiding the gonality locus".to_string()],
            verdict: Verdict::NoDivisor,
        }
    }

    pub fn min_margin(&self) -> Option<&Rational> {
        self.indices.iter().map(|m| &m.margin).min()
    }
}

fn check_recipe(g: u32, k: u32, recipe: &DivisorRecipe) -> Result<()> {
    if recipe.g != g {
        return input(format!("recipe is a divisor on M_{}, certificate requested for genus {g}", recipe.g));
    }
    if recipe.slope >= Rational::from_int(8) {
        return Err(Error::Hypothesis(format!("divisor slope {} is not below 8", recipe.slope)));
    }
    if recipe.slope <= Rational::from_int(0) {
        return Err(Error::Hypothesis(format!("divisor slope {} is not positive", recipe.slope)));
    }
    if !recipe.avoids_gonality(k) {
        return Err(Error::Hypothesis(format!("the divisor is not known to avoid the {k}-gonal locus")));
    }
    Ok(())
}

/// Minimum of `margin / b^*(κ_1)` over all indices.
fn ample_coefficient(kappa: &HurwitzClass, margins: &[IndexMargin]) -> Rational {
    margins
        .iter()
        .map(|m| &m.margin / kappa.get(&m.index))
        .min()
        .unwrap_or_else(|| Rational::from_int(0))
}

fn sigma_note(bound: &SigmaDeltaBound) -> Option<String> {
    match bound.justification {
        BoundJustification::None => None,
        j => Some(format!("sigma^*(delta) >= {} asserted ({j})", bound.bound)),
    }
}

/// Stack certificate at the recipe's slope.
///
/// Each margin is computed twice: from the class tables as
/// `K - s·λ + σ`, and from the closed per-index inequality; the two must agree.
pub fn verify_stack(g: u32, k: u32, recipe: &DivisorRecipe) -> Result<BignessCertificate> {
    check_recipe(g, k, recipe)?;
    let s = recipe.slope.clone();
    let canonical: HurwitzClass = canonical_stack(g, k)?;
    let hodge: HurwitzClass = hodge_class(g, k)?;
    let kappa: HurwitzClass = kappa1_pullback(g, k)?;

    let mut indices = Vec::new();
    for index in boundary_index_set(g, k)? {
        let sigma = sigma_delta_lower_bound(&index, false);
        let from_classes = canonical.get(&index) - &s * hodge.get(&index) + Rational::from_int(i64::from(sigma.bound));
        let from_formula = stack_inequality_lhs(g, k, &s, &index)?;
        if from_classes != from_formula {
            return Err(Error::Consistency(format!("stack margin mismatch at {index}")));
        }
        indices.push(IndexMargin {
            note: sigma_note(&sigma),
            index,
            margin: from_formula,
            sigma_bound: sigma.bound,
            sharp: 0,
        });
    }
    let alpha = ample_coefficient(&kappa, &indices);
    let non_negative = indices.iter().all(|m| m.margin >= Rational::from_int(0));
    let verdict = if non_negative && alpha > Rational::from_int(0) { Verdict::Certified } else { Verdict::Failed };
    Ok(BignessCertificate {
        g,
        k,
        mode: Mode::Stack,
        slope: s.clone(),
        recipe: Some(recipe.name),
        recipe_slope: Some(s),
        alpha,
        indices,
        hypotheses: recipe.hypotheses.clone(),
        notes: vec![
            "K = alpha*b^*(kappa_1) + sigma^*(s*lambda - delta) + E, checked on every E_{i:mu}".to_string(),
            "margins use lower bounds for sigma^*(delta); each is checked directly, not through a reduced closed form"
                .to_string(),
        ],
        verdict,
    })
}

/// Degrees for which `σ^*(8λ - δ)` is big on the coarse space.
pub fn coarse_range_ok(g: u32, k: u32) -> bool {
    k >= 3 && 2 * k <= g + 2
}

/// Coarse certificate: margins of `K_coarse - σ^*(8λ - δ)`, evaluated at the
/// limiting slope 8. Requires `3 <= k <= (g+2)/2`.
pub fn verify_coarse(g: u32, k: u32, recipe: &DivisorRecipe) -> Result<BignessCertificate> {
    if !coarse_range_ok(g, k) {
        return Err(Error::Hypothesis(format!("coarse certificate needs 3 <= k <= (g+2)/2, got g={g}, k={k}")));
    }
    check_recipe(g, k, recipe)?;
    let eight = Rational::from_int(8);
    let canonical: HurwitzClass = canonical_coarse(g, k)?;
    let correction: HurwitzClass = coarse_correction(g, k)?;
    let hodge: HurwitzClass = hodge_class(g, k)?;
    let kappa: HurwitzClass = kappa1_pullback(g, k)?;

    let mut indices = Vec::new();
    for index in boundary_index_set(g, k)? {
        let terms = coarse_inequality_terms::<Rational>(g, k, &index)?;
        let sharp_from_class = -correction.total_coefficient(&index);
        if sharp_from_class != Rational::from_int(i64::from(terms.sharp)) {
            return Err(Error::Consistency(format!("branch indicator mismatch at {index}")));
        }
        let from_classes = canonical.total_coefficient(&index) - &eight * hodge.get(&index)
            + Rational::from_int(i64::from(terms.sigma.bound));
        if from_classes != terms.lhs {
            return Err(Error::Consistency(format!("coarse margin mismatch at {index}")));
        }
        let note = if terms.lhs == Rational::from_int(0) { Some(NOTE_ABSORBED.to_string()) } else { sigma_note(&terms.sigma) };
        indices.push(IndexMargin { index, margin: terms.lhs, sigma_bound: terms.sigma.bound, sharp: terms.sharp, note });
    }
    let alpha = ample_coefficient(&kappa, &indices);
    let verdict =
        if indices.iter().all(|m| m.margin >= Rational::from_int(0)) { Verdict::Certified } else { Verdict::Failed };
    let mut hypotheses = recipe.hypotheses.clone();
    hypotheses.push(Hypothesis::SigmaGenericallyFinite);
    Ok(BignessCertificate {
        g,
        k,
        mode: Mode::Coarse,
        slope: eight,
        recipe: Some(recipe.name),
        recipe_slope: Some(recipe.slope.clone()),
        alpha,
        indices,
        hypotheses,
        notes: vec![
            "checks K_coarse - sigma^*(8*lambda - delta) >= 0; sigma^*(8*lambda - delta) is big for k <= (g+2)/2"
                .to_string(),
            "evaluated at the limiting slope 8; zero margins are absorbed by the ample term".to_string(),
        ],
        verdict,
    })
}

/// Coarse status in a scan row.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoarseStatus {
    Verdict(Verdict),
    OutOfRange,
}

impl fmt::Display for CoarseStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoarseStatus::Verdict(v) => v.fmt(f),
            CoarseStatus::OutOfRange => f.write_str("OutOfRange"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanRow {
    pub g: u32,
    pub k: u32,
    pub recipe: Option<RecipeName>,
    pub slope: Option<Rational>,
    pub stack: BignessCertificate,
    pub coarse: Option<BignessCertificate>,
}

impl ScanRow {
    pub fn coarse_status(&self) -> CoarseStatus {
        match &self.coarse {
            Some(c) => CoarseStatus::Verdict(c.verdict),
            None => CoarseStatus::OutOfRange,
        }
    }
}

pub fn scan_cell(g: u32, k: u32) -> Result<ScanRow> {
    branch_point_count(g, k)?;
    let coarse_in_range = coarse_range_ok(g, k);
    let Some(recipe) = best_recipe::<Rational>(g, k)? else {
        return Ok(ScanRow {
            g,
            k,
            recipe: None,
            slope: None,
            stack: BignessCertificate::no_divisor(g, k, Mode::Stack),
            coarse: coarse_in_range.then(|| BignessCertificate::no_divisor(g, k, Mode::Coarse)),
        });
    };
    let stack = verify_stack(g, k, &recipe)?;
    let coarse = if coarse_in_range { Some(verify_coarse(g, k, &recipe)?) } else { None };
    Ok(ScanRow { g, k, recipe: Some(recipe.name), slope: Some(recipe.slope), stack, coarse })
}

/// Rows ordered by `(k, g)`. Cells are evaluated on a pool of `jobs`
/// threads (default: available parallelism); the order does not depend on it.
pub fn scan(
    k_range: std::ops::RangeInclusive<u32>,
    g_range: std::ops::RangeInclusive<u32>,
    jobs: Option<usize>,
) -> Result<Vec<ScanRow>> {
    if k_range.clone().any(|k| !(3..=MAX_SCAN_DEGREE).contains(&k)) {
        return input(format!("scan degrees must lie in 3..={MAX_SCAN_DEGREE}"));
    }
    if g_range.clone().any(|g| !(2..=MAX_SCAN_GENUS).contains(&g)) {
        return input(format!("scan genera must lie in 2..={MAX_SCAN_GENUS}"));
    }
    let cells: Vec<(u32, u32)> = k_range.flat_map(|k| g_range.clone().map(move |g| (g, k))).collect();
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = jobs {
        builder = builder.num_threads(n.max(1));
    }
    let pool = builder.build().map_err(|e| Error::Resource(format!("cannot start worker pool: {e}")))?;
    pool.install(|| cells.par_iter().map(|&(g, k)| scan_cell(g, k)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::low_slope::{hilbert2_class, odd_pushforward_class, syzygy_class_g7};
    use crate::partitions::Partition;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    fn ix(i: u32, parts: &[u32]) -> BoundaryIndex {
        BoundaryIndex::new(i, Partition::new(parts.to_vec()).unwrap())
    }

    #[test]
    fn sigma_bounds() {
        assert_eq!(sigma_delta_lower_bound(&ix(2, &[1, 1, 1]), false).bound, 2);
        assert_eq!(sigma_delta_lower_bound(&ix(2, &[1, 1, 1]), true).bound, 2);
        assert_eq!(sigma_delta_lower_bound(&ix(3, &[2, 1]), false).bound, 1);
        assert_eq!(sigma_delta_lower_bound(&ix(3, &[2, 1]), true).bound, 2);
        assert_eq!(sigma_delta_lower_bound(&ix(2, &[2, 2, 1]), false).bound, 0);
        assert_eq!(sigma_delta_lower_bound(&ix(2, &[3]), false).bound, 0);
    }

    #[test]
    fn stack_lhs_examples() {
        // (1^k) at s = 8 cancels exactly
        assert_eq!(stack_inequality_lhs(5, 4, &q(8, 1), &ix(4, &[1, 1, 1, 1])).unwrap(), q(0, 1));
        // b = 20, minimal i = 3 for (2,1): (8-s)(b-4)/(2(b-1))
        let v = stack_inequality_lhs(8, 3, &q(31, 4), &ix(3, &[2, 1])).unwrap();
        assert_eq!(v, q(51, 304) + q(31, 16) - q(2, 1));
        assert_eq!(v, q(2, 19));
        assert!(stack_inequality_lhs(8, 3, &q(9, 1), &ix(3, &[2, 1])).is_err());
        assert!(stack_inequality_lhs(8, 3, &q(31, 4), &ix(2, &[2, 1])).is_err());
    }

    #[test]
    fn coarse_lhs_examples() {
        assert_eq!(coarse_inequality_lhs::<Rational>(8, 3, &ix(3, &[2, 1])).unwrap(), q(0, 1));
        assert_eq!(coarse_inequality_lhs::<Rational>(10, 5, &ix(2, &[2, 2, 1])).unwrap(), q(0, 1));
        assert_eq!(coarse_inequality_lhs::<Rational>(12, 6, &ix(3, &[2, 2, 2])).unwrap(), q(2, 1));
    }

    #[test]
    fn certificates_for_built_in_recipes() {
        let c = verify_stack(8, 3, &hilbert2_class(8).unwrap()).unwrap();
        assert_eq!(c.verdict, Verdict::Certified);
        assert!(c.alpha > q(0, 1));
        let c = verify_stack(15, 3, &odd_pushforward_class(15).unwrap()).unwrap();
        assert_eq!(c.verdict, Verdict::Certified);
        let c = verify_stack(7, 4, &syzygy_class_g7().unwrap()).unwrap();
        assert_eq!(c.verdict, Verdict::Certified);
    }

    #[test]
    fn coarse_certificates() {
        let c = verify_coarse(8, 3, &hilbert2_class(8).unwrap()).unwrap();
        assert_eq!(c.verdict, Verdict::Certified);
        assert!(c.indices.iter().any(|m| m.index.mu == Partition::new(vec![2, 1]).unwrap() && m.margin == q(0, 1)));
        assert!(c.hypotheses.contains(&Hypothesis::SigmaGenericallyFinite));
        let c = verify_coarse(16, 9, &hilbert2_class(16).unwrap()).unwrap();
        assert_eq!(c.verdict, Verdict::Certified);
        assert!(matches!(verify_coarse(8, 6, &hilbert2_class(8).unwrap()), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn hypothesis_errors() {
        let high = DivisorRecipe::user_supplied(13, 3, odd_pushforward_class::<Rational>(13).unwrap().slope).unwrap();
        assert!(matches!(verify_stack(13, 3, &high), Err(Error::Hypothesis(_))));
        // syzygy divisor avoids the 4-gonal locus only
        assert!(matches!(verify_stack(7, 3, &syzygy_class_g7().unwrap()), Err(Error::Hypothesis(_))));
        assert!(matches!(verify_stack(9, 3, &hilbert2_class(8).unwrap()), Err(Error::Input(_))));
    }

    #[test]
    #[allow(clippy::reversed_empty_ranges)]
    fn scan_matches_expected_cells() {
        let rows = scan(3..=3, 6..=20, Some(2)).unwrap();
        let certified: Vec<u32> =
            rows.iter().filter(|r| r.stack.verdict == Verdict::Certified).map(|r| r.g).collect();
        assert_eq!(certified, vec![8, 10, 12, 14, 15, 16, 17, 18, 19, 20]);
        let g13 = rows.iter().find(|r| r.g == 13).unwrap();
        assert_eq!(g13.stack.verdict, Verdict::NoDivisor);
        assert!(scan(4..=3, 6..=8, None).unwrap().is_empty());
        assert!(scan(3..=11, 6..=8, None).is_err());
    }
}
