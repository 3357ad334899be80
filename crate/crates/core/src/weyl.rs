//! Weyl characters χ(λ) = ch ∇(λ) = ch Δ(λ) and decomposition of
//! characters in the Weyl basis.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::character::{FormalCharacter, Terms};
use crate::error::{Error, Result};
use crate::root_system::{RootSystem, Weight};

/// Dimension of ∇(lam) by the Weyl product formula.
pub fn weyl_dimension(rs: &RootSystem, lam: &Weight) -> Result<BigInt> {
    rs.check_rank(lam)?;
    if !lam.is_dominant() {
        return Err(Error::NotDominant(lam.clone()));
    }
    Ok(rs.weyl_dimension_product(lam))
}

/// The Weyl character χ(lam), computed once per root system and weight.
pub fn weyl_character(rs: &Arc<RootSystem>, lam: &Weight) -> Result<FormalCharacter> {
    rs.check_rank(lam)?;
    if !lam.is_dominant() {
        return Err(Error::NotDominant(lam.clone()));
    }
    // The lock is held across the computation so each key is built once.
    let mut cache = rs.weyl_cache.lock().unwrap_or_else(|e| e.into_inner());
    let terms = match cache.get(lam) {
        Some(t) => t.clone(),
        None => {
            let t = Arc::new(freudenthal(rs, lam));
            cache.insert(lam.clone(), t.clone());
            t
        }
    };
    drop(cache);
    Ok(FormalCharacter::from_terms(rs, (*terms).clone()))
}

/// Freudenthal's recursion over the dominant weights below `lam`, top down,
/// followed by orbit expansion.
fn freudenthal(rs: &RootSystem, lam: &Weight) -> Terms {
    let mut dominant = rs.dominant_weights_below(lam);
    dominant.sort_by_key(|(_, depth)| depth.iter().sum::<i64>());

    let rho = rs.rho();
    let top = lam + rho;
    let top_norm = rs.form(&top, &top);
    let roots: Vec<Weight> = rs
        .positive_roots()
        .iter()
        .map(|r| rs.root_to_weight(r))
        .collect();

    let mut mult: HashMap<Weight, BigInt> = HashMap::with_capacity(dominant.len());
    let weights_below: std::collections::HashSet<&Weight> =
        dominant.iter().map(|(w, _)| w).collect();

    for (mu, _) in &dominant {
        if mu == lam {
            mult.insert(mu.clone(), BigInt::one());
            continue;
        }
        let mut num = BigInt::zero();
        for alpha in &roots {
            let mut shifted = mu + alpha;
            loop {
                let rep = rs.dominant_representative(&shifted);
                if !weights_below.contains(&rep) {
                    break;
                }
                let m = mult
                    .get(&rep)
                    .expect("higher dominant weights are processed first");
                num += m * BigInt::from(rs.form(&shifted, alpha));
                shifted = &shifted + alpha;
            }
        }
        num *= 2;
        let shifted_mu = mu + rho;
        let den = BigInt::from(top_norm - rs.form(&shifted_mu, &shifted_mu));
        assert!(den.is_positive(), "Freudenthal denominator must be positive");
        let (q, r) = num.div_rem(&den);
        assert!(r.is_zero(), "Freudenthal quotient must be exact at {mu}");
        mult.insert(mu.clone(), q);
    }

    let mut terms = Terms::new();
    for (mu, m) in mult {
        if m.is_zero() {
            continue;
        }
        for x in rs.weyl_orbit(&mu) {
            terms.insert(x, m.clone());
        }
    }
    terms
}

/// Which of several incomparable dominance-maximal weights the greedy
/// decomposer processes next. The result does not depend on it.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum TieBreak {
    /// Lexicographically smallest maximal weight.
    #[default]
    First,
    /// Lexicographically largest maximal weight.
    Last,
    /// Index into the lexicographic list of maxima, modulo its length.
    Index(usize),
}

impl TieBreak {
    fn pick<'a, T>(&self, items: &'a [T]) -> &'a T {
        match *self {
            TieBreak::First => &items[0],
            TieBreak::Last => &items[items.len() - 1],
            TieBreak::Index(k) => &items[k % items.len()],
        }
    }
}

/// Outcome of greedy subtraction against a unitriangular basis.
#[derive(Clone, Debug)]
pub(crate) struct GreedyOutcome {
    pub terms: Vec<(Weight, BigInt)>,
    pub remainder: FormalCharacter,
    /// Set when decomposition stopped at the first negative coefficient:
    /// the weight, its coefficient and the remainder just before it.
    pub first_negative: Option<(Weight, BigInt, FormalCharacter)>,
}

/// Repeatedly removes a dominance-maximal dominant weight `μ` with
/// multiplicity `m` by subtracting `m·basis(μ)`. Every basis element must
/// have highest weight `μ` with multiplicity one.
pub(crate) fn greedy_decompose<F>(
    c: &FormalCharacter,
    mut basis: F,
    tie: TieBreak,
    stop_on_negative: bool,
) -> Result<GreedyOutcome>
where
    F: FnMut(&Weight) -> Result<FormalCharacter>,
{
    let mut remainder = c.clone();
    let mut terms: Vec<(Weight, BigInt)> = Vec::new();
    let mut first_negative = None;
    loop {
        let lead = remainder.dominant_leading_weights();
        if lead.is_empty() {
            break;
        }
        let (mu, m) = tie.pick(&lead).clone();
        if m.is_negative() && first_negative.is_none() {
            first_negative = Some((mu.clone(), m.clone(), remainder.clone()));
            if stop_on_negative {
                break;
            }
        }
        let b = basis(&mu)?;
        debug_assert_eq!(b.multiplicity(&mu), BigInt::one());
        remainder.add_scaled(&-m.clone(), &b)?;
        terms.push((mu, m));
    }
    terms.sort();
    Ok(GreedyOutcome {
        terms,
        remainder,
        first_negative,
    })
}

/// Coefficients of a character in the basis {χ(λ)}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylBasisDecomposition {
    /// `(λ, coefficient)`, lexicographic in λ; coefficients may be negative.
    pub terms: Vec<(Weight, BigInt)>,
    /// Empty whenever the input lies in the span of the Weyl characters.
    pub residual: FormalCharacter,
}

impl WeylBasisDecomposition {
    pub fn is_nonnegative(&self) -> bool {
        self.terms.iter().all(|(_, m)| !m.is_negative())
    }

    /// Σ coeff·χ(λ) + residual.
    pub fn recombine(&self, rs: &Arc<RootSystem>) -> Result<FormalCharacter> {
        let mut out = self.residual.clone();
        for (lam, m) in &self.terms {
            out.add_scaled(m, &weyl_character(rs, lam)?)?;
        }
        Ok(out)
    }

    pub fn coefficient(&self, lam: &Weight) -> BigInt {
        self.terms
            .iter()
            .find(|(w, _)| w == lam)
            .map(|(_, m)| m.clone())
            .unwrap_or_default()
    }
}

impl Serialize for WeylBasisDecomposition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        crate::report::weighted_list(&self.terms).serialize(s)
    }
}

pub fn decompose_weyl_basis(
    rs: &Arc<RootSystem>,
    c: &FormalCharacter,
) -> Result<WeylBasisDecomposition> {
    decompose_weyl_basis_with(rs, c, TieBreak::First)
}

pub fn decompose_weyl_basis_with(
    rs: &Arc<RootSystem>,
    c: &FormalCharacter,
    tie: TieBreak,
) -> Result<WeylBasisDecomposition> {
    if c.root_system() != rs {
        return Err(Error::MixedRootSystem);
    }
    if !c.is_weyl_invariant() {
        return Err(Error::NotInvariant);
    }
    let out = greedy_decompose(c, |mu| weyl_character(rs, mu), tie, false)?;
    Ok(WeylBasisDecomposition {
        terms: out.terms,
        residual: out.remainder,
    })
}
