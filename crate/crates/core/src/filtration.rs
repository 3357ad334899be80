//! Obstructions to good filtrations and good `(p,r)`-filtrations.
//!
//! The two decomposers are character-level necessary conditions: a
//! `Decomposed` verdict names the only multiset of sections a filtration
//! could have, it does not prove the filtration exists. The head test
//! works with cited radical layers and never affirms existence either.
//!
//! The head test encodes one inference. If a module has a good
//! `(p,r)`-filtration whose top section is its head and whose second
//! radical layer is `L(σ)^{(r)}`, the next section is `∇(μ)^{(r)}` for some
//! dominant `μ` with `p^r·μ ≤ ν` and `L(σ)` in the head of `∇(μ)`.

use std::sync::Arc;

use num_bigint::BigInt;
use serde::ser::{Serialize, Serializer};
use serde_json::{json, Value};

use crate::character::FormalCharacter;
use crate::error::{Error, Result};
use crate::expr::ModuleExpr;
use crate::modular::{steinberg_factorize, DecompositionTable, FactRegistry, SimpleFactor};
use crate::report::{big_json, weighted_list};
use crate::root_system::{RootSystem, Weight};
use crate::weyl::{greedy_decompose, weyl_character, TieBreak};

/// A candidate `μ` of the head test with the cited head of `∇(μ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeadCandidate {
    pub weight: Weight,
    pub head: Vec<SimpleFactor>,
    pub citation: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FiltrationVerdict {
    /// Non-negative coefficients recombining exactly to the input.
    Decomposed { terms: Vec<(Weight, BigInt)> },
    /// The first negative coefficient met by the greedy decomposition and
    /// the remainder at that moment.
    CharacterObstruction {
        weight: Weight,
        coefficient: BigInt,
        terms_so_far: Vec<(Weight, BigInt)>,
        remainder: FormalCharacter,
    },
    /// No candidate `∇(μ)` has `L(σ)` in its head.
    HeadObstruction {
        target: Weight,
        sigma: Weight,
        candidates: Vec<HeadCandidate>,
    },
    /// The test found no obstruction; `matches` lists the candidates whose
    /// heads contain `L(σ)`.
    Inconclusive {
        target: Weight,
        sigma: Weight,
        candidates: Vec<HeadCandidate>,
        matches: Vec<Weight>,
    },
}

impl FiltrationVerdict {
    pub fn status(&self) -> &'static str {
        match self {
            FiltrationVerdict::Decomposed { .. } => "Decomposed",
            FiltrationVerdict::CharacterObstruction { .. } => "CharacterObstruction",
            FiltrationVerdict::HeadObstruction { .. } => "HeadObstruction",
            FiltrationVerdict::Inconclusive { .. } => "Inconclusive",
        }
    }

    pub fn to_json(&self) -> Value {
        let candidates_json = |cs: &[HeadCandidate]| -> Value {
            cs.iter()
                .map(|c| {
                    json!({
                        "mu": c.weight,
                        "head": c.head.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
                        "citation": c.citation,
                    })
                })
                .collect()
        };
        match self {
            FiltrationVerdict::Decomposed { terms } => json!({
                "status": self.status(),
                "terms": weighted_list(terms),
            }),
            FiltrationVerdict::CharacterObstruction {
                weight,
                coefficient,
                terms_so_far,
                remainder,
            } => json!({
                "status": self.status(),
                "weight": weight,
                "coefficient": big_json(coefficient),
                "terms_so_far": weighted_list(terms_so_far),
                "remainder": remainder,
            }),
            FiltrationVerdict::HeadObstruction {
                target,
                sigma,
                candidates,
            } => json!({
                "status": self.status(),
                "target": target,
                "sigma": sigma,
                "candidates": candidates_json(candidates),
            }),
            FiltrationVerdict::Inconclusive {
                target,
                sigma,
                candidates,
                matches,
            } => json!({
                "status": self.status(),
                "target": target,
                "sigma": sigma,
                "candidates": candidates_json(candidates),
                "matches": matches,
            }),
        }
    }
}

impl Serialize for FiltrationVerdict {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

fn greedy_verdict<F>(c: &FormalCharacter, basis: F) -> Result<FiltrationVerdict>
where
    F: FnMut(&Weight) -> Result<FormalCharacter>,
{
    if !c.is_weyl_invariant() {
        return Err(Error::NotInvariant);
    }
    let out = greedy_decompose(c, basis, TieBreak::First, true)?;
    Ok(match out.first_negative {
        Some((weight, coefficient, remainder)) => FiltrationVerdict::CharacterObstruction {
            weight,
            coefficient,
            terms_so_far: out.terms,
            remainder,
        },
        None => FiltrationVerdict::Decomposed { terms: out.terms },
    })
}

/// Greedy decomposition in the Weyl basis, stopping at the first negative
/// coefficient.
pub fn good_filtration_decompose(rs: &Arc<RootSystem>, c: &FormalCharacter) -> Result<FiltrationVerdict> {
    if c.root_system() != rs {
        return Err(Error::MixedRootSystem);
    }
    greedy_verdict(c, |mu| weyl_character(rs, mu))
}

/// Greedy decomposition in the basis `ch ∇^{(p,r)}(λ)`, stopping at the
/// first negative coefficient.
pub fn good_pr_filtration_decompose(
    c: &FormalCharacter,
    p: u64,
    r: u32,
    table: &DecompositionTable,
) -> Result<FiltrationVerdict> {
    if p != table.p() {
        return Err(Error::MissingData(format!("no decomposition data for p = {p}")));
    }
    if c.root_system() != table.root_system() {
        return Err(Error::MixedRootSystem);
    }
    greedy_verdict(c, |mu| table.pr_standard_character(mu, r))
}

/// All dominant `μ` with `p^r·μ ≤ nu`, lexicographic.
pub fn head_candidates(rs: &RootSystem, nu: &Weight, p: u64, r: u32) -> Result<Vec<Weight>> {
    rs.check_rank(nu)?;
    let q = p
        .checked_pow(r)
        .and_then(|q| i64::try_from(q).ok())
        .ok_or_else(|| Error::Overflow(format!("{p}^{r}")))?;
    let n = rs.rank();
    let bounds: Vec<i64> = (0..n).map(|j| rs.dominated_box_bound(nu, q, j)).collect();
    let mut out = Vec::new();
    let mut mu = vec![0i64; n];
    loop {
        let w = Weight::new(mu.clone());
        if rs.dominance_leq(&w.scale(q), nu) {
            out.push(w);
        }
        let mut k = n;
        loop {
            if k == 0 {
                out.sort();
                return Ok(out);
            }
            k -= 1;
            mu[k] += 1;
            if mu[k] <= bounds[k] {
                break;
            }
            mu[k] = 0;
        }
    }
}

/// Looks up the cited head of every candidate `∇(μ)` and reports whether
/// `L(sigma)` occurs in any of them.
pub fn head_obstruction_check(
    rs: &RootSystem,
    nu: &Weight,
    sigma: &Weight,
    p: u64,
    r: u32,
    registry: &FactRegistry,
) -> Result<FiltrationVerdict> {
    rs.check_rank(sigma)?;
    let mut candidates = Vec::new();
    let mut matches = Vec::new();
    for mu in head_candidates(rs, nu, p, r)? {
        let fact = registry
            .head(&ModuleExpr::Costandard(mu.clone()))
            .ok_or_else(|| Error::MissingData(format!("head of ∇{mu}")))?;
        if fact.factors.iter().any(|f| &f.highest_weight(p) == sigma) {
            matches.push(mu.clone());
        }
        candidates.push(HeadCandidate {
            weight: mu,
            head: fact.factors.clone(),
            citation: fact.citation.clone(),
        });
    }
    let target = nu.clone();
    let sigma = sigma.clone();
    Ok(if matches.is_empty() {
        FiltrationVerdict::HeadObstruction {
            target,
            sigma,
            candidates,
        }
    } else {
        FiltrationVerdict::Inconclusive {
            target,
            sigma,
            candidates,
            matches,
        }
    })
}

/// The factors `L(w)^{(t)}` whose highest weight `p^t·w` has restricted
/// part `(p^r − 1)ρ`, i.e. those in the Steinberg block.
pub fn steinberg_block_factors(
    rs: &RootSystem,
    factors: &[(Weight, u32)],
    p: u64,
    r: u32,
) -> Result<Vec<(Weight, u32)>> {
    let q = p.pow(r) as i64;
    let st = rs.rho().scale(q - 1);
    let mut out = Vec::new();
    for (w, t) in factors {
        let hw = w.scale(p.pow(*t) as i64);
        if steinberg_factorize(&hw, p, r)?.0 == st {
            out.push((w.clone(), *t));
        }
    }
    Ok(out)
}
