//! Dimensions of the projective indecomposable `G_1`-modules `Q_1(λ)`,
//! solved from cited decompositions of `St ⊗ L(λ)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::expr::ModuleExpr;
use crate::root_system::{RootSystem, Weight};

/// One linear identity `lhs = Σ coeff·dim Q_1(μ) + known` read off a fact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PimIdentity {
    pub subject: String,
    pub lhs: BigInt,
    pub unknowns: BTreeMap<Weight, u64>,
    pub known: BigInt,
}

/// Which PIM, if any, a summand names. `St` is `Q_1((p-1)ρ)`.
pub fn pim_weight(rs: &RootSystem, p: u64, e: &ModuleExpr) -> Option<Weight> {
    match e {
        ModuleExpr::Pim { r: 1, weight } => Some(weight.clone()),
        ModuleExpr::Steinberg { r: 1 } => Some(rs.rho().scale(p as i64 - 1)),
        _ => None,
    }
}

/// Builds one identity per `G_1` isomorphism. `dim_of` supplies the
/// dimensions of subjects and of summands that are not PIMs.
pub fn pim_identities<'a, I, F>(rs: &RootSystem, p: u64, isos: I, mut dim_of: F) -> Result<Vec<PimIdentity>>
where
    I: IntoIterator<Item = (&'a str, &'a ModuleExpr, &'a [(ModuleExpr, u64)])>,
    F: FnMut(&ModuleExpr) -> Result<BigInt>,
{
    let mut out = Vec::new();
    for (text, subject, summands) in isos {
        let lhs = dim_of(subject)?;
        let mut unknowns: BTreeMap<Weight, u64> = BTreeMap::new();
        let mut known = BigInt::zero();
        for (e, m) in summands {
            match pim_weight(rs, p, e) {
                Some(w) => *unknowns.entry(w).or_default() += m,
                None => known += dim_of(e)? * BigInt::from(*m),
            }
        }
        out.push(PimIdentity {
            subject: text.to_string(),
            lhs,
            unknowns,
            known,
        });
    }
    Ok(out)
}

/// Solves the identities for `dim Q_1(λ)`, `λ ∈ X_1`, by exact elimination.
/// The system must determine every unknown, agree with every identity and
/// give positive integers.
pub fn solve_pim_dimensions(rs: &RootSystem, p: u64, ids: &[PimIdentity]) -> Result<BTreeMap<Weight, BigInt>> {
    let vars = rs.restricted_weights(p, 1);
    let index: BTreeMap<&Weight, usize> = vars.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let n = vars.len();
    let mut rows: Vec<Vec<BigRational>> = Vec::with_capacity(ids.len());
    for id in ids {
        let mut row = vec![BigRational::zero(); n + 1];
        for (w, m) in &id.unknowns {
            let i = *index
                .get(w)
                .ok_or_else(|| Error::InconsistentFacts(format!("Q1{w} is not indexed by a restricted weight")))?;
            row[i] += BigRational::from_integer(BigInt::from(*m));
        }
        row[n] = BigRational::from_integer(&id.lhs - &id.known);
        rows.push(row);
    }

    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(pr) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = BigRational::one() / rows[r][c].clone();
        for x in rows[r].iter_mut() {
            *x *= inv.clone();
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in 0..=n {
                    let t = rows[r][j].clone() * f.clone();
                    rows[i][j] -= t;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
    }
    if let Some(row) = rows[r..].iter().find(|row| !row[n].is_zero()) {
        return Err(Error::InconsistentFacts(format!(
            "PIM identities are contradictory (0 = {})",
            row[n]
        )));
    }
    if pivot_cols.len() < n {
        let missing: Vec<String> = (0..n)
            .filter(|c| !pivot_cols.contains(c))
            .map(|c| format!("Q1{}", vars[c]))
            .collect();
        return Err(Error::InconsistentFacts(format!(
            "PIM identities do not determine {}",
            missing.join(", ")
        )));
    }
    let mut out = BTreeMap::new();
    for (i, &c) in pivot_cols.iter().enumerate() {
        let v = &rows[i][n];
        if !v.is_integer() || !v.is_positive() {
            return Err(Error::InconsistentFacts(format!(
                "dim Q1{} solves to {v}, not a positive integer",
                vars[c]
            )));
        }
        out.insert(vars[c].clone(), v.to_integer());
    }
    Ok(out)
}
