//! Decomposition numbers `[∇(λ):L(μ)]` and the simple characters they
//! determine.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;

use crate::character::FormalCharacter;
use crate::error::{Error, Result};
use crate::root_system::{RootSystem, Weight};
use crate::weyl::{greedy_decompose, weyl_character, TieBreak};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableEntry {
    /// `μ ↦ [∇(λ):L(μ)]`, including the diagonal.
    pub factors: BTreeMap<Weight, u64>,
    pub provenance: String,
}

/// `(λ, [(μ, multiplicity)], provenance)` rows as read from a data file.
pub type RawRows = Vec<(Weight, Vec<(Weight, u64)>, String)>;

/// Composition multiplicities of costandard modules in characteristic `p`.
#[derive(Clone, Debug)]
pub struct DecompositionTable {
    rs: Arc<RootSystem>,
    p: u64,
    entries: BTreeMap<Weight, TableEntry>,
    /// ch L(λ) for every λ in the declared range.
    simple: BTreeMap<Weight, FormalCharacter>,
}

/// `lam = lam0 + p^r·lam1` with `lam0` restricted.
pub fn steinberg_factorize(lam: &Weight, p: u64, r: u32) -> Result<(Weight, Weight)> {
    if !lam.is_dominant() {
        return Err(Error::NotDominant(lam.clone()));
    }
    let q = p.pow(r) as i64;
    let lam0 = Weight::new(lam.coords().iter().map(|c| c % q).collect());
    let lam1 = Weight::new(lam.coords().iter().map(|c| c / q).collect());
    Ok((lam0, lam1))
}

impl DecompositionTable {
    /// Validates unitriangularity and closure, then inverts the table to
    /// obtain simple characters.
    pub fn new(
        rs: Arc<RootSystem>,
        p: u64,
        raw: RawRows,
    ) -> Result<Self> {
        if !crate::character::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let mut entries = BTreeMap::new();
        for (lam, factors, provenance) in raw {
            rs.check_rank(&lam)
                .map_err(|e| Error::InvalidTable(e.to_string()))?;
            if !lam.is_dominant() {
                return Err(Error::InvalidTable(format!("∇{lam}: weight is not dominant")));
            }
            let mut map = BTreeMap::new();
            for (mu, m) in factors {
                rs.check_rank(&mu)
                    .map_err(|e| Error::InvalidTable(e.to_string()))?;
                if m == 0 {
                    return Err(Error::InvalidTable(format!("∇{lam}: zero multiplicity for L{mu}")));
                }
                if map.insert(mu.clone(), m).is_some() {
                    return Err(Error::InvalidTable(format!("∇{lam}: L{mu} listed twice")));
                }
            }
            match map.get(&lam) {
                Some(1) => {}
                other => {
                    return Err(Error::InvalidTable(format!(
                        "∇{lam}: diagonal multiplicity must be 1, found {}",
                        other.copied().unwrap_or(0)
                    )))
                }
            }
            for mu in map.keys() {
                if mu != &lam && !rs.dominance_lt(mu, &lam) {
                    return Err(Error::InvalidTable(format!(
                        "∇{lam}: factor L{mu} is not below the highest weight"
                    )));
                }
            }
            if entries
                .insert(lam.clone(), TableEntry { factors: map, provenance })
                .is_some()
            {
                return Err(Error::InvalidTable(format!("∇{lam}: entry listed twice")));
            }
        }
        for (lam, e) in &entries {
            for mu in e.factors.keys() {
                if !entries.contains_key(mu) {
                    return Err(Error::InvalidTable(format!(
                        "∇{lam}: factor L{mu} is outside the declared range"
                    )));
                }
            }
        }

        let mut table = DecompositionTable {
            rs,
            p,
            entries,
            simple: BTreeMap::new(),
        };
        table.invert()?;
        Ok(table)
    }

    /// Processes weights bottom-up in the dominance order. Restricted weights
    /// get their characters from the table; the rest come from the Steinberg
    /// tensor product and must agree with their table row.
    fn invert(&mut self) -> Result<()> {
        let rs = self.rs.clone();
        let mut order: Vec<Weight> = self.entries.keys().cloned().collect();
        order.sort_by_cached_key(|w| {
            let h: num_rational::Ratio<i64> = rs.rational_root_coords(w).into_iter().sum();
            (h, w.clone())
        });
        for lam in order {
            let entry = &self.entries[&lam];
            let chi = weyl_character(&rs, &lam)?;
            if rs.is_restricted(&lam, self.p, 1) {
                let mut ch = chi;
                for (mu, m) in &entry.factors {
                    if mu == &lam {
                        continue;
                    }
                    let lower = self.simple.get(mu).expect("lower weights processed first");
                    ch.add_scaled(&-BigInt::from(*m), lower)?;
                }
                if !ch.is_effective() || ch.multiplicity(&lam) != BigInt::one() {
                    return Err(Error::InvalidTable(format!(
                        "∇{lam}: implied character of L{lam} is not effective"
                    )));
                }
                self.simple.insert(lam, ch);
            } else {
                let ch = self.steinberg_product(&lam)?;
                let mut sum = FormalCharacter::zero(&rs);
                for (mu, m) in &entry.factors {
                    let l = if mu == &lam { &ch } else { &self.simple[mu] };
                    sum.add_scaled(&BigInt::from(*m), l)?;
                }
                if sum != chi {
                    return Err(Error::InvalidTable(format!(
                        "∇{lam}: composition factors do not add up to χ{lam}"
                    )));
                }
                self.simple.insert(lam, ch);
            }
        }
        Ok(())
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn root_system(&self) -> &Arc<RootSystem> {
        &self.rs
    }

    pub fn declared_range(&self) -> impl Iterator<Item = &Weight> {
        self.entries.keys()
    }

    pub fn contains(&self, lam: &Weight) -> bool {
        self.entries.contains_key(lam)
    }

    pub fn entry(&self, lam: &Weight) -> Option<&TableEntry> {
        self.entries.get(lam)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Weight, &TableEntry)> {
        self.entries.iter()
    }

    fn steinberg_product(&self, lam: &Weight) -> Result<FormalCharacter> {
        let rs = &self.rs;
        let mut out = FormalCharacter::trivial(rs);
        let mut rest = lam.clone();
        let mut q: u64 = 1;
        while !rest.is_zero() {
            let (digit, higher) = steinberg_factorize(&rest, self.p, 1)?;
            if !digit.is_zero() {
                let l = self.simple.get(&digit).ok_or_else(|| {
                    Error::MissingData(format!(
                        "decomposition data for ∇{digit} (needed for L{lam})"
                    ))
                })?;
                let twisted = if q == 1 { l.clone() } else { l.frobenius_twist(q)? };
                out = out.tensor(&twisted)?;
            }
            rest = higher;
            q = q
                .checked_mul(self.p)
                .ok_or_else(|| Error::Overflow("p-adic expansion".into()))?;
        }
        Ok(out)
    }

    /// ch L(lam): the table inversion for restricted weights and the
    /// Steinberg tensor product along the `p`-adic expansion otherwise.
    pub fn simple_character(&self, lam: &Weight) -> Result<FormalCharacter> {
        self.rs.check_rank(lam)?;
        if !lam.is_dominant() {
            return Err(Error::NotDominant(lam.clone()));
        }
        if let Some(c) = self.simple.get(lam) {
            return Ok(c.clone());
        }
        self.steinberg_product(lam)
    }

    /// ch ∇^{(p,r)}(lam) = ch L(lam₀) · ch ∇(lam₁)^{(r)}.
    pub fn pr_standard_character(&self, lam: &Weight, r: u32) -> Result<FormalCharacter> {
        self.rs.check_rank(lam)?;
        let (lam0, lam1) = steinberg_factorize(lam, self.p, r)?;
        let base = self.simple_character(&lam0)?;
        if lam1.is_zero() {
            return Ok(base);
        }
        let upper = weyl_character(&self.rs, &lam1)?.frobenius_twist(self.p.pow(r))?;
        base.tensor(&upper)
    }

    /// Composition multiplicities of a character in the basis of simple
    /// characters, lexicographic in the highest weight.
    pub fn composition_factors(&self, c: &FormalCharacter) -> Result<Vec<(Weight, BigInt)>> {
        if !c.is_weyl_invariant() {
            return Err(Error::NotInvariant);
        }
        let out = greedy_decompose(c, |mu| self.simple_character(mu), TieBreak::First, false)?;
        Ok(out.terms)
    }
}

/// Free-function form of [`DecompositionTable::simple_character`] that also
/// checks the characteristic.
pub fn simple_character(lam: &Weight, p: u64, table: &DecompositionTable) -> Result<FormalCharacter> {
    if p != table.p() {
        return Err(Error::MissingData(format!("no decomposition data for p = {p}")));
    }
    table.simple_character(lam)
}

pub fn pr_standard_character(
    lam: &Weight,
    p: u64,
    r: u32,
    table: &DecompositionTable,
) -> Result<FormalCharacter> {
    if p != table.p() {
        return Err(Error::MissingData(format!("no decomposition data for p = {p}")));
    }
    table.pr_standard_character(lam, r)
}
