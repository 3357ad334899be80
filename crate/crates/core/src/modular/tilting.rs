//! Tilting characters from Δ-filtration multiplicities.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::character::FormalCharacter;
use crate::error::{Error, Result};
use crate::modular::RawRows;
use crate::root_system::{RootSystem, Weight};
use crate::weyl::{decompose_weyl_basis, weyl_character};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TiltingEntry {
    /// `μ ↦ (T(λ):Δ(μ))`, including the diagonal.
    pub factors: BTreeMap<Weight, u64>,
    pub provenance: String,
    /// False for entries obtained from tensor identities rather than read
    /// from the data file.
    pub registered: bool,
}

#[derive(Clone, Debug)]
pub struct TiltingTable {
    rs: Arc<RootSystem>,
    entries: BTreeMap<Weight, TiltingEntry>,
}

impl TiltingTable {
    pub fn new(rs: Arc<RootSystem>, raw: RawRows) -> Result<Self> {
        let mut table = TiltingTable {
            rs,
            entries: BTreeMap::new(),
        };
        for (lam, factors, provenance) in raw {
            let mut map = BTreeMap::new();
            for (mu, m) in factors {
                table
                    .rs
                    .check_rank(&mu)
                    .map_err(|e| Error::InvalidTable(e.to_string()))?;
                if m == 0 || map.insert(mu.clone(), m).is_some() {
                    return Err(Error::InvalidTable(format!(
                        "T{lam}: Δ{mu} has zero multiplicity or is listed twice"
                    )));
                }
            }
            table.validate(&lam, &map)?;
            let entry = TiltingEntry {
                factors: map,
                provenance,
                registered: true,
            };
            if table.entries.insert(lam.clone(), entry).is_some() {
                return Err(Error::InvalidTable(format!("T{lam}: entry listed twice")));
            }
        }
        Ok(table)
    }

    fn validate(&self, lam: &Weight, map: &BTreeMap<Weight, u64>) -> Result<()> {
        self.rs
            .check_rank(lam)
            .map_err(|e| Error::InvalidTable(e.to_string()))?;
        if !lam.is_dominant() {
            return Err(Error::InvalidTable(format!("T{lam}: weight is not dominant")));
        }
        if map.get(lam) != Some(&1) {
            return Err(Error::InvalidTable(format!(
                "T{lam}: diagonal multiplicity must be 1"
            )));
        }
        for mu in map.keys() {
            if mu != lam && !(mu.is_dominant() && self.rs.dominance_lt(mu, lam)) {
                return Err(Error::InvalidTable(format!(
                    "T{lam}: Δ{mu} is not a dominant weight below the highest weight"
                )));
            }
        }
        Ok(())
    }

    /// Records `ch T(lam) = c`, reading the Δ-multiplicities off the Weyl
    /// basis. A registered entry for the same weight must agree exactly.
    pub fn insert_derived(&mut self, lam: &Weight, c: &FormalCharacter, provenance: String) -> Result<()> {
        let dec = decompose_weyl_basis(&self.rs, c)?;
        if !dec.residual.is_empty() {
            return Err(Error::InvalidTable(format!("T{lam}: derived character is not Weyl-invariant")));
        }
        let mut map = BTreeMap::new();
        for (mu, m) in &dec.terms {
            if m.is_negative() {
                return Err(Error::InvalidTable(format!(
                    "T{lam}: derived character has Δ{mu} with coefficient {m}"
                )));
            }
            let m = m
                .to_u64()
                .ok_or_else(|| Error::Overflow(format!("Δ-multiplicity in T{lam}")))?;
            map.insert(mu.clone(), m);
        }
        self.validate(lam, &map)?;
        if let Some(existing) = self.entries.get(lam) {
            if existing.factors != map {
                return Err(Error::InvalidTable(format!(
                    "T{lam}: registered Δ-multiplicities disagree with the derived ones"
                )));
            }
            return Ok(());
        }
        self.entries.insert(
            lam.clone(),
            TiltingEntry {
                factors: map,
                provenance,
                registered: false,
            },
        );
        Ok(())
    }

    pub fn contains(&self, lam: &Weight) -> bool {
        self.entries.contains_key(lam)
    }

    pub fn entry(&self, lam: &Weight) -> Option<&TiltingEntry> {
        self.entries.get(lam)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Weight, &TiltingEntry)> {
        self.entries.iter()
    }

    /// Σ (T(lam):Δ(μ))·χ(μ).
    pub fn tilting_character(&self, lam: &Weight) -> Result<FormalCharacter> {
        let entry = self
            .entries
            .get(lam)
            .ok_or_else(|| Error::MissingData(format!("tilting data for T{lam}")))?;
        let mut out = FormalCharacter::zero(&self.rs);
        for (mu, m) in &entry.factors {
            out.add_scaled(&BigInt::from(*m), &weyl_character(&self.rs, mu)?)?;
        }
        Ok(out)
    }
}

/// Free-function form of [`TiltingTable::tilting_character`].
pub fn tilting_character(lam: &Weight, table: &TiltingTable) -> Result<FormalCharacter> {
    table.tilting_character(lam)
}
