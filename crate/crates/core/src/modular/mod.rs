//! Characteristic-`p` data: decomposition numbers, tilting characters, PIM
//! dimensions and the fact registry, loaded from one JSON dataset.
//!
//! The built-in G2, `p = 2` dataset ships as `data/g2_p2.json` and is read
//! through the same parser as external files. Unknown keys are rejected.
//!
//! Some tilting characters are derived at load time rather than read from
//! the file. If a cited `G_1` isomorphism splits `St ⊗ L(λ)` into
//! one non-Steinberg PIM `Q_1(ν)` plus copies of `St`, then
//! `ch T(ρ + λ) = ch(St ⊗ L(λ)) − ch St · F`, where `F` is the
//! `T_1`-fixed part of `ch L(λ)`; the number of copies of `St` must equal
//! `dim F`. The same character serves as `ch Q_1(ν)`. An isomorphism that
//! fails this count derives nothing; the verifier reports the mismatch.

mod pim;
mod registry;
mod table;
mod tilting;

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use num_bigint::BigInt;
use serde::Deserialize;

use crate::character::FormalCharacter;
use crate::error::{Error, Result};
use crate::expr::ModuleExpr;
use crate::root_system::{build_root_system, RootSystem, Weight};

pub use pim::{pim_identities, pim_weight, solve_pim_dimensions, PimIdentity};
pub use registry::{Fact, FactKind, FactPayload, FactRegistry, GroupScope, SimpleFactor};
pub use table::{
    pr_standard_character, simple_character, steinberg_factorize, DecompositionTable, RawRows, TableEntry,
};
pub use tilting::{tilting_character, TiltingEntry, TiltingTable};

/// The dataset compiled into the library.
pub const BUILTIN_DATA: &str = include_str!("../../data/g2_p2.json");

#[derive(Clone, Debug)]
pub enum DataSource {
    BuiltIn,
    File(PathBuf),
    Text(String),
}

impl DataSource {
    fn read(&self) -> Result<String> {
        match self {
            DataSource::BuiltIn => Ok(BUILTIN_DATA.to_string()),
            DataSource::File(path) => Ok(std::fs::read_to_string(path)?),
            DataSource::Text(t) => Ok(t.clone()),
        }
    }
}

impl From<&Path> for DataSource {
    fn from(p: &Path) -> Self {
        DataSource::File(p.to_path_buf())
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDataset {
    #[serde(rename = "type")]
    type_label: String,
    p: u64,
    #[serde(default)]
    decomposition: Vec<RawEntry>,
    #[serde(default)]
    tilting: Vec<RawEntry>,
    #[serde(default)]
    facts: Vec<RawFact>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEntry {
    lambda: Vec<i64>,
    factors: Vec<(Vec<i64>, u64)>,
    provenance: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFact {
    kind: String,
    subject: String,
    payload: RawPayload,
    citation: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPayload {
    dim: Option<u64>,
    layer: Option<u32>,
    last: Option<bool>,
    factors: Option<Vec<RawFactor>>,
    target: Option<String>,
    group: Option<String>,
    structure: Option<String>,
    summands: Option<Vec<RawSummand>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFactor {
    weight: Vec<i64>,
    #[serde(default)]
    twist: u32,
    mult: u64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSummand {
    module: String,
    mult: u64,
}

fn raw_entries(rows: Vec<RawEntry>) -> RawRows {
    rows.into_iter()
        .map(|e| {
            let factors = e.factors.into_iter().map(|(w, m)| (Weight::new(w), m)).collect();
            (Weight::new(e.lambda), factors, e.provenance)
        })
        .collect()
}

fn raw_facts(rs: &RootSystem, rows: Vec<RawFact>) -> Result<Vec<Fact>> {
    rows.into_iter()
        .map(|f| {
            let factors = f
                .payload
                .factors
                .map(|fs| {
                    fs.into_iter()
                        .map(|x| {
                            let weight = Weight::new(x.weight);
                            rs.check_rank(&weight)
                                .map_err(|e| Error::InvalidRegistry(e.to_string()))?;
                            Ok(SimpleFactor {
                                weight,
                                twist: x.twist,
                                mult: x.mult,
                            })
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .transpose()?;
            let payload = FactPayload {
                dim: f.payload.dim,
                layer: f.payload.layer,
                last: f.payload.last,
                factors,
                target: f.payload.target,
                group: f.payload.group,
                structure: f.payload.structure,
                summands: f
                    .payload
                    .summands
                    .map(|s| s.into_iter().map(|x| (x.module, x.mult)).collect()),
            };
            Fact::new(&f.kind, &f.subject, payload, &f.citation)
        })
        .collect()
}

fn parse_raw(text: &str) -> Result<RawDataset> {
    Ok(serde_json::from_str(text)?)
}

/// Loads only the decomposition table of a dataset.
pub fn load_decomposition_table(source: &DataSource) -> Result<DecompositionTable> {
    let raw = parse_raw(&source.read()?)?;
    let rs = build_root_system(&raw.type_label)?;
    DecompositionTable::new(rs, raw.p, raw_entries(raw.decomposition))
}

/// Loads only the fact registry of a dataset.
pub fn load_fact_registry(source: &DataSource) -> Result<FactRegistry> {
    let raw = parse_raw(&source.read()?)?;
    let rs = build_root_system(&raw.type_label)?;
    FactRegistry::new(raw_facts(&rs, raw.facts)?)
}

/// A fully validated dataset: the table, the tilting characters (registered
/// and derived) and the registry, all over one root system and prime.
#[derive(Clone, Debug)]
pub struct Dataset {
    rs: Arc<RootSystem>,
    p: u64,
    table: DecompositionTable,
    tilting: TiltingTable,
    registry: FactRegistry,
    /// `ν ↦ ch Q_1(ν)` for PIMs whose character follows from a cited
    /// isomorphism.
    pim_characters: BTreeMap<Weight, FormalCharacter>,
}

impl Dataset {
    pub fn load(source: &DataSource) -> Result<Dataset> {
        Dataset::from_json_str(&source.read()?)
    }

    pub fn builtin() -> Result<Dataset> {
        Dataset::from_json_str(BUILTIN_DATA)
    }

    pub fn from_json_str(text: &str) -> Result<Dataset> {
        let raw = parse_raw(text)?;
        let rs = build_root_system(&raw.type_label)?;
        let table = DecompositionTable::new(rs.clone(), raw.p, raw_entries(raw.decomposition))?;
        let tilting = TiltingTable::new(rs.clone(), raw_entries(raw.tilting))?;
        let registry = FactRegistry::new(raw_facts(&rs, raw.facts)?)?;
        let mut ds = Dataset {
            rs,
            p: raw.p,
            table,
            tilting,
            registry,
            pim_characters: BTreeMap::new(),
        };
        ds.derive_tilting_from_isos()?;
        crate::eval::validate_registry(&ds)?;
        Ok(ds)
    }

    /// `λ` with `subject = St ⊗ L(λ)`, or `None` for other subjects.
    fn steinberg_tensor_simple(&self, subject: &ModuleExpr) -> Option<Weight> {
        let ModuleExpr::Tensor(a, b) = subject else {
            return None;
        };
        if **a != (ModuleExpr::Steinberg { r: 1 }) {
            return None;
        }
        match b.as_ref() {
            ModuleExpr::Trivial => Some(Weight::zero(self.rs.rank())),
            ModuleExpr::Steinberg { r: 1 } => Some(self.rs.rho().scale(self.p as i64 - 1)),
            ModuleExpr::Simple(l) if self.rs.is_restricted(l, self.p, 1) => Some(l.clone()),
            _ => None,
        }
    }

    fn derive_tilting_from_isos(&mut self) -> Result<()> {
        let st_weight = self.rs.rho().scale(self.p as i64 - 1);
        let mut derived = Vec::new();
        for fact in self.registry.iso_facts(GroupScope::G1) {
            let Some(lam) = self.steinberg_tensor_simple(&fact.subject) else {
                continue;
            };
            let mut st_count = 0u64;
            let mut others = Vec::new();
            for (e, m) in &fact.summands {
                match pim_weight(&self.rs, self.p, e) {
                    Some(w) if w == st_weight => st_count += m,
                    other => others.push((other, *m)),
                }
            }
            let [(Some(nu), 1)] = others.as_slice() else {
                continue;
            };
            let (simple, st) = match (
                self.table.simple_character(&lam),
                self.table.simple_character(&st_weight),
            ) {
                (Ok(a), Ok(b)) => (a, b),
                (Err(Error::MissingData(_)), _) | (_, Err(Error::MissingData(_))) => continue,
                (Err(e), _) | (_, Err(e)) => return Err(e),
            };
            let q = self.p as i64;
            let fixed = FormalCharacter::from_entries(
                &self.rs,
                simple
                    .terms()
                    .filter(|(w, _)| w.divisible_by(q))
                    .map(|(w, m)| (w.clone(), m.clone())),
            )?;
            if fixed.dimension() != BigInt::from(st_count) {
                continue;
            }
            let full = st.tensor(&simple)?;
            let block = st.tensor(&fixed)?;
            let top = &self.rs.rho().scale(q - 1) + &lam;
            let ch = full.minus(&block)?;
            if ch.highest_weight().as_ref() != Some(&top) {
                return Err(Error::InconsistentFacts(format!(
                    "`{}`: the non-Steinberg summand does not have highest weight {top}",
                    fact.subject_text
                )));
            }
            derived.push((top, nu.clone(), ch, fact.citation.clone()));
        }
        for (top, nu, ch, citation) in derived {
            self.tilting.insert_derived(&top, &ch, format!("derived from {citation}"))?;
            self.pim_characters.insert(nu, ch);
        }
        Ok(())
    }

    pub fn root_system(&self) -> &Arc<RootSystem> {
        &self.rs
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn table(&self) -> &DecompositionTable {
        &self.table
    }

    pub fn tilting(&self) -> &TiltingTable {
        &self.tilting
    }

    pub fn registry(&self) -> &FactRegistry {
        &self.registry
    }

    pub fn pim_character(&self, nu: &Weight) -> Option<&FormalCharacter> {
        self.pim_characters.get(nu)
    }

    /// The identities `dim(St ⊗ L(λ)) = Σ mult · dim Q_1(μ)` from the cited
    /// `G_1` isomorphisms.
    pub fn pim_identities(&self) -> Result<Vec<PimIdentity>> {
        let isos: Vec<_> = self
            .registry
            .iso_facts(GroupScope::G1)
            .map(|f| (f.subject_text.as_str(), &f.subject, f.summands.as_slice()))
            .collect();
        let eval = crate::eval::Evaluator::new(self);
        pim_identities(&self.rs, self.p, isos, |e| Ok(eval.character(e)?.dimension()))
    }

    /// `dim Q_1(λ)` for every `λ ∈ X_1`.
    pub fn pim_dimensions(&self) -> Result<BTreeMap<Weight, BigInt>> {
        let ids = self.pim_identities()?;
        if ids.is_empty() {
            return Err(Error::MissingData("G1 decompositions of St ⊗ L(λ)".into()));
        }
        solve_pim_dimensions(&self.rs, self.p, &ids)
    }
}

/// Free-function form of [`Dataset::pim_dimensions`].
pub fn pim_dimensions(ds: &Dataset) -> Result<BTreeMap<Weight, BigInt>> {
    ds.pim_dimensions()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(a: i64, b: i64) -> Weight {
        Weight::from([a, b])
    }

    #[test]
    fn builtin_loads() {
        let ds = Dataset::builtin().unwrap();
        assert_eq!(ds.p(), 2);
        let e = ds.table().entry(&w(1, 0)).unwrap();
        assert_eq!(e.factors, [(w(1, 0), 1), (w(0, 0), 1)].into_iter().collect());
        assert_eq!(ds.table().entry(&w(0, 1)).unwrap().factors.len(), 1);
        assert!(ds.registry().facts().iter().all(|f| !f.citation.is_empty()));
    }

    #[test]
    fn builtin_pim_dimensions() {
        let ds = Dataset::builtin().unwrap();
        let dims = ds.pim_dimensions().unwrap();
        let got: Vec<BigInt> = [w(0, 0), w(1, 0), w(0, 1), w(1, 1)].iter().map(|x| dims[x].clone()).collect();
        assert_eq!(got, [2304, 768, 384, 64].map(BigInt::from));
    }

    #[test]
    fn derived_tilting_characters() {
        let ds = Dataset::builtin().unwrap();
        let t21 = ds.tilting().tilting_character(&w(2, 1)).unwrap();
        assert_eq!(t21.dimension(), BigInt::from(384));
        let st = ds.table().simple_character(&w(1, 1)).unwrap();
        let l10 = ds.table().simple_character(&w(1, 0)).unwrap();
        assert_eq!(t21, st.tensor(&l10).unwrap());
        assert!(!ds.tilting().entry(&w(2, 1)).unwrap().registered);
        assert_eq!(ds.tilting().tilting_character(&w(1, 2)).unwrap().dimension(), BigInt::from(768));
        assert_eq!(ds.pim_character(&w(0, 1)), Some(&t21));
        assert!(ds.pim_character(&w(0, 0)).is_none());
    }

    #[test]
    fn standalone_loaders() {
        let t = load_decomposition_table(&DataSource::BuiltIn).unwrap();
        assert_eq!(t.declared_range().count(), 4);
        let reg = load_fact_registry(&DataSource::BuiltIn).unwrap();
        let k = crate::expr::parse_module_expression("k").unwrap();
        let l01 = crate::expr::parse_module_expression("L(0,1)").unwrap();
        assert_eq!(reg.ext1_dim(&l01, &l01, GroupScope::G1).unwrap().dim, Some(0));
        assert_eq!(reg.ext1_dim(&k, &l01, GroupScope::G1).unwrap().dim, Some(7));
    }

    #[test]
    fn rejects_bad_files() {
        let unknown_key = r#"{"type":"G2","p":2,"extra":1}"#;
        assert!(matches!(Dataset::from_json_str(unknown_key), Err(Error::Json(_))));
        let bad_diag = r#"{"type":"G2","p":2,"decomposition":[{"lambda":[0,0],"factors":[[[0,0],2]],"provenance":"x"}]}"#;
        assert!(matches!(Dataset::from_json_str(bad_diag), Err(Error::InvalidTable(_))));
        let uncited = r#"{"type":"G2","p":2,"facts":[{"kind":"hom_dim","subject":"St","payload":{"target":"St","dim":1},"citation":""}]}"#;
        assert!(matches!(Dataset::from_json_str(uncited), Err(Error::InvalidRegistry(_))));
        assert!(matches!(
            Dataset::from_json_str(r#"{"type":"E9","p":2}"#),
            Err(Error::UnsupportedType(_))
        ));
    }

    #[test]
    fn empty_dataset_loads_but_has_no_pims() {
        let ds = Dataset::from_json_str(r#"{"type":"G2","p":2}"#).unwrap();
        assert!(matches!(ds.pim_dimensions(), Err(Error::MissingData(_))));
    }

    #[test]
    fn steinberg_count_must_match_fixed_points() {
        let text = BUILTIN_DATA.replace(
            r#"{"module": "Q1(1,0)", "mult": 1}, {"module": "St", "mult": 2}"#,
            r#"{"module": "Q1(1,0)", "mult": 1}, {"module": "St", "mult": 3}"#,
        );
        assert_ne!(text, BUILTIN_DATA);
        let ds = Dataset::from_json_str(&text).unwrap();
        assert!(!ds.tilting().contains(&w(1, 2)));
        assert!(ds.pim_character(&w(1, 0)).is_none());
        assert_eq!(ds.pim_dimensions().unwrap()[&w(1, 0)], BigInt::from(704));
    }
}
