//! Formal characters: finite sparse maps from weights to integer
//! multiplicities, with ring operations and a few torus-level queries.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::root_system::{RootSystem, Weight};

pub(crate) type Terms = BTreeMap<Weight, BigInt>;

/// A (possibly virtual) character. Zero multiplicities are never stored.
#[derive(Clone)]
pub struct FormalCharacter {
    rs: Arc<RootSystem>,
    terms: Terms,
}

impl fmt::Debug for FormalCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.terms.iter().map(|(w, m)| (w.to_string(), m.to_string())))
            .finish()
    }
}

impl PartialEq for FormalCharacter {
    fn eq(&self, other: &Self) -> bool {
        self.rs == other.rs && self.terms == other.terms
    }
}

impl Eq for FormalCharacter {}

impl FormalCharacter {
    pub fn zero(rs: &Arc<RootSystem>) -> Self {
        FormalCharacter {
            rs: rs.clone(),
            terms: Terms::new(),
        }
    }

    /// Character of the trivial module.
    pub fn trivial(rs: &Arc<RootSystem>) -> Self {
        Self::monomial(rs, Weight::zero(rs.rank()), BigInt::one())
    }

    pub fn monomial(rs: &Arc<RootSystem>, w: Weight, mult: BigInt) -> Self {
        let mut terms = Terms::new();
        if !mult.is_zero() {
            terms.insert(w, mult);
        }
        FormalCharacter { rs: rs.clone(), terms }
    }

    /// Builds a character from arbitrary entries; repeated weights are summed.
    pub fn from_entries<I>(rs: &Arc<RootSystem>, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Weight, BigInt)>,
    {
        let mut c = Self::zero(rs);
        for (w, m) in entries {
            rs.check_rank(&w)?;
            c.add_term(w, m);
        }
        Ok(c)
    }

    pub(crate) fn from_terms(rs: &Arc<RootSystem>, terms: Terms) -> Self {
        debug_assert!(terms.values().all(|m| !m.is_zero()));
        FormalCharacter { rs: rs.clone(), terms }
    }

    pub fn root_system(&self) -> &Arc<RootSystem> {
        &self.rs
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Multiplicity of `w` (zero when absent).
    pub fn multiplicity(&self, w: &Weight) -> BigInt {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Weight, &BigInt)> {
        self.terms.iter()
    }

    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    pub(crate) fn add_term(&mut self, w: Weight, m: BigInt) {
        if m.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += m;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(m);
            }
        }
    }

    fn same_rs(&self, other: &FormalCharacter) -> Result<()> {
        if Arc::ptr_eq(&self.rs, &other.rs) || self.rs == other.rs {
            Ok(())
        } else {
            Err(Error::MixedRootSystem)
        }
    }

    /// `self += coeff·other`.
    pub fn add_scaled(&mut self, coeff: &BigInt, other: &FormalCharacter) -> Result<()> {
        self.same_rs(other)?;
        if coeff.is_zero() {
            return Ok(());
        }
        for (w, m) in &other.terms {
            self.add_term(w.clone(), coeff * m);
        }
        Ok(())
    }

    pub fn plus(&self, other: &FormalCharacter) -> Result<FormalCharacter> {
        let mut out = self.clone();
        out.add_scaled(&BigInt::one(), other)?;
        Ok(out)
    }

    pub fn minus(&self, other: &FormalCharacter) -> Result<FormalCharacter> {
        let mut out = self.clone();
        out.add_scaled(&-BigInt::one(), other)?;
        Ok(out)
    }

    pub fn scaled(&self, k: &BigInt) -> FormalCharacter {
        let mut out = Self::zero(&self.rs);
        if k.is_zero() {
            return out;
        }
        out.terms = self.terms.iter().map(|(w, m)| (w.clone(), m * k)).collect();
        out
    }

    /// Convolution of supports: the character of a tensor product.
    pub fn tensor(&self, other: &FormalCharacter) -> Result<FormalCharacter> {
        self.same_rs(other)?;
        let mut out = Self::zero(&self.rs);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u + v, a * b);
            }
        }
        Ok(out)
    }

    /// Scales every weight by `q`, which must be a prime power `p^r`, `r ≥ 1`.
    pub fn frobenius_twist(&self, q: u64) -> Result<FormalCharacter> {
        if !is_prime_power(q) {
            return Err(Error::BadTwist(q));
        }
        let q = i64::try_from(q).map_err(|_| Error::BadTwist(q))?;
        Ok(FormalCharacter {
            rs: self.rs.clone(),
            terms: self
                .terms
                .iter()
                .map(|(w, m)| (w.scale(q), m.clone()))
                .collect(),
        })
    }

    /// Character of the dual module: all weights negated.
    pub fn dual(&self) -> FormalCharacter {
        FormalCharacter {
            rs: self.rs.clone(),
            terms: self.terms.iter().map(|(w, m)| (-w, m.clone())).collect(),
        }
    }

    pub fn dimension(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Dimension of the fixed points of the Frobenius kernel `T_r` of the
    /// torus: total multiplicity of weights in `p^r·X`.
    pub fn torus_fixed_dimension(&self, p: u64, r: u32) -> BigInt {
        let q = p.pow(r) as i64;
        self.terms
            .iter()
            .filter(|(w, _)| w.divisible_by(q))
            .map(|(_, m)| m)
            .sum()
    }

    pub fn is_effective(&self) -> bool {
        self.terms.values().all(|m| m.is_positive()) && self.is_weyl_invariant()
    }

    /// Multiplicity is constant on every Weyl orbit meeting the support.
    pub fn is_weyl_invariant(&self) -> bool {
        for (w, m) in &self.terms {
            let d = self.rs.dominant_representative(w);
            match self.terms.get(&d) {
                Some(md) if md == m => {}
                _ => return false,
            }
        }
        for (w, m) in self.terms.iter().filter(|(w, _)| w.is_dominant()) {
            for x in self.rs.weyl_orbit(w) {
                if self.terms.get(&x) != Some(m) {
                    return false;
                }
            }
        }
        true
    }

    /// Dominant support weights that are maximal for the dominance order
    /// among dominant support weights, lexicographically ordered.
    pub fn dominant_leading_weights(&self) -> Vec<(Weight, BigInt)> {
        let dom: Vec<(&Weight, &BigInt)> =
            self.terms.iter().filter(|(w, _)| w.is_dominant()).collect();
        dom.iter()
            .filter(|(w, _)| !dom.iter().any(|(v, _)| self.rs.dominance_lt(w, v)))
            .map(|(w, m)| ((*w).clone(), (*m).clone()))
            .collect()
    }

    /// Highest weight when the dominant part of the support has a unique
    /// maximum.
    pub fn highest_weight(&self) -> Option<Weight> {
        let lead = self.dominant_leading_weights();
        match lead.as_slice() {
            [(w, _)] => Some(w.clone()),
            _ => None,
        }
    }

    /// Dimension as a machine integer, for reports.
    pub fn dimension_i64(&self) -> Result<i64> {
        self.dimension()
            .to_i64()
            .ok_or_else(|| Error::Overflow("character dimension".into()))
    }
}

/// Pointwise integer linear combination of characters over one root system.
pub fn linear_combine<'a, I>(items: I) -> Result<Option<FormalCharacter>>
where
    I: IntoIterator<Item = (BigInt, &'a FormalCharacter)>,
{
    let mut acc: Option<FormalCharacter> = None;
    for (k, c) in items {
        match acc.as_mut() {
            None => acc = Some(c.scaled(&k)),
            Some(a) => a.add_scaled(&k, c)?,
        }
    }
    Ok(acc)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn is_prime_power(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= q && !q.is_multiple_of(d) {
        d += 1;
    }
    if !q.is_multiple_of(d) {
        // q itself is prime
        return true;
    }
    let mut x = q;
    while x.is_multiple_of(d) {
        x /= d;
    }
    x == 1
}

/// Serializes as a list of `[coords…, multiplicity]`, lexicographic.
impl Serialize for FormalCharacter {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (w, m) in &self.terms {
            seq.serialize_element(&entry_row(w, m))?;
        }
        seq.end()
    }
}

pub(crate) fn entry_row(w: &Weight, m: &BigInt) -> Vec<serde_json::Value> {
    let mut row: Vec<serde_json::Value> = w.coords().iter().map(|&c| c.into()).collect();
    row.push(crate::report::big_json(m));
    row
}
