//! Cited structural facts about specific modules.
//!
//! Facts are never derived here. Each one pairs a module expression with a
//! payload (simple factors, a dimension or a direct-sum decomposition) and
//! the verbatim anchor it was taken from.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::expr::{parse_module_expression, ModuleExpr};
use crate::root_system::Weight;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FactKind {
    Head,
    Socle,
    RadicalLayer,
    Ext1Dim,
    HomDim,
    Iso,
    #[serde(rename = "socle_series_G1")]
    SocleSeriesG1,
}

impl FromStr for FactKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "head" => FactKind::Head,
            "socle" => FactKind::Socle,
            "radical_layer" => FactKind::RadicalLayer,
            "ext1_dim" => FactKind::Ext1Dim,
            "hom_dim" => FactKind::HomDim,
            "iso" => FactKind::Iso,
            "socle_series_G1" => FactKind::SocleSeriesG1,
            other => return Err(Error::InvalidRegistry(format!("unknown fact kind `{other}`"))),
        })
    }
}

impl fmt::Display for FactKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FactKind::Head => "head",
            FactKind::Socle => "socle",
            FactKind::RadicalLayer => "radical_layer",
            FactKind::Ext1Dim => "ext1_dim",
            FactKind::HomDim => "hom_dim",
            FactKind::Iso => "iso",
            FactKind::SocleSeriesG1 => "socle_series_G1",
        };
        f.write_str(s)
    }
}

/// The group over which a fact is stated: `G` itself or its first
/// Frobenius kernel.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum GroupScope {
    G,
    G1,
}

impl FromStr for GroupScope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "G" => Ok(GroupScope::G),
            "G1" => Ok(GroupScope::G1),
            other => Err(Error::InvalidRegistry(format!("unknown group `{other}`"))),
        }
    }
}

/// `L(weight)^{(twist)}` occurring `mult` times.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SimpleFactor {
    pub weight: Weight,
    pub twist: u32,
    pub mult: u64,
}

impl SimpleFactor {
    /// The highest weight `p^twist · weight` of the twisted simple module.
    pub fn highest_weight(&self, p: u64) -> Weight {
        self.weight.scale(p.pow(self.twist) as i64)
    }
}

impl fmt::Display for SimpleFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.weight.is_zero() {
            write!(f, "k")?;
        } else {
            write!(f, "L{}", self.weight)?;
        }
        if self.twist > 0 {
            write!(f, "^[{}]", self.twist)?;
        }
        if self.mult != 1 {
            write!(f, " x{}", self.mult)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fact {
    pub kind: FactKind,
    pub subject: ModuleExpr,
    pub subject_text: String,
    pub group: GroupScope,
    /// Layer index, 1 for the head or socle itself.
    pub layer: u32,
    /// Marks the bottom radical layer, so that the layers listed for the
    /// subject exhaust it.
    pub last: bool,
    pub dim: Option<u64>,
    pub factors: Vec<SimpleFactor>,
    pub target: Option<ModuleExpr>,
    /// Opaque structure label for Ext groups; only the dimension is used.
    pub structure: Option<ModuleExpr>,
    pub summands: Vec<(ModuleExpr, u64)>,
    pub citation: String,
}

/// Unvalidated payload, one field per key of the data file.
#[derive(Clone, Debug, Default)]
pub struct FactPayload {
    pub dim: Option<u64>,
    pub layer: Option<u32>,
    pub last: Option<bool>,
    pub factors: Option<Vec<SimpleFactor>>,
    pub target: Option<String>,
    pub group: Option<String>,
    pub structure: Option<String>,
    pub summands: Option<Vec<(String, u64)>>,
}

impl Fact {
    pub fn new(kind: &str, subject: &str, payload: FactPayload, citation: &str) -> Result<Fact> {
        let kind: FactKind = kind.parse()?;
        let ctx = |msg: &str| Error::InvalidRegistry(format!("{kind} fact on `{subject}`: {msg}"));
        if citation.trim().is_empty() {
            return Err(ctx("missing citation"));
        }
        let parse = |text: &str| {
            parse_module_expression(text).map_err(|e| ctx(&format!("cannot parse `{text}`: {e}")))
        };
        let subject_expr = parse(subject)?;
        let group = match &payload.group {
            Some(g) => g.parse().map_err(|_| ctx(&format!("unknown group `{g}`")))?,
            None if kind == FactKind::SocleSeriesG1 => GroupScope::G1,
            None => GroupScope::G,
        };
        if kind == FactKind::SocleSeriesG1 && group != GroupScope::G1 {
            return Err(ctx("a G1 socle series must be stated over G1"));
        }
        let layer = payload.layer.unwrap_or(1);
        if layer == 0 {
            return Err(ctx("layers are numbered from 1"));
        }
        let factors = payload.factors.clone().unwrap_or_default();
        if factors.iter().any(|f| f.mult == 0) {
            return Err(ctx("zero multiplicity"));
        }
        let summands = payload
            .summands
            .clone()
            .unwrap_or_default()
            .into_iter()
            .map(|(m, k)| {
                if k == 0 {
                    Err(ctx("zero multiplicity"))
                } else {
                    Ok((parse(&m)?, k))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        let target = payload.target.as_deref().map(parse).transpose()?;
        let structure = payload.structure.as_deref().map(parse).transpose()?;

        let needs_factors = matches!(kind, FactKind::Head | FactKind::Socle | FactKind::RadicalLayer);
        let needs_summands = matches!(kind, FactKind::Iso | FactKind::SocleSeriesG1);
        let needs_dim = matches!(kind, FactKind::Ext1Dim | FactKind::HomDim);
        if needs_factors != payload.factors.is_some() {
            return Err(ctx(if needs_factors { "missing `factors`" } else { "unexpected `factors`" }));
        }
        if needs_factors && factors.is_empty() {
            return Err(ctx("empty `factors`"));
        }
        if needs_summands != payload.summands.is_some() {
            return Err(ctx(if needs_summands { "missing `summands`" } else { "unexpected `summands`" }));
        }
        if needs_summands && summands.is_empty() {
            return Err(ctx("empty `summands`"));
        }
        if needs_dim != payload.dim.is_some() || needs_dim != target.is_some() {
            return Err(ctx(if needs_dim {
                "needs both `dim` and `target`"
            } else {
                "unexpected `dim` or `target`"
            }));
        }
        if structure.is_some() && kind != FactKind::Ext1Dim {
            return Err(ctx("`structure` only applies to Ext facts"));
        }
        if kind == FactKind::Head && layer != 1 {
            return Err(ctx("a head is radical layer 1"));
        }
        if payload.last.is_some() && kind != FactKind::RadicalLayer {
            return Err(ctx("`last` only applies to radical layers"));
        }
        if payload.layer.is_some() && !matches!(kind, FactKind::RadicalLayer | FactKind::Socle | FactKind::SocleSeriesG1) {
            return Err(ctx("`layer` does not apply"));
        }
        if kind == FactKind::RadicalLayer && payload.layer.is_none() {
            return Err(ctx("missing `layer`"));
        }

        Ok(Fact {
            kind,
            subject: subject_expr,
            subject_text: subject.to_string(),
            group,
            layer,
            last: payload.last.unwrap_or(false),
            dim: payload.dim,
            factors,
            target,
            structure,
            summands,
            citation: citation.to_string(),
        })
    }
}

/// The cited facts of a dataset, in file order.
#[derive(Clone, Debug, Default)]
pub struct FactRegistry {
    facts: Vec<Fact>,
}

impl FactRegistry {
    pub fn new(facts: Vec<Fact>) -> Result<Self> {
        for (i, a) in facts.iter().enumerate() {
            for b in &facts[..i] {
                let same_slot = a.kind == b.kind
                    && a.subject == b.subject
                    && a.group == b.group
                    && a.layer == b.layer
                    && a.target == b.target;
                if same_slot {
                    return Err(Error::InvalidRegistry(format!(
                        "{} fact on `{}` stated twice",
                        a.kind, a.subject_text
                    )));
                }
            }
        }
        Ok(FactRegistry { facts })
    }

    pub fn facts(&self) -> &[Fact] {
        &self.facts
    }

    pub fn len(&self) -> usize {
        self.facts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.facts.is_empty()
    }

    fn find(&self, pred: impl Fn(&Fact) -> bool) -> Option<&Fact> {
        self.facts.iter().find(|f| pred(f))
    }

    /// The G-head, i.e. radical layer 1.
    pub fn head(&self, subject: &ModuleExpr) -> Option<&Fact> {
        self.radical_layer(subject, 1)
    }

    pub fn radical_layer(&self, subject: &ModuleExpr, layer: u32) -> Option<&Fact> {
        self.find(|f| {
            &f.subject == subject
                && f.group == GroupScope::G
                && f.layer == layer
                && (f.kind == FactKind::RadicalLayer || (layer == 1 && f.kind == FactKind::Head))
        })
    }

    /// All radical layers of `subject` when they are registered
    /// consecutively from the head down to a layer marked `last`.
    pub fn radical_series(&self, subject: &ModuleExpr) -> Option<Vec<&Fact>> {
        let mut out = Vec::new();
        let mut layer = 1;
        loop {
            let f = self.radical_layer(subject, layer)?;
            out.push(f);
            if f.last {
                return Some(out);
            }
            layer += 1;
        }
    }

    pub fn socle(&self, subject: &ModuleExpr, layer: u32) -> Option<&Fact> {
        self.find(|f| f.kind == FactKind::Socle && &f.subject == subject && f.layer == layer && f.group == GroupScope::G)
    }

    pub fn socle_series_g1(&self, subject: &ModuleExpr, layer: u32) -> Option<&Fact> {
        self.find(|f| f.kind == FactKind::SocleSeriesG1 && &f.subject == subject && f.layer == layer)
    }

    pub fn ext1_dim(&self, subject: &ModuleExpr, target: &ModuleExpr, group: GroupScope) -> Option<&Fact> {
        self.find(|f| {
            f.kind == FactKind::Ext1Dim && &f.subject == subject && f.target.as_ref() == Some(target) && f.group == group
        })
    }

    pub fn hom_dim(&self, subject: &ModuleExpr, target: &ModuleExpr, group: GroupScope) -> Option<&Fact> {
        self.find(|f| {
            f.kind == FactKind::HomDim && &f.subject == subject && f.target.as_ref() == Some(target) && f.group == group
        })
    }

    pub fn iso(&self, subject: &ModuleExpr, group: GroupScope) -> Option<&Fact> {
        self.find(|f| f.kind == FactKind::Iso && &f.subject == subject && f.group == group)
    }

    pub fn iso_facts(&self, group: GroupScope) -> impl Iterator<Item = &Fact> {
        self.facts
            .iter()
            .filter(move |f| f.kind == FactKind::Iso && f.group == group)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factor(a: i64, b: i64, twist: u32) -> SimpleFactor {
        SimpleFactor {
            weight: Weight::from([a, b]),
            twist,
            mult: 1,
        }
    }

    fn head_payload(a: i64, b: i64) -> FactPayload {
        FactPayload {
            factors: Some(vec![factor(a, b, 0)]),
            ..Default::default()
        }
    }

    #[test]
    fn uncited_fact_is_rejected() {
        let err = Fact::new("head", "Nabla(1,0)", head_payload(0, 0), "  ").unwrap_err();
        assert!(matches!(err, Error::InvalidRegistry(_)));
    }

    #[test]
    fn payload_shape_is_enforced() {
        let ext_without_dim = FactPayload {
            target: Some("L(0,1)".into()),
            ..Default::default()
        };
        assert!(Fact::new("ext1_dim", "k", ext_without_dim, "c").is_err());
        assert!(Fact::new("iso", "St", head_payload(0, 0), "c").is_err());
        assert!(Fact::new("head", "Nabla(1,0)", FactPayload::default(), "c").is_err());
        assert!(Fact::new("shape", "k", head_payload(0, 0), "c").is_err());
        let zero = FactPayload {
            factors: Some(vec![SimpleFactor { mult: 0, ..factor(0, 0, 0) }]),
            ..Default::default()
        };
        assert!(Fact::new("head", "Nabla(1,0)", zero, "c").is_err());
        let bad_layer = FactPayload {
            layer: Some(2),
            ..head_payload(0, 0)
        };
        assert!(Fact::new("head", "Nabla(1,0)", bad_layer, "c").is_err());
        assert!(Fact::new("head", "Nabla(1,", head_payload(0, 0), "c").is_err());
    }

    #[test]
    fn lookups() {
        let facts = vec![
            Fact::new("head", "Nabla(2,1)", head_payload(0, 1), "c").unwrap(),
            Fact::new(
                "radical_layer",
                "Nabla(2,1)",
                FactPayload {
                    layer: Some(2),
                    factors: Some(vec![factor(1, 0, 1)]),
                    ..Default::default()
                },
                "c",
            )
            .unwrap(),
            Fact::new(
                "ext1_dim",
                "k",
                FactPayload {
                    target: Some("L(0,1)".into()),
                    group: Some("G1".into()),
                    dim: Some(7),
                    ..Default::default()
                },
                "c",
            )
            .unwrap(),
        ];
        let reg = FactRegistry::new(facts).unwrap();
        let nabla = parse_module_expression("Nabla(2,1)").unwrap();
        assert_eq!(reg.head(&nabla).unwrap().factors, vec![factor(0, 1, 0)]);
        assert_eq!(reg.radical_layer(&nabla, 2).unwrap().factors, vec![factor(1, 0, 1)]);
        assert!(reg.radical_series(&nabla).is_none());
        let k = parse_module_expression("k").unwrap();
        let l01 = parse_module_expression(" L(0, 1) ").unwrap();
        assert_eq!(reg.ext1_dim(&k, &l01, GroupScope::G1).unwrap().dim, Some(7));
        assert!(reg.ext1_dim(&k, &l01, GroupScope::G).is_none());
    }

    #[test]
    fn duplicate_slots_are_rejected() {
        let a = Fact::new("head", "Nabla(1,0)", head_payload(0, 0), "c").unwrap();
        assert!(FactRegistry::new(vec![a.clone(), a]).is_err());
    }

    #[test]
    fn factor_display() {
        assert_eq!(factor(1, 0, 1).to_string(), "L(1,0)^[1]");
        assert_eq!(factor(0, 0, 0).to_string(), "k");
    }
}
