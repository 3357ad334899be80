//! Characters and dimensions of module expressions over a dataset.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::character::FormalCharacter;
use crate::error::{Error, Result};
use crate::expr::ModuleExpr;
use crate::modular::{Dataset, Fact, FactKind, GroupScope, SimpleFactor};
use crate::weyl::weyl_character;

pub struct Evaluator<'a> {
    ds: &'a Dataset,
}

impl<'a> Evaluator<'a> {
    pub fn new(ds: &'a Dataset) -> Self {
        Evaluator { ds }
    }

    fn twist_factor(&self, r: u32) -> Result<u64> {
        self.ds
            .p()
            .checked_pow(r)
            .ok_or_else(|| Error::Overflow(format!("p^{r}")))
    }

    /// ch L(weight)^{(twist)}.
    pub fn simple_factor_character(&self, f: &SimpleFactor) -> Result<FormalCharacter> {
        let base = self.ds.table().simple_character(&f.weight)?;
        if f.twist == 0 {
            Ok(base)
        } else {
            base.frobenius_twist(self.twist_factor(f.twist)?)
        }
    }

    fn layers_character(&self, layers: &[&Fact]) -> Result<FormalCharacter> {
        let mut out = FormalCharacter::zero(self.ds.root_system());
        for fact in layers {
            for f in &fact.factors {
                out.add_scaled(&BigInt::from(f.mult), &self.simple_factor_character(f)?)?;
            }
        }
        Ok(out)
    }

    /// The character of `e`. Radicals, socles and quotients resolve through
    /// a complete registered radical series when there is one; a quotient
    /// otherwise evaluates to the difference of characters.
    pub fn character(&self, e: &ModuleExpr) -> Result<FormalCharacter> {
        let ds = self.ds;
        let rs = ds.root_system();
        self.rs_check(e)?;
        match e {
            ModuleExpr::Trivial => Ok(FormalCharacter::trivial(rs)),
            ModuleExpr::Simple(l) => ds.table().simple_character(l),
            ModuleExpr::Costandard(l) | ModuleExpr::Standard(l) | ModuleExpr::Weyl(l) => weyl_character(rs, l),
            ModuleExpr::Tilting(l) => ds.tilting().tilting_character(l),
            ModuleExpr::Pim { r: 1, weight } => ds
                .pim_character(weight)
                .cloned()
                .ok_or_else(|| Error::MissingData(format!("character of Q1{weight}"))),
            ModuleExpr::Pim { r, weight } => Err(Error::MissingData(format!("character of Q{r}{weight}"))),
            ModuleExpr::Steinberg { r } => {
                let q = self.twist_factor(*r)? as i64;
                ds.table().simple_character(&rs.rho().scale(q - 1))
            }
            ModuleExpr::Tensor(a, b) => self.character(a)?.tensor(&self.character(b)?),
            ModuleExpr::Twist(a, r) => self.character(a)?.frobenius_twist(self.twist_factor(*r)?),
            ModuleExpr::Sum(a, b) => self.character(a)?.plus(&self.character(b)?),
            ModuleExpr::Scalar(k, a) => Ok(self.character(a)?.scaled(&BigInt::from(*k))),
            ModuleExpr::Dual(a) => Ok(self.character(a)?.dual()),
            ModuleExpr::Rad(inner, i) => match ds.registry().radical_series(inner) {
                Some(layers) => self.layers_character(&layers[(*i as usize).min(layers.len())..]),
                None => self.series_character(e),
            },
            ModuleExpr::Soc(inner, i) => match ds.registry().radical_series(inner) {
                Some(layers) => {
                    // The radical and socle series agree on a uniserial module;
                    // only that case is resolved.
                    if layers.iter().any(|f| f.factors.len() != 1 || f.factors[0].mult != 1) {
                        return Err(Error::MissingData(format!("socle series of {inner}")));
                    }
                    let keep = layers.len().saturating_sub(*i as usize);
                    self.layers_character(&layers[keep..])
                }
                None => self.series_character(e),
            },
            ModuleExpr::Quotient(a, b) => {
                if ds.registry().radical_series(e).is_some() {
                    return self.series_character(e);
                }
                let c = self.character(a)?.minus(&self.character(b)?)?;
                if !c.is_effective() {
                    return Err(Error::InvalidTable(format!("{e} has a non-effective character")));
                }
                Ok(c)
            }
        }
    }

    fn series_character(&self, e: &ModuleExpr) -> Result<FormalCharacter> {
        let layers = self
            .ds
            .registry()
            .radical_series(e)
            .ok_or_else(|| Error::MissingData(format!("radical series of {e}")))?;
        self.layers_character(&layers)
    }

    fn rs_check(&self, e: &ModuleExpr) -> Result<()> {
        let rs = self.ds.root_system();
        for w in e.weights() {
            rs.check_rank(w)?;
        }
        Ok(())
    }

    /// `dim e`. PIMs without a known character contribute their solved
    /// dimensions.
    pub fn dimension(&self, e: &ModuleExpr) -> Result<BigInt> {
        match self.character(e) {
            Ok(c) => return Ok(c.dimension()),
            Err(Error::MissingData(_)) => {}
            Err(err) => return Err(err),
        }
        match e {
            ModuleExpr::Pim { r: 1, weight } => {
                let dims = self.ds.pim_dimensions()?;
                dims.get(weight)
                    .cloned()
                    .ok_or_else(|| Error::MissingData(format!("dimension of Q1{weight}")))
            }
            ModuleExpr::Tensor(a, b) => Ok(self.dimension(a)? * self.dimension(b)?),
            ModuleExpr::Twist(a, _) | ModuleExpr::Dual(a) => self.dimension(a),
            ModuleExpr::Sum(a, b) => Ok(self.dimension(a)? + self.dimension(b)?),
            ModuleExpr::Scalar(k, a) => Ok(self.dimension(a)? * BigInt::from(*k)),
            ModuleExpr::Quotient(a, b) => Ok(self.dimension(a)? - self.dimension(b)?),
            _ => self.character(e).map(|c| c.dimension()),
        }
    }
}

/// Free-function form of [`Evaluator::character`].
pub fn evaluate_expression(e: &ModuleExpr, ds: &Dataset) -> Result<FormalCharacter> {
    Evaluator::new(ds).character(e)
}

/// Cross-checks every cited simple factor against the characters the
/// dataset can compute: each factor's character must exist, and its
/// multiplicity in a layer cannot exceed its composition multiplicity in
/// the subject whenever the subject's character is known.
pub(crate) fn validate_registry(ds: &Dataset) -> Result<()> {
    let eval = Evaluator::new(ds);
    let p = ds.p();
    for fact in ds.registry().facts() {
        if !matches!(fact.kind, FactKind::Head | FactKind::Socle | FactKind::RadicalLayer) {
            continue;
        }
        let ctx = |msg: String| Error::InvalidRegistry(format!("{} fact on `{}`: {msg}", fact.kind, fact.subject_text));
        for f in &fact.factors {
            eval.simple_factor_character(f)
                .map_err(|e| ctx(format!("factor {f} has no computable character ({e})")))?;
        }
        if fact.group != GroupScope::G {
            continue;
        }
        let subject = match eval.character(&fact.subject) {
            Ok(c) => c,
            Err(Error::MissingData(_)) => continue,
            Err(e) => return Err(ctx(e.to_string())),
        };
        let comp = match ds.table().composition_factors(&subject) {
            Ok(c) => c,
            Err(Error::MissingData(_)) => continue,
            Err(e) => return Err(ctx(e.to_string())),
        };
        for f in &fact.factors {
            let hw = f.highest_weight(p);
            let have = comp
                .iter()
                .find(|(w, _)| w == &hw)
                .and_then(|(_, m)| m.to_u64())
                .unwrap_or(0);
            if f.mult > have {
                return Err(ctx(format!(
                    "factor {f} occurs {} times but the subject has only {have} composition factors L{hw}",
                    f.mult
                )));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_module_expression;

    fn dim(ds: &Dataset, text: &str) -> BigInt {
        Evaluator::new(ds).dimension(&parse_module_expression(text).unwrap()).unwrap()
    }

    fn ch(ds: &Dataset, text: &str) -> Result<FormalCharacter> {
        evaluate_expression(&parse_module_expression(text).unwrap(), ds)
    }

    #[test]
    fn basic_dimensions() {
        let ds = Dataset::builtin().unwrap();
        assert_eq!(dim(&ds, "St * L(1,0)^[1]"), BigInt::from(384));
        assert_eq!(dim(&ds, "k"), BigInt::from(1));
        assert_eq!(dim(&ds, "chi(1,1)*chi(1,1)"), BigInt::from(4096));
        assert_eq!(dim(&ds, "St*L(0,1)"), BigInt::from(896));
        assert_eq!(dim(&ds, "L(0,1) + L(1,0)^[1]"), BigInt::from(20));
        assert_eq!(dim(&ds, "3*St + Delta(2,1)"), BigInt::from(3 * 64 + 189));
        assert_eq!(dim(&ds, "St_2"), BigInt::from(4096));
    }

    #[test]
    fn steinberg_is_weyl_character() {
        let ds = Dataset::builtin().unwrap();
        assert_eq!(ch(&ds, "St").unwrap(), ch(&ds, "chi(1,1)").unwrap());
    }

    #[test]
    fn simple_modules_are_self_dual() {
        let ds = Dataset::builtin().unwrap();
        for text in ["L(1,0)", "L(0,1)", "St", "L(3,1)", "T(2,1)"] {
            assert_eq!(ch(&ds, &format!("dual({text})")).unwrap(), ch(&ds, text).unwrap());
        }
    }

    #[test]
    fn module_m_from_radical_series() {
        let ds = Dataset::builtin().unwrap();
        let m = ch(&ds, "T(2,1)/rad^2(T(2,1))").unwrap();
        assert_eq!(m, ch(&ds, "L(0,1) + L(1,0)^[1]").unwrap());
        assert_eq!(dim(&ds, "St*(T(2,1)/rad^2(T(2,1)))"), BigInt::from(1280));
    }

    #[test]
    fn pims_are_dimension_only_unless_derived() {
        let ds = Dataset::builtin().unwrap();
        assert!(matches!(ch(&ds, "Q1(0,0)"), Err(Error::MissingData(_))));
        assert_eq!(dim(&ds, "Q1(0,0)"), BigInt::from(2304));
        assert_eq!(dim(&ds, "Q1(0,0) + 2*Q1(0,1) + 16*St"), BigInt::from(4096));
        assert_eq!(ch(&ds, "Q1(0,1)").unwrap(), ch(&ds, "T(2,1)").unwrap());
    }

    #[test]
    fn unresolved_radicals_are_missing() {
        let ds = Dataset::builtin().unwrap();
        assert!(matches!(ch(&ds, "rad(Nabla(2,1))"), Err(Error::MissingData(_))));
        assert!(matches!(ch(&ds, "T(5,5)"), Err(Error::MissingData(_))));
        assert!(matches!(ch(&ds, "L(1,0,0)"), Err(Error::RankMismatch { .. })));
    }

    #[test]
    fn quotient_by_character_difference() {
        let ds = Dataset::builtin().unwrap();
        let c = ch(&ds, "Nabla(1,0)/L(1,0)").unwrap();
        assert_eq!(c, FormalCharacter::trivial(ds.root_system()));
        assert!(matches!(ch(&ds, "k/L(1,0)"), Err(Error::InvalidTable(_))));
    }

    #[test]
    fn radical_of_registered_series() {
        let ds = Dataset::builtin().unwrap();
        let rad = ch(&ds, "rad(T(2,1)/rad^2(T(2,1)))").unwrap();
        assert_eq!(rad, ch(&ds, "L(1,0)^[1]").unwrap());
        let soc = ch(&ds, "soc(T(2,1)/rad^2(T(2,1)))").unwrap();
        assert_eq!(soc, rad);
    }

    #[test]
    fn registry_factor_bounds() {
        let text = crate::modular::BUILTIN_DATA.replace(
            r#""subject": "Nabla(1,0)",
      "payload": {"factors": [{"weight": [0, 0], "mult": 1}]}"#,
            r#""subject": "Nabla(1,0)",
      "payload": {"factors": [{"weight": [0, 0], "mult": 2}]}"#,
        );
        assert_ne!(text, crate::modular::BUILTIN_DATA);
        assert!(matches!(Dataset::from_json_str(&text), Err(Error::InvalidRegistry(_))));
    }
}
