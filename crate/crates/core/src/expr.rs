//! Module expressions and their text syntax.
//!
//! ```text
//! sum     := scalar ('+' scalar)*
//! scalar  := INT '*' scalar | tensor
//! tensor  := postfix (('*' | '/') postfix)*
//! postfix := primary ('^[' INT ']')*
//! primary := '(' sum ')' | atom
//! atom    := 'k' | 'St' | 'St_'INT
//!          | ('L' | 'Nabla' | 'Delta' | 'T' | 'Q'INT | 'chi') '(' INT (',' INT)* ')'
//!          | 'dual' '(' sum ')'
//!          | ('rad' | 'soc') ('^' INT)? '(' sum ')'
//! ```
//!
//! Whitespace is ignored between tokens. `E^[r]` is the Frobenius twist by
//! `p^r`; `E / F` is a quotient. Binding strength: twist, then tensor and
//! quotient, then scalar multiples, then sums; binary operators associate
//! to the left.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::root_system::Weight;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ModuleExpr {
    /// The trivial module `k`.
    Trivial,
    Simple(Weight),
    Costandard(Weight),
    Standard(Weight),
    Tilting(Weight),
    /// Projective indecomposable `Q_r(λ)` of the `r`-th Frobenius kernel.
    Pim { r: u32, weight: Weight },
    /// `St_r`; plain `St` is `St_1`.
    Steinberg { r: u32 },
    /// A Weyl character `chi(λ)` used as a formal summand.
    Weyl(Weight),
    Tensor(Box<ModuleExpr>, Box<ModuleExpr>),
    Twist(Box<ModuleExpr>, u32),
    Sum(Box<ModuleExpr>, Box<ModuleExpr>),
    Scalar(u64, Box<ModuleExpr>),
    Dual(Box<ModuleExpr>),
    Rad(Box<ModuleExpr>, u32),
    Soc(Box<ModuleExpr>, u32),
    Quotient(Box<ModuleExpr>, Box<ModuleExpr>),
}

impl ModuleExpr {
    fn precedence(&self) -> u8 {
        match self {
            ModuleExpr::Sum(..) => 0,
            ModuleExpr::Scalar(..) => 1,
            ModuleExpr::Tensor(..) | ModuleExpr::Quotient(..) => 2,
            ModuleExpr::Twist(..) => 3,
            _ => 4,
        }
    }

    /// Every weight mentioned by an atom.
    pub fn weights(&self) -> Vec<&Weight> {
        let mut out = Vec::new();
        self.collect_weights(&mut out);
        out
    }

    fn collect_weights<'a>(&'a self, out: &mut Vec<&'a Weight>) {
        use ModuleExpr::*;
        match self {
            Trivial | Steinberg { .. } => {}
            Simple(w) | Costandard(w) | Standard(w) | Tilting(w) | Weyl(w) => out.push(w),
            Pim { weight, .. } => out.push(weight),
            Tensor(a, b) | Sum(a, b) | Quotient(a, b) => {
                a.collect_weights(out);
                b.collect_weights(out);
            }
            Twist(a, _) | Scalar(_, a) | Dual(a) | Rad(a, _) | Soc(a, _) => a.collect_weights(out),
        }
    }

    /// Flattens a sum of (scaled) terms into `(multiplicity, term)` pairs.
    pub fn summands(&self) -> Vec<(u64, &ModuleExpr)> {
        match self {
            ModuleExpr::Sum(a, b) => {
                let mut v = a.summands();
                v.extend(b.summands());
                v
            }
            ModuleExpr::Scalar(n, e) => e.summands().into_iter().map(|(m, t)| (n * m, t)).collect(),
            other => vec![(1, other)],
        }
    }
}

fn write_weight(f: &mut fmt::Formatter<'_>, name: &str, w: &Weight) -> fmt::Result {
    write!(f, "{name}{w}")
}

fn write_child(f: &mut fmt::Formatter<'_>, e: &ModuleExpr, min_prec: u8) -> fmt::Result {
    if e.precedence() < min_prec {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

impl fmt::Display for ModuleExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use ModuleExpr::*;
        match self {
            Trivial => write!(f, "k"),
            Simple(w) => write_weight(f, "L", w),
            Costandard(w) => write_weight(f, "Nabla", w),
            Standard(w) => write_weight(f, "Delta", w),
            Tilting(w) => write_weight(f, "T", w),
            Weyl(w) => write_weight(f, "chi", w),
            Pim { r, weight } => write_weight(f, &format!("Q{r}"), weight),
            Steinberg { r } => {
                if *r == 1 {
                    write!(f, "St")
                } else {
                    write!(f, "St_{r}")
                }
            }
            Tensor(a, b) => {
                write_child(f, a, 2)?;
                write!(f, "*")?;
                write_child(f, b, 3)
            }
            Quotient(a, b) => {
                write_child(f, a, 2)?;
                write!(f, "/")?;
                write_child(f, b, 3)
            }
            Twist(a, r) => {
                write_child(f, a, 3)?;
                write!(f, "^[{r}]")
            }
            Sum(a, b) => {
                write_child(f, a, 0)?;
                write!(f, " + ")?;
                write_child(f, b, 1)
            }
            Scalar(n, a) => {
                write!(f, "{n}*")?;
                write_child(f, a, 1)
            }
            Dual(a) => write!(f, "dual({a})"),
            Rad(a, i) => {
                if *i == 1 {
                    write!(f, "rad({a})")
                } else {
                    write!(f, "rad^{i}({a})")
                }
            }
            Soc(a, i) => {
                if *i == 1 {
                    write!(f, "soc({a})")
                } else {
                    write!(f, "soc^{i}({a})")
                }
            }
        }
    }
}

impl FromStr for ModuleExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_module_expression(s)
    }
}

pub fn parse_module_expression(text: &str) -> Result<ModuleExpr> {
    let mut p = Parser { src: text, pos: 0 };
    let e = p.sum()?;
    p.skip_ws();
    if p.pos < text.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, message: &str) -> Error {
        Error::Syntax {
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected `{c}`")))
        }
    }

    fn uint(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        let digits: usize = self.src[start..]
            .chars()
            .take_while(|c| c.is_ascii_digit())
            .count();
        if digits == 0 {
            return Err(self.error("expected an integer"));
        }
        self.pos += digits;
        self.src[start..self.pos].parse().map_err(|_| Error::Syntax {
            offset: start,
            message: "integer out of range".into(),
        })
    }

    fn int(&mut self) -> Result<i64> {
        let neg = self.eat('-');
        let start = self.pos;
        let v = self.uint()?;
        let v = i64::try_from(v).map_err(|_| Error::Syntax {
            offset: start,
            message: "integer out of range".into(),
        })?;
        Ok(if neg { -v } else { v })
    }

    fn small(&mut self) -> Result<u32> {
        let start = self.pos;
        let v = self.uint()?;
        u32::try_from(v).map_err(|_| Error::Syntax {
            offset: start,
            message: "exponent out of range".into(),
        })
    }

    fn ident(&mut self) -> Option<(usize, &'a str)> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.src[start..];
        let first = rest.chars().next()?;
        if !first.is_ascii_alphabetic() {
            return None;
        }
        let len = rest
            .chars()
            .take_while(|c| c.is_ascii_alphanumeric() || *c == '_')
            .count();
        self.pos += len;
        Some((start, &self.src[start..start + len]))
    }

    fn sum(&mut self) -> Result<ModuleExpr> {
        let mut lhs = self.scalar()?;
        while self.eat('+') {
            let rhs = self.scalar()?;
            lhs = ModuleExpr::Sum(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn scalar(&mut self) -> Result<ModuleExpr> {
        if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            let n = self.uint()?;
            self.expect('*')?;
            let inner = self.scalar()?;
            return Ok(ModuleExpr::Scalar(n, Box::new(inner)));
        }
        self.tensor()
    }

    fn tensor(&mut self) -> Result<ModuleExpr> {
        let mut lhs = self.postfix()?;
        loop {
            if self.eat('*') {
                let rhs = self.postfix()?;
                lhs = ModuleExpr::Tensor(Box::new(lhs), Box::new(rhs));
            } else if self.eat('/') {
                let rhs = self.postfix()?;
                lhs = ModuleExpr::Quotient(Box::new(lhs), Box::new(rhs));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn postfix(&mut self) -> Result<ModuleExpr> {
        let mut e = self.primary()?;
        while self.eat('^') {
            self.expect('[')?;
            let r = self.small()?;
            self.expect(']')?;
            e = ModuleExpr::Twist(Box::new(e), r);
        }
        Ok(e)
    }

    fn primary(&mut self) -> Result<ModuleExpr> {
        if self.eat('(') {
            let e = self.sum()?;
            self.expect(')')?;
            return Ok(e);
        }
        let Some((start, name)) = self.ident() else {
            return Err(self.error("expected a module atom or `(`"));
        };
        let weight_atom = |w: Weight| -> Option<ModuleExpr> {
            Some(match name {
                "L" => ModuleExpr::Simple(w),
                "Nabla" => ModuleExpr::Costandard(w),
                "Delta" => ModuleExpr::Standard(w),
                "T" => ModuleExpr::Tilting(w),
                "chi" => ModuleExpr::Weyl(w),
                _ => {
                    let r: u32 = name.strip_prefix('Q')?.parse().ok()?;
                    if r == 0 {
                        return None;
                    }
                    ModuleExpr::Pim { r, weight: w }
                }
            })
        };
        match name {
            "k" => Ok(ModuleExpr::Trivial),
            "St" => Ok(ModuleExpr::Steinberg { r: 1 }),
            _ if name.starts_with("St_") => match name[3..].parse::<u32>() {
                Ok(r) if r >= 1 => Ok(ModuleExpr::Steinberg { r }),
                _ => Err(Error::UnknownAtom {
                    offset: start,
                    name: name.to_string(),
                }),
            },
            "dual" => {
                self.expect('(')?;
                let e = self.sum()?;
                self.expect(')')?;
                Ok(ModuleExpr::Dual(Box::new(e)))
            }
            "rad" | "soc" => {
                let i = if self.eat('^') { self.small()? } else { 1 };
                if i == 0 {
                    return Err(self.error("layer index must be at least 1"));
                }
                self.expect('(')?;
                let e = self.sum()?;
                self.expect(')')?;
                Ok(if name == "rad" {
                    ModuleExpr::Rad(Box::new(e), i)
                } else {
                    ModuleExpr::Soc(Box::new(e), i)
                })
            }
            _ => {
                // Validate the name before consuming the argument list so the
                // error points at the atom.
                if weight_atom(Weight::zero(0)).is_none() {
                    return Err(Error::UnknownAtom {
                        offset: start,
                        name: name.to_string(),
                    });
                }
                self.expect('(')?;
                let mut coords = vec![self.int()?];
                while self.eat(',') {
                    coords.push(self.int()?);
                }
                self.expect(')')?;
                Ok(weight_atom(Weight::new(coords)).expect("name validated"))
            }
        }
    }
}
