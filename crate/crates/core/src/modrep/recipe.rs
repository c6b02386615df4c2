//! Module recipes: `trivial | regular | dual(r) | tensor(r,r) | syzygy(r) |
//! cosyzygy(r) | sum(r,r) | character(i)`.

use std::fmt;

use crate::exactlin::Fq;
use crate::groups::Group;

use super::{
    character_module, cosyzygy, direct_sum, dual, regular_module, syzygy, tensor, trivial_module,
    GModule, ModRepError,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleRecipe {
    Trivial,
    Regular,
    Dual(Box<ModuleRecipe>),
    Tensor(Box<ModuleRecipe>, Box<ModuleRecipe>),
    Syzygy(Box<ModuleRecipe>),
    Cosyzygy(Box<ModuleRecipe>),
    Sum(Box<ModuleRecipe>, Box<ModuleRecipe>),
    Character(usize),
}

impl fmt::Display for ModuleRecipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleRecipe::Trivial => write!(f, "trivial"),
            ModuleRecipe::Regular => write!(f, "regular"),
            ModuleRecipe::Dual(r) => write!(f, "dual({r})"),
            ModuleRecipe::Tensor(a, b) => write!(f, "tensor({a},{b})"),
            ModuleRecipe::Syzygy(r) => write!(f, "syzygy({r})"),
            ModuleRecipe::Cosyzygy(r) => write!(f, "cosyzygy({r})"),
            ModuleRecipe::Sum(a, b) => write!(f, "sum({a},{b})"),
            ModuleRecipe::Character(i) => write!(f, "character({i})"),
        }
    }
}

impl ModuleRecipe {
    /// `Ω^n k` for `n ≥ 0` (and `Ω^{-n}` via cosyzygies for `n < 0`).
    pub fn omega(n: i32) -> ModuleRecipe {
        let mut r = ModuleRecipe::Trivial;
        for _ in 0..n.unsigned_abs() {
            r = if n > 0 {
                ModuleRecipe::Syzygy(Box::new(r))
            } else {
                ModuleRecipe::Cosyzygy(Box::new(r))
            };
        }
        r
    }

    pub fn parse(text: &str) -> Result<ModuleRecipe, ModRepError> {
        let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut pos = 0;
        let r = parse_expr(&chars, &mut pos, text)?;
        if pos != chars.len() {
            return Err(ModRepError::BadRecipe(format!("trailing input in '{text}'")));
        }
        Ok(r)
    }

    pub fn build(&self, group: &Group, field: &Fq) -> Result<GModule, ModRepError> {
        Ok(match self {
            ModuleRecipe::Trivial => trivial_module(group, field),
            ModuleRecipe::Regular => regular_module(group, field),
            ModuleRecipe::Dual(r) => dual(&r.build(group, field)?),
            ModuleRecipe::Tensor(a, b) => tensor(&a.build(group, field)?, &b.build(group, field)?)?,
            ModuleRecipe::Syzygy(r) => syzygy(&r.build(group, field)?)?,
            ModuleRecipe::Cosyzygy(r) => cosyzygy(&r.build(group, field)?)?,
            ModuleRecipe::Sum(a, b) => direct_sum(&a.build(group, field)?, &b.build(group, field)?)?,
            ModuleRecipe::Character(i) => character_module(group, field, *i)?,
        })
    }
}

fn parse_expr(c: &[char], pos: &mut usize, src: &str) -> Result<ModuleRecipe, ModRepError> {
    let start = *pos;
    while *pos < c.len() && c[*pos].is_ascii_alphabetic() {
        *pos += 1;
    }
    let word: String = c[start..*pos].iter().collect();
    let bad = |why: &str| ModRepError::BadRecipe(format!("{why} in '{src}'"));
    let expect = |ch: char, pos: &mut usize| -> Result<(), ModRepError> {
        if c.get(*pos) == Some(&ch) {
            *pos += 1;
            Ok(())
        } else {
            Err(ModRepError::BadRecipe(format!("expected '{ch}' in '{src}'")))
        }
    };
    match word.as_str() {
        "trivial" => Ok(ModuleRecipe::Trivial),
        "regular" => Ok(ModuleRecipe::Regular),
        "dual" | "syzygy" | "cosyzygy" => {
            expect('(', pos)?;
            let inner = Box::new(parse_expr(c, pos, src)?);
            expect(')', pos)?;
            Ok(match word.as_str() {
                "dual" => ModuleRecipe::Dual(inner),
                "syzygy" => ModuleRecipe::Syzygy(inner),
                _ => ModuleRecipe::Cosyzygy(inner),
            })
        }
        "tensor" | "sum" => {
            expect('(', pos)?;
            let a = Box::new(parse_expr(c, pos, src)?);
            expect(',', pos)?;
            let b = Box::new(parse_expr(c, pos, src)?);
            expect(')', pos)?;
            Ok(if word == "tensor" {
                ModuleRecipe::Tensor(a, b)
            } else {
                ModuleRecipe::Sum(a, b)
            })
        }
        "character" => {
            expect('(', pos)?;
            let s = *pos;
            while *pos < c.len() && c[*pos].is_ascii_digit() {
                *pos += 1;
            }
            let n: String = c[s..*pos].iter().collect();
            let i = n.parse().map_err(|_| bad("bad character index"))?;
            expect(')', pos)?;
            Ok(ModuleRecipe::Character(i))
        }
        "" => Err(bad("expected a recipe")),
        other => Err(bad(&format!("unknown constructor '{other}'"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        for s in ["trivial", "syzygy(syzygy(trivial))", "tensor(regular,dual(character(2)))", "sum(trivial,cosyzygy(trivial))"] {
            let r = ModuleRecipe::parse(s).unwrap();
            assert_eq!(r.to_string(), s);
        }
        assert_eq!(ModuleRecipe::parse("syzygy( trivial )").unwrap(), ModuleRecipe::omega(1));
        assert!(ModuleRecipe::parse("syzygy(trivial").is_err());
        assert!(ModuleRecipe::parse("frobenius(trivial)").is_err());
    }
}
