//! Registry of `T_k(F)` and `ŜAut_F(k)` for supported finite groups, with
//! explicit generator modules and restriction homomorphisms between entries.
//!
//! Supported: groups of order prime to `p`, cyclic groups, the Klein four
//! group, and `Q₈`. Anything else is rejected.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;
use thiserror::Error;

use crate::abgrp::{AbError, AbHom, FgAbelian, Normalized};
use crate::exactlin::{Fq, ZMatrix};
use crate::groups::{Group, GroupMono};
use crate::modrep::{
    character_module, characters, is_endotrivial, restrict, stable_iso, strip_projectives,
    syzygy_power, tate_h0, tensor, trivial_module, GModule, ModRepError, ModuleRecipe,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PicardError {
    #[error("unsupported group: {0}")]
    UnsupportedGroup(String),
    #[error("unsupported profile: {0}")]
    UnsupportedProfile(String),
    #[error("could not identify the restriction of {0} in the target")]
    IdentificationFailed(String),
    #[error("generator {0} has no module model; its restriction is unknown")]
    UnverifiedGenerator(String),
    #[error("registry entries are over different fields")]
    FieldMismatch,
    #[error(transparent)]
    ModRep(#[from] ModRepError),
    #[error(transparent)]
    Ab(#[from] AbError),
}

/// How a generator of `T(F)` is realized.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratorKind {
    /// `Ωk`.
    Omega,
    /// A one-dimensional module, by index into `characters`.
    Character(usize),
    /// Cited but not constructed here.
    Unverified { dim: usize, note: String },
}

#[derive(Clone, Debug, Serialize)]
pub struct TGenerator {
    pub label: String,
    pub kind: GeneratorKind,
    /// `0` for infinite order.
    pub order: u64,
}

impl TGenerator {
    pub fn recipe(&self) -> Option<ModuleRecipe> {
        match self.kind {
            GeneratorKind::Omega => Some(ModuleRecipe::omega(1)),
            GeneratorKind::Character(i) => Some(ModuleRecipe::Character(i)),
            GeneratorKind::Unverified { .. } => None,
        }
    }

    pub fn is_verified(&self) -> bool {
        !matches!(self.kind, GeneratorKind::Unverified { .. })
    }
}

/// `T_k(F)` with generators. `structure` is the normal form of the group
/// presented by the generators and their orders.
#[derive(Clone, Debug)]
pub struct TGroupData {
    pub group: Group,
    pub field: Fq,
    pub structure: FgAbelian,
    pub generators: Vec<TGenerator>,
    pub note: Option<String>,
    presentation: Normalized,
}

/// `ŜAut(k)` for a finite group or a named profile.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StableAutProfile {
    pub group: String,
    pub structure: FgAbelian,
}

fn divides(p: u32, n: usize) -> bool {
    n % p as usize == 0
}

fn units(k: &Fq) -> FgAbelian {
    FgAbelian::cyclic(k.order() as u64 - 1)
}

/// `(Z/p)^e`, the additive group of `k`.
fn additive(k: &Fq) -> FgAbelian {
    let orders = vec![k.characteristic() as u64; k.degree() as usize];
    FgAbelian::from_orders(&orders).group
}

fn gcd(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}

fn is_quaternion8(g: &Group) -> bool {
    g.order() == 8 && !g.is_abelian() && g.order_census().iter().filter(|&&o| o == 2).count() == 1
}

fn is_klein4(g: &Group) -> bool {
    g.order() == 4 && !g.is_cyclic()
}

fn character_order(exps: &[u32], q1: u64) -> u64 {
    exps.iter()
        .map(|&a| q1 / gcd(a as u64, q1))
        .fold(1, num_integer::lcm)
}

/// A character generating `Hom(G, k^×)` for cyclic `G`.
fn generating_character(g: &Group, k: &Fq) -> (usize, u64) {
    let q1 = k.order() as u64 - 1;
    characters(g, k)
        .iter()
        .enumerate()
        .map(|(i, c)| (i, character_order(c, q1)))
        .max_by_key(|&(i, o)| (o, std::cmp::Reverse(i)))
        .unwrap_or((0, 1))
}

fn has_cube_root_of_unity(k: &Fq) -> bool {
    (k.order() - 1) % 3 == 0
}

/// `t_group`: the registry entry for `(g, k)`.
pub fn t_group(g: &Group, k: &Fq) -> Result<TGroupData, PicardError> {
    let p = k.characteristic();
    let n = g.order();
    let mut gens = Vec::new();
    let mut note = None;
    if !divides(p, n) {
        // stable category is zero
    } else if g.is_cyclic() {
        let mut pa = 1;
        while divides(p, n / pa) {
            pa *= p as usize;
        }
        let m = (n / pa) as u64;
        let (idx, ord) = generating_character(g, k);
        debug_assert_eq!(ord, gcd(m, k.order() as u64 - 1));
        if ord > 1 {
            gens.push(TGenerator {
                label: "chi".into(),
                kind: GeneratorKind::Character(idx),
                order: ord,
            });
        }
        if pa >= 3 {
            gens.push(TGenerator {
                label: "Omega".into(),
                kind: GeneratorKind::Omega,
                order: 2,
            });
        }
    } else if is_klein4(g) {
        gens.push(TGenerator {
            label: "Omega".into(),
            kind: GeneratorKind::Omega,
            order: 0,
        });
    } else if is_quaternion8(g) {
        gens.push(TGenerator {
            label: "Omega".into(),
            kind: GeneratorKind::Omega,
            order: 4,
        });
        if has_cube_root_of_unity(k) {
            let n = "cited dimension-3 module, not constructed here";
            gens.push(TGenerator {
                label: "L3".into(),
                kind: GeneratorKind::Unverified {
                    dim: 3,
                    note: n.into(),
                },
                order: 2,
            });
            note = Some(format!("T(Q8) = Z/4 + Z/2 over {}; the Z/2 generator is cited, not verified", field_name(k)));
        } else {
            note = Some(format!("T(Q8) = Z/4 over {}, which has no cube root of unity", field_name(k)));
        }
    } else {
        return Err(PicardError::UnsupportedGroup(format!(
            "{} (order {n}) over F_{}",
            g.name(),
            k.order()
        )));
    }
    let orders: Vec<u64> = gens.iter().map(|x| x.order).collect();
    let presentation = FgAbelian::from_orders(&orders);
    Ok(TGroupData {
        group: g.clone(),
        field: k.clone(),
        structure: presentation.group.clone(),
        generators: gens,
        note,
        presentation,
    })
}

pub fn field_name(k: &Fq) -> String {
    format!("F{}", k.order())
}

/// `stable_aut`: `ŜAut_g(k) = (k/|g|k)^×`.
pub fn stable_aut(g: &Group, k: &Fq) -> StableAutProfile {
    let structure = if divides(k.characteristic(), g.order()) {
        units(k)
    } else {
        FgAbelian::trivial()
    };
    StableAutProfile {
        group: g.name().to_string(),
        structure,
    }
}

/// The unit group of `Ĥ⁰(g; k)` read off from its dimension (the ring is `k`
/// or `0`); used to cross-check `stable_aut`.
pub fn tate_units(g: &Group, k: &Fq) -> FgAbelian {
    if tate_h0(g, k).dim == 1 {
        units(k)
    } else {
        FgAbelian::trivial()
    }
}

impl TGroupData {
    fn generator_module(&self, j: usize) -> Result<GModule, PicardError> {
        let gen = &self.generators[j];
        match gen.recipe() {
            Some(r) => Ok(r.build(&self.group, &self.field)?),
            None => Err(PicardError::UnverifiedGenerator(gen.label.clone())),
        }
    }

    /// A module in the class with the given generator exponents: the
    /// character part tensored together, then shifted by `Ω^a`.
    pub fn representative(&self, exps: &[i64]) -> Result<GModule, PicardError> {
        let mut base = trivial_module(&self.group, &self.field);
        let mut shift = 0i64;
        for (gen, &e) in self.generators.iter().zip(exps) {
            let e = if gen.order == 0 { e } else { e.rem_euclid(gen.order as i64) };
            if e == 0 {
                continue;
            }
            match gen.kind {
                GeneratorKind::Omega => shift += e,
                GeneratorKind::Character(i) => {
                    let chi = character_module(&self.group, &self.field, i)?;
                    for _ in 0..e {
                        base = tensor(&base, &chi)?;
                    }
                }
                GeneratorKind::Unverified { .. } => {
                    return Err(PicardError::UnverifiedGenerator(gen.label.clone()))
                }
            }
        }
        if let Some(o) = self.omega_order() {
            if o > 0 {
                shift = balanced(shift, o as i64);
            }
        }
        let m = syzygy_power(&base, shift as i32)?;
        Ok(strip_projectives(&m)?.0)
    }

    fn omega_order(&self) -> Option<u64> {
        self.generators
            .iter()
            .find(|g| g.kind == GeneratorKind::Omega)
            .map(|g| g.order)
    }

    /// Exponent tuples to search when identifying a class: every element
    /// for finite groups, and `Ω^a` with `|a| ≤ 4` along infinite factors.
    fn search_space(&self) -> Result<Vec<Vec<i64>>, PicardError> {
        let mut out = vec![Vec::new()];
        for gen in &self.generators {
            let range: Vec<i64> = if !gen.is_verified() {
                vec![0]
            } else if gen.order == 0 {
                (-4..=4).collect()
            } else {
                (0..gen.order as i64).collect()
            };
            out = out
                .into_iter()
                .flat_map(|v| {
                    range.iter().map(move |&a| {
                        let mut w = v.clone();
                        w.push(a);
                        w
                    })
                })
                .collect();
        }
        Ok(out)
    }

    /// Generator exponents of the class of `m`, found by comparing with
    /// every element representative. Classes involving an unverified
    /// generator are never matched.
    pub fn identify(&self, m: &GModule) -> Result<Option<Vec<i64>>, PicardError> {
        let (core, _) = strip_projectives(m)?;
        for exps in self.search_space()? {
            let rep = self.representative(&exps)?;
            if rep.dim() == core.dim() && stable_iso(&rep, &core)? {
                return Ok(Some(exps));
            }
        }
        Ok(None)
    }

    /// Generator exponents to normal-form coordinates.
    pub fn to_normal(&self, exps: &[i64]) -> Vec<BigInt> {
        let v: Vec<BigInt> = exps.iter().map(|&x| BigInt::from(x)).collect();
        self.structure.reduce(&self.presentation.to_normal.mul_vec(&v))
    }

    /// Normal-form generator `i` as generator exponents.
    pub fn from_normal(&self, i: usize) -> Vec<i64> {
        self.presentation
            .from_normal
            .column(i)
            .iter()
            .map(|x| x.to_i64().expect("small exponent"))
            .collect()
    }
}

fn balanced(a: i64, o: i64) -> i64 {
    let r = a.rem_euclid(o);
    if 2 * r > o {
        r - o
    } else {
        r
    }
}

/// `restriction_on_t`: `Res` along `mono : tgt.group → src.group` as a
/// homomorphism `T(src) → T(tgt)` in normal-form coordinates.
pub fn restriction_on_t(src: &TGroupData, mono: &GroupMono, tgt: &TGroupData) -> Result<AbHom, PicardError> {
    if src.field != tgt.field {
        return Err(PicardError::FieldMismatch);
    }
    if mono.target().fingerprint() != src.group.fingerprint()
        || mono.source().fingerprint() != tgt.group.fingerprint()
    {
        return Err(PicardError::ModRep(ModRepError::GroupMismatch));
    }
    let rows = tgt.structure.ngens();
    let cols = src.structure.ngens();
    let mut m = ZMatrix::zeros(rows, cols);
    if rows > 0 && cols > 0 {
        for i in 0..cols {
            let exps = src.from_normal(i);
            let module = src.representative(&exps)?;
            let res = restrict(&module, mono)?;
            let found = tgt
                .identify(&res)?
                .ok_or_else(|| PicardError::IdentificationFailed(format!(
                    "generator {} of T({})",
                    i + 1,
                    src.group.name()
                )))?;
            for (r, x) in tgt.to_normal(&found).into_iter().enumerate() {
                m.set(r, i, x);
            }
        }
    }
    Ok(AbHom::new(&src.structure, &tgt.structure, m)?)
}

/// Outcome of checking one registry generator with module arithmetic.
#[derive(Clone, Debug, Serialize)]
pub struct GeneratorCheck {
    pub label: String,
    pub endotrivial: Option<bool>,
    pub order_ok: Option<bool>,
    pub note: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub group: String,
    pub field: String,
    pub structure: FgAbelian,
    pub checks: Vec<GeneratorCheck>,
    pub stable_aut_matches_tate: bool,
}

impl VerificationReport {
    /// Every constructed generator passed; unverified ones are skipped.
    pub fn passed(&self) -> bool {
        self.stable_aut_matches_tate
            && self
                .checks
                .iter()
                .all(|c| c.endotrivial != Some(false) && c.order_ok != Some(false))
    }
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Self-verification of a registry entry: each constructed generator is
/// endotrivial and has exactly the stated order.
pub fn verify(data: &TGroupData) -> Result<VerificationReport, PicardError> {
    let k = trivial_module(&data.group, &data.field);
    let mut checks = Vec::new();
    for (j, gen) in data.generators.iter().enumerate() {
        if !gen.is_verified() {
            let GeneratorKind::Unverified { note, .. } = &gen.kind else { unreachable!() };
            checks.push(GeneratorCheck {
                label: gen.label.clone(),
                endotrivial: None,
                order_ok: None,
                note: Some(note.clone()),
            });
            continue;
        }
        let m = data.generator_module(j)?;
        let endo = is_endotrivial(&m)?;
        let power = |e: i64| -> Result<GModule, PicardError> {
            let mut exps = vec![0; data.generators.len()];
            exps[j] = e;
            // raw powers, not reduced by the stated order
            let mut one = data.clone();
            for g in one.generators.iter_mut() {
                g.order = 0;
            }
            one.representative(&exps)
        };
        let order_ok = if gen.order == 0 {
            let mut ok = true;
            for e in 1..=2 {
                ok &= !stable_iso(&power(e)?, &k)?;
            }
            ok
        } else {
            let mut ok = stable_iso(&power(gen.order as i64)?, &k)?;
            for r in prime_divisors(gen.order) {
                ok &= !stable_iso(&power((gen.order / r) as i64)?, &k)?;
            }
            ok
        };
        checks.push(GeneratorCheck {
            label: gen.label.clone(),
            endotrivial: Some(endo),
            order_ok: Some(order_ok),
            note: None,
        });
    }
    Ok(VerificationReport {
        group: data.group.name().to_string(),
        field: field_name(&data.field),
        structure: data.structure.clone(),
        checks,
        stable_aut_matches_tate: stable_aut(&data.group, &data.field).structure
            == tate_units(&data.group, &data.field),
    })
}

/// Named infinite groups with closed-form answers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ProfileKind {
    #[serde(rename = "Z_times")]
    ZTimes,
    #[serde(rename = "Z2_times")]
    Z2Times,
}

impl ProfileKind {
    pub fn parse(s: &str) -> Result<ProfileKind, PicardError> {
        match s {
            "Z_times" => Ok(ProfileKind::ZTimes),
            "Z2_times" => Ok(ProfileKind::Z2Times),
            other => Err(PicardError::UnsupportedProfile(other.to_string())),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ProfileKind::ZTimes => "Z_times",
            ProfileKind::Z2Times => "Z2_times",
        }
    }
}

/// `T` and (when known) `ŜAut` of a profile group.
#[derive(Clone, Debug, Serialize)]
pub struct ProfileData {
    pub name: String,
    pub t: FgAbelian,
    pub stable_aut: Option<StableAutProfile>,
}

/// `infinite_profile`: `Z × A` and `Z² × A` for finite `A` with `p | |A|`.
///
/// `T(Z×A) = (k/|A|k)^× ⊕ T(A)`, `ŜAut(Z×A) = (k/|A|k)^× ⊕ k`,
/// `T(Z²×A) = Hom(Z², (k/|A|k)^×) ⊕ k ⊕ T(A)`.
pub fn infinite_profile(kind: ProfileKind, a: &Group, k: &Fq) -> Result<ProfileData, PicardError> {
    if !divides(k.characteristic(), a.order()) {
        return Err(PicardError::UnsupportedProfile(format!(
            "{}({}) needs the characteristic to divide the order",
            kind.name(),
            a.name()
        )));
    }
    let ta = t_group(a, k)?.structure;
    let u = units(k);
    let add = additive(k);
    let name = format!("{}({})", kind.name(), a.name());
    Ok(match kind {
        ProfileKind::ZTimes => ProfileData {
            stable_aut: Some(StableAutProfile {
                group: name.clone(),
                structure: crate::abgrp::ab_direct_sum(&[u.clone(), add]),
            }),
            t: crate::abgrp::ab_direct_sum(&[u, ta]),
            name,
        },
        ProfileKind::Z2Times => ProfileData {
            t: crate::abgrp::ab_direct_sum(&[u.clone(), u, add, ta]),
            stable_aut: None,
            name,
        },
    })
}
