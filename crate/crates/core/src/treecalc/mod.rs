//! `T(G)` for fundamental groups of finite graphs of groups, from the exact
//! sequence
//!
//! ```text
//! ∏_v ŜAut_{G_v}(k) → ∏_e ŜAut_{G_e}(k) → T(G) → ∏_v T(G_v) → ∏_e T(G_e)
//! ```
//!
//! whose maps are `Res − Res_f` (restriction along the initial mono minus
//! restriction along the terminal one). `T(G)` is an extension of the
//! kernel on the right by the cokernel on the left; it is reported only
//! when a splitting rule applies.

mod graph;
pub mod input;

pub use graph::{Edge, GraphOfGroups, Vertex};
pub(crate) use graph::UnionFind;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;
use thiserror::Error;

use crate::abgrp::{
    ab_cokernel, ab_direct_sum, ab_kernel, block_hom, extension_resolve, AbHom, Extension,
    FgAbelian, SplitReason,
};
use crate::exactlin::{Fq, ZMatrix};
use crate::groups::{build_group, mono_from_generator_images, GroupError, GroupSpec};
use crate::modrep::{restrict, ModRepError, ModuleRecipe};
use crate::picard::{
    infinite_profile, restriction_on_t, stable_aut, t_group, PicardError, ProfileData, ProfileKind,
    TGroupData,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeError {
    #[error("invalid graph of groups: {0}")]
    Invalid(String),
    #[error("unsupported vertex: {0}")]
    UnsupportedVertex(String),
    #[error("unsupported profile: {0}")]
    UnsupportedProfile(String),
    #[error("splitting rule and computation disagree: {0}")]
    RuleDisagreement(String),
    #[error(transparent)]
    Picard(#[from] PicardError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    ModRep(#[from] ModRepError),
}

/// One entry of the computation log.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Step {
    pub stage: String,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<i64>>>,
}

impl Step {
    fn new(stage: &str, detail: impl Into<String>) -> Step {
        Step {
            stage: stage.into(),
            detail: detail.into(),
            matrix: None,
        }
    }

    fn with_map(stage: &str, h: &AbHom) -> Step {
        Step {
            stage: stage.into(),
            detail: format!("{} -> {}", h.source(), h.target()),
            matrix: Some(matrix_rows(h.matrix())),
        }
    }
}

fn matrix_rows(m: &ZMatrix) -> Vec<Vec<i64>> {
    m.to_rows()
        .iter()
        .map(|r| r.iter().map(|x| x.to_i64().expect("small entry")).collect())
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Answer {
    Determined(FgAbelian),
    Ambiguous { sub: FgAbelian, quot: FgAbelian },
}

/// `compute_t` output. `sub` is the cokernel at the `ŜAut` level, `quot`
/// the kernel at the `T` level.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TResult {
    pub answer: Answer,
    pub sub: FgAbelian,
    pub quot: FgAbelian,
    pub rule: SplitReason,
    pub provenance: Vec<Step>,
}

impl TResult {
    pub fn determined(&self) -> Option<&FgAbelian> {
        match &self.answer {
            Answer::Determined(g) => Some(g),
            Answer::Ambiguous { .. } => None,
        }
    }

    pub fn is_ambiguous(&self) -> bool {
        matches!(self.answer, Answer::Ambiguous { .. })
    }
}

fn profile_data(kind: ProfileKind, of: &GraphOfGroups, k: &Fq) -> Result<(ProfileData, Vec<Step>), TreeError> {
    if of.vertices().len() == 1 && of.edges().is_empty() {
        if let Some(a) = of.vertices()[0].as_finite() {
            let d = infinite_profile(kind, a, k)?;
            let step = Step::new("profile", format!("T({}) = {} (closed form)", d.name, d.t));
            return Ok((d, vec![step]));
        }
    }
    if kind != ProfileKind::ZTimes || !of.is_free_product() || !of.all_finite() {
        return Err(TreeError::UnsupportedProfile(format!(
            "{}({}) needs a finite group, or a free product of finite groups for Z_times",
            kind.name(),
            of
        )));
    }
    let p = k.characteristic() as usize;
    if of.vertices().iter().any(|v| v.as_finite().unwrap().order() % p != 0) {
        return Err(TreeError::UnsupportedProfile(format!(
            "Z_times({of}) needs the characteristic to divide every factor"
        )));
    }
    // Z × H is the HNN extension of H along the identity: the aut-level map
    // is zero and inflation splits, so T = ŜAut_H ⊕ T(H), with ŜAut of a
    // free product the product over the factors.
    let inner = compute_t(of, k)?;
    let th = inner
        .determined()
        .cloned()
        .ok_or_else(|| TreeError::UnsupportedProfile(format!("T({of}) is not determined")))?;
    let parts: Vec<FgAbelian> = of
        .vertices()
        .iter()
        .map(|v| stable_aut(v.as_finite().unwrap(), k).structure)
        .collect();
    let saut_h = ab_direct_sum(&parts);
    let name = format!("Z_times({of})");
    let t = match extension_resolve(&saut_h, &th, SplitReason::SplitByInflation) {
        Extension::Determined(g) => g,
        Extension::Ambiguous { .. } => unreachable!("inflation splits"),
    };
    let mut steps: Vec<Step> = inner
        .provenance
        .into_iter()
        .map(|mut s| {
            s.stage = format!("inner/{}", s.stage);
            s
        })
        .collect();
    steps.push(Step::new(
        "profile",
        format!("T({name}) = SAut({of}) + T({of}) = {saut_h} + {th} = {t}; split by inflation"),
    ));
    Ok((
        ProfileData {
            name,
            t,
            stable_aut: None,
        },
        steps,
    ))
}

fn incident(gog: &GraphOfGroups, v: usize) -> bool {
    gog.edges().iter().any(|e| e.initial == v || e.terminal == v)
}

/// `aut_level_maps`: `Res − Res_f : ∏_v ŜAut_{G_v}(k) → ∏_e ŜAut_{G_e}(k)`.
///
/// Over a field, restriction of stable scalars is the identity on `k^×`
/// when both groups have order divisible by `p`, and zero otherwise.
/// Profile vertices carry no edges, so their factors only enlarge the
/// domain; a profile with unknown `ŜAut` contributes `0`.
pub fn aut_level_maps(gog: &GraphOfGroups, k: &Fq) -> Result<AbHom, TreeError> {
    let mut sources = Vec::new();
    for v in gog.vertices() {
        sources.push(match v {
            Vertex::Finite(g) => stable_aut(g, k).structure,
            Vertex::Profile { kind, of } => profile_data(*kind, of, k)?
                .0
                .stable_aut
                .map(|s| s.structure)
                .unwrap_or_else(FgAbelian::trivial),
        });
    }
    let targets: Vec<FgAbelian> = gog.edges().iter().map(|e| stable_aut(&e.group, k).structure).collect();
    let mut blocks = Vec::new();
    for (ei, e) in gog.edges().iter().enumerate() {
        let mut row = Vec::new();
        for (vi, s) in sources.iter().enumerate() {
            let t = &targets[ei];
            let mut b = ZMatrix::zeros(t.ngens(), s.ngens());
            if t.ngens() == 1 && s.ngens() == 1 {
                let c = i64::from(e.initial == vi) - i64::from(e.terminal == vi);
                b.set(0, 0, BigInt::from(c));
            }
            row.push(b);
        }
        blocks.push(row);
    }
    Ok(block_hom(&sources, &targets, &blocks).expect("aut-level blocks are well defined"))
}

/// `t_level_maps`: `Res − Res_f : ∏_v T(G_v) → ∏_e T(G_e)`, assembled from
/// `restriction_on_t` at each end of each edge.
pub fn t_level_maps(gog: &GraphOfGroups, k: &Fq) -> Result<AbHom, TreeError> {
    Ok(t_level(gog, k)?.0)
}

fn t_level(gog: &GraphOfGroups, k: &Fq) -> Result<(AbHom, Vec<Step>), TreeError> {
    let mut steps = Vec::new();
    let mut data: Vec<Option<TGroupData>> = Vec::new();
    let mut sources = Vec::new();
    for (i, v) in gog.vertices().iter().enumerate() {
        match v {
            Vertex::Finite(g) => {
                let d = t_group(g, k)?;
                steps.push(Step::new("t_vertex", format!("T({}) = {}", g.name(), d.structure)));
                if let Some(n) = &d.note {
                    steps.push(Step::new("note", n.clone()));
                }
                sources.push(d.structure.clone());
                data.push(Some(d));
            }
            Vertex::Profile { kind, of } => {
                debug_assert!(!incident(gog, i));
                let (d, s) = profile_data(*kind, of, k)?;
                steps.extend(s);
                sources.push(d.t);
                data.push(None);
            }
        }
    }
    let mut targets = Vec::new();
    let mut blocks = Vec::new();
    for e in gog.edges() {
        let te = t_group(&e.group, k)?;
        steps.push(Step::new("t_edge", format!("T({}) = {}", e.group.name(), te.structure)));
        let mut row: Vec<ZMatrix> = sources
            .iter()
            .map(|s| ZMatrix::zeros(te.structure.ngens(), s.ngens()))
            .collect();
        for (v, mono, sign) in [(e.initial, &e.mono_initial, 1i64), (e.terminal, &e.mono_terminal, -1)] {
            let dv = data[v].as_ref().expect("edges only meet finite vertices");
            let r = restriction_on_t(dv, mono, &te)?;
            let m = r.matrix();
            for i in 0..m.rows() {
                for j in 0..m.cols() {
                    let x = row[v].get(i, j) + BigInt::from(sign) * m.get(i, j);
                    row[v].set(i, j, x);
                }
            }
        }
        targets.push(te.structure);
        blocks.push(row);
    }
    let h = block_hom(&sources, &targets, &blocks).map_err(|e| TreeError::Invalid(e.to_string()))?;
    Ok((h, steps))
}

fn coprime(a: &FgAbelian, b: &FgAbelian) -> bool {
    match (a.order(), b.order()) {
        (Some(x), Some(y)) => num_integer::gcd(x, y) == 1,
        _ => false,
    }
}

/// `compute_t`: both ends of the sequence and, when a splitting rule
/// applies, `T(G)`.
pub fn compute_t(gog: &GraphOfGroups, k: &Fq) -> Result<TResult, TreeError> {
    let mut prov = vec![Step::new("input", format!("G = {gog} over {}", crate::picard::field_name(k)))];

    let aut = aut_level_maps(gog, k)?;
    prov.push(Step::with_map("aut_level", &aut));
    let (sub, _) = ab_cokernel(&aut);
    prov.push(Step::new("aut_cokernel", sub.to_string()));

    let (tmap, steps) = t_level(gog, k)?;
    prov.extend(steps);
    prov.push(Step::with_map("t_level", &tmap));
    let (quot, _) = ab_kernel(&tmap);
    prov.push(Step::new("t_kernel", quot.to_string()));

    let rule = if gog.is_tree() && !gog.edges().is_empty() {
        // finite edge groups over a field: the boundary map vanishes
        if !sub.is_trivial() {
            return Err(TreeError::RuleDisagreement(format!(
                "amalgam over finite edge groups, but the aut-level cokernel is {sub}"
            )));
        }
        prov.push(Step::new("rule", "tree of finite groups over a field: boundary vanishes, cokernel is 0 (agrees)"));
        SplitReason::SubTrivial
    } else if sub.is_trivial() {
        SplitReason::SubTrivial
    } else if quot.is_trivial() {
        SplitReason::QuotTrivial
    } else if coprime(&sub, &quot) {
        SplitReason::CoprimeOrders
    } else if gog.is_identity_hnn() {
        prov.push(Step::new("rule", "HNN along the identity: G = Z x H retracts onto H, inflation splits"));
        SplitReason::SplitByInflation
    } else {
        prov.push(Step::new("rule", "no splitting rule applies"));
        SplitReason::None
    };
    if gog.vertices().len() == 1 && gog.edges().len() == 1 && gog.all_finite() && aut.is_zero() {
        prov.push(Step::new("check", "HNN over a finite group: aut-level map is zero, boundary is injective"));
    }
    let answer = match extension_resolve(&sub, &quot, rule) {
        Extension::Determined(g) => {
            prov.push(Step::new("answer", format!("T(G) = {g} ({rule:?})")));
            Answer::Determined(g)
        }
        Extension::Ambiguous { sub, quot } => {
            prov.push(Step::new(
                "answer",
                format!("T(G) is an extension of {quot} by {sub}; not determined"),
            ));
            Answer::Ambiguous { sub, quot }
        }
    };
    Ok(TResult {
        answer,
        sub,
        quot,
        rule,
        provenance: prov,
    })
}

/// Restrictions of one `Q₈`-module to the two cyclic subgroups `⟨x⟩`, `⟨y⟩`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiagonalReport {
    pub field: String,
    pub module: String,
    pub module_dim: usize,
    /// Class in `T(C₄) = Z/2` of the restriction to `⟨x⟩`.
    pub class_x: i64,
    pub class_y: i64,
    pub diagonal: bool,
    pub excluded: Option<String>,
}

/// `diagonal_check_q8`.
pub fn diagonal_check_q8(k: &Fq, recipe: &ModuleRecipe) -> Result<DiagonalReport, TreeError> {
    if k.characteristic() != 2 {
        return Err(TreeError::Invalid("the Q8 diagonal check needs characteristic 2".into()));
    }
    let q8 = build_group(&GroupSpec::Quaternion8(true))?;
    let c4 = build_group(&GroupSpec::Cyclic(4))?;
    let m = recipe.build(&q8, k)?;
    let t4 = t_group(&c4, k)?;
    let mut classes = Vec::new();
    for gen in [q8.parse_element("x")?, q8.parse_element("y")?] {
        let mono = mono_from_generator_images(&c4, &q8, &[gen])?;
        let res = restrict(&m, &mono)?;
        let exps = t4
            .identify(&res)?
            .ok_or_else(|| PicardError::IdentificationFailed(format!("restriction of {recipe} to C4")))?;
        let c = t4.to_normal(&exps);
        classes.push(c.first().and_then(|x| x.to_i64()).unwrap_or(0));
    }
    let tq = t_group(&q8, k)?;
    let excluded = tq
        .generators
        .iter()
        .find(|g| !g.is_verified())
        .map(|g| format!("generator {} of T(Q8) is not constructed and is excluded", g.label));
    Ok(DiagonalReport {
        field: crate::picard::field_name(k),
        module: recipe.to_string(),
        module_dim: m.dim(),
        class_x: classes[0],
        class_y: classes[1],
        diagonal: classes[0] == classes[1],
        excluded,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::Group;

    fn cyc(n: usize) -> Group {
        build_group(&GroupSpec::Cyclic(n)).unwrap()
    }

    fn k(p: u64, e: u32) -> Fq {
        Fq::new(p, e).unwrap()
    }

    fn sl2z() -> GraphOfGroups {
        let (c2, c4, c6) = (cyc(2), cyc(4), cyc(6));
        let a = mono_from_generator_images(&c2, &c6, &[3]).unwrap();
        let b = mono_from_generator_images(&c2, &c4, &[2]).unwrap();
        GraphOfGroups::amalgam(&c6, &c4, &c2, a, b).unwrap()
    }

    fn factors(r: &TResult) -> Vec<u64> {
        r.determined().expect("determined").factors().to_vec()
    }

    #[test]
    fn sl2z_over_small_fields() {
        let g = sl2z();
        assert_eq!(factors(&compute_t(&g, &k(2, 2)).unwrap()), vec![6]);
        assert_eq!(factors(&compute_t(&g, &k(2, 1)).unwrap()), vec![2]);
        assert_eq!(factors(&compute_t(&g, &k(3, 1)).unwrap()), vec![2, 2]);
    }

    #[test]
    fn aut_level_difference_map() {
        let h = aut_level_maps(&sl2z(), &k(2, 2)).unwrap();
        // -1 is stored reduced mod 3
        assert_eq!(matrix_rows(h.matrix()), vec![vec![1, 2]]);
        assert!(ab_cokernel(&h).0.is_trivial());
    }

    #[test]
    fn hnn_examples() {
        let c2 = cyc(2);
        let id = crate::groups::GroupMono::identity(&c2);
        let g = GraphOfGroups::hnn(&c2, &c2, id.clone(), id).unwrap();
        let r = compute_t(&g, &k(2, 2)).unwrap();
        assert_eq!(factors(&r), vec![3]);

        let c3 = cyc(3);
        let id3 = crate::groups::GroupMono::identity(&c3);
        let g = GraphOfGroups::hnn(&c3, &c3, id3.clone(), id3).unwrap();
        let r = compute_t(&g, &k(3, 1)).unwrap();
        assert_eq!(r.rule, SplitReason::SplitByInflation);
        assert_eq!(factors(&r), vec![2, 2]);

        let inv = mono_from_generator_images(&c3, &c3, &[2]).unwrap();
        let g = GraphOfGroups::hnn(&c3, &c3, crate::groups::GroupMono::identity(&c3), inv).unwrap();
        let r = compute_t(&g, &k(3, 1)).unwrap();
        assert!(r.is_ambiguous());
        assert_eq!(r.sub.factors(), &[2]);
        assert_eq!(r.quot.factors(), &[2]);
    }

    #[test]
    fn q8_diagonal() {
        for e in [1, 2] {
            let r = diagonal_check_q8(&k(2, e), &ModuleRecipe::omega(1)).unwrap();
            assert_eq!((r.class_x, r.class_y), (1, 1));
            assert!(r.diagonal);
        }
        let r = diagonal_check_q8(&k(2, 1), &ModuleRecipe::Trivial).unwrap();
        assert_eq!((r.class_x, r.class_y), (0, 0));
    }
}
