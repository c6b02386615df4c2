//! Projective indecomposables, covers, syzygies, projective stripping and
//! stable homomorphism spaces.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::exactlin::{FqElem, FqMatrix};
use crate::groups::Group;
use crate::exactlin::Fq;

use super::decompose::summand_bases;
use super::module::{zero_module, Echelon};
use super::{direct_sum_all, dual, hom_space, module_iso, regular_module, socle, GMap, GModule, ModRepError};

/// A projective indecomposable module with a vector spanning its (simple)
/// socle and the number of times it occurs in `kG`.
#[derive(Clone, Debug)]
pub struct Pim {
    pub module: GModule,
    pub socle_vector: Vec<FqElem>,
    pub multiplicity: usize,
}

type PimCache = Mutex<HashMap<(u64, u32, u32), Arc<Vec<Pim>>>>;

fn pim_cache() -> &'static PimCache {
    static CACHE: OnceLock<PimCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Isomorphism classes of projective indecomposable `kG`-modules, from a
/// decomposition of the regular module. Cached; the cache only ever holds
/// the value a fresh computation would return.
pub fn pims(group: &Group, field: &Fq) -> Result<Arc<Vec<Pim>>, ModRepError> {
    let key = (group.fingerprint(), field.characteristic(), field.degree());
    if let Some(v) = pim_cache().lock().unwrap().get(&key) {
        return Ok(v.clone());
    }
    let reg = regular_module(group, field);
    let mut classes: Vec<Pim> = Vec::new();
    for b in summand_bases(&reg) {
        let p = reg.submodule(&b);
        let mut matched = false;
        for c in classes.iter_mut() {
            if module_iso(&c.module, &p)?.is_iso() {
                c.multiplicity += 1;
                matched = true;
                break;
            }
        }
        if !matched {
            let soc = socle(&p);
            classes.push(Pim {
                socle_vector: soc.column(0),
                module: p,
                multiplicity: 1,
            });
        }
    }
    let v = Arc::new(classes);
    Ok(pim_cache().lock().unwrap().entry(key).or_insert(v).clone())
}

/// `projective_cover`: a projective module `P` (a sum of PIMs) with a
/// surjection whose kernel lies in `rad P`.
pub fn projective_cover(m: &GModule) -> Result<(GModule, GMap), ModRepError> {
    let f = m.field();
    let list = pims(m.group(), f)?;
    let rad = super::radical(m);
    let mut ech = Echelon::new(f, m.dim());
    for c in rad.columns() {
        ech.insert(&c);
    }
    let mut parts = Vec::new();
    let mut maps = Vec::new();
    'outer: for pim in list.iter() {
        if ech.is_full() {
            break;
        }
        for h in hom_space(&pim.module, m)? {
            if ech.is_full() {
                break 'outer;
            }
            let mut grew = false;
            for c in h.columns() {
                grew |= ech.insert(&c);
            }
            if grew {
                parts.push(pim.module.clone());
                maps.push(h);
            }
        }
    }
    let p = direct_sum_all(m.group(), f, &parts)?;
    let cover = if maps.is_empty() {
        FqMatrix::zeros(f, m.dim(), 0)
    } else {
        let refs: Vec<&FqMatrix> = maps.iter().collect();
        FqMatrix::hstack(&refs)
    };
    Ok((p.clone(), GMap::unchecked(&p, m, cover)))
}

/// `syzygy`: `Ω m`, the kernel of the projective cover.
pub fn syzygy(m: &GModule) -> Result<GModule, ModRepError> {
    let (p, cover) = projective_cover(m)?;
    if p.dim() == 0 {
        return Ok(zero_module(m.group(), m.field()));
    }
    Ok(p.submodule(&cover.matrix().kernel_basis()))
}

/// `cosyzygy`: `Ω⁻¹ m`, computed as `dual(Ω(dual m))`.
pub fn cosyzygy(m: &GModule) -> Result<GModule, ModRepError> {
    Ok(dual(&syzygy(&dual(m))?))
}

/// `Ω^n m` for any integer `n`.
pub fn syzygy_power(m: &GModule, n: i32) -> Result<GModule, ModRepError> {
    let mut cur = m.clone();
    for _ in 0..n.unsigned_abs() {
        cur = if n > 0 { syzygy(&cur)? } else { cosyzygy(&cur)? };
    }
    Ok(cur)
}

/// `strip_projectives`: `(core, projpart)` with `m ≅ core ⊕ projpart`,
/// `projpart` projective and `core` without projective summands.
///
/// A map `P → M` from a PIM splits off exactly when it is nonzero on the
/// socle of `P` (group algebras are self-injective), so summands are found
/// from `Hom(P, M)` alone.
pub fn strip_projectives(m: &GModule) -> Result<(GModule, GModule), ModRepError> {
    let f = m.field();
    let list = pims(m.group(), f)?;
    let mut cur = m.clone();
    let mut parts = Vec::new();
    loop {
        let mut found = None;
        for pim in list.iter() {
            if pim.module.dim() > cur.dim() {
                continue;
            }
            for h in hom_space(&pim.module, &cur)? {
                if h.mul_vec(&pim.socle_vector).iter().any(|&x| x != 0) {
                    found = Some((pim.module.clone(), h));
                    break;
                }
            }
            if found.is_some() {
                break;
            }
        }
        match found {
            Some((p, h)) => {
                cur = cur.quotient(&h);
                parts.push(p);
            }
            None => break,
        }
    }
    Ok((cur, direct_sum_all(m.group(), f, &parts)?))
}

/// `PHom ⊆ Hom` for a pair of modules, with coset representatives of the
/// quotient.
#[derive(Clone, Debug)]
pub struct StableHomSpace {
    pub full: Vec<FqMatrix>,
    pub phom: Vec<FqMatrix>,
    pub quotient: Vec<FqMatrix>,
}

impl StableHomSpace {
    pub fn quotient_dim(&self) -> usize {
        self.quotient.len()
    }

    /// Whether a homomorphism factors through a projective module.
    pub fn is_stably_zero(&self, map: &FqMatrix) -> bool {
        if map.is_zero() {
            return true;
        }
        let f = map.field();
        let mut ech = Echelon::new(f, map.rows() * map.cols());
        for p in &self.phom {
            ech.insert(&p.flatten());
        }
        ech.contains(&map.flatten())
    }
}

/// `stable_hom`: `PHom(m, n)` is the image of `Hom(m, P(n))` under the
/// projective cover `P(n) → n`.
pub fn stable_hom(m: &GModule, n: &GModule) -> Result<StableHomSpace, ModRepError> {
    m.same_ring(n)?;
    let f = m.field();
    let full = hom_space(m, n)?;
    let (p, cover) = projective_cover(n)?;
    let len = m.dim() * n.dim();
    let mut ech = Echelon::new(f, len);
    let mut phom = Vec::new();
    for h in hom_space(m, &p)? {
        let x = cover.matrix().mul(&h);
        if ech.insert(&x.flatten()) {
            phom.push(x);
        }
    }
    let mut quotient = Vec::new();
    for x in &full {
        if ech.insert(&x.flatten()) {
            quotient.push(x.clone());
        }
    }
    Ok(StableHomSpace {
        full,
        phom,
        quotient,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{build_group, GroupSpec};
    use crate::modrep::{direct_sum, trivial_module};

    fn k(p: u64, e: u32) -> Fq {
        Fq::new(p, e).unwrap()
    }

    #[test]
    fn covers() {
        let c2 = build_group(&GroupSpec::Cyclic(2)).unwrap();
        let (p, cover) = projective_cover(&trivial_module(&c2, &k(2, 1))).unwrap();
        assert_eq!(p.dim(), 2);
        assert_eq!(cover.matrix().rank(), 1);
        let c6 = build_group(&GroupSpec::Cyclic(6)).unwrap();
        let (p, _) = projective_cover(&trivial_module(&c6, &k(2, 2))).unwrap();
        assert_eq!(p.dim(), 2);
        let r = regular_module(&c6, &k(2, 2));
        let (p, cover) = projective_cover(&r).unwrap();
        assert_eq!(p.dim(), 6);
        assert!(cover.is_iso());
        assert_eq!(pims(&c6, &k(2, 2)).unwrap().len(), 3);
    }

    #[test]
    fn syzygies() {
        let c2 = build_group(&GroupSpec::Cyclic(2)).unwrap();
        let f2 = k(2, 1);
        let t = trivial_module(&c2, &f2);
        let om = syzygy(&t).unwrap();
        assert_eq!(om.dim(), 1);
        assert!(module_iso(&om, &t).unwrap().is_iso());
        assert_eq!(syzygy(&regular_module(&c2, &f2)).unwrap().dim(), 0);
        let c4 = build_group(&GroupSpec::Cyclic(4)).unwrap();
        assert_eq!(syzygy(&trivial_module(&c4, &f2)).unwrap().dim(), 3);
        assert_eq!(cosyzygy(&trivial_module(&c4, &f2)).unwrap().dim(), 3);
    }

    #[test]
    fn strip_examples() {
        let c2 = build_group(&GroupSpec::Cyclic(2)).unwrap();
        let f2 = k(2, 1);
        let t = trivial_module(&c2, &f2);
        let r = regular_module(&c2, &f2);
        let (core, proj) = strip_projectives(&r).unwrap();
        assert_eq!((core.dim(), proj.dim()), (0, 2));
        let (core, proj) = strip_projectives(&direct_sum(&t, &r).unwrap()).unwrap();
        assert!(module_iso(&core, &t).unwrap().is_iso());
        assert!(module_iso(&proj, &r).unwrap().is_iso());
    }

    #[test]
    fn stable_endomorphisms_of_trivial() {
        let f2 = k(2, 1);
        let c2 = build_group(&GroupSpec::Cyclic(2)).unwrap();
        let c3 = build_group(&GroupSpec::Cyclic(3)).unwrap();
        let s = stable_hom(&trivial_module(&c2, &f2), &trivial_module(&c2, &f2)).unwrap();
        assert_eq!(s.quotient_dim(), 1);
        let s = stable_hom(&trivial_module(&c3, &f2), &trivial_module(&c3, &f2)).unwrap();
        assert_eq!(s.quotient_dim(), 0);
        let r = regular_module(&c2, &f2);
        let s = stable_hom(&r, &trivial_module(&c2, &f2)).unwrap();
        assert_eq!(s.quotient_dim(), 0);
    }
}
