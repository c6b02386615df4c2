//! Isomorphism tests.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactlin::FqMatrix;

use super::{hom_space, strip_projectives, GMap, GModule, ModRepError};

const RANDOM_TRIALS: usize = 64;
const EXHAUSTIVE_LIMIT: u64 = 1 << 24;

/// Outcome of an isomorphism test.
#[derive(Clone, Debug)]
pub enum IsoResult {
    Iso(GMap),
    NotIso,
}

impl IsoResult {
    pub fn is_iso(&self) -> bool {
        matches!(self, IsoResult::Iso(_))
    }
}

fn combination(basis: &[FqMatrix], picks: &[(usize, u32)]) -> FqMatrix {
    let mut acc = FqMatrix::zeros(basis[0].field(), basis[0].rows(), basis[0].cols());
    for &(i, c) in picks {
        acc.add_scaled(&basis[i], c);
    }
    acc
}

/// `module_iso`: searches `Hom(m, n)` for an invertible element.
///
/// Non-isomorphism is certified by dimensions of `Hom(m,n)`, `Hom(n,m)`,
/// `End(m)`, `End(n)` or by an exhaustive search; otherwise the search
/// tries basis elements, sums of up to three basis elements, seeded random
/// combinations, and finally every element when that is small enough.
pub fn module_iso(m: &GModule, n: &GModule) -> Result<IsoResult, ModRepError> {
    m.same_ring(n)?;
    if m.dim() != n.dim() {
        return Ok(IsoResult::NotIso);
    }
    if m.dim() == 0 {
        return Ok(IsoResult::Iso(GMap::unchecked(m, n, FqMatrix::zeros(m.field(), 0, 0))));
    }
    let hmn = hom_space(m, n)?;
    let h = hmn.len();
    if h == 0 || hom_space(n, m)?.len() != h {
        return Ok(IsoResult::NotIso);
    }
    if hom_space(m, m)?.len() != h || hom_space(n, n)?.len() != h {
        return Ok(IsoResult::NotIso);
    }
    let found = |x: FqMatrix| Some(GMap::unchecked(m, n, x));
    for x in &hmn {
        if x.is_invertible() {
            return Ok(IsoResult::Iso(found(x.clone()).unwrap()));
        }
    }
    for i in 0..h {
        for j in i + 1..h {
            let x = combination(&hmn, &[(i, 1), (j, 1)]);
            if x.is_invertible() {
                return Ok(IsoResult::Iso(found(x).unwrap()));
            }
            for l in j + 1..h {
                let x = combination(&hmn, &[(i, 1), (j, 1), (l, 1)]);
                if x.is_invertible() {
                    return Ok(IsoResult::Iso(found(x).unwrap()));
                }
            }
        }
    }
    let q = m.field().order();
    let mut rng = ChaCha8Rng::seed_from_u64(0x150_4e57);
    for _ in 0..RANDOM_TRIALS {
        let picks: Vec<(usize, u32)> = (0..h).map(|i| (i, rng.gen_range(0..q))).collect();
        let x = combination(&hmn, &picks);
        if x.is_invertible() {
            return Ok(IsoResult::Iso(found(x).unwrap()));
        }
    }
    let total = (q as u64).checked_pow(h as u32);
    match total {
        Some(t) if q <= 4 && h <= 12 && t <= EXHAUSTIVE_LIMIT => {
            let mut digits = vec![0u32; h];
            loop {
                let mut k = 0;
                while k < h {
                    digits[k] += 1;
                    if digits[k] < q {
                        break;
                    }
                    digits[k] = 0;
                    k += 1;
                }
                if k == h {
                    return Ok(IsoResult::NotIso);
                }
                let picks: Vec<(usize, u32)> = digits.iter().copied().enumerate().collect();
                let x = combination(&hmn, &picks);
                if x.is_invertible() {
                    return Ok(IsoResult::Iso(found(x).unwrap()));
                }
            }
        }
        _ => Err(ModRepError::SearchExhausted { hom_dim: h }),
    }
}

/// `stable_iso`: isomorphism of projective-free cores.
pub fn stable_iso(m: &GModule, n: &GModule) -> Result<bool, ModRepError> {
    m.same_ring(n)?;
    let (cm, _) = strip_projectives(m)?;
    let (cn, _) = strip_projectives(n)?;
    Ok(module_iso(&cm, &cn)?.is_iso())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::Fq;
    use crate::groups::{build_group, mono_from_generator_images, GroupSpec};
    use crate::modrep::{direct_sum, dual, regular_module, restrict, tensor, trivial_module};

    #[test]
    fn restriction_of_regular_is_free() {
        let c4 = build_group(&GroupSpec::Cyclic(4)).unwrap();
        let c2 = build_group(&GroupSpec::Cyclic(2)).unwrap();
        let k = Fq::new(2, 1).unwrap();
        let mono = mono_from_generator_images(&c2, &c4, &[2]).unwrap();
        let res = restrict(&regular_module(&c4, &k), &mono).unwrap();
        let r2 = regular_module(&c2, &k);
        let free = direct_sum(&r2, &r2).unwrap();
        let iso = module_iso(&res, &free).unwrap();
        match iso {
            IsoResult::Iso(map) => {
                assert!(GMap::new(&res, &free, map.matrix().clone()).is_ok());
                assert!(map.is_iso());
            }
            IsoResult::NotIso => panic!("expected an isomorphism"),
        }
        let t = trivial_module(&c2, &k);
        let tt = direct_sum(&t, &t).unwrap();
        assert!(!module_iso(&free, &direct_sum(&tt, &tt).unwrap()).unwrap().is_iso());
    }

    #[test]
    fn tensor_unit_and_dual() {
        let q8 = build_group(&GroupSpec::Quaternion8(true)).unwrap();
        let k = Fq::new(3, 1).unwrap();
        let r = regular_module(&q8, &k);
        let t = trivial_module(&q8, &k);
        assert!(module_iso(&tensor(&r, &t).unwrap(), &r).unwrap().is_iso());
        assert!(module_iso(&dual(&r), &r).unwrap().is_iso());
    }
}
