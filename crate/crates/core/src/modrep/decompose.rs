//! Direct-sum decomposition by Fitting splitting.
//!
//! A random endomorphism `a` whose characteristic polynomial has two coprime
//! factors `f·g` splits `M = ker f(a)^N ⊕ im f(a)^N` into nonzero
//! submodules. When many random endomorphisms all have primary
//! characteristic polynomial, `End(M)` is taken to be local.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactlin::{poly, FqMatrix};

use super::{hom_space, GModule, ModRepError};

/// Largest module the public decomposition accepts.
pub const MAX_DECOMPOSE_DIM: usize = 64;

const SPLIT_TRIALS: usize = 60;
const SEED: u64 = 0x5eed_0f_f1771e;

fn nilpotent_power(b: &FqMatrix) -> FqMatrix {
    let n = b.rows();
    let mut p = b.clone();
    let mut e = 1;
    while e < n {
        p = p.mul(&p);
        e *= 2;
    }
    p
}

/// A nontrivial Fitting splitting of `m`, as two column bases.
fn split(m: &GModule, rng: &mut ChaCha8Rng) -> Option<(FqMatrix, FqMatrix)> {
    let f = m.field();
    let end = hom_space(m, m).ok()?;
    if end.len() <= 1 {
        return None;
    }
    let q = f.order();
    for _ in 0..SPLIT_TRIALS {
        let mut a = FqMatrix::zeros(f, m.dim(), m.dim());
        for e in &end {
            a.add_scaled(e, rng.gen_range(0..q));
        }
        let chi = a.charpoly();
        let (factor, other) = poly::irreducible_factor(f, &chi, rng);
        if !other {
            continue;
        }
        let b = nilpotent_power(&a.eval_poly(&factor));
        let ker = b.kernel_basis();
        let im = b.column_space_basis();
        if ker.cols() > 0 && im.cols() > 0 {
            return Some((ker, im));
        }
    }
    None
}

/// Bases (columns, in the coordinates of `m`) of indecomposable summands
/// whose direct sum is `m`. No dimension cap.
pub(crate) fn summand_bases(m: &GModule) -> Vec<FqMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut out = Vec::new();
    let id = FqMatrix::identity(m.field(), m.dim());
    if m.dim() > 0 {
        recurse(m, &id, &mut rng, &mut out);
    }
    out
}

fn recurse(m: &GModule, basis: &FqMatrix, rng: &mut ChaCha8Rng, out: &mut Vec<FqMatrix>) {
    match split(m, rng) {
        None => out.push(basis.clone()),
        Some((a, b)) => {
            for part in [a, b] {
                let sub = m.submodule(&part);
                recurse(&sub, &basis.mul(&part), rng, out);
            }
        }
    }
}

/// `indecomposable_summands`: a complete decomposition into
/// indecomposable modules.
pub fn indecomposable_summands(m: &GModule) -> Result<Vec<GModule>, ModRepError> {
    if m.dim() > MAX_DECOMPOSE_DIM {
        return Err(ModRepError::DimensionTooLarge {
            dim: m.dim(),
            cap: MAX_DECOMPOSE_DIM,
        });
    }
    Ok(summand_bases(m).iter().map(|b| m.submodule(b)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::Fq;
    use crate::groups::{build_group, GroupSpec};
    use crate::modrep::{direct_sum, regular_module, trivial_module};

    #[test]
    fn spec_examples() {
        let c6 = build_group(&GroupSpec::Cyclic(6)).unwrap();
        let f4 = Fq::new(2, 2).unwrap();
        let parts = indecomposable_summands(&regular_module(&c6, &f4)).unwrap();
        let mut dims: Vec<usize> = parts.iter().map(|p| p.dim()).collect();
        dims.sort();
        assert_eq!(dims, vec![2, 2, 2]);

        let q8 = build_group(&GroupSpec::Quaternion8(true)).unwrap();
        let f2 = Fq::new(2, 1).unwrap();
        assert_eq!(indecomposable_summands(&regular_module(&q8, &f2)).unwrap().len(), 1);

        let t = trivial_module(&q8, &f2);
        let tt = direct_sum(&t, &t).unwrap();
        let parts = indecomposable_summands(&tt).unwrap();
        assert_eq!(parts.iter().map(|p| p.dim()).collect::<Vec<_>>(), vec![1, 1]);
    }

    #[test]
    fn semisimple_splits_into_simples() {
        // kC3 over F4 is three characters; over F2 it is 1 + 2
        let c3 = build_group(&GroupSpec::Cyclic(3)).unwrap();
        let f4 = Fq::new(2, 2).unwrap();
        assert_eq!(indecomposable_summands(&regular_module(&c3, &f4)).unwrap().len(), 3);
        let f2 = Fq::new(2, 1).unwrap();
        let mut dims: Vec<usize> = indecomposable_summands(&regular_module(&c3, &f2))
            .unwrap()
            .iter()
            .map(|p| p.dim())
            .collect();
        dims.sort();
        assert_eq!(dims, vec![1, 2]);
    }

    #[test]
    fn cap_is_enforced() {
        let c = build_group(&GroupSpec::Cyclic(65)).unwrap();
        let f = Fq::new(5, 1).unwrap();
        assert!(matches!(
            indecomposable_summands(&regular_module(&c, &f)),
            Err(ModRepError::DimensionTooLarge { .. })
        ));
    }
}
