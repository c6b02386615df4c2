//! Endotriviality, the evaluation map, and Tate cohomology in degree zero.

use serde::Serialize;

use crate::exactlin::{Fq, FqMatrix};
use crate::groups::Group;

use super::{dual, stable_hom, stable_iso, strip_projectives, tensor, trivial_module, GMap, GModule, ModRepError};

/// `is_endotrivial`: whether `m ⊗ m*` is stably isomorphic to `k`.
pub fn is_endotrivial(m: &GModule) -> Result<bool, ModRepError> {
    if m.dim() == 0 {
        return Ok(false);
    }
    let mm = tensor(m, &dual(m))?;
    let (core, _) = strip_projectives(&mm)?;
    if core.dim() != 1 {
        return Ok(false);
    }
    stable_iso(&core, &trivial_module(m.group(), m.field()))
}

/// The evaluation map `m ⊗ m* → k`, `v ⊗ φ ↦ φ(v)`.
pub fn evaluation_map(m: &GModule) -> Result<GMap, ModRepError> {
    let mm = tensor(m, &dual(m))?;
    let d = m.dim();
    let k = m.field();
    let mut row = FqMatrix::zeros(k, 1, d * d);
    for i in 0..d {
        row.set(0, i * d + i, 1);
    }
    GMap::new(&mm, &trivial_module(m.group(), k), row)
}

/// Whether the evaluation map is nonzero in the stable category.
pub fn evaluation_is_stably_nonzero(m: &GModule) -> Result<bool, ModRepError> {
    let ev = evaluation_map(m)?;
    let s = stable_hom(ev.source(), ev.target())?;
    Ok(!s.is_stably_zero(ev.matrix()))
}

/// `Ĥ⁰(G; M)` as fixed points modulo norms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TateH0 {
    pub dim: usize,
    /// `"k"` when the trivial-module answer is the field, `"0"` when zero.
    pub ring: String,
}

/// Dimension of `M^G / N·M` with `N = Σ_g g`.
pub fn tate_h0_module(m: &GModule) -> usize {
    let fixed = m.fixed_points();
    let ones = vec![1; m.group().order()];
    let norm = m.algebra_action(&ones);
    let image = norm.column_space_basis();
    fixed.cols() - image.cols()
}

/// `tate_h0`: `Ĥ⁰(G; k)`.
pub fn tate_h0(g: &Group, k: &Fq) -> TateH0 {
    let dim = tate_h0_module(&trivial_module(g, k));
    TateH0 {
        dim,
        ring: if dim == 0 { "0".into() } else { "k".into() },
    }
}

/// Checks that composition and tensor product of stable endomorphisms of
/// `k` agree modulo maps through projectives, on all pairs of
/// representatives (including the identity).
pub fn composition_matches_tensor(g: &Group, k: &Fq) -> Result<bool, ModRepError> {
    let t = trivial_module(g, k);
    let s = stable_hom(&t, &t)?;
    let mut reps = s.quotient.clone();
    reps.push(FqMatrix::identity(k, 1));
    for u in &reps {
        for v in &reps {
            let comp = v.mul(u);
            // k ⊗ k = k on the single basis vector
            let tens = u.kron(v);
            if !s.is_stably_zero(&comp.sub(&tens)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{build_group, GroupSpec};
    use crate::modrep::{direct_sum, regular_module, syzygy};

    #[test]
    fn tate_examples() {
        let c2 = build_group(&GroupSpec::Cyclic(2)).unwrap();
        let c3 = build_group(&GroupSpec::Cyclic(3)).unwrap();
        let q8 = build_group(&GroupSpec::Quaternion8(true)).unwrap();
        assert_eq!(tate_h0(&c2, &Fq::new(2, 1).unwrap()).dim, 1);
        assert_eq!(tate_h0(&c3, &Fq::new(2, 1).unwrap()).dim, 0);
        assert_eq!(tate_h0(&q8, &Fq::new(2, 2).unwrap()).ring, "k");
    }

    #[test]
    fn endotrivial_examples() {
        let f2 = Fq::new(2, 1).unwrap();
        let c4 = build_group(&GroupSpec::Cyclic(4)).unwrap();
        let om = syzygy(&trivial_module(&c4, &f2)).unwrap();
        assert!(is_endotrivial(&om).unwrap());
        assert!(evaluation_is_stably_nonzero(&om).unwrap());
        let c2 = build_group(&GroupSpec::Cyclic(2)).unwrap();
        let r = regular_module(&c2, &f2);
        let rt = direct_sum(&r, &trivial_module(&c2, &f2)).unwrap();
        assert!(is_endotrivial(&rt).unwrap());
        assert!(!is_endotrivial(&r).unwrap());
    }
}
