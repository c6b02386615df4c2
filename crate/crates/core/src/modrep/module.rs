use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::exactlin::{Fq, FqElem, FqMatrix};
use crate::groups::{Group, GroupMono};

use super::ModRepError;

struct Inner {
    group: Group,
    field: Fq,
    dim: usize,
    gens: Vec<FqMatrix>,
    elems: OnceLock<Vec<FqMatrix>>,
}

/// A finite-dimensional left `kG`-module; group elements act on column
/// vectors by the matrices `ρ(g)`, with `ρ(gh) = ρ(g)ρ(h)`.
#[derive(Clone)]
pub struct GModule(Arc<Inner>);

impl fmt::Debug for GModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GModule(dim {} over {} for {})",
            self.0.dim,
            self.0.field,
            self.0.group.name()
        )
    }
}

fn element_matrices(group: &Group, field: &Fq, dim: usize, gens: &[FqMatrix]) -> Vec<FqMatrix> {
    let mut out: Vec<Option<FqMatrix>> = vec![None; group.order()];
    out[0] = Some(FqMatrix::identity(field, dim));
    for (h, from) in group.bfs_words() {
        if let Some((g, i)) = from {
            let m = out[g].as_ref().expect("bfs parent first").mul(&gens[i]);
            out[h] = Some(m);
        }
    }
    out.into_iter().map(|m| m.expect("generators generate")).collect()
}

impl GModule {
    /// Builds a module from one matrix per group generator and checks every
    /// relation of the multiplication table.
    pub fn new(group: &Group, field: &Fq, dim: usize, gens: Vec<FqMatrix>) -> Result<GModule, ModRepError> {
        if gens.len() != group.generators().len() {
            return Err(ModRepError::NotAModule(format!(
                "expected {} generator matrices, got {}",
                group.generators().len(),
                gens.len()
            )));
        }
        for m in &gens {
            if m.field() != field {
                return Err(ModRepError::FieldMismatch);
            }
            if m.rows() != dim || m.cols() != dim {
                return Err(ModRepError::NotAModule("generator matrices must be square of equal size".into()));
            }
            if !m.is_invertible() {
                return Err(ModRepError::NotAModule("generator matrix is singular".into()));
            }
        }
        let elems = element_matrices(group, field, dim, &gens);
        for g in 0..group.order() {
            for (i, &x) in group.generators().iter().enumerate() {
                if elems[g].mul(&gens[i]) != elems[group.mul(g, x)] {
                    return Err(ModRepError::NotAModule(format!(
                        "relation fails at element {g} times generator {i}"
                    )));
                }
            }
        }
        let m = Self::from_parts(group, field, dim, gens);
        let _ = m.0.elems.set(elems);
        Ok(m)
    }

    /// Internal constructor for matrices known to define a module.
    pub(crate) fn from_parts(group: &Group, field: &Fq, dim: usize, gens: Vec<FqMatrix>) -> GModule {
        GModule(Arc::new(Inner {
            group: group.clone(),
            field: field.clone(),
            dim,
            gens,
            elems: OnceLock::new(),
        }))
    }

    pub fn group(&self) -> &Group {
        &self.0.group
    }

    pub fn field(&self) -> &Fq {
        &self.0.field
    }

    pub fn dim(&self) -> usize {
        self.0.dim
    }

    pub fn generator_matrices(&self) -> &[FqMatrix] {
        &self.0.gens
    }

    /// `ρ(g)` for every group element, indexed by element.
    pub fn element_matrices(&self) -> &[FqMatrix] {
        self.0.elems.get_or_init(|| {
            element_matrices(&self.0.group, &self.0.field, self.0.dim, &self.0.gens)
        })
    }

    pub fn action(&self, g: usize) -> &FqMatrix {
        &self.element_matrices()[g]
    }

    pub(crate) fn same_ring(&self, other: &GModule) -> Result<(), ModRepError> {
        if self.0.group.fingerprint() != other.0.group.fingerprint() {
            return Err(ModRepError::GroupMismatch);
        }
        if self.0.field != other.0.field {
            return Err(ModRepError::FieldMismatch);
        }
        Ok(())
    }

    /// Matrix of a group algebra element `Σ c_g g`.
    pub fn algebra_action(&self, coeffs: &[FqElem]) -> FqMatrix {
        let f = self.field();
        let mut acc = FqMatrix::zeros(f, self.dim(), self.dim());
        for (g, &c) in coeffs.iter().enumerate() {
            acc.add_scaled(self.action(g), c);
        }
        acc
    }

    /// Restricts the action to a submodule spanned by the (independent)
    /// columns of `basis`, which must be invariant.
    pub fn submodule(&self, basis: &FqMatrix) -> GModule {
        let f = self.field();
        let r = basis.cols();
        if r == 0 {
            return zero_module(self.group(), f);
        }
        let piv = basis.transpose().rref().pivots;
        let bp = basis.select_rows(&piv);
        let bp_inv = bp.inverse().expect("independent basis");
        let gens = self
            .generator_matrices()
            .iter()
            .map(|x| bp_inv.mul(&x.mul(basis).select_rows(&piv)))
            .collect();
        GModule::from_parts(self.group(), f, r, gens)
    }

    /// Quotient by the invariant subspace spanned by the columns of `basis`,
    /// with the complement of standard basis vectors as coordinates.
    pub fn quotient(&self, basis: &FqMatrix) -> GModule {
        let f = self.field();
        let r = basis.cols();
        let n = self.dim();
        if r == n {
            return zero_module(self.group(), f);
        }
        let full = basis.extend_to_basis();
        let inv = full.inverse().expect("extended basis");
        let comp = full.submatrix(0, r, n, n - r);
        let gens = self
            .generator_matrices()
            .iter()
            .map(|x| {
                let coords = inv.mul(&x.mul(&comp));
                coords.submatrix(r, 0, n - r, n - r)
            })
            .collect();
        GModule::from_parts(self.group(), f, n - r, gens)
    }

    /// Columns of `basis` spin up to the smallest invariant subspace
    /// containing them; returns an independent spanning set.
    pub fn spin(&self, vectors: &FqMatrix) -> FqMatrix {
        let f = self.field();
        let n = self.dim();
        let mut ech = Echelon::new(f, n);
        let mut out: Vec<Vec<FqElem>> = Vec::new();
        let mut queue = Vec::new();
        for v in vectors.columns() {
            if ech.insert(&v) {
                out.push(v.clone());
                queue.push(v);
            }
        }
        while let Some(v) = queue.pop() {
            for x in self.generator_matrices() {
                let w = x.mul_vec(&v);
                if ech.insert(&w) {
                    out.push(w.clone());
                    queue.push(w);
                }
            }
        }
        FqMatrix::from_columns(f, n, &out)
    }

    /// `G`-fixed vectors.
    pub fn fixed_points(&self) -> FqMatrix {
        let f = self.field();
        let n = self.dim();
        let id = FqMatrix::identity(f, n);
        let blocks: Vec<FqMatrix> = self.generator_matrices().iter().map(|x| x.sub(&id)).collect();
        if blocks.is_empty() {
            return id;
        }
        let refs: Vec<&FqMatrix> = blocks.iter().collect();
        FqMatrix::vstack(&refs).kernel_basis()
    }
}

/// Incremental row-echelon set for membership tests.
pub(crate) struct Echelon {
    field: Fq,
    rows: Vec<(usize, Vec<FqElem>)>,
    n: usize,
}

impl Echelon {
    pub(crate) fn new(field: &Fq, n: usize) -> Self {
        Echelon {
            field: field.clone(),
            rows: Vec::new(),
            n,
        }
    }

    pub(crate) fn is_full(&self) -> bool {
        self.rows.len() == self.n
    }

    pub(crate) fn reduce(&self, v: &[FqElem]) -> Vec<FqElem> {
        let f = &self.field;
        let mut w = v.to_vec();
        for (p, row) in &self.rows {
            let c = w[*p];
            if c != 0 {
                crate::exactlin::axpy(f, &mut w, row, f.neg(c));
            }
        }
        w
    }

    pub(crate) fn contains(&self, v: &[FqElem]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Adds `v` if independent; returns whether it was added.
    pub(crate) fn insert(&mut self, v: &[FqElem]) -> bool {
        let f = self.field.clone();
        let mut w = self.reduce(v);
        let Some(p) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = f.inv(w[p]);
        for x in w.iter_mut() {
            *x = f.mul(*x, inv);
        }
        self.rows.push((p, w));
        true
    }
}

pub(crate) fn zero_module(group: &Group, field: &Fq) -> GModule {
    let gens = group
        .generators()
        .iter()
        .map(|_| FqMatrix::zeros(field, 0, 0))
        .collect();
    GModule::from_parts(group, field, 0, gens)
}

/// A `kG`-module homomorphism.
#[derive(Clone, Debug)]
pub struct GMap {
    source: GModule,
    target: GModule,
    matrix: FqMatrix,
}

impl GMap {
    pub fn new(source: &GModule, target: &GModule, matrix: FqMatrix) -> Result<GMap, ModRepError> {
        source.same_ring(target)?;
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(ModRepError::DimensionMismatch);
        }
        for (a, b) in source.generator_matrices().iter().zip(target.generator_matrices()) {
            if matrix.mul(a) != b.mul(&matrix) {
                return Err(ModRepError::NotIntertwining);
            }
        }
        Ok(GMap {
            source: source.clone(),
            target: target.clone(),
            matrix,
        })
    }

    pub(crate) fn unchecked(source: &GModule, target: &GModule, matrix: FqMatrix) -> GMap {
        GMap {
            source: source.clone(),
            target: target.clone(),
            matrix,
        }
    }

    pub fn source(&self) -> &GModule {
        &self.source
    }

    pub fn target(&self) -> &GModule {
        &self.target
    }

    pub fn matrix(&self) -> &FqMatrix {
        &self.matrix
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &GMap) -> Result<GMap, ModRepError> {
        if other.source.dim() != self.target.dim() {
            return Err(ModRepError::DimensionMismatch);
        }
        Ok(GMap::unchecked(&self.source, &other.target, other.matrix.mul(&self.matrix)))
    }

    pub fn is_iso(&self) -> bool {
        self.matrix.is_invertible()
    }
}

/// `trivial_module`.
pub fn trivial_module(group: &Group, field: &Fq) -> GModule {
    let gens = group
        .generators()
        .iter()
        .map(|_| FqMatrix::identity(field, 1))
        .collect();
    GModule::from_parts(group, field, 1, gens)
}

/// `regular_module`: basis `e_h`, with `g · e_h = e_{gh}`.
pub fn regular_module(group: &Group, field: &Fq) -> GModule {
    let n = group.order();
    let gens = group
        .generators()
        .iter()
        .map(|&x| {
            let mut m = FqMatrix::zeros(field, n, n);
            for h in 0..n {
                m.set(group.mul(x, h), h, 1);
            }
            m
        })
        .collect();
    GModule::from_parts(group, field, n, gens)
}

/// Permutation module on the cosets `gH` of a subgroup given by its
/// element list.
pub fn permutation_module(group: &Group, field: &Fq, sub: &[usize]) -> GModule {
    let n = group.order();
    let mut coset_of = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for g in 0..n {
        if coset_of[g] == usize::MAX {
            for &h in sub {
                coset_of[group.mul(g, h)] = reps.len();
            }
            reps.push(g);
        }
    }
    let d = reps.len();
    let gens = group
        .generators()
        .iter()
        .map(|&x| {
            let mut m = FqMatrix::zeros(field, d, d);
            for (i, &r) in reps.iter().enumerate() {
                m.set(coset_of[group.mul(x, r)], i, 1);
            }
            m
        })
        .collect();
    GModule::from_parts(group, field, d, gens)
}

/// Contragredient module: `g` acts by `ρ(g⁻¹)ᵀ`.
pub fn dual(m: &GModule) -> GModule {
    let gens = m
        .generator_matrices()
        .iter()
        .map(|x| x.inverse().expect("invertible action").transpose())
        .collect();
    GModule::from_parts(m.group(), m.field(), m.dim(), gens)
}

/// Tensor product over `k` with diagonal action; basis `m_i ⊗ n_j` at
/// index `i·dim(n) + j`.
pub fn tensor(m: &GModule, n: &GModule) -> Result<GModule, ModRepError> {
    m.same_ring(n)?;
    let gens = m
        .generator_matrices()
        .iter()
        .zip(n.generator_matrices())
        .map(|(a, b)| a.kron(b))
        .collect();
    Ok(GModule::from_parts(m.group(), m.field(), m.dim() * n.dim(), gens))
}

/// `Hom_k(m, n)` with `(g·f)(v) = g·f(g⁻¹v)`; the linear map with matrix
/// `F` is the vector of its row-major entries, so this equals
/// `tensor(n, dual(m))` on the nose.
pub fn hom_k(m: &GModule, n: &GModule) -> Result<GModule, ModRepError> {
    tensor(n, &dual(m))
}

pub fn direct_sum(m: &GModule, n: &GModule) -> Result<GModule, ModRepError> {
    m.same_ring(n)?;
    let gens = m
        .generator_matrices()
        .iter()
        .zip(n.generator_matrices())
        .map(|(a, b)| FqMatrix::block_diag(&[a, b]))
        .collect();
    Ok(GModule::from_parts(m.group(), m.field(), m.dim() + n.dim(), gens))
}

pub fn direct_sum_all(group: &Group, field: &Fq, parts: &[GModule]) -> Result<GModule, ModRepError> {
    let mut acc = zero_module(group, field);
    for p in parts {
        acc = direct_sum(&acc, p)?;
    }
    Ok(acc)
}

/// Pulls the action back along `mono: H → G`.
pub fn restrict(m: &GModule, mono: &GroupMono) -> Result<GModule, ModRepError> {
    if mono.target().fingerprint() != m.group().fingerprint() {
        return Err(ModRepError::GroupMismatch);
    }
    let gens = mono
        .generator_images()
        .iter()
        .map(|&g| m.action(g).clone())
        .collect();
    Ok(GModule::from_parts(mono.source(), m.field(), m.dim(), gens))
}

/// One-dimensional modules `G → k^×`, in lexicographic order of the
/// discrete logarithms (base the primitive element) of the generator
/// images. Index 0 is the trivial module.
pub fn characters(group: &Group, field: &Fq) -> Vec<Vec<u32>> {
    let q1 = field.order() as u64 - 1;
    let gens = group.generators();
    let mut out = Vec::new();
    let mut exps = vec![0u64; gens.len()];
    // exponent a is admissible for x only if (ord x)·a ≡ 0 mod q-1
    let admissible: Vec<Vec<u64>> = gens
        .iter()
        .map(|&x| {
            let o = group.element_order(x) as u64;
            (0..q1).filter(|a| (o * a) % q1 == 0).collect()
        })
        .collect();
    let mut idx = vec![0usize; gens.len()];
    loop {
        for (i, e) in exps.iter_mut().enumerate() {
            *e = admissible[i][idx[i]];
        }
        if character_is_consistent(group, q1, &exps) {
            out.push(exps.iter().map(|&e| e as u32).collect());
        }
        // odometer, last generator fastest
        let mut k = gens.len();
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < admissible[k].len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

fn character_is_consistent(group: &Group, q1: u64, exps: &[u64]) -> bool {
    let n = group.order();
    let mut val = vec![u64::MAX; n];
    val[0] = 0;
    for (h, from) in group.bfs_words() {
        if let Some((g, i)) = from {
            val[h] = (val[g] + exps[i]) % q1;
        }
    }
    for g in 0..n {
        for (i, &x) in group.generators().iter().enumerate() {
            if val[group.mul(g, x)] != (val[g] + exps[i]) % q1 {
                return false;
            }
        }
    }
    true
}

/// The `index`-th one-dimensional module in the order of [`characters`].
pub fn character_module(group: &Group, field: &Fq, index: usize) -> Result<GModule, ModRepError> {
    let chars = characters(group, field);
    let exps = chars.get(index).ok_or(ModRepError::CharacterIndex {
        index,
        count: chars.len(),
    })?;
    let gens = exps
        .iter()
        .map(|&e| FqMatrix::scalar(field, 1, field.primitive_power(e as u64)))
        .collect();
    Ok(GModule::from_parts(group, field, 1, gens))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{build_group, mono_from_generator_images, GroupSpec};

    fn f(p: u64, e: u32) -> Fq {
        Fq::new(p, e).unwrap()
    }

    #[test]
    fn regular_and_trivial() {
        let c2 = build_group(&GroupSpec::Cyclic(2)).unwrap();
        let k = f(2, 1);
        let r = regular_module(&c2, &k);
        assert_eq!(r.dim(), 2);
        assert_eq!(r.generator_matrices()[0], FqMatrix::from_rows(&k, &[vec![0, 1], vec![1, 0]]));
        assert!(GModule::new(&c2, &k, r.dim(), r.generator_matrices().to_vec()).is_ok());
        let q8 = build_group(&GroupSpec::Quaternion8(true)).unwrap();
        let r = regular_module(&q8, &f(2, 2));
        assert_eq!(r.dim(), 8);
        assert!(GModule::new(&q8, &f(2, 2), r.dim(), r.generator_matrices().to_vec()).is_ok());
    }

    #[test]
    fn rejects_bad_actions() {
        let c2 = build_group(&GroupSpec::Cyclic(2)).unwrap();
        let k = f(3, 1);
        // order 4 matrix is not an action of C2
        let m = FqMatrix::from_rows(&k, &[vec![0, 2], vec![1, 0]]);
        assert!(matches!(GModule::new(&c2, &k, 2, vec![m]), Err(ModRepError::NotAModule(_))));
    }

    #[test]
    fn constructions_are_modules() {
        let q8 = build_group(&GroupSpec::Quaternion8(true)).unwrap();
        let k = f(3, 1);
        let r = regular_module(&q8, &k);
        let t = trivial_module(&q8, &k);
        for m in [dual(&r), tensor(&r, &r).unwrap(), hom_k(&r, &t).unwrap(), direct_sum(&r, &t).unwrap()] {
            assert!(GModule::new(&q8, &k, m.dim(), m.generator_matrices().to_vec()).is_ok());
        }
        assert_eq!(dual(&t).generator_matrices(), t.generator_matrices());
    }

    #[test]
    fn characters_of_c6() {
        let c6 = build_group(&GroupSpec::Cyclic(6)).unwrap();
        assert_eq!(characters(&c6, &f(2, 2)).len(), 3);
        assert_eq!(characters(&c6, &f(2, 1)).len(), 1);
        assert_eq!(characters(&c6, &f(3, 1)).len(), 2);
        let q8 = build_group(&GroupSpec::Quaternion8(true)).unwrap();
        assert_eq!(characters(&q8, &f(5, 1)).len(), 4);
        let chi = character_module(&c6, &f(2, 2), 1).unwrap();
        assert!(GModule::new(&c6, &f(2, 2), chi.dim(), chi.generator_matrices().to_vec()).is_ok());
    }

    #[test]
    fn restriction_and_subquotients() {
        let c4 = build_group(&GroupSpec::Cyclic(4)).unwrap();
        let c2 = build_group(&GroupSpec::Cyclic(2)).unwrap();
        let k = f(2, 1);
        let r = regular_module(&c4, &k);
        let mono = mono_from_generator_images(&c2, &c4, &[2]).unwrap();
        let res = restrict(&r, &mono).unwrap();
        assert_eq!(res.group().order(), 2);
        assert!(GModule::new(&c2, &k, res.dim(), res.generator_matrices().to_vec()).is_ok());
        // the fixed line of kC4 is spanned by the all-ones vector
        let fix = r.fixed_points();
        assert_eq!(fix.cols(), 1);
        let sub = r.submodule(&fix);
        assert_eq!(sub.dim(), 1);
        let quo = r.quotient(&fix);
        assert_eq!(quo.dim(), 3);
        assert!(GModule::new(&c4, &k, quo.dim(), quo.generator_matrices().to_vec()).is_ok());
    }
}
