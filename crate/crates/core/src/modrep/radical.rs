//! The Jacobson radical of `kG` and the radical and socle of modules.
//!
//! When the Sylow `p`-subgroup `P` is normal, `J(kG) = kG·I(kP)` with
//! `I(kP)` the augmentation ideal, so `rad M` is the submodule generated by
//! the vectors `(y − 1)v` for `y` generating `P`. Otherwise `J(F_pG)` is
//! found by the trace-function refinement over `F_p` (radical of an algebra
//! of matrices) and then extended to `k`, which is harmless because `k/F_p`
//! is separable.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::exactlin::{Fq, FqElem, FqMatrix};
use crate::groups::Group;

use super::GModule;

/// How to obtain the Jacobson radical of the group algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RadicalMethod {
    /// Augmentation ideal of a normal Sylow subgroup when there is one,
    /// trace refinement otherwise.
    Auto,
    /// Always use the trace refinement.
    Generic,
}

fn p_part(n: usize, p: usize) -> usize {
    let mut q = 1;
    let mut n = n;
    while n % p == 0 {
        n /= p;
        q *= p;
    }
    q
}

/// Generators of the Sylow `p`-subgroup if it is normal (possibly trivial).
pub fn normal_sylow_generators(g: &Group, p: usize) -> Option<Vec<usize>> {
    let pe: Vec<usize> = (1..g.order())
        .filter(|&x| p_part(g.element_order(x), p) == g.element_order(x))
        .collect();
    if pe.len() + 1 != p_part(g.order(), p) {
        return None;
    }
    let mut gens = Vec::new();
    let mut span = g.generated_by(&[]);
    for &x in &pe {
        if !span.contains(x) {
            gens.push(x);
            span = g.generated_by(&gens);
        }
    }
    Some(gens)
}

type JCache = Mutex<HashMap<(u64, u32), Arc<Vec<Vec<u32>>>>>;

fn jcache() -> &'static JCache {
    static CACHE: OnceLock<JCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `J(F_pG)` as a list of coefficient vectors over `F_p` (entries `< p`),
/// by the trace-function refinement. Cached per group and prime.
pub fn group_algebra_radical_fp(g: &Group, p: u32) -> Arc<Vec<Vec<u32>>> {
    let key = (g.fingerprint(), p);
    if let Some(v) = jcache().lock().unwrap().get(&key) {
        return v.clone();
    }
    let v = Arc::new(trace_refinement(g, p));
    jcache().lock().unwrap().entry(key).or_insert(v).clone()
}

/// Product in `(Z/mZ)[G]`.
fn alg_mul(g: &Group, a: &[u64], b: &[u64], m: u64) -> Vec<u64> {
    let n = g.order();
    let mut out = vec![0u64; n];
    for (x, &ax) in a.iter().enumerate() {
        if ax == 0 {
            continue;
        }
        for (y, &by) in b.iter().enumerate() {
            if by == 0 {
                continue;
            }
            let z = g.mul(x, y);
            out[z] = (out[z] + ax * by) % m;
        }
    }
    out
}

fn alg_pow(g: &Group, a: &[u64], mut e: u64, m: u64) -> Vec<u64> {
    let n = g.order();
    let mut result = vec![0u64; n];
    result[0] = 1 % m;
    let mut base = a.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            result = alg_mul(g, &result, &base, m);
        }
        e >>= 1;
        if e > 0 {
            base = alg_mul(g, &base, &base, m);
        }
    }
    result
}

fn trace_refinement(g: &Group, p: u32) -> Vec<Vec<u32>> {
    let n = g.order();
    let fp = Fq::new(p as u64, 1).expect("prime");
    let pu = p as u64;
    // l = floor(log_p n)
    let mut l = 0u32;
    while pu.pow(l + 1) <= n as u64 {
        l += 1;
    }
    let mut basis: Vec<Vec<u32>> = (0..n)
        .map(|i| {
            let mut v = vec![0; n];
            v[i] = 1;
            v
        })
        .collect();
    for i in 0..=l {
        if basis.is_empty() {
            break;
        }
        let modulus = pu.pow(i + 1);
        let pi = pu.pow(i);
        // g_i(z) = (Tr_reg(z̃^{p^i}) mod p^{i+1}) / p^i, Tr_reg(w) = n·w_1
        let gi = |z: &[u64]| -> u32 {
            let w = alg_pow(g, z, pi, modulus);
            let tr = (n as u64 % modulus) * w[0] % modulus;
            debug_assert_eq!(tr % pi, 0);
            (tr / pi % pu) as u32
        };
        let mut rows = Vec::with_capacity(n);
        for h in 0..n {
            let hinv = g.inv(h);
            let row: Vec<u32> = basis
                .iter()
                .map(|b| {
                    // (b·h)_x = b_{x h^-1}
                    let z: Vec<u64> = (0..n).map(|x| b[g.mul(x, hinv)] as u64).collect();
                    gi(&z)
                })
                .collect();
            rows.push(row);
        }
        let forms = FqMatrix::from_rows(&fp, &rows);
        let k = forms.kernel_basis();
        let old = FqMatrix::from_columns(&fp, n, &basis);
        let new = old.mul(&k);
        basis = new.columns();
    }
    basis
}

/// A basis of `J(kG)` as group algebra coefficient vectors.
pub fn jacobson_radical(g: &Group, k: &Fq, method: RadicalMethod) -> Vec<Vec<FqElem>> {
    let p = k.characteristic() as usize;
    let n = g.order();
    if n % p != 0 {
        return Vec::new();
    }
    if method == RadicalMethod::Auto {
        if let Some(ys) = normal_sylow_generators(g, p) {
            let mut cols = Vec::new();
            for &y in &ys {
                for x in 0..n {
                    // x(y - 1)
                    let mut v = vec![0; n];
                    v[g.mul(x, y)] = 1;
                    v[x] = k.neg(1);
                    cols.push(v);
                }
            }
            return FqMatrix::from_columns(k, n, &cols).column_space_basis().columns();
        }
    }
    group_algebra_radical_fp(g, p as u32).as_ref().clone()
}

/// `radical`: a basis of `J(kG)·M`, as columns.
pub fn radical(m: &GModule) -> FqMatrix {
    radical_with(m, RadicalMethod::Auto)
}

pub fn radical_with(m: &GModule, method: RadicalMethod) -> FqMatrix {
    let k = m.field();
    let g = m.group();
    let p = k.characteristic() as usize;
    let d = m.dim();
    if d == 0 || g.order() % p != 0 {
        return FqMatrix::zeros(k, d, 0);
    }
    if method == RadicalMethod::Auto {
        if let Some(ys) = normal_sylow_generators(g, p) {
            let id = FqMatrix::identity(k, d);
            let blocks: Vec<FqMatrix> = ys.iter().map(|&y| m.action(y).sub(&id)).collect();
            let refs: Vec<&FqMatrix> = blocks.iter().collect();
            return m.spin(&FqMatrix::hstack(&refs));
        }
    }
    let j = jacobson_radical(g, k, RadicalMethod::Generic);
    if j.is_empty() {
        return FqMatrix::zeros(k, d, 0);
    }
    let blocks: Vec<FqMatrix> = j.iter().map(|c| m.algebra_action(c)).collect();
    let refs: Vec<&FqMatrix> = blocks.iter().collect();
    FqMatrix::hstack(&refs).column_space_basis()
}

/// Socle: vectors killed by `J(kG)`, as columns.
pub fn socle(m: &GModule) -> FqMatrix {
    let k = m.field();
    let g = m.group();
    let p = k.characteristic() as usize;
    let d = m.dim();
    if d == 0 || g.order() % p != 0 {
        return FqMatrix::identity(k, d);
    }
    let blocks: Vec<FqMatrix> = match normal_sylow_generators(g, p) {
        Some(ys) => {
            let id = FqMatrix::identity(k, d);
            ys.iter().map(|&y| m.action(y).sub(&id)).collect()
        }
        None => jacobson_radical(g, k, RadicalMethod::Generic)
            .iter()
            .map(|c| m.algebra_action(c))
            .collect(),
    };
    if blocks.is_empty() {
        return FqMatrix::identity(k, d);
    }
    let refs: Vec<&FqMatrix> = blocks.iter().collect();
    FqMatrix::vstack(&refs).kernel_basis()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{build_group, GroupSpec};
    use crate::modrep::{regular_module, trivial_module};

    fn s3() -> Group {
        let mut t = vec![vec![0; 6]; 6];
        for a in 0..6 {
            for b in 0..6 {
                let (ra, fa) = (a % 3, a / 3);
                let (rb, fb) = (b % 3, b / 3);
                let r = if fa == 1 { (ra + 3 - rb) % 3 } else { (ra + rb) % 3 };
                t[a][b] = r + 3 * ((fa + fb) % 2);
            }
        }
        build_group(&GroupSpec::Table(t)).unwrap()
    }

    /// A4 as even permutations of {0,1,2,3}, identity first.
    fn a4() -> Group {
        fn parity(p: &[usize]) -> usize {
            let mut inv = 0;
            for i in 0..4 {
                for j in i + 1..4 {
                    if p[i] > p[j] {
                        inv += 1;
                    }
                }
            }
            inv % 2
        }
        let mut perms = Vec::new();
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    for d in 0..4 {
                        let p = vec![a, b, c, d];
                        let mut s = p.clone();
                        s.sort();
                        if s == vec![0, 1, 2, 3] && parity(&p) == 0 {
                            perms.push(p);
                        }
                    }
                }
            }
        }
        let idx = |p: &Vec<usize>| perms.iter().position(|q| q == p).unwrap();
        let table: Vec<Vec<usize>> = perms
            .iter()
            .map(|x| {
                perms
                    .iter()
                    .map(|y| idx(&(0..4).map(|i| x[y[i]]).collect()))
                    .collect()
            })
            .collect();
        build_group(&GroupSpec::Table(table)).unwrap()
    }

    #[test]
    fn spec_examples() {
        let k = Fq::new(2, 1).unwrap();
        let c2 = build_group(&GroupSpec::Cyclic(2)).unwrap();
        let c3 = build_group(&GroupSpec::Cyclic(3)).unwrap();
        assert_eq!(radical(&trivial_module(&c2, &k)).cols(), 0);
        assert_eq!(radical(&regular_module(&c2, &k)).cols(), 1);
        assert_eq!(radical(&regular_module(&c3, &k)).cols(), 0);
    }

    #[test]
    fn non_normal_sylow_examples() {
        let s3 = s3();
        assert!(normal_sylow_generators(&s3, 2).is_none());
        assert!(normal_sylow_generators(&s3, 3).is_some());
        let f2 = Fq::new(2, 1).unwrap();
        assert_eq!(jacobson_radical(&s3, &f2, RadicalMethod::Auto).len(), 1);
        let a4 = a4();
        assert_eq!(a4.order(), 12);
        let f3 = Fq::new(3, 1).unwrap();
        assert_eq!(jacobson_radical(&a4, &f3, RadicalMethod::Auto).len(), 2);
        // A4 has a normal Sylow 2-subgroup, S3 a normal Sylow 3-subgroup
        let f4 = Fq::new(2, 2).unwrap();
        for (g, k) in [(&a4, &f4), (&s3, &f3)] {
            let auto = jacobson_radical(g, k, RadicalMethod::Auto);
            let generic = jacobson_radical(g, k, RadicalMethod::Generic);
            let n = g.order();
            let a = FqMatrix::from_columns(k, n, &auto);
            let b = FqMatrix::from_columns(k, n, &generic);
            assert_eq!(a.rank(), b.rank());
            assert_eq!(FqMatrix::hstack(&[&a, &b]).rank(), a.rank());
        }
    }

    #[test]
    fn both_paths_agree_on_modules() {
        let q8 = build_group(&GroupSpec::Quaternion8(true)).unwrap();
        let c6 = build_group(&GroupSpec::Cyclic(6)).unwrap();
        for (g, k) in [(&q8, Fq::new(2, 1).unwrap()), (&c6, Fq::new(3, 1).unwrap()), (&c6, Fq::new(2, 2).unwrap())] {
            let r = regular_module(g, &k);
            let a = radical_with(&r, RadicalMethod::Auto);
            let b = radical_with(&r, RadicalMethod::Generic);
            assert_eq!(a.cols(), b.cols());
            assert_eq!(FqMatrix::hstack(&[&a, &b]).rank(), a.cols());
        }
    }

    #[test]
    fn socle_of_local_algebra_is_a_line() {
        let q8 = build_group(&GroupSpec::Quaternion8(true)).unwrap();
        let k = Fq::new(2, 1).unwrap();
        assert_eq!(socle(&regular_module(&q8, &k)).cols(), 1);
        let s3 = s3();
        // kS3 over F_2: socle of the principal block PIMs plus the 4-dim block
        assert_eq!(socle(&regular_module(&s3, &k)).cols(), 5);
    }
}
