//! Finitely generated abelian groups in invariant-factor form, and
//! homomorphisms between them.
//!
//! A group is `Z/d₁ ⊕ … ⊕ Z/d_r` with `d₁ | d₂ | … ` and `d_i ≠ 1`; a factor
//! `0` stands for `Z`, and the `Z` factors come last. Homomorphisms are
//! integer matrices on generator coordinates.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactlin::{smith_normal_form, ZMatrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AbError {
    #[error("matrix does not define a homomorphism: {0}")]
    IllDefinedHom(String),
    #[error("shape mismatch")]
    ShapeMismatch,
}

#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FgAbelian {
    #[serde(rename = "invariant_factors")]
    factors: Vec<u64>,
    labels: Vec<String>,
}

impl fmt::Debug for FgAbelian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FgAbelian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|&d| if d == 0 { "Z".to_string() } else { format!("Z/{d}") })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// A normalized presentation: the group together with coordinate changes
/// between the presenting generators and the normal-form generators.
#[derive(Clone, Debug)]
pub struct Normalized {
    pub group: FgAbelian,
    /// presenting coordinates → normal coordinates
    pub to_normal: ZMatrix,
    /// normal coordinates → presenting coordinates
    pub from_normal: ZMatrix,
}

fn big(x: u64) -> BigInt {
    BigInt::from(x)
}

fn to_u64(x: &BigInt) -> u64 {
    x.abs().to_u64().expect("invariant factor fits in u64")
}

/// Inverse of a unimodular matrix: if `a·u·b = I` then `u⁻¹ = b·a`.
pub(crate) fn unimodular_inverse(u: &ZMatrix) -> ZMatrix {
    let s = smith_normal_form(u);
    debug_assert!(s.invariant_factors().iter().all(|d| d.is_one()));
    s.v.mul(&s.u)
}

/// `Z^r / im(relations)` in normal form; `relations` has `r` rows.
pub fn present(r: usize, relations: &ZMatrix) -> Normalized {
    assert_eq!(relations.rows(), r);
    let s = smith_normal_form(relations);
    let diag = s.invariant_factors();
    let uinv = unimodular_inverse(&s.u);
    let mut keep = Vec::new();
    let mut factors = Vec::new();
    for i in 0..r {
        let d = diag.get(i).map(to_u64).unwrap_or(0);
        if d != 1 {
            keep.push(i);
            factors.push(d);
        }
    }
    // zeros already sit last in the Smith form
    Normalized {
        group: FgAbelian::from_normal_factors(factors),
        to_normal: s.u.select_rows(&keep),
        from_normal: uinv.select_columns(&keep),
    }
}

impl FgAbelian {
    fn from_normal_factors(factors: Vec<u64>) -> FgAbelian {
        let labels = (0..factors.len()).map(|i| format!("e{}", i + 1)).collect();
        FgAbelian { factors, labels }
    }

    pub fn trivial() -> FgAbelian {
        FgAbelian {
            factors: Vec::new(),
            labels: Vec::new(),
        }
    }

    pub fn cyclic(n: u64) -> FgAbelian {
        Self::from_orders(&[n]).group
    }

    pub fn integers() -> FgAbelian {
        Self::cyclic(0)
    }

    /// `⊕ Z/n_i` (with `0` meaning `Z`), normalized.
    pub fn from_orders(orders: &[u64]) -> Normalized {
        let r = orders.len();
        let diag: Vec<BigInt> = orders.iter().map(|&n| big(n)).collect();
        let rel = if r == 0 {
            ZMatrix::zeros(0, 0)
        } else {
            ZMatrix::diagonal(&diag)
        };
        present(r, &rel)
    }

    /// Normal form with the given labels when the input is already in normal
    /// form; otherwise the labels are replaced by generic ones.
    pub fn labelled(orders: &[u64], labels: &[&str]) -> FgAbelian {
        let n = Self::from_orders(orders);
        let mut g = n.group;
        if g.factors == orders && labels.len() == orders.len() {
            g.labels = labels.iter().map(|s| s.to_string()).collect();
        }
        g
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> FgAbelian {
        assert_eq!(labels.len(), self.factors.len());
        self.labels = labels;
        self
    }

    pub fn ngens(&self) -> usize {
        self.factors.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.factors.iter().all(|&d| d != 0)
    }

    pub fn free_rank(&self) -> usize {
        self.factors.iter().filter(|&&d| d == 0).count()
    }

    /// Order, or `None` when infinite.
    pub fn order(&self) -> Option<u64> {
        if self.is_finite() {
            Some(self.factors.iter().product())
        } else {
            None
        }
    }

    /// Relation matrix `diag(d_i)`.
    pub fn relations(&self) -> ZMatrix {
        let d: Vec<BigInt> = self.factors.iter().map(|&x| big(x)).collect();
        if d.is_empty() {
            ZMatrix::zeros(0, 0)
        } else {
            ZMatrix::diagonal(&d)
        }
    }

    /// Canonical coordinates of an element (reduced mod finite factors).
    pub fn reduce(&self, v: &[BigInt]) -> Vec<BigInt> {
        v.iter()
            .zip(&self.factors)
            .map(|(x, &d)| if d == 0 { x.clone() } else { x.mod_floor(&big(d)) })
            .collect()
    }

    pub fn is_zero_element(&self, v: &[BigInt]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Every element of a finite group, as coordinate vectors.
    pub fn elements(&self) -> Option<Vec<Vec<BigInt>>> {
        let order = self.order()?;
        let mut out = Vec::with_capacity(order as usize);
        let mut cur = vec![0u64; self.ngens()];
        loop {
            out.push(cur.iter().map(|&x| big(x)).collect());
            let mut k = 0;
            loop {
                if k == cur.len() {
                    return Some(out);
                }
                cur[k] += 1;
                if cur[k] < self.factors[k] {
                    break;
                }
                cur[k] = 0;
                k += 1;
            }
        }
    }

    /// Order of an element; `0` for elements of infinite order.
    pub fn element_order(&self, v: &[BigInt]) -> u64 {
        let v = self.reduce(v);
        let mut l = 1u64;
        for (x, &d) in v.iter().zip(&self.factors) {
            if x.is_zero() {
                continue;
            }
            if d == 0 {
                return 0;
            }
            let o = d / to_u64(&x.gcd(&big(d)));
            l = l.lcm(&o);
        }
        l
    }
}

/// A homomorphism of finitely generated abelian groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbHom {
    source: FgAbelian,
    target: FgAbelian,
    /// `target.ngens × source.ngens`, columns are images of generators.
    matrix: ZMatrix,
}

impl AbHom {
    pub fn new(source: &FgAbelian, target: &FgAbelian, matrix: ZMatrix) -> Result<AbHom, AbError> {
        if matrix.rows() != target.ngens() || matrix.cols() != source.ngens() {
            return Err(AbError::ShapeMismatch);
        }
        let mut m = matrix;
        for j in 0..source.ngens() {
            let d = source.factors[j];
            for i in 0..target.ngens() {
                let t = target.factors[i];
                let x = m.get(i, j).clone();
                let ok = if t == 0 {
                    d == 0 || x.is_zero()
                } else {
                    (&x * big(d)).mod_floor(&big(t)).is_zero()
                };
                if !ok {
                    return Err(AbError::IllDefinedHom(format!(
                        "generator {} of order {} maps to coordinate {} of order {}",
                        j, d, i, t
                    )));
                }
                if t != 0 {
                    m.set(i, j, x.mod_floor(&big(t)));
                }
            }
        }
        Ok(AbHom {
            source: source.clone(),
            target: target.clone(),
            matrix: m,
        })
    }

    pub fn zero(source: &FgAbelian, target: &FgAbelian) -> AbHom {
        AbHom {
            source: source.clone(),
            target: target.clone(),
            matrix: ZMatrix::zeros(target.ngens(), source.ngens()),
        }
    }

    pub fn identity(a: &FgAbelian) -> AbHom {
        AbHom {
            source: a.clone(),
            target: a.clone(),
            matrix: ZMatrix::identity(a.ngens()),
        }
    }

    pub fn source(&self) -> &FgAbelian {
        &self.source
    }

    pub fn target(&self) -> &FgAbelian {
        &self.target
    }

    pub fn matrix(&self) -> &ZMatrix {
        &self.matrix
    }

    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        self.target.reduce(&self.matrix.mul_vec(v))
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &AbHom) -> Result<AbHom, AbError> {
        if self.target.factors != other.source.factors {
            return Err(AbError::ShapeMismatch);
        }
        AbHom::new(&self.source, &other.target, other.matrix.mul(&self.matrix))
    }

    pub fn is_zero(&self) -> bool {
        (0..self.source.ngens()).all(|j| self.target.is_zero_element(&self.matrix.column(j)))
    }
}

/// Block matrix assembly `Σ_j A_j → Σ_i B_i` from blocks `h[i][j]`.
pub fn block_hom(
    sources: &[FgAbelian],
    targets: &[FgAbelian],
    blocks: &[Vec<ZMatrix>],
) -> Result<AbHom, AbError> {
    let src = concat(sources);
    let tgt = concat(targets);
    let mut m = ZMatrix::zeros(tgt.ngens(), src.ngens());
    let mut r0 = 0;
    for (i, t) in targets.iter().enumerate() {
        let mut c0 = 0;
        for (j, s) in sources.iter().enumerate() {
            let b = &blocks[i][j];
            if b.rows() != t.ngens() || b.cols() != s.ngens() {
                return Err(AbError::ShapeMismatch);
            }
            for r in 0..b.rows() {
                for c in 0..b.cols() {
                    m.set(r0 + r, c0 + c, b.get(r, c).clone());
                }
            }
            c0 += s.ngens();
        }
        r0 += t.ngens();
    }
    AbHom::new(&src, &tgt, m)
}

/// Concatenation without renormalizing (a direct sum presented on the
/// union of generators). The factors need not form a divisibility chain.
pub fn concat(parts: &[FgAbelian]) -> FgAbelian {
    FgAbelian {
        factors: parts.iter().flat_map(|p| p.factors.iter().copied()).collect(),
        labels: parts.iter().flat_map(|p| p.labels.iter().cloned()).collect(),
    }
}

/// `ab_direct_sum`, renormalized to invariant factors.
pub fn ab_direct_sum(parts: &[FgAbelian]) -> FgAbelian {
    let orders: Vec<u64> = parts.iter().flat_map(|p| p.factors.iter().copied()).collect();
    FgAbelian::from_orders(&orders).group
}

/// Integer kernel of a matrix, as columns.
fn integer_kernel(c: &ZMatrix) -> ZMatrix {
    let s = smith_normal_form(c);
    let r = s.rank();
    let idx: Vec<usize> = (r..c.cols()).collect();
    s.v.select_columns(&idx)
}

/// `ab_kernel`: the kernel with its inclusion into the source.
pub fn ab_kernel(h: &AbHom) -> (FgAbelian, AbHom) {
    let a = &h.source;
    let b = &h.target;
    let (m, n) = (a.ngens(), b.ngens());
    // x with M x ∈ im diag(b): kernel of [M | -diag(b)]
    let mut c = ZMatrix::zeros(n, m + n);
    for i in 0..n {
        for j in 0..m {
            c.set(i, j, h.matrix.get(i, j).clone());
        }
        c.set(i, m + i, -big(b.factors[i]));
    }
    let k = integer_kernel(&c);
    let gens = k.select_rows(&(0..m).collect::<Vec<_>>());
    // basis of the sublattice L spanned by gens
    let s = smith_normal_form(&gens);
    let rank = s.rank();
    let diag = s.invariant_factors();
    let uinv = unimodular_inverse(&s.u);
    let mut lb = ZMatrix::zeros(m, rank);
    for i in 0..rank {
        for r in 0..m {
            lb.set(r, i, uinv.get(r, i) * &diag[i]);
        }
    }
    // relations of A written in the basis of L
    let ua = s.u.mul(&a.relations_padded(m));
    let mut rel = ZMatrix::zeros(rank, m);
    for i in 0..rank {
        for j in 0..m {
            let (q, r) = ua.get(i, j).div_rem(&diag[i]);
            debug_assert!(r.is_zero());
            rel.set(i, j, q);
        }
    }
    let norm = present(rank, &rel);
    let incl = lb.mul(&norm.from_normal);
    let hom = AbHom::new(&norm.group, a, incl).expect("inclusion is well defined");
    (norm.group, hom)
}

impl FgAbelian {
    fn relations_padded(&self, m: usize) -> ZMatrix {
        debug_assert_eq!(m, self.ngens());
        if m == 0 {
            ZMatrix::zeros(0, 0)
        } else {
            self.relations()
        }
    }
}

/// `ab_cokernel`: the cokernel with the projection from the target.
pub fn ab_cokernel(h: &AbHom) -> (FgAbelian, AbHom) {
    let b = &h.target;
    let n = b.ngens();
    let rel = if n == 0 {
        ZMatrix::zeros(0, 0)
    } else {
        ZMatrix::hstack(&b.relations(), &h.matrix)
    };
    let norm = present(n, &rel);
    let proj = AbHom::new(b, &norm.group, norm.to_normal.clone()).expect("projection is well defined");
    (norm.group, proj)
}

/// `ab_image`, as the cokernel of the kernel inclusion.
pub fn ab_image(h: &AbHom) -> FgAbelian {
    let (_, incl) = ab_kernel(h);
    ab_cokernel(&incl).0
}

/// `hom_group`: `Hom(A, B)`.
pub fn hom_group(a: &FgAbelian, b: &FgAbelian) -> FgAbelian {
    let mut orders = Vec::new();
    for &x in &a.factors {
        for &y in &b.factors {
            let o = match (x, y) {
                (0, y) => y,
                (_, 0) => 1,
                (x, y) => x.gcd(&y),
            };
            orders.push(o);
        }
    }
    FgAbelian::from_orders(&orders).group
}

/// Why an extension `0 → sub → T → quot → 0` splits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SplitReason {
    SubTrivial,
    QuotTrivial,
    CoprimeOrders,
    SplitByInflation,
    None,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Extension {
    Determined(FgAbelian),
    Ambiguous { sub: FgAbelian, quot: FgAbelian },
}

/// `extension_resolve`: the middle term when a splitting rule applies and
/// its premise holds; `Ambiguous` otherwise.
pub fn extension_resolve(sub: &FgAbelian, quot: &FgAbelian, reason: SplitReason) -> Extension {
    let sum = || Extension::Determined(ab_direct_sum(&[sub.clone(), quot.clone()]));
    let ambiguous = || Extension::Ambiguous {
        sub: sub.clone(),
        quot: quot.clone(),
    };
    let premise = match reason {
        SplitReason::SubTrivial => sub.is_trivial(),
        SplitReason::QuotTrivial => quot.is_trivial(),
        SplitReason::CoprimeOrders => match (sub.order(), quot.order()) {
            (Some(a), Some(b)) => a.gcd(&b) == 1,
            _ => false,
        },
        SplitReason::SplitByInflation => true,
        SplitReason::None => sub.is_trivial() || quot.is_trivial(),
    };
    if premise {
        sum()
    } else {
        ambiguous()
    }
}
