//! Oracles and property checks shared by the acceptance harness and the
//! proptest suites.
#![allow(dead_code, unused_imports)]

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use endotriv::abgrp::{ab_cokernel, ab_image, ab_kernel, AbHom, FgAbelian};
use endotriv::exactlin::{smith_normal_form, Fq, ZMatrix};
use endotriv::groups::{build_group, mono_from_generator_images, Group, GroupMono, GroupSpec};
use endotriv::modrep::{
    character_module, characters, direct_sum, module_iso, regular_module, restrict, stable_iso, strip_projectives,
    syzygy_power, trivial_module, GModule,
};
use endotriv::picard::{t_group, TGroupData};
use endotriv::treecalc::{compute_t, GraphOfGroups};

pub type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)*) => {
        if !$cond {
            return Err(format!($($fmt)*));
        }
    };
}
pub(crate) use ensure;

pub fn field(p: u64, e: u32) -> Fq {
    Fq::new(p, e).unwrap()
}

pub fn cyclic(n: usize) -> Group {
    build_group(&GroupSpec::Cyclic(n)).unwrap()
}

pub fn q8() -> Group {
    build_group(&GroupSpec::Quaternion8(true)).unwrap()
}

pub fn mono(src: &Group, tgt: &Group, words: &[&str]) -> GroupMono {
    let images: Vec<usize> = words.iter().map(|w| tgt.parse_element(w).unwrap()).collect();
    mono_from_generator_images(src, tgt, &images).unwrap()
}

// ---------------------------------------------------------------- SNF

/// All `k × k` minors of `m`.
fn minors(m: &ZMatrix, k: usize) -> Vec<BigInt> {
    fn choose(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![Vec::new()];
        }
        if n < k {
            return Vec::new();
        }
        let mut out = choose(n - 1, k);
        for mut c in choose(n - 1, k - 1) {
            c.push(n - 1);
            out.push(c);
        }
        out
    }
    let mut out = Vec::new();
    for rows in choose(m.rows(), k) {
        for cols in choose(m.cols(), k) {
            out.push(m.select_rows(&rows).select_columns(&cols).determinant());
        }
    }
    out
}

fn gcd_all(xs: &[BigInt]) -> BigInt {
    xs.iter()
        .fold(BigInt::zero(), |a, b| num_integer::Integer::gcd(&a, b))
}

/// `U·m·V = D`, unimodular `U` and `V`, nonnegative divisibility chain,
/// and `d₁⋯d_k = gcd of k×k minors`.
pub fn check_snf(rows: &[Vec<i64>]) -> Check {
    let m = ZMatrix::from_rows(rows);
    let s = smith_normal_form(&m);
    ensure!(s.u.mul(&m).mul(&s.v) == s.d, "U m V != D for {rows:?}");
    ensure!(s.u.determinant().abs() == BigInt::from(1), "U not unimodular");
    ensure!(s.v.determinant().abs() == BigInt::from(1), "V not unimodular");
    for r in 0..s.d.rows() {
        for c in 0..s.d.cols() {
            ensure!(r == c || s.d.get(r, c).is_zero(), "D not diagonal");
        }
    }
    let d = s.invariant_factors();
    for w in d.windows(2) {
        ensure!(!w[0].is_negative(), "negative invariant factor");
        let ok = if w[0].is_zero() { w[1].is_zero() } else { (&w[1] % &w[0]).is_zero() };
        ensure!(ok, "divisibility fails: {d:?}");
    }
    let mut prod = BigInt::from(1);
    for (k, dk) in d.iter().enumerate() {
        prod *= dk;
        let g = gcd_all(&minors(&m, k + 1));
        ensure!(prod == g, "d_1..d_{} = {prod} but minor gcd = {g}", k + 1);
    }
    Ok(())
}

// -------------------------------------------------------------- abgrp

/// A well-defined hom between finite cyclic sums: entry `(j, i)` is a
/// multiple of `t_j / gcd(s_i, t_j)`.
pub fn finite_hom(src: &[u64], tgt: &[u64], coeffs: &[u64]) -> AbHom {
    let s = FgAbelian::from_orders(src).group;
    let t = FgAbelian::from_orders(tgt).group;
    let (sf, tf) = (s.factors().to_vec(), t.factors().to_vec());
    let mut m = ZMatrix::zeros(tf.len(), sf.len());
    let mut it = coeffs.iter().cycle();
    for (j, &tj) in tf.iter().enumerate() {
        for (i, &si) in sf.iter().enumerate() {
            let step = tj / num_integer::gcd(si, tj);
            m.set(j, i, BigInt::from(step * it.next().copied().unwrap_or(0)));
        }
    }
    AbHom::new(&s, &t, m).unwrap()
}

fn order_of(a: &FgAbelian) -> u64 {
    a.order().expect("finite")
}

/// `|ker|·|im| = |src|` and `|coker|·|im| = |tgt|`, with the kernel also
/// counted by brute force.
pub fn check_order_bookkeeping(h: &AbHom) -> Check {
    let (ker, inc) = ab_kernel(h);
    let im = ab_image(h);
    let (coker, _) = ab_cokernel(h);
    let src = order_of(h.source());
    ensure!(order_of(&ker) * order_of(&im) == src, "|ker||im| != |src|");
    ensure!(order_of(&coker) * order_of(&im) == order_of(h.target()), "|coker||im| != |tgt|");
    ensure!(inc.then(h).unwrap().is_zero(), "kernel inclusion not killed");
    let brute = h
        .source()
        .elements()
        .unwrap()
        .iter()
        .filter(|v| h.target().is_zero_element(&h.apply(v)))
        .count() as u64;
    ensure!(brute == order_of(&ker), "brute kernel {brute} vs {}", order_of(&ker));
    Ok(())
}

// ------------------------------------------------------------ modules

pub fn character_or_trivial(g: &Group, k: &Fq, index: usize) -> GModule {
    let n = characters(g, k).len();
    character_module(g, k, index % n).unwrap()
}

/// `Ω² M ≃ M` for a module over a cyclic group, and `Ω M ≃ M` when the
/// Sylow subgroup has order 2.
pub fn check_omega_periodicity(n: usize, k: &Fq, chi: usize, shift: i32) -> Check {
    let g = cyclic(n);
    let m = character_or_trivial(&g, k, chi);
    let base = syzygy_power(&m, shift).unwrap();
    let two = syzygy_power(&base, 2).unwrap();
    ensure!(stable_iso(&two, &base).unwrap(), "Ω^2 not periodic on C{n} over F{}", k.order());
    let p = k.characteristic() as usize;
    if n % p == 0 && (n / p) % p != 0 && p == 2 {
        let one = syzygy_power(&base, 1).unwrap();
        ensure!(stable_iso(&one, &base).unwrap(), "Ω not periodic on C{n} over F2");
    }
    Ok(())
}

/// `M ≅ core ⊕ proj`, `core` projective-free, `core ≃ M` stably.
pub fn check_strip_roundtrip(g: &Group, k: &Fq, omega: i32, chi: usize, free: usize) -> Check {
    let mut m = syzygy_power(&character_or_trivial(g, k, chi), omega).unwrap();
    for _ in 0..free {
        m = direct_sum(&m, &regular_module(g, k)).unwrap();
    }
    let (core, proj) = strip_projectives(&m).unwrap();
    ensure!(core.dim() + proj.dim() == m.dim(), "dimensions do not add up");
    let back = direct_sum(&core, &proj).unwrap();
    ensure!(module_iso(&back, &m).unwrap().is_iso(), "core + proj not isomorphic to M");
    let (again, extra) = strip_projectives(&core).unwrap();
    ensure!(extra.dim() == 0 && again.dim() == core.dim(), "core still has a projective summand");
    ensure!(stable_iso(&core, &m).unwrap(), "core not stably isomorphic to M");
    Ok(())
}

// ----------------------------------------------------------- amalgams

pub struct AmalgamCase {
    pub name: &'static str,
    pub a: Group,
    pub b: Group,
    pub c: Group,
    pub into_a: GroupMono,
    pub into_b: GroupMono,
    pub k: Fq,
}

impl AmalgamCase {
    pub fn graph(&self) -> GraphOfGroups {
        GraphOfGroups::amalgam(&self.a, &self.b, &self.c, self.into_a.clone(), self.into_b.clone()).unwrap()
    }
}

/// Amalgams of built-in groups over fields where every T generator has a
/// constructed module.
pub fn amalgam_pool() -> Vec<AmalgamCase> {
    let case = |name, a: Group, b: Group, c: Group, wa: &[&str], wb: &[&str], k: Fq| AmalgamCase {
        name,
        into_a: mono(&c, &a, wa),
        into_b: mono(&c, &b, wb),
        a,
        b,
        c,
        k,
    };
    vec![
        case("C6*_C2 C4 / F4", cyclic(6), cyclic(4), cyclic(2), &["g^3"], &["g^2"], field(2, 2)),
        case("C6*_C2 C4 / F2", cyclic(6), cyclic(4), cyclic(2), &["g^3"], &["g^2"], field(2, 1)),
        case("C6*_C2 C4 / F3", cyclic(6), cyclic(4), cyclic(2), &["g^3"], &["g^2"], field(3, 1)),
        case("C4*_C2 C4 / F2", cyclic(4), cyclic(4), cyclic(2), &["g^2"], &["g^2"], field(2, 1)),
        case("C2*C2 / F4", cyclic(2), cyclic(2), cyclic(1), &[], &[], field(2, 2)),
        case("C6*_C3 C3 / F3", cyclic(6), cyclic(3), cyclic(3), &["g^2"], &["g"], field(3, 1)),
        case("Q8*_C4 C4 / F2", q8(), cyclic(4), cyclic(4), &["x"], &["g"], field(2, 1)),
        case("C4*_C2 Q8 / F2", cyclic(4), q8(), cyclic(2), &["g^2"], &["x^2"], field(2, 1)),
        case("C6*_C2 C2 / F4", cyclic(6), cyclic(2), cyclic(2), &["g^3"], &["g"], field(2, 2)),
        case("C3*C4 / F2", cyclic(3), cyclic(4), cyclic(1), &[], &[], field(2, 1)),
    ]
}

/// Distinct classes of a finite T group as `(normal form, exponents)`.
fn t_elements(t: &TGroupData) -> Vec<(Vec<BigInt>, Vec<i64>)> {
    let mut tuples = vec![Vec::new()];
    for g in &t.generators {
        assert!(g.order > 0 && g.is_verified(), "oracle needs finite verified generators");
        tuples = tuples
            .into_iter()
            .flat_map(|v: Vec<i64>| {
                (0..g.order as i64).map(move |a| {
                    let mut w = v.clone();
                    w.push(a);
                    w
                })
            })
            .collect();
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for e in tuples {
        let n = t.to_normal(&e);
        if seen.insert(n.clone()) {
            out.push((n, e));
        }
    }
    out
}

fn order_census(orders: impl Iterator<Item = u64>) -> Vec<u64> {
    let mut v: Vec<u64> = orders.collect();
    v.sort_unstable();
    v
}

/// The amalgam rule against a module-level pullback: pairs of classes of
/// `A` and `B` whose restrictions to `C` are stably isomorphic, counted
/// with element orders, compared with the computed `T(G)`.
pub fn check_amalgam_rule(case: &AmalgamCase) -> Check {
    let res = compute_t(&case.graph(), &case.k).map_err(|e| format!("{}: {e}", case.name))?;
    ensure!(res.sub.is_trivial(), "{}: cokernel at the aut level is {}", case.name, res.sub);
    let Some(answer) = res.determined() else {
        return Err(format!("{}: not determined", case.name));
    };
    let ta = t_group(&case.a, &case.k).unwrap();
    let tb = t_group(&case.b, &case.k).unwrap();
    let restricted = |t: &TGroupData, m: &GroupMono| -> Vec<(u64, GModule)> {
        t_elements(t)
            .into_iter()
            .map(|(n, e)| {
                let rep = t.representative(&e).unwrap();
                (t.structure.element_order(&n), restrict(&rep, m).unwrap())
            })
            .collect()
    };
    let ra = restricted(&ta, &case.into_a);
    let rb = restricted(&tb, &case.into_b);
    let mut pullback = Vec::new();
    for (oa, ma) in &ra {
        for (ob, mb) in &rb {
            if stable_iso(ma, mb).unwrap() {
                pullback.push(num_integer::lcm(*oa, *ob));
            }
        }
    }
    let expected = order_census(pullback.into_iter());
    let got = order_census(
        answer
            .elements()
            .ok_or("infinite answer")?
            .iter()
            .map(|v| answer.element_order(v)),
    );
    ensure!(
        expected == got,
        "{}: pullback orders {expected:?} but T = {answer} has {got:?}",
        case.name
    );
    Ok(())
}

/// Invariant factors as plain integers.
pub fn factors_of(a: &FgAbelian) -> Vec<u64> {
    a.factors().to_vec()
}

pub fn snf_of(orders: &[u64]) -> Vec<u64> {
    FgAbelian::from_orders(orders).group.factors().to_vec()
}

pub fn trivial(g: &Group, k: &Fq) -> GModule {
    trivial_module(g, k)
}
