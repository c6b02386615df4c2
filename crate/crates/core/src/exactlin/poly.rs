//! Univariate polynomials over `F_q`, just enough to split characteristic
//! polynomials into coprime parts.

use rand::Rng;

use super::field::{Fq, FqElem};

/// Coefficients constant → leading, no trailing zeros (zero is empty).
pub type Poly = Vec<FqElem>;

pub fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn degree(a: &Poly) -> Option<usize> {
    if a.is_empty() {
        None
    } else {
        Some(a.len() - 1)
    }
}

pub fn add(f: &Fq, a: &Poly, b: &Poly) -> Poly {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| f.add(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
        .collect();
    trim(out)
}

pub fn sub(f: &Fq, a: &Poly, b: &Poly) -> Poly {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| f.sub(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
        .collect();
    trim(out)
}

pub fn mul(f: &Fq, a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    trim(out)
}

/// Quotient and remainder; `b` must be nonzero.
pub fn divrem(f: &Fq, a: &Poly, b: &Poly) -> (Poly, Poly) {
    assert!(!b.is_empty(), "division by the zero polynomial");
    let db = b.len() - 1;
    let lead_inv = f.inv(b[db]);
    let mut r = a.clone();
    if r.len() <= db {
        return (Vec::new(), trim(r));
    }
    let mut q = vec![0; r.len() - db];
    while r.len() > db {
        let top = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        if top != 0 {
            let c = f.mul(top, lead_inv);
            q[shift] = c;
            for (i, &d) in b.iter().enumerate() {
                r[shift + i] = f.sub(r[shift + i], f.mul(c, d));
            }
        }
        r.pop();
    }
    (trim(q), trim(r))
}

pub fn rem(f: &Fq, a: &Poly, b: &Poly) -> Poly {
    divrem(f, a, b).1
}

pub fn monic(f: &Fq, a: &Poly) -> Poly {
    match a.last() {
        None => Vec::new(),
        Some(&l) => {
            let inv = f.inv(l);
            a.iter().map(|&c| f.mul(c, inv)).collect()
        }
    }
}

pub fn gcd(f: &Fq, a: &Poly, b: &Poly) -> Poly {
    let (mut a, mut b) = (trim(a.clone()), trim(b.clone()));
    while !b.is_empty() {
        let r = rem(f, &a, &b);
        a = b;
        b = r;
    }
    monic(f, &a)
}

pub fn powmod(f: &Fq, base: &Poly, mut k: u128, m: &Poly) -> Poly {
    let mut result: Poly = rem(f, &vec![1], m);
    let mut b = rem(f, base, m);
    while k > 0 {
        if k & 1 == 1 {
            result = rem(f, &mul(f, &result, &b), m);
        }
        k >>= 1;
        if k > 0 {
            b = rem(f, &mul(f, &b, &b), m);
        }
    }
    result
}

fn is_one(a: &Poly) -> bool {
    a.len() == 1 && a[0] == 1
}

/// Splits a squarefree monic `g` whose irreducible factors all have degree
/// `d` (there are at least two) into a proper factor, Cantor–Zassenhaus.
fn equal_degree_split<R: Rng>(f: &Fq, g: &Poly, d: usize, rng: &mut R) -> Poly {
    let q = f.order() as u128;
    let n = g.len() - 1;
    loop {
        let r: Poly = trim((0..n).map(|_| rng.gen_range(0..f.order())).collect());
        if r.is_empty() {
            continue;
        }
        let candidate = if f.characteristic() == 2 {
            // absolute trace map F_{q^d} → F_2 applied to r mod g
            let steps = (f.degree() as usize) * d;
            let mut t = r.clone();
            let mut acc = r.clone();
            for _ in 1..steps {
                t = rem(f, &mul(f, &t, &t), g);
                acc = add(f, &acc, &t);
            }
            acc
        } else {
            // r^((q^d - 1)/2) = prod_i (r^((q-1)/2))^(q^i)
            let s = powmod(f, &r, (q - 1) / 2, g);
            let mut t = s.clone();
            let mut acc = s;
            for _ in 1..d {
                t = powmod(f, &t, q, g);
                acc = rem(f, &mul(f, &acc, &t), g);
            }
            sub(f, &acc, &vec![1])
        };
        let h = gcd(f, g, &candidate);
        if !h.is_empty() && !is_one(&h) && h.len() < g.len() {
            return h;
        }
    }
}

/// Some irreducible monic factor of `a` (degree ≥ 1), and whether `a` has
/// another irreducible factor coprime to it.
pub fn irreducible_factor<R: Rng>(f: &Fq, a: &Poly, rng: &mut R) -> (Poly, bool) {
    let a = monic(f, a);
    assert!(a.len() >= 2, "need a nonconstant polynomial");
    let q = f.order() as u128;
    let x: Poly = vec![0, 1];
    let mut h = x.clone();
    let mut d = 0;
    let factor = loop {
        d += 1;
        h = powmod(f, &h, q, &a);
        let g = gcd(f, &a, &sub(f, &h, &x));
        if g.len() >= 2 {
            if g.len() - 1 > d {
                let mut g = g;
                while g.len() - 1 > d {
                    let part = equal_degree_split(f, &g, d, rng);
                    g = part;
                }
                break g;
            }
            break g;
        }
        assert!(d <= a.len(), "distinct-degree factorization did not terminate");
    };
    // strip every power of `factor`; anything left is coprime to it
    let mut rest = a;
    loop {
        let (qt, r) = divrem(f, &rest, &factor);
        if !r.is_empty() {
            break;
        }
        rest = qt;
    }
    let other = rest.len() >= 2;
    (factor, other)
}
