use std::fmt;
use std::sync::Arc;

use super::LinAlgError;

/// An element of a finite field, encoded as the base-`p` integer whose
/// digits are the polynomial coefficients (constant term least significant).
pub type FqElem = u32;

/// Largest supported field order.
pub const MAX_FIELD_ORDER: u64 = 1 << 16;

struct Tables {
    p: u32,
    e: u32,
    q: u32,
    /// Monic irreducible modulus, coefficients constant → leading (length e + 1).
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    primitive: u32,
}

/// The finite field `F_{p^e}`, realised as `F_p[x]/(modulus)`.
///
/// Cloning is cheap; all tables are shared.
#[derive(Clone)]
pub struct Fq(Arc<Tables>);

impl PartialEq for Fq {
    fn eq(&self, other: &Self) -> bool {
        self.0.p == other.0.p && self.0.e == other.0.e
    }
}

impl Eq for Fq {}

impl fmt::Debug for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.order())
    }
}

impl fmt::Display for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.e == 1 {
            write!(f, "F_{}", self.0.p)
        } else {
            write!(f, "F_{}^{}", self.0.p, self.0.e)
        }
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

// Dense polynomial helpers over F_p used only while building the tables.
fn poly_rem_mod_p(num: &[u32], den: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u32> = num.to_vec();
    let dd = den.len() - 1;
    let lead_inv = mod_inv(den[dd], p);
    while r.len() > dd {
        let top = *r.last().unwrap();
        if top != 0 {
            let c = (top as u64 * lead_inv as u64 % p as u64) as u32;
            let shift = r.len() - 1 - dd;
            for (i, &d) in den.iter().enumerate() {
                let sub = (c as u64 * d as u64 % p as u64) as u32;
                r[shift + i] = (r[shift + i] + p - sub) % p;
            }
        }
        r.pop();
    }
    r
}

fn mod_inv(a: u32, p: u32) -> u32 {
    let mut result = 1u64;
    let mut base = a as u64 % p as u64;
    let mut exp = p as u64 - 2;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * base % p as u64;
        }
        base = base * base % p as u64;
        exp >>= 1;
    }
    result as u32
}

fn is_irreducible_mod_p(f: &[u32], p: u32) -> bool {
    let deg = f.len() - 1;
    if deg <= 1 {
        return deg == 1;
    }
    // trial division by every monic polynomial of degree 1..=deg/2
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for code in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut c = code;
            for _ in 0..d {
                g.push((c % p as u64) as u32);
                c /= p as u64;
            }
            g.push(1);
            let r = poly_rem_mod_p(f, &g, p);
            if r.iter().all(|&x| x == 0) {
                return false;
            }
        }
    }
    true
}

/// Lexicographically least monic irreducible of degree `e`, comparing the
/// coefficient tuple (c_0, c_1, …, c_{e-1}) from the constant term upward.
fn canonical_modulus(p: u32, e: u32) -> Vec<u32> {
    if e == 1 {
        return vec![0, 1];
    }
    let count = (p as u64).pow(e);
    for code in 0..count {
        // c_0 is the most significant digit of `code` so that counting order
        // is lexicographic order on (c_0, …, c_{e-1}).
        let mut coeffs = vec![0u32; e as usize + 1];
        let mut c = code;
        for i in (0..e as usize).rev() {
            coeffs[i] = (c % p as u64) as u32;
            c /= p as u64;
        }
        coeffs[e as usize] = 1;
        if coeffs[0] == 0 {
            continue;
        }
        if is_irreducible_mod_p(&coeffs, p) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl Fq {
    /// Builds `F_{p^e}` with the canonical modulus.
    pub fn new(p: u64, e: u32) -> Result<Fq, LinAlgError> {
        if !is_prime(p) {
            return Err(LinAlgError::NotPrime(p));
        }
        if e == 0 {
            return Err(LinAlgError::FieldTooLarge { p, e });
        }
        let q = (p as u128).checked_pow(e).unwrap_or(u128::MAX);
        if q > MAX_FIELD_ORDER as u128 {
            return Err(LinAlgError::FieldTooLarge { p, e });
        }
        let p = p as u32;
        let q = q as u32;
        let modulus = canonical_modulus(p, e);

        let mut tables = Tables {
            p,
            e,
            q,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
            primitive: 0,
        };
        let slow = SlowArith { t: &tables };
        let mut primitive = 0;
        for cand in 1..q {
            if slow.mult_order(cand) == q - 1 {
                primitive = cand;
                break;
            }
        }
        let mut exp = vec![0u32; q as usize];
        let mut log = vec![0u32; q as usize];
        let mut cur = 1u32;
        for i in 0..(q - 1) {
            exp[i as usize] = cur;
            log[cur as usize] = i;
            cur = slow.mul(cur, primitive);
        }
        exp[(q - 1) as usize] = 1;
        tables.exp = exp;
        tables.log = log;
        tables.primitive = primitive;
        Ok(Fq(Arc::new(tables)))
    }

    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    pub fn degree(&self) -> u32 {
        self.0.e
    }

    pub fn order(&self) -> u32 {
        self.0.q
    }

    /// Coefficients of the defining polynomial, constant term first.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    /// The least (by encoding) generator of the multiplicative group.
    pub fn primitive_element(&self) -> FqElem {
        self.0.primitive
    }

    /// `primitive_element()^k`.
    pub fn primitive_power(&self, k: u64) -> FqElem {
        let n = (self.0.q - 1) as u64;
        self.0.exp[(k % n) as usize]
    }

    /// Discrete log base the primitive element; `None` for zero.
    pub fn log(&self, a: FqElem) -> Option<u32> {
        if a == 0 {
            None
        } else {
            Some(self.0.log[a as usize])
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = FqElem> {
        0..self.0.q
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> FqElem {
        n.rem_euclid(self.0.p as i64) as u32
    }

    #[inline]
    pub fn add(&self, a: FqElem, b: FqElem) -> FqElem {
        let t = &self.0;
        if t.e == 1 {
            let s = a + b;
            if s >= t.p {
                s - t.p
            } else {
                s
            }
        } else if t.p == 2 {
            a ^ b
        } else {
            let (mut a, mut b) = (a, b);
            let mut out = 0;
            let mut place = 1;
            while a > 0 || b > 0 {
                let d = (a % t.p + b % t.p) % t.p;
                out += d * place;
                place *= t.p;
                a /= t.p;
                b /= t.p;
            }
            out
        }
    }

    #[inline]
    pub fn neg(&self, a: FqElem) -> FqElem {
        let t = &self.0;
        if t.p == 2 || a == 0 {
            a
        } else if t.e == 1 {
            t.p - a
        } else {
            let mut a = a;
            let mut out = 0;
            let mut place = 1;
            while a > 0 {
                let d = (t.p - a % t.p) % t.p;
                out += d * place;
                place *= t.p;
                a /= t.p;
            }
            out
        }
    }

    #[inline]
    pub fn sub(&self, a: FqElem, b: FqElem) -> FqElem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FqElem, b: FqElem) -> FqElem {
        if a == 0 || b == 0 {
            return 0;
        }
        let t = &self.0;
        if t.e == 1 {
            return ((a as u64 * b as u64) % t.p as u64) as u32;
        }
        let s = t.log[a as usize] + t.log[b as usize];
        let n = t.q - 1;
        t.exp[if s >= n { s - n } else { s } as usize]
    }

    /// Multiplicative inverse. Panics on zero.
    #[inline]
    pub fn inv(&self, a: FqElem) -> FqElem {
        assert!(a != 0, "inverse of zero in {}", self);
        let t = &self.0;
        let n = t.q - 1;
        let l = t.log[a as usize];
        t.exp[((n - l) % n) as usize]
    }

    pub fn div(&self, a: FqElem, b: FqElem) -> FqElem {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: FqElem, k: u64) -> FqElem {
        if k == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let n = (self.0.q - 1) as u64;
        let l = self.0.log[a as usize] as u64;
        self.0.exp[((l * (k % n)) % n) as usize]
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, a: FqElem) -> u32 {
        let n = self.0.q - 1;
        let l = self.0.log[a as usize];
        n / num_integer::gcd(n, l)
    }
}

struct SlowArith<'a> {
    t: &'a Tables,
}

impl SlowArith<'_> {
    fn digits(&self, a: u32) -> Vec<u32> {
        let mut d = Vec::with_capacity(self.t.e as usize);
        let mut a = a;
        for _ in 0..self.t.e {
            d.push(a % self.t.p);
            a /= self.t.p;
        }
        d
    }

    fn undigits(&self, d: &[u32]) -> u32 {
        d.iter().rev().fold(0, |acc, &c| acc * self.t.p + c)
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        let p = self.t.p;
        let da = self.digits(a);
        let db = self.digits(b);
        let mut prod = vec![0u32; da.len() + db.len()];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % p as u64) as u32;
            }
        }
        let mut r = poly_rem_mod_p(&prod, &self.t.modulus, p);
        r.resize(self.t.e as usize, 0);
        self.undigits(&r)
    }

    fn mult_order(&self, a: u32) -> u32 {
        let mut cur = a;
        let mut k = 1;
        while cur != 1 {
            cur = self.mul(cur, a);
            k += 1;
            if k > self.t.q {
                return 0;
            }
        }
        k
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_moduli() {
        let f2 = Fq::new(2, 1).unwrap();
        assert_eq!(f2.modulus(), &[0, 1]);
        assert_eq!(f2.order(), 2);
        let f3 = Fq::new(3, 1).unwrap();
        assert_eq!(f3.order(), 3);
        assert_eq!(f3.mul(2, 2), 1);
    }

    #[test]
    fn f4_modulus_is_the_unique_irreducible_quadratic() {
        // exhaustive: monic quadratics over F_2 are x^2, x^2+1, x^2+x, x^2+x+1
        let irreducible: Vec<[u32; 3]> = [[0, 0, 1], [1, 0, 1], [0, 1, 1], [1, 1, 1]]
            .into_iter()
            .filter(|f| (0..2u32).all(|x| (f[0] + f[1] * x + f[2] * x * x) % 2 != 0))
            .collect();
        assert_eq!(irreducible, vec![[1, 1, 1]]);
        let f4 = Fq::new(2, 2).unwrap();
        assert_eq!(f4.modulus(), &[1, 1, 1]);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(matches!(Fq::new(4, 1), Err(LinAlgError::NotPrime(4))));
        assert!(matches!(Fq::new(2, 17), Err(LinAlgError::FieldTooLarge { .. })));
        assert!(Fq::new(2, 16).is_ok());
    }

    #[test]
    fn field_axioms_small_fields() {
        for (p, e) in [(2, 1), (2, 2), (3, 1), (2, 3), (3, 2), (5, 1)] {
            let f = Fq::new(p, e).unwrap();
            let q = f.order();
            for a in 0..q {
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1);
                }
                for b in 0..q {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in 0..q {
                        assert_eq!(
                            f.mul(a, f.add(b, c)),
                            f.add(f.mul(a, b), f.mul(a, c))
                        );
                    }
                }
            }
            assert_eq!(f.mult_order(f.primitive_element()), q - 1);
        }
    }
}
