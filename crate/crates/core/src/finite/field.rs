//! Small Galois fields F_q, q = p^k ≤ 9, with table arithmetic, and
//! polynomials over them.

use crate::error::{Error, Result};

/// Elements are 0..q, read as base-p digit vectors of a polynomial in the
/// generator of the extension. 0 and 1 are the field's zero and one.
#[derive(Clone, Debug)]
pub struct GaloisField {
    pub p: u32,
    pub k: u32,
    pub q: u32,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
    /// Generator of the multiplicative group.
    pub generator: u8,
}

impl GaloisField {
    pub fn new(q: u32) -> Result<Self> {
        // modulus as low-to-high coefficients of the monic irreducible
        let (p, k, modulus): (u32, u32, &[u32]) = match q {
            2 | 3 | 5 | 7 => (q, 1, &[0, 1]),
            4 => (2, 2, &[1, 1, 1]),
            8 => (2, 3, &[1, 1, 0, 1]),
            9 => (3, 2, &[1, 0, 1]),
            _ => return Err(Error::InvalidParams(format!("unsupported field size {q}"))),
        };
        let digits = |x: u32| (0..k).map(|i| x / p.pow(i) % p).collect::<Vec<_>>();
        let undigits = |d: &[u32]| d.iter().enumerate().map(|(i, &c)| c * p.pow(i as u32)).sum::<u32>();
        let qs = q as usize;
        let mut add = vec![0u8; qs * qs];
        let mut mul = vec![0u8; qs * qs];
        for a in 0..q {
            for b in 0..q {
                let (da, db) = (digits(a), digits(b));
                let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = undigits(&s) as u8;
                let mut prod = vec![0u32; 2 * k as usize];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                if k > 1 {
                    for deg in (k as usize..prod.len()).rev() {
                        let c = prod[deg];
                        if c != 0 {
                            for (t, &m) in modulus.iter().enumerate() {
                                let idx = deg - k as usize + t;
                                prod[idx] = (prod[idx] + (p - c) * m) % p;
                            }
                        }
                    }
                }
                mul[(a * q + b) as usize] = undigits(&prod[..k as usize]) as u8;
            }
        }
        let neg: Vec<u8> = (0..q).map(|a| (0..q).find(|&b| add[(a * q + b) as usize] == 0).unwrap() as u8).collect();
        let mut inv = vec![0u8; qs];
        for a in 1..q {
            inv[a as usize] = (1..q).find(|&b| mul[(a * q + b) as usize] == 1).unwrap() as u8;
        }
        let mut f = GaloisField { p, k, q, add, mul, neg, inv, generator: 0 };
        f.generator = (1..q as u8)
            .find(|&g| f.order(g) == q - 1)
            .ok_or_else(|| Error::Data(format!("F_{q} has no primitive element")))?;
        Ok(f)
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg(b))
    }

    /// Panics on zero.
    pub fn inv(&self, a: u8) -> u8 {
        assert!(a != 0, "zero has no inverse");
        self.inv[a as usize]
    }

    pub fn order(&self, a: u8) -> u32 {
        let mut x = a;
        let mut k = 1;
        while x != 1 {
            x = self.mul(x, a);
            k += 1;
            if k > self.q {
                return 0;
            }
        }
        k
    }

    pub fn elements(&self) -> impl Iterator<Item = u8> {
        0..self.q as u8
    }

    /// Integer k as a field element.
    pub fn from_int(&self, k: i64) -> u8 {
        k.rem_euclid(self.p as i64) as u8
    }
}

/// Polynomials over a [`GaloisField`], coefficients low to high, no trailing zeros.
pub type Poly = Vec<u8>;

pub fn poly_trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn poly_mul(f: &GaloisField, a: &[u8], b: &[u8]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u8; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    poly_trim(out)
}

pub fn poly_rem(f: &GaloisField, a: &[u8], b: &[u8]) -> Poly {
    let b = poly_trim(b.to_vec());
    assert!(!b.is_empty(), "division by the zero polynomial");
    let mut r = poly_trim(a.to_vec());
    let lead_inv = f.inv(*b.last().unwrap());
    while r.len() >= b.len() {
        let c = f.mul(*r.last().unwrap(), lead_inv);
        let shift = r.len() - b.len();
        for (i, &bc) in b.iter().enumerate() {
            r[shift + i] = f.sub(r[shift + i], f.mul(c, bc));
        }
        r = poly_trim(r);
    }
    r
}

pub fn poly_gcd(f: &GaloisField, a: &[u8], b: &[u8]) -> Poly {
    let (mut a, mut b) = (poly_trim(a.to_vec()), poly_trim(b.to_vec()));
    while !b.is_empty() {
        let r = poly_rem(f, &a, &b);
        a = b;
        b = r;
    }
    a
}

pub fn poly_derivative(f: &GaloisField, a: &[u8]) -> Poly {
    poly_trim(a.iter().enumerate().skip(1).map(|(i, &c)| f.mul(f.from_int(i as i64), c)).collect())
}

pub fn poly_eval(f: &GaloisField, a: &[u8], x: u8) -> u8 {
    a.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
}

/// No repeated factor over the algebraic closure.
pub fn is_squarefree(f: &GaloisField, a: &[u8]) -> bool {
    let d = poly_derivative(f, a);
    if d.is_empty() {
        return a.len() <= 1;
    }
    poly_gcd(f, a, &d).len() == 1
}

/// First monic irreducible of degree d ≤ 3 in coefficient order.
pub fn irreducible(f: &GaloisField, d: usize) -> Result<Poly> {
    if d == 0 || d > 3 {
        return Err(Error::InvalidParams(format!("irreducible of degree {d} not supported")));
    }
    let q = f.q as usize;
    for code in 0..q.pow(d as u32) {
        let mut poly: Poly = (0..d).map(|i| (code / q.pow(i as u32) % q) as u8).collect();
        poly.push(1);
        if d == 1 || f.elements().all(|x| poly_eval(f, &poly, x) != 0) {
            return Ok(poly);
        }
    }
    Err(Error::Data("no irreducible polynomial found".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms() {
        for q in [2, 3, 4, 5, 7, 8, 9] {
            let f = GaloisField::new(q).unwrap();
            assert_eq!(f.order(f.generator), q - 1);
            for a in f.elements() {
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1);
                }
                for b in f.elements() {
                    for c in f.elements() {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    }
                }
            }
        }
        assert!(GaloisField::new(6).is_err());
    }

    #[test]
    fn polynomials() {
        let f = GaloisField::new(3).unwrap();
        // x^2 + 1 is irreducible mod 3
        assert_eq!(irreducible(&f, 2).unwrap(), vec![1, 0, 1]);
        // (x-1)^2 = x^2 + x + 1 mod 3
        assert!(!is_squarefree(&f, &[1, 1, 1]));
        assert!(is_squarefree(&f, &[2, 0, 1]));
        let f2 = GaloisField::new(2).unwrap();
        assert_eq!(irreducible(&f2, 3).unwrap(), vec![1, 1, 0, 1]);
    }
}
