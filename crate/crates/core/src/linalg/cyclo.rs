use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::RationalMatrix;
use super::rational::{fmt_rational, parse_rational, ri, Rational};
use crate::error::{Error, Result};

/// Largest supported conductor.
pub const MAX_CONDUCTOR: u32 = 12;

struct Field {
    phi: usize,
    /// `powers[k]` = coordinates of ζ^k in the power basis, `0 <= k < n`.
    powers: Vec<Vec<i64>>,
}

fn cyclotomic_polys() -> Vec<Vec<i64>> {
    // polys[n] = Φ_n, coefficients low to high
    let max = MAX_CONDUCTOR as usize;
    let mut polys: Vec<Vec<i64>> = vec![vec![]; max + 1];
    for n in 1..=max {
        let mut p = vec![0i64; n + 1];
        p[0] = -1;
        p[n] = 1;
        for d in 1..n {
            if n % d == 0 {
                p = div_monic(&p, &polys[d]);
            }
        }
        polys[n] = p;
    }
    polys
}

fn div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut r = num.to_vec();
    let dd = den.len() - 1;
    let mut q = vec![0i64; num.len() - dd];
    for i in (0..q.len()).rev() {
        let c = r[i + dd];
        q[i] = c;
        for (j, &dj) in den.iter().enumerate() {
            r[i + j] -= c * dj;
        }
    }
    debug_assert!(r.iter().all(|&x| x == 0));
    q
}

fn fields() -> &'static [Field] {
    static F: OnceLock<Vec<Field>> = OnceLock::new();
    F.get_or_init(|| {
        let polys = cyclotomic_polys();
        let mut out = vec![Field { phi: 0, powers: vec![] }];
        for (n, poly) in polys.iter().enumerate().skip(1) {
            let phi = poly.len() - 1;
            let mut powers = Vec::with_capacity(n);
            let mut cur = vec![0i64; phi];
            cur[0] = 1;
            for _ in 0..n {
                powers.push(cur.clone());
                // multiply by x, then reduce x^phi
                let top = cur[phi - 1];
                for i in (1..phi).rev() {
                    cur[i] = cur[i - 1];
                }
                cur[0] = 0;
                for i in 0..phi {
                    cur[i] -= top * poly[i];
                }
            }
            out.push(Field { phi, powers });
        }
        out
    })
}

fn field(n: u32) -> &'static Field {
    assert!(
        (1..=MAX_CONDUCTOR).contains(&n),
        "cyclotomic conductor {n} exceeds supported maximum {MAX_CONDUCTOR}"
    );
    &fields()[n as usize]
}

/// Element of Q(ζ_N) in the power basis modulo Φ_N.
#[derive(Clone, Debug)]
pub struct CycloNumber {
    n: u32,
    coeffs: Vec<Rational>,
}

impl CycloNumber {
    pub fn from_rational(r: Rational) -> Self {
        CycloNumber { n: 1, coeffs: vec![r] }
    }

    pub fn from_int(k: i64) -> Self {
        Self::from_rational(ri(k))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// ζ_n^k.
    pub fn zeta_pow(n: u32, k: i64) -> Self {
        let f = field(n);
        let e = k.rem_euclid(n as i64) as usize;
        let coeffs = f.powers[e].iter().map(|&c| ri(c)).collect();
        CycloNumber { n, coeffs }.normalized()
    }

    pub fn zeta(n: u32) -> Self {
        Self::zeta_pow(n, 1)
    }

    /// Builds from power-basis coordinates; `coeffs.len()` must be φ(n).
    pub fn from_coeffs(n: u32, coeffs: Vec<Rational>) -> Result<Self> {
        if n == 0 || n > MAX_CONDUCTOR {
            return Err(Error::InvalidParams(format!("conductor {n} out of range")));
        }
        let phi = field(n).phi;
        if coeffs.len() != phi {
            return Err(Error::DimensionMismatch { expected: phi, found: coeffs.len() });
        }
        Ok(CycloNumber { n, coeffs }.normalized())
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    fn normalized(mut self) -> Self {
        if self.n > 1 && self.coeffs[1..].iter().all(Zero::is_zero) {
            self.n = 1;
            self.coeffs.truncate(1);
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.n == 1
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.coeffs[0].clone())
    }

    /// Coordinates in Q(ζ_m); requires `n | m`.
    pub fn embed(&self, m: u32) -> Vec<Rational> {
        assert!(m.is_multiple_of(self.n), "cannot embed conductor {} into {m}", self.n);
        let f = field(m);
        let step = (m / self.n) as usize;
        let mut out = vec![Rational::zero(); f.phi];
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, &p) in out.iter_mut().zip(&f.powers[(k * step) % m as usize]) {
                if p != 0 {
                    *o += c * ri(p);
                }
            }
        }
        out
    }

    fn common(&self, other: &Self) -> u32 {
        let m = self.n.lcm(&other.n);
        assert!(m <= MAX_CONDUCTOR, "cyclotomic conductor {m} exceeds supported maximum");
        m
    }

    /// Complex conjugate: ζ ↦ ζ^{-1}.
    pub fn conj(&self) -> Self {
        if self.n == 1 {
            return self.clone();
        }
        let f = field(self.n);
        let n = self.n as usize;
        let mut out = vec![Rational::zero(); f.phi];
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, &p) in out.iter_mut().zip(&f.powers[(n - k) % n]) {
                if p != 0 {
                    *o += c * ri(p);
                }
            }
        }
        CycloNumber { n: self.n, coeffs: out }.normalized()
    }

    pub fn scale(&self, r: &Rational) -> Self {
        CycloNumber { n: self.n, coeffs: self.coeffs.iter().map(|c| c * r).collect() }.normalized()
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.n == 1 {
            return Some(Self::from_rational(self.coeffs[0].recip()));
        }
        // solve (multiplication by self) x = 1 over Q
        let phi = self.coeffs.len();
        let mut cols = Vec::with_capacity(phi);
        for j in 0..phi {
            let b = CycloNumber::zeta_pow(self.n, j as i64);
            cols.push((self * &b).embed(self.n));
        }
        let m = RationalMatrix::from_fn(phi, phi, |i, j| cols[j][i].clone());
        let mut rhs = vec![Rational::zero(); phi];
        rhs[0] = Rational::one();
        let x = m.solve(&rhs)?;
        Some(CycloNumber { n: self.n, coeffs: x }.normalized())
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn to_json(&self) -> serde_json::Value {
        if self.n == 1 {
            return serde_json::Value::String(fmt_rational(&self.coeffs[0]));
        }
        serde_json::to_value(CycloRepr {
            conductor: self.n,
            coeffs: self.coeffs.iter().map(fmt_rational).collect(),
        })
        .expect("serializable")
    }

    /// Accepts a `"p/q"` string or `{"conductor": N, "coeffs": [...]}`.
    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        match v {
            serde_json::Value::String(s) => Ok(Self::from_rational(parse_rational(s)?)),
            serde_json::Value::Number(n) => {
                let k = n.as_i64().ok_or_else(|| Error::Parse(format!("not an integer: {n}")))?;
                Ok(Self::from_int(k))
            }
            _ => {
                let r: CycloRepr =
                    serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
                let coeffs = r.coeffs.iter().map(|s| parse_rational(s)).collect::<Result<_>>()?;
                Self::from_coeffs(r.conductor, coeffs)
            }
        }
    }
}

#[derive(Serialize, Deserialize)]
struct CycloRepr {
    conductor: u32,
    coeffs: Vec<String>,
}

impl Serialize for CycloNumber {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycloNumber {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        CycloNumber::from_json(&v).map_err(serde::de::Error::custom)
    }
}

impl PartialEq for CycloNumber {
    fn eq(&self, other: &Self) -> bool {
        if self.n == other.n {
            return self.coeffs == other.coeffs;
        }
        let m = self.common(other);
        self.embed(m) == other.embed(m)
    }
}

impl Eq for CycloNumber {}

impl From<Rational> for CycloNumber {
    fn from(r: Rational) -> Self {
        Self::from_rational(r)
    }
}

impl From<i64> for CycloNumber {
    fn from(k: i64) -> Self {
        Self::from_int(k)
    }
}

impl<'a> Add<&'a CycloNumber> for &'a CycloNumber {
    type Output = CycloNumber;
    fn add(self, o: &CycloNumber) -> CycloNumber {
        if self.n == o.n {
            let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect();
            return CycloNumber { n: self.n, coeffs }.normalized();
        }
        let m = self.common(o);
        let coeffs = self.embed(m).into_iter().zip(o.embed(m)).map(|(a, b)| a + b).collect();
        CycloNumber { n: m, coeffs }.normalized()
    }
}

impl<'a> Sub<&'a CycloNumber> for &'a CycloNumber {
    type Output = CycloNumber;
    fn sub(self, o: &CycloNumber) -> CycloNumber {
        self + &(-o)
    }
}

impl Neg for &CycloNumber {
    type Output = CycloNumber;
    fn neg(self) -> CycloNumber {
        CycloNumber { n: self.n, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for CycloNumber {
    type Output = CycloNumber;
    fn neg(self) -> CycloNumber {
        -&self
    }
}

impl<'a> Mul<&'a CycloNumber> for &'a CycloNumber {
    type Output = CycloNumber;
    fn mul(self, o: &CycloNumber) -> CycloNumber {
        if self.n == 1 && o.n == 1 {
            return CycloNumber::from_rational(&self.coeffs[0] * &o.coeffs[0]);
        }
        if self.n == 1 {
            return o.scale(&self.coeffs[0]);
        }
        if o.n == 1 {
            return self.scale(&o.coeffs[0]);
        }
        let m = self.common(o);
        let (a, b) = (self.embed(m), o.embed(m));
        let f = field(m);
        let mut out = vec![Rational::zero(); f.phi];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let xy = x * y;
                for (o, &p) in out.iter_mut().zip(&f.powers[(i + j) % m as usize]) {
                    if p != 0 {
                        *o += &xy * ri(p);
                    }
                }
            }
        }
        CycloNumber { n: m, coeffs: out }.normalized()
    }
}

macro_rules! owned_ops {
    ($tr:ident, $f:ident) => {
        impl $tr<CycloNumber> for CycloNumber {
            type Output = CycloNumber;
            fn $f(self, o: CycloNumber) -> CycloNumber {
                (&self).$f(&o)
            }
        }
        impl $tr<&CycloNumber> for CycloNumber {
            type Output = CycloNumber;
            fn $f(self, o: &CycloNumber) -> CycloNumber {
                (&self).$f(o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl AddAssign<&CycloNumber> for CycloNumber {
    fn add_assign(&mut self, o: &CycloNumber) {
        if self.n == o.n {
            for (a, b) in self.coeffs.iter_mut().zip(&o.coeffs) {
                *a += b;
            }
            let v = std::mem::take(&mut self.coeffs);
            *self = CycloNumber { n: self.n, coeffs: v }.normalized();
        } else {
            *self = &*self + o;
        }
    }
}

impl std::iter::Sum for CycloNumber {
    fn sum<I: Iterator<Item = CycloNumber>>(it: I) -> Self {
        let mut acc = CycloNumber::zero();
        for x in it {
            acc += &x;
        }
        acc
    }
}

impl fmt::Display for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n == 1 {
            return write!(f, "{}", self.coeffs[0]);
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*z{}", self.n)?,
                _ => write!(f, "({c})*z{}^{k}", self.n)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    #[test]
    fn cyclotomic_polynomials() {
        let p = cyclotomic_polys();
        assert_eq!(p[1], vec![-1, 1]);
        assert_eq!(p[4], vec![1, 0, 1]);
        assert_eq!(p[6], vec![1, -1, 1]);
        assert_eq!(p[12], vec![1, 0, -1, 0, 1]);
        assert_eq!(p[9], vec![1, 0, 0, 1, 0, 0, 1]);
    }

    #[test]
    fn roots_of_unity() {
        for n in [3u32, 4, 6, 12] {
            let z = CycloNumber::zeta(n);
            assert_eq!(z.pow(n), CycloNumber::one());
            let s: CycloNumber = (0..n).map(|k| CycloNumber::zeta_pow(n, k as i64)).sum();
            assert!(s.is_zero(), "n={n}");
        }
    }

    #[test]
    fn mixed_conductors() {
        let i = CycloNumber::zeta(4);
        let w = CycloNumber::zeta(3);
        let p = &i * &w;
        assert_eq!(p.conductor(), 12);
        assert_eq!(p.pow(12), CycloNumber::one());
        assert_eq!(&i * &i, CycloNumber::from_int(-1));
        // ζ12^3 = i, ζ12^4 = ω
        assert_eq!(CycloNumber::zeta_pow(12, 3), i);
        assert_eq!(CycloNumber::zeta_pow(12, 4), w);
    }

    #[test]
    fn conjugation_and_inverse() {
        let w = CycloNumber::zeta(3);
        assert_eq!(&w * &w.conj(), CycloNumber::one());
        let x = &CycloNumber::from_rational(rat(1, 2)) + &w;
        let y = x.inv().unwrap();
        assert_eq!(&x * &y, CycloNumber::one());
        assert!(CycloNumber::zero().inv().is_none());
    }

    #[test]
    fn json_round_trip() {
        let x = &CycloNumber::from_rational(rat(-1, 3)) + &CycloNumber::zeta(4);
        let v = x.to_json();
        assert_eq!(CycloNumber::from_json(&v).unwrap(), x);
        let r = CycloNumber::from_rational(rat(2, 5));
        assert_eq!(r.to_json(), serde_json::json!("2/5"));
    }

    #[test]
    fn rational_round_trip() {
        let w = CycloNumber::zeta(3);
        let s = &w + &w.conj();
        assert_eq!(s.to_rational(), Some(ri(-1)));
    }
}
