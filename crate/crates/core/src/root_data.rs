//! Classified root data (Bourbaki numbering), highest-root marks, Coxeter
//! numbers, bad primes and the cocharacter image lattices per isogeny.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

/// A Cartan type with an optional diagram-automorphism order for twisted forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RootSystemType {
    pub family: Family,
    pub rank: usize,
    pub twist: u8,
}

impl RootSystemType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        Self::twisted(family, rank, 1)
    }

    pub fn twisted(family: Family, rank: usize, twist: u8) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if !ok {
            return Err(Error::InvalidRank(format!("{family:?}{rank}")));
        }
        let twist_ok = match twist {
            1 => true,
            2 => matches!((family, rank), (Family::A, r) if r >= 2)
                || family == Family::D
                || (family == Family::E && rank == 6),
            3 => family == Family::D && rank == 4,
            _ => false,
        };
        if !twist_ok {
            return Err(Error::InvalidRank(format!("twist of order {twist} not admitted by {family:?}{rank}")));
        }
        Ok(RootSystemType { family, rank, twist })
    }

    pub fn untwisted(&self) -> Self {
        RootSystemType { twist: 1, ..*self }
    }
}

impl fmt::Display for RootSystemType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twist > 1 {
            write!(f, "{}", self.twist)?;
        }
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

impl FromStr for RootSystemType {
    type Err = Error;

    /// Parses labels such as `B5`, `E6`, `2A3`, `3D4`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("bad root system type {s:?}"));
        let (twist, rest) = match s.chars().next() {
            Some(c @ ('2' | '3')) => (c.to_digit(10).unwrap() as u8, &s[1..]),
            _ => (1, s),
        };
        let mut chars = rest.chars();
        let family = match chars.next().ok_or_else(bad)?.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return Err(bad()),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| bad())?;
        RootSystemType::twisted(family, rank, twist)
    }
}

/// Cartan matrix with row i = (<α_j, α_i^∨>)_j.
pub fn cartan_matrix(t: RootSystemType) -> Vec<Vec<i64>> {
    let n = t.rank;
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize| {
        a[i][j] = -1;
        a[j][i] = -1;
    };
    match t.family {
        Family::A | Family::B | Family::C => {
            for i in 0..n - 1 {
                link(i, i + 1);
            }
        }
        Family::D => {
            for i in 0..n - 2 {
                link(i, i + 1);
            }
            link(n - 3, n - 1);
        }
        Family::E => {
            link(0, 2);
            link(1, 3);
            for i in 2..n - 1 {
                link(i, i + 1);
            }
        }
        Family::F => {
            link(0, 1);
            link(1, 2);
            link(2, 3);
        }
        Family::G => link(0, 1),
    }
    match t.family {
        Family::B => a[n - 1][n - 2] = -2,
        Family::C => a[n - 2][n - 1] = -2,
        Family::F => a[2][1] = -2,
        Family::G => a[0][1] = -3,
        _ => {}
    }
    a
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootDatum {
    #[serde(rename = "type")]
    pub ty: RootSystemType,
    pub cartan: Vec<Vec<i64>>,
    /// Coefficient vectors over the simple roots, by height then lexicographic.
    pub positive_roots: Vec<Vec<i64>>,
    /// Coefficients of the highest root.
    pub marks: Vec<i64>,
}

impl RootDatum {
    pub fn rank(&self) -> usize {
        self.ty.rank
    }

    /// <β, α_i^∨> for β given by simple-root coefficients.
    pub fn pairing(&self, beta: &[i64], i: usize) -> i64 {
        self.cartan[i].iter().zip(beta).map(|(a, b)| a * b).sum()
    }

    /// Positive roots followed by their negatives.
    pub fn all_roots(&self) -> Vec<Vec<i64>> {
        let mut v = self.positive_roots.clone();
        v.extend(self.positive_roots.iter().map(|r| r.iter().map(|x| -x).collect::<Vec<_>>()));
        v
    }
}

pub fn build_root_datum(t: RootSystemType) -> Result<RootDatum> {
    let t = RootSystemType::new(t.family, t.rank)?;
    let cartan = cartan_matrix(t);
    let n = t.rank;
    let mut known: HashSet<Vec<i64>> = HashSet::new();
    let mut layers: Vec<Vec<Vec<i64>>> = vec![(0..n)
        .map(|i| {
            let mut e = vec![0; n];
            e[i] = 1;
            e
        })
        .collect()];
    known.extend(layers[0].iter().cloned());
    loop {
        let mut next: BTreeSet<Vec<i64>> = BTreeSet::new();
        for beta in layers.last().unwrap() {
            for i in 0..n {
                // p = largest k with beta - k α_i a root
                let mut p = 0;
                let mut probe = beta.clone();
                loop {
                    probe[i] -= 1;
                    if known.contains(&probe) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let pair: i64 = cartan[i].iter().zip(beta).map(|(a, b)| a * b).sum();
                if p - pair > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    next.insert(up);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        let layer: Vec<Vec<i64>> = next.into_iter().collect();
        known.extend(layer.iter().cloned());
        layers.push(layer);
    }
    let marks = layers.last().unwrap()[0].clone();
    let positive_roots = layers.into_iter().flatten().collect();
    Ok(RootDatum { ty: t, cartan, positive_roots, marks })
}

/// h = 1 + Σ c_i.
pub fn coxeter_number(d: &RootDatum) -> i64 {
    1 + d.marks.iter().sum::<i64>()
}

/// Primes excluded by the good-prime condition.
pub fn bad_primes(t: RootSystemType) -> Vec<u64> {
    match t.family {
        Family::A => vec![],
        Family::B | Family::C | Family::D => vec![2],
        Family::E if t.rank == 8 => vec![2, 3, 5],
        Family::E | Family::F | Family::G => vec![2, 3],
    }
}

/// Bad primes of the non-reduced system BC_n.
pub fn bad_primes_bc() -> Vec<u64> {
    vec![2]
}

pub fn is_good_prime(t: RootSystemType, p: u64) -> bool {
    !bad_primes(t).contains(&p)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Isogeny {
    Adjoint,
    SimplyConnected,
    /// A_n with fundamental-group quotient of order r, 1 < r < n+1.
    Intermediate(u32),
    /// D_n: SO_{2n}.
    SpecialOrthogonal,
    /// D_n, n even: half-spin group.
    HalfSpin,
}

impl fmt::Display for Isogeny {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Isogeny::Adjoint => write!(f, "adjoint"),
            Isogeny::SimplyConnected => write!(f, "sc"),
            Isogeny::Intermediate(r) => write!(f, "r{r}"),
            Isogeny::SpecialOrthogonal => write!(f, "so"),
            Isogeny::HalfSpin => write!(f, "half_spin"),
        }
    }
}

impl FromStr for Isogeny {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        Ok(match s.as_str() {
            "adjoint" | "ad" => Isogeny::Adjoint,
            "sc" | "simply_connected" | "simply-connected" => Isogeny::SimplyConnected,
            "so" => Isogeny::SpecialOrthogonal,
            "half_spin" | "half-spin" | "hs" => Isogeny::HalfSpin,
            _ => {
                let digits = s
                    .strip_prefix("intermediate")
                    .map(|r| r.trim_matches(|c| c == '(' || c == ')' || c == ':'))
                    .or_else(|| s.strip_prefix('r'))
                    .ok_or_else(|| Error::Parse(format!("bad isogeny label {s:?}")))?;
                Isogeny::Intermediate(digits.parse().map_err(|_| Error::Parse(format!("bad isogeny label {s:?}")))?)
            }
        })
    }
}

/// Linear form ≡ 0 mod `modulus`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Congruence {
    pub form: Vec<i64>,
    pub modulus: i64,
}

impl Congruence {
    pub fn holds(&self, a: &[i64]) -> bool {
        self.form.iter().zip(a).map(|(c, x)| c * x).sum::<i64>().rem_euclid(self.modulus) == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsogenyLattice {
    #[serde(rename = "type")]
    pub ty: RootSystemType,
    pub label: Isogeny,
    pub congruences: Vec<Congruence>,
}

impl IsogenyLattice {
    pub fn contains(&self, a: &[i64]) -> bool {
        self.congruences.iter().all(|c| c.holds(a))
    }

    /// Index of the lattice in Z^n: the size of the image of Z^n in Π Z/m.
    pub fn index(&self) -> usize {
        let n = self.ty.rank;
        let gens: Vec<Vec<i64>> = (0..n)
            .map(|i| self.congruences.iter().map(|c| c.form[i].rem_euclid(c.modulus)).collect())
            .collect();
        let zero = vec![0i64; self.congruences.len()];
        let mut seen: HashSet<Vec<i64>> = HashSet::from([zero.clone()]);
        let mut stack = vec![zero];
        while let Some(v) = stack.pop() {
            for g in &gens {
                let w: Vec<i64> = v
                    .iter()
                    .zip(g)
                    .zip(&self.congruences)
                    .map(|((x, y), c)| (x + y).rem_euclid(c.modulus))
                    .collect();
                if seen.insert(w.clone()) {
                    stack.push(w);
                }
            }
        }
        seen.len()
    }
}

/// Isogeny labels available for a type, adjoint first, simply connected last.
pub fn isogeny_labels(t: RootSystemType) -> Vec<Isogeny> {
    let n = t.rank;
    match t.family {
        Family::A => {
            let mut v = vec![Isogeny::Adjoint];
            v.extend((2..=n as u32).filter(|r| (n as u32 + 1).is_multiple_of(*r)).map(Isogeny::Intermediate));
            v.push(Isogeny::SimplyConnected);
            v
        }
        Family::B | Family::C => vec![Isogeny::Adjoint, Isogeny::SimplyConnected],
        Family::D if n % 2 == 1 => vec![Isogeny::Adjoint, Isogeny::SpecialOrthogonal, Isogeny::SimplyConnected],
        Family::D => vec![Isogeny::Adjoint, Isogeny::SpecialOrthogonal, Isogeny::HalfSpin, Isogeny::SimplyConnected],
        Family::E if n != 8 => vec![Isogeny::Adjoint, Isogeny::SimplyConnected],
        Family::E | Family::F | Family::G => vec![Isogeny::Adjoint],
    }
}

pub fn image_lattice(t: RootSystemType, label: Isogeny) -> Result<IsogenyLattice> {
    let t = t.untwisted();
    let n = t.rank;
    let invalid = || Error::InvalidIsogeny(format!("{label} for {t}"));
    let form = |f: &dyn Fn(usize) -> i64| (0..n).map(f).collect::<Vec<i64>>();
    let cong = |form: Vec<i64>, modulus: i64| Congruence { form, modulus };
    // 0-based index i is the coordinate a_{i+1}
    let a_type = |r: i64| vec![cong(form(&|i| i as i64 + 1), r)];
    let congruences = match (t.family, label) {
        (_, Isogeny::Adjoint) => vec![],
        (Family::A, Isogeny::SimplyConnected) => a_type(n as i64 + 1),
        (Family::A, Isogeny::Intermediate(r)) => {
            if r == 0 || !(n as u32 + 1).is_multiple_of(r) {
                return Err(invalid());
            }
            if r == 1 {
                vec![]
            } else {
                a_type(r as i64)
            }
        }
        (Family::B, Isogeny::SimplyConnected) => vec![cong(form(&|i| (i % 2 == 0) as i64), 2)],
        (Family::C, Isogeny::SimplyConnected) => vec![cong(form(&|i| (i == n - 1) as i64), 2)],
        (Family::D, Isogeny::SimplyConnected | Isogeny::SpecialOrthogonal) if n % 2 == 1 => {
            let r = if label == Isogeny::SimplyConnected { 4 } else { 2 };
            let f = form(&|i| {
                if i == n - 1 {
                    -1
                } else if i == n - 2 {
                    1
                } else if i % 2 == 0 {
                    2
                } else {
                    0
                }
            });
            vec![cong(f, r)]
        }
        (Family::D, l) if n.is_multiple_of(2) => {
            let e1 = cong(form(&|i| (i % 2 == 0) as i64), 2);
            let e2 = cong(form(&|i| (i >= n - 2) as i64), 2);
            match l {
                Isogeny::SimplyConnected => vec![e1, e2],
                Isogeny::SpecialOrthogonal => vec![e2],
                Isogeny::HalfSpin => vec![e1],
                _ => return Err(invalid()),
            }
        }
        (Family::E, Isogeny::SimplyConnected) if n == 6 => {
            vec![cong(vec![1, 0, -1, 0, 1, -1], 3)]
        }
        (Family::E, Isogeny::SimplyConnected) if n == 7 => {
            vec![cong(vec![0, 1, 0, 0, 1, 0, 1], 2)]
        }
        _ => return Err(invalid()),
    };
    Ok(IsogenyLattice { ty: t, label, congruences })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ty(s: &str) -> RootSystemType {
        s.parse().unwrap()
    }

    #[test]
    fn parse_types() {
        assert_eq!(ty("B5"), RootSystemType::new(Family::B, 5).unwrap());
        assert_eq!(ty("3D4").twist, 3);
        assert!("D3".parse::<RootSystemType>().is_err());
        assert!("2B3".parse::<RootSystemType>().is_err());
        assert!("E9".parse::<RootSystemType>().is_err());
        assert_eq!(ty("2E6").to_string(), "2E6");
    }

    #[test]
    fn small_root_counts() {
        assert_eq!(build_root_datum(ty("A2")).unwrap().positive_roots.len(), 3);
        assert_eq!(build_root_datum(ty("G2")).unwrap().positive_roots.len(), 6);
        assert_eq!(build_root_datum(ty("E8")).unwrap().positive_roots.len(), 120);
    }

    #[test]
    fn marks() {
        let m = |s: &str| build_root_datum(ty(s)).unwrap().marks;
        assert_eq!(m("B4"), vec![1, 2, 2, 2]);
        assert_eq!(m("C4"), vec![2, 2, 2, 1]);
        assert_eq!(m("D6"), vec![1, 2, 2, 2, 1, 1]);
        assert_eq!(m("E6"), vec![1, 2, 2, 3, 2, 1]);
        assert_eq!(m("E7"), vec![2, 2, 3, 4, 3, 2, 1]);
        assert_eq!(m("E8"), vec![2, 3, 4, 6, 5, 4, 3, 2]);
        assert_eq!(m("F4"), vec![2, 3, 4, 2]);
        assert_eq!(m("G2"), vec![3, 2]);
    }

    #[test]
    fn coxeter_numbers() {
        let h = |s: &str| coxeter_number(&build_root_datum(ty(s)).unwrap());
        assert_eq!(h("A1"), 2);
        assert_eq!(h("A7"), 8);
        assert_eq!(h("E8"), 30);
        assert_eq!(h("E7"), 18);
        assert_eq!(h("F4"), 12);
    }

    #[test]
    fn bad_prime_table() {
        assert!(bad_primes(ty("A7")).is_empty());
        assert_eq!(bad_primes(ty("F4")), vec![2, 3]);
        assert_eq!(bad_primes(ty("D5")), vec![2]);
        assert_eq!(bad_primes(ty("E8")), vec![2, 3, 5]);
        assert!(is_good_prime(ty("E8"), 7));
    }

    #[test]
    fn lattice_examples() {
        let l = image_lattice(ty("A3"), Isogeny::SimplyConnected).unwrap();
        assert_eq!(l.congruences[0].form, vec![1, 2, 3]);
        assert_eq!(l.congruences[0].modulus, 4);
        let c = image_lattice(ty("C3"), Isogeny::SimplyConnected).unwrap();
        assert!(c.contains(&[1, 1, 2]) && !c.contains(&[1, 1, 1]));
        assert!(image_lattice(ty("A4"), Isogeny::Adjoint).unwrap().congruences.is_empty());
        assert!(image_lattice(ty("A3"), Isogeny::Intermediate(3)).is_err());
        assert!(image_lattice(ty("E8"), Isogeny::SimplyConnected).is_err());
        assert!(image_lattice(ty("D5"), Isogeny::HalfSpin).is_err());
    }

    #[test]
    fn parse_isogeny() {
        assert_eq!("sc".parse::<Isogeny>().unwrap(), Isogeny::SimplyConnected);
        assert_eq!("r2".parse::<Isogeny>().unwrap(), Isogeny::Intermediate(2));
        assert_eq!("intermediate(3)".parse::<Isogeny>().unwrap(), Isogeny::Intermediate(3));
        assert!("xyz".parse::<Isogeny>().is_err());
    }
}
