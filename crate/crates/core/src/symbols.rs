//! Lusztig symbols of types B/C, D and ²D, their families and the subset
//! encoding M ↦ M# = M Δ Z_*.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

pub const MAX_SYMBOL_RANK: i64 = 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Series {
    BC,
    D,
    #[serde(rename = "2D")]
    TwistedD,
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Series::BC => "BC",
            Series::D => "D",
            Series::TwistedD => "2D",
        })
    }
}

impl FromStr for Series {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "BC" | "B" | "C" => Ok(Series::BC),
            "D" => Ok(Series::D),
            "2D" => Ok(Series::TwistedD),
            _ => Err(Error::Parse(format!("unknown series {s:?}"))),
        }
    }
}

impl Series {
    fn defect_ok(self, d: i64) -> bool {
        match self {
            Series::BC => d > 0 && d % 2 == 1,
            Series::D => d.rem_euclid(4) == 0,
            Series::TwistedD => d > 0 && d % 4 == 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Symbol {
    pub series: Series,
    pub top: Vec<u32>,
    pub bottom: Vec<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub disambiguator: Option<u8>,
}

/// Σλ + Σμ − ⌊((a+b−1)/2)²⌋.
pub fn symbol_rank(top: &[u32], bottom: &[u32]) -> i64 {
    let s: i64 = top.iter().chain(bottom).map(|&x| x as i64).sum();
    let k = top.len() as i64 + bottom.len() as i64 - 1;
    s - (k * k).div_euclid(4)
}

fn strictly_increasing(v: &[u32]) -> bool {
    v.windows(2).all(|w| w[0] < w[1])
}

impl Symbol {
    /// Validates and canonicalizes. D symbols are stored with the longer row on
    /// top, or the lexicographically smaller row on top when lengths agree.
    pub fn new(series: Series, top: Vec<u32>, bottom: Vec<u32>, disambiguator: Option<u8>) -> Result<Self> {
        let bad = |m: &str| Error::InvalidParams(format!("{m}: ({top:?}; {bottom:?})"));
        if !strictly_increasing(&top) || !strictly_increasing(&bottom) {
            return Err(bad("rows must be strictly increasing"));
        }
        if top.first() == Some(&0) && bottom.first() == Some(&0) {
            return Err(bad("(λ1, μ1) = (0, 0)"));
        }
        let (mut top, mut bottom) = (top.clone(), bottom.clone());
        if series == Series::D && (bottom.len() > top.len() || (bottom.len() == top.len() && bottom < top)) {
            std::mem::swap(&mut top, &mut bottom);
        }
        let defect = top.len() as i64 - bottom.len() as i64;
        if !series.defect_ok(defect) {
            return Err(bad("defect not allowed for series"));
        }
        let degenerate = series == Series::D && top == bottom;
        if degenerate != disambiguator.is_some() || disambiguator.is_some_and(|d| d > 1) {
            return Err(bad("disambiguator required exactly for degenerate D symbols"));
        }
        Ok(Symbol { series, top, bottom, disambiguator })
    }

    pub fn defect(&self) -> i64 {
        self.top.len() as i64 - self.bottom.len() as i64
    }

    pub fn rank(&self) -> i64 {
        symbol_rank(&self.top, &self.bottom)
    }

    pub fn is_degenerate(&self) -> bool {
        self.disambiguator.is_some()
    }

    /// Sorted entries with multiplicity.
    pub fn entries(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self.top.iter().chain(&self.bottom).copied().collect();
        v.sort_unstable();
        v
    }

    /// Entries occurring in exactly one row.
    pub fn singles(&self) -> Vec<u32> {
        let e = self.entries();
        e.iter()
            .enumerate()
            .filter(|&(i, x)| (i == 0 || e[i - 1] != *x) && e.get(i + 1) != Some(x))
            .map(|(_, &x)| x)
            .collect()
    }

    fn row_singles(row: &[u32], other: &[u32]) -> Vec<u32> {
        row.iter().copied().filter(|x| other.binary_search(x).is_err()).collect()
    }

    pub fn top_singles(&self) -> Vec<u32> {
        Self::row_singles(&self.top, &self.bottom)
    }

    pub fn bottom_singles(&self) -> Vec<u32> {
        Self::row_singles(&self.bottom, &self.top)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let row = |r: &[u32]| r.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        write!(f, "({};{})", row(&self.top), row(&self.bottom))?;
        if let Some(d) = self.disambiguator {
            write!(f, "[{d}]")?;
        }
        Ok(())
    }
}

/// Strictly increasing sequences of non-negative integers with given length and sum.
fn sequences(len: usize, sum: i64, min: i64, out: &mut Vec<Vec<u32>>, cur: &mut Vec<u32>) {
    if len == 0 {
        if sum == 0 {
            out.push(cur.clone());
        }
        return;
    }
    let l = len as i64;
    let mut x = min;
    // smallest completion starting at x: x + (x+1) + ... + (x+l-1)
    while l * x + l * (l - 1) / 2 <= sum {
        cur.push(x as u32);
        sequences(len - 1, sum - x, x + 1, out, cur);
        cur.pop();
        x += 1;
    }
}

fn min_sum(len: i64) -> i64 {
    len * (len - 1) / 2
}

/// All symbols of the series with rank `n`.
pub fn enumerate_symbols(series: Series, n: i64) -> Result<Vec<Symbol>> {
    let least = if series == Series::BC { 1 } else { 2 };
    if n < least {
        return Err(Error::InvalidParams(format!("rank {n} below {least} for series {series}")));
    }
    if n > MAX_SYMBOL_RANK {
        return Err(Error::ResourceLimit(format!("rank {n} above {MAX_SYMBOL_RANK}")));
    }
    let mut out = Vec::new();
    let mut defect: i64 = match series {
        Series::BC => 1,
        Series::D => 0,
        Series::TwistedD => 2,
    };
    loop {
        // minimal rank at this defect is attained with b = 0
        if symbol_rank_min(defect, 0) > n {
            break;
        }
        for b in 0i64.. {
            let a = b + defect;
            if symbol_rank_min(a, b) > n {
                break;
            }
            let k = a + b - 1;
            let total = n + (k * k).div_euclid(4);
            for st in min_sum(a)..=total - min_sum(b) {
                let mut tops = Vec::new();
                sequences(a as usize, st, 0, &mut tops, &mut vec![]);
                let mut bots = Vec::new();
                sequences(b as usize, total - st, 0, &mut bots, &mut vec![]);
                for t in &tops {
                    for u in &bots {
                        if t.first() == Some(&0) && u.first() == Some(&0) {
                            continue;
                        }
                        if series == Series::D && a == b {
                            if t > u {
                                continue;
                            }
                            if t == u {
                                for dis in 0..2 {
                                    out.push(Symbol::new(series, t.clone(), u.clone(), Some(dis))?);
                                }
                                continue;
                            }
                        }
                        out.push(Symbol::new(series, t.clone(), u.clone(), None)?);
                    }
                }
            }
        }
        defect += if series == Series::BC { 2 } else { 4 };
    }
    Ok(out)
}

fn symbol_rank_min(a: i64, b: i64) -> i64 {
    let shift = if a > 0 && b > 0 { a.min(b) } else { 0 };
    let k = a + b - 1;
    min_sum(a) + min_sum(b) + shift - (k * k).div_euclid(4)
}

/// Principal-series test by defect.
pub fn principal_series(s: &Symbol) -> bool {
    match s.series {
        Series::BC => s.defect() == 1,
        Series::D => s.defect() == 0,
        Series::TwistedD => s.defect() == 2,
    }
}

fn interleaved(first: &[u32], second: &[u32]) -> bool {
    // first_1 ≤ second_1 ≤ first_2 ≤ ...
    let mut merged: Vec<u32> = Vec::with_capacity(first.len() + second.len());
    for i in 0..first.len().max(second.len()) {
        merged.extend(first.get(i).copied());
        merged.extend(second.get(i).copied());
    }
    merged.windows(2).all(|w| w[0] <= w[1])
}

/// Special symbols: interleaved, defect 1 (BC) or 0 (D).
pub fn is_special(s: &Symbol) -> bool {
    match s.series {
        Series::BC => s.defect() == 1 && interleaved(&s.top, &s.bottom),
        Series::D => s.defect() == 0 && (interleaved(&s.top, &s.bottom) || interleaved(&s.bottom, &s.top)),
        Series::TwistedD => false,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Family {
    pub series: Series,
    pub members: Vec<Symbol>,
    /// Index into `members`; `None` for ²D.
    pub special: Option<usize>,
    #[serde(rename = "Z")]
    pub z_set: Vec<u32>,
    #[serde(rename = "Z_lower")]
    pub z_lower: Vec<u32>,
    #[serde(rename = "Z_upper")]
    pub z_upper: Vec<u32>,
    pub z: usize,
}

impl Family {
    pub fn size(&self) -> usize {
        self.members.len()
    }

    /// |M# ∩ Z^*| − |M# ∩ Z_*|.
    pub fn balance(&self, m_sharp: &[u32]) -> i64 {
        let up = m_sharp.iter().filter(|x| self.z_upper.contains(x)).count() as i64;
        let low = m_sharp.iter().filter(|x| self.z_lower.contains(x)).count() as i64;
        up - low
    }
}

/// Groups symbols by entry multiset. Degenerate D symbols are singletons.
pub fn families(symbols: &[Symbol]) -> Result<Vec<Family>> {
    let Some(first) = symbols.first() else { return Ok(vec![]) };
    let series = first.series;
    let rank = first.rank();
    if symbols.iter().any(|s| s.series != series || s.rank() != rank) {
        return Err(Error::SeriesMismatch("symbols must share series and rank".into()));
    }
    let mut groups: BTreeMap<(Vec<u32>, Option<u8>), Vec<Symbol>> = BTreeMap::new();
    for s in symbols {
        groups.entry((s.entries(), s.disambiguator)).or_default().push(s.clone());
    }
    let mut out: Vec<Family> = groups
        .into_values()
        .map(|members| {
            let z_set = members[0].singles();
            let z_lower: Vec<u32> = z_set.iter().skip(1).step_by(2).copied().collect();
            let z_upper: Vec<u32> = z_set.iter().step_by(2).copied().collect();
            let z = match series {
                Series::BC => (z_set.len().saturating_sub(1)) / 2,
                _ => z_set.len() / 2,
            };
            let special = members.iter().position(is_special);
            Family { series, members, special, z_set, z_lower, z_upper, z }
        })
        .collect();
    out.sort_by(|a, b| a.members[0].cmp(&b.members[0]));
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubsetEncoding {
    /// Row subset M of Z.
    pub m: Vec<u32>,
    #[serde(rename = "m_sharp")]
    pub m_sharp: Vec<u32>,
}

pub fn sym_diff(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut v: Vec<u32> = a.iter().filter(|x| !b.contains(x)).chain(b.iter().filter(|x| !a.contains(x))).copied().collect();
    v.sort_unstable();
    v
}

/// M and M# for a member. For D the pair {M#, Z − M#} is represented by the
/// member avoiding the first element of Z_*.
pub fn subset_encoding(f: &Family, s: &Symbol) -> Result<SubsetEncoding> {
    if !f.members.contains(s) {
        return Err(Error::NotAMember);
    }
    let m = match f.series {
        Series::BC if s.defect().rem_euclid(4) == 3 => s.top_singles(),
        Series::BC | Series::TwistedD => s.bottom_singles(),
        Series::D => s.top_singles(),
    };
    let m_sharp = sym_diff(&m, &f.z_lower);
    if f.series == Series::D {
        if let Some(x) = f.z_lower.first() {
            if m_sharp.contains(x) {
                return Ok(SubsetEncoding { m: sym_diff(&m, &f.z_set), m_sharp: sym_diff(&m_sharp, &f.z_set) });
            }
        }
    }
    Ok(SubsetEncoding { m, m_sharp })
}

/// Inverse of the encoding on the row subset.
pub fn decode_subset(f: &Family, m_sharp: &[u32]) -> Vec<u32> {
    sym_diff(m_sharp, &f.z_lower)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(series: Series, top: &[u32], bottom: &[u32]) -> Symbol {
        Symbol::new(series, top.to_vec(), bottom.to_vec(), None).unwrap()
    }

    #[test]
    fn rank_formula() {
        assert_eq!(symbol_rank(&[0, 2], &[1]), 2);
        assert_eq!(symbol_rank(&[1], &[]), 1);
        assert_eq!(symbol_rank(&[0, 1, 2], &[]), 2);
    }

    #[test]
    fn small_counts() {
        let b1 = enumerate_symbols(Series::BC, 1).unwrap();
        assert_eq!(b1.len(), 2);
        assert!(b1.contains(&sym(Series::BC, &[1], &[])));
        assert!(b1.contains(&sym(Series::BC, &[0, 1], &[1])));
        let b2 = enumerate_symbols(Series::BC, 2).unwrap();
        assert_eq!(b2.len(), 6);
        assert_eq!(b2.iter().filter(|s| s.defect() == 1).count(), 5);
    }

    #[test]
    fn validation() {
        assert!(Symbol::new(Series::BC, vec![0, 1], vec![0], None).is_err());
        assert!(Symbol::new(Series::BC, vec![1, 1], vec![], None).is_err());
        assert!(Symbol::new(Series::BC, vec![1, 2], vec![], None).is_err());
        assert!(Symbol::new(Series::D, vec![1], vec![1], None).is_err());
        assert!(Symbol::new(Series::D, vec![1], vec![1], Some(0)).is_ok());
        let s = Symbol::new(Series::D, vec![2], vec![1], None).unwrap();
        assert_eq!((s.top.clone(), s.bottom.clone()), (vec![1], vec![2]));
    }

    #[test]
    fn principal_series_examples() {
        assert!(principal_series(&sym(Series::BC, &[0, 2], &[1])));
        assert!(!principal_series(&sym(Series::BC, &[0, 1, 2], &[])));
        assert!(principal_series(&sym(Series::TwistedD, &[0, 1], &[])));
    }

    #[test]
    fn bc2_families() {
        let f = families(&enumerate_symbols(Series::BC, 2).unwrap()).unwrap();
        let mut sizes: Vec<usize> = f.iter().map(Family::size).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 1, 4]);
        let big = f.iter().find(|f| f.size() == 4).unwrap();
        assert_eq!(big.z_set, vec![0, 1, 2]);
        assert_eq!(big.z_lower, vec![1]);
        let cusp = sym(Series::BC, &[0, 1, 2], &[]);
        let enc = subset_encoding(big, &cusp).unwrap();
        assert_eq!(enc.m_sharp, vec![0, 2]);
        assert_ne!(big.balance(&enc.m_sharp), 0);
        let special = &big.members[big.special.unwrap()];
        assert!(subset_encoding(big, special).unwrap().m_sharp.is_empty());
    }

    #[test]
    fn degenerate_d_symbols() {
        let d2 = enumerate_symbols(Series::D, 2).unwrap();
        let degenerate: Vec<&Symbol> = d2.iter().filter(|s| s.is_degenerate()).collect();
        assert_eq!(degenerate.len(), 2);
        assert_eq!(degenerate[0].top, vec![1]);
        let fams = families(&d2).unwrap();
        let singles = fams.iter().filter(|f| f.members[0].is_degenerate()).count();
        assert_eq!(singles, 2);
        assert!(fams.iter().all(|f| !f.members[0].is_degenerate() || f.size() == 1));
    }

    #[test]
    fn not_a_member() {
        let f = families(&enumerate_symbols(Series::BC, 2).unwrap()).unwrap();
        let other = sym(Series::BC, &[1], &[]);
        assert_eq!(subset_encoding(&f[0], &other), Err(Error::NotAMember));
    }
}
