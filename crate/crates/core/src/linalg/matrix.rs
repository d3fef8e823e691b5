use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::cyclo::CycloNumber;
use super::rational::{fmt_rational, parse_rational, ri, Rational};
use crate::error::{Error, Result};

/// Dense row-major rational matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RationalMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, found: data.len() });
        }
        Ok(RationalMatrix { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        RationalMatrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| Rational::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { Rational::one() } else { Rational::zero() })
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: row.len() });
            }
            data.extend(row);
        }
        Ok(RationalMatrix { rows: r, cols, data })
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| ri(x)).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, r: &Rational) -> Self {
        RationalMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * r).collect() }
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        if self.cols != o.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: o.rows });
        }
        Ok(Self::from_fn(self.rows, o.cols, |i, j| {
            let mut s = Rational::zero();
            for k in 0..self.cols {
                let a = self.get(i, k);
                if !a.is_zero() {
                    s += a * o.get(k, j);
                }
            }
            s
        }))
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    pub fn block_diag(&self, o: &Self) -> Self {
        let (r, c) = (self.rows + o.rows, self.cols + o.cols);
        Self::from_fn(r, c, |i, j| {
            if i < self.rows && j < self.cols {
                self.get(i, j).clone()
            } else if i >= self.rows && j >= self.cols {
                o.get(i - self.rows, j - self.cols).clone()
            } else {
                Rational::zero()
            }
        })
    }

    /// Rows scaled to integers; returns the rows and the product of the scale factors.
    fn integer_rows(&self) -> (Vec<Vec<BigInt>>, BigInt) {
        let mut prod = BigInt::one();
        let rows = (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                prod *= &l;
                row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
            })
            .collect();
        (rows, prod)
    }

    /// Exact rank by fraction-free elimination.
    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        let (rows, _) = self.integer_rows();
        bareiss(rows, self.cols).0
    }

    /// Exact determinant. Errors on non-square input.
    pub fn det(&self) -> Result<Rational> {
        if self.rows != self.cols {
            return Err(Error::NonSquare { rows: self.rows, cols: self.cols });
        }
        if self.rows == 0 {
            return Ok(Rational::one());
        }
        let (rows, prod) = self.integer_rows();
        let (rank, neg, last) = bareiss(rows, self.cols);
        if rank < self.rows {
            return Ok(Rational::zero());
        }
        let d = Rational::new(last, prod);
        Ok(if neg { -d } else { d })
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.to_rows();
        let pivots = rref_rows(&mut m, self.cols);
        let data = m.into_iter().flatten().collect();
        (RationalMatrix { rows: self.rows, cols: self.cols, data }, pivots)
    }

    /// Basis of the right kernel {x : Mx = 0}.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -r.get(i, f).clone();
                }
                v
            })
            .collect()
    }

    /// Solves `self * x = rhs` for square invertible `self`.
    pub fn solve(&self, rhs: &[Rational]) -> Option<Vec<Rational>> {
        if self.rows != self.cols || rhs.len() != self.rows {
            return None;
        }
        let n = self.rows;
        let mut m: Vec<Vec<Rational>> =
            (0..n).map(|i| self.row(i).iter().cloned().chain([rhs[i].clone()]).collect()).collect();
        let pivots = rref_rows(&mut m, n);
        if pivots.len() < n {
            return None;
        }
        Some(m.into_iter().map(|row| row[n].clone()).collect())
    }

    /// JSON array of arrays of `"p/q"` strings.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            (0..self.rows)
                .map(|i| self.row(i).iter().map(|x| serde_json::Value::String(fmt_rational(x))).collect())
                .collect(),
        )
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let rows = v.as_array().ok_or_else(|| Error::Parse("expected an array of rows".into()))?;
        let rows = rows
            .iter()
            .map(|r| {
                r.as_array()
                    .ok_or_else(|| Error::Parse("expected a row array".into()))?
                    .iter()
                    .map(|c| match c {
                        serde_json::Value::String(s) => parse_rational(s),
                        serde_json::Value::Number(n) => n
                            .as_i64()
                            .map(ri)
                            .ok_or_else(|| Error::Parse(format!("not an integer: {n}"))),
                        _ => Err(Error::Parse("expected a \"p/q\" string".into())),
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(rows)
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(fmt_rational).collect();
            s.push_str(&cells.join(","));
            s.push('\n');
        }
        s
    }

    pub fn to_cyclo(&self) -> CycloMatrix {
        CycloMatrix::from_fn(self.rows, self.cols, |i, j| CycloNumber::from_rational(self.get(i, j).clone()))
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Fraction-free elimination with column skipping.
/// Returns (rank, odd number of row swaps, last pivot).
fn bareiss(mut a: Vec<Vec<BigInt>>, ncols: usize) -> (usize, bool, BigInt) {
    let nrows = a.len();
    let mut prev = BigInt::one();
    let mut r = 0;
    let mut neg = false;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !a[i][c].is_zero()) else { continue };
        if p != r {
            a.swap(p, r);
            neg = !neg;
        }
        let (top, rest) = a.split_at_mut(r + 1);
        let piv_row = &top[r];
        let piv = &piv_row[c];
        for row in rest.iter_mut() {
            let f = row[c].clone();
            for j in c + 1..ncols {
                let v = &row[j] * piv - &f * &piv_row[j];
                row[j] = v / &prev;
            }
            row[c] = BigInt::zero();
        }
        prev = piv.clone();
        r += 1;
    }
    (r, neg, prev)
}

fn rref_rows(m: &mut [Vec<Rational>], ncols: usize) -> Vec<usize> {
    let nrows = m.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(p, r);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..nrows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let (a, b) = if i < r {
                    let (lo, hi) = m.split_at_mut(r);
                    (&mut lo[i], &hi[0])
                } else {
                    let (lo, hi) = m.split_at_mut(i);
                    (&mut hi[0], &lo[r])
                };
                for (x, y) in a.iter_mut().zip(b.iter()) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Coefficients λ with Σ λ_i v_i = target, or `None` if the target is outside the span.
pub fn in_span(vectors: &[Vec<Rational>], target: &[Rational]) -> Result<Option<Vec<Rational>>> {
    let dim = target.len();
    for v in vectors {
        if v.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: v.len() });
        }
    }
    let k = vectors.len();
    // augmented system: dim equations in k unknowns
    let mut m: Vec<Vec<Rational>> = (0..dim)
        .map(|i| vectors.iter().map(|v| v[i].clone()).chain([target[i].clone()]).collect())
        .collect();
    let pivots = rref_rows(&mut m, k + 1);
    if pivots.last() == Some(&k) {
        return Ok(None);
    }
    let mut x = vec![Rational::zero(); k];
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = m[i][k].clone();
    }
    Ok(Some(x))
}

const P61: u64 = (1 << 61) - 1;

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P61 as u128) as u64
}

fn powmod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a);
        }
        a = mulmod(a, a);
        e >>= 1;
    }
    r
}

/// Rank of an integer matrix modulo 2^61 − 1. A lower bound for the rational rank.
pub fn rank_mod_p(rows: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<u64>> =
        rows.iter().map(|r| r.iter().map(|&x| x.rem_euclid(P61 as i64) as u64).collect()).collect();
    let nrows = a.len();
    let ncols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| a[i][c] != 0) else { continue };
        a.swap(p, r);
        let inv = powmod(a[r][c], P61 - 2);
        for x in a[r][c..].iter_mut() {
            *x = mulmod(*x, inv);
        }
        let (top, rest) = a.split_at_mut(r + 1);
        let piv = &top[r];
        for row in rest.iter_mut() {
            let f = row[c];
            if f == 0 {
                continue;
            }
            for j in c..ncols {
                let t = mulmod(f, piv[j]);
                row[j] = (row[j] + P61 - t) % P61;
            }
        }
        r += 1;
    }
    r
}

/// Dense matrix over the cyclotomic numbers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycloMatrix {
    rows: usize,
    cols: usize,
    data: Vec<CycloNumber>,
}

impl CycloMatrix {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> CycloNumber) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        CycloMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &CycloNumber {
        &self.data[i * self.cols + j]
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    /// `Some` when every entry is rational.
    pub fn to_rational(&self) -> Option<RationalMatrix> {
        let data = self.data.iter().map(CycloNumber::to_rational).collect::<Option<Vec<_>>>()?;
        Some(RationalMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    fn eliminate(&self) -> (usize, CycloNumber) {
        let mut m: Vec<Vec<CycloNumber>> =
            (0..self.rows).map(|i| self.data[i * self.cols..(i + 1) * self.cols].to_vec()).collect();
        let mut det = CycloNumber::one();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !m[i][c].is_zero()) else {
                det = CycloNumber::zero();
                continue;
            };
            if p != r {
                m.swap(p, r);
                det = -det;
            }
            det = &det * &m[r][c];
            let inv = m[r][c].inv().expect("nonzero pivot");
            let (top, rest) = m.split_at_mut(r + 1);
            let piv = &top[r];
            for row in rest.iter_mut() {
                if row[c].is_zero() {
                    continue;
                }
                let f = &row[c] * &inv;
                for j in c..self.cols {
                    if !piv[j].is_zero() {
                        row[j] = &row[j] - &(&f * &piv[j]);
                    }
                }
            }
            r += 1;
        }
        (r, det)
    }

    pub fn rank(&self) -> usize {
        if let Some(m) = self.to_rational() {
            return m.rank();
        }
        self.eliminate().0
    }

    pub fn det(&self) -> Result<CycloNumber> {
        if self.rows != self.cols {
            return Err(Error::NonSquare { rows: self.rows, cols: self.cols });
        }
        if let Some(m) = self.to_rational() {
            return Ok(CycloNumber::from_rational(m.det()?));
        }
        let (r, d) = self.eliminate();
        Ok(if r < self.rows { CycloNumber::zero() } else { d })
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            (0..self.rows)
                .map(|i| (0..self.cols).map(|j| self.get(i, j).to_json()).collect())
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    fn m(rows: &[&[i64]]) -> RationalMatrix {
        RationalMatrix::from_i64_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn identity_rank_det() {
        let i3 = RationalMatrix::identity(3);
        assert_eq!(i3.rank(), 3);
        assert_eq!(i3.det().unwrap(), ri(1));
        assert_eq!(RationalMatrix::zeros(0, 0).rank(), 0);
    }

    #[test]
    fn half_matrix_rank_one() {
        let m8 = m(&[&[1, 1], &[1, 1]]).scale(&rat(1, 2));
        assert_eq!(m8.rank(), 1);
        assert_eq!(m8.det().unwrap(), ri(0));
    }

    #[test]
    fn det_with_swaps_and_fractions() {
        let a = m(&[&[0, 1], &[1, 0]]);
        assert_eq!(a.det().unwrap(), ri(-1));
        let b = RationalMatrix::from_rows(vec![vec![rat(1, 2), rat(1, 3)], vec![rat(1, 5), rat(1, 7)]]).unwrap();
        assert_eq!(b.det().unwrap(), rat(1, 14) - rat(1, 15));
        assert!(matches!(m(&[&[1, 2]]).det(), Err(Error::NonSquare { .. })));
    }

    #[test]
    fn rectangular_rank_with_zero_columns() {
        let a = m(&[&[0, 1, 2], &[0, 2, 4], &[0, 0, 1]]);
        assert_eq!(a.rank(), 2);
        assert_eq!(a.transpose().rank(), 2);
    }

    #[test]
    fn span_examples() {
        let v = vec![vec![ri(1), ri(0)], vec![ri(0), ri(1)]];
        assert_eq!(in_span(&v, &[ri(2), ri(3)]).unwrap(), Some(vec![ri(2), ri(3)]));
        assert_eq!(in_span(&[vec![ri(1), ri(1)]], &[ri(1), ri(2)]).unwrap(), None);
        assert!(in_span(&[vec![ri(1)]], &[ri(1), ri(2)]).is_err());
    }

    #[test]
    fn kernel_is_annihilated() {
        let a = m(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 1, 0]]);
        let k = a.kernel();
        assert_eq!(k.len(), 2);
        for v in &k {
            for i in 0..a.rows() {
                let s: Rational = a.row(i).iter().zip(v).map(|(x, y)| x * y).sum();
                assert!(s.is_zero());
            }
        }
    }

    #[test]
    fn json_csv() {
        let a = RationalMatrix::from_rows(vec![vec![rat(1, 2), ri(-1)]]).unwrap();
        let j = a.to_json();
        assert_eq!(j, serde_json::json!([["1/2", "-1/1"]]));
        assert_eq!(RationalMatrix::from_json(&j).unwrap(), a);
        assert_eq!(a.to_csv(), "1/2,-1/1\n");
    }

    #[test]
    fn modular_rank() {
        assert_eq!(rank_mod_p(&[vec![1, 1], vec![1, -1]]), 2);
        assert_eq!(rank_mod_p(&[vec![2, 4], vec![1, 2]]), 1);
    }

    #[test]
    fn cyclo_det() {
        let w = CycloNumber::zeta(3);
        let a = CycloMatrix::from_fn(2, 2, |i, j| if i == j { CycloNumber::one() } else { w.clone() });
        // 1 - ω²
        assert_eq!(a.det().unwrap(), &CycloNumber::one() - &w.pow(2));
        assert_eq!(a.rank(), 2);
    }
}
