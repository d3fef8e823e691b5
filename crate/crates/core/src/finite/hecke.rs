//! Orbital sums restricted to the Hecke algebra of B-bi-invariant functions.
//!
//! A functional D(f) = Σ_x d(x) f(x) is given by its density d. On the
//! Hecke algebra it is determined by its values on the Bruhat cells.

use num_traits::Zero;
use serde::Serialize;

use super::class_fn::{parabolic_restriction, proper_parabolics, ClassFunction};
use super::decompose::levi_representatives;
use super::gl::{comp_label, Bruhat, Classes, GlModel, Subgroup};
use crate::error::{Error, Result};
use crate::linalg::{fmt_rational, in_span, ri, CycloNumber, Rational, RationalMatrix};

/// D(1_{BwB}) for every cell, in Bruhat order.
pub fn hecke_restriction(bruhat: &Bruhat, d: &ClassFunction) -> Vec<CycloNumber> {
    let mut out = vec![CycloNumber::zero(); bruhat.weyl.len()];
    for (x, v) in d.values.iter().enumerate() {
        if !v.is_zero() {
            out[bruhat.cell_of[x]] += v;
        }
    }
    out
}

/// 1_g(f) = Σ_h f(h⁻¹gh).
pub fn orbital(g: &GlModel, x: usize, f: &ClassFunction) -> CycloNumber {
    let mut acc = CycloNumber::zero();
    for h in 0..g.order() {
        let y = g.mul(g.mul(g.inv(h), x), h);
        if !f.values[y].is_zero() {
            acc += &f.values[y];
        }
    }
    acc
}

/// Density of 1_x: |Z(x)| on the class of x.
pub fn orbital_density(g: &GlModel, x: usize) -> ClassFunction {
    let z = g.centralizer_order(x) as i64;
    let mut values = vec![CycloNumber::zero(); g.order()];
    for h in 0..g.order() {
        values[g.mul(g.mul(g.inv(h), x), h)] = CycloNumber::from_int(z);
    }
    ClassFunction { domain: g.whole.label.clone(), values }
}

/// Hecke vector of 1_x, computed by counting the class of x in each cell.
pub fn orbital_hecke_vector(g: &GlModel, bruhat: &Bruhat, x: usize) -> Vec<Rational> {
    let z = g.centralizer_order(x) as i64;
    let mut counts = vec![0i64; bruhat.weyl.len()];
    let mut seen = vec![false; g.order()];
    for h in 0..g.order() {
        let y = g.mul(g.mul(g.inv(h), x), h);
        if !seen[y] {
            seen[y] = true;
            counts[bruhat.cell_of[y]] += 1;
        }
    }
    counts.into_iter().map(|c| ri(c * z)).collect()
}

/// |c ∩ BwB| per class and cell.
fn class_cell_counts(classes: &Classes, s: &Subgroup, bruhat: &Bruhat) -> Vec<Vec<i64>> {
    classes
        .members
        .iter()
        .map(|m| {
            let mut row = vec![0i64; bruhat.weyl.len()];
            for &p in m {
                row[bruhat.cell_of[s.elements[p]]] += 1;
            }
            row
        })
        .collect()
}

/// Dimension of the invariant functionals seen on the Hecke algebra.
pub fn invariant_functional_dim(g: &GlModel, bruhat: &Bruhat) -> Result<usize> {
    let classes = g.classes(&g.whole, false)?;
    Ok(RationalMatrix::from_i64_rows(&class_cell_counts(&classes, &g.whole, bruhat))?.rank())
}

fn rstr(v: &[Rational]) -> Vec<String> {
    v.iter().map(fmt_rational).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct TorusRow {
    pub torus: String,
    pub element: Option<String>,
    pub vector: Option<Vec<String>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TorusReport {
    pub rows: Vec<TorusRow>,
    /// Torus classes with no regular element at this q.
    pub missing_regular: Vec<String>,
    pub rank: usize,
    pub functional_dim: usize,
    pub is_basis: bool,
    /// Every pair of regular elements of each torus gives the same vector.
    pub independent_of_element: bool,
    pub pairs_checked: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct UnipotentRow {
    pub jordan_type: Vec<usize>,
    pub vector: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Membership {
    pub class: String,
    pub coefficients: Option<Vec<String>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct UnipotentReport {
    pub rows: Vec<UnipotentRow>,
    pub rank: usize,
    /// #Irr(W) = number of partitions of n.
    pub irr_w: usize,
    pub memberships: Vec<Membership>,
    pub all_in_span: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpanReport {
    pub group: String,
    pub cells: Vec<Vec<usize>>,
    pub torus: TorusReport,
    pub unipotent: UnipotentReport,
    pub dchk: HeckeAudit,
}

impl SpanReport {
    /// The error mirroring a torus class without regular elements, if any.
    pub fn regular_element_error(&self) -> Option<Error> {
        self.torus.missing_regular.first().map(|t| Error::MissingRegularElement(format!("{} in {}", t, self.group)))
    }
}

pub fn torus_report(g: &GlModel, bruhat: &Bruhat) -> Result<TorusReport> {
    let functional_dim = invariant_functional_dim(g, bruhat)?;
    let mut rows = Vec::new();
    let mut missing_regular = Vec::new();
    let mut vectors = Vec::new();
    let mut independent = true;
    let mut pairs = 0;
    for t in g.torus_classes()? {
        let Some(&x) = t.regular.first() else {
            missing_regular.push(t.label.clone());
            rows.push(TorusRow { torus: t.label, element: None, vector: None });
            continue;
        };
        let v = orbital_hecke_vector(g, bruhat, x);
        for &y in &t.regular[1..] {
            pairs += 1;
            if orbital_hecke_vector(g, bruhat, y) != v {
                independent = false;
            }
        }
        rows.push(TorusRow { torus: t.label, element: Some(g.describe(x)), vector: Some(rstr(&v)) });
        vectors.push(v);
    }
    let rank = if vectors.is_empty() { 0 } else { RationalMatrix::from_rows(vectors.clone())?.rank() };
    let is_basis = missing_regular.is_empty() && vectors.len() == functional_dim && rank == functional_dim;
    Ok(TorusReport {
        rows,
        missing_regular,
        rank,
        functional_dim,
        is_basis,
        independent_of_element: independent,
        pairs_checked: pairs,
    })
}

pub fn unipotent_report(g: &GlModel, bruhat: &Bruhat) -> Result<UnipotentReport> {
    let classes = g.classes(&g.whole, false)?;
    let mut rows = Vec::new();
    let mut vectors = Vec::new();
    let mut types: Vec<(Vec<usize>, usize)> =
        classes.reps.iter().filter_map(|&r| g.jordan_type(r).map(|t| (t, r))).collect();
    types.sort();
    for (t, r) in types {
        let v = orbital_hecke_vector(g, bruhat, r);
        rows.push(UnipotentRow { jordan_type: t, vector: rstr(&v) });
        vectors.push(v);
    }
    let rank = RationalMatrix::from_rows(vectors.clone())?.rank();
    let mut memberships = Vec::new();
    let mut all = true;
    for &r in classes.reps.iter().filter(|&&r| g.is_regular_semisimple(r)) {
        let coef = in_span(&vectors, &orbital_hecke_vector(g, bruhat, r))?;
        all &= coef.is_some();
        memberships.push(Membership { class: g.describe(r), coefficients: coef.as_deref().map(rstr) });
    }
    Ok(UnipotentReport { rows, rank, irr_w: super::gl::partitions(g.n).len(), memberships, all_in_span: all })
}

#[derive(Clone, Debug, Serialize)]
pub struct HeckeLevi {
    pub levi: String,
    pub hecke_dim: usize,
    /// Dimension of the cuspidal part modulo functions killed by every
    /// invariant functional on M.
    pub cusp_dim: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct HeckeAudit {
    pub per_levi: Vec<HeckeLevi>,
    pub sum: usize,
    /// Rank of the class averages of all lifted cuspidal parts.
    pub union_rank: usize,
    /// Dimension of H_G modulo C₀(G) ∩ H_G.
    pub quotient_dim: usize,
    pub passed: bool,
}

/// Class averages x ↦ |c ∩ S| / |c| of the cell indicators, as columns.
fn averaged_cells(classes: &Classes, s: &Subgroup, bruhat: &Bruhat) -> Vec<Vec<Rational>> {
    let counts = class_cell_counts(classes, s, bruhat);
    let cells = bruhat.weyl.len();
    (0..cells)
        .map(|w| {
            counts
                .iter()
                .zip(&classes.members)
                .map(|(row, m)| Rational::new(row[w].into(), (m.len() as i64).into()))
                .collect()
        })
        .collect()
}

fn combine(cols: &[Vec<Rational>], coef: &[Rational], len: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); len];
    for (c, col) in coef.iter().zip(cols) {
        if !c.is_zero() {
            for (o, x) in out.iter_mut().zip(col) {
                *o += c * x;
            }
        }
    }
    out
}

fn rank_of(v: Vec<Vec<Rational>>) -> Result<usize> {
    if v.is_empty() {
        Ok(0)
    } else {
        Ok(RationalMatrix::from_rows(v)?.rank())
    }
}

/// H_G = Σ_M H_{M,cusp} modulo C₀(G) ∩ H_G, as a dimension count.
///
/// H_M is spanned by the cells BwB ∩ M, w ∈ W_M. Its cuspidal part is the
/// set of elements whose M-class average is cuspidal. Lifting through
/// P = MU sends B_M w B_M to BwB.
pub fn hecke_audit(g: &GlModel, bruhat: &Bruhat) -> Result<HeckeAudit> {
    let g_classes = g.classes(&g.whole, false)?;
    let g_avg = averaged_cells(&g_classes, &g.whole, bruhat);
    let quotient_dim = rank_of(g_avg.clone())?;
    let mut per_levi = Vec::new();
    let mut lifted = Vec::new();
    for comp in levi_representatives(g.n, false) {
        let m = g.levi(&comp)?;
        let m_classes = g.classes(&m, false)?;
        let cells: Vec<usize> = {
            let mut c: Vec<usize> = m.elements.iter().map(|&x| bruhat.cell_of[x]).collect();
            c.sort_unstable();
            c.dedup();
            c
        };
        let avg_all = averaged_cells(&m_classes, &m, bruhat);
        let avg: Vec<Vec<Rational>> = cells.iter().map(|&w| avg_all[w].clone()).collect();
        let mut rows: Vec<Vec<Rational>> = Vec::new();
        for p in proper_parabolics(g, &comp, false)? {
            let images: Vec<ClassFunction> = avg
                .iter()
                .map(|a| parabolic_restriction(g, &p, &ClassFunction::from_rational_classes(&m, &m_classes, a)?))
                .collect::<Result<_>>()?;
            for l in 0..p.levi.order() {
                rows.push(
                    images
                        .iter()
                        .map(|im| im.values[l].to_rational().ok_or_else(|| Error::Data("non-rational restriction".into())))
                        .collect::<Result<_>>()?,
                );
            }
        }
        let kernel: Vec<Vec<Rational>> = if rows.is_empty() {
            (0..cells.len()).map(|i| (0..cells.len()).map(|j| ri(i64::from(i == j))).collect()).collect()
        } else {
            RationalMatrix::from_rows(rows)?.kernel()
        };
        let cusp_dim = rank_of(kernel.iter().map(|k| combine(&avg, k, m_classes.len())).collect())?;
        let g_cols: Vec<Vec<Rational>> = cells.iter().map(|&w| g_avg[w].clone()).collect();
        lifted.extend(kernel.iter().map(|k| combine(&g_cols, k, g_classes.len())));
        per_levi.push(HeckeLevi { levi: comp_label(&comp), hecke_dim: cells.len(), cusp_dim });
    }
    let sum = per_levi.iter().map(|l| l.cusp_dim).sum();
    let union_rank = rank_of(lifted)?;
    Ok(HeckeAudit { per_levi, sum, union_rank, quotient_dim, passed: sum == union_rank && union_rank == quotient_dim })
}

pub fn span_reports(g: &GlModel) -> Result<SpanReport> {
    let bruhat = g.bruhat()?;
    Ok(SpanReport {
        group: g.name(),
        cells: bruhat.weyl.clone(),
        torus: torus_report(g, &bruhat)?,
        unipotent: unipotent_report(g, &bruhat)?,
        dchk: hecke_audit(g, &bruhat)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite::gl::build_gl;

    #[test]
    fn identity_orbital() {
        let g = build_gl(2, 3).unwrap();
        let b = g.bruhat().unwrap();
        let d = orbital_density(&g, g.identity);
        assert_eq!(hecke_restriction(&b, &d)[0], CycloNumber::from_int(48));
        assert_eq!(orbital_hecke_vector(&g, &b, g.identity), vec![ri(48), ri(0)]);
        let one = ClassFunction::constant(&g.whole, CycloNumber::one());
        assert_eq!(orbital(&g, g.identity, &one), CycloNumber::from_int(48));
    }

    #[test]
    fn orbital_matches_density() {
        let g = build_gl(2, 5).unwrap();
        let b = g.bruhat().unwrap();
        let x = g.index_of(&[1, 0, 0, 2, 0, 0, 0, 0, 0]).unwrap();
        let borel = g.borel().unwrap();
        let mut one_b = ClassFunction::zero(&g.whole);
        for &y in &borel.parabolic.elements {
            one_b.values[y] = CycloNumber::one();
        }
        // |orbit ∩ B| · |Z(x)| = 10 · 16
        assert_eq!(orbital(&g, x, &one_b), CycloNumber::from_int(160));
        let dens: Vec<Rational> =
            hecke_restriction(&b, &orbital_density(&g, x)).iter().map(|c| c.to_rational().unwrap()).collect();
        assert_eq!(dens, orbital_hecke_vector(&g, &b, x));
    }

    #[test]
    fn reports_gl2_f3() {
        let g = build_gl(2, 3).unwrap();
        let r = span_reports(&g).unwrap();
        assert_eq!(r.cells.len(), 2);
        assert!(r.torus.is_basis && r.torus.independent_of_element);
        assert_eq!(r.unipotent.rank, 2);
        assert!(r.unipotent.all_in_span);
        assert!(r.dchk.passed);
    }

    #[test]
    fn gl3_f2_split_torus_lacks_regular() {
        let g = build_gl(3, 2).unwrap();
        let r = span_reports(&g).unwrap();
        assert_eq!(r.cells.len(), 6);
        assert_eq!(r.torus.missing_regular, vec!["T(1,1,1)".to_string()]);
        assert!(!r.torus.is_basis);
        assert_eq!((r.unipotent.rank, r.unipotent.irr_w), (3, 3));
        assert!(r.dchk.passed, "{:?}", r.dchk);
        assert!(matches!(r.regular_element_error(), Some(Error::MissingRegularElement(_))));
    }

    #[test]
    fn gl2_f2_flags_split_torus() {
        let g = build_gl(2, 2).unwrap();
        let r = span_reports(&g).unwrap();
        assert_eq!(r.torus.missing_regular, vec!["T(1,1)".to_string()]);
    }
}
