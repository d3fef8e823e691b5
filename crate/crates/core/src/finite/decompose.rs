//! Decomposition of invariant functions along standard Levis:
//! f = Σ_M Ind_M φ_M with φ_M cuspidal and normalizer-invariant.

use num_traits::Zero;
use serde::Serialize;

use super::class_fn::{parabolic_restriction, proper_parabolics, ClassFunction, InductionKernel};
use super::gl::{comp_label, partitions, Classes, GlModel, Parabolic};
use crate::error::{Error, Result};
use crate::linalg::{fmt_rational, ri, CycloNumber, Rational, RationalMatrix};

/// One representative Levi with its cuspidal, normalizer-invariant basis.
#[derive(Clone, Debug)]
pub struct LeviData {
    pub comp: Vec<usize>,
    pub label: String,
    pub parabolic: Parabolic,
    pub classes: Classes,
    pub kernel: InductionKernel,
    /// |N_{G,γ}(M)|
    pub normalizer_order: usize,
    /// Class coordinates on M of each basis vector.
    pub cusp_basis: Vec<Vec<Rational>>,
    /// Ind of each basis vector, in class coordinates on G.
    pub induced: Vec<Vec<Rational>>,
}

impl LeviData {
    pub fn normalizer_index(&self) -> usize {
        self.normalizer_order / self.parabolic.levi.order()
    }

    pub fn basis_function(&self, k: usize) -> Result<ClassFunction> {
        ClassFunction::from_rational_classes(&self.parabolic.levi, &self.classes, &self.cusp_basis[k])
    }

    /// ⟨φ, φ'⟩_M in class coordinates.
    pub fn inner(&self, a: &[Rational], b: &[Rational]) -> Rational {
        class_inner(&self.classes, self.parabolic.levi.order(), a, b)
    }
}

pub fn class_inner(classes: &Classes, order: usize, a: &[Rational], b: &[Rational]) -> Rational {
    let s: Rational = classes.members.iter().zip(a.iter().zip(b)).map(|(m, (x, y))| ri(m.len() as i64) * x * y).sum();
    s / ri(order as i64)
}

/// The model with its class data and Levi representatives, for γ = id or γ.
#[derive(Clone, Debug)]
pub struct Harmonic<'a> {
    pub g: &'a GlModel,
    pub twisted: bool,
    pub classes: Classes,
    pub levis: Vec<LeviData>,
}

/// Levi representatives: one per partition, or the palindromic
/// compositions (γ-stable standard Levis) when twisted.
pub fn levi_representatives(n: usize, twisted: bool) -> Vec<Vec<usize>> {
    if !twisted {
        return partitions(n).into_iter().rev().collect();
    }
    let mut out: Vec<Vec<usize>> = super::gl::refinements(&[n])
        .into_iter()
        .filter(|c| c.iter().eq(c.iter().rev()))
        .collect();
    out.sort_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
    out
}

impl<'a> Harmonic<'a> {
    pub fn new(g: &'a GlModel, twisted: bool) -> Result<Self> {
        let classes = g.classes(&g.whole, twisted)?;
        let mut levis = Vec::new();
        for comp in levi_representatives(g.n, twisted) {
            levis.push(Self::levi_data(g, &comp, twisted)?);
        }
        Ok(Harmonic { g, twisted, classes, levis })
    }

    fn levi_data(g: &GlModel, comp: &[usize], twisted: bool) -> Result<LeviData> {
        let parabolic = g.parabolic(&[g.n], comp, false)?;
        let kernel = InductionKernel::new(g, &parabolic, twisted)?;
        let m = &parabolic.levi;
        let classes = g.classes(m, twisted)?;
        // N_{G,γ}(M) generated by M and the permutation matrices normalizing
        // it. Brute force over G would overcount when M is degenerate (q = 2).
        let normalizer: Vec<usize> = {
            let ws: Vec<usize> = super::gl::permutations(g.n)
                .iter()
                .map(|w| g.perm_matrix(w))
                .filter(|&w| m.elements.iter().all(|&x| m.contains(g.tconj(w, x, twisted))))
                .collect();
            let mut set: Vec<usize> = m.elements.iter().flat_map(|&x| ws.iter().map(move |&w| (x, w))).map(|(x, w)| g.mul(x, w)).collect();
            set.sort_unstable();
            set.dedup();
            set
        };
        // N acts on M-classes; invariant functions are constant on its orbits
        let mut orbit_of = vec![usize::MAX; classes.len()];
        let mut norbits = 0;
        for start in 0..classes.len() {
            if orbit_of[start] != usize::MAX {
                continue;
            }
            let mut stack = vec![start];
            orbit_of[start] = norbits;
            while let Some(c) = stack.pop() {
                for &h in &normalizer {
                    let img = classes.class_of[m.position(g.tconj(h, classes.reps[c], twisted)).unwrap()];
                    if orbit_of[img] == usize::MAX {
                        orbit_of[img] = norbits;
                        stack.push(img);
                    }
                }
            }
            norbits += 1;
        }
        let orbit_vec = |o: usize| -> Vec<Rational> {
            orbit_of.iter().map(|&x| if x == o { ri(1) } else { Rational::zero() }).collect()
        };
        // cuspidality: restrictions to proper γ-stable parabolics of M vanish
        let mut rows: Vec<Vec<Rational>> = Vec::new();
        for p in proper_parabolics(g, comp, twisted)? {
            let images: Vec<ClassFunction> = (0..norbits)
                .map(|o| {
                    let f = ClassFunction::from_rational_classes(m, &classes, &orbit_vec(o))?;
                    parabolic_restriction(g, &p, &f)
                })
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
        let kernel_vectors = if rows.is_empty() {
            (0..norbits).map(|o| (0..norbits).map(|k| if k == o { ri(1) } else { Rational::zero() }).collect()).collect()
        } else {
            RationalMatrix::from_rows(rows)?.kernel()
        };
        let cusp_basis: Vec<Vec<Rational>> = kernel_vectors
            .iter()
            .map(|coef| orbit_of.iter().map(|&o| coef[o].clone()).collect())
            .collect();
        let kmat = kernel.class_matrix(&classes);
        let induced = cusp_basis
            .iter()
            .map(|b| kmat.iter().map(|row| row.iter().zip(b).map(|(x, y)| x * y).sum()).collect())
            .collect();
        Ok(LeviData {
            comp: comp.to_vec(),
            label: comp_label(comp),
            parabolic,
            classes,
            kernel,
            normalizer_order: normalizer.len(),
            cusp_basis,
            induced,
        })
    }

    pub fn g_inner(&self, a: &[Rational], b: &[Rational]) -> Rational {
        class_inner(&self.classes, self.g.order(), a, b)
    }

    /// Σ_M dim, and the rank of all induced basis vectors together.
    pub fn dimension_audit(&self) -> Result<DimensionAudit> {
        let per_levi: Vec<(String, usize)> = self.levis.iter().map(|l| (l.label.clone(), l.cusp_basis.len())).collect();
        let all: Vec<Vec<Rational>> = self.levis.iter().flat_map(|l| l.induced.iter().cloned()).collect();
        let rank = if all.is_empty() { 0 } else { RationalMatrix::from_rows(all)?.rank() };
        let sum = per_levi.iter().map(|x| x.1).sum();
        Ok(DimensionAudit { classes: self.classes.len(), per_levi, sum, rank, passed: sum == rank && rank == self.classes.len() })
    }

    /// Rational class vector decomposition using the Gram matrix predicted by
    /// the orthogonality relations.
    fn decompose_rational(&self, v: &[Rational]) -> Result<Vec<Vec<Rational>>> {
        let sizes: Vec<usize> = self.levis.iter().map(|l| l.cusp_basis.len()).collect();
        let total: usize = sizes.iter().sum();
        let mut gram = RationalMatrix::zeros(total, total);
        let mut rhs = Vec::with_capacity(total);
        let mut off = 0;
        for l in &self.levis {
            let idx = ri(l.normalizer_index() as i64);
            for (i, bi) in l.cusp_basis.iter().enumerate() {
                for (j, bj) in l.cusp_basis.iter().enumerate() {
                    gram.set(off + i, off + j, &idx * l.inner(bi, bj));
                }
                rhs.push(self.g_inner(&l.induced[i], v));
            }
            off += l.cusp_basis.len();
        }
        let c = gram
            .solve(&rhs)
            .ok_or_else(|| Error::DecompositionFailure("singular Gram matrix".into()))?;
        let mut recon = vec![Rational::zero(); v.len()];
        let mut out = Vec::new();
        let mut off = 0;
        for l in &self.levis {
            let coef = &c[off..off + l.cusp_basis.len()];
            let mut phi = vec![Rational::zero(); l.classes.len()];
            for (k, ck) in coef.iter().enumerate() {
                for (x, b) in phi.iter_mut().zip(&l.cusp_basis[k]) {
                    *x += ck * b;
                }
                for (x, y) in recon.iter_mut().zip(&l.induced[k]) {
                    *x += ck * y;
                }
            }
            out.push(phi);
            off += l.cusp_basis.len();
        }
        if recon != v {
            return Err(Error::DecompositionFailure("components do not reconstruct the input".into()));
        }
        Ok(out)
    }

    pub fn cuspidal_decomposition(&self, f: &ClassFunction) -> Result<Decomposition> {
        if f.domain != "G" || f.values.len() != self.g.order() {
            return Err(Error::GroupMismatch);
        }
        if !f.is_constant_on(&self.classes) {
            return Err(Error::InvalidParams("input is not invariant".into()));
        }
        let vals = f.class_values(&self.classes);
        let cond = vals.iter().fold(1u32, |a, v| num_integer::lcm(a, v.conductor()));
        let coords: Vec<Vec<Rational>> = vals.iter().map(|v| v.embed(cond)).collect();
        let dim = coords[0].len();
        // one rational decomposition per power-basis coordinate
        let parts: Vec<Vec<Vec<Rational>>> = (0..dim)
            .map(|j| self.decompose_rational(&coords.iter().map(|c| c[j].clone()).collect::<Vec<_>>()))
            .collect::<Result<_>>()?;
        let mut components = Vec::new();
        for (li, l) in self.levis.iter().enumerate() {
            let values: Vec<CycloNumber> = (0..l.classes.len())
                .map(|k| CycloNumber::from_coeffs(cond, parts.iter().map(|p| p[li][k].clone()).collect()))
                .collect::<Result<_>>()?;
            let phi = ClassFunction::from_class_values(&l.parabolic.levi, &l.classes, &values)?;
            let induced = l.kernel.apply(&phi)?;
            components.push(Component {
                levi: l.label.clone(),
                normalizer_index: l.normalizer_index(),
                phi,
                induced,
            });
        }
        let mut sum = ClassFunction::zero(&self.g.whole);
        for c in &components {
            sum = sum.add(&c.induced)?;
        }
        if &sum != f {
            return Err(Error::DecompositionFailure("recombined components differ from the input".into()));
        }
        Ok(Decomposition { components })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DimensionAudit {
    pub classes: usize,
    pub per_levi: Vec<(String, usize)>,
    pub sum: usize,
    pub rank: usize,
    pub passed: bool,
}

#[derive(Clone, Debug)]
pub struct Component {
    pub levi: String,
    pub normalizer_index: usize,
    pub phi: ClassFunction,
    pub induced: ClassFunction,
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub components: Vec<Component>,
}

impl Decomposition {
    pub fn to_json(&self, h: &Harmonic) -> serde_json::Value {
        let comps: Vec<serde_json::Value> = self
            .components
            .iter()
            .zip(&h.levis)
            .map(|(c, l)| {
                serde_json::json!({
                    "levi": c.levi,
                    "normalizer_index": c.normalizer_index,
                    "phi": c.phi.class_values(&l.classes).iter().map(CycloNumber::to_json).collect::<Vec<_>>(),
                })
            })
            .collect();
        serde_json::json!({ "components": comps })
    }
}

/// Rational vector as strings, for reports.
pub fn fmt_vec(v: &[Rational]) -> Vec<String> {
    v.iter().map(fmt_rational).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite::gl::build_gl;

    #[test]
    fn gl2_f3_dimensions() {
        let g = build_gl(2, 3).unwrap();
        let h = Harmonic::new(&g, false).unwrap();
        let a = h.dimension_audit().unwrap();
        assert_eq!(a.per_levi, vec![("L(1,1)".to_string(), 3), ("G".to_string(), 5)]);
        assert!(a.passed);
        assert_eq!(h.levis[0].normalizer_index(), 2);
    }

    #[test]
    fn decomposes_class_indicators() {
        for (n, q) in [(2, 2), (2, 3), (3, 2)] {
            let g = build_gl(n, q).unwrap();
            for twisted in [false, true] {
                let h = Harmonic::new(&g, twisted).unwrap();
                assert!(h.dimension_audit().unwrap().passed, "{n} {q} {twisted}");
                for k in 0..h.classes.len() {
                    let f = ClassFunction::class_indicator(&g.whole, &h.classes, k);
                    h.cuspidal_decomposition(&f).unwrap();
                }
            }
        }
    }

    #[test]
    fn cuspidal_input_stays_put() {
        let g = build_gl(2, 3).unwrap();
        let h = Harmonic::new(&g, false).unwrap();
        let gl = &h.levis[1];
        let f = gl.basis_function(0).unwrap();
        let d = h.cuspidal_decomposition(&f).unwrap();
        assert!(d.components[0].phi.is_zero());
        assert_eq!(d.components[1].phi, f);
    }

    #[test]
    fn cyclotomic_input() {
        let g = build_gl(2, 3).unwrap();
        let h = Harmonic::new(&g, false).unwrap();
        let vals: Vec<CycloNumber> = (0..h.classes.len()).map(|k| CycloNumber::zeta_pow(4, k as i64)).collect();
        let f = ClassFunction::from_class_values(&g.whole, &h.classes, &vals).unwrap();
        h.cuspidal_decomposition(&f).unwrap();
    }
}
