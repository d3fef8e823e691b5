//! Class functions stored per element, hermitian product, parabolic
//! restriction and (γ-twisted) induction.

use num_traits::Zero;

use super::gl::{comp_label, refinements, Classes, GlModel, Parabolic, Subgroup};
use crate::error::{Error, Result};
use crate::linalg::{ri, CycloNumber, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassFunction {
    /// Label of the subgroup the values live on.
    pub domain: String,
    /// One value per subgroup position.
    pub values: Vec<CycloNumber>,
}

impl ClassFunction {
    pub fn zero(s: &Subgroup) -> Self {
        Self::constant(s, CycloNumber::zero())
    }

    pub fn constant(s: &Subgroup, c: CycloNumber) -> Self {
        ClassFunction { domain: s.label.clone(), values: vec![c; s.order()] }
    }

    pub fn from_class_values(s: &Subgroup, classes: &Classes, vals: &[CycloNumber]) -> Result<Self> {
        if vals.len() != classes.len() {
            return Err(Error::DimensionMismatch { expected: classes.len(), found: vals.len() });
        }
        let values = classes.class_of.iter().map(|&c| vals[c].clone()).collect();
        Ok(ClassFunction { domain: s.label.clone(), values })
    }

    pub fn from_rational_classes(s: &Subgroup, classes: &Classes, vals: &[Rational]) -> Result<Self> {
        let v: Vec<CycloNumber> = vals.iter().cloned().map(CycloNumber::from_rational).collect();
        Self::from_class_values(s, classes, &v)
    }

    /// 1 on the class of `g`, 0 elsewhere.
    pub fn class_indicator(s: &Subgroup, classes: &Classes, k: usize) -> Self {
        let values = classes.class_of.iter().map(|&c| CycloNumber::from_int(i64::from(c == k))).collect();
        ClassFunction { domain: s.label.clone(), values }
    }

    /// Value at the first member of each class.
    pub fn class_values(&self, classes: &Classes) -> Vec<CycloNumber> {
        classes.members.iter().map(|m| self.values[m[0]].clone()).collect()
    }

    pub fn is_constant_on(&self, classes: &Classes) -> bool {
        classes.members.iter().all(|m| m.iter().all(|&p| self.values[p] == self.values[m[0]]))
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(CycloNumber::is_zero)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        ClassFunction { domain: self.domain.clone(), values: self.values.iter().map(|v| v.scale(r)).collect() }
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.same_domain(o)?;
        Ok(ClassFunction {
            domain: self.domain.clone(),
            values: self.values.iter().zip(&o.values).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.scale(&ri(-1)))
    }

    fn same_domain(&self, o: &Self) -> Result<()> {
        if self.domain != o.domain || self.values.len() != o.values.len() {
            return Err(Error::GroupMismatch);
        }
        Ok(())
    }

    fn check_on(&self, s: &Subgroup) -> Result<()> {
        if self.domain != s.label || self.values.len() != s.order() {
            return Err(Error::GroupMismatch);
        }
        Ok(())
    }
}

/// ⟨f, f'⟩ = 1/|A| Σ conj(f(a)) f'(a).
pub fn inner_product(s: &Subgroup, f: &ClassFunction, f2: &ClassFunction) -> Result<CycloNumber> {
    f.check_on(s)?;
    f2.check_on(s)?;
    let mut acc = CycloNumber::zero();
    for (a, b) in f.values.iter().zip(&f2.values) {
        if !a.is_zero() && !b.is_zero() {
            acc += &(&a.conj() * b);
        }
    }
    Ok(acc.scale(&Rational::new(1.into(), (s.order() as i64).into())))
}

/// m ↦ Σ_{u∈U} f(mu).
pub fn parabolic_restriction(g: &GlModel, p: &Parabolic, f: &ClassFunction) -> Result<ClassFunction> {
    f.check_on(&p.ambient)?;
    let values = p
        .levi
        .elements
        .iter()
        .map(|&m| {
            let mut acc = CycloNumber::zero();
            for &u in &p.radical {
                acc += &f.values[p.ambient.position(g.mul(m, u)).expect("P lies in the ambient group")];
            }
            acc
        })
        .collect();
    Ok(ClassFunction { domain: p.levi.label.clone(), values })
}

/// The restriction divided by |U|.
pub fn normalized_restriction(g: &GlModel, p: &Parabolic, f: &ClassFunction) -> Result<ClassFunction> {
    Ok(parabolic_restriction(g, p, f)?.scale(&Rational::new(1.into(), (p.radical_order() as i64).into())))
}

pub fn check_stabilizes(g: &GlModel, p: &Parabolic, twisted: bool) -> Result<()> {
    if twisted && !(g.gamma_stable(&p.parabolic) && g.gamma_stable(&p.levi) && g.gamma_stable(&p.ambient)) {
        return Err(Error::TwistDoesNotStabilize);
    }
    Ok(())
}

/// For each (twisted) class representative a of the ambient group, how many
/// h send σ(h) a h⁻¹ into P with a given Levi component.
#[derive(Clone, Debug)]
pub struct InductionKernel {
    pub twisted: bool,
    pub classes: Classes,
    rows: Vec<Vec<(usize, u32)>>,
    p_order: usize,
    levi_label: String,
    ambient_label: String,
}

impl InductionKernel {
    pub fn new(g: &GlModel, p: &Parabolic, twisted: bool) -> Result<Self> {
        check_stabilizes(g, p, twisted)?;
        let classes = g.classes(&p.ambient, twisted)?;
        let rows = classes
            .reps
            .iter()
            .map(|&a| {
                let mut counts = vec![0u32; p.levi.order()];
                for &h in &p.ambient.elements {
                    if let Some(m) = p.levi_part(g.tconj(h, a, twisted)) {
                        counts[m] += 1;
                    }
                }
                counts.into_iter().enumerate().filter(|&(_, c)| c > 0).collect()
            })
            .collect();
        Ok(InductionKernel {
            twisted,
            classes,
            rows,
            p_order: p.parabolic.order(),
            levi_label: p.levi.label.clone(),
            ambient_label: p.ambient.label.clone(),
        })
    }

    /// Ind φ (a) = 1/|P| Σ_{h} φ̃(σ(h) a h⁻¹).
    pub fn apply(&self, phi: &ClassFunction) -> Result<ClassFunction> {
        if phi.domain != self.levi_label {
            return Err(Error::GroupMismatch);
        }
        let inv_p = Rational::new(1.into(), (self.p_order as i64).into());
        let per_class: Vec<CycloNumber> = self
            .rows
            .iter()
            .map(|row| {
                let mut acc = CycloNumber::zero();
                for &(m, c) in row {
                    if !phi.values[m].is_zero() {
                        acc += &phi.values[m].scale(&ri(c as i64));
                    }
                }
                acc.scale(&inv_p)
            })
            .collect();
        let values = self.classes.class_of.iter().map(|&c| per_class[c].clone()).collect();
        Ok(ClassFunction { domain: self.ambient_label.clone(), values })
    }

    /// Matrix of the map on class coordinates (ambient classes × Levi classes).
    pub fn class_matrix(&self, levi_classes: &Classes) -> Vec<Vec<Rational>> {
        let inv_p = Rational::new(1.into(), (self.p_order as i64).into());
        self.rows
            .iter()
            .map(|row| {
                let mut out = vec![Rational::zero(); levi_classes.len()];
                for &(m, c) in row {
                    out[levi_classes.class_of[m]] += ri(c as i64);
                }
                out.into_iter().map(|x| x * &inv_p).collect()
            })
            .collect()
    }
}

pub fn twisted_induction(g: &GlModel, p: &Parabolic, phi: &ClassFunction, twisted: bool) -> Result<ClassFunction> {
    InductionKernel::new(g, p, twisted)?.apply(phi)
}

/// Standard parabolics of proper Levis inside the Levi `ambient`; only
/// γ-stable ones when twisted.
pub fn proper_parabolics(g: &GlModel, ambient: &[usize], twisted: bool) -> Result<Vec<Parabolic>> {
    let mut out = Vec::new();
    for c in refinements(ambient) {
        if c.len() == ambient.len() {
            continue;
        }
        let p = g.parabolic(ambient, &c, false)?;
        if check_stabilizes(g, &p, twisted).is_ok() {
            out.push(p);
        }
    }
    Ok(out)
}

/// All proper-parabolic restrictions vanish.
pub fn is_cuspidal(g: &GlModel, ambient: &[usize], f: &ClassFunction, twisted: bool) -> Result<bool> {
    if f.domain != comp_label(ambient) {
        return Err(Error::GroupMismatch);
    }
    for p in proper_parabolics(g, ambient, twisted)? {
        if !parabolic_restriction(g, &p, f)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite::gl::build_gl;
    use crate::linalg::rat;

    #[test]
    fn basic_products() {
        let g = build_gl(2, 3).unwrap();
        let one = ClassFunction::constant(&g.whole, CycloNumber::one());
        assert_eq!(inner_product(&g.whole, &one, &one).unwrap(), CycloNumber::one());
        let mut delta = ClassFunction::zero(&g.whole);
        delta.values[g.identity] = CycloNumber::one();
        assert_eq!(inner_product(&g.whole, &delta, &delta).unwrap(), CycloNumber::from_rational(rat(1, 48)));
    }

    #[test]
    fn s3_characters() {
        // GL2(F2) ≅ S3 acting on the three nonzero vectors
        let g = build_gl(2, 2).unwrap();
        let cl = g.classes(&g.whole, false).unwrap();
        assert_eq!(cl.len(), 3);
        let order = |x: usize| {
            let mut y = x;
            let mut k = 1;
            while y != g.identity {
                y = g.mul(y, x);
                k += 1;
            }
            k
        };
        let chars: Vec<ClassFunction> = [[1, 1, 1], [1, -1, 1], [2, 0, -1]]
            .iter()
            .map(|t| {
                let values = (0..g.order()).map(|x| CycloNumber::from_int(t[[0, 0, 1, 2][order(x)]])).collect();
                ClassFunction { domain: "G".into(), values }
            })
            .collect();
        for (i, a) in chars.iter().enumerate() {
            for (j, b) in chars.iter().enumerate() {
                assert_eq!(inner_product(&g.whole, a, b).unwrap(), CycloNumber::from_int(i64::from(i == j)));
            }
        }
    }

    #[test]
    fn restriction_and_induction() {
        let g = build_gl(2, 2).unwrap();
        let b = g.borel().unwrap();
        let one = ClassFunction::constant(&g.whole, CycloNumber::one());
        let r = parabolic_restriction(&g, &b, &one).unwrap();
        assert!(r.values.iter().all(|v| *v == CycloNumber::from_int(2)));
        let ind = twisted_induction(&g, &b, &ClassFunction::constant(&b.levi, CycloNumber::one()), false).unwrap();
        assert_eq!(inner_product(&g.whole, &ind, &one).unwrap(), CycloNumber::one());
        assert!(!is_cuspidal(&g, &[2], &one, false).unwrap());
        let t = ClassFunction::constant(&b.levi, CycloNumber::from_int(3));
        assert!(is_cuspidal(&g, &[1, 1], &t, false).unwrap());
    }

    #[test]
    fn twist_must_stabilize() {
        let g = build_gl(3, 2).unwrap();
        let p = g.parabolic(&[3], &[2, 1], false).unwrap();
        assert_eq!(InductionKernel::new(&g, &p, true).unwrap_err(), Error::TwistDoesNotStabilize);
        assert!(InductionKernel::new(&g, &g.borel().unwrap(), true).is_ok());
    }
}
