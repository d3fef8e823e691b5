//! Unipotent orbits of GL_n(F_q) by Jordan type and induction of Levi
//! unipotent orbits through standard parabolics.

use num_traits::Zero;
use serde::Serialize;

use super::class_fn::{ClassFunction, InductionKernel};
use super::gl::{dominated, partitions, refinements, GlModel};
use crate::error::Result;
use crate::linalg::{fmt_rational, CycloNumber, Rational};

#[derive(Clone, Debug, Serialize)]
pub struct UnipotentOrbit {
    pub jordan_type: Vec<usize>,
    pub size: usize,
    pub centralizer: usize,
}

/// Orbits by Jordan type, smallest (identity) first in dominance order.
pub fn unipotent_orbits(g: &GlModel) -> Vec<UnipotentOrbit> {
    let mut out: Vec<UnipotentOrbit> = partitions(g.n)
        .into_iter()
        .rev()
        .map(|t| UnipotentOrbit { jordan_type: t, size: 0, centralizer: 0 })
        .collect();
    for x in 0..g.order() {
        if let Some(t) = g.jordan_type(x) {
            let o = out.iter_mut().find(|o| o.jordan_type == t).expect("Jordan type is a partition");
            if o.size == 0 {
                o.centralizer = g.centralizer_order(x);
            }
            o.size += 1;
        }
    }
    out
}

/// Coefficients of Ind_M 1_{O'} on each G-orbit O.
#[derive(Clone, Debug, Serialize)]
pub struct InducedOrbit {
    pub levi: String,
    /// G-Jordan type of the Levi orbit O'.
    pub source: Vec<usize>,
    pub source_size: usize,
    /// |O'U ∩ O| per G-orbit.
    pub intersections: Vec<usize>,
    /// |Z_G(u_O)| / |P| · |O'U ∩ O|.
    pub coefficients: Vec<String>,
    /// Nonzero intersection only with orbits whose closure contains O'.
    pub triangular: bool,
    /// The coefficient on the G-saturation of O' is nonzero.
    pub diagonal_nonzero: bool,
    /// The formula agrees with direct induction.
    pub matches_induction: bool,
}

pub fn induced_orbit_decomposition(g: &GlModel, comp: &[usize]) -> Result<Vec<InducedOrbit>> {
    let orbits = unipotent_orbits(g);
    let p = g.parabolic(&[g.n], comp, false)?;
    let m_classes = g.classes(&p.levi, false)?;
    let kernel = InductionKernel::new(g, &p, false)?;
    let mut out = Vec::new();
    for (k, &rep) in m_classes.reps.iter().enumerate() {
        let Some(source) = g.jordan_type(rep) else { continue };
        let mut inter = vec![0usize; orbits.len()];
        for &pos in &m_classes.members[k] {
            let m = p.levi.elements[pos];
            for &u in &p.radical {
                let t = g.jordan_type(g.mul(m, u)).expect("O'U is unipotent");
                inter[orbits.iter().position(|o| o.jordan_type == t).unwrap()] += 1;
            }
        }
        let coefficients: Vec<Rational> = orbits
            .iter()
            .zip(&inter)
            .map(|(o, &c)| Rational::new(((o.centralizer * c) as i64).into(), (p.parabolic.order() as i64).into()))
            .collect();
        let triangular = orbits.iter().zip(&inter).all(|(o, &c)| c == 0 || dominated(&source, &o.jordan_type));
        let diag = orbits.iter().position(|o| o.jordan_type == source).unwrap();
        let induced = kernel.apply(&ClassFunction::class_indicator(&p.levi, &m_classes, k))?;
        let matches = (0..g.order()).all(|x| {
            let expect = match g.jordan_type(x) {
                Some(t) => coefficients[orbits.iter().position(|o| o.jordan_type == t).unwrap()].clone(),
                None => Rational::zero(),
            };
            induced.values[x] == CycloNumber::from_rational(expect)
        });
        out.push(InducedOrbit {
            levi: p.levi.label.clone(),
            source,
            source_size: m_classes.members[k].len(),
            intersections: inter,
            diagonal_nonzero: !coefficients[diag].is_zero(),
            coefficients: coefficients.iter().map(fmt_rational).collect(),
            triangular,
            matches_induction: matches,
        });
    }
    Ok(out)
}

/// Decompositions for every proper standard Levi.
pub fn all_induced_orbits(g: &GlModel) -> Result<Vec<InducedOrbit>> {
    let mut out = Vec::new();
    for comp in refinements(&[g.n]) {
        if comp.len() > 1 {
            out.extend(induced_orbit_decomposition(g, &comp)?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite::gl::build_gl;

    #[test]
    fn orbit_counts() {
        let g = build_gl(3, 2).unwrap();
        let o = unipotent_orbits(&g);
        assert_eq!(o.len(), 3);
        // q^{n(n-1)} unipotent elements
        assert_eq!(o.iter().map(|x| x.size).sum::<usize>(), 64);
        assert_eq!(o[0].jordan_type, vec![1, 1, 1]);
    }

    #[test]
    fn gl2_torus_orbit() {
        let g = build_gl(2, 3).unwrap();
        let d = induced_orbit_decomposition(&g, &[1, 1]).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].intersections, vec![1, 2]);
        assert!(d[0].coefficients.iter().all(|c| c != "0"));
        assert!(d[0].triangular && d[0].diagonal_nonzero && d[0].matches_induction);
    }

    #[test]
    fn gl3_all_levis() {
        for q in [2, 3] {
            let g = build_gl(3, q).unwrap();
            let all = all_induced_orbits(&g).unwrap();
            assert!(all.iter().all(|d| d.triangular && d.diagonal_nonzero && d.matches_induction));
        }
    }
}
