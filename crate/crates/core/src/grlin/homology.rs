//! Homology of finite complexes together with an explicit deformation retract.

use super::linalg::{reduce_columns, solve, Echelon};
use super::map::{map_differential, ChainComplex, GradedMap};
use super::space::GradedSpace;
use super::sparse::Vector;
use crate::error::{Error, Result};

/// A deformation retract of a complex onto its homology:
/// `p∘i = 1`, `i∘p = 1 + d(h)`, `h∘h = 0`, `h∘i = 0`, `p∘h = 0`.
#[derive(Clone, Debug)]
pub struct ContractionData {
    pub complex: ChainComplex,
    /// Homology, with zero differential.
    pub homology: GradedSpace,
    pub p: GradedMap,
    pub i: GradedMap,
    pub h: GradedMap,
}

impl ContractionData {
    /// The identity contraction of a complex with zero differential.
    pub fn trivial(complex: &ChainComplex) -> Result<Self> {
        if !complex.differential().is_zero() {
            return Err(Error::ContractionFailed(
                "trivial contraction needs a zero differential".into(),
            ));
        }
        let space = complex.space();
        Ok(ContractionData {
            complex: complex.clone(),
            homology: space.clone(),
            p: GradedMap::identity(space),
            i: GradedMap::identity(space),
            h: GradedMap::zero(space, space, -1),
        })
    }

    /// Checks all five identities exactly; the error names the first failure.
    pub fn verify(&self) -> Result<()> {
        let d = self.complex.differential();
        let hs = &self.homology;
        let fail = |what: &str| Err(Error::ContractionFailed(what.to_string()));
        if self.p.source() != self.complex.space()
            || self.p.target() != hs
            || self.i.source() != hs
            || self.i.target() != self.complex.space()
            || self.h.source() != self.complex.space()
            || self.h.target() != self.complex.space()
        {
            return fail("maps have the wrong shape");
        }
        if self.p.degree() != 0 || self.i.degree() != 0 || (self.h.degree() != -1 && !self.h.is_zero()) {
            return fail("p and i must have degree 0 and h degree -1");
        }
        if !d.compose(&self.i)?.is_zero() {
            return fail("i is not a chain map");
        }
        if !self.p.compose(d)?.is_zero() {
            return fail("p is not a chain map");
        }
        if self.p.compose(&self.i)? != GradedMap::identity(hs) {
            return fail("p∘i ≠ 1");
        }
        let ip = self.i.compose(&self.p)?;
        let dh = map_differential(&self.h, d, d)?;
        let rhs = GradedMap::identity(self.complex.space()).add(&dh)?;
        if ip != rhs {
            return fail("i∘p ≠ 1 + d(h)");
        }
        if !self.h.compose(&self.h)?.is_zero() {
            return fail("h∘h ≠ 0");
        }
        if !self.h.compose(&self.i)?.is_zero() {
            return fail("h∘i ≠ 0");
        }
        if !self.p.compose(&self.h)?.is_zero() {
            return fail("p∘h ≠ 0");
        }
        Ok(())
    }
}

/// Computes `H*(C)` degree by degree and a contraction satisfying the side
/// conditions.
pub fn homology_with_contraction(c: &ChainComplex) -> Result<ContractionData> {
    homology_with_contraction_preferring(c, &[])
}

/// As [`homology_with_contraction`], but cycles in `preferred` are used as
/// homology representatives whenever they are independent modulo boundaries
/// and the representatives chosen so far. Non-cycles and inhomogeneous
/// vectors are ignored.
pub fn homology_with_contraction_preferring(
    c: &ChainComplex,
    preferred: &[Vector],
) -> Result<ContractionData> {
    let space = c.space();
    let field = space.field();
    let d = c.differential();
    let by_degree = space.by_degree();

    // For each degree: the chosen complement L (source indices with
    // independent images) and the homology representatives.
    struct DegreeData {
        indices: Vec<usize>,
        complement: Vec<usize>,
        cycles: Vec<Vector>,
    }
    let mut data = std::collections::BTreeMap::new();
    for (&k, indices) in &by_degree {
        let columns: Vec<Vector> = indices.iter().map(|&j| d.column(j).clone()).collect();
        let red = reduce_columns(field, &columns);
        let cycles = red
            .kernel
            .iter()
            .map(|v| v.map_linear(|&t| Vector::basis(indices[t], field.one())))
            .collect();
        let complement = red.independent.iter().map(|&t| indices[t]).collect();
        data.insert(
            k,
            DegreeData {
                indices: indices.clone(),
                complement,
                cycles,
            },
        );
    }

    let mut homology_basis: Vec<(String, i64)> = Vec::new();
    let mut representatives: Vec<Vector> = Vec::new();
    let mut p_cols = vec![Vector::new(); space.dim()];
    let mut h_cols = vec![Vector::new(); space.dim()];

    for (&k, dd) in &data {
        // Boundaries B^k = d(L^{k-1}), with their chosen preimages.
        let below = data.get(&(k - 1));
        let preimages: Vec<usize> = below.map(|b| b.complement.clone()).unwrap_or_default();
        let boundaries: Vec<Vector> = preimages.iter().map(|&j| d.column(j).clone()).collect();

        let mut span = Echelon::from_vectors(&boundaries);
        let mut reps: Vec<Vector> = Vec::new();
        let in_degree = |v: &Vector| v.keys().all(|&i| space.degree(i) == k);
        for v in preferred.iter().filter(|v| !v.is_zero() && in_degree(v)) {
            if d.apply(v).is_zero() && span.insert(v.clone()) {
                reps.push(v.clone());
            }
        }
        for v in &dd.cycles {
            if span.insert(v.clone()) {
                reps.push(v.clone());
            }
        }
        let complement: Vec<Vector> = dd
            .complement
            .iter()
            .map(|&j| Vector::basis(j, field.one()))
            .collect();
        if boundaries.len() + reps.len() + complement.len() != dd.indices.len() {
            return Err(Error::NotAComplex(format!(
                "dimension count fails in degree {k}"
            )));
        }

        let first_rep = representatives.len();
        for (t, r) in reps.iter().enumerate() {
            let name = match single_basis(r) {
                Some(j) if r.get(&j).is_some_and(|c| c.is_one()) => space.name(j).to_string(),
                _ => format!("h{k}_{t}"),
            };
            homology_basis.push((name, k));
            representatives.push(r.clone());
        }

        // Express each basis element of C^k in the adapted basis B ∪ H ∪ L.
        let adapted: Vec<Vector> = boundaries
            .iter()
            .chain(&reps)
            .chain(&complement)
            .cloned()
            .collect();
        let nb = boundaries.len();
        let nr = reps.len();
        for &j in &dd.indices {
            let coords = solve(&adapted, &Vector::basis(j, field.one())).ok_or_else(|| {
                Error::NotAComplex(format!("adapted basis fails to span degree {k}"))
            })?;
            let mut pv = Vector::new();
            let mut hv = Vector::new();
            for (&t, coef) in &coords {
                if t < nb {
                    // b_t = d(l_t), and h(b_t) = −l_t.
                    hv.add_term(preimages[t], &-coef);
                } else if t < nb + nr {
                    pv.add_term(first_rep + (t - nb), coef);
                }
            }
            p_cols[j] = pv;
            h_cols[j] = hv;
        }
    }

    // Homology names can clash when a representative is a basis element whose
    // name coincides with a generated one; fall back to generated names.
    let homology = match GradedSpace::new(field, homology_basis.clone()) {
        Ok(h) => h,
        Err(_) => GradedSpace::new(
            field,
            homology_basis
                .iter()
                .enumerate()
                .map(|(t, (_, k))| (format!("h{k}_{t}"), *k)),
        )?,
    };
    let i = GradedMap::new(homology.clone(), space.clone(), 0, representatives)?;
    let p = GradedMap::new(space.clone(), homology.clone(), 0, p_cols)?;
    let h = GradedMap::new(space.clone(), space.clone(), -1, h_cols)?;
    Ok(ContractionData {
        complex: c.clone(),
        homology,
        p,
        i,
        h,
    })
}

/// Dimensions of `H^k(C)` for every degree `k` of `C`, from ranks alone.
pub fn homology_dimensions(c: &ChainComplex) -> std::collections::BTreeMap<i64, usize> {
    let d = c.differential();
    let by_degree = c.space().by_degree();
    let ranks: std::collections::BTreeMap<i64, usize> = by_degree
        .iter()
        .map(|(&k, idx)| {
            let cols: Vec<Vector> = idx.iter().map(|&j| d.column(j).clone()).collect();
            (k, super::linalg::rank(&cols))
        })
        .collect();
    by_degree
        .iter()
        .map(|(&k, idx)| {
            let incoming = ranks.get(&(k - 1)).copied().unwrap_or(0);
            (k, idx.len() - ranks[&k] - incoming)
        })
        .collect()
}

fn single_basis(v: &Vector) -> Option<usize> {
    if v.len() == 1 {
        v.leading().map(|(&j, _)| j)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grlin::Field;

    fn complex(basis: &[(&str, i64)], d: &[(usize, usize, i64)]) -> ChainComplex {
        let f = Field::Rational;
        let space = GradedSpace::new(f, basis.iter().map(|&(n, k)| (n, k))).unwrap();
        let mut cols = vec![Vector::new(); space.dim()];
        for &(j, i, c) in d {
            cols[j].add_term(i, &f.from_i64(c));
        }
        ChainComplex::new(GradedMap::new(space.clone(), space, 1, cols).unwrap()).unwrap()
    }

    #[test]
    fn zero_differential_gives_identity_retract() {
        let c = complex(&[("a", 0), ("b", 1), ("c", 1)], &[]);
        let ct = homology_with_contraction(&c).unwrap();
        ct.verify().unwrap();
        assert_eq!(ct.homology.dim(), 3);
        assert_eq!(ct.p, GradedMap::identity(c.space()));
        assert!(ct.h.is_zero());
    }

    #[test]
    fn acyclic_two_term_complex() {
        let c = complex(&[("a", 0), ("b", 1)], &[(0, 1, 1)]);
        let ct = homology_with_contraction(&c).unwrap();
        ct.verify().unwrap();
        assert_eq!(ct.homology.dim(), 0);
        // h = −d^{-1} on b, so that 0 = i∘p = 1 + dh + hd.
        assert_eq!(ct.h.entry(0, 1), Field::Rational.from_i64(-1));
    }

    #[test]
    fn mixed_complex() {
        // a -> b + c, b -> e, c -> -e, plus an isolated g
        let c = complex(
            &[("a", 0), ("b", 1), ("c", 1), ("e", 2), ("g", 1)],
            &[(0, 1, 1), (0, 2, 1), (1, 3, 1), (2, 3, -1)],
        );
        let ct = homology_with_contraction(&c).unwrap();
        ct.verify().unwrap();
        assert_eq!(ct.homology.dimensions().get(&1), Some(&1));
        assert_eq!(ct.homology.dim(), 1);
        assert_eq!(ct.homology.name(0), "g");
    }

    #[test]
    fn preferred_representatives_are_used() {
        let c = complex(&[("x", 0), ("y", 0)], &[]);
        let f = Field::Rational;
        let pref: Vector = [(0, f.one()), (1, f.one())].into_iter().collect();
        let ct = homology_with_contraction_preferring(&c, &[pref.clone()]).unwrap();
        ct.verify().unwrap();
        assert_eq!(ct.i.column(0), &pref);
    }
}
