use super::field::{Field, Scalar};
use super::space::{check_fields, GradedSpace};
use super::sparse::Vector;
use crate::error::{Error, Result};

/// A homogeneous linear map, stored column by column: `cols[j]` is the image
/// of the `j`-th source basis element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMap {
    source: GradedSpace,
    target: GradedSpace,
    degree: i64,
    cols: Vec<Vector>,
}

impl GradedMap {
    /// Builds a map, checking that every image is homogeneous of the right degree.
    pub fn new(
        source: GradedSpace,
        target: GradedSpace,
        degree: i64,
        cols: Vec<Vector>,
    ) -> Result<Self> {
        check_fields(source.field(), target.field())?;
        if cols.len() != source.dim() {
            return Err(Error::ShapeMismatch(format!(
                "{} columns for a source of dimension {}",
                cols.len(),
                source.dim()
            )));
        }
        for (j, col) in cols.iter().enumerate() {
            let expected = source.degree(j) + degree;
            for (&i, c) in col {
                if i >= target.dim() {
                    return Err(Error::ShapeMismatch(format!(
                        "row index {i} out of range for target of dimension {}",
                        target.dim()
                    )));
                }
                if c.field() != source.field() {
                    return Err(Error::FieldMismatch(c.field(), source.field()));
                }
                if target.degree(i) != expected {
                    return Err(Error::DegreeViolation {
                        element: source.name(j).to_string(),
                        degree,
                        expected,
                    });
                }
            }
        }
        Ok(GradedMap {
            source,
            target,
            degree,
            cols,
        })
    }

    /// Builds a map from a closure on source basis indices, dropping any
    /// component that would violate the degree.
    pub(crate) fn from_fn(
        source: &GradedSpace,
        target: &GradedSpace,
        degree: i64,
        mut f: impl FnMut(usize) -> Vector,
    ) -> Self {
        let cols = (0..source.dim()).map(&mut f).collect();
        GradedMap {
            source: source.clone(),
            target: target.clone(),
            degree,
            cols,
        }
    }

    pub fn zero(source: &GradedSpace, target: &GradedSpace, degree: i64) -> Self {
        GradedMap {
            source: source.clone(),
            target: target.clone(),
            degree,
            cols: vec![Vector::new(); source.dim()],
        }
    }

    pub fn identity(space: &GradedSpace) -> Self {
        let one = space.field().one();
        GradedMap {
            source: space.clone(),
            target: space.clone(),
            degree: 0,
            cols: (0..space.dim()).map(|j| Vector::basis(j, one.clone())).collect(),
        }
    }

    pub fn source(&self) -> &GradedSpace {
        &self.source
    }

    pub fn target(&self) -> &GradedSpace {
        &self.target
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn field(&self) -> Field {
        self.source.field()
    }

    pub fn column(&self, j: usize) -> &Vector {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[Vector] {
        &self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vector::is_zero)
    }

    pub fn entry(&self, row: usize, col: usize) -> Scalar {
        self.cols[col]
            .get(&row)
            .cloned()
            .unwrap_or_else(|| self.field().zero())
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        v.map_linear(|&j| self.cols[j].clone())
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GradedMap) -> Result<GradedMap> {
        if other.target != self.source {
            return Err(Error::ShapeMismatch(
                "composition: target of inner map differs from source of outer map".into(),
            ));
        }
        Ok(GradedMap {
            source: other.source.clone(),
            target: self.target.clone(),
            degree: self.degree + other.degree,
            cols: other.cols.iter().map(|c| self.apply(c)).collect(),
        })
    }

    fn check_same_shape(&self, other: &GradedMap) -> Result<()> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::ShapeMismatch("maps have different source or target".into()));
        }
        if self.degree != other.degree && !self.is_zero() && !other.is_zero() {
            return Err(Error::ShapeMismatch(format!(
                "adding maps of degrees {} and {}",
                self.degree, other.degree
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &GradedMap) -> Result<GradedMap> {
        self.check_same_shape(other)?;
        let degree = if self.is_zero() { other.degree } else { self.degree };
        Ok(GradedMap {
            source: self.source.clone(),
            target: self.target.clone(),
            degree,
            cols: self
                .cols
                .iter()
                .zip(&other.cols)
                .map(|(a, b)| {
                    let mut c = a.clone();
                    c.add_assign(b);
                    c
                })
                .collect(),
        })
    }

    pub fn sub(&self, other: &GradedMap) -> Result<GradedMap> {
        self.add(&other.scaled(&self.field().from_i64(-1)))
    }

    pub fn scaled(&self, c: &Scalar) -> GradedMap {
        GradedMap {
            source: self.source.clone(),
            target: self.target.clone(),
            degree: self.degree,
            cols: self.cols.iter().map(|v| v.scaled(c)).collect(),
        }
    }

    /// Nonzero entries as `(source index, target index, coefficient)`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> + '_ {
        self.cols
            .iter()
            .enumerate()
            .flat_map(|(j, col)| col.iter().map(move |(&i, c)| (j, i, c)))
    }
}

/// `f ⊗ g` with the Koszul rule `(f ⊗ g)(v ⊗ w) = (-1)^{|g||v|} f(v) ⊗ g(w)`.
pub fn koszul_tensor(f: &GradedMap, g: &GradedMap) -> Result<GradedMap> {
    check_fields(f.field(), g.field())?;
    let source = f.source.tensor(&g.source)?;
    let target = f.target.tensor(&g.target)?;
    let (dw, dw2) = (g.source.dim(), g.target.dim());
    let field = f.field();
    let mut cols = Vec::with_capacity(source.dim());
    for v in 0..f.source.dim() {
        let sign = field.sign(g.degree * f.source.degree(v));
        for w in 0..dw {
            let mut col = Vector::new();
            for (&a, ca) in f.column(v) {
                for (&b, cb) in g.column(w) {
                    col.add_term(a * dw2 + b, &(&(ca * cb) * &sign));
                }
            }
            cols.push(col);
        }
    }
    GradedMap::new(source, target, f.degree + g.degree, cols)
}

/// `n`-fold Koszul tensor product, left associated.
pub fn koszul_tensor_all(maps: &[&GradedMap]) -> Result<GradedMap> {
    let (first, rest) = maps
        .split_first()
        .ok_or_else(|| Error::ShapeMismatch("empty tensor product of maps".into()))?;
    rest.iter()
        .try_fold((*first).clone(), |acc, m| koszul_tensor(&acc, m))
}

/// `d(f) = d_{V'} ∘ f − (−1)^{|f|} f ∘ d_V`.
pub fn map_differential(f: &GradedMap, d_source: &GradedMap, d_target: &GradedMap) -> Result<GradedMap> {
    let left = d_target.compose(f)?;
    let right = f.compose(d_source)?;
    left.sub(&right.scaled(&f.field().sign(f.degree)))
}

/// A finite-dimensional cochain complex: differential of degree +1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    space: GradedSpace,
    d: GradedMap,
}

impl ChainComplex {
    pub fn new(d: GradedMap) -> Result<Self> {
        if d.source() != d.target() {
            return Err(Error::ShapeMismatch("differential must be an endomorphism".into()));
        }
        if d.degree() != 1 && !d.is_zero() {
            return Err(Error::ShapeMismatch(format!(
                "differential has degree {}, expected 1",
                d.degree()
            )));
        }
        let dd = d.compose(&d)?;
        if let Some((j, i, _)) = dd.entries().next() {
            return Err(Error::NotAComplex(format!(
                "d∘d({}) has a component on {}",
                d.source().name(j),
                d.source().name(i)
            )));
        }
        Ok(ChainComplex {
            space: d.source().clone(),
            d,
        })
    }

    pub fn with_zero_differential(space: &GradedSpace) -> Self {
        ChainComplex {
            space: space.clone(),
            d: GradedMap::zero(space, space, 1),
        }
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn differential(&self) -> &GradedMap {
        &self.d
    }
}

/// `SV` as a space: `(SV)^p = V^{p+1}`.
pub fn suspend_space(v: &GradedSpace) -> GradedSpace {
    v.shift(1)
}

/// `SV` as a complex, with `d_{SV} = −d_V`.
pub fn suspend(c: &ChainComplex) -> ChainComplex {
    let space = c.space.shift(1);
    let minus = c.space.field().from_i64(-1);
    let d = GradedMap::from_fn(&space, &space, 1, |j| c.d.column(j).scaled(&minus));
    ChainComplex { space, d }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space(basis: &[(&str, i64)]) -> GradedSpace {
        GradedSpace::new(Field::Rational, basis.iter().map(|&(n, d)| (n, d))).unwrap()
    }

    #[test]
    fn identity_tensor_identity_is_identity() {
        let v = space(&[("a", 1), ("b", 0)]);
        let w = space(&[("x", 1), ("y", 3)]);
        let t = koszul_tensor(&GradedMap::identity(&v), &GradedMap::identity(&w)).unwrap();
        assert_eq!(t, GradedMap::identity(&v.tensor(&w).unwrap()));
    }

    #[test]
    fn odd_map_past_odd_element_picks_up_sign() {
        let v = space(&[("v", 1)]);
        let w = space(&[("w", 0), ("w1", 1)]);
        let f = Field::Rational;
        let g = GradedMap::new(w.clone(), w.clone(), 1, vec![Vector::basis(1, f.one()), Vector::new()]).unwrap();
        let t = koszul_tensor(&GradedMap::identity(&v), &g).unwrap();
        // (1 ⊗ g)(v ⊗ w) = (-1)^{1·1} v ⊗ w1
        assert_eq!(t.entry(1, 0), f.from_i64(-1));
    }

    #[test]
    fn degree_violation_detected() {
        let v = space(&[("a", 0), ("b", 2)]);
        let f = Field::Rational;
        let err = GradedMap::new(v.clone(), v.clone(), 1, vec![Vector::basis(1, f.one()), Vector::new()]);
        assert!(matches!(err, Err(Error::DegreeViolation { .. })));
    }

    #[test]
    fn chain_map_has_zero_differential() {
        // d: a -> b, f = identity
        let v = space(&[("a", 0), ("b", 1)]);
        let f = Field::Rational;
        let d = GradedMap::new(v.clone(), v.clone(), 1, vec![Vector::basis(1, f.one()), Vector::new()]).unwrap();
        let id = GradedMap::identity(&v);
        assert!(map_differential(&id, &d, &d).unwrap().is_zero());
        // h: b -> a of degree -1 gives d(h) = dh + hd = id
        let h = GradedMap::new(v.clone(), v.clone(), -1, vec![Vector::new(), Vector::basis(0, f.one())]).unwrap();
        let dh = map_differential(&h, &d, &d).unwrap();
        assert_eq!(dh, id);
    }

    #[test]
    fn suspension_of_complex() {
        let v = space(&[("a", 0), ("b", 1)]);
        let f = Field::Rational;
        let d = GradedMap::new(v.clone(), v.clone(), 1, vec![Vector::basis(1, f.one()), Vector::new()]).unwrap();
        let c = ChainComplex::new(d).unwrap();
        let s = suspend(&c);
        assert_eq!(s.space().degree(0), -1);
        assert_eq!(s.differential().entry(1, 0), f.from_i64(-1));
        let ss = suspend(&s);
        assert_eq!(ss.differential().entry(1, 0), f.one());
        assert!(ChainComplex::new(ss.differential().clone()).is_ok());
    }
}
