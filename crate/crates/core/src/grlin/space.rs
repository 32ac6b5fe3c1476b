use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use super::field::Field;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasisElement {
    pub name: String,
    pub degree: i64,
}

#[derive(Debug, PartialEq, Eq)]
struct SpaceInner {
    field: Field,
    basis: Vec<BasisElement>,
    index: HashMap<String, usize>,
}

/// A finite-dimensional ℤ-graded space with a named, homogeneous basis.
///
/// Cloning is cheap; the basis is shared.
#[derive(Clone)]
pub struct GradedSpace(Arc<SpaceInner>);

impl PartialEq for GradedSpace {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.field == other.0.field && self.0.basis == other.0.basis)
    }
}

impl Eq for GradedSpace {}

impl fmt::Debug for GradedSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GradedSpace")
            .field("field", &self.0.field)
            .field("basis", &self.0.basis)
            .finish()
    }
}

impl GradedSpace {
    pub fn new<S: Into<String>>(
        field: Field,
        basis: impl IntoIterator<Item = (S, i64)>,
    ) -> Result<Self> {
        let basis: Vec<BasisElement> = basis
            .into_iter()
            .map(|(name, degree)| BasisElement {
                name: name.into(),
                degree,
            })
            .collect();
        let mut index = HashMap::with_capacity(basis.len());
        for (i, b) in basis.iter().enumerate() {
            if index.insert(b.name.clone(), i).is_some() {
                return Err(Error::DuplicateBasis(b.name.clone()));
            }
        }
        Ok(GradedSpace(Arc::new(SpaceInner {
            field,
            basis,
            index,
        })))
    }

    pub fn zero(field: Field) -> Self {
        Self::new::<String>(field, []).expect("empty basis is valid")
    }

    /// The ground field as a graded space concentrated in degree 0.
    pub fn ground(field: Field, name: &str) -> Self {
        Self::new(field, [(name, 0)]).expect("single basis element")
    }

    pub fn field(&self) -> Field {
        self.0.field
    }

    pub fn dim(&self) -> usize {
        self.0.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.basis.is_empty()
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.0.basis
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.0.basis[i].degree
    }

    pub fn name(&self, i: usize) -> &str {
        &self.0.basis[i].name
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.index.get(name).copied()
    }

    pub fn require(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| Error::UnknownBasis(name.to_string()))
    }

    /// Basis indices grouped by degree, in increasing degree.
    pub fn by_degree(&self) -> BTreeMap<i64, Vec<usize>> {
        let mut out: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for (i, b) in self.0.basis.iter().enumerate() {
            out.entry(b.degree).or_default().push(i);
        }
        out
    }

    /// Dimension of each nonzero degree.
    pub fn dimensions(&self) -> BTreeMap<i64, usize> {
        self.by_degree()
            .into_iter()
            .map(|(d, v)| (d, v.len()))
            .collect()
    }

    /// `S^k V`: degrees lowered by `k`, names prefixed by `k` suspension
    /// markers (`s`) or, for negative `k`, desuspension markers (`d`).
    pub fn shift(&self, k: i64) -> Self {
        let marker = if k >= 0 { "s" } else { "d" }.repeat(k.unsigned_abs() as usize);
        Self::new(
            self.field(),
            self.basis()
                .iter()
                .map(|b| (format!("{marker}{}", b.name), b.degree - k)),
        )
        .expect("shift preserves uniqueness")
    }

    /// `V ⊗ W`; basis element `(i, j)` sits at index `i * dim W + j`.
    pub fn tensor(&self, other: &GradedSpace) -> Result<Self> {
        check_fields(self.field(), other.field())?;
        let mut basis = Vec::with_capacity(self.dim() * other.dim());
        for a in self.basis() {
            for b in other.basis() {
                basis.push((format!("{}⊗{}", a.name, b.name), a.degree + b.degree));
            }
        }
        Self::new(self.field(), basis)
    }

    /// `V^{⊗n}`, left-associated; index of word `(i_1, ..., i_n)` is its
    /// base-`dim V` expansion.
    pub fn tensor_power(&self, n: usize) -> Self {
        let mut acc = GradedSpace::new(self.field(), [("1", 0)]).unwrap();
        for k in 0..n {
            acc = if k == 0 {
                self.clone()
            } else {
                acc.tensor(self).unwrap()
            };
        }
        acc
    }

    /// Direct sum, with names of the second summand kept as is. Fails on
    /// name clashes.
    pub fn direct_sum(&self, other: &GradedSpace) -> Result<Self> {
        check_fields(self.field(), other.field())?;
        Self::new(
            self.field(),
            self.basis()
                .iter()
                .chain(other.basis())
                .map(|b| (b.name.clone(), b.degree)),
        )
    }
}

pub(crate) fn check_fields(a: Field, b: Field) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::FieldMismatch(a, b))
    }
}

/// Index of a word in `V^{⊗n}` as laid out by [`GradedSpace::tensor_power`].
pub fn word_index(word: &[usize], dim: usize) -> usize {
    word.iter().fold(0, |acc, &i| acc * dim + i)
}

/// Inverse of [`word_index`].
pub fn index_word(mut index: usize, dim: usize, n: usize) -> Vec<usize> {
    let mut w = vec![0; n];
    for slot in w.iter_mut().rev() {
        *slot = index % dim;
        index /= dim;
    }
    w
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duplicate_names_rejected() {
        let r = GradedSpace::new(Field::Rational, [("x", 0), ("x", 1)]);
        assert_eq!(r.unwrap_err(), Error::DuplicateBasis("x".into()));
    }

    #[test]
    fn suspension_lowers_degree() {
        let v = GradedSpace::new(Field::Rational, [("x", 0), ("y", 2)]).unwrap();
        let sv = v.shift(1);
        assert_eq!(sv.degree(0), -1);
        assert_eq!(sv.degree(1), 1);
        assert_eq!(sv.name(1), "sy");
        let ssv = sv.shift(1);
        assert_eq!(ssv.degree(0), -2);
    }

    #[test]
    fn tensor_power_layout() {
        let v = GradedSpace::new(Field::Rational, [("x", 1), ("y", 0)]).unwrap();
        let v3 = v.tensor_power(3);
        assert_eq!(v3.dim(), 8);
        let idx = word_index(&[0, 1, 0], 2);
        assert_eq!(v3.name(idx), "x⊗y⊗x");
        assert_eq!(v3.degree(idx), 2);
        assert_eq!(index_word(idx, 2, 3), vec![0, 1, 0]);
        assert_eq!(v.tensor_power(0).dim(), 1);
    }
}
