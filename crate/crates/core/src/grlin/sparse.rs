//! Sparse linear combinations keyed by basis labels.

use std::collections::btree_map::{self, BTreeMap};

use super::field::{Field, Scalar};

/// A finite linear combination `Σ c_k · k`. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Sparse<K: Ord> {
    terms: BTreeMap<K, Scalar>,
}

/// A vector in a graded space, keyed by basis index.
pub type Vector = Sparse<usize>;

/// A word of basis indices, i.e. a basis tensor of a tensor power.
pub type Word = Vec<usize>;

/// An element of a tensor power (or of a tensor coalgebra), keyed by words.
pub type Tensor = Sparse<Word>;

impl<K: Ord> Default for Sparse<K> {
    fn default() -> Self {
        Sparse {
            terms: BTreeMap::new(),
        }
    }
}

impl<K: Ord + Clone> Sparse<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn basis(key: K, coeff: Scalar) -> Self {
        let mut v = Self::new();
        v.add_term(key, &coeff);
        v
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn get(&self, key: &K) -> Option<&Scalar> {
        self.terms.get(key)
    }

    pub fn iter(&self) -> btree_map::Iter<'_, K, Scalar> {
        self.terms.iter()
    }

    pub fn keys(&self) -> btree_map::Keys<'_, K, Scalar> {
        self.terms.keys()
    }

    /// The smallest key with a nonzero coefficient.
    pub fn leading(&self) -> Option<(&K, &Scalar)> {
        self.terms.iter().next()
    }

    pub fn add_term(&mut self, key: K, coeff: &Scalar) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            btree_map::Entry::Vacant(e) => {
                e.insert(coeff.clone());
            }
            btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += c · other`.
    pub fn add_scaled(&mut self, other: &Self, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let unit = c.is_one();
        for (k, v) in &other.terms {
            if unit {
                self.add_term(k.clone(), v);
            } else {
                self.add_term(k.clone(), &(v * c));
            }
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v);
        }
    }

    pub fn sub_assign(&mut self, other: &Self) {
        for (k, v) in &other.terms {
            self.add_term(k.clone(), &-v);
        }
    }

    pub fn scaled(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::new();
        }
        Sparse {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    pub fn negated(&self) -> Self {
        Sparse {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), -v)).collect(),
        }
    }

    pub fn remove(&mut self, key: &K) -> Option<Scalar> {
        self.terms.remove(key)
    }

    /// Applies a linear map given on basis keys.
    pub fn map_linear<L: Ord + Clone>(&self, mut f: impl FnMut(&K) -> Sparse<L>) -> Sparse<L> {
        let mut out = Sparse::new();
        for (k, c) in &self.terms {
            out.add_scaled(&f(k), c);
        }
        out
    }

    /// Keeps only the terms whose key satisfies `keep`.
    pub fn filtered(&self, mut keep: impl FnMut(&K) -> bool) -> Self {
        Sparse {
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| keep(k))
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        }
    }
}

impl<K: Ord + Clone> FromIterator<(K, Scalar)> for Sparse<K> {
    fn from_iter<I: IntoIterator<Item = (K, Scalar)>>(iter: I) -> Self {
        let mut v = Sparse::new();
        for (k, c) in iter {
            v.add_term(k, &c);
        }
        v
    }
}

impl<'a, K: Ord> IntoIterator for &'a Sparse<K> {
    type Item = (&'a K, &'a Scalar);
    type IntoIter = btree_map::Iter<'a, K, Scalar>;
    fn into_iter(self) -> Self::IntoIter {
        self.terms.iter()
    }
}

impl<K: Ord> IntoIterator for Sparse<K> {
    type Item = (K, Scalar);
    type IntoIter = btree_map::IntoIter<K, Scalar>;
    fn into_iter(self) -> Self::IntoIter {
        self.terms.into_iter()
    }
}

/// Tensor product of vectors, `v_1 ⊗ ... ⊗ v_n`, with no sign. The empty
/// product is the empty word.
pub fn tensor_of(field: Field, vectors: &[&Vector]) -> Tensor {
    let mut acc = Tensor::basis(Vec::new(), field.one());
    for v in vectors {
        let mut next = Tensor::new();
        for (w, c) in &acc {
            for (k, d) in *v {
                let mut w2 = Vec::with_capacity(w.len() + 1);
                w2.extend_from_slice(w);
                w2.push(*k);
                next.add_term(w2, &(c * d));
            }
        }
        if next.is_zero() {
            return next;
        }
        acc = next;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancellation_removes_terms() {
        let f = Field::Rational;
        let mut v = Vector::basis(3, f.one());
        v.add_term(3, &f.from_i64(-1));
        assert!(v.is_zero());
    }

    #[test]
    fn tensor_of_expands_products() {
        let f = Field::Rational;
        let mut a = Vector::basis(0, f.one());
        a.add_term(1, &f.from_i64(2));
        let b = Vector::basis(5, f.from_i64(3));
        let t = tensor_of(f, &[&a, &b]);
        assert_eq!(t.len(), 2);
        assert_eq!(t.get(&vec![1, 5]), Some(&f.from_i64(6)));
    }
}
