use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::grlin::{word_index, Field, GradedMap, GradedSpace, Scalar, Tensor, Vector, Word};

/// A sparse multilinear operation `V^{⊗n} → W`: a table from input words of
/// basis indices to output vectors. Words absent from the table map to zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiOp {
    arity: usize,
    degree: i64,
    table: BTreeMap<Word, Vector>,
}

impl MultiOp {
    pub fn new(arity: usize, degree: i64) -> Self {
        MultiOp {
            arity,
            degree,
            table: BTreeMap::new(),
        }
    }

    pub fn from_entries(
        arity: usize,
        degree: i64,
        entries: impl IntoIterator<Item = (Word, Vector)>,
    ) -> Self {
        let mut op = MultiOp::new(arity, degree);
        for (w, v) in entries {
            op.add(w, &v);
        }
        op
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.table.is_empty()
    }

    /// Number of input words with a nonzero value.
    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn get(&self, word: &[usize]) -> Option<&Vector> {
        self.table.get(word)
    }

    pub fn apply(&self, word: &[usize]) -> Vector {
        self.table.get(word).cloned().unwrap_or_default()
    }

    /// Applies the operation to a combination of words of the right length.
    pub fn apply_tensor(&self, t: &Tensor) -> Vector {
        let mut out = Vector::new();
        for (w, c) in t {
            if let Some(v) = self.table.get(w) {
                out.add_scaled(v, c);
            }
        }
        out
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Word, &Vector)> + '_ {
        self.table.iter()
    }

    pub fn set(&mut self, word: Word, value: Vector) {
        assert_eq!(word.len(), self.arity, "word length must equal the arity");
        if value.is_zero() {
            self.table.remove(&word);
        } else {
            self.table.insert(word, value);
        }
    }

    pub fn add(&mut self, word: Word, value: &Vector) {
        self.add_scaled(word, value, None);
    }

    /// `self(word) += c · value`, with `c = 1` when `None`.
    pub fn add_scaled(&mut self, word: Word, value: &Vector, c: Option<&Scalar>) {
        assert_eq!(word.len(), self.arity, "word length must equal the arity");
        if value.is_zero() {
            return;
        }
        let slot = self.table.entry(word);
        match slot {
            std::collections::btree_map::Entry::Vacant(e) => {
                let v = match c {
                    Some(c) => value.scaled(c),
                    None => value.clone(),
                };
                if !v.is_zero() {
                    e.insert(v);
                }
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                match c {
                    Some(c) => e.get_mut().add_scaled(value, c),
                    None => e.get_mut().add_assign(value),
                }
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_op(&mut self, other: &MultiOp) {
        for (w, v) in &other.table {
            self.add(w.clone(), v);
        }
    }

    pub fn sub_op(&mut self, other: &MultiOp) {
        for (w, v) in &other.table {
            self.add(w.clone(), &v.negated());
        }
    }

    pub fn scaled(&self, c: &Scalar) -> MultiOp {
        MultiOp::from_entries(
            self.arity,
            self.degree,
            self.table.iter().map(|(w, v)| (w.clone(), v.scaled(c))),
        )
    }

    /// Keeps only the input words satisfying `keep`.
    pub fn filtered(&self, mut keep: impl FnMut(&[usize]) -> bool) -> MultiOp {
        MultiOp {
            arity: self.arity,
            degree: self.degree,
            table: self
                .table
                .iter()
                .filter(|(w, _)| keep(w))
                .map(|(w, v)| (w.clone(), v.clone()))
                .collect(),
        }
    }

    /// Output index ↦ list of (input word, coefficient).
    pub(crate) fn by_output(&self) -> HashMap<usize, Vec<(&Word, &Scalar)>> {
        let mut index: HashMap<usize, Vec<(&Word, &Scalar)>> = HashMap::new();
        for (w, v) in &self.table {
            for (&i, c) in v {
                index.entry(i).or_default().push((w, c));
            }
        }
        index
    }

    /// Checks that every entry is homogeneous of the stated degree, where
    /// `input_degree` and `output_degree` give degrees of basis indices.
    pub(crate) fn check_degrees(
        &self,
        input_degree: impl Fn(usize, usize) -> Option<i64>,
        output_degree: impl Fn(usize) -> Option<i64>,
        describe: impl Fn(&[usize]) -> String,
    ) -> Result<()> {
        for (w, v) in &self.table {
            let mut total = 0;
            for (pos, &x) in w.iter().enumerate() {
                total += input_degree(pos, x).ok_or_else(|| {
                    Error::ShapeMismatch(format!("input index {x} out of range"))
                })?;
            }
            let expected = total + self.degree;
            for &y in v.keys() {
                let d = output_degree(y).ok_or_else(|| {
                    Error::ShapeMismatch(format!("output index {y} out of range"))
                })?;
                if d != expected {
                    return Err(Error::DegreeViolation {
                        element: describe(w),
                        degree: self.degree,
                        expected,
                    });
                }
            }
        }
        Ok(())
    }

    /// Dense form as a map `source^{⊗n} → target`, where `source_power` is
    /// `source.tensor_power(n)`. Only sensible for small spaces.
    pub fn to_graded_map(
        &self,
        source: &GradedSpace,
        source_power: &GradedSpace,
        target: &GradedSpace,
        degree: i64,
    ) -> Result<GradedMap> {
        let mut cols = vec![Vector::new(); source_power.dim()];
        for (w, v) in &self.table {
            cols[word_index(w, source.dim())] = v.clone();
        }
        GradedMap::new(source_power.clone(), target.clone(), degree, cols)
    }
}

/// `out += coeff · outer ∘ (1^{⊗pos} ⊗ inner ⊗ 1^{⊗rest})`, the Koszul sign being
/// `(−1)^{|inner| · prefix_degree(prefix)}`.
pub(crate) fn insert_into(
    out: &mut MultiOp,
    outer: &MultiOp,
    pos: usize,
    inner: &MultiOp,
    inner_index: &HashMap<usize, Vec<(&Word, &Scalar)>>,
    prefix_degree: &impl Fn(&[usize]) -> i64,
    field: Field,
) {
    for (k, v) in outer.entries() {
        if k.len() <= pos {
            continue;
        }
        let Some(list) = inner_index.get(&k[pos]) else {
            continue;
        };
        let sign = field.sign(inner.degree() * prefix_degree(&k[..pos]));
        for (u, c) in list {
            let mut word = Vec::with_capacity(k.len() + u.len() - 1);
            word.extend_from_slice(&k[..pos]);
            word.extend_from_slice(u);
            word.extend_from_slice(&k[pos + 1..]);
            out.add_scaled(word, v, Some(&(*c * &sign)));
        }
    }
}

/// All compositions of `n` into positive parts, in lexicographic order.
pub fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in compositions(n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// All words of length `n` over `0..dim` whose letters satisfy `allowed`,
/// optionally with total weight at most `max_weight` where `weight` gives the
/// weight of each letter.
pub fn words(
    dim: usize,
    n: usize,
    weight: impl Fn(usize) -> i64,
    max_weight: Option<i64>,
) -> Vec<Word> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(n);
    fn go(
        dim: usize,
        n: usize,
        weight: &impl Fn(usize) -> i64,
        max_weight: Option<i64>,
        acc: i64,
        current: &mut Word,
        out: &mut Vec<Word>,
    ) {
        if current.len() == n {
            if max_weight.map_or(true, |m| acc <= m) {
                out.push(current.clone());
            }
            return;
        }
        for x in 0..dim {
            current.push(x);
            go(dim, n, weight, max_weight, acc + weight(x), current, out);
            current.pop();
        }
    }
    go(dim, n, &weight, max_weight, 0, &mut current, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compositions_count() {
        assert_eq!(compositions(4).len(), 8);
        assert_eq!(compositions(3)[1], vec![1, 2]);
        assert_eq!(compositions(0), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn words_with_weight_bound() {
        let w = words(3, 2, |x| x as i64, Some(1));
        assert_eq!(w, vec![vec![0, 0], vec![0, 1], vec![1, 0]]);
        assert_eq!(words(2, 0, |_| 0, None), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn cancellation_removes_words() {
        let f = Field::Rational;
        let mut op = MultiOp::new(1, 0);
        op.add(vec![0], &Vector::basis(1, f.one()));
        op.add(vec![0], &Vector::basis(1, f.from_i64(-1)));
        assert!(op.is_zero());
    }
}
