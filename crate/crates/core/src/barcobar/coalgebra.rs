use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::grlin::{Field, GradedMap, GradedSpace, Tensor, Vector, Word};

/// A coaugmented dg coalgebra on a finite basis.
///
/// The basis contains the coaugmentation `1` (index `unit`); the counit is
/// the dual of that element. `length` is an exhaustive filtration (tensor
/// length for subcoalgebras of tensor coalgebras) with the reduced
/// coproduct strictly lowering it, which is what makes the coalgebra
/// cocomplete. When the basis consists of words in some space, `words`
/// records them.
#[derive(Clone, Debug)]
pub struct DgCoalgebra {
    space: GradedSpace,
    delta: Vec<Tensor>,
    d: GradedMap,
    unit: usize,
    length: Vec<usize>,
    words: Option<(Vec<Word>, HashMap<Word, usize>)>,
}

impl DgCoalgebra {
    pub fn new(
        space: GradedSpace,
        delta: Vec<Tensor>,
        d: GradedMap,
        unit: usize,
        length: Vec<usize>,
    ) -> Result<Self> {
        let n = space.dim();
        if delta.len() != n || length.len() != n || unit >= n {
            return Err(Error::ShapeMismatch("coalgebra tables have the wrong size".into()));
        }
        if d.source() != &space || d.target() != &space || (d.degree() != 1 && !d.is_zero()) {
            return Err(Error::ShapeMismatch("differential must be a degree 1 endomorphism".into()));
        }
        if space.degree(unit) != 0 || length[unit] != 0 {
            return Err(Error::ShapeMismatch("coaugmentation must have degree and length 0".into()));
        }
        for (j, t) in delta.iter().enumerate() {
            for (w, _) in t {
                if w.len() != 2 || w.iter().any(|&x| x >= n) {
                    return Err(Error::ShapeMismatch(format!("bad coproduct term on {}", space.name(j))));
                }
                if space.degree(w[0]) + space.degree(w[1]) != space.degree(j) {
                    return Err(Error::DegreeViolation {
                        element: space.name(j).to_string(),
                        degree: space.degree(w[0]) + space.degree(w[1]),
                        expected: space.degree(j),
                    });
                }
            }
        }
        let c = DgCoalgebra {
            space,
            delta,
            d,
            unit,
            length,
            words: None,
        };
        if let Some(j) = c.counit_failure() {
            return Err(Error::ShapeMismatch(format!(
                "counit law fails on {}",
                c.space.name(j)
            )));
        }
        Ok(c)
    }

    pub(crate) fn with_words(mut self, words: Vec<Word>) -> Self {
        let index = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        self.words = Some((words, index));
        self
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn field(&self) -> Field {
        self.space.field()
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn delta(&self, j: usize) -> &Tensor {
        &self.delta[j]
    }

    pub fn differential(&self) -> &GradedMap {
        &self.d
    }

    pub fn length(&self, j: usize) -> usize {
        self.length[j]
    }

    pub fn max_length(&self) -> usize {
        self.length.iter().copied().max().unwrap_or(0)
    }

    /// The counit as a covector: 1 on the coaugmentation, 0 elsewhere.
    pub fn counit(&self) -> Vector {
        Vector::basis(self.unit, self.field().one())
    }

    /// The word a basis element stands for, if the basis is made of words.
    pub fn word(&self, j: usize) -> Option<&Word> {
        self.words.as_ref().map(|(w, _)| &w[j])
    }

    pub fn index_of_word(&self, w: &[usize]) -> Option<usize> {
        self.words.as_ref().and_then(|(_, idx)| idx.get(w).copied())
    }

    /// `Δ` applied to a vector.
    pub fn delta_of(&self, v: &Vector) -> Tensor {
        let mut out = Tensor::new();
        for (&j, c) in v {
            out.add_scaled(&self.delta[j], c);
        }
        out
    }

    /// `Δ̄(c) = Δ(c) − c ⊗ 1 − 1 ⊗ c` for `c` in the kernel of the counit.
    pub fn reduced_delta(&self, j: usize) -> Tensor {
        let mut t = self.delta[j].clone();
        if j != self.unit {
            let minus = -self.field().one();
            t.add_term(vec![j, self.unit], &minus);
            t.add_term(vec![self.unit, j], &minus);
        }
        t
    }

    /// `Δ̄^{(n)} : C̄ → C̄^{⊗n}`, with `Δ̄^{(1)}` the identity and
    /// `Δ̄^{(n)} = (1 ⊗ Δ̄^{(n−1)}) Δ̄`. Zero on the coaugmentation.
    pub fn iterated_reduced(&self, j: usize, n: usize) -> Tensor {
        let mut memo = HashMap::new();
        self.iterated_memo(j, n, &mut memo)
    }

    pub(crate) fn iterated_memo(
        &self,
        j: usize,
        n: usize,
        memo: &mut HashMap<(usize, usize), Tensor>,
    ) -> Tensor {
        if j == self.unit || n == 0 {
            return Tensor::new();
        }
        if n == 1 {
            return Tensor::basis(vec![j], self.field().one());
        }
        if n > self.length[j] && self.words.is_some() {
            return Tensor::new();
        }
        if let Some(t) = memo.get(&(j, n)) {
            return t.clone();
        }
        let mut out = Tensor::new();
        for (w, c) in &self.reduced_delta(j) {
            let rest = self.iterated_memo(w[1], n - 1, memo);
            for (r, e) in &rest {
                let mut word = Vec::with_capacity(n);
                word.push(w[0]);
                word.extend_from_slice(r);
                out.add_term(word, &(c * e));
            }
        }
        memo.insert((j, n), out.clone());
        out
    }

    /// First basis element where `(Δ ⊗ 1)Δ ≠ (1 ⊗ Δ)Δ`.
    pub fn coassociativity_failure(&self) -> Option<usize> {
        (0..self.dim()).find(|&j| {
            let mut left = Tensor::new();
            let mut right = Tensor::new();
            for (w, c) in &self.delta[j] {
                for (u, e) in &self.delta[w[0]] {
                    left.add_term(vec![u[0], u[1], w[1]], &(c * e));
                }
                for (u, e) in &self.delta[w[1]] {
                    right.add_term(vec![w[0], u[0], u[1]], &(c * e));
                }
            }
            left != right
        })
    }

    /// First basis element where `(η ⊗ 1)Δ = 1 = (1 ⊗ η)Δ` fails.
    pub fn counit_failure(&self) -> Option<usize> {
        (0..self.dim()).find(|&j| {
            let mut left = Vector::new();
            let mut right = Vector::new();
            for (w, c) in &self.delta[j] {
                if w[0] == self.unit {
                    left.add_term(w[1], c);
                }
                if w[1] == self.unit {
                    right.add_term(w[0], c);
                }
            }
            let e = Vector::basis(j, self.field().one());
            left != e || right != e
        })
    }

    /// First basis element where `Δ∘D = (f ⊗ D + D ⊗ g)∘Δ` fails, for `f`,
    /// `g` of degree 0 and `D` homogeneous; Koszul signs included.
    pub fn coderivation_failure(
        &self,
        dmap: &GradedMap,
        f: &GradedMap,
        g: &GradedMap,
    ) -> Result<Option<usize>> {
        for m in [dmap, f, g] {
            if m.source() != &self.space || m.target() != &self.space {
                return Err(Error::ShapeMismatch("maps must be endomorphisms of C".into()));
            }
        }
        if f.degree() != 0 || g.degree() != 0 {
            return Err(Error::ShapeMismatch("f and g must have degree 0".into()));
        }
        let field = self.field();
        let deg = dmap.degree();
        Ok((0..self.dim()).find(|&j| {
            let left = self.delta_of(dmap.column(j));
            let mut right = Tensor::new();
            for (w, c) in &self.delta[j] {
                let s = field.sign(deg * self.space.degree(w[0]));
                for (&x, a) in f.column(w[0]) {
                    for (&y, b) in dmap.column(w[1]) {
                        right.add_term(vec![x, y], &(&(c * a) * &(b * &s)));
                    }
                }
                for (&x, a) in dmap.column(w[0]) {
                    for (&y, b) in g.column(w[1]) {
                        right.add_term(vec![x, y], &(&(c * a) * b));
                    }
                }
            }
            left != right
        }))
    }

    /// Whether `d` is a coderivation: `Δd = (d ⊗ 1 + 1 ⊗ d)Δ`.
    pub fn differential_failure(&self) -> Option<usize> {
        let id = GradedMap::identity(&self.space);
        self.coderivation_failure(&self.d, &id, &id)
            .expect("shapes match by construction")
    }
}

/// All words of length at most `max_length` over `0..dim`, by length and
/// then lexicographically.
pub(crate) fn words_up_to(dim: usize, max_length: usize) -> Vec<Word> {
    let mut out = vec![Vec::new()];
    let mut layer: Vec<Word> = vec![Vec::new()];
    for _ in 0..max_length {
        let mut next = Vec::with_capacity(layer.len() * dim);
        for w in &layer {
            for x in 0..dim {
                let mut u = w.clone();
                u.push(x);
                next.push(u);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

pub(crate) fn bracket_name(names: &[&str]) -> String {
    format!("[{}]", names.join("|"))
}

/// `T^c(V)` truncated at tensor length `max_length`: deconcatenation
/// coproduct, zero differential.
pub fn tensor_coalgebra(v: &GradedSpace, max_length: usize) -> DgCoalgebra {
    word_coalgebra(v, max_length, |w| w.iter().map(|&x| v.degree(x)).sum())
}

pub(crate) fn word_coalgebra(
    v: &GradedSpace,
    max_length: usize,
    degree: impl Fn(&[usize]) -> i64,
) -> DgCoalgebra {
    let field = v.field();
    let words = if v.dim() == 0 {
        vec![Vec::new()]
    } else {
        words_up_to(v.dim(), max_length)
    };
    let index: HashMap<&Word, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let space = GradedSpace::new(
        field,
        words.iter().map(|w| {
            let names: Vec<&str> = w.iter().map(|&x| v.name(x)).collect();
            (bracket_name(&names), degree(w))
        }),
    )
    .expect("words have distinct names");
    let delta = words
        .iter()
        .map(|w| {
            (0..=w.len())
                .map(|i| {
                    (
                        vec![index[&w[..i].to_vec()], index[&w[i..].to_vec()]],
                        field.one(),
                    )
                })
                .collect()
        })
        .collect();
    let length = words.iter().map(|w| w.len()).collect();
    let d = GradedMap::zero(&space, &space, 1);
    DgCoalgebra::new(space, delta, d, 0, length)
        .expect("deconcatenation is counital")
        .with_words(words)
}
