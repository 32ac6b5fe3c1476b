use std::collections::{BTreeMap, HashMap};

use super::coalgebra::{words_up_to, DgCoalgebra};
use super::twisting::{twisted_tensor, DgModule, Side, TwistingCochain};
use crate::ainf_core::{AInfAlgebra, MultiOp};
use crate::error::{Error, Result};
use crate::grlin::{
    homology_dimensions, index_word, intersection, solve, word_index, ChainComplex, Echelon,
    GradedMap, GradedSpace, Tensor, Vector, Word,
};

/// `T(V)/(R)` truncated at weight `max_weight`, with normal forms taken
/// modulo the ideal weight by weight.
#[derive(Clone, Debug)]
pub struct QuadraticAlgebra {
    generators: GradedSpace,
    relations: Vec<Vector>,
    ideal: Vec<Echelon>,
    words: Vec<Word>,
    index: HashMap<Word, usize>,
    algebra: AInfAlgebra,
}

fn word_name(v: &GradedSpace, w: &[usize]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    let names: Vec<&str> = w.iter().map(|&x| v.name(x)).collect();
    let short = (0..v.dim()).all(|x| v.name(x).chars().count() == 1);
    names.join(if short { "" } else { "·" })
}

fn check_relations(v: &GradedSpace, relations: &[Vector]) -> Result<()> {
    let n = v.dim();
    for r in relations {
        let mut degree = None;
        for &k in r.keys() {
            if k >= n * n {
                return Err(Error::NotQuadratic(format!("coordinate {k} is outside V⊗V")));
            }
            let w = index_word(k, n, 2);
            let d = v.degree(w[0]) + v.degree(w[1]);
            if degree.is_some_and(|e| e != d) {
                return Err(Error::NotQuadratic("relation is not homogeneous".into()));
            }
            degree = Some(d);
        }
    }
    Ok(())
}

/// Spanning set of `V^{⊗p} ⊗ R ⊗ V^{⊗q}` inside `V^{⊗(p+2+q)}`.
fn sandwich(dim: usize, relations: &[Vector], p: usize, q: usize) -> Vec<Vector> {
    let mut out = Vec::new();
    for left in words_up_to(dim, p).into_iter().filter(|w| w.len() == p) {
        for right in words_up_to(dim, q).into_iter().filter(|w| w.len() == q) {
            for r in relations {
                let mut v = Vector::new();
                for (&k, c) in r {
                    let mut w = left.clone();
                    w.extend(index_word(k, dim, 2));
                    w.extend_from_slice(&right);
                    v.add_term(word_index(&w, dim), c);
                }
                if !v.is_zero() {
                    out.push(v);
                }
            }
        }
    }
    out
}

impl QuadraticAlgebra {
    /// `relations` are vectors in `V ⊗ V`, indexed by [`word_index`].
    pub fn new(generators: &GradedSpace, relations: &[Vector], max_weight: usize) -> Result<Self> {
        check_relations(generators, relations)?;
        let field = generators.field();
        let dim = generators.dim();
        let mut ideal = Vec::with_capacity(max_weight + 1);
        let mut words = Vec::new();
        for n in 0..=max_weight {
            let mut e = Echelon::new();
            if n >= 2 {
                for p in 0..=n - 2 {
                    for v in sandwich(dim, relations, p, n - 2 - p) {
                        e.insert(v);
                    }
                }
            }
            let pivots: std::collections::HashSet<usize> = e.pivots().iter().copied().collect();
            let count = dim.pow(n as u32);
            words.extend(
                (0..count)
                    .filter(|k| !pivots.contains(k))
                    .map(|k| index_word(k, dim, n)),
            );
            ideal.push(e);
        }
        let index: HashMap<Word, usize> =
            words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let space = GradedSpace::new(
            field,
            words.iter().map(|w| {
                (
                    word_name(generators, w),
                    w.iter().map(|&x| generators.degree(x)).sum::<i64>(),
                )
            }),
        )?;
        let mut q = QuadraticAlgebra {
            generators: generators.clone(),
            relations: relations.to_vec(),
            ideal,
            words,
            index,
            algebra: AInfAlgebra::ground(field, 2),
        };
        let mut m2 = MultiOp::new(2, 0);
        for (i, u) in q.words.iter().enumerate() {
            for (j, v) in q.words.iter().enumerate() {
                let mut uv = u.clone();
                uv.extend_from_slice(v);
                let p = q.normal_form(&uv);
                if !p.is_zero() {
                    m2.set(vec![i, j], p);
                }
            }
        }
        let m1 = GradedMap::zero(&space, &space, 1);
        q.algebra = AInfAlgebra::from_dga_table(&m1, &m2, 2)?
            .with_unit(0)?
            .with_augmentation(Vector::basis(0, field.one()))?;
        Ok(q)
    }

    /// The class of a word in the basis of the truncated algebra (zero
    /// beyond the top weight).
    pub fn normal_form(&self, w: &[usize]) -> Vector {
        let n = w.len();
        if n >= self.ideal.len() {
            return Vector::new();
        }
        let dim = self.generators.dim();
        let field = self.generators.field();
        let r = self.ideal[n].reduce(&Vector::basis(word_index(w, dim), field.one()));
        r.iter()
            .map(|(&k, c)| (self.index[&index_word(k, dim, n)], c.clone()))
            .collect()
    }

    pub fn algebra(&self) -> &AInfAlgebra {
        &self.algebra
    }

    pub fn generators(&self) -> &GradedSpace {
        &self.generators
    }

    pub fn relations(&self) -> &[Vector] {
        &self.relations
    }

    pub fn max_weight(&self) -> usize {
        self.ideal.len() - 1
    }

    pub fn weight(&self, x: usize) -> usize {
        self.words[x].len()
    }

    /// Dimension of each weight component.
    pub fn weight_dims(&self) -> Vec<usize> {
        let mut out = vec![0; self.ideal.len()];
        for w in &self.words {
            out[w.len()] += 1;
        }
        out
    }
}

/// A quadratic algebra, its Koszul dual coalgebra and the twisting
/// cochain `C → V → A` between them.
#[derive(Clone, Debug)]
pub struct KoszulData {
    pub algebra: QuadraticAlgebra,
    pub coalgebra: DgCoalgebra,
    pub tau: TwistingCochain,
    /// Basis of `C_n` for each `n`, in `V^{⊗n}` coordinates.
    pub components: Vec<Vec<Vector>>,
}

impl KoszulData {
    pub fn dims(&self) -> Vec<usize> {
        self.components.iter().map(|c| c.len()).collect()
    }
}

/// Builds `C_n = ⋂ V^{⊗p} ⊗ R ⊗ V^{⊗q}` for `n ≤ n_max`, with `C_0 = k`
/// and `C_1 = V`, as a subcoalgebra of `T^c(V)`. An element of `V^{⊗n}` of
/// weight `Σ|v|` sits in `C` in degree `Σ|v| − n`; the differential is
/// zero. The algebra is truncated at weight `n_max` as well.
pub fn koszul_dual(v: &GradedSpace, relations: &[Vector], n_max: usize) -> Result<KoszulData> {
    let algebra = QuadraticAlgebra::new(v, relations, n_max)?;
    let field = v.field();
    let dim = v.dim();
    let mut components: Vec<Vec<Vector>> = Vec::new();
    for n in 0..=n_max {
        let comp = match n {
            0 => vec![Vector::basis(0, field.one())],
            1 => (0..dim).map(|x| Vector::basis(x, field.one())).collect(),
            _ => {
                let mut acc = sandwich(dim, relations, 0, n - 2);
                for p in 1..=n - 2 {
                    if acc.is_empty() {
                        break;
                    }
                    acc = intersection(field, &acc, &sandwich(dim, relations, p, n - 2 - p));
                }
                if n == 2 {
                    acc = Echelon::from_vectors(&acc).rows().to_vec();
                }
                split_by_degree(v, n, &acc)
            }
        };
        components.push(comp);
    }
    let mut names = Vec::new();
    let mut owner = Vec::new();
    for (n, comp) in components.iter().enumerate() {
        for (k, c) in comp.iter().enumerate() {
            let word = index_word(*c.keys().next().expect("nonzero"), dim, n);
            let deg = word.iter().map(|&x| v.degree(x)).sum::<i64>() - n as i64;
            let name = match n {
                0 => "1".to_string(),
                1 => v.name(k).to_string(),
                _ => format!("c{n}_{k}"),
            };
            names.push((name, deg));
            owner.push((n, k));
        }
    }
    let offset: Vec<usize> = components
        .iter()
        .scan(0, |s, c| {
            let o = *s;
            *s += c.len();
            Some(o)
        })
        .collect();
    let space = GradedSpace::new(field, names)?;
    let mut delta = Vec::with_capacity(space.dim());
    for &(n, k) in &owner {
        let c = &components[n][k];
        let mut t = Tensor::new();
        for i in 0..=n {
            let cols: Vec<(usize, usize, Vector)> = (0..components[i].len())
                .flat_map(|a| (0..components[n - i].len()).map(move |b| (a, b)))
                .map(|(a, b)| {
                    let v = concat(&components[i][a], &components[n - i][b], dim, i, n - i);
                    (a, b, v)
                })
                .collect();
            let vectors: Vec<Vector> = cols.iter().map(|(_, _, v)| v.clone()).collect();
            // the part of c in V^{⊗i} ⊗ V^{⊗(n−i)} is c itself, read through
            // the same word index
            let x = solve(&vectors, c).ok_or_else(|| {
                Error::NotQuadratic(format!("C_{n} is not closed under deconcatenation"))
            })?;
            for (&j, coef) in &x {
                let (a, b, _) = cols[j];
                t.add_term(vec![offset[i] + a, offset[n - i] + b], coef);
            }
        }
        delta.push(t);
    }
    let lengths = owner.iter().map(|&(n, _)| n).collect();
    let d = GradedMap::zero(&space, &space, 1);
    let coalgebra = DgCoalgebra::new(space, delta, d, 0, lengths)?;
    let a = algebra.algebra();
    let cols = owner
        .iter()
        .map(|&(n, k)| {
            if n == 1 {
                algebra.normal_form(&[k])
            } else {
                Vector::new()
            }
        })
        .collect();
    let tau = GradedMap::new(coalgebra.space().clone(), a.space().clone(), 1, cols)?;
    let tau = TwistingCochain::new(coalgebra.clone(), a.clone(), tau)?;
    Ok(KoszulData {
        algebra,
        coalgebra,
        tau,
        components,
    })
}

fn concat(u: &Vector, v: &Vector, dim: usize, i: usize, j: usize) -> Vector {
    let mut out = Vector::new();
    for (&a, c) in u {
        for (&b, e) in v {
            let mut w = index_word(a, dim, i);
            w.extend(index_word(b, dim, j));
            out.add_term(word_index(&w, dim), &(c * e));
        }
    }
    out
}

fn split_by_degree(v: &GradedSpace, n: usize, basis: &[Vector]) -> Vec<Vector> {
    let dim = v.dim();
    let mut by_degree: BTreeMap<i64, Echelon> = BTreeMap::new();
    for b in basis {
        let mut parts: BTreeMap<i64, Vector> = BTreeMap::new();
        for (&k, c) in b {
            let d = index_word(k, dim, n).iter().map(|&x| v.degree(x)).sum();
            parts.entry(d).or_default().add_term(k, c);
        }
        for (d, p) in parts {
            by_degree.entry(d).or_default().insert(p);
        }
    }
    by_degree.into_values().flat_map(|e| e.rows().to_vec()).collect()
}

/// Result of testing condition (ii): whether `ε : A ⊗_τ C ⊗_τ A → A` is a
/// quasi-isomorphism, computed for total weight at most the truncation.
#[derive(Clone, Debug, PartialEq)]
pub struct Acyclicity {
    /// Homology of `A ⊗_τ C ⊗_τ A` by degree.
    pub homology: BTreeMap<i64, usize>,
    /// Dimensions of `A` by degree, in the same range.
    pub algebra: BTreeMap<i64, usize>,
    pub quasi_isomorphism: bool,
    pub dim: usize,
}

/// Builds `A ⊗_τ C ⊗_τ A` in total weight at most `max_weight` (which is
/// closed under the differential) and tests whether multiplication
/// `a ⊗ 1 ⊗ a' ↦ aa'` is a quasi-isomorphism onto `A` by computing the
/// homology of its cone. Fails with `NotAComplex` if `d² ≠ 0`.
pub fn koszul_acyclicity(data: &KoszulData, max_weight: usize) -> Result<Acyclicity> {
    let q = &data.algebra;
    let c = &data.coalgebra;
    let w = max_weight.min(q.max_weight()).min(data.components.len() - 1);
    let a = q.algebra();
    let field = a.field();
    let left = DgModule::regular(a, Side::Right);
    let right = DgModule::regular(a, Side::Left);
    let tt = twisted_tensor(Some(&left), &data.tau, Some(&right), |x, y, z| {
        q.weight(x) + c.length(y) + q.weight(z) <= w
    })?;
    let complex = &tt.complex;
    let homology = homology_dimensions(complex);
    let keep_a: Vec<usize> = (0..a.dim()).filter(|&x| q.weight(x) <= w).collect();
    let mut pos = vec![usize::MAX; a.dim()];
    for (s, &x) in keep_a.iter().enumerate() {
        pos[x] = s;
    }
    let mut algebra = BTreeMap::new();
    for &x in &keep_a {
        *algebra.entry(a.space().degree(x)).or_insert(0) += 1;
    }
    // cone of ε: the twisted complex shifted down by one, then A
    let n = complex.space().dim();
    let mut basis: Vec<(String, i64)> = (0..n)
        .map(|i| (format!("s{}", complex.space().name(i)), complex.space().degree(i) - 1))
        .collect();
    basis.extend(keep_a.iter().map(|&x| (a.space().name(x).to_string(), a.space().degree(x))));
    let cone_space = GradedSpace::new(field, basis)?;
    let m2 = a.m2();
    let mut cols = Vec::with_capacity(cone_space.dim());
    for (i, &(x, y, z)) in tt.labels.iter().enumerate() {
        let mut v = complex.differential().column(i).negated();
        if y == c.unit() {
            for (&p, e) in &m2.apply(&[x, z]) {
                v.add_term(n + pos[p], e);
            }
        }
        cols.push(v);
    }
    cols.extend((0..keep_a.len()).map(|_| Vector::new()));
    let cone = ChainComplex::new(GradedMap::new(cone_space.clone(), cone_space, 1, cols)?)?;
    let quasi_isomorphism = homology_dimensions(&cone).values().all(|&d| d == 0);
    Ok(Acyclicity {
        homology: homology.into_iter().filter(|&(_, d)| d > 0).collect(),
        algebra,
        quasi_isomorphism,
        dim: n,
    })
}
