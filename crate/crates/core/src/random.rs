//! Seeded generators for property tests and randomized checks.
//!
//! Everything is driven by a `ChaCha8Rng`, so a seed determines the output
//! on every platform.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ainf_core::{transport_structure, AInfAlgebra, MultiOp};
use crate::grlin::{rank, Field, GradedMap, GradedSpace, Scalar, Vector};

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A small nonzero-biased scalar: integers in `[-3, 3]` over ℚ, uniform
/// over a prime field.
pub fn scalar(rng: &mut SeededRng, field: Field, nonzero: bool) -> Scalar {
    loop {
        let s = match field {
            Field::Rational => field.from_i64(rng.gen_range(-3..=3)),
            Field::Prime(p) => field.from_i64(rng.gen_range(0..p as i64)),
        };
        if !nonzero || !s.is_zero() {
            return s;
        }
    }
}

pub fn field(rng: &mut SeededRng) -> Field {
    *[
        Field::Rational,
        Field::Rational,
        Field::Prime(5),
        Field::Prime(7),
        Field::Prime(101),
    ]
    .choose(rng)
    .unwrap()
}

pub fn space(
    rng: &mut SeededRng,
    field: Field,
    dim: usize,
    degrees: std::ops::RangeInclusive<i64>,
) -> GradedSpace {
    GradedSpace::new(
        field,
        (0..dim).map(|i| (format!("v{i}"), rng.gen_range(degrees.clone()))),
    )
    .unwrap()
}

/// A homogeneous map with each admissible entry nonzero with probability
/// `density`.
pub fn map(
    rng: &mut SeededRng,
    source: &GradedSpace,
    target: &GradedSpace,
    degree: i64,
    density: f64,
) -> GradedMap {
    let field = source.field();
    let cols = (0..source.dim())
        .map(|j| {
            let mut v = Vector::new();
            for i in 0..target.dim() {
                if target.degree(i) == source.degree(j) + degree && rng.gen_bool(density) {
                    v.add_term(i, &scalar(rng, field, true));
                }
            }
            v
        })
        .collect();
    GradedMap::new(source.clone(), target.clone(), degree, cols).unwrap()
}

/// A degree-preserving automorphism, blockwise random until invertible.
pub fn automorphism(rng: &mut SeededRng, space: &GradedSpace) -> GradedMap {
    loop {
        let m = map(rng, space, space, 0, 0.7);
        if rank(m.columns()) == space.dim() {
            return m;
        }
    }
}

/// A random multilinear operation `V^{⊗n} → V` of the given degree on the
/// suspension (degrees of `SV` are those of `V` minus one).
pub fn suspended_op(
    rng: &mut SeededRng,
    space: &GradedSpace,
    arity: usize,
    degree: i64,
    density: f64,
) -> MultiOp {
    let field = space.field();
    let dim = space.dim();
    let mut op = MultiOp::new(arity, degree);
    for w in crate::ainf_core::words(dim, arity, |_| 0, None) {
        let total: i64 = w.iter().map(|&x| space.degree(x) - 1).sum::<i64>() + degree;
        let mut v = Vector::new();
        for y in 0..dim {
            if space.degree(y) - 1 == total && rng.gen_bool(density) {
                v.add_term(y, &scalar(rng, field, true));
            }
        }
        op.set(w, v);
    }
    op
}

/// Integer structure constants of a small dg algebra before base change.
struct Table {
    names: Vec<String>,
    degrees: Vec<i64>,
    d: Vec<(usize, usize, i64)>,
    m: Vec<(usize, usize, usize, i64)>,
    unit: Option<usize>,
}

impl Table {
    fn dim(&self) -> usize {
        self.names.len()
    }

    fn build(&self, field: Field, arity_max: usize) -> AInfAlgebra {
        let space = GradedSpace::new(
            field,
            self.names.iter().cloned().zip(self.degrees.iter().cloned()),
        )
        .unwrap_or_else(|e| panic!("{e}: {:?}", self.names));
        let mut cols = vec![Vector::new(); self.dim()];
        for &(j, i, c) in &self.d {
            cols[j].add_term(i, &field.from_i64(c));
        }
        let m1 = GradedMap::new(space.clone(), space.clone(), 1, cols).unwrap();
        let mut m2 = MultiOp::new(2, 0);
        for &(x, y, z, c) in &self.m {
            m2.add(vec![x, y], &Vector::basis(z, field.from_i64(c)));
        }
        let a = AInfAlgebra::from_dga_table(&m1, &m2, arity_max).unwrap();
        match self.unit {
            Some(u) => a.with_unit(u).unwrap(),
            None => a,
        }
    }

    /// Graded-commutative tensor product.
    fn tensor(&self, other: &Table) -> Table {
        let n = other.dim();
        let idx = |a: usize, b: usize| a * n + b;
        let mut names = Vec::new();
        let mut degrees = Vec::new();
        for a in 0..self.dim() {
            for b in 0..n {
                names.push(format!("{}{}", self.names[a], other.names[b]));
                degrees.push(self.degrees[a] + other.degrees[b]);
            }
        }
        let mut d = Vec::new();
        for &(j, i, c) in &self.d {
            for b in 0..n {
                d.push((idx(j, b), idx(i, b), c));
            }
        }
        for a in 0..self.dim() {
            let s = if self.degrees[a] % 2 == 0 { 1 } else { -1 };
            for &(j, i, c) in &other.d {
                d.push((idx(a, j), idx(a, i), s * c));
            }
        }
        let mut m = Vec::new();
        for &(a, a2, a3, c) in &self.m {
            for &(b, b2, b3, e) in &other.m {
                let s = if (other.degrees[b] * self.degrees[a2]) % 2 == 0 { 1 } else { -1 };
                m.push((idx(a, b), idx(a2, b2), idx(a3, b3), s * c * e));
            }
        }
        let unit = match (self.unit, other.unit) {
            (Some(u), Some(v)) => Some(idx(u, v)),
            _ => None,
        };
        Table {
            names,
            degrees,
            d,
            m,
            unit,
        }
    }

    /// Direct product of algebras.
    fn product(&self, other: &Table) -> Table {
        let k = self.dim();
        let mut t = Table {
            names: self
                .names
                .iter()
                .map(|s| format!("{s}'"))
                .chain(other.names.iter().map(|s| format!("{s}\"")))
                .collect(),
            degrees: self.degrees.iter().chain(&other.degrees).cloned().collect(),
            d: self.d.clone(),
            m: self.m.clone(),
            unit: None,
        };
        t.d.extend(other.d.iter().map(|&(j, i, c)| (j + k, i + k, c)));
        t.m.extend(other.m.iter().map(|&(x, y, z, c)| (x + k, y + k, z + k, c)));
        t
    }
}

fn ground() -> Table {
    Table {
        names: vec!["1".into()],
        degrees: vec![0],
        d: vec![],
        m: vec![(0, 0, 0, 1)],
        unit: Some(0),
    }
}

/// `k[x]/(x²)`, optionally without unit.
fn dual_numbers(deg: i64, unital: bool) -> Table {
    if unital {
        Table {
            names: vec!["1".into(), "x".into()],
            degrees: vec![0, deg],
            d: vec![],
            m: vec![(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1)],
            unit: Some(0),
        }
    } else {
        Table {
            names: vec!["x".into()],
            degrees: vec![deg],
            d: vec![],
            m: vec![],
            unit: None,
        }
    }
}

/// `k⟨1, y⟩` with `|y| = −1`, `y² = 0`, `dy = 1`: acyclic.
fn cone() -> Table {
    Table {
        names: vec!["1".into(), "y".into()],
        degrees: vec![0, -1],
        d: vec![(1, 0, 1)],
        m: vec![(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1)],
        unit: Some(0),
    }
}

/// Non-unital `⟨y, x⟩` with `dy = x` and all products zero.
fn square_zero_cone(deg_y: i64) -> Table {
    Table {
        names: vec!["y".into(), "x".into()],
        degrees: vec![deg_y, deg_y + 1],
        d: vec![(0, 1, 1)],
        m: vec![],
        unit: None,
    }
}

/// `k[x]/(x²) ⊗ Λ(y)` with `|x| = 0`, `|y| = −1`, `dy = x`, optionally
/// without the unit.
fn koszul_pair(unital: bool) -> Table {
    // basis 1, x, y, xy
    let full = Table {
        names: vec!["1".into(), "x".into(), "y".into(), "xy".into()],
        degrees: vec![0, 0, -1, -1],
        d: vec![(2, 1, 1)],
        m: vec![
            (0, 0, 0, 1),
            (0, 1, 1, 1),
            (1, 0, 1, 1),
            (0, 2, 2, 1),
            (2, 0, 2, 1),
            (0, 3, 3, 1),
            (3, 0, 3, 1),
            (1, 2, 3, 1),
            (2, 1, 3, 1),
        ],
        unit: Some(0),
    };
    if unital {
        return full;
    }
    let keep = [1usize, 2, 3];
    let pos = |i: usize| keep.iter().position(|&k| k == i);
    Table {
        names: keep.iter().map(|&i| full.names[i].clone()).collect(),
        degrees: keep.iter().map(|&i| full.degrees[i]).collect(),
        d: full
            .d
            .iter()
            .filter_map(|&(j, i, c)| Some((pos(j)?, pos(i)?, c)))
            .collect(),
        m: full
            .m
            .iter()
            .filter_map(|&(x, y, z, c)| Some((pos(x)?, pos(y)?, pos(z)?, c)))
            .collect(),
        unit: None,
    }
}

/// `End(V)` for `V = ⟨v0, v1⟩` in degrees `a, a+1` with `d v0 = λ v1`.
fn endomorphisms(lambda: i64) -> Table {
    // E_ij : v_j ↦ v_i, degree deg v_i − deg v_j; index 2i + j
    let vdeg = [0i64, 1];
    let idx = |i: usize, j: usize| 2 * i + j;
    let mut names = Vec::new();
    let mut degrees = Vec::new();
    for i in 0..2 {
        for j in 0..2 {
            names.push(format!("E{i}{j}"));
            degrees.push(vdeg[i] - vdeg[j]);
        }
    }
    let mut m = Vec::new();
    for i in 0..2 {
        for j in 0..2 {
            for l in 0..2 {
                m.push((idx(i, j), idx(j, l), idx(i, l), 1));
            }
        }
    }
    // d(f) = δ f − (−1)^{|f|} f δ with δ = λ E10
    let mut d = Vec::new();
    if lambda != 0 {
        for i in 0..2 {
            for j in 0..2 {
                let f = idx(i, j);
                let s = if degrees[f] % 2 == 0 { 1 } else { -1 };
                // δ E_ij = λ E_1j if i = 0
                if i == 0 {
                    d.push((f, idx(1, j), lambda));
                }
                // E_ij δ = λ E_i0 if j = 1
                if j == 1 {
                    d.push((f, idx(i, 0), -s * lambda));
                }
            }
        }
    }
    Table {
        names,
        degrees,
        d,
        m,
        unit: None,
    }
}

/// Upper triangular 2×2 matrices with `|E01| = a` and zero differential.
fn upper_triangular(a: i64) -> Table {
    Table {
        names: vec!["E00".into(), "E01".into(), "E11".into()],
        degrees: vec![0, a, 0],
        d: vec![],
        m: vec![(0, 0, 0, 1), (0, 1, 1, 1), (1, 2, 1, 1), (2, 2, 2, 1)],
        unit: None,
    }
}

/// Truncated monomial algebra on one or two generators: the nonzero words
/// form a set closed under subwords, products are concatenation.
fn monomial(rng: &mut SeededRng, max_dim: usize) -> Table {
    let gens = rng.gen_range(1..=2usize);
    let gdeg: Vec<i64> = (0..gens).map(|_| rng.gen_range(-1..=1)).collect();
    let letters = ["x", "y"];
    let mut words: Vec<Vec<usize>> = (0..gens).map(|g| vec![g]).collect();
    // grow by appending letters while closed under subwords
    for _ in 0..6 {
        if words.len() >= max_dim {
            break;
        }
        let w = words.choose(rng).unwrap().clone();
        let g = rng.gen_range(0..gens);
        let mut nw = w.clone();
        nw.push(g);
        let closed = (0..nw.len()).all(|s| {
            (s + 1..=nw.len()).all(|e| e - s == nw.len() || words.contains(&nw[s..e].to_vec()))
        });
        let deg: i64 = nw.iter().map(|&g| gdeg[g]).sum();
        if closed && !words.contains(&nw) && (-2..=2).contains(&deg) {
            words.push(nw);
        }
    }
    let names = words
        .iter()
        .map(|w| w.iter().map(|&g| letters[g]).collect::<String>())
        .collect();
    let degrees = words.iter().map(|w| w.iter().map(|&g| gdeg[g]).sum()).collect();
    let mut m = Vec::new();
    for (a, u) in words.iter().enumerate() {
        for (b, v) in words.iter().enumerate() {
            let mut uv = u.clone();
            uv.extend_from_slice(v);
            if let Some(c) = words.iter().position(|w| *w == uv) {
                m.push((a, b, c, 1));
            }
        }
    }
    Table {
        names,
        degrees,
        d: vec![],
        m,
        unit: None,
    }
}

/// Adjoins a unit to a non-unital table.
fn unitalize(t: &Table) -> Table {
    let k = t.dim();
    let mut out = Table {
        names: t.names.iter().cloned().chain(["1".to_string()]).collect(),
        degrees: t.degrees.iter().cloned().chain([0]).collect(),
        d: t.d.clone(),
        m: t.m.clone(),
        unit: Some(k),
    };
    out.m.push((k, k, k, 1));
    for x in 0..k {
        out.m.push((k, x, x, 1));
        out.m.push((x, k, x, 1));
    }
    out
}

/// A random dg algebra of dimension at most `max_dim` with degrees in
/// `[−2, 2]`, drawn from a handful of families (monomial algebras, Koszul
/// pairs, cones, matrix algebras, products and tensor products) and then
/// scrambled by a random change of basis.
pub fn dga(rng: &mut SeededRng, field: Field, max_dim: usize, arity_max: usize) -> AInfAlgebra {
    loop {
        let t = match rng.gen_range(0..9) {
            0 => monomial(rng, max_dim),
            1 => {
                let m = monomial(rng, max_dim.saturating_sub(1).max(1));
                unitalize(&m)
            }
            2 => koszul_pair(rng.gen_bool(0.5)),
            3 => cone(),
            4 => square_zero_cone(rng.gen_range(-2..=1)),
            5 => endomorphisms(rng.gen_range(0..=2)),
            6 => upper_triangular(rng.gen_range(-2..=2)),
            7 => {
                let a = if rng.gen_bool(0.5) { cone() } else { ground() };
                let b = dual_numbers(rng.gen_range(-2..=2), true);
                a.tensor(&b)
            }
            _ => {
                let a = square_zero_cone(rng.gen_range(-2..=1));
                let b = if rng.gen_bool(0.5) {
                    dual_numbers(rng.gen_range(-2..=2), rng.gen_bool(0.5))
                } else {
                    ground()
                };
                a.product(&b)
            }
        };
        if t.dim() == 0 || t.dim() > max_dim || t.degrees.iter().any(|d| !(-2..=2).contains(d)) {
            continue;
        }
        let a = t.build(field, arity_max);
        let f1 = automorphism(rng, a.space());
        let f1 = crate::ainf_core::op_of_map(&f1);
        let (b, _) = transport_structure(&a, [f1]).expect("automorphisms transport");
        return b;
    }
}

/// A random associative algebra of dimension `dim ≤ 4` concentrated in
/// degree 0, scrambled by a change of basis.
pub fn associative(rng: &mut SeededRng, field: Field, dim: usize) -> AInfAlgebra {
    assert!((1..=4).contains(&dim));
    loop {
        let t = match rng.gen_range(0..4) {
            0 => upper_triangular(0),
            1 => koszul_like_truncated(dim),
            2 => {
                let mut m = monomial(rng, dim);
                m.degrees.iter_mut().for_each(|d| *d = 0);
                m
            }
            _ => unitalize(&dual_numbers(0, false)),
        };
        if t.dim() != dim || t.degrees.iter().any(|&d| d != 0) {
            continue;
        }
        let a = t.build(field, 5);
        let f1 = crate::ainf_core::op_of_map(&automorphism(rng, a.space()));
        return transport_structure(&a, [f1]).expect("automorphisms transport").0;
    }
}

/// `k[x]/(x^dim)` with basis `1, x, …, x^{dim−1}`.
fn koszul_like_truncated(dim: usize) -> Table {
    let mut m = Vec::new();
    for a in 0..dim {
        for b in 0..dim {
            if a + b < dim {
                m.push((a, b, a + b, 1));
            }
        }
    }
    Table {
        names: (0..dim).map(|i| format!("x{i}")).collect(),
        degrees: vec![0; dim],
        d: vec![],
        m,
        unit: Some(0),
    }
}

/// Random components `f_1` (invertible) and `f_2, …, f_n` (sparse) of an
/// A∞-morphism out of `a`.
pub fn morphism_components(rng: &mut SeededRng, a: &AInfAlgebra, n: usize) -> Vec<MultiOp> {
    let mut out = vec![crate::ainf_core::op_of_map(&automorphism(rng, a.space()))];
    for k in 2..=n {
        out.push(suspended_op(rng, a.space(), k, 0, 0.3));
    }
    out
}
