use std::collections::HashMap;

use super::bar::{bar_of_reduced, reduced_algebra};
use super::coalgebra::DgCoalgebra;
use crate::ainf_core::{AInfAlgebra, MultiOp};
use crate::error::{Error, Result};
use crate::grlin::{tensor_of, ChainComplex, Field, GradedMap, GradedSpace, Tensor, Vector};

/// A degree +1 map `τ : C → A`. It must vanish on the coaugmentation and,
/// when `A` is augmented, land in the augmentation ideal.
#[derive(Clone, Debug)]
pub struct TwistingCochain {
    source: DgCoalgebra,
    target: AInfAlgebra,
    tau: GradedMap,
}

/// Outcome of [`is_twisting_cochain`]: `witness` is the first basis element
/// of `C` with a nonzero defect.
#[derive(Clone, Debug, PartialEq)]
pub struct TwistCheck {
    pub holds: bool,
    pub witness: Option<usize>,
    pub witness_name: Option<String>,
}

impl TwistingCochain {
    pub fn new(source: DgCoalgebra, target: AInfAlgebra, tau: GradedMap) -> Result<Self> {
        if tau.source() != source.space() || tau.target() != target.space() {
            return Err(Error::ShapeMismatch("τ must be a map C → A".into()));
        }
        if tau.degree() != 1 && !tau.is_zero() {
            return Err(Error::ShapeMismatch(format!(
                "τ must have degree +1, got {}",
                tau.degree()
            )));
        }
        if target.is_weak() {
            return Err(Error::WeakStructure);
        }
        if !tau.column(source.unit()).is_zero() {
            return Err(Error::NotTwisting("τ does not vanish on the coaugmentation".into()));
        }
        if let Some(eps) = target.augmentation() {
            for j in 0..source.dim() {
                let mut e = target.field().zero();
                for (&x, c) in tau.column(j) {
                    if let Some(a) = eps.get(&x) {
                        e = &e + &(c * a);
                    }
                }
                if !e.is_zero() {
                    return Err(Error::NotTwisting(format!(
                        "τ({}) leaves the augmentation ideal",
                        source.space().name(j)
                    )));
                }
            }
        }
        Ok(TwistingCochain {
            source,
            target,
            tau,
        })
    }

    pub fn source(&self) -> &DgCoalgebra {
        &self.source
    }

    pub fn target(&self) -> &AInfAlgebra {
        &self.target
    }

    pub fn map(&self) -> &GradedMap {
        &self.tau
    }
}

/// The Maurer–Cartan defect `Σ_n b_n(τ ⊗ ⋯ ⊗ τ)Δ̄^{(n)} − τ∘d_C`, one vector
/// of `A` per basis element of `C`. Here `τ` is read as a degree 0 map
/// `C → SA`, so the tensor powers carry no signs; it is the length one part
/// of `D∘F − F∘d_C` for the coalgebra map `F : C → BA` that `τ` induces.
/// For a dg algebra it equals `−(d(τ) + τ * τ)`.
pub fn mc_defect(t: &TwistingCochain) -> Vec<Vector> {
    let c = &t.source;
    let a = &t.target;
    let field = a.field();
    let mut memo = HashMap::new();
    let ops: Vec<(usize, &MultiOp)> = a.ops().filter(|(n, _)| *n >= 1).collect();
    (0..c.dim())
        .map(|j| {
            let mut out = Vector::new();
            for &(n, op) in &ops {
                let split = c.iterated_memo(j, n, &mut memo);
                for (w, coef) in &split {
                    let pieces: Vec<&Vector> = w.iter().map(|&x| t.tau.column(x)).collect();
                    if pieces.iter().any(|p| p.is_zero()) {
                        continue;
                    }
                    out.add_scaled(&op.apply_tensor(&tensor_of(field, &pieces)), coef);
                }
            }
            out.sub_assign(&t.tau.apply(c.differential().column(j)));
            out
        })
        .collect()
}

pub fn is_twisting_cochain(t: &TwistingCochain) -> TwistCheck {
    let defect = mc_defect(t);
    let witness = defect.iter().position(|v| !v.is_zero());
    TwistCheck {
        holds: witness.is_none(),
        witness,
        witness_name: witness.map(|j| t.source.space().name(j).to_string()),
    }
}

/// The projection `BA → A` onto tensor length one, `[x] ↦ x − ε(x)1`.
pub fn universal_twisting_cochain(a: &AInfAlgebra, max_length: usize) -> Result<TwistingCochain> {
    let (abar, embed) = reduced_algebra(a)?;
    let b = bar_of_reduced(&abar, max_length)?;
    let cols = (0..b.dim())
        .map(|j| match b.word(j).map(|w| w.as_slice()) {
            Some([x]) => embed[*x].clone(),
            _ => Vector::new(),
        })
        .collect();
    let tau = GradedMap::new(b.space().clone(), a.space().clone(), 1, cols)?;
    TwistingCochain::new(b, a.clone(), tau)
}

/// The convolution algebra `Hom(C, A)` for a dg algebra `A`: elements are
/// graded maps `C → A`.
pub struct Convolution<'a> {
    c: &'a DgCoalgebra,
    a: &'a AInfAlgebra,
    m1: GradedMap,
    m2: MultiOp,
}

impl<'a> Convolution<'a> {
    pub fn new(c: &'a DgCoalgebra, a: &'a AInfAlgebra) -> Result<Self> {
        if c.field() != a.field() {
            return Err(Error::FieldMismatch(c.field(), a.field()));
        }
        if a.is_weak() {
            return Err(Error::WeakStructure);
        }
        Ok(Convolution {
            c,
            a,
            m1: a.m1(),
            m2: a.m2(),
        })
    }

    fn check(&self, f: &GradedMap) -> Result<()> {
        if f.source() != self.c.space() || f.target() != self.a.space() {
            return Err(Error::ShapeMismatch("convolution elements are maps C → A".into()));
        }
        Ok(())
    }

    /// `f * g = μ∘(f ⊗ g)∘Δ`, with `(f ⊗ g)(x ⊗ y) = (−1)^{|g||x|} f(x) ⊗ g(y)`.
    pub fn product(&self, f: &GradedMap, g: &GradedMap) -> Result<GradedMap> {
        self.check(f)?;
        self.check(g)?;
        let field = self.a.field();
        let cols = (0..self.c.dim())
            .map(|j| {
                let mut out = Vector::new();
                for (w, coef) in self.c.delta(j) {
                    let (x, y) = (f.column(w[0]), g.column(w[1]));
                    if x.is_zero() || y.is_zero() {
                        continue;
                    }
                    let s = field.sign(g.degree() * self.c.space().degree(w[0]));
                    out.add_scaled(&self.m2.apply_tensor(&tensor_of(field, &[x, y])), &(coef * &s));
                }
                out
            })
            .collect();
        GradedMap::new(
            self.c.space().clone(),
            self.a.space().clone(),
            f.degree() + g.degree(),
            cols,
        )
    }

    /// `∂f = d_A∘f − (−1)^{|f|} f∘d_C`.
    pub fn differential(&self, f: &GradedMap) -> Result<GradedMap> {
        self.check(f)?;
        let left = self.m1.compose(f)?;
        let right = f.compose(self.c.differential())?;
        left.sub(&right.scaled(&self.a.field().sign(f.degree())))
    }

    /// `b_n(f_1, …, f_n) = b_n^A∘(f_1 ⊗ ⋯ ⊗ f_n)∘Δ^{(n)}` on maps `C → SA`.
    /// Each `f_k` is passed as a map into `A` of degree `e_k`, i.e. a map into
    /// `SA` of degree `e_k − 1`; the result is returned the same way.
    pub fn op(&self, fs: &[&GradedMap]) -> Result<GradedMap> {
        let n = fs.len();
        for f in fs {
            self.check(f)?;
        }
        let field = self.a.field();
        let sdeg: Vec<i64> = fs.iter().map(|f| f.degree() - 1).collect();
        let out_degree = sdeg.iter().sum::<i64>() + 2;
        let bn = self.a.b(n);
        let cols = (0..self.c.dim())
            .map(|j| {
                let mut out = Vector::new();
                for (w, coef) in &self.full_iterated(j, n) {
                    let mut sign = 0;
                    let mut seen = 0;
                    for (k, &x) in w.iter().enumerate() {
                        sign += sdeg[k] * seen;
                        seen += self.c.space().degree(x);
                    }
                    let pieces: Vec<&Vector> = w.iter().zip(fs).map(|(&x, f)| f.column(x)).collect();
                    if pieces.iter().any(|p| p.is_zero()) {
                        continue;
                    }
                    out.add_scaled(
                        &bn.apply_tensor(&tensor_of(field, &pieces)),
                        &(coef * &field.sign(sign)),
                    );
                }
                out
            })
            .collect();
        GradedMap::new(self.c.space().clone(), self.a.space().clone(), out_degree, cols)
    }

    /// The full iterated coproduct `Δ^{(n)}` (with `Δ^{(1)} = 1`).
    fn full_iterated(&self, j: usize, n: usize) -> Tensor {
        if n == 0 {
            return Tensor::new();
        }
        let mut acc = Tensor::basis(vec![j], self.c.field().one());
        for _ in 1..n {
            let mut next = Tensor::new();
            for (w, coef) in &acc {
                let last = *w.last().unwrap();
                for (u, e) in self.c.delta(last) {
                    let mut v = w[..w.len() - 1].to_vec();
                    v.extend_from_slice(u);
                    next.add_term(v, &(coef * e));
                }
            }
            acc = next;
        }
        acc
    }
}

/// Which side of a module the algebra acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// A dg module over a dg algebra `A`: a complex with an action table of
/// degree 0, `M ⊗ A → M` (right) or `A ⊗ M → M` (left).
#[derive(Clone, Debug)]
pub struct DgModule {
    pub space: GradedSpace,
    pub d: GradedMap,
    pub action: MultiOp,
    pub side: Side,
}

impl DgModule {
    /// `A` acting on itself.
    pub fn regular(a: &AInfAlgebra, side: Side) -> Self {
        DgModule {
            space: a.space().clone(),
            d: a.m1(),
            action: a.m2(),
            side,
        }
    }

    fn act(&self, m: usize, a: &Vector, field: Field) -> Vector {
        let mut out = Vector::new();
        for (&x, c) in a {
            let w = match self.side {
                Side::Right => [m, x],
                Side::Left => [x, m],
            };
            out.add_scaled(&self.action.apply(&w), c);
        }
        let _ = field;
        out
    }
}

/// A twisted tensor product `M ⊗_τ C ⊗_τ N` restricted to the basis triples
/// accepted by `keep`. A missing module is the ground field, untwisted.
#[derive(Clone, Debug)]
pub struct TwistedTensor {
    pub complex: ChainComplex,
    /// `(m, c, n)` for each basis element; `0` stands for the ground field.
    pub labels: Vec<(usize, usize, usize)>,
}

/// Builds `M ⊗_τ C ⊗_τ N` with differential
/// `d_M ⊗ 1 ⊗ 1 + 1 ⊗ d_C ⊗ 1 + 1 ⊗ 1 ⊗ d_N − t_l + t_r` where
/// `t_l = (μ_M ⊗ 1 ⊗ 1)(1 ⊗ τ ⊗ 1 ⊗ 1)(1 ⊗ Δ ⊗ 1)` and
/// `t_r = (1 ⊗ 1 ⊗ μ_N)(1 ⊗ 1 ⊗ τ ⊗ 1)(1 ⊗ Δ ⊗ 1)`, all with Koszul signs.
/// `left` must be a right module and `right` a left module over the target
/// of `τ`, which must be a dg algebra. Fails with the offending basis
/// element if the subspace selected by `keep` is not closed under `d`, or
/// if `d² ≠ 0`.
pub fn twisted_tensor(
    left: Option<&DgModule>,
    tau: &TwistingCochain,
    right: Option<&DgModule>,
    keep: impl Fn(usize, usize, usize) -> bool,
) -> Result<TwistedTensor> {
    let a = tau.target();
    let c = tau.source();
    let field = a.field();
    if a.ops().any(|(n, op)| n >= 3 && !op.is_zero()) {
        return Err(Error::Unsupported(
            "twisted tensor products need a dg algebra".into(),
        ));
    }
    if left.is_some_and(|m| m.side != Side::Right) || right.is_some_and(|m| m.side != Side::Left) {
        return Err(Error::ShapeMismatch(
            "expected a right module on the left and a left module on the right".into(),
        ));
    }
    let ground = GradedSpace::ground(field, "k");
    let mspace = left.map_or(&ground, |m| &m.space);
    let nspace = right.map_or(&ground, |m| &m.space);
    let mut labels = Vec::new();
    for m in 0..mspace.dim() {
        for x in 0..c.dim() {
            for n in 0..nspace.dim() {
                if keep(m, x, n) {
                    labels.push((m, x, n));
                }
            }
        }
    }
    let index: HashMap<(usize, usize, usize), usize> =
        labels.iter().enumerate().map(|(i, &t)| (t, i)).collect();
    let cdeg = |x: usize| c.space().degree(x);
    let space = GradedSpace::new(
        field,
        labels.iter().map(|&(m, x, n)| {
            (
                format!("{}⊗{}⊗{}", mspace.name(m), c.space().name(x), nspace.name(n)),
                mspace.degree(m) + cdeg(x) + nspace.degree(n),
            )
        }),
    )?;
    let mut cols = Vec::with_capacity(labels.len());
    for &(m, x, n) in &labels {
        let mut out: HashMap<(usize, usize, usize), crate::grlin::Scalar> = HashMap::new();
        let mut add = |t: (usize, usize, usize), s: &crate::grlin::Scalar| {
            let e = out.entry(t).or_insert_with(|| field.zero());
            *e = &*e + s;
        };
        let dm = mspace.degree(m);
        if let Some(lm) = left {
            for (&y, s) in lm.d.column(m) {
                add((y, x, n), s);
            }
        }
        for (&y, s) in c.differential().column(x) {
            add((m, y, n), &(s * &field.sign(dm)));
        }
        if let Some(rn) = right {
            for (&y, s) in rn.d.column(n) {
                add((m, x, y), &(s * &field.sign(dm + cdeg(x))));
            }
        }
        for (w, s) in c.delta(x) {
            if let Some(lm) = left {
                let t = tau.tau.column(w[0]);
                if !t.is_zero() {
                    let sign = -field.sign(dm);
                    for (&y, e) in &lm.act(m, t, field) {
                        add((y, w[1], n), &(&(s * e) * &sign));
                    }
                }
            }
            if let Some(rn) = right {
                let t = tau.tau.column(w[1]);
                if !t.is_zero() {
                    let sign = field.sign(dm + cdeg(w[0]));
                    for (&y, e) in &rn.act(n, t, field) {
                        add((m, w[0], y), &(&(s * e) * &sign));
                    }
                }
            }
        }
        let mut v = Vector::new();
        for (t, s) in out {
            if s.is_zero() {
                continue;
            }
            let Some(&i) = index.get(&t) else {
                return Err(Error::TruncationTooSmall(format!(
                    "d({}) leaves the selected subspace",
                    space.name(index[&(m, x, n)])
                )));
            };
            v.add_term(i, &s);
        }
        cols.push(v);
    }
    let d = GradedMap::new(space.clone(), space, 1, cols)?;
    Ok(TwistedTensor {
        complex: ChainComplex::new(d)?,
        labels,
    })
}
