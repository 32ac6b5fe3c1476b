use std::collections::{BTreeMap, HashMap};

use super::algebra::AInfAlgebra;
use super::op::{compositions, words, MultiOp};
use crate::error::{Error, Result};
use crate::grlin::{tensor_of, Vector, Word};

/// An A∞-morphism `A → B`: components `f_n : (SA)^{⊗n} → SB` of degree 0.
#[derive(Clone, Debug, PartialEq)]
pub struct AInfMorphism {
    source: AInfAlgebra,
    target: AInfAlgebra,
    comps: BTreeMap<usize, MultiOp>,
    arity_max: usize,
}

impl AInfMorphism {
    pub fn new(
        source: AInfAlgebra,
        target: AInfAlgebra,
        arity_max: usize,
        comps: impl IntoIterator<Item = MultiOp>,
    ) -> Result<Self> {
        if source.field() != target.field() {
            return Err(Error::FieldMismatch(source.field(), target.field()));
        }
        if source.is_weak() || target.is_weak() {
            return Err(Error::WeakStructure);
        }
        let mut map = BTreeMap::new();
        for op in comps {
            let n = op.arity();
            if n == 0 || n > arity_max {
                return Err(Error::ArityOverflow {
                    requested: n,
                    bound: arity_max,
                });
            }
            if op.degree() != 0 {
                return Err(Error::ShapeMismatch(format!(
                    "f_{n} must have degree 0, got {}",
                    op.degree()
                )));
            }
            let (ds, dt) = (source.dim(), target.dim());
            op.check_degrees(
                |_, x| (x < ds).then(|| source.sdeg(x)),
                |y| (y < dt).then(|| target.sdeg(y)),
                |w| source.describe(w),
            )?;
            if !op.is_zero() {
                map.insert(n, op);
            }
        }
        Ok(AInfMorphism {
            source,
            target,
            comps: map,
            arity_max,
        })
    }

    /// `f_1 = 1`, `f_n = 0` for `n ≥ 2`.
    pub fn identity(a: &AInfAlgebra) -> Self {
        let one = a.field().one();
        let f1 = MultiOp::from_entries(1, 0, (0..a.dim()).map(|x| (vec![x], Vector::basis(x, one.clone()))));
        AInfMorphism::new(a.clone(), a.clone(), a.arity_max(), [f1]).expect("identity is valid")
    }

    pub fn source(&self) -> &AInfAlgebra {
        &self.source
    }

    pub fn target(&self) -> &AInfAlgebra {
        &self.target
    }

    pub fn arity_max(&self) -> usize {
        self.arity_max
    }

    pub fn comp(&self, n: usize) -> Option<&MultiOp> {
        self.comps.get(&n)
    }

    /// `f_n`, zero if absent.
    pub fn f(&self, n: usize) -> MultiOp {
        self.comps.get(&n).cloned().unwrap_or_else(|| MultiOp::new(n, 0))
    }

    pub fn comps(&self) -> impl Iterator<Item = (usize, &MultiOp)> + '_ {
        self.comps.iter().map(|(&n, op)| (n, op))
    }

    fn source_words(&self, n: usize) -> Vec<Word> {
        let a = &self.source;
        words(a.dim(), n, |x| a.space().degree(x), a.degree_window())
    }

    /// `Σ_{i+j+l=n} f_{i+1+l}(1^{⊗i} ⊗ b_j ⊗ 1^{⊗l}) − Σ b_s(f_{i_1} ⊗ ⋯ ⊗ f_{i_s})`,
    /// zero iff the `n`-th morphism identity holds.
    pub fn morphism_defect(&self, n: usize) -> Result<MultiOp> {
        if n == 0 || n > self.arity_max {
            return Err(Error::ArityOverflow {
                requested: n,
                bound: self.arity_max,
            });
        }
        let field = self.source.field();
        let mut memo = HashMap::new();
        let mut out = MultiOp::new(n, 1);
        for w in self.source_words(n) {
            let mut value = Vector::new();
            // left side
            let mut prefix = 0;
            for i in 0..n {
                for j in 1..=(n - i) {
                    let Some(bj) = self.source.op(j) else {
                        continue;
                    };
                    let inner = bj.apply(&w[i..i + j]);
                    if inner.is_zero() {
                        continue;
                    }
                    let Some(fm) = self.comps.get(&(n - j + 1)) else {
                        continue;
                    };
                    let sign = field.sign(prefix);
                    for (&x, c) in &inner {
                        let mut word = w[..i].to_vec();
                        word.push(x);
                        word.extend_from_slice(&w[i + j..]);
                        if let Some(v) = fm.get(&word) {
                            value.add_scaled(v, &(c * &sign));
                        }
                    }
                }
                prefix += self.source.sdeg(w[i]);
            }
            // right side
            value.sub_assign(&self.apply_composite(&self.target, &w, &mut memo));
            out.set(w, value);
        }
        Ok(out)
    }

    /// `Σ_s Σ op_s(f_{i_1}(w_1) ⊗ ⋯ ⊗ f_{i_s}(w_s))` where `op` ranges over the
    /// operations of `outer` (an algebra on the target).
    fn apply_composite(
        &self,
        outer: &AInfAlgebra,
        w: &[usize],
        memo: &mut HashMap<Word, Vector>,
    ) -> Vector {
        let field = self.source.field();
        let mut total = Vector::new();
        for parts in compositions(w.len()) {
            let Some(op) = outer.op(parts.len()) else {
                continue;
            };
            let mut pieces = Vec::with_capacity(parts.len());
            let mut start = 0;
            let mut zero = false;
            for &k in &parts {
                let sub = &w[start..start + k];
                start += k;
                let v = memo
                    .entry(sub.to_vec())
                    .or_insert_with(|| {
                        self.comps.get(&k).map(|f| f.apply(sub)).unwrap_or_default()
                    })
                    .clone();
                if v.is_zero() {
                    zero = true;
                    break;
                }
                pieces.push(v);
            }
            if zero {
                continue;
            }
            let refs: Vec<&Vector> = pieces.iter().collect();
            total.add_assign(&op.apply_tensor(&tensor_of(field, &refs)));
        }
        total
    }

    pub fn first_failure(&self) -> Option<(usize, Word)> {
        (1..=self.arity_max).find_map(|n| {
            let d = self.morphism_defect(n).expect("n within bound");
            let first = d.entries().next().map(|(w, _)| (n, w.clone()));
            first
        })
    }

    pub fn is_valid(&self) -> bool {
        self.first_failure().is_none()
    }
}

/// `(f ∘ g)_n = Σ_s Σ f_s ∘ (g_{i_1} ⊗ ⋯ ⊗ g_{i_s})`. The components have
/// degree 0, so no signs occur.
pub fn compose_morphisms(f: &AInfMorphism, g: &AInfMorphism) -> Result<AInfMorphism> {
    if g.target.space() != f.source.space() || g.target != f.source {
        return Err(Error::ShapeMismatch(
            "target of g must be the source of f".into(),
        ));
    }
    let arity_max = f.arity_max.min(g.arity_max);
    let field = f.source.field();
    let mut comps = Vec::new();
    let mut memo = HashMap::new();
    for n in 1..=arity_max {
        let mut op = MultiOp::new(n, 0);
        for w in g.source_words(n) {
            let mut total = Vector::new();
            for parts in compositions(n) {
                let Some(fs) = f.comps.get(&parts.len()) else {
                    continue;
                };
                let mut pieces = Vec::with_capacity(parts.len());
                let mut start = 0;
                for &k in &parts {
                    let sub = &w[start..start + k];
                    start += k;
                    let v: &Vector = memo.entry(sub.to_vec()).or_insert_with(|| {
                        g.comps.get(&k).map(|gk| gk.apply(sub)).unwrap_or_default()
                    });
                    pieces.push(v.clone());
                }
                if pieces.iter().any(|p| p.is_zero()) {
                    continue;
                }
                let refs: Vec<&Vector> = pieces.iter().collect();
                total.add_assign(&fs.apply_tensor(&tensor_of(field, &refs)));
            }
            op.set(w, total);
        }
        comps.push(op);
    }
    AInfMorphism::new(g.source.clone(), f.target.clone(), arity_max, comps)
}

/// Transports the structure of `a` along components `f_n` (with `f_1`
/// invertible): returns the unique structure `B` on the same space making
/// `f : A → B` an A∞-morphism, together with that morphism. Solved arity by
/// arity from `b^B_n ∘ f_1^{⊗n} = Σ f(1 ⊗ b^A ⊗ 1) − Σ_{s<n} b^B_s(f ⊗ ⋯ ⊗ f)`.
pub fn transport_structure(
    a: &AInfAlgebra,
    comps: impl IntoIterator<Item = MultiOp>,
) -> Result<(AInfAlgebra, AInfMorphism)> {
    if a.is_weak() {
        return Err(Error::WeakStructure);
    }
    let field = a.field();
    let dim = a.dim();
    let arity_max = a.arity_max();
    // Start with a zero target to validate the components' degrees.
    let blank = AInfAlgebra::new(a.space().clone(), arity_max, [])?;
    let f = AInfMorphism::new(a.clone(), blank, arity_max, comps)?;
    let f1 = f.f(1);
    let cols: Vec<Vector> = (0..dim).map(|x| f1.apply(&[x])).collect();
    let mut inv = MultiOp::new(1, 0);
    for y in 0..dim {
        let x = crate::grlin::solve(&cols, &Vector::basis(y, field.one())).ok_or_else(|| {
            Error::Unsupported("f_1 must be invertible to transport a structure".into())
        })?;
        inv.set(vec![y], x);
    }
    let inv_of: Vec<Vector> = (0..dim).map(|y| inv.apply(&[y])).collect();

    let mut target = AInfAlgebra::new(a.space().clone(), arity_max, [])?;
    for n in 1..=arity_max {
        // g_n on A-words, then precompose with (f_1^{-1})^{⊗n}.
        let probe = AInfMorphism {
            source: a.clone(),
            target: target.clone(),
            comps: f.comps.clone(),
            arity_max,
        };
        let defect = probe.morphism_defect(n)?;
        // With b^B_n still zero the defect is exactly g_n.
        let mut bn = MultiOp::new(n, 1);
        for u in words(dim, n, |_| 0, None) {
            let pieces: Vec<&Vector> = u.iter().map(|&y| &inv_of[y]).collect();
            let t = tensor_of(field, &pieces);
            let v = defect.apply_tensor(&t);
            bn.set(u, v);
        }
        target = target.with_op(bn)?;
    }
    let f = AInfMorphism::new(a.clone(), target.clone(), arity_max, f.comps.into_values())?;
    Ok((target, f))
}
