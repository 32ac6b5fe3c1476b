use std::collections::HashMap;

use crate::ainf_core::{AInfAlgebra, MultiOp};
use crate::error::{Error, Result};
use crate::grlin::{Echelon, Field, GradedMap, GradedSpace, Scalar, Vector};

#[derive(Clone, Debug, PartialEq)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
    pub degree: i64,
}

/// A path as a list of arrows in composition order: `[α, β, γ]` is
/// `α∘β∘γ`, so `γ` is traversed first. The empty list is the idempotent
/// of `source` (= `target`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub arrows: Vec<usize>,
    pub source: usize,
    pub target: usize,
}

impl Path {
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }
}

/// A linear combination of parallel paths.
pub type Relation = Vec<(Scalar, Vec<usize>)>;

/// A quiver with relations. Paths longer than `bound` must vanish in the
/// quotient.
#[derive(Clone, Debug)]
pub struct QuiverPresentation {
    pub field: Field,
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
    pub relations: Vec<Relation>,
    pub bound: usize,
}

impl QuiverPresentation {
    pub fn vertex(&self, name: &str) -> Result<usize> {
        self.vertices
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownBasis(name.to_string()))
    }

    pub fn arrow(&self, name: &str) -> Result<usize> {
        self.arrows
            .iter()
            .position(|a| a.name == name)
            .ok_or_else(|| Error::UnknownBasis(name.to_string()))
    }

    /// The path spelled by `arrows` (composition order), if composable.
    pub fn path(&self, arrows: &[usize]) -> Option<Path> {
        let (first, last) = (arrows.first()?, arrows.last()?);
        for w in arrows.windows(2) {
            if self.arrows[w[0]].source != self.arrows[w[1]].target {
                return None;
            }
        }
        Some(Path {
            arrows: arrows.to_vec(),
            source: self.arrows[*last].source,
            target: self.arrows[*first].target,
        })
    }

    fn path_name(&self, p: &Path) -> String {
        if p.is_empty() {
            return format!("e{}", self.vertices[p.source]);
        }
        let short = self.arrows.iter().all(|a| a.name.chars().count() == 1);
        let names: Vec<&str> = p.arrows.iter().map(|&a| self.arrows[a].name.as_str()).collect();
        names.join(if short { "" } else { "·" })
    }
}

/// A finite-dimensional path algebra with relations. Basis elements are
/// path classes; each has a source and target vertex.
#[derive(Clone, Debug)]
pub struct FDAlgebra {
    presentation: QuiverPresentation,
    basis: Vec<Path>,
    index: HashMap<Path, usize>,
    mult: MultiOp,
    algebra: AInfAlgebra,
    /// All paths of length at most `bound + 1`, and the ideal among them.
    paths: Vec<Path>,
    path_index: HashMap<Path, usize>,
    ideal: Echelon,
}

/// Builds `kQ/I`. Fails if a relation mixes non-parallel paths, or if some
/// path of length `bound + 1` survives in the quotient.
pub fn path_algebra(q: &QuiverPresentation) -> Result<FDAlgebra> {
    let field = q.field;
    let nv = q.vertices.len();
    for a in &q.arrows {
        if a.source >= nv || a.target >= nv {
            return Err(Error::ShapeMismatch(format!("arrow {} has an unknown endpoint", a.name)));
        }
    }
    let mut rels: Vec<(Path, Vec<(Scalar, Path)>)> = Vec::new();
    for r in &q.relations {
        let mut terms = Vec::new();
        let mut shape: Option<(usize, usize)> = None;
        for (c, w) in r {
            let describe = || {
                w.iter()
                    .map(|&a| q.arrows.get(a).map_or("?", |a| a.name.as_str()))
                    .collect::<Vec<_>>()
                    .join("")
            };
            if w.iter().any(|&a| a >= q.arrows.len()) {
                return Err(Error::NonComposableRelation(describe()));
            }
            let p = q.path(w).ok_or_else(|| Error::NonComposableRelation(describe()))?;
            if shape.is_some_and(|s| s != (p.source, p.target)) {
                return Err(Error::NonComposableRelation(describe()));
            }
            shape = Some((p.source, p.target));
            terms.push((c.clone(), p));
        }
        if let Some(first) = terms.first() {
            rels.push((first.1.clone(), terms));
        }
    }

    // all paths of length ≤ bound + 1, longest first so that they become
    // pivots and normal forms stay short
    let mut layers: Vec<Vec<Path>> = vec![(0..nv)
        .map(|v| Path {
            arrows: vec![],
            source: v,
            target: v,
        })
        .collect()];
    let mut total = nv;
    for _ in 0..=q.bound {
        let last = layers.last().unwrap();
        let mut next = Vec::new();
        for p in last {
            for (a, arrow) in q.arrows.iter().enumerate() {
                // append a on the right: it is traversed before p
                if p.is_empty() {
                    if arrow.target != p.source {
                        continue;
                    }
                    next.push(Path {
                        arrows: vec![a],
                        source: arrow.source,
                        target: arrow.target,
                    });
                } else if arrow.target == p.source {
                    let mut w = p.arrows.clone();
                    w.push(a);
                    next.push(Path {
                        arrows: w,
                        source: arrow.source,
                        target: p.target,
                    });
                }
            }
        }
        total += next.len();
        if total > 200_000 {
            return Err(Error::InvalidBound(format!(
                "more than 200000 paths of length ≤ {}",
                q.bound + 1
            )));
        }
        layers.push(next);
    }
    let paths: Vec<Path> = layers.into_iter().rev().flatten().collect();
    let path_index: HashMap<Path, usize> =
        paths.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let top = q.bound + 1;
    let concat = |a: &Path, b: &Path| -> Option<Path> {
        if a.source != b.target {
            return None;
        }
        let mut w = a.arrows.clone();
        w.extend_from_slice(&b.arrows);
        Some(Path {
            arrows: w,
            source: b.source,
            target: a.target,
        })
    };
    let mut ideal = Echelon::new();
    for (_, terms) in &rels {
        let (s, t) = (terms[0].1.source, terms[0].1.target);
        for left in paths.iter().filter(|p| p.source == t) {
            for right in paths.iter().filter(|p| p.target == s) {
                let mut v = Vector::new();
                for (c, p) in terms {
                    let Some(lp) = concat(left, p) else { continue };
                    let Some(full) = concat(&lp, right) else { continue };
                    if full.len() <= top {
                        v.add_term(path_index[&full], c);
                    }
                }
                if !v.is_zero() {
                    ideal.insert(v);
                }
            }
        }
    }
    for p in paths.iter().filter(|p| p.len() == top) {
        if !ideal.contains(&Vector::basis(path_index[p], field.one())) {
            return Err(Error::InfiniteAlgebra(q.bound));
        }
    }
    let pivots: std::collections::HashSet<usize> = ideal.pivots().iter().copied().collect();
    let mut basis: Vec<Path> = paths
        .iter()
        .enumerate()
        .filter(|(i, p)| !pivots.contains(i) && p.len() < top)
        .map(|(_, p)| p.clone())
        .collect();
    basis.sort_by(|a, b| (a.len(), &a.arrows, a.source).cmp(&(b.len(), &b.arrows, b.source)));
    let index: HashMap<Path, usize> =
        basis.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let space = GradedSpace::new(
        field,
        basis.iter().map(|p| {
            (
                q.path_name(p),
                p.arrows.iter().map(|&a| q.arrows[a].degree).sum::<i64>(),
            )
        }),
    )?;
    let mut b = FDAlgebra {
        presentation: q.clone(),
        basis,
        index,
        mult: MultiOp::new(2, 0),
        algebra: AInfAlgebra::ground(field, 2),
        paths,
        path_index,
        ideal,
    };
    let mut mult = MultiOp::new(2, 0);
    for i in 0..b.basis.len() {
        for j in 0..b.basis.len() {
            if let Some(p) = concat(&b.basis[i], &b.basis[j]) {
                let v = b.normal_form(&p);
                if !v.is_zero() {
                    mult.set(vec![i, j], v);
                }
            }
        }
    }
    let m1 = GradedMap::zero(&space, &space, 1);
    let mut alg = AInfAlgebra::from_dga_table(&m1, &mult, 2)?;
    if nv == 1 {
        alg = alg.with_unit(0)?;
    }
    b.mult = mult;
    b.algebra = alg;
    Ok(b)
}

impl FDAlgebra {
    pub fn presentation(&self) -> &QuiverPresentation {
        &self.presentation
    }

    pub fn field(&self) -> Field {
        self.presentation.field
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    pub fn name(&self, i: usize) -> &str {
        self.algebra.space().name(i)
    }

    pub fn source(&self, i: usize) -> usize {
        self.basis[i].source
    }

    pub fn target(&self, i: usize) -> usize {
        self.basis[i].target
    }

    /// The ordinary algebra (degree 0 when all arrows have degree 0).
    pub fn algebra(&self) -> &AInfAlgebra {
        &self.algebra
    }

    /// The idempotent `e_v` as a basis index.
    pub fn idempotent(&self, v: usize) -> usize {
        self.index[&Path {
            arrows: vec![],
            source: v,
            target: v,
        }]
    }

    /// `x·y = x∘y` on basis elements.
    pub fn mul(&self, x: usize, y: usize) -> Vector {
        self.mult.apply(&[x, y])
    }

    pub fn mul_vec(&self, x: &Vector, y: &Vector) -> Vector {
        let mut out = Vector::new();
        for (&i, c) in x {
            for (&j, e) in y {
                out.add_scaled(&self.mul(i, j), &(c * e));
            }
        }
        out
    }

    /// Class of an arbitrary path (zero if longer than the bound).
    pub fn normal_form(&self, p: &Path) -> Vector {
        let Some(&k) = self.path_index.get(p) else {
            return Vector::new();
        };
        let r = self.ideal.reduce(&Vector::basis(k, self.field().one()));
        r.iter()
            .map(|(&t, c)| (self.index[&self.paths[t]], c.clone()))
            .collect()
    }

    /// The basis element of an arrow, if it survives.
    pub fn arrow_element(&self, a: usize) -> Vector {
        let arrow = &self.presentation.arrows[a];
        self.normal_form(&Path {
            arrows: vec![a],
            source: arrow.source,
            target: arrow.target,
        })
    }
}
