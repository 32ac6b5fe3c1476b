//! Minimal models by homotopy transfer along a contraction of `(SA, b_1)`.
//!
//! For a contraction `(p, i, h)` the minimal operations are sums over planar
//! rooted trees: leaves carry `i`, a vertex with `m` children carries `b_m`,
//! internal edges carry `h` and the root carries `p`. Every tree enters with
//! coefficient +1 and the only signs are the Koszul signs of the `b_m`. The
//! same sum with `h` at the root gives the components of an
//! A∞-quasi-isomorphism `H → A`.
//!
//! The sums are computed by the recursion `Φ_1 = i`,
//! `Φ_n = h Σ_{m ≥ 2} Σ b_m(Φ_{k_1} ⊗ ⋯ ⊗ Φ_{k_m})`, which groups the trees
//! by their root vertex.

use std::collections::HashMap;
use std::fmt;

use crate::ainf_core::{compositions, words, AInfAlgebra, AInfMorphism, MultiOp};
use crate::error::{Error, Result};
use crate::grlin::{
    homology_with_contraction, tensor_of, ChainComplex, ContractionData, GradedMap, GradedSpace,
    Vector, Word,
};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PlanarTree {
    Leaf,
    Node(Vec<PlanarTree>),
}

impl PlanarTree {
    pub fn leaves(&self) -> usize {
        match self {
            PlanarTree::Leaf => 1,
            PlanarTree::Node(children) => children.iter().map(|c| c.leaves()).sum(),
        }
    }

    pub fn internal_vertices(&self) -> usize {
        match self {
            PlanarTree::Leaf => 0,
            PlanarTree::Node(children) => {
                1 + children.iter().map(|c| c.internal_vertices()).sum::<usize>()
            }
        }
    }
}

impl fmt::Display for PlanarTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlanarTree::Leaf => write!(f, "|"),
            PlanarTree::Node(children) => {
                write!(f, "(")?;
                for c in children {
                    write!(f, "{c}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// All planar rooted trees with `n` leaves whose internal vertices have at
/// least two children. Ordered by the composition at the root, then
/// recursively left to right.
pub fn planar_trees(n: usize) -> Result<Vec<PlanarTree>> {
    if n == 0 {
        return Err(Error::InvalidBound("a planar tree has at least one leaf".into()));
    }
    let mut memo: HashMap<usize, Vec<PlanarTree>> = HashMap::new();
    Ok(trees_memo(n, &mut memo))
}

fn trees_memo(n: usize, memo: &mut HashMap<usize, Vec<PlanarTree>>) -> Vec<PlanarTree> {
    if n == 1 {
        return vec![PlanarTree::Leaf];
    }
    if let Some(t) = memo.get(&n) {
        return t.clone();
    }
    let mut out = Vec::new();
    for parts in compositions(n).into_iter().filter(|p| p.len() >= 2) {
        let mut partial: Vec<Vec<PlanarTree>> = vec![Vec::new()];
        for &k in &parts {
            let subs = trees_memo(k, memo);
            partial = partial
                .into_iter()
                .flat_map(|prefix| {
                    subs.iter().map(move |s| {
                        let mut p = prefix.clone();
                        p.push(s.clone());
                        p
                    })
                })
                .collect();
        }
        out.extend(partial.into_iter().map(PlanarTree::Node));
    }
    memo.insert(n, out.clone());
    out
}

/// The complex `(SA, b_1)`: same basis names as `A`, degrees lowered by one.
pub fn suspended_complex(a: &AInfAlgebra) -> Result<ChainComplex> {
    let space = GradedSpace::new(
        a.field(),
        a.space().basis().iter().map(|e| (e.name.clone(), e.degree - 1)),
    )?;
    let b1 = a.b(1);
    let cols = (0..a.dim()).map(|x| b1.apply(&[x])).collect();
    ChainComplex::new(GradedMap::new(space.clone(), space, 1, cols)?)
}

struct Transfer<'a> {
    a: &'a AInfAlgebra,
    ct: &'a ContractionData,
    higher: Vec<(usize, &'a MultiOp)>,
    phi: HashMap<Word, Vector>,
}

impl<'a> Transfer<'a> {
    fn new(a: &'a AInfAlgebra, ct: &'a ContractionData) -> Self {
        Transfer {
            a,
            ct,
            higher: a.ops().filter(|(m, _)| *m >= 2).collect(),
            phi: HashMap::new(),
        }
    }

    /// `Σ_{m ≥ 2} Σ b_m(Φ ⊗ ⋯ ⊗ Φ)` on a word of homology indices.
    fn psi(&mut self, w: &[usize]) -> Vector {
        let n = w.len();
        let field = self.a.field();
        let mut total = Vector::new();
        for parts in compositions(n) {
            let m = parts.len();
            if m < 2 {
                continue;
            }
            let Some(&(_, op)) = self.higher.iter().find(|(k, _)| *k == m) else {
                continue;
            };
            let mut pieces = Vec::with_capacity(m);
            let mut start = 0;
            for &k in &parts {
                let v = self.phi(&w[start..start + k]);
                start += k;
                if v.is_zero() {
                    break;
                }
                pieces.push(v);
            }
            if pieces.len() < m {
                continue;
            }
            let refs: Vec<&Vector> = pieces.iter().collect();
            total.add_assign(&op.apply_tensor(&tensor_of(field, &refs)));
        }
        total
    }

    fn phi(&mut self, w: &[usize]) -> Vector {
        if let Some(v) = self.phi.get(w) {
            return v.clone();
        }
        let v = if w.len() == 1 {
            self.ct.i.column(w[0]).clone()
        } else {
            let s = self.psi(w);
            self.ct.h.apply(&s)
        };
        self.phi.insert(w.to_vec(), v.clone());
        v
    }
}

fn check_inputs(a: &AInfAlgebra, ct: &ContractionData, n_max: usize) -> Result<()> {
    if a.is_weak() {
        return Err(Error::WeakStructure);
    }
    if n_max == 0 {
        return Err(Error::InvalidBound("n_max must be at least 1".into()));
    }
    if n_max > a.arity_max() {
        return Err(Error::ArityOverflow {
            requested: n_max,
            bound: a.arity_max(),
        });
    }
    let c = suspended_complex(a)?;
    if ct.complex.space().dim() != c.space().dim()
        || ct
            .complex
            .space()
            .basis()
            .iter()
            .zip(c.space().basis())
            .any(|(x, y)| x.degree != y.degree)
        || ct.complex.differential().columns() != c.differential().columns()
    {
        return Err(Error::ContractionFailed(
            "the contraction is not one of (SA, b_1)".into(),
        ));
    }
    ct.verify()?;
    if let Some((n, w)) = (1..=n_max).find_map(|n| {
        let d = a.stasheff_defect(n).ok()?;
        let first = d.entries().next().map(|(w, _)| (n, w.clone()));
        first
    }) {
        return Err(Error::NotDga(format!(
            "Stasheff identity {n} fails on {}",
            a.describe(&w)
        )));
    }
    Ok(())
}

/// The homology as an unsuspended space (degrees raised back by one).
fn homology_space(ct: &ContractionData, keep: &[usize]) -> Result<GradedSpace> {
    let h = &ct.homology;
    GradedSpace::new(
        h.field(),
        keep.iter().map(|&t| (h.name(t).to_string(), h.degree(t) + 1)),
    )
}

/// Transfers the structure of `a` to its homology along `ct`, up to arity
/// `n_max`. Returns the minimal algebra on `H` and the A∞-morphism `H → A`
/// with `f_1 = i`.
pub fn transfer_structure(
    a: &AInfAlgebra,
    ct: &ContractionData,
    n_max: usize,
) -> Result<(AInfAlgebra, AInfMorphism)> {
    let all: Vec<usize> = (0..ct.homology.dim()).collect();
    transfer_restricted(a, ct, n_max, &all, a.degree_window())
}

/// As [`transfer_structure`], restricted to the span of the homology basis
/// elements in `keep`, which must be closed under the transferred
/// operations, and to input words of total degree at most `window`.
pub fn transfer_restricted(
    a: &AInfAlgebra,
    ct: &ContractionData,
    n_max: usize,
    keep: &[usize],
    window: Option<i64>,
) -> Result<(AInfAlgebra, AInfMorphism)> {
    check_inputs(a, ct, n_max)?;
    let h_space = homology_space(ct, keep)?;
    let mut position = vec![None; ct.homology.dim()];
    for (s, &t) in keep.iter().enumerate() {
        position[t] = Some(s);
    }
    let mut tr = Transfer::new(a, ct);
    let mut ops = Vec::new();
    let mut comps = vec![MultiOp::from_entries(
        1,
        0,
        keep.iter()
            .enumerate()
            .map(|(s, &t)| (vec![s], ct.i.column(t).clone())),
    )];
    for n in 2..=n_max {
        let mut bn = MultiOp::new(n, 1);
        let mut fnn = MultiOp::new(n, 0);
        for u in words(keep.len(), n, |s| h_space.degree(s), window) {
            let w: Word = u.iter().map(|&s| keep[s]).collect();
            let s = tr.psi(&w);
            let mut out = Vector::new();
            for (&t, c) in &ct.p.apply(&s) {
                let Some(pos) = position[t] else {
                    return Err(Error::ContractionFailed(format!(
                        "b_{n} leaves the chosen subspace on {}",
                        h_space_describe(&h_space, &u)
                    )));
                };
                out.add_term(pos, c);
            }
            bn.set(u.clone(), out);
            let f = ct.h.apply(&s);
            tr.phi.insert(w, f.clone());
            fnn.set(u, f);
        }
        ops.push(bn);
        comps.push(fnn);
    }
    let h_alg = AInfAlgebra::new(h_space, n_max, ops)?.with_degree_window(window);
    let morphism = AInfMorphism::new(h_alg.clone(), a.clone(), n_max, comps)?;
    Ok((h_alg, morphism))
}

fn h_space_describe(h: &GradedSpace, u: &[usize]) -> String {
    let names: Vec<&str> = u.iter().map(|&s| h.name(s)).collect();
    format!("({})", names.join(","))
}

/// Contracts `(SA, b_1)` onto its homology and transfers.
pub fn minimal_model(a: &AInfAlgebra, n_max: usize) -> Result<(AInfAlgebra, AInfMorphism)> {
    if a.is_weak() {
        return Err(Error::WeakStructure);
    }
    let ct = homology_with_contraction(&suspended_complex(a)?)?;
    transfer_structure(a, &ct, n_max)
}

/// `b^T` for a single tree on a word of homology indices, with `p` at the
/// root (or `h` if `root_h`).
pub fn tree_term(
    a: &AInfAlgebra,
    ct: &ContractionData,
    tree: &PlanarTree,
    word: &[usize],
    root_h: bool,
) -> Result<Vector> {
    if tree.leaves() != word.len() {
        return Err(Error::ShapeMismatch(format!(
            "tree has {} leaves, word has {} letters",
            tree.leaves(),
            word.len()
        )));
    }
    fn eval(a: &AInfAlgebra, ct: &ContractionData, t: &PlanarTree, w: &[usize]) -> Vector {
        match t {
            PlanarTree::Leaf => ct.i.column(w[0]).clone(),
            PlanarTree::Node(children) => {
                let mut pieces = Vec::new();
                let mut start = 0;
                for c in children {
                    let k = c.leaves();
                    let v = eval(a, ct, c, &w[start..start + k]);
                    start += k;
                    pieces.push(match c {
                        PlanarTree::Leaf => v,
                        PlanarTree::Node(_) => ct.h.apply(&v),
                    });
                }
                let refs: Vec<&Vector> = pieces.iter().collect();
                a.b(children.len()).apply_tensor(&tensor_of(a.field(), &refs))
            }
        }
    }
    let v = eval(a, ct, tree, word);
    Ok(match tree {
        PlanarTree::Leaf => {
            if root_h {
                Vector::new()
            } else {
                ct.p.apply(&v)
            }
        }
        _ if root_h => ct.h.apply(&v),
        _ => ct.p.apply(&v),
    })
}
