use std::collections::{BTreeMap, HashMap};

use super::module::RightModule;
use super::quiver::FDAlgebra;
use super::resolution::{projective_resolution, ProjectiveResolution};
use crate::ainf_core::{AInfAlgebra, AInfMorphism, MultiOp};
use crate::error::{Error, Result};
use crate::grlin::{
    homology_with_contraction_preferring, ContractionData, GradedMap, GradedSpace, Vector,
};
use crate::transfer::{suspended_complex, transfer_restricted};

/// A basis element of `End(P)`: generator `src` of `P_k` goes to
/// `gen_tgt · path` in `P_{k−n}`; its degree is `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct EndBasis {
    pub k: usize,
    pub src: usize,
    pub n: usize,
    pub tgt: usize,
    pub path: usize,
}

/// `End^{≥0}` of a truncated projective resolution, as a dga.
#[derive(Clone, Debug)]
pub struct DgEnd {
    pub resolution: ProjectiveResolution,
    pub basis: Vec<EndBasis>,
    pub algebra: AInfAlgebra,
    index: HashMap<EndBasis, usize>,
}

impl DgEnd {
    pub fn index(&self, e: &EndBasis) -> Option<usize> {
        self.index.get(e).copied()
    }

    /// The summands `(source, target)` an element maps between.
    pub fn block(&self, x: usize) -> (usize, usize) {
        let e = &self.basis[x];
        let g = &self.resolution.generators;
        (g[e.k][e.src].1, g[e.k - e.n][e.tgt].1)
    }

    /// The identity of the resolution of summand `s`.
    pub fn projector(&self, b: &FDAlgebra, s: usize) -> Vector {
        let mut v = Vector::new();
        for (k, gens) in self.resolution.generators.iter().enumerate() {
            for (g, &(vert, sum)) in gens.iter().enumerate() {
                if sum == s {
                    let e = EndBasis {
                        k,
                        src: g,
                        n: 0,
                        tgt: g,
                        path: b.idempotent(vert),
                    };
                    v.add_term(self.index[&e], &b.field().one());
                }
            }
        }
        v
    }
}

/// Builds `End^{≥0}(P_{≤L})` with `d(f) = ∂∘f − (−1)^{|f|} f∘∂` and
/// composition as product.
pub fn dg_end(b: &FDAlgebra, res: &ProjectiveResolution, arity_max: usize) -> Result<DgEnd> {
    let field = b.field();
    let gens = &res.generators;
    let top = gens.len() - 1;
    let mut basis = Vec::new();
    for k in 0..=top {
        for n in 0..=k {
            for (src, &(vs, _)) in gens[k].iter().enumerate() {
                for (tgt, &(vt, _)) in gens[k - n].iter().enumerate() {
                    for path in 0..b.dim() {
                        if b.source(path) == vs && b.target(path) == vt {
                            basis.push(EndBasis { k, src, n, tgt, path });
                        }
                    }
                }
            }
        }
    }
    let index: HashMap<EndBasis, usize> = basis.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let names: Vec<(String, i64)> = basis
        .iter()
        .map(|e| {
            (
                format!("[{}.{}>{}.{}:{}]", e.k, e.src, e.k - e.n, e.tgt, b.name(e.path)),
                e.n as i64,
            )
        })
        .collect();
    let space = GradedSpace::new(field, names)?;
    // ∂ as a list of (generator of P_{k−1}, path) pairs for each generator of P_k
    let boundary = |k: usize, g: usize| -> Vec<(usize, usize, crate::grlin::Scalar)> {
        res.images[k][g]
            .iter()
            .map(|(&y, c)| {
                let (h, x) = res.terms[k - 1].basis[y];
                (h, x, c.clone())
            })
            .collect()
    };
    let mut by_source: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (i, e) in basis.iter().enumerate() {
        by_source.entry((e.k, e.src)).or_default().push(i);
    }
    let mut d_cols = Vec::with_capacity(basis.len());
    for e in &basis {
        let mut col = Vector::new();
        let lvl = e.k - e.n;
        // ∂∘f
        if lvl >= 1 {
            for (h, x, c) in boundary(lvl, e.tgt) {
                for (&p, c2) in &b.mul(x, e.path) {
                    let f = EndBasis {
                        k: e.k,
                        src: e.src,
                        n: e.n + 1,
                        tgt: h,
                        path: p,
                    };
                    col.add_term(index[&f], &(&c * c2));
                }
            }
        }
        // −(−1)^n f∘∂
        if e.k < top {
            let sign = -field.sign(e.n as i64);
            for (h, _) in gens[e.k + 1].iter().enumerate() {
                for (g, x, c) in boundary(e.k + 1, h) {
                    if g != e.src {
                        continue;
                    }
                    for (&p, c2) in &b.mul(e.path, x) {
                        let f = EndBasis {
                            k: e.k + 1,
                            src: h,
                            n: e.n + 1,
                            tgt: e.tgt,
                            path: p,
                        };
                        col.add_term(index[&f], &(&(&c * c2) * &sign));
                    }
                }
            }
        }
        d_cols.push(col);
    }
    let m1 = GradedMap::new(space.clone(), space.clone(), 1, d_cols)?;
    let mut m2 = MultiOp::new(2, 0);
    for (gi, g) in basis.iter().enumerate() {
        let Some(fs) = by_source.get(&(g.k - g.n, g.tgt)) else { continue };
        for &fi in fs {
            let f = &basis[fi];
            let mut v = Vector::new();
            for (&p, c) in &b.mul(f.path, g.path) {
                let e = EndBasis {
                    k: g.k,
                    src: g.src,
                    n: g.n + f.n,
                    tgt: f.tgt,
                    path: p,
                };
                v.add_term(index[&e], c);
            }
            if !v.is_zero() {
                m2.set(vec![fi, gi], v);
            }
        }
    }
    let algebra = AInfAlgebra::from_dga_table(&m1, &m2, arity_max)?;
    Ok(DgEnd {
        resolution: res.clone(),
        basis,
        algebra,
        index,
    })
}

/// The minimal A∞-structure on `Ext*(M, M)` for `M = ⊕ modules`, in
/// degrees `1..L−1` together with the summand identities in degree 0.
#[derive(Clone, Debug)]
pub struct ExtAlgebra {
    pub algebra: AInfAlgebra,
    pub morphism: AInfMorphism,
    pub dg: DgEnd,
    pub contraction: ContractionData,
    pub length: usize,
    /// `(source summand, target summand)` of each basis element.
    pub blocks: Vec<(usize, usize)>,
}

impl ExtAlgebra {
    /// Basis indices of `Ext^n` between the given summands.
    pub fn classes(&self, n: i64, src: usize, tgt: usize) -> Vec<usize> {
        (0..self.algebra.dim())
            .filter(|&x| self.algebra.space().degree(x) == n && self.blocks[x] == (src, tgt))
            .collect()
    }

    pub fn dimensions(&self) -> BTreeMap<i64, usize> {
        self.algebra.space().dimensions()
    }
}

/// Computes `Ext*(M, M)` with its transferred A∞-structure up to arity
/// `n_max`, from a resolution of length `length` (default `n_max + 1`).
/// Products whose inputs have total degree above `length − 1` are not
/// computed, since the truncation no longer sees them.
pub fn ext_ainf(
    b: &FDAlgebra,
    modules: &[RightModule],
    n_max: usize,
    length: Option<usize>,
) -> Result<ExtAlgebra> {
    if b.presentation().arrows.iter().any(|a| a.degree != 0) {
        return Err(Error::Unsupported("Ext needs arrows of degree 0".into()));
    }
    let len = length.unwrap_or(n_max + 1);
    if len < 2 {
        return Err(Error::InvalidBound("the resolution needs length at least 2".into()));
    }
    let homs: usize = modules
        .iter()
        .map(|m| modules.iter().map(|n| m.hom_dimension(b, n)).sum::<usize>())
        .sum();
    if homs != modules.len() {
        return Err(Error::Unsupported(format!(
            "Hom(M, M) has dimension {homs}; only sums of modules with Hom(M_s, M_t) = k·δ_st are handled"
        )));
    }
    let res = projective_resolution(b, modules, len)?;
    let dg = dg_end(b, &res, n_max.max(2))?;
    let preferred: Vec<Vector> = (0..modules.len()).map(|s| dg.projector(b, s)).collect();
    let ct = homology_with_contraction_preferring(&suspended_complex(&dg.algebra)?, &preferred)?;

    let window = (len - 1) as i64;
    let mut keep = Vec::new();
    let mut names: Vec<String> = (0..ct.homology.dim()).map(|t| ct.homology.name(t).to_string()).collect();
    let mut blocks_all = vec![(0, 0); ct.homology.dim()];
    let mut counts: BTreeMap<(i64, usize, usize), usize> = BTreeMap::new();
    for t in 0..ct.homology.dim() {
        let rep = ct.i.column(t);
        let Some(&x) = rep.keys().next() else { continue };
        let blk = dg.block(x);
        blocks_all[t] = blk;
        let deg = ct.homology.degree(t) + 1;
        if deg == 0 {
            if let Some(s) = preferred.iter().position(|p| p == rep) {
                keep.push(t);
                names[t] = format!("id_{}", modules[s].name);
            }
        } else if (1..=window).contains(&deg) {
            keep.push(t);
            *counts.entry((deg, blk.0, blk.1)).or_default() += 1;
        }
    }
    let mut seen: BTreeMap<(i64, usize, usize), usize> = BTreeMap::new();
    for &t in &keep {
        let deg = ct.homology.degree(t) + 1;
        if deg == 0 {
            continue;
        }
        let (s, u) = blocks_all[t];
        let key = (deg, s, u);
        let r = seen.entry(key).or_default();
        let base = format!("ext{deg}_{}_{}", modules[s].name, modules[u].name);
        names[t] = if counts[&key] > 1 { format!("{base}.{r}") } else { base };
        *r += 1;
    }
    let homology = GradedSpace::new(
        b.field(),
        (0..ct.homology.dim()).map(|t| (names[t].clone(), ct.homology.degree(t))),
    )?;
    let space = ct.complex.space().clone();
    let ct = ContractionData {
        complex: ct.complex.clone(),
        homology: homology.clone(),
        p: GradedMap::new(space.clone(), homology.clone(), 0, ct.p.columns().to_vec())?,
        i: GradedMap::new(homology, space, 0, ct.i.columns().to_vec())?,
        h: ct.h,
    };
    let (algebra, morphism) = transfer_restricted(&dg.algebra, &ct, n_max, &keep, Some(window))?;
    let blocks = keep.iter().map(|&t| blocks_all[t]).collect();
    Ok(ExtAlgebra {
        algebra,
        morphism,
        dg,
        contraction: ct,
        length: len,
        blocks,
    })
}
