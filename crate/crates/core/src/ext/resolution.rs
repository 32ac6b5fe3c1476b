use std::collections::HashMap;

use super::module::RightModule;
use super::quiver::FDAlgebra;
use crate::error::{Error, Result};
use crate::grlin::{reduce_columns, Echelon, Vector};

/// A free right module `⊕_g e_{v(g)} B`, with basis `(g, b)` for the paths
/// `b` ending at `v(g)`.
#[derive(Clone, Debug)]
pub struct FreeModule {
    pub vertices: Vec<usize>,
    pub basis: Vec<(usize, usize)>,
    index: HashMap<(usize, usize), usize>,
    module: RightModule,
}

impl FreeModule {
    pub fn new(b: &FDAlgebra, vertices: Vec<usize>) -> Self {
        let basis: Vec<(usize, usize)> = vertices
            .iter()
            .enumerate()
            .flat_map(|(g, &v)| (0..b.dim()).filter(move |&x| b.target(x) == v).map(move |x| (g, x)))
            .collect();
        let index: HashMap<(usize, usize), usize> =
            basis.iter().enumerate().map(|(i, &k)| (k, i)).collect();
        let q = b.presentation();
        let action = (0..q.arrows.len())
            .map(|a| {
                let arrow = b.arrow_element(a);
                basis
                    .iter()
                    .map(|&(g, x)| {
                        b.mul_vec(&Vector::basis(x, b.field().one()), &arrow)
                            .iter()
                            .map(|(&y, c)| (index[&(g, y)], c.clone()))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let module = RightModule {
            name: "free".into(),
            names: basis.iter().map(|&(g, x)| format!("g{g}·{}", b.name(x))).collect(),
            vertex: basis.iter().map(|&(_, x)| b.source(x)).collect(),
            action,
        };
        FreeModule {
            vertices,
            basis,
            index,
            module,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn index(&self, g: usize, x: usize) -> Option<usize> {
        self.index.get(&(g, x)).copied()
    }

    pub fn module(&self) -> &RightModule {
        &self.module
    }

    /// The generator `g`, i.e. `(g, e_{v(g)})`.
    pub fn generator(&self, b: &FDAlgebra, g: usize) -> usize {
        self.index[&(g, b.idempotent(self.vertices[g]))]
    }
}

/// A minimal projective resolution `P_L → ⋯ → P_0 → M` of a direct sum of
/// modules, computed summand by summand.
#[derive(Clone, Debug)]
pub struct ProjectiveResolution {
    pub summands: Vec<RightModule>,
    /// `generators[k][g] = (vertex, summand)` for the generators of `P_k`.
    pub generators: Vec<Vec<(usize, usize)>>,
    pub terms: Vec<FreeModule>,
    /// `images[k][g]`: the image of generator `g` of `P_k`, in `P_{k−1}`
    /// coordinates for `k ≥ 1` and in `M = ⊕ M_s` for `k = 0`.
    pub images: Vec<Vec<Vector>>,
    /// Whether the resolution stopped because a kernel vanished.
    pub finite: bool,
}

impl ProjectiveResolution {
    pub fn length(&self) -> usize {
        self.terms.len() - 1
    }

    /// Offset of each summand inside `M = ⊕ M_s`.
    pub fn offsets(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.summands.len());
        let mut acc = 0;
        for m in &self.summands {
            out.push(acc);
            acc += m.dim();
        }
        out
    }

    /// `∂_k` as columns from `P_k` to `P_{k−1}` (or to `M` for `k = 0`).
    pub fn differential(&self, b: &FDAlgebra, k: usize) -> Vec<Vector> {
        let target: &RightModule;
        let total;
        let offsets = self.offsets();
        if k == 0 {
            let sum = direct_sum(&self.summands, &offsets);
            total = sum;
            target = &total;
        } else {
            target = self.terms[k - 1].module();
        }
        self.terms[k]
            .basis
            .iter()
            .map(|&(g, x)| target.act(b, &self.images[k][g], x))
            .collect()
    }

    /// Checks `∂∂ = 0`, exactness at every `P_k` below the top, and
    /// surjectivity onto `M`.
    pub fn verify(&self, b: &FDAlgebra) -> Result<()> {
        let field = b.field();
        let m_dim: usize = self.summands.iter().map(|m| m.dim()).sum();
        let d: Vec<Vec<Vector>> = (0..self.terms.len()).map(|k| self.differential(b, k)).collect();
        let rank = |cols: &[Vector]| cols.len() - reduce_columns(field, cols).kernel.len();
        if rank(&d[0]) != m_dim {
            return Err(Error::NotAComplex("P_0 does not cover the module".into()));
        }
        for k in 1..self.terms.len() {
            for col in &d[k] {
                let mut v = Vector::new();
                for (&t, c) in col {
                    v.add_scaled(&d[k - 1][t], c);
                }
                if !v.is_zero() {
                    return Err(Error::NotAComplex(format!("∂_{}∂_{k} ≠ 0", k - 1)));
                }
            }
        }
        let top = self.terms.len() - 1;
        for k in 0..self.terms.len() {
            let kernel = self.terms[k].dim() - rank(&d[k]);
            let image = if k < top { rank(&d[k + 1]) } else if self.finite { 0 } else { continue };
            if kernel != image {
                return Err(Error::NotAComplex(format!("not exact at P_{k}")));
            }
        }
        Ok(())
    }
}

fn direct_sum(summands: &[RightModule], offsets: &[usize]) -> RightModule {
    let narrows = summands.first().map_or(0, |m| m.action.len());
    let mut out = RightModule {
        name: "M".into(),
        names: vec![],
        vertex: vec![],
        action: vec![vec![]; narrows],
    };
    for (m, &off) in summands.iter().zip(offsets) {
        out.names.extend(m.names.iter().cloned());
        out.vertex.extend(m.vertex.iter().copied());
        for a in 0..narrows {
            out.action[a].extend(
                m.action[a]
                    .iter()
                    .map(|v| v.iter().map(|(&y, c)| (y + off, c.clone())).collect::<Vector>()),
            );
        }
    }
    out
}

/// One summand: generators of `P_k` as (vertex, image in the previous term).
fn resolve_one(b: &FDAlgebra, m: &RightModule, length: usize) -> (Vec<Vec<(usize, Vector)>>, bool) {
    let field = b.field();
    let nv = b.presentation().vertices.len();
    let mut out = Vec::new();
    let mut ambient = m.clone();
    let mut k_basis: Vec<Vector> = (0..m.dim()).map(|x| Vector::basis(x, field.one())).collect();
    for k in 0..=length {
        // radical part: K·arrows
        let mut rad = Echelon::new();
        for v in &k_basis {
            for a in 0..ambient.action.len() {
                let w = ambient.act_arrows(v, &[a]);
                if !w.is_zero() {
                    rad.insert(w);
                }
            }
        }
        let mut gens = Vec::new();
        for vert in 0..nv {
            for v in &k_basis {
                let w = ambient.act(b, v, b.idempotent(vert));
                if !w.is_zero() && rad.insert(w.clone()) {
                    gens.push((vert, w));
                }
            }
        }
        let free = FreeModule::new(b, gens.iter().map(|g| g.0).collect());
        let cols: Vec<Vector> = free
            .basis
            .iter()
            .map(|&(g, x)| ambient.act(b, &gens[g].1, x))
            .collect();
        let kernel = reduce_columns(field, &cols).kernel;
        out.push(gens);
        if kernel.is_empty() {
            return (out, true);
        }
        if k == length {
            break;
        }
        ambient = free.module().clone();
        k_basis = kernel;
    }
    (out, false)
}

/// Resolves `⊕ modules` up to `P_length`.
pub fn projective_resolution(
    b: &FDAlgebra,
    modules: &[RightModule],
    length: usize,
) -> Result<ProjectiveResolution> {
    if modules.is_empty() {
        return Err(Error::InvalidBound("no modules to resolve".into()));
    }
    let mut generators: Vec<Vec<(usize, usize)>> = vec![];
    let mut images: Vec<Vec<Vector>> = vec![];
    let per: Vec<_> = modules.iter().map(|m| resolve_one(b, m, length)).collect();
    let top = per.iter().map(|(g, _)| g.len()).max().unwrap_or(1) - 1;
    let finite = per.iter().all(|(_, f)| *f);
    let m_offsets: Vec<usize> = modules
        .iter()
        .scan(0, |acc, m| {
            let o = *acc;
            *acc += m.dim();
            Some(o)
        })
        .collect();
    let mut prev_free: Option<FreeModule> = None;
    let mut prev_start: Vec<usize> = vec![];
    for k in 0..=top {
        let mut gens = vec![];
        let mut starts = vec![];
        for (s, (g, _)) in per.iter().enumerate() {
            starts.push(gens.len());
            if let Some(level) = g.get(k) {
                gens.extend(level.iter().map(|(v, _)| (*v, s)));
            }
        }
        let free = FreeModule::new(b, gens.iter().map(|g| g.0).collect());
        let mut ims = vec![];
        for (s, (g, _)) in per.iter().enumerate() {
            let Some(level) = g.get(k) else { continue };
            for (_, img) in level {
                let v: Vector = match &prev_free {
                    None => img.iter().map(|(&y, c)| (y + m_offsets[s], c.clone())).collect(),
                    Some(pf) => {
                        // re-index the summand-local free module into the global one
                        let local = FreeModule::new(b, per[s].0[k - 1].iter().map(|g| g.0).collect());
                        img.iter()
                            .map(|(&y, c)| {
                                let (lg, x) = local.basis[y];
                                (pf.index(prev_start[s] + lg, x).unwrap(), c.clone())
                            })
                            .collect()
                    }
                };
                ims.push(v);
            }
        }
        generators.push(gens);
        images.push(ims);
        prev_free = Some(free);
        prev_start = starts;
    }
    let terms = generators
        .iter()
        .map(|g| FreeModule::new(b, g.iter().map(|x| x.0).collect()))
        .collect();
    Ok(ProjectiveResolution {
        summands: modules.to_vec(),
        generators,
        terms,
        images,
        finite,
    })
}
