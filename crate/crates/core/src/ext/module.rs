use super::quiver::FDAlgebra;
use crate::error::{Error, Result};
use crate::grlin::{reduce_columns, Vector};

/// A finite-dimensional right module over a path algebra. Each basis
/// element lies in `M e_v` for one vertex `v`; `action[a][m]` is `m·α` for
/// the arrow `α = a`, which is zero unless `m` sits at the target of `α`.
#[derive(Clone, Debug)]
pub struct RightModule {
    pub name: String,
    pub names: Vec<String>,
    pub vertex: Vec<usize>,
    pub action: Vec<Vec<Vector>>,
}

impl RightModule {
    /// Validates vertex compatibility and that the relations act by zero.
    pub fn new(
        b: &FDAlgebra,
        name: &str,
        names: Vec<String>,
        vertex: Vec<usize>,
        action: Vec<Vec<Vector>>,
    ) -> Result<Self> {
        let q = b.presentation();
        let m = RightModule {
            name: name.to_string(),
            names,
            vertex,
            action,
        };
        let dim = m.dim();
        if m.vertex.len() != dim || m.action.len() != q.arrows.len() {
            return Err(Error::ShapeMismatch(format!("module {name}: wrong table sizes")));
        }
        for (a, arrow) in q.arrows.iter().enumerate() {
            if m.action[a].len() != dim {
                return Err(Error::ShapeMismatch(format!("module {name}: wrong table sizes")));
            }
            for x in 0..dim {
                let v = &m.action[a][x];
                if v.is_zero() {
                    continue;
                }
                if m.vertex[x] != arrow.target || v.keys().any(|&y| y >= dim || m.vertex[y] != arrow.source) {
                    return Err(Error::ShapeMismatch(format!(
                        "module {name}: {}·{} is not compatible with the vertices",
                        m.names[x], arrow.name
                    )));
                }
            }
        }
        for r in &q.relations {
            for x in 0..dim {
                let mut v = Vector::new();
                for (c, w) in r {
                    v.add_scaled(&m.act_arrows(&Vector::basis(x, b.field().one()), w), c);
                }
                if !v.is_zero() {
                    return Err(Error::ShapeMismatch(format!(
                        "module {name}: a relation does not act by zero on {}",
                        m.names[x]
                    )));
                }
            }
        }
        Ok(m)
    }

    /// The simple module at `v`.
    pub fn simple(b: &FDAlgebra, v: usize) -> Self {
        let q = b.presentation();
        RightModule {
            name: format!("S{}", q.vertices[v]),
            names: vec![format!("s{}", q.vertices[v])],
            vertex: vec![v],
            action: vec![vec![Vector::new()]; q.arrows.len()],
        }
    }

    /// `e_v B`, spanned by the paths ending at `v`.
    pub fn projective(b: &FDAlgebra, v: usize) -> Self {
        let q = b.presentation();
        let elems: Vec<usize> = (0..b.dim()).filter(|&x| b.target(x) == v).collect();
        let mut pos = vec![usize::MAX; b.dim()];
        for (s, &x) in elems.iter().enumerate() {
            pos[x] = s;
        }
        let action = (0..q.arrows.len())
            .map(|a| {
                let arrow = b.arrow_element(a);
                elems
                    .iter()
                    .map(|&x| {
                        b.mul_vec(&Vector::basis(x, b.field().one()), &arrow)
                            .iter()
                            .map(|(&y, c)| (pos[y], c.clone()))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        RightModule {
            name: format!("P{}", q.vertices[v]),
            names: elems.iter().map(|&x| b.name(x).to_string()).collect(),
            vertex: elems.iter().map(|&x| b.source(x)).collect(),
            action,
        }
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    /// `m·(α_1∘⋯∘α_k)`, applying `α_1` first.
    pub fn act_arrows(&self, m: &Vector, arrows: &[usize]) -> Vector {
        let mut v = m.clone();
        for &a in arrows {
            let mut next = Vector::new();
            for (&x, c) in &v {
                next.add_scaled(&self.action[a][x], c);
            }
            v = next;
        }
        v
    }

    /// `m·b` for a basis element `b` of the algebra.
    pub fn act(&self, b: &FDAlgebra, m: &Vector, x: usize) -> Vector {
        let p = &b.basis()[x];
        if p.is_empty() {
            return m.filtered(|&y| self.vertex[y] == p.source);
        }
        self.act_arrows(m, &p.arrows)
    }

    /// `dim Hom_B(M, N)` by solving the linear conditions on
    /// vertex-preserving maps.
    pub fn hom_dimension(&self, b: &FDAlgebra, other: &RightModule) -> usize {
        let field = b.field();
        // unknowns: φ(x) has a coefficient on y for vertex(x) = vertex(y)
        let unknowns: Vec<(usize, usize)> = (0..self.dim())
            .flat_map(|x| (0..other.dim()).map(move |y| (x, y)))
            .filter(|&(x, y)| self.vertex[x] == other.vertex[y])
            .collect();
        let n = other.dim();
        let narrows = b.presentation().arrows.len();
        // one equation per (arrow, x, output coordinate): φ(x·α) − φ(x)·α
        let cols: Vec<Vector> = unknowns
            .iter()
            .map(|&(x, y)| {
                let mut col = Vector::new();
                for a in 0..narrows {
                    // contribution to φ(x'·α) for x' with x in x'·α
                    for xp in 0..self.dim() {
                        if let Some(c) = self.action[a][xp].get(&x) {
                            col.add_term((a * self.dim() + xp) * n + y, c);
                        }
                    }
                    // contribution to φ(x)·α
                    for (&z, c) in &other.action[a][y] {
                        col.add_term((a * self.dim() + x) * n + z, &-c);
                    }
                }
                col
            })
            .collect();
        reduce_columns(field, &cols).kernel.len()
    }
}
