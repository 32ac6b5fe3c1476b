//! Exact Gaussian elimination on sparse vectors.

use super::field::Field;
use super::sparse::Vector;

/// A reduced row echelon basis of a subspace. Each row has leading
/// coefficient 1 and no other row has a nonzero entry in its pivot column.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_vectors<'a>(vectors: impl IntoIterator<Item = &'a Vector>) -> Self {
        let mut e = Echelon::new();
        for v in vectors {
            e.insert(v.clone());
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vector] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `v` modulo the span; the result has no pivot entries.
    pub fn reduce(&self, v: &Vector) -> Vector {
        let mut v = v.clone();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if let Some(c) = v.get(&p).cloned() {
                v.add_scaled(row, &-c);
            }
        }
        v
    }

    pub fn contains(&self, v: &Vector) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the span. Returns `true` if the rank grew.
    pub fn insert(&mut self, v: Vector) -> bool {
        let r = self.reduce(&v);
        let Some((&p, c)) = r.leading() else {
            return false;
        };
        let r = r.scaled(&c.inv());
        for (row, _) in self.rows.iter_mut().zip(&self.pivots) {
            if let Some(c) = row.get(&p).cloned() {
                row.add_scaled(&r, &-c);
            }
        }
        let pos = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(pos, p);
        self.rows.insert(pos, r);
        true
    }
}

/// Kernel and image data of a linear map given by its columns.
pub struct ColumnReduction {
    /// Basis of the kernel, in source coordinates.
    pub kernel: Vec<Vector>,
    /// Source indices whose images form a basis of the image.
    pub independent: Vec<usize>,
}

/// Computes a kernel basis and a set of independent columns for the map
/// `e_j ↦ columns[j]`.
pub fn reduce_columns(field: Field, columns: &[Vector]) -> ColumnReduction {
    let mut image = Echelon::new();
    // For each image pivot row, the source combination producing it.
    let mut combos: Vec<(usize, Vector)> = Vec::new();
    let mut kernel = Vec::new();
    let mut independent = Vec::new();
    for (j, col) in columns.iter().enumerate() {
        let mut v = col.clone();
        let mut combo = Vector::basis(j, field.one());
        for (row, combo_row) in image.rows.iter().zip(&combos) {
            let p = combo_row.0;
            if let Some(c) = v.get(&p).cloned() {
                v.add_scaled(row, &-&c);
                combo.add_scaled(&combo_row.1, &-c);
            }
        }
        match v.leading() {
            None => kernel.push(combo),
            Some((&p, c)) => {
                let inv = c.inv();
                let v = v.scaled(&inv);
                let combo = combo.scaled(&inv);
                // Keep rows fully reduced so reduction above is single pass.
                for (row, combo_row) in image.rows.iter_mut().zip(combos.iter_mut()) {
                    if let Some(c) = row.get(&p).cloned() {
                        row.add_scaled(&v, &-&c);
                        combo_row.1.add_scaled(&combo, &-c);
                    }
                }
                image.rows.push(v);
                image.pivots.push(p);
                combos.push((p, combo));
                independent.push(j);
            }
        }
    }
    ColumnReduction {
        kernel,
        independent,
    }
}

/// Solves `Σ_j x_j columns[j] = target`, returning some solution `x`.
pub fn solve(columns: &[Vector], target: &Vector) -> Option<Vector> {
    let mut rows: Vec<(usize, Vector, Vector)> = Vec::new();
    for (j, col) in columns.iter().enumerate() {
        let Some((_, c)) = col.leading() else {
            continue;
        };
        let mut v = col.clone();
        let mut combo = Vector::basis(j, c.field().one());
        for (p, row, crow) in &rows {
            if let Some(c) = v.get(p).cloned() {
                v.add_scaled(row, &-&c);
                combo.add_scaled(crow, &-c);
            }
        }
        if let Some((&p, c)) = v.leading() {
            let inv = c.inv();
            rows.push((p, v.scaled(&inv), combo.scaled(&inv)));
        }
    }
    let mut v = target.clone();
    let mut x = Vector::new();
    for (p, row, crow) in &rows {
        if let Some(c) = v.get(p).cloned() {
            v.add_scaled(row, &-&c);
            x.add_scaled(crow, &c);
        }
    }
    v.is_zero().then_some(x)
}

/// Rank of a list of vectors.
pub fn rank(vectors: &[Vector]) -> usize {
    Echelon::from_vectors(vectors).rank()
}

/// Basis of the intersection of two subspaces given by spanning sets.
pub fn intersection(field: Field, a: &[Vector], b: &[Vector]) -> Vec<Vector> {
    // x in span(a) ∩ span(b) iff Σ s_i a_i − Σ t_j b_j = 0.
    let mut cols: Vec<Vector> = a.to_vec();
    for v in b {
        cols.push(v.negated());
    }
    let red = reduce_columns(field, &cols);
    let mut out = Echelon::new();
    for k in red.kernel {
        let mut x = Vector::new();
        for (&i, c) in &k {
            if i < a.len() {
                x.add_scaled(&a[i], c);
            }
        }
        if !x.is_zero() {
            out.insert(x);
        }
    }
    out.rows
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vec_of(f: Field, entries: &[(usize, i64)]) -> Vector {
        entries.iter().map(|&(i, c)| (i, f.from_i64(c))).collect()
    }

    #[test]
    fn kernel_and_image() {
        let f = Field::Rational;
        // columns: e0 -> (1,1), e1 -> (2,2), e2 -> (0,1)
        let cols = vec![
            vec_of(f, &[(0, 1), (1, 1)]),
            vec_of(f, &[(0, 2), (1, 2)]),
            vec_of(f, &[(1, 1)]),
        ];
        let r = reduce_columns(f, &cols);
        assert_eq!(r.independent, vec![0, 2]);
        assert_eq!(r.kernel.len(), 1);
        let k = &r.kernel[0];
        // check it is a kernel vector
        let mut img = Vector::new();
        for (&j, c) in k {
            img.add_scaled(&cols[j], c);
        }
        assert!(img.is_zero());
    }

    #[test]
    fn solve_finds_preimage() {
        let f = Field::Prime(5);
        let cols = vec![vec_of(f, &[(0, 1), (1, 2)]), vec_of(f, &[(1, 1)])];
        let t = vec_of(f, &[(0, 3), (1, 1)]);
        let x = solve(&cols, &t).unwrap();
        let mut img = Vector::new();
        for (&j, c) in &x {
            img.add_scaled(&cols[j], c);
        }
        assert_eq!(img, t);
        assert!(solve(&cols[..1], &vec_of(f, &[(1, 1)])).is_none());
    }

    #[test]
    fn intersection_of_planes() {
        let f = Field::Rational;
        let a = vec![vec_of(f, &[(0, 1)]), vec_of(f, &[(1, 1)])];
        let b = vec![vec_of(f, &[(1, 1)]), vec_of(f, &[(2, 1)])];
        let i = intersection(f, &a, &b);
        assert_eq!(i.len(), 1);
        assert_eq!(i[0], vec_of(f, &[(1, 1)]));
    }
}
