use std::collections::BTreeMap;

use super::op::{insert_into, MultiOp};
use crate::error::{Error, Result};
use crate::grlin::{Field, GradedMap, GradedSpace, Scalar, Vector, Word};

/// An A∞-algebra on a finite-dimensional graded space `A`.
///
/// The operations are stored at the suspended level: `b_n : (SA)^{⊗n} → SA`
/// of degree +1, keyed by words of basis indices of `A` (the suspension does
/// not change indices, only degrees). `b_0`, if present, is the table entry
/// of the empty word and makes the structure weak.
///
/// All claims are up to `arity_max`; an absent `b_n` is zero. With a degree
/// window `w`, the operations are only meaningful on input words of total
/// (unsuspended) degree at most `w`, and defects are reported on those.
#[derive(Clone, Debug, PartialEq)]
pub struct AInfAlgebra {
    space: GradedSpace,
    ops: BTreeMap<usize, MultiOp>,
    arity_max: usize,
    strict_unit: Option<usize>,
    augmentation: Option<Vector>,
    degree_window: Option<i64>,
}

/// Outcome of [`AInfAlgebra::strict_unit_check`]. On failure `witness` holds
/// the arity and input word where the unit axiom breaks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitCheck {
    pub holds: bool,
    pub witness: Option<(usize, Word)>,
}

impl AInfAlgebra {
    pub fn new(
        space: GradedSpace,
        arity_max: usize,
        ops: impl IntoIterator<Item = MultiOp>,
    ) -> Result<Self> {
        let mut a = AInfAlgebra {
            space,
            ops: BTreeMap::new(),
            arity_max,
            strict_unit: None,
            augmentation: None,
            degree_window: None,
        };
        for op in ops {
            a = a.with_op(op)?;
        }
        Ok(a)
    }

    /// The ground field `k` with its unit and augmentation.
    pub fn ground(field: Field, arity_max: usize) -> Self {
        let space = GradedSpace::ground(field, "1");
        let b2 = MultiOp::from_entries(2, 1, [(vec![0, 0], Vector::basis(0, field.one()))]);
        AInfAlgebra::new(space, arity_max, [b2])
            .expect("k is an algebra")
            .with_unit(0)
            .expect("1 has degree 0")
            .with_augmentation(Vector::basis(0, field.one()))
            .expect("identity augmentation")
    }

    /// Adds or replaces `b_n`, checking arity and degree.
    pub fn with_op(mut self, op: MultiOp) -> Result<Self> {
        let n = op.arity();
        if n > self.arity_max {
            return Err(Error::ArityOverflow {
                requested: n,
                bound: self.arity_max,
            });
        }
        if op.degree() != 1 {
            return Err(Error::ShapeMismatch(format!(
                "b_{n} must have degree 1 on the suspension, got {}",
                op.degree()
            )));
        }
        let field = self.field();
        for (_, v) in op.entries() {
            if let Some((_, c)) = v.leading() {
                if c.field() != field {
                    return Err(Error::FieldMismatch(c.field(), field));
                }
            }
        }
        let dim = self.space.dim();
        let sdeg = |x: usize| (x < dim).then(|| self.space.degree(x) - 1);
        op.check_degrees(|_, x| sdeg(x), sdeg, |w| self.describe(w))?;
        if op.is_zero() {
            self.ops.remove(&n);
        } else {
            self.ops.insert(n, op);
        }
        Ok(self)
    }

    pub fn with_unit(mut self, e: usize) -> Result<Self> {
        if e >= self.space.dim() {
            return Err(Error::ShapeMismatch(format!("unit index {e} out of range")));
        }
        if self.space.degree(e) != 0 {
            return Err(Error::DegreeViolation {
                element: self.space.name(e).to_string(),
                degree: 0,
                expected: 0,
            });
        }
        self.strict_unit = Some(e);
        Ok(self)
    }

    /// Sets the augmentation `A → k`, given by its values on basis elements.
    /// It must vanish outside degree 0.
    pub fn with_augmentation(mut self, eps: Vector) -> Result<Self> {
        for &i in eps.keys() {
            if i >= self.space.dim() {
                return Err(Error::ShapeMismatch(format!(
                    "augmentation index {i} out of range"
                )));
            }
            if self.space.degree(i) != 0 {
                return Err(Error::DegreeViolation {
                    element: self.space.name(i).to_string(),
                    degree: 0,
                    expected: 0,
                });
            }
        }
        self.augmentation = Some(eps);
        Ok(self)
    }

    pub fn with_degree_window(mut self, window: Option<i64>) -> Self {
        self.degree_window = window;
        self
    }

    /// Changes the arity bound, dropping operations above it.
    pub fn with_arity_max(mut self, arity_max: usize) -> Self {
        self.ops.retain(|&n, _| n <= arity_max);
        self.arity_max = arity_max;
        self
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn field(&self) -> Field {
        self.space.field()
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn arity_max(&self) -> usize {
        self.arity_max
    }

    pub fn strict_unit(&self) -> Option<usize> {
        self.strict_unit
    }

    pub fn augmentation(&self) -> Option<&Vector> {
        self.augmentation.as_ref()
    }

    pub fn degree_window(&self) -> Option<i64> {
        self.degree_window
    }

    pub fn op(&self, n: usize) -> Option<&MultiOp> {
        self.ops.get(&n)
    }

    /// `b_n`, zero if absent.
    pub fn b(&self, n: usize) -> MultiOp {
        self.ops.get(&n).cloned().unwrap_or_else(|| MultiOp::new(n, 1))
    }

    pub fn ops(&self) -> impl Iterator<Item = (usize, &MultiOp)> + '_ {
        self.ops.iter().map(|(&n, op)| (n, op))
    }

    pub fn is_weak(&self) -> bool {
        self.ops.get(&0).is_some_and(|op| !op.is_zero())
    }

    pub fn is_minimal(&self) -> bool {
        self.ops.get(&1).map_or(true, |op| op.is_zero())
    }

    /// Degree of a basis element in `SA`.
    pub fn sdeg(&self, x: usize) -> i64 {
        self.space.degree(x) - 1
    }

    /// Total unsuspended degree of a word.
    pub fn word_degree(&self, w: &[usize]) -> i64 {
        w.iter().map(|&x| self.space.degree(x)).sum()
    }

    pub fn in_window(&self, w: &[usize]) -> bool {
        self.degree_window.map_or(true, |m| self.word_degree(w) <= m)
    }

    pub fn describe(&self, w: &[usize]) -> String {
        let names: Vec<&str> = w
            .iter()
            .map(|&x| {
                if x < self.space.dim() {
                    self.space.name(x)
                } else {
                    "?"
                }
            })
            .collect();
        format!("({})", names.join(","))
    }

    /// `Σ_{i+j+l=n} b_{i+1+l} ∘ (1^{⊗i} ⊗ b_j ⊗ 1^{⊗l})` as an operation of
    /// arity `n` and degree 2; it is zero iff the `n`-th Stasheff identity
    /// holds. `b_0` takes part when present, so `n = 0` is allowed for weak
    /// structures; operations above `arity_max` count as zero.
    pub fn stasheff_defect(&self, n: usize) -> Result<MultiOp> {
        if n > self.arity_max {
            return Err(Error::ArityOverflow {
                requested: n,
                bound: self.arity_max,
            });
        }
        let field = self.field();
        let prefix = |p: &[usize]| p.iter().map(|&x| self.sdeg(x)).sum::<i64>();
        let mut out = MultiOp::new(n, 2);
        for j in 0..=n {
            let Some(inner) = self.ops.get(&j) else {
                continue;
            };
            let m = n + 1 - j;
            if m > self.arity_max {
                continue;
            }
            let Some(outer) = self.ops.get(&m) else {
                continue;
            };
            let index = inner.by_output();
            for i in 0..m {
                insert_into(&mut out, outer, i, inner, &index, &prefix, field);
            }
        }
        Ok(match self.degree_window {
            Some(_) => out.filtered(|w| self.in_window(w)),
            None => out,
        })
    }

    /// The first arity (from 0 or 1 up to `arity_max`) whose Stasheff
    /// identity fails, with a witness word.
    pub fn first_stasheff_failure(&self) -> Option<(usize, Word)> {
        let start = if self.is_weak() { 0 } else { 1 };
        (start..=self.arity_max).find_map(|n| {
            let d = self.stasheff_defect(n).expect("n within bound");
            let first = d.entries().next().map(|(w, _)| (n, w.clone()));
            first
        })
    }

    pub fn satisfies_stasheff(&self) -> bool {
        self.first_stasheff_failure().is_none()
    }

    /// Builds the A∞-algebra of a dg algebra: `b_1 = −m_1`,
    /// `b_2(x, y) = (−1)^{|x|} m_2(x, y)`, higher operations zero. `m2` is a
    /// degree 0 map on `A ⊗ A`, laid out as by [`GradedSpace::tensor`].
    pub fn from_dga(m1: &GradedMap, m2: &GradedMap, arity_max: usize) -> Result<Self> {
        let space = m1.source().clone();
        let square = space.tensor(&space)?;
        if m2.source() != &square || m2.target() != &space {
            return Err(Error::ShapeMismatch(
                "m_2 must be a map A ⊗ A → A".into(),
            ));
        }
        let dim = space.dim();
        let table = MultiOp::from_entries(
            2,
            0,
            (0..square.dim()).map(|k| (vec![k / dim, k % dim], m2.column(k).clone())),
        );
        Self::from_dga_table(m1, &table, arity_max)
    }

    /// As [`from_dga`](Self::from_dga), with `m_2` given as a sparse table.
    pub fn from_dga_table(m1: &GradedMap, m2: &MultiOp, arity_max: usize) -> Result<Self> {
        let space = m1.source().clone();
        if m1.target() != &space || (m1.degree() != 1 && !m1.is_zero()) {
            return Err(Error::NotDga("m_1 must be a degree 1 endomorphism".into()));
        }
        if m2.arity() != 2 || m2.degree() != 0 {
            return Err(Error::NotDga("m_2 must be binary of degree 0".into()));
        }
        let field = space.field();
        let dim = space.dim();
        let deg = |x: usize| (x < dim).then(|| space.degree(x));
        m2.check_degrees(|_, x| deg(x), deg, |w| format!("{w:?}"))
            .map_err(|e| Error::NotDga(format!("m_2: {e}")))?;
        let name = |w: &[usize]| {
            let v: Vec<&str> = w.iter().map(|&x| space.name(x)).collect();
            format!("({})", v.join(","))
        };

        let d = op_of_map(m1);
        let unsusp = |p: &[usize]| p.iter().map(|&x| space.degree(x)).sum::<i64>();
        // m_1 ∘ m_1
        let mut dd = MultiOp::new(1, 2);
        insert_into(&mut dd, &d, 0, &d, &d.by_output(), &unsusp, field);
        if let Some((w, _)) = dd.entries().next() {
            return Err(Error::NotDga(format!("m_1∘m_1 ≠ 0 on {}", name(w))));
        }
        // m_1 m_2 − m_2(m_1 ⊗ 1) − m_2(1 ⊗ m_1), Koszul signs included
        let mut leibniz = MultiOp::new(2, 1);
        insert_into(&mut leibniz, &d, 0, m2, &m2.by_output(), &unsusp, field);
        let mut rhs = MultiOp::new(2, 1);
        let di = d.by_output();
        insert_into(&mut rhs, m2, 0, &d, &di, &unsusp, field);
        insert_into(&mut rhs, m2, 1, &d, &di, &unsusp, field);
        leibniz.sub_op(&rhs);
        if let Some((w, _)) = leibniz.entries().next() {
            return Err(Error::NotDga(format!("Leibniz rule fails on {}", name(w))));
        }
        // m_2(m_2 ⊗ 1) − m_2(1 ⊗ m_2)
        let mi = m2.by_output();
        let mut assoc = MultiOp::new(3, 0);
        insert_into(&mut assoc, m2, 0, m2, &mi, &unsusp, field);
        let mut right = MultiOp::new(3, 0);
        insert_into(&mut right, m2, 1, m2, &mi, &unsusp, field);
        assoc.sub_op(&right);
        if let Some((w, _)) = assoc.entries().next() {
            return Err(Error::NotDga(format!("associativity fails on {}", name(w))));
        }

        let minus = field.from_i64(-1);
        let b1 = MultiOp::from_entries(1, 1, d.entries().map(|(w, v)| (w.clone(), v.scaled(&minus))));
        let b2 = MultiOp::from_entries(
            2,
            1,
            m2.entries()
                .map(|(w, v)| (w.clone(), v.scaled(&field.sign(space.degree(w[0]))))),
        );
        AInfAlgebra::new(space, arity_max.max(2), [b1, b2])
    }

    /// `m_1 = −b_1` as a map on `A`.
    pub fn m1(&self) -> GradedMap {
        let minus = self.field().from_i64(-1);
        let b1 = self.b(1);
        let cols = (0..self.dim())
            .map(|x| b1.apply(&[x]).scaled(&minus))
            .collect();
        GradedMap::new(self.space.clone(), self.space.clone(), 1, cols)
            .expect("b_1 is homogeneous")
    }

    /// `m_2(x, y) = (−1)^{|x|} b_2(x, y)` as a degree 0 table on `A`.
    pub fn m2(&self) -> MultiOp {
        let field = self.field();
        MultiOp::from_entries(
            2,
            0,
            self.b(2)
                .entries()
                .map(|(w, v)| (w.clone(), v.scaled(&field.sign(self.space.degree(w[0]))))),
        )
    }

    /// Checks that `e` is a strict unit: `m_2(e, x) = x = m_2(x, e)` and
    /// every `b_n` with `n ≠ 2` vanishes on words containing `e`.
    pub fn strict_unit_check(&self, e: usize) -> UnitCheck {
        let fail = |n: usize, w: Word| UnitCheck {
            holds: false,
            witness: Some((n, w)),
        };
        if e >= self.dim() || self.space.degree(e) != 0 {
            return fail(0, vec![e]);
        }
        let m2 = self.m2();
        let one = self.field().one();
        for x in 0..self.dim() {
            let expect = Vector::basis(x, one.clone());
            if m2.apply(&[e, x]) != expect {
                return fail(2, vec![e, x]);
            }
            if m2.apply(&[x, e]) != expect {
                return fail(2, vec![x, e]);
            }
        }
        for (&n, op) in &self.ops {
            if n == 2 {
                continue;
            }
            if let Some((w, _)) = op.entries().find(|(w, _)| w.contains(&e)) {
                return fail(n, w.clone());
            }
        }
        UnitCheck {
            holds: true,
            witness: None,
        }
    }

    /// Searches `H^0` of a minimal algebra for a unit of `m_2`; returns one
    /// if it exists. Only inputs inside the degree window are tested.
    pub fn homological_unit(&self) -> Result<Option<Vector>> {
        if !self.is_minimal() {
            return Err(Error::Unsupported(
                "homological units are checked on minimal models".into(),
            ));
        }
        let field = self.field();
        let m2 = self.m2();
        let zero_degree: Vec<usize> = (0..self.dim())
            .filter(|&x| self.space.degree(x) == 0)
            .collect();
        // Unknowns: coefficients of e on degree 0 basis elements. Equations:
        // m_2(e, x) − x and m_2(x, e) − x, coordinate by coordinate.
        let mut rows: BTreeMap<(usize, usize, usize), Vector> = BTreeMap::new();
        let mut rhs: BTreeMap<(usize, usize, usize), Scalar> = BTreeMap::new();
        for x in 0..self.dim() {
            for (t, &u) in zero_degree.iter().enumerate() {
                for (side, w) in [(0, [u, x]), (1, [x, u])] {
                    if !self.in_window(&w) {
                        continue;
                    }
                    for (&y, c) in &m2.apply(&w) {
                        rows.entry((side, x, y)).or_default().add_term(t, c);
                    }
                }
            }
            for side in 0..2 {
                rhs.insert((side, x, x), field.one());
                rows.entry((side, x, x)).or_default();
            }
        }
        // Solve Σ_t e_t row_t = rhs as a linear system in the unknowns.
        let keys: Vec<_> = rows.keys().cloned().collect();
        let mut columns = vec![Vector::new(); zero_degree.len()];
        for (r, key) in keys.iter().enumerate() {
            for (&t, c) in &rows[key] {
                columns[t].add_term(r, c);
            }
        }
        let mut target = Vector::new();
        for (r, key) in keys.iter().enumerate() {
            if let Some(c) = rhs.get(key) {
                target.add_term(r, c);
            }
        }
        Ok(crate::grlin::solve(&columns, &target).map(|x| {
            x.map_linear(|&t| Vector::basis(zero_degree[t], field.one()))
        }))
    }
}

/// A degree `d` map as an arity-one table of the same degree.
pub(crate) fn op_of_map(m: &GradedMap) -> MultiOp {
    MultiOp::from_entries(
        1,
        m.degree(),
        m.columns()
            .iter()
            .enumerate()
            .map(|(j, c)| (vec![j], c.clone())),
    )
}
