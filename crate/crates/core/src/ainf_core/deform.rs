use super::algebra::AInfAlgebra;
use super::op::MultiOp;
use crate::error::{Error, Result};
use crate::grlin::{GradedSpace, Vector};

/// Deforms an ordinary algebra `B` (all of `B` in degree 0) by a cochain
/// `c : B^{⊗N} → B`.
///
/// The result lives on `A = B[ε]/(ε²)` with `|ε| = 2 − N`; its basis is that
/// of `B` followed by `ε·x` for each basis element `x` (named `ε` + name).
/// Its operations are those of `A` as an algebra, plus `ε c` added to `b_N`,
/// i.e. `b'_N(x_1, …, x_N) = ε c(x_1, …, x_N)` on inputs from `B` (structure
/// constants of `c` taken verbatim at the suspended level) and zero as soon
/// as an input lies in `εB`. `N = 0` gives the weak structure `b_0 = ε c()`.
pub fn deform(b: &AInfAlgebra, c: &MultiOp, n: usize) -> Result<AInfAlgebra> {
    let bs = b.space();
    if bs.basis().iter().any(|e| e.degree != 0) {
        return Err(Error::NotDegreeZero);
    }
    if c.arity() != n {
        return Err(Error::ShapeMismatch(format!(
            "cochain has arity {}, expected {n}",
            c.arity()
        )));
    }
    if b.ops().any(|(k, op)| k != 2 && !op.is_zero()) {
        return Err(Error::Unsupported(
            "deformations start from an ordinary algebra (only b_2)".into(),
        ));
    }
    let field = b.field();
    let dim = bs.dim();
    for (w, v) in c.entries() {
        if w.iter().chain(v.keys()).any(|&x| x >= dim) {
            return Err(Error::ShapeMismatch("cochain index out of range".into()));
        }
    }
    let eps_degree = 2 - n as i64;
    let space = GradedSpace::new(
        field,
        bs.basis()
            .iter()
            .map(|e| (e.name.clone(), 0))
            .chain(bs.basis().iter().map(|e| (format!("ε{}", e.name), eps_degree))),
    )?;
    let shift = |v: &Vector| v.map_linear(|&x| Vector::basis(x + dim, field.one()));

    // m_2 on B[ε]: (x + εx')(y + εy') = xy + ε(x'y + xy'); b_2 = (−1)^{|x|} m_2.
    let m2 = b.m2();
    let mut b2 = MultiOp::new(2, 1);
    let eps_sign = field.sign(eps_degree);
    for (w, v) in m2.entries() {
        let (x, y) = (w[0], w[1]);
        b2.add(vec![x, y], v);
        b2.add(vec![x, y + dim], &shift(v));
        b2.add_scaled(vec![x + dim, y], &shift(v), Some(&eps_sign));
    }
    let mut bn = if n == 2 { b2.clone() } else { MultiOp::new(n, 1) };
    for (w, v) in c.entries() {
        bn.add(w.clone(), &shift(v));
    }
    let arity_max = b.arity_max().max(n).max(2);
    let mut out = AInfAlgebra::new(space, arity_max, [b2])?;
    out = out.with_op(bn)?;
    Ok(out)
}
