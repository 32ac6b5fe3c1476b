use std::collections::BTreeMap;

use super::algebra::AInfAlgebra;
use super::op::{insert_into, MultiOp};
use crate::error::{Error, Result};
use crate::grlin::GradedSpace;

/// A right A∞-module: `b_n^M : SM ⊗ (SA)^{⊗(n−1)} → SM` of degree +1. The
/// first letter of each input word indexes `M`, the others index `A`.
#[derive(Clone, Debug, PartialEq)]
pub struct AInfModule {
    algebra: AInfAlgebra,
    space: GradedSpace,
    ops: BTreeMap<usize, MultiOp>,
}

impl AInfModule {
    pub fn new(
        algebra: AInfAlgebra,
        space: GradedSpace,
        ops: impl IntoIterator<Item = MultiOp>,
    ) -> Result<Self> {
        if algebra.is_weak() {
            return Err(Error::WeakStructure);
        }
        if algebra.field() != space.field() {
            return Err(Error::FieldMismatch(algebra.field(), space.field()));
        }
        let mut map = BTreeMap::new();
        for op in ops {
            let n = op.arity();
            if n == 0 || n > algebra.arity_max() {
                return Err(Error::ArityOverflow {
                    requested: n,
                    bound: algebra.arity_max(),
                });
            }
            if op.degree() != 1 {
                return Err(Error::ShapeMismatch(format!(
                    "b_{n}^M must have degree 1, got {}",
                    op.degree()
                )));
            }
            let (dm, da) = (space.dim(), algebra.dim());
            let msdeg = |x: usize| (x < dm).then(|| space.degree(x) - 1);
            op.check_degrees(
                |pos, x| {
                    if pos == 0 {
                        msdeg(x)
                    } else {
                        (x < da).then(|| algebra.sdeg(x))
                    }
                },
                msdeg,
                |w| format!("{w:?}"),
            )?;
            if !op.is_zero() {
                map.insert(n, op);
            }
        }
        Ok(AInfModule {
            algebra,
            space,
            ops: map,
        })
    }

    /// `A` as a module over itself, `b_n^M = b_n^A`.
    pub fn free_rank_one(a: &AInfAlgebra) -> Result<Self> {
        let ops: Vec<MultiOp> = a.ops().filter(|(n, _)| *n >= 1).map(|(_, op)| op.clone()).collect();
        AInfModule::new(a.clone(), a.space().clone(), ops)
    }

    pub fn algebra(&self) -> &AInfAlgebra {
        &self.algebra
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn op(&self, n: usize) -> Option<&MultiOp> {
        self.ops.get(&n)
    }

    pub fn with_op(mut self, op: MultiOp) -> Result<Self> {
        let mut ops: Vec<MultiOp> = std::mem::take(&mut self.ops).into_values().collect();
        ops.retain(|o| o.arity() != op.arity());
        ops.push(op);
        AInfModule::new(self.algebra, self.space, ops)
    }

    /// The module Stasheff identity on `SM ⊗ (SA)^{⊗(n−1)}`: inner operations at position 0 are
    /// module operations, elsewhere algebra operations; outer ones are
    /// always module operations.
    pub fn module_defect(&self, n: usize) -> Result<MultiOp> {
        let bound = self.algebra.arity_max();
        if n == 0 || n > bound {
            return Err(Error::ArityOverflow {
                requested: n,
                bound,
            });
        }
        let field = self.algebra.field();
        let prefix = |p: &[usize]| {
            p.iter()
                .enumerate()
                .map(|(k, &x)| {
                    if k == 0 {
                        self.space.degree(x) - 1
                    } else {
                        self.algebra.sdeg(x)
                    }
                })
                .sum::<i64>()
        };
        let mut out = MultiOp::new(n, 2);
        for j in 1..=n {
            let outer_arity = n + 1 - j;
            let Some(outer) = self.ops.get(&outer_arity) else {
                continue;
            };
            if let Some(inner) = self.ops.get(&j) {
                insert_into(&mut out, outer, 0, inner, &inner.by_output(), &prefix, field);
            }
            if let Some(inner) = self.algebra.op(j) {
                let index = inner.by_output();
                for i in 1..outer_arity {
                    insert_into(&mut out, outer, i, inner, &index, &prefix, field);
                }
            }
        }
        Ok(out)
    }

    pub fn first_failure(&self) -> Option<(usize, Vec<usize>)> {
        (1..=self.algebra.arity_max()).find_map(|n| {
            let d = self.module_defect(n).expect("n within bound");
            let first = d.entries().next().map(|(w, _)| (n, w.clone()));
            first
        })
    }
}
