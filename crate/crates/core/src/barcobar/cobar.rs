use std::collections::HashMap;

use super::coalgebra::{words_up_to, DgCoalgebra};
use crate::ainf_core::{AInfAlgebra, MultiOp};
use crate::error::Result;
use crate::grlin::{GradedMap, GradedSpace, Vector, Word};

/// `ΩC = T(S^{-1}C̄)` modulo words of length greater than `max_length`
/// (a dg ideal, since the differential never shortens words).
///
/// On generators `d(σc) = −σ(d_C c) + Σ (−1)^{|c'|} σc' ⊗ σc''` over the
/// reduced coproduct `Δ̄c = Σ c' ⊗ c''`, extended as a derivation. The
/// result is returned through `from_dga_table`, which checks `d² = 0`, the
/// Leibniz rule and associativity; the empty word is the unit and spans
/// the augmentation.
pub fn cobar(c: &DgCoalgebra, max_length: usize) -> Result<AInfAlgebra> {
    let field = c.field();
    let gens: Vec<usize> = (0..c.dim()).filter(|&j| j != c.unit()).collect();
    let mut pos = vec![usize::MAX; c.dim()];
    for (s, &j) in gens.iter().enumerate() {
        pos[j] = s;
    }
    let gdeg = |s: usize| c.space().degree(gens[s]) + 1;
    let words = words_up_to(gens.len(), max_length);
    let index: HashMap<&Word, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let space = GradedSpace::new(
        field,
        words.iter().map(|w| {
            let name = if w.is_empty() {
                "1".to_string()
            } else {
                w.iter()
                    .map(|&s| format!("σ{}", c.space().name(gens[s])))
                    .collect::<Vec<_>>()
                    .join("⊗")
            };
            (name, w.iter().map(|&s| gdeg(s)).sum())
        }),
    )?;

    // d on a single generator, as a combination of words of length 1 or 2.
    let dc = c.differential();
    let on_generator: Vec<Vec<(Word, crate::grlin::Scalar)>> = (0..gens.len())
        .map(|s| {
            let j = gens[s];
            let mut out: Vec<(Word, crate::grlin::Scalar)> = Vec::new();
            for (&y, a) in dc.column(j) {
                if y != c.unit() {
                    out.push((vec![pos[y]], -a));
                }
            }
            for (w, a) in &c.reduced_delta(j) {
                let sign = field.sign(c.space().degree(w[0]));
                out.push((vec![pos[w[0]], pos[w[1]]], a * &sign));
            }
            out
        })
        .collect();

    let mut cols = Vec::with_capacity(words.len());
    for w in &words {
        let mut v = Vector::new();
        let mut prefix = 0;
        for (k, &s) in w.iter().enumerate() {
            let sign = field.sign(prefix);
            for (piece, a) in &on_generator[s] {
                if w.len() - 1 + piece.len() > max_length {
                    continue;
                }
                let mut u = w[..k].to_vec();
                u.extend_from_slice(piece);
                u.extend_from_slice(&w[k + 1..]);
                v.add_term(index[&u], &(a * &sign));
            }
            prefix += gdeg(s);
        }
        cols.push(v);
    }
    let m1 = GradedMap::new(space.clone(), space.clone(), 1, cols)?;
    let mut m2 = MultiOp::new(2, 0);
    for (i, u) in words.iter().enumerate() {
        for (j, v) in words.iter().enumerate() {
            if u.len() + v.len() > max_length {
                continue;
            }
            let mut uv = u.clone();
            uv.extend_from_slice(v);
            m2.set(vec![i, j], Vector::basis(index[&uv], field.one()));
        }
    }
    AInfAlgebra::from_dga_table(&m1, &m2, 2)?
        .with_unit(0)?
        .with_augmentation(Vector::basis(0, field.one()))
}
