use std::collections::BTreeMap;

use super::coalgebra::{word_coalgebra, DgCoalgebra};
use crate::ainf_core::{AInfAlgebra, MultiOp};
use crate::error::{Error, Result};
use crate::grlin::{GradedMap, GradedSpace, Vector};

/// The augmentation ideal `Ā` with its operations, and the embedding
/// `Ā → A` as a list of vectors (one per basis element of `Ā`).
///
/// With a strict unit `u` and an augmentation `ε`, `Ā = ker ε` with basis
/// `x − ε(x)u` for `x ≠ u`. Without a unit the whole of `A` plays the role
/// of `Ā` (that is, `A` is read as the ideal of `k ⊕ A`).
pub fn reduced_algebra(a: &AInfAlgebra) -> Result<(AInfAlgebra, Vec<Vector>)> {
    if a.is_weak() {
        return Err(Error::WeakStructure);
    }
    let field = a.field();
    let (u, eps) = match (a.strict_unit(), a.augmentation()) {
        (None, None) => {
            let embed = (0..a.dim()).map(|x| Vector::basis(x, field.one())).collect();
            return Ok((a.clone(), embed));
        }
        (Some(_), None) => {
            return Err(Error::MissingAugmentation(
                "a unital algebra needs an augmentation to form Ā".into(),
            ))
        }
        (None, Some(_)) => {
            return Err(Error::MissingAugmentation(
                "an augmentation needs a strict unit to split off k".into(),
            ))
        }
        (Some(u), Some(eps)) => (u, eps.clone()),
    };
    if eps.get(&u).map_or(true, |c| !c.is_one()) {
        return Err(Error::MissingAugmentation("ε(1) must be 1".into()));
    }
    let keep: Vec<usize> = (0..a.dim()).filter(|&x| x != u).collect();
    let mut pos = vec![usize::MAX; a.dim()];
    for (s, &x) in keep.iter().enumerate() {
        pos[x] = s;
    }
    let embed: Vec<Vector> = keep
        .iter()
        .map(|&x| {
            let mut v = Vector::basis(x, field.one());
            if let Some(c) = eps.get(&x) {
                v.add_term(u, &-c);
            }
            v
        })
        .collect();
    let space = GradedSpace::new(
        field,
        keep.iter().map(|&x| (a.space().name(x).to_string(), a.space().degree(x))),
    )?;
    // Coordinates in Ā of an element of A lying in ker ε.
    let project = |v: &Vector, what: &dyn Fn() -> String| -> Result<Vector> {
        let mut out = Vector::new();
        let mut e = field.zero();
        for (&x, c) in v {
            e = &e + &(c * &eps.get(&x).cloned().unwrap_or_else(|| field.zero()));
            if x != u {
                out.add_term(pos[x], c);
            }
        }
        if !e.is_zero() {
            return Err(Error::MissingAugmentation(format!(
                "Ā is not closed under the operations: {} leaves ker ε",
                what()
            )));
        }
        Ok(out)
    };
    let mut ops = Vec::new();
    for (n, op) in a.ops() {
        let mut bn = MultiOp::new(n, 1);
        for w in crate::ainf_core::words(keep.len(), n, |_| 0, None) {
            let pieces: Vec<&Vector> = w.iter().map(|&s| &embed[s]).collect();
            let v = op.apply_tensor(&crate::grlin::tensor_of(field, &pieces));
            let names = || {
                let v: Vec<&str> = w.iter().map(|&s| space.name(s)).collect();
                format!("b_{n}({})", v.join(","))
            };
            bn.set(w.clone(), project(&v, &names)?);
        }
        ops.push(bn);
    }
    let abar = AInfAlgebra::new(space, a.arity_max(), ops)?.with_degree_window(a.degree_window());
    Ok((abar, embed))
}

/// `BA = T^c(SĀ)` truncated at tensor length `max_length`, with the
/// coderivation `D = Σ 1^{⊗i} ⊗ b_j ⊗ 1^{⊗l}`. Fails if `D² ≠ 0`, naming
/// the Stasheff identity responsible.
pub fn bar(a: &AInfAlgebra, max_length: usize) -> Result<DgCoalgebra> {
    let (abar, _) = reduced_algebra(a)?;
    bar_of_reduced(&abar, max_length)
}

pub(crate) fn bar_of_reduced(abar: &AInfAlgebra, max_length: usize) -> Result<DgCoalgebra> {
    let field = abar.field();
    let plain = word_coalgebra(abar.space(), max_length, |w| {
        w.iter().map(|&x| abar.sdeg(x)).sum()
    });
    let space = plain.space().clone();
    let ops: Vec<(usize, &MultiOp)> = abar.ops().collect();
    let mut cols = Vec::with_capacity(space.dim());
    for j in 0..space.dim() {
        let w = plain.word(j).expect("word basis").clone();
        let n = w.len();
        let mut out = Vector::new();
        let mut prefix = 0;
        for i in 0..n {
            let sign = field.sign(prefix);
            for &(jn, op) in &ops {
                if jn == 0 || i + jn > n {
                    continue;
                }
                for (&y, c) in &op.apply(&w[i..i + jn]) {
                    let mut u = w[..i].to_vec();
                    u.push(y);
                    u.extend_from_slice(&w[i + jn..]);
                    let k = plain.index_of_word(&u).expect("length does not grow");
                    out.add_term(k, &(c * &sign));
                }
            }
            prefix += abar.sdeg(w[i]);
        }
        cols.push(out);
    }
    let d = GradedMap::new(space.clone(), space.clone(), 1, cols)?;
    let dd = d.compose(&d)?;
    if let Some((j, i, _)) = dd.entries().next() {
        return Err(Error::BarNotDifferential {
            arity: plain.length(j) + 1 - plain.length(i),
            word: space.name(j).to_string(),
        });
    }
    let words: Vec<_> = (0..space.dim()).map(|j| plain.word(j).unwrap().clone()).collect();
    let lengths = words.iter().map(|w| w.len()).collect();
    let delta = (0..space.dim()).map(|j| plain.delta(j).clone()).collect();
    Ok(DgCoalgebra::new(space, delta, d, 0, lengths)?.with_words(words))
}

/// Homology dimensions of `BA` by degree, computed on the truncation at
/// length `max_length + 1` and reported for the degrees of words of length
/// at most `max_length`. For `A` concentrated in degree 0, degree `−l` is
/// tensor length `l` and the numbers are exact.
pub fn bar_homology(a: &AInfAlgebra, max_length: usize) -> Result<BTreeMap<i64, usize>> {
    let b = bar(a, max_length + 1)?;
    let dims = crate::grlin::homology_dimensions(&crate::grlin::ChainComplex::new(
        b.differential().clone(),
    )?);
    let reported: std::collections::BTreeSet<i64> = (0..b.dim())
        .filter(|&j| b.length(j) <= max_length)
        .map(|j| b.space().degree(j))
        .collect();
    Ok(reported
        .into_iter()
        .map(|k| (k, dims.get(&k).copied().unwrap_or(0)))
        .collect())
}

