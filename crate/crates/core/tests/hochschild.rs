use ainfty::ainf_core::{deform, words, AInfAlgebra, MultiOp};
use ainfty::barcobar::{bar, tensor_coalgebra};
use ainfty::grlin::{Field, GradedMap, GradedSpace, Scalar, Vector};
use ainfty::hochschild::{
    coderivation_check, cochain_of_op, hochschild_bar_bialgebra, hochschild_differential,
    op_of_cochain, BarElement, Cochain, HochschildComplex, Letter,
};
use ainfty::random;
use proptest::prelude::*;
use rand::Rng;

fn algebra(field: Field, names: &[&str], table: &[(usize, usize, usize)]) -> AInfAlgebra {
    let space = GradedSpace::new(field, names.iter().map(|n| (n.to_string(), 0))).unwrap();
    let m2 = MultiOp::from_entries(
        2,
        0,
        table.iter().map(|&(i, j, k)| (vec![i, j], Vector::basis(k, field.one()))),
    );
    AInfAlgebra::from_dga_table(&GradedMap::zero(&space, &space, 1), &m2, 2).unwrap()
}

/// k[ε]/(ε²) with unit and augmentation.
fn dual_numbers(field: Field) -> AInfAlgebra {
    algebra(field, &["1", "ε"], &[(0, 0, 0), (0, 1, 1), (1, 0, 1)])
        .with_unit(0)
        .unwrap()
        .with_augmentation(Vector::basis(0, field.one()))
        .unwrap()
}

/// Upper triangular 2×2 matrices.
fn upper_triangular(field: Field) -> AInfAlgebra {
    algebra(
        field,
        &["e11", "e12", "e22"],
        &[(0, 0, 0), (0, 1, 1), (1, 2, 1), (2, 2, 2)],
    )
}

/// The textbook coboundary on structure constants taken verbatim:
/// `a_1 c(a_2, …) + Σ (−1)^k c(…, a_k a_{k+1}, …) + (−1)^{N+1} c(…) a_{N+1}`.
fn textbook_coboundary(m: &MultiOp, c: &MultiOp, dim: usize) -> MultiOp {
    let field = Field::Rational;
    let n = c.arity();
    let mul = |x: &Vector, y: &Vector| {
        let mut out = Vector::new();
        for (&a, s) in x {
            for (&b, t) in y {
                out.add_scaled(&m.apply(&[a, b]), &(s * t));
            }
        }
        out
    };
    let mut out = MultiOp::new(n + 1, 0);
    for w in words(dim, n + 1, |_| 0, None) {
        let one = field.one();
        let mut v = mul(&Vector::basis(w[0], one.clone()), &c.apply(&w[1..]));
        for k in 1..=n {
            for (&y, s) in &m.apply(&[w[k - 1], w[k]]) {
                let mut u = w[..k - 1].to_vec();
                u.push(y);
                u.extend_from_slice(&w[k + 1..]);
                v.add_scaled(&c.apply(&u), &(s * &field.sign(k as i64)));
            }
        }
        v.add_scaled(&mul(&c.apply(&w[..n]), &Vector::basis(w[n], one)), &field.sign(n as i64 + 1));
        out.set(w, v);
    }
    out
}

fn letter_cochain(l: &Letter) -> Cochain {
    Cochain::basis(l.clone(), Field::Rational.one())
}

// ---------------------------------------------------------------------------
// The differential

#[test]
fn differential_squares_to_zero() {
    for a in [dual_numbers(Field::Rational), upper_triangular(Field::Rational)] {
        let hc = HochschildComplex::new(&a).unwrap();
        for n in 0..=3 {
            for l in hc.basis(n) {
                let d = hc.differential(&letter_cochain(&l));
                assert!(hc.differential(&d).is_zero(), "{}", hc.describe_letter(&l));
            }
        }
    }
}

#[test]
fn differential_is_the_textbook_one_up_to_sign() {
    for a in [dual_numbers(Field::Rational), upper_triangular(Field::Rational)] {
        let hc = HochschildComplex::new(&a).unwrap();
        let dim = a.dim();
        for n in 1..=3 {
            let mut sign: Option<bool> = None;
            for l in hc.basis(n) {
                let c = op_of_cochain(&letter_cochain(&l), n, 0);
                let ours = op_of_cochain(&hc.differential(&letter_cochain(&l)), n + 1, 0);
                let std = textbook_coboundary(&a.m2(), &c, dim);
                let minus = std.scaled(&Field::Rational.from_i64(-1));
                let s = if ours == std {
                    true
                } else {
                    assert_eq!(ours, minus, "arity {n}");
                    false
                };
                if !std.is_zero() {
                    assert_eq!(*sign.get_or_insert(s), s, "sign depends on more than the arity");
                }
            }
        }
    }
}

#[test]
fn dual_number_cocycle() {
    let a = dual_numbers(Field::Rational);
    let c = MultiOp::from_entries(2, 1, [(vec![1, 1], Vector::basis(0, Field::Rational.one()))]);
    assert!(hochschild_differential(&a, &c).unwrap().is_zero());
    assert!(deform(&a, &c, 2).unwrap().satisfies_stasheff());
    let bad = MultiOp::from_entries(2, 1, [(vec![0, 1], Vector::basis(1, Field::Rational.one()))]);
    assert!(!hochschild_differential(&a, &bad).unwrap().is_zero());
}

/// `deform(B, c, N)` satisfies Stasheff up to arity `N + 2` exactly when
/// `δc = 0`, on basis cochains, coboundaries and random combinations.
#[test]
fn deformation_iff_cocycle() {
    let mut rng = random::rng(7);
    for b in [dual_numbers(Field::Rational), upper_triangular(Field::Rational)] {
        let hc = HochschildComplex::new(&b).unwrap();
        let mut seen = [0usize; 2];
        for n in 1..=3 {
            let mut cochains: Vec<Cochain> = hc.basis(n).iter().map(letter_cochain).collect();
            for l in hc.basis(n - 1) {
                cochains.push(hc.differential(&letter_cochain(&l)));
            }
            for _ in 0..10 {
                let mut c = Cochain::new();
                for l in hc.basis(n) {
                    if rng.gen_bool(0.3) {
                        c.add_term(l, &random::scalar(&mut rng, Field::Rational, true));
                    }
                }
                cochains.push(c);
            }
            for c in cochains {
                let op = op_of_cochain(&c, n, 1);
                let cocycle = hochschild_differential(&b, &op).unwrap().is_zero();
                let a = deform(&b, &op, n).unwrap().with_arity_max(n + 2);
                assert_eq!(a.satisfies_stasheff(), cocycle);
                seen[cocycle as usize] += 1;
            }
        }
        assert!(seen[0] > 0 && seen[1] > 0, "{seen:?}");
    }
}

// ---------------------------------------------------------------------------
// Braces

fn arity(c: &Cochain) -> usize {
    c.iter().next().map_or(0, |(l, _)| l.0.len())
}

fn degree(hc: &HochschildComplex, c: &Cochain) -> i64 {
    c.iter().next().map_or(0, |(l, _)| hc.letter_degree(l))
}

/// Multilinear evaluation of `f` on a list of vectors.
fn eval_multi(hc: &HochschildComplex, f: &Cochain, args: &[Vector]) -> Vector {
    let field = hc.field();
    let mut acc: Vec<(Vec<usize>, Scalar)> = vec![(vec![], field.one())];
    for a in args {
        let mut next = Vec::new();
        for (u, c) in &acc {
            for (&x, d) in a {
                let mut v = u.clone();
                v.push(x);
                next.push((v, c * d));
            }
        }
        acc = next;
    }
    let mut out = Vector::new();
    for (u, c) in acc {
        out.add_scaled(&hc.evaluate(f, &u), &c);
    }
    out
}

/// Evaluates `f{g_1, …, g_k}` on a basis word by running through the
/// positions where each `g_j` starts; homogeneous cochains only.
fn brace_oracle(hc: &HochschildComplex, f: &Cochain, gs: &[Cochain], w: &[usize]) -> Vector {
    let field = hc.field();
    let sdeg = |x: usize| hc.space().degree(x) - 1;
    let mut out = Vector::new();
    // partial states: (next g, position in w, arguments so far, sign exponent)
    let mut stack = vec![(0usize, 0usize, Vec::<Vector>::new(), 0i64)];
    while let Some((j, start, args, sign)) = stack.pop() {
        if j == gs.len() {
            let mut args = args;
            args.extend(w[start..].iter().map(|&x| Vector::basis(x, field.one())));
            if args.len() == arity(f) {
                out.add_scaled(&eval_multi(hc, f, &args), &field.sign(sign));
            }
            continue;
        }
        let ar = arity(&gs[j]);
        for p in start..=w.len() {
            if p + ar > w.len() {
                break;
            }
            let mut a = args.clone();
            a.extend(w[start..p].iter().map(|&x| Vector::basis(x, field.one())));
            a.push(hc.evaluate(&gs[j], &w[p..p + ar]));
            let s = degree(hc, &gs[j]) * w[..p].iter().map(|&x| sdeg(x)).sum::<i64>();
            stack.push((j + 1, p + ar, a, sign + s));
        }
    }
    out
}

fn random_cochain(rng: &mut random::SeededRng, hc: &HochschildComplex, n: usize) -> Cochain {
    let mut c = Cochain::new();
    for l in hc.basis(n) {
        if rng.gen_bool(0.6) {
            c.add_term(l, &random::scalar(rng, hc.field(), true));
        }
    }
    if c.is_zero() {
        c.add_term(hc.basis(n)[0].clone(), &hc.field().one());
    }
    c
}

#[test]
fn brace_basics() {
    let a = dual_numbers(Field::Rational);
    let hc = HochschildComplex::reduced(&a).unwrap();
    let f = letter_cochain(&(vec![0, 0], 0));
    let g = letter_cochain(&(vec![0], 0));
    assert_eq!(hc.brace(&f, &[]), f);
    // two slots, two insertions, same resulting letter
    let fg = hc.brace(&f, &[g.clone()]);
    assert_eq!(fg.len(), 1);
    let (l, c) = fg.iter().next().unwrap();
    assert_eq!(l.0.len(), 2);
    // |g| = 0: the two terms add up
    assert_eq!(*c, Field::Rational.from_i64(2));
    // |h| = 2 is even as well
    let h = letter_cochain(&(vec![0, 0, 0], 0));
    let fh = hc.brace(&f, &[h]);
    assert_eq!(fh.iter().next().unwrap().1, &Field::Rational.from_i64(2));
    // |k| = 1: the second insertion passes one input of sdeg −1
    let k = letter_cochain(&(vec![0, 0], 0));
    assert!(hc.brace(&f, &[k]).is_zero());
}

#[test]
fn brace_arity_and_degree() {
    let a = upper_triangular(Field::Rational);
    let hc = HochschildComplex::new(&a).unwrap();
    let mut rng = random::rng(3);
    let pick = |rng: &mut random::SeededRng, n: usize| {
        let b = hc.basis(n);
        letter_cochain(&b[rng.gen_range(0..b.len())])
    };
    let mut nonzero = 0;
    for _ in 0..200 {
        let (f, g1, g2) = (pick(&mut rng, 3), pick(&mut rng, 2), pick(&mut rng, 1));
        let expect = degree(&hc, &f) + degree(&hc, &g1) + degree(&hc, &g2);
        for (l, _) in &hc.brace(&f, &[g1.clone(), g2.clone()]) {
            nonzero += 1;
            assert_eq!(l.0.len(), 3 + 2 + 1 - 2);
            assert_eq!(hc.letter_degree(l), expect);
        }
    }
    assert!(nonzero > 0);
}

#[test]
fn braces_match_the_evaluation_oracle() {
    let mut rng = random::rng(11);
    for a in [dual_numbers(Field::Rational), upper_triangular(Field::Rational)] {
        let hc = HochschildComplex::new(&a).unwrap();
        for _ in 0..10 {
            let (nf, ng, nh) = (rng.gen_range(1..4), rng.gen_range(0..3), rng.gen_range(1..3));
            let f = random_cochain(&mut rng, &hc, nf);
            let g = random_cochain(&mut rng, &hc, ng);
            let h = random_cochain(&mut rng, &hc, nh);
            for gs in [vec![], vec![g.clone()], vec![g.clone(), h.clone()]] {
                if gs.len() > nf {
                    continue;
                }
                let b = hc.brace(&f, &gs);
                let ar = nf + gs.iter().map(arity).sum::<usize>() - gs.len();
                for w in words(a.dim(), ar, |_| 0, None) {
                    assert_eq!(hc.evaluate(&b, &w), brace_oracle(&hc, &f, &gs, &w));
                }
            }
        }
    }
}

/// `f{g}{h} = f{g{h}} + f{g, h} + (−1)^{|g||h|} f{h, g}`, both sides
/// expanded on the evaluation oracle for random cochains of the dual numbers.
#[test]
fn pre_lie_relation() {
    let a = dual_numbers(Field::Rational);
    let mut rng = random::rng(5);
    for hc in [HochschildComplex::new(&a).unwrap(), HochschildComplex::reduced(&a).unwrap()] {
        for _ in 0..20 {
            let (nf, ng, nh) = (rng.gen_range(1..4), rng.gen_range(0..3), rng.gen_range(0..3));
            let f = random_cochain(&mut rng, &hc, nf);
            let g = random_cochain(&mut rng, &hc, ng);
            let h = random_cochain(&mut rng, &hc, nh);
            let left = hc.brace(&hc.brace(&f, &[g.clone()]), &[h.clone()]);
            let mut right = hc.brace(&f, &[hc.brace(&g, &[h.clone()])]);
            right.add_assign(&hc.brace(&f, &[g.clone(), h.clone()]));
            right.add_scaled(&hc.brace(&f, &[h.clone(), g.clone()]), &hc.field().sign(degree(&hc, &g) * degree(&hc, &h)));
            assert_eq!(left, right);
            // and the same identity through the oracle
            if nf + ng + nh < 2 {
                continue;
            }
            let ar = nf + ng + nh - 2;
            let fg = hc.brace(&f, &[g.clone()]);
            for w in words(hc.space().dim(), ar, |_| 0, None) {
                let mut r = brace_oracle(&hc, &f, &[hc.brace(&g, &[h.clone()])], &w);
                r.add_assign(&brace_oracle(&hc, &f, &[g.clone(), h.clone()], &w));
                r.add_scaled(
                    &brace_oracle(&hc, &f, &[h.clone(), g.clone()], &w),
                    &hc.field().sign(degree(&hc, &g) * degree(&hc, &h)),
                );
                assert_eq!(brace_oracle(&hc, &fg, &[h.clone()], &w), r);
            }
        }
    }
}

#[test]
fn stasheff_is_the_vanishing_of_the_square() {
    let mut rng = random::rng(23);
    for _ in 0..10 {
        let a = random::dga(&mut rng, Field::Rational, 3, 3);
        let hc = HochschildComplex::new(&a).unwrap();
        let sq = hc.brace(hc.mu(), &[hc.mu().clone()]);
        assert_eq!(sq.is_zero(), a.satisfies_stasheff());
        assert!(sq.is_zero());
    }
}

// ---------------------------------------------------------------------------
// Coderivations

#[test]
fn coderivation_check_cases() {
    let a = dual_numbers(Field::Rational);
    let b = bar(&a, 3).unwrap();
    let id = GradedMap::identity(b.space());
    assert_eq!(coderivation_check(&b, b.differential(), &id, &id).unwrap(), (true, None));
    let zero = GradedMap::zero(b.space(), b.space(), 1);
    assert_eq!(coderivation_check(&b, &zero, &id, &id).unwrap(), (true, None));

    let v = GradedSpace::new(Field::Rational, [("x", 0), ("y", 1)]).unwrap();
    let t = tensor_coalgebra(&v, 3);
    let mut rng = random::rng(9);
    let mut failures = 0;
    for _ in 0..10 {
        let d = random::map(&mut rng, t.space(), t.space(), 1, 0.5);
        if d.is_zero() {
            continue;
        }
        let (ok, witness) = coderivation_check(&t, &d, &GradedMap::identity(t.space()), &GradedMap::identity(t.space())).unwrap();
        if !ok {
            failures += 1;
            assert!(witness.is_some());
        }
    }
    assert!(failures > 0);
}

// ---------------------------------------------------------------------------
// The bialgebra B(C(A, A))

#[test]
fn bar_differential_is_inner() {
    let a = dual_numbers(Field::Rational);
    let hc = HochschildComplex::reduced(&a).unwrap();
    let bc = hc.bar();
    let one = Field::Rational.one();
    let mu: Vec<(Letter, Scalar)> = hc.mu().iter().map(|(l, c)| (l.clone(), c.clone())).collect();
    let mu_word: BarElement = mu.iter().map(|(l, c)| (vec![l.clone()], c.clone())).collect();
    for x in bc.window(2, 2) {
        let xe = BarElement::basis(x.clone(), one.clone());
        let mut ad = bc.product_of(&mu_word, &xe);
        ad.add_scaled(&bc.product_of(&xe, &mu_word), &-hc.field().sign(hc.word_degree(&x)));
        assert_eq!(bc.differential(&x), ad, "{}", hc.describe_word(&x));
    }
}

#[test]
fn dual_numbers_bialgebra_small_window() {
    let a = dual_numbers(Field::Rational);
    let (_, report) = hochschild_bar_bialgebra(&a, 2, 2).unwrap();
    assert!(report.holds(), "{report:?}");
    assert_eq!(report.words, 1 + 3 + 9);
}

fn truncated_cubic(field: Field) -> AInfAlgebra {
    let mut table = Vec::new();
    for i in 0..3 {
        for j in 0..3 - i {
            table.push((i, j, i + j));
        }
    }
    algebra(field, &["1", "x", "x2"], &table)
        .with_unit(0)
        .unwrap()
        .with_augmentation(Vector::basis(0, field.one()))
        .unwrap()
}

#[test]
fn associativity_in_full_on_a_small_window() {
    for (a, arity) in [(dual_numbers(Field::Rational), 2), (truncated_cubic(Field::Rational), 1)] {
        let hc = HochschildComplex::reduced(&a).unwrap();
        let bar = hc.bar();
        let ws = bar.window(2, arity);
        let one = Field::Rational.one();
        let el = |w: &Vec<Letter>| BarElement::basis(w.clone(), one.clone());
        for x in &ws {
            for y in &ws {
                let xy = bar.product(x, y);
                for z in &ws {
                    let left = bar.product_of(&xy, &el(z));
                    let right = bar.product_of(&el(x), &bar.product(y, z));
                    assert_eq!(left, right);
                }
            }
        }
    }
}

#[test]
fn truncated_cubic_bialgebra() {
    let (_, report) = hochschild_bar_bialgebra(&truncated_cubic(Field::Rational), 2, 1).unwrap();
    assert!(report.holds(), "{report:?}");
}

#[test]
fn upper_triangular_needs_augmentation() {
    assert!(hochschild_bar_bialgebra(&upper_triangular(Field::Rational), 2, 2).is_err());
}

#[test]
fn cochain_of_op_round_trip() {
    let a = upper_triangular(Field::Rational);
    let c = cochain_of_op(&a.b(2));
    assert_eq!(op_of_cochain(&c, 2, 1), a.b(2));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn differential_squares_to_zero_on_random_algebras(seed in 0u64..1000) {
        let mut rng = random::rng(seed);
        let a = random::associative(&mut rng, Field::Prime(5), 2 + (seed % 2) as usize);
        let hc = HochschildComplex::new(&a).unwrap();
        let n = (seed % 3) as usize + 1;
        let c = random_cochain(&mut rng, &hc, n);
        prop_assert!(hc.differential(&hc.differential(&c)).is_zero());
    }
}
