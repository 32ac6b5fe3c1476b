use ainfty::ainf_core::{deform, words, AInfAlgebra, MultiOp};
use ainfty::grlin::{homology_with_contraction, tensor_of, Field, GradedMap, GradedSpace, Vector};
use ainfty::random;
use ainfty::transfer::{
    minimal_model, planar_trees, suspended_complex, transfer_structure, tree_term, PlanarTree,
};
use proptest::prelude::*;

/// t(1) = 1, t(n) = Σ over compositions of n into ≥ 2 parts of Π t(part).
fn tree_count(n: usize) -> u64 {
    fn comps(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        (1..=n)
            .flat_map(|k| {
                comps(n - k).into_iter().map(move |mut c| {
                    c.push(k);
                    c
                })
            })
            .collect()
    }
    if n == 1 {
        return 1;
    }
    comps(n)
        .into_iter()
        .filter(|c| c.len() >= 2)
        .map(|c| c.iter().map(|&k| tree_count(k)).product::<u64>())
        .sum()
}

#[test]
fn tree_counts() {
    let counts: Vec<usize> = (1..=5).map(|n| planar_trees(n).unwrap().len()).collect();
    assert_eq!(counts, vec![1, 1, 3, 11, 45]);
    for n in 1..=7 {
        let trees = planar_trees(n).unwrap();
        assert_eq!(trees.len() as u64, tree_count(n));
        assert!(trees.iter().all(|t| t.leaves() == n));
        let distinct: std::collections::HashSet<_> = trees.iter().collect();
        assert_eq!(distinct.len(), trees.len());
    }
    assert!(planar_trees(0).is_err());
    assert_eq!(planar_trees(1).unwrap(), vec![PlanarTree::Leaf]);
}

#[test]
fn trees_are_deterministic() {
    assert_eq!(planar_trees(5).unwrap(), planar_trees(5).unwrap());
    let three: Vec<String> = planar_trees(3).unwrap().iter().map(|t| t.to_string()).collect();
    assert_eq!(three, vec!["(|||)", "(|(||))", "((||)|)"]);
}

fn table(field: Field, names: &[(&str, i64)], d: &[(usize, usize, i64)], m: &[(usize, usize, usize, i64)]) -> AInfAlgebra {
    let space = GradedSpace::new(field, names.iter().map(|&(n, k)| (n, k))).unwrap();
    let mut cols = vec![Vector::new(); space.dim()];
    for &(j, i, c) in d {
        cols[j].add_term(i, &field.from_i64(c));
    }
    let m1 = GradedMap::new(space.clone(), space.clone(), 1, cols).unwrap();
    let mut m2 = MultiOp::new(2, 0);
    for &(x, y, z, c) in m {
        m2.add(vec![x, y], &Vector::basis(z, field.from_i64(c)));
    }
    AInfAlgebra::from_dga_table(&m1, &m2, 6).unwrap()
}

#[test]
fn ordinary_algebra_is_its_own_minimal_model() {
    let mut rng = random::rng(5);
    for _ in 0..10 {
        let a = random::associative(&mut rng, Field::Rational, 3);
        let (h, f) = minimal_model(&a, 5).unwrap();
        assert_eq!(h.b(2), a.b(2));
        for n in 3..=5 {
            assert!(h.b(n).is_zero());
        }
        assert!(f.is_valid());
    }
}

#[test]
fn augmented_acyclic_has_ground_field_homology() {
    // k ⊕ ⟨y, x⟩ with dy = x and the augmentation ideal square zero
    let a = table(
        Field::Rational,
        &[("1", 0), ("y", -1), ("x", 0)],
        &[(1, 2, 1)],
        &[(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1), (0, 2, 2, 1), (2, 0, 2, 1)],
    );
    let (h, f) = minimal_model(&a, 5).unwrap();
    assert_eq!(h.dim(), 1);
    assert_eq!(h.space().name(0), "1");
    assert_eq!(h.b(2), AInfAlgebra::ground(Field::Rational, 5).b(2));
    assert!(h.satisfies_stasheff());
    assert!(f.is_valid());
}

#[test]
fn cone_has_zero_homology() {
    let a = table(
        Field::Prime(7),
        &[("1", 0), ("y", -1)],
        &[(1, 0, 1)],
        &[(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1)],
    );
    let (h, _) = minimal_model(&a, 4).unwrap();
    assert_eq!(h.dim(), 0);
}

#[test]
fn already_minimal_with_trivial_contraction() {
    let mut rng = random::rng(6);
    let a = random::associative(&mut rng, Field::Prime(5), 4);
    let c = suspended_complex(&a).unwrap();
    let ct = ainfty::grlin::ContractionData::trivial(&c).unwrap();
    let (h, f) = transfer_structure(&a, &ct, 5).unwrap();
    for n in 1..=5 {
        assert_eq!(h.b(n), a.b(n));
    }
    assert!(f.is_valid());
    assert_eq!(f.f(1), ainfty::ainf_core::AInfMorphism::identity(&a).f(1));
    for n in 2..=5 {
        assert!(f.f(n).is_zero());
    }
}

#[test]
fn deformation_cocycle_minimal_model() {
    // k[x]/(x²), N = 3, c(x, x, x) = x: δc = 0 because every product of
    // three or more letters x vanishes and c(1, ·) terms are absent.
    let q = Field::Rational;
    let b = table(q, &[("1", 0), ("x", 0)], &[], &[(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1)]);
    let c = MultiOp::from_entries(3, 1, [(vec![1, 1, 1], Vector::basis(1, q.one()))]);
    let a = deform(&b, &c, 3).unwrap().with_arity_max(5);
    assert!(a.satisfies_stasheff());
    let (h, f) = minimal_model(&a, 5).unwrap();
    assert!(h.satisfies_stasheff());
    assert!(f.is_valid());
    // homology is ordered by degree, so compare through names
    let x = h.space().index_of("x").unwrap();
    let ex = h.space().index_of("εx").unwrap();
    assert_eq!(h.b(3).apply(&[x, x, x]), Vector::basis(ex, q.one()));
    assert_eq!(h.b(3).len(), 1);
}

fn check_minimal_model(a: &AInfAlgebra, n_max: usize) {
    let ct = homology_with_contraction(&suspended_complex(a).unwrap()).unwrap();
    ct.verify().unwrap();
    let (h, f) = transfer_structure(a, &ct, n_max).unwrap();
    assert!(h.b(1).is_zero());
    assert_eq!(h.first_stasheff_failure(), None);
    assert_eq!(f.first_failure(), None);
    // b_2 = p b_2 (i ⊗ i)
    let field = a.field();
    for w in words(h.dim(), 2, |_| 0, None) {
        let t = tensor_of(field, &[ct.i.column(w[0]), ct.i.column(w[1])]);
        assert_eq!(h.b(2).apply(&w), ct.p.apply(&a.b(2).apply_tensor(&t)));
    }
    // tree sums, tree by tree
    for n in 2..=n_max.min(4) {
        let trees = planar_trees(n).unwrap();
        for w in words(h.dim(), n, |_| 0, None) {
            let mut sum_p = Vector::new();
            let mut sum_h = Vector::new();
            for t in &trees {
                sum_p.add_assign(&tree_term(a, &ct, t, &w, false).unwrap());
                sum_h.add_assign(&tree_term(a, &ct, t, &w, true).unwrap());
            }
            assert_eq!(h.b(n).apply(&w), sum_p);
            assert_eq!(f.f(n).apply(&w), sum_h);
        }
    }
}

#[test]
fn random_dga_minimal_models() {
    let mut rng = random::rng(2024);
    for _ in 0..25 {
        let field = random::field(&mut rng);
        let a = random::dga(&mut rng, field, 4, 5);
        check_minimal_model(&a, 5);
    }
}

#[test]
fn transfer_rejects_bad_input() {
    let q = Field::Rational;
    let a = table(q, &[("1", 0), ("y", -1)], &[(1, 0, 1)], &[(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1)]);
    let other = table(q, &[("1", 0), ("y", -1)], &[], &[(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1)]);
    let ct = homology_with_contraction(&suspended_complex(&other).unwrap()).unwrap();
    assert!(transfer_structure(&a, &ct, 3).is_err());
    assert!(minimal_model(&a, 9).is_err());
    let b0 = MultiOp::from_entries(0, 1, [(vec![], Vector::basis(0, q.one()))]);
    // b_0 = 1 has suspended degree −1, not +1: rejected already
    assert!(a.clone().with_op(b0).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn prop_minimal_models(seed in 0u64..100_000) {
        let mut rng = random::rng(seed);
        let field = random::field(&mut rng);
        let a = random::dga(&mut rng, field, 4, 5);
        check_minimal_model(&a, 5);
    }

    #[test]
    fn prop_minimal_model_of_transported(seed in 0u64..100_000) {
        // non-dg inputs: transport a dg algebra along a random nonlinear
        // morphism, which switches on b_3 and higher
        let mut rng = random::rng(seed);
        let a = random::dga(&mut rng, Field::Prime(101), 3, 5);
        let fc = random::morphism_components(&mut rng, &a, 3);
        let (b, _) = ainfty::ainf_core::transport_structure(&a, fc).unwrap();
        check_minimal_model(&b, 5);
    }
}
