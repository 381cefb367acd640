use std::sync::Arc;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hochschild_steenrod::algebra::{FreeAlgebra, Generator, GradedAlgebra};
use hochschild_steenrod::complex::ChainComplex;
use hochschild_steenrod::hochschild::{shuffle_product, HochschildComplex};
use hochschild_steenrod::linalg::{
    kernel_basis, rank, rank_kernel_with, solve_consistent, SparseMatrix,
};
use hochschild_steenrod::resolution::{HomAlgebra, HomElement, WResolution};
use hochschild_steenrod::{Chain, PrimeField};

fn field() -> impl Strategy<Value = PrimeField> {
    prop::sample::select(vec![2u32, 3, 5, 7]).prop_map(|p| PrimeField::new(p).unwrap())
}

fn matrix() -> impl Strategy<Value = (PrimeField, Vec<Vec<u32>>)> {
    (field(), 1usize..10, 1usize..10).prop_flat_map(|(f, r, c)| {
        let p = f.p();
        (
            Just(f),
            prop::collection::vec(prop::collection::vec(0..p, c), r),
        )
    })
}

fn random_chain<E: Clone + Ord>(f: PrimeField, basis: &[E], rng: &mut ChaCha8Rng) -> Chain<E> {
    let mut c = Chain::zero();
    for e in basis {
        if rng.random_bool(0.5) {
            c.add_term(f, e.clone(), rng.random_range(1..f.p()));
        }
    }
    c
}

fn t_u(truncation: i32) -> Arc<FreeAlgebra> {
    Arc::new(
        FreeAlgebra::new(
            PrimeField::F2,
            vec![Generator::new("u", 2)],
            vec![Chain::zero()],
            truncation,
        )
        .unwrap(),
    )
}

/// T(x, y, z) with |x| = 2, |y| = 3, |z| = 4 and d z = x y + y x.
fn txyz() -> Arc<FreeAlgebra> {
    let gens = vec![
        Generator::new("x", 2),
        Generator::new("y", 3),
        Generator::new("z", 4),
    ];
    let bare = FreeAlgebra::new(PrimeField::F2, gens.clone(), vec![Chain::zero(); 3], 12).unwrap();
    let dz = bare.parse_chain("x y + y x").unwrap();
    Arc::new(
        FreeAlgebra::new(
            PrimeField::F2,
            gens,
            vec![Chain::zero(), Chain::zero(), dz],
            12,
        )
        .unwrap(),
    )
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn field_inverse_and_distributivity(f in field(), a in 0u32..7, b in 0u32..7, c in 0u32..7) {
        let (a, b, c) = (a % f.p(), b % f.p(), c % f.p());
        if a != 0 {
            prop_assert_eq!(f.mul(a, f.inv(a)), 1);
        }
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), 0);
    }

    #[test]
    fn rank_nullity_and_kernel((f, data) in matrix()) {
        let m = SparseMatrix::from_dense(f, &data).unwrap();
        let k = kernel_basis(f, &m);
        prop_assert_eq!(rank(f, &m) + k.len(), m.cols());
        for v in &k {
            prop_assert!(m.mul_vec(f, v).is_empty());
        }
    }

    #[test]
    fn dense_and_sparse_elimination_agree((f, data) in matrix()) {
        let m = SparseMatrix::from_dense(f, &data).unwrap();
        prop_assert_eq!(rank_kernel_with(f, &m, true), rank_kernel_with(f, &m, false));
    }

    #[test]
    fn solving_an_image_succeeds((f, data) in matrix(), seed in any::<u64>()) {
        let m = SparseMatrix::from_dense(f, &data).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x: Vec<(usize, u32)> =
            (0..m.cols()).filter_map(|j| Some((j, rng.random_range(0..f.p()))).filter(|e| e.1 != 0)).collect();
        let b = m.mul_vec(f, &x);
        let y = solve_consistent(f, &m, &b).unwrap();
        prop_assert_eq!(m.mul_vec(f, &y), b);
    }

    #[test]
    fn resolution_boundary_squares_to_zero(p in prop::sample::select(vec![2u32, 3, 5]), i in 0usize..24, s in 0u32..5) {
        let w = WResolution::new(PrimeField::new(p).unwrap());
        let c = (i, s % p);
        prop_assert!(w.boundary_chain(&w.boundary(c)).is_zero());
    }

    #[test]
    fn diagonal_is_a_chain_map(p in prop::sample::select(vec![2u32, 3, 5]), i in 0usize..16, s in 0u32..5) {
        let f = PrimeField::new(p).unwrap();
        let w = WResolution::new(f);
        let c = (i, s % p);
        let lhs = w.boundary_tensor(&w.diagonal(c));
        let rhs = w.boundary(c).map_linear::<_, ()>(f, |b| Ok(w.diagonal(*b))).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn free_algebra_is_a_dga(seed in any::<u64>(), n in 2i32..9, m in 2i32..4) {
        let a = txyz();
        let f = a.field();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_chain(f, &a.basis(n).unwrap(), &mut rng);
        let y = random_chain(f, &a.basis(m).unwrap(), &mut rng);
        prop_assert!(a.differential(&a.differential(&x).unwrap()).unwrap().is_zero());
        let lhs = a.differential(&a.multiply(&x, &y).unwrap()).unwrap();
        let mut rhs = a.multiply(&a.differential(&x).unwrap(), &y).unwrap();
        rhs.add_scaled(f, &a.multiply(&x, &a.differential(&y).unwrap()).unwrap(), f.sign(n as i64));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn hochschild_differential_squares_to_zero(seed in any::<u64>(), n in 0i32..7) {
        let c = HochschildComplex::new(txyz());
        let f = c.field();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_chain(f, &c.indexed_basis(n).unwrap().elements, &mut rng);
        prop_assert!(c.differential(&c.differential(&x).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn shuffle_product_is_commutative_on_t_u(seed in any::<u64>(), n in 0i32..5, m in 0i32..5) {
        let c = HochschildComplex::new(t_u(12));
        let f = c.field();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_chain(f, &c.indexed_basis(n).unwrap().elements, &mut rng);
        let y = random_chain(f, &c.indexed_basis(m).unwrap().elements, &mut rng);
        prop_assert_eq!(shuffle_product(&c, &x, &y, 12).unwrap(), shuffle_product(&c, &y, &x, 12).unwrap());
    }

    #[test]
    fn cup_product_is_associative_at_two(seed in any::<u64>(), degrees in (0i32..4, 0i32..4, 0i32..4)) {
        let a = t_u(14);
        let f = a.field();
        let h = HomAlgebra::new(&*a);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut cochain = |k: i32| {
            let mut x = HomElement::zero(k);
            for i in 0..=k as usize {
                for s in 0..2 {
                    x.set((i, s), random_chain(f, &a.basis(k - i as i32).unwrap(), &mut rng));
                }
            }
            x
        };
        let (x, y, z) = (cochain(degrees.0), cochain(degrees.1), cochain(degrees.2));
        let left = h.cup(&h.cup(&x, &y).unwrap(), &z).unwrap();
        let right = h.cup(&x, &h.cup(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        prop_assert!(h.differential(&h.differential(&x).unwrap()).unwrap().is_zero());
    }
}
