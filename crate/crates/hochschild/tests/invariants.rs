//! Structural properties checked across the corpus and on randomly
//! generated quivers.

use num_bigint::{BigInt, BigUint};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use hochschild::complex::assemble_differential;
use hochschild::corpus;
use hochschild::direct::dims_direct;
use hochschild::formula::theorem2_dims;
use hochschild::linalg::{is_in_image, rank, FieldSpec};
use hochschild::quiver::{
    classify, count_parallel, count_paths, enumerate_paths, parse_quiver, rotate,
    DEFAULT_PATH_CAP,
};
use hochschild::{Quiver, SparseIntMatrix};

const CAP: usize = DEFAULT_PATH_CAP;

fn q0() -> FieldSpec {
    FieldSpec::rationals()
}

fn corpus_matrices() -> Vec<(String, SparseIntMatrix)> {
    let mut out = Vec::new();
    for (name, q) in corpus::all() {
        for n in [2usize, 3] {
            for m in 1..=4usize {
                let slice = assemble_differential(&q, n, m, CAP).unwrap();
                out.push((format!("{name} n={n} d^{m}"), slice.matrix));
            }
        }
    }
    out
}

#[test]
fn enumeration_matches_adjacency_powers() {
    for (_, q) in corpus::all() {
        for len in 0..=6usize {
            for u in 0..q.vertex_count() {
                for v in 0..q.vertex_count() {
                    let listed = enumerate_paths(&q, len, u, v, CAP).unwrap().len();
                    let counted = count_paths(&q, len, u, v);
                    assert_eq!(BigUint::from(listed), counted);
                }
            }
        }
    }
}

#[test]
fn parallel_counts_symmetric() {
    for (_, q) in corpus::all() {
        for i in 0..=6usize {
            for j in 0..=6usize {
                assert_eq!(count_parallel(&q, i, j), count_parallel(&q, j, i));
            }
        }
    }
}

#[test]
fn basic_cycles_have_self_parallel_arrows_only() {
    for e in 1..=5usize {
        let q = corpus::basic_cycle(e);
        assert!(classify(&q).is_basic_cycle);
        assert_eq!(count_parallel(&q, 1, 1), BigUint::from(q.arrow_count()));
    }
}

#[test]
fn rotation_round_trips() {
    for (_, q) in corpus::cyclic() {
        for len in 1..=6usize {
            for v in 0..q.vertex_count() {
                for p in enumerate_paths(&q, len, v, v, CAP).unwrap() {
                    for k in 0..len {
                        let there = rotate(&q, &p, k).unwrap();
                        let back = rotate(&q, &there, (len - k) % len).unwrap();
                        assert_eq!(back, p);
                    }
                }
            }
        }
    }
}

#[test]
fn rank_equals_transpose_rank() {
    for (name, m) in corpus_matrices() {
        for c in [0u64, 2, 3, 5] {
            let f = FieldSpec::new(c).unwrap();
            assert_eq!(rank(&m, f), rank(&m.transpose(), f), "{name} char {c}");
        }
    }
}

#[test]
fn modular_rank_bounded_by_rational_rank() {
    for (name, m) in corpus_matrices() {
        let over_q = rank(&m, q0());
        for p in [2u64, 3, 5, 7] {
            let over_p = rank(&m, FieldSpec::prime(p).unwrap());
            assert!(over_p <= over_q, "{name}: rank mod {p} exceeds rank over Q");
        }
    }
}

#[test]
fn images_contain_their_products() {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for (name, m) in corpus_matrices() {
        for _ in 0..20 {
            let x: Vec<BigInt> = (0..m.cols())
                .map(|_| BigInt::from(rng.gen_range(-4i64..=4)))
                .collect();
            let target = m.mul_vec(&x).unwrap();
            for c in [0u64, 3] {
                let f = FieldSpec::new(c).unwrap();
                assert!(is_in_image(&m, &target, f).unwrap(), "{name} char {c}");
            }
        }
    }
}

#[test]
fn dims_ignore_declaration_order() {
    // Same quivers with vertices and arrows declared in a different order.
    let th_flipped = parse_quiver(
        "vertex 2\nvertex 1\narrow c 1 2\narrow b 2 1\narrow a 1 2\n",
    )
    .unwrap();
    let sc_flipped = parse_quiver(
        "vertex 4\nvertex 3\nvertex 2\nvertex 1\n\
         arrow d 1 4\narrow c 3 4\narrow b 2 3\narrow a 1 2\n",
    )
    .unwrap();
    let cases: [(&Quiver, &Quiver); 2] = [
        (&corpus::th(), &th_flipped),
        (&corpus::sc(), &sc_flipped),
    ];
    for (original, permuted) in cases {
        for n in [2usize, 3] {
            for c in [0u64, 2] {
                let f = FieldSpec::new(c).unwrap();
                let a = dims_direct(original, n, f, 5, CAP).unwrap().values();
                let b = dims_direct(permuted, n, f, 5, CAP).unwrap().values();
                assert_eq!(a, b);
            }
        }
    }
}

/// Random small quivers: up to 3 vertices and 4 arrows with arbitrary
/// endpoints.
fn arb_quiver() -> impl Strategy<Value = Quiver> {
    (1usize..=3).prop_flat_map(|v| {
        proptest::collection::vec((0..v, 0..v), 1..=4).prop_map(move |ends| {
            let vertices: Vec<String> = (1..=v).map(|i| i.to_string()).collect();
            let arrows: Vec<(String, String, String)> = ends
                .iter()
                .enumerate()
                .map(|(i, (s, t))| {
                    (
                        format!("a{i}"),
                        (s + 1).to_string(),
                        (t + 1).to_string(),
                    )
                })
                .collect();
            Quiver::new(vertices, arrows).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_quivers_satisfy_complex_and_engine_laws(
        q in arb_quiver(),
        n in 2usize..=3,
        c in prop::sample::select(vec![0u64, 2, 3]),
    ) {
        let f = FieldSpec::new(c).unwrap();
        // d.d = 0 in low degrees.
        for m in 1..=3usize {
            let lo = assemble_differential(&q, n, m, CAP).unwrap();
            let hi = assemble_differential(&q, n, m + 1, CAP).unwrap();
            prop_assert!(hi.matrix.mul(&lo.matrix).unwrap().is_zero());
        }
        // Engine agreement wherever the formulas apply; the direct report
        // may be shorter when a basis cap truncates it.
        let class = classify(&q);
        if class.weakly_connected && !class.is_basic_cycle {
            let direct = dims_direct(&q, n, f, 4, CAP).unwrap().values();
            let formula = theorem2_dims(&q, n, f, 4, CAP).unwrap().values();
            prop_assert_eq!(&direct[..], &formula[..direct.len()]);
        }
    }
}
