use proptest::prelude::*;
use ptcount_core::search::{partial_transpose_permutation, LexPermutations};
use ptcount_core::{BinaryMatrix, BlockShape, Permutation};

fn shape_and_matrix() -> impl Strategy<Value = (BlockShape, BinaryMatrix)> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(p, q)| {
        let n = p * q;
        proptest::collection::vec(any::<bool>(), n * n).prop_map(move |bits| {
            let ones = bits
                .iter()
                .enumerate()
                .filter(|(_, &b)| b)
                .map(|(k, _)| (k / n + 1, k % n + 1));
            (BlockShape::new(p, q).unwrap(), BinaryMatrix::from_ones(n, ones).unwrap())
        })
    })
}

fn shape_and_perm() -> impl Strategy<Value = (BlockShape, Permutation)> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(p, q)| {
        let n = p * q;
        Just((0..n).map(|i| i + 1).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(move |w| (BlockShape::new(p, q).unwrap(), Permutation::from_word(&w).unwrap()))
    })
}

proptest! {
    #[test]
    fn partial_transpose_is_an_involution((shape, m) in shape_and_matrix()) {
        let once = m.partial_transpose(shape).unwrap();
        prop_assert_eq!(once.partial_transpose(shape).unwrap(), m);
    }

    #[test]
    fn transposes_factor_the_full_transpose((shape, m) in shape_and_matrix()) {
        let full = m.transpose();
        let a = m.partial_transpose(shape).unwrap().block_transpose(shape).unwrap();
        let b = m.block_transpose(shape).unwrap().partial_transpose(shape).unwrap();
        prop_assert_eq!(&a, &full);
        prop_assert_eq!(&b, &full);
    }

    #[test]
    fn block_counts_preserved((shape, m) in shape_and_matrix()) {
        let g = m.partial_transpose(shape).unwrap();
        prop_assert_eq!(g.block_counts(shape).unwrap(), m.block_counts(shape).unwrap());
    }

    #[test]
    fn symmetry_preserved((shape, m) in shape_and_matrix()) {
        let sym = BinaryMatrix::from_ones(
            m.n(),
            m.ones().chain(m.ones().map(|(r, c)| (c, r))).collect::<Vec<_>>(),
        ).unwrap();
        prop_assert!(sym.is_symmetric());
        prop_assert!(sym.partial_transpose(shape).unwrap().is_symmetric());
    }

    #[test]
    fn index_sums_are_triangular((shape, perm) in shape_and_perm()) {
        let n = shape.n();
        let g = BinaryMatrix::from_permutation(&perm).partial_transpose(shape).unwrap();
        prop_assert_eq!(g.row_index_sum(), n * (n + 1) / 2);
        prop_assert_eq!(g.column_index_sum(), n * (n + 1) / 2);
        prop_assert_eq!(g.profile().sum(), n * (n + 1) / 2);
    }

    #[test]
    fn profile_of_permutation_matrix_is_its_word((_shape, perm) in shape_and_perm()) {
        prop_assert_eq!(BinaryMatrix::from_permutation(&perm).profile().0, perm.word());
    }

    #[test]
    fn shuffle_inverts_across_swapped_shape((shape, perm) in shape_and_perm()) {
        let there = perm.shuffle_conjugate(shape).unwrap();
        prop_assert_eq!(there.shuffle_conjugate(shape.swapped()).unwrap(), perm);
    }

    #[test]
    fn word_parse_round_trip((_shape, perm) in shape_and_perm()) {
        prop_assert_eq!(perm.to_string().parse::<Permutation>().unwrap(), perm);
    }
}

#[test]
fn shuffle_is_a_bijection_on_small_groups() {
    for (p, q) in [(2, 2), (1, 4), (4, 1), (2, 3), (3, 2), (1, 6), (6, 1)] {
        let shape = BlockShape::new(p, q).unwrap();
        let mut images: Vec<Permutation> = LexPermutations::new(shape.n())
            .map(|perm| perm.shuffle_conjugate(shape).unwrap())
            .collect();
        let total = images.len();
        images.sort();
        images.dedup();
        assert_eq!(images.len(), total, "({p},{q}) not injective");
    }
}

#[test]
fn shuffle_transports_the_permutation_property() {
    // The shuffle reads indices with stride p, i.e. blocks of size p, so it
    // carries shape (q,p) on the input to shape (p,q) on the output.
    for (p, q) in [(2, 2), (1, 4), (4, 1), (2, 3), (3, 2), (1, 6), (6, 1)] {
        let shape = BlockShape::new(p, q).unwrap();
        for perm in LexPermutations::new(shape.n()) {
            let image = perm.shuffle_conjugate(shape).unwrap();
            let before = partial_transpose_permutation(&perm, shape.swapped()).unwrap();
            let after = partial_transpose_permutation(&image, shape).unwrap();
            assert_eq!(before.is_some(), after.is_some(), "{perm} at ({p},{q})");
            // Up to a full transpose, the two partial transposes correspond.
            if let (Some(b), Some(a)) = (before, after) {
                assert_eq!(b.shuffle_conjugate(shape).unwrap().inverse(), a);
            }
        }
    }
}
