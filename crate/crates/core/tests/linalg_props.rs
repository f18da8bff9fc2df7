use proptest::prelude::*;
use qalg_core::{ExactMatrix, Field, Scalar};

fn field() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::Rational), Just(Field::Prime(2)), Just(Field::Prime(7))]
}

fn matrix() -> impl Strategy<Value = ExactMatrix> {
    (field(), 1usize..6, 1usize..6).prop_flat_map(|(f, r, c)| {
        prop::collection::vec(prop::collection::vec(-3i64..=3, c), r)
            .prop_map(move |rows| from_ints(f, &rows))
    })
}

fn from_ints(f: Field, rows: &[Vec<i64>]) -> ExactMatrix {
    let rows = rows.iter().map(|r| r.iter().map(|&x| f.from_i64(x)).collect()).collect();
    ExactMatrix::from_rows(f, rows).unwrap()
}

fn is_zero(m: &ExactMatrix) -> bool {
    (0..m.rows()).all(|r| (0..m.cols()).all(|c| m.get(r, c).is_zero()))
}

proptest! {
    #[test]
    fn rref_is_idempotent(m in matrix()) {
        let once = m.rref().unwrap();
        let twice = once.reduced.rref().unwrap();
        prop_assert_eq!(&once.reduced, &twice.reduced);
        prop_assert_eq!(once.pivots, twice.pivots);
    }

    #[test]
    fn rank_plus_left_kernel_is_rows(m in matrix()) {
        let k = m.kernel();
        prop_assert_eq!(m.rank() + k.rows.rows(), m.rows());
        prop_assert!(is_zero(&k.rows.mul(&m)));
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn solve_recovers_a_consistent_right_hand_side(m in matrix(), seed in prop::collection::vec(-2i64..=2, 5)) {
        let f = m.get(0, 0).field();
        let x: Vec<Vec<Scalar>> = (0..m.cols()).map(|i| vec![f.from_i64(seed[i % seed.len()])]).collect();
        let x = ExactMatrix::from_rows(f, x).unwrap();
        let b = m.mul(&x);
        let y = m.solve(&b).unwrap().expect("b lies in the column space");
        prop_assert_eq!(m.mul(&y), b);
    }
}
