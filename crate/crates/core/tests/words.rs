//! Algebraic laws of free-group words.

use grouphom::word::free_reduce;
use grouphom::{Letter, Presentation, Word};
use proptest::prelude::*;

fn letters(rank: usize, max_len: usize) -> impl Strategy<Value = Vec<Letter>> {
    prop::collection::vec((0..rank, any::<bool>()).prop_map(|(g, i)| Letter::new(g, i)), 0..=max_len)
}

fn word(rank: usize, max_len: usize) -> impl Strategy<Value = Word> {
    letters(rank, max_len).prop_map(Word::from_letters)
}

fn is_reduced(l: &[Letter]) -> bool {
    l.windows(2).all(|w| w[0] != w[1].inv())
}

proptest! {
    #[test]
    fn free_reduce_is_idempotent_and_reduced(raw in letters(3, 20)) {
        let once = free_reduce(raw.iter().copied());
        prop_assert!(is_reduced(&once));
        prop_assert_eq!(free_reduce(once.iter().copied()), once);
    }

    #[test]
    fn multiplication_is_associative(x in word(3, 8), y in word(3, 8), z in word(3, 8)) {
        prop_assert_eq!((&x * &y) * z.clone(), x * (y * z));
    }

    #[test]
    fn inverse_cancels(x in word(3, 10)) {
        prop_assert!((&x * &x.inverse()).is_identity());
        prop_assert!((&x.inverse() * &x).is_identity());
        prop_assert_eq!(x.inverse().inverse(), x);
    }

    #[test]
    fn product_commutator_expands(x in word(3, 8), y in word(3, 8), z in word(3, 8)) {
        let lhs = Word::commutator(&(&x * &y), &z);
        let rhs = &Word::commutator(&x, &z).conjugate(&y) * &Word::commutator(&y, &z);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn conjugate_commutator_expands(x in word(3, 8), y in word(3, 8), z in word(3, 8)) {
        let lhs = Word::commutator(&x, &y.conjugate(&z));
        let rhs = &Word::commutator(&(&z * &x), &y) * &Word::commutator(&y, &z);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn exponent_vector_is_a_homomorphism(x in word(3, 10), y in word(3, 10)) {
        let ex = x.exponent_vector(3).unwrap();
        let ey = y.exponent_vector(3).unwrap();
        let exy = (&x * &y).exponent_vector(3).unwrap();
        let sum: Vec<i64> = ex.iter().zip(&ey).map(|(a, b)| a + b).collect();
        prop_assert_eq!(exy, sum);
        let neg: Vec<i64> = ex.iter().map(|a| -a).collect();
        prop_assert_eq!(x.inverse().exponent_vector(3).unwrap(), neg);
    }

    #[test]
    fn power_matches_repeated_product(x in word(2, 6), n in -6i64..=6) {
        let mut expected = Word::identity();
        let step = if n >= 0 { x.clone() } else { x.inverse() };
        for _ in 0..n.unsigned_abs() {
            expected = &expected * &step;
        }
        prop_assert_eq!(x.power_len(n), expected.len() as u128);
        prop_assert_eq!(x.power(n), expected);
    }

    #[test]
    fn cyclic_decomposition_recomposes(x in word(3, 12)) {
        let (u, c) = x.cyclic_decomposition();
        prop_assert_eq!(&(&u * &c) * &u.inverse(), x.clone());
        let cl = c.letters();
        prop_assert!(cl.is_empty() || cl[0] != cl[cl.len() - 1].inv());
    }

    #[test]
    fn presentation_text_round_trips(rels in prop::collection::vec(word(3, 10), 0..6)) {
        let p = Presentation::with_default_names(3, rels).unwrap();
        let back = Presentation::parse(&p.to_string()).unwrap();
        prop_assert_eq!(back, p);
    }
}

#[test]
fn eliminating_a_generator_substitutes_and_renumbers() {
    // a b c with b ↦ a⁻¹ c⁻¹ becomes a a⁻¹ c⁻¹ c = 1 over the generators a, c
    let w = Word::from_powers(&[(0, 1), (1, 1), (2, 1)]);
    let image = Word::from_powers(&[(0, -1), (2, -1)]);
    assert!(w.eliminate_generator(1, &image).is_identity());
    let w = Word::from_powers(&[(2, 2), (1, -1)]);
    assert_eq!(w.eliminate_generator(1, &Word::generator(0)), Word::from_powers(&[(1, 2), (0, -1)]));
}
