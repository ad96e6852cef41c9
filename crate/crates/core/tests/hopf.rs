//! Hopf-formula bound against quotients and homology known in closed form.

use std::sync::atomic::AtomicBool;

use grouphom::hopf::{find_basis, reduce_word, second_homology_bound, HopfBound, HopfQuotient, Silent};
use grouphom::{CompletionStatus, KbConfig, Letter, PrimeField, Presentation, RelatorSelection, Word};
use num_integer::Integer;
use proptest::prelude::*;

fn k(p: u64) -> PrimeField {
    PrimeField::new(p).unwrap()
}

/// Heisenberg group with central coordinate modulo 3: `(x, y, z)` with
/// `(x, y, z)(x', y', z') = (x + x', y + y', z + z' + x y')`.
fn heisenberg(w: &Word) -> (i64, i64, i64) {
    let (mut x, mut y, mut z) = (0i64, 0i64, 0i64);
    for l in w.letters() {
        let s = l.sign();
        let (dx, dy) = if l.gen.0 == 0 { (s, 0) } else { (0, s) };
        z += x * dy;
        x += dx;
        y += dy;
    }
    (x, y, z.mod_floor(&3))
}

type Mat3 = [[u8; 3]; 3];

fn mat_mul(a: &Mat3, b: &Mat3) -> Mat3 {
    let mut c = [[0u8; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            c[i][j] = ((0..3).map(|t| a[i][t] as u32 * b[t][j] as u32).sum::<u32>() % 3) as u8;
        }
    }
    c
}

/// Unitriangular 3×3 matrices over ℤ/3.
fn mod3_matrix(w: &Word) -> Mat3 {
    let a: Mat3 = [[1, 1, 0], [0, 1, 0], [0, 0, 1]];
    let a_inv: Mat3 = [[1, 2, 0], [0, 1, 0], [0, 0, 1]];
    let b: Mat3 = [[1, 0, 0], [0, 1, 1], [0, 0, 1]];
    let b_inv: Mat3 = [[1, 0, 0], [0, 1, 2], [0, 0, 1]];
    let mut acc: Mat3 = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
    for l in w.letters() {
        let m = match (l.gen.0, l.inverse) {
            (0, false) => &a,
            (0, true) => &a_inv,
            (_, false) => &b,
            (_, true) => &b_inv,
        };
        acc = mat_mul(&acc, m);
    }
    acc
}

fn z2() -> Presentation {
    Presentation::parse("generators: a, b\nrelators: [a, b]").unwrap()
}

#[test]
fn commutator_survives_in_heisenberg_quotient() {
    let base = z2();
    let z = Word::commutator(&Word::generator(0), &Word::generator(1));
    let (w, status) = reduce_word(&base, &z, &RelatorSelection::empty(), k(3), &KbConfig::default());
    assert_eq!(status, CompletionStatus::Confluent);
    assert!(!w.is_identity());
    let id: Mat3 = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
    assert_ne!(mod3_matrix(&z), id);
    assert_eq!(mod3_matrix(&w), mod3_matrix(&z));
    assert_eq!(heisenberg(&w), heisenberg(&z));
}

fn word(max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..2usize, any::<bool>()).prop_map(|(g, i)| Letter::new(g, i)), 0..=max_len)
        .prop_map(Word::from_letters)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn heisenberg_normal_forms_are_faithful(u in word(14), v in word(14)) {
        thread_local!(static RS: grouphom::RewritingSystem = {
            let q = HopfQuotient::new(&z2(), k(3), &RelatorSelection::empty());
            q.complete(&KbConfig::default(), &AtomicBool::new(false), |_| {})
        });
        RS.with(|rs| {
            prop_assert!(rs.is_confluent());
            let ru = rs.reduce(&u);
            let rv = rs.reduce(&v);
            prop_assert_eq!(heisenberg(&ru), heisenberg(&u));
            prop_assert_eq!(ru == rv, heisenberg(&u) == heisenberg(&v));
            Ok(())
        })?;
    }
}

#[test]
fn find_basis_keeps_nontrivial_relator() {
    let z4 = Presentation::parse("generators: a\nrelators: a^4").unwrap();
    let r = find_basis(&z4, k(2), &RelatorSelection::all(&z4), &KbConfig::default());
    assert_eq!(r.survivors.indices(), &[0]);
    assert_eq!(r.e, 1);
    assert!(r.all_confluent);
}

#[test]
fn removed_relators_reverify() {
    let p = Presentation::parse("generators: a\nrelators: a^4; a^8; a^12").unwrap();
    let never = AtomicBool::new(false);
    let cfg = KbConfig::default();
    let mut hb = HopfBound::new(&p, k(2), &cfg, &never);
    let rep = hb.run(&RelatorSelection::all(&p), 8, &mut Silent);
    rep.check().unwrap();
    assert_eq!(rep.e, 1);
    assert_eq!(rep.removals.len(), 2);
    for r in &rep.removals {
        let sel = RelatorSelection::new(r.sublist.clone(), p.n_relators()).unwrap();
        let (w, status) = reduce_word(&p, &p.relators()[r.relator], &sel, k(2), &cfg);
        assert!(w.is_identity(), "relator {} no longer reduces", r.relator);
        assert_eq!(status, r.status);
    }
    assert!(hb.systems().count() >= 3);
}

#[test]
fn sigma5_bound() {
    let p = grouphom::fixtures::load_fixture("sigma5").unwrap();
    let rep = second_homology_bound(&p, k(2), &RelatorSelection::all(&p), &KbConfig::default(), 8);
    rep.check().unwrap();
    assert_eq!((rep.a, rep.b, rep.c, rep.e, rep.d), (1, 1, 3, 3, 2));
    assert!(rep.exact());
}

/// `dim H₂(ℤ/m × ℤ/n; 𝔽_p)` from the universal coefficient theorem, using
/// `H₁ = ℤ/m × ℤ/n` and `H₂ = ℤ/gcd(m, n)`.
fn uct_product(m: u64, n: u64, p: u64) -> i64 {
    [m.gcd(&n), m, n].iter().filter(|&&x| x % p == 0).count() as i64
}

#[test]
fn cyclic_products_match_universal_coefficients() {
    for m in 1..=6u64 {
        for n in m..=6u64 {
            for p in [2u64, 3, 5] {
                let text = format!("generators: a, b\nrelators: a^{m}; b^{n}; [a, b]");
                let base = Presentation::parse(&text).unwrap();
                let rep = second_homology_bound(&base, k(p), &RelatorSelection::all(&base), &KbConfig::default(), 8);
                rep.check().unwrap();
                assert!(rep.exact(), "Z/{m} x Z/{n} at p={p} not exact");
                assert_eq!(rep.d, uct_product(m, n, p), "Z/{m} x Z/{n} at p={p}");
            }
        }
    }
}
