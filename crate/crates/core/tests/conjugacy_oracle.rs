mod common;

use common::*;
use mcg_core::{SurfacePresentation, Word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn genus3_all_pairs_up_to_length_8() {
    let audit = conjugacy_audit(3, 8, 10, 3);
    assert!(audit.agrees(), "{audit:?}");
    assert_eq!(audit.words, 585_937);
}

#[test]
fn genus4_all_pairs_up_to_length_6() {
    let audit = conjugacy_audit(4, 6, 8, 4);
    assert!(audit.agrees(), "{audit:?}");
}

/// Inserts a random cyclic shift of the relator (or its inverse) at a random position.
fn insert_relator(rng: &mut ChaCha8Rng, genus: usize, w: &[i8]) -> Raw {
    let mut r = relator(genus);
    if rng.gen_bool(0.5) {
        r = inverse(&r);
    }
    let shift = rng.gen_range(0..r.len());
    r.rotate_left(shift);
    let at = rng.gen_range(0..=w.len());
    let mut out = w[..at].to_vec();
    out.extend(r);
    out.extend_from_slice(&w[at..]);
    free_reduce(&out)
}

#[test]
fn long_words_against_bounded_conjugators() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for genus in [3, 4] {
        let p = SurfacePresentation::new(genus).unwrap();
        let group = GlGroup::new(&mut rng, 3, 3);
        let reps: Vec<MatRep> = (0..6).map(|_| MatRep::random(&mut rng, &group, genus)).collect();
        for _ in 0..300 {
            let len = rng.gen_range(1..=12);
            let a = free_reduce(&random_word(&mut rng, genus, len));
            let clen = rng.gen_range(0..=8);
            let c = free_reduce(&random_word(&mut rng, genus, clen));
            let mut b = c.clone();
            b.extend(&a);
            b.extend(inverse(&c));
            for _ in 0..rng.gen_range(0..3) {
                b = insert_relator(&mut rng, genus, &b);
            }
            let (wa, wb) = (to_word(&a), to_word(&b));
            assert!(p.is_conjugate(&wa, &wb), "{wa} ~ {wb}");
            let k = p.conjugator(&wa, &wb).expect("conjugator");
            let check = from_word(&wa.conjugate_by(&k).mul(&wb.inverse()));
            assert!(reps.iter().all(|r| r.image(&check) == group.identity()));
        }
        for _ in 0..300 {
            let (la, lb) = (rng.gen_range(1..=12), rng.gen_range(1..=12));
            let a = free_reduce(&random_word(&mut rng, genus, la));
            let b = free_reduce(&random_word(&mut rng, genus, lb));
            let certified_distinct =
                homology(genus, &a) != homology(genus, &b) || reps.iter().any(|r| r.class(&a) != r.class(&b));
            if certified_distinct {
                assert!(!p.is_conjugate(&to_word(&a), &to_word(&b)), "{a:?} !~ {b:?}");
            }
        }
    }
}

#[test]
fn conjugacy_is_an_equivalence_on_samples() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let p = SurfacePresentation::new(5).unwrap();
    for _ in 0..200 {
        let a = to_word(&random_word(&mut rng, 5, 10));
        let c = to_word(&random_word(&mut rng, 5, 6));
        let d = to_word(&random_word(&mut rng, 5, 6));
        let b = a.conjugate_by(&c);
        let e = b.conjugate_by(&d);
        assert!(p.is_conjugate(&a, &a));
        assert!(p.is_conjugate(&a, &b) && p.is_conjugate(&b, &a));
        assert!(p.is_conjugate(&a, &e));
        assert_eq!(p.cyclic_reduce(&a), p.cyclic_reduce(&e));
    }
    assert!(p.is_conjugate(&Word::empty(), &p.relator().clone()));
}
