//! Cross-checks between the sieve and the independent oracles.

use mdsieve::bitgrid::{flatten, BoardLayout};
use mdsieve::matrix::{Dims, MatrixCode};
use mdsieve::oracles::{brute_force_classes, burnside_count, concat_bits, trial_division_primes};
use mdsieve::orbits::{enumerate_classes, orbit_of, Enumerator};
use mdsieve::sieve::{
    eratosthenes, fixpoint_closure, layered_closure, primes_by_sieve, run_sieve, ClosureMode,
    MatrixUniverse, Universe,
};

fn all_dims(max_cells: usize) -> impl Iterator<Item = Dims> {
    (1..=max_cells).flat_map(move |m| (1..=max_cells / m).map(move |n| Dims::new(m, n).unwrap()))
}

#[test]
fn sieve_burnside_and_brute_force_agree() {
    for d in all_dims(16) {
        let sieve = enumerate_classes(d).unwrap().class_count;
        let burnside = burnside_count(d).unwrap().total;
        let brute = brute_force_classes(d).unwrap().class_count;
        assert_eq!(u128::from(sieve), burnside, "{d}");
        assert_eq!(sieve, brute, "{d}");
    }
}

#[test]
fn representatives_are_canonical() {
    for d in all_dims(12) {
        let layout = BoardLayout::new(d).unwrap();
        let brute = brute_force_classes(d).unwrap();
        let report = enumerate_classes(d).unwrap();

        let mut class_of = vec![u64::MAX; layout.total_bits() as usize];
        for record in &report.records {
            let rep_bits = concat_bits(&record.representative, d.cols());
            assert_eq!(brute.canonical_of(&record.representative), rep_bits, "{d}");
            let orbit = orbit_of(&record.representative, d).unwrap();
            assert_eq!(orbit.len(), record.orbit_size);
            for member in &orbit {
                let idx = flatten(member, &layout).unwrap() as usize;
                assert_eq!(class_of[idx], u64::MAX, "orbits overlap in {d}");
                class_of[idx] = rep_bits;
            }
        }
        assert!(class_of.iter().all(|&c| c != u64::MAX), "orbits miss codes in {d}");
        assert_eq!(class_of, brute.canonical);
    }
}

#[test]
fn transposed_problems_have_equal_counts() {
    for d in all_dims(20) {
        let t = d.transposed().unwrap();
        assert_eq!(
            enumerate_classes(d).unwrap().class_count,
            enumerate_classes(t).unwrap().class_count,
            "{d}"
        );
    }
}

#[test]
fn generic_sieve_matches_enumerator() {
    for d in all_dims(12) {
        let u = MatrixUniverse::new(d).unwrap();
        let report = enumerate_classes(d).unwrap();
        let expect: Vec<MatrixCode> = report.records.into_iter().map(|r| r.representative).collect();
        for mode in [ClosureMode::Layered, ClosureMode::Fixpoint] {
            let out = run_sieve(&u, mode).unwrap();
            assert_eq!(out.representatives, expect, "{d} {mode:?}");
            assert_eq!(out.class_count + out.crossed_count, u.cardinality());
        }
    }
}

#[test]
fn closure_modes_coincide_on_matrices() {
    for d in all_dims(9).filter(|d| d.rows() <= 3 && d.cols() <= 3) {
        let u = MatrixUniverse::new(d).unwrap();
        let mut x = u.first();
        while let Some(code) = x {
            let layered = layered_closure(&u, &code);
            let fix = fixpoint_closure(&u, &code);
            assert_eq!(layered.len(), fix.len(), "{d} {code}");
            assert!(layered.members().all(|m| fix.contains(m)));
            let orbit = orbit_of(&code, d).unwrap();
            assert_eq!(orbit.len(), layered.len());
            assert!(orbit.iter().all(|m| layered.contains(m)));
            x = u.successor(&code);
        }
    }
}

#[test]
fn representatives_are_closure_minima() {
    let d = Dims::new(3, 4).unwrap();
    let u = MatrixUniverse::new(d).unwrap();
    let out = run_sieve(&u, ClosureMode::Layered).unwrap();
    for rep in &out.representatives {
        let closure = layered_closure(&u, rep);
        let pos = u.position(rep);
        assert!(closure.members().all(|m| u.position(m) >= pos));
    }

    let u = eratosthenes(2000).unwrap();
    let out = run_sieve(&u, ClosureMode::Layered).unwrap();
    for p in &out.representatives {
        assert!(layered_closure(&u, p).members().all(|m| m >= p));
    }
}

#[test]
fn eratosthenes_matches_trial_division() {
    for limit in (2..=3000).chain([9973, 9999, 10_000]) {
        assert_eq!(
            primes_by_sieve(limit).unwrap(),
            trial_division_primes(limit).unwrap(),
            "limit {limit}"
        );
    }
    assert_eq!(primes_by_sieve(1000).unwrap().len(), 168);
}

#[test]
fn board_coordinates_stay_small() {
    for d in all_dims(20) {
        let layout = BoardLayout::new(d).unwrap();
        let s = Enumerator::new(layout)
            .stream(|_| Ok::<_, std::convert::Infallible>(()))
            .unwrap();
        assert!(s.peak_coordinate <= layout.mu(), "{d}");
        assert!(layout.mu() < layout.total_bits(), "{d}");
        assert_eq!(s.crossed_count, layout.total_bits());
    }
}
