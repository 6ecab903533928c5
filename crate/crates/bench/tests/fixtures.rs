use supportminors::linearization::rank_check;
use supportminors::minrank::brute_force_solve;
use supportminors_bench::{planted, random, SHAPES};

#[test]
fn fixtures_are_generic_and_planted_ones_solvable() {
    for &(m, n, r, k) in &SHAPES {
        let inst = random(m, n, r, k);
        assert_eq!((inst.m(), inst.n(), inst.r(), inst.k()), (m, n, r, k));
        assert_eq!(rank_check(&inst, 1).unwrap().matches, Some(true));
    }
    let small = planted(7, 4, 4, 2, 3);
    assert!(!brute_force_solve(&small, 2, 1000).unwrap().is_empty());
}
