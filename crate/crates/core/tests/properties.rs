mod common;

use common::*;
use galois_cover::arith::euler_phi;
use galois_cover::cover::{CharRef, CoverSpec, GroupData};
use galois_cover::differentials::{admissible, omega_divisor, IrrepClassData};
use galois_cover::divisor::{h_chi_divisor, normalize, InvariantDivisor, RawDivisor};
use galois_cover::jacobian::{analytic_multiplicity, cyclic_quotient_dims, decompose, rational_multiplicity};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn cover_from(seed: u64) -> (CoverSpec, ChaCha8Rng) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let c = random_cover(&mut rng, 36, 8);
    (c, rng)
}

fn with_base_genus(cover: &CoverSpec, genus: u64) -> CoverSpec {
    let g = cover.abelian_group().unwrap().clone();
    CoverSpec::new(genus, GroupData::Abelian(g), cover.branch_points().to_vec()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn genus_is_sum_over_nontrivial_characters(seed in any::<u64>()) {
        let (c, _) = cover_from(seed);
        let sum: i64 = characters(&c).iter().skip(1).map(|chi| c.t_chi(&char_ref(chi)).unwrap() - 1).sum();
        prop_assert_eq!(sum, c.genus().unwrap() as i64);
    }

    #[test]
    fn riemann_roch(seed in any::<u64>()) {
        let (c, mut rng) = cover_from(seed);
        let g = c.genus().unwrap() as i64;
        let orders: Vec<u64> = c.branch_points().iter().map(|bp| c.class_order(&bp.class).unwrap()).collect();
        for _ in 0..8 {
            let exps: Vec<u64> = orders.iter().map(|&o| rng.gen_range(0..o)).collect();
            let d = InvariantDivisor::from_exponents(&c, &exps, rng.gen_range(-4..5)).unwrap();
            let lhs = d.r_total().unwrap() as i64 - d.i_total().unwrap() as i64;
            prop_assert_eq!(lhs, d.degree() + 1 - g);
        }
    }

    #[test]
    fn normalization_keeps_degree_and_spaces(seed in any::<u64>()) {
        let (c, mut rng) = cover_from(seed);
        let branch: Vec<i64> = c.branch_points().iter().map(|_| rng.gen_range(-9..10)).collect();
        let nu = rng.gen_range(-3..4);
        let raw = RawDivisor::uniform(&c, &branch, nu);
        let (d, _) = normalize(&c, &raw).unwrap();
        let n = c.group_order() as i64;
        let raw_degree: i64 = c
            .branch_points()
            .iter()
            .zip(&branch)
            .map(|(bp, &e)| n / c.class_order(&bp.class).unwrap() as i64 * e)
            .sum::<i64>()
            + n * nu;
        prop_assert_eq!(d.degree(), raw_degree);
        for chi in characters(&c) {
            prop_assert_eq!(d.r_chi(&char_ref(&chi)).unwrap(), oracle_functions_raw(&c, chi.exponents(), &branch, nu));
        }
    }

    #[test]
    fn eigenfunction_and_differential_degrees(seed in any::<u64>()) {
        let (c, _) = cover_from(seed);
        let g = c.genus().unwrap() as i64;
        for chi in characters(&c) {
            let chi = char_ref(&chi);
            prop_assert_eq!(h_chi_divisor(&c, &chi).unwrap().degree(&c), 0);
            for q in -2..=4 {
                prop_assert_eq!(omega_divisor(&c, &chi, q).unwrap().degree(&c), q * (2 * g - 2));
            }
        }
    }

    #[test]
    fn orbits_partition_characters(seed in any::<u64>()) {
        let (c, _) = cover_from(seed);
        let g = c.abelian_group().unwrap();
        let orbits = g.rational_character_orbits();
        prop_assert_eq!(orbits.iter().map(|o| o.members.len() as u64).sum::<u64>(), g.order());
        for o in &orbits {
            prop_assert_eq!(o.members.len() as u64, euler_phi(o.order));
        }
        if !g.is_cyclic() {
            prop_assert!(orbits.iter().all(|o| o.order != g.order()));
        }
    }

    #[test]
    fn complexification(seed in any::<u64>()) {
        let (c, _) = cover_from(seed);
        let g = c.abelian_group().unwrap().clone();
        for chi in characters(&c) {
            let rho = IrrepClassData::from_character(&c, &char_ref(&chi)).unwrap();
            let bar = IrrepClassData::from_character(&c, &CharRef::Abelian(g.conjugate(&chi))).unwrap();
            prop_assert_eq!(
                rational_multiplicity(&c, &rho).unwrap(),
                analytic_multiplicity(&c, &rho).unwrap() + analytic_multiplicity(&c, &bar).unwrap()
            );
        }
    }

    #[test]
    fn decomposition_is_complete(seed in any::<u64>()) {
        let (c, _) = cover_from(seed);
        // decompose checks the sum of isotypical dimensions and both Prym forms.
        let report = decompose(&c).unwrap();
        for q in &report.quotients {
            let exceptional = q.quotient_genus == 1 && c.base_genus() == 1 && q.order > 1;
            prop_assert_eq!(q.nontrivial, q.quotient_genus >= 1 && !exceptional && (q.order > 1 || c.base_genus() >= 1));
        }
    }

    #[test]
    fn positive_dimensions_over_higher_genus_base(seed in any::<u64>(), base in 2u64..4) {
        let (c, _) = cover_from(seed);
        let c = with_base_genus(&c, base);
        let report = decompose(&c).unwrap();
        prop_assert!(report.rational_irreps.iter().all(|w| w.dim_a > 0));
        prop_assert_eq!(report.rational_irreps.iter().map(|w| w.dim_a).sum::<u64>(), c.genus().unwrap());
        prop_assert_eq!(
            cyclic_quotient_dims(&c).unwrap().iter().map(|q| q.dim).collect::<Vec<_>>(),
            report.quotients.iter().map(|q| q.dim).collect::<Vec<_>>()
        );
    }

    #[test]
    fn window_is_respected(seed in any::<u64>(), q in -3i64..6) {
        let (c, _) = cover_from(seed);
        let genus = c.genus().unwrap();
        let ok = galois_cover::differentials::total_dim_omega(&c, q, 0).is_ok();
        prop_assert_eq!(ok, admissible(genus, q));
    }
}
