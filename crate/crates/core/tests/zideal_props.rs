use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use propcalc::scalar::rat;
use propcalc::symgroup::{central_idempotent, Cell, Tableau};
use propcalc::zideal::closure::ideal_closure;
use propcalc::zideal::{
    contract_symmetrizer, div1_check, div2_check, generate, normal_form, principal_ideal, IdealData,
};
use propcalc::{GAElt, Partition, Perm, PolyT, Rat};

fn small_poly(rng: &mut impl Rng, max_deg: usize) -> PolyT {
    let d = rng.gen_range(0..=max_deg);
    let mut coeffs: Vec<Rat> = (0..d).map(|_| rat(rng.gen_range(-3..=3), rng.gen_range(1..=2))).collect();
    coeffs.push(rat(1, 1));
    PolyT::new(coeffs)
}

fn random_ideal(rng: &mut impl Rng, side: usize) -> IdealData {
    let f = small_poly(rng, 3);
    let k = rng.gen_range(0..=3);
    let cells: Vec<Cell> = (0..k).map(|_| Cell::new(rng.gen_range(1..=side), rng.gen_range(1..=side))).collect();
    IdealData::new(f, cells).unwrap()
}

fn random_ga(rng: &mut impl Rng, n: usize, terms: usize) -> GAElt {
    let perms = Perm::all(n);
    let mut z = GAElt::zero(n);
    for _ in 0..terms {
        let s = perms[rng.gen_range(0..perms.len())].clone();
        let c = small_poly(rng, 2).scale(&rat(rng.gen_range(-2..=2), 1));
        z = z + GAElt::term(s, c);
    }
    z
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn normal_form_round_trip(seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let i = random_ideal(&mut rng, 4);
        prop_assert_eq!(normal_form(&i.family(), 4).unwrap(), i.clone());
        let json = i.to_json();
        prop_assert_eq!(IdealData::from_json(&json).unwrap(), i);
    }

    #[test]
    fn families_of_ideals_are_compatible(seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let i = random_ideal(&mut rng, 3);
        prop_assert!(i.family().check_compatible(6).is_ok());
    }
}

#[test]
fn principal_families_are_compatible() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for n in 0..=4 {
        for lambda in Partition::all(n) {
            let h = small_poly(&mut rng, 2);
            principal_ideal(&lambda, &h).unwrap().check_compatible(6).unwrap();
        }
    }
}

#[test]
fn symmetrizer_contraction_for_all_small_tableaux() {
    let mut count = 0;
    for n in 1..=5 {
        for lambda in Partition::all(n) {
            for t in Tableau::all_standard(&lambda) {
                let (factor, _) = contract_symmetrizer(&t).unwrap();
                let cell = t.position(n).unwrap();
                assert_eq!(factor, PolyT::t_plus(cell.col as i64 - cell.row as i64));
                count += 1;
            }
        }
    }
    assert_eq!(count, 43);
}

#[test]
fn block_contraction_up_to_four() {
    for n in 1..=4 {
        for lambda in Partition::all(n) {
            let r = div2_check(&lambda).unwrap();
            assert!(r.holds(), "{r:?}");
        }
    }
}

#[test]
fn adding_a_strand_reaches_exactly_the_larger_blocks() {
    for n in 0..=4 {
        for lambda in Partition::all(n) {
            for t in Tableau::all_standard(&lambda) {
                assert!(div1_check(&t).unwrap(), "{t}");
            }
        }
    }
}

/// The generators `g_λ e_λ` for `|λ| ≤ 4`, closed by brute force.
fn closure_of(i: &IdealData) -> propcalc::zideal::closure::Closure {
    let mut gens = Vec::new();
    for n in 0..=4 {
        for lambda in Partition::all(n) {
            let e = GAElt::from_rational(&central_idempotent::<Rat>(&lambda));
            gens.push(e.scale(&i.g_lambda(&lambda).unwrap()));
        }
    }
    ideal_closure(&gens, 4).unwrap()
}

#[test]
fn membership_agrees_with_brute_force_closure() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..8 {
        let i = random_ideal(&mut rng, 4);
        let c = closure_of(&i);
        for n in 0..=3 {
            // everything the closure produced is a member
            for g in c.generators(n) {
                assert!(i.member_ga(&g).unwrap(), "{i}: {g}");
            }
            for _ in 0..6 {
                let z = random_ga(&mut rng, n, 3);
                assert_eq!(i.member_ga(&z).unwrap(), c.contains(&z), "{i}: {z}");
                // a combination of closure generators is a member
                let gens = c.generators(n);
                if !gens.is_empty() {
                    let mut w = GAElt::zero(n);
                    for g in &gens {
                        w = w + g.scale(&small_poly(&mut rng, 1));
                    }
                    assert!(i.member_ga(&w).unwrap());
                }
            }
        }
    }
}

#[test]
fn generated_ideals_agree_with_brute_force_closure() {
    let mut rng = ChaCha8Rng::seed_from_u64(29);
    for _ in 0..10 {
        let n = rng.gen_range(0..=2);
        let z = random_ga(&mut rng, n, 2);
        if z.is_zero() {
            continue;
        }
        let family = generate(&[z.clone()], 6).unwrap();
        let ideal = normal_form(&family, 4).unwrap();
        let c = ideal_closure(&[z], 4).unwrap();
        for m in 0..=3 {
            for g in c.generators(m) {
                assert!(ideal.member_ga(&g).unwrap());
            }
            for lambda in Partition::all(m) {
                let e = GAElt::from_rational(&central_idempotent::<Rat>(&lambda));
                let probe = e.scale(&family.g(&lambda));
                assert!(c.contains(&probe), "{ideal} at {lambda}");
            }
        }
    }
}
