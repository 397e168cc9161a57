use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use propcalc::diagram::{canonicalize, Atom, AtomKind, CanonMonomial, Molecule, Signature};
use propcalc::wprop::{enumerate_monomials, oracle, random_element, random_monomial};
use propcalc::{Perm, PropElt};

fn sig() -> Arc<Signature> {
    Arc::new(Signature::empty().with("A", 2, 1).unwrap().with("B", 1, 2).unwrap().with("L", 1, 1).unwrap())
}

fn random_perm(n: usize, rng: &mut impl Rng) -> Perm {
    let mut images: Vec<usize> = (0..n).collect();
    images.shuffle(rng);
    Perm::from_images(images).unwrap()
}

fn element(seed: u64, p: usize, q: usize) -> PropElt {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_element(&sig(), p, q, 3, 2, &mut rng)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn tensor_is_associative_and_unital(s1: u64, s2: u64, s3: u64) {
        let (a, b, c) = (element(s1, 1, 1), element(s2, 1, 0), element(s3, 0, 1));
        let unit = PropElt::unit(sig());
        prop_assert_eq!(a.tensor(&unit).unwrap(), a.clone());
        prop_assert_eq!(unit.tensor(&a).unwrap(), a.clone());
        prop_assert_eq!(
            a.tensor(&b).unwrap().tensor(&c).unwrap(),
            a.tensor(&b.tensor(&c).unwrap()).unwrap()
        );
    }

    #[test]
    fn tensor_and_contract_match_molecule_oracles(seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = sig();
        let a = random_monomial(&s, 2, 2, 2, 1, &mut rng).unwrap();
        let b = random_monomial(&s, 1, 1, 2, 1, &mut rng).unwrap();
        prop_assert_eq!(a.tensor(&b), oracle::tensor_via_molecules(&a, &b).unwrap());
        let i = rng.gen_range(1..=2);
        let j = rng.gen_range(1..=2);
        prop_assert_eq!(a.contract(i, j).unwrap(), oracle::contract_via_renaming(&a, i, j).unwrap());
    }

    #[test]
    fn disjoint_contractions_commute(seed: u64) {
        let a = element(seed, 2, 2);
        let first = a.contract(2, 2).unwrap().contract(1, 1).unwrap();
        let second = a.contract(1, 1).unwrap().contract(1, 1).unwrap();
        prop_assert_eq!(first, second);
    }

    #[test]
    fn act_matches_composition_oracle(seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = element(seed, 2, 3);
        let (s, t) = (random_perm(2, &mut rng), random_perm(3, &mut rng));
        prop_assert_eq!(a.act(&s, &t).unwrap(), oracle::act_via_composition(&a, &s, &t).unwrap());
    }

    #[test]
    fn act_is_a_group_action(seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = element(seed, 3, 2);
        let (s1, s2) = (random_perm(3, &mut rng), random_perm(3, &mut rng));
        let (t1, t2) = (random_perm(2, &mut rng), random_perm(2, &mut rng));
        let twice = a.act(&s2, &t2).unwrap().act(&s1, &t1).unwrap();
        let once = a.act(&s1.compose(&s2).unwrap(), &t1.compose(&t2).unwrap()).unwrap();
        prop_assert_eq!(twice, once);
        prop_assert_eq!(a.act(&Perm::identity(3), &Perm::identity(2)).unwrap(), a);
    }

    #[test]
    fn pairing_adjunction(seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = element(seed, 2, 3);
        let b = element(seed.wrapping_add(1), 3, 2);
        let (s, t) = (random_perm(2, &mut rng), random_perm(3, &mut rng));
        let lhs = a.act(&s, &t).unwrap().pairing(&b).unwrap();
        let rhs = a.pairing(&b.act(&t.inverse(), &s.inverse()).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn bridge_round_trip(seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let empty = Arc::new(Signature::empty());
        let z = random_element(&empty, 3, 3, 5, 0, &mut rng);
        let g = z.z_to_group_algebra().unwrap();
        prop_assert_eq!(PropElt::group_algebra_to_z(&g), z);
    }

    #[test]
    fn substitution_is_a_homomorphism(seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = sig();
        let psi: BTreeMap<String, PropElt> = s
            .iter()
            .map(|(name, (p, q))| (name.to_string(), random_element(&s, p, q, 2, 2, &mut rng)))
            .collect();
        let a = random_element(&s, 1, 2, 2, 1, &mut rng);
        let b = random_element(&s, 2, 1, 2, 1, &mut rng);
        let sub = |x: &PropElt| x.substitute(&psi, s.clone()).unwrap();
        prop_assert_eq!(sub(&a.tensor(&b).unwrap()), sub(&a).tensor(&sub(&b)).unwrap());
        prop_assert_eq!(sub(&a.contract(1, 2).unwrap()), sub(&a).contract(1, 2).unwrap());
        prop_assert_eq!(sub(&PropElt::identity(s.clone())), PropElt::identity(s.clone()));

        // composing substitutions generator-wise
        let phi: BTreeMap<String, PropElt> = s
            .iter()
            .map(|(name, (p, q))| (name.to_string(), random_element(&s, p, q, 2, 2, &mut rng)))
            .collect();
        let composed: BTreeMap<String, PropElt> =
            psi.iter().map(|(k, v)| (k.clone(), v.substitute(&phi, s.clone()).unwrap())).collect();
        prop_assert_eq!(
            sub(&a).substitute(&phi, s.clone()).unwrap(),
            a.substitute(&composed, s.clone()).unwrap()
        );
    }
}

#[test]
fn identity_substitution_changes_nothing() {
    let s = sig();
    let psi: BTreeMap<String, PropElt> =
        s.iter().map(|(name, _)| (name.to_string(), PropElt::generator(s.clone(), name).unwrap())).collect();
    for seed in 0..20 {
        let a = element(seed, 2, 1);
        assert_eq!(a.substitute(&psi, s.clone()).unwrap(), a);
    }
}

/// Absorbs identity atoms into neighbouring wires and counts loops. A
/// wire from a free input straight to a free output keeps its atom.
fn reduce(m: &Molecule) -> (Vec<Atom>, usize) {
    let mut atoms: Vec<Atom> = m.atoms().to_vec();
    let mut loops = 0;
    loop {
        let Some(k) = atoms.iter().position(|a| {
            a.is_id() && {
                let (x, y) = (&a.inputs[0], &a.outputs[0]);
                x == y || atoms.iter().any(|b| b.outputs.contains(x)) || atoms.iter().any(|b| b.inputs.contains(y))
            }
        }) else {
            break;
        };
        let a = atoms.remove(k);
        let (x, y) = (a.inputs[0].clone(), a.outputs[0].clone());
        if x == y {
            loops += 1;
            continue;
        }
        // whoever produced x now produces y, or whoever consumed y now consumes x
        if atoms.iter().any(|b| b.outputs.contains(&x)) {
            for b in &mut atoms {
                for o in &mut b.outputs {
                    if *o == x {
                        *o = y.clone();
                    }
                }
            }
        } else {
            for b in &mut atoms {
                for i in &mut b.inputs {
                    if *i == y {
                        *i = x.clone();
                    }
                }
            }
        }
    }
    (atoms, loops)
}

/// Brute-force equivalence: same free variables and some bijection of bound
/// variables turning one reduced atom multiset into the other.
fn equivalent(a: &Molecule, b: &Molecule) -> bool {
    let (ra, la) = reduce(a);
    let (rb, lb) = reduce(b);
    if la != lb || ra.len() != rb.len() {
        return false;
    }
    let ma = Molecule::new(ra.clone(), &sig()).unwrap();
    let mb = Molecule::new(rb.clone(), &sig()).unwrap();
    if ma.input_vars() != mb.input_vars() || ma.output_vars() != mb.output_vars() {
        return false;
    }
    let ba = ma.bound_vars();
    let bb = mb.bound_vars();
    if ba.len() != bb.len() {
        return false;
    }
    let key = |atoms: &[Atom]| {
        let mut v: Vec<String> = atoms.iter().map(ToString::to_string).collect();
        v.sort();
        v
    };
    let target = key(&rb);
    Perm::all(ba.len()).into_iter().any(|s| {
        let map: HashMap<&str, &str> =
            ba.iter().enumerate().map(|(i, v)| (v.as_str(), bb[s.apply(i)].as_str())).collect();
        let renamed = ma.rename(|v| map.get(v).map_or_else(|| v.to_string(), |w| w.to_string()));
        key(renamed.atoms()) == target
    })
}

/// Renames bound variables, shuffles atoms and splits a wire with an
/// identity atom.
fn scramble(m: &Molecule, rng: &mut impl Rng) -> Molecule {
    let bound = m.bound_vars();
    let mut names: Vec<String> = (0..bound.len()).map(|k| format!("w{k}")).collect();
    names.shuffle(rng);
    let map: HashMap<String, String> = bound.into_iter().zip(names).collect();
    let renamed = m.rename(|v| map.get(v).cloned().unwrap_or_else(|| v.to_string()));
    let mut atoms = renamed.atoms().to_vec();
    if let Some(k) = atoms.iter().position(|a| matches!(a.kind, AtomKind::Gen(_)) && !a.outputs.is_empty()) {
        let old = atoms[k].outputs[0].clone();
        atoms[k].outputs[0] = "split".into();
        atoms.push(Atom::id("split", &old));
    }
    atoms.shuffle(rng);
    Molecule::new(atoms, &sig()).unwrap()
}

#[test]
fn canonical_forms_are_complete_and_sound() {
    let s = sig();
    let bound = BTreeMap::from([("A".to_string(), 1), ("B".to_string(), 1), ("L".to_string(), 1)]);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (p, q) in [(1, 1), (2, 2), (0, 0), (1, 2)] {
        let ms: Vec<CanonMonomial> = enumerate_monomials(&s, p, q, &bound, 1_000_000).unwrap();
        let mols: Vec<(Molecule, Vec<String>, Vec<String>)> = ms.iter().map(CanonMonomial::to_molecule).collect();
        for (x, (mx, ix, ox)) in ms.iter().zip(&mols) {
            for _ in 0..3 {
                let scrambled = scramble(mx, &mut rng);
                assert_eq!(&canonicalize(&scrambled, ix, ox).unwrap(), x);
            }
        }
        // distinct canonical forms are inequivalent under the brute-force oracle
        for i in 0..mols.len() {
            for j in i + 1..mols.len() {
                assert!(!equivalent(&mols[i].0, &mols[j].0), "{} ~ {}", ms[i], ms[j]);
            }
        }
    }
}
