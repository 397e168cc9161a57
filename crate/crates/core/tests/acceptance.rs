//! One line per acceptance criterion, all in exact arithmetic.
//!
//! The report goes to stderr and is shown by a plain `cargo test`.

use std::collections::BTreeMap;
use std::io::Write;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use propcalc::diagram::Signature;
use propcalc::poly::falling_factorial;
use propcalc::scalar::{int, rat};
use propcalc::symgroup::{central_idempotent, young_symmetrizer, Cell};
use propcalc::teval::{
    check_cayley_hamilton, check_lie, nonabelian2, relation_kernel, sl2, so3, KernelSpec, Representation,
};
use propcalc::wprop::random_element;
use propcalc::zideal::closure::ideal_closure;
use propcalc::zideal::{contract_symmetrizer, contract_via_diagrams, div2_check, normal_form, Classification};
use propcalc::{GAElt, IdealData, Partition, Perm, PolyT, PropElt, Rat, RatTensor, Tableau};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn random_perm(n: usize, rng: &mut impl Rng) -> Perm {
    let mut images: Vec<usize> = (0..n).collect();
    images.shuffle(rng);
    Perm::from_images(images).unwrap()
}

fn small_poly(rng: &mut impl Rng, max_deg: usize) -> PolyT {
    let d = rng.gen_range(0..=max_deg);
    let mut coeffs: Vec<Rat> = (0..d).map(|_| rat(rng.gen_range(-3..=3), rng.gen_range(1..=2))).collect();
    coeffs.push(int(1));
    PolyT::new(coeffs)
}

fn worked_contraction() -> Outcome {
    let t = Tableau::new(vec![vec![1, 2], vec![3]]).unwrap();
    let y = GAElt::from_rational(&young_symmetrizer::<Rat>(&t));
    let got = contract_via_diagrams(&y).unwrap();
    let tm1 = PolyT::t_plus(-1);
    let want = GAElt::term(Perm::identity(2), tm1.clone()) + GAElt::term(Perm::transposition(2, 1, 2), tm1);
    outcome(got == want, format!("∂ y = {got}"))
}

fn all_small_symmetrizers() -> Outcome {
    let mut count = 0;
    let mut bad = Vec::new();
    for n in 1..=5 {
        for lambda in Partition::all(n) {
            for t in Tableau::all_standard(&lambda) {
                count += 1;
                let cell = t.position(n).unwrap();
                match contract_symmetrizer(&t) {
                    Ok((f, _)) if f == PolyT::t_plus(cell.diagonal()) => {}
                    _ => bad.push(t.to_string()),
                }
            }
        }
    }
    let pass = bad.is_empty() && count == 43;
    outcome(pass, format!("{count} standard tableaux with n ≤ 5; failures {bad:?}"))
}

fn block_contraction() -> Outcome {
    let mut checked = 0;
    for n in 1..=4 {
        for lambda in Partition::all(n) {
            if !div2_check(&lambda).unwrap().holds() {
                return outcome(false, format!("fails at {lambda}"));
            }
            checked += 1;
        }
    }
    outcome(true, format!("{checked} partitions"))
}

fn random_ga(rng: &mut impl Rng, n: usize) -> GAElt {
    let perms = Perm::all(n);
    let mut z = GAElt::zero(n);
    for _ in 0..3 {
        let s = perms[rng.gen_range(0..perms.len())].clone();
        z = z + GAElt::term(s, small_poly(rng, 2).scale(&int(rng.gen_range(-2..=2))));
    }
    z
}

fn ideal_round_trip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut membership_checks = 0;
    for _ in 0..50 {
        let f = small_poly(&mut rng, 3);
        let k = rng.gen_range(0..=3);
        let cells: Vec<Cell> = (0..k).map(|_| Cell::new(rng.gen_range(1..=4), rng.gen_range(1..=4))).collect();
        let ideal = IdealData::new(f, cells).unwrap();
        if normal_form(&ideal.family(), 4).ok().as_ref() != Some(&ideal) {
            return outcome(false, format!("normal form of {ideal}"));
        }
        let mut gens = Vec::new();
        for n in 0..=4 {
            for lambda in Partition::all(n) {
                let e = GAElt::from_rational(&central_idempotent::<Rat>(&lambda));
                gens.push(e.scale(&ideal.g_lambda(&lambda).unwrap()));
            }
        }
        let closure = ideal_closure(&gens, 4).unwrap();
        for n in 0..=3 {
            for _ in 0..3 {
                let mut z = random_ga(&mut rng, n);
                // half of the probes are members by construction
                if rng.gen_bool(0.5) {
                    for g in closure.generators(n) {
                        z = z + g.scale(&small_poly(&mut rng, 1));
                    }
                }
                membership_checks += 1;
                if ideal.member_ga(&z).unwrap() != closure.contains(&z) {
                    return outcome(false, format!("membership of {z} in {ideal}"));
                }
            }
        }
    }
    outcome(true, format!("50 ideals, {membership_checks} membership probes"))
}

fn prime_maximal_table() -> Outcome {
    use Classification::*;
    let mut rows: Vec<(IdealData, Classification)> = Vec::new();
    for a in [int(-3), int(0), int(2), rat(1, 2), rat(-5, 3), rat(7, 2)] {
        let f = PolyT::new(vec![-a.clone(), int(1)]);
        let want = if a.is_integer() { PrimeNotMaximal } else { Maximal };
        rows.push((IdealData::new(f, []).unwrap(), want));
    }
    for (i, j) in [(1, 1), (2, 2), (1, 3), (4, 2)] {
        rows.push((IdealData::new(PolyT::constant(int(1)), [Cell::new(i, j)]).unwrap(), Maximal));
    }
    for f in ["t^2 - 1", "t^2 + 1", "t^2", "t^3 - 4t"] {
        rows.push((IdealData::new(PolyT::parse(f).unwrap(), []).unwrap(), NotPrime));
    }
    rows.push((IdealData::zero(), PrimeNotMaximal));
    let wrong: Vec<String> =
        rows.iter().filter(|(i, c)| i.classify() != *c).map(|(i, c)| format!("{i} expected {c}")).collect();
    outcome(wrong.is_empty(), format!("{} ideals; mismatches {wrong:?}", rows.len()))
}

fn dimension_relations() -> Outcome {
    for n in 1..=3 {
        let rep = Representation::<Rat>::trivial(n);
        if !rep.eval(&PropElt::alt(n + 1)).unwrap().is_zero() || rep.eval(&PropElt::alt(n)).unwrap().is_zero() {
            return outcome(false, format!("alternating sums in dimension {n}"));
        }
        if rep.eval(&PropElt::loop_(rep.sig().clone())).unwrap().as_scalar().unwrap() != int(n as i64) {
            return outcome(false, format!("loop in dimension {n}"));
        }
    }
    for d in 0..=4 {
        let alt = PropElt::alt(d + 1);
        let id = PropElt::perm(alt.sig().clone(), &Perm::identity(d + 1));
        if alt.pairing(&id).unwrap().to_poly().unwrap() != falling_factorial(d) {
            return outcome(false, format!("pairing at d = {d}"));
        }
    }
    outcome(true, "alt(n+1) ↦ 0, alt(n) ↦ nonzero, loop ↦ n, falling factorials for d ≤ 4")
}

fn lie_suite() -> Outcome {
    let sl = check_lie(&sl2()).unwrap();
    let so = check_lie(&so3()).unwrap();
    let nab = check_lie(&nonabelian2()).unwrap();
    let killing_values = sl.killing[1][1] == int(8) && sl.killing[0][2] == int(4);
    let pass = sl.is_semisimple() && so.is_semisimple() && killing_values && nab.jacobi && !nab.nondegenerate;
    outcome(pass, "sl2 and so3 pass all five identities; the 2-dimensional nonabelian algebra is degenerate")
}

fn random_matrix(rng: &mut impl Rng, n: usize) -> RatTensor {
    let m: Vec<Vec<Rat>> =
        (0..n).map(|_| (0..n).map(|_| rat(rng.gen_range(-9..=9), rng.gen_range(1..=4))).collect()).collect();
    RatTensor::from_matrix(&m)
}

fn cayley_hamilton() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let twos = (0..20).all(|_| check_cayley_hamilton(2, &random_matrix(&mut rng, 2)).unwrap());
    let threes = (0..10).all(|_| !check_cayley_hamilton(2, &random_matrix(&mut rng, 3)).unwrap());
    outcome(twos && threes, format!("20 random 2×2 vanish: {twos}; 10 random 3×3 survive: {threes}"))
}

fn kernel_embedding() -> Outcome {
    let empty = Arc::new(Signature::empty());
    for p in 1..=3 {
        for n in p..=p + 1 {
            if !relation_kernel(&empty, &KernelSpec::new(p, p, n)).unwrap().basis.is_empty() {
                return outcome(false, format!("nonzero kernel at p = {p}, n = {n}"));
            }
        }
    }
    for n in 1..=2 {
        let k = relation_kernel(&empty, &KernelSpec::new(n + 1, n + 1, n)).unwrap();
        let alt = PropElt::alt(n + 1);
        for s in Perm::all(n + 1) {
            for t in Perm::all(n + 1) {
                if !k.contains(&alt.act(&s, &t).unwrap()) {
                    return outcome(false, format!("orbit of alt({}) at n = {n}", n + 1));
                }
            }
        }
    }
    outcome(true, "zero kernels for p ≤ 3 ≤ n; full orbits of alt(n+1) for n ≤ 2")
}

fn eval_homomorphism() -> Outcome {
    let sig = Arc::new(Signature::empty().with("A", 2, 1).unwrap().with("M", 1, 1).unwrap());
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut checks = 0;
    for round in 0..50 {
        let rep = Representation::random(sig.clone(), 2, &mut rng);
        let a = random_element(&sig, 2, 1, 2, 1, &mut rng);
        let b = random_element(&sig, 1, 2, 2, 1, &mut rng);
        let (ea, eb) = (rep.eval(&a).unwrap(), rep.eval(&b).unwrap());
        let tensor_ok = rep.eval(&a.tensor(&b).unwrap()).unwrap() == ea.tensor(&eb).unwrap();
        let i = rng.gen_range(1..=2);
        let contract_ok = rep.eval(&a.contract(i, 1).unwrap()).unwrap() == ea.contract(i, 1).unwrap();
        let (s, t) = (random_perm(2, &mut rng), Perm::identity(1));
        let act_ok = rep.eval(&a.act(&s, &t).unwrap()).unwrap() == ea.act(&s, &t).unwrap();
        let psi: BTreeMap<String, PropElt> =
            sig.iter().map(|(n, (p, q))| (n.to_string(), random_element(&sig, p, q, 2, 1, &mut rng))).collect();
        let pulled: BTreeMap<String, RatTensor> = psi.iter().map(|(n, x)| (n.clone(), rep.eval(x).unwrap())).collect();
        let rep2 = Representation::new(sig.clone(), 2, pulled).unwrap();
        let sub_ok = rep.eval(&a.substitute(&psi, sig.clone()).unwrap()).unwrap() == rep2.eval(&a).unwrap();
        checks += 4;
        if !(tensor_ok && contract_ok && act_ok && sub_ok) {
            return outcome(false, format!("round {round}: ⊗ {tensor_ok}, ∂ {contract_ok}, act {act_ok}, subst {sub_ok}"));
        }
    }
    outcome(true, format!("{checks} checks of ⊗, ∂, act and substitution in dimension 2"))
}

type Criterion = (&'static str, Duration, fn() -> Outcome);

#[test]
fn acceptance() {
    let criteria: [Criterion; 10] = [
        ("worked symmetrizer contraction", Duration::from_secs(1), worked_contraction),
        ("symmetrizer contractions up to n = 5", Duration::from_secs(30), all_small_symmetrizers),
        ("block contraction", Duration::from_secs(60), block_contraction),
        ("ideal normal form round trip", Duration::from_secs(120), ideal_round_trip),
        ("prime and maximal ideals", Duration::from_secs(1), prime_maximal_table),
        ("relations in dimension n", Duration::from_secs(60), dimension_relations),
        ("Lie diagram suite", Duration::from_secs(10), lie_suite),
        ("Cayley-Hamilton via Alt", Duration::from_secs(10), cayley_hamilton),
        ("relation kernels", Duration::from_secs(120), kernel_embedding),
        ("eval is a homomorphism", Duration::from_secs(60), eval_homomorphism),
    ];
    let mut failed = Vec::new();
    for (k, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        let took = start.elapsed();
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        let over = if took > *budget { format!(" (over the {budget:?} budget)") } else { String::new() };
        // straight to the handle so the report shows without --nocapture
        let _ = writeln!(std::io::stderr(), "criterion {:>2} {verdict}: {name} [{took:.2?}{over}] {}", k + 1, o.detail);
        if !o.pass {
            failed.push(k + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
