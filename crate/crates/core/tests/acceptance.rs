//! Acceptance suite: one pass/fail line per criterion.

mod common;

use std::collections::HashMap;
use std::time::{Duration, Instant};

use char2quad::artin_schreier::symbol;
use char2quad::factor::{monic_irreducibles, monic_polys, polys_below};
use char2quad::irreducible::{find_irreducible_in_class, phi, IrreducibleSearchSpec};
use char2quad::local::{hensel_lift, represents_ramified, QuadraticEquation};
use char2quad::place::reduce_mod;
use char2quad::quaternary::{
    bad_places, canonicalize, find_common_value, is_isotropic, normalize_coefficients, solve_quaternary, Canonical,
    CommonValueOutcome, QuaternaryForm, QuaternaryOutcome, SolveOptions,
};
use char2quad::quaternion::{construct_ramified, embed_subfield, quat_mul, ramified_places};
use char2quad::artin_schreier::{locally_represents, splits_locally, wp_solve_rational};
use char2quad::{FieldSpec, Place, Poly, RatFunc};
use common::{brute_force_zero_f2, locally_anisotropic_brute};
use num_traits::ToPrimitive;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn f2() -> FieldSpec {
    FieldSpec::binary()
}

fn p2(mask: u128) -> Poly {
    Poly::from_bits(f2(), mask)
}

fn r(mask: u128) -> RatFunc {
    RatFunc::from_poly(p2(mask))
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond { Ok(()) } else { Err(msg()) }
}

fn criterion_1() -> Outcome {
    let a = [r(0b111), r(0b10), r(1), r(1)];
    let form = QuaternaryForm::from_coefficients(&a).map_err(|e| e.to_string())?;
    let golden = [r(0b1101), r(0b10), r(0b10001), r(0b1000)];
    ensure(form.eval(&golden).is_zero(), || "published zero fails".into())?;
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let out = solve_quaternary(&form, &mut rng, SolveOptions::default()).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let QuaternaryOutcome::Isotropic { zero, .. } = out else { return Err("reported anisotropic".into()) };
    ensure(form.eval(&zero).is_zero() && zero.iter().any(|x| !x.is_zero()), || "zero fails".into())?;
    ensure(elapsed < Duration::from_secs(10), || format!("took {elapsed:?}"))?;
    Ok(format!("zero ({}, {}, {}, {}) in {elapsed:.2?}", zero[0], zero[1], zero[2], zero[3]))
}

fn random_regular_at(rng: &mut ChaCha8Rng, f: &Poly, n: usize) -> RatFunc {
    loop {
        let den = Poly::random_monic(f2(), rng.next_u32() as usize % 3, rng);
        if den.gcd(f).is_one() {
            return RatFunc::new(Poly::random(f2(), n, rng), den);
        }
    }
}

fn criterion_2() -> Outcome {
    let pl = Place::finite(&p2(0b111)).unwrap();
    ensure(symbol(&r(0b10), &pl) == Ok(1), || "[t, t^2+t+1) != 1".into())?;
    ensure(symbol(&r(1), &pl) == Ok(0), || "[1, t^2+t+1) != 0".into())?;
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let places: Vec<Poly> = (1..=4).flat_map(|d| monic_irreducibles(f2(), d)).collect();
    let mut failures = 0;
    for _ in 0..1000 {
        let f = &places[rng.next_u32() as usize % places.len()];
        let pl = Place::Finite(f.clone());
        let a = random_regular_at(&mut rng, f, 6);
        let b = random_regular_at(&mut rng, f, 6);
        let lhs = symbol(&(&a + &b), &pl).unwrap();
        let rhs = symbol(&a, &pl).unwrap() ^ symbol(&b, &pl).unwrap();
        failures += (lhs != rhs) as u32;
    }
    ensure(failures == 0, || format!("{failures} additivity failures"))?;
    Ok("goldens exact; additivity 1000/1000".into())
}

fn random_gram(rng: &mut ChaCha8Rng) -> QuaternaryForm {
    QuaternaryForm::new(std::array::from_fn(|i| {
        std::array::from_fn(|j| if i <= j { RatFunc::from_poly(Poly::random(f2(), 4, rng)) } else { RatFunc::zero(f2()) })
    }))
    .unwrap()
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (mut forms, mut iso, mut aniso, mut brute_hits) = (0, 0, 0, 0);
    while forms < 200 {
        let form = random_gram(&mut rng);
        if matches!(canonicalize(&form), Canonical::Degenerate { .. }) {
            continue;
        }
        forms += 1;
        let verdict = is_isotropic(&form).map_err(|e| e.to_string())?;
        let brute = brute_force_zero_f2(&form, 4);
        brute_hits += brute.is_some() as u32;
        match verdict {
            Ok(()) => iso += 1,
            Err(cert) => {
                aniso += 1;
                ensure(brute.is_none(), || format!("anisotropic verdict but brute force found {brute:?}"))?;
                ensure(cert.verify(), || "certificate does not verify".into())?;
                let checked = locally_anisotropic_brute(&cert.coefficients, &cert.place);
                ensure(checked == Some(true), || format!("local checker at {}: {checked:?}", cert.place))?;
            }
        }
    }
    Ok(format!(
        "{forms} forms: {iso} isotropic ({brute_hits} with a brute-force zero), {aniso} anisotropic with confirmed certificates"
    ))
}

fn criterion_4() -> Outcome {
    let (mut cases, mut solvable) = (0, 0);
    for fm in [0b10u128, 0b11, 0b111] {
        let f = p2(fm);
        let pl = Place::Finite(f.clone());
        for rr in 0..=1u32 {
            for b in polys_below(f2(), 3).filter(|b| !b.rem(&f).is_zero()) {
                for c in polys_below(f2(), 3).filter(|c| !c.is_zero() && !c.rem(&f.square()).is_zero()) {
                    let (br, cr) = (RatFunc::from_poly(b.clone()), RatFunc::from_poly(c.clone()));
                    cases += 1;
                    let w = represents_ramified(&br, &cr, &pl, rr).map_err(|e| e.to_string())?;
                    let Some(w) = w else { continue };
                    solvable += 1;
                    let eq = QuadraticEquation::ramified(&br, &cr, &f, rr);
                    let target = 4 * rr + 13;
                    let up = hensel_lift(&w, &eq, target)
                        .map_err(|e| format!("b={b} c={c} f={f} r={rr}: lift failed ({e})"))?;
                    let v = eq.eval(&RatFunc::from_poly(up.u0), &RatFunc::from_poly(up.v0));
                    ensure(reduce_mod(&v, &f.pow(target as u64)).unwrap().is_zero(), || "lift residual".into())?;
                }
            }
        }
    }
    Ok(format!("{cases} cases, {solvable} solvable mod f^(4r+3), all lift to f^(4r+13)"))
}

fn criterion_5() -> Outcome {
    let mut irr: HashMap<usize, Vec<Poly>> = HashMap::new();
    for n in 1..=10 {
        irr.insert(n, monic_irreducibles(f2(), n).collect());
    }
    let mut checks = 0;
    for md in 1..=3 {
        for m in monic_polys(f2(), md) {
            let big_m = md as f64;
            let ph = phi(&m).to_f64().unwrap();
            for a in polys_below(f2(), md).filter(|a| a.gcd(&m).is_one()) {
                for n in 1..=10usize {
                    let s = irr[&n].iter().filter(|h| h.rem(&m) == a).count() as f64;
                    let nn = n as f64;
                    let dev = (s - 2f64.powi(n as i32) / (ph * nn)).abs();
                    let bound = (big_m + 1.0) * 2f64.powf(nn / 2.0) / nn;
                    checks += 1;
                    ensure(dev <= bound, || format!("m={m} a={a} N={n}: S={s} dev={dev} bound={bound}"))?;
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..1000 {
        let m = Poly::random_monic(f2(), rng.next_u32() as usize % 4, &mut rng);
        let a = loop {
            let a = Poly::random(f2(), m.deg(), &mut rng);
            if a.gcd(&m).is_one() {
                break a;
            }
        };
        let top_len = rng.next_u32() % 3;
        let top = if top_len == 0 {
            Poly::zero(f2())
        } else {
            &Poly::one(f2()) + &Poly::random(f2(), top_len as usize, &mut rng).shift(1).truncate(top_len as usize)
        };
        let parity = match rng.next_u32() % 3 {
            0 => None,
            p => Some((p - 1) as u8),
        };
        let spec = IrreducibleSearchSpec { residue: a, modulus: m, parity, top, top_len, min_degree: 1, start_degree: None };
        let h = find_irreducible_in_class(&spec, &mut rng).map_err(|e| format!("{spec:?}: {e}"))?;
        ensure(h.rem(&spec.modulus) == spec.residue.rem(&spec.modulus), || "wrong class".into())?;
    }
    Ok(format!("{checks} class counts within the bound; 1000 random specs found"))
}

fn criterion_6() -> Outcome {
    let mut pool: Vec<Place> = (1..=2).flat_map(|d| monic_irreducibles(f2(), d)).map(Place::Finite).collect();
    pool.push(Place::Infinite);
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut subsets = 0;
    for mask in 0u32..(1 << pool.len()) {
        let s: Vec<Place> = pool.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, p)| p.clone()).collect();
        if s.len() % 2 == 1 || s.len() > 4 {
            continue;
        }
        subsets += 1;
        let alg = construct_ramified(&s, f2(), &mut rng).map_err(|e| e.to_string())?;
        let mut want = s.clone();
        want.sort();
        ensure(ramified_places(&alg) == want, || format!("S = {s:?}"))?;
    }
    for _ in 0..200 {
        let a = RatFunc::new(Poly::random(f2(), 4, &mut rng), Poly::random_monic(f2(), rng.next_u32() as usize % 3, &mut rng));
        let b = loop {
            let b = RatFunc::new(Poly::random(f2(), 4, &mut rng), Poly::random_monic(f2(), rng.next_u32() as usize % 3, &mut rng));
            if !b.is_zero() {
                break b;
            }
        };
        let alg = char2quad::quaternion::QuaternionAlgebra::new(a, b).unwrap();
        ensure(ramified_places(&alg).len() % 2 == 0, || format!("odd ramification for {alg:?}"))?;
    }
    Ok(format!("{subsets} subsets round-trip; parity even on 200 random algebras"))
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let alg = char2quad::quaternion::QuaternionAlgebra::new(r(0b111), r(0b10)).unwrap();
    let u = embed_subfield(&alg, &r(0b111), &mut rng, SolveOptions::default()).map_err(|e| e.to_string())?;
    ensure(u == alg.i(), || format!("c = a gave {u:?}"))?;
    let pool: Vec<Place> = (1..=2).flat_map(|d| monic_irreducibles(f2(), d)).map(Place::Finite).collect();
    let mut done = 0;
    let start = Instant::now();
    while done < 50 {
        let mut s = vec![pool[rng.next_u32() as usize % pool.len()].clone()];
        let other = pool[rng.next_u32() as usize % pool.len()].clone();
        s.push(if s.contains(&other) { Place::Infinite } else { other });
        let alg = construct_ramified(&s, f2(), &mut rng).map_err(|e| e.to_string())?;
        let c = RatFunc::from_poly(Poly::random(f2(), 5, &mut rng));
        if s.iter().any(|p| splits_locally(&c, p)) || wp_solve_rational(&c).is_some() {
            continue;
        }
        let u = embed_subfield(&alg, &c, &mut rng, SolveOptions::default()).map_err(|e| format!("{alg:?} c={c}: {e}"))?;
        let sq = quat_mul(&u, &u).unwrap();
        ensure(sq.add(&u).unwrap() == alg.scalar(c.clone()), || "u^2 + u != c".into())?;
        done += 1;
    }
    Ok(format!("c = a gives i; 50 division-algebra instances embedded in {:.2?}", start.elapsed()))
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let (mut times, mut skipped) = (Vec::new(), 0);
    let start = Instant::now();
    while times.len() < 3 {
        let a: [RatFunc; 4] = std::array::from_fn(|i| {
            let p = if i % 2 == 0 { Poly::random_monic(f2(), 80, &mut rng) } else { Poly::random(f2(), 81, &mut rng) };
            RatFunc::from_poly(p)
        });
        let t0 = Instant::now();
        let nf = normalize_coefficients(&a).map_err(|e| e.to_string())?;
        let cv = match find_common_value(&nf.coefficients, &mut rng).map_err(|e| e.to_string())? {
            CommonValueOutcome::Found(cv) => cv,
            CommonValueOutcome::Anisotropic(cert) => {
                ensure(cert.verify(), || "bad certificate".into())?;
                skipped += 1;
                continue;
            }
        };
        times.push(t0.elapsed());
        let b = &nf.coefficients;
        let c = RatFunc::from_poly(cv.c.clone());
        ensure(cv.c == &cv.forced * &cv.h, || "c != F·h".into())?;
        for p in bad_places(b) {
            ensure(locally_represents(&b[0], &b[1], &c, &p) && locally_represents(&b[2], &b[3], &c, &p), || {
                format!("c = {} not represented by both halves at {p}", cv.c)
            })?;
        }
    }
    let total = start.elapsed();
    ensure(times.iter().all(|t| *t < Duration::from_secs(60)), || format!("times {times:?}"))?;
    Ok(format!(
        "3 locally isotropic degree-80 instances ({skipped} anisotropic draws skipped); common values in {times:.2?}, total {total:.2?}"
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("1 worked example zero", criterion_1),
        ("2 symbol goldens and additivity", criterion_2),
        ("3 oracle equivalence on random forms", criterion_3),
        ("4 ramified precision law", criterion_4),
        ("5 irreducibles in progressions", criterion_5),
        ("6 prescribed ramification round-trip", criterion_6),
        ("7 quadratic subfield embedding", criterion_7),
        ("8 common value at degree 80", criterion_8),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS  criterion {name} [{secs:.2}s]: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  criterion {name} [{secs:.2}s]: {why}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
