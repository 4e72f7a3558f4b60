//! One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use num_rational::BigRational;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{fixture, fixture_file, lemma_instance, permuted, polys, q, random_poly, random_spec, spec_fixture_names, LemmaShape};
use scrollstci::io::LoadedSpec;
use scrollstci::lattice::{lattice_ideal, LatticeBasis};
use scrollstci::linjoin::{ara_upper_bound, cohom_dim, projdim, validate};
use scrollstci::scroll::{ara_bound_generic, classify_modulo, replay, Case, ScrollBlock};
use scrollstci::synth::{synthesize, verify_generator_list};
use scrollstci::{IdealHandle, Polynomial, Ring, TermOrder};

type Outcome = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn err(e: scrollstci::Error) -> String {
    e.to_string()
}

fn reference(l: &LoadedSpec) -> Result<Vec<Polynomial>, String> {
    l.reference_generators.clone().ok_or_else(|| "fixture lacks reference generators".into())
}

fn as_set(gens: &[Polynomial]) -> BTreeSet<String> {
    gens.iter().map(ToString::to_string).collect()
}

fn verdi() -> Outcome {
    for c in 1..=3usize {
        let names: Vec<String> = (0..c + 2).map(|i| format!("x{i}")).collect();
        let names: Vec<&str> = names.iter().map(String::as_str).collect();
        let ring = Ring::rationals(&names);
        let block = ScrollBlock::parse(&ring, &names).map_err(err)?;
        let minors = IdealHandle::new(&ring, block.minors()).map_err(err)?;
        let f = block.verdi_generators().map_err(err)?;
        ensure!(f.len() == c, "c={c}: {} generators", f.len());
        for g in &f {
            ensure!(minors.contains(g).map_err(err)?, "c={c}: {g} not in the minors");
        }
        let rad = IdealHandle::new(&ring, f).map_err(err)?.radical_equal(&minors).map_err(err)?;
        ensure!(rad, "c={c}: radicals differ");
    }
    Ok(())
}

fn first_example() -> Outcome {
    let l = fixture("example-first");
    let pd = projdim(&l.spec).map_err(err)?;
    ensure!(pd == 6, "projdim {pd}");
    let full = l.spec.full_ideal().map_err(err)?;
    let meet = l.spec.intersection().map_err(err)?;
    ensure!(
        full.groebner_basis(TermOrder::DegRevLex) == meet.groebner_basis(TermOrder::DegRevLex),
        "full ideal differs from the intersection"
    );
    let cert = synthesize(&l.spec).map_err(err)?;
    ensure!(cert.count() == 6, "{} generators", cert.count());
    ensure!(cert.verified == Some(true), "synthesized list not verified");
    ensure!(verify_generator_list(&reference(&l)?, &l.spec).map_err(err)?, "printed list not verified");
    Ok(())
}

fn second_example() -> Outcome {
    let l = fixture("example-second");
    let pd = projdim(&l.spec).map_err(err)?;
    ensure!(pd == 5, "projdim {pd}");
    let cert = synthesize(&l.spec).map_err(err)?;
    let printed = reference(&l)?;
    ensure!(as_set(&cert.generators) == as_set(&printed), "synthesized {:?}", as_set(&cert.generators));
    ensure!(cert.verified == Some(true), "synthesized list not verified");
    ensure!(verify_generator_list(&printed, &l.spec).map_err(err)?, "printed list not verified");
    Ok(())
}

fn qprime_example() -> Outcome {
    let l = fixture("example-qprime");
    let r = l.spec.ring();
    let pd = projdim(&l.spec).map_err(err)?;
    let cd = cohom_dim(&l.spec).map_err(err)?.cd;
    ensure!(pd == 3 && cd == 3, "projdim {pd}, cd {cd}");
    let gens = reference(&l)?;
    ensure!(verify_generator_list(&gens, &l.spec).map_err(err)?, "q' list not verified");
    let [q1p, q2p, q3p]: [Polynomial; 3] = gens.try_into().map_err(|_| "expected three q'")?;
    let [b, d, f, g, big_f, q1]: [Polynomial; 6] = polys(r, &["b", "d", "f", "g", "a*d - b*c", "a*(a*d - b*c) + b*e"])
        .try_into()
        .unwrap();
    let zero = IdealHandle::zero(r);
    let nf = |p: Polynomial| zero.normal_form(&p, TermOrder::DegRevLex).map(|p| p.is_zero()).map_err(err);
    ensure!(nf(&(&(&d * &q1p) - &(&b * &q3p)) - &q1.pow(2))?, "d*q'1 - b*q'3 != q1^2");
    let rhs = &big_f.pow(2) - &(&(&b * &f) * &g);
    ensure!(nf(&(&(&d * &q1) - &(&b * &q2p)) - &rhs)?, "d*q1 - b*q'2 != F^2 - bfg");
    let bound = ara_upper_bound(&l.spec).map_err(err)?.bound;
    ensure!(bound == 4, "ara bound {bound}");
    Ok(())
}

fn barile() -> Outcome {
    for n in 1..=3 {
        let pd = projdim(&fixture(&format!("barile-delta{n}")).spec).map_err(err)?;
        ensure!(pd == n + 1, "|delta|={n}: projdim {pd}");
    }
    Ok(())
}

fn eisenbud_evans() -> Outcome {
    for r in 2..=3usize {
        for alpha in 0..=2usize {
            let l = fixture(&format!("ee-r{r}-alpha{alpha}"));
            let pd = projdim(&l.spec).map_err(err)?;
            let want = l.spec.ring().arity() - alpha - 1;
            ensure!(pd == want, "r={r} alpha={alpha}: projdim {pd}, want {want}");
        }
    }
    Ok(())
}

fn generic_matrix() -> Outcome {
    for r in 2..=6 {
        let g = ara_bound_generic(r).map_err(err)?;
        ensure!(g.ara == 2 * r - 3 && g.projdim == r - 1, "r={r}: {g:?}");
    }
    Ok(())
}

fn lattice_bridge() -> Outcome {
    let ring = Ring::rationals(&["x1", "x2", "x3", "x4"]);
    let basis = LatticeBasis::parse("1,-2,1,0;0,1,-2,1").map_err(err)?;
    let lat = lattice_ideal(&ring, &basis).map_err(err)?;
    let block = ScrollBlock::parse(&ring, &["x1", "x2", "x3", "x4"]).map_err(err)?;
    let minors = IdealHandle::new(&ring, block.minors()).map_err(err)?;
    ensure!(
        lat.groebner_basis(TermOrder::DegRevLex) == minors.groebner_basis(TermOrder::DegRevLex),
        "lattice ideal differs from the minors"
    );
    let f = block.verdi_generators().map_err(err)?;
    ensure!(f.len() == 2, "{} Verdi generators", f.len());
    let rad = IdealHandle::new(&ring, f).map_err(err)?.radical_equal(&minors).map_err(err)?;
    ensure!(rad, "Verdi generators do not cut out the minors");
    Ok(())
}

fn oracle_consistency() -> Outcome {
    let r = Ring::rationals(&["x", "y", "z"]);
    for seed in 0..200u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ideal = |rng: &mut ChaCha8Rng| {
            let n = rng.gen_range(1..=3);
            IdealHandle::new(&r, (0..n).map(|_| random_poly(rng, &r, 2, 3))).unwrap()
        };
        let i = ideal(&mut rng);
        let j = ideal(&mut rng);
        let combo = i.generators().iter().fold(Polynomial::zero(&r), |acc, f| &acc + &(f * &random_poly(&mut rng, &r, 1, 2)));
        ensure!(i.contains(&combo).map_err(err)?, "seed {seed}: combination not a member");
        let meet = i.intersect(&j).map_err(err)?;
        ensure!(
            i.contains_ideal(&meet).map_err(err)? && j.contains_ideal(&meet).map_err(err)?,
            "seed {seed}: intersection not contained in both"
        );
        for a in i.generators() {
            for b in j.generators() {
                ensure!(meet.contains(&(a * b)).map_err(err)?, "seed {seed}: product outside intersection");
            }
        }
        let g = random_poly(&mut rng, &r, 2, 3);
        if !g.is_zero() {
            let h = random_poly(&mut rng, &r, 1, 2);
            let gi = IdealHandle::new(&r, i.generators().iter().cloned().chain([&g * &h])).map_err(err)?;
            let sat = gi.saturate(&g).map_err(err)?;
            ensure!(sat.contains_ideal(&gi).map_err(err)?, "seed {seed}: saturation lost generators");
            ensure!(sat.contains(&h).map_err(err)?, "seed {seed}: saturation misses h");
        }
    }
    Ok(())
}

fn generated_specs() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut done = 0;
    while done < 25 {
        let Some(file) = random_spec(&mut rng) else { continue };
        let spec = file.load(None).map_err(err)?.spec;
        let text = serde_json::to_string(&file).unwrap();
        ensure!(validate(&spec).map_err(err)?.passed, "generated spec invalid: {text}");
        ensure!(synthesize(&spec).map_err(err)?.verified == Some(true), "verdict false: {text}");
        done += 1;
    }
    Ok(())
}

fn permutation_robustness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let verdict = |l: &LoadedSpec| -> Result<(bool, Option<bool>, Option<bool>), String> {
        let valid = validate(&l.spec).map_err(err)?.passed;
        let synth = synthesize(&l.spec).ok().and_then(|c| c.verified);
        let printed = match &l.reference_generators {
            Some(g) => Some(verify_generator_list(g, &l.spec).map_err(err)?),
            None => None,
        };
        Ok((valid, synth, printed))
    };
    for name in spec_fixture_names() {
        let file = fixture_file(&name);
        let base = verdict(&file.load(None).map_err(err)?)?;
        for _ in 0..3 {
            let p = verdict(&permuted(&file, &mut rng).load(None).map_err(err)?)?;
            ensure!(p == base, "{name}: {p:?} vs {base:?}");
        }
    }
    Ok(())
}

fn lemma_witnesses() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for alpha in [q(2, 1), q(1, 1), q(-1, 1), q(1, 2)] {
        for _ in 0..4 {
            for shape in LemmaShape::ALL {
                let inst = lemma_instance(&mut rng, shape, &alpha);
                let cls = classify_modulo(&inst.scroll, &inst.delta).map_err(err)?;
                ensure!(cls.case.tag() == shape.tag(), "{shape:?} classified as {}", cls.case.tag());
                ensure!(replay(&inst.scroll, &inst.delta, &cls).map_err(err)?, "{shape:?}: replay failed");
                if let Case::HAlpha { alpha: found, .. } = &cls.case {
                    ensure!(*found == alpha, "alpha {found}, want {alpha}");
                    let mut bad = cls.clone();
                    if let Case::HAlpha { alpha, .. } = &mut bad.case {
                        *alpha += BigRational::one();
                    }
                    ensure!(!replay(&inst.scroll, &inst.delta, &bad).map_err(err)?, "tampered alpha replays");
                }
            }
        }
    }
    Ok(())
}

fn negative_controls() -> Outcome {
    let l = fixture("example-qprime");
    let gens = reference(&l)?;
    for k in 0..gens.len() {
        let mut fewer = gens.clone();
        fewer.remove(k);
        ensure!(!verify_generator_list(&fewer, &l.spec).map_err(err)?, "dropping q'{} still verifies", k + 1);
    }
    let mut file = fixture_file("example-qprime");
    file.components[2].p.retain(|v| v != "b");
    let report = validate(&file.load(None).map_err(err)?.spec).map_err(err)?;
    let f = report.condition("f").ok_or("no (f) verdict")?;
    ensure!(!report.passed && !f.passed, "mutated fixture passes (f)");
    ensure!(f.violations.iter().any(|v| v.indices == [3]), "violating k not reported: {:?}", f.violations);
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 13] = [
        ("1 Verdi generators, c = 1, 2, 3", verdi),
        ("2 first example", first_example),
        ("3 second example", second_example),
        ("4 q' example", qprime_example),
        ("5 Barile shape", barile),
        ("6 Eisenbud-Evans shape", eisenbud_evans),
        ("7 generic 2 x r matrices", generic_matrix),
        ("8 twisted cubic lattice", lattice_bridge),
        ("9a oracle self-consistency", oracle_consistency),
        ("9b generated specs synthesize", generated_specs),
        ("9c permutation robustness", permutation_robustness),
        ("9d classification witnesses", lemma_witnesses),
        ("10 negative controls", negative_controls),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("PASS  {name} ({secs:.2}s)"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name} ({secs:.2}s): {why}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
