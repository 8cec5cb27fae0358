//! Acceptance criteria 1–10. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.

use std::process::ExitCode;
use std::thread;
use std::time::Instant;

use bressoud_over::bijections::{phi, phi0, psi, psi0};
use bressoud_over::classes::{count_series, is_bbar, Family};
use bressoud_over::cli::checks;
use bressoud_over::marking::{gordon_marking, marked_parts, reverse_gordon_marking};
use bressoud_over::moves::{backward_move, forward_move};
use bressoud_over::qseries::{
    bailey_pair_check, bp1_pair, gen_a_series, multisum_lhs, unitbp2_pair, verify_identity, Prod, QSeries,
};
use bressoud_over::report::VerificationReport;
use bressoud_over::{DistinctEtaPartition, Overpartition, Params, Part};
use num_rational::BigRational;
use num_traits::One;

type Outcome = Result<String, String>;
type Criterion = (u32, &'static str, fn() -> Outcome);

fn op(s: &str) -> Overpartition {
    s.parse().unwrap()
}

fn params(s: &str) -> Params {
    s.parse().unwrap()
}

fn ok(r: bressoud_over::Result<VerificationReport>) -> Outcome {
    match r {
        Ok(rep) if rep.passed() => Ok(format!("{} {} ({} ms)", rep.check, rep.params.unwrap_or_default(), rep.wall_ms)),
        Ok(rep) => Err(format!(
            "{} {}: {}",
            rep.check,
            rep.params.unwrap_or_default(),
            rep.counterexample.unwrap_or_default()
        )),
        Err(e) => Err(e.to_string()),
    }
}

fn all(results: Vec<Outcome>) -> Outcome {
    let mut notes = Vec::new();
    for r in results {
        notes.push(r?);
    }
    Ok(notes.join("; "))
}

fn ensure(cond: bool, msg: &str) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.to_string())
    }
}

fn worked_examples() -> Outcome {
    let start = Instant::now();
    let pi = op("80o,80,80,70o,70,69o,60o,60,59o,51o,50,40o,40,31o,29o,21o,20o,20,19o,10o,10,9o,1o");
    let g = gordon_marking(&pi, 10);
    ensure(
        g.marks == [2, 4, 1, 2, 3, 1, 2, 4, 3, 1, 2, 3, 1, 2, 1, 4, 3, 2, 1, 4, 3, 2, 1],
        "Gordon marking of the first example differs",
    )?;
    let rg = reverse_gordon_marking(&pi, 10);
    ensure(
        rg.marks == [1, 2, 3, 1, 4, 2, 1, 3, 2, 4, 1, 2, 3, 1, 2, 1, 3, 4, 2, 1, 3, 2, 4],
        "reverse marking differs",
    )?;
    ensure(
        marked_parts(&rg, 4) == [Part::plain(70), Part::over(51), Part::plain(20), Part::over(1)],
        "reverse 4-marked parts differ",
    )?;
    let p5 = params("eta=10,alphas=1:9,k=5,r=4,j=1");
    let moved = forward_move(&pi, 2, &p5).map_err(|e| e.to_string())?;
    ensure(
        moved == op("80o,80,80,80,70o,69o,61o,60o,60,59o,50,40o,40,31o,29o,21o,20o,20,19o,10o,10,9o,1o"),
        "second forward move differs",
    )?;
    let p = params("eta=10,alphas=3:7,k=4,r=3,j=0");
    let zeta = DistinctEtaPartition::new(10, vec![100, 80, 50, 40, 20]).unwrap();
    let mu = op("87o,80,80,67o,63o,57o,50,50,43o,37o,33o,30,20,20,13o,7o,3o");
    let image = phi(&zeta, &mu, &p).map_err(|e| e.to_string())?;
    ensure(
        image == op("100o,100,97o,90,77o,73o,70,60o,57o,50,50,43o,37o,33o,30,23o,20,10o,7o,3o"),
        "Phi image differs",
    )?;
    ensure(psi(&image, &p).map_err(|e| e.to_string())? == (zeta, mu), "Psi does not invert")?;
    let zeta0 = DistinctEtaPartition::new(10, vec![50, 30, 20, 10]).unwrap();
    let mu0 = op("23o,20,7o,3o");
    let omega = phi0(&zeta0, &mu0, &p).map_err(|e| e.to_string())?;
    ensure(omega == op("50o,30o,23o,20,20,10o,7o,3o"), "Phi0 image differs")?;
    ensure(psi0(&omega, &p).map_err(|e| e.to_string())? == (zeta0, mu0), "Psi0 does not invert")?;
    let ms = start.elapsed().as_millis();
    ensure(ms < 1000, &format!("took {ms} ms"))?;
    Ok(format!("all displays reproduced in {ms} ms"))
}

fn phi_bijection() -> Outcome {
    all(vec![
        ok(checks::phi_roundtrip(&params("eta=1,alphas=,k=3,r=2"), 30)),
        ok(checks::phi_roundtrip(&params("eta=2,alphas=1,k=3,r=2"), 30)),
        ok(checks::phi_roundtrip(&params("eta=10,alphas=3:7,k=4,r=3"), 80)),
    ])
}

fn phi0_bijection() -> Outcome {
    all(vec![
        ok(checks::phi0_roundtrip(&params("eta=1,alphas=,k=4,r=3"), 30)),
        ok(checks::phi0_roundtrip(&params("eta=1,alphas=,k=4,r=4"), 30)),
        ok(checks::phi0_roundtrip(&params("eta=10,alphas=3:7,k=4,r=3"), 80)),
    ])
}

fn congruence_equals_difference() -> Outcome {
    all(vec![
        ok(checks::abar_equals_bbar(&params("eta=10,alphas=3:7,k=4,r=3"), 80)),
        ok(checks::abar_equals_bbar(&params("eta=2,alphas=1,k=4,r=2"), 40)),
    ])
}

fn five_residue_case() -> Outcome {
    let p = params("eta=1,alphas=,k=3,r=2");
    let a = count_series(Family::Abar(0), &p, 40).map_err(|e| e.to_string())?;
    let b = count_series(Family::Bbar(0), &p, 40).map_err(|e| e.to_string())?;
    ok(Ok(VerificationReport::compare_counts("counts", &a, &b)))?;
    let product = Prod::new()
        .poch_inf(-1, 1, 1, 1)
        .and_then(|p| p.poch_inf(1, 1, 5, -1))
        .and_then(|p| p.poch_inf(1, 4, 5, -1))
        .and_then(|p| p.eval(40))
        .map_err(|e| e.to_string())?;
    ok(Ok(verify_identity("product-vs-Abar", &product, &QSeries::from_counts(&a))))?;
    ok(Ok(verify_identity("product-vs-Bbar", &product, &QSeries::from_counts(&b))))?;
    Ok("counts and product agree through n=40".into())
}

fn multisum_theorem() -> Outcome {
    let list = ["eta=1,alphas=,k=3,r=2", "eta=1,alphas=,k=4,r=2", "eta=2,alphas=1,k=4,r=3", "eta=2,alphas=1,k=4,r=2"];
    let handles: Vec<_> = list
        .iter()
        .map(|s| {
            let p = params(s);
            thread::spawn(move || {
                let r = checks::gf_thm(&p, 100);
                if let Ok(rep) = &r {
                    if rep.wall_ms >= 60_000 {
                        return Err(format!("{p} took {} ms", rep.wall_ms));
                    }
                }
                ok(r)
            })
        })
        .collect();
    all(handles.into_iter().map(|h| h.join().unwrap()).collect())
}

fn sum_side() -> Outcome {
    all(vec![
        ok(checks::sum_side(&params("eta=1,alphas=,k=4,r=2"), 60)),
        ok(checks::sum_side(&params("eta=10,alphas=3:7,k=4,r=3"), 120)),
    ])
}

fn classics() -> Outcome {
    ok(checks::classic_ids(100))
}

fn bailey() -> Outcome {
    ok(checks::bailey_suite(None, 8, 60)).and_then(|a| {
        let p = params("eta=1,alphas=,k=3,r=2");
        let (l, r) = bressoud_over::qseries::corollary_lc_sides(&p, 100).map_err(|e| e.to_string())?;
        ok(Ok(verify_identity("corollary T=100", &l, &r)))?;
        Ok(a)
    })
}

fn negative_controls() -> Outcome {
    let mut caught = Vec::new();
    // A single series coefficient.
    let p = params("eta=1,alphas=,k=3,r=2");
    let lhs = multisum_lhs(&p, 40).map_err(|e| e.to_string())?;
    let rhs = gen_a_series(&p, 0, true, 40).map_err(|e| e.to_string())?;
    for e in [0, 17, 40] {
        let bad = rhs.perturbed(e, BigRational::one());
        ensure(!verify_identity("x", &lhs, &bad).passed(), &format!("coefficient q^{e} change missed"))?;
    }
    caught.push("series coefficient");
    // A move output.
    let p10 = params("eta=10,alphas=3:7,k=4,r=3,j=0");
    let mu = op("87o,80,80,67o,63o,57o,50,50,43o,37o,33o,30,20,20,13o,7o,3o");
    let moved = forward_move(&mu, 4, &p10).map_err(|e| e.to_string())?;
    let tampered = moved.with_shifted(&[0], 10).map_err(|e| e.to_string())?;
    let undone = backward_move(&tampered, 4, &p10);
    ensure(undone.map_or(true, |u| u != mu), "tampered move output still inverts")?;
    let zeta = DistinctEtaPartition::new(10, vec![100, 80, 50, 40, 20]).unwrap();
    let image = phi(&zeta, &mu, &p10).map_err(|e| e.to_string())?;
    let wrong = image.with_shifted(&[image.len() - 1], 1).map_err(|e| e.to_string())?;
    let detected = !is_bbar(&wrong, &p10, 1) || psi(&wrong, &p10).map_or(true, |r| r != (zeta.clone(), mu.clone()));
    ensure(detected, "tampered Phi output passes")?;
    caught.push("move output");
    // A beta value.
    for build in [bp1_pair, unitbp2_pair] {
        let mut pair = build(8, 60).map_err(|e| e.to_string())?;
        pair.beta[1] = pair.beta[1].perturbed(1, BigRational::one());
        let rep = bailey_pair_check(&pair, 8, 60);
        ensure(!rep.passed() && rep.counterexample.unwrap().starts_with("n=1"), "beta_1 change missed")?;
    }
    caught.push("beta value");
    // A count table entry.
    let counts = count_series(Family::Bbar(0), &p, 20).map_err(|e| e.to_string())?;
    let mut off = counts.clone();
    off[13] += 1;
    ensure(!VerificationReport::compare_counts("x", &counts, &off).passed(), "count change missed")?;
    caught.push("count entry");
    Ok(format!("detected: {}", caught.join(", ")))
}

fn main() -> ExitCode {
    let criteria: Vec<Criterion> = vec![
        (1, "worked examples", worked_examples),
        (2, "Phi bijection", phi_bijection),
        (3, "Phi0 bijection", phi0_bijection),
        (4, "Abar0 = Bbar0", congruence_equals_difference),
        (5, "mod 5 overpartition case", five_residue_case),
        (6, "multisum generating function", multisum_theorem),
        (7, "sum side against enumeration", sum_side),
        (8, "classical identities", classics),
        (9, "Bailey machinery", bailey),
        (10, "negative controls", negative_controls),
    ];
    let handles: Vec<_> = criteria
        .into_iter()
        .map(|(n, name, f)| {
            (
                n,
                name,
                thread::spawn(move || {
                    let t = Instant::now();
                    (f(), t.elapsed().as_secs_f64())
                }),
            )
        })
        .collect();
    let mut failed = 0;
    for (n, name, h) in handles {
        let (res, secs) = h.join().unwrap_or_else(|_| (Err("panicked".into()), 0.0));
        match res {
            Ok(msg) => println!("criterion {n:>2} PASS  {name} [{secs:.1}s]: {msg}"),
            Err(msg) => {
                failed += 1;
                println!("criterion {n:>2} FAIL  {name} [{secs:.1}s]: {msg}");
            }
        }
    }
    println!("{} of 10 criteria passed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
