//! Acceptance suite: one line per criterion, exit status 1 if any fails.

use std::collections::HashMap;
use std::f64::consts::{FRAC_PI_2, TAU};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use cml_core::analysis::{
    ap_falsify_step, atom_mass_sum, bounded_log, max_exp_residual, wiener_average, SequenceWindow,
};
use cml_core::arith::{rat, ApproxComplex, ComplexRational, Rational, Scalar};
use cml_core::experiments::{run_gap, run_nonsep, GapConfig, NonsepConfig, RunOptions, BUNDLED_GAP_CORPUS};
use cml_core::gelfand::{
    exp_obstruction, filter_limit, idempotent_from_residues, index_frequencies, is_idempotent,
    transform_is_indicator,
};
use cml_core::lacunary::{
    represent, riesz_coefficient, riesz_truncation_to_trigpoly, sierpinski_member, tilde_set,
    CoeffRule, IndexSet, LacunarySequence, RieszProductSpec,
};
use cml_core::limits::Limits;
use cml_core::measures::{Atom, DiscreteMeasure, Position};
use cml_core::{Error, Verdict};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Every digit vector in `{−1,0,1}^K`, grouped by value.
fn brute_force(seq: &LacunarySequence) -> HashMap<i64, Vec<Vec<i8>>> {
    let k = seq.len();
    let mut out: HashMap<i64, Vec<Vec<i8>>> = HashMap::new();
    for code in 0..3usize.pow(k as u32) {
        let mut c = code;
        let digits: Vec<i8> = (0..k)
            .map(|_| {
                let d = (c % 3) as i8 - 1;
                c /= 3;
                d
            })
            .collect();
        let value = digits.iter().zip(seq.terms()).map(|(&d, &t)| d as i64 * t).sum();
        out.entry(value).or_default().push(digits);
    }
    out
}

fn random_lacunary(rng: &mut ChaCha8Rng, k: usize) -> LacunarySequence {
    let mut terms = vec![rng.gen_range(1..=3)];
    while terms.len() < k {
        let last = *terms.last().unwrap();
        terms.push(last * 3 + rng.gen_range(0..=last));
    }
    LacunarySequence::from_terms(terms).unwrap()
}

fn digit_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut seqs = Vec::new();
    for k in 1..=8 {
        seqs.push(LacunarySequence::power(3, k).unwrap());
        seqs.push(LacunarySequence::power(4, k).unwrap());
        for _ in 0..3 {
            seqs.push(random_lacunary(&mut rng, k));
        }
    }
    let mut checked = 0u64;
    for seq in &seqs {
        let oracle = brute_force(seq);
        let total = seq.total();
        for n in -total..=total {
            let found = oracle.get(&n).map(Vec::as_slice).unwrap_or(&[]);
            ensure(found.len() <= 1, || format!("{n} has {} representations in {:?}", found.len(), seq.terms()))?;
            let got = represent(n, seq);
            match (found.first(), got) {
                (None, None) => {}
                (Some(d), Some(rep)) => {
                    let mut dense = vec![0i8; seq.len()];
                    for &(k, e) in rep.digits() {
                        dense[k - 1] = e;
                    }
                    ensure(&dense == d, || format!("{n}: digits {dense:?} vs {d:?} in {:?}", seq.terms()))?;
                    ensure(rep.value(seq) == n, || format!("{n}: value mismatch"))?;
                }
                (a, b) => return Err(format!("{n}: oracle {a:?}, represent {b:?} in {:?}", seq.terms())),
            }
            checked += 1;
        }
    }
    Ok(format!("{} sequences, {checked} integers", seqs.len()))
}

fn random_subset(rng: &mut ChaCha8Rng, len: usize) -> IndexSet {
    IndexSet::new((1..=len).filter(|_| rng.gen_bool(0.5)).collect()).unwrap()
}

fn intersect(a: &[i64], b: &[i64]) -> Vec<i64> {
    let (mut i, mut j, mut out) = (0, 0, Vec::new());
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

fn tilde_intersection() -> Outcome {
    let seq = LacunarySequence::power(4, 13).unwrap();
    let window = 4i64.pow(13);
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut largest = 0;
    for _ in 0..50 {
        let a = random_subset(&mut rng, 13);
        let b = random_subset(&mut rng, 13);
        let ta = tilde_set(&a, &seq, window).map_err(|e| e.to_string())?;
        let tb = tilde_set(&b, &seq, window).map_err(|e| e.to_string())?;
        let tab = tilde_set(&a.intersection(&b), &seq, window).map_err(|e| e.to_string())?;
        ensure(intersect(&ta, &tb) == tab, || format!("A = {a}, B = {b}"))?;
        largest = largest.max(ta.len().max(tb.len()));
    }
    Ok(format!("50 pairs, largest tilde set {largest}"))
}

fn random_rule(rng: &mut ChaCha8Rng, k: usize) -> CoeffRule {
    let r = |rng: &mut ChaCha8Rng| {
        let den = rng.gen_range(1..=8i64);
        rat(rng.gen_range(-den + 1..=den), den)
    };
    match rng.gen_range(0..4) {
        0 => CoeffRule::Constant(r(rng)),
        1 => CoeffRule::Geometric(r(rng)),
        2 => CoeffRule::Listed((0..k).map(|_| r(rng)).collect()),
        _ => CoeffRule::indicator(random_subset(rng, k)),
    }
}

fn riesz_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut specs = 0;
    for k in 0..=8 {
        for _ in 0..12 {
            let seq = if rng.gen_bool(0.5) {
                LacunarySequence::power(rng.gen_range(3..=5), k.max(1)).unwrap()
            } else {
                random_lacunary(&mut rng, k.max(1))
            };
            let spec = RieszProductSpec::new(seq, random_rule(&mut rng, k.max(1)), k).unwrap();
            let poly = riesz_truncation_to_trigpoly(&spec, &Limits::default()).map_err(|e| e.to_string())?;
            let reach = spec.seq().partial_sum(k);
            for n in -reach..=reach {
                let expanded = poly.coefficient(n);
                let direct = Scalar::rational(riesz_coefficient(&spec, n));
                ensure(expanded.exact_eq(&direct) == Some(true), || {
                    format!("n = {n}: expansion {expanded}, direct {direct}")
                })?;
            }
            specs += 1;
        }
    }
    let seq = LacunarySequence::power(4, 8).unwrap();
    let spec = RieszProductSpec::new(seq.clone(), CoeffRule::Constant(rat(1, 1)), 8).unwrap();
    for k in 1..=8 {
        let c = riesz_coefficient(&spec, seq.term(k));
        ensure(c == rat(1, 2), || format!("coefficient at n_{k} is {c}"))?;
    }
    Ok(format!("{specs} specs expanded; μ̂(n_k) = 1/2 for a ≡ 1"))
}

fn random_measure(rng: &mut ChaCha8Rng) -> DiscreteMeasure {
    let atoms = rng.gen_range(1..=6);
    DiscreteMeasure::from_atoms((0..atoms).map(|_| {
        let q = rng.gen_range(1..=12i64);
        let p = rng.gen_range(0..q);
        let den = rng.gen_range(1..=6i64);
        let mass = ComplexRational::new(rat(rng.gen_range(-den..=den), den), Rational::from_integer(0.into()));
        Atom {
            position: Position::Exact(cml_core::arith::reduce_angle(p, q).unwrap()),
            mass: Scalar::Exact(mass),
        }
    }))
}

fn wiener_lemma() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut improved = 0;
    let mut worst: f64 = 0.0;
    for i in 0..20 {
        let m = random_measure(&mut rng);
        let claim = atom_mass_sum(&m);
        let err = |n| -> Result<f64, String> {
            let avg = wiener_average(&m, n).map_err(|e| e.to_string())?;
            let (d, derr) = avg.abs_diff(&claim);
            Ok(d + derr)
        };
        let (e60, e600) = (err(60)?, err(600)?);
        ensure(e600 <= 0.12, || format!("measure {i}: error {e600} at N = 600"))?;
        if e600 <= e60 {
            improved += 1;
        }
        worst = worst.max(e600);
    }
    ensure(improved >= 18, || format!("error shrank from N = 60 to 600 for only {improved}/20"))?;
    let seq = LacunarySequence::power(4, 10).unwrap();
    let riesz = RieszProductSpec::new(seq, CoeffRule::Constant(rat(1, 1)), 10).unwrap();
    let (a5, a320) = (
        wiener_average(&riesz, 5).map_err(|e| e.to_string())?.value(),
        wiener_average(&riesz, 320).map_err(|e| e.to_string())?.value(),
    );
    ensure(a320 < a5 / 4.0, || format!("Riesz averages {a5} at 5, {a320} at 320"))?;
    Ok(format!("max error {worst:.3e}, {improved}/20 shrink, Riesz {a5:.4} → {a320:.4}"))
}

fn nonsep() -> Outcome {
    let mut details = Vec::new();
    for (x, y, d) in [("100", "011", 0usize), ("010", "001", 1), ("011", "010", 2)] {
        let cfg = NonsepConfig {
            branches: vec![x.into(), y.into()],
            base: 4,
            k: 14,
            window: None,
            count: None,
        };
        let r = run_nonsep(&cfg, &RunOptions::default()).map_err(|e| e.to_string())?;
        let seq = LacunarySequence::power(4, 14).unwrap();
        let shared: Vec<usize> = serde_json::from_value(r.derived["shared"].clone()).unwrap();
        ensure(shared.len() == d, || format!("{x}/{y}: {} shared indices", shared.len()))?;
        let window = r.derived["window"].as_i64().unwrap();
        let expected = tilde_set(&IndexSet::new(shared).unwrap(), &seq, window).unwrap();
        let support: Vec<i64> = r.derived["table"]["rows"]
            .as_array()
            .unwrap()
            .iter()
            .map(|row| row[0].as_i64().unwrap())
            .collect();
        ensure(support == expected, || format!("{x}/{y}: support {support:?}"))?;
        for s in r.derived["spectra"].as_array().unwrap() {
            ensure(
                s["witness_re"] == 0.0 && s["witness_im"] == 1.0 && s["gap"] == 1.0,
                || format!("{x}/{y}: witness {s}"),
            )?;
        }
        ensure(r.verdict == Verdict::Pass, || format!("{x}/{y}: {:?}", r.checks))?;
        details.push(format!("d={d}: |support|={}", support.len()));
    }
    Ok(details.join(", "))
}

fn idempotents() -> Outcome {
    let mut total = 0;
    for q in 1..=8u32 {
        for mask in 0u32..1 << q {
            let residues: Vec<i64> = (0..q as i64).filter(|r| mask >> r & 1 == 1).collect();
            let m = idempotent_from_residues(q, &residues).map_err(|e| e.to_string())?;
            ensure(is_idempotent(&m) == Ok(true), || format!("q = {q}, {residues:?}: μ∗μ ≠ μ"))?;
            ensure(transform_is_indicator(&m, q, &residues), || {
                format!("q = {q}, {residues:?}: transform is not the indicator")
            })?;
            total += 1;
        }
    }
    Ok(format!("{total} coset measures"))
}

fn step_and_gap() -> Outcome {
    for p in 1..=64 {
        let w = ap_falsify_step(p, 0.9, (-(p as i64) - 1, p as i64 + 1)).map_err(|e| e.to_string())?;
        ensure(
            w.witnesses.len() == p as usize && w.witnesses.iter().all(|s| s.distance == 1.0),
            || format!("p = {p}: witnesses {:?}", w.witnesses),
        )?;
    }
    let cfg: GapConfig = serde_json::from_str(BUNDLED_GAP_CORPUS).unwrap();
    let r = run_gap(&cfg, &RunOptions { window: Some(200), ..Default::default() }).map_err(|e| e.to_string())?;
    let min = r.derived["corpus_min_sup_distance"].as_f64().unwrap();
    ensure(min >= 0.4, || format!("corpus minimum {min}"))?;
    Ok(format!("p ≤ 64 refuted; {} candidates, minimum sup-distance {min}", cfg.candidates.len()))
}

fn obstruction() -> Outcome {
    for (m, s) in [(19i64, 3i64), (25, 4), (44, 7)] {
        let w = exp_obstruction(1.0, 10.0, m).map_err(|e| e.to_string())?;
        let expect = (m as f64 - TAU * s as f64).abs();
        ensure(w.m == m && w.s == s && (w.drift - expect).abs() <= 1e-9, || {
            format!("M = {m}: got m = {}, s = {}, drift {}", w.m, w.s, w.drift)
        })?;
    }
    ensure(
        matches!(exp_obstruction(FRAC_PI_2, 10.0, 100), Err(Error::NotApplicable(_))),
        || "α = π/2 was not rejected".into(),
    )?;
    Ok("19/3, 25/4, 44/7 drifts match; π/2 rejected".into())
}

fn filter_separation() -> Outcome {
    let (x, y) = ("0110", "0011");
    let a1 = sierpinski_member(x, 3).unwrap();
    let a2 = sierpinski_member(y, 3).unwrap();
    let shared = a1.intersection(&a2);
    let minus = |a: &IndexSet| {
        IndexSet::new(a.as_slice().iter().copied().filter(|&i| !shared.contains(i)).collect()).unwrap()
    };
    let (xs, ys) = (minus(&a1), minus(&a2));
    ensure(xs.is_disjoint(&ys) && !xs.is_empty() && !ys.is_empty(), || "tails overlap".into())?;
    let seq = LacunarySequence::power(4, 20).unwrap();
    let mu = RieszProductSpec::new(seq.clone(), CoeffRule::infinite_indicator(xs.clone()), 20).unwrap();
    let along_x = filter_limit(&mu, &index_frequencies(&seq, &xs), 1e-9).map_err(|e| e.to_string())?;
    let along_y = filter_limit(&mu, &index_frequencies(&seq, &ys), 1e-9).map_err(|e| e.to_string())?;
    let half = Scalar::rational(rat(1, 2));
    ensure(along_x.value().and_then(|v| v.exact_eq(&half)) == Some(true), || format!("along X: {along_x:?}"))?;
    ensure(along_y.value().and_then(|v| v.exact_eq(&Scalar::zero())) == Some(true), || format!("along Y: {along_y:?}"))?;
    Ok(format!("X = {xs}, Y = {ys}: limits 1/2 and 0"))
}

fn log_round_trip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let len = rng.gen_range(1..=200);
        let lo = rng.gen_range(-500..=500);
        let values = (0..len)
            .map(|_| {
                let r = rng.gen_range(0.1f64..10.0);
                let t = rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
                ApproxComplex::new(r * t.cos(), r * t.sin(), 0.0)
            })
            .collect();
        let a = SequenceWindow::custom(lo, values).map_err(|e| e.to_string())?;
        let b = bounded_log(&a, 0.1 * (1.0 - 1e-12)).map_err(|e| e.to_string())?;
        let res = max_exp_residual(&a, &b).map_err(|e| e.to_string())?;
        ensure(res <= 1e-9, || format!("residual {res}"))?;
        worst = worst.max(res);
    }
    Ok(format!("100 windows, max residual {worst:.3e}"))
}

fn main() -> ExitCode {
    let criteria: [(&str, u64, fn() -> Outcome); 10] = [
        ("digit oracle equivalence", 10, digit_oracle),
        ("tilde set intersection", 30, tilde_intersection),
        ("Riesz coefficient oracle", 10, riesz_oracle),
        ("Wiener averages", 60, wiener_lemma),
        ("non-separability construction", 30, nonsep),
        ("idempotent suite", 30, idempotents),
        ("step sequence and gap corpus", 60, step_and_gap),
        ("exponential obstruction", 5, obstruction),
        ("filter-limit separation", 10, filter_separation),
        ("bounded logarithm round trip", 5, log_round_trip),
    ];
    let mut failed = 0;
    for (i, (name, limit, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(d) if elapsed > Duration::from_secs(*limit) => {
                Err(format!("{d}; took {:.2} s, limit {limit} s", elapsed.as_secs_f64()))
            }
            o => o,
        };
        match outcome {
            Ok(d) => println!("PASS {:>2} {name} ({:.2} s): {d}", i + 1, elapsed.as_secs_f64()),
            Err(d) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({:.2} s): {d}", i + 1, elapsed.as_secs_f64());
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
