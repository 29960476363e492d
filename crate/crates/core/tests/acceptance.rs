//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use common::{brute_force_cycles, example_one, random_base, rng, EXAMPLE_ONE_H};
use nbqc::analysis::{Analysis, DEFAULT_FLOOR_THRESHOLD};
use nbqc::lifter::four_cycle_eliminated;
use nbqc::sim::{
    build_code, modulate_and_transmit, run_monte_carlo, symbol_likelihoods, CodeInstance,
    Modulation, QspaDecoder, SimConfig, SnrPoint,
};
use nbqc::{
    distance_upper_bound, greedy_lift, rate_lower_bound, AceValue, BaseMatrix, ConstructionConfig,
    FieldSpec, Gf, GfMatrix, Lifting, Monomial, PolyMatrix, Rational,
};
use rand::Rng;

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

fn distance_bound() -> Verdict {
    let a = distance_upper_bound(2, 4).unwrap();
    let b = distance_upper_bound(2, 8).unwrap();
    verdict(a == 40 && b == 1152, format!("D(2,4) = {a}, D(2,8) = {b}"))
}

fn rate_arithmetic() -> Verdict {
    let small = BaseMatrix::column_regular(4, 33, 2).unwrap();
    let large = BaseMatrix::column_regular(8, 66, 2).unwrap();
    let (ra, rb) = (rate_lower_bound(&small), rate_lower_bound(&large));
    let (na, nb) = (small.n() * 140, large.n() * 70);
    let k_over_n = Rational::new(4060, na as i64);
    let pass =
        ra == Rational::new(29, 33) && rb == ra && na == 4620 && nb == 4620 && k_over_n == ra;
    verdict(
        pass,
        format!("R >= {ra} and {rb}, N = {na} and {nb}, 4060/N = {k_over_n}"),
    )
}

fn example_fidelity() -> Verdict {
    let got = example_one().expand().to_codes();
    let expected: Vec<Vec<u8>> = EXAMPLE_ONE_H.iter().map(|r| r.to_vec()).collect();
    let diff = got
        .iter()
        .flatten()
        .zip(expected.iter().flatten())
        .filter(|(a, b)| a != b)
        .count();
    verdict(
        diff == 0,
        format!("6x9 expansion, {diff} differing entries"),
    )
}

/// Three elimination tests on random monomial submatrices: the 4-cycle
/// shift/coefficient rule, a nonzero cofactor determinant, and a
/// nonsingular scalar expansion.
fn elimination_equivalence() -> Verdict {
    let mut r = rng(404);
    let (mut samples, mut fast_vs_det, mut det_vs_scalar) = (0, 0, 0);
    let mut det_zero_but_scalar_regular = 0;
    for t in 0..1200 {
        let k = 2 + t % 2;
        let s = 3 + (t / 2) % 6;
        let field = FieldSpec::from_order(if t % 4 < 2 { 4 } else { 16 }).unwrap();
        let q = field.q() as u64;
        let rows: Vec<Vec<Option<Monomial>>> = (0..k)
            .map(|_| {
                (0..k)
                    .map(|_| {
                        Some(Monomial::new(
                            Gf(r.random_range(1..q) as u8),
                            r.random_range(0..s),
                        ))
                    })
                    .collect()
            })
            .collect();
        let pm = PolyMatrix::from_monomials(s, &rows).unwrap();
        let det_nonzero = !pm.determinant(&field).unwrap().is_zero();
        let scalar_regular = !pm.expand().is_singular(&field);
        samples += 1;
        if k == 2 {
            let m = |i: usize, j: usize| rows[i][j].unwrap();
            if four_cycle_eliminated([m(0, 0), m(0, 1), m(1, 0), m(1, 1)], s, &field) != det_nonzero
            {
                fast_vs_det += 1;
            }
        }
        if det_nonzero != scalar_regular {
            det_vs_scalar += 1;
            if scalar_regular {
                det_zero_but_scalar_regular += 1;
            }
        }
    }
    verdict(
        fast_vs_det == 0 && det_vs_scalar == 0,
        format!(
            "{samples} samples: fast path vs determinant {fast_vs_det} disagreements; \
             determinant vs scalar singularity {det_vs_scalar} disagreements \
             ({det_zero_but_scalar_regular} with zero determinant)"
        ),
    )
}

fn cycle_enumeration() -> Verdict {
    let mut r = rng(505);
    let mut mismatches = 0;
    let mut total = 0;
    for _ in 0..50 {
        let base = random_base(&mut r, 4, 8, 0.5);
        let all = brute_force_cycles(&base, 8);
        for col in 0..base.n() {
            let got = base.cycles_through(col, 8);
            let set: BTreeSet<_> = got.iter().cloned().collect();
            let expected: BTreeSet<_> = all
                .iter()
                .filter(|c| c.columns().contains(&col))
                .cloned()
                .collect();
            total += expected.len();
            if set.len() != got.len() || set != expected {
                mismatches += 1;
            }
        }
    }
    verdict(
        mismatches == 0,
        format!("50 bases x 8 columns, {total} cycles, {mismatches} mismatching columns"),
    )
}

fn greedy_monotonicity() -> Verdict {
    let base: BaseMatrix = include_str!("../data/base_3x6.txt").parse().unwrap();
    let (mut monotone, mut e4_infinite) = (true, 0);
    for seed in 0..10 {
        let (_, report) = greedy_lift(&base, &ConstructionConfig::new(16, 16, 8, seed)).unwrap();
        let mut seq = vec![&report.initial_ace];
        seq.extend(report.accepted.iter().map(|a| &a.ace));
        monotone &= seq
            .windows(2)
            .all(|w| w[0].lex_compare(w[1]).unwrap().is_le());
        if report.final_ace.get(4) == Some(AceValue::Infinite) {
            e4_infinite += 1;
        }
    }
    verdict(
        monotone && e4_infinite >= 9,
        format!("accepted sequence non-decreasing: {monotone}; e4 = inf in {e4_infinite}/10 seeds"),
    )
}

fn decoder_sanity() -> Verdict {
    let base: BaseMatrix = include_str!("../data/base_3x6.txt").parse().unwrap();
    let (l, _) = greedy_lift(&base, &ConstructionConfig::new(8, 16, 6, 1)).unwrap();
    let code = build_code(&l).unwrap();
    let dec = QspaDecoder::new(&code);
    let mut r = rng(707);
    let mut noiseless_ok = 0;
    for _ in 0..100 {
        let info: Vec<Gf> = (0..code.k()).map(|_| Gf(r.random_range(0..16))).collect();
        let word = code.encode(&info).unwrap();
        let rx = modulate_and_transmit(&word, 4, Modulation::Bpsk, f64::INFINITY, &mut r).unwrap();
        let out = dec.decode(
            &symbol_likelihoods(&rx, 4, Modulation::Bpsk, f64::INFINITY),
            20,
        );
        noiseless_ok += usize::from(out.word == word);
    }

    // five pairwise independent columns over GF(4): corrects one error
    let toy = GfMatrix::from_rows(&[vec![1, 0, 1, 1, 1], vec![0, 1, 1, 2, 3]]).unwrap();
    let toy = CodeInstance::from_matrix(toy, FieldSpec::new(2).unwrap()).unwrap();
    let toy_dec = QspaDecoder::new(&toy);
    let f = toy.field().clone();
    let (mut single_total, mut single_ok) = (0, 0);
    for idx in 0..64usize {
        let info = [
            Gf((idx % 4) as u8),
            Gf((idx / 4 % 4) as u8),
            Gf((idx / 16) as u8),
        ];
        let word = toy.encode(&info).unwrap();
        for pos in 0..5 {
            for e in f.nonzero() {
                let mut probs = vec![vec![0.1 / 3.0; 4]; 5];
                for (v, p) in probs.iter_mut().enumerate() {
                    let sym = if v == pos { f.add(word[v], e) } else { word[v] };
                    p[sym.value()] = 0.9;
                }
                single_total += 1;
                single_ok += usize::from(toy_dec.decode(&probs, 20).word == word);
            }
        }
    }

    let (mut converged, mut bad_syndrome) = (0, 0);
    for _ in 0..300 {
        let info: Vec<Gf> = (0..code.k()).map(|_| Gf(r.random_range(0..16))).collect();
        let word = code.encode(&info).unwrap();
        let rx = modulate_and_transmit(&word, 4, Modulation::Bpsk, 1.0, &mut r).unwrap();
        let out = dec.decode(&symbol_likelihoods(&rx, 4, Modulation::Bpsk, 1.0), 20);
        if out.converged {
            converged += 1;
            bad_syndrome += usize::from(!code.is_codeword(&out.word));
        }
    }
    verdict(
        noiseless_ok == 100 && single_ok == single_total && bad_syndrome == 0,
        format!(
            "noiseless {noiseless_ok}/100; single errors corrected {single_ok}/{single_total}; \
             {bad_syndrome} of {converged} converged outputs with nonzero syndrome"
        ),
    )
}

fn point(code: &CodeInstance, snr: f64, frames: usize, seed: u64) -> SnrPoint {
    let cfg = SimConfig {
        modulation: Modulation::Bpsk,
        snr_db: vec![snr],
        max_frames: frames,
        max_errors: frames,
        max_iterations: 50,
        seed,
    };
    run_monte_carlo(code, &cfg).unwrap().points.remove(0)
}

fn construction_benefit() -> Verdict {
    let base: BaseMatrix = include_str!("../data/base_4x16.txt").parse().unwrap();
    let (greedy, _) = greedy_lift(&base, &ConstructionConfig::new(12, 16, 6, 1)).unwrap();
    let trivial = Lifting::identity(base, 12, FieldSpec::new(4).unwrap()).unwrap();
    let (greedy, trivial) = (build_code(&greedy).unwrap(), build_code(&trivial).unwrap());

    // pilot: the SNR at which the trivial lifting is closest to BLER 0.1
    let snr = [5.0, 5.5, 6.0, 6.5, 7.0]
        .into_iter()
        .map(|snr| (snr, point(&trivial, snr, 1000, 1).bler))
        .min_by(|a, b| {
            (a.1.ln() - 0.1f64.ln())
                .abs()
                .total_cmp(&(b.1.ln() - 0.1f64.ln()).abs())
        })
        .unwrap()
        .0;
    let frames = 20_000;
    let t = point(&trivial, snr, frames, 2);
    let g = point(&greedy, snr, frames, 3);
    let pass = g.ci_high <= 0.5 * t.ci_low;
    verdict(
        pass,
        format!(
            "N = {}, {snr} dB, {frames} frames each: all-1*x^0 BLER {:.4} [{:.4}, {:.4}], \
             greedy BLER {:.2e} [{:.2e}, {:.2e}]",
            trivial.n(),
            t.bler,
            t.ci_low,
            t.ci_high,
            g.bler,
            g.ci_low,
            g.ci_high
        ),
    )
}

fn floor_mechanism() -> Verdict {
    let small = BaseMatrix::column_regular(4, 33, 2).unwrap();
    let large = BaseMatrix::column_regular(8, 66, 2).unwrap();
    let a = Analysis::analyze_base(&small, 4, None, DEFAULT_FLOOR_THRESHOLD).unwrap();
    let b = Analysis::analyze_base(&large, 4, None, DEFAULT_FLOOR_THRESHOLD).unwrap();
    let pass = a.distance_bound == Some(40)
        && b.distance_bound == Some(1152)
        && a.floor_prone() == Some(true)
        && b.floor_prone() == Some(false)
        && a.to_string().contains("floor-prone: yes");
    verdict(
        pass,
        format!(
            "m=4: bound {:?} floor-prone {:?}; m=8: bound {:?} floor-prone {:?}",
            a.distance_bound,
            a.floor_prone(),
            b.distance_bound,
            b.floor_prone()
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Verdict); 9] = [
        ("distance bound", distance_bound),
        ("rate arithmetic", rate_arithmetic),
        ("example lifting expansion", example_fidelity),
        ("elimination test equivalence", elimination_equivalence),
        ("cycle enumeration oracle", cycle_enumeration),
        (
            "greedy monotonicity and 4-cycle elimination",
            greedy_monotonicity,
        ),
        ("decoder sanity", decoder_sanity),
        ("construction benefit", construction_benefit),
        ("error-floor mechanism", floor_mechanism),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let v = check();
        let tag = if v.pass { "PASS" } else { "FAIL" };
        println!(
            "{tag} criterion {}: {name} ({:.1}s): {}",
            k + 1,
            start.elapsed().as_secs_f64(),
            v.detail
        );
        failed += usize::from(!v.pass);
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
