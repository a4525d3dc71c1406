//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero if any fails.

mod common;

use common::{
    low_weight_words, pair_negativity, random_bits, random_clifford_circuit, StateVector,
};
use nalgebra::DMatrix;
use num_complex::Complex64;
use qmediator::circuits::{
    build_asymmetric, build_staged, build_staged_with_channel, build_symmetric,
    exhaustive_patterns, staged_template, ExperimentConfig, GateOp, Network, PSetting, PatternMode,
    StagedOptions, A, B, D,
};
use qmediator::cli::cmd_table;
use qmediator::density::{
    gate_unitary, partial_swap_local, run_final_density, run_network_density, DensityMatrix,
};
use qmediator::detect::{antiphase_amplitudes, Classification};
use qmediator::experiment::{
    run_staged, sweep, witness_density, witness_frames_pseudo_pure, StagedReport,
};
use qmediator::heisenberg::{
    nonclassicality_degree, run_network_frames, witness_frames, DescriptorFrame, WitnessAxes,
};
use qmediator::pauli::{BasisState, Coefficient, DampingPoly, PauliSum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(limit: Duration, start: Instant) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:.2?}, limit {limit:?}"))
}

fn grid() -> Vec<f64> {
    (0..=10).map(|k| k as f64 * 0.05).collect()
}

fn e<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|x| x.to_string())
}

// ---------------------------------------------------------------- tables

const FIXTURES: &str = include_str!("fixtures/descriptor_tables.txt");

fn fixture(name: &str) -> Vec<Vec<String>> {
    let header = format!("[{name}]");
    FIXTURES
        .lines()
        .skip_while(|l| l.trim() != header)
        .skip(1)
        .take_while(|l| !l.trim().is_empty())
        .map(split_row)
        .collect()
}

fn split_row(line: &str) -> Vec<String> {
    line.split('|').map(|c| c.trim().to_string()).collect()
}

fn squash(s: &str) -> String {
    s.split_whitespace().collect()
}

/// Reorders the factors of a transcribed `{x, z}` cell canonically.
fn canonical_cell<C: Coefficient>(cell: &str) -> Result<String, String> {
    let inner = cell
        .strip_prefix('{')
        .and_then(|c| c.strip_suffix('}'))
        .ok_or_else(|| format!("malformed cell {cell}"))?;
    let (x, z) = inner
        .split_once(", ")
        .ok_or_else(|| format!("malformed cell {cell}"))?;
    let x = e(PauliSum::<C>::parse(x, 4))?;
    let z = e(PauliSum::<C>::parse(z, 4))?;
    Ok(format!("{{{x}, {z}}}"))
}

fn compare_table<C: Coefficient>(produced: &str, name: &str) -> Result<usize, String> {
    let rows: Vec<Vec<String>> = produced.lines().skip(1).map(split_row).collect();
    let expected = fixture(name);
    ensure(rows.len() == expected.len(), || {
        format!("{name}: {} rows, expected {}", rows.len(), expected.len())
    })?;
    let mut cells = 0;
    for (got, want) in rows.iter().zip(&expected) {
        ensure(got.len() == want.len() && got[0] == want[0], || {
            format!("{name}: row {:?}", got)
        })?;
        for (g, w) in got.iter().zip(want).skip(1) {
            let w = canonical_cell::<C>(w)?;
            ensure(squash(g) == squash(&w), || {
                format!("{name} {}: got {g}, want {w}", got[0])
            })?;
            cells += 1;
        }
    }
    Ok(cells)
}

fn table_regression() -> Outcome {
    let start = Instant::now();
    let mut sym = ExperimentConfig::new(Network::Symmetric);
    let n1 = compare_table::<Complex64>(&e(cmd_table(&sym, false))?, "symmetric")?;
    sym.p = PSetting::Symbolic;
    let n2 = compare_table::<DampingPoly>(&e(cmd_table(&sym, false))?, "symmetric-dephased")?;
    let asym = ExperimentConfig::new(Network::Asymmetric);
    let n3 = compare_table::<Complex64>(&e(cmd_table(&asym, false))?, "asymmetric")?;
    within(Duration::from_secs(1), start)?;
    Ok(format!("{} cells matched", n1 + n2 + n3))
}

// ---------------------------------------------------------------- witness

fn symmetric_witness(p: Option<f64>) -> Result<(f64, f64, f64), String> {
    let circuit = e(build_symmetric(p))?;
    let zeros = BasisState::zeros(4);
    let frames = e(run_network_frames(&circuit))?;
    let wh = e(witness_frames(
        frames.last().unwrap(),
        &zeros,
        A,
        D,
        WitnessAxes::XZ_ZX,
    ))?;
    let rho = e(run_final_density(
        &circuit,
        &e(DensityMatrix::basis(&zeros))?,
    ))?;
    let wd = e(witness_density(&rho, A, D, WitnessAxes::XZ_ZX))?;
    let neg = e(e(rho.partial_trace(&[A, D]))?.negativity(&[0]))?;
    Ok((wh, wd, neg))
}

fn witness_value() -> Outcome {
    let (wh, wd, _) = symmetric_witness(None)?;
    ensure((wh - 2.0).abs() <= 1e-10, || {
        format!("heisenberg witness {wh}")
    })?;
    ensure((wd - 2.0).abs() <= 1e-10, || {
        format!("density witness {wd}")
    })?;
    Ok(format!("heisenberg {wh}, density {wd}"))
}

fn degradation_law() -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for p in grid() {
        let (wh, wd, neg) = symmetric_witness(Some(p))?;
        let want = 2.0 * (1.0 - 2.0 * p);
        for (engine, w) in [("heisenberg", wh), ("density", wd)] {
            ensure((w - want).abs() <= 1e-10, || {
                format!("p={p} {engine} witness {w}, want {want}")
            })?;
            worst = worst.max((w - want).abs());
        }
        if p == 0.5 {
            ensure(wh.abs() <= 1e-10 && wd.abs() <= 1e-10, || {
                format!("p=0.5 witness {wh} {wd}")
            })?;
            ensure(neg.abs() <= 1e-10, || format!("p=0.5 AD negativity {neg}"))?;
        }
    }
    // Same law through the sweep runner used by the CLI.
    let rows = e(sweep(&ExperimentConfig::new(Network::Symmetric), &grid()))?;
    for r in &rows {
        let want = 2.0 * (1.0 - 2.0 * r.p);
        ensure((r.witness_density - want).abs() <= 1e-10, || {
            format!("sweep p={}", r.p)
        })?;
        ensure(
            (r.witness_heisenberg.unwrap() - want).abs() <= 1e-10,
            || format!("sweep p={}", r.p),
        )?;
    }
    within(Duration::from_secs(5), start)?;
    Ok(format!("{} grid points, max error {worst:.1e}", rows.len()))
}

fn nonclassicality() -> Outcome {
    let mut checked = 0;
    for p in grid() {
        let want = 2.0 * (1.0 - 2.0 * p).abs();
        let single = e(DescriptorFrame::init(1).apply_dephasing(0, p))?;
        let d = e(nonclassicality_degree(&single, 0))?;
        ensure((d - want).abs() <= 1e-10, || {
            format!("single qubit p={p}: {d}")
        })?;
        let frames = e(run_network_frames(&e(build_symmetric(Some(p)))?))?;
        for q in [B, qmediator::circuits::C] {
            let d = e(nonclassicality_degree(frames.last().unwrap(), q))?;
            ensure((d - want).abs() <= 1e-10, || {
                format!("network qubit {q} p={p}: {d}")
            })?;
        }
        checked += 3;
    }
    Ok(format!("{checked} degrees checked"))
}

// ---------------------------------------------------------------- separable bound

fn random_bloch<R: Rng>(rng: &mut R) -> [f64; 3] {
    loop {
        let v = [
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        ];
        let r2: f64 = v.iter().map(|x| x * x).sum();
        if r2 <= 1.0 && r2 > 1e-12 {
            // push half of the samples onto the sphere, i.e. pure states
            if rng.gen_bool(0.5) {
                let r = r2.sqrt();
                return [v[0] / r, v[1] / r, v[2] / r];
            }
            return v;
        }
    }
}

fn qubit_state(b: [f64; 3]) -> DMatrix<Complex64> {
    let c = |re: f64, im: f64| Complex64::new(re, im);
    DMatrix::from_row_slice(
        2,
        2,
        &[
            c((1.0 + b[2]) / 2.0, 0.0),
            c(b[0] / 2.0, -b[1] / 2.0),
            c(b[0] / 2.0, b[1] / 2.0),
            c((1.0 - b[2]) / 2.0, 0.0),
        ],
    )
}

fn separable_bound() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let obs = e(PauliSum::<Complex64>::parse("q_xA q_zB + q_zA q_xB", 2))?;
    let mut max = f64::NEG_INFINITY;
    for k in 0..10_000 {
        let parts = if k % 2 == 0 { 1 } else { 4 };
        let mut weights: Vec<f64> = (0..parts).map(|_| rng.gen_range(0.0..1.0)).collect();
        let total: f64 = weights.iter().sum();
        weights.iter_mut().for_each(|w| *w /= total);
        let mut m = DMatrix::<Complex64>::zeros(4, 4);
        for w in weights {
            let prod =
                qubit_state(random_bloch(&mut rng)).kronecker(&qubit_state(random_bloch(&mut rng)));
            m += prod * Complex64::new(w, 0.0);
        }
        let rho = e(DensityMatrix::from_matrix(2, m))?;
        let v = e(rho.expectation(&obs))?;
        ensure(v <= 1.0 + 1e-9, || format!("sample {k}: {v}"))?;
        max = max.max(v);
    }
    within(Duration::from_secs(30), start)?;
    Ok(format!("10000 separable states, max {max:.6}"))
}

// ---------------------------------------------------------------- engines

fn engine_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let words = low_weight_words(4);
    let mut compared = 0usize;
    let mut worst: f64 = 0.0;
    for case in 0..200 {
        let circuit = random_clifford_circuit(&mut rng, 4, 20);
        let bits = random_bits(&mut rng, 4);
        let state = BasisState::from_bits(bits.clone());
        let frames = e(run_network_frames(&circuit))?;
        let states = e(run_network_density(
            &circuit,
            &e(DensityMatrix::basis(&state))?,
        ))?;
        let sv = StateVector::basis(&bits).run(&circuit);
        for (k, (f, rho)) in frames.iter().zip(&states).enumerate() {
            for w in &words {
                let h = e(f.expectation(&state, w))?;
                let d = e(rho.expectation_word(w))?;
                let diff = (h - d).abs();
                worst = worst.max(diff);
                ensure(diff <= 1e-10, || {
                    format!("case {case} slice {k} {w}: {h} vs {d}")
                })?;
                if k + 1 == frames.len() {
                    let o = sv.expectation(w);
                    ensure((o - d).abs() <= 1e-10, || {
                        format!("case {case} {w}: oracle {o} vs {d}")
                    })?;
                }
                compared += 1;
            }
        }
    }
    Ok(format!(
        "{compared} expectations, max difference {worst:.1e}"
    ))
}

fn staged_swap_identity() -> Outcome {
    let mut root = partial_swap_local(1.0 / 8.0);
    let base = root.clone();
    for _ in 1..8 {
        root = &root * &base;
    }
    let swap = e(gate_unitary(&GateOp::Swap(0, 1), 2))?;
    let d = (&root - &swap).iter().map(|z| z.norm()).fold(0.0, f64::max);
    ensure(d <= 1e-10, || {
        format!("(8th root)^8 differs from SWAP by {d}")
    })?;
    let mut worst: f64 = 0.0;
    for bits in ["0000", "1100", "1010"] {
        let init = e(DensityMatrix::basis(&e(bits.parse::<BasisState>())?))?;
        let reference =
            e(e(run_final_density(&e(build_asymmetric())?, &init))?.partial_trace(&[A, D]))?;
        for s in [1, 2, 4, 8] {
            let staged = e(build_staged(s, None, StagedOptions::default()))?;
            let ad = e(e(run_final_density(&staged, &init))?.partial_trace(&[A, D]))?;
            let diff = ad.max_abs_diff(&reference);
            worst = worst.max(diff);
            ensure(diff <= 1e-10, || {
                format!("{bits}, {s} stages: AD state differs by {diff}")
            })?;
        }
    }
    Ok(format!(
        "root error {d:.1e}, staged/asymmetric max difference {worst:.1e}"
    ))
}

// ---------------------------------------------------------------- averaging

fn staged_exhaustive() -> &'static StagedReport {
    static REPORT: OnceLock<StagedReport> = OnceLock::new();
    REPORT.get_or_init(|| {
        let mut cfg = ExperimentConfig::new(Network::Staged);
        cfg.patterns = PatternMode::Exhaustive;
        run_staged(&cfg).expect("staged run")
    })
}

/// Exhaustive-average values from the dense engine, recorded once and pinned.
const PINNED_WITNESS_AD: f64 = -0.06497049572787245;
const PINNED_NEGATIVITY_AD: f64 = 0.00022950494902260465;
const PINNED_B_ANTIPHASE: f64 = 1.7630365904027385;
const PINNED_B_INPHASE: f64 = 0.0;

/// State-vector oracle for the exhaustive average: AD pair state and the
/// spin-B amplitudes after the readout Hadamard.
fn oracle_average() -> Result<(DMatrix<Complex64>, f64, f64, f64), String> {
    let template = e(staged_template(8, StagedOptions::default()))?;
    let patterns = e(exhaustive_patterns(8, true, 1_000_000))?;
    let mut ad = DMatrix::<Complex64>::zeros(4, 4);
    let (mut xx, mut zz) = (0.0, 0.0);
    let (mut bx, mut by, mut bxz, mut byz) = (0.0, 0.0, 0.0, 0.0);
    let words: Vec<_> = ["XIIX", "ZIIZ", "IXII", "IYII", "ZXII", "ZYII"]
        .iter()
        .map(|s| qmediator::pauli::PauliWord::from_compact(s).unwrap())
        .collect();
    for p in &patterns {
        let sv = StateVector::basis(&[true, true, false, false]).run(&e(template.instantiate(p))?);
        ad += sv.reduced_pair(A, D);
        xx += sv.expectation(&words[0]);
        zz += sv.expectation(&words[1]);
        let mut read = sv.clone();
        read.apply(&GateOp::H(A));
        bx += read.expectation(&words[2]);
        by += read.expectation(&words[3]);
        bxz += read.expectation(&words[4]);
        byz += read.expectation(&words[5]);
    }
    let k = patterns.len() as f64;
    ad /= Complex64::new(k, 0.0);
    let inphase = (bx / k).hypot(by / k);
    let antiphase = (2.0 * bxz / k).hypot(2.0 * byz / k);
    Ok((ad, (xx + zz) / k, inphase, antiphase))
}

fn zeno_suppression() -> Outcome {
    let start = Instant::now();
    let report = staged_exhaustive();
    let bare = &report.variants[0];
    let avg = report
        .variants
        .iter()
        .find(|v| v.name == "exhaustive")
        .ok_or("no exhaustive variant")?;
    ensure(avg.patterns == 4900, || {
        format!("{} patterns", avg.patterns)
    })?;
    ensure((bare.negativity_ad.value - 0.5).abs() <= 1e-10, || {
        format!("undephased negativity {}", bare.negativity_ad.value)
    })?;
    let neg = avg.negativity_ad.value;
    ensure(neg * 10.0 <= 0.5, || {
        format!("averaged AD negativity {neg} not 10x below 0.5")
    })?;

    let b = avg
        .multiplets
        .amplitudes("B", "A")
        .ok_or("no B multiplet")?;
    let got = [avg.witness_ad.value, neg, b.antiphase, b.inphase];
    let (oracle_ad, oracle_w, oracle_in, oracle_anti) = oracle_average()?;
    let oracle = [
        oracle_w,
        pair_negativity(&oracle_ad),
        oracle_anti,
        oracle_in,
    ];
    for (name, (g, o)) in ["witness", "negativity", "B antiphase", "B inphase"]
        .iter()
        .zip(got.iter().zip(oracle))
    {
        ensure((g - o).abs() <= 1e-12, || {
            format!("{name}: engine {g:?}, oracle {o:?}")
        })?;
    }
    let pinned = [
        PINNED_WITNESS_AD,
        PINNED_NEGATIVITY_AD,
        PINNED_B_ANTIPHASE,
        PINNED_B_INPHASE,
    ];
    for (name, (g, p)) in ["witness", "negativity", "B antiphase", "B inphase"]
        .iter()
        .zip(got.iter().zip(pinned))
    {
        ensure(g.to_bits() == p.to_bits(), || {
            format!("{name}: {g:?} differs from pinned {p:?}")
        })?;
    }
    within(Duration::from_secs(120), start)?;
    Ok(format!(
        "AD negativity {neg:.3e} vs 0.5 undephased; pinned values reproduced"
    ))
}

// ---------------------------------------------------------------- detection

fn detection() -> Outcome {
    let labels = |v: Vec<String>| v.join("");
    let singlet = e(e(
        e(DensityMatrix::basis(&e("1100".parse::<BasisState>())?))?.apply_gate(&GateOp::H(A))
    )?
    .apply_gate(&GateOp::cnot(A, B)))?;
    let r = e(antiphase_amplitudes(&singlet, A))?;
    ensure(labels(r.antiphase_spins()) == "AB", || {
        format!("singlet antiphase on {:?}", r.antiphase_spins())
    })?;

    let report = staged_exhaustive();
    let swapped = &report.variants[0].multiplets;
    ensure(labels(swapped.antiphase_spins()) == "AD", || {
        format!("post-swap antiphase on {:?}", swapped.antiphase_spins())
    })?;

    let avg = &report
        .variants
        .iter()
        .find(|v| v.name == "exhaustive")
        .unwrap()
        .multiplets;
    ensure(
        avg.classification_of("D") == Some(&Classification::Silent),
        || format!("averaged D is {:?}", avg.classification_of("D")),
    )?;
    let init = e(DensityMatrix::basis(&e("1100".parse::<BasisState>())?))?;
    let channel = e(run_final_density(
        &e(build_staged_with_channel(8, 0.5, StagedOptions::default()))?,
        &init,
    ))?;
    let rc = e(antiphase_amplitudes(&channel, A))?;
    ensure(
        rc.classification_of("D") == Some(&Classification::Silent),
        || format!("channel D is {:?}", rc.classification_of("D")),
    )?;
    Ok("singlet {A,B}, swapped {A,D}, dephased D silent".into())
}

fn pseudo_pure_linearity() -> Outcome {
    let zeros = BasisState::zeros(4);
    let circuit = e(build_symmetric(None))?;
    let frames = e(run_network_frames(&circuit))?;
    let last = frames.last().unwrap();
    let pure = e(witness_frames(last, &zeros, A, D, WitnessAxes::XZ_ZX))?;
    for eps in [0.0, 0.3, 1.0] {
        let rho = e(run_final_density(
            &circuit,
            &e(DensityMatrix::pseudo_pure(eps, &zeros))?,
        ))?;
        let wd = e(witness_density(&rho, A, D, WitnessAxes::XZ_ZX))?;
        let wh = e(witness_frames_pseudo_pure(
            last,
            eps,
            &zeros,
            A,
            D,
            WitnessAxes::XZ_ZX,
        ))?;
        for (engine, w) in [("density", wd), ("heisenberg", wh)] {
            ensure((w - eps * pure).abs() <= 1e-10, || {
                format!("eps={eps} {engine}: {w} vs {}", eps * pure)
            })?;
        }
    }
    Ok(format!(
        "eps in {{0, 0.3, 1}} scale the pure witness {pure}"
    ))
}

fn main() {
    let criteria: [(u32, &str, fn() -> Outcome); 10] = [
        (1, "table regression", table_regression),
        (2, "witness value", witness_value),
        (3, "degradation law", degradation_law),
        (4, "non-classicality degree", nonclassicality),
        (5, "separable bound", separable_bound),
        (6, "engine equivalence", engine_equivalence),
        (7, "staged-swap identity", staged_swap_identity),
        (8, "zeno suppression", zeno_suppression),
        (9, "detection emulation", detection),
        (10, "pseudo-pure linearity", pseudo_pure_linearity),
    ];
    let mut failed = 0;
    for (id, name, run) in criteria {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        let elapsed = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS criterion {id:>2} {name}: {detail} ({elapsed:.2?})"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {id:>2} {name}: {why} ({elapsed:.2?})");
            }
        }
    }
    if failed > 0 {
        println!("{failed} of 10 criteria failed");
        std::process::exit(1);
    }
    println!("all 10 criteria passed");
}
