//! Acceptance suite: one test per criterion, each printing a pass line.
//!
//! Criterion 13 (byte-identical trace files) exercises the command-line
//! front end and lives in the CLI crate's acceptance suite.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use stegoq::catalytic::{
    gv_secrecy_rate, prepare_quantum_stego, quantum_stego_reference, run_chained, RoundStatus,
};
use stegoq::codes::{find_code, PairClass};
use stegoq::degenerate::{DegenerateProtocol, ErrorAlphabet};
use stegoq::phasebit::{
    build_context, census_collisions, prepare_upsilon, run_phasebit_round, unit_errors, CoverSpec,
    PhaseBitContext, ResolutionPolicy, SecretSpec, BOB,
};
use stegoq::state::StateVector as GenericState;
use stegoq::{Distribution4, PauliOperator, StateVector};

const AMP_TOL: f64 = 1e-10;

fn pass(n: u32, name: &str) {
    println!("acceptance criterion {n:2} ({name}): PASS");
}

fn pp(s: &str, n: usize) -> PauliOperator {
    PauliOperator::parse(s, n).unwrap()
}

fn block_refs(labels: &[String]) -> Vec<&str> {
    labels.iter().map(|s| s.as_str()).collect()
}

/// The sixteen signed support words of the five-qubit |0_L>, coefficient
/// 1/4 each.
const FIVE_QUBIT_TERMS: [(&str, f64); 16] = [
    ("00000", 1.0),
    ("10010", 1.0),
    ("01001", 1.0),
    ("10100", 1.0),
    ("01010", 1.0),
    ("11011", -1.0),
    ("00110", -1.0),
    ("11000", -1.0),
    ("11101", -1.0),
    ("00011", -1.0),
    ("11110", -1.0),
    ("01111", -1.0),
    ("10001", -1.0),
    ("01100", -1.0),
    ("10111", -1.0),
    ("00101", 1.0),
];

fn bits_of(word: &str) -> Vec<u8> {
    word.bytes().map(|b| b - b'0').collect()
}

#[test]
fn criterion_01_codeword_fidelity() {
    let five = find_code("five_qubit").unwrap();
    let sv: StateVector = five.codeword(&[0]).unwrap();
    for (word, sign) in FIVE_QUBIT_TERMS {
        let a = sv.amplitude(&bits_of(word)).unwrap();
        assert!(
            (a.re - sign * 0.25).abs() < AMP_TOL && a.im.abs() < AMP_TOL,
            "|0_L> term {word}"
        );
    }
    assert_eq!(sv.dump().len(), 16);

    let shor = find_code("shor_ea").unwrap();
    let amp = 1.0 / 8.0f64.sqrt();
    for w in 0..2u8 {
        let sv: StateVector = shor.codeword(&[w]).unwrap();
        let mut seen = 0;
        for b1 in 0..2u64 {
            for b2 in 0..2u64 {
                for b3 in 0..2u64 {
                    let word: Vec<u8> = [b1, b1, b1, b2, b2, b2, b3, b3, b3]
                        .iter()
                        .map(|&x| x as u8)
                        .collect();
                    let sign = if w == 1 && (b1 + b2 + b3) % 2 == 1 {
                        -1.0
                    } else {
                        1.0
                    };
                    let a = sv.amplitude(&word).unwrap();
                    assert!(
                        (a.re - sign * amp).abs() < AMP_TOL && a.im.abs() < AMP_TOL,
                        "w={w} block pattern {b1}{b2}{b3}"
                    );
                    seen += 1;
                }
            }
        }
        assert_eq!(seen, 8);
        assert_eq!(sv.dump().len(), 8);
    }
    pass(1, "codeword fidelity");
}

#[test]
fn criterion_02_error_state_identity() {
    let shor = find_code("shor_ea").unwrap();
    let labels = shor.block_labels();
    let block = block_refs(&labels);
    let mut lhs: StateVector = shor.codeword(&[0]).unwrap();
    lhs.apply_pauli(&pp("Z4Z9", 9), &block).unwrap();
    let mut rhs: StateVector = shor.codeword(&[1]).unwrap();
    rhs.apply_pauli(&pp("Z1", 9), &block).unwrap();
    assert!(lhs.approx_eq(&rhs, AMP_TOL), "Z4Z9|0_L> must equal Z1|1_L>");
    pass(2, "two-sided error identity");
}

#[test]
fn criterion_03_degeneracy_table() {
    let shor = find_code("shor_ea").unwrap();
    let alphabet = ErrorAlphabet::shor_table(&shor).unwrap();
    let alice = alphabet.alice_flat();
    assert_eq!(alice.len(), 7);
    let mut checked = 0;
    for e_a in &alice {
        for e_b in alphabet.bob_all() {
            let class = shor.check_pair_condition(&alice, e_a, e_b).unwrap();
            assert_ne!(class, PairClass::Violation, "pair ({e_a}, {e_b})");
            checked += 1;
        }
    }
    assert_eq!(checked, 28);
    pass(3, "degeneracy table classification");
}

#[test]
fn criterion_04_entropy_monotonicity_and_circulant() {
    let mut rng = ChaCha8Rng::seed_from_u64(1001);
    let random_dist = |rng: &mut ChaCha8Rng| {
        let raw: [f64; 4] = std::array::from_fn(|_| rng.gen::<f64>() + 1e-3);
        let sum: f64 = raw.iter().sum();
        Distribution4::new(std::array::from_fn(|i| raw[i] / sum)).unwrap()
    };
    for _ in 0..100 {
        let p = random_dist(&mut rng);
        let q = random_dist(&mut rng);
        assert!(
            p.mix(&q).entropy() >= p.entropy() - 1e-12,
            "entropy dropped under mixing"
        );
    }
    for _ in 0..20 {
        let p = random_dist(&mut rng);
        let q = random_dist(&mut rng);
        let qm = q.as_array();
        let matrix = [
            [qm[0], qm[1], qm[2], qm[3]],
            [qm[1], qm[0], qm[3], qm[2]],
            [qm[2], qm[3], qm[0], qm[1]],
            [qm[3], qm[2], qm[1], qm[0]],
        ];
        let pa = p.as_array();
        let got = p.mix(&q).as_array();
        for k in 0..4 {
            let want: f64 = (0..4).map(|j| matrix[k][j] * pa[j]).sum();
            assert!((got[k] - want).abs() < 1e-12, "circulant row {k}");
        }
    }
    pass(4, "entropy monotonicity and circulant law");
}

#[test]
fn criterion_05_innocence_statistics() {
    let proto = DegenerateProtocol::shor().unwrap();
    let p = Distribution4::new([0.7, 0.1, 0.1, 0.1]).unwrap();
    let q = Distribution4::uniform();
    let report = proto.empirical_innocence_run(&p, &q, 10_000, 1, 0).unwrap();
    assert!(
        report.tv_distance < 0.05,
        "TV distance {} exceeds 0.05",
        report.tv_distance
    );
    pass(5, "innocence statistics");
}

#[test]
fn criterion_06_catalytic_chain() {
    let code = find_code("four_two_two").unwrap();
    let pairs: Vec<(u8, u8)> = (0..10)
        .map(|i| (((i >> 1) % 2) as u8, (i % 2) as u8))
        .collect();
    let chain = run_chained(&pairs, &code, None, 11).unwrap();
    assert!(!chain.aborted);
    assert_eq!(
        chain.external_ebits_consumed, 1,
        "exactly one external ebit"
    );
    assert_eq!(chain.rounds.len(), 10);
    for (round, &(w, b)) in chain.rounds.iter().zip(&pairs) {
        assert_eq!(round.status, RoundStatus::Success);
        assert_eq!(round.recovered, Some((w, b)), "recovered message");
        let f = round.replenish_fidelity.unwrap();
        assert!(f > 1.0 - AMP_TOL, "replenish fidelity {f}");
    }
    pass(6, "catalytic chain");
}

#[test]
fn criterion_07_probabilistic_preparation() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let trials = 10_000;
    let mut hits = 0u32;
    for _ in 0..trials {
        let out = prepare_quantum_stego(0.7, 0.4, 1.1, 2.0, &mut rng).unwrap();
        if out.success {
            hits += 1;
        }
    }
    let freq = hits as f64 / trials as f64;
    assert!((freq - 0.25).abs() < 0.02, "success frequency {freq}");

    let mut checked = 0;
    while checked < 20 {
        let (a, b, m, n) = (
            rng.gen::<f64>() * std::f64::consts::PI,
            rng.gen::<f64>() * std::f64::consts::TAU,
            rng.gen::<f64>() * std::f64::consts::PI,
            rng.gen::<f64>() * std::f64::consts::TAU,
        );
        let out = prepare_quantum_stego(a, b, m, n, &mut rng).unwrap();
        if !out.success {
            continue;
        }
        let mut reference = quantum_stego_reference(a, b, m, n).unwrap();
        reference.normalize();
        let f = out.state.fidelity(&reference).unwrap();
        assert!(f >= 1.0 - AMP_TOL, "conditional fidelity {f}");
        checked += 1;
    }
    pass(7, "probabilistic qubit preparation");
}

#[test]
fn criterion_08_gv_rate() {
    assert_eq!(gv_secrecy_rate(0.0f64).unwrap(), 0.5);
    let mut prev = f64::INFINITY;
    let mut delta = 0.0f64;
    while delta <= 0.2 + 1e-12 {
        let r = gv_secrecy_rate(delta).unwrap();
        if delta > 0.0 {
            assert!(r < prev, "not strictly decreasing at delta = {delta}");
        }
        prev = r;
        delta += 0.01;
    }
    // independent evaluation at delta = 0.05
    let d: f64 = 0.05;
    let h2 = -d * d.log2() - (1.0 - d) * (1.0 - d).log2();
    let independent = 0.5 - h2 - d * 3.0f64.log2();
    assert!((gv_secrecy_rate(d).unwrap() - independent).abs() < 1e-12);
    pass(8, "Gilbert-Varshamov rate");
}

fn five_ctx() -> PhaseBitContext {
    build_context(&find_code("five_qubit").unwrap(), None).unwrap()
}

#[test]
fn criterion_09_flipping_classification() {
    let ctx = five_ctx();
    assert_eq!(ctx.q_vec().to_bit_string(), "00011");
    assert_eq!(ctx.flipping(), &[0, 2, 3], "flipping generators S1, S3, S4");
    assert_eq!(ctx.non_flipping(), &[1], "non-flipping generator S2");
    let labels = ctx.code().block_labels();
    let block = block_refs(&labels);
    for w in 0..2u8 {
        let (l0, l1) = stegoq::phasebit::split_codeword(&ctx, w).unwrap();
        for (i, g) in ctx.code().generators().iter().enumerate() {
            let mut g_l0 = l0.clone();
            g_l0.apply_pauli(g, &block).unwrap();
            let mut g_l1 = l1.clone();
            g_l1.apply_pauli(g, &block).unwrap();
            if ctx.flipping().contains(&i) {
                assert!(g_l0.approx_eq(&l1, AMP_TOL), "w={w} S{} flips", i + 1);
                assert!(g_l1.approx_eq(&l0, AMP_TOL), "w={w} S{} flips", i + 1);
            } else {
                assert!(g_l0.approx_eq(&l0, AMP_TOL), "w={w} S{} fixes", i + 1);
                assert!(g_l1.approx_eq(&l1, AMP_TOL), "w={w} S{} fixes", i + 1);
            }
        }
    }
    pass(9, "flipping classification");
}

fn allowed_set() -> Vec<PauliOperator> {
    ["I", "X1", "Z1", "Y1", "Z2", "Z3", "Y3", "Z4"]
        .iter()
        .map(|s| pp(s, 5))
        .collect()
}

#[test]
fn criterion_10_phasebit_round_trips() {
    let ctx = five_ctx();
    let policy = ResolutionPolicy::AllowedSet(allowed_set());
    for error in allowed_set() {
        for w in 0..2u8 {
            for b in 0..2u8 {
                let trace = run_phasebit_round(
                    &ctx,
                    &CoverSpec::Classical(w),
                    &SecretSpec::Classical(b),
                    Some(&error),
                    &policy,
                    17,
                )
                .unwrap();
                assert!(!trace.ambiguous, "error {error} w={w} b={b}");
                assert_eq!(trace.recovered_bit, Some(b), "error {error} w={w} b={b}");
                let f = trace.cover_fidelity.unwrap();
                assert!(f > 1.0 - AMP_TOL, "cover fidelity {f} for {error}");
                assert!(trace.success);
            }
        }
    }
    pass(10, "phase-bit round trips");
}

#[test]
fn criterion_11_ambiguity_census() {
    let ctx = five_ctx();

    // brute-force oracle: group unit errors by the measurement record read
    // numerically off the stego statevector
    let labels = ctx.code().block_labels();
    let block = block_refs(&labels);
    let base = prepare_upsilon(&ctx, &CoverSpec::Classical(0), &SecretSpec::Classical(0)).unwrap();
    let gens = ctx.code().generators();
    let mut oracle_groups: Vec<(Vec<u8>, Vec<String>)> = Vec::new();
    for e in unit_errors(5) {
        let mut sv = base.clone();
        sv.apply_pauli(&e, &block).unwrap();
        let mut record = Vec::new();
        for &i in ctx.non_flipping() {
            let v = sv.expectation_pauli(&gens[i], &block).unwrap();
            assert!((v.abs() - 1.0).abs() < AMP_TOL);
            record.push(u8::from(v < 0.0));
        }
        for (a, &i) in ctx.flipping().iter().enumerate() {
            for &j in &ctx.flipping()[a + 1..] {
                let op = gens[i].multiply(&gens[j]).unwrap();
                let v = sv.expectation_pauli(&op, &block).unwrap();
                assert!((v.abs() - 1.0).abs() < AMP_TOL);
                record.push(u8::from(v < 0.0));
            }
        }
        let name = e.to_product_string_ascii();
        match oracle_groups.iter_mut().find(|(k, _)| *k == record) {
            Some((_, members)) => members.push(name),
            None => oracle_groups.push((record, vec![name])),
        }
    }
    assert_eq!(oracle_groups.len(), 8, "oracle grouping");
    let mut oracle_pairs: Vec<Vec<String>> = oracle_groups
        .into_iter()
        .map(|(_, mut members)| {
            assert_eq!(members.len(), 2);
            members.sort();
            members
        })
        .collect();
    oracle_pairs.sort();

    let census = census_collisions(&ctx).unwrap();
    let mut algebraic: Vec<Vec<String>> = census
        .pairs
        .iter()
        .map(|(a, b)| {
            let mut v = vec![a.to_product_string_ascii(), b.to_product_string_ascii()];
            v.sort();
            v
        })
        .collect();
    algebraic.sort();
    assert_eq!(algebraic, oracle_pairs, "census vs statevector oracle");
    assert!(algebraic.contains(&vec!["I".to_string(), "Y2".to_string()]));
    assert!(algebraic.contains(&vec!["Z4".to_string(), "Z5".to_string()]));
    pass(11, "ambiguity census");
}

#[test]
fn criterion_12_quantum_payload_linearity() {
    let ctx = five_ctx();
    let policy = ResolutionPolicy::AllowedSet(allowed_set());
    let mut rng = ChaCha8Rng::seed_from_u64(314);
    let allowed = allowed_set();
    let random_pair = |rng: &mut ChaCha8Rng| {
        let mut a = Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5);
        let mut b = Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5);
        let norm = (a.norm_sqr() + b.norm_sqr()).sqrt();
        a /= norm;
        b /= norm;
        (a, b)
    };
    for trial in 0..20 {
        let (alpha, beta) = random_pair(&mut rng);
        let (c0, c1) = random_pair(&mut rng);
        let error = allowed[rng.gen_range(0..allowed.len())].clone();
        let trace = run_phasebit_round(
            &ctx,
            &CoverSpec::Superposed(c0, c1),
            &SecretSpec::Quantum(alpha, beta),
            Some(&error),
            &policy,
            trial,
        )
        .unwrap();
        assert!(!trace.ambiguous, "trial {trial} error {error}");
        let sf = trace.secret_fidelity.unwrap();
        assert!(sf >= 1.0 - 1e-9, "secret fidelity {sf} (trial {trial})");
        let cf = trace.cover_fidelity.unwrap();
        assert!(cf >= 1.0 - 1e-9, "cover fidelity {cf} (trial {trial})");

        // the disentangled receiver qubit must equal alpha|+> + beta|->
        let mut sv = prepare_upsilon(
            &ctx,
            &CoverSpec::Superposed(c0, c1),
            &SecretSpec::Quantum(alpha, beta),
        )
        .unwrap();
        let labels = ctx.code().block_labels();
        let block = block_refs(&labels);
        sv.apply_pauli(&error, &block).unwrap();
        let record = stegoq::phasebit::extract_syndromes(&sv, &ctx).unwrap();
        let out = stegoq::phasebit::resolve_and_correct(&sv, &record, &ctx, &policy).unwrap();
        let readout = stegoq::phasebit::read_secret(&out.state, &ctx).unwrap();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let expected =
            GenericState::from_amplitudes(&[BOB], vec![(alpha + beta) * r, (alpha - beta) * r])
                .unwrap();
        let f = readout.bob_qubit.fidelity(&expected).unwrap();
        assert!(f >= 1.0 - 1e-9, "receiver qubit fidelity {f}");
    }
    pass(12, "quantum payload linearity");
}
