//! Acceptance suite: one test per shipping criterion, each printing a
//! pass/fail line. Run with
//! `cargo test -p sce-core --test acceptance -- --nocapture`.

mod common;

use common::{fixed_keys, keystream_vectors, parse_keystream_fixture, KEYSTREAM_FIXTURE};
use sce_core::analysis::{self, nist, UNIFORM_BYTE_CSI};
use sce_core::chaos::{self, CharacterizationMap, MapId};
use sce_core::codec::CodecId;
use sce_core::corpus::{self, SplitMix64};
use sce_core::keys::{self, ChaosKey, KEY_SECRET_BITS};
use sce_core::pipeline::{self, PipelineMode};
use std::time::Instant;

fn check(criterion: &str, pass: bool, detail: String) {
    println!(
        "acceptance {criterion}: {} ({detail})",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "{criterion}: {detail}");
}

fn test_key(seed: u64) -> ChaosKey {
    keys::keygen(&mut SplitMix64::new(seed)).unwrap()
}

#[test]
fn criterion_01_roundtrip_fuzz() {
    let started = Instant::now();
    let keys: Vec<ChaosKey> = (0..8).map(|i| test_key(1000 + i)).collect();
    let modes = PipelineMode::ALL;
    let codecs = [CodecId::Store, CodecId::Baseline];
    let mut rng = SplitMix64::new(0xacce);
    let mut cases = 0usize;

    let run_case =
        |plain: &[u8], key: &ChaosKey, mode: PipelineMode, codec: CodecId, chunk: usize| {
            let container = pipeline::encrypt(plain, key, codec, mode, chunk)
                .unwrap_or_else(|e| panic!("encrypt failed (len {}): {e}", plain.len()));
            let back = pipeline::decrypt(&container, key)
                .unwrap_or_else(|e| panic!("decrypt failed (len {}): {e}", plain.len()));
            assert_eq!(
                back,
                plain,
                "roundtrip mismatch: len {} mode {mode} codec {codec} chunk {chunk}",
                plain.len()
            );
        };

    // Pinned lengths across every (mode, codec) combination.
    for &len in &[1usize, 63, 64, 65, 4095, 1_000_000] {
        for &mode in &modes {
            for &codec in &codecs {
                let plain = corpus::zipf_bytes(len, len as u64 ^ 0x51);
                let chunk = if len > 500_000 { 1 << 20 } else { 4096 };
                run_case(&plain, &keys[cases % keys.len()], mode, codec, chunk);
                cases += 1;
            }
        }
    }
    // Randomized remainder up to 1000 total cases.
    while cases < 1000 {
        let len = 1 + (rng.next_u64() % 4096) as usize;
        let flavor = rng.next_u64() % 4;
        let plain = match flavor {
            0 => vec![0u8; len],
            1 => corpus::random_bytes(len, rng.next_u64()),
            2 => corpus::zipf_bytes(len, rng.next_u64()),
            _ => corpus::synthetic_text(len, rng.next_u64()),
        };
        let mode = modes[(rng.next_u64() % 3) as usize];
        let codec = codecs[(rng.next_u64() % 2) as usize];
        let chunk = [4096usize, 65_536, 1 << 20][(rng.next_u64() % 3) as usize];
        run_case(&plain, &keys[cases % keys.len()], mode, codec, chunk);
        cases += 1;
    }
    let elapsed = started.elapsed().as_secs_f64();
    check(
        "01 roundtrip-fuzz",
        cases == 1000 && elapsed < 120.0,
        format!("{cases} cases in {elapsed:.1}s"),
    );
}

#[test]
fn criterion_02_lyapunov_reproduction() {
    let le = |map: &CharacterizationMap| chaos::lyapunov_exponent(map, 400_000).unwrap();
    let logistic4 = le(&CharacterizationMap::Logistic { mu: 4.0 });
    let logistic398 = le(&CharacterizationMap::reference(MapId::Logistic));
    let tent = le(&CharacterizationMap::reference(MapId::Tent));
    let lorenz = le(&CharacterizationMap::reference(MapId::Lorenz));
    let henon = le(&CharacterizationMap::reference(MapId::Henon));

    let ln2 = std::f64::consts::LN_2;
    let pass = (logistic4 - ln2).abs() < 0.01
        && (logistic398 - 0.63).abs() < 0.05
        && (tent - 0.68).abs() < 0.02
        && (lorenz - 0.92).abs() < 0.15;
    check(
        "02 lyapunov-reproduction",
        pass,
        format!(
            "logistic(4)={logistic4:.4} logistic(3.98)={logistic398:.4} tent={tent:.4} \
             lorenz={lorenz:.4}; henon={henon:.4} reported without bound"
        ),
    );
}

#[test]
fn criterion_03_bifurcation_structure() {
    let map = CharacterizationMap::reference(MapId::Logistic);
    let mut counts = Vec::new();
    for mu in [2.8, 3.2, 3.5] {
        let rows = chaos::bifurcation_scan(&map, mu, mu + 1e-9, 2, 256).unwrap();
        counts.push(chaos::cluster_count(&rows[0].1, 1e-6));
    }
    check(
        "03 bifurcation-structure",
        counts == [1, 2, 4],
        format!("period counts at mu 2.8/3.2/3.5 = {counts:?}"),
    );
}

#[test]
fn criterion_04_nist_campaign() {
    let started = Instant::now();
    const SAMPLES: usize = 100;
    const SAMPLE_BITS: usize = 1_000_000;
    let key = test_key(4);
    let plain = corpus::random_bytes(12_500_032, 0x415);
    let container =
        pipeline::encrypt(&plain, &key, CodecId::Baseline, PipelineMode::Sce, 1 << 20).unwrap();
    let (_, body) = pipeline::split_container(&container).unwrap();
    assert!(body.len() * 8 >= SAMPLES * SAMPLE_BITS);

    let report = nist::campaign(body, SAMPLES, SAMPLE_BITS, 0.01).unwrap();
    let mut detail = String::new();
    let mut pass = true;
    for row in &report.rows {
        detail.push_str(&format!("{}={:.3} ", row.test.short_id(), row.pass_rate));
        pass &= row.pass_rate >= 0.96;
    }
    let elapsed = started.elapsed().as_secs_f64();
    pass &= elapsed < 600.0;
    detail.push_str(&format!("in {elapsed:.0}s"));
    check("04 nist-campaign", pass, detail);
}

#[test]
fn criterion_05_plain_cipher_correlation() {
    let plain = corpus::random_bytes(1_000_000, 0x515);
    let mut worst = 0.0f64;
    for i in 0..20 {
        let key = test_key(5000 + i);
        let cc = analysis::plain_cipher_correlation(&plain, &key).unwrap();
        worst = worst.max(cc.abs());
    }
    check(
        "05 plain-cipher-correlation",
        worst < 0.01,
        format!("max |cc| over 20 keys = {worst:.5}"),
    );
}

#[test]
fn criterion_06_sensitivity() {
    // LZ-structured 1 MB input, the material class the scheme targets: a
    // flip disturbs match structure, so the coded stream realigns globally
    // and the chain scatters it. (On iid bytes the static Huffman stage
    // can localize a flip and the chain's difference dynamics then lock
    // the pair into a top-bit complement; that artifact is pinned by the
    // substitution and sensitivity characterization tests.)
    let plain = corpus::synthetic_text(1_000_000, 0x616);
    let key = test_key(6);
    let mut rng = SplitMix64::new(0x6b17);
    let mut worst_cc = 0.0f64;
    let mut worst_csi_dev = 0.0f64;
    let mut skipped = 0usize;
    for _ in 0..20 {
        let bit = (rng.next_u64() % KEY_SECRET_BITS as u64) as usize;
        let outcome = analysis::key_sensitivity(&plain, &key, bit).unwrap();
        worst_cc = worst_cc.max(outcome.cc.abs());
        worst_csi_dev = worst_csi_dev.max((outcome.csi - UNIFORM_BYTE_CSI).abs());
        skipped += outcome.equivalent_skipped;
    }
    // Plaintext flips land in the first block: the chain diffuses forward
    // only, so a flip at stream position p leaves the first p bytes of
    // ciphertext untouched by construction. Early flips measure diffusion
    // over the whole stream.
    for _ in 0..20 {
        let bit = (rng.next_u64() % 512) as usize;
        let outcome = analysis::plaintext_sensitivity(&plain, &key, bit).unwrap();
        worst_cc = worst_cc.max(outcome.cc.abs());
        worst_csi_dev = worst_csi_dev.max((outcome.csi - UNIFORM_BYTE_CSI).abs());
    }
    check(
        "06 sensitivity",
        worst_cc < 0.05 && worst_csi_dev < 0.05,
        format!(
            "max |cc| = {worst_cc:.5}, max |csi - {UNIFORM_BYTE_CSI:.4}| = {worst_csi_dev:.5}, \
             keystream-equivalent flips skipped = {skipped}"
        ),
    );
}

#[test]
fn criterion_07_keyspace() {
    let exponent = keys::keyspace_exponent(8, 13);
    check(
        "07 keyspace",
        exponent == 104,
        format!("keyspace_exponent(8, 13) = {exponent}"),
    );
}

#[test]
fn criterion_08_chen_falsification() {
    let key = test_key(8);
    let real = analysis::chen_property_check(&key, 100, 1024, 0x811).unwrap();
    let weak = analysis::chen_property_check_weak_control(&key, 100, 1024, 0x811).unwrap();
    check(
        "08 chen-falsification",
        real == 0 && weak == 100,
        format!("real pipeline equalities {real}/100, weakened control {weak}/100"),
    );
}

#[test]
fn criterion_09_compression_interplay() {
    let zipf = corpus::zipf_bytes(1_000_000, 0x919);
    let key = test_key(9);
    let rows = pipeline::pipeline_benchmark(
        &zipf,
        &key,
        &PipelineMode::ALL,
        &[CodecId::Baseline],
        1 << 20,
    )
    .unwrap();
    let ratio = |mode: PipelineMode| {
        rows.iter()
            .find(|r| r.mode == mode && r.codec == CodecId::Baseline)
            .unwrap()
            .ratio
    };
    let sce = ratio(PipelineMode::Sce);
    let cte = ratio(PipelineMode::Cte);
    let etc = ratio(PipelineMode::Etc);
    check(
        "09 compression-interplay",
        sce >= 0.85 * cte && etc <= 1.05,
        format!(
            "sce={sce:.4} cte={cte:.4} (sce/cte={:.3}) etc={etc:.4}",
            sce / cte
        ),
    );
}

#[test]
fn criterion_10_keystream_determinism() {
    let fixture = parse_keystream_fixture(KEYSTREAM_FIXTURE);
    let mut index = 0;
    let mut pass = true;
    for (label, key) in fixed_keys() {
        for (map, bytes) in keystream_vectors(&key) {
            let (flabel, fmap, fbytes) = &fixture[index];
            pass &= flabel == label && fmap == map && &bytes == fbytes;
            index += 1;
        }
    }
    check(
        "10 keystream-determinism",
        pass && index == 9,
        format!("{index} fixture vectors compared bit-exactly"),
    );
}
