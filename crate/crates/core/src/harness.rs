//! Monte Carlo logical error rates, burst checks and parameter sweeps.
//!
//! A trial fails when the decoder does not reproduce the syndrome within its
//! iteration budget, or when the residual `actual · estimate` is not a stabilizer.
//! Stabilizer membership is tested on the residual padded with identity on the
//! ebit qubits, against the row space of `[hex | 0; 0 | hez]`.

use std::collections::{HashMap, HashSet};
use std::io::Write;

use serde::Serialize;

use crate::channel::{sample_error_with, trial_rng, ChannelParams};
use crate::clifford::{logical_operators, LogicalBasis, Pauli, PauliVector};
use crate::decoder::{for_each_error_up_to, syndrome, Decoder, DecoderConfig, DecoderKind, MinWeightDecoder};
use crate::eacode::{
    build_theorem10, build_theorem5, build_theorem6, build_theorem7, build_theorem8,
    build_theorem9, theorem5_models, theorem7_model, EaCode, Family,
};
use crate::error::{invalid, Error, Result};
use crate::exec;
use crate::gf2::{BitVector, RowSpace};
use crate::models::{theorem10_model, theorem6_models, theorem8_model, theorem9_model, Scale};
use crate::ModelMatrix;

/// Limit on enumerated burst patterns.
pub const BURST_PATTERN_LIMIT: u128 = 1_000_000;
const Z95: f64 = 1.959_963_984_540_054;

/// Wilson score interval at 95% confidence.
pub fn wilson_interval(failures: u64, trials: u64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let p = failures as f64 / n;
    let z2 = Z95 * Z95;
    let denom = 1.0 + z2 / n;
    let centre = (p + z2 / (2.0 * n)) / denom;
    let half = Z95 * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    let lo = if failures == 0 { 0.0 } else { (centre - half).max(0.0) };
    let hi = if failures == trials { 1.0 } else { (centre + half).min(1.0) };
    (lo, hi)
}

/// Family and parameters of a code, enough to rebuild it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CodeSpec {
    Thm5 { p: u64, l1: usize, l2: usize },
    Thm6 { p: u64, l1: usize, l2: usize },
    Thm7 { p: u64, l: usize },
    Thm8 { l: u32, w: u64 },
    Thm9 { set: Vec<u32>, w: u64, scale: Scale },
    Thm10 { set: Vec<u32>, w: u64, scale: Scale },
}

impl CodeSpec {
    pub fn family(&self) -> Family {
        match self {
            CodeSpec::Thm5 { .. } => Family::Thm5,
            CodeSpec::Thm6 { .. } => Family::Thm6,
            CodeSpec::Thm7 { .. } => Family::Thm7,
            CodeSpec::Thm8 { .. } => Family::Thm8,
            CodeSpec::Thm9 { .. } => Family::Thm9,
            CodeSpec::Thm10 { .. } => Family::Thm10,
        }
    }

    /// Model matrices behind the code, labelled `hx`/`hz`, or `h` for single-code families.
    pub fn models(&self) -> Result<Vec<(&'static str, ModelMatrix)>> {
        let pair = |(x, z): (ModelMatrix, ModelMatrix)| vec![("hx", x), ("hz", z)];
        Ok(match self {
            CodeSpec::Thm5 { p, l1, l2 } => pair(theorem5_models(*p, *l1, *l2)?),
            CodeSpec::Thm6 { p, l1, l2 } => pair(theorem6_models(*p, *l1, *l2)?),
            CodeSpec::Thm7 { p, l } => vec![("h", theorem7_model(*p, *l)?)],
            CodeSpec::Thm8 { l, w } => vec![("h", theorem8_model(*l, *w)?)],
            CodeSpec::Thm9 { set, w, scale } => vec![("h", theorem9_model(set, *w, *scale)?)],
            CodeSpec::Thm10 { set, w, scale } => vec![("h", theorem10_model(set, *w, *scale)?)],
        })
    }

    pub fn build(&self) -> Result<EaCode> {
        match self {
            CodeSpec::Thm5 { p, l1, l2 } => build_theorem5(*p, *l1, *l2),
            CodeSpec::Thm6 { p, l1, l2 } => build_theorem6(*p, *l1, *l2),
            CodeSpec::Thm7 { p, l } => build_theorem7(*p, *l),
            CodeSpec::Thm8 { l, w } => build_theorem8(*l, *w),
            CodeSpec::Thm9 { set, w, scale } => build_theorem9(set, *w, *scale),
            CodeSpec::Thm10 { set, w, scale } => build_theorem10(set, *w, *scale),
        }
    }
}

/// Decides whether a residual on the transmitted qubits is a stabilizer.
#[derive(Clone, Debug)]
pub struct StabilizerTest {
    n: usize,
    c: usize,
    space: RowSpace,
}

impl StabilizerTest {
    pub fn new(code: &EaCode) -> Self {
        StabilizerTest {
            n: code.n,
            c: code.c,
            space: RowSpace::new(&code.stabilizer_matrix()),
        }
    }

    /// `(x | 0_c | z | 0_c)`.
    pub fn padded(&self, residual: &PauliVector) -> BitVector {
        let pad = BitVector::zeros(self.c);
        residual.x().concat(&pad).concat(&residual.z().concat(&pad))
    }

    pub fn is_stabilizer(&self, residual: &PauliVector) -> bool {
        debug_assert_eq!(residual.qubits(), self.n);
        let mut v = self.padded(residual);
        self.space.reduce(&mut v)
    }
}

/// Logical class of a Pauli error: its commutation pattern with a logical basis.
/// Two errors with equal syndromes differ by a stabilizer iff their labels agree.
#[derive(Clone, Debug)]
pub struct CosetLabeler {
    n: usize,
    basis: LogicalBasis,
}

impl CosetLabeler {
    pub fn new(code: &EaCode) -> Self {
        CosetLabeler {
            n: code.n,
            basis: logical_operators(code),
        }
    }

    fn pad(&self, e: &PauliVector) -> PauliVector {
        let q = self.basis.pairs.first().map_or(self.n, |(x, _)| x.qubits());
        let pad = BitVector::zeros(q - self.n);
        PauliVector::new(e.x().concat(&pad), e.z().concat(&pad), 0).expect("equal lengths")
    }

    /// Bit `2i` flags `Z̄_i` anticommuting (an `X̄_i` component), bit `2i+1` flags `X̄_i`.
    pub fn label(&self, e: &PauliVector) -> BitVector {
        let e = self.pad(e);
        let mut out = BitVector::zeros(2 * self.basis.len());
        for (i, (xb, zb)) in self.basis.pairs.iter().enumerate() {
            out.set(2 * i, e.symplectic_product(zb));
            out.set(2 * i + 1, e.symplectic_product(xb));
        }
        out
    }
}

/// Maximum-likelihood coset decoder by exhaustive enumeration of all `4^n` errors
/// under the independent depolarizing prior. Small codes only.
#[derive(Clone, Debug)]
pub struct MlCosetDecoder {
    labeler: CosetLabeler,
    best: HashMap<BitVector, BitVector>,
}

impl MlCosetDecoder {
    pub const MAX_QUBITS: usize = 12;

    pub fn new(code: &EaCode, pd: f64) -> Result<Self> {
        if code.n > Self::MAX_QUBITS {
            return Err(Error::EnumerationTooLarge {
                count: 1u128 << (2 * code.n.min(63)),
                limit: 1u128 << (2 * Self::MAX_QUBITS),
            });
        }
        let labeler = CosetLabeler::new(code);
        let mut mass: HashMap<(BitVector, BitVector), f64> = HashMap::new();
        for_each_error_up_to(code.n, code.n, |e| {
            let w = e.weight() as i32;
            let prob = (pd / 3.0).powi(w) * (1.0 - pd).powi(code.n as i32 - w);
            let (sx, sz) = syndrome(code, e).expect("matching length");
            *mass.entry((sx.concat(&sz), labeler.label(e))).or_default() += prob;
            true
        });
        let mut ranked: Vec<_> = mass.into_iter().collect();
        // Deterministic tie-break on the label bits.
        ranked.sort_by_key(|entry| entry.0 .1.to_bits());
        let mut best: HashMap<BitVector, (BitVector, f64)> = HashMap::new();
        for ((s, label), m) in ranked {
            match best.get(&s) {
                Some((_, bm)) if *bm >= m => {}
                _ => {
                    best.insert(s, (label, m));
                }
            }
        }
        Ok(MlCosetDecoder {
            labeler,
            best: best.into_iter().map(|(s, (l, _))| (s, l)).collect(),
        })
    }

    pub fn labeler(&self) -> &CosetLabeler {
        &self.labeler
    }

    /// Most likely logical class for a syndrome.
    pub fn decode(&self, sx: &BitVector, sz: &BitVector) -> Option<&BitVector> {
        self.best.get(&sx.concat(sz))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SimConfig {
    pub channel: ChannelParams,
    pub decoder: DecoderKind,
    pub lmax: usize,
    pub trials: u64,
    pub seed: u64,
}

impl SimConfig {
    pub fn decoder_config(&self) -> Result<DecoderConfig> {
        DecoderConfig::new(self.decoder, self.lmax, self.channel.pd)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SimResult {
    pub trials: u64,
    pub failures: u64,
    pub non_converged: u64,
    pub ler: f64,
    pub ci_low: f64,
    pub ci_high: f64,
}

impl SimResult {
    fn from_counts(trials: u64, failures: u64, non_converged: u64) -> Self {
        let (ci_low, ci_high) = wilson_interval(failures, trials);
        SimResult {
            trials,
            failures,
            non_converged,
            ler: failures as f64 / trials as f64,
            ci_low,
            ci_high,
        }
    }

    /// The two 95% intervals are disjoint.
    pub fn separated_from(&self, other: &SimResult) -> bool {
        self.ci_high < other.ci_low || other.ci_high < self.ci_low
    }
}

/// Outcome of decoding one sampled error.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trial {
    pub error: PauliVector,
    pub estimate: PauliVector,
    pub converged: bool,
    pub failed: bool,
}

/// Everything needed to run trials against one code.
pub struct Simulator<'a> {
    code: &'a EaCode,
    decoder: Decoder,
    test: StabilizerTest,
    cfg: SimConfig,
}

impl<'a> Simulator<'a> {
    pub fn new(code: &'a EaCode, cfg: SimConfig) -> Result<Self> {
        if cfg.trials == 0 {
            return Err(invalid("trials must be at least 1"));
        }
        Ok(Simulator {
            code,
            decoder: Decoder::new(code, cfg.decoder_config()?),
            test: StabilizerTest::new(code),
            cfg,
        })
    }

    /// Trial `t` of the run; depends only on the master seed and `t`.
    pub fn trial(&self, t: u64) -> Trial {
        let mut rng = trial_rng(self.cfg.seed, t);
        let error = sample_error_with(self.code.n, &self.cfg.channel, &mut rng);
        let (sx, sz) = syndrome(self.code, &error).expect("sampled on n qubits");
        let out = self.decoder.decode(&sx, &sz);
        let failed = !out.converged || !self.test.is_stabilizer(&error.mul(&out.estimate));
        Trial {
            error,
            estimate: out.estimate,
            converged: out.converged,
            failed,
        }
    }

    pub fn run(&self) -> SimResult {
        let (failures, non_converged) = exec::map_reduce(
            self.cfg.trials as usize,
            (0u64, 0u64),
            |t| {
                let trial = self.trial(t as u64);
                (trial.failed as u64, !trial.converged as u64)
            },
            |a, b| (a.0 + b.0, a.1 + b.1),
        );
        SimResult::from_counts(self.cfg.trials, failures, non_converged)
    }
}

pub fn run_trials(code: &EaCode, cfg: &SimConfig) -> Result<SimResult> {
    Ok(Simulator::new(code, cfg.clone())?.run())
}

/// Exhaustive check of all Pauli patterns confined to a window of consecutive qubits.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BurstReport {
    pub burst_len: usize,
    pub windows: usize,
    pub patterns: usize,
    pub oracle_correctable: usize,
    pub oracle_fraction: f64,
    pub spa_correctable: usize,
    pub spa_fraction: f64,
    pub decoder: DecoderKind,
    /// A few patterns the minimum-weight decoder gets wrong, with its estimate.
    pub oracle_failures: Vec<(String, String)>,
}

impl BurstReport {
    pub fn all_correctable(&self) -> bool {
        self.oracle_correctable == self.patterns
    }
}

/// Distinct non-identity Paulis supported on a window of `len` consecutive qubits.
pub fn burst_patterns(n: usize, len: usize) -> Result<Vec<PauliVector>> {
    if len > n {
        return Err(invalid(format!("burst length {len} exceeds {n} qubits")));
    }
    if len == 0 {
        return Ok(Vec::new());
    }
    let windows = (n - len + 1) as u128;
    let count = windows.saturating_mul(4u128.saturating_pow(len as u32) - 1);
    if count > BURST_PATTERN_LIMIT {
        return Err(Error::EnumerationTooLarge {
            count,
            limit: BURST_PATTERN_LIMIT,
        });
    }
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for start in 0..=n - len {
        for code in 1..(1usize << (2 * len)) {
            let mut e = PauliVector::identity(n);
            for k in 0..len {
                e.set(start + k, Pauli::ALL[(code >> (2 * k)) & 3]);
            }
            if seen.insert(e.clone()) {
                out.push(e);
            }
        }
    }
    Ok(out)
}

/// Burst correction by a minimum-weight lookup decoder (the reference) and by a
/// belief-propagation decoder configured by `cfg`.
pub fn burst_oracle(code: &EaCode, burst_len: usize, cfg: &DecoderConfig) -> Result<BurstReport> {
    let patterns = burst_patterns(code.n, burst_len)?;
    let test = StabilizerTest::new(code);
    let mw = MinWeightDecoder::new(code, burst_len);
    let decoder = Decoder::new(code, *cfg);
    let results = exec::map_collect(patterns.len(), |i| {
        let e = &patterns[i];
        let (sx, sz) = syndrome(code, e).expect("n qubits");
        let oracle = mw.decode(&sx, &sz).expect("weight <= burst length covers the syndrome");
        let oracle_ok = test.is_stabilizer(&e.mul(oracle));
        let out = decoder.decode(&sx, &sz);
        let spa_ok = out.converged && test.is_stabilizer(&e.mul(&out.estimate));
        (oracle_ok, spa_ok, oracle.clone())
    });
    let oracle_correctable = results.iter().filter(|r| r.0).count();
    let spa_correctable = results.iter().filter(|r| r.1).count();
    let oracle_failures = results
        .iter()
        .zip(&patterns)
        .filter(|(r, _)| !r.0)
        .take(8)
        .map(|(r, e)| (e.letters(), r.2.letters()))
        .collect();
    let total = patterns.len();
    let frac = |k: usize| if total == 0 { 1.0 } else { k as f64 / total as f64 };
    Ok(BurstReport {
        burst_len,
        windows: if burst_len == 0 { 0 } else { code.n - burst_len + 1 },
        patterns: total,
        oracle_correctable,
        oracle_fraction: frac(oracle_correctable),
        spa_correctable,
        spa_fraction: frac(spa_correctable),
        decoder: cfg.kind,
        oracle_failures,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepConfig {
    pub code: CodeSpec,
    pub pds: Vec<f64>,
    pub etas: Vec<f64>,
    pub decoder: DecoderKind,
    pub lmax: usize,
    pub trials: u64,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub family: Family,
    pub n: usize,
    pub k: usize,
    pub c: usize,
    pub pd: f64,
    pub eta: f64,
    pub decoder: DecoderKind,
    pub trials: u64,
    pub failures: u64,
    #[serde(rename = "LER")]
    pub ler: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub seed: u64,
}

/// One row per `(pd, eta)` grid point, `pd` outermost. Every point reuses the master seed.
pub fn sweep(cfg: &SweepConfig) -> Result<Vec<SweepRow>> {
    if cfg.pds.is_empty() || cfg.etas.is_empty() {
        return Err(invalid("sweep needs at least one pd and one eta value"));
    }
    let code = cfg.code.build()?;
    sweep_code(&code, cfg)
}

/// [`sweep`] with an already built code.
pub fn sweep_code(code: &EaCode, cfg: &SweepConfig) -> Result<Vec<SweepRow>> {
    if cfg.pds.is_empty() || cfg.etas.is_empty() {
        return Err(invalid("sweep needs at least one pd and one eta value"));
    }
    let mut rows = Vec::with_capacity(cfg.pds.len() * cfg.etas.len());
    for &pd in &cfg.pds {
        for &eta in &cfg.etas {
            let sim = SimConfig {
                channel: ChannelParams::new(pd, eta)?,
                decoder: cfg.decoder,
                lmax: cfg.lmax,
                trials: cfg.trials,
                seed: cfg.seed,
            };
            let r = run_trials(code, &sim)?;
            rows.push(SweepRow {
                family: code.family,
                n: code.n,
                k: code.k,
                c: code.c,
                pd,
                eta,
                decoder: cfg.decoder,
                trials: r.trials,
                failures: r.failures,
                ler: r.ler,
                ci_low: r.ci_low,
                ci_high: r.ci_high,
                seed: cfg.seed,
            });
        }
    }
    Ok(rows)
}

pub fn write_csv<W: Write>(rows: &[SweepRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row).map_err(|e| Error::Csv(e.to_string()))?;
    }
    w.flush().map_err(|e| Error::Csv(e.to_string()))?;
    Ok(())
}

pub fn sweep_csv(rows: &[SweepRow]) -> Result<String> {
    let mut buf = Vec::new();
    write_csv(rows, &mut buf)?;
    String::from_utf8(buf).map_err(|e| Error::Csv(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eacode::build_theorem5;

    fn sim(pd: f64, eta: f64, decoder: DecoderKind, trials: u64, seed: u64) -> SimConfig {
        SimConfig {
            channel: ChannelParams::new(pd, eta).unwrap(),
            decoder,
            lmax: 100,
            trials,
            seed,
        }
    }

    #[test]
    fn wilson_reference_values() {
        let (lo, hi) = wilson_interval(0, 100);
        assert_eq!(lo, 0.0);
        assert!((hi - 0.036_995).abs() < 1e-5);
        let (lo, hi) = wilson_interval(50, 100);
        assert!((lo - 0.403_831).abs() < 1e-5);
        assert!((hi - 0.596_169).abs() < 1e-5);
        assert_eq!(wilson_interval(0, 0), (0.0, 1.0));
        assert_eq!(wilson_interval(20, 20).1, 1.0);
    }

    #[test]
    fn stabilizers_pass_and_logicals_fail() {
        let code = build_theorem5(3, 1, 1).unwrap();
        let test = StabilizerTest::new(&code);
        assert!(test.is_stabilizer(&PauliVector::identity(9)));
        // X5 X7 (1-based) is a logical operator of this code.
        assert!(!test.is_stabilizer(&PauliVector::from_support(9, &[4, 6], &[])));
        // A stabilizer restricted to the data qubits, combined to cancel the ebit.
        let row = code.hx.row(0);
        let mut both = row.clone();
        both.xor_assign(&code.hx.row(1));
        let s = PauliVector::new(both, BitVector::zeros(9), 0).unwrap();
        assert!(test.is_stabilizer(&s));
        let single = PauliVector::new(row, BitVector::zeros(9), 0).unwrap();
        assert!(!test.is_stabilizer(&single));
    }

    #[test]
    fn labels_detect_logical_differences() {
        let code = build_theorem5(3, 1, 1).unwrap();
        let lab = CosetLabeler::new(&code);
        let a = PauliVector::from_support(9, &[4], &[]);
        let b = PauliVector::from_support(9, &[6], &[]);
        assert_eq!(syndrome(&code, &a).unwrap(), syndrome(&code, &b).unwrap());
        assert_ne!(lab.label(&a), lab.label(&b));
        assert!(lab.label(&PauliVector::identity(9)).is_zero());
    }

    #[test]
    fn zero_noise_never_fails() {
        let code = build_theorem5(5, 2, 2).unwrap();
        for kind in DecoderKind::ALL {
            let r = run_trials(&code, &sim(0.0, 0.3, kind, 200, 1)).unwrap();
            assert_eq!(r.failures, 0);
            assert_eq!(r.ler, 0.0);
        }
        assert!(run_trials(&code, &sim(0.1, 0.0, DecoderKind::Binary, 0, 1)).is_err());
    }

    #[test]
    fn successful_residuals_commute_with_every_stabilizer() {
        let code = build_theorem5(5, 2, 2).unwrap();
        let s = Simulator::new(&code, sim(0.05, 0.0, DecoderKind::Quaternary, 300, 4)).unwrap();
        let stab = crate::clifford::Tableau::from_code(&code).unwrap();
        let pad = BitVector::zeros(code.c);
        for t in 0..300 {
            let trial = s.trial(t);
            if !trial.failed {
                let r = trial.error.mul(&trial.estimate);
                let r = PauliVector::new(r.x().concat(&pad), r.z().concat(&pad), 0).unwrap();
                assert!(stab.generators().iter().all(|g| g.commutes_with(&r)));
            }
        }
    }

    #[test]
    fn runs_are_reproducible() {
        let code = build_theorem5(5, 2, 2).unwrap();
        let cfg = sim(0.05, 0.5, DecoderKind::Quaternary, 400, 99);
        let a = run_trials(&code, &cfg).unwrap();
        let b = run_trials(&code, &cfg).unwrap();
        assert_eq!(a, b);
        assert!(a.failures <= a.trials);
    }

    #[test]
    fn burst_enumeration() {
        assert!(burst_patterns(9, 0).unwrap().is_empty());
        // Windows of 3 on 9 qubits: distinct patterns are those with support in some window.
        let pats = burst_patterns(9, 3).unwrap();
        let mut brute = 0;
        for code in 1..(1usize << 18) {
            let support: Vec<usize> = (0..9).filter(|q| (code >> (2 * q)) & 3 != 0).collect();
            if support.last().unwrap() - support[0] < 3 {
                brute += 1;
            }
        }
        assert_eq!(pats.len(), brute);
        assert!(burst_patterns(9, 10).is_err());
        assert!(matches!(burst_patterns(100, 12), Err(Error::EnumerationTooLarge { .. })));
    }

    #[test]
    fn burst_oracle_bounds_decoder() {
        let code = build_theorem5(3, 1, 1).unwrap();
        let cfg = DecoderConfig::new(DecoderKind::Quaternary, 100, 0.03).unwrap();
        let empty = burst_oracle(&code, 0, &cfg).unwrap();
        assert_eq!(empty.patterns, 0);
        assert_eq!(empty.oracle_fraction, 1.0);
        let r = burst_oracle(&code, 2, &cfg).unwrap();
        assert!(r.spa_correctable <= r.patterns);
        assert!(r.oracle_correctable <= r.patterns);
    }

    #[test]
    fn sweep_shape_and_csv() {
        let cfg = SweepConfig {
            code: CodeSpec::Thm5 { p: 3, l1: 1, l2: 1 },
            pds: vec![0.01, 0.05],
            etas: vec![0.0, 0.5],
            decoder: DecoderKind::Quaternary,
            lmax: 20,
            trials: 50,
            seed: 3,
        };
        let rows = sweep(&cfg).unwrap();
        assert_eq!(rows.len(), 4);
        assert_eq!((rows[1].pd, rows[1].eta), (0.01, 0.5));
        let csv = sweep_csv(&rows).unwrap();
        let mut lines = csv.lines();
        assert_eq!(
            lines.next().unwrap(),
            "family,n,k,c,pd,eta,decoder,trials,failures,LER,ci_low,ci_high,seed"
        );
        assert!(lines.next().unwrap().starts_with("thm5,9,4,1,0.01,0.0,quat,50,"));
        assert_eq!(csv, sweep_csv(&sweep(&cfg).unwrap()).unwrap());
        let empty = SweepConfig { etas: vec![], ..cfg };
        assert!(sweep(&empty).is_err());
    }

    #[test]
    fn spec_models_expand_to_the_checks() {
        let specs = [
            CodeSpec::Thm5 { p: 5, l1: 2, l2: 2 },
            CodeSpec::Thm6 { p: 5, l1: 2, l2: 2 },
            CodeSpec::Thm7 { p: 7, l: 3 },
            CodeSpec::Thm8 { l: 6, w: 2 },
        ];
        for spec in specs {
            let code = spec.build().unwrap();
            let models = spec.models().unwrap();
            assert_eq!(models[0].1.expand(), code.hx);
            assert_eq!(models.last().unwrap().1.expand(), code.hz);
            assert_eq!(code.family, spec.family());
        }
    }

    #[test]
    fn ml_decoder_small_code() {
        let code = build_theorem5(3, 1, 1).unwrap();
        let ml = MlCosetDecoder::new(&code, 0.03).unwrap();
        // The identity class is most likely for the zero syndrome.
        let z = BitVector::zeros(3);
        assert!(ml.decode(&z, &z).unwrap().is_zero());
        let big = build_theorem5(5, 2, 2).unwrap();
        assert!(MlCosetDecoder::new(&big, 0.03).is_err());
    }
}
