//! Syndrome decoders for EA CSS codes.
//!
//! Only the `n` transmitted qubits are decoded; ebit columns never enter a graph.
//! The binary decoder runs two independent sum-product decoders, one on the `hx`
//! graph (estimating the Z part of the error) and one on the `hz` graph
//! (estimating the X part). The quaternary decoder runs on the joint graph of
//! `[ω·hx; hz]` and passes scalar messages between four-entry log-likelihood
//! vectors at the variable nodes.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::clifford::{Pauli, PauliVector};
use crate::eacode::EaCode;
use crate::error::{invalid, Error, Result};
use crate::gf2::{BinaryMatrix, BitVector};

/// Bound on every scalar message magnitude.
pub const MAX_MESSAGE: f64 = 30.0;
const ATANH_EPS: f64 = 1e-12;

/// Which Pauli a check measures. `X` checks come from `hx` (label ω on the joint
/// graph) and detect Z and Y; `Z` checks come from `hz` (label 1) and detect X and Y.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckKind {
    X,
    Z,
}

impl CheckKind {
    /// Whether a Pauli error on a neighbouring qubit commutes with this check.
    #[inline]
    pub fn commutes(self, p: Pauli) -> bool {
        match self {
            CheckKind::X => matches!(p, Pauli::I | Pauli::X),
            CheckKind::Z => matches!(p, Pauli::I | Pauli::Z),
        }
    }
}

/// Bipartite graph with edges stored check-major.
#[derive(Clone, Debug)]
pub struct TannerGraph {
    n_vars: usize,
    kinds: Vec<CheckKind>,
    check_start: Vec<usize>,
    edge_var: Vec<usize>,
    edge_check: Vec<usize>,
    var_edges: Vec<Vec<usize>>,
}

impl TannerGraph {
    /// Joint graph of stacked check matrices, one kind per block.
    pub fn from_blocks(blocks: &[(&BinaryMatrix, CheckKind)]) -> Result<Self> {
        let n_vars = blocks.first().map_or(0, |(h, _)| h.cols());
        let mut kinds = Vec::new();
        let mut check_start = vec![0];
        let mut edge_var = Vec::new();
        let mut edge_check = Vec::new();
        let mut var_edges = vec![Vec::new(); n_vars];
        for (h, kind) in blocks {
            if h.cols() != n_vars {
                return Err(Error::LengthMismatch {
                    expected: n_vars,
                    found: h.cols(),
                });
            }
            for r in 0..h.rows() {
                for v in h.row(r).ones() {
                    var_edges[v].push(edge_var.len());
                    edge_var.push(v);
                    edge_check.push(kinds.len());
                }
                kinds.push(*kind);
                check_start.push(edge_var.len());
            }
        }
        Ok(TannerGraph {
            n_vars,
            kinds,
            check_start,
            edge_var,
            edge_check,
            var_edges,
        })
    }

    pub fn from_matrix(h: &BinaryMatrix, kind: CheckKind) -> Self {
        Self::from_blocks(&[(h, kind)]).expect("single block")
    }

    pub fn vars(&self) -> usize {
        self.n_vars
    }

    pub fn checks(&self) -> usize {
        self.kinds.len()
    }

    pub fn edges(&self) -> usize {
        self.edge_var.len()
    }

    pub fn kind(&self, c: usize) -> CheckKind {
        self.kinds[c]
    }

    pub fn check_vars(&self, c: usize) -> &[usize] {
        &self.edge_var[self.check_start[c]..self.check_start[c + 1]]
    }

    pub fn var_degree(&self, v: usize) -> usize {
        self.var_edges[v].len()
    }

    /// Back to a 0/1 matrix (all kinds together, in check order).
    pub fn to_matrix(&self) -> BinaryMatrix {
        let mut m = BinaryMatrix::zeros(self.checks(), self.n_vars);
        for c in 0..self.checks() {
            for &v in self.check_vars(c) {
                m.set(c, v, true);
            }
        }
        m
    }

    fn check_range(&self, c: usize) -> std::ops::Range<usize> {
        self.check_start[c]..self.check_start[c + 1]
    }

    /// Syndrome of a Pauli error on the variable nodes.
    pub fn syndrome_of(&self, e: &PauliVector) -> BitVector {
        let mut s = BitVector::zeros(self.checks());
        for c in 0..self.checks() {
            let kind = self.kinds[c];
            let parity = self
                .check_vars(c)
                .iter()
                .filter(|&&v| !kind.commutes(e.get(v)))
                .count()
                & 1;
            s.set(c, parity == 1);
        }
        s
    }
}

/// The three graphs used for decoding a code: `hx` alone, `hz` alone, and joint.
#[derive(Clone, Debug)]
pub struct Graphs {
    pub x: TannerGraph,
    pub z: TannerGraph,
    pub joint: TannerGraph,
}

pub fn build_graphs(code: &EaCode) -> Graphs {
    Graphs {
        x: TannerGraph::from_matrix(&code.hx, CheckKind::X),
        z: TannerGraph::from_matrix(&code.hz, CheckKind::Z),
        joint: TannerGraph::from_blocks(&[(&code.hx, CheckKind::X), (&code.hz, CheckKind::Z)])
            .expect("equal column counts"),
    }
}

/// `(sx, sz) = (hx·e_zᵀ, hz·e_xᵀ)` on the transmitted qubits.
pub fn syndrome(code: &EaCode, e: &PauliVector) -> Result<(BitVector, BitVector)> {
    if e.qubits() != code.n {
        return Err(Error::LengthMismatch {
            expected: code.n,
            found: e.qubits(),
        });
    }
    Ok((code.hx.mul_vec(e.z())?, code.hz.mul_vec(e.x())?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum DecoderKind {
    #[serde(rename = "binary")]
    Binary,
    #[serde(rename = "quat")]
    Quaternary,
    #[serde(rename = "quat-minsum")]
    QuaternaryMinSum,
}

impl DecoderKind {
    pub const ALL: [DecoderKind; 3] = [
        DecoderKind::Binary,
        DecoderKind::Quaternary,
        DecoderKind::QuaternaryMinSum,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            DecoderKind::Binary => "binary",
            DecoderKind::Quaternary => "quat",
            DecoderKind::QuaternaryMinSum => "quat-minsum",
        }
    }
}

impl fmt::Display for DecoderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DecoderKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        DecoderKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| invalid(format!("unknown decoder '{s}'")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DecoderConfig {
    pub kind: DecoderKind,
    pub lmax: usize,
    pub pd: f64,
}

impl DecoderConfig {
    pub fn new(kind: DecoderKind, lmax: usize, pd: f64) -> Result<Self> {
        if lmax == 0 {
            return Err(invalid("lmax must be at least 1"));
        }
        if !(0.0..=1.0).contains(&pd) {
            return Err(invalid(format!("pd = {pd} is outside [0, 1]")));
        }
        Ok(DecoderConfig { kind, lmax, pd })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecodeOutcome {
    pub estimate: PauliVector,
    pub converged: bool,
    pub iterations: usize,
}

#[inline]
fn clamp(x: f64) -> f64 {
    x.clamp(-MAX_MESSAGE, MAX_MESSAGE)
}

/// `max(a, b) + ln(1 + e^{-|a-b|})`, i.e. `ln(e^a + e^b)`.
#[inline]
pub fn fmax(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY && b == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    a.max(b) + (-(a - b).abs()).exp().ln_1p()
}

/// Leave-one-out check rule: `out[i] = 2·(-1)^s·atanh(∏_{j≠i} tanh(inputs[j]/2))`,
/// or its min-sum form `(-1)^s·∏ sign·min |·|`. An empty product is 1.
pub fn check_update(inputs: &[f64], syndrome: bool, minsum: bool, out: &mut [f64]) {
    let d = inputs.len();
    let sign = if syndrome { -1.0 } else { 1.0 };
    if minsum {
        let mut parity = 1.0;
        let (mut min1, mut min2, mut arg) = (f64::INFINITY, f64::INFINITY, usize::MAX);
        for (i, &x) in inputs.iter().enumerate() {
            if x < 0.0 {
                parity = -parity;
            }
            let a = x.abs();
            if a < min1 {
                min2 = min1;
                min1 = a;
                arg = i;
            } else if a < min2 {
                min2 = a;
            }
        }
        for (i, o) in out.iter_mut().enumerate().take(d) {
            let own = if inputs[i] < 0.0 { -1.0 } else { 1.0 };
            let m = if i == arg { min2 } else { min1 };
            *o = clamp(sign * parity * own * m);
        }
        return;
    }
    // Prefix and suffix products avoid dividing by a zero tanh.
    let t: Vec<f64> = inputs.iter().map(|&x| (x / 2.0).tanh()).collect();
    let mut prefix = vec![1.0; d + 1];
    for i in 0..d {
        prefix[i + 1] = prefix[i] * t[i];
    }
    let mut suffix = 1.0;
    for i in (0..d).rev() {
        let prod = (prefix[i] * suffix).clamp(-1.0 + ATANH_EPS, 1.0 - ATANH_EPS);
        out[i] = clamp(sign * 2.0 * prod.atanh());
        suffix *= t[i];
    }
}

fn binary_prior(pd: f64) -> f64 {
    clamp(((1.0 - pd) / pd).ln())
}

/// Binary sum-product decoding of one graph. Returns the bit estimate, whether it
/// reproduces `s`, and the iteration at which it stopped.
pub fn decode_binary_graph(g: &TannerGraph, s: &BitVector, pd: f64, lmax: usize) -> (BitVector, bool, usize) {
    let prior = binary_prior(pd);
    let mut est = BitVector::zeros(g.vars());
    if prior < 0.0 {
        for v in 0..g.vars() {
            est.set(v, true);
        }
    }
    if bits_syndrome(g, &est) == *s {
        return (est, true, 0);
    }
    let mut v2c = vec![prior; g.edges()];
    let mut c2v = vec![0.0; g.edges()];
    let mut inbuf = Vec::new();
    let mut outbuf = Vec::new();
    for it in 1..=lmax {
        for c in 0..g.checks() {
            let r = g.check_range(c);
            inbuf.clear();
            inbuf.extend_from_slice(&v2c[r.clone()]);
            outbuf.resize(inbuf.len(), 0.0);
            check_update(&inbuf, s.get(c), false, &mut outbuf);
            c2v[r].copy_from_slice(&outbuf);
        }
        for v in 0..g.vars() {
            let edges = &g.var_edges[v];
            let total: f64 = prior + edges.iter().map(|&e| c2v[e]).sum::<f64>();
            for &e in edges {
                v2c[e] = clamp(total - c2v[e]);
            }
            est.set(v, total < 0.0);
        }
        if bits_syndrome(g, &est) == *s {
            return (est, true, it);
        }
    }
    (est, false, lmax)
}

fn bits_syndrome(g: &TannerGraph, bits: &BitVector) -> BitVector {
    let mut s = BitVector::zeros(g.checks());
    for c in 0..g.checks() {
        let parity = g.check_vars(c).iter().filter(|&&v| bits.get(v)).count() & 1;
        s.set(c, parity == 1);
    }
    s
}

/// Two independent binary decoders; Z part from the `hx` graph, X part from the `hz` graph.
pub fn decode_binary(gx: &TannerGraph, gz: &TannerGraph, sx: &BitVector, sz: &BitVector, cfg: &DecoderConfig) -> DecodeOutcome {
    let (ez, okx, itx) = decode_binary_graph(gx, sx, cfg.pd, cfg.lmax);
    let (ex, okz, itz) = decode_binary_graph(gz, sz, cfg.pd, cfg.lmax);
    DecodeOutcome {
        estimate: PauliVector::new(ex, ez, 0).expect("equal lengths"),
        converged: okx && okz,
        iterations: itx.max(itz),
    }
}

fn quaternary_prior(pd: f64) -> [f64; 4] {
    let lambda = if pd >= 1.0 {
        MAX_MESSAGE
    } else {
        clamp((pd / (3.0 * (1.0 - pd))).ln())
    };
    [0.0, lambda, lambda, lambda]
}

#[inline]
fn scalarize(kind: CheckKind, l: &[f64; 4], minsum: bool) -> f64 {
    let f = |a: f64, b: f64| if minsum { a.max(b) } else { fmax(a, b) };
    match kind {
        // Commuting {I, X}, anticommuting {Y, Z}.
        CheckKind::X => f(l[0], l[1]) - f(l[2], l[3]),
        // Commuting {I, Z}, anticommuting {X, Y}.
        CheckKind::Z => f(l[0], l[3]) - f(l[1], l[2]),
    }
}

#[inline]
fn add_check_message(kind: CheckKind, mu: f64, acc: &mut [f64; 4], sign: f64) {
    for (k, p) in Pauli::ALL.iter().enumerate() {
        if !kind.commutes(*p) {
            acc[k] -= sign * mu;
        }
    }
}

fn argmax(l: &[f64; 4]) -> Pauli {
    let mut best = 0;
    for k in 1..4 {
        if l[k] > l[best] {
            best = k;
        }
    }
    Pauli::ALL[best]
}

struct QuaternaryRun {
    estimate: Vec<Pauli>,
    converged: bool,
    iterations: usize,
    first_messages: Vec<f64>,
}

fn run_quaternary(g: &TannerGraph, s: &BitVector, pd: f64, lmax: usize, minsum: bool, record_first: bool) -> QuaternaryRun {
    let prior = quaternary_prior(pd);
    let start = argmax(&prior);
    let mut estimate = vec![start; g.vars()];
    let matches = |est: &[Pauli]| -> bool {
        (0..g.checks()).all(|c| {
            let kind = g.kind(c);
            let parity = g.check_vars(c).iter().filter(|&&v| !kind.commutes(est[v])).count() & 1;
            (parity == 1) == s.get(c)
        })
    };
    let mut first_messages = Vec::new();
    if matches(&estimate) {
        return QuaternaryRun {
            estimate,
            converged: true,
            iterations: 0,
            first_messages,
        };
    }
    let mut v2c = vec![prior; g.edges()];
    let mut c2v = vec![0.0; g.edges()];
    let mut inbuf = Vec::new();
    let mut outbuf = Vec::new();
    for it in 1..=lmax {
        for c in 0..g.checks() {
            let kind = g.kind(c);
            let r = g.check_range(c);
            inbuf.clear();
            inbuf.extend(v2c[r.clone()].iter().map(|l| scalarize(kind, l, minsum)));
            outbuf.resize(inbuf.len(), 0.0);
            check_update(&inbuf, s.get(c), minsum, &mut outbuf);
            c2v[r].copy_from_slice(&outbuf);
        }
        if record_first && it == 1 {
            first_messages = c2v.clone();
        }
        for (v, slot) in estimate.iter_mut().enumerate() {
            let edges = &g.var_edges[v];
            let mut total = prior;
            for &e in edges {
                add_check_message(g.kinds[g.edge_check[e]], c2v[e], &mut total, 1.0);
            }
            for &e in edges {
                let mut msg = total;
                add_check_message(g.kinds[g.edge_check[e]], c2v[e], &mut msg, -1.0);
                v2c[e] = msg;
            }
            *slot = argmax(&total);
        }
        if matches(&estimate) {
            return QuaternaryRun {
                estimate,
                converged: true,
                iterations: it,
                first_messages,
            };
        }
    }
    QuaternaryRun {
        estimate,
        converged: false,
        iterations: lmax,
        first_messages,
    }
}

/// Quaternary sum-product (or min-sum) decoding on the joint graph.
pub fn decode_quaternary(joint: &TannerGraph, sx: &BitVector, sz: &BitVector, cfg: &DecoderConfig) -> DecodeOutcome {
    let s = sx.concat(sz);
    let minsum = cfg.kind == DecoderKind::QuaternaryMinSum;
    let run = run_quaternary(joint, &s, cfg.pd, cfg.lmax, minsum, false);
    DecodeOutcome {
        estimate: PauliVector::from_paulis(&run.estimate),
        converged: run.converged,
        iterations: run.iterations,
    }
}

/// Check-to-variable messages after the first quaternary iteration, edge order.
/// Empty if decoding stopped at iteration 0.
pub fn quaternary_first_messages(joint: &TannerGraph, s: &BitVector, pd: f64, minsum: bool) -> Vec<f64> {
    run_quaternary(joint, s, pd, 1, minsum, true).first_messages
}

/// A configured decoder for one code; reusable and shareable across threads.
#[derive(Clone, Debug)]
pub struct Decoder {
    cfg: DecoderConfig,
    graphs: Graphs,
}

impl Decoder {
    pub fn new(code: &EaCode, cfg: DecoderConfig) -> Self {
        Decoder {
            cfg,
            graphs: build_graphs(code),
        }
    }

    pub fn config(&self) -> &DecoderConfig {
        &self.cfg
    }

    pub fn graphs(&self) -> &Graphs {
        &self.graphs
    }

    pub fn decode(&self, sx: &BitVector, sz: &BitVector) -> DecodeOutcome {
        match self.cfg.kind {
            DecoderKind::Binary => decode_binary(&self.graphs.x, &self.graphs.z, sx, sz, &self.cfg),
            _ => decode_quaternary(&self.graphs.joint, sx, sz, &self.cfg),
        }
    }
}

/// Enumerates Pauli errors on `n` qubits by increasing weight; within a weight,
/// supports in lexicographic order and Paulis in order X, Y, Z.
pub fn for_each_error_up_to(n: usize, max_weight: usize, mut f: impl FnMut(&PauliVector) -> bool) {
    let mut e = PauliVector::identity(n);
    if !f(&e) {
        return;
    }
    for w in 1..=max_weight.min(n) {
        let mut support: Vec<usize> = (0..w).collect();
        loop {
            let mut digits = vec![0usize; w];
            loop {
                for (k, &q) in support.iter().enumerate() {
                    e.set(q, Pauli::ALL[digits[k] + 1]);
                }
                if !f(&e) {
                    return;
                }
                // Next Pauli assignment.
                let mut k = w;
                while k > 0 {
                    k -= 1;
                    digits[k] += 1;
                    if digits[k] < 3 {
                        break;
                    }
                    digits[k] = 0;
                    if k == 0 {
                        k = usize::MAX;
                        break;
                    }
                }
                if k == usize::MAX {
                    break;
                }
            }
            for &q in &support {
                e.set(q, Pauli::I);
            }
            // Next support.
            let mut i = w;
            let mut advanced = false;
            while i > 0 {
                i -= 1;
                if support[i] < n - w + i {
                    support[i] += 1;
                    for j in i + 1..w {
                        support[j] = support[j - 1] + 1;
                    }
                    advanced = true;
                    break;
                }
            }
            if !advanced {
                break;
            }
        }
    }
}

/// Lookup-table decoder returning a minimum-weight error for each syndrome.
/// Ties go to the first error in [`for_each_error_up_to`] order.
#[derive(Clone, Debug)]
pub struct MinWeightDecoder {
    n: usize,
    table: HashMap<BitVector, PauliVector>,
    complete: bool,
}

impl MinWeightDecoder {
    /// Enumerate errors up to `max_weight`, stopping early once every reachable
    /// syndrome has an entry.
    pub fn new(code: &EaCode, max_weight: usize) -> Self {
        let graph = TannerGraph::from_blocks(&[(&code.hx, CheckKind::X), (&code.hz, CheckKind::Z)])
            .expect("equal column counts");
        let reachable_bits = code.gfrank_hx() + code.gfrank_hz();
        let reachable = if reachable_bits < 63 { 1u64 << reachable_bits } else { u64::MAX };
        let mut table = HashMap::new();
        let mut complete = false;
        for_each_error_up_to(code.n, max_weight, |e| {
            table.entry(graph.syndrome_of(e)).or_insert_with(|| e.clone());
            if table.len() as u64 >= reachable {
                complete = true;
                return false;
            }
            true
        });
        MinWeightDecoder {
            n: code.n,
            table,
            complete,
        }
    }

    /// True iff every syndrome of the code has an entry.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn qubits(&self) -> usize {
        self.n
    }

    pub fn decode(&self, sx: &BitVector, sz: &BitVector) -> Option<&PauliVector> {
        self.table.get(&sx.concat(sz))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eacode::build_theorem5;
    use crate::girth::girth_bfs;

    fn example3() -> EaCode {
        build_theorem5(3, 1, 1).unwrap()
    }

    #[test]
    fn graphs_match_matrices() {
        let code = example3();
        let g = build_graphs(&code);
        assert_eq!(g.joint.vars(), 9);
        assert_eq!(g.joint.checks(), 6);
        assert_eq!(g.x.to_matrix(), code.hx);
        assert_eq!(g.z.to_matrix(), code.hz);
        assert_eq!(g.joint.to_matrix(), code.hx.vstack(&code.hz).unwrap());
        assert!(girth_bfs(&g.joint.to_matrix(), 12).exceeds(4));
        assert_eq!(g.joint.kind(0), CheckKind::X);
        assert_eq!(g.joint.kind(5), CheckKind::Z);
    }

    #[test]
    fn syndrome_examples() {
        let code = example3();
        let (sx, sz) = syndrome(&code, &PauliVector::identity(9)).unwrap();
        assert!(sx.is_zero() && sz.is_zero());
        let (sx, sz) = syndrome(&code, &PauliVector::single(9, 0, Pauli::X)).unwrap();
        assert!(sx.is_zero());
        assert_eq!(sz, code.hz.column(0));
        assert!(syndrome(&code, &PauliVector::identity(10)).is_err());
        // The joint graph agrees with the split syndromes.
        let g = build_graphs(&code);
        let e = PauliVector::from_paulis(&[Pauli::Y, Pauli::I, Pauli::Z, Pauli::X, Pauli::I, Pauli::I, Pauli::Y, Pauli::I, Pauli::I]);
        let (sx, sz) = syndrome(&code, &e).unwrap();
        assert_eq!(g.joint.syndrome_of(&e), sx.concat(&sz));
    }

    #[test]
    fn fmax_kernel() {
        assert!((fmax(1.5, 1.5) - (1.5 + 2f64.ln())).abs() < 1e-12);
        assert!((fmax(0.3, -2.0) - (0.3f64.exp() + (-2.0f64).exp()).ln()).abs() < 1e-12);
        assert_eq!(fmax(f64::NEG_INFINITY, f64::NEG_INFINITY), f64::NEG_INFINITY);
    }

    #[test]
    fn check_rule_sign_flip() {
        let inputs = [1.2, -0.4, 3.0, 0.7];
        for minsum in [false, true] {
            let mut a = [0.0; 4];
            let mut b = [0.0; 4];
            check_update(&inputs, false, minsum, &mut a);
            check_update(&inputs, true, minsum, &mut b);
            for i in 0..4 {
                assert_eq!(a[i], -b[i]);
            }
        }
        // Direct evaluation of one message.
        let mut out = [0.0; 4];
        check_update(&inputs, false, false, &mut out);
        let prod: f64 = inputs[1..].iter().map(|x| (x / 2.0).tanh()).product();
        assert!((out[0] - 2.0 * prod.atanh()).abs() < 1e-12);
        check_update(&inputs, false, true, &mut out);
        assert_eq!(out[0], -0.4);
        assert_eq!(out[1], 0.7);
        // Degree one: the empty product is 1, capped by the atanh guard.
        let mut one = [0.0];
        check_update(&[0.1], false, false, &mut one);
        assert_eq!(one[0], 2.0 * (1.0 - ATANH_EPS).atanh());
    }

    #[test]
    fn uniform_prior_is_zero() {
        assert_eq!(quaternary_prior(0.75), [0.0; 4]);
        assert!(binary_prior(0.01) > 0.0);
    }

    #[test]
    fn zero_syndrome_stops_at_iteration_zero() {
        let code = example3();
        for kind in DecoderKind::ALL {
            let d = Decoder::new(&code, DecoderConfig::new(kind, 100, 0.05).unwrap());
            let out = d.decode(&BitVector::zeros(3), &BitVector::zeros(3));
            assert!(out.converged);
            assert_eq!(out.iterations, 0);
            assert!(out.estimate.is_identity());
        }
    }

    #[test]
    fn single_errors_reproduce_the_syndrome() {
        for (p, l) in [(5, 2), (7, 3)] {
            let code = build_theorem5(p, l, l).unwrap();
            for kind in DecoderKind::ALL {
                let d = Decoder::new(&code, DecoderConfig::new(kind, 100, 0.05).unwrap());
                for q in 0..code.n {
                    for pa in [Pauli::X, Pauli::Y, Pauli::Z] {
                        let e = PauliVector::single(code.n, q, pa);
                        let (sx, sz) = syndrome(&code, &e).unwrap();
                        let out = d.decode(&sx, &sz);
                        assert!(out.converged, "{kind} {pa:?}{q}");
                        assert_eq!(syndrome(&code, &out.estimate).unwrap(), (sx, sz));
                    }
                }
            }
        }
    }

    #[test]
    fn degree_one_variables_never_flip_in_binary_decoding() {
        // Every qubit of the p = 3 code sits in one X check and one Z check, so the
        // incoming message is weaker than the prior and the estimate stays at zero.
        let code = example3();
        let d = Decoder::new(&code, DecoderConfig::new(DecoderKind::Binary, 100, 0.05).unwrap());
        for q in 0..9 {
            let (sx, sz) = syndrome(&code, &PauliVector::single(9, q, Pauli::X)).unwrap();
            let out = d.decode(&sx, &sz);
            assert!(!out.converged);
            assert!(out.estimate.is_identity());
        }
    }

    #[test]
    fn first_messages_are_symmetric_under_uniform_prior() {
        let code = build_theorem5(5, 2, 2).unwrap();
        let g = build_graphs(&code);
        // Force one iteration with a nonzero syndrome so decoding does not stop at 0,
        // then compare with the all-zero-syndrome run from a uniform prior.
        let s = BitVector::zeros(g.joint.checks());
        let msgs = quaternary_first_messages(&g.joint, &s, 0.75, false);
        // A uniform prior already satisfies the zero syndrome only if I wins argmax.
        assert!(msgs.is_empty());
        let mut s1 = s.clone();
        s1.set(0, true);
        let msgs = quaternary_first_messages(&g.joint, &s1, 0.75, false);
        assert_eq!(msgs.len(), g.joint.edges());
        // Zero scalarized inputs give zero messages everywhere.
        assert!(msgs.iter().all(|&m| m == msgs[0]));
        let msgs = quaternary_first_messages(&g.joint, &s1, 0.05, false);
        let unsat: Vec<f64> = msgs[g.joint.check_range(1)].to_vec();
        assert!(unsat.iter().all(|&m| (m - unsat[0]).abs() < 1e-12));
    }

    #[test]
    fn error_enumeration_order_and_count() {
        let mut seen = Vec::new();
        for_each_error_up_to(3, 2, |e| {
            seen.push(e.to_string());
            true
        });
        assert_eq!(seen.len(), 1 + 9 + 27);
        assert_eq!(seen[0], "+III");
        assert_eq!(&seen[1..4], &["+XII", "-iYII", "+ZII"]);
        let unique: std::collections::HashSet<_> = seen.iter().collect();
        assert_eq!(unique.len(), seen.len());
        let mut count = 0;
        for_each_error_up_to(4, 4, |_| {
            count += 1;
            true
        });
        assert_eq!(count, 256);
    }

    #[test]
    fn min_weight_table_is_complete_for_small_code() {
        let code = example3();
        let mw = MinWeightDecoder::new(&code, 9);
        assert!(mw.is_complete());
        assert_eq!(mw.len(), 1 << 6);
        for q in 0..9 {
            let e = PauliVector::single(9, q, Pauli::Z);
            let (sx, sz) = syndrome(&code, &e).unwrap();
            assert_eq!(mw.decode(&sx, &sz).unwrap().weight(), 1);
        }
    }

    #[test]
    fn config_validation() {
        assert!(DecoderConfig::new(DecoderKind::Binary, 0, 0.1).is_err());
        assert!(DecoderConfig::new(DecoderKind::Binary, 10, 1.1).is_err());
        assert_eq!("quat-minsum".parse::<DecoderKind>().unwrap(), DecoderKind::QuaternaryMinSum);
        assert!("ldpc".parse::<DecoderKind>().is_err());
    }
}
