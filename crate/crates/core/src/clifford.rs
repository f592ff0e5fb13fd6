//! Pauli operators with phase, Clifford conjugation, and the three transversal
//! gate sequences of the prime-order construction.
//!
//! A Pauli on `q` qubits is stored as `i^phase · X^x · Z^z`, where `X^x` and `Z^z`
//! are tensor products over qubits. With this convention `Y = i·X·Z`, so a bare
//! `(x, z) = (1, 1)` with phase 0 is `-i·Y`.

use std::fmt;

use serde::Serialize;

use crate::eacode::EaCode;
use crate::error::{Error, Result};
use crate::gf2::{BinaryMatrix, BitVector, RowSpace};
use crate::models::is_odd_prime;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

    pub fn from_bits(x: bool, z: bool) -> Pauli {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    pub fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn letter(self) -> char {
        ['I', 'X', 'Y', 'Z'][self as usize]
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliVector {
    x: BitVector,
    z: BitVector,
    phase: u8,
}

impl PauliVector {
    pub fn new(x: BitVector, z: BitVector, phase: u8) -> Result<Self> {
        if x.len() != z.len() {
            return Err(Error::LengthMismatch {
                expected: x.len(),
                found: z.len(),
            });
        }
        Ok(PauliVector { x, z, phase: phase % 4 })
    }

    pub fn identity(qubits: usize) -> Self {
        PauliVector {
            x: BitVector::zeros(qubits),
            z: BitVector::zeros(qubits),
            phase: 0,
        }
    }

    /// `X` on `xs` times `Z` on `zs`, phase 0.
    pub fn from_support(qubits: usize, xs: &[usize], zs: &[usize]) -> Self {
        PauliVector {
            x: BitVector::from_support(qubits, xs),
            z: BitVector::from_support(qubits, zs),
            phase: 0,
        }
    }

    /// Split a symplectic row `(x | z)` of length `2q`.
    pub fn from_symplectic(row: &BitVector) -> Result<Self> {
        if !row.len().is_multiple_of(2) {
            return Err(Error::LengthMismatch {
                expected: row.len() + 1,
                found: row.len(),
            });
        }
        let q = row.len() / 2;
        Ok(PauliVector {
            x: row.slice(0, q),
            z: row.slice(q, q),
            phase: 0,
        })
    }

    /// Exactly the single-qubit Pauli `p` on `index` (so `Y` carries phase 1).
    pub fn single(qubits: usize, index: usize, p: Pauli) -> Self {
        let mut v = PauliVector::identity(qubits);
        v.set(index, p);
        if p == Pauli::Y {
            v.phase = 1;
        }
        v
    }

    /// Build from one Pauli per qubit, phase 0.
    pub fn from_paulis(paulis: &[Pauli]) -> Self {
        let mut v = PauliVector::identity(paulis.len());
        for (i, &p) in paulis.iter().enumerate() {
            v.set(i, p);
        }
        v
    }

    pub fn qubits(&self) -> usize {
        self.x.len()
    }

    pub fn x(&self) -> &BitVector {
        &self.x
    }

    pub fn z(&self) -> &BitVector {
        &self.z
    }

    pub fn phase(&self) -> u8 {
        self.phase
    }

    pub fn with_phase(mut self, phase: u8) -> Self {
        self.phase = phase % 4;
        self
    }

    pub fn get(&self, i: usize) -> Pauli {
        Pauli::from_bits(self.x.get(i), self.z.get(i))
    }

    /// Overwrite the bits of qubit `i`; the phase is left untouched.
    pub fn set(&mut self, i: usize, p: Pauli) {
        let (x, z) = p.bits();
        self.x.set(i, x);
        self.z.set(i, z);
    }

    pub fn weight(&self) -> usize {
        let mut support = self.x.clone();
        for (a, b) in support.words_mut().iter_mut().zip(self.z.words()) {
            *a |= b;
        }
        support.weight()
    }

    pub fn is_identity(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    /// Letters `I, X, Y, Z` per qubit, ignoring the phase.
    pub fn letters(&self) -> String {
        (0..self.qubits()).map(|i| self.get(i).letter()).collect()
    }

    /// `(x | z)` as one bit vector of length `2q`.
    pub fn symplectic(&self) -> BitVector {
        self.x.concat(&self.z)
    }

    /// Symplectic form: 1 iff the operators anticommute.
    pub fn symplectic_product(&self, other: &PauliVector) -> bool {
        self.x.dot(&other.z) ^ self.z.dot(&other.x)
    }

    pub fn commutes_with(&self, other: &PauliVector) -> bool {
        !self.symplectic_product(other)
    }

    /// Operator product `self · other` with exact phase.
    pub fn mul(&self, other: &PauliVector) -> PauliVector {
        let swap = self.z.and(&other.x).weight() as u8 & 1;
        let mut x = self.x.clone();
        x.xor_assign(&other.x);
        let mut z = self.z.clone();
        z.xor_assign(&other.z);
        PauliVector {
            x,
            z,
            phase: (self.phase + other.phase + 2 * swap) % 4,
        }
    }

    /// Same operator up to phase.
    pub fn same_up_to_phase(&self, other: &PauliVector) -> bool {
        self.x == other.x && self.z == other.z
    }

    fn check(&self, q: usize) -> Result<()> {
        if q >= self.qubits() {
            return Err(Error::QubitOutOfRange {
                index: q,
                qubits: self.qubits(),
            });
        }
        Ok(())
    }

    /// Replace `self` by `U · self · U†` for a single gate `U`.
    pub fn conjugate_gate(&mut self, gate: Gate) -> Result<()> {
        match gate {
            Gate::H(q) => {
                self.check(q)?;
                let (x, z) = (self.x.get(q), self.z.get(q));
                if x && z {
                    self.phase = (self.phase + 2) % 4;
                }
                self.x.set(q, z);
                self.z.set(q, x);
            }
            Gate::S(q) | Gate::Sdg(q) => {
                self.check(q)?;
                if self.x.get(q) {
                    self.z.flip(q);
                    let step = if matches!(gate, Gate::S(_)) { 1 } else { 3 };
                    self.phase = (self.phase + step) % 4;
                }
            }
            Gate::Cz(a, b) => {
                self.check(a)?;
                self.check(b)?;
                if a == b {
                    return Err(Error::InvalidParameter("CZ needs two distinct qubits".into()));
                }
                let (xa, xb) = (self.x.get(a), self.x.get(b));
                if xb {
                    self.z.flip(a);
                }
                if xa {
                    self.z.flip(b);
                }
                if xa && xb {
                    self.phase = (self.phase + 2) % 4;
                }
            }
            Gate::Swap(a, b) => {
                self.check(a)?;
                self.check(b)?;
                let (pa, pb) = (self.get(a), self.get(b));
                self.set(a, pb);
                self.set(b, pa);
            }
        }
        Ok(())
    }

    pub fn conjugate(&self, gates: &GateSequence) -> Result<PauliVector> {
        let mut out = self.clone();
        for &g in gates.gates() {
            out.conjugate_gate(g)?;
        }
        Ok(out)
    }
}

impl fmt::Display for PauliVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Each X·Z on one qubit is -i·Y.
        let ys = self.x.and(&self.z).weight();
        let phase = (self.phase as usize + 4 * ys - ys) % 4;
        f.write_str(["+", "+i", "-", "-i"][phase])?;
        for i in 0..self.qubits() {
            write!(f, "{}", self.get(i).letter())?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliVector({self})")
    }
}

/// Primitive Clifford gates; qubit indices are 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gate {
    H(usize),
    S(usize),
    Sdg(usize),
    Cz(usize, usize),
    Swap(usize, usize),
}

impl Gate {
    fn inverse(self) -> Gate {
        match self {
            Gate::S(q) => Gate::Sdg(q),
            Gate::Sdg(q) => Gate::S(q),
            g => g,
        }
    }

    fn max_qubit(self) -> usize {
        match self {
            Gate::H(q) | Gate::S(q) | Gate::Sdg(q) => q,
            Gate::Cz(a, b) | Gate::Swap(a, b) => a.max(b),
        }
    }
}

/// Gates in application order: `gates[0]` acts first.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GateSequence {
    gates: Vec<Gate>,
}

impl GateSequence {
    pub fn new(gates: Vec<Gate>) -> Self {
        GateSequence { gates }
    }

    pub fn identity() -> Self {
        GateSequence::default()
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn push(&mut self, g: Gate) {
        self.gates.push(g);
    }

    /// `self` followed by `other`.
    pub fn then(mut self, other: &GateSequence) -> Self {
        self.gates.extend_from_slice(&other.gates);
        self
    }

    pub fn inverse(&self) -> GateSequence {
        GateSequence {
            gates: self.gates.iter().rev().map(|g| g.inverse()).collect(),
        }
    }

    pub fn validate(&self, qubits: usize) -> Result<()> {
        match self.gates.iter().find(|g| g.max_qubit() >= qubits) {
            Some(g) => Err(Error::QubitOutOfRange {
                index: g.max_qubit(),
                qubits,
            }),
            None => Ok(()),
        }
    }

    pub fn count(&self, pred: impl Fn(&Gate) -> bool) -> usize {
        self.gates.iter().filter(|g| pred(g)).count()
    }
}

/// Stabilizer generators as Pauli operators on a common register.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tableau {
    qubits: usize,
    generators: Vec<PauliVector>,
}

impl Tableau {
    pub fn new(qubits: usize, generators: Vec<PauliVector>) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.qubits() != qubits) {
            return Err(Error::LengthMismatch {
                expected: qubits,
                found: g.qubits(),
            });
        }
        Ok(Tableau { qubits, generators })
    }

    /// Generators `X^row` for rows of `hx` and `Z^row` for rows of `hz`, all with sign +1.
    pub fn css(hx: &BinaryMatrix, hz: &BinaryMatrix) -> Result<Self> {
        if hx.cols() != hz.cols() {
            return Err(Error::DimensionMismatch {
                op: "css tableau",
                left: hx.shape(),
                right: hz.shape(),
            });
        }
        let q = hx.cols();
        let mut gens = Vec::with_capacity(hx.rows() + hz.rows());
        for r in 0..hx.rows() {
            gens.push(PauliVector::new(hx.row(r), BitVector::zeros(q), 0)?);
        }
        for r in 0..hz.rows() {
            gens.push(PauliVector::new(BitVector::zeros(q), hz.row(r), 0)?);
        }
        Tableau::new(q, gens)
    }

    pub fn from_code(code: &EaCode) -> Result<Self> {
        Tableau::css(&code.hex, &code.hez)
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn generators(&self) -> &[PauliVector] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// Rows `(x | z)`, one per generator.
    pub fn symplectic_matrix(&self) -> BinaryMatrix {
        let rows: Vec<BitVector> = self.generators.iter().map(PauliVector::symplectic).collect();
        BinaryMatrix::from_row_vectors(2 * self.qubits, &rows).expect("uniform widths")
    }

    pub fn is_commuting(&self) -> bool {
        let g = &self.generators;
        (0..g.len()).all(|i| (i + 1..g.len()).all(|j| g[i].commutes_with(&g[j])))
    }

    pub fn is_independent(&self) -> bool {
        self.symplectic_matrix().rank() == self.generators.len()
    }

    pub fn conjugate(&self, gates: &GateSequence) -> Result<Tableau> {
        gates.validate(self.qubits)?;
        let generators = self
            .generators
            .iter()
            .map(|g| g.conjugate(gates))
            .collect::<Result<Vec<_>>>()?;
        Ok(Tableau {
            qubits: self.qubits,
            generators,
        })
    }

    /// Product of the generators selected by `mask`, in index order.
    pub fn product(&self, mask: &BitVector) -> PauliVector {
        mask.ones()
            .fold(PauliVector::identity(self.qubits), |acc, i| acc.mul(&self.generators[i]))
    }

    /// Is `op` (phase included) an element of the group generated by `self`?
    pub fn contains(&self, op: &PauliVector) -> Result<bool> {
        let space = RowSpace::with_combinations(&self.symplectic_matrix());
        Ok(self.contains_in(&space, op))
    }

    fn contains_in(&self, space: &RowSpace, op: &PauliVector) -> bool {
        match space.combination(&op.symplectic()) {
            Some(mask) => self.product(&mask).phase == op.phase,
            None => false,
        }
    }
}

/// True iff `after` generates the same stabilizer group as `before`, signs included.
pub fn group_preserved(before: &Tableau, after: &Tableau) -> Result<bool> {
    if before.qubits != after.qubits || before.len() != after.len() {
        return Err(Error::DimensionMismatch {
            op: "group comparison",
            left: (before.len(), before.qubits),
            right: (after.len(), after.qubits),
        });
    }
    let a = before.symplectic_matrix();
    let b = after.symplectic_matrix();
    let rank = a.rank();
    if b.rank() != rank || a.vstack(&b)?.rank() != rank {
        return Ok(false);
    }
    let space = RowSpace::with_combinations(&a);
    Ok(after.generators.iter().all(|g| before.contains_in(&space, g)))
}

fn prime_register(p: u64) -> Result<usize> {
    if !is_odd_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    let p = p as usize;
    Ok(p * p + 1)
}

/// Checks `[I P^i … P^{i(p-1)} | 1]` as X rows for `i = 1..(p-1)/2` and as Z rows
/// for the remaining `i`, on `p²` data qubits plus one ebit qubit last.
pub fn stabilizer_matrix(p: u64) -> Result<Tableau> {
    let q = prime_register(p)?;
    let pu = p as usize;
    let rho = (pu - 1) / 2;
    let row = |i: usize, r: usize| -> Vec<usize> {
        let mut support: Vec<usize> = (0..pu).map(|j| j * pu + (r + i * j) % pu).collect();
        support.push(pu * pu);
        support
    };
    let mut gens = Vec::with_capacity(pu * (pu - 1));
    for i in 1..=rho {
        for r in 0..pu {
            gens.push(PauliVector::from_support(q, &row(i, r), &[]));
        }
    }
    for i in rho + 1..=2 * rho {
        for r in 0..pu {
            gens.push(PauliVector::from_support(q, &[], &row(i, r)));
        }
    }
    Tableau::new(q, gens)
}

/// `H` on every qubit, then the block swaps pairing block `b` with block `p - b`.
pub fn hadamard_swap(p: u64) -> Result<GateSequence> {
    let q = prime_register(p)?;
    let pu = p as usize;
    let mut seq = GateSequence::new((0..q).map(Gate::H).collect());
    for b in 1..=(pu - 1) / 2 {
        for k in 0..pu {
            seq.push(Gate::Swap(b * pu + k, (pu - b) * pu + k));
        }
    }
    Ok(seq)
}

/// CZ between matching qubits of blocks `b` and `p - b`, `S` on block 0, `S†` on the ebit.
pub fn s_cz(p: u64) -> Result<GateSequence> {
    let q = prime_register(p)?;
    let pu = p as usize;
    let mut seq = GateSequence::identity();
    for b in 1..=(pu - 1) / 2 {
        for k in 0..pu {
            seq.push(Gate::Cz(b * pu + k, (pu - b) * pu + k));
        }
    }
    for k in 0..pu {
        seq.push(Gate::S(k));
    }
    seq.push(Gate::Sdg(q - 1));
    Ok(seq)
}

/// `S-CZ` sandwiched between two layers of `H`.
pub fn h_s_cz(p: u64) -> Result<GateSequence> {
    let q = prime_register(p)?;
    let layer = GateSequence::new((0..q).map(Gate::H).collect());
    Ok(layer.clone().then(&s_cz(p)?).then(&layer))
}

/// The named transversal operators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Transversal {
    HadamardSwap,
    SCz,
    HSCz,
}

impl Transversal {
    pub const ALL: [Transversal; 3] = [Transversal::HadamardSwap, Transversal::SCz, Transversal::HSCz];

    pub fn name(&self) -> &'static str {
        match self {
            Transversal::HadamardSwap => "hadamard-swap",
            Transversal::SCz => "s-cz",
            Transversal::HSCz => "h-s-cz",
        }
    }

    pub fn parse(s: &str) -> Option<Transversal> {
        Transversal::ALL.into_iter().find(|t| t.name() == s)
    }

    pub fn gates(&self, p: u64) -> Result<GateSequence> {
        match self {
            Transversal::HadamardSwap => hadamard_swap(p),
            Transversal::SCz => s_cz(p),
            Transversal::HSCz => h_s_cz(p),
        }
    }
}

/// Conjugate pairs `(X̄_i, Z̄_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogicalBasis {
    pub pairs: Vec<(PauliVector, PauliVector)>,
}

impl LogicalBasis {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Checks commutation with every stabilizer, the pairing relations, and
    /// independence modulo the stabilizer group.
    pub fn validate(&self, t: &Tableau) -> Result<()> {
        for (i, (x, z)) in self.pairs.iter().enumerate() {
            for (name, op) in [("X", x), ("Z", z)] {
                if op.qubits() != t.qubits() {
                    return Err(Error::LengthMismatch {
                        expected: t.qubits(),
                        found: op.qubits(),
                    });
                }
                if let Some(g) = t.generators().iter().position(|g| !g.commutes_with(op)) {
                    return Err(Error::NotLogical(format!(
                        "{name}{} anticommutes with generator {g}",
                        i + 1
                    )));
                }
            }
            for (j, (x2, z2)) in self.pairs.iter().enumerate() {
                let want = i == j;
                if x.symplectic_product(z2) != want
                    || (i != j && (x.symplectic_product(x2) || z.symplectic_product(z2)))
                {
                    return Err(Error::NotLogical(format!(
                        "pairs {} and {} violate the canonical relations",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Logical basis of a CSS code on its transmitted qubits: X-type operators from
/// `ker hz` and Z-type from `ker hx`, paired by symplectic Gram-Schmidt; operators
/// that pair with nothing lie in the stabilizer group and are dropped.
pub fn logical_operators(code: &EaCode) -> LogicalBasis {
    let q = code.n + code.c;
    let pad = |v: &BitVector| v.concat(&BitVector::zeros(code.c));
    let mut xs: Vec<BitVector> = code.hz.nullspace().iter().map(pad).collect();
    let mut zs: Vec<BitVector> = code.hx.nullspace().iter().map(pad).collect();
    let mut pairs = Vec::new();
    while let Some(a) = xs.pop() {
        let Some(pos) = zs.iter().position(|b| a.dot(b)) else {
            continue;
        };
        let b = zs.swap_remove(pos);
        for v in xs.iter_mut() {
            if v.dot(&b) {
                v.xor_assign(&a);
            }
        }
        for w in zs.iter_mut() {
            if w.dot(&a) {
                w.xor_assign(&b);
            }
        }
        let zero = BitVector::zeros(q);
        pairs.push((
            PauliVector::new(a, zero.clone(), 0).expect("equal lengths"),
            PauliVector::new(zero, b, 0).expect("equal lengths"),
        ));
    }
    pairs.reverse();
    LogicalBasis { pairs }
}

/// A logical Pauli class `∏ X̄_i^{x_i} Z̄_i^{z_i}`, up to sign.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LogicalClass {
    pub x: Vec<bool>,
    pub z: Vec<bool>,
}

impl LogicalClass {
    pub fn x_bar(k: usize, i: usize) -> Self {
        let mut c = LogicalClass {
            x: vec![false; k],
            z: vec![false; k],
        };
        c.x[i] = true;
        c
    }

    pub fn z_bar(k: usize, i: usize) -> Self {
        let mut c = LogicalClass {
            x: vec![false; k],
            z: vec![false; k],
        };
        c.z[i] = true;
        c
    }

    /// Parse `"X1Z1"`, `"Z2X3Z4"` or `"I"` (1-based indices).
    pub fn parse(k: usize, s: &str) -> Option<Self> {
        let mut c = LogicalClass {
            x: vec![false; k],
            z: vec![false; k],
        };
        if s == "I" {
            return Some(c);
        }
        let mut chars = s.chars().peekable();
        while let Some(kind) = chars.next() {
            let mut digits = String::new();
            while let Some(d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                digits.push(*d);
                chars.next();
            }
            let i: usize = digits.parse().ok()?;
            if i == 0 || i > k {
                return None;
            }
            match kind {
                'X' => c.x[i - 1] ^= true,
                'Z' => c.z[i - 1] ^= true,
                'Y' => {
                    c.x[i - 1] ^= true;
                    c.z[i - 1] ^= true;
                }
                _ => return None,
            }
        }
        Some(c)
    }
}

impl fmt::Display for LogicalClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for i in 0..self.x.len() {
            if self.x[i] {
                write!(f, "X{}", i + 1)?;
                any = true;
            }
            if self.z[i] {
                write!(f, "Z{}", i + 1)?;
                any = true;
            }
        }
        if !any {
            f.write_str("I")?;
        }
        Ok(())
    }
}

impl Serialize for LogicalClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Images `(X̄_i ↦ ·, Z̄_i ↦ ·)` of every logical generator under a gate sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LogicalAction {
    pub images: Vec<(LogicalClass, LogicalClass)>,
}

impl LogicalAction {
    pub fn is_identity(&self) -> bool {
        let k = self.images.len();
        self.images
            .iter()
            .enumerate()
            .all(|(i, (x, z))| *x == LogicalClass::x_bar(k, i) && *z == LogicalClass::z_bar(k, i))
    }
}

/// Express the conjugate of each logical generator in the logical basis, after
/// checking that the sequence preserves the stabilizer group and that every
/// residual is a stabilizer.
pub fn logical_action(t: &Tableau, logicals: &LogicalBasis, gates: &GateSequence) -> Result<LogicalAction> {
    let after = t.conjugate(gates)?;
    if !group_preserved(t, &after)? {
        return Err(Error::GroupNotPreserved);
    }
    logicals.validate(t)?;
    let space = RowSpace::new(&t.symplectic_matrix());
    let k = logicals.len();
    let classify = |op: &PauliVector| -> Result<LogicalClass> {
        let image = op.conjugate(gates)?;
        let mut class = LogicalClass {
            x: vec![false; k],
            z: vec![false; k],
        };
        let mut residual = image.symplectic();
        for (i, (xb, zb)) in logicals.pairs.iter().enumerate() {
            // The X̄_i coefficient is detected by Z̄_i and vice versa.
            if image.symplectic_product(zb) {
                class.x[i] = true;
                residual.xor_assign(&xb.symplectic());
            }
            if image.symplectic_product(xb) {
                class.z[i] = true;
                residual.xor_assign(&zb.symplectic());
            }
        }
        if !space.contains(&residual)? {
            return Err(Error::NotLogical(format!("image {image} leaves the normalizer")));
        }
        Ok(class)
    };
    let images = logicals
        .pairs
        .iter()
        .map(|(x, z)| Ok((classify(x)?, classify(z)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(LogicalAction { images })
}
