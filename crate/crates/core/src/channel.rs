//! Depolarizing noise with first-order Markov correlation along the qubit line.
//!
//! Qubit 0 is drawn from the marginal `(1-pd, pd/3, pd/3, pd/3)` over `I, X, Y, Z`.
//! Each later qubit repeats its predecessor with probability `eta` and is otherwise
//! drawn afresh from the marginal, which keeps every qubit's marginal unchanged.
//!
//! Draw order per qubit: qubit 0 uses one uniform for the marginal. Every later
//! qubit uses one uniform for the repeat decision and, only when not repeating,
//! a second uniform for the marginal.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::clifford::{Pauli, PauliVector};
use crate::error::{invalid, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ChannelParams {
    pub pd: f64,
    pub eta: f64,
}

impl ChannelParams {
    pub fn new(pd: f64, eta: f64) -> Result<Self> {
        for (name, v) in [("pd", pd), ("eta", eta)] {
            if !(0.0..=1.0).contains(&v) {
                return Err(invalid(format!("{name} = {v} is outside [0, 1]")));
            }
        }
        Ok(ChannelParams { pd, eta })
    }

    pub fn depolarizing(pd: f64) -> Result<Self> {
        Self::new(pd, 0.0)
    }

    fn marginal<R: Rng + ?Sized>(&self, rng: &mut R) -> Pauli {
        let u: f64 = rng.gen();
        if u >= self.pd {
            return Pauli::I;
        }
        let third = self.pd / 3.0;
        match (u / third) as usize {
            0 => Pauli::X,
            1 => Pauli::Y,
            _ => Pauli::Z,
        }
    }
}

/// Per-trial seed: SplitMix64 finalizer applied to `master + (trial + 1)·γ`.
pub fn trial_seed(master: u64, trial: u64) -> u64 {
    let mut z = master.wrapping_add(trial.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn trial_rng(master: u64, trial: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(trial_seed(master, trial))
}

pub fn sample_error_with<R: Rng + ?Sized>(n: usize, params: &ChannelParams, rng: &mut R) -> PauliVector {
    let mut paulis = Vec::with_capacity(n);
    for j in 0..n {
        let p = if j > 0 && rng.gen::<f64>() < params.eta {
            paulis[j - 1]
        } else {
            params.marginal(rng)
        };
        paulis.push(p);
    }
    PauliVector::from_paulis(&paulis)
}

pub fn sample_error(n: usize, params: &ChannelParams, seed: u64) -> PauliVector {
    sample_error_with(n, params, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Maximal runs of consecutive non-identity qubits, as `(start, length)`.
pub fn bursts(e: &PauliVector) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut start = None;
    for i in 0..=e.qubits() {
        let active = i < e.qubits() && e.get(i) != Pauli::I;
        match (active, start) {
            (true, None) => start = Some(i),
            (false, Some(s)) => {
                out.push((s, i - s));
                start = None;
            }
            _ => {}
        }
    }
    out
}
