//! Entanglement-assisted CSS codes built from pairs of quasi-cyclic parity checks.
//!
//! The ebit count is `c = gfrank(Hx·Hzᵀ)`. Each check matrix is extended by `c`
//! columns acting on the receiver's half of the ebits, chosen so the extended
//! checks commute.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::gf2::{gfrank, BinaryMatrix, ModelMatrix, RowSpace};
use crate::girth::{girth_bfs, Girth};
use crate::models::{
    is_odd_prime, special_prime_model, theorem10_model, theorem6_models, theorem8_model,
    theorem9_model, Scale,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Thm5,
    Thm6,
    Thm7,
    Thm8,
    Thm9,
    Thm10,
    Custom,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Thm5 => "thm5",
            Family::Thm6 => "thm6",
            Family::Thm7 => "thm7",
            Family::Thm8 => "thm8",
            Family::Thm9 => "thm9",
            Family::Thm10 => "thm10",
            Family::Custom => "custom",
        }
    }

    /// Families built from one classical code used for both check types.
    pub fn single_code(&self) -> bool {
        matches!(self, Family::Thm7 | Family::Thm8 | Family::Thm9 | Family::Thm10)
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// An `[[n, k; c]]` entanglement-assisted code with its plain and extended checks.
#[derive(Clone, Debug)]
pub struct EaCode {
    pub family: Family,
    /// Circulant order of the underlying model.
    pub order: u64,
    pub n: usize,
    pub k: usize,
    pub c: usize,
    pub hx: BinaryMatrix,
    pub hz: BinaryMatrix,
    pub hex: BinaryMatrix,
    pub hez: BinaryMatrix,
    rank_hx: usize,
    rank_hz: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CodeParams {
    pub family: Family,
    pub n: usize,
    pub k: usize,
    pub c: usize,
    pub gfrank_hx: usize,
    pub gfrank_hz: usize,
    pub girth_floor: Girth,
}

/// `gfrank(hx · hzᵀ)`.
pub fn ebit_count(hx: &BinaryMatrix, hz: &BinaryMatrix) -> Result<usize> {
    Ok(gfrank(&hx.mul_transpose(hz)?))
}

/// Extend both check matrices by a rank factorization `hx·hzᵀ = Ex·Ezᵀ`, so that
/// `[hx|Ex]·[hz|Ez]ᵀ = 0`.
///
/// `Ez` is the transposed reduced row-echelon basis of `hx·hzᵀ` and `Ex` its
/// pivot columns; since the basis has an identity at the pivots, the product
/// reproduces every row.
pub fn extend(hx: &BinaryMatrix, hz: &BinaryMatrix) -> Result<(BinaryMatrix, BinaryMatrix)> {
    let a = hx.mul_transpose(hz)?;
    let space = RowSpace::new(&a);
    let pivots = space.pivots();
    let ex = BinaryMatrix::from_fn(a.rows(), pivots.len(), |r, t| a.get(r, pivots[t]));
    let ez = space.basis().transpose();
    Ok((hx.hstack(&ex)?, hz.hstack(&ez)?))
}

impl EaCode {
    /// Assemble a code from any pair of check matrices on the same qubits.
    pub fn from_checks(family: Family, order: u64, hx: BinaryMatrix, hz: BinaryMatrix) -> Result<Self> {
        if hx.cols() != hz.cols() {
            return Err(Error::DimensionMismatch {
                op: "code assembly",
                left: hx.shape(),
                right: hz.shape(),
            });
        }
        let n = hx.cols();
        let (hex, hez) = extend(&hx, &hz)?;
        let c = hex.cols() - n;
        let rank_hx = gfrank(&hx);
        let rank_hz = if hx == hz { rank_hx } else { gfrank(&hz) };
        // k1 + k2 - n + c, never negative for a valid pair.
        let k = (2 * n + c)
            .checked_sub(rank_hx + rank_hz + n)
            .ok_or_else(|| Error::CheckFailed("negative logical dimension".into()))?;
        Ok(EaCode {
            family,
            order,
            n,
            k,
            c,
            hx,
            hz,
            hex,
            hez,
            rank_hx,
            rank_hz,
        })
    }

    pub fn gfrank_hx(&self) -> usize {
        self.rank_hx
    }

    pub fn gfrank_hz(&self) -> usize {
        self.rank_hz
    }

    /// Dimension of the classical code with checks `hx`.
    pub fn classical_kx(&self) -> usize {
        self.n - self.rank_hx
    }

    pub fn classical_kz(&self) -> usize {
        self.n - self.rank_hz
    }

    /// Tanner graph of the transmitted qubits only. For single-code families this
    /// is the graph of `H`; otherwise the graph of `[hx; hz]`.
    pub fn unassisted_graph(&self) -> BinaryMatrix {
        if self.hx == self.hz {
            self.hx.clone()
        } else {
            self.hx.vstack(&self.hz).expect("equal column counts")
        }
    }

    /// Full symplectic stabilizer matrix `[hex | 0; 0 | hez]` over `2(n+c)` columns.
    pub fn stabilizer_matrix(&self) -> BinaryMatrix {
        let w = self.n + self.c;
        let top = self.hex.hstack(&BinaryMatrix::zeros(self.hex.rows(), w)).unwrap();
        let bottom = BinaryMatrix::zeros(self.hez.rows(), w).hstack(&self.hez).unwrap();
        top.vstack(&bottom).unwrap()
    }

    /// `hex·hezᵀ = 0`.
    pub fn is_symplectic(&self) -> bool {
        self.hex
            .mul_transpose(&self.hez)
            .map(|m| m.is_zero())
            .unwrap_or(false)
    }

    pub fn params(&self, girth_cap: usize) -> CodeParams {
        CodeParams {
            family: self.family,
            n: self.n,
            k: self.k,
            c: self.c,
            gfrank_hx: self.rank_hx,
            gfrank_hz: self.rank_hz,
            girth_floor: girth_bfs(&self.unassisted_graph(), girth_cap),
        }
    }

    pub fn label(&self) -> String {
        format!("[[{},{};{}]]", self.n, self.k, self.c)
    }
}

fn expect_eq(what: &str, got: usize, want: usize) -> Result<()> {
    if got != want {
        return Err(Error::CheckFailed(format!("{what}: computed {got}, expected {want}")));
    }
    Ok(())
}

fn require_prime(p: u64) -> Result<usize> {
    if !is_odd_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    Ok(p as usize)
}

/// Code from two disjoint sets of block rows of one 4-cycle-free prime model with
/// full first column. Checks `c = 1` and the closed-form `k`.
pub fn build_theorem5_from(model: &ModelMatrix, x_rows: &[usize], z_rows: &[usize]) -> Result<EaCode> {
    let p = require_prime(model.order())?;
    if model.block_cols() != p {
        return Err(invalid("model must have p block columns"));
    }
    let (l1, l2) = (x_rows.len(), z_rows.len());
    if l1 == 0 || l2 == 0 || l1 + l2 > p {
        return Err(invalid(format!("need l1, l2 >= 1 and l1 + l2 <= p (l1={l1}, l2={l2})")));
    }
    let mut all: Vec<usize> = x_rows.iter().chain(z_rows).copied().collect();
    all.sort_unstable();
    if all.windows(2).any(|w| w[0] == w[1]) {
        return Err(invalid("block rows must be distinct and not shared"));
    }
    let hx = model.select_rows(x_rows)?.expand();
    let hz = model.select_rows(z_rows)?.expand();
    let code = EaCode::from_checks(Family::Thm5, p as u64, hx, hz)?;
    expect_eq("ebits", code.c, 1)?;
    let want_k = (p * p + 1 + 2 * (p - 1)).checked_sub(2 * p + (p - 1) * (l1 + l2));
    expect_eq("logical qubits", code.k, want_k.unwrap_or(usize::MAX))?;
    Ok(code)
}

fn theorem5_rows(p: usize, l1: usize, l2: usize) -> (Vec<usize>, Vec<usize>) {
    let x = (1..=l1).map(|i| i % p).collect();
    let z = (l1 + 1..=l1 + l2).map(|i| i % p).collect();
    (x, z)
}

/// Special-model rows `1..=l1` for `Hx` and the next `l2` rows (mod p) for `Hz`.
pub fn theorem5_models(p: u64, l1: usize, l2: usize) -> Result<(ModelMatrix, ModelMatrix)> {
    let pu = require_prime(p)?;
    let model = special_prime_model(p)?;
    let (x, z) = theorem5_rows(pu, l1, l2);
    Ok((model.select_rows(&x)?, model.select_rows(&z)?))
}

/// Code from [`theorem5_models`].
pub fn build_theorem5(p: u64, l1: usize, l2: usize) -> Result<EaCode> {
    let pu = require_prime(p)?;
    let model = special_prime_model(p)?;
    let (x, z) = theorem5_rows(pu, l1, l2);
    build_theorem5_from(&model, &x, &z)
}

pub fn build_theorem6(p: u64, l1: usize, l2: usize) -> Result<EaCode> {
    let pu = require_prime(p)?;
    let (mx, mz) = theorem6_models(p, l1, l2)?;
    let code = EaCode::from_checks(Family::Thm6, p, mx.expand(), mz.expand())?;
    expect_eq("ebits", code.c, pu - 1)?;
    expect_eq("gfrank(hx)", code.rank_hx, pu + (pu - 1) * (l1 - 1))?;
    let want_k = (pu * pu + pu - 1 + 2 * (pu - 1)).checked_sub(3 * pu + (pu - 1) * (l1 + l2));
    expect_eq("logical qubits", code.k, want_k.unwrap_or(usize::MAX))?;
    Ok(code)
}

/// First `l` rows of the special model.
pub fn theorem7_model(p: u64, l: usize) -> Result<ModelMatrix> {
    let pu = require_prime(p)?;
    if l == 0 || 2 * l >= pu {
        return Err(invalid(format!("need 1 <= l and 2l < p (p={p}, l={l})")));
    }
    let rows: Vec<usize> = (0..l).collect();
    special_prime_model(p)?.select_rows(&rows)
}

/// Single code from [`theorem7_model`], used for both check types.
pub fn build_theorem7(p: u64, l: usize) -> Result<EaCode> {
    let pu = require_prime(p)?;
    let h = theorem7_model(p, l)?.expand();
    let code = EaCode::from_checks(Family::Thm7, p, h.clone(), h)?;
    expect_eq("ebits", code.c, pu + (l - 1) * (pu - 1))?;
    expect_eq("logical qubits", code.k, (pu - 1) * (pu - l + 1))?;
    Ok(code)
}

/// Girth-8 family; `k` and `c` are computed exactly and checked against the bounds
/// `k_classical >= (l-3)(w^l+1) + 2` and `c <= 3(w^l+1) - 2`.
pub fn build_theorem8(l: u32, w: u64) -> Result<EaCode> {
    let model = theorem8_model(l, w)?;
    let order = model.order() as usize;
    let h = model.expand();
    let code = EaCode::from_checks(Family::Thm8, model.order(), h.clone(), h)?;
    let k_floor = (l as usize - 3) * order + 2;
    if code.classical_kx() < k_floor {
        return Err(Error::CheckFailed(format!(
            "classical dimension {} below {k_floor}",
            code.classical_kx()
        )));
    }
    if code.c > 3 * order - 2 {
        return Err(Error::CheckFailed(format!("ebits {} above {}", code.c, 3 * order - 2)));
    }
    Ok(code)
}

fn weight4_code(family: Family, model: ModelMatrix) -> Result<EaCode> {
    let order = model.order() as usize;
    let t = model.block_cols();
    let h = model.expand();
    let code = EaCode::from_checks(family, model.order(), h.clone(), h)?;
    let k_floor = (t * order + 3).saturating_sub(4 * order);
    if code.classical_kx() < k_floor {
        return Err(Error::CheckFailed(format!(
            "classical dimension {} below {k_floor}",
            code.classical_kx()
        )));
    }
    if code.c > 4 * order - 3 {
        return Err(Error::CheckFailed(format!("ebits {} above {}", code.c, 4 * order - 3)));
    }
    Ok(code)
}

pub fn build_theorem9(s: &[u32], w: u64, scale: Scale) -> Result<EaCode> {
    weight4_code(Family::Thm9, theorem9_model(s, w, scale)?)
}

pub fn build_theorem10(s: &[u32], w: u64, scale: Scale) -> Result<EaCode> {
    weight4_code(Family::Thm10, theorem10_model(s, w, scale)?)
}
