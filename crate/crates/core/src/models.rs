//! Model-matrix families: random prime tilings, composite tilings, the `i·j` prime
//! model and the closed-form families with girth above four or six.
//!
//! Random constructions take an explicit `u64` seed and draw from a
//! [`ChaCha8Rng`], so a seed reproduces the same matrix on every platform.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid, Error, Result};
use crate::gf2::ModelMatrix;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub fn is_odd_prime(n: u64) -> bool {
    n > 2 && is_prime(n)
}

pub fn is_composite(n: u64) -> bool {
    n >= 4 && !is_prime(n)
}

fn require_odd_prime(p: u64) -> Result<()> {
    if is_odd_prime(p) {
        Ok(())
    } else {
        Err(Error::NotOddPrime(p))
    }
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Parameters that determine a member of the prime tiling class: row `i ≥ 2` is
/// `multipliers[i-2] · base_row`, row 1 is `base_row`, row 0 is zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeModelParams {
    pub p: u64,
    /// `k_1 … k_{p-2}`, pairwise distinct, none equal to 0 or 1.
    pub multipliers: Vec<u64>,
    /// `x_0 … x_{p-1}`, a permutation of `F_p` with `x_0 = 0`.
    pub base_row: Vec<u64>,
}

impl PrimeModelParams {
    pub fn validate(&self) -> Result<()> {
        let p = self.p;
        require_odd_prime(p)?;
        if self.base_row.len() != p as usize || self.base_row.first() != Some(&0) {
            return Err(invalid("base row must have p entries starting with 0"));
        }
        let mut seen = vec![false; p as usize];
        for &x in &self.base_row {
            if x >= p || std::mem::replace(&mut seen[x as usize], true) {
                return Err(invalid("base row must be a permutation of F_p"));
            }
        }
        if self.multipliers.len() != (p - 2) as usize {
            return Err(invalid(format!("expected {} multipliers", p - 2)));
        }
        let mut used = HashSet::new();
        for &k in &self.multipliers {
            if k < 2 || k >= p || !used.insert(k) {
                return Err(invalid(
                    "multipliers must be distinct elements of F_p outside {0, 1}",
                ));
            }
        }
        Ok(())
    }

    /// Draw parameters in a fixed order: first the shuffled nonzero base-row
    /// entries `x_1 … x_{p-1}`, then the shuffled multipliers from `{2 … p-1}`.
    pub fn random<R: Rng + ?Sized>(p: u64, rng: &mut R) -> Result<Self> {
        require_odd_prime(p)?;
        let mut tail: Vec<u64> = (1..p).collect();
        tail.shuffle(rng);
        let mut base_row = Vec::with_capacity(p as usize);
        base_row.push(0);
        base_row.extend(tail);
        let mut multipliers: Vec<u64> = (2..p).collect();
        multipliers.shuffle(rng);
        Ok(PrimeModelParams {
            p,
            multipliers,
            base_row,
        })
    }

    pub fn model(&self) -> Result<ModelMatrix> {
        self.validate()?;
        let p = self.p;
        let mut rows = Vec::with_capacity(p as usize);
        rows.push(vec![0; p as usize]);
        rows.push(self.base_row.clone());
        for &k in &self.multipliers {
            rows.push(self.base_row.iter().map(|&x| k * x % p).collect());
        }
        ModelMatrix::new(p, rows)
    }
}

/// Random member of the prime tiling class.
pub fn construct_prime_model(p: u64, seed: u64) -> Result<ModelMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    PrimeModelParams::random(p, &mut rng)?.model()
}

/// The deterministic prime model with exponent `i·j mod p`.
pub fn special_prime_model(p: u64) -> Result<ModelMatrix> {
    require_odd_prime(p)?;
    let rows = (0..p).map(|i| (0..p).map(|j| i * j % p).collect()).collect();
    ModelMatrix::new(p, rows)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CompositeModelParams {
    pub n: u64,
    pub q: usize,
    pub r: usize,
}

impl CompositeModelParams {
    pub fn validate(&self) -> Result<()> {
        if !is_composite(self.n) {
            return Err(invalid(format!("{} is not composite", self.n)));
        }
        if !(self.q < self.r && (self.r as u64) < self.n) || self.q == 0 {
            return Err(invalid("need 1 <= q < r < n"));
        }
        Ok(())
    }

    /// Number of candidate rows, `(n-1)! / (n-r)!`, saturating at `u128::MAX`.
    pub fn iteration_budget(&self) -> u128 {
        let mut budget: u128 = 1;
        for f in (self.n - self.r as u64 + 1)..self.n {
            budget = budget.saturating_mul(f as u128);
        }
        budget
    }
}

/// Result of one composite-order attempt.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CompositeOutcome {
    Found {
        model: ModelMatrix,
        /// Rejected candidates summed over all rows.
        rejections: u128,
    },
    /// The retry budget for some row was exhausted; the caller should move on
    /// to the next composite order.
    NextOrder { row: usize, rejections: u128 },
}

/// True iff `(a - b) mod n` has pairwise distinct entries.
pub fn difference_is_distinct(a: &[u64], b: &[u64], n: u64) -> bool {
    let mut seen = HashSet::with_capacity(a.len());
    a.iter()
        .zip(b)
        .all(|(&x, &y)| seen.insert((x + n - y % n) % n))
}

/// Composite-order tiling with zero first row and column. Each new row is a random
/// vector of distinct nonzero entries; a candidate whose difference with an earlier
/// row repeats an entry mod `n` is rejected and counted against the budget.
pub fn construct_composite_model(n: u64, q: usize, r: usize, seed: u64) -> Result<CompositeOutcome> {
    let params = CompositeModelParams { n, q, r };
    params.validate()?;
    let budget = params.iteration_budget();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows: Vec<Vec<u64>> = vec![vec![0; r]];
    let mut total_rejections = 0u128;
    let mut pool: Vec<u64> = (1..n).collect();

    for i in 1..q {
        let mut itr = 0u128;
        let mut tried: HashSet<Vec<u64>> = HashSet::new();
        loop {
            if itr >= budget {
                return Ok(CompositeOutcome::NextOrder {
                    row: i,
                    rejections: total_rejections + itr,
                });
            }
            let candidate: Vec<u64> = loop {
                let (head, _) = pool.partial_shuffle(&mut rng, r - 1);
                let tail = head.to_vec();
                if tried.insert(tail.clone()) {
                    break tail;
                }
            };
            let mut full = Vec::with_capacity(r);
            full.push(0);
            full.extend(candidate);
            if rows.iter().all(|prev| difference_is_distinct(&full, prev, n)) {
                rows.push(full);
                total_rejections += itr;
                break;
            }
            itr += 1;
        }
    }
    Ok(CompositeOutcome::Found {
        model: ModelMatrix::new(n, rows)?,
        rejections: total_rejections,
    })
}

/// Try composite orders starting at `start_n` until one admits a `q × r` matrix.
/// Returns the order that succeeded together with the model.
pub fn smallest_composite_model(q: usize, r: usize, start_n: u64, seed: u64) -> Result<(u64, ModelMatrix)> {
    let mut n = start_n.max(r as u64 + 1);
    loop {
        if is_composite(n) {
            match construct_composite_model(n, q, r, seed)? {
                CompositeOutcome::Found { model, .. } => return Ok((n, model)),
                CompositeOutcome::NextOrder { .. } => {}
            }
        }
        n += 1;
        if n > start_n.max(r as u64 + 1) + 10_000 {
            return Err(invalid("no composite order found within 10000 steps"));
        }
    }
}

/// Upper bound on the rank of a composite tiling from the gcds of its rows.
pub fn composite_rank_bound(m: &ModelMatrix) -> u64 {
    let n = m.order();
    let q = m.block_rows() as u64;
    let mut bound = 1 + q * (n - 1);
    for row in m.exponents() {
        let g = row.iter().fold(0, |acc, &a| gcd(acc, a));
        if g >= 2 && n.is_multiple_of(g) {
            bound = bound + 1 - g;
        }
    }
    bound
}

/// Pair of models with no identity column: `H_x` rows use multipliers `1..=l1`,
/// `H_z` rows continue at `l1+1..=l1+l2`; column `j` carries exponent `i·j` for
/// `j = 1..p-1`.
pub fn theorem6_models(p: u64, l1: usize, l2: usize) -> Result<(ModelMatrix, ModelMatrix)> {
    require_odd_prime(p)?;
    let pm2 = p as usize - 2;
    if l1 < 1 || l2 < 1 || l1 > pm2 || l2 > pm2 || l1 + l2 > p as usize - 1 {
        return Err(invalid(format!(
            "need 1 <= l1, l2 <= p-2 and l1 + l2 <= p-1 (p={p}, l1={l1}, l2={l2})"
        )));
    }
    let rows = |range: std::ops::RangeInclusive<u64>| -> Vec<Vec<u64>> {
        range.map(|i| (1..p).map(|j| i * j % p).collect()).collect()
    };
    let mx = ModelMatrix::new(p, rows(1..=l1 as u64))?;
    let mz = ModelMatrix::new(p, rows(l1 as u64 + 1..=(l1 + l2) as u64))?;
    Ok((mx, mz))
}

/// Three-row model `[0; w^j; -w^j]` over `Z_{w^l + 1}`, `j = 1..=l`.
pub fn theorem8_model(l: u32, w: u64) -> Result<ModelMatrix> {
    if l < 6 || w < 2 {
        return Err(invalid(format!("need l >= 6 and w >= 2 (l={l}, w={w})")));
    }
    let order = w
        .checked_pow(l)
        .and_then(|x| x.checked_add(1))
        .ok_or_else(|| invalid("w^l + 1 overflows"))?;
    let pos: Vec<u64> = (1..=l).map(|j| w.pow(j)).collect();
    let neg: Vec<u64> = pos.iter().map(|&x| (order - x) % order).collect();
    ModelMatrix::new(order, vec![vec![0; l as usize], pos, neg])
}

/// Whether a column-weight-4 construction is built at the stated parameter range
/// or at a reduced structural-check scale below it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Scale {
    #[default]
    Full,
    /// Skips only the lower bound on the largest exponent; every other
    /// constraint still applies. Instances are outside the proven range.
    Reduced,
}

fn check_ascending(s: &[u32]) -> Result<()> {
    if s.is_empty() {
        return Err(invalid("exponent set is empty"));
    }
    if s[0] < 2 {
        return Err(invalid("every exponent must be at least 2"));
    }
    if s.windows(2).any(|w| w[0] >= w[1]) {
        return Err(invalid("exponent set must be strictly ascending"));
    }
    Ok(())
}

fn weight4_model(s: &[u32], w: u64) -> Result<ModelMatrix> {
    let at = *s.last().expect("non-empty set");
    let order = w
        .checked_pow(at + 1)
        .and_then(|x| x.checked_sub(1))
        .ok_or_else(|| invalid("w^(a_t+1) - 1 overflows"))?;
    let row = |shift: u32| -> Vec<u64> { s.iter().map(|&a| w.pow(a - shift)).collect() };
    ModelMatrix::new(order, vec![vec![0; s.len()], row(0), row(1), row(2)])
}

/// Four-row model `[0; w^a; w^(a-1); w^(a-2)]` over `Z_{w^(a_t+1) - 1}` for a set
/// with no three consecutive integers and even `w`.
pub fn theorem9_model(s: &[u32], w: u64, scale: Scale) -> Result<ModelMatrix> {
    check_ascending(s)?;
    if w < 2 || !w.is_multiple_of(2) {
        return Err(invalid("w must be an even integer >= 2"));
    }
    if s.windows(3).any(|t| t[1] - t[0] == 1 && t[2] - t[1] == 1) {
        return Err(invalid(
            "set contains three consecutive integers (gaps 1, 1)",
        ));
    }
    let at = *s.last().unwrap();
    if scale == Scale::Full && at < 12 {
        return Err(invalid(format!("largest exponent {at} is below 12")));
    }
    weight4_model(s, w)
}

/// Same model shape as [`theorem9_model`] for sets whose pairwise gaps are all at least 2.
pub fn theorem10_model(s: &[u32], w: u64, scale: Scale) -> Result<ModelMatrix> {
    check_ascending(s)?;
    if w < 2 {
        return Err(invalid("w must be >= 2"));
    }
    if s.windows(2).any(|t| t[1] - t[0] < 2) {
        return Err(invalid("set has a gap smaller than 2"));
    }
    let at = *s.last().unwrap();
    if scale == Scale::Full && at < 14 {
        return Err(invalid(format!("largest exponent {at} is below 14")));
    }
    weight4_model(s, w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::gfrank;

    fn all_pairs_distinct(m: &ModelMatrix) -> bool {
        let rows = m.exponents();
        (0..rows.len()).all(|i| {
            (i + 1..rows.len()).all(|j| difference_is_distinct(&rows[i], &rows[j], m.order()))
        })
    }

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..40).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]);
        assert!(!is_odd_prime(2));
        assert!(is_composite(4) && is_composite(9) && !is_composite(7));
    }

    #[test]
    fn hand_executed_prime_model() {
        let params = PrimeModelParams {
            p: 3,
            multipliers: vec![2],
            base_row: vec![0, 1, 2],
        };
        let m = params.model().unwrap();
        assert_eq!(m.exponents(), &[vec![0, 0, 0], vec![0, 1, 2], vec![0, 2, 1]]);
        // The i*j model is the member with identity base row and multipliers 2..p-1.
        assert_eq!(m, special_prime_model(3).unwrap());
    }

    #[test]
    fn prime_params_validation() {
        let bad = [
            PrimeModelParams { p: 5, multipliers: vec![2, 3, 3], base_row: vec![0, 1, 2, 3, 4] },
            PrimeModelParams { p: 5, multipliers: vec![1, 2, 3], base_row: vec![0, 1, 2, 3, 4] },
            PrimeModelParams { p: 5, multipliers: vec![2, 3, 4], base_row: vec![1, 0, 2, 3, 4] },
            PrimeModelParams { p: 5, multipliers: vec![2, 3, 4], base_row: vec![0, 1, 1, 3, 4] },
            PrimeModelParams { p: 9, multipliers: vec![], base_row: vec![] },
        ];
        for params in bad {
            assert!(params.model().is_err(), "{params:?}");
        }
    }

    #[test]
    fn random_prime_models_are_four_cycle_free_and_reproducible() {
        for p in [3u64, 5, 7, 11, 13] {
            for seed in 0..5 {
                let m = construct_prime_model(p, seed).unwrap();
                assert_eq!(m, construct_prime_model(p, seed).unwrap());
                assert!(all_pairs_distinct(&m));
                // Rows are k·x for k ranging over all of F_p.
                let x = m.row(1).to_vec();
                let mut ks: Vec<u64> = (0..p as usize)
                    .map(|i| {
                        (0..p)
                            .find(|&k| x.iter().zip(m.row(i)).all(|(&xv, &r)| k * xv % p == r))
                            .expect("row is a multiple of the base row")
                    })
                    .collect();
                ks.sort_unstable();
                assert_eq!(ks, (0..p).collect::<Vec<_>>());
            }
        }
        assert!(construct_prime_model(9, 0).is_err());
        assert!(construct_prime_model(2, 0).is_err());
    }

    #[test]
    fn special_model_examples() {
        assert_eq!(
            special_prime_model(3).unwrap().exponents(),
            &[vec![0, 0, 0], vec![0, 1, 2], vec![0, 2, 1]]
        );
        assert_eq!(gfrank(&special_prime_model(5).unwrap().expand()), 21);
        let two_rows = special_prime_model(7).unwrap().select_rows(&[0, 1]).unwrap();
        assert_eq!(gfrank(&two_rows.expand()), 13);
        assert!(special_prime_model(15).is_err());
    }

    #[test]
    fn rank_of_block_row_subsets_in_random_models() {
        // Any λ distinct block rows of a class member have rank p + (λ-1)(p-1).
        for p in [3u64, 5, 7] {
            let m = construct_prime_model(p, 42).unwrap();
            let pu = p as usize;
            for mask in 1u32..(1 << pu) {
                let rows: Vec<usize> = (0..pu).filter(|i| mask >> i & 1 == 1).collect();
                let lambda = rows.len() as u64;
                let h = m.select_rows(&rows).unwrap().expand();
                assert_eq!(gfrank(&h) as u64, p + (lambda - 1) * (p - 1), "p={p} rows={rows:?}");
            }
        }
    }

    #[test]
    fn composite_candidates_for_order_four() {
        // Brute force over all rows (0, a, b) with a != b nonzero mod 4.
        let zero = [0u64, 0, 0];
        let mut accepted = Vec::new();
        for a in 1..4u64 {
            for b in 1..4u64 {
                if a != b && difference_is_distinct(&[0, a, b], &zero, 4) {
                    accepted.push((a, b));
                }
            }
        }
        assert_eq!(accepted.len(), 6);
        for seed in 0..20 {
            match construct_composite_model(4, 2, 3, seed).unwrap() {
                CompositeOutcome::Found { model, rejections } => {
                    assert_eq!(rejections, 0);
                    let row = model.row(1);
                    assert!(accepted.contains(&(row[1], row[2])));
                }
                other => panic!("unexpected {other:?}"),
            }
        }
    }

    #[test]
    fn composite_budget_and_next_order_signal() {
        let params = CompositeModelParams { n: 6, q: 3, r: 4 };
        assert_eq!(params.iteration_budget(), 5 * 4 * 3);
        // r must stay below n and q below r.
        assert!(construct_composite_model(4, 3, 4, 0).is_err());
        assert!(construct_composite_model(6, 3, 3, 0).is_err());
        assert!(construct_composite_model(7, 2, 3, 0).is_err());
        // Over Z_6 with five columns, a quarter of the admissible row pairs admit
        // no third row, so the random search sometimes strands at row 3.
        let budget = CompositeModelParams { n: 6, q: 4, r: 5 }.iteration_budget();
        assert_eq!(budget, 120);
        let (mut found, mut stranded) = (0, 0);
        for seed in 0..60 {
            match construct_composite_model(6, 4, 5, seed).unwrap() {
                CompositeOutcome::NextOrder { row, rejections } => {
                    assert_eq!(row, 3);
                    assert!(rejections >= budget);
                    stranded += 1;
                }
                CompositeOutcome::Found { model, .. } => {
                    assert_eq!(model.block_rows(), 4);
                    found += 1;
                }
            }
        }
        assert!(found > 0 && stranded > 0, "found={found} stranded={stranded}");
    }

    #[test]
    fn composite_models_satisfy_difference_property_and_rank_bound() {
        for seed in 0..6 {
            let (n, m) = smallest_composite_model(3, 5, 6, seed).unwrap();
            assert!(is_composite(n));
            assert_eq!(m.order(), n);
            assert!(m.row(0).iter().all(|&e| e == 0));
            assert!(m.exponents().iter().all(|row| row[0] == 0));
            assert!(all_pairs_distinct(&m));
            assert!(gfrank(&m.expand()) as u64 <= composite_rank_bound(&m));
        }
    }

    #[test]
    fn thm6_small_models() {
        let (mx, mz) = theorem6_models(3, 1, 1).unwrap();
        assert_eq!(mx.exponents(), &[vec![1, 2]]);
        assert_eq!(mz.exponents(), &[vec![2, 1]]);
        let (mx, mz) = theorem6_models(7, 3, 3).unwrap();
        assert_eq!(
            mx.exponents(),
            &[vec![1, 2, 3, 4, 5, 6], vec![2, 4, 6, 1, 3, 5], vec![3, 6, 2, 5, 1, 4]]
        );
        assert_eq!(
            mz.exponents(),
            &[vec![4, 1, 5, 2, 6, 3], vec![5, 3, 1, 6, 4, 2], vec![6, 5, 4, 3, 2, 1]]
        );
        let (mx, _) = theorem6_models(5, 2, 2).unwrap();
        assert_eq!(gfrank(&mx.expand()), 9);
        assert!(theorem6_models(5, 3, 2).is_err());
        assert!(theorem6_models(5, 0, 2).is_err());
    }

    #[test]
    fn thm8_l6_w2_model() {
        let m = theorem8_model(6, 2).unwrap();
        assert_eq!(m.order(), 65);
        assert_eq!(
            m.exponents(),
            &[vec![0; 6], vec![2, 4, 8, 16, 32, 64], vec![63, 61, 57, 49, 33, 1]]
        );
        for j in 0..6 {
            assert_eq!((m.exponent(1, j) + m.exponent(2, j)) % 65, 0);
        }
        assert!(theorem8_model(5, 2).is_err());
        assert!(theorem8_model(6, 1).is_err());
    }

    #[test]
    fn thm9_constraints() {
        assert!(theorem9_model(&[2, 3, 4], 2, Scale::Reduced).is_err());
        assert!(theorem9_model(&[2, 3, 5, 6, 12], 2, Scale::Full).is_ok());
        assert!(theorem9_model(&[2, 4, 6, 8, 10], 2, Scale::Full).is_err());
        assert!(theorem9_model(&[2, 4, 6, 8, 10, 12], 3, Scale::Full).is_err());
        assert!(theorem9_model(&[1, 4, 12], 2, Scale::Full).is_err());
        let m = theorem9_model(&[2, 4, 6, 8, 10, 12], 2, Scale::Full).unwrap();
        assert_eq!(m.order(), (1 << 13) - 1);
        assert_eq!(m.block_rows(), 4);
        for row in &m.exponents()[1..] {
            assert!(row.iter().all(|&e| gcd(e, m.order()) == 1));
        }
    }

    #[test]
    fn thm10_constraints() {
        assert!(theorem10_model(&[2, 3, 6, 14], 2, Scale::Full).is_err());
        assert!(theorem10_model(&[2, 4, 6, 8, 10, 12], 2, Scale::Full).is_err());
        let m = theorem10_model(&[2, 4, 6, 8, 10, 12, 14], 2, Scale::Full).unwrap();
        assert_eq!(m.order(), (1 << 15) - 1);
        assert!(theorem10_model(&[2, 4, 6, 8, 10, 12, 14], 3, Scale::Full).is_ok());
        assert!(theorem10_model(&[2, 4, 7], 3, Scale::Reduced).is_ok());
    }

    #[test]
    fn closed_form_rows_are_distinct_units() {
        let models = [
            theorem8_model(6, 2).unwrap(),
            theorem8_model(7, 3).unwrap(),
            theorem9_model(&[2, 4, 6, 8, 10, 12], 2, Scale::Full).unwrap(),
            theorem10_model(&[2, 4, 6, 8, 10, 12, 14], 3, Scale::Full).unwrap(),
        ];
        for m in &models {
            for row in &m.exponents()[1..] {
                let set: HashSet<_> = row.iter().collect();
                assert_eq!(set.len(), row.len());
                assert!(row.iter().all(|&e| gcd(e, m.order()) == 1));
            }
        }
    }
}
