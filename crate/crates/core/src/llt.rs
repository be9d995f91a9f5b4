//! Ladder induction in the level-one Fock space of `U_q(sl^_n)`, used as an
//! independent source of the canonical basis on n-regular columns.
//!
//! Conventions: the node in row `i`, column `j` (0-based) has residue
//! `(j - i) mod n`. `f_i` adds an `i`-node `g` with weight `q^N`, where `N`
//! is the number of addable `i`-nodes above `g` minus the number of
//! removable `i`-nodes above `g`.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::fock::FockVector;
use crate::partition::Partition;
use crate::qlaurent::LaurentPoly;

fn addable(p: &[usize]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..=p.len() {
        let here = p.get(i).copied().unwrap_or(0);
        if i == 0 || p[i - 1] > here {
            out.push((i, here));
        }
    }
    out
}

fn removable(p: &[usize]) -> Vec<(usize, usize)> {
    (0..p.len())
        .filter(|&i| p.get(i + 1).copied().unwrap_or(0) < p[i])
        .map(|i| (i, p[i] - 1))
        .collect()
}

fn f_once(i: usize, v: &FockVector, n: usize) -> FockVector {
    let mut out = FockVector::zero();
    for (lam, c) in v.iter() {
        let parts = lam.parts();
        let adds: Vec<_> = addable(parts)
            .into_iter()
            .filter(|&(r, col)| Partition::residue(r, col, n) == i)
            .collect();
        let rems: Vec<_> = removable(parts)
            .into_iter()
            .filter(|&(r, col)| Partition::residue(r, col, n) == i)
            .collect();
        for &(row, _) in &adds {
            let above_add = adds.iter().filter(|a| a.0 < row).count() as i64;
            let above_rem = rems.iter().filter(|a| a.0 < row).count() as i64;
            let mut new_parts = parts.to_vec();
            if row == new_parts.len() {
                new_parts.push(1);
            } else {
                new_parts[row] += 1;
            }
            let mu = Partition::new(new_parts).expect("adding an addable node");
            out.add_term(mu, &c.shift(above_add - above_rem));
        }
    }
    out
}

/// The divided power `f_i^(k) = f_i^k / [k]!` applied to `v`.
pub fn fock_f(i: usize, k: u32, v: &FockVector, n: usize) -> Result<FockVector> {
    if n < 2 || i >= n {
        return Err(Error::InvalidArgument(format!("residue {i} out of range for n = {n}")));
    }
    let mut w = v.clone();
    for _ in 0..k {
        w = f_once(i, &w, n);
    }
    let fact = LaurentPoly::quantum_factorial(k);
    w.map_coeffs(|c| c.div_exact(&fact))
}

/// Ladders of `mu` as `(residue, size)` in increasing ladder order.
fn ladders(mu: &Partition, n: usize) -> Vec<(usize, u32)> {
    let mut sizes: Vec<u32> = Vec::new();
    for (i, &len) in mu.parts().iter().enumerate() {
        for j in 0..len {
            let l = i + (n - 1) * j;
            if sizes.len() <= l {
                sizes.resize(l + 1, 0);
            }
            sizes[l] += 1;
        }
    }
    sizes
        .into_iter()
        .enumerate()
        .filter(|&(_, s)| s > 0)
        .map(|(l, s)| ((n - l % n) % n, s))
        .collect()
}

/// Memoised ladder-induction oracle for a fixed `n`.
pub struct LltOracle {
    n: usize,
    cache: HashMap<Partition, FockVector>,
}

impl LltOracle {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidArgument(format!("n must be at least 2, got {n}")));
        }
        Ok(Self { n, cache: HashMap::new() })
    }

    /// The ladder monomial `A(mu) |empty>`.
    pub fn ladder_vector(&self, mu: &Partition) -> Result<FockVector> {
        let mut v = FockVector::basis(Partition::empty());
        for (i, k) in ladders(mu, self.n) {
            v = fock_f(i, k, &v, self.n)?;
        }
        Ok(v)
    }

    /// `G+_mu` for n-regular `mu`.
    pub fn gplus(&mut self, mu: &Partition) -> Result<FockVector> {
        if !mu.is_n_regular(self.n) {
            return Err(Error::InvalidArgument(format!("{mu} is not {}-regular", self.n)));
        }
        if let Some(v) = self.cache.get(mu) {
            return Ok(v.clone());
        }
        let mut v = self.ladder_vector(mu)?;
        assert!(v.coeff(mu).is_one(), "ladder monomial of {mu} is not unitriangular");
        let labels: Vec<Partition> = v.iter().map(|(l, _)| l.clone()).filter(|l| l != mu).collect();
        for lam in labels {
            let c = v.coeff(&lam);
            if c.is_zero() || (c.is_polynomial() && c.coeff(0) == 0.into()) {
                continue;
            }
            let corr = c.bar_invariant_correction();
            let g = self.gplus(&lam)?;
            v.add_scaled(&g, &-&corr);
        }
        for (lam, c) in v.iter() {
            assert!(
                lam == mu || (c.is_polynomial() && c.coeff(0) == 0.into()),
                "reduction of {mu} left coefficient {c} at {lam}"
            );
        }
        self.cache.insert(mu.clone(), v.clone());
        Ok(v)
    }
}

/// `G+_mu` for n-regular `mu` by ladder induction and triangular reduction.
pub fn llt_gplus_oracle(mu: &Partition, n: usize) -> Result<FockVector> {
    LltOracle::new(n)?.gplus(mu)
}
