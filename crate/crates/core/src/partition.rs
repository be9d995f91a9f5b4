//! Integer partitions and the combinatorics around them: conjugation,
//! dominance, n-regularity, n-cores, the n-restricted decomposition and the
//! `hat` / `tilde` maps onto partitions of the inflated size
//! `m + (n - 1) r (r - 1)`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::affine::PointR;
use crate::error::{Error, Result};

/// A weakly decreasing sequence of positive integers. The empty partition
/// is the unique partition of 0.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::InvalidArgument(format!(
                "partition parts must be positive: {parts:?}"
            )));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidArgument(format!(
                "partition parts must be weakly decreasing: {parts:?}"
            )));
        }
        Ok(Self { parts })
    }

    /// Accepts a weakly decreasing sequence with a tail of zeros, as produced
    /// by padded coordinate vectors.
    pub fn from_padded<I: IntoIterator<Item = i64>>(coords: I) -> Result<Self> {
        let mut parts = Vec::new();
        for c in coords {
            let c = usize::try_from(c).map_err(|_| {
                Error::InvalidArgument(format!("negative part {c} in partition"))
            })?;
            parts.push(c);
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Self::new(parts)
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// The `i`-th part (0-based), zero past the end.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn conjugate(&self) -> Self {
        let width = self.part(0);
        let parts = (1..=width)
            .map(|j| self.parts.iter().take_while(|&&p| p >= j).count())
            .collect();
        Self { parts }
    }

    /// Dominance order `self ⊴ other`. Both partitions must have the same size.
    pub fn dominance_leq(&self, other: &Self) -> Result<bool> {
        if self.size() != other.size() {
            return Err(Error::SizeMismatch(self.to_string(), other.to_string()));
        }
        let (mut a, mut b) = (0, 0);
        for i in 0..self.len().max(other.len()) {
            a += self.part(i);
            b += other.part(i);
            if a > b {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// No part value occurs `n` or more times.
    pub fn is_n_regular(&self, n: usize) -> bool {
        self.parts
            .chunk_by(|a, b| a == b)
            .all(|run| run.len() < n)
    }

    /// Consecutive differences (including the last part against a virtual 0)
    /// are all smaller than `n`.
    pub fn is_n_restricted(&self, n: usize) -> bool {
        (0..self.len()).all(|i| self.part(i) - self.part(i + 1) < n)
    }

    /// The partition as an `r`-vector with a tail of zeros.
    pub fn pad_to(&self, r: usize) -> Result<PointR> {
        self.check_len(r)?;
        Ok(PointR::new(
            (0..r).map(|i| self.part(i) as i64).collect::<Vec<_>>(),
        ))
    }

    fn check_len(&self, r: usize) -> Result<()> {
        if self.len() > r {
            Err(Error::TooManyParts {
                partition: self.to_string(),
                len: self.len(),
                r,
            })
        } else {
            Ok(())
        }
    }

    /// The unique decomposition `self = mu0 + n * mu1` (as `r`-vectors) with
    /// `mu0` n-restricted and `mu1` a partition.
    ///
    /// The last coordinate of `mu0` is also kept below `n`, treating the
    /// padded vector as followed by a virtual zero; without that condition
    /// the decomposition is not unique.
    pub fn restricted_decomp(&self, n: usize, r: usize) -> Result<(PointR, PointR)> {
        check_n(n)?;
        let mu = self.pad_to(r)?;
        let n = n as i64;
        let mut mu0 = vec![0i64; r];
        let mut next = 0i64;
        let mut next0 = 0i64;
        for i in (0..r).rev() {
            mu0[i] = next0 + (mu[i] - next).rem_euclid(n);
            next = mu[i];
            next0 = mu0[i];
        }
        let mu1: Vec<i64> = (0..r).map(|i| (mu[i] - mu0[i]) / n).collect();
        Ok((PointR::new(mu0), PointR::new(mu1)))
    }

    /// `2(n-1) rho_r + reverse(mu0) + n mu1`, a partition of
    /// `|self| + (n-1) r (r-1)` with pairwise distinct parts.
    pub fn hat(&self, n: usize, r: usize) -> Result<Self> {
        let (mu0, mu1) = self.restricted_decomp(n, r)?;
        let rho = PointR::rho(r);
        let nn = n as i64;
        let coords = (0..r).map(|i| 2 * (nn - 1) * rho[i] + mu0[r - 1 - i] + nn * mu1[i]);
        Self::from_padded(coords)
    }

    /// Adds `(n-1)(r-1)` to each of the `r` padded coordinates.
    pub fn tilde(&self, n: usize, r: usize) -> Result<Self> {
        check_n(n)?;
        let p = self.pad_to(r)?;
        let shift = ((n - 1) * r.saturating_sub(1)) as i64;
        Self::from_padded(p.coords().iter().map(|c| c + shift))
    }

    /// The n-core, computed on the n-runner abacus of first-column hook lengths.
    pub fn n_core(&self, n: usize) -> Result<Self> {
        check_n(n)?;
        let k = self.len();
        let mut beads = vec![0usize; n];
        for (i, &p) in self.parts.iter().enumerate() {
            beads[(p + k - 1 - i) % n] += 1;
        }
        let mut beta: Vec<usize> = beads
            .iter()
            .enumerate()
            .flat_map(|(runner, &count)| (0..count).map(move |j| runner + j * n))
            .collect();
        beta.sort_unstable_by(|a, b| b.cmp(a));
        let parts: Vec<usize> = beta
            .iter()
            .enumerate()
            .map(|(i, &b)| b - (k - 1 - i))
            .filter(|&p| p > 0)
            .collect();
        Self::new(parts)
    }

    /// Residue `(col - row) mod n` of the box in 0-based row `i`, column `j`.
    pub fn residue(i: usize, j: usize, n: usize) -> usize {
        (j as i64 - i as i64).rem_euclid(n as i64) as usize
    }
}

fn check_n(n: usize) -> Result<()> {
    if n < 2 {
        Err(Error::InvalidArgument(format!("n must be at least 2, got {n}")))
    } else {
        Ok(())
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;
    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Self::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

/// Lexicographic on parts; among partitions of one size this extends the
/// dominance order.
impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.parts.cmp(&other.parts)
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "[]");
        }
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let t = t
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .or_else(|| t.strip_prefix('(').and_then(|t| t.strip_suffix(')')))
            .unwrap_or(t)
            .trim();
        if t.is_empty() {
            return Ok(Self::empty());
        }
        let parts = t
            .split(',')
            .map(|x| {
                x.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad partition {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(parts).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// All partitions of `m`, in reverse-lexicographic order (largest first).
pub fn partitions_of(m: usize) -> Vec<Partition> {
    partitions_with_max_len(m, m)
}

/// Partitions of `m` with at most `r` parts, in reverse-lexicographic order.
pub fn partitions_with_max_len(m: usize, r: usize) -> Vec<Partition> {
    fn rec(rest: usize, max: usize, slots: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        if slots == 0 {
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            rec(rest - p, p, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(m, m, r, &mut Vec::new(), &mut out);
    out
}
