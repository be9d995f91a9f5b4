//! Canonical basis coefficients `d_{lam,mu}(q)` and `e_{lam,mu}(q)` of the
//! level-one Fock space, computed from Kazhdan–Lusztig data, and the
//! identities relating columns of size `m` to n-regular columns of size
//! `m + (n - 1) r (r - 1)`.
//!
//! Two independent routes compute `d`:
//!
//! * [`Engine::d_poly`]: `d_{lam,mu} = n_{w_beta w_{0,xi}, w_alpha w_{0,xi}}`
//!   with `beta = lam + rho`, `alpha = mu + rho` at level `n`;
//! * [`Engine::d_poly_via_r`]: `d_{lam',mu'} = r_{beta,alpha}` at level
//!   `-n`, read off the inverse of the block of parabolic polynomials `P^-`
//!   on strictly dominant points.
//!
//! Matrices are indexed by partitions in reverse-lexicographic order. With
//! that order `[d]` is lower unitriangular: `d_{lam,mu} != 0` forces
//! `lam ⊴ mu`.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use dashmap::DashMap;
use rayon::prelude::*;
use serde::Serialize;

use crate::affine::{stabilizer_longest, PointR};
use crate::error::{Error, Result};
use crate::kl::{alcove_of, KlTable};
use crate::partition::{partitions_with_max_len, Partition};
use crate::qlaurent::LaurentPoly;

/// A finite combination of basis vectors `|lam>`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FockVector {
    coeffs: BTreeMap<Partition, LaurentPoly>,
}

#[derive(Serialize)]
struct VectorEntry<'a> {
    partition: &'a Partition,
    poly: &'a LaurentPoly,
}

impl FockVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(p: Partition) -> Self {
        Self {
            coeffs: BTreeMap::from([(p, LaurentPoly::one())]),
        }
    }

    pub fn coeff(&self, p: &Partition) -> LaurentPoly {
        self.coeffs.get(p).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, p: Partition, c: &LaurentPoly) {
        let slot = self.coeffs.entry(p.clone()).or_default();
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&p);
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &Self, c: &LaurentPoly) {
        for (p, v) in &other.coeffs {
            self.add_term(p.clone(), &(c * v));
        }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Terms in reverse-lexicographic order of their partitions.
    pub fn iter(&self) -> impl Iterator<Item = (&Partition, &LaurentPoly)> {
        self.coeffs.iter().rev()
    }

    pub fn map_coeffs(&self, f: impl Fn(&LaurentPoly) -> Result<LaurentPoly>) -> Result<Self> {
        let mut out = Self::zero();
        for (p, c) in &self.coeffs {
            out.add_term(p.clone(), &f(c)?);
        }
        Ok(out)
    }

    /// JSON list of `{partition, poly}` records.
    pub fn to_json(&self) -> serde_json::Value {
        let recs: Vec<VectorEntry> = self
            .iter()
            .map(|(partition, poly)| VectorEntry { partition, poly })
            .collect();
        serde_json::to_value(recs).expect("vector serialises")
    }
}

impl std::fmt::Display for FockVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_empty() {
            return write!(f, "0");
        }
        for (i, (p, c)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if c.is_one() {
                write!(f, "|{p}>")?;
            } else {
                write!(f, "({c})|{p}>")?;
            }
        }
        Ok(())
    }
}

/// A square matrix of polynomials indexed by partitions of `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FockMatrix {
    pub m: usize,
    pub n: usize,
    pub r: usize,
    labels: Vec<Partition>,
    entries: BTreeMap<(usize, usize), LaurentPoly>,
}

impl FockMatrix {
    /// Row and column labels, reverse-lexicographic.
    pub fn labels(&self) -> &[Partition] {
        &self.labels
    }

    pub fn index_of(&self, p: &Partition) -> Option<usize> {
        self.labels.iter().position(|l| l == p)
    }

    pub fn get(&self, row: &Partition, col: &Partition) -> LaurentPoly {
        match (self.index_of(row), self.index_of(col)) {
            (Some(i), Some(j)) => self.entry(i, j),
            _ => LaurentPoly::zero(),
        }
    }

    pub fn entry(&self, i: usize, j: usize) -> LaurentPoly {
        self.entries.get(&(i, j)).cloned().unwrap_or_default()
    }

    /// Nonzero entries as `(row, column, value)`.
    pub fn nonzero(&self) -> impl Iterator<Item = (&Partition, &Partition, &LaurentPoly)> {
        self.entries
            .iter()
            .map(|(&(i, j), v)| (&self.labels[i], &self.labels[j], v))
    }

    pub fn column(&self, col: &Partition) -> FockVector {
        let mut v = FockVector::zero();
        if let Some(j) = self.index_of(col) {
            for (i, l) in self.labels.iter().enumerate() {
                v.add_term(l.clone(), &self.entry(i, j));
            }
        }
        v
    }

    /// CSV with a comment line naming the parameters and the order, then a
    /// header row of column labels. Cells hold polynomial strings.
    pub fn to_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
        let mut header = vec!["lambda\\mu".to_string()];
        header.extend(self.labels.iter().map(|l| l.to_string()));
        w.write_record(&header).expect("write to memory");
        for (i, l) in self.labels.iter().enumerate() {
            let mut row = vec![l.to_string()];
            row.extend((0..self.labels.len()).map(|j| self.entry(i, j).to_string()));
            w.write_record(&row).expect("write to memory");
        }
        let body = String::from_utf8(w.into_inner().expect("flush to memory")).expect("utf8");
        format!(
            "# m={} n={} r={} order=reverse-lexicographic\n{body}",
            self.m, self.n, self.r
        )
    }

    /// `{params, order, labels, entries: {row: {column: poly}}}` with only
    /// nonzero entries listed.
    pub fn to_json(&self) -> serde_json::Value {
        let mut entries = serde_json::Map::new();
        for (i, l) in self.labels.iter().enumerate() {
            let mut row = serde_json::Map::new();
            for (j, c) in self.labels.iter().enumerate() {
                if let Some(v) = self.entries.get(&(i, j)) {
                    row.insert(c.to_string(), serde_json::to_value(v).expect("poly"));
                }
            }
            if !row.is_empty() {
                entries.insert(l.to_string(), row.into());
            }
        }
        serde_json::json!({
            "params": {"m": self.m, "n": self.n, "r": self.r},
            "order": "reverse-lexicographic",
            "labels": self.labels.iter().map(|l| l.to_string()).collect::<Vec<_>>(),
            "entries": entries,
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (row, col, v) in self.nonzero() {
            out.push_str(&format!("d[{row}; {col}] = {v}\n"));
        }
        out
    }
}

/// Result of comparing both sides of the hat/tilde identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HatTildeReport {
    pub holds: bool,
    /// `d_{lam',mu'}(q)`.
    pub lhs: LaurentPoly,
    /// `q^{l - l_mu} d_{tilde lam, hat mu}(q^{-1})`.
    pub rhs: LaurentPoly,
    /// `l - l_mu`.
    pub shift: usize,
}

/// `r_{lam + rho, mu + rho}` for all partitions of `m` with at most `r`
/// parts, at one level.
struct RBlock {
    index: HashMap<Partition, usize>,
    values: Vec<Vec<LaurentPoly>>,
}

/// Shared Kazhdan–Lusztig tables, one per rank, and the Fock-space
/// operations built on them.
#[derive(Default)]
pub struct Engine {
    tables: DashMap<usize, Arc<KlTable>>,
    r_blocks: DashMap<(usize, usize, usize), Arc<RBlock>>,
}

fn check_n(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("n must be at least 2, got {n}")));
    }
    Ok(())
}

fn check_pair(lam: &Partition, mu: &Partition, r: usize) -> Result<()> {
    if lam.size() != mu.size() {
        return Err(Error::SizeMismatch(lam.to_string(), mu.to_string()));
    }
    lam.pad_to(r)?;
    mu.pad_to(r)?;
    Ok(())
}

fn shifted(p: &Partition, r: usize) -> Result<PointR> {
    Ok(p.pad_to(r)?.add(&PointR::rho(r)))
}

/// `l_mu`: length of the longest element of the stabiliser of the point of
/// the level-`n` orbit of `mu + rho` in the closed fundamental alcove.
pub fn ell_mu(mu: &Partition, n: usize, r: usize) -> Result<usize> {
    check_n(n)?;
    let alpha = shifted(mu, r)?;
    if r < 2 {
        return Ok(0);
    }
    let (_, xi) = alcove_of(&alpha, n as i64)?;
    Ok(stabilizer_longest(&xi, n as i64)?.1)
}

impl Engine {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn table(&self, r: usize) -> Result<Arc<KlTable>> {
        if let Some(t) = self.tables.get(&r).map(|t| Arc::clone(&t)) {
            return Ok(t);
        }
        let t = Arc::new(KlTable::new(r)?);
        Ok(Arc::clone(self.tables.entry(r).or_insert(t).value()))
    }

    /// `d_{lam,mu}(q)` through the alternating sum of Kazhdan–Lusztig
    /// polynomials at the maximal elements of the two alcove cosets.
    pub fn d_poly(&self, lam: &Partition, mu: &Partition, n: usize, r: usize) -> Result<LaurentPoly> {
        self.d_poly_tilt(lam, mu, n, r, false)
    }

    /// [`d_poly`](Self::d_poly) with the alternating sum expanded literally
    /// over ordinary Kazhdan–Lusztig polynomials instead of read from the
    /// sign-induced module. Much slower; kept as a cross-check.
    pub fn d_poly_literal(&self, lam: &Partition, mu: &Partition, n: usize, r: usize) -> Result<LaurentPoly> {
        self.d_poly_tilt(lam, mu, n, r, true)
    }

    fn d_poly_tilt(&self, lam: &Partition, mu: &Partition, n: usize, r: usize, literal: bool) -> Result<LaurentPoly> {
        check_n(n)?;
        check_pair(lam, mu, r)?;
        if lam == mu {
            return Ok(LaurentPoly::one());
        }
        if lam.n_core(n)? != mu.n_core(n)? {
            return Ok(LaurentPoly::zero());
        }
        let k = n as i64;
        let (wa, xi) = alcove_of(&shifted(mu, r)?, k)?;
        let (wb, xb) = alcove_of(&shifted(lam, r)?, k)?;
        if xb != xi {
            return Ok(LaurentPoly::zero());
        }
        let (w0xi, _) = stabilizer_longest(&xi, k)?;
        let (x, y) = (&wb * &w0xi, &wa * &w0xi);
        let table = self.table(r)?;
        if literal {
            table.n_poly(&x, &y)
        } else {
            table.n_poly_parabolic(&x, &y)
        }
    }

    /// `d_{lam',mu'}(q) = r_{lam + rho, mu + rho}` at level `-n`.
    pub fn d_poly_via_r(&self, lam: &Partition, mu: &Partition, n: usize, r: usize) -> Result<LaurentPoly> {
        check_n(n)?;
        check_pair(lam, mu, r)?;
        if lam == mu {
            return Ok(LaurentPoly::one());
        }
        if lam.n_core(n)? != mu.n_core(n)? {
            return Ok(LaurentPoly::zero());
        }
        let block = self.r_block(lam.size(), n, r)?;
        Ok(block.values[block.index[lam]][block.index[mu]].clone())
    }

    /// [`d_poly_via_r`](Self::d_poly_via_r) evaluated by the defining
    /// alternating sum of inverse parabolic polynomials. Slow beyond rank 4.
    pub fn d_poly_via_r_literal(&self, lam: &Partition, mu: &Partition, n: usize, r: usize) -> Result<LaurentPoly> {
        check_n(n)?;
        check_pair(lam, mu, r)?;
        if lam == mu {
            return Ok(LaurentPoly::one());
        }
        self.table(r)?
            .r_poly(&shifted(lam, r)?, &shifted(mu, r)?, n as i64)
    }

    fn r_block(&self, m: usize, n: usize, r: usize) -> Result<Arc<RBlock>> {
        let key = (m, n, r);
        if let Some(b) = self.r_blocks.get(&key).map(|b| Arc::clone(&b)) {
            return Ok(b);
        }
        let labels = partitions_with_max_len(m, r);
        let points: Vec<PointR> = labels.iter().map(|l| shifted(l, r)).collect::<Result<_>>()?;
        let table = self.table(r)?;
        // fill the P^- cache in parallel before the sequential inversion
        points
            .par_iter()
            .try_for_each(|p| table.p_minus_column(p, n as i64).map(|_| ()))?;
        let values = table.r_block(&points, n as i64)?;
        let index = labels.into_iter().enumerate().map(|(i, l)| (l, i)).collect();
        let block = Arc::new(RBlock { index, values });
        Ok(Arc::clone(self.r_blocks.entry(key).or_insert(block).value()))
    }

    /// `[d_{lam,mu}(q)]` over partitions of `m` with at most `r` parts.
    pub fn d_matrix(&self, m: usize, n: usize, r: usize) -> Result<FockMatrix> {
        check_n(n)?;
        let labels = partitions_with_max_len(m, r);
        let pairs: Vec<(usize, usize)> = (0..labels.len())
            .flat_map(|i| (0..=i).map(move |j| (i, j)))
            .collect();
        let values: Vec<((usize, usize), LaurentPoly)> = pairs
            .into_par_iter()
            .map(|(i, j)| Ok(((i, j), self.d_poly(&labels[i], &labels[j], n, r)?)))
            .collect::<Result<_>>()?;
        let entries: BTreeMap<_, _> = values.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        let mat = FockMatrix { m, n, r, labels, entries };
        debug_assert!(mat.entries.keys().all(|&(i, j)| {
            mat.labels[i].dominance_leq(&mat.labels[j]).unwrap_or(false)
        }));
        Ok(mat)
    }

    /// `[e_{lam,mu}(q)]`, defined by `[e_{lam',mu'}(-q)] = [d_{lam,mu}(q)]^{-1}`.
    ///
    /// Labels are the conjugates of the labels of `d_matrix(m, n, r)`; with
    /// `r >= m` both are all partitions of `m`.
    pub fn e_matrix(&self, m: usize, n: usize, r: usize) -> Result<FockMatrix> {
        let d = self.d_matrix(m, n, r)?;
        let inv = invert_unitriangular(&d.labels, &d.entries);
        let mut labels: Vec<Partition> = d.labels.iter().map(|l| l.conjugate()).collect();
        labels.sort_by(|a, b| b.cmp(a));
        let pos: HashMap<&Partition, usize> = labels.iter().enumerate().map(|(i, l)| (l, i)).collect();
        let entries = inv
            .into_iter()
            .map(|((i, j), v)| {
                let a = pos[&d.labels[i].conjugate()];
                let b = pos[&d.labels[j].conjugate()];
                ((a, b), v.substitute_neg_q())
            })
            .collect();
        Ok(FockMatrix { m, n, r, labels, entries })
    }

    /// The canonical basis vector `G+_{mu'} = sum_lam d_{lam',mu'}(q) |lam'>`,
    /// computed column-wise through [`d_poly_via_r`](Self::d_poly_via_r).
    /// Requires `r >= len(mu)`; every nonzero row `lam'` then has
    /// `len(lam) <= len(mu)` and is found.
    pub fn gplus_vector(&self, mu: &Partition, n: usize, r: usize) -> Result<FockVector> {
        check_n(n)?;
        mu.pad_to(r)?;
        let rows = partitions_with_max_len(mu.size(), r);
        let vals: Vec<(Partition, LaurentPoly)> = rows
            .par_iter()
            .map(|lam| Ok((lam.conjugate(), self.d_poly_via_r(lam, mu, n, r)?)))
            .collect::<Result<_>>()?;
        let mut v = FockVector::zero();
        for (p, c) in vals {
            v.add_term(p, &c);
        }
        Ok(v)
    }

    /// Both sides of `d_{lam',mu'}(q) = q^{l - l_mu} d_{tilde lam, hat mu}(q^{-1})`.
    /// The left side uses the level `-n` route at rank `r`, the right side the
    /// level `n` route at rank `r` on partitions of `m + (n-1) r (r-1)`.
    pub fn check_theorem2(&self, lam: &Partition, mu: &Partition, n: usize, r: usize) -> Result<HatTildeReport> {
        check_n(n)?;
        check_pair(lam, mu, r)?;
        let lhs = self.d_poly_via_r(lam, mu, n, r)?;
        let shift = r * r.saturating_sub(1) / 2 - ell_mu(mu, n, r)?;
        let inner = self.d_poly(&lam.tilde(n, r)?, &mu.hat(n, r)?, n, r)?;
        let rhs = inner.bar().shift(shift as i64);
        Ok(HatTildeReport { holds: lhs == rhs, lhs, rhs, shift })
    }

    /// `d_{lam',mu'} = d_{tilde lam, hat mu}` at `q = 1`.
    pub fn check_theorem1(&self, lam: &Partition, mu: &Partition, n: usize, r: usize) -> Result<bool> {
        let rep = self.check_theorem2(lam, mu, n, r)?;
        let inner = self.d_poly(&lam.tilde(n, r)?, &mu.hat(n, r)?, n, r)?;
        Ok(rep.lhs.eval_at(1)? == inner.eval_at(1)?)
    }
}

/// Inverse of a unitriangular matrix whose nonzero entries `(i, j)` satisfy
/// `j <= i`.
pub(crate) fn invert_unitriangular(
    labels: &[Partition],
    entries: &BTreeMap<(usize, usize), LaurentPoly>,
) -> BTreeMap<(usize, usize), LaurentPoly> {
    let n = labels.len();
    let mut rows: Vec<Vec<(usize, &LaurentPoly)>> = vec![Vec::new(); n];
    for (&(i, j), v) in entries {
        assert!(j <= i, "matrix is not lower triangular at ({i}, {j})");
        if i != j {
            rows[i].push((j, v));
        } else {
            assert!(v.is_one(), "diagonal entry {v} is not 1");
        }
    }
    let mut inv: Vec<Vec<LaurentPoly>> = vec![vec![LaurentPoly::zero(); n]; n];
    for i in 0..n {
        inv[i][i] = LaurentPoly::one();
        for j in 0..i {
            let mut acc = LaurentPoly::zero();
            for &(k, v) in &rows[i] {
                if k >= j && !inv[k][j].is_zero() {
                    acc -= &(v * &inv[k][j]);
                }
            }
            inv[i][j] = acc;
        }
    }
    let mut out = BTreeMap::new();
    for (i, row) in inv.into_iter().enumerate() {
        for (j, v) in row.into_iter().enumerate() {
            if !v.is_zero() {
                out.insert((i, j), v);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::partitions_of;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn lp(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn two_box_fock_space() {
        let e = Engine::new();
        assert_eq!(e.d_poly(&p("1,1"), &p("2"), 2, 2).unwrap(), lp("q"));
        assert!(e.d_poly(&p("2"), &p("1,1"), 2, 2).unwrap().is_zero());
        assert!(e.d_poly(&p("2"), &p("2"), 2, 2).unwrap().is_one());
        let d = e.d_matrix(2, 2, 2).unwrap();
        assert_eq!(d.labels(), &[p("2"), p("1,1")]);
        assert_eq!(d.entry(1, 0), lp("q"));
        assert!(d.entry(0, 1).is_zero());
        let em = e.e_matrix(2, 2, 2).unwrap();
        assert_eq!(em.get(&p("2"), &p("1,1")), lp("q"));
        assert!(em.get(&p("1,1"), &p("2")).is_zero());
        let g = e.gplus_vector(&p("1,1"), 2, 2).unwrap();
        assert_eq!(g.coeff(&p("2")), LaurentPoly::one());
        assert_eq!(g.coeff(&p("1,1")), lp("q"));
        assert_eq!(g.len(), 2);
    }

    #[test]
    fn empty_and_rank_one_matrices() {
        let e = Engine::new();
        for (m, r) in [(0, 0), (0, 3), (3, 1)] {
            let d = e.d_matrix(m, 2, r).unwrap();
            assert_eq!(d.labels().len(), 1);
            assert!(d.entry(0, 0).is_one());
        }
        assert!(e.e_matrix(0, 3, 0).unwrap().entry(0, 0).is_one());
    }

    #[test]
    fn errors() {
        let e = Engine::new();
        assert!(matches!(
            e.d_poly(&p("2"), &p("1"), 2, 2),
            Err(Error::SizeMismatch(..))
        ));
        assert!(matches!(
            e.d_poly(&p("1,1,1"), &p("3"), 2, 2),
            Err(Error::TooManyParts { .. })
        ));
        assert!(e.d_poly(&p("2"), &p("2"), 1, 2).is_err());
    }

    #[test]
    fn ell_mu_values() {
        assert_eq!(ell_mu(&p("6,2,1"), 3, 3).unwrap(), 0);
        assert_eq!(ell_mu(&p("1"), 2, 2).unwrap(), 1);
        assert_eq!(ell_mu(&p(""), 3, 2).unwrap(), 0);
    }

    #[test]
    fn tilt_sum_matches_literal_alternating_sum() {
        let e = Engine::new();
        for (m, n, r) in [(3usize, 2usize, 3usize), (4, 2, 3), (4, 3, 3), (5, 2, 2), (5, 3, 3)] {
            for lam in partitions_with_max_len(m, r) {
                for mu in partitions_with_max_len(m, r) {
                    assert_eq!(
                        e.d_poly(&lam, &mu, n, r).unwrap(),
                        e.d_poly_literal(&lam, &mu, n, r).unwrap(),
                        "{lam} {mu} n={n}"
                    );
                }
            }
        }
    }

    #[test]
    fn columns_are_unitriangular_and_linked() {
        let e = Engine::new();
        for n in 2..=3 {
            for m in 0..=5 {
                let d = e.d_matrix(m, n, m).unwrap();
                for (row, col, v) in d.nonzero() {
                    assert!(row.dominance_leq(col).unwrap(), "{row} {col}");
                    assert_eq!(row.n_core(n).unwrap(), col.n_core(n).unwrap());
                    assert!(v.is_polynomial() && v.has_nonnegative_coefficients());
                    if row != col {
                        assert!(v.low_degree().unwrap() >= 1);
                    }
                }
                for (i, _) in d.labels().iter().enumerate() {
                    assert!(d.entry(i, i).is_one());
                }
            }
        }
    }

    #[test]
    fn r_route_block_matches_literal_sum() {
        let e = Engine::new();
        for (n, r) in [(2usize, 2usize), (3, 2), (2, 3), (3, 3)] {
            for m in 0..=5 {
                for lam in partitions_with_max_len(m, r) {
                    for mu in partitions_with_max_len(m, r) {
                        assert_eq!(
                            e.d_poly_via_r(&lam, &mu, n, r).unwrap(),
                            e.d_poly_via_r_literal(&lam, &mu, n, r).unwrap(),
                            "{lam} {mu} n={n} r={r}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn routes_agree_at_full_rank() {
        let e = Engine::new();
        for n in 2..=3 {
            for m in 1..=6 {
                for lam in partitions_of(m) {
                    for mu in partitions_of(m) {
                        let via_r = e.d_poly_via_r(&lam, &mu, n, m.max(2)).unwrap();
                        let direct = e.d_poly(&lam.conjugate(), &mu.conjugate(), n, m.max(2)).unwrap();
                        assert_eq!(via_r, direct, "{lam} {mu} n={n}");
                    }
                }
            }
        }
    }

    #[test]
    fn inverse_relation() {
        let e = Engine::new();
        for n in 2..=3 {
            for m in 0..=5 {
                let d = e.d_matrix(m, n, m).unwrap();
                let em = e.e_matrix(m, n, m).unwrap();
                for lam in d.labels() {
                    for mu in d.labels() {
                        let mut total = LaurentPoly::zero();
                        for nu in d.labels() {
                            let ev = em.get(&lam.conjugate(), &nu.conjugate()).substitute_neg_q();
                            total += &(&ev * &d.get(nu, mu));
                        }
                        let expect = if lam == mu { LaurentPoly::one() } else { LaurentPoly::zero() };
                        assert_eq!(total, expect);
                    }
                }
                for (_, _, v) in em.nonzero() {
                    assert!(v.is_polynomial());
                    v.eval_at(-1).unwrap();
                }
            }
        }
    }

    #[test]
    fn worked_example_column() {
        let e = Engine::new();
        let mu = p("6,2,1");
        let g = e.gplus_vector(&mu, 3, 3).unwrap();
        let rows: Vec<Partition> = g.iter().map(|(l, _)| l.conjugate()).collect();
        let mut expect = vec![p("8,1"), p("7,1,1"), p("6,3"), p("6,2,1")];
        expect.sort_by(|a, b| b.conjugate().cmp(&a.conjugate()));
        let mut got = rows.clone();
        got.sort_by(|a, b| b.conjugate().cmp(&a.conjugate()));
        assert_eq!(got, expect);
        assert!(g.coeff(&mu.conjugate()).is_one());
        for lam in &expect {
            let rep = e.check_theorem2(lam, &mu, 3, 3).unwrap();
            assert!(rep.holds, "{lam}: {} vs {}", rep.lhs, rep.rhs);
            assert_eq!(rep.shift, 3);
            assert!(e.check_theorem1(lam, &mu, 3, 3).unwrap());
        }
    }

    #[test]
    fn hat_tilde_identity_on_the_diagonal() {
        let e = Engine::new();
        for (n, r) in [(2usize, 2usize), (3, 3)] {
            for m in 0..=4 {
                for mu in partitions_with_max_len(m, r) {
                    let rep = e.check_theorem2(&mu, &mu, n, r).unwrap();
                    assert!(rep.holds);
                    assert!(rep.lhs.is_one());
                    let inner = e.d_poly(&mu.tilde(n, r).unwrap(), &mu.hat(n, r).unwrap(), n, r).unwrap();
                    assert_eq!(inner, LaurentPoly::monomial(1, rep.shift as i64));
                }
            }
        }
    }

    #[test]
    fn exports() {
        let e = Engine::new();
        let d = e.d_matrix(2, 2, 2).unwrap();
        let csv = d.to_csv();
        assert_eq!(
            csv,
            "# m=2 n=2 r=2 order=reverse-lexicographic\nlambda\\mu,2,\"1,1\"\n2,1,0\n\"1,1\",q,1\n"
        );
        let j = d.to_json();
        assert_eq!(j["entries"]["1,1"]["2"], serde_json::json!({"1": 1}));
        assert_eq!(j["labels"], serde_json::json!(["2", "1,1"]));
        let g = e.gplus_vector(&p("1,1"), 2, 2).unwrap();
        assert_eq!(
            g.to_json(),
            serde_json::json!([
                {"partition": [2], "poly": {"0": 1}},
                {"partition": [1, 1], "poly": {"1": 1}}
            ])
        );
        assert_eq!(g.to_string(), "|2> + (q)|1,1>");
        assert_eq!(d.to_text(), "d[2; 2] = 1\nd[1,1; 2] = q\nd[1,1; 1,1] = 1\n");
    }
}
