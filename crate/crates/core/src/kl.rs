//! Kazhdan–Lusztig polynomials of the affine symmetric group and their
//! parabolic and alternating-sum variants.
//!
//! All polynomials use the normalised variable described in
//! [`crate::qlaurent`]: the canonical basis element of `w` is
//! `C_w = sum_x h_{x,w} H_x` with `h_{w,w} = 1` and `h_{x,w}` in `q Z[q]` for
//! `x < w`, where `H_s^2 = 1 + (q^{-1} - q) H_s` and `C_s = H_s + q`.
//! [`KlTable::kl_p`] returns the classical polynomial instead.
//!
//! One recursion handles the regular right module (basis `H_x`, all `x`)
//! and the sign-induced modules of standard parabolic subgroups `W_J`: the
//! basis is indexed by minimal representatives `x` of `W_J \ S~_r` and a
//! simple reflection of `J` acts by `-q`. Canonical basis columns of the
//! latter are the alternating sums `sum_{v in W_J} (-q)^{l(v)} h_{vx,y}`.
//! With `J = {s_1, ..., s_{r-1}}` these are the `n_{x,y}`.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use dashmap::DashMap;
use serde::Serialize;

use crate::affine::{min_element, stabilizer_generators, AffinePerm, MinMode, PointR};
use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::qlaurent::LaurentPoly;

/// A column of polynomials indexed by group elements.
pub type Column = HashMap<AffinePerm, LaurentPoly>;

/// A column of polynomials indexed by points of `Z^r`.
pub type PointColumn = HashMap<PointR, LaurentPoly>;

/// `Sign(mask)`: bit `i` of `mask` set iff `s_i` lies in `J`.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Module {
    Regular,
    Sign(u64),
}

fn is_rep(x: &AffinePerm, mask: u64) -> bool {
    (0..x.rank()).all(|i| mask & (1 << i) == 0 || !x.is_left_descent(i))
}

/// Memoised Kazhdan–Lusztig data for `S~_r`.
///
/// Every cache holds complete columns behind `Arc`s; a column is inserted
/// only once it is final, so readers never see partial entries.
pub struct KlTable {
    rank: usize,
    regular: DashMap<AffinePerm, Arc<Column>>,
    sign: DashMap<(u64, AffinePerm), Arc<Column>>,
    inverse: DashMap<AffinePerm, Arc<Column>>,
    p_minus: DashMap<(PointR, i64), Arc<PointColumn>>,
}

#[derive(Serialize)]
struct DumpRecord<'a> {
    x: &'a AffinePerm,
    w: &'a AffinePerm,
    poly: &'a LaurentPoly,
}

impl KlTable {
    pub fn new(rank: usize) -> Result<Self> {
        if rank < 2 {
            return Err(Error::InvalidArgument(format!(
                "affine symmetric group needs rank >= 2, got {rank}"
            )));
        }
        Ok(Self {
            rank,
            regular: DashMap::new(),
            sign: DashMap::new(),
            inverse: DashMap::new(),
            p_minus: DashMap::new(),
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of cached columns (regular, sign-induced, inverse, `P^-`).
    pub fn cache_sizes(&self) -> (usize, usize, usize, usize) {
        (
            self.regular.len(),
            self.sign.len(),
            self.inverse.len(),
            self.p_minus.len(),
        )
    }

    fn check(&self, x: &AffinePerm) -> Result<()> {
        if x.rank() != self.rank {
            return Err(Error::RankMismatch(self.rank, x.rank()));
        }
        if !x.is_affine() {
            return Err(Error::InvalidArgument(format!(
                "{x} is not in the non-extended affine symmetric group"
            )));
        }
        Ok(())
    }

    fn check_point(&self, p: &PointR) -> Result<()> {
        if p.rank() != self.rank {
            return Err(Error::RankMismatch(self.rank, p.rank()));
        }
        Ok(())
    }

    fn check_coset_rep(&self, x: &AffinePerm) -> Result<()> {
        self.check(x)?;
        if !x.is_min_coset_rep() {
            return Err(Error::InvalidArgument(format!(
                "{x} is not a minimal coset representative"
            )));
        }
        Ok(())
    }

    /// The column `x -> h_{x,w}`; its keys are exactly the Bruhat ideal of `w`.
    pub fn column(&self, w: &AffinePerm) -> Result<Arc<Column>> {
        self.check(w)?;
        Ok(self.canonical_column(w, Module::Regular))
    }

    /// The column `x -> n_{x,y}` of the sign-induced module, `y` a minimal
    /// coset representative.
    pub fn sign_column(&self, y: &AffinePerm) -> Result<Arc<Column>> {
        self.check_coset_rep(y)?;
        let mask = ((1u64 << self.rank) - 1) & !1;
        Ok(self.canonical_column(y, Module::Sign(mask)))
    }

    /// Canonical basis column of the module induced from the sign
    /// representation of the parabolic subgroup generated by `gens`, a
    /// proper subset of `{0, ..., r-1}`. `y` must have no left descent in
    /// `gens`.
    pub fn parabolic_sign_column(&self, gens: &[usize], y: &AffinePerm) -> Result<Arc<Column>> {
        self.check(y)?;
        let mask = gens.iter().try_fold(0u64, |m, &i| {
            if i < self.rank {
                Ok(m | 1 << i)
            } else {
                Err(Error::InvalidArgument(format!("no generator s_{i} in rank {}", self.rank)))
            }
        })?;
        if mask.count_ones() as usize >= self.rank {
            return Err(Error::InvalidArgument("parabolic subgroup must be proper".into()));
        }
        if !is_rep(y, mask) {
            return Err(Error::InvalidArgument(format!(
                "{y} is not a minimal coset representative"
            )));
        }
        Ok(self.canonical_column(y, Module::Sign(mask)))
    }

    fn canonical_column(&self, y: &AffinePerm, module: Module) -> Arc<Column> {
        match module {
            Module::Regular => {
                if let Some(c) = self.regular.get(y).map(|c| Arc::clone(&c)) {
                    return c;
                }
                let col = Arc::new(self.compute_column(y, module));
                Arc::clone(self.regular.entry(y.clone()).or_insert(col).value())
            }
            Module::Sign(mask) => {
                let key = (mask, y.clone());
                if let Some(c) = self.sign.get(&key).map(|c| Arc::clone(&c)) {
                    return c;
                }
                let col = Arc::new(self.compute_column(y, module));
                Arc::clone(self.sign.entry(key).or_insert(col).value())
            }
        }
    }

    /// `C_y = C_{ys} C_s - sum_z c_z C_z`, the corrections removing every
    /// coefficient outside `q Z[q]` from the top down.
    fn compute_column(&self, y: &AffinePerm, module: Module) -> Column {
        if y.is_identity() {
            return HashMap::from([(y.clone(), LaurentPoly::one())]);
        }
        let s = (0..self.rank)
            .find(|&i| y.is_right_descent(i))
            .expect("nonidentity element has a right descent");
        let base = self.canonical_column(&y.right_mul_simple(s), module);
        let mut d: Column = HashMap::with_capacity(2 * base.len());
        for (x, p) in base.iter() {
            let xs = x.right_mul_simple(s);
            if let Module::Sign(mask) = module {
                if !is_rep(&xs, mask) {
                    continue;
                }
            }
            let shift = if x.is_right_descent(s) { -1 } else { 1 };
            *d.entry(xs).or_default() += p;
            *d.entry(x.clone()).or_default() += &p.shift(shift);
        }
        let mut pending: BTreeSet<(usize, AffinePerm)> =
            d.keys().filter(|z| *z != y).map(|z| (z.length(), z.clone())).collect();
        while let Some((_, z)) = pending.pop_last() {
            let c = match d.get(&z) {
                Some(p) => p.bar_invariant_correction(),
                None => continue,
            };
            if c.is_zero() {
                continue;
            }
            let cz = self.canonical_column(&z, module);
            for (x, p) in cz.iter() {
                if x != &z && !d.contains_key(x) {
                    pending.insert((x.length(), x.clone()));
                }
                *d.entry(x.clone()).or_default() -= &(&c * p);
            }
        }
        d.retain(|_, p| !p.is_zero());
        self.assert_column(y, &d, module);
        d
    }

    fn assert_column(&self, y: &AffinePerm, col: &Column, module: Module) {
        assert!(col.get(y).is_some_and(|p| p.is_one()), "diagonal of {y} is not 1");
        let ly = y.length() as i64;
        for (x, p) in col {
            if x == y {
                continue;
            }
            let gap = ly - x.length() as i64;
            assert!(
                gap > 0 && p.low_degree().is_some_and(|d| d >= 1),
                "coefficient of {x} in column {y} is {p}"
            );
            if module == Module::Regular {
                assert!(p.has_nonnegative_coefficients(), "negative h_{{{x},{y}}} = {p}");
                assert!(
                    p.terms().all(|(e, _)| (gap - e as i64) % 2 == 0),
                    "parity of h_{{{x},{y}}} = {p}"
                );
                // classical degree bound deg P <= (gap - 1) / 2
                assert!(
                    p.classical_kl(gap).is_ok_and(|c| 2 * c.degree().unwrap_or(0) as i64 <= gap - 1),
                    "degree bound fails for h_{{{x},{y}}} = {p}"
                );
            }
        }
    }

    /// The normalised polynomial `h_{x,w}`; zero unless `x <= w`.
    pub fn kl_p_normalized(&self, x: &AffinePerm, w: &AffinePerm) -> Result<LaurentPoly> {
        self.check(x)?;
        Ok(self.column(w)?.get(x).cloned().unwrap_or_default())
    }

    /// The classical Kazhdan–Lusztig polynomial `P_{x,w}(q)`.
    pub fn kl_p(&self, x: &AffinePerm, w: &AffinePerm) -> Result<LaurentPoly> {
        let h = self.kl_p_normalized(x, w)?;
        if h.is_zero() {
            return Ok(h);
        }
        h.classical_kl(w.length() as i64 - x.length() as i64)
    }

    /// Bruhat order, read off the cached ideal when available.
    pub fn bruhat_leq(&self, x: &AffinePerm, w: &AffinePerm) -> bool {
        match self.regular.get(w) {
            Some(col) => col.contains_key(x),
            None => x.bruhat_leq(w),
        }
    }

    /// The column `z -> Q_{x,z}` (normalised), supported on `z <= x`.
    ///
    /// With `H = [h_{a,b}]`, the defining relation
    /// `sum_x Q_{x,z}(-q) h_{x,w}(q) = delta_{z,w}` says `Q_{x,z}(-q)` is the
    /// `(z, x)` entry of `H^{-1}`. The entries are found by back substitution
    /// over the ideal of `x`.
    pub fn inverse_column(&self, x: &AffinePerm) -> Result<Arc<Column>> {
        self.check(x)?;
        if let Some(c) = self.inverse.get(x).map(|c| Arc::clone(&c)) {
            return Ok(c);
        }
        let ideal = self.column(x)?;
        let mut order: Vec<(usize, &AffinePerm)> =
            ideal.keys().map(|a| (a.length(), a)).collect();
        order.sort_unstable_by(|a, b| b.cmp(a));
        let mut acc: Column = HashMap::new();
        let mut out: Column = HashMap::new();
        for (_, a) in order {
            let mut val = if a == x { LaurentPoly::one() } else { LaurentPoly::zero() };
            if let Some(s) = acc.remove(a) {
                val -= &s;
            }
            if val.is_zero() {
                continue;
            }
            let ca = self.column(a)?;
            for (z, h) in ca.iter() {
                if z != a {
                    *acc.entry(z.clone()).or_default() += &(h * &val);
                }
            }
            let qv = val.substitute_neg_q();
            assert!(qv.is_polynomial(), "Q_{{{x},{a}}} = {qv} is not a polynomial");
            out.insert(a.clone(), qv);
        }
        let out = Arc::new(out);
        Ok(Arc::clone(self.inverse.entry(x.clone()).or_insert(out).value()))
    }

    /// The inverse polynomial `Q_{x,z}`, where both arguments must lie below
    /// `ceiling`. The value does not depend on the ceiling.
    pub fn kl_q(&self, x: &AffinePerm, z: &AffinePerm, ceiling: &AffinePerm) -> Result<LaurentPoly> {
        self.check(x)?;
        self.check(z)?;
        self.check(ceiling)?;
        let ideal = self.column(ceiling)?;
        for a in [x, z] {
            if !ideal.contains_key(a) {
                return Err(Error::InvalidArgument(format!("{a} is not below {ceiling}")));
            }
        }
        Ok(self.inverse_column(x)?.get(z).cloned().unwrap_or_default())
    }

    /// Minimal element and domain point of `p` at level `-n`.
    fn negative_level(&self, p: &PointR, n: i64) -> Result<(AffinePerm, PointR)> {
        self.check_point(p)?;
        if n <= 0 {
            return Err(Error::InvalidArgument(format!("n must be positive, got {n}")));
        }
        min_element(p, -n, MinMode::TildeUnderline)
    }

    /// `Q^-_{mu,lam} = Q_{w(mu,-n), w(lam,-n)}`, zero across different orbits.
    pub fn q_minus(&self, mu: &PointR, lam: &PointR, n: i64) -> Result<LaurentPoly> {
        let (wm, xm) = self.negative_level(mu, n)?;
        let (wl, xl) = self.negative_level(lam, n)?;
        if xm != xl {
            return Ok(LaurentPoly::zero());
        }
        Ok(self.inverse_column(&wm)?.get(&wl).cloned().unwrap_or_default())
    }

    /// The column `mu -> P^-_{mu,lam}` at level `-n`.
    ///
    /// With `lam = w xi`, `xi` in the closed alcove and `w` minimal, this is
    /// the canonical basis column of `w^{-1}` in the module induced from the
    /// sign representation of the stabiliser of `xi`, transported to points
    /// by `x -> x^{-1} xi`.
    pub fn p_minus_column(&self, lam: &PointR, n: i64) -> Result<Arc<PointColumn>> {
        let key = (lam.clone(), n);
        if let Some(c) = self.p_minus.get(&key).map(|c| Arc::clone(&c)) {
            return Ok(c);
        }
        let (wl, xi) = self.negative_level(lam, n)?;
        let stab = stabilizer_generators(&xi, -n);
        let col = self.parabolic_sign_column(&stab, &wl.inverse())?;
        let out: PointColumn = col
            .iter()
            .map(|(x, p)| {
                assert!(p.is_polynomial(), "P^- is not a polynomial: {p}");
                (x.inverse().act_unchecked(-n, &xi), p.clone())
            })
            .collect();
        let out = Arc::new(out);
        Ok(Arc::clone(self.p_minus.entry(key).or_insert(out).value()))
    }

    /// The column `mu -> P^-_{mu,lam}` at level `-n`, obtained by inverting `[Q^-(-q)]` over the points `u xi` with `u` a
    /// minimal representative modulo the stabiliser of `xi` and
    /// `u <= w(lam,-n)`; outside this set the column vanishes.
    pub fn p_minus_column_by_inversion(&self, lam: &PointR, n: i64) -> Result<PointColumn> {
        let (wl, xi) = self.negative_level(lam, n)?;
        let stab = stabilizer_generators(&xi, -n);
        let ideal = self.column(&wl)?;
        let mut support: Vec<(usize, AffinePerm)> = ideal
            .keys()
            .filter(|u| stab.iter().all(|&s| !u.is_right_descent(s)))
            .map(|u| (u.length(), u.clone()))
            .collect();
        support.sort_unstable_by(|a, b| b.cmp(a));
        let point_of: HashMap<&AffinePerm, PointR> = support
            .iter()
            .map(|(_, u)| (u, u.act_unchecked(-n, &xi)))
            .collect();
        let mut acc: Column = HashMap::new();
        let mut out: PointColumn = HashMap::new();
        for (_, u) in &support {
            let mut val = if u == &wl { LaurentPoly::one() } else { LaurentPoly::zero() };
            if let Some(s) = acc.remove(u) {
                val -= &s;
            }
            if val.is_zero() {
                continue;
            }
            let inv = self.inverse_column(u)?;
            for (z, qz) in inv.iter() {
                if z != u && point_of.contains_key(z) {
                    *acc.entry(z.clone()).or_default() += &(&qz.substitute_neg_q() * &val);
                }
            }
            assert!(val.is_polynomial(), "P^- is not a polynomial: {val}");
            out.insert(point_of[u].clone(), val);
        }
        Ok(out)
    }

    pub fn p_minus(&self, mu: &PointR, lam: &PointR, n: i64) -> Result<LaurentPoly> {
        self.check_point(mu)?;
        Ok(self.p_minus_column(lam, n)?.get(mu).cloned().unwrap_or_default())
    }

    /// `r_{beta,alpha} = sum_{s in S_r} (-q)^{l(s)} Q^-_{s beta, alpha}`.
    pub fn r_poly(&self, beta: &PointR, alpha: &PointR, n: i64) -> Result<LaurentPoly> {
        for p in [beta, alpha] {
            self.check_point(p)?;
            if !p.is_strictly_dominant() {
                return Err(Error::InvalidArgument(format!("{p} is not strictly dominant")));
            }
        }
        let mut total = LaurentPoly::zero();
        for s in finite_group_cached(self.rank).iter() {
            let sb = s.act_unchecked(-n, beta);
            let qm = self.q_minus(&sb, alpha, n)?;
            if !qm.is_zero() {
                total += &(&LaurentPoly::neg_q_pow(s.length() as i64) * &qm);
            }
        }
        Ok(total)
    }

    /// `r_{beta,alpha}` for all pairs from `points`, a set of strictly
    /// dominant points containing every strictly dominant point of the
    /// columns `P^-_{-,lam}`, `lam` in the set. Uses
    /// `sum_beta r_{beta,alpha}(-q) P^-_{beta,lam} = delta_{alpha,lam}`.
    /// Entry `[b][a]` of the result is `r_{points[b], points[a]}`.
    pub fn r_block(&self, points: &[PointR], n: i64) -> Result<Vec<Vec<LaurentPoly>>> {
        let index: HashMap<&PointR, usize> = points.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let mut order: Vec<(usize, usize)> = Vec::with_capacity(points.len());
        let mut cols: Vec<Vec<(usize, LaurentPoly)>> = Vec::with_capacity(points.len());
        for (i, lam) in points.iter().enumerate() {
            self.check_point(lam)?;
            if !lam.is_strictly_dominant() {
                return Err(Error::InvalidArgument(format!("{lam} is not strictly dominant")));
            }
            order.push((self.negative_level(lam, n)?.0.length(), i));
            let mut col = Vec::new();
            for (beta, p) in self.p_minus_column(lam, n)?.iter() {
                if !beta.is_strictly_dominant() {
                    continue;
                }
                match index.get(beta) {
                    Some(&b) if b != i => col.push((b, p.clone())),
                    Some(_) => {}
                    None => {
                        return Err(Error::InvalidArgument(format!(
                            "point set is not closed: {beta} lies below {lam}"
                        )))
                    }
                }
            }
            cols.push(col);
        }
        order.sort_unstable();
        // x[a][l] = (P^-)^{-1}_{a,l}, filled in increasing length of l
        let size = points.len();
        let mut x = vec![vec![LaurentPoly::zero(); size]; size];
        for a in 0..size {
            for &(_, l) in &order {
                let mut v = if a == l { LaurentPoly::one() } else { LaurentPoly::zero() };
                for (b, p) in &cols[l] {
                    if !x[a][*b].is_zero() {
                        v -= &(&x[a][*b] * p);
                    }
                }
                x[a][l] = v;
            }
        }
        let mut out = vec![vec![LaurentPoly::zero(); size]; size];
        for (a, row) in x.into_iter().enumerate() {
            for (b, v) in row.into_iter().enumerate() {
                let rv = v.substitute_neg_q();
                assert!(rv.is_polynomial(), "r is not a polynomial: {rv}");
                out[b][a] = rv;
            }
        }
        Ok(out)
    }

    /// `m^{x,w} = sum_{s in S_r} (-q)^{l(w_0) - l(s)} Q_{sx, w_0 w}`.
    pub fn m_poly(&self, x: &AffinePerm, w: &AffinePerm) -> Result<LaurentPoly> {
        self.check_coset_rep(x)?;
        self.check_coset_rep(w)?;
        let w0 = AffinePerm::longest_finite(self.rank);
        let l0 = w0.length() as i64;
        let top = &w0 * w;
        let mut total = LaurentPoly::zero();
        for s in finite_group_cached(self.rank).iter() {
            let inv = self.inverse_column(&(s * x))?;
            if let Some(qv) = inv.get(&top) {
                total += &(&LaurentPoly::neg_q_pow(l0 - s.length() as i64) * qv);
            }
        }
        Ok(total)
    }

    /// `n_{x,y} = sum_{s in S_r} (-q)^{l(s)} h_{sx,y}`, summed literally.
    pub fn n_poly(&self, x: &AffinePerm, y: &AffinePerm) -> Result<LaurentPoly> {
        self.check(x)?;
        let col = self.column(y)?;
        let mut total = LaurentPoly::zero();
        for s in finite_group_cached(self.rank).iter() {
            if let Some(h) = col.get(&(s * x)) {
                total += &(&LaurentPoly::neg_q_pow(s.length() as i64) * h);
            }
        }
        Ok(total)
    }

    /// `n_{x,y}` for minimal coset representatives, read from the canonical
    /// basis of the sign-induced module.
    pub fn n_poly_parabolic(&self, x: &AffinePerm, y: &AffinePerm) -> Result<LaurentPoly> {
        self.check_coset_rep(x)?;
        Ok(self.sign_column(y)?.get(x).cloned().unwrap_or_default())
    }

    /// All cached regular-module entries as `{x, w, poly}` records, sorted.
    pub fn dump_json(&self) -> serde_json::Value {
        let cols: Vec<(AffinePerm, Arc<Column>)> = self
            .regular
            .iter()
            .map(|e| (e.key().clone(), Arc::clone(e.value())))
            .collect();
        let mut records: Vec<(&AffinePerm, &AffinePerm, &LaurentPoly)> = cols
            .iter()
            .flat_map(|(w, col)| col.iter().map(move |(x, p)| (x, w, p)))
            .collect();
        records.sort_by(|a, b| (a.1, a.0).cmp(&(b.1, b.0)));
        let out: Vec<DumpRecord> = records
            .into_iter()
            .map(|(x, w, poly)| DumpRecord { x, w, poly })
            .collect();
        serde_json::to_value(out).expect("records serialise")
    }
}

fn finite_group_cached(r: usize) -> Arc<Vec<AffinePerm>> {
    use std::sync::OnceLock;
    static CACHE: OnceLock<DashMap<usize, Arc<Vec<AffinePerm>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(DashMap::new);
    if let Some(g) = cache.get(&r).map(|g| Arc::clone(&g)) {
        return g;
    }
    let g = Arc::new(crate::affine::finite_group(r));
    Arc::clone(cache.entry(r).or_insert(g).value())
}

/// `w_alpha` and the domain point `xi` of `alpha` at level `n`.
pub fn alcove_of(alpha: &PointR, n: i64) -> Result<(AffinePerm, PointR)> {
    min_element(alpha, n, MinMode::TildeUnderline)
}

/// Longest element of the stabiliser of `xi` at level `n`.
pub fn stabilizer_longest_of(xi: &PointR, n: i64) -> Result<AffinePerm> {
    Ok(crate::affine::stabilizer_longest(xi, n)?.0)
}

fn check_alcove_input(w: &AffinePerm, mu: &Partition, n: usize) -> Result<(PointR, PointR)> {
    let r = w.rank();
    let alpha = mu.pad_to(r)?.add(&PointR::rho(r));
    let (wa, xi) = alcove_of(&alpha, n as i64)?;
    if &wa != w {
        return Err(Error::InvalidArgument(format!(
            "{w} is not the minimal element of {alpha} at level {n}"
        )));
    }
    Ok((alpha, xi))
}

/// `w_hat = w(mu_hat + rho, n) w_{0,xi}` for `w = w_alpha`, `alpha = mu + rho`.
pub fn alcove_hat(w: &AffinePerm, mu: &Partition, n: usize) -> Result<AffinePerm> {
    let r = w.rank();
    let (_, xi) = check_alcove_input(w, mu, n)?;
    let hat = mu.hat(n, r)?.pad_to(r)?.add(&PointR::rho(r));
    let (wh, _) = alcove_of(&hat, n as i64)?;
    Ok(&wh * &stabilizer_longest_of(&xi, n as i64)?)
}

/// The same alcove obtained by translating `A = w 𝒜` by `-n mu1`, applying
/// `w_0` and translating by `2n rho + n mu1`.
///
/// Alcoves are tracked through an interior point: everything is scaled by
/// `r` so that `rho` is interior to the fundamental alcove at level `n r`.
pub fn alcove_hat_via_box(w: &AffinePerm, mu: &Partition, n: usize) -> Result<AffinePerm> {
    let r = w.rank();
    check_alcove_input(w, mu, n)?;
    let (_, mu1) = mu.restricted_decomp(n, r)?;
    let (n, ri) = (n as i64, r as i64);
    let level = n * ri;
    let p0 = PointR::rho(r);
    let a = w.act(level, &p0)?;
    let b = a.sub(&mu1.scale(ri * n));
    let shift = PointR::rho(r).scale(2 * n).add(&mu1.scale(n)).scale(ri);
    let y = b.reversed().add(&shift);
    let (wh, dom) = min_element(&y, level, MinMode::TildeUnderline)?;
    if !dom.underline_eq(&p0) {
        return Err(Error::InvalidArgument(format!(
            "image point {y} is not interior to an alcove"
        )));
    }
    Ok(wh)
}
