//! The extended affine symmetric group in window notation and its level-k
//! actions on `Z^r`.
//!
//! An element is a bijection `w: Z -> Z` with `w(i + r) = w(i) + r`, stored
//! as its window `[w(1), ..., w(r)]`. Products compose as functions:
//! `(u v)(i) = u(v(i))`.
//!
//! A point `p` of `Z^r` is read at level `k` as the sequence
//! `p(i + r) = p(i) - k`, and `w` acts by moving entries:
//! `(w p)(j) = p(w^{-1}(j))`. With this convention `s_i` (`1 <= i < r`)
//! swaps coordinates `i, i+1`, `s_0` sends `(p_1, ..., p_r)` to
//! `(p_r + k, p_2, ..., p_{r-1}, p_1 - k)` and `tau` sends it to
//! `(p_r + k, p_1, ..., p_{r-1})`.
//!
//! For `k > 0` the closed fundamental domain is the set of points whose
//! level-k sequence is weakly decreasing (`p_1 >= ... >= p_r >= p_1 - k`);
//! for `k < 0` it is the set of weakly increasing ones.

use std::fmt;
use std::ops::{Index, Mul};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};

type Coords = SmallVec<[i64; 8]>;

/// A point of `P_r = Z^r`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "Vec<i64>", into = "Vec<i64>")]
pub struct PointR {
    coords: Coords,
}

impl PointR {
    pub fn new(coords: impl Into<Vec<i64>>) -> Self {
        Self {
            coords: Coords::from_vec(coords.into()),
        }
    }

    /// `rho_r = (r-1, r-2, ..., 1, 0)`.
    pub fn rho(r: usize) -> Self {
        Self::new((0..r).rev().map(|i| i as i64).collect::<Vec<_>>())
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn sum(&self) -> i64 {
        self.coords.iter().sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.rank(), other.rank());
        Self {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.rank(), other.rank());
        Self {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: i64) -> Self {
        Self {
            coords: self.coords.iter().map(|a| a * c).collect(),
        }
    }

    pub fn add_constant(&self, c: i64) -> Self {
        Self {
            coords: self.coords.iter().map(|a| a + c).collect(),
        }
    }

    /// Coordinates in reverse order (the action of the longest element of S_r).
    pub fn reversed(&self) -> Self {
        Self {
            coords: self.coords.iter().rev().copied().collect(),
        }
    }

    /// Membership in `P_r^{++}`: strictly decreasing coordinates.
    pub fn is_strictly_dominant(&self) -> bool {
        self.coords.windows(2).all(|w| w[0] > w[1])
    }

    pub fn has_distinct_coords(&self) -> bool {
        let mut c = self.coords.clone();
        c.sort_unstable();
        c.windows(2).all(|w| w[0] != w[1])
    }

    /// Equality in `P_r / Z(1, ..., 1)`.
    pub fn underline_eq(&self, other: &Self) -> bool {
        if self.rank() != other.rank() || self.rank() == 0 {
            return self.rank() == other.rank();
        }
        let d = self.coords[0] - other.coords[0];
        self.coords.iter().zip(&other.coords).all(|(a, b)| a - b == d)
    }

    /// Value of the level-`k` sequence at an arbitrary integer position.
    pub fn seq(&self, k: i64, i: i64) -> i64 {
        let r = self.rank() as i64;
        let (t, p) = ((i - 1).div_euclid(r), (i - 1).rem_euclid(r));
        self.coords[p as usize] - k * t
    }

    /// Whether the point lies in the closed fundamental domain at level `k`.
    pub fn in_domain(&self, k: i64) -> bool {
        let r = self.rank();
        if r == 0 {
            return true;
        }
        let (first, last) = (self.coords[0], self.coords[r - 1]);
        if k > 0 {
            self.coords.windows(2).all(|w| w[0] >= w[1]) && first - last <= k
        } else {
            self.coords.windows(2).all(|w| w[0] <= w[1]) && last - first <= -k
        }
    }
}

impl Index<usize> for PointR {
    type Output = i64;
    fn index(&self, i: usize) -> &i64 {
        &self.coords[i]
    }
}

impl From<Vec<i64>> for PointR {
    fn from(v: Vec<i64>) -> Self {
        Self::new(v)
    }
}

impl From<PointR> for Vec<i64> {
    fn from(p: PointR) -> Self {
        p.coords.into_vec()
    }
}

impl fmt::Display for PointR {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for PointR {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A generator of the extended affine symmetric group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    S(usize),
    Tau,
}

/// An element of the extended affine symmetric group of rank `r`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct AffinePerm {
    window: Coords,
}

impl AffinePerm {
    pub fn from_window(window: impl Into<Vec<i64>>) -> Result<Self> {
        let window = Coords::from_vec(window.into());
        let r = window.len();
        if r == 0 {
            return Err(Error::InvalidArgument("empty window".into()));
        }
        let mut seen = vec![false; r];
        for &v in &window {
            let res = v.rem_euclid(r as i64) as usize;
            if std::mem::replace(&mut seen[res], true) {
                return Err(Error::InvalidArgument(format!(
                    "window {window:?} repeats a residue mod {r}"
                )));
            }
        }
        Ok(Self { window })
    }

    pub fn identity(r: usize) -> Self {
        Self {
            window: (1..=r as i64).collect(),
        }
    }

    /// The simple reflection `s_i`, `0 <= i < r`.
    pub fn simple(i: usize, r: usize) -> Result<Self> {
        if r < 2 || i >= r {
            return Err(Error::InvalidArgument(format!(
                "no generator s_{i} in rank {r}"
            )));
        }
        let mut w = Self::identity(r);
        if i == 0 {
            w.window[0] = 0;
            w.window[r - 1] = r as i64 + 1;
        } else {
            w.window.swap(i - 1, i);
        }
        Ok(w)
    }

    pub fn tau(r: usize) -> Self {
        Self {
            window: (2..=r as i64 + 1).collect(),
        }
    }

    pub fn generator(g: Generator, r: usize) -> Result<Self> {
        match g {
            Generator::S(i) => Self::simple(i, r),
            Generator::Tau if r >= 2 => Ok(Self::tau(r)),
            Generator::Tau => Err(Error::InvalidArgument(format!("no tau in rank {r}"))),
        }
    }

    /// The longest element of the finite symmetric group `S_r`.
    pub fn longest_finite(r: usize) -> Self {
        Self {
            window: (1..=r as i64).rev().collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.window.len()
    }

    pub fn window(&self) -> &[i64] {
        &self.window
    }

    pub fn is_identity(&self) -> bool {
        self.window.iter().enumerate().all(|(i, &v)| v == i as i64 + 1)
    }

    /// `w(i)` for any integer `i`.
    pub fn value(&self, i: i64) -> i64 {
        let r = self.rank() as i64;
        let (t, p) = ((i - 1).div_euclid(r), (i - 1).rem_euclid(r));
        self.window[p as usize] + r * t
    }

    /// `w^{-1}(v)` for any integer `v`.
    pub fn inverse_value(&self, v: i64) -> i64 {
        let r = self.rank() as i64;
        let res = v.rem_euclid(r);
        let (p, &wp) = self
            .window
            .iter()
            .enumerate()
            .find(|(_, &wp)| wp.rem_euclid(r) == res)
            .expect("window is a valid affine permutation");
        p as i64 + 1 + (v - wp)
    }

    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.rank() != other.rank() {
            return Err(Error::RankMismatch(self.rank(), other.rank()));
        }
        Ok(Self {
            window: other.window.iter().map(|&v| self.value(v)).collect(),
        })
    }

    pub fn inverse(&self) -> Self {
        let r = self.rank() as i64;
        Self {
            window: (1..=r).map(|v| self.inverse_value(v)).collect(),
        }
    }

    /// Coxeter length, `sum_{i<j} |floor((w(j) - w(i)) / r)|`.
    pub fn length(&self) -> usize {
        let r = self.rank() as i64;
        let mut total = 0i64;
        for i in 0..self.window.len() {
            for j in i + 1..self.window.len() {
                total += (self.window[j] - self.window[i]).div_euclid(r).abs();
            }
        }
        total as usize
    }

    /// The exponent `a` in `w = sigma tau^a`.
    pub fn tau_power(&self) -> i64 {
        let s: i64 = self
            .window
            .iter()
            .enumerate()
            .map(|(i, &v)| v - (i as i64 + 1))
            .sum();
        s / self.rank() as i64
    }

    /// Whether `w` lies in the non-extended group.
    pub fn is_affine(&self) -> bool {
        self.tau_power() == 0
    }

    /// Whether `w` lies in the finite symmetric group `S_r`.
    pub fn is_finite(&self) -> bool {
        let r = self.rank() as i64;
        self.window.iter().all(|&v| (1..=r).contains(&v))
    }

    /// The component `sigma` of `w = sigma tau^a`.
    pub fn underline(&self) -> Self {
        let a = self.tau_power();
        let r = self.rank() as i64;
        Self {
            window: (1..=r).map(|i| self.value(i - a)).collect(),
        }
    }

    /// The automorphism with `tau -> tau^{-1}` and `s_i -> s_{-i}`, realised
    /// as conjugation by `i -> 1 - i`.
    pub fn sharp(&self) -> Self {
        let r = self.rank() as i64;
        Self {
            window: (1..=r).map(|i| 1 - self.value(1 - i)).collect(),
        }
    }

    /// `l(s_i w) < l(w)`.
    pub fn is_left_descent(&self, i: usize) -> bool {
        let i = i as i64;
        self.inverse_value(i) > self.inverse_value(i + 1)
    }

    /// `l(w s_i) < l(w)`.
    pub fn is_right_descent(&self, i: usize) -> bool {
        let i = i as i64;
        self.value(i) > self.value(i + 1)
    }

    pub fn first_left_descent(&self) -> Option<usize> {
        (0..self.rank()).find(|&i| self.is_left_descent(i))
    }

    /// `s_i w`: exchanges the values in residue classes `i` and `i + 1`.
    pub fn left_mul_simple(&self, i: usize) -> Self {
        let r = self.rank() as i64;
        let (a, b) = (i as i64 % r, (i as i64 + 1) % r);
        Self {
            window: self
                .window
                .iter()
                .map(|&v| {
                    let res = v.rem_euclid(r);
                    if res == a {
                        v + 1
                    } else if res == b {
                        v - 1
                    } else {
                        v
                    }
                })
                .collect(),
        }
    }

    /// `w s_i`: exchanges positions `i` and `i + 1`.
    pub fn right_mul_simple(&self, i: usize) -> Self {
        let r = self.rank();
        let mut window = self.window.clone();
        if i == 0 {
            let (first, last) = (window[0], window[r - 1]);
            window[0] = last - r as i64;
            window[r - 1] = first + r as i64;
        } else {
            window.swap(i - 1, i);
        }
        Self { window }
    }

    /// A reduced word `s_{i_1} ... s_{i_k} tau^a`, returned as the list of
    /// simple indices and the power of `tau`.
    pub fn reduced_word(&self) -> (Vec<usize>, i64) {
        let mut u = self.underline();
        let mut word = Vec::new();
        while let Some(i) = u.first_left_descent() {
            word.push(i);
            u = u.left_mul_simple(i);
        }
        (word, self.tau_power())
    }

    pub fn from_word(word: &[usize], tau_power: i64, r: usize) -> Result<Self> {
        let mut w = Self::identity(r);
        for &i in word {
            w = w.compose(&Self::simple(i, r)?)?;
        }
        let t = if tau_power >= 0 {
            Self::tau(r)
        } else {
            Self::tau(r).inverse()
        };
        for _ in 0..tau_power.abs() {
            w = w.compose(&t)?;
        }
        Ok(w)
    }

    /// Debug dump of a reduced word, e.g. `"s0 s2 s1"`, with `tau^a`
    /// appended when `a != 0`.
    pub fn word_string(&self) -> String {
        let (word, a) = self.reduced_word();
        let mut parts: Vec<String> = word.iter().map(|i| format!("s{i}")).collect();
        if a != 0 {
            parts.push(format!("tau^{a}"));
        }
        if parts.is_empty() {
            "e".into()
        } else {
            parts.join(" ")
        }
    }

    /// Action at level `k` on `Z^r`.
    pub fn act(&self, k: i64, p: &PointR) -> Result<PointR> {
        if k == 0 {
            return Err(Error::InvalidArgument("level must be nonzero".into()));
        }
        if p.rank() != self.rank() {
            return Err(Error::RankMismatch(self.rank(), p.rank()));
        }
        Ok(self.act_unchecked(k, p))
    }

    pub(crate) fn act_unchecked(&self, k: i64, p: &PointR) -> PointR {
        let r = self.rank() as i64;
        PointR {
            coords: (1..=r).map(|j| p.seq(k, self.inverse_value(j))).collect(),
        }
    }

    /// Minimal length representative of the right coset `S_r w`.
    pub fn is_min_coset_rep(&self) -> bool {
        (1..self.rank()).all(|i| !self.is_left_descent(i))
    }

    /// Bruhat order `self <= w`, by the descent recursion: for a left descent
    /// `s` of `w`, `x <= w` iff `sx <= sw` when `s` is a descent of `x`, and
    /// iff `x <= sw` otherwise.
    pub fn bruhat_leq(&self, w: &Self) -> bool {
        if self.rank() != w.rank() || self.tau_power() != w.tau_power() {
            return false;
        }
        let (mut x, mut w) = (self.underline(), w.underline());
        let (mut lx, mut lw) = (x.length(), w.length());
        loop {
            if lx > lw {
                return false;
            }
            if lx == lw {
                return x == w;
            }
            if lx == 0 {
                return true;
            }
            let s = w.first_left_descent().expect("nonidentity has a descent");
            if x.is_left_descent(s) {
                x = x.left_mul_simple(s);
                lx -= 1;
            }
            w = w.left_mul_simple(s);
            lw -= 1;
        }
    }
}

impl<'a> Mul<&'a AffinePerm> for &'a AffinePerm {
    type Output = AffinePerm;
    fn mul(self, rhs: &'a AffinePerm) -> AffinePerm {
        self.compose(rhs).expect("rank mismatch in product")
    }
}

impl TryFrom<Vec<i64>> for AffinePerm {
    type Error = Error;
    fn try_from(v: Vec<i64>) -> Result<Self> {
        Self::from_window(v)
    }
}

impl From<AffinePerm> for Vec<i64> {
    fn from(w: AffinePerm) -> Self {
        w.window.into_vec()
    }
}

impl fmt::Display for AffinePerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.window.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for AffinePerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for AffinePerm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let inner = t
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("window must be bracketed: {s:?}")))?;
        let window = inner
            .split(',')
            .map(|x| {
                x.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Parse(format!("bad window {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_window(window)
    }
}

/// Which minimal element [`min_element`] returns.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MinMode {
    /// `w(p, k)` in the extended group, normalised so that the domain point
    /// `w^{-1} p` has coordinate sum in `[0, |k|)`.
    Hat,
    /// `w(p, k)` projected to the non-extended group; the domain point keeps
    /// the coordinate sum of `p`.
    TildeUnderline,
}

/// The minimal length `w` with `w^{-1} p` in the closed fundamental domain
/// at level `k`, together with that domain point.
///
/// Built by repeatedly applying the lowest-indexed generator that strictly
/// reduces the inversions of the level-`k` sequence; ties are never swapped,
/// which makes the result minimal in its coset of the stabiliser.
pub fn min_element(p: &PointR, k: i64, mode: MinMode) -> Result<(AffinePerm, PointR)> {
    if k == 0 {
        return Err(Error::InvalidArgument("level must be nonzero".into()));
    }
    let r = p.rank();
    if r < 2 {
        return Err(Error::InvalidArgument("rank must be at least 2".into()));
    }
    let mut w = AffinePerm::identity(r);
    let mut cur = p.clone();
    loop {
        let misordered = |a: i64, b: i64| if k > 0 { a < b } else { a > b };
        let step = (0..r).find(|&i| {
            if i == 0 {
                misordered(cur.coords[r - 1] + k, cur.coords[0])
            } else {
                misordered(cur.coords[i - 1], cur.coords[i])
            }
        });
        match step {
            None => break,
            Some(i) => {
                let s = AffinePerm::simple(i, r)?;
                cur = s.act_unchecked(k, &cur);
                w = w.right_mul_simple(i);
            }
        }
    }
    debug_assert!(cur.in_domain(k));
    if mode == MinMode::Hat {
        let a = cur.sum().div_euclid(k);
        let tau = AffinePerm::tau(r);
        let step = if a >= 0 { tau.inverse() } else { tau.clone() };
        for _ in 0..a.abs() {
            cur = step.act_unchecked(k, &cur);
        }
        w = &w * &AffinePerm::from_word(&[], a, r)?;
    }
    Ok((w, cur))
}

/// Generators of the non-extended group fixing a domain point at level `k`.
pub fn stabilizer_generators(p: &PointR, k: i64) -> Vec<usize> {
    let r = p.rank();
    (0..r)
        .filter(|&i| {
            if i == 0 {
                p.coords[r - 1] + k == p.coords[0]
            } else {
                p.coords[i - 1] == p.coords[i]
            }
        })
        .collect()
}

/// Longest element of the standard parabolic subgroup generated by `gens`,
/// a proper subset of `{0, ..., r-1}`, and its length.
pub fn parabolic_longest(gens: &[usize], r: usize) -> Result<(AffinePerm, usize)> {
    if gens.len() >= r {
        return Err(Error::InvalidArgument(
            "parabolic subgroup must be proper".into(),
        ));
    }
    let in_j = |i: usize| gens.contains(&(i % r));
    let start = (0..r).find(|&i| !in_j(i)).expect("proper subset");
    let mut w = AffinePerm::identity(r);
    let mut length = 0;
    let mut i = start + 1;
    while i <= start + r {
        if !in_j(i) {
            i += 1;
            continue;
        }
        let a = i;
        while in_j(i) {
            i += 1;
        }
        // generators s_a .. s_{i-1} reverse positions a ..= i
        let t = i - a;
        length += t * (t + 1) / 2;
        for j in 0..=t {
            let pos = (a + j) as i64;
            let target = (a + t - j) as i64;
            let slot = (pos - 1).rem_euclid(r as i64) as usize;
            let period = (pos - 1).div_euclid(r as i64);
            w.window[slot] = target - r as i64 * period;
        }
    }
    Ok((w, length))
}

/// Longest element of the stabiliser of a closed-domain point at level `k`.
pub fn stabilizer_longest(p: &PointR, k: i64) -> Result<(AffinePerm, usize)> {
    if k == 0 {
        return Err(Error::InvalidArgument("level must be nonzero".into()));
    }
    if !p.in_domain(k) {
        return Err(Error::InvalidArgument(format!(
            "{p} is not in the closed fundamental domain at level {k}"
        )));
    }
    parabolic_longest(&stabilizer_generators(p, k), p.rank())
}

/// All elements of the finite symmetric group `S_r`, in lexicographic order
/// of their windows.
pub fn finite_group(r: usize) -> Vec<AffinePerm> {
    let mut cur: Vec<i64> = (1..=r as i64).collect();
    let mut out = vec![AffinePerm {
        window: Coords::from_slice(&cur),
    }];
    loop {
        let Some(i) = (0..r.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            return out;
        };
        let j = (i + 1..r).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
        out.push(AffinePerm {
            window: Coords::from_slice(&cur),
        });
    }
}
