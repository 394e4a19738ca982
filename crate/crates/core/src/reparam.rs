//! Monotone piecewise-linear surjections between rational-length segments.
//!
//! A [`PlMap`] represents a nondecreasing surjection `[0, ℓ] → [0, ℓ′]`
//! that is linear between finitely many rational breakpoints. The strictly
//! increasing ones are exactly the invertible maps; maps with flats carry
//! stop data. Values are kept in a canonical form (no interior breakpoint on
//! the segment spanned by its neighbours), so structural equality coincides
//! with pointwise equality and is decidable bit for bit.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::rat::{rat_display, Rat};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReparamError {
    #[error("a map needs at least two breakpoints")]
    TooFewPoints,
    #[error("segment lengths must be positive, got dom={0}, cod={1}")]
    NonPositiveLength(String, String),
    #[error("breakpoints must start at (0,0) and end at (dom, cod); got {0}")]
    WrongEndpoints(String),
    #[error("breakpoint {index}: inputs must strictly increase, outputs must not decrease")]
    NonMonotone { index: usize },
    #[error("length mismatch: cannot feed a segment of length {got} where {expected} is required")]
    LengthMismatch { expected: String, got: String },
    #[error("bad partition: {0}")]
    BadPartition(String),
    #[error("argument {0} outside the map's domain")]
    OutOfDomain(String),
    #[error("tensor of an empty family")]
    EmptyTensor,
}

/// A maximal flat of a monotone map: the constant output level together with
/// the maximal input interval realizing it.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct FlatRecord {
    pub value: Rat,
    pub start: Rat,
    pub end: Rat,
}

/// Piecewise-linear monotone surjection in canonical form.
///
/// Invariants: breakpoints run from `(0, 0)` to `(dom_len, cod_len)` with
/// strictly increasing inputs and nondecreasing outputs, both lengths are
/// positive, and no interior breakpoint is collinear with its neighbours.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PlMap {
    points: Vec<(Rat, Rat)>,
}

impl fmt::Debug for PlMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for PlMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "pl {} {} :",
            rat_display(self.dom_len()),
            rat_display(self.cod_len())
        )?;
        for (i, (t, v)) in self.points.iter().enumerate() {
            let sep = if i == 0 { " " } else { " ; " };
            write!(f, "{sep}{} {}", rat_display(t), rat_display(v))?;
        }
        Ok(())
    }
}

fn collinear(a: &(Rat, Rat), b: &(Rat, Rat), c: &(Rat, Rat)) -> bool {
    (&b.0 - &a.0) * (&c.1 - &a.1) == (&c.0 - &a.0) * (&b.1 - &a.1)
}

fn canonicalize(points: Vec<(Rat, Rat)>) -> Vec<(Rat, Rat)> {
    let mut out: Vec<(Rat, Rat)> = Vec::with_capacity(points.len());
    for p in points {
        while out.len() >= 2 && collinear(&out[out.len() - 2], &out[out.len() - 1], &p) {
            out.pop();
        }
        out.push(p);
    }
    out
}

impl PlMap {
    /// Validates, canonicalizes and wraps a breakpoint list for the segment
    /// `[0, dom_len] → [0, cod_len]`. Idempotent: re-canonicalizing the points
    /// of a `PlMap` reproduces it.
    pub fn new(dom_len: Rat, cod_len: Rat, points: Vec<(Rat, Rat)>) -> Result<Self, ReparamError> {
        if !dom_len.is_positive() || !cod_len.is_positive() {
            return Err(ReparamError::NonPositiveLength(
                rat_display(&dom_len),
                rat_display(&cod_len),
            ));
        }
        if points.len() < 2 {
            return Err(ReparamError::TooFewPoints);
        }
        let first = points.first().unwrap();
        let last = points.last().unwrap();
        if !first.0.is_zero() || !first.1.is_zero() || last.0 != dom_len || last.1 != cod_len {
            return Err(ReparamError::WrongEndpoints(format!(
                "({}, {}) .. ({}, {})",
                rat_display(&first.0),
                rat_display(&first.1),
                rat_display(&last.0),
                rat_display(&last.1),
            )));
        }
        for (i, w) in points.windows(2).enumerate() {
            if w[1].0 <= w[0].0 || w[1].1 < w[0].1 {
                return Err(ReparamError::NonMonotone { index: i + 1 });
            }
        }
        Ok(PlMap {
            points: canonicalize(points),
        })
    }

    /// Builds a map whose lengths are read off the final breakpoint.
    pub fn from_points(points: Vec<(Rat, Rat)>) -> Result<Self, ReparamError> {
        let (dom, cod) = match points.last() {
            Some(p) => (p.0.clone(), p.1.clone()),
            None => return Err(ReparamError::TooFewPoints),
        };
        PlMap::new(dom, cod, points)
    }

    fn from_points_unchecked(points: Vec<(Rat, Rat)>) -> Self {
        PlMap {
            points: canonicalize(points),
        }
    }

    /// Identity on `[0, len]`. Panics if `len` is not positive.
    pub fn identity(len: Rat) -> Self {
        assert!(len.is_positive(), "identity needs a positive length");
        PlMap {
            points: vec![(Rat::zero(), Rat::zero()), (len.clone(), len)],
        }
    }

    /// The linear rescaling `[0, len] → [0, 1]`, `t ↦ t/len`.
    pub fn scale_to_unit(len: Rat) -> Self {
        assert!(len.is_positive(), "scaling needs a positive length");
        PlMap {
            points: vec![(Rat::zero(), Rat::zero()), (len, Rat::one())],
        }
    }

    /// The linear rescaling `[0, 1] → [0, len]`, inverse of
    /// [`PlMap::scale_to_unit`].
    pub fn scale_from_unit(len: Rat) -> Self {
        assert!(len.is_positive(), "scaling needs a positive length");
        PlMap {
            points: vec![(Rat::zero(), Rat::zero()), (Rat::one(), len)],
        }
    }

    pub fn dom_len(&self) -> &Rat {
        &self.points.last().unwrap().0
    }

    pub fn cod_len(&self) -> &Rat {
        &self.points.last().unwrap().1
    }

    pub fn points(&self) -> &[(Rat, Rat)] {
        &self.points
    }

    pub fn is_unit(&self) -> bool {
        self.dom_len().is_one() && self.cod_len().is_one()
    }

    /// True when the map is linear, i.e. has no interior breakpoints.
    pub fn is_linear(&self) -> bool {
        self.points.len() == 2
    }

    /// Membership in the invertible class: outputs strictly increase.
    pub fn is_homeo(&self) -> bool {
        self.points.windows(2).all(|w| w[0].1 < w[1].1)
    }

    /// Evaluates the map at `t ∈ [0, dom_len]`.
    pub fn eval(&self, t: &Rat) -> Result<Rat, ReparamError> {
        if t < &Rat::zero() || t > self.dom_len() {
            return Err(ReparamError::OutOfDomain(rat_display(t)));
        }
        Ok(self.eval_unchecked(t))
    }

    fn eval_unchecked(&self, t: &Rat) -> Rat {
        let idx = self.points.partition_point(|p| &p.0 < t);
        if idx == 0 {
            return self.points[0].1.clone();
        }
        let (t1, v1) = &self.points[idx];
        if t1 == t {
            return v1.clone();
        }
        let (t0, v0) = &self.points[idx - 1];
        v0 + (v1 - v0) * (t - t0) / (t1 - t0)
    }

    /// Smallest `t` with `f(t) = v`, for `v ∈ [0, cod_len]`.
    pub fn min_preimage(&self, v: &Rat) -> Result<Rat, ReparamError> {
        if v < &Rat::zero() || v > self.cod_len() {
            return Err(ReparamError::OutOfDomain(rat_display(v)));
        }
        let idx = self.points.partition_point(|p| &p.1 < v);
        if idx == 0 {
            return Ok(self.points[0].0.clone());
        }
        let (t1, v1) = &self.points[idx];
        let (t0, v0) = &self.points[idx - 1];
        Ok(t0 + (t1 - t0) * (v - v0) / (v1 - v0))
    }

    /// Largest `t` with `f(t) = v`, for `v ∈ [0, cod_len]`.
    pub fn max_preimage(&self, v: &Rat) -> Result<Rat, ReparamError> {
        if v < &Rat::zero() || v > self.cod_len() {
            return Err(ReparamError::OutOfDomain(rat_display(v)));
        }
        let idx = self.points.partition_point(|p| &p.1 <= v);
        if idx == self.points.len() {
            return Ok(self.points.last().unwrap().0.clone());
        }
        let (t1, v1) = &self.points[idx];
        let (t0, v0) = &self.points[idx - 1];
        if v0 == v {
            return Ok(t0.clone());
        }
        Ok(t0 + (t1 - t0) * (v - v0) / (v1 - v0))
    }

    /// Sequential composition: applies `self` first, then `other`.
    ///
    /// Requires `self.cod_len() == other.dom_len()`; the result is exact and
    /// canonical.
    pub fn then(&self, other: &PlMap) -> Result<PlMap, ReparamError> {
        if self.cod_len() != other.dom_len() {
            return Err(ReparamError::LengthMismatch {
                expected: rat_display(other.dom_len()),
                got: rat_display(self.cod_len()),
            });
        }
        // Breakpoints of the composite lie among self's breakpoints and the
        // extreme preimages of other's breakpoints.
        let mut grid: Vec<Rat> = self.points.iter().map(|p| p.0.clone()).collect();
        for (w, _) in &other.points {
            grid.push(self.min_preimage(w)?);
            grid.push(self.max_preimage(w)?);
        }
        grid.sort();
        grid.dedup();
        let pts = grid
            .into_iter()
            .map(|t| {
                let v = other.eval_unchecked(&self.eval_unchecked(&t));
                (t, v)
            })
            .collect();
        Ok(PlMap::from_points_unchecked(pts))
    }

    /// Concatenation along both axes: the i-th block acts as `maps[i]`
    /// shifted by the cumulative lengths of the earlier blocks.
    pub fn tensor(maps: &[PlMap]) -> Result<PlMap, ReparamError> {
        if maps.is_empty() {
            return Err(ReparamError::EmptyTensor);
        }
        let mut pts = vec![(Rat::zero(), Rat::zero())];
        let mut t_off = Rat::zero();
        let mut v_off = Rat::zero();
        for m in maps {
            for (t, v) in m.points.iter().skip(1) {
                pts.push((&t_off + t, &v_off + v));
            }
            t_off += m.dom_len();
            v_off += m.cod_len();
        }
        Ok(PlMap::from_points_unchecked(pts))
    }

    /// Binary tensor.
    pub fn tensor_with(&self, other: &PlMap) -> PlMap {
        PlMap::tensor(&[self.clone(), other.clone()]).expect("nonempty tensor")
    }

    /// Splits the map along a partition of its codomain.
    ///
    /// Cut inputs are the minimal preimages of the cumulative sums, so a flat
    /// sitting at a cumulative level is assigned to the later factor; for an
    /// invertible map this is the unique decomposition. The factors tensor
    /// back to `self` exactly.
    pub fn decompose(&self, partition: &[Rat]) -> Result<Vec<PlMap>, ReparamError> {
        if partition.is_empty() {
            return Err(ReparamError::BadPartition("empty partition".to_string()));
        }
        if partition.iter().any(|p| !p.is_positive()) {
            return Err(ReparamError::BadPartition(
                "all parts must be positive".to_string(),
            ));
        }
        let total: Rat = partition.iter().sum();
        if &total != self.cod_len() {
            return Err(ReparamError::BadPartition(format!(
                "parts sum to {}, expected {}",
                rat_display(&total),
                rat_display(self.cod_len())
            )));
        }
        let n = partition.len();
        let mut cuts = Vec::with_capacity(n + 1);
        cuts.push(Rat::zero());
        let mut acc = Rat::zero();
        for part in &partition[..n - 1] {
            acc += part;
            cuts.push(self.min_preimage(&acc)?);
        }
        cuts.push(self.dom_len().clone());

        let mut factors = Vec::with_capacity(n);
        let mut v_base = Rat::zero();
        for i in 0..n {
            let (lo, hi) = (&cuts[i], &cuts[i + 1]);
            let mut pts = vec![(Rat::zero(), Rat::zero())];
            for (t, v) in &self.points {
                if t > lo && t < hi {
                    pts.push((t - lo, v - &v_base));
                }
            }
            pts.push((hi - lo, partition[i].clone()));
            factors.push(PlMap::from_points_unchecked(pts));
            v_base += &partition[i];
        }
        Ok(factors)
    }

    /// Maximal flats in increasing order; empty exactly for the invertible
    /// maps.
    pub fn flat_values(&self) -> Vec<FlatRecord> {
        self.points
            .windows(2)
            .filter(|w| w[0].1 == w[1].1)
            .map(|w| FlatRecord {
                value: w[0].1.clone(),
                start: w[0].0.clone(),
                end: w[1].0.clone(),
            })
            .collect()
    }

    /// The set of output levels at which the map has a flat.
    pub fn flat_value_set(&self) -> BTreeSet<Rat> {
        self.flat_values().into_iter().map(|f| f.value).collect()
    }

    /// Finds a `psi` with `psi.then(via) == self`, both maps on the unit
    /// segment.
    ///
    /// A witness exists exactly when every flat value of `via` is a flat
    /// value of `self`; it is built by sweeping the monotone relation
    /// `{(t, s) : self(t) = via(s)}` from `(0, 0)` to `(1, 1)`, traversing
    /// each flat of `via` affinely during the matching flat of `self`.
    /// Absence of a witness is a regular result, not an error.
    pub fn factor_through(&self, via: &PlMap) -> Option<PlMap> {
        assert!(
            self.is_unit() && via.is_unit(),
            "factor_through works on unit-segment maps"
        );
        let mut values: Vec<Rat> = self
            .points
            .iter()
            .chain(via.points.iter())
            .map(|p| p.1.clone())
            .collect();
        values.sort();
        values.dedup();

        let mut pts: Vec<(Rat, Rat)> = Vec::new();
        let push = |p: (Rat, Rat), pts: &mut Vec<(Rat, Rat)>| {
            if pts.last() != Some(&p) {
                pts.push(p);
            }
        };
        for w in &values {
            let t_lo = self.min_preimage(w).expect("value in range");
            let t_hi = self.max_preimage(w).expect("value in range");
            let s_lo = via.min_preimage(w).expect("value in range");
            let s_hi = via.max_preimage(w).expect("value in range");
            if t_lo == t_hi && s_lo < s_hi {
                // `via` stops at this level but `self` does not: any witness
                // would have to jump.
                return None;
            }
            push((t_lo, s_lo), &mut pts);
            push((t_hi, s_hi), &mut pts);
        }
        Some(PlMap::from_points_unchecked(pts))
    }
}

/// Produces `(a, b)` on the unit segment with `a.then(u) == b.then(v)`,
/// for `u, v` sharing domain length 1 and a common codomain.
///
/// When one side is linear the substitution answer is returned; otherwise a
/// monotone staircase sweep through `{(x, y) : u(x) = v(y)}` from `(0,0)` to
/// `(1,1)` yields both maps, parametrized uniformly over the sweep segments.
pub fn common_reparam(u: &PlMap, v: &PlMap) -> Result<(PlMap, PlMap), ReparamError> {
    if !u.dom_len().is_one() || !v.dom_len().is_one() {
        return Err(ReparamError::LengthMismatch {
            expected: "1".to_string(),
            got: format!("{}, {}", rat_display(u.dom_len()), rat_display(v.dom_len())),
        });
    }
    if u.cod_len() != v.cod_len() {
        return Err(ReparamError::LengthMismatch {
            expected: rat_display(u.cod_len()),
            got: rat_display(v.cod_len()),
        });
    }
    let unscale = PlMap::scale_to_unit(u.cod_len().clone());
    if u.is_linear() {
        return Ok((v.then(&unscale)?, PlMap::identity(Rat::one())));
    }
    if v.is_linear() {
        return Ok((PlMap::identity(Rat::one()), u.then(&unscale)?));
    }

    let mut values: Vec<Rat> = u
        .points
        .iter()
        .chain(v.points.iter())
        .map(|p| p.1.clone())
        .collect();
    values.sort();
    values.dedup();

    let mut steps: Vec<(Rat, Rat)> = Vec::new();
    let push = |p: (Rat, Rat), steps: &mut Vec<(Rat, Rat)>| {
        if steps.last() != Some(&p) {
            steps.push(p);
        }
    };
    for w in &values {
        let a_lo = u.min_preimage(w)?;
        let a_hi = u.max_preimage(w)?;
        let b_lo = v.min_preimage(w)?;
        let b_hi = v.max_preimage(w)?;
        push((a_lo, b_lo), &mut steps);
        push((a_hi, b_hi), &mut steps);
    }
    let m = steps.len() - 1;
    debug_assert!(m >= 1);
    let denom = crate::rat::rat_int(m as i64);
    let mut a_pts = Vec::with_capacity(steps.len());
    let mut b_pts = Vec::with_capacity(steps.len());
    for (k, (a, b)) in steps.into_iter().enumerate() {
        let r = crate::rat::rat_int(k as i64) / &denom;
        a_pts.push((r.clone(), a));
        b_pts.push((r, b));
    }
    Ok((
        PlMap::from_points_unchecked(a_pts),
        PlMap::from_points_unchecked(b_pts),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};

    fn unit_id() -> PlMap {
        PlMap::identity(rat_int(1))
    }

    fn half_flat() -> PlMap {
        // flat at level 1 over [1/2, 1]
        PlMap::new(
            rat_int(1),
            rat_int(1),
            vec![(rat(0, 1), rat(0, 1)), (rat(1, 2), rat(1, 1)), (rat(1, 1), rat(1, 1))],
        )
        .unwrap()
    }

    #[test]
    fn construction_validates() {
        assert!(PlMap::new(rat_int(1), rat_int(1), vec![(rat(0, 1), rat(0, 1))]).is_err());
        assert!(matches!(
            PlMap::new(rat_int(0), rat_int(1), vec![(rat(0, 1), rat(0, 1)), (rat(0, 1), rat(1, 1))]),
            Err(ReparamError::NonPositiveLength(..))
        ));
        // wrong endpoints
        assert!(PlMap::new(
            rat_int(1),
            rat_int(1),
            vec![(rat(0, 1), rat(1, 2)), (rat(1, 1), rat(1, 1))]
        )
        .is_err());
        // decreasing output
        assert!(PlMap::new(
            rat_int(1),
            rat_int(1),
            vec![(rat(0, 1), rat(0, 1)), (rat(1, 2), rat(1, 1)), (rat(1, 1), rat(1, 1)), ]
        )
        .is_ok());
        assert!(matches!(
            PlMap::new(
                rat_int(1),
                rat_int(1),
                vec![
                    (rat(0, 1), rat(0, 1)),
                    (rat(1, 2), rat(1, 1)),
                    (rat(3, 4), rat(1, 2)),
                    (rat(1, 1), rat(1, 1)),
                ]
            ),
            Err(ReparamError::NonMonotone { .. })
        ));
        // duplicate input
        assert!(PlMap::new(
            rat_int(1),
            rat_int(1),
            vec![(rat(0, 1), rat(0, 1)), (rat(1, 2), rat(1, 2)), (rat(1, 2), rat(3, 4)), (rat(1, 1), rat(1, 1))]
        )
        .is_err());
    }

    #[test]
    fn canonicalization_removes_collinear_points() {
        let m = PlMap::new(
            rat_int(1),
            rat_int(1),
            vec![(rat(0, 1), rat(0, 1)), (rat(1, 2), rat(1, 2)), (rat(1, 1), rat(1, 1))],
        )
        .unwrap();
        assert_eq!(m, unit_id());
        assert_eq!(m.points().len(), 2);
        // idempotent under re-canonicalization
        let again = PlMap::new(rat_int(1), rat_int(1), m.points().to_vec()).unwrap();
        assert_eq!(again, m);
    }

    #[test]
    fn homeo_detection() {
        assert!(unit_id().is_homeo());
        assert!(!half_flat().is_homeo());
        let m = PlMap::new(
            rat_int(1),
            rat_int(1),
            vec![(rat(0, 1), rat(0, 1)), (rat(1, 3), rat(2, 3)), (rat(1, 1), rat(1, 1))],
        )
        .unwrap();
        assert!(m.is_homeo());
        assert!(m.flat_values().is_empty());
    }

    #[test]
    fn composition_identity_laws() {
        let m = half_flat();
        assert_eq!(m.then(&unit_id()).unwrap(), m);
        assert_eq!(unit_id().then(&m).unwrap(), m);
    }

    #[test]
    fn composition_hand_evaluated() {
        // min(2t, 1) after itself is min(4t, 1)
        let m = half_flat();
        let mm = m.then(&m).unwrap();
        let expected = PlMap::new(
            rat_int(1),
            rat_int(1),
            vec![(rat(0, 1), rat(0, 1)), (rat(1, 4), rat(1, 1)), (rat(1, 1), rat(1, 1))],
        )
        .unwrap();
        assert_eq!(mm, expected);
    }

    #[test]
    fn composition_length_mismatch() {
        let m2 = PlMap::scale_from_unit(rat_int(2));
        assert!(matches!(
            m2.then(&m2),
            Err(ReparamError::LengthMismatch { .. })
        ));
    }

    #[test]
    fn composition_preserves_homeos() {
        let a = PlMap::new(
            rat_int(1),
            rat_int(1),
            vec![(rat(0, 1), rat(0, 1)), (rat(1, 3), rat(2, 3)), (rat(1, 1), rat(1, 1))],
        )
        .unwrap();
        let b = PlMap::new(
            rat_int(1),
            rat_int(1),
            vec![(rat(0, 1), rat(0, 1)), (rat(1, 2), rat(1, 4)), (rat(1, 1), rat(1, 1))],
        )
        .unwrap();
        assert!(a.then(&b).unwrap().is_homeo());
    }

    #[test]
    fn tensor_examples() {
        let id2 = PlMap::tensor(&[unit_id(), unit_id()]).unwrap();
        assert_eq!(id2, PlMap::identity(rat_int(2)));

        let t = PlMap::tensor(&[half_flat(), unit_id()]).unwrap();
        let expected = PlMap::new(
            rat_int(2),
            rat_int(2),
            vec![
                (rat(0, 1), rat(0, 1)),
                (rat(1, 2), rat(1, 1)),
                (rat(1, 1), rat(1, 1)),
                (rat(2, 1), rat(2, 1)),
            ],
        )
        .unwrap();
        assert_eq!(t, expected);
    }

    #[test]
    fn tensor_is_associative() {
        let a = half_flat();
        let b = PlMap::scale_from_unit(rat_int(2));
        let c = unit_id();
        let left = PlMap::tensor(&[PlMap::tensor(&[a.clone(), b.clone()]).unwrap(), c.clone()]).unwrap();
        let right = PlMap::tensor(&[a, b, c]).unwrap();
        assert_eq!(left, right);
    }

    #[test]
    fn decompose_identity() {
        let id2 = PlMap::identity(rat_int(2));
        let parts = id2.decompose(&[rat_int(1), rat_int(1)]).unwrap();
        assert_eq!(parts, vec![unit_id(), unit_id()]);
    }

    #[test]
    fn decompose_hand_evaluated() {
        // 4t then flat at 2: cut at the minimal preimage 1/4 of level 1.
        let m = PlMap::new(
            rat_int(1),
            rat_int(2),
            vec![(rat(0, 1), rat(0, 1)), (rat(1, 2), rat(2, 1)), (rat(1, 1), rat(2, 1))],
        )
        .unwrap();
        let parts = m.decompose(&[rat_int(1), rat_int(1)]).unwrap();
        let f1 = PlMap::new(rat(1, 4), rat_int(1), vec![(rat(0, 1), rat(0, 1)), (rat(1, 4), rat(1, 1))]).unwrap();
        let f2 = PlMap::new(
            rat(3, 4),
            rat_int(1),
            vec![(rat(0, 1), rat(0, 1)), (rat(1, 4), rat(1, 1)), (rat(3, 4), rat(1, 1))],
        )
        .unwrap();
        assert_eq!(parts, vec![f1, f2]);
        assert_eq!(PlMap::tensor(&parts).unwrap(), m);
    }

    #[test]
    fn decompose_rejects_bad_partitions() {
        let id2 = PlMap::identity(rat_int(2));
        assert!(id2.decompose(&[]).is_err());
        assert!(id2.decompose(&[rat_int(1)]).is_err());
        assert!(id2.decompose(&[rat_int(3), rat(-1, 1)]).is_err());
    }

    #[test]
    fn flats_read_off_breakpoints() {
        assert!(unit_id().flat_values().is_empty());
        let flats = half_flat().flat_values();
        assert_eq!(
            flats,
            vec![FlatRecord { value: rat_int(1), start: rat(1, 2), end: rat_int(1) }]
        );
    }

    #[test]
    fn tensor_flats_shift_and_merge_only_at_touching_seam() {
        // one flat each, away from the seam: two flats in the tensor
        let t = PlMap::tensor(&[half_flat(), half_flat()]).unwrap();
        assert_eq!(t.flat_values().len(), 2);

        // terminal flat meets initial flat at the seam: merged into one
        let lead_flat = PlMap::new(
            rat_int(1),
            rat_int(1),
            vec![(rat(0, 1), rat(0, 1)), (rat(1, 2), rat(0, 1)), (rat(1, 1), rat(1, 1))],
        )
        .unwrap();
        let merged = PlMap::tensor(&[half_flat(), lead_flat]).unwrap();
        let flats = merged.flat_values();
        assert_eq!(flats.len(), 1);
        assert_eq!(flats[0].start, rat(1, 2));
        assert_eq!(flats[0].end, rat(3, 2));
    }

    #[test]
    fn factor_through_self_is_identity() {
        let m = half_flat();
        assert_eq!(m.factor_through(&m).unwrap(), unit_id());
    }

    #[test]
    fn factor_through_requires_flat_containment() {
        assert!(unit_id().factor_through(&half_flat()).is_none());
        // the other way: the flat map factors through the identity
        let w = half_flat().factor_through(&unit_id()).unwrap();
        assert_eq!(w, half_flat());
    }

    #[test]
    fn factor_through_round_trip() {
        let psi0 = PlMap::new(
            rat_int(1),
            rat_int(1),
            vec![(rat(0, 1), rat(0, 1)), (rat(1, 4), rat(1, 2)), (rat(3, 4), rat(1, 2)), (rat(1, 1), rat(1, 1))],
        )
        .unwrap();
        let chi = psi0.then(&half_flat()).unwrap();
        let w = chi.factor_through(&half_flat()).expect("witness exists");
        assert_eq!(w.then(&half_flat()).unwrap(), chi);
    }

    #[test]
    fn common_reparam_substitution_cases() {
        let v = half_flat();
        assert_eq!(
            common_reparam(&unit_id(), &unit_id()).unwrap(),
            (unit_id(), unit_id())
        );
        assert_eq!(common_reparam(&unit_id(), &v).unwrap(), (v.clone(), unit_id()));
        assert_eq!(common_reparam(&v, &unit_id()).unwrap(), (unit_id(), v.clone()));
    }

    #[test]
    fn common_reparam_defining_equation() {
        let u = PlMap::new(
            rat_int(1),
            rat_int(2),
            vec![(rat(0, 1), rat(0, 1)), (rat(1, 4), rat(3, 2)), (rat(1, 2), rat(3, 2)), (rat(1, 1), rat(2, 1))],
        )
        .unwrap();
        let v = PlMap::new(
            rat_int(1),
            rat_int(2),
            vec![(rat(0, 1), rat(0, 1)), (rat(1, 2), rat(1, 2)), (rat(3, 4), rat(1, 2)), (rat(1, 1), rat(2, 1))],
        )
        .unwrap();
        let (a, b) = common_reparam(&u, &v).unwrap();
        assert_eq!(a.then(&u).unwrap(), b.then(&v).unwrap());
    }

    #[test]
    fn scalings_invert_each_other() {
        assert_eq!(PlMap::scale_to_unit(rat_int(1)), unit_id());
        assert_eq!(
            PlMap::scale_to_unit(rat_int(2)),
            PlMap::new(rat_int(2), rat_int(1), vec![(rat(0, 1), rat(0, 1)), (rat(2, 1), rat(1, 1))]).unwrap()
        );
        let round = PlMap::scale_to_unit(rat_int(2))
            .then(&PlMap::scale_from_unit(rat_int(2)))
            .unwrap();
        assert_eq!(round, PlMap::identity(rat_int(2)));
    }

    #[test]
    fn preimages_pick_interval_ends() {
        let m = half_flat();
        assert_eq!(m.min_preimage(&rat_int(1)).unwrap(), rat(1, 2));
        assert_eq!(m.max_preimage(&rat_int(1)).unwrap(), rat_int(1));
        assert_eq!(m.min_preimage(&rat(1, 2)).unwrap(), rat(1, 4));
        assert!(m.min_preimage(&rat_int(2)).is_err());
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        /// Random monotone map with small rational breakpoints; flats allowed.
        fn arb_unit_map() -> impl Strategy<Value = PlMap> {
            (
                proptest::collection::vec((1u32..24, 1u32..24), 0..4),
                proptest::collection::vec(0u32..4, 0..4),
            )
                .prop_map(|(ts, rises)| {
                    let mut ts: Vec<Rat> = ts
                        .into_iter()
                        .map(|(p, q)| {
                            let (lo, hi) = if p < q { (p, q) } else { (q, p + 1) };
                            rat(lo as i64, hi as i64)
                        })
                        .filter(|t| t > &rat_int(0) && t < &rat_int(1))
                        .collect();
                    ts.sort();
                    ts.dedup();
                    let k = ts.len();
                    let mut rises: Vec<u32> = rises.into_iter().take(k + 1).collect();
                    while rises.len() < k + 1 {
                        rises.push(1);
                    }
                    if rises.iter().all(|r| *r == 0) {
                        rises[0] = 1;
                    }
                    let total: u32 = rises.iter().sum();
                    let mut pts = vec![(rat_int(0), rat_int(0))];
                    let mut acc = 0u32;
                    for (i, t) in ts.iter().enumerate() {
                        acc += rises[i];
                        pts.push((t.clone(), rat(acc as i64, total as i64)));
                    }
                    pts.push((rat_int(1), rat_int(1)));
                    PlMap::from_points(pts).expect("generated points are monotone")
                })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            #[test]
            fn compose_associates(a in arb_unit_map(), b in arb_unit_map(), c in arb_unit_map()) {
                let left = a.then(&b).unwrap().then(&c).unwrap();
                let right = a.then(&b.then(&c).unwrap()).unwrap();
                prop_assert_eq!(left, right);
            }

            #[test]
            fn tensor_of_decompose_restores(a in arb_unit_map(), b in arb_unit_map()) {
                let m = PlMap::tensor(&[a, b]).unwrap();
                let parts = m.decompose(&[rat_int(1), rat_int(1)]).unwrap();
                prop_assert_eq!(PlMap::tensor(&parts).unwrap(), m);
            }

            #[test]
            fn homeo_iff_no_flats(a in arb_unit_map()) {
                prop_assert_eq!(a.is_homeo(), a.flat_values().is_empty());
            }

            #[test]
            fn pointwise_equality_is_structural(a in arb_unit_map(), b in arb_unit_map()) {
                let mut grid: Vec<Rat> = a.points().iter().chain(b.points().iter()).map(|p| p.0.clone()).collect();
                grid.sort();
                grid.dedup();
                let same_on_grid = grid.iter().all(|t| a.eval(t).unwrap() == b.eval(t).unwrap());
                prop_assert_eq!(same_on_grid, a == b);
            }

            #[test]
            fn factor_witness_is_exact(a in arb_unit_map(), b in arb_unit_map()) {
                let chi = a.then(&b).unwrap();
                let w = chi.factor_through(&b);
                let w = w.expect("composite always factors through its outer map");
                prop_assert_eq!(w.then(&b).unwrap(), chi);
            }

            #[test]
            fn common_reparam_equation_holds(u in arb_unit_map(), v in arb_unit_map()) {
                let (a, b) = common_reparam(&u, &v).unwrap();
                prop_assert_eq!(a.then(&u).unwrap(), b.then(&v).unwrap());
            }
        }
    }
}
