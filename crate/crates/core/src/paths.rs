//! Execution paths in canonical normal form.
//!
//! A [`NaturalPath`] is the unit-speed regular representative: a nonempty
//! sequence of cells, each crossed at a fixed interior disk point, traversing
//! step `i` on `[i-1, i]`. An [`ExecutionPath`] is a natural path together
//! with one global time law `[0, 1] → [0, n]`. Any way of presenting a path
//! as a finite Moore composition of cell crossings renormalizes to the same
//! pair, which makes path equality, trace equality and stop data decidable.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::complex::{ComplexError, DiskPoint, Flavor, GlobularComplex};
use crate::rat::{rat_display, rat_int, Rat};
use crate::reparam::{PlMap, ReparamError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PathError {
    #[error("a path needs at least one step")]
    Empty,
    #[error("step {index}: unknown cell `{cell}`")]
    UnknownCell { index: usize, cell: String },
    #[error("step {index}: point {point} must be interior to the {dim}-disk")]
    NotInterior {
        index: usize,
        point: String,
        dim: usize,
    },
    #[error("steps {index} and {next} do not compose: `{tgt}` != `{src}`")]
    NotComposable {
        index: usize,
        next: usize,
        tgt: String,
        src: String,
    },
    #[error("time law must run [0,1] -> [0,{expected}], got [0,{dom}] -> [0,{cod}]")]
    LawShape {
        expected: usize,
        dom: String,
        cod: String,
    },
    #[error("flavor G requires invertible time laws: {0}")]
    FlavorViolation(String),
    #[error("segment weights must be positive and sum to 1, got {0}")]
    BadWeights(String),
    #[error("paths do not compose: `{tgt}` != `{src}`")]
    EndpointMismatch { tgt: String, src: String },
    #[error("argument {0} outside [0,1]")]
    OutOfRange(String),
    #[error(transparent)]
    Reparam(#[from] ReparamError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// One step of a natural path: a cell crossed at an interior disk point.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PathStep {
    pub cell: String,
    pub point: DiskPoint,
}

impl fmt::Display for PathStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.cell, self.point)
    }
}

/// The regular unit-speed representative of a path: its carrier together
/// with one interior disk point per crossing. Implicit domain `[0, n]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NaturalPath {
    steps: Vec<PathStep>,
}

impl fmt::Display for NaturalPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.steps.iter().enumerate() {
            if i > 0 {
                write!(f, " ; ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl NaturalPath {
    pub fn new(steps: Vec<PathStep>) -> Result<Self, PathError> {
        if steps.is_empty() {
            return Err(PathError::Empty);
        }
        Ok(NaturalPath { steps })
    }

    pub fn single(cell: String, point: DiskPoint) -> Self {
        NaturalPath {
            steps: vec![PathStep { cell, point }],
        }
    }

    pub fn steps(&self) -> &[PathStep] {
        &self.steps
    }

    pub fn natural_length(&self) -> usize {
        self.steps.len()
    }

    pub fn carrier(&self) -> Vec<String> {
        self.steps.iter().map(|s| s.cell.clone()).collect()
    }

    /// Moore concatenation of unit-speed representatives.
    pub fn concat(&self, other: &NaturalPath) -> NaturalPath {
        let mut steps = self.steps.clone();
        steps.extend(other.steps.iter().cloned());
        NaturalPath { steps }
    }

    /// Structural checks against a complex: known cells, interior points of
    /// the right dimension, composable consecutive steps.
    pub fn validate_in(&self, cx: &GlobularComplex) -> Result<(), PathError> {
        for (i, step) in self.steps.iter().enumerate() {
            let cell = cx.cell(&step.cell).ok_or_else(|| PathError::UnknownCell {
                index: i,
                cell: step.cell.clone(),
            })?;
            if step.point.dim() != cell.disk_dim || !step.point.is_interior() {
                return Err(PathError::NotInterior {
                    index: i,
                    point: step.point.to_string(),
                    dim: cell.disk_dim,
                });
            }
            if i + 1 < self.steps.len() {
                let next = cx
                    .cell(&self.steps[i + 1].cell)
                    .ok_or_else(|| PathError::UnknownCell {
                        index: i + 1,
                        cell: self.steps[i + 1].cell.clone(),
                    })?;
                if cell.tgt != next.src {
                    return Err(PathError::NotComposable {
                        index: i,
                        next: i + 1,
                        tgt: cell.tgt.clone(),
                        src: next.src.clone(),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn src<'a>(&self, cx: &'a GlobularComplex) -> Option<&'a str> {
        cx.cell(&self.steps[0].cell).map(|c| c.src.as_str())
    }

    pub fn tgt<'a>(&self, cx: &'a GlobularComplex) -> Option<&'a str> {
        cx.cell(&self.steps.last().unwrap().cell).map(|c| c.tgt.as_str())
    }
}

/// A point of the underlying space: either a state or an interior point of
/// one cell at a globe height strictly between 0 and 1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum PointDescriptor {
    State(String),
    Interior {
        cell: String,
        point: DiskPoint,
        height: Rat,
    },
}

impl fmt::Display for PointDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointDescriptor::State(s) => write!(f, "state {s}"),
            PointDescriptor::Interior { cell, point, height } => {
                write!(f, "{cell}@{point} at height {}", rat_display(height))
            }
        }
    }
}

/// A maximal interval on which a path is constant, with the point it rests
/// at.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StopInterval {
    pub start: Rat,
    pub end: Rat,
    pub at: PointDescriptor,
}

/// One factor of a raw presentation: a full crossing of `cell` at `point`
/// (interior, or boundary to be resolved) under the time law
/// `[0, weight] → [0, 1]`. The weight is the law's domain length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawSegment {
    pub cell: String,
    pub point: DiskPoint,
    pub law: PlMap,
}

impl RawSegment {
    pub fn weight(&self) -> &Rat {
        self.law.dom_len()
    }
}

/// An execution path in normal form: the regular representative plus one
/// global time law `[0, 1] → [0, n]`.
///
/// Two execution paths describe the same continuous path exactly when they
/// are structurally equal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExecutionPath {
    base: NaturalPath,
    reparam: PlMap,
}

impl fmt::Display for ExecutionPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} | {}", self.base, self.reparam)
    }
}

impl ExecutionPath {
    pub fn new(base: NaturalPath, reparam: PlMap) -> Result<Self, PathError> {
        let n = base.natural_length();
        if !reparam.dom_len().is_one() || reparam.cod_len() != &rat_int(n as i64) {
            return Err(PathError::LawShape {
                expected: n,
                dom: rat_display(reparam.dom_len()),
                cod: rat_display(reparam.cod_len()),
            });
        }
        Ok(ExecutionPath { base, reparam })
    }

    /// The path crossing one cell at unit speed.
    pub fn minimal(cell: String, point: DiskPoint) -> Self {
        ExecutionPath {
            base: NaturalPath::single(cell, point),
            reparam: PlMap::identity(Rat::one()),
        }
    }

    /// The unit-speed traversal of a natural path.
    pub fn of_natural(base: NaturalPath) -> Self {
        let n = rat_int(base.natural_length() as i64);
        ExecutionPath {
            base,
            reparam: PlMap::scale_from_unit(n),
        }
    }

    /// Renormalizes a finite Moore presentation into the unique normal form.
    ///
    /// Boundary points are resolved recursively through attaching data into
    /// interior crossings of earlier cells; the per-segment time laws are
    /// tensored into the single global law. The result does not depend on
    /// how the presentation happened to split the path.
    pub fn from_raw(cx: &GlobularComplex, segments: &[RawSegment]) -> Result<Self, PathError> {
        if segments.is_empty() {
            return Err(PathError::Empty);
        }
        let total: Rat = segments.iter().map(|s| s.weight().clone()).sum();
        if !total.is_one() || segments.iter().any(|s| !s.weight().is_positive()) {
            return Err(PathError::BadWeights(rat_display(&total)));
        }
        let mut steps: Vec<PathStep> = Vec::new();
        let mut blocks: Vec<PlMap> = Vec::new();
        for (i, seg) in segments.iter().enumerate() {
            if !seg.law.cod_len().is_one() {
                return Err(PathError::LawShape {
                    expected: 1,
                    dom: rat_display(seg.law.dom_len()),
                    cod: rat_display(seg.law.cod_len()),
                });
            }
            if cx.flavor() == Flavor::G && !seg.law.is_homeo() {
                return Err(PathError::FlavorViolation(format!(
                    "segment {i} carries a time law with a stop"
                )));
            }
            let cell = cx.cell(&seg.cell).ok_or_else(|| PathError::UnknownCell {
                index: i,
                cell: seg.cell.clone(),
            })?;
            if seg.point.dim() != cell.disk_dim || !seg.point.is_valid() {
                return Err(PathError::NotInterior {
                    index: i,
                    point: seg.point.to_string(),
                    dim: cell.disk_dim,
                });
            }
            if seg.point.is_interior() {
                steps.push(PathStep {
                    cell: seg.cell.clone(),
                    point: seg.point.clone(),
                });
                blocks.push(seg.law.clone());
            } else {
                let (base, rho) = cx.boundary_exec_path(&seg.cell, &seg.point)?;
                steps.extend(base.steps().iter().cloned());
                blocks.push(seg.law.then(&rho)?);
            }
        }
        let base = NaturalPath::new(steps)?;
        base.validate_in(cx)?;
        let reparam = PlMap::tensor(&blocks)?;
        let path = ExecutionPath::new(base, reparam)?;
        path.validate_in(cx)?;
        Ok(path)
    }

    pub fn base(&self) -> &NaturalPath {
        &self.base
    }

    pub fn reparam(&self) -> &PlMap {
        &self.reparam
    }

    /// The unique factorization through the regular representative: the
    /// representative itself and the time law that reproduces the path.
    pub fn naturalize(&self) -> (&NaturalPath, &PlMap) {
        (&self.base, &self.reparam)
    }

    pub fn carrier(&self) -> Vec<String> {
        self.base.carrier()
    }

    pub fn natural_length(&self) -> usize {
        self.base.natural_length()
    }

    /// A path is minimal when it crosses exactly one cell.
    pub fn is_minimal(&self) -> bool {
        self.natural_length() == 1
    }

    /// Regular paths are the ones without stops.
    pub fn is_regular(&self) -> bool {
        self.reparam.is_homeo()
    }

    pub fn validate_in(&self, cx: &GlobularComplex) -> Result<(), PathError> {
        self.base.validate_in(cx)?;
        if cx.flavor() == Flavor::G && !self.reparam.is_homeo() {
            return Err(PathError::FlavorViolation(
                "global time law has a stop".to_string(),
            ));
        }
        Ok(())
    }

    /// Moore composition at the given positive weights, which must sum to 1.
    pub fn compose_weighted(
        &self,
        cx: &GlobularComplex,
        other: &ExecutionPath,
        weights: (Rat, Rat),
    ) -> Result<ExecutionPath, PathError> {
        let (w1, w2) = weights;
        if !w1.is_positive() || !w2.is_positive() || !(&w1 + &w2).is_one() {
            return Err(PathError::BadWeights(format!(
                "({}, {})",
                rat_display(&w1),
                rat_display(&w2)
            )));
        }
        let tgt = self.base.tgt(cx).ok_or_else(|| PathError::UnknownCell {
            index: 0,
            cell: self.base.steps().last().unwrap().cell.clone(),
        })?;
        let src = other.base.src(cx).ok_or_else(|| PathError::UnknownCell {
            index: 0,
            cell: other.base.steps()[0].cell.clone(),
        })?;
        if tgt != src {
            return Err(PathError::EndpointMismatch {
                tgt: tgt.to_string(),
                src: src.to_string(),
            });
        }
        let left = PlMap::scale_to_unit(w1).then(&self.reparam)?;
        let right = PlMap::scale_to_unit(w2).then(&other.reparam)?;
        Ok(ExecutionPath {
            base: self.base.concat(&other.base),
            reparam: PlMap::tensor(&[left, right])?,
        })
    }

    /// Moore composition at equal weights.
    pub fn compose_normalized(
        &self,
        cx: &GlobularComplex,
        other: &ExecutionPath,
    ) -> Result<ExecutionPath, PathError> {
        self.compose_weighted(cx, other, (crate::rat::rat(1, 2), crate::rat::rat(1, 2)))
    }

    /// Precomposition with a unit time change; the representative is
    /// untouched.
    pub fn precompose(&self, cx: &GlobularComplex, m: &PlMap) -> Result<ExecutionPath, PathError> {
        if cx.flavor() == Flavor::G && !m.is_homeo() {
            return Err(PathError::FlavorViolation(
                "time change has a stop".to_string(),
            ));
        }
        Ok(ExecutionPath {
            base: self.base.clone(),
            reparam: m.then(&self.reparam)?,
        })
    }

    fn descriptor_at(&self, cx: &GlobularComplex, level: &Rat) -> PointDescriptor {
        if level.is_integer() {
            let k = level.to_integer();
            if k.is_zero() {
                let first = cx.cell(&self.base.steps()[0].cell).unwrap();
                return PointDescriptor::State(first.src.clone());
            }
            let idx: usize = k.try_into().expect("level within path length");
            let cell = cx.cell(&self.base.steps()[idx - 1].cell).unwrap();
            return PointDescriptor::State(cell.tgt.clone());
        }
        let idx: usize = level.floor().to_integer().try_into().expect("level in range");
        let step = &self.base.steps()[idx];
        PointDescriptor::Interior {
            cell: step.cell.clone(),
            point: step.point.clone(),
            height: level - rat_int(idx as i64),
        }
    }

    /// The point reached at time `t ∈ [0, 1]`.
    pub fn evaluate(&self, cx: &GlobularComplex, t: &Rat) -> Result<PointDescriptor, PathError> {
        if t < &Rat::zero() || t > &Rat::one() {
            return Err(PathError::OutOfRange(rat_display(t)));
        }
        let level = self.reparam.eval(t)?;
        Ok(self.descriptor_at(cx, &level))
    }

    /// Maximal constancy intervals, each with the point the path rests at.
    /// Empty exactly for regular paths.
    pub fn stop_intervals(&self, cx: &GlobularComplex) -> Vec<StopInterval> {
        self.reparam
            .flat_values()
            .into_iter()
            .map(|f| StopInterval {
                at: self.descriptor_at(cx, &f.value),
                start: f.start,
                end: f.end,
            })
            .collect()
    }

    /// The trace: what survives of the path after forgetting every monotone
    /// time change.
    pub fn trace(&self) -> &NaturalPath {
        &self.base
    }

    /// Reparametrization equivalence, decided on normal forms.
    pub fn is_equivalent(&self, other: &ExecutionPath) -> bool {
        self.base == other.base
    }

    /// The invertible-time-change invariant: the trace together with the set
    /// of levels at which the path stops. Precomposing with any invertible
    /// map preserves it; a stop makes it strictly finer than [`Self::trace`].
    pub fn strict_trace(&self) -> (NaturalPath, BTreeSet<Rat>) {
        (self.base.clone(), self.reparam.flat_value_set())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{chain_of_globes, psi_counterexample, psi_law, Flavor};
    use crate::rat::rat;

    fn labels(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    fn two_chain() -> GlobularComplex {
        chain_of_globes(&[labels(&["a"]), labels(&["b"])], Flavor::M).unwrap()
    }

    fn half_flat() -> PlMap {
        PlMap::new(
            rat_int(1),
            rat_int(1),
            vec![(rat(0, 1), rat(0, 1)), (rat(1, 2), rat(1, 1)), (rat(1, 1), rat(1, 1))],
        )
        .unwrap()
    }

    fn chain_path(cx: &GlobularComplex) -> ExecutionPath {
        let base = NaturalPath::new(vec![
            PathStep { cell: "g1_a".into(), point: DiskPoint::origin(0) },
            PathStep { cell: "g2_b".into(), point: DiskPoint::origin(0) },
        ])
        .unwrap();
        base.validate_in(cx).unwrap();
        ExecutionPath::of_natural(base)
    }

    #[test]
    fn raw_single_interior_segment() {
        let cx = two_chain();
        let p = ExecutionPath::from_raw(
            &cx,
            &[RawSegment {
                cell: "g1_a".into(),
                point: DiskPoint::origin(0),
                law: PlMap::identity(Rat::one()),
            }],
        )
        .unwrap();
        assert_eq!(p, ExecutionPath::minimal("g1_a".into(), DiskPoint::origin(0)));
        assert_eq!(p.natural_length(), 1);
        assert!(p.is_minimal() && p.is_regular());
    }

    #[test]
    fn raw_weights_must_sum_to_one() {
        let cx = two_chain();
        let seg = RawSegment {
            cell: "g1_a".into(),
            point: DiskPoint::origin(0),
            law: PlMap::scale_to_unit(rat(1, 2)),
        };
        assert!(matches!(
            ExecutionPath::from_raw(&cx, &[seg]),
            Err(PathError::BadWeights(_))
        ));
    }

    #[test]
    fn refactoring_reproduces_the_normal_form() {
        let cx = two_chain();
        let p = chain_path(&cx);
        // split the same path at 1/2 into two unit crossings
        let segs = vec![
            RawSegment {
                cell: "g1_a".into(),
                point: DiskPoint::origin(0),
                law: PlMap::scale_to_unit(rat(1, 2)),
            },
            RawSegment {
                cell: "g2_b".into(),
                point: DiskPoint::origin(0),
                law: PlMap::scale_to_unit(rat(1, 2)),
            },
        ];
        assert_eq!(ExecutionPath::from_raw(&cx, &segs).unwrap(), p);
    }

    #[test]
    fn raw_boundary_point_resolves_through_the_twist() {
        let cx = psi_counterexample();
        let p = ExecutionPath::from_raw(
            &cx,
            &[RawSegment {
                cell: "twist".into(),
                point: DiskPoint(vec![rat(0, 1), rat(1, 1)]),
                law: PlMap::identity(Rat::one()),
            }],
        )
        .unwrap();
        assert_eq!(p.carrier(), vec!["up".to_string()]);
        assert_eq!(p.reparam(), &psi_law(&Rat::zero()));
    }

    #[test]
    fn naturalization_is_the_stored_pair() {
        let cx = two_chain();
        let p = chain_path(&cx);
        let q = p.precompose(&cx, &half_flat()).unwrap();
        let (nat, eta) = q.naturalize();
        assert_eq!(nat, p.base());
        assert_eq!(eta, q.reparam());
        assert_eq!(q.carrier(), p.carrier());
        // precomposition never changes the representative
        assert!(q.is_equivalent(&p));
    }

    #[test]
    fn moore_composition_of_identities_is_linear() {
        let cx = two_chain();
        let a = ExecutionPath::minimal("g1_a".into(), DiskPoint::origin(0));
        let b = ExecutionPath::minimal("g2_b".into(), DiskPoint::origin(0));
        let p = a.compose_weighted(&cx, &b, (rat(1, 2), rat(1, 2))).unwrap();
        assert_eq!(p.reparam(), &PlMap::scale_from_unit(rat_int(2)));
        assert_eq!(p.natural_length(), 2);
        assert_eq!(a.compose_normalized(&cx, &b).unwrap(), p);
    }

    #[test]
    fn moore_composition_checks_endpoints() {
        let cx = two_chain();
        let a = ExecutionPath::minimal("g1_a".into(), DiskPoint::origin(0));
        assert!(matches!(
            a.compose_weighted(&cx, &a, (rat(1, 2), rat(1, 2))),
            Err(PathError::EndpointMismatch { .. })
        ));
    }

    #[test]
    fn naturalization_distributes_over_composition() {
        let cx = two_chain();
        let a = ExecutionPath::minimal("g1_a".into(), DiskPoint::origin(0));
        let b = ExecutionPath::minimal("g2_b".into(), DiskPoint::origin(0));
        let p = a.compose_weighted(&cx, &b, (rat(1, 3), rat(2, 3))).unwrap();
        assert_eq!(p.base(), &a.base().concat(b.base()));
        assert_eq!(p.natural_length(), a.natural_length() + b.natural_length());
    }

    #[test]
    fn precompose_laws() {
        let cx = two_chain();
        let p = chain_path(&cx);
        assert_eq!(p.precompose(&cx, &PlMap::identity(Rat::one())).unwrap(), p);
        let q = p.precompose(&cx, &half_flat()).unwrap();
        assert!(!q.is_regular());
        assert_eq!(q.carrier(), p.carrier());
    }

    #[test]
    fn flavor_g_rejects_stopping_time_changes() {
        let cx = chain_of_globes(&[labels(&["a"])], Flavor::G).unwrap();
        let p = ExecutionPath::minimal("g1_a".into(), DiskPoint::origin(0));
        assert!(matches!(
            p.precompose(&cx, &half_flat()),
            Err(PathError::FlavorViolation(_))
        ));
    }

    #[test]
    fn evaluation_hits_states_and_interiors() {
        let cx = two_chain();
        let p = chain_path(&cx);
        assert_eq!(p.evaluate(&cx, &rat(0, 1)).unwrap(), PointDescriptor::State("0".into()));
        assert_eq!(p.evaluate(&cx, &rat(1, 1)).unwrap(), PointDescriptor::State("2".into()));
        assert_eq!(p.evaluate(&cx, &rat(1, 2)).unwrap(), PointDescriptor::State("1".into()));
        assert_eq!(
            p.evaluate(&cx, &rat(1, 4)).unwrap(),
            PointDescriptor::Interior {
                cell: "g1_a".into(),
                point: DiskPoint::origin(0),
                height: rat(1, 2)
            }
        );
        assert!(p.evaluate(&cx, &rat(3, 2)).is_err());

        let single = ExecutionPath::minimal("g1_a".into(), DiskPoint::origin(0));
        assert_eq!(
            single.evaluate(&cx, &rat(1, 3)).unwrap(),
            PointDescriptor::Interior {
                cell: "g1_a".into(),
                point: DiskPoint::origin(0),
                height: rat(1, 3)
            }
        );
    }

    #[test]
    fn stops_are_the_flats_of_the_law() {
        let cx = two_chain();
        let p = chain_path(&cx);
        assert!(p.stop_intervals(&cx).is_empty());

        let q = p.precompose(&cx, &half_flat()).unwrap();
        let stops = q.stop_intervals(&cx);
        assert_eq!(stops.len(), 1);
        assert_eq!(stops[0].start, rat(1, 2));
        assert_eq!(stops[0].end, rat(1, 1));
        assert_eq!(stops[0].at, PointDescriptor::State("2".into()));

        // a stop strictly inside a cell
        let mid_flat = PlMap::new(
            rat_int(1),
            rat_int(2),
            vec![
                (rat(0, 1), rat(0, 1)),
                (rat(1, 4), rat(1, 2)),
                (rat(1, 2), rat(1, 2)),
                (rat(1, 1), rat(2, 1)),
            ],
        )
        .unwrap();
        let r = ExecutionPath::new(p.base().clone(), mid_flat).unwrap();
        let stops = r.stop_intervals(&cx);
        assert_eq!(stops.len(), 1);
        assert_eq!(
            stops[0].at,
            PointDescriptor::Interior {
                cell: "g1_a".into(),
                point: DiskPoint::origin(0),
                height: rat(1, 2)
            }
        );
    }

    #[test]
    fn traces_quotient_by_time_changes() {
        let cx = two_chain();
        let p = chain_path(&cx);
        let q = p.precompose(&cx, &half_flat()).unwrap();
        assert!(p.is_equivalent(&q));
        assert_eq!(p.strict_trace().0, q.strict_trace().0);
        assert_ne!(p.strict_trace().1, q.strict_trace().1);

        // different interior points are different traces
        let a = ExecutionPath::minimal("g1_a".into(), DiskPoint::origin(0));
        let cx_disk = psi_counterexample();
        let u0 = ExecutionPath::minimal("up".into(), DiskPoint(vec![rat(0, 1)]));
        let u1 = ExecutionPath::minimal("up".into(), DiskPoint(vec![rat(1, 2)]));
        assert!(!u0.is_equivalent(&u1));
        let _ = (a, cx_disk);
    }
}
