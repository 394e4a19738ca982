//! Trace-space computations on finite complexes.
//!
//! Traces through a cell interior form a continuum parametrized by the disk
//! interior; enumeration reports one canonical interior representative per
//! cell, so for globes over finite sets the counts are exact and for disk
//! cells the kernel reports strata. Loop detection is a reachability check
//! on the cell endpoint graph; loop-free complexes enumerate exhaustively,
//! looping ones require an explicit carrier budget.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::complex::{AttachingData, ComplexError, DiskPoint, GlobularComplex, Resolver};
use crate::paths::{ExecutionPath, NaturalPath, PathError, PathStep};
use crate::rat::{rat_display, rat_int, Rat};
use crate::reparam::{PlMap, ReparamError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpaceError {
    #[error("not a chain of globes: {0}")]
    NotAChain(String),
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("unknown cell `{0}`")]
    UnknownCell(String),
    #[error("achronal slices need a cell of disk dimension at least 1, `{0}` has {1}")]
    UnsupportedSlice(String, usize),
    #[error("height must lie strictly between 0 and 1, got {0}")]
    BadHeight(String),
    #[error("complex has loops; trace enumeration needs a carrier budget")]
    LoopingNeedsBudget,
    #[error("mismatched lengths: {0}")]
    LengthMismatch(String),
    #[error("bad path family: {0}")]
    BadFamily(String),
    #[error(transparent)]
    Path(#[from] PathError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Reparam(#[from] ReparamError),
}

/// The set of traces between two states.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceSet {
    pub from: String,
    pub to: String,
    pub traces: BTreeSet<NaturalPath>,
}

impl TraceSet {
    pub fn len(&self) -> usize {
        self.traces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.traces.is_empty()
    }
}

fn chain_groups(cx: &GlobularComplex) -> Result<Vec<Vec<String>>, SpaceError> {
    let p = cx.states().len();
    if p < 2 {
        return Err(SpaceError::NotAChain("fewer than two states".to_string()));
    }
    let mut groups: Vec<Vec<String>> = vec![Vec::new(); p - 1];
    for cell in cx.cells() {
        if cell.disk_dim != 0 {
            return Err(SpaceError::NotAChain(format!(
                "cell `{}` has positive disk dimension",
                cell.id
            )));
        }
        let k = cx
            .states()
            .iter()
            .position(|s| s == &cell.src)
            .expect("validated state");
        if k + 1 >= p || cx.states()[k + 1] != cell.tgt {
            return Err(SpaceError::NotAChain(format!(
                "cell `{}` does not join consecutive states",
                cell.id
            )));
        }
        groups[k].push(cell.id.clone());
    }
    if groups.iter().any(|g| g.is_empty()) {
        return Err(SpaceError::NotAChain("a globe has no cells".to_string()));
    }
    Ok(groups)
}

/// Exact traces through a chain of globes: one choice of segment per globe
/// between the two states, so the count is the product of the family sizes.
/// Source at or after target yields the empty set.
pub fn chain_traces(
    cx: &GlobularComplex,
    from: &str,
    to: &str,
) -> Result<TraceSet, SpaceError> {
    let groups = chain_groups(cx)?;
    let i = cx
        .states()
        .iter()
        .position(|s| s == from)
        .ok_or_else(|| SpaceError::UnknownState(from.to_string()))?;
    let j = cx
        .states()
        .iter()
        .position(|s| s == to)
        .ok_or_else(|| SpaceError::UnknownState(to.to_string()))?;
    let mut traces = BTreeSet::new();
    if i < j {
        let mut partial: Vec<Vec<PathStep>> = vec![Vec::new()];
        for group in &groups[i..j] {
            let mut next = Vec::with_capacity(partial.len() * group.len());
            for prefix in &partial {
                for cell in group {
                    let mut steps = prefix.clone();
                    steps.push(PathStep {
                        cell: cell.clone(),
                        point: DiskPoint::origin(0),
                    });
                    next.push(steps);
                }
            }
            partial = next;
        }
        for steps in partial {
            traces.insert(NaturalPath::new(steps).expect("nonempty product"));
        }
    }
    Ok(TraceSet {
        from: from.to_string(),
        to: to.to_string(),
        traces,
    })
}

/// Assembles the execution path determined by a carrier, one interior disk
/// point per crossing, and a global time law `[0,1] → [0,p]`.
pub fn pack_chain_path(
    cx: &GlobularComplex,
    carrier: &[String],
    reparam: &PlMap,
    points: &[DiskPoint],
) -> Result<ExecutionPath, SpaceError> {
    if carrier.len() != points.len() {
        return Err(SpaceError::LengthMismatch(format!(
            "{} cells vs {} points",
            carrier.len(),
            points.len()
        )));
    }
    if reparam.cod_len() != &rat_int(carrier.len() as i64) {
        return Err(SpaceError::LengthMismatch(format!(
            "time law reaches {}, expected {}",
            rat_display(reparam.cod_len()),
            carrier.len()
        )));
    }
    let steps: Vec<PathStep> = carrier
        .iter()
        .zip(points)
        .map(|(cell, point)| PathStep {
            cell: cell.clone(),
            point: point.clone(),
        })
        .collect();
    let base = NaturalPath::new(steps)?;
    base.validate_in(cx)?;
    let path = ExecutionPath::new(base, reparam.clone())?;
    path.validate_in(cx)?;
    Ok(path)
}

/// Inverse of [`pack_chain_path`]: the global time law and the disk points.
pub fn unpack_chain_path(p: &ExecutionPath) -> (PlMap, Vec<DiskPoint>) {
    (
        p.reparam().clone(),
        p.base().steps().iter().map(|s| s.point.clone()).collect(),
    )
}

/// A boundary point of a cell whose resolved image at some height is a
/// state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SliceWitness {
    pub point: DiskPoint,
    pub state: String,
}

/// Decides whether a cell's achronal slice at height `h ∈ (0,1)` meets the
/// state set, returning a rational boundary witness if one exists.
///
/// Candidate boundary points are the rational circle/interval points the
/// resolvers are exact on; the twisted family is decided through its stair
/// laws, the untwisted ones through their linear laws.
pub fn slice_meets_states(
    cx: &GlobularComplex,
    cell_id: &str,
    h: &Rat,
) -> Result<Option<SliceWitness>, SpaceError> {
    let cell = cx
        .cell(cell_id)
        .ok_or_else(|| SpaceError::UnknownCell(cell_id.to_string()))?;
    if cell.disk_dim == 0 {
        return Err(SpaceError::UnsupportedSlice(cell_id.to_string(), 0));
    }
    if !(h > &Rat::zero() && h < &Rat::one()) {
        return Err(SpaceError::BadHeight(rat_display(h)));
    }
    let one = Rat::one();
    let minus_one = -Rat::one();
    let zero = Rat::zero();
    let candidates: Vec<DiskPoint> = match &cell.attach {
        AttachingData::TwoPaths { .. } => vec![
            DiskPoint(vec![minus_one.clone()]),
            DiskPoint(vec![one.clone()]),
        ],
        AttachingData::Family(Resolver::Constant(_)) => {
            let mut coords = vec![one.clone()];
            coords.extend(std::iter::repeat(zero.clone()).take(cell.disk_dim - 1));
            vec![DiskPoint(coords)]
        }
        AttachingData::Family(Resolver::PsiTwist { .. }) => vec![
            DiskPoint(vec![minus_one.clone(), zero.clone()]),
            DiskPoint(vec![zero.clone(), one.clone()]),
            DiskPoint(vec![one.clone(), zero.clone()]),
            DiskPoint(vec![zero.clone(), minus_one.clone()]),
        ],
        AttachingData::Endpoints => unreachable!("disk dimension 0 handled above"),
    };
    for point in candidates {
        let (base, law) = cx.boundary_exec_path(cell_id, &point)?;
        let level = law.eval(h)?;
        if level.is_integer() {
            let k: usize = level
                .to_integer()
                .try_into()
                .expect("level within path length");
            let state = if k == 0 {
                cx.cell(&base.steps()[0].cell).unwrap().src.clone()
            } else {
                cx.cell(&base.steps()[k - 1].cell).unwrap().tgt.clone()
            };
            return Ok(Some(SliceWitness { point, state }));
        }
    }
    Ok(None)
}

/// A subinterval of `[0, 1]`, possibly degenerate, with explicit endpoint
/// closure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UInterval {
    pub lo: Rat,
    pub hi: Rat,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl UInterval {
    pub fn point(r: Rat) -> Self {
        UInterval {
            lo: r.clone(),
            hi: r,
            lo_closed: true,
            hi_closed: true,
        }
    }

    pub fn open(lo: Rat, hi: Rat) -> Self {
        UInterval {
            lo,
            hi,
            lo_closed: false,
            hi_closed: false,
        }
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    /// A representative parameter inside the interval.
    pub fn sample(&self) -> Rat {
        if self.is_point() {
            self.lo.clone()
        } else {
            (&self.lo + &self.hi) / rat_int(2)
        }
    }
}

impl fmt::Display for UInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_point() {
            return write!(f, "{{{}}}", rat_display(&self.lo));
        }
        let l = if self.lo_closed { '[' } else { '(' };
        let r = if self.hi_closed { ']' } else { ')' };
        write!(
            f,
            "{l}{},{}{r}",
            rat_display(&self.lo),
            rat_display(&self.hi)
        )
    }
}

/// An affine function of the family parameter `u`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Affine {
    pub base: Rat,
    pub slope: Rat,
}

impl Affine {
    pub fn constant(r: Rat) -> Self {
        Affine {
            base: r,
            slope: Rat::zero(),
        }
    }

    pub fn new(base: Rat, slope: Rat) -> Self {
        Affine { base, slope }
    }

    pub fn eval(&self, u: &Rat) -> Rat {
        &self.base + &self.slope * u
    }
}

/// One piece of a path family: a fixed carrier whose disk points and time-law
/// breakpoints vary affinely with the parameter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyPiece {
    pub interval: UInterval,
    pub steps: Vec<(String, Vec<Affine>)>,
    pub law: Vec<(Affine, Affine)>,
}

impl FamilyPiece {
    pub fn carrier(&self) -> Vec<String> {
        self.steps.iter().map(|(c, _)| c.clone()).collect()
    }

    /// The member path at parameter `u`.
    pub fn path_at(&self, u: &Rat) -> Result<ExecutionPath, SpaceError> {
        let steps: Vec<PathStep> = self
            .steps
            .iter()
            .map(|(cell, coords)| PathStep {
                cell: cell.clone(),
                point: DiskPoint(coords.iter().map(|a| a.eval(u)).collect()),
            })
            .collect();
        let base = NaturalPath::new(steps)?;
        let pts: Vec<(Rat, Rat)> = self
            .law
            .iter()
            .map(|(t, v)| (t.eval(u), v.eval(u)))
            .collect();
        let n = rat_int(self.steps.len() as i64);
        let law = PlMap::new(Rat::one(), n, pts)?;
        Ok(ExecutionPath::new(base, law)?)
    }

    /// The unit-speed law for a carrier of this piece's length, usable as
    /// the `law` field.
    pub fn linear_law(n: usize) -> Vec<(Affine, Affine)> {
        vec![
            (Affine::constant(Rat::zero()), Affine::constant(Rat::zero())),
            (
                Affine::constant(Rat::one()),
                Affine::constant(rat_int(n as i64)),
            ),
        ]
    }
}

/// A finitely presented family of execution paths over `u ∈ [0, 1]`: pieces
/// with constant carriers partitioning the parameter interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathFamily {
    pieces: Vec<FamilyPiece>,
}

impl PathFamily {
    pub fn new(pieces: Vec<FamilyPiece>) -> Result<Self, SpaceError> {
        if pieces.is_empty() {
            return Err(SpaceError::BadFamily("no pieces".to_string()));
        }
        let first = &pieces[0].interval;
        if !first.lo.is_zero() || !first.lo_closed {
            return Err(SpaceError::BadFamily(
                "pieces must start at a closed 0".to_string(),
            ));
        }
        let last = &pieces.last().unwrap().interval;
        if !last.hi.is_one() || !last.hi_closed {
            return Err(SpaceError::BadFamily(
                "pieces must end at a closed 1".to_string(),
            ));
        }
        for piece in &pieces {
            let iv = &piece.interval;
            let ok = iv.lo < iv.hi || (iv.is_point() && iv.lo_closed && iv.hi_closed);
            if !ok {
                return Err(SpaceError::BadFamily(format!("bad interval {iv}")));
            }
            if piece.steps.is_empty() {
                return Err(SpaceError::BadFamily("empty carrier".to_string()));
            }
        }
        for w in pieces.windows(2) {
            let (a, b) = (&w[0].interval, &w[1].interval);
            if a.hi != b.lo || a.hi_closed == b.lo_closed {
                return Err(SpaceError::BadFamily(format!(
                    "pieces {a} and {b} do not partition"
                )));
            }
        }
        Ok(PathFamily { pieces })
    }

    pub fn pieces(&self) -> &[FamilyPiece] {
        &self.pieces
    }

    /// The member path at parameter `u`.
    pub fn path_at(&self, u: &Rat) -> Result<ExecutionPath, SpaceError> {
        for piece in &self.pieces {
            let iv = &piece.interval;
            let above = u > &iv.lo || (u == &iv.lo && iv.lo_closed);
            let below = u < &iv.hi || (u == &iv.hi && iv.hi_closed);
            if above && below {
                return piece.path_at(u);
            }
        }
        Err(SpaceError::BadFamily(format!(
            "parameter {} not covered",
            rat_display(u)
        )))
    }

    /// Validates every piece's sampled member against a complex.
    pub fn validate_in(&self, cx: &GlobularComplex) -> Result<(), SpaceError> {
        for piece in &self.pieces {
            let iv = &piece.interval;
            let mut samples = vec![iv.sample()];
            if iv.lo_closed {
                samples.push(iv.lo.clone());
            }
            if iv.hi_closed {
                samples.push(iv.hi.clone());
            }
            for u in samples {
                piece.path_at(&u)?.validate_in(cx)?;
            }
        }
        Ok(())
    }
}

/// Natural length of the members over each piece of the parameter interval.
/// Piecewise constant with finitely many values by construction.
pub fn natural_length_profile(family: &PathFamily) -> Vec<(UInterval, usize)> {
    family
        .pieces()
        .iter()
        .map(|p| (p.interval.clone(), p.steps.len()))
        .collect()
}

/// The exact set of carriers realized by the family; always finite.
pub fn carrier_set(family: &PathFamily) -> BTreeSet<Vec<String>> {
    family.pieces().iter().map(|p| p.carrier()).collect()
}

/// True when the cell endpoint graph has no directed cycle.
pub fn is_loop_free(cx: &GlobularComplex) -> bool {
    let n = cx.states().len();
    let index: BTreeMap<&str, usize> = cx
        .states()
        .iter()
        .enumerate()
        .map(|(i, s)| (s.as_str(), i))
        .collect();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for cell in cx.cells() {
        adj[index[cell.src.as_str()]].push(index[cell.tgt.as_str()]);
    }
    // 0 = unseen, 1 = on stack, 2 = done
    let mut color = vec![0u8; n];
    fn dfs(v: usize, adj: &[Vec<usize>], color: &mut [u8]) -> bool {
        color[v] = 1;
        for &w in &adj[v] {
            match color[w] {
                0 => {
                    if !dfs(w, adj, color) {
                        return false;
                    }
                }
                1 => return false,
                _ => {}
            }
        }
        color[v] = 2;
        true
    }
    (0..n).all(|v| color[v] != 0 || dfs(v, &adj, &mut color))
}

/// Exhaustively enumerates traces from `from` to `to`, one canonical
/// interior representative per cell crossing.
///
/// On a loop-free complex the enumeration is complete and any budget is
/// ignored; on a looping complex a budget is required and bounds the carrier
/// length.
pub fn all_traces(
    cx: &GlobularComplex,
    from: &str,
    to: &str,
    budget: Option<usize>,
) -> Result<TraceSet, SpaceError> {
    for s in [from, to] {
        if !cx.has_state(s) {
            return Err(SpaceError::UnknownState(s.to_string()));
        }
    }
    let eff = if is_loop_free(cx) {
        cx.states().len().saturating_sub(1)
    } else {
        budget.ok_or(SpaceError::LoopingNeedsBudget)?
    };
    let mut by_src: BTreeMap<&str, Vec<&crate::complex::GlobularCell>> = BTreeMap::new();
    for cell in cx.cells() {
        by_src.entry(cell.src.as_str()).or_default().push(cell);
    }
    let mut traces = BTreeSet::new();
    let mut stack: Vec<PathStep> = Vec::new();
    fn dfs(
        cx: &GlobularComplex,
        by_src: &BTreeMap<&str, Vec<&crate::complex::GlobularCell>>,
        at: &str,
        to: &str,
        eff: usize,
        stack: &mut Vec<PathStep>,
        traces: &mut BTreeSet<NaturalPath>,
    ) {
        if at == to && !stack.is_empty() {
            traces.insert(NaturalPath::new(stack.clone()).expect("nonempty"));
        }
        if stack.len() >= eff {
            return;
        }
        if let Some(cells) = by_src.get(at) {
            for cell in cells {
                stack.push(PathStep {
                    cell: cell.id.clone(),
                    point: DiskPoint::origin(cell.disk_dim),
                });
                dfs(cx, by_src, &cell.tgt, to, eff, stack, traces);
                stack.pop();
            }
        }
    }
    dfs(cx, &by_src, from, to, eff, &mut stack, &mut traces);
    Ok(TraceSet {
        from: from.to_string(),
        to: to.to_string(),
        traces,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{chain_of_globes, psi_control, psi_counterexample, Flavor, GlobularCell};
    use crate::fixtures;
    use crate::rat::rat;

    fn labels(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn chain_trace_counts_multiply() {
        let cx = chain_of_globes(&[labels(&["a", "b"]), labels(&["c"])], Flavor::M).unwrap();
        assert_eq!(chain_traces(&cx, "0", "2").unwrap().len(), 2);
        assert_eq!(chain_traces(&cx, "0", "1").unwrap().len(), 2);
        assert_eq!(chain_traces(&cx, "1", "2").unwrap().len(), 1);
        assert!(chain_traces(&cx, "0", "0").unwrap().is_empty());
        let single = chain_of_globes(&[labels(&["a"])], Flavor::M).unwrap();
        assert_eq!(chain_traces(&single, "0", "1").unwrap().len(), 1);
    }

    #[test]
    fn pack_unpack_round_trip() {
        let cx = chain_of_globes(&[labels(&["a"]), labels(&["b"])], Flavor::M).unwrap();
        let law = PlMap::new(
            rat_int(1),
            rat_int(2),
            vec![(rat(0, 1), rat(0, 1)), (rat(1, 4), rat(3, 2)), (rat(1, 1), rat(2, 1))],
        )
        .unwrap();
        let zs = vec![DiskPoint::origin(0), DiskPoint::origin(0)];
        let carrier = vec!["g1_a".to_string(), "g2_b".to_string()];
        let p = pack_chain_path(&cx, &carrier, &law, &zs).unwrap();
        assert_eq!(unpack_chain_path(&p), (law, zs));
    }

    #[test]
    fn slice_witnesses_for_the_twisted_disk() {
        let cx = psi_counterexample();
        let w = slice_meets_states(&cx, "twist", &rat(3, 10)).unwrap().unwrap();
        assert_eq!(w.point, DiskPoint(vec![rat(0, 1), rat(1, 1)]));
        assert_eq!(w.state, "0");

        let w = slice_meets_states(&cx, "twist", &rat(4, 5)).unwrap().unwrap();
        assert_eq!(w.point, DiskPoint(vec![rat(-1, 1), rat(0, 1)]));
        assert_eq!(w.state, "1");

        // untwisted control never meets a state strictly inside
        let ctrl = psi_control();
        for k in 1..20 {
            assert!(slice_meets_states(&ctrl, "twist", &rat(k, 20)).unwrap().is_none());
        }

        assert!(slice_meets_states(&cx, "twist", &rat(3, 2)).is_err());
        assert!(slice_meets_states(&cx, "em", &rat(1, 2)).is_err());
    }

    #[test]
    fn profile_of_the_disk_family() {
        let family = fixtures::boundary_to_interior_family();
        let profile = natural_length_profile(&family);
        assert_eq!(profile.len(), 3);
        assert_eq!(profile[0], (UInterval::point(rat(0, 1)), 2));
        assert_eq!(profile[1].1, 1);
        assert_eq!(profile[1].0, UInterval::open(rat(0, 1), rat(1, 1)));
        assert_eq!(profile[2], (UInterval::point(rat(1, 1)), 2));
        assert_eq!(carrier_set(&family).len(), 2);

        let cx = fixtures::disk_over_two_segments(Flavor::M);
        family.validate_in(&cx).unwrap();
        // members are genuine paths of the complex
        let mid = family.path_at(&rat(1, 2)).unwrap();
        assert_eq!(mid.carrier(), vec!["d".to_string()]);
        let end = family.path_at(&rat(0, 1)).unwrap();
        assert_eq!(end.natural_length(), 2);
    }

    #[test]
    fn loop_detection_and_budgets() {
        let cx = fixtures::two_segment_chain(Flavor::M);
        assert!(is_loop_free(&cx));

        let looping = GlobularComplex::new(
            Flavor::M,
            vec!["s".to_string()],
            vec![GlobularCell {
                id: "l".to_string(),
                disk_dim: 0,
                src: "s".to_string(),
                tgt: "s".to_string(),
                attach: AttachingData::Endpoints,
            }],
        )
        .unwrap();
        assert!(!is_loop_free(&looping));
        assert!(matches!(
            all_traces(&looping, "s", "s", None),
            Err(SpaceError::LoopingNeedsBudget)
        ));
        let bounded = all_traces(&looping, "s", "s", Some(3)).unwrap();
        assert_eq!(bounded.len(), 3); // l, ll, lll
    }

    #[test]
    fn all_traces_agrees_with_chain_traces() {
        let cx = chain_of_globes(&[labels(&["a", "b"]), labels(&["c"])], Flavor::M).unwrap();
        for (f, t) in [("0", "1"), ("0", "2"), ("1", "2"), ("0", "0")] {
            assert_eq!(
                all_traces(&cx, f, t, None).unwrap().traces,
                chain_traces(&cx, f, t).unwrap().traces
            );
        }
    }

    #[test]
    fn disk_complex_has_two_strata() {
        let cx = fixtures::disk_over_two_segments(Flavor::M);
        let ts = all_traces(&cx, "0", "2", None).unwrap();
        assert_eq!(ts.len(), 2);
        let lengths: BTreeSet<usize> =
            ts.traces.iter().map(|t| t.natural_length()).collect();
        assert_eq!(lengths, BTreeSet::from([1, 2]));
    }
}
