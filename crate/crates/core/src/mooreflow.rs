//! Variable-length path structure, saturation of path predicates, and the
//! indexed-diagram checker for path spaces of cell attachments.
//!
//! Length paths compose strictly associatively with additive lengths and no
//! units. Path predicates on the directed interval are finitely generated
//! sets closed under precomposition; saturation closes them under "some time
//! change of the path is a member". The attachment checker enumerates the
//! traces of a pushout two ways — directly, and through minimal-degree
//! elements of a diagram indexed by a small generators-and-relations
//! category — and verifies the bijection.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::complex::{DiskPoint, GlobularCell, GlobularComplex};
use crate::paths::{ExecutionPath, NaturalPath, PathError, PathStep};
use crate::rat::{rat_display, Rat};
use crate::reparam::{common_reparam, PlMap, ReparamError};
use crate::spaces::{all_traces, is_loop_free, SpaceError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FlowError {
    #[error("length must be positive, got {0}")]
    BadLength(String),
    #[error("paths do not compose: `{tgt}` != `{src}`")]
    EndpointMismatch { tgt: String, src: String },
    #[error("invalid tuple: {0}")]
    BadTuple(String),
    #[error(transparent)]
    Path(#[from] PathError),
    #[error(transparent)]
    Reparam(#[from] ReparamError),
    #[error(transparent)]
    Space(#[from] SpaceError),
}

/// An execution path of arbitrary positive length `ℓ`: the regular
/// representative plus a time law `[0, ℓ] → [0, n]`. Length 1 coincides
/// with [`ExecutionPath`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LengthPath {
    base: NaturalPath,
    law: PlMap,
}

impl LengthPath {
    pub fn length(&self) -> &Rat {
        self.law.dom_len()
    }

    pub fn base(&self) -> &NaturalPath {
        &self.base
    }

    pub fn law(&self) -> &PlMap {
        &self.law
    }

    pub fn natural_length(&self) -> usize {
        self.base.natural_length()
    }

    /// Rescales a unit path to length `len`.
    pub fn at_length(p: &ExecutionPath, len: &Rat) -> Result<LengthPath, FlowError> {
        if !len.is_positive() {
            return Err(FlowError::BadLength(rat_display(len)));
        }
        let law = PlMap::scale_to_unit(len.clone()).then(p.reparam())?;
        Ok(LengthPath {
            base: p.base().clone(),
            law,
        })
    }

    /// Rescales back to the unit segment; inverse of [`LengthPath::at_length`].
    pub fn to_unit(&self) -> ExecutionPath {
        let law = PlMap::scale_from_unit(self.length().clone())
            .then(&self.law)
            .expect("lengths agree by construction");
        ExecutionPath::new(self.base.clone(), law).expect("shape preserved")
    }

    /// Moore composition: lengths and natural lengths add; strictly
    /// associative.
    pub fn compose(
        &self,
        cx: &GlobularComplex,
        other: &LengthPath,
    ) -> Result<LengthPath, FlowError> {
        let tgt = self.base.tgt(cx).unwrap_or_default().to_string();
        let src = other.base.src(cx).unwrap_or_default().to_string();
        if tgt != src {
            return Err(FlowError::EndpointMismatch { tgt, src });
        }
        Ok(LengthPath {
            base: self.base.concat(&other.base),
            law: PlMap::tensor(&[self.law.clone(), other.law.clone()])?,
        })
    }
}

/// A finitely generated set of paths on the directed interval: all
/// `g.then(psi)`... membership is `chi = psi.then(g)` for some generator `g`
/// and monotone `psi`, decided exactly through flat-value containment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathPredicate {
    generators: Vec<PlMap>,
}

impl PathPredicate {
    /// Panics unless every generator is a unit-segment map.
    pub fn new(generators: Vec<PlMap>) -> Self {
        assert!(
            !generators.is_empty() && generators.iter().all(|g| g.is_unit()),
            "generators must be unit-segment maps"
        );
        PathPredicate { generators }
    }

    /// The path set of a single cell: every monotone time change of the
    /// unit-speed crossing.
    pub fn cell_predicate() -> Self {
        PathPredicate {
            generators: vec![PlMap::identity(Rat::one())],
        }
    }

    pub fn generators(&self) -> &[PlMap] {
        &self.generators
    }

    /// Exact membership test.
    pub fn contains(&self, chi: &PlMap) -> bool {
        self.generators
            .iter()
            .any(|g| chi.factor_through(g).is_some())
    }

    /// Closure under "some time change of the path is a member": generated
    /// by the stop-erased regularizations of the generators.
    pub fn saturate(&self) -> PathPredicate {
        PathPredicate {
            generators: self.generators.iter().map(regularize).collect(),
        }
    }

    /// The canonical finite test family deciding saturation: generators,
    /// their regularizations, pairwise mutual time changes, and the
    /// identity.
    fn test_family(&self) -> Vec<PlMap> {
        let mut family = vec![PlMap::identity(Rat::one())];
        family.extend(self.generators.iter().cloned());
        family.extend(self.generators.iter().map(regularize));
        for (i, g) in self.generators.iter().enumerate() {
            for h in &self.generators[i + 1..] {
                if let Ok((a, b)) = common_reparam(g, h) {
                    family.push(a);
                    family.push(b);
                }
            }
        }
        family
    }

    /// True when saturation does not change membership.
    pub fn is_saturated(&self) -> bool {
        let closure = self.saturate();
        self.test_family()
            .iter()
            .all(|chi| self.contains(chi) == closure.contains(chi))
    }
}

/// Deletes the flats of a unit map and rescales the domain back to the unit
/// segment; the result is strictly increasing.
fn regularize(g: &PlMap) -> PlMap {
    let mut pts: Vec<(Rat, Rat)> = Vec::with_capacity(g.points().len());
    let mut skipped = Rat::zero();
    let mut prev: Option<&(Rat, Rat)> = None;
    for p in g.points() {
        if let Some(q) = prev {
            if q.1 == p.1 {
                skipped += &p.0 - &q.0;
            }
        }
        let shifted = (&p.0 - &skipped, p.1.clone());
        if pts.last() != Some(&shifted) {
            pts.push(shifted);
        }
        prev = Some(p);
    }
    let squeeze = Rat::one() - &skipped;
    debug_assert!(squeeze.is_positive(), "a surjection cannot be all flat");
    let pts = pts.into_iter().map(|(t, v)| (t / &squeeze, v)).collect();
    PlMap::from_points(pts).expect("regularization stays monotone")
}

/// An object of the indexed category over a state set with one marked pair:
/// a chain of triples `(u, ε, v)`, where `ε = 1` forces the triple onto the
/// marked pair.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ReedyObject {
    triples: Vec<(String, bool, String)>,
    marked: (String, String),
}

impl fmt::Display for ReedyObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (u, e, v)) in self.triples.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "({u},{},{v})", u8::from(*e))?;
        }
        Ok(())
    }
}

/// An arrow out of a [`ReedyObject`]: merging two adjacent unmarked triples
/// (degree −1) or flipping an unmarked triple on the marked pair (degree +1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReedyArrow {
    /// Merges triples at 1-based positions `i` and `i+1`.
    Composition(usize),
    /// Flips the triple at 1-based position `i` from 0 to 1.
    Inclusion(usize),
}

impl ReedyObject {
    pub fn new(
        triples: Vec<(String, bool, String)>,
        marked: (String, String),
    ) -> Result<Self, FlowError> {
        if triples.is_empty() {
            return Err(FlowError::BadTuple("no triples".to_string()));
        }
        for w in triples.windows(2) {
            if w[0].2 != w[1].0 {
                return Err(FlowError::BadTuple(format!(
                    "`{}` does not chain with `{}`",
                    w[0].2, w[1].0
                )));
            }
        }
        for (u, e, v) in &triples {
            if *e && (u.clone(), v.clone()) != marked {
                return Err(FlowError::BadTuple(format!(
                    "marked slot on ({u}, {v}) instead of ({}, {})",
                    marked.0, marked.1
                )));
            }
        }
        Ok(ReedyObject { triples, marked })
    }

    pub fn triples(&self) -> &[(String, bool, String)] {
        &self.triples
    }

    pub fn marked(&self) -> &(String, String) {
        &self.marked
    }

    /// Triple count plus the number of marked slots.
    pub fn degree(&self) -> usize {
        self.triples.len() + self.triples.iter().filter(|t| t.1).count()
    }

    /// Applies a composition arrow at 1-based position `i`, if defined.
    pub fn compose_at(&self, i: usize) -> Option<ReedyObject> {
        if i == 0 || i >= self.triples.len() {
            return None;
        }
        let (a, b) = (&self.triples[i - 1], &self.triples[i]);
        if a.1 || b.1 {
            return None;
        }
        let mut triples = self.triples.clone();
        triples[i - 1] = (a.0.clone(), false, b.2.clone());
        triples.remove(i);
        Some(ReedyObject {
            triples,
            marked: self.marked.clone(),
        })
    }

    /// Applies an inclusion arrow at 1-based position `i`, if defined.
    pub fn include_at(&self, i: usize) -> Option<ReedyObject> {
        if i == 0 || i > self.triples.len() {
            return None;
        }
        let t = &self.triples[i - 1];
        if t.1 || (t.0.clone(), t.2.clone()) != self.marked {
            return None;
        }
        let mut triples = self.triples.clone();
        triples[i - 1].1 = true;
        Some(ReedyObject {
            triples,
            marked: self.marked.clone(),
        })
    }

    pub fn apply(&self, arrow: &ReedyArrow) -> Option<ReedyObject> {
        match arrow {
            ReedyArrow::Composition(i) => self.compose_at(*i),
            ReedyArrow::Inclusion(i) => self.include_at(*i),
        }
    }

    /// All generator arrows out of this object, with their targets.
    pub fn arrows(&self) -> Vec<(ReedyArrow, ReedyObject)> {
        let mut out = Vec::new();
        for i in 1..self.triples.len() {
            if let Some(t) = self.compose_at(i) {
                out.push((ReedyArrow::Composition(i), t));
            }
        }
        for i in 1..=self.triples.len() {
            if let Some(t) = self.include_at(i) {
                out.push((ReedyArrow::Inclusion(i), t));
            }
        }
        out
    }
}

/// Statistics of an exhaustive relation audit.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AuditStats {
    pub objects: usize,
    pub arrows: usize,
    pub relation_instances: usize,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("relation audit failed at {object}: {detail}")]
pub struct AuditFailure {
    pub object: String,
    pub detail: String,
}

/// Enumerates every object of degree at most `max_degree` over the given
/// states and marked pair.
pub fn enumerate_objects(
    states: &[String],
    marked: &(String, String),
    max_degree: usize,
) -> Vec<ReedyObject> {
    let mut out = Vec::new();
    let mut triples: Vec<(String, bool, String)> = Vec::new();
    fn rec(
        states: &[String],
        marked: &(String, String),
        max_degree: usize,
        degree: usize,
        last: Option<&String>,
        triples: &mut Vec<(String, bool, String)>,
        out: &mut Vec<ReedyObject>,
    ) {
        if !triples.is_empty() {
            out.push(ReedyObject {
                triples: triples.clone(),
                marked: marked.clone(),
            });
        }
        if degree >= max_degree {
            return;
        }
        let firsts: Vec<String> = match last {
            Some(s) => vec![s.clone()],
            None => states.to_vec(),
        };
        for u in firsts {
            for v in states {
                // unmarked slot: degree 1
                if degree + 1 <= max_degree {
                    triples.push((u.clone(), false, v.clone()));
                    rec(states, marked, max_degree, degree + 1, Some(v), triples, out);
                    triples.pop();
                }
                // marked slot: degree 2, only on the marked pair
                if degree + 2 <= max_degree && u == marked.0 && *v == marked.1 {
                    triples.push((u.clone(), true, v.clone()));
                    rec(states, marked, max_degree, degree + 2, Some(v), triples, out);
                    triples.pop();
                }
            }
        }
    }
    rec(states, marked, max_degree, 0, None, &mut triples, &mut out);
    out
}

/// Exhaustively verifies, on all objects of degree at most `max_degree`,
/// the three relation groups of the indexed category — merges commute with
/// shifted indices, flips commute, merges move past flips — together with
/// strict degree monotonicity along every arrow.
pub fn audit_relations(
    states: &[String],
    marked: &(String, String),
    max_degree: usize,
) -> Result<AuditStats, AuditFailure> {
    let mut stats = AuditStats::default();
    let fail = |o: &ReedyObject, detail: String| AuditFailure {
        object: o.to_string(),
        detail,
    };
    for o in enumerate_objects(states, marked, max_degree) {
        stats.objects += 1;
        let n = o.triples.len();
        for (arrow, target) in o.arrows() {
            stats.arrows += 1;
            let expected = match arrow {
                ReedyArrow::Composition(_) => o.degree() - 1,
                ReedyArrow::Inclusion(_) => o.degree() + 1,
            };
            if target.degree() != expected {
                return Err(fail(&o, format!("degree not monotone along {arrow:?}")));
            }
        }
        // group A: c_i . c_j = c_{j-1} . c_i for i < j (apply c_j first)
        for j in 1..n {
            for i in 1..j {
                if let Some(x) = o.compose_at(j) {
                    if let Some(lhs) = x.compose_at(i) {
                        stats.relation_instances += 1;
                        let rhs = o
                            .compose_at(i)
                            .and_then(|y| y.compose_at(j - 1))
                            .ok_or_else(|| {
                                fail(&o, format!("c_{i} . c_{j} defined but c_{} . c_{i} is not", j - 1))
                            })?;
                        if lhs != rhs {
                            return Err(fail(&o, format!("c_{i} . c_{j} != c_{} . c_{i}", j - 1)));
                        }
                    }
                }
            }
        }
        // group B: I_i . I_j = I_j . I_i for i != j
        for i in 1..=n {
            for j in 1..=n {
                if i == j {
                    continue;
                }
                if let Some(lhs) = o.include_at(j).and_then(|x| x.include_at(i)) {
                    stats.relation_instances += 1;
                    let rhs = o
                        .include_at(i)
                        .and_then(|x| x.include_at(j))
                        .ok_or_else(|| fail(&o, format!("I_{i} . I_{j} defined, converse not")))?;
                    if lhs != rhs {
                        return Err(fail(&o, format!("I_{i} . I_{j} != I_{j} . I_{i}")));
                    }
                }
            }
        }
        // group C: merges move past flips with the index shift
        for i in 1..n {
            for j in 1..=n {
                if j == i || j == i + 1 {
                    // never composable at these offsets
                    continue;
                }
                if let Some(lhs) = o.include_at(j).and_then(|x| x.compose_at(i)) {
                    stats.relation_instances += 1;
                    let rhs = if j >= i + 2 {
                        o.compose_at(i).and_then(|x| x.include_at(j - 1))
                    } else {
                        o.compose_at(i).and_then(|x| x.include_at(j))
                    };
                    let rhs = rhs.ok_or_else(|| {
                        fail(&o, format!("c_{i} . I_{j} defined but the shifted form is not"))
                    })?;
                    if lhs != rhs {
                        return Err(fail(&o, format!("c_{i} . I_{j} does not shift correctly")));
                    }
                }
            }
        }
    }
    Ok(stats)
}

/// Per-slot content of a diagram element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Slot {
    /// An unmarked slot: a trace of the base complex.
    Base(NaturalPath),
    /// A marked slot crossing the new cell at an interior point.
    NewInterior(DiskPoint),
    /// A marked slot resolved onto the boundary of the new cell.
    NewBoundary(NaturalPath),
}

/// An element of the indexed diagram: an object together with matching slot
/// contents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagramElement {
    pub object: ReedyObject,
    pub slots: Vec<Slot>,
}

impl DiagramElement {
    /// A minimal-degree representative: no two adjacent unmarked slots, and
    /// every marked slot crosses the new cell strictly inside.
    pub fn is_simplified(&self) -> bool {
        let eps: Vec<bool> = self.object.triples().iter().map(|t| t.1).collect();
        if eps.windows(2).any(|w| !w[0] && !w[1]) {
            return false;
        }
        self.object
            .triples()
            .iter()
            .zip(&self.slots)
            .all(|((_, e, _), slot)| match slot {
                Slot::Base(_) => !e,
                Slot::NewInterior(p) => *e && p.is_interior(),
                Slot::NewBoundary(_) => false,
            })
    }

    /// The trace of the underlying path: slot contents concatenated.
    pub fn induced_trace(&self, new_cell: &GlobularCell) -> NaturalPath {
        let mut steps: Vec<PathStep> = Vec::new();
        for slot in &self.slots {
            match slot {
                Slot::Base(p) | Slot::NewBoundary(p) => steps.extend(p.steps().iter().cloned()),
                Slot::NewInterior(z) => steps.push(PathStep {
                    cell: new_cell.id.clone(),
                    point: z.clone(),
                }),
            }
        }
        NaturalPath::new(steps).expect("slots are nonempty")
    }
}

/// Outcome of the two-way trace comparison for one attachment.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct PushoutReport {
    pub method_a_count: usize,
    pub method_b_count: usize,
    pub bijection: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mismatch_witness: Option<String>,
}

/// Compares the traces of `base + new_cell` computed two ways: direct
/// enumeration of the attached complex, and enumeration of simplified
/// diagram elements over the indexed category of the base's states with the
/// new cell's endpoints marked. Reports the counts and the first mismatch,
/// if any.
pub fn pushout_trace_check(
    base: &GlobularComplex,
    new_cell: &GlobularCell,
    from: &str,
    to: &str,
    budget: Option<usize>,
) -> Result<PushoutReport, FlowError> {
    let attached = base.attach_cell(new_cell.clone()).map_err(SpaceError::from)?;
    let eff = if is_loop_free(&attached) {
        attached.states().len().saturating_sub(1)
    } else {
        budget.ok_or(SpaceError::LoopingNeedsBudget)?
    };

    let direct = all_traces(&attached, from, to, Some(eff))?;

    // trace sets of the base complex, computed per state pair on demand
    let mut base_traces: BTreeMap<(String, String), Vec<NaturalPath>> = BTreeMap::new();
    let mut base_traces_for = |src: &str, tgt: &str| -> Result<Vec<NaturalPath>, FlowError> {
        let key = (src.to_string(), tgt.to_string());
        if let Some(ts) = base_traces.get(&key) {
            return Ok(ts.clone());
        }
        let ts: Vec<NaturalPath> = all_traces(base, src, tgt, Some(eff))?
            .traces
            .into_iter()
            .collect();
        base_traces.insert(key, ts.clone());
        Ok(ts)
    };

    let marked = (new_cell.src.clone(), new_cell.tgt.clone());
    let canon_z = DiskPoint::origin(new_cell.disk_dim);
    let mut elements: Vec<DiagramElement> = Vec::new();

    // depth-first assembly of simplified elements: alternate base traces and
    // interior crossings, never two base traces in a row
    struct Frame {
        at: String,
        used: usize,
        prev_base: bool,
        triples: Vec<(String, bool, String)>,
        slots: Vec<Slot>,
    }
    let mut stack = vec![Frame {
        at: from.to_string(),
        used: 0,
        prev_base: false,
        triples: Vec::new(),
        slots: Vec::new(),
    }];
    while let Some(frame) = stack.pop() {
        if frame.at == to && !frame.triples.is_empty() {
            elements.push(DiagramElement {
                object: ReedyObject {
                    triples: frame.triples.clone(),
                    marked: marked.clone(),
                },
                slots: frame.slots.clone(),
            });
        }
        if frame.used >= eff {
            continue;
        }
        // marked slot
        if frame.at == marked.0 {
            let mut triples = frame.triples.clone();
            triples.push((marked.0.clone(), true, marked.1.clone()));
            let mut slots = frame.slots.clone();
            slots.push(Slot::NewInterior(canon_z.clone()));
            stack.push(Frame {
                at: marked.1.clone(),
                used: frame.used + 1,
                prev_base: false,
                triples,
                slots,
            });
        }
        // unmarked slot, only after a marked one or at the start
        if !frame.prev_base {
            for w in base.states() {
                for t in base_traces_for(&frame.at, w)? {
                    let step_len = t.natural_length();
                    if frame.used + step_len > eff {
                        continue;
                    }
                    let mut triples = frame.triples.clone();
                    triples.push((frame.at.clone(), false, w.clone()));
                    let mut slots = frame.slots.clone();
                    slots.push(Slot::Base(t));
                    stack.push(Frame {
                        at: w.clone(),
                        used: frame.used + step_len,
                        prev_base: true,
                        triples,
                        slots,
                    });
                }
            }
        }
    }

    debug_assert!(elements.iter().all(|e| e.is_simplified()));

    let mut seen: BTreeMap<NaturalPath, usize> = BTreeMap::new();
    for e in &elements {
        *seen.entry(e.induced_trace(new_cell)).or_insert(0) += 1;
    }
    let method_b_count: usize = seen.values().sum();

    let mut mismatch = None;
    for (trace, count) in &seen {
        if *count > 1 {
            mismatch = Some(format!("trace realized by {count} elements: {trace}"));
            break;
        }
        if !direct.traces.contains(trace) {
            mismatch = Some(format!("element trace not found directly: {trace}"));
            break;
        }
    }
    if mismatch.is_none() {
        for trace in &direct.traces {
            if !seen.contains_key(trace) {
                mismatch = Some(format!("direct trace not reached by any element: {trace}"));
                break;
            }
        }
    }
    Ok(PushoutReport {
        method_a_count: direct.traces.len(),
        method_b_count,
        bijection: mismatch.is_none(),
        mismatch_witness: mismatch,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::Flavor;
    use crate::fixtures;
    use crate::rat::{rat, rat_int};

    fn st(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    fn marked(u: &str, v: &str) -> (String, String) {
        (u.to_string(), v.to_string())
    }

    fn half_flat() -> PlMap {
        PlMap::new(
            rat_int(1),
            rat_int(1),
            vec![(rat(0, 1), rat(0, 1)), (rat(1, 2), rat(1, 1)), (rat(1, 1), rat(1, 1))],
        )
        .unwrap()
    }

    #[test]
    fn length_paths_rescale_and_invert() {
        let p = ExecutionPath::minimal("g1_a".into(), DiskPoint::origin(0));
        let q = LengthPath::at_length(&p, &rat_int(3)).unwrap();
        assert_eq!(q.length(), &rat_int(3));
        assert_eq!(q.to_unit(), p);
        assert_eq!(LengthPath::at_length(&p, &rat_int(1)).unwrap().to_unit(), p);
        assert!(LengthPath::at_length(&p, &rat(0, 1)).is_err());
    }

    #[test]
    fn length_composition_adds_and_associates() {
        let cx = crate::complex::chain_of_globes(
            &[st(&["a"]), st(&["b"]), st(&["c"])],
            Flavor::M,
        )
        .unwrap();
        let p = |cell: &str| ExecutionPath::minimal(cell.into(), DiskPoint::origin(0));
        let a = LengthPath::at_length(&p("g1_a"), &rat(1, 2)).unwrap();
        let b = LengthPath::at_length(&p("g2_b"), &rat_int(2)).unwrap();
        let c = LengthPath::at_length(&p("g3_c"), &rat(3, 4)).unwrap();
        let left = a.compose(&cx, &b).unwrap().compose(&cx, &c).unwrap();
        let right = a.compose(&cx, &b.compose(&cx, &c).unwrap()).unwrap();
        assert_eq!(left, right);
        assert_eq!(left.length(), &rat(13, 4));
        assert_eq!(left.natural_length(), 3);

        // unit-length composition matches the normalized composition
        let u = LengthPath::at_length(&p("g1_a"), &rat_int(1)).unwrap();
        let v = LengthPath::at_length(&p("g2_b"), &rat_int(1)).unwrap();
        let w = u.compose(&cx, &v).unwrap();
        assert_eq!(
            w.to_unit(),
            p("g1_a").compose_normalized(&cx, &p("g2_b")).unwrap()
        );
        assert!(matches!(
            v.compose(&cx, &u),
            Err(FlowError::EndpointMismatch { .. })
        ));
    }

    #[test]
    fn predicate_membership_and_saturation() {
        let p = PathPredicate::new(vec![half_flat()]);
        let id = PlMap::identity(Rat::one());
        assert!(!p.contains(&id));
        let chi = half_flat().then(&half_flat()).unwrap();
        // chi = half_flat . half_flat arises by precomposition, so it is in
        assert!(p.contains(&chi));
        assert!(!p.is_saturated());
        let closure = p.saturate();
        assert!(closure.contains(&id));
        assert!(closure.contains(&half_flat()));
        assert!(closure.is_saturated());
        assert!(PathPredicate::cell_predicate().is_saturated());
    }

    #[test]
    fn regularize_strips_flats() {
        assert_eq!(regularize(&half_flat()), PlMap::identity(Rat::one()));
        let stair = PlMap::new(
            rat_int(1),
            rat_int(1),
            vec![
                (rat(0, 1), rat(0, 1)),
                (rat(1, 4), rat(0, 1)),
                (rat(1, 2), rat(1, 1)),
                (rat(1, 1), rat(1, 1)),
            ],
        )
        .unwrap();
        assert_eq!(regularize(&stair), PlMap::identity(Rat::one()));
        let g = PlMap::new(
            rat_int(1),
            rat_int(1),
            vec![(rat(0, 1), rat(0, 1)), (rat(1, 3), rat(2, 3)), (rat(1, 1), rat(1, 1))],
        )
        .unwrap();
        assert_eq!(regularize(&g), g);
    }

    #[test]
    fn degrees_and_arrows() {
        let m = marked("u", "v");
        let o = ReedyObject::new(vec![(("u").into(), false, "v".into())], m.clone()).unwrap();
        assert_eq!(o.degree(), 1);
        let arrows = o.arrows();
        assert_eq!(arrows.len(), 1);
        assert!(matches!(arrows[0].0, ReedyArrow::Inclusion(1)));
        assert_eq!(arrows[0].1.degree(), 2);

        let o2 = ReedyObject::new(
            vec![("u".into(), false, "v".into()), ("v".into(), true, "w".into())],
            marked("v", "w"),
        )
        .unwrap();
        assert_eq!(o2.degree(), 3);

        let o3 = ReedyObject::new(
            vec![("x".into(), false, "y".into()), ("y".into(), false, "z".into())],
            m,
        )
        .unwrap();
        let merges: Vec<_> = o3
            .arrows()
            .into_iter()
            .filter(|(a, _)| matches!(a, ReedyArrow::Composition(_)))
            .collect();
        assert_eq!(merges.len(), 1);
        assert_eq!(
            merges[0].1,
            ReedyObject::new(vec![("x".into(), false, "z".into())], marked("u", "v")).unwrap()
        );
    }

    #[test]
    fn tuple_validation() {
        let m = marked("u", "v");
        assert!(ReedyObject::new(vec![], m.clone()).is_err());
        assert!(ReedyObject::new(
            vec![("a".into(), false, "b".into()), ("c".into(), false, "d".into())],
            m.clone()
        )
        .is_err());
        assert!(ReedyObject::new(vec![("a".into(), true, "b".into())], m).is_err());
    }

    #[test]
    fn small_relation_audit() {
        let stats = audit_relations(&st(&["u", "v"]), &marked("u", "v"), 4).unwrap();
        assert!(stats.objects > 0);
        assert!(stats.relation_instances > 0);
    }

    #[test]
    fn simplified_detection() {
        let m = marked("0", "1");
        let seg = NaturalPath::single("g1_a".into(), DiskPoint::origin(0));
        let good = DiagramElement {
            object: ReedyObject::new(vec![("0".into(), true, "1".into())], m.clone()).unwrap(),
            slots: vec![Slot::NewInterior(DiskPoint::origin(1))],
        };
        assert!(good.is_simplified());

        let adjacent = DiagramElement {
            object: ReedyObject::new(
                vec![("0".into(), false, "1".into()), ("1".into(), false, "2".into())],
                m.clone(),
            )
            .unwrap(),
            slots: vec![Slot::Base(seg.clone()), Slot::Base(seg.clone())],
        };
        assert!(!adjacent.is_simplified());

        let boundary = DiagramElement {
            object: ReedyObject::new(vec![("0".into(), true, "1".into())], m).unwrap(),
            slots: vec![Slot::NewBoundary(seg)],
        };
        assert!(!boundary.is_simplified());
    }

    #[test]
    fn pushout_checker_on_fixtures() {
        for (name, base, cell, from, to) in fixtures::pushout_instances() {
            let report = pushout_trace_check(&base, &cell, &from, &to, None).unwrap();
            assert!(report.bijection, "{name}: {:?}", report.mismatch_witness);
            assert_eq!(report.method_a_count, report.method_b_count, "{name}");
        }
    }

    #[test]
    fn pushout_empty_endpoints() {
        let base = fixtures::two_segment_chain(Flavor::M);
        let cell = fixtures::pushout_instances()[0].2.clone();
        let report = pushout_trace_check(&base, &cell, "0", "0", None).unwrap();
        assert!(report.bijection);
        assert_eq!(report.method_a_count, 0);
        assert_eq!(report.method_b_count, 0);
    }
}
