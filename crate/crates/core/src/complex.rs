//! Combinatorial globular cell complexes.
//!
//! A complex is a finite set of states plus an ordered list of globular
//! cells. A cell of disk dimension `n` attaches a globe over the `n`-disk
//! between two states; its boundary sphere is sent into the earlier skeleton
//! by decidable attaching data. The supported attaching class covers directed
//! segments, globes over finite sets, disk cells glued along named paths, and
//! the twisted two-disk family used by the achronal-slice analysis.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::paths::NaturalPath;
use crate::rat::{rat_display, rat_int, Rat};
use crate::reparam::PlMap;

/// Which reparametrizations a complex admits: invertible only (`G`) or all
/// monotone surjections (`M`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Flavor {
    G,
    M,
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Flavor::G => write!(f, "G"),
            Flavor::M => write!(f, "M"),
        }
    }
}

/// A point of the `n`-disk with exact rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DiskPoint(pub Vec<Rat>);

impl DiskPoint {
    pub fn new(coords: Vec<Rat>) -> Self {
        DiskPoint(coords)
    }

    /// Center of the `n`-disk; the canonical interior representative.
    pub fn origin(dim: usize) -> Self {
        DiskPoint(vec![Rat::zero(); dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn norm_sq(&self) -> Rat {
        self.0.iter().map(|c| c * c).sum()
    }

    /// Strictly inside the disk (`Σ cᵢ² < 1`, exact).
    pub fn is_interior(&self) -> bool {
        self.norm_sq() < Rat::one()
    }

    /// On the boundary sphere (`Σ cᵢ² = 1`, exact).
    pub fn is_boundary(&self) -> bool {
        self.norm_sq() == Rat::one()
    }

    pub fn is_valid(&self) -> bool {
        self.norm_sq() <= Rat::one()
    }
}

impl fmt::Display for DiskPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", rat_display(c))?;
        }
        write!(f, ")")
    }
}

/// Resolver for attaching families of cells of disk dimension two and up:
/// a total assignment of boundary points to paths in the earlier skeleton
/// together with a reparametrization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Resolver {
    /// Every boundary point maps to the same path, traversed linearly.
    Constant(NaturalPath),
    /// The twisted family on the boundary circle of a two-disk cell: the
    /// point `(x, y)` goes through the hemisphere cell selected by the sign
    /// of `y` at interior parameter `x`, reparametrized by the stair law
    /// with knees at `(2+x)/4` and `(3+x)/4`. Lies outside the invertible
    /// class, so it is rejected in `G`-flavored complexes.
    PsiTwist { upper: String, lower: String },
}

/// The stair time law of the twisted family at boundary parameter `x`:
/// 0 until `(2+x)/4`, then linear, then 1 from `(3+x)/4` on.
pub fn psi_law(x: &Rat) -> PlMap {
    let knee0 = (rat_int(2) + x) / rat_int(4);
    let knee1 = (rat_int(3) + x) / rat_int(4);
    let mut pts = vec![(Rat::zero(), Rat::zero())];
    let candidates = [(knee0, Rat::zero()), (knee1, Rat::one()), (Rat::one(), Rat::one())];
    for p in candidates {
        if pts.last() != Some(&p) {
            pts.push(p);
        }
    }
    PlMap::from_points(pts).expect("stair law is monotone for |x| <= 1")
}

/// Attaching data, one variant per disk dimension class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AttachingData {
    /// Disk dimension 0: a directed segment; nothing beyond `src`/`tgt`.
    Endpoints,
    /// Disk dimension 1: images of the two boundary points as paths in the
    /// earlier skeleton, both from the cell's source to its target.
    TwoPaths { minus: NaturalPath, plus: NaturalPath },
    /// Disk dimension at least 2: a resolver valid on every rational
    /// boundary point.
    Family(Resolver),
}

/// One globular cell: a globe over the `disk_dim`-disk from `src` to `tgt`.
/// Its cell dimension is `disk_dim + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlobularCell {
    pub id: String,
    pub disk_dim: usize,
    pub src: String,
    pub tgt: String,
    pub attach: AttachingData,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("duplicate state `{0}`")]
    DuplicateState(String),
    #[error("cell `{cell}`: unknown state `{state}`")]
    UnknownState { cell: String, state: String },
    #[error("duplicate cell id `{0}`")]
    DuplicateCell(String),
    #[error("cell `{cell}`: references cell `{referenced}` which is not strictly earlier")]
    SkeletalOrder { cell: String, referenced: String },
    #[error("cell `{cell}`: attaching variant does not match disk dimension {dim}")]
    VariantMismatch { cell: String, dim: usize },
    #[error("cell `{cell}`: {detail}")]
    BadAttachment { cell: String, detail: String },
    #[error("cell `{cell}`: attached path endpoints {got} do not match ({src} -> {tgt})")]
    EndpointMismatch {
        cell: String,
        src: String,
        tgt: String,
        got: String,
    },
    #[error("cell `{cell}`: point {point} is not a valid disk point for dimension {dim}")]
    BadDiskPoint {
        cell: String,
        point: String,
        dim: usize,
    },
    #[error("flavor G rejects cell `{cell}`: {detail}")]
    FlavorViolation { cell: String, detail: String },
    #[error("cell `{cell}` has no boundary to resolve")]
    NoBoundary { cell: String },
    #[error("cell `{cell}`: cannot resolve boundary point {point}")]
    UnresolvableBoundary { cell: String, point: String },
    #[error("unknown cell `{0}`")]
    UnknownCell(String),
    #[error("empty family of states or labels")]
    EmptyInput,
}

/// A validated globular complex: states plus cells in skeletal order.
///
/// Construction is total validation — a value of this type satisfies every
/// structural invariant (skeletal order, endpoint matching, disk-point
/// validity, flavor constraints).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlobularComplex {
    flavor: Flavor,
    states: Vec<String>,
    cells: Vec<GlobularCell>,
    cell_index: BTreeMap<String, usize>,
}

impl GlobularComplex {
    pub fn new(
        flavor: Flavor,
        states: Vec<String>,
        cells: Vec<GlobularCell>,
    ) -> Result<Self, ComplexError> {
        let mut seen = BTreeMap::new();
        for (i, s) in states.iter().enumerate() {
            if seen.insert(s.clone(), i).is_some() {
                return Err(ComplexError::DuplicateState(s.clone()));
            }
        }
        let mut cx = GlobularComplex {
            flavor,
            states,
            cells: Vec::new(),
            cell_index: BTreeMap::new(),
        };
        for cell in cells {
            cx.push_cell(cell)?;
        }
        Ok(cx)
    }

    /// Returns a new complex with `cell` appended; `self` is unchanged.
    pub fn attach_cell(&self, cell: GlobularCell) -> Result<Self, ComplexError> {
        let mut next = self.clone();
        next.push_cell(cell)?;
        Ok(next)
    }

    fn push_cell(&mut self, cell: GlobularCell) -> Result<(), ComplexError> {
        self.validate_cell(&cell)?;
        self.cell_index.insert(cell.id.clone(), self.cells.len());
        self.cells.push(cell);
        Ok(())
    }

    fn validate_cell(&self, cell: &GlobularCell) -> Result<(), ComplexError> {
        if self.cell_index.contains_key(&cell.id) {
            return Err(ComplexError::DuplicateCell(cell.id.clone()));
        }
        for s in [&cell.src, &cell.tgt] {
            if !self.states.contains(s) {
                return Err(ComplexError::UnknownState {
                    cell: cell.id.clone(),
                    state: s.clone(),
                });
            }
        }
        match (&cell.attach, cell.disk_dim) {
            (AttachingData::Endpoints, 0) => Ok(()),
            (AttachingData::TwoPaths { minus, plus }, 1) => {
                self.validate_attached_path(cell, minus)?;
                self.validate_attached_path(cell, plus)
            }
            (AttachingData::Family(resolver), d) if d >= 2 => match resolver {
                Resolver::Constant(path) => self.validate_attached_path(cell, path),
                Resolver::PsiTwist { upper, lower } => {
                    if self.flavor == Flavor::G {
                        return Err(ComplexError::FlavorViolation {
                            cell: cell.id.clone(),
                            detail: "the twisted boundary family uses non-invertible time laws"
                                .to_string(),
                        });
                    }
                    if d != 2 {
                        return Err(ComplexError::VariantMismatch {
                            cell: cell.id.clone(),
                            dim: d,
                        });
                    }
                    for hemi in [upper, lower] {
                        let idx = self.cell_index.get(hemi).copied().ok_or_else(|| {
                            ComplexError::SkeletalOrder {
                                cell: cell.id.clone(),
                                referenced: hemi.clone(),
                            }
                        })?;
                        let h = &self.cells[idx];
                        if h.disk_dim != 1 {
                            return Err(ComplexError::BadAttachment {
                                cell: cell.id.clone(),
                                detail: format!(
                                    "hemisphere `{hemi}` must have disk dimension 1"
                                ),
                            });
                        }
                        if h.src != cell.src || h.tgt != cell.tgt {
                            return Err(ComplexError::EndpointMismatch {
                                cell: cell.id.clone(),
                                src: cell.src.clone(),
                                tgt: cell.tgt.clone(),
                                got: format!("({} -> {})", h.src, h.tgt),
                            });
                        }
                    }
                    Ok(())
                }
            },
            (_, d) => Err(ComplexError::VariantMismatch {
                cell: cell.id.clone(),
                dim: d,
            }),
        }
    }

    /// A path usable as attaching data for `cell`: it must live strictly in
    /// the earlier skeleton, be well formed there, and run from `cell.src`
    /// to `cell.tgt`.
    fn validate_attached_path(
        &self,
        cell: &GlobularCell,
        path: &NaturalPath,
    ) -> Result<(), ComplexError> {
        for step in path.steps() {
            match self.cell_index.get(&step.cell) {
                None => {
                    return Err(ComplexError::SkeletalOrder {
                        cell: cell.id.clone(),
                        referenced: step.cell.clone(),
                    })
                }
                Some(_) => {}
            }
        }
        path.validate_in(self).map_err(|e| ComplexError::BadAttachment {
            cell: cell.id.clone(),
            detail: e.to_string(),
        })?;
        let src = self.cell(&path.steps()[0].cell).unwrap().src.clone();
        let tgt = self
            .cell(&path.steps().last().unwrap().cell)
            .unwrap()
            .tgt
            .clone();
        if src != cell.src || tgt != cell.tgt {
            return Err(ComplexError::EndpointMismatch {
                cell: cell.id.clone(),
                src: cell.src.clone(),
                tgt: cell.tgt.clone(),
                got: format!("({src} -> {tgt})"),
            });
        }
        Ok(())
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn cells(&self) -> &[GlobularCell] {
        &self.cells
    }

    pub fn cell(&self, id: &str) -> Option<&GlobularCell> {
        self.cell_index.get(id).map(|&i| &self.cells[i])
    }

    pub fn cell_position(&self, id: &str) -> Option<usize> {
        self.cell_index.get(id).copied()
    }

    pub fn has_state(&self, s: &str) -> bool {
        self.states.contains(&s.to_string())
    }

    /// The canonical interior representative of a cell's disk.
    pub fn canonical_interior(&self, id: &str) -> Option<DiskPoint> {
        self.cell(id).map(|c| DiskPoint::origin(c.disk_dim))
    }

    /// Resolves a boundary disk point of `cell` into the earlier skeleton:
    /// the unit-speed path it lands on plus the time law `[0,1] → [0, n]`
    /// of the induced execution path. Recursion strictly descends the
    /// skeletal order, so it terminates.
    pub fn boundary_exec_path(
        &self,
        cell_id: &str,
        point: &DiskPoint,
    ) -> Result<(NaturalPath, PlMap), ComplexError> {
        let cell = self
            .cell(cell_id)
            .ok_or_else(|| ComplexError::UnknownCell(cell_id.to_string()))?;
        if point.dim() != cell.disk_dim || !point.is_boundary() {
            return Err(ComplexError::BadDiskPoint {
                cell: cell_id.to_string(),
                point: point.to_string(),
                dim: cell.disk_dim,
            });
        }
        match &cell.attach {
            AttachingData::Endpoints => Err(ComplexError::NoBoundary {
                cell: cell_id.to_string(),
            }),
            AttachingData::TwoPaths { minus, plus } => {
                let path = if point.0[0].is_negative() { minus } else { plus };
                let n = rat_int(path.natural_length() as i64);
                Ok((path.clone(), PlMap::scale_from_unit(n)))
            }
            AttachingData::Family(Resolver::Constant(path)) => {
                let n = rat_int(path.natural_length() as i64);
                Ok((path.clone(), PlMap::scale_from_unit(n)))
            }
            AttachingData::Family(Resolver::PsiTwist { upper, lower }) => {
                let x = &point.0[0];
                let y = &point.0[1];
                let law = psi_law(x);
                if x.abs() < Rat::one() {
                    let hemi = if y.is_positive() { upper } else { lower };
                    let base = NaturalPath::single(hemi.clone(), DiskPoint(vec![x.clone()]));
                    Ok((base, law))
                } else {
                    // seam points (±1, 0): descend through the hemisphere
                    // boundary into the earlier skeleton
                    let (inner, rho) =
                        self.boundary_exec_path(upper, &DiskPoint(vec![x.clone()]))?;
                    let total = law.then(&rho).expect("unit law feeds unit-domain path");
                    Ok((inner, total))
                }
            }
        }
    }
}

/// The globe over a finite label set: two states `0`, `1` and one parallel
/// segment per label.
pub fn glob_of_set(labels: &[String], flavor: Flavor) -> Result<GlobularComplex, ComplexError> {
    chain_of_globes(&[labels.to_vec()], flavor)
}

/// A chain of globes over finite label sets: states `0..=p`, with the
/// segments of family `k` running from state `k-1` to state `k`.
pub fn chain_of_globes(
    families: &[Vec<String>],
    flavor: Flavor,
) -> Result<GlobularComplex, ComplexError> {
    if families.is_empty() || families.iter().any(|f| f.is_empty()) {
        return Err(ComplexError::EmptyInput);
    }
    let states: Vec<String> = (0..=families.len()).map(|i| i.to_string()).collect();
    let mut cells = Vec::new();
    for (k, family) in families.iter().enumerate() {
        for label in family {
            cells.push(GlobularCell {
                id: format!("g{}_{label}", k + 1),
                disk_dim: 0,
                src: k.to_string(),
                tgt: (k + 1).to_string(),
                attach: AttachingData::Endpoints,
            });
        }
    }
    GlobularComplex::new(flavor, states, cells)
}

/// The globe over the circle: two segment cells (`em`, `ep`) and two
/// hemisphere cells (`up`, `lo`) whose boundaries land on them.
pub fn circle_glob(flavor: Flavor) -> GlobularComplex {
    let states = vec!["0".to_string(), "1".to_string()];
    let seg = |id: &str| GlobularCell {
        id: id.to_string(),
        disk_dim: 0,
        src: "0".to_string(),
        tgt: "1".to_string(),
        attach: AttachingData::Endpoints,
    };
    let hemi = |id: &str| GlobularCell {
        id: id.to_string(),
        disk_dim: 1,
        src: "0".to_string(),
        tgt: "1".to_string(),
        attach: AttachingData::TwoPaths {
            minus: NaturalPath::single("em".to_string(), DiskPoint::origin(0)),
            plus: NaturalPath::single("ep".to_string(), DiskPoint::origin(0)),
        },
    };
    GlobularComplex::new(flavor, states, vec![seg("em"), seg("ep"), hemi("up"), hemi("lo")])
        .expect("circle globe is valid")
}

/// The circle globe with a twisted two-disk cell on top. Every achronal
/// slice of the top cell meets a state; only valid in flavor `M`.
pub fn psi_counterexample() -> GlobularComplex {
    circle_glob(Flavor::M)
        .attach_cell(GlobularCell {
            id: "twist".to_string(),
            disk_dim: 2,
            src: "0".to_string(),
            tgt: "1".to_string(),
            attach: AttachingData::Family(Resolver::PsiTwist {
                upper: "up".to_string(),
                lower: "lo".to_string(),
            }),
        })
        .expect("twisted disk attaches to the circle globe")
}

/// The untwisted control for the achronal-slice analysis: the same shape as
/// [`psi_counterexample`] but with a constant boundary family.
pub fn psi_control() -> GlobularComplex {
    circle_glob(Flavor::M)
        .attach_cell(GlobularCell {
            id: "twist".to_string(),
            disk_dim: 2,
            src: "0".to_string(),
            tgt: "1".to_string(),
            attach: AttachingData::Family(Resolver::Constant(NaturalPath::single(
                "up".to_string(),
                DiskPoint::origin(1),
            ))),
        })
        .expect("constant disk attaches to the circle globe")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn labels(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn glob_of_singleton_is_directed_segment() {
        let cx = glob_of_set(&labels(&["a"]), Flavor::M).unwrap();
        assert_eq!(cx.states(), &["0", "1"]);
        assert_eq!(cx.cells().len(), 1);
        assert_eq!(cx.cells()[0].disk_dim, 0);
    }

    #[test]
    fn glob_of_pair_has_two_parallel_segments() {
        let cx = glob_of_set(&labels(&["a", "b"]), Flavor::M).unwrap();
        assert_eq!(cx.cells().len(), 2);
        for c in cx.cells() {
            assert_eq!((c.src.as_str(), c.tgt.as_str()), ("0", "1"));
        }
    }

    #[test]
    fn glob_equals_chain_of_one() {
        let a = glob_of_set(&labels(&["a", "b"]), Flavor::M).unwrap();
        let b = chain_of_globes(&[labels(&["a", "b"])], Flavor::M).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn chain_counts_states_and_cells() {
        let cx = chain_of_globes(&[labels(&["a", "b"]), labels(&["c"])], Flavor::M).unwrap();
        assert_eq!(cx.states().len(), 3);
        assert_eq!(cx.cells().len(), 3);
        assert!(chain_of_globes(&[], Flavor::M).is_err());
        assert!(chain_of_globes(&[vec![]], Flavor::M).is_err());
    }

    #[test]
    fn circle_globe_shape() {
        let cx = circle_glob(Flavor::M);
        assert_eq!(cx.states().len(), 2);
        assert_eq!(cx.cells().len(), 4);
        let up = cx.cell("up").unwrap();
        let lo = cx.cell("lo").unwrap();
        assert_eq!(up.attach, lo.attach);
    }

    #[test]
    fn attach_rejects_endpoint_mismatch() {
        let cx = chain_of_globes(&[labels(&["a"]), labels(&["b"])], Flavor::M).unwrap();
        // boundary path runs 0 -> 2 but the cell claims 0 -> 1
        let path = NaturalPath::new(vec![
            crate::paths::PathStep { cell: "g1_a".into(), point: DiskPoint::origin(0) },
            crate::paths::PathStep { cell: "g2_b".into(), point: DiskPoint::origin(0) },
        ])
        .unwrap();
        let bad = GlobularCell {
            id: "d".into(),
            disk_dim: 1,
            src: "0".into(),
            tgt: "1".into(),
            attach: AttachingData::TwoPaths { minus: path.clone(), plus: path },
        };
        assert!(matches!(
            cx.attach_cell(bad),
            Err(ComplexError::EndpointMismatch { .. })
        ));
    }

    #[test]
    fn attach_rejects_unknown_and_variant_mismatch() {
        let cx = glob_of_set(&labels(&["a"]), Flavor::M).unwrap();
        let dangling = GlobularCell {
            id: "d".into(),
            disk_dim: 1,
            src: "0".into(),
            tgt: "1".into(),
            attach: AttachingData::TwoPaths {
                minus: NaturalPath::single("nope".into(), DiskPoint::origin(0)),
                plus: NaturalPath::single("nope".into(), DiskPoint::origin(0)),
            },
        };
        assert!(matches!(
            cx.attach_cell(dangling),
            Err(ComplexError::SkeletalOrder { .. })
        ));
        let mismatched = GlobularCell {
            id: "e".into(),
            disk_dim: 2,
            src: "0".into(),
            tgt: "1".into(),
            attach: AttachingData::Endpoints,
        };
        assert!(matches!(
            cx.attach_cell(mismatched),
            Err(ComplexError::VariantMismatch { .. })
        ));
    }

    #[test]
    fn attaching_preserves_earlier_cells() {
        let base = circle_glob(Flavor::M);
        let bigger = psi_counterexample();
        assert_eq!(&bigger.cells()[..4], base.cells());
        assert_eq!(bigger.cells().len(), 5);
    }

    #[test]
    fn twist_rejected_under_flavor_g() {
        let err = circle_glob(Flavor::G)
            .attach_cell(GlobularCell {
                id: "twist".into(),
                disk_dim: 2,
                src: "0".into(),
                tgt: "1".into(),
                attach: AttachingData::Family(Resolver::PsiTwist {
                    upper: "up".into(),
                    lower: "lo".into(),
                }),
            })
            .unwrap_err();
        assert!(matches!(err, ComplexError::FlavorViolation { .. }));
    }

    #[test]
    fn stair_law_breakpoints() {
        let law = psi_law(&Rat::zero());
        let expected = PlMap::new(
            rat_int(1),
            rat_int(1),
            vec![
                (rat(0, 1), rat(0, 1)),
                (rat(1, 2), rat(0, 1)),
                (rat(3, 4), rat(1, 1)),
                (rat(1, 1), rat(1, 1)),
            ],
        )
        .unwrap();
        assert_eq!(law, expected);
        assert!(!law.is_homeo());
        // degenerate end flats at the extremes of the parameter
        assert_eq!(psi_law(&rat_int(1)).points().len(), 3);
        assert_eq!(psi_law(&rat(-1, 1)).points().len(), 4);
    }

    #[test]
    fn twist_boundary_resolution() {
        let cx = psi_counterexample();
        let (base, law) = cx
            .boundary_exec_path("twist", &DiskPoint(vec![rat(0, 1), rat(1, 1)]))
            .unwrap();
        assert_eq!(base, NaturalPath::single("up".into(), DiskPoint(vec![rat(0, 1)])));
        assert_eq!(law, psi_law(&Rat::zero()));

        // the seam descends into the segment cells
        let (seam, seam_law) = cx
            .boundary_exec_path("twist", &DiskPoint(vec![rat(-1, 1), rat(0, 1)]))
            .unwrap();
        assert_eq!(seam, NaturalPath::single("em".into(), DiskPoint::origin(0)));
        assert_eq!(seam_law, psi_law(&rat(-1, 1)));

        let (plus_seam, _) = cx
            .boundary_exec_path("twist", &DiskPoint(vec![rat(1, 1), rat(0, 1)]))
            .unwrap();
        assert_eq!(plus_seam, NaturalPath::single("ep".into(), DiskPoint::origin(0)));
    }
}
