//! Canonical complexes and families used by tests, suites and the CLI.

use num_traits::{One, Zero};

use crate::complex::{
    chain_of_globes, AttachingData, DiskPoint, Flavor, GlobularCell, GlobularComplex,
};
use crate::paths::{NaturalPath, PathStep};
use crate::rat::{rat, rat_int, Rat};
use crate::spaces::{Affine, FamilyPiece, PathFamily, UInterval};

pub use crate::complex::{circle_glob, psi_control, psi_counterexample};

fn labels(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

/// The directed segment: one cell `g1_seg` from `0` to `1`.
pub fn directed_interval(flavor: Flavor) -> GlobularComplex {
    chain_of_globes(&[labels(&["seg"])], flavor).expect("valid chain")
}

/// Two directed segments glued end to end: states `0, 1, 2`, cells `g1_a`
/// and `g2_b`.
pub fn two_segment_chain(flavor: Flavor) -> GlobularComplex {
    chain_of_globes(&[labels(&["a"]), labels(&["b"])], flavor).expect("valid chain")
}

/// Two parallel segments between the same pair of states.
pub fn parallel_pair(flavor: Flavor) -> GlobularComplex {
    chain_of_globes(&[labels(&["a", "b"])], flavor).expect("valid chain")
}

/// The unique length-two natural path through [`two_segment_chain`].
pub fn two_segment_path() -> NaturalPath {
    NaturalPath::new(vec![
        PathStep {
            cell: "g1_a".to_string(),
            point: DiskPoint::origin(0),
        },
        PathStep {
            cell: "g2_b".to_string(),
            point: DiskPoint::origin(0),
        },
    ])
    .expect("two steps")
}

/// A one-disk cell glued over the two-segment chain: its boundary runs along
/// the length-two path on both sides, so natural length drops from 2 on the
/// boundary to 1 across the interior.
pub fn disk_over_two_segments(flavor: Flavor) -> GlobularComplex {
    let chain = two_segment_chain(flavor);
    let bp = two_segment_path();
    chain
        .attach_cell(GlobularCell {
            id: "d".to_string(),
            disk_dim: 1,
            src: "0".to_string(),
            tgt: "2".to_string(),
            attach: AttachingData::TwoPaths {
                minus: bp.clone(),
                plus: bp,
            },
        })
        .expect("disk attaches over the chain")
}

/// The boundary-to-interior sweep through [`disk_over_two_segments`]:
/// the length-two boundary path at the endpoints, the disk crossing at
/// `z = 2u - 1` strictly inside.
pub fn boundary_to_interior_family() -> PathFamily {
    let chain_steps = vec![
        ("g1_a".to_string(), vec![]),
        ("g2_b".to_string(), vec![]),
    ];
    let boundary = |at: i64| FamilyPiece {
        interval: UInterval::point(rat_int(at)),
        steps: chain_steps.clone(),
        law: FamilyPiece::linear_law(2),
    };
    let interior = FamilyPiece {
        interval: UInterval::open(rat_int(0), rat_int(1)),
        steps: vec![(
            "d".to_string(),
            vec![Affine::new(rat(-1, 1), rat(2, 1))],
        )],
        law: FamilyPiece::linear_law(1),
    };
    PathFamily::new(vec![boundary(0), interior, boundary(1)]).expect("valid family")
}

/// A family that never leaves one carrier.
pub fn constant_family() -> PathFamily {
    PathFamily::new(vec![FamilyPiece {
        interval: UInterval {
            lo: Rat::zero(),
            hi: Rat::one(),
            lo_closed: true,
            hi_closed: true,
        },
        steps: vec![
            ("g1_a".to_string(), vec![]),
            ("g2_b".to_string(), vec![]),
        ],
        law: FamilyPiece::linear_law(2),
    }])
    .expect("valid family")
}

/// Attachment instances for the pushout checker: a base complex, the new
/// cell, and the endpoints to compare traces between.
pub fn pushout_instances() -> Vec<(String, GlobularComplex, GlobularCell, String, String)> {
    let mut out = Vec::new();

    // one-disk cell over the two-segment chain
    let chain = two_segment_chain(Flavor::M);
    let bp = two_segment_path();
    out.push((
        "disk-over-chain".to_string(),
        chain,
        GlobularCell {
            id: "d".to_string(),
            disk_dim: 1,
            src: "0".to_string(),
            tgt: "2".to_string(),
            attach: AttachingData::TwoPaths {
                minus: bp.clone(),
                plus: bp.clone(),
            },
        },
        "0".to_string(),
        "2".to_string(),
    ));

    // one-disk cell along a single segment of a parallel pair
    let pair = parallel_pair(Flavor::M);
    let seg_a = NaturalPath::single("g1_a".to_string(), DiskPoint::origin(0));
    out.push((
        "disk-along-one-segment".to_string(),
        pair.clone(),
        GlobularCell {
            id: "d".to_string(),
            disk_dim: 1,
            src: "0".to_string(),
            tgt: "1".to_string(),
            attach: AttachingData::TwoPaths {
                minus: seg_a.clone(),
                plus: seg_a.clone(),
            },
        },
        "0".to_string(),
        "1".to_string(),
    ));

    // one-disk cell between the two segments of a parallel pair
    let seg_b = NaturalPath::single("g1_b".to_string(), DiskPoint::origin(0));
    out.push((
        "disk-between-segments".to_string(),
        pair,
        GlobularCell {
            id: "d".to_string(),
            disk_dim: 1,
            src: "0".to_string(),
            tgt: "1".to_string(),
            attach: AttachingData::TwoPaths {
                minus: seg_a,
                plus: seg_b,
            },
        },
        "0".to_string(),
        "1".to_string(),
    ));

    // one-disk cell with distinct boundary paths through a longer chain
    let wide = chain_of_globes(&[labels(&["a", "b"]), labels(&["c"])], Flavor::M).unwrap();
    let through = |first: &str| {
        NaturalPath::new(vec![
            PathStep {
                cell: first.to_string(),
                point: DiskPoint::origin(0),
            },
            PathStep {
                cell: "g2_c".to_string(),
                point: DiskPoint::origin(0),
            },
        ])
        .unwrap()
    };
    out.push((
        "disk-over-wide-chain".to_string(),
        wide,
        GlobularCell {
            id: "d".to_string(),
            disk_dim: 1,
            src: "0".to_string(),
            tgt: "2".to_string(),
            attach: AttachingData::TwoPaths {
                minus: through("g1_a"),
                plus: through("g1_b"),
            },
        },
        "0".to_string(),
        "2".to_string(),
    ));

    // constant two-disk cell over the circle globe
    let circle = circle_glob(Flavor::M);
    out.push((
        "constant-disk-over-circle".to_string(),
        circle.clone(),
        GlobularCell {
            id: "cap".to_string(),
            disk_dim: 2,
            src: "0".to_string(),
            tgt: "1".to_string(),
            attach: AttachingData::Family(crate::complex::Resolver::Constant(
                NaturalPath::single("up".to_string(), DiskPoint::origin(1)),
            )),
        },
        "0".to_string(),
        "1".to_string(),
    ));

    // the twisted two-disk cell over the circle globe
    out.push((
        "twisted-disk-over-circle".to_string(),
        circle,
        GlobularCell {
            id: "twist".to_string(),
            disk_dim: 2,
            src: "0".to_string(),
            tgt: "1".to_string(),
            attach: AttachingData::Family(crate::complex::Resolver::PsiTwist {
                upper: "up".to_string(),
                lower: "lo".to_string(),
            }),
        },
        "0".to_string(),
        "1".to_string(),
    ));

    out
}
