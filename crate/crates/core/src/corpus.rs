//! A fixed corpus of family instances drawn from small slope grids.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::farey::Slope;
use crate::splittings::{FamilyParams, SplittingSpec, SurgerySlope};

/// Product-end slopes.
pub const SLOPE_GRID: [(i64, i64); 8] = [
    (0, 1),
    (1, 0),
    (1, 1),
    (-1, 1),
    (1, 2),
    (2, 1),
    (-1, 2),
    (-2, 1),
];

/// Surgery slopes; `None` leaves the curve unsurgered.
pub const SURGERY_GRID: [Option<(i64, i64)>; 8] = [
    None,
    Some((1, 1)),
    Some((2, 1)),
    Some((-1, 1)),
    Some((1, 2)),
    Some((3, 1)),
    Some((-1, 2)),
    Some((3, 2)),
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    pub name: String,
    pub params: FamilyParams,
}

impl Instance {
    pub fn build(&self) -> Result<SplittingSpec> {
        self.params.build(&self.name)
    }
}

fn slope(i: usize) -> Slope {
    let (p, q) = SLOPE_GRID[i % SLOPE_GRID.len()];
    Slope::new(p, q).expect("grid slopes are valid")
}

fn surgery(i: usize) -> SurgerySlope {
    match SURGERY_GRID[i % SURGERY_GRID.len()] {
        None => SurgerySlope::NONE,
        Some((p, q)) => SurgerySlope::of(Slope::new(p, q).expect("grid slopes are valid")),
    }
}

/// Eight instances of each family. Product slopes on the two ends of a side
/// are always distinct.
pub fn corpus() -> Vec<Instance> {
    let mut out = Vec::new();
    for i in 0..8 {
        out.push(Instance {
            name: format!("mh-{i}"),
            params: FamilyParams::Mh {
                l1: surgery(i),
                l2: surgery(i + 1),
                ra: surgery(i + 3),
                rb: surgery(2 * i + 5),
            },
        });
    }
    let mxi = [
        (0, 1, 0, 1),
        (0, 2, 1, 4),
        (2, 4, 3, 0),
        (4, 5, 2, 3),
        (1, 3, 5, 6),
        (6, 7, 0, 2),
        (3, 0, 7, 1),
        (5, 6, 4, 7),
    ];
    for (i, (a0, a1, b0, b1)) in mxi.into_iter().enumerate() {
        out.push(Instance {
            name: format!("mxi-{i}"),
            params: FamilyParams::Mxi {
                a0: slope(a0),
                a1: slope(a1),
                b0: slope(b0),
                b1: slope(b1),
                s0: surgery(i + 1),
                s1: surgery(i + 2),
            },
        });
    }
    let hybrid = [
        (0, 1),
        (1, 0),
        (2, 3),
        (4, 5),
        (5, 4),
        (6, 2),
        (3, 7),
        (7, 6),
    ];
    for (i, (b0, b1)) in hybrid.into_iter().enumerate() {
        out.push(Instance {
            name: format!("hybrid-{i}"),
            params: FamilyParams::Hybrid {
                r3: surgery(i + 2),
                l1: surgery(i),
                l2: surgery(i + 4),
                b0: slope(b0),
                b1: slope(b1),
            },
        });
    }
    out
}
