//! Small permutation groups shared by unit tests.

use alloc::vec::Vec;

use crate::group::{FiniteGroup, GroupSpec, Limits};
use crate::perm::Perm;

/// Builds a group from 1-based cycle words.
pub fn pg(name: &str, degree: usize, gens: &[&[&[u32]]]) -> FiniteGroup {
    let gens = gens
        .iter()
        .map(|cycles| {
            let cycles: Vec<Vec<u32>> = cycles
                .iter()
                .map(|c| c.iter().map(|x| x - 1).collect())
                .collect();
            Perm::from_cycles(degree, &cycles).unwrap()
        })
        .collect();
    FiniteGroup::build(
        name,
        GroupSpec::Permutations {
            degree,
            generators: gens,
        },
        Limits::default(),
    )
    .unwrap()
}

pub fn s3() -> FiniteGroup {
    pg("S3", 3, &[&[&[1, 2]], &[&[1, 2, 3]]])
}

pub fn s4() -> FiniteGroup {
    pg("S4", 4, &[&[&[1, 2]], &[&[1, 2, 3, 4]]])
}

pub fn a4() -> FiniteGroup {
    pg("A4", 4, &[&[&[1, 2, 3]], &[&[1, 2], &[3, 4]]])
}

pub fn d8() -> FiniteGroup {
    pg("D8", 4, &[&[&[1, 2]], &[&[1, 3, 2, 4]]])
}

pub fn q8() -> FiniteGroup {
    pg(
        "Q8",
        8,
        &[
            &[&[1, 2, 4, 7], &[3, 6, 8, 5]],
            &[&[1, 3, 4, 8], &[2, 5, 7, 6]],
        ],
    )
}

/// `SL(2,3)` on the eight nonzero vectors of `F_3^2`, numbered
/// `(1,0)=1 (2,0)=2 (0,1)=3 (0,2)=4 (1,1)=5 (2,2)=6 (1,2)=7 (2,1)=8`.
pub fn sl23() -> FiniteGroup {
    // [[1,1],[0,1]] : (x,y) -> (x+y, y); [[1,0],[1,1]] : (x,y) -> (x, x+y)
    pg(
        "SL(2,3)",
        8,
        &[&[&[3, 5, 8], &[4, 6, 7]], &[&[1, 5, 7], &[2, 6, 8]]],
    )
}
