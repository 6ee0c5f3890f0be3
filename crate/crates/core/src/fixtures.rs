//! Golden data: the two twin Topcode-matrices B1 and B10 and the leaf
//! degree sequences of the caterpillars A1, A2, B1 and B2.

use num_bigint::BigUint;

use crate::coloring::ColoredGraph;
use crate::error::Result;
use crate::graph::LeafDegreeSequence;
use crate::topcode::{realize_merged, TopcodeMatrix};
use crate::validators::ColoringClass;
use crate::vault::AuthBundle;

const ODD_E: [i64; 10] = [1, 3, 5, 7, 9, 11, 13, 15, 17, 19];

pub fn b1_matrix() -> TopcodeMatrix {
    TopcodeMatrix::new(
        vec![6, 6, 6, 11, 2, 4, 15, 0, 2, 0],
        ODD_E.to_vec(),
        vec![7, 9, 11, 4, 11, 15, 2, 15, 19, 19],
    )
    .expect("valid fixture")
}

pub fn b10_matrix() -> TopcodeMatrix {
    TopcodeMatrix::new(
        vec![8, 7, 13, 12, 8, 3, 16, 1, 1, 1],
        ODD_E.to_vec(),
        vec![7, 10, 8, 5, 17, 14, 3, 16, 18, 20],
    )
    .expect("valid fixture")
}

/// Vertex colors of B1 as listed with the matrix.
pub const B1_VERTEX_COLORS: [i64; 9] = [0, 2, 4, 6, 7, 9, 11, 15, 19];

pub fn a1_sequence() -> LeafDegreeSequence {
    LeafDegreeSequence::new(vec![7, 3, 0, 3, 0, 6])
}

pub fn b1_sequence() -> LeafDegreeSequence {
    LeafDegreeSequence::new(vec![1, 5, 8, 5, 8, 2])
}

pub fn a2_sequence() -> LeafDegreeSequence {
    LeafDegreeSequence::new(vec![7, -3, 0, -3, 0, 6])
}

pub fn b2_sequence() -> LeafDegreeSequence {
    LeafDegreeSequence::new(vec![-2, 8, 5, 8, 5, -1])
}

/// B1 as public side, B10 as private side, odd-graceful class, rule 0.
pub fn auth_bundle() -> Result<AuthBundle> {
    let (g1, c1) = realize_merged(&b1_matrix())?;
    let (g10, c10) = realize_merged(&b10_matrix())?;
    Ok(AuthBundle {
        public: ColoredGraph::new(g1, c1),
        private: ColoredGraph::new(g10, c10),
        rule: BigUint::from(0u32),
        class: ColoringClass::OddGraceful,
    })
}
