//! The built-in reference instance (alpha = 3, m = 3) with its known-good
//! outputs, frozen as exact coefficient lists. The CLI's reproduce-example
//! command and the acceptance suite diff freshly computed values against
//! these; they are fixtures, never recomputed.

use crate::matrix::RationalMatrix;
use crate::poly::Poly;
use crate::sobolev::SobolevSpec;

pub const REFERENCE_ALPHA: i64 = 3;
pub const REFERENCE_M: usize = 3;

pub fn reference_spec() -> SobolevSpec {
    let mass = RationalMatrix::from_i64_rows(&[&[1, 1, 0], &[1, 1, 0], &[0, 0, 1]]);
    SobolevSpec::new(REFERENCE_ALPHA, REFERENCE_M, mass).expect("reference spec is valid")
}

/// Known-good outputs for the reference instance with S = 1.
pub struct ReferenceData {
    pub r: [Poly; 3],
    pub omega: Poly,
    pub ps: Poly,
    pub mh: [Poly; 3],
    pub order: usize,
    pub awr: i64,
    pub nj: [i64; 3],
    pub mj: [i64; 2],
}

pub fn reference_data() -> ReferenceData {
    ReferenceData {
        r: [
            // -(x+1)(x+2)(x^2-x-24)/24
            Poly::from_pairs(&[(2, 1), (37, 12), (25, 24), (-1, 12), (-1, 24)]),
            // -(x+1)(x^3+x^2-14x-48)/24
            Poly::from_pairs(&[(2, 1), (31, 12), (13, 24), (-1, 12), (-1, 24)]),
            // (x+4)(x^4+x^3+x^2-9x+30)/60
            Poly::from_pairs(&[(2, 1), (-1, 10), (-1, 12), (1, 12), (1, 12), (1, 60)]),
        ],
        omega: Poly::from_pairs(&[
            (-2, 1),
            (-22, 5),
            (1333, 360),
            (-71, 40),
            (613, 1440),
            (3, 20),
            (-91, 720),
            (1, 40),
            (-1, 480),
        ]),
        ps: Poly::from_pairs(&[
            (0, 1),
            (-18, 5),
            (-289, 360),
            (55, 108),
            (-253, 1440),
            (47, 480),
            (-17, 720),
            (-1, 144),
            (1, 480),
            (-1, 4320),
        ]),
        mh: [
            Poly::from_pairs(&[
                (12, 1),
                (152, 5),
                (1553, 60),
                (87, 8),
                (29, 24),
                (-11, 40),
                (-11, 120),
            ]),
            Poly::from_pairs(&[
                (-14, 1),
                (-369, 10),
                (-512, 15),
                (-131, 8),
                (-71, 24),
                (11, 40),
                (11, 120),
            ]),
            Poly::from_pairs(&[(-7, 1), (-3, 1), (-3, 1), (-2, 1)]),
        ],
        order: 18,
        awr: 8,
        nj: [5, 4, 0],
        mj: [2, 0],
    }
}
