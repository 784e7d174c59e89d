//! Published reference values: chain dimensions, kernel dimensions and
//! Betti numbers for the symplectic 2- and 4-torus, by degree `m = 1, 2, ...`.

pub struct ReferenceTable {
    pub n: usize,
    pub w: i64,
    pub dim: &'static [usize],
    pub ker: &'static [usize],
    pub betti: &'static [usize],
}

pub const T2: [ReferenceTable; 5] = [
    ReferenceTable { n: 2, w: 2, dim: &[8, 6], ker: &[8, 2], betti: &[4, 2] },
    ReferenceTable { n: 2, w: 3, dim: &[12, 32, 4], ker: &[12, 24, 0], betti: &[4, 20, 0] },
    ReferenceTable { n: 2, w: 4, dim: &[16, 76, 48, 1], ker: &[16, 64, 10, 0], betti: &[4, 26, 9, 0] },
    ReferenceTable { n: 2, w: 5, dim: &[20, 160, 184, 32], ker: &[20, 144, 76, 0], betti: &[4, 36, 44, 0] },
    ReferenceTable {
        n: 2,
        w: 6,
        dim: &[24, 274, 536, 216, 8],
        ker: &[24, 254, 324, 16, 0],
        betti: &[4, 42, 124, 8, 0],
    },
];

pub const T4: [ReferenceTable; 5] = [
    ReferenceTable { n: 4, w: 2, dim: &[32, 28], ker: &[32, 20], betti: &[24, 20] },
    ReferenceTable { n: 4, w: 3, dim: &[88, 256, 56], ker: &[88, 208, 16], betti: &[40, 168, 16] },
    ReferenceTable {
        n: 4,
        w: 4,
        dim: &[192, 1200, 896, 70],
        ker: &[192, 1064, 436, 4],
        betti: &[56, 604, 330, 4],
    },
    ReferenceTable {
        n: 4,
        w: 5,
        dim: &[360, 4352, 6432, 1792, 56],
        ker: &[360, 4064, 3816, 304, 0],
        betti: &[72, 1448, 2328, 248, 0],
    },
    ReferenceTable {
        n: 4,
        w: 6,
        dim: &[608, 12852, 32864, 18816, 2240, 28],
        ker: &[608, 12332, 23304, 5488, 80, 0],
        betti: &[88, 2772, 9976, 3328, 52, 0],
    },
];

/// First Betti numbers on the 6-torus as `(w, value)`.
pub const T6_FIRST_BETTI: [(i64, usize); 5] = [(2, 60), (3, 172), (4, 348), (5, 588), (6, 892)];

pub fn reference(n: usize, w: i64) -> Option<&'static ReferenceTable> {
    let list: &[ReferenceTable] = match n {
        2 => &T2,
        4 => &T4,
        _ => return None,
    };
    list.iter().find(|t| t.w == w)
}
