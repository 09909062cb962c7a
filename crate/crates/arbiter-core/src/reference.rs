//! Published reference values, transcribed verbatim (typos included).
//!
//! Nothing here feeds the dynamics; these tables exist to be diffed against
//! derived values by the verification layer.

use crate::lattice::Lin;

/// Activation condition of each arbitrage as printed, written as an integer
/// row `w` meaning `w · l > 0`.
pub const TABLE1_ACTIVATION: [[i8; 6]; 24] = [
    [-1, -1, 0, 1, 0, 0],  // 1: r€£ > r$€·r$£
    [-1, 0, 1, 0, -1, 0],  // 2
    [1, -1, 0, 1, 0, 0],   // 3
    [0, -1, 1, 0, 0, -1],  // 4
    [1, 0, -1, 0, 1, 0],   // 5
    [0, 1, -1, 0, 0, 1],   // 6
    [1, -1, 0, 1, 0, 0],   // 7
    [1, 0, -1, 0, 1, 0],   // 8
    [-1, 1, 0, -1, 0, 0],  // 9
    [0, 0, 0, -1, 1, -1],  // 10
    [-1, 0, 1, 0, -1, 0],  // 11
    [0, 0, 0, 1, -1, 1],   // 12
    [-1, 1, 0, -1, 0, 0],  // 13
    [0, 1, -1, 0, 0, 1],   // 14
    [1, -1, 0, 1, 0, 0],   // 15
    [0, 0, 0, 1, -1, 1],   // 16
    [0, -1, 1, 0, 0, -1],  // 17
    [0, 0, 0, -1, 1, -1],  // 18
    [-1, 0, 1, 0, -1, 0],  // 19
    [0, -1, 1, 0, 0, -1],  // 20
    [1, 0, -1, 0, 1, 0],   // 21
    [0, 0, 0, -1, 1, -1],  // 22
    [0, 1, -1, 0, 0, 1],   // 23
    [0, 0, 0, 1, -1, 1],   // 24
];

/// Member arbitrages of each strong arbitrage.
pub const TABLE2_MEMBERS: [[usize; 2]; 12] = [
    [1, 7], [2, 8], [3, 13], [4, 14], [5, 19], [6, 20],
    [9, 15], [10, 16], [11, 21], [12, 22], [17, 23], [18, 24],
];

pub const B_PRINTED: [[[i64; 6]; 6]; 12] = [
    [[0, 0, 0, 0, 0, 0], [-1, 1, 0, 0, 0, 0], [0, 0, 1, 0, 0, 0], [1, 0, 0, 1, 0, 0], [0, 0, 0, 0, 1, 0], [0, 0, 0, 0, 0, 1]],
    [[0, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0], [0, 0, 1, 0, 0, 0], [0, 0, 0, 1, 0, 0], [-1, 0, 0, 0, 1, 0], [1, 0, 0, 0, 0, 1]],
    [[1, 0, 0, 1, 0, 0], [0, 1, 0, 1, 0, 0], [0, 0, 1, 0, 0, 0], [0, 0, 0, 0, 0, 0], [0, 0, 0, 0, 1, 0], [0, 0, 0, 0, 0, 1]],
    [[1, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0], [0, 0, 1, -1, 0, 0], [0, 0, 0, 0, 0, 0], [0, 0, 0, 0, 1, 0], [0, 0, 0, 1, 0, 1]],
    [[1, 0, 0, 0, 0, 1], [0, 1, 0, 0, 0, 0], [0, 0, 1, 0, 0, 0], [0, 0, 0, 1, 0, 0], [0, 0, 0, 0, 1, 1], [0, 0, 0, 0, 0, 0]],
    [[1, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0], [0, 0, 1, 0, 0, 1], [0, 0, 0, 1, 0, 1], [0, 0, 0, 0, 1, 0], [0, 0, 0, 0, 0, 0]],
    [[1, -1, 0, 0, 0, 0], [0, 0, 0, 0, 0, 0], [0, 0, 1, 0, 0, 0], [0, 1, 0, 1, 0, 0], [0, 0, 0, 0, 1, 0], [0, 0, 0, 0, 0, 1]],
    [[1, 0, 0, 0, 0, 0], [0, 0, 0, 0, 0, 0], [0, -1, 1, 0, 0, 0], [0, 0, 0, 1, 0, 0], [0, 1, 0, 0, 1, 0], [0, 0, 0, 0, 0, 1]],
    [[1, 0, 0, 0, -1, 0], [0, 1, 0, 0, 0, 0], [0, 0, 1, 0, 0, 0], [0, 0, 0, 1, 0, 0], [0, 0, 0, 0, 0, 0], [0, 0, 0, 0, 1, 1]],
    [[1, 0, 0, 0, 0, 0], [0, 1, 0, 0, 1, 0], [0, 0, 1, 0, 1, 0], [0, 0, 0, 1, 0, 0], [0, 0, 0, 0, 0, 0], [0, 0, 0, 0, 0, 1]],
    [[1, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0], [0, 0, 0, 0, 0, 0], [0, 0, -1, 1, 0, 0], [0, 0, 0, 0, 1, 0], [0, 0, 1, 0, 0, 1]],
    [[1, 0, 0, 0, 0, 0], [0, 1, -1, 0, 0, 0], [0, 0, 0, 0, 0, 0], [0, 0, 0, 1, 0, 0], [0, 0, 1, 0, 1, 0], [0, 0, 0, 0, 0, 1]],
];

pub const Q_PRINTED: [[i64; 6]; 6] = [
    [1, 0, 0, 0, 0, 0],
    [0, 1, 0, 1, 0, 0],
    [0, 0, 1, 0, 0, 0],
    [1, -1, 0, 1, 0, 0],
    [1, 0, -1, 0, 1, 0],
    [0, 1, -1, 0, 0, 1],
];

pub const QINV_PRINTED: [[i64; 6]; 6] = [
    [1, 0, 0, -1, -1, 0],
    [0, 1, 0, 1, 0, -1],
    [0, 0, 1, 0, 1, 1],
    [0, 0, 0, 1, 0, 0],
    [0, 0, 0, 0, 1, 0],
    [0, 0, 0, 0, 0, 1],
];

pub const G_PRINTED: [[[i64; 3]; 3]; 12] = [
    [[0, -1, 0], [0, 1, 0], [0, 0, 1]],
    [[1, 0, 0], [-1, 0, 0], [0, 0, 1]],
    [[0, 0, 1], [0, 1, 0], [0, 0, 1]],
    [[1, 0, 0], [0, 1, 0], [1, 0, 0]],
    [[1, 0, 0], [0, 0, -1], [0, 0, 1]],
    [[1, 0, 0], [0, 1, 0], [0, -1, 0]],
    [[0, 0, 0], [0, 1, 0], [0, 0, 1]],
    [[0, 0, 0], [1, 1, 0], [-1, 0, 1]],
    [[1, 0, 0], [0, 0, 0], [0, 0, 1]],
    [[1, 1, 0], [0, 0, 0], [0, 1, 1]],
    [[1, 0, 0], [0, 1, 0], [0, 0, 0]],
    [[1, 0, -1], [0, 1, 1], [0, 0, 0]],
];

const Z3: [[i64; 3]; 3] = [[0; 3]; 3];

pub const H_PRINTED: [[[i64; 3]; 3]; 12] = [
    [[-1, 0, 0], [0, 0, 0], [0, 0, 0]],
    [[0, 0, 0], [-1, 0, 0], [0, 0, 0]],
    [[0, 1, 0], [0, 0, 0], [0, 0, 0]],
    [[0, 0, 0], [0, 0, 0], [0, -1, 0]],
    [[0, 0, 0], [0, 0, 1], [0, 0, 0]],
    [[0, 0, 0], [0, 0, 0], [0, 0, 1]],
    Z3, Z3, Z3, Z3, Z3, Z3,
];

/// Lexicographically smallest members of the rank-one components, in order.
pub const RANK1_REPRESENTATIVES: [[[i64; 3]; 3]; 7] = [
    [[-1, -1, 0], [0, 0, 0], [0, 0, 0]],
    [[0, 0, 0], [-1, -1, 0], [0, 0, 0]],
    [[0, 0, 0], [0, 0, 0], [-1, -1, 0]],
    [[-1, -1, 0], [1, 1, 0], [0, 0, 0]],
    [[-1, -1, 0], [0, 0, 0], [-1, -1, 0]],
    [[0, 0, 0], [-1, -1, 0], [1, 1, 0]],
    [[-1, -1, 0], [1, 1, 0], [-1, -1, 0]],
];

/// Direct successors of the rank-two components U₁..U₆.
pub const COMPONENT_SUCCESSORS: [[usize; 3]; 6] = [
    [9, 10, 13],
    [8, 11, 13],
    [7, 12, 13],
    [8, 9, 12],
    [7, 9, 11],
    [7, 8, 10],
];

/// The twelve one-generator discrepancy triples D₁..D₁₂ (multiples of a).
pub const DISC12: [[i64; 3]; 12] = [
    [0, 0, 1], [-1, 0, 1], [-1, 0, 0], [-1, -1, 0], [0, -1, 0], [0, -1, -1],
    [0, 0, -1], [1, 0, -1], [1, 0, 0], [1, 1, 0], [0, 1, 0], [0, 1, 1],
];

const fn l(a: i64, b: i64) -> Lin {
    Lin::new(a, b)
}

/// The 24 two-generator discrepancy triples D₁(a,b)..D₂₄(a,b).
pub const DISC24: [[Lin; 3]; 24] = [
    [l(1, 0), l(0, 1), l(-1, 1)],
    [l(-1, 1), l(0, 1), l(1, 0)],
    [l(1, 0), l(1, -1), l(0, -1)],
    [l(-1, 1), l(-1, 0), l(0, -1)],
    [l(0, -1), l(1, -1), l(1, 0)],
    [l(0, -1), l(-1, 0), l(-1, 1)],
    [l(0, 0), l(0, 1), l(-1, 1)],
    [l(1, 0), l(0, 0), l(-1, 1)],
    [l(1, 0), l(0, 1), l(0, 0)],
    [l(0, 0), l(0, 1), l(1, 0)],
    [l(-1, 1), l(0, 0), l(1, 0)],
    [l(-1, 1), l(0, 1), l(0, 0)],
    [l(0, 0), l(-1, 0), l(0, -1)],
    [l(-1, 1), l(0, 0), l(0, -1)],
    [l(-1, 1), l(-1, 0), l(0, 0)],
    [l(0, 0), l(1, -1), l(0, -1)],
    [l(1, 0), l(0, 0), l(0, -1)],
    [l(1, 0), l(1, -1), l(0, 0)],
    [l(0, 0), l(1, -1), l(1, 0)],
    [l(0, -1), l(0, 0), l(1, 0)],
    [l(0, -1), l(1, -1), l(0, 0)],
    [l(0, 0), l(-1, 0), l(-1, 1)],
    [l(0, -1), l(0, 0), l(-1, 1)],
    [l(0, -1), l(-1, 0), l(0, 0)],
];

/// Transition table: row = strong arbitrage, column = Dⱼ, entry = target
/// index (0 for the zero triple).
pub const TABLE3: [[usize; 12]; 12] = [
    [1, 12, 11, 0, 5, 6, 7, 6, 5, 0, 11, 12],
    [1, 2, 3, 0, 9, 8, 7, 8, 9, 0, 3, 2],
    [1, 0, 7, 6, 5, 6, 7, 0, 1, 12, 11, 12],
    [1, 0, 3, 4, 5, 4, 3, 0, 9, 10, 11, 10],
    [1, 2, 3, 2, 1, 0, 7, 8, 9, 8, 7, 0],
    [5, 4, 3, 4, 5, 0, 11, 10, 9, 10, 11, 0],
    [1, 1, 0, 5, 5, 6, 7, 7, 0, 11, 11, 12],
    [2, 2, 0, 4, 4, 6, 8, 8, 0, 10, 10, 12],
    [1, 2, 3, 3, 0, 7, 7, 8, 9, 9, 0, 1],
    [12, 2, 3, 3, 0, 6, 6, 8, 9, 10, 0, 12],
    [0, 3, 3, 4, 5, 5, 0, 9, 9, 10, 11, 10],
    [0, 2, 2, 4, 6, 6, 0, 8, 8, 10, 12, 12],
];

pub const INCIDENCE_12: [[u8; 12]; 12] = [
    [1, 1, 0, 0, 1, 0, 0, 0, 1, 0, 0, 1],
    [1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 1],
    [0, 1, 1, 1, 0, 0, 1, 0, 0, 0, 1, 0],
    [0, 1, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0],
    [1, 0, 0, 1, 1, 1, 0, 0, 1, 0, 0, 0],
    [0, 0, 0, 1, 1, 1, 1, 1, 0, 0, 0, 0],
    [0, 0, 1, 0, 0, 1, 1, 1, 0, 0, 1, 0],
    [0, 0, 0, 0, 0, 1, 1, 1, 1, 1, 0, 0],
    [1, 0, 0, 0, 1, 0, 0, 1, 1, 1, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 1],
    [0, 0, 1, 0, 0, 0, 1, 0, 0, 1, 1, 1],
    [1, 1, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1],
];

pub const INCIDENCE_KNOTS: [[u8; 6]; 6] = [
    [0, 1, 0, 1, 0, 1],
    [1, 0, 1, 0, 1, 0],
    [0, 0, 0, 1, 0, 1],
    [1, 0, 1, 0, 1, 0],
    [0, 1, 0, 1, 0, 1],
    [0, 1, 0, 0, 0, 0],
];

/// The 24-periodic chain as printed.
pub const STAR_CHAIN_PRINTED: [usize; 24] = [
    15, 10, 3, 21, 11, 8, 24, 17, 6, 9, 16, 13, 12, 22, 14, 18, 23, 15, 5, 7, 4, 19, 1, 5,
];

/// Discrepancy route of the 24-periodic chain (indices into [`DISC12`]).
pub const STAR_ROUTE: [usize; 25] = [
    10, 11, 10, 12, 1, 12, 2, 3, 2, 4, 5, 4, 6, 7, 6, 8, 9, 8, 10, 8, 6, 4, 2, 12, 10,
];

/// Building blocks of the one-generator algorithm: `[plus, minus]` per coordinate.
pub const BASIC_BLOCKS: [[[usize; 3]; 2]; 3] = [
    [[21, 16, 1], [8, 9, 11]],
    [[3, 17, 10], [15, 18, 14]],
    [[5, 18, 12], [21, 23, 20]],
];

/// Auxiliary blocks for start 2 (index 34 is printed as is).
pub const AUX_BLOCKS: [[[usize; 3]; 2]; 3] = [
    [[1, 21, 16], [9, 11, 8]],
    [[13, 23, 16], [9, 34, 4]],
    [[24, 12, 19], [6, 11, 17]],
];

/// Second family of auxiliary blocks, used for start 3.
pub const AUX2_BLOCKS: [[[usize; 3]; 2]; 3] = [
    [[18, 12, 5], [20, 21, 23]],
    [[23, 16, 13], [4, 9, 24]],
    [[18, 12, 5], [20, 21, 23]],
];

/// Commuters C₁..C₆ as printed.
pub const COMMUTERS_PRINTED: [[Lin; 3]; 6] = [
    [l(1, 0), l(0, 1), l(-1, 1)],
    [l(-1, 1), l(0, 1), l(1, 0)],
    [l(1, 0), l(1, -1), l(0, -1)],
    [l(-1, 1), l(-1, 0), l(0, -1)],
    [l(0, -1), l(1, -1), l(1, 0)],
    [l(0, -1), l(-1, 0), l(-1, 1)],
];

/// Terminals T¹ᵢ, T²ᵢ, T³ᵢ per knot as printed.
pub const TERMINALS_PRINTED: [[[Lin; 3]; 3]; 6] = [
    [[l(0, 0), l(0, 1), l(-1, 1)], [l(1, 0), l(0, 0), l(-1, 1)], [l(1, 0), l(0, 1), l(0, 0)]],
    [[l(0, 0), l(0, 1), l(1, 0)], [l(-1, 1), l(0, 0), l(1, 0)], [l(-1, 1), l(0, 1), l(0, 0)]],
    [[l(0, 0), l(-1, 0), l(0, -1)], [l(-1, 1), l(0, 0), l(0, -1)], [l(-1, 1), l(-1, 0), l(0, 0)]],
    [[l(0, 0), l(1, -1), l(0, -1)], [l(1, 0), l(0, 0), l(0, -1)], [l(1, 0), l(1, -1), l(0, 0)]],
    [[l(0, 0), l(1, -1), l(1, 0)], [l(0, -1), l(0, 0), l(1, 0)], [l(0, -1), l(1, -1), l(0, 0)]],
    [[l(0, 0), l(-1, 0), l(-1, 1)], [l(0, -1), l(0, 0), l(-1, 1)], [l(0, -1), l(-1, 0), l(0, 0)]],
];

/// A printed terminal-to-terminal equality: `T^{sj}_{si}·G⁽ᵏ⁾ = T^{dj}_{di}`
/// with increment `T^{sj}_{si}·H⁽ᵏ⁾ = cargo`. Knot and terminal indices are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CargoEquality {
    pub src: (usize, usize),
    pub strong: usize,
    pub dst: (usize, usize),
    pub cargo: [Lin; 3],
}

const fn ce(sj: usize, si: usize, k: usize, dj: usize, di: usize, cargo: [Lin; 3]) -> CargoEquality {
    CargoEquality { src: (sj, si), strong: k, dst: (dj, di), cargo }
}

const O: Lin = l(0, 0);

pub const CARGO_EQUALITIES: [CargoEquality; 22] = [
    ce(1, 1, 3, 1, 2, [O, l(1, 0), O]),
    ce(1, 1, 5, 2, 4, [O, O, l(0, 1)]),
    ce(2, 1, 1, 1, 6, [l(-1, 0), O, O]),
    ce(2, 1, 6, 3, 3, [O, O, l(-1, 0)]),
    ce(3, 1, 2, 2, 6, [l(0, -1), O, O]),
    ce(3, 1, 4, 3, 2, [O, l(1, -1), O]),
    ce(1, 2, 2, 2, 5, [l(0, -1), O, O]),
    ce(1, 2, 4, 3, 1, [O, l(-1, 0), O]),
    ce(3, 2, 1, 2, 2, [l(1, -1), O, O]),
    ce(3, 2, 6, 3, 3, [O, O, l(-1, 0)]),
    ce(1, 3, 2, 2, 4, [l(1, 0), O, O]),
    ce(1, 3, 4, 3, 6, [O, l(0, 1), O]),
    ce(1, 4, 2, 2, 3, [l(-1, 1), O, O]),
    ce(1, 4, 4, 3, 5, [O, l(0, 1), O]),
    ce(3, 4, 1, 1, 3, [l(-1, 0), O, O]),
    ce(3, 4, 6, 3, 1, [O, O, l(0, -1)]),
    ce(1, 5, 2, 2, 2, [l(-1, 1), O, O]),
    ce(1, 5, 4, 3, 4, [O, l(-1, 0), O]),
    ce(3, 5, 1, 1, 2, [l(0, 1), O, O]),
    ce(3, 5, 6, 3, 6, [O, O, l(1, 0)]),
    ce(1, 6, 2, 2, 1, [l(1, 0), O, O]),
    ce(1, 6, 4, 3, 3, [O, l(1, -1), O]),
];

/// Three closed walks on the knot graph with their claimed cargo.
pub const CYCLES: [([usize; 5], [Lin; 3]); 3] = [
    ([1, 2, 5, 6, 1], [l(1, -1), l(1, 0), O]),
    ([1, 2, 3, 6, 1], [l(1, 0), l(1, 1), l(1, 0)]),
    ([1, 2, 3, 4, 1], [l(1, 0), l(1, 0), l(1, -1)]),
];

/// Worked commensurable example: integer discrepancy weights and the six
/// published gcd step multipliers.
pub const CASE_C_EXAMPLE: ([i64; 3], [i64; 6]) = ([595, 1683, 308], [17, 7, 11, 4, 3, 5]);
