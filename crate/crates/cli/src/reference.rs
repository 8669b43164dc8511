//! Values printed in the classification tables.

/// `(family, instances, indec rigid, cluster tilting, maximal rigid, summands)`.
pub const CURVE_TABLE: &[(&str, &[&str], [usize; 4])] = &[
    ("A odd", &["A1", "A3", "A5", "A7", "A9"], [2, 2, 2, 1]),
    ("A even", &["A2", "A4", "A6", "A8"], [0, 0, 1, 0]),
    ("D odd", &["D5", "D7"], [2, 0, 2, 1]),
    ("D even", &["D4", "D6", "D8"], [6, 6, 6, 2]),
    ("E6", &["E6"], [0, 0, 1, 0]),
    ("E7", &["E7"], [2, 0, 2, 1]),
    ("E8", &["E8"], [0, 0, 1, 0]),
];

/// `(p, q, has cluster tilting, counts when it has)`.
pub const T_TABLE: &[(u32, u32, bool, Option<(u64, u64, u64)>)] = &[
    (3, 6, true, Some((6, 6, 2))),
    (4, 4, true, Some((14, 24, 3))),
    (3, 8, true, Some((6, 6, 2))),
    (6, 6, true, Some((14, 24, 3))),
    (3, 7, false, None),
];

/// Stable counts for `n` distinct lines.
pub const LINES: &[(usize, (u64, u64, u64))] = &[(2, (2, 2, 1)), (3, (6, 6, 2)), (4, (14, 24, 3))];

/// Ext¹ on the E7 presentations `A`, `C`, `M1` from the computer algebra
/// transcript.
pub const E7_TRANSCRIPT: &[(&str, &str, usize)] = &[("A", "A", 0), ("C", "C", 2), ("M1", "M1", 10), ("A", "C", 0)];

/// Statements that are reported but never checked.
pub const UNVERIFIED: &[&str] = &[
    "tame/wild type of the stable endomorphism algebras",
    "tube structure of module categories over the stable endomorphism algebras",
    "global dimension 3 of the endomorphism algebra of the cluster tilting module",
    "geometric resolutions of the associated threefolds",
];
