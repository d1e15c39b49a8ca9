//! Bundled example arrangements used throughout the test and check suites.

use crate::arrangement::Arrangement;

/// Boolean arrangement: the n coordinate hyperplanes in dimension n.
pub fn boolean(n: usize) -> Arrangement {
    let rows: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
    Arrangement::from_i64(&refs).expect("identity matrix is essential")
}

/// Three distinct lines through the origin in the plane (U_{2,3}).
pub fn u23() -> Arrangement {
    Arrangement::from_i64(&[&[1, 0, 1], &[0, 1, 1]]).unwrap()
}

/// Four pairwise-independent lines in the plane (U_{2,4}).
pub fn u24() -> Arrangement {
    Arrangement::from_i64(&[&[1, 0, 1, 1], &[0, 1, 1, -1]]).unwrap()
}

/// Four generic planes in 3-space (U_{3,4}).
pub fn u34() -> Arrangement {
    Arrangement::from_i64(&[&[1, 0, 0, 1], &[0, 1, 0, 1], &[0, 0, 1, 1]]).unwrap()
}

/// Two parallel pairs plus a transversal: the running counterexample for
/// exactness at k <= -3.
pub fn mk4() -> Arrangement {
    Arrangement::from_i64(&[&[1, 1, 0, 0, 1], &[0, 0, 1, 1, 1]]).unwrap()
}

/// Graphic arrangement of the complete graph on 4 vertices (r=3, n=6).
pub fn k4_graphic() -> Arrangement {
    Arrangement::from_i64(&[
        &[1, 1, 1, 0, 0, 0],
        &[-1, 0, 0, 1, 1, 0],
        &[0, -1, 0, -1, 0, 1],
    ])
    .unwrap()
}

/// All corpus arrangements with their names.
pub fn all() -> Vec<(&'static str, Arrangement)> {
    vec![
        ("boolean_1", boolean(1)),
        ("boolean_2", boolean(2)),
        ("boolean_3", boolean(3)),
        ("boolean_4", boolean(4)),
        ("u23", u23()),
        ("u24", u24()),
        ("u34", u34()),
        ("mk4", mk4()),
        ("k4_graphic", k4_graphic()),
    ]
}

/// Look up a corpus arrangement by name.
pub fn by_name(name: &str) -> Option<Arrangement> {
    all().into_iter().find(|(n, _)| *n == name).map(|(_, a)| a)
}
