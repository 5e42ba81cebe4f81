#![allow(dead_code, clippy::needless_range_loop)]

use std::path::PathBuf;

use goeritz_core::pdcode::parse_pd;
use goeritz_core::{Diagram, DiagramAnalysis, IntMatrix};

pub struct Fixture {
    pub name: &'static str,
    pub determinant: u64,
    /// Passes the combinatorial primality test.
    pub prime: bool,
    /// A table knot rather than a composite or kinked diagram.
    pub table_knot: bool,
}

const fn fx(name: &'static str, determinant: u64, prime: bool, table_knot: bool) -> Fixture {
    Fixture {
        name,
        determinant,
        prime,
        table_knot,
    }
}

/// Determinants from the standard knot tables.
pub const FIXTURES: &[Fixture] = &[
    fx("3_1", 3, true, true),
    fx("4_1", 5, true, true),
    fx("5_1", 5, true, true),
    fx("5_2", 7, true, true),
    fx("5_2_braid", 7, true, true),
    fx("6_1", 9, true, true),
    fx("6_2", 11, true, true),
    fx("6_3", 13, true, true),
    fx("7_1", 7, true, true),
    fx("8_19", 3, true, true),
    fx("8_19_alt", 3, true, true),
    fx("8_20", 9, true, true),
    fx("9_1", 9, true, true),
    fx("granny", 9, false, false),
    fx("square", 9, false, false),
    fx("kink", 1, false, false),
    fx("trefoil_kink", 3, false, false),
];

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(format!("{name}.pd"))
}

pub fn load(name: &str) -> Diagram {
    let text = std::fs::read_to_string(fixture_path(name)).expect("fixture exists");
    parse_pd(&text)
        .unwrap_or_else(|e| panic!("fixture {name}: {e}"))
        .with_name(name)
}

pub fn analysis(name: &str) -> DiagramAnalysis {
    DiagramAnalysis::new(load(name), None).unwrap()
}

/// Faces of `8_19.pd` (in discovery order) for the labels `R1, ..., R9, R0`:
/// shaded `R1..R5` then unshaded `R6..R9, R0`.
pub const LABELED_8_19_ORDER: [usize; 10] = [1, 3, 8, 4, 7, 2, 0, 5, 9, 6];

/// The 8_19 analysis shaded and ordered like the worked example.
pub fn labeled_8_19() -> DiagramAnalysis {
    let d = load("8_19");
    let a = DiagramAnalysis::new(d, Some(LABELED_8_19_ORDER[0])).unwrap();
    a.reordered(LABELED_8_19_ORDER.to_vec()).unwrap()
}

pub fn mat(rows: &[&[i64]]) -> IntMatrix {
    IntMatrix::from_rows(rows).unwrap()
}

pub const REFERENCE_DEHN: [[i64; 10]; 8] = [
    [-1, 1, 0, 0, 0, -1, 1, 0, 0, 0],
    [0, -1, 0, 1, 0, 0, -1, 1, 0, 0],
    [-1, 0, 0, 0, 1, 1, 0, 0, 0, -1],
    [0, 0, 1, 0, -1, -1, 0, 1, 0, 0],
    [-1, 0, 0, 1, 0, 0, -1, 0, 1, 0],
    [0, 0, 0, -1, 1, 0, 0, 1, -1, 0],
    [0, 1, -1, 0, 0, -1, 0, 1, 0, 0],
    [-1, 0, 0, 0, 1, 0, 0, 0, -1, 1],
];

pub const REFERENCE_GOERITZ: [[i64; 5]; 5] = [
    [4, -1, 0, -1, -2],
    [-1, -1, 1, 1, 0],
    [0, 1, -2, 0, 1],
    [-1, 1, 0, -1, 1],
    [-2, 0, 1, 1, 0],
];

pub fn reference_dehn() -> IntMatrix {
    IntMatrix::from_rows(&REFERENCE_DEHN).unwrap()
}

pub fn reference_goeritz() -> IntMatrix {
    IntMatrix::from_rows(&REFERENCE_GOERITZ).unwrap()
}

/// Rows compared as a multiset, each up to sign.
pub fn rows_up_to_sign_and_order(a: &IntMatrix, b: &IntMatrix) -> bool {
    let canon = |m: &IntMatrix| {
        let mut rows: Vec<Vec<i64>> = m
            .to_i64_rows()
            .unwrap()
            .into_iter()
            .map(|r| {
                let neg = r.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0);
                if neg {
                    r.iter().map(|x| -x).collect()
                } else {
                    r
                }
            })
            .collect();
        rows.sort();
        rows
    };
    a.rows() == b.rows() && a.cols() == b.cols() && canon(a) == canon(b)
}

/// Cofactor expansion along the first row.
pub fn cofactor_det(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut total = 0i128;
    for c in 0..n {
        if m[0][c] == 0 {
            continue;
        }
        let minor: Vec<Vec<i64>> = m[1..]
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|&(j, _)| j != c)
                    .map(|(_, &x)| x)
                    .collect()
            })
            .collect();
        let sign = if c % 2 == 0 { 1 } else { -1 };
        total += sign * m[0][c] as i128 * cofactor_det(&minor);
    }
    total
}

/// Counts Fox `p`-colorings of the diagram's edges by exhaustive search: the two
/// over-strand edges of a crossing share a color `a`, and the under-strand edges
/// `u, v` satisfy `u + v = 2a`.
pub fn fox_coloring_count(d: &Diagram, p: u64) -> u64 {
    let labels: Vec<u64> = {
        let mut v: Vec<u64> = d.crossings().iter().flat_map(|c| c.0).collect();
        v.sort();
        v.dedup();
        v
    };
    let index = |l: u64| labels.binary_search(&l).unwrap();
    let n = labels.len();
    let mut count = 0;
    let mut colors = vec![0u64; n];
    loop {
        let ok = d.crossings().iter().all(|c| {
            let [u, a, v, b] = c.0.map(|l| colors[index(l)]);
            a == b && (u + v) % p == (2 * a) % p
        });
        if ok {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == n {
                return count;
            }
            colors[i] += 1;
            if colors[i] < p {
                break;
            }
            colors[i] = 0;
            i += 1;
        }
    }
}

/// Dimension of the solution space mod `p` by plain Gaussian elimination on
/// `i64` residues.
pub fn nullity_mod_p(m: &IntMatrix, p: i64) -> usize {
    let mut a: Vec<Vec<i64>> = m
        .to_i64_rows()
        .unwrap()
        .into_iter()
        .map(|r| r.into_iter().map(|x| x.rem_euclid(p)).collect())
        .collect();
    let cols = m.cols();
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..a.len()).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(rank, piv);
        let inv = (1..p).find(|&x| (x * a[rank][c]) % p == 1).unwrap();
        for i in 0..a.len() {
            if i != rank && a[i][c] != 0 {
                let f = (a[i][c] * inv) % p;
                for j in 0..cols {
                    a[i][j] = (a[i][j] - f * a[rank][j]).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    cols - rank
}

pub fn primes_up_to(n: u64) -> Vec<u64> {
    (2..=n).filter(|&k| (2..k).all(|d| k % d != 0)).collect()
}
