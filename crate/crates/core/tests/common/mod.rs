//! Reference data and brute-force oracles shared by the integration tests.
//! Nothing here calls into the library's numerics.

#![allow(dead_code)]

use cusphere::numerics::Matrix;
use cusphere::Scalar;
use num_complex::Complex64;

pub type CMat = Vec<Vec<Complex64>>;

pub const B: [[i32; 6]; 6] = [
    [0, -1, 0, 0, 0, 0],
    [1, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, -1],
    [0, 0, 0, 0, 1, 0],
    [0, 0, 0, -1, 0, 0],
    [0, 0, 1, 0, 0, 0],
];

pub const D: [[i32; 6]; 6] = [
    [0, 0, 0, 0, 0, -1],
    [0, 0, 0, 0, 1, 0],
    [0, 0, 0, -1, 0, 0],
    [0, 0, 1, 0, 0, 0],
    [0, -1, 0, 0, 0, 0],
    [1, 0, 0, 0, 0, 0],
];

pub const F: [[i32; 6]; 6] = [
    [0, 0, 0, -1, 0, 0],
    [0, 0, 1, 0, 0, 0],
    [0, -1, 0, 0, 0, 0],
    [1, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, -1],
    [0, 0, 0, 0, 1, 0],
];

/// Cayley table as printed: row label times column label.
pub const CAYLEY: [[&str; 6]; 6] = [
    ["a", "b", "c", "d", "e", "f"],
    ["b", "-a", "f", "-e", "d", "-c"],
    ["c", "d", "e", "f", "a", "b"],
    ["d", "-c", "b", "-a", "f", "-e"],
    ["e", "f", "a", "b", "c", "d"],
    ["f", "-e", "d", "-c", "b", "-a"],
];

/// Quarter-turn progressions per axis, slot names `Xr`..`Zi`.
pub const PROGRESSIONS: [(&str, [[&str; 4]; 3]); 3] = [
    (
        "X",
        [
            ["Xi", "-Xr", "-Xi", "Xr"],
            ["Zi", "-Yr", "-Zi", "Yr"],
            ["Yi", "-Zr", "-Yi", "Zr"],
        ],
    ),
    (
        "Y",
        [
            ["Zi", "-Xr", "-Zi", "Xr"],
            ["Yi", "-Yr", "-Yi", "Yr"],
            ["Xi", "-Zr", "-Xi", "Zr"],
        ],
    ),
    (
        "Z",
        [
            ["Yi", "-Xr", "-Yi", "Xr"],
            ["Xi", "-Yr", "-Xi", "Yr"],
            ["Zi", "-Zr", "-Zi", "Zr"],
        ],
    ),
];

/// Oriented plane orbits: image of the X, Y, Z axes after k = 1..6 steps.
pub const ORBIT_C: [[&str; 6]; 3] = [
    ["-Y", "Z", "-X", "Y", "-Z", "X"],
    ["-Z", "X", "-Y", "Z", "-X", "Y"],
    ["-X", "Y", "-Z", "X", "-Y", "Z"],
];

pub const ORBIT_E: [[&str; 6]; 3] = [
    ["-Z", "Y", "-X", "Z", "-Y", "X"],
    ["-X", "Z", "-Y", "X", "-Z", "Y"],
    ["-Y", "X", "-Z", "Y", "-X", "Z"],
];

pub const SLOT_NAMES: [&str; 6] = ["Xr", "Xi", "Yr", "Yi", "Zr", "Zi"];

pub fn imul(p: &[[i32; 6]; 6], q: &[[i32; 6]; 6]) -> [[i32; 6]; 6] {
    let mut m = [[0; 6]; 6];
    for i in 0..6 {
        for j in 0..6 {
            m[i][j] = (0..6).map(|k| p[i][k] * q[k][j]).sum();
        }
    }
    m
}

pub fn ineg(p: &[[i32; 6]; 6]) -> [[i32; 6]; 6] {
    p.map(|r| r.map(|v| -v))
}

pub fn iidentity() -> [[i32; 6]; 6] {
    let mut m = [[0; 6]; 6];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1;
    }
    m
}

/// Basis in the order a, b, c, d, e, f with c = -bf and e = -bd.
pub fn basis() -> [[[i32; 6]; 6]; 6] {
    [
        iidentity(),
        B,
        ineg(&imul(&B, &F)),
        D,
        ineg(&imul(&B, &D)),
        F,
    ]
}

pub fn token_matrix(token: &str) -> [[i32; 6]; 6] {
    let (neg, name) = match token.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, token),
    };
    let idx = "abcdef".find(name).expect("label");
    let m = basis()[idx];
    if neg {
        ineg(&m)
    } else {
        m
    }
}

fn cz(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

pub fn czero(n: usize) -> CMat {
    vec![vec![Complex64::new(0.0, 0.0); n]; n]
}

pub fn cidentity(n: usize) -> CMat {
    let mut m = czero(n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = cz(1.0);
    }
    m
}

pub fn cmul(p: &CMat, q: &CMat) -> CMat {
    let n = p.len();
    let mut m = czero(n);
    for i in 0..n {
        for j in 0..n {
            m[i][j] = (0..n).map(|k| p[i][k] * q[k][j]).sum();
        }
    }
    m
}

pub fn from_int(p: &[[i32; 6]; 6], s: Complex64) -> CMat {
    p.iter()
        .map(|r| r.iter().map(|&v| s * v as f64).collect())
        .collect()
}

pub fn cadd(p: &CMat, q: &CMat) -> CMat {
    p.iter()
        .zip(q)
        .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
        .collect()
}

/// Generator assembled from the basis: `-(x b + y d + z f) + c·c + e·e`.
pub fn generator(x: Complex64, y: Complex64, z: Complex64, c: f64, e: f64) -> CMat {
    let basis = basis();
    let mut g = czero(6);
    for (m, s) in [
        (&basis[1], -x),
        (&basis[3], -y),
        (&basis[5], -z),
        (&basis[2], cz(c)),
        (&basis[4], cz(e)),
    ] {
        g = cadd(&g, &from_int(m, s));
    }
    g
}

pub fn generator_real(x: f64, y: f64, z: f64) -> CMat {
    generator(cz(x), cz(y), cz(z), 0.0, 0.0)
}

/// 3×3 complex generator read off the 2×2 blocks of the 6×6 generator,
/// using `α + βi ↔ [[α, β], [−β, α]]`.
pub fn u3_generator(x: f64, y: f64, z: f64) -> CMat {
    let g = generator_real(x, y, z);
    (0..3)
        .map(|i| {
            (0..3)
                .map(|j| Complex64::new(g[2 * i][2 * j].re, g[2 * i][2 * j + 1].re))
                .collect()
        })
        .collect()
}

pub fn embed(m: &CMat) -> CMat {
    let n = m.len();
    let mut out = czero(2 * n);
    for i in 0..n {
        for j in 0..n {
            let z = m[i][j];
            out[2 * i][2 * j] = cz(z.re);
            out[2 * i][2 * j + 1] = cz(z.im);
            out[2 * i + 1][2 * j] = cz(-z.im);
            out[2 * i + 1][2 * j + 1] = cz(z.re);
        }
    }
    out
}

/// `exp(m)` as a 120-term Taylor sum with Kahan compensation per entry.
pub fn expm_taylor(m: &CMat) -> CMat {
    let n = m.len();
    let mut sum = cidentity(n);
    let mut comp = czero(n);
    let mut term = cidentity(n);
    for k in 1..=120 {
        term = cmul(&term, m);
        for row in term.iter_mut() {
            for v in row.iter_mut() {
                *v /= k as f64;
            }
        }
        for i in 0..n {
            for j in 0..n {
                let y = term[i][j] - comp[i][j];
                let t = sum[i][j] + y;
                comp[i][j] = (t - sum[i][j]) - y;
                sum[i][j] = t;
            }
        }
    }
    sum
}

/// Determinant by Gaussian elimination with partial pivoting.
pub fn cdet(m: &CMat) -> Complex64 {
    let n = m.len();
    let mut a = m.clone();
    let mut det = cz(1.0);
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i][col].norm().total_cmp(&a[j][col].norm()))
            .unwrap();
        if a[pivot][col].norm() == 0.0 {
            return cz(0.0);
        }
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        det *= a[col][col];
        for i in col + 1..n {
            let f = a[i][col] / a[col][col];
            let pivot_row = a[col].clone();
            for (x, p) in a[i][col..].iter_mut().zip(&pivot_row[col..]) {
                *x -= f * p;
            }
        }
    }
    det
}

pub fn max_diff<T: Scalar>(lib: &Matrix<T>, oracle: &CMat) -> f64 {
    assert_eq!(lib.dim(), oracle.len());
    let mut worst: f64 = 0.0;
    for (i, row) in oracle.iter().enumerate() {
        for (j, z) in row.iter().enumerate() {
            worst = worst.max((lib[(i, j)].to_complex() - z).norm());
        }
    }
    worst
}

pub fn cmax_diff(p: &CMat, q: &CMat) -> f64 {
    p.iter()
        .flatten()
        .zip(q.iter().flatten())
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max)
}

/// `v·M` for a row vector.
pub fn row_apply(v: &[Complex64], m: &CMat) -> Vec<Complex64> {
    (0..m.len())
        .map(|j| v.iter().zip(m).map(|(vi, row)| vi * row[j]).sum())
        .collect()
}

/// Name of the single nonzero slot of `v`, e.g. `-Zi`.
pub fn slot_name(v: &[Complex64], tol: f64) -> Option<String> {
    let hits: Vec<usize> = (0..6).filter(|&i| v[i].norm() > tol).collect();
    match hits.as_slice() {
        [i] if (v[*i].norm() - 1.0).abs() <= tol => {
            let sign = if v[*i].re < 0.0 { "-" } else { "" };
            Some(format!("{sign}{}", SLOT_NAMES[*i]))
        }
        _ => None,
    }
}
