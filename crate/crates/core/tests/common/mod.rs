//! Test-only oracles, written without the library's linear algebra.
//!
//! Elementary divisors come from gcds of minors, ranks from fraction-free
//! elimination, and symmetric powers from expanding binary forms.

#![allow(dead_code)]

use moduli_coh::linalg::FgAbelianGroup;
use num_bigint::BigInt;

pub type Mat = Vec<Vec<i128>>;

pub fn identity(n: usize) -> Mat {
    (0..n).map(|i| (0..n).map(|j| i128::from(i == j)).collect()).collect()
}

pub fn mul(a: &Mat, b: &Mat) -> Mat {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| (0..cols).map(|j| (0..inner).map(|t| row[t] * b[t][j]).sum()).collect())
        .collect()
}

pub fn add(a: &Mat, b: &Mat) -> Mat {
    a.iter().zip(b).map(|(x, y)| x.iter().zip(y).map(|(p, q)| p + q).collect()).collect()
}

pub fn sub(a: &Mat, b: &Mat) -> Mat {
    a.iter().zip(b).map(|(x, y)| x.iter().zip(y).map(|(p, q)| p - q).collect()).collect()
}

pub fn neg(a: &Mat) -> Mat {
    a.iter().map(|r| r.iter().map(|x| -x).collect()).collect()
}

pub fn pow(a: &Mat, e: usize) -> Mat {
    (0..e).fold(identity(a.len()), |acc, _| mul(&acc, a))
}

/// Stacks `blocks` (each a row of matrices) into one matrix.
pub fn block(blocks: &[Vec<&Mat>]) -> Mat {
    let mut out = Vec::new();
    for row in blocks {
        for i in 0..row[0].len() {
            out.push(row.iter().flat_map(|m| m[i].iter().copied()).collect());
        }
    }
    out
}

pub fn zeros(rows: usize, cols: usize) -> Mat {
    vec![vec![0; cols]; rows]
}

/// `Sym^k` of a 2x2 integer matrix on the basis `e1^(k-j) e2^j`, expanding
/// `(a e1 + c e2)^(k-j) (b e1 + d e2)^j` directly.
pub fn sym(g: [[i64; 2]; 2], k: usize) -> Mat {
    let [[a, b], [c, d]] = g.map(|r| r.map(i128::from));
    // Polynomials in e2 (e1 is implied by homogeneity), index = power of e2.
    let poly_mul = |p: &[i128], q: &[i128]| {
        let mut out = vec![0; p.len() + q.len() - 1];
        for (i, x) in p.iter().enumerate() {
            for (j, y) in q.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    };
    let mut m = zeros(k + 1, k + 1);
    for j in 0..=k {
        let mut p = vec![1i128];
        for _ in 0..k - j {
            p = poly_mul(&p, &[a, c]);
        }
        for _ in 0..j {
            p = poly_mul(&p, &[b, d]);
        }
        for (i, x) in p.into_iter().enumerate() {
            m[i][j] = x;
        }
    }
    m
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Fraction-free (Bareiss) determinant.
pub fn det(m: &Mat) -> i128 {
    let n = m.len();
    let mut a = m.clone();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

pub fn rank(m: &Mat) -> usize {
    let mut a = m.clone();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..a.len() {
            if a[i][c] != 0 {
                let (x, y) = (a[r][c], a[i][c]);
                for j in 0..cols {
                    a[i][j] = a[i][j] * x - a[r][j] * y;
                }
                let g = a[i].iter().fold(0, |g, &v| gcd(g, v));
                if g > 1 {
                    a[i].iter_mut().for_each(|v| *v /= g);
                }
            }
        }
        r += 1;
    }
    r
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut with: Vec<Vec<usize>> = subsets(n - 1, k - 1);
    with.iter_mut().for_each(|s| s.push(n - 1));
    with.extend(subsets(n - 1, k));
    with
}

/// Non-zero elementary divisors `e_i = D_i / D_(i-1)`, where `D_i` is the gcd of
/// the `i x i` minors.
pub fn elementary_divisors(m: &Mat) -> Vec<i128> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    let mut prev = 1i128;
    for i in 1..=rows.min(cols) {
        let mut d = 0;
        'outer: for rs in subsets(rows, i) {
            for cs in subsets(cols, i) {
                let minor: Mat = rs.iter().map(|&r| cs.iter().map(|&c| m[r][c]).collect()).collect();
                d = gcd(d, det(&minor));
                if d == 1 {
                    break 'outer;
                }
            }
        }
        if d == 0 {
            break;
        }
        out.push(d / prev);
        prev = d;
    }
    out
}

pub fn group(free: usize, divisors: &[i128]) -> FgAbelianGroup {
    FgAbelianGroup::from_parts(free, divisors.iter().filter(|&&d| d > 1).map(|&d| BigInt::from(d)))
}

/// `H^n(Z/m, Z^r)` with generator `g`: `ker(g - 1)` in degree 0, then the
/// cokernel torsion of `g - 1` (odd) and of the norm (even).
pub fn cyclic_oracle(g: &Mat, m: usize, n: usize) -> FgAbelianGroup {
    let r = g.len();
    let g1 = sub(g, &identity(r));
    let norm = (0..m).fold(zeros(r, r), |acc, i| add(&acc, &pow(g, i)));
    match n {
        0 => group(r - rank(&g1), &[]),
        n if n % 2 == 1 => group(0, &elementary_divisors(&g1)),
        _ => group(0, &elementary_divisors(&norm)),
    }
}

/// `(H^0, H^1)` of `SL_2(Z) = <S, U | S^4 = 1, S^2 = U^3>` acting through `s`, `u`.
///
/// A crossed homomorphism is a pair `(f(S), f(U))` killed by the relation
/// matrix; coboundaries are the image of `[S - 1; U - 1]`.
pub fn sl2z_low_degree_oracle(s: &Mat, u: &Mat) -> (FgAbelianGroup, FgAbelianGroup) {
    let r = s.len();
    let one = identity(r);
    let coboundary = block(&[vec![&sub(s, &one)], vec![&sub(u, &one)]]);
    let s_norm2 = add(&one, s);
    let s_norm4 = add(&add(&s_norm2, &pow(s, 2)), &pow(s, 3));
    let u_norm3 = neg(&add(&add(&one, u), &pow(u, 2)));
    let z = zeros(r, r);
    let relations = block(&[vec![&s_norm2, &u_norm3], vec![&s_norm4, &z]]);
    let b_rank = rank(&coboundary);
    let h0 = group(r - b_rank, &[]);
    let h1 = group(2 * r - rank(&relations) - b_rank, &elementary_divisors(&coboundary));
    (h0, h1)
}

pub const S: [[i64; 2]; 2] = [[0, -1], [1, 0]];
pub const U: [[i64; 2]; 2] = [[0, -1], [1, 1]];

pub fn sym_low_degree(k: usize) -> (FgAbelianGroup, FgAbelianGroup) {
    sl2z_low_degree_oracle(&sym(S, k), &sym(U, k))
}

pub fn parse(s: &str) -> FgAbelianGroup {
    s.parse().expect("valid group")
}
