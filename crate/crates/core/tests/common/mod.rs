//! Independent reference implementations used only by the tests.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub fn big(x: i64) -> BigInt {
    BigInt::from(x)
}

/// Determinant by fraction-field Gaussian elimination.
pub fn rational_det(rows: &[Vec<BigInt>]) -> BigInt {
    let n = rows.len();
    let mut a: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().map(|x| BigRational::from(x.clone())).collect())
        .collect();
    let mut det = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return BigInt::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        let piv = a[c][c].clone();
        det *= piv.clone();
        for r in c + 1..n {
            if a[r][c].is_zero() {
                continue;
            }
            let f = a[r][c].clone() / piv.clone();
            for j in c..n {
                let v = a[c][j].clone() * f.clone();
                a[r][j] -= v;
            }
        }
    }
    assert!(det.is_integer());
    det.to_integer()
}

/// Inverse by Gauss-Jordan over the rationals, `None` if singular.
pub fn rational_inverse(rows: &[Vec<BigInt>]) -> Option<Vec<Vec<BigRational>>> {
    let n = rows.len();
    let mut a: Vec<Vec<BigRational>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut v: Vec<BigRational> = r.iter().map(|x| BigRational::from(x.clone())).collect();
            v.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            v
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero())?;
        a.swap(p, c);
        let piv = a[c][c].clone();
        for x in a[c].iter_mut() {
            *x = x.clone() / piv.clone();
        }
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                for j in 0..2 * n {
                    let v = a[c][j].clone() * f.clone();
                    a[r][j] -= v;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Sylvester matrix of `f` and `g` (ascending coefficient lists).
pub fn sylvester(f: &[BigInt], g: &[BigInt]) -> Vec<Vec<BigInt>> {
    let m = f.len() - 1;
    let n = g.len() - 1;
    let size = m + n;
    let mut rows = vec![vec![BigInt::zero(); size]; size];
    for i in 0..n {
        for (j, c) in f.iter().rev().enumerate() {
            rows[i][i + j] = c.clone();
        }
    }
    for i in 0..m {
        for (j, c) in g.iter().rev().enumerate() {
            rows[n + i][i + j] = c.clone();
        }
    }
    rows
}

/// Edge list of `I(n,k,l)` as a multigraph: `u_i = i`, `v_i = n + i`.
pub fn igraph_edges(n: usize, k: usize, l: usize) -> Vec<(usize, usize)> {
    let mut e = Vec::with_capacity(3 * n);
    for i in 0..n {
        e.push((i, (i + k) % n));
        e.push((i, n + i));
        e.push((n + i, n + (i + l) % n));
    }
    e
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

/// Number of spanning trees by enumerating all `(V-1)`-edge subsets.
pub fn brute_force_spanning_trees(vertices: usize, edges: &[(usize, usize)]) -> u64 {
    fn rec(
        vertices: usize,
        edges: &[(usize, usize)],
        start: usize,
        chosen: &mut Vec<usize>,
        count: &mut u64,
    ) {
        let need = vertices - 1;
        if chosen.len() == need {
            let mut parent: Vec<usize> = (0..vertices).collect();
            for &ei in chosen.iter() {
                let (a, b) = edges[ei];
                let ra = find(&mut parent, a);
                let rb = find(&mut parent, b);
                if ra == rb {
                    return;
                }
                parent[ra] = rb;
            }
            *count += 1;
            return;
        }
        let remaining = need - chosen.len();
        for i in start..=edges.len().saturating_sub(remaining) {
            chosen.push(i);
            rec(vertices, edges, i + 1, chosen, count);
            chosen.pop();
        }
    }
    let mut count = 0;
    rec(vertices, edges, 0, &mut Vec::new(), &mut count);
    count
}

/// Largest invariant factor products: `d_1 d_2 ... d_i` is the gcd of all
/// `i x i` minors. Only for tiny matrices.
pub fn determinantal_divisors(rows: &[Vec<BigInt>]) -> Vec<BigInt> {
    let r = rows.len();
    let c = rows[0].len();
    let mut out = Vec::new();
    for size in 1..=r.min(c) {
        let mut g = BigInt::zero();
        for rs in subsets(r, size) {
            for cs in subsets(c, size) {
                let sub: Vec<Vec<BigInt>> = rs
                    .iter()
                    .map(|&i| cs.iter().map(|&j| rows[i][j].clone()).collect())
                    .collect();
                g = num_integer::Integer::gcd(&g, &rational_det(&sub));
            }
        }
        out.push(g.abs());
    }
    out
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut with: Vec<Vec<usize>> = subsets(n - 1, k - 1);
    for s in with.iter_mut() {
        s.push(n - 1);
    }
    with.extend(subsets(n - 1, k));
    with
}
