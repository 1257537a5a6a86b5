//! Arithmetic modulo the Mersenne prime `2^61 − 1`. Results only propose candidates that
//! callers confirm exactly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::linalg::matrix::Matrix;
use crate::linalg::scalar::Scalar;

const L: u64 = (1 << 61) - 1;

fn mul(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % L as u128) as u64
}

fn add(a: u64, b: u64) -> u64 {
    (a + b) % L
}

fn sub(a: u64, b: u64) -> u64 {
    (a + L - b) % L
}

fn pow(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, a);
        }
        a = mul(a, a);
        e >>= 1;
    }
    r
}

fn inv(a: u64) -> u64 {
    pow(a, L - 2)
}

fn reduce_int(n: &BigInt) -> u64 {
    n.mod_floor(&BigInt::from(L)).to_u64().expect("residue fits")
}

fn reduce(q: &BigRational) -> Option<u64> {
    let d = reduce_int(q.denom());
    (d != 0).then(|| mul(reduce_int(q.numer()), inv(d)))
}

fn reduce_matrix(m: &Matrix) -> Option<Vec<Vec<u64>>> {
    (0..m.rows()).map(|i| m.row(i).iter().map(|s| s.as_rational().and_then(reduce)).collect()).collect()
}

fn inverse(mut a: Vec<Vec<u64>>) -> Option<Vec<Vec<u64>>> {
    let n = a.len();
    let mut b: Vec<Vec<u64>> = (0..n).map(|i| (0..n).map(|j| u64::from(i == j)).collect()).collect();
    for c in 0..n {
        let p = (c..n).find(|&r| a[r][c] != 0)?;
        a.swap(c, p);
        b.swap(c, p);
        let s = inv(a[c][c]);
        for j in 0..n {
            a[c][j] = mul(a[c][j], s);
            b[c][j] = mul(b[c][j], s);
        }
        for r in 0..n {
            if r != c && a[r][c] != 0 {
                let f = a[r][c];
                for j in 0..n {
                    a[r][j] = sub(a[r][j], mul(f, a[c][j]));
                    b[r][j] = sub(b[r][j], mul(f, b[c][j]));
                }
            }
        }
    }
    Some(b)
}

fn mat_mul(a: &[Vec<u64>], b: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let (n, m) = (a.len(), b.first().map_or(0, Vec::len));
    let mut c = vec![vec![0u64; m]; n];
    for i in 0..n {
        for (k, &x) in a[i].iter().enumerate() {
            if x != 0 {
                for j in 0..m {
                    c[i][j] = add(c[i][j], mul(x, b[k][j]));
                }
            }
        }
    }
    c
}

/// Characteristic polynomial, constant term first, via reduction to Hessenberg form.
fn charpoly(mut h: Vec<Vec<u64>>) -> Vec<u64> {
    let n = h.len();
    for j in 0..n.saturating_sub(2) {
        let Some(p) = (j + 1..n).find(|&i| h[i][j] != 0) else { continue };
        if p != j + 1 {
            h.swap(p, j + 1);
            for row in h.iter_mut() {
                row.swap(p, j + 1);
            }
        }
        let s = inv(h[j + 1][j]);
        for k in j + 2..n {
            let u = mul(h[k][j], s);
            if u == 0 {
                continue;
            }
            for c in 0..n {
                h[k][c] = sub(h[k][c], mul(u, h[j + 1][c]));
            }
            for row in h.iter_mut() {
                row[j + 1] = add(row[j + 1], mul(u, row[k]));
            }
        }
    }
    // p_m = (x − h_mm) p_{m−1} − Σ_i h_{m−i,m} (h_{m,m−1} ⋯ h_{m−i+1,m−i}) p_{m−i−1}, 1-indexed
    let mut p: Vec<Vec<u64>> = vec![vec![1]];
    for m in 1..=n {
        let prev = &p[m - 1];
        let mut next = vec![0u64; m + 1];
        for (k, &c) in prev.iter().enumerate() {
            next[k + 1] = add(next[k + 1], c);
            next[k] = sub(next[k], mul(h[m - 1][m - 1], c));
        }
        let mut t = 1;
        for i in 1..m {
            t = mul(t, h[m - i][m - i - 1]);
            let f = mul(h[m - i - 1][m - 1], t);
            for (k, &c) in p[m - i - 1].iter().enumerate() {
                next[k] = sub(next[k], mul(f, c));
            }
        }
        p.push(next);
    }
    p.pop().expect("nonempty")
}

fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_rem(a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut r = a.to_vec();
    let lead = inv(*b.last().expect("nonzero divisor"));
    while r.len() >= b.len() {
        let f = mul(*r.last().expect("nonempty"), lead);
        let shift = r.len() - b.len();
        for (k, &c) in b.iter().enumerate() {
            r[shift + k] = sub(r[shift + k], mul(f, c));
        }
        r = trim(r);
    }
    r
}

fn poly_div(a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut r = a.to_vec();
    let lead = inv(*b.last().expect("nonzero divisor"));
    let mut q = vec![0u64; a.len().saturating_sub(b.len()) + 1];
    while r.len() >= b.len() {
        let f = mul(*r.last().expect("nonempty"), lead);
        let shift = r.len() - b.len();
        q[shift] = f;
        for (k, &c) in b.iter().enumerate() {
            r[shift + k] = sub(r[shift + k], mul(f, c));
        }
        r.pop();
        while r.len() >= b.len() && r.last() == Some(&0) {
            r.pop();
        }
    }
    trim(q)
}

fn poly_gcd(a: &[u64], b: &[u64]) -> Vec<u64> {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = poly_rem(&a, &b);
        a = b;
        b = r;
    }
    a
}

fn poly_mul_mod(a: &[u64], b: &[u64], f: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut c = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x != 0 {
            for (j, &y) in b.iter().enumerate() {
                c[i + j] = add(c[i + j], mul(x, y));
            }
        }
    }
    poly_rem(&trim(c), f)
}

fn poly_pow_mod(base: &[u64], mut e: u64, f: &[u64]) -> Vec<u64> {
    let mut r = poly_rem(&[1], f);
    let mut b = poly_rem(base, f);
    while e > 0 {
        if e & 1 == 1 {
            r = poly_mul_mod(&r, &b, f);
        }
        b = poly_mul_mod(&b, &b, f);
        e >>= 1;
    }
    r
}

fn monic(mut a: Vec<u64>) -> Vec<u64> {
    if let Some(&lead) = a.last() {
        let s = inv(lead);
        a.iter_mut().for_each(|x| *x = mul(*x, s));
    }
    a
}

/// Splits a monic product of distinct linear factors into its roots.
fn split_linear(f: Vec<u64>, roots: &mut Vec<u64>) {
    match f.len() {
        0 | 1 => {}
        2 => roots.push(sub(0, f[0])),
        _ => {
            for a in 1u64.. {
                let mut h = poly_pow_mod(&[a, 1], (L - 1) / 2, &f);
                if h.is_empty() {
                    h.push(0);
                }
                h[0] = sub(h[0], 1);
                let g = monic(poly_gcd(&f, &trim(h)));
                if g.len() > 1 && g.len() < f.len() {
                    let rest = monic(poly_div(&f, &g));
                    split_linear(g, roots);
                    split_linear(rest, roots);
                    return;
                }
            }
        }
    }
}

/// Roots in the prime field of a nonzero polynomial.
fn roots(f: &[u64]) -> Vec<u64> {
    let f = monic(trim(f.to_vec()));
    if f.len() < 2 {
        return Vec::new();
    }
    let mut xl = poly_pow_mod(&[0, 1], L, &f);
    while xl.len() < 2 {
        xl.push(0);
    }
    xl[1] = sub(xl[1], 1);
    let g = monic(poly_gcd(&f, &trim(xl)));
    let mut out = Vec::new();
    split_linear(g, &mut out);
    out
}

/// Smallest `u/v ≡ a` with `|u|, v < sqrt(L/2)`.
fn rational_reconstruction(a: u64) -> Option<BigRational> {
    let bound = ((L / 2) as f64).sqrt() as i128;
    let (mut r0, mut r1) = (L as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 >= bound {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if t1 == 0 || t1.abs() >= bound {
        return None;
    }
    let q = BigRational::new(BigInt::from(r1), BigInt::from(t1));
    (reduce(&q) == Some(a)).then_some(q)
}

/// Candidate roots of `det(x A − B)` for square `A`, `B` over ℚ, given a rational `μ` at which
/// `μA − B` is invertible: the eigenvalues `c ≠ 0` of `(μA − B)^{-1} A` give `x = μ − 1/c`.
/// Eigenvalues are found modulo a prime and lifted one at a time by rational reconstruction,
/// so roots of large height are missed and spurious ones may appear; `None` when the
/// reduction is unusable.
pub(crate) fn pencil_root_candidates(a: &Matrix, b: &Matrix, mu: &Scalar) -> Option<Vec<Scalar>> {
    let am = reduce_matrix(a)?;
    let bm = reduce_matrix(b)?;
    let mu_q = mu.as_rational()?.clone();
    let mu_m = reduce(&mu_q)?;
    let n = am.len();
    let pencil: Vec<Vec<u64>> = (0..n).map(|i| (0..n).map(|j| sub(mul(mu_m, am[i][j]), bm[i][j])).collect()).collect();
    let chi = charpoly(mat_mul(&inverse(pencil)?, &am));
    let mut out: Vec<Scalar> = roots(&chi)
        .into_iter()
        .filter(|&c| c != 0)
        .filter_map(rational_reconstruction)
        .map(|c| Scalar::Rational(&mu_q - c.recip()))
        .collect();
    out.sort();
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::scalar::Field;

    #[test]
    fn charpoly_of_companion_matrix() {
        // companion of x^3 − 2x^2 − 5x + 6 = (x − 1)(x + 2)(x − 3)
        let h = vec![vec![0, 0, L - 6], vec![1, 0, 5], vec![0, 1, 2]];
        assert_eq!(charpoly(h), vec![6, L - 5, L - 2, 1]);
    }

    #[test]
    fn charpoly_of_dense_matrix() {
        // [[2,1,0],[1,3,1],[0,1,4]] has characteristic polynomial x^3 − 9x^2 + 24x − 18
        let h = vec![vec![2, 1, 0], vec![1, 3, 1], vec![0, 1, 4]];
        assert_eq!(charpoly(h), vec![L - 18, 24, L - 9, 1]);
    }

    #[test]
    fn reconstruction_recovers_small_fractions() {
        for (u, v) in [(3i64, 7i64), (-5, 2), (0, 1), (123456, 789)] {
            let q = BigRational::new(BigInt::from(u), BigInt::from(v));
            assert_eq!(rational_reconstruction(reduce(&q).unwrap()), Some(q));
        }
    }

    #[test]
    fn roots_of_split_polynomial() {
        // (x − 2)(x + 3)(x − 10) = x^3 − 9x^2 − 16x + 60
        let f = vec![60, L - 16, L - 9, 1];
        let mut r = roots(&f);
        r.sort();
        assert_eq!(r, vec![2, 10, L - 3]);
        let mut r = roots(&[L - 4, 0, 1]);
        r.sort();
        assert_eq!(r, vec![2, L - 2]);
    }

    #[test]
    fn pencil_candidates_find_eigenvalues() {
        let q = Field::Rational;
        // det(x·1 − diag(1/2, 1/2, −3)) has roots 1/2 and −3
        let a = Matrix::identity(q, 3);
        let b = Matrix::from_fn(q, 3, 3, |i, j| match (i, j) {
            (0, 0) | (1, 1) => Scalar::Rational(BigRational::new(1.into(), 2.into())),
            (2, 2) => q.from_int(-3),
            (0, 1) => q.one(),
            _ => q.zero(),
        });
        let mut got = pencil_root_candidates(&a, &b, &q.from_int(5)).unwrap();
        got.sort();
        assert_eq!(got, vec![q.from_int(-3), Scalar::Rational(BigRational::new(1.into(), 2.into()))]);
    }
}
