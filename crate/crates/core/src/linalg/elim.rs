//! Sparse exact row reduction.
//!
//! Rational rows are cleared of denominators and reduced fraction-free over the
//! integers with content removal after every step; prime-field rows use `u64`
//! residues with monic pivots.

use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::linalg::scalar::{mul_mod, pow_mod, Field, Scalar};

static MAX_BITS: AtomicU64 = AtomicU64::new(0);

/// Largest integer bit length produced during rational elimination since the last reset.
pub fn max_bits_seen() -> u64 {
    MAX_BITS.load(Ordering::Relaxed)
}

pub fn reset_bit_stats() {
    MAX_BITS.store(0, Ordering::Relaxed);
}

pub(crate) fn record_bits(bits: u64) {
    MAX_BITS.fetch_max(bits, Ordering::Relaxed);
}

type Row<E> = Vec<(usize, E)>;

trait Ring {
    type E: Clone;
    /// Removes `row`'s entry at `col` using `pivot`, whose leading column is `col`.
    fn combine(&self, row: &Row<Self::E>, pivot: &Row<Self::E>, col: usize) -> Row<Self::E>;
    fn normalize(&self, row: &mut Row<Self::E>);
}

fn entry_at<E>(row: &Row<E>, col: usize) -> Option<&E> {
    row.binary_search_by_key(&col, |e| e.0).ok().map(|i| &row[i].1)
}

fn merge<E, F>(a: &Row<E>, b: &Row<E>, mut f: F) -> Row<E>
where
    F: FnMut(Option<&E>, Option<&E>) -> Option<E>,
{
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let (col, v) = if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            i += 1;
            (a[i - 1].0, f(Some(&a[i - 1].1), None))
        } else if i == a.len() || b[j].0 < a[i].0 {
            j += 1;
            (b[j - 1].0, f(None, Some(&b[j - 1].1)))
        } else {
            i += 1;
            j += 1;
            (a[i - 1].0, f(Some(&a[i - 1].1), Some(&b[j - 1].1)))
        };
        if let Some(v) = v {
            out.push((col, v));
        }
    }
    out
}

struct IntRing;

impl Ring for IntRing {
    type E = BigInt;

    fn combine(&self, row: &Row<BigInt>, pivot: &Row<BigInt>, col: usize) -> Row<BigInt> {
        let a = &pivot[0].1;
        let b = entry_at(row, col).expect("entry to eliminate");
        let g = a.gcd(b);
        let ra = a / &g;
        let rb = b / &g;
        merge(row, pivot, |x, y| {
            let v = match (x, y) {
                (Some(x), Some(y)) => &ra * x - &rb * y,
                (Some(x), None) => &ra * x,
                (None, Some(y)) => -(&rb * y),
                (None, None) => unreachable!(),
            };
            (!v.is_zero()).then_some(v)
        })
    }

    fn normalize(&self, row: &mut Row<BigInt>) {
        let mut g = BigInt::zero();
        for (_, v) in row.iter() {
            g = g.gcd(v);
            if g.is_one() {
                break;
            }
        }
        if row.first().is_some_and(|(_, v)| v.is_negative()) {
            g = -g;
        }
        if !g.is_one() && !g.is_zero() {
            for (_, v) in row.iter_mut() {
                *v = &*v / &g;
            }
        }
        if let Some(bits) = row.iter().map(|(_, v)| v.bits()).max() {
            record_bits(bits);
        }
    }
}

struct ModRing {
    p: u64,
}

impl Ring for ModRing {
    type E = u64;

    fn combine(&self, row: &Row<u64>, pivot: &Row<u64>, col: usize) -> Row<u64> {
        let p = self.p;
        let b = *entry_at(row, col).expect("entry to eliminate");
        merge(row, pivot, |x, y| {
            let x = x.copied().unwrap_or(0);
            let y = y.copied().unwrap_or(0);
            let v = (x + p - mul_mod(b, y, p)) % p;
            (v != 0).then_some(v)
        })
    }

    fn normalize(&self, row: &mut Row<u64>) {
        if let Some(&(_, lead)) = row.first() {
            if lead != 1 {
                let inv = pow_mod(lead, self.p - 2, self.p);
                for (_, v) in row.iter_mut() {
                    *v = mul_mod(*v, inv, self.p);
                }
            }
        }
    }
}

struct Echelon<R: Ring> {
    ring: R,
    pivots: Vec<Option<Row<R::E>>>,
    rank: usize,
}

impl<R: Ring> Echelon<R> {
    fn new(ring: R, ncols: usize) -> Self {
        Echelon { ring, pivots: vec![None; ncols], rank: 0 }
    }

    fn insert(&mut self, mut row: Row<R::E>) {
        while let Some(&(c, _)) = row.first() {
            match &self.pivots[c] {
                Some(p) => {
                    row = self.ring.combine(&row, p, c);
                    self.ring.normalize(&mut row);
                }
                None => {
                    self.ring.normalize(&mut row);
                    self.pivots[c] = Some(row);
                    self.rank += 1;
                    return;
                }
            }
        }
    }

    /// Reduced rows in increasing pivot order.
    fn reduce(mut self) -> Vec<(usize, Row<R::E>)> {
        let cols: Vec<usize> = (0..self.pivots.len()).filter(|&c| self.pivots[c].is_some()).collect();
        for (k, &c) in cols.iter().enumerate().rev() {
            let pivot = self.pivots[c].take().expect("pivot");
            for &c2 in &cols[..k] {
                let row = self.pivots[c2].as_ref().expect("pivot");
                if entry_at(row, c).is_some() {
                    let mut r = self.ring.combine(row, &pivot, c);
                    self.ring.normalize(&mut r);
                    self.pivots[c2] = Some(r);
                }
            }
            self.pivots[c] = Some(pivot);
        }
        cols.into_iter().map(|c| (c, self.pivots[c].take().expect("pivot"))).collect()
    }
}

fn rational_row(row: &[(usize, Scalar)]) -> Row<BigInt> {
    let mut den = BigInt::one();
    for (_, s) in row {
        let q = s.as_rational().expect("rational entry");
        den = den.lcm(q.denom());
    }
    row.iter()
        .map(|(c, s)| {
            let q = s.as_rational().expect("rational entry");
            (*c, q.numer() * (&den / q.denom()))
        })
        .collect()
}

fn modular_row(row: &[(usize, Scalar)]) -> Row<u64> {
    row.iter()
        .map(|(c, s)| match s {
            Scalar::Modular { value, .. } => (*c, *value),
            Scalar::Rational(_) => panic!("rational entry in prime-field row"),
        })
        .collect()
}

fn sorted_rows(mut rows: Vec<Vec<(usize, Scalar)>>) -> Vec<Vec<(usize, Scalar)>> {
    for r in rows.iter_mut() {
        r.retain(|(_, s)| !s.is_zero());
        r.sort_by_key(|e| e.0);
    }
    rows.retain(|r| !r.is_empty());
    rows.sort_by_key(|r| (r.len(), r[0].0));
    rows
}

/// Rank of the matrix whose sparse rows are given.
pub fn sparse_rank(field: Field, ncols: usize, rows: Vec<Vec<(usize, Scalar)>>) -> usize {
    let rows = sorted_rows(rows);
    match field {
        Field::Rational => {
            let mut e = Echelon::new(IntRing, ncols);
            for r in &rows {
                e.insert(rational_row(r));
            }
            e.rank
        }
        Field::Prime(p) => {
            let mut e = Echelon::new(ModRing { p }, ncols);
            for r in &rows {
                e.insert(modular_row(r));
            }
            e.rank
        }
    }
}

/// Reduced row echelon form in sparse form: pivot rows are monic and pivot columns are clean.
#[derive(Clone, Debug)]
pub struct SparseRref {
    pub field: Field,
    pub ncols: usize,
    pub pivots: Vec<usize>,
    pub rows: Vec<Vec<(usize, Scalar)>>,
}

pub fn sparse_rref(field: Field, ncols: usize, rows: Vec<Vec<(usize, Scalar)>>) -> SparseRref {
    let rows = sorted_rows(rows);
    let reduced: Vec<(usize, Vec<(usize, Scalar)>)> = match field {
        Field::Rational => {
            let mut e = Echelon::new(IntRing, ncols);
            for r in &rows {
                e.insert(rational_row(r));
            }
            e.reduce()
                .into_iter()
                .map(|(c, row)| {
                    let lead = row[0].1.clone();
                    let out = row
                        .into_iter()
                        .map(|(j, v)| (j, Scalar::Rational(BigRational::new(v, lead.clone()))))
                        .collect();
                    (c, out)
                })
                .collect()
        }
        Field::Prime(p) => {
            let mut e = Echelon::new(ModRing { p }, ncols);
            for r in &rows {
                e.insert(modular_row(r));
            }
            e.reduce()
                .into_iter()
                .map(|(c, row)| {
                    let out = row.into_iter().map(|(j, value)| (j, Scalar::Modular { value, modulus: p })).collect();
                    (c, out)
                })
                .collect()
        }
    };
    let (pivots, rows) = reduced.into_iter().unzip();
    SparseRref { field, ncols, pivots, rows }
}

impl SparseRref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ncols];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        (0..self.ncols).filter(|&c| !is_pivot[c]).collect()
    }

    /// Null-space basis as columns: one vector per free column, in increasing order,
    /// with a one in that column and zeros in the other free columns.
    pub fn kernel_basis(&self) -> crate::linalg::Matrix {
        let free = self.free_columns();
        let mut position = vec![usize::MAX; self.ncols];
        for (k, &c) in free.iter().enumerate() {
            position[c] = k;
        }
        let mut m = crate::linalg::Matrix::zeros(self.field, self.ncols, free.len());
        for (k, &c) in free.iter().enumerate() {
            m.set(c, k, self.field.one());
        }
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            for (j, v) in row {
                if *j != p {
                    m.set(p, position[*j], -v);
                }
            }
        }
        m
    }

    pub fn to_dense(&self) -> crate::linalg::Matrix {
        let mut m = crate::linalg::Matrix::zeros(self.field, self.rows.len(), self.ncols);
        for (i, row) in self.rows.iter().enumerate() {
            for (j, v) in row {
                m.set(i, *j, v.clone());
            }
        }
        m
    }
}
