#![allow(dead_code)]

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use quivkit::kronecker::{labels_up_to, make_indec, Decomposition, IndecLabel, Param};
use quivkit::linalg::{self, Field, Matrix};
use quivkit::{Quiver, Representation};

pub const Q: Field = Field::Rational;

pub fn lab(field: Field, s: &str) -> IndecLabel {
    IndecLabel::parse_quiet(field, s).unwrap()
}

pub fn indec(field: Field, s: &str) -> Representation {
    make_indec(field, &lab(field, s)).unwrap()
}

/// Direct sum of canonical indecomposables.
pub fn rep(field: Field, labels: &[&str]) -> Representation {
    Decomposition::from_terms(labels.iter().map(|s| (lab(field, s), 1))).build(field).unwrap()
}

pub fn params(field: Field, names: &[&str]) -> Vec<Param> {
    names.iter().map(|s| Param::parse(field, s).unwrap().0).collect()
}

/// Indecomposables with parameters in `params` and total dimension at most `max_total`.
pub fn indecomposables(params: &[Param], max_total: usize) -> Vec<IndecLabel> {
    labels_up_to(max_total, params).into_iter().filter(|l| l.total_dim() <= max_total).collect()
}

pub fn random_scalar<R: Rng>(field: Field, rng: &mut R, spread: i64) -> quivkit::Scalar {
    field.from_int(rng.gen_range(-spread..=spread))
}

pub fn random_matrix<R: Rng>(field: Field, rows: usize, cols: usize, rng: &mut R) -> Matrix {
    Matrix::from_fn(field, rows, cols, |_, _| random_scalar(field, rng, 3))
}

/// Random invertible matrix as a product of unit lower and upper triangular factors.
pub fn random_invertible<R: Rng>(field: Field, n: usize, rng: &mut R) -> Matrix {
    let lower = Matrix::from_fn(field, n, n, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Equal => field.one(),
        std::cmp::Ordering::Greater => random_scalar(field, rng, 2),
        std::cmp::Ordering::Less => field.zero(),
    });
    let upper = Matrix::from_fn(field, n, n, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Equal => field.one(),
        std::cmp::Ordering::Less => random_scalar(field, rng, 2),
        std::cmp::Ordering::Greater => field.zero(),
    });
    let g = lower.mul(&upper).unwrap();
    assert_eq!(linalg::rank(&g), n);
    g
}

pub fn random_base_change<R: Rng>(m: &Representation, rng: &mut R) -> Representation {
    let g: Vec<Matrix> = m.dims().iter().map(|&d| random_invertible(m.field(), d, rng)).collect();
    m.change_basis(&g).unwrap()
}

/// Random multiset of labels from `pool` with total dimension at most `max_total`.
pub fn random_object<R: Rng>(pool: &[IndecLabel], max_total: usize, rng: &mut R) -> Decomposition {
    let target = rng.gen_range(1..=max_total);
    let mut d = Decomposition::new();
    let mut used = 0;
    for _ in 0..8 {
        let fits: Vec<&IndecLabel> = pool.iter().filter(|l| used + l.total_dim() <= target).collect();
        let Some(l) = fits.choose(rng) else { break };
        used += l.total_dim();
        d.add((*l).clone(), 1);
        if rng.gen_bool(0.35) {
            break;
        }
    }
    d
}

pub fn a3() -> Arc<Quiver> {
    Arc::new(Quiver::new(&["1", "2", "3"], &[("a", "1", "2"), ("b", "2", "3")]).unwrap())
}

/// Random representation with vertex dimensions at most `max_dim` and small integer entries.
pub fn random_rep<R: Rng>(q: &Arc<Quiver>, field: Field, max_dim: usize, rng: &mut R) -> Representation {
    let dims: Vec<usize> = (0..q.vertex_count()).map(|_| rng.gen_range(0..=max_dim)).collect();
    let maps = q.arrows().iter().map(|a| random_matrix(field, dims[a.target], dims[a.source], rng)).collect();
    Representation::new(q.clone(), field, dims, maps).unwrap()
}
