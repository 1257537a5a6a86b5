use std::collections::{HashSet, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::kronecker::closed::{closed_form_hom_dim, cross_family_hom_dim};
use crate::kronecker::decompose::{decompose, Decomposition};
use crate::rep::{ev_kernel, hom_dim, Representation};

#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    /// Decomposition over the Kronecker quiver, otherwise the dimension vector.
    pub description: String,
    pub dims: Vec<usize>,
    pub total_dim: usize,
    pub hom_from_m: usize,
    pub hom_from_n: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct BongartzVerdict {
    pub isomorphic: bool,
    pub witness: Option<Witness>,
    /// `(dim M)² dim N` in total dimensions.
    pub bound: usize,
    /// Distinct objects in the test set when the search stopped.
    pub objects: usize,
}

fn describe(x: &Representation) -> String {
    if x.quiver().is_kronecker() {
        if let Ok(d) = decompose(x) {
            return d.to_string();
        }
    }
    format!("{:?}", x.dims())
}

/// Isomorphism class key (the decomposition over the Kronecker quiver, else the exact
/// matrices) together with the decomposition when there is one.
fn class_key(x: &Representation) -> (String, Option<Decomposition>) {
    if x.quiver().is_kronecker() {
        if let Ok(d) = decompose(x) {
            return (format!("D {d}"), Some(d));
        }
    }
    let maps: Vec<Vec<Vec<String>>> = x.maps().iter().map(|m| m.to_strings()).collect();
    (format!("E {:?} {:?}", x.dims(), maps), None)
}

/// `Σ_x a_x b_x − Σ_a a_{sa} b_{ta}`, a lower bound for `dim Hom(A, B)` over an acyclic quiver.
fn euler_form(a: &Representation, b: &Representation) -> i64 {
    let vertices: i64 = a.dims().iter().zip(b.dims()).map(|(&x, &y)| (x * y) as i64).sum();
    let arrows: i64 = a.quiver().arrows().iter().map(|r| (a.dim(r.source) * b.dim(r.target)) as i64).sum();
    vertices - arrows
}

/// A lower bound for `dim Hom(A, B)`: exact from the closed forms when both decompositions
/// are known, otherwise the Euler form.
fn hom_lower_bound(
    a: &Representation,
    b: &Representation,
    da: Option<&Decomposition>,
    db: Option<&Decomposition>,
) -> usize {
    let euler = usize::try_from(euler_form(a, b)).unwrap_or(0);
    let (Some(da), Some(db)) = (da, db) else { return euler };
    let mut h = 0;
    for (x, mx) in da.terms() {
        for (y, my) in db.terms() {
            h += mx * my * closed_form_hom_dim(x, y).or_else(|| cross_family_hom_dim(x, y)).unwrap_or(0);
        }
    }
    h.max(euler)
}

/// Whether `ker ev[A][B]`, of total dimension at least `h·dim A − dim B`, must exceed `bound`.
fn too_large(h: usize, a: &Representation, b: &Representation, bound: usize) -> bool {
    (h * a.total_dim()).saturating_sub(b.total_dim()) > bound
}

struct Closure<'a> {
    m: &'a Representation,
    n: &'a Representation,
    bound: usize,
    budget: usize,
    seen: HashSet<String>,
    objects: Vec<Representation>,
    decompositions: Vec<Option<Decomposition>>,
}

impl Closure<'_> {
    /// Adds `x` unless it is too large or already present; returns a separating witness if found.
    fn adjoin(&mut self, x: Representation) -> Result<Option<Witness>> {
        if x.is_zero() || x.total_dim() > self.bound {
            return Ok(None);
        }
        let (key, decomposition) = class_key(&x);
        if !self.seen.insert(key) {
            return Ok(None);
        }
        let (hm, hn) = (hom_dim(self.m, &x)?, hom_dim(self.n, &x)?);
        if hm != hn {
            return Ok(Some(Witness {
                description: describe(&x),
                dims: x.dims().to_vec(),
                total_dim: x.total_dim(),
                hom_from_m: hm,
                hom_from_n: hn,
            }));
        }
        if self.objects.len() >= self.budget {
            return Err(Error::BudgetExceeded { budget: self.budget, separated: false });
        }
        self.objects.push(x);
        self.decompositions.push(decomposition);
        Ok(None)
    }
}

/// Compares `dim Hom(M, X)` and `dim Hom(N, X)` over the closure of `{M, N} ∪ generators` under
/// kernels of evaluation maps, keeping objects of total dimension at most `(dim M)² dim N`.
///
/// Stops at the first separating object. Fails with `BudgetExceeded` once more than `budget`
/// distinct objects accumulate without separation.
pub fn bongartz_test(
    m: &Representation,
    n: &Representation,
    generators: &[Representation],
    budget: usize,
) -> Result<BongartzVerdict> {
    m.check_compatible(n)?;
    for g in generators {
        m.check_compatible(g)?;
    }
    let bound = m.total_dim().pow(2) * n.total_dim();
    let mut c = Closure { m, n, bound, budget, seen: HashSet::new(), objects: Vec::new(), decompositions: Vec::new() };
    let verdict = |c: &Closure, witness: Option<Witness>| BongartzVerdict {
        isomorphic: witness.is_none(),
        witness,
        bound,
        objects: c.objects.len(),
    };

    for x in [m, n].into_iter().chain(generators) {
        if let Some(w) = c.adjoin(x.clone())? {
            return Ok(verdict(&c, Some(w)));
        }
    }
    let mut pairs: VecDeque<(usize, usize)> = VecDeque::new();
    let mut queued = 0;
    loop {
        while queued < c.objects.len() {
            let k = queued;
            for j in 0..=k {
                pairs.push_back((k, j));
                if j != k {
                    pairs.push_back((j, k));
                }
            }
            queued += 1;
        }
        let Some((i, j)) = pairs.pop_front() else { break };
        let (a, b) = (&c.objects[i], &c.objects[j]);
        let lower =
            hom_lower_bound(a, b, c.decompositions[i].as_ref(), c.decompositions[j].as_ref()).max(usize::from(i == j));
        if too_large(lower, a, b, bound) {
            continue;
        }
        let h = hom_dim(a, b)?;
        if h == 0 || too_large(h, a, b, bound) {
            continue;
        }
        let (k, _) = ev_kernel(a, b)?;
        if let Some(w) = c.adjoin(k)? {
            return Ok(verdict(&c, Some(w)));
        }
    }
    Ok(verdict(&c, None))
}
