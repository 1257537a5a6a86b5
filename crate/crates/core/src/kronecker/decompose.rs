use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rand::Rng;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::kronecker::label::{make_indec, IndecLabel, Param};
use crate::linalg::{self, pencil_minor_poly, rational_roots, Field, Matrix, Scalar};
use crate::rep::{certify_direct_sum, direct_sum, hom_basis, hom_dim, Morphism, Representation, SubspaceFamily};

/// Multiset of indecomposable labels.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Decomposition {
    terms: BTreeMap<IndecLabel, usize>,
}

impl Decomposition {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (IndecLabel, usize)>) -> Self {
        let mut d = Self::new();
        for (l, k) in terms {
            d.add(l, k);
        }
        d
    }

    pub fn single(label: IndecLabel) -> Self {
        Self::from_terms([(label, 1)])
    }

    /// Adds `mult` copies; zero multiplicities leave no term.
    pub fn add(&mut self, label: IndecLabel, mult: usize) {
        if mult > 0 {
            *self.terms.entry(label).or_insert(0) += mult;
        }
    }

    pub fn terms(&self) -> &BTreeMap<IndecLabel, usize> {
        &self.terms
    }

    pub fn multiplicity(&self, label: &IndecLabel) -> usize {
        self.terms.get(label).copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of summands counted with multiplicity.
    pub fn summand_count(&self) -> usize {
        self.terms.values().sum()
    }

    pub fn dim_vector(&self) -> [usize; 2] {
        self.terms.iter().fold([0, 0], |[x, y], (l, k)| {
            let [a, b] = l.dim_vector();
            [x + k * a, y + k * b]
        })
    }

    pub fn labels(&self) -> impl Iterator<Item = &IndecLabel> {
        self.terms.keys()
    }

    /// Every label repeated according to its multiplicity.
    pub fn expanded(&self) -> Vec<IndecLabel> {
        self.terms.iter().flat_map(|(l, k)| std::iter::repeat_n(l.clone(), *k)).collect()
    }

    /// The direct sum of canonical representatives.
    pub fn build(&self, field: Field) -> Result<Representation> {
        let parts = self.expanded().iter().map(|l| make_indec(field, l)).collect::<Result<Vec<_>>>()?;
        if parts.is_empty() {
            return Ok(Representation::zero(crate::kronecker::kronecker_quiver(), field));
        }
        Ok(direct_sum(&parts)?.sum)
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> =
            self.terms.iter().map(|(l, k)| if *k == 1 { l.to_string() } else { format!("{l}^{k}") }).collect();
        write!(f, "{}", parts.join(" ⊕ "))
    }
}

impl Serialize for Decomposition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term {
            label: String,
            multiplicity: usize,
        }
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (l, k) in &self.terms {
            seq.serialize_element(&Term { label: l.to_string(), multiplicity: *k })?;
        }
        seq.end()
    }
}

pub(crate) fn check_kronecker(m: &Representation) -> Result<()> {
    if m.quiver().is_kronecker() {
        Ok(())
    } else {
        Err(Error::NotKronecker)
    }
}

/// `λα − β`, or `α` at infinity.
fn pencil_at(m: &Representation, p: &Param) -> Matrix {
    let (alpha, beta) = (m.map(0), m.map(1));
    match p {
        Param::Finite(l) => alpha.scale(l).sub(beta).expect("pencil shapes agree"),
        Param::Infinity => alpha.clone(),
    }
}

fn sample_points(field: Field) -> impl Iterator<Item = Param> {
    let finite = field.size().map_or(usize::MAX, |p| p as usize);
    std::iter::once(Param::Infinity).chain((0..finite).map(move |i| Param::Finite(field.node(i))))
}

/// Generic rank of the pencil `xα − β`, or `None` if the field has too few points to certify it.
pub fn normal_rank(m: &Representation) -> Result<Option<usize>> {
    check_kronecker(m)?;
    let (a, b) = (m.dim(0), m.dim(1));
    if a == 0 || b == 0 {
        return Ok(Some(0));
    }
    let field = m.field();
    let upper = linalg::rank(&Matrix::hstack(field, b, &[m.map(0).clone(), m.map(1).clone()])?)
        .min(linalg::rank(&Matrix::vstack(field, a, &[m.map(0).clone(), m.map(1).clone()])?));
    let mut best = 0;
    let mut tested = 0;
    for p in sample_points(field) {
        if best == upper || tested > upper {
            break;
        }
        best = best.max(linalg::rank(&pencil_at(m, &p)));
        tested += 1;
    }
    Ok((best == upper || tested > upper).then_some(best))
}

/// Parameters at which the pencil drops below its generic rank `r`. Over ℚ a modular search
/// proposes the candidates unless `exact` asks for the rational roots of a pencil minor.
fn regular_candidates(m: &Representation, r: usize, exact: bool) -> Result<Vec<Param>> {
    if r == 0 {
        return Ok(Vec::new());
    }
    let field = m.field();
    let drops = |p: &Param| linalg::rank(&pencil_at(m, p)) < r;
    if let Some(all) = Param::all(field) {
        return Ok(all.into_iter().filter(|p| drops(p)).collect());
    }
    let mut at = None;
    for i in 0..=r {
        let p = pencil_at(m, &Param::Finite(field.node(i)));
        if linalg::rank(&p) == r {
            at = Some((i, p));
            break;
        }
    }
    let (i, p) = at.ok_or_else(|| Error::Internal("no sample attains the generic rank".into()))?;
    let cols = linalg::pivot_columns(&p);
    let rows = linalg::pivot_columns(&p.transpose());
    let (a, b) = (m.map(0).select(&rows, &cols), m.map(1).select(&rows, &cols));
    let fast = if exact { None } else { linalg::pencil_root_candidates(&a, &b, &field.node(i)) };
    let roots = match fast {
        Some(roots) => roots,
        None => rational_roots(&pencil_minor_poly(m.map(0), m.map(1), &rows, &cols)?)?,
    };
    let mut out: Vec<Param> = roots.into_iter().map(Param::Finite).filter(|p| drops(p)).collect();
    out.sort();
    out.dedup();
    if drops(&Param::Infinity) {
        out.push(Param::Infinity);
    }
    Ok(out)
}

/// Memoised `dim Hom(M, Z)` for indecomposable `Z`.
struct Probe<'a> {
    m: &'a Representation,
    cache: HashMap<IndecLabel, usize>,
}

impl<'a> Probe<'a> {
    fn new(m: &'a Representation) -> Self {
        Probe { m, cache: HashMap::new() }
    }

    fn hom(&mut self, z: &IndecLabel) -> Result<usize> {
        if let Some(&h) = self.cache.get(z) {
            return Ok(h);
        }
        let h = hom_dim(self.m, &make_indec(self.m.field(), z)?)?;
        self.cache.insert(z.clone(), h);
        Ok(h)
    }

    fn hom_opt(&mut self, z: Option<IndecLabel>) -> Result<i64> {
        match z {
            Some(z) => Ok(self.hom(&z)? as i64),
            None => Ok(0),
        }
    }

    /// Mesh formula: `h(Z) − h(E) + h(τZ)`, or `h(Z) − h(rad Z)` for projective `Z`.
    fn multiplicity(&mut self, z: &IndecLabel) -> Result<usize> {
        let hz = self.hom(z)? as i64;
        let mut middle = 0;
        for e in z.mesh_middle() {
            middle += self.hom(&e)? as i64;
        }
        let mult = hz - middle + self.hom_opt(z.tau())?;
        usize::try_from(mult).map_err(|_| Error::Internal(format!("negative multiplicity {mult} for {z}")))
    }
}

/// Number of summands of `M` isomorphic to `z`.
pub fn multiplicity(z: &IndecLabel, m: &Representation) -> Result<usize> {
    check_kronecker(m)?;
    Probe::new(m).multiplicity(z)
}

/// Parameters `λ` for which some `R_n(λ)` is a summand of `M`.
pub fn regular_parameters(m: &Representation) -> Result<Vec<Param>> {
    let d = decompose(m)?;
    let mut out: Vec<Param> = Vec::new();
    for l in d.labels() {
        if let Some(p) = l.param() {
            if !out.contains(p) {
                out.push(p.clone());
            }
        }
    }
    Ok(out)
}

/// Krull-Schmidt decomposition of a Kronecker representation.
///
/// Fails with `IncompleteFactorization` (carrying the summands found) when the regular part
/// has eigenvalues outside the base field.
pub fn decompose(m: &Representation) -> Result<Decomposition> {
    check_kronecker(m)?;
    let (a, b) = (m.dim(0), m.dim(1));
    let mut found = Decomposition::new();
    if a + b == 0 {
        return Ok(found);
    }
    let mut probe = Probe::new(m);
    let Some(r) = normal_rank(m)? else {
        return decompose_by_scan(m, &mut probe);
    };

    let mut need = b - r;
    let mut n = 0;
    while need > 0 {
        if n >= b {
            return Err(Error::Internal("preprojective summands not located".into()));
        }
        let z = IndecLabel::P(n);
        let k = probe.multiplicity(&z)?;
        found.add(z, k);
        need = need.checked_sub(k).ok_or_else(|| Error::Internal("too many preprojective summands".into()))?;
        n += 1;
    }
    let mut need = a - r;
    let mut n = 0;
    while need > 0 {
        if n >= a {
            return Err(Error::Internal("preinjective summands not located".into()));
        }
        let z = IndecLabel::I(n);
        let k = probe.multiplicity(&z)?;
        found.add(z, k);
        need = need.checked_sub(k).ok_or_else(|| Error::Internal("too many preinjective summands".into()))?;
        n += 1;
    }

    let [fx, fy] = found.dim_vector();
    if fx > a || fy > b || a - fx != b - fy {
        return Err(Error::Internal("non-regular summands do not fit the dimension vector".into()));
    }
    let size = a - fx;
    if size == 0 {
        return Ok(found);
    }
    let (mut regular, mut left) = split_regular(m, r, size, &mut probe, false)?;
    if left > 0 && m.field() == Field::Rational {
        (regular, left) = split_regular(m, r, size, &mut probe, true)?;
    }
    for (z, k) in regular.terms() {
        found.add(z.clone(), *k);
    }
    if left > 0 {
        return Err(Error::IncompleteFactorization { found: Box::new(found) });
    }
    Ok(found)
}

/// Regular summands of total dimension up to `size` with parameters among the candidates,
/// and the dimension left unaccounted for.
fn split_regular(
    m: &Representation,
    r: usize,
    size: usize,
    probe: &mut Probe<'_>,
    exact: bool,
) -> Result<(Decomposition, usize)> {
    let params = regular_candidates(m, r, exact)?;
    let mut found = Decomposition::new();
    let mut left = size;
    'outer: for n in 1..=size {
        for p in &params {
            let z = IndecLabel::R(n, p.clone());
            let k = probe.multiplicity(&z)?;
            found.add(z, k);
            left = left.checked_sub(n * k).ok_or_else(|| Error::Internal("regular summands overflow".into()))?;
            if left == 0 {
                break 'outer;
            }
        }
    }
    Ok((found, left))
}

/// Tries every label in order of total dimension; used when the field is too small to sample
/// the pencil's generic rank.
fn decompose_by_scan(m: &Representation, probe: &mut Probe<'_>) -> Result<Decomposition> {
    let (a, b) = (m.dim(0), m.dim(1));
    let params = Param::all(m.field()).ok_or_else(|| Error::Internal("rank sampling failed over ℚ".into()))?;
    let mut found = Decomposition::new();
    for t in 1..=a + b {
        let mut labels = Vec::new();
        if t % 2 == 1 {
            labels.push(IndecLabel::P(t / 2));
            labels.push(IndecLabel::I(t / 2));
        } else {
            labels.extend(params.iter().map(|p| IndecLabel::R(t / 2, p.clone())));
        }
        for z in labels {
            let k = probe.multiplicity(&z)?;
            found.add(z, k);
        }
        if found.dim_vector() == [a, b] {
            return Ok(found);
        }
    }
    Err(Error::Internal("summands do not account for the dimension vector".into()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct IsoVerdict {
    pub isomorphic: bool,
    /// False when only Hom-dimension fingerprints could be compared.
    pub certain: bool,
}

/// Isomorphism by comparing decompositions; falls back to Hom fingerprints when a regular
/// part cannot be split over the base field.
pub fn iso_test(m: &Representation, n: &Representation) -> Result<IsoVerdict> {
    m.check_compatible(n)?;
    check_kronecker(m)?;
    if m.dims() != n.dims() {
        return Ok(IsoVerdict { isomorphic: false, certain: true });
    }
    match (decompose(m), decompose(n)) {
        (Ok(x), Ok(y)) => Ok(IsoVerdict { isomorphic: x == y, certain: true }),
        (x, y) => {
            let mut partial = Vec::new();
            for r in [x, y] {
                match r {
                    Ok(d) => partial.push(d),
                    Err(Error::IncompleteFactorization { found }) => partial.push(*found),
                    Err(e) => return Err(e),
                }
            }
            fingerprint_verdict(m, n, &partial)
        }
    }
}

fn fingerprint_verdict(m: &Representation, n: &Representation, partial: &[Decomposition]) -> Result<IsoVerdict> {
    let field = m.field();
    let mut probes = vec![m.clone(), n.clone()];
    let [a, b] = [m.dim(0), m.dim(1)];
    for k in 0..=a.max(b) {
        probes.push(make_indec(field, &IndecLabel::P(k))?);
        probes.push(make_indec(field, &IndecLabel::I(k))?);
    }
    for d in partial {
        for l in d.labels() {
            probes.push(make_indec(field, l)?);
        }
    }
    for x in &probes {
        if hom_dim(m, x)? != hom_dim(n, x)? || hom_dim(x, m)? != hom_dim(x, n)? {
            return Ok(IsoVerdict { isomorphic: false, certain: true });
        }
    }
    Ok(IsoVerdict { isomorphic: true, certain: false })
}

fn random_scalar<R: Rng>(field: Field, rng: &mut R) -> Scalar {
    match field.size() {
        Some(p) => field.from_int(rng.gen_range(0..p) as i64),
        None => field.from_int(rng.gen_range(-9..=9)),
    }
}

/// Random linear combination of a Hom basis.
pub fn random_morphism<R: Rng>(m: &Representation, n: &Representation, rng: &mut R) -> Result<Morphism> {
    let basis = hom_basis(m, n)?;
    let mut f = Morphism::zero(m, n);
    for g in &basis.basis {
        f = f.add(&g.scale(&random_scalar(m.field(), rng)))?;
    }
    Ok(f)
}

/// Realises `dec` inside `k`: one injective morphism per summand copy whose images form a
/// direct-sum decomposition of `k`, checked by the direct-sum certifier. `None` if no such
/// family was found within the attempt budget.
pub fn embed_decomposition<R: Rng>(
    k: &Representation,
    dec: &Decomposition,
    rng: &mut R,
    attempts: usize,
) -> Result<Option<Vec<(IndecLabel, Morphism)>>> {
    check_kronecker(k)?;
    if dec.dim_vector() != [k.dim(0), k.dim(1)] {
        return Ok(None);
    }
    let field = k.field();
    let mut bases = Vec::new();
    for l in dec.labels() {
        let z = make_indec(field, l)?;
        bases.push((l.clone(), hom_basis(&z, k)?));
    }
    for _ in 0..attempts {
        let mut maps = Vec::new();
        for (l, basis) in &bases {
            for _ in 0..dec.multiplicity(l) {
                let mut f = Morphism::zero(&basis.source, k);
                for g in &basis.basis {
                    f = f.add(&g.scale(&random_scalar(field, rng)))?;
                }
                maps.push((l.clone(), f));
            }
        }
        let families: Vec<SubspaceFamily> =
            maps.iter().map(|(_, f)| SubspaceFamily { spans: f.comps().to_vec() }).collect();
        if certify_direct_sum(k, &families)? {
            return Ok(Some(maps));
        }
    }
    Ok(None)
}
