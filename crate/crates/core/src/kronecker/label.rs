use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, Scalar};
use crate::quiver::Quiver;
use crate::rep::Representation;

/// Shared instance of the Kronecker quiver `x ⇉ y` with arrows `alpha`, `beta`.
pub fn kronecker_quiver() -> Arc<Quiver> {
    static Q: OnceLock<Arc<Quiver>> = OnceLock::new();
    Q.get_or_init(|| Arc::new(Quiver::kronecker())).clone()
}

/// Eigenvalue of a regular indecomposable: a field element or infinity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Param {
    Finite(Scalar),
    Infinity,
}

impl Param {
    pub fn field(&self) -> Option<Field> {
        match self {
            Param::Finite(s) => Some(s.field()),
            Param::Infinity => None,
        }
    }

    /// Parses `inf` or a scalar; the flag reports a prime-field reduction.
    pub fn parse(field: Field, s: &str) -> Result<(Param, bool)> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("inf") || t == "∞" {
            return Ok((Param::Infinity, false));
        }
        let (v, changed) = field.parse_scalar_reporting(t)?;
        Ok((Param::Finite(v), changed))
    }

    /// Every parameter of a prime field, infinity last.
    pub fn all(field: Field) -> Option<Vec<Param>> {
        let mut out: Vec<Param> = field.elements()?.into_iter().map(Param::Finite).collect();
        out.push(Param::Infinity);
        Some(out)
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Param::Finite(s) => write!(f, "{s}"),
            Param::Infinity => write!(f, "inf"),
        }
    }
}

/// Indecomposable Kronecker representations: preprojective `P_n`, regular `R_n(λ)`, preinjective `I_n`.
///
/// Ordered by family (`P < R < I`), then parameter, then index.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum IndecLabel {
    P(usize),
    R(usize, Param),
    I(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    P,
    R,
    I,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::P => "P",
            Family::R => "R",
            Family::I => "I",
        };
        write!(f, "{s}")
    }
}

impl IndecLabel {
    pub fn family(&self) -> Family {
        match self {
            IndecLabel::P(_) => Family::P,
            IndecLabel::R(..) => Family::R,
            IndecLabel::I(_) => Family::I,
        }
    }

    pub fn index(&self) -> usize {
        match self {
            IndecLabel::P(n) | IndecLabel::R(n, _) | IndecLabel::I(n) => *n,
        }
    }

    pub fn param(&self) -> Option<&Param> {
        match self {
            IndecLabel::R(_, p) => Some(p),
            _ => None,
        }
    }

    /// `(dim at x, dim at y)`.
    pub fn dim_vector(&self) -> [usize; 2] {
        match self {
            IndecLabel::P(n) => [*n, n + 1],
            IndecLabel::R(n, _) => [*n, *n],
            IndecLabel::I(n) => [n + 1, *n],
        }
    }

    pub fn total_dim(&self) -> usize {
        let [a, b] = self.dim_vector();
        a + b
    }

    pub fn is_projective(&self) -> bool {
        matches!(self, IndecLabel::P(0 | 1))
    }

    pub fn is_injective(&self) -> bool {
        matches!(self, IndecLabel::I(0 | 1))
    }

    /// `τZ`, or `None` when `Z` is projective.
    pub fn tau(&self) -> Option<IndecLabel> {
        match self {
            IndecLabel::P(n) => n.checked_sub(2).map(IndecLabel::P),
            IndecLabel::R(..) => Some(self.clone()),
            IndecLabel::I(n) => Some(IndecLabel::I(n + 2)),
        }
    }

    /// `τ⁻¹Z`, or `None` when `Z` is injective.
    pub fn tau_inverse(&self) -> Option<IndecLabel> {
        match self {
            IndecLabel::P(n) => Some(IndecLabel::P(n + 2)),
            IndecLabel::R(..) => Some(self.clone()),
            IndecLabel::I(n) => n.checked_sub(2).map(IndecLabel::I),
        }
    }

    /// Middle term of the almost split sequence ending in `Z` (for non-projective `Z`).
    pub fn mesh_middle(&self) -> Vec<IndecLabel> {
        match self {
            IndecLabel::P(n) if *n >= 1 => vec![IndecLabel::P(n - 1); 2],
            IndecLabel::P(_) => Vec::new(),
            IndecLabel::I(n) => vec![IndecLabel::I(n + 1); 2],
            IndecLabel::R(n, l) => {
                let mut v = Vec::new();
                if *n > 1 {
                    v.push(IndecLabel::R(n - 1, l.clone()));
                }
                v.push(IndecLabel::R(n + 1, l.clone()));
                v
            }
        }
    }

    /// Parses `P3`, `I0`, `R2@5`, `R2@-1/3`, `R1@inf`; also returns a warning when a
    /// parameter was reduced into the prime field.
    pub fn parse(field: Field, s: &str) -> Result<(IndecLabel, Option<String>)> {
        let t = s.trim();
        let bad = || Error::Parse(format!("bad label `{s}` (expected P<n>, I<n> or R<n>@<param>)"));
        let mut chars = t.chars();
        let head = chars.next().ok_or_else(bad)?;
        let rest = chars.as_str();
        let index = |x: &str| x.trim().parse::<usize>().map_err(|_| bad());
        match head.to_ascii_uppercase() {
            'P' => Ok((IndecLabel::P(index(rest)?), None)),
            'I' => Ok((IndecLabel::I(index(rest)?), None)),
            'R' => {
                let (n, p) = rest.split_once('@').ok_or_else(bad)?;
                let n = index(n)?;
                if n == 0 {
                    return Err(Error::Parse(format!("regular label `{s}` needs index at least 1")));
                }
                let (param, changed) = Param::parse(field, p)?;
                let warning = changed.then(|| format!("parameter `{}` reduced to {param} in {field}", p.trim()));
                Ok((IndecLabel::R(n, param), warning))
            }
            _ => Err(bad()),
        }
    }

    pub fn parse_quiet(field: Field, s: &str) -> Result<IndecLabel> {
        Ok(IndecLabel::parse(field, s)?.0)
    }
}

impl Ord for IndecLabel {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.family(), self.param(), self.index()).cmp(&(other.family(), other.param(), other.index()))
    }
}

impl PartialOrd for IndecLabel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for IndecLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IndecLabel::P(n) => write!(f, "P{n}"),
            IndecLabel::I(n) => write!(f, "I{n}"),
            IndecLabel::R(n, p) => write!(f, "R{n}@{p}"),
        }
    }
}

/// Canonical matrices of an indecomposable over `field`.
pub fn make_indec(field: Field, label: &IndecLabel) -> Result<Representation> {
    let q = kronecker_quiver();
    let one = |i: usize, j: usize| if i == j { field.one() } else { field.zero() };
    let (dims, alpha, beta) = match label {
        IndecLabel::P(n) => {
            let n = *n;
            let a = Matrix::from_fn(field, n + 1, n, one);
            let b = Matrix::from_fn(field, n + 1, n, |i, j| one(i, j + 1));
            (vec![n, n + 1], a, b)
        }
        IndecLabel::I(n) => {
            let n = *n;
            let a = Matrix::from_fn(field, n, n + 1, one);
            let b = Matrix::from_fn(field, n, n + 1, |i, j| one(i + 1, j));
            (vec![n + 1, n], a, b)
        }
        IndecLabel::R(n, p) => {
            if *n == 0 {
                return Err(Error::Parse("regular indecomposables have index at least 1".into()));
            }
            match p {
                Param::Finite(l) => {
                    if l.field() != field {
                        return Err(Error::ParameterNotInField(format!("{l} ({})", l.field())));
                    }
                    (vec![*n, *n], Matrix::identity(field, *n), Matrix::jordan_block(*n, l))
                }
                Param::Infinity => (vec![*n, *n], Matrix::jordan_block(*n, &field.zero()), Matrix::identity(field, *n)),
            }
        }
    };
    Representation::new(q, field, dims, vec![alpha, beta])
}

/// Every label with index at most `max_index`: `P_0..`, `R_1..(λ)` for each parameter, `I_0..`.
pub fn labels_up_to(max_index: usize, params: &[Param]) -> Vec<IndecLabel> {
    let mut out: Vec<IndecLabel> = (0..=max_index).map(IndecLabel::P).collect();
    for p in params {
        out.extend((1..=max_index).map(|n| IndecLabel::R(n, p.clone())));
    }
    out.extend((0..=max_index).map(IndecLabel::I));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rational;

    #[test]
    fn parse_and_display() {
        for s in ["P3", "I0", "R2@5", "R2@-1/3", "R1@inf"] {
            let (l, w) = IndecLabel::parse(Q, s).unwrap();
            assert_eq!(l.to_string(), s);
            assert!(w.is_none());
        }
        assert!(IndecLabel::parse(Q, "R0@1").is_err());
        assert!(IndecLabel::parse(Q, "Q3").is_err());
        assert!(IndecLabel::parse(Q, "R2").is_err());
    }

    #[test]
    fn prime_field_parameter_reduced_with_warning() {
        let f = Field::Prime(5);
        let (l, w) = IndecLabel::parse(f, "R1@7").unwrap();
        assert_eq!(l.to_string(), "R1@2");
        assert!(w.is_some());
    }

    #[test]
    fn canonical_matrices() {
        let p2 = make_indec(Q, &IndecLabel::P(2)).unwrap();
        assert_eq!(p2.dims(), &[2, 3]);
        assert_eq!(p2.map(0), &Matrix::from_ints(Q, &[&[1, 0], &[0, 1], &[0, 0]]));
        assert_eq!(p2.map(1), &Matrix::from_ints(Q, &[&[0, 0], &[1, 0], &[0, 1]]));
        let i1 = make_indec(Q, &IndecLabel::I(1)).unwrap();
        assert_eq!(i1.map(0), &Matrix::from_ints(Q, &[&[1, 0]]));
        assert_eq!(i1.map(1), &Matrix::from_ints(Q, &[&[0, 1]]));
        let r = make_indec(Q, &IndecLabel::parse_quiet(Q, "R2@3").unwrap()).unwrap();
        assert_eq!(r.map(1), &Matrix::from_ints(Q, &[&[3, 1], &[0, 3]]));
        let r = make_indec(Q, &IndecLabel::parse_quiet(Q, "R2@inf").unwrap()).unwrap();
        assert_eq!(r.map(0), &Matrix::from_ints(Q, &[&[0, 1], &[0, 0]]));
        assert_eq!(r.map(1), &Matrix::identity(Q, 2));
    }

    #[test]
    fn first_indecomposables_are_projectives_and_injectives() {
        let q = kronecker_quiver();
        assert_eq!(make_indec(Q, &IndecLabel::P(1)).unwrap(), Representation::projective(q.clone(), Q, 0));
        assert_eq!(make_indec(Q, &IndecLabel::P(0)).unwrap(), Representation::projective(q.clone(), Q, 1));
        assert_eq!(make_indec(Q, &IndecLabel::I(0)).unwrap(), Representation::injective(q.clone(), Q, 0));
        assert_eq!(make_indec(Q, &IndecLabel::I(1)).unwrap(), Representation::injective(q, Q, 1));
    }

    #[test]
    fn parameter_field_checked() {
        let l = IndecLabel::R(1, Param::Finite(Field::Prime(5).one()));
        assert!(matches!(make_indec(Q, &l), Err(Error::ParameterNotInField(_))));
    }

    #[test]
    fn meshes_count_each_indecomposable_once() {
        let params = [Param::Finite(Q.zero()), Param::Finite(Q.one()), Param::Infinity];
        let labels = labels_up_to(5, &params);
        let reps: Vec<Representation> = labels.iter().map(|l| make_indec(Q, l).unwrap()).collect();
        let hom =
            |y: &Representation, z: &IndecLabel| crate::rep::hom_dim(y, &make_indec(Q, z).unwrap()).unwrap() as i64;
        for z in labels.iter().filter(|z| !z.is_projective()) {
            let (e, tz) = (z.mesh_middle(), z.tau().unwrap());
            let [zx, zy] = z.dim_vector();
            let [tx, ty] = tz.dim_vector();
            let ex: usize = e.iter().map(|l| l.dim_vector()[0]).sum();
            let ey: usize = e.iter().map(|l| l.dim_vector()[1]).sum();
            assert_eq!((ex, ey), (zx + tx, zy + ty), "{z}");
            for (y, ry) in labels.iter().zip(&reps) {
                let defect = hom(ry, z) - e.iter().map(|l| hom(ry, l)).sum::<i64>() + hom(ry, &tz);
                assert_eq!(defect, i64::from(y == z), "{y} against the mesh ending in {z}");
            }
        }
    }
}
