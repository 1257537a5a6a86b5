use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::matrix::Matrix;
use crate::linalg::scalar::{is_prime, Field, Scalar};

/// Univariate polynomial, coefficients from the constant term up, without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn new(field: Field, mut coeffs: Vec<Scalar>) -> Poly {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn zero(field: Field) -> Poly {
        Poly { field, coeffs: Vec::new() }
    }

    pub fn from_ints(field: Field, coeffs: &[i64]) -> Poly {
        Poly::new(field, coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        self.coeffs.iter().rev().fold(self.field.zero(), |acc, c| &(&acc * x) + c)
    }

    pub fn derivative(&self) -> Poly {
        let coeffs = self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * &self.field.from_int(i as i64)).collect();
        Poly::new(self.field, coeffs)
    }

    pub fn monic(&self) -> Poly {
        match self.coeffs.last() {
            None => self.clone(),
            Some(lead) => {
                let inv = lead.inv().expect("nonzero leading coefficient");
                Poly::new(self.field, self.coeffs.iter().map(|c| c * &inv).collect())
            }
        }
    }

    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let inv = d.coeffs[dd].inv().expect("nonzero leading coefficient");
        let mut r = self.coeffs.clone();
        let mut q = vec![self.field.zero(); r.len().saturating_sub(dd)];
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let c = &r[r.len() - 1] * &inv;
            for (i, dc) in d.coeffs.iter().enumerate() {
                r[k + i] = &r[k + i] - &(&c * dc);
            }
            q[k] = c;
            r.pop();
            while r.last().is_some_and(Scalar::is_zero) {
                r.pop();
            }
        }
        (Poly::new(self.field, q), Poly::new(self.field, r))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Newton interpolation through `(nodes[i], values[i])`; nodes must be distinct.
    pub fn interpolate(field: Field, nodes: &[Scalar], values: &[Scalar]) -> Poly {
        let n = nodes.len();
        let mut dd = values.to_vec();
        for j in 1..n {
            for i in (j..n).rev() {
                let num = &dd[i] - &dd[i - 1];
                let den = &nodes[i] - &nodes[i - j];
                dd[i] = num.checked_div(&den).expect("distinct nodes");
            }
        }
        let mut acc = Poly::zero(field);
        for i in (0..n).rev() {
            let shifted = acc.times_linear(&nodes[i]);
            let mut c = shifted.coeffs;
            if c.is_empty() {
                c.push(field.zero());
            }
            c[0] = &c[0] + &dd[i];
            acc = Poly::new(field, c);
        }
        acc
    }

    /// `self * (x - a)`.
    fn times_linear(&self, a: &Scalar) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![self.field.zero(); self.coeffs.len() + 1];
        for (i, v) in self.coeffs.iter().enumerate() {
            c[i + 1] = &c[i + 1] + v;
            c[i] = &c[i] - &(v * a);
        }
        Poly::new(self.field, c)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => c.to_string(),
                1 => format!("({c})x"),
                _ => format!("({c})x^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// Determinant of the square minor `x*alpha[rows, cols] - beta[rows, cols]` as a polynomial in x,
/// interpolated from its values at the nodes `0, 1, ..., r`.
pub fn pencil_minor_poly(alpha: &Matrix, beta: &Matrix, rows: &[usize], cols: &[usize]) -> Result<Poly> {
    if rows.len() != cols.len() {
        return Err(Error::DimensionMismatch("pencil minor must be square".into()));
    }
    if alpha.shape() != beta.shape() {
        return Err(Error::DimensionMismatch("pencil matrices differ in shape".into()));
    }
    let field = alpha.field();
    let r = rows.len();
    if let Some(size) = field.size() {
        if size <= r as u64 {
            return Err(Error::FieldTooSmall { size, needed: r + 1 });
        }
    }
    let a = alpha.select(rows, cols);
    let b = beta.select(rows, cols);
    let nodes: Vec<Scalar> = (0..=r).map(|i| field.node(i)).collect();
    let values = nodes.iter().map(|x| crate::linalg::determinant(&a.scale(x).sub(&b)?)).collect::<Result<Vec<_>>>()?;
    Ok(Poly::interpolate(field, &nodes, &values))
}

/// All roots in the base field, sorted: rational-root theorem over the rationals,
/// exhaustive evaluation over a prime field.
pub fn rational_roots(poly: &Poly) -> Result<Vec<Scalar>> {
    if poly.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    match poly.field {
        Field::Prime(_) => {
            Ok(poly.field.elements().expect("finite field").into_iter().filter(|x| poly.eval(x).is_zero()).collect())
        }
        Field::Rational => rational_roots_q(poly),
    }
}

fn rational_roots_q(poly: &Poly) -> Result<Vec<Scalar>> {
    let field = poly.field;
    let mut f = poly.clone();
    if f.degree().unwrap_or(0) > 0 {
        let g = f.gcd(&f.derivative());
        f = f.div_rem(&g).0;
    }
    let mut roots = Vec::new();
    if f.coeffs.first().is_some_and(Scalar::is_zero) {
        roots.push(field.zero());
        f = Poly::new(field, f.coeffs[1..].to_vec());
    }
    if f.degree().unwrap_or(0) == 0 {
        return Ok(roots);
    }
    let ints = primitive_integer_coeffs(&f);
    let a0 = ints[0].abs();
    let an = ints[ints.len() - 1].abs();
    let numerators = divisors(&a0)?;
    let denominators = divisors(&an)?;
    let mut found = Vec::new();
    for p in &numerators {
        for q in &denominators {
            if !p.gcd(q).is_one() {
                continue;
            }
            for sign in [1, -1] {
                let cand = Scalar::Rational(BigRational::new(p * BigInt::from(sign), q.clone()));
                if f.eval(&cand).is_zero() {
                    found.push(cand);
                }
            }
        }
    }
    roots.extend(found);
    roots.sort();
    roots.dedup();
    Ok(roots)
}

fn primitive_integer_coeffs(f: &Poly) -> Vec<BigInt> {
    let den = f.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.as_rational().expect("rational").denom()));
    let ints: Vec<BigInt> = f
        .coeffs
        .iter()
        .map(|c| {
            let q = c.as_rational().expect("rational");
            q.numer() * (&den / q.denom())
        })
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    ints.into_iter().map(|c| c / &g).collect()
}

const TRIAL_LIMIT: u64 = 1 << 20;

fn divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let mut rest = n.abs();
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    let mut d = 2u64;
    while d <= TRIAL_LIMIT && BigInt::from(d) * BigInt::from(d) <= rest {
        let bd = BigInt::from(d);
        let mut e = 0;
        while (&rest % &bd).is_zero() {
            rest /= &bd;
            e += 1;
        }
        if e > 0 {
            factors.push((bd, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if rest > BigInt::one() {
        let small_enough = rest <= BigInt::from(TRIAL_LIMIT) * BigInt::from(TRIAL_LIMIT);
        let prime = small_enough || rest.to_u64().is_some_and(is_prime);
        if !prime {
            return Err(Error::Factorization(rest.to_string()));
        }
        factors.push((rest, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in factors {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        divs = next;
    }
    Ok(divs)
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rational;

    fn qs(s: &str) -> Scalar {
        Q.parse_scalar(s).unwrap()
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let p = Poly::from_ints(Q, &[3, 0, -2, 1]);
        let nodes: Vec<Scalar> = (0..4).map(|i| Q.node(i)).collect();
        let values: Vec<Scalar> = nodes.iter().map(|x| p.eval(x)).collect();
        assert_eq!(Poly::interpolate(Q, &nodes, &values), p);
    }

    #[test]
    fn pencil_minor_of_p1() {
        let alpha = Matrix::from_ints(Q, &[&[1], &[0]]);
        let beta = Matrix::from_ints(Q, &[&[0], &[1]]);
        let p = pencil_minor_poly(&alpha, &beta, &[0], &[0]).unwrap();
        assert_eq!(p, Poly::from_ints(Q, &[0, 1]));
    }

    #[test]
    fn pencil_minor_needs_enough_nodes() {
        let f = Field::Prime(2);
        let a = Matrix::identity(f, 2);
        let r = pencil_minor_poly(&a, &a, &[0, 1], &[0, 1]);
        assert!(matches!(r, Err(Error::FieldTooSmall { size: 2, needed: 3 })));
    }

    #[test]
    fn roots_over_rationals() {
        let p = Poly::from_ints(Q, &[-2, 1, 1]);
        assert_eq!(rational_roots(&p).unwrap(), vec![qs("-2"), qs("1")]);
        let p = Poly::from_ints(Q, &[-1, 0, 2]);
        assert_eq!(rational_roots(&p).unwrap(), Vec::<Scalar>::new());
        let p = Poly::from_ints(Q, &[0, 0, -1, 3]);
        assert_eq!(rational_roots(&p).unwrap(), vec![qs("0"), qs("1/3")]);
        assert!(matches!(rational_roots(&Poly::zero(Q)), Err(Error::ZeroPolynomial)));
    }

    #[test]
    fn roots_over_prime_field() {
        let f = Field::Prime(5);
        let p = Poly::from_ints(f, &[-1, 0, 1]);
        let roots: Vec<String> = rational_roots(&p).unwrap().iter().map(|s| s.to_string()).collect();
        assert_eq!(roots, ["1", "4"]);
    }

    #[test]
    fn repeated_roots_reported_once() {
        let p = Poly::from_ints(Q, &[1, -2, 1]).div_rem(&Poly::from_ints(Q, &[1])).0;
        let cube = Poly::from_ints(Q, &[-1, 3, -3, 1]);
        assert_eq!(rational_roots(&p).unwrap(), vec![qs("1")]);
        assert_eq!(rational_roots(&cube).unwrap(), vec![qs("1")]);
    }

    #[test]
    fn gcd_and_division() {
        let a = Poly::from_ints(Q, &[-1, 0, 1]);
        let b = Poly::from_ints(Q, &[1, 1]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q, Poly::from_ints(Q, &[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(a.gcd(&Poly::from_ints(Q, &[-1, 1])), Poly::from_ints(Q, &[-1, 1]));
    }
}
