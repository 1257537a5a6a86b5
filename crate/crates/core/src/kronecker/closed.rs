use crate::kronecker::decompose::Decomposition;
use crate::kronecker::label::{Family, IndecLabel};

/// `⟨a, b⟩ = a_x b_x + a_y b_y − 2 a_x b_y`, the Euler form of the Kronecker quiver.
pub fn euler_form(a: [usize; 2], b: [usize; 2]) -> i64 {
    let [ax, ay] = a.map(|v| v as i64);
    let [bx, by] = b.map(|v| v as i64);
    ax * bx + ay * by - 2 * ax * by
}

/// Closed-form `dim Hom(a, b)` where one is known: within a family, and zero against the
/// ordering `P → R → I`. Forward cross-family pairs return `None`.
pub fn closed_form_hom_dim(a: &IndecLabel, b: &IndecLabel) -> Option<usize> {
    use IndecLabel::*;
    match (a, b) {
        (P(m), P(n)) => Some(if m <= n { n - m + 1 } else { 0 }),
        (I(m), I(n)) => Some(if n <= m { m - n + 1 } else { 0 }),
        (R(m, l), R(n, u)) => Some(if l == u { *m.min(n) } else { 0 }),
        (R(..), P(_)) | (I(_), P(_)) | (I(_), R(..)) => Some(0),
        _ => None,
    }
}

/// `dim Hom(a, b)` for forward cross-family pairs, where Ext vanishes and the Euler form is exact.
pub fn cross_family_hom_dim(a: &IndecLabel, b: &IndecLabel) -> Option<usize> {
    match (a.family(), b.family()) {
        (Family::P, Family::R) | (Family::P, Family::I) | (Family::R, Family::I) => {
            usize::try_from(euler_form(a.dim_vector(), b.dim_vector())).ok()
        }
        _ => None,
    }
}

/// Tabulated `ker ev[M][N]` for indecomposable `M`, `N`.
pub fn predicted_kernel(m: &IndecLabel, n: &IndecLabel) -> Decomposition {
    use IndecLabel::*;
    let mut d = Decomposition::new();
    match (m, n) {
        (P(a), P(b)) if b > a && *a >= 1 => d.add(P(a - 1), b - a),
        (P(a), R(b, _)) if *a >= 1 => d.add(P(a - 1), *b),
        (P(a), I(b)) if *a >= 1 => d.add(P(a - 1), a + b + 1),
        (R(a, l), R(b, u)) if l == u => {
            if a <= b {
                d.add(m.clone(), a - 1);
            } else {
                d.add(R(a - b, l.clone()), 1);
                d.add(m.clone(), b - 1);
            }
        }
        (R(a, _), I(b)) => {
            if *a > *b {
                d.add(P(a - b - 1), 1);
            }
            d.add(m.clone(), a - 1);
        }
        (I(a), I(b)) if a > b => d.add(I(a + 1), a - b),
        _ => {}
    }
    d
}

/// The regular-to-preinjective row read as a single formula
/// `P_{m−n−1} ⊕ R_m^{m−1}` under `m ≥ n+1 or m > 1`, a negative index giving no term.
pub fn predicted_kernel_single_formula(m: &IndecLabel, n: &IndecLabel) -> Decomposition {
    match (m, n) {
        (IndecLabel::R(a, _), IndecLabel::I(b)) => {
            let mut d = Decomposition::new();
            if *a > *b || *a > 1 {
                if let Some(k) = a.checked_sub(b + 1) {
                    d.add(IndecLabel::P(k), 1);
                }
                d.add(m.clone(), a - 1);
            }
            d
        }
        _ => predicted_kernel(m, n),
    }
}

/// `dim ker [α_N β_N]` for indecomposable `N`, which is the power of `P_0` in `ker ev[P_1][N]`.
pub fn kerev_p1_exponent(n: &IndecLabel) -> usize {
    match n {
        IndecLabel::P(k) => k.saturating_sub(1),
        IndecLabel::R(k, _) => *k,
        IndecLabel::I(k) => k + 2,
    }
}

/// Whether `ev[M][N]` is expected to be onto: regular to regular with `m > n`, regular to
/// preinjective with `m ≥ n+1`, preinjective to preinjective with `m > n`.
pub fn surjectivity_expected(m: &IndecLabel, n: &IndecLabel) -> bool {
    use IndecLabel::*;
    match (m, n) {
        (R(a, l), R(b, u)) => l == u && a > b,
        (R(a, _), I(b)) => *a > *b,
        (I(a), I(b)) => a > b,
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kronecker::label::Param;
    use crate::linalg::Field;

    fn lab(s: &str) -> IndecLabel {
        IndecLabel::parse_quiet(Field::Rational, s).unwrap()
    }

    fn show(m: &str, n: &str) -> String {
        predicted_kernel(&lab(m), &lab(n)).to_string()
    }

    #[test]
    fn hom_dimension_examples() {
        assert_eq!(closed_form_hom_dim(&lab("P1"), &lab("P3")), Some(3));
        assert_eq!(closed_form_hom_dim(&lab("I3"), &lab("I1")), Some(3));
        assert_eq!(closed_form_hom_dim(&lab("R2@0"), &lab("R5@0")), Some(2));
        assert_eq!(closed_form_hom_dim(&lab("R2@0"), &lab("R5@1")), Some(0));
        assert_eq!(closed_form_hom_dim(&lab("I0"), &lab("P5")), Some(0));
        assert_eq!(closed_form_hom_dim(&lab("P0"), &lab("I5")), None);
        assert_eq!(cross_family_hom_dim(&lab("P2"), &lab("I3")), Some(5));
        assert_eq!(cross_family_hom_dim(&lab("P2"), &lab("R3@0")), Some(3));
        assert_eq!(cross_family_hom_dim(&lab("R4@0"), &lab("I1")), Some(4));
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(show("P1", "P3"), "P0^2");
        assert_eq!(show("R3@0", "R1@0"), "R2@0");
        assert_eq!(show("R2@5", "I0"), "P1 ⊕ R2@5");
        assert_eq!(show("I2", "I1"), "I3");
        assert_eq!(show("I1", "I0"), "I2");
        assert_eq!(show("P2", "P2"), "0");
        assert_eq!(show("R2@0", "R2@1"), "0");
        assert_eq!(show("P0", "I3"), "0");
    }

    #[test]
    fn both_readings_of_regular_to_preinjective_agree() {
        for a in 1..9 {
            for b in 0..9 {
                let (m, n) = (IndecLabel::R(a, Param::Infinity), IndecLabel::I(b));
                assert_eq!(predicted_kernel(&m, &n), predicted_kernel_single_formula(&m, &n));
            }
        }
    }

    #[test]
    fn predicted_dimensions_match_euler_count() {
        // when ev is onto, dim ker = h·dim M − dim N
        for a in 1..7 {
            for b in 0..a {
                let (m, n) = (IndecLabel::I(a), IndecLabel::I(b));
                let h = closed_form_hom_dim(&m, &n).unwrap();
                let [mx, my] = m.dim_vector();
                let [nx, ny] = n.dim_vector();
                assert_eq!(predicted_kernel(&m, &n).dim_vector(), [h * mx - nx, h * my - ny]);
            }
        }
    }

    #[test]
    fn kerev_p1_exponents() {
        assert_eq!(kerev_p1_exponent(&lab("P0")), 0);
        assert_eq!(kerev_p1_exponent(&lab("P4")), 3);
        assert_eq!(kerev_p1_exponent(&lab("R3@1")), 3);
        assert_eq!(kerev_p1_exponent(&lab("I0")), 2);
    }
}
