use std::fmt::Write as _;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::kronecker::closed::{
    closed_form_hom_dim, cross_family_hom_dim, kerev_p1_exponent, predicted_kernel, predicted_kernel_single_formula,
    surjectivity_expected,
};
use crate::kronecker::decompose::{decompose, embed_decomposition, Decomposition};
use crate::kronecker::label::{labels_up_to, make_indec, IndecLabel, Param};
use crate::linalg::{self, Field, Matrix};
use crate::rep::{evaluation_morphism, kernel};

#[derive(Clone, Debug)]
pub struct TableOptions {
    pub field: Field,
    pub max_m: usize,
    pub max_n: usize,
    pub lambdas: Vec<Param>,
    pub jobs: usize,
    /// Also realise each computed kernel decomposition as explicit subspaces and run the
    /// direct-sum certifier on it.
    pub certify: bool,
    pub seed: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct PatternRecord {
    pub row: String,
    pub m: String,
    pub n: String,
    pub lambda: Option<String>,
    pub condition: String,
    pub hom_dim: usize,
    pub hom_expected: Option<usize>,
    pub predicted: Decomposition,
    /// `None` when the kernel could not be split over the base field.
    pub computed: Option<Decomposition>,
    pub kernel_dims: Vec<usize>,
    pub matched: bool,
    /// Agreement with the single-formula reading of the regular-to-preinjective row.
    pub single_formula_matched: Option<bool>,
    pub surjective: Option<bool>,
    pub certified: Option<bool>,
    pub micros: u128,
}

impl PatternRecord {
    pub fn hom_ok(&self) -> bool {
        self.hom_expected.is_none_or(|e| e == self.hom_dim)
    }

    pub fn ok(&self) -> bool {
        self.matched && self.hom_ok() && self.surjective != Some(false) && self.certified != Some(false)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct KerevP1Record {
    pub n: String,
    pub exponent: usize,
    pub dim_ker_alpha_beta: usize,
    pub computed: Option<Decomposition>,
    pub matched: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PatternReport {
    pub field: String,
    pub max_m: usize,
    pub max_n: usize,
    pub lambdas: Vec<String>,
    pub records: Vec<PatternRecord>,
    pub kerev_p1: Vec<KerevP1Record>,
    pub mismatches: usize,
    pub hom_failures: usize,
    pub surjectivity_failures: usize,
    pub certification_failures: usize,
}

impl PatternReport {
    pub fn all_ok(&self) -> bool {
        self.mismatches == 0
            && self.hom_failures == 0
            && self.surjectivity_failures == 0
            && self.certification_failures == 0
            && self.kerev_p1.iter().all(|r| r.matched)
    }

    /// Aligned text table with columns M, N, predicted kernel, computed kernel, conditions.
    pub fn to_text(&self) -> String {
        let mut rows: Vec<[String; 6]> =
            vec![["M".into(), "N".into(), "predicted".into(), "computed".into(), "conditions".into(), "ok".into()]];
        for r in &self.records {
            rows.push([
                r.m.clone(),
                r.n.clone(),
                r.predicted.to_string(),
                r.computed.as_ref().map_or("incomplete".into(), |d| d.to_string()),
                format!("{}: {}", r.row, r.condition),
                if r.ok() { "yes".into() } else { "NO".into() },
            ]);
        }
        let widths: Vec<usize> = (0..6).map(|c| rows.iter().map(|r| r[c].chars().count()).max().unwrap_or(0)).collect();
        let mut out = String::new();
        for r in &rows {
            let cells: Vec<String> =
                r.iter().zip(&widths).map(|(s, w)| format!("{s}{}", " ".repeat(w - s.chars().count()))).collect();
            let _ = writeln!(out, "{}", cells.join("  ").trim_end());
        }
        let _ = writeln!(out);
        for r in &self.kerev_p1 {
            let _ = writeln!(
                out,
                "ker ev[P1][{}]: exponent {} dim ker [α β] {} computed {} {}",
                r.n,
                r.exponent,
                r.dim_ker_alpha_beta,
                r.computed.as_ref().map_or("incomplete".into(), |d| d.to_string()),
                if r.matched { "yes" } else { "NO" }
            );
        }
        let _ = writeln!(
            out,
            "{} cells, {} kernel mismatches, {} hom failures, {} surjectivity failures, {} certification failures",
            self.records.len(),
            self.mismatches,
            self.hom_failures,
            self.surjectivity_failures,
            self.certification_failures
        );
        out
    }
}

/// Family pair and the tabulated condition selecting the formula for `(m, n)`.
pub fn table_row(m: &IndecLabel, n: &IndecLabel) -> (String, String) {
    use IndecLabel::*;
    let row = format!("{}→{}", m.family(), n.family());
    let cond = match (m, n) {
        (P(a), P(b)) if b > a && *a >= 1 => "n > m ≥ 1",
        (P(a), R(..)) | (P(a), I(_)) if *a >= 1 => "m ≥ 1",
        (R(_, l), R(_, u)) if l != u => "distinct parameters",
        (R(a, _), R(b, _)) => {
            if a <= b {
                "m ≤ n"
            } else {
                "m > n"
            }
        }
        (R(a, _), I(b)) => {
            if *a < b + 1 {
                "m < n+1"
            } else {
                "m ≥ n+1"
            }
        }
        (I(a), I(b)) if a > b => "m > n ≥ 0",
        _ => "all other kernels are 0",
    };
    (row, cond.into())
}

fn pool(jobs: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::Internal(format!("thread pool: {e}")))
}

fn check_params(field: Field, lambdas: &[Param]) -> Result<()> {
    for p in lambdas {
        if let Some(f) = p.field() {
            if f != field {
                return Err(Error::ParameterNotInField(format!("{p} ({f})")));
            }
        }
    }
    Ok(())
}

fn cell(opts: &TableOptions, index: usize, m: &IndecLabel, n: &IndecLabel) -> Result<PatternRecord> {
    let start = Instant::now();
    let field = opts.field;
    let mm = make_indec(field, m)?;
    let nn = make_indec(field, n)?;
    let ev = evaluation_morphism(&mm, &nn)?;
    let (k, _) = kernel(&ev.map)?;
    let computed = match decompose(&k) {
        Ok(d) => Some(d),
        Err(Error::IncompleteFactorization { .. }) => None,
        Err(e) => return Err(e),
    };
    let predicted = predicted_kernel(m, n);
    let matched = computed.as_ref() == Some(&predicted);
    let single_formula_matched = matches!((m, n), (IndecLabel::R(..), IndecLabel::I(_)))
        .then(|| computed.as_ref() == Some(&predicted_kernel_single_formula(m, n)));
    let surjective = surjectivity_expected(m, n).then(|| ev.map.is_surjective());
    let certified = match (&computed, opts.certify) {
        (Some(d), true) => {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ (index as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
            Some(embed_decomposition(&k, d, &mut rng, 20)?.is_some())
        }
        _ => None,
    };
    let (row, condition) = table_row(m, n);
    Ok(PatternRecord {
        row,
        m: m.to_string(),
        n: n.to_string(),
        lambda: m.param().or(n.param()).map(|p| p.to_string()),
        condition,
        hom_dim: ev.basis.dim(),
        hom_expected: closed_form_hom_dim(m, n).or_else(|| cross_family_hom_dim(m, n)),
        predicted,
        computed,
        kernel_dims: k.dims().to_vec(),
        matched,
        single_formula_matched,
        surjective,
        certified,
        micros: start.elapsed().as_micros(),
    })
}

/// `ker ev[P_1][N] ≅ P_0^{dim ker [α_N β_N]}` for every indecomposable `N` up to `max_total`.
pub fn verify_kerev_p1(field: Field, lambdas: &[Param], max_total: usize) -> Result<Vec<KerevP1Record>> {
    check_params(field, lambdas)?;
    let labels: Vec<IndecLabel> =
        labels_up_to(max_total, lambdas).into_iter().filter(|l| l.total_dim() <= max_total).collect();
    let p1 = make_indec(field, &IndecLabel::P(1))?;
    let mut out = Vec::new();
    for n in labels {
        let nn = make_indec(field, &n)?;
        let ab = Matrix::hstack(field, nn.dim(1), &[nn.map(0).clone(), nn.map(1).clone()])?;
        let dim_ker = ab.cols() - linalg::rank(&ab);
        let (k, _) = kernel(&evaluation_morphism(&p1, &nn)?.map)?;
        let computed = decompose(&k).ok();
        let expected = Decomposition::from_terms([(IndecLabel::P(0), dim_ker)]);
        let exponent = kerev_p1_exponent(&n);
        out.push(KerevP1Record {
            n: n.to_string(),
            exponent,
            dim_ker_alpha_beta: dim_ker,
            matched: computed.as_ref() == Some(&expected) && exponent == dim_ker,
            computed,
        });
    }
    Ok(out)
}

/// Computes and decomposes `ker ev[M][N]` for every ordered pair of indecomposables with
/// `M` of index at most `max_m` and `N` of index at most `max_n`, and compares with the table.
pub fn verify_pattern_table(opts: &TableOptions) -> Result<PatternReport> {
    if opts.max_m == 0 || opts.max_n == 0 {
        return Err(Error::DimensionMismatch("table bounds must be at least 1".into()));
    }
    check_params(opts.field, &opts.lambdas)?;
    let ms = labels_up_to(opts.max_m, &opts.lambdas);
    let ns = labels_up_to(opts.max_n, &opts.lambdas);
    let pairs: Vec<(IndecLabel, IndecLabel)> =
        ms.iter().flat_map(|m| ns.iter().map(move |n| (m.clone(), n.clone()))).collect();
    let records = pool(opts.jobs)?
        .install(|| pairs.par_iter().enumerate().map(|(i, (m, n))| cell(opts, i, m, n)).collect::<Result<Vec<_>>>())?;
    let kerev_p1 = verify_kerev_p1(opts.field, &opts.lambdas, 2 * opts.max_m.max(opts.max_n) + 1)?;
    Ok(PatternReport {
        field: opts.field.to_string(),
        max_m: opts.max_m,
        max_n: opts.max_n,
        lambdas: opts.lambdas.iter().map(|p| p.to_string()).collect(),
        mismatches: records.iter().filter(|r| !r.matched).count(),
        hom_failures: records.iter().filter(|r| !r.hom_ok()).count(),
        surjectivity_failures: records.iter().filter(|r| r.surjective == Some(false)).count(),
        certification_failures: records.iter().filter(|r| r.certified == Some(false)).count(),
        records,
        kerev_p1,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CxViolation {
    pub m: String,
    pub n: String,
    pub kernel: String,
    pub offending: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CxReport {
    pub lambdas: Vec<String>,
    pub max_index: usize,
    pub pairs: usize,
    pub violations: Vec<CxViolation>,
    /// Pairs whose kernel could not be split over the base field.
    pub undecided: Vec<(String, String)>,
}

impl CxReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty() && self.undecided.is_empty()
    }
}

/// Checks that `ker ev[M][N]` stays inside `add{P_n, I_n, R_n(λ) : λ ∈ X}` for all
/// indecomposables `M`, `N` of that subcategory with index at most `max_index`.
pub fn cx_closure_check(field: Field, lambdas: &[Param], max_index: usize, jobs: usize) -> Result<CxReport> {
    check_params(field, lambdas)?;
    let labels = labels_up_to(max_index, lambdas);
    let pairs: Vec<(&IndecLabel, &IndecLabel)> =
        labels.iter().flat_map(|m| labels.iter().map(move |n| (m, n))).collect();
    let results = pool(jobs)?.install(|| {
        pairs
            .par_iter()
            .map(|(m, n)| -> Result<Option<Decomposition>> {
                let (k, _) = kernel(&evaluation_morphism(&make_indec(field, m)?, &make_indec(field, n)?)?.map)?;
                match decompose(&k) {
                    Ok(d) => Ok(Some(d)),
                    Err(Error::IncompleteFactorization { .. }) => Ok(None),
                    Err(e) => Err(e),
                }
            })
            .collect::<Result<Vec<_>>>()
    })?;
    let mut violations = Vec::new();
    let mut undecided = Vec::new();
    for ((m, n), d) in pairs.iter().zip(results) {
        match d {
            None => undecided.push((m.to_string(), n.to_string())),
            Some(d) => {
                let offending: Vec<String> = d
                    .labels()
                    .filter(|l| l.param().is_some_and(|p| !lambdas.contains(p)))
                    .map(|l| l.to_string())
                    .collect();
                if !offending.is_empty() {
                    violations.push(CxViolation {
                        m: m.to_string(),
                        n: n.to_string(),
                        kernel: d.to_string(),
                        offending,
                    });
                }
            }
        }
    }
    Ok(CxReport {
        lambdas: lambdas.iter().map(|p| p.to_string()).collect(),
        max_index,
        pairs: pairs.len(),
        violations,
        undecided,
    })
}
