//! Ground truth that does not go through the determinant identities:
//! a direct linear-algebra search for `g` with `Jac(f, g) = 1`, a generator
//! of known automorphism components, and a scanner that looks for curves
//! satisfying family B but not family A.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::algebra::{rat, MPoly, Monomial, Rational, Var};
use crate::keller::{identities_a, identities_b, identities_m3, jacobian, CurveF};

/// Exhaustive scans are limited to this many values per coefficient.
pub const EXHAUSTIVE_RANGE_LIMIT: usize = 5;
pub const SAMPLE_LIMIT: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("scan supports m in 2..=4, got {0}")]
    UnsupportedDegree(usize),
    #[error("empty coefficient range {0}..={1}")]
    EmptyRange(i64, i64),
}

/// Search space for `g` in [`keller_oracle_linear`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreeBounds {
    /// Maximal y-degree of `g`.
    pub degy_g: usize,
    /// Maximal x-degree of every y-coefficient of `g`.
    pub degx_b: usize,
}

impl DegreeBounds {
    /// `deg_y g <= m` and x-degree `2 m^2`, enough for everything the
    /// Cramer formulas can produce when `deg a_i <= i`.
    pub fn for_degree(m: usize) -> DegreeBounds {
        DegreeBounds {
            degy_g: m,
            degx_b: 2 * m * m,
        }
    }
}

type SparseRow = BTreeMap<usize, Rational>;

/// Solves a sparse linear system over the rationals, setting every free
/// unknown to zero. `None` if the system is inconsistent.
pub fn solve_sparse(
    equations: Vec<(SparseRow, Rational)>,
    unknowns: usize,
) -> Option<Vec<Rational>> {
    // Pivot rows keyed by their smallest unknown, normalized to 1 there.
    let mut pivots: BTreeMap<usize, (SparseRow, Rational)> = BTreeMap::new();
    for (mut row, mut rhs) in equations {
        loop {
            let Some((&lead, coeff)) = row.iter().next() else {
                if !rhs.is_zero() {
                    return None;
                }
                break;
            };
            let coeff = coeff.clone();
            match pivots.get(&lead) {
                Some((prow, prhs)) => {
                    for (j, c) in prow {
                        let entry = row.entry(*j).or_insert_with(Rational::zero);
                        *entry -= c * &coeff;
                        if entry.is_zero() {
                            row.remove(j);
                        }
                    }
                    rhs -= prhs * &coeff;
                }
                None => {
                    let inv = coeff.recip();
                    for c in row.values_mut() {
                        *c *= &inv;
                    }
                    rhs *= &inv;
                    pivots.insert(lead, (row, rhs));
                    break;
                }
            }
        }
    }
    let mut solution = vec![Rational::zero(); unknowns];
    for (&p, (row, rhs)) in pivots.iter().rev() {
        let mut value = rhs.clone();
        for (j, c) in row.range(p + 1..) {
            value -= c * &solution[*j];
        }
        solution[p] = value;
    }
    Some(solution)
}

/// Looks for `g = Σ c_{e,d} x^d y^e` (`e <= degy_g`, `d <= degx_b`) with
/// `Jac(f, g) = 1` by equating coefficients. Free parameters are pinned to
/// zero.
pub fn keller_oracle_linear(f: &CurveF, bounds: DegreeBounds) -> Option<MPoly> {
    let fp = f.to_poly();
    let (fx, fy) = (fp.derivative(Var::X), fp.derivative(Var::Y));
    let width = bounds.degx_b + 1;
    let unknowns = (bounds.degy_g + 1) * width;
    let mut equations: BTreeMap<Monomial, SparseRow> = BTreeMap::new();
    for e in 0..=bounds.degy_g {
        for d in 0..=bounds.degx_b {
            let col = e * width + d;
            // Jac(f, x^d y^e) = e f_x x^d y^{e-1} - d f_y x^{d-1} y^e
            let mut contrib = MPoly::zero();
            if e > 0 {
                let mono = MPoly::term(Monomial([d as u32, e as u32 - 1, 0, 0]), rat(e as i64));
                contrib += &(&fx * &mono);
            }
            if d > 0 {
                let mono = MPoly::term(Monomial([d as u32 - 1, e as u32, 0, 0]), rat(d as i64));
                contrib -= &(&fy * &mono);
            }
            for (m, c) in contrib.terms() {
                equations.entry(*m).or_default().insert(col, c.clone());
            }
        }
    }
    if !equations.contains_key(&Monomial::ONE) {
        return None;
    }
    let system = equations
        .into_iter()
        .map(|(m, row)| {
            let rhs = if m == Monomial::ONE {
                Rational::one()
            } else {
                Rational::zero()
            };
            (row, rhs)
        })
        .collect();
    let solution = solve_sparse(system, unknowns)?;
    let g = MPoly::from_terms(solution.into_iter().enumerate().map(|(col, c)| {
        let (e, d) = (col / width, col % width);
        (Monomial([d as u32, e as u32, 0, 0]), c)
    }));
    debug_assert_eq!(jacobian(&fp, &g).ok(), Some(MPoly::one()));
    Some(g)
}

/// Parameters of `f = x + p(y + q(x))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusSpec {
    /// Monic `p`, ascending coefficients, `deg p = m >= 2`.
    pub p: Vec<Rational>,
    /// `q = q.0 + q.1 x`.
    pub q: (Rational, Rational),
}

impl CorpusSpec {
    /// `p_lower` are the coefficients of `t^0..t^{m-1}`; the `t^m` one is 1.
    pub fn from_ints(p_lower: &[i64], q0: i64, q1: i64) -> CorpusSpec {
        let mut p: Vec<Rational> = p_lower.iter().map(|&c| rat(c)).collect();
        p.push(Rational::one());
        CorpusSpec {
            p,
            q: (rat(q0), rat(q1)),
        }
    }

    pub fn m(&self) -> usize {
        self.p.len() - 1
    }
}

/// `f = x + p(y + q(x))`, the first coordinate of an automorphism whose
/// second coordinate is `y + q(x)`. Returns `(f, y + q(x))`.
pub fn corpus_components(spec: &CorpusSpec) -> (CurveF, MPoly) {
    assert!(
        spec.m() >= 2 && spec.p.last().is_some_and(One::is_one),
        "p must be monic of degree >= 2"
    );
    let q = MPoly::univariate(Var::X, &[spec.q.0.clone(), spec.q.1.clone()]);
    let partner = &MPoly::y() + &q;
    let p = MPoly::univariate(Var::Y, &spec.p);
    let f = &p.substitute(Var::Y, &partner) + &MPoly::x();
    let (curve, _) = CurveF::from_poly(&f).expect("composition is monic in y");
    (curve, partner)
}

/// Every corpus spec of y-degree `m` with lower `p` coefficients in
/// `p_range` and both `q` coefficients in `q_range`.
pub fn corpus_family(m: usize, p_range: (i64, i64), q_range: (i64, i64)) -> Vec<CorpusSpec> {
    let mut out = Vec::new();
    for p_lower in grid(m, p_range) {
        for q in grid(2, q_range) {
            out.push(CorpusSpec::from_ints(&p_lower, q[0], q[1]));
        }
    }
    out
}

/// All integer vectors of length `len` with entries in `lo..=hi`.
fn grid(len: usize, (lo, hi): (i64, i64)) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|v| {
                (lo..=hi).map(move |c| {
                    let mut w = v.clone();
                    w.push(c);
                    w
                })
            })
            .collect();
    }
    out
}

fn curve_from_coefficients(m: usize, flat: &[i64], zero_a1: bool) -> CurveF {
    let mut a = Vec::with_capacity(m);
    let mut pos = 0;
    for i in 1..=m {
        if zero_a1 && i == 1 {
            a.push(MPoly::zero());
            continue;
        }
        let cs: Vec<Rational> = flat[pos..pos + i + 1].iter().map(|&c| rat(c)).collect();
        pos += i + 1;
        a.push(MPoly::univariate(Var::X, &cs));
    }
    CurveF::new(a).expect("m >= 2")
}

/// Number of free integer coefficients of a curve with `deg a_i <= i`.
fn coefficient_count(m: usize, zero_a1: bool) -> usize {
    (1..=m)
        .filter(|&i| !(zero_a1 && i == 1))
        .map(|i| i + 1)
        .sum()
}

/// Every curve of y-degree `m` with `deg a_i <= i` and integer coefficients
/// in `range`, optionally with `a_1 = 0`.
pub fn enumerate_curves(
    m: usize,
    range: (i64, i64),
    zero_a1: bool,
) -> impl Iterator<Item = CurveF> {
    grid(coefficient_count(m, zero_a1), range)
        .into_iter()
        .map(move |flat| curve_from_coefficients(m, &flat, zero_a1))
}

/// A random curve with `deg a_i <= i` and coefficients in `range`.
pub fn random_curve<R: Rng>(rng: &mut R, m: usize, range: (i64, i64), zero_a1: bool) -> CurveF {
    let flat: Vec<i64> = (0..coefficient_count(m, zero_a1))
        .map(|_| rng.gen_range(range.0..=range.1))
        .collect();
    curve_from_coefficients(m, &flat, zero_a1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Budget {
    Exhaustive,
    Samples { count: usize, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanReport {
    pub m: usize,
    pub tested: usize,
    pub b_pass: usize,
    pub a_pass: usize,
    /// Curves satisfying family B but not family A, sorted by rendering.
    pub counterexamples: Vec<CurveF>,
    /// For `m = 3`: curves where the closed-form cubic conditions disagree
    /// with each other or with the full identity families.
    pub closed_form_mismatches: Vec<CurveF>,
}

/// Scans curves with `a_1 = 0` and `deg a_i <= i` for instances where
/// family B holds but family A does not.
pub fn implication_scan(
    m: usize,
    range: (i64, i64),
    budget: Budget,
) -> Result<ScanReport, OracleError> {
    if !(2..=4).contains(&m) {
        return Err(OracleError::UnsupportedDegree(m));
    }
    if range.0 > range.1 {
        return Err(OracleError::EmptyRange(range.0, range.1));
    }
    let width = (range.1 - range.0 + 1) as usize;
    let curves: Box<dyn Iterator<Item = CurveF>> = match budget {
        Budget::Exhaustive => {
            if m > 3 || width > EXHAUSTIVE_RANGE_LIMIT {
                return Err(OracleError::BudgetExceeded(format!(
                    "exhaustive scans need m <= 3 and at most {EXHAUSTIVE_RANGE_LIMIT} values per coefficient"
                )));
            }
            Box::new(enumerate_curves(m, range, true))
        }
        Budget::Samples { count, seed } => {
            if count > SAMPLE_LIMIT {
                return Err(OracleError::BudgetExceeded(format!(
                    "at most {SAMPLE_LIMIT} samples"
                )));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let sampled: Vec<CurveF> = (0..count)
                .map(|_| random_curve(&mut rng, m, range, true))
                .collect();
            Box::new(sampled.into_iter())
        }
    };
    let mut report = ScanReport {
        m,
        tested: 0,
        b_pass: 0,
        a_pass: 0,
        counterexamples: Vec::new(),
        closed_form_mismatches: Vec::new(),
    };
    for f in curves {
        let a = identities_a(&f).iter().all(|r| r.holds);
        let b = identities_b(&f).iter().all(|r| r.holds);
        report.tested += 1;
        report.a_pass += a as usize;
        report.b_pass += b as usize;
        if b && !a {
            report.counterexamples.push(f.clone());
        }
        if m == 3 {
            let closed = identities_m3(&f.a(2), &f.a(3)).expect("coefficients are in x");
            if closed.a3_holds != a || closed.b3_holds != b || a != b {
                report.closed_form_mismatches.push(f);
            }
        }
    }
    report.counterexamples.sort_by_key(|f| f.to_string());
    report.closed_form_mismatches.sort_by_key(|f| f.to_string());
    Ok(report)
}
