//! Machine-readable and text reports.
//!
//! Every key is always present (`null` when a section does not apply) and
//! every number is a string, so JSON output is exact and stable.

use serde::Serialize;

use crate::algebra::{render_rational, MPoly};
use crate::keller::{
    AssociatedG, AssumptionsReport, DetResCheck, IdentityLabel, IdentityReport, M3Report, MatrixM,
    QOracle,
};
use crate::oracles::{DegreeBounds, ScanReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Report {
    pub command: String,
    pub input: Option<String>,
    pub assumptions: Option<AssumptionsSection>,
    pub normalized: Option<String>,
    pub matrix: Option<MatrixSection>,
    pub detres: Option<DetResSection>,
    pub identities: Vec<IdentitySection>,
    pub q: Option<QSection>,
    pub associated: Option<AssociatedSection>,
    pub oracle_b: Option<OracleBSection>,
    pub m3: Option<M3Section>,
    pub scan: Option<ScanSection>,
    pub verdict: bool,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AssumptionsSection {
    pub monic: bool,
    pub degree_bounds: bool,
    pub reduced: bool,
    pub bad_lambda_gcd: String,
    pub bad_lambda_rational_roots: Option<Vec<String>>,
    pub dy_fx_positive: bool,
}

impl From<&AssumptionsReport> for AssumptionsSection {
    fn from(r: &AssumptionsReport) -> Self {
        AssumptionsSection {
            monic: r.monic_form_ok,
            degree_bounds: r.degree_bounds_ok,
            reduced: r.reduced_all_lambda,
            bad_lambda_gcd: r.bad_lambda_gcd.to_string(),
            bad_lambda_rational_roots: r
                .bad_lambda_rational_roots
                .as_ref()
                .map(|roots| roots.iter().map(render_rational).collect()),
            dy_fx_positive: r.dy_fx_positive,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MatrixSection {
    pub entries: Vec<Vec<String>>,
    pub det: String,
    pub k_vanish: String,
}

impl MatrixSection {
    pub fn new(mm: &MatrixM) -> MatrixSection {
        MatrixSection {
            entries: mm
                .matrix
                .rows()
                .iter()
                .map(|row| row.iter().map(MPoly::to_string).collect())
                .collect(),
            det: mm.matrix.determinant().to_string(),
            k_vanish: mm.k_vanish.to_string(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DetResSection {
    /// `checked`, or `skipped` when `f_x = 0`.
    pub status: String,
    pub k: Option<String>,
    pub factor: Option<String>,
    pub det_m: Option<String>,
    pub res: Option<String>,
    pub holds: Option<bool>,
}

impl DetResSection {
    pub fn checked(c: &DetResCheck) -> DetResSection {
        DetResSection {
            status: "checked".into(),
            k: Some(c.k.to_string()),
            factor: Some(render_rational(&c.factor)),
            det_m: Some(c.det_m.to_string()),
            res: Some(c.res.to_string()),
            holds: Some(c.holds),
        }
    }

    pub fn skipped() -> DetResSection {
        DetResSection {
            status: "skipped".into(),
            k: None,
            factor: None,
            det_m: None,
            res: None,
            holds: None,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentitySection {
    pub family: String,
    pub k: String,
    pub i: Option<String>,
    pub j: Option<String>,
    pub residual: String,
    pub holds: bool,
}

impl From<&IdentityReport> for IdentitySection {
    fn from(r: &IdentityReport) -> Self {
        let (family, k, i, j) = match r.label {
            IdentityLabel::A(ix) => ("A", ix.k, Some(ix.i.to_string()), Some(ix.j.to_string())),
            IdentityLabel::B { k } => ("B", k, None, None),
        };
        IdentitySection {
            family: family.into(),
            k: k.to_string(),
            i,
            j,
            residual: r.residual.to_string(),
            holds: r.holds,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct QSection {
    #[serde(rename = "Q")]
    pub q: String,
    #[serde(rename = "N")]
    pub n: String,
    pub coefficients: Vec<String>,
    pub orders: Vec<String>,
    pub component: bool,
}

impl From<&QOracle> for QSection {
    fn from(o: &QOracle) -> Self {
        QSection {
            q: o.data.q.to_string(),
            n: o.data.n.to_string(),
            coefficients: o.data.coefficients.iter().map(MPoly::to_string).collect(),
            orders: o.orders.iter().map(|ord| ord.to_string()).collect(),
            component: o.holds,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AssociatedSection {
    pub b: Vec<String>,
    pub g: String,
    pub jac: String,
    pub r: String,
}

impl From<&AssociatedG> for AssociatedSection {
    fn from(a: &AssociatedG) -> Self {
        AssociatedSection {
            b: a.b.iter().map(MPoly::to_string).collect(),
            g: a.g.to_string(),
            jac: render_rational(&a.jac_value),
            r: render_rational(&a.r),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleBSection {
    pub degy_g: String,
    pub degx_b: String,
    pub found: bool,
    pub g: Option<String>,
}

impl OracleBSection {
    pub fn new(bounds: DegreeBounds, g: Option<&MPoly>) -> OracleBSection {
        OracleBSection {
            degy_g: bounds.degy_g.to_string(),
            degx_b: bounds.degx_b.to_string(),
            found: g.is_some(),
            g: g.map(MPoly::to_string),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct M3Section {
    pub a2: String,
    pub a3: String,
    pub a3_holds: bool,
    pub b3_holds: bool,
    pub shared: String,
    pub a2_second: String,
    pub a3_third: String,
    pub a3_second: String,
}

impl M3Section {
    pub fn new(a2: &MPoly, a3: &MPoly, r: &M3Report) -> M3Section {
        M3Section {
            a2: a2.to_string(),
            a3: a3.to_string(),
            a3_holds: r.a3_holds,
            b3_holds: r.b3_holds,
            shared: r.shared.to_string(),
            a2_second: r.a2_second.to_string(),
            a3_third: r.a3_third.to_string(),
            a3_second: r.a3_second.to_string(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanSection {
    pub m: String,
    pub range: String,
    pub mode: String,
    pub tested: String,
    pub b_pass: String,
    pub a_pass: String,
    pub counterexamples: Vec<String>,
    pub closed_form_mismatches: Vec<String>,
}

impl ScanSection {
    pub fn new(r: &ScanReport, range: (i64, i64), mode: String) -> ScanSection {
        ScanSection {
            m: r.m.to_string(),
            range: format!("{}:{}", range.0, range.1),
            mode,
            tested: r.tested.to_string(),
            b_pass: r.b_pass.to_string(),
            a_pass: r.a_pass.to_string(),
            counterexamples: r.counterexamples.iter().map(|f| f.to_string()).collect(),
            closed_form_mismatches: r
                .closed_form_mismatches
                .iter()
                .map(|f| f.to_string())
                .collect(),
        }
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "true"
    } else {
        "false"
    }
}

fn text(report: &Report) -> String {
    let mut out = Vec::new();
    out.push(format!("command: {}", report.command));
    if let Some(input) = &report.input {
        out.push(format!("input: {input}"));
    }
    if let Some(a) = &report.assumptions {
        out.push(format!(
            "assumptions: monic={} degree_bounds={} reduced={} dy_fx_positive={}",
            yes_no(a.monic),
            yes_no(a.degree_bounds),
            yes_no(a.reduced),
            yes_no(a.dy_fx_positive)
        ));
        out.push(format!("bad lambda gcd (v = lambda): {}", a.bad_lambda_gcd));
    }
    if let Some(n) = &report.normalized {
        out.push(format!("normalized: {n}"));
    }
    if let Some(m) = &report.matrix {
        out.push("matrix M:".into());
        for row in &m.entries {
            out.push(format!("  [{}]", row.join(", ")));
        }
        out.push(format!("det M: {}", m.det));
        out.push(format!("k_vanish: {}", m.k_vanish));
    }
    if let Some(d) = &report.detres {
        match (&d.k, &d.factor, &d.det_m, &d.res, d.holds) {
            (Some(k), Some(factor), Some(det), Some(res), Some(holds)) => out.push(format!(
                "det M = {factor} * Res_y(f_x, f_y): k={k} det={det} res={res} holds={}",
                yes_no(holds)
            )),
            _ => out.push(format!("det M vs resultant: {}", d.status)),
        }
    }
    for id in &report.identities {
        let label = match (&id.i, &id.j) {
            (Some(i), Some(j)) => format!("{}(k={}, i={i}, j={j})", id.family, id.k),
            _ => format!("{}(k={})", id.family, id.k),
        };
        out.push(format!(
            "identity {label}: {} residual {}",
            if id.holds { "holds" } else { "fails" },
            id.residual
        ));
    }
    if let Some(q) = &report.q {
        out.push(format!("Q: {}", q.q));
        out.push(format!("N: {}", q.n));
        for (i, (c, o)) in q.coefficients.iter().zip(&q.orders).enumerate() {
            out.push(format!("Q_{i} = {c}  (order {o})"));
        }
        out.push(format!("component by Q orders: {}", yes_no(q.component)));
    }
    if let Some(a) = &report.associated {
        for (i, b) in a.b.iter().enumerate() {
            out.push(format!("b_{} = {b}", i + 1));
        }
        out.push(format!("g: {}", a.g));
        out.push(format!("Jac(f, g): {}", a.jac));
    }
    if let Some(o) = &report.oracle_b {
        out.push(format!(
            "linear search (deg_y g <= {}, deg_x <= {}): {}",
            o.degy_g,
            o.degx_b,
            o.g.as_deref().unwrap_or("no g")
        ));
    }
    if let Some(m) = &report.m3 {
        out.push(format!("cubic: a2 = {}, a3 = {}", m.a2, m.a3));
        out.push(format!("  ((a2')^2 a2 + 3 (a3')^2)' = {}", m.shared));
        out.push(format!(
            "  a2'' = {}, a3''' = {}, a3'' = {}",
            m.a2_second, m.a3_third, m.a3_second
        ));
        out.push(format!(
            "  A3={} B3={}",
            yes_no(m.a3_holds),
            yes_no(m.b3_holds)
        ));
    }
    if let Some(s) = &report.scan {
        out.push(format!(
            "scan m={} range={} mode={}: tested={} b_pass={} a_pass={}",
            s.m, s.range, s.mode, s.tested, s.b_pass, s.a_pass
        ));
        for c in &s.counterexamples {
            out.push(format!("counterexample: {c}"));
        }
        for c in &s.closed_form_mismatches {
            out.push(format!("closed-form mismatch: {c}"));
        }
    }
    out.push(format!("verdict: {}", yes_no(report.verdict)));
    for w in &report.warnings {
        out.push(format!("warning: {w}"));
    }
    out.join("\n") + "\n"
}

pub fn emit_report(report: &Report, format: Format) -> String {
    match format {
        Format::Text => text(report),
        Format::Json => serde_json::to_string_pretty(report).expect("report serializes") + "\n",
    }
}
