use super::{
    closed_form, default_rho_cap, optimal_rubbling_number, rubbling_number, Invariant, SolveError,
    SolveOptions, Witness,
};
use crate::family::Family;
use crate::reductions::Compositions;

/// Largest number of distributions a single verification level may span.
pub const DESK_BUDGET: u64 = 5_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowStatus {
    Match,
    Mismatch,
    NoClosedForm,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyRow {
    pub family: Family,
    pub computed: u64,
    pub expected: Option<u64>,
    pub witness: Option<Witness>,
    pub status: RowStatus,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub rows: Vec<VerifyRow>,
}

impl VerifyReport {
    pub fn all_match(&self) -> bool {
        self.rows.iter().all(|r| r.status != RowStatus::Mismatch)
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &VerifyRow> {
        self.rows.iter().filter(|r| r.status == RowStatus::Mismatch)
    }
}

/// Expands `name:A..B,C` style ranges into every family in the product.
/// Each parameter is a number or an inclusive range.
pub fn expand_family_range(spec: &str) -> Result<Vec<Family>, SolveError> {
    let bad = |msg: String| SolveError::Precondition(format!("{spec:?}: {msg}"));
    let Some((name, params)) = spec.split_once(':') else {
        return spec
            .parse::<Family>()
            .map(|f| vec![f])
            .map_err(|e| bad(e.to_string()));
    };
    let mut axes: Vec<Vec<usize>> = Vec::new();
    for part in params.split(',') {
        let part = part.trim();
        let axis = match part.split_once("..") {
            Some((lo, hi)) => {
                let lo: usize = lo
                    .trim()
                    .parse()
                    .map_err(|_| bad(format!("bad bound {lo:?}")))?;
                let hi: usize = hi
                    .trim()
                    .parse()
                    .map_err(|_| bad(format!("bad bound {hi:?}")))?;
                if lo > hi {
                    return Err(bad(format!("empty range {lo}..{hi}")));
                }
                (lo..=hi).collect()
            }
            None => vec![part
                .parse()
                .map_err(|_| bad(format!("bad parameter {part:?}")))?],
        };
        axes.push(axis);
    }
    let mut combos: Vec<Vec<usize>> = vec![Vec::new()];
    for axis in &axes {
        combos = combos
            .iter()
            .flat_map(|c| {
                axis.iter().map(move |&x| {
                    let mut c = c.clone();
                    c.push(x);
                    c
                })
            })
            .collect();
    }
    combos
        .into_iter()
        .map(|c| {
            let joined: Vec<String> = c.iter().map(usize::to_string).collect();
            format!("{name}:{}", joined.join(","))
                .parse::<Family>()
                .map_err(|e| bad(e.to_string()))
        })
        .collect()
}

/// Computes the invariant for each family and compares it with the known
/// value. Families whose search would exceed [`DESK_BUDGET`] are rejected
/// before any work is done.
pub fn verify_family(
    families: &[Family],
    which: Invariant,
    opts: &SolveOptions,
) -> Result<VerifyReport, SolveError> {
    let mut graphs = Vec::with_capacity(families.len());
    for family in families {
        let graph = family
            .build()
            .map_err(|e| SolveError::Precondition(e.to_string()))?;
        let top = match (closed_form(family, which), which) {
            (Some(v), _) => v,
            (None, Invariant::Rho) => opts.cap.map_or_else(|| default_rho_cap(&graph), Ok)?,
            (None, Invariant::RhoOpt) => opts.cap.unwrap_or(graph.vertex_count() as u64),
        };
        let count = Compositions::count(graph.vertex_count(), top);
        if count > DESK_BUDGET {
            return Err(SolveError::Budget(format!(
                "{family} needs {count} distributions of size {top}, budget is {DESK_BUDGET}"
            )));
        }
        graphs.push(graph);
    }
    let mut report = VerifyReport::default();
    for (family, graph) in families.iter().zip(&graphs) {
        let result = match which {
            Invariant::Rho => rubbling_number(graph, opts)?,
            Invariant::RhoOpt => optimal_rubbling_number(graph, opts)?,
        };
        let expected = closed_form(family, which);
        let status = match expected {
            None => RowStatus::NoClosedForm,
            Some(v) if v == result.value => RowStatus::Match,
            Some(_) => RowStatus::Mismatch,
        };
        report.rows.push(VerifyRow {
            family: family.clone(),
            computed: result.value,
            expected,
            witness: result.witness,
            status,
        });
    }
    Ok(report)
}
