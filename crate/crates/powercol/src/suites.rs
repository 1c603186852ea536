//! The named verification suites behind `powercol verify`.

use powercol_core::bounds::{self, WcolClass};
use powercol_core::density::{ceil_half, max_average_degree, min_outdegree_orientation, min_weak_orientation, on_grid};
use powercol_core::families::{complete_ary_tree, FamilyInstance, FamilyMeta};
use powercol_core::oracles::*;
use powercol_core::ordering::{
    coloring_number, wcol_exact, wcol_heuristic, wcol_of_ordering, Reach, DEFAULT_EXACT_LIMIT,
};
use powercol_core::power::{graph_power, verify_power_bound};
use powercol_core::report::VerificationReport;
use powercol_core::square::verify_square_bound;
use powercol_core::{Error, Graph, Rational, VertexOrdering};

use crate::error::{CliError, CliResult};

pub const LIMIT_ENV: &str = "POWERCOL_EXACT_LIMIT";

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Prop12,
    Prop13,
    Thm11,
    Thm24,
    Thm38,
    LbTree,
    All,
}

#[derive(Clone, Copy, Debug)]
pub struct Settings {
    pub limits: OracleLimits,
    pub exact_limit: usize,
    /// Refuse (exit 3) instead of skipping an oracle that is over its limit.
    pub strict: bool,
}

impl Settings {
    pub fn new(strict: bool) -> Self {
        Settings { limits: OracleLimits::default(), exact_limit: DEFAULT_EXACT_LIMIT, strict }
    }

    /// Applies `POWERCOL_EXACT_LIMIT` to every oracle and the exact search.
    pub fn from_env(strict: bool) -> CliResult<Self> {
        let mut s = Self::new(strict);
        if let Ok(v) = std::env::var(LIMIT_ENV) {
            let limit: usize =
                v.trim().parse().map_err(|_| CliError::Usage(format!("{LIMIT_ENV} must be a number, got {v:?}")))?;
            s.limits = OracleLimits::uniform(limit);
            s.exact_limit = limit;
        }
        Ok(s)
    }
}

/// A graph under test with whatever its generator declared.
pub struct Subject<'a> {
    pub label: String,
    pub graph: &'a Graph,
    pub meta: Option<&'a FamilyMeta>,
}

impl<'a> Subject<'a> {
    pub fn from_instance(f: &'a FamilyInstance) -> Self {
        Subject { label: f.label(), graph: &f.graph, meta: Some(&f.meta) }
    }
}

fn optional<T>(r: powercol_core::Result<T>, s: &Settings, report: &mut VerificationReport) -> CliResult<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(e @ Error::LimitExceeded { .. }) if !s.strict => {
            report.note(format!("skipped: {e}"));
            Ok(None)
        }
        Err(e) => Err(e.into()),
    }
}

/// `χ ≤ col ≤ ⌊mad⌋ + 1 ≤ 2·arb`.
pub fn prop12(subj: &Subject, s: &Settings) -> CliResult<VerificationReport> {
    let g = subj.graph;
    let mut r = VerificationReport::new("prop12", subj.label.clone());
    let chi = optional(chromatic_oracle(g, &s.limits), s, &mut r)?;
    let (col, _) = coloring_number(g);
    let mad = max_average_degree(g)?.mad;
    let floor1 = mad.floor().to_integer() as usize + 1;
    let arb = optional(arboricity_oracle(g, &s.limits), s, &mut r)?;
    r.param("col", col).param("mad", mad);
    if let Some(chi) = chi {
        r.param("chi", chi);
        r.check("chi <= col", chi <= col, chi, Some(col.into()), None);
    }
    r.check("col <= floor(mad) + 1", col <= floor1, col, Some(floor1.into()), None);
    if let Some(arb) = arb {
        r.param("arb", arb);
        if g.m() == 0 {
            r.note("edgeless: arb = 0 and the last inequality does not apply");
        } else {
            r.check("floor(mad) + 1 <= 2 arb", floor1 <= 2 * arb, floor1, Some((2 * arb).into()), None);
        }
    }
    Ok(r)
}

/// `2·min Δ⁺_w = mad` and the integral orientation version.
pub fn prop13(subj: &Subject, s: &Settings) -> CliResult<VerificationReport> {
    let g = subj.graph;
    let mut r = VerificationReport::new("prop13", subj.label.clone());
    let dense = max_average_degree(g)?;
    let mad = dense.mad;
    r.param("mad", mad).param("witness_size", dense.witness.len());
    if let Some(o) = optional(mad_oracle(g, &s.limits), s, &mut r)? {
        r.check("flow mad = subset mad", o == mad, mad, Some(o.into()), None);
    }
    let w = min_weak_orientation(g)?;
    let (dw, at) = w.max_out_weight();
    let two = Rational::from_integer(2);
    r.check("2 max out-weight = mad", two * dw == mad, two * dw, Some(mad.into()), Some(format!("vertex {at}")));
    let denom = dense.witness.len().max(1) as i128;
    r.check("weights on the 1/|H| grid", on_grid(&w, denom), on_grid(&w, denom), None, None);

    let o = min_outdegree_orientation(g)?;
    let out = o.max_out_degree();
    let ceil_mad = mad.ceil().to_integer() as usize;
    r.param("max_out_degree", out);
    r.check("max out-degree = ceil(mad/2)", out as i128 == ceil_half(&mad), out, Some(ceil_half(&mad).into()), None);
    let within = 2 * out == ceil_mad || 2 * out == ceil_mad + 1;
    r.check("2 max out-degree in {ceil(mad), ceil(mad) + 1}", within, 2 * out, Some(ceil_mad.into()), None);
    if 2 * out == ceil_mad + 1 {
        r.note(format!("parity: 2 max out-degree = {} = ceil(mad) + 1", 2 * out));
    }
    if let Some((best, _)) = optional(min_outdegree_oracle(g, &s.limits), s, &mut r)? {
        r.check("max out-degree = exhaustive minimum", out == best, out, Some(best.into()), None);
    }
    Ok(r)
}

fn declared_classes(subj: &Subject) -> Vec<(String, WcolClass)> {
    let g = subj.graph;
    let mut out = Vec::new();
    let tw = subj.meta.and_then(|m| m.treewidth).or_else(|| {
        let forest = g.m() + g.components().len() == g.n();
        forest.then_some(usize::from(g.m() > 0))
    });
    if let Some(t) = tw {
        out.push((format!("tree-width {t}"), WcolClass::TreeWidth { t }));
    }
    match subj.meta.and_then(|m| m.genus) {
        Some(0) => out.push(("planar".into(), WcolClass::Planar)),
        Some(g) => out.push((format!("genus {g}"), WcolClass::Genus { g })),
        None => {}
    }
    out
}

/// `wcol_k` against the class bounds the subject is declared to satisfy,
/// for `k = 1..=4`.
pub fn thm11(subj: &Subject, s: &Settings) -> CliResult<VerificationReport> {
    let g = subj.graph;
    let mut r = VerificationReport::new("thm11", subj.label.clone());
    let classes = declared_classes(subj);
    if classes.is_empty() {
        r.note("no declared class; nothing to check");
        return Ok(r);
    }
    let exact = g.n() <= s.exact_limit;
    r.param("exact", exact);
    for k in 1..=4 {
        let reach = Reach::Finite(k);
        let value = if exact {
            wcol_exact(g, reach, s.exact_limit)?.0
        } else {
            wcol_of_ordering(g, &wcol_heuristic(g, reach)?, reach)?.value
        };
        r.param(&format!("wcol_{k}"), value);
        for (name, class) in &classes {
            let bound = bounds::wcol_bound(*class, k)?;
            let holds = value as i128 <= bound;
            if exact || holds {
                r.check(&format!("wcol_{k} <= bound ({name})"), holds, value, Some(bound.into()), None);
            } else {
                r.note(format!("wcol_{k}: heuristic value {value} above {bound} ({name}); inconclusive"));
            }
            if exact && holds && value as i128 == bound {
                r.note(format!("sharp at k = {k} ({name})"));
            }
        }
    }
    Ok(r)
}

fn power_sigma(g: &Graph, p: usize, s: &Settings) -> CliResult<(VertexOrdering, &'static str)> {
    let reach = Reach::Finite(p.div_ceil(2));
    if g.n() <= s.exact_limit {
        Ok((wcol_exact(g, reach, s.exact_limit)?.1, "exact wcol ordering"))
    } else {
        Ok((wcol_heuristic(g, reach)?, "heuristic wcol ordering"))
    }
}

/// The weighted orientation of `G^p` against its out-weight and mad bounds.
pub fn thm24(subj: &Subject, ps: &[usize], s: &Settings) -> CliResult<Vec<VerificationReport>> {
    let g = subj.graph;
    if g.max_degree() < 3 {
        let mut r = VerificationReport::new("thm24", subj.label.clone());
        r.note("max degree below 3; not applicable");
        return Ok(vec![r]);
    }
    let mut out = Vec::new();
    for &p in ps {
        let (sigma, source) = power_sigma(g, p, s)?;
        let (mut r, po) = verify_power_bound(g, p, &sigma, source)?;
        r.subject = format!("{} p={p}", subj.label);
        if po.power.n() <= s.limits.mad {
            let exact = mad_oracle(&po.power, &s.limits)?;
            let bound = bounds::wcol_power_mad_bound(
                g.max_degree(),
                p,
                wcol_of_ordering(g, &sigma, Reach::Finite(p.div_ceil(2)))?.value,
            )?;
            r.check("subset mad(G^p) <= mad bound", exact <= bound, exact, Some(bound.into()), None);
        }
        out.push(r);
    }
    Ok(out)
}

/// The square bound and, separately, the replay of the collection trace.
pub fn thm38(subj: &Subject, l: Option<&VertexOrdering>, s: &Settings) -> CliResult<Vec<VerificationReport>> {
    let v = verify_square_bound(subj.graph, l, &s.limits)?;
    let mut r = v.report;
    r.subject = subj.label.clone();
    let mut out = vec![r];
    if let Some(mut c) = v.claims {
        c.subject = subj.label.clone();
        out.push(c);
    }
    Ok(out)
}

/// The tree of height `⌊p/2⌋` with maximum degree `Δ`: its `p`-th power is
/// complete on `L` vertices.
pub fn lb_tree(delta: usize, p: usize, s: &Settings) -> CliResult<VerificationReport> {
    let mut r = VerificationReport::new("lb-tree", format!("delta={delta} p={p}"));
    let l = bounds::tree_lower_bound(delta, p)?;
    let t = complete_ary_tree(delta, p / 2)?.graph;
    r.param("L", l).param("n", t.n());
    r.check("|T| = L", t.n() as i128 == l, t.n(), Some(l.into()), None);
    let tp = graph_power(&t, p)?;
    r.check("T^p complete", tp.is_complete(), tp.m(), Some((t.n() * (t.n() - 1) / 2).into()), None);
    if let Some(chi) = optional(chromatic_oracle(&tp, &s.limits), s, &mut r)? {
        r.check("chi(T^p) = L", chi as i128 == l, chi, Some(l.into()), None);
    }
    Ok(r)
}

/// Runs one suite on one subject. `lb-tree` ignores the subject.
pub fn run_on(suite: Suite, subj: &Subject, ps: &[usize], s: &Settings) -> CliResult<Vec<VerificationReport>> {
    Ok(match suite {
        Suite::Prop12 => vec![prop12(subj, s)?],
        Suite::Prop13 => vec![prop13(subj, s)?],
        Suite::Thm11 => vec![thm11(subj, s)?],
        Suite::Thm24 => thm24(subj, ps, s)?,
        Suite::Thm38 => {
            if subj.graph.n() == 0 {
                Vec::new()
            } else {
                thm38(subj, None, s)?
            }
        }
        Suite::LbTree => Vec::new(),
        Suite::All => {
            let mut all = Vec::new();
            for one in [Suite::Prop12, Suite::Prop13, Suite::Thm11, Suite::Thm24, Suite::Thm38] {
                all.extend(run_on(one, subj, ps, s)?);
            }
            all
        }
    })
}

/// Parameter pairs for the tree lower-bound suite when none are given.
pub const LB_TREE_CASES: [(usize, usize); 4] = [(3, 2), (3, 4), (4, 2), (4, 4)];
