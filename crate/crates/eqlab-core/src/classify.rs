//! Classification of maximum t-almost-equiangular sets on S^1 and S^2.
//!
//! The driver partitions t in [-1, 0] at the exact critical values (rational
//! thresholds and spindle polynomial roots), and on each piece determines the
//! maximum cardinality alpha(n, t) by descending from the analytic upper
//! bound: at each candidate order it enumerates minimal anti-triangle-free
//! graphs, removes those containing a forbidden pattern, and adjudicates the
//! survivors against a catalog of constructions with exactly known
//! realizability ranges (clique unions and spindles).  A survivor outside the
//! catalog is a hard error rather than a silent guess.  Adjacent pieces with
//! identical outcomes are merged, which reproduces the region structure with
//! exact (possibly algebraic) endpoints and open/closed flags.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebraic::{spindle_root, ExactReal, SpindleRootHandle};
use crate::bounds::{best_upper_for_classify, best_upper_for_classify_algebraic};
use crate::geometry::{
    distance_graph, heuristic_realize, GeometryError, RealizeOutcome, spindle_realizable,
};
use crate::graphs::{
    make_pattern, pattern_filter_survivors, subgraph_contains, GraphError, PatternName,
    SimpleGraph,
};
use crate::ratio::{rat_i, Rat};
use std::cmp::Ordering;

#[derive(Debug, Error)]
pub enum ClassifyError {
    #[error("classification is implemented for n = 2 and n = 3 (got {0})")]
    UnsupportedDimension(usize),
    #[error(
        "survivor of order {order} at n={n}, t={at} is outside the geometric \
         catalog: {graph6}"
    )]
    UncataloguedSurvivor {
        order: usize,
        n: usize,
        at: String,
        graph6: String,
    },
    #[error("no realizable survivor found at n={n}, t={at} down to order 4")]
    NoSurvivor { n: usize, at: String },
    #[error("cross-validation failed for {name} at n={n}, t={at}: {detail}")]
    ValidationFailed {
        name: String,
        n: usize,
        at: String,
        detail: String,
    },
    #[error("cannot choose a rational sample inside ({lo}, {hi})")]
    SampleSelection { lo: String, hi: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// An endpoint of a classification region: an exact value with a display
/// label ("-1/2", "t_2_1", ...) and a closed/open flag.
#[derive(Debug, Clone)]
pub struct RegionEndpoint {
    pub value: ExactReal,
    pub label: String,
    pub closed: bool,
}

/// An optimal construction for a region: the distance graph of the extremal
/// set, by conventional name.
#[derive(Debug, Clone)]
pub struct OptimalGraph {
    pub name: String,
    pub graph: SimpleGraph,
}

/// One region of the classification: a maximal t-interval on which the
/// maximum cardinality and the set of optimal constructions are constant.
#[derive(Debug, Clone)]
pub struct ClassificationRegion {
    pub lo: RegionEndpoint,
    pub hi: RegionEndpoint,
    pub alpha: usize,
    pub optimal: Vec<OptimalGraph>,
    pub unique: bool,
}

/// The full classification for one dimension.
#[derive(Debug, Clone)]
pub struct Classification {
    pub n: usize,
    pub regions: Vec<ClassificationRegion>,
    /// Whether survivors were cross-validated by numeric realization.
    pub validated: bool,
}

// ---------------------------------------------------------------------------
// Serializable description (exact endpoints rendered with isolating data).
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct EndpointJson {
    pub label: String,
    pub kind: String, // "rational" | "algebraic"
    pub approx: f64,
    /// Exact value "p/q" when rational.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rational: Option<String>,
    /// Defining polynomial (ascending rational coefficients) when algebraic.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub polynomial: Option<Vec<String>>,
    /// Isolating interval (rational endpoints) when algebraic.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub isolating_interval: Option<[String; 2]>,
    pub closed: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct RegionJson {
    pub lo: EndpointJson,
    pub hi: EndpointJson,
    pub alpha: usize,
    pub unique: bool,
    pub optimal: Vec<OptimalGraphJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct OptimalGraphJson {
    pub name: String,
    pub graph6: String,
    pub order: usize,
}

/// A display row: like a region, but two intervals flanking an exceptional
/// point with the same outcome are shown as one punctured interval.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct FigureRowJson {
    pub lo: EndpointJson,
    pub hi: EndpointJson,
    /// Exceptional points removed from the interval (each has its own row).
    pub excluded: Vec<EndpointJson>,
    pub alpha: usize,
    pub unique: bool,
    pub optimal: Vec<OptimalGraphJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ClassificationJson {
    pub n: usize,
    pub validated: bool,
    /// The fine partition of [-1, 0]: consecutive intervals and singletons.
    pub regions: Vec<RegionJson>,
    /// Display rows mirroring the reference layout.
    pub figure_rows: Vec<FigureRowJson>,
}

fn describe_endpoint(e: &RegionEndpoint) -> EndpointJson {
    match &e.value {
        ExactReal::Rational(r) => EndpointJson {
            label: e.label.clone(),
            kind: "rational".to_string(),
            approx: crate::ratio::to_f64(r),
            rational: Some(r.to_string()),
            polynomial: None,
            isolating_interval: None,
            closed: e.closed,
        },
        ExactReal::Algebraic(a) => {
            let (lo, hi) = a.interval();
            // Render the defining polynomial with integer coefficients.
            let coeffs = a.poly().coeffs();
            let mut denom_lcm: num_bigint::BigInt = 1.into();
            for c in coeffs {
                denom_lcm = num_integer::lcm(denom_lcm, c.denom().clone());
            }
            let ints: Vec<String> = coeffs
                .iter()
                .map(|c| (c * Rat::from(denom_lcm.clone())).numer().to_string())
                .collect();
            EndpointJson {
                label: e.label.clone(),
                kind: "algebraic".to_string(),
                approx: a.to_f64(),
                rational: None,
                polynomial: Some(ints),
                isolating_interval: Some([lo.to_string(), hi.to_string()]),
                closed: e.closed,
            }
        }
    }
}

fn describe_optimal(r: &ClassificationRegion) -> Vec<OptimalGraphJson> {
    r.optimal
        .iter()
        .map(|o| OptimalGraphJson {
            name: o.name.clone(),
            graph6: o.graph.to_graph6(),
            order: o.graph.order(),
        })
        .collect()
}

fn is_singleton(r: &ClassificationRegion) -> bool {
    r.lo.closed && r.hi.closed && r.lo.value.cmp_exact(&r.hi.value) == Ordering::Equal
}

impl Classification {
    pub fn describe(&self) -> ClassificationJson {
        ClassificationJson {
            n: self.n,
            validated: self.validated,
            regions: self
                .regions
                .iter()
                .map(|r| RegionJson {
                    lo: describe_endpoint(&r.lo),
                    hi: describe_endpoint(&r.hi),
                    alpha: r.alpha,
                    unique: r.unique,
                    optimal: describe_optimal(r),
                })
                .collect(),
            figure_rows: self.figure_rows(),
        }
    }

    /// Display rows: an exceptional point that improves the maximum by
    /// exactly one over identical flanking regions is rendered as a puncture
    /// of the surrounding interval (the point keeps its own row); larger
    /// jumps start a new interval row.
    pub fn figure_rows(&self) -> Vec<FigureRowJson> {
        struct Row {
            lo: RegionEndpoint,
            hi: RegionEndpoint,
            excluded: Vec<RegionEndpoint>,
            alpha: usize,
            unique: bool,
            optimal: Vec<OptimalGraphJson>,
            key: Vec<String>,
            last_idx: usize,
        }
        let mut rows: Vec<Row> = Vec::new();
        for (i, r) in self.regions.iter().enumerate() {
            let key: Vec<String> = r.optimal.iter().map(|o| o.graph.to_graph6()).collect();
            let mut merged = false;
            // The only merge candidate is the row two regions back, across a
            // one-point region whose alpha exceeds ours by exactly one.
            if i >= 2 {
                let gap = &self.regions[i - 1];
                if is_singleton(gap) && gap.alpha == r.alpha + 1 {
                    if let Some(row) = rows.iter_mut().rev().find(|row| row.last_idx == i - 2) {
                        if row.alpha == r.alpha && row.key == key {
                            row.excluded.push(gap.lo.clone());
                            row.hi = r.hi.clone();
                            row.last_idx = i;
                            merged = true;
                        }
                    }
                }
            }
            if !merged {
                rows.push(Row {
                    lo: r.lo.clone(),
                    hi: r.hi.clone(),
                    excluded: Vec::new(),
                    alpha: r.alpha,
                    unique: r.unique,
                    optimal: describe_optimal(r),
                    key,
                    last_idx: i,
                });
            }
        }
        rows.sort_by(|a, b| a.lo.value.cmp_exact(&b.lo.value).then(a.hi.value.cmp_exact(&b.hi.value)));
        rows.into_iter()
            .map(|row| FigureRowJson {
                lo: describe_endpoint(&row.lo),
                hi: describe_endpoint(&row.hi),
                excluded: row.excluded.iter().map(describe_endpoint).collect(),
                alpha: row.alpha,
                unique: row.unique,
                optimal: row.optimal,
            })
            .collect()
    }
}

// ---------------------------------------------------------------------------
// Geometric catalog: identify survivors and decide realizability exactly.
// ---------------------------------------------------------------------------

/// The shapes the classification catalog understands.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SurvivorKind {
    /// Disjoint union of at most two cliques (part sizes, descending).
    CliqueUnion(Vec<usize>),
    /// Spindle S(k, l) with k <= l; S(1,1) is the 5-cycle, S(k,k) = MS_k.
    Spindle(usize, usize),
}

impl SurvivorKind {
    pub fn name(&self) -> String {
        match self {
            SurvivorKind::CliqueUnion(parts) => match parts.as_slice() {
                [a, b] if a == b => format!("2K{a}"),
                [a, b] => format!("K{a}+K{b}"),
                [a] => format!("K{a}"),
                _ => format!("{parts:?}"),
            },
            SurvivorKind::Spindle(1, 1) => "C5".to_string(),
            SurvivorKind::Spindle(k, l) if k == l => format!("MS{k}"),
            SurvivorKind::Spindle(k, l) => format!("S({k},{l})"),
        }
    }
}

fn connected_components(g: &SimpleGraph) -> Vec<Vec<usize>> {
    let m = g.order();
    let mut seen = vec![false; m];
    let mut comps = Vec::new();
    for s in 0..m {
        if seen[s] {
            continue;
        }
        let mut stack = vec![s];
        let mut comp = Vec::new();
        seen[s] = true;
        while let Some(v) = stack.pop() {
            comp.push(v);
            for u in 0..m {
                if !seen[u] && g.has_edge(v, u) {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        comp.sort_unstable();
        comps.push(comp);
    }
    comps
}

/// Match a survivor against the catalog by canonical form.  Returns None if
/// the graph is neither a union of at most two cliques nor a spindle.
pub fn identify_survivor(g: &SimpleGraph) -> Option<SurvivorKind> {
    let comps = connected_components(g);
    if comps.len() <= 2 {
        let mut clique = true;
        for comp in &comps {
            let sub = g.induced_subgraph(comp);
            let m = sub.order();
            if sub.edge_count() != m * (m - 1) / 2 {
                clique = false;
                break;
            }
        }
        if clique {
            let mut parts: Vec<usize> = comps.iter().map(|c| c.len()).collect();
            parts.sort_unstable_by(|a, b| b.cmp(a));
            return Some(SurvivorKind::CliqueUnion(parts));
        }
    }
    let order = g.order();
    if order >= 5 {
        let total = order - 3;
        for k in 1..=total / 2 {
            let l = total - k;
            if let Ok(p) = make_pattern(PatternName::Spindle(k, l)) {
                if g.canonical_form() == p.canonical_form() {
                    return Some(SurvivorKind::Spindle(k, l));
                }
            }
        }
    }
    None
}

/// Exact sign of 1 + (m-1) t against zero, as an Ordering on t vs -1/(m-1).
fn cmp_t_vs_clique_threshold(t: &ExactReal, m: usize) -> Ordering {
    let threshold = -Rat::new(1.into(), ((m - 1) as i64).into());
    t.cmp_rational(&threshold)
}

/// Whether m pairwise-t points fit on the unit sphere of R^n: the clique Gram
/// (1-t)I + tJ must be PSD of rank at most n, i.e. 1+(m-1)t > 0 with m <= n,
/// or 1+(m-1)t = 0 with m <= n+1.
pub fn clique_part_realizable(m: usize, n: usize, t: &ExactReal) -> bool {
    if m == 1 {
        return true;
    }
    match cmp_t_vs_clique_threshold(t, m) {
        Ordering::Greater => m <= n,
        Ordering::Equal => m <= n + 1,
        Ordering::Less => false,
    }
}

/// Exact realizability of a catalog survivor at (n, t).  Disjoint parts of a
/// clique union can always be rotated apart on the sphere (n >= 2), so the
/// union is realizable iff every part is.
pub fn survivor_realizable(kind: &SurvivorKind, n: usize, t: &ExactReal) -> bool {
    match kind {
        SurvivorKind::CliqueUnion(parts) => {
            parts.iter().all(|&m| clique_part_realizable(m, n, t))
        }
        SurvivorKind::Spindle(k, l) => spindle_realizable(*k, *l, n, t).realizable,
    }
}

// ---------------------------------------------------------------------------
// Piece partition and per-piece outcome.
// ---------------------------------------------------------------------------

fn rational(p: i64, q: i64) -> ExactReal {
    ExactReal::Rational(Rat::new(p.into(), q.into()))
}

fn root(k: u32, i: u32) -> ExactReal {
    ExactReal::Algebraic(
        spindle_root(SpindleRootHandle { k, i }).expect("spindle root exists"),
    )
}

/// The exact critical values partitioning [-1, 0] for dimension n, ascending,
/// with display labels: rational pattern thresholds and spindle roots.
fn critical_values(n: usize) -> Result<Vec<(String, ExactReal)>, ClassifyError> {
    let mut vals = match n {
        2 => vec![
            ("t_1_1".to_string(), root(1, 1)),
            ("-1/2".to_string(), rational(-1, 2)),
        ],
        3 => vec![
            ("t_1_1".to_string(), root(1, 1)),
            ("-1/2".to_string(), rational(-1, 2)),
            ("t_2_1".to_string(), root(2, 1)),
            ("-1/3".to_string(), rational(-1, 3)),
            ("t_2_2".to_string(), root(2, 2)),
        ],
        other => return Err(ClassifyError::UnsupportedDimension(other)),
    };
    vals.sort_by(|a, b| a.1.cmp_exact(&b.1));
    Ok(vals)
}

struct Piece {
    lo: RegionEndpoint,
    hi: RegionEndpoint,
    sample: ExactReal,
    sample_label: String,
}

/// A rational strictly between two exact values, chosen deterministically.
fn rational_between(lo: &ExactReal, hi: &ExactReal) -> Result<Rat, ClassifyError> {
    let lo_f = lo.to_f64();
    let hi_f = hi.to_f64();
    let mut cand = Rat::from_float((lo_f + hi_f) / 2.0).unwrap_or_else(|| rat_i(0));
    for _ in 0..64 {
        if lo.cmp_rational(&cand) == Ordering::Less && hi.cmp_rational(&cand) == Ordering::Greater
        {
            return Ok(cand);
        }
        // Nudge toward the midpoint of exact bounds by averaging with an
        // endpoint approximation (only reachable for very thin pieces).
        cand = (cand + Rat::from_float(hi_f).unwrap_or_else(|| rat_i(0))) / rat_i(2);
    }
    Err(ClassifyError::SampleSelection {
        lo: format!("{lo_f}"),
        hi: format!("{hi_f}"),
    })
}

fn pieces(n: usize) -> Result<Vec<Piece>, ClassifyError> {
    let crits = critical_values(n)?;
    let mut out = Vec::new();
    let mut prev: (String, ExactReal, bool) = ("-1".to_string(), rational(-1, 1), true);
    for (label, value) in &crits {
        // Open interval (prev, value); closed at -1 for the first piece.
        let sample = rational_between(&prev.1, value)?;
        out.push(Piece {
            lo: RegionEndpoint {
                value: prev.1.clone(),
                label: prev.0.clone(),
                closed: prev.2,
            },
            hi: RegionEndpoint {
                value: value.clone(),
                label: label.clone(),
                closed: false,
            },
            sample_label: sample.to_string(),
            sample: ExactReal::Rational(sample),
        });
        // Singleton {value}.
        out.push(Piece {
            lo: RegionEndpoint {
                value: value.clone(),
                label: label.clone(),
                closed: true,
            },
            hi: RegionEndpoint {
                value: value.clone(),
                label: label.clone(),
                closed: true,
            },
            sample_label: label.clone(),
            sample: value.clone(),
        });
        prev = (label.clone(), value.clone(), false);
    }
    let zero = ("0".to_string(), rational(0, 1));
    let sample = rational_between(&prev.1, &zero.1)?;
    out.push(Piece {
        lo: RegionEndpoint {
            value: prev.1,
            label: prev.0,
            closed: false,
        },
        hi: RegionEndpoint {
            value: zero.1,
            label: zero.0,
            closed: true,
        },
        sample_label: sample.to_string(),
        sample: ExactReal::Rational(sample),
    });
    Ok(out)
}

/// Outcome of the descent at one sample point: the maximum order with a
/// realizable survivor, together with the named survivors at that order.
fn outcome_at(
    n: usize,
    t: &ExactReal,
    at: &str,
) -> Result<(usize, Vec<(SurvivorKind, SimpleGraph)>), ClassifyError> {
    let start = match t {
        ExactReal::Rational(r) => best_upper_for_classify(n as u32, r),
        ExactReal::Algebraic(a) => best_upper_for_classify_algebraic(n as u32, a),
    } as usize;
    for order in (4..=start.max(4)).rev() {
        let survivors = pattern_filter_survivors(order, n, t)?;
        let mut realizable = Vec::new();
        for g in survivors {
            let kind =
                identify_survivor(&g).ok_or_else(|| ClassifyError::UncataloguedSurvivor {
                    order,
                    n,
                    at: at.to_string(),
                    graph6: g.to_graph6(),
                })?;
            if survivor_realizable(&kind, n, t) {
                realizable.push((kind, g));
            }
        }
        if !realizable.is_empty() {
            realizable.sort_by_key(|(k, _)| k.name());
            return Ok((order, realizable));
        }
    }
    Err(ClassifyError::NoSurvivor {
        n,
        at: at.to_string(),
    })
}

/// Numerically realize each survivor at the sample point and confirm that the
/// resulting distance graph contains it.
fn cross_validate(
    n: usize,
    t: &ExactReal,
    at: &str,
    survivors: &[(SurvivorKind, SimpleGraph)],
) -> Result<(), ClassifyError> {
    let tf = t.to_f64();
    for (kind, g) in survivors {
        let name = kind.name();
        let outcome = heuristic_realize(g, n, tf, 0x5eed + g.order() as u64, 4000);
        let cfg = match outcome {
            RealizeOutcome::Realized(cfg) => cfg,
            RealizeOutcome::Inconclusive { best_residual } => {
                return Err(ClassifyError::ValidationFailed {
                    name,
                    n,
                    at: at.to_string(),
                    detail: format!("no numeric realization (residual {best_residual:.3e})"),
                });
            }
        };
        let dg = distance_graph(&cfg.gram(), tf, 1e-6)?;
        if !subgraph_contains(&dg, g) {
            return Err(ClassifyError::ValidationFailed {
                name,
                n,
                at: at.to_string(),
                detail: "realized distance graph does not contain the survivor".to_string(),
            });
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Driver.
// ---------------------------------------------------------------------------

/// Classify maximum t-almost-equiangular sets for t in [-1, 0] on the unit
/// sphere of R^n, n in {2, 3}.  Equivalent to [`classify_with_options`] with
/// cross-validation enabled.
pub fn classify(n: usize) -> Result<Classification, ClassifyError> {
    classify_with_options(n, true)
}

pub fn classify_with_options(n: usize, validate: bool) -> Result<Classification, ClassifyError> {
    if !(n == 2 || n == 3) {
        return Err(ClassifyError::UnsupportedDimension(n));
    }
    let mut regions: Vec<(ClassificationRegion, Vec<Vec<u8>>)> = Vec::new();
    for piece in pieces(n)? {
        let (alpha, survivors) = outcome_at(n, &piece.sample, &piece.sample_label)?;
        if validate {
            cross_validate(n, &piece.sample, &piece.sample_label, &survivors)?;
        }
        let key: Vec<Vec<u8>> = survivors
            .iter()
            .map(|(_, g)| g.canonical_form().to_vec())
            .collect();
        let merged = match regions.last_mut() {
            Some((last, last_key)) if last.alpha == alpha && *last_key == key => {
                last.hi = piece.hi.clone();
                true
            }
            _ => false,
        };
        if !merged {
            let optimal: Vec<OptimalGraph> = survivors
                .into_iter()
                .map(|(kind, graph)| OptimalGraph {
                    name: kind.name(),
                    graph,
                })
                .collect();
            let unique = optimal.len() == 1;
            regions.push((
                ClassificationRegion {
                    lo: piece.lo,
                    hi: piece.hi,
                    alpha,
                    optimal,
                    unique,
                },
                key,
            ));
        }
    }
    Ok(Classification {
        n,
        regions: regions.into_iter().map(|(r, _)| r).collect(),
        validated: validate,
    })
}

/// Exact maximum cardinality alpha(n, t) at a single parameter, by the same
/// descent as [`classify`] (no cross-validation).
pub fn alpha_at(n: usize, t: &ExactReal) -> Result<usize, ClassifyError> {
    if !(n == 2 || n == 3) {
        return Err(ClassifyError::UnsupportedDimension(n));
    }
    let label = format!("{:.6}", t.to_f64());
    Ok(outcome_at(n, t, &label)?.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::rat;

    impl FigureRowJson {
        fn label_triplet(&self) -> (&str, &str, usize) {
            (self.lo.label.as_str(), self.hi.label.as_str(), self.alpha)
        }
    }

    fn region_summary(c: &Classification) -> Vec<(String, bool, String, bool, usize, Vec<String>, bool)> {
        c.regions
            .iter()
            .map(|r| {
                (
                    r.lo.label.clone(),
                    r.lo.closed,
                    r.hi.label.clone(),
                    r.hi.closed,
                    r.alpha,
                    r.optimal.iter().map(|o| o.name.clone()).collect(),
                    r.unique,
                )
            })
            .collect()
    }

    #[test]
    fn catalog_identifies_known_graphs() {
        let two_k2 = SimpleGraph::with_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(
            identify_survivor(&two_k2),
            Some(SurvivorKind::CliqueUnion(vec![2, 2]))
        );
        assert_eq!(identify_survivor(&two_k2).unwrap().name(), "2K2");

        let k3_k1 = SimpleGraph::with_edges(4, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(
            identify_survivor(&k3_k1),
            Some(SurvivorKind::CliqueUnion(vec![3, 1]))
        );
        assert_eq!(identify_survivor(&k3_k1).unwrap().name(), "K3+K1");

        let c5 = SimpleGraph::cycle(5).unwrap();
        assert_eq!(identify_survivor(&c5), Some(SurvivorKind::Spindle(1, 1)));
        assert_eq!(identify_survivor(&c5).unwrap().name(), "C5");

        let ms2 = make_pattern(PatternName::MoserSpindle(2)).unwrap();
        assert_eq!(identify_survivor(&ms2), Some(SurvivorKind::Spindle(2, 2)));
        assert_eq!(identify_survivor(&ms2).unwrap().name(), "MS2");

        let s12 = make_pattern(PatternName::Spindle(1, 2)).unwrap();
        assert_eq!(identify_survivor(&s12).unwrap().name(), "S(1,2)");

        // A path is not in the catalog.
        let p4 = SimpleGraph::with_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(identify_survivor(&p4), None);
    }

    #[test]
    fn clique_union_realizability_rules() {
        // K3 on S^1 only at t = -1/2; on S^2 for t >= -1/2.
        let half = ExactReal::Rational(rat(-1, 2));
        let third = ExactReal::Rational(rat(-1, 3));
        assert!(clique_part_realizable(3, 2, &half));
        assert!(!clique_part_realizable(3, 2, &third));
        assert!(clique_part_realizable(3, 3, &third));
        assert!(!clique_part_realizable(3, 3, &ExactReal::Rational(rat(-3, 5))));
        // K4 on S^2 only at t = -1/3.
        assert!(clique_part_realizable(4, 3, &third));
        assert!(!clique_part_realizable(4, 3, &half));
        // Singletons always.
        assert!(clique_part_realizable(1, 2, &half));
    }

    #[test]
    fn figure_two_dimension_two() {
        let c = classify(2).unwrap();
        let got = region_summary(&c);
        let want: Vec<(String, bool, String, bool, usize, Vec<String>, bool)> = vec![
            ("-1".into(), true, "t_1_1".into(), false, 4, vec!["2K2".into()], true),
            ("t_1_1".into(), true, "t_1_1".into(), true, 5, vec!["C5".into()], true),
            ("t_1_1".into(), false, "-1/2".into(), false, 4, vec!["2K2".into()], true),
            ("-1/2".into(), true, "-1/2".into(), true, 6, vec!["2K3".into()], true),
            ("-1/2".into(), false, "0".into(), true, 4, vec!["2K2".into()], true),
        ];
        assert_eq!(got, want);
        assert!(c.validated);
    }

    #[test]
    fn figure_two_dimension_three() {
        let c = classify(3).unwrap();
        let got = region_summary(&c);
        let want: Vec<(String, bool, String, bool, usize, Vec<String>, bool)> = vec![
            ("-1".into(), true, "t_1_1".into(), false, 4, vec!["2K2".into()], true),
            ("t_1_1".into(), true, "-1/2".into(), false, 5, vec!["C5".into()], true),
            ("-1/2".into(), true, "-1/2".into(), true, 6, vec!["2K3".into()], true),
            (
                "-1/2".into(),
                false,
                "t_2_1".into(),
                false,
                6,
                vec!["2K3".into(), "S(1,2)".into()],
                false,
            ),
            ("t_2_1".into(), true, "-1/3".into(), false, 7, vec!["MS2".into()], true),
            ("-1/3".into(), true, "-1/3".into(), true, 8, vec!["2K4".into()], true),
            ("-1/3".into(), false, "t_2_2".into(), true, 7, vec!["MS2".into()], true),
            (
                "t_2_2".into(),
                false,
                "0".into(),
                true,
                6,
                vec!["2K3".into(), "S(1,2)".into()],
                false,
            ),
        ];
        assert_eq!(got, want);
    }

    #[test]
    fn region_endpoints_are_exact() {
        let c = classify_with_options(3, false).unwrap();
        // Intervals partition [-1, 0]: consecutive hi == next lo with
        // complementary closedness, exact comparison.
        assert_eq!(c.regions.first().unwrap().lo.label, "-1");
        assert_eq!(c.regions.last().unwrap().hi.label, "0");
        for w in c.regions.windows(2) {
            assert_eq!(
                w[0].hi.value.cmp_exact(&w[1].lo.value),
                Ordering::Equal,
                "adjacent regions must share an endpoint"
            );
            assert!(w[0].hi.closed != w[1].lo.closed);
        }
        // The t_2_1 endpoint is exactly the first spindle root for k=2.
        let t21 = root(2, 1);
        let r = c
            .regions
            .iter()
            .find(|r| r.lo.label == "t_2_1")
            .expect("region starting at t_2_1");
        assert_eq!(r.lo.value.cmp_exact(&t21), Ordering::Equal);
        // Its description carries an isolating interval and the cubic.
        let js = c.describe();
        let ep = &js.regions.iter().find(|r| r.lo.label == "t_2_1").unwrap().lo;
        assert_eq!(ep.kind, "algebraic");
        let iso = ep.isolating_interval.as_ref().unwrap();
        let poly = ep.polynomial.as_ref().unwrap();
        assert_eq!(poly.as_slice(), &["-1", "-2", "15", "32"]);
        let lo: f64 = crate::ratio::to_f64(&crate::ratio::parse_rat(&iso[0]).unwrap());
        let hi: f64 = crate::ratio::to_f64(&crate::ratio::parse_rat(&iso[1]).unwrap());
        assert!(lo <= ep.approx && ep.approx <= hi);
    }

    #[test]
    fn figure_rows_match_reference_layout() {
        let c2 = classify_with_options(2, false).unwrap();
        let rows = c2.figure_rows();
        assert_eq!(rows.len(), 4);
        assert_eq!(
            (rows[0].lo.label.as_str(), rows[0].hi.label.as_str(), rows[0].alpha),
            ("-1", "-1/2", 4)
        );
        assert_eq!(rows[0].excluded.len(), 1);
        assert_eq!(rows[0].excluded[0].label, "t_1_1");
        assert_eq!(rows[1].label_triplet(), ("t_1_1", "t_1_1", 5));
        assert_eq!(rows[2].label_triplet(), ("-1/2", "-1/2", 6));
        assert_eq!(rows[3].label_triplet(), ("-1/2", "0", 4));
        assert!(rows[3].excluded.is_empty());

        let c3 = classify_with_options(3, false).unwrap();
        let rows = c3.figure_rows();
        assert_eq!(rows.len(), 7);
        let alphas: Vec<usize> = rows.iter().map(|r| r.alpha).collect();
        assert_eq!(alphas, [4, 5, 6, 6, 7, 8, 6]);
        let ms2 = &rows[4];
        assert_eq!(ms2.lo.label, "t_2_1");
        assert_eq!(ms2.hi.label, "t_2_2");
        assert!(ms2.lo.closed && ms2.hi.closed);
        assert_eq!(ms2.excluded.len(), 1);
        assert_eq!(ms2.excluded[0].label, "-1/3");
        assert_eq!(ms2.optimal[0].name, "MS2");
    }

    #[test]
    fn descriptions_are_deterministic() {
        let a = serde_json::to_string(&classify_with_options(2, false).unwrap().describe()).unwrap();
        let b = serde_json::to_string(&classify_with_options(2, false).unwrap().describe()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn alpha_at_samples() {
        assert_eq!(alpha_at(2, &rational(-9, 10)).unwrap(), 4);
        assert_eq!(alpha_at(2, &rational(-1, 2)).unwrap(), 6);
        assert_eq!(alpha_at(2, &root(1, 1)).unwrap(), 5);
        assert_eq!(alpha_at(3, &rational(-1, 3)).unwrap(), 8);
        assert_eq!(alpha_at(3, &rational(-3, 10)).unwrap(), 7);
        assert_eq!(alpha_at(3, &rational(-1, 10)).unwrap(), 6);
        assert_eq!(alpha_at(3, &root(2, 2)).unwrap(), 7);
        assert!(matches!(
            alpha_at(4, &rational(0, 1)),
            Err(ClassifyError::UnsupportedDimension(4))
        ));
    }
}
