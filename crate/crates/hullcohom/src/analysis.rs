//! End-to-end computation for one arrangement, plus fixture comparison.

use std::collections::BTreeMap;
use std::fmt;

use hullcohom_core::complement::{
    betti_complement, complement_report, expected_complement_euler, ComplementReport, RankInterval,
};
use hullcohom_core::equivariant::{act_on_poset, analyze, EquivariantReport, FiniteMatrixGroup};
use hullcohom_core::poset::{build_poset, IntersectionPoset};
use hullcohom_core::spectral::{betti_2d_closed_form, build_d1, build_e1, compute_betti, BettiVector, Differential, SpectralPage};
use hullcohom_core::torus::Arrangement;

use crate::catalog::{CatalogEntry, Combinatorial, Fixtures, Source};
use crate::format::{ArrangementFile, ParseError};

#[derive(Debug)]
pub enum Failure {
    Parse(ParseError),
    Unknown(String),
    Usage(String),
    /// The computation contradicted itself or the input is not what it claims.
    Inconsistent(String),
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Parse(e) => write!(f, "parse error: {e}"),
            Failure::Unknown(s) => write!(f, "unknown entry '{s}'"),
            Failure::Usage(s) => f.write_str(s),
            Failure::Inconsistent(s) => write!(f, "inconsistent: {s}"),
        }
    }
}

impl std::error::Error for Failure {}

impl From<hullcohom_core::Error> for Failure {
    fn from(e: hullcohom_core::Error) -> Self {
        Failure::Inconsistent(e.to_string())
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Parse(e)
    }
}

/// Everything computed for an arrangement given by tori.
#[derive(Debug)]
pub struct Geometric {
    pub file: ArrangementFile,
    pub arrangement: Arrangement,
    pub poset: IntersectionPoset,
    pub page: SpectralPage,
    pub d1: Differential,
    pub betti: BettiVector,
    pub complement: ComplementReport,
    pub equivariant: Option<Equivariant>,
}

#[derive(Debug)]
pub struct Equivariant {
    pub group: FiniteMatrixGroup,
    pub report: EquivariantReport,
}

/// Betti numbers from the counts alone.
#[derive(Debug)]
pub struct Counted {
    pub params: Combinatorial,
    pub betti_a: Vec<usize>,
    pub betti_complement: Vec<usize>,
}

impl Counted {
    /// `E^1` of the planar spectral sequence, `(p, q) -> rank`.
    pub fn e1(&self) -> BTreeMap<(usize, usize), usize> {
        let sum: usize = self.params.n_k.values().sum();
        let weighted: usize = self.params.n_k.iter().map(|(k, n)| k * n).sum();
        let m = self.params.m;
        [((0, 2), m), ((0, 1), 2 * m), ((0, 0), m + sum), ((1, 0), weighted)].into_iter().collect()
    }
}

#[derive(Debug)]
pub enum Analysis {
    Geometric(Box<Geometric>),
    Counted(Counted),
}

pub fn analyze_file(file: ArrangementFile, with_group: bool) -> Result<Geometric, Failure> {
    let arrangement = file.arrangement()?;
    let poset = build_poset(&arrangement);
    let page = build_e1(&poset);
    let d1 = build_d1(&page, &poset);
    if !d1.squares_to_zero() {
        return Err(Failure::Inconsistent("d1 does not square to zero".into()));
    }
    let equivariant = match (&file.group, with_group) {
        (Some(spec), true) => {
            let group = spec.generate()?;
            let report = analyze(&arrangement, &poset, &page, &d1, &group, &spec.table)?;
            Some(Equivariant { group, report })
        }
        _ => None,
    };
    let supports = equivariant.as_ref().map(|e| e.report.supports());
    let betti = compute_betti(&page, &d1, supports.as_ref());
    if let Some(e) = &equivariant {
        if !e.report.dims_consistent(&betti.e2) {
            return Err(Failure::Inconsistent("irrep multiplicities do not add up to E2 dimensions".into()));
        }
    }
    let upper = equivariant.as_ref().map(|e| e.report.alpha_upper_by_degree());
    let complement = complement_report(&poset, &betti, upper.as_deref())?;
    if let (Some(a), Some(c)) = (betti.values(), complement.betti()) {
        let chi: i64 = c.iter().enumerate().map(|(i, &x)| if i % 2 == 0 { x as i64 } else { -(x as i64) }).sum();
        if chi != expected_complement_euler(a, arrangement.ambient_dim()) {
            return Err(Failure::Inconsistent("Euler characteristic of the complement is off".into()));
        }
    }
    Ok(Geometric { file, arrangement, poset, page, d1, betti, complement, equivariant })
}

pub fn analyze_counts(params: &Combinatorial) -> Result<Counted, Failure> {
    let n = params.ambient_dim;
    let b = betti_2d_closed_form(params.m, params.p, &params.n_k);
    let mut betti_a = vec![0; n + 1];
    betti_a[..3].copy_from_slice(&b);
    if params.c.len() != n + 1 {
        return Err(Failure::Inconsistent(format!("c needs {} entries", n + 1)));
    }
    let a: Vec<RankInterval> = betti_a.iter().map(|&x| RankInterval::exact(x)).collect();
    let c: Vec<RankInterval> = params.c.iter().map(|&x| RankInterval::exact(x)).collect();
    let out = betti_complement(&a, &c, n)?;
    let betti_complement = out.iter().map(|r| r.value().expect("exact input")).collect();
    Ok(Counted { params: params.clone(), betti_a, betti_complement })
}

pub fn analyze_entry(entry: &CatalogEntry, with_group: bool) -> Result<Analysis, Failure> {
    match &entry.source {
        Source::Geometric(_) => {
            let file = entry.file().expect("geometric")?;
            Ok(Analysis::Geometric(Box::new(analyze_file(file, with_group)?)))
        }
        Source::Combinatorial(c) => Ok(Analysis::Counted(analyze_counts(c)?)),
    }
}

/// Orbit sizes of poset elements of each dimension under the group spanned by
/// the given generators (indices into the file's generator list).
pub fn orbit_sizes(g: &Geometric, generators: &[usize]) -> Result<BTreeMap<usize, Vec<usize>>, Failure> {
    let spec = g.file.group.as_ref().ok_or_else(|| Failure::Usage("no symmetry group".into()))?;
    let gens = generators.iter().map(|&i| spec.generators[i].clone()).collect();
    let group = FiniteMatrixGroup::generate(gens)?;
    let action = act_on_poset(&group, &g.arrangement, &g.poset)?;
    let mut out: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for orbit in action.orbits() {
        out.entry(g.poset.element(orbit[0]).torus.dim()).or_default().push(orbit.len());
    }
    for v in out.values_mut() {
        v.sort_unstable_by(|a, b| b.cmp(a));
    }
    Ok(out)
}

/// One fixture that the computation disagrees with.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub key: String,
    pub expected: String,
    pub found: String,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: expected {}, found {}", self.key, self.expected, self.found)
    }
}

fn show<T: fmt::Debug>(x: T) -> String {
    format!("{x:?}")
}

struct Diff(Vec<Mismatch>);

impl Diff {
    fn check<T: PartialEq + fmt::Debug>(&mut self, key: impl Into<String>, expected: T, found: T) {
        if expected != found {
            self.0.push(Mismatch { key: key.into(), expected: show(expected), found: show(found) });
        }
    }
}

fn interval_values(v: &[RankInterval]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

/// Compares an analysis with the recorded fixtures.
pub fn compare(analysis: &Analysis, fx: &Fixtures) -> Vec<Mismatch> {
    let mut d = Diff(Vec::new());
    match analysis {
        Analysis::Counted(c) => {
            if let Some(r) = fx.table1 {
                d.check("table1.m", r.m, c.params.m);
                d.check("table1.c2", r.c2, c.params.c[2]);
                d.check("table1.b1", r.b1, c.betti_complement[1]);
                d.check("table1.b2", r.b2, c.betti_complement[2]);
            }
        }
        Analysis::Geometric(g) => {
            let mult: Vec<(usize, usize)> = g.poset.point_multiplicities().into_iter().collect();
            let betti_a = interval_values(&betti_vector(&g.betti));
            let c = interval_values(&g.complement.c);
            let bc = interval_values(&g.complement.betti_complement);
            let as_strings = |v: &[usize]| v.iter().map(ToString::to_string).collect::<Vec<_>>();
            if let Some(r) = fx.table1 {
                d.check("table1.m", r.m, g.arrangement.len());
                d.check("table1.p", r.p, g.poset.components());
                d.check("table1.n_k", r.n_k.to_vec(), mult.clone());
                d.check("table1.c2", r.c2.to_string(), c.get(2).cloned().unwrap_or_default());
                d.check("table1.b1", r.b1.to_string(), bc.get(1).cloned().unwrap_or_default());
                d.check("table1.b2", r.b2.to_string(), bc.get(2).cloned().unwrap_or_default());
            }
            if let Some(x) = fx.census {
                d.check("census", x.to_vec(), g.poset.census());
            }
            if let Some(x) = fx.n_k {
                d.check("n_k", x.to_vec(), mult);
            }
            if let Some(x) = fx.betti_a {
                d.check("betti_a", as_strings(x), betti_a);
            }
            if let Some(x) = fx.c {
                d.check("c", as_strings(x), c);
            }
            if let Some(x) = fx.betti_complement {
                d.check("betti_complement", as_strings(x), bc);
            }
            if let Some(ir) = fx.irreps {
                let Some(eq) = &g.equivariant else {
                    d.0.push(Mismatch { key: "irreps".into(), expected: "tables".into(), found: "no group".into() });
                    return d.0;
                };
                let t = &eq.report.table;
                let idx: Vec<Option<usize>> =
                    ir.irreps.iter().map(|name| t.names().iter().position(|n| n == name)).collect();
                let pick = |m: Option<&hullcohom_core::equivariant::IrrepDecomposition>| -> Vec<usize> {
                    idx.iter().map(|i| i.zip(m).map_or(0, |(i, m)| m.mult[i])).collect()
                };
                if idx.iter().any(Option::is_none) {
                    d.check("irreps.names", show(ir.irreps), show(t.names()));
                }
                for ((p, q), m) in &ir.e2 {
                    d.check(format!("e2[{p},{q}]"), m.to_vec(), pick(eq.report.e2.get(&(p.to_owned(), q.to_owned()))));
                }
                d.check("d2_vanishes", true, eq.report.d2_vanishes);
                for (n, (dim, m)) in ir.torus.iter().enumerate() {
                    let x = &eq.report.torus_cohomology[n];
                    d.check(format!("h{n}(torus)"), (*dim, m.to_vec()), (x.dim(t), pick(Some(x))));
                }
                for n in 0..eq.report.im_beta.len() {
                    let (dim, m) = ir.im_beta.get(n).map_or((0, vec![0; 10]), |(d, m)| (*d, m.to_vec()));
                    let x = eq.report.im_beta[n].as_ref();
                    d.check(format!("im_beta{n}"), Some((dim, m)), x.map(|x| (x.dim(t), pick(Some(x)))));
                }
                for k in 0..eq.report.complement.len() {
                    let (dim, m) = ir.complement.get(k).map_or((0, vec![0; 10]), |(d, m)| (*d, m.to_vec()));
                    let x = eq.report.complement[k].as_ref();
                    d.check(format!("h{k}(complement)"), Some((dim, m)), x.map(|x| (x.dim(t), pick(Some(x)))));
                }
            }
        }
    }
    d.0
}

/// `b(A)` as intervals (exact values collapse to single numbers).
pub fn betti_vector(b: &BettiVector) -> Vec<RankInterval> {
    b.lower.iter().zip(&b.upper).map(|(&l, &u)| RankInterval::new(l, u)).collect()
}
