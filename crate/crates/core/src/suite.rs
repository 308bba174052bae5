//! Instance resolution, the verification suite, and report emission.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::checks::{sorted, Check};
use crate::double::{double_modular_data, DoubleModel};
use crate::equivariant::{
    check_braiding, clifford_check, functor_multiplicities, match_to_double, orbifold_smatrix_rows, BraidingReport,
    CliffordReport, EquivalenceReport, Orbifold,
};
use crate::error::{Error, Result};
use crate::group::{group_from_spec_with_cap, parse_perm_list, quotient_with_section, FiniteGroup, Perm, QuotientData, Subgroup, DEFAULT_ORDER_CAP};
use crate::rep::character_table;
use crate::scalars::{Cyclotomic, ToleranceConfig};

pub const SCHEMA_VERSION: &str = "1.0.0";

pub const DEFAULT_CATALOG: [&str; 6] = ["S3/index:2", "Q8/center", "Z4/index:2", "S4/index:2", "S4/index:6", "D4/center"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CheckKind {
    Repa,
    Sectors,
    Cocycles,
    Dsimples,
    Functors,
    Braiding,
    Smatrix,
    Match,
    Clifford,
}

impl CheckKind {
    pub const ALL: [CheckKind; 9] = [
        CheckKind::Repa,
        CheckKind::Sectors,
        CheckKind::Cocycles,
        CheckKind::Dsimples,
        CheckKind::Functors,
        CheckKind::Braiding,
        CheckKind::Smatrix,
        CheckKind::Match,
        CheckKind::Clifford,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckKind::Repa => "repa",
            CheckKind::Sectors => "sectors",
            CheckKind::Cocycles => "cocycles",
            CheckKind::Dsimples => "dsimples",
            CheckKind::Functors => "functors",
            CheckKind::Braiding => "braiding",
            CheckKind::Smatrix => "smatrix",
            CheckKind::Match => "match",
            CheckKind::Clifford => "clifford",
        }
    }
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CheckKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CheckKind::ALL
            .into_iter()
            .find(|k| k.name() == s.trim())
            .ok_or_else(|| Error::Invalid(format!("unknown check `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Text,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "text" => Ok(Format::Text),
            _ => Err(Error::Invalid(format!("unknown format `{s}`"))),
        }
    }
}

/// A resolved (M, N) pair.
#[derive(Debug, Clone)]
pub struct Instance {
    pub spec: String,
    pub m: FiniteGroup,
    pub n: Subgroup,
    pub quotient: QuotientData,
}

fn element_from_cycles(m: &FiniteGroup, spec: &str, cycles: &[Vec<usize>]) -> Result<usize> {
    let degree = m.perm(0).map_or(0, Perm::degree);
    if cycles.iter().flatten().any(|&i| i >= degree) {
        return Err(Error::Invalid(format!("generator in `{spec}` moves points outside 0..{degree}")));
    }
    m.find_perm(&Perm::from_cycles(degree, cycles))
        .ok_or_else(|| Error::NoSuchSubgroup { selector: spec.to_string() })
}

fn select_subgroup(m: &FiniteGroup, selector: &str) -> Result<Subgroup> {
    let sel = selector.trim();
    match sel {
        "center" => return Ok(m.center()),
        "derived" => return Ok(m.derived_subgroup()),
        "trivial" => return Ok(m.trivial_subgroup()),
        "all" | "whole" => return Ok(m.whole()),
        _ => {}
    }
    if let Some(k) = sel.strip_prefix("index:") {
        let k: usize = k.trim().parse().map_err(|_| Error::Invalid(format!("bad index in `{sel}`")))?;
        let hits: Vec<Subgroup> = m
            .normal_subgroups()
            .into_iter()
            .filter(|s| k > 0 && s.order() * k == m.order())
            .collect();
        return match hits.len() {
            0 => Err(Error::NoSuchSubgroup { selector: sel.to_string() }),
            1 => Ok(hits.into_iter().next().unwrap()),
            count => Err(Error::AmbiguousSelector { selector: sel.to_string(), count }),
        };
    }
    let body = sel.strip_prefix("gens:").unwrap_or(sel);
    let gens = parse_perm_list(sel, body)?
        .iter()
        .map(|c| element_from_cycles(m, sel, c))
        .collect::<Result<Vec<_>>>()?;
    Ok(m.subgroup_generated(&gens))
}

/// Resolve "<group-spec>/<selector>", verifying normality.
pub fn resolve_instance(spec: &str, allow_degenerate: bool, max_order: usize) -> Result<Instance> {
    let (group, selector) = spec
        .rsplit_once('/')
        .ok_or_else(|| Error::Invalid(format!("instance `{spec}` lacks a /<selector>")))?;
    let m = group_from_spec_with_cap(group, max_order)?;
    let n = select_subgroup(&m, selector)?;
    if let Some((g, x)) = n.normality_witness(&m) {
        return Err(Error::NotNormal {
            witness: format!("{} by {}", m.element_name(x), m.element_name(g)),
        });
    }
    if !allow_degenerate && (n.is_trivial() || n.order() == m.order()) {
        let reason = if n.is_trivial() { "selector yields the trivial subgroup" } else { "selector yields the whole group" };
        return Err(Error::Degenerate { spec: spec.to_string(), reason: reason.into() });
    }
    let quotient = quotient_with_section(&m, &n)?;
    Ok(Instance { spec: spec.to_string(), m, n, quotient })
}

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub instances: Vec<String>,
    pub checks: Vec<CheckKind>,
    pub tol: ToleranceConfig,
    pub format: Format,
    pub allow_degenerate: bool,
    pub max_order: usize,
    pub braiding_triples: usize,
    pub basis_per_triple: usize,
    pub timing: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            instances: DEFAULT_CATALOG.iter().map(|s| s.to_string()).collect(),
            checks: CheckKind::ALL.to_vec(),
            tol: ToleranceConfig::default(),
            format: Format::Json,
            allow_degenerate: false,
            max_order: DEFAULT_ORDER_CAP,
            braiding_triples: 20,
            basis_per_triple: 8,
            timing: false,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DetailCheck {
    pub kind: &'static str,
    #[serde(flatten)]
    pub check: Check,
}

#[derive(Debug, Clone, Serialize)]
pub struct InstanceReport {
    pub input: String,
    pub group_order: usize,
    pub subgroup_order: usize,
    pub passed: bool,
    /// check kind → pass
    pub checks: BTreeMap<&'static str, bool>,
    pub details: Vec<DetailCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub equivalence: Option<EquivalenceReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub clifford: Option<CliffordReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub braiding: Option<BraidingReport>,
    /// s_{V_λ, X}: rows over Irr(G), columns over D-simples
    #[serde(skip_serializing_if = "Option::is_none")]
    pub smatrix_rows: Option<Vec<Vec<Cyclotomic>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl InstanceReport {
    pub fn kind_passed(&self, kind: CheckKind) -> Option<bool> {
        self.checks.get(kind.name()).copied()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub schema_version: &'static str,
    pub passed: bool,
    pub instances: Vec<InstanceReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl SuiteReport {
    pub fn instance(&self, input: &str) -> Option<&InstanceReport> {
        self.instances.iter().find(|r| r.input == input)
    }
}

/// Resolve every instance up front, then run the selected checks per instance
/// in a fixed order. Only configuration errors are returned as `Err`.
pub fn run_verify_suite(cfg: &SuiteConfig) -> Result<SuiteReport> {
    if !cfg.tol.is_valid() {
        return Err(Error::Invalid("tolerances must be positive".into()));
    }
    let resolved: Vec<Instance> = cfg
        .instances
        .iter()
        .map(|s| resolve_instance(s, cfg.allow_degenerate, cfg.max_order))
        .collect::<Result<_>>()?;
    let mut kinds = cfg.checks.clone();
    kinds.sort();
    kinds.dedup();
    let start = Instant::now();
    let instances: Vec<InstanceReport> = resolved.par_iter().map(|inst| run_instance(inst, &kinds, cfg)).collect();
    Ok(SuiteReport {
        schema_version: SCHEMA_VERSION,
        passed: instances.iter().all(|r| r.passed),
        instances,
        elapsed_ms: cfg.timing.then(|| start.elapsed().as_millis() as u64),
    })
}

struct Ctx<'a> {
    orb: &'a Orbifold,
    dm: Option<&'a DoubleModel>,
    cfg: &'a SuiteConfig,
    input: &'a str,
}

fn run_instance(inst: &Instance, kinds: &[CheckKind], cfg: &SuiteConfig) -> InstanceReport {
    let start = Instant::now();
    let mut report = InstanceReport {
        input: inst.spec.clone(),
        group_order: inst.m.order(),
        subgroup_order: inst.n.order(),
        passed: true,
        checks: BTreeMap::new(),
        details: Vec::new(),
        equivalence: None,
        clifford: None,
        braiding: None,
        smatrix_rows: None,
        elapsed_ms: None,
    };
    let needs_double = kinds.iter().any(|k| matches!(k, CheckKind::Dsimples | CheckKind::Match));
    let built = Orbifold::new(&inst.m, &inst.n, &cfg.tol).and_then(|orb| {
        let dm = if needs_double { Some(double_modular_data(&inst.m)?) } else { None };
        Ok((orb, dm))
    });
    for &kind in kinds {
        let checks = match &built {
            Ok((orb, dm)) => {
                let ctx = Ctx { orb, dm: dm.as_ref(), cfg, input: &inst.spec };
                run_kind(&ctx, kind, &mut report).unwrap_or_else(|e| vec![Check::fail("construction", e.to_string())])
            }
            Err(e) => vec![Check::fail("construction", e.to_string())],
        };
        let ok = checks.iter().all(|c| c.pass);
        report.checks.insert(kind.name(), ok);
        report.passed &= ok;
        report
            .details
            .extend(checks.into_iter().map(|check| DetailCheck { kind: kind.name(), check }));
    }
    if cfg.timing {
        report.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    }
    report
}

fn run_kind(ctx: &Ctx, kind: CheckKind, report: &mut InstanceReport) -> Result<Vec<Check>> {
    match kind {
        CheckKind::Repa => repa_checks(ctx.orb),
        CheckKind::Sectors => sector_checks(ctx.orb),
        CheckKind::Cocycles => cocycle_checks(ctx.orb, ctx.cfg),
        CheckKind::Dsimples => dsimple_checks(ctx.orb, ctx.dm.expect("double model built")),
        CheckKind::Functors => Ok(functor_checks(ctx.orb)),
        CheckKind::Braiding => {
            let r = check_braiding(ctx.orb, ctx.cfg.braiding_triples, ctx.cfg.basis_per_triple, 1e-7);
            let mut checks = vec![Check::from_result("descent and Yang-Baxter", &r)];
            if let Ok(b) = &r {
                checks.push(Check::from_bool("seeded triples", b.object_triples >= ctx.cfg.braiding_triples && b.basis_triples > 0, || {
                    format!("{} object triples, {} basis triples", b.object_triples, b.basis_triples)
                }));
                checks.push(Check::from_bool("double braiding with the unit is the identity", b.max_unit_double_braiding_defect <= 1e-9, || {
                    format!("defect {:e}", b.max_unit_double_braiding_defect)
                }));
                checks.push(Check::from_bool("untwisted objects braid as in C", b.untwisted_plain_flip, || "mismatch".into()));
                report.braiding = Some(b.clone());
            }
            Ok(checks)
        }
        CheckKind::Smatrix => smatrix_checks(ctx.orb, report),
        CheckKind::Match => {
            let r = match_to_double(ctx.orb, ctx.dm.expect("double model built"), ctx.input)?;
            let checks = r.checks.clone();
            report.equivalence = Some(r);
            Ok(checks)
        }
        CheckKind::Clifford => {
            let r = clifford_check(ctx.orb, ctx.input)?;
            let checks = r.checks.clone();
            report.clifford = Some(r);
            Ok(checks)
        }
    }
}

fn repa_checks(orb: &Orbifold) -> Result<Vec<Check>> {
    let rep = &orb.rep;
    let n_group = rep.n.to_group(&rep.m).group;
    let dn = double_modular_data(&n_group)?;
    let pairs = rep.untwisted_to_double(&dn);
    let mut hit: Vec<usize> = pairs.iter().filter_map(|p| p.1).collect();
    hit.sort();
    hit.dedup();
    let bij = pairs.iter().all(|p| p.1.is_some()) && hit.len() == pairs.len() && pairs.len() == dn.simples.len();
    let mut ours: Vec<usize> = pairs.iter().map(|p| rep.labels[p.0].dim_a).collect();
    let mut theirs: Vec<usize> = (0..dn.simples.len()).map(|i| dn.dim(i)).collect();
    ours.sort();
    theirs.sort();

    let g_order = rep.g_order();
    let mut per_sector = vec![0usize; g_order];
    let mut count = vec![0usize; g_order];
    for l in &rep.labels {
        per_sector[l.sector] += l.dim_a * l.dim_a;
        count[l.sector] += 1;
    }
    let n2 = rep.n.order() * rep.n.order();
    let empty = count.iter().position(|&c| c == 0);
    let bad_sum = per_sector.iter().position(|&s| s != n2);

    let worst = orb.modules.iter().map(|md| md.defect(rep)).fold(0.0, f64::max);
    Ok(vec![
        Check::from_bool("untwisted labels biject with simples of D(N)", bij, || {
            format!("{} untwisted labels, {} simples of D(N), {} matched", pairs.len(), dn.simples.len(), hit.len())
        }),
        Check::from_bool("untwisted dimensions equal D(N) dimensions", ours == theirs, || format!("{ours:?} vs {theirs:?}")),
        Check::from_bool("every sector is nonempty", empty.is_none(), || format!("sector {} is empty", empty.unwrap())),
        Check::from_bool("per-sector sum of dim^2 equals |N|^2", bad_sum.is_none(), || {
            format!("sector sums {per_sector:?}, expected {n2}")
        }),
        Check::from_bool("graded modules satisfy the module relations", worst <= 1e-9, || format!("defect {worst:e}")),
    ])
}

fn sector_checks(orb: &Orbifold) -> Result<Vec<Check>> {
    let rep = &orb.rep;
    let g = orb.g_group();
    let nl = rep.num_labels();
    let mut conj_bad = None;
    'outer: for h in g.elements() {
        let hinv = g.inv(h);
        for x in 0..nl {
            let lhs = rep.sector(rep.act_on_label(hinv, x));
            let rhs = g.mul(g.mul(hinv, rep.sector(x)), h);
            if lhs != rhs {
                conj_bad = Some((h, x));
                break 'outer;
            }
        }
    }
    let mut fuse_bad = None;
    'fuse: for x in 0..nl {
        for y in 0..nl {
            let want = g.mul(rep.sector(x), rep.sector(y));
            let mult = rep.fuse_labels(x, y)?;
            if let Some(z) = (0..nl).find(|&z| mult[z] > 0 && rep.sector(z) != want) {
                fuse_bad = Some((x, y, z));
                break 'fuse;
            }
        }
    }
    let mut dual_bad = None;
    for x in 0..nl {
        let d = rep.dual_label(x)?;
        if rep.sector(d) != g.inv(rep.sector(x)) {
            dual_bad = Some(x);
            break;
        }
    }
    Ok(vec![
        Check::from_bool("sector(h^-1 . X) = h^-1 sector(X) h", conj_bad.is_none(), || format!("{:?}", conj_bad.unwrap())),
        Check::from_bool("sectors multiply under fusion", fuse_bad.is_none(), || format!("{:?}", fuse_bad.unwrap())),
        Check::from_bool("sectors invert under duals", dual_bad.is_none(), || format!("label {}", dual_bad.unwrap())),
    ])
}

fn cocycle_checks(orb: &Orbifold, cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let tol = orb.tol();
    let mut checks = Vec::new();
    let mut verify_bad = None;
    let mut count_bad = None;
    let mut sum_bad = None;
    for (i, c) in orb.cocycles.iter().enumerate() {
        if let Err(e) = c.alpha.verify(&c.stabilizer.group, tol) {
            verify_bad.get_or_insert(format!("orbit {i}: {e}"));
        }
        if c.irreps.degrees.len() != c.alpha_regular {
            count_bad.get_or_insert(format!("orbit {i}: {} irreps, {} regular classes", c.irreps.degrees.len(), c.alpha_regular));
        }
        let sq: usize = c.irreps.degrees.iter().map(|d| d * d).sum();
        if sq != c.stabilizer.group.order() {
            sum_bad.get_or_insert(format!("orbit {i}: sum of squares {sq}, stabilizer order {}", c.stabilizer.group.order()));
        }
    }
    checks.push(Check::from_bool("orbit cocycles satisfy the 2-cocycle identity", verify_bad.is_none(), || verify_bad.clone().unwrap()));
    checks.push(Check::from_bool("twisted irreps count alpha-regular classes", count_bad.is_none(), || count_bad.clone().unwrap()));
    checks.push(Check::from_bool("twisted degrees square-sum to the stabilizer order", sum_bad.is_none(), || sum_bad.clone().unwrap()));

    // the regular-class count is a cohomology invariant, so it must not depend on the section
    let q = orb.rep.quotient.randomized_section(cfg.tol.rng_seed ^ 0x5eed);
    let mut section_bad = None;
    for (i, o) in orb.orbits.iter().enumerate() {
        let r = orb.alpha_regular_at(&q, o.base)?;
        if r != orb.cocycles[i].alpha_regular {
            section_bad = Some(format!("orbit {i}: {r} vs {}", orb.cocycles[i].alpha_regular));
            break;
        }
    }
    checks.push(Check::from_bool("cocycle class is independent of the section", section_bad.is_none(), || section_bad.unwrap()));
    Ok(checks)
}

fn dsimple_checks(orb: &Orbifold, dm: &DoubleModel) -> Result<Vec<Check>> {
    let m2 = orb.rep.m.order().pow(2);
    let gd = orb.global_dim_sq();
    let mut proj_bad = None;
    for s in orb.orbits.iter().map(|o| o.base) {
        let (idem, rank) = orb.sym_projector_check(s);
        let want = orb.g_group().order() * orb.rep.labels[s].dim_a;
        if !idem || rank != want {
            proj_bad = Some(format!("label {s}: idempotent {idem}, rank {rank}, expected {want}"));
            break;
        }
    }
    Ok(vec![
        Check::from_bool("sum of dim^2 equals |M|^2", gd == m2, || format!("{gd} vs {m2}")),
        Check::from_bool("D-simple count equals simples of D(M)", orb.d_simples.len() == dm.simples.len(), || {
            format!("{} vs {}", orb.d_simples.len(), dm.simples.len())
        }),
        Check::from_bool("G-averaging is a projector of the expected rank", proj_bad.is_none(), || proj_bad.unwrap()),
    ])
}

fn functor_checks(orb: &Orbifold) -> Vec<Check> {
    let fm = functor_multiplicities(orb);
    let recip = fm.reciprocity_witness();
    let deg_bad = orb
        .d_simples
        .iter()
        .enumerate()
        .find(|(d, ds)| fm.g[orb.orbits[ds.orbit].base][*d] != ds.lambda_deg as u64)
        .map(|(d, _)| d);
    let d0_bad = orb
        .d0_simples()
        .into_iter()
        .find(|&d| (0..orb.rep.num_labels()).any(|t| fm.f[d][t] != 0 && !orb.rep.labels[t].is_untwisted()));
    vec![
        Check::from_bool("F equals the transpose of G", recip.is_none(), || format!("{:?}", recip.unwrap())),
        Check::from_bool("induction multiplicities equal twisted degrees", deg_bad.is_none(), || format!("D-simple {}", deg_bad.unwrap())),
        Check::from_bool("untwisted D-simples restrict to untwisted labels", d0_bad.is_none(), || format!("D-simple {}", d0_bad.unwrap())),
    ]
}

fn smatrix_checks(orb: &Orbifold, report: &mut InstanceReport) -> Result<Vec<Check>> {
    let g_table = character_table(orb.g_group())?;
    let rows = orbifold_smatrix_rows(orb, &g_table);
    let mut bad = None;
    'outer: for (a, ra) in rows.iter().enumerate() {
        for (b, rb) in rows.iter().enumerate() {
            let dot: Cyclotomic = ra.iter().zip(rb).map(|(x, y)| x * &y.conj()).sum();
            let want = if a == b { Cyclotomic::one() } else { Cyclotomic::zero() };
            if dot != want {
                bad = Some(format!("rows {a}, {b}: {dot}"));
                break 'outer;
            }
        }
    }
    let dims: Vec<usize> = sorted(&orb.d_simples.iter().map(|d| d.dim).collect::<Vec<_>>());
    let m = orb.rep.m.order() as i64;
    let first_ok = orb
        .d_simples
        .iter()
        .zip(&rows[0])
        .all(|(d, v)| *v == Cyclotomic::from_rational(crate::scalars::Q::new(d.dim as i64, m)));
    report.smatrix_rows = Some(rows);
    Ok(vec![
        Check::from_bool("rows for irreps of G are orthonormal", bad.is_none(), || bad.unwrap()),
        Check::from_bool("trivial row equals dims/|M|", first_ok, || format!("dims {dims:?}")),
    ])
}

/// Canonical bytes for a report: JSON with sorted keys, or one line per check.
pub fn emit_report(r: &SuiteReport, format: Format) -> String {
    match format {
        Format::Json => {
            let value = serde_json::to_value(r).expect("report serializes");
            let mut s = serde_json::to_string_pretty(&value).expect("value serializes");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut out = String::new();
            for inst in &r.instances {
                for d in &inst.details {
                    let status = if d.check.pass { "PASS" } else { "FAIL" };
                    out.push_str(&format!("{status} {} {}: {}", inst.input, d.kind, d.check.name));
                    if let Some(w) = &d.check.witness {
                        out.push_str(&format!(" ({w})"));
                    }
                    out.push('\n');
                }
            }
            let status = if r.passed { "PASS" } else { "FAIL" };
            out.push_str(&format!("{status} suite: {} instances\n", r.instances.len()));
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn selectors() {
        let i = resolve_instance("S3/index:2", false, 64).unwrap();
        assert_eq!(i.n.order(), 3);
        let q = resolve_instance("Q8/center", false, 64).unwrap();
        assert_eq!(q.n.order(), 2);
        assert!(matches!(resolve_instance("S4/center", false, 64), Err(Error::Degenerate { .. })));
        assert!(resolve_instance("S4/center", true, 64).is_ok());
        assert!(matches!(resolve_instance("Z2xZ2/index:2", false, 64), Err(Error::AmbiguousSelector { count: 3, .. })));
        assert!(matches!(resolve_instance("S3/index:4", false, 64), Err(Error::NoSuchSubgroup { .. })));
        let g = resolve_instance("S3/gens:(1 2 3)", false, 64).unwrap();
        assert_eq!(g.n.order(), 3);
        assert!(matches!(resolve_instance("S3/gens:(1 2)", false, 64), Err(Error::NotNormal { .. })));
        assert!(matches!(resolve_instance("S5/derived", false, 64), Err(Error::OrderCap { .. })));
    }

    #[test]
    fn empty_suite_passes() {
        let cfg = SuiteConfig { instances: vec![], ..Default::default() };
        let r = run_verify_suite(&cfg).unwrap();
        assert!(r.passed);
        assert!(r.instances.is_empty());
    }

    #[test]
    fn non_normal_refuses_to_start() {
        let cfg = SuiteConfig { instances: vec!["S3/index:2".into(), "S3/gens:(1 2)".into()], ..Default::default() };
        assert!(run_verify_suite(&cfg).is_err());
    }

    #[test]
    fn s3_suite() {
        let cfg = SuiteConfig { instances: vec!["S3/index:2".into()], ..Default::default() };
        let r = run_verify_suite(&cfg).unwrap();
        let text = emit_report(&r, Format::Text);
        assert!(r.passed, "{text}");
        let json = emit_report(&r, Format::Json);
        assert!(json.contains("\"match\": true"));
        assert_eq!(json, emit_report(&run_verify_suite(&cfg).unwrap(), Format::Json));
        assert!(text.lines().all(|l| l.starts_with("PASS")));
    }
}
