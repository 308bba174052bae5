//! Rows s_{V_λ, X} of the S-matrix of D and the certificate D ≃ Rep D(M).

use std::collections::HashMap;

use serde::Serialize;

use super::functors::{c_side_induction, functor_multiplicities};
use super::{DSimple, Orbifold};
use crate::checks::Check;
use crate::double::DoubleModel;
use crate::error::Result;
use crate::rep::{character_table, CharacterTable};
use crate::scalars::{Cyclotomic, Q};

/// (λ ∈ Irr G) × D-simple:
/// s_{V_λ, X} = (1/|M|) Σ_g dim_A(X_g)·χ_λ(g).
pub fn orbifold_smatrix_rows(orb: &Orbifold, g_table: &CharacterTable) -> Vec<Vec<Cyclotomic>> {
    let m_order = orb.rep.m.order() as i64;
    let g_order = orb.rep.g_order();
    g_table
        .values
        .iter()
        .enumerate()
        .map(|(lambda, _)| {
            orb.d_simples
                .iter()
                .map(|d| {
                    let mut per_sector = vec![0i64; g_order];
                    for &t in &orb.orbits[d.orbit].labels {
                        let l = orb.rep.labels[t];
                        per_sector[l.sector] += (d.lambda_deg * l.dim_a) as i64;
                    }
                    let sum: Cyclotomic = (0..g_order)
                        .filter(|&g| per_sector[g] != 0)
                        .map(|g| g_table.value(lambda, g).scale(Q::from_integer(per_sector[g])))
                        .sum();
                    sum.scale(Q::new(1, m_order))
                })
                .collect()
        })
        .collect()
}

/// Number of simples of Rep(C[M] ⋉ F(N)): pairs (M-class inside N, irrep of
/// its centralizer in M).
pub fn c1_census(dm: &DoubleModel, n_members: &[usize]) -> usize {
    dm.classes
        .iter()
        .filter(|c| n_members.binary_search(&c.rep).is_ok())
        .map(|c| c.table.num_irreps())
        .sum()
}

#[derive(Debug, Clone, Serialize)]
pub struct OrbitSummary {
    pub labels: Vec<usize>,
    pub stab_order: usize,
    pub alpha_regular: usize,
    pub cocycle_trivial: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Bijection {
    pub d_simple: usize,
    pub double_simple: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct EquivalenceReport {
    pub input: String,
    pub orbits: Vec<OrbitSummary>,
    pub d_simples: Vec<DSimple>,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bijection: Option<Vec<Bijection>>,
}

impl EquivalenceReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

pub fn orbit_summaries(orb: &Orbifold) -> Vec<OrbitSummary> {
    orb.orbits
        .iter()
        .zip(&orb.cocycles)
        .map(|(o, c)| OrbitSummary {
            labels: o.labels.clone(),
            stab_order: o.stabilizer.len(),
            alpha_regular: c.alpha_regular,
            cocycle_trivial: c.is_trivial(),
        })
        .collect()
}

/// Index in D(M)'s label list of (e, λ∘p) for each λ ∈ Irr(G).
fn pulled_back_labels(orb: &Orbifold, dm: &DoubleModel, g_table: &CharacterTable) -> Vec<Option<usize>> {
    let whole = &dm.classes[0];
    g_table
        .values
        .iter()
        .enumerate()
        .map(|(lambda, _)| {
            let row: Vec<Cyclotomic> = whole
                .table
                .class_reps
                .iter()
                .map(|&local| {
                    let x = whole.centralizer.to_parent(local);
                    g_table.value(lambda, orb.rep.quotient.project(x)).clone()
                })
                .collect();
            whole.table.find_row(&row).and_then(|pi| dm.index_of(0, pi))
        })
        .collect()
}

/// Match D-simples to simples of D(M) by (dimension, S-row) signatures, refined
/// by the decomposition of induced objects when that refinement is consistent.
pub fn match_to_double(orb: &Orbifold, dm: &DoubleModel, input: &str) -> Result<EquivalenceReport> {
    let mut checks = Vec::new();
    let nd = orb.d_simples.len();
    let nm = dm.simples.len();
    checks.push(Check::from_bool("simple count", nd == nm, || format!("{nd} D-simples vs {nm} simples of D(M)")));

    let mut dims_d: Vec<usize> = orb.d_simples.iter().map(|d| d.dim).collect();
    let mut dims_m: Vec<usize> = (0..nm).map(|i| dm.dim(i)).collect();
    dims_d.sort();
    dims_m.sort();
    checks.push(Check::from_bool("dimension multiset", dims_d == dims_m, || format!("{dims_d:?} vs {dims_m:?}")));

    let gd = orb.global_dim_sq();
    let m_order = orb.rep.m.order();
    checks.push(Check::from_bool("global dimension", gd == m_order * m_order, || format!("sum of dim^2 = {gd}")));

    let g_table = character_table(orb.g_group())?;
    let rows = orbifold_smatrix_rows(orb, &g_table);
    let triv_bad = (0..nd).find(|&d| rows[0][d] != Cyclotomic::from_rational(Q::new(orb.d_simples[d].dim as i64, m_order as i64)));
    checks.push(Check::from_bool("trivial S-row equals dims/|M|", triv_bad.is_none(), || {
        format!("D-simple {} has entry {}", triv_bad.unwrap(), rows[0][triv_bad.unwrap()])
    }));

    let pulled = pulled_back_labels(orb, dm, &g_table);
    let pulled_ok = pulled.iter().all(|p| p.is_some());
    checks.push(Check::from_bool("pulled-back irreps of G found in D(M)", pulled_ok, || "missing λ∘p".into()));

    let mut bijection = None;
    if pulled_ok {
        let pulled: Vec<usize> = pulled.into_iter().map(|p| p.unwrap()).collect();
        let sig_d = |d: usize| (orb.d_simples[d].dim, rows.iter().map(|r| r[d].clone()).collect::<Vec<_>>());
        let sig_m = |b: usize| (dm.dim(b), pulled.iter().map(|&e| dm.data.s[e][b].clone()).collect::<Vec<_>>());

        let fm = functor_multiplicities(orb);
        let ind_c: Vec<Vec<u64>> = (0..orb.rep.num_labels())
            .map(|s| c_side_induction(orb, dm, s))
            .collect::<Result<_>>()?;
        let ind_d = |d: usize| (0..orb.rep.num_labels()).map(|s| fm.g[s][d]).collect::<Vec<_>>();
        let ind_m = |b: usize| (0..orb.rep.num_labels()).map(|s| ind_c[s][b]).collect::<Vec<_>>();

        let refined = pair_by_key(nd, nm, |d| (sig_d(d), ind_d(d)), |b| (sig_m(b), ind_m(b)));
        let coarse = pair_by_key(nd, nm, sig_d, sig_m);
        checks.push(match &coarse {
            Ok(_) => Check::pass("S-rows match under a bijection"),
            Err(w) => Check::fail("S-rows match under a bijection", w.clone()),
        });
        checks.push(match &refined {
            Ok(_) => Check::pass("induced objects match C-side induction"),
            Err(w) => Check::fail("induced objects match C-side induction", w.clone()),
        });
        bijection = refined.ok().or(coarse.ok()).map(|pairs| {
            pairs
                .into_iter()
                .map(|(d, b)| Bijection { d_simple: d, double_simple: b })
                .collect()
        });
    }

    let c1 = c1_census(dm, orb.rep.n.members());
    let d0 = orb.d0_simples().len();
    checks.push(Check::from_bool("C1 census equals D0 count", c1 == d0, || format!("C1 has {c1} simples, D0 has {d0}")));

    Ok(EquivalenceReport {
        input: input.to_string(),
        orbits: orbit_summaries(orb),
        d_simples: orb.d_simples.clone(),
        checks,
        bijection,
    })
}

/// Pairs items with equal keys, in index order; Err carries the first
/// unmatched key class.
fn pair_by_key<K, FD, FM>(nd: usize, nm: usize, kd: FD, km: FM) -> std::result::Result<Vec<(usize, usize)>, String>
where
    K: std::hash::Hash + Eq + std::fmt::Debug,
    FD: Fn(usize) -> K,
    FM: Fn(usize) -> K,
{
    if nd != nm {
        return Err(format!("{nd} vs {nm} objects"));
    }
    let mut pool: HashMap<K, Vec<usize>> = HashMap::new();
    for b in 0..nm {
        pool.entry(km(b)).or_default().push(b);
    }
    for v in pool.values_mut() {
        v.reverse();
    }
    let mut out = Vec::with_capacity(nd);
    for d in 0..nd {
        let key = kd(d);
        match pool.get_mut(&key).and_then(|v| v.pop()) {
            Some(b) => out.push((d, b)),
            None => return Err(format!("D-simple {d} with signature {key:?} has no partner")),
        }
    }
    Ok(out)
}
