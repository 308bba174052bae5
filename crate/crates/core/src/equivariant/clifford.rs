//! The symmetric model Rep M ≃ (Rep N)^G: orbits of G on Irr(N) with the
//! irreps of the twisted stabilizer algebras, compared with Irr(M).

use serde::Serialize;

use super::matcher::OrbitSummary;
use super::Orbifold;
use crate::checks::{sorted, Check};
use crate::error::Result;
use crate::rep::character_table;

#[derive(Debug, Clone, Serialize)]
pub struct CliffordReport {
    pub input: String,
    pub orbits: Vec<OrbitSummary>,
    pub dims: Vec<usize>,
    pub nontrivial_cocycle_orbits: usize,
    pub checks: Vec<Check>,
}

impl CliffordReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Labels (e, π) are exactly the irreps π of N; the orbit machinery restricted
/// to them is Clifford theory.
pub fn clifford_check(orb: &Orbifold, input: &str) -> Result<CliffordReport> {
    let rep = &orb.rep;
    let mut orbits = Vec::new();
    let mut dims = Vec::new();
    let mut nontrivial = 0;
    for (o, c) in orb.orbits.iter().zip(&orb.cocycles) {
        let base = rep.labels[o.base];
        if base.m != 0 {
            continue;
        }
        if !c.is_trivial() {
            nontrivial += 1;
        }
        orbits.push(OrbitSummary {
            labels: o.labels.clone(),
            stab_order: o.stabilizer.len(),
            alpha_regular: c.alpha_regular,
            cocycle_trivial: c.is_trivial(),
        });
        for &deg in &c.irreps.degrees {
            dims.push(deg * o.len() * base.dim_a);
        }
    }
    let table = character_table(&rep.m)?;
    let want = sorted(&table.irrep_degrees);
    let got = sorted(&dims);
    let checks = vec![
        Check::from_bool("simple count equals |Irr(M)|", dims.len() == want.len(), || {
            format!("{} vs {}", dims.len(), want.len())
        }),
        Check::from_bool("dimension multiset equals degrees of M", got == want, || format!("{got:?} vs {want:?}")),
    ];
    Ok(CliffordReport {
        input: input.to_string(),
        orbits,
        dims: got,
        nontrivial_cocycle_orbits: nontrivial,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::super::tests::build;
    use super::*;

    #[test]
    fn s3_and_q8() {
        let r = clifford_check(&build("S3", 3), "S3").unwrap();
        assert!(r.passed());
        assert_eq!(r.dims, vec![1, 1, 2]);
        let q = clifford_check(&build("Q8", 2), "Q8").unwrap();
        assert!(q.passed());
        assert_eq!(q.dims, vec![1, 1, 1, 1, 2]);
        assert_eq!(q.nontrivial_cocycle_orbits, 1);
    }
}
