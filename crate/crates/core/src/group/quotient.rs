use rand::seq::IndexedRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{FiniteGroup, Subgroup};
use crate::error::{Error, Result};

/// M/N together with the projection and a set-theoretic section.
#[derive(Debug, Clone)]
pub struct QuotientData {
    pub quotient: FiniteGroup,
    /// parent element -> quotient element
    pub projection: Vec<usize>,
    /// quotient element -> chosen lift in the parent
    pub section: Vec<usize>,
    pub kernel: Subgroup,
}

/// Quotient by a normal subgroup; cosets are ordered by their smallest element,
/// which is also the chosen lift.
pub fn quotient_with_section(parent: &FiniteGroup, normal: &Subgroup) -> Result<QuotientData> {
    if let Some((g, n)) = normal.normality_witness(parent) {
        return Err(Error::NotNormal {
            witness: format!(
                "{} by {}",
                parent.element_name(n),
                parent.element_name(g)
            ),
        });
    }
    let mut projection = vec![usize::MAX; parent.order()];
    let mut section = Vec::new();
    for m in parent.elements() {
        if projection[m] != usize::MAX {
            continue;
        }
        let idx = section.len();
        section.push(m);
        for &n in normal.members() {
            projection[parent.mul(m, n)] = idx;
        }
    }
    let k = section.len();
    let cayley: Vec<Vec<usize>> = (0..k)
        .map(|a| {
            (0..k)
                .map(|b| projection[parent.mul(section[a], section[b])])
                .collect()
        })
        .collect();
    let mut gens: Vec<usize> = Vec::new();
    for &g in parent.generators() {
        let x = projection[g];
        if x != 0 && !gens.contains(&x) {
            gens.push(x);
        }
    }
    let names = section
        .iter()
        .map(|&m| format!("{}N", parent.element_name(m)))
        .collect();
    let quotient = FiniteGroup::from_cayley_unchecked(
        format!("{}/{}", parent.name(), normal.order()),
        cayley,
        gens,
        Some(names),
        None,
    );
    Ok(QuotientData {
        quotient,
        projection,
        section,
        kernel: normal.clone(),
    })
}

impl QuotientData {
    pub fn project(&self, m: usize) -> usize {
        self.projection[m]
    }

    pub fn lift(&self, g: usize) -> usize {
        self.section[g]
    }

    /// Same quotient, different coset representatives (identity still lifts
    /// to the identity).
    pub fn with_section(&self, section: Vec<usize>) -> Result<QuotientData> {
        if section.len() != self.quotient.order()
            || section[0] != 0
            || section
                .iter()
                .enumerate()
                .any(|(g, &m)| self.projection.get(m) != Some(&g))
        {
            return Err(Error::Invalid("section is not a right inverse of the projection".into()));
        }
        let mut q = self.clone();
        q.section = section;
        Ok(q)
    }

    /// A seeded random section, used to check independence of lift choices.
    pub fn randomized_section(&self, seed: u64) -> QuotientData {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut section = vec![0];
        for g in 1..self.quotient.order() {
            let coset: Vec<usize> = (0..self.projection.len())
                .filter(|&m| self.projection[m] == g)
                .collect();
            section.push(*coset.choose(&mut rng).unwrap());
        }
        self.with_section(section).expect("random lifts form a section")
    }

    /// n = lift(g)·lift(h)·lift(gh)⁻¹, an element of the kernel.
    pub fn lift_defect(&self, parent: &FiniteGroup, g: usize, h: usize) -> usize {
        let gh = self.quotient.mul(g, h);
        parent.mul(
            parent.mul(self.lift(g), self.lift(h)),
            parent.inv(self.lift(gh)),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::group_from_spec;

    #[test]
    fn s3_mod_a3() {
        let s3 = group_from_spec("S3").unwrap();
        let a3 = s3.derived_subgroup();
        let q = quotient_with_section(&s3, &a3).unwrap();
        assert_eq!(q.quotient.order(), 2);
        q.quotient.verify_axioms().unwrap();
    }

    #[test]
    fn q8_mod_center_is_klein() {
        let q8 = group_from_spec("Q8").unwrap();
        let q = quotient_with_section(&q8, &q8.center()).unwrap();
        assert_eq!(q.quotient.order(), 4);
        assert!(q.quotient.is_abelian());
        assert_eq!(q.quotient.exponent(), 2);
    }

    #[test]
    fn non_normal_rejected() {
        let s3 = group_from_spec("S3").unwrap();
        let t = s3.elements().find(|&a| s3.element_order(a) == 2).unwrap();
        let h = s3.subgroup_generated(&[t]);
        assert!(matches!(
            quotient_with_section(&s3, &h),
            Err(Error::NotNormal { .. })
        ));
    }

    #[test]
    fn section_is_right_inverse_and_homomorphism() {
        let s4 = group_from_spec("S4").unwrap();
        for n in s4.normal_subgroups() {
            let q = quotient_with_section(&s4, &n).unwrap();
            for g in q.quotient.elements() {
                assert_eq!(q.project(q.lift(g)), g);
            }
            assert_eq!(q.lift(0), 0);
            for a in s4.elements() {
                for b in s4.elements() {
                    assert_eq!(
                        q.project(s4.mul(a, b)),
                        q.quotient.mul(q.project(a), q.project(b))
                    );
                }
            }
            let kernel: Vec<usize> = s4.elements().filter(|&m| q.project(m) == 0).collect();
            assert_eq!(kernel, n.members());
            let r = q.randomized_section(7);
            for g in r.quotient.elements() {
                assert_eq!(r.project(r.lift(g)), g);
                for h in r.quotient.elements() {
                    assert!(n.contains(r.lift_defect(&s4, g, h)));
                }
            }
        }
    }

    #[test]
    fn class_counts_agree_through_projection() {
        for (spec, sel) in [("S4", 4usize), ("S4", 12), ("Q8", 2), ("D4", 2), ("S3", 3)] {
            let m = group_from_spec(spec).unwrap();
            let n = m
                .normal_subgroups()
                .into_iter()
                .find(|s| s.order() == sel)
                .unwrap();
            let q = quotient_with_section(&m, &n).unwrap();
            let direct = q.quotient.conjugacy_data().len();
            let qcd = q.quotient.conjugacy_data();
            let mut images: Vec<usize> = m
                .conjugacy_data()
                .classes
                .iter()
                .map(|c| qcd.class_of[q.project(c[0])])
                .collect();
            images.sort();
            images.dedup();
            assert_eq!(images.len(), direct, "{spec}/{sel}");
        }
    }
}
