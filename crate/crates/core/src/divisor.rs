//! G-invariant divisors as integer combinations of basic divisors, one term
//! per orbit site.
//!
//! A site is either a branch point of the action (stabilizer of order m_j)
//! or a free orbit (trivial stabilizer, m_P = 1). A term r_P carries the
//! derived decomposition r_P = l_P + s_P * m_P with 0 <= l_P < m_P and the
//! indicator eps_P = 0 iff l_P = 0. The degree of r_P * D_b(P) is
//! r_P * |G| / m_P, the orbit length times the coefficient.

use std::fmt;

use crate::cover::GroupAction;
use crate::error::{Error, Result};

/// Identifies one G-orbit: a branch point by index, or a free orbit by label.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Site {
    Branch(usize),
    Free(String),
}

impl fmt::Display for Site {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Site::Branch(j) => write!(f, "branch:{j}"),
            Site::Free(id) => write!(f, "free:{id}"),
        }
    }
}

/// One orbit term r_P * D_b(P) with its stabilizer data.
#[derive(Debug, Clone)]
pub struct OrbitTerm {
    site: Site,
    stabilizer_order: u64,
    generator: usize,
    coefficient: i64,
}

impl OrbitTerm {
    pub fn site(&self) -> &Site {
        &self.site
    }

    /// m_P: the stabilizer order (1 for free orbits).
    pub fn stabilizer_order(&self) -> u64 {
        self.stabilizer_order
    }

    /// c_P: the distinguished stabilizer generator (identity for free orbits).
    pub fn generator(&self) -> usize {
        self.generator
    }

    /// r_P.
    pub fn coefficient(&self) -> i64 {
        self.coefficient
    }

    /// l_P = r_P mod m_P, always in [0, m_P).
    pub fn remainder(&self) -> u64 {
        self.coefficient.rem_euclid(self.stabilizer_order as i64) as u64
    }

    /// s_P with r_P = l_P + s_P * m_P.
    pub fn quotient(&self) -> i64 {
        (self.coefficient - self.remainder() as i64) / self.stabilizer_order as i64
    }

    /// eps_P: 0 if m_P divides r_P, else 1.
    pub fn epsilon(&self) -> u64 {
        if self.remainder() == 0 {
            0
        } else {
            1
        }
    }

    /// Degree contribution r_P * |G| / m_P.
    pub fn degree(&self, group_order: usize) -> i64 {
        self.coefficient * (group_order as i64 / self.stabilizer_order as i64)
    }
}

/// A G-invariant divisor: terms over distinct sites.
#[derive(Debug, Clone)]
pub struct InvariantDivisor {
    terms: Vec<OrbitTerm>,
    degree: i64,
}

impl InvariantDivisor {
    /// Assemble a divisor over the given action. Sites must be distinct and
    /// branch indices valid. Negative coefficients are allowed in storage
    /// (the equivariant degree is defined for them); operations that need
    /// effectivity check it themselves.
    pub fn build(action: &GroupAction, terms: &[(Site, i64)]) -> Result<Self> {
        let mut seen: Vec<&Site> = Vec::new();
        let mut out = Vec::with_capacity(terms.len());
        for (site, r) in terms {
            if seen.iter().any(|s| *s == site) {
                return Err(Error::DuplicateSite(site.to_string()));
            }
            seen.push(site);
            let (order, generator) = match site {
                Site::Branch(j) => {
                    let bp = action
                        .branch_points()
                        .get(*j)
                        .ok_or_else(|| Error::UnknownSite(site.to_string()))?;
                    (bp.order(), bp.generator())
                }
                Site::Free(_) => (1, 0),
            };
            out.push(OrbitTerm {
                site: site.clone(),
                stabilizer_order: order,
                generator,
                coefficient: *r,
            });
        }
        let group_order = action.group().order();
        let degree = out.iter().map(|t| t.degree(group_order)).sum();
        Ok(InvariantDivisor { terms: out, degree })
    }

    /// The pullback of an effective divisor sum alpha_Q * Q on the quotient:
    /// each site contributes r_P = alpha_Q * m_P, so l_P = 0 and s_P = alpha_Q.
    pub fn pullback(action: &GroupAction, base: &[(Site, i64)]) -> Result<Self> {
        for (_, alpha) in base {
            if *alpha < 0 {
                return Err(Error::NegativePullback(*alpha));
            }
        }
        let scaled: Vec<(Site, i64)> = base
            .iter()
            .map(|(site, alpha)| {
                let m = match site {
                    Site::Branch(j) => action
                        .branch_points()
                        .get(*j)
                        .map(|bp| bp.order() as i64)
                        .unwrap_or(1), // caught as unknown site in build
                    Site::Free(_) => 1,
                };
                (site.clone(), alpha * m)
            })
            .collect();
        InvariantDivisor::build(action, &scaled)
    }

    pub fn terms(&self) -> &[OrbitTerm] {
        &self.terms
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn is_effective(&self) -> bool {
        self.terms.iter().all(|t| t.coefficient >= 0)
    }

    pub fn negated(&self) -> InvariantDivisor {
        InvariantDivisor {
            terms: self
                .terms
                .iter()
                .map(|t| OrbitTerm {
                    site: t.site.clone(),
                    stabilizer_order: t.stabilizer_order,
                    generator: t.generator,
                    coefficient: -t.coefficient,
                })
                .collect(),
            degree: -self.degree,
        }
    }
}

/// Outcome of the degree-based non-specialty test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NonSpecial {
    /// deg D > 2g - 2, so D is non-special unconditionally.
    Certified,
    /// The degree criterion does not apply; the caller may assert it.
    Unknown,
}

/// Certify non-specialty when deg D > 2(g - 1); otherwise `Unknown`.
pub fn check_nonspecial_degree(action: &GroupAction, divisor: &InvariantDivisor) -> NonSpecial {
    if divisor.degree() > 2 * (action.genus() as i64 - 1) {
        NonSpecial::Certified
    } else {
        NonSpecial::Unknown
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartab::CharacterTable;
    use crate::cover::RootConvention;
    use crate::families;
    use crate::group::FiniteGroup;
    use crate::cover::GroupAction;

    fn free(id: &str) -> Site {
        Site::Free(id.to_string())
    }

    #[test]
    fn klein_basic_divisor_at_order_3_branch() {
        let action = families::klein();
        let d = InvariantDivisor::build(&action, &[(Site::Branch(0), 1)]).unwrap();
        assert_eq!(d.degree(), 7);
        let t = &d.terms()[0];
        assert_eq!(t.remainder(), 1);
        assert_eq!(t.quotient(), 0);
        assert_eq!(t.epsilon(), 1);
        assert_eq!(check_nonspecial_degree(&action, &d), NonSpecial::Certified);
    }

    #[test]
    fn fermat_divisor_decomposition() {
        let p = 5i64;
        let action = families::fermat(p as u64).unwrap();
        let r = p * (p - 3) + 1;
        let d = InvariantDivisor::build(&action, &[(Site::Branch(0), r)]).unwrap();
        assert_eq!(d.degree(), r);
        let t = &d.terms()[0];
        assert_eq!(t.remainder(), 1);
        assert_eq!(t.quotient(), p - 3);
        assert_eq!(check_nonspecial_degree(&action, &d), NonSpecial::Certified);
    }

    #[test]
    fn free_orbits_have_unit_stabilizer() {
        let action = families::klein();
        let d = InvariantDivisor::build(&action, &[(free("q"), 2)]).unwrap();
        assert_eq!(d.degree(), 42);
        let t = &d.terms()[0];
        assert_eq!(t.stabilizer_order(), 1);
        assert_eq!(t.remainder(), 0);
        assert_eq!(t.quotient(), 2);
        assert_eq!(t.epsilon(), 0);
    }

    #[test]
    fn pullback_multiplies_by_stabilizer_order() {
        let action = families::klein();
        let d = InvariantDivisor::pullback(&action, &[(free("q"), 1)]).unwrap();
        assert_eq!(d.degree(), 21);
        assert_eq!(d.terms()[0].coefficient(), 1);

        let d = InvariantDivisor::pullback(&action, &[(Site::Branch(0), 1)]).unwrap();
        assert_eq!(d.terms()[0].coefficient(), 3);
        assert_eq!(d.terms()[0].remainder(), 0);
        assert_eq!(d.terms()[0].quotient(), 1);
        assert_eq!(d.degree(), 21);

        let zero = InvariantDivisor::pullback(&action, &[(free("q"), 0)]).unwrap();
        assert_eq!(zero.degree(), 0);

        assert!(matches!(
            InvariantDivisor::pullback(&action, &[(free("q"), -1)]),
            Err(Error::NegativePullback(-1))
        ));
    }

    #[test]
    fn duplicate_and_unknown_sites_are_rejected() {
        let action = families::klein();
        assert!(matches!(
            InvariantDivisor::build(&action, &[(Site::Branch(0), 1), (Site::Branch(0), 2)]),
            Err(Error::DuplicateSite(_))
        ));
        assert!(matches!(
            InvariantDivisor::build(&action, &[(Site::Branch(9), 1)]),
            Err(Error::UnknownSite(_))
        ));
    }

    #[test]
    fn degree_zero_divisor_is_not_certified_on_positive_genus() {
        let action = families::klein();
        let d = InvariantDivisor::build(&action, &[]).unwrap();
        assert_eq!(check_nonspecial_degree(&action, &d), NonSpecial::Unknown);
    }

    #[test]
    fn effectivity_and_negation() {
        let rows: Vec<Vec<usize>> = (0..2)
            .map(|i| (0..2).map(|j| (i + j) % 2).collect())
            .collect();
        let group = FiniteGroup::from_table(&rows).unwrap();
        let table = CharacterTable::from_abelian(&group).unwrap();
        let action = GroupAction::new(
            table,
            0,
            vec![],
            vec![],
            vec![(1, 2), (1, 2)],
            RootConvention::Standard,
        )
        .unwrap();
        let d = InvariantDivisor::build(&action, &[(Site::Branch(0), 3), (free("x"), 1)]).unwrap();
        assert!(d.is_effective());
        assert_eq!(d.degree(), 3 + 2);
        let neg = d.negated();
        assert!(!neg.is_effective());
        assert_eq!(neg.degree(), -5);
    }
}
