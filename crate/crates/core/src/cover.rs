//! The combinatorial model of a group action on a compact Riemann surface:
//! quotient genus, branch points with distinguished stabilizer generators,
//! and the generating vector, validated against the long relation, the order
//! constraints, generation and the Riemann-Hurwitz equation.
//!
//! The ramification convention is pinned here: the file format requires each
//! branch entry c_j to be the stabilizer generator that acts on the cotangent
//! line at the branch point by exactly zeta_(m_j), so omega_j(c_j) = zeta_(m_j).
//! Data recorded with the opposite orientation can be run under the
//! `Conjugate` convention, which consistently replaces omega by its inverse
//! in every formula (and in particular swaps the analytic representation
//! with its dual).

use std::sync::{Arc, OnceLock};

use num_traits::{Signed, ToPrimitive};

use crate::chartab::CharacterTable;
use crate::error::{Error, Result};
use crate::exact::{rat, Cyclotomic, Rational};
use crate::group::{CyclicSubgroup, FiniteGroup};

/// Which primitive root the distinguished stabilizer generator maps to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RootConvention {
    /// omega_j(c_j) = zeta_(m_j)
    #[default]
    Standard,
    /// omega_j(c_j) = zeta_(m_j)^(-1)
    Conjugate,
}

/// One branch point of the quotient map: its stabilizer order m_j > 1 and
/// the distinguished generator c_j of the stabilizer.
#[derive(Debug, Clone)]
pub struct BranchPoint {
    order: u64,
    generator: usize,
}

impl BranchPoint {
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn generator(&self) -> usize {
        self.generator
    }
}

/// The stabilizer of a branch point together with the ramification character
/// convention in force.
#[derive(Debug, Clone)]
pub struct StabilizerInfo {
    pub subgroup: CyclicSubgroup,
    /// The value omega_j(c_j) under the active convention.
    pub omega_of_generator: Cyclotomic,
    pub convention: RootConvention,
}

/// A validated action: genus gamma quotient, hyperbolic generator pairs,
/// branch data, and the character table everything is decomposed against.
#[derive(Debug, Clone)]
pub struct GroupAction {
    table: CharacterTable,
    gamma: u64,
    hyperbolic_a: Vec<usize>,
    hyperbolic_b: Vec<usize>,
    branch_points: Vec<BranchPoint>,
    stabilizers: Vec<CyclicSubgroup>,
    genus: u64,
    convention: RootConvention,
    /// Per branch: eigenvalue multiplicities (standard convention) of every
    /// irreducible on the stabilizer, filled on first use.
    eigencounts: Vec<OnceLock<Arc<Vec<Vec<u64>>>>>,
}

/// Genus of the covering surface from the Riemann-Hurwitz equation
/// 2(g - 1)/|G| = 2(gamma - 1) + sum_j (1 - 1/m_j), in exact arithmetic.
/// Fails if g is not a non-negative integer.
pub fn genus_from_rh(group_order: usize, gamma: u64, branch_orders: &[u64]) -> Result<u64> {
    let order = rat(group_order as i64);
    let mut rhs = rat(2) * (rat(gamma as i64) - rat(1));
    for &m in branch_orders {
        if m == 0 {
            return Err(Error::BadGenus("branch order 0".to_string()));
        }
        rhs += rat(1) - rat(1) / rat(m as i64);
    }
    // g = 1 + |G| * rhs / 2
    let genus: Rational = rat(1) + order * rhs / rat(2);
    if !genus.is_integer() || genus.is_negative() {
        return Err(Error::BadGenus(format!(
            "{}/{}",
            genus.numer(),
            genus.denom()
        )));
    }
    genus
        .to_integer()
        .to_u64()
        .ok_or_else(|| Error::BadGenus(genus.to_string()))
}

impl GroupAction {
    /// Validate raw action data: orders at each branch, the long relation
    /// prod [a_i, b_i] prod c_j = 1, generation of G by the 2*gamma + r
    /// entries, and integrality of the Riemann-Hurwitz genus.
    ///
    /// No repair is attempted: any failure is fatal, because reordering or
    /// adjusting entries silently changes the ramification characters.
    pub fn new(
        table: CharacterTable,
        gamma: u64,
        hyperbolic_a: Vec<usize>,
        hyperbolic_b: Vec<usize>,
        branch: Vec<(usize, u64)>,
        convention: RootConvention,
    ) -> Result<Self> {
        let group = Arc::clone(table.group());
        if hyperbolic_a.len() != gamma as usize || hyperbolic_b.len() != gamma as usize {
            return Err(Error::HyperbolicLength {
                a: hyperbolic_a.len(),
                b: hyperbolic_b.len(),
                gamma,
            });
        }
        for &g in hyperbolic_a.iter().chain(&hyperbolic_b) {
            if g >= group.order() {
                return Err(Error::ElementOutOfRange(g, group.order()));
            }
        }

        let mut branch_points = Vec::with_capacity(branch.len());
        for (index, &(element, declared)) in branch.iter().enumerate() {
            if element >= group.order() {
                return Err(Error::ElementOutOfRange(element, group.order()));
            }
            let actual = group.element_order(element);
            if actual != declared {
                return Err(Error::BranchOrder {
                    index,
                    declared,
                    element,
                    actual,
                });
            }
            if declared <= 1 {
                return Err(Error::BranchOrderOne { index });
            }
            branch_points.push(BranchPoint {
                order: declared,
                generator: element,
            });
        }

        // long relation
        let mut product = 0usize;
        for i in 0..gamma as usize {
            let (a, b) = (hyperbolic_a[i], hyperbolic_b[i]);
            let commutator = group.mul(group.mul(a, b), group.mul(group.inv(a), group.inv(b)));
            product = group.mul(product, commutator);
        }
        for bp in &branch_points {
            product = group.mul(product, bp.generator);
        }
        if product != 0 {
            return Err(Error::LongRelation { product });
        }

        let mut generators: Vec<usize> = Vec::new();
        generators.extend(&hyperbolic_a);
        generators.extend(&hyperbolic_b);
        generators.extend(branch_points.iter().map(|bp| bp.generator));
        if !group.generates(&generators) {
            return Err(Error::GenerationFailure);
        }

        let branch_orders: Vec<u64> = branch_points.iter().map(|bp| bp.order).collect();
        let genus = genus_from_rh(group.order(), gamma, &branch_orders)?;

        let stabilizers: Vec<CyclicSubgroup> = branch_points
            .iter()
            .map(|bp| group.cyclic_subgroup(bp.generator))
            .collect();
        let eigencounts = (0..branch_points.len()).map(|_| OnceLock::new()).collect();

        Ok(GroupAction {
            table,
            gamma,
            hyperbolic_a,
            hyperbolic_b,
            branch_points,
            stabilizers,
            genus,
            convention,
            eigencounts,
        })
    }

    pub fn with_convention(mut self, convention: RootConvention) -> Self {
        self.convention = convention;
        self
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.table.group()
    }

    pub fn table(&self) -> &CharacterTable {
        &self.table
    }

    pub fn gamma(&self) -> u64 {
        self.gamma
    }

    pub fn genus(&self) -> u64 {
        self.genus
    }

    pub fn convention(&self) -> RootConvention {
        self.convention
    }

    pub fn hyperbolic_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.hyperbolic_a
            .iter()
            .copied()
            .zip(self.hyperbolic_b.iter().copied())
    }

    pub fn branch_points(&self) -> &[BranchPoint] {
        &self.branch_points
    }

    pub fn num_branch_points(&self) -> usize {
        self.branch_points.len()
    }

    /// Stabilizer subgroup <c_j> of branch point j (0-based), with the
    /// identification omega_j(c_j) fixed by the active convention.
    pub fn stabilizer_info(&self, j: usize) -> Result<StabilizerInfo> {
        let bp = self
            .branch_points
            .get(j)
            .ok_or(Error::BranchIndex(j, self.branch_points.len()))?;
        let exponent = match self.convention {
            RootConvention::Standard => 1,
            RootConvention::Conjugate => -1,
        };
        Ok(StabilizerInfo {
            subgroup: self.stabilizers[j].clone(),
            omega_of_generator: Cyclotomic::root_of_unity(bp.order, exponent)?,
            convention: self.convention,
        })
    }

    /// Recompute the Riemann-Hurwitz genus from the stored data.
    pub fn recompute_genus(&self) -> Result<u64> {
        let orders: Vec<u64> = self.branch_points.iter().map(|bp| bp.order).collect();
        genus_from_rh(self.group().order(), self.gamma, &orders)
    }

    /// Eigenvalue multiplicities of every irreducible on the stabilizer of
    /// branch j, in the standard identification omega(c_j) = zeta_m; cached.
    fn branch_eigencounts_standard(&self, j: usize) -> Result<Arc<Vec<Vec<u64>>>> {
        if let Some(cached) = self.eigencounts[j].get() {
            return Ok(Arc::clone(cached));
        }
        let h = &self.stabilizers[j];
        let mut per_irreducible = Vec::with_capacity(self.table.num_irreducibles());
        for v in 0..self.table.num_irreducibles() {
            per_irreducible.push(self.table.eigenvalue_multiplicities(v, h)?);
        }
        let arc = Arc::new(per_irreducible);
        let _ = self.eigencounts[j].set(Arc::clone(&arc));
        Ok(arc)
    }

    /// N[k] for irreducible v at branch j, indexed by powers of the
    /// ramification character omega under the active convention: entry k
    /// counts eigenvalues of V(c_j) equal to omega_j^k.
    pub(crate) fn eigencounts_at_branch(&self, j: usize, v: usize) -> Result<Vec<u64>> {
        let standard = self.branch_eigencounts_standard(j)?;
        let counts = &standard[v];
        Ok(match self.convention {
            RootConvention::Standard => counts.clone(),
            RootConvention::Conjugate => {
                let m = counts.len();
                (0..m).map(|k| counts[(m - k) % m]).collect()
            }
        })
    }
}
