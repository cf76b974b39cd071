//! Character tables as validated first-class data, plus the character
//! arithmetic the multiplicity formulas consume: inner products, induction
//! from cyclic subgroups, fixed-subspace dimensions and the eigenvalue
//! multiplicities N[k] of a generator acting in an irreducible.
//!
//! Conventions fixed here and relied on everywhere downstream:
//!
//! * characters are stored by conjugacy class, in the canonical class order
//!   (minimal representative first, identity class 0);
//! * row 0 is the trivial character;
//! * for a cyclic subgroup H = <c> of order m, the distinguished character
//!   omega of H sends the generator c itself to zeta_m. All exponent vectors
//!   (`theta` arguments, N[k] outputs) are read in the basis
//!   {omega^0, ..., omega^(m-1)} under this identification.

use std::sync::Arc;

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::exact::{rat, Cyclotomic, Rational, RootSum};
use crate::group::{ConjugacyPartition, CyclicSubgroup, FiniteGroup};

/// A class function: one cyclotomic value per conjugacy class.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassFunction {
    values: Vec<Cyclotomic>,
}

impl ClassFunction {
    pub fn new(values: Vec<Cyclotomic>) -> Self {
        ClassFunction { values }
    }

    pub fn value(&self, class: usize) -> &Cyclotomic {
        &self.values[class]
    }

    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn conjugated(&self) -> ClassFunction {
        ClassFunction {
            values: self.values.iter().map(|v| v.conjugate()).collect(),
        }
    }

    fn work_conductor(&self) -> u64 {
        self.values
            .iter()
            .fold(1u64, |acc, v| acc.lcm(&v.conductor()))
    }
}

/// An integer combination of the irreducibles of a fixed table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VirtualCharacter {
    coeffs: Vec<i64>,
}

impl VirtualCharacter {
    pub fn zero(len: usize) -> Self {
        VirtualCharacter {
            coeffs: vec![0; len],
        }
    }

    pub fn from_coeffs(coeffs: Vec<i64>) -> Self {
        VirtualCharacter { coeffs }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, v: usize) -> i64 {
        self.coeffs[v]
    }

    pub fn add_assign(&mut self, other: &VirtualCharacter) {
        assert_eq!(self.coeffs.len(), other.coeffs.len());
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b;
        }
    }

    pub fn sub_assign(&mut self, other: &VirtualCharacter) {
        assert_eq!(self.coeffs.len(), other.coeffs.len());
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a -= b;
        }
    }

    pub fn scaled(&self, k: i64) -> VirtualCharacter {
        VirtualCharacter {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// Evaluate as a class function over the given table.
    pub fn to_class_function(&self, table: &CharacterTable) -> ClassFunction {
        assert_eq!(self.coeffs.len(), table.num_irreducibles());
        let n = table.work_conductor();
        let mut values = Vec::with_capacity(table.partition.len());
        for class in 0..table.partition.len() {
            let mut acc = RootSum::zero(n);
            for (v, &cv) in self.coeffs.iter().enumerate() {
                if cv != 0 {
                    acc.add_scaled(
                        &RootSum::from_cyclotomic(table.value(v, class), n),
                        &rat(cv),
                    );
                }
            }
            values.push(acc.reduce());
        }
        ClassFunction::new(values)
    }
}

/// A validated character table: one row per irreducible, one column per
/// conjugacy class, exact values, row 0 trivial.
#[derive(Debug, Clone)]
pub struct CharacterTable {
    group: Arc<FiniteGroup>,
    partition: Arc<ConjugacyPartition>,
    irreducibles: Vec<ClassFunction>,
    degrees: Vec<u64>,
}

/// Inner product of two class functions over an explicit group/partition,
/// weighting by class sizes: (1/|G|) sum_g phi(g) * conj(psi(g)).
fn class_inner(
    group: &FiniteGroup,
    partition: &ConjugacyPartition,
    phi: &ClassFunction,
    psi: &ClassFunction,
) -> Cyclotomic {
    let n = phi.work_conductor().lcm(&psi.work_conductor());
    let mut acc = RootSum::zero(n);
    for class in 0..partition.len() {
        let a = RootSum::from_cyclotomic(phi.value(class), n);
        let b = RootSum::from_cyclotomic(psi.value(class), n).conjugated();
        acc.add_product(&a, &b, &rat(partition.size(class) as i64));
    }
    acc.reduce()
        .scaled(&(rat(1) / rat(group.order() as i64)))
}

fn rational_to_nonneg_int(q: &Rational) -> Option<u64> {
    if q.is_integer() && !q.is_negative() {
        q.to_integer().to_u64()
    } else {
        None
    }
}

fn rational_to_int(q: &Rational) -> Option<i64> {
    if q.is_integer() {
        q.to_integer().to_i64()
    } else {
        None
    }
}

impl CharacterTable {
    /// Validate an ingested table over the canonical conjugacy classes of
    /// `group`: shape, trivial row first, positive integer degrees, degree
    /// sum, exact row and column orthogonality, and each value lying in
    /// Q(zeta_ord) for its column's element order.
    pub fn validate(group: Arc<FiniteGroup>, rows: Vec<ClassFunction>) -> Result<Self> {
        let partition = group.conjugacy_classes();
        let classes = partition.len();
        if rows.len() != classes {
            return Err(Error::TableShape {
                rows: rows.len(),
                classes,
            });
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != classes {
                return Err(Error::RowLength(i, row.len(), classes));
            }
        }
        if !rows[0].values().iter().all(|v| v.is_one()) {
            return Err(Error::TrivialMisplaced);
        }

        let mut degrees = Vec::with_capacity(classes);
        for (i, row) in rows.iter().enumerate() {
            let deg = row
                .value(0)
                .to_rational()
                .and_then(|q| rational_to_nonneg_int(&q))
                .filter(|&d| d > 0)
                .ok_or(Error::BadDegree(i))?;
            degrees.push(deg);
        }
        let degree_square_sum: u64 = degrees.iter().map(|d| d * d).sum();
        if degree_square_sum != group.order() as u64 {
            return Err(Error::DegreeSum {
                got: degree_square_sum.to_string(),
                want: group.order(),
            });
        }

        for i in 0..classes {
            for j in i..classes {
                let ip = class_inner(&group, &partition, &rows[i], &rows[j]);
                let expected = if i == j {
                    Cyclotomic::one()
                } else {
                    Cyclotomic::zero()
                };
                if ip != expected {
                    return Err(Error::RowOrthogonality(i, j));
                }
            }
        }

        // second orthogonality: sum_V chi(g) conj(chi(h)) = delta * |C_G(g)|
        let conductor: u64 = rows
            .iter()
            .fold(1u64, |acc, r| acc.lcm(&r.work_conductor()));
        let embedded: Vec<Vec<RootSum>> = rows
            .iter()
            .map(|r| {
                r.values()
                    .iter()
                    .map(|v| RootSum::from_cyclotomic(v, conductor))
                    .collect()
            })
            .collect();
        for ci in 0..classes {
            for cj in ci..classes {
                let mut acc = RootSum::zero(conductor);
                for row in &embedded {
                    acc.add_product(&row[ci], &row[cj].conjugated(), &rat(1));
                }
                let expected = if ci == cj {
                    Cyclotomic::integer((group.order() / partition.size(ci)) as i64)
                } else {
                    Cyclotomic::zero()
                };
                if acc.reduce() != expected {
                    return Err(Error::ColumnOrthogonality(ci, cj));
                }
            }
        }

        for (i, row) in rows.iter().enumerate() {
            for class in 0..classes {
                let order = group.element_order(partition.representative(class));
                if !row.value(class).lies_in(order) {
                    return Err(Error::ValueField {
                        row: i,
                        class,
                        order,
                    });
                }
            }
        }

        Ok(CharacterTable {
            group,
            partition,
            irreducibles: rows,
            degrees,
        })
    }

    /// All linear characters of an abelian group, built by extending
    /// characters along a chain of cyclic steps (one outside element at a
    /// time, largest element order first). For cyclic G = <s> of order n this
    /// yields exactly the labeling chi_i(s^j) = zeta_n^(i*j).
    ///
    /// Construction is certified directly — each exponent vector is checked
    /// to be a homomorphism and all n vectors distinct — instead of running
    /// the quadratic orthogonality pass, which these two facts imply.
    pub fn from_abelian(group: &Arc<FiniteGroup>) -> Result<Self> {
        if let Some((a, b)) = group.first_non_commuting_pair() {
            return Err(Error::NotAbelian(a, b));
        }
        let n = group.order();
        let exponent = group.exponent();

        let mut in_subgroup = vec![false; n];
        in_subgroup[0] = true;
        let mut members = vec![0usize];
        // character = exponent vector: value at g is zeta_exponent^(vec[g])
        let mut chars: Vec<Vec<u64>> = vec![vec![0; n]];
        let mut chain: Vec<usize> = Vec::new();

        while members.len() < n {
            let x = (0..n)
                .filter(|&g| !in_subgroup[g])
                .max_by_key(|&g| (group.element_order(g), std::cmp::Reverse(g)))
                .expect("subgroup is proper");
            chain.push(x);

            let mut step = 1u64;
            let mut xd = x;
            while !in_subgroup[xd] {
                xd = group.mul(xd, x);
                step += 1;
            }
            // xd = x^step is the first power landing in the current subgroup

            let mut next_chars = Vec::with_capacity(chars.len() * step as usize);
            for ch in &chars {
                let c = ch[xd];
                debug_assert!(c % step == 0, "character extension is always solvable");
                let base = (c / step) % (exponent / step);
                for v in 0..step {
                    let t = (base + v * (exponent / step)) % exponent;
                    let mut extended = ch.clone();
                    let mut xj = 0usize; // x^j
                    let mut tj = 0u64; // j*t mod exponent
                    for _ in 1..step {
                        xj = group.mul(xj, x);
                        tj = (tj + t) % exponent;
                        for &h in &members {
                            extended[group.mul(h, xj)] = (ch[h] + tj) % exponent;
                        }
                    }
                    next_chars.push(extended);
                }
            }
            chars = next_chars;

            let mut xj = 0usize;
            for _ in 1..step {
                xj = group.mul(xj, x);
                for idx in 0..members.len() {
                    in_subgroup[group.mul(members[idx], xj)] = true;
                }
            }
            members = (0..n).filter(|&g| in_subgroup[g]).collect();
        }

        // certify: homomorphism along chain edges, and all characters distinct
        for ch in &chars {
            for &x in &chain {
                for g in 0..n {
                    if (ch[g] + ch[x]) % exponent != ch[group.mul(g, x)] {
                        return Err(Error::Consistency(
                            "abelian character extension produced a non-homomorphism".into(),
                        ));
                    }
                }
            }
        }
        let mut sorted = chars.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != n {
            return Err(Error::Consistency(
                "abelian character extension produced duplicate characters".into(),
            ));
        }

        let partition = group.conjugacy_classes();
        let irreducibles: Vec<ClassFunction> = chars
            .iter()
            .map(|ch| {
                let values = (0..partition.len())
                    .map(|class| {
                        let rep = partition.representative(class);
                        Cyclotomic::root_of_unity(exponent, ch[rep] as i64)
                            .expect("exponent is positive")
                    })
                    .collect();
                ClassFunction::new(values)
            })
            .collect();
        let degrees = vec![1u64; n];
        Ok(CharacterTable {
            group: Arc::clone(group),
            partition,
            irreducibles,
            degrees,
        })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn partition(&self) -> &Arc<ConjugacyPartition> {
        &self.partition
    }

    pub fn num_irreducibles(&self) -> usize {
        self.irreducibles.len()
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn degree(&self, v: usize) -> u64 {
        self.degrees[v]
    }

    pub fn irreducible(&self, v: usize) -> &ClassFunction {
        &self.irreducibles[v]
    }

    pub fn value(&self, v: usize, class: usize) -> &Cyclotomic {
        self.irreducibles[v].value(class)
    }

    /// chi_v evaluated at a group element.
    pub fn evaluate(&self, v: usize, element: usize) -> &Cyclotomic {
        self.value(v, self.partition.class_of(element))
    }

    /// lcm of the conductors of all table values.
    pub(crate) fn work_conductor(&self) -> u64 {
        self.irreducibles
            .iter()
            .fold(1u64, |acc, r| acc.lcm(&r.work_conductor()))
    }

    /// The regular character: |G| at the identity class, 0 elsewhere.
    pub fn regular_character(&self) -> ClassFunction {
        let mut values = vec![Cyclotomic::zero(); self.partition.len()];
        values[0] = Cyclotomic::integer(self.group.order() as i64);
        ClassFunction::new(values)
    }

    /// (1/|G|) sum_g phi(g) conj(psi(g)), exact.
    pub fn inner_product(&self, phi: &ClassFunction, psi: &ClassFunction) -> Result<Cyclotomic> {
        if phi.len() != self.partition.len() || psi.len() != self.partition.len() {
            return Err(Error::TableShape {
                rows: phi.len().max(psi.len()),
                classes: self.partition.len(),
            });
        }
        Ok(class_inner(&self.group, &self.partition, phi, psi))
    }

    /// Coefficients of a class function over the irreducibles; fails if any
    /// inner product is not a rational integer.
    pub fn decompose_class_function(&self, f: &ClassFunction) -> Result<Vec<i64>> {
        let mut coeffs = Vec::with_capacity(self.num_irreducibles());
        for v in 0..self.num_irreducibles() {
            let ip = self.inner_product(f, &self.irreducibles[v])?;
            let value = ip
                .to_rational()
                .as_ref()
                .and_then(rational_to_int)
                .ok_or_else(|| {
                    Error::Consistency(format!(
                        "class function has non-integral coefficient {ip} at irreducible {v}"
                    ))
                })?;
            coeffs.push(value);
        }
        Ok(coeffs)
    }

    /// Index of the irreducible with character conj(chi_v).
    pub fn conjugate_irreducible(&self, v: usize) -> usize {
        let target = self.irreducibles[v].conjugated();
        for w in 0..self.num_irreducibles() {
            if self.irreducibles[w] == target {
                return w;
            }
        }
        unreachable!("the conjugate of an irreducible character is in every valid table")
    }

    /// Eigenvalue multiplicities of chi_v restricted to H = <c> of order m:
    /// N[k] = (1/m) sum_j chi_v(c^j) zeta_m^(-kj), the number of times
    /// omega^k is an eigenvalue of the action of c. Exact DFT; every N[k]
    /// must come out a non-negative integer summing to dim V.
    pub fn eigenvalue_multiplicities(&self, v: usize, h: &CyclicSubgroup) -> Result<Vec<u64>> {
        self.check_subgroup(h)?;
        let m = h.order();
        let dim = self.degrees[v];
        if m == 1 {
            return Ok(vec![dim]);
        }

        if dim == 1 {
            // a linear character restricts to a single omega power
            let val = self.evaluate(v, h.generator());
            for u in 0..m {
                if *val == Cyclotomic::root_of_unity(m, u as i64)? {
                    let mut n = vec![0u64; m as usize];
                    n[u as usize] = 1;
                    return Ok(n);
                }
            }
            return Err(Error::EigenvalueCount {
                irreducible: v,
                k: 0,
                value: format!("{val} is not an m-th root of unity"),
            });
        }

        let values: Vec<&Cyclotomic> = (0..m as usize)
            .map(|j| self.evaluate(v, h.power(j)))
            .collect();
        let work = values
            .iter()
            .fold(m, |acc, val| acc.lcm(&val.conductor()));
        let embedded: Vec<RootSum> = values
            .iter()
            .map(|val| RootSum::from_cyclotomic(val, work))
            .collect();
        let stride = work / m;

        let mut counts = Vec::with_capacity(m as usize);
        let one = rat(1);
        for k in 0..m {
            let mut acc = RootSum::zero(work);
            for (j, emb) in embedded.iter().enumerate() {
                // multiply by zeta_m^(-kj) = zeta_work^(-kj*stride)
                let shift = (work - (k * j as u64 % m) * stride % work) % work;
                acc.add_shifted(emb, shift, &one);
            }
            let reduced = acc.reduce();
            let count = reduced
                .to_rational()
                .map(|q| q / rat(m as i64))
                .as_ref()
                .and_then(rational_to_nonneg_int)
                .ok_or_else(|| Error::EigenvalueCount {
                    irreducible: v,
                    k,
                    value: reduced.scaled(&(rat(1) / rat(m as i64))).to_string(),
                })?;
            counts.push(count);
        }
        if counts.iter().sum::<u64>() != dim {
            return Err(Error::Consistency(format!(
                "eigenvalue multiplicities of irreducible {v} sum to {}, expected dim {dim}",
                counts.iter().sum::<u64>()
            )));
        }
        Ok(counts)
    }

    /// dim of the fixed subspace of H in irreducible v: (1/|H|) sum_h chi(h),
    /// which equals N[0].
    pub fn fixed_subspace_dim(&self, v: usize, h: &CyclicSubgroup) -> Result<u64> {
        self.check_subgroup(h)?;
        let m = h.order();
        let work = (0..m as usize).fold(m, |acc, j| {
            acc.lcm(&self.evaluate(v, h.power(j)).conductor())
        });
        let mut acc = RootSum::zero(work);
        let one = rat(1);
        for j in 0..m as usize {
            acc.add_scaled(
                &RootSum::from_cyclotomic(self.evaluate(v, h.power(j)), work),
                &one,
            );
        }
        let reduced = acc.reduce();
        reduced
            .to_rational()
            .map(|q| q / rat(m as i64))
            .as_ref()
            .and_then(rational_to_nonneg_int)
            .ok_or_else(|| Error::NonIntegralMultiplicity {
                label: "fixed-subspace",
                irreducible: v,
                value: reduced.to_string(),
            })
    }

    /// Induce a (virtual) character of the cyclic subgroup H, given as an
    /// integer vector theta over {omega^0, ..., omega^(m-1)}, up to G.
    /// By Frobenius reciprocity the coefficient of V is
    /// <theta, Res_H chi_V>_H = sum_a theta[a] * N[a].
    pub fn induce_from_cyclic(
        &self,
        h: &CyclicSubgroup,
        theta: &[i64],
    ) -> Result<VirtualCharacter> {
        self.check_subgroup(h)?;
        assert_eq!(theta.len(), h.order() as usize, "theta must have length |H|");
        let mut coeffs = Vec::with_capacity(self.num_irreducibles());
        for v in 0..self.num_irreducibles() {
            let n = self.eigenvalue_multiplicities(v, h)?;
            let c: i64 = theta
                .iter()
                .zip(&n)
                .map(|(&t, &count)| t * count as i64)
                .sum();
            coeffs.push(c);
        }
        Ok(VirtualCharacter::from_coeffs(coeffs))
    }

    /// Reference path for induction: the coset formula
    /// chi^G(g) = (1/|H|) sum over x in G with x g x^-1 in H of theta(x g x^-1),
    /// evaluated per class and then decomposed by inner products.
    pub fn induce_from_cyclic_direct(
        &self,
        h: &CyclicSubgroup,
        theta: &[i64],
    ) -> Result<VirtualCharacter> {
        self.check_subgroup(h)?;
        let m = h.order() as usize;
        assert_eq!(theta.len(), m, "theta must have length |H|");
        let group = &self.group;

        // power_index[e] = j if e = c^j
        let mut power_index = vec![usize::MAX; group.order()];
        for j in 0..m {
            power_index[h.power(j)] = j;
        }

        let mut values = Vec::with_capacity(self.partition.len());
        for class in 0..self.partition.len() {
            let g = self.partition.representative(class);
            let mut hits = vec![0i64; m];
            for x in 0..group.order() {
                let conj = group.mul(group.mul(x, g), group.inv(x));
                let j = power_index[conj];
                if j != usize::MAX {
                    hits[j] += 1;
                }
            }
            // theta(c^j) = sum_a theta[a] zeta_m^(aj)
            let mut acc = RootSum::zero(m as u64);
            for (j, &count) in hits.iter().enumerate() {
                if count == 0 {
                    continue;
                }
                for (a, &t) in theta.iter().enumerate() {
                    if t != 0 {
                        acc.add_root((a * j) as u64, &rat(t * count));
                    }
                }
            }
            values.push(acc.reduce().scaled(&(rat(1) / rat(m as i64))));
        }

        let coeffs = self.decompose_class_function(&ClassFunction::new(values))?;
        Ok(VirtualCharacter::from_coeffs(coeffs))
    }

    /// Frobenius-Schur indicator (1/|G|) sum_g chi_v(g^2); must be a rational
    /// integer on a valid table.
    pub fn frobenius_schur(&self, v: usize) -> Result<i64> {
        let group = &self.group;
        let mut class_hits = vec![0i64; self.partition.len()];
        for g in 0..group.order() {
            class_hits[self.partition.class_of(group.mul(g, g))] += 1;
        }
        let work = self.irreducibles[v].work_conductor();
        let mut acc = RootSum::zero(work);
        for (class, &count) in class_hits.iter().enumerate() {
            if count != 0 {
                acc.add_scaled(
                    &RootSum::from_cyclotomic(self.value(v, class), work),
                    &rat(count),
                );
            }
        }
        let reduced = acc.reduce();
        reduced
            .to_rational()
            .map(|q| q / rat(group.order() as i64))
            .as_ref()
            .and_then(rational_to_int)
            .ok_or_else(|| Error::NonIntegralMultiplicity {
                label: "frobenius-schur",
                irreducible: v,
                value: reduced.to_string(),
            })
    }

    /// True iff chi_v is rational-valued with Frobenius-Schur indicator 1.
    ///
    /// Caveat: this is the practical reading of "absolutely irreducible with
    /// dim_Q = dim_C". Rational values plus indicator 1 do not exclude a
    /// Schur index above 1 in general, so results feeding off this test are
    /// used as cross-checks, never as the primary computation path.
    pub fn is_absolutely_irreducible(&self, v: usize) -> bool {
        self.irreducibles[v]
            .values()
            .iter()
            .all(|val| val.to_rational().is_some())
            && matches!(self.frobenius_schur(v), Ok(1))
    }

    /// Exact row and column orthogonality, re-checked on demand.
    pub fn check_orthogonality(&self) -> Result<()> {
        let classes = self.partition.len();
        for i in 0..classes {
            for j in i..classes {
                let ip = class_inner(
                    &self.group,
                    &self.partition,
                    &self.irreducibles[i],
                    &self.irreducibles[j],
                );
                let expected = if i == j {
                    Cyclotomic::one()
                } else {
                    Cyclotomic::zero()
                };
                if ip != expected {
                    return Err(Error::RowOrthogonality(i, j));
                }
            }
        }
        let conductor = self.work_conductor();
        let embedded: Vec<Vec<RootSum>> = self
            .irreducibles
            .iter()
            .map(|r| {
                r.values()
                    .iter()
                    .map(|v| RootSum::from_cyclotomic(v, conductor))
                    .collect()
            })
            .collect();
        for ci in 0..classes {
            for cj in ci..classes {
                let mut acc = RootSum::zero(conductor);
                for row in &embedded {
                    acc.add_product(&row[ci], &row[cj].conjugated(), &rat(1));
                }
                let expected = if ci == cj {
                    Cyclotomic::integer((self.group.order() / self.partition.size(ci)) as i64)
                } else {
                    Cyclotomic::zero()
                };
                if acc.reduce() != expected {
                    return Err(Error::ColumnOrthogonality(ci, cj));
                }
            }
        }
        Ok(())
    }

    fn check_subgroup(&self, h: &CyclicSubgroup) -> Result<()> {
        if h.group_order() != self.group.order() {
            return Err(Error::SubgroupMismatch {
                subgroup: h.group_order(),
                group: self.group.order(),
            });
        }
        Ok(())
    }
}

/// A split metacyclic group Z_m x| Z_k with its character table and the two
/// distinguished generators.
#[derive(Debug, Clone)]
pub struct Metacyclic {
    pub group: Arc<FiniteGroup>,
    pub table: CharacterTable,
    /// Index of the Z_m generator tau = (1, 0).
    pub tau: usize,
    /// Index of the Z_k generator sigma = (0, 1).
    pub sigma: usize,
}

/// Build Z_m x| Z_k where sigma tau sigma^-1 = tau^t, together with its
/// character table: the k linear characters lifted from Z_k plus one
/// degree-k irreducible per non-trivial orbit of t on Z_m, induced from <tau>
/// and ordered by minimal orbit representative.
///
/// Supported exactly when t^k = 1 mod m, gcd(t, m) = 1 and every non-trivial
/// orbit of multiplication by t on Z_m is free of size k; other parameters
/// are rejected (ingest an explicit table for those groups instead).
pub fn build_metacyclic_table(m: u64, k: u64, t: u64) -> Result<Metacyclic> {
    let reject = |reason: &str| Error::UnsupportedMetacyclic {
        m,
        k,
        t,
        reason: reason.to_string(),
    };
    if m == 0 || k == 0 {
        return Err(reject("m and k must be positive"));
    }
    let t = t % m.max(1);
    if m > 1 && t.gcd(&m) != 1 {
        return Err(reject("t must be a unit mod m"));
    }

    // powers of t mod m
    let mut t_pow = vec![1u64 % m.max(1); k as usize + 1];
    for j in 1..=k as usize {
        t_pow[j] = (t_pow[j - 1] * t) % m;
    }
    if m > 1 && t_pow[k as usize] != 1 {
        return Err(reject("t^k must be 1 mod m"));
    }

    // orbits of multiplication by t on Z_m \ {0}
    let mut orbits: Vec<Vec<u64>> = Vec::new();
    if m > 1 {
        let mut seen = vec![false; m as usize];
        for u in 1..m {
            if seen[u as usize] {
                continue;
            }
            let mut orbit = Vec::new();
            let mut cur = u;
            while !seen[cur as usize] {
                seen[cur as usize] = true;
                orbit.push(cur);
                cur = (cur * t) % m;
            }
            if orbit.len() as u64 != k {
                return Err(reject(&format!(
                    "orbit of {u} under t has size {}, not k = {k}",
                    orbit.len()
                )));
            }
            orbits.push(orbit);
        }
    }

    // group table on pairs (i, j) = tau^i sigma^j, index i*k + j
    let n = (m * k) as usize;
    let idx = |i: u64, j: u64| (i * k + j) as usize;
    let mut rows = vec![vec![0usize; n]; n];
    for i1 in 0..m {
        for j1 in 0..k {
            for i2 in 0..m {
                for j2 in 0..k {
                    let i = (i1 + t_pow[j1 as usize] * i2) % m;
                    let j = (j1 + j2) % k;
                    rows[idx(i1, j1)][idx(i2, j2)] = idx(i, j);
                }
            }
        }
    }
    let group = FiniteGroup::from_table(&rows)?;
    let tau = if m > 1 { idx(1, 0) } else { 0 };
    let sigma = if k > 1 { idx(0, 1) } else { 0 };

    if m == 1 || k == 1 {
        let table = CharacterTable::from_abelian(&group)?;
        return Ok(Metacyclic {
            group,
            table,
            tau,
            sigma,
        });
    }

    let partition = group.conjugacy_classes();
    let expected_classes = k as usize + orbits.len();
    if partition.len() != expected_classes {
        return Err(Error::Consistency(format!(
            "metacyclic ({m},{k},{t}) produced {} classes, expected {expected_classes}",
            partition.len()
        )));
    }

    let mut table_rows: Vec<ClassFunction> = Vec::with_capacity(expected_classes);
    // linear characters lifted from Z_k: value zeta_k^(s*j) at (i, j)
    for s in 0..k {
        let values = (0..partition.len())
            .map(|class| {
                let rep = partition.representative(class) as u64;
                let j = rep % k;
                Cyclotomic::root_of_unity(k, (s * j) as i64)
            })
            .collect::<Result<Vec<_>>>()?;
        table_rows.push(ClassFunction::new(values));
    }
    // induced characters: Theta_O(tau^i) = sum_{u in O} zeta_m^(u*i), zero off <tau>
    for orbit in &orbits {
        let values = (0..partition.len())
            .map(|class| {
                let rep = partition.representative(class) as u64;
                let (i, j) = (rep / k, rep % k);
                if j != 0 {
                    return Ok(Cyclotomic::zero());
                }
                let mut acc = RootSum::zero(m);
                let one = rat(1);
                for &u in orbit {
                    acc.add_root((u * i) % m, &one);
                }
                Ok(acc.reduce())
            })
            .collect::<Result<Vec<_>>>()?;
        table_rows.push(ClassFunction::new(values));
    }

    let table = CharacterTable::validate(Arc::clone(&group), table_rows)?;
    Ok(Metacyclic {
        group,
        table,
        tau,
        sigma,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_CLOSURE_BOUND;

    fn cyclic_group(n: usize) -> Arc<FiniteGroup> {
        let rows: Vec<Vec<usize>> = (0..n)
            .map(|i| (0..n).map(|j| (i + j) % n).collect())
            .collect();
        FiniteGroup::from_table(&rows).unwrap()
    }

    fn zeta(n: u64, k: i64) -> Cyclotomic {
        Cyclotomic::root_of_unity(n, k).unwrap()
    }

    fn example_order_21() -> Metacyclic {
        build_metacyclic_table(7, 3, 2).unwrap()
    }

    #[test]
    fn z2_table_validates() {
        let group = cyclic_group(2);
        let rows = vec![
            ClassFunction::new(vec![Cyclotomic::one(), Cyclotomic::one()]),
            ClassFunction::new(vec![Cyclotomic::one(), Cyclotomic::integer(-1)]),
        ];
        assert!(CharacterTable::validate(group, rows).is_ok());
    }

    #[test]
    fn degenerate_z2_table_fails_orthogonality() {
        let group = cyclic_group(2);
        let rows = vec![
            ClassFunction::new(vec![Cyclotomic::one(), Cyclotomic::one()]),
            ClassFunction::new(vec![Cyclotomic::one(), Cyclotomic::one()]),
        ];
        assert!(matches!(
            CharacterTable::validate(group, rows),
            Err(Error::RowOrthogonality(_, _))
        ));
    }

    #[test]
    fn order_21_table_as_printed_validates() {
        // five rows over classes (e, tau-class, tau^3-class, sigma-class,
        // sigma^2-class) with degrees (1,1,1,3,3)
        let meta = example_order_21();
        let group = Arc::clone(&meta.group);
        let partition = group.conjugacy_classes();
        assert_eq!(partition.len(), 5);

        let eta = |e: i64| zeta(7, e);
        let period1 = &(&eta(1) + &eta(2)) + &eta(4);
        let period2 = &(&eta(3) + &eta(5)) + &eta(6);
        let one = Cyclotomic::one();
        let z = |e: i64| zeta(3, e);

        // identify which classes hold tau, tau^3, sigma, sigma^2
        let find = |elem: usize| partition.class_of(elem);
        let mut values = vec![vec![Cyclotomic::zero(); 5]; 5];
        let assignments: [(usize, [Cyclotomic; 5]); 5] = [
            (
                0,
                [one.clone(), one.clone(), one.clone(), one.clone(), one.clone()],
            ),
            (
                find(meta.tau),
                [
                    one.clone(),
                    one.clone(),
                    one.clone(),
                    period1.clone(),
                    period2.clone(),
                ],
            ),
            (
                find(meta.group.power(meta.tau, 3)),
                [
                    one.clone(),
                    one.clone(),
                    one.clone(),
                    period2.clone(),
                    period1.clone(),
                ],
            ),
            (
                find(meta.sigma),
                [one.clone(), z(1), z(2), Cyclotomic::zero(), Cyclotomic::zero()],
            ),
            (
                find(meta.group.power(meta.sigma, 2)),
                [one.clone(), z(2), z(4), Cyclotomic::zero(), Cyclotomic::zero()],
            ),
        ];
        for (class, column) in assignments {
            for (row, val) in column.into_iter().enumerate() {
                values[row][class] = val;
            }
        }
        values[3][0] = Cyclotomic::integer(3);
        values[4][0] = Cyclotomic::integer(3);

        let rows: Vec<ClassFunction> = values.into_iter().map(ClassFunction::new).collect();
        let table = CharacterTable::validate(group, rows).unwrap();
        assert_eq!(table.degrees(), &[1, 1, 1, 3, 3]);
    }

    #[test]
    fn abelian_table_of_z5_uses_root_powers() {
        let group = cyclic_group(5);
        let table = CharacterTable::from_abelian(&group).unwrap();
        assert_eq!(table.num_irreducibles(), 5);
        for i in 0..5u64 {
            for j in 0..5usize {
                assert_eq!(
                    *table.evaluate(i as usize, j),
                    zeta(5, (i * j as u64) as i64),
                    "chi_{i}(sigma^{j})"
                );
            }
        }
    }

    #[test]
    fn abelian_table_of_trivial_group() {
        let group = cyclic_group(1);
        let table = CharacterTable::from_abelian(&group).unwrap();
        assert_eq!(table.num_irreducibles(), 1);
        assert!(table.value(0, 0).is_one());
    }

    #[test]
    fn abelian_table_of_klein_four_group_is_plus_minus_one() {
        // Z_2 x Z_2 as permutations
        let group = FiniteGroup::from_permutations(
            4,
            &[vec![1, 0, 3, 2], vec![2, 3, 0, 1]],
            DEFAULT_CLOSURE_BOUND,
        )
        .unwrap();
        let table = CharacterTable::from_abelian(&group).unwrap();
        assert_eq!(table.num_irreducibles(), 4);
        for v in 0..4 {
            for c in 0..4 {
                let q = table.value(v, c).to_rational().unwrap();
                assert!(q == rat(1) || q == rat(-1));
            }
        }
        table.check_orthogonality().unwrap();
    }

    #[test]
    fn abelian_builder_rejects_nonabelian_groups() {
        let group = FiniteGroup::from_permutations(
            3,
            &[vec![1, 0, 2], vec![1, 2, 0]],
            DEFAULT_CLOSURE_BOUND,
        )
        .unwrap();
        assert!(matches!(
            CharacterTable::from_abelian(&group),
            Err(Error::NotAbelian(_, _))
        ));
    }

    #[test]
    fn metacyclic_7_3_2_matches_printed_table() {
        let meta = example_order_21();
        let table = &meta.table;
        assert_eq!(table.degrees(), &[1, 1, 1, 3, 3]);
        let tau_class = table.partition().class_of(meta.tau);
        let sigma_class = table.partition().class_of(meta.sigma);
        let period1 = &(&zeta(7, 1) + &zeta(7, 2)) + &zeta(7, 4);
        assert_eq!(*table.value(3, tau_class), period1);
        assert!(table.value(3, sigma_class).is_zero());
        assert_eq!(*table.value(1, sigma_class), zeta(3, 1));
    }

    #[test]
    fn metacyclic_m_1_1_is_abelian_cyclic() {
        let meta = build_metacyclic_table(6, 1, 1).unwrap();
        assert_eq!(meta.table.num_irreducibles(), 6);
        assert_eq!(meta.group.order(), 6);
        for i in 0..6u64 {
            assert_eq!(*meta.table.evaluate(i as usize, meta.tau), zeta(6, i as i64));
        }
    }

    #[test]
    fn metacyclic_5_4_2_has_degree_pattern_1_1_1_1_4() {
        let meta = build_metacyclic_table(5, 4, 2).unwrap();
        assert_eq!(meta.table.degrees(), &[1, 1, 1, 1, 4]);
    }

    #[test]
    fn metacyclic_rejects_non_free_orbits() {
        // t = 4 has order 3 mod 9 but fixes u = 3 and u = 6
        assert!(matches!(
            build_metacyclic_table(9, 3, 4),
            Err(Error::UnsupportedMetacyclic { .. })
        ));
    }

    #[test]
    fn regular_character_pairs_to_degrees() {
        let meta = example_order_21();
        let reg = meta.table.regular_character();
        for v in 0..5 {
            let ip = meta
                .table
                .inner_product(&reg, meta.table.irreducible(v))
                .unwrap();
            assert_eq!(ip, Cyclotomic::integer(meta.table.degree(v) as i64));
        }
    }

    #[test]
    fn printed_table_rows_are_orthonormal() {
        let meta = example_order_21();
        let ip = |a: usize, b: usize| {
            meta.table
                .inner_product(meta.table.irreducible(a), meta.table.irreducible(b))
                .unwrap()
        };
        assert!(ip(3, 3).is_one());
        assert!(ip(3, 4).is_zero());
    }

    #[test]
    fn induction_of_trivial_from_whole_cyclic_group() {
        let group = cyclic_group(6);
        let table = CharacterTable::from_abelian(&group).unwrap();
        let h = group.cyclic_subgroup(1);
        let mut theta = vec![0i64; 6];
        theta[0] = 1;
        let ind = table.induce_from_cyclic(&h, &theta).unwrap();
        assert_eq!(ind.coeffs(), &[1, 0, 0, 0, 0, 0]);
    }

    #[test]
    fn induction_of_regular_is_regular() {
        // Ind_H^G of the regular character of H is the regular character of
        // G: every V appears with coefficient dim V
        let meta = example_order_21();
        for c in [0, meta.sigma, meta.tau, meta.group.mul(meta.tau, meta.sigma)] {
            let h = meta.group.cyclic_subgroup(c);
            let theta = vec![1i64; h.order() as usize];
            let ind = meta.table.induce_from_cyclic(&h, &theta).unwrap();
            let dims: Vec<i64> = meta.table.degrees().iter().map(|&d| d as i64).collect();
            assert_eq!(ind.coeffs(), &dims[..]);
        }
    }

    #[test]
    fn induction_of_omega_zero_from_sigma() {
        let meta = example_order_21();
        let h = meta.group.cyclic_subgroup(meta.sigma);
        let ind = meta.table.induce_from_cyclic(&h, &[1, 0, 0]).unwrap();
        assert_eq!(ind.coeffs(), &[1, 0, 0, 1, 1]);
    }

    #[test]
    fn reciprocity_and_direct_induction_agree() {
        let meta = example_order_21();
        for c in [meta.sigma, meta.tau] {
            let h = meta.group.cyclic_subgroup(c);
            for a in 0..h.order() as usize {
                let mut theta = vec![0i64; h.order() as usize];
                theta[a] = 1;
                let fast = meta.table.induce_from_cyclic(&h, &theta).unwrap();
                let slow = meta.table.induce_from_cyclic_direct(&h, &theta).unwrap();
                assert_eq!(fast, slow, "c = {c}, a = {a}");
            }
        }
    }

    #[test]
    fn eigenvalue_multiplicities_examples() {
        let meta = example_order_21();
        let sigma = meta.group.cyclic_subgroup(meta.sigma);
        let tau = meta.group.cyclic_subgroup(meta.tau);

        assert_eq!(
            meta.table.eigenvalue_multiplicities(0, &sigma).unwrap(),
            vec![1, 0, 0]
        );
        assert_eq!(
            meta.table.eigenvalue_multiplicities(3, &sigma).unwrap(),
            vec![1, 1, 1]
        );
        let n_tau = meta.table.eigenvalue_multiplicities(3, &tau).unwrap();
        assert_eq!(n_tau, vec![0, 1, 1, 0, 1, 0, 0]);
    }

    #[test]
    fn dft_inversion_recovers_character_values() {
        let meta = example_order_21();
        for c in [meta.sigma, meta.tau] {
            let h = meta.group.cyclic_subgroup(c);
            let m = h.order();
            for v in 0..meta.table.num_irreducibles() {
                let counts = meta.table.eigenvalue_multiplicities(v, &h).unwrap();
                for j in 0..m as usize {
                    let mut acc = RootSum::zero(m);
                    for (k, &count) in counts.iter().enumerate() {
                        acc.add_root((k * j) as u64, &rat(count as i64));
                    }
                    assert_eq!(acc.reduce(), *meta.table.evaluate(v, h.power(j)));
                }
            }
        }
    }

    #[test]
    fn fixed_subspace_dimensions() {
        let meta = example_order_21();
        let sigma = meta.group.cyclic_subgroup(meta.sigma);
        let tau = meta.group.cyclic_subgroup(meta.tau);
        assert_eq!(meta.table.fixed_subspace_dim(0, &tau).unwrap(), 1);
        assert_eq!(meta.table.fixed_subspace_dim(3, &tau).unwrap(), 0);
        assert_eq!(meta.table.fixed_subspace_dim(3, &sigma).unwrap(), 1);
    }

    #[test]
    fn absolute_irreducibility_tests() {
        let meta = example_order_21();
        assert!(meta.table.is_absolutely_irreducible(0));
        assert!(!meta.table.is_absolutely_irreducible(1)); // value zeta_3 is irrational

        let f20 = build_metacyclic_table(5, 4, 2).unwrap();
        assert!(f20.table.is_absolutely_irreducible(4));
    }

    #[test]
    fn conjugate_irreducible_pairs() {
        let meta = example_order_21();
        assert_eq!(meta.table.conjugate_irreducible(0), 0);
        assert_eq!(meta.table.conjugate_irreducible(1), 2);
        assert_eq!(meta.table.conjugate_irreducible(3), 4);
        assert_eq!(meta.table.conjugate_irreducible(4), 3);
    }

    #[test]
    fn subgroup_from_wrong_group_is_rejected() {
        let meta = example_order_21();
        let other = cyclic_group(6);
        let h = other.cyclic_subgroup(1);
        assert!(matches!(
            meta.table.eigenvalue_multiplicities(0, &h),
            Err(Error::SubgroupMismatch { .. })
        ));
    }
}
