//! Finite groups as validated multiplication tables.
//!
//! Elements are indices 0..n-1 with 0 the identity. Groups enter either as an
//! explicit n x n table or as permutation generators whose closure is
//! enumerated breadth-first and materialized into a table. Everything
//! downstream (conjugacy classes, cyclic subgroups, characters) reads the
//! table, so construction validates the group axioms:
//! identity row/column, Latin-square rows and columns, two-sided inverses and
//! associativity. Associativity is checked cubically for order <= 128 and by
//! Light's test on a generating set above that.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Default cap on permutation-closure enumeration.
pub const DEFAULT_CLOSURE_BOUND: usize = 10_000;

/// Order threshold up to which the full cubic associativity check runs.
const FULL_ASSOCIATIVITY_LIMIT: usize = 128;

#[derive(Debug)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    inverse: Vec<u32>,
    element_order: Vec<u32>,
}

impl FiniteGroup {
    /// Build and validate a group from a full multiplication table.
    ///
    /// Element 0 must already be the identity; tables in any other ordering
    /// are rejected rather than permuted, so files keep a single meaning.
    pub fn from_table(rows: &[Vec<usize>]) -> Result<Arc<Self>> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::TableNotSquare(n));
        }
        let mut table = vec![0u32; n * n];
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(Error::ElementOutOfRange(v, n));
                }
                table[i * n + j] = v as u32;
            }
        }
        Self::validate(n, table)
    }

    /// Enumerate the closure of permutation generators on `degree` points and
    /// materialize the multiplication table. Indices follow breadth-first
    /// discovery order from the identity, generators applied in input order.
    pub fn from_permutations(
        degree: usize,
        generators: &[Vec<usize>],
        size_bound: usize,
    ) -> Result<Arc<Self>> {
        for (gi, g) in generators.iter().enumerate() {
            let mut seen = vec![false; degree];
            if g.len() != degree {
                return Err(Error::BadPermutation(gi, degree));
            }
            for &img in g {
                if img >= degree || seen[img] {
                    return Err(Error::BadPermutation(gi, degree));
                }
                seen[img] = true;
            }
        }

        let identity: Vec<usize> = (0..degree).collect();
        let mut elements: Vec<Vec<usize>> = vec![identity.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
        index.insert(identity, 0);
        let mut cursor = 0;
        while cursor < elements.len() {
            let current = elements[cursor].clone();
            for g in generators {
                // right multiplication: (current * g)(x) = current(g(x))
                let product: Vec<usize> = (0..degree).map(|x| current[g[x]]).collect();
                if !index.contains_key(&product) {
                    if elements.len() >= size_bound {
                        return Err(Error::ClosureTooLarge(size_bound));
                    }
                    index.insert(product.clone(), elements.len());
                    elements.push(product);
                }
            }
            cursor += 1;
        }

        let n = elements.len();
        let mut table = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                let product: Vec<usize> = (0..degree).map(|x| elements[i][elements[j][x]]).collect();
                table[i * n + j] = index[&product] as u32;
            }
        }
        Self::validate(n, table)
    }

    fn validate(n: usize, table: Vec<u32>) -> Result<Arc<Self>> {
        let at = |i: usize, j: usize| table[i * n + j] as usize;

        for j in 0..n {
            if at(0, j) != j {
                return Err(Error::IdentityMissing);
            }
        }
        for i in 0..n {
            if at(i, 0) != i {
                return Err(Error::IdentityMissing);
            }
        }
        for i in 0..n {
            let mut row_seen = vec![false; n];
            let mut col_seen = vec![false; n];
            for j in 0..n {
                if std::mem::replace(&mut row_seen[at(i, j)], true) {
                    return Err(Error::NotABijection(i));
                }
                if std::mem::replace(&mut col_seen[at(j, i)], true) {
                    return Err(Error::NotABijection(i));
                }
            }
        }

        let mut inverse = vec![u32::MAX; n];
        for i in 0..n {
            for j in 0..n {
                if at(i, j) == 0 {
                    if at(j, i) != 0 {
                        return Err(Error::NoInverse(i));
                    }
                    inverse[i] = j as u32;
                }
            }
            if inverse[i] == u32::MAX {
                return Err(Error::NoInverse(i));
            }
        }

        if n <= FULL_ASSOCIATIVITY_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    let ab = at(a, b);
                    for c in 0..n {
                        if at(ab, c) != at(a, at(b, c)) {
                            return Err(Error::NonAssociative { a, b, c });
                        }
                    }
                }
            }
        } else {
            light_associativity_test(n, &table)?;
        }

        let mut element_order = vec![0u32; n];
        for g in 0..n {
            let mut power = g;
            let mut ord = 1u32;
            while power != 0 {
                power = at(power, g);
                ord += 1;
            }
            element_order[g] = ord;
        }

        Ok(Arc::new(FiniteGroup {
            order: n,
            table,
            inverse,
            element_order,
        }))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    pub fn element_order(&self, a: usize) -> u64 {
        self.element_order[a] as u64
    }

    /// g^k for any integer k.
    pub fn power(&self, g: usize, k: i64) -> usize {
        let m = self.element_order(g) as i64;
        let mut e = k.rem_euclid(m);
        let mut acc = 0;
        let mut base = g;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn is_abelian(&self) -> bool {
        self.first_non_commuting_pair().is_none()
    }

    pub(crate) fn first_non_commuting_pair(&self) -> Option<(usize, usize)> {
        for a in 0..self.order {
            for b in (a + 1)..self.order {
                if self.mul(a, b) != self.mul(b, a) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    /// lcm of the element orders.
    pub fn exponent(&self) -> u64 {
        self.element_order
            .iter()
            .fold(1u64, |acc, &o| num_integer::lcm(acc, o as u64))
    }

    /// True iff the closure of `gens` under multiplication is the whole group.
    pub fn generates(&self, gens: &[usize]) -> bool {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut frontier = vec![0usize];
        let mut count = 1;
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    frontier.push(y);
                }
            }
        }
        count == self.order
    }

    /// Conjugacy classes as orbits of the conjugation action, ordered by
    /// minimal element index; class 0 is the identity class.
    pub fn conjugacy_classes(self: &Arc<Self>) -> Arc<ConjugacyPartition> {
        let n = self.order;
        let mut class_of = vec![usize::MAX; n];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for g in 0..n {
            if class_of[g] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut members = Vec::new();
            for h in 0..n {
                let conj = self.mul(self.mul(h, g), self.inv(h));
                if class_of[conj] == usize::MAX {
                    class_of[conj] = id;
                    members.push(conj);
                }
            }
            members.sort_unstable();
            classes.push(members);
        }
        Arc::new(ConjugacyPartition { classes, class_of })
    }

    /// The cyclic subgroup generated by `c`, with a fixed left transversal.
    ///
    /// Coset representatives are chosen as the minimal element index not yet
    /// covered, so the transversal is deterministic and starts with the
    /// identity.
    pub fn cyclic_subgroup(self: &Arc<Self>, c: usize) -> CyclicSubgroup {
        assert!(c < self.order, "element index out of range");
        let m = self.element_order(c) as usize;
        let mut elements = Vec::with_capacity(m);
        let mut x = 0;
        for _ in 0..m {
            elements.push(x);
            x = self.mul(x, c);
        }
        let mut in_subgroup = vec![false; self.order];
        for &e in &elements {
            in_subgroup[e] = true;
        }
        let mut covered = vec![false; self.order];
        let mut coset_reps = Vec::with_capacity(self.order / m);
        for rep in 0..self.order {
            if covered[rep] {
                continue;
            }
            coset_reps.push(rep);
            for &h in &elements {
                covered[self.mul(rep, h)] = true;
            }
        }
        CyclicSubgroup {
            generator: c,
            order: m as u64,
            elements,
            coset_reps,
            group_order: self.order,
        }
    }
}

/// Light's associativity test: verify x*(s*y) = (x*s)*y for every s in a set
/// generating the loop through left-normed products. Elements whose inner
/// triples all associate form a subloop-closed set, so generators suffice.
fn light_associativity_test(n: usize, table: &[u32]) -> Result<()> {
    let at = |i: usize, j: usize| table[i * n + j] as usize;

    let mut gens: Vec<usize> = Vec::new();
    let mut reached = vec![false; n];
    reached[0] = true;
    let mut count = 1;
    for candidate in 1..n {
        if reached[candidate] {
            continue;
        }
        gens.push(candidate);
        // left-normed closure under the current generator set
        let mut frontier: Vec<usize> = (0..n).filter(|&x| reached[x]).collect();
        while let Some(x) = frontier.pop() {
            for &g in &gens {
                let y = at(x, g);
                if !reached[y] {
                    reached[y] = true;
                    count += 1;
                    frontier.push(y);
                }
            }
        }
        if count == n {
            break;
        }
    }

    for &s in &gens {
        for x in 0..n {
            let xs = at(x, s);
            for y in 0..n {
                if at(xs, y) != at(x, at(s, y)) {
                    return Err(Error::NonAssociative { a: x, b: s, c: y });
                }
            }
        }
    }
    Ok(())
}

/// Partition of the element set into conjugacy classes.
#[derive(Debug)]
pub struct ConjugacyPartition {
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
}

impl ConjugacyPartition {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn class(&self, i: usize) -> &[usize] {
        &self.classes[i]
    }

    pub fn class_of(&self, g: usize) -> usize {
        self.class_of[g]
    }

    /// Minimal element of class i, the canonical representative.
    pub fn representative(&self, i: usize) -> usize {
        self.classes[i][0]
    }

    pub fn size(&self, i: usize) -> usize {
        self.classes[i].len()
    }
}

/// A cyclic subgroup with its power list and a left transversal.
#[derive(Debug, Clone)]
pub struct CyclicSubgroup {
    generator: usize,
    order: u64,
    /// c^0 = identity, c^1, ..., c^(m-1)
    elements: Vec<usize>,
    coset_reps: Vec<usize>,
    group_order: usize,
}

impl CyclicSubgroup {
    pub fn generator(&self) -> usize {
        self.generator
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// c^j for 0 <= j < m.
    pub fn power(&self, j: usize) -> usize {
        self.elements[j]
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn coset_representatives(&self) -> &[usize] {
        &self.coset_reps
    }

    pub fn group_order(&self) -> usize {
        self.group_order
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn cyclic_table(n: usize) -> Vec<Vec<usize>> {
        (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect()
    }

    fn s3() -> Arc<FiniteGroup> {
        // symmetric group on 3 letters from its two generators
        FiniteGroup::from_permutations(3, &[vec![1, 0, 2], vec![1, 2, 0]], DEFAULT_CLOSURE_BOUND)
            .unwrap()
    }

    #[test]
    fn cyclic_group_has_expected_orders() {
        let g = FiniteGroup::from_table(&cyclic_table(5)).unwrap();
        let orders: Vec<u64> = (0..5).map(|i| g.element_order(i)).collect();
        assert_eq!(orders, vec![1, 5, 5, 5, 5]);
    }

    #[test]
    fn klein_permutation_generators_close_to_order_21() {
        // a 7-cycle and a 3-element permutation normalizing it
        let seven: Vec<usize> = vec![1, 2, 3, 4, 5, 6, 0];
        let three: Vec<usize> = vec![0, 2, 4, 6, 1, 3, 5]; // cycles (1 2 4)(3 6 5) on points
        let g = FiniteGroup::from_permutations(7, &[seven, three], DEFAULT_CLOSURE_BOUND).unwrap();
        assert_eq!(g.order(), 21);
    }

    #[test]
    fn non_invertible_row_is_rejected() {
        let mut rows = cyclic_table(3);
        rows[2] = vec![2, 2, 2];
        assert!(matches!(
            FiniteGroup::from_table(&rows),
            Err(Error::NotABijection(_))
        ));
    }

    #[test]
    fn non_associative_latin_square_is_rejected() {
        // a loop of order 5 with two-sided inverses that is not a group
        let rows = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(
            FiniteGroup::from_table(&rows),
            Err(Error::NonAssociative { .. })
        ));
    }

    #[test]
    fn abelian_groups_have_singleton_classes() {
        let g = FiniteGroup::from_table(&cyclic_table(6)).unwrap();
        let classes = g.conjugacy_classes();
        assert_eq!(classes.len(), 6);
        for i in 0..6 {
            assert_eq!(classes.class(i), &[i]);
        }
    }

    #[test]
    fn s3_has_classes_of_sizes_1_3_2() {
        let g = s3();
        let classes = g.conjugacy_classes();
        let mut sizes: Vec<usize> = (0..classes.len()).map(|i| classes.size(i)).collect();
        assert_eq!(sizes.remove(0), 1);
        sizes.sort_unstable();
        assert_eq!(sizes, vec![2, 3]);
    }

    #[test]
    fn order_21_group_has_five_classes() {
        let seven: Vec<usize> = vec![1, 2, 3, 4, 5, 6, 0];
        let three: Vec<usize> = vec![0, 2, 4, 6, 1, 3, 5];
        let g = FiniteGroup::from_permutations(7, &[seven, three], DEFAULT_CLOSURE_BOUND).unwrap();
        assert_eq!(g.conjugacy_classes().len(), 5);
    }

    #[test]
    fn cyclic_subgroup_structure() {
        let g = FiniteGroup::from_table(&cyclic_table(6)).unwrap();
        let h = g.cyclic_subgroup(0);
        assert_eq!(h.order(), 1);
        assert_eq!(h.coset_representatives().len(), 6);

        let h = g.cyclic_subgroup(2);
        assert_eq!(h.order(), 3);
        assert_eq!(h.elements(), &[0, 2, 4]);
        assert_eq!(h.coset_representatives(), &[0, 1]);
    }

    #[test]
    fn generation_checks() {
        let g = FiniteGroup::from_table(&cyclic_table(6)).unwrap();
        let all: Vec<usize> = (0..6).collect();
        assert!(g.generates(&all));
        assert!(!g.generates(&[0]));
        assert!(g.generates(&[5]));
        assert!(!g.generates(&[2, 4]));
    }

    #[test]
    fn inverse_and_order_properties() {
        let g = s3();
        for x in 0..g.order() {
            assert_eq!(g.mul(x, g.inv(x)), 0);
            assert_eq!(g.element_order(x), g.element_order(g.inv(x)));
        }
    }

    #[test]
    fn classes_are_conjugation_stable() {
        let g = s3();
        let classes = g.conjugacy_classes();
        for x in 0..g.order() {
            for h in 0..g.order() {
                let conj = g.mul(g.mul(h, x), g.inv(h));
                assert_eq!(classes.class_of(x), classes.class_of(conj));
            }
        }
    }

    #[test]
    fn transversal_factorization_is_unique() {
        let g = s3();
        for c in 0..g.order() {
            let h = g.cyclic_subgroup(c);
            let mut seen = vec![false; g.order()];
            for &rep in h.coset_representatives() {
                for j in 0..h.order() as usize {
                    let x = g.mul(rep, h.power(j));
                    assert!(!seen[x], "element {x} reached twice");
                    seen[x] = true;
                }
            }
            assert!(seen.iter().all(|&s| s));
        }
    }

    #[test]
    fn light_test_accepts_larger_cyclic_groups() {
        let g = FiniteGroup::from_table(&cyclic_table(150)).unwrap();
        assert_eq!(g.order(), 150);
        assert_eq!(g.element_order(1), 150);
    }

    #[test]
    fn closure_bound_is_enforced() {
        let seven: Vec<usize> = vec![1, 2, 3, 4, 5, 6, 0];
        let three: Vec<usize> = vec![0, 2, 4, 6, 1, 3, 5];
        assert!(matches!(
            FiniteGroup::from_permutations(7, &[seven, three], 10),
            Err(Error::ClosureTooLarge(10))
        ));
    }
}
