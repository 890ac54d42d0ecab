//! MV-algebras given by Cayley tables, for brute-force checks.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::report::{sweep, LawReport};

/// Largest carrier accepted for axiom sweeps unless overridden.
pub const DEFAULT_TABLE_CAP: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableMvAlgebra {
    oplus: Vec<Vec<usize>>,
    star: Vec<usize>,
    zero: usize,
}

impl TableMvAlgebra {
    pub fn new(oplus: Vec<Vec<usize>>, star: Vec<usize>, zero: usize) -> Result<Self> {
        Self::with_cap(oplus, star, zero, DEFAULT_TABLE_CAP)
    }

    /// Validates shape and closure: every entry must name an element.
    pub fn with_cap(oplus: Vec<Vec<usize>>, star: Vec<usize>, zero: usize, cap: usize) -> Result<Self> {
        let m = star.len();
        if m == 0 {
            return Err(Error::MalformedTable("empty carrier".into()));
        }
        if m > cap {
            return Err(Error::TooLarge {
                what: "table algebra",
                size: m,
                cap,
            });
        }
        if oplus.len() != m {
            return Err(Error::MalformedTable(format!(
                "oplus has {} rows, star has {m} entries",
                oplus.len()
            )));
        }
        for (i, row) in oplus.iter().enumerate() {
            if row.len() != m {
                return Err(Error::MalformedTable(format!(
                    "oplus row {i} has {} entries, expected {m}",
                    row.len()
                )));
            }
            if let Some(j) = row.iter().position(|&v| v >= m) {
                return Err(Error::MalformedTable(format!(
                    "oplus[{i}][{j}] = {} is not an element",
                    row[j]
                )));
            }
        }
        if let Some(i) = star.iter().position(|&v| v >= m) {
            return Err(Error::MalformedTable(format!(
                "star[{i}] = {} is not an element",
                star[i]
            )));
        }
        if zero >= m {
            return Err(Error::MalformedTable(format!("zero {zero} is not an element")));
        }
        Ok(Self { oplus, star, zero })
    }

    pub fn size(&self) -> usize {
        self.star.len()
    }

    pub fn oplus_table(&self) -> &[Vec<usize>] {
        &self.oplus
    }

    pub fn star_table(&self) -> &[usize] {
        &self.star
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.star[self.zero]
    }

    #[inline]
    pub fn oplus(&self, x: usize, y: usize) -> usize {
        self.oplus[x][y]
    }

    #[inline]
    pub fn star(&self, x: usize) -> usize {
        self.star[x]
    }

    #[inline]
    pub fn odot(&self, x: usize, y: usize) -> usize {
        self.star(self.oplus(self.star(x), self.star(y)))
    }

    /// x ≤ y iff x* ⊕ y = 1.
    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.oplus(self.star(x), y) == self.one()
    }

    /// x ∨ y = (x ⊙ y*) ⊕ y.
    pub fn join(&self, x: usize, y: usize) -> usize {
        self.oplus(self.odot(x, self.star(y)), y)
    }

    /// x ∧ y = x ⊙ (x* ⊕ y).
    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.odot(x, self.oplus(self.star(x), y))
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size()
    }

    fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let m = self.size();
        (0..m).flat_map(move |x| (0..m).map(move |y| (x, y)))
    }

    /// Sweeps the MV-algebra axioms; one entry per law with the first
    /// violating tuple.
    pub fn check_mv_axioms(&self) -> LawReport {
        let m = self.size();
        let mut r = LawReport::new();
        r.push(sweep("x⊕y=y⊕x", self.pairs(), |(x, y)| {
            (self.oplus(x, y) != self.oplus(y, x)).then(|| format!("x={x}, y={y}"))
        }));
        let triples = (0..m).flat_map(move |x| (0..m).flat_map(move |y| (0..m).map(move |z| (x, y, z))));
        r.push(sweep("x⊕(y⊕z)=(x⊕y)⊕z", triples, |(x, y, z)| {
            (self.oplus(x, self.oplus(y, z)) != self.oplus(self.oplus(x, y), z)).then(|| format!("x={x}, y={y}, z={z}"))
        }));
        r.push(sweep("x⊕0=x", self.elements(), |x| {
            (self.oplus(x, self.zero) != x).then(|| format!("x={x}"))
        }));
        r.push(sweep("(x*)*=x", self.elements(), |x| {
            (self.star(self.star(x)) != x).then(|| format!("x={x}"))
        }));
        let one = self.one();
        r.push(sweep("x⊕1=1", self.elements(), |x| {
            (self.oplus(x, one) != one).then(|| format!("x={x}"))
        }));
        r.push(sweep("x⊕(x⊕y*)*=y⊕(y⊕x*)*", self.pairs(), |(x, y)| {
            let lhs = self.oplus(x, self.star(self.oplus(x, self.star(y))));
            let rhs = self.oplus(y, self.star(self.oplus(y, self.star(x))));
            (lhs != rhs).then(|| format!("x={x}, y={y}"))
        }));
        r
    }

    pub fn is_ideal(&self, set: &BTreeSet<usize>) -> bool {
        if set.is_empty() {
            return false;
        }
        let down_closed = set
            .iter()
            .all(|&b| self.elements().all(|a| !self.leq(a, b) || set.contains(&a)));
        let sum_closed = set
            .iter()
            .all(|&a| set.iter().all(|&b| set.contains(&self.oplus(a, b))));
        down_closed && sum_closed
    }

    /// The ideal generated by `a`: everything below some n·a.
    pub fn principal_ideal(&self, a: usize) -> BTreeSet<usize> {
        let mut multiples = vec![self.zero];
        let mut current = self.zero;
        loop {
            let next = self.oplus(current, a);
            if next == current {
                break;
            }
            multiples.push(next);
            current = next;
        }
        self.elements()
            .filter(|&x| multiples.iter().any(|&m| self.leq(x, m)))
            .collect()
    }

    /// All ideals. In a finite MV-algebra every ideal is generated by the
    /// ⊕-sum of its members, so principal ideals are all of them.
    pub fn ideals(&self) -> Vec<BTreeSet<usize>> {
        let all: BTreeSet<BTreeSet<usize>> = self.elements().map(|a| self.principal_ideal(a)).collect();
        all.into_iter().collect()
    }

    pub fn maximal_ideals(&self) -> Vec<BTreeSet<usize>> {
        let proper: Vec<BTreeSet<usize>> = self.ideals().into_iter().filter(|i| i.len() < self.size()).collect();
        proper
            .iter()
            .filter(|i| !proper.iter().any(|j| j.len() > i.len() && j.is_superset(i)))
            .cloned()
            .collect()
    }

    pub fn radical(&self) -> BTreeSet<usize> {
        let maximal = self.maximal_ideals();
        self.elements()
            .filter(|x| maximal.iter().all(|i| i.contains(x)))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mv::ProductMvAlgebra;

    fn table(orders: &[u32]) -> TableMvAlgebra {
        ProductMvAlgebra::from_orders(orders.to_vec())
            .unwrap()
            .to_table()
            .unwrap()
    }

    #[test]
    fn product_tables_pass() {
        for orders in [&[2, 1][..], &[3], &[1, 1, 1], &[2, 4]] {
            let r = table(orders).check_mv_axioms();
            assert!(r.passed(), "{orders:?}:\n{r}");
        }
    }

    #[test]
    fn corrupted_top_fails_absorption() {
        // S1 = {0, 1}; rewrite 1 ⊕ 1 to 0
        let t = TableMvAlgebra::new(vec![vec![0, 1], vec![1, 0]], vec![1, 0], 0).unwrap();
        let r = t.check_mv_axioms();
        let c = r.get("x⊕1=1").unwrap();
        assert_eq!(c.counterexample.as_deref(), Some("x=1"));
    }

    #[test]
    fn malformed_tables_rejected() {
        assert!(TableMvAlgebra::new(vec![], vec![], 0).is_err());
        assert!(TableMvAlgebra::new(vec![vec![0, 2], vec![1, 1]], vec![1, 0], 0).is_err());
        assert!(TableMvAlgebra::new(vec![vec![0, 1]], vec![1, 0], 0).is_err());
        assert!(TableMvAlgebra::new(vec![vec![0, 1], vec![1, 1]], vec![1, 0], 5).is_err());
        let big = ProductMvAlgebra::from_orders(vec![15, 15]).unwrap();
        assert_eq!(big.to_table().unwrap().size(), 256);
        let bigger = ProductMvAlgebra::from_orders(vec![16, 16]).unwrap();
        assert!(matches!(bigger.to_table(), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn ideals_of_boolean_square_by_subset_sweep() {
        let t = table(&[1, 1]);
        // brute force over all 16 subsets
        let by_sweep: Vec<BTreeSet<usize>> = (0u32..16)
            .map(|mask| (0..4).filter(|i| mask & (1 << i) != 0).collect::<BTreeSet<_>>())
            .filter(|s| t.is_ideal(s))
            .collect();
        let mut by_generation = t.ideals();
        let mut sorted = by_sweep.clone();
        sorted.sort();
        by_generation.sort();
        assert_eq!(sorted, by_generation);
        // elements: 0=(0,0) 1=(0,1) 2=(1,0) 3=(1,1)
        let maximal = t.maximal_ideals();
        assert_eq!(maximal.len(), 2);
        assert!(maximal.contains(&BTreeSet::from([0, 1])));
        assert!(maximal.contains(&BTreeSet::from([0, 2])));
        assert_eq!(t.radical(), BTreeSet::from([0]));
    }

    #[test]
    fn maximal_ideals_agree_with_coordinate_kernels() {
        let a = ProductMvAlgebra::from_orders(vec![2, 4, 3]).unwrap();
        let t = a.to_table().unwrap();
        let mut from_table = t.maximal_ideals();
        from_table.sort();
        let mut structural: Vec<BTreeSet<usize>> = a.maximal_ideals().iter().map(|i| i.members_in(&a)).collect();
        structural.sort();
        assert_eq!(from_table, structural);
        assert_eq!(t.radical(), a.radical().members_in(&a));
    }

    #[test]
    fn lattice_ops_match_product() {
        let a = ProductMvAlgebra::from_orders(vec![2, 3]).unwrap();
        let t = a.to_table().unwrap();
        for x in t.elements() {
            for y in t.elements() {
                let (ex, ey) = (a.element_at(x), a.element_at(y));
                assert_eq!(a.element_at(t.join(x, y)), a.join(&ex, &ey).unwrap());
                assert_eq!(a.element_at(t.meet(x, y)), a.meet(&ex, &ey).unwrap());
                assert_eq!(t.leq(x, y), a.leq(&ex, &ey).unwrap());
            }
        }
    }
}
