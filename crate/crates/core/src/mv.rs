//! Finite products of Łukasiewicz chains.
//!
//! A [`ChainSignature`] `[n₁, …, n_k]` names the algebra S_{n₁} × … × S_{n_k},
//! where S_n = {0, 1/n, …, 1} with truncated addition. Elements are stored as
//! integer numerators, coordinate `j` ranging over `0..=n_j`. Every finite
//! MV-algebra is isomorphic to one of these, and Boolean algebras are the
//! all-ones signatures.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::table::TableMvAlgebra;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct ChainSignature(Vec<u32>);

impl ChainSignature {
    pub fn new(orders: Vec<u32>) -> Result<Self> {
        if orders.is_empty() {
            return Err(Error::EmptySignature);
        }
        if let Some(index) = orders.iter().position(|&n| n == 0) {
            return Err(Error::ZeroOrder { index });
        }
        Ok(Self(orders))
    }

    /// The Boolean algebra with `atoms` atoms, i.e. `[1; atoms]`.
    pub fn boolean(atoms: usize) -> Result<Self> {
        Self::new(vec![1; atoms])
    }

    pub fn orders(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn order(&self, j: usize) -> u32 {
        self.0[j]
    }

    pub fn is_boolean(&self) -> bool {
        self.0.iter().all(|&n| n == 1)
    }

    /// Number of elements, or `None` on `usize` overflow.
    pub fn cardinality(&self) -> Option<usize> {
        self.0
            .iter()
            .try_fold(1usize, |acc, &n| acc.checked_mul(n as usize + 1))
    }
}

impl TryFrom<Vec<u32>> for ChainSignature {
    type Error = Error;

    fn try_from(orders: Vec<u32>) -> Result<Self> {
        Self::new(orders)
    }
}

impl From<ChainSignature> for Vec<u32> {
    fn from(sig: ChainSignature) -> Self {
        sig.0
    }
}

impl fmt::Display for ChainSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|n| format!("S{n}")).collect();
        f.write_str(&parts.join("×"))
    }
}

/// An element of a product of chains, as its vector of numerators.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MvElement(Vec<u32>);

impl MvElement {
    pub fn new(numerators: Vec<u32>) -> Self {
        Self(numerators)
    }

    pub fn numerators(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, j: usize) -> u32 {
        self.0[j]
    }
}

impl From<Vec<u32>> for MvElement {
    fn from(v: Vec<u32>) -> Self {
        Self(v)
    }
}

impl fmt::Display for MvElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// An ideal. Ideals of a table algebra are explicit index sets; ideals of a
/// product of chains are all of the form {x : x_j = 0 for j ∈ Z}.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Ideal {
    Members(BTreeSet<usize>),
    CoordinateKernel(BTreeSet<usize>),
}

impl Ideal {
    pub fn kernel_of(coords: impl IntoIterator<Item = usize>) -> Self {
        Ideal::CoordinateKernel(coords.into_iter().collect())
    }

    /// Membership for ideals of a product algebra. Explicit member sets are
    /// interpreted as element indices of `alg`.
    pub fn contains(&self, alg: &ProductMvAlgebra, a: &MvElement) -> bool {
        match self {
            Ideal::CoordinateKernel(zs) => zs.iter().all(|&j| a.get(j) == 0),
            Ideal::Members(set) => set.contains(&alg.index_of(a)),
        }
    }

    /// The ideal as a set of element indices of `alg`.
    pub fn members_in(&self, alg: &ProductMvAlgebra) -> BTreeSet<usize> {
        match self {
            Ideal::Members(set) => set.clone(),
            Ideal::CoordinateKernel(_) => alg
                .elements()
                .enumerate()
                .filter(|(_, a)| self.contains(alg, a))
                .map(|(i, _)| i)
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ProductMvAlgebra {
    signature: ChainSignature,
}

impl ProductMvAlgebra {
    pub fn new(signature: ChainSignature) -> Self {
        Self { signature }
    }

    pub fn from_orders(orders: Vec<u32>) -> Result<Self> {
        Ok(Self::new(ChainSignature::new(orders)?))
    }

    pub fn boolean(atoms: usize) -> Result<Self> {
        Ok(Self::new(ChainSignature::boolean(atoms)?))
    }

    pub fn signature(&self) -> &ChainSignature {
        &self.signature
    }

    pub fn dim(&self) -> usize {
        self.signature.len()
    }

    pub fn order(&self, j: usize) -> u32 {
        self.signature.order(j)
    }

    pub fn cardinality(&self) -> Option<usize> {
        self.signature.cardinality()
    }

    pub fn is_boolean(&self) -> bool {
        self.signature.is_boolean()
    }

    pub fn check(&self, a: &MvElement) -> Result<()> {
        if a.len() != self.dim() {
            return Err(Error::SignatureMismatch {
                expected: self.dim(),
                found: a.len(),
            });
        }
        for (j, (&x, &n)) in a.0.iter().zip(self.signature.orders()).enumerate() {
            if x > n {
                return Err(Error::OutOfRange {
                    coordinate: j,
                    numerator: x,
                    order: n,
                });
            }
        }
        Ok(())
    }

    pub fn element(&self, numerators: Vec<u32>) -> Result<MvElement> {
        let a = MvElement(numerators);
        self.check(&a)?;
        Ok(a)
    }

    pub fn zero(&self) -> MvElement {
        MvElement(vec![0; self.dim()])
    }

    pub fn one(&self) -> MvElement {
        MvElement(self.signature.orders().to_vec())
    }

    /// The Boolean element that is 1 at coordinate `j` and 0 elsewhere.
    pub fn unit(&self, j: usize) -> MvElement {
        let mut v = vec![0; self.dim()];
        v[j] = self.order(j);
        MvElement(v)
    }

    /// Value of coordinate `j` as a rational in [0, 1].
    pub fn value(&self, a: &MvElement, j: usize) -> Rational {
        Rational::new(a.get(j) as i64, self.order(j) as i64)
    }

    pub fn values(&self, a: &MvElement) -> Vec<Rational> {
        (0..self.dim()).map(|j| self.value(a, j)).collect()
    }

    fn binary(&self, a: &MvElement, b: &MvElement, op: impl Fn(u32, u32, u32) -> u32) -> Result<MvElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.binary_unchecked(a, b, op))
    }

    fn binary_unchecked(&self, a: &MvElement, b: &MvElement, op: impl Fn(u32, u32, u32) -> u32) -> MvElement {
        MvElement(
            a.0.iter()
                .zip(&b.0)
                .zip(self.signature.orders())
                .map(|((&x, &y), &n)| op(x, y, n))
                .collect(),
        )
    }

    pub fn oplus(&self, a: &MvElement, b: &MvElement) -> Result<MvElement> {
        self.binary(a, b, |x, y, n| (x + y).min(n))
    }

    pub fn star(&self, a: &MvElement) -> Result<MvElement> {
        self.check(a)?;
        Ok(self.star_unchecked(a))
    }

    fn star_unchecked(&self, a: &MvElement) -> MvElement {
        MvElement(a.0.iter().zip(self.signature.orders()).map(|(&x, &n)| n - x).collect())
    }

    /// a ⊙ b = (a* ⊕ b*)*.
    pub fn odot(&self, a: &MvElement, b: &MvElement) -> Result<MvElement> {
        let s = self.oplus(&self.star(a)?, &self.star(b)?)?;
        self.star(&s)
    }

    pub fn join(&self, a: &MvElement, b: &MvElement) -> Result<MvElement> {
        self.binary(a, b, |x, y, _| x.max(y))
    }

    pub fn meet(&self, a: &MvElement, b: &MvElement) -> Result<MvElement> {
        self.binary(a, b, |x, y, _| x.min(y))
    }

    pub fn leq(&self, a: &MvElement, b: &MvElement) -> Result<bool> {
        self.check(a)?;
        self.check(b)?;
        Ok(a.0.iter().zip(&b.0).all(|(x, y)| x <= y))
    }

    /// The partial sum a + b, defined iff a ⊙ b = 0.
    pub fn partial_add(&self, a: &MvElement, b: &MvElement) -> Result<Option<MvElement>> {
        let orthogonal = self.odot(a, b)? == self.zero();
        Ok(if orthogonal { Some(self.oplus(a, b)?) } else { None })
    }

    /// n·a built by repeated partial addition, or `None` if some step is
    /// undefined.
    pub fn nmul(&self, a: &MvElement, n: u32) -> Result<Option<MvElement>> {
        self.check(a)?;
        let mut acc = self.zero();
        for _ in 0..n {
            match self.partial_add(&acc, a)? {
                Some(next) => acc = next,
                None => return Ok(None),
            }
        }
        Ok(Some(acc))
    }

    /// Some v with n·v = 1, found by exhausting the algebra.
    pub fn weak_divisibility_witness(&self, n: u32) -> Option<MvElement> {
        let one = self.one();
        self.elements()
            .find(|v| self.nmul(v, n).ok().flatten().as_ref() == Some(&one))
    }

    pub fn weakly_divisible_at(&self, n: u32) -> bool {
        self.weak_divisibility_witness(n).is_some()
    }

    /// a ⊕ a = a.
    pub fn is_boolean_element(&self, a: &MvElement) -> Result<bool> {
        Ok(&self.oplus(a, a)? == a)
    }

    /// All elements in lexicographic order, coordinate 0 most significant.
    pub fn elements(&self) -> Elements<'_> {
        Elements {
            orders: self.signature.orders(),
            next: Some(vec![0; self.dim()]),
        }
    }

    /// Position of `a` in [`Self::elements`] order.
    pub fn index_of(&self, a: &MvElement) -> usize {
        a.0.iter()
            .zip(self.signature.orders())
            .fold(0, |acc, (&x, &n)| acc * (n as usize + 1) + x as usize)
    }

    pub fn element_at(&self, mut index: usize) -> MvElement {
        let mut v = vec![0; self.dim()];
        for (j, &n) in self.signature.orders().iter().enumerate().rev() {
            let base = n as usize + 1;
            v[j] = (index % base) as u32;
            index /= base;
        }
        MvElement(v)
    }

    /// The Cayley-table form of this algebra, capped at `cap` elements.
    pub fn to_table_capped(&self, cap: usize) -> Result<TableMvAlgebra> {
        let size = self.cardinality().unwrap_or(usize::MAX);
        if size > cap {
            return Err(Error::TooLarge {
                what: "table algebra",
                size,
                cap,
            });
        }
        let elems: Vec<MvElement> = self.elements().collect();
        let oplus = elems
            .iter()
            .map(|a| {
                elems
                    .iter()
                    .map(|b| self.index_of(&self.binary_unchecked(a, b, |x, y, n| (x + y).min(n))))
                    .collect()
            })
            .collect();
        let star = elems.iter().map(|a| self.index_of(&self.star_unchecked(a))).collect();
        TableMvAlgebra::with_cap(oplus, star, self.index_of(&self.zero()), cap)
    }

    pub fn to_table(&self) -> Result<TableMvAlgebra> {
        self.to_table_capped(crate::table::DEFAULT_TABLE_CAP)
    }

    /// The maximal ideals: one coordinate kernel {x : x_j = 0} per chain.
    pub fn maximal_ideals(&self) -> Vec<Ideal> {
        (0..self.dim()).map(|j| Ideal::kernel_of([j])).collect()
    }

    /// Intersection of the maximal ideals, which is {0} for every product of
    /// chains.
    pub fn radical(&self) -> Ideal {
        let mut zs = BTreeSet::new();
        for ideal in self.maximal_ideals() {
            if let Ideal::CoordinateKernel(z) = ideal {
                zs.extend(z);
            }
        }
        Ideal::CoordinateKernel(zs)
    }

    pub fn is_semisimple(&self) -> bool {
        self.radical().members_in(self).len() == 1
    }
}

pub struct Elements<'a> {
    orders: &'a [u32],
    next: Option<Vec<u32>>,
}

impl Iterator for Elements<'_> {
    type Item = MvElement;

    fn next(&mut self) -> Option<MvElement> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut j = succ.len();
        while j > 0 {
            j -= 1;
            if succ[j] < self.orders[j] {
                succ[j] += 1;
                self.next = Some(succ);
                break;
            }
            succ[j] = 0;
        }
        Some(MvElement(current))
    }
}
