//! Internal states on finite MV-algebras.
//!
//! Structurally, an MV-endomorphism τ of S_{n₁} × … × S_{n_k} is given by a
//! source map σ on coordinates, τ(x)_j = x_{σ(j)} (value copied, numerator
//! rescaled to denominator n_j), which requires n_{σ(j)} | n_j. It is a
//! state-morphism-operator exactly when σ∘σ = σ. Extensionally, any unary
//! operator is a [`UnaryTable`] over a [`TableMvAlgebra`], checked against
//! the state-operator axioms directly.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mv::{ChainSignature, Ideal, MvElement, ProductMvAlgebra};
use crate::report::{sweep, LawCheck, LawReport};
use crate::table::TableMvAlgebra;

/// Largest carrier for which all m^m unary tables are enumerated.
pub const DEFAULT_ENUMERATION_CAP: usize = 8;

/// A coordinate source map σ: {0..k−1} → {0..k−1}.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct OperatorSpec {
    sigma: Vec<usize>,
}

impl OperatorSpec {
    pub fn new(sigma: Vec<usize>) -> Result<Self> {
        check_self_map(&sigma)?;
        Ok(Self { sigma })
    }

    pub fn identity(k: usize) -> Self {
        Self {
            sigma: (0..k).collect(),
        }
    }

    /// A spec that is a valid MV-endomorphism of the given signature.
    pub fn for_signature(sig: &ChainSignature, sigma: Vec<usize>) -> Result<Self> {
        let spec = Self::new(sigma)?;
        spec.check_divisibility(sig)?;
        Ok(spec)
    }

    /// A spec that is a state-morphism-operator on the given signature.
    pub fn state_morphism(sig: &ChainSignature, sigma: Vec<usize>) -> Result<Self> {
        let spec = Self::for_signature(sig, sigma)?;
        spec.require_idempotent()?;
        Ok(spec)
    }

    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    pub fn dim(&self) -> usize {
        self.sigma.len()
    }

    pub fn source(&self, j: usize) -> usize {
        self.sigma[j]
    }

    pub fn check_divisibility(&self, sig: &ChainSignature) -> Result<()> {
        if sig.len() != self.dim() {
            return Err(Error::SignatureMismatch {
                expected: sig.len(),
                found: self.dim(),
            });
        }
        check_divisibility(sig, sig, &self.sigma)
    }

    /// First point with σ(σ(j)) ≠ σ(j).
    pub fn idempotence_violation(&self) -> Option<Error> {
        self.sigma.iter().enumerate().find_map(|(j, &s)| {
            let twice = self.sigma[s];
            (twice != s).then_some(Error::NotIdempotent {
                point: j,
                once: s,
                twice,
            })
        })
    }

    pub fn is_idempotent(&self) -> bool {
        self.idempotence_violation().is_none()
    }

    pub fn require_idempotent(&self) -> Result<()> {
        match self.idempotence_violation() {
            Some(e) => Err(e),
            None => Ok(()),
        }
    }

    /// τ(a)_j = a_{σ(j)}, renormalized to denominator n_j.
    pub fn apply(&self, alg: &ProductMvAlgebra, a: &MvElement) -> Result<MvElement> {
        self.check_divisibility(alg.signature())?;
        alg.check(a)?;
        Ok(copy_coordinates(alg, alg, &self.sigma, a))
    }

    /// The extensional form over `alg.to_table()` element indices.
    pub fn to_table(&self, alg: &ProductMvAlgebra) -> Result<UnaryTable> {
        self.check_divisibility(alg.signature())?;
        let cap = alg.cardinality().unwrap_or(usize::MAX);
        if cap > crate::table::DEFAULT_TABLE_CAP {
            return Err(Error::TooLarge {
                what: "operator table",
                size: cap,
                cap: crate::table::DEFAULT_TABLE_CAP,
            });
        }
        Ok(UnaryTable(
            alg.elements()
                .map(|a| alg.index_of(&copy_coordinates(alg, alg, &self.sigma, &a)))
                .collect(),
        ))
    }

    /// Ker(τ) = {a : a_i = 0 for every i in the image of σ}.
    pub fn kernel(&self) -> Ideal {
        Ideal::kernel_of(self.sigma.iter().copied())
    }

    /// τ(A), by sweeping the algebra.
    pub fn image(&self, alg: &ProductMvAlgebra) -> Result<BTreeSet<MvElement>> {
        self.check_divisibility(alg.signature())?;
        Ok(alg
            .elements()
            .map(|a| copy_coordinates(alg, alg, &self.sigma, &a))
            .collect())
    }
}

impl TryFrom<Vec<usize>> for OperatorSpec {
    type Error = Error;

    fn try_from(sigma: Vec<usize>) -> Result<Self> {
        Self::new(sigma)
    }
}

impl From<OperatorSpec> for Vec<usize> {
    fn from(spec: OperatorSpec) -> Self {
        spec.sigma
    }
}

pub(crate) fn check_self_map(map: &[usize]) -> Result<()> {
    if map.is_empty() {
        return Err(Error::EmptyMap);
    }
    check_map_range(map, map.len())
}

pub(crate) fn check_map_range(map: &[usize], bound: usize) -> Result<()> {
    match map.iter().position(|&t| t >= bound) {
        Some(index) => Err(Error::MapOutOfRange {
            index,
            target: map[index],
            bound,
        }),
        None => Ok(()),
    }
}

pub(crate) fn check_divisibility(domain: &ChainSignature, codomain: &ChainSignature, source: &[usize]) -> Result<()> {
    for (j, &s) in source.iter().enumerate() {
        let (order, source_order) = (codomain.order(j), domain.order(s));
        if order % source_order != 0 {
            return Err(Error::Divisibility {
                coordinate: j,
                order,
                source_coordinate: s,
                source_order,
            });
        }
    }
    Ok(())
}

/// out_j = a_{source(j)} rescaled from denominator n_{source(j)} to n′_j.
/// Assumes divisibility has been checked.
pub(crate) fn copy_coordinates(
    domain: &ProductMvAlgebra,
    codomain: &ProductMvAlgebra,
    source: &[usize],
    a: &MvElement,
) -> MvElement {
    MvElement::new(
        source
            .iter()
            .enumerate()
            .map(|(j, &s)| a.get(s) * (codomain.order(j) / domain.order(s)))
            .collect(),
    )
}

/// A product algebra together with a state-morphism-operator.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StateAlgebra {
    algebra: ProductMvAlgebra,
    tau: OperatorSpec,
}

impl StateAlgebra {
    pub fn new(algebra: ProductMvAlgebra, tau: OperatorSpec) -> Result<Self> {
        tau.check_divisibility(algebra.signature())?;
        tau.require_idempotent()?;
        Ok(Self { algebra, tau })
    }

    pub fn from_parts(orders: Vec<u32>, sigma: Vec<usize>) -> Result<Self> {
        let algebra = ProductMvAlgebra::from_orders(orders)?;
        Self::new(algebra, OperatorSpec::new(sigma)?)
    }

    pub fn algebra(&self) -> &ProductMvAlgebra {
        &self.algebra
    }

    pub fn tau(&self) -> &OperatorSpec {
        &self.tau
    }

    pub fn apply_tau(&self, a: &MvElement) -> Result<MvElement> {
        self.tau.apply(&self.algebra, a)
    }
}

/// A unary operator given by its value on every element index.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct UnaryTable(Vec<usize>);

impl UnaryTable {
    pub fn new(alg: &TableMvAlgebra, values: Vec<usize>) -> Result<Self> {
        if values.len() != alg.size() {
            return Err(Error::MalformedTable(format!(
                "operator has {} entries, carrier has {}",
                values.len(),
                alg.size()
            )));
        }
        check_map_range(&values, alg.size())?;
        Ok(Self(values))
    }

    pub fn identity(alg: &TableMvAlgebra) -> Self {
        Self(alg.elements().collect())
    }

    pub fn values(&self) -> &[usize] {
        &self.0
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.0[x]
    }

    pub fn kernel(&self, alg: &TableMvAlgebra) -> Ideal {
        Ideal::Members(alg.elements().filter(|&x| self.apply(x) == alg.zero()).collect())
    }

    pub fn image(&self) -> BTreeSet<usize> {
        self.0.iter().copied().collect()
    }
}

/// Axioms (i)–(iv) and, separately, the laws every state-operator satisfies.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StateOperatorReport {
    pub axioms: LawReport,
    pub derived: LawReport,
}

impl StateOperatorReport {
    pub fn passed(&self) -> bool {
        self.axioms.passed() && self.derived.passed()
    }
}

fn pairs(m: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..m).flat_map(move |x| (0..m).map(move |y| (x, y)))
}

fn state_axioms(alg: &TableMvAlgebra, t: &UnaryTable) -> LawReport {
    let m = alg.size();
    let mut r = LawReport::new();
    r.push(sweep("τ(0)=0", [alg.zero()], |z| {
        (t.apply(z) != z).then(|| format!("τ(0)={}", t.apply(z)))
    }));
    r.push(sweep("τ(x*)=τ(x)*", alg.elements(), |x| {
        (t.apply(alg.star(x)) != alg.star(t.apply(x))).then(|| format!("x={x}"))
    }));
    r.push(sweep("τ(x⊕y)=τ(x)⊕τ(y⊙(x⊙y)*)", pairs(m), |(x, y)| {
        let lhs = t.apply(alg.oplus(x, y));
        let rhs = alg.oplus(t.apply(x), t.apply(alg.odot(y, alg.star(alg.odot(x, y)))));
        (lhs != rhs).then(|| format!("x={x}, y={y}"))
    }));
    r.push(sweep("τ(τ(x)⊕τ(y))=τ(x)⊕τ(y)", pairs(m), |(x, y)| {
        let s = alg.oplus(t.apply(x), t.apply(y));
        (t.apply(s) != s).then(|| format!("x={x}, y={y}"))
    }));
    r
}

fn derived_laws(alg: &TableMvAlgebra, t: &UnaryTable) -> LawReport {
    let m = alg.size();
    let image = t.image();
    let mut r = LawReport::new();
    r.push(sweep("τ(τ(x))=τ(x)", alg.elements(), |x| {
        (t.apply(t.apply(x)) != t.apply(x)).then(|| format!("x={x}"))
    }));
    r.push(sweep("τ(1)=1", [alg.one()], |one| {
        (t.apply(one) != one).then(|| format!("τ(1)={}", t.apply(one)))
    }));
    r.push(sweep("x≤y ⇒ τ(x)≤τ(y)", pairs(m), |(x, y)| {
        (alg.leq(x, y) && !alg.leq(t.apply(x), t.apply(y))).then(|| format!("x={x}, y={y}"))
    }));
    r.push(sweep("τ(x⊕y)≤τ(x)⊕τ(y)", pairs(m), |(x, y)| {
        (!alg.leq(t.apply(alg.oplus(x, y)), alg.oplus(t.apply(x), t.apply(y)))).then(|| format!("x={x}, y={y}"))
    }));
    r.push(sweep(
        "τ(A) closed under ⊕ and *",
        image.iter().flat_map(|&x| image.iter().map(move |&y| (x, y))),
        |(x, y)| (!image.contains(&alg.oplus(x, y)) || !image.contains(&alg.star(x))).then(|| format!("x={x}, y={y}")),
    ));
    r
}

pub fn check_state_operator_axioms(alg: &TableMvAlgebra, t: &UnaryTable) -> StateOperatorReport {
    StateOperatorReport {
        axioms: state_axioms(alg, t),
        derived: derived_laws(alg, t),
    }
}

/// Preservation of 0, *, ⊕ together with idempotence.
pub fn state_morphism_report(alg: &TableMvAlgebra, t: &UnaryTable) -> LawReport {
    let mut r = LawReport::new();
    r.push(sweep("τ(0)=0", [alg.zero()], |z| {
        (t.apply(z) != z).then(|| format!("τ(0)={}", t.apply(z)))
    }));
    r.push(sweep("τ(x*)=τ(x)*", alg.elements(), |x| {
        (t.apply(alg.star(x)) != alg.star(t.apply(x))).then(|| format!("x={x}"))
    }));
    r.push(sweep("τ(x⊕y)=τ(x)⊕τ(y)", pairs(alg.size()), |(x, y)| {
        (t.apply(alg.oplus(x, y)) != alg.oplus(t.apply(x), t.apply(y))).then(|| format!("x={x}, y={y}"))
    }));
    r.push(sweep("τ∘τ=τ", alg.elements(), |x| {
        (t.apply(t.apply(x)) != t.apply(x)).then(|| format!("x={x}"))
    }));
    r
}

pub fn check_state_morphism(alg: &TableMvAlgebra, t: &UnaryTable) -> bool {
    state_morphism_report(alg, t).passed()
}

/// Every state-morphism-operator of the product algebra, in lexicographic
/// order of σ: a set F of fixed coordinates, every other coordinate sent into
/// F subject to divisibility.
pub fn enumerate_state_morphism_operators(sig: &ChainSignature) -> Vec<OperatorSpec> {
    let k = sig.len();
    let mut out = Vec::new();
    // fixed-point sets as bitmasks; k is small in every practical use
    for fixed in 1u64..(1u64 << k) {
        let fixed_points: Vec<usize> = (0..k).filter(|&j| fixed & (1 << j) != 0).collect();
        let options: Vec<Vec<usize>> = (0..k)
            .map(|j| {
                if fixed & (1 << j) != 0 {
                    vec![j]
                } else {
                    fixed_points
                        .iter()
                        .copied()
                        .filter(|&i| sig.order(j).is_multiple_of(sig.order(i)))
                        .collect()
                }
            })
            .collect();
        if options.iter().any(Vec::is_empty) {
            continue;
        }
        for sigma in cartesian(&options) {
            out.push(OperatorSpec { sigma });
        }
    }
    out.sort();
    out
}

/// All vectors picking one entry from each option list, in lexicographic
/// order of positions.
pub(crate) fn cartesian(options: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::with_capacity(options.len())];
    for opts in options {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                opts.iter().map(move |&o| {
                    let mut v = prefix.clone();
                    v.push(o);
                    v
                })
            })
            .collect();
    }
    out
}

fn is_state_operator_fast(alg: &TableMvAlgebra, t: &[usize]) -> bool {
    let m = alg.size();
    if t[alg.zero()] != alg.zero() {
        return false;
    }
    if (0..m).any(|x| t[alg.star(x)] != alg.star(t[x])) {
        return false;
    }
    for x in 0..m {
        for y in 0..m {
            let lhs = t[alg.oplus(x, y)];
            let rhs = alg.oplus(t[x], t[alg.odot(y, alg.star(alg.odot(x, y)))]);
            if lhs != rhs {
                return false;
            }
            let s = alg.oplus(t[x], t[y]);
            if t[s] != s {
                return false;
            }
        }
    }
    true
}

/// Every unary table satisfying axioms (i)–(iv), found by sweeping all m^m
/// tables. Output is in lexicographic order of the value vector.
pub fn enumerate_state_operators_table(alg: &TableMvAlgebra, cap: usize) -> Result<Vec<UnaryTable>> {
    let m = alg.size();
    if m > cap {
        return Err(Error::TooLarge {
            what: "table enumeration carrier",
            size: m,
            cap,
        });
    }
    // split on the two leading entries; each chunk walks the remaining
    // m^(m-2) tables in odometer order
    let lead = m.min(2);
    let chunks = m.pow(lead as u32);
    let found: Vec<Vec<UnaryTable>> = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut t = vec![0usize; m];
            let mut c = chunk;
            for pos in (0..lead).rev() {
                t[pos] = c % m;
                c /= m;
            }
            let mut hits = Vec::new();
            loop {
                if is_state_operator_fast(alg, &t) {
                    hits.push(UnaryTable(t.clone()));
                }
                let mut pos = m;
                let mut done = true;
                while pos > lead {
                    pos -= 1;
                    t[pos] += 1;
                    if t[pos] < m {
                        done = false;
                        break;
                    }
                    t[pos] = 0;
                }
                if done {
                    break;
                }
            }
            hits
        })
        .collect();
    Ok(found.into_iter().flatten().collect())
}

/// Ker(τ) and τ(A) of a table operator.
pub fn kernel_and_image(alg: &TableMvAlgebra, t: &UnaryTable) -> (Ideal, BTreeSet<usize>) {
    (t.kernel(alg), t.image())
}

/// Whether the kernel is an ideal of the table algebra; kept as a separate
/// check so callers can report it.
pub fn kernel_is_ideal(alg: &TableMvAlgebra, t: &UnaryTable) -> LawCheck {
    match t.kernel(alg) {
        Ideal::Members(set) if alg.is_ideal(&set) => LawCheck::holds("Ker(τ) is an ideal", 1),
        _ => LawCheck::fails("Ker(τ) is an ideal", "kernel not down-closed or not ⊕-closed"),
    }
}
