//! States of a finite MV-algebra and the affine representation M(A).
//!
//! The state space of S_{n₁} × … × S_{n_k} is the standard simplex Δ_{k−1};
//! its vertices are the coordinate evaluations e_j(a) = a_j / n_j, which are
//! exactly the extremal states. A state is stored by its barycentric weights
//! over these vertices, so s(a) = Σ_j w_j · a_j / n_j. Affine functions on the
//! simplex are stored by their vertex values.

use std::collections::{BTreeSet, HashSet};

use num_traits::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mv::{Ideal, MvElement, ProductMvAlgebra};
use crate::rational::{common_denominator, format_rational, serde_str, Rational};
use crate::report::{par_sweep, sweep, LawCheck, LawReport};
use crate::state_ops::{cartesian, check_map_range, OperatorSpec, StateAlgebra};

/// Above this many element pairs, pair laws are checked on a seeded sample.
pub const PAIR_SWEEP_CAP: usize = 1 << 22;

/// Pairs drawn when [`PAIR_SWEEP_CAP`] is exceeded.
pub const PAIR_SAMPLE_SIZE: usize = 1 << 14;

fn show(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(format_rational).collect();
    format!("({})", parts.join(","))
}

/// A point of Δ_{k−1}, i.e. a state in barycentric coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "BarycentricRepr", into = "BarycentricRepr")]
pub struct Barycentric {
    weights: Vec<Rational>,
}

pub type RationalState = Barycentric;
pub type SimplexPoint = Barycentric;

#[derive(Serialize, Deserialize)]
struct BarycentricRepr(#[serde(with = "serde_str::vec")] Vec<Rational>);

impl TryFrom<BarycentricRepr> for Barycentric {
    type Error = Error;

    fn try_from(r: BarycentricRepr) -> Result<Self> {
        Self::new(r.0)
    }
}

impl From<Barycentric> for BarycentricRepr {
    fn from(b: Barycentric) -> Self {
        BarycentricRepr(b.weights)
    }
}

impl Barycentric {
    pub fn new(weights: Vec<Rational>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidState("no weights".into()));
        }
        if let Some(j) = weights.iter().position(|w| *w < Rational::zero()) {
            return Err(Error::InvalidState(format!(
                "weight {j} is negative ({})",
                format_rational(&weights[j])
            )));
        }
        let total: Rational = weights.iter().sum();
        if total != Rational::one() {
            return Err(Error::InvalidState(format!(
                "weights sum to {}",
                format_rational(&total)
            )));
        }
        Ok(Self { weights })
    }

    pub fn vertex(k: usize, j: usize) -> Self {
        let mut weights = vec![Rational::zero(); k];
        weights[j] = Rational::one();
        Self { weights }
    }

    pub fn barycenter(k: usize) -> Self {
        Self {
            weights: vec![Rational::new(1, k as i64); k],
        }
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    /// λ·self + (1−λ)·other.
    pub fn mix(&self, lambda: Rational, other: &Barycentric) -> Result<Barycentric> {
        self.require_dim(other.dim())?;
        if lambda < Rational::zero() || lambda > Rational::one() {
            return Err(Error::InvalidState(format!(
                "mixing coefficient {} outside [0,1]",
                format_rational(&lambda)
            )));
        }
        let mu = Rational::one() - lambda;
        Ok(Self {
            weights: self
                .weights
                .iter()
                .zip(&other.weights)
                .map(|(a, b)| lambda * a + mu * b)
                .collect(),
        })
    }

    /// The vertex this point sits on, if any.
    pub fn is_vertex(&self) -> Option<usize> {
        self.weights.iter().position(|w| w.is_one())
    }

    pub fn is_extremal(&self) -> bool {
        self.is_vertex().is_some()
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&j| !self.weights[j].is_zero()).collect()
    }

    fn require_dim(&self, k: usize) -> Result<()> {
        if self.dim() != k {
            return Err(Error::SignatureMismatch {
                expected: self.dim(),
                found: k,
            });
        }
        Ok(())
    }

    /// s(a) = Σ_j w_j · a_j / n_j.
    pub fn evaluate(&self, alg: &ProductMvAlgebra, a: &MvElement) -> Result<Rational> {
        self.require_dim(alg.dim())?;
        alg.check(a)?;
        Ok((0..self.dim()).map(|j| self.weights[j] * alg.value(a, j)).sum())
    }

    /// Ker(s) = {a : a_j = 0 on the support of s}.
    pub fn kernel(&self) -> Ideal {
        Ideal::kernel_of(self.support())
    }

    /// The state as a rational convex combination of extremal states.
    pub fn decomposition(&self) -> Vec<(Rational, ExtremalState)> {
        self.support()
            .into_iter()
            .map(|j| (self.weights[j], ExtremalState { coordinate: j }))
            .collect()
    }

    /// Every value s(a) is an integer multiple of 1 / this.
    pub fn value_denominator(&self, alg: &ProductMvAlgebra) -> i64 {
        let scaled: Vec<Rational> = self
            .support()
            .into_iter()
            .map(|j| self.weights[j] / Rational::from_integer(alg.order(j) as i64))
            .collect();
        common_denominator(&scaled)
    }

    /// Image under the affine map sending e_j to e_{map(j)}.
    pub fn push_forward(&self, map: &[usize], target_dim: usize) -> Barycentric {
        let mut weights = vec![Rational::zero(); target_dim];
        for (j, &t) in map.iter().enumerate() {
            weights[t] += self.weights[j];
        }
        Barycentric { weights }
    }
}

impl std::fmt::Display for Barycentric {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&show(&self.weights))
    }
}

/// Random point of Δ_{k−1} with weights c_j / Σc, c_j drawn from
/// `lo..=max_weight` (lo = 1 for interior points).
pub fn random_state(rng: &mut impl Rng, k: usize, max_weight: i64, interior: bool) -> Barycentric {
    let lo = i64::from(interior);
    let mut c: Vec<i64> = (0..k).map(|_| rng.gen_range(lo..=max_weight.max(1))).collect();
    if c.iter().all(|&x| x == 0) {
        c[rng.gen_range(0..k)] = 1;
    }
    let total: i64 = c.iter().sum();
    Barycentric {
        weights: c.into_iter().map(|x| Rational::new(x, total)).collect(),
    }
}

/// Random vertex-value vector in [0,1]^k with denominators up to `max_den`.
pub fn random_function(rng: &mut impl Rng, k: usize, max_den: i64) -> AffineFunctionElement {
    AffineFunctionElement {
        values: (0..k)
            .map(|_| {
                let d = rng.gen_range(1..=max_den.max(1));
                Rational::new(rng.gen_range(0..=d), d)
            })
            .collect(),
    }
}

/// The coordinate evaluation a ↦ a_j / n_j.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ExtremalState {
    pub coordinate: usize,
}

impl ExtremalState {
    pub fn evaluate(&self, alg: &ProductMvAlgebra, a: &MvElement) -> Rational {
        alg.value(a, self.coordinate)
    }

    /// s(A) = S_{n_j}.
    pub fn value_set(&self, alg: &ProductMvAlgebra) -> BTreeSet<Rational> {
        let n = alg.order(self.coordinate) as i64;
        (0..=n).map(|i| Rational::new(i, n)).collect()
    }

    pub fn to_barycentric(&self, k: usize) -> Barycentric {
        Barycentric::vertex(k, self.coordinate)
    }
}

pub fn extremal_states(alg: &ProductMvAlgebra) -> Vec<ExtremalState> {
    (0..alg.dim()).map(|coordinate| ExtremalState { coordinate }).collect()
}

fn collect_elements(alg: &ProductMvAlgebra) -> Vec<MvElement> {
    alg.elements().collect()
}

/// Element pairs to sweep: all of them, or a seeded sample above the cap.
fn pair_family<T: Clone>(items: &[T], seed: u64) -> Vec<(T, T)> {
    let m = items.len();
    if m.saturating_mul(m) <= PAIR_SWEEP_CAP {
        items
            .iter()
            .flat_map(|a| items.iter().map(move |b| (a.clone(), b.clone())))
            .collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..PAIR_SAMPLE_SIZE)
            .map(|_| (items[rng.gen_range(0..m)].clone(), items[rng.gen_range(0..m)].clone()))
            .collect()
    }
}

/// Each coordinate evaluation is a state-morphism with maximal kernel and
/// value set S_{n_j}, by sweeping the algebra.
pub fn check_extremal_states(alg: &ProductMvAlgebra) -> LawReport {
    let elements = collect_elements(alg);
    let pairs = pair_family(&elements, 0);
    let maximal: Vec<BTreeSet<usize>> = alg.maximal_ideals().iter().map(|i| i.members_in(alg)).collect();
    let one = alg.one();
    let mut r = LawReport::new();
    for e in extremal_states(alg) {
        let j = e.coordinate;
        r.push(sweep(format!("e_{j}(1)=1"), [&one], |o| {
            (!e.evaluate(alg, o).is_one()).then(|| "e(1)≠1".into())
        }));
        r.push(par_sweep(
            format!("e_{j}(a⊕b)=min(e_{j}(a)+e_{j}(b),1)"),
            &pairs,
            |(a, b)| {
                let lhs = e.evaluate(alg, &alg.oplus(a, b).expect("valid element"));
                let rhs = (e.evaluate(alg, a) + e.evaluate(alg, b)).min(Rational::one());
                (lhs != rhs).then(|| format!("a={a}, b={b}"))
            },
        ));
        let kernel: BTreeSet<usize> = elements
            .iter()
            .enumerate()
            .filter(|(_, a)| e.evaluate(alg, a).is_zero())
            .map(|(i, _)| i)
            .collect();
        r.push(if maximal.contains(&kernel) {
            LawCheck::holds(format!("Ker(e_{j}) maximal"), elements.len() as u64)
        } else {
            LawCheck::fails(
                format!("Ker(e_{j}) maximal"),
                format!("kernel of size {}", kernel.len()),
            )
        });
        let values: BTreeSet<Rational> = elements.iter().map(|a| e.evaluate(alg, a)).collect();
        r.push(if values == e.value_set(alg) {
            LawCheck::holds(format!("e_{j}(A)=S_n"), elements.len() as u64)
        } else {
            LawCheck::fails(format!("e_{j}(A)=S_n"), format!("{} distinct values", values.len()))
        });
    }
    r
}

/// s(1) = 1 and s(a⊕b) = s(a) + s(b) whenever a⊙b = 0.
pub fn check_state(alg: &ProductMvAlgebra, s: &Barycentric) -> Result<LawReport> {
    s.require_dim(alg.dim())?;
    let elements = collect_elements(alg);
    let pairs = pair_family(&elements, 1);
    let mut r = LawReport::new();
    r.push(sweep("s(1)=1", [alg.one()], |o| {
        (!s.evaluate(alg, &o).expect("valid").is_one()).then(|| "s(1)≠1".into())
    }));
    r.push(par_sweep("a⊙b=0 ⇒ s(a⊕b)=s(a)+s(b)", &pairs, |(a, b)| {
        if alg.odot(a, b).expect("valid") != alg.zero() {
            return None;
        }
        let lhs = s.evaluate(alg, &alg.oplus(a, b).expect("valid")).expect("valid");
        let rhs = s.evaluate(alg, a).expect("valid") + s.evaluate(alg, b).expect("valid");
        (lhs != rhs).then(|| format!("a={a}, b={b}"))
    }));
    Ok(r)
}

/// All values s(a), by sweeping the algebra.
pub fn state_value_set(alg: &ProductMvAlgebra, s: &Barycentric) -> Result<BTreeSet<Rational>> {
    s.require_dim(alg.dim())?;
    Ok(alg.elements().map(|a| s.evaluate(alg, &a).expect("valid")).collect())
}

/// A state is extremal iff it is a vertex iff its kernel is a maximal ideal.
pub fn kernel_is_maximal(alg: &ProductMvAlgebra, s: &Barycentric) -> Result<bool> {
    let kernel: BTreeSet<usize> = alg
        .elements()
        .enumerate()
        .filter(|(_, a)| s.evaluate(alg, a).map(|v| v.is_zero()).unwrap_or(false))
        .map(|(i, _)| i)
        .collect();
    s.require_dim(alg.dim())?;
    Ok(alg.maximal_ideals().iter().any(|m| m.members_in(alg) == kernel))
}

/// An affine function on Δ_{k−1}, stored by its values at the vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AffineFunctionElement {
    #[serde(with = "serde_str::vec")]
    pub values: Vec<Rational>,
}

impl AffineFunctionElement {
    pub fn new(values: Vec<Rational>) -> Self {
        Self { values }
    }

    /// â(s) = s(a), i.e. vertex values a_j / n_j.
    pub fn hat(alg: &ProductMvAlgebra, a: &MvElement) -> Result<Self> {
        alg.check(a)?;
        Ok(Self { values: alg.values(a) })
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// f(s) = Σ_j w_j f(e_j).
    pub fn evaluate_at(&self, s: &Barycentric) -> Result<Rational> {
        s.require_dim(self.dim())?;
        Ok(self.values.iter().zip(s.weights()).map(|(f, w)| f * w).sum())
    }

    pub fn in_unit_cube(&self) -> bool {
        self.values
            .iter()
            .all(|v| *v >= Rational::zero() && *v <= Rational::one())
    }
}

impl std::fmt::Display for AffineFunctionElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&show(&self.values))
    }
}

/// Pointwise Łukasiewicz operations on vertex values.
pub(crate) mod pointwise {
    use super::AffineFunctionElement as F;
    use crate::rational::Rational;
    use num_traits::{One, Zero};

    pub fn oplus(f: &F, g: &F) -> F {
        F::new(
            f.values
                .iter()
                .zip(&g.values)
                .map(|(a, b)| (a + b).min(Rational::one()))
                .collect(),
        )
    }

    pub fn star(f: &F) -> F {
        F::new(f.values.iter().map(|a| Rational::one() - a).collect())
    }

    pub fn odot(f: &F, g: &F) -> F {
        star(&oplus(&star(f), &star(g)))
    }

    pub fn join(f: &F, g: &F) -> F {
        F::new(f.values.iter().zip(&g.values).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn meet(f: &F, g: &F) -> F {
        F::new(f.values.iter().zip(&g.values).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn constant(k: usize, c: Rational) -> F {
        F::new(vec![c; k])
    }

    pub fn zero(k: usize) -> F {
        constant(k, Rational::zero())
    }

    pub fn one(k: usize) -> F {
        constant(k, Rational::one())
    }
}

/// The affine map Δ_{m−1} → Δ_{k−1} sending e_j to e_{vertex_images[j]}.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AffineMap {
    vertex_images: Vec<usize>,
    target_dim: usize,
}

impl AffineMap {
    pub fn new(vertex_images: Vec<usize>, target_dim: usize) -> Result<Self> {
        if vertex_images.is_empty() || target_dim == 0 {
            return Err(Error::EmptyMap);
        }
        check_map_range(&vertex_images, target_dim)?;
        Ok(Self {
            vertex_images,
            target_dim,
        })
    }

    pub fn identity(k: usize) -> Self {
        Self {
            vertex_images: (0..k).collect(),
            target_dim: k,
        }
    }

    /// Reads an affine map off its values at the vertices, which must be
    /// vertices again.
    pub fn from_vertex_values(images: &[Barycentric], target_dim: usize) -> Result<Self> {
        let vertex_images = images
            .iter()
            .enumerate()
            .map(|(vertex, p)| {
                if p.dim() != target_dim {
                    return Err(Error::SignatureMismatch {
                        expected: target_dim,
                        found: p.dim(),
                    });
                }
                p.is_vertex().ok_or(Error::NotVertexPreserving { vertex })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(vertex_images, target_dim)
    }

    pub fn source_dim(&self) -> usize {
        self.vertex_images.len()
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    pub fn vertex_images(&self) -> &[usize] {
        &self.vertex_images
    }

    pub fn apply(&self, s: &Barycentric) -> Result<Barycentric> {
        s.require_dim(self.source_dim())?;
        Ok(s.push_forward(&self.vertex_images, self.target_dim))
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &AffineMap) -> Result<AffineMap> {
        if first.target_dim != self.source_dim() {
            return Err(Error::SignatureMismatch {
                expected: self.source_dim(),
                found: first.target_dim,
            });
        }
        Ok(AffineMap {
            vertex_images: first.vertex_images.iter().map(|&v| self.vertex_images[v]).collect(),
            target_dim: self.target_dim,
        })
    }
}

/// An idempotent affine self-map of Δ_{k−1} preserving the vertex set.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct AffineSelfMap {
    sigma: OperatorSpec,
}

impl AffineSelfMap {
    pub fn new(vertex_images: Vec<usize>) -> Result<Self> {
        let sigma = OperatorSpec::new(vertex_images)?;
        sigma.require_idempotent()?;
        Ok(Self { sigma })
    }

    pub fn identity(k: usize) -> Self {
        Self {
            sigma: OperatorSpec::identity(k),
        }
    }

    pub fn dim(&self) -> usize {
        self.sigma.dim()
    }

    pub fn vertex_images(&self) -> &[usize] {
        self.sigma.sigma()
    }

    pub fn as_affine_map(&self) -> AffineMap {
        AffineMap {
            vertex_images: self.vertex_images().to_vec(),
            target_dim: self.dim(),
        }
    }

    pub fn apply(&self, s: &Barycentric) -> Result<Barycentric> {
        s.require_dim(self.dim())?;
        Ok(s.push_forward(self.vertex_images(), self.dim()))
    }
}

impl TryFrom<Vec<usize>> for AffineSelfMap {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<AffineSelfMap> for Vec<usize> {
    fn from(g: AffineSelfMap) -> Self {
        g.sigma.into()
    }
}

/// s∘τ in barycentric form, read off by evaluating on the coordinate units
/// δ_i (the element that is 1 at i and 0 elsewhere).
pub fn pull_back_state(obj: &StateAlgebra, s: &Barycentric) -> Result<Barycentric> {
    let alg = obj.algebra();
    let weights = (0..alg.dim())
        .map(|i| s.evaluate(alg, &obj.apply_tau(&alg.unit(i))?))
        .collect::<Result<Vec<_>>>()?;
    Barycentric::new(weights)
}

/// g(s) = s∘τ, assembled from its action on the vertices.
pub fn induced_affine_g(obj: &StateAlgebra) -> Result<AffineSelfMap> {
    let k = obj.algebra().dim();
    let images = (0..k)
        .map(|j| pull_back_state(obj, &Barycentric::vertex(k, j)))
        .collect::<Result<Vec<_>>>()?;
    let map = AffineMap::from_vertex_values(&images, k)?;
    AffineSelfMap::new(map.vertex_images)
}

fn sample_states(k: usize, count: usize, seed: u64) -> Vec<Barycentric> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_state(&mut rng, k, 6, false)).collect()
}

/// g(s) = s∘τ on sampled states against every element, affineness on sampled
/// mixtures, idempotence and vertex preservation, and the value condition
/// g(e)(a) ∈ e(A) for every extremal e.
pub fn check_induced_g(obj: &StateAlgebra, samples: usize, seed: u64) -> Result<LawReport> {
    let alg = obj.algebra();
    let k = alg.dim();
    let g = induced_affine_g(obj)?;
    let elements = collect_elements(alg);
    let mut states: Vec<Barycentric> = (0..k).map(|j| Barycentric::vertex(k, j)).collect();
    states.extend(sample_states(k, samples, seed));
    let mut r = LawReport::new();
    r.push(sweep("g(e_j)=e_{σ(j)}", 0..k, |j| {
        let image = g.apply(&Barycentric::vertex(k, j)).expect("dims");
        (image.is_vertex() != Some(obj.tau().source(j))).then(|| format!("j={j}"))
    }));
    r.push(sweep("g∘g=g", states.iter(), |s| {
        let once = g.apply(s).expect("dims");
        (g.apply(&once).expect("dims") != once).then(|| format!("s={s}"))
    }));
    r.push(par_sweep("g(s)(a)=s(τ(a))", &states, |s| {
        let gs = g.apply(s).expect("dims");
        elements.iter().find_map(|a| {
            let lhs = gs.evaluate(alg, a).expect("valid");
            let rhs = s.evaluate(alg, &obj.apply_tau(a).expect("valid")).expect("valid");
            (lhs != rhs).then(|| format!("s={s}, a={a}"))
        })
    }));
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9);
    let mixes: Vec<(Barycentric, Barycentric, Rational)> = (0..samples)
        .map(|_| {
            let d = rng.gen_range(1..=8);
            (
                random_state(&mut rng, k, 6, false),
                random_state(&mut rng, k, 6, false),
                Rational::new(rng.gen_range(0..=d), d),
            )
        })
        .collect();
    r.push(sweep(
        "g(λs+(1−λ)t)=λg(s)+(1−λ)g(t)",
        mixes.iter(),
        |(s, t, l)| {
            let lhs = g.apply(&s.mix(*l, t).expect("dims")).expect("dims");
            let rhs = g
                .apply(s)
                .expect("dims")
                .mix(*l, &g.apply(t).expect("dims"))
                .expect("dims");
            (lhs != rhs).then(|| format!("s={s}, t={t}, λ={}", format_rational(l)))
        },
    ));
    r.push(sweep("g(e)(a)∈e(A) for extremal e", extremal_states(alg), |e| {
        let values = e.value_set(alg);
        let ge = g.apply(&e.to_barycentric(k)).expect("dims");
        elements
            .iter()
            .find(|a| !values.contains(&ge.evaluate(alg, a).expect("valid")))
            .map(|a| format!("e_{}, a={a}", e.coordinate))
    }));
    Ok(r)
}

/// M(A): vertex-value vectors whose j-th value lies in S_{n_j}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MAlgebra {
    orders: Vec<u32>,
}

pub fn build_m_of_a(alg: &ProductMvAlgebra) -> MAlgebra {
    MAlgebra {
        orders: alg.signature().orders().to_vec(),
    }
}

impl MAlgebra {
    pub fn dim(&self) -> usize {
        self.orders.len()
    }

    /// f(e_j) ∈ e_j(A) = S_{n_j} for every vertex.
    pub fn contains(&self, f: &AffineFunctionElement) -> bool {
        f.dim() == self.dim()
            && f.in_unit_cube()
            && f.values
                .iter()
                .zip(&self.orders)
                .all(|(v, &n)| (v * Rational::from_integer(n as i64)).is_integer())
    }

    pub fn cardinality(&self) -> Option<usize> {
        self.orders
            .iter()
            .try_fold(1usize, |acc, &n| acc.checked_mul(n as usize + 1))
    }

    /// Every element, built from the value sets directly.
    pub fn elements(&self) -> Vec<AffineFunctionElement> {
        let options: Vec<Vec<usize>> = self.orders.iter().map(|&n| (0..=n as usize).collect()).collect();
        cartesian(&options)
            .into_iter()
            .map(|nums| {
                AffineFunctionElement::new(
                    nums.iter()
                        .zip(&self.orders)
                        .map(|(&i, &n)| Rational::new(i as i64, n as i64))
                        .collect(),
                )
            })
            .collect()
    }

    pub fn oplus(&self, f: &AffineFunctionElement, g: &AffineFunctionElement) -> AffineFunctionElement {
        pointwise::oplus(f, g)
    }

    pub fn star(&self, f: &AffineFunctionElement) -> AffineFunctionElement {
        pointwise::star(f)
    }

    pub fn zero(&self) -> AffineFunctionElement {
        pointwise::zero(self.dim())
    }

    pub fn one(&self) -> AffineFunctionElement {
        pointwise::one(self.dim())
    }
}

/// hat: A → M(A) is a bijective MV-homomorphism.
pub fn verify_representation(alg: &ProductMvAlgebra) -> LawReport {
    let m = build_m_of_a(alg);
    let elements = collect_elements(alg);
    let hats: Vec<AffineFunctionElement> = elements
        .iter()
        .map(|a| AffineFunctionElement::hat(alg, a).expect("valid"))
        .collect();
    let m_elements = m.elements();
    let mut r = LawReport::new();
    r.push(match m.cardinality() {
        Some(c) if c == elements.len() && c == m_elements.len() => LawCheck::holds("|M(A)|=|A|", 1),
        c => LawCheck::fails("|M(A)|=|A|", format!("|M(A)|={c:?}, |A|={}", elements.len())),
    });
    r.push(par_sweep("hat(a)∈M(A)", &hats, |f| {
        (!m.contains(f)).then(|| format!("hat={f}"))
    }));
    let distinct: HashSet<&AffineFunctionElement> = hats.iter().collect();
    r.push(if distinct.len() == hats.len() {
        LawCheck::holds("hat injective", hats.len() as u64)
    } else {
        LawCheck::fails(
            "hat injective",
            format!("{} images of {} elements", distinct.len(), hats.len()),
        )
    });
    r.push(par_sweep("hat surjective", &m_elements, |f| {
        (!distinct.contains(f)).then(|| format!("f={f} not hit"))
    }));
    r.push(sweep("hat(0)=0", [alg.zero()], |z| {
        (AffineFunctionElement::hat(alg, &z).expect("valid") != m.zero()).then(|| "hat(0)≠0".into())
    }));
    r.push(par_sweep("hat(a*)=hat(a)*", &elements, |a| {
        let lhs = AffineFunctionElement::hat(alg, &alg.star(a).expect("valid")).expect("valid");
        (lhs != m.star(&AffineFunctionElement::hat(alg, a).expect("valid"))).then(|| format!("a={a}"))
    }));
    let indexed: Vec<usize> = (0..elements.len()).collect();
    let pairs = pair_family(&indexed, 2);
    r.push(par_sweep("hat(a⊕b)=hat(a)⊕hat(b)", &pairs, |&(i, j)| {
        let (a, b) = (&elements[i], &elements[j]);
        let lhs = AffineFunctionElement::hat(alg, &alg.oplus(a, b).expect("valid")).expect("valid");
        (lhs != m.oplus(&hats[i], &hats[j])).then(|| format!("a={a}, b={b}"))
    }));
    r
}

/// τ_g(f) = f∘g, read off at the vertices: τ_g(f)(e_j) = f(g(e_j)).
pub fn tau_g(g: &AffineSelfMap, f: &AffineFunctionElement) -> Result<AffineFunctionElement> {
    let k = g.dim();
    if f.dim() != k {
        return Err(Error::SignatureMismatch {
            expected: k,
            found: f.dim(),
        });
    }
    let values = (0..k)
        .map(|j| f.evaluate_at(&g.apply(&Barycentric::vertex(k, j))?))
        .collect::<Result<Vec<_>>>()?;
    Ok(AffineFunctionElement::new(values))
}

/// Label attached to the completeness checks: on finite algebras monotone
/// σ-completeness reduces to preserving finite joins.
pub const COMPLETENESS_LABEL: &str = "finite-complete";

/// Witness that hat∘τ = τ_g∘hat and that τ_g is a state-morphism-operator on
/// M(A).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntertwiningCertificate {
    pub orders: Vec<u32>,
    pub sigma: Vec<usize>,
    pub g: Vec<usize>,
    pub completeness: String,
    pub checks: LawReport,
}

impl IntertwiningCertificate {
    pub fn passed(&self) -> bool {
        self.checks.passed()
    }
}

pub fn tau_g_and_intertwine(obj: &StateAlgebra) -> Result<IntertwiningCertificate> {
    let alg = obj.algebra();
    let g = induced_affine_g(obj)?;
    let m = build_m_of_a(alg);
    let elements = collect_elements(alg);
    let m_elements = m.elements();
    let tg = |f: &AffineFunctionElement| tau_g(&g, f).expect("dims");
    let mut r = LawReport::new();
    r.push(par_sweep("hat(τ(a))=τ_g(hat(a))", &elements, |a| {
        let lhs = AffineFunctionElement::hat(alg, &obj.apply_tau(a).expect("valid")).expect("valid");
        (lhs != tg(&AffineFunctionElement::hat(alg, a).expect("valid"))).then(|| format!("a={a}"))
    }));
    r.push(par_sweep("τ_g(M(A))⊆M(A)", &m_elements, |f| {
        (!m.contains(&tg(f))).then(|| format!("f={f}"))
    }));
    r.push(sweep("τ_g(0)=0", [m.zero()], |z| {
        (tg(&z) != z).then(|| "τ_g(0)≠0".into())
    }));
    r.push(par_sweep("τ_g(f*)=τ_g(f)*", &m_elements, |f| {
        (tg(&m.star(f)) != m.star(&tg(f))).then(|| format!("f={f}"))
    }));
    r.push(par_sweep("τ_g∘τ_g=τ_g", &m_elements, |f| {
        (tg(&tg(f)) != tg(f)).then(|| format!("f={f}"))
    }));
    let indexed: Vec<usize> = (0..m_elements.len()).collect();
    let pairs = pair_family(&indexed, 3);
    r.push(par_sweep("τ_g(f⊕h)=τ_g(f)⊕τ_g(h)", &pairs, |&(i, j)| {
        let (f, h) = (&m_elements[i], &m_elements[j]);
        (tg(&m.oplus(f, h)) != m.oplus(&tg(f), &tg(h))).then(|| format!("f={f}, h={h}"))
    }));
    let el_indexed: Vec<usize> = (0..elements.len()).collect();
    let el_pairs = pair_family(&el_indexed, 4);
    r.push(par_sweep(
        format!("τ(a∨b)=τ(a)∨τ(b) ({COMPLETENESS_LABEL})"),
        &el_pairs,
        |&(i, j)| {
            let (a, b) = (&elements[i], &elements[j]);
            let lhs = obj.apply_tau(&alg.join(a, b).expect("valid")).expect("valid");
            let rhs = alg
                .join(&obj.apply_tau(a).expect("valid"), &obj.apply_tau(b).expect("valid"))
                .expect("valid");
            (lhs != rhs).then(|| format!("a={a}, b={b}"))
        },
    ));
    Ok(IntertwiningCertificate {
        orders: alg.signature().orders().to_vec(),
        sigma: obj.tau().sigma().to_vec(),
        g: g.vertex_images().to_vec(),
        completeness: COMPLETENESS_LABEL.to_string(),
        checks: r,
    })
}

/// The weight/vertex decomposition of a state. Rational weights make every
/// state here a finite rational combination of discrete extremal states.
pub fn discrete_state_decomposition(s: &Barycentric) -> Vec<(Rational, ExtremalState)> {
    s.decomposition()
}
