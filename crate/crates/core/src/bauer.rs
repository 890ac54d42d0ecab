//! Finite Bauer simplices with an idempotent affine map, against rational
//! cube algebras with a state-morphism-operator.
//!
//! A finite Bauer simplex is the standard simplex Δ_{k−1}; its affine
//! functions into [0,1] are determined by their vertex values, so A(Ω) is the
//! rational cube [0,1]^k ∩ ℚ^k with pointwise Łukasiewicz operations. The
//! functors are
//!
//! * T(Ω, g) = (A(Ω), τ_g) with τ_g(f) = f∘g, and T(p)(f) = f∘p;
//! * S(A, τ) = (S(A), g) with g(s) = s∘τ, and S(h)(s′) = s′∘h.
//!
//! The cube is divisible but only finitely complete: joins of finite families
//! exist, suprema of arbitrary increasing sequences need not.

use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hom::{intertwining_violation, MvHom};
use crate::rational::{format_rational, Rational};
use crate::report::{sweep, LawCheck, LawReport};
use crate::simplex::{
    pointwise, random_function, random_state, AffineFunctionElement, AffineMap, AffineSelfMap, Barycentric,
};
use crate::state_ops::{check_map_range, OperatorSpec};

/// How the object class is labelled in certificates.
pub const OBJECT_CLASS: &str = "divisible, finitely complete";

/// Sample points per instance used by [`verify_bauer_duality`] callers.
pub const DEFAULT_SAMPLES: usize = 100;

/// Δ_{k−1}, optionally with vertex labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiniteBauerSimplex {
    vertices: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

impl FiniteBauerSimplex {
    pub fn new(vertices: usize) -> Result<Self> {
        if vertices == 0 {
            return Err(Error::EmptyMap);
        }
        Ok(Self { vertices, labels: None })
    }

    pub fn with_labels(labels: Vec<String>) -> Result<Self> {
        let mut s = Self::new(labels.len())?;
        let mut seen = std::collections::HashSet::new();
        if let Some(dup) = labels.iter().find(|l| !seen.insert(*l)) {
            return Err(Error::DuplicateLabel(dup.clone()));
        }
        s.labels = Some(labels);
        Ok(s)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn vertex(&self, j: usize) -> Barycentric {
        Barycentric::vertex(self.vertices, j)
    }
}

/// (Ω, g): a finite Bauer simplex with an idempotent affine self-map.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BauerObject {
    simplex: FiniteBauerSimplex,
    g: AffineSelfMap,
}

impl BauerObject {
    pub fn new(simplex: FiniteBauerSimplex, g: AffineSelfMap) -> Result<Self> {
        if g.dim() != simplex.vertex_count() {
            return Err(Error::SignatureMismatch {
                expected: simplex.vertex_count(),
                found: g.dim(),
            });
        }
        Ok(Self { simplex, g })
    }

    pub fn from_vertex_map(sigma: Vec<usize>) -> Result<Self> {
        let simplex = FiniteBauerSimplex::new(sigma.len())?;
        Self::new(simplex, AffineSelfMap::new(sigma)?)
    }

    pub fn simplex(&self) -> &FiniteBauerSimplex {
        &self.simplex
    }

    pub fn dim(&self) -> usize {
        self.simplex.vertex_count()
    }

    pub fn g(&self) -> &AffineSelfMap {
        &self.g
    }

    pub fn apply_g(&self, x: &Barycentric) -> Result<Barycentric> {
        self.g.apply(x)
    }
}

/// [0,1]^k ∩ ℚ^k with pointwise ⊕, *.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RationalCubeAlgebra {
    dim: usize,
}

impl RationalCubeAlgebra {
    pub fn new(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::EmptySignature);
        }
        Ok(Self { dim })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn check(&self, f: &AffineFunctionElement) -> Result<()> {
        if f.dim() != self.dim {
            return Err(Error::SignatureMismatch {
                expected: self.dim,
                found: f.dim(),
            });
        }
        if !f.in_unit_cube() {
            return Err(Error::InvalidState(format!("{f} leaves the unit cube")));
        }
        Ok(())
    }

    pub fn zero(&self) -> AffineFunctionElement {
        pointwise::zero(self.dim)
    }

    pub fn one(&self) -> AffineFunctionElement {
        pointwise::one(self.dim)
    }

    /// δ_i: 1 at vertex i, 0 elsewhere.
    pub fn unit(&self, i: usize) -> AffineFunctionElement {
        let mut values = vec![Rational::zero(); self.dim];
        values[i] = Rational::one();
        AffineFunctionElement::new(values)
    }

    pub fn oplus(&self, f: &AffineFunctionElement, g: &AffineFunctionElement) -> AffineFunctionElement {
        pointwise::oplus(f, g)
    }

    pub fn star(&self, f: &AffineFunctionElement) -> AffineFunctionElement {
        pointwise::star(f)
    }

    pub fn odot(&self, f: &AffineFunctionElement, g: &AffineFunctionElement) -> AffineFunctionElement {
        pointwise::odot(f, g)
    }

    pub fn join(&self, f: &AffineFunctionElement, g: &AffineFunctionElement) -> AffineFunctionElement {
        pointwise::join(f, g)
    }

    pub fn meet(&self, f: &AffineFunctionElement, g: &AffineFunctionElement) -> AffineFunctionElement {
        pointwise::meet(f, g)
    }

    /// n·f as an iterated partial sum: defined iff each step has
    /// (m·f) ⊙ f = 0, i.e. n·f ≤ 1 pointwise.
    pub fn nmul(&self, f: &AffineFunctionElement, n: u32) -> Option<AffineFunctionElement> {
        let mut acc = self.zero();
        for _ in 0..n {
            if self.odot(&acc, f) != self.zero() {
                return None;
            }
            acc = self.oplus(&acc, f);
        }
        Some(acc)
    }

    /// f / n, so that n·(f/n) = f.
    pub fn divide(&self, f: &AffineFunctionElement, n: u32) -> AffineFunctionElement {
        let d = Rational::from_integer(i64::from(n.max(1)));
        AffineFunctionElement::new(f.values().iter().map(|v| v / d).collect())
    }

    /// Some v with n·v = 1, verified by partial summation.
    pub fn weak_divisibility_witness(&self, n: u32) -> Option<AffineFunctionElement> {
        if n == 0 {
            return None;
        }
        let v = self.divide(&self.one(), n);
        (self.nmul(&v, n) == Some(self.one())).then_some(v)
    }
}

/// A rational cube with a state-morphism-operator τ(f)_j = f_{σ(j)}.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CubeStateAlgebra {
    cube: RationalCubeAlgebra,
    tau: OperatorSpec,
}

impl CubeStateAlgebra {
    pub fn new(cube: RationalCubeAlgebra, tau: OperatorSpec) -> Result<Self> {
        if tau.dim() != cube.dim() {
            return Err(Error::SignatureMismatch {
                expected: cube.dim(),
                found: tau.dim(),
            });
        }
        tau.require_idempotent()?;
        Ok(Self { cube, tau })
    }

    pub fn from_sigma(sigma: Vec<usize>) -> Result<Self> {
        let cube = RationalCubeAlgebra::new(sigma.len())?;
        Self::new(cube, OperatorSpec::new(sigma)?)
    }

    pub fn cube(&self) -> &RationalCubeAlgebra {
        &self.cube
    }

    pub fn tau(&self) -> &OperatorSpec {
        &self.tau
    }

    pub fn dim(&self) -> usize {
        self.cube.dim()
    }

    pub fn apply_tau(&self, f: &AffineFunctionElement) -> Result<AffineFunctionElement> {
        self.cube.check(f)?;
        Ok(AffineFunctionElement::new(
            self.tau.sigma().iter().map(|&s| f.values()[s]).collect(),
        ))
    }

    /// s(f) for a state s of the cube given by barycentric weights.
    pub fn evaluate_state(&self, s: &Barycentric, f: &AffineFunctionElement) -> Result<Rational> {
        self.cube.check(f)?;
        f.evaluate_at(s)
    }
}

/// A τ-homomorphism between cube state algebras, h(f)_{j′} = f_{λ(j′)}.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubeHom {
    source: CubeStateAlgebra,
    target: CubeStateAlgebra,
    hom: MvHom,
}

impl CubeHom {
    pub fn new(source: CubeStateAlgebra, target: CubeStateAlgebra, hom: MvHom) -> Result<Self> {
        if hom.domain_dim() != source.dim() || hom.codomain_dim() != target.dim() {
            return Err(Error::SignatureMismatch {
                expected: source.dim(),
                found: hom.domain_dim(),
            });
        }
        if let Some(index) = intertwining_violation(source.tau().sigma(), hom.source_map(), target.tau().sigma()) {
            return Err(Error::NotIntertwining { index });
        }
        Ok(Self { source, target, hom })
    }

    pub fn identity(obj: &CubeStateAlgebra) -> Self {
        Self {
            source: obj.clone(),
            target: obj.clone(),
            hom: MvHom::identity(obj.dim()),
        }
    }

    pub fn source(&self) -> &CubeStateAlgebra {
        &self.source
    }

    pub fn target(&self) -> &CubeStateAlgebra {
        &self.target
    }

    pub fn hom(&self) -> &MvHom {
        &self.hom
    }

    pub fn apply(&self, f: &AffineFunctionElement) -> Result<AffineFunctionElement> {
        self.source.cube().check(f)?;
        Ok(AffineFunctionElement::new(self.hom.apply_values(f.values())?))
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &CubeHom) -> Result<CubeHom> {
        if first.target != self.source {
            return Err(Error::SignatureMismatch {
                expected: self.source.dim(),
                found: first.target.dim(),
            });
        }
        CubeHom::new(first.source.clone(), self.target.clone(), self.hom.after(&first.hom)?)
    }
}

/// Every τ-homomorphism between two cube state algebras.
pub fn enumerate_cube_homs(source: &CubeStateAlgebra, target: &CubeStateAlgebra) -> Vec<CubeHom> {
    let k = source.dim();
    let options: Vec<Vec<usize>> = (0..target.dim()).map(|_| (0..k).collect()).collect();
    crate::state_ops::cartesian(&options)
        .into_iter()
        .filter_map(|lambda| CubeHom::new(source.clone(), target.clone(), MvHom::new(k, lambda).ok()?).ok())
        .collect()
}

/// A continuous affine p: (Ω, g) → (Ω′, g′) with p∘g = g′∘p, sending
/// vertices to vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BauerMorphism {
    source: BauerObject,
    target: BauerObject,
    map: AffineMap,
}

impl BauerMorphism {
    pub fn new(source: BauerObject, target: BauerObject, map: AffineMap) -> Result<Self> {
        if map.source_dim() != source.dim() || map.target_dim() != target.dim() {
            return Err(Error::SignatureMismatch {
                expected: source.dim(),
                found: map.source_dim(),
            });
        }
        let (pi, g, g_prime) = (
            map.vertex_images(),
            source.g().vertex_images(),
            target.g().vertex_images(),
        );
        if let Some(index) = (0..source.dim()).find(|&x| pi[g[x]] != g_prime[pi[x]]) {
            return Err(Error::NotIntertwining { index });
        }
        Ok(Self { source, target, map })
    }

    pub fn from_vertex_map(source: BauerObject, target: BauerObject, pi: Vec<usize>) -> Result<Self> {
        check_map_range(&pi, target.dim())?;
        let map = AffineMap::new(pi, target.dim())?;
        Self::new(source, target, map)
    }

    pub fn identity(obj: &BauerObject) -> Self {
        Self {
            source: obj.clone(),
            target: obj.clone(),
            map: AffineMap::identity(obj.dim()),
        }
    }

    pub fn source(&self) -> &BauerObject {
        &self.source
    }

    pub fn target(&self) -> &BauerObject {
        &self.target
    }

    pub fn map(&self) -> &AffineMap {
        &self.map
    }

    pub fn apply(&self, x: &Barycentric) -> Result<Barycentric> {
        self.map.apply(x)
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &BauerMorphism) -> Result<BauerMorphism> {
        if first.target != self.source {
            return Err(Error::SignatureMismatch {
                expected: self.source.dim(),
                found: first.target.dim(),
            });
        }
        BauerMorphism::new(first.source.clone(), self.target.clone(), self.map.after(&first.map)?)
    }
}

/// Enumerates every morphism between two Bauer objects.
pub fn enumerate_bauer_morphisms(source: &BauerObject, target: &BauerObject) -> Vec<BauerMorphism> {
    let options: Vec<Vec<usize>> = (0..source.dim()).map(|_| (0..target.dim()).collect()).collect();
    crate::state_ops::cartesian(&options)
        .into_iter()
        .filter_map(|pi| BauerMorphism::from_vertex_map(source.clone(), target.clone(), pi).ok())
        .collect()
}

/// T(Ω, g) = (A(Ω), τ_g); τ_g(f)(e_j) = f(g(e_j)) read off at the vertices.
pub fn functor_t(obj: &BauerObject) -> Result<CubeStateAlgebra> {
    let k = obj.dim();
    let cube = RationalCubeAlgebra::new(k)?;
    let sigma = (0..k)
        .map(|j| {
            obj.apply_g(&obj.simplex().vertex(j))?
                .is_vertex()
                .ok_or(Error::NotVertexPreserving { vertex: j })
        })
        .collect::<Result<Vec<_>>>()?;
    CubeStateAlgebra::new(cube, OperatorSpec::new(sigma)?)
}

/// s∘τ for a state of the cube, read off on the units δ_i.
pub fn pull_back_cube_state(alg: &CubeStateAlgebra, s: &Barycentric) -> Result<Barycentric> {
    let cube = alg.cube();
    let weights = (0..alg.dim())
        .map(|i| alg.evaluate_state(s, &alg.apply_tau(&cube.unit(i))?))
        .collect::<Result<Vec<_>>>()?;
    Barycentric::new(weights)
}

/// S(A, τ) = (S(A), g) with g(s) = s∘τ.
pub fn functor_s(alg: &CubeStateAlgebra) -> Result<BauerObject> {
    let k = alg.dim();
    let images = (0..k)
        .map(|j| pull_back_cube_state(alg, &Barycentric::vertex(k, j)))
        .collect::<Result<Vec<_>>>()?;
    let map = AffineMap::from_vertex_values(&images, k)?;
    BauerObject::from_vertex_map(map.vertex_images().to_vec())
}

/// S(h): S(A′) → S(A), s′ ↦ s′∘h.
pub fn transport_s(h: &CubeHom) -> Result<BauerMorphism> {
    let (src, dst) = (h.source(), h.target());
    let images = (0..dst.dim())
        .map(|j| {
            let s_prime = Barycentric::vertex(dst.dim(), j);
            let weights = (0..src.dim())
                .map(|i| dst.evaluate_state(&s_prime, &h.apply(&src.cube().unit(i))?))
                .collect::<Result<Vec<_>>>()?;
            Barycentric::new(weights)
        })
        .collect::<Result<Vec<_>>>()?;
    let map = AffineMap::from_vertex_values(&images, src.dim())?;
    BauerMorphism::new(functor_s(dst)?, functor_s(src)?, map)
}

/// T(p): A(Ω′) → A(Ω), f ↦ f∘p.
pub fn transport_t(p: &BauerMorphism) -> Result<CubeHom> {
    let (src, dst) = (p.source(), p.target());
    let lambda = (0..src.dim())
        .map(|x| {
            p.apply(&src.simplex().vertex(x))?
                .is_vertex()
                .ok_or(Error::NotVertexPreserving { vertex: x })
        })
        .collect::<Result<Vec<_>>>()?;
    CubeHom::new(functor_t(dst)?, functor_t(src)?, MvHom::new(dst.dim(), lambda)?)
}

/// p: Ω → S(A(Ω)), p(x)(f) = f(x). In barycentric form p(x) has weights
/// p(x)(δ_i).
pub fn evaluation_point(obj: &BauerObject, x: &Barycentric) -> Result<Barycentric> {
    let cube = RationalCubeAlgebra::new(obj.dim())?;
    let weights = (0..obj.dim())
        .map(|i| cube.unit(i).evaluate_at(x))
        .collect::<Result<Vec<_>>>()?;
    Barycentric::new(weights)
}

pub fn evaluation_map(obj: &BauerObject) -> Result<BauerMorphism> {
    let images = (0..obj.dim())
        .map(|x| evaluation_point(obj, &obj.simplex().vertex(x)))
        .collect::<Result<Vec<_>>>()?;
    let map = AffineMap::from_vertex_values(&images, obj.dim())?;
    let back = functor_s(&functor_t(obj)?)?;
    BauerMorphism::new(obj.clone(), back, map)
}

/// â(s) = s(a): for the cube, the vertex values of â are a itself.
pub fn cube_hat(alg: &CubeStateAlgebra, a: &AffineFunctionElement) -> Result<AffineFunctionElement> {
    let k = alg.dim();
    let values = (0..k)
        .map(|j| alg.evaluate_state(&Barycentric::vertex(k, j), a))
        .collect::<Result<Vec<_>>>()?;
    Ok(AffineFunctionElement::new(values))
}

/// Both round trips for one instance, with the witness maps and the sample
/// data used for the off-vertex checks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BauerCertificate {
    pub dim: usize,
    pub object_class: String,
    /// σ of the algebra side.
    pub sigma: Vec<usize>,
    /// Vertex map of g in S(A, τ).
    pub g: Vec<usize>,
    /// Vertex map of τ_{g} in T(S(A, τ)).
    pub sigma_round_trip: Vec<usize>,
    /// Vertex map of g′ in S(T(Ω, g)).
    pub g_round_trip: Vec<usize>,
    /// Vertex map of the evaluation map p.
    pub evaluation: Vec<usize>,
    pub seed: u64,
    pub sample_points: Vec<Barycentric>,
    pub sample_elements: Vec<AffineFunctionElement>,
    pub checks: LawReport,
}

impl BauerCertificate {
    pub fn passed(&self) -> bool {
        self.checks.passed()
    }

    /// Re-checks the identities from the stored maps and samples alone.
    pub fn replay(&self) -> LawReport {
        let k = self.dim;
        let mut r = LawReport::new();
        let maps = [
            ("σ", &self.sigma),
            ("g", &self.g),
            ("τ_g", &self.sigma_round_trip),
            ("g′", &self.g_round_trip),
            ("p", &self.evaluation),
        ];
        for (name, m) in maps {
            let shaped = m.len() == k && m.iter().all(|&v| v < k);
            r.push(if shaped {
                LawCheck::holds(format!("replay: {name} is a vertex map"), k as u64)
            } else {
                LawCheck::fails(format!("replay: {name} is a vertex map"), format!("{m:?}"))
            });
            if !shaped {
                return r;
            }
        }
        for (name, m) in [("σ", &self.sigma), ("g", &self.g), ("g′", &self.g_round_trip)] {
            r.push(sweep(format!("replay: {name} idempotent"), 0..k, |x| {
                (m[m[x]] != m[x]).then(|| format!("x={x}"))
            }));
        }
        let push = |m: &[usize], x: &Barycentric| x.push_forward(m, k);
        let tau = |m: &[usize], f: &AffineFunctionElement| {
            AffineFunctionElement::new(m.iter().map(|&s| f.values()[s]).collect())
        };
        r.push(sweep("replay: g(s)(a)=s(τ(a))", self.sample_points.iter(), |s| {
            self.sample_elements.iter().find_map(|a| {
                let lhs = a.evaluate_at(&push(&self.g, s)).ok()?;
                let rhs = tau(&self.sigma, a).evaluate_at(s).ok()?;
                (lhs != rhs).then(|| format!("s={s}, a={a}"))
            })
        }));
        r.push(sweep(
            "replay: τ_g of T∘S equals τ",
            self.sample_elements.iter(),
            |a| (tau(&self.sigma_round_trip, a) != tau(&self.sigma, a)).then(|| format!("a={a}")),
        ));
        r.push(sweep("replay: p∘g=g′∘p", self.sample_points.iter(), |x| {
            let lhs = push(&self.evaluation, &push(&self.g, x));
            let rhs = push(&self.g_round_trip, &push(&self.evaluation, x));
            (lhs != rhs).then(|| format!("x={x}"))
        }));
        let distinct: std::collections::BTreeSet<usize> = self.evaluation.iter().copied().collect();
        r.push(if distinct.len() == k {
            LawCheck::holds("replay: p bijective on vertices", k as u64)
        } else {
            LawCheck::fails("replay: p bijective on vertices", format!("{:?}", self.evaluation))
        });
        r
    }
}

fn samples(k: usize, count: usize, seed: u64) -> (Vec<Barycentric>, Vec<AffineFunctionElement>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points = (0..count).map(|_| random_state(&mut rng, k, 9, true)).collect();
    let elements = (0..count).map(|_| random_function(&mut rng, k, 12)).collect();
    (points, elements)
}

/// Verifies T∘S(A, τ) ≅ (A, τ) via hat and S∘T(S(A, τ)) ≅ S(A, τ) via the
/// evaluation map, on all vertices and on `count` seeded interior points and
/// rational elements.
pub fn verify_bauer_duality(alg: &CubeStateAlgebra, count: usize, seed: u64) -> Result<BauerCertificate> {
    let obj = functor_s(alg)?;
    certify(alg, &obj, count, seed)
}

/// The same certificate starting from (Ω, g).
pub fn verify_bauer_duality_from_space(obj: &BauerObject, count: usize, seed: u64) -> Result<BauerCertificate> {
    let alg = functor_t(obj)?;
    certify(&alg, obj, count, seed)
}

fn certify(alg: &CubeStateAlgebra, obj: &BauerObject, count: usize, seed: u64) -> Result<BauerCertificate> {
    let k = alg.dim();
    let cube = *alg.cube();
    let back_alg = functor_t(obj)?;
    let p = evaluation_map(obj)?;
    let back_obj = p.target().clone();
    let (mut points, mut elements) = samples(k, count, seed);
    points.extend((0..k).map(|j| Barycentric::vertex(k, j)));
    elements.extend((0..k).map(|i| cube.unit(i)));
    elements.push(cube.zero());
    elements.push(cube.one());
    let g = obj.g();
    let mut r = LawReport::new();

    r.push(sweep("S(A,τ)=(Δ,g) with g(s)=s∘τ", points.iter(), |s| {
        let gs = g.apply(s).ok()?;
        elements.iter().find_map(|a| {
            let lhs = alg.evaluate_state(&gs, a).ok()?;
            let rhs = alg.evaluate_state(s, &alg.apply_tau(a).ok()?).ok()?;
            (lhs != rhs).then(|| format!("s={s}, a={a}"))
        })
    }));
    r.push(sweep("g affine", points.windows(2), |w| {
        let l = Rational::new(1, 3);
        let lhs = g.apply(&w[0].mix(l, &w[1]).ok()?).ok()?;
        let rhs = g.apply(&w[0]).ok()?.mix(l, &g.apply(&w[1]).ok()?).ok()?;
        (lhs != rhs).then(|| format!("s={}, t={}", w[0], w[1]))
    }));
    r.push(sweep("g∘g=g", points.iter(), |s| {
        let once = g.apply(s).ok()?;
        (g.apply(&once).ok()? != once).then(|| format!("s={s}"))
    }));
    r.push(sweep("hat(a)(s)=s(a)", elements.iter(), |a| {
        let h = cube_hat(alg, a).ok()?;
        points
            .iter()
            .find_map(|s| (h.evaluate_at(s).ok()? != alg.evaluate_state(s, a).ok()?).then(|| format!("a={a}, s={s}")))
    }));
    r.push(sweep("hat bijective", elements.iter(), |a| {
        (cube_hat(alg, a).ok()? != *a).then(|| format!("a={a}"))
    }));
    r.push(sweep("hat∘τ=τ_g∘hat", elements.iter(), |a| {
        let lhs = cube_hat(alg, &alg.apply_tau(a).ok()?).ok()?;
        let rhs = back_alg.apply_tau(&cube_hat(alg, a).ok()?).ok()?;
        (lhs != rhs).then(|| format!("a={a}"))
    }));
    r.push(sweep("hat preserves ⊕,*,0", elements.windows(2), |w| {
        let h = |f: &AffineFunctionElement| cube_hat(alg, f).ok();
        let ok = h(&cube.oplus(&w[0], &w[1]))? == cube.oplus(&h(&w[0])?, &h(&w[1])?)
            && h(&cube.star(&w[0]))? == cube.star(&h(&w[0])?)
            && h(&cube.zero())? == cube.zero();
        (!ok).then(|| format!("a={}, b={}", w[0], w[1]))
    }));
    r.push(sweep("τ_g(f)=f∘g", elements.iter(), |f| {
        let tf = back_alg.apply_tau(f).ok()?;
        points.iter().find_map(|x| {
            (tf.evaluate_at(x).ok()? != f.evaluate_at(&g.apply(x).ok()?).ok()?).then(|| format!("f={f}, x={x}"))
        })
    }));
    r.push(sweep("τ_g is a state-morphism-operator", elements.windows(2), |w| {
        let t = |f: &AffineFunctionElement| back_alg.apply_tau(f).ok();
        let ok = t(&cube.oplus(&w[0], &w[1]))? == cube.oplus(&t(&w[0])?, &t(&w[1])?)
            && t(&cube.star(&w[0]))? == cube.star(&t(&w[0])?)
            && t(&cube.zero())? == cube.zero()
            && t(&t(&w[0])?)? == t(&w[0])?;
        (!ok).then(|| format!("f={}, h={}", w[0], w[1]))
    }));
    r.push(sweep(
        format!("τ_g(f∨h)=τ_g(f)∨τ_g(h) ({})", crate::simplex::COMPLETENESS_LABEL),
        elements.windows(2),
        |w| {
            let t = |f: &AffineFunctionElement| back_alg.apply_tau(f).ok();
            (t(&cube.join(&w[0], &w[1]))? != cube.join(&t(&w[0])?, &t(&w[1])?))
                .then(|| format!("f={}, h={}", w[0], w[1]))
        },
    ));
    r.push(sweep("weak divisibility n≤10", 1..=10u32, |n| {
        cube.weak_divisibility_witness(n).is_none().then(|| format!("n={n}"))
    }));
    r.push(sweep("p(x)(f)=f(x)", points.iter(), |x| {
        let px = p.apply(x).ok()?;
        elements.iter().find_map(|f| {
            (back_alg.evaluate_state(&px, f).ok()? != f.evaluate_at(x).ok()?).then(|| format!("x={x}, f={f}"))
        })
    }));
    let pi = p.map().vertex_images();
    let distinct: std::collections::BTreeSet<usize> = pi.iter().copied().collect();
    r.push(if distinct.len() == k {
        LawCheck::holds("p bijective on vertices", k as u64)
    } else {
        LawCheck::fails("p bijective on vertices", format!("{pi:?}"))
    });
    r.push(sweep("p∘g=g′∘p", points.iter(), |x| {
        let lhs = p.apply(&g.apply(x).ok()?).ok()?;
        let rhs = back_obj.apply_g(&p.apply(x).ok()?).ok()?;
        (lhs != rhs).then(|| format!("x={x}"))
    }));

    Ok(BauerCertificate {
        dim: k,
        object_class: OBJECT_CLASS.to_string(),
        sigma: alg.tau().sigma().to_vec(),
        g: g.vertex_images().to_vec(),
        sigma_round_trip: back_alg.tau().sigma().to_vec(),
        g_round_trip: back_obj.g().vertex_images().to_vec(),
        evaluation: pi.to_vec(),
        seed,
        sample_points: points,
        sample_elements: elements,
        checks: r,
    })
}

/// Renders a rational vector, used in CLI and test output.
pub fn format_values(v: &[Rational]) -> String {
    v.iter().map(format_rational).collect::<Vec<_>>().join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state_ops::enumerate_state_morphism_operators;
    use crate::ChainSignature;

    fn q(p: i64, d: i64) -> Rational {
        Rational::new(p, d)
    }

    fn f(v: &[(i64, i64)]) -> AffineFunctionElement {
        AffineFunctionElement::new(v.iter().map(|&(p, d)| q(p, d)).collect())
    }

    #[test]
    fn functor_t_example() {
        let obj = BauerObject::from_vertex_map(vec![0, 0, 2]).unwrap();
        let alg = functor_t(&obj).unwrap();
        assert_eq!(alg.tau().sigma(), [0, 0, 2]);
        let a = f(&[(1, 3), (1, 2), (3, 4)]);
        assert_eq!(alg.apply_tau(&a).unwrap(), f(&[(1, 3), (1, 3), (3, 4)]));
        let id = BauerObject::from_vertex_map(vec![0, 1, 2]).unwrap();
        assert_eq!(functor_t(&id).unwrap().tau(), &OperatorSpec::identity(3));
    }

    #[test]
    fn functor_s_example() {
        let alg = CubeStateAlgebra::from_sigma(vec![0, 0, 2]).unwrap();
        let obj = functor_s(&alg).unwrap();
        assert_eq!(obj.g().vertex_images(), [0, 0, 2]);
        assert_eq!(
            functor_s(&CubeStateAlgebra::from_sigma(vec![0, 1]).unwrap())
                .unwrap()
                .g(),
            &AffineSelfMap::identity(2)
        );
    }

    #[test]
    fn evaluation_example() {
        let obj = BauerObject::from_vertex_map(vec![0, 0, 2]).unwrap();
        let x = Barycentric::barycenter(3);
        let px = evaluation_point(&obj, &x).unwrap();
        let a = f(&[(1, 1), (1, 2), (0, 1)]);
        assert_eq!(a.evaluate_at(&px).unwrap(), q(1, 2));
        let p = evaluation_map(&obj).unwrap();
        let lhs = p.apply(&obj.apply_g(&x).unwrap()).unwrap();
        let rhs = p.target().apply_g(&p.apply(&x).unwrap()).unwrap();
        assert_eq!(lhs.weights(), [q(2, 3), q(0, 1), q(1, 3)]);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn projection_hom_and_its_dual() {
        // cube³ with σ=[0,0,2] → cube² with σ′=[0,1], keep coordinates 0 and 2
        let src = CubeStateAlgebra::from_sigma(vec![0, 0, 2]).unwrap();
        let dst = CubeStateAlgebra::from_sigma(vec![0, 1]).unwrap();
        let h = CubeHom::new(src, dst, MvHom::new(3, vec![0, 2]).unwrap()).unwrap();
        let sh = transport_s(&h).unwrap();
        assert_eq!(sh.map().vertex_images(), [0, 2]);
        // oracle: s′∘h on each vertex of Δ₁ evaluated on every unit
        for j in 0..2 {
            let s_prime = Barycentric::vertex(2, j);
            let weights: Vec<Rational> = (0..3)
                .map(|i| {
                    h.apply(&h.source().cube().unit(i))
                        .unwrap()
                        .evaluate_at(&s_prime)
                        .unwrap()
                })
                .collect();
            assert_eq!(Barycentric::new(weights).unwrap(), sh.apply(&s_prime).unwrap());
        }
        let th = transport_t(&sh).unwrap();
        assert_eq!(th.hom(), h.hom());
    }

    #[test]
    fn identities_map_to_identities() {
        let alg = CubeStateAlgebra::from_sigma(vec![0, 0, 2]).unwrap();
        let obj = functor_s(&alg).unwrap();
        assert_eq!(
            transport_s(&CubeHom::identity(&alg)).unwrap(),
            BauerMorphism::identity(&obj)
        );
        assert_eq!(
            transport_t(&BauerMorphism::identity(&obj)).unwrap(),
            CubeHom::identity(&alg)
        );
    }

    #[test]
    fn transports_reverse_composition() {
        let a = CubeStateAlgebra::from_sigma(vec![0, 0, 2]).unwrap();
        let b = CubeStateAlgebra::from_sigma(vec![0, 1]).unwrap();
        let c = CubeStateAlgebra::from_sigma(vec![0, 0]).unwrap();
        let mut n = 0;
        for h1 in enumerate_cube_homs(&a, &b) {
            for h2 in enumerate_cube_homs(&b, &c) {
                let lhs = transport_s(&h2.after(&h1).unwrap()).unwrap();
                let rhs = transport_s(&h1).unwrap().after(&transport_s(&h2).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
                let (p1, p2) = (transport_s(&h1).unwrap(), transport_s(&h2).unwrap());
                let lhs = transport_t(&p1.after(&p2).unwrap()).unwrap();
                let rhs = transport_t(&p2).unwrap().after(&transport_t(&p1).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
                n += 1;
            }
        }
        assert!(n > 0);
    }

    #[test]
    fn rational_cube_divisibility() {
        let cube = RationalCubeAlgebra::new(3).unwrap();
        for n in 1..=10 {
            let v = cube.weak_divisibility_witness(n).unwrap();
            assert_eq!(cube.nmul(&v, n), Some(cube.one()));
        }
        let a = f(&[(1, 2), (1, 3), (1, 1)]);
        assert_eq!(cube.nmul(&cube.divide(&a, 4), 4), Some(a.clone()));
        assert_eq!(cube.nmul(&a, 2), None);
        let s2 = crate::ProductMvAlgebra::from_orders(vec![2]).unwrap();
        assert!(!s2.weakly_divisible_at(3));
    }

    #[test]
    fn bauer_certificates_pass_and_replay() {
        let alg = CubeStateAlgebra::from_sigma(vec![0, 0, 2]).unwrap();
        let cert = verify_bauer_duality(&alg, 30, 5).unwrap();
        assert!(cert.passed(), "{}", cert.checks);
        assert!(cert.replay().passed());
        assert_eq!(cert.object_class, "divisible, finitely complete");
        let single = BauerObject::from_vertex_map(vec![0]).unwrap();
        let cert = verify_bauer_duality_from_space(&single, 10, 1).unwrap();
        assert!(cert.passed() && cert.replay().passed());
    }

    #[test]
    fn corrupted_bauer_certificate_fails_replay() {
        let alg = CubeStateAlgebra::from_sigma(vec![0, 0, 2]).unwrap();
        let mut cert = verify_bauer_duality(&alg, 10, 5).unwrap();
        cert.g_round_trip = vec![2, 2, 2];
        assert!(!cert.replay().passed());
    }

    #[test]
    fn all_small_instances() {
        for k in 1..=4 {
            for spec in enumerate_state_morphism_operators(&ChainSignature::boolean(k).unwrap()) {
                let obj = BauerObject::from_vertex_map(spec.sigma().to_vec()).unwrap();
                assert!(verify_bauer_duality_from_space(&obj, 10, 3).unwrap().passed());
            }
        }
    }

    #[test]
    fn morphism_validation() {
        let a = BauerObject::from_vertex_map(vec![0, 0]).unwrap();
        let b = BauerObject::from_vertex_map(vec![0, 1]).unwrap();
        assert!(BauerMorphism::from_vertex_map(a.clone(), b.clone(), vec![0, 1]).is_err());
        assert!(BauerMorphism::from_vertex_map(a, b, vec![0, 0]).is_ok());
    }
}
