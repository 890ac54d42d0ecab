//! Boolean state algebras and finite Boolean state spaces.
//!
//! On the algebra side an object is a finite Boolean algebra 2^k (an all-ones
//! [`ProductMvAlgebra`]) with a state-operator τ; on the space side it is a
//! finite discrete set Ω with an idempotent self-map g. The functors are
//!
//! * φ(B, τ) = (Ω(B), g) with g(F) = τ⁻¹(F) on ultrafilters, and
//!   φ(h)(F′) = h⁻¹(F′) on morphisms;
//! * ψ(Ω, g) = (B(Ω), s_g) with s_g(A) = g⁻¹(A) on clopen sets, and
//!   ψ(f)(A′) = f⁻¹(A′) on morphisms.
//!
//! Ultrafilters of a finite Boolean algebra are principal, so they are stored
//! by their atom. Continuity on a finite discrete space is automatic; instead
//! the finite witnesses g⁻¹(u(a)) = u(τ(a)) and f⁻¹(u(a)) = u(h(a)) are swept.

use std::collections::{BTreeSet, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hom::{MvHom, StateHom};
use crate::mv::{MvElement, ProductMvAlgebra};
use crate::report::{sweep, LawCheck, LawReport};
use crate::state_ops::{check_map_range, check_self_map, OperatorSpec, StateAlgebra};

/// Largest number of atoms for which the verifiers sweep every element (and
/// every pair of elements).
pub const SWEEP_ATOM_CAP: usize = 10;

/// The principal ultrafilter {a : a ≥ atom}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Ultrafilter {
    atom: usize,
}

impl Ultrafilter {
    pub fn principal(atom: usize) -> Self {
        Self { atom }
    }

    pub fn atom(&self) -> usize {
        self.atom
    }

    pub fn contains(&self, a: &MvElement) -> bool {
        a.get(self.atom) == 1
    }
}

/// A subset of a finite discrete space; every subset is clopen.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ClopenSet(BTreeSet<usize>);

impl ClopenSet {
    pub fn new(points: impl IntoIterator<Item = usize>) -> Self {
        Self(points.into_iter().collect())
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn full(n: usize) -> Self {
        Self::new(0..n)
    }

    /// The set of coordinates where a Boolean element is 1.
    pub fn from_element(a: &MvElement) -> Self {
        Self::new((0..a.len()).filter(|&j| a.get(j) == 1))
    }

    pub fn to_element(&self, n: usize) -> MvElement {
        MvElement::new((0..n).map(|j| u32::from(self.0.contains(&j))).collect())
    }

    pub fn points(&self) -> &BTreeSet<usize> {
        &self.0
    }

    pub fn contains(&self, x: usize) -> bool {
        self.0.contains(&x)
    }

    pub fn union(&self, other: &ClopenSet) -> ClopenSet {
        Self(self.0.union(&other.0).copied().collect())
    }

    pub fn complement(&self, n: usize) -> ClopenSet {
        Self::new((0..n).filter(|x| !self.0.contains(x)))
    }

    /// All 2^n subsets, in the order of their bitmasks.
    pub fn all(n: usize) -> impl Iterator<Item = ClopenSet> {
        (0u64..(1u64 << n)).map(move |mask| Self::new((0..n).filter(|&x| mask & (1 << x) != 0)))
    }
}

fn require_boolean(alg: &ProductMvAlgebra) -> Result<()> {
    if alg.is_boolean() {
        Ok(())
    } else {
        Err(Error::NotBoolean {
            orders: alg.signature().orders().to_vec(),
        })
    }
}

fn require_sweepable(atoms: usize) -> Result<()> {
    if atoms > SWEEP_ATOM_CAP {
        return Err(Error::TooLarge {
            what: "Boolean sweep (atoms)",
            size: atoms,
            cap: SWEEP_ATOM_CAP,
        });
    }
    Ok(())
}

/// Ω(B) with the map u(a) = {F : a ∈ F}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StoneSpace {
    ultrafilters: Vec<Ultrafilter>,
}

impl StoneSpace {
    pub fn ultrafilters(&self) -> &[Ultrafilter] {
        &self.ultrafilters
    }

    pub fn len(&self) -> usize {
        self.ultrafilters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ultrafilters.is_empty()
    }

    /// u(a), as the set of indices of the ultrafilters containing a.
    pub fn u(&self, a: &MvElement) -> ClopenSet {
        ClopenSet::new(
            self.ultrafilters
                .iter()
                .enumerate()
                .filter(|(_, f)| f.contains(a))
                .map(|(i, _)| i),
        )
    }
}

pub fn stone_space(alg: &ProductMvAlgebra) -> Result<StoneSpace> {
    require_boolean(alg)?;
    Ok(StoneSpace {
        ultrafilters: (0..alg.dim()).map(Ultrafilter::principal).collect(),
    })
}

/// The ultrafilter whose membership is given by `member`: the principal
/// filter at the unique atom it contains.
pub fn identify_ultrafilter(alg: &ProductMvAlgebra, member: impl Fn(&MvElement) -> bool) -> Result<Ultrafilter> {
    let atoms: Vec<usize> = (0..alg.dim()).filter(|&j| member(&alg.unit(j))).collect();
    match atoms.as_slice() {
        [atom] => Ok(Ultrafilter::principal(*atom)),
        other => Err(Error::NotUltrafilter(format!("contains atoms {other:?}"))),
    }
}

/// Sweeps `alg` to confirm `member` describes exactly the filter `f`.
fn ultrafilter_mismatch(alg: &ProductMvAlgebra, f: Ultrafilter, member: impl Fn(&MvElement) -> bool) -> Option<String> {
    alg.elements()
        .find(|a| member(a) != f.contains(a))
        .map(|a| format!("a={a} vs F_{}", f.atom()))
}

fn canonical_labels(n: usize) -> Vec<String> {
    let width = (n.max(1) - 1).to_string().len();
    (0..n).map(|i| format!("{i:0width$}")).collect()
}

/// A finite Stone space with a continuous idempotent self-map.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StoneStatePair {
    labels: Vec<String>,
    g: Vec<usize>,
}

impl StoneStatePair {
    pub fn new(labels: Vec<String>, g: Vec<usize>) -> Result<Self> {
        if labels.len() != g.len() {
            return Err(Error::SignatureMismatch {
                expected: labels.len(),
                found: g.len(),
            });
        }
        check_self_map(&g)?;
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        if let Some(e) = OperatorSpec::new(g.clone())?.idempotence_violation() {
            return Err(e);
        }
        Ok(Self { labels, g })
    }

    /// Points named by zero-padded indices, so that label order is index order.
    pub fn with_canonical_labels(g: Vec<usize>) -> Result<Self> {
        Self::new(canonical_labels(g.len()), g)
    }

    pub fn len(&self) -> usize {
        self.g.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn g(&self) -> &[usize] {
        &self.g
    }

    pub fn apply(&self, x: usize) -> usize {
        self.g[x]
    }

    pub fn preimage(&self, a: &ClopenSet) -> ClopenSet {
        ClopenSet::new((0..self.len()).filter(|&x| a.contains(self.g[x])))
    }

    pub fn image(&self) -> ClopenSet {
        ClopenSet::new(self.g.iter().copied())
    }

    /// The same pair with points sorted by label, and the permutation used
    /// (new index ↦ old index).
    pub fn sorted_by_label(&self) -> (StoneStatePair, Vec<usize>) {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by(|&a, &b| self.labels[a].cmp(&self.labels[b]));
        let mut new_index = vec![0; self.len()];
        for (new, &old) in order.iter().enumerate() {
            new_index[old] = new;
        }
        let labels = order.iter().map(|&old| self.labels[old].clone()).collect();
        let g = order.iter().map(|&old| new_index[self.g[old]]).collect();
        (StoneStatePair { labels, g }, order)
    }
}

/// A continuous map f: (Ω, g) → (Ω′, g′) with f∘g = g′∘f.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceMorphism {
    source: StoneStatePair,
    target: StoneStatePair,
    map: Vec<usize>,
}

impl SpaceMorphism {
    pub fn new(source: StoneStatePair, target: StoneStatePair, map: Vec<usize>) -> Result<Self> {
        if map.len() != source.len() {
            return Err(Error::SignatureMismatch {
                expected: source.len(),
                found: map.len(),
            });
        }
        check_map_range(&map, target.len())?;
        if let Some(index) = (0..source.len()).find(|&x| map[source.apply(x)] != target.apply(map[x])) {
            return Err(Error::NotIntertwining { index });
        }
        Ok(Self { source, target, map })
    }

    pub fn identity(pair: &StoneStatePair) -> Self {
        Self {
            source: pair.clone(),
            target: pair.clone(),
            map: (0..pair.len()).collect(),
        }
    }

    pub fn source(&self) -> &StoneStatePair {
        &self.source
    }

    pub fn target(&self) -> &StoneStatePair {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn preimage(&self, a: &ClopenSet) -> ClopenSet {
        ClopenSet::new((0..self.source.len()).filter(|&x| a.contains(self.map[x])))
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &SpaceMorphism) -> Result<SpaceMorphism> {
        if first.target != self.source {
            return Err(Error::SignatureMismatch {
                expected: self.source.len(),
                found: first.target.len(),
            });
        }
        SpaceMorphism::new(
            first.source.clone(),
            self.target.clone(),
            first.map.iter().map(|&y| self.map[y]).collect(),
        )
    }
}

/// φ(B, τ) = (Ω(B), g) with g(F) = τ⁻¹(F).
pub fn phi_object(obj: &StateAlgebra) -> Result<StoneStatePair> {
    let alg = obj.algebra();
    let space = stone_space(alg)?;
    let g = space
        .ultrafilters()
        .iter()
        .map(|f| {
            let pulled = identify_ultrafilter(alg, |a| obj.apply_tau(a).map(|ta| f.contains(&ta)).unwrap_or(false))?;
            Ok(pulled.atom())
        })
        .collect::<Result<Vec<_>>>()?;
    StoneStatePair::with_canonical_labels(g)
}

/// ψ(Ω, g) = (B(Ω), s_g) with s_g(A) = g⁻¹(A). The operator is recovered
/// from s_g by pulling back singletons: x ∈ s_g({y}) iff σ(x) = y.
pub fn psi_object(pair: &StoneStatePair) -> Result<StateAlgebra> {
    let n = pair.len();
    let algebra = ProductMvAlgebra::boolean(n)?;
    let sigma = (0..n)
        .map(|x| {
            (0..n)
                .find(|&y| pair.preimage(&ClopenSet::new([y])).contains(x))
                .expect("g is total")
        })
        .collect();
    StateAlgebra::new(algebra, OperatorSpec::new(sigma)?)
}

/// φ(h): Ω(B′) → Ω(B), F′ ↦ h⁻¹(F′).
pub fn phi_morphism(h: &StateHom) -> Result<SpaceMorphism> {
    let (b, b_prime) = (h.source().algebra(), h.target().algebra());
    require_boolean(b)?;
    require_boolean(b_prime)?;
    let map = stone_space(b_prime)?
        .ultrafilters()
        .iter()
        .map(|f| identify_ultrafilter(b, |a| h.apply(a).map(|ha| f.contains(&ha)).unwrap_or(false)).map(|u| u.atom()))
        .collect::<Result<Vec<_>>>()?;
    SpaceMorphism::new(phi_object(h.target())?, phi_object(h.source())?, map)
}

/// ψ(f): B(Ω′) → B(Ω), A′ ↦ f⁻¹(A′). The coordinate map is recovered by
/// pulling back singletons of Ω′.
pub fn psi_morphism(f: &SpaceMorphism) -> Result<StateHom> {
    let n_prime = f.target().len();
    let source_map = (0..f.source().len())
        .map(|x| {
            (0..n_prime)
                .find(|&y| f.preimage(&ClopenSet::new([y])).contains(x))
                .expect("f is total")
        })
        .collect();
    StateHom::new(
        psi_object(f.target())?,
        psi_object(f.source())?,
        MvHom::new(n_prime, source_map)?,
    )
}

/// The finite witnesses that φ(h) is a morphism: f⁻¹(u(a)) = u(h(a)) for
/// every a, and g∘f = f∘g′.
pub fn phi_morphism_witnesses(h: &StateHom) -> Result<LawReport> {
    let f = phi_morphism(h)?;
    let (b, b_prime) = (h.source().algebra(), h.target().algebra());
    require_sweepable(b.dim())?;
    let (space, space_prime) = (stone_space(b)?, stone_space(b_prime)?);
    let mut r = LawReport::new();
    r.push(sweep("f⁻¹(u(a))=u(h(a))", b.elements(), |a| {
        let lhs = f.preimage(&space.u(&a));
        let rhs = space_prime.u(&h.apply(&a).ok()?);
        (lhs != rhs).then(|| format!("a={a}"))
    }));
    let (g, g_prime) = (f.target().clone(), f.source().clone());
    r.push(sweep("g∘f=f∘g′", 0..g_prime.len(), |x| {
        (g.apply(f.apply(x)) != f.apply(g_prime.apply(x))).then(|| format!("F′=F_{x}"))
    }));
    Ok(r)
}

/// The finite witnesses that ψ(f) is a morphism: it is A′ ↦ f⁻¹(A′), and
/// h∘s_{g′} = s_g∘h.
pub fn psi_morphism_witnesses(f: &SpaceMorphism) -> Result<LawReport> {
    let h = psi_morphism(f)?;
    let (n, n_prime) = (f.source().len(), f.target().len());
    require_sweepable(n_prime)?;
    let mut r = LawReport::new();
    r.push(sweep("ψ(f)(A′)=f⁻¹(A′)", ClopenSet::all(n_prime), |a| {
        let encoded = h.apply(&a.to_element(n_prime)).ok()?;
        (encoded != f.preimage(&a).to_element(n)).then(|| format!("A′={:?}", a.points()))
    }));
    r.push(sweep("h∘s_{g′}=s_g∘h", ClopenSet::all(n_prime), |a| {
        let lhs = f.preimage(&f.target().preimage(&a));
        let rhs = f.source().preimage(&f.preimage(&a));
        (lhs != rhs).then(|| format!("A′={:?}", a.points()))
    }));
    Ok(r)
}

fn kernel_elements(obj: &StateAlgebra) -> Vec<MvElement> {
    let alg = obj.algebra();
    alg.elements()
        .filter(|a| obj.apply_tau(a).map(|t| t == alg.zero()).unwrap_or(false))
        .collect()
}

/// For every ultrafilter F: F ∈ g(Ω(B)) ⇔ F ∩ Ker(τ) = ∅, and
/// g⁻¹(F) = {H : H ⊇ τ(F)}.
pub fn image_and_preimage_characterizations(obj: &StateAlgebra) -> Result<LawReport> {
    let alg = obj.algebra();
    require_boolean(alg)?;
    require_sweepable(alg.dim())?;
    let pair = phi_object(obj)?;
    let space = stone_space(alg)?;
    let kernel = kernel_elements(obj);
    let image = pair.image();
    let mut r = LawReport::new();
    r.push(sweep("F∈g(Ω(B)) ⇔ F∩Ker(τ)=∅", 0..space.len(), |x| {
        let f = space.ultrafilters()[x];
        let meets_kernel = kernel.iter().any(|a| f.contains(a));
        (image.contains(x) == meets_kernel).then(|| format!("F=F_{x}, in image: {}", image.contains(x)))
    }));
    r.push(sweep("g⁻¹(F)={H : H⊇τ(F)}", 0..space.len(), |x| {
        let f = space.ultrafilters()[x];
        let tau_f: Vec<MvElement> = alg
            .elements()
            .filter(|a| f.contains(a))
            .map(|a| obj.apply_tau(&a).expect("valid element"))
            .collect();
        let above: ClopenSet =
            ClopenSet::new((0..space.len()).filter(|&y| tau_f.iter().all(|t| space.ultrafilters()[y].contains(t))));
        let pre = pair.preimage(&ClopenSet::new([x]));
        (pre != above).then(|| format!("F=F_{x}: g⁻¹={:?}, above τ(F)={:?}", pre.points(), above.points()))
    }));
    Ok(r)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UEntry {
    pub element: Vec<u32>,
    pub clopen: Vec<usize>,
}

/// Witness that ψ(φ(B, τ)) ≅ (B, τ) via u.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraRoundTrip {
    pub atoms: usize,
    pub sigma: Vec<usize>,
    /// g on Ω(B).
    pub g: Vec<usize>,
    /// s_g on B(Ω(B)) as a coordinate map.
    pub s_g: Vec<usize>,
    pub u: Vec<UEntry>,
    pub checks: LawReport,
}

/// Witness that φ(ψ(Ω, g)) ≅ (Ω, g) via v.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceRoundTrip {
    pub labels: Vec<String>,
    pub g: Vec<usize>,
    /// g′ on Ω(B(Ω)), indexed by the atom {x} of each ultrafilter.
    pub g_prime: Vec<usize>,
    /// v(x) = {A : x ∈ A}, stored by the atom of B(Ω) generating it.
    pub v: Vec<usize>,
    pub checks: LawReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BooleanDualityCertificate {
    pub algebra_side: AlgebraRoundTrip,
    pub space_side: SpaceRoundTrip,
}

impl BooleanDualityCertificate {
    pub fn passed(&self) -> bool {
        self.algebra_side.checks.passed() && self.space_side.checks.passed()
    }

    /// Re-checks every identity from the stored maps alone.
    pub fn replay(&self) -> LawReport {
        let mut r = replay_algebra_side(&self.algebra_side);
        r.extend(replay_space_side(&self.space_side));
        r
    }
}

pub fn verify_algebra_roundtrip(obj: &StateAlgebra) -> Result<AlgebraRoundTrip> {
    let alg = obj.algebra();
    require_boolean(alg)?;
    let k = alg.dim();
    require_sweepable(k)?;
    let space = stone_space(alg)?;
    let pair = phi_object(obj)?;
    let dual = psi_object(&pair)?;
    let mut r = LawReport::new();

    r.push(sweep("g(F)=τ⁻¹(F)", 0..k, |x| {
        let f = space.ultrafilters()[x];
        ultrafilter_mismatch(alg, Ultrafilter::principal(pair.apply(x)), |a| {
            f.contains(&obj.apply_tau(a).expect("valid element"))
        })
        .map(|w| format!("F_{x}: {w}"))
    }));
    r.push(sweep("g∘g=g", 0..k, |x| {
        (pair.apply(pair.apply(x)) != pair.apply(x)).then(|| format!("F_{x}"))
    }));
    r.push(sweep("g⁻¹(u(a))=u(τ(a))", alg.elements(), |a| {
        let lhs = pair.preimage(&space.u(&a));
        let rhs = space.u(&obj.apply_tau(&a).expect("valid element"));
        (lhs != rhs).then(|| format!("a={a}"))
    }));
    r.push(sweep("s_g(A)=g⁻¹(A)", ClopenSet::all(k), |a| {
        let via_operator = dual.apply_tau(&a.to_element(k)).expect("valid element");
        (via_operator != pair.preimage(&a).to_element(k)).then(|| format!("A={:?}", a.points()))
    }));
    r.push(s_g_is_state_morphism(&pair));

    let u_entries: Vec<(MvElement, ClopenSet)> = alg
        .elements()
        .map(|a| {
            let ua = space.u(&a);
            (a, ua)
        })
        .collect();
    let u_of: HashMap<&MvElement, &ClopenSet> = u_entries.iter().map(|(a, s)| (a, s)).collect();
    let distinct: HashSet<&ClopenSet> = u_entries.iter().map(|(_, s)| s).collect();
    r.push(if distinct.len() == 1 << k && u_entries.len() == 1 << k {
        LawCheck::holds("u bijective", u_entries.len() as u64)
    } else {
        LawCheck::fails(
            "u bijective",
            format!("{} distinct images of {} elements", distinct.len(), u_entries.len()),
        )
    });
    r.push(sweep("u(0)=∅", [alg.zero()], |z| {
        (!u_of[&z].points().is_empty()).then(|| "u(0)≠∅".to_string())
    }));
    r.push(sweep("u(a*)=Ω∖u(a)", alg.elements(), |a| {
        let s = alg.star(&a).expect("valid element");
        (*u_of[&s] != u_of[&a].complement(k)).then(|| format!("a={a}"))
    }));
    r.push(sweep(
        "u(a⊕b)=u(a)∪u(b)",
        alg.elements().flat_map(|a| alg.elements().map(move |b| (a.clone(), b))),
        |(a, b)| {
            let s = alg.oplus(&a, &b).expect("valid element");
            (*u_of[&s] != u_of[&a].union(u_of[&b])).then(|| format!("a={a}, b={b}"))
        },
    ));
    r.push(sweep("u∘τ=s_g∘u", alg.elements(), |a| {
        let t = obj.apply_tau(&a).expect("valid element");
        (*u_of[&t] != pair.preimage(u_of[&a])).then(|| format!("a={a}"))
    }));

    Ok(AlgebraRoundTrip {
        atoms: k,
        sigma: obj.tau().sigma().to_vec(),
        g: pair.g().to_vec(),
        s_g: dual.tau().sigma().to_vec(),
        u: u_entries
            .iter()
            .map(|(a, s)| UEntry {
                element: a.numerators().to_vec(),
                clopen: s.points().iter().copied().collect(),
            })
            .collect(),
        checks: r,
    })
}

fn s_g_is_state_morphism(pair: &StoneStatePair) -> LawCheck {
    let n = pair.len();
    let s = |a: &ClopenSet| pair.preimage(a);
    let unary = ClopenSet::all(n).find_map(|a| {
        if s(&a.complement(n)) != s(&a).complement(n) {
            Some(format!("complement at A={:?}", a.points()))
        } else if s(&s(&a)) != s(&a) {
            Some(format!("idempotence at A={:?}", a.points()))
        } else {
            None
        }
    });
    let binary = || {
        ClopenSet::all(n).find_map(|a| {
            ClopenSet::all(n).find_map(|b| {
                (s(&a.union(&b)) != s(&a).union(&s(&b)))
                    .then(|| format!("union at A={:?}, B={:?}", a.points(), b.points()))
            })
        })
    };
    let empty = (!s(&ClopenSet::empty()).points().is_empty()).then(|| "s_g(∅)≠∅".to_string());
    match empty.or(unary).or_else(binary) {
        None => LawCheck::holds("s_g is a state-morphism-operator", 1u64 << (2 * n)),
        Some(w) => LawCheck::fails("s_g is a state-morphism-operator", w),
    }
}

pub fn verify_space_roundtrip(pair: &StoneStatePair) -> Result<SpaceRoundTrip> {
    let n = pair.len();
    require_sweepable(n)?;
    let dual = psi_object(pair)?;
    let b = dual.algebra();
    let back = phi_object(&dual)?;
    let mut r = LawReport::new();

    r.push(sweep("s_g(A)=g⁻¹(A)", ClopenSet::all(n), |a| {
        let via_operator = dual.apply_tau(&a.to_element(n)).expect("valid element");
        (via_operator != pair.preimage(&a).to_element(n)).then(|| format!("A={:?}", a.points()))
    }));
    r.push(s_g_is_state_morphism(pair));
    r.push(sweep("g′(F)=s_g⁻¹(F)", 0..n, |x| {
        let f = Ultrafilter::principal(x);
        ultrafilter_mismatch(b, Ultrafilter::principal(back.apply(x)), |a| {
            f.contains(&dual.apply_tau(a).expect("valid element"))
        })
        .map(|w| format!("F_{x}: {w}"))
    }));

    let mut v = Vec::with_capacity(n);
    let mut v_ok = LawCheck::holds("v(x)={A : x∈A} is an ultrafilter", n as u64);
    for x in 0..n {
        let member = |a: &MvElement| ClopenSet::from_element(a).contains(x);
        match identify_ultrafilter(b, member) {
            Ok(f) => {
                if let Some(w) = ultrafilter_mismatch(b, f, member) {
                    v_ok = LawCheck::fails(v_ok.law.clone(), format!("x={x}: {w}"));
                }
                v.push(f.atom());
            }
            Err(e) => {
                v_ok = LawCheck::fails(v_ok.law.clone(), format!("x={x}: {e}"));
                v.push(usize::MAX);
            }
        }
    }
    r.push(v_ok);
    r.push(bijection_check("v bijective", &v, n));
    r.push(sweep("v∘g=g′∘v", 0..n, |x| {
        let lhs = v.get(pair.apply(x)).copied();
        let rhs = v.get(x).and_then(|&vx| back.g().get(vx).copied());
        (lhs != rhs || lhs.is_none()).then(|| format!("x={}", pair.labels()[x]))
    }));

    Ok(SpaceRoundTrip {
        labels: pair.labels().to_vec(),
        g: pair.g().to_vec(),
        g_prime: back.g().to_vec(),
        v,
        checks: r,
    })
}

fn bijection_check(law: &str, map: &[usize], n: usize) -> LawCheck {
    let distinct: HashSet<usize> = map.iter().copied().filter(|&y| y < n).collect();
    if map.len() == n && distinct.len() == n {
        LawCheck::holds(law, n as u64)
    } else {
        LawCheck::fails(law, format!("{} distinct images in range of {}", distinct.len(), n))
    }
}

/// Both round trips starting from (B, τ).
pub fn verify_duality(obj: &StateAlgebra) -> Result<BooleanDualityCertificate> {
    Ok(BooleanDualityCertificate {
        algebra_side: verify_algebra_roundtrip(obj)?,
        space_side: verify_space_roundtrip(&phi_object(obj)?)?,
    })
}

/// Both round trips starting from (Ω, g).
pub fn verify_duality_from_space(pair: &StoneStatePair) -> Result<BooleanDualityCertificate> {
    Ok(BooleanDualityCertificate {
        algebra_side: verify_algebra_roundtrip(&psi_object(pair)?)?,
        space_side: verify_space_roundtrip(pair)?,
    })
}

fn idempotent_check(law: &str, map: &[usize]) -> LawCheck {
    sweep(law, 0..map.len(), |x| match map.get(x).and_then(|&y| map.get(y)) {
        Some(&yy) if yy == map[x] => None,
        _ => Some(format!("x={x}")),
    })
}

fn replay_algebra_side(c: &AlgebraRoundTrip) -> LawReport {
    let k = c.atoms;
    let mut r = LawReport::new();
    r.push(idempotent_check("replay: σ idempotent", &c.sigma));
    r.push(idempotent_check("replay: g idempotent", &c.g));
    r.push(idempotent_check("replay: s_g idempotent", &c.s_g));
    let shapes_ok = c.sigma.len() == k && c.g.len() == k && c.s_g.len() == k && k <= SWEEP_ATOM_CAP;
    if !shapes_ok {
        r.push(LawCheck::fails(
            "replay: shapes",
            "map lengths disagree with atom count",
        ));
        return r;
    }
    let mut u: HashMap<Vec<u32>, ClopenSet> = HashMap::new();
    for e in &c.u {
        u.insert(e.element.clone(), ClopenSet::new(e.clopen.iter().copied()));
    }
    let elements: Vec<Vec<u32>> = ClopenSet::all(k)
        .map(|s| s.to_element(k).numerators().to_vec())
        .collect();
    let covered = c.u.len() == 1 << k && elements.iter().all(|a| u.contains_key(a));
    let images: HashSet<&ClopenSet> = u.values().collect();
    let in_range = u.values().all(|s| s.points().iter().all(|&x| x < k));
    r.push(if covered && images.len() == 1 << k && in_range {
        LawCheck::holds("replay: u bijective", 1 << k)
    } else {
        LawCheck::fails("replay: u bijective", "u table incomplete or not injective")
    });
    if !covered {
        return r;
    }
    let star = |a: &[u32]| a.iter().map(|&x| 1 - x).collect::<Vec<u32>>();
    let oplus = |a: &[u32], b: &[u32]| a.iter().zip(b).map(|(&x, &y)| x.max(y)).collect::<Vec<u32>>();
    let tau = |a: &[u32]| c.sigma.iter().map(|&s| a[s]).collect::<Vec<u32>>();
    let s_g = |a: &ClopenSet| ClopenSet::new((0..k).filter(|&x| a.contains(c.s_g[x])));
    r.push(sweep("replay: u(0)=∅", [vec![0u32; k]], |z| {
        (!u[&z].points().is_empty()).then(|| "u(0)≠∅".into())
    }));
    r.push(sweep("replay: u(a*)=Ω∖u(a)", elements.iter(), |a| {
        (u[&star(a)] != u[a].complement(k)).then(|| format!("a={a:?}"))
    }));
    r.push(sweep(
        "replay: u(a⊕b)=u(a)∪u(b)",
        elements.iter().flat_map(|a| elements.iter().map(move |b| (a, b))),
        |(a, b)| (u[&oplus(a, b)] != u[a].union(&u[b])).then(|| format!("a={a:?}, b={b:?}")),
    ));
    r.push(sweep("replay: u∘τ=s_g∘u", elements.iter(), |a| {
        (u[&tau(a)] != s_g(&u[a])).then(|| format!("a={a:?}"))
    }));
    r.push(sweep("replay: g(F)=τ⁻¹(F)", 0..k, |x| {
        elements
            .iter()
            .find(|a| (tau(a)[x] == 1) != (a[c.g[x]] == 1))
            .map(|a| format!("F_{x}, a={a:?}"))
    }));
    r
}

fn replay_space_side(c: &SpaceRoundTrip) -> LawReport {
    let n = c.g.len();
    let mut r = LawReport::new();
    r.push(idempotent_check("replay: g idempotent", &c.g));
    r.push(idempotent_check("replay: g′ idempotent", &c.g_prime));
    r.push(bijection_check("replay: v bijective", &c.v, n));
    r.push(sweep("replay: v∘g=g′∘v", 0..n, |x| {
        let lhs = c.g.get(x).and_then(|&gx| c.v.get(gx));
        let rhs = c.v.get(x).and_then(|&vx| c.g_prime.get(vx));
        (lhs != rhs || lhs.is_none()).then(|| format!("x={x}"))
    }));
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hom::enumerate_state_homs;
    use crate::state_ops::enumerate_state_morphism_operators;

    fn boolean(sigma: &[usize]) -> StateAlgebra {
        StateAlgebra::from_parts(vec![1; sigma.len()], sigma.to_vec()).unwrap()
    }

    fn el(v: &[u32]) -> MvElement {
        MvElement::new(v.to_vec())
    }

    #[test]
    fn stone_space_of_three_atoms() {
        let b = ProductMvAlgebra::boolean(3).unwrap();
        let s = stone_space(&b).unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(s.u(&b.unit(1)), ClopenSet::new([1]));
        assert_eq!(s.u(&b.zero()), ClopenSet::empty());
        assert_eq!(s.u(&b.one()), ClopenSet::full(3));
        assert!(stone_space(&ProductMvAlgebra::from_orders(vec![2]).unwrap()).is_err());
    }

    #[test]
    fn u_preserves_joins_up_to_six_atoms() {
        for k in 1..=6 {
            let b = ProductMvAlgebra::boolean(k).unwrap();
            let s = stone_space(&b).unwrap();
            for x in b.elements() {
                for y in b.elements() {
                    assert_eq!(s.u(&b.join(&x, &y).unwrap()), s.u(&x).union(&s.u(&y)));
                }
            }
        }
    }

    #[test]
    fn phi_of_running_example() {
        let obj = boolean(&[0, 0, 2]);
        let pair = phi_object(&obj).unwrap();
        // oracle: τ⁻¹(F_x) by sweeping all 8 elements, matched against F_y
        let b = obj.algebra();
        for x in 0..3 {
            let pulled: BTreeSet<MvElement> = b.elements().filter(|a| obj.apply_tau(a).unwrap().get(x) == 1).collect();
            let y = (0..3)
                .find(|&y| pulled == b.elements().filter(|a| a.get(y) == 1).collect())
                .unwrap();
            assert_eq!(pair.apply(x), y);
        }
        assert_eq!(pair.g(), [0, 0, 2]);
        let s = stone_space(b).unwrap();
        for a in b.elements() {
            assert_eq!(pair.preimage(&s.u(&a)), s.u(&obj.apply_tau(&a).unwrap()));
        }
        let id = phi_object(&boolean(&[0, 1, 2])).unwrap();
        assert_eq!(id.g(), [0, 1, 2]);
    }

    #[test]
    fn psi_of_running_example() {
        let pair = StoneStatePair::with_canonical_labels(vec![0, 0, 2]).unwrap();
        let obj = psi_object(&pair).unwrap();
        assert_eq!(obj.tau().sigma(), [0, 0, 2]);
        for a in ClopenSet::all(3) {
            assert_eq!(
                obj.apply_tau(&a.to_element(3)).unwrap(),
                pair.preimage(&a).to_element(3)
            );
            assert_eq!(pair.preimage(&a.complement(3)), pair.preimage(&a).complement(3));
        }
        let id = StoneStatePair::with_canonical_labels(vec![0, 1]).unwrap();
        assert_eq!(psi_object(&id).unwrap().tau(), &OperatorSpec::identity(2));
    }

    #[test]
    fn pair_validation() {
        assert!(matches!(
            StoneStatePair::with_canonical_labels(vec![1, 0]),
            Err(Error::NotIdempotent { .. })
        ));
        assert!(matches!(
            StoneStatePair::new(vec!["a".into(), "a".into()], vec![0, 1]),
            Err(Error::DuplicateLabel(_))
        ));
        assert!(StoneStatePair::with_canonical_labels(vec![]).is_err());
        assert_eq!(
            StoneStatePair::with_canonical_labels(vec![0; 11]).unwrap().labels()[3],
            "03"
        );
    }

    #[test]
    fn sorting_by_label_relabels_g() {
        let p = StoneStatePair::new(vec!["c".into(), "a".into(), "b".into()], vec![1, 1, 2]).unwrap();
        let (sorted, order) = p.sorted_by_label();
        assert_eq!(sorted.labels(), ["a", "b", "c"]);
        assert_eq!(order, [1, 2, 0]);
        // c→a, a→a, b→b becomes a→a, b→b, c→a
        assert_eq!(sorted.g(), [0, 1, 0]);
    }

    fn lambda_hom() -> StateHom {
        // 2^{a,b,c} → 2^{p,q}, h(A) = λ⁻¹(A) with λ(p)=a, λ(q)=c
        StateHom::new(
            boolean(&[0, 0, 2]),
            boolean(&[0, 1]),
            MvHom::new(3, vec![0, 2]).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn phi_of_morphism_is_atom_map() {
        let h = lambda_hom();
        let f = phi_morphism(&h).unwrap();
        assert_eq!(f.map(), [0, 2]);
        // λ∘σ′ = σ∘λ
        let (sigma, sigma_p) = ([0, 0, 2], [0, 1]);
        for p in 0..2 {
            assert_eq!(f.apply(sigma_p[p]), sigma[f.apply(p)]);
        }
        assert!(phi_morphism_witnesses(&h).unwrap().passed());
        let id = StateHom::identity(&boolean(&[0, 0, 2]));
        assert_eq!(phi_morphism(&id).unwrap().map(), [0, 1, 2]);
    }

    #[test]
    fn psi_recovers_h() {
        let h = lambda_hom();
        let f = phi_morphism(&h).unwrap();
        let back = psi_morphism(&f).unwrap();
        // u, u′ are identities on this encoding, so ψ(φ(h)) must equal h
        for a in h.source().algebra().elements() {
            assert_eq!(back.apply(&a).unwrap(), h.apply(&a).unwrap());
        }
        assert!(psi_morphism_witnesses(&f).unwrap().passed());
        let pair = phi_object(&boolean(&[0, 0, 2])).unwrap();
        let id = psi_morphism(&SpaceMorphism::identity(&pair)).unwrap();
        assert_eq!(id.hom(), &MvHom::identity(3));
    }

    #[test]
    fn functors_reverse_composition() {
        let a = boolean(&[0, 0, 2]);
        let b = boolean(&[0, 0]);
        let c = boolean(&[0]);
        let mut pairs = 0;
        for h1 in enumerate_state_homs(&a, &b) {
            for h2 in enumerate_state_homs(&b, &c) {
                let lhs = phi_morphism(&h2.after(&h1).unwrap()).unwrap();
                let rhs = phi_morphism(&h1).unwrap().after(&phi_morphism(&h2).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
                let (f1, f2) = (phi_morphism(&h1).unwrap(), phi_morphism(&h2).unwrap());
                let lhs = psi_morphism(&f1.after(&f2).unwrap()).unwrap();
                let rhs = psi_morphism(&f2).unwrap().after(&psi_morphism(&f1).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
                pairs += 1;
            }
        }
        assert!(pairs > 0);
    }

    #[test]
    fn kernel_and_preimage_characterizations_on_running_example() {
        let obj = boolean(&[0, 0, 2]);
        let pair = phi_object(&obj).unwrap();
        let image = pair.image();
        assert!(!image.contains(1));
        assert!(image.contains(0) && image.contains(2));
        let kernel = kernel_elements(&obj);
        let b_atom = el(&[0, 1, 0]);
        assert!(kernel.contains(&b_atom) && Ultrafilter::principal(1).contains(&b_atom));
        for x in [0, 2] {
            assert!(!kernel.iter().any(|a| Ultrafilter::principal(x).contains(a)));
        }
        assert_eq!(pair.preimage(&ClopenSet::new([0])), ClopenSet::new([0, 1]));
        assert!(image_and_preimage_characterizations(&obj).unwrap().passed());

        let id = boolean(&[0, 1, 2]);
        assert_eq!(phi_object(&id).unwrap().image(), ClopenSet::full(3));
        assert_eq!(kernel_elements(&id), vec![el(&[0, 0, 0])]);
    }

    #[test]
    fn duality_certificates() {
        let cert = verify_duality(&boolean(&[0, 0, 2])).unwrap();
        assert!(cert.passed(), "{}{}", cert.algebra_side.checks, cert.space_side.checks);
        assert_eq!(cert.algebra_side.u.len(), 8);
        assert!(cert.replay().passed());

        let single = StoneStatePair::with_canonical_labels(vec![0]).unwrap();
        let cert = verify_duality_from_space(&single).unwrap();
        assert!(cert.passed() && cert.replay().passed());
    }

    #[test]
    fn corrupted_certificate_is_caught() {
        let cert = verify_duality(&boolean(&[0, 0, 2])).unwrap();
        let mut bad = cert.clone();
        bad.algebra_side.u[3].clopen = vec![0, 1, 2];
        assert!(!bad.replay().passed());
        let mut bad = cert.clone();
        bad.space_side.g_prime = vec![0, 0, 0];
        assert!(!bad.replay().passed());
        let mut bad = cert;
        bad.algebra_side.s_g = vec![0, 1, 2];
        assert!(!bad.replay().passed());
    }

    #[test]
    fn every_small_instance_round_trips() {
        for k in 1..=4 {
            let sig = crate::mv::ChainSignature::boolean(k).unwrap();
            for spec in enumerate_state_morphism_operators(&sig) {
                let obj = StateAlgebra::new(ProductMvAlgebra::boolean(k).unwrap(), spec).unwrap();
                let cert = verify_duality(&obj).unwrap();
                assert!(cert.passed());
            }
        }
    }
}
