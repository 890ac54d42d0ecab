//! MV-homomorphisms between products of chains, and τ-homomorphisms.
//!
//! A unital homomorphism h: A → A′ between products of chains copies
//! coordinates: h(x)_{j′} = x_{λ(j′)} for a map λ from the coordinates of A′
//! to those of A, with n_{λ(j′)} | n′_{j′}. The same data describes
//! homomorphisms between rational cubes, where no divisibility is needed.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mv::{MvElement, ProductMvAlgebra};
use crate::rational::Rational;
use crate::state_ops::{cartesian, check_divisibility, check_map_range, copy_coordinates, StateAlgebra};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MvHom {
    domain_dim: usize,
    source: Vec<usize>,
}

impl MvHom {
    pub fn new(domain_dim: usize, source: Vec<usize>) -> Result<Self> {
        if domain_dim == 0 || source.is_empty() {
            return Err(Error::EmptyMap);
        }
        check_map_range(&source, domain_dim)?;
        Ok(Self { domain_dim, source })
    }

    pub fn identity(k: usize) -> Self {
        Self {
            domain_dim: k,
            source: (0..k).collect(),
        }
    }

    pub fn domain_dim(&self) -> usize {
        self.domain_dim
    }

    pub fn codomain_dim(&self) -> usize {
        self.source.len()
    }

    /// λ: coordinate of the codomain ↦ coordinate of the domain it copies.
    pub fn source_map(&self) -> &[usize] {
        &self.source
    }

    pub fn check_signatures(&self, domain: &ProductMvAlgebra, codomain: &ProductMvAlgebra) -> Result<()> {
        if domain.dim() != self.domain_dim {
            return Err(Error::SignatureMismatch {
                expected: self.domain_dim,
                found: domain.dim(),
            });
        }
        if codomain.dim() != self.codomain_dim() {
            return Err(Error::SignatureMismatch {
                expected: self.codomain_dim(),
                found: codomain.dim(),
            });
        }
        check_divisibility(domain.signature(), codomain.signature(), &self.source)
    }

    pub fn apply(&self, domain: &ProductMvAlgebra, codomain: &ProductMvAlgebra, a: &MvElement) -> Result<MvElement> {
        self.check_signatures(domain, codomain)?;
        domain.check(a)?;
        Ok(copy_coordinates(domain, codomain, &self.source, a))
    }

    /// The same map on vectors of rational values.
    pub fn apply_values(&self, a: &[Rational]) -> Result<Vec<Rational>> {
        if a.len() != self.domain_dim {
            return Err(Error::SignatureMismatch {
                expected: self.domain_dim,
                found: a.len(),
            });
        }
        Ok(self.source.iter().map(|&s| a[s]).collect())
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn after(&self, first: &MvHom) -> Result<MvHom> {
        if first.codomain_dim() != self.domain_dim {
            return Err(Error::SignatureMismatch {
                expected: self.domain_dim,
                found: first.codomain_dim(),
            });
        }
        Ok(MvHom {
            domain_dim: first.domain_dim,
            source: self.source.iter().map(|&s| first.source[s]).collect(),
        })
    }
}

/// A morphism (A, τ) → (A′, τ′): an MV-homomorphism with h∘τ = τ′∘h.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StateHom {
    source: StateAlgebra,
    target: StateAlgebra,
    hom: MvHom,
}

/// First codomain coordinate where σ∘λ and λ∘σ′ differ, which is exactly
/// where h∘τ and τ′∘h disagree on some element.
pub(crate) fn intertwining_violation(sigma: &[usize], lambda: &[usize], sigma_prime: &[usize]) -> Option<usize> {
    (0..lambda.len()).find(|&j| sigma[lambda[j]] != lambda[sigma_prime[j]])
}

impl StateHom {
    pub fn new(source: StateAlgebra, target: StateAlgebra, hom: MvHom) -> Result<Self> {
        hom.check_signatures(source.algebra(), target.algebra())?;
        if let Some(index) = intertwining_violation(source.tau().sigma(), hom.source_map(), target.tau().sigma()) {
            return Err(Error::NotIntertwining { index });
        }
        Ok(Self { source, target, hom })
    }

    pub fn identity(obj: &StateAlgebra) -> Self {
        Self {
            source: obj.clone(),
            target: obj.clone(),
            hom: MvHom::identity(obj.algebra().dim()),
        }
    }

    pub fn source(&self) -> &StateAlgebra {
        &self.source
    }

    pub fn target(&self) -> &StateAlgebra {
        &self.target
    }

    pub fn hom(&self) -> &MvHom {
        &self.hom
    }

    pub fn apply(&self, a: &MvElement) -> Result<MvElement> {
        self.hom.apply(self.source.algebra(), self.target.algebra(), a)
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &StateHom) -> Result<StateHom> {
        if first.target != self.source {
            return Err(Error::SignatureMismatch {
                expected: self.source.algebra().dim(),
                found: first.target.algebra().dim(),
            });
        }
        StateHom::new(first.source.clone(), self.target.clone(), self.hom.after(&first.hom)?)
    }
}

/// Every τ-homomorphism between two state algebras, by brute force over
/// coordinate maps.
pub fn enumerate_state_homs(source: &StateAlgebra, target: &StateAlgebra) -> Vec<StateHom> {
    let k = source.algebra().dim();
    let options: Vec<Vec<usize>> = (0..target.algebra().dim()).map(|_| (0..k).collect()).collect();
    cartesian(&options)
        .into_iter()
        .filter_map(|lambda| {
            let hom = MvHom::new(k, lambda).ok()?;
            StateHom::new(source.clone(), target.clone(), hom).ok()
        })
        .collect()
}
