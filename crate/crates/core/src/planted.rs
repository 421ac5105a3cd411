//! Planted instances `U (⊕ m_i ⊙ P_i) U*` with known answers.

use rand::Rng;

use crate::matrices::{ampl, direct_sum, random, CMat, MatrixTuple};

#[derive(Clone, Debug)]
pub struct Planted {
    pub tuple: MatrixTuple,
    /// `(atom, multiplicity)` in the order they were summed.
    pub parts: Vec<(MatrixTuple, usize)>,
    pub unitary: CMat,
}

impl Planted {
    /// `Σ m_i²`, the commutant dimension predicted by Schur's lemma.
    pub fn commutant_dim(&self) -> usize {
        self.parts.iter().map(|(_, m)| m * m).sum()
    }
}

/// Bounds for [`random_planted`].
#[derive(Clone, Copy, Debug)]
pub struct PlantedConfig {
    pub max_n: usize,
    pub max_atom_dim: usize,
    pub max_mult: usize,
    pub max_dim: usize,
    pub max_atoms: usize,
}

impl Default for PlantedConfig {
    fn default() -> Self {
        PlantedConfig { max_n: 4, max_atom_dim: 4, max_mult: 4, max_dim: 32, max_atoms: 4 }
    }
}

/// Conjugate `⊕ m_i ⊙ P_i` by a Haar unitary.
pub fn plant(parts: Vec<(MatrixTuple, usize)>, rng: &mut impl Rng) -> Planted {
    let n = parts[0].0.n();
    let mut sum = MatrixTuple::zeros(n, 0);
    for (p, m) in &parts {
        sum = direct_sum(&sum, &ampl(*m, p).expect("m >= 1")).expect("equal lengths");
    }
    let unitary = random::unitary(rng, sum.dim());
    Planted { tuple: sum.conjugate(&unitary), parts, unitary }
}

/// Random Gaussian atoms (irreducible and pairwise inequivalent with probability one).
pub fn random_planted(rng: &mut impl Rng, cfg: PlantedConfig) -> Planted {
    let n = rng.random_range(1..=cfg.max_n);
    let count = rng.random_range(1..=cfg.max_atoms);
    let mut parts = Vec::new();
    let mut used = 0;
    for _ in 0..count {
        let k = rng.random_range(1..=cfg.max_atom_dim);
        let m = rng.random_range(1..=cfg.max_mult);
        if used + k * m > cfg.max_dim {
            continue;
        }
        used += k * m;
        parts.push((random::tuple(rng, n, k), m));
    }
    if parts.is_empty() {
        parts.push((random::tuple(rng, n, 1), 1));
    }
    plant(parts, rng)
}
