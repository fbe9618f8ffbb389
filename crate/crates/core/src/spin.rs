//! Collective spin j = N/2 in the Dicke basis.
//!
//! States are labelled by the number of excited atoms `e`, so that
//! `Jz |e⟩ = (e − N/2) |e⟩`, `J+` maps `e → e + 1` and `J−` maps `e → e − 1`.

use crate::math::sqrt;
use crate::{Error, Result};

/// A symmetric Dicke state `|N/2, e − N/2⟩` with `e` excited atoms out of `N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DickeLabel {
    n_atoms: usize,
    excited: usize,
}

impl DickeLabel {
    pub fn new(n_atoms: usize, excited: usize) -> Result<Self> {
        if n_atoms == 0 {
            return Err(Error::InvalidInput("n_atoms must be at least 1"));
        }
        if excited > n_atoms {
            return Err(Error::InvalidInput("excited count exceeds n_atoms"));
        }
        Ok(DickeLabel { n_atoms, excited })
    }

    pub fn n_atoms(&self) -> usize {
        self.n_atoms
    }

    pub fn excited(&self) -> usize {
        self.excited
    }
}

/// Jz eigenvalue `e − N/2`.
pub fn jz_eigenvalue(label: DickeLabel) -> f64 {
    jz(label.n_atoms, label.excited)
}

/// Amplitude of `J+ |e⟩ = √((e+1)(N−e)) |e+1⟩`; zero at the top of the ladder.
pub fn jplus_coeff(label: DickeLabel) -> f64 {
    jplus(label.n_atoms, label.excited)
}

/// Amplitude of `J− |e⟩ = √(e(N−e+1)) |e−1⟩`; zero at the bottom of the ladder.
pub fn jminus_coeff(label: DickeLabel) -> f64 {
    jminus(label.n_atoms, label.excited)
}

// Unchecked forms used by the matrix builders, where 0 ≤ e ≤ N holds by loop bounds.

#[inline]
pub(crate) fn jz(n: usize, e: usize) -> f64 {
    e as f64 - 0.5 * n as f64
}

#[inline]
pub(crate) fn jplus(n: usize, e: usize) -> f64 {
    if e >= n {
        0.0
    } else {
        sqrt(((e + 1) * (n - e)) as f64)
    }
}

#[inline]
pub(crate) fn jminus(n: usize, e: usize) -> f64 {
    if e == 0 {
        0.0
    } else {
        sqrt((e * (n - e + 1)) as f64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn label(n: usize, e: usize) -> DickeLabel {
        DickeLabel::new(n, e).unwrap()
    }

    #[test]
    fn jz_examples() {
        assert_eq!(jz_eigenvalue(label(1, 0)), -0.5);
        assert_eq!(jz_eigenvalue(label(4, 4)), 2.0);
        assert_eq!(jz_eigenvalue(label(4, 1)), -1.0);
    }

    #[test]
    fn ladder_examples() {
        assert_eq!(jplus_coeff(label(1, 0)), 1.0);
        assert_eq!(jplus_coeff(label(4, 4)), 0.0);
        assert_eq!(jminus_coeff(label(1, 1)), 1.0);
        assert_eq!(jminus_coeff(label(8, 0)), 0.0);
    }

    #[test]
    fn invalid_label() {
        assert!(DickeLabel::new(3, 4).is_err());
        assert!(DickeLabel::new(0, 0).is_err());
    }

    proptest! {
        #[test]
        fn adjointness(n in 1usize..200, e_frac in 0.0f64..1.0) {
            let e = ((n as f64) * e_frac) as usize % n;
            prop_assert_eq!(jminus(n, e + 1), jplus(n, e));
        }

        #[test]
        fn commutator_and_casimir(n in 1usize..200, e_frac in 0.0f64..=1.0) {
            let e = ((n as f64) * e_frac).round() as usize;
            let (p, m, z) = (jplus(n, e), jminus(n, e), jz(n, e));
            // ⟨e|[J+, J−]|e⟩ = ⟨e|J+J−|e⟩ − ⟨e|J−J+|e⟩ = jminus² − jplus² = 2 jz
            prop_assert!((m * m - p * p - 2.0 * z).abs() < 1e-9 * (n * n) as f64);
            let j = 0.5 * n as f64;
            prop_assert!((z * z + 0.5 * (p * p + m * m) - j * (j + 1.0)).abs() < 1e-9 * (n * n) as f64);
        }
    }
}
