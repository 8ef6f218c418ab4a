//! Cliques of type `(phi, eta, r)`: every consecutive difference lies in a
//! prescribed geometric band.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_rational::Ratio;

use crate::clique::OrderType;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeSpec {
    k: usize,
    /// `phi[i]` is `phi(i+1)`, values in `1..=k-1`.
    phi: Vec<usize>,
    eta: Ratio<u64>,
    r: u64,
}

impl TypeSpec {
    pub fn new(k: usize, phi: Vec<usize>, eta: Ratio<u64>, r: u64) -> Result<Self> {
        if k < 2 {
            return Err(Error::domain("k must be at least 2"));
        }
        if phi.len() > k - 1 {
            return Err(Error::domain(format!("phi has {} values but k - 1 = {}", phi.len(), k - 1)));
        }
        let mut seen = vec![false; k];
        for &v in &phi {
            if v == 0 || v >= k || seen[v] {
                return Err(Error::domain(format!("phi {phi:?} is not an injection into 1..={}", k - 1)));
            }
            seen[v] = true;
        }
        if *eta.numer() == 0 || eta >= Ratio::from_integer(1) {
            return Err(Error::domain(format!("eta = {eta} must lie in (0, 1)")));
        }
        if r == 0 {
            return Err(Error::domain("r must be positive"));
        }
        Ok(TypeSpec { k, phi, eta, r })
    }

    /// A `TypeSpec` with `h = k` and `phi = pi^{-1}`.
    pub fn from_order_type(pi: &OrderType, eta: Ratio<u64>, r: u64) -> Result<Self> {
        Self::new(pi.k(), pi.ranks().to_vec(), eta, r)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Clique size `h`.
    pub fn h(&self) -> usize {
        self.phi.len() + 1
    }

    pub fn phi(&self) -> &[usize] {
        &self.phi
    }

    pub fn eta(&self) -> Ratio<u64> {
        self.eta
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    /// When `h = k`, `phi` is a permutation and its inverse is the order
    /// type every clique of this spec has.
    pub fn order_type(&self) -> Option<OrderType> {
        if self.h() != self.k {
            return None;
        }
        Some(OrderType::new(self.phi.clone()).ok()?.inverse())
    }

    /// Whether `d` lies in `[eta^e r, eta^{e-1} r)`.
    pub fn in_band(&self, d: u64, e: usize) -> bool {
        let (a, b) = (BigUint::from(*self.eta.numer()), BigUint::from(*self.eta.denom()));
        let (d, r) = (BigUint::from(d), BigUint::from(self.r));
        let e = e as u32;
        &d * b.pow(e) >= &r * a.pow(e) && &d * b.pow(e - 1) < &r * a.pow(e - 1)
    }
}

/// Exact band test on every consecutive difference.
pub fn is_type_clique(vertices: &[i64], spec: &TypeSpec) -> Result<bool> {
    if vertices.len() != spec.h() {
        return Err(Error::domain(format!("expected {} vertices, got {}", spec.h(), vertices.len())));
    }
    if vertices.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::domain("vertices must be strictly increasing"));
    }
    Ok(vertices
        .windows(2)
        .zip(&spec.phi)
        .all(|(w, &e)| spec.in_band(w[1].abs_diff(w[0]), e)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn spec(phi: Vec<usize>, k: usize) -> TypeSpec {
        TypeSpec::new(k, phi, Ratio::new(1, 2), 16).unwrap()
    }

    #[test]
    fn band_examples() {
        let s = spec(vec![2, 1], 3);
        assert!(is_type_clique(&[0, 5, 14], &s).unwrap());
        assert!(!is_type_clique(&[0, 3, 14], &s).unwrap());
        // half-open: 8 is in the band of exponent 1, not 2
        assert!(!is_type_clique(&[0, 8, 16], &s).unwrap());
        assert!(is_type_clique(&[0, 4, 12], &s).unwrap());
        assert!(is_type_clique(&[7], &spec(vec![], 3)).unwrap());
        assert!(is_type_clique(&[0, 5], &s).is_err());
    }

    #[test]
    fn invalid_specs() {
        let half = Ratio::new(1, 2);
        assert!(TypeSpec::new(3, vec![1, 1], half, 4).is_err());
        assert!(TypeSpec::new(3, vec![3], half, 4).is_err());
        assert!(TypeSpec::new(3, vec![1], Ratio::new(1, 1), 4).is_err());
        assert!(TypeSpec::new(3, vec![1], half, 0).is_err());
        assert!(TypeSpec::new(3, vec![1, 2], half, 4).is_ok());
    }

    #[test]
    fn order_type_is_phi_inverse() {
        let s = spec(vec![2, 3, 1], 4);
        assert_eq!(s.order_type().unwrap().pi(), &[3, 1, 2]);
        assert!(spec(vec![2], 4).order_type().is_none());
        let pi = OrderType::new(vec![3, 1, 2]).unwrap();
        let t = TypeSpec::from_order_type(&pi, Ratio::new(1, 2), 16).unwrap();
        assert_eq!(t.phi(), &[2, 3, 1]);
    }

    fn perm(k: usize, seed: u64) -> Vec<usize> {
        let mut p: Vec<usize> = (1..k).collect();
        crate::rng::Rng::new(seed).shuffle(&mut p);
        p
    }

    proptest! {
        // Bands are disjoint, so band membership fixes the order of the
        // differences: a type-(phi, eta, r) clique has type phi^{-1}.
        #[test]
        fn band_cliques_have_order_type(k in 2usize..6, seed in any::<u64>(), num in 1u64..4, extra in 1u64..4,
                                         r in 1u64..400, offs in proptest::collection::vec(0u64..1000, 5), start in -50i64..50) {
            let eta = Ratio::new(num, num + extra);
            let s = TypeSpec::new(k, perm(k, seed), eta, r).unwrap();
            let mut v = vec![start];
            for (i, &e) in s.phi().iter().enumerate() {
                let lo = (eta.pow(e as i32) * Ratio::from_integer(r)).ceil().to_integer();
                let hi = eta.pow(e as i32 - 1) * Ratio::from_integer(r);
                let span = (hi.ceil().to_integer()).saturating_sub(lo).max(1);
                let d = lo.max(1) + offs[i] % span;
                v.push(v[i] + d as i64);
            }
            let ot = s.order_type().unwrap();
            if is_type_clique(&v, &s).unwrap() {
                prop_assert!(ot.accepts(&v));
            }
        }
    }
}
