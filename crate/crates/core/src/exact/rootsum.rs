//! Unreduced sums of roots of unity.
//!
//! A `RootSum` is a rational combination of n-th roots `zeta_n^e` held as a
//! dense coefficient vector over exponents [0, n), *not* reduced to the power
//! basis. Exponent arithmetic (products, shifts, conjugation) is exact
//! modular arithmetic, so long accumulations (DFTs, inner products, induced
//! characters) can run over the group-ring form and pay for one canonical
//! reduction at the end. Conductors in this crate stay small, so dense
//! storage beats maps.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::exact::cyclotomic::Cyclotomic;
use crate::exact::Rational;

#[derive(Debug, Clone)]
pub(crate) struct RootSum {
    n: u64,
    coeffs: Vec<Rational>,
}

impl RootSum {
    pub fn zero(n: u64) -> Self {
        assert!(n >= 1);
        RootSum {
            n,
            coeffs: vec![Rational::zero(); n as usize],
        }
    }

    #[cfg(test)]
    pub fn modulus(&self) -> u64 {
        self.n
    }

    /// Embed a canonical element of Q(zeta_d) with d | n.
    pub fn from_cyclotomic(a: &Cyclotomic, n: u64) -> Self {
        let d = a.conductor();
        assert!(n % d == 0, "cannot embed conductor {d} into {n}");
        let stride = n / d;
        let mut out = RootSum::zero(n);
        for (e, c) in a.coeff_entries() {
            out.coeffs[(e * stride) as usize] = c.clone();
        }
        out
    }

    pub fn add_root(&mut self, exp: u64, coeff: &Rational) {
        if !coeff.is_zero() {
            self.coeffs[(exp % self.n) as usize] += coeff;
        }
    }

    fn nonzero(&self) -> impl Iterator<Item = (u64, &Rational)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| (e as u64, c))
    }

    /// self += scale * other (same modulus).
    pub fn add_scaled(&mut self, other: &RootSum, scale: &Rational) {
        assert_eq!(self.n, other.n);
        if scale.is_zero() {
            return;
        }
        for (e, c) in other.nonzero() {
            self.coeffs[e as usize] += c * scale;
        }
    }

    /// self += scale * other * zeta_n^shift (same modulus).
    pub fn add_shifted(&mut self, other: &RootSum, shift: u64, scale: &Rational) {
        assert_eq!(self.n, other.n);
        if scale.is_zero() {
            return;
        }
        let shift = shift % self.n;
        for (e, c) in other.nonzero() {
            let target = ((e + shift) % self.n) as usize;
            self.coeffs[target] += c * scale;
        }
    }

    /// self += scale * a * b (same modulus), multiplying by exponent addition.
    pub fn add_product(&mut self, a: &RootSum, b: &RootSum, scale: &Rational) {
        assert_eq!(self.n, a.n);
        assert_eq!(self.n, b.n);
        if scale.is_zero() {
            return;
        }
        for (ea, ca) in a.nonzero() {
            let cs = ca * scale;
            for (eb, cb) in b.nonzero() {
                self.coeffs[((ea + eb) % self.n) as usize] += &cs * cb;
            }
        }
    }

    /// Multiply by zeta_n^s (s may be any integer).
    #[cfg(test)]
    pub fn shifted(&self, s: i64) -> RootSum {
        let shift = s.rem_euclid(self.n as i64) as u64;
        let mut out = RootSum::zero(self.n);
        out.add_shifted(self, shift, &Rational::from_integer(1.into()));
        out
    }

    /// Image under zeta -> zeta^{-1}.
    pub fn conjugated(&self) -> RootSum {
        let mut out = RootSum::zero(self.n);
        for (e, c) in self.nonzero() {
            out.coeffs[((self.n - e) % self.n) as usize] = c.clone();
        }
        out
    }

    /// Reduce to the canonical power-basis form.
    pub fn reduce(&self) -> Cyclotomic {
        let map: BTreeMap<u64, Rational> = self
            .nonzero()
            .map(|(e, c)| (e, c.clone()))
            .collect();
        Cyclotomic::from_exponent_map(self.n, map).expect("modulus is positive by construction")
    }
}
