//! Exact elements of the cyclotomic fields Q(zeta_n).
//!
//! An element is stored as a sparse map `exponent -> Rational` over the power
//! basis {1, zeta_n, ..., zeta_n^(phi(n)-1)} of Q(zeta_n) = Q[x]/Phi_n(x),
//! always fully reduced mod Phi_n with zero coefficients absent. On top of
//! the reduction two cheap conductor contractions are applied: an element
//! supported on exponent 0 moves to conductor 1, and a common factor g of the
//! conductor and all exponents is divided out (zeta_n^(g*e) = zeta_{n/g}^e).
//! The stored conductor therefore divides the construction conductor but is
//! not guaranteed minimal; equality always compares at a common conductor and
//! does not depend on contraction.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::poly::conductor_data;
use crate::exact::rootsum::RootSum;
use crate::exact::Rational;

#[derive(Debug, Clone)]
pub struct Cyclotomic {
    conductor: u64,
    coeffs: BTreeMap<u64, Rational>,
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Cyclotomic {
            conductor: 1,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Cyclotomic::integer(1)
    }

    pub fn integer(value: i64) -> Self {
        Cyclotomic::rational(Rational::from_integer(value.into()))
    }

    pub fn rational(value: Rational) -> Self {
        let mut coeffs = BTreeMap::new();
        if !value.is_zero() {
            coeffs.insert(0, value);
        }
        Cyclotomic {
            conductor: 1,
            coeffs,
        }
    }

    /// The canonical representation of zeta_n^k, with k reduced mod n.
    ///
    /// Fails with an invalid-conductor error for n = 0.
    pub fn root_of_unity(n: u64, k: i64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidConductor);
        }
        let e = k.rem_euclid(n as i64) as u64;
        let mut map = BTreeMap::new();
        map.insert(e, Rational::one());
        Cyclotomic::from_exponent_map(n, map)
    }

    /// Canonicalize an arbitrary exponent map at conductor n: exponents are
    /// reduced mod n, out-of-basis powers are folded through Phi_n, zeros are
    /// dropped and the conductor contracted where cheaply possible.
    pub(crate) fn from_exponent_map(n: u64, map: BTreeMap<u64, Rational>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidConductor);
        }
        let data = conductor_data(n);
        let mut dense = vec![Rational::zero(); data.degree];
        for (e, c) in map {
            if c.is_zero() {
                continue;
            }
            let e = (e % n) as usize;
            if e < data.degree {
                dense[e] += c;
            } else {
                let row = &data.power_rows[e - data.degree];
                for (i, r) in row.iter().enumerate() {
                    if !r.is_zero() {
                        dense[i] += r * &c;
                    }
                }
            }
        }
        let mut coeffs = BTreeMap::new();
        for (e, c) in dense.into_iter().enumerate() {
            if !c.is_zero() {
                coeffs.insert(e as u64, c);
            }
        }
        Ok(Cyclotomic::contract(n, coeffs))
    }

    /// Conductor contraction; expects an already reduced coefficient map.
    fn contract(n: u64, coeffs: BTreeMap<u64, Rational>) -> Self {
        if coeffs.is_empty() {
            return Cyclotomic::zero();
        }
        if coeffs.keys().all(|&e| e == 0) {
            return Cyclotomic {
                conductor: 1,
                coeffs,
            };
        }
        let mut g = n;
        for &e in coeffs.keys() {
            if e != 0 {
                g = g.gcd(&e);
            }
        }
        if g > 1 {
            let shrunk: BTreeMap<u64, Rational> =
                coeffs.into_iter().map(|(e, c)| (e / g, c)).collect();
            // Re-reduce: e/g may leave the power basis of the smaller field.
            return Cyclotomic::from_exponent_map(n / g, shrunk)
                .expect("contracted conductor stays positive");
        }
        Cyclotomic {
            conductor: n,
            coeffs,
        }
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub(crate) fn coeff_entries(&self) -> impl Iterator<Item = (u64, &Rational)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.to_rational().is_some_and(|q| q.is_one())
    }

    /// The rational value, if this element lies in Q.
    pub fn to_rational(&self) -> Option<Rational> {
        if self.coeffs.is_empty() {
            return Some(Rational::zero());
        }
        if self.coeffs.len() == 1 {
            if let Some(c) = self.coeffs.get(&0) {
                return Some(c.clone());
            }
        }
        None
    }

    /// Image under the field automorphism zeta_n -> zeta_n^(-1); involutive.
    pub fn conjugate(&self) -> Self {
        let n = self.conductor;
        let map: BTreeMap<u64, Rational> = self
            .coeffs
            .iter()
            .map(|(e, c)| ((n - e) % n, c.clone()))
            .collect();
        Cyclotomic::from_exponent_map(n, map).expect("conductor unchanged")
    }

    /// Image under zeta_n -> zeta_n^u for u coprime to the conductor.
    pub fn galois(&self, u: u64) -> Self {
        let n = self.conductor;
        assert!(
            (u % n).gcd(&n) == 1,
            "galois exponent must be a unit mod the conductor"
        );
        let map: BTreeMap<u64, Rational> = self
            .coeffs
            .iter()
            .map(|(e, c)| ((e * (u % n)) % n, c.clone()))
            .collect();
        Cyclotomic::from_exponent_map(n, map).expect("conductor unchanged")
    }

    /// Does this value lie in the subfield Q(zeta_m)?
    ///
    /// Checked by invariance under the automorphisms zeta_L -> zeta_L^u with
    /// u = 1 mod m, for L = lcm(conductor, m).
    pub fn lies_in(&self, m: u64) -> bool {
        assert!(m >= 1);
        let l = self.conductor.lcm(&m);
        if l == self.conductor && self.conductor == m {
            return true;
        }
        let embedded = self.embedded_at(l);
        let mut u = 1 + m;
        while u < l {
            if u.gcd(&l) == 1 && !embedded.galois(u).same_value(&embedded) {
                return false;
            }
            u += m;
        }
        true
    }

    /// Re-express at a conductor n that is a multiple of the current one.
    /// The result is re-canonicalized, so its stored conductor may contract
    /// back; use only through value-level operations.
    fn embedded_at(&self, n: u64) -> Cyclotomic {
        assert!(n % self.conductor == 0);
        let stride = n / self.conductor;
        let map: BTreeMap<u64, Rational> = self
            .coeffs
            .iter()
            .map(|(e, c)| (e * stride, c.clone()))
            .collect();
        Cyclotomic::from_exponent_map(n, map).expect("multiple of a positive conductor")
    }

    fn same_value(&self, other: &Cyclotomic) -> bool {
        if self.conductor == other.conductor {
            return self.coeffs == other.coeffs;
        }
        let l = self.conductor.lcm(&other.conductor);
        let a = self.embedded_at(l);
        let b = other.embedded_at(l);
        a.conductor == b.conductor && a.coeffs == b.coeffs
    }

    pub fn scaled(&self, factor: &Rational) -> Self {
        if factor.is_zero() {
            return Cyclotomic::zero();
        }
        let coeffs: BTreeMap<u64, Rational> = self
            .coeffs
            .iter()
            .map(|(e, c)| (*e, c * factor))
            .collect();
        // Scaling by a nonzero rational preserves canonical form.
        Cyclotomic {
            conductor: self.conductor,
            coeffs,
        }
    }

    fn binary<F>(&self, other: &Cyclotomic, f: F) -> Cyclotomic
    where
        F: FnOnce(&mut RootSum, &RootSum, &RootSum),
    {
        let l = self.conductor.lcm(&other.conductor);
        let a = RootSum::from_cyclotomic(self, l);
        let b = RootSum::from_cyclotomic(other, l);
        let mut acc = RootSum::zero(l);
        f(&mut acc, &a, &b);
        acc.reduce()
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        self.same_value(other)
    }
}

impl Eq for Cyclotomic {}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.binary(rhs, |acc, a, b| {
            acc.add_scaled(a, &Rational::one());
            acc.add_scaled(b, &Rational::one());
        })
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.binary(rhs, |acc, a, b| {
            acc.add_scaled(a, &Rational::one());
            acc.add_scaled(b, &(-Rational::one()));
        })
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.binary(rhs, |acc, a, b| acc.add_product(a, b, &Rational::one()))
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        self.scaled(&(-Rational::one()))
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl $trait for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, q: &Rational) -> fmt::Result {
    if q.denom().is_one() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Cyclotomic {
    /// Terms in ascending exponent order, e.g. `-1/2 + z7^2 + 3*z7^4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let n = self.conductor;
        for (i, (e, c)) in self.coeffs.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if *e == 0 {
                write_rational(f, &mag)?;
                continue;
            }
            if !mag.is_one() {
                write_rational(f, &mag)?;
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "z{n}")?;
            } else {
                write!(f, "z{n}^{e}")?;
            }
        }
        Ok(())
    }
}
