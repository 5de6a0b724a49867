use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::support::SupportSet;

/// The tuple `(m, n, s, k, t)` together with the quantities derived from it.
///
/// `v = 2ms + t` is the order of the cyclic group, `ell = 2ms/t + 1` is the
/// index of the subgroup of order `t`, so that `v = t * ell`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawParameters", into = "RawParameters")]
pub struct Parameters {
    m: u64,
    n: u64,
    s: u64,
    k: u64,
    t: u64,
    v: u64,
    ell: u64,
}

#[derive(Serialize, Deserialize)]
struct RawParameters {
    m: u64,
    n: u64,
    s: u64,
    k: u64,
    t: u64,
}

impl TryFrom<RawParameters> for Parameters {
    type Error = Error;
    fn try_from(r: RawParameters) -> Result<Self> {
        Parameters::derive(r.m, r.n, r.s, r.k, r.t)
    }
}

impl From<Parameters> for RawParameters {
    fn from(p: Parameters) -> Self {
        RawParameters {
            m: p.m,
            n: p.n,
            s: p.s,
            k: p.k,
            t: p.t,
        }
    }
}

impl Parameters {
    /// Validates `ms = nk` and `t | 2ms` and computes `v` and `ell`.
    pub fn derive(m: u64, n: u64, s: u64, k: u64, t: u64) -> Result<Self> {
        if m == 0 || n == 0 || s == 0 || k == 0 || t == 0 {
            return Err(Error::NonPositive);
        }
        let ms = m.checked_mul(s).ok_or(Error::Overflow)?;
        let nk = n.checked_mul(k).ok_or(Error::Overflow)?;
        if ms != nk {
            return Err(Error::DimensionMismatch { ms, nk });
        }
        let two_ms = ms.checked_mul(2).ok_or(Error::Overflow)?;
        if two_ms % t != 0 {
            return Err(Error::InvalidT { t, two_ms });
        }
        let v = two_ms.checked_add(t).ok_or(Error::Overflow)?;
        // Entries are stored as i64; the largest magnitude is floor(v/2).
        if v / 2 > i64::MAX as u64 {
            return Err(Error::Overflow);
        }
        let ell = two_ms / t + 1;
        debug_assert_eq!(ms + t / 2, v / 2);
        debug_assert_eq!(v, t * ell);
        Ok(Parameters {
            m,
            n,
            s,
            k,
            t,
            v,
            ell,
        })
    }

    pub fn m(&self) -> u64 {
        self.m
    }
    pub fn n(&self) -> u64 {
        self.n
    }
    pub fn s(&self) -> u64 {
        self.s
    }
    pub fn k(&self) -> u64 {
        self.k
    }
    pub fn t(&self) -> u64 {
        self.t
    }
    pub fn v(&self) -> u64 {
        self.v
    }
    pub fn ell(&self) -> u64 {
        self.ell
    }
    pub fn half_t(&self) -> u64 {
        self.t / 2
    }
    pub fn ms(&self) -> u64 {
        self.m * self.s
    }

    /// Largest absolute value an entry may take: `ms + floor(t/2) = floor(v/2)`.
    pub fn max_abs(&self) -> u64 {
        self.ms() + self.half_t()
    }

    /// The same tuple with rows and columns exchanged.
    pub fn transposed(&self) -> Parameters {
        Parameters {
            m: self.n,
            n: self.m,
            s: self.k,
            k: self.s,
            ..*self
        }
    }
}

impl std::fmt::Display for Parameters {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "H_{}({},{};{},{})",
            self.t, self.m, self.n, self.s, self.k
        )
    }
}

/// `[1, ms + floor(t/2)]` minus the first `floor(t/2)` positive multiples of `ell`.
pub fn target_support(p: &Parameters) -> SupportSet {
    let ell = p.ell();
    let values = (1..=p.max_abs())
        .filter(|x| !(x % ell == 0 && x / ell <= p.half_t()))
        .collect();
    SupportSet::from_sorted_unique(values)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derive_examples() {
        let p = Parameters::derive(6, 12, 8, 4, 24).unwrap();
        assert_eq!((p.v(), p.ell()), (120, 5));
        let p = Parameters::derive(9, 9, 8, 8, 12).unwrap();
        assert_eq!((p.v(), p.ell()), (156, 13));
        let p = Parameters::derive(4, 4, 4, 4, 32).unwrap();
        assert_eq!((p.v(), p.ell()), (64, 2));
    }

    #[test]
    fn derive_errors() {
        assert!(matches!(
            Parameters::derive(6, 12, 8, 5, 24),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            Parameters::derive(6, 12, 8, 4, 7),
            Err(Error::InvalidT { .. })
        ));
        assert!(matches!(
            Parameters::derive(0, 12, 8, 4, 1),
            Err(Error::NonPositive)
        ));
        assert!(matches!(
            Parameters::derive(u64::MAX, u64::MAX, 2, 2, 1),
            Err(Error::Overflow)
        ));
    }

    #[test]
    fn target_support_examples() {
        let p = Parameters::derive(6, 12, 8, 4, 24).unwrap();
        let expect: Vec<u64> = (1..=60).filter(|x| x % 5 != 0).collect();
        assert_eq!(target_support(&p).as_slice(), &expect[..]);

        let p = Parameters::derive(4, 4, 4, 4, 1).unwrap();
        assert_eq!(p.ell(), 33);
        let expect: Vec<u64> = (1..=16).collect();
        assert_eq!(target_support(&p).as_slice(), &expect[..]);

        let p = Parameters::derive(5, 10, 8, 4, 10).unwrap();
        assert_eq!(p.ell(), 9);
        let expect: Vec<u64> = (1..=45).filter(|x| x % 9 != 0).collect();
        assert_eq!(target_support(&p).as_slice(), &expect[..]);
    }

    #[test]
    fn odd_t_keeps_values_past_last_multiple() {
        // t = 5: ell = 25, support [1,62] \ {25, 50}
        let p = Parameters::derive(6, 15, 10, 4, 5).unwrap();
        let s = target_support(&p);
        assert_eq!(s.len(), 60);
        assert!(!s.contains(25) && !s.contains(50) && s.contains(62));
    }
}
