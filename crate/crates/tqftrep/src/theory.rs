//! Evaluation context: the root of unity A, the Hecke parameter q = A^-4,
//! the effective level (order of q) and the color bound derived from it.

use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::cyclo::{gcd_u64, CycloScalar};
use crate::error::{Result, TqftError};

/// All scalar evaluation happens relative to one of these. Quantum
/// integers and factorials are memoized here behind a lock, so a context
/// can be shared freely across threads.
#[derive(Debug)]
pub struct TheoryCtx {
    m: u64,
    s: u64,
    a: CycloScalar,
    q: CycloScalar,
    r_eff: u64,
    color_max: i64,
    qint_memo: Mutex<Vec<CycloScalar>>,
    qfact_memo: Mutex<Vec<CycloScalar>>,
}

impl Clone for TheoryCtx {
    fn clone(&self) -> Self {
        TheoryCtx {
            m: self.m,
            s: self.s,
            a: self.a.clone(),
            q: self.q.clone(),
            r_eff: self.r_eff,
            color_max: self.color_max,
            qint_memo: Mutex::new(self.qint_memo.lock().unwrap().clone()),
            qfact_memo: Mutex::new(self.qfact_memo.lock().unwrap().clone()),
        }
    }
}

impl PartialEq for TheoryCtx {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m && self.s == other.s
    }
}

impl TheoryCtx {
    /// A := zeta_m^s. Requires gcd(s, m) = 1 and an effective level of at
    /// least 3 so that the colors {0, 1} exist.
    pub fn new(m: u64, s: u64) -> Result<TheoryCtx> {
        if m < 3 {
            return Err(TqftError::ConductorTooSmall(m));
        }
        if gcd_u64(s % m, m) != 1 {
            return Err(TqftError::NotCoprime { s, m });
        }
        let a = CycloScalar::primitive_root(m, s % m)?;
        let q = a.pow(-4)?;
        let r_eff = q
            .root_of_unity_order()?
            .expect("a power of a root of unity is a root of unity");
        debug_assert_eq!(r_eff, m / gcd_u64(m, 4));
        if r_eff < 3 {
            return Err(TqftError::LevelTooSmall { r_eff });
        }
        let color_max = r_eff as i64 - 2;
        let ctx = TheoryCtx {
            m,
            s,
            a,
            q,
            r_eff,
            color_max,
            qint_memo: Mutex::new(Vec::new()),
            qfact_memo: Mutex::new(Vec::new()),
        };
        // Delta_i = (-1)^i [i+1] must be nonzero for every color in range.
        for i in 0..=color_max {
            if ctx.qint(i + 1).is_zero() {
                return Err(TqftError::InvalidInput(format!(
                    "[{}] vanishes although {} <= colorMax",
                    i + 1,
                    i
                )));
            }
        }
        Ok(ctx)
    }

    /// SU(2) preset: A of order 4r, so ord(A^-4) = r.
    pub fn su2_level(r: u64) -> Result<TheoryCtx> {
        TheoryCtx::new(4 * r, 1)
    }

    /// SO(3) preset: A of order 2r for odd r, which also gives ord(A^-4) = r.
    pub fn so3_level(r: u64) -> Result<TheoryCtx> {
        if r % 2 == 0 {
            return Err(TqftError::InvalidInput(format!(
                "so3 preset needs odd r, got {r}"
            )));
        }
        TheoryCtx::new(2 * r, 1)
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn s(&self) -> u64 {
        self.s
    }

    pub fn a(&self) -> &CycloScalar {
        &self.a
    }

    pub fn q(&self) -> &CycloScalar {
        &self.q
    }

    pub fn r_eff(&self) -> u64 {
        self.r_eff
    }

    pub fn color_max(&self) -> i64 {
        self.color_max
    }

    /// A^k via the precomputed power table; k may be negative.
    pub fn a_pow(&self, k: i64) -> CycloScalar {
        let e = (self.s as i64 as i128 * k as i128).rem_euclid(self.m as i128) as i64;
        CycloScalar::root_power(self.m, e).expect("valid conductor")
    }

    /// q^k = A^(-4k).
    pub fn q_pow(&self, k: i64) -> CycloScalar {
        self.a_pow(-4 * k)
    }

    pub fn zero(&self) -> CycloScalar {
        CycloScalar::zero(self.m).expect("valid conductor")
    }

    pub fn one(&self) -> CycloScalar {
        CycloScalar::one(self.m).expect("valid conductor")
    }

    pub fn integer(&self, k: i64) -> CycloScalar {
        CycloScalar::from_integer(self.m, k).expect("valid conductor")
    }

    /// Quantum integer [n] = (A^2n - A^-2n)/(A^2 - A^-2), memoized for n >= 0.
    pub fn qint(&self, n: i64) -> CycloScalar {
        if n < 0 {
            return self.qint(-n).neg();
        }
        let n = n as usize;
        let mut memo = self.qint_memo.lock().unwrap();
        while memo.len() <= n {
            let k = memo.len() as i64;
            // [k] written as the geometric sum A^(2k-2) + A^(2k-6) + ... + A^(2-2k)
            // to avoid dividing by A^2 - A^-2.
            let mut v = self.zero();
            for j in 0..k {
                v = v.add(&self.a_pow(2 * k - 2 - 4 * j));
            }
            memo.push(v);
        }
        memo[n].clone()
    }

    /// Quantum factorial [n]! = [1][2]...[n], memoized.
    pub fn qfact(&self, n: i64) -> Result<CycloScalar> {
        if n < 0 {
            return Err(TqftError::NegativeFactorial(n));
        }
        let n = n as usize;
        let mut memo = self.qfact_memo.lock().unwrap();
        if memo.is_empty() {
            memo.push(self.one());
        }
        while memo.len() <= n {
            let k = memo.len() as i64;
            let next = memo.last().unwrap().mul(&self.qint(k));
            memo.push(next);
        }
        Ok(memo[n].clone())
    }
}

#[derive(Serialize, Deserialize)]
struct CtxJson {
    m: u64,
    s: u64,
}

impl Serialize for TheoryCtx {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        CtxJson { m: self.m, s: self.s }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for TheoryCtx {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = CtxJson::deserialize(deserializer)?;
        TheoryCtx::new(raw.m, raw.s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn level_derivation() {
        let ctx = TheoryCtx::new(20, 1).unwrap();
        assert_eq!(ctx.r_eff(), 5);
        assert_eq!(ctx.color_max(), 3);
        let ctx = TheoryCtx::new(40, 1).unwrap();
        assert_eq!(ctx.r_eff(), 10);
        let ctx = TheoryCtx::su2_level(8).unwrap();
        assert_eq!(ctx.r_eff(), 8);
        assert_eq!(ctx.m(), 32);
        let ctx = TheoryCtx::so3_level(7).unwrap();
        assert_eq!(ctx.r_eff(), 7);
        assert_eq!(ctx.m(), 14);
    }

    #[test]
    fn rejects_degenerate_levels() {
        assert!(TheoryCtx::new(4, 1).is_err());
        assert!(TheoryCtx::new(8, 1).is_err());
        assert!(TheoryCtx::new(20, 2).is_err());
        assert!(TheoryCtx::so3_level(6).is_err());
    }

    #[test]
    fn q_is_a_to_minus_four() {
        let ctx = TheoryCtx::new(20, 3).unwrap();
        assert_eq!(ctx.q(), &ctx.a().pow(-4).unwrap());
        assert_eq!(ctx.q_pow(2), ctx.q().mul(ctx.q()));
        assert_eq!(ctx.a_pow(-3), ctx.a().pow(-3).unwrap());
    }

    #[test]
    fn qint_vanishes_exactly_at_level_multiples() {
        let ctx = TheoryCtx::new(20, 1).unwrap();
        for n in 0..=12 {
            assert_eq!(ctx.qint(n).is_zero(), n % 5 == 0, "n = {n}");
        }
        assert!(ctx.qint(1).is_one());
        assert_eq!(ctx.qint(-3), ctx.qint(3).neg());
    }
}
