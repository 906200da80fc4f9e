//! The Laurent ring Q[A, A^-1] of the generic (unspecialized) Kauffman
//! variable, plus its fraction field for coefficients that only become
//! polynomial after cancellation.

use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::cyclo::CycloScalar;
use crate::error::{Result, TqftError};
use crate::theory::TheoryCtx;

/// Finite map from exponent to rational coefficient; zeros are never stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, BigRational>,
}

impl LaurentPoly {
    pub fn zero() -> LaurentPoly {
        LaurentPoly::default()
    }

    pub fn one() -> LaurentPoly {
        LaurentPoly::monomial(0, BigRational::one())
    }

    pub fn monomial(exp: i64, coeff: BigRational) -> LaurentPoly {
        let mut coeffs = BTreeMap::new();
        if !coeff.is_zero() {
            coeffs.insert(exp, coeff);
        }
        LaurentPoly { coeffs }
    }

    pub fn a_pow(exp: i64) -> LaurentPoly {
        Self::monomial(exp, BigRational::one())
    }

    pub fn from_integer(k: i64) -> LaurentPoly {
        Self::monomial(0, BigRational::from_integer(BigInt::from(k)))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&0).map_or(false, |c| c.is_one())
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn coeff(&self, exp: i64) -> BigRational {
        self.coeffs.get(&exp).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &BigRational)> {
        self.coeffs.iter()
    }

    fn insert_add(coeffs: &mut BTreeMap<i64, BigRational>, exp: i64, val: BigRational) {
        if val.is_zero() {
            return;
        }
        match coeffs.entry(exp) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(val);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += val;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut coeffs = self.coeffs.clone();
        for (e, c) in &other.coeffs {
            Self::insert_add(&mut coeffs, *e, c.clone());
        }
        LaurentPoly { coeffs }
    }

    pub fn sub(&self, other: &LaurentPoly) -> LaurentPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut coeffs = BTreeMap::new();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &other.coeffs {
                Self::insert_add(&mut coeffs, e1 + e2, c1 * c2);
            }
        }
        LaurentPoly { coeffs }
    }

    pub fn scale(&self, r: &BigRational) -> LaurentPoly {
        if r.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, c * r)).collect(),
        }
    }

    pub fn shift(&self, k: i64) -> LaurentPoly {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn pow(&self, mut k: u32) -> LaurentPoly {
        let mut acc = LaurentPoly::one();
        let mut sq = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&sq);
            }
            k >>= 1;
            if k > 0 {
                sq = sq.mul(&sq);
            }
        }
        acc
    }

    /// Specialize A to the context's root of unity.
    pub fn eval_cyclo(&self, ctx: &TheoryCtx) -> CycloScalar {
        let mut acc = CycloScalar::zero(ctx.m()).expect("valid conductor");
        for (e, c) in &self.coeffs {
            acc = acc.add(&ctx.a_pow(*e).scale(c));
        }
        acc
    }

    /// Dense coefficients with the minimum exponent shifted to zero.
    fn to_dense(&self) -> (i64, Vec<BigRational>) {
        if self.is_zero() {
            return (0, Vec::new());
        }
        let lo = self.min_exp().unwrap();
        let hi = self.max_exp().unwrap();
        let mut dense = vec![BigRational::zero(); (hi - lo + 1) as usize];
        for (e, c) in &self.coeffs {
            dense[(e - lo) as usize] = c.clone();
        }
        (lo, dense)
    }

    fn from_dense(lo: i64, dense: &[BigRational]) -> LaurentPoly {
        let mut coeffs = BTreeMap::new();
        for (i, c) in dense.iter().enumerate() {
            if !c.is_zero() {
                coeffs.insert(lo + i as i64, c.clone());
            }
        }
        LaurentPoly { coeffs }
    }

    /// Greatest common divisor up to units (powers of A and rationals).
    /// Result is normalized: integer primitive coefficients, nonzero
    /// constant term, positive leading coefficient.
    pub fn gcd(&self, other: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return other.normalized_unit();
        }
        if other.is_zero() {
            return self.normalized_unit();
        }
        let (_, mut a) = self.to_dense();
        let (_, mut b) = other.to_dense();
        while !b.iter().all(|c| c.is_zero()) {
            let r = poly_rem(&a, &b);
            a = b;
            b = r;
        }
        Self::from_dense(0, &a).normalized_unit()
    }

    /// Strip the A-power and rational content; keep sign of the leading term.
    fn normalized_unit(&self) -> LaurentPoly {
        if self.is_zero() {
            return LaurentPoly::zero();
        }
        let lo = self.min_exp().unwrap();
        let shifted = self.shift(-lo);
        let mut den_lcm = BigInt::one();
        for c in shifted.coeffs.values() {
            den_lcm = num::Integer::lcm(&den_lcm, c.denom());
        }
        let mut ints: Vec<BigInt> = shifted
            .coeffs
            .values()
            .map(|c| c.numer() * (&den_lcm / c.denom()))
            .collect();
        let mut g = BigInt::zero();
        for v in &ints {
            g = num::Integer::gcd(&g, v);
        }
        if ints.last().map_or(false, |c| c.is_negative()) {
            g = -g;
        }
        for v in ints.iter_mut() {
            *v = std::mem::take(v) / &g;
        }
        let mut coeffs = BTreeMap::new();
        for ((e, _), v) in shifted.coeffs.iter().zip(ints) {
            if !v.is_zero() {
                coeffs.insert(*e, BigRational::from_integer(v));
            }
        }
        LaurentPoly { coeffs }
    }

    /// Exact division; errors if the remainder is nonzero.
    pub fn div_exact(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        if other.is_zero() {
            return Err(TqftError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(LaurentPoly::zero());
        }
        let (lo_a, a) = self.to_dense();
        let (lo_b, b) = other.to_dense();
        let (q, r) = poly_divmod(&a, &b);
        if !r.iter().all(|c| c.is_zero()) {
            return Err(TqftError::InvalidInput("inexact Laurent division".into()));
        }
        Ok(Self::from_dense(lo_a - lo_b, &q))
    }
}

fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let db = b.iter().rposition(|c| !c.is_zero()).expect("nonzero divisor");
    let mut rem = a.to_vec();
    let da = match rem.iter().rposition(|c| !c.is_zero()) {
        Some(d) => d,
        None => return (vec![], vec![]),
    };
    if da < db {
        return (vec![], rem);
    }
    let lead = b[db].clone();
    let mut quot = vec![BigRational::zero(); da - db + 1];
    for i in (0..=da - db).rev() {
        let c = &rem[i + db] / &lead;
        if c.is_zero() {
            continue;
        }
        quot[i] = c.clone();
        for (j, bj) in b.iter().enumerate().take(db + 1) {
            let delta = &c * bj;
            rem[i + j] -= delta;
        }
    }
    (quot, rem)
}

fn poly_rem(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let (_, mut r) = poly_divmod(a, b);
    // Trim and make monic to keep the Euclidean chain tame.
    while r.last().map_or(false, |c| c.is_zero()) {
        r.pop();
    }
    if let Some(lead) = r.last().cloned() {
        for c in r.iter_mut() {
            *c = &*c / &lead;
        }
    }
    r
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "({c})A^{e}")?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A ratio of Laurent polynomials in canonical reduced form: the
/// denominator has nonzero constant term, positive integer leading
/// coefficient, and is coprime to the numerator.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LaurentFraction {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl LaurentFraction {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<LaurentFraction> {
        if den.is_zero() {
            return Err(TqftError::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: LaurentPoly, den: LaurentPoly) -> LaurentFraction {
        if num.is_zero() {
            return LaurentFraction {
                num: LaurentPoly::zero(),
                den: LaurentPoly::one(),
            };
        }
        let g = num.gcd(&den);
        let mut n = num.div_exact(&g).expect("gcd divides");
        let mut d = den.div_exact(&g).expect("gcd divides");
        // Move the denominator's unit part (A-power and rational) into the
        // numerator so the denominator is a normalized polynomial.
        let lo = d.min_exp().unwrap();
        d = d.shift(-lo);
        n = n.shift(-lo);
        let d_norm = d.normalized_unit();
        let unit = d.div_exact(&d_norm).expect("unit factor");
        debug_assert_eq!(unit.coeffs.len(), 1);
        let (ue, uc) = unit.coeffs.iter().next().map(|(e, c)| (*e, c.clone())).unwrap();
        n = n.shift(-ue).scale(&uc.recip());
        LaurentFraction { num: n, den: d_norm }
    }

    pub fn from_poly(p: LaurentPoly) -> LaurentFraction {
        LaurentFraction {
            num: p,
            den: LaurentPoly::one(),
        }
    }

    pub fn from_integer(k: i64) -> LaurentFraction {
        Self::from_poly(LaurentPoly::from_integer(k))
    }

    pub fn a_pow(exp: i64) -> LaurentFraction {
        Self::from_poly(LaurentPoly::a_pow(exp))
    }

    pub fn numer(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denom(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn add(&self, other: &LaurentFraction) -> LaurentFraction {
        let num = self
            .num
            .mul(&other.den)
            .add(&other.num.mul(&self.den));
        Self::reduce(num, self.den.mul(&other.den))
    }

    pub fn sub(&self, other: &LaurentFraction) -> LaurentFraction {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> LaurentFraction {
        LaurentFraction {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &LaurentFraction) -> LaurentFraction {
        Self::reduce(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn inv(&self) -> Result<LaurentFraction> {
        if self.is_zero() {
            return Err(TqftError::DivisionByZero);
        }
        Ok(Self::reduce(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &LaurentFraction) -> Result<LaurentFraction> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn eval_cyclo(&self, ctx: &TheoryCtx) -> Result<CycloScalar> {
        let d = self.den.eval_cyclo(ctx);
        if d.is_zero() {
            return Err(TqftError::SpecializationPole);
        }
        self.num.eval_cyclo(ctx).div(&d)
    }
}
