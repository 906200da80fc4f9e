//! Exact arithmetic in cyclotomic fields Q(zeta_m).
//!
//! Elements are stored in the power basis 1, zeta, ..., zeta^(phi(m)-1)
//! reduced modulo the m-th cyclotomic polynomial, as an integer coefficient
//! vector over a single positive denominator. That form is canonical, so
//! equality is a plain coefficient comparison.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num::bigint::Sign;
use num::{BigInt, BigRational, Complex, Integer, One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Result, TqftError};

pub type Complex64 = Complex<f64>;

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u64(b, a % b)
    }
}

pub fn lcm_u64(a: u64, b: u64) -> u64 {
    a / gcd_u64(a, b) * b
}

/// Euler totient by trial division.
pub fn euler_phi(n: u64) -> u64 {
    let mut n_left = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n_left {
        if n_left % p == 0 {
            while n_left % p == 0 {
                n_left /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n_left > 1 {
        result -= result / n_left;
    }
    result
}

pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Precomputed data for one conductor: the cyclotomic polynomial and
/// reduction rows for products and arbitrary powers of zeta.
pub struct CycloTable {
    pub m: u64,
    pub phi: usize,
    /// Monic Phi_m, low to high, length phi+1.
    pub min_poly: Vec<BigInt>,
    /// zeta^k mod Phi_m for k in 0..m, each of length phi.
    power_rows: Vec<Vec<BigInt>>,
    /// zeta^(phi+j) mod Phi_m for j in 0..phi-1 (enough for products).
    overflow_rows: Vec<Vec<BigInt>>,
    /// Residues coprime to m, ascending.
    pub units: Vec<u64>,
}

/// Divide polynomials exactly; `div` must be monic. Panics if not exact.
fn poly_div_exact(num: &[BigInt], div: &[BigInt]) -> Vec<BigInt> {
    let dn = num.len() - 1;
    let dd = div.len() - 1;
    assert!(div[dd].is_one(), "divisor must be monic");
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); dn - dd + 1];
    for i in (0..=dn - dd).rev() {
        let c = rem[i + dd].clone();
        if c.is_zero() {
            continue;
        }
        quot[i] = c.clone();
        for (j, d) in div.iter().enumerate() {
            rem[i + j] -= &c * d;
        }
    }
    assert!(rem.iter().all(|c| c.is_zero()), "division not exact");
    quot
}

fn cyclotomic_poly(m: u64, cache: &mut HashMap<u64, Vec<BigInt>>) -> Vec<BigInt> {
    if let Some(p) = cache.get(&m) {
        return p.clone();
    }
    // x^m - 1 over the product of Phi_d for proper divisors d of m.
    let mut num = vec![BigInt::zero(); m as usize + 1];
    num[0] = -BigInt::one();
    num[m as usize] = BigInt::one();
    let mut poly = num;
    for d in 1..m {
        if m % d == 0 {
            let phi_d = cyclotomic_poly(d, cache);
            poly = poly_div_exact(&poly, &phi_d);
        }
    }
    cache.insert(m, poly.clone());
    poly
}

impl CycloTable {
    fn build(m: u64) -> CycloTable {
        let mut cache = HashMap::new();
        let min_poly = cyclotomic_poly(m, &mut cache);
        let phi = min_poly.len() - 1;
        // Iterate x^k mod Phi_m by shift-and-reduce.
        let top = std::cmp::max(m as usize, 2 * phi - 1);
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(top);
        let mut row = vec![BigInt::zero(); phi];
        row[0] = BigInt::one();
        rows.push(row.clone());
        for _ in 1..top {
            let lead = row[phi - 1].clone();
            for i in (1..phi).rev() {
                row[i] = row[i - 1].clone();
            }
            row[0] = BigInt::zero();
            if !lead.is_zero() {
                for i in 0..phi {
                    row[i] -= &lead * &min_poly[i];
                }
            }
            rows.push(row.clone());
        }
        let power_rows = rows[..m as usize].to_vec();
        let overflow_rows = rows[phi..2 * phi - 1].to_vec();
        let units = (1..=m).filter(|t| gcd_u64(*t, m) == 1).collect();
        CycloTable {
            m,
            phi,
            min_poly,
            power_rows,
            overflow_rows,
            units,
        }
    }

    /// zeta^k reduced, k taken mod m.
    pub fn zeta_pow_row(&self, k: i64) -> &[BigInt] {
        let k = k.rem_euclid(self.m as i64) as usize;
        &self.power_rows[k]
    }

    /// Reduce a raw convolution of length 2*phi-1 into the power basis.
    fn reduce_conv(&self, conv: &mut Vec<BigInt>) -> Vec<BigInt> {
        let phi = self.phi;
        let mut out: Vec<BigInt> = conv[..phi].to_vec();
        for j in phi..conv.len() {
            let c = std::mem::take(&mut conv[j]);
            if c.is_zero() {
                continue;
            }
            for (i, r) in self.overflow_rows[j - phi].iter().enumerate() {
                if !r.is_zero() {
                    out[i] += &c * r;
                }
            }
        }
        out
    }
}

static TABLES: OnceLock<Mutex<HashMap<u64, Arc<CycloTable>>>> = OnceLock::new();

pub fn cyclo_table(m: u64) -> Result<Arc<CycloTable>> {
    if m < 3 {
        return Err(TqftError::ConductorTooSmall(m));
    }
    let tables = TABLES.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = tables.lock().unwrap();
    let entry = guard
        .entry(m)
        .or_insert_with(|| Arc::new(CycloTable::build(m)));
    Ok(Arc::clone(entry))
}

/// An element of Q(zeta_m) in canonical reduced form: integer numerator
/// vector of length phi(m) over a positive denominator with content 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycloScalar {
    m: u64,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CycloScalar {
    fn normalized(m: u64, mut num: Vec<BigInt>, mut den: BigInt) -> CycloScalar {
        assert!(!den.is_zero(), "zero denominator");
        if den.is_negative() {
            den = -den;
            for c in num.iter_mut() {
                *c = -std::mem::take(c);
            }
        }
        let mut g = den.clone();
        for c in &num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if !g.is_one() {
            den /= &g;
            for c in num.iter_mut() {
                *c = std::mem::take(c) / &g;
            }
        }
        CycloScalar { m, num, den }
    }

    pub fn zero(m: u64) -> Result<CycloScalar> {
        let t = cyclo_table(m)?;
        Ok(CycloScalar {
            m,
            num: vec![BigInt::zero(); t.phi],
            den: BigInt::one(),
        })
    }

    pub fn one(m: u64) -> Result<CycloScalar> {
        Self::from_rational(m, BigRational::one())
    }

    pub fn from_rational(m: u64, r: BigRational) -> Result<CycloScalar> {
        let t = cyclo_table(m)?;
        let mut num = vec![BigInt::zero(); t.phi];
        num[0] = r.numer().clone();
        Ok(Self::normalized(m, num, r.denom().clone()))
    }

    pub fn from_integer(m: u64, k: i64) -> Result<CycloScalar> {
        Self::from_rational(m, BigRational::from_integer(BigInt::from(k)))
    }

    /// zeta_m^s; requires gcd(s, m) = 1 so the result is a primitive root.
    pub fn primitive_root(m: u64, s: u64) -> Result<CycloScalar> {
        if m < 3 {
            return Err(TqftError::ConductorTooSmall(m));
        }
        if gcd_u64(s % m, m) != 1 {
            return Err(TqftError::NotCoprime { s, m });
        }
        Self::root_power(m, s as i64)
    }

    /// zeta_m^k for any integer k (not necessarily coprime).
    pub fn root_power(m: u64, k: i64) -> Result<CycloScalar> {
        let t = cyclo_table(m)?;
        let num = t.zeta_pow_row(k).to_vec();
        Ok(Self::normalized(m, num, BigInt::one()))
    }

    pub fn conductor(&self) -> u64 {
        self.m
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one()
            && self.num[0].is_one()
            && self.num[1..].iter().all(|c| c.is_zero())
    }

    pub fn is_rational(&self) -> Option<BigRational> {
        if self.num[1..].iter().all(|c| c.is_zero()) {
            Some(BigRational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    /// Coordinates as exact rationals, lowest power first.
    pub fn coords(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|n| BigRational::new(n.clone(), self.den.clone()))
            .collect()
    }

    pub fn from_coords(m: u64, coords: &[BigRational]) -> Result<CycloScalar> {
        let t = cyclo_table(m)?;
        if coords.len() != t.phi {
            return Err(TqftError::InvalidInput(format!(
                "expected {} coordinates for conductor {}, got {}",
                t.phi,
                m,
                coords.len()
            )));
        }
        let mut den = BigInt::one();
        for c in coords {
            den = den.lcm(c.denom());
        }
        let num = coords
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        Ok(Self::normalized(m, num, den))
    }

    /// Lift into Q(zeta_target); target must be a multiple of m.
    pub fn lift(&self, target: u64) -> Result<CycloScalar> {
        if target == self.m {
            return Ok(self.clone());
        }
        assert_eq!(target % self.m, 0, "lift target must be a multiple");
        let t = cyclo_table(target)?;
        let step = (target / self.m) as i64;
        let mut num = vec![BigInt::zero(); t.phi];
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, r) in t.zeta_pow_row(step * i as i64).iter().enumerate() {
                if !r.is_zero() {
                    num[j] += c * r;
                }
            }
        }
        Ok(Self::normalized(target, num, self.den.clone()))
    }

    fn common(a: &CycloScalar, b: &CycloScalar) -> Result<(CycloScalar, CycloScalar)> {
        if a.m == b.m {
            Ok((a.clone(), b.clone()))
        } else {
            let l = lcm_u64(a.m, b.m);
            Ok((a.lift(l)?, b.lift(l)?))
        }
    }

    pub fn add(&self, other: &CycloScalar) -> CycloScalar {
        let (a, b) = Self::common(self, other).expect("conductor lift");
        let g = a.den.gcd(&b.den);
        let fa = &b.den / &g;
        let fb = &a.den / &g;
        let num = a
            .num
            .iter()
            .zip(b.num.iter())
            .map(|(x, y)| x * &fa + y * &fb)
            .collect();
        CycloScalar::normalized(a.m, num, &a.den * &fa)
    }

    pub fn sub(&self, other: &CycloScalar) -> CycloScalar {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> CycloScalar {
        CycloScalar {
            m: self.m,
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &CycloScalar) -> CycloScalar {
        let (a, b) = Self::common(self, other).expect("conductor lift");
        let t = cyclo_table(a.m).expect("table");
        let phi = t.phi;
        let mut conv = vec![BigInt::zero(); 2 * phi - 1];
        for (i, x) in a.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.num.iter().enumerate() {
                if !y.is_zero() {
                    conv[i + j] += x * y;
                }
            }
        }
        let num = t.reduce_conv(&mut conv);
        CycloScalar::normalized(a.m, num, &a.den * &b.den)
    }

    pub fn scale(&self, r: &BigRational) -> CycloScalar {
        let num = self.num.iter().map(|c| c * r.numer()).collect();
        CycloScalar::normalized(self.m, num, &self.den * r.denom())
    }

    /// Multiplicative inverse via the Galois norm: the product of all
    /// nontrivial conjugates divided by the rational norm.
    pub fn inv(&self) -> Result<CycloScalar> {
        if self.is_zero() {
            return Err(TqftError::DivisionByZero);
        }
        let t = cyclo_table(self.m)?;
        let mut conj_prod = CycloScalar::one(self.m)?;
        for &u in &t.units {
            if u == 1 {
                continue;
            }
            conj_prod = conj_prod.mul(&self.galois(u)?);
        }
        let norm = self.mul(&conj_prod);
        let norm_rat = norm
            .is_rational()
            .expect("norm of a cyclotomic element is rational");
        if norm_rat.is_zero() {
            return Err(TqftError::DivisionByZero);
        }
        Ok(conj_prod.scale(&norm_rat.recip()))
    }

    pub fn div(&self, other: &CycloScalar) -> Result<CycloScalar> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, k: i64) -> Result<CycloScalar> {
        if k == 0 {
            return CycloScalar::one(self.m);
        }
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = CycloScalar::one(self.m)?;
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq);
            }
        }
        Ok(acc)
    }

    /// The Galois automorphism sigma_t: zeta -> zeta^t, t coprime to m.
    pub fn galois(&self, t: u64) -> Result<CycloScalar> {
        if gcd_u64(t % self.m, self.m) != 1 {
            return Err(TqftError::NotCoprime { s: t, m: self.m });
        }
        let table = cyclo_table(self.m)?;
        let mut num = vec![BigInt::zero(); table.phi];
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let row = table.zeta_pow_row((t as i64) * (i as i64));
            for (j, r) in row.iter().enumerate() {
                if !r.is_zero() {
                    num[j] += c * r;
                }
            }
        }
        Ok(Self::normalized(self.m, num, self.den.clone()))
    }

    /// Complex conjugation (zeta -> zeta^-1).
    pub fn conj(&self) -> CycloScalar {
        self.galois(self.m - 1).expect("m-1 is coprime to m")
    }

    /// Multiplicative order if this is a root of unity in Q(zeta_m).
    /// All such roots satisfy x^lcm(2, m) = 1.
    pub fn root_of_unity_order(&self) -> Result<Option<u64>> {
        if self.is_zero() {
            return Err(TqftError::ZeroInput);
        }
        let big = lcm_u64(2, self.m);
        if !self.pow(big as i64)?.is_one() {
            return Ok(None);
        }
        let mut ord = big;
        for p in prime_factors(big) {
            while ord % p == 0 && self.pow((ord / p) as i64)?.is_one() {
                ord /= p;
            }
        }
        Ok(Some(ord))
    }

    /// Numerical evaluation at zeta_m -> exp(2 pi i k / m), gcd(k, m) = 1.
    pub fn embed(&self, k: u64) -> Result<Complex64> {
        if gcd_u64(k % self.m, self.m) != 1 {
            return Err(TqftError::NotCoprime { s: k, m: self.m });
        }
        let theta = 2.0 * std::f64::consts::PI * (k as f64) / (self.m as f64);
        let zeta = Complex64::new(theta.cos(), theta.sin());
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.num.iter().rev() {
            acc = acc * zeta + bigint_to_f64(c);
        }
        Ok(acc / bigint_to_f64(&self.den))
    }
}

fn bigint_to_f64(x: &BigInt) -> f64 {
    // to_f64 on BigInt is exact for small values and rounds otherwise.
    use num::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}

impl fmt::Debug for CycloScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclo(m={}; ", self.m)?;
        let mut first = true;
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "{}*z^{}", c, i)?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " / {})", self.den)
    }
}

impl fmt::Display for CycloScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
struct CycloJson {
    m: u64,
    coeffs: Vec<String>,
}

impl Serialize for CycloScalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let coeffs = self.coords().iter().map(rational_to_string).collect();
        CycloJson { m: self.m, coeffs }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CycloScalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = CycloJson::deserialize(deserializer)?;
        let coords: std::result::Result<Vec<BigRational>, D::Error> = raw
            .coeffs
            .iter()
            .map(|s| parse_rational(s).map_err(D::Error::custom))
            .collect();
        CycloScalar::from_coords(raw.m, &coords?).map_err(D::Error::custom)
    }
}

pub fn rational_to_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let parse_int = |txt: &str| -> Result<BigInt> {
        txt.parse::<BigInt>()
            .map_err(|e| TqftError::InvalidInput(format!("bad integer {txt:?}: {e}")))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let den = parse_int(d)?;
            if den.is_zero() {
                return Err(TqftError::DivisionByZero);
            }
            Ok(BigRational::new(parse_int(n)?, den))
        }
        None => Ok(BigRational::from_integer(parse_int(s)?)),
    }
}

/// Sign helper for (-1)^k.
pub fn neg_one_pow(k: i64) -> BigInt {
    if k.rem_euclid(2) == 0 {
        BigInt::one()
    } else {
        BigInt::from(-1)
    }
}

pub fn bigint_sign(x: &BigInt) -> i32 {
    match x.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}
