//! Closed-form evaluation of the recoupling coefficients: quantum integers,
//! brackets, twist coefficients, theta and tetrahedron networks, and quantum
//! 6j-symbols.
//!
//! Every formula is written once against [`KauffmanEnv`] and so evaluates
//! both exactly in a cyclotomic context and generically over Q(A).

use std::sync::Mutex;

use crate::cyclo::CycloScalar;
use crate::error::{Result, TqftError};
use crate::laurent::{LaurentFraction, LaurentPoly};
use crate::theory::TheoryCtx;

/// A coefficient field containing the Kauffman variable A.
pub trait KauffmanEnv: Sync {
    type Elem: Clone + PartialEq + std::fmt::Debug;

    fn a_pow(&self, k: i64) -> Self::Elem;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn sub(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn neg(&self, x: &Self::Elem) -> Self::Elem;
    fn div(&self, x: &Self::Elem, y: &Self::Elem) -> Result<Self::Elem>;
    fn is_zero(&self, x: &Self::Elem) -> bool;
    /// Quantum integer [n].
    fn qint(&self, n: i64) -> Self::Elem;
    /// Quantum factorial [n]!.
    fn qfact(&self, n: i64) -> Result<Self::Elem>;
    /// The admissibility color bound, when specialized.
    fn color_bound(&self) -> Option<i64>;

    fn integer(&self, k: i64) -> Self::Elem {
        let one = self.one();
        let mut acc = self.zero();
        for _ in 0..k.unsigned_abs() {
            acc = self.add(&acc, &one);
        }
        if k < 0 {
            acc = self.neg(&acc);
        }
        acc
    }

    /// (-1)^k times x.
    fn sign_mul(&self, k: i64, x: Self::Elem) -> Self::Elem {
        if k.rem_euclid(2) == 0 {
            x
        } else {
            self.neg(&x)
        }
    }
}

impl KauffmanEnv for TheoryCtx {
    type Elem = CycloScalar;

    fn a_pow(&self, k: i64) -> CycloScalar {
        TheoryCtx::a_pow(self, k)
    }
    fn zero(&self) -> CycloScalar {
        TheoryCtx::zero(self)
    }
    fn one(&self) -> CycloScalar {
        TheoryCtx::one(self)
    }
    fn add(&self, x: &CycloScalar, y: &CycloScalar) -> CycloScalar {
        x.add(y)
    }
    fn sub(&self, x: &CycloScalar, y: &CycloScalar) -> CycloScalar {
        x.sub(y)
    }
    fn mul(&self, x: &CycloScalar, y: &CycloScalar) -> CycloScalar {
        x.mul(y)
    }
    fn neg(&self, x: &CycloScalar) -> CycloScalar {
        x.neg()
    }
    fn div(&self, x: &CycloScalar, y: &CycloScalar) -> Result<CycloScalar> {
        x.div(y)
    }
    fn is_zero(&self, x: &CycloScalar) -> bool {
        x.is_zero()
    }
    fn qint(&self, n: i64) -> CycloScalar {
        TheoryCtx::qint(self, n)
    }
    fn qfact(&self, n: i64) -> Result<CycloScalar> {
        TheoryCtx::qfact(self, n)
    }
    fn color_bound(&self) -> Option<i64> {
        Some(self.color_max())
    }
    fn integer(&self, k: i64) -> CycloScalar {
        TheoryCtx::integer(self, k)
    }
}

/// The generic environment: A is a free variable, coefficients live in Q(A)
/// and there is no color bound.
pub struct GenericA {
    qfact_memo: Mutex<Vec<LaurentFraction>>,
}

impl GenericA {
    pub fn new() -> GenericA {
        GenericA {
            qfact_memo: Mutex::new(Vec::new()),
        }
    }

    /// [n] as a plain Laurent polynomial.
    pub fn qint_poly(n: i64) -> LaurentPoly {
        if n < 0 {
            return Self::qint_poly(-n).neg();
        }
        let mut p = LaurentPoly::zero();
        for j in 0..n {
            p = p.add(&LaurentPoly::a_pow(2 * n - 2 - 4 * j));
        }
        p
    }
}

impl Default for GenericA {
    fn default() -> Self {
        Self::new()
    }
}

impl KauffmanEnv for GenericA {
    type Elem = LaurentFraction;

    fn a_pow(&self, k: i64) -> LaurentFraction {
        LaurentFraction::a_pow(k)
    }
    fn zero(&self) -> LaurentFraction {
        LaurentFraction::from_integer(0)
    }
    fn one(&self) -> LaurentFraction {
        LaurentFraction::from_integer(1)
    }
    fn add(&self, x: &LaurentFraction, y: &LaurentFraction) -> LaurentFraction {
        x.add(y)
    }
    fn sub(&self, x: &LaurentFraction, y: &LaurentFraction) -> LaurentFraction {
        x.sub(y)
    }
    fn mul(&self, x: &LaurentFraction, y: &LaurentFraction) -> LaurentFraction {
        x.mul(y)
    }
    fn neg(&self, x: &LaurentFraction) -> LaurentFraction {
        x.neg()
    }
    fn div(&self, x: &LaurentFraction, y: &LaurentFraction) -> Result<LaurentFraction> {
        x.div(y)
    }
    fn is_zero(&self, x: &LaurentFraction) -> bool {
        x.is_zero()
    }
    fn qint(&self, n: i64) -> LaurentFraction {
        LaurentFraction::from_poly(Self::qint_poly(n))
    }
    fn qfact(&self, n: i64) -> Result<LaurentFraction> {
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
    fn color_bound(&self) -> Option<i64> {
        None
    }
    fn integer(&self, k: i64) -> LaurentFraction {
        LaurentFraction::from_integer(k)
    }
}

/// Edge colors at a trivalent vertex.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ColorTriple(pub i64, pub i64, pub i64);

impl ColorTriple {
    /// Parity, triangle and (when bounded) level conditions.
    pub fn admissible(&self, bound: Option<i64>) -> bool {
        let ColorTriple(i, j, k) = *self;
        if i < 0 || j < 0 || k < 0 {
            return false;
        }
        if (i + j + k) % 2 != 0 {
            return false;
        }
        if (i - j).abs() > k || k > i + j {
            return false;
        }
        if let Some(cm) = bound {
            if i > cm || j > cm || k > cm || i + j + k > 2 * cm {
                return false;
            }
        }
        true
    }
}

pub fn admissible(ctx: &TheoryCtx, t: ColorTriple) -> bool {
    t.admissible(Some(ctx.color_max()))
}

/// <k> = (-1)^k [k+1].
pub fn bracket_in<K: KauffmanEnv>(env: &K, k: i64) -> K::Elem {
    env.sign_mul(k, env.qint(k + 1))
}

pub fn bracket(ctx: &TheoryCtx, k: i64) -> CycloScalar {
    bracket_in(ctx, k)
}

/// Delta_i, the value of the i-colored unknot: (-1)^i [i+1].
pub fn delta_i(ctx: &TheoryCtx, i: i64) -> CycloScalar {
    bracket_in(ctx, i)
}

fn internal_colors(a: i64, b: i64, c: i64) -> (i64, i64, i64) {
    ((b + c - a) / 2, (a + c - b) / 2, (a + b - c) / 2)
}

/// Twist eigenvalue for strands colored a, b fusing in channel c:
/// (-1)^k A^(ij - k(i+j+k+2)) in the internal colors of (a, b, c).
pub fn twist_coeff_in<K: KauffmanEnv>(env: &K, c: i64, a: i64, b: i64) -> Result<K::Elem> {
    if !ColorTriple(a, b, c).admissible(env.color_bound()) {
        return Err(TqftError::InadmissibleTriple(a, b, c));
    }
    let (i, j, k) = internal_colors(a, b, c);
    Ok(env.sign_mul(k, env.a_pow(i * j - k * (i + j + k + 2))))
}

pub fn twist_coeff(ctx: &TheoryCtx, c: i64, a: i64, b: i64) -> Result<CycloScalar> {
    twist_coeff_in(ctx, c, a, b)
}

/// Theta network <a,b,c>.
pub fn theta_in<K: KauffmanEnv>(env: &K, a: i64, b: i64, c: i64) -> Result<K::Elem> {
    if !ColorTriple(a, b, c).admissible(env.color_bound()) {
        return Err(TqftError::InadmissibleTriple(a, b, c));
    }
    let (i, j, k) = internal_colors(a, b, c);
    let num = env.mul(
        &env.mul(&env.qfact(i + j + k + 1)?, &env.qfact(i)?),
        &env.mul(&env.qfact(j)?, &env.qfact(k)?),
    );
    let den = env.mul(
        &env.qfact(i + j)?,
        &env.mul(&env.qfact(i + k)?, &env.qfact(j + k)?),
    );
    Ok(env.sign_mul(i + j + k, env.div(&num, &den)?))
}

pub fn theta(ctx: &TheoryCtx, a: i64, b: i64, c: i64) -> Result<CycloScalar> {
    theta_in(ctx, a, b, c)
}

/// Tetrahedron coefficient. Written with the half-perimeters a_j of the
/// four faces and the half-sums b_i over the three pairs of opposite
/// edges; opposite pairs in this labeling are (A,D), (B,C), (E,F).
pub fn tet_in<K: KauffmanEnv>(
    env: &K,
    ea: i64,
    eb: i64,
    ec: i64,
    ed: i64,
    ee: i64,
    ef: i64,
) -> Result<K::Elem> {
    let faces = [(ea, eb, ee), (eb, ed, ef), (ee, ed, ec), (ea, ec, ef)];
    for (x, y, z) in faces {
        if !ColorTriple(x, y, z).admissible(env.color_bound()) {
            return Err(TqftError::InadmissibleFace(x, y, z));
        }
    }
    let sigma = ea + eb + ec + ed + ee + ef;
    let lower = [
        (ea + eb + ee) / 2,
        (eb + ed + ef) / 2,
        (ee + ed + ec) / 2,
        (ea + ec + ef) / 2,
    ];
    let upper = [
        (sigma - ea - ed) / 2,
        (sigma - eb - ec) / 2,
        (sigma - ee - ef) / 2,
    ];
    let zeta_min = *lower.iter().max().unwrap();
    let zeta_max = *upper.iter().min().unwrap();
    debug_assert!(zeta_min <= zeta_max);

    let mut sum = env.zero();
    for zeta in zeta_min..=zeta_max {
        let top = env.qfact(zeta + 1)?;
        if env.is_zero(&top) {
            continue;
        }
        let mut den = env.one();
        for b in upper {
            den = env.mul(&den, &env.qfact(b - zeta)?);
        }
        for a in lower {
            den = env.mul(&den, &env.qfact(zeta - a)?);
        }
        let term = env.sign_mul(zeta, env.div(&top, &den)?);
        sum = env.add(&sum, &term);
    }

    let mut pref_num = env.one();
    for b in upper {
        for a in lower {
            pref_num = env.mul(&pref_num, &env.qfact(b - a)?);
        }
    }
    let mut pref_den = env.one();
    for e in [ea, eb, ec, ed, ee, ef] {
        pref_den = env.mul(&pref_den, &env.qfact(e)?);
    }
    Ok(env.mul(&env.div(&pref_num, &pref_den)?, &sum))
}

pub fn tet(
    ctx: &TheoryCtx,
    ea: i64,
    eb: i64,
    ec: i64,
    ed: i64,
    ee: i64,
    ef: i64,
) -> Result<CycloScalar> {
    tet_in(ctx, ea, eb, ec, ed, ee, ef)
}

/// Quantum 6j-symbol {a b i; c d j} = <i> tet(i,b,c;j,d,a) / (<i,a,d><i,b,c>).
pub fn sixj_in<K: KauffmanEnv>(
    env: &K,
    a: i64,
    b: i64,
    i: i64,
    c: i64,
    d: i64,
    j: i64,
) -> Result<K::Elem> {
    if !ColorTriple(i, a, d).admissible(env.color_bound()) {
        return Err(TqftError::InadmissibleTriple(i, a, d));
    }
    if !ColorTriple(i, b, c).admissible(env.color_bound()) {
        return Err(TqftError::InadmissibleTriple(i, b, c));
    }
    let th1 = theta_in(env, i, a, d)?;
    let th2 = theta_in(env, i, b, c)?;
    if env.is_zero(&th1) || env.is_zero(&th2) {
        return Err(TqftError::VanishingTheta);
    }
    // The tetrahedron in display order <i b c; j d a>, i.e. rows (i, b, c)
    // and (j, d, a), translated to the alphabetical argument order.
    let t = tet_in(env, i, b, d, j, c, a)?;
    env.div(&env.mul(&bracket_in(env, i), &t), &env.mul(&th1, &th2))
}

pub fn sixj(
    ctx: &TheoryCtx,
    a: i64,
    b: i64,
    i: i64,
    c: i64,
    d: i64,
    j: i64,
) -> Result<CycloScalar> {
    sixj_in(ctx, a, b, i, c, d, j)
}

/// The 2x2 change-of-tree matrix for two 1-colored strands against
/// a-colored spectators: rows are the (1,1)-channels {0, 2}, columns the
/// (a,1)-channels {a-1, a+1}.
pub fn fusion_matrix(ctx: &TheoryCtx, a: i64) -> Result<[[CycloScalar; 2]; 2]> {
    let mut out = [[ctx.zero(), ctx.zero()], [ctx.zero(), ctx.zero()]];
    for (ri, i) in [0i64, 2].iter().enumerate() {
        for (cj, j) in [a - 1, a + 1].iter().enumerate() {
            out[ri][cj] = sixj(ctx, a, 1, *i, 1, a, *j)?;
        }
    }
    Ok(out)
}
