//! The exact braid-group representation on the path spaces V(n, m): basis
//! enumeration, the local rule for generator matrices, word evaluation,
//! pure-braid elements, Dehn-twist scalars, and relation verification.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cyclo::CycloScalar;
use crate::error::{Result, TqftError};
use crate::matrix::CycloMatrix;
use crate::recoupling::KauffmanEnv;
use crate::theory::TheoryCtx;

/// A basis label of V(n, m): unit-step color path p_0 = 0, ..., p_n = m.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct PathVector(pub Vec<i64>);

impl PathVector {
    pub fn len_n(&self) -> usize {
        self.0.len() - 1
    }
}

impl fmt::Display for PathVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// A word in the braid generators, letters (index in 1..n-1, exponent +-1).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BraidWord {
    pub n: usize,
    pub letters: Vec<(usize, i8)>,
}

impl BraidWord {
    pub fn new(n: usize, letters: Vec<(usize, i8)>) -> Result<BraidWord> {
        for &(i, e) in &letters {
            if i == 0 || i >= n {
                return Err(TqftError::GeneratorOutOfRange { index: i, n });
            }
            if e != 1 && e != -1 {
                return Err(TqftError::InvalidInput(format!(
                    "letter exponent must be +-1, got {e}"
                )));
            }
        }
        Ok(BraidWord { n, letters })
    }

    pub fn empty(n: usize) -> BraidWord {
        BraidWord {
            n,
            letters: Vec::new(),
        }
    }

    /// Exponent sum.
    pub fn writhe(&self) -> i64 {
        self.letters.iter().map(|&(_, e)| e as i64).sum()
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            n: self.n,
            letters: self
                .letters
                .iter()
                .rev()
                .map(|&(i, e)| (i, -e))
                .collect(),
        }
    }

    /// Parse "g1 g2^-1 g3^2" (exponents expand into unit letters).
    pub fn parse(n: usize, text: &str) -> Result<BraidWord> {
        let mut letters = Vec::new();
        for tok in text.split_whitespace() {
            let body = tok
                .strip_prefix('g')
                .ok_or_else(|| TqftError::InvalidInput(format!("bad braid letter {tok:?}")))?;
            let (idx_str, exp) = match body.split_once('^') {
                Some((i, e)) => {
                    let exp: i64 = e.parse().map_err(|_| {
                        TqftError::InvalidInput(format!("bad exponent in {tok:?}"))
                    })?;
                    (i, exp)
                }
                None => (body, 1),
            };
            let idx: usize = idx_str
                .parse()
                .map_err(|_| TqftError::InvalidInput(format!("bad braid letter {tok:?}")))?;
            if exp == 0 {
                continue;
            }
            let sign = if exp > 0 { 1i8 } else { -1i8 };
            for _ in 0..exp.unsigned_abs() {
                letters.push((idx, sign));
            }
        }
        BraidWord::new(n, letters)
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for &(i, e) in &self.letters {
            if !first {
                write!(f, " ")?;
            }
            if e == 1 {
                write!(f, "g{i}")?;
            } else {
                write!(f, "g{i}^-1")?;
            }
            first = false;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum RepVariant {
    #[serde(rename = "rho")]
    Rho,
    #[serde(rename = "rhoTilde")]
    RhoTilde,
}

/// A represented braid element: context reference, ordered basis and the
/// exact matrix.
#[derive(Clone, PartialEq, Debug)]
pub struct RepMatrix {
    pub ctx_m: u64,
    pub ctx_s: u64,
    pub n: usize,
    pub m_color: i64,
    pub variant: RepVariant,
    pub basis: Vec<PathVector>,
    pub mat: CycloMatrix,
}

impl RepMatrix {
    pub fn dim(&self) -> usize {
        self.mat.dim()
    }
}

#[derive(Serialize, Deserialize)]
struct RepMatrixJson {
    ctx: CtxRef,
    n: usize,
    m_color: i64,
    variant: RepVariant,
    basis: Vec<Vec<i64>>,
    entries: Vec<Vec<CycloScalar>>,
}

#[derive(Serialize, Deserialize)]
struct CtxRef {
    m: u64,
    s: u64,
}

impl Serialize for RepMatrix {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        RepMatrixJson {
            ctx: CtxRef {
                m: self.ctx_m,
                s: self.ctx_s,
            },
            n: self.n,
            m_color: self.m_color,
            variant: self.variant,
            basis: self.basis.iter().map(|p| p.0.clone()).collect(),
            entries: self.mat.rows(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RepMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = RepMatrixJson::deserialize(deserializer)?;
        let mat = CycloMatrix::from_rows(raw.ctx.m, raw.entries).map_err(serde::de::Error::custom)?;
        Ok(RepMatrix {
            ctx_m: raw.ctx.m,
            ctx_s: raw.ctx.s,
            n: raw.n,
            m_color: raw.m_color,
            variant: raw.variant,
            basis: raw.basis.into_iter().map(PathVector).collect(),
            mat,
        })
    }
}

/// Unit-step paths 0 -> m_color bounded by color_max, lexicographic.
pub fn enumerate_paths(n: usize, m_color: i64, color_max: i64) -> Vec<PathVector> {
    let mut out = Vec::new();
    let mut path = vec![0i64; n + 1];
    fn step(
        path: &mut Vec<i64>,
        pos: usize,
        n: usize,
        m_color: i64,
        cm: i64,
        out: &mut Vec<PathVector>,
    ) {
        if pos == n {
            if path[n] == m_color {
                out.push(PathVector(path.clone()));
            }
            return;
        }
        let cur = path[pos];
        // Remaining steps must be able to reach m_color.
        for next in [cur - 1, cur + 1] {
            if next < 0 || next > cm {
                continue;
            }
            if (m_color - next).abs() > (n - pos - 1) as i64 {
                continue;
            }
            path[pos + 1] = next;
            step(path, pos + 1, n, m_color, cm, out);
        }
    }
    step(&mut path, 0, n, m_color, color_max, &mut out);
    out
}

/// All unit-step paths 0 -> m_color within the color range, lexicographic.
pub fn path_basis(ctx: &TheoryCtx, n: usize, m_color: i64) -> Result<Vec<PathVector>> {
    if n < 1 {
        return Err(TqftError::InvalidInput("n must be at least 1".into()));
    }
    if m_color < 0 || m_color > ctx.color_max() {
        return Err(TqftError::ColorOutOfRange {
            color: m_color,
            max: ctx.color_max(),
        });
    }
    Ok(enumerate_paths(n, m_color, ctx.color_max()))
}

/// The four local-rule coefficients for a mixing block over spectator
/// color a, with q = A^-4:
/// diagonal at c = a-1:    (q-1)/(1-q^(a+1))
/// diagonal at c = a+1:    q^(a+1)(q-1)/(q^(a+1)-1)
/// (a-1 row <- a+1 col):   -A^-2
/// (a+1 row <- a-1 col):   -A^-2 (1-q^a)(1-q^(a+2))/(1-q^(a+1))^2
pub fn local_rule_coeffs<K: KauffmanEnv>(
    env: &K,
    a: i64,
) -> Result<(K::Elem, K::Elem, K::Elem, K::Elem)> {
    let one = env.one();
    let q = |k: i64| env.a_pow(-4 * k);
    let q1 = q(1);
    let qm1 = env.sub(&q1, &one);
    let denom = env.sub(&one, &q(a + 1));
    if env.is_zero(&denom) {
        return Err(TqftError::DivisionByZero);
    }
    let diag_minus = env.div(&qm1, &denom)?;
    let diag_plus = env.div(
        &env.mul(&q(a + 1), &qm1),
        &env.neg(&denom),
    )?;
    let off_mp = env.neg(&env.a_pow(-2));
    let num = env.mul(&env.sub(&one, &q(a)), &env.sub(&one, &q(a + 2)));
    let off_pm = env.neg(&env.mul(&env.a_pow(-2), &env.div(&num, &env.mul(&denom, &denom))?));
    Ok((diag_minus, diag_plus, off_mp, off_pm))
}

fn basis_index(basis: &[PathVector]) -> BTreeMap<&[i64], usize> {
    basis
        .iter()
        .enumerate()
        .map(|(i, p)| (p.0.as_slice(), i))
        .collect()
}

/// Image of the braid generator g_i (1-based) in the chosen variant.
pub fn rho_gen(
    ctx: &TheoryCtx,
    n: usize,
    m_color: i64,
    i: usize,
    variant: RepVariant,
) -> Result<RepMatrix> {
    let basis = path_basis(ctx, n, m_color)?;
    rho_gen_on_basis(ctx, n, m_color, i, variant, basis)
}

fn rho_gen_on_basis(
    ctx: &TheoryCtx,
    n: usize,
    m_color: i64,
    i: usize,
    variant: RepVariant,
    basis: Vec<PathVector>,
) -> Result<RepMatrix> {
    if i == 0 || i >= n {
        return Err(TqftError::GeneratorOutOfRange { index: i, n });
    }
    if basis.is_empty() {
        return Err(TqftError::EmptyBasis { n, m_color });
    }
    let index = basis_index(&basis);
    let dim = basis.len();
    let mut mat = CycloMatrix::zero(ctx.m(), dim)?;
    let minus_one = ctx.one().neg();
    for (col, p) in basis.iter().enumerate() {
        let a = p.0[i - 1];
        let a_next = p.0[i + 1];
        let c = p.0[i];
        if a != a_next {
            mat.set(col, col, minus_one.clone());
            continue;
        }
        let (diag_minus, diag_plus, off_mp, off_pm) = local_rule_coeffs(ctx, a)?;
        let partner_c = 2 * a - c;
        let mut partner_path = p.0.clone();
        partner_path[i] = partner_c;
        let partner = index.get(partner_path.as_slice()).copied();
        if c == a + 1 {
            mat.set(col, col, diag_plus);
            if let Some(row) = partner {
                mat.set(row, col, off_mp);
            }
        } else {
            mat.set(col, col, diag_minus);
            if let Some(row) = partner {
                mat.set(row, col, off_pm);
            }
        }
    }
    if variant == RepVariant::Rho {
        mat = mat.scale(&ctx.a_pow(1).neg());
    }
    Ok(RepMatrix {
        ctx_m: ctx.m(),
        ctx_s: ctx.s(),
        n,
        m_color,
        variant,
        basis,
        mat,
    })
}

/// Generator matrices g_1..g_(n-1) in the rho-tilde normalization,
/// together with the shared basis.
pub fn rho_tilde_generators(
    ctx: &TheoryCtx,
    n: usize,
    m_color: i64,
) -> Result<(Vec<PathVector>, Vec<CycloMatrix>)> {
    let basis = path_basis(ctx, n, m_color)?;
    if basis.is_empty() {
        return Err(TqftError::EmptyBasis { n, m_color });
    }
    let mut gens = Vec::with_capacity(n - 1);
    for i in 1..n {
        let rm = rho_gen_on_basis(ctx, n, m_color, i, RepVariant::RhoTilde, basis.clone())?;
        gens.push(rm.mat);
    }
    Ok((basis, gens))
}

/// Image of a braid word; inverse letters are exact matrix inverses.
pub fn rho_word(
    ctx: &TheoryCtx,
    n: usize,
    m_color: i64,
    word: &BraidWord,
    variant: RepVariant,
) -> Result<RepMatrix> {
    if word.n != n {
        return Err(TqftError::InvalidInput(format!(
            "word is on {} strands, space on {n}",
            word.n
        )));
    }
    let (basis, gens) = rho_tilde_generators(ctx, n, m_color)?;
    let mut inverses: Vec<Option<CycloMatrix>> = vec![None; gens.len()];
    let mut acc = CycloMatrix::identity(ctx.m(), basis.len())?;
    for &(i, e) in &word.letters {
        if i == 0 || i >= n {
            return Err(TqftError::GeneratorOutOfRange { index: i, n });
        }
        let g = if e == 1 {
            gens[i - 1].clone()
        } else {
            if inverses[i - 1].is_none() {
                inverses[i - 1] = Some(gens[i - 1].inverse()?);
            }
            inverses[i - 1].clone().unwrap()
        };
        acc = acc.mul(&g);
    }
    if variant == RepVariant::Rho {
        let w = word.writhe();
        let scale = ctx.a_pow(1).neg().pow(w)?;
        acc = acc.scale(&scale);
    }
    Ok(RepMatrix {
        ctx_m: ctx.m(),
        ctx_s: ctx.s(),
        n,
        m_color,
        variant,
        basis,
        mat: acc,
    })
}

/// The standard pure-braid generator A_ij as a word:
/// (g_(j-1) ... g_(i+1)) g_i^2 (g_(j-1) ... g_(i+1))^-1.
pub fn pure_braid_word(n: usize, i: usize, j: usize) -> Result<BraidWord> {
    if i == 0 || j <= i || j > n {
        return Err(TqftError::GeneratorOutOfRange { index: j, n });
    }
    let mut letters = Vec::new();
    for k in ((i + 1)..j).rev() {
        letters.push((k, 1));
    }
    letters.push((i, 1));
    letters.push((i, 1));
    for k in (i + 1)..j {
        letters.push((k, -1));
    }
    BraidWord::new(n, letters)
}

pub fn pure_braid_gen(ctx: &TheoryCtx, n: usize, m_color: i64, i: usize, j: usize) -> Result<RepMatrix> {
    let word = pure_braid_word(n, i, j)?;
    rho_word(ctx, n, m_color, &word, RepVariant::RhoTilde)
}

/// Boundary Dehn-twist eigenvalue on a strand colored j: (-1)^j A^(j^2+2j).
pub fn dehn_twist_scalar(ctx: &TheoryCtx, j: i64) -> CycloScalar {
    ctx.sign_mul(j, ctx.a_pow(j * j + 2 * j))
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationCheck {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationReport {
    pub n: usize,
    pub m_color: i64,
    pub dim: usize,
    pub checks: Vec<RelationCheck>,
}

impl RelationReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

fn first_mismatch(a: &CycloMatrix, b: &CycloMatrix) -> Option<String> {
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            if a.get(i, j) != b.get(i, j) {
                return Some(format!(
                    "entry ({i},{j}): {:?} vs {:?}",
                    a.get(i, j),
                    b.get(i, j)
                ));
            }
        }
    }
    None
}

fn push_eq(checks: &mut Vec<RelationCheck>, name: String, lhs: &CycloMatrix, rhs: &CycloMatrix) {
    match first_mismatch(lhs, rhs) {
        None => checks.push(RelationCheck {
            name,
            pass: true,
            witness: None,
        }),
        Some(w) => checks.push(RelationCheck {
            name,
            pass: false,
            witness: Some(w),
        }),
    }
}

/// Exact checks of the braid, Hecke and Temperley-Lieb relations plus the
/// per-block trace and determinant, on explicit generator matrices.
pub fn verify_generator_matrices(
    ctx: &TheoryCtx,
    basis: &[PathVector],
    gens: &[CycloMatrix],
    n: usize,
    m_color: i64,
) -> Result<RelationReport> {
    let dim = basis.len();
    let id = CycloMatrix::identity(ctx.m(), dim)?;
    let q = ctx.q().clone();
    let qm1 = q.sub(&ctx.one());
    let mut checks = Vec::new();

    for i in 0..gens.len() {
        // Hecke quadratic: g^2 = (q-1) g + q, i.e. eigenvalues {-1, q}.
        let lhs = gens[i].mul(&gens[i]);
        let rhs = gens[i].scale(&qm1).add(&id.scale(&q));
        push_eq(&mut checks, format!("hecke g{}", i + 1), &lhs, &rhs);
    }
    for i in 0..gens.len().saturating_sub(1) {
        let lhs = gens[i].mul(&gens[i + 1]).mul(&gens[i]);
        let rhs = gens[i + 1].mul(&gens[i]).mul(&gens[i + 1]);
        push_eq(
            &mut checks,
            format!("braid g{} g{}", i + 1, i + 2),
            &lhs,
            &rhs,
        );
    }
    for i in 0..gens.len() {
        for j in i + 2..gens.len() {
            let lhs = gens[i].mul(&gens[j]);
            let rhs = gens[j].mul(&gens[i]);
            push_eq(
                &mut checks,
                format!("commute g{} g{}", i + 1, j + 1),
                &lhs,
                &rhs,
            );
        }
    }
    for i in 0..gens.len().saturating_sub(1) {
        // 1 + g_i + g_(i+1) + g_i g_(i+1) + g_(i+1) g_i + g_i g_(i+1) g_i = 0
        let gi = &gens[i];
        let gj = &gens[i + 1];
        let sum = id
            .add(gi)
            .add(gj)
            .add(&gi.mul(gj))
            .add(&gj.mul(gi))
            .add(&gi.mul(gj).mul(gi));
        let zero = CycloMatrix::zero(ctx.m(), dim)?;
        push_eq(
            &mut checks,
            format!("tl six-term g{} g{}", i + 1, i + 2),
            &sum,
            &zero,
        );
    }
    // Mixing blocks: trace q-1, determinant -q.
    let index = basis_index(basis);
    for (gi, g) in gens.iter().enumerate() {
        let i = gi + 1;
        for (col, p) in basis.iter().enumerate() {
            let a = p.0[i - 1];
            if a != p.0[i + 1] || p.0[i] != a + 1 {
                continue;
            }
            let mut partner = p.0.clone();
            partner[i] = a - 1;
            let Some(&row) = index.get(partner.as_slice()) else {
                continue;
            };
            // 2x2 block on (partner, p).
            let t = g.get(row, row).add(g.get(col, col));
            let d = g
                .get(row, row)
                .mul(g.get(col, col))
                .sub(&g.get(row, col).mul(g.get(col, row)));
            let tr_ok = t == qm1;
            let det_ok = d == q.neg();
            checks.push(RelationCheck {
                name: format!("block g{i} over a={a} at {p}"),
                pass: tr_ok && det_ok,
                witness: if tr_ok && det_ok {
                    None
                } else {
                    Some(format!("trace {:?}, det {:?}", t, d))
                },
            });
        }
    }
    Ok(RelationReport {
        n,
        m_color,
        dim,
        checks,
    })
}

/// Build the generators of V(n, m) and verify every relation exactly.
pub fn verify_relations(ctx: &TheoryCtx, n: usize, m_color: i64) -> Result<RelationReport> {
    let (basis, gens) = rho_tilde_generators(ctx, n, m_color)?;
    verify_generator_matrices(ctx, &basis, &gens, n, m_color)
}
