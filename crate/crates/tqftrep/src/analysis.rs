//! Finite-vs-infinite decisions for the projective image: exact scalar-power
//! order certificates, the SO(3) small-order criterion, breadth-first group
//! closure, and the common-eigenvector irreducibility test.

use std::collections::{HashSet, VecDeque};

use serde::Serialize;

use crate::braid::{rho_tilde_generators, BraidWord, PathVector};
use crate::cyclo::{euler_phi, CycloScalar};
use crate::error::{Result, TqftError};
use crate::matrix::CycloMatrix;
use crate::theory::TheoryCtx;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum OrderVerdict {
    /// The n-th power is scalar and no smaller power is.
    Finite(u64),
    /// Every candidate order up to the bound was excluded exactly.
    InfiniteCertified { checked_bound: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum OrderMethod {
    RatioTest,
    ScalarPowerScan,
    Bfs,
}

#[derive(Clone, Debug, Serialize)]
pub struct OrderResult {
    pub verdict: OrderVerdict,
    pub method: OrderMethod,
}

/// Some(lambda) iff the matrix is exactly lambda times the identity.
pub fn is_scalar(mat: &CycloMatrix) -> Option<CycloScalar> {
    if mat.is_zero() {
        return None;
    }
    mat.as_scalar()
}

/// Candidate orders: a d-dimensional matrix over Q(zeta_m) of finite
/// projective order n has eigenvalue ratios that are n-th roots of unity
/// in an extension of degree at most d! over Q(zeta_m), so
/// phi(n) <= d! * phi(m). phi(n) >= sqrt(n/2) caps the enumeration.
fn order_candidates(dim: usize, conductor: u64) -> (Vec<u64>, u64) {
    let mut fact = 1u64;
    for k in 2..=dim as u64 {
        fact *= k;
    }
    let bound = fact * euler_phi(conductor);
    let n_max = 2 * bound * bound;
    let mut candidates = Vec::new();
    for n in 1..=n_max {
        if euler_phi(n) <= bound {
            candidates.push(n);
        }
    }
    (candidates, bound)
}

/// Exact projective order by an exhaustive scalar-power scan over the
/// phi-bounded candidate set.
pub fn projective_order(mat: &CycloMatrix) -> Result<OrderResult> {
    if mat.det().is_zero() {
        return Err(TqftError::SingularMatrix);
    }
    let (candidates, _bound) = order_candidates(mat.dim(), mat.conductor());
    let max_n = *candidates.last().expect("candidate set nonempty");
    let mut power = mat.clone();
    for n in 1..=max_n {
        if is_scalar(&power).is_some() {
            return Ok(OrderResult {
                verdict: OrderVerdict::Finite(n),
                method: OrderMethod::ScalarPowerScan,
            });
        }
        if n < max_n {
            power = power.mul(mat);
        }
    }
    Ok(OrderResult {
        verdict: OrderVerdict::InfiniteCertified {
            checked_bound: max_n,
        },
        method: OrderMethod::ScalarPowerScan,
    })
}

/// Compact canonical key of a projectively normalized matrix.
fn matrix_key(mat: &CycloMatrix) -> Vec<u8> {
    let mut out = Vec::new();
    for i in 0..mat.dim() {
        for j in 0..mat.dim() {
            for c in mat.get(i, j).coords() {
                out.extend_from_slice(c.numer().to_signed_bytes_le().as_slice());
                out.push(0xfe);
                out.extend_from_slice(c.denom().to_signed_bytes_le().as_slice());
                out.push(0xff);
            }
        }
    }
    out
}

/// Scale so the first nonzero entry in row-major order becomes 1.
fn projectivize(mat: &CycloMatrix) -> Result<CycloMatrix> {
    for i in 0..mat.dim() {
        for j in 0..mat.dim() {
            let e = mat.get(i, j);
            if !e.is_zero() {
                return Ok(mat.scale(&e.inv()?));
            }
        }
    }
    Err(TqftError::ZeroInput)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum BfsOutcome {
    Closed { order: u64 },
    Exceeded { cap: u64 },
}

/// Breadth-first closure of the projectivized generator semigroup. For a
/// finite projective image this terminates with the group order; otherwise
/// it reports the cap as exceeded.
pub fn bfs_closure(ctx: &TheoryCtx, n: usize, m_color: i64, cap: u64) -> Result<BfsOutcome> {
    if cap < 1 {
        return Err(TqftError::InvalidInput("cap must be at least 1".into()));
    }
    let (_, gens) = rho_tilde_generators(ctx, n, m_color)?;
    let gens: Vec<CycloMatrix> = gens.iter().map(projectivize).collect::<Result<Vec<_>>>()?;
    let id = projectivize(&CycloMatrix::identity(ctx.m(), gens[0].dim())?)?;
    let mut visited: HashSet<Vec<u8>> = HashSet::new();
    let mut queue: VecDeque<CycloMatrix> = VecDeque::new();
    visited.insert(matrix_key(&id));
    queue.push_back(id);
    while let Some(cur) = queue.pop_front() {
        for g in &gens {
            let next = projectivize(&cur.mul(g))?;
            let key = matrix_key(&next);
            if visited.contains(&key) {
                continue;
            }
            if visited.len() as u64 >= cap {
                return Ok(BfsOutcome::Exceeded { cap });
            }
            visited.insert(key);
            queue.push_back(next);
        }
    }
    Ok(BfsOutcome::Closed {
        order: visited.len() as u64,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct So3Criterion {
    /// Valid for 2-dimensional unitarizable blocks; the unitarizability
    /// premise is cited, not proven, here.
    pub applicable: bool,
    pub generator_orders: Vec<Option<u64>>,
    pub noncommuting: bool,
    pub passes: bool,
    pub premise: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ImageReport {
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<String>,
    pub checked_bound: u64,
    pub so3: So3Criterion,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group_order: Option<u64>,
    pub max_word_len: usize,
}

fn so3_criterion(ctx: &TheoryCtx, gens: &[CycloMatrix]) -> Result<So3Criterion> {
    let _ = ctx;
    let applicable = gens.len() >= 2 && gens[0].dim() == 2;
    let premise =
        "two noncommuting elements of projective order > 5 exclude every finite subgroup of SO(3); \
         requires the 2-dimensional block to be unitarizable"
            .to_string();
    if !applicable {
        return Ok(So3Criterion {
            applicable,
            generator_orders: Vec::new(),
            noncommuting: false,
            passes: false,
            premise,
        });
    }
    let mut orders = Vec::new();
    let mut all_big = true;
    for g in &gens[..2] {
        match projective_order(g)?.verdict {
            OrderVerdict::Finite(o) => {
                orders.push(Some(o));
                if o <= 5 {
                    all_big = false;
                }
            }
            OrderVerdict::InfiniteCertified { .. } => {
                orders.push(None);
            }
        }
    }
    // Projective commutation: (g1 g2)(g2 g1)^-1 scalar iff they commute
    // in the projective group.
    let ab = gens[0].mul(&gens[1]);
    let ba = gens[1].mul(&gens[0]);
    let noncommuting = is_scalar(&ab.mul(&ba.inverse()?)).is_none();
    Ok(So3Criterion {
        applicable,
        generator_orders: orders,
        noncommuting,
        passes: all_big && noncommuting,
        premise,
    })
}

/// Breadth-first search over freely reduced words for an element whose
/// projective order is certified infinite.
fn word_search(
    ctx: &TheoryCtx,
    n: usize,
    gens: &[CycloMatrix],
    max_len: usize,
) -> Result<Option<(BraidWord, u64)>> {
    let dim = gens[0].dim();
    let mut inverses = Vec::with_capacity(gens.len());
    for g in gens {
        inverses.push(g.inverse()?);
    }
    let mut letters: Vec<(usize, i8)> = Vec::new();
    for i in 1..=gens.len() {
        letters.push((i, 1));
        letters.push((i, -1));
    }
    let id = CycloMatrix::identity(ctx.m(), dim)?;
    let mut frontier: Vec<(Vec<(usize, i8)>, CycloMatrix)> = vec![(Vec::new(), id)];
    for _ in 0..max_len {
        let mut next_frontier = Vec::new();
        for (word, mat) in &frontier {
            for &(i, e) in &letters {
                if let Some(&(li, le)) = word.last() {
                    if li == i && le == -e {
                        continue;
                    }
                }
                let m2 = if e == 1 {
                    mat.mul(&gens[i - 1])
                } else {
                    mat.mul(&inverses[i - 1])
                };
                let mut w2 = word.clone();
                w2.push((i, e));
                if let OrderVerdict::InfiniteCertified { checked_bound } =
                    projective_order(&m2)?.verdict
                {
                    return Ok(Some((BraidWord::new(n, w2)?, checked_bound)));
                }
                next_frontier.push((w2, m2));
            }
        }
        frontier = next_frontier;
    }
    Ok(None)
}

/// Two independent routes to an infiniteness certificate: the SO(3)
/// subgroup criterion and a certified-infinite-order word.
pub fn infinite_image_report(
    ctx: &TheoryCtx,
    n: usize,
    m_color: i64,
    max_word_len: usize,
) -> Result<ImageReport> {
    let (_, gens) = rho_tilde_generators(ctx, n, m_color)?;
    let so3 = so3_criterion(ctx, &gens)?;
    let found = word_search(ctx, n, &gens, max_word_len)?;
    let (_, bound) = order_candidates(gens[0].dim(), ctx.m());
    let report = match found {
        Some((word, checked)) => ImageReport {
            verdict: "infinite".into(),
            witness: Some(word.to_string()),
            certificate: Some("ratioScan".into()),
            checked_bound: checked,
            so3,
            group_order: None,
            max_word_len,
        },
        None => {
            if so3.passes {
                ImageReport {
                    verdict: "infinite".into(),
                    witness: None,
                    certificate: Some("so3".into()),
                    checked_bound: bound,
                    so3,
                    group_order: None,
                    max_word_len,
                }
            } else {
                ImageReport {
                    verdict: "inconclusive".into(),
                    witness: None,
                    certificate: None,
                    checked_bound: bound,
                    so3,
                    group_order: None,
                    max_word_len,
                }
            }
        }
    };
    Ok(report)
}

/// Full decision: word certificate first, then BFS closure for a finite
/// answer within the cap.
pub fn analyze_image(
    ctx: &TheoryCtx,
    n: usize,
    m_color: i64,
    max_word_len: usize,
    bfs_cap: u64,
) -> Result<ImageReport> {
    let mut report = infinite_image_report(ctx, n, m_color, max_word_len)?;
    if report.verdict == "inconclusive" {
        if let BfsOutcome::Closed { order } = bfs_closure(ctx, n, m_color, bfs_cap)? {
            report.verdict = "finite".into();
            report.certificate = Some("bfs".into());
            report.group_order = Some(order);
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum IrredVerdict {
    Irreducible,
    Reducible,
    /// The common-eigenvector criterion only covers dimension <= 3.
    CriterionIncomplete,
}

fn kernel_of_stack(m: u64, rows: Vec<Vec<CycloScalar>>, width: usize) -> Vec<Vec<CycloScalar>> {
    let zero = CycloScalar::zero(m).expect("valid conductor");
    let one = CycloScalar::one(m).expect("valid conductor");
    let mut a = rows;
    let height = a.len();
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; width];
    let mut row = 0;
    for col in 0..width {
        let pivot = (row..height).find(|&r| !a[r][col].is_zero());
        let Some(p) = pivot else { continue };
        a.swap(row, p);
        let inv = a[row][col].inv().expect("pivot nonzero");
        for j in 0..width {
            a[row][j] = a[row][j].mul(&inv);
        }
        for r in 0..height {
            if r != row && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..width {
                    a[r][j] = a[r][j].sub(&f.mul(&a[row][j]));
                }
            }
        }
        pivot_of_col[col] = Some(row);
        row += 1;
        if row == height {
            break;
        }
    }
    let mut basis = Vec::new();
    for col in 0..width {
        if pivot_of_col[col].is_some() {
            continue;
        }
        let mut v = vec![zero.clone(); width];
        v[col] = one.clone();
        for (c, pr) in pivot_of_col.iter().enumerate() {
            if let Some(r) = pr {
                v[c] = a[*r][col].neg();
            }
        }
        basis.push(v);
    }
    basis
}

/// Does some eigenvalue assignment admit a joint eigenvector of all
/// generators? Candidates are tried per generator.
fn common_eigenvector_exists(
    conductor: u64,
    gens: &[CycloMatrix],
    candidates: &[CycloScalar],
) -> bool {
    let dim = gens[0].dim();
    let count = candidates.len().pow(gens.len() as u32);
    for assignment in 0..count {
        let mut rows = Vec::new();
        let mut idx = assignment;
        for g in gens {
            let lambda = &candidates[idx % candidates.len()];
            idx /= candidates.len();
            for i in 0..dim {
                let mut row = Vec::with_capacity(dim);
                for j in 0..dim {
                    let mut v = g.get(i, j).clone();
                    if i == j {
                        v = v.sub(lambda);
                    }
                    row.push(v);
                }
                rows.push(row);
            }
        }
        if !kernel_of_stack(conductor, rows, dim).is_empty() {
            return true;
        }
    }
    false
}

/// Exact irreducibility via common eigenvectors of the representation and
/// of its dual; complete for dim <= 3.
pub fn irreducibility_of(ctx: &TheoryCtx, gens: &[CycloMatrix]) -> Result<IrredVerdict> {
    let dim = gens[0].dim();
    if dim > 3 {
        return Ok(IrredVerdict::CriterionIncomplete);
    }
    if dim == 1 {
        return Ok(IrredVerdict::Irreducible);
    }
    let minus_one = CycloScalar::one(ctx.m())?.neg();
    let q = ctx.q().clone();
    let rep_candidates = vec![minus_one.clone(), q.clone()];
    if common_eigenvector_exists(ctx.m(), gens, &rep_candidates) {
        return Ok(IrredVerdict::Reducible);
    }
    let mut duals = Vec::with_capacity(gens.len());
    for g in gens {
        duals.push(g.inverse()?.transpose());
    }
    let dual_candidates = vec![minus_one, q.inv()?];
    if common_eigenvector_exists(ctx.m(), &duals, &dual_candidates) {
        return Ok(IrredVerdict::Reducible);
    }
    Ok(IrredVerdict::Irreducible)
}

pub fn irreducibility(ctx: &TheoryCtx, n: usize, m_color: i64) -> Result<IrredVerdict> {
    let (_, gens) = rho_tilde_generators(ctx, n, m_color)?;
    irreducibility_of(ctx, &gens)
}

/// Projective order of each generator; errors if one is not finite.
pub fn generator_order_row(ctx: &TheoryCtx, n: usize, m_color: i64) -> Result<Vec<u64>> {
    let (_, gens) = rho_tilde_generators(ctx, n, m_color)?;
    let mut out = Vec::new();
    for g in &gens {
        match projective_order(g)?.verdict {
            OrderVerdict::Finite(o) => out.push(o),
            OrderVerdict::InfiniteCertified { .. } => {
                return Err(TqftError::InvalidInput(
                    "generator unexpectedly of infinite projective order".into(),
                ))
            }
        }
    }
    Ok(out)
}

/// The order ord(-q) predicted for every generator: 2r for odd r, r/2 for
/// r = 2 mod 4, r for r = 0 mod 4.
pub fn predicted_generator_order(r_eff: u64) -> u64 {
    if r_eff % 2 == 1 {
        2 * r_eff
    } else if r_eff % 4 == 2 {
        r_eff / 2
    } else {
        r_eff
    }
}

/// Paths kept public for the CLI "basis" command.
pub fn basis_of(ctx: &TheoryCtx, n: usize, m_color: i64) -> Result<Vec<PathVector>> {
    crate::braid::path_basis(ctx, n, m_color)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::{rho_word, RepVariant};

    fn ctx_r(r: u64) -> TheoryCtx {
        TheoryCtx::new(4 * r, 1).unwrap()
    }

    #[test]
    fn scalar_predicate() {
        let ctx = ctx_r(5);
        let id = CycloMatrix::identity(ctx.m(), 2).unwrap();
        assert!(is_scalar(&id).unwrap().is_one());
        let lam = ctx.a_pow(3).neg();
        assert_eq!(is_scalar(&id.scale(&lam)).unwrap(), lam);
        let (_, gens) = rho_tilde_generators(&ctx, 3, 1).unwrap();
        assert!(is_scalar(&gens[0]).is_none());
        let zero = CycloMatrix::zero(ctx.m(), 2).unwrap();
        assert!(is_scalar(&zero).is_none());
    }

    #[test]
    fn generator_orders_follow_level_rule() {
        for r in [5u64, 7, 8, 10, 12] {
            let ctx = ctx_r(r);
            let expected = predicted_generator_order(r);
            let orders = generator_order_row(&ctx, 3, 1).unwrap();
            for o in orders {
                assert_eq!(o, expected, "r = {r}");
            }
            // Cross-check against the multiplicative order of -q.
            let mq = ctx.q().neg();
            assert_eq!(mq.root_of_unity_order().unwrap(), Some(expected));
        }
    }

    #[test]
    fn infinite_word_certificate_at_r5() {
        let ctx = ctx_r(5);
        let report = infinite_image_report(&ctx, 3, 1, 6).unwrap();
        assert_eq!(report.verdict, "infinite");
        assert!(report.witness.is_some());
        assert_eq!(report.certificate.as_deref(), Some("ratioScan"));
        assert!(report.so3.passes);
    }

    #[test]
    fn r10_subgroup_criterion_fails_on_v31() {
        let ctx = ctx_r(10);
        let (_, gens) = rho_tilde_generators(&ctx, 3, 1).unwrap();
        let so3 = so3_criterion(&ctx, &gens).unwrap();
        assert_eq!(so3.generator_orders, vec![Some(5), Some(5)]);
        assert!(!so3.passes);
    }

    #[test]
    fn r10_v42_word_certificate() {
        let ctx = ctx_r(10);
        let w = BraidWord::parse(4, "g1 g2 g3^-1").unwrap();
        let m = rho_word(&ctx, 4, 2, &w, RepVariant::RhoTilde).unwrap();
        let res = projective_order(&m.mat).unwrap();
        assert!(matches!(res.verdict, OrderVerdict::InfiniteCertified { .. }));
    }

    #[test]
    fn bfs_closes_at_excluded_levels() {
        let ctx4 = ctx_r(4);
        let out = bfs_closure(&ctx4, 3, 1, 100_000).unwrap();
        let BfsOutcome::Closed { order } = out else {
            panic!("expected closure at r=4");
        };
        assert!(order > 1);
        let ctx6 = ctx_r(6);
        let out = bfs_closure(&ctx6, 3, 1, 100_000).unwrap();
        assert!(matches!(out, BfsOutcome::Closed { .. }));
    }

    #[test]
    fn bfs_exceeds_at_r5_with_small_cap() {
        let ctx = ctx_r(5);
        let out = bfs_closure(&ctx, 3, 1, 2_000).unwrap();
        assert_eq!(out, BfsOutcome::Exceeded { cap: 2_000 });
    }

    #[test]
    fn irreducibility_examples() {
        let ctx10 = ctx_r(10);
        assert_eq!(
            irreducibility(&ctx10, 4, 2).unwrap(),
            IrredVerdict::Irreducible
        );
        let ctx5 = ctx_r(5);
        assert_eq!(
            irreducibility(&ctx5, 3, 1).unwrap(),
            IrredVerdict::Irreducible
        );
        // Negative control: a visibly decomposable pair of generators.
        let q = ctx5.q().clone();
        let m1 = CycloMatrix::from_rows(
            ctx5.m(),
            vec![
                vec![ctx5.one().neg(), ctx5.zero()],
                vec![ctx5.zero(), q.clone()],
            ],
        )
        .unwrap();
        let gens = vec![m1.clone(), m1];
        assert_eq!(
            irreducibility_of(&ctx5, &gens).unwrap(),
            IrredVerdict::Reducible
        );
    }

    #[test]
    fn mutual_exclusion_small_sweep() {
        // A word certificate and a closed BFS can never coexist.
        for r in 4..=8u64 {
            let ctx = ctx_r(r);
            let report = infinite_image_report(&ctx, 3, 1, 4).unwrap();
            let bfs = bfs_closure(&ctx, 3, 1, 5_000).unwrap();
            let word_infinite = report.verdict == "infinite" && report.witness.is_some();
            let closed = matches!(bfs, BfsOutcome::Closed { .. });
            assert!(
                !(word_infinite && closed),
                "r = {r}: both certificates fired"
            );
        }
    }
}
