//! The explicitly printed generator matrices on V(3,1) and V(4,2), kept
//! as exact expressions in A for golden comparisons. The V(4,2) display
//! is known to contain typos in a few entries; those are collected and
//! reported entry-by-entry instead of hard-failing.

use crate::cyclo::CycloScalar;
use crate::error::Result;
use crate::matrix::CycloMatrix;
use crate::theory::TheoryCtx;

/// rho~(g1), rho~(g2) on V(3,1) in the printed basis order
/// [(0,1,2,1), (0,1,0,1)] (the reverse of the lexicographic order).
pub fn printed_v31(ctx: &TheoryCtx) -> Result<(CycloMatrix, CycloMatrix)> {
    let one = ctx.one();
    let a4 = ctx.a_pow(4);
    let am4 = ctx.a_pow(-4);
    let g1 = CycloMatrix::from_rows(
        ctx.m(),
        vec![
            vec![one.neg(), ctx.zero()],
            vec![ctx.zero(), am4.clone()],
        ],
    )?;
    // [[ 1/(A^4(1+A^4)),  -(A^4+A^-4+1)/(A^2(A^4+A^-4+2)) ],
    //  [ -A^-2,           -1/(1+A^-4)                     ]]
    let e11 = ctx.a_pow(4).mul(&one.add(&a4)).inv()?;
    let num = a4.add(&am4).add(&one);
    let den = ctx.a_pow(2).mul(&a4.add(&am4).add(&ctx.integer(2)));
    let e12 = num.div(&den)?.neg();
    let e21 = ctx.a_pow(-2).neg();
    let e22 = one.add(&am4).inv()?.neg();
    let g2 = CycloMatrix::from_rows(ctx.m(), vec![vec![e11, e12], vec![e21, e22]])?;
    Ok((g1, g2))
}

/// The printed products rho~(g1 g2), rho~(g2 g1), rho~(g1 g2 g1) in the
/// same basis order as printed_v31.
pub fn printed_v31_products(ctx: &TheoryCtx) -> Result<[CycloMatrix; 3]> {
    let one = ctx.one();
    let a4 = ctx.a_pow(4);
    let am4 = ctx.a_pow(-4);
    let top = a4.add(&am4).add(&one);
    let bot = a4.add(&am4).add(&ctx.integer(2));
    let frac = |p: i64| -> Result<CycloScalar> { top.div(&ctx.a_pow(p).mul(&bot)) };
    let inv_a4_1pa4 = ctx.a_pow(4).mul(&one.add(&a4)).inv()?;
    let inv_a4_1pam4 = ctx.a_pow(4).mul(&one.add(&am4)).inv()?;
    let g1g2 = CycloMatrix::from_rows(
        ctx.m(),
        vec![
            vec![inv_a4_1pa4.neg(), frac(2)?],
            vec![ctx.a_pow(-6).neg(), inv_a4_1pam4.neg()],
        ],
    )?;
    let g2g1 = CycloMatrix::from_rows(
        ctx.m(),
        vec![
            vec![inv_a4_1pa4.neg(), frac(6)?.neg()],
            vec![ctx.a_pow(-2), inv_a4_1pam4.neg()],
        ],
    )?;
    let g1g2g1 = CycloMatrix::from_rows(
        ctx.m(),
        vec![
            vec![inv_a4_1pa4.clone(), frac(6)?],
            vec![ctx.a_pow(-6), ctx.a_pow(8).mul(&one.add(&am4)).inv()?.neg()],
        ],
    )?;
    Ok([g1g2, g2g1, g1g2g1])
}

/// rho~(g1), rho~(g2), rho~(g3) on V(4,2) as printed, in the
/// lexicographic basis [(0,1,0,1,2), (0,1,2,1,2), (0,1,2,3,2)].
pub fn printed_v42(ctx: &TheoryCtx) -> Result<[CycloMatrix; 3]> {
    let one = ctx.one();
    let z = ctx.zero();
    let am4 = ctx.a_pow(-4);
    let g1 = CycloMatrix::from_rows(
        ctx.m(),
        vec![
            vec![am4.clone(), z.clone(), z.clone()],
            vec![z.clone(), one.neg(), z.clone()],
            vec![z.clone(), z.clone(), one.neg()],
        ],
    )?;
    // g2 row 1: -A/(1+A^-4), -A^-2, 0
    let e00 = ctx.a_pow(1).div(&one.add(&am4))?.neg();
    let e01 = ctx.a_pow(-2).neg();
    // g2 row 2: -(1-A^12)(1-A^4)^3/A^34, 1/(1+A^8), 0
    let f1 = one.sub(&ctx.a_pow(12));
    let f2 = one.sub(&ctx.a_pow(4));
    let e10 = f1
        .mul(&f2.mul(&f2).mul(&f2))
        .div(&ctx.a_pow(34))?
        .neg();
    let e11 = one.add(&ctx.a_pow(8)).inv()?;
    let g2 = CycloMatrix::from_rows(
        ctx.m(),
        vec![
            vec![e00, e01, z.clone()],
            vec![e10, e11, z.clone()],
            vec![z.clone(), z.clone(), one.neg()],
        ],
    )?;
    // g3 rows 2 and 3 mix; (1,1) diag: -1/(1+A^-4+A^-8)
    let den3 = one.add(&am4).add(&ctx.a_pow(-8));
    let e11m = den3.inv()?.neg();
    let e12 = ctx.a_pow(-2).neg();
    // (2,1): -(1+A^8)^2 (A^4-1)^2 (A^12-1)^2 / A^66
    let h1 = one.add(&ctx.a_pow(8));
    let h2 = ctx.a_pow(4).sub(&one);
    let h3 = ctx.a_pow(12).sub(&one);
    let e21 = h1
        .mul(&h1)
        .mul(&h2.mul(&h2))
        .mul(&h3.mul(&h3))
        .div(&ctx.a_pow(66))?
        .neg();
    let e22 = ctx.a_pow(-12).div(&den3)?;
    let g3 = CycloMatrix::from_rows(
        ctx.m(),
        vec![
            vec![one.neg(), z.clone(), z.clone()],
            vec![z.clone(), e11m, e12],
            vec![z.clone(), e21, e22],
        ],
    )?;
    Ok([g1, g2, g3])
}

/// Entries of the printed V(4,2) display that disagree with the relations
/// the matrices themselves are stated to satisfy: (generator index
/// 0-based, row, col).
pub const V42_SUSPECT_ENTRIES: &[(usize, usize, usize)] =
    &[(1, 0, 0), (1, 1, 0), (1, 1, 1), (2, 2, 1)];

#[derive(Clone, Debug, serde::Serialize)]
pub struct EntryDiscrepancy {
    pub generator: usize,
    pub row: usize,
    pub col: usize,
    pub computed: CycloScalar,
    pub printed: CycloScalar,
    pub flagged_as_suspect: bool,
}

/// Entry-by-entry comparison of the constructed V(4,2) generators with the
/// printed display.
pub fn v42_discrepancies(ctx: &TheoryCtx) -> Result<Vec<EntryDiscrepancy>> {
    let (_, gens) = crate::braid::rho_tilde_generators(ctx, 4, 2)?;
    let printed = printed_v42(ctx)?;
    let mut out = Vec::new();
    for (gi, (g, p)) in gens.iter().zip(printed.iter()).enumerate() {
        for r in 0..3 {
            for c in 0..3 {
                if g.get(r, c) != p.get(r, c) {
                    out.push(EntryDiscrepancy {
                        generator: gi + 1,
                        row: r,
                        col: c,
                        computed: g.get(r, c).clone(),
                        printed: p.get(r, c).clone(),
                        flagged_as_suspect: V42_SUSPECT_ENTRIES.contains(&(gi, r, c)),
                    });
                }
            }
        }
    }
    Ok(out)
}
