use std::time::Instant;
use tqftrep::tl::{ClosedShape, GenericOracle, CycloOracle};
use tqftrep::recoupling::{self, GenericA, ColorTriple};
use tqftrep::theory::TheoryCtx;

fn main() {
    let t0 = Instant::now();
    let oracle = GenericOracle::new(8, 16);
    println!("jw ladder to 8: {:?}", t0.elapsed());
    let gen = GenericA::new();
    let t1 = Instant::now();
    for n in 0..=8usize {
        let v = oracle.eval(ClosedShape::JwClosure(n)).unwrap();
        assert_eq!(v, recoupling::bracket_in(&gen, n as i64), "n={n}");
    }
    println!("jw closures 0..8 verified: {:?}", t1.elapsed());
    let t2 = Instant::now();
    let v = oracle.eval(ClosedShape::Theta(6, 6, 6)).unwrap();
    let f = recoupling::theta_in(&gen, 6, 6, 6).unwrap();
    assert_eq!(v, f);
    println!("generic theta(6,6,6): {:?}", t2.elapsed());
    let t3 = Instant::now();
    let v = oracle.eval(ClosedShape::Tet([4,4,4,4,4,4])).unwrap();
    let f = recoupling::tet_in(&gen, 4,4,4,4,4,4).unwrap();
    assert_eq!(v, f);
    println!("generic tet(4,4,4,4,4,4): {:?}", t3.elapsed());
    // specialized tet sweep timing at rEff=8
    let ctx = TheoryCtx::new(32, 1).unwrap();
    let t4 = Instant::now();
    let so = CycloOracle::new(&ctx, 4, 16).unwrap();
    let mut count = 0;
    let adm = |x: i64, y: i64, z: i64| ColorTriple(x, y, z).admissible(Some(ctx.color_max()));
    for a in 0..=4i64 { for b in 0..=4i64 { for c in 0..=4i64 { for d in 0..=4i64 { for e in 0..=4i64 { for f in 0..=4i64 {
        if adm(a,b,e) && adm(b,d,f) && adm(e,d,c) && adm(a,c,f) {
            let net = so.eval(ClosedShape::Tet([a,b,c,d,e,f])).unwrap();
            let form = recoupling::tet(&ctx, a,b,c,d,e,f).unwrap();
            assert_eq!(net, form);
            count += 1;
        }
    }}}}}}
    println!("specialized tet sweep <=4 at r=8: {count} tuples in {:?}", t4.elapsed());
}
