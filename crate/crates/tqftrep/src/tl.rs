//! Brute-force diagrammatic Temperley-Lieb algebra: planar matchings,
//! Jones-Wenzl projectors by recursion, and closed-network evaluation.
//! This module is the independent oracle for every closed-form coefficient
//! in the recoupling layer, so nothing here may call those formulas.

use std::collections::BTreeMap;

use crate::cyclo::CycloScalar;
use crate::error::{Result, TqftError};
use crate::laurent::{LaurentFraction, LaurentPoly};
use crate::recoupling::KauffmanEnv;
use crate::theory::TheoryCtx;

/// Default strand cap: Catalan growth makes wide diagrams expensive.
pub const DEFAULT_STRAND_CAP: usize = 12;

/// A planar perfect matching between `bot` bottom points and `top` top
/// points. Index layout: 0..bot are the bottom boundary left to right,
/// bot..bot+top the top boundary left to right.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct TlDiagram {
    bot: u16,
    top: u16,
    pair: Vec<u16>,
}

impl TlDiagram {
    pub fn new(bot: usize, top: usize, pairs: &[(usize, usize)]) -> Result<TlDiagram> {
        let total = bot + top;
        if pairs.len() * 2 != total {
            return Err(TqftError::NonPlanar);
        }
        let mut pair = vec![u16::MAX; total];
        for &(x, y) in pairs {
            if x >= total || y >= total || x == y || pair[x] != u16::MAX || pair[y] != u16::MAX {
                return Err(TqftError::NonPlanar);
            }
            pair[x] = y as u16;
            pair[y] = x as u16;
        }
        let d = TlDiagram {
            bot: bot as u16,
            top: top as u16,
            pair,
        };
        if !d.is_planar() {
            return Err(TqftError::NonPlanar);
        }
        Ok(d)
    }

    pub fn bot(&self) -> usize {
        self.bot as usize
    }

    pub fn top(&self) -> usize {
        self.top as usize
    }

    pub fn partner(&self, i: usize) -> usize {
        self.pair[i] as usize
    }

    /// Position on the boundary circle: bottom left-to-right, then top
    /// right-to-left.
    fn circular(&self, i: usize) -> usize {
        let b = self.bot as usize;
        if i < b {
            i
        } else {
            b + (self.top as usize - 1 - (i - b))
        }
    }

    fn is_planar(&self) -> bool {
        let total = self.pair.len();
        let mut arcs = Vec::with_capacity(total / 2);
        for i in 0..total {
            let j = self.pair[i] as usize;
            if i < j {
                let (a, b) = (self.circular(i), self.circular(j));
                arcs.push((a.min(b), a.max(b)));
            }
        }
        for (idx, &(a, b)) in arcs.iter().enumerate() {
            for &(c, d) in &arcs[idx + 1..] {
                let c_inside = a < c && c < b;
                let d_inside = a < d && d < b;
                if c_inside != d_inside {
                    return false;
                }
            }
        }
        true
    }

    pub fn identity(n: usize) -> TlDiagram {
        let pairs: Vec<(usize, usize)> = (0..n).map(|i| (i, n + i)).collect();
        TlDiagram::new(n, n, &pairs).expect("identity is planar")
    }

    /// The cap-cup generator on strands i, i+1 (0-indexed) of n strands.
    pub fn e_hat(n: usize, i: usize) -> Result<TlDiagram> {
        if i + 1 >= n {
            return Err(TqftError::GeneratorOutOfRange { index: i + 1, n });
        }
        let mut pairs = Vec::with_capacity(n);
        pairs.push((i, i + 1));
        pairs.push((n + i, n + i + 1));
        for j in 0..n {
            if j != i && j != i + 1 {
                pairs.push((j, n + j));
            }
        }
        TlDiagram::new(n, n, &pairs)
    }

    /// Nested cap: 2k bottom points, none on top.
    pub fn cap(k: usize) -> TlDiagram {
        let pairs: Vec<(usize, usize)> = (0..k).map(|t| (t, 2 * k - 1 - t)).collect();
        TlDiagram::new(2 * k, 0, &pairs).expect("nested cap is planar")
    }

    /// Swap top and bottom.
    pub fn flip(&self) -> TlDiagram {
        let b = self.bot as usize;
        let t = self.top as usize;
        let map = |i: usize| if i < b { t + i } else { i - b };
        let mut pairs = Vec::with_capacity((b + t) / 2);
        for i in 0..b + t {
            let j = self.pair[i] as usize;
            if i < j {
                pairs.push((map(i), map(j)));
            }
        }
        TlDiagram::new(t, b, &pairs).expect("flip preserves planarity")
    }

    /// The trivalent vertex as a matching: c strands below split into a
    /// left block of a and a right block of b above, with nested turnbacks
    /// between the two blocks.
    pub fn vertex(a: i64, b: i64, c: i64) -> Result<TlDiagram> {
        let i = (b + c - a) / 2;
        let j = (a + c - b) / 2;
        let k = (a + b - c) / 2;
        if i < 0 || j < 0 || k < 0 || (a + b + c) % 2 != 0 {
            return Err(TqftError::InadmissibleTriple(a, b, c));
        }
        let (a, b, c) = (a as usize, b as usize, c as usize);
        let (i, j, k) = (i as usize, j as usize, k as usize);
        let mut pairs = Vec::with_capacity((c + a + b) / 2);
        for t in 0..j {
            pairs.push((t, c + t));
        }
        for s in 0..i {
            pairs.push((j + s, c + a + k + s));
        }
        for t in 0..k {
            pairs.push((c + j + t, c + j + 2 * k - 1 - t));
        }
        TlDiagram::new(c, a + b, &pairs)
    }

    /// Glue self's top to other's bottom; returns the composite and the
    /// number of closed loops formed.
    pub fn compose(&self, other: &TlDiagram) -> Result<(TlDiagram, usize)> {
        if self.top != other.bot {
            return Err(TqftError::BoundaryMismatch(
                self.top as usize,
                other.bot as usize,
            ));
        }
        let bx = self.bot as usize;
        let mid = self.top as usize;
        let ty = other.top as usize;
        let total = bx + mid + ty;
        let mut via_x = vec![usize::MAX; total];
        for p in 0..bx + mid {
            via_x[p] = self.pair[p] as usize;
        }
        let mut via_y = vec![usize::MAX; total];
        for q in 0..mid + ty {
            via_y[bx + q] = bx + other.pair[q] as usize;
        }
        let is_boundary = |g: usize| g < bx || g >= bx + mid;
        let mut seen = vec![false; total];
        let mut pairs = Vec::with_capacity((bx + ty) / 2);
        let map_out = |g: usize| if g < bx { g } else { g - mid };
        for start in (0..bx).chain(bx + mid..total) {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut use_x = start < bx;
            let mut cur = start;
            loop {
                cur = if use_x { via_x[cur] } else { via_y[cur] };
                seen[cur] = true;
                if is_boundary(cur) {
                    pairs.push((map_out(start), map_out(cur)));
                    break;
                }
                use_x = !use_x;
            }
        }
        let mut loops = 0;
        for start in bx..bx + mid {
            if seen[start] {
                continue;
            }
            loops += 1;
            let mut cur = start;
            let mut use_x = true;
            loop {
                seen[cur] = true;
                cur = if use_x { via_x[cur] } else { via_y[cur] };
                use_x = !use_x;
                if cur == start {
                    break;
                }
            }
        }
        Ok((TlDiagram::new(bx, ty, &pairs)?, loops))
    }

    /// Side-by-side placement; self sits on the left.
    pub fn tensor(&self, other: &TlDiagram) -> TlDiagram {
        let bx = self.bot as usize;
        let tx = self.top as usize;
        let by = other.bot as usize;
        let ty = other.top as usize;
        let map_x = |p: usize| if p < bx { p } else { by + p };
        let map_y = |q: usize| if q < by { bx + q } else { bx + tx + q };
        let mut pairs = Vec::with_capacity((bx + tx + by + ty) / 2);
        for p in 0..bx + tx {
            let q = self.pair[p] as usize;
            if p < q {
                pairs.push((map_x(p), map_x(q)));
            }
        }
        for p in 0..by + ty {
            let q = other.pair[p] as usize;
            if p < q {
                pairs.push((map_y(p), map_y(q)));
            }
        }
        TlDiagram::new(bx + by, tx + ty, &pairs).expect("tensor preserves planarity")
    }

    /// Loop count when the top is folded back onto the bottom.
    pub fn closure_loops(&self) -> Result<usize> {
        if self.bot != self.top {
            return Err(TqftError::StrandMismatch(
                self.bot as usize,
                self.top as usize,
            ));
        }
        let n = self.bot as usize;
        let total = 2 * n;
        let mut seen = vec![false; total];
        let mut loops = 0;
        for start in 0..total {
            if seen[start] {
                continue;
            }
            loops += 1;
            let mut cur = start;
            let mut use_match = true;
            loop {
                seen[cur] = true;
                cur = if use_match {
                    self.pair[cur] as usize
                } else if cur < n {
                    cur + n
                } else {
                    cur - n
                };
                use_match = !use_match;
                if cur == start {
                    break;
                }
            }
        }
        Ok(loops)
    }
}

/// A formal linear combination of diagrams sharing a boundary shape.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TlElement<R> {
    bot: u16,
    top: u16,
    terms: BTreeMap<TlDiagram, R>,
}

impl<R: Clone + PartialEq + std::fmt::Debug> TlElement<R> {
    pub fn zero(bot: usize, top: usize) -> TlElement<R> {
        TlElement {
            bot: bot as u16,
            top: top as u16,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_diagram(d: TlDiagram, coeff: R) -> TlElement<R> {
        let mut terms = BTreeMap::new();
        let (bot, top) = (d.bot, d.top);
        terms.insert(d, coeff);
        TlElement { bot, top, terms }
    }

    pub fn bot(&self) -> usize {
        self.bot as usize
    }

    pub fn top(&self) -> usize {
        self.top as usize
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TlDiagram, &R)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, d: &TlDiagram) -> Option<&R> {
        self.terms.get(d)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

pub fn loop_scalar<K: KauffmanEnv>(env: &K) -> K::Elem {
    env.neg(&env.add(&env.a_pow(2), &env.a_pow(-2)))
}

pub fn identity_elem<K: KauffmanEnv>(env: &K, n: usize) -> TlElement<K::Elem> {
    TlElement::from_diagram(TlDiagram::identity(n), env.one())
}

pub fn e_hat_elem<K: KauffmanEnv>(env: &K, n: usize, i: usize) -> Result<TlElement<K::Elem>> {
    Ok(TlElement::from_diagram(TlDiagram::e_hat(n, i)?, env.one()))
}

fn insert_term<K: KauffmanEnv>(
    env: &K,
    terms: &mut BTreeMap<TlDiagram, K::Elem>,
    d: TlDiagram,
    coeff: K::Elem,
) {
    if env.is_zero(&coeff) {
        return;
    }
    match terms.entry(d) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(coeff);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            let merged = env.add(e.get(), &coeff);
            if env.is_zero(&merged) {
                e.remove();
            } else {
                *e.get_mut() = merged;
            }
        }
    }
}

pub fn add_elem<K: KauffmanEnv>(
    env: &K,
    x: &TlElement<K::Elem>,
    y: &TlElement<K::Elem>,
) -> Result<TlElement<K::Elem>> {
    if x.bot != y.bot || x.top != y.top {
        return Err(TqftError::BoundaryMismatch(x.bot(), y.bot()));
    }
    let mut terms = x.terms.clone();
    for (d, c) in &y.terms {
        insert_term(env, &mut terms, d.clone(), c.clone());
    }
    Ok(TlElement {
        bot: x.bot,
        top: x.top,
        terms,
    })
}

pub fn scale_elem<K: KauffmanEnv>(
    env: &K,
    x: &TlElement<K::Elem>,
    s: &K::Elem,
) -> TlElement<K::Elem> {
    let mut terms = BTreeMap::new();
    for (d, c) in &x.terms {
        insert_term(env, &mut terms, d.clone(), env.mul(c, s));
    }
    TlElement {
        bot: x.bot,
        top: x.top,
        terms,
    }
}

pub fn neg_elem<K: KauffmanEnv>(env: &K, x: &TlElement<K::Elem>) -> TlElement<K::Elem> {
    let mut terms = BTreeMap::new();
    for (d, c) in &x.terms {
        terms.insert(d.clone(), env.neg(c));
    }
    TlElement {
        bot: x.bot,
        top: x.top,
        terms,
    }
}

/// Stack y on top of x, converting each closed loop into the loop scalar.
pub fn compose_elem<K: KauffmanEnv>(
    env: &K,
    x: &TlElement<K::Elem>,
    y: &TlElement<K::Elem>,
) -> Result<TlElement<K::Elem>> {
    if x.top != y.bot {
        return Err(TqftError::BoundaryMismatch(x.top(), y.bot()));
    }
    let delta = loop_scalar(env);
    let mut delta_pows: Vec<K::Elem> = vec![env.one()];
    let mut terms = BTreeMap::new();
    for (dx, cx) in &x.terms {
        for (dy, cy) in &y.terms {
            let (d, loops) = dx.compose(dy)?;
            while delta_pows.len() <= loops {
                let next = env.mul(delta_pows.last().unwrap(), &delta);
                delta_pows.push(next);
            }
            let coeff = env.mul(&env.mul(cx, cy), &delta_pows[loops]);
            insert_term(env, &mut terms, d, coeff);
        }
    }
    Ok(TlElement {
        bot: x.bot,
        top: y.top,
        terms,
    })
}

/// Algebra product in TL_n: juxtaposition of square diagrams.
pub fn tl_mul<K: KauffmanEnv>(
    env: &K,
    x: &TlElement<K::Elem>,
    y: &TlElement<K::Elem>,
) -> Result<TlElement<K::Elem>> {
    if x.bot != x.top || y.bot != y.top || x.bot != y.bot {
        return Err(TqftError::StrandMismatch(x.bot(), y.bot()));
    }
    compose_elem(env, x, y)
}

pub fn tensor_elem<K: KauffmanEnv>(
    env: &K,
    x: &TlElement<K::Elem>,
    y: &TlElement<K::Elem>,
) -> TlElement<K::Elem> {
    let mut terms = BTreeMap::new();
    for (dx, cx) in &x.terms {
        for (dy, cy) in &y.terms {
            insert_term(env, &mut terms, dx.tensor(dy), env.mul(cx, cy));
        }
    }
    TlElement {
        bot: x.bot + y.bot,
        top: x.top + y.top,
        terms,
    }
}

/// Markov closure: fold the top back onto the bottom and evaluate.
pub fn closure_value<K: KauffmanEnv>(env: &K, x: &TlElement<K::Elem>) -> Result<K::Elem> {
    let delta = loop_scalar(env);
    let mut acc = env.zero();
    for (d, c) in &x.terms {
        let loops = d.closure_loops()?;
        let mut v = c.clone();
        for _ in 0..loops {
            v = env.mul(&v, &delta);
        }
        acc = env.add(&acc, &v);
    }
    Ok(acc)
}

/// Jones-Wenzl ladder f^(0), ..., f^(n) over a coefficient field, via
/// f^(k+1) = f^(k) - (Delta_(k-1)/Delta_k) f^(k) e_k f^(k).
/// The defining conditions, not the recursion, are the contract; they are
/// enforced by the oracle test suite.
pub fn jw_ladder<K: KauffmanEnv>(env: &K, n: usize) -> Result<Vec<TlElement<K::Elem>>> {
    if let Some(cm) = env.color_bound() {
        if n as i64 > cm + 1 {
            return Err(TqftError::JonesWenzlUndefined {
                n,
                reason: format!("needs Delta_{} != 0 but colorMax = {cm}", n - 1),
            });
        }
    }
    let mut ladder = Vec::with_capacity(n + 1);
    ladder.push(identity_elem(env, 0));
    if n >= 1 {
        ladder.push(identity_elem(env, 1));
    }
    let bracket = |k: i64| env.sign_mul(k, env.qint(k + 1));
    for k in 1..n {
        let prev = &ladder[k];
        let wide = tensor_elem(env, prev, &identity_elem(env, 1));
        let e_k = e_hat_elem(env, k + 1, k - 1)?;
        let fe = compose_elem(env, &wide, &e_k)?;
        let fef = compose_elem(env, &fe, &wide)?;
        let ratio = env.div(&bracket(k as i64 - 1), &bracket(k as i64))?;
        let correction = scale_elem(env, &fef, &env.neg(&ratio));
        ladder.push(add_elem(env, &wide, &correction)?);
    }
    Ok(ladder)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ClosedShape {
    JwClosure(usize),
    Theta(i64, i64, i64),
    Tet([i64; 6]),
}

/// Width of the widest horizontal slice each closed shape needs.
fn shape_width(shape: &ClosedShape) -> usize {
    match shape {
        ClosedShape::JwClosure(n) => *n,
        ClosedShape::Theta(a, b, c) => (*a + *b).max(*c) as usize,
        ClosedShape::Tet([a, b, c, d, _e, f]) => {
            let mid = c + 2 * f + d;
            (*_e).max(a + b).max(mid) as usize
        }
    }
}

fn max_label(shape: &ClosedShape) -> usize {
    match shape {
        ClosedShape::JwClosure(n) => *n,
        ClosedShape::Theta(a, b, c) => (*a).max(*b).max(*c) as usize,
        ClosedShape::Tet(l) => *l.iter().max().unwrap() as usize,
    }
}

/// Closure of the theta network with Jones-Wenzl insertions on all three
/// edges.
fn theta_scalar<K: KauffmanEnv>(
    env: &K,
    jw: &[TlElement<K::Elem>],
    a: i64,
    b: i64,
    c: i64,
) -> Result<K::Elem> {
    let w = TlDiagram::vertex(a, b, c)?;
    let wstar = w.flip();
    let mut x = TlElement::from_diagram(w, env.one());
    let fa_wide = tensor_elem(env, &jw[a as usize], &identity_elem(env, b as usize));
    x = compose_elem(env, &x, &fa_wide)?;
    let fb_wide = tensor_elem(env, &identity_elem(env, a as usize), &jw[b as usize]);
    x = compose_elem(env, &x, &fb_wide)?;
    x = compose_elem(env, &x, &TlElement::from_diagram(wstar, env.one()))?;
    x = compose_elem(env, &x, &jw[c as usize])?;
    closure_value(env, &x)
}

/// Closure of the tetrahedron network. Edges in alphabetical order with
/// faces (A,B,E), (B,D,F), (E,D,C), (A,C,F); built by opening the E edge.
fn tet_scalar<K: KauffmanEnv>(
    env: &K,
    jw: &[TlElement<K::Elem>],
    labels: [i64; 6],
) -> Result<K::Elem> {
    let [la, lb, lc, ld, le, lf] = labels;
    let (ua, ub, uc, ud, ue, uf) = (
        la as usize,
        lb as usize,
        lc as usize,
        ld as usize,
        le as usize,
        lf as usize,
    );
    // E -> (A, B)
    let v1 = TlDiagram::vertex(la, lb, le)?;
    let mut x = TlElement::from_diagram(v1, env.one());
    x = compose_elem(env, &x, &tensor_elem(env, &jw[ua], &identity_elem(env, ub)))?;
    x = compose_elem(env, &x, &tensor_elem(env, &identity_elem(env, ua), &jw[ub]))?;
    // A -> (C, F) and B -> (F, D); the two F blocks sit adjacent in the middle.
    let v4 = TlDiagram::vertex(lc, lf, la)?;
    let v2 = TlDiagram::vertex(lf, ld, lb)?;
    x = compose_elem(env, &x, &TlElement::from_diagram(v4.tensor(&v2), env.one()))?;
    // Insert f on one side of the doubled F edge, then cap it off.
    let f_insert = tensor_elem(
        env,
        &identity_elem(env, uc + uf),
        &tensor_elem(env, &jw[uf], &identity_elem(env, ud)),
    );
    x = compose_elem(env, &x, &f_insert)?;
    let capper = TlDiagram::identity(uc)
        .tensor(&TlDiagram::cap(uf))
        .tensor(&TlDiagram::identity(ud));
    x = compose_elem(env, &x, &TlElement::from_diagram(capper, env.one()))?;
    // Remaining f insertions on C and D, then close through (C,D) -> E.
    x = compose_elem(env, &x, &tensor_elem(env, &jw[uc], &identity_elem(env, ud)))?;
    x = compose_elem(env, &x, &tensor_elem(env, &identity_elem(env, uc), &jw[ud]))?;
    let v3 = TlDiagram::vertex(lc, ld, le)?.flip();
    x = compose_elem(env, &x, &TlElement::from_diagram(v3, env.one()))?;
    x = compose_elem(env, &x, &jw[ue])?;
    closure_value(env, &x)
}

/// The generic-coefficient environment used internally by the oracle:
/// plain Laurent polynomials, with denominators tracked externally.
pub struct GenericPoly;

impl KauffmanEnv for GenericPoly {
    type Elem = LaurentPoly;

    fn a_pow(&self, k: i64) -> LaurentPoly {
        LaurentPoly::a_pow(k)
    }
    fn zero(&self) -> LaurentPoly {
        LaurentPoly::zero()
    }
    fn one(&self) -> LaurentPoly {
        LaurentPoly::one()
    }
    fn add(&self, x: &LaurentPoly, y: &LaurentPoly) -> LaurentPoly {
        x.add(y)
    }
    fn sub(&self, x: &LaurentPoly, y: &LaurentPoly) -> LaurentPoly {
        x.sub(y)
    }
    fn mul(&self, x: &LaurentPoly, y: &LaurentPoly) -> LaurentPoly {
        x.mul(y)
    }
    fn neg(&self, x: &LaurentPoly) -> LaurentPoly {
        x.neg()
    }
    fn div(&self, x: &LaurentPoly, y: &LaurentPoly) -> Result<LaurentPoly> {
        x.div_exact(y)
    }
    fn is_zero(&self, x: &LaurentPoly) -> bool {
        x.is_zero()
    }
    fn qint(&self, n: i64) -> LaurentPoly {
        crate::recoupling::GenericA::qint_poly(n)
    }
    fn qfact(&self, n: i64) -> Result<LaurentPoly> {
        if n < 0 {
            return Err(TqftError::NegativeFactorial(n));
        }
        let mut acc = LaurentPoly::one();
        for k in 1..=n {
            acc = acc.mul(&crate::recoupling::GenericA::qint_poly(k));
        }
        Ok(acc)
    }
    fn color_bound(&self) -> Option<i64> {
        None
    }
}

/// Jones-Wenzl numerator with its cleared denominator.
#[derive(Clone, Debug)]
pub struct ScaledJw {
    pub num: TlElement<LaurentPoly>,
    pub den: LaurentPoly,
}

impl ScaledJw {
    fn reduce(mut self) -> ScaledJw {
        let env = GenericPoly;
        let mut g = self.den.clone();
        for (_, c) in self.num.terms() {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if !g.is_one() {
            let mut terms = BTreeMap::new();
            for (d, c) in self.num.terms() {
                insert_term(
                    &env,
                    &mut terms,
                    d.clone(),
                    c.div_exact(&g).expect("gcd divides"),
                );
            }
            self.num = TlElement {
                bot: self.num.bot,
                top: self.num.top,
                terms,
            };
            self.den = self.den.div_exact(&g).expect("gcd divides");
        }
        // Pull the denominator's unit factor (A-power and rational scale)
        // into the numerator so the denominator is a primitive polynomial.
        let den_norm = self.den.gcd(&self.den);
        if den_norm != self.den {
            let unit = self.den.div_exact(&den_norm).expect("unit factor");
            let inv_unit = LaurentPoly::one().div_exact(&unit).expect("unit inverts");
            let mut terms = BTreeMap::new();
            for (d, c) in self.num.terms() {
                insert_term(&env, &mut terms, d.clone(), c.mul(&inv_unit));
            }
            self.num = TlElement {
                bot: self.num.bot,
                top: self.num.top,
                terms,
            };
            self.den = den_norm;
        }
        self
    }

    /// Coefficient of a diagram as a reduced fraction.
    pub fn coeff_fraction(&self, d: &TlDiagram) -> LaurentFraction {
        match self.num.coeff(d) {
            Some(c) => LaurentFraction::new(c.clone(), self.den.clone()).expect("nonzero den"),
            None => LaurentFraction::from_integer(0),
        }
    }
}

/// Generic Jones-Wenzl ladder with cleared denominators.
pub fn jw_ladder_generic(n: usize) -> Vec<ScaledJw> {
    let env = GenericPoly;
    let mut ladder: Vec<ScaledJw> = Vec::with_capacity(n + 1);
    ladder.push(ScaledJw {
        num: identity_elem(&env, 0),
        den: LaurentPoly::one(),
    });
    if n >= 1 {
        ladder.push(ScaledJw {
            num: identity_elem(&env, 1),
            den: LaurentPoly::one(),
        });
    }
    let bracket = |k: i64| {
        let p = crate::recoupling::GenericA::qint_poly(k + 1);
        if k.rem_euclid(2) == 0 {
            p
        } else {
            p.neg()
        }
    };
    for k in 1..n {
        let prev = &ladder[k];
        let wide = tensor_elem(&env, &prev.num, &identity_elem(&env, 1));
        let e_k = e_hat_elem(&env, k + 1, k - 1).expect("index in range");
        let fe = compose_elem(&env, &wide, &e_k).expect("shapes match");
        let fef = compose_elem(&env, &fe, &wide).expect("shapes match");
        let d_prev = bracket(k as i64 - 1);
        let d_cur = bracket(k as i64);
        // f_(k+1) = [d_cur * den * F - d_prev * F e F] / (d_cur * den^2)
        let lead = scale_elem(&env, &wide, &d_cur.mul(&prev.den));
        let corr = scale_elem(&env, &fef, &d_prev);
        let num = add_elem(&env, &lead, &neg_elem(&env, &corr)).expect("same shape");
        let den = d_cur.mul(&prev.den).mul(&prev.den);
        ladder.push(ScaledJw { num, den }.reduce());
    }
    ladder
}

/// Oracle over the generic Laurent ring: builds the ladder once, then
/// evaluates closed shapes as exact fractions.
pub struct GenericOracle {
    ladder: Vec<ScaledJw>,
    strand_cap: usize,
}

impl GenericOracle {
    pub fn new(max_jw: usize, strand_cap: usize) -> GenericOracle {
        GenericOracle {
            ladder: jw_ladder_generic(max_jw),
            strand_cap,
        }
    }

    pub fn with_default_cap(max_jw: usize) -> GenericOracle {
        Self::new(max_jw, DEFAULT_STRAND_CAP)
    }

    fn check(&self, shape: &ClosedShape) -> Result<()> {
        let needed = shape_width(shape);
        if needed > self.strand_cap {
            return Err(TqftError::ShapeTooLarge {
                needed,
                cap: self.strand_cap,
            });
        }
        if max_label(shape) >= self.ladder.len() {
            return Err(TqftError::JonesWenzlUndefined {
                n: max_label(shape),
                reason: "ladder too short".into(),
            });
        }
        Ok(())
    }

    pub fn eval(&self, shape: ClosedShape) -> Result<LaurentFraction> {
        self.check(&shape)?;
        let env = GenericPoly;
        let nums: Vec<TlElement<LaurentPoly>> =
            self.ladder.iter().map(|s| s.num.clone()).collect();
        match shape {
            ClosedShape::JwClosure(n) => {
                let val = closure_value(&env, &nums[n])?;
                LaurentFraction::new(val, self.ladder[n].den.clone())
            }
            ClosedShape::Theta(a, b, c) => {
                let val = theta_scalar(&env, &nums, a, b, c)?;
                let den = self.ladder[a as usize]
                    .den
                    .mul(&self.ladder[b as usize].den)
                    .mul(&self.ladder[c as usize].den);
                LaurentFraction::new(val, den)
            }
            ClosedShape::Tet(labels) => {
                let val = tet_scalar(&env, &nums, labels)?;
                let mut den = LaurentPoly::one();
                for l in labels {
                    den = den.mul(&self.ladder[l as usize].den);
                }
                LaurentFraction::new(val, den)
            }
        }
    }

    pub fn jw(&self, n: usize) -> &ScaledJw {
        &self.ladder[n]
    }
}

/// Oracle specialized at a context: field coefficients, no denominators.
pub struct CycloOracle<'a> {
    ctx: &'a TheoryCtx,
    ladder: Vec<TlElement<CycloScalar>>,
    strand_cap: usize,
}

impl<'a> CycloOracle<'a> {
    pub fn new(ctx: &'a TheoryCtx, max_jw: usize, strand_cap: usize) -> Result<CycloOracle<'a>> {
        Ok(CycloOracle {
            ctx,
            ladder: jw_ladder(ctx, max_jw)?,
            strand_cap,
        })
    }

    pub fn eval(&self, shape: ClosedShape) -> Result<CycloScalar> {
        let needed = shape_width(&shape);
        if needed > self.strand_cap {
            return Err(TqftError::ShapeTooLarge {
                needed,
                cap: self.strand_cap,
            });
        }
        if max_label(&shape) >= self.ladder.len() {
            return Err(TqftError::JonesWenzlUndefined {
                n: max_label(&shape),
                reason: "ladder too short".into(),
            });
        }
        match shape {
            ClosedShape::JwClosure(n) => closure_value(self.ctx, &self.ladder[n]),
            ClosedShape::Theta(a, b, c) => theta_scalar(self.ctx, &self.ladder, a, b, c),
            ClosedShape::Tet(labels) => tet_scalar(self.ctx, &self.ladder, labels),
        }
    }

    pub fn jw(&self, n: usize) -> &TlElement<CycloScalar> {
        &self.ladder[n]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recoupling::{self, GenericA};

    #[test]
    fn planarity_detection() {
        // Crossing matching on 2+2 points.
        assert!(TlDiagram::new(2, 2, &[(0, 3), (1, 2)]).is_err());
        assert!(TlDiagram::new(2, 2, &[(0, 2), (1, 3)]).is_ok());
        // Nested vs crossing cups on 4 bottom points.
        assert!(TlDiagram::new(4, 0, &[(0, 3), (1, 2)]).is_ok());
        assert!(TlDiagram::new(4, 0, &[(0, 1), (2, 3)]).is_ok());
        assert!(TlDiagram::new(4, 0, &[(0, 2), (1, 3)]).is_err());
    }

    #[test]
    fn generator_relations() {
        let env = GenericPoly;
        let delta = loop_scalar(&env);
        let n = 5;
        let e: Vec<_> = (0..n - 1)
            .map(|i| e_hat_elem(&env, n, i).unwrap())
            .collect();
        let id = identity_elem(&env, n);
        for i in 0..n - 1 {
            assert_eq!(tl_mul(&env, &id, &e[i]).unwrap(), e[i]);
            let sq = tl_mul(&env, &e[i], &e[i]).unwrap();
            assert_eq!(sq, scale_elem(&env, &e[i], &delta));
            if i + 1 < n - 1 {
                let p = tl_mul(&env, &tl_mul(&env, &e[i], &e[i + 1]).unwrap(), &e[i]).unwrap();
                assert_eq!(p, e[i]);
            }
            if i >= 1 {
                let p = tl_mul(&env, &tl_mul(&env, &e[i], &e[i - 1]).unwrap(), &e[i]).unwrap();
                assert_eq!(p, e[i]);
            }
            for j in i + 2..n - 1 {
                let ij = tl_mul(&env, &e[i], &e[j]).unwrap();
                let ji = tl_mul(&env, &e[j], &e[i]).unwrap();
                assert_eq!(ij, ji);
            }
        }
    }

    #[test]
    fn beta_consistency() {
        // Normalized e_i = e_hat/delta satisfy e1 e2 e1 = beta^-1 e1 with
        // beta = delta^2 = 2 + q + q^-1.
        let gen = GenericA::new();
        let delta = loop_scalar(&gen);
        let n = 3;
        let inv_delta = delta.inv().unwrap();
        let e1 = scale_elem(&gen, &e_hat_elem(&gen, n, 0).unwrap(), &inv_delta);
        let e2 = scale_elem(&gen, &e_hat_elem(&gen, n, 1).unwrap(), &inv_delta);
        let beta = delta.mul(&delta);
        let q = LaurentFraction::a_pow(-4);
        let beta_expect = LaurentFraction::from_integer(2)
            .add(&q)
            .add(&q.inv().unwrap());
        assert_eq!(beta, beta_expect);
        let lhs = tl_mul(&gen, &tl_mul(&gen, &e1, &e2).unwrap(), &e1).unwrap();
        let rhs = scale_elem(&gen, &e1, &beta.inv().unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn jones_wenzl_low_cases() {
        let ladder = jw_ladder_generic(4);
        assert_eq!(ladder[1].num, identity_elem(&GenericPoly, 1));
        assert!(ladder[1].den.is_one());
        // f^(2) = 1 - delta^-1 e_hat.
        let id2 = TlDiagram::identity(2);
        let e1 = TlDiagram::e_hat(2, 0).unwrap();
        let c_id = ladder[2].coeff_fraction(&id2);
        let c_e = ladder[2].coeff_fraction(&e1);
        assert_eq!(c_id, LaurentFraction::from_integer(1));
        let delta = loop_scalar(&GenericA::new());
        assert_eq!(c_e, delta.inv().unwrap().neg());
    }

    #[test]
    fn jones_wenzl_defining_conditions() {
        let env = GenericPoly;
        for n in 2..=5usize {
            let ladder = jw_ladder_generic(n);
            let f = &ladder[n].num;
            let d = &ladder[n].den;
            // Idempotent: F*F = D*F.
            let ff = tl_mul(&env, f, f).unwrap();
            assert_eq!(ff, scale_elem(&env, f, d), "f^({n})^2 = f^({n})");
            for i in 0..n - 1 {
                let e = e_hat_elem(&env, n, i).unwrap();
                assert!(tl_mul(&env, f, &e).unwrap().is_zero(), "f e_{i}");
                assert!(tl_mul(&env, &e, f).unwrap().is_zero(), "e_{i} f");
            }
        }
    }

    #[test]
    fn jw_closure_values() {
        let oracle = GenericOracle::with_default_cap(5);
        let v1 = oracle.eval(ClosedShape::JwClosure(1)).unwrap();
        let delta = LaurentPoly::a_pow(2).add(&LaurentPoly::a_pow(-2)).neg();
        assert_eq!(v1, LaurentFraction::from_poly(delta));
        let gen = GenericA::new();
        for n in 0..=5usize {
            let v = oracle.eval(ClosedShape::JwClosure(n)).unwrap();
            let expect = recoupling::bracket_in(&gen, n as i64);
            assert_eq!(v, expect, "closure of f^({n})");
        }
    }

    #[test]
    fn theta_oracle_matches_formula_generically() {
        let oracle = GenericOracle::with_default_cap(4);
        let gen = GenericA::new();
        for (a, b, c) in [(1, 1, 0), (1, 1, 2), (2, 2, 2), (2, 1, 1), (2, 2, 0)] {
            let net = oracle.eval(ClosedShape::Theta(a, b, c)).unwrap();
            let formula = recoupling::theta_in(&gen, a, b, c).unwrap();
            assert_eq!(net, formula, "theta({a},{b},{c})");
        }
    }

    #[test]
    fn tet_oracle_matches_formula_generically() {
        let oracle = GenericOracle::new(2, 8);
        let gen = GenericA::new();
        for labels in [
            [0, 0, 0, 0, 0, 0],
            [1, 1, 1, 1, 2, 2],
            [2, 1, 2, 1, 1, 0],
            [2, 2, 2, 2, 2, 2],
            [1, 1, 2, 2, 2, 1],
        ] {
            let net = oracle.eval(ClosedShape::Tet(labels)).unwrap();
            let formula = recoupling::tet_in(
                &gen, labels[0], labels[1], labels[2], labels[3], labels[4], labels[5],
            )
            .unwrap();
            assert_eq!(net, formula, "tet({labels:?})");
        }
    }

    #[test]
    fn specialized_oracle_matches_generic() {
        let ctx = TheoryCtx::new(20, 1).unwrap();
        let oracle = CycloOracle::new(&ctx, 4, DEFAULT_STRAND_CAP).unwrap();
        let gen_oracle = GenericOracle::with_default_cap(4);
        for (a, b, c) in [(1, 1, 0), (1, 1, 2), (2, 2, 2), (3, 2, 1)] {
            let specialized = oracle.eval(ClosedShape::Theta(a, b, c)).unwrap();
            let gen = gen_oracle
                .eval(ClosedShape::Theta(a, b, c))
                .unwrap()
                .eval_cyclo(&ctx)
                .unwrap();
            assert_eq!(specialized, gen, "theta({a},{b},{c}) at m=20");
        }
        // Specialized closures reproduce Delta_n, settling the sign form.
        for n in 0..=3usize {
            let v = oracle.eval(ClosedShape::JwClosure(n)).unwrap();
            assert_eq!(v, recoupling::delta_i(&ctx, n as i64), "Delta_{n}");
        }
    }

    #[test]
    fn strand_cap_enforced() {
        let oracle = GenericOracle::new(6, 8);
        assert!(matches!(
            oracle.eval(ClosedShape::Theta(6, 6, 6)),
            Err(TqftError::ShapeTooLarge { .. })
        ));
    }

    #[test]
    fn bubble_collapse() {
        // The (i, j) bubble on a k-strand collapses to
        // (theta(i,j,k)/<k>) f^(k), as elements.
        let gen = GenericA::new();
        let ladder = jw_ladder(&gen, 4).unwrap();
        for (i, j, k) in [(1i64, 1, 2), (1, 1, 0), (2, 1, 1), (2, 2, 2), (3, 1, 2)] {
            let w = TlDiagram::vertex(i, j, k).unwrap();
            let mut bubble = TlElement::from_diagram(w.clone(), gen.one());
            bubble = compose_elem(
                &gen,
                &bubble,
                &tensor_elem(&gen, &ladder[i as usize], &identity_elem(&gen, j as usize)),
            )
            .unwrap();
            bubble = compose_elem(
                &gen,
                &bubble,
                &tensor_elem(&gen, &identity_elem(&gen, i as usize), &ladder[j as usize]),
            )
            .unwrap();
            bubble = compose_elem(&gen, &bubble, &TlElement::from_diagram(w.flip(), gen.one()))
                .unwrap();
            let theta = recoupling::theta_in(&gen, i, j, k).unwrap();
            let coeff = theta.div(&recoupling::bracket_in(&gen, k)).unwrap();
            // The rule applies with the k-edge carrying its projector on
            // both sides of the bubble.
            let fk = &ladder[k as usize];
            let project = |x: &TlElement<LaurentFraction>| {
                let below = compose_elem(&gen, fk, x).unwrap();
                compose_elem(&gen, &below, fk).unwrap()
            };
            let lhs = project(&bubble);
            let rhs = scale_elem(&gen, fk, &coeff);
            assert_eq!(lhs, rhs, "bubble ({i},{j};{k})");
        }
    }

    #[test]
    fn identity_expansion() {
        // f_i (x) f_j expands as sum_k <k>/<i,j,k> of the k-channel
        // vertex sandwich.
        let gen = GenericA::new();
        let ladder = jw_ladder(&gen, 4).unwrap();
        for (i, j) in [(1i64, 1), (2, 1), (2, 2), (3, 1)] {
            let lhs = tensor_elem(
                &gen,
                &ladder[i as usize],
                &ladder[j as usize],
            );
            let mut rhs = TlElement::zero((i + j) as usize, (i + j) as usize);
            for k in 0..=(i + j) {
                if !crate::recoupling::ColorTriple(i, j, k).admissible(None) {
                    continue;
                }
                let w = TlDiagram::vertex(i, j, k).unwrap();
                let mut term = TlElement::from_diagram(w.flip(), gen.one());
                term = compose_elem(&gen, &term, &ladder[k as usize]).unwrap();
                term = compose_elem(&gen, &term, &TlElement::from_diagram(w, gen.one())).unwrap();
                let coeff = recoupling::bracket_in(&gen, k)
                    .div(&recoupling::theta_in(&gen, i, j, k).unwrap())
                    .unwrap();
                rhs = add_elem(&gen, &rhs, &scale_elem(&gen, &term, &coeff)).unwrap();
            }
            // Compare after absorbing the outer projectors on both sides.
            let sandwich = |x: &TlElement<LaurentFraction>| {
                let wide_i = tensor_elem(
                    &gen,
                    &ladder[i as usize],
                    &identity_elem(&gen, j as usize),
                );
                let wide_j = tensor_elem(
                    &gen,
                    &identity_elem(&gen, i as usize),
                    &ladder[j as usize],
                );
                let y = compose_elem(&gen, &wide_i, x).unwrap();
                let y = compose_elem(&gen, &wide_j, &y).unwrap();
                let y = compose_elem(&gen, &y, &wide_i).unwrap();
                compose_elem(&gen, &y, &wide_j).unwrap()
            };
            assert_eq!(sandwich(&lhs), sandwich(&rhs), "expansion ({i},{j})");
        }
    }

    #[test]
    fn capped_jw_is_zero() {
        let env = GenericPoly;
        for n in 2..=4usize {
            let ladder = jw_ladder_generic(n);
            let f = &ladder[n].num;
            for i in 0..n - 1 {
                let cap_row = TlDiagram::identity(i)
                    .tensor(&TlDiagram::cap(1))
                    .tensor(&TlDiagram::identity(n - i - 2));
                let capped =
                    compose_elem(&env, f, &TlElement::from_diagram(cap_row, env.one())).unwrap();
                assert!(capped.is_zero(), "cap at {i} on f^({n})");
            }
        }
    }
}
