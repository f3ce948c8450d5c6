//! Fast multipoint evaluation of `L(λP∞)` on a fiber-structured point set,
//! and its inverse.
//!
//! Functions are handled as *box vectors*: for a stage of degree `m` over a
//! base whose engine has box length `B`, index `i·B + β` holds the
//! coefficient of `y^i · b_β`, with `b_β` the base's box functions. The
//! stage monomial exponent `i = Σ i_k |G_{k-1}|` is split into one digit per
//! level, so splitting off `y_{k-1}^{i_k}` is a pure re-indexing and the
//! whole recursion runs breadth-first over contiguous blocks.
//!
//! A rational base is evaluated by a univariate FFT on a full domain. When
//! the base places are a proper subset of that domain (or of the lower
//! stage's points), a [`Restricted`] wrapper drops as many box positions as
//! there are missing points, always the ones with the largest pole orders,
//! so that every monomial of small pole order keeps a unique preimage.

use std::sync::Mutex;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::base_mpe::EvalDomain;
use crate::error::{Error, Result};
use crate::field::{factor_smooth, matrix, smooth_bound, Arith, Fe, Field, OpCounter, OpCounts};
use crate::rroch::{self, FunctionRepr, Monomial};
use crate::textio;
use crate::tower::{self, ExtensionDescriptor, ExtensionKind, LevelData, Places, PointSet};

/// Evaluation of box vectors at an ordered point set.
pub trait Engine: Send + Sync {
    /// Number of points.
    fn len(&self) -> usize;
    /// Pole order of every box position.
    fn box_poles(&self) -> &[u64];
    /// Box positions that [`Engine::interp`] may return as nonzero.
    fn info(&self) -> &[bool];
    fn eval(&self, ar: &Arith, coeffs: &[Fe]) -> Vec<Fe>;
    /// The unique box vector supported on `info()` with these values.
    fn interp(&self, ar: &Arith, values: &[Fe]) -> Vec<Fe>;

    fn box_len(&self) -> usize {
        self.box_poles().len()
    }
}

/// Univariate polynomials `x^0 .. x^{n-1}` on a full FFT domain.
pub struct FftEngine {
    domain: EvalDomain,
    poles: Vec<u64>,
    info: Vec<bool>,
}

impl FftEngine {
    pub fn new(domain: EvalDomain) -> FftEngine {
        let n = domain.len();
        FftEngine { domain, poles: (0..n as u64).collect(), info: vec![true; n] }
    }

    pub fn domain(&self) -> &EvalDomain {
        &self.domain
    }
}

impl Engine for FftEngine {
    fn len(&self) -> usize {
        self.domain.len()
    }

    fn box_poles(&self) -> &[u64] {
        &self.poles
    }

    fn info(&self) -> &[bool] {
        &self.info
    }

    fn eval(&self, ar: &Arith, coeffs: &[Fe]) -> Vec<Fe> {
        self.domain.eval(ar, coeffs).expect("box fits the domain")
    }

    fn interp(&self, ar: &Arith, values: &[Fe]) -> Vec<Fe> {
        self.domain.interp(ar, values).expect("one value per point")
    }
}

/// An engine evaluated at an ordered subset `keep` of its inner points.
pub struct Restricted {
    inner: Box<dyn Engine>,
    keep: Vec<usize>,
    missing: Vec<usize>,
    /// `cols[j]`: the inner preimage of the unit vector at `missing[j]`.
    cols: Vec<Vec<Fe>>,
    /// Box positions removed from the inner information set.
    dropped: Vec<usize>,
    /// Inverse of `cols[j][dropped[i]]`.
    a_inv: Vec<Vec<Fe>>,
    info: Vec<bool>,
}

impl Restricted {
    pub fn new(ar: &Arith, inner: Box<dyn Engine>, keep: Vec<usize>) -> Result<Restricted> {
        let n = inner.len();
        let mut seen = vec![false; n];
        for &i in &keep {
            if i >= n || seen[i] {
                return Err(Error::BadDomain(format!("kept position {i} is out of range or repeated")));
            }
            seen[i] = true;
        }
        let missing: Vec<usize> = (0..n).filter(|&i| !seen[i]).collect();
        let cols: Vec<Vec<Fe>> = missing
            .iter()
            .map(|&i| {
                let mut e = vec![Fe::ZERO; n];
                e[i] = Fe::ONE;
                inner.interp(ar, &e)
            })
            .collect();

        // greedy choice by descending pole order, keeping rows independent
        let mut cand: Vec<usize> = (0..inner.box_len()).filter(|&b| inner.info()[b]).collect();
        cand.sort_by(|&a, &b| inner.box_poles()[b].cmp(&inner.box_poles()[a]).then(b.cmp(&a)));
        let mut dropped = Vec::with_capacity(missing.len());
        let mut reduced: Vec<(usize, Vec<Fe>)> = Vec::new();
        for b in cand {
            if dropped.len() == missing.len() {
                break;
            }
            let mut row: Vec<Fe> = cols.iter().map(|c| c[b]).collect();
            for (piv, r) in &reduced {
                if !row[*piv].is_zero() {
                    let f = ar.mul(row[*piv], ar.inv(r[*piv]).expect("pivot is nonzero"));
                    for (x, &y) in row.iter_mut().zip(r) {
                        *x = ar.sub(*x, ar.mul(f, y));
                    }
                }
            }
            if let Some(piv) = row.iter().position(|x| !x.is_zero()) {
                reduced.push((piv, row));
                dropped.push(b);
            }
        }
        if dropped.len() < missing.len() {
            return Err(Error::BadDomain("restriction leaves no unique interpolant".into()));
        }
        let a: Vec<Vec<Fe>> = dropped.iter().map(|&b| cols.iter().map(|c| c[b]).collect()).collect();
        let a_inv = matrix::invert(ar, &a).ok_or_else(|| Error::BadDomain("singular restriction".into()))?;
        let mut info = inner.info().to_vec();
        for &b in &dropped {
            info[b] = false;
        }
        Ok(Restricted { inner, keep, missing, cols, dropped, a_inv, info })
    }

    /// Number of inner points left out.
    pub fn missing(&self) -> usize {
        self.missing.len()
    }
}

impl Engine for Restricted {
    fn len(&self) -> usize {
        self.keep.len()
    }

    fn box_poles(&self) -> &[u64] {
        self.inner.box_poles()
    }

    fn info(&self) -> &[bool] {
        &self.info
    }

    fn eval(&self, ar: &Arith, coeffs: &[Fe]) -> Vec<Fe> {
        let full = self.inner.eval(ar, coeffs);
        self.keep.iter().map(|&i| full[i]).collect()
    }

    fn interp(&self, ar: &Arith, values: &[Fe]) -> Vec<Fe> {
        let mut full = vec![Fe::ZERO; self.inner.len()];
        for (&i, &v) in self.keep.iter().zip(values) {
            full[i] = v;
        }
        let mut c = self.inner.interp(ar, &full);
        if self.dropped.is_empty() {
            return c;
        }
        let rhs: Vec<Fe> = self.dropped.iter().map(|&b| c[b]).collect();
        for (row, col) in self.a_inv.iter().zip(&self.cols) {
            let v = row.iter().zip(&rhs).fold(Fe::ZERO, |acc, (&a, &r)| ar.sub(acc, ar.mul(a, r)));
            if v.is_zero() {
                continue;
            }
            for (x, &y) in c.iter_mut().zip(col) {
                if !y.is_zero() {
                    *x = ar.add(*x, ar.mul(v, y));
                }
            }
        }
        for &b in &self.dropped {
            debug_assert!(c[b].is_zero());
            c[b] = Fe::ZERO;
        }
        c
    }
}

/// One Galois stage over a base engine.
pub struct Stage {
    base: Box<dyn Engine>,
    m: usize,
    n: usize,
    levels: Vec<LevelData>,
    /// `tables[j][n] = y_j` on `level_view(j)`.
    tables: Vec<Vec<Fe>>,
    /// `inverses[j][n']`: inverse Vandermonde of the `p_{j+1}` children of
    /// level-`(j+1)` point `n'`.
    inverses: Vec<Vec<Vec<Vec<Fe>>>>,
    poles: Vec<u64>,
    info: Vec<bool>,
}

impl Stage {
    pub fn new(ar: &Arith, desc: &ExtensionDescriptor, pts: &PointSet, base: Box<dyn Engine>) -> Result<Stage> {
        let m = desc.degree() as usize;
        if base.len() != pts.num_places() {
            return Err(Error::LengthMismatch { expected: pts.num_places(), got: base.len() });
        }
        let levels = tower::build_levels(ar.field, desc)?;
        let tables = tower::level_y_values(ar, pts, &levels);
        let inverses = tables
            .iter()
            .zip(&levels)
            .map(|(t, lv)| tower::fiber_inverses(ar, t, lv.prime as usize))
            .collect::<Result<Vec<_>>>()?;
        let d = desc.d();
        let bp = base.box_poles();
        let poles = (0..m as u64).flat_map(|i| bp.iter().map(move |&b| i * d + m as u64 * b)).collect();
        let info = (0..m).flat_map(|_| base.info().iter().copied()).collect();
        Ok(Stage { m, n: pts.len(), levels, tables, inverses, poles, info, base })
    }

    pub fn levels(&self) -> &[LevelData] {
        &self.levels
    }

    pub fn tables(&self) -> &[Vec<Fe>] {
        &self.tables
    }

    pub fn base(&self) -> &dyn Engine {
        self.base.as_ref()
    }
}

impl Engine for Stage {
    fn len(&self) -> usize {
        self.n
    }

    fn box_poles(&self) -> &[u64] {
        &self.poles
    }

    fn info(&self) -> &[bool] {
        &self.info
    }

    fn eval(&self, ar: &Arith, coeffs: &[Fe]) -> Vec<Fe> {
        let b = self.base.box_len();
        let mut cur: Vec<Option<Vec<Fe>>> = coeffs
            .chunks(b)
            .map(|blk| if blk.iter().all(|c| c.is_zero()) { None } else { Some(self.base.eval(ar, blk)) })
            .collect();
        cur.resize(self.m, None);
        for j in (1..=self.levels.len()).rev() {
            let p = self.levels[j - 1].prime as usize;
            let g = self.levels[j - 1].degree_below as usize / p;
            let ys = &self.tables[j - 1];
            let mut next = Vec::with_capacity(g);
            for iota in 0..g {
                let parts: Vec<Option<&Vec<Fe>>> = (0..p).map(|k| cur[iota + k * g].as_ref()).collect();
                let Some(top) = parts.iter().rposition(|x| x.is_some()) else {
                    next.push(None);
                    continue;
                };
                let out = (0..ys.len())
                    .map(|n| {
                        let y = ys[n];
                        let mut acc = parts[top].expect("present")[n / p];
                        for part in parts[..top].iter().rev() {
                            acc = ar.mul(acc, y);
                            if let Some(v) = part {
                                acc = ar.add(acc, v[n / p]);
                            }
                        }
                        acc
                    })
                    .collect();
                next.push(Some(out));
            }
            cur = next;
        }
        cur.pop().flatten().unwrap_or_else(|| vec![Fe::ZERO; self.n])
    }

    fn interp(&self, ar: &Arith, values: &[Fe]) -> Vec<Fe> {
        let mut cur: Vec<Vec<Fe>> = vec![values.to_vec()];
        for (j, lv) in self.levels.iter().enumerate() {
            let p = lv.prime as usize;
            let g = cur.len();
            let len = cur[0].len() / p;
            let mut next = vec![vec![Fe::ZERO; len]; g * p];
            for (iota, vals) in cur.iter().enumerate() {
                for (np, inv) in self.inverses[j].iter().enumerate() {
                    let fiber = &vals[np * p..(np + 1) * p];
                    for (k, row) in inv.iter().enumerate() {
                        let mut acc = ar.mul(row[0], fiber[0]);
                        for c in 1..p {
                            acc = ar.add(acc, ar.mul(row[c], fiber[c]));
                        }
                        next[iota + k * g][np] = acc;
                    }
                }
            }
            cur = next;
        }
        cur.iter().flat_map(|blk| self.base.interp(ar, blk)).collect()
    }
}

/// Evaluation vector aligned with the point set order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Codeword {
    pub values: Vec<Fe>,
}

impl Codeword {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Number of nonzero positions.
    pub fn weight(&self) -> usize {
        self.values.iter().filter(|v| !v.is_zero()).count()
    }
}

/// Operation counts per phase.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Metrics {
    pub plan: OpCounts,
    pub encode: OpCounts,
    pub unencode: OpCounts,
}

/// Precomputed tables for one (descriptor, λ, point set) triple.
pub struct EncodePlan {
    field: Field,
    desc: ExtensionDescriptor,
    lambda: u64,
    hash: String,
    basis: Vec<Monomial>,
    box_index: Vec<usize>,
    engine: Stage,
    metrics: Mutex<Metrics>,
}

fn pick_rational_domain(field: &Field, desc: &ExtensionDescriptor, xs: &[Fe]) -> Result<EvalDomain> {
    let mult_ok = matches!(desc.kind, ExtensionKind::Kummer { .. })
        && xs.iter().all(|x| !x.is_zero())
        && factor_smooth(field.q() - 1, smooth_bound()).is_ok();
    if mult_ok {
        EvalDomain::multiplicative(field, field.q() - 1)
    } else {
        EvalDomain::full_field(field)
    }
}

fn restrict(ar: &Arith, inner: Box<dyn Engine>, keep: Vec<usize>) -> Result<Box<dyn Engine>> {
    if keep.len() == inner.len() && keep.iter().enumerate().all(|(i, &k)| i == k) {
        Ok(inner)
    } else {
        Ok(Box::new(Restricted::new(ar, inner, keep)?))
    }
}

fn build_stage(ar: &Arith, desc: &ExtensionDescriptor, pts: &PointSet) -> Result<Stage> {
    let base: Box<dyn Engine> = match (pts.places(), desc.base_descriptor()) {
        (Places::Rational(xs), None) => {
            let domain = pick_rational_domain(ar.field, desc, xs)?;
            let index: std::collections::HashMap<Fe, usize> =
                domain.points().iter().enumerate().map(|(i, &x)| (x, i)).collect();
            let keep = xs
                .iter()
                .map(|x| index.get(x).copied().ok_or_else(|| Error::BadDomain(format!("{x} is not a domain point"))))
                .collect::<Result<Vec<_>>>()?;
            restrict(ar, Box::new(FftEngine::new(domain)), keep)?
        }
        (Places::Nested { lower, selected }, Some(b)) => {
            let inner = build_stage(ar, b, lower)?;
            restrict(ar, Box::new(inner), selected.clone())?
        }
        _ => return Err(Error::InvalidDescriptor("point set does not match the descriptor's base".into())),
    };
    Stage::new(ar, desc, pts, base)
}

pub fn plan(field: &Field, desc: &ExtensionDescriptor, lambda: u64, pts: &PointSet) -> Result<EncodePlan> {
    if lambda >= pts.len() as u64 {
        return Err(Error::LambdaTooLarge { lambda, n: pts.len() });
    }
    let ops = OpCounter::new();
    let ar = field.counted(&ops);
    let engine = build_stage(&ar, desc, pts)?;
    let basis = rroch::basis_for(desc, lambda);
    let lens = box_lens(desc, &engine);
    let box_index = basis
        .iter()
        .map(|mono| {
            let mut idx = mono.exps[0] as usize;
            for k in 1..mono.exps.len() {
                idx += mono.exps[k] as usize * lens[k - 1];
            }
            idx
        })
        .collect::<Vec<_>>();
    if box_index.iter().any(|&i| i >= engine.box_len() || !engine.info()[i]) {
        return Err(Error::LambdaTooLarge { lambda, n: pts.len() });
    }
    let mut h = Sha256::new();
    h.update(desc.canonical_json().as_bytes());
    h.update(lambda.to_le_bytes());
    h.update(pts.to_json(desc).to_string().as_bytes());
    let hash = hex::encode(h.finalize())[..16].to_string();
    let metrics = Mutex::new(Metrics { plan: ops.snapshot(), ..Metrics::default() });
    Ok(EncodePlan { field: field.clone(), desc: desc.clone(), lambda, hash, basis, box_index, engine, metrics })
}

/// Box lengths bottom-up: `lens[0]` is the rational base domain, `lens[k]`
/// the box of stage `k`.
fn box_lens(desc: &ExtensionDescriptor, top: &Stage) -> Vec<usize> {
    let mut degrees = Vec::new();
    let mut d = Some(desc);
    while let Some(x) = d {
        degrees.push(x.degree() as usize);
        d = x.base_descriptor();
    }
    degrees.reverse();
    let mut b = top.box_len();
    for m in degrees.iter().rev() {
        b /= m;
    }
    let mut lens = vec![b];
    for m in degrees {
        b *= m;
        lens.push(b);
    }
    lens
}

impl EncodePlan {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn descriptor(&self) -> &ExtensionDescriptor {
        &self.desc
    }

    pub fn lambda(&self) -> u64 {
        self.lambda
    }

    /// Short hex digest of (descriptor, λ, point set).
    pub fn hash(&self) -> &str {
        &self.hash
    }

    /// Code length.
    pub fn n(&self) -> usize {
        self.engine.len()
    }

    /// Code dimension.
    pub fn k(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    /// Levels of the top extension.
    pub fn levels(&self) -> &[LevelData] {
        self.engine.levels()
    }

    /// y-value tables of the top extension, one per level.
    pub fn level_tables(&self) -> &[Vec<Fe>] {
        self.engine.tables()
    }

    fn to_box(&self, f: &FunctionRepr) -> Result<Vec<Fe>> {
        if f.lambda != self.lambda {
            return Err(Error::PlanMismatch { expected: self.lambda, got: f.lambda });
        }
        if f.coeffs.len() != self.basis.len() {
            return Err(Error::LengthMismatch { expected: self.basis.len(), got: f.coeffs.len() });
        }
        let mut b = vec![Fe::ZERO; self.engine.box_len()];
        for (&i, &c) in self.box_index.iter().zip(&f.coeffs) {
            b[i] = c;
        }
        Ok(b)
    }

    fn record(&self, phase: fn(&mut Metrics) -> &mut OpCounts, ops: &OpCounter) {
        let mut m = self.metrics.lock().expect("metrics lock");
        *phase(&mut m) += ops.snapshot();
    }
}

/// Evaluates `f` at every point of the plan's point set.
pub fn fmpe_encode(plan: &EncodePlan, f: &FunctionRepr) -> Result<Codeword> {
    let b = plan.to_box(f)?;
    let ops = OpCounter::new();
    let values = plan.engine.eval(&plan.field.counted(&ops), &b);
    plan.record(|m| &mut m.encode, &ops);
    Ok(Codeword { values })
}

/// Recovers `f` from its codeword. With `verify`, re-encodes and fails
/// with `NotInCode` on any difference.
pub fn fmpe_unencode(plan: &EncodePlan, c: &Codeword, verify: bool) -> Result<FunctionRepr> {
    if c.values.len() != plan.n() {
        return Err(Error::LengthMismatch { expected: plan.n(), got: c.values.len() });
    }
    let ops = OpCounter::new();
    let b = plan.engine.interp(&plan.field.counted(&ops), &c.values);
    plan.record(|m| &mut m.unencode, &ops);
    let f = FunctionRepr { lambda: plan.lambda, coeffs: plan.box_index.iter().map(|&i| b[i]).collect() };
    if verify && fmpe_encode(plan, &f)? != *c {
        return Err(Error::NotInCode);
    }
    Ok(f)
}

pub fn encode_message(plan: &EncodePlan, message: &[Fe]) -> Result<Codeword> {
    fmpe_encode(plan, &rroch::message_to_function(&plan.desc, plan.lambda, message)?)
}

pub fn decode_message(plan: &EncodePlan, c: &Codeword, verify: bool) -> Result<Vec<Fe>> {
    Ok(rroch::function_to_message(&fmpe_unencode(plan, c, verify)?))
}

/// Counts accumulated since the plan was built or last reset.
pub fn metrics(plan: &EncodePlan) -> Metrics {
    *plan.metrics.lock().expect("metrics lock")
}

/// Clears the encode and unencode counters.
pub fn reset_metrics(plan: &EncodePlan) {
    let mut m = plan.metrics.lock().expect("metrics lock");
    m.encode = OpCounts::default();
    m.unencode = OpCounts::default();
}

pub fn write_codeword(plan: &EncodePlan, c: &Codeword) -> String {
    textio::write(
        "codeword",
        &[("hash", plan.hash.clone()), ("lambda", plan.lambda.to_string()), ("n", c.len().to_string())],
        &c.values,
    )
}

pub fn read_codeword(plan: &EncodePlan, text: &str) -> Result<Codeword> {
    let (header, values) = textio::read(text, plan.n(), plan.field.q())?;
    if let Some(h) = header {
        h.expect("hash", &plan.hash)?;
        h.expect("lambda", &plan.lambda.to_string())?;
    }
    Ok(Codeword { values })
}
