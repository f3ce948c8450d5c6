//! Galois extensions `E = F(y)` with a box-certified subgroup chain, and the
//! fiber-structured point sets they are evaluated on.
//!
//! A descriptor is either Kummer (`y^m = u(t)`, `m | q - 1`) or
//! Artin–Schreier (`ℓ_W(y) = u(t)` for the subspace polynomial of a
//! GF(p)-space `W`), over a base that is the rational field `F_q(x)` or
//! another descriptor. `t` is the base's generator: `x` for a rational base,
//! the base's own `y` otherwise.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::field::{
    factor_smooth, gfp, linearized, matrix, smooth_bound, Arith, Fe, Field, FieldSpec, LinearizedPoly, OpCounter,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExtensionKind {
    Kummer { degree: u64 },
    ArtinSchreier { w_basis: Vec<Fe> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Base {
    Rational,
    Nested(Box<ExtensionDescriptor>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionDescriptor {
    pub field: FieldSpec,
    pub kind: ExtensionKind,
    /// `u(t)`, constant term first.
    pub u: Vec<Fe>,
    pub base: Base,
}

impl ExtensionDescriptor {
    pub fn kummer(field: &Field, degree: u64, u: Vec<Fe>, base: Base) -> ExtensionDescriptor {
        ExtensionDescriptor { field: field.spec().clone(), kind: ExtensionKind::Kummer { degree }, u, base }
    }

    pub fn artin_schreier(field: &Field, w_basis: Vec<Fe>, u: Vec<Fe>, base: Base) -> ExtensionDescriptor {
        ExtensionDescriptor { field: field.spec().clone(), kind: ExtensionKind::ArtinSchreier { w_basis }, u, base }
    }

    /// Extension degree `m = [E : F]`.
    pub fn degree(&self) -> u64 {
        match &self.kind {
            ExtensionKind::Kummer { degree } => *degree,
            ExtensionKind::ArtinSchreier { w_basis } => (self.field.p as u64).pow(w_basis.len() as u32),
        }
    }

    pub fn base_descriptor(&self) -> Option<&ExtensionDescriptor> {
        match &self.base {
            Base::Rational => None,
            Base::Nested(b) => Some(b),
        }
    }

    /// Pole order of the base generator `t` in the base field.
    pub fn base_generator_pole(&self) -> u64 {
        match &self.base {
            Base::Rational => 1,
            Base::Nested(b) => b.d(),
        }
    }

    /// `deg u`.
    pub fn u_degree(&self) -> u64 {
        self.u.iter().rposition(|c| !c.is_zero()).unwrap_or(0) as u64
    }

    /// Pole order of `y` at the place at infinity: `deg u · pole(t)`.
    pub fn d(&self) -> u64 {
        self.u_degree() * self.base_generator_pole()
    }

    /// Ascending prime factorization of the degree, one entry per level.
    pub fn radices(&self) -> Result<Vec<u64>> {
        match &self.kind {
            ExtensionKind::Kummer { degree } => factor_smooth(*degree, smooth_bound()),
            ExtensionKind::ArtinSchreier { w_basis } => {
                let p = self.field.p as u64;
                if p > smooth_bound() {
                    return Err(Error::NotSmooth { n: p, bound: smooth_bound(), witness: p });
                }
                Ok(vec![p; w_basis.len()])
            }
        }
    }

    /// Number of stacked extensions, counting this one.
    pub fn stages(&self) -> usize {
        1 + self.base_descriptor().map_or(0, |b| b.stages())
    }

    /// Canonical JSON encoding.
    pub fn canonical_json(&self) -> String {
        serde_json::to_string(self).expect("descriptor serializes")
    }

    /// Hex SHA-256 of the canonical JSON.
    pub fn hash(&self) -> String {
        hex::encode(Sha256::digest(self.canonical_json().as_bytes()))
    }
}

/// Evaluates a polynomial by Horner's rule (setup, uncounted).
pub fn poly_eval(field: &Field, c: &[Fe], x: Fe) -> Fe {
    c.iter().rev().fold(Fe::ZERO, |acc, &ci| field.add(field.mul(acc, x), ci))
}

fn trim(v: &mut Vec<Fe>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn poly_rem(field: &Field, a: &[Fe], b: &[Fe]) -> Vec<Fe> {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lead = field.inv(b[db]).expect("trimmed divisor");
    while r.len() > db {
        let top = r.len() - 1;
        let c = field.mul(r[top], lead);
        for (i, &bi) in b.iter().enumerate() {
            let pos = top - db + i;
            r[pos] = field.sub(r[pos], field.mul(c, bi));
        }
        trim(&mut r);
    }
    r
}

fn poly_gcd_degree(field: &Field, a: &[Fe], b: &[Fe]) -> usize {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = poly_rem(field, &a, &b);
        a = b;
        b = r;
    }
    a.len().saturating_sub(1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum P4Check {
    /// The base passes its own checks.
    Base,
    /// Field and base field agree.
    SameField,
    /// `u` is nonconstant.
    Nonconstant,
    /// Degree is B-smooth.
    SmoothDegree,
    /// Kummer: `m | q - 1`.
    DividesOrder,
    /// Kummer: `gcd(u, u') = 1`.
    SquareFree,
    /// Artin–Schreier: the W basis is GF(p)-independent.
    LinearIndependence,
    /// `gcd(m, d) = 1`.
    Coprime,
}

impl fmt::Display for P4Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_string(self).expect("serializes");
        write!(f, "{}", s.trim_matches('"'))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct P4Report {
    pub passed: bool,
    /// `"kummer"` or `"artin_schreier"`: which integral-basis criterion
    /// certifies the remaining conditions.
    pub criterion: String,
    pub checks: Vec<(P4Check, bool)>,
}

impl P4Report {
    pub fn failures(&self) -> Vec<P4Check> {
        self.checks.iter().filter(|(_, ok)| !ok).map(|(c, _)| *c).collect()
    }

    pub fn into_result(self) -> Result<()> {
        if self.passed {
            return Ok(());
        }
        let names: Vec<String> = self.failures().iter().map(|c| c.to_string()).collect();
        Err(Error::InvalidDescriptor(names.join(", ")))
    }
}

/// Syntactic checks of the box conditions. Never fails; inspect the report.
pub fn verify_p4(desc: &ExtensionDescriptor) -> P4Report {
    let mut checks = Vec::new();
    if let Some(b) = desc.base_descriptor() {
        checks.push((P4Check::Base, verify_p4(b).passed));
        checks.push((P4Check::SameField, b.field == desc.field));
    }
    let Ok(field) = Field::new(desc.field.clone()) else {
        return P4Report { passed: false, criterion: String::new(), checks: vec![(P4Check::SameField, false)] };
    };
    let m = desc.degree();
    let d = desc.d();
    checks.push((P4Check::Nonconstant, desc.u_degree() > 0));
    checks.push((P4Check::SmoothDegree, desc.radices().is_ok()));
    let criterion = match &desc.kind {
        ExtensionKind::Kummer { degree } => {
            checks.push((P4Check::DividesOrder, *degree > 0 && (field.q() - 1) % degree == 0));
            let deriv: Vec<Fe> =
                desc.u.iter().enumerate().skip(1).map(|(i, &c)| field.scale(i as u64, c)).collect();
            let sf = desc.u_degree() > 0 && poly_gcd_degree(&field, &desc.u, &deriv) == 0;
            checks.push((P4Check::SquareFree, sf));
            "kummer"
        }
        ExtensionKind::ArtinSchreier { w_basis } => {
            let valid = w_basis.iter().all(|w| (w.value() as u64) < field.q());
            let indep = valid && linearized::greedy_basis(&field, w_basis).len() == w_basis.len();
            checks.push((P4Check::LinearIndependence, indep));
            "artin_schreier"
        }
    };
    checks.push((P4Check::Coprime, m > 0 && gfp::gcd(m, d) == 1));
    P4Report { passed: checks.iter().all(|(_, ok)| *ok), criterion: criterion.into(), checks }
}

/// How `y_{k-1}` maps to `y_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratorMap {
    /// `y_k = y_{k-1}^p`.
    Power(u64),
    /// `y_k = y_{k-1}^p - c·y_{k-1}`.
    LinearizedStep(Fe),
}

impl GeneratorMap {
    pub fn apply(&self, ar: &Arith, y: Fe) -> Fe {
        match *self {
            GeneratorMap::Power(p) => ar.pow(y, p),
            GeneratorMap::LinearizedStep(c) => {
                let p = ar.field.p() as u64;
                let yp = ar.pow(y, p);
                ar.sub(yp, ar.mul(c, y))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelData {
    /// `k` in `1..=r`.
    pub index: usize,
    /// `p_k`.
    pub prime: u64,
    /// `|G_k| = p_1 ⋯ p_k`.
    pub degree_below: u64,
    pub map: GeneratorMap,
    /// Conjugation data for digit `t_k`: fiber point `t` is
    /// `β0 · ∏ labels_k[t_k]` (Kummer) or `β0 + Σ labels_k[t_k]` (AS).
    pub fiber_labels: Vec<Fe>,
}

/// The subgroup chain of the top extension (nested bases are not included).
pub fn build_levels(field: &Field, desc: &ExtensionDescriptor) -> Result<Vec<LevelData>> {
    let radices = desc.radices()?;
    let m = desc.degree();
    match &desc.kind {
        ExtensionKind::Kummer { .. } => {
            let zeta = field.root_of_unity(m)?;
            let mut below = 1u64;
            Ok(radices
                .iter()
                .enumerate()
                .map(|(k, &p)| {
                    below *= p;
                    let xi = field.pow(zeta, m / below);
                    let fiber_labels = (0..p).map(|t| field.pow(xi, t)).collect();
                    LevelData { index: k + 1, prime: p, degree_below: below, map: GeneratorMap::Power(p), fiber_labels }
                })
                .collect())
        }
        ExtensionKind::ArtinSchreier { w_basis } => {
            let (_, consts) = LinearizedPoly::subspace(field, w_basis)?;
            let p = field.p() as u64;
            Ok(w_basis
                .iter()
                .zip(consts)
                .enumerate()
                .map(|(k, (&w, c))| LevelData {
                    index: k + 1,
                    prime: p,
                    degree_below: p.pow(k as u32 + 1),
                    map: GeneratorMap::LinearizedStep(c),
                    fiber_labels: (0..p).map(|t| field.scale(t, w)).collect(),
                })
                .collect())
        }
    }
}

/// The y-values of the fiber above a base place where `u(t) = value`, in
/// canonical order, or `None` if the place does not split completely.
pub fn fiber_over(field: &Field, desc: &ExtensionDescriptor, value: Fe) -> Result<Option<Vec<Fe>>> {
    match &desc.kind {
        ExtensionKind::Kummer { degree } => {
            if value.is_zero() || !field.is_mth_power(value, *degree)? {
                return Ok(None);
            }
            let beta0 = field.mth_root(value, *degree)?;
            let levels = build_levels(field, desc)?;
            let mut ys = vec![beta0];
            for lv in &levels {
                let prev = ys.clone();
                for &lab in &lv.fiber_labels[1..] {
                    ys.extend(prev.iter().map(|&y| field.mul(y, lab)));
                }
            }
            Ok(Some(ys))
        }
        ExtensionKind::ArtinSchreier { w_basis } => {
            let (ell, _) = LinearizedPoly::subspace(field, w_basis)?;
            let sols = linearized::solve_linearized(field, &ell, value)?;
            Ok(sols.first().map(|&beta0| linearized::span(field, beta0, w_basis)))
        }
    }
}

/// Checks the defining equation of the top extension.
pub fn on_curve(field: &Field, desc: &ExtensionDescriptor, t: Fe, y: Fe) -> Result<bool> {
    let rhs = poly_eval(field, &desc.u, t);
    let lhs = match &desc.kind {
        ExtensionKind::Kummer { degree } => field.pow(y, *degree),
        ExtensionKind::ArtinSchreier { w_basis } => LinearizedPoly::subspace(field, w_basis)?.0.eval(field, y),
    };
    Ok(lhs == rhs)
}

/// All α ∈ F_q above which a rational-base extension splits completely,
/// sorted by codec value.
pub fn enumerate_splitting(field: &Field, desc: &ExtensionDescriptor) -> Result<Vec<Fe>> {
    if desc.base != Base::Rational {
        return Err(Error::InvalidDescriptor("splitting places of a nested base are points of the base".into()));
    }
    let mut out = Vec::new();
    for a in field.elements() {
        if fiber_over(field, desc, poly_eval(field, &desc.u, a))?.is_some() {
            out.push(a);
        }
    }
    Ok(out)
}

/// Base places of a point set: rational x-values, or selected points of the
/// full point set of a nested base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Places {
    Rational(Vec<Fe>),
    Nested { lower: Box<PointSet>, selected: Vec<usize> },
}

/// `N = m·s` points in `s` contiguous fibers of `m`. Each point stores one
/// coordinate per tower variable: the rational coordinate first, the top
/// generator last.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet {
    dim: usize,
    coords: Vec<Fe>,
    fiber: usize,
    radices: Vec<u64>,
    places: Places,
}

/// The projection onto `E_j`: one representative per `G_j`-orbit.
#[derive(Clone, Copy, Debug)]
pub struct LevelView<'a> {
    set: &'a PointSet,
    stride: usize,
}

impl<'a> LevelView<'a> {
    pub fn len(&self) -> usize {
        self.set.len() / self.stride
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn stride(&self) -> usize {
        self.stride
    }

    pub fn get(&self, n: usize) -> &'a [Fe] {
        self.set.point(n * self.stride)
    }
}

impl PointSet {
    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    /// Coordinates per point.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn point(&self, i: usize) -> &[Fe] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[Fe]> + '_ {
        self.coords.chunks(self.dim)
    }

    /// Top-level generator value of point `i`.
    pub fn y(&self, i: usize) -> Fe {
        self.coords[i * self.dim + self.dim - 1]
    }

    /// `m`.
    pub fn fiber_size(&self) -> usize {
        self.fiber
    }

    /// `s`.
    pub fn num_places(&self) -> usize {
        self.len() / self.fiber
    }

    pub fn radices(&self) -> &[u64] {
        &self.radices
    }

    pub fn places(&self) -> &Places {
        &self.places
    }

    pub fn level_view(&self, j: usize) -> LevelView<'_> {
        let stride = self.radices[..j].iter().product::<u64>() as usize;
        LevelView { set: self, stride }
    }

    /// Compact JSON: base places and the descriptor hash; fibers are
    /// regenerated on load.
    pub fn to_json(&self, desc: &ExtensionDescriptor) -> serde_json::Value {
        serde_json::json!({ "descriptor_hash": desc.hash(), "places": self.places_json() })
    }

    fn places_json(&self) -> serde_json::Value {
        match &self.places {
            Places::Rational(xs) => serde_json::json!(xs),
            Places::Nested { lower, selected } => {
                serde_json::json!({ "lower": lower.places_json(), "selected": selected })
            }
        }
    }

    pub fn from_json(field: &Field, desc: &ExtensionDescriptor, v: &serde_json::Value) -> Result<PointSet> {
        let bad = |s: &str| Error::Format(format!("point set: {s}"));
        if v["descriptor_hash"].as_str() != Some(desc.hash().as_str()) {
            return Err(bad("descriptor hash does not match"));
        }
        points_from_json(field, desc, &v["places"])
    }
}

fn points_from_json(field: &Field, desc: &ExtensionDescriptor, v: &serde_json::Value) -> Result<PointSet> {
    let bad = |s: &str| Error::Format(format!("point set: {s}"));
    match desc.base_descriptor() {
        None => {
            let xs: Vec<Fe> = serde_json::from_value(v.clone()).map_err(|e| bad(&e.to_string()))?;
            if xs.iter().any(|x| x.value() as u64 >= field.q()) {
                return Err(bad("coordinate outside the field"));
            }
            build_point_set(field, desc, &xs)
        }
        Some(b) => {
            let lower = points_from_json(field, b, &v["lower"])?;
            let selected: Vec<usize> = serde_json::from_value(v["selected"].clone()).map_err(|e| bad(&e.to_string()))?;
            build_nested_point_set(field, desc, lower, &selected)
        }
    }
}

/// Fibers above the chosen rational places.
pub fn build_point_set(field: &Field, desc: &ExtensionDescriptor, places: &[Fe]) -> Result<PointSet> {
    if desc.base != Base::Rational {
        return Err(Error::InvalidDescriptor("nested descriptor needs a base point set".into()));
    }
    verify_p4(desc).into_result()?;
    let bases: Vec<(Vec<Fe>, Fe)> = places.iter().map(|&x| (vec![x], x)).collect();
    assemble(field, desc, &bases, Places::Rational(places.to_vec()))
}

/// Fibers above selected points of a nested base's point set.
pub fn build_nested_point_set(
    field: &Field,
    desc: &ExtensionDescriptor,
    lower: PointSet,
    selected: &[usize],
) -> Result<PointSet> {
    if desc.base_descriptor().is_none() {
        return Err(Error::InvalidDescriptor("rational descriptor has no base point set".into()));
    }
    verify_p4(desc).into_result()?;
    let mut bases = Vec::with_capacity(selected.len());
    for &i in selected {
        if i >= lower.len() {
            return Err(Error::Format(format!("base point {i} out of range")));
        }
        bases.push((lower.point(i).to_vec(), lower.y(i)));
    }
    assemble(field, desc, &bases, Places::Nested { lower: Box::new(lower), selected: selected.to_vec() })
}

fn assemble(field: &Field, desc: &ExtensionDescriptor, bases: &[(Vec<Fe>, Fe)], places: Places) -> Result<PointSet> {
    let m = desc.degree() as usize;
    let dim = bases.first().map_or(desc.stages() + 1, |b| b.0.len() + 1);
    let mut coords = Vec::with_capacity(bases.len() * m * dim);
    for (pt, t) in bases {
        let value = poly_eval(field, &desc.u, *t);
        let ys = fiber_over(field, desc, value)?
            .ok_or_else(|| Error::FiberDefect(format!("base place {pt:?} does not split completely")))?;
        for y in ys {
            if !on_curve(field, desc, *t, y)? {
                return Err(Error::FiberDefect(format!("({pt:?}, {y})")));
            }
            coords.extend_from_slice(pt);
            coords.push(y);
        }
    }
    let set = PointSet { dim, coords, fiber: m, radices: desc.radices()?, places };
    let distinct: HashSet<&[Fe]> = set.iter().collect();
    if distinct.len() != set.len() {
        return Err(Error::FiberDefect("repeated point".into()));
    }
    Ok(set)
}

/// All points above every splitting place, recursively through nested
/// bases.
pub fn full_point_set(field: &Field, desc: &ExtensionDescriptor) -> Result<PointSet> {
    match desc.base_descriptor() {
        None => build_point_set(field, desc, &enumerate_splitting(field, desc)?),
        Some(b) => {
            let lower = full_point_set(field, b)?;
            let mut selected = Vec::new();
            for i in 0..lower.len() {
                if fiber_over(field, desc, poly_eval(field, &desc.u, lower.y(i)))?.is_some() {
                    selected.push(i);
                }
            }
            build_nested_point_set(field, desc, lower, &selected)
        }
    }
}

/// `tables[j][n] = y_j(P)` for the `n`-th point of `level_view(j)`,
/// `j = 0..r-1`.
pub fn level_y_values(ar: &Arith, pts: &PointSet, levels: &[LevelData]) -> Vec<Vec<Fe>> {
    let mut tables: Vec<Vec<Fe>> = Vec::with_capacity(levels.len());
    if levels.is_empty() {
        return tables;
    }
    tables.push((0..pts.len()).map(|i| pts.y(i)).collect());
    for lv in &levels[..levels.len() - 1] {
        let prev = tables.last().expect("nonempty");
        let p = lv.prime as usize;
        let next = prev.iter().step_by(p).map(|&y| lv.map.apply(ar, y)).collect();
        tables.push(next);
    }
    tables
}

/// Inverse Vandermonde matrices of every level-`j` sub-fiber, from the
/// `y_{j-1}` table on `level_view(j-1)`.
pub fn fiber_inverses(ar: &Arith, table: &[Fe], p: usize) -> Result<Vec<Vec<Vec<Fe>>>> {
    table
        .chunks(p)
        .map(|nodes| matrix::invert(ar, &matrix::vandermonde(ar, nodes)).ok_or(Error::SingularFiber))
        .collect()
}

/// Uncounted convenience wrapper around [`level_y_values`].
pub fn level_y_values_uncounted(field: &Field, pts: &PointSet, levels: &[LevelData]) -> Vec<Vec<Fe>> {
    let ops = OpCounter::new();
    level_y_values(&field.counted(&ops), pts, levels)
}
