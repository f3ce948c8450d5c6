//! Named curve families wired as extension descriptors.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{gfp, linearized, Fe, Field, FieldSpec};
use crate::rroch;
use crate::tower::{self, Base, ExtensionDescriptor, PointSet};

/// Which Galois structure a Hermitian-type curve is presented with.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Form {
    #[serde(alias = "as")]
    ArtinSchreier,
    Kummer,
}

/// A descriptor together with its field and published parameters.
#[derive(Clone, Debug)]
pub struct Curve {
    pub name: String,
    pub field: Field,
    pub desc: ExtensionDescriptor,
    pub default_lambda: u64,
    /// Closed-form genus.
    pub genus: u64,
    /// Number of evaluation points: the closed form where one is known,
    /// otherwise counted.
    pub n: usize,
}

impl Curve {
    /// All points above the splitting places, through every stage.
    pub fn point_set(&self) -> Result<PointSet> {
        tower::full_point_set(&self.field, &self.desc)
    }
}

/// `κ = p^e` with `p` prime.
fn prime_power(kappa: u64) -> Option<(u32, u32)> {
    if kappa < 2 {
        return None;
    }
    let f = gfp::factorize(kappa);
    (f.iter().all(|&x| x == f[0])).then(|| (f[0] as u32, f.len() as u32))
}

fn monomial(deg: usize) -> Vec<Fe> {
    let mut u = vec![Fe::ZERO; deg + 1];
    u[deg] = Fe::ONE;
    u
}

/// `t + t^κ + ⋯ + t^{κ^{r-1}}`.
fn trace_poly(kappa: u64, r: u32) -> Vec<Fe> {
    let mut u = vec![Fe::ZERO; kappa.pow(r - 1) as usize + 1];
    for i in 0..r {
        u[kappa.pow(i) as usize] = Fe::ONE;
    }
    u
}

/// GF(p)-basis of `{a : a^κ + a = 0}` in GF(κ²).
fn hermitian_kernel(field: &Field, kappa: u64) -> Vec<Fe> {
    let ker: Vec<Fe> = field.elements().skip(1).filter(|&a| field.add(field.pow(a, kappa), a).is_zero()).collect();
    linearized::greedy_basis(field, &ker)
}

fn trace_kernel(field: &Field, u: &[Fe]) -> Vec<Fe> {
    field.elements().filter(|&a| tower::poly_eval(field, u, a).is_zero()).collect()
}

/// Dimension about `N/2`: `λ = N/2 + g - 1`, capped below `N`.
fn half_rate_lambda(n: usize, g: u64) -> u64 {
    ((n as u64 / 2 + g).saturating_sub(1)).min(n as u64 - 1)
}

fn hermitian_field(kappa: u64) -> Result<(Field, u32)> {
    let (p, e) = prime_power(kappa).ok_or(Error::BadKappa(kappa, 0))?;
    Ok((Field::new(FieldSpec::default_for(p, 2 * e)?)?, p))
}

/// `y^κ + y = x^{κ+1}` over `F_q(x)`, `q = κ²`.
pub fn hermitian_as(kappa: u64) -> Result<Curve> {
    let (field, _) = hermitian_field(kappa)?;
    let w = hermitian_kernel(&field, kappa);
    let desc = ExtensionDescriptor::artin_schreier(&field, w, monomial(kappa as usize + 1), Base::Rational);
    tower::verify_p4(&desc).into_result()?;
    Ok(Curve {
        name: format!("hermitian-as-{kappa}"),
        field,
        desc,
        default_lambda: kappa.pow(3) - kappa,
        genus: kappa * (kappa - 1) / 2,
        n: kappa.pow(3) as usize,
    })
}

/// The same curve as `x^{κ+1} = t^κ + t` over `F_q(t)`, evaluated above the
/// `q - κ` places outside the trace kernel.
pub fn hermitian_kummer(kappa: u64) -> Result<Curve> {
    let (field, _) = hermitian_field(kappa)?;
    let mut u = monomial(kappa as usize);
    u[1] = Fe::ONE;
    let desc = ExtensionDescriptor::kummer(&field, kappa + 1, u, Base::Rational);
    tower::verify_p4(&desc).into_result()?;
    Ok(Curve {
        name: format!("hermitian-kummer-{kappa}"),
        field,
        desc,
        default_lambda: kappa.pow(3) - 2 * kappa - 1,
        genus: kappa * (kappa - 1) / 2,
        n: (kappa.pow(3) - kappa) as usize,
    })
}

pub fn hermitian(kappa: u64, form: Form) -> Result<Curve> {
    match form {
        Form::ArtinSchreier => hermitian_as(kappa),
        Form::Kummer => hermitian_kummer(kappa),
    }
}

fn norm_trace_field(kappa: u64, r: u32) -> Result<Field> {
    let (p, e) = prime_power(kappa).ok_or(Error::BadKappa(kappa, 0))?;
    if r < 2 {
        return Err(Error::InvalidDescriptor(format!("norm-trace curves need r >= 2, got {r}")));
    }
    Field::new(FieldSpec::default_for(p, e * r)?)
}

/// `∏_{α∈V}(y - α) = x^{κ^{r-1}+⋯+κ+1}` over `F_q(x)`, `q = κ^r`. `V` is
/// given by a GF(p)-basis inside the trace kernel; `None` takes the whole
/// kernel.
pub fn norm_trace_x(kappa: u64, r: u32, v_basis: Option<Vec<Fe>>) -> Result<Curve> {
    let field = norm_trace_field(kappa, r)?;
    let tr = trace_poly(kappa, r);
    let v = match v_basis {
        Some(v) => {
            if let Some(bad) = v.iter().find(|&&a| !tower::poly_eval(&field, &tr, a).is_zero()) {
                return Err(Error::InvalidDescriptor(format!("{bad} is not in the trace kernel")));
            }
            v
        }
        None => linearized::greedy_basis(&field, &trace_kernel(&field, &tr)[1..]),
    };
    let e = (field.q() - 1) / (kappa - 1);
    let desc = ExtensionDescriptor::artin_schreier(&field, v, monomial(e as usize), Base::Rational);
    tower::verify_p4(&desc).into_result()?;
    let size_v = desc.degree();
    let genus = (e - 1) * (size_v - 1) / 2;
    let n = (field.q() * size_v) as usize;
    Ok(Curve {
        name: format!("norm-trace-x-{kappa}-{r}"),
        default_lambda: half_rate_lambda(n, genus),
        field,
        desc,
        genus,
        n,
    })
}

/// `y + y^κ + ⋯ + y^{κ^{r-1}} = x^e` as a Kummer extension of `F_q(y)`,
/// evaluated above the places outside the trace kernel.
pub fn norm_trace_y(kappa: u64, r: u32, e: u64) -> Result<Curve> {
    let field = norm_trace_field(kappa, r)?;
    if e == 0 || ((field.q() - 1) / (kappa - 1)) % e != 0 {
        return Err(Error::InvalidDescriptor(format!("e = {e} must divide (q-1)/(kappa-1)")));
    }
    let desc = ExtensionDescriptor::kummer(&field, e, trace_poly(kappa, r), Base::Rational);
    tower::verify_p4(&desc).into_result()?;
    let w = kappa.pow(r - 1);
    let genus = (w - 1) * (e - 1) / 2;
    let n = ((field.q() - w) * e) as usize;
    Ok(Curve {
        name: format!("norm-trace-y-{kappa}-{r}-{e}"),
        default_lambda: half_rate_lambda(n, genus),
        field,
        desc,
        genus,
        n,
    })
}

/// Genus of the `n`-th Hermitian tower field from its closed form.
pub fn tower_genus(kappa: u64, n: u32) -> u64 {
    let sum: u64 = (1..n).map(|i| kappa.pow(n - i + 1) * (kappa + 1).pow(i - 1)).sum();
    (sum + 1 - (kappa + 1).pow(n - 1)) / 2
}

/// Pole order in the `n`-th tower field of the `i`-th coordinate.
pub fn tower_pole(kappa: u64, n: u32, i: u32) -> u64 {
    kappa.pow(n - i) * (kappa + 1).pow(i - 1)
}

/// `x_{i+1}^κ + x_{i+1} = x_i^{κ+1}` for `i < n` (AS form) or
/// `y_{i+1}^{κ+1} = y_i^κ + y_i` (Kummer form).
pub fn hermitian_tower(kappa: u64, n: u32, form: Form) -> Result<Curve> {
    let (field, _) = hermitian_field(kappa)?;
    if n < 2 || n as u64 > kappa / 2 {
        return Err(Error::BadTowerHeight { n, kappa });
    }
    let mut base = Base::Rational;
    let mut desc = None;
    for _ in 1..n {
        let d = match form {
            Form::ArtinSchreier => ExtensionDescriptor::artin_schreier(
                &field,
                hermitian_kernel(&field, kappa),
                monomial(kappa as usize + 1),
                base,
            ),
            Form::Kummer => {
                let mut u = monomial(kappa as usize);
                u[1] = Fe::ONE;
                ExtensionDescriptor::kummer(&field, kappa + 1, u, base)
            }
        };
        tower::verify_p4(&d).into_result()?;
        base = Base::Nested(Box::new(d.clone()));
        desc = Some(d);
    }
    let desc = desc.expect("n >= 2");
    let genus = tower_genus(kappa, n);
    let n_pts = match form {
        Form::ArtinSchreier => kappa.pow(n + 1) as usize,
        // places inside the trace kernel are dropped at every step
        Form::Kummer => tower::full_point_set(&field, &desc)?.len(),
    };
    let form_name = match form {
        Form::ArtinSchreier => "as",
        Form::Kummer => "kummer",
    };
    Ok(Curve {
        name: format!("hermitian-tower-{form_name}-{kappa}-{n}"),
        default_lambda: half_rate_lambda(n_pts, genus),
        field,
        desc,
        genus,
        n: n_pts,
    })
}

/// A curve given as JSON: `{"field": .., "kind": .., "params": {..}}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CurveConfig {
    #[serde(default)]
    pub field: Option<FieldSpec>,
    pub kind: String,
    #[serde(default)]
    pub params: serde_json::Value,
}

fn param_u64(p: &serde_json::Value, key: &str) -> Result<u64> {
    p[key].as_u64().ok_or_else(|| Error::Format(format!("curve params: missing integer '{key}'")))
}

fn param<T: serde::de::DeserializeOwned>(p: &serde_json::Value, key: &str) -> Result<T> {
    serde_json::from_value(p[key].clone()).map_err(|e| Error::Format(format!("curve params '{key}': {e}")))
}

impl CurveConfig {
    pub fn build(&self) -> Result<Curve> {
        let p = &self.params;
        let form = || -> Result<Form> {
            if p["form"].is_null() {
                Ok(Form::ArtinSchreier)
            } else {
                param(p, "form")
            }
        };
        let mut curve = match self.kind.as_str() {
            "hermitian" => hermitian(param_u64(p, "kappa")?, form()?)?,
            "norm_trace_x" => {
                let v = if p["v_basis"].is_null() { None } else { Some(param(p, "v_basis")?) };
                norm_trace_x(param_u64(p, "kappa")?, param_u64(p, "r")? as u32, v)?
            }
            "norm_trace_y" => norm_trace_y(param_u64(p, "kappa")?, param_u64(p, "r")? as u32, param_u64(p, "e")?)?,
            "hermitian_tower" => hermitian_tower(param_u64(p, "kappa")?, param_u64(p, "n")? as u32, form()?)?,
            "kummer" | "artin_schreier" => {
                let spec = self.field.clone().ok_or_else(|| Error::Format("raw curves need a field".into()))?;
                let field = Field::new(spec)?;
                let u: Vec<Fe> = param(p, "u")?;
                if u.iter().any(|c| c.value() as u64 >= field.q()) {
                    return Err(Error::Format("curve params 'u': coefficient outside the field".into()));
                }
                let desc = if self.kind == "kummer" {
                    ExtensionDescriptor::kummer(&field, param_u64(p, "degree")?, u, Base::Rational)
                } else {
                    let w: Vec<Fe> = param(p, "w_basis")?;
                    ExtensionDescriptor::artin_schreier(&field, w, u, Base::Rational)
                };
                tower::verify_p4(&desc).into_result()?;
                let genus = rroch::genus(&desc);
                let n = tower::full_point_set(&field, &desc)?.len();
                if n == 0 {
                    return Err(Error::FiberDefect("no base place splits completely".into()));
                }
                Curve {
                    name: self.kind.clone(),
                    default_lambda: half_rate_lambda(n, genus),
                    field,
                    desc,
                    genus,
                    n,
                }
            }
            other => return Err(Error::Format(format!("unknown curve kind '{other}'"))),
        };
        if let Some(l) = p["lambda"].as_u64() {
            curve.default_lambda = l;
        }
        if let Some(spec) = &self.field {
            if *spec != curve.desc.field && !matches!(self.kind.as_str(), "kummer" | "artin_schreier") {
                return Err(Error::Format("field does not match the preset".into()));
            }
        }
        Ok(curve)
    }
}

/// Every curve shipped as a preset at desk scale.
pub fn shipped() -> Result<Vec<Curve>> {
    Ok(vec![
        hermitian_as(4)?,
        hermitian_kummer(4)?,
        norm_trace_x(2, 3, None)?,
        norm_trace_y(2, 3, 7)?,
        hermitian_as(3)?,
        hermitian_kummer(3)?,
        hermitian_tower(4, 2, Form::ArtinSchreier)?,
        hermitian_tower(8, 3, Form::ArtinSchreier)?,
        hermitian_tower(8, 3, Form::Kummer)?,
    ])
}
