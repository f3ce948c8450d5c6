//! Parameters of a curve read from JSON: tower checks, genus, pole orders of
//! the first basis monomials and the dimension law.

use agfft::curves::CurveConfig;
use agfft::{rroch, tower};

const CONFIG: &str = r#"{
    "field": {"p": 2, "m": 4, "modulus": [1, 1, 0, 0, 1]},
    "kind": "kummer",
    "params": {"degree": 5, "u": [0, 1, 0, 0, 1]}
}"#;

fn main() -> agfft::Result<()> {
    let text = std::env::args().nth(1).map(std::fs::read_to_string).transpose().map_err(|e| agfft::Error::Format(e.to_string()))?;
    let cfg: CurveConfig = serde_json::from_str(text.as_deref().unwrap_or(CONFIG)).map_err(|e| agfft::Error::Format(e.to_string()))?;
    let curve = cfg.build()?;
    let report = tower::verify_p4(&curve.desc);
    for (check, ok) in &report.checks {
        println!("{:<28} {}", check.to_string(), if *ok { "ok" } else { "FAILED" });
    }
    let g = rroch::genus(&curve.desc);
    println!("N = {}, genus = {g}, default lambda = {}", curve.n, curve.default_lambda);
    let first: Vec<String> = rroch::basis_for(&curve.desc, 12).iter().map(|b| format!("{:?}:{}", b.exps, b.pole)).collect();
    println!("basis up to pole 12: {}", first.join(" "));
    for lambda in [2 * g - 1, 2 * g + 5, curve.n as u64 - 1] {
        println!("lambda = {lambda:>3}: k = {}", rroch::dimension(&curve.desc, lambda)?);
    }
    Ok(())
}
