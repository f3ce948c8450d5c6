//! Field multiplications per N log2 N for the Hermitian family, next to the
//! generator-matrix product.

use agfft::curves;
use agfft::encoder;
use agfft::field::OpCounter;
use agfft::{oracle, sample};

fn main() -> agfft::Result<()> {
    println!("{:>6} {:>6} {:>12} {:>10} {:>14}", "kappa", "N", "fmpe muls", "per NlogN", "naive muls");
    for kappa in [2u64, 4, 8, 16, 32] {
        let curve = curves::hermitian_as(kappa)?;
        let pts = curve.point_set()?;
        let plan = encoder::plan(&curve.field, &curve.desc, curve.default_lambda, &pts)?;
        let msg = sample::trial_message(curve.field.q(), plan.k(), 0, 0);
        let cw = encoder::encode_message(&plan, &msg)?;
        let muls = encoder::metrics(&plan).encode.mul;
        let n = plan.n() as f64;
        let naive = if plan.n() <= 4096 {
            let ops = OpCounter::new();
            let rows = oracle::naive_rows(&curve.field, &curve.desc, plan.lambda(), &pts);
            assert_eq!(oracle::combine(&curve.field.counted(&ops), &rows, &msg)?, cw);
            ops.snapshot().mul.to_string()
        } else {
            "-".into()
        };
        println!("{kappa:>6} {:>6} {muls:>12} {:>10.3} {naive:>14}", plan.n(), muls as f64 / (n * n.log2()));
    }
    Ok(())
}
