//! Norm-trace curves over GF(8): the X form as an Artin-Schreier extension
//! and the Y form as a Kummer extension.

use agfft::curves;
use agfft::encoder;
use agfft::{oracle, rroch, sample};

fn main() -> agfft::Result<()> {
    for curve in [curves::norm_trace_x(2, 3, None)?, curves::norm_trace_y(2, 3, 7)?] {
        let pts = curve.point_set()?;
        let lambda = curve.default_lambda;
        let plan = encoder::plan(&curve.field, &curve.desc, lambda, &pts)?;
        let g = oracle::naive_generator_matrix(&curve.field, &curve.desc, lambda, &pts)?;
        for t in 0..20 {
            let msg = sample::trial_message(curve.field.q(), plan.k(), 3, t);
            let cw = encoder::encode_message(&plan, &msg)?;
            let ops = agfft::field::OpCounter::new();
            assert_eq!(cw, oracle::combine(&curve.field.counted(&ops), &g, &msg)?);
        }
        println!(
            "{}: N={} genus={} (gap count {}) lambda={} k={}",
            curve.name,
            pts.len(),
            curve.genus,
            rroch::genus(&curve.desc),
            lambda,
            plan.k()
        );
    }
    Ok(())
}
