//! The three-step Hermitian tower over GF(64), built from Artin-Schreier
//! steps (N = 4096) and from Kummer steps (N = 4032), at rate about 1/2.

use std::time::Instant;

use agfft::curves::{self, Form};
use agfft::encoder::{self, fmpe_encode, fmpe_unencode};
use agfft::rroch::FunctionRepr;
use agfft::sample;

fn main() -> agfft::Result<()> {
    for form in [Form::ArtinSchreier, Form::Kummer] {
        let curve = curves::hermitian_tower(8, 3, form)?;
        let pts = curve.point_set()?;
        let start = Instant::now();
        let plan = encoder::plan(&curve.field, &curve.desc, curve.default_lambda, &pts)?;
        let planned = start.elapsed();
        let f = FunctionRepr { lambda: plan.lambda(), coeffs: sample::trial_message(curve.field.q(), plan.k(), 7, 0) };
        let start = Instant::now();
        let cw = fmpe_encode(&plan, &f)?;
        let encoded = start.elapsed();
        assert_eq!(fmpe_unencode(&plan, &cw, false)?, f);
        let n = plan.n() as f64;
        let muls = encoder::metrics(&plan).encode.mul;
        println!(
            "{}: N={} g={} lambda={} k={}  plan {:?}, encode {:?}, {} muls ({:.2} per N log N)",
            curve.name,
            plan.n(),
            curve.genus,
            plan.lambda(),
            plan.k(),
            planned,
            encoded,
            muls,
            muls as f64 / (n * n.log2())
        );
    }
    Ok(())
}
