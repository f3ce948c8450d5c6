//! The Hermitian code over GF(16) in both presentations: as an
//! Artin-Schreier extension of F(x) (N = 64) and as a Kummer extension of
//! F(y) with the trace kernel removed (N = 60).

use agfft::curves;
use agfft::encoder::{self, fmpe_encode, fmpe_unencode};
use agfft::rroch::FunctionRepr;
use agfft::{oracle, sample};

fn main() -> agfft::Result<()> {
    for curve in [curves::hermitian_as(4)?, curves::hermitian_kummer(4)?] {
        let pts = curve.point_set()?;
        let plan = encoder::plan(&curve.field, &curve.desc, curve.default_lambda, &pts)?;
        let f = FunctionRepr { lambda: plan.lambda(), coeffs: sample::trial_message(curve.field.q(), plan.k(), 42, 0) };

        let cw = fmpe_encode(&plan, &f)?;
        let naive = oracle::naive_encode(&curve.field, &curve.desc, plan.lambda(), &pts, &f)?;
        assert_eq!(cw, naive);
        assert_eq!(fmpe_unencode(&plan, &cw, true)?, f);

        let m = encoder::metrics(&plan);
        println!(
            "{}: [N={}, k={}, d>={}] encode {} muls, unencode {} muls, weight {}",
            curve.name,
            plan.n(),
            plan.k(),
            plan.n() as u64 - plan.lambda(),
            m.encode.mul,
            m.unencode.mul,
            cw.weight()
        );
    }
    Ok(())
}
