//! Writing and reading function and codeword files.

use agfft::curves;
use agfft::encoder;
use agfft::rroch::{self, FunctionRepr};
use agfft::sample;

fn main() -> agfft::Result<()> {
    let curve = curves::hermitian_kummer(4)?;
    let pts = curve.point_set()?;
    let plan = encoder::plan(&curve.field, &curve.desc, 20, &pts)?;
    let f = FunctionRepr { lambda: 20, coeffs: sample::trial_message(curve.field.q(), plan.k(), 5, 0) };

    let text = rroch::write_function(&curve.desc, &f);
    print!("{}", text.lines().take(4).map(|l| format!("{l}\n")).collect::<String>());
    assert_eq!(rroch::read_function(&curve.field, &curve.desc, 20, &text)?, f);

    let cw = encoder::fmpe_encode(&plan, &f)?;
    let file = encoder::write_codeword(&plan, &cw);
    println!("{}", file.lines().next().unwrap_or_default());
    let back = encoder::read_codeword(&plan, &file)?;
    assert_eq!(encoder::fmpe_unencode(&plan, &back, true)?, f);

    let truncated: String = file.lines().take(10).map(|l| format!("{l}\n")).collect();
    match encoder::read_codeword(&plan, &truncated) {
        Err(e) => println!("truncated file: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
