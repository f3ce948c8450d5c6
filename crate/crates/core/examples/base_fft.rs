//! Univariate FFTs over GF(2^8): a multiplicative subgroup of order 255 and
//! an additive subspace of size 64, checked against Horner's rule.

use agfft::base_mpe::EvalDomain;
use agfft::field::{Field, OpCounter};
use agfft::{oracle, sample};

fn main() -> agfft::Result<()> {
    let field = Field::default_for(2, 8)?;
    let ops = OpCounter::new();
    let ar = field.counted(&ops);

    let mult = EvalDomain::multiplicative(&field, 255)?;
    let coeffs = sample::random_vector(field.q(), 255, 1);
    ops.reset();
    let values = mult.eval(&ar, &coeffs)?;
    let fft = ops.snapshot();
    assert_eq!(values, oracle::naive_poly_eval(&ar, &coeffs, mult.points()));
    assert_eq!(mult.interp(&ar, &values)?, coeffs);
    println!("multiplicative n = 255: {} muls, {} adds", fft.mul, fft.add);

    let basis: Vec<_> = (0..6).map(|i| field.elem(1 << i)).collect::<Result<_, _>>()?;
    let add = EvalDomain::additive(&field, field.elem(0x80)?, &basis)?;
    let coeffs = sample::random_vector(field.q(), 64, 2);
    ops.reset();
    let values = add.eval(&ar, &coeffs)?;
    let fft = ops.snapshot();
    assert_eq!(values, oracle::naive_poly_eval(&ar, &coeffs, add.points()));
    assert_eq!(add.interp(&ar, &values)?, coeffs);
    println!("additive coset n = 64: {} muls, {} adds", fft.mul, fft.add);
    Ok(())
}
