// The oracles behind the catalogs: endomorphism locality and hom counts,
// on the two dimension-two indecomposables of CL_3(fb).

use ladder_reduce::diagnostics::{cl3fb_dimension_two, end_is_local, hom_dim_cl};
use ladder_reduce::field::PrimeField;
use ladder_reduce::reduction::decompose;

pub fn run_example() -> ladder_reduce::Result<String> {
    let f = PrimeField::new(5)?;
    let (a, b) = cl3fb_dimension_two(&f);
    let mut out = String::new();
    for (name, m) in [("A", &a), ("B", &b)] {
        let d = decompose(m)?;
        out.push_str(&format!("{name} = {}: End local? {:?}; diagram {}\n", m.dim_vector(), end_is_local(m, 0)?, d.diagram.to_string().trim_end()));
    }
    out.push_str(&format!("dim Hom(A, B) = {}, dim Hom(B, A) = {}\n", hom_dim_cl(&a, &b)?, hom_dim_cl(&b, &a)?));
    out.push_str(&format!("dim End(A) = {}, dim End(B) = {}\n", hom_dim_cl(&a, &a)?, hom_dim_cl(&b, &b)?));
    let aa = a.direct_sum(&a)?;
    out.push_str(&format!("A + A: End local? {:?}\n", end_is_local(&aa, 0)?));
    Ok(out)
}

fn main() -> ladder_reduce::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
