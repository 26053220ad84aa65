// Interval decomposition of a random zigzag module, with the change of
// basis that brings it to the canonical form.

use ladder_reduce::diagnostics::{random_zigzag, rng_from_seed};
use ladder_reduce::field::PrimeField;
use ladder_reduce::intervals::Orientation;
use ladder_reduce::zigzag::{decompose, multiplicities_by_homcount, ZigzagRep};

pub fn run_example() -> ladder_reduce::Result<String> {
    let f = PrimeField::new(7)?;
    let tau = Orientation::parse("fbf")?;
    let mut rng = rng_from_seed(3);
    let z = random_zigzag(&f, &tau, &[2, 3, 3, 1], &mut rng);

    let mut out = format!("A_4({tau}) module with dimensions {:?}\n", z.dims());
    for (k, m) in z.maps().iter().enumerate() {
        out.push_str(&format!("map {}:\n{}", k + 1, m.format_with("  ")));
    }

    let d = decompose(&z)?;
    out.push_str("intervals:\n");
    for (iv, k) in &d.multiplicities {
        out.push_str(&format!("  {iv} x{k}\n"));
    }
    let canon = ZigzagRep::canonical(&f, &tau, &d.multiplicities);
    let moved = z.conjugate_with_inverses(&d.eta, &d.eta_inv)?;
    out.push_str(&format!("conjugate equals canonical form: {}\n", moved == canon));
    out.push_str(&format!("hom counts agree: {}\n", multiplicities_by_homcount(&z)? == d.as_map()));
    Ok(out)
}

fn main() -> ladder_reduce::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
