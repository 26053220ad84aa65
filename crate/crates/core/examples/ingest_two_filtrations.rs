// Two arcs that together cover a circle, each growing to the whole circle.
// The loop is seen by the union at the first step and by everything at the
// second.

use ladder_reduce::field::PrimeField;
use ladder_reduce::ingest::{build_cl3fb, FiltrationPair, SimplicialComplex};
use ladder_reduce::io::module_to_json;
use ladder_reduce::reduction::decompose;

pub fn run_example() -> ladder_reduce::Result<String> {
    let f = PrimeField::new(2)?;
    let circle = SimplicialComplex::parse("0 1\n1 2\n2 3\n3 4\n4 5\n5 0\n")?;
    let left = SimplicialComplex::parse("0 1\n1 2\n2 3\n")?;
    let right = SimplicialComplex::parse("3 4\n4 5\n5 0\n")?;
    let pair = FiltrationPair::new(left, circle.clone(), right, circle, 1)?;

    let m = build_cl3fb(&f, &pair)?;
    let mut out = format!("H_1 ladder module {}\n", m.dim_vector());
    out.push_str(&serde_json::to_string_pretty(&module_to_json(&m))?);
    out.push('\n');
    let d = decompose(&m)?;
    out.push_str(&format!("diagram: {}\n", d.diagram));
    Ok(out)
}

fn main() -> ladder_reduce::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
