// Plant every indecomposable of CL_2(f) once, scramble bases, and read the
// persistence diagram back.

use ladder_reduce::diagnostics::{build_catalog, plant, PlantSpec};
use ladder_reduce::field::PrimeField;
use ladder_reduce::intervals::Orientation;
use ladder_reduce::reduction::decompose;

pub fn run_example() -> ladder_reduce::Result<String> {
    let f = PrimeField::default();
    let tau = Orientation::parse("f")?;
    let cat = build_catalog(&f, &tau)?;
    let spec = PlantSpec { summands: cat.entries.iter().map(|e| (e.dim_vector.clone(), 1)).collect(), seed: 1 };
    let (m, expected) = plant(&cat, &spec)?;

    let d = decompose(&m)?;
    let mut out = format!("module dimension vector {}\n\n", m.dim_vector());
    out.push_str(&d.trace_text());
    out.push_str(&format!("\ndiagram: {}\n", d.diagram));
    out.push_str(&format!("matches the planted multiset: {}\n", d.diagram == expected));
    Ok(out)
}

fn main() -> ladder_reduce::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
