// Step log of CL_3(fb) on a module containing every indecomposable, with
// the status grid after each step.

use ladder_reduce::diagnostics::{build_catalog, plant, PlantSpec};
use ladder_reduce::field::PrimeField;
use ladder_reduce::intervals::Orientation;
use ladder_reduce::ladder::build_block_problem;
use ladder_reduce::reduction::{trace_text, ReductionOptions, Reducer, extract_summands};

pub fn run_example() -> ladder_reduce::Result<String> {
    let f = PrimeField::default();
    let cat = build_catalog(&f, &Orientation::parse("fb")?)?;
    let spec = PlantSpec { summands: cat.entries.iter().map(|e| (e.dim_vector.clone(), 1)).collect(), seed: 11 };
    let (m, _) = plant(&cat, &spec)?;

    let (p, _) = build_block_problem(&m)?;
    let mut out = format!("input grid:\n{}\n", p.grid_text());
    let mut r = Reducer::new(p, ReductionOptions { record_grids: true, ..ReductionOptions::default() });
    r.run()?;
    let summands = extract_summands(r.problem())?;
    out.push_str(&trace_text(r.trace(), &summands, 3));
    let s = r.stats();
    out.push_str(&format!("\n{} steps, {} operations, {} erasures\n", s.steps, s.ops, s.erasures));
    Ok(out)
}

fn main() -> ladder_reduce::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
