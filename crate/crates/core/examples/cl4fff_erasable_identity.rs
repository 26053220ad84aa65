// On CL_4(fff) an identity block can itself become erasable. Plant every
// indecomposable and show where that happens.

use ladder_reduce::diagnostics::{build_catalog, plant, PlantSpec};
use ladder_reduce::field::PrimeField;
use ladder_reduce::intervals::Orientation;
use ladder_reduce::reduction::{decompose, TreeRecord};

fn tree(t: &TreeRecord, depth: usize, out: &mut String) {
    out.push_str(&format!("{}{} cleared by {:?} operations from {}\n", "  ".repeat(depth + 1), t.target, t.direction, t.via));
    for c in &t.children {
        tree(c, depth + 1, out);
    }
}

pub fn run_example() -> ladder_reduce::Result<String> {
    let f = PrimeField::default();
    let tau = Orientation::parse("fff")?;
    let cat = build_catalog(&f, &tau)?;
    let spec = PlantSpec { summands: cat.entries.iter().map(|e| (e.dim_vector.clone(), 1)).collect(), seed: 21 };
    let (m, expected) = plant(&cat, &spec)?;

    let d = decompose(&m)?;
    let mut out = format!("{} indecomposables planted, module {}\n", cat.len(), m.dim_vector());
    out.push_str(&format!("{} steps, {} operations\n", d.stats.steps, d.stats.ops));
    for e in &d.stats.identity_erasures {
        out.push_str(&format!("step {}: erasable identity {}\n", e.step, e.target));
        tree(&e.tree, 0, &mut out);
    }
    out.push_str(&format!("{} summand types recovered, equal to the plant: {}\n", d.diagram.len(), d.diagram == expected));
    Ok(out)
}

fn main() -> ladder_reduce::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
