// Auslander-Reiten order of A_3(fb), the hom relation between intervals,
// and the same quiver as Graphviz.

use ladder_reduce::intervals::{HomStructure, Orientation};

pub fn run_example() -> ladder_reduce::Result<String> {
    let tau = Orientation::parse("fb")?;
    let hs = HomStructure::new(&tau);
    let mut out = hs.to_text();

    out.push_str("\nHom(I, J) != 0   (rows I, columns J)\n");
    let order = hs.order();
    out.push_str("       ");
    for j in order {
        out.push_str(&format!("{:>6}", j.to_string()));
    }
    out.push('\n');
    for &i in order {
        out.push_str(&format!("{:>6} ", i.to_string()));
        for &j in order {
            out.push_str(&format!("{:>6}", if hs.hom(i, j) { "x" } else { "." }));
        }
        out.push('\n');
    }
    out.push('\n');
    out.push_str(&hs.to_dot());
    Ok(out)
}

fn main() -> ladder_reduce::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
