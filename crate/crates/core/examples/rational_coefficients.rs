// The same pipeline over the rationals, reading a module file.

use ladder_reduce::field::Rationals;
use ladder_reduce::io::module_from_json;
use ladder_reduce::reduction::decompose;

const MODULE: &str = r#"{
  "tau": "b", "field": "rational",
  "bottom": { "dims": [2, 1], "maps": [[["1/2"], ["-3"]]] },
  "top":    { "dims": [1, 1], "maps": [[["2"]]] },
  "vertical": [[["2/3", "-5/9"]], [["1"]]]
}"#;

pub fn run_example() -> ladder_reduce::Result<String> {
    let v: serde_json::Value = serde_json::from_str(MODULE)?;
    let m = module_from_json(&Rationals, &v)?;
    let d = decompose(&m)?;
    let mut out = d.trace_text();
    out.push_str(&format!("{} operations; transcript verifies: {}\n", d.stats.ops, d.transcript.verify().ok()));
    Ok(out)
}

fn main() -> ladder_reduce::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
