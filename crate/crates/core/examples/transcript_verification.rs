// Record a reduction, round-trip the transcript through JSON, verify it,
// then tamper with one operation and verify again.

use ladder_reduce::diagnostics::{random_module, rng_from_seed, verify_transcript};
use ladder_reduce::field::{Field, PrimeField};
use ladder_reduce::intervals::Orientation;
use ladder_reduce::reduction::{decompose, Event, Transcript};

pub fn run_example() -> ladder_reduce::Result<String> {
    let f = PrimeField::default();
    let tau = Orientation::parse("bf")?;
    let m = random_module(&f, &tau, 3, &mut rng_from_seed(42))?;
    let d = decompose(&m)?;

    let json = d.transcript.to_json();
    let back = Transcript::from_json(&f, &json)?;
    let mut out = format!("{} operations, {} bytes of JSON, round trip exact: {}\n", back.op_count(), json.to_string().len(), back == d.transcript);

    let rep = verify_transcript(&m, &back, d.normal_form.coeff())?;
    out.push_str(&format!("verified: {}\n", rep.ok()));

    let mut bad = back.clone();
    if let Some(Event::Op(op)) = bad.events.iter_mut().find(|e| matches!(e, Event::Op(op) if !op.kind.is_row())) {
        op.scalar = f.add(&op.scalar, &f.one());
    }
    let rep = verify_transcript(&m, &bad, d.normal_form.coeff())?;
    out.push_str(&format!("after changing one scalar: verified {}\n", rep.ok()));
    for msg in &rep.failures {
        out.push_str(&format!("  {msg}\n"));
    }
    Ok(out)
}

fn main() -> ladder_reduce::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
