//! Strong-contraction scan for the axis of `σ₁` in `B₃`.

use garside::complex_x::SampleSpec;
use garside::projection::{constriction_check, contraction_scan, projection_diagnostics};
use garside::rigidity::AxisContext;
use garside::structures::classical;
use garside::word::parse_word;

fn main() -> garside::error::Result<()> {
    let b3 = classical(3)?;
    let ctx = AxisContext::new(&parse_word(&b3, "s1")?)?;

    let scan = contraction_scan(&ctx, 3, 8)?;
    println!("C_hat series {:?}", scan.series["C_hat"]);
    println!("plateau {}", scan.constants["plateau"] == 1);
    if let Some(w) = scan.witness("C_hat") {
        println!("witness {:?}", w.elements);
    }

    let diag = projection_diagnostics(&ctx, &SampleSpec::default());
    println!(
        "diagnostics {:?} violations {}",
        diag.constants,
        diag.violations.len()
    );

    let cons = constriction_check(
        &ctx,
        &SampleSpec {
            samples: 100,
            ..Default::default()
        },
    );
    println!("constriction {:?} {:?}", cons.constants, cons.counts);
    Ok(())
}
