//! Projection to the axis of `σ₁` in `B₃`.

use garside::projection::{axis_distance, closest_axis_points, lambda_pi};
use garside::rigidity::AxisContext;
use garside::structures::classical;
use garside::word::parse_word;

fn main() -> garside::error::Result<()> {
    let b3 = classical(3)?;
    let ctx = AxisContext::new(&parse_word(&b3, "s1")?)?;
    for w in ["s1^4", "s2 s1^-3", "s1 s2 s2 s1", "s2^-2 D^5"] {
        let h = parse_word(&b3, w)?;
        let p = lambda_pi(&ctx, &h);
        let (_, closest) = closest_axis_points(&ctx, &h);
        println!(
            "{w:<12} lambda {:>3}  pi {}  distance to axis {}  closest powers {closest:?}",
            p.lambda,
            p.vertex,
            axis_distance(&ctx, &h)
        );
    }
    Ok(())
}
