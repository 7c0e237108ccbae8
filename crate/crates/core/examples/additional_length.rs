//! Absorbable elements, `C_AL` distances, the `ℤ³` diameter certificate and
//! the absorbable-edge and WPD scans along the axis of `σ₁` in `B₃`.

use garside::additional_length::{
    absorbability, absorbable_projection_scan, cal_dist_upper, wpd_scan, z3_diameter_certificate,
};
use garside::complex_x::SampleSpec;
use garside::element::GroupElement;
use garside::rigidity::AxisContext;
use garside::structures::{classical, free_abelian};
use garside::word::parse_word;

fn main() -> garside::error::Result<()> {
    let b3 = classical(3)?;
    for w in ["s1", "D", "s1 s2^-1"] {
        let c = absorbability(&parse_word(&b3, w)?)?;
        println!(
            "{w:>10}: absorbable {} absorber {:?}",
            c.absorbable, c.absorber
        );
    }

    let z3 = free_abelian(3)?;
    let one = GroupElement::identity(&z3);
    let path = cal_dist_upper(&one, &parse_word(&z3, "s1^3 s2^5")?, 5)?.expect("reachable");
    println!(
        "d_AL(*, (3,5,0)) <= {} via {:?}",
        path.upper_bound, path.vertices
    );

    let diam = z3_diameter_certificate(6)?;
    println!("z3 box: {:?}", diam.constants);

    let ctx = AxisContext::new(&parse_word(&b3, "s1")?)?;
    for seed in [1, 2] {
        let spec = SampleSpec {
            samples: 500,
            max_len: 6,
            seed,
        };
        let f = absorbable_projection_scan(&ctx, &spec, 4)?;
        println!("seed {seed}: F_hat {:?}", f.constants.get("F_hat"));
    }
    let wpd = wpd_scan(&ctx, 1, 6, 2, 4)?;
    println!("WPD set sizes {:?}", wpd.series["set_size"]);
    println!("{}", wpd.notes[0]);
    Ok(())
}
