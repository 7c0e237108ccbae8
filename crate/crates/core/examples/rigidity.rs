//! Cyclic sliding and the search for a rigid power.

use garside::rigidity::{is_right_rigid, rigid_power_search, sliding_orbit};
use garside::structures::classical;
use garside::word::{format_word, parse_word};

fn main() -> garside::error::Result<()> {
    let b3 = classical(3)?;
    for w in ["s1", "D", "s1 s2^-1", "s1 s1 s2^-1 s1"] {
        let g = parse_word(&b3, w)?;
        let orbit = sliding_orbit(&g)?;
        println!(
            "{w}: rigid {} preperiod {} circuit {}",
            is_right_rigid(&g),
            orbit.preperiod.len(),
            orbit.circuit.len()
        );
        match rigid_power_search(&g, 12)? {
            Some(r) => println!(
                "  power {} conjugator [{}] rigid part [{}] verified {}",
                r.power,
                format_word(&r.conjugator),
                format_word(&r.rigid_part),
                r.verify(&g)
            ),
            None => println!("  no rigid power up to 12"),
        }
    }
    Ok(())
}
