//! Balls, distances and preferred paths in the quotient complex of `B₃`.

use garside::complex_x::{ball_x, dist, preferred_path, Guards, Metric, VertexX};
use garside::structures::classical;
use garside::word::parse_word;

fn main() -> garside::error::Result<()> {
    let b3 = classical(3)?;
    let guards = Guards::for_structure(&b3);
    let ball = ball_x(&VertexX::base(&b3), 3, &guards)?;
    let mut spheres = vec![0; 4];
    for (_, d) in &ball {
        spheres[*d] += 1;
    }
    println!("sphere sizes around *: {spheres:?}");

    let g = parse_word(&b3, "s1^-1")?;
    let h = parse_word(&b3, "s2 s2 s1")?;
    for m in [Metric::Gamma, Metric::GammaBar, Metric::X] {
        println!("{m:?} distance {}", dist(&g, &h, m)?);
    }
    let path = preferred_path(&g, &h)?;
    let words: Vec<String> = path.vertices.iter().map(|v| v.to_string()).collect();
    println!("preferred path {}", words.join(" -> "));
    Ok(())
}
