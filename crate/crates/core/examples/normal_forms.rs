//! Left and right normal forms, fractions and geodesic mixed words.

use garside::normal_form::{format_mixed_word, left_fraction, mixed_word, right_normal_form};
use garside::structures::classical;
use garside::word::{factor_words, format_word, parse_word};

fn shown(g: &garside::element::GroupElement) -> String {
    if g.is_identity() {
        "1".into()
    } else {
        format_word(g)
    }
}

fn main() -> garside::error::Result<()> {
    let b3 = classical(3)?;
    for w in ["s1 s2 s1 s2", "s1 s2^-1", "s2^-1 s1^-1 s2 s2", "D^-2 s1"] {
        let g = parse_word(&b3, w)?;
        let r = right_normal_form(&g);
        let f = left_fraction(&g);
        println!("{w}");
        println!(
            "  inf {} sup {} factors {:?}",
            g.inf(),
            g.sup(),
            factor_words(&g)
        );
        println!("  right normal form: inf {} sup {}", r.inf(), r.sup());
        println!(
            "  left fraction ({})^-1 ({})",
            shown(&f.denominator),
            shown(&f.numerator)
        );
        println!(
            "  geodesic {:?}, length {}",
            format_mixed_word(&b3, &mixed_word(&g)),
            g.word_length()
        );
    }
    Ok(())
}
