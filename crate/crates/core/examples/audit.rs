//! Axiom audit of every built-in structure family at small size.

use garside::structures::{axiom_audit, from_descriptor};

fn main() -> garside::error::Result<()> {
    for d in [
        "braid:classical:n=3",
        "braid:classical:n=4",
        "braid:dual:n=4",
        "zn:n=3",
    ] {
        let st = from_descriptor(d)?;
        let r = axiom_audit(&st)?;
        println!(
            "{d:<22} simples {:>3}  pairs {:>4}  triples {:>6}  passed {}",
            r.simples,
            r.pairs_checked,
            r.triples_checked,
            r.passed()
        );
    }
    Ok(())
}
