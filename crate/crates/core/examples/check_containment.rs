// Containment and occurrences of dashed patterns in one permutation.
use vincular::{contains, occurrences, Permutation, Result, VincularPattern};

fn main() -> Result<()> {
    let perm: Permutation = "153426".parse()?;
    for text in ["32-14", "3-214", "1-23", "321"] {
        let pattern = VincularPattern::parse(text)?;
        let found = occurrences(&perm, &pattern);
        println!("{perm} {} {pattern}: {found:?}", if contains(&perm, &pattern) { "contains" } else { "avoids" });
    }
    Ok(())
}
