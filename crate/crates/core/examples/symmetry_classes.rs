// Reverse/complement orbits of pattern sets.
use vincular::classify::partition_into_symmetry_classes;
use vincular::{symmetry_class, PatternSet, Result};

fn main() -> Result<()> {
    let class = symmetry_class(&PatternSet::parse("1-23,12-3")?);
    println!("canonical {}", class.canonical);
    for member in &class.members {
        println!("  {member}");
    }
    for k in 1..=4 {
        println!("k={k}: {} classes", partition_into_symmetry_classes(k)?.len());
    }
    Ok(())
}
