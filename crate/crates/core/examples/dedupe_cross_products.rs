// Symmetry-class deduplication of the constant-2 cross-product table.
use vincular::classify::dedupe_cross_product_classes;
use vincular::tables::TableData;
use vincular::Result;

fn main() -> Result<()> {
    let report = dedupe_cross_product_classes(&TableData::embedded(), 7)?;
    let claimed = report.claimed_distinct.map(|c| c.to_string()).unwrap_or_else(|| "no".into());
    println!("{} raw sets, {} distinct, {claimed} claimed", report.raw, report.distinct);
    for dup in &report.duplicates {
        println!("  {} repeats the class of {}", dup.label, dup.same_class_as);
    }
    println!("duplicates come from box rows {:?}", report.duplicate_rows);
    Ok(())
}
