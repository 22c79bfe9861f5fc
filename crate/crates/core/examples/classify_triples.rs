// Classification of all three-pattern sets up to symmetry.
use vincular::classify::classify_all;
use vincular::tables::TableData;
use vincular::Result;

fn main() -> Result<()> {
    let data = TableData::embedded();
    let report = classify_all(3, 9, Some(&data), false)?;
    for class in &report.classes {
        let rows: Vec<&str> = class.table_rows.iter().map(|r| r.label.as_str()).collect();
        println!("{} {} {:?} consistent={}", class.class.canonical, class.identification, rows, class.consistent());
    }
    println!("{} classes covering {} subsets", report.classes.len(), report.subsets_covered());
    Ok(())
}
