// Replay of every row of the embedded tables.
use vincular::classify::verify_table;
use vincular::tables::TableData;
use vincular::Result;

fn main() -> Result<()> {
    let data = TableData::embedded();
    for id in data.table_ids() {
        let check = verify_table(&data, id, 8, false)?;
        let failed: Vec<&str> = check.rows.iter().filter(|r| !r.passed()).map(|r| r.label.as_str()).collect();
        println!("table {id}: {} rows, failed {failed:?}", check.rows.len());
    }
    Ok(())
}
