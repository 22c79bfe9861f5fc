// Sets whose avoiders are a fixed pair or a single permutation for every n.
use vincular::lemmas::{expected_structure, verify_structure};
use vincular::tables::TableData;
use vincular::Result;

fn main() -> Result<()> {
    let data = TableData::embedded();
    for id in ["S1", "S2", "S3", "S4", "S5", "S6", "S7"] {
        let statement = data.structure(id).expect("statement present");
        let verdict = verify_structure(statement.template, &statement.generator, 8)?;
        let shape: Vec<String> = expected_structure(statement.template, 6)?.iter().map(ToString::to_string).collect();
        println!("{id} {}: {} sets, holds={}, n=6 {shape:?}", statement.template, verdict.sets_checked, verdict.holds);
    }
    Ok(())
}
