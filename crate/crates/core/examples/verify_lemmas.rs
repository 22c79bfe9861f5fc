// Exhaustive check of the closure, implication and structure statements.
use vincular::lemmas::{negative_controls, verify_statements};
use vincular::tables::TableData;
use vincular::Result;

fn main() -> Result<()> {
    let data = TableData::embedded();
    for record in verify_statements(&data, 8)? {
        println!("{:<4} {:<22} holds={} up to n={}", record.id, format!("{:?}", record.kind), record.holds, record.verified_up_to);
    }
    for control in negative_controls(8)? {
        let witness = control.record.witness.as_ref().map(ToString::to_string).unwrap_or_default();
        println!("{:<4} fails as expected: {} (witness {witness})", control.record.id, control.confirmed());
    }
    Ok(())
}
