// Counting sequence of an avoidance class and the family it follows.
use vincular::{count_avoiders_naive, counting_sequence, match_sequence, PatternSet, Result};

fn main() -> Result<()> {
    for text in ["1-23", "1-23,3-12", "1-23,23-1,3-12", "12-3,2-13,2-31,32-1"] {
        let set = PatternSet::parse(text)?;
        let seq = counting_sequence(10, &set)?;
        let naive = count_avoiders_naive(7, &set)?;
        assert_eq!(seq.at(7), Some(naive));
        println!("{set}: {:?} -> {}", seq.counts, match_sequence(&seq)?);
    }
    Ok(())
}
