//! Corpus statistics, incompatibility filtering, silver typing and
//! evaluation.

use discner::corpus::{filter_incompatible, format_corpus, parse_corpus, silver_corpus, stats};
use discner::{evaluate, Lexicon, MentionSet};

const CORPUS: &str = "\
pain in the arms and shoulders
0-1;3-3|0-1;5-5

aches in hips , knees and ankles
0-0;2-2|0-0;4-4|0-0;6-6

numb fingers
0-1

cramps x in y the z feet
0-0;2-2;4-4;6-6
";

fn main() -> discner::Result<()> {
    let records = parse_corpus(CORPUS)?;
    println!("{:?}", stats(&records));

    let outcome = filter_incompatible(&records);
    for d in &outcome.dropped {
        println!("dropped record {}: {}", d.index, d.reason);
    }

    let lexicon: Lexicon = "arm\narms\nknees\nshoulders\nhips".parse()?;
    let silver = silver_corpus(&outcome.kept, &lexicon);
    print!("{}", format_corpus(&silver));

    let gold: Vec<MentionSet> = outcome.kept.iter().map(|r| r.mentions().clone()).collect();
    let mut predicted = gold.clone();
    predicted[1] = "0-0;2-2|0-0;4-4".parse()?;
    println!("{}", evaluate(&gold, &predicted)?);
    Ok(())
}
