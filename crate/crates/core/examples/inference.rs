//! MAP decoding, the log-partition and tag marginals on a random sentence.

use discner::corpus::random_scorer;
use discner::{decode, forward, intersect, marginals, viterbi, Grammar, Mode, Tag};

fn main() -> discner::Result<()> {
    let tokens = ["severe", "pain", "in", "left", "and", "right", "knees"];
    let scorer = random_scorer(256, 2.0, 7)?;
    let weights = scorer.score(&tokens);

    let grammar = Grammar::new(Mode::Semantic);
    let lattice = intersect(&grammar, &weights)?;
    let (score, tags) = viterbi(&lattice, &weights)?;
    let log_z = forward(&lattice, &weights)?;
    println!("best sequence: {tags}");
    println!(
        "score {score:.4}, log-partition {log_z:.4}, probability {:.4}",
        (score - log_z).exp()
    );
    println!("mentions: {}", decode(&tags)?);

    let mu = marginals(&lattice, &weights)?;
    print!("{:>8}", "");
    for t in Tag::ALL {
        print!("{:>7}", t.as_str());
    }
    println!();
    for (i, row) in mu.rows().iter().enumerate() {
        print!("{:>8}", tokens[i]);
        for p in row {
            print!("{p:>7.3}");
        }
        println!("   sum {:.6}", row.iter().sum::<f64>());
    }
    Ok(())
}
