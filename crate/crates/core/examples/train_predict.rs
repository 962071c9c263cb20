//! Trains the linear scorer on a small corpus, saves it and predicts.

use discner::corpus::parse_corpus;
use discner::{evaluate, predict, train, Grammar, LinearScorer, LossKind, Mode, TrainConfig};

const CORPUS: &str = "\
pain in the arms and shoulders
0-1;3-3|0-1;5-5

swelling of both knees
0-0;3-3

my back hurts
1-2

I feel fine today


stiffness in the neck and wrists
0-1;3-3|0-1;5-5
";

fn main() -> discner::Result<()> {
    let records = parse_corpus(CORPUS)?;
    let grammar = Grammar::new(Mode::Semantic);
    for loss in [LossKind::Nll, LossKind::Partial, LossKind::HardEm] {
        let cfg = TrainConfig {
            loss,
            epochs: 15,
            learning_rate: 0.3,
            dim: 1 << 14,
            ..TrainConfig::default()
        };
        let scorer = train(&records, &cfg)?;
        let predicted = records
            .iter()
            .map(|r| predict(&scorer, &grammar, r.tokens()))
            .collect::<discner::Result<Vec<_>>>()?;
        let gold: Vec<_> = records.iter().map(|r| r.mentions().clone()).collect();
        println!("{loss:>8}: {}", evaluate(&gold, &predicted)?.overall);
    }

    let scorer = train(
        &records,
        &TrainConfig {
            dim: 1 << 14,
            ..TrainConfig::default()
        },
    )?;
    let path = std::env::temp_dir().join("discner-example.model");
    scorer.save(&path)?;
    let loaded = LinearScorer::load(&path)?;
    assert_eq!(loaded, scorer);
    println!(
        "model: {} nonzero rows, saved to {}",
        loaded.nonzero_rows(),
        path.display()
    );

    let unseen = ["pain", "in", "the", "neck", "and", "knees"];
    println!(
        "{}: {}",
        unseen.join(" "),
        predict(&loaded, &grammar, &unseen)?
    );
    Ok(())
}
