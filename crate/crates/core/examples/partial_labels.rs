//! Partial labels: the type-flip variants of an annotation and the losses
//! that marginalize or maximize over them.

use discner::inference::clamped_marginals;
use discner::{
    clamped_log_partition, hard_em_step, intersect, nll, partial_nll, to_two_layer, Grammar,
    MentionSet, Mode, PartialLabelSet, WeightMatrix,
};

fn main() -> discner::Result<()> {
    let n = 9;
    // two sets whose component types are unknown
    let mentions: MentionSet = "0-1;3-3|0-1;5-5|6-6;8-8".parse()?;
    let ann = to_two_layer(&mentions, n, None)?;
    let labels = PartialLabelSet::new(ann)?;
    println!(
        "{} unresolved sets, {} members:",
        labels.unresolved(),
        labels.len()
    );
    for m in labels.members() {
        println!("  {m}");
    }

    let mut w = WeightMatrix::zeros(n);
    w[(3, discner::Tag::DiBy)] = 1.0;
    let grammar = Grammar::new(Mode::Semantic);
    let lattice = intersect(&grammar, &w)?;
    println!(
        "clamped log-partition: {:.4}",
        clamped_log_partition(&labels, &w)?
    );
    println!(
        "nll towards member 0:  {:.4}",
        nll(&lattice, &w, &labels.members()[0])?.value
    );
    println!(
        "partial nll:           {:.4}",
        partial_nll(&lattice, &w, &labels)?.value
    );
    let (loss, chosen) = hard_em_step(&lattice, &w, &labels)?;
    println!("hard-em picks {chosen} with loss {:.4}", loss.value);
    let mu = clamped_marginals(&labels, &w)?;
    println!(
        "clamped marginals at word 3: {:?}",
        mu.rows()[3].map(|p| (p * 1e3).round() / 1e3)
    );
    Ok(())
}
