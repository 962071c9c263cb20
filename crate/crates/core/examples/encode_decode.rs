//! Mention sets, the two-layer representation and tag sequences.

use discner::{decode, encode, from_two_layer, to_two_layer, ComponentType, Interval, MentionSet};

fn main() -> discner::Result<()> {
    let tokens = ["pain", "in", "the", "arms", "and", "shoulders"];
    let mentions: MentionSet = "0-1;3-3|0-1;5-5".parse()?;
    for m in &mentions {
        let words: Vec<&str> = m.words().map(|w| tokens[w]).collect();
        println!("mention {m:<10} {}", words.join(" "));
    }

    // Without types the leftmost component of a set is x.
    let structural = to_two_layer(&mentions, tokens.len(), None)?;
    println!("structural: {}", encode(&structural)?);

    // Body parts are x.
    let body_part = |iv: Interval| (iv.start >= 3).then_some(ComponentType::X);
    let semantic = to_two_layer(&mentions, tokens.len(), Some(&body_part))?;
    let tags = encode(&semantic)?;
    println!("semantic:   {tags}");
    for set in &semantic.sets {
        for c in set.components() {
            let words: Vec<&str> = c.interval.words().map(|w| tokens[w]).collect();
            println!("  component {} ({}) {}", c.interval, c.ty, words.join(" "));
        }
    }

    assert_eq!(decode(&tags)?, mentions);
    assert_eq!(from_two_layer(&semantic), mentions);
    println!("decoded:    {}", decode(&tags)?);

    // Three mutually overlapping components cannot be expressed.
    let three_way: MentionSet = "0-0;2-2;4-4".parse()?;
    match to_two_layer(&three_way, 5, None) {
        Err(e) => println!("rejected:   {three_way}: {e}"),
        Ok(_) => unreachable!(),
    }

    // Not every tag sequence is well-formed.
    for text in ["O DB-Bx DI-By", "O DB-Bx DI-Bx", "DB-Bx DI-O DI-By"] {
        let ts = text.parse()?;
        println!("{text:<18} well-formed: {}", discner::is_well_formed(&ts));
    }
    Ok(())
}
