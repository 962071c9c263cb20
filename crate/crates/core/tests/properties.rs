use proptest::prelude::*;

use discner::corpus::{filter_incompatible, format_corpus, parse_corpus, silver_type};
use discner::scheme::{is_well_formed_in, parse_annotation};
use discner::{
    decode, encode, evaluate, forward, from_two_layer, intersect, marginals, to_two_layer, viterbi,
    CorpusRecord, Error, Grammar, Interval, Lexicon, Mention, MentionSet, Mode, Tag, TagSequence,
    WeightMatrix,
};

fn mention(n: usize) -> impl Strategy<Value = Option<Mention>> {
    prop::collection::vec((0..n, 0..3usize), 1..4).prop_map(|parts| {
        let fragments: Vec<Interval> = parts
            .into_iter()
            .map(|(s, len)| Interval::new(s, s + len).unwrap())
            .collect();
        Mention::new(fragments).ok()
    })
}

/// A sentence length and mentions that fit inside it.
fn mention_set() -> impl Strategy<Value = (usize, MentionSet)> {
    (3..12usize).prop_flat_map(|n| {
        prop::collection::vec(mention(n - 2), 0..5)
            .prop_map(move |ms| (n, ms.into_iter().flatten().collect::<MentionSet>()))
    })
}

fn tags(max: usize) -> impl Strategy<Value = TagSequence> {
    prop::collection::vec(0..Tag::COUNT, 0..max)
        .prop_map(|ix| ix.into_iter().map(|i| Tag::ALL[i]).collect())
}

fn weights(n: usize) -> impl Strategy<Value = WeightMatrix> {
    prop::collection::vec(-3.0..3.0f64, n * Tag::COUNT)
        .prop_map(|v| WeightMatrix::from_flat(&v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn compatible_sets_survive_encoding((n, ms) in mention_set()) {
        if let Ok(ann) = to_two_layer(&ms, n, None) {
            prop_assert_eq!(from_two_layer(&ann), ms.clone());
            let semantic = encode(&ann).unwrap();
            let structural = encode(&ann.to_structural()).unwrap();
            prop_assert!(is_well_formed_in(&structural, Mode::Structural));
            prop_assert_eq!(decode(&semantic).unwrap(), ms.clone());
            prop_assert_eq!(decode(&structural).unwrap(), ms.clone());
            for set in &ann.sets {
                let mut flipped = ann.clone();
                for s in &mut flipped.sets {
                    if s == set {
                        *s = s.flipped();
                    }
                }
                prop_assert_eq!(decode(&encode(&flipped).unwrap()).unwrap(), ms.clone());
            }
        }
    }

    #[test]
    fn incompatibility_is_the_only_conversion_error((n, ms) in mention_set()) {
        match to_two_layer(&ms, n, None) {
            Ok(_) | Err(Error::Incompatible(_)) => {}
            Err(e) => prop_assert!(false, "unexpected {e}"),
        }
    }

    #[test]
    fn decode_accepts_exactly_the_well_formed(ts in tags(9)) {
        match decode(&ts) {
            Ok(ms) => {
                prop_assert!(discner::is_well_formed(&ts));
                let ann = parse_annotation(&ts).unwrap();
                prop_assert_eq!(encode(&ann).unwrap(), ts.clone());
                prop_assert_eq!(from_two_layer(&ann), ms);
            }
            Err(e) => {
                prop_assert!(!discner::is_well_formed(&ts));
                prop_assert!(matches!(e, Error::IllFormed(_)));
            }
        }
    }

    #[test]
    fn grammar_agrees_with_the_rules(ts in tags(12)) {
        for mode in [Mode::Semantic, Mode::Structural] {
            let grammar = Grammar::new(mode);
            prop_assert_eq!(grammar.accepts(ts.as_slice()), is_well_formed_in(&ts, mode));
        }
    }

    #[test]
    fn inference_outputs_are_consistent(w in (1..15usize).prop_flat_map(weights)) {
        let grammar = Grammar::new(Mode::Semantic);
        let lattice = intersect(&grammar, &w).unwrap();
        let (best, ts) = viterbi(&lattice, &w).unwrap();
        prop_assert!(discner::is_well_formed(&ts));
        prop_assert_eq!(w.score(&ts), best);
        prop_assert!(decode(&ts).is_ok());
        let log_z = forward(&lattice, &w).unwrap();
        prop_assert!(log_z >= best - 1e-12);
        let mu = marginals(&lattice, &w).unwrap();
        for row in mu.rows() {
            prop_assert!((row.iter().sum::<f64>() - 1.0).abs() < 1e-9);
            prop_assert!(row.iter().all(|&p| (-1e-12..=1.0 + 1e-12).contains(&p)));
        }
    }

    #[test]
    fn corpus_text_round_trips(records in prop::collection::vec(mention_set(), 0..6)) {
        let records: Vec<CorpusRecord> = records
            .into_iter()
            .map(|(n, ms)| {
                let tokens = (0..n).map(|i| format!("t{i}")).collect();
                CorpusRecord::new(tokens, ms).unwrap()
            })
            .collect();
        let text = format_corpus(&records);
        let back = parse_corpus(&text).unwrap();
        prop_assert_eq!(&back, &records);
        prop_assert_eq!(format_corpus(&back), text);

        let once = filter_incompatible(&records);
        let twice = filter_incompatible(&once.kept);
        prop_assert!(twice.dropped.is_empty());
        prop_assert_eq!(twice.kept, once.kept);
    }

    #[test]
    fn silver_typing_keeps_mentions((n, ms) in mention_set(), lex_words in prop::collection::vec(0..12usize, 0..4)) {
        if let Ok(ann) = to_two_layer(&ms, n, None) {
            let tokens: Vec<String> = (0..n).map(|i| format!("t{i}")).collect();
            let entries: Vec<String> = lex_words.iter().map(|i| format!("t{i}")).collect();
            let lex: Lexicon = entries.join("\n").parse().unwrap();
            let typed = silver_type(&ann, &tokens, &lex);
            prop_assert_eq!(from_two_layer(&typed), ms);
            for (a, b) in ann.sets.iter().zip(&typed.sets) {
                prop_assert_eq!(a.span(), b.span());
            }
            prop_assert!(encode(&typed).is_ok());
        }
    }

    #[test]
    fn evaluation_identities(g in prop::collection::vec(mention_set(), 1..5), p in prop::collection::vec(mention_set(), 1..5)) {
        let gold: Vec<MentionSet> = g.into_iter().map(|(_, m)| m).collect();
        let pred: Vec<MentionSet> = p.into_iter().map(|(_, m)| m).collect();
        let same = evaluate(&gold, &gold).unwrap();
        prop_assert_eq!(same.overall.f1, 1.0);
        prop_assert_eq!(same.discontinuous.f1, 1.0);
        if gold.len() == pred.len() {
            let a = evaluate(&gold, &pred).unwrap();
            let b = evaluate(&pred, &gold).unwrap();
            prop_assert_eq!(a.overall.precision, b.overall.recall);
            prop_assert_eq!(a.overall.recall, b.overall.precision);
            prop_assert_eq!(a.discontinuous.precision, b.discontinuous.recall);
            for prf in [a.overall, a.discontinuous] {
                prop_assert!((0.0..=1.0).contains(&prf.precision));
                prop_assert!((0.0..=1.0).contains(&prf.recall));
                prop_assert!((0.0..=1.0).contains(&prf.f1));
            }
        } else {
            let mismatch = matches!(evaluate(&gold, &pred), Err(Error::LengthMismatch { .. }));
            prop_assert!(mismatch);
        }
    }
}
