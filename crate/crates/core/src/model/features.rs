use std::hash::Hasher;

use fnv::FnvHasher;

const AFFIX_LEN: usize = 3;

/// The feature templates instantiated at every position.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FeatureTemplate {
    Bias,
    Word,
    PrevWord,
    NextWord,
    Prefix,
    Suffix,
}

impl FeatureTemplate {
    pub const ALL: [FeatureTemplate; 6] = [
        FeatureTemplate::Bias,
        FeatureTemplate::Word,
        FeatureTemplate::PrevWord,
        FeatureTemplate::NextWord,
        FeatureTemplate::Prefix,
        FeatureTemplate::Suffix,
    ];

    fn key(self) -> &'static [u8] {
        match self {
            FeatureTemplate::Bias => b"bias",
            FeatureTemplate::Word => b"w",
            FeatureTemplate::PrevWord => b"w-1",
            FeatureTemplate::NextWord => b"w+1",
            FeatureTemplate::Prefix => b"pre3",
            FeatureTemplate::Suffix => b"suf3",
        }
    }
}

fn hash(template: FeatureTemplate, value: &str, dim: usize) -> usize {
    let mut h = FnvHasher::default();
    h.write(template.key());
    h.write(&[0xff]);
    h.write(value.as_bytes());
    (h.finish() % dim as u64) as usize
}

/// Hashed feature indices in `0..dim` for position `i`, one per template in
/// [`FeatureTemplate::ALL`] order. Indices may repeat on hash collisions.
///
/// # Panics
///
/// If `i` is out of range or `dim` is zero.
pub fn features<S: AsRef<str>>(tokens: &[S], i: usize, dim: usize) -> [usize; 6] {
    assert!(dim > 0, "feature dimension must be positive");
    let word = tokens[i].as_ref().to_lowercase();
    let prev = match i {
        0 => "<s>".to_owned(),
        _ => tokens[i - 1].as_ref().to_lowercase(),
    };
    let next = tokens
        .get(i + 1)
        .map_or_else(|| "</s>".to_owned(), |t| t.as_ref().to_lowercase());
    let chars: Vec<char> = word.chars().collect();
    let prefix: String = chars.iter().take(AFFIX_LEN).collect();
    let suffix: String = chars[chars.len().saturating_sub(AFFIX_LEN)..]
        .iter()
        .collect();
    [
        hash(FeatureTemplate::Bias, "", dim),
        hash(FeatureTemplate::Word, &word, dim),
        hash(FeatureTemplate::PrevWord, &prev, dim),
        hash(FeatureTemplate::NextWord, &next, dim),
        hash(FeatureTemplate::Prefix, &prefix, dim),
        hash(FeatureTemplate::Suffix, &suffix, dim),
    ]
}
