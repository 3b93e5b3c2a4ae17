//! Closed vocabularies for the two modalities and the template grammars.
//!
//! Text ids cover a fixed 20-word list (instructions and plans share it).
//! Image ids cover 13 symbols: empty plus shape x color. The unified model
//! id space is range-partitioned: text ids come first, image ids follow at
//! offset [`TEXT_VOCAB`].

use super::{Category, Color, GridworldError, ObjectSpec, Relation, Shape, TokenId};

pub const TEXT_VOCAB: usize = 20;
pub const IMAGE_VOCAB: usize = 13;

/// Text end-of-sequence token.
pub const EOS_TEXT: TokenId = 0;

const TEXT_WORDS: [&str; TEXT_VOCAB] = [
    "<eos>", "draw", "place", "one", "two", "three", "four", "red", "green", "blue", "yellow",
    "any", "square", "circle", "triangle", "and", "left-of", "right-of", "above", "below",
];

pub fn text_word(id: TokenId) -> Result<&'static str, GridworldError> {
    TEXT_WORDS
        .get(id as usize)
        .copied()
        .ok_or(GridworldError::TextTokenOutOfVocab(id))
}

pub fn text_token(word: &str) -> Result<TokenId, GridworldError> {
    TEXT_WORDS
        .iter()
        .position(|w| *w == word)
        .map(|i| i as TokenId)
        .ok_or_else(|| GridworldError::UnknownWord(word.to_string()))
}

pub fn tokenize(text: &str) -> Result<Vec<TokenId>, GridworldError> {
    text.split_whitespace().map(text_token).collect()
}

pub fn detokenize(tokens: &[TokenId]) -> Result<String, GridworldError> {
    let words = tokens
        .iter()
        .map(|&t| text_word(t))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(words.join(" "))
}

pub fn count_word(count: usize) -> &'static str {
    match count {
        1 => "one",
        2 => "two",
        3 => "three",
        4 => "four",
        _ => panic!("counts are restricted to 1..=4, got {count}"),
    }
}

fn color_word(color: Option<Color>) -> &'static str {
    color.map_or("any", Color::word)
}

/// Local image-vocabulary id of a cell: 0 is empty, then shape-major.
pub fn image_token(cell: Option<(Shape, Color)>) -> TokenId {
    match cell {
        None => 0,
        Some((s, c)) => {
            let s = Shape::ALL.iter().position(|x| *x == s).unwrap();
            let c = Color::ALL.iter().position(|x| *x == c).unwrap();
            (1 + s * Color::ALL.len() + c) as TokenId
        }
    }
}

pub fn image_cell(token: TokenId) -> Result<Option<(Shape, Color)>, GridworldError> {
    if token as usize >= IMAGE_VOCAB {
        return Err(GridworldError::TokenOutOfVocab {
            token,
            vocab: IMAGE_VOCAB,
        });
    }
    if token == 0 {
        return Ok(None);
    }
    let idx = token as usize - 1;
    let shape = Shape::ALL[idx / Color::ALL.len()];
    let color = Color::ALL[idx % Color::ALL.len()];
    Ok(Some((shape, color)))
}

pub fn image_symbol(token: TokenId) -> Result<String, GridworldError> {
    Ok(match image_cell(token)? {
        None => "empty".to_string(),
        Some((s, c)) => format!("{}-{}", c.word(), s.word()),
    })
}

/// Instruction template per category. `draw` is the instruction verb; plans
/// use `place`, so the boundary between prompt and reasoning is unambiguous.
pub fn instruction_tokens(
    category: Category,
    objects: &[ObjectSpec],
    relation: Option<Relation>,
) -> Vec<TokenId> {
    phrase_tokens("draw", objects, relation, category)
}

/// Ground-truth plan for a task: enumerates the required objects and the
/// relation in a fixed grammar and ends with `<eos>`.
pub fn plan_tokens(
    category: Category,
    objects: &[ObjectSpec],
    relation: Option<Relation>,
) -> Vec<TokenId> {
    let mut toks = phrase_tokens("place", objects, relation, category);
    toks.push(EOS_TEXT);
    toks
}

fn phrase_tokens(
    verb: &str,
    objects: &[ObjectSpec],
    relation: Option<Relation>,
    _category: Category,
) -> Vec<TokenId> {
    let mut words: Vec<&str> = vec![verb];
    for (i, obj) in objects.iter().enumerate() {
        if i > 0 {
            words.push(relation.map_or("and", Relation::word));
        }
        words.push(count_word(obj.count));
        words.push(color_word(obj.color));
        words.push(obj.shape.word());
    }
    words
        .into_iter()
        .map(|w| text_token(w).expect("template words are in the vocabulary"))
        .collect()
}

/// JSON manifest of the unified id space: id -> (modality, symbol).
pub fn vocab_manifest() -> serde_json::Value {
    let mut entries = Vec::new();
    for (id, word) in TEXT_WORDS.iter().enumerate() {
        entries.push(serde_json::json!({
            "id": id,
            "modality": "text",
            "symbol": word,
        }));
    }
    for local in 0..IMAGE_VOCAB {
        entries.push(serde_json::json!({
            "id": TEXT_VOCAB + local,
            "modality": "image",
            "symbol": image_symbol(local as TokenId).unwrap(),
        }));
    }
    serde_json::json!({
        "text_vocab": TEXT_VOCAB,
        "image_vocab": IMAGE_VOCAB,
        "tokens": entries,
    })
}
