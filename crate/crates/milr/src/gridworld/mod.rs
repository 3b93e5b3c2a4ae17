//! Synthetic instruction/grid domain with an exact programmatic evaluator.
//!
//! A task asks for objects (shape, optional color, count) on a small grid,
//! optionally related by a spatial relation. Grids are token sequences over a
//! 13-symbol image vocabulary (empty + 3 shapes x 4 colors), instructions and
//! plans are token sequences over a closed 20-word text vocabulary. The
//! evaluator scores a (task, grid) pair as the mean of binary rubric criteria
//! and is the ground-truth reward for everything downstream.

mod corpus;
mod eval;
mod sample;
pub mod vocab;

pub use corpus::{generate_corpus, read_corpus, write_corpus, TrainingTriple};
pub use eval::{evaluate, evaluate_with_mode, RubricMode};
pub use sample::{oracle_plan, sample_grid, sample_grid_sized, sample_task};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Token id within one modality's vocabulary.
pub type TokenId = u16;

/// Default grid edge lengths; 16 cells total.
pub const DEFAULT_WIDTH: usize = 4;
pub const DEFAULT_HEIGHT: usize = 4;

#[derive(Debug, Error)]
pub enum GridworldError {
    #[error("task cannot fit on a {width}x{height} grid: {reason}")]
    TaskUnsatisfiable {
        width: usize,
        height: usize,
        reason: String,
    },
    #[error("image token {token} outside the vocabulary [0, {vocab})")]
    TokenOutOfVocab { token: TokenId, vocab: usize },
    #[error("expected {expected} grid tokens for {width}x{height}, got {got}")]
    DimensionMismatch {
        expected: usize,
        got: usize,
        width: usize,
        height: usize,
    },
    #[error("unknown word {0:?}")]
    UnknownWord(String),
    #[error("text token {0} outside the vocabulary")]
    TextTokenOutOfVocab(TokenId),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Shape {
    Square,
    Circle,
    Triangle,
}

impl Shape {
    pub const ALL: [Shape; 3] = [Shape::Square, Shape::Circle, Shape::Triangle];

    pub fn word(self) -> &'static str {
        match self {
            Shape::Square => "square",
            Shape::Circle => "circle",
            Shape::Triangle => "triangle",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Color {
    Red,
    Green,
    Blue,
    Yellow,
}

impl Color {
    pub const ALL: [Color; 4] = [Color::Red, Color::Green, Color::Blue, Color::Yellow];

    pub fn word(self) -> &'static str {
        match self {
            Color::Red => "red",
            Color::Green => "green",
            Color::Blue => "blue",
            Color::Yellow => "yellow",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Relation {
    LeftOf,
    RightOf,
    Above,
    Below,
}

impl Relation {
    pub const ALL: [Relation; 4] = [
        Relation::LeftOf,
        Relation::RightOf,
        Relation::Above,
        Relation::Below,
    ];

    pub fn word(self) -> &'static str {
        match self {
            Relation::LeftOf => "left-of",
            Relation::RightOf => "right-of",
            Relation::Above => "above",
            Relation::Below => "below",
        }
    }

    /// Strict inequality on the relevant axis; `a` and `b` are centroids in
    /// (x, y) with y growing downward. Ties fail.
    pub fn holds(self, a: (f64, f64), b: (f64, f64)) -> bool {
        match self {
            Relation::LeftOf => a.0 < b.0,
            Relation::RightOf => a.0 > b.0,
            Relation::Above => a.1 < b.1,
            Relation::Below => a.1 > b.1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Category {
    SingleObj,
    TwoObj,
    Counting,
    Colors,
    Position,
    AttrBinding,
}

impl Category {
    pub const ALL: [Category; 6] = [
        Category::SingleObj,
        Category::TwoObj,
        Category::Counting,
        Category::Colors,
        Category::Position,
        Category::AttrBinding,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Category::SingleObj => "single_obj",
            Category::TwoObj => "two_obj",
            Category::Counting => "counting",
            Category::Colors => "colors",
            Category::Position => "position",
            Category::AttrBinding => "attr_binding",
        }
    }

    pub fn from_name(name: &str) -> Option<Category> {
        Category::ALL.into_iter().find(|c| c.name() == name)
    }
}

/// One requirement line of a task: `count` cells holding `shape`, each of
/// `color` (or any color when `None`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObjectSpec {
    pub shape: Shape,
    pub color: Option<Color>,
    pub count: usize,
}

impl ObjectSpec {
    pub fn matches(&self, shape: Shape, color: Color) -> bool {
        self.shape == shape && self.color.map_or(true, |c| c == color)
    }

    pub fn describe(&self) -> String {
        let color = self.color.map_or("any", Color::word);
        format!("{} {} {}", vocab::count_word(self.count), color, self.shape.word())
    }
}

/// A benchmark-style instruction: required objects, an optional relation
/// between the first two, and the tokenized instruction text.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaskSpec {
    pub category: Category,
    pub objects: Vec<ObjectSpec>,
    pub relation: Option<Relation>,
    pub instruction: Vec<TokenId>,
}

impl TaskSpec {
    /// Builds a task and materializes its instruction tokens from the
    /// closed template grammar.
    pub fn new(category: Category, objects: Vec<ObjectSpec>, relation: Option<Relation>) -> Self {
        let instruction = vocab::instruction_tokens(category, &objects, relation);
        TaskSpec {
            category,
            objects,
            relation,
            instruction,
        }
    }

    /// Stable content id used by replay reward files and episode logs.
    pub fn content_id(&self) -> String {
        use sha2::{Digest, Sha256};
        let mut hasher = Sha256::new();
        for t in &self.instruction {
            hasher.update(t.to_le_bytes());
        }
        hex::encode(&hasher.finalize()[..8])
    }
}

/// Grid of cells, row-major; a cell is empty or holds one colored shape.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GridTokensRepr", into = "GridTokensRepr")]
pub struct GridSpec {
    pub width: usize,
    pub height: usize,
    pub cells: Vec<Option<(Shape, Color)>>,
}

impl GridSpec {
    pub fn empty(width: usize, height: usize) -> Self {
        GridSpec {
            width,
            height,
            cells: vec![None; width * height],
        }
    }

    pub fn cell(&self, x: usize, y: usize) -> Option<(Shape, Color)> {
        self.cells[y * self.width + x]
    }

    pub fn set(&mut self, x: usize, y: usize, content: Option<(Shape, Color)>) {
        self.cells[y * self.width + x] = content;
    }

    pub fn filled_count(&self) -> usize {
        self.cells.iter().filter(|c| c.is_some()).count()
    }

    /// Indices of cells matching an object requirement.
    pub fn matching_cells(&self, obj: &ObjectSpec) -> Vec<usize> {
        self.cells
            .iter()
            .enumerate()
            .filter_map(|(i, c)| match c {
                Some((s, col)) if obj.matches(*s, *col) => Some(i),
                _ => None,
            })
            .collect()
    }

    /// Row-major image token sequence (local image-vocabulary ids).
    pub fn tokens(&self) -> Vec<TokenId> {
        self.cells.iter().map(|c| vocab::image_token(*c)).collect()
    }

    /// Inverse of [`GridSpec::tokens`]; rejects out-of-vocabulary ids and
    /// token counts that do not match the grid dimensions.
    pub fn parse(
        tokens: &[TokenId],
        width: usize,
        height: usize,
    ) -> Result<GridSpec, GridworldError> {
        if tokens.len() != width * height {
            return Err(GridworldError::DimensionMismatch {
                expected: width * height,
                got: tokens.len(),
                width,
                height,
            });
        }
        let cells = tokens
            .iter()
            .map(|&t| vocab::image_cell(t))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(GridSpec {
            width,
            height,
            cells,
        })
    }

    /// Plain-text debug rendering (PPM-style rows of symbols).
    pub fn render(&self) -> String {
        let mut out = String::new();
        for y in 0..self.height {
            for x in 0..self.width {
                let sym = match self.cell(x, y) {
                    None => ".".to_string(),
                    Some((s, c)) => format!("{}{}", &c.word()[..1], &s.word()[..1]),
                };
                out.push_str(&format!("{sym:<4}"));
            }
            out.push('\n');
        }
        out
    }
}

/// Serialized form of a grid: explicit token-id array plus dimensions.
#[derive(Serialize, Deserialize)]
struct GridTokensRepr {
    width: usize,
    height: usize,
    tokens: Vec<TokenId>,
}

impl From<GridSpec> for GridTokensRepr {
    fn from(g: GridSpec) -> Self {
        GridTokensRepr {
            width: g.width,
            height: g.height,
            tokens: g.tokens(),
        }
    }
}

impl TryFrom<GridTokensRepr> for GridSpec {
    type Error = GridworldError;

    fn try_from(r: GridTokensRepr) -> Result<Self, Self::Error> {
        GridSpec::parse(&r.tokens, r.width, r.height)
    }
}
