//! Training-triple corpus: generation and JSONL serialization.

use std::io::{BufRead, Write};

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{sample_grid, sample_task, Category, GridSpec, GridworldError, TaskSpec, TokenId};

/// One training example: a task, a ground-truth plan, and a grid that is
/// perfect unless the corruption flag is set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainingTriple {
    pub task: TaskSpec,
    pub plan: Vec<TokenId>,
    pub grid: GridSpec,
    pub corrupted: bool,
}

/// Generates `size` triples with categories drawn uniformly and corruption
/// probability `p_c`. Deterministic for a fixed rng stream.
pub fn generate_corpus<R: Rng>(
    size: usize,
    p_c: f64,
    rng: &mut R,
) -> Result<Vec<TrainingTriple>, GridworldError> {
    let mut corpus = Vec::with_capacity(size);
    for _ in 0..size {
        let category = Category::ALL[rng.random_range(0..Category::ALL.len())];
        let task = sample_task(category, rng);
        let plan = super::oracle_plan(&task, rng);
        let (grid, corrupted) = sample_grid(&task, p_c, rng)?;
        corpus.push(TrainingTriple {
            task,
            plan,
            grid,
            corrupted,
        });
    }
    Ok(corpus)
}

/// One JSON object per line with explicit token-id arrays.
pub fn write_corpus<W: Write>(mut out: W, corpus: &[TrainingTriple]) -> std::io::Result<()> {
    for triple in corpus {
        serde_json::to_writer(&mut out, triple)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

pub fn read_corpus<R: BufRead>(input: R) -> std::io::Result<Vec<TrainingTriple>> {
    let mut corpus = Vec::new();
    for line in input.lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        corpus.push(serde_json::from_str(&line)?);
    }
    Ok(corpus)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gridworld::evaluate;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    #[test]
    fn corpus_round_trips_through_jsonl() {
        let mut rng = ChaCha12Rng::seed_from_u64(21);
        let corpus = generate_corpus(50, 0.3, &mut rng).unwrap();
        let mut buf = Vec::new();
        write_corpus(&mut buf, &corpus).unwrap();
        let back = read_corpus(buf.as_slice()).unwrap();
        assert_eq!(corpus, back);
    }

    #[test]
    fn corruption_flag_matches_oracle() {
        let mut rng = ChaCha12Rng::seed_from_u64(5);
        let corpus = generate_corpus(300, 0.4, &mut rng).unwrap();
        for t in &corpus {
            let score = evaluate(&t.task, &t.grid).value;
            if t.corrupted {
                assert!(score < 1.0);
            } else {
                assert_eq!(score, 1.0);
            }
        }
    }

    /// Corpus headroom: the perfect-score fraction tracks 1 - p_c.
    #[test]
    fn perfect_fraction_matches_corruption_rate() {
        let mut rng = ChaCha12Rng::seed_from_u64(123);
        let corpus = generate_corpus(10_000, 0.3, &mut rng).unwrap();
        let perfect = corpus
            .iter()
            .filter(|t| evaluate(&t.task, &t.grid).value == 1.0)
            .count();
        let fraction = perfect as f64 / corpus.len() as f64;
        assert!(
            (fraction - 0.70).abs() <= 0.02,
            "perfect fraction {fraction} not within 0.70 +/- 0.02"
        );
    }
}
