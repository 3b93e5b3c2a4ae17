//! Seeded task, plan, and grid samplers used for corpus generation and the
//! benchmark suite.

use rand::Rng;

use super::vocab;
use super::{
    Category, Color, GridSpec, GridworldError, ObjectSpec, Relation, Shape, TaskSpec, TokenId,
    DEFAULT_HEIGHT, DEFAULT_WIDTH,
};

fn pick<T: Copy, R: Rng>(items: &[T], rng: &mut R) -> T {
    items[rng.random_range(0..items.len())]
}

fn pick_shape<R: Rng>(rng: &mut R) -> Shape {
    pick(&Shape::ALL, rng)
}

fn pick_color<R: Rng>(rng: &mut R) -> Color {
    pick(&Color::ALL, rng)
}

/// Second shape distinct from `first`, chosen uniformly.
fn pick_other_shape<R: Rng>(first: Shape, rng: &mut R) -> Shape {
    let i = Shape::ALL.iter().position(|s| *s == first).unwrap();
    Shape::ALL[(i + 1 + rng.random_range(0..Shape::ALL.len() - 1)) % Shape::ALL.len()]
}

/// Samples a task satisfying its category's invariants. Deterministic for a
/// fixed rng stream.
pub fn sample_task<R: Rng>(category: Category, rng: &mut R) -> TaskSpec {
    let (objects, relation) = match category {
        Category::SingleObj => (
            vec![ObjectSpec {
                shape: pick_shape(rng),
                color: None,
                count: 1,
            }],
            None,
        ),
        Category::TwoObj => {
            let a = pick_shape(rng);
            let b = pick_other_shape(a, rng);
            (
                vec![
                    ObjectSpec {
                        shape: a,
                        color: None,
                        count: 1,
                    },
                    ObjectSpec {
                        shape: b,
                        color: None,
                        count: 1,
                    },
                ],
                None,
            )
        }
        Category::Counting => (
            vec![ObjectSpec {
                shape: pick_shape(rng),
                color: None,
                count: rng.random_range(1..=4),
            }],
            None,
        ),
        Category::Colors => (
            vec![ObjectSpec {
                shape: pick_shape(rng),
                color: Some(pick_color(rng)),
                count: 1,
            }],
            None,
        ),
        Category::Position => {
            let a = pick_shape(rng);
            let b = pick_other_shape(a, rng);
            (
                vec![
                    ObjectSpec {
                        shape: a,
                        color: Some(pick_color(rng)),
                        count: 1,
                    },
                    ObjectSpec {
                        shape: b,
                        color: Some(pick_color(rng)),
                        count: 1,
                    },
                ],
                Some(pick(&Relation::ALL, rng)),
            )
        }
        Category::AttrBinding => {
            // Two distinct (shape, color) pairs out of the 12 combinations.
            let n = Shape::ALL.len() * Color::ALL.len();
            let first = rng.random_range(0..n);
            let second = (first + 1 + rng.random_range(0..n - 1)) % n;
            let as_pair = |idx: usize| ObjectSpec {
                shape: Shape::ALL[idx / Color::ALL.len()],
                color: Some(Color::ALL[idx % Color::ALL.len()]),
                count: 1,
            };
            (vec![as_pair(first), as_pair(second)], None)
        }
    };
    TaskSpec::new(category, objects, relation)
}

/// Ground-truth plan for a task in the fixed template grammar, ending with
/// the text `<eos>` token. The rng is reserved for future template variation
/// and is currently unused.
pub fn oracle_plan<R: Rng>(task: &TaskSpec, _rng: &mut R) -> Vec<TokenId> {
    vocab::plan_tokens(task.category, &task.objects, task.relation)
}

/// Samples a grid for the task on the default 4x4 board. Returns the grid and
/// whether it was intentionally corrupted (probability `p_c`).
pub fn sample_grid<R: Rng>(
    task: &TaskSpec,
    p_c: f64,
    rng: &mut R,
) -> Result<(GridSpec, bool), GridworldError> {
    sample_grid_sized(task, DEFAULT_WIDTH, DEFAULT_HEIGHT, p_c, rng)
}

/// As [`sample_grid`] with explicit dimensions. With probability `1 - p_c`
/// the returned grid scores exactly 1.0 under the evaluator; otherwise one
/// satisfying property is perturbed (wrong color, wrong count, or flipped
/// relation) and the score is strictly below 1.0.
pub fn sample_grid_sized<R: Rng>(
    task: &TaskSpec,
    width: usize,
    height: usize,
    p_c: f64,
    rng: &mut R,
) -> Result<(GridSpec, bool), GridworldError> {
    let total: usize = task.objects.iter().map(|o| o.count).sum();
    if total > width * height {
        return Err(GridworldError::TaskUnsatisfiable {
            width,
            height,
            reason: format!("{total} required cells exceed {} available", width * height),
        });
    }
    if let Some(rel) = task.relation {
        let axis_len = match rel {
            Relation::LeftOf | Relation::RightOf => width,
            Relation::Above | Relation::Below => height,
        };
        if axis_len < 2 {
            return Err(GridworldError::TaskUnsatisfiable {
                width,
                height,
                reason: format!("relation {} needs two distinct coordinates", rel.word()),
            });
        }
    }

    let mut grid = GridSpec::empty(width, height);

    // Shuffle cell order once; required objects take cells from the front.
    let mut order: Vec<usize> = (0..width * height).collect();
    for i in (1..order.len()).rev() {
        order.swap(i, rng.random_range(0..=i));
    }

    let mut cursor = 0;
    let mut placed: Vec<Vec<usize>> = Vec::with_capacity(task.objects.len());
    for obj in &task.objects {
        let mut cells = Vec::with_capacity(obj.count);
        for _ in 0..obj.count {
            let idx = order[cursor];
            cursor += 1;
            let color = obj.color.unwrap_or_else(|| pick_color(rng));
            grid.cells[idx] = Some((obj.shape, color));
            cells.push(idx);
        }
        placed.push(cells);
    }

    if let Some(rel) = task.relation {
        enforce_relation(&mut grid, rel, &mut placed, rng);
    }

    place_distractors(task, &mut grid, &order[cursor..], rng);

    let corrupted = p_c > 0.0 && rng.random::<f64>() < p_c;
    if corrupted {
        corrupt(task, &mut grid, &placed, rng);
        debug_assert!(super::evaluate(task, &grid).value < 1.0);
    } else {
        debug_assert_eq!(super::evaluate(task, &grid).value, 1.0);
    }
    Ok((grid, corrupted))
}

fn cell_coords(grid: &GridSpec, idx: usize) -> (usize, usize) {
    (idx % grid.width, idx / grid.width)
}

/// Repositions the two relation cells until the strict inequality holds.
/// Position tasks place exactly one cell per object; at this point only
/// those two cells are occupied.
fn enforce_relation<R: Rng>(
    grid: &mut GridSpec,
    rel: Relation,
    placed: &mut [Vec<usize>],
    rng: &mut R,
) {
    let rel_ok = |g: &GridSpec, a: usize, b: usize| {
        let (ax, ay) = cell_coords(g, a);
        let (bx, by) = cell_coords(g, b);
        rel.holds((ax as f64, ay as f64), (bx as f64, by as f64))
    };
    loop {
        let (a, b) = (placed[0][0], placed[1][0]);
        if rel_ok(grid, a, b) {
            return;
        }
        if rel_ok(grid, b, a) {
            grid.cells.swap(a, b);
            placed[0][0] = b;
            placed[1][0] = a;
            return;
        }
        // Tied on the relevant axis: move the second cell to a random empty
        // cell and retry. Off-axis empty cells always exist on a grid whose
        // relevant edge is >= 2 (checked by the caller).
        let idx = rng.random_range(0..grid.cells.len());
        if grid.cells[idx].is_none() {
            grid.cells[idx] = grid.cells[b].take();
            placed[1][0] = idx;
        }
    }
}

/// Adds up to two filler objects whose (shape, color) cannot match any
/// requirement, so they never affect the rubric.
fn place_distractors<R: Rng>(task: &TaskSpec, grid: &mut GridSpec, free: &[usize], rng: &mut R) {
    let mut allowed = Vec::new();
    for s in Shape::ALL {
        for c in Color::ALL {
            if !task.objects.iter().any(|o| o.matches(s, c)) {
                allowed.push((s, c));
            }
        }
    }
    if allowed.is_empty() {
        return;
    }
    let n = rng.random_range(0..=2usize);
    let mut done = 0;
    for &idx in free {
        if done == n {
            break;
        }
        // Relation fixing may have moved a cell into the free list.
        if grid.cells[idx].is_some() {
            continue;
        }
        grid.cells[idx] = Some(pick(&allowed, rng));
        done += 1;
    }
}

enum Corruption {
    WrongColor,
    WrongCount,
    FlipRelation,
}

/// Perturbs one satisfying property so the oracle score drops below 1.0.
fn corrupt<R: Rng>(task: &TaskSpec, grid: &mut GridSpec, placed: &[Vec<usize>], rng: &mut R) {
    let mut options = vec![Corruption::WrongCount];
    if task.objects.iter().any(|o| o.color.is_some()) {
        options.push(Corruption::WrongColor);
    }
    if task.relation.is_some() {
        options.push(Corruption::FlipRelation);
    }
    match options[rng.random_range(0..options.len())] {
        Corruption::WrongColor => {
            let candidates: Vec<usize> = (0..task.objects.len())
                .filter(|&i| task.objects[i].color.is_some())
                .collect();
            let obj_idx = pick(&candidates, rng);
            let cell_idx = pick(&placed[obj_idx], rng);
            let (shape, color) = grid.cells[cell_idx].unwrap();
            let others: Vec<Color> = Color::ALL.into_iter().filter(|c| *c != color).collect();
            grid.cells[cell_idx] = Some((shape, pick(&others, rng)));
        }
        Corruption::WrongCount => {
            let obj_idx = rng.random_range(0..task.objects.len());
            let obj = &task.objects[obj_idx];
            let empty: Vec<usize> = (0..grid.cells.len())
                .filter(|&i| grid.cells[i].is_none())
                .collect();
            let add = !empty.is_empty() && rng.random::<bool>();
            if add {
                let idx = pick(&empty, rng);
                let color = obj.color.unwrap_or_else(|| pick_color(rng));
                grid.cells[idx] = Some((obj.shape, color));
            } else {
                let idx = pick(&placed[obj_idx], rng);
                grid.cells[idx] = None;
            }
        }
        Corruption::FlipRelation => {
            // Swapping the two referenced cells flips a strict relation.
            grid.cells.swap(placed[0][0], placed[1][0]);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gridworld::evaluate;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    fn rng(seed: u64) -> ChaCha12Rng {
        ChaCha12Rng::seed_from_u64(seed)
    }

    #[test]
    fn single_obj_has_one_entry_with_count_one() {
        let task = sample_task(Category::SingleObj, &mut rng(7));
        assert_eq!(task.objects.len(), 1);
        assert_eq!(task.objects[0].count, 1);
        assert!(task.objects[0].color.is_none());
    }

    #[test]
    fn counting_count_in_range() {
        let task = sample_task(Category::Counting, &mut rng(3));
        assert_eq!(task.objects.len(), 1);
        assert!((1..=4).contains(&task.objects[0].count));
    }

    #[test]
    fn position_references_two_objects_with_relation() {
        let task = sample_task(Category::Position, &mut rng(11));
        assert_eq!(task.objects.len(), 2);
        assert!(task.relation.is_some());
        assert_ne!(task.objects[0].shape, task.objects[1].shape);
    }

    #[test]
    fn attr_binding_pairs_distinct() {
        for seed in 0..50 {
            let task = sample_task(Category::AttrBinding, &mut rng(seed));
            assert_eq!(task.objects.len(), 2);
            let a = (task.objects[0].shape, task.objects[0].color.unwrap());
            let b = (task.objects[1].shape, task.objects[1].color.unwrap());
            assert_ne!(a, b);
        }
    }

    #[test]
    fn task_sampling_deterministic() {
        for cat in Category::ALL {
            let a = sample_task(cat, &mut rng(42));
            let b = sample_task(cat, &mut rng(42));
            assert_eq!(a, b);
        }
    }

    #[test]
    fn instruction_round_trips_through_vocab() {
        for cat in Category::ALL {
            for seed in 0..20 {
                let task = sample_task(cat, &mut rng(seed));
                let text = vocab::detokenize(&task.instruction).unwrap();
                assert_eq!(vocab::tokenize(&text).unwrap(), task.instruction);
            }
        }
    }

    #[test]
    fn plan_is_templated_and_terminated() {
        let mut r = rng(5);
        for cat in Category::ALL {
            for _ in 0..20 {
                let task = sample_task(cat, &mut r);
                let plan = oracle_plan(&task, &mut r);
                assert!(plan.len() <= 24);
                assert_eq!(*plan.last().unwrap(), vocab::EOS_TEXT);
                assert_eq!(plan[0], vocab::text_token("place").unwrap());
                let relations = plan
                    .iter()
                    .filter(|&&t| {
                        Relation::ALL
                            .iter()
                            .any(|r| vocab::text_token(r.word()).unwrap() == t)
                    })
                    .count();
                assert_eq!(relations, usize::from(task.relation.is_some()));
            }
        }
    }

    #[test]
    fn counting_plan_contains_count_and_shape() {
        let task = TaskSpec::new(
            Category::Counting,
            vec![ObjectSpec {
                shape: Shape::Circle,
                color: None,
                count: 2,
            }],
            None,
        );
        let plan = oracle_plan(&task, &mut rng(0));
        assert!(plan.contains(&vocab::text_token("two").unwrap()));
        assert!(plan.contains(&vocab::text_token("circle").unwrap()));
    }

    #[test]
    fn clean_grids_score_one() {
        let mut r = rng(9);
        for cat in Category::ALL {
            for _ in 0..50 {
                let task = sample_task(cat, &mut r);
                let (grid, corrupted) = sample_grid(&task, 0.0, &mut r).unwrap();
                assert!(!corrupted);
                assert_eq!(evaluate(&task, &grid).value, 1.0);
            }
        }
    }

    #[test]
    fn corrupted_grids_score_below_one() {
        let mut r = rng(13);
        for cat in Category::ALL {
            for _ in 0..100 {
                let task = sample_task(cat, &mut r);
                let (grid, corrupted) = sample_grid(&task, 1.0, &mut r).unwrap();
                assert!(corrupted);
                assert!(evaluate(&task, &grid).value < 1.0);
            }
        }
    }

    #[test]
    fn unsatisfiable_on_tiny_grid() {
        let task = sample_task(Category::Position, &mut rng(1));
        // A 1-wide grid cannot express a horizontal relation; 1x1 cannot
        // even hold the two objects.
        let err = sample_grid_sized(&task, 1, 1, 0.0, &mut rng(2)).unwrap_err();
        assert!(matches!(err, GridworldError::TaskUnsatisfiable { .. }));
    }
}
