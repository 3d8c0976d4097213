use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};
use crate::maze::{Cell, Direction, MazeLevel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SuiteKind {
    /// Grid of rooms joined by one-cell doorways.
    Rooms,
    /// One winding path from the rim to the centre.
    Spiral,
    /// Recursive-backtracker maze: exactly one path between open cells.
    PerfectMaze,
    /// Hallway with parallel dead-end corridors; the goal ends one of them.
    Corridor,
}

impl SuiteKind {
    pub const ALL: [SuiteKind; 4] = [SuiteKind::Rooms, SuiteKind::Spiral, SuiteKind::PerfectMaze, SuiteKind::Corridor];

    pub fn name(self) -> &'static str {
        match self {
            SuiteKind::Rooms => "rooms",
            SuiteKind::Spiral => "spiral",
            SuiteKind::PerfectMaze => "perfect-maze",
            SuiteKind::Corridor => "corridor",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == s)
    }

    pub fn min_size(self) -> usize {
        match self {
            SuiteKind::Rooms => 5,
            SuiteKind::Spiral => 3,
            SuiteKind::PerfectMaze => 3,
            SuiteKind::Corridor => 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvalSuite {
    pub name: String,
    pub kind: SuiteKind,
    pub levels: Vec<MazeLevel>,
    pub attempts_per_level: usize,
}

/// Open/closed grid under construction.
struct Grid {
    n: usize,
    wall: Vec<bool>,
}

impl Grid {
    fn filled(n: usize, wall: bool) -> Self {
        Self { n, wall: vec![wall; n * n] }
    }

    fn set(&mut self, x: usize, y: usize, wall: bool) {
        self.wall[y * self.n + x] = wall;
    }

    fn is_wall(&self, x: usize, y: usize) -> bool {
        self.wall[y * self.n + x]
    }

    fn open_cells(&self) -> Vec<Cell> {
        (0..self.n * self.n).filter(|&i| !self.wall[i]).map(|i| Cell::new(i % self.n, i / self.n)).collect()
    }

    fn into_level(self, agent: Cell, facing: Direction, goal: Cell) -> MazeLevel {
        let n = self.n;
        let walls: Vec<Cell> = (0..n * n).filter(|&i| self.wall[i]).map(|i| Cell::new(i % n, i / n)).collect();
        let budget = walls.len();
        MazeLevel::new(n, n, walls, agent, facing, goal, budget).expect("suite generators produce valid levels")
    }
}

fn random_facing<R: Rng>(rng: &mut R) -> Direction {
    Direction::from_index(rng.gen_range(0..4))
}

/// Wall lines splitting `0..n` into `k` spans.
fn partition(n: usize, k: usize) -> Vec<usize> {
    (1..k).map(|i| i * (n + 1) / k - 1).collect()
}

fn rooms<R: Rng>(n: usize, rng: &mut R) -> MazeLevel {
    let k = ((n + 1) / 4).max(2);
    let lines = partition(n, k);
    let mut g = Grid::filled(n, false);
    for &l in &lines {
        for i in 0..n {
            g.set(l, i, true);
            g.set(i, l, true);
        }
    }
    // Span boundaries per axis: [start, end) of each room.
    let mut bounds = Vec::new();
    let mut start = 0;
    for &l in lines.iter().chain(std::iter::once(&n)) {
        bounds.push((start, l));
        start = l + 1;
    }
    // One doorway in every wall segment between neighbouring rooms.
    for (ri, &(y0, y1)) in bounds.iter().enumerate() {
        for (ci, &(x0, x1)) in bounds.iter().enumerate() {
            if ci + 1 < bounds.len() {
                let y = rng.gen_range(y0..y1);
                g.set(lines[ci], y, false);
            }
            if ri + 1 < bounds.len() {
                let x = rng.gen_range(x0..x1);
                g.set(x, lines[ri], false);
            }
        }
    }
    let rooms: Vec<(usize, usize)> = (0..k).flat_map(|r| (0..k).map(move |c| (r, c))).collect();
    let pick = rooms.choose_multiple(rng, 2).cloned().collect::<Vec<_>>();
    let cell_in = |(r, c): (usize, usize), rng: &mut R| {
        let (y0, y1) = bounds[r];
        let (x0, x1) = bounds[c];
        Cell::new(rng.gen_range(x0..x1), rng.gen_range(y0..y1))
    };
    let agent = cell_in(pick[0], rng);
    let goal = cell_in(pick[1], rng);
    let facing = random_facing(rng);
    g.into_level(agent, facing, goal)
}

/// Carve a rectangular spiral: walk straight while the next cell touches
/// no carved cell besides the current one, turn right otherwise.
fn spiral_path(n: usize) -> Vec<(usize, usize)> {
    let mut carved = vec![false; n * n];
    let mut path = vec![(0usize, 0usize)];
    carved[0] = true;
    let mut dir = Direction::East;
    let is_carved = |x: i64, y: i64, carved: &[bool]| {
        x >= 0 && y >= 0 && (x as usize) < n && (y as usize) < n && carved[y as usize * n + x as usize]
    };
    let inside = |x: i64, y: i64| x >= 0 && y >= 0 && (x as usize) < n && (y as usize) < n;
    let mut turned = false;
    loop {
        let (x, y) = *path.last().expect("path starts nonempty");
        let (dx, dy) = dir.offset();
        let (cx, cy) = (x as i64 + dx, y as i64 + dy);
        let isolated = Direction::ALL.iter().all(|d| {
            let (ox, oy) = d.offset();
            let (nx, ny) = (cx + ox, cy + oy);
            (nx, ny) == (x as i64, y as i64) || !is_carved(nx, ny, &carved)
        });
        if inside(cx, cy) && !is_carved(cx, cy, &carved) && isolated {
            carved[cy as usize * n + cx as usize] = true;
            path.push((cx as usize, cy as usize));
            turned = false;
        } else if turned {
            break;
        } else {
            dir = dir.turn_right();
            turned = true;
        }
    }
    path
}

fn spiral<R: Rng>(n: usize, rng: &mut R) -> MazeLevel {
    let path = spiral_path(n);
    // Random symmetry of the square.
    let transpose = rng.gen_bool(0.5);
    let flip_x = rng.gen_bool(0.5);
    let flip_y = rng.gen_bool(0.5);
    let map = |(x, y): (usize, usize)| {
        let (mut x, mut y) = if transpose { (y, x) } else { (x, y) };
        if flip_x {
            x = n - 1 - x;
        }
        if flip_y {
            y = n - 1 - y;
        }
        Cell::new(x, y)
    };
    let mut g = Grid::filled(n, true);
    for &p in &path {
        let c = map(p);
        g.set(c.x, c.y, false);
    }
    let (mut agent, mut goal) = (map(path[0]), map(*path.last().expect("nonempty")));
    if rng.gen_bool(0.5) {
        std::mem::swap(&mut agent, &mut goal);
    }
    let facing = random_facing(rng);
    g.into_level(agent, facing, goal)
}

fn perfect_maze<R: Rng>(n: usize, rng: &mut R) -> MazeLevel {
    let m = n.div_ceil(2);
    let mut g = Grid::filled(n, true);
    let mut visited = vec![false; m * m];
    let mut stack = vec![(0usize, 0usize)];
    visited[0] = true;
    g.set(0, 0, false);
    while let Some(&(x, y)) = stack.last() {
        let mut next = Vec::new();
        for d in Direction::ALL {
            let (dx, dy) = d.offset();
            let (nx, ny) = (x as i64 + dx, y as i64 + dy);
            if nx >= 0 && ny >= 0 && (nx as usize) < m && (ny as usize) < m && !visited[ny as usize * m + nx as usize] {
                next.push((nx as usize, ny as usize));
            }
        }
        match next.choose(rng) {
            Some(&(nx, ny)) => {
                visited[ny * m + nx] = true;
                g.set(2 * nx, 2 * ny, false);
                g.set(x + nx, y + ny, false);
                stack.push((nx, ny));
            }
            None => {
                stack.pop();
            }
        }
    }
    let open = g.open_cells();
    let pick: Vec<Cell> = open.choose_multiple(rng, 2).cloned().collect();
    let facing = random_facing(rng);
    g.into_level(pick[0], facing, pick[1])
}

fn corridor<R: Rng>(n: usize, rng: &mut R) -> MazeLevel {
    let hall = n / 2;
    let mut g = Grid::filled(n, true);
    for x in 0..n {
        g.set(x, hall, false);
    }
    let shafts: Vec<usize> = (0..n).step_by(2).collect();
    for &x in &shafts {
        for y in 0..n {
            g.set(x, y, false);
        }
    }
    let x = *shafts.choose(rng).expect("at least one corridor");
    let goal = Cell::new(x, if rng.gen_bool(0.5) { 0 } else { n - 1 });
    let hall_cells: Vec<Cell> = (0..n).map(|x| Cell::new(x, hall)).filter(|&c| c != goal).collect();
    let agent = *hall_cells.choose(rng).expect("hallway has room");
    let facing = random_facing(rng);
    debug_assert!(!g.is_wall(agent.x, agent.y));
    g.into_level(agent, facing, goal)
}

/// `count` levels of one kind on a `size` x `size` grid, reproducible from `seed`.
pub fn build_test_suite(kind: SuiteKind, size: usize, seed: u64, count: usize, attempts_per_level: usize) -> Result<EvalSuite> {
    if size < kind.min_size() {
        return Err(CoreError::Config(format!("{} suite needs a grid of at least {}, got {size}", kind.name(), kind.min_size())));
    }
    if count == 0 || attempts_per_level == 0 {
        return Err(CoreError::Config("suite needs at least one level and one attempt".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(kind as u64 + 100);
    let levels = (0..count)
        .map(|_| match kind {
            SuiteKind::Rooms => rooms(size, &mut rng),
            SuiteKind::Spiral => spiral(size, &mut rng),
            SuiteKind::PerfectMaze => perfect_maze(size, &mut rng),
            SuiteKind::Corridor => corridor(size, &mut rng),
        })
        .collect();
    Ok(EvalSuite { name: kind.name().to_string(), kind, levels, attempts_per_level })
}
