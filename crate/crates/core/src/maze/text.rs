use super::{Cell, Direction, MazeLevel};
use crate::error::{CoreError, Result};

/// Text form:
///
/// ```text
/// 4 2 3
/// A.#.
/// ##.G
/// dir: E
/// ```
pub fn encode_level(level: &MazeLevel) -> String {
    let mut out = format!("{} {} {}\n", level.width(), level.height(), level.budget());
    for y in 0..level.height() {
        for x in 0..level.width() {
            let c = Cell::new(x, y);
            out.push(if c == level.agent() {
                'A'
            } else if c == level.goal() {
                'G'
            } else if level.is_wall(c) {
                '#'
            } else {
                '.'
            });
        }
        out.push('\n');
    }
    out.push_str(&format!("dir: {}\n", level.facing().letter()));
    out
}

fn parse_usize(token: &str, line: usize, column: usize, what: &str) -> Result<usize> {
    token.parse().map_err(|_| CoreError::parse(line, column, format!("expected {what}, found {token:?}")))
}

pub fn decode_level(text: &str) -> Result<MazeLevel> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim_end_matches('\r')));
    let (hl, header) = lines.next().ok_or_else(|| CoreError::parse(1, 1, "missing header"))?;
    let tokens: Vec<&str> = header.split_whitespace().collect();
    if tokens.len() != 3 {
        return Err(CoreError::parse(hl, 1, "header must be \"width height budget\""));
    }
    let width = parse_usize(tokens[0], hl, 1, "width")?;
    let height = parse_usize(tokens[1], hl, 1, "height")?;
    let budget = parse_usize(tokens[2], hl, 1, "budget")?;
    if width == 0 || height == 0 {
        return Err(CoreError::parse(hl, 1, "grid must be nonempty"));
    }

    let mut walls = Vec::new();
    let mut agent = None;
    let mut goal = None;
    for y in 0..height {
        let (ln, row) = lines.next().ok_or_else(|| CoreError::parse(hl + y + 1, 1, "missing grid row"))?;
        let chars: Vec<char> = row.chars().collect();
        if chars.len() != width {
            return Err(CoreError::parse(ln, chars.len().min(width) + 1, format!("row has {} cells, expected {width}", chars.len())));
        }
        for (x, ch) in chars.into_iter().enumerate() {
            let cell = Cell::new(x, y);
            match ch {
                '.' => {}
                '#' => walls.push(cell),
                'A' if agent.is_none() => agent = Some(cell),
                'G' if goal.is_none() => goal = Some(cell),
                'A' => return Err(CoreError::parse(ln, x + 1, "second agent marker")),
                'G' => return Err(CoreError::parse(ln, x + 1, "second goal marker")),
                other => return Err(CoreError::parse(ln, x + 1, format!("unexpected character {other:?}"))),
            }
        }
    }
    let last = hl + height;
    let agent = agent.ok_or_else(|| CoreError::parse(last, 1, "no agent marker"))?;
    let goal = goal.ok_or_else(|| CoreError::parse(last, 1, "no goal marker"))?;

    let (dl, dir_line) = lines.next().ok_or_else(|| CoreError::parse(last + 1, 1, "missing \"dir:\" line"))?;
    let letter = dir_line
        .strip_prefix("dir:")
        .map(str::trim)
        .ok_or_else(|| CoreError::parse(dl, 1, "expected \"dir: N|S|E|W\""))?;
    let mut chars = letter.chars();
    let facing = match (chars.next().and_then(Direction::from_letter), chars.next()) {
        (Some(d), None) => d,
        _ => return Err(CoreError::parse(dl, 6, format!("bad direction {letter:?}"))),
    };
    if let Some((ln, extra)) = lines.find(|(_, l)| !l.trim().is_empty()) {
        return Err(CoreError::parse(ln, 1, format!("trailing content {extra:?}")));
    }
    MazeLevel::new(width, height, walls, agent, facing, goal, budget)
        .map_err(|e| CoreError::parse(hl, 1, e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maze::{generate_random_design, LevelTemplate};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const SAMPLE: &str = "4 2 3\nA.#.\n##.G\ndir: E\n";

    #[test]
    fn sample_decodes() {
        let l = decode_level(SAMPLE).unwrap();
        assert_eq!(l.wall_count(), 3);
        assert_eq!(l.agent(), Cell::new(0, 0));
        assert_eq!(l.goal(), Cell::new(3, 1));
        assert_eq!(l.facing(), Direction::East);
        assert_eq!(encode_level(&l), SAMPLE);
    }

    #[test]
    fn random_levels_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..200 {
            let l = generate_random_design(&mut rng, LevelTemplate::default()).unwrap();
            assert_eq!(decode_level(&encode_level(&l)).unwrap(), l);
        }
    }

    #[test]
    fn two_goals_is_a_parse_error() {
        let err = decode_level("3 1 0\nAGG\ndir: N\n").unwrap_err();
        assert_eq!(err, CoreError::parse(2, 3, "second goal marker"));
    }

    #[test]
    fn errors_carry_positions() {
        assert!(matches!(decode_level("3 1\n"), Err(CoreError::Parse { line: 1, .. })));
        assert!(matches!(decode_level("3 1 0\nA.x\ndir: N\n"), Err(CoreError::Parse { line: 2, column: 3, .. })));
        assert!(matches!(decode_level("3 1 0\nA.G\ndir: Q\n"), Err(CoreError::Parse { line: 3, .. })));
        assert!(matches!(decode_level("3 1 0\nA.\n"), Err(CoreError::Parse { line: 2, .. })));
        assert!(matches!(decode_level("3 1 0\nA..\ndir: N\n"), Err(CoreError::Parse { .. })));
        // walls over budget
        assert!(matches!(decode_level("3 1 0\nA#G\ndir: N\n"), Err(CoreError::Parse { .. })));
    }
}
