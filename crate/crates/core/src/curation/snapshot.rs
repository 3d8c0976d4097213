use super::{BufferEntry, LevelBuffer};
use crate::error::{CoreError, Result};
use crate::maze::{decode_level, encode_level};

/// `buffer <K> <c> <n>` then, per entry, `entry <score> <timestamp> <max_return>`
/// followed by the encoded level.
pub fn encode_buffer(buffer: &LevelBuffer, c: usize) -> String {
    let mut out = format!("buffer {} {} {}\n", buffer.capacity(), c, buffer.len());
    for e in buffer.entries() {
        out.push_str(&format!("entry {} {} {}\n", e.score, e.timestamp, e.max_return));
        out.push_str(&encode_level(&e.level));
    }
    out
}

fn field<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T> {
    let t = tok.ok_or_else(|| CoreError::parse(line, 1, format!("missing {what}")))?;
    t.parse().map_err(|_| CoreError::parse(line, 1, format!("bad {what} {t:?}")))
}

/// Returns the buffer and the episode counter stored with it.
pub fn decode_buffer(text: &str) -> Result<(LevelBuffer, usize)> {
    let lines: Vec<&str> = text.lines().collect();
    let header = lines.first().ok_or_else(|| CoreError::parse(1, 1, "empty snapshot"))?;
    let mut tok = header.split_whitespace();
    if tok.next() != Some("buffer") {
        return Err(CoreError::parse(1, 1, "expected \"buffer K c n\""));
    }
    let capacity: usize = field(tok.next(), 1, "capacity")?;
    let c: usize = field(tok.next(), 1, "episode count")?;
    let n: usize = field(tok.next(), 1, "entry count")?;

    let mut entries = Vec::with_capacity(n);
    let mut i = 1;
    for _ in 0..n {
        let line_no = i + 1;
        let line = lines.get(i).ok_or_else(|| CoreError::parse(line_no, 1, "missing entry"))?;
        let mut tok = line.split_whitespace();
        if tok.next() != Some("entry") {
            return Err(CoreError::parse(line_no, 1, "expected \"entry score timestamp max_return\""));
        }
        let score: f64 = field(tok.next(), line_no, "score")?;
        let timestamp: usize = field(tok.next(), line_no, "timestamp")?;
        let max_return: f64 = field(tok.next(), line_no, "max return")?;
        if timestamp > c {
            return Err(CoreError::parse(line_no, 1, format!("timestamp {timestamp} after episode {c}")));
        }
        let level_header = lines.get(i + 1).ok_or_else(|| CoreError::parse(line_no + 1, 1, "missing level"))?;
        let height: usize = field(level_header.split_whitespace().nth(1), line_no + 1, "level height")?;
        let end = i + 1 + height + 2;
        if end > lines.len() {
            return Err(CoreError::parse(lines.len(), 1, "truncated level"));
        }
        let level = decode_level(&lines[i + 1..end].join("\n")).map_err(|e| match e {
            CoreError::Parse { line, column, message } => CoreError::Parse { line: line + i + 1, column, message },
            other => other,
        })?;
        entries.push(BufferEntry { level, score, timestamp, max_return });
        i = end;
    }
    Ok((LevelBuffer::from_entries(capacity, entries)?, c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curation::ReplayConfig;
    use crate::maze::{generate_random_design, LevelTemplate};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let mut b = LevelBuffer::new(5).unwrap();
        for c in 0..4 {
            let l = generate_random_design(&mut rng, LevelTemplate::default()).unwrap();
            b.update(l.clone(), 0.1 * c as f64 - 0.05, c, &ReplayConfig::default());
            if c % 2 == 0 {
                b.record_return(&l, 0.37);
            }
        }
        let text = encode_buffer(&b, 4);
        let (back, c) = decode_buffer(&text).unwrap();
        assert_eq!(c, 4);
        assert_eq!(back, b);
        assert_eq!(encode_buffer(&back, 4), text);
    }

    #[test]
    fn empty_round_trip_and_errors() {
        let b = LevelBuffer::new(3).unwrap();
        assert_eq!(decode_buffer(&encode_buffer(&b, 0)).unwrap(), (b, 0));
        assert!(decode_buffer("buffer 3 0 1\n").is_err());
        assert!(decode_buffer("buf 3 0 0\n").is_err());
        assert!(decode_buffer("buffer 3 0 1\nentry 0.5 1 0\n3 1 0\nA.G\ndir: N\n").is_err());
    }
}
