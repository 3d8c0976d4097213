use super::{ActorCritic, AgentConfig, GaeConfig, PolicyTable, StateEncoding, ValueTable};
use crate::error::{CoreError, Result};

const MAGIC: &str = "actor-critic v1";

/// Plain-text checkpoint: a small header, then one row per table entry.
pub fn encode_checkpoint(agent: &ActorCritic) -> String {
    let c = &agent.config;
    let mut out = format!(
        "{MAGIC}\nencoding {}\npolicy_lr {}\nvalue_lr {}\ntime_buckets {}\ngamma {}\nlambda {}\npolicy {}\n",
        c.encoding.name(),
        c.policy_lr,
        c.value_lr,
        c.critic_time_buckets,
        c.gae.gamma,
        c.gae.lambda,
        agent.policy.len()
    );
    for (s, row) in agent.policy.rows() {
        out.push_str(&format!("{s} {} {} {}\n", row[0], row[1], row[2]));
    }
    out.push_str(&format!("values {}\n", agent.values.len()));
    for (s, v) in agent.values.entries() {
        out.push_str(&format!("{s} {v}\n"));
    }
    out
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    fn next(&mut self) -> Result<(usize, &'a str)> {
        loop {
            match self.inner.next() {
                Some((i, l)) if !l.trim().is_empty() => return Ok((i + 1, l.trim())),
                Some(_) => continue,
                None => return Err(CoreError::parse(0, 1, "unexpected end of checkpoint")),
            }
        }
    }

    fn field(&mut self, key: &str) -> Result<(usize, &'a str)> {
        let (n, l) = self.next()?;
        match l.split_once(' ') {
            Some((k, v)) if k == key => Ok((n, v.trim())),
            _ => Err(CoreError::parse(n, 1, format!("expected \"{key} <value>\""))),
        }
    }
}

fn num<T: std::str::FromStr>(s: &str, line: usize) -> Result<T> {
    s.parse().map_err(|_| CoreError::parse(line, 1, format!("bad number {s:?}")))
}

pub fn decode_checkpoint(text: &str) -> Result<ActorCritic> {
    let mut lines = Lines { inner: text.lines().enumerate() };
    let (n, magic) = lines.next()?;
    if magic != MAGIC {
        return Err(CoreError::parse(n, 1, format!("expected header {MAGIC:?}")));
    }
    let (n, enc) = lines.field("encoding")?;
    let encoding = StateEncoding::from_name(enc).ok_or_else(|| CoreError::parse(n, 10, format!("unknown encoding {enc:?}")))?;
    let (n, v) = lines.field("policy_lr")?;
    let policy_lr = num(v, n)?;
    let (n, v) = lines.field("value_lr")?;
    let value_lr = num(v, n)?;
    let (n, v) = lines.field("time_buckets")?;
    let critic_time_buckets = num(v, n)?;
    let (n, v) = lines.field("gamma")?;
    let gamma = num(v, n)?;
    let (n, v) = lines.field("lambda")?;
    let lambda = num(v, n)?;
    let config = AgentConfig { encoding, policy_lr, value_lr, critic_time_buckets, gae: GaeConfig { gamma, lambda } };

    let mut policy = PolicyTable::new(policy_lr);
    let (n, v) = lines.field("policy")?;
    for _ in 0..num::<usize>(v, n)? {
        let (n, l) = lines.next()?;
        let t: Vec<&str> = l.split_whitespace().collect();
        if t.len() != 4 {
            return Err(CoreError::parse(n, 1, "policy row needs a state and three logits"));
        }
        let row = [num(t[1], n)?, num(t[2], n)?, num(t[3], n)?];
        if row.iter().any(|x: &f64| !x.is_finite()) {
            return Err(CoreError::parse(n, 1, "non-finite logit"));
        }
        policy.set_logits(num(t[0], n)?, row);
    }
    let mut values = ValueTable::with_time_buckets(value_lr, critic_time_buckets);
    let (n, v) = lines.field("values")?;
    for _ in 0..num::<usize>(v, n)? {
        let (n, l) = lines.next()?;
        let t: Vec<&str> = l.split_whitespace().collect();
        if t.len() != 2 {
            return Err(CoreError::parse(n, 1, "value row needs a state and a value"));
        }
        values.set(num(t[0], n)?, num(t[1], n)?);
    }
    Ok(ActorCritic { policy, values, config })
}
