use std::collections::HashSet;
use std::hash::Hash;

use crate::maze::Action;

/// Number of codes LZW emits for `seq` with the dictionary seeded by
/// `alphabet`. Symbols outside the alphabet are added on first sight.
pub fn lzw_complexity<T: Copy + Eq + Hash>(seq: &[T], alphabet: &[T]) -> usize {
    let mut dict: HashSet<Vec<T>> = alphabet.iter().map(|&s| vec![s]).collect();
    let mut codes = 0;
    let mut w: Vec<T> = Vec::new();
    for &s in seq {
        dict.insert(vec![s]);
        let mut ws = w.clone();
        ws.push(s);
        if dict.contains(&ws) {
            w = ws;
        } else {
            codes += 1;
            dict.insert(ws);
            w = vec![s];
        }
    }
    if !w.is_empty() {
        codes += 1;
    }
    codes
}

pub fn action_lzw(actions: &[Action]) -> usize {
    lzw_complexity(actions, &Action::ALL)
}
