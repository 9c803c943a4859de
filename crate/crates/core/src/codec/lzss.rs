//! Greedy LZSS tokenizer: 32 KiB sliding window, matches of 4..=258 bytes,
//! hash-chain candidate search with a fixed probe budget so parsing stays
//! deterministic and linear.

pub const WINDOW_SIZE: usize = 32 * 1024;
pub const MIN_MATCH: usize = 4;
pub const MAX_MATCH: usize = 258;

/// Candidate positions probed per chain before giving up.
const MAX_CHAIN_PROBES: usize = 128;

const HASH_BITS: u32 = 15;
const NO_POS: u32 = u32::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Token {
    Literal(u8),
    /// `dist` counts back from the current position, 1..=WINDOW_SIZE.
    Match {
        len: u16,
        dist: u16,
    },
}

fn hash4(data: &[u8], pos: usize) -> usize {
    let word = u32::from_le_bytes([data[pos], data[pos + 1], data[pos + 2], data[pos + 3]]);
    (word.wrapping_mul(0x9E37_79B1) >> (32 - HASH_BITS)) as usize
}

/// Greedy parse of `data` into literals and back-references.
pub fn tokenize(data: &[u8]) -> Vec<Token> {
    let mut tokens = Vec::new();
    if data.len() < MIN_MATCH {
        tokens.extend(data.iter().map(|&b| Token::Literal(b)));
        return tokens;
    }

    let mut head = vec![NO_POS; 1 << HASH_BITS];
    let mut prev = vec![NO_POS; WINDOW_SIZE];
    let hashable_end = data.len() - MIN_MATCH + 1;

    let insert = |head: &mut [u32], prev: &mut [u32], pos: usize| {
        if pos < hashable_end {
            let h = hash4(data, pos);
            prev[pos % WINDOW_SIZE] = head[h];
            head[h] = pos as u32;
        }
    };

    let mut pos = 0usize;
    while pos < data.len() {
        let mut best_len = 0usize;
        let mut best_dist = 0usize;
        if pos < hashable_end {
            let max_len = MAX_MATCH.min(data.len() - pos);
            let window_floor = pos.saturating_sub(WINDOW_SIZE);
            let mut candidate = head[hash4(data, pos)];
            let mut probes = 0;
            while candidate != NO_POS && probes < MAX_CHAIN_PROBES {
                let cand = candidate as usize;
                if cand >= pos || cand < window_floor {
                    break;
                }
                let mut len = 0usize;
                while len < max_len && data[cand + len] == data[pos + len] {
                    len += 1;
                }
                if len > best_len {
                    best_len = len;
                    best_dist = pos - cand;
                    if len == max_len {
                        break;
                    }
                }
                candidate = prev[cand % WINDOW_SIZE];
                probes += 1;
            }
        }

        if best_len >= MIN_MATCH {
            tokens.push(Token::Match {
                len: best_len as u16,
                dist: best_dist as u16,
            });
            for covered in pos..pos + best_len {
                insert(&mut head, &mut prev, covered);
            }
            pos += best_len;
        } else {
            tokens.push(Token::Literal(data[pos]));
            insert(&mut head, &mut prev, pos);
            pos += 1;
        }
    }
    tokens
}

/// Expand tokens back into bytes; the inverse of [`tokenize`] for any valid
/// token stream. Returns `None` if a reference reaches before the output.
#[cfg(test)]
pub fn expand(tokens: &[Token], size_hint: usize) -> Option<Vec<u8>> {
    let mut out = Vec::with_capacity(size_hint);
    for token in tokens {
        match *token {
            Token::Literal(b) => out.push(b),
            Token::Match { len, dist } => {
                let dist = dist as usize;
                if dist == 0 || dist > out.len() {
                    return None;
                }
                let start = out.len() - dist;
                for i in 0..len as usize {
                    let b = out[start + i];
                    out.push(b);
                }
            }
        }
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn roundtrip(data: &[u8]) {
        let tokens = tokenize(data);
        let back = expand(&tokens, data.len()).unwrap();
        assert_eq!(back, data);
    }

    #[test]
    fn short_inputs_are_all_literals() {
        for len in 0..MIN_MATCH {
            let data: Vec<u8> = (0..len as u8).collect();
            let tokens = tokenize(&data);
            assert_eq!(tokens.len(), len);
            assert!(tokens.iter().all(|t| matches!(t, Token::Literal(_))));
        }
    }

    #[test]
    fn runs_collapse_to_overlapped_matches() {
        let data = vec![7u8; 1000];
        let tokens = tokenize(&data);
        // One literal then distance-1 matches covering the run.
        assert_eq!(tokens[0], Token::Literal(7));
        assert!(matches!(tokens[1], Token::Match { dist: 1, .. }));
        assert!(tokens.len() <= 2 + 1000 / MAX_MATCH);
        roundtrip(&data);
    }

    #[test]
    fn repeated_phrases_are_found() {
        let mut data = Vec::new();
        for _ in 0..50 {
            data.extend_from_slice(b"the quick brown fox jumps over the lazy dog. ");
        }
        let tokens = tokenize(&data);
        let matches = tokens
            .iter()
            .filter(|t| matches!(t, Token::Match { .. }))
            .count();
        assert!(matches > 0);
        assert!(tokens.len() < data.len() / 4);
        roundtrip(&data);
    }

    #[test]
    fn mixed_corpora_roundtrip() {
        roundtrip(&corpus::random_bytes(10_000, 1));
        roundtrip(&corpus::zipf_bytes(10_000, 2));
        roundtrip(&corpus::synthetic_text(50_000, 3));
        roundtrip(&[0, 1, 0, 1, 0, 1, 0, 1, 0, 1]);
    }

    #[test]
    fn matches_never_reach_past_window() {
        let mut data = corpus::synthetic_text(WINDOW_SIZE * 3, 4);
        data.extend_from_slice(&data.clone());
        let tokens = tokenize(&data);
        for t in &tokens {
            if let Token::Match { dist, len } = t {
                assert!((*dist as usize) <= WINDOW_SIZE);
                assert!((*len as usize) >= MIN_MATCH && (*len as usize) <= MAX_MATCH);
            }
        }
        roundtrip(&data);
    }

    #[test]
    fn expand_rejects_invalid_distance() {
        let tokens = [Token::Literal(1), Token::Match { len: 4, dist: 5 }];
        assert_eq!(expand(&tokens, 8), None);
    }
}
