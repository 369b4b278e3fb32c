//! Motif catalogs: every distinct overlap pattern of `k` connected, distinct
//! hyperedges where each intersection region takes one of `s` states.
//!
//! A pattern lists one state per nonempty subset of the `k` hyperedges (the
//! Venn-diagram regions), so it has `2^k - 1` entries. Patterns related by a
//! relabeling of the hyperedges are the same motif; the catalog keeps the
//! lexicographically smallest member of each orbit and numbers the survivors
//! 1, 2, ... in lexicographic order.
//!
//! Region order for `k = 3` is `(i, j, k, ij, jk, ki, ijk)`, each meaning the
//! nodes in exactly those hyperedges. For other `k` the singletons come first,
//! then pairs, triples, ... with each size ordered by member indices.

use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// States of the `2^k - 1` regions of one pattern, in region order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PatternVector(pub Vec<u8>);

impl PatternVector {
    pub fn states(&self) -> &[u8] {
        &self.0
    }

    /// Maps every nonzero state to 1.
    pub fn collapse_to_binary(&self) -> PatternVector {
        PatternVector(self.0.iter().map(|&s| u8::from(s > 0)).collect())
    }
}

impl fmt::Display for PatternVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl From<&[u8]> for PatternVector {
    fn from(s: &[u8]) -> Self {
        PatternVector(s.to_vec())
    }
}

/// Region masks (bit `a` set = hyperedge `a` covers the region) in region order.
pub fn region_masks(k: usize) -> Result<Vec<u8>> {
    match k {
        2 => Ok(alloc::vec![0b01, 0b10, 0b11]),
        3 => Ok(alloc::vec![0b001, 0b010, 0b100, 0b011, 0b110, 0b101, 0b111]),
        4 => {
            let mut masks: Vec<u8> = (1u8..16).collect();
            masks.sort_by_key(|&m| {
                let mut members = [0u8; 4];
                let mut n = 0;
                for b in 0..4 {
                    if m & (1 << b) != 0 {
                        members[n] = b;
                        n += 1;
                    }
                }
                (m.count_ones(), members)
            });
            Ok(masks)
        }
        _ => Err(Error::domain(alloc::format!("unsupported arity {k}"))),
    }
}

fn permutations(k: usize) -> Vec<Vec<u8>> {
    fn rec(prefix: &mut Vec<u8>, used: u8, k: usize, out: &mut Vec<Vec<u8>>) {
        if prefix.len() == k {
            out.push(prefix.clone());
            return;
        }
        for a in 0..k as u8 {
            if used & (1 << a) == 0 {
                prefix.push(a);
                rec(prefix, used | (1 << a), k, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), 0, k, &mut out);
    out
}

/// Precomputed position maps for one arity: `maps[p][pos]` is where the
/// region at `pos` lands under permutation `p`.
#[derive(Debug, Clone)]
struct Symmetry {
    k: usize,
    masks: Vec<u8>,
    maps: Vec<Vec<usize>>,
}

impl Symmetry {
    fn new(k: usize) -> Result<Self> {
        let masks = region_masks(k)?;
        let mut position = [usize::MAX; 16];
        for (pos, &m) in masks.iter().enumerate() {
            position[m as usize] = pos;
        }
        let maps = permutations(k)
            .into_iter()
            .map(|perm| {
                masks
                    .iter()
                    .map(|&m| {
                        let mut image = 0u8;
                        for (a, &to) in perm.iter().enumerate() {
                            if m & (1 << a) != 0 {
                                image |= 1 << to;
                            }
                        }
                        position[image as usize]
                    })
                    .collect()
            })
            .collect();
        Ok(Symmetry { k, masks, maps })
    }

    fn canonical(&self, states: &[u8]) -> Vec<u8> {
        let mut best: Option<Vec<u8>> = None;
        let mut buf = alloc::vec![0u8; states.len()];
        for map in &self.maps {
            for (pos, &to) in map.iter().enumerate() {
                buf[to] = states[pos];
            }
            if best.as_ref().is_none_or(|b| buf < *b) {
                best = Some(buf.clone());
            }
        }
        best.unwrap()
    }

    /// Hyperedges `a` and `b` overlap iff some nonzero region covers both.
    fn adjacent(&self, states: &[u8], a: usize, b: usize) -> bool {
        let pair = (1u8 << a) | (1u8 << b);
        self.masks.iter().zip(states).any(|(&m, &s)| s > 0 && m & pair == pair)
    }

    fn is_valid(&self, states: &[u8]) -> bool {
        let k = self.k;
        // Every hyperedge nonempty.
        for a in 0..k {
            let covered = self.masks.iter().zip(states).any(|(&m, &s)| s > 0 && m & (1 << a) != 0);
            if !covered {
                return false;
            }
        }
        // Connected overlap graph.
        let mut reached = 1u8;
        let mut frontier = alloc::vec![0usize];
        while let Some(a) = frontier.pop() {
            for b in 0..k {
                if reached & (1 << b) == 0 && self.adjacent(states, a, b) {
                    reached |= 1 << b;
                    frontier.push(b);
                }
            }
        }
        if reached.count_ones() as usize != k {
            return false;
        }
        // No two hyperedges forced equal: some region covered by exactly one
        // of them must be nonempty.
        for a in 0..k {
            for b in a + 1..k {
                let (ba, bb) = (1u8 << a, 1u8 << b);
                let distinct = self
                    .masks
                    .iter()
                    .zip(states)
                    .any(|(&m, &s)| s > 0 && ((m & ba != 0) != (m & bb != 0)));
                if !distinct {
                    return false;
                }
            }
        }
        true
    }

    fn is_open(&self, states: &[u8]) -> bool {
        let k = self.k;
        (0..k).any(|a| (a + 1..k).any(|b| !self.adjacent(states, a, b)))
    }
}

fn check_states(states: &[u8], k: usize) -> Result<()> {
    let expected = (1usize << k) - 1;
    if states.len() != expected {
        return Err(Error::domain(alloc::format!(
            "pattern for {k} hyperedges needs {expected} regions, got {}",
            states.len()
        )));
    }
    Ok(())
}

/// Lexicographically smallest relabeling of `p`.
pub fn canonicalize(p: &PatternVector, k: usize) -> Result<PatternVector> {
    let sym = Symmetry::new(k)?;
    check_states(&p.0, k)?;
    Ok(PatternVector(sym.canonical(&p.0)))
}

/// Whether `p` can arise from `k` connected, pairwise distinct hyperedges.
pub fn is_valid_pattern(p: &PatternVector, k: usize) -> Result<bool> {
    let sym = Symmetry::new(k)?;
    check_states(&p.0, k)?;
    Ok(sym.is_valid(&p.0))
}

/// Number of `k`-state motifs of three hyperedges, in closed form.
pub fn count_kh_motifs(k: u64) -> Result<u64> {
    if k < 2 {
        return Err(Error::domain("state count must be at least 2"));
    }
    let k = u128::from(k);
    let overflow = || Error::domain("motif count overflows u64");
    let poly = k
        .checked_pow(5)
        .and_then(|k5| k5.checked_add(k.checked_pow(4)?))
        .and_then(|x| x.checked_add(4 * k.checked_pow(3)?))
        .and_then(|x| x.checked_add(k * k))
        .and_then(|x| x.checked_add(2))
        .and_then(|x| x.checked_sub(4 * k))
        .ok_or_else(overflow)?;
    let total = (k * (k - 1)).checked_mul(poly).ok_or_else(overflow)? / 6;
    u64::try_from(total).map_err(|_| overflow())
}

/// All canonical valid patterns for `k` hyperedges and `s` region states.
#[derive(Debug, Clone)]
pub struct MotifCatalog {
    arity: usize,
    states: usize,
    patterns: Vec<PatternVector>,
    open: Vec<bool>,
    /// Raw pattern code → 1-based id of its canonical form, 0 if invalid.
    lookup: Vec<u32>,
}

impl MotifCatalog {
    /// Enumerates the catalog. Supported: `(2,2)`, `(3,2)`, `(3,3)`, `(4,2)`.
    pub fn enumerate(k: usize, s: usize) -> Result<Self> {
        if !matches!((k, s), (2, 2) | (3, 2) | (3, 3) | (4, 2)) {
            return Err(Error::domain(alloc::format!(
                "unsupported catalog: {k} hyperedges, {s} states"
            )));
        }
        let sym = Symmetry::new(k)?;
        let regions = sym.masks.len();
        let space = s.pow(regions as u32);

        let mut canon_code = alloc::vec![u32::MAX; space];
        let mut kept: Vec<u32> = Vec::new();
        let mut states = alloc::vec![0u8; regions];
        for (code, slot) in canon_code.iter_mut().enumerate() {
            decode(code, s, &mut states);
            if !sym.is_valid(&states) {
                continue;
            }
            let c = encode(&sym.canonical(&states), s);
            *slot = c as u32;
            if c == code {
                kept.push(code as u32);
            }
        }
        // Codes are big-endian in region order, so numeric order is
        // lexicographic order and `kept` is already sorted.
        let mut id_of_canon = hashbrown::HashMap::with_capacity(kept.len());
        let mut patterns = Vec::with_capacity(kept.len());
        let mut open = Vec::with_capacity(kept.len());
        for (idx, &code) in kept.iter().enumerate() {
            let mut st = alloc::vec![0u8; regions];
            decode(code as usize, s, &mut st);
            open.push(sym.is_open(&st));
            patterns.push(PatternVector(st));
            id_of_canon.insert(code, idx as u32 + 1);
        }
        let lookup = canon_code
            .iter()
            .map(|&c| if c == u32::MAX { 0 } else { id_of_canon[&c] })
            .collect();

        Ok(MotifCatalog {
            arity: k,
            states: s,
            patterns,
            open,
            lookup,
        })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn num_states(&self) -> usize {
        self.states
    }

    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    /// Canonical pattern of motif `id` (1-based).
    pub fn pattern(&self, id: u32) -> &PatternVector {
        &self.patterns[id as usize - 1]
    }

    pub fn patterns(&self) -> &[PatternVector] {
        &self.patterns
    }

    pub fn is_open(&self, id: u32) -> bool {
        self.open[id as usize - 1]
    }

    pub fn ids(&self) -> impl Iterator<Item = u32> {
        1..=self.patterns.len() as u32
    }

    /// Id of any (not necessarily canonical) pattern; `None` if invalid.
    pub fn id_of(&self, p: &PatternVector) -> Option<u32> {
        if p.0.len() != (1 << self.arity) - 1 || p.0.iter().any(|&x| x as usize >= self.states) {
            return None;
        }
        match self.lookup[encode(&p.0, self.states)] {
            0 => None,
            id => Some(id),
        }
    }

    /// Id from a raw big-endian code; 0 means invalid.
    #[inline]
    pub(crate) fn id_of_code(&self, code: usize) -> u32 {
        self.lookup[code]
    }

    /// For each id of this catalog, the id its pattern collapses to in the
    /// binary catalog of the same arity.
    pub fn refinement_map(&self, binary: &MotifCatalog) -> Result<Vec<u32>> {
        if binary.arity != self.arity || binary.states != 2 {
            return Err(Error::domain(
                "refinement target must be the binary catalog of the same arity",
            ));
        }
        self.patterns
            .iter()
            .map(|p| {
                binary
                    .id_of(&p.collapse_to_binary())
                    .ok_or_else(|| Error::domain("pattern collapses to an invalid binary pattern"))
            })
            .collect()
    }
}

fn decode(mut code: usize, s: usize, out: &mut [u8]) {
    for slot in out.iter_mut().rev() {
        *slot = (code % s) as u8;
        code /= s;
    }
}

pub(crate) fn encode(states: &[u8], s: usize) -> usize {
    states.iter().fold(0, |acc, &x| acc * s + x as usize)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn pv(s: &[u8]) -> PatternVector {
        PatternVector(s.to_vec())
    }

    #[test]
    fn catalog_sizes() {
        assert_eq!(MotifCatalog::enumerate(2, 2).unwrap().len(), 2);
        assert_eq!(MotifCatalog::enumerate(3, 2).unwrap().len(), 26);
        assert_eq!(MotifCatalog::enumerate(3, 3).unwrap().len(), 431);
        assert_eq!(MotifCatalog::enumerate(4, 2).unwrap().len(), 1853);
        assert!(MotifCatalog::enumerate(5, 2).is_err());
        assert!(MotifCatalog::enumerate(2, 3).is_err());
    }

    #[test]
    fn six_open_binary_motifs() {
        let cat = MotifCatalog::enumerate(3, 2).unwrap();
        assert_eq!(cat.ids().filter(|&t| cat.is_open(t)).count(), 6);
    }

    #[test]
    fn open_flag_matches_pairwise_overlap() {
        for s in [2, 3] {
            let cat = MotifCatalog::enumerate(3, s).unwrap();
            for t in cat.ids() {
                let c = cat.pattern(t).states();
                let closed = (c[3] + c[6] > 0) && (c[4] + c[6] > 0) && (c[5] + c[6] > 0);
                assert_eq!(cat.is_open(t), !closed);
            }
        }
    }

    #[test]
    fn swapped_hyperedges_share_canonical_form() {
        let a = canonicalize(&pv(&[0, 1, 1, 1, 1, 0, 1]), 3).unwrap();
        let b = canonicalize(&pv(&[1, 0, 1, 1, 0, 1, 1]), 3).unwrap();
        assert_eq!(a, b);
        assert_eq!(canonicalize(&a, 3).unwrap(), a);
        let sym = pv(&[1; 7]);
        assert_eq!(canonicalize(&sym, 3).unwrap(), sym);
    }

    #[test]
    fn validity_conditions() {
        assert!(!is_valid_pattern(&pv(&[0, 0, 0, 0, 0, 0, 1]), 3).unwrap());
        assert!(!is_valid_pattern(&pv(&[1, 1, 1, 0, 0, 0, 0]), 3).unwrap());
        assert!(is_valid_pattern(&pv(&[1, 0, 1, 1, 1, 0, 0]), 3).unwrap());
        assert!(is_valid_pattern(&pv(&[0, 1, 1]), 2).unwrap());
        assert!(!is_valid_pattern(&pv(&[0, 0, 1]), 2).unwrap());
        assert!(is_valid_pattern(&pv(&[1, 1]), 2).is_err());
        assert!(is_valid_pattern(&pv(&[1; 31]), 5).is_err());
    }

    #[test]
    fn kh_motif_formula() {
        let got: Vec<u64> = (2..=6).map(|k| count_kh_motifs(k).unwrap()).collect();
        assert_eq!(got, vec![26, 431, 3076, 14190, 49750]);
        assert!(count_kh_motifs(1).is_err());
        assert_eq!(
            count_kh_motifs(3).unwrap() as usize,
            MotifCatalog::enumerate(3, 3).unwrap().len()
        );
    }

    #[test]
    fn lookup_agrees_with_canonicalization() {
        let cat = MotifCatalog::enumerate(3, 3).unwrap();
        let star = pv(&[1, 1, 1, 0, 0, 0, 1]);
        let id = cat.id_of(&star).unwrap();
        assert_eq!(cat.pattern(id), &canonicalize(&star, 3).unwrap());
        assert!(cat.id_of(&pv(&[0, 0, 0, 0, 0, 0, 2])).is_none());
    }

    #[test]
    fn refinement_covers_binary_catalog() {
        let bin = MotifCatalog::enumerate(3, 2).unwrap();
        let ter = MotifCatalog::enumerate(3, 3).unwrap();
        let map = ter.refinement_map(&bin).unwrap();
        let mut hit = vec![false; bin.len()];
        for &b in &map {
            hit[b as usize - 1] = true;
        }
        assert!(hit.iter().all(|&h| h));
    }

    #[test]
    fn region_order_for_four() {
        let masks = region_masks(4).unwrap();
        assert_eq!(&masks[..4], &[1, 2, 4, 8]);
        assert_eq!(&masks[4..10], &[3, 5, 9, 6, 10, 12]);
        assert_eq!(masks[14], 15);
    }
}
