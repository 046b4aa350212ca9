//! Shared brute-force helpers for the integration tests.

#![allow(dead_code)]

use std::collections::HashSet;

use num_traits::ToPrimitive;
use rand::Rng;
use ribbon_gate::abelian::FgAbelianGroup;
use ribbon_gate::group::{GroupPresentation, Letter, Word};

/// Every finite abelian group of order at most `max`, as invariant factor
/// chains `d₁ | d₂ | …` built directly.
pub fn abelian_groups_up_to(max: u64) -> Vec<FgAbelianGroup> {
    fn extend(chain: &mut Vec<u64>, prod: u64, max: u64, out: &mut Vec<FgAbelianGroup>) {
        out.push(FgAbelianGroup::from_cyclic_factors(0, chain.iter().map(|&d| d as i64)));
        let start = chain.last().copied().unwrap_or(2);
        let mut d = start;
        while prod * d <= max {
            if chain.last().is_none_or(|&l| d % l == 0) {
                chain.push(d);
                extend(chain, prod * d, max, out);
                chain.pop();
            }
            d += 1;
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), 1, max, &mut out);
    out
}

/// Elements of `⊕ Z/dᵢ` indexed in mixed radix.
pub struct FiniteGroup {
    moduli: Vec<usize>,
    size: usize,
}

impl FiniteGroup {
    pub fn new(g: &FgAbelianGroup) -> Self {
        assert_eq!(g.free_rank(), 0);
        let moduli: Vec<usize> = g.torsion().iter().map(|d| d.to_usize().unwrap()).collect();
        let size = moduli.iter().product();
        Self { moduli, size }
    }

    fn digits(&self, mut x: usize) -> Vec<usize> {
        self.moduli
            .iter()
            .map(|&m| {
                let d = x % m;
                x /= m;
                d
            })
            .collect()
    }

    fn index(&self, digits: &[usize]) -> usize {
        let mut x = 0;
        for (d, m) in digits.iter().zip(&self.moduli).rev() {
            x = x * m + d;
        }
        x
    }

    fn add(&self, a: usize, b: usize) -> usize {
        let (da, db) = (self.digits(a), self.digits(b));
        let s: Vec<usize> = da
            .iter()
            .zip(&db)
            .zip(&self.moduli)
            .map(|((x, y), m)| (x + y) % m)
            .collect();
        self.index(&s)
    }

    fn times(&self, k: usize, a: usize) -> usize {
        let d: Vec<usize> = self
            .digits(a)
            .iter()
            .zip(&self.moduli)
            .map(|(x, m)| (k * x) % m)
            .collect();
        self.index(&d)
    }

    /// `#{x ∈ S : m·x = 0}` for `m = 1..=64`; determines a finite abelian
    /// group up to isomorphism.
    fn signature(&self, set: u64) -> Vec<usize> {
        (1..=64)
            .map(|m| {
                (0..self.size)
                    .filter(|&x| set >> x & 1 == 1 && self.times(m, x) == 0)
                    .count()
            })
            .collect()
    }

    pub fn full_signature(&self) -> Vec<usize> {
        self.signature(self.all())
    }

    fn all(&self) -> u64 {
        if self.size == 64 {
            u64::MAX
        } else {
            (1u64 << self.size) - 1
        }
    }

    /// Signatures of all subgroups, found by closing `{0}` under adjoining
    /// single elements.
    pub fn subgroup_signatures(&self) -> HashSet<Vec<usize>> {
        let mut seen: HashSet<u64> = HashSet::new();
        let mut stack = vec![1u64];
        seen.insert(1);
        while let Some(s) = stack.pop() {
            for g in 0..self.size {
                if s >> g & 1 == 1 {
                    continue;
                }
                let mut t = s;
                let mut frontier: Vec<usize> = (0..self.size).filter(|&x| s >> x & 1 == 1).collect();
                while let Some(x) = frontier.pop() {
                    let y = self.add(x, g);
                    if t >> y & 1 == 0 {
                        t |= 1 << y;
                        frontier.push(y);
                    }
                }
                if seen.insert(t) {
                    stack.push(t);
                }
            }
        }
        seen.into_iter().map(|s| self.signature(s)).collect()
    }
}

pub fn random_word<R: Rng>(rng: &mut R, gens: usize, len: usize) -> Word {
    Word(
        (0..len)
            .map(|_| Letter::new(rng.random_range(0..gens), rng.random()))
            .collect(),
    )
}

/// Random Tietze moves that keep the group and keep `rho` a solution:
/// replace a relator by a product with a conjugate of another, cyclically
/// permute, invert, or append a consequence.
pub fn scramble<R: Rng>(rng: &mut R, p: &GroupPresentation) -> GroupPresentation {
    let g = p.num_generators();
    let mut rels: Vec<Word> = p.relators().to_vec();
    for _ in 0..rng.random_range(1..6) {
        let i = rng.random_range(0..rels.len());
        let j = rng.random_range(0..rels.len());
        let len = rng.random_range(0..4);
        let u = random_word(rng, g, len);
        match rng.random_range(0..4) {
            0 => {
                let c = u.clone() * rels[j].clone() * u.inverse();
                rels[i] = (rels[i].clone() * c).reduced();
            }
            1 => {
                let w = &rels[i].0;
                if !w.is_empty() {
                    let k = rng.random_range(0..w.len());
                    let mut rot = w[k..].to_vec();
                    rot.extend_from_slice(&w[..k]);
                    rels[i] = Word(rot).reduced();
                }
            }
            2 => rels[i] = rels[i].inverse(),
            _ => rels.push((u.clone() * rels[j].clone() * u.inverse()).reduced()),
        }
    }
    GroupPresentation::new(p.generators().to_vec(), rels).unwrap()
}

