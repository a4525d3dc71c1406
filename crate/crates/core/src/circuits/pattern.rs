use super::Family;
use crate::error::{Error, Result};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::HashSet;

/// Below this population size sampling draws indices from the full
/// enumeration; above it, random patterns are drawn and deduplicated.
const ENUMERATION_LIMIT: u128 = 1 << 22;

/// Per-stage U/V choices for the BC and CD gate families (`true` = V).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DephasingPattern {
    bc: Vec<bool>,
    cd: Vec<bool>,
}

impl DephasingPattern {
    pub fn new(bc: Vec<bool>, cd: Vec<bool>) -> Result<Self> {
        if bc.len() != cd.len() {
            return Err(Error::PatternLength {
                expected: bc.len(),
                found: cd.len(),
            });
        }
        Ok(DephasingPattern { bc, cd })
    }

    pub fn all_u(stages: usize) -> Self {
        DephasingPattern {
            bc: vec![false; stages],
            cd: vec![false; stages],
        }
    }

    pub fn all_v(stages: usize) -> Self {
        DephasingPattern {
            bc: vec![true; stages],
            cd: vec![true; stages],
        }
    }

    pub fn stages(&self) -> usize {
        self.bc.len()
    }

    pub fn bc(&self) -> &[bool] {
        &self.bc
    }

    pub fn cd(&self) -> &[bool] {
        &self.cd
    }

    pub fn choice(&self, family: Family, stage: usize) -> bool {
        match family {
            Family::Bc => self.bc[stage],
            Family::Cd => self.cd[stage],
        }
    }

    /// Exactly half the stages of each family are V.
    pub fn is_balanced(&self) -> bool {
        let half = self.stages() / 2;
        self.stages().is_multiple_of(2)
            && self.bc.iter().filter(|&&b| b).count() == half
            && self.cd.iter().filter(|&&b| b).count() == half
    }

    /// Compact form such as `"UVVU..|VUUV.."`.
    pub fn code(&self) -> String {
        let enc = |v: &[bool]| {
            v.iter()
                .map(|&b| if b { 'V' } else { 'U' })
                .collect::<String>()
        };
        format!("{}|{}", enc(&self.bc), enc(&self.cd))
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn sequences_per_family(stages: usize, balanced: bool) -> Result<u128> {
    if balanced {
        if !stages.is_multiple_of(2) {
            return Err(Error::OddStages(stages));
        }
        Ok(binomial(stages, stages / 2))
    } else if stages >= 64 {
        Ok(u128::MAX)
    } else {
        Ok(1u128 << stages)
    }
}

/// Number of distinct (BC, CD) pattern pairs, saturating at `u128::MAX`.
pub fn pattern_population(stages: usize, balanced: bool) -> Result<u128> {
    let per = sequences_per_family(stages, balanced)?;
    Ok(per.saturating_mul(per))
}

/// Sequence of rank `idx` in lexicographic order (false before true).
fn unrank(stages: usize, balanced: bool, mut idx: u128) -> Vec<bool> {
    if !balanced {
        return (0..stages)
            .map(|i| (idx >> (stages - 1 - i)) & 1 == 1)
            .collect();
    }
    let mut ones = stages / 2;
    let mut out = Vec::with_capacity(stages);
    for i in 0..stages {
        let rest = stages - i - 1;
        let with_false = binomial(rest, ones);
        if idx < with_false {
            out.push(false);
        } else {
            idx -= with_false;
            out.push(true);
            ones -= 1;
        }
    }
    out
}

fn pair_from_index(stages: usize, balanced: bool, per: u128, idx: u128) -> DephasingPattern {
    DephasingPattern {
        bc: unrank(stages, balanced, idx / per),
        cd: unrank(stages, balanced, idx % per),
    }
}

/// Every pattern pair in rank order, refusing populations above `cap`.
pub fn exhaustive_patterns(
    stages: usize,
    balanced: bool,
    cap: u128,
) -> Result<Vec<DephasingPattern>> {
    let per = sequences_per_family(stages, balanced)?;
    let population = per.saturating_mul(per);
    if population > cap {
        return Err(Error::ExhaustiveCap { population, cap });
    }
    Ok((0..population)
        .map(|i| pair_from_index(stages, balanced, per, i))
        .collect())
}

/// Draws `count` distinct pattern pairs uniformly; a pure function of its
/// arguments.
pub fn sample_patterns(
    stages: usize,
    count: usize,
    balanced: bool,
    seed: u64,
) -> Result<Vec<DephasingPattern>> {
    let per = sequences_per_family(stages, balanced)?;
    let population = per.saturating_mul(per);
    if count as u128 > population {
        return Err(Error::PopulationExceeded {
            count: count as u128,
            population,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if population <= ENUMERATION_LIMIT {
        let picks = rand::seq::index::sample(&mut rng, population as usize, count);
        return Ok(picks
            .into_iter()
            .map(|i| pair_from_index(stages, balanced, per, i as u128))
            .collect());
    }
    let mut seen = HashSet::with_capacity(count);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let p = DephasingPattern {
            bc: random_sequence(&mut rng, stages, balanced),
            cd: random_sequence(&mut rng, stages, balanced),
        };
        if seen.insert(p.clone()) {
            out.push(p);
        }
    }
    Ok(out)
}

fn random_sequence(rng: &mut impl Rng, stages: usize, balanced: bool) -> Vec<bool> {
    if balanced {
        let mut v: Vec<bool> = (0..stages).map(|i| i < stages / 2).collect();
        v.shuffle(rng);
        v
    } else {
        (0..stages).map(|_| rng.gen()).collect()
    }
}
