use std::collections::BTreeMap;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{rat, Rat, Var};

/// Evaluation values are drawn uniformly from `1..=EVALUATION_RANGE`.
pub const EVALUATION_RANGE: u32 = 1 << 20;

/// Map from variables to exact values.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Assignment {
    values: BTreeMap<Var, Rat>,
}

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, v: Var) -> Option<&Rat> {
        self.values.get(&v)
    }

    pub fn set(&mut self, v: Var, value: Rat) -> &mut Self {
        self.values.insert(v, value);
        self
    }

    pub fn with(mut self, v: Var, value: Rat) -> Self {
        self.values.insert(v, value);
        self
    }

    /// Assigns the same value to every listed variable.
    pub fn constant(vars: impl IntoIterator<Item = Var>, value: Rat) -> Self {
        Assignment {
            values: vars.into_iter().map(|v| (v, value.clone())).collect(),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Var, &Rat)> {
        self.values.iter()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Variable names mapped to `p/q` strings, for reports.
    pub fn to_json(&self) -> BTreeMap<String, String> {
        self.values
            .iter()
            .map(|(v, r)| (v.to_string(), r.to_string()))
            .collect()
    }
}

impl FromIterator<(Var, Rat)> for Assignment {
    fn from_iter<I: IntoIterator<Item = (Var, Rat)>>(iter: I) -> Self {
        Assignment {
            values: iter.into_iter().collect(),
        }
    }
}

/// Reproducible pseudo-random assignment. The value of a variable depends
/// only on `(seed, trial, variable)`, so restricting the variable set keeps
/// the remaining values unchanged.
pub fn random_assignment(vars: impl IntoIterator<Item = Var>, seed: u64, trial: u64) -> Assignment {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    vars.into_iter()
        .map(|v| {
            rng.set_word_pos(v.code() as u128);
            // 2^20 divides 2^32, so masking keeps the draw uniform
            let draw = rng.next_u32() & (EVALUATION_RANGE - 1);
            (v, rat(draw as i64 + 1))
        })
        .collect()
}
