use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::Precision;

/// Limits shared by the search and reduction routines.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Config {
    pub max_reduce_iters: usize,
    pub precision_bits: u32,
    pub precision_cap: u32,
    pub closure_cap: usize,
    pub word_search_len: usize,
    pub height_bound: i64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            max_reduce_iters: 1000,
            precision_bits: 128,
            precision_cap: 4096,
            closure_cap: 10_000,
            word_search_len: 12,
            height_bound: 20,
        }
    }
}

impl Config {
    pub fn validate(&self) -> Result<()> {
        let ok = self.max_reduce_iters > 0
            && self.precision_bits > 0
            && self.precision_cap >= self.precision_bits
            && self.closure_cap > 0
            && self.word_search_len > 0
            && self.height_bound > 0;
        if ok {
            Ok(())
        } else {
            Err(Error::Invalid("configuration values must be positive".into()))
        }
    }

    pub fn precision(&self) -> Precision {
        Precision {
            start: self.precision_bits,
            cap: self.precision_cap,
        }
    }
}
