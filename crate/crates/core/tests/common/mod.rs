#![allow(dead_code)]

//! Thin adapters over the crate's seeded test generators.

use episturmian::testing::{self, SplitMix};
use episturmian::{DigitString, DirectiveWord, NumerationSystem};
use rand::Rng;

pub const REFERENCE_SYSTEMS: [&str; 4] =
    ["periodic:|01", "periodic:|012", "periodic:|0123", "periodic:|001122"];

pub fn random_regular_directive<R: Rng>(rng: &mut R) -> DirectiveWord {
    testing::random_regular_directive(&mut SplitMix::new(rng.gen()))
}

pub fn random_valid_intercept<R: Rng>(rng: &mut R, num: &NumerationSystem) -> DigitString {
    testing::random_valid_intercept(&mut SplitMix::new(rng.gen()), num)
}
