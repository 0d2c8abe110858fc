// Shared by several integration-test binaries; not every binary reads every
// field of the reference simulator.
#![allow(dead_code)]

pub mod naive;
