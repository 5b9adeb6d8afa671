// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Continuity and shyness for maps between digital images and for exact
//! piecewise-linear functions, with brute-force oracles and seeded suites.

pub mod constructions;
pub mod digital;
pub mod error;
pub mod io;
pub mod khalimsky;
pub mod maps;
pub mod pl;
pub mod rational;
pub mod report;
pub mod suites;

pub use constructions::{compose, product_images, product_map, vee_map, wedge, Side, WedgeImage};
pub use digital::{AdjacencySpec, DigitalImage, LatticePoint, DEFAULT_ENUMERATION_LIMIT};
pub use error::{Result, ShyError};
pub use khalimsky::{q_value, qn_value, KhalimskyInterval};
pub use maps::{
    cut_point_audit, degree_of_cycle_map, is_shy, pi1_surjectivity_cycle, shy_oracle, DigitalMap, ShyVerdict,
    ShyWitness,
};
pub use pl::{AngleMap, PLFunction, PlShyVerdict};
pub use rational::{IntervalUnion, Rational, RationalInterval};
pub use report::SuiteReport;
pub use suites::{run_suite, SuiteConfig, SuiteName};
