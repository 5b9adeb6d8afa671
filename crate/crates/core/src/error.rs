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

use thiserror::Error;

/// Errors raised by the deciders, constructions and parsers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShyError {
    /// A point, value or argument lies outside the object it was applied to.
    #[error("domain error: {0}")]
    Domain(String),
    /// An exhaustive procedure was asked to run past its configured limit.
    #[error("size error: {what} has {size} elements, limit is {limit}")]
    Size {
        what: String,
        size: usize,
        limit: usize,
    },
    #[error("precondition failed: {0}")]
    Precondition(String),
    /// The input has the wrong structure (not a cycle, mismatched images, ...).
    #[error("shape error: {0}")]
    Shape(String),
    #[error("pointedness error: {0}")]
    Pointedness(String),
    #[error("unsupported regime: {0}")]
    UnsupportedRegime(String),
    /// Malformed textual or JSON input.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = ShyError> = std::result::Result<T, E>;
