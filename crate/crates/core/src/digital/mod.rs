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

//! Finite digital images: lattice points with an adjacency relation, viewed
//! as simple undirected graphs.

mod connectivity;
mod image;

pub use connectivity::{ConnectedSubsets, DEFAULT_ENUMERATION_LIMIT, MASK_WIDTH};
pub use image::{AdjacencySpec, DigitalImage, LatticePoint};
