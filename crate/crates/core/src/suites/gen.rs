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

//! Seeded random generators for suite cases.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::digital::{AdjacencySpec, DigitalImage, LatticePoint};
use crate::maps::DigitalMap;
use crate::pl::PLFunction;
use crate::rational::{rat, Rational};

/// Independent stream per case, so cases can run in any order.
pub fn case_rng(seed: u64, case: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(case);
    rng
}

fn explicit(n: usize, edges: Vec<(usize, usize)>) -> DigitalImage {
    let points = (0..n as i64).map(|i| LatticePoint(vec![i])).collect();
    DigitalImage::new(1, points, AdjacencySpec::edges(edges)).expect("generated graph is valid")
}

/// Random graph on `n` points: a random spanning tree (when `connected`) plus
/// extra edges with probability `density`.
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, connected: bool, density: f64) -> DigitalImage {
    let mut edges = Vec::new();
    for i in 1..n {
        if connected {
            edges.push((rng.gen_range(0..i), i));
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.gen_bool(density) {
                edges.push((i, j));
            }
        }
    }
    explicit(n, edges)
}

/// Random subset of a small planar box under `c1` or `c2`.
pub fn random_lattice_image(rng: &mut ChaCha8Rng, n: usize) -> DigitalImage {
    let mut cells: Vec<(i64, i64)> = (0..3).flat_map(|x| (0..3).map(move |y| (x, y))).collect();
    cells.shuffle(rng);
    let points = cells
        .into_iter()
        .take(n.clamp(1, 9))
        .map(|(x, y)| LatticePoint(vec![x, y]))
        .collect();
    let u = rng.gen_range(1..=2);
    DigitalImage::new(2, points, AdjacencySpec::Cu(u)).expect("lattice image is valid")
}

/// Either kind of image with between 1 and `max` points.
pub fn random_image(rng: &mut ChaCha8Rng, max: usize, connected: bool) -> DigitalImage {
    loop {
        let n = rng.gen_range(1..=max);
        let img = if rng.gen_bool(0.5) {
            random_lattice_image(rng, n)
        } else {
            let density = rng.gen_range(0.0..0.5);
            random_graph(rng, n, connected, density)
        };
        let all: Vec<usize> = (0..img.len()).collect();
        if !connected || img.is_connected_indices(&all) {
            return img;
        }
    }
}

/// Uniformly shuffled backtracking search for a continuous map, optionally
/// pinning one domain point. Always succeeds because constant maps are
/// continuous.
pub fn random_continuous_map(
    rng: &mut ChaCha8Rng,
    domain: &Arc<DigitalImage>,
    codomain: &Arc<DigitalImage>,
    pin: Option<(usize, usize)>,
) -> DigitalMap {
    let n = domain.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    if let Some((x, _)) = pin {
        order.retain(|&i| i != x);
        order.insert(0, x);
    }
    let mut table = vec![usize::MAX; n];
    fn assign(
        rng: &mut ChaCha8Rng,
        k: usize,
        order: &[usize],
        table: &mut [usize],
        dom: &DigitalImage,
        cod: &DigitalImage,
        pin: Option<(usize, usize)>,
    ) -> bool {
        if k == order.len() {
            return true;
        }
        let x = order[k];
        let mut cands: Vec<usize> = match pin {
            Some((px, py)) if px == x => vec![py],
            _ => (0..cod.len()).collect(),
        };
        cands.retain(|&y| {
            dom.neighbors(x).iter().all(|&nb| {
                let v = table[nb];
                v == usize::MAX || v == y || cod.adjacent_idx(v, y)
            })
        });
        cands.shuffle(rng);
        for y in cands {
            table[x] = y;
            if assign(rng, k + 1, order, table, dom, cod, pin) {
                return true;
            }
        }
        table[x] = usize::MAX;
        false
    }
    let ok = assign(rng, 0, &order, &mut table, domain, codomain, pin);
    assert!(ok, "a constant map always exists");
    DigitalMap::new(domain.clone(), codomain.clone(), table).expect("table is total")
}

/// Quotient of `domain` by a random partition into connected blocks. The
/// codomain is the block graph, so the map is a shy surjection.
pub fn random_quotient(rng: &mut ChaCha8Rng, domain: &Arc<DigitalImage>) -> DigitalMap {
    let n = domain.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    let mut edges: Vec<(usize, usize)> = domain.edges().collect();
    edges.shuffle(rng);
    let p = rng.gen_range(0.1..0.8);
    for (a, b) in edges {
        if rng.gen_bool(p) {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
    }
    let mut label = vec![usize::MAX; n];
    let mut table = vec![0; n];
    let mut blocks = 0;
    for (i, slot) in table.iter_mut().enumerate() {
        let r = find(&mut parent, i);
        if label[r] == usize::MAX {
            label[r] = blocks;
            blocks += 1;
        }
        *slot = label[r];
    }
    let block_edges: Vec<(usize, usize)> = domain
        .edges()
        .map(|(a, b)| (table[a], table[b]))
        .filter(|(a, b)| a != b)
        .collect();
    let codomain = Arc::new(explicit(blocks, block_edges));
    DigitalMap::new(domain.clone(), codomain, table).expect("quotient table is total")
}

/// `image` plus `extra` new points hung off it by edges that each touch a new
/// point, with the inclusion map. The old image stays an induced subgraph.
pub fn random_extension(rng: &mut ChaCha8Rng, image: &Arc<DigitalImage>, extra: usize) -> DigitalMap {
    let n = image.len();
    let total = n + extra;
    let mut edges: Vec<(usize, usize)> = image.edges().collect();
    for new in n..total {
        if new > 0 {
            edges.push((rng.gen_range(0..new), new));
        }
        for other in 0..new {
            if rng.gen_bool(0.2) {
                edges.push((other, new));
            }
        }
    }
    // fresh points sit on a line far from anything generated elsewhere
    let far = 1 + image
        .points()
        .iter()
        .flat_map(|p| p.coords().iter().map(|c| c.abs()))
        .max()
        .unwrap_or(0);
    let mut points = image.points().to_vec();
    for k in 0..extra as i64 {
        let mut c = vec![0; image.dim()];
        c[0] = far + k;
        points.push(LatticePoint(c));
    }
    let target = Arc::new(
        DigitalImage::new(image.dim(), points, AdjacencySpec::edges(edges)).expect("extension is valid"),
    );
    DigitalMap::new(image.clone(), target, (0..n).collect()).expect("inclusion is total")
}

/// Every simple graph on the labeled points `(0)..(n-1)` for `n` in
/// `1..=max`, ordered by size and then by edge mask.
pub fn labeled_graphs(max: usize) -> Vec<Arc<DigitalImage>> {
    let mut out = Vec::new();
    for n in 1..=max {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))).collect();
        for mask in 0u32..(1 << pairs.len()) {
            let edges = pairs
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, &e)| e);
            let points = (0..n as i64).map(|i| LatticePoint(vec![i])).collect();
            out.push(Arc::new(
                DigitalImage::new(1, points, AdjacencySpec::edges(edges)).expect("labeled graph is valid"),
            ));
        }
    }
    out
}

/// Random rational with denominator at most `den`, in `[-range, range]`.
pub fn random_rational(rng: &mut ChaCha8Rng, den: i64, range: i64) -> Rational {
    let d = rng.gen_range(1..=den);
    let n = rng.gen_range(-range * d..=range * d);
    rat(n, d)
}

fn increasing_xs(rng: &mut ChaCha8Rng, k: usize) -> Vec<Rational> {
    let mut x = random_rational(rng, 12, 2);
    let mut xs = Vec::with_capacity(k);
    for _ in 0..k {
        xs.push(x.clone());
        let d = rng.gen_range(1..=12);
        x += rat(rng.gen_range(1..=2 * d), d);
    }
    xs
}

/// Random PL function on an interval with at most 8 breakpoints and
/// denominators at most 12. A third are monotone by construction and some
/// contain flat pieces.
pub fn random_pl(rng: &mut ChaCha8Rng) -> PLFunction {
    let k = rng.gen_range(2..=8);
    let xs = increasing_xs(rng, k);
    let mut ys: Vec<Rational> = (0..k).map(|_| random_rational(rng, 12, 3)).collect();
    match rng.gen_range(0..6) {
        0 => ys.sort(),
        1 => {
            ys.sort();
            ys.reverse();
        }
        2 => {
            // repeat some values to create flats
            for i in 1..k {
                if rng.gen_bool(0.5) {
                    ys[i] = ys[i - 1].clone();
                }
            }
            if rng.gen_bool(0.5) {
                ys.sort();
            }
        }
        _ => {}
    }
    PLFunction::new(xs.into_iter().zip(ys).collect(), false).expect("xs increase")
}

/// Random circular PL function; a quarter are constant.
pub fn random_circular_pl(rng: &mut ChaCha8Rng) -> PLFunction {
    let k = rng.gen_range(2..=8);
    let xs = increasing_xs(rng, k);
    let mut ys: Vec<Rational> = (0..k).map(|_| random_rational(rng, 12, 3)).collect();
    match rng.gen_range(0..4) {
        0 => {
            let v = random_rational(rng, 12, 3);
            ys.iter_mut().for_each(|y| *y = v.clone());
        }
        1 => {
            // mostly flat with one bump
            let v = random_rational(rng, 12, 3);
            ys.iter_mut().for_each(|y| *y = v.clone());
            if k > 2 {
                let i = rng.gen_range(1..k - 1);
                ys[i] = random_rational(rng, 12, 3);
            }
        }
        _ => {}
    }
    ys[k - 1] = ys[0].clone();
    PLFunction::new(xs.into_iter().zip(ys).collect(), true).expect("xs increase")
}
