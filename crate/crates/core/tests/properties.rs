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

use std::sync::Arc;

use proptest::prelude::*;
use shylab::khalimsky::{q_fiber, q_preimage_interval};
use shylab::rational::rat;
use shylab::{
    compose, is_shy, product_map, run_suite, shy_oracle, vee_map, wedge, DigitalImage, DigitalMap, IntervalUnion,
    KhalimskyInterval, LatticePoint, PLFunction, SuiteConfig, SuiteName,
};

fn graph(n: usize, mask: u32) -> Arc<DigitalImage> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))).collect();
    let edges: Vec<(usize, usize)> = pairs
        .iter()
        .enumerate()
        .filter(|(k, _)| mask >> k & 1 == 1)
        .map(|(_, &e)| e)
        .collect();
    let points = (0..n as i64).map(|i| LatticePoint::from([i])).collect();
    Arc::new(DigitalImage::with_edges(points, edges).unwrap())
}

/// A random map between random small graphs.
fn arb_map() -> impl Strategy<Value = DigitalMap> {
    (1usize..=6, any::<u32>(), 1usize..=5, any::<u32>()).prop_flat_map(|(n, a, m, b)| {
        let (dom, cod) = (graph(n, a), graph(m, b));
        proptest::collection::vec(0..m, n)
            .prop_map(move |t| DigitalMap::new(dom.clone(), cod.clone(), t).unwrap())
    })
}

fn arb_pl() -> impl Strategy<Value = PLFunction> {
    proptest::collection::vec((1i64..=4, -12i64..=12), 1..8).prop_map(|steps| {
        let mut x = 0;
        let mut pts = vec![(rat(0, 1), rat(0, 1))];
        for (dx, y) in steps {
            x += dx;
            pts.push((rat(x, 3), rat(y, 4)));
        }
        PLFunction::new(pts, false).unwrap()
    })
}

proptest! {
    #[test]
    fn continuity_matches_connected_image_oracle(f in arb_map()) {
        prop_assert_eq!(f.is_continuous(), f.is_continuous_oracle(15).unwrap());
    }

    #[test]
    fn local_shyness_matches_oracle(f in arb_map()) {
        if !f.is_continuous() {
            return Ok(());
        }
        let local = is_shy(&f).unwrap();
        let brute = shy_oracle(&f, 15).unwrap();
        prop_assert_eq!(local, brute);
    }

    #[test]
    fn continuous_maps_compose(f in arb_map(), g in arb_map()) {
        let g = DigitalMap::new(
            f.codomain().clone(),
            g.codomain().clone(),
            (0..f.codomain().len()).map(|i| g.table()[i % g.table().len()]).collect(),
        )
        .unwrap();
        let h = compose(&f, &g).unwrap();
        if f.is_continuous() && g.is_continuous() {
            prop_assert!(h.is_continuous());
        }
        for i in 0..f.domain().len() {
            prop_assert_eq!(h.apply(i), g.apply(f.apply(i)));
        }
    }

    #[test]
    fn shy_products_have_shy_factors(f in arb_map(), g in arb_map()) {
        if !(f.is_continuous() && g.is_continuous()) || f.image_indices().len() * g.image_indices().len() > 15 {
            return Ok(());
        }
        let p = product_map(&[&f, &g]).unwrap();
        prop_assert!(p.is_continuous());
        if shy_oracle(&p, 15).unwrap().shy {
            prop_assert!(shy_oracle(&f, 15).unwrap().shy);
            prop_assert!(shy_oracle(&g, 15).unwrap().shy);
        }
    }

    #[test]
    fn wedge_of_pointed_maps(f in arb_map(), g in arb_map(), a in 0usize..6, b in 0usize..6) {
        let (a, b) = (a % f.domain().len(), b % g.domain().len());
        let w = wedge(f.domain().clone(), f.domain().point(a), g.domain().clone(), g.domain().point(b)).unwrap();
        let w2 = wedge(
            f.codomain().clone(),
            f.codomain().point(f.apply(a)),
            g.codomain().clone(),
            g.codomain().point(g.apply(b)),
        )
        .unwrap();
        prop_assert_eq!(w.image().len(), f.domain().len() + g.domain().len() - 1);
        let h = vee_map(&f, &g, &w, &w2).unwrap();
        prop_assert_eq!(h.is_continuous(), f.is_continuous() && g.is_continuous());
        if h.is_continuous() {
            let sh = shy_oracle(&h, 15).unwrap().shy;
            prop_assert_eq!(sh, shy_oracle(&f, 15).unwrap().shy && shy_oracle(&g, 15).unwrap().shy);
        }
    }

    #[test]
    fn pl_shy_iff_monotone(f in arb_pl()) {
        prop_assert_eq!(f.is_shy_pl().unwrap(), f.is_monotone().unwrap());
    }

    #[test]
    fn khalimsky_preimage_is_union_of_fibers(a in -30i64..30, len in 0i64..12) {
        let k = KhalimskyInterval::new(a, a + len).unwrap();
        let fibers = IntervalUnion::from_parts((a..=a + len).map(q_fiber).collect());
        prop_assert_eq!(fibers.parts(), &[q_preimage_interval(k)]);
    }
}

#[test]
fn suite_reports_repeat_for_a_seed() {
    for name in [SuiteName::Factor, SuiteName::Wedge, SuiteName::CircleConstant] {
        let cfg = SuiteConfig {
            cases: Some(150),
            ..SuiteConfig::with_seed(3)
        };
        let a = run_suite(name, &cfg).unwrap();
        let b = run_suite(name, &cfg).unwrap();
        assert_eq!(a.to_json_without_elapsed(), b.to_json_without_elapsed());
        assert!(a.passed(), "{}", a.to_json());
        assert_eq!(a.seed, 3);
    }
}

#[test]
fn unknown_suite_lists_valid_names() {
    let err = "sideways".parse::<SuiteName>().unwrap_err().to_string();
    for name in SuiteName::ALL {
        assert!(err.contains(name.as_str()), "{err}");
    }
}
