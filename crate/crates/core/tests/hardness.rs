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

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use treebalance::decomposition::{imbalance, DoubleTreeDecomposition};
use treebalance::generate::random_hamiltonian_pair;
use treebalance::hardness::{embed_cycle_pair, gadget_family, map_witness, PAIRINGS};
use treebalance::oracle::ham_cycle_pair;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    /// A cycle pair lands in exactly two gadgets, and each embedding maps
    /// back to the same two cycles.
    #[test]
    fn embeddings_round_trip(seed in any::<u64>(), n in 3usize..=10) {
        let g = random_hamiltonian_pair(n, &mut ChaCha8Rng::seed_from_u64(seed));
        let (c1, c2) = ham_cycle_pair(&g).unwrap().expect("built from two cycles");
        let hits = embed_cycle_pair(&g, &c1, &c2).unwrap();
        prop_assert_eq!(hits.len(), 2);
        let gadgets = gadget_family(&g).unwrap();
        for (pairing, w) in hits {
            prop_assert!(pairing < PAIRINGS.len());
            let d = DoubleTreeDecomposition::new(&gadgets[pairing], w.clone());
            prop_assert!(d.is_valid());
            prop_assert_eq!(imbalance(&d).unwrap().max_imbalance(), 0);
            let (a, b) = map_witness(&g, pairing, &w).unwrap();
            let mut got = [a, b];
            let mut want = [c1.clone(), c2.clone()];
            got.sort();
            want.sort();
            prop_assert_eq!(got, want);
        }
    }

    #[test]
    fn gadgets_have_one_more_vertex(seed in any::<u64>(), n in 3usize..=10) {
        let g = random_hamiltonian_pair(n, &mut ChaCha8Rng::seed_from_u64(seed));
        for h in gadget_family(&g).unwrap() {
            prop_assert_eq!(h.vertex_count(), n + 1);
            prop_assert_eq!(h.edge_count(), g.edge_count());
            prop_assert_eq!(h.degree(1).unwrap() + h.degree(n + 1).unwrap(), 4);
        }
    }
}
