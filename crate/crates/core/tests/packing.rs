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

mod common;

use treebalance::generate::petersen;
use treebalance::graph::{MultiGraph, Partition};
use treebalance::packing::verify_infeasibility_witness;
use treebalance::{pack_double_tree, PackOutcome};

#[test]
fn five_hundred_graphs_against_brute_force() {
    let (yes, no) = common::packer_suite(500, 11).unwrap();
    assert!(yes > 100 && no > 100, "yes={yes} no={no}");
}

#[test]
fn petersen_is_refuted_by_singletons() {
    let g = petersen();
    assert!(matches!(pack_double_tree(&g), PackOutcome::Infeasible(_)));
    assert!(verify_infeasibility_witness(&g, &Partition::singletons(10)).unwrap());
}

#[test]
fn tree_plus_edge_is_refuted() {
    let g = MultiGraph::from_edges(5, [(1, 2), (2, 3), (3, 4), (4, 5), (1, 5)]).unwrap();
    assert!(verify_infeasibility_witness(&g, &Partition::singletons(5)).unwrap());
}
