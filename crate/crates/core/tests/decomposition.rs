mod common;

#[test]
fn petunia_partitions_on_random_petunias() {
    common::decomposition::petunia_partitions(11, 200).unwrap();
}

#[test]
fn outerplanar_split_over_all_root_edges() {
    common::decomposition::outerplanar_splits(12, 200).unwrap();
}

#[test]
fn layered_five_coloring_claims_hold_on_random_instances() {
    common::decomposition::layered_colorings(41, 300, 2..=5).unwrap();
}
