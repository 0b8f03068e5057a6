//! Counting sequences with bounded order statistics.

pub mod brute;
pub mod counting;
pub mod numbers;
pub mod partitions;

pub use brute::{brute_force_lattice_paths, brute_force_parking, brute_force_reluctant, TreeClass};
pub use counting::{closed_form_count, count_bounded, counting_grid, BoundSpec, CountRecord, Family};
pub use partitions::{constant_term, goncarov_partition, ordered_partitions, OrderedPartition, OrderedPartitions};
