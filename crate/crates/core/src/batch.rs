//! Data-parallel helpers. With the `parallel` feature they fan out over
//! rayon; without it they run on the calling thread. Output order always
//! matches input order.

use crate::coloring::{MagicKind, TotalColoring};
use crate::error::Result;
use crate::graph::Graph;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// `items.map(f)` in input order.
pub fn map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        map_seq(items, f)
    }
}

/// Sequential reference for [`map`].
pub fn map_seq<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(f).collect()
}

/// `(0..n).filter_map(f)` in index order.
pub fn filter_map_range<U, F>(n: u64, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(u64) -> Option<U> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().filter_map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        filter_map_range_seq(n, f)
    }
}

/// Sequential reference for [`filter_map_range`].
pub fn filter_map_range_seq<U, F>(n: u64, f: F) -> Vec<U>
where
    F: Fn(u64) -> Option<U>,
{
    (0..n).filter_map(f).collect()
}

/// [`crate::rla::color_tree`] over many trees.
pub fn color_trees(trees: &[Graph], kind: MagicKind) -> Vec<Result<TotalColoring>> {
    map(trees, |t| crate::rla::color_tree(t, kind))
}

/// Sequential reference for [`color_trees`].
pub fn color_trees_seq(trees: &[Graph], kind: MagicKind) -> Vec<Result<TotalColoring>> {
    map_seq(trees, |t| crate::rla::color_tree(t, kind))
}
