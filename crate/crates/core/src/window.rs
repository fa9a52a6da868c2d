//! Exhaustive search helpers over finite windows of an infinite carrier.

use rayon::prelude::*;

use crate::error::Result;
use crate::group::GroupElement;
use crate::report::Witness;

/// A finite, deterministically ordered slice of a carrier together with the
/// coordinate bound that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Window {
    pub bound: i64,
    pub elements: Vec<GroupElement>,
}

impl Window {
    pub fn new(bound: i64, mut elements: Vec<GroupElement>) -> Self {
        elements.sort();
        elements.dedup();
        Window { bound, elements }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, GroupElement> {
        self.elements.iter()
    }

    /// Elements satisfying `keep`, in window order.
    pub fn filter(&self, keep: impl Fn(&GroupElement) -> bool) -> Vec<GroupElement> {
        self.elements.iter().filter(|x| keep(x)).cloned().collect()
    }
}

pub(crate) fn search_1<F>(xs: &[GroupElement], f: F) -> Result<Option<Witness>>
where
    F: Fn(&GroupElement) -> Result<Option<Witness>>,
{
    for x in xs {
        if let Some(w) = f(x)? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// First failing pair in `(x, y)` order; the outer loop runs in parallel but
/// the reported pair is the first one in sequential order.
pub(crate) fn search_2<F>(xs: &[GroupElement], ys: &[GroupElement], f: F) -> Result<Option<Witness>>
where
    F: Fn(&GroupElement, &GroupElement) -> Result<Option<Witness>> + Sync,
{
    xs.par_iter()
        .map(|x| search_1(ys, |y| f(x, y)))
        .find_first(|r| !matches!(r, Ok(None)))
        .unwrap_or(Ok(None))
}

pub(crate) fn search_3<F>(xs: &[GroupElement], f: F) -> Result<Option<Witness>>
where
    F: Fn(&GroupElement, &GroupElement, &GroupElement) -> Result<Option<Witness>> + Sync,
{
    xs.par_iter()
        .map(|x| {
            for y in xs {
                if let Some(w) = search_1(xs, |z| f(x, y, z))? {
                    return Ok(Some(w));
                }
            }
            Ok(None)
        })
        .find_first(|r| !matches!(r, Ok(None)))
        .unwrap_or(Ok(None))
}
