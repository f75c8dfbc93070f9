//! Formal sums with coefficients in GF(2).

use std::collections::BTreeSet;
use std::fmt;

/// A finite GF(2) linear combination; adding a cell twice cancels it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Z2Chain<T: Ord> {
    support: BTreeSet<T>,
}

impl<T: Ord> Default for Z2Chain<T> {
    fn default() -> Self {
        Self { support: BTreeSet::new() }
    }
}

impl<T: Ord> Z2Chain<T> {
    pub fn new() -> Self {
        Self::default()
    }

    /// Toggles `cell` in the support.
    pub fn add(&mut self, cell: T) {
        if !self.support.remove(&cell) {
            self.support.insert(cell);
        }
    }

    pub fn add_chain(&mut self, other: Z2Chain<T>) {
        for c in other.support {
            self.add(c);
        }
    }

    pub fn contains(&self, cell: &T) -> bool {
        self.support.contains(cell)
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &T> {
        self.support.iter()
    }

    pub fn support(&self) -> &BTreeSet<T> {
        &self.support
    }

    pub fn map<U: Ord>(&self, f: impl FnMut(&T) -> U) -> Z2Chain<U> {
        self.iter().map(f).collect()
    }
}

impl<T: Ord> FromIterator<T> for Z2Chain<T> {
    fn from_iter<I: IntoIterator<Item = T>>(iter: I) -> Self {
        let mut c = Z2Chain::new();
        for x in iter {
            c.add(x);
        }
        c
    }
}

impl<T: Ord> IntoIterator for Z2Chain<T> {
    type Item = T;
    type IntoIter = std::collections::btree_set::IntoIter<T>;
    fn into_iter(self) -> Self::IntoIter {
        self.support.into_iter()
    }
}

impl<T: Ord + fmt::Display> fmt::Display for Z2Chain<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "0");
        }
        for (k, c) in self.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}
