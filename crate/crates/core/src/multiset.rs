//! Finite multisets kept as sorted vectors.

use std::fmt;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Multiset<T: Ord>(Vec<T>);

impl<T: Ord> Multiset<T> {
    pub fn new() -> Self {
        Multiset(Vec::new())
    }

    pub fn from_vec(mut items: Vec<T>) -> Self {
        items.sort();
        Multiset(items)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, T> {
        self.0.iter()
    }

    pub fn as_slice(&self) -> &[T] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<T> {
        self.0
    }

    pub fn insert(&mut self, item: T) {
        let at = self.0.partition_point(|x| x <= &item);
        self.0.insert(at, item);
    }

    pub fn with(mut self, item: T) -> Self {
        self.insert(item);
        self
    }

    /// Removes one occurrence; returns whether there was one.
    pub fn remove_one(&mut self, item: &T) -> bool {
        match self.0.binary_search(item) {
            Ok(i) => {
                self.0.remove(i);
                true
            }
            Err(_) => false,
        }
    }

    pub fn without(&self, item: &T) -> Option<Self>
    where
        T: Clone,
    {
        let mut out = self.clone();
        out.remove_one(item).then_some(out)
    }

    pub fn contains(&self, item: &T) -> bool {
        self.0.binary_search(item).is_ok()
    }

    pub fn count(&self, item: &T) -> usize {
        self.0.iter().filter(|x| *x == item).count()
    }

    /// Distinct elements in order.
    pub fn distinct(&self) -> impl Iterator<Item = &T> {
        self.0
            .iter()
            .enumerate()
            .filter(|(i, x)| *i == 0 || self.0[i - 1] != **x)
            .map(|(_, x)| x)
    }

    pub fn sum(&self, other: &Self) -> Self
    where
        T: Clone,
    {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        Multiset::from_vec(v)
    }

    /// `self - other`, defined only when `other` is a sub-multiset.
    pub fn minus(&self, other: &Self) -> Option<Self>
    where
        T: Clone,
    {
        let mut out = Vec::with_capacity(self.0.len());
        let mut j = 0;
        for x in &self.0 {
            if j < other.0.len() && other.0[j] == *x {
                j += 1;
            } else if j < other.0.len() && other.0[j] < *x {
                return None;
            } else {
                out.push(x.clone());
            }
        }
        (j == other.0.len()).then_some(Multiset(out))
    }

    pub fn is_submultiset(&self, other: &Self) -> bool
    where
        T: Clone,
    {
        other.minus(self).is_some()
    }

    pub fn map<U: Ord>(&self, f: impl FnMut(&T) -> U) -> Multiset<U> {
        Multiset::from_vec(self.0.iter().map(f).collect())
    }

    pub fn filter(&self, mut f: impl FnMut(&T) -> bool) -> Self
    where
        T: Clone,
    {
        Multiset(self.0.iter().filter(|x| f(x)).cloned().collect())
    }

    /// Collapses repeated elements.
    pub fn dedup(&self) -> Self
    where
        T: Clone,
    {
        let mut v = self.0.clone();
        v.dedup();
        Multiset(v)
    }
}

impl<T: Ord> FromIterator<T> for Multiset<T> {
    fn from_iter<I: IntoIterator<Item = T>>(iter: I) -> Self {
        Multiset::from_vec(iter.into_iter().collect())
    }
}

impl<T: Ord> IntoIterator for Multiset<T> {
    type Item = T;
    type IntoIter = std::vec::IntoIter<T>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}

impl<'a, T: Ord> IntoIterator for &'a Multiset<T> {
    type Item = &'a T;
    type IntoIter = std::slice::Iter<'a, T>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl<T: Ord + fmt::Debug> fmt::Debug for Multiset<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.iter()).finish()
    }
}

/// Writes the elements separated by `, `.
pub(crate) fn write_list<T: Ord + fmt::Display>(
    f: &mut fmt::Formatter<'_>,
    items: &Multiset<T>,
) -> fmt::Result {
    for (i, x) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_insensitive_multiplicity_sensitive() {
        let a = Multiset::from_vec(vec![3, 1, 2]);
        let b = Multiset::from_vec(vec![2, 3, 1]);
        assert_eq!(a, b);
        assert_ne!(a, Multiset::from_vec(vec![1, 2, 3, 3]));
    }

    #[test]
    fn minus_requires_submultiset() {
        let a = Multiset::from_vec(vec![1, 1, 2, 5]);
        assert_eq!(a.minus(&Multiset::from_vec(vec![1, 5])), Some(Multiset::from_vec(vec![1, 2])));
        assert_eq!(a.minus(&Multiset::from_vec(vec![1, 1, 1])), None);
        assert_eq!(a.minus(&Multiset::from_vec(vec![3])), None);
        assert_eq!(a.minus(&Multiset::from_vec(vec![9])), None);
        assert!(Multiset::from_vec(vec![2, 1]).is_submultiset(&a));
    }

    #[test]
    fn insert_and_remove() {
        let mut a = Multiset::from_vec(vec![4, 1]);
        a.insert(2);
        a.insert(4);
        assert_eq!(a.as_slice(), &[1, 2, 4, 4]);
        assert!(a.remove_one(&4));
        assert!(!a.remove_one(&7));
        assert_eq!(a.count(&4), 1);
        assert_eq!(a.distinct().copied().collect::<Vec<_>>(), vec![1, 2, 4]);
    }
}
