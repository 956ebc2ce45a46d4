use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Label of the single element of the monoidal unit.
pub const UNIT_LABEL: &str = "*";

#[derive(Debug)]
struct Inner {
    elements: Vec<String>,
    index: HashMap<String, usize>,
}

/// A finite set of labelled elements in a fixed canonical order.
///
/// Cloning is cheap; the element table is shared.
#[derive(Clone, Serialize, Deserialize)]
#[serde(try_from = "RawFinSet", into = "RawFinSet")]
pub struct FinSet(Arc<Inner>);

#[derive(Serialize, Deserialize)]
struct RawFinSet {
    elements: Vec<String>,
}

impl TryFrom<RawFinSet> for FinSet {
    type Error = Error;

    fn try_from(raw: RawFinSet) -> Result<Self> {
        FinSet::new(raw.elements)
    }
}

impl From<FinSet> for RawFinSet {
    fn from(set: FinSet) -> Self {
        RawFinSet {
            elements: set.0.elements.clone(),
        }
    }
}

impl FinSet {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let elements: Vec<String> = labels.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(elements.len());
        for (i, e) in elements.iter().enumerate() {
            if index.insert(e.clone(), i).is_some() {
                return Err(Error::DuplicateElement(e.clone()));
            }
        }
        Ok(FinSet(Arc::new(Inner { elements, index })))
    }

    /// The monoidal unit `{*}`.
    pub fn unit() -> Self {
        FinSet::new([UNIT_LABEL]).expect("singleton labels are distinct")
    }

    pub fn empty() -> Self {
        FinSet::new(Vec::<String>::new()).expect("empty set")
    }

    /// `{0, 1, ..., n-1}`.
    pub fn range(n: usize) -> Self {
        FinSet::new((0..n).map(|i| i.to_string())).expect("numerals are distinct")
    }

    /// `{prefix0, prefix1, ...}`; handy for keeping test sets visually apart.
    pub fn named(prefix: &str, n: usize) -> Self {
        FinSet::new((0..n).map(|i| format!("{prefix}{i}"))).expect("labels are distinct")
    }

    pub fn len(&self) -> usize {
        self.0.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.0.elements
    }

    pub fn label(&self, i: usize) -> &str {
        &self.0.elements[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.0.index.get(label).copied()
    }

    pub(crate) fn require(&self, label: &str) -> Result<usize> {
        self.index_of(label).ok_or_else(|| Error::UnknownElement {
            element: label.to_string(),
            set: self.to_string(),
        })
    }

    /// Cartesian product with canonical `(x,y)` labels, first factor major.
    pub fn product(&self, other: &FinSet) -> FinSet {
        let mut labels = Vec::with_capacity(self.len() * other.len());
        for x in self.elements() {
            for y in other.elements() {
                labels.push(pair_label(x, y));
            }
        }
        FinSet::new(labels).expect("pair labels of distinct elements are distinct")
    }

    pub fn is_unit(&self) -> bool {
        self.len() == 1 && self.label(0) == UNIT_LABEL
    }
}

pub fn product(x: &FinSet, y: &FinSet) -> FinSet {
    x.product(y)
}

pub(crate) fn pair_label(x: &str, y: &str) -> String {
    format!("({x},{y})")
}

impl PartialEq for FinSet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.elements == other.0.elements
    }
}

impl Eq for FinSet {}

impl std::hash::Hash for FinSet {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.elements.hash(state);
    }
}

impl fmt::Display for FinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const SHOWN: usize = 8;
        write!(f, "{{")?;
        for (i, e) in self.elements().iter().take(SHOWN).enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        if self.len() > SHOWN {
            write!(f, ",... ({} elements)", self.len())?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for FinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinSet{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_labels_and_order() {
        let x = FinSet::range(2);
        let u = FinSet::new(["u"]).unwrap();
        assert_eq!(x.product(&u).elements(), ["(0,u)", "(1,u)"]);

        let ab = FinSet::new(["a", "b"]).unwrap();
        let xy = FinSet::new(["x", "y"]).unwrap();
        let p = ab.product(&xy);
        assert_eq!(p.len(), 4);
        assert_eq!(p.elements(), ["(a,x)", "(a,y)", "(b,x)", "(b,y)"]);
    }

    #[test]
    fn unit_products_are_not_strict() {
        let a = FinSet::new(["a", "b", "c"]).unwrap();
        let ia = FinSet::unit().product(&a);
        assert_eq!(ia.len(), a.len());
        assert_ne!(ia, a);
        assert_ne!(ia, a.product(&FinSet::unit()));
        assert_eq!(ia.label(0), "(*,a)");
    }

    #[test]
    fn duplicates_rejected() {
        assert_eq!(
            FinSet::new(["a", "a"]).unwrap_err(),
            Error::DuplicateElement("a".into())
        );
    }

    #[test]
    fn json_shape() {
        let s = FinSet::new(["p", "q"]).unwrap();
        let text = serde_json::to_string(&s).unwrap();
        assert_eq!(text, r#"{"elements":["p","q"]}"#);
        let back: FinSet = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s);
        assert!(serde_json::from_str::<FinSet>(r#"{"elements":["p","p"]}"#).is_err());
    }
}
