use serde::{Deserialize, Serialize};

/// Z/2 degree of a homogeneous vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_bit(b: usize) -> Parity {
        if b.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn bit(self) -> usize {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    pub fn is_even(self) -> bool {
        self == Parity::Even
    }

    /// Parity of a product or tensor.
    pub fn plus(self, o: Parity) -> Parity {
        Parity::from_bit(self.bit() + o.bit())
    }

    /// True when the Koszul sign `(-1)^{|a||b|}` is `-1`.
    pub fn koszul_negative(self, o: Parity) -> bool {
        self.is_odd() && o.is_odd()
    }
}

/// A finite-dimensional superspace with labelled homogeneous basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedSpace {
    pub labels: Vec<String>,
    pub parity: Vec<Parity>,
}

impl GradedSpace {
    pub fn new(labels: Vec<String>, parity: Vec<Parity>) -> Self {
        assert_eq!(labels.len(), parity.len(), "one parity per basis label");
        GradedSpace { labels, parity }
    }

    /// Unlabelled space with the given parities.
    pub fn anonymous(parity: Vec<Parity>) -> Self {
        let labels = (0..parity.len()).map(|i| format!("b{i}")).collect();
        GradedSpace { labels, parity }
    }

    pub fn dim(&self) -> usize {
        self.parity.len()
    }

    pub fn dim_even(&self) -> usize {
        self.parity.iter().filter(|p| p.is_even()).count()
    }

    pub fn dim_odd(&self) -> usize {
        self.parity.iter().filter(|p| p.is_odd()).count()
    }

    /// The pair `(dim_even, dim_odd)`.
    pub fn sdim(&self) -> (usize, usize) {
        (self.dim_even(), self.dim_odd())
    }
}
