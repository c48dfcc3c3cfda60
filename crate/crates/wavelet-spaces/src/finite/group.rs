//! Finite groups as fully validated multiplication tables, with the
//! probability Haar measure implicit in every later inner product.

use crate::error::{Error, Result};

/// A finite group presented by its complete multiplication table. Every
/// constructor runs the full axiom check: closure, a two-sided identity,
/// two-sided inverses, and associativity on all triples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    /// Row-major table: entry at x*order + y is the index of x*y.
    mul: Vec<usize>,
    inv: Vec<usize>,
    identity: usize,
}

/// Group constructions accepted by `build_group`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(usize),
    Dihedral(usize),
    /// Upper unitriangular 3x3 matrices over the integers mod p; order p^3.
    FiniteHeisenberg(usize),
}

impl FiniteGroup {
    /// Validates and wraps a row-major multiplication table over the
    /// element indices 0..order.
    pub fn from_table(order: usize, mul: Vec<usize>) -> Result<FiniteGroup> {
        if order == 0 {
            return Err(Error::BadGroupSpec {
                reason: "group order must be at least 1".into(),
            });
        }
        if mul.len() != order * order {
            return Err(Error::BadGroupSpec {
                reason: format!(
                    "table has {} entries, expected {}",
                    mul.len(),
                    order * order
                ),
            });
        }
        if mul.iter().any(|&e| e >= order) {
            return Err(Error::BadGroupSpec {
                reason: "table entry out of range".into(),
            });
        }
        let at = |x: usize, y: usize| mul[x * order + y];
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| at(e, x) == x && at(x, e) == x))
            .ok_or_else(|| Error::BadGroupSpec {
                reason: "no two-sided identity".into(),
            })?;
        let inv = (0..order)
            .map(|x| {
                (0..order)
                    .find(|&y| at(x, y) == identity && at(y, x) == identity)
                    .ok_or_else(|| Error::BadGroupSpec {
                        reason: format!("element {x} has no two-sided inverse"),
                    })
            })
            .collect::<Result<Vec<usize>>>()?;
        for x in 0..order {
            for y in 0..order {
                for z in 0..order {
                    if at(at(x, y), z) != at(x, at(y, z)) {
                        return Err(Error::BadGroupSpec {
                            reason: format!("associativity fails at ({x},{y},{z})"),
                        });
                    }
                }
            }
        }
        Ok(FiniteGroup {
            order,
            mul,
            inv,
            identity,
        })
    }

    /// Integers mod n under addition.
    pub fn cyclic(n: usize) -> Result<FiniteGroup> {
        if n == 0 {
            return Err(Error::BadGroupSpec {
                reason: "cyclic group needs n >= 1".into(),
            });
        }
        let mut mul = vec![0usize; n * n];
        for x in 0..n {
            for y in 0..n {
                mul[x * n + y] = (x + y) % n;
            }
        }
        FiniteGroup::from_table(n, mul)
    }

    /// Symmetries of the regular n-gon, order 2n. Element a + n*b stands
    /// for r^a s^b with s r = r^{-1} s.
    pub fn dihedral(n: usize) -> Result<FiniteGroup> {
        if n == 0 {
            return Err(Error::BadGroupSpec {
                reason: "dihedral group needs n >= 1".into(),
            });
        }
        let order = 2 * n;
        let mut mul = vec![0usize; order * order];
        for a in 0..n {
            for b in 0..2 {
                for c in 0..n {
                    for d in 0..2 {
                        // r^a s^b r^c s^d = r^{a + (-1)^b c} s^{b+d}
                        let rot = if b == 0 { (a + c) % n } else { (a + n - c) % n };
                        let flip = (b + d) % 2;
                        mul[(a + n * b) * order + (c + n * d)] = rot + n * flip;
                    }
                }
            }
        }
        FiniteGroup::from_table(order, mul)
    }

    /// Heisenberg group over the integers mod p, order p^3. Element
    /// a + p*b + p^2*c is the unitriangular matrix with top row (1, a, c)
    /// and middle row (0, 1, b).
    pub fn heisenberg_mod(p: usize) -> Result<FiniteGroup> {
        if !matches!(p, 2 | 3 | 5) {
            return Err(Error::BadGroupSpec {
                reason: format!("heisenberg modulus must be a prime in {{2, 3, 5}}, got {p}"),
            });
        }
        let order = p * p * p;
        let mut mul = vec![0usize; order * order];
        for a in 0..p {
            for b in 0..p {
                for c in 0..p {
                    let lhs = a + p * b + p * p * c;
                    for a2 in 0..p {
                        for b2 in 0..p {
                            for c2 in 0..p {
                                let rhs = a2 + p * b2 + p * p * c2;
                                let a3 = (a + a2) % p;
                                let b3 = (b + b2) % p;
                                let c3 = (c + c2 + a * b2) % p;
                                mul[lhs * order + rhs] = a3 + p * b3 + p * p * c3;
                            }
                        }
                    }
                }
            }
        }
        FiniteGroup::from_table(order, mul)
    }

    /// Direct product; element x*|H| + y stands for the pair (x, y).
    pub fn direct_product(&self, other: &FiniteGroup) -> Result<FiniteGroup> {
        let order = self.order * other.order;
        let mut mul = vec![0usize; order * order];
        for x1 in 0..self.order {
            for y1 in 0..other.order {
                let lhs = x1 * other.order + y1;
                for x2 in 0..self.order {
                    for y2 in 0..other.order {
                        let rhs = x2 * other.order + y2;
                        mul[lhs * order + rhs] =
                            self.mul(x1, x2) * other.order + other.mul(y1, y2);
                    }
                }
            }
        }
        FiniteGroup::from_table(order, mul)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mul[x * self.order + y]
    }

    pub fn inv(&self, x: usize) -> usize {
        self.inv[x]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }
}

/// Builds the group named by `spec`.
pub fn build_group(spec: &GroupSpec) -> Result<FiniteGroup> {
    match *spec {
        GroupSpec::Cyclic(n) => FiniteGroup::cyclic(n),
        GroupSpec::Dihedral(n) => FiniteGroup::dihedral(n),
        GroupSpec::FiniteHeisenberg(p) => FiniteGroup::heisenberg_mod(p),
    }
}
