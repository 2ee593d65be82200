//! Increasing binary trees and their infix projection.

use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

use super::{OrdinalType, Permutation};
use crate::exact::rational::factorial;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Node {
    pub label: u32,
    pub left: Option<Box<Node>>,
    pub right: Option<Box<Node>>,
}

/// Kind of a node by which children it has.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum NodeKind {
    Leaf,
    Double,
    LeftOnly,
    RightOnly,
}

impl NodeKind {
    /// Node kind corresponding to an ordinal type under border `(−∞, −∞)`.
    pub fn of_type(t: OrdinalType) -> Self {
        match t {
            OrdinalType::Peak => NodeKind::Leaf,
            OrdinalType::Valley => NodeKind::Double,
            OrdinalType::DoubleFall => NodeKind::LeftOnly,
            OrdinalType::DoubleRise => NodeKind::RightOnly,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IncreasingBinaryTree {
    pub root: Option<Box<Node>>,
}

fn build(w: &[u32]) -> Option<Box<Node>> {
    let (i, &label) = w.iter().enumerate().min_by_key(|&(_, v)| *v)?;
    Some(Box::new(Node {
        label,
        left: build(&w[..i]),
        right: build(&w[i + 1..]),
    }))
}

impl IncreasingBinaryTree {
    /// The minimum is the root; the left and right factors give the subtrees.
    pub fn of(p: &Permutation) -> Self {
        IncreasingBinaryTree {
            root: build(p.values()),
        }
    }

    /// Infix reading.
    pub fn project(&self) -> Permutation {
        fn walk(n: &Option<Box<Node>>, out: &mut Vec<u32>) {
            if let Some(n) = n {
                walk(&n.left, out);
                out.push(n.label);
                walk(&n.right, out);
            }
        }
        let mut out = Vec::new();
        walk(&self.root, &mut out);
        Permutation(out)
    }

    /// `(label, level, kind)` for every node, in infix order.
    pub fn nodes(&self) -> Vec<(u32, usize, NodeKind)> {
        fn walk(n: &Option<Box<Node>>, level: usize, out: &mut Vec<(u32, usize, NodeKind)>) {
            if let Some(n) = n {
                walk(&n.left, level + 1, out);
                let kind = match (n.left.is_some(), n.right.is_some()) {
                    (false, false) => NodeKind::Leaf,
                    (true, true) => NodeKind::Double,
                    (true, false) => NodeKind::LeftOnly,
                    (false, true) => NodeKind::RightOnly,
                };
                out.push((n.label, level, kind));
                walk(&n.right, level + 1, out);
            }
        }
        let mut out = Vec::new();
        walk(&self.root, 0, &mut out);
        out
    }
}

impl fmt::Display for IncreasingBinaryTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn walk(n: &Option<Box<Node>>, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            match n {
                None => f.write_str("."),
                Some(n) => {
                    write!(f, "({} ", n.label)?;
                    walk(&n.left, f)?;
                    f.write_str(" ")?;
                    walk(&n.right, f)?;
                    f.write_str(")")
                }
            }
        }
        walk(&self.root, f)
    }
}

/// An unlabelled binary tree shape.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Shape {
    Empty,
    Node(Box<Shape>, Box<Shape>),
}

impl Shape {
    pub fn size(&self) -> usize {
        match self {
            Shape::Empty => 0,
            Shape::Node(l, r) => 1 + l.size() + r.size(),
        }
    }

    /// Number of increasing labellings, `n!/Π(subtree sizes)`.
    pub fn labellings(&self) -> BigInt {
        fn hooks(s: &Shape, acc: &mut BigInt) -> usize {
            match s {
                Shape::Empty => 0,
                Shape::Node(l, r) => {
                    let size = 1 + hooks(l, acc) + hooks(r, acc);
                    *acc *= size;
                    size
                }
            }
        }
        let mut prod = BigInt::from(1);
        let n = hooks(self, &mut prod);
        factorial(n as u64) / prod
    }

    /// Whether every node at a level of the given parity has two children.
    pub fn doubles_at_parity(&self, parity: usize) -> bool {
        fn walk(s: &Shape, level: usize, parity: usize) -> bool {
            match s {
                Shape::Empty => true,
                Shape::Node(l, r) => {
                    let double = **l != Shape::Empty && **r != Shape::Empty;
                    (level % 2 != parity || double)
                        && walk(l, level + 1, parity)
                        && walk(r, level + 1, parity)
                }
            }
        }
        walk(self, 0, parity)
    }
}

fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 1 {
        return vec![vec![total]];
    }
    (0..=total)
        .flat_map(|first| {
            compositions(total - first, parts - 1)
                .into_iter()
                .map(move |mut rest| {
                    rest.insert(0, first);
                    rest
                })
        })
        .collect()
}

/// Shapes of the grammar `Y = ε + ⟨X, •, X⟩`, `X = ⟨Y, •, Y⟩` with `3ν`
/// nodes: a root whose two children each carry two `Y` subtrees.
pub fn y_shapes(nu: usize) -> Vec<Shape> {
    if nu == 0 {
        return vec![Shape::Empty];
    }
    let mut out = Vec::new();
    for sizes in compositions(nu - 1, 4) {
        let subs: Vec<Vec<Shape>> = sizes.iter().map(|&s| y_shapes(s)).collect();
        for a in &subs[0] {
            for b in &subs[1] {
                for c in &subs[2] {
                    for d in &subs[3] {
                        let x1 = Shape::Node(Box::new(a.clone()), Box::new(b.clone()));
                        let x2 = Shape::Node(Box::new(c.clone()), Box::new(d.clone()));
                        out.push(Shape::Node(Box::new(x1), Box::new(x2)));
                    }
                }
            }
        }
    }
    out
}

/// Shapes of `X` with `3ν + 1` nodes.
pub fn x_shapes(nu: usize) -> Vec<Shape> {
    let mut out = Vec::new();
    for k in 0..=nu {
        for l in y_shapes(k) {
            for r in y_shapes(nu - k) {
                out.push(Shape::Node(Box::new(l.clone()), Box::new(r)));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dixonian::{dixon_series, egf_coefficient};
    use crate::exact::rational::binomial;
    use crate::perm::{classify, levels, Border};

    #[test]
    fn project_inverts_construction() {
        let p: Permutation = "12 8 7 2 5 10 3 6 13 9 1 4 11".parse().unwrap();
        let t = IncreasingBinaryTree::of(&p);
        assert_eq!(t.project(), p);
        let types = classify(&p, Border::MINUS_MINUS);
        let lv = levels(p.values());
        for (i, (label, level, kind)) in t.nodes().into_iter().enumerate() {
            assert_eq!(label, p.values()[i]);
            assert_eq!(level, lv[i]);
            assert_eq!(kind, NodeKind::of_type(types[i]));
        }
    }

    #[test]
    fn display() {
        let t = IncreasingBinaryTree::of(&"213".parse().unwrap());
        assert_eq!(t.to_string(), "(1 (2 . .) (3 . .))");
    }

    #[test]
    fn y_shape_counts() {
        let counts: Vec<usize> = (0..4).map(|nu| y_shapes(nu).len()).collect();
        assert_eq!(counts, vec![1, 1, 4, 22]);
        for nu in 0..4usize {
            let expected = binomial(4 * nu as u64, nu as u64) / BigInt::from(3 * nu + 1);
            assert_eq!(BigInt::from(y_shapes(nu).len()), expected);
        }
    }

    #[test]
    fn labelled_shapes_count_the_classes() {
        let p = dixon_series(10);
        for nu in 0..=3 {
            let ys = y_shapes(nu);
            assert!(ys
                .iter()
                .all(|s| s.size() == 3 * nu && s.doubles_at_parity(0)));
            let total: BigInt = ys.iter().map(Shape::labellings).sum();
            assert_eq!(total, egf_coefficient(&p.cmh(), 3 * nu).unwrap());
            let xs = x_shapes(nu);
            assert!(xs.iter().all(|s| s.doubles_at_parity(1)));
            let total: BigInt = xs.iter().map(Shape::labellings).sum();
            assert_eq!(total, egf_coefficient(&p.smh(), 3 * nu + 1).unwrap());
        }
        assert_eq!(
            y_shapes(2).iter().map(Shape::labellings).sum::<BigInt>(),
            40.into()
        );
    }
}
