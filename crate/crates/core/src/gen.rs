//! Tree constructions: the exponential-BCF gadget family, the two-feature
//! running examples, two trees for a function with two minimum DNFs, and
//! seeded random trees for property testing.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::explain::Explainer;
use crate::model::{
    ClassId, DecisionTree, Domain, DomainSubset, FeatureId, Literal, Node, NodeId, NodeKind, Op, Operand,
    PartialAssignment, Restriction, Schema, Value,
};
use crate::{Error, Result};

fn binary_classes() -> Vec<String> {
    vec!["0".to_string(), "1".to_string()]
}

fn split(feature: u32, zero: u32, one: u32) -> Vec<(Literal, u32)> {
    vec![(Literal::eq(feature, 0), zero), (Literal::eq(feature, 1), one)]
}

/// The gadget chain with `2r+1` boolean features and `6r+3` nodes.
///
/// Gadget `k` tests `x_{2k-1}` then `x_{2k}`: `(0,0)` predicts 0, exactly one
/// zero predicts 1, `(1,1)` moves on to gadget `k+1`. The final gadget
/// predicts `x_{2r+1}`. Under the all-ones instance the prediction flips only
/// by zeroing `x_{2r+1}` or both features of some pair, so every choice of
/// one feature per pair plus `x_{2r+1}` is an AXp (`2^r` of them).
pub fn worst_case(r: usize) -> Result<DecisionTree> {
    if r == 0 {
        return Err(Error::Precondition("worst_case needs r >= 1".into()));
    }
    let mut nodes = Vec::with_capacity(6 * r + 3);
    let mut next = 1u32;
    let mut id = || {
        let v = next;
        next += 1;
        v
    };
    let mut entry = id();
    for k in 1..=r as u32 {
        let (a, b, c) = (entry, id(), id());
        let (l00, l01, l10) = (id(), id(), id());
        let cont = id();
        nodes.push(Node::internal(a, 2 * k - 1, split(2 * k - 1, c, b)));
        nodes.push(Node::internal(c, 2 * k, split(2 * k, l00, l01)));
        nodes.push(Node::internal(b, 2 * k, split(2 * k, l10, cont)));
        nodes.push(Node::leaf(l00, 0));
        nodes.push(Node::leaf(l01, 1));
        nodes.push(Node::leaf(l10, 1));
        entry = cont;
    }
    let last = 2 * r as u32 + 1;
    let (l0, l1) = (id(), id());
    nodes.push(Node::internal(entry, last, split(last, l0, l1)));
    nodes.push(Node::leaf(l0, 0));
    nodes.push(Node::leaf(l1, 1));
    DecisionTree::new(Schema::boolean(2 * r + 1), binary_classes(), nodes, NodeId(1))
}

/// `(T1, T2, T3)` over two boolean features.
///
/// T1 and T2 both compute `x1 ∨ x2` (T1 tests `x1` first, T2 tests `x2`
/// first). T3 computes `x1 ∨ ¬x2`.
pub fn running_examples() -> (DecisionTree, DecisionTree, DecisionTree) {
    let schema = Schema::boolean(2);
    let t1 = vec![
        Node::internal(1, 1, split(1, 2, 3)),
        Node::internal(2, 2, split(2, 4, 5)),
        Node::leaf(3, 1),
        Node::leaf(4, 0),
        Node::leaf(5, 1),
    ];
    let t2 = vec![
        Node::internal(1, 2, split(2, 2, 3)),
        Node::internal(2, 1, split(1, 4, 5)),
        Node::leaf(3, 1),
        Node::leaf(4, 0),
        Node::leaf(5, 1),
    ];
    let t3 = vec![
        Node::internal(1, 1, split(1, 2, 3)),
        Node::internal(2, 2, split(2, 4, 5)),
        Node::leaf(3, 1),
        Node::leaf(4, 1),
        Node::leaf(5, 0),
    ];
    let build = |nodes| DecisionTree::new(schema.clone(), binary_classes(), nodes, NodeId(1)).unwrap();
    (build(t1), build(t2), build(t3))
}

/// Minterms (index `8·x4 + 4·x3 + 2·x2 + x1`) of the 4-variable function
/// whose prime implicants form two disjoint minimum covers.
pub const EXAMPLE_FUNCTION_MINTERMS: [u32; 8] = [0, 1, 5, 7, 8, 10, 14, 15];

/// Full-evaluation tree over boolean features, testing them in `order`.
pub fn full_tree(m: usize, order: &[u32], f: impl Fn(u32) -> bool) -> Result<DecisionTree> {
    let mut nodes = Vec::new();
    let mut next = 1u32;
    // (node id, depth, partial minterm)
    let mut stack = vec![(1u32, 0usize, 0u32)];
    next += 1;
    while let Some((id, depth, bits)) = stack.pop() {
        if depth == order.len() {
            nodes.push(Node::leaf(id, f(bits) as u32));
            continue;
        }
        let feat = order[depth];
        let (zero, one) = (next, next + 1);
        next += 2;
        nodes.push(Node::internal(id, feat, split(feat, zero, one)));
        stack.push((one, depth + 1, bits | 1 << (feat - 1)));
        stack.push((zero, depth + 1, bits));
    }
    DecisionTree::new(Schema::boolean(m), binary_classes(), nodes, NodeId(1))
}

/// Two structurally different trees (`x1..x4` and `x4..x1` orders) for the
/// function of [`EXAMPLE_FUNCTION_MINTERMS`].
pub fn example_function_trees() -> (DecisionTree, DecisionTree) {
    let f = |bits: u32| EXAMPLE_FUNCTION_MINTERMS.contains(&bits);
    (full_tree(4, &[1, 2, 3, 4], f).unwrap(), full_tree(4, &[4, 3, 2, 1], f).unwrap())
}

#[derive(Clone, Debug)]
pub struct RandomTreeConfig {
    pub depth: usize,
    pub classes: usize,
    /// Chance of stopping early at a non-root node.
    pub leaf_prob: f64,
}

impl Default for RandomTreeConfig {
    fn default() -> Self {
        RandomTreeConfig {
            depth: 4,
            classes: 2,
            leaf_prob: 0.2,
        }
    }
}

/// Seeded random tree with two classes; every node partitions the domain
/// reaching it.
pub fn random_tree(schema: &Schema, depth: usize, seed: u64) -> DecisionTree {
    random_tree_with(
        schema,
        &RandomTreeConfig {
            depth,
            ..RandomTreeConfig::default()
        },
        seed,
    )
}

pub fn random_tree_with(schema: &Schema, cfg: &RandomTreeConfig, seed: u64) -> DecisionTree {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut nodes = Vec::new();
    let mut next = 1u32;
    grow(schema, cfg, &mut rng, &DomainSubset::full(schema), 0, &mut next, &mut nodes);
    let classes = (0..cfg.classes).map(|c| c.to_string()).collect();
    DecisionTree::new(schema.clone(), classes, nodes, NodeId(1)).expect("generator builds well-formed trees")
}

fn splittable(schema: &Schema, dom: &DomainSubset, f: FeatureId) -> bool {
    match dom.restriction(schema, f) {
        Restriction::Values(m) => m.count() >= 2,
        Restriction::Ints(r) => r.len() > 1 || r.first().is_some_and(|(a, b)| a < b),
        Restriction::Reals(r) => r.len() > 1 || r.first().is_some_and(|i| i.hi - i.lo > 1e-6),
    }
}

fn edges_for(schema: &Schema, dom: &DomainSubset, f: FeatureId, rng: &mut ChaCha8Rng) -> Vec<Literal> {
    let domain = &schema.features()[f.index()].domain;
    match (dom.restriction(schema, f), domain) {
        (Restriction::Values(_), Domain::Boolean) => vec![Literal::eq(f.0, 0), Literal::eq(f.0, 1)],
        (Restriction::Values(mask), _) => {
            let mut vals: Vec<Value> = mask.iter().map(|k| domain.value_at(k).unwrap()).collect();
            vals.shuffle(rng);
            let groups = rng.gen_range(2..=vals.len().min(3));
            let mut cuts: Vec<usize> = (1..vals.len()).collect();
            cuts.shuffle(rng);
            let mut cuts: Vec<usize> = cuts[..groups - 1].to_vec();
            cuts.sort_unstable();
            cuts.push(vals.len());
            let mut start = 0;
            cuts.into_iter()
                .map(|end| {
                    let group = vals[start..end].to_vec();
                    start = end;
                    Literal::new(f, Op::In, Operand::Set(group))
                })
                .collect()
        }
        (Restriction::Ints(ranges), _) => {
            let (lo, hi) = (ranges[0].0, ranges.last().unwrap().1);
            let t = rng.gen_range(lo..hi);
            if hi - lo >= 2 && rng.gen_bool(0.3) {
                let mid = rng.gen_range(lo + 1..hi);
                vec![
                    Literal::cmp(f.0, Op::Lt, mid),
                    Literal::cmp(f.0, Op::Eq, mid),
                    Literal::cmp(f.0, Op::Gt, mid),
                ]
            } else {
                vec![Literal::cmp(f.0, Op::Le, t), Literal::cmp(f.0, Op::Gt, t)]
            }
        }
        (Restriction::Reals(iv), _) => {
            let (lo, hi) = (iv[0].lo, iv.last().unwrap().hi);
            let t = lo + (hi - lo) * rng.gen_range(0.2..0.8);
            if rng.gen_bool(0.5) {
                vec![Literal::cmp(f.0, Op::Lt, t), Literal::cmp(f.0, Op::Ge, t)]
            } else {
                vec![Literal::cmp(f.0, Op::Le, t), Literal::cmp(f.0, Op::Gt, t)]
            }
        }
    }
}

fn grow(
    schema: &Schema,
    cfg: &RandomTreeConfig,
    rng: &mut ChaCha8Rng,
    dom: &DomainSubset,
    depth: usize,
    next: &mut u32,
    nodes: &mut Vec<Node>,
) -> u32 {
    let id = *next;
    *next += 1;
    let candidates: Vec<FeatureId> = schema
        .features()
        .iter()
        .map(|f| f.id)
        .filter(|f| splittable(schema, dom, *f))
        .collect();
    let stop = depth >= cfg.depth || candidates.is_empty() || (depth > 0 && rng.gen_bool(cfg.leaf_prob));
    if stop {
        let class = rng.gen_range(0..cfg.classes.max(1)) as u32;
        nodes.push(Node::leaf(id, class));
        return id;
    }
    let f = *candidates.choose(rng).unwrap();
    let literals = edges_for(schema, dom, f, rng);
    let slot = nodes.len();
    nodes.push(Node::leaf(id, 0));
    let mut edges = Vec::with_capacity(literals.len());
    for lit in literals {
        let mut d = dom.clone();
        d.restrict(schema, &lit).expect("generated literal fits the domain");
        let child = grow(schema, cfg, rng, &d, depth + 1, next, nodes);
        edges.push((lit, child));
    }
    nodes[slot] = Node::internal(id, f.0, edges);
    id
}

/// Flips the class of the deepest leaf (first in path order) to the next
/// class label.
pub fn mutate_leaf(tree: &DecisionTree) -> DecisionTree {
    let paths = tree.paths();
    let deepest = paths.iter().fold(&paths[0], |best, p| if p.nodes.len() > best.nodes.len() { p } else { best });
    let n = tree.classes().len() as u32;
    let leaf = deepest.leaf();
    let nodes = tree
        .nodes()
        .iter()
        .map(|node| match node.kind {
            NodeKind::Leaf { class } if node.id == leaf => Node {
                id: node.id,
                kind: NodeKind::Leaf {
                    class: ClassId((class.0 + 1) % n),
                },
            },
            _ => node.clone(),
        })
        .collect();
    tree.with_nodes(nodes).unwrap()
}

/// A predictive-equivalent tree built by splitting on features in a seeded
/// random order, one edge per value, stopping as soon as the original tree's
/// prediction is fixed. Enumerable schemas only.
pub fn restructure(tree: &DecisionTree, seed: u64) -> Result<DecisionTree> {
    let schema = tree.schema();
    if schema.point_count().is_none() {
        return Err(Error::Unsupported("restructure needs enumerable domains".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<FeatureId> = schema.features().iter().map(|f| f.id).collect();
    order.shuffle(&mut rng);
    let ex = Explainer::new(tree);
    let mut nodes = Vec::new();
    let mut next = 1u32;
    rebuild(&ex, &order, PartialAssignment::empty(), 0, &mut next, &mut nodes)?;
    DecisionTree::new(schema.clone(), tree.classes().to_vec(), nodes, NodeId(1))
}

fn rebuild(
    ex: &Explainer<'_>,
    order: &[FeatureId],
    a: PartialAssignment,
    depth: usize,
    next: &mut u32,
    nodes: &mut Vec<Node>,
) -> Result<u32> {
    let id = *next;
    *next += 1;
    if let Some(c) = ex.predict_with_missing(&a)? {
        nodes.push(Node::leaf(id, c.0));
        return Ok(id);
    }
    let f = *order
        .get(depth)
        .ok_or_else(|| Error::Precondition(format!("prediction not fixed by a complete point ({a})")))?;
    let domain = &ex.tree().schema().features()[f.index()].domain;
    let n = domain.size().unwrap() as usize;
    let slot = nodes.len();
    nodes.push(Node::leaf(id, 0));
    let mut edges = Vec::with_capacity(n);
    for k in 0..n {
        let lit = Literal::eq(f.0, domain.value_at(k).unwrap());
        let mut lits = a.literals().to_vec();
        lits.push(lit.clone());
        let child = rebuild(ex, order, PartialAssignment::new(lits), depth + 1, next, nodes)?;
        edges.push((lit, child));
    }
    nodes[slot] = Node::internal(id, f.0, edges);
    Ok(id)
}

#[cfg(test)]
mod tests;
