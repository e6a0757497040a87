//! Seeded random trees and networks for tests, benchmarks and the CLI.

use crate::classify::{is_normal, is_tree_child};
use crate::error::{Error, Result};
use crate::label::TaxonLabel;
use crate::network::{NetworkEditor, PhyloNetwork};
use crate::tree::{PhyloTree, TreeShape};
use rand::seq::SliceRandom;
use rand::Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NetworkKind {
    Normal,
    TreeChild,
}

/// Labels `t1, ..., tn`.
pub fn default_labels(n: usize) -> Vec<TaxonLabel> {
    (1..=n).map(|i| TaxonLabel::new(&format!("t{i}")).expect("valid label")).collect()
}

/// A binary tree built by inserting the leaves one at a time on a uniformly
/// chosen edge (or above the root).
pub fn random_binary_tree<R: Rng + ?Sized>(labels: &[TaxonLabel], rng: &mut R) -> Result<PhyloTree> {
    if labels.is_empty() {
        return Err(Error::Precondition("no labels given".into()));
    }
    let mut order = labels.to_vec();
    order.shuffle(rng);
    // parent[v] for every vertex; vertex 0 starts as the only leaf.
    let mut parent: Vec<Option<usize>> = vec![None];
    let mut leaf: Vec<Option<TaxonLabel>> = vec![Some(order[0].clone())];
    for l in &order[1..] {
        let target = rng.gen_range(0..parent.len());
        let joint = parent.len();
        parent.push(parent[target]);
        leaf.push(None);
        parent[target] = Some(joint);
        parent.push(Some(joint));
        leaf.push(Some(l.clone()));
    }
    let root = (0..parent.len()).find(|&v| parent[v].is_none()).expect("one root");
    let mut kids = vec![Vec::new(); parent.len()];
    for (v, p) in parent.iter().enumerate() {
        if let Some(p) = p {
            kids[*p].push(v);
        }
    }
    fn build(v: usize, kids: &[Vec<usize>], leaf: &[Option<TaxonLabel>]) -> TreeShape {
        match &leaf[v] {
            Some(l) => TreeShape::leaf(l),
            None => TreeShape::node(kids[v].iter().map(|&c| build(c, kids, leaf)).collect()),
        }
    }
    PhyloTree::from_shape(&build(root, &kids, &leaf))
}

/// A binary network of the requested kind with the given leaves and
/// `reticulations` reticulations.
///
/// Grown from a single leaf by splitting a leaf into a cherry or joining two
/// leaves into a reticulated cherry, in random order; a join that leaves the
/// class is undone. Gives up after `max_attempts` restarts.
pub fn random_network<R: Rng + ?Sized>(
    kind: NetworkKind,
    labels: &[TaxonLabel],
    reticulations: usize,
    rng: &mut R,
) -> Result<PhyloNetwork> {
    let n = labels.len();
    if n == 0 {
        return Err(Error::Precondition("no labels given".into()));
    }
    if kind == NetworkKind::Normal && reticulations > 0 && reticulations + 2 > n {
        return Err(Error::Precondition(format!(
            "a binary normal network on {n} leaves has at most {} reticulations",
            n.saturating_sub(2)
        )));
    }
    if kind == NetworkKind::TreeChild && reticulations > 0 && reticulations + 1 > n {
        return Err(Error::Precondition(format!(
            "a binary tree-child network on {n} leaves has at most {} reticulations",
            n - 1
        )));
    }
    let max_attempts = 1000;
    for _ in 0..max_attempts {
        if let Some(net) = grow(kind, labels, reticulations, rng)? {
            return Ok(net);
        }
    }
    Err(Error::Internal(format!("no {kind:?} network with {n} leaves and {reticulations} reticulations found")))
}

fn in_class(kind: NetworkKind, net: &PhyloNetwork) -> bool {
    match kind {
        NetworkKind::Normal => is_normal(net),
        NetworkKind::TreeChild => is_tree_child(net),
    }
}

fn grow<R: Rng + ?Sized>(
    kind: NetworkKind,
    labels: &[TaxonLabel],
    reticulations: usize,
    rng: &mut R,
) -> Result<Option<PhyloNetwork>> {
    let mut order = labels.to_vec();
    order.shuffle(rng);
    let mut steps = vec![true; labels.len() - 1];
    steps.extend(std::iter::repeat_n(false, reticulations));
    steps.shuffle(rng);
    let mut ed = NetworkEditor::new();
    ed.add_vertex(Some(order[0].clone()));
    let mut placed = 1;
    for split in steps {
        let present: Vec<usize> = ed.vertices().filter(|&v| ed.label(v).is_some()).collect();
        if split {
            let x = *present.choose(rng).expect("a leaf");
            let sub = match ed.parents(x).first().copied() {
                Some(p) => ed.subdivide(p, x)?,
                None => {
                    let a = ed.add_vertex(None);
                    ed.add_edge(a, x);
                    a
                }
            };
            let y = ed.add_vertex(Some(order[placed].clone()));
            placed += 1;
            ed.add_edge(sub, y);
            continue;
        }
        if present.len() < 2 {
            return Ok(None);
        }
        let mut pairs: Vec<(usize, usize)> =
            present.iter().flat_map(|&x| present.iter().filter(move |&&y| y != x).map(move |&y| (x, y))).collect();
        pairs.shuffle(rng);
        let mut joined = false;
        for (x, y) in pairs {
            let mut trial = ed.clone();
            let (Some(&px), Some(&py)) = (trial.parents(x).first(), trial.parents(y).first()) else { continue };
            let rx = trial.subdivide(px, x)?;
            let ry = trial.subdivide(py, y)?;
            trial.add_edge(ry, rx);
            if trial.finish().is_ok_and(|net| in_class(kind, &net)) {
                ed = trial;
                joined = true;
                break;
            }
        }
        if !joined {
            return Ok(None);
        }
    }
    let net = ed.finish()?;
    Ok(in_class(kind, &net).then_some(net))
}
