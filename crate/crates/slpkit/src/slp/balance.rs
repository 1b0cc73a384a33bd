// AVL-grammar construction: rebuild the rule DAG bottom-up, replacing each
// concatenation by an AVL join of the already balanced children.

use super::{NodeId, Rule, Slp, SlpBuilder};
use crate::error::Result;

pub(super) fn balance(slp: &Slp) -> Result<Slp> {
    let start = slp.start();
    let mut needed = vec![false; start + 1];
    needed[start] = true;
    for i in (0..=start).rev() {
        if needed[i] {
            if let Rule::Concat(l, r) = slp.rule(i) {
                needed[l] = true;
                needed[r] = true;
            }
        }
    }
    let mut b = SlpBuilder::new();
    let mut map: Vec<NodeId> = vec![usize::MAX; start + 1];
    for i in 0..=start {
        if !needed[i] {
            continue;
        }
        map[i] = match slp.rule(i) {
            Rule::Terminal(s) => b.terminal(s),
            Rule::Concat(l, r) => join(&mut b, map[l], map[r])?,
        };
    }
    b.finish(map[start], slp.alphabet().clone())
}

fn children(b: &SlpBuilder, x: NodeId) -> (NodeId, NodeId) {
    match b.rule(x) {
        Rule::Concat(l, r) => (l, r),
        Rule::Terminal(_) => unreachable!("a taller AVL node is never a terminal"),
    }
}

/// Concatenate two AVL nodes into one AVL node.
pub(super) fn join(b: &mut SlpBuilder, x: NodeId, y: NodeId) -> Result<NodeId> {
    let (hx, hy) = (b.depth(x), b.depth(y));
    if hx > hy + 1 {
        join_right(b, x, y)
    } else if hy > hx + 1 {
        join_left(b, x, y)
    } else {
        b.concat(x, y)
    }
}

// x is taller: walk down its right spine.
fn join_right(b: &mut SlpBuilder, x: NodeId, y: NodeId) -> Result<NodeId> {
    let (l, c) = children(b, x);
    if b.depth(c) <= b.depth(y) + 1 {
        let t = b.concat(c, y)?;
        if b.depth(t) <= b.depth(l) + 1 {
            return b.concat(l, t);
        }
        // double rotation
        let (c1, c2) = children(b, c);
        let left = join(b, l, c1)?;
        let right = join(b, c2, y)?;
        return join(b, left, right);
    }
    let t = join_right(b, c, y)?;
    if b.depth(t) <= b.depth(l) + 1 {
        return b.concat(l, t);
    }
    // single rotation
    let (t1, t2) = children(b, t);
    let left = join(b, l, t1)?;
    join(b, left, t2)
}

// y is taller: mirror image.
fn join_left(b: &mut SlpBuilder, x: NodeId, y: NodeId) -> Result<NodeId> {
    let (c, r) = children(b, y);
    if b.depth(c) <= b.depth(x) + 1 {
        let t = b.concat(x, c)?;
        if b.depth(t) <= b.depth(r) + 1 {
            return b.concat(t, r);
        }
        let (c1, c2) = children(b, c);
        let left = join(b, x, c1)?;
        let right = join(b, c2, r)?;
        return join(b, left, right);
    }
    let t = join_left(b, x, c)?;
    if b.depth(t) <= b.depth(r) + 1 {
        return b.concat(t, r);
    }
    let (t1, t2) = children(b, t);
    let right = join(b, t2, r)?;
    join(b, t1, right)
}
