use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap, HashMap};

use super::{Dialog, Tweet};

#[derive(Clone, Copy, PartialEq, Eq)]
enum Root {
    Unknown,
    Visiting,
    Of(usize),
    Cyclic,
}

/// Links tweets into reply trees and keeps the conversations `brand` answered.
///
/// A tweet whose parent is not in the input starts its own tree. Trees that contain a
/// reply cycle are discarded. A kept dialog starts with a customer tweet, contains at least
/// one reply authored by `brand`, and has at least two turns. Dialogs come out ordered by
/// root tweet id.
pub fn thread_conversations<I>(tweets: I, brand: &str) -> Vec<Dialog>
where
    I: IntoIterator<Item = Tweet>,
{
    let mut nodes: Vec<Tweet> = Vec::new();
    let mut by_id = HashMap::new();
    for tweet in tweets {
        if by_id.contains_key(&tweet.tweet_id) {
            log::warn!("duplicate tweet id {}, keeping first occurrence", tweet.tweet_id);
            continue;
        }
        by_id.insert(tweet.tweet_id, nodes.len());
        nodes.push(tweet);
    }

    let parent: Vec<Option<usize>> = nodes
        .iter()
        .map(|t| t.in_response_to.and_then(|p| by_id.get(&p).copied()))
        .collect();

    let roots = resolve_roots(&parent);

    let mut trees: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
    let mut cyclic = 0usize;
    for (idx, root) in roots.iter().enumerate() {
        match *root {
            Root::Of(r) => trees.entry(nodes[r].tweet_id).or_default().push(idx),
            _ => cyclic += 1,
        }
    }
    if cyclic > 0 {
        log::warn!("discarded {cyclic} tweets on or below reply cycles");
    }

    let mut children: Vec<Vec<usize>> = vec![Vec::new(); nodes.len()];
    for (idx, p) in parent.iter().enumerate() {
        if let (Some(p), Root::Of(_)) = (p, roots[idx]) {
            children[*p].push(idx);
        }
    }

    let mut dialogs = Vec::new();
    for (root_id, members) in trees {
        let root = by_id[&root_id];
        if members.len() < 2 || !nodes[root].inbound {
            continue;
        }
        let answered = members
            .iter()
            .any(|&m| !nodes[m].inbound && nodes[m].author_id == brand);
        if !answered {
            continue;
        }
        let order = chronological_order(root, &nodes, &children);
        dialogs.push(Dialog {
            dialog_id: root_id,
            turns: order.into_iter().map(|i| nodes[i].clone()).collect(),
            brand: brand.to_owned(),
        });
    }
    dialogs
}

fn resolve_roots(parent: &[Option<usize>]) -> Vec<Root> {
    let mut roots = vec![Root::Unknown; parent.len()];
    let mut path = Vec::new();
    for start in 0..parent.len() {
        if roots[start] != Root::Unknown {
            continue;
        }
        let mut cur = start;
        let resolved = loop {
            match roots[cur] {
                Root::Of(r) => break Root::Of(r),
                Root::Cyclic | Root::Visiting => break Root::Cyclic,
                Root::Unknown => {}
            }
            roots[cur] = Root::Visiting;
            path.push(cur);
            match parent[cur] {
                Some(p) => cur = p,
                None => break Root::Of(cur),
            }
        };
        for node in path.drain(..) {
            roots[node] = resolved;
        }
    }
    roots
}

/// Earliest-first walk that never emits a reply before its parent, even when clocks disagree.
fn chronological_order(root: usize, nodes: &[Tweet], children: &[Vec<usize>]) -> Vec<usize> {
    let key = |i: usize| Reverse((nodes[i].created_at, nodes[i].tweet_id, i));
    let mut ready = BinaryHeap::from([key(root)]);
    let mut order = Vec::new();
    while let Some(Reverse((_, _, idx))) = ready.pop() {
        order.push(idx);
        ready.extend(children[idx].iter().map(|&c| key(c)));
    }
    order
}
