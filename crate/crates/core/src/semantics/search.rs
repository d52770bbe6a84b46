//! Backtracking search for viable transitions.
//!
//! Membranes are decided in ascending child-id order, each trying "unmarked"
//! first and then its candidate marks sorted by object and direction, so the
//! depth-first visiting order coincides with the canonical transition order.
//! The constraints of a region are checked as soon as all its membranes are
//! decided. Before that, a counting bound prunes regions whose remaining
//! objects can no longer be used up, and regions with only a few open
//! membranes are forward-checked exhaustively.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{classify_in_pair, classify_pair, Direction, Mark, PairKind, ViableTransition};
use crate::grammar::Grammar;
use crate::multiset::ObjectId;
use crate::structure::{Configuration, RegionId};

/// How `choose_viable` picks among the viable transitions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Policy {
    /// The smallest transition in canonical order.
    Canonical,
    /// A pseudo-random viable transition, reproducible per seed.
    Seeded(u64),
}

/// Result of `enumerate_viable`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumeration {
    /// Viable transitions in canonical order.
    pub transitions: Vec<ViableTransition>,
    /// Set when more than `cap` transitions exist; `transitions` then holds the first `cap`.
    pub cap_exceeded: bool,
}

impl Enumeration {
    pub fn is_exhaustive(&self) -> bool {
        !self.cap_exceeded
    }
}

/// Lists viable transitions in canonical order, stopping after `cap`.
pub fn enumerate_viable(g: &Grammar, c: &Configuration, cap: usize) -> Enumeration {
    let mut search = Search::new(g, c);
    let mut transitions = Vec::new();
    let mut cap_exceeded = false;
    search.run(&mut |t| {
        if transitions.len() == cap {
            cap_exceeded = true;
            return false;
        }
        transitions.push(t);
        true
    });
    Enumeration { transitions, cap_exceeded }
}

/// Picks one viable transition; `None` means the configuration is stuck.
pub fn choose_viable(g: &Grammar, c: &Configuration, policy: Policy) -> Option<ViableTransition> {
    let mut search = Search::new(g, c);
    if let Policy::Seeded(seed) = policy {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for e in &mut search.edges {
            e.choices.shuffle(&mut rng);
        }
    }
    let mut found = None;
    search.run(&mut |t| {
        found = Some(t);
        false
    });
    found
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Choice {
    Unmarked,
    Up(usize),
    Down(usize),
}

struct EdgeVar {
    child_id: RegionId,
    child: usize,
    parent: usize,
    choices: Vec<Choice>,
    /// Objects with an in-pair on this label that are present in the parent.
    in_objects: Vec<usize>,
}

struct RegionVar {
    counts: Vec<u64>,
    outer: Option<usize>,
    inner: Vec<usize>,
    /// Present objects with a dissolution, division or out pair on the outer label.
    outer_actions: Vec<usize>,
    /// Objects with an evolution pair on the outer label.
    evolves: Vec<bool>,
    /// Index of the last incident membrane in decision order.
    last_edge: Option<usize>,
}

/// Largest number of undecided membranes a region may have for forward checking.
const FORWARD_CHECK_LIMIT: usize = 8;

struct Search {
    objects: Vec<ObjectId>,
    edges: Vec<EdgeVar>,
    regions: Vec<RegionVar>,
    assigned: Vec<Option<Choice>>,
    used: Vec<Vec<u64>>,
}

impl Search {
    fn new(g: &Grammar, c: &Configuration) -> Search {
        let s = &c.structure;
        let mut objects: Vec<ObjectId> = g.objects().iter().cloned().collect();
        for (_, m) in c.all_contents() {
            for o in m.objects() {
                if let Err(pos) = objects.binary_search(o) {
                    objects.insert(pos, o.clone());
                }
            }
        }
        let region_ids: Vec<RegionId> = s.regions().collect();
        let index_of = |r: RegionId| region_ids.binary_search(&r).expect("region exists");

        let mut regions: Vec<RegionVar> = region_ids
            .iter()
            .map(|&r| {
                let contents = c.contents(r);
                let counts: Vec<u64> = objects.iter().map(|o| contents.count(o)).collect();
                let label = s.label(r);
                let mut outer_actions = Vec::new();
                let mut evolves = vec![false; objects.len()];
                if let Some(l) = label {
                    for (i, o) in objects.iter().enumerate() {
                        let kind = classify_pair(g, o, l);
                        evolves[i] = kind == PairKind::EvolutionPair;
                        if kind.is_up_action() && counts[i] > 0 {
                            outer_actions.push(i);
                        }
                    }
                }
                RegionVar {
                    counts,
                    outer: None,
                    inner: Vec::new(),
                    outer_actions,
                    evolves,
                    last_edge: None,
                }
            })
            .collect();

        let mut edges = Vec::new();
        for (child_id, edge) in s.edges() {
            let idx = edges.len();
            let child = index_of(child_id);
            let parent = index_of(edge.parent);
            let leaf = s.is_leaf(child_id);
            let mut marks: Vec<(usize, Direction)> = Vec::new();
            let mut in_objects = Vec::new();
            for (i, o) in objects.iter().enumerate() {
                let kind = classify_pair(g, o, &edge.label);
                if kind.is_up_action()
                    && (leaf || kind != PairKind::DivisionPair)
                    && regions[child].counts[i] > 0
                {
                    marks.push((i, Direction::Up));
                }
                if classify_in_pair(g, o, &edge.label) == PairKind::InPair
                    && regions[parent].counts[i] > 0
                {
                    marks.push((i, Direction::Down));
                    in_objects.push(i);
                }
            }
            let mut choices = vec![Choice::Unmarked];
            choices.extend(marks.into_iter().map(|(i, d)| match d {
                Direction::Up => Choice::Up(i),
                Direction::Down => Choice::Down(i),
            }));
            regions[child].outer = Some(idx);
            regions[parent].inner.push(idx);
            regions[child].last_edge = Some(idx);
            regions[parent].last_edge = Some(idx);
            edges.push(EdgeVar { child_id, child, parent, choices, in_objects });
        }

        let used = vec![vec![0; objects.len()]; regions.len()];
        let assigned = vec![None; edges.len()];
        Search { objects, edges, regions, assigned, used }
    }

    /// Calls `emit` for every viable transition in search order until it returns false.
    fn run(&mut self, emit: &mut dyn FnMut(ViableTransition) -> bool) {
        // regions without membranes impose no constraint, so only the edge
        // decisions matter; a lone root yields the empty transition
        self.descend(0, emit);
    }

    fn descend(&mut self, k: usize, emit: &mut dyn FnMut(ViableTransition) -> bool) -> bool {
        if k == self.edges.len() {
            return emit(self.transition());
        }
        for ci in 0..self.edges[k].choices.len() {
            let choice = self.edges[k].choices[ci];
            if !self.assign(k, choice) {
                continue;
            }
            let ok = self.consistent_after(k);
            let keep_going = if ok { self.descend(k + 1, emit) } else { true };
            self.unassign(k, choice);
            if !keep_going {
                return false;
            }
        }
        true
    }

    /// Records the choice; false (and no change) if it breaks availability.
    fn assign(&mut self, k: usize, choice: Choice) -> bool {
        let taker = match choice {
            Choice::Unmarked => None,
            Choice::Up(o) => Some((self.edges[k].child, o)),
            Choice::Down(o) => Some((self.edges[k].parent, o)),
        };
        if let Some((r, o)) = taker {
            if self.used[r][o] + 1 > self.regions[r].counts[o] {
                return false;
            }
            self.used[r][o] += 1;
        }
        self.assigned[k] = Some(choice);
        true
    }

    fn unassign(&mut self, k: usize, choice: Choice) {
        match choice {
            Choice::Unmarked => {}
            Choice::Up(o) => self.used[self.edges[k].child][o] -= 1,
            Choice::Down(o) => self.used[self.edges[k].parent][o] -= 1,
        }
        self.assigned[k] = None;
    }

    fn consistent_after(&mut self, k: usize) -> bool {
        let (child, parent) = (self.edges[k].child, self.edges[k].parent);
        [child, parent].into_iter().all(|r| {
            if self.regions[r].last_edge == Some(k) {
                self.region_satisfied(r)
            } else {
                self.region_feasible(r)
            }
        })
    }

    /// Conditions 2 and 3 for region `r`, all of whose membranes are decided.
    fn region_satisfied(&self, r: usize) -> bool {
        let region = &self.regions[r];
        let used = &self.used[r];
        if let Some(outer) = region.outer {
            if self.assigned[outer] == Some(Choice::Unmarked)
                && region.outer_actions.iter().any(|&o| used[o] != region.counts[o])
            {
                return false;
            }
        }
        region.inner.iter().all(|&e| {
            self.assigned[e] != Some(Choice::Unmarked)
                || self.edges[e]
                    .in_objects
                    .iter()
                    .all(|&o| region.evolves[o] || used[o] == region.counts[o])
        })
    }

    /// Whether some completion of the open membranes around `r` satisfies `r`.
    fn region_feasible(&mut self, r: usize) -> bool {
        let region = &self.regions[r];
        let open: Vec<usize> = region
            .outer
            .iter()
            .chain(region.inner.iter())
            .copied()
            .filter(|&e| self.assigned[e].is_none())
            .collect();
        if !self.counting_bound(r, &open) {
            return false;
        }
        if open.len() > FORWARD_CHECK_LIMIT {
            return true;
        }
        self.complete_locally(r, &open)
    }

    /// Necessary condition: every object that must be used up in `r` has
    /// enough open membranes left that could take it, and all such demands
    /// together fit into the open membranes.
    fn counting_bound(&self, r: usize, open: &[usize]) -> bool {
        let region = &self.regions[r];
        let used = &self.used[r];
        let mut must_empty = vec![false; region.counts.len()];
        if let Some(outer) = region.outer {
            if self.assigned[outer] == Some(Choice::Unmarked) {
                for &o in &region.outer_actions {
                    must_empty[o] = true;
                }
            }
        }
        for &e in &region.inner {
            if self.assigned[e] == Some(Choice::Unmarked) {
                for &o in &self.edges[e].in_objects {
                    must_empty[o] |= !region.evolves[o];
                }
            }
        }
        let mut total = 0u64;
        for (o, _) in must_empty.iter().enumerate().filter(|(_, &m)| m) {
            let deficit = region.counts[o] - used[o];
            let takers = open
                .iter()
                .filter(|&&e| {
                    let edge = &self.edges[e];
                    edge.choices.iter().any(|&c| match c {
                        Choice::Up(x) => x == o && edge.child == r,
                        Choice::Down(x) => x == o && edge.parent == r,
                        Choice::Unmarked => false,
                    })
                })
                .count() as u64;
            if deficit > takers {
                return false;
            }
            total += deficit;
        }
        total <= open.len() as u64
    }

    fn complete_locally(&mut self, r: usize, open: &[usize]) -> bool {
        let Some((&e, rest)) = open.split_first() else {
            return self.region_satisfied(r);
        };
        // Marks that take from the other endpoint do not affect `r`; one
        // representative of them is enough.
        let mut tried_foreign = false;
        for ci in 0..self.edges[e].choices.len() {
            let choice = self.edges[e].choices[ci];
            let takes_from_r = match choice {
                Choice::Unmarked => true,
                Choice::Up(_) => self.edges[e].child == r,
                Choice::Down(_) => self.edges[e].parent == r,
            };
            if !takes_from_r {
                if tried_foreign {
                    continue;
                }
                tried_foreign = true;
            }
            let (taker, o) = match choice {
                Choice::Up(o) => (self.edges[e].child, Some(o)),
                Choice::Down(o) => (self.edges[e].parent, Some(o)),
                Choice::Unmarked => (r, None),
            };
            if let Some(o) = o {
                if taker == r && self.used[r][o] + 1 > self.regions[r].counts[o] {
                    continue;
                }
            }
            self.assigned[e] = Some(choice);
            if let (Some(o), true) = (o, taker == r) {
                self.used[r][o] += 1;
            }
            let ok = self.complete_locally(r, rest);
            if let (Some(o), true) = (o, taker == r) {
                self.used[r][o] -= 1;
            }
            self.assigned[e] = None;
            if ok {
                return true;
            }
        }
        false
    }

    fn transition(&self) -> ViableTransition {
        self.edges
            .iter()
            .zip(&self.assigned)
            .filter_map(|(e, a)| {
                let mark = match a.expect("complete assignment") {
                    Choice::Unmarked => return None,
                    Choice::Up(o) => Mark { object: self.objects[o].clone(), direction: Direction::Up },
                    Choice::Down(o) => {
                        Mark { object: self.objects[o].clone(), direction: Direction::Down }
                    }
                };
                Some((e.child_id, mark))
            })
            .collect()
    }
}
