//! Random instances.

use std::ops::RangeInclusive;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::grammar::{Grammar, Rule};
use crate::multiset::{LabelId, Multiset, ObjectId};
use crate::semantics::{run_bounded, Policy, RunLimits, Trace, HaltStatus};
use crate::structure::{Configuration, MembraneStructure, RegionId};
use crate::threshold::Threshold;

/// Per-(object, label) probabilities of each rule kind.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RuleDensity {
    pub evolution: f64,
    pub dissolution: f64,
    pub division: f64,
    pub out: f64,
    /// Probability of an in rule for each (label, object); only used with `allow_in_rules`.
    pub into: f64,
}

impl RuleDensity {
    pub fn zero() -> Self {
        RuleDensity { evolution: 0.0, dissolution: 0.0, division: 0.0, out: 0.0, into: 0.0 }
    }
}

impl Default for RuleDensity {
    fn default() -> Self {
        RuleDensity { evolution: 0.15, dissolution: 0.15, division: 0.1, out: 0.2, into: 0.2 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GenParams {
    /// Number of object kinds.
    pub objects: RangeInclusive<usize>,
    /// Number of labels besides skin.
    pub labels: RangeInclusive<usize>,
    /// Number of regions below the environment, skin included.
    pub regions: RangeInclusive<usize>,
    pub max_depth: usize,
    pub max_children: usize,
    pub density: RuleDensity,
    /// Longest right-hand side of an evolution rule.
    pub max_evolution_len: usize,
    pub allow_in_rules: bool,
    /// Probability that a region holds a given object at all.
    pub fill: f64,
    pub initial_count: RangeInclusive<u64>,
    pub seed: u64,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams {
            objects: 1..=4,
            labels: 1..=6,
            regions: 1..=10,
            max_depth: 4,
            max_children: 3,
            density: RuleDensity::default(),
            max_evolution_len: 2,
            allow_in_rules: false,
            fill: 0.5,
            initial_count: 1..=8,
            seed: 0,
        }
    }
}

impl GenParams {
    pub fn with_seed(&self, seed: u64) -> Self {
        GenParams { seed, ..self.clone() }
    }
}

/// SplitMix64 finaliser, used to derive independent per-trial seeds.
pub fn mix_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn pick(rng: &mut ChaCha8Rng, r: &RangeInclusive<usize>) -> usize {
    rng.gen_range(r.clone())
}

/// A grammar and configuration drawn from `p`; identical for identical parameters.
///
/// Regions are numbered in pre-order, so printing and re-parsing the
/// configuration keeps every id.
pub fn gen_instance(p: &GenParams) -> (Grammar, Configuration) {
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let objects: Vec<ObjectId> =
        (1..=pick(&mut rng, &p.objects).max(1)).map(|i| ObjectId::new(&format!("o{i}"))).collect();
    let labels: Vec<LabelId> =
        (1..=pick(&mut rng, &p.labels).max(1)).map(|i| LabelId::new(&format!("l{i}"))).collect();

    // shape: parent index per region, region 0 being the skin
    let n = pick(&mut rng, &p.regions).max(1);
    let mut parent: Vec<Option<usize>> = vec![None];
    let mut depth = vec![1usize];
    let mut kids = vec![0usize];
    let mut label_of: Vec<Option<LabelId>> = vec![None];
    while parent.len() < n {
        let open: Vec<usize> = (0..parent.len())
            .filter(|&i| depth[i] < p.max_depth && kids[i] < p.max_children)
            .collect();
        let Some(&at) = open.choose(&mut rng) else { break };
        parent.push(Some(at));
        depth.push(depth[at] + 1);
        kids.push(0);
        kids[at] += 1;
        label_of.push(Some(labels.choose(&mut rng).expect("nonempty").clone()));
    }

    let mut rules = Vec::new();
    let d = p.density;
    let all_labels: Vec<LabelId> = std::iter::once(LabelId::skin()).chain(labels.iter().cloned()).collect();
    for l in &all_labels {
        for o in &objects {
            let x: f64 = rng.gen();
            let weights = [d.evolution, d.dissolution, d.division, d.out];
            let mut acc = 0.0;
            let kind = weights.iter().position(|w| {
                acc += w;
                x < acc
            });
            let rnd = |rng: &mut ChaCha8Rng| objects.choose(rng).expect("nonempty").clone();
            let (lhs, label) = (o.clone(), l.clone());
            let rule = match kind {
                Some(0) => {
                    let len = rng.gen_range(0..=p.max_evolution_len);
                    let rhs = Multiset::from_word((0..len).map(|_| rnd(&mut rng)));
                    Some(Rule::Evolution { lhs, label, rhs })
                }
                Some(1) if !l.is_skin() => Some(Rule::Dissolution { lhs, label, rhs: rnd(&mut rng) }),
                Some(2) if !l.is_skin() => {
                    let (first, second) = (rnd(&mut rng), rnd(&mut rng));
                    Some(Rule::Division { lhs, label, first, second })
                }
                Some(3) => Some(Rule::Out { lhs, label, rhs: rnd(&mut rng) }),
                _ => None,
            };
            rules.extend(rule);
        }
    }
    if p.allow_in_rules {
        for l in &labels {
            for o in &objects {
                if rng.gen_bool(d.into.clamp(0.0, 1.0)) {
                    let rhs = objects.choose(&mut rng).expect("nonempty").clone();
                    rules.push(Rule::In { label: l.clone(), lhs: o.clone(), rhs });
                }
            }
        }
    }
    let grammar = Grammar::new(rules, objects.iter().cloned(), labels.iter().cloned())
        .expect("generated grammars are valid");

    // pre-order ids: environment 0, skin 1, ...
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); parent.len()];
    for (i, p) in parent.iter().enumerate() {
        if let Some(p) = p {
            children[*p].push(i);
        }
    }
    let (mut structure, skin) = MembraneStructure::with_skin();
    let mut ids = vec![RegionId(0); parent.len()];
    ids[0] = skin;
    let mut stack: Vec<usize> = children[0].iter().rev().copied().collect();
    while let Some(i) = stack.pop() {
        let pid = ids[parent[i].expect("non-skin region has a parent")];
        ids[i] = structure.add_child(pid, label_of[i].clone().expect("labelled"));
        stack.extend(children[i].iter().rev());
    }
    let mut config = Configuration::empty(structure);
    for &id in &ids {
        let mut m = Multiset::new();
        for o in &objects {
            if rng.gen_bool(p.fill.clamp(0.0, 1.0)) {
                m.add(o.clone(), rng.gen_range(p.initial_count.clone()));
            }
        }
        config.set_contents(id, m);
    }
    (grammar, config)
}

/// A configuration t-equivalent to `c`: every count of at least `t` is redrawn
/// from `[t, t + 5]`, smaller counts are kept.
pub fn perturb(c: &Configuration, t: Threshold, rng: &mut impl Rng) -> Configuration {
    let t = t.get();
    let mut out = c.clone();
    for (r, m) in c.all_contents() {
        let mut m2 = Multiset::new();
        for (o, n) in m.iter() {
            let k = if n >= t { rng.gen_range(t..=t + 5) } else { n };
            m2.add(o.clone(), k);
        }
        out.set_contents(r, m2);
    }
    out
}

/// Outcome of searching for a halting run.
#[derive(Debug, Clone)]
pub struct HaltingRun {
    pub grammar: Grammar,
    pub trace: Trace,
    /// Seed of the accepted instance.
    pub seed: u64,
    pub rejected: usize,
    /// Rejected runs that ended stuck.
    pub stuck: usize,
}

/// Rejection-samples instances until a canonical run halts within `max_steps`
/// after at least `min_steps` steps. Gives up after `max_rejections`.
pub fn gen_halting_run(
    p: &GenParams,
    max_steps: usize,
    min_steps: usize,
    max_rejections: usize,
) -> Option<HaltingRun> {
    let limits = RunLimits { max_steps, max_regions: 64, max_count: 1 << 20 };
    let mut stuck = 0;
    for attempt in 0..=max_rejections {
        let seed = mix_seed(p.seed, attempt as u64);
        let (g, c) = gen_instance(&p.with_seed(seed));
        let trace = run_bounded(&g, &c, Policy::Canonical, limits);
        match trace.halt_status {
            HaltStatus::Halted if trace.transitions.len() >= min_steps => {
                return Some(HaltingRun { grammar: g, trace, seed, rejected: attempt, stuck });
            }
            HaltStatus::Stuck => stuck += 1,
            _ => {}
        }
    }
    None
}
