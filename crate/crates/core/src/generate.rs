//! Seeded random instances, menus and information structures on small
//! rational grids.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::evaluation::mix_menus;
use crate::model::{
    Act, Collection, CredalSet, InfoStructure, Instance, Lottery, Menu, Posterior,
};
use crate::rational::{int, rat, Rational};

/// Size limits for random draws.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    pub max_states: usize,
    pub max_prizes: usize,
    pub max_acts: usize,
    pub max_support: usize,
    pub max_generators: usize,
    pub max_members: usize,
    /// Grid resolution for probabilities: integer weights in `0..=grid`.
    pub grid: u32,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            max_states: 3,
            max_prizes: 4,
            max_acts: 4,
            max_support: 3,
            max_generators: 3,
            max_members: 3,
            grid: 3,
        }
    }
}

/// Deterministic sampler; the same seed always yields the same draws.
#[derive(Debug, Clone)]
pub struct Sampler {
    rng: ChaCha8Rng,
    pub bounds: Bounds,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self::with_bounds(seed, Bounds::default())
    }

    pub fn with_bounds(seed: u64, bounds: Bounds) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            bounds,
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// Nonnegative grid weights, normalised; never all zero.
    fn simplex_point(&mut self, len: usize) -> Vec<Rational> {
        let grid = self.bounds.grid.max(1) as i64;
        let mut raw: Vec<i64> = (0..len).map(|_| self.rng.gen_range(0..=grid)).collect();
        if raw.iter().all(|&x| x == 0) {
            let i = self.rng.gen_range(0..len);
            raw[i] = 1;
        }
        let total: i64 = raw.iter().sum();
        raw.into_iter().map(|x| rat(x, total)).collect()
    }

    pub fn instance(&mut self) -> Instance {
        let states = self.rng.gen_range(1..=self.bounds.max_states.max(1));
        let prizes = self.rng.gen_range(2..=self.bounds.max_prizes.max(2));
        loop {
            let utility: Vec<Rational> = (0..prizes).map(|_| int(self.rng.gen_range(-2..=4))).collect();
            if let Ok(inst) = Instance::with_utilities(states, utility) {
                return inst;
            }
        }
    }

    pub fn lottery(&mut self, inst: &Instance) -> Lottery {
        Lottery::new(self.simplex_point(inst.num_prizes())).expect("grid point is a distribution")
    }

    pub fn act(&mut self, inst: &Instance) -> Act {
        let outcomes = (0..inst.num_states()).map(|_| self.lottery(inst)).collect();
        inst.act(outcomes).expect("dimensions match")
    }

    pub fn menu(&mut self, inst: &Instance) -> Menu {
        let n = self.rng.gen_range(1..=self.bounds.max_acts.max(1));
        Menu::new((0..n).map(|_| self.act(inst)).collect::<Vec<_>>()).expect("nonempty")
    }

    /// A menu every act of which puts positive mass on a best prize in every
    /// state, so that mixing it toward the worst prize is strictly dominated.
    pub fn interior_menu(&mut self, inst: &Instance) -> Menu {
        let best = inst.degenerate(inst.best_prize());
        let n = self.rng.gen_range(1..=self.bounds.max_acts.max(1));
        let acts: Vec<Act> = (0..n)
            .map(|_| {
                let outcomes = (0..inst.num_states())
                    .map(|_| {
                        let x = self.lottery(inst);
                        let w = rat(self.rng.gen_range(1..=3), 4);
                        best.mix(&x, &w)
                    })
                    .collect();
                inst.act(outcomes).expect("dimensions match")
            })
            .collect();
        Menu::new(acts).expect("nonempty")
    }

    pub fn constant_menu(&mut self, inst: &Instance) -> Menu {
        let x = self.lottery(inst);
        Menu::constant(inst, &x).expect("dimensions match")
    }

    pub fn posterior(&mut self, inst: &Instance) -> Posterior {
        Posterior::new(self.simplex_point(inst.num_states())).expect("grid point is a distribution")
    }

    pub fn info_structure(&mut self, inst: &Instance) -> InfoStructure {
        let n = self.rng.gen_range(1..=self.bounds.max_support.max(1));
        let weights = loop {
            let w = self.simplex_point(n);
            if w.iter().all(|x| *x > Rational::default()) {
                break w;
            }
        };
        let support: Vec<_> = weights
            .into_iter()
            .map(|w| (self.posterior(inst), w))
            .collect();
        InfoStructure::new(support).expect("positive weights summing to one")
    }

    pub fn credal_set(&mut self, inst: &Instance) -> CredalSet {
        let n = self.rng.gen_range(1..=self.bounds.max_generators.max(1));
        CredalSet::new((0..n).map(|_| self.info_structure(inst)).collect()).expect("nonempty")
    }

    pub fn collection(&mut self, inst: &Instance) -> Collection {
        let n = self.rng.gen_range(1..=self.bounds.max_members.max(1));
        Collection::new((0..n).map(|_| self.credal_set(inst)).collect()).expect("nonempty")
    }

    /// A weight drawn from `{1/4, 1/3, 1/2, 2/3, 3/4}`.
    pub fn weight(&mut self) -> Rational {
        [rat(1, 4), rat(1, 3), rat(1, 2), rat(2, 3), rat(3, 4)]
            .choose(&mut self.rng)
            .cloned()
            .expect("nonempty")
    }

    /// A random convex combination of the set's generators.
    pub fn point_in(&mut self, set: &CredalSet) -> InfoStructure {
        let lambdas = self.simplex_point(set.generators().len());
        let parts: Vec<_> = set.generators().iter().cloned().zip(lambdas).collect();
        InfoStructure::combination(&parts).expect("valid combination")
    }

    /// A credal set whose generators are convex combinations of `outer`'s,
    /// so it is nested inside `outer`.
    pub fn nested_subset(&mut self, outer: &CredalSet) -> CredalSet {
        let n = self.rng.gen_range(1..=self.bounds.max_generators.max(1));
        CredalSet::new((0..n).map(|_| self.point_in(outer)).collect()).expect("nonempty")
    }
}

/// `alpha·F + (1-alpha)·x₀` where `x₀` is the worst prize.
pub fn shrink_toward_worst(inst: &Instance, menu: &Menu, alpha: &Rational) -> Menu {
    let worst = Menu::constant(inst, &inst.degenerate(inst.worst_prize())).expect("dimensions match");
    mix_menus(menu, &worst, alpha).expect("alpha in [0,1]")
}
