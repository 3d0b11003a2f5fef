//! Benefit of information, the support function of a menu, menu mixtures,
//! ex-post randomization and state-wise dominance.

use num_traits::{One, Zero};

use crate::model::{Act, InfoStructure, Instance, Menu, ModelError, Posterior, Result};
use crate::rational::{format_rational, is_unit_interval, Rational};

/// Subjective expected utility `Σ_ω p(ω)·u(f(ω))`.
pub fn act_value(inst: &Instance, f: &Act, p: &Posterior) -> Rational {
    f.outcomes()
        .iter()
        .zip(p.probs())
        .map(|(x, q)| q * inst.lottery_utility(x))
        .sum()
}

/// `φ_F(p) = max_{f∈F} act_value(f, p)`.
pub fn support_value(inst: &Instance, menu: &Menu, p: &Posterior) -> Rational {
    menu.acts()
        .iter()
        .map(|f| act_value(inst, f, p))
        .max()
        .expect("menus are nonempty")
}

/// `b_F(π) = Σ_p π(p)·φ_F(p)`: the value of choosing from `menu` after
/// observing a posterior drawn from `pi`.
pub fn benefit_of_information(inst: &Instance, menu: &Menu, pi: &InfoStructure) -> Rational {
    pi.support()
        .iter()
        .map(|(p, w)| w * support_value(inst, menu, p))
        .sum()
}

/// Product-set mixture `{alpha·f + (1-alpha)·g : f∈F, g∈G}`.
pub fn mix_menus(f: &Menu, g: &Menu, alpha: &Rational) -> Result<Menu> {
    if !is_unit_interval(alpha) {
        return Err(ModelError::BadWeight(format_rational(alpha)));
    }
    if f.num_states() != g.num_states() {
        return Err(ModelError::DimensionMismatch {
            expected: f.num_states(),
            found: g.num_states(),
        });
    }
    let acts = f
        .acts()
        .iter()
        .flat_map(|a| g.acts().iter().map(move |b| a.mix(b, alpha)))
        .collect();
    Ok(Menu::from_acts_unchecked(acts))
}

/// Ex-post randomization `Σ_i β_i F`, built by iterated product mixing.
pub fn randomize(menu: &Menu, betas: &[Rational]) -> Result<Menu> {
    let total: Rational = betas.iter().sum();
    if betas.is_empty() || !total.is_one() || betas.iter().any(|b| !is_unit_interval(b)) {
        let listed: Vec<String> = betas.iter().map(format_rational).collect();
        return Err(ModelError::BadWeights(listed.join(", ")));
    }
    let mut acc: Option<Menu> = None;
    let mut mass = Rational::zero();
    for beta in betas.iter().filter(|b| !b.is_zero()) {
        let next_mass = &mass + beta;
        acc = Some(match acc {
            None => menu.clone(),
            // previous partial sum carries weight mass/next_mass
            Some(prev) => mix_menus(&prev, menu, &(&mass / &next_mass))?,
        });
        mass = next_mass;
    }
    Ok(acc.expect("betas sum to one"))
}

/// State-wise dominance `F ⊵_D G` (or `F ⊳_D G` when `strict`): every act of
/// `g` is beaten in every state, in utility, by a single act of `f`.
pub fn dominates(inst: &Instance, f: &Menu, g: &Menu, strict: bool) -> bool {
    let f_utils: Vec<Vec<Rational>> = f.acts().iter().map(|a| a.utilities(inst)).collect();
    g.acts().iter().all(|b| {
        let b_utils = b.utilities(inst);
        f_utils.iter().any(|a_utils| {
            a_utils.iter().zip(&b_utils).all(|(x, y)| {
                if strict {
                    x > y
                } else {
                    x >= y
                }
            })
        })
    })
}
