//! Backtracking over images of a generating sequence.
//!
//! The source group's Cayley graph (with respect to its greedy generating
//! sequence) is split into levels: after the image of generator `i` is
//! chosen, every element of `<g_0..g_i>` not yet mapped receives its image
//! along a spanning-tree edge, and every remaining edge `x -> x*g_j` is a
//! relation that the images must satisfy. A full assignment passing all
//! checks is exactly a homomorphism.

use fixedbitset::FixedBitSet;

use super::ops::{self, GroupOps};
use super::FiniteGroup;
use crate::{Error, Result};

#[derive(Debug, Clone, Default)]
struct Level {
    /// `(y, x, j)`: image of `y` is image of `x` times image of `g_j`.
    defines: Vec<(u32, u32, u32)>,
    /// `(x, j, y)`: image of `x` times image of `g_j` must equal image of `y`.
    checks: Vec<(u32, u32, u32)>,
}

#[derive(Debug, Clone)]
pub struct ExtensionPlan {
    pub gens: Vec<usize>,
    pub gen_orders: Vec<usize>,
    levels: Vec<Level>,
    order: usize,
}

impl ExtensionPlan {
    pub fn new(g: &FiniteGroup) -> Self {
        let gens = ops::generating_sequence(g);
        let gen_orders = gens.iter().map(|&x| g.element_order(x)).collect();
        let n = g.order();
        let mut level_of = vec![usize::MAX; n];
        level_of[0] = 0;
        let mut known_list = vec![0usize];
        let mut levels = Vec::with_capacity(gens.len());
        for i in 0..gens.len() {
            let mut level = Level::default();
            let mut idx = 0;
            while idx < known_list.len() {
                let x = known_list[idx];
                idx += 1;
                let old = level_of[x] < i;
                for (j, &gj) in gens.iter().enumerate().take(i + 1) {
                    if old && j < i {
                        continue;
                    }
                    let y = g.mul(x, gj);
                    if level_of[y] == usize::MAX {
                        level_of[y] = i;
                        level.defines.push((y as u32, x as u32, j as u32));
                        known_list.push(y);
                    } else {
                        level.checks.push((x as u32, j as u32, y as u32));
                    }
                }
            }
            levels.push(level);
        }
        ExtensionPlan { gens, gen_orders, levels, order: n }
    }

    pub fn source_order(&self) -> usize {
        self.order
    }

    /// Enumerates homomorphisms into `target` whose generator images are
    /// drawn from `candidates[i]`. `visit` receives the full image array and
    /// returns `false` to stop. With `injective`, only injective maps are
    /// produced.
    pub fn search<T, F>(
        &self,
        target: &T,
        candidates: &[Vec<usize>],
        injective: bool,
        budget: u64,
        mut visit: F,
    ) -> Result<()>
    where
        T: GroupOps + ?Sized,
        F: FnMut(&[usize]) -> bool,
    {
        let mut state = SearchState {
            phi: vec![target.identity(); self.order],
            chosen: vec![0; self.gens.len()],
            used: FixedBitSet::with_capacity(if injective { target.order() } else { 0 }),
            nodes: 0,
        };
        if injective {
            state.used.insert(target.identity());
        }
        if self.gens.is_empty() {
            visit(&state.phi);
            return Ok(());
        }
        self.descend(0, target, candidates, injective, budget, &mut state, &mut visit)?;
        Ok(())
    }

    #[allow(clippy::too_many_arguments)]
    fn descend<T, F>(
        &self,
        level: usize,
        target: &T,
        candidates: &[Vec<usize>],
        injective: bool,
        budget: u64,
        st: &mut SearchState,
        visit: &mut F,
    ) -> Result<bool>
    where
        T: GroupOps + ?Sized,
        F: FnMut(&[usize]) -> bool,
    {
        let lv = &self.levels[level];
        for &t in &candidates[level] {
            st.nodes += 1;
            if st.nodes > budget {
                return Err(Error::SearchBudgetExceeded { budget });
            }
            st.chosen[level] = t;
            let mut ok = true;
            let mut defined = 0;
            for &(y, x, j) in &lv.defines {
                let img = target.mul(st.phi[x as usize], st.chosen[j as usize]);
                if injective {
                    if st.used.contains(img) {
                        ok = false;
                        break;
                    }
                    st.used.insert(img);
                }
                st.phi[y as usize] = img;
                defined += 1;
            }
            if ok {
                ok = lv.checks.iter().all(|&(x, j, y)| {
                    target.mul(st.phi[x as usize], st.chosen[j as usize]) == st.phi[y as usize]
                });
            }
            let keep_going = if ok {
                if level + 1 == self.levels.len() {
                    visit(&st.phi)
                } else {
                    self.descend(level + 1, target, candidates, injective, budget, st, visit)?
                }
            } else {
                true
            };
            if injective {
                for &(y, _, _) in &lv.defines[..defined] {
                    st.used.set(st.phi[y as usize], false);
                }
            }
            if !keep_going {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

struct SearchState {
    phi: Vec<usize>,
    chosen: Vec<usize>,
    used: FixedBitSet,
    nodes: u64,
}
