use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{CobordismWord, Generator, Layer};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RandomWordConfig {
    pub max_width: usize,
    pub max_layers: usize,
}

impl Default for RandomWordConfig {
    fn default() -> Self {
        RandomWordConfig {
            max_width: 4,
            max_layers: 6,
        }
    }
}

/// A seeded random word whose boundary widths never exceed `max_width`.
pub fn random_word(seed: u64, cfg: &RandomWordConfig) -> CobordismWord {
    assert!(cfg.max_width >= 1, "max_width must be at least 1");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let depth = rng.gen_range(1..=cfg.max_layers.max(1));
    let mut width = rng.gen_range(0..=cfg.max_width);
    let mut layers = Vec::with_capacity(depth);
    for _ in 0..depth {
        let layer = random_layer(&mut rng, width, cfg.max_width);
        width = super::layer_arity(&layer).1;
        layers.push(layer);
    }
    CobordismWord::new(layers).expect("generated layers chain")
}

fn random_layer<R: Rng>(rng: &mut R, width: usize, max_width: usize) -> Layer {
    use Generator::*;
    loop {
        let mut layer = Vec::new();
        let mut remaining = width;
        let mut out = 0;
        loop {
            if (width == 0 && layer.is_empty()) || rng.gen_bool(0.12) {
                layer.push(Cup);
                out += 1;
            }
            if remaining == 0 {
                break;
            }
            let choices: &[(Generator, u32)] = if remaining >= 2 {
                &[(Id, 4), (Swap, 2), (Cap, 1), (Mul, 2), (Comul, 2)]
            } else {
                &[(Id, 4), (Cap, 1), (Comul, 2)]
            };
            let total: u32 = choices.iter().map(|c| c.1).sum();
            let mut pick = rng.gen_range(0..total);
            let g = choices
                .iter()
                .find(|(_, w)| {
                    if pick < *w {
                        true
                    } else {
                        pick -= w;
                        false
                    }
                })
                .unwrap()
                .0;
            layer.push(g);
            remaining -= g.inputs();
            out += g.outputs();
        }
        if out <= max_width {
            return layer;
        }
    }
}
