//! Local rewrites relating different layerings of the same surface.
//!
//! A move is addressed by `(layer, slot)`: the layer index and the index of a generator inside
//! that layer. Moves that span two layers are addressed by the generator in the upper layer;
//! the partner in the next layer must start at the strand where the upper pattern's outputs
//! begin.

use super::{layer_arity, CobordismWord, Generator, Layer};
use crate::error::{Error, Result};
use Generator::*;

/// The three families of moves between Morse decompositions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MoveFamily {
    /// Composition with cylinders.
    Identity,
    /// Cancelling a unit against a product, or a counit against a coproduct.
    UnitCounit,
    /// Exchanging a product and a coproduct.
    Frobenius,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MoveKind {
    /// Insert an all-`id` layer before `layer` (which may equal the layer count).
    InsertIdentity,
    /// Delete `layer` if it is all `id` and not the only layer.
    RemoveIdentity,
    /// Split `layer` before `slot` into two layers, each padded with `id`. Only allowed when
    /// the new middle boundary is no wider than the layer's input or output.
    SplitLayer,
    /// `comul ; cap , id` becomes `id`.
    CounitLeft,
    /// `comul ; id , cap` becomes `id`.
    CounitRight,
    /// `cup , id ; mul` becomes `id`.
    UnitLeft,
    /// `id , cup ; mul` becomes `id`.
    UnitRight,
    /// `id , comul ; mul , id` becomes `mul ; comul`.
    FrobeniusLeft,
    /// `comul , id ; id , mul` becomes `mul ; comul`.
    FrobeniusRight,
    /// `mul ; comul` becomes `id , comul ; mul , id`.
    ExpandLeft,
    /// `mul ; comul` becomes `comul , id ; id , mul`.
    ExpandRight,
}

impl MoveKind {
    pub const ALL: [MoveKind; 11] = [
        MoveKind::InsertIdentity,
        MoveKind::RemoveIdentity,
        MoveKind::SplitLayer,
        MoveKind::CounitLeft,
        MoveKind::CounitRight,
        MoveKind::UnitLeft,
        MoveKind::UnitRight,
        MoveKind::FrobeniusLeft,
        MoveKind::FrobeniusRight,
        MoveKind::ExpandLeft,
        MoveKind::ExpandRight,
    ];

    pub fn family(self) -> MoveFamily {
        match self {
            MoveKind::InsertIdentity | MoveKind::RemoveIdentity | MoveKind::SplitLayer => {
                MoveFamily::Identity
            }
            MoveKind::CounitLeft
            | MoveKind::CounitRight
            | MoveKind::UnitLeft
            | MoveKind::UnitRight => MoveFamily::UnitCounit,
            _ => MoveFamily::Frobenius,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CerfMove {
    pub kind: MoveKind,
    pub layer: usize,
    pub slot: usize,
}

impl CerfMove {
    pub fn new(kind: MoveKind, layer: usize, slot: usize) -> Self {
        CerfMove { kind, layer, slot }
    }
}

/// Output strand offset of `slot` in `layer`.
fn output_offset(layer: &[Generator], slot: usize) -> usize {
    layer[..slot].iter().map(|g| g.outputs()).sum()
}

/// Slot in `layer` whose first input strand is `offset`.
fn slot_at_input(layer: &[Generator], offset: usize) -> Option<usize> {
    let mut at = 0;
    for (j, g) in layer.iter().enumerate() {
        if at == offset && g.inputs() > 0 {
            return Some(j);
        }
        at += g.inputs();
        if at > offset {
            return None;
        }
    }
    None
}

fn matches(layer: &[Generator], slot: usize, pattern: &[Generator]) -> bool {
    layer.get(slot..slot + pattern.len()) == Some(pattern)
}

fn splice(layer: &mut Layer, slot: usize, len: usize, replacement: &[Generator]) {
    layer.splice(slot..slot + len, replacement.iter().copied());
}

fn is_identity_layer(layer: &[Generator]) -> bool {
    !layer.is_empty() && layer.iter().all(|&g| g == Id)
}

type Pattern = (
    &'static [Generator],
    &'static [Generator],
    &'static [Generator],
    &'static [Generator],
);

/// `(upper, lower, upper replacement, lower replacement)`.
fn two_layer_pattern(kind: MoveKind) -> Pattern {
    match kind {
        MoveKind::CounitLeft => (&[Comul], &[Cap, Id], &[Id], &[Id]),
        MoveKind::CounitRight => (&[Comul], &[Id, Cap], &[Id], &[Id]),
        MoveKind::UnitLeft => (&[Cup, Id], &[Mul], &[Id], &[Id]),
        MoveKind::UnitRight => (&[Id, Cup], &[Mul], &[Id], &[Id]),
        MoveKind::FrobeniusLeft => (&[Id, Comul], &[Mul, Id], &[Mul], &[Comul]),
        MoveKind::FrobeniusRight => (&[Comul, Id], &[Id, Mul], &[Mul], &[Comul]),
        MoveKind::ExpandLeft => (&[Mul], &[Comul], &[Id, Comul], &[Mul, Id]),
        MoveKind::ExpandRight => (&[Mul], &[Comul], &[Comul, Id], &[Id, Mul]),
        _ => unreachable!("single-layer move"),
    }
}

/// Applies `m` to `w`. The result describes the same surface.
pub fn apply_cerf_move(w: &CobordismWord, m: CerfMove) -> Result<CobordismWord> {
    let mismatch = Error::PatternMismatch {
        layer: m.layer,
        slot: m.slot,
    };
    let mut layers: Vec<Layer> = w.layers().to_vec();
    let k = m.layer;
    match m.kind {
        MoveKind::InsertIdentity => {
            let widths = w.boundary_widths();
            if k > layers.len() || widths[k] == 0 {
                return Err(mismatch);
            }
            layers.insert(k, vec![Id; widths[k]]);
        }
        MoveKind::RemoveIdentity => {
            if layers.len() < 2 || !layers.get(k).is_some_and(|l| is_identity_layer(l)) {
                return Err(mismatch);
            }
            layers.remove(k);
        }
        MoveKind::SplitLayer => {
            let Some(layer) = layers.get(k) else {
                return Err(mismatch);
            };
            if m.slot == 0 || m.slot >= layer.len() {
                return Err(mismatch);
            }
            let (left, right) = layer.split_at(m.slot);
            let (inputs, outputs) = layer_arity(layer);
            if layer_arity(left).1 + layer_arity(right).0 > inputs.max(outputs) {
                return Err(mismatch);
            }
            let mut upper = left.to_vec();
            upper.extend(std::iter::repeat_n(Id, layer_arity(right).0));
            let mut lower = vec![Id; layer_arity(left).1];
            lower.extend_from_slice(right);
            layers.splice(k..k + 1, [upper, lower]);
        }
        kind => {
            let (upper, lower, new_upper, new_lower) = two_layer_pattern(kind);
            if k + 1 >= layers.len() || !matches(&layers[k], m.slot, upper) {
                return Err(mismatch);
            }
            let offset = output_offset(&layers[k], m.slot);
            let Some(lower_slot) = slot_at_input(&layers[k + 1], offset) else {
                return Err(mismatch);
            };
            if !matches(&layers[k + 1], lower_slot, lower) {
                return Err(mismatch);
            }
            splice(&mut layers[k], m.slot, upper.len(), new_upper);
            splice(&mut layers[k + 1], lower_slot, lower.len(), new_lower);
            if m.kind.family() == MoveFamily::UnitCounit {
                for index in [k + 1, k] {
                    if layers.len() > 1 && is_identity_layer(&layers[index]) {
                        layers.remove(index);
                    }
                }
            }
        }
    }
    CobordismWord::new(layers)
}

/// Every move that applies somewhere in `w`, in a deterministic order.
pub fn applicable_moves(w: &CobordismWord) -> Vec<CerfMove> {
    let mut out = Vec::new();
    let layer_count = w.layers().len();
    for kind in MoveKind::ALL {
        for layer in 0..=layer_count {
            let slots = w.layers().get(layer).map_or(1, |l| l.len().max(1));
            for slot in 0..slots {
                let m = CerfMove::new(kind, layer, slot);
                let single_position =
                    matches!(kind, MoveKind::InsertIdentity | MoveKind::RemoveIdentity);
                if single_position && slot > 0 {
                    continue;
                }
                if apply_cerf_move(w, m).is_ok() {
                    out.push(m);
                }
            }
        }
    }
    out
}
