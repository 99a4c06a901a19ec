//! Two-dimensional cobordisms written as layered words over elementary generators.
//!
//! A word is read top to bottom: the first layer consumes the input circles. Inside a layer the
//! generators act left to right on consecutive strands.

mod moves;
mod parse;
mod random;

use std::fmt;

use crate::error::{Error, Result};

pub use moves::{applicable_moves, apply_cerf_move, CerfMove, MoveFamily, MoveKind};
pub use parse::parse_word;
pub use random::{random_word, RandomWordConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    /// Cylinder, 1 → 1.
    Id,
    /// Exchange of two adjacent circles, 2 → 2.
    Swap,
    /// Disc creating a circle, 0 → 1.
    Cup,
    /// Disc capping a circle, 1 → 0.
    Cap,
    /// Pair of pants, 2 → 1.
    Mul,
    /// Copants, 1 → 2.
    Comul,
}

impl Generator {
    pub const ALL: [Generator; 6] = [
        Generator::Id,
        Generator::Swap,
        Generator::Cup,
        Generator::Cap,
        Generator::Mul,
        Generator::Comul,
    ];

    /// `(inputs, outputs)`.
    pub fn arity(self) -> (usize, usize) {
        match self {
            Generator::Id => (1, 1),
            Generator::Swap => (2, 2),
            Generator::Cup => (0, 1),
            Generator::Cap => (1, 0),
            Generator::Mul => (2, 1),
            Generator::Comul => (1, 2),
        }
    }

    pub fn inputs(self) -> usize {
        self.arity().0
    }

    pub fn outputs(self) -> usize {
        self.arity().1
    }

    pub fn euler_char(self) -> i64 {
        match self {
            Generator::Cup | Generator::Cap => 1,
            Generator::Mul | Generator::Comul => -1,
            Generator::Id | Generator::Swap => 0,
        }
    }

    pub fn keyword(self) -> &'static str {
        match self {
            Generator::Id => "id",
            Generator::Swap => "swap",
            Generator::Cup => "cup",
            Generator::Cap => "cap",
            Generator::Mul => "mul",
            Generator::Comul => "comul",
        }
    }

    pub fn from_keyword(word: &str) -> Option<Generator> {
        Generator::ALL.into_iter().find(|g| g.keyword() == word)
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

pub type Layer = Vec<Generator>;

/// Total input and output arity of a layer.
pub fn layer_arity(layer: &[Generator]) -> (usize, usize) {
    layer
        .iter()
        .fold((0, 0), |(i, o), g| (i + g.inputs(), o + g.outputs()))
}

/// A validated layered word.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CobordismWord {
    layers: Vec<Layer>,
    in_width: usize,
    out_width: usize,
}

impl CobordismWord {
    /// Checks the width chain. Layer numbers in errors are 1-based.
    pub fn new(layers: Vec<Layer>) -> Result<Self> {
        if layers.is_empty() {
            return Err(Error::Format("a word needs at least one layer".into()));
        }
        let in_width = layer_arity(&layers[0]).0;
        let mut width = in_width;
        for (k, layer) in layers.iter().enumerate() {
            if layer.is_empty() {
                return Err(Error::Format(format!("layer {} is empty", k + 1)));
            }
            let (inputs, outputs) = layer_arity(layer);
            if inputs != width {
                return Err(Error::WidthMismatch {
                    layer: k + 1,
                    expected: width,
                    got: inputs,
                });
            }
            width = outputs;
        }
        Ok(CobordismWord {
            layers,
            in_width,
            out_width: width,
        })
    }

    /// The cylinder on `width` circles, a single layer of `id`s.
    pub fn identity(width: usize) -> Result<Self> {
        if width == 0 {
            return Err(Error::Format("the empty identity has no layer".into()));
        }
        CobordismWord::new(vec![vec![Generator::Id; width]])
    }

    /// `cup ; (comul ; mul)^g ; cap`.
    pub fn closed_surface(genus: usize) -> Self {
        CobordismWord::connected(genus, 0, 0)
    }

    /// A connected surface of the given genus with `inputs` incoming and `outputs` outgoing
    /// circles: merge the inputs, add handles, then split into the outputs.
    pub fn connected(genus: usize, inputs: usize, outputs: usize) -> Self {
        use Generator::*;
        let mut layers = Vec::new();
        if inputs == 0 {
            layers.push(vec![Cup]);
        }
        for width in (2..=inputs).rev() {
            let mut layer = vec![Mul];
            layer.extend(std::iter::repeat_n(Id, width - 2));
            layers.push(layer);
        }
        for _ in 0..genus {
            layers.push(vec![Comul]);
            layers.push(vec![Mul]);
        }
        if outputs == 0 {
            layers.push(vec![Cap]);
        }
        for width in 1..outputs {
            let mut layer = vec![Comul];
            layer.extend(std::iter::repeat_n(Id, width - 1));
            layers.push(layer);
        }
        if layers.is_empty() {
            layers.push(vec![Id]);
        }
        CobordismWord::new(layers).expect("connected surface word is well formed")
    }

    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }

    pub fn in_width(&self) -> usize {
        self.in_width
    }

    pub fn out_width(&self) -> usize {
        self.out_width
    }

    /// Widths of the boundaries between layers, `layers().len() + 1` entries.
    pub fn boundary_widths(&self) -> Vec<usize> {
        let mut widths = vec![self.in_width];
        widths.extend(self.layers.iter().map(|l| layer_arity(l).1));
        widths
    }

    pub fn max_width(&self) -> usize {
        self.boundary_widths().into_iter().max().unwrap_or(0)
    }

    pub fn generator_count(&self) -> usize {
        self.layers.iter().map(Vec::len).sum()
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &CobordismWord) -> Result<Self> {
        if self.out_width != next.in_width {
            return Err(Error::WidthMismatch {
                layer: self.layers.len() + 1,
                expected: self.out_width,
                got: next.in_width,
            });
        }
        let mut layers = self.layers.clone();
        layers.extend(next.layers.iter().cloned());
        CobordismWord::new(layers)
    }

    /// Disjoint union with `self` on the lower-index strands. The shorter word is padded
    /// with identity layers.
    pub fn beside(&self, other: &CobordismWord) -> Self {
        let depth = self.layers.len().max(other.layers.len());
        let pad = |w: &CobordismWord, k: usize| -> Layer {
            w.layers
                .get(k)
                .cloned()
                .unwrap_or_else(|| vec![Generator::Id; w.out_width])
        };
        let layers = (0..depth)
            .map(|k| {
                let mut layer = pad(self, k);
                layer.extend(pad(other, k));
                layer
            })
            .collect();
        CobordismWord::new(layers).expect("side-by-side words chain")
    }

    pub fn euler_char(&self) -> i64 {
        self.layers.iter().flatten().map(|g| g.euler_char()).sum()
    }

    pub fn normal_form(&self) -> NormalForm {
        NormalForm::of(self)
    }
}

impl fmt::Display for CobordismWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, layer) in self.layers.iter().enumerate() {
            if k > 0 {
                f.write_str(" ; ")?;
            }
            for (j, g) in layer.iter().enumerate() {
                if j > 0 {
                    f.write_str(" , ")?;
                }
                write!(f, "{g}")?;
            }
        }
        Ok(())
    }
}

pub fn euler_char(w: &CobordismWord) -> i64 {
    w.euler_char()
}

pub fn normal_form(w: &CobordismWord) -> NormalForm {
    w.normal_form()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OpenComponent {
    pub genus: usize,
    pub inputs: Vec<usize>,
    pub outputs: Vec<usize>,
}

impl OpenComponent {
    pub fn boundary_count(&self) -> usize {
        self.inputs.len() + self.outputs.len()
    }

    pub fn euler_char(&self) -> i64 {
        2 - 2 * self.genus as i64 - self.boundary_count() as i64
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClosedComponent {
    pub genus: usize,
}

/// The surface up to diffeomorphism rel boundary: connected components with genus and
/// boundary circles.
///
/// Open components are ordered by their lowest input index, with output-only components after
/// all others ordered by lowest output index. Closed components are sorted by genus.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NormalForm {
    pub in_width: usize,
    pub out_width: usize,
    pub open_components: Vec<OpenComponent>,
    pub closed_components: Vec<ClosedComponent>,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn add(&mut self) -> usize {
        self.parent.push(self.parent.len());
        self.parent.len() - 1
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

impl NormalForm {
    fn of(w: &CobordismWord) -> Self {
        let mut uf = UnionFind { parent: Vec::new() };
        let mut chi: Vec<i64> = Vec::new();
        let mut strands: Vec<usize> = (0..w.in_width)
            .map(|_| {
                chi.push(0);
                uf.add()
            })
            .collect();
        let inputs = strands.clone();
        for layer in &w.layers {
            let mut next = Vec::new();
            let mut offset = 0;
            for &g in layer {
                let consumed = &strands[offset..offset + g.inputs()];
                offset += g.inputs();
                match g {
                    Generator::Id => next.push(consumed[0]),
                    Generator::Swap => next.extend([consumed[1], consumed[0]]),
                    _ => {
                        let node = uf.add();
                        chi.push(g.euler_char());
                        for &s in consumed {
                            uf.union(node, s);
                        }
                        next.extend(std::iter::repeat_n(node, g.outputs()));
                    }
                }
            }
            strands = next;
        }
        let outputs = strands;

        let total = uf.parent.len();
        let mut component_chi = vec![0i64; total];
        for node in 0..total {
            let r = uf.find(node);
            component_chi[r] += chi[node];
        }
        let mut boundary_in: Vec<Vec<usize>> = vec![Vec::new(); total];
        let mut boundary_out: Vec<Vec<usize>> = vec![Vec::new(); total];
        for (i, &s) in inputs.iter().enumerate() {
            let r = uf.find(s);
            boundary_in[r].push(i);
        }
        for (i, &s) in outputs.iter().enumerate() {
            let r = uf.find(s);
            boundary_out[r].push(i);
        }

        let genus = |chi: i64, b: usize| -> usize {
            let twice = 2 - b as i64 - chi;
            debug_assert!(
                twice >= 0 && twice % 2 == 0,
                "surface with odd Euler defect"
            );
            (twice / 2) as usize
        };
        let mut open_components = Vec::new();
        let mut closed_components = Vec::new();
        for node in 0..total {
            if uf.find(node) != node {
                continue;
            }
            let b = boundary_in[node].len() + boundary_out[node].len();
            let g = genus(component_chi[node], b);
            if b == 0 {
                closed_components.push(ClosedComponent { genus: g });
            } else {
                open_components.push(OpenComponent {
                    genus: g,
                    inputs: std::mem::take(&mut boundary_in[node]),
                    outputs: std::mem::take(&mut boundary_out[node]),
                });
            }
        }
        let in_width = w.in_width;
        open_components.sort_by_key(|c| match c.inputs.first() {
            Some(&i) => i,
            None => in_width + c.outputs[0],
        });
        closed_components.sort();
        NormalForm {
            in_width: w.in_width,
            out_width: w.out_width,
            open_components,
            closed_components,
        }
    }

    pub fn component_count(&self) -> usize {
        self.open_components.len() + self.closed_components.len()
    }

    pub fn euler_char(&self) -> i64 {
        let open: i64 = self
            .open_components
            .iter()
            .map(OpenComponent::euler_char)
            .sum();
        let closed: i64 = self
            .closed_components
            .iter()
            .map(|c| 2 - 2 * c.genus as i64)
            .sum();
        open + closed
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}:", self.in_width, self.out_width)?;
        for c in &self.open_components {
            write!(
                f,
                " {{g={} in={:?} out={:?}}}",
                c.genus, c.inputs, c.outputs
            )?;
        }
        for c in &self.closed_components {
            write!(f, " {{closed g={}}}", c.genus)?;
        }
        Ok(())
    }
}
