//! Layered rewriting for chains of composable edge generators.
//!
//! A [`Signature`] declares objects (letters), edges between words of
//! letters, and squares that replace one block of consecutive edges in a
//! chain by another block with the same boundary.  A 2-cell is a base
//! [`Chain`] together with a list of [`Layer`]s applied in order; each layer
//! names a square, the edge position it acts at, and whether it is formally
//! inverted.
//!
//! Two layer lists on the same chain are compared by [`Signature::rewrite_check`],
//! a bounded bidirectional search over three elementary moves:
//!
//! * interchange of two adjacent layers acting on disjoint edge blocks,
//! * deletion of an adjacent pair whose composite is the identity
//!   (a zigzag of a declared adjunction, a declared cancelling pair, or a
//!   layer followed by its own formal inverse),
//! * insertion of such a pair.
//!
//! Every move is validated against the chain it acts on, so each step of a
//! returned trace is boundary preserving; [`Signature::apply_trace`] replays
//! a trace with the same checks.

use std::collections::{HashMap, VecDeque};

use thiserror::Error;

pub type ObjId = usize;
pub type EdgeId = usize;
pub type SquareId = usize;

/// Default number of search states explored before giving up.
pub const DEFAULT_REWRITE_BUDGET: usize = 10_000;

#[derive(Debug, Error, PartialEq)]
pub enum RewriteError {
    #[error("unknown object index {0}")]
    UnknownObject(usize),
    #[error("unknown edge index {0}")]
    UnknownEdge(usize),
    #[error("unknown square index {0}")]
    UnknownSquare(usize),
    #[error("chain fails to compose at edge position {0}")]
    IllTypedChain(usize),
    #[error("square {0} must leave the chain boundary fixed")]
    BadSquare(String),
    #[error("an adjunction pairs a unit [] => [f, g] with a counit [g, f] => []")]
    BadAdjunction,
    #[error("a cancel rule pairs two squares with swapped source and target")]
    BadCancel,
    #[error("layer {index} does not apply to the chain")]
    LayerDoesNotApply { index: usize },
    #[error("the two sides do not bound the same chains")]
    BoundaryMismatch,
    #[error("search budget of {budget} states exhausted")]
    BudgetExhausted { budget: usize },
    #[error("trace step {index} does not replay")]
    BadTraceStep { index: usize },
}

#[derive(Debug, Clone)]
struct Edge {
    name: String,
    source: Vec<ObjId>,
    target: Vec<ObjId>,
}

#[derive(Debug, Clone)]
struct Square {
    name: String,
    at: Vec<ObjId>,
    source: Vec<EdgeId>,
    target: Vec<EdgeId>,
}

/// A composable sequence of edges.  `start` is the object word at the left
/// end; each edge must consume the word produced so far.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Chain {
    pub start: Vec<ObjId>,
    pub edges: Vec<EdgeId>,
}

/// One rewrite layer: apply `square` (or its formal inverse) at edge
/// position `offset` of the current chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Layer {
    pub square: SquareId,
    pub offset: usize,
    pub inverted: bool,
}

impl Layer {
    pub fn new(square: SquareId, offset: usize) -> Self {
        Layer { square, offset, inverted: false }
    }

    pub fn inverse(self) -> Self {
        Layer { inverted: !self.inverted, ..self }
    }
}

/// Why an adjacent pair of layers composes to the identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairRule {
    /// Unit then counit of the indexed adjunction, offsets differing by one.
    Zigzag { adjunction: usize },
    /// The indexed cancel rule, both layers at the same offset.
    Cancel { rule: usize },
    /// A layer followed by its own formal inverse.
    Inverse,
}

/// One elementary move of a rewrite trace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TraceStep {
    /// Swap the independent layers at positions `index` and `index + 1`,
    /// replacing the pair `from` by the reordered pair `to`.  Both pairs are
    /// recorded because a zero-width block touching a deletion boundary has
    /// two valid reorderings, so the result is not determined by the index.
    Interchange { index: usize, from: [Layer; 2], to: [Layer; 2] },
    /// Remove the identity pair at positions `index` and `index + 1`.
    DeletePair { index: usize, pair: [Layer; 2], rule: PairRule },
    /// Insert `pair` before position `index`.
    InsertPair { index: usize, pair: [Layer; 2], rule: PairRule },
}

/// Inverse move: deletions and insertions swap, interchanges run backwards.
pub fn invert_step(step: &TraceStep) -> TraceStep {
    match step {
        TraceStep::Interchange { index, from, to } => {
            TraceStep::Interchange { index: *index, from: *to, to: *from }
        }
        TraceStep::DeletePair { index, pair, rule } => {
            TraceStep::InsertPair { index: *index, pair: *pair, rule: *rule }
        }
        TraceStep::InsertPair { index, pair, rule } => {
            TraceStep::DeletePair { index: *index, pair: *pair, rule: *rule }
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct Signature {
    objects: Vec<String>,
    edges: Vec<Edge>,
    squares: Vec<Square>,
    adjunctions: Vec<(SquareId, SquareId)>,
    cancels: Vec<(SquareId, SquareId)>,
}

impl Signature {
    pub fn new() -> Self {
        Signature::default()
    }

    pub fn add_object(&mut self, name: impl Into<String>) -> ObjId {
        self.objects.push(name.into());
        self.objects.len() - 1
    }

    pub fn add_edge(
        &mut self,
        name: impl Into<String>,
        source: Vec<ObjId>,
        target: Vec<ObjId>,
    ) -> Result<EdgeId, RewriteError> {
        for &o in source.iter().chain(target.iter()) {
            if o >= self.objects.len() {
                return Err(RewriteError::UnknownObject(o));
            }
        }
        self.edges.push(Edge { name: name.into(), source, target });
        Ok(self.edges.len() - 1)
    }

    /// Add a square `source => target` acting at object word `at`.  Both
    /// sides must compose starting from `at` and end at the same word.
    pub fn add_square(
        &mut self,
        name: impl Into<String>,
        at: Vec<ObjId>,
        source: Vec<EdgeId>,
        target: Vec<EdgeId>,
    ) -> Result<SquareId, RewriteError> {
        let name = name.into();
        for &o in &at {
            if o >= self.objects.len() {
                return Err(RewriteError::UnknownObject(o));
            }
        }
        for &e in source.iter().chain(target.iter()) {
            if e >= self.edges.len() {
                return Err(RewriteError::UnknownEdge(e));
            }
        }
        let src_end = self.word_after(&at, &source);
        let tgt_end = self.word_after(&at, &target);
        match (src_end, tgt_end) {
            (Some(a), Some(b)) if a == b => {}
            _ => return Err(RewriteError::BadSquare(name)),
        }
        self.squares.push(Square { name, at, source, target });
        Ok(self.squares.len() - 1)
    }

    /// Declare `unit: [] => [f, g]` and `counit: [g, f] => []` as an
    /// adjunction, enabling zigzag pair moves.
    pub fn add_adjunction(&mut self, unit: SquareId, counit: SquareId) -> Result<(), RewriteError> {
        let u = self.square(unit)?;
        let c = self.square(counit)?;
        if u.source.is_empty() && u.target.len() == 2 && c.target.is_empty() && c.source.len() == 2 {
            let (f, g) = (u.target[0], u.target[1]);
            let f_ok = self.edges[f].source == u.at;
            let middle = &self.edges[f].target;
            if f_ok && c.source == [g, f] && c.at == *middle && self.edges[g].target == u.at {
                self.adjunctions.push((unit, counit));
                return Ok(());
            }
        }
        Err(RewriteError::BadAdjunction)
    }

    /// Declare that `first` directly followed by `second` at the same offset
    /// composes to the identity.
    pub fn add_cancel(&mut self, first: SquareId, second: SquareId) -> Result<(), RewriteError> {
        let a = self.square(first)?;
        let b = self.square(second)?;
        if a.at == b.at && a.source == b.target && a.target == b.source {
            self.cancels.push((first, second));
            Ok(())
        } else {
            Err(RewriteError::BadCancel)
        }
    }

    pub fn object_name(&self, o: ObjId) -> &str {
        &self.objects[o]
    }

    pub fn edge_name(&self, e: EdgeId) -> &str {
        &self.edges[e].name
    }

    pub fn square_name(&self, s: SquareId) -> &str {
        &self.squares[s].name
    }

    pub fn edge_source(&self, e: EdgeId) -> &[ObjId] {
        &self.edges[e].source
    }

    pub fn edge_target(&self, e: EdgeId) -> &[ObjId] {
        &self.edges[e].target
    }

    pub fn square_at(&self, s: SquareId) -> &[ObjId] {
        &self.squares[s].at
    }

    pub fn square_source(&self, s: SquareId) -> &[EdgeId] {
        &self.squares[s].source
    }

    pub fn square_target(&self, s: SquareId) -> &[EdgeId] {
        &self.squares[s].target
    }

    pub fn find_object(&self, name: &str) -> Option<ObjId> {
        self.objects.iter().position(|n| n == name)
    }

    pub fn find_edge(&self, name: &str) -> Option<EdgeId> {
        self.edges.iter().position(|e| e.name == name)
    }

    pub fn find_square(&self, name: &str) -> Option<SquareId> {
        self.squares.iter().position(|s| s.name == name)
    }

    fn square(&self, s: SquareId) -> Result<&Square, RewriteError> {
        self.squares.get(s).ok_or(RewriteError::UnknownSquare(s))
    }

    fn word_after(&self, start: &[ObjId], edges: &[EdgeId]) -> Option<Vec<ObjId>> {
        let mut word = start.to_vec();
        for &e in edges {
            if self.edges[e].source != word {
                return None;
            }
            word.clone_from(&self.edges[e].target);
        }
        Some(word)
    }

    pub fn validate_chain(&self, chain: &Chain) -> Result<(), RewriteError> {
        for &o in &chain.start {
            if o >= self.objects.len() {
                return Err(RewriteError::UnknownObject(o));
            }
        }
        let mut word = chain.start.clone();
        for (i, &e) in chain.edges.iter().enumerate() {
            let edge = self.edges.get(e).ok_or(RewriteError::UnknownEdge(e))?;
            if edge.source != word {
                return Err(RewriteError::IllTypedChain(i));
            }
            word.clone_from(&edge.target);
        }
        Ok(())
    }

    /// Object word reached after the whole chain.
    pub fn chain_end(&self, chain: &Chain) -> Result<Vec<ObjId>, RewriteError> {
        self.validate_chain(chain)?;
        Ok(self.word_after(&chain.start, &chain.edges).expect("validated chain"))
    }

    /// Source and target edge blocks of a layer, accounting for inversion.
    fn layer_blocks(&self, layer: Layer) -> (&[EdgeId], &[EdgeId]) {
        let sq = &self.squares[layer.square];
        if layer.inverted {
            (&sq.target, &sq.source)
        } else {
            (&sq.source, &sq.target)
        }
    }

    fn layer_spans(&self, layer: Layer) -> (usize, usize) {
        let (src, tgt) = self.layer_blocks(layer);
        (src.len(), tgt.len())
    }

    /// Apply one layer in place.  Fails unless the named block sits at
    /// `offset` over the right object word.
    fn apply_layer(
        &self,
        start: &[ObjId],
        edges: &mut Vec<EdgeId>,
        layer: Layer,
    ) -> Result<(), RewriteError> {
        if layer.square >= self.squares.len() {
            return Err(RewriteError::UnknownSquare(layer.square));
        }
        let (src, tgt) = {
            let (s, t) = self.layer_blocks(layer);
            (s.to_vec(), t.to_vec())
        };
        let at = &self.squares[layer.square].at;
        let err = RewriteError::LayerDoesNotApply { index: layer.offset };
        if layer.offset + src.len() > edges.len() || edges[layer.offset..layer.offset + src.len()] != src[..] {
            return Err(err);
        }
        let mut word = start.to_vec();
        for &e in &edges[..layer.offset] {
            if self.edges[e].source != word {
                return Err(err);
            }
            word.clone_from(&self.edges[e].target);
        }
        if word != *at {
            return Err(err);
        }
        edges.splice(layer.offset..layer.offset + src.len(), tgt);
        Ok(())
    }

    /// Run every layer over the chain, returning the final edge sequence.
    pub fn apply_layers(&self, chain: &Chain, layers: &[Layer]) -> Result<Vec<EdgeId>, RewriteError> {
        self.validate_chain(chain)?;
        let mut edges = chain.edges.clone();
        for (i, &layer) in layers.iter().enumerate() {
            self.apply_layer(&chain.start, &mut edges, layer)
                .map_err(|_| RewriteError::LayerDoesNotApply { index: i })?;
        }
        Ok(edges)
    }

    /// Interchange two adjacent layers acting on disjoint blocks.  `first`
    /// runs before `second`; the returned pair runs the second layer first.
    /// When both reorderings are valid (`second` inserts exactly where
    /// `first` deleted), the left-of reading is returned; `commute_all`
    /// lists every option.
    pub fn commute(&self, first: Layer, second: Layer) -> Option<(Layer, Layer)> {
        self.commute_all(first, second).into_iter().next()
    }

    /// Every valid reordering of two adjacent layers: at most two, and two
    /// only when `second` has a zero-width source block sitting at the end
    /// of a block `first` fully deleted.
    pub fn commute_all(&self, first: Layer, second: Layer) -> Vec<(Layer, Layer)> {
        let (sa, ta) = self.layer_spans(first);
        let (sb, tb) = self.layer_spans(second);
        let mut out = Vec::new();
        if second.offset + sb <= first.offset {
            // second acts left of first's block
            let moved = Layer { offset: first.offset - sb + tb, ..first };
            out.push((second, moved));
        }
        if second.offset >= first.offset + ta {
            // second acts right of first's block
            let moved = Layer { offset: second.offset - ta + sa, ..second };
            out.push((moved, first));
        }
        out
    }

    /// Pattern of an adjacent pair that composes to the identity, if any.
    /// Context conditions are checked separately by simulation.
    fn pair_rule(&self, x: Layer, y: Layer) -> Option<PairRule> {
        if x.square == y.square && x.offset == y.offset && x.inverted != y.inverted {
            return Some(PairRule::Inverse);
        }
        if !x.inverted && !y.inverted {
            for (i, &(unit, counit)) in self.adjunctions.iter().enumerate() {
                if x.square == unit
                    && y.square == counit
                    && (y.offset == x.offset + 1 || y.offset + 1 == x.offset)
                {
                    return Some(PairRule::Zigzag { adjunction: i });
                }
            }
            for (i, &(first, second)) in self.cancels.iter().enumerate() {
                if x.square == first && y.square == second && x.offset == y.offset {
                    return Some(PairRule::Cancel { rule: i });
                }
            }
        } else if x.inverted && y.inverted {
            // the formal inverse of a deletable pair, in reverse order
            for (i, &(unit, counit)) in self.adjunctions.iter().enumerate() {
                if x.square == counit
                    && y.square == unit
                    && (x.offset == y.offset + 1 || x.offset + 1 == y.offset)
                {
                    return Some(PairRule::Zigzag { adjunction: i });
                }
            }
            for (i, &(first, second)) in self.cancels.iter().enumerate() {
                if x.square == second && y.square == first && x.offset == y.offset {
                    return Some(PairRule::Cancel { rule: i });
                }
            }
        }
        None
    }

    /// True when applying `x` then `y` to `edges` is defined and returns the
    /// same edge sequence.
    fn pair_net_identity(&self, start: &[ObjId], edges: &[EdgeId], x: Layer, y: Layer) -> bool {
        let mut work = edges.to_vec();
        self.apply_layer(start, &mut work, x).is_ok()
            && self.apply_layer(start, &mut work, y).is_ok()
            && work == edges
    }

    /// Edge sequences before each layer, plus the final one.
    fn stages(&self, chain: &Chain, layers: &[Layer]) -> Option<Vec<Vec<EdgeId>>> {
        let mut out = Vec::with_capacity(layers.len() + 1);
        let mut edges = chain.edges.clone();
        out.push(edges.clone());
        for &layer in layers {
            self.apply_layer(&chain.start, &mut edges, layer).ok()?;
            out.push(edges.clone());
        }
        Some(out)
    }

    /// All elementary moves available from `layers`, with resulting states.
    fn expand(&self, chain: &Chain, layers: &[Layer], cap: usize) -> Vec<(TraceStep, Vec<Layer>)> {
        let mut moves = Vec::new();
        let stages = match self.stages(chain, layers) {
            Some(s) => s,
            None => return moves,
        };
        for i in 0..layers.len().saturating_sub(1) {
            for (a, b) in self.commute_all(layers[i], layers[i + 1]) {
                let mut next = layers.to_vec();
                next[i] = a;
                next[i + 1] = b;
                let step = TraceStep::Interchange {
                    index: i,
                    from: [layers[i], layers[i + 1]],
                    to: [a, b],
                };
                moves.push((step, next));
            }
            let (x, y) = (layers[i], layers[i + 1]);
            if let Some(rule) = self.pair_rule(x, y) {
                if self.pair_net_identity(&chain.start, &stages[i], x, y) {
                    let mut next = layers.to_vec();
                    next.drain(i..i + 2);
                    moves.push((TraceStep::DeletePair { index: i, pair: [x, y], rule }, next));
                }
            }
        }
        if layers.len() + 2 <= cap {
            for (depth, cur) in stages.iter().enumerate() {
                let mut candidates: Vec<(PairRule, Layer, Layer)> = Vec::new();
                for (ai, &(unit, counit)) in self.adjunctions.iter().enumerate() {
                    let rule = PairRule::Zigzag { adjunction: ai };
                    let f = self.squares[unit].target[0];
                    let g = self.squares[unit].target[1];
                    for o in 0..cur.len() {
                        if cur[o] == f {
                            candidates.push((rule, Layer::new(unit, o), Layer::new(counit, o + 1)));
                        }
                    }
                    for o in 1..=cur.len() {
                        if cur[o - 1] == g {
                            candidates.push((rule, Layer::new(unit, o), Layer::new(counit, o - 1)));
                        }
                    }
                }
                for (ci, &(first, second)) in self.cancels.iter().enumerate() {
                    let rule = PairRule::Cancel { rule: ci };
                    let block = self.squares[first].source.clone();
                    if cur.len() < block.len() {
                        continue;
                    }
                    for o in 0..=cur.len() - block.len() {
                        if cur[o..o + block.len()] == block[..] {
                            candidates.push((rule, Layer::new(first, o), Layer::new(second, o)));
                        }
                    }
                }
                for (rule, x, y) in candidates {
                    if self.pair_net_identity(&chain.start, cur, x, y) {
                        let mut next = layers.to_vec();
                        next.insert(depth, y);
                        next.insert(depth, x);
                        moves.push((TraceStep::InsertPair { index: depth, pair: [x, y], rule }, next));
                    }
                }
            }
        }
        moves
    }

    /// Replay a trace over `layers`, validating every step, and return the
    /// resulting layer list.
    pub fn apply_trace(
        &self,
        chain: &Chain,
        layers: &[Layer],
        steps: &[TraceStep],
    ) -> Result<Vec<Layer>, RewriteError> {
        self.apply_layers(chain, layers)?;
        let mut state = layers.to_vec();
        for (si, step) in steps.iter().enumerate() {
            let bad = || RewriteError::BadTraceStep { index: si };
            match step {
                TraceStep::Interchange { index, from, to } => {
                    if *index + 1 >= state.len()
                        || state[*index] != from[0]
                        || state[*index + 1] != from[1]
                        || !self.commute_all(from[0], from[1]).contains(&(to[0], to[1]))
                    {
                        return Err(bad());
                    }
                    state[*index] = to[0];
                    state[*index + 1] = to[1];
                }
                TraceStep::DeletePair { index, pair, rule } => {
                    let stages = self.stages(chain, &state).ok_or_else(bad)?;
                    if *index + 1 >= state.len()
                        || state[*index] != pair[0]
                        || state[*index + 1] != pair[1]
                        || self.pair_rule(pair[0], pair[1]) != Some(*rule)
                        || !self.pair_net_identity(&chain.start, &stages[*index], pair[0], pair[1])
                    {
                        return Err(bad());
                    }
                    state.drain(*index..*index + 2);
                }
                TraceStep::InsertPair { index, pair, rule } => {
                    let stages = self.stages(chain, &state).ok_or_else(bad)?;
                    if *index > state.len()
                        || self.pair_rule(pair[0], pair[1]) != Some(*rule)
                        || !self.pair_net_identity(&chain.start, &stages[*index], pair[0], pair[1])
                    {
                        return Err(bad());
                    }
                    state.insert(*index, pair[1]);
                    state.insert(*index, pair[0]);
                }
            }
            if self.apply_layers(chain, &state).is_err() {
                return Err(RewriteError::BadTraceStep { index: si });
            }
        }
        Ok(state)
    }

    /// Search for a trace turning `lhs` into `rhs` over the same chain.
    ///
    /// Bidirectional breadth-first search; `budget` bounds the total number
    /// of states taken off the two queues.  Layer lists are capped at four
    /// more than the longer input, so exhaustion is a resource report, not a
    /// disproof.
    pub fn rewrite_check(
        &self,
        chain: &Chain,
        lhs: &[Layer],
        rhs: &[Layer],
        budget: usize,
    ) -> Result<Vec<TraceStep>, RewriteError> {
        let end_l = self.apply_layers(chain, lhs)?;
        let end_r = self.apply_layers(chain, rhs)?;
        if end_l != end_r {
            return Err(RewriteError::BoundaryMismatch);
        }
        let cap = lhs.len().max(rhs.len()) + 4;

        type Parent = Option<(Vec<Layer>, TraceStep)>;
        let mut seen: [HashMap<Vec<Layer>, Parent>; 2] = [HashMap::new(), HashMap::new()];
        let mut queue: [VecDeque<Vec<Layer>>; 2] = [VecDeque::new(), VecDeque::new()];
        seen[0].insert(lhs.to_vec(), None);
        seen[1].insert(rhs.to_vec(), None);
        queue[0].push_back(lhs.to_vec());
        queue[1].push_back(rhs.to_vec());

        let path_to = |seen: &HashMap<Vec<Layer>, Parent>, state: &[Layer]| -> Vec<TraceStep> {
            let mut steps = Vec::new();
            let mut cur = state.to_vec();
            while let Some(Some((parent, step))) = seen.get(&cur) {
                steps.push(step.clone());
                cur = parent.clone();
            }
            steps.reverse();
            steps
        };
        let stitch = |fwd: &HashMap<Vec<Layer>, Parent>,
                      bwd: &HashMap<Vec<Layer>, Parent>,
                      meet: &[Layer]|
         -> Vec<TraceStep> {
            let mut steps = path_to(fwd, meet);
            let mut back = path_to(bwd, meet);
            back.reverse();
            steps.extend(back.iter().map(invert_step));
            steps
        };

        if lhs == rhs {
            return Ok(Vec::new());
        }

        let mut explored = 0usize;
        while !queue[0].is_empty() || !queue[1].is_empty() {
            let side = if queue[1].is_empty() || (!queue[0].is_empty() && queue[0].len() <= queue[1].len()) {
                0
            } else {
                1
            };
            let state = match queue[side].pop_front() {
                Some(s) => s,
                None => continue,
            };
            explored += 1;
            if explored > budget {
                return Err(RewriteError::BudgetExhausted { budget });
            }
            for (step, next) in self.expand(chain, &state, cap) {
                if seen[side].contains_key(&next) {
                    continue;
                }
                seen[side].insert(next.clone(), Some((state.clone(), step)));
                if seen[1 - side].contains_key(&next) {
                    let trace = stitch(&seen[0], &seen[1], &next);
                    let replayed = self.apply_trace(chain, lhs, &trace)?;
                    if replayed != rhs {
                        return Err(RewriteError::BadTraceStep { index: trace.len() });
                    }
                    return Ok(trace);
                }
                queue[side].push_back(next);
            }
        }
        Err(RewriteError::BudgetExhausted { budget })
    }

    /// Human-readable rendering of one step.
    pub fn describe_step(&self, step: &TraceStep) -> String {
        let layer = |l: &Layer| {
            let inv = if l.inverted { "^-" } else { "" };
            format!("{}{}@{}", self.squares[l.square].name, inv, l.offset)
        };
        let rule = |r: &PairRule| match r {
            PairRule::Zigzag { adjunction } => {
                let (u, c) = self.adjunctions[*adjunction];
                format!("zigzag({}, {})", self.squares[u].name, self.squares[c].name)
            }
            PairRule::Cancel { rule } => {
                let (a, b) = self.cancels[*rule];
                format!("cancel({}, {})", self.squares[a].name, self.squares[b].name)
            }
            PairRule::Inverse => "inverse pair".to_string(),
        };
        match step {
            TraceStep::Interchange { index, from, to } => format!(
                "interchange [{}, {}] at {} into [{}, {}]",
                layer(&from[0]),
                layer(&from[1]),
                index,
                layer(&to[0]),
                layer(&to[1]),
            ),
            TraceStep::DeletePair { index, pair, rule: r } => format!(
                "delete [{}, {}] at {} by {}",
                layer(&pair[0]),
                layer(&pair[1]),
                index,
                rule(r)
            ),
            TraceStep::InsertPair { index, pair, rule: r } => format!(
                "insert [{}, {}] at {} by {}",
                layer(&pair[0]),
                layer(&pair[1]),
                index,
                rule(r)
            ),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// One abstract adjunction x -| y between letters a and b.
    fn toy() -> (Signature, Chain, SquareId, SquareId) {
        let mut sig = Signature::new();
        let a = sig.add_object("a");
        let b = sig.add_object("b");
        let x = sig.add_edge("x", vec![a], vec![b]).unwrap();
        let y = sig.add_edge("y", vec![b], vec![a]).unwrap();
        let unit = sig.add_square("unit", vec![a], vec![], vec![x, y]).unwrap();
        let counit = sig.add_square("counit", vec![b], vec![y, x], vec![]).unwrap();
        sig.add_adjunction(unit, counit).unwrap();
        let chain = Chain { start: vec![a], edges: vec![x] };
        (sig, chain, unit, counit)
    }

    #[test]
    fn zigzag_reduces_in_one_deletion() {
        let (sig, chain, unit, counit) = toy();
        let lhs = [Layer::new(unit, 0), Layer::new(counit, 1)];
        let trace = sig.rewrite_check(&chain, &lhs, &[], 100).unwrap();
        assert_eq!(trace.len(), 1);
        assert!(matches!(trace[0], TraceStep::DeletePair { index: 0, .. }));
    }

    #[test]
    fn other_zigzag_on_the_right_adjoint() {
        let (sig, _, unit, counit) = toy();
        let b = sig.find_object("b").unwrap();
        let y = sig.find_edge("y").unwrap();
        let chain = Chain { start: vec![b], edges: vec![y] };
        let lhs = [Layer::new(unit, 1), Layer::new(counit, 0)];
        let trace = sig.rewrite_check(&chain, &lhs, &[], 100).unwrap();
        assert_eq!(trace.len(), 1);
    }

    #[test]
    fn inverse_pair_deletes() {
        let (sig, chain, unit, _) = toy();
        let lhs = [Layer::new(unit, 0), Layer::new(unit, 0).inverse()];
        let trace = sig.rewrite_check(&chain, &lhs, &[], 100).unwrap();
        assert_eq!(trace.len(), 1);
        let replayed = sig.apply_trace(&chain, &lhs, &trace).unwrap();
        assert!(replayed.is_empty());
    }

    #[test]
    fn budget_zero_reports_exhaustion() {
        let (sig, chain, unit, counit) = toy();
        let lhs = [Layer::new(unit, 0), Layer::new(counit, 1)];
        let err = sig.rewrite_check(&chain, &lhs, &[], 0).unwrap_err();
        assert_eq!(err, RewriteError::BudgetExhausted { budget: 0 });
    }

    #[test]
    fn boundary_mismatch_is_rejected() {
        let (sig, chain, unit, _) = toy();
        let lhs = [Layer::new(unit, 0)];
        let err = sig.rewrite_check(&chain, &lhs, &[], 100).unwrap_err();
        assert_eq!(err, RewriteError::BoundaryMismatch);
    }

    #[test]
    fn commute_round_trips_disjoint_layers() {
        let (sig, _, unit, _) = toy();
        let first = Layer::new(unit, 0);
        let second = Layer::new(unit, 5);
        let (b1, a1) = sig.commute(first, second).unwrap();
        assert_eq!((b1, a1), (Layer::new(unit, 3), Layer::new(unit, 0)));
        let (a2, b2) = sig.commute(b1, a1).unwrap();
        assert_eq!((a2, b2), (first, second));
    }

    #[test]
    fn boundary_insertions_admit_both_reorderings() {
        // counit deletes the block [0, 2), then unit inserts at the deletion
        // point: running the unit first at offset 0 or at offset 2 are both
        // valid readings, and each one commutes back to the original pair.
        let (sig, _, unit, counit) = toy();
        let first = Layer::new(counit, 0);
        let second = Layer::new(unit, 0);
        let options = sig.commute_all(first, second);
        assert_eq!(
            options,
            vec![
                (Layer::new(unit, 0), Layer::new(counit, 2)),
                (Layer::new(unit, 2), Layer::new(counit, 0)),
            ]
        );
        for &(x, y) in &options {
            assert!(sig.commute_all(x, y).contains(&(first, second)));
        }
    }

    #[test]
    fn bad_layers_are_rejected() {
        let (sig, chain, _, counit) = toy();
        let err = sig.apply_layers(&chain, &[Layer::new(counit, 0)]).unwrap_err();
        assert_eq!(err, RewriteError::LayerDoesNotApply { index: 0 });
    }
}
