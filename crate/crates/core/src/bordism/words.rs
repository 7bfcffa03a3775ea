//! Typed expression words over the point signature.
//!
//! The grammar is tiny: names are objects (`p`, `m`, `unit`), edge
//! generators (`ev`, `coev`, `evL`, `evR`, `coevL`, `coevR`), square
//! generators (`u1`, `v1`, `u2`, `v2`, `v2R`, `u2R`), and the calls
//! `id(x)`, `inv(x)`, `comp(x, y)`, `side(x, y)`, `tau(a, b)`.
//!
//! `comp` runs its first argument, then its second.  `side` places cells
//! beside one another: 2-cells are pasted along a shared object word when
//! the boundaries allow it (second argument first along the chain), and
//! 1-cells fall back to a tensor placement with the first argument on the
//! left strands.  A tensor placed 2-cell still typechecks, carrying its
//! whiskered boundary 1-cells, but has no chain presentation and cannot
//! enter the rewrite engine.
//!
//! 1-cells are kept as a source word plus a list of `(offset, edge)`
//! events; two 1-cells are compared by sorting independent events with the
//! interchange law.

use thiserror::Error;

use super::rewrite::{Chain, EdgeId, Layer, ObjId, RewriteError, Signature, TraceStep};
use super::PointSignature;

pub const SERRE_EXPR: &str = "comp(comp(side(p, evR), side(tau(p, p), m)), side(p, ev))";
pub const SERRE_INVERSE_EXPR: &str = "comp(comp(side(p, evL), side(tau(p, p), m)), side(p, ev))";
pub const RADFORD_EXPR: &str = "comp(side(id(evL), v2R), side(v1, id(evR)))";
pub const RADFORD_INVERSE_EXPR: &str = "comp(side(id(evR), u1), side(u2R, id(evL)))";

#[derive(Debug, Error, PartialEq)]
pub enum WordError {
    #[error("parse error at byte {at}: {what}")]
    Parse { at: usize, what: String },
    #[error("unknown name {0:?}")]
    UnknownName(String),
    #[error("{name} takes {expected} arguments, got {got}")]
    Arity { name: String, expected: usize, got: usize },
    #[error("tau takes two single points")]
    TauNeedsPoints,
    #[error("id applies to objects and 1-cells")]
    IdNeedsLowerCell,
    #[error("inv applies to 2-cells")]
    InvNeedsTwoCell,
    #[error("{op}: boundaries do not match")]
    Boundary { op: &'static str },
    #[error("this 1-cell is not a plain chain of generators")]
    NotAChain,
    #[error("a tensor placed 2-cell has no chain presentation to rewrite")]
    NotRewritable,
    #[error("the two sides of a goal must be cells of the same kind")]
    MixedGoal,
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
}

/// Parsed expression tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Name(String),
    Call(String, Vec<Expr>),
}

/// One line of a word file: a bare expression to typecheck, or a rewrite
/// goal `lhs => rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Statement {
    Check(Expr),
    Goal(Expr, Expr),
}

/// A 1-cell as a source object word plus whiskered generator events.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneCell {
    pub source: Vec<ObjId>,
    pub events: Vec<(usize, EdgeId)>,
}

/// A 2-cell presented to the rewrite engine: a base chain plus layers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoCell {
    pub chain: Chain,
    pub layers: Vec<Layer>,
}

/// A typechecked 2-cell: boundary 1-cells, plus the chain presentation
/// when the cell is not tensor placed.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoValue {
    pub source: OneCell,
    pub target: OneCell,
    pub engine: Option<TwoCell>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Object(Vec<ObjId>),
    One(OneCell),
    Two(TwoValue),
}

// ---------------------------------------------------------------- parsing

#[derive(Debug, PartialEq)]
enum Token {
    Ident(String, usize),
    Open(usize),
    Close(usize),
    Comma(usize),
}

fn lex(input: &str) -> Result<Vec<Token>, WordError> {
    let mut tokens = Vec::new();
    let bytes = input.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_whitespace() {
            i += 1;
        } else if c == '(' {
            tokens.push(Token::Open(i));
            i += 1;
        } else if c == ')' {
            tokens.push(Token::Close(i));
            i += 1;
        } else if c == ',' {
            tokens.push(Token::Comma(i));
            i += 1;
        } else if c.is_ascii_alphanumeric() || c == '_' {
            let start = i;
            while i < bytes.len() && {
                let d = bytes[i] as char;
                d.is_ascii_alphanumeric() || d == '_'
            } {
                i += 1;
            }
            tokens.push(Token::Ident(input[start..i].to_string(), start));
        } else {
            return Err(WordError::Parse { at: i, what: format!("unexpected character {:?}", c) });
        }
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn at(&self) -> usize {
        match self.peek() {
            Some(Token::Ident(_, at)) | Some(Token::Open(at)) | Some(Token::Close(at)) | Some(Token::Comma(at)) => *at,
            None => self.end,
        }
    }

    fn expr(&mut self) -> Result<Expr, WordError> {
        let at = self.at();
        let name = match self.tokens.get(self.pos) {
            Some(Token::Ident(name, _)) => name.clone(),
            _ => return Err(WordError::Parse { at, what: "expected a name".into() }),
        };
        self.pos += 1;
        if let Some(Token::Open(_)) = self.peek() {
            self.pos += 1;
            let mut args = vec![self.expr()?];
            loop {
                match self.peek() {
                    Some(Token::Comma(_)) => {
                        self.pos += 1;
                        args.push(self.expr()?);
                    }
                    Some(Token::Close(_)) => {
                        self.pos += 1;
                        break;
                    }
                    _ => {
                        return Err(WordError::Parse { at: self.at(), what: "expected ',' or ')'".into() })
                    }
                }
            }
            Ok(Expr::Call(name, args))
        } else {
            Ok(Expr::Name(name))
        }
    }
}

/// Parse a single expression.
pub fn parse_expr(input: &str) -> Result<Expr, WordError> {
    let tokens = lex(input)?;
    let mut parser = Parser { tokens, pos: 0, end: input.len() };
    let expr = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return Err(WordError::Parse { at: parser.at(), what: "trailing input".into() });
    }
    Ok(expr)
}

/// Parse one line: an expression, or `lhs => rhs`.
pub fn parse_statement(line: &str) -> Result<Statement, WordError> {
    match line.split_once("=>") {
        Some((lhs, rhs)) => Ok(Statement::Goal(parse_expr(lhs)?, parse_expr(rhs)?)),
        None => Ok(Statement::Check(parse_expr(line)?)),
    }
}

// ------------------------------------------------------- 1-cell calculus

fn one_target(sig: &Signature, one: &OneCell) -> Result<Vec<ObjId>, WordError> {
    let mut word = one.source.clone();
    for &(offset, edge) in &one.events {
        let src = sig.edge_source(edge);
        if offset + src.len() > word.len() || word[offset..offset + src.len()] != *src {
            return Err(WordError::NotAChain);
        }
        word.splice(offset..offset + src.len(), sig.edge_target(edge).iter().copied());
    }
    Ok(word)
}

fn comp_one(sig: &Signature, first: &OneCell, second: &OneCell) -> Result<OneCell, WordError> {
    if one_target(sig, first)? != second.source {
        return Err(WordError::Boundary { op: "comp" });
    }
    let mut events = first.events.clone();
    events.extend_from_slice(&second.events);
    Ok(OneCell { source: first.source.clone(), events })
}

fn tensor_one(sig: &Signature, left: &OneCell, right: &OneCell) -> Result<OneCell, WordError> {
    let shift = one_target(sig, left)?.len();
    let mut source = left.source.clone();
    source.extend_from_slice(&right.source);
    let mut events = left.events.clone();
    events.extend(right.events.iter().map(|&(o, e)| (o + shift, e)));
    Ok(OneCell { source, events })
}

/// Sort independent events with the interchange law, smallest offset (then
/// edge index) first.  Sound: every swap is a genuine interchange, so equal
/// canonical forms imply equal 1-cells.
pub fn canonical_events(sig: &Signature, one: &OneCell) -> Vec<(usize, EdgeId)> {
    let mut events = one.events.clone();
    let spans = |e: EdgeId| (sig.edge_source(e).len(), sig.edge_target(e).len());
    for _pass in 0..events.len() * events.len() + 1 {
        let mut changed = false;
        for i in 0..events.len().saturating_sub(1) {
            let (oa, ea) = events[i];
            let (ob, eb) = events[i + 1];
            let (sa, ta) = spans(ea);
            let (sb, tb) = spans(eb);
            let swapped = if ob + sb <= oa {
                Some(((ob, eb), (oa - sb + tb, ea)))
            } else if ob >= oa + ta {
                Some(((ob - ta + sa, eb), (oa, ea)))
            } else {
                None
            };
            if let Some((first, second)) = swapped {
                if first < (oa, ea) {
                    events[i] = first;
                    events[i + 1] = second;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    events
}

/// Interchange equality of 1-cells.
pub fn one_cells_equal(sig: &Signature, a: &OneCell, b: &OneCell) -> bool {
    a.source == b.source && canonical_events(sig, a) == canonical_events(sig, b)
}

/// Present a 1-cell as a chain of bare generators, if no event is whiskered.
pub fn flatten_one(sig: &Signature, one: &OneCell) -> Result<Chain, WordError> {
    let mut word = one.source.clone();
    let mut edges = Vec::with_capacity(one.events.len());
    for &(offset, edge) in &one.events {
        if offset != 0 || sig.edge_source(edge) != word {
            return Err(WordError::NotAChain);
        }
        word = sig.edge_target(edge).to_vec();
        edges.push(edge);
    }
    Ok(Chain { start: one.source.clone(), edges })
}

fn one_from_chain(chain: &Chain) -> OneCell {
    OneCell { source: chain.start.clone(), events: chain.edges.iter().map(|&e| (0, e)).collect() }
}

// ------------------------------------------------------- 2-cell calculus

fn two_from_square(sig: &Signature, square: usize) -> TwoValue {
    let at = sig.square_at(square).to_vec();
    let chain = Chain { start: at, edges: sig.square_source(square).to_vec() };
    let source = one_from_chain(&chain);
    let target = OneCell {
        source: chain.start.clone(),
        events: sig.square_target(square).iter().map(|&e| (0, e)).collect(),
    };
    TwoValue {
        source,
        target,
        engine: Some(TwoCell { chain: chain.clone(), layers: vec![Layer::new(square, 0)] }),
    }
}

fn id_two(sig: &Signature, one: &OneCell) -> TwoValue {
    let engine = flatten_one(sig, one).ok().map(|chain| TwoCell { chain, layers: Vec::new() });
    TwoValue { source: one.clone(), target: one.clone(), engine }
}

fn engine_end(sig: &Signature, cell: &TwoCell) -> Vec<EdgeId> {
    sig.apply_layers(&cell.chain, &cell.layers).expect("engine cells stay well typed")
}

/// Vertical composition, `first` then `second`.
fn comp_two(sig: &Signature, first: &TwoValue, second: &TwoValue) -> Result<TwoValue, WordError> {
    if !one_cells_equal(sig, &first.target, &second.source) {
        return Err(WordError::Boundary { op: "comp" });
    }
    let engine = match (&first.engine, &second.engine) {
        (Some(x), Some(y)) if x.chain.start == y.chain.start && engine_end(sig, x) == y.chain.edges => {
            let mut layers = x.layers.clone();
            layers.extend_from_slice(&y.layers);
            Some(TwoCell { chain: x.chain.clone(), layers })
        }
        _ => None,
    };
    Ok(TwoValue { source: first.source.clone(), target: second.target.clone(), engine })
}

/// Whisker a 2-cell by a following 1-cell.
fn comp_two_one(sig: &Signature, cell: &TwoValue, one: &OneCell) -> Result<TwoValue, WordError> {
    let source = comp_one(sig, &cell.source, one)?;
    let target = comp_one(sig, &cell.target, one)?;
    let engine = match (&cell.engine, flatten_one(sig, one)) {
        (Some(x), Ok(suffix)) => {
            let mut edges = x.chain.edges.clone();
            edges.extend_from_slice(&suffix.edges);
            Some(TwoCell {
                chain: Chain { start: x.chain.start.clone(), edges },
                layers: x.layers.clone(),
            })
        }
        _ => None,
    };
    Ok(TwoValue { source, target, engine })
}

/// Whisker a 2-cell by a preceding 1-cell.
fn comp_one_two(sig: &Signature, one: &OneCell, cell: &TwoValue) -> Result<TwoValue, WordError> {
    let source = comp_one(sig, one, &cell.source)?;
    let target = comp_one(sig, one, &cell.target)?;
    let engine = match (flatten_one(sig, one), &cell.engine) {
        (Ok(prefix), Some(x)) => {
            let mut edges = prefix.edges.clone();
            edges.extend_from_slice(&x.chain.edges);
            let shift = prefix.edges.len();
            Some(TwoCell {
                chain: Chain { start: prefix.start.clone(), edges },
                layers: x.layers.iter().map(|l| Layer { offset: l.offset + shift, ..*l }).collect(),
            })
        }
        _ => None,
    };
    Ok(TwoValue { source, target, engine })
}

/// Horizontal placement of 2-cells: paste along the shared object word when
/// the second argument ends where the first begins, otherwise tensor.
fn side_two(sig: &Signature, after: &TwoValue, before: &TwoValue) -> Result<TwoValue, WordError> {
    let before_end = one_target(sig, &before.source)?;
    if before_end == after.source.source {
        let source = comp_one(sig, &before.source, &after.source)?;
        let target = comp_one(sig, &before.target, &after.target)?;
        let engine = match (&before.engine, &after.engine) {
            (Some(y), Some(x)) => {
                let y_end = sig.chain_end(&y.chain)?;
                if y_end == x.chain.start {
                    let mut edges = y.chain.edges.clone();
                    edges.extend_from_slice(&x.chain.edges);
                    let shift = engine_end(sig, y).len();
                    let mut layers = y.layers.clone();
                    layers.extend(x.layers.iter().map(|l| Layer { offset: l.offset + shift, ..*l }));
                    Some(TwoCell { chain: Chain { start: y.chain.start.clone(), edges }, layers })
                } else {
                    None
                }
            }
            _ => None,
        };
        Ok(TwoValue { source, target, engine })
    } else {
        // tensor placement: `after` takes the left strands
        let source = tensor_one(sig, &after.source, &before.source)?;
        let target = tensor_one(sig, &after.target, &before.target)?;
        Ok(TwoValue { source, target, engine: None })
    }
}

// ------------------------------------------------------------ evaluation

fn as_one(value: &Value) -> Option<OneCell> {
    match value {
        Value::Object(word) => Some(OneCell { source: word.clone(), events: Vec::new() }),
        Value::One(one) => Some(one.clone()),
        Value::Two(_) => None,
    }
}

/// Evaluate an expression over the point signature.
pub fn eval(ps: &PointSignature, expr: &Expr) -> Result<Value, WordError> {
    let sig = &ps.sig;
    match expr {
        Expr::Name(name) => match name.as_str() {
            "unit" => Ok(Value::Object(Vec::new())),
            _ => {
                if let Some(o) = sig.find_object(name) {
                    Ok(Value::Object(vec![o]))
                } else if let Some(e) = sig.find_edge(name) {
                    Ok(Value::One(OneCell { source: sig.edge_source(e).to_vec(), events: vec![(0, e)] }))
                } else if let Some(s) = sig.find_square(name) {
                    Ok(Value::Two(two_from_square(sig, s)))
                } else {
                    Err(WordError::UnknownName(name.clone()))
                }
            }
        },
        Expr::Call(name, args) => {
            let arity = |expected: usize| -> Result<(), WordError> {
                if args.len() == expected {
                    Ok(())
                } else {
                    Err(WordError::Arity { name: name.clone(), expected, got: args.len() })
                }
            };
            match name.as_str() {
                "id" => {
                    arity(1)?;
                    match eval(ps, &args[0])? {
                        Value::Object(word) => Ok(Value::One(OneCell { source: word, events: Vec::new() })),
                        Value::One(one) => Ok(Value::Two(id_two(sig, &one))),
                        Value::Two(_) => Err(WordError::IdNeedsLowerCell),
                    }
                }
                "inv" => {
                    arity(1)?;
                    match eval(ps, &args[0])? {
                        Value::Two(cell) => {
                            let engine = cell.engine.as_ref().map(|x| {
                                let end = engine_end(sig, x);
                                let layers = x
                                    .layers
                                    .iter()
                                    .rev()
                                    .map(|l| Layer { inverted: !l.inverted, ..*l })
                                    .collect();
                                TwoCell { chain: Chain { start: x.chain.start.clone(), edges: end }, layers }
                            });
                            Ok(Value::Two(TwoValue { source: cell.target, target: cell.source, engine }))
                        }
                        _ => Err(WordError::InvNeedsTwoCell),
                    }
                }
                "tau" => {
                    arity(2)?;
                    let mut points = [0usize; 2];
                    for (slot, arg) in points.iter_mut().zip(args) {
                        match eval(ps, arg)? {
                            Value::Object(word) if word.len() == 1 => {
                                *slot = if word[0] == ps.p {
                                    0
                                } else if word[0] == ps.m {
                                    1
                                } else {
                                    return Err(WordError::TauNeedsPoints);
                                }
                            }
                            _ => return Err(WordError::TauNeedsPoints),
                        }
                    }
                    let edge = ps.tau[points[0]][points[1]];
                    Ok(Value::One(OneCell { source: sig.edge_source(edge).to_vec(), events: vec![(0, edge)] }))
                }
                "comp" => {
                    arity(2)?;
                    let first = eval(ps, &args[0])?;
                    let second = eval(ps, &args[1])?;
                    match (&first, &second) {
                        (Value::Two(x), Value::Two(y)) => Ok(Value::Two(comp_two(sig, x, y)?)),
                        (Value::Two(x), _) => {
                            let one = as_one(&second).expect("non 2-cell");
                            Ok(Value::Two(comp_two_one(sig, x, &one)?))
                        }
                        (_, Value::Two(y)) => {
                            let one = as_one(&first).expect("non 2-cell");
                            Ok(Value::Two(comp_one_two(sig, &one, y)?))
                        }
                        _ => {
                            let a = as_one(&first).expect("non 2-cell");
                            let b = as_one(&second).expect("non 2-cell");
                            Ok(Value::One(comp_one(sig, &a, &b)?))
                        }
                    }
                }
                "side" => {
                    arity(2)?;
                    let left = eval(ps, &args[0])?;
                    let right = eval(ps, &args[1])?;
                    match (&left, &right) {
                        (Value::Object(a), Value::Object(b)) => {
                            let mut word = a.clone();
                            word.extend_from_slice(b);
                            Ok(Value::Object(word))
                        }
                        (Value::Two(_), _) | (_, Value::Two(_)) => {
                            let promote = |v: &Value| -> TwoValue {
                                match v {
                                    Value::Two(cell) => cell.clone(),
                                    other => id_two(sig, &as_one(other).expect("non 2-cell")),
                                }
                            };
                            Ok(Value::Two(side_two(sig, &promote(&left), &promote(&right))?))
                        }
                        _ => {
                            let a = as_one(&left).expect("non 2-cell");
                            let b = as_one(&right).expect("non 2-cell");
                            // sequential when the boundaries allow, tensor otherwise
                            if one_target(sig, &b)? == a.source {
                                Ok(Value::One(comp_one(sig, &b, &a)?))
                            } else {
                                Ok(Value::One(tensor_one(sig, &a, &b)?))
                            }
                        }
                    }
                }
                _ => Err(WordError::UnknownName(name.clone())),
            }
        }
    }
}

// ----------------------------------------------------------- named words

/// The loop 1-cell `(id x ev) . (tau x id) . (id x evR)` from `p` to `p`.
pub fn serre_word(ps: &PointSignature) -> OneCell {
    match eval(ps, &parse_expr(SERRE_EXPR).expect("fixed word parses")).expect("fixed word typechecks") {
        Value::One(one) => one,
        _ => unreachable!("the word is a 1-cell"),
    }
}

/// The same loop with the other cap: `evR` replaced by `evL`.
pub fn inverse_serre_word(ps: &PointSignature) -> OneCell {
    match eval(ps, &parse_expr(SERRE_INVERSE_EXPR).expect("fixed word parses")).expect("fixed word typechecks") {
        Value::One(one) => one,
        _ => unreachable!("the word is a 1-cell"),
    }
}

/// The belt-trick 2-cell from `evL` to `evR`.
pub fn radford_word(ps: &PointSignature) -> TwoValue {
    match eval(ps, &parse_expr(RADFORD_EXPR).expect("fixed word parses")).expect("fixed word typechecks") {
        Value::Two(cell) => cell,
        _ => unreachable!("the word is a 2-cell"),
    }
}

/// Its inverse, from `evR` to `evL`.
pub fn radford_inverse_word(ps: &PointSignature) -> TwoValue {
    match eval(ps, &parse_expr(RADFORD_INVERSE_EXPR).expect("fixed word parses")).expect("fixed word typechecks") {
        Value::Two(cell) => cell,
        _ => unreachable!("the word is a 2-cell"),
    }
}

// ----------------------------------------------------------------- goals

/// Result of checking one `lhs => rhs` goal.
#[derive(Debug, Clone, PartialEq)]
pub enum GoalOutcome {
    ObjectsEqual(bool),
    OneCellsEqual(bool),
    Rewritten(Vec<TraceStep>),
}

/// Evaluate both sides and compare: object words and 1-cells by equality,
/// 2-cells by running the rewrite engine.
pub fn check_goal(
    ps: &PointSignature,
    lhs: &Expr,
    rhs: &Expr,
    budget: usize,
) -> Result<GoalOutcome, WordError> {
    let sig = &ps.sig;
    let left = eval(ps, lhs)?;
    let right = eval(ps, rhs)?;
    match (&left, &right) {
        (Value::Object(a), Value::Object(b)) => Ok(GoalOutcome::ObjectsEqual(a == b)),
        (Value::One(a), Value::One(b)) => Ok(GoalOutcome::OneCellsEqual(one_cells_equal(sig, a, b))),
        (Value::Two(a), Value::Two(b)) => {
            let x = a.engine.as_ref().ok_or(WordError::NotRewritable)?;
            let y = b.engine.as_ref().ok_or(WordError::NotRewritable)?;
            if x.chain != y.chain {
                return Err(WordError::Boundary { op: "goal" });
            }
            let trace = sig.rewrite_check(&x.chain, &x.layers, &y.layers, budget)?;
            Ok(GoalOutcome::Rewritten(trace))
        }
        _ => Err(WordError::MixedGoal),
    }
}

/// Short human description of a value, for reports.
pub fn describe_value(ps: &PointSignature, value: &Value) -> String {
    let sig = &ps.sig;
    let word = |w: &[ObjId]| -> String {
        if w.is_empty() {
            "unit".to_string()
        } else {
            w.iter().map(|&o| sig.object_name(o)).collect::<Vec<_>>().join(" ")
        }
    };
    let one = |c: &OneCell| -> String {
        let target = one_target(sig, c).map(|w| word(&w)).unwrap_or_else(|_| "?".into());
        let events = if c.events.is_empty() {
            "identity".to_string()
        } else {
            c.events
                .iter()
                .map(|&(o, e)| format!("{}@{}", sig.edge_name(e), o))
                .collect::<Vec<_>>()
                .join(" . ")
        };
        format!("[{}] -> [{}] via {}", word(&c.source), target, events)
    };
    match value {
        Value::Object(w) => format!("object [{}]", word(w)),
        Value::One(c) => format!("1-cell {}", one(c)),
        Value::Two(c) => {
            let form = match &c.engine {
                Some(cell) => format!(
                    "chain with {} layer{}",
                    cell.layers.len(),
                    if cell.layers.len() == 1 { "" } else { "s" }
                ),
                None => "tensor placed".to_string(),
            };
            format!("2-cell ({}) => ({}), {}", one(&c.source), one(&c.target), form)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::point_signature;
    use super::super::rewrite::DEFAULT_REWRITE_BUDGET;
    use super::*;

    #[test]
    fn serre_words_typecheck_as_loops_on_p() {
        let ps = point_signature();
        let serre = serre_word(&ps);
        assert_eq!(serre.source, vec![ps.p]);
        assert_eq!(one_target(&ps.sig, &serre).unwrap(), vec![ps.p]);
        assert_eq!(serre.events, vec![(1, ps.ev_right), (0, ps.tau[0][0]), (1, ps.ev)]);
        let inverse = inverse_serre_word(&ps);
        assert_eq!(inverse.events, vec![(1, ps.ev_left), (0, ps.tau[0][0]), (1, ps.ev)]);
        assert!(!one_cells_equal(&ps.sig, &serre, &inverse));
    }

    #[test]
    fn radford_words_flatten_to_the_expected_layers() {
        let ps = point_signature();
        let radford = radford_word(&ps);
        let cell = radford.engine.expect("chain presentation");
        assert_eq!(cell.chain, Chain { start: vec![], edges: vec![ps.ev_left] });
        assert_eq!(cell.layers, vec![Layer::new(ps.v2r, 0), Layer::new(ps.v1, 1)]);
        let inverse = radford_inverse_word(&ps);
        let cell = inverse.engine.expect("chain presentation");
        assert_eq!(cell.chain, Chain { start: vec![], edges: vec![ps.ev_right] });
        assert_eq!(cell.layers, vec![Layer::new(ps.u1, 0), Layer::new(ps.u2r, 1)]);
    }

    #[test]
    fn tensor_placed_radford_conjugate_typechecks() {
        let ps = point_signature();
        let expr = parse_expr(&format!(
            "comp(comp(side(p, {}), side(tau(p, p), m)), side(p, ev))",
            RADFORD_EXPR
        ))
        .unwrap();
        let value = eval(&ps, &expr).unwrap();
        match value {
            Value::Two(cell) => {
                assert!(cell.engine.is_none());
                assert!(one_cells_equal(&ps.sig, &cell.source, &inverse_serre_word(&ps)));
                assert!(one_cells_equal(&ps.sig, &cell.target, &serre_word(&ps)));
            }
            other => panic!("expected a 2-cell, got {:?}", other),
        }
    }

    #[test]
    fn goal_line_runs_the_rewrite_engine() {
        let ps = point_signature();
        let line = format!("comp({}, {}) => id(evL)", RADFORD_EXPR, RADFORD_INVERSE_EXPR);
        match parse_statement(&line).unwrap() {
            Statement::Goal(lhs, rhs) => {
                let outcome = check_goal(&ps, &lhs, &rhs, DEFAULT_REWRITE_BUDGET).unwrap();
                match outcome {
                    GoalOutcome::Rewritten(trace) => assert!(!trace.is_empty()),
                    other => panic!("expected a trace, got {:?}", other),
                }
            }
            _ => panic!("expected a goal"),
        }
    }

    #[test]
    fn interchange_equality_of_disjoint_events() {
        let ps = point_signature();
        let a = eval(&ps, &parse_expr("comp(side(tau(p, p), side(m, m)), side(side(p, p), tau(m, m)))").unwrap()).unwrap();
        let b = eval(&ps, &parse_expr("comp(side(side(p, p), tau(m, m)), side(tau(p, p), side(m, m)))").unwrap()).unwrap();
        match (a, b) {
            (Value::One(x), Value::One(y)) => {
                assert_ne!(x.events, y.events);
                assert!(one_cells_equal(&ps.sig, &x, &y));
            }
            _ => panic!("expected 1-cells"),
        }
    }

    #[test]
    fn parse_errors_carry_positions() {
        assert!(matches!(parse_expr("comp(p,"), Err(WordError::Parse { .. })));
        assert!(matches!(parse_expr("comp(p, m) x"), Err(WordError::Parse { .. })));
        assert!(matches!(parse_expr(""), Err(WordError::Parse { .. })));
    }

    #[test]
    fn arity_and_type_errors() {
        let ps = point_signature();
        assert_eq!(
            eval(&ps, &parse_expr("id(p, m)").unwrap()).unwrap_err(),
            WordError::Arity { name: "id".into(), expected: 1, got: 2 }
        );
        assert_eq!(eval(&ps, &parse_expr("inv(p)").unwrap()).unwrap_err(), WordError::InvNeedsTwoCell);
        assert_eq!(eval(&ps, &parse_expr("tau(p, ev)").unwrap()).unwrap_err(), WordError::TauNeedsPoints);
        assert_eq!(eval(&ps, &parse_expr("id(u1)").unwrap()).unwrap_err(), WordError::IdNeedsLowerCell);
        assert_eq!(
            eval(&ps, &parse_expr("bogus").unwrap()).unwrap_err(),
            WordError::UnknownName("bogus".into())
        );
    }
}
