//! Framed one- and two-dimensional combinatorics: framing classes of the
//! interval, turning numbers of immersed circles, and a typed word calculus
//! for point bordisms with zigzag rewriting.

pub mod circle;
pub mod framing;
pub mod rewrite;
pub mod words;

use rewrite::{Chain, EdgeId, Layer, ObjId, RewriteError, Signature, SquareId, TraceStep};

/// The rewriting signature of the oriented point: objects are words in the
/// two orientations, edges are the elementary cups, caps and swaps, and the
/// squares are the unit/counit cells of the three declared adjunctions
/// between the evaluation maps.
#[derive(Debug, Clone)]
pub struct PointSignature {
    pub sig: Signature,
    /// positively oriented point
    pub p: ObjId,
    /// negatively oriented point
    pub m: ObjId,
    /// `[p, m] -> []`
    pub ev: EdgeId,
    /// `[] -> [m, p]`
    pub coev: EdgeId,
    /// left adjoint of `ev`: `[] -> [p, m]`
    pub ev_left: EdgeId,
    /// right adjoint of `ev`: `[] -> [p, m]`
    pub ev_right: EdgeId,
    /// `[m, p] -> []`
    pub coev_left: EdgeId,
    /// `[m, p] -> []`
    pub coev_right: EdgeId,
    /// swaps indexed by the two strand orientations, 0 = p, 1 = m
    pub tau: [[EdgeId; 2]; 2],
    /// unit of `ev_left -| ev`
    pub u1: SquareId,
    /// counit of `ev_left -| ev`
    pub v1: SquareId,
    /// unit of `ev -| ev_right`
    pub u2: SquareId,
    /// counit of `ev -| ev_right`
    pub v2: SquareId,
    /// unit of `ev_right -| ev`
    pub v2r: SquareId,
    /// counit of `ev_right -| ev`
    pub u2r: SquareId,
}

/// Build the point signature.  Construction cannot fail; every generator is
/// well formed by definition.
pub fn point_signature() -> PointSignature {
    let mut sig = Signature::new();
    let p = sig.add_object("p");
    let m = sig.add_object("m");
    let ok = "point signature generators are well formed";
    let ev = sig.add_edge("ev", vec![p, m], vec![]).expect(ok);
    let coev = sig.add_edge("coev", vec![], vec![m, p]).expect(ok);
    let ev_left = sig.add_edge("evL", vec![], vec![p, m]).expect(ok);
    let ev_right = sig.add_edge("evR", vec![], vec![p, m]).expect(ok);
    let coev_left = sig.add_edge("coevL", vec![m, p], vec![]).expect(ok);
    let coev_right = sig.add_edge("coevR", vec![m, p], vec![]).expect(ok);
    let letters = ["p", "m"];
    let mut tau = [[0; 2]; 2];
    for (i, a) in [p, m].into_iter().enumerate() {
        for (j, b) in [p, m].into_iter().enumerate() {
            let name = format!("tau_{}{}", letters[i], letters[j]);
            tau[i][j] = sig.add_edge(name, vec![a, b], vec![b, a]).expect(ok);
        }
    }
    let u1 = sig.add_square("u1", vec![], vec![], vec![ev_left, ev]).expect(ok);
    let v1 = sig.add_square("v1", vec![p, m], vec![ev, ev_left], vec![]).expect(ok);
    let u2 = sig.add_square("u2", vec![p, m], vec![], vec![ev, ev_right]).expect(ok);
    let v2 = sig.add_square("v2", vec![], vec![ev_right, ev], vec![]).expect(ok);
    let v2r = sig.add_square("v2R", vec![], vec![], vec![ev_right, ev]).expect(ok);
    let u2r = sig.add_square("u2R", vec![p, m], vec![ev, ev_right], vec![]).expect(ok);
    sig.add_adjunction(u1, v1).expect(ok);
    sig.add_adjunction(u2, v2).expect(ok);
    sig.add_adjunction(v2r, u2r).expect(ok);
    PointSignature {
        sig,
        p,
        m,
        ev,
        coev,
        ev_left,
        ev_right,
        coev_left,
        coev_right,
        tau,
        u1,
        v1,
        u2,
        v2,
        v2r,
        u2r,
    }
}

impl PointSignature {
    /// The belt-trick 2-cell from `evL` to `evR` as a base chain plus layers.
    pub fn radford_layers(&self) -> (Chain, Vec<Layer>) {
        let chain = Chain { start: vec![], edges: vec![self.ev_left] };
        (chain, vec![Layer::new(self.v2r, 0), Layer::new(self.v1, 1)])
    }

    /// Its inverse, from `evR` back to `evL`.
    pub fn radford_inverse_layers(&self) -> (Chain, Vec<Layer>) {
        let chain = Chain { start: vec![], edges: vec![self.ev_right] };
        (chain, vec![Layer::new(self.u1, 0), Layer::new(self.u2r, 1)])
    }
}

/// Prove that the inverse composed after the belt-trick cell is the identity
/// of `evL`, returning the replayed trace.
pub fn radford_roundtrip(budget: usize) -> Result<Vec<TraceStep>, RewriteError> {
    let ps = point_signature();
    let (chain, mut layers) = ps.radford_layers();
    let (_, inverse) = ps.radford_inverse_layers();
    layers.extend(inverse);
    ps.sig.rewrite_check(&chain, &layers, &[], budget)
}

/// The mirror statement: belt-trick cell composed after its inverse is the
/// identity of `evR`.
pub fn radford_roundtrip_mirror(budget: usize) -> Result<Vec<TraceStep>, RewriteError> {
    let ps = point_signature();
    let (chain, mut layers) = ps.radford_inverse_layers();
    let (_, forward) = ps.radford_layers();
    layers.extend(forward);
    ps.sig.rewrite_check(&chain, &layers, &[], budget)
}

/// Proof traces for the two zigzag identities of the induced adjunction,
/// together with the signature and starting cells needed to replay them.
#[derive(Debug, Clone)]
pub struct AmbidexterityReport {
    pub sig: Signature,
    pub left_chain: Chain,
    pub left_layers: Vec<Layer>,
    pub on_left_leg: Vec<TraceStep>,
    pub right_chain: Chain,
    pub right_layers: Vec<Layer>,
    pub on_right_leg: Vec<TraceStep>,
}

/// Abstract ambidexterity: an adjunction `f -| g` whose unit and counit
/// have declared two-sided inverses also exhibits `g -| f`, with the
/// inverses as unit and counit.  Both candidate zigzags are reduced to
/// identities by the rewrite engine.
pub fn verify_ambidexterity(budget: usize) -> Result<AmbidexterityReport, RewriteError> {
    let mut sig = Signature::new();
    let a = sig.add_object("a");
    let b = sig.add_object("b");
    let f = sig.add_edge("f", vec![a], vec![b])?;
    let g = sig.add_edge("g", vec![b], vec![a])?;
    let u = sig.add_square("u", vec![a], vec![], vec![f, g])?;
    let v = sig.add_square("v", vec![b], vec![g, f], vec![])?;
    let u_inv = sig.add_square("uInv", vec![a], vec![f, g], vec![])?;
    let v_inv = sig.add_square("vInv", vec![b], vec![], vec![g, f])?;
    sig.add_adjunction(u, v)?;
    sig.add_cancel(u, u_inv)?;
    sig.add_cancel(u_inv, u)?;
    sig.add_cancel(v, v_inv)?;
    sig.add_cancel(v_inv, v)?;

    // counit-inverse then unit-inverse, whiskered around f, must be id_f
    let on_f = Chain { start: vec![a], edges: vec![f] };
    let lhs_f = vec![Layer::new(v_inv, 1), Layer::new(u_inv, 0)];
    let on_left_leg = sig.rewrite_check(&on_f, &lhs_f, &[], budget)?;

    // and around g, must be id_g
    let on_g = Chain { start: vec![b], edges: vec![g] };
    let lhs_g = vec![Layer::new(v_inv, 0), Layer::new(u_inv, 1)];
    let on_right_leg = sig.rewrite_check(&on_g, &lhs_g, &[], budget)?;

    Ok(AmbidexterityReport {
        sig,
        left_chain: on_f,
        left_layers: lhs_f,
        on_left_leg,
        right_chain: on_g,
        right_layers: lhs_g,
        on_right_leg,
    })
}
