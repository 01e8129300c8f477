use std::collections::BTreeSet;

use crate::dg::DgQuiverAlgebra;
use crate::element::PathElement;
use crate::error::{Error, Result};
use crate::quiver::{ArrowId, GradedQuiver, Path, Quiver, VertexId};

/// `A / A e A` for `e` the sum of the trivial paths at `vertices`.
///
/// Removes the vertices, their incident arrows, and every differential term
/// whose path visits a removed vertex. Names, degrees and weights are kept.
pub fn delete_vertices(a: &DgQuiverAlgebra, vertices: &[VertexId]) -> Result<DgQuiverAlgebra> {
    let q = a.quiver();
    if let Some(v) = vertices.iter().find(|v| v.0 >= q.num_vertices()) {
        return Err(Error::UnknownVertex(format!("#{}", v.0)));
    }
    let removed: BTreeSet<VertexId> = vertices.iter().copied().collect();
    if removed.len() == q.num_vertices() {
        return Err(Error::Precondition("deleting every vertex leaves the zero algebra".into()));
    }
    let mut builder = Quiver::builder();
    let mut vmap = vec![None; q.num_vertices()];
    for v in q.vertex_ids().filter(|v| !removed.contains(v)) {
        let vertex = q.vertex(v);
        vmap[v.0] = Some(builder.vertex(vertex.name.clone(), vertex.label.clone())?);
    }
    let mut amap = vec![None; q.num_arrows()];
    let mut kept = Vec::new();
    for b in q.arrow_ids() {
        if let (Some(s), Some(t)) = (vmap[q.source(b).0], vmap[q.target(b).0]) {
            amap[b.0] = Some(builder.arrow(q.arrow_name(b), s, t)?);
            kept.push(b);
        }
    }
    let gq = a.graded_quiver();
    let degrees = kept.iter().map(|&b| gq.degree(b)).collect();
    let weights = gq.weights().map(|_| kept.iter().map(|&b| gq.weight(b).unwrap()).collect());
    let graded = GradedQuiver::new(builder.build(), degrees, weights)?;

    let remap = |p: &Path| -> Option<Path> {
        let s = vmap[p.source().0]?;
        let t = vmap[p.target().0]?;
        let arrows: Option<Vec<ArrowId>> = p.arrows().iter().map(|b| amap[b.0]).collect();
        Some(Path::from_parts(s, t, arrows?))
    };
    let d = kept
        .iter()
        .map(|&b| {
            let mut x = PathElement::zero();
            for (p, c) in a.d(b).terms() {
                if let Some(p) = remap(p) {
                    x.add_term(p, c.clone());
                }
            }
            x
        })
        .collect();
    Ok(DgQuiverAlgebra::new(graded, d, a.is_declared_homogeneous()))
}
