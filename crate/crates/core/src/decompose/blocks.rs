use super::alternating_components;
use crate::error::{Error, Result};
use crate::graphs::{ColouredGraph, Colours};
use serde::Serialize;
use std::sync::OnceLock;

/// Isomorphism type of a block.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BlockKind {
    SingleBlueLoop,
    SingleRedLoop,
    StarLoop,
    /// Red loops joined by a blue edge.
    K2Star,
    /// Blue loops joined by a red edge.
    DualK2Star,
    MonoStarEdgeRed,
    MonoStarEdgeBlue,
    /// A blue loop and a red loop joined by a *-edge.
    BichromaticStarEdge,
    FourAlt,
    Other(usize),
}

impl BlockKind {
    /// Blocks the list solver knows how to strip from the top.
    pub fn is_peelable(self) -> bool {
        matches!(
            self,
            BlockKind::SingleBlueLoop
                | BlockKind::SingleRedLoop
                | BlockKind::StarLoop
                | BlockKind::MonoStarEdgeRed
                | BlockKind::MonoStarEdgeBlue
                | BlockKind::BichromaticStarEdge
        )
    }
}

/// The 4-vertex alternating component whose alternating digraph is the
/// directed cycle 0 → 3 → 1 → 2 → 0.
pub fn four_alt() -> ColouredGraph {
    let (r, b) = (Colours::RED, Colours::BLUE);
    ColouredGraph::from_loops_and_edges(
        &[b, b, r, r],
        &[
            (0, 1, b),
            (0, 2, b),
            (1, 3, b),
            (2, 3, r),
            (0, 3, r),
            (1, 2, r),
        ],
    )
}

fn four_alt_forms() -> &'static [Vec<u8>; 2] {
    static FORMS: OnceLock<[Vec<u8>; 2]> = OnceLock::new();
    FORMS.get_or_init(|| {
        let g = four_alt();
        let form = |h: &ColouredGraph| h.canonical_form().expect("small").as_bytes().to_vec();
        [form(&g), form(&g.dual())]
    })
}

/// Kind of a structure, up to isomorphism.
pub fn block_kind(g: &ColouredGraph) -> BlockKind {
    let (r, b, s) = (Colours::RED, Colours::BLUE, Colours::STAR);
    match g.n() {
        1 => match g.loop_colours(0) {
            c if c == b => BlockKind::SingleBlueLoop,
            c if c == r => BlockKind::SingleRedLoop,
            c if c == s => BlockKind::StarLoop,
            _ => BlockKind::Other(1),
        },
        2 => {
            let (l0, l1, e) = (g.loop_colours(0), g.loop_colours(1), g.colours(0, 1));
            match (l0 == l1, l0, e) {
                (true, c, edge) if c == r && edge == b => BlockKind::K2Star,
                (true, c, edge) if c == b && edge == r => BlockKind::DualK2Star,
                (true, c, edge) if c == r && edge == s => BlockKind::MonoStarEdgeRed,
                (true, c, edge) if c == b && edge == s => BlockKind::MonoStarEdgeBlue,
                (false, _, edge)
                    if edge == s && l0.union(l1) == s && !l0.is_star() && !l1.is_star() =>
                {
                    BlockKind::BichromaticStarEdge
                }
                _ => BlockKind::Other(2),
            }
        }
        4 => {
            let form = g.canonical_form().expect("small").as_bytes().to_vec();
            if four_alt_forms().contains(&form) {
                BlockKind::FourAlt
            } else {
                BlockKind::Other(4)
            }
        }
        k => BlockKind::Other(k),
    }
}

/// Kind of an alternating component `a` of `h`.
pub fn classify_block(h: &ColouredGraph, a: &[usize]) -> Result<BlockKind> {
    let mut sorted = a.to_vec();
    sorted.sort_unstable();
    if !alternating_components(h)?.contains(&sorted) {
        return Err(Error::NotAlternatingComponent(sorted));
    }
    Ok(block_kind(&h.induced(&sorted)))
}
