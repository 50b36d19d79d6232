//! Left-right Cayley complexes: counts, local views and expansion of the two
//! Cayley graphs.
//!
//! ```bash
//! cargo run --example cayley_complex
//! ```

use qtanner::complex::{CayleySide, FiniteGroup, Vertex, VertexClass};
use qtanner::instances::{complex, REFERENCE_A, REFERENCE_B};

fn main() -> qtanner::Result<()> {
    let c = complex(FiniteGroup::cyclic(13)?, &REFERENCE_A, &REFERENCE_B)?;
    println!(
        "Z13: {} vertices, {} faces, {} A-edges, {} B-edges",
        c.num_vertices(),
        c.num_faces(),
        c.num_a_edges(),
        c.num_b_edges()
    );
    for side in [CayleySide::Left, CayleySide::Right] {
        let s = c.second_eigenvalue(side)?;
        println!(
            "{side:?} graph: degree {}, lambda2 {:.4}, Ramanujan bound {:.4}",
            s.degree,
            s.lambda2.unwrap_or(0.0),
            s.ramanujan_bound
        );
    }
    let v = Vertex {
        g: 0,
        class: VertexClass::from_bits(0, 0),
    };
    let view = c.local_view(v)?;
    println!("local view of {v:?}: {} faces {:?}", view.len(), view);
    let f = c.face(view[0]);
    println!("face {f:?} has vertices {:?}", c.face_vertices(f));

    // A non-abelian group works the same way.
    let d = complex(FiniteGroup::dihedral(6)?, &[1, 5, 6, 7], &[6, 8, 1, 5])?;
    println!("D6: {} vertices, {} faces", d.num_vertices(), d.num_faces());
    Ok(())
}
