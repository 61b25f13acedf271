//! The fifteen tricyclic base shapes at their shortest slot lengths, with
//! their internal segments and cycle counts.

use qmain::structure::{classify_base, internal_segments, realize_shape, ShapeId};

fn shortest(shape: ShapeId) -> Vec<usize> {
    let slots = shape.slots();
    let mut lengths = vec![1; slots.len()];
    for (i, &(u, v)) in slots.iter().enumerate() {
        let parallel_before = slots[..i].iter().any(|&(x, y)| (x, y) == (u, v) || (x, y) == (v, u));
        lengths[i] = if u == v {
            3
        } else if parallel_before {
            2
        } else {
            1
        };
    }
    debug_assert!(shape.valid_lengths(&lengths));
    lengths
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for shape in ShapeId::ALL {
        let lengths = shortest(shape);
        let base = realize_shape(shape, &lengths)?;
        let back = classify_base(&base.graph)?;
        let segments: Vec<usize> = internal_segments(&base.graph)?.iter().map(|s| s.length()).collect();
        println!(
            "{:<4} n={:<2} cycles={} lengths {:?} segments {:?} classified {} {:?}",
            shape.to_string(),
            base.graph.order(),
            base.graph.count_cycles()?,
            lengths,
            segments,
            back.shape,
            back.lengths
        );
    }
    Ok(())
}
