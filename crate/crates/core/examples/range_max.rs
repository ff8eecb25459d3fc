//! Range maxima and the best non-neighbour of every vertex.
use graph_center::gen;
use graph_center::rmq::{max_over_nonneighbors, RangeMaxIndex};

fn main() {
    let values = [3.0, 9.0, 1.0, 4.0, 9.0, 2.0];
    let idx = RangeMaxIndex::build(&values).unwrap();
    println!("max on [2, 5] = {} at {}", idx.max(2, 5), idx.argmax(2, 5));
    let g = gen::cycle(6);
    println!("best non-neighbour value per vertex of C6: {:?}", max_over_nonneighbors(&g, &values));
}
