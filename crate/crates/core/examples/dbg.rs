use cc4b::eqs::MassPoint;
use cc4b::krawczyk::{step2_filter, tile_search_hull};
fn main() {
    let t20 = tile_search_hull(20);
    let t15 = tile_search_hull(15);
    println!("equal masses N=20: {}", step2_filter(&t20, &MassPoint::new(1.0,1.0,1.0).unwrap()).len());
    println!("ex-4 masses  N=15: {}", step2_filter(&t15, &MassPoint::new(0.2,0.3,0.4).unwrap()).len());
}
