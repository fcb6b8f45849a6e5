//! Regenerates the serialized-complex fixture corpus used by the CLI tests.
//! Usage: cargo run -p rtorsion --example make_fixtures -- <out_dir>

use rtorsion::spaces::{circle_complex, LensSpace};
use rtorsion::{AnyComplex, Representation};

fn main() {
    let dir = std::env::args().nth(1).expect("output directory argument");
    let dir = std::path::Path::new(&dir);
    std::fs::create_dir_all(dir).unwrap();
    let write = |name: &str, c: &AnyComplex| {
        let path = dir.join(name);
        std::fs::write(&path, serde_json::to_string_pretty(&c.to_json()).unwrap()).unwrap();
        println!("wrote {}", path.display());
    };

    for p in [2u64, 3, 5, 7, 11] {
        let q: Vec<i64> = if p > 3 { vec![1, 2] } else { vec![1, 1] };
        let lens = LensSpace::new(p, &q).unwrap();
        write(&format!("lens_p{p}.json"), &AnyComplex::GroupRing(lens.chain_complex()));
    }

    let rep = Representation::angle(1.0).unwrap();
    let circle = circle_complex(4, &rep).unwrap();
    write("circle_4cells.json", &AnyComplex::Complex(circle.clone()));

    // product of the 4-cell circle with an interval
    let interval = rtorsion::IntegerComplex::new(
        vec![2, 1],
        vec![rtorsion::Mat::from_rows(vec![vec![1], vec![-1]]).unwrap()],
    )
    .unwrap();
    write("circle_x_interval.json", &AnyComplex::Complex(circle.tensor_product(&interval)));

    // negative fixture: the boundary fails to square to zero
    let corrupted = serde_json::json!({
        "ring": {"type": "integer"},
        "ranks": [1, 2, 1],
        "boundaries": [
            [[1, 0]],
            [[1], [1]],
        ],
    });
    let path = dir.join("corrupted_boundary.json");
    std::fs::write(&path, serde_json::to_string_pretty(&corrupted).unwrap()).unwrap();
    println!("wrote {}", path.display());
}
