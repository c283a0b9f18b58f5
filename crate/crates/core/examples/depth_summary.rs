use slimq::builder::{depth_summary, BuilderMode, SboxCircuits};
use slimq::circuit::DepthModel;

fn main() {
    let sboxes = SboxCircuits::bundled();
    for model in [DepthModel::default(), DepthModel::unit()] {
        println!("depth weights {:?}", model.0);
        for mode in BuilderMode::ALL {
            let d = depth_summary(&sboxes, mode, &model).unwrap();
            let cf = d.closed_form;
            println!(
                "  {:<10} closed form {:>5} ({} + {}), separately {:>5}, ASAP {:>5}",
                mode.name(),
                cf.total,
                cf.early_total,
                cf.late_total,
                d.per_round_sum(),
                d.measured_total
            );
            println!("             per round {:?}", d.per_round);
        }
    }
}
