use sojourn::harness::commands::run_convergence;
use sojourn::harness::config::ConvergeSection;

fn main() -> sojourn::Result<()> {
    let sec = ConvergeSection {
        eps: vec![0.2, 0.1, 0.05, 0.025],
        t: 1.0,
        center: 0.0,
        sigma: 0.5,
        oracle_h: 0.01,
        half_width: 12.0,
    };
    let rows = run_convergence(&sec)?;
    for (i, r) in rows.iter().enumerate() {
        let order = if i > 0 { (rows[i - 1].l1_rel / r.l1_rel).log2() } else { f64::NAN };
        println!("eps = {:<6} l1_rel = {:.3e}  linf = {:.3e}  order = {order:.2}", r.eps, r.l1_rel, r.linf);
    }
    Ok(())
}
