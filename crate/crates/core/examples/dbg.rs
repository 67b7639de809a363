// scratch: dump approximant diagnostics
use num_bigint::BigInt;
use pellsq::hypergeom::approximants;

fn main() {
    for (u1, u2, t) in [(8i64, 4i64, -1i64), (478, 2, -1), (46, 8, -1)] {
        println!("== (u1,u2,t') = ({u1},{u2},{t})");
        for r in [0u32, 1, 3, 5, 8] {
            match approximants(&BigInt::from(u1), &BigInt::from(u2), &BigInt::from(t), r, 256) {
                Ok(tr) => {
                    let defect = tr.identity_defect();
                    let e_bound = tr.ell0.clone() * tr.big_e.clone() * 0; // placeholder
                    let _ = e_bound;
                    let rb = tr.ell0.clone() * rug::ops::Pow::pow(tr.big_e.clone(), -(r as i32));
                    let qb = tr.k0.clone() * rug::ops::Pow::pow(tr.big_q.clone(), r);
                    println!(
                        "r={r}: phi={:.4} Q={:.4} E={:.4} |q|={:.4e} 0.89Q^r={:.4e} |R|={:.4e} l0E^-r={:.4e} defect=2^{:.1}",
                        tr.phi.to_f64(), tr.big_q.to_f64(), tr.big_e.to_f64(),
                        tr.q.abs().to_f64(), qb.to_f64(), tr.remainder.abs().to_f64(), rb.to_f64(),
                        defect.to_f64().log2()
                    );
                }
                Err(e) => println!("r={r}: {e}"),
            }
        }
    }
}
