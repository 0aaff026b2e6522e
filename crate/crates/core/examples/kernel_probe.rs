//! Prints kernel and c-function values for external cross-checks.

use hotrans::root_datum::RootDatum;
use hotrans::transforms::phi;
use hotrans::Complex64;

fn main() {
    let cases = [
        (0.5, 0.3, 0.0, 3.0, 5.0),
        (0.5, 0.3, 0.2, 1.0, 2.5),
        (1.7, 0.9, 0.0, 7.0, 4.0),
        (1.0, 0.0, 0.0, 0.5, 12.0),
        (2.0, 1.0, -0.8, 2.0, 6.0),
    ];
    for (ma, m2a, eta, xi, t) in cases {
        let d = RootDatum::rank_one(ma, m2a).unwrap();
        let v = phi(&d, Complex64::new(eta, xi), t).unwrap();
        println!("phi m=({ma},{m2a}) lam={eta}+{xi}i t={t}: {:.16e} {:.16e}", v.re, v.im);
    }
    for (ma, m2a) in [(0.5, 0.3), (2.0, 1.0)] {
        let d = RootDatum::rank_one(ma, m2a).unwrap();
        for xi in [0.3, 4.0, 30.0] {
            let c = d.c_function(Complex64::new(0.0, xi)).unwrap();
            println!("c m=({ma},{m2a}) xi={xi}: {:.16e} {:.16e}", c.re, c.im);
        }
    }
}
