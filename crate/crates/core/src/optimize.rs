//! One-dimensional minimization and root bracketing.

/// `(√5 − 1)/2`
const INV_GOLDEN: f64 = 0.618_033_988_749_894_8;

/// Golden-section search for a minimum of a unimodal `f` on `[a, b]`,
/// stopping when the bracket is narrower than `tol`.
pub fn golden_section<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let mut c = b - INV_GOLDEN * (b - a);
    let mut d = a + INV_GOLDEN * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while (b - a).abs() > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_GOLDEN * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_GOLDEN * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    let fx = f(x);
    // the midpoint can be marginally worse than the best interior probe
    [(x, fx), (c, fc), (d, fd)]
        .into_iter()
        .min_by(|p, q| p.1.total_cmp(&q.1))
        .unwrap()
}

/// Bisection on a bracket with `f(a)` and `f(b)` of opposite sign, until the
/// bracket is narrower than `tol`.
pub fn bisect<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, tol: f64) -> f64 {
    let mut fa = f(a);
    if fa == 0.0 {
        return a;
    }
    if f(b) == 0.0 {
        return b;
    }
    while (b - a).abs() > tol {
        let m = 0.5 * (a + b);
        if m <= a.min(b) || m >= a.max(b) {
            break;
        }
        let fm = f(m);
        if fm == 0.0 {
            return m;
        }
        if (fm < 0.0) == (fa < 0.0) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

/// All roots of `f` found as sign changes between consecutive `nodes`,
/// refined by bisection.
pub fn scan_roots<F: Fn(f64) -> f64>(f: F, nodes: &[f64], tol: f64) -> Vec<f64> {
    let values: Vec<f64> = nodes.iter().map(|&x| f(x)).collect();
    let mut roots = Vec::new();
    for i in 0..nodes.len().saturating_sub(1) {
        let (fa, fb) = (values[i], values[i + 1]);
        if fa == 0.0 {
            roots.push(nodes[i]);
        } else if fb != 0.0 && (fa < 0.0) != (fb < 0.0) {
            roots.push(bisect(&f, nodes[i], nodes[i + 1], tol));
        }
    }
    if values.last() == Some(&0.0) {
        roots.push(*nodes.last().unwrap());
    }
    roots
}
