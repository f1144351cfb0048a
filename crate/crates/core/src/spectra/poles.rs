/// Tuning of the real-axis root search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoleSearch {
    /// Scan points across the bracket.
    pub grid: usize,
    /// Bisection stops once the bracket is narrower than this.
    pub tolerance: f64,
    /// Roots closer than this are merged.
    pub dedupe: f64,
    /// A sign-preserving local extremum of `|f|` below `touch * max|f|`
    /// counts as a (double) root.
    pub touch: f64,
}

impl Default for PoleSearch {
    fn default() -> Self {
        Self { grid: 2048, tolerance: 1e-10, dedupe: 1e-8, touch: 1e-10 }
    }
}

/// Real roots of `f` in `[lo, hi]`.
///
/// `f` is expected to be continuous where finite; non-finite samples are
/// skipped. When fewer than `count_hint` roots are found the scan is
/// repeated on finer grids, until a refinement adds nothing.
pub fn find_poles<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, count_hint: Option<usize>) -> Vec<f64> {
    find_poles_with(&f, lo, hi, count_hint, PoleSearch::default())
}

pub fn find_poles_with<F: Fn(f64) -> f64>(
    f: &F,
    lo: f64,
    hi: f64,
    count_hint: Option<usize>,
    search: PoleSearch,
) -> Vec<f64> {
    if !(lo.is_finite() && hi.is_finite()) || hi <= lo {
        return Vec::new();
    }
    let mut best = scan(f, lo, hi, search);
    let mut s = search;
    for _ in 0..3 {
        if best.len() >= count_hint.unwrap_or(0) {
            break;
        }
        s.grid *= 4;
        let roots = scan(f, lo, hi, s);
        if roots.len() <= best.len() {
            break;
        }
        best = roots;
    }
    best
}

fn scan<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64, s: PoleSearch) -> Vec<f64> {
    let n = s.grid.max(3);
    let step = (hi - lo) / (n - 1) as f64;
    let xs: Vec<f64> = (0..n).map(|i| if i == n - 1 { hi } else { lo + step * i as f64 }).collect();
    let fs: Vec<f64> = xs.iter().map(|&x| f(x)).collect();
    let fmax = fs.iter().filter(|v| v.is_finite()).fold(0.0f64, |m, v| m.max(v.abs()));
    if fmax == 0.0 {
        return Vec::new();
    }
    let mut roots = Vec::new();

    let mut prev: Option<usize> = None;
    for i in 0..n {
        if !fs[i].is_finite() {
            continue;
        }
        if fs[i] == 0.0 {
            roots.push(xs[i]);
        } else if let Some(p) = prev {
            if fs[p] != 0.0 && fs[p].signum() != fs[i].signum() {
                roots.push(bisect(f, xs[p], xs[i], fs[p], s.tolerance));
            }
        }
        prev = Some(i);
    }

    let small = |v: f64| v.is_finite() && v.abs() <= s.touch * fmax;
    let le = |a: f64, b: f64| !b.is_finite() || a.abs() <= b.abs();
    if fs[0] != 0.0 && small(fs[0]) && le(fs[0], fs[1]) {
        roots.push(lo);
    }
    if fs[n - 1] != 0.0 && small(fs[n - 1]) && le(fs[n - 1], fs[n - 2]) {
        roots.push(hi);
    }
    for i in 1..n - 1 {
        let (a, b, c) = (fs[i - 1], fs[i], fs[i + 1]);
        if !(a.is_finite() && b.is_finite() && c.is_finite()) || b == 0.0 {
            continue;
        }
        let same_sign = a.signum() == b.signum() && c.signum() == b.signum();
        if same_sign && b.abs() <= a.abs() && b.abs() <= c.abs() {
            if let Some(x) = extremum(f, xs[i - 1], xs[i + 1]) {
                let v = probe(f, x);
                if small(v) {
                    roots.push(x);
                }
            }
        }
    }

    roots.sort_by(f64::total_cmp);
    let mut out: Vec<f64> = Vec::with_capacity(roots.len());
    for r in roots {
        if out.last().is_none_or(|&l| r - l > s.dedupe) {
            out.push(r);
        }
    }
    out
}

/// `f(x)`, nudged off an exact singular sample.
fn probe<F: Fn(f64) -> f64>(f: &F, x: f64) -> f64 {
    let v = f(x);
    if v.is_finite() {
        return v;
    }
    let h = 1e-12 * x.abs().max(1.0);
    let (a, b) = (f(x - h), f(x + h));
    if a.is_finite() && b.is_finite() {
        0.5 * (a + b)
    } else {
        f64::NAN
    }
}

fn bisect<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut b: f64, mut fa: f64, tol: f64) -> f64 {
    for _ in 0..200 {
        if b - a <= tol {
            break;
        }
        let mut m = 0.5 * (a + b);
        let mut fm = f(m);
        if !fm.is_finite() {
            m = a + 0.4999 * (b - a);
            fm = f(m);
            if !fm.is_finite() {
                break;
            }
        }
        if fm == 0.0 {
            return m;
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

/// Stationary point of `f` in `[a, b]`, located by bisecting a central
/// difference of `f`.
fn extremum<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut b: f64) -> Option<f64> {
    let d = |x: f64| {
        let h = 1e-6 * x.abs().max(1.0);
        (probe(f, x + h) - probe(f, x - h)) / (2.0 * h)
    };
    let (mut da, db) = (d(a), d(b));
    if !(da.is_finite() && db.is_finite()) || da.signum() == db.signum() {
        return None;
    }
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let dm = d(m);
        if !dm.is_finite() {
            return None;
        }
        if dm.signum() == da.signum() {
            a = m;
            da = dm;
        } else {
            b = m;
        }
    }
    Some(0.5 * (a + b))
}
