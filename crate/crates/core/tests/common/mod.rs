#![allow(dead_code)]

use std::io::Write;

use polyloc::arith::parse::parse_mpoly;
use polyloc::arith::MPoly;

/// Prints one line to stderr, bypassing libtest's output capture.
pub fn report(n: u32, name: &str, ok: bool, detail: &str) {
    let tag = if ok { "PASS" } else { "FAIL" };
    let _ = writeln!(std::io::stderr(), "criterion {n} [{tag}] {name}: {detail}");
}

pub fn mpoly(s: &str, n: usize) -> MPoly {
    parse_mpoly(s, n).unwrap()
}

/// `Σ 100(x_{i+1} − x_i²)² + (1 − x_i)²`.
pub fn rosenbrock(n: usize) -> MPoly {
    let terms: Vec<String> = (1..n)
        .map(|i| format!("100*(x{} - x{i}^2)^2 + (1 - x{i})^2", i + 1))
        .collect();
    mpoly(&terms.join(" + "), n)
}

pub fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
}

pub fn sort_points(mut v: Vec<Vec<f64>>) -> Vec<Vec<f64>> {
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    v
}

/// Dense bivariate polynomial `Σ c[a][b] x^a y^b`, total degree ≤ 4.
#[derive(Clone, Debug)]
pub struct Quartic {
    pub c: [[f64; 5]; 5],
}

impl Quartic {
    pub fn monomials() -> impl Iterator<Item = (usize, usize)> {
        (0..=4).flat_map(|a| (0..=4 - a).map(move |b| (a, b)))
    }

    pub fn to_mpoly(&self) -> MPoly {
        let terms: Vec<String> = Self::monomials()
            .filter(|&(a, b)| self.c[a][b] != 0.0)
            .map(|(a, b)| {
                let mut t = format!("({})", self.c[a][b]);
                if a > 0 {
                    t += &format!("*x1^{a}");
                }
                if b > 0 {
                    t += &format!("*x2^{b}");
                }
                t
            })
            .collect();
        mpoly(&terms.join(" + "), 2)
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        let mut xp = [1.0; 5];
        let mut yp = [1.0; 5];
        for k in 1..5 {
            xp[k] = xp[k - 1] * x;
            yp[k] = yp[k - 1] * y;
        }
        Self::monomials().map(|(a, b)| self.c[a][b] * xp[a] * yp[b]).sum()
    }

    fn powers(v: f64) -> [f64; 5] {
        let mut p = [1.0; 5];
        for k in 1..5 {
            p[k] = p[k - 1] * v;
        }
        p
    }

    pub fn grad(&self, x: f64, y: f64) -> [f64; 2] {
        let (xp, yp) = (Self::powers(x), Self::powers(y));
        let mut g = [0.0; 2];
        for (a, b) in Self::monomials() {
            let c = self.c[a][b];
            if a > 0 {
                g[0] += c * a as f64 * xp[a - 1] * yp[b];
            }
            if b > 0 {
                g[1] += c * b as f64 * xp[a] * yp[b - 1];
            }
        }
        g
    }

    pub fn hess(&self, x: f64, y: f64) -> [[f64; 2]; 2] {
        let (xp, yp) = (Self::powers(x), Self::powers(y));
        let mut h = [[0.0; 2]; 2];
        for (a, b) in Self::monomials() {
            let c = self.c[a][b];
            let (af, bf) = (a as f64, b as f64);
            if a > 1 {
                h[0][0] += c * af * (af - 1.0) * xp[a - 2] * yp[b];
            }
            if b > 1 {
                h[1][1] += c * bf * (bf - 1.0) * xp[a] * yp[b - 2];
            }
            if a > 0 && b > 0 {
                h[0][1] += c * af * bf * xp[a - 1] * yp[b - 1];
            }
        }
        h[1][0] = h[0][1];
        h
    }

    /// Minimum of the quartic part on the unit circle, sampled.
    pub fn leading_min_on_circle(&self) -> f64 {
        (0..7200)
            .map(|k| {
                let th = k as f64 * std::f64::consts::PI / 3600.0;
                let (s, c) = th.sin_cos();
                (0..=4)
                    .map(|a| self.c[a][4 - a] * c.powi(a as i32) * s.powi(4 - a as i32))
                    .sum::<f64>()
            })
            .fold(f64::INFINITY, f64::min)
    }

    /// Radius outside which `x·∇f(x) > 0`, so all critical points lie inside.
    pub fn critical_radius(&self) -> f64 {
        let c4 = 0.9 * self.leading_min_on_circle();
        assert!(c4 > 0.0);
        let s = |d: usize| -> f64 { (0..=d).map(|a| self.c[a][d - a].abs()).sum() };
        let (s3, s2, s1) = (s(3), s(2), s(1));
        let mut r: f64 = 0.1;
        while 4.0 * c4 * r.powi(4) - 3.0 * s3 * r.powi(3) - 2.0 * s2 * r * r - s1 * r <= 0.0 {
            r += 0.01;
        }
        r
    }
}

fn eigen_sym2(h: [[f64; 2]; 2]) -> (f64, f64) {
    let tr = h[0][0] + h[1][1];
    let det = h[0][0] * h[1][1] - h[0][1] * h[1][0];
    let disc = ((tr * tr) / 4.0 - det).max(0.0).sqrt();
    (tr / 2.0 - disc, tr / 2.0 + disc)
}

/// Damped Newton with a gradient fallback and Armijo backtracking.
fn descend(q: &Quartic, mut p: [f64; 2]) -> Option<[f64; 2]> {
    for _ in 0..500 {
        let g = q.grad(p[0], p[1]);
        let gn = g[0].hypot(g[1]);
        if gn < 1e-13 {
            return Some(p);
        }
        let h = q.hess(p[0], p[1]);
        let (lmin, _) = eigen_sym2(h);
        let det = h[0][0] * h[1][1] - h[0][1] * h[1][0];
        let mut d = if lmin > 1e-12 {
            [
                -(h[1][1] * g[0] - h[0][1] * g[1]) / det,
                -(h[0][0] * g[1] - h[1][0] * g[0]) / det,
            ]
        } else {
            [-g[0], -g[1]]
        };
        if lmin > 1e-12 && gn < 1e-6 {
            let np = [p[0] + d[0], p[1] + d[1]];
            let g2 = q.grad(np[0], np[1]);
            if g2[0].hypot(g2[1]) >= gn {
                return (gn < 1e-8).then_some(p);
            }
            p = np;
            continue;
        }
        let slope = d[0] * g[0] + d[1] * g[1];
        if slope >= 0.0 {
            d = [-g[0], -g[1]];
        }
        let slope = d[0] * g[0] + d[1] * g[1];
        let f0 = q.eval(p[0], p[1]);
        let mut step = 1.0;
        loop {
            let np = [p[0] + step * d[0], p[1] + step * d[1]];
            if q.eval(np[0], np[1]) <= f0 + 1e-4 * step * slope {
                p = np;
                break;
            }
            step *= 0.5;
            if step < 1e-20 {
                return (gn < 1e-8).then_some(p);
            }
        }
    }
    let g = q.grad(p[0], p[1]);
    (g[0].hypot(g[1]) < 1e-8).then_some(p)
}

/// Local minimizers of `q` by grid search, descent and a second-order filter.
pub fn grid_oracle(q: &Quartic, step: f64) -> Vec<Vec<f64>> {
    let r = q.critical_radius() + 2.0 * step;
    let k = (2.0 * r / step).ceil() as usize + 1;
    let coord = |i: usize| -r + i as f64 * step;
    let mut vals = vec![0.0; k * k];
    for i in 0..k {
        for j in 0..k {
            vals[i * k + j] = q.eval(coord(i), coord(j));
        }
    }
    let mut found: Vec<[f64; 2]> = Vec::new();
    for i in 1..k - 1 {
        for j in 1..k - 1 {
            let v = vals[i * k + j];
            let is_min = (-1i64..=1).all(|di| {
                (-1i64..=1).all(|dj| {
                    let ii = (i as i64 + di) as usize;
                    let jj = (j as i64 + dj) as usize;
                    v <= vals[ii * k + jj]
                })
            });
            if !is_min {
                continue;
            }
            let Some(p) = descend(q, [coord(i), coord(j)]) else {
                continue;
            };
            let (lmin, _) = eigen_sym2(q.hess(p[0], p[1]));
            if lmin <= 1e-9 {
                continue;
            }
            if !found.iter().any(|f| (f[0] - p[0]).hypot(f[1] - p[1]) < 1e-6) {
                found.push(p);
            }
        }
    }
    sort_points(found.into_iter().map(|p| p.to_vec()).collect())
}
