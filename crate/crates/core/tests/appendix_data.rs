use rand::Rng;
use sha2::{Digest, Sha256};
use triconic::appendix::{check_appendix, eval_terms, AppendixBlock, AppendixPolynomial};
use triconic::sampling::{random_point_near, random_triangle, trial_rng};

const PINNED: [(AppendixBlock, &str); 6] = [
    (AppendixBlock::AEllipse, "174114e350520f6708130569c63ccff966c4eb715636aa95d115ca2dd2d21fee"),
    (AppendixBlock::MajorVertices, "04a740dd3930b1f76dabf5361bebb9b5ad0880f25ee8971f9af9784abe786e89"),
    (AppendixBlock::X3primeCenter, "344efa9bf87d21265156a5928795e04c6affb79d13223e92c3dcf7cfee721c9d"),
    (AppendixBlock::PhypMember, "5534a9623310f7f9ed0797f7f32572f960204ef1e805314453dee34e5722f0a8"),
    (AppendixBlock::PstarConic, "b0e24b31046cd72b3fe5a53fa1697e164d3050b0a83886aaad5cf966e1dae36f"),
    (AppendixBlock::X5452Coordinate, "a806878c1d3456d1251cdd8da4433b0e325afc2c049f374e7542f53bc76c21e3"),
];

#[test]
fn data_files_match_checksums() {
    for (block, hex) in PINNED {
        assert_eq!(format!("{:x}", Sha256::digest(block.data().as_bytes())), hex, "{block} was edited");
    }
}

/// Recursive-descent evaluator for the transcribed expressions. `+/-`
/// binds like `+` and multiplies its right operand by `pm`.
struct Expr<'a> {
    s: &'a [u8],
    i: usize,
    env: &'a [(String, f64)],
}

impl Expr<'_> {
    fn peek(&self) -> Option<u8> {
        self.s.get(self.i).copied()
    }

    fn var(&self, name: &str) -> f64 {
        self.env.iter().find(|(n, _)| n == name).unwrap_or_else(|| panic!("unbound {name}")).1
    }

    fn sum(&mut self) -> f64 {
        let mut v = self.product();
        loop {
            if self.s[self.i..].starts_with(b"+/-") {
                self.i += 3;
                v += self.var("pm") * self.product();
            } else if self.peek() == Some(b'+') {
                self.i += 1;
                v += self.product();
            } else if self.peek() == Some(b'-') {
                self.i += 1;
                v -= self.product();
            } else {
                return v;
            }
        }
    }

    fn product(&mut self) -> f64 {
        let mut v = self.unary();
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.i += 1;
                    v *= self.unary();
                }
                Some(b'/') => {
                    self.i += 1;
                    v /= self.unary();
                }
                _ => return v,
            }
        }
    }

    fn unary(&mut self) -> f64 {
        if self.peek() == Some(b'-') {
            self.i += 1;
            return -self.unary();
        }
        let base = self.atom();
        if self.peek() == Some(b'^') {
            self.i += 1;
            return base.powf(self.unary());
        }
        base
    }

    fn atom(&mut self) -> f64 {
        let c = self.peek().expect("unexpected end");
        if c == b'(' {
            self.i += 1;
            let v = self.sum();
            assert_eq!(self.peek(), Some(b')'), "unbalanced at {}", self.i);
            self.i += 1;
            return v;
        }
        let start = self.i;
        while self.peek().is_some_and(|c| c.is_ascii_alphanumeric() || c == b'.') {
            self.i += 1;
        }
        let tok = std::str::from_utf8(&self.s[start..self.i]).unwrap();
        assert!(!tok.is_empty(), "unexpected {:?} at {}", c as char, start);
        tok.parse::<f64>().unwrap_or_else(|_| self.var(tok))
    }
}

fn eval_source(src: &str, env: &[(String, f64)]) -> f64 {
    let lhs = src.split('=').next().unwrap().replace(' ', "");
    let mut e = Expr { s: lhs.as_bytes(), i: 0, env };
    let v = e.sum();
    assert_eq!(e.i, lhs.len(), "trailing input in {lhs}");
    v
}

/// Splits `[u,v,w]` at top-level commas.
fn split_list(src: &str) -> Vec<String> {
    let inner = src.trim().strip_prefix('[').and_then(|s| s.strip_suffix(']')).expect("bracketed list");
    let (mut parts, mut cur, mut depth) = (Vec::new(), String::new(), 0);
    for ch in inner.chars() {
        match ch {
            ',' if depth == 0 => parts.push(std::mem::take(&mut cur)),
            _ => {
                depth += (ch == '(') as i32 - (ch == ')') as i32;
                cur.push(ch);
            }
        }
    }
    parts.push(cur);
    parts
}

fn terms(p: &AppendixPolynomial, key: &str, env: &[(String, f64)]) -> (f64, f64) {
    let values: Vec<f64> = p.variables.iter().map(|v| env.iter().find(|(n, _)| n == v).unwrap().1).collect();
    let e = eval_terms(p.component(key).unwrap(), &values);
    (e.value, e.max_term)
}

fn random_env(p: &AppendixPolynomial, k: u64) -> Vec<(String, f64)> {
    let mut rng = trial_rng(77, k);
    p.variables
        .iter()
        .map(|v| (v.clone(), if v == "pm" { [1.0, -1.0][rng.gen_range(0..2)] } else { rng.gen_range(0.5..2.0) }))
        .collect()
}

fn close(a: f64, b: f64, scale: f64) -> bool {
    (a - b).abs() <= 1e-10 * scale.max(a.abs()).max(b.abs())
}

#[test]
fn term_lists_expand_the_sources() {
    for block in AppendixBlock::ALL {
        let p = block.load().unwrap();
        for k in 0..20 {
            let env = random_env(&p, k);
            match block {
                AppendixBlock::AEllipse | AppendixBlock::X3primeCenter | AppendixBlock::PhypMember => {
                    let key = if block == AppendixBlock::X3primeCenter { "f" } else { "equation" };
                    let (v, m) = terms(&p, key, &env);
                    let s = eval_source(&p.source, &env);
                    assert!(close(v, s, m), "{block}: {v} vs {s}");
                }
                AppendixBlock::MajorVertices => {
                    let parts = split_list(&p.source);
                    let (un, _) = terms(&p, "u_numerator", &env);
                    let (ud, _) = terms(&p, "u_denominator", &env);
                    let u = eval_source(&parts[0], &env);
                    assert!(close(un / ud, u, 0.0), "{block} u: {} vs {u}", un / ud);
                    for (key, part) in [("v", &parts[1]), ("w", &parts[2])] {
                        let (v, m) = terms(&p, key, &env);
                        assert!(close(v, eval_source(part, &env), m), "{block} {key}");
                    }
                }
                AppendixBlock::PstarConic => {
                    // numerator over the product of the three denominators
                    let g = |n: &str| env.iter().find(|(k, _)| k == n).unwrap().1;
                    let d = (g("a").powi(2) - g("La").powi(2)) * (g("b").powi(2) - g("Lb").powi(2)) * (g("c").powi(2) - g("Lc").powi(2));
                    let (v, m) = terms(&p, "equation", &env);
                    let s = eval_source(&p.source, &env) * d;
                    assert!(close(v, s, m) || close(v, -s, m), "{block}: {v} vs {s}");
                }
                AppendixBlock::X5452Coordinate => {
                    let (n, _) = terms(&p, "numerator", &env);
                    let (d, _) = terms(&p, "denominator", &env);
                    let s = eval_source(&p.source, &env);
                    assert!(close(n / d, s, 0.0), "{block}: {} vs {s}", n / d);
                }
            }
        }
    }
}

#[test]
fn evaluator_handles_plus_minus_and_powers() {
    let env = vec![("x".to_string(), 2.0), ("pm".to_string(), -1.0)];
    assert_eq!(eval_source("x^2+/-3*x-(-x)^3 = 0", &env), 4.0 - 6.0 + 8.0);
    assert_eq!(split_list("[(a,b),c,-(d)]"), vec!["(a,b)", "c", "-(d)"]);
}

#[test]
fn blocks_hold_on_random_triangles() {
    for block in AppendixBlock::ALL {
        let mut done = 0;
        let mut k = 0;
        while done < 10 {
            let mut rng = trial_rng(1234, k);
            k += 1;
            let t = random_triangle(&mut rng);
            let ok = (0..3).all(|i| {
                let a = t.angle(i).to_degrees();
                a >= 10.0 && (a - 90.0).abs() >= 5.0
            });
            if !ok {
                continue;
            }
            let p = random_point_near(&mut rng, &t, 1.2);
            let extra = matches!(block, AppendixBlock::PhypMember | AppendixBlock::PstarConic).then_some(p);
            if extra.is_some() && (0..3).any(|i| triconic::geometry::point_line_distance(p, &t.sideline(i)) < 0.02 * t.diameter()) {
                continue;
            }
            let r = check_appendix(block, &t, extra).unwrap();
            assert!(r.pass(), "{block}: {} > {}", r.max_residual, r.bound);
            done += 1;
        }
    }
}
