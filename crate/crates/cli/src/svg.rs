//! SVG drawings of fans in rank 1 and 2, and of rank-3 fans through a
//! cross-section. Coordinates are computed exactly and rounded only when
//! printed.

use std::cmp::Reverse;
use std::fmt::Write as _;

use gitkit::arith::orthogonal_complement;
use gitkit::{Cone, IntVector};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::Failure;

const SIZE: i64 = 400;
const SCALE: i64 = 160;

type Point = (BigRational, BigRational);

fn rat(x: &BigInt) -> BigRational {
    BigRational::from_integer(x.clone())
}

/// Decimal with three places, rounded half away from zero.
fn decimal(q: &BigRational) -> String {
    let scaled = q * BigRational::from_integer(1000.into());
    let rounded = scaled.round().to_integer();
    let (int, frac) = rounded.abs().div_rem(&BigInt::from(1000));
    let sign = if rounded.is_negative() { "-" } else { "" };
    format!("{sign}{int}.{frac:03}")
}

/// Screen coordinates: scaled, centered, `y` pointing up.
fn screen(p: &Point) -> (String, String) {
    let s = BigRational::from_integer(SCALE.into());
    let c = BigRational::from_integer((SIZE / 2).into());
    (decimal(&(&c + &p.0 * &s)), decimal(&(&c - &p.1 * &s)))
}

fn joined(points: &[Point]) -> String {
    points
        .iter()
        .map(|p| {
            let (x, y) = screen(p);
            format!("{x},{y}")
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn origin() -> Point {
    (BigRational::zero(), BigRational::zero())
}

/// `v / max |v_i|`, a point on the boundary of the unit square.
fn to_square(v: &IntVector) -> Point {
    let m = rat(&v.max_abs());
    (rat(&v[0]) / &m, rat(&v[1]) / &m)
}

fn cross(a: &Point, b: &Point) -> BigRational {
    &a.0 * &b.1 - &a.1 * &b.0
}

/// Counterclockwise order of points around `center`.
fn angular_order(points: &mut [Point], center: &Point) {
    let rel = |p: &Point| (&p.0 - &center.0, &p.1 - &center.1);
    let half = |d: &Point| !(d.1.is_positive() || (d.1.is_zero() && d.0.is_positive()));
    points.sort_by(|a, b| {
        let (da, db) = (rel(a), rel(b));
        half(&da)
            .cmp(&half(&db))
            .then_with(|| BigRational::zero().cmp(&cross(&da, &db)))
    });
}

fn header(out: &mut String, title: &str) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(out, "<title>{title}</title>");
    let _ = writeln!(out, r##"<rect width="{SIZE}" height="{SIZE}" fill="#ffffff"/>"##);
}

/// Draws `cones`, all living in `Z^rank`.
pub fn render(cones: &[Cone], rank: usize, title: &str) -> Result<String, Failure> {
    match rank {
        1 => Ok(render_line(cones, title)),
        2 => Ok(render_plane(cones, title)),
        3 => render_section(cones, title),
        _ => Err(Failure::unsupported("/rank", format!("not drawable: fans of rank {rank}"))),
    }
}

fn render_line(cones: &[Cone], title: &str) -> String {
    let mut out = String::new();
    header(&mut out, title);
    let end = |k: i64| screen(&(BigRational::from_integer(k.into()), BigRational::zero()));
    let ((lx, ly), (rx, ry)) = (end(-1), end(1));
    let _ = writeln!(
        out,
        r##"<line x1="{lx}" y1="{ly}" x2="{rx}" y2="{ry}" stroke="#cccccc" stroke-width="1"/>"##
    );
    let (ox, oy) = screen(&origin());
    for c in cones {
        for g in c.generators() {
            let (x, y) = end(if g[0].is_negative() { -1 } else { 1 });
            let _ = writeln!(
                out,
                r##"<line x1="{ox}" y1="{oy}" x2="{x}" y2="{y}" stroke="#c0392b" stroke-width="4"/>"##
            );
        }
    }
    let _ = writeln!(out, r##"<circle cx="{ox}" cy="{oy}" r="4" fill="#000000"/>"##);
    out.push_str("</svg>\n");
    out
}

/// Points of `cone ∩ [-1, 1]^2` spanning its drawing, in boundary order.
fn plane_polygon(c: &Cone) -> Vec<Point> {
    let corners = [[1, 1], [-1, 1], [-1, -1], [1, -1]];
    let mut points: Vec<Point> = c.generators().iter().map(to_square).collect();
    for k in corners {
        if c.contains_int(&IntVector::from_i64s(&k)) {
            points.push((rat(&k[0].into()), rat(&k[1].into())));
        }
    }
    if c.dim() < 2 || !c.is_pointed() && c.lineality().len() == 2 {
        angular_order(&mut points, &origin());
        return points;
    }
    // origin on the boundary: order around an interior point
    points.push(origin());
    let n = BigRational::from_integer((points.len() as i64).into());
    let center = points.iter().fold((BigRational::zero(), BigRational::zero()), |acc, p| {
        (acc.0 + &p.0, acc.1 + &p.1)
    });
    let center = (center.0 / &n, center.1 / &n);
    points.sort();
    points.dedup();
    angular_order(&mut points, &center);
    points
}

fn render_plane(cones: &[Cone], title: &str) -> String {
    let mut out = String::new();
    header(&mut out, title);
    for c in cones.iter().filter(|c| c.dim() == 2) {
        let _ = writeln!(
            out,
            r##"<polygon points="{}" fill="#aec6e8" fill-opacity="0.5" stroke="#5b7fa6" stroke-width="1"/>"##,
            joined(&plane_polygon(c))
        );
    }
    let (ox, oy) = screen(&origin());
    for c in cones.iter().filter(|c| c.dim() == 1) {
        for g in c.generators() {
            let (x, y) = screen(&to_square(&g));
            let _ = writeln!(
                out,
                r##"<line x1="{ox}" y1="{oy}" x2="{x}" y2="{y}" stroke="#c0392b" stroke-width="4"/>"##
            );
            let _ = writeln!(out, r#"<text x="{x}" y="{y}" font-size="12">{g}</text>"#);
        }
    }
    let _ = writeln!(out, r##"<circle cx="{ox}" cy="{oy}" r="4" fill="#000000"/>"##);
    out.push_str("</svg>\n");
    out
}

/// Rank-3 fans in the plane `⟨g, x⟩ = 1`, `g` positive on the support.
fn render_section(cones: &[Cone], title: &str) -> Result<String, Failure> {
    let gens: Vec<IntVector> = cones.iter().flat_map(|c| c.generators()).collect();
    let support = Cone::from_generators(3, &gens).map_err(|e| Failure::internal(e.to_string()))?;
    if !support.is_pointed() || support.is_zero() {
        return Err(Failure::unsupported("", "not drawable: the support has no cross-section"));
    }
    let dual = support.dual();
    let g = dual.relative_interior_point();
    // drop the component along g by using two integer coordinates on g^⊥
    let basis = orthogonal_complement(std::slice::from_ref(&g), 3);
    let project = |r: &IntVector| -> Point {
        let t = rat(&g.dot(r));
        let (a, b) = (rat(&basis[0].dot(r)) / &t, rat(&basis[1].dot(r)) / &t);
        (a, b)
    };
    let extent = support
        .rays()
        .iter()
        .map(project)
        .map(|p| p.0.abs().max(p.1.abs()))
        .max()
        .filter(|e| e.is_positive())
        .unwrap_or_else(|| BigRational::from_integer(1.into()));
    let fit = |p: Point| (p.0 / &extent, p.1 / &extent);

    let mut out = String::new();
    header(&mut out, title);
    let mut by_dim: Vec<&Cone> = cones.iter().collect();
    by_dim.sort_by_key(|c| Reverse(c.dim()));
    for c in by_dim {
        let mut pts: Vec<Point> = c.rays().iter().map(|r| fit(project(r))).collect();
        match c.dim() {
            3 => {
                let n = BigRational::from_integer((pts.len() as i64).into());
                let s = pts.iter().fold((BigRational::zero(), BigRational::zero()), |acc, p| {
                    (acc.0 + &p.0, acc.1 + &p.1)
                });
                angular_order(&mut pts, &(s.0 / &n, s.1 / &n));
                let _ = writeln!(
                    out,
                    r##"<polygon points="{}" fill="#aec6e8" fill-opacity="0.35" stroke="#5b7fa6" stroke-width="1"/>"##,
                    joined(&pts)
                );
            }
            2 => {
                let ((x1, y1), (x2, y2)) = (screen(&pts[0]), screen(&pts[1]));
                let _ = writeln!(
                    out,
                    r##"<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="#2c3e50" stroke-width="2"/>"##
                );
            }
            1 => {
                let (x, y) = screen(&pts[0]);
                let _ = writeln!(out, r##"<circle cx="{x}" cy="{y}" r="5" fill="#c0392b"/>"##);
                let _ = writeln!(out, r#"<text x="{x}" y="{y}" dx="6" dy="-6" font-size="12">{}</text>"#, c.rays()[0]);
            }
            _ => {}
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cone(rank: usize, gens: &[&[i64]]) -> Cone {
        let g: Vec<IntVector> = gens.iter().map(|x| IntVector::from_i64s(x)).collect();
        Cone::from_generators(rank, &g).unwrap()
    }

    #[test]
    fn decimals() {
        let q = |a: i64, b: i64| BigRational::new(a.into(), b.into());
        assert_eq!(decimal(&q(1, 3)), "0.333");
        assert_eq!(decimal(&q(-2, 3)), "-0.667");
        assert_eq!(decimal(&q(200, 1)), "200.000");
    }

    #[test]
    fn quadrant_polygon() {
        let poly = plane_polygon(&cone(2, &[&[1, 0], &[0, 1]]));
        assert_eq!(poly.len(), 4);
        let half = plane_polygon(&Cone::from_rays_and_lines(2, &[IntVector::from_i64s(&[0, 1])], &[IntVector::from_i64s(&[1, 0])]).unwrap());
        assert_eq!(half.len(), 6);
    }

    #[test]
    fn rank_four_is_not_drawable() {
        let e = render(&[Cone::zero(4).unwrap()], 4, "x").unwrap_err();
        assert_eq!(e.code, 4);
        assert!(e.message.contains("not drawable"));
    }

    #[test]
    fn deterministic() {
        let fan = [cone(2, &[]), cone(2, &[&[1, 0]]), cone(2, &[&[0, 1]]), cone(2, &[&[1, 0], &[0, 1]])];
        assert_eq!(render(&fan, 2, "t").unwrap(), render(&fan, 2, "t").unwrap());
        let line = [cone(1, &[]), cone(1, &[&[1]])];
        assert!(render(&line, 1, "t").unwrap().contains("<line"));
    }
}
