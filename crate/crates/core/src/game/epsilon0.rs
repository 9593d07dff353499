//! Certified lower bound on the deviation gap of `G_delta` away from its
//! equilibrium.
//!
//! A profile of a 2x2 game is a point `(x, y)` of the unit square, where
//! `x` and `y` are the probabilities of the first action. Cut the square by
//! the indifference lines `x = delta`, `y = delta` and by the edges of the
//! excluded box `max(|x - delta|, |y - delta|) < eps`. Inside each cell both
//! per-player gains are products `g(x) h(y)` of non-negative affine factors,
//! and for `G_delta` the two gains are monotone in the same direction along
//! at least one axis in every cell, so `max(f1, f2)` has no interior local
//! minimum. Along a cell edge both gains are affine, so the minimum over an
//! edge sits at an endpoint or at the crossing `f1 = f2`. Scanning those
//! finitely many candidates gives the exact minimum.

use num::{One, Signed};

use super::{MixedProfile, MixedStrategy, NormalFormGame, Player};
use crate::error::{Error, Result};
use crate::rational::{int, Rational};

pub fn epsilon0_estimate(delta: &Rational, eps: &Rational) -> Result<Rational> {
    let half = Rational::new(1.into(), 2.into());
    if !delta.is_positive() || delta >= &half {
        return Err(Error::DeltaOutOfRange(delta.clone()));
    }
    if !eps.is_positive() {
        return Err(Error::InvalidArgument(format!("eps must be positive, got {eps}")));
    }
    let game = NormalFormGame::modified_matching_pennies(delta)?;

    let breaks = |c: &Rational| {
        let mut v: Vec<Rational> = [int(0), int(1), c.clone(), c - eps, c + eps]
            .into_iter()
            .filter(|t| !t.is_negative() && t <= &int(1))
            .collect();
        v.sort();
        v.dedup();
        v
    };
    let xs = breaks(delta);
    let ys = breaks(delta);

    let gains = |x: &Rational, y: &Rational| -> (Rational, Rational) {
        let p = MixedProfile::new(two(x), two(y));
        (
            game.deviation_gain(&p, Player::One).expect("2x2 profile"),
            game.deviation_gain(&p, Player::Two).expect("2x2 profile"),
        )
    };

    let two_r = int(2);
    let in_region = |x: &Rational, y: &Rational| (x - delta).abs().max((y - delta).abs()) >= *eps;
    // Grid segments between consecutive breakpoints lie either inside the
    // open box or entirely in the region, so the midpoint decides.
    type Point<'a> = (&'a Rational, &'a Rational);
    let mut segments: Vec<(Point, Point)> = Vec::new();
    for y in &ys {
        for xw in xs.windows(2) {
            segments.push(((&xw[0], y), (&xw[1], y)));
        }
    }
    for x in &xs {
        for yw in ys.windows(2) {
            segments.push(((x, &yw[0]), (x, &yw[1])));
        }
    }
    let mut best: Option<Rational> = None;
    for ((x0, y0), (x1, y1)) in segments {
        let mx = (x0 + x1) / &two_r;
        let my = (y0 + y1) / &two_r;
        if !in_region(&mx, &my) {
            continue;
        }
        let m = edge_min(&gains(x0, y0), &gains(x1, y1));
        if best.as_ref().is_none_or(|b| &m < b) {
            best = Some(m);
        }
    }
    best.ok_or_else(|| Error::EmptyRegion(eps.clone()))
}

fn two(p: &Rational) -> MixedStrategy {
    MixedStrategy::new(vec![p.clone(), Rational::one() - p]).expect("p in [0,1]")
}

/// Minimum of `max(f1, f2)` along a segment where both are affine.
fn edge_min(a: &(Rational, Rational), b: &(Rational, Rational)) -> Rational {
    let at_a = a.0.clone().max(a.1.clone());
    let at_b = b.0.clone().max(b.1.clone());
    let mut m = at_a.min(at_b);
    let da = &a.0 - &a.1;
    let db = &b.0 - &b.1;
    if (da.is_positive() && db.is_negative()) || (da.is_negative() && db.is_positive()) {
        let t = &da / (&da - &db);
        let cross = &a.0 + &t * (&b.0 - &a.0);
        m = m.min(cross);
    }
    m
}
