//! Degree-3 truncated Taylor ("jet") arithmetic in two variables.
//!
//! A [`Jet3`] carries a function value together with every partial derivative
//! up to third order at a point:
//!
//! ```text
//! f, f_x, f_y, f_xx, f_xy, f_yy, f_xxx, f_xxy, f_xyy, f_yyy
//! ```
//!
//! Propagating jets through arithmetic gives machine-accurate derivatives of
//! any closed-form expression without hand-differentiating it three times:
//! products use the trivariate Leibniz rule and unary functions use the
//! third-order chain rule. The pooling-liquidity analysis needs second
//! partials of the price P = u_A/u_B, i.e. third partials of the utility u,
//! which is exactly what this type provides.
//!
//! Mixed partials commute for every function built here, so only the four
//! third-order slots above are stored.

use std::ops::{Add, Mul, Sub};

/// Value and all partial derivatives up to order 3 at a point in (x, y).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet3 {
    pub v: f64,
    pub dx: f64,
    pub dy: f64,
    pub dxx: f64,
    pub dxy: f64,
    pub dyy: f64,
    pub dxxx: f64,
    pub dxxy: f64,
    pub dxyy: f64,
    pub dyyy: f64,
}

impl Jet3 {
    /// Jet of the constant function `c`.
    pub fn constant(c: f64) -> Self {
        Jet3 { v: c, dx: 0.0, dy: 0.0, dxx: 0.0, dxy: 0.0, dyy: 0.0, dxxx: 0.0, dxxy: 0.0, dxyy: 0.0, dyyy: 0.0 }
    }

    /// Jet of the coordinate function x ↦ x evaluated at `x0`.
    pub fn var_x(x0: f64) -> Self {
        Jet3 { v: x0, dx: 1.0, ..Self::constant(0.0) }
    }

    /// Jet of the coordinate function y ↦ y evaluated at `y0`.
    pub fn var_y(y0: f64) -> Self {
        Jet3 { v: y0, dy: 1.0, ..Self::constant(0.0) }
    }

    /// Jet of a univariate function of x alone, from its value and first
    /// three derivatives `[g, g', g'', g''']` at the evaluation point.
    pub fn univariate_x(d: [f64; 4]) -> Self {
        Jet3 { v: d[0], dx: d[1], dxx: d[2], dxxx: d[3], ..Self::constant(0.0) }
    }

    /// Jet of a univariate function of y alone (see [`Jet3::univariate_x`]).
    pub fn univariate_y(d: [f64; 4]) -> Self {
        Jet3 { v: d[0], dy: d[1], dyy: d[2], dyyy: d[3], ..Self::constant(0.0) }
    }

    /// Multiply every coefficient by the scalar `c` (i.e. the jet of `c·f`).
    pub fn scale(self, c: f64) -> Self {
        Jet3 {
            v: c * self.v,
            dx: c * self.dx,
            dy: c * self.dy,
            dxx: c * self.dxx,
            dxy: c * self.dxy,
            dyy: c * self.dyy,
            dxxx: c * self.dxxx,
            dxxy: c * self.dxxy,
            dxyy: c * self.dxyy,
            dyyy: c * self.dyyy,
        }
    }

    /// Jet of `f + c` for a scalar `c`.
    pub fn shift(self, c: f64) -> Self {
        Jet3 { v: self.v + c, ..self }
    }

    /// Chain rule through a unary function `h` given `[h, h', h'', h''']`
    /// evaluated at `self.v`.
    ///
    /// Third-order formulas (f = inner jet):
    ///
    /// ```text
    /// (h∘f)_x   = h'·f_x
    /// (h∘f)_xx  = h''·f_x² + h'·f_xx
    /// (h∘f)_xxx = h'''·f_x³ + 3h''·f_x·f_xx + h'·f_xxx
    /// (h∘f)_xxy = h'''·f_x²·f_y + h''·(2f_x·f_xy + f_y·f_xx) + h'·f_xxy
    /// ```
    pub fn compose(self, h: [f64; 4]) -> Self {
        let [h0, h1, h2, h3] = h;
        let f = self;
        Jet3 {
            v: h0,
            dx: h1 * f.dx,
            dy: h1 * f.dy,
            dxx: h2 * f.dx * f.dx + h1 * f.dxx,
            dxy: h2 * f.dx * f.dy + h1 * f.dxy,
            dyy: h2 * f.dy * f.dy + h1 * f.dyy,
            dxxx: h3 * f.dx * f.dx * f.dx + 3.0 * h2 * f.dx * f.dxx + h1 * f.dxxx,
            dxxy: h3 * f.dx * f.dx * f.dy
                + h2 * (2.0 * f.dx * f.dxy + f.dy * f.dxx)
                + h1 * f.dxxy,
            dxyy: h3 * f.dx * f.dy * f.dy
                + h2 * (2.0 * f.dy * f.dxy + f.dx * f.dyy)
                + h1 * f.dxyy,
            dyyy: h3 * f.dy * f.dy * f.dy + 3.0 * h2 * f.dy * f.dyy + h1 * f.dyyy,
        }
    }

    /// Jet of `ln(f)`. Requires `f > 0` at the evaluation point.
    pub fn ln(self) -> Self {
        let v = self.v;
        self.compose([v.ln(), 1.0 / v, -1.0 / (v * v), 2.0 / (v * v * v)])
    }

    /// Jet of `sqrt(f)`. Requires `f > 0` at the evaluation point.
    pub fn sqrt(self) -> Self {
        let v = self.v;
        let s = v.sqrt();
        self.compose([s, 0.5 / s, -0.25 / (s * v), 0.375 / (s * v * v)])
    }
}

impl Add for Jet3 {
    type Output = Jet3;
    fn add(self, o: Jet3) -> Jet3 {
        Jet3 {
            v: self.v + o.v,
            dx: self.dx + o.dx,
            dy: self.dy + o.dy,
            dxx: self.dxx + o.dxx,
            dxy: self.dxy + o.dxy,
            dyy: self.dyy + o.dyy,
            dxxx: self.dxxx + o.dxxx,
            dxxy: self.dxxy + o.dxxy,
            dxyy: self.dxyy + o.dxyy,
            dyyy: self.dyyy + o.dyyy,
        }
    }
}

impl Sub for Jet3 {
    type Output = Jet3;
    fn sub(self, o: Jet3) -> Jet3 {
        self + o.scale(-1.0)
    }
}

impl Mul for Jet3 {
    type Output = Jet3;
    /// Leibniz rule through third order, e.g.
    /// `(fg)_xxy = f_xxy·g + f_xx·g_y + 2f_xy·g_x + 2f_x·g_xy + f_y·g_xx + f·g_xxy`.
    fn mul(self, o: Jet3) -> Jet3 {
        let (f, g) = (self, o);
        Jet3 {
            v: f.v * g.v,
            dx: f.dx * g.v + f.v * g.dx,
            dy: f.dy * g.v + f.v * g.dy,
            dxx: f.dxx * g.v + 2.0 * f.dx * g.dx + f.v * g.dxx,
            dxy: f.dxy * g.v + f.dx * g.dy + f.dy * g.dx + f.v * g.dxy,
            dyy: f.dyy * g.v + 2.0 * f.dy * g.dy + f.v * g.dyy,
            dxxx: f.dxxx * g.v + 3.0 * f.dxx * g.dx + 3.0 * f.dx * g.dxx + f.v * g.dxxx,
            dxxy: f.dxxy * g.v
                + f.dxx * g.dy
                + 2.0 * f.dxy * g.dx
                + 2.0 * f.dx * g.dxy
                + f.dy * g.dxx
                + f.v * g.dxxy,
            dxyy: f.dxyy * g.v
                + f.dyy * g.dx
                + 2.0 * f.dxy * g.dy
                + 2.0 * f.dy * g.dxy
                + f.dx * g.dyy
                + f.v * g.dxyy,
            dyyy: f.dyyy * g.v + 3.0 * f.dyy * g.dy + 3.0 * f.dy * g.dyy + f.v * g.dyyy,
        }
    }
}
