use serde::{Deserialize, Serialize};

/// Homogeneous dimension of H¹: 1·2 + 2·1.
pub const Q: usize = 4;

/// Constant in the Korányi norm ((x²+y²)² + c·t²)^{1/4}.
pub const KORANYI_CONSTANT: f64 = 16.0;

/// A point of H¹ in polarized coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HeisenbergPoint {
    pub x: f64,
    pub y: f64,
    pub t: f64,
}

impl HeisenbergPoint {
    pub const IDENTITY: HeisenbergPoint = HeisenbergPoint { x: 0.0, y: 0.0, t: 0.0 };

    pub fn new(x: f64, y: f64, t: f64) -> Self {
        HeisenbergPoint { x, y, t }
    }

    /// (x,y,t)·(x′,y′,t′) = (x+x′, y+y′, t+t′+(xy′−yx′)/2)
    pub fn mul(&self, q: &HeisenbergPoint) -> HeisenbergPoint {
        HeisenbergPoint {
            x: self.x + q.x,
            y: self.y + q.y,
            t: self.t + q.t + 0.5 * (self.x * q.y - self.y * q.x),
        }
    }

    pub fn inverse(&self) -> HeisenbergPoint {
        HeisenbergPoint {
            x: -self.x,
            y: -self.y,
            t: -self.t,
        }
    }

    /// δ_r(x,y,t) = (rx, ry, r²t)
    pub fn dilate(&self, r: f64) -> HeisenbergPoint {
        HeisenbergPoint {
            x: r * self.x,
            y: r * self.y,
            t: r * r * self.t,
        }
    }

    pub fn norm(&self) -> f64 {
        let r2 = self.x * self.x + self.y * self.y;
        (r2 * r2 + KORANYI_CONSTANT * self.t * self.t).sqrt().sqrt()
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.x, self.y, self.t]
    }
}

impl std::ops::Mul for HeisenbergPoint {
    type Output = HeisenbergPoint;
    fn mul(self, q: HeisenbergPoint) -> HeisenbergPoint {
        HeisenbergPoint::mul(&self, &q)
    }
}
