//! Points on the unit sphere and the small amount of 3-vector algebra
//! the rest of the crate needs.

use std::fmt;
use std::ops::Neg;

use crate::error::{GeomError, Result};

pub type Vec3 = [f64; 3];

#[inline]
pub fn dot(a: Vec3, b: Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

#[inline]
pub fn cross(a: Vec3, b: Vec3) -> Vec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

#[inline]
pub fn norm(a: Vec3) -> f64 {
    // hypot-style scaling is unnecessary: inputs are O(1)
    dot(a, a).sqrt()
}

#[inline]
pub fn add(a: Vec3, b: Vec3) -> Vec3 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

#[inline]
pub fn sub(a: Vec3, b: Vec3) -> Vec3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

#[inline]
pub fn scale(a: Vec3, s: f64) -> Vec3 {
    [a[0] * s, a[1] * s, a[2] * s]
}

/// A point on the unit sphere.
///
/// The norm is renormalized on every construction, so `|v| = 1` holds to
/// within a few ulps.
#[derive(Clone, Copy, PartialEq)]
pub struct UnitVec3 {
    x: f64,
    y: f64,
    z: f64,
}

impl UnitVec3 {
    pub const X: UnitVec3 = UnitVec3 { x: 1.0, y: 0.0, z: 0.0 };
    pub const Y: UnitVec3 = UnitVec3 { x: 0.0, y: 1.0, z: 0.0 };
    pub const Z: UnitVec3 = UnitVec3 { x: 0.0, y: 0.0, z: 1.0 };

    /// Normalizes `(x, y, z)`. Fails on zero or non-finite input.
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        Self::normalize([x, y, z])
    }

    pub fn normalize(v: Vec3) -> Result<Self> {
        let n = norm(v);
        if !n.is_finite() || n == 0.0 {
            return Err(GeomError::InvalidVector);
        }
        Ok(UnitVec3 {
            x: v[0] / n,
            y: v[1] / n,
            z: v[2] / n,
        })
    }

    /// Accepts `v` only if its norm is within `tolerance` of 1, then renormalizes.
    pub fn from_near_unit(v: Vec3, tolerance: f64) -> Result<Self> {
        let n = norm(v);
        if !n.is_finite() {
            return Err(GeomError::InvalidVector);
        }
        if (n - 1.0).abs() > tolerance {
            return Err(GeomError::NotUnit { norm: n, tolerance });
        }
        Self::normalize(v)
    }

    /// Point at colatitude `theta` (from +z) and longitude `lon` (from +x toward +y).
    pub fn from_spherical(theta: f64, lon: f64) -> Self {
        let (st, ct) = theta.sin_cos();
        let (sl, cl) = lon.sin_cos();
        // sin/cos pairs are unit up to rounding; renormalize anyway
        Self::normalize([st * cl, st * sl, ct]).expect("finite spherical coordinates")
    }

    /// `(colatitude, longitude)` with longitude in `(-pi, pi]`.
    pub fn to_spherical(self) -> (f64, f64) {
        let theta = self.x.hypot(self.y).atan2(self.z);
        let lon = self.y.atan2(self.x);
        (theta, lon)
    }

    #[inline]
    pub fn x(self) -> f64 {
        self.x
    }
    #[inline]
    pub fn y(self) -> f64 {
        self.y
    }
    #[inline]
    pub fn z(self) -> f64 {
        self.z
    }

    #[inline]
    pub fn to_array(self) -> Vec3 {
        [self.x, self.y, self.z]
    }

    #[inline]
    pub fn dot(self, other: UnitVec3) -> f64 {
        dot(self.to_array(), other.to_array())
    }

    #[inline]
    pub fn cross(self, other: UnitVec3) -> Vec3 {
        cross(self.to_array(), other.to_array())
    }

    /// Spherical distance; see [`sph_dist`].
    #[inline]
    pub fn distance(self, other: UnitVec3) -> f64 {
        sph_dist(self, other)
    }

    /// Component of `v` orthogonal to this point, i.e. its image in the tangent plane.
    pub fn tangent(self, v: Vec3) -> Vec3 {
        let p = self.to_array();
        sub(v, scale(p, dot(v, p)))
    }

    /// Any unit vector orthogonal to `self`.
    pub fn any_orthogonal(self) -> UnitVec3 {
        let p = self.to_array();
        let axis = if p[0].abs() < 0.6 {
            [1.0, 0.0, 0.0]
        } else if p[1].abs() < 0.6 {
            [0.0, 1.0, 0.0]
        } else {
            [0.0, 0.0, 1.0]
        };
        UnitVec3::normalize(cross(p, axis)).expect("axis chosen away from p")
    }

    /// Point at parameter `t` on the arc from `self` to `other` (spherical linear interpolation).
    pub fn slerp(self, other: UnitVec3, t: f64) -> UnitVec3 {
        let theta = sph_dist(self, other);
        if theta < 1e-15 {
            return self;
        }
        let s = theta.sin();
        let wa = ((1.0 - t) * theta).sin() / s;
        let wb = (t * theta).sin() / s;
        UnitVec3::normalize(add(scale(self.to_array(), wa), scale(other.to_array(), wb))).unwrap_or(self)
    }
}

impl Neg for UnitVec3 {
    type Output = UnitVec3;
    fn neg(self) -> UnitVec3 {
        UnitVec3 {
            x: -self.x,
            y: -self.y,
            z: -self.z,
        }
    }
}

impl fmt::Debug for UnitVec3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UnitVec3({}, {}, {})", self.x, self.y, self.z)
    }
}

/// Spherical distance `|ab|` in `[0, pi]`.
///
/// Uses `atan2(|a x b|, a . b)`, which keeps full relative accuracy near 0
/// and near pi where `acos` of the dot product does not.
#[inline]
pub fn sph_dist(a: UnitVec3, b: UnitVec3) -> f64 {
    norm(a.cross(b)).atan2(a.dot(b))
}

/// Angle at `vertex` between the arcs toward `a` and toward `b`, in `[0, pi]`.
pub fn angle_at(vertex: UnitVec3, a: UnitVec3, b: UnitVec3) -> f64 {
    let ta = vertex.tangent(a.to_array());
    let tb = vertex.tangent(b.to_array());
    norm(cross(ta, tb)).atan2(dot(ta, tb))
}

/// Signed turn at `vertex` from the arc toward `from` to the arc toward `to`,
/// counterclockwise about the outward normal, in `(-pi, pi]`.
pub fn signed_angle_at(vertex: UnitVec3, from: UnitVec3, to: UnitVec3) -> f64 {
    let tf = vertex.tangent(from.to_array());
    let tt = vertex.tangent(to.to_array());
    dot(cross(tf, tt), vertex.to_array()).atan2(dot(tf, tt))
}

/// Proper rotation of 3-space, stored row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rotation {
    m: [[f64; 3]; 3],
}

impl Rotation {
    pub const IDENTITY: Rotation = Rotation {
        m: [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
    };

    /// Rotation by `angle` about the unit `axis` (right-hand rule).
    pub fn about_axis(axis: UnitVec3, angle: f64) -> Rotation {
        let [x, y, z] = axis.to_array();
        let (s, c) = angle.sin_cos();
        let t = 1.0 - c;
        Rotation {
            m: [
                [t * x * x + c, t * x * y - s * z, t * x * z + s * y],
                [t * x * y + s * z, t * y * y + c, t * y * z - s * x],
                [t * x * z - s * y, t * y * z + s * x, t * z * z + c],
            ],
        }
    }

    /// The minimal rotation carrying `from` onto `to`.
    pub fn aligning(from: UnitVec3, to: UnitVec3) -> Rotation {
        let axis = from.cross(to);
        let angle = sph_dist(from, to);
        match UnitVec3::normalize(axis) {
            Ok(axis) if norm(from.cross(to)) > 1e-15 => Rotation::about_axis(axis, angle),
            _ if from.dot(to) > 0.0 => Rotation::IDENTITY,
            _ => Rotation::about_axis(from.any_orthogonal(), std::f64::consts::PI),
        }
    }

    pub fn then(self, next: Rotation) -> Rotation {
        let mut m = [[0.0; 3]; 3];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = (0..3).map(|k| next.m[i][k] * self.m[k][j]).sum();
            }
        }
        Rotation { m }
    }

    pub fn apply(&self, v: UnitVec3) -> UnitVec3 {
        let p = v.to_array();
        let r = [dot(self.m[0], p), dot(self.m[1], p), dot(self.m[2], p)];
        UnitVec3::normalize(r).expect("rotation preserves norm")
    }
}
