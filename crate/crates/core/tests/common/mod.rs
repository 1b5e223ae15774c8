#![allow(dead_code)]

use std::f64::consts::TAU;

use proptest::prelude::*;
use vacphase::geometry::{FiberPath, TangentTrace, TraceOptions, Vec3};

/// Smooth closed curve on the sphere given by a few Fourier modes of (θ, φ).
#[derive(Debug, Clone, Copy)]
pub struct SmoothLoop {
    pub theta0: f64,
    pub theta_modes: [(f64, f64); 2],
    pub phi_modes: [(f64, f64); 2],
    pub winding: i32,
}

impl SmoothLoop {
    pub fn direction(&self, t: f64) -> Vec3 {
        let [(a1, p1), (a2, p2)] = self.theta_modes;
        let [(b1, q1), (b2, q2)] = self.phi_modes;
        let theta = self.theta0 + a1 * (t + p1).sin() + a2 * (2.0 * t + p2).sin();
        let phi = self.winding as f64 * t + b1 * (2.0 * t + q1).sin() + b2 * (3.0 * t + q2).cos();
        Vec3::new(
            theta.sin() * phi.cos(),
            theta.sin() * phi.sin(),
            theta.cos(),
        )
    }

    /// `samples` distinct directions plus the repeated first one.
    pub fn trace(&self, samples: usize) -> TangentTrace {
        let dirs = (0..=samples)
            .map(|j| self.direction(TAU * (j % samples) as f64 / samples as f64))
            .collect();
        TangentTrace::from_directions(dirs, TraceOptions::default()).unwrap()
    }
}

pub fn smooth_loop() -> impl Strategy<Value = SmoothLoop> {
    let mode = |amp: f64| (-amp..amp, 0.0..TAU);
    (
        0.6f64..2.5,
        [mode(0.2), mode(0.15)],
        [mode(0.4), mode(0.2)],
        prop_oneof![Just(1), Just(-1), Just(2)],
    )
        .prop_map(|(theta0, theta_modes, phi_modes, winding)| SmoothLoop {
            theta0,
            theta_modes,
            phi_modes,
            winding,
        })
}

/// Closed trigonometric space curve; its tangent is periodic.
pub fn trig_path(coeffs: &[[f64; 3]; 4], samples: usize) -> Option<FiberPath> {
    let points = (0..=samples)
        .map(|j| {
            let t = TAU * (j % samples) as f64 / samples as f64;
            let [c1, s1, c2, s2] = coeffs;
            Vec3::from(*c1) * t.cos()
                + Vec3::from(*s1) * t.sin()
                + Vec3::from(*c2) * (2.0 * t).cos()
                + Vec3::from(*s2) * (2.0 * t).sin()
        })
        .collect();
    FiberPath::new(points, true).ok()
}
