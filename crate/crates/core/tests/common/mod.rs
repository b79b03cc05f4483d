#![allow(dead_code)]

use dynsym::random::{random_density, random_state, seeded};
use dynsym::{DensityOperator, StateVector};
use proptest::prelude::*;

pub fn pure(dims: &'static [usize]) -> impl Strategy<Value = StateVector> {
    any::<u64>().prop_map(move |s| random_state(dims, &mut seeded(s)))
}

pub fn mixed(dims: &'static [usize]) -> impl Strategy<Value = DensityOperator> {
    any::<u64>().prop_map(move |s| random_density(dims, &mut seeded(s)))
}

pub fn unit_vector() -> impl Strategy<Value = [f64; 3]> {
    (0.0..std::f64::consts::PI, 0.0..std::f64::consts::TAU)
        .prop_map(|(t, p)| [t.sin() * p.cos(), t.sin() * p.sin(), t.cos()])
}

/// Proper rotation from ZYZ Euler angles.
pub fn rotation() -> impl Strategy<Value = [[f64; 3]; 3]> {
    (0.0..std::f64::consts::TAU, 0.0..std::f64::consts::PI, 0.0..std::f64::consts::TAU).prop_map(
        |(a, b, c)| {
            let rz = |t: f64| [[t.cos(), -t.sin(), 0.0], [t.sin(), t.cos(), 0.0], [0.0, 0.0, 1.0]];
            let ry = |t: f64| [[t.cos(), 0.0, t.sin()], [0.0, 1.0, 0.0], [-t.sin(), 0.0, t.cos()]];
            mul(&mul(&rz(a), &ry(b)), &rz(c))
        },
    )
}

pub fn mul(a: &[[f64; 3]; 3], b: &[[f64; 3]; 3]) -> [[f64; 3]; 3] {
    let mut out = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}
