//! Central differences with two levels of Richardson extrapolation.

fn richardson(d: impl Fn(f64) -> f64, h: f64) -> f64 {
    let (d1, d2, d3) = (d(h), d(0.5 * h), d(0.25 * h));
    let r1 = (4.0 * d2 - d1) / 3.0;
    let r2 = (4.0 * d3 - d2) / 3.0;
    (16.0 * r2 - r1) / 15.0
}

/// First (`order` = 1) or second (`order` = 2) derivative of f at z.
pub fn fd_derivative(f: &dyn Fn(f64) -> f64, z: f64, order: u8, h: f64) -> f64 {
    match order {
        1 => richardson(|s| (f(z + s) - f(z - s)) / (2.0 * s), h),
        2 => {
            let f0 = f(z);
            richardson(|s| (f(z + s) - 2.0 * f0 + f(z - s)) / (s * s), h)
        }
        _ => panic!("fd_derivative supports order 1 or 2, got {order}"),
    }
}

/// f g' − f' g at z with finite-difference derivatives.
pub fn wronskian(f: &dyn Fn(f64) -> f64, g: &dyn Fn(f64) -> f64, z: f64, h: f64) -> f64 {
    f(z) * fd_derivative(g, z, 1, h) - fd_derivative(f, z, 1, h) * g(z)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_derivatives() {
        let sq = |z: f64| z * z;
        assert!((fd_derivative(&sq, 3.0, 1, 0.1) - 6.0).abs() < 1e-12);
        assert!((fd_derivative(&sq, 3.0, 2, 0.1) - 2.0).abs() < 1e-9);
        assert!((fd_derivative(&f64::sin, 1.0, 1, 0.1) - 1f64.cos()).abs() < 1e-11);
    }

    #[test]
    fn wronskian_examples() {
        let one = |_: f64| 1.0;
        let id = |z: f64| z;
        assert!((wronskian(&one, &id, 5.0, 0.1) - 1.0).abs() < 1e-13);
        assert_eq!(wronskian(&f64::exp, &f64::exp, 0.3, 0.1), 0.0);
        // sin and cos: W = −1
        assert!((wronskian(&f64::sin, &f64::cos, 0.7, 0.05) + 1.0).abs() < 1e-11);
    }
}
