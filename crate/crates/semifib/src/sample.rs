//! CSV samples of the model curves for plotting.

use std::io::{self, Write};

use semifib_core::adapted::sphere_point;
use semifib_core::conformal::fiber_image;
use semifib_core::projective::{fiber_projection, geodesic_family};
use semifib_core::{Sign, SpherePoint};

use crate::error::Error;

/// `n >= 2` evenly spaced points from `lo` to `hi`, both included.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Result<Vec<f64>, Error> {
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::InvalidRange { lo, hi });
    }
    if n < 2 {
        return Err(Error::InvalidCount(n));
    }
    let last = (n - 1) as f64;
    Ok((0..n).map(|i| if i == n - 1 { hi } else { lo + (hi - lo) * i as f64 / last }).collect())
}

fn io_err(e: io::Error) -> Error {
    Error::Io { path: "<output>".into(), source: e }
}

/// Rows `c,x,y` on the conformal parabolas `y = -c/2 (x - 1)^2`.
pub fn fibers_conformal(out: &mut impl Write, cs: &[f64], xs: &[f64]) -> Result<(), Error> {
    writeln!(out, "c,x,y").map_err(io_err)?;
    for &c in cs {
        for &x in xs {
            writeln!(out, "{},{},{}", c, x, fiber_image(c, x)).map_err(io_err)?;
        }
    }
    Ok(())
}

/// Rows `v,x1,x2` on the projective parabolas `x2 = -v/2 (x1 + 1)^2`.
pub fn fibers_projective(out: &mut impl Write, vs: &[f64], xs: &[f64]) -> Result<(), Error> {
    writeln!(out, "v,x1,x2").map_err(io_err)?;
    for &v in vs {
        for &x in xs {
            writeln!(out, "{},{},{}", v, x, fiber_projection(v, x)).map_err(io_err)?;
        }
    }
    Ok(())
}

/// Rows `A,B,x1,x2` on the geodesics `x2 = A(x1^2 - 1) + B x1`.
pub fn geodesics(out: &mut impl Write, a_vals: &[f64], b_vals: &[f64], xs: &[f64]) -> Result<(), Error> {
    writeln!(out, "A,B,x1,x2").map_err(io_err)?;
    for &a in a_vals {
        for &b in b_vals {
            for &x in xs {
                writeln!(out, "{},{},{},{}", a, b, x, geodesic_family(a, b, x)).map_err(io_err)?;
            }
        }
    }
    Ok(())
}

/// Rows `u,eps,phi,x0,x1,x2` on both components of the sphere, one curve
/// per `(u, eps)` with `phi` over `phis`.
pub fn sphere(out: &mut impl Write, us: &[f64], phis: &[f64]) -> Result<(), Error> {
    writeln!(out, "u,eps,phi,x0,x1,x2").map_err(io_err)?;
    for &u in us {
        for eps in [Sign::Plus, Sign::Minus] {
            for &phi in phis {
                let x = sphere_point(&SpherePoint { u, phi, eps })?;
                writeln!(out, "{},{},{},{},{},{}", u, eps.value(), phi, x.c0(), x.c1(), x.c2()).map_err(io_err)?;
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linspace_endpoints_and_errors() {
        assert_eq!(linspace(-1.0, 1.0, 3).unwrap(), vec![-1.0, 0.0, 1.0]);
        assert_eq!(*linspace(0.0, 0.3, 4).unwrap().last().unwrap(), 0.3);
        assert!(matches!(linspace(1.0, 1.0, 3), Err(Error::InvalidRange { .. })));
        assert!(matches!(linspace(2.0, 1.0, 3), Err(Error::InvalidRange { .. })));
        assert!(matches!(linspace(0.0, f64::NAN, 3), Err(Error::InvalidRange { .. })));
        assert!(matches!(linspace(0.0, 1.0, 1), Err(Error::InvalidCount(1))));
    }

    #[test]
    fn csv_rows() {
        let mut buf = Vec::new();
        fibers_conformal(&mut buf, &[2.0], &[-1.0, 1.0]).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "c,x,y\n2,-1,-4\n2,1,-0\n");

        let mut buf = Vec::new();
        fibers_projective(&mut buf, &[1.0], &[1.0]).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "v,x1,x2\n1,1,-2\n");

        let mut buf = Vec::new();
        geodesics(&mut buf, &[1.0], &[0.5], &[0.0, 2.0]).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "A,B,x1,x2\n1,0.5,0,-1\n1,0.5,2,4\n");

        let mut buf = Vec::new();
        sphere(&mut buf, &[0.0], &[0.0]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 3);
        assert!(text.lines().nth(2).unwrap().starts_with("0,-1,0,"));
    }
}
