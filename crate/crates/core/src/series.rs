//! Truncated power series `sum c_i t^i`, `i < prec`, over a finite field.

use crate::gf::{Elem, Gf};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    pub coeffs: Vec<Elem>,
}

impl Series {
    pub fn zero(prec: usize) -> Series {
        Series {
            coeffs: vec![Elem::ZERO; prec],
        }
    }

    pub fn constant(c: Elem, prec: usize) -> Series {
        let mut s = Series::zero(prec);
        if prec > 0 {
            s.coeffs[0] = c;
        }
        s
    }

    /// `c + t`.
    pub fn shifted_variable(c: Elem, prec: usize) -> Series {
        let mut s = Series::constant(c, prec);
        if prec > 1 {
            s.coeffs[1] = Elem::ONE;
        }
        s
    }

    pub fn prec(&self) -> usize {
        self.coeffs.len()
    }

    /// Index of the first nonzero coefficient, if any within precision.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn truncate(&self, prec: usize) -> Series {
        let mut c = self.coeffs.clone();
        c.resize(prec, Elem::ZERO);
        Series { coeffs: c }
    }

    pub fn add(&self, f: &Gf, o: &Series) -> Series {
        let p = self.prec().min(o.prec());
        Series {
            coeffs: (0..p).map(|i| f.add(self.coeffs[i], o.coeffs[i])).collect(),
        }
    }

    pub fn sub(&self, f: &Gf, o: &Series) -> Series {
        let p = self.prec().min(o.prec());
        Series {
            coeffs: (0..p).map(|i| f.sub(self.coeffs[i], o.coeffs[i])).collect(),
        }
    }

    pub fn scale(&self, f: &Gf, c: Elem) -> Series {
        Series {
            coeffs: self.coeffs.iter().map(|&x| f.mul(x, c)).collect(),
        }
    }

    pub fn mul(&self, f: &Gf, o: &Series) -> Series {
        let p = self.prec().min(o.prec());
        let mut out = vec![Elem::ZERO; p];
        for (i, &a) in self.coeffs.iter().take(p).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in o.coeffs.iter().take(p - i).enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Series { coeffs: out }
    }

    pub fn pow(&self, f: &Gf, e: usize) -> Series {
        let mut r = Series::constant(Elem::ONE, self.prec());
        for _ in 0..e {
            r = r.mul(f, self);
        }
        r
    }

    /// Inverse of a unit series. `None` when the constant term vanishes.
    pub fn inv(&self, f: &Gf) -> Option<Series> {
        let p = self.prec();
        let c0 = *self.coeffs.first()?;
        let i0 = f.inv(c0).ok()?;
        let mut out = vec![Elem::ZERO; p];
        out[0] = i0;
        for n in 1..p {
            let mut acc = Elem::ZERO;
            for k in 1..=n {
                acc = f.add(acc, f.mul(self.coeffs[k], out[n - k]));
            }
            out[n] = f.neg(f.mul(acc, i0));
        }
        Some(Series { coeffs: out })
    }

    /// Drop the first `k` coefficients (division by `t^k`).
    pub fn shift_down(&self, k: usize) -> Series {
        Series {
            coeffs: self.coeffs.iter().skip(k).copied().collect(),
        }
    }

    /// Multiply by `t^k`, keeping the precision.
    pub fn shift_up(&self, k: usize) -> Series {
        let p = self.prec();
        let mut c = vec![Elem::ZERO; k.min(p)];
        c.extend(self.coeffs.iter().take(p.saturating_sub(k)));
        Series { coeffs: c }
    }
}

/// `poly(s)` for a polynomial given low coefficient first.
pub fn eval_poly(f: &Gf, poly: &[Elem], s: &Series) -> Series {
    let p = s.prec();
    poly.iter().rev().fold(Series::zero(p), |acc, &c| {
        acc.mul(f, s).add(f, &Series::constant(c, p))
    })
}
