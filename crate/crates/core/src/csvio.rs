//! CSV emission with stable schemas.
//!
//! All numeric fields are rendered with 17 significant digits
//! (`{:.16e}`), which round-trips every finite `f64` exactly; NaN and
//! the infinities render as `nan`, `inf`, `-inf`. Headers are fixed —
//! downstream tooling may key on them byte-for-byte. Line endings are
//! `\n`; no field ever needs quoting.

use std::io::{self, Write};

use crate::chaos01::KcRecord;
use crate::cournot::{DuopolyParams, Firm};
use crate::frac::Trajectory;
use crate::sweep::SweepRow;

/// Round-trip-exact rendering of one field.
pub fn fmt_f64(v: f64) -> String {
    if v.is_nan() {
        "nan".to_string()
    } else if v.is_infinite() {
        if v > 0.0 { "inf" } else { "-inf" }.to_string()
    } else {
        format!("{v:.16e}")
    }
}

/// `n,q1,q2,price,profit1,profit2` — one row per stored state, starting
/// at n = 0. Price and profits are evaluated from the model at each row.
pub fn write_trajectory(
    w: &mut dyn Write,
    traj: &Trajectory,
    params: &DuopolyParams,
) -> io::Result<()> {
    writeln!(w, "n,q1,q2,price,profit1,profit2")?;
    for (n, state) in traj.states().enumerate() {
        let (q1, q2) = (state[0], state[1]);
        writeln!(
            w,
            "{n},{},{},{},{},{}",
            fmt_f64(q1),
            fmt_f64(q2),
            fmt_f64(params.price(q1, q2)),
            fmt_f64(params.profit(q1, q2, Firm::One)),
            fmt_f64(params.profit(q1, q2, Firm::Two)),
        )?;
    }
    Ok(())
}

/// `point,q1,q2,residual` — the four equilibria with the sup-norm of the
/// adjustment map's right-hand side at each (zero for exact fixed
/// points, up to rounding).
pub fn write_equilibria(w: &mut dyn Write, params: &DuopolyParams) -> io::Result<()> {
    writeln!(w, "point,q1,q2,residual")?;
    for (label, pt) in params.equilibria().points() {
        let f = params.rhs(pt);
        let residual = f[0].abs().max(f[1].abs());
        writeln!(
            w,
            "{label},{},{},{}",
            fmt_f64(pt[0]),
            fmt_f64(pt[1]),
            fmt_f64(residual)
        )?;
    }
    Ok(())
}

/// `c,Kc` — per-frequency 0-1 statistics in draw order.
pub fn write_kc(w: &mut dyn Write, records: &[KcRecord]) -> io::Result<()> {
    writeln!(w, "c,Kc")?;
    for r in records {
        writeln!(w, "{},{}", fmt_f64(r.c), fmt_f64(r.k))?;
    }
    Ok(())
}

/// `n,p,s` — the translation walk at the sample frequency, n starting
/// at 1 (the walk's natural index). `p` and `s` must be equally long.
pub fn write_translation(w: &mut dyn Write, p: &[f64], s: &[f64]) -> io::Result<()> {
    writeln!(w, "n,p,s")?;
    for (n, (pv, sv)) in p.iter().zip(s).enumerate() {
        writeln!(w, "{},{},{}", n + 1, fmt_f64(*pv), fmt_f64(*sv))?;
    }
    Ok(())
}

/// `nu,q1` — long-format bifurcation samples: one line per kept
/// post-transient value, rows in sweep order.
pub fn write_bifurcation(w: &mut dyn Write, rows: &[SweepRow]) -> io::Result<()> {
    writeln!(w, "nu,q1")?;
    for row in rows {
        for &q1 in &row.bif_values {
            writeln!(w, "{},{}", fmt_f64(row.nu), fmt_f64(q1))?;
        }
    }
    Ok(())
}

/// `nu,K,diverged` — one line per sweep row; K is `nan` for diverged
/// rows and the flag is rendered 0/1 so every field stays numeric.
pub fn write_sweep_k(w: &mut dyn Write, rows: &[SweepRow]) -> io::Result<()> {
    writeln!(w, "nu,K,diverged")?;
    for row in rows {
        writeln!(
            w,
            "{},{},{}",
            fmt_f64(row.nu),
            fmt_f64(row.k.unwrap_or(f64::NAN)),
            u8::from(row.diverged)
        )?;
    }
    Ok(())
}
