//! CSV writers.
//!
//! Schemas:
//!
//! * density: `n,k,count,prob_num,prob_den,prob_float`
//! * joint: `n,k,l,count`
//! * gauss: `x,scaled_density,normal_pdf`
//! * figure: `k,p_float,normal_overlay`
//! * seq: `n,term`

use std::io::Write;

use num_bigint::BigUint;
use num_rational::BigRational;
use zeck_core::convert::ratio_to_f64;
use zeck_core::gaussian::FigureProfile;
use zeck_core::{DensityTable, GaussFit, JointTable};

use crate::render::fmt_sig;

pub type CsvResult = Result<(), csv::Error>;

/// Density rows `(k, count)` over a common normalizer.
pub fn write_density_rows<'a, W: Write>(
    out: W,
    n: usize,
    rows: impl IntoIterator<Item = (u64, &'a BigUint)>,
    normalizer: &BigUint,
    digits: usize,
) -> CsvResult {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["n", "k", "count", "prob_num", "prob_den", "prob_float"])?;
    for (k, count) in rows {
        let p = BigRational::new(count.clone().into(), normalizer.clone().into());
        w.write_record([
            n.to_string(),
            k.to_string(),
            count.to_string(),
            p.numer().to_string(),
            p.denom().to_string(),
            fmt_sig(ratio_to_f64(count, normalizer), digits),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_density<W: Write>(out: W, table: &DensityTable, digits: usize) -> CsvResult {
    write_density_rows(
        out,
        table.n,
        table.counts.iter().enumerate().map(|(k, c)| (k as u64, c)),
        &table.normalizer,
        digits,
    )
}

pub fn write_joint_rows<'a, W: Write>(
    out: W,
    n: usize,
    rows: impl IntoIterator<Item = (usize, usize, &'a BigUint)>,
) -> CsvResult {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["n", "k", "l", "count"])?;
    for (k, l, c) in rows {
        w.write_record([n.to_string(), k.to_string(), l.to_string(), c.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_joint<W: Write>(out: W, table: &JointTable) -> CsvResult {
    write_joint_rows(
        out,
        table.n,
        table.counts.iter().map(|(&(k, l), c)| (k, l, c)),
    )
}

pub fn write_gauss<W: Write>(out: W, fit: &GaussFit, digits: usize) -> CsvResult {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["x", "scaled_density", "normal_pdf"])?;
    for row in &fit.rows {
        w.write_record([
            fmt_sig(row.x, digits),
            fmt_sig(row.scaled_density, digits),
            fmt_sig(row.normal_pdf, digits),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_figure<W: Write>(out: W, fig: &FigureProfile, digits: usize) -> CsvResult {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["k", "p_float", "normal_overlay"])?;
    for row in &fig.rows {
        w.write_record([
            row.k.to_string(),
            fmt_sig(row.probability, digits),
            fmt_sig(row.overlay, digits),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_seq<W: Write>(out: W, terms: &[BigUint]) -> CsvResult {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["n", "term"])?;
    for (i, t) in terms.iter().enumerate() {
        w.write_record([(i + 1).to_string(), t.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use zeck_core::zeck_density;

    #[test]
    fn density_csv_n12() {
        let mut buf = Vec::new();
        write_density(&mut buf, &zeck_density(12), 6).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "n,k,count,prob_num,prob_den,prob_float");
        assert_eq!(lines[1], "12,0,1,1,144,0.00694444");
        assert_eq!(lines[4], "12,3,56,7,18,0.388889");
        assert_eq!(lines.len(), 7);
    }

    #[test]
    fn seq_csv() {
        let terms: Vec<BigUint> = [1u32, 2, 3].iter().map(|&v| v.into()).collect();
        let mut buf = Vec::new();
        write_seq(&mut buf, &terms).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "n,term\n1,1\n2,2\n3,3\n");
    }
}
