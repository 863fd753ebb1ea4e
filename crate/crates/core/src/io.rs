//! File formats: NUSR binary coefficient files and rational interval JSON.
//!
//! NUSR layout: magic `NUSR`, u32 version = 1 (LE), i64 degree N (LE), then
//! 2N+1 little-endian (f64 re, f64 im) pairs in index order -N..N.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;

use crate::coeffs::CoeffSeq;
use crate::error::{Error, Result};
use crate::interval::IntervalUnion;

const MAGIC: &[u8; 4] = b"NUSR";
const VERSION: u32 = 1;

pub fn write_nusr(path: &Path, c: &CoeffSeq) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    w.write_all(MAGIC)?;
    w.write_all(&VERSION.to_le_bytes())?;
    w.write_all(&(c.degree() as i64).to_le_bytes())?;
    for v in c.entries() {
        w.write_all(&v.re.to_le_bytes())?;
        w.write_all(&v.im.to_le_bytes())?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_nusr(path: &Path) -> Result<CoeffSeq> {
    let mut r = BufReader::new(File::open(path)?);
    let mut magic = [0u8; 4];
    r.read_exact(&mut magic)?;
    if &magic != MAGIC {
        return Err(Error::Format(format!(
            "{}: bad magic {:?}",
            path.display(),
            magic
        )));
    }
    let mut b4 = [0u8; 4];
    r.read_exact(&mut b4)?;
    let version = u32::from_le_bytes(b4);
    if version != VERSION {
        return Err(Error::Format(format!(
            "{}: unsupported version {version}",
            path.display()
        )));
    }
    let mut b8 = [0u8; 8];
    r.read_exact(&mut b8)?;
    let degree = i64::from_le_bytes(b8);
    if degree < 0 || degree > (1 << 40) {
        return Err(Error::Format(format!(
            "{}: implausible degree {degree}",
            path.display()
        )));
    }
    let count = 2 * degree as usize + 1;
    let mut entries = Vec::with_capacity(count);
    let mut pair = [0u8; 16];
    for _ in 0..count {
        r.read_exact(&mut pair)?;
        let re = f64::from_le_bytes(pair[0..8].try_into().unwrap());
        let im = f64::from_le_bytes(pair[8..16].try_into().unwrap());
        entries.push(Complex64::new(re, im));
    }
    // must be at EOF
    let mut extra = [0u8; 1];
    if r.read(&mut extra)? != 0 {
        return Err(Error::Format(format!(
            "{}: trailing bytes after coefficient block",
            path.display()
        )));
    }
    CoeffSeq::from_entries(entries)
}

fn rat_to_pair(x: &BigRational) -> [String; 2] {
    [x.numer().to_string(), x.denom().to_string()]
}

fn pair_to_rat(p: &[String; 2]) -> Result<BigRational> {
    let n = BigInt::from_str(&p[0]).map_err(|e| Error::Format(format!("bad numerator: {e}")))?;
    let d = BigInt::from_str(&p[1]).map_err(|e| Error::Format(format!("bad denominator: {e}")))?;
    if d == BigInt::from(0) {
        return Err(Error::Format("zero denominator".into()));
    }
    Ok(BigRational::new(n, d))
}

/// Interval-union file: JSON array of [num_string, den_string] endpoint
/// pairs, endpoints in order a_0, b_0, a_1, b_1, ...
pub fn write_interval_json(path: &Path, set: &IntervalUnion) -> Result<()> {
    let mut flat: Vec<[String; 2]> = Vec::with_capacity(set.count() * 2);
    for (a, b) in set.parts() {
        flat.push(rat_to_pair(a));
        flat.push(rat_to_pair(b));
    }
    let f = BufWriter::new(File::create(path)?);
    serde_json::to_writer(f, &flat).map_err(|e| Error::Format(e.to_string()))?;
    Ok(())
}

pub fn read_interval_json(path: &Path) -> Result<IntervalUnion> {
    let f = BufReader::new(File::open(path)?);
    let flat: Vec<[String; 2]> =
        serde_json::from_reader(f).map_err(|e| Error::Format(e.to_string()))?;
    if flat.len() % 2 != 0 {
        return Err(Error::Format("odd endpoint count".into()));
    }
    let mut raw = Vec::with_capacity(flat.len() / 2);
    for ch in flat.chunks(2) {
        raw.push((pair_to_rat(&ch[0])?, pair_to_rat(&ch[1])?));
    }
    IntervalUnion::from_intervals(raw)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::rat;

    #[test]
    fn nusr_round_trip() {
        let dir = std::env::temp_dir().join("nusr_rt_test");
        std::fs::create_dir_all(&dir).unwrap();
        let p = dir.join("c.nusr");
        let c = CoeffSeq::from_entries(vec![
            Complex64::new(0.25, -1.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(0.25, 1.0),
        ])
        .unwrap();
        write_nusr(&p, &c).unwrap();
        let back = read_nusr(&p).unwrap();
        assert_eq!(back, c);
        // header sanity
        let bytes = std::fs::read(&p).unwrap();
        assert_eq!(&bytes[0..4], b"NUSR");
        assert_eq!(bytes.len(), 4 + 4 + 8 + 3 * 16);
    }

    #[test]
    fn nusr_rejects_corruption() {
        let dir = std::env::temp_dir().join("nusr_rt_test2");
        std::fs::create_dir_all(&dir).unwrap();
        let p = dir.join("bad.nusr");
        std::fs::write(&p, b"XUSR----------------").unwrap();
        assert!(matches!(read_nusr(&p), Err(Error::Format(_))));
    }

    #[test]
    fn interval_round_trip() {
        let dir = std::env::temp_dir().join("nusr_rt_test3");
        std::fs::create_dir_all(&dir).unwrap();
        let p = dir.join("supp.json");
        let set = IntervalUnion::from_intervals(vec![
            (rat(0, 1), rat(1, 7)),
            (rat(22, 63), rat(1, 2)),
        ])
        .unwrap();
        write_interval_json(&p, &set).unwrap();
        assert_eq!(read_interval_json(&p).unwrap(), set);
    }
}
