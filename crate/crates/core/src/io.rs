//! Binary field snapshots in the "BBF1" format.
//!
//! Layout: magic `BBF1`, u32 version (=1), u32 n, f64 L, u8 domain
//! (0 position, 1 spectral), then `6*n^3` little-endian f64 samples
//! (re/im interleaved, component-major, x fastest).

use crate::error::{Error, Result};
use crate::field::{ComplexField3, Domain};
use crate::grid::Grid;
use byteorder::{LittleEndian, ReadBytesExt, WriteBytesExt};
use num_complex::Complex64;
use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

const MAGIC: &[u8; 4] = b"BBF1";
const VERSION: u32 = 1;

pub fn write_field(path: &Path, field: &ComplexField3) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    w.write_all(MAGIC)?;
    w.write_u32::<LittleEndian>(VERSION)?;
    w.write_u32::<LittleEndian>(field.grid().n() as u32)?;
    w.write_f64::<LittleEndian>(field.grid().length())?;
    w.write_u8(match field.domain() {
        Domain::Position => 0,
        Domain::Spectral => 1,
    })?;
    for c in 0..3 {
        for v in field.component(c) {
            w.write_f64::<LittleEndian>(v.re)?;
            w.write_f64::<LittleEndian>(v.im)?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn read_field(path: &Path) -> Result<ComplexField3> {
    let mut r = BufReader::new(File::open(path)?);
    let mut magic = [0u8; 4];
    r.read_exact(&mut magic).map_err(|_| Error::BadMagic)?;
    if &magic != MAGIC {
        return Err(Error::BadMagic);
    }
    let version = r.read_u32::<LittleEndian>()?;
    if version != VERSION {
        return Err(Error::BadVersion(version));
    }
    let n = r.read_u32::<LittleEndian>()? as usize;
    let length = r.read_f64::<LittleEndian>()?;
    let domain = match r.read_u8()? {
        0 => Domain::Position,
        1 => Domain::Spectral,
        d => {
            return Err(Error::InvalidParameter(format!(
                "unknown domain tag {d}"
            )))
        }
    };
    let grid = Grid::new(n, length)?;
    let mut field = ComplexField3::zeros(grid, domain);
    let sites = grid.sites();
    let expected = 6 * sites as u64 * 8;
    let mut count = 0u64;
    for c in 0..3 {
        for s in 0..sites {
            let re = r.read_f64::<LittleEndian>().map_err(|_| Error::Truncated {
                expected,
                found: count * 8,
            })?;
            count += 1;
            let im = r.read_f64::<LittleEndian>().map_err(|_| Error::Truncated {
                expected,
                found: count * 8,
            })?;
            count += 1;
            field.set(c, s, Complex64::new(re, im));
        }
    }
    Ok(field)
}
