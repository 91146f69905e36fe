//! On-disk μ table: `b"QSMU"`, a version byte, little-endian `u64` n_max,
//! then `n_max + 1` little-endian `u64` values.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::mu::{MuTable, TABLE_LIMIT};

pub const MAGIC: &[u8; 4] = b"QSMU";
pub const VERSION: u8 = 1;

/// Environment variable naming the cache file used by the command-line tool.
pub const MEMO_PATH_VAR: &str = "QUADSG_MEMO_PATH";

pub fn write_table<W: Write>(table: &MuTable, mut out: W) -> Result<()> {
    out.write_all(MAGIC)?;
    out.write_all(&[VERSION])?;
    out.write_all(&table.n_max().to_le_bytes())?;
    for v in table.values() {
        out.write_all(&v.to_le_bytes())?;
    }
    out.flush()?;
    Ok(())
}

pub fn read_table<R: Read>(mut input: R) -> Result<MuTable> {
    let mut magic = [0u8; 4];
    input.read_exact(&mut magic)?;
    if &magic != MAGIC {
        return Err(Error::CacheFormat(format!("bad magic {magic:?}")));
    }
    let mut version = [0u8; 1];
    input.read_exact(&mut version)?;
    if version[0] != VERSION {
        return Err(Error::CacheFormat(format!(
            "unsupported version {}",
            version[0]
        )));
    }
    let mut word = [0u8; 8];
    input.read_exact(&mut word)?;
    let n_max = u64::from_le_bytes(word);
    if n_max > TABLE_LIMIT {
        return Err(Error::CacheFormat(format!(
            "n_max {n_max} exceeds {TABLE_LIMIT}"
        )));
    }
    let mut values = Vec::with_capacity(n_max as usize + 1);
    for _ in 0..=n_max {
        input.read_exact(&mut word)?;
        values.push(u64::from_le_bytes(word));
    }
    if input.read(&mut word)? != 0 {
        return Err(Error::CacheFormat("trailing bytes after values".into()));
    }
    MuTable::from_values(values)
}

/// Loads the cache at `path` when it exists, extends it to `n_max`, and writes
/// it back if it grew or was missing. A malformed file is an error, not a
/// silent rebuild.
pub fn load_or_build(path: &Path, n_max: u64) -> Result<MuTable> {
    let mut table = if path.exists() {
        read_table(BufReader::new(File::open(path)?))?
    } else {
        MuTable::build(0)?
    };
    let before = if path.exists() {
        Some(table.n_max())
    } else {
        None
    };
    table.extend_to(n_max)?;
    if before != Some(table.n_max()) {
        write_table(&table, BufWriter::new(File::create(path)?))?;
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn byte_layout() {
        let t = MuTable::build(2).unwrap();
        let mut buf = Vec::new();
        write_table(&t, &mut buf).unwrap();
        let mut expected = b"QSMU\x01".to_vec();
        expected.extend(2u64.to_le_bytes());
        for v in [0u64, 2, 4] {
            expected.extend(v.to_le_bytes());
        }
        assert_eq!(buf, expected);
        assert_eq!(read_table(buf.as_slice()).unwrap(), t);
    }

    #[test]
    fn rejects_corruption() {
        let t = MuTable::build(5).unwrap();
        let mut buf = Vec::new();
        write_table(&t, &mut buf).unwrap();

        let mut bad_magic = buf.clone();
        bad_magic[0] = b'X';
        assert!(matches!(
            read_table(bad_magic.as_slice()),
            Err(Error::CacheFormat(_))
        ));

        let mut bad_version = buf.clone();
        bad_version[4] = 9;
        assert!(matches!(
            read_table(bad_version.as_slice()),
            Err(Error::CacheFormat(_))
        ));

        assert!(matches!(
            read_table(&buf[..buf.len() - 3]),
            Err(Error::Io(_))
        ));

        let mut trailing = buf.clone();
        trailing.push(0);
        assert!(read_table(trailing.as_slice()).is_err());
    }

    #[test]
    fn load_or_build_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("mu.bin");
        let first = load_or_build(&path, 50).unwrap();
        assert_eq!(first.n_max(), 50);
        let again = load_or_build(&path, 20).unwrap();
        assert_eq!(again.n_max(), 50);
        let grown = load_or_build(&path, 80).unwrap();
        assert_eq!(grown, MuTable::build(80).unwrap());
    }
}
