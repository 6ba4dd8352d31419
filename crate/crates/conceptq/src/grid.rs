//! Grid rendering across threads and grid file formats.

use std::fmt::Write as _;
use std::path::Path;

use conceptq_core::landscape::{GridGeometry, GridKind, InterferenceGrid, Landscape};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::formats::{format_sig, write_file};

/// Default significant digits of grid CSV values.
pub const GRID_DIGITS: usize = 9;

/// Renders one grid with rows spread over the rayon pool. The result is
/// identical to [`Landscape::render`].
pub fn render_parallel(
    landscape: &Landscape,
    kind: GridKind,
    geometry: GridGeometry,
) -> Result<InterferenceGrid> {
    let values: Vec<f64> = (0..geometry.resolution.ny)
        .into_par_iter()
        .flat_map_iter(|j| landscape.render_rows(kind, &geometry, j..j + 1))
        .collect();
    Ok(InterferenceGrid::from_values(geometry, kind, values)?)
}

/// `x,y,value` rows in row-major order (top row first) with a header line.
pub fn grid_csv(grid: &InterferenceGrid, digits: usize) -> String {
    let g = &grid.geometry;
    let (nx, ny) = (g.resolution.nx, g.resolution.ny);
    let mut out = String::with_capacity(nx * ny * 40);
    out.push_str("x,y,value\n");
    for j in 0..ny {
        let y = format_sig(g.y_at(j), digits);
        for i in 0..nx {
            let _ = writeln!(
                out,
                "{},{},{}",
                format_sig(g.x_at(i), digits),
                y,
                format_sig(grid.value(i, j), digits)
            );
        }
    }
    out
}

/// Binary 8-bit P5 image, top row at `ymax`. Values map linearly from
/// `[min, max]` to `[0, 255]`; a constant grid is all zeros.
pub fn grid_pgm(grid: &InterferenceGrid) -> Vec<u8> {
    let r = grid.geometry.resolution;
    let (min, max) = (grid.min(), grid.max());
    let mut out = format!("P5\n{} {}\n255\n", r.nx, r.ny).into_bytes();
    out.extend(grid.values().iter().map(|&v| {
        if max > min {
            (255.0 * (v - min) / (max - min)).round().clamp(0.0, 255.0) as u8
        } else {
            0
        }
    }));
    out
}

pub fn export_csv(grid: &InterferenceGrid, path: &Path, digits: usize) -> Result<()> {
    write_file(path, grid_csv(grid, digits))
}

pub fn export_pgm(grid: &InterferenceGrid, path: &Path) -> Result<()> {
    write_file(path, grid_pgm(grid))
}

/// `(x, y, value)` triples from a grid CSV file.
pub fn read_grid_csv(path: &Path) -> Result<Vec<(f64, f64, f64)>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, "x,y,value")) => {}
        _ => return Err(Error::format(path, "missing `x,y,value` header")),
    }
    lines
        .map(|(i, line)| {
            let bad = || Error::Row {
                path: path.into(),
                row: i as u64 + 1,
                message: format!("malformed grid row {line:?}"),
            };
            let mut it = line.split(',').map(|f| f.parse::<f64>());
            match (it.next(), it.next(), it.next(), it.next()) {
                (Some(Ok(x)), Some(Ok(y)), Some(Ok(v)), None) => Ok((x, y, v)),
                _ => Err(bad()),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formats::round_sig;
    use conceptq_core::landscape::{Extent, Resolution};

    fn tiny(values: Vec<f64>) -> InterferenceGrid {
        let geometry = GridGeometry {
            extent: Extent::new(0.0, 1.0, 0.0, 1.0).unwrap(),
            resolution: Resolution::new(2, 2).unwrap(),
        };
        InterferenceGrid::from_values(geometry, GridKind::Quantum, values).unwrap()
    }

    #[test]
    fn pgm_mapping() {
        let pgm = grid_pgm(&tiny(vec![0.0, 1.0, 0.5, 0.25]));
        assert_eq!(&pgm[..11], b"P5\n2 2\n255\n");
        assert_eq!(&pgm[11..], &[0, 255, 128, 64]);
    }

    #[test]
    fn constant_grid_is_black() {
        let pgm = grid_pgm(&tiny(vec![0.3; 4]));
        assert_eq!(&pgm[11..], &[0, 0, 0, 0]);
    }

    #[test]
    fn csv_round_trip_at_nine_digits() {
        let values = vec![0.123456789123, -3.3e-20, 1.0 / 3.0, 7.0];
        let grid = tiny(values.clone());
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("g.csv");
        export_csv(&grid, &path, GRID_DIGITS).unwrap();
        let rows = read_grid_csv(&path).unwrap();
        assert_eq!(rows.len(), 4);
        assert_eq!((rows[0].0, rows[0].1), (0.0, 1.0));
        assert_eq!((rows[3].0, rows[3].1), (1.0, 0.0));
        for (row, v) in rows.iter().zip(values) {
            assert_eq!(row.2, round_sig(v, GRID_DIGITS));
        }
    }

    #[test]
    fn reader_rejects_garbage() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("g.csv");
        std::fs::write(&path, "x,y,value\n1,2\n").unwrap();
        assert!(matches!(
            read_grid_csv(&path),
            Err(Error::Row { row: 2, .. })
        ));
        std::fs::write(&path, "1,2,3\n").unwrap();
        assert!(read_grid_csv(&path).is_err());
    }
}
