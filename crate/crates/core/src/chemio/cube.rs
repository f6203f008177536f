//! Gaussian cube files: volumetric scalar fields on a regular grid.
//!
//! Layout written here (and accepted back):
//!
//! ```text
//! comment line 1
//! comment line 2
//! natoms  ox oy oz
//! nx  ax1 ax2 ax3
//! ny  bx1 bx2 bx3
//! nz  cx1 cx2 cx3
//! Z  Z.0  x y z        (one line per atom)
//! <data: z fastest, one row per (ix, iy), six values per line>
//! ```
//!
//! All lengths are in bohr (positive voxel counts, the common convention).

use super::Atom;
use crate::{Error, Result};

/// A scalar field sampled on a regular 3-D grid.
#[derive(Debug, Clone, PartialEq)]
pub struct CubeGrid {
    /// Grid origin (bohr).
    pub origin: [f64; 3],
    /// Step vectors per axis: `axes[a]` advances index `a` by one.
    pub axes: [[f64; 3]; 3],
    /// Number of points along each axis.
    pub shape: [usize; 3],
    /// Values with z fastest: index `(ix * ny + iy) * nz + iz`.
    pub data: Vec<f64>,
}

impl CubeGrid {
    /// Cartesian coordinates of grid node `(ix, iy, iz)`.
    pub fn point(&self, ix: usize, iy: usize, iz: usize) -> [f64; 3] {
        let mut r = self.origin;
        for d in 0..3 {
            r[d] += ix as f64 * self.axes[0][d]
                + iy as f64 * self.axes[1][d]
                + iz as f64 * self.axes[2][d];
        }
        r
    }

    /// Flat index of grid node `(ix, iy, iz)` into [`CubeGrid::data`].
    pub fn index(&self, ix: usize, iy: usize, iz: usize) -> usize {
        (ix * self.shape[1] + iy) * self.shape[2] + iz
    }

    /// Volume of one voxel (axes assumed orthogonal or not — full triple
    /// product is used).
    pub fn voxel_volume(&self) -> f64 {
        let [a, b, c] = self.axes;
        let cross = [
            b[1] * c[2] - b[2] * c[1],
            b[2] * c[0] - b[0] * c[2],
            b[0] * c[1] - b[1] * c[0],
        ];
        (a[0] * cross[0] + a[1] * cross[1] + a[2] * cross[2]).abs()
    }
}

/// `%13.5E`-style literal with a two-digit exponent (`1.23456E-02`), the
/// fixed-width convention cube readers expect.
fn fmt_cube_value(v: f64) -> String {
    let s = format!("{:.5E}", v);
    let (mant, exp) = s.split_once('E').expect("exponent format");
    let (sign, digits) = match exp.strip_prefix('-') {
        Some(d) => ('-', d),
        None => ('+', exp),
    };
    format!("{:>13}", format!("{mant}E{sign}{:0>2}", digits))
}

/// Render cube text. The two comment lines go in verbatim (newlines stripped).
pub fn write_cube_str(comment1: &str, comment2: &str, atoms: &[Atom], grid: &CubeGrid) -> String {
    let clean = |s: &str| s.replace(['\n', '\r'], " ");
    let mut out = String::new();
    out.push_str(&clean(comment1));
    out.push('\n');
    out.push_str(&clean(comment2));
    out.push('\n');
    out.push_str(&format!(
        "{:5} {:11.6} {:11.6} {:11.6}\n",
        atoms.len(),
        grid.origin[0],
        grid.origin[1],
        grid.origin[2]
    ));
    for a in 0..3 {
        out.push_str(&format!(
            "{:5} {:11.6} {:11.6} {:11.6}\n",
            grid.shape[a], grid.axes[a][0], grid.axes[a][1], grid.axes[a][2]
        ));
    }
    for atom in atoms {
        out.push_str(&format!(
            "{:5} {:11.6} {:11.6} {:11.6} {:11.6}\n",
            atom.z, atom.z as f64, atom.position[0], atom.position[1], atom.position[2]
        ));
    }
    let [nx, ny, nz] = grid.shape;
    for ix in 0..nx {
        for iy in 0..ny {
            for iz in 0..nz {
                out.push_str(&fmt_cube_value(grid.data[grid.index(ix, iy, iz)]));
                if iz % 6 == 5 || iz == nz - 1 {
                    out.push('\n');
                } else {
                    out.push(' ');
                }
            }
        }
    }
    out
}

/// Write a cube file.
pub fn write_cube(
    path: impl AsRef<std::path::Path>,
    comment1: &str,
    comment2: &str,
    atoms: &[Atom],
    grid: &CubeGrid,
) -> Result<()> {
    std::fs::write(path, write_cube_str(comment1, comment2, atoms, grid))?;
    Ok(())
}

/// Parse cube text into the grid, the atoms, and the two comment lines.
pub fn parse_cube_str(text: &str) -> Result<(CubeGrid, Vec<Atom>, String, String)> {
    let mut lines = text.lines();
    let comment1 = lines
        .next()
        .ok_or_else(|| Error::parse("cube", "empty file"))?
        .to_string();
    let comment2 = lines
        .next()
        .ok_or_else(|| Error::parse("cube", "missing second comment line"))?
        .to_string();

    let mut header_nums = |what: &str| -> Result<Vec<f64>> {
        let line = lines
            .next()
            .ok_or_else(|| Error::parse("cube", format!("missing {what} line")))?;
        line.split_whitespace()
            .map(|t| {
                t.parse::<f64>()
                    .map_err(|_| Error::parse("cube", format!("bad number `{t}` in {what} line")))
            })
            .collect()
    };

    let origin_line = header_nums("origin")?;
    if origin_line.len() != 4 {
        return Err(Error::parse("cube", "origin line must have 4 fields"));
    }
    let natoms = origin_line[0] as i64;
    if natoms <= 0 {
        return Err(Error::parse("cube", "negative atom counts (angstrom cubes) unsupported"));
    }
    let origin = [origin_line[1], origin_line[2], origin_line[3]];

    let mut shape = [0usize; 3];
    let mut axes = [[0.0; 3]; 3];
    for a in 0..3 {
        let v = header_nums("axis")?;
        if v.len() != 4 || v[0] <= 0.0 {
            return Err(Error::parse("cube", "axis line must be `n x y z` with n > 0"));
        }
        shape[a] = v[0] as usize;
        axes[a] = [v[1], v[2], v[3]];
    }

    let mut atoms = Vec::with_capacity(natoms as usize);
    for _ in 0..natoms {
        let v = header_nums("atom")?;
        if v.len() != 5 {
            return Err(Error::parse("cube", "atom line must have 5 fields"));
        }
        let z = v[0] as u32;
        atoms.push(Atom {
            symbol: super::element_symbol(z).unwrap_or("X").to_string(),
            z,
            position: [v[2], v[3], v[4]],
        });
    }

    let expected = shape[0] * shape[1] * shape[2];
    let mut data = Vec::with_capacity(expected);
    for line in lines {
        for t in line.split_whitespace() {
            let v: f64 = t
                .parse()
                .map_err(|_| Error::parse("cube", format!("bad data value `{t}`")))?;
            data.push(v);
        }
    }
    if data.len() != expected {
        return Err(Error::parse(
            "cube",
            format!("expected {expected} data values, found {}", data.len()),
        ));
    }
    Ok((CubeGrid { origin, axes, shape, data }, atoms, comment1, comment2))
}

/// Read a cube file.
pub fn read_cube(path: impl AsRef<std::path::Path>) -> Result<(CubeGrid, Vec<Atom>, String, String)> {
    parse_cube_str(&std::fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn demo_grid() -> (Vec<Atom>, CubeGrid) {
        let atoms = vec![
            Atom { symbol: "H".into(), z: 1, position: [0.0, 0.0, -0.7] },
            Atom { symbol: "H".into(), z: 1, position: [0.0, 0.0, 0.7] },
        ];
        let shape = [3usize, 2, 7];
        let n = shape.iter().product();
        let data: Vec<f64> = (0..n).map(|i| (i as f64 * 0.37).sin() * 1e-3).collect();
        let grid = CubeGrid {
            origin: [-1.0, -1.0, -2.0],
            axes: [[0.5, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 0.6]],
            shape,
            data,
        };
        (atoms, grid)
    }

    #[test]
    fn round_trip_preserves_grid_to_read_tolerance() {
        let (atoms, grid) = demo_grid();
        let text = write_cube_str("density", "generated in a test", &atoms, &grid);
        let (grid2, atoms2, c1, _) = parse_cube_str(&text).unwrap();
        assert_eq!(c1, "density");
        assert_eq!(atoms2, atoms);
        assert_eq!(grid2.shape, grid.shape);
        for d in 0..3 {
            assert!((grid2.origin[d] - grid.origin[d]).abs() < 1e-5);
        }
        for (a, b) in grid2.data.iter().zip(&grid.data) {
            // %13.5E keeps 6 significant digits; values here are ~1e-3
            assert!((a - b).abs() < 1e-5 * b.abs().max(1e-3));
        }
    }

    #[test]
    fn data_rows_break_at_six_values_and_z_rows() {
        let (atoms, grid) = demo_grid();
        let text = write_cube_str("c1", "c2", &atoms, &grid);
        let data_lines: Vec<&str> = text.lines().skip(2 + 4 + atoms.len()).collect();
        // nz = 7 -> each (ix, iy) row is a 6-value line plus a 1-value line
        assert_eq!(data_lines.len(), 3 * 2 * 2);
        assert_eq!(data_lines[0].split_whitespace().count(), 6);
        assert_eq!(data_lines[1].split_whitespace().count(), 1);
    }

    #[test]
    fn point_and_voxel_volume_follow_the_axes() {
        let (_, grid) = demo_grid();
        assert_eq!(grid.point(0, 0, 0), [-1.0, -1.0, -2.0]);
        let p = grid.point(2, 1, 3);
        for (got, want) in p.iter().zip([0.0, 0.0, -0.2]) {
            assert!((got - want).abs() < 1e-14);
        }
        assert!((grid.voxel_volume() - 0.5 * 1.0 * 0.6).abs() < 1e-15);
    }

    #[test]
    fn truncated_data_is_an_error() {
        let (atoms, grid) = demo_grid();
        let text = write_cube_str("c1", "c2", &atoms, &grid);
        let short = &text[..text.len() - 20];
        assert!(parse_cube_str(short).is_err());
    }
}
