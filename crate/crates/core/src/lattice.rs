//! Torus geometry for the triangular (3-neighbor) and hexagonal (6-neighbor)
//! lattices.
//!
//! Triangular cells are addressed by `(x, y)` with orientation given by the
//! parity of `x + y`: even cells point up, odd cells point down. Every cell
//! touches its left and right neighbors in the same row; an up triangle
//! additionally touches the cell below it (`y - 1`) and a down triangle the
//! cell above it (`y + 1`).
//!
//! Hexagonal cells use axial coordinates with the six offsets
//! `(±1, 0)`, `(0, ±1)`, `(+1, -1)`, `(-1, +1)`.

use core::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Geometry {
    Triangular,
    Hexagonal,
}

impl Geometry {
    /// Number of neighbors of every cell.
    pub const fn arity(self) -> usize {
        match self {
            Geometry::Triangular => 3,
            Geometry::Hexagonal => 6,
        }
    }

    pub const fn name(self) -> &'static str {
        match self {
            Geometry::Triangular => "tri",
            Geometry::Hexagonal => "hex",
        }
    }
}

impl fmt::Display for Geometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell {
    pub x: i64,
    pub y: i64,
}

impl Cell {
    pub const fn new(x: i64, y: i64) -> Self {
        Cell { x, y }
    }

    const fn offset(self, dx: i64, dy: i64) -> Self {
        Cell::new(self.x + dx, self.y + dy)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    Up,
    Down,
}

/// One of the three sublattices of the hexagonal lattice, `(x - y) mod 3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ColorClass(u8);

impl ColorClass {
    pub const fn value(self) -> u8 {
        self.0
    }
}

pub const HEX_OFFSETS: [(i64, i64); 6] = [(1, 0), (-1, 0), (0, 1), (0, -1), (1, -1), (-1, 1)];

pub fn tri_orientation(cell: Cell) -> Orientation {
    if (cell.x + cell.y).rem_euclid(2) == 0 {
        Orientation::Up
    } else {
        Orientation::Down
    }
}

pub fn hex_color(cell: Cell) -> ColorClass {
    ColorClass((cell.x - cell.y).rem_euclid(3) as u8)
}

/// Dimensions of a finite torus. Wrap-consistency is checked once, here.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TorusDims {
    geometry: Geometry,
    width: usize,
    height: usize,
}

impl TorusDims {
    pub fn new(geometry: Geometry, width: usize, height: usize) -> Result<Self> {
        let invalid = |reason| Error::InvalidDims {
            geometry,
            width,
            height,
            reason,
        };
        if width > i32::MAX as usize || height > i32::MAX as usize {
            return Err(invalid("dimension too large"));
        }
        match geometry {
            Geometry::Triangular => {
                if width % 2 != 0 || height % 2 != 0 {
                    return Err(invalid("triangular tori need even width and height"));
                }
                if width < 4 || height < 2 {
                    return Err(invalid("triangular tori need width >= 4 and height >= 2"));
                }
            }
            Geometry::Hexagonal => {
                if width < 2 || height < 2 {
                    return Err(invalid("hexagonal tori need width >= 2 and height >= 2"));
                }
            }
        }
        Ok(TorusDims {
            geometry,
            width,
            height,
        })
    }

    pub fn triangular(width: usize, height: usize) -> Result<Self> {
        Self::new(Geometry::Triangular, width, height)
    }

    pub fn hexagonal(width: usize, height: usize) -> Result<Self> {
        Self::new(Geometry::Hexagonal, width, height)
    }

    pub fn geometry(&self) -> Geometry {
        self.geometry
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    /// Number of cells.
    pub fn len(&self) -> usize {
        self.width * self.height
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn wrap(&self, cell: Cell) -> Cell {
        Cell::new(
            cell.x.rem_euclid(self.width as i64),
            cell.y.rem_euclid(self.height as i64),
        )
    }

    pub fn contains(&self, cell: Cell) -> bool {
        (0..self.width as i64).contains(&cell.x) && (0..self.height as i64).contains(&cell.y)
    }

    /// Row-major index of a cell; the cell is wrapped first.
    pub fn index(&self, cell: Cell) -> usize {
        let c = self.wrap(cell);
        c.y as usize * self.width + c.x as usize
    }

    pub fn cell(&self, index: usize) -> Cell {
        Cell::new((index % self.width) as i64, (index / self.width) as i64)
    }

    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        (0..self.len()).map(move |i| self.cell(i))
    }

    /// Neighbors in the canonical order of this geometry.
    pub fn neighbors(&self, cell: Cell) -> Neighbors {
        match self.geometry {
            Geometry::Triangular => {
                let [a, b, c] = self.tri_unchecked(cell);
                Neighbors {
                    cells: [a, b, c, a, a, a],
                    len: 3,
                }
            }
            Geometry::Hexagonal => Neighbors {
                cells: self.hex_unchecked(cell),
                len: 6,
            },
        }
    }

    fn tri_unchecked(&self, cell: Cell) -> [Cell; 3] {
        let vertical = match tri_orientation(cell) {
            Orientation::Up => -1,
            Orientation::Down => 1,
        };
        [
            self.wrap(cell.offset(-1, 0)),
            self.wrap(cell.offset(1, 0)),
            self.wrap(cell.offset(0, vertical)),
        ]
    }

    fn hex_unchecked(&self, cell: Cell) -> [Cell; 6] {
        HEX_OFFSETS.map(|(dx, dy)| self.wrap(cell.offset(dx, dy)))
    }

    /// Flat `len() * arity` table of neighbor indices.
    pub fn neighbor_table(&self) -> NeighborTable {
        let arity = self.geometry.arity();
        let mut indices = alloc::vec::Vec::with_capacity(self.len() * arity);
        for cell in self.cells() {
            indices.extend(self.neighbors(cell).iter().map(|&n| self.index(n)));
        }
        NeighborTable { arity, indices }
    }
}

impl fmt::Display for TorusDims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}x{}", self.geometry, self.width, self.height)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Neighbors {
    cells: [Cell; 6],
    len: usize,
}

impl Neighbors {
    pub fn as_slice(&self) -> &[Cell] {
        &self.cells[..self.len]
    }

    pub fn iter(&self) -> core::slice::Iter<'_, Cell> {
        self.as_slice().iter()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeighborTable {
    arity: usize,
    indices: alloc::vec::Vec<usize>,
}

impl NeighborTable {
    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn of(&self, index: usize) -> &[usize] {
        &self.indices[index * self.arity..(index + 1) * self.arity]
    }
}

fn require(dims: &TorusDims, geometry: Geometry, cell: Cell) -> Result<()> {
    if dims.geometry != geometry {
        return Err(Error::GeometryMismatch {
            expected: geometry,
            found: dims.geometry,
        });
    }
    if !dims.contains(cell) {
        return Err(Error::InvalidArgument("cell lies outside the torus"));
    }
    Ok(())
}

pub fn neighbors_tri(cell: Cell, dims: &TorusDims) -> Result<[Cell; 3]> {
    require(dims, Geometry::Triangular, cell)?;
    Ok(dims.tri_unchecked(cell))
}

pub fn neighbors_hex(cell: Cell, dims: &TorusDims) -> Result<[Cell; 6]> {
    require(dims, Geometry::Hexagonal, cell)?;
    Ok(dims.hex_unchecked(cell))
}
