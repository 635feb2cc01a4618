// Inverse of the degree-2 tetrahedron Vandermonde matrix, rows indexed by
// generator, columns by dual basis function.
pub const VINV_TET_R2: [[i64; 20]; 20] = [
    [ 4, -2,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0],
    [-2,  4,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0],
    [ 0,  0,  4, -2,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0],
    [ 0,  0, -2,  4,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0],
    [ 0,  0,  0,  0,  4, -2,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0],
    [ 0,  0,  0,  0, -2,  4,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0],
    [ 0,  0,  0,  0,  0,  0,  4, -2,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0],
    [ 0,  0,  0,  0,  0,  0, -2,  4,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0],
    [ 0,  0,  0,  0,  0,  0,  0,  0,  4, -2,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0],
    [ 0,  0,  0,  0,  0,  0,  0,  0, -2,  4,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0],
    [ 0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  4, -2,  0,  0,  0,  0,  0,  0,  0,  0],
    [ 0,  0,  0,  0,  0,  0,  0,  0,  0,  0, -2,  4,  0,  0,  0,  0,  0,  0,  0,  0],
    [ 0,  0,  0,  0,  0,  0, -4, -2,  2, -2,  2,  4,  8, -4,  0,  0,  0,  0,  0,  0],
    [ 0,  0,  0,  0,  0,  0,  2, -2, -4, -2, -4, -2, -4,  8,  0,  0,  0,  0,  0,  0],
    [ 0,  0, -4, -2,  2, -2,  0,  0,  0,  0,  2,  4,  0,  0,  8, -4,  0,  0,  0,  0],
    [ 0,  0,  2, -2, -4, -2,  0,  0,  0,  0, -4, -2,  0,  0, -4,  8,  0,  0,  0,  0],
    [-4, -2,  0,  0,  2, -2,  0,  0,  2,  4,  0,  0,  0,  0,  0,  0,  8, -4,  0,  0],
    [ 2, -2,  0,  0, -4, -2,  0,  0, -4, -2,  0,  0,  0,  0,  0,  0, -4,  8,  0,  0],
    [-4, -2,  2, -2,  0,  0,  2,  4,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  8, -4],
    [ 2, -2, -4, -2,  0,  0, -4, -2,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0, -4,  8],
];
