//! Reference values as printed, kept verbatim (including the two rectangular
//! entries that break their own row's proportionality).

/// Barrier height for both tables, eV.
pub const HEIGHT: f64 = 1.0;

/// Row energies, eV, in printed order.
pub const ENERGIES: [f64; 21] = [
    0.99, 0.95, 0.90, 0.85, 0.80, 0.75, 0.70, 0.65, 0.60, 0.55, 0.50, 0.45, 0.40, 0.35, 0.30,
    0.25, 0.20, 0.15, 0.10, 0.05, 0.01,
];

/// Column barrier lengths as labelled (b for the rectangular table, c for the triangular one).
pub const LENGTHS: [f64; 5] = [0.1, 0.2, 0.5, 1.0, 2.0];

/// Rectangular barrier, pre-barrier length column values.
pub const TABLE1: [[f64; 5]; 21] = [
    [0.0579, 0.116, 0.289, 0.528, 1.157],
    [0.302, 0.603, 1.508, 3.016, 6.031],
    [0.637, 1.273, 3.183, 6.366, 12.73],
    [1.01, 2.02, 5.06, 10.11, 20.22],
    [1.43, 2.86, 7.16, 14.32, 28.65],
    [1.91, 3.82, 9.55, 19.10, 38.20],
    [2.46, 4.91, 12.28, 24.56, 49.11],
    [3.09, 6.17, 15.43, 30.85, 61.70],
    [3.82, 7.64, 19.10, 38.20, 76.39],
    [4.69, 9.38, 23.44, 46.88, 93.76],
    [5.73, 11.46, 28.65, 57.30, 114.60],
    [7.00, 14.01, 35.01, 70.03, 140.10],
    [8.59, 17.19, 42.97, 85.94, 171.90],
    [10.64, 21.28, 53.20, 106.40, 212.80],
    [13.37, 26.74, 66.84, 133.69, 267.40],
    [17.19, 34.38, 85.94, 171.89, 343.80],
    [22.92, 45.84, 114.59, 229.18, 458.40],
    [32.47, 64.94, 162.34, 324.67, 649.30],
    [51.57, 103.13, 257.83, 515.65, 1031.00],
    [108.62, 217.72, 544.30, 1088.57, 2177.00],
    [567.23, 1134.44, 2835.00, 5671.05, 1135.00],
];

/// Triangular barrier, pre-barrier length column values.
pub const TABLE2: [[f64; 5]; 21] = [
    [1232.46, 1232.36, 1232.06, 1231.56, 1230.56],
    [1258.14, 1258.04, 1257.74, 1257.24, 1256.24],
    [1292.62, 1292.52, 1292.22, 1291.72, 1290.72],
    [1330.09, 1329.99, 1329.69, 1329.19, 1328.19],
    [1371.03, 1370.93, 1370.63, 1370.13, 1369.13],
    [1416.00, 1415.90, 1415.60, 1415.10, 1414.10],
    [1465.70, 1465.60, 1465.30, 1464.80, 1463.80],
    [1521.04, 1520.94, 1520.64, 1520.14, 1519.14],
    [1583.15, 1583.05, 1582.75, 1582.25, 1581.25],
    [1653.55, 1653.45, 1653.15, 1652.65, 1651.65],
    [1734.36, 1734.36, 1734.36, 1734.36, 1734.36],
    [1828.17, 1828.16, 1828.12, 1828.07, 1827.96],
    [1939.05, 1939.02, 1938.95, 1938.82, 1938.57],
    [2072.92, 2072.87, 2072.74, 2072.53, 2072.10],
    [2238.98, 2238.92, 2238.72, 2238.38, 2237.72],
    [2452.66, 2452.56, 2452.26, 2451.76, 2450.76],
    [2742.17, 2742.07, 2741.77, 2741.27, 2740.27],
    [3166.40, 3166.30, 3166.00, 3165.50, 3164.50],
    [3878.05, 3877.95, 3877.65, 3877.15, 3876.15],
    [5484.43, 5484.33, 5484.03, 5483.53, 5482.53],
    [12263.69, 12263.59, 12263.29, 12262.79, 12261.79],
];

/// Regression of the triangular root angle near −360° at c = 1.
pub const FIG6_MEAN_DEG: f64 = -359.77003;
pub const FIG6_STDDEV_DEG: f64 = 0.178557;
