"""Printed coding-option tables: (m, h, r, s, t, R1, R2, dL, dE2), R1 None where absent."""

PMEPR4 = [
    (4, 1, 2, 8, 1, "0.50", "0.56", 4, "16.00"),
    (4, 1, 3, 8, 3, None, "0.69", 2, "8.00"),
    (4, 2, 1, 13, 1, "0.81", "0.88", 8, "16.00"),
    (4, 2, 2, 16, 3, "1.00", "1.19", 4, "8.00"),
    (4, 3, 1, 21, 3, "1.31", "1.50", 8, "4.69"),
    (4, 3, 2, 24, 3, "1.50", "1.69", 4, "2.34"),
    (5, 1, 2, 10, 3, "0.31", "0.41", 8, "32.00"),
    (5, 1, 3, 10, 7, None, "0.53", 4, "16.00"),
    (5, 2, 1, 16, 3, "0.50", "0.59", 16, "32.00"),
    (5, 2, 2, 20, 7, "0.63", "0.84", 8, "16.00"),
    (5, 3, 1, 26, 7, "0.81", "1.03", 16, "9.37"),
    (5, 3, 2, 30, 7, "0.94", "1.16", 8, "4.69"),
    (6, 1, 2, 12, 5, "0.19", "0.27", 16, "64.00"),
    (6, 1, 3, 12, 11, None, "0.36", 8, "32.00"),
    (6, 2, 1, 19, 5, "0.30", "0.38", 32, "64.00"),
    (6, 2, 2, 24, 11, "0.38", "0.55", 16, "32.00"),
    (6, 3, 1, 31, 11, "0.48", "0.66", 32, "18.75"),
    (6, 3, 2, 36, 11, "0.56", "0.73", 16, "9.37"),
]

PMEPR8 = [
    (5, 1, 2, 13, 1, "0.41", "0.44", 8, "32.00"),
    (5, 1, 3, 16, 3, "0.50", "0.59", 4, "16.00"),
    (5, 1, 4, 16, 6, None, "0.69", 2, "8.00"),
    (5, 2, 1, 19, 1, "0.59", "0.63", 16, "32.00"),
    (5, 2, 2, 29, 3, "0.91", "1.00", 8, "16.00"),
    (5, 2, 3, 32, 6, "1.00", "1.19", 4, "8.00"),
    (5, 3, 1, 35, 3, "1.09", "1.19", 16, "9.37"),
    (5, 3, 2, 45, 6, "1.41", "1.59", 8, "4.69"),
    (5, 3, 3, 48, 6, "1.50", "1.69", 4, "2.34"),
    (6, 1, 2, 16, 3, "0.25", "0.30", 16, "64.00"),
    (6, 1, 3, 20, 7, "0.31", "0.42", 8, "32.00"),
    (6, 1, 4, 20, 14, None, "0.53", 4, "16.00"),
    (6, 2, 1, 23, 3, "0.36", "0.41", 32, "64.00"),
    (6, 2, 2, 36, 7, "0.56", "0.67", 16, "32.00"),
    (6, 2, 3, 40, 14, "0.63", "0.84", 8, "16.00"),
    (6, 3, 1, 43, 7, "0.67", "0.78", 32, "18.75"),
    (6, 3, 2, 56, 14, "0.88", "1.09", 16, "9.37"),
    (6, 3, 3, 60, 14, "0.94", "1.16", 8, "4.69"),
]

# displayed generator matrices, rows as words of length 8
ERM_0_3_3 = [
    [1, 1, 1, 1, 1, 1, 1, 1],
    [0, 2, 0, 2, 0, 2, 0, 2],
    [0, 0, 2, 2, 0, 0, 2, 2],
    [0, 0, 0, 0, 2, 2, 2, 2],
    [0, 0, 0, 4, 0, 0, 0, 4],
    [0, 0, 0, 0, 0, 4, 0, 4],
    [0, 0, 0, 0, 0, 0, 4, 4],
]
A_1_0_3_3 = [
    [1, 1, 1, 1, 1, 1, 1, 1],
    [0, 2, 0, 2, 0, 2, 0, 2],
    [0, 0, 2, 2, 0, 0, 2, 2],
    [0, 0, 0, 0, 2, 2, 2, 2],
    [0, 0, 0, 0, 0, 4, 0, 4],
    [0, 0, 0, 0, 0, 0, 4, 4],
]
