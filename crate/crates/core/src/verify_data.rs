//! Static value lists for every theorem, conjecture and
//! Frobenius-Rabinowitsch characterization handled by the verifier.
//!
//! Each list carries a (length, sum) checksum validated by
//! [`validate_checksums`], so a transcription slip fails loudly instead of
//! silently shrinking coverage.

pub(crate) const THM_1_1: [u64; 10] = [
    1, 9, 25, 27, 49, 63, 135, 175, 207, 343,
];

pub(crate) const THM_1_2: [u64; 13] = [
    3, 5, 11, 13, 17, 19, 37, 43, 67, 73, 97, 163, 193,
];

pub(crate) const THM_1_3: [u64; 19] = [
    7, 15, 23, 31, 39, 47, 55, 79, 103, 127, 151, 223, 247, 463, 487, 583, 823, 1087, 1423,
];

pub(crate) const THM_1_4: [u64; 10] = [
    2, 6, 10, 14, 22, 34, 46, 58, 82, 142,
];

pub(crate) const THM_1_5: [u64; 12] = [
    2, 6, 10, 14, 22, 30, 34, 46, 58, 70, 82, 142,
];

pub(crate) const THM_1_6: [u64; 1] = [
    18,
];

pub(crate) const THM_1_8: [u64; 5] = [
    18, 50, 54, 90, 98,
];

pub(crate) const CONJECTURE_1: [u64; 202] = [
    2, 6, 10, 14, 22, 26, 30, 34, 38, 42, 46, 58, 62, 66, 70, 74, 78, 82, 86, 94, 102, 106, 110,
    118, 122, 130, 138, 142, 154, 158, 166, 178, 190, 202, 210, 214, 218, 226, 238, 262, 274,
    282, 298, 302, 310, 322, 346, 358, 366, 382, 394, 418, 422, 442, 466, 478, 498, 502, 518,
    526, 538, 562, 598, 610, 622, 658, 682, 694, 718, 730, 742, 754, 778, 802, 826, 858, 862,
    898, 958, 982, 1030, 1090, 1138, 1162, 1198, 1222, 1282, 1318, 1366, 1402, 1558, 1582, 1618,
    1642, 1738, 1822, 1870, 1918, 1978, 2002, 2038, 2062, 2158, 2182, 2242, 2302, 2398, 2458,
    2482, 2542, 2578, 2818, 2878, 2902, 2962, 2998, 3298, 3322, 3382, 3502, 3658, 3802, 3958,
    4162, 4222, 4258, 4558, 4678, 4918, 5098, 5182, 5338, 5602, 5758, 5842, 6238, 6262, 6598,
    6658, 6742, 6862, 7078, 7282, 7522, 8002, 8338, 8782, 9262, 9718, 10138, 10822, 10858,
    11278, 11302, 12142, 12202, 12538, 12742, 13798, 13918, 14422, 14722, 15082, 15178, 16102,
    17158, 18202, 18418, 19462, 21058, 23398, 23662, 24082, 25162, 25642, 26398, 27358, 28582,
    29362, 30178, 30622, 31882, 32362, 33742, 34318, 35722, 38578, 41218, 45742, 47338, 48742,
    61462, 62302, 83218, 85402, 92698, 92878, 94378, 102958, 166798, 225142, 288502,
];

pub(crate) const CONJECTURE_2: [u64; 44] = [
    18, 50, 54, 90, 98, 126, 162, 198, 242, 250, 294, 342, 378, 450, 522, 550, 558, 702, 722,
    850, 882, 918, 1078, 1150, 1422, 1450, 2662, 2842, 3250, 3798, 4018, 4698, 4750, 5350, 7018,
    9802, 11650, 12838, 16762, 17182, 20938, 23998, 30682, 48778,
];

pub(crate) const CONJECTURE_3: [u64; 16] = [
    2, 6, 10, 14, 22, 26, 30, 38, 42, 62, 110, 122, 182, 278, 362, 398,
];

pub(crate) const FR_IMAG_ODD: [u64; 7] = [
    3, 7, 11, 19, 43, 67, 163,
];

pub(crate) const FR_IMAG_EVEN: [u64; 5] = [
    2, 6, 10, 22, 58,
];

pub(crate) const FR_REAL: [u64; 12] = [
    13, 21, 29, 37, 53, 77, 101, 173, 197, 293, 437, 677,
];

/// (list, expected length, expected sum) for every embedded table.
const CHECKSUMS: &[(&str, &[u64], usize, u64)] = &[
    ("T1.1", &THM_1_1, 10, 1034),
    ("T1.2", &THM_1_2, 13, 741),
    ("T1.3", &THM_1_3, 19, 6013),
    ("T1.4", &THM_1_4, 10, 416),
    ("T1.5", &THM_1_5, 12, 516),
    ("T1.6", &THM_1_6, 1, 18),
    ("T1.8", &THM_1_8, 5, 310),
    ("C1", &CONJECTURE_1, 202, 2628288),
    ("C2", &CONJECTURE_2, 44, 244572),
    ("C3", &CONJECTURE_3, 16, 1704),
    ("FR1", &FR_IMAG_ODD, 7, 313),
    ("FR2", &FR_IMAG_EVEN, 5, 98),
    ("FR-real", &FR_REAL, 12, 2108),
];

/// Panics if any embedded list disagrees with its frozen checksum or is
/// not strictly increasing.
pub(crate) fn validate_checksums() {
    for (id, list, len, sum) in CHECKSUMS {
        assert_eq!(list.len(), *len, "{id}: length drifted");
        assert_eq!(list.iter().sum::<u64>(), *sum, "{id}: sum drifted");
        assert!(
            list.windows(2).all(|w| w[0] < w[1]),
            "{id}: list must be strictly increasing"
        );
    }
}
