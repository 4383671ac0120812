#pragma once

// Quantiles of the Dickey-Fuller t statistic, simulated from the exact test
// procedure at each sample size (200000 replications per cell; random walks
// with standard normal steps; lag-0 test regression). Row = sample size, in
// the order of kSampleSizes; column = probability in kProbs.

namespace stsnow::stationarity::tables {

inline constexpr int kNumProbs = 25;
inline constexpr int kNumSizes = 6;

inline constexpr double kProbs[kNumProbs] = {
    0.001, 0.005, 0.01, 0.02, 0.03, 0.04, 0.05, 0.075, 0.1, 0.125, 0.15, 0.2, 0.25, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95, 0.975, 0.99, 0.995, 0.999};

inline constexpr double kSampleSizes[kNumSizes] = {25, 50, 100, 250, 500, 2000};

inline constexpr double kNone[kNumSizes][kNumProbs] = {
    {-3.5942, -2.9396, -2.6598, -2.3650, -2.1936, -2.0603, -1.9555, -1.7547, -1.6053, -1.4855, -1.3832, -1.2123, -1.0690, -0.9399, -0.7104, -0.4768, -0.2140, 0.0802, 0.4300, 0.9205, 1.3336, 1.6898, 2.1289, 2.4393, 3.1085},
    {-3.4393, -2.8720, -2.6110, -2.3361, -2.1668, -2.0457, -1.9473, -1.7522, -1.6122, -1.4957, -1.3921, -1.2216, -1.0795, -0.9534, -0.7206, -0.4878, -0.2261, 0.0698, 0.4191, 0.9066, 1.3110, 1.6675, 2.0773, 2.3552, 2.9637},
    {-3.3804, -2.8402, -2.5873, -2.3274, -2.1664, -2.0474, -1.9499, -1.7585, -1.6163, -1.5006, -1.4012, -1.2336, -1.0893, -0.9618, -0.7293, -0.4985, -0.2366, 0.0576, 0.4093, 0.8976, 1.2879, 1.6342, 2.0308, 2.3149, 2.9115},
    {-3.3161, -2.7952, -2.5612, -2.3149, -2.1609, -2.0465, -1.9516, -1.7581, -1.6157, -1.4993, -1.4000, -1.2305, -1.0891, -0.9603, -0.7292, -0.4994, -0.2387, 0.0548, 0.4054, 0.8902, 1.2893, 1.6272, 2.0197, 2.2805, 2.7820},
    {-3.3072, -2.8228, -2.5812, -2.3174, -2.1557, -2.0344, -1.9390, -1.7537, -1.6132, -1.4973, -1.3984, -1.2317, -1.0893, -0.9611, -0.7303, -0.4975, -0.2384, 0.0516, 0.4026, 0.8845, 1.2788, 1.6226, 2.0120, 2.2743, 2.7667},
    {-3.2934, -2.8084, -2.5792, -2.3197, -2.1540, -2.0346, -1.9402, -1.7571, -1.6168, -1.5032, -1.4055, -1.2360, -1.0912, -0.9611, -0.7276, -0.4978, -0.2363, 0.0594, 0.4122, 0.8964, 1.2872, 1.6246, 2.0241, 2.2822, 2.8269},
};

inline constexpr double kConst[kNumSizes][kNumProbs] = {
    {-4.7090, -4.0341, -3.7355, -3.4205, -3.2318, -3.0932, -2.9835, -2.7831, -2.6309, -2.5111, -2.4059, -2.2328, -2.0882, -1.9625, -1.7378, -1.5323, -1.3255, -1.0975, -0.8056, -0.3761, -0.0015, 0.3325, 0.7330, 1.0005, 1.5874},
    {-4.3282, -3.8387, -3.5774, -3.3049, -3.1405, -3.0159, -2.9172, -2.7335, -2.5961, -2.4841, -2.3874, -2.2245, -2.0855, -1.9646, -1.7497, -1.5504, -1.3475, -1.1210, -0.8324, -0.3963, -0.0319, 0.2863, 0.6666, 0.9240, 1.4255},
    {-4.2286, -3.7279, -3.5006, -3.2525, -3.0984, -2.9848, -2.8919, -2.7127, -2.5810, -2.4721, -2.3783, -2.2202, -2.0828, -1.9684, -1.7561, -1.5579, -1.3567, -1.1333, -0.8480, -0.4210, -0.0577, 0.2688, 0.6355, 0.8854, 1.4098},
    {-4.1460, -3.6645, -3.4500, -3.2055, -3.0667, -2.9549, -2.8680, -2.6986, -2.5666, -2.4612, -2.3688, -2.2142, -2.0817, -1.9633, -1.7550, -1.5598, -1.3619, -1.1398, -0.8557, -0.4266, -0.0667, 0.2529, 0.6156, 0.8746, 1.4032},
    {-4.1098, -3.6502, -3.4261, -3.2050, -3.0607, -2.9555, -2.8666, -2.6944, -2.5666, -2.4612, -2.3684, -2.2152, -2.0850, -1.9703, -1.7595, -1.5637, -1.3641, -1.1421, -0.8617, -0.4342, -0.0684, 0.2454, 0.6156, 0.8695, 1.3906},
    {-4.0850, -3.6354, -3.4347, -3.2089, -3.0661, -2.9569, -2.8686, -2.6975, -2.5719, -2.4666, -2.3745, -2.2203, -2.0902, -1.9756, -1.7652, -1.5694, -1.3680, -1.1462, -0.8661, -0.4428, -0.0782, 0.2341, 0.6075, 0.8466, 1.3826},
};

inline constexpr double kConstTrend[kNumSizes][kNumProbs] = {
    {-5.3861, -4.7066, -4.3781, -4.0493, -3.8549, -3.7151, -3.6033, -3.3925, -3.2352, -3.1090, -3.0085, -2.8305, -2.6820, -2.5551, -2.3370, -2.1398, -1.9459, -1.7472, -1.5038, -1.1429, -0.8197, -0.5227, -0.1625, 0.0833, 0.6316},
    {-4.9575, -4.4041, -4.1450, -3.8785, -3.7127, -3.5927, -3.4986, -3.3194, -3.1805, -3.0683, -2.9733, -2.8106, -2.6767, -2.5570, -2.3487, -2.1603, -1.9746, -1.7799, -1.5443, -1.1955, -0.8827, -0.5874, -0.2525, -0.0213, 0.4829},
    {-4.7643, -4.2920, -4.0583, -3.8083, -3.6598, -3.5495, -3.4589, -3.2851, -3.1560, -3.0517, -2.9597, -2.8044, -2.6735, -2.5583, -2.3538, -2.1695, -1.9874, -1.7949, -1.5639, -1.2233, -0.9082, -0.6296, -0.2964, -0.0750, 0.4270},
    {-4.6536, -4.2113, -3.9970, -3.7680, -3.6271, -3.5224, -3.4324, -3.2696, -3.1439, -3.0421, -2.9504, -2.8006, -2.6737, -2.5604, -2.3608, -2.1755, -1.9967, -1.8042, -1.5728, -1.2344, -0.9305, -0.6535, -0.3147, -0.0783, 0.3879},
    {-4.6145, -4.1876, -3.9785, -3.7581, -3.6169, -3.5091, -3.4243, -3.2603, -3.1344, -3.0341, -2.9465, -2.7962, -2.6696, -2.5584, -2.3603, -2.1772, -1.9982, -1.8057, -1.5771, -1.2384, -0.9343, -0.6576, -0.3300, -0.0873, 0.3729},
    {-4.5649, -4.1591, -3.9569, -3.7378, -3.5983, -3.4976, -3.4119, -3.2493, -3.1253, -3.0241, -2.9363, -2.7887, -2.6627, -2.5540, -2.3580, -2.1779, -1.9981, -1.8066, -1.5793, -1.2467, -0.9352, -0.6558, -0.3237, -0.0785, 0.4078},
};

inline constexpr double kGlsConst[kNumSizes][kNumProbs] = {
    {-3.9823, -3.4120, -3.1542, -2.8758, -2.7095, -2.5854, -2.4900, -2.3129, -2.1825, -2.0775, -1.9909, -1.8460, -1.7270, -1.6244, -1.4467, -1.2810, -1.1059, -0.8994, -0.6350, -0.2565, 0.0541, 0.3229, 0.6306, 0.8296, 1.2588},
    {-3.6701, -3.1419, -2.8892, -2.6364, -2.4712, -2.3558, -2.2663, -2.0945, -1.9602, -1.8539, -1.7655, -1.6155, -1.4907, -1.3833, -1.1966, -1.0258, -0.8406, -0.6113, -0.3203, 0.1062, 0.4578, 0.7630, 1.1353, 1.3841, 1.8752},
    {-3.4919, -2.9792, -2.7368, -2.4859, -2.3282, -2.2108, -2.1205, -1.9476, -1.8124, -1.7030, -1.6111, -1.4596, -1.3282, -1.2116, -1.0062, -0.8140, -0.6004, -0.3426, -0.0202, 0.4435, 0.8258, 1.1584, 1.5437, 1.8203, 2.3650},
    {-3.3625, -2.8857, -2.6478, -2.3887, -2.2356, -2.1173, -2.0231, -1.8452, -1.7081, -1.5928, -1.4973, -1.3349, -1.1978, -1.0759, -0.8571, -0.6410, -0.4035, -0.1204, 0.2247, 0.7046, 1.0958, 1.4431, 1.8463, 2.1138, 2.6369},
    {-3.3249, -2.8296, -2.5921, -2.3423, -2.1903, -2.0713, -1.9786, -1.8009, -1.6603, -1.5470, -1.4498, -1.2868, -1.1473, -1.0232, -0.7963, -0.5757, -0.3270, -0.0355, 0.3128, 0.7916, 1.1862, 1.5281, 1.9338, 2.2038, 2.7583},
    {-3.2757, -2.7997, -2.5676, -2.3216, -2.1626, -2.0470, -1.9549, -1.7708, -1.6323, -1.5188, -1.4179, -1.2512, -1.1089, -0.9808, -0.7495, -0.5221, -0.2675, 0.0271, 0.3767, 0.8600, 1.2578, 1.5990, 1.9962, 2.2518, 2.7630},
};

inline constexpr double kGlsTrend[kNumSizes][kNumProbs] = {
    {-5.1981, -4.4904, -4.1967, -3.9047, -3.7255, -3.5889, -3.4866, -3.2857, -3.1424, -3.0247, -2.9253, -2.7619, -2.6309, -2.5140, -2.3141, -2.1345, -1.9634, -1.7893, -1.5947, -1.3248, -1.0997, -0.9086, -0.6899, -0.5480, -0.2957},
    {-4.5786, -4.0487, -3.8018, -3.5472, -3.3884, -3.2723, -3.1810, -3.0073, -2.8785, -2.7748, -2.6867, -2.5384, -2.4158, -2.3088, -2.1211, -1.9534, -1.7936, -1.6321, -1.4474, -1.1878, -0.9659, -0.7696, -0.5585, -0.4057, -0.1115},
    {-4.2974, -3.8259, -3.6085, -3.3672, -3.2219, -3.1108, -3.0234, -2.8523, -2.7287, -2.6269, -2.5392, -2.3936, -2.2718, -2.1653, -1.9775, -1.8117, -1.6504, -1.4843, -1.2982, -1.0427, -0.8175, -0.6238, -0.3868, -0.2265, 0.0896},
    {-4.1183, -3.6707, -3.4674, -3.2396, -3.1033, -2.9961, -2.9086, -2.7470, -2.6246, -2.5235, -2.4372, -2.2920, -2.1705, -2.0617, -1.8718, -1.7006, -1.5373, -1.3653, -1.1704, -0.8977, -0.6722, -0.4704, -0.2408, -0.0826, 0.2186},
    {-4.1147, -3.6593, -3.4497, -3.2240, -3.0756, -2.9668, -2.8769, -2.7144, -2.5931, -2.4935, -2.4080, -2.2616, -2.1380, -2.0299, -1.8369, -1.6618, -1.4921, -1.3185, -1.1197, -0.8444, -0.6124, -0.4092, -0.1802, -0.0229, 0.2817},
    {-4.0855, -3.6474, -3.4338, -3.2050, -3.0609, -2.9518, -2.8647, -2.6978, -2.5695, -2.4679, -2.3806, -2.2334, -2.1082, -1.9966, -1.8036, -1.6278, -1.4578, -1.2830, -1.0842, -0.8085, -0.5758, -0.3741, -0.1442, 0.0099, 0.3095},
};

}  // namespace stsnow::stationarity::tables
