#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qpc/css.hpp"
#include "qpc/decision.hpp"

namespace qpc {

// Weight of row i of the encoder: 2^{wt(bin(i))}.
int row_weight(int i);

// min over the logical set of row_weight: an upper bound on the distance,
// since each logical row is itself a zero-syndrome logical operator.
int row_weight_bound(const QuantumPolarCode& qpc);

struct DistanceReport {
    int row_weight_bound = 0;
    int search_min = 0;       // lightest nonzero-label pattern found; <= row_weight_bound
    int search_list_size = 0;
};

// Per-class weight histogram of the noise patterns a size-L syndrome-decoding
// list contains, after deduplication. Low p biases the list toward low weight.
ClassSpectrum weight_spectrum(const QuantumPolarCode& qpc, const BitBlock& syndrome, double p,
                              int L);

// Zero-syndrome list search for light logical operators. The logical rows
// themselves are always counted as candidates, so search_min never exceeds
// row_weight_bound.
DistanceReport distance_report(const QuantumPolarCode& qpc, int L, double p = 0.05);

struct Q1ScanRow {
    int info_index = 0;
    double p = 0.0;
    double p_l_x = 0.0;
    double p_l_z = 0.0;
    double p_l = 0.0;  // 1 - (1 - p_l_z)(1 - p_l_x)
};

// SC-decoded logical rates of every single-qubit code with information index
// in [1, N-2], per grid point. One row per (index, p).
std::vector<Q1ScanRow> q1_scan(int n, const std::vector<double>& p_grid, long long trials,
                               std::uint64_t seed, int threads = 1);

// Columns: class_label, weight, count, list_size, syndrome_id, seed
std::string spectrum_to_csv(const ClassSpectrum& spectrum, std::uint64_t syndrome_id,
                            std::uint64_t seed);

std::string q1_scan_to_csv(const std::vector<Q1ScanRow>& rows);

}  // namespace qpc
