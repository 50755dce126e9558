#include "qpc/analysis.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

#include "qpc/scl.hpp"
#include "qpc/sim.hpp"

namespace qpc {

int row_weight(int i) {
    if (i < 0) throw std::invalid_argument("row_weight: negative row index");
    return 1 << std::popcount(static_cast<unsigned>(i));
}

int row_weight_bound(const QuantumPolarCode& qpc) {
    int bound = std::numeric_limits<int>::max();
    for (int i : qpc.logical) bound = std::min(bound, row_weight(i));
    return bound;
}

ClassSpectrum weight_spectrum(const QuantumPolarCode& qpc, const BitBlock& syndrome, double p,
                              int L) {
    const DecodeList list = scl_decode_syndrome(qpc.z_code(), syndrome, p, L);

    ClassSpectrum spectrum;
    spectrum.provenance = ClassSpectrum::Provenance::FromList;
    spectrum.list_size = L;
    std::set<BitBlock> seen;
    for (const DecodeEntry& entry : list.entries) {
        if (!seen.insert(entry.c).second) continue;
        std::uint64_t label = 0;
        for (std::size_t j = 0; j < qpc.logical.size(); ++j)
            if (entry.u[qpc.logical[j]]) label |= std::uint64_t{1} << j;
        ++spectrum.hist[label][weight(entry.c)];
    }
    return spectrum;
}

DistanceReport distance_report(const QuantumPolarCode& qpc, int L, double p) {
    DistanceReport report;
    report.row_weight_bound = row_weight_bound(qpc);
    report.search_list_size = L;

    const BitBlock zero_syndrome(qpc.frozen_z.size(), 0);
    const ClassSpectrum spectrum = weight_spectrum(qpc, zero_syndrome, p, L);
    // The logical rows are candidates whether or not the list surfaced them.
    int best = report.row_weight_bound;
    for (const auto& [label, hist] : spectrum.hist) {
        if (label == 0 || hist.empty()) continue;
        best = std::min(best, hist.begin()->first);
    }
    report.search_min = best;
    return report;
}

std::vector<Q1ScanRow> q1_scan(int n, const std::vector<double>& p_grid, long long trials,
                               std::uint64_t seed, int threads) {
    const int N = 1 << n;
    std::vector<Q1ScanRow> rows;
    for (int i = 1; i <= N - 2; ++i) {
        SimJob job;
        job.qpc = build_q1_qpc(n, i);
        job.decoders = {DecoderKind::SC};
        job.L = 1;
        job.p_grid = p_grid;
        job.trials = trials;
        job.master_seed = seed ^ (0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(i + 1));
        job.threads = threads;

        job.error_type = ErrorType::X;
        const std::vector<SimPoint> px = estimate(job);
        job.error_type = ErrorType::Z;
        const std::vector<SimPoint> pz = estimate(job);

        for (std::size_t k = 0; k < p_grid.size(); ++k) {
            Q1ScanRow row;
            row.info_index = i;
            row.p = p_grid[k];
            row.p_l_x = px[k].estimate();
            row.p_l_z = pz[k].estimate();
            row.p_l = combined_rate(row.p_l_x, row.p_l_z);
            rows.push_back(row);
        }
    }
    return rows;
}

std::string spectrum_to_csv(const ClassSpectrum& spectrum, std::uint64_t syndrome_id,
                            std::uint64_t seed) {
    std::ostringstream os;
    os << "class_label,weight,count,list_size,syndrome_id,seed\n";
    for (const auto& [label, hist] : spectrum.hist)
        for (const auto& [w, count] : hist)
            os << label << ',' << w << ',' << count << ',' << spectrum.list_size << ','
               << syndrome_id << ',' << seed << '\n';
    return os.str();
}

std::string q1_scan_to_csv(const std::vector<Q1ScanRow>& rows) {
    std::ostringstream os;
    os.precision(12);
    os << "info_index,p,P_L_X,P_L_Z,P_L\n";
    for (const Q1ScanRow& row : rows)
        os << row.info_index << ',' << row.p << ',' << row.p_l_x << ',' << row.p_l_z << ','
           << row.p_l << '\n';
    return os.str();
}

}  // namespace qpc
