#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "qpc/css.hpp"
#include "qpc/decision.hpp"
#include "qpc/scl.hpp"

namespace qpc {

enum class DecoderKind { SC, SclFrame, SclE, SclC, MWD, MLD };
std::string to_string(DecoderKind kind);
DecoderKind decoder_kind_from_string(const std::string& s);

enum class ErrorType { X, Z, Both };
std::string to_string(ErrorType type);
ErrorType error_type_from_string(const std::string& s);

struct SimJob {
    QuantumPolarCode qpc;
    std::vector<DecoderKind> decoders;
    int L = 1;
    std::vector<double> p_grid;
    long long trials = 0;
    std::uint64_t master_seed = 0;
    ErrorType error_type = ErrorType::X;
    int threads = 1;

    // Throws std::invalid_argument on an empty grid, p outside (0, 0.5),
    // trials < 1, no decoders, or an exact decoder at N > 32.
    void validate() const;
};

struct SimPoint {
    double p = 0.0;
    DecoderKind decoder = DecoderKind::SC;
    int L = 1;
    long long trials = 0;
    long long logical_errors = 0;
    long long frame_errors = 0;
    std::uint64_t seed = 0;

    double estimate() const { return static_cast<double>(logical_errors) / trials; }
    double standard_error() const;
};

// One deterministic stream per (trial, purpose). Thread scheduling never
// touches the sequence a trial sees.
std::mt19937_64 trial_rng(std::uint64_t master_seed, int p_index, long long trial_index,
                          std::uint64_t stream_salt);

// i.i.d. Bernoulli(p) flips. Throws std::domain_error unless p in [0, 1].
BitBlock sample_bsc(int N, double p, std::mt19937_64& rng);

struct TrialOutcome {
    bool frame_error = false;
    bool logical_error = false;
};

// Outcomes for every decoder in job.decoders, in that order, for one trial.
// All list-based variants share a single SCL decode of the same noise.
std::vector<TrialOutcome> run_trial(const SimJob& job, double p, int p_index,
                                    long long trial_index);

// One SimPoint per (p, decoder). Results are bit-identical for any thread count.
std::vector<SimPoint> estimate(const SimJob& job);

// 1 - (1 - P_X)(1 - P_Z). Throws std::domain_error outside [0, 1].
double combined_rate(double p_x, double p_z);

// Header: N,K,Kx,Kz,construction,beta,decoder,L,p,trials,logical_errors,P_L,stderr,seed
std::string sim_points_to_csv(const QuantumPolarCode& qpc, const std::vector<SimPoint>& points);
std::string sim_points_to_json(const QuantumPolarCode& qpc, const std::vector<SimPoint>& points);

}  // namespace qpc
