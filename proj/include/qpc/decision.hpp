#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>

#include "qpc/css.hpp"
#include "qpc/scl.hpp"

namespace qpc {

// Tie-breaking randomness. Decisions that must correlate (SCL-E and SCL-C on
// the same trial) are given copies of the same stream.
using TieRng = std::mt19937_64;

using WeightHistogram = std::map<int, long long>;  // weight -> count

// Per-class histogram of noise-pattern weights for one syndrome.
struct ClassSpectrum {
    enum class Provenance { FromList, Exhaustive };
    std::map<std::uint64_t, WeightHistogram> hist;  // label key -> histogram
    Provenance provenance = Provenance::FromList;
    int list_size = 0;
};

struct Decision {
    std::uint64_t chosen_label = 0;
    BitBlock correction;
    std::map<std::uint64_t, double> per_class_score;
    bool tie_broken = false;
};

std::string decision_to_json(const Decision& d);

// Minimum-weight entry on the list; equal-weight ties across classes resolved
// by one uniform draw over the tied classes (ascending label order, shared
// with exact_mwd).
Decision scl_e_decide(const QuantumPolarCode& qpc, const DecodeList& list, TieRng& rng);

// log sum_w N(w) q^w with q = p/(1-p), the class-independent (1-p)^N factor
// dropped. Empty histogram -> -infinity. Throws std::domain_error unless p in (0, 0.5).
double coset_score(const WeightHistogram& hist, double p);

// Class with the largest list-approximated coset probability; exact score ties
// collapse onto the SCL-E choice when it is among them.
Decision scl_c_decide(const QuantumPolarCode& qpc, const DecodeList& list, double p, TieRng& rng);

// Exhaustive coset enumeration for one syndrome (N <= 32): all 2^K classes
// times all 2^(N-Kx) stabilizer offsets, walked through the butterfly.
struct CosetEnumeration {
    ClassSpectrum spectrum;                       // provenance Exhaustive
    std::map<std::uint64_t, BitBlock> min_rep;    // per-class minimum-weight element
};
CosetEnumeration enumerate_cosets(const QuantumPolarCode& qpc, const BitBlock& syndrome);

// Global minimum-weight syndrome-consistent error; cross-class weight ties
// broken by the rng exactly as in scl_e_decide.
Decision exact_mwd(const QuantumPolarCode& qpc, const BitBlock& syndrome, TieRng& rng);

// Exact coset-probability argmax; score ties collapse onto the exact_mwd
// choice for the same rng state.
Decision exact_mld(const QuantumPolarCode& qpc, const BitBlock& syndrome, double p, TieRng& rng);

}  // namespace qpc
