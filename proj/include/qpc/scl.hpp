#pragma once

#include <span>
#include <vector>

#include "qpc/bits.hpp"
#include "qpc/construction.hpp"

namespace qpc {

// LLR magnitudes are clamped to this on entry so that +-inf inputs cannot
// produce NaN inside the check-node combine.
inline constexpr double kLlrSaturation = 1e6;

// ln(W(y|0)/W(y|1)) for a BSC(p) observation. Throws std::domain_error unless p in (0,1).
double bsc_llr(Bit y_bit, double p);

// Exact check-node combine 2 atanh(tanh(a/2) tanh(b/2)), evaluated in the
// stable min-plus-correction form.
double check_node(double a, double b);

// Bit-node combine g(a, b, u) = b + (1-2u) a.
double bit_node(double a, double b, Bit u);

// Log-domain path-metric step: metric - ln(1 + exp(-(1-2u) llr)).
double pm_update(double metric, double decision_llr, Bit u);

struct DecodeEntry {
    BitBlock u;     // input decisions, frozen positions included
    BitBlock c;     // u E; in syndrome mode this is the noise estimate
    double metric;  // log-domain, larger is better
};

// Surviving paths sorted by metric descending; exact metric ties keep the
// decoder's deterministic path order (senior path first, 0-fork before 1-fork).
struct DecodeList {
    std::vector<DecodeEntry> entries;
};

// Per-information-bit surviving metrics, for debugging dumps.
struct DecodeTrace {
    std::vector<std::vector<double>> stage_metrics;
};

std::string trace_to_json(const DecodeTrace& trace);

// Successive-cancellation list decoder over a fixed code and list size. A
// decoder instance is single-threaded but reusable across calls.
class SclDecoder {
  public:
    SclDecoder(const ClassicalPolarCode& code, int list_size);

    // Codeword decoding with the code's own frozen values.
    DecodeList decode(std::span<const double> channel_llrs, DecodeTrace* trace = nullptr);

    // Same, with per-call frozen values (syndrome decoding injects them here).
    DecodeList decode_with_frozen(std::span<const double> channel_llrs,
                                  const BitBlock& frozen_values, DecodeTrace* trace = nullptr);

    int list_size() const { return L_; }

  private:
    int n_;
    int N_;
    int L_;
    std::vector<Bit> is_frozen_;
    BitBlock default_frozen_;
    std::vector<int> bitrev_;

    // Copy-on-write array banks, one bank per butterfly layer 0..n. The layer-l
    // LLR array has 2^(n-l) entries; the bit array has two slots per entry.
    std::vector<std::vector<std::vector<double>>> llr_bank_;
    std::vector<std::vector<std::vector<Bit>>> bit_bank_;
    std::vector<std::vector<int>> llr_slot_, bit_slot_;        // [layer][path]
    std::vector<std::vector<int>> llr_refs_, bit_refs_;        // [layer][slot]
    std::vector<std::vector<int>> llr_free_, bit_free_;        // [layer]

    std::vector<double> metric_;
    std::vector<Bit> active_;
    std::vector<int> order_;  // active paths, senior first
    std::vector<int> free_paths_;

    void reset(std::span<const double> channel_llrs);
    int claim_llr_slot(int layer);
    int claim_bit_slot(int layer);
    const double* llr_read(int layer, int path) const;
    double* llr_write(int layer, int path);      // no copy: callers overwrite fully
    const Bit* bit_read(int layer, int path) const;
    Bit* bit_write(int layer, int path);         // copy-on-write
    int clone_path(int path);
    void release_path(int path);
    void calc_llr(int layer, int phase);
    void update_bits(int layer, int phase);
    void extend_frozen(int phase, const BitBlock& frozen_values);
    void extend_info(int phase);
};

// Convenience wrappers.
DecodeList scl_decode_codeword(const ClassicalPolarCode& code, std::span<const double> llrs, int L);

struct ScResult {
    BitBlock u;
    BitBlock c;
    double metric;
};
ScResult sc_decode(const ClassicalPolarCode& code, std::span<const double> llrs);

// Decodes the all-zero word under BSC(p) LLRs with frozen values set to the
// syndrome (given in ascending frozen-set order). Every returned entry's c is
// a noise estimate consistent with the syndrome.
DecodeList scl_decode_syndrome(const ClassicalPolarCode& code, const BitBlock& syndrome, double p,
                               int L);

}  // namespace qpc
