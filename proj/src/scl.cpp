#include "qpc/scl.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

namespace qpc {

double bsc_llr(Bit y_bit, double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::domain_error("bsc_llr: p must lie in (0,1)");
    const double mag = std::log((1.0 - p) / p);
    return y_bit ? -mag : mag;
}

double check_node(double a, double b) {
    // Exact Jacobian form of 2 atanh(tanh(a/2) tanh(b/2)).
    const double m = std::min(std::fabs(a), std::fabs(b));
    double r = ((a < 0.0) != (b < 0.0)) ? -m : m;
    r += std::log1p(std::exp(-std::fabs(a + b))) - std::log1p(std::exp(-std::fabs(a - b)));
    return r;
}

double bit_node(double a, double b, Bit u) { return b + (u ? -a : a); }

double pm_update(double metric, double decision_llr, Bit u) {
    const double x = u ? -decision_llr : decision_llr;
    const double penalty = x >= 0.0 ? std::log1p(std::exp(-x)) : -x + std::log1p(std::exp(x));
    return metric - penalty;
}

std::string trace_to_json(const DecodeTrace& trace) {
    nlohmann::json j;
    j["stage_metrics"] = trace.stage_metrics;
    return j.dump();
}

SclDecoder::SclDecoder(const ClassicalPolarCode& code, int list_size)
    : n_(code.n), N_(code.N), L_(list_size), is_frozen_(code.is_frozen),
      default_frozen_(code.frozen_values) {
    if (L_ < 1) throw std::invalid_argument("SclDecoder: list size must be at least 1");
    // Layer-0 entry b corresponds to channel position bitrev(b): the layered
    // f/g recursion realizes the bit-reversed form of the transform.
    bitrev_.resize(N_);
    for (int i = 0; i < N_; ++i) {
        int r = 0;
        for (int bit = 0; bit < n_; ++bit) r |= ((i >> bit) & 1) << (n_ - 1 - bit);
        bitrev_[i] = r;
    }
    const int cap = 2 * L_;
    llr_bank_.resize(n_ + 1);
    bit_bank_.resize(n_ + 1);
    llr_slot_.assign(n_ + 1, std::vector<int>(cap, -1));
    bit_slot_.assign(n_ + 1, std::vector<int>(cap, -1));
    llr_refs_.resize(n_ + 1);
    bit_refs_.resize(n_ + 1);
    llr_free_.resize(n_ + 1);
    bit_free_.resize(n_ + 1);
    metric_.assign(cap, 0.0);
    active_.assign(cap, 0);
}

int SclDecoder::claim_llr_slot(int layer) {
    auto& free = llr_free_[layer];
    if (!free.empty()) {
        const int s = free.back();
        free.pop_back();
        llr_refs_[layer][s] = 1;
        return s;
    }
    llr_bank_[layer].emplace_back(std::size_t{1} << (n_ - layer));
    llr_refs_[layer].push_back(1);
    return static_cast<int>(llr_bank_[layer].size()) - 1;
}

int SclDecoder::claim_bit_slot(int layer) {
    auto& free = bit_free_[layer];
    if (!free.empty()) {
        const int s = free.back();
        free.pop_back();
        bit_refs_[layer][s] = 1;
        return s;
    }
    bit_bank_[layer].emplace_back(std::size_t{2} << (n_ - layer), Bit{0});
    bit_refs_[layer].push_back(1);
    return static_cast<int>(bit_bank_[layer].size()) - 1;
}

const double* SclDecoder::llr_read(int layer, int path) const {
    return llr_bank_[layer][llr_slot_[layer][path]].data();
}

double* SclDecoder::llr_write(int layer, int path) {
    const int s = llr_slot_[layer][path];
    if (llr_refs_[layer][s] == 1) return llr_bank_[layer][s].data();
    // Callers overwrite the whole array, so a fresh slot needs no copy.
    --llr_refs_[layer][s];
    const int fresh = claim_llr_slot(layer);
    llr_slot_[layer][path] = fresh;
    return llr_bank_[layer][fresh].data();
}

const Bit* SclDecoder::bit_read(int layer, int path) const {
    return bit_bank_[layer][bit_slot_[layer][path]].data();
}

Bit* SclDecoder::bit_write(int layer, int path) {
    const int s = bit_slot_[layer][path];
    if (bit_refs_[layer][s] == 1) return bit_bank_[layer][s].data();
    --bit_refs_[layer][s];
    const int fresh = claim_bit_slot(layer);
    bit_bank_[layer][fresh] = bit_bank_[layer][s];
    bit_slot_[layer][path] = fresh;
    return bit_bank_[layer][fresh].data();
}

int SclDecoder::clone_path(int path) {
    int id;
    if (!free_paths_.empty()) {
        id = free_paths_.back();
        free_paths_.pop_back();
    } else {
        throw std::logic_error("SclDecoder: path capacity exhausted");
    }
    for (int l = 0; l <= n_; ++l) {
        llr_slot_[l][id] = llr_slot_[l][path];
        ++llr_refs_[l][llr_slot_[l][path]];
        bit_slot_[l][id] = bit_slot_[l][path];
        ++bit_refs_[l][bit_slot_[l][path]];
    }
    metric_[id] = metric_[path];
    active_[id] = 1;
    return id;
}

void SclDecoder::release_path(int path) {
    for (int l = 0; l <= n_; ++l) {
        int s = llr_slot_[l][path];
        if (--llr_refs_[l][s] == 0) llr_free_[l].push_back(s);
        s = bit_slot_[l][path];
        if (--bit_refs_[l][s] == 0) bit_free_[l].push_back(s);
        llr_slot_[l][path] = bit_slot_[l][path] = -1;
    }
    active_[path] = 0;
    free_paths_.push_back(path);
}

void SclDecoder::reset(std::span<const double> channel_llrs) {
    for (int l = 0; l <= n_; ++l) {
        std::fill(llr_refs_[l].begin(), llr_refs_[l].end(), 0);
        std::fill(bit_refs_[l].begin(), bit_refs_[l].end(), 0);
        llr_free_[l].clear();
        bit_free_[l].clear();
        for (int s = static_cast<int>(llr_bank_[l].size()) - 1; s >= 0; --s) llr_free_[l].push_back(s);
        for (int s = static_cast<int>(bit_bank_[l].size()) - 1; s >= 0; --s) bit_free_[l].push_back(s);
    }
    std::fill(active_.begin(), active_.end(), Bit{0});
    free_paths_.clear();
    for (int p = static_cast<int>(active_.size()) - 1; p >= 1; --p) free_paths_.push_back(p);

    active_[0] = 1;
    metric_[0] = 0.0;
    order_.assign(1, 0);
    for (int l = 0; l <= n_; ++l) {
        llr_slot_[l][0] = claim_llr_slot(l);
        bit_slot_[l][0] = claim_bit_slot(l);
    }
    auto& chan = llr_bank_[0][llr_slot_[0][0]];
    for (int i = 0; i < N_; ++i)
        chan[i] = std::clamp(channel_llrs[bitrev_[i]], -kLlrSaturation, kLlrSaturation);
}

void SclDecoder::calc_llr(int layer, int phase) {
    if (layer == 0) return;
    if ((phase & 1) == 0) calc_llr(layer - 1, phase >> 1);
    const std::size_t len = std::size_t{1} << (n_ - layer);
    for (int p : order_) {
        const double* src = llr_read(layer - 1, p);
        if ((phase & 1) == 0) {
            double* dst = llr_write(layer, p);
            for (std::size_t b = 0; b < len; ++b) dst[b] = check_node(src[2 * b], src[2 * b + 1]);
        } else {
            const Bit* bits = bit_read(layer, p);
            double* dst = llr_write(layer, p);
            for (std::size_t b = 0; b < len; ++b)
                dst[b] = bit_node(src[2 * b], src[2 * b + 1], bits[2 * b]);
        }
    }
}

void SclDecoder::update_bits(int layer, int phase) {
    const int half_phase = phase >> 1;
    const std::size_t len = std::size_t{1} << (n_ - layer);
    const int slot = half_phase & 1;
    for (int p : order_) {
        const Bit* src = bit_read(layer, p);
        Bit* dst = bit_write(layer - 1, p);
        for (std::size_t b = 0; b < len; ++b) {
            dst[2 * (2 * b) + slot] = src[2 * b] ^ src[2 * b + 1];
            dst[2 * (2 * b + 1) + slot] = src[2 * b + 1];
        }
    }
    if (half_phase & 1) update_bits(layer - 1, half_phase);
}

void SclDecoder::extend_frozen(int phase, const BitBlock& frozen_values) {
    const Bit u = frozen_values[phase];
    const int slot = phase & 1;
    for (int p : order_) {
        metric_[p] = pm_update(metric_[p], llr_read(n_, p)[0], u);
        bit_write(n_, p)[slot] = u;
    }
}

void SclDecoder::extend_info(int phase) {
    struct Cand {
        int parent;
        Bit bit;
        double metric;
    };
    std::vector<Cand> cands;
    cands.reserve(2 * order_.size());
    for (int p : order_) {
        const double llr = llr_read(n_, p)[0];
        cands.push_back({p, 0, pm_update(metric_[p], llr, 0)});
        cands.push_back({p, 1, pm_update(metric_[p], llr, 1)});
    }
    const std::size_t keep = std::min<std::size_t>(L_, cands.size());
    if (cands.size() > keep) {
        // Stable sort keeps (seniority, 0-before-1) order among equal metrics.
        std::stable_sort(cands.begin(), cands.end(),
                         [](const Cand& a, const Cand& b) { return a.metric > b.metric; });
    }

    std::vector<int> survivors(active_.size(), 0);
    for (std::size_t i = 0; i < keep; ++i) ++survivors[cands[i].parent];
    for (int p : order_)
        if (survivors[p] == 0) release_path(p);

    std::vector<int> second_child(active_.size(), -1);
    for (int p = 0; p < static_cast<int>(active_.size()); ++p)
        if (survivors[p] == 2) second_child[p] = clone_path(p);

    const int slot = phase & 1;
    std::vector<int> new_order;
    new_order.reserve(keep);
    std::vector<Bit> parent_used(active_.size(), 0);
    for (std::size_t i = 0; i < keep; ++i) {
        const Cand& c = cands[i];
        int id;
        if (!parent_used[c.parent]) {
            parent_used[c.parent] = 1;
            id = c.parent;
        } else {
            id = second_child[c.parent];
        }
        bit_write(n_, id)[slot] = c.bit;
        metric_[id] = c.metric;
        new_order.push_back(id);
    }
    order_ = std::move(new_order);
}

DecodeList SclDecoder::decode(std::span<const double> channel_llrs, DecodeTrace* trace) {
    return decode_with_frozen(channel_llrs, default_frozen_, trace);
}

DecodeList SclDecoder::decode_with_frozen(std::span<const double> channel_llrs,
                                          const BitBlock& frozen_values, DecodeTrace* trace) {
    if (static_cast<int>(channel_llrs.size()) != N_)
        throw std::invalid_argument("SclDecoder: LLR vector length mismatch");
    if (static_cast<int>(frozen_values.size()) != N_)
        throw std::invalid_argument("SclDecoder: frozen value vector length mismatch");
    if (trace) trace->stage_metrics.clear();

    reset(channel_llrs);
    for (int phase = 0; phase < N_; ++phase) {
        calc_llr(n_, phase);
        if (is_frozen_[phase]) {
            extend_frozen(phase, frozen_values);
        } else {
            extend_info(phase);
            if (trace) {
                std::vector<double> stage;
                stage.reserve(order_.size());
                for (int p : order_) stage.push_back(metric_[p]);
                trace->stage_metrics.push_back(std::move(stage));
            }
        }
        if (phase & 1) update_bits(n_, phase);
    }

    DecodeList list;
    list.entries.reserve(order_.size());
    for (int p : order_) {
        DecodeEntry e;
        e.c.resize(N_);
        const Bit* bits = bit_read(0, p);
        for (int b = 0; b < N_; ++b) e.c[bitrev_[b]] = bits[2 * b];
        e.u = polar_transform(e.c);
        e.metric = metric_[p];
        list.entries.push_back(std::move(e));
    }
    std::stable_sort(list.entries.begin(), list.entries.end(),
                     [](const DecodeEntry& a, const DecodeEntry& b) { return a.metric > b.metric; });
    return list;
}

DecodeList scl_decode_codeword(const ClassicalPolarCode& code, std::span<const double> llrs, int L) {
    SclDecoder dec(code, L);
    return dec.decode(llrs);
}

ScResult sc_decode(const ClassicalPolarCode& code, std::span<const double> llrs) {
    DecodeList list = scl_decode_codeword(code, llrs, 1);
    const DecodeEntry& top = list.entries.front();
    return {top.u, top.c, top.metric};
}

DecodeList scl_decode_syndrome(const ClassicalPolarCode& code, const BitBlock& syndrome, double p,
                               int L) {
    if (syndrome.size() != code.frozen_set.size())
        throw std::invalid_argument("scl_decode_syndrome: syndrome length mismatch");
    BitBlock frozen(code.N, 0);
    for (std::size_t j = 0; j < syndrome.size(); ++j) frozen[code.frozen_set[j]] = syndrome[j];
    const std::vector<double> llrs(code.N, bsc_llr(0, p));
    SclDecoder dec(code, L);
    return dec.decode_with_frozen(llrs, frozen);
}

}  // namespace qpc
