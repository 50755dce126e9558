#include "qpc/decision.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>
#include <vector>

#include <json.hpp>

namespace qpc {

namespace {

std::uint64_t entry_label_key(const QuantumPolarCode& qpc, const DecodeEntry& e) {
    // u = cE, so the label of c is u restricted to the logical set.
    std::uint64_t key = 0;
    for (std::size_t j = 0; j < qpc.logical.size(); ++j)
        if (e.u[qpc.logical[j]]) key |= std::uint64_t{1} << j;
    return key;
}

}  // namespace

std::string decision_to_json(const Decision& d) {
    nlohmann::json j;
    j["chosen_label"] = d.chosen_label;
    j["correction_weight"] = weight(d.correction);
    nlohmann::json scores = nlohmann::json::object();
    for (const auto& [label, score] : d.per_class_score) scores[std::to_string(label)] = score;
    j["per_class_score"] = scores;
    j["tie_broken"] = d.tie_broken;
    return j.dump();
}

Decision scl_e_decide(const QuantumPolarCode& qpc, const DecodeList& list, TieRng& rng) {
    if (list.entries.empty()) throw std::invalid_argument("scl_e_decide: empty list");

    int min_w = std::numeric_limits<int>::max();
    std::vector<int> weights(list.entries.size());
    std::vector<std::uint64_t> labels(list.entries.size());
    std::map<std::uint64_t, int> class_min_w;
    for (std::size_t i = 0; i < list.entries.size(); ++i) {
        weights[i] = weight(list.entries[i].c);
        labels[i] = entry_label_key(qpc, list.entries[i]);
        auto [it, fresh] = class_min_w.emplace(labels[i], weights[i]);
        if (!fresh) it->second = std::min(it->second, weights[i]);
        min_w = std::min(min_w, weights[i]);
    }

    // Classes achieving the global minimum weight, ascending by label so the
    // draw matches exact_mwd's ordering for the same rng state.
    std::vector<std::uint64_t> tied;
    for (const auto& [label, w] : class_min_w)
        if (w == min_w) tied.push_back(label);

    Decision d;
    for (const auto& [label, w] : class_min_w) d.per_class_score[label] = -w;
    if (tied.size() == 1) {
        d.chosen_label = tied.front();
    } else {
        std::uniform_int_distribution<std::size_t> pick(0, tied.size() - 1);
        d.chosen_label = tied[pick(rng)];
        d.tie_broken = true;
    }
    for (std::size_t i = 0; i < list.entries.size(); ++i) {
        if (weights[i] == min_w && labels[i] == d.chosen_label) {
            d.correction = list.entries[i].c;
            break;
        }
    }
    return d;
}

double coset_score(const WeightHistogram& hist, double p) {
    if (!(p > 0.0 && p < 0.5)) throw std::domain_error("coset_score: p must lie in (0, 0.5)");
    if (hist.empty()) return -std::numeric_limits<double>::infinity();
    const double log_q = std::log(p) - std::log1p(-p);
    // log-sum-exp over log N(w) + w log q, weights ascending for determinism.
    double max_term = -std::numeric_limits<double>::infinity();
    for (const auto& [w, count] : hist)
        max_term = std::max(max_term, std::log(static_cast<double>(count)) + w * log_q);
    double acc = 0.0;
    for (const auto& [w, count] : hist)
        acc += std::exp(std::log(static_cast<double>(count)) + w * log_q - max_term);
    return max_term + std::log(acc);
}

Decision scl_c_decide(const QuantumPolarCode& qpc, const DecodeList& list, double p, TieRng& rng) {
    if (list.entries.empty()) throw std::invalid_argument("scl_c_decide: empty list");
    // Consumes the rng exactly as scl_e_decide does, so tie decisions on the
    // same trial stream stay correlated.
    const Decision e_decision = scl_e_decide(qpc, list, rng);

    std::set<BitBlock> seen;
    std::map<std::uint64_t, WeightHistogram> hist;
    std::map<std::uint64_t, std::pair<int, const DecodeEntry*>> best_in_class;
    for (const auto& entry : list.entries) {
        if (!seen.insert(entry.c).second) continue;  // duplicate noise pattern
        const std::uint64_t label = entry_label_key(qpc, entry);
        const int w = weight(entry.c);
        ++hist[label][w];
        auto it = best_in_class.find(label);
        if (it == best_in_class.end() || w < it->second.first) best_in_class[label] = {w, &entry};
    }

    Decision d;
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& [label, h] : hist) {
        const double score = coset_score(h, p);
        d.per_class_score[label] = score;
        best = std::max(best, score);
    }
    std::vector<std::uint64_t> tied;
    for (const auto& [label, score] : d.per_class_score)
        if (score == best) tied.push_back(label);

    if (tied.size() == 1) {
        d.chosen_label = tied.front();
    } else {
        d.tie_broken = true;
        if (std::find(tied.begin(), tied.end(), e_decision.chosen_label) != tied.end())
            d.chosen_label = e_decision.chosen_label;
        else
            d.chosen_label = tied.front();
    }
    d.correction = best_in_class.at(d.chosen_label).second->c;
    return d;
}

CosetEnumeration enumerate_cosets(const QuantumPolarCode& qpc, const BitBlock& syndrome) {
    if (qpc.N > 32) throw std::invalid_argument("enumerate_cosets: blocklength too large");
    if (syndrome.size() != qpc.frozen_z.size())
        throw std::invalid_argument("enumerate_cosets: syndrome length mismatch");
    const int K = qpc.K();
    const int num_stab = static_cast<int>(qpc.frozen_x.size());  // N - Kx

    CosetEnumeration out;
    out.spectrum.provenance = ClassSpectrum::Provenance::Exhaustive;

    BitBlock u(qpc.N, 0);
    for (std::size_t j = 0; j < syndrome.size(); ++j) u[qpc.frozen_z[j]] = syndrome[j];
    for (std::uint64_t label = 0; label < (std::uint64_t{1} << K); ++label) {
        for (int j = 0; j < K; ++j) u[qpc.logical[j]] = (label >> j) & 1;
        WeightHistogram& h = out.spectrum.hist[label];
        int best_w = std::numeric_limits<int>::max();
        for (std::uint64_t offset = 0; offset < (std::uint64_t{1} << num_stab); ++offset) {
            for (int j = 0; j < num_stab; ++j) u[qpc.frozen_x[j]] = (offset >> j) & 1;
            const BitBlock e = polar_transform(u);
            const int w = weight(e);
            ++h[w];
            if (w < best_w) {
                best_w = w;
                out.min_rep[label] = e;
            }
        }
    }
    return out;
}

namespace {

Decision mwd_from_enumeration(const CosetEnumeration& enumeration, TieRng& rng) {
    Decision d;
    int min_w = std::numeric_limits<int>::max();
    for (const auto& [label, h] : enumeration.spectrum.hist) {
        const int w = h.begin()->first;
        d.per_class_score[label] = -w;
        min_w = std::min(min_w, w);
    }
    std::vector<std::uint64_t> tied;
    for (const auto& [label, score] : d.per_class_score)
        if (score == -min_w) tied.push_back(label);
    if (tied.size() == 1) {
        d.chosen_label = tied.front();
    } else {
        std::uniform_int_distribution<std::size_t> pick(0, tied.size() - 1);
        d.chosen_label = tied[pick(rng)];
        d.tie_broken = true;
    }
    d.correction = enumeration.min_rep.at(d.chosen_label);
    return d;
}

}  // namespace

Decision exact_mwd(const QuantumPolarCode& qpc, const BitBlock& syndrome, TieRng& rng) {
    return mwd_from_enumeration(enumerate_cosets(qpc, syndrome), rng);
}

Decision exact_mld(const QuantumPolarCode& qpc, const BitBlock& syndrome, double p, TieRng& rng) {
    const CosetEnumeration enumeration = enumerate_cosets(qpc, syndrome);
    const Decision mwd = mwd_from_enumeration(enumeration, rng);

    Decision d;
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& [label, h] : enumeration.spectrum.hist) {
        const double score = coset_score(h, p);
        d.per_class_score[label] = score;
        best = std::max(best, score);
    }
    std::vector<std::uint64_t> tied;
    for (const auto& [label, score] : d.per_class_score)
        if (score == best) tied.push_back(label);
    if (tied.size() == 1) {
        d.chosen_label = tied.front();
    } else {
        d.tie_broken = true;
        if (std::find(tied.begin(), tied.end(), mwd.chosen_label) != tied.end())
            d.chosen_label = mwd.chosen_label;
        else
            d.chosen_label = tied.front();
    }
    d.correction = enumeration.min_rep.at(d.chosen_label);
    return d;
}

}  // namespace qpc
