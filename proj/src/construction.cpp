#include "qpc/construction.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

namespace qpc {

std::string to_string(ConstructionKind kind) {
    switch (kind) {
        case ConstructionKind::PW: return "pw";
        case ConstructionKind::HPW: return "hpw";
        case ConstructionKind::RM: return "rm";
        case ConstructionKind::Q1: return "q1";
    }
    throw std::logic_error("unknown construction kind");
}

ConstructionKind construction_kind_from_string(const std::string& s) {
    if (s == "pw") return ConstructionKind::PW;
    if (s == "hpw") return ConstructionKind::HPW;
    if (s == "rm") return ConstructionKind::RM;
    if (s == "q1") return ConstructionKind::Q1;
    throw std::invalid_argument("unknown construction kind: " + s);
}

ConstructionSpec ConstructionSpec::pw(double beta) {
    ConstructionSpec spec;
    spec.kind = ConstructionKind::PW;
    spec.beta = beta;
    return spec;
}

ConstructionSpec ConstructionSpec::hpw() {
    ConstructionSpec spec;
    spec.kind = ConstructionKind::HPW;
    const double beta1 = default_beta();
    spec.hpw_terms = {{1.0, beta1}, {0.25, std::pow(beta1, 0.25)}};
    return spec;
}

ConstructionSpec ConstructionSpec::rm() {
    ConstructionSpec spec;
    spec.kind = ConstructionKind::RM;
    return spec;
}

ConstructionSpec ConstructionSpec::q1(int info_index) {
    ConstructionSpec spec;
    spec.kind = ConstructionKind::Q1;
    spec.q1_info_index = info_index;
    return spec;
}

void ConstructionSpec::validate(int n) const {
    const int N = 1 << n;
    switch (kind) {
        case ConstructionKind::PW:
            if (beta <= 1.0) throw std::invalid_argument("PW beta must be in (1, 2]");
            break;
        case ConstructionKind::HPW:
            if (hpw_terms.empty() || hpw_terms.front().coeff != 1.0)
                throw std::invalid_argument("HPW first coefficient must be 1");
            for (const auto& t : hpw_terms) {
                if (t.coeff < 0.0) throw std::invalid_argument("HPW coefficients must be nonnegative");
                if (t.beta < 1.0 || t.beta > 2.0) throw std::invalid_argument("HPW betas must lie in [1, 2]");
            }
            break;
        case ConstructionKind::RM:
            break;
        case ConstructionKind::Q1:
            if (q1_info_index <= 0 || q1_info_index >= N - 1)
                throw std::invalid_argument("Q1 information index must lie strictly inside (0, N-1)");
            break;
    }
}

double beta_expansion(int i, int n, double beta) {
    if (n < 1) throw std::invalid_argument("beta_expansion: n must be at least 1");
    if (i < 0 || i >= (1 << n)) throw std::out_of_range("beta_expansion: row index out of range");
    if (beta <= 0.0) throw std::invalid_argument("beta_expansion: beta must be positive");
    double score = 0.0;
    double pow_b = 1.0;
    for (int j = 0; j < n; ++j) {
        if ((i >> j) & 1) score += pow_b;
        pow_b *= beta;
    }
    return score;
}

double construction_score(int i, int n, const ConstructionSpec& spec) {
    switch (spec.kind) {
        case ConstructionKind::PW:
            return beta_expansion(i, n, std::min(spec.beta, 2.0));
        case ConstructionKind::HPW: {
            double score = 0.0;
            for (const auto& t : spec.hpw_terms) score += t.coeff * beta_expansion(i, n, t.beta);
            return score;
        }
        case ConstructionKind::RM: {
            if (i < 0 || i >= (1 << n)) throw std::out_of_range("construction_score: row index out of range");
            const int wt = __builtin_popcount(static_cast<unsigned>(i));
            return wt + static_cast<double>(i) / static_cast<double>(1 << n);
        }
        case ConstructionKind::Q1:
            throw std::invalid_argument("Q1 uses positional freezing, not row scores");
    }
    throw std::logic_error("unknown construction kind");
}

std::vector<int> rank_rows(int n, const ConstructionSpec& spec) {
    spec.validate(n);
    const int N = 1 << n;
    std::vector<double> score(N);
    for (int i = 0; i < N; ++i) score[i] = construction_score(i, n, spec);
    std::vector<int> order(N);
    std::iota(order.begin(), order.end(), 0);
    // Lexicographic on (score, index): exact float comparison, larger index
    // wins ties.
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (score[a] != score[b]) return score[a] > score[b];
        return a > b;
    });
    return order;
}

ClassicalPolarCode build_classical_code(int n, int K, const ConstructionSpec& spec,
                                        const BitBlock* frozen_values) {
    const int N = 1 << n;
    if (K < 0 || K > N) throw std::invalid_argument("build_classical_code: K out of range");
    spec.validate(n);

    ClassicalPolarCode code;
    code.n = n;
    code.N = N;
    code.K = K;
    code.is_frozen.assign(N, 1);

    if (spec.kind == ConstructionKind::Q1) {
        // Frozen prefix: the K highest row indices carry information.
        for (int i = N - K; i < N; ++i) code.is_frozen[i] = 0;
    } else {
        const std::vector<int> order = rank_rows(n, spec);
        for (int j = 0; j < K; ++j) code.is_frozen[order[j]] = 0;
    }
    for (int i = 0; i < N; ++i)
        (code.is_frozen[i] ? code.frozen_set : code.info_set).push_back(i);

    if (frozen_values != nullptr) {
        if (static_cast<int>(frozen_values->size()) != N)
            throw std::invalid_argument("build_classical_code: frozen_values must have length N");
        code.frozen_values = *frozen_values;
    } else {
        code.frozen_values.assign(N, 0);
    }
    return code;
}

namespace {

nlohmann::json construction_to_json(const ConstructionSpec& spec) {
    nlohmann::json j;
    j["kind"] = to_string(spec.kind);
    switch (spec.kind) {
        case ConstructionKind::PW:
            j["beta"] = spec.beta;
            break;
        case ConstructionKind::HPW: {
            nlohmann::json terms = nlohmann::json::array();
            for (const auto& t : spec.hpw_terms) terms.push_back({t.coeff, t.beta});
            j["hpw_terms"] = terms;
            break;
        }
        case ConstructionKind::RM:
            break;
        case ConstructionKind::Q1:
            j["q1_info_index"] = spec.q1_info_index;
            break;
    }
    return j;
}

}  // namespace

std::string classical_code_to_json(const ClassicalPolarCode& code, const ConstructionSpec& spec) {
    nlohmann::json j;
    j["n"] = code.n;
    j["K"] = code.K;
    j["construction"] = construction_to_json(spec);
    j["info_set"] = code.info_set;
    j["frozen_set"] = code.frozen_set;
    return j.dump(2);
}

}  // namespace qpc
