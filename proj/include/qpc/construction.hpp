#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "qpc/bits.hpp"

namespace qpc {

enum class ConstructionKind { PW, HPW, RM, Q1 };

std::string to_string(ConstructionKind kind);
ConstructionKind construction_kind_from_string(const std::string& s);

struct HpwTerm {
    double coeff;
    double beta;
};

// Parameters selecting one of the row-ranking rules (PW, HPW, RM) or the
// positional Q1 rule, which freezes a prefix in Z and a suffix in X.
struct ConstructionSpec {
    ConstructionKind kind = ConstructionKind::PW;
    double beta = default_beta();     // PW only
    std::vector<HpwTerm> hpw_terms;   // HPW only; first coefficient must be 1
    int q1_info_index = -1;           // Q1 only

    static double default_beta() { return std::pow(2.0, 0.25); }

    static ConstructionSpec pw(double beta = default_beta());
    static ConstructionSpec hpw();  // order 2: c2 = 1/4, beta1 = 2^(1/4) = beta2^4
    static ConstructionSpec rm();
    static ConstructionSpec q1(int info_index);

    // Throws std::invalid_argument on malformed parameters. PW beta above 2 is
    // clamped to 2 (same ordering); beta <= 1 is rejected for PW.
    void validate(int n) const;
};

// bin(i)_beta = sum_j B_j beta^j where bin(i) = B_{n-1}...B_0.
// Throws std::out_of_range unless 0 <= i < 2^n; std::invalid_argument for beta <= 0.
double beta_expansion(int i, int n, double beta);

// Row-ranking score: PW -> bin(i)_beta, HPW -> sum_a c_a bin(i)_{beta_a},
// RM -> wt(bin(i)) + i/N. Throws std::invalid_argument for a Q1 spec.
double construction_score(int i, int n, const ConstructionSpec& spec);

// All rows 0..N-1 ordered by score descending; exact score ties broken by
// larger row index first.
std::vector<int> rank_rows(int n, const ConstructionSpec& spec);

struct ClassicalPolarCode {
    int n = 0;
    int N = 0;
    int K = 0;
    std::vector<int> info_set;     // ascending
    std::vector<int> frozen_set;   // ascending
    std::vector<Bit> is_frozen;    // size-N mask
    BitBlock frozen_values;        // size N; entries at info positions unused
};

// Information set = top-K of rank_rows. A Q1 spec takes the K highest row
// indices (frozen prefix). frozen_values defaults to all-zero.
ClassicalPolarCode build_classical_code(int n, int K, const ConstructionSpec& spec,
                                        const BitBlock* frozen_values = nullptr);

std::string classical_code_to_json(const ClassicalPolarCode& code, const ConstructionSpec& spec);

}  // namespace qpc
