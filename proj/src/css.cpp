#include "qpc/css.hpp"

#include <algorithm>
#include <stdexcept>

#include <json.hpp>

namespace qpc {

namespace {

void finalize(QuantumPolarCode& qpc, const std::vector<Bit>& frozen_x_mask,
              const std::vector<Bit>& frozen_z_mask) {
    const int N = qpc.N;
    qpc.in_logical.assign(N, 0);
    for (int i = 0; i < N; ++i) {
        if (frozen_x_mask[i] && frozen_z_mask[i])
            throw std::invalid_argument("CSS condition violated: row frozen in both bases");
        (frozen_x_mask[i] ? qpc.frozen_x : qpc.a_x).push_back(i);
        (frozen_z_mask[i] ? qpc.frozen_z : qpc.a_z).push_back(i);
        if (!frozen_x_mask[i] && !frozen_z_mask[i]) {
            qpc.logical.push_back(i);
            qpc.in_logical[i] = 1;
        }
    }
    qpc.Kx = static_cast<int>(qpc.a_x.size());
    qpc.Kz = static_cast<int>(qpc.a_z.size());
    if (qpc.K() != qpc.Kx + qpc.Kz - N || qpc.K() < 1)
        throw std::invalid_argument("quantum polar code must encode at least one qubit");
}

}  // namespace

ClassicalPolarCode QuantumPolarCode::z_code() const {
    ClassicalPolarCode code;
    code.n = n;
    code.N = N;
    code.K = Kz;
    code.info_set = a_z;
    code.frozen_set = frozen_z;
    code.is_frozen.assign(N, 0);
    for (int i : frozen_z) code.is_frozen[i] = 1;
    code.frozen_values.assign(N, 0);
    return code;
}

QuantumPolarCode build_qpc(int n, int Kx, int Kz, const ConstructionSpec& spec) {
    const int N = 1 << n;
    if (Kx + Kz <= N) throw std::invalid_argument("build_qpc: Kx + Kz must exceed N");
    spec.validate(n);

    QuantumPolarCode qpc;
    qpc.n = n;
    qpc.N = N;
    qpc.construction = spec;

    std::vector<Bit> frozen_x_mask(N, 0), frozen_z_mask(N, 0);
    if (spec.kind == ConstructionKind::Q1) {
        const int i = spec.q1_info_index;
        if (Kz != N - i || Kx != i + 1)
            throw std::invalid_argument("build_qpc: Q1 requires Kz = N - i and Kx = i + 1");
        for (int j = 0; j < i; ++j) frozen_z_mask[j] = 1;
        for (int j = i + 1; j < N; ++j) frozen_x_mask[j] = 1;
    } else {
        const std::vector<int> order = rank_rows(n, spec);
        for (int j = Kz; j < N; ++j) frozen_z_mask[order[j]] = 1;   // lowest scores
        for (int j = 0; j < N - Kx; ++j) frozen_x_mask[order[j]] = 1;  // highest scores
    }
    finalize(qpc, frozen_x_mask, frozen_z_mask);
    return qpc;
}

QuantumPolarCode build_q1_qpc(int n, int info_index) {
    const int N = 1 << n;
    return build_qpc(n, info_index + 1, N - info_index, ConstructionSpec::q1(info_index));
}

QuantumPolarCode qpc_from_frozen_sets(int n, std::vector<int> frozen_x, std::vector<int> frozen_z,
                                      const ConstructionSpec& spec) {
    const int N = 1 << n;
    QuantumPolarCode qpc;
    qpc.n = n;
    qpc.N = N;
    qpc.construction = spec;
    std::vector<Bit> fx(N, 0), fz(N, 0);
    for (int i : frozen_x) fx.at(i) = 1;
    for (int i : frozen_z) fz.at(i) = 1;
    finalize(qpc, fx, fz);
    return qpc;
}

bool verify_css(const QuantumPolarCode& qpc) {
    std::vector<Bit> fx(qpc.N, 0);
    for (int i : qpc.frozen_x) fx[i] = 1;
    for (int i : qpc.frozen_z)
        if (fx[i]) return false;
    return true;
}

BitBlock x_syndrome(const QuantumPolarCode& qpc, const BitBlock& e) {
    if (static_cast<int>(e.size()) != qpc.N) throw std::invalid_argument("x_syndrome: length mismatch");
    const BitBlock t = polar_transform(e);
    BitBlock s;
    s.reserve(qpc.frozen_z.size());
    for (int i : qpc.frozen_z) s.push_back(t[i]);
    return s;
}

BitBlock class_label(const QuantumPolarCode& qpc, const BitBlock& e) {
    if (static_cast<int>(e.size()) != qpc.N) throw std::invalid_argument("class_label: length mismatch");
    const BitBlock t = polar_transform(e);
    BitBlock label;
    label.reserve(qpc.logical.size());
    for (int i : qpc.logical) label.push_back(t[i]);
    return label;
}

std::uint64_t label_key(const BitBlock& label) {
    if (label.size() > 64) throw std::invalid_argument("label_key: more than 64 logical qubits");
    std::uint64_t key = 0;
    for (std::size_t j = 0; j < label.size(); ++j)
        if (label[j]) key |= std::uint64_t{1} << j;
    return key;
}

std::uint64_t class_label_key(const QuantumPolarCode& qpc, const BitBlock& e) {
    return label_key(class_label(qpc, e));
}

bool logical_x_error(const QuantumPolarCode& qpc, const BitBlock& noise, const BitBlock& correction) {
    const BitBlock diff = xor_blocks(noise, correction);
    const BitBlock t = polar_transform(diff);
    for (int i : qpc.frozen_z)
        if (t[i]) throw std::logic_error("logical_x_error: correction does not reproduce the syndrome");
    for (int i : qpc.logical)
        if (t[i]) return true;
    return false;
}

QuantumPolarCode mirror(const QuantumPolarCode& qpc) {
    const int N = qpc.N;
    QuantumPolarCode m;
    m.n = qpc.n;
    m.N = N;
    m.construction = qpc.construction;
    std::vector<Bit> fx(N, 0), fz(N, 0);
    for (int i : qpc.frozen_z) fx[N - 1 - i] = 1;
    for (int i : qpc.frozen_x) fz[N - 1 - i] = 1;
    finalize(m, fx, fz);
    return m;
}

BitBlock reversed(const BitBlock& e) { return BitBlock(e.rbegin(), e.rend()); }

std::string qpc_to_json(const QuantumPolarCode& qpc) {
    nlohmann::json j;
    j["n"] = qpc.n;
    j["K_X"] = qpc.Kx;
    j["K_Z"] = qpc.Kz;
    nlohmann::json c;
    c["kind"] = to_string(qpc.construction.kind);
    switch (qpc.construction.kind) {
        case ConstructionKind::PW:
            c["beta"] = qpc.construction.beta;
            break;
        case ConstructionKind::HPW: {
            nlohmann::json terms = nlohmann::json::array();
            for (const auto& t : qpc.construction.hpw_terms) terms.push_back({t.coeff, t.beta});
            c["hpw_terms"] = terms;
            break;
        }
        case ConstructionKind::RM:
            break;
        case ConstructionKind::Q1:
            c["q1_info_index"] = qpc.construction.q1_info_index;
            break;
    }
    j["construction"] = c;
    j["frozen_x"] = qpc.frozen_x;
    j["frozen_z"] = qpc.frozen_z;
    j["logical"] = qpc.logical;
    return j.dump(2);
}

}  // namespace qpc
