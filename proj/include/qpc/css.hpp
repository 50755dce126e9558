#pragma once

#include <string>
#include <vector>

#include "qpc/bits.hpp"
#include "qpc/construction.hpp"

namespace qpc {

// CSS quantum polar code: two classical polar codes sharing the encoder E.
// Rows a_z of E generate C_Z; rows frozen_x generate the X-type stabilizers
// C_X^perp. The logical set is the intersection of the two information sets.
struct QuantumPolarCode {
    int n = 0;
    int N = 0;
    int Kx = 0;
    int Kz = 0;
    std::vector<int> a_x, a_z;            // information sets, ascending
    std::vector<int> frozen_x, frozen_z;  // complements, ascending
    std::vector<int> logical;             // a_x intersect a_z, ascending
    std::vector<Bit> in_logical;          // size-N mask
    ConstructionSpec construction;

    int K() const { return static_cast<int>(logical.size()); }

    // The classical code SCL decoders work on for X-type noise.
    ClassicalPolarCode z_code() const;
};

// PW/HPW/RM: freeze the N-Kz lowest-score rows in Z and the N-Kx highest in X.
// Q1: freeze rows 0..i-1 in Z and i+1..N-1 in X (requires Kz = N-i, Kx = i+1).
// Throws std::invalid_argument if Kx + Kz <= N or parameters are inconsistent.
QuantumPolarCode build_qpc(int n, int Kx, int Kz, const ConstructionSpec& spec);

QuantumPolarCode build_q1_qpc(int n, int info_index);

// Assembles a QPC from explicit frozen sets; throws std::invalid_argument when
// the CSS condition fails. Used for manual/test constructions.
QuantumPolarCode qpc_from_frozen_sets(int n, std::vector<int> frozen_x, std::vector<int> frozen_z,
                                      const ConstructionSpec& spec);

// True iff the X and Z frozen sets do not intersect.
bool verify_css(const QuantumPolarCode& qpc);

// (eE) restricted to the Z frozen set (ascending) -- the Z-stabilizer
// measurement outcomes for an X-type error e.
BitBlock x_syndrome(const QuantumPolarCode& qpc, const BitBlock& e);

// (eE) restricted to the logical set: the error-class label of e. Zero label
// with zero syndrome characterizes X-type stabilizers.
BitBlock class_label(const QuantumPolarCode& qpc, const BitBlock& e);

// Packs a label into an integer key, bit j = label[j]. Requires K <= 64.
std::uint64_t label_key(const BitBlock& label);

std::uint64_t class_label_key(const QuantumPolarCode& qpc, const BitBlock& e);

// True iff noise and correction differ by a logical operator. Throws
// std::logic_error when their syndromes disagree (a broken decoder, not a
// logical error).
bool logical_x_error(const QuantumPolarCode& qpc, const BitBlock& noise, const BitBlock& correction);

// The basis-swapped code: index i -> N-1-i exchanges the roles of X and Z.
// Z-type noise on `qpc` is decoded as X-type noise on mirror(qpc) with the
// error vector reversed.
QuantumPolarCode mirror(const QuantumPolarCode& qpc);

BitBlock reversed(const BitBlock& e);

std::string qpc_to_json(const QuantumPolarCode& qpc);

}  // namespace qpc
