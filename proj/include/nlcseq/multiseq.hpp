#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nlcseq/gf.hpp"

namespace nlcseq {

// Where a multisequence came from and with which parameters. Carried through
// file serialization so bound verification can refuse mismatched inputs.
// curve_q/d/delta_index/theta_index are zero when not applicable.
struct Provenance {
    std::string construction;  // "rational" | "hermitian-sigma" | "hermitian-phi" | "random" | "replay"
    int p = 0;
    int k = 0;
    std::uint32_t q = 0;       // field the entries live in
    unsigned curve_q = 0;      // Hermitian base parameter (entries live in its square)
    unsigned d = 0;            // rational construction only
    std::uint32_t delta_index = 0;
    std::uint32_t theta_index = 0;
    unsigned N = 0;
    unsigned M = 0;
    std::uint64_t seed = 0;    // random construction only
    bool small_q_warning = false;  // sigma run below its guaranteed range

    friend bool operator==(const Provenance&, const Provenance&) = default;
};

// N parallel sequences over one field, all the same length.
struct Multisequence {
    FieldCtxPtr ctx;
    std::vector<std::vector<FieldElem>> rows;
    Provenance prov;

    unsigned dim() const { return static_cast<unsigned>(rows.size()); }
    unsigned length() const {
        return rows.empty() ? 0 : static_cast<unsigned>(rows[0].size());
    }
};

}  // namespace nlcseq
