#pragma once

#include <cstdint>
#include <vector>

#include "affilab/sequence.hpp"

namespace affilab {

enum class Segment { Antibody, Linker, Antigen };

// Antibody ++ (GGGGS x linker_repeats) ++ antigen, with the antibody's CDR
// positions singled out as the mutable/interacting set.
struct ComplexLayout {
    Sequence antibody;
    Sequence antigen;
    int linker_repeats = 0;
    std::vector<std::uint32_t> cdr_positions; // sorted, unique, < antibody length
    Sequence full;                            // concatenated complex sequence

    std::size_t antibody_length() const { return antibody.size(); }
    std::size_t linker_length() const { return 5 * static_cast<std::size_t>(linker_repeats); }
    std::size_t antigen_offset() const { return antibody.size() + linker_length(); }
    std::size_t total_length() const { return full.size(); }

    // (segment, local index) -> index into the concatenated sequence.
    // Throws std::out_of_range when the local index exceeds the segment.
    std::size_t global_index(Segment seg, std::size_t local) const;

    // CDR positions as indices into the concatenated sequence (the antibody
    // occupies the prefix, so these equal cdr_positions).
    const std::vector<std::uint32_t>& cdr_global() const { return cdr_positions; }
};

// Validates CDR positions (sorted/deduplicated internally) and builds the
// concatenated sequence.  linker_repeats >= 0; each repeat is "GGGGS".
ComplexLayout make_complex(const Sequence& antibody, const Sequence& antigen,
                           int linker_repeats, std::vector<std::uint32_t> cdr_positions);

} // namespace affilab
