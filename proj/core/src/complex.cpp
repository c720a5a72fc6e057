#include "affilab/complex.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace affilab {

std::size_t ComplexLayout::global_index(Segment seg, std::size_t local) const {
    switch (seg) {
    case Segment::Antibody:
        if (local >= antibody.size()) throw std::out_of_range("antibody local index " + std::to_string(local));
        return local;
    case Segment::Linker:
        if (local >= linker_length()) throw std::out_of_range("linker local index " + std::to_string(local));
        return antibody.size() + local;
    case Segment::Antigen:
        if (local >= antigen.size()) throw std::out_of_range("antigen local index " + std::to_string(local));
        return antigen_offset() + local;
    }
    throw std::invalid_argument("unknown segment");
}

ComplexLayout make_complex(const Sequence& antibody, const Sequence& antigen,
                           int linker_repeats, std::vector<std::uint32_t> cdr_positions) {
    if (linker_repeats < 0) {
        throw std::invalid_argument("linker_repeats must be >= 0, got " + std::to_string(linker_repeats));
    }
    std::sort(cdr_positions.begin(), cdr_positions.end());
    cdr_positions.erase(std::unique(cdr_positions.begin(), cdr_positions.end()), cdr_positions.end());
    for (auto p : cdr_positions) {
        if (p >= antibody.size()) {
            throw std::invalid_argument("cdr position " + std::to_string(p) + " out of range [0," +
                                        std::to_string(antibody.size()) + ")");
        }
    }

    Sequence full = antibody;
    if (linker_repeats > 0) {
        std::string linker;
        linker.reserve(5 * static_cast<std::size_t>(linker_repeats));
        for (int r = 0; r < linker_repeats; ++r) linker += "GGGGS";
        full = full + Sequence(linker);
    }
    full = full + antigen;

    return ComplexLayout{antibody, antigen, linker_repeats, std::move(cdr_positions), std::move(full)};
}

} // namespace affilab
