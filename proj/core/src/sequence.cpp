#include "affilab/sequence.hpp"

#include <stdexcept>

namespace affilab {

std::uint8_t residue_index(char letter) {
    for (int i = 0; i < kNumResidueTypes; ++i) {
        if (kResidueLetters[i] == letter) return static_cast<std::uint8_t>(i);
    }
    throw std::invalid_argument(std::string("unknown residue letter '") + letter + "'");
}

char residue_letter(std::uint8_t index) {
    if (index >= kNumResidueTypes) {
        throw std::invalid_argument("residue index " + std::to_string(index) + " out of range [0,20)");
    }
    return kResidueLetters[index];
}

Sequence::Sequence(std::string_view letters) {
    if (letters.empty()) throw std::invalid_argument("sequence must have length >= 1");
    res_.reserve(letters.size());
    for (char c : letters) res_.push_back(residue_index(c));
}

Sequence Sequence::from_indices(std::vector<std::uint8_t> indices) {
    if (indices.empty()) throw std::invalid_argument("sequence must have length >= 1");
    for (auto v : indices) {
        if (v >= kNumResidueTypes) {
            throw std::invalid_argument("residue index " + std::to_string(v) + " out of range [0,20)");
        }
    }
    Sequence s;
    s.res_ = std::move(indices);
    return s;
}

std::string Sequence::str() const {
    std::string out;
    out.reserve(res_.size());
    for (auto v : res_) out.push_back(kResidueLetters[v]);
    return out;
}

Sequence Sequence::with_residue(std::size_t pos, std::uint8_t type) const {
    if (pos >= res_.size()) {
        throw std::invalid_argument("mutation position " + std::to_string(pos) + " out of range [0," +
                                    std::to_string(res_.size()) + ")");
    }
    if (type >= kNumResidueTypes) {
        throw std::invalid_argument("residue index " + std::to_string(type) + " out of range [0,20)");
    }
    std::vector<std::uint8_t> copy = res_;
    copy[pos] = type;
    return from_indices(std::move(copy));
}

Sequence operator+(const Sequence& a, const Sequence& b) {
    std::vector<std::uint8_t> joined = a.res_;
    joined.insert(joined.end(), b.res_.begin(), b.res_.end());
    return Sequence::from_indices(std::move(joined));
}

} // namespace affilab
