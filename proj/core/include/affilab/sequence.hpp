#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace affilab {

// The 20 residue types, indexed alphabetically by one-letter code.
inline constexpr int kNumResidueTypes = 20;
inline constexpr std::array<char, kNumResidueTypes> kResidueLetters = {
    'A', 'C', 'D', 'E', 'F', 'G', 'H', 'I', 'K', 'L',
    'M', 'N', 'P', 'Q', 'R', 'S', 'T', 'V', 'W', 'Y'};

// Index of a one-letter code; throws std::invalid_argument on anything else.
std::uint8_t residue_index(char letter);
char residue_letter(std::uint8_t index);

// Immutable residue string over the 20-letter alphabet, length >= 1.
class Sequence {
public:
    explicit Sequence(std::string_view letters);
    static Sequence from_indices(std::vector<std::uint8_t> indices);

    std::size_t size() const { return res_.size(); }
    std::uint8_t operator[](std::size_t i) const { return res_[i]; }
    const std::vector<std::uint8_t>& indices() const { return res_; }
    std::string str() const;

    // Copy with position `pos` replaced by residue type `type`.
    Sequence with_residue(std::size_t pos, std::uint8_t type) const;

    // Concatenation.
    friend Sequence operator+(const Sequence& a, const Sequence& b);
    friend bool operator==(const Sequence& a, const Sequence& b) = default;

private:
    Sequence() = default;
    std::vector<std::uint8_t> res_;
};

} // namespace affilab
