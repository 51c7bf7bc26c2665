#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "emforms/errors.hpp"

namespace emforms {

/// A strictly increasing subset of {0, 1, 2, 3}, the label of a basis
/// p-form dx^{i₁}∧…∧dx^{i_p}. Stored as a bit set, so the increasing order
/// holds by construction.
class MultiIndex {
public:
    constexpr MultiIndex() = default;

    /// Build from an index list; the list must already be strictly increasing.
    MultiIndex(std::initializer_list<int> indices) {
        int last = -1;
        for (int i : indices) {
            if (i < 0 || i > 3) throw GradeError("multi-index entry out of range 0..3");
            if (i <= last) throw GradeError("multi-index must be strictly increasing");
            bits_ = static_cast<std::uint8_t>(bits_ | (1u << i));
            last = i;
        }
    }

    static constexpr MultiIndex from_bits(std::uint8_t bits) {
        MultiIndex m;
        m.bits_ = static_cast<std::uint8_t>(bits & 0xFu);
        return m;
    }

    constexpr std::uint8_t bits() const { return bits_; }
    constexpr int grade() const { return std::popcount(static_cast<unsigned>(bits_)); }
    constexpr bool contains(int i) const { return (bits_ >> i) & 1u; }
    constexpr bool empty() const { return bits_ == 0; }

    std::vector<int> indices() const {
        std::vector<int> out;
        for (int i = 0; i < 4; ++i)
            if (contains(i)) out.push_back(i);
        return out;
    }

    constexpr MultiIndex complement() const { return from_bits(static_cast<std::uint8_t>(~bits_ & 0xFu)); }
    constexpr MultiIndex without(int i) const { return from_bits(static_cast<std::uint8_t>(bits_ & ~(1u << i))); }

    /// Lexicographic order on the increasing index lists; this is the order
    /// components are stored and printed in.
    friend std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b) {
        auto ia = a.indices();
        auto ib = b.indices();
        return std::lexicographical_compare_three_way(ia.begin(), ia.end(), ib.begin(), ib.end());
    }
    friend constexpr bool operator==(const MultiIndex& a, const MultiIndex& b) { return a.bits_ == b.bits_; }

    std::string str() const {
        std::string s = "(";
        bool first = true;
        for (int i : indices()) {
            if (!first) s += ",";
            s += std::to_string(i);
            first = false;
        }
        return s + ")";
    }

private:
    std::uint8_t bits_ = 0;
};

/// All multi-indices of one grade in increasing lexicographic order.
inline std::vector<MultiIndex> multi_indices_of_grade(int grade) {
    std::vector<MultiIndex> out;
    for (unsigned b = 0; b < 16; ++b) {
        auto m = MultiIndex::from_bits(static_cast<std::uint8_t>(b));
        if (m.grade() == grade) out.push_back(m);
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Sign of dx^I ∧ dx^J relative to dx^{I∪J}; zero when I and J overlap.
constexpr int wedge_sign(MultiIndex a, MultiIndex b) {
    if (a.bits() & b.bits()) return 0;
    int swaps = 0;
    for (int i = 0; i < 4; ++i) {
        if (!a.contains(i)) continue;
        for (int j = 0; j < i; ++j)
            if (b.contains(j)) ++swaps;
    }
    return (swaps % 2) ? -1 : 1;
}

/// Sign of the permutation taking `order` to `seq`, where both list the
/// same four distinct indices.
inline int permutation_sign(const std::array<int, 4>& seq, const std::array<int, 4>& order) {
    std::array<int, 4> pos{};
    for (int k = 0; k < 4; ++k) {
        int found = -1;
        for (int j = 0; j < 4; ++j)
            if (order[static_cast<std::size_t>(j)] == seq[static_cast<std::size_t>(k)]) found = j;
        if (found < 0) throw GradeError("permutation_sign: sequences are not permutations of each other");
        pos[static_cast<std::size_t>(k)] = found;
    }
    int inversions = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (pos[static_cast<std::size_t>(i)] > pos[static_cast<std::size_t>(j)]) ++inversions;
    return (inversions % 2) ? -1 : 1;
}

}  // namespace emforms
