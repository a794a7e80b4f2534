#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "tracekc/logic/literal.hpp"

namespace tracekc {

// Sparse bitset over variable ids: only non-zero 64-bit words are stored,
// sorted by word index, so cost tracks the number of occupied words rather
// than the largest id.
class VarSet {
public:
    VarSet() = default;

    static VarSet of(std::initializer_list<VarId> vars);
    static VarSet range(VarId count);  // {0, ..., count-1}
    // Union of many sets in one sort-and-merge pass.
    static VarSet unite(std::span<const VarSet* const> sets);

    void insert(VarId v);
    void erase(VarId v);
    bool contains(VarId v) const;
    bool empty() const;
    std::size_t size() const;

    VarSet& operator|=(const VarSet& other);
    bool subset_of(const VarSet& other) const;
    std::optional<VarId> first_common(const VarSet& other) const;
    // Elements of *this not in `other` (and not in `excluded`, if given).
    std::size_t count_difference(const VarSet& other, const VarSet* excluded = nullptr) const;
    std::vector<VarId> difference(const VarSet& other) const;
    std::vector<VarId> to_vector() const;

    friend bool operator==(const VarSet& a, const VarSet& b);

private:
    struct Word {
        std::uint32_t index;
        std::uint64_t bits;
        bool operator==(const Word&) const = default;
    };
    std::vector<Word>::iterator find_word(std::uint32_t index);

    std::vector<Word> words_;
};

}  // namespace tracekc
