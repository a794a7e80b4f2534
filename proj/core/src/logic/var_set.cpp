#include "tracekc/logic/var_set.hpp"

#include <algorithm>
#include <bit>

namespace tracekc {

namespace {

constexpr std::uint64_t bit_of(VarId v) { return std::uint64_t{1} << (v % 64); }

}  // namespace

VarSet VarSet::of(std::initializer_list<VarId> vars) {
    VarSet s;
    for (VarId v : vars) s.insert(v);
    return s;
}

VarSet VarSet::range(VarId count) {
    VarSet s;
    s.words_.reserve((count + 63) / 64);
    for (std::uint32_t i = 0; i < count / 64; ++i) s.words_.push_back({i, ~std::uint64_t{0}});
    if (count % 64 != 0) s.words_.push_back({count / 64, (std::uint64_t{1} << (count % 64)) - 1});
    return s;
}

VarSet VarSet::unite(std::span<const VarSet* const> sets) {
    VarSet out;
    std::size_t total = 0;
    std::uint32_t lo = ~std::uint32_t{0}, hi = 0;
    for (const VarSet* s : sets) {
        if (s->words_.empty()) continue;
        total += s->words_.size();
        lo = std::min(lo, s->words_.front().index);
        hi = std::max(hi, s->words_.back().index);
    }
    if (total == 0) return out;

    if (std::size_t span = hi - lo + 1; span <= 2 * total) {
        // dense window: linear in inputs plus span
        std::vector<std::uint64_t> dense(span, 0);
        for (const VarSet* s : sets)
            for (const Word& w : s->words_) dense[w.index - lo] |= w.bits;
        for (std::size_t i = 0; i < span; ++i)
            if (dense[i]) out.words_.push_back({static_cast<std::uint32_t>(lo + i), dense[i]});
        return out;
    }

    out.words_.reserve(total);
    for (const VarSet* s : sets) out.words_.insert(out.words_.end(), s->words_.begin(), s->words_.end());
    auto by_index = [](const Word& a, const Word& b) { return a.index < b.index; };
    if (!std::is_sorted(out.words_.begin(), out.words_.end(), by_index))
        std::sort(out.words_.begin(), out.words_.end(), by_index);
    std::size_t n = 0;
    for (std::size_t i = 0; i < out.words_.size(); ++i) {
        if (n > 0 && out.words_[n - 1].index == out.words_[i].index)
            out.words_[n - 1].bits |= out.words_[i].bits;
        else
            out.words_[n++] = out.words_[i];
    }
    out.words_.resize(n);
    return out;
}

std::vector<VarSet::Word>::iterator VarSet::find_word(std::uint32_t index) {
    return std::lower_bound(words_.begin(), words_.end(), index,
                            [](const Word& w, std::uint32_t i) { return w.index < i; });
}

void VarSet::insert(VarId v) {
    std::uint32_t index = v / 64;
    if (words_.empty() || words_.back().index < index) {
        words_.push_back({index, bit_of(v)});
        return;
    }
    auto it = find_word(index);
    if (it != words_.end() && it->index == index)
        it->bits |= bit_of(v);
    else
        words_.insert(it, {index, bit_of(v)});
}

void VarSet::erase(VarId v) {
    auto it = find_word(v / 64);
    if (it == words_.end() || it->index != v / 64) return;
    it->bits &= ~bit_of(v);
    if (it->bits == 0) words_.erase(it);
}

bool VarSet::contains(VarId v) const {
    auto it = std::lower_bound(words_.begin(), words_.end(), v / 64,
                               [](const Word& w, std::uint32_t i) { return w.index < i; });
    return it != words_.end() && it->index == v / 64 && (it->bits & bit_of(v));
}

bool VarSet::empty() const { return words_.empty(); }

std::size_t VarSet::size() const {
    std::size_t n = 0;
    for (const Word& w : words_) n += std::popcount(w.bits);
    return n;
}

VarSet& VarSet::operator|=(const VarSet& other) {
    if (other.words_.empty()) return *this;
    if (words_.empty()) {
        words_ = other.words_;
        return *this;
    }
    std::vector<Word> merged;
    merged.reserve(words_.size() + other.words_.size());
    auto a = words_.cbegin(), b = other.words_.cbegin();
    while (a != words_.cend() || b != other.words_.end()) {
        if (b == other.words_.end() || (a != words_.cend() && a->index < b->index)) {
            merged.push_back(*a++);
        } else if (a == words_.cend() || b->index < a->index) {
            merged.push_back(*b++);
        } else {
            merged.push_back({a->index, a->bits | b->bits});
            ++a, ++b;
        }
    }
    words_ = std::move(merged);
    return *this;
}

bool VarSet::subset_of(const VarSet& other) const {
    auto b = other.words_.begin();
    for (const Word& w : words_) {
        while (b != other.words_.end() && b->index < w.index) ++b;
        if (b == other.words_.end() || b->index != w.index || (w.bits & ~b->bits)) return false;
    }
    return true;
}

std::optional<VarId> VarSet::first_common(const VarSet& other) const {
    auto a = words_.begin(), b = other.words_.begin();
    while (a != words_.end() && b != other.words_.end()) {
        if (a->index < b->index) {
            ++a;
        } else if (b->index < a->index) {
            ++b;
        } else {
            if (std::uint64_t both = a->bits & b->bits) return static_cast<VarId>(a->index * 64 + std::countr_zero(both));
            ++a, ++b;
        }
    }
    return std::nullopt;
}

std::size_t VarSet::count_difference(const VarSet& other, const VarSet* excluded) const {
    std::size_t n = 0;
    auto b = other.words_.begin();
    auto e = excluded ? excluded->words_.begin() : std::vector<Word>::const_iterator{};
    for (const Word& w : words_) {
        std::uint64_t bits = w.bits;
        while (b != other.words_.end() && b->index < w.index) ++b;
        if (b != other.words_.end() && b->index == w.index) bits &= ~b->bits;
        if (excluded) {
            while (e != excluded->words_.end() && e->index < w.index) ++e;
            if (e != excluded->words_.end() && e->index == w.index) bits &= ~e->bits;
        }
        n += std::popcount(bits);
    }
    return n;
}

std::vector<VarId> VarSet::difference(const VarSet& other) const {
    std::vector<VarId> out;
    auto b = other.words_.begin();
    for (const Word& w : words_) {
        std::uint64_t bits = w.bits;
        while (b != other.words_.end() && b->index < w.index) ++b;
        if (b != other.words_.end() && b->index == w.index) bits &= ~b->bits;
        while (bits) {
            out.push_back(static_cast<VarId>(w.index * 64 + std::countr_zero(bits)));
            bits &= bits - 1;
        }
    }
    return out;
}

std::vector<VarId> VarSet::to_vector() const { return difference(VarSet{}); }

bool operator==(const VarSet& a, const VarSet& b) { return a.words_ == b.words_; }

}  // namespace tracekc
