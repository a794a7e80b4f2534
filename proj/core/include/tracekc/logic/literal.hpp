#pragma once

#include <cstdint>
#include <functional>
#include <limits>

namespace tracekc {

using VarId = std::uint32_t;
inline constexpr VarId kNoVar = std::numeric_limits<VarId>::max();

// Packed literal: code = 2 * var + (negated ? 1 : 0).
class Literal {
public:
    constexpr Literal() = default;
    constexpr Literal(VarId var, bool positive) : code_(2 * var + (positive ? 0u : 1u)) {}

    static constexpr Literal from_code(std::uint32_t code) {
        Literal l;
        l.code_ = code;
        return l;
    }
    // Signed 1-based DIMACS convention.
    static constexpr Literal from_dimacs(std::int64_t lit) {
        return lit > 0 ? Literal(static_cast<VarId>(lit - 1), true)
                       : Literal(static_cast<VarId>(-lit - 1), false);
    }

    constexpr VarId var() const { return code_ >> 1; }
    constexpr bool positive() const { return (code_ & 1u) == 0; }
    constexpr std::uint32_t code() const { return code_; }
    constexpr std::int64_t to_dimacs() const {
        return positive() ? static_cast<std::int64_t>(var()) + 1 : -static_cast<std::int64_t>(var()) - 1;
    }
    constexpr Literal operator~() const { return from_code(code_ ^ 1u); }

    friend constexpr auto operator<=>(Literal, Literal) = default;

private:
    std::uint32_t code_ = 0;
};

}  // namespace tracekc

template <>
struct std::hash<tracekc::Literal> {
    std::size_t operator()(tracekc::Literal l) const noexcept { return std::hash<std::uint32_t>{}(l.code()); }
};
