#include "tracekc/query/result.hpp"

#include <iomanip>
#include <sstream>

namespace tracekc {

std::string to_fraction(const Rational& value) {
    std::ostringstream out;
    out << boost::multiprecision::numerator(value) << '/' << boost::multiprecision::denominator(value);
    return out.str();
}

std::string format_significant(const Rational& value, int digits) {
    BigInt num = boost::multiprecision::numerator(value);
    BigInt den = boost::multiprecision::denominator(value);
    bool negative = num < 0;
    if (negative) num = -num;
    if (num.is_zero()) {
        std::string s = "0";
        if (digits > 1) s += "." + std::string(static_cast<std::size_t>(digits - 1), '0');
        return s;
    }

    // Find exponent e with 10^(digits-1) <= value * 10^e < 10^digits, then
    // round half-up. Rounding can carry into an extra digit, so re-check.
    BigInt low = 1;
    for (int i = 1; i < digits; ++i) low *= 10;
    BigInt high = low * 10;
    int e = 0;
    auto scaled = [&](int exp) {
        BigInt n = num, d = den;
        for (int i = 0; i < exp; ++i) n *= 10;
        for (int i = 0; i > exp; --i) d *= 10;
        return std::pair{n, d};
    };
    for (;;) {
        auto [n, d] = scaled(e);
        if (n < low * d) {
            ++e;
        } else if (n >= high * d) {
            --e;
        } else {
            break;
        }
    }
    auto [n, d] = scaled(e);
    BigInt mantissa = (2 * n + d) / (2 * d);
    if (mantissa >= high) {
        mantissa /= 10;
        --e;
    }

    std::string m = mantissa.str();
    std::string s;
    if (e <= 0) {
        s = m + std::string(static_cast<std::size_t>(-e), '0');
    } else if (static_cast<std::size_t>(e) < m.size()) {
        s = m.substr(0, m.size() - static_cast<std::size_t>(e)) + "." + m.substr(m.size() - static_cast<std::size_t>(e));
    } else {
        s = "0." + std::string(static_cast<std::size_t>(e) - m.size(), '0') + m;
    }
    return negative ? "-" + s : s;
}

nlohmann::ordered_json to_json(const QueryResult& result) {
    nlohmann::ordered_json j;
    j["target"] = result.target;
    nlohmann::ordered_json ev = nlohmann::ordered_json::object();
    for (const auto& [name, value] : result.evidence) ev[name] = value;
    j["evidence"] = std::move(ev);
    j["model_count"] = result.total_count.str();
    j["evidence_count"] = result.evidence_count.str();
    nlohmann::ordered_json items = nlohmann::ordered_json::array();
    for (const auto& l : result.likelihoods) {
        nlohmann::ordered_json item;
        item["name"] = l.name;
        item["decimal"] = static_cast<double>(l.value);
        item["exact"] = to_fraction(l.value);
        item["display"] = format_significant(l.value);
        items.push_back(std::move(item));
    }
    j["likelihoods"] = std::move(items);
    return j;
}

std::string render_table(const QueryResult& result) {
    std::size_t width = 8;
    for (const auto& l : result.likelihoods) width = std::max(width, l.name.size());
    std::ostringstream out;
    out << "target: " << result.target << "   evidence models: " << result.evidence_count << " of "
        << result.total_count << '\n';
    out << std::left << std::setw(static_cast<int>(width)) << "name" << "  " << std::setw(8) << "p"
        << "  exact\n";
    for (const auto& l : result.likelihoods) {
        out << std::left << std::setw(static_cast<int>(width)) << l.name << "  " << std::setw(8)
            << format_significant(l.value) << "  " << to_fraction(l.value) << '\n';
    }
    return out.str();
}

}  // namespace tracekc
