#pragma once

// Brute-force reference implementations and seeded generators. Everything
// here enumerates assignments directly and shares no code with the library's
// counting or compilation paths.

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include <unistd.h>

#include "tracekc/encode/trace_set.hpp"
#include "tracekc/logic/formula.hpp"
#include "tracekc/logic/nnf.hpp"
#include "tracekc/query/evidence.hpp"
#include "tracekc/query/operations.hpp"

namespace oracle {

using tracekc::BigInt;
using tracekc::Clause;
using tracekc::CnfFormula;
using tracekc::DnfFormula;
using tracekc::Literal;
using tracekc::NnfDag;
using tracekc::NodeKind;
using tracekc::Rational;

using Assignment = std::vector<bool>;

inline Assignment unpack(std::uint64_t bits, std::size_t n) {
    Assignment a(n);
    for (std::size_t i = 0; i < n; ++i) a[i] = (bits >> i) & 1u;
    return a;
}

inline bool holds(Literal l, const Assignment& a) { return a[l.var()] == l.positive(); }

inline bool satisfies(const CnfFormula& f, const Assignment& a) {
    for (const auto& c : f.clauses) {
        bool any = false;
        for (Literal l : c) any = any || holds(l, a);
        if (!any) return false;
    }
    return true;
}

inline bool satisfies(const DnfFormula& f, const Assignment& a) {
    for (const auto& t : f.terms) {
        bool all = true;
        for (Literal l : t) all = all && holds(l, a);
        if (all) return true;
    }
    return false;
}

// Direct recursive semantics of the circuit, memoised per call.
inline bool evaluate(const NnfDag& dag, const Assignment& a) {
    std::vector<char> value(dag.table().size(), 0);
    for (auto id : dag.reachable()) {
        const auto& n = dag.node(id);
        switch (n.kind) {
            case NodeKind::False: value[id] = 0; break;
            case NodeKind::True: value[id] = 1; break;
            case NodeKind::Lit: value[id] = holds(n.literal, a); break;
            case NodeKind::And: {
                bool v = true;
                for (auto c : n.children) v = v && value[c];
                value[id] = v;
                break;
            }
            case NodeKind::Or: {
                bool v = false;
                for (auto c : n.children) v = v || value[c];
                value[id] = v;
                break;
            }
        }
    }
    return value[dag.root()];
}

template <typename Pred>
std::uint64_t count_where(std::size_t n, Pred&& pred) {
    std::uint64_t count = 0;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits)
        if (pred(unpack(bits, n))) ++count;
    return count;
}

inline std::uint64_t count(const CnfFormula& f) {
    return count_where(f.num_vars, [&](const Assignment& a) { return satisfies(f, a); });
}

inline std::uint64_t count(const DnfFormula& f) {
    return count_where(f.vars->size(), [&](const Assignment& a) { return satisfies(f, a); });
}

inline std::uint64_t count(const NnfDag& dag) {
    return count_where(dag.num_vars(), [&](const Assignment& a) { return evaluate(dag, a); });
}

inline bool agrees(const Assignment& a, const tracekc::Evidence& e) {
    for (auto [v, b] : e.values())
        if (a[v] != b) return false;
    return true;
}

// Models of `dag` over its whole schema that agree with `e`.
inline std::uint64_t count_consistent(const NnfDag& dag, const tracekc::Evidence& e) {
    return count_where(dag.num_vars(), [&](const Assignment& a) { return agrees(a, e) && evaluate(dag, a); });
}

// Models of a CNF agreeing with `e`, enumerated from the formula itself.
inline std::uint64_t count_consistent(const CnfFormula& f, const tracekc::Evidence& e) {
    return count_where(f.num_vars, [&](const Assignment& a) { return agrees(a, e) && satisfies(f, a); });
}

inline Rational ratio(std::uint64_t num, std::uint64_t den) { return Rational(BigInt(num), BigInt(den)); }

inline CnfFormula random_cnf(std::mt19937_64& rng, std::size_t max_vars, std::size_t max_clauses,
                             std::size_t max_width = 4) {
    CnfFormula f;
    f.num_vars = std::uniform_int_distribution<std::size_t>(1, max_vars)(rng);
    std::size_t m = std::uniform_int_distribution<std::size_t>(0, max_clauses)(rng);
    std::uniform_int_distribution<std::size_t> width(1, max_width);
    std::uniform_int_distribution<std::uint32_t> var(0, static_cast<std::uint32_t>(f.num_vars - 1));
    std::bernoulli_distribution sign(0.5);
    for (std::size_t i = 0; i < m; ++i) {
        Clause c;
        for (std::size_t k = width(rng); k > 0; --k) c.push_back(Literal(var(rng), sign(rng)));
        f.clauses.push_back(std::move(c));
    }
    return f;
}

inline tracekc::Evidence random_evidence(std::mt19937_64& rng, std::size_t num_vars, double p_assign = 0.3) {
    tracekc::Evidence e;
    std::bernoulli_distribution pick(p_assign), sign(0.5);
    for (std::size_t v = 0; v < num_vars; ++v)
        if (pick(rng)) e.set(static_cast<tracekc::VarId>(v), sign(rng));
    return e;
}

inline tracekc::Schema make_schema(std::size_t state_vars, std::size_t actions) {
    tracekc::Schema s;
    for (std::size_t i = 0; i < state_vars; ++i) s.state_variables.push_back("s" + std::to_string(i));
    for (std::size_t i = 0; i < actions; ++i) s.actions.push_back("a" + std::to_string(i));
    return s;
}

inline tracekc::TraceSet random_traces(std::mt19937_64& rng, std::size_t max_state, std::size_t max_actions,
                                       std::size_t max_rows) {
    std::size_t s = std::uniform_int_distribution<std::size_t>(1, max_state)(rng);
    std::size_t a = std::uniform_int_distribution<std::size_t>(2, max_actions)(rng);
    std::size_t rows = std::uniform_int_distribution<std::size_t>(1, max_rows)(rng);
    tracekc::TraceSet t(make_schema(s, a));
    std::bernoulli_distribution bit(0.5);
    std::uniform_int_distribution<std::size_t> act(0, a - 1);
    for (std::size_t r = 0; r < rows; ++r) {
        tracekc::StateBits st(s);
        for (std::size_t i = 0; i < s; ++i) st[i] = bit(rng);
        t.add({st, t.schema().actions[act(rng)]});
    }
    return t;
}

// Scratch directory removed on scope exit.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        static std::uint64_t counter = 0;
        path_ = std::filesystem::temp_directory_path() /
                ("tracekc-" + tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

}  // namespace oracle
