#include "tracekc/compile/compiler.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace tracekc {

namespace {

using ComponentKey = std::vector<std::uint32_t>;

struct ComponentKeyHash {
    std::size_t operator()(const ComponentKey& key) const noexcept {
        std::size_t h = 0xcbf29ce484222325ull;
        for (std::uint32_t w : key) h = (h ^ w) * 0x100000001b3ull;
        return h;
    }
};

constexpr std::uint32_t kClauseEnd = std::numeric_limits<std::uint32_t>::max();

class Compiler {
public:
    Compiler(std::size_t num_vars, CompileOptions options)
        : options_(options), table_(std::make_shared<NodeTable>()), value_(num_vars, 0), owner_(num_vars, -1) {}

    NodeId compile_set(std::vector<Clause> clauses);

    std::shared_ptr<NodeTable> table() const { return table_; }
    CompileStats& stats() { return stats_; }

private:
    bool propagate(std::vector<Clause>& clauses, std::vector<Literal>& implied);
    std::vector<std::vector<Clause>> split_components(std::vector<Clause> clauses);
    NodeId compile_component(std::vector<Clause> component);

    std::int8_t value_of(Literal l) const {
        std::int8_t v = value_[l.var()];
        return l.positive() ? v : static_cast<std::int8_t>(-v);
    }

    CompileOptions options_;
    std::shared_ptr<NodeTable> table_;
    std::unordered_map<ComponentKey, NodeId, ComponentKeyHash> cache_;
    CompileStats stats_;
    std::vector<std::int8_t> value_;   // scratch: +1 true, -1 false, 0 unassigned
    std::vector<std::int32_t> owner_;  // scratch for component splitting
};

bool Compiler::propagate(std::vector<Clause>& clauses, std::vector<Literal>& implied) {
    std::size_t first_new = implied.size();
    auto reset = [&] {
        for (std::size_t i = first_new; i < implied.size(); ++i) value_[implied[i].var()] = 0;
    };
    for (;;) {
        std::size_t before = implied.size();
        for (const Clause& c : clauses) {
            if (c.empty()) {
                reset();
                return false;
            }
            if (c.size() != 1) continue;
            Literal l = c.front();
            std::int8_t v = value_of(l);
            if (v < 0) {
                reset();
                return false;
            }
            if (v == 0) {
                value_[l.var()] = l.positive() ? 1 : -1;
                implied.push_back(l);
            }
        }
        if (implied.size() == before) break;
        stats_.propagations += implied.size() - before;

        std::vector<Clause> next;
        next.reserve(clauses.size());
        for (Clause& c : clauses) {
            bool satisfied = false;
            Clause reduced;
            reduced.reserve(c.size());
            for (Literal l : c) {
                std::int8_t v = value_of(l);
                if (v > 0) {
                    satisfied = true;
                    break;
                }
                if (v == 0) reduced.push_back(l);
            }
            if (satisfied) continue;
            if (reduced.empty()) {
                reset();
                return false;
            }
            next.push_back(std::move(reduced));
        }
        clauses = std::move(next);
    }
    reset();
    return true;
}

std::vector<std::vector<Clause>> Compiler::split_components(std::vector<Clause> clauses) {
    std::vector<std::size_t> parent(clauses.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };
    for (std::size_t i = 0; i < clauses.size(); ++i) {
        for (Literal l : clauses[i]) {
            std::int32_t& o = owner_[l.var()];
            if (o < 0) {
                o = static_cast<std::int32_t>(i);
            } else {
                std::size_t a = find(i), b = find(static_cast<std::size_t>(o));
                if (a != b) parent[std::max(a, b)] = std::min(a, b);
            }
        }
    }
    for (const Clause& c : clauses)
        for (Literal l : c) owner_[l.var()] = -1;

    std::vector<std::vector<Clause>> comps;
    std::unordered_map<std::size_t, std::size_t> slot;
    for (std::size_t i = 0; i < clauses.size(); ++i) {
        auto [it, inserted] = slot.try_emplace(find(i), comps.size());
        if (inserted) comps.emplace_back();
        comps[it->second].push_back(std::move(clauses[i]));
    }
    return comps;
}

NodeId Compiler::compile_set(std::vector<Clause> clauses) {
    std::vector<Literal> implied;
    if (!propagate(clauses, implied)) return NodeTable::kFalse;

    std::vector<NodeId> children;
    children.reserve(implied.size() + 1);
    for (Literal l : implied) children.push_back(table_->mk_lit(l));
    for (auto& comp : split_components(std::move(clauses))) {
        NodeId n = compile_component(std::move(comp));
        if (n == NodeTable::kFalse) return NodeTable::kFalse;
        children.push_back(n);
    }
    if (children.empty()) return NodeTable::kTrue;
    return table_->mk_and(children);
}

NodeId Compiler::compile_component(std::vector<Clause> component) {
    std::sort(component.begin(), component.end());
    ComponentKey key;
    if (options_.component_cache) {
        for (const Clause& c : component) {
            for (Literal l : c) key.push_back(l.code());
            key.push_back(kClauseEnd);
        }
        auto it = cache_.find(key);
        if (it != cache_.end()) {
            ++stats_.cache_hits;
            return it->second;
        }
    }

    ++stats_.decisions;
    VarId v = choose_decision_variable(component);
    std::vector<Clause> pos = component;
    pos.push_back({Literal(v, true)});
    component.push_back({Literal(v, false)});
    NodeId hi = compile_set(std::move(pos));
    NodeId lo = compile_set(std::move(component));
    NodeId result = table_->mk_or({hi, lo}, v);

    if (options_.component_cache) cache_.emplace(std::move(key), result);
    return result;
}

}  // namespace

VarId choose_decision_variable(std::span<const Clause> clauses) {
    std::unordered_map<VarId, std::size_t> counts;
    for (const Clause& c : clauses)
        for (Literal l : c) ++counts[l.var()];
    if (counts.empty()) throw std::invalid_argument("no variable to decide on");
    VarId best = kNoVar;
    std::size_t best_count = 0;
    for (auto [v, n] : counts) {
        if (n > best_count || (n == best_count && v < best)) {
            best = v;
            best_count = n;
        }
    }
    return best;
}

CompileResult compile(const CnfFormula& cnf, VariableTablePtr vars, CompileOptions options) {
    auto start = std::chrono::steady_clock::now();
    if (!vars) vars = std::make_shared<const VariableTable>(VariableTable::numbered(cnf.num_vars));
    if (vars->size() < cnf.num_vars) throw std::invalid_argument("variable table smaller than the formula");

    std::vector<Clause> clauses;
    clauses.reserve(cnf.clauses.size());
    bool unsat = false;
    for (const Clause& c : cnf.clauses) {
        Clause n = c;
        for (Literal l : n)
            if (l.var() >= cnf.num_vars) throw std::invalid_argument("clause literal outside variable range");
        std::sort(n.begin(), n.end());
        n.erase(std::unique(n.begin(), n.end()), n.end());
        bool tautology = false;
        for (std::size_t i = 1; i < n.size(); ++i)
            if (n[i].var() == n[i - 1].var()) tautology = true;
        if (tautology) continue;
        if (n.empty()) unsat = true;
        clauses.push_back(std::move(n));
    }

    Compiler compiler(cnf.num_vars, options);
    NodeId root = unsat ? NodeTable::kFalse : compiler.compile_set(std::move(clauses));
    CompileResult result{NnfDag(compiler.table(), root, std::move(vars)), compiler.stats()};
    result.stats.node_count = result.dag.node_count();
    result.stats.edge_count = result.dag.edge_count();
    result.stats.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

}  // namespace tracekc
