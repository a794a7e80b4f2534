#include "tracekc/query/operations.hpp"

#include <stdexcept>

#include "tracekc/error.hpp"

namespace tracekc {

namespace {

void require_in_schema(const NnfDag& dag, const Evidence& evidence) {
    for (const auto& [v, _] : evidence.values())
        if (v >= dag.num_vars()) throw UnknownVariable("#" + std::to_string(v + 1));
}

NodeId tautology(NodeTable& table, VarId v) {
    return table.mk_or({table.mk_lit(Literal(v, true)), table.mk_lit(Literal(v, false))}, v);
}

}  // namespace

NnfDag condition(const NnfDag& dag, const Evidence& evidence) {
    if (evidence.empty()) return dag;
    require_in_schema(dag, evidence);

    // Nodes whose subcircuit the evidence leaves unchanged are shared with the
    // input; only the rest are rebuilt on top of it.
    auto table = std::make_shared<NodeTable>(dag.table_ptr());
    table->set_flatten(false);
    std::vector<NodeId> mapped(dag.root() + 1, NodeTable::kFalse);
    std::vector<NodeId> kids;
    for (NodeId id : dag.reachable()) {
        const NnfNode& n = dag.node(id);
        NodeId out = id;
        switch (n.kind) {
            case NodeKind::False:
            case NodeKind::True: break;
            case NodeKind::Lit:
                if (auto value = evidence.get(n.literal.var())) out = table->mk_const(*value == n.literal.positive());
                break;
            case NodeKind::And:
            case NodeKind::Or: {
                bool changed = false;
                kids.clear();
                for (NodeId c : n.children) {
                    kids.push_back(mapped[c]);
                    changed = changed || mapped[c] != c;
                }
                if (!changed) break;
                if (n.kind == NodeKind::And) {
                    out = table->mk_and(kids);
                } else {
                    VarId d = n.decision != kNoVar && !evidence.get(n.decision) ? n.decision : kNoVar;
                    out = table->mk_or(kids, d);
                }
                break;
            }
        }
        mapped[id] = out;
    }
    return NnfDag(std::move(table), mapped[dag.root()], dag.variables_ptr());
}

NnfDag smooth(const NnfDag& dag, const VarSet& over) {
    auto table = std::make_shared<NodeTable>();
    table->reserve(dag.node_count() + 2);
    std::vector<NodeId> mapped(dag.root() + 1, NodeTable::kFalse);
    std::vector<NodeId> kids;
    for (NodeId id : dag.reachable()) {
        const NnfNode& n = dag.node(id);
        NodeId out = NodeTable::kFalse;
        switch (n.kind) {
            case NodeKind::False: out = NodeTable::kFalse; break;
            case NodeKind::True: out = NodeTable::kTrue; break;
            case NodeKind::Lit: out = table->mk_lit(n.literal); break;
            case NodeKind::And:
                kids.clear();
                for (NodeId c : n.children) kids.push_back(mapped[c]);
                out = table->mk_and(kids);
                break;
            case NodeKind::Or: {
                kids.clear();
                for (NodeId c : n.children) {
                    std::vector<NodeId> padded{mapped[c]};
                    for (VarId v : n.vars.difference(dag.vars_of(c))) padded.push_back(tautology(*table, v));
                    kids.push_back(table->mk_and(padded));
                }
                out = table->mk_or(kids, n.decision);
                break;
            }
        }
        mapped[id] = out;
    }
    std::vector<NodeId> root{mapped[dag.root()]};
    for (VarId v : over.difference(dag.vars_of(dag.root()))) root.push_back(tautology(*table, v));
    NodeId smoothed_root = table->mk_and(root);
    return NnfDag(std::move(table), smoothed_root, dag.variables_ptr());
}

namespace {

// Bottom-up evaluation with lazy smoothing. Variables in `fixed` are pinned by
// evidence and contribute no freedom when missing from a branch.
BigInt count_pass(const NnfDag& dag, const Evidence* evidence, const VarSet& over, const VarSet* fixed) {
    std::vector<BigInt> count(dag.root() + 1);
    for (NodeId id : dag.reachable()) {
        const NnfNode& n = dag.node(id);
        switch (n.kind) {
            case NodeKind::False: count[id] = 0; break;
            case NodeKind::True: count[id] = 1; break;
            case NodeKind::Lit: {
                std::optional<bool> value = evidence ? evidence->get(n.literal.var()) : std::nullopt;
                count[id] = !value || *value == n.literal.positive() ? 1 : 0;
                break;
            }
            case NodeKind::And: {
                BigInt prod = 1;
                for (NodeId c : n.children) {
                    prod *= count[c];
                    if (prod.is_zero()) break;
                }
                count[id] = std::move(prod);
                break;
            }
            case NodeKind::Or: {
                BigInt sum = 0;
                for (NodeId c : n.children) {
                    if (count[c].is_zero()) continue;
                    std::size_t gap = n.vars.count_difference(dag.vars_of(c), fixed);
                    sum += count[c] << gap;
                }
                count[id] = std::move(sum);
                break;
            }
        }
    }
    std::size_t gap = over.count_difference(dag.vars_of(dag.root()), fixed);
    return count[dag.root()] << gap;
}

}  // namespace

BigInt model_count(const NnfDag& dag, const VarSet& over) {
    if (!dag.vars_of(dag.root()).subset_of(over))
        throw std::invalid_argument("count domain does not cover the theory's variables");
    return count_pass(dag, nullptr, over, nullptr);
}

BigInt count_consistent(const NnfDag& dag, const Evidence& evidence) {
    require_in_schema(dag, evidence);
    VarSet fixed = evidence.domain();
    return count_pass(dag, &evidence, dag.all_vars(), &fixed);
}

namespace {

BigInt conditioned_count(const NnfDag& dag, const Evidence& evidence) {
    NnfDag cond = condition(dag, evidence);
    VarSet over = dag.all_vars();
    for (const auto& [v, _] : evidence.values()) over.erase(v);
    return model_count(cond, over);
}

}  // namespace

Rational probability(const NnfDag& dag, Literal target, const Evidence& evidence) {
    if (target.var() >= dag.num_vars()) throw UnknownVariable("#" + std::to_string(target.var() + 1));
    BigInt denominator = conditioned_count(dag, evidence);
    if (denominator.is_zero()) throw NoSupport();
    if (auto known = evidence.get(target.var())) return Rational(*known == target.positive() ? 1 : 0);
    Evidence with_target = evidence;
    with_target.set(target.var(), target.positive());
    return Rational(conditioned_count(dag, with_target), denominator);
}

}  // namespace tracekc
