#include "tracekc/logic/validate.hpp"

#include <algorithm>

namespace tracekc {

namespace {

bool has_direct_literal(const NnfDag& dag, NodeId id, Literal lit) {
    const NnfNode& n = dag.node(id);
    if (n.kind == NodeKind::Lit) return n.literal == lit;
    if (n.kind != NodeKind::And) return false;
    return std::any_of(n.children.begin(), n.children.end(), [&](NodeId c) {
        const NnfNode& cn = dag.node(c);
        return cn.kind == NodeKind::Lit && cn.literal == lit;
    });
}

std::vector<Literal> direct_literals(const NnfDag& dag, NodeId id) {
    const NnfNode& n = dag.node(id);
    if (n.kind == NodeKind::Lit) return {n.literal};
    std::vector<Literal> out;
    if (n.kind == NodeKind::And)
        for (NodeId c : n.children)
            if (dag.node(c).kind == NodeKind::Lit) out.push_back(dag.node(c).literal);
    return out;
}

}  // namespace

CheckResult check_decomposability(const NnfDag& dag) {
    for (NodeId id : dag.reachable()) {
        const NnfNode& n = dag.node(id);
        if (n.kind != NodeKind::And) continue;
        VarSet seen;
        for (NodeId c : n.children) {
            const VarSet& cv = dag.vars_of(c);
            if (auto shared = seen.first_common(cv)) {
                return Violation{id, *shared,
                                 "and-node children share variable " + dag.variables()[*shared].name};
            }
            seen |= cv;
        }
    }
    return std::nullopt;
}

CheckResult check_determinism(const NnfDag& dag) {
    for (NodeId id : dag.reachable()) {
        const NnfNode& n = dag.node(id);
        if (n.kind != NodeKind::Or) continue;
        if (n.children.size() != 2)
            return Violation{id, kNoVar, "or-node is not a two-child decision node"};
        NodeId a = n.children[0], b = n.children[1];
        if (n.decision != kNoVar) {
            Literal x(n.decision, true);
            if ((has_direct_literal(dag, a, x) && has_direct_literal(dag, b, ~x)) ||
                (has_direct_literal(dag, a, ~x) && has_direct_literal(dag, b, x)))
                continue;
        }
        bool ok = false;
        for (Literal l : direct_literals(dag, a)) {
            if (has_direct_literal(dag, b, ~l)) {
                ok = true;
                break;
            }
        }
        if (!ok) return Violation{id, kNoVar, "or-node children are not split on a complementary literal"};
    }
    return std::nullopt;
}

CheckResult check_smoothness(const NnfDag& dag, const VarSet* over) {
    for (NodeId id : dag.reachable()) {
        const NnfNode& n = dag.node(id);
        if (n.kind != NodeKind::Or) continue;
        const VarSet& first = dag.vars_of(n.children.front());
        for (std::size_t i = 1; i < n.children.size(); ++i) {
            const VarSet& other = dag.vars_of(n.children[i]);
            if (other == first) continue;
            auto missing = first.difference(other);
            if (missing.empty()) missing = other.difference(first);
            VarId v = missing.front();
            return Violation{id, v, "or-node disjuncts differ on variable " + dag.variables()[v].name};
        }
    }
    if (over && dag.root_node().kind != NodeKind::False) {
        auto missing = over->difference(dag.vars_of(dag.root()));
        if (!missing.empty())
            return Violation{dag.root(), missing.front(),
                             "root does not mention variable " + dag.variables()[missing.front()].name};
    }
    return std::nullopt;
}

}  // namespace tracekc
