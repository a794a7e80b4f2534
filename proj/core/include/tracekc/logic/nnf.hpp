#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "tracekc/logic/literal.hpp"
#include "tracekc/logic/var_set.hpp"
#include "tracekc/logic/variables.hpp"

namespace tracekc {

using NodeId = std::uint32_t;

enum class NodeKind : std::uint8_t { False, True, Lit, And, Or };

struct NnfNode {
    NodeKind kind = NodeKind::False;
    Literal literal{};           // Lit only
    VarId decision = kNoVar;     // Or only; the variable the two branches split on, if known
    std::vector<NodeId> children;  // And/Or only, sorted ascending, non-empty
    VarSet vars;                 // Vars(C)
};

// Append-only, hash-consed node store. Children always precede their parents,
// so ascending id order is a topological order.
//
// A table may extend an immutable base: base ids stay valid, new nodes get ids
// from base.size() upward, and lookups consult the base first, so a derived
// circuit shares every node it does not change.
class NodeTable {
public:
    static constexpr NodeId kFalse = 0;
    static constexpr NodeId kTrue = 1;

    NodeTable();
    explicit NodeTable(std::shared_ptr<const NodeTable> base);

    NodeId mk_lit(Literal lit);
    NodeId mk_const(bool value) { return value ? kTrue : kFalse; }

    // Flattens nested nodes of the same kind (unless disabled), drops identity
    // constants, collapses on an absorbing constant, and returns the single
    // child when only one remains. Throws std::invalid_argument on an empty list.
    NodeId mk_and(std::span<const NodeId> children);
    NodeId mk_and(std::initializer_list<NodeId> children) { return mk_and(std::span(children.begin(), children.size())); }

    // `decision` tags a two-child decision node; it is dropped whenever
    // simplification changes the child list.
    NodeId mk_or(std::span<const NodeId> children, VarId decision = kNoVar);
    NodeId mk_or(std::initializer_list<NodeId> children, VarId decision = kNoVar) {
        return mk_or(std::span(children.begin(), children.size()), decision);
    }

    const NnfNode& node(NodeId id) const { return id < base_size_ ? base_->node(id) : nodes_[id - base_size_]; }
    std::size_t size() const { return base_size_ + nodes_.size(); }
    // Room for `nodes` more local nodes without rehashing.
    void reserve(std::size_t nodes);
    // Flattening copies grandchildren into each new parent, which is quadratic
    // along chains of collapsing nodes; one-pass rewrites turn it off.
    void set_flatten(bool on) { flatten_ = on; }

private:
    static constexpr NodeId kEmptySlot = ~NodeId{0};

    static std::uint32_t payload_of(const NnfNode& n);
    // Id of the node with this shape, or kEmptySlot; `slot` receives the probe
    // position where it would be inserted.
    NodeId find(NodeKind kind, std::uint32_t payload, std::span<const NodeId> children, std::size_t hash,
                std::size_t& slot) const;
    NodeId find_local(NodeKind kind, std::uint32_t payload, std::span<const NodeId> children, std::size_t hash,
                      std::size_t& slot) const;
    NodeId insert_at(std::size_t slot, std::size_t hash, NnfNode node);
    void rehash(std::size_t slot_count);
    NodeId mk_nary(NodeKind kind, std::span<const NodeId> children, VarId decision);

    std::shared_ptr<const NodeTable> base_;
    NodeId base_size_ = 0;
    std::vector<NnfNode> nodes_;       // ids base_size_ upward
    std::vector<std::size_t> hashes_;  // parallel to nodes_
    std::vector<NodeId> slots_;        // open addressing, linear probing
    bool flatten_ = true;
    std::vector<NodeId> scratch_children_;
    std::vector<const VarSet*> scratch_vars_;
};

// A rooted view into a node table, plus the variable schema it is defined over.
// Immutable once built; safe for concurrent reads.
class NnfDag {
public:
    NnfDag(std::shared_ptr<const NodeTable> table, NodeId root, VariableTablePtr vars);

    const NodeTable& table() const { return *table_; }
    const std::shared_ptr<const NodeTable>& table_ptr() const { return table_; }
    NodeId root() const { return root_; }
    const NnfNode& node(NodeId id) const { return table_->node(id); }
    const NnfNode& root_node() const { return table_->node(root_); }

    const VariableTable& variables() const { return *vars_; }
    const VariableTablePtr& variables_ptr() const { return vars_; }
    std::size_t num_vars() const { return vars_->size(); }
    VarSet all_vars() const { return VarSet::range(static_cast<VarId>(num_vars())); }

    const VarSet& vars_of(NodeId id) const { return table_->node(id).vars; }

    // Nodes reachable from the root, ascending (children first).
    const std::vector<NodeId>& reachable() const { return *reachable_; }
    std::size_t node_count() const { return reachable_->size(); }
    std::size_t edge_count() const { return edge_count_; }

private:
    std::shared_ptr<const NodeTable> table_;
    NodeId root_;
    VariableTablePtr vars_;
    std::shared_ptr<const std::vector<NodeId>> reachable_;
    std::size_t edge_count_ = 0;
};

}  // namespace tracekc
