#include "tracekc/logic/nnf.hpp"

#include <algorithm>
#include <stdexcept>

namespace tracekc {

namespace {

std::size_t shape_hash(NodeKind kind, std::uint32_t payload, std::span<const NodeId> children) {
    std::size_t h = static_cast<std::size_t>(kind) * 0x9e3779b97f4a7c15ull ^ payload;
    for (NodeId c : children) h = (h ^ c) * 0x100000001b3ull + (h >> 29);
    // splitmix64 finalizer; linear probing needs well-mixed low bits
    h = (h ^ (h >> 30)) * 0xbf58476d1ce4e5b9ull;
    h = (h ^ (h >> 27)) * 0x94d049bb133111ebull;
    return h ^ (h >> 31);
}

}  // namespace

NodeTable::NodeTable() {
    nodes_.push_back(NnfNode{NodeKind::False, {}, kNoVar, {}, {}});
    nodes_.push_back(NnfNode{NodeKind::True, {}, kNoVar, {}, {}});
    hashes_.assign(2, 0);
    slots_.assign(16, kEmptySlot);
}

NodeTable::NodeTable(std::shared_ptr<const NodeTable> base) : base_(std::move(base)) {
    if (!base_) throw std::invalid_argument("null base table");
    base_size_ = static_cast<NodeId>(base_->size());
    slots_.assign(16, kEmptySlot);
}

void NodeTable::reserve(std::size_t nodes) {
    nodes_.reserve(nodes_.size() + nodes);
    hashes_.reserve(hashes_.size() + nodes);
    std::size_t want = slots_.size();
    while (want < 2 * (nodes_.size() + nodes)) want *= 2;
    if (want > slots_.size()) rehash(want);
}

void NodeTable::rehash(std::size_t slot_count) {
    slots_.assign(slot_count, kEmptySlot);
    const std::size_t mask = slot_count - 1;
    // the constants of a root table are never looked up
    for (std::size_t local = base_ ? 0 : 2; local < nodes_.size(); ++local) {
        std::size_t i = hashes_[local] & mask;
        while (slots_[i] != kEmptySlot) i = (i + 1) & mask;
        slots_[i] = static_cast<NodeId>(base_size_ + local);
    }
}

std::uint32_t NodeTable::payload_of(const NnfNode& n) {
    return n.kind == NodeKind::Lit ? n.literal.code() : n.decision;
}

NodeId NodeTable::find_local(NodeKind kind, std::uint32_t payload, std::span<const NodeId> children,
                             std::size_t hash, std::size_t& slot) const {
    const std::size_t mask = slots_.size() - 1;
    for (std::size_t i = hash & mask;; i = (i + 1) & mask) {
        NodeId id = slots_[i];
        if (id == kEmptySlot) {
            slot = i;
            return kEmptySlot;
        }
        const NnfNode& n = nodes_[id - base_size_];
        if (hashes_[id - base_size_] == hash && n.kind == kind && payload_of(n) == payload &&
            std::equal(n.children.begin(), n.children.end(), children.begin(), children.end()))
            return id;
    }
}

NodeId NodeTable::find(NodeKind kind, std::uint32_t payload, std::span<const NodeId> children, std::size_t hash,
                       std::size_t& slot) const {
    if (base_) {
        std::size_t unused = 0;
        if (NodeId id = base_->find(kind, payload, children, hash, unused); id != kEmptySlot) return id;
    }
    return find_local(kind, payload, children, hash, slot);
}

NodeId NodeTable::insert_at(std::size_t slot, std::size_t hash, NnfNode node) {
    auto id = static_cast<NodeId>(size());
    nodes_.push_back(std::move(node));
    hashes_.push_back(hash);
    slots_[slot] = id;
    if (2 * nodes_.size() > slots_.size()) rehash(2 * slots_.size());
    return id;
}

NodeId NodeTable::mk_lit(Literal lit) {
    std::size_t hash = shape_hash(NodeKind::Lit, lit.code(), {});
    std::size_t slot = 0;
    if (NodeId id = find(NodeKind::Lit, lit.code(), {}, hash, slot); id != kEmptySlot) return id;
    NnfNode n;
    n.kind = NodeKind::Lit;
    n.literal = lit;
    n.vars.insert(lit.var());
    return insert_at(slot, hash, std::move(n));
}

NodeId NodeTable::mk_and(std::span<const NodeId> children) { return mk_nary(NodeKind::And, children, kNoVar); }

NodeId NodeTable::mk_or(std::span<const NodeId> children, VarId decision) {
    return mk_nary(NodeKind::Or, children, decision);
}

NodeId NodeTable::mk_nary(NodeKind kind, std::span<const NodeId> children, VarId decision) {
    if (children.empty()) throw std::invalid_argument("and/or node needs at least one child");
    const NodeId absorbing = kind == NodeKind::And ? kFalse : kTrue;
    const NodeId identity = kind == NodeKind::And ? kTrue : kFalse;

    std::vector<NodeId>& flat = scratch_children_;
    flat.clear();
    bool rewritten = false;
    for (NodeId c : children) {
        if (c >= size()) throw std::out_of_range("child node id not in table");
        if (c == absorbing) return absorbing;
        if (c == identity) {
            rewritten = true;
            continue;
        }
        const NnfNode& child = node(c);
        if (flatten_ && child.kind == kind) {
            flat.insert(flat.end(), child.children.begin(), child.children.end());
            rewritten = true;
        } else {
            flat.push_back(c);
        }
    }
    if (!std::is_sorted(flat.begin(), flat.end())) std::sort(flat.begin(), flat.end());
    auto last = std::unique(flat.begin(), flat.end());
    if (last != flat.end()) rewritten = true;
    flat.erase(last, flat.end());

    if (flat.empty()) return identity;
    if (flat.size() == 1) return flat.front();

    const VarId tag = kind == NodeKind::Or && !rewritten && flat.size() == 2 ? decision : kNoVar;
    std::size_t hash = shape_hash(kind, tag, flat);
    std::size_t slot = 0;
    if (NodeId id = find(kind, tag, flat, hash, slot); id != kEmptySlot) return id;

    NnfNode n;
    n.kind = kind;
    n.decision = tag;
    scratch_vars_.clear();
    for (NodeId c : flat) scratch_vars_.push_back(&node(c).vars);
    n.vars = VarSet::unite(scratch_vars_);
    n.children = flat;
    return insert_at(slot, hash, std::move(n));
}

NnfDag::NnfDag(std::shared_ptr<const NodeTable> table, NodeId root, VariableTablePtr vars)
    : table_(std::move(table)), root_(root), vars_(std::move(vars)) {
    if (!table_) throw std::invalid_argument("null node table");
    if (root_ >= table_->size()) throw std::out_of_range("root not in node table");
    const VarSet& used = table_->node(root_).vars;
    if (!vars_) {
        auto used_list = used.to_vector();
        vars_ = std::make_shared<VariableTable>(
            VariableTable::numbered(used_list.empty() ? 0 : used_list.back() + 1));
    } else if (!used.subset_of(VarSet::range(static_cast<VarId>(vars_->size())))) {
        throw std::invalid_argument("dag mentions variables outside its schema");
    }

    std::vector<bool> seen(root_ + 1, false);
    std::vector<NodeId> stack{root_};
    seen[root_] = true;
    std::vector<NodeId> order;
    while (!stack.empty()) {
        NodeId id = stack.back();
        stack.pop_back();
        order.push_back(id);
        for (NodeId c : table_->node(id).children) {
            if (!seen[c]) {
                seen[c] = true;
                stack.push_back(c);
            }
        }
    }
    if (order.size() * 8 < seen.size()) {
        std::sort(order.begin(), order.end());
    } else {
        order.clear();
        for (NodeId id = 0; id <= root_; ++id)
            if (seen[id]) order.push_back(id);
    }
    for (NodeId id : order) edge_count_ += table_->node(id).children.size();
    reachable_ = std::make_shared<const std::vector<NodeId>>(std::move(order));
}

}  // namespace tracekc
