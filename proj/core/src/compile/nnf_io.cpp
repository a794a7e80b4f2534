#include "tracekc/compile/nnf_io.hpp"

#include <charconv>
#include <sstream>
#include <unordered_map>

#include "tracekc/error.hpp"
#include "tracekc/logic/validate.hpp"

namespace tracekc {

std::string export_nnf(const NnfDag& dag) {
    const auto& order = dag.reachable();
    std::unordered_map<NodeId, std::size_t> line_of;
    line_of.reserve(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) line_of.emplace(order[i], i);

    std::ostringstream out;
    out << "nnf " << order.size() << ' ' << dag.edge_count() << ' ' << dag.num_vars() << '\n';
    for (NodeId id : order) {
        const NnfNode& n = dag.node(id);
        switch (n.kind) {
            case NodeKind::False: out << "O 0 0"; break;
            case NodeKind::True: out << "A 0"; break;
            case NodeKind::Lit: out << "L " << n.literal.to_dimacs(); break;
            case NodeKind::And: out << "A " << n.children.size(); break;
            case NodeKind::Or:
                out << "O " << (n.decision == kNoVar ? 0 : static_cast<std::size_t>(n.decision) + 1) << ' '
                    << n.children.size();
                break;
        }
        for (NodeId c : n.children) out << ' ' << line_of.at(c);
        out << '\n';
    }
    return out.str();
}

namespace {

class Tokens {
public:
    Tokens(std::string_view line, std::size_t line_no) : rest_(line), line_no_(line_no) {}

    std::string_view word() {
        skip();
        std::size_t end = rest_.find_first_of(" \t\r");
        std::string_view w = rest_.substr(0, end);
        rest_ = end == std::string_view::npos ? std::string_view{} : rest_.substr(end);
        return w;
    }
    long long number() {
        std::string_view w = word();
        long long v = 0;
        auto [p, ec] = std::from_chars(w.data(), w.data() + w.size(), v);
        if (w.empty() || ec != std::errc{} || p != w.data() + w.size()) fail("expected integer");
        return v;
    }
    bool done() {
        skip();
        return rest_.empty();
    }
    [[noreturn]] void fail(const std::string& what) const {
        throw DataError("nnf line " + std::to_string(line_no_) + ": " + what);
    }

private:
    void skip() {
        std::size_t start = rest_.find_first_not_of(" \t\r");
        rest_ = start == std::string_view::npos ? std::string_view{} : rest_.substr(start);
    }
    std::string_view rest_;
    std::size_t line_no_;
};

}  // namespace

NnfDag import_nnf(std::string_view text, const NnfImportOptions& options) {
    auto table = std::make_shared<NodeTable>();
    std::vector<NodeId> ids;
    long long declared_nodes = -1, declared_edges = 0, declared_vars = 0;
    long long edges = 0;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;

        Tokens tok(line, line_no);
        if (tok.done()) continue;
        std::string_view head = tok.word();
        if (head == "c") continue;
        if (declared_nodes < 0) {
            if (head != "nnf") tok.fail("missing 'nnf V E N' header");
            declared_nodes = tok.number();
            declared_edges = tok.number();
            declared_vars = tok.number();
            if (declared_nodes < 1 || declared_edges < 0 || declared_vars < 0 || !tok.done())
                tok.fail("malformed header");
            ids.reserve(static_cast<std::size_t>(declared_nodes));
            continue;
        }
        if (static_cast<long long>(ids.size()) >= declared_nodes) tok.fail("more nodes than the header declares");

        auto read_children = [&](long long count) {
            if (count < 0) tok.fail("negative child count");
            std::vector<NodeId> kids;
            kids.reserve(static_cast<std::size_t>(count));
            for (long long i = 0; i < count; ++i) {
                long long c = tok.number();
                if (c < 0 || c >= declared_nodes) tok.fail("dangling child index " + std::to_string(c));
                if (c >= static_cast<long long>(ids.size()))
                    tok.fail("child index " + std::to_string(c) + " is not defined before use (cycle)");
                kids.push_back(ids[static_cast<std::size_t>(c)]);
            }
            edges += count;
            return kids;
        };

        NodeId id;
        if (head == "L") {
            long long lit = tok.number();
            if (lit == 0 || (lit < 0 ? -lit : lit) > declared_vars) tok.fail("literal out of range");
            id = table->mk_lit(Literal::from_dimacs(lit));
        } else if (head == "A") {
            auto kids = read_children(tok.number());
            id = kids.empty() ? NodeTable::kTrue : table->mk_and(kids);
        } else if (head == "O") {
            long long j = tok.number();
            if (j < 0 || j > declared_vars) tok.fail("decision variable out of range");
            auto kids = read_children(tok.number());
            id = kids.empty() ? NodeTable::kFalse
                              : table->mk_or(kids, j == 0 ? kNoVar : static_cast<VarId>(j - 1));
        } else {
            tok.fail("unknown node type '" + std::string(head) + "'");
        }
        if (!tok.done()) tok.fail("trailing tokens");
        ids.push_back(id);
    }
    if (declared_nodes < 0) throw DataError("nnf: missing 'nnf V E N' header");
    if (static_cast<long long>(ids.size()) != declared_nodes)
        throw DataError("nnf: header declares " + std::to_string(declared_nodes) + " nodes, found " +
                        std::to_string(ids.size()));
    if (edges != declared_edges)
        throw DataError("nnf: header declares " + std::to_string(declared_edges) + " edges, found " +
                        std::to_string(edges));

    VariableTablePtr vars = options.vars;
    if (!vars) vars = std::make_shared<const VariableTable>(VariableTable::numbered(static_cast<std::size_t>(declared_vars)));
    if (static_cast<long long>(vars->size()) != declared_vars)
        throw DataError("nnf: header declares " + std::to_string(declared_vars) + " variables, schema has " +
                        std::to_string(vars->size()));

    NnfDag dag(std::move(table), ids.back(), std::move(vars));
    if (options.require_decomposable) {
        if (auto v = check_decomposability(dag)) throw DataError("nnf: not decomposable: " + v->message);
    }
    return dag;
}

}  // namespace tracekc
