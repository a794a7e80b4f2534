#include <gtest/gtest.h>

#include <algorithm>
#include <iterator>
#include <memory>
#include <random>
#include <set>

#include "oracle.hpp"
#include "tracekc/error.hpp"
#include "tracekc/logic/nnf.hpp"
#include "tracekc/logic/validate.hpp"

using namespace tracekc;

namespace {

struct Fixture {
    std::shared_ptr<NodeTable> t = std::make_shared<NodeTable>();
    NodeId x = t->mk_lit(Literal(0, true));
    NodeId nx = t->mk_lit(Literal(0, false));
    NodeId y = t->mk_lit(Literal(1, true));
    NodeId ny = t->mk_lit(Literal(1, false));
    NodeId z = t->mk_lit(Literal(2, true));
    NodeId nz = t->mk_lit(Literal(2, false));

    NnfDag dag(NodeId root, std::size_t n = 3) const {
        return NnfDag(t, root, std::make_shared<VariableTable>(VariableTable::numbered(n)));
    }
};

}  // namespace

TEST(Literal, DimacsRoundTrip) {
    for (std::int64_t d : {1, -1, 7, -42}) EXPECT_EQ(Literal::from_dimacs(d).to_dimacs(), d);
    Literal l(3, true);
    EXPECT_EQ((~l).var(), 3u);
    EXPECT_FALSE((~l).positive());
    EXPECT_EQ(~~l, l);
}

TEST(VarSet, Basics) {
    VarSet a = VarSet::of({1, 5, 70});
    EXPECT_EQ(a.size(), 3u);
    EXPECT_TRUE(a.contains(70));
    EXPECT_FALSE(a.contains(2));
    VarSet b = VarSet::range(6);
    EXPECT_FALSE(a.subset_of(b));
    a.erase(70);
    EXPECT_TRUE(a.subset_of(b));
    EXPECT_EQ(a.first_common(VarSet::of({5})), VarId{5});
    EXPECT_EQ(b.count_difference(a), 4u);
    VarSet ex = VarSet::of({0});
    EXPECT_EQ(b.count_difference(a, &ex), 3u);
    EXPECT_EQ(VarSet::of({1}), [] { VarSet s = VarSet::of({1, 100}); s.erase(100); return s; }());
}

TEST(VarSetProperty, AgreesWithStdSet) {
    std::mt19937_64 rng(41);
    auto random_set = [&](std::set<VarId>& ref) {
        VarSet s;
        std::size_t n = rng() % 12;
        VarId span = rng() % 2 ? 64 : 1000;
        for (std::size_t i = 0; i < n; ++i) {
            VarId v = static_cast<VarId>(rng() % span);
            s.insert(v);
            ref.insert(v);
        }
        return s;
    };
    for (int iter = 0; iter < 500; ++iter) {
        std::set<VarId> ra, rb, rc;
        VarSet a = random_set(ra), b = random_set(rb), c = random_set(rc);
        ASSERT_EQ(a.to_vector(), std::vector<VarId>(ra.begin(), ra.end()));
        EXPECT_EQ(a.size(), ra.size());
        EXPECT_EQ(a.empty(), ra.empty());

        std::set<VarId> uni = ra;
        uni.insert(rb.begin(), rb.end());
        VarSet u = a;
        u |= b;
        EXPECT_EQ(u.to_vector(), std::vector<VarId>(uni.begin(), uni.end()));
        const VarSet* parts[] = {&a, &b};
        EXPECT_EQ(VarSet::unite(parts), u);

        std::vector<VarId> diff;
        std::set_difference(ra.begin(), ra.end(), rb.begin(), rb.end(), std::back_inserter(diff));
        EXPECT_EQ(a.difference(b), diff);
        std::size_t diff_ex = std::count_if(diff.begin(), diff.end(), [&](VarId v) { return !rc.count(v); });
        EXPECT_EQ(a.count_difference(b, &c), diff_ex);

        EXPECT_EQ(a.subset_of(b), std::includes(rb.begin(), rb.end(), ra.begin(), ra.end()));
        std::vector<VarId> common;
        std::set_intersection(ra.begin(), ra.end(), rb.begin(), rb.end(), std::back_inserter(common));
        EXPECT_EQ(a.first_common(b), common.empty() ? std::nullopt : std::optional<VarId>(common.front()));

        for (VarId v : rb) {
            a.erase(v);
            ra.erase(v);
        }
        EXPECT_EQ(a, [&] {
            VarSet s;
            for (VarId v : ra) s.insert(v);
            return s;
        }());
    }
}

TEST(Variables, NamesAndErrors) {
    VariableTable vars;
    EXPECT_EQ(vars.add("a", VarRole::State), 0u);
    EXPECT_EQ(vars.add("b", VarRole::Action), 1u);
    EXPECT_THROW(vars.add("a"), DataError);
    EXPECT_EQ(vars.id_of("b"), 1u);
    EXPECT_THROW(vars.id_of("nope"), UnknownVariable);
    EXPECT_EQ(vars.with_role(VarRole::Action), std::vector<VarId>{1});
    EXPECT_EQ(VariableTable::numbered(3)[2].name, "x3");
    EXPECT_EQ(parse_var_role(to_string(VarRole::Selector)), VarRole::Selector);
}

TEST(VarsOf, Examples) {
    Fixture f;
    EXPECT_EQ(f.t->node(f.nx).vars, VarSet::of({0}));
    NodeId c = f.t->mk_and({f.x, f.t->mk_or({f.y, f.nz})});
    EXPECT_EQ(f.t->node(c).vars, VarSet::of({0, 1, 2}));
    EXPECT_TRUE(f.t->node(NodeTable::kTrue).vars.empty());
}

TEST(MkNodes, IdentityAndAbsorbingConstants) {
    Fixture f;
    EXPECT_EQ(f.t->mk_and({f.x, NodeTable::kTrue}), f.x);
    EXPECT_EQ(f.t->mk_or({f.x, NodeTable::kFalse}), f.x);
    EXPECT_EQ(f.t->mk_and({f.x, NodeTable::kFalse}), NodeTable::kFalse);
    EXPECT_EQ(f.t->mk_or({f.x, NodeTable::kTrue}), NodeTable::kTrue);
    EXPECT_EQ(f.t->mk_and({NodeTable::kTrue, NodeTable::kTrue}), NodeTable::kTrue);
    EXPECT_EQ(f.t->mk_or({NodeTable::kFalse}), NodeTable::kFalse);
}

TEST(MkNodes, HashConsing) {
    Fixture f;
    NodeId a = f.t->mk_and({f.x, f.y});
    std::size_t before = f.t->size();
    EXPECT_EQ(f.t->mk_and({f.y, f.x}), a);
    EXPECT_EQ(f.t->mk_lit(Literal(0, true)), f.x);
    EXPECT_EQ(f.t->size(), before);
}

TEST(MkNodes, FlattenAndSingleChild) {
    Fixture f;
    NodeId xy = f.t->mk_and({f.x, f.y});
    NodeId nested = f.t->mk_and({xy, f.z});
    EXPECT_EQ(f.t->node(nested).children.size(), 3u);
    EXPECT_EQ(nested, f.t->mk_and({f.x, f.y, f.z}));
    EXPECT_EQ(f.t->mk_and({f.y}), f.y);
    EXPECT_EQ(f.t->mk_or({f.y, f.y}), f.y);
}

TEST(MkNodes, EmptyChildListThrows) {
    NodeTable t;
    std::vector<NodeId> none;
    EXPECT_THROW(t.mk_and(none), std::invalid_argument);
    EXPECT_THROW(t.mk_or(none), std::invalid_argument);
}

TEST(MkNodes, DecisionTagOnlyOnUnchangedPairs) {
    Fixture f;
    NodeId a = f.t->mk_and({f.x, f.y});
    NodeId b = f.t->mk_and({f.nx, f.z});
    EXPECT_EQ(f.t->node(f.t->mk_or({a, b}, 0)).decision, 0u);
    EXPECT_EQ(f.t->mk_or({a, NodeTable::kFalse}, 0), a);
}

TEST(NnfDag, RejectsVariablesOutsideSchema) {
    Fixture f;
    EXPECT_THROW(f.dag(f.z, 2), std::invalid_argument);
    NnfDag d(f.t, f.z, nullptr);
    EXPECT_EQ(d.num_vars(), 3u);
}

TEST(Decomposability, Examples) {
    Fixture f;
    EXPECT_FALSE(check_decomposability(f.dag(f.t->mk_and({f.x, f.y}))));
    NodeId bad = f.t->mk_and({f.x, f.t->mk_or({f.x, f.y})});
    auto v = check_decomposability(f.dag(bad));
    ASSERT_TRUE(v);
    EXPECT_EQ(v->node, bad);
    EXPECT_EQ(v->var, 0u);
}

TEST(Determinism, Examples) {
    Fixture f;
    NodeId dec = f.t->mk_or({f.t->mk_and({f.x, f.y}), f.t->mk_and({f.nx, f.z})});
    EXPECT_FALSE(check_determinism(f.dag(dec)));
    NodeId loose = f.t->mk_or({f.x, f.y});
    auto v = check_determinism(f.dag(loose));
    ASSERT_TRUE(v);
    EXPECT_EQ(v->node, loose);
    NodeId on_y = f.t->mk_or({f.t->mk_and({f.x, f.y}), f.t->mk_and({f.x, f.ny})});
    EXPECT_FALSE(check_determinism(f.dag(on_y)));
    NodeId three = f.t->mk_or({f.t->mk_and({f.x, f.y}), f.t->mk_and({f.nx, f.y}), f.z});
    EXPECT_TRUE(check_determinism(f.dag(three)));
}

TEST(Smoothness, Examples) {
    Fixture f;
    NodeId ok = f.t->mk_or({f.t->mk_and({f.x, f.y}), f.t->mk_and({f.nx, f.ny})});
    EXPECT_FALSE(check_smoothness(f.dag(ok)));
    NodeId bad = f.t->mk_or({f.t->mk_and({f.x, f.y}), f.nx});
    auto v = check_smoothness(f.dag(bad));
    ASSERT_TRUE(v);
    EXPECT_EQ(v->var, 1u);

    VarSet over = VarSet::of({0, 1, 2});
    auto root_gap = check_smoothness(f.dag(ok), &over);
    ASSERT_TRUE(root_gap);
    EXPECT_EQ(root_gap->var, 2u);
    EXPECT_FALSE(check_smoothness(f.dag(NodeTable::kFalse), &over));
}

// Random formula trees, evaluated directly and via the hash-consed table.
namespace {

struct Expr {
    enum Kind { Lit, And, Or, True, False } kind;
    Literal lit{};
    std::vector<Expr> kids;
};

Expr random_expr(std::mt19937_64& rng, std::size_t vars, int depth) {
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 9);
    int k = pick(rng);
    if (k == 0) return Expr{std::bernoulli_distribution(0.5)(rng) ? Expr::True : Expr::False, {}, {}};
    if (k <= 3 || depth <= 0) {
        auto v = std::uniform_int_distribution<VarId>(0, static_cast<VarId>(vars - 1))(rng);
        return Expr{Expr::Lit, Literal(v, std::bernoulli_distribution(0.5)(rng)), {}};
    }
    Expr e{k <= 6 ? Expr::And : Expr::Or, {}, {}};
    int n = std::uniform_int_distribution<int>(1, 4)(rng);
    for (int i = 0; i < n; ++i) e.kids.push_back(random_expr(rng, vars, depth - 1));
    return e;
}

bool eval(const Expr& e, const oracle::Assignment& a) {
    switch (e.kind) {
        case Expr::Lit: return oracle::holds(e.lit, a);
        case Expr::True: return true;
        case Expr::False: return false;
        case Expr::And:
            for (const auto& k : e.kids)
                if (!eval(k, a)) return false;
            return true;
        case Expr::Or:
            for (const auto& k : e.kids)
                if (eval(k, a)) return true;
            return false;
    }
    return false;
}

NodeId build(NodeTable& t, const Expr& e) {
    switch (e.kind) {
        case Expr::Lit: return t.mk_lit(e.lit);
        case Expr::True: return NodeTable::kTrue;
        case Expr::False: return NodeTable::kFalse;
        default: {
            std::vector<NodeId> kids;
            for (const auto& k : e.kids) kids.push_back(build(t, k));
            return e.kind == Expr::And ? t.mk_and(kids) : t.mk_or(kids);
        }
    }
}

}  // namespace

TEST(MkNodesProperty, SimplificationPreservesModels) {
    std::mt19937_64 rng(1234);
    for (int round = 0; round < 300; ++round) {
        std::size_t n = std::uniform_int_distribution<std::size_t>(1, 10)(rng);
        Expr e = random_expr(rng, n, 4);
        auto t = std::make_shared<NodeTable>();
        NodeId root = build(*t, e);
        NnfDag d(t, root, std::make_shared<VariableTable>(VariableTable::numbered(n)));
        for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
            auto a = oracle::unpack(bits, n);
            ASSERT_EQ(oracle::evaluate(d, a), eval(e, a)) << "round " << round;
        }
        // Rebuilding is idempotent.
        std::size_t size = t->size();
        EXPECT_EQ(build(*t, e), root);
        EXPECT_EQ(t->size(), size);
    }
}

TEST(MkNodesProperty, DecomposableAndVarCountsAdd) {
    std::mt19937_64 rng(99);
    for (int round = 0; round < 200; ++round) {
        std::size_t n = std::uniform_int_distribution<std::size_t>(2, 12)(rng);
        auto t = std::make_shared<NodeTable>();
        std::vector<NodeId> parts;
        std::size_t expected = 0;
        for (VarId v = 0; v < n;) {
            VarId width = std::uniform_int_distribution<VarId>(1, 3)(rng);
            std::vector<NodeId> lits;
            for (VarId k = 0; k < width && v < n; ++k, ++v) lits.push_back(t->mk_lit(Literal(v, v % 2 == 0)));
            expected += lits.size();
            parts.push_back(lits.size() == 1 ? lits[0] : t->mk_or(lits));
        }
        NodeId root = t->mk_and(parts);
        NnfDag d(t, root, std::make_shared<VariableTable>(VariableTable::numbered(n)));
        ASSERT_FALSE(check_decomposability(d));
        EXPECT_EQ(d.vars_of(root).size(), expected);
    }
}
