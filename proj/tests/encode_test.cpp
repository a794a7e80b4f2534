#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "oracle.hpp"
#include "tracekc/encode/encoder.hpp"
#include "tracekc/encode/trace_io.hpp"
#include "tracekc/error.hpp"

using namespace tracekc;

namespace {

TraceSet two_var(std::vector<std::pair<std::string, std::string>> rows) {
    TraceSet t(Schema{{"x", "y"}, {"A", "B"}});
    for (auto& [bits, a] : rows) t.add({from_bit_string(bits), a});
    return t;
}

std::set<Literal> as_set(const Term& t) { return {t.begin(), t.end()}; }

}  // namespace

TEST(Schema, Validation) {
    EXPECT_NO_THROW((Schema{{"x"}, {"A", "B"}}.validate()));
    EXPECT_THROW((Schema{{}, {"A", "B"}}.validate()), DataError);
    EXPECT_THROW((Schema{{"x"}, {"A"}}.validate()), DataError);
    EXPECT_THROW((Schema{{"x", "x"}, {"A", "B"}}.validate()), DataError);
    EXPECT_THROW((Schema{{"x"}, {"A", "A"}}.validate()), DataError);
}

TEST(TraceSet, RejectsNonConformingRows) {
    TraceSet t(Schema{{"x", "y"}, {"A", "B"}});
    EXPECT_THROW(t.add({from_bit_string("1"), "A"}), DataError);
    EXPECT_THROW(t.add({from_bit_string("10"), "C"}), DataError);
    EXPECT_NO_THROW(t.add({from_bit_string("10"), "B"}));
    EXPECT_EQ(to_bit_string(t.observations()[0].state), "10");
}

TEST(EncodeDnf, SingleObservation) {
    DnfFormula dnf = encode_dnf(two_var({{"10", "A"}}));
    ASSERT_EQ(dnf.terms.size(), 1u);
    const auto& v = *dnf.vars;
    std::set<Literal> expected{Literal(v.id_of("x"), true), Literal(v.id_of("y"), false),
                               Literal(v.id_of("action=A"), true), Literal(v.id_of("action=B"), false)};
    EXPECT_EQ(as_set(dnf.terms[0]), expected);
    EXPECT_EQ(v[v.id_of("x")].role, VarRole::State);
    EXPECT_EQ(v[v.id_of("action=B")].role, VarRole::Action);
}

TEST(EncodeDnf, DuplicatesCollapse) {
    EXPECT_EQ(encode_dnf(two_var({{"10", "A"}, {"10", "A"}})).terms.size(), 1u);
    EXPECT_EQ(encode_dnf(two_var({{"10", "A"}, {"10", "B"}})).terms.size(), 2u);
}

TEST(EncodeDnf, EmptyTraceSetThrows) { EXPECT_THROW(encode_dnf(TraceSet(Schema{{"x"}, {"A", "B"}})), DataError); }

TEST(EncodeDnf, CarKeyRowsBecomeTerms) {
    TraceSet t(Schema{{"D", "K"}, {"dr", "sw", "in"}});
    t.add({from_bit_string("00"), "in"});
    t.add({from_bit_string("01"), "sw"});
    t.add({from_bit_string("11"), "dr"});
    DnfFormula dnf = encode_dnf(t);
    ASSERT_EQ(dnf.terms.size(), 3u);
    for (const auto& term : dnf.terms) EXPECT_EQ(term.size(), 5u);
    EXPECT_EQ(oracle::count(dnf), 3u);
}

TEST(PolicyConflicts, Examples) {
    auto c = detect_policy_conflicts(two_var({{"01", "A"}, {"01", "B"}, {"11", "A"}}));
    ASSERT_EQ(c.size(), 1u);
    EXPECT_EQ(to_bit_string(c[0].state), "01");
    EXPECT_EQ(c[0].actions, (std::vector<std::string>{"A", "B"}));
    EXPECT_TRUE(detect_policy_conflicts(two_var({{"01", "A"}, {"01", "A"}})).empty());
}

TEST(DnfToCnf, SingleTermExample) {
    DnfFormula dnf;
    auto vars = std::make_shared<VariableTable>(VariableTable::numbered(2));
    dnf.vars = vars;
    dnf.terms = {{Literal(0, true), Literal(1, true)}};
    SelectorEncoding enc = dnf_to_cnf(dnf);
    ASSERT_EQ(enc.selectors.size(), 1u);
    Literal s(enc.selectors[0], true);
    std::set<std::set<Literal>> got;
    for (const auto& c : enc.cnf.clauses) got.insert({c.begin(), c.end()});
    std::set<std::set<Literal>> want{{~s, Literal(0, true)},
                                     {~s, Literal(1, true)},
                                     {s, Literal(0, false), Literal(1, false)},
                                     {s}};
    EXPECT_EQ(got, want);
    EXPECT_EQ(oracle::count(enc.cnf), 1u);
    EXPECT_EQ((*enc.vars)[enc.selectors[0]].role, VarRole::Selector);
}

TEST(DnfToCnf, TautologyExample) {
    DnfFormula dnf;
    dnf.vars = std::make_shared<VariableTable>(VariableTable::numbered(1));
    dnf.terms = {{Literal(0, true)}, {Literal(0, false)}};
    EXPECT_EQ(oracle::count(dnf_to_cnf(dnf).cnf), 2u);
}

TEST(DnfToCnf, EmptyThrows) {
    DnfFormula dnf;
    dnf.vars = std::make_shared<VariableTable>(VariableTable::numbered(1));
    EXPECT_THROW(dnf_to_cnf(dnf), DataError);
}

TEST(DnfToCnfProperty, CountPreservationAndShape) {
    std::mt19937_64 rng(2024);
    for (int round = 0; round < 150; ++round) {
        TraceSet t = oracle::random_traces(rng, 5, 3, 8);
        DnfFormula dnf = encode_dnf(t);
        SelectorEncoding enc = dnf_to_cnf(dnf);
        ASSERT_LE(enc.cnf.num_vars, 16u);
        EXPECT_EQ(enc.selectors.size(), dnf.terms.size());
        std::size_t clauses = 1;
        for (const auto& term : dnf.terms) clauses += term.size() + 1;
        EXPECT_EQ(enc.cnf.clauses.size(), clauses);
        EXPECT_EQ(oracle::count(enc.cnf), oracle::count(dnf)) << "round " << round;
        EXPECT_EQ(oracle::count(dnf), dnf.terms.size());
    }
}

TEST(EncodeDnfProperty, ObservationsAreModelsAndOneHot) {
    std::mt19937_64 rng(77);
    for (int round = 0; round < 100; ++round) {
        TraceSet t = oracle::random_traces(rng, 6, 4, 20);
        DnfFormula dnf = encode_dnf(t);
        const auto& vars = *dnf.vars;
        auto actions = vars.with_role(VarRole::Action);
        std::size_t s = t.schema().state_variables.size();
        std::set<std::pair<StateBits, std::string>> rows;
        for (const auto& o : t.observations()) {
            rows.insert({o.state, o.action});
            oracle::Assignment a(vars.size(), false);
            for (std::size_t i = 0; i < s; ++i) a[i] = o.state[i];
            a[vars.id_of(kActionPrefix + o.action)] = true;
            EXPECT_TRUE(oracle::satisfies(dnf, a));
        }
        oracle::count_where(vars.size(), [&](const oracle::Assignment& a) {
            if (!oracle::satisfies(dnf, a)) return false;
            int hot = 0;
            std::string label;
            for (VarId v : actions)
                if (a[v]) ++hot, label = vars[v].name.substr(std::string(kActionPrefix).size());
            EXPECT_EQ(hot, 1);
            StateBits st(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(s));
            EXPECT_TRUE(rows.count({st, label}));
            return true;
        });
    }
}

TEST(TraceIo, JsonlRoundTrip) {
    oracle::TempDir dir("io");
    TraceSet t = two_var({{"10", "A"}, {"01", "B"}});
    t.provenance()["seed"] = "5";
    save_traces(t, dir / "t.jsonl");
    EXPECT_TRUE(std::filesystem::exists(dir / "t.schema.json"));
    TraceSet back = load_traces(dir / "t.jsonl");
    EXPECT_EQ(back.schema(), t.schema());
    EXPECT_EQ(back.observations(), t.observations());
    EXPECT_EQ(back.provenance().at("seed"), "5");

    std::ostringstream out;
    write_jsonl(t, out);
    EXPECT_EQ(out.str().substr(0, out.str().find('\n')), R"({"state":{"x":1,"y":0},"action":"A"})");
}

TEST(TraceIo, SchemaMismatchIsDataError) {
    Schema s{{"x", "y"}, {"A", "B"}};
    for (std::string bad : {R"({"state":{"x":1},"action":"A"})", R"({"state":{"x":1,"y":0,"z":1},"action":"A"})",
                            R"({"state":{"x":1,"y":0},"action":"C"})", R"({"state":{"x":2,"y":0},"action":"A"})",
                            "not json"}) {
        std::istringstream in(bad + "\n");
        EXPECT_THROW(read_jsonl(in, s), DataError) << bad;
    }
}
