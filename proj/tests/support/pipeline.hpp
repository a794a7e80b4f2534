#pragma once

#include "tracekc/compile/compiler.hpp"
#include "tracekc/encode/encoder.hpp"
#include "tracekc/query/theory.hpp"

namespace testing_pipeline {

// traces -> DNF -> selector CNF -> d-DNNF theory
inline tracekc::Theory theory_from(const tracekc::TraceSet& traces, tracekc::Metadata meta = {}) {
    auto enc = tracekc::dnf_to_cnf(tracekc::encode_dnf(traces));
    return tracekc::Theory(tracekc::compile(enc.cnf, enc.vars).dag, std::move(meta));
}

}  // namespace testing_pipeline
