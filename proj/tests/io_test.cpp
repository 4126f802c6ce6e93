// Copyright 2026 The bptest Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "bptest/io.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace bptest;

namespace {

PureState parse(const std::string& text) {
    std::istringstream in(text);
    return parse_state(in);
}

Graph parse_g(const std::string& text) {
    std::istringstream in(text);
    return parse_graph(in);
}

}  // namespace

TEST(StateFile, ParsesAndRenormalizes) {
    const PureState psi = parse(R"({"n": 1, "d": 2, "amplitudes": [[0.7071068, 0], [0, 0.7071068]]})");
    EXPECT_EQ(psi.n(), 1);
    EXPECT_NEAR(psi.amplitudes().norm(), 1.0, 1e-15);
    EXPECT_NEAR(psi.amplitudes()(1).imag(), 1.0 / std::sqrt(2.0), 1e-15);
}

TEST(StateFile, RejectsMalformedInput) {
    EXPECT_THROW(parse("not json"), InputError);
    EXPECT_THROW(parse(R"({"n": 1, "d": 2})"), InputError);
    EXPECT_THROW(parse(R"({"n": 1, "d": 2, "amplitudes": [[1, 0]]})"), InputError);
    EXPECT_THROW(parse(R"({"n": 1, "d": 2, "amplitudes": [[1, 0], [0]]})"), InputError);
    EXPECT_THROW(parse(R"({"n": 1, "d": 2, "amplitudes": [[1, 0], [0.01, 0]]})"), InputError);
    EXPECT_THROW(parse(R"({"n": 0, "d": 2, "amplitudes": []})"), InputError);
    EXPECT_THROW(parse(R"({"n": 30, "d": 2, "amplitudes": []})"), InputError);
    EXPECT_THROW(parse(R"([1, 2])"), InputError);
}

TEST(StateFile, RoundTrip) {
    const PureState ghz = ghz_state(3);
    const PureState back = parse_state(state_to_json(ghz));
    EXPECT_EQ(back.amplitudes(), ghz.amplitudes());
}

TEST(GraphFile, ParsesEdgesAndComments) {
    const Graph g = parse_g("# triangle\n3\n0 1\n1 2  # inner\n\n2 0\n");
    EXPECT_EQ(g.vertices(), 3);
    EXPECT_EQ(g.edges().size(), 3u);
    EXPECT_THROW(parse_g(""), InputError);
    EXPECT_THROW(parse_g("3\n0\n"), InputError);
    EXPECT_THROW(parse_g("3\n0 x\n"), InputError);
    EXPECT_THROW(parse_g("3\n0 3\n"), InputError);
    EXPECT_THROW(parse_g("3\n1 1\n"), InputError);
}

TEST(Format, TwelveSignificantDigits) {
    EXPECT_EQ(format_double(0.1), "0.1");
    EXPECT_EQ(format_double(1.0 / 3.0), "0.333333333333");
    EXPECT_EQ(format_double(1.28e6), "1280000");
    EXPECT_EQ(round12(1.0 / 3.0), 0.333333333333);
}

TEST(BoundCsv, HeaderAndEmptyFields) {
    EXPECT_EQ(bound_csv_header(), "n,k,d,exact_D,D_squared,lemma3_bound,f_trace,f_cycle,satisfied,theorem_decay,small_ratio");
    BoundReport r;
    r.grid = {40, 2, 2};
    r.lemma3_bound = 0.5;
    r.f_cycle = 2.0;
    r.theorem_decay = -1.0;
    r.small_ratio = true;
    EXPECT_EQ(bound_csv_row(r), "40,2,2,,,0.5,,2,,-1,true");
    r.exact_d = 0.25;
    r.d_squared = 0.0625;
    r.satisfied = true;
    EXPECT_EQ(bound_csv_row(r), "40,2,2,0.25,0.0625,0.5,,2,true,-1,true");
    const auto j = bound_to_json(r);
    EXPECT_TRUE(j["f_trace"].is_null());
    EXPECT_EQ(j["satisfied"], true);
}

TEST(TailCsv, Row) {
    TailEstimate t;
    t.n = 11;
    t.d = 2;
    t.gamma = 0.5;
    t.samples = 500;
    t.exceed_count = 0;
    t.wilson_upper = 0.0076;
    t.lemma_bound = 0.009;
    t.n_threshold = 10.16;
    t.seed = 1;
    EXPECT_EQ(tail_csv_row(t), "11,2,0.5,500,0,0,0.0076,0.009,10.16,1");
    EXPECT_EQ(tail_csv_header(), "n,d,gamma,samples,exceed_count,frequency,wilson_upper,lemma_bound,N,seed");
}

TEST(MeasureReport, Fields) {
    const auto j = measure_report(ghz_state(3));
    EXPECT_EQ(j["gamma_max_per_cut"].size(), 3u);
    EXPECT_NEAR(j["Gamma_max"].get<double>(), 1.0 / std::sqrt(2.0), 1e-11);
    EXPECT_NEAR(j["E_G"].get<double>(), 0.5, 1e-11);
    EXPECT_THROW(measure_report(PureState::basis(1, 2, 0)), PreconditionError);
}

TEST(OutcomeJson, Fields) {
    TestOutcome o;
    o.accepted = true;
    o.copies_used = 4;
    o.accept_probability = 1.0;
    o.transcript.push_back({0b011, 0, true, {true, true}});
    const auto j = outcome_to_json(o, 3);
    EXPECT_EQ(j["copies_used"], 4);
    EXPECT_EQ(j["transcript"][0]["cut"], nlohmann::json({0, 1}));
    EXPECT_FALSE(j.contains("union_bound"));
}
