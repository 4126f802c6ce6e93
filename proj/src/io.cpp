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

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace bptest {

using nlohmann::json;

PureState parse_state(const json& j) {
    if (!j.is_object()) {
        throw InputError("state file: top level must be an object");
    }
    for (const char* key : {"n", "d", "amplitudes"}) {
        if (!j.contains(key)) {
            throw InputError(std::string("state file: missing field \"") + key + "\"");
        }
    }
    if (!j["n"].is_number_integer() || !j["d"].is_number_integer()) {
        throw InputError("state file: \"n\" and \"d\" must be integers");
    }
    const int n = j["n"].get<int>();
    const int d = j["d"].get<int>();
    if (n < 1 || d < 2) {
        throw InputError("state file: need n >= 1 and d >= 2");
    }
    std::uint64_t dim = 0;
    try {
        dim = checked_pow(static_cast<std::uint64_t>(d), static_cast<std::uint64_t>(n));
    } catch (const CapacityError& e) {
        throw InputError(std::string("state file: ") + e.what());
    }
    const json& amps = j["amplitudes"];
    if (!amps.is_array() || amps.size() != dim) {
        throw InputError("state file: \"amplitudes\" must be an array of " + std::to_string(dim) + " [re, im] pairs");
    }
    CVector v(static_cast<Eigen::Index>(dim));
    for (std::size_t i = 0; i < dim; ++i) {
        const json& a = amps[i];
        if (!a.is_array() || a.size() != 2 || !a[0].is_number() || !a[1].is_number()) {
            throw InputError("state file: amplitude " + std::to_string(i) + " is not a [re, im] pair");
        }
        v(static_cast<Eigen::Index>(i)) = Complex(a[0].get<double>(), a[1].get<double>());
    }
    const double norm = v.norm();
    if (!std::isfinite(norm) || std::abs(norm - 1.0) >= kLoadNormTolerance) {
        throw InputError("state file: norm " + format_double(norm) + " deviates from 1 by more than 1e-6");
    }
    return PureState::normalized(n, d, std::move(v));
}

PureState parse_state(std::istream& in) {
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw InputError(std::string("state file: ") + e.what());
    }
    return parse_state(j);
}

PureState load_state(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open state file " + path);
    }
    return parse_state(in);
}

json state_to_json(const PureState& psi) {
    json amps = json::array();
    for (Eigen::Index i = 0; i < psi.amplitudes().size(); ++i) {
        amps.push_back({psi.amplitudes()(i).real(), psi.amplitudes()(i).imag()});
    }
    return json{{"n", psi.n()}, {"d", psi.d()}, {"amplitudes", std::move(amps)}};
}

Graph parse_graph(std::istream& in) {
    std::string line;
    int line_no = 0;
    int n = -1;
    std::vector<std::pair<int, int>> edges;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream fields(line);
        std::vector<long> values;
        long v = 0;
        while (fields >> v) {
            values.push_back(v);
        }
        if (!fields.eof()) {
            throw InputError("graph file line " + std::to_string(line_no) + ": expected integers");
        }
        if (values.empty()) {
            continue;
        }
        if (n < 0) {
            if (values.size() != 1 || values[0] < 1) {
                throw InputError("graph file line " + std::to_string(line_no) + ": expected a positive vertex count");
            }
            n = static_cast<int>(values[0]);
            continue;
        }
        if (values.size() != 2) {
            throw InputError("graph file line " + std::to_string(line_no) + ": expected an edge \"u v\"");
        }
        edges.emplace_back(static_cast<int>(values[0]), static_cast<int>(values[1]));
    }
    if (n < 0) {
        throw InputError("graph file: missing vertex count");
    }
    try {
        return Graph(n, std::move(edges));
    } catch (const PreconditionError& e) {
        throw InputError(std::string("graph file: ") + e.what());
    }
}

Graph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open graph file " + path);
    }
    return parse_graph(in);
}

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

double round12(double x) {
    if (!std::isfinite(x)) {
        return x;
    }
    return std::stod(format_double(x));
}

namespace {

std::string opt(const std::optional<double>& x) {
    return x ? format_double(*x) : std::string();
}

json opt_json(const std::optional<double>& x) {
    return x ? json(round12(*x)) : json(nullptr);
}

}  // namespace

std::string bound_csv_header() {
    return "n,k,d,exact_D,D_squared,lemma3_bound,f_trace,f_cycle,satisfied,theorem_decay,small_ratio";
}

std::string bound_csv_row(const BoundReport& r) {
    std::ostringstream out;
    out << r.grid.n << ',' << r.grid.k << ',' << r.grid.d << ',' << opt(r.exact_d) << ',' << opt(r.d_squared) << ','
        << format_double(r.lemma3_bound) << ',' << opt(r.f_trace) << ',' << opt(r.f_cycle) << ','
        << (r.satisfied ? (*r.satisfied ? "true" : "false") : "") << ',' << format_double(r.theorem_decay) << ','
        << (r.small_ratio ? "true" : "false");
    return out.str();
}

json bound_to_json(const BoundReport& r) {
    return json{{"n", r.grid.n},
                {"k", r.grid.k},
                {"d", r.grid.d},
                {"exact_D", opt_json(r.exact_d)},
                {"D_squared", opt_json(r.d_squared)},
                {"lemma3_bound", round12(r.lemma3_bound)},
                {"f_trace", opt_json(r.f_trace)},
                {"f_cycle", opt_json(r.f_cycle)},
                {"satisfied", r.satisfied ? json(*r.satisfied) : json(nullptr)},
                {"theorem_decay", round12(r.theorem_decay)},
                {"small_ratio", r.small_ratio}};
}

std::string tail_csv_header() {
    return "n,d,gamma,samples,exceed_count,frequency,wilson_upper,lemma_bound,N,seed";
}

std::string tail_csv_row(const TailEstimate& t) {
    std::ostringstream out;
    out << t.n << ',' << t.d << ',' << format_double(t.gamma) << ',' << t.samples << ',' << t.exceed_count << ','
        << format_double(t.frequency) << ',' << format_double(t.wilson_upper) << ',' << format_double(t.lemma_bound)
        << ',' << format_double(t.n_threshold) << ',' << t.seed;
    return out.str();
}

json tail_to_json(const TailEstimate& t) {
    return json{{"n", t.n},
                {"d", t.d},
                {"gamma", round12(t.gamma)},
                {"samples", t.samples},
                {"exceed_count", t.exceed_count},
                {"frequency", round12(t.frequency)},
                {"wilson_upper", round12(t.wilson_upper)},
                {"lemma_bound", round12(t.lemma_bound)},
                {"N", round12(t.n_threshold)},
                {"seed", t.seed}};
}

json outcome_to_json(const TestOutcome& o, int n) {
    json transcript = json::array();
    for (const auto& r : o.transcript) {
        json cut = json::array();
        for (int p = 0; p < n; ++p) {
            if ((r.cut >> p) & 1U) {
                cut.push_back(p);
            }
        }
        transcript.push_back(
            json{{"cut", std::move(cut)}, {"repetition", r.index}, {"accepted", r.accepted}, {"block_passed", r.block_passed}});
    }
    json j{{"accepted", o.accepted},
           {"copies_used", o.copies_used},
           {"accept_probability", opt_json(o.accept_probability)},
           {"transcript", std::move(transcript)}};
    if (o.union_bound) {
        j["union_bound"] = round12(*o.union_bound);
    }
    return j;
}

json measure_report(const PureState& psi) {
    if (psi.n() < 2) {
        throw PreconditionError("measures need at least two parties");
    }
    json cuts = json::array();
    double best = 0.0;
    for (const auto& cut : cuts_up_to_complement(psi.n())) {
        const double g = gamma_max(psi, cut);
        best = std::max(best, g);
        cuts.push_back(json{{"cut", cut.members()}, {"gamma_max", round12(g)}});
    }
    const double eg = std::max(0.0, 1.0 - best * best);
    return json{{"gamma_max_per_cut", std::move(cuts)},
                {"Gamma_max", round12(best)},
                {"E_G", round12(eg)},
                {"distance_to_bp", round12(std::sqrt(eg))}};
}

}  // namespace bptest
