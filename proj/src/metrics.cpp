/*
   Copyright 2026 The treeq Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "treeq/metrics.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>

#include "parallel.hpp"
#include "treeq/errors.hpp"

namespace treeq {

std::optional<std::size_t> rounds_to_singleton(const EpisodeRecord& record) {
    for (std::size_t j = 0; j < record.candidates_after.size(); ++j) {
        if (record.candidates_after[j] == 1) return j + 1;
    }
    return std::nullopt;
}

std::size_t repeated_questions(const EpisodeRecord& record) {
    std::set<Question> seen;
    std::size_t repeats = 0;
    for (const auto& e : record.history) {
        if (!seen.insert(e.question).second) ++repeats;
    }
    return repeats;
}

EvalReport summarize(std::span<const EpisodeRecord> records, SelectionMode mode, std::uint64_t seed) {
    EvalReport r;
    r.n_games = records.size();
    r.mode = mode;
    r.seed = seed;
    if (records.empty()) return r;

    std::size_t successes = 0, asked = 0, repeats = 0, reached = 0, rounds_sum = 0;
    for (const auto& rec : records) {
        if (rec.guess_correct) ++successes;
        asked += rec.history.size();
        repeats += repeated_questions(rec);
        if (const auto t = rounds_to_singleton(rec)) {
            ++reached;
            rounds_sum += *t;
        }
        r.mean_rb += rec.r_b;
        r.mean_rc += rec.r_c;
        r.mean_return += rec.total_return;
    }
    const auto n = static_cast<double>(records.size());
    r.success_rate = static_cast<double>(successes) / n;
    r.repetition_rate = asked == 0 ? 0.0 : static_cast<double>(repeats) / static_cast<double>(asked);
    r.R = static_cast<double>(reached) / n;
    if (reached > 0) {
        r.T = static_cast<double>(rounds_sum) / static_cast<double>(reached);
        r.T_over_R = *r.T / r.R;
    }
    r.mean_rb /= n;
    r.mean_rc /= n;
    r.mean_return /= n;
    return r;
}

EvalReport evaluate(const PolicyParams& params, const WorldSpec& world, const RolloutConfig& config,
                    std::size_t n_games, SelectionMode mode, std::uint64_t master_seed,
                    std::vector<EpisodeRecord>* records, unsigned workers) {
    if (n_games < 1) throw ValidationError("evaluate needs at least one game");
    params.validate();
    config.validate();
    std::vector<EpisodeRecord> out(n_games);
    detail::parallel_for(n_games, workers, [&](std::size_t i) {
        const GameInstance game = world.instantiate(derive_seed(master_seed, Stream::kEvalWorld, i));
        Rng rng(derive_seed(master_seed, Stream::kEvalRollout, i));
        out[i] = rollout(params, game, config, mode, rng);
    });
    EvalReport report = summarize(out, mode, master_seed);
    if (records) *records = std::move(out);
    return report;
}

namespace {

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::optional<double> median_of(std::span<const EvalReport> reports, std::optional<double> EvalReport::*field) {
    std::vector<double> v;
    for (const auto& r : reports) {
        if (r.*field) v.push_back(*(r.*field));
    }
    if (v.empty()) return std::nullopt;
    return median(std::move(v));
}

double median_of(std::span<const EvalReport> reports, double EvalReport::*field) {
    std::vector<double> v;
    for (const auto& r : reports) v.push_back(r.*field);
    return median(std::move(v));
}

}  // namespace

EvalReport median_report(std::span<const EvalReport> reports) {
    if (reports.empty()) throw ValidationError("median_report needs at least one report");
    EvalReport m = reports.front();
    m.success_rate = median_of(reports, &EvalReport::success_rate);
    m.repetition_rate = median_of(reports, &EvalReport::repetition_rate);
    m.T = median_of(reports, &EvalReport::T);
    m.R = median_of(reports, &EvalReport::R);
    m.T_over_R = median_of(reports, &EvalReport::T_over_R);
    m.mean_rb = median_of(reports, &EvalReport::mean_rb);
    m.mean_rc = median_of(reports, &EvalReport::mean_rc);
    m.mean_return = median_of(reports, &EvalReport::mean_return);
    return m;
}

std::string format_real(std::optional<double> value) {
    if (!value) return {};
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", *value);
    return buf;
}

std::string csv_header() {
    return "epoch,mode,n_games,success_rate,repetition_rate,T,R,T_over_R,mean_rb,mean_rc,mean_return,seed";
}

std::string csv_row(std::size_t epoch, const EvalReport& r) {
    std::ostringstream os;
    os << epoch << ',' << to_string(r.mode) << ',' << r.n_games << ',' << format_real(r.success_rate) << ','
       << format_real(r.repetition_rate) << ',' << format_real(r.T) << ',' << format_real(r.R) << ','
       << format_real(r.T_over_R) << ',' << format_real(r.mean_rb) << ',' << format_real(r.mean_rc) << ','
       << format_real(r.mean_return) << ',' << r.seed;
    return os.str();
}

namespace {

std::optional<double> delta(std::optional<double> a, std::optional<double> b) {
    if (!a || !b) return std::nullopt;
    return *a - *b;
}

}  // namespace

ComparisonTable compare(std::span<const NamedReport> reports, std::string_view baseline) {
    if (reports.size() < 2) throw ValidationError("compare needs at least two reports");
    std::set<std::string_view> names;
    const NamedReport* base = nullptr;
    for (const auto& r : reports) {
        if (!names.insert(r.name).second) throw ValidationError("duplicate report name '" + r.name + "'");
        if (r.name == baseline) base = &r;
    }
    if (!base) throw ValidationError("baseline '" + std::string(baseline) + "' not among the reports");
    return ComparisonTable{std::string(baseline), {reports.begin(), reports.end()}};
}

std::string ComparisonTable::to_csv() const {
    const NamedReport* base = nullptr;
    for (const auto& r : rows) {
        if (r.name == baseline) base = &r;
    }
    if (!base) throw ValidationError("comparison table lost its baseline row");
    const EvalReport& b = base->report;

    std::ostringstream os;
    os << "name,mode,n_games,success_rate,repetition_rate,T,R,T_over_R,mean_rb,mean_rc,mean_return,seed,"
          "d_success_rate,d_repetition_rate,d_T,d_R,d_T_over_R,d_mean_rb,d_mean_rc,d_mean_return\n";
    for (const auto& [name, r] : rows) {
        os << name << ',' << to_string(r.mode) << ',' << r.n_games << ',' << format_real(r.success_rate) << ','
           << format_real(r.repetition_rate) << ',' << format_real(r.T) << ',' << format_real(r.R) << ','
           << format_real(r.T_over_R) << ',' << format_real(r.mean_rb) << ',' << format_real(r.mean_rc) << ','
           << format_real(r.mean_return) << ',' << r.seed << ',' << format_real(r.success_rate - b.success_rate)
           << ',' << format_real(r.repetition_rate - b.repetition_rate) << ',' << format_real(delta(r.T, b.T)) << ','
           << format_real(r.R - b.R) << ',' << format_real(delta(r.T_over_R, b.T_over_R)) << ','
           << format_real(r.mean_rb - b.mean_rb) << ',' << format_real(r.mean_rc - b.mean_rc) << ','
           << format_real(r.mean_return - b.mean_return) << '\n';
    }
    return os.str();
}

}  // namespace treeq
