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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits non-zero
// if any criterion fails. Pass criterion numbers as arguments to run a subset.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "treeq/ade.hpp"
#include "treeq/cli.hpp"
#include "treeq/guesser.hpp"
#include "treeq/metrics.hpp"
#include "treeq/policy.hpp"
#include "treeq/rewards.hpp"
#include "treeq/serialize.hpp"
#include "treeq/trainer.hpp"

using namespace treeq;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kEvalSeed = 1000003;
constexpr std::size_t kEvalGames = 10000;
constexpr std::uint64_t kSeeds[] = {0, 1, 2, 3, 4};

struct Outcome {
    bool pass = true;
    std::vector<std::string> notes;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            notes.push_back("violated: " + what);
        }
    }
    void note(const std::string& s) { notes.push_back(s); }
};

std::string fmt(const char* f, double a) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

RoundStat stat(std::size_t k, std::size_t l) { return RoundStat{k, l, l, k - l, 0}; }

// ---------------------------------------------------------------------------

Outcome reward_formulas() {
    Outcome o;
    o.require(round_binary_score(stat(4, 2)) == 1.0, "score(k=4,l=2) == 1");
    o.require(round_binary_score(stat(4, 4)) == 0.0, "score(k=4,l=4) == 0");
    o.require(round_binary_score(stat(5, 3)) == 0.8, "score(k=5,l=3) == 0.8");

    const RewardConfig defaults;  // alpha 4, beta 0.7
    const EpisodeOutcome won1{{stat(10, 5)}, 1, 10, true};
    const EpisodeOutcome wonN{{stat(10, 10)}, 10, 10, true};
    const EpisodeOutcome lost{{stat(10, 5)}, 1, 10, false};
    o.require(candidate_min_reward(won1, defaults) == 4.7, "r_c(success, k_end=1, N=10) == 4.7");
    o.require(candidate_min_reward(wonN, defaults) == 4.0, "r_c(success, k_end=N) == 4.0");
    o.require(candidate_min_reward(lost, defaults) == 0.0, "r_c(failure) == 0");

    const std::vector<EpisodeOutcome> episodes{
        won1, wonN, lost, {{stat(16, 9), stat(9, 5), stat(5, 3)}, 2, 16, true}, {{stat(7, 4), stat(4, 4)}, 4, 7, false}};
    for (bool rs : {false, true}) {
        RewardConfig no_rb = defaults;
        no_rb.gamma = 0.0;
        no_rb.use_rs = rs;
        RewardConfig no_rc = defaults;
        no_rc.alpha = 0.0;
        no_rc.beta = 0.0;
        no_rc.use_rs = rs;
        for (const auto& ep : episodes) {
            const double rs_term = rs ? success_reward(ep) : 0.0;
            o.require(combined_reward(ep, no_rb) == candidate_min_reward(ep, no_rb) + rs_term, "gamma = 0 leaves r_c (+ r_s)");
            o.require(combined_reward(ep, no_rc) == no_rc.gamma * binary_reward(ep, no_rc) + rs_term,
                      "alpha = beta = 0 leaves gamma * r_b (+ r_s)");
        }
    }
    return o;
}

Outcome ade_invariants() {
    Outcome o;
    Rng rng(derive_seed(2, Stream::kEvalWorld, 0));
    const OracleConfig truthful{};
    std::size_t violations = 0, rounds = 0;
    for (std::uint64_t g = 0; g < 10000; ++g) {
        const std::size_t n = 2 + rng.index(31);
        const auto game = generate_world(rng.next(), n, default_schema());
        const auto questions = enumerate_questions(*game.schema);
        auto tracker = new_tracker(game);
        const std::size_t length = 1 + rng.index(8);
        for (std::size_t r = 0; r < length; ++r) {
            const Question q = questions[rng.index(questions.size())];
            const auto before = tracker.candidates;
            const auto dist = answer_distribution(tracker, q, game, truthful, rng);
            tracker = update(std::move(tracker), q, dist, answer_for_target(q, game, truthful, rng), truthful).first;
            ++rounds;
            const bool contains = std::binary_search(tracker.candidates.begin(), tracker.candidates.end(), game.target_id);
            const bool shrinks = std::includes(before.begin(), before.end(), tracker.candidates.begin(), tracker.candidates.end());
            const bool equal = tracker.candidates == testing::history_filter(game.objects, tracker.history);
            violations += !contains + !shrinks + !equal;
        }
    }
    o.note(std::to_string(rounds) + " updates over 10000 games, " + std::to_string(violations) + " violations");
    o.require(violations == 0, "zero invariant violations");
    return o;
}

Outcome gradient_check() {
    Outcome o;
    Rng rng(derive_seed(3, Stream::kEvalWorld, 0));
    double worst = 0.0, worst_zero = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const auto game = generate_world(rng.next(), 2 + rng.index(31), default_schema());
        const DialogueState state(game.schema, game.objects, testing::random_history(game, rng.index(5), rng));
        PolicyParams params;
        for (double& t : params.theta) t = 4.0 * rng.uniform() - 2.0;
        params.temperature = 0.5 + rng.uniform();
        const auto actions = action_space(params, state);
        const Action a = actions[rng.index(actions.size())];

        // Draw until the target action comes up, to get its score gradient.
        Rng pick(static_cast<std::uint64_t>(trial));
        ActionChoice choice;
        do choice = select_action(params, state, SelectionMode::kSample, pick);
        while (!(choice.action == a));

        const double h = 1e-5;
        double diff = 0.0, norm_g = 0.0, norm_fd = 0.0;
        for (std::size_t i = 0; i < kFeatureCount; ++i) {
            auto up = params, down = params;
            up.theta[i] += h;
            down.theta[i] -= h;
            const double fd = (log_probability(up, state, a) - log_probability(down, state, a)) / (2.0 * h);
            diff += (choice.score_gradient[i] - fd) * (choice.score_gradient[i] - fd);
            norm_g += choice.score_gradient[i] * choice.score_gradient[i];
            norm_fd += fd * fd;
        }
        const double scale = std::sqrt(std::max(norm_g, norm_fd));
        worst = std::max(worst, scale > 0.0 ? std::sqrt(diff) / scale : std::sqrt(diff));

        // sum_a pi(a) (phi(a) - E[phi]) over the whole action space
        const auto dist = action_distribution(params, state);
        FeatureVector mean{};
        for (const auto& ap : dist) {
            const auto f = features(state, ap.action);
            for (std::size_t i = 0; i < kFeatureCount; ++i) mean[i] += ap.probability * f[i];
        }
        FeatureVector total{};
        for (const auto& ap : dist) {
            const auto f = features(state, ap.action);
            for (std::size_t i = 0; i < kFeatureCount; ++i) total[i] += ap.probability * (f[i] - mean[i]) / params.temperature;
        }
        for (double t : total) worst_zero = std::max(worst_zero, std::fabs(t));
    }
    o.note("max relative error " + fmt("%.3g", worst) + ", max |E[score]| " + fmt("%.3g", worst_zero));
    o.require(worst <= 1e-5, "relative error <= 1e-5");
    o.require(worst_zero <= 1e-10, "expected score <= 1e-10");
    return o;
}

Outcome bisection_bound() {
    Outcome o;
    const auto params = PolicyParams::bisection_reference();
    for (int b = 1; b <= 6; ++b) {
        RolloutConfig cfg;
        cfg.j_max = static_cast<std::size_t>(b);
        std::size_t good = 0;
        for (std::uint64_t g = 0; g < 100; ++g) {
            const auto game = make_bitworld(b, derive_seed(4, Stream::kEvalWorld, g));
            Rng rng(derive_seed(4, Stream::kEvalRollout, g));
            const auto ep = rollout(params, game, cfg, SelectionMode::kGreedy, rng);
            bool ok = ep.history.size() == static_cast<std::size_t>(b) && ep.r_b == static_cast<double>(b) && ep.k_end == 1;
            for (std::size_t j = 0; ok && j < ep.round_stats.size(); ++j) {
                ok = round_binary_score(ep.round_stats[j]) == 1.0;
                const std::vector<Exchange> prefix(ep.history.begin(), ep.history.begin() + static_cast<long>(j + 1));
                const std::size_t left = testing::history_filter(game.objects, prefix).size();
                ok = ok && left == (std::size_t{1} << (b - static_cast<int>(j) - 1));
            }
            ok = ok && rounds_to_singleton(ep) == static_cast<std::size_t>(b);
            good += ok;
        }
        o.note("b=" + std::to_string(b) + ": " + std::to_string(good) + "/100 games");
        o.require(good == 100, "b=" + std::to_string(b) + " singleton in exactly b rounds in 100/100 games");
    }
    return o;
}

// Trained policies, keyed by a description of the run, shared across criteria.
class Runs {
  public:
    const PolicyParams& get(const std::string& key, const TrainConfig& config) {
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        const auto t0 = std::chrono::steady_clock::now();
        auto params = train(config).params;
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("    trained %-28s %.1fs  theta", key.c_str(), secs);
        for (double t : params.theta) std::printf(" %.3f", t);
        std::printf("\n");
        std::fflush(stdout);
        return cache_.emplace(key, std::move(params)).first->second;
    }

  private:
    std::map<std::string, PolicyParams> cache_;
};

Outcome learning(Runs& runs) {
    Outcome o;
    TrainConfig base;  // default world, j_max 5, no r_s, 150 epochs
    const auto uniform = evaluate(PolicyParams::uniform(), base.world, base.rollout, kEvalGames, SelectionMode::kGreedy, kEvalSeed);
    const auto reference =
        evaluate(PolicyParams::bisection_reference(), base.world, base.rollout, kEvalGames, SelectionMode::kGreedy, kEvalSeed);
    o.note("uniform greedy success " + fmt("%.4f", uniform.success_rate) + ", reference greedy success " +
           fmt("%.4f", reference.success_rate));
    int near_reference = 0;
    for (std::uint64_t seed : kSeeds) {
        TrainConfig c = base;
        c.master_seed = seed;
        const auto& params = runs.get("tsade_nors_j5_seed" + std::to_string(seed), c);
        const auto r = evaluate(params, c.world, c.rollout, kEvalGames, SelectionMode::kGreedy, kEvalSeed);
        o.note("seed " + std::to_string(seed) + ": greedy success " + fmt("%.4f", r.success_rate));
        o.require(r.success_rate >= uniform.success_rate + 0.20, "seed " + std::to_string(seed) + " beats uniform by 20 points");
        near_reference += r.success_rate >= reference.success_rate - 0.10;
    }
    o.require(near_reference >= 4, "within 10 points of the reference on >= 4 of 5 seeds");
    return o;
}

// Ablations run on the r_s setting with j_max 5; judged on sampled play.
TrainConfig ablation_base(std::size_t j_max) {
    TrainConfig base;
    base.rollout.j_max = j_max;
    base.rollout.reward.use_rs = true;
    return base;
}

std::map<std::string, std::vector<EvalReport>> ablation_reports(Runs& runs, std::size_t j_max, SelectionMode mode,
                                                                const std::set<std::string>& only) {
    std::map<std::string, std::vector<EvalReport>> out;
    for (const auto& nc : ablation_suite(ablation_base(j_max))) {
        if (!only.count(nc.name)) continue;
        for (std::uint64_t seed : kSeeds) {
            TrainConfig c = nc.config;
            c.master_seed = seed;
            const auto& params = runs.get(nc.name + "_rs_j" + std::to_string(j_max) + "_seed" + std::to_string(seed), c);
            out[nc.name].push_back(evaluate(params, c.world, c.rollout, kEvalGames, mode, kEvalSeed));
        }
    }
    return out;
}

double median_of(const std::vector<EvalReport>& reports, double EvalReport::*field) {
    std::vector<double> v;
    for (const auto& r : reports) v.push_back(r.*field);
    return median(v);
}

double median_t_over_r(const std::vector<EvalReport>& reports) {
    std::vector<double> v;
    for (const auto& r : reports) v.push_back(r.T_over_R.value_or(INFINITY));
    return median(v);
}

Outcome ablation_direction(Runs& runs) {
    Outcome o;
    const std::set<std::string> variants{"full", "wo_rb", "wo_rc"};
    for (SelectionMode mode : {SelectionMode::kGreedy, SelectionMode::kSample}) {
        auto reports = ablation_reports(runs, 5, mode, variants);
        const double rep_full = median_of(reports["full"], &EvalReport::repetition_rate);
        const double rep_wo_rb = median_of(reports["wo_rb"], &EvalReport::repetition_rate);
        const double succ_full = median_of(reports["full"], &EvalReport::success_rate);
        const double succ_wo_rc = median_of(reports["wo_rc"], &EvalReport::success_rate);
        const std::string m(to_string(mode));
        o.note(m + ": median repetition full " + fmt("%.5f", rep_full) + ", wo_rb " + fmt("%.5f", rep_wo_rb) +
               "; median success full " + fmt("%.5f", succ_full) + ", wo_rc " + fmt("%.5f", succ_wo_rc));
        if (mode == SelectionMode::kSample) {
            o.require(rep_wo_rb > rep_full, "sample: median repetition(wo_rb) > median repetition(full)");
            o.require(succ_wo_rc < succ_full, "sample: median success(wo_rc) < median success(full)");
        }
    }
    return o;
}

Outcome efficiency_direction(Runs& runs) {
    Outcome o;
    for (std::size_t j_max : {5u, 6u}) {
        for (SelectionMode mode : {SelectionMode::kGreedy, SelectionMode::kSample}) {
            auto reports = ablation_reports(runs, j_max, mode, {"full", "rs_only"});
            const double tsade = median_t_over_r(reports["full"]);
            const double rs_only = median_t_over_r(reports["rs_only"]);
            const std::string m(to_string(mode));
            o.note("j_max " + std::to_string(j_max) + " " + m + ": median T/R with r_b, r_c and r_s " + fmt("%.5f", tsade) +
                   ", r_s only " + fmt("%.5f", rs_only));
            if (mode == SelectionMode::kSample)
                o.require(tsade <= rs_only, "sample, j_max " + std::to_string(j_max) + ": T/R(full) <= T/R(rs_only)");
        }
    }
    return o;
}

Outcome guesser_luck() {
    Outcome o;
    Rng rng(derive_seed(8, Stream::kGuesser, 0));
    std::size_t hits = 0;
    const std::size_t trials = 10000;
    for (std::size_t t = 0; t < trials; ++t) {
        // Answer all but one bit truthfully: exactly two objects stay consistent.
        const int bits = 2 + static_cast<int>(rng.index(4));
        const auto game = make_bitworld(bits, rng.next());
        const std::size_t skip = rng.index(static_cast<std::size_t>(bits));
        std::vector<Exchange> history;
        for (int b = 0; b < bits; ++b) {
            if (static_cast<std::size_t>(b) == skip) continue;
            const Question q{static_cast<std::size_t>(b), 1};
            history.push_back({q, testing::raw_answer(q, game.target())});
        }
        if (testing::history_filter(game.objects, history).size() != 2) {
            o.require(false, "constructed dialogue leaves two candidates");
            return o;
        }
        hits += guess(game, history, GuesserConfig{}, rng) == game.target_id;
    }
    const double freq = static_cast<double>(hits) / trials;
    o.note("success frequency " + fmt("%.4f", freq) + " over 10000 trials");
    o.require(std::fabs(freq - 0.5) <= 0.02, "0.5 +/- 0.02");
    return o;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Outcome determinism() {
    Outcome o;
    const fs::path dir = fs::temp_directory_path() / "treeq_acceptance_determinism";
    fs::remove_all(dir);
    fs::create_directories(dir);
    {
        std::ofstream(dir / "exp.cfg") << "seed=11\n"
                                          "train.epochs=3\n"
                                          "train.games_per_epoch=640\n"
                                          "eval.n_games=200\n"
                                          "checkpoint.every=1\n";
    }
    const ConfigSource source{dir / "exp.cfg", {}};
    std::ostringstream sink;
    for (const char* run : {"a", "b"}) {
        o.require(cmd_train(source, dir / run / "train", sink, sink) == kExitOk, std::string("train run ") + run);
        EvalOptions eval;
        eval.checkpoint = dir / run / "train" / "checkpoint_final.json";
        eval.write_replay = true;
        o.require(cmd_eval(source, eval, dir / run / "eval", sink, sink) == kExitOk, std::string("eval run ") + run);
    }
    for (const char* f : {"train/log.csv", "train/checkpoint_final.json", "train/checkpoint_epoch_0002.json",
                          "eval/report.csv", "eval/replay_greedy.json", "eval/replay_sample.json"}) {
        const std::string a = slurp(dir / "a" / f), b = slurp(dir / "b" / f);
        o.require(!a.empty() && a == b, std::string(f) + " byte-identical across reruns");
    }
    for (const char* f : {"eval/replay_greedy.json", "eval/replay_sample.json"}) {
        const auto doc = replay_from_json(read_json_file(dir / "a" / f));
        const auto bad = verify_replay(doc);
        o.note(std::string(f) + ": " + std::to_string(doc.episodes.size() - bad.size()) + "/" +
               std::to_string(doc.episodes.size()) + " episodes reconstructed");
        o.require(bad.empty() && !doc.episodes.empty(), std::string(f) + " reconstructs every record");
    }
    fs::remove_all(dir);
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    std::set<int> selected;
    for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));
    const auto wanted = [&](int id) { return selected.empty() || selected.count(id); };

    Runs runs;
    struct Criterion {
        int id;
        const char* name;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "reward formula suite", reward_formulas},
        {2, "candidate tracker invariants", ade_invariants},
        {3, "policy gradient check", gradient_check},
        {4, "log2(N) bisection bound", bisection_bound},
        {5, "learning beats uniform and nears bisection", [&] { return learning(runs); }},
        {6, "ablation direction", [&] { return ablation_direction(runs); }},
        {7, "efficiency direction", [&] { return efficiency_direction(runs); }},
        {8, "guesser luck model", guesser_luck},
        {9, "determinism and replay", determinism},
    };

    int failed = 0;
    for (const auto& c : criteria) {
        if (!wanted(c.id)) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.note(std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        for (const auto& n : o.notes) std::printf("    %s\n", n.c_str());
        std::printf("%s criterion %d: %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", c.id, c.name, secs);
        std::fflush(stdout);
        failed += !o.pass;
    }
    std::printf("%d criteria failed\n", failed);
    return failed == 0 ? 0 : 1;
}
