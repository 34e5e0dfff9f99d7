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

#include "treeq/cli.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "treeq/errors.hpp"
#include "treeq/serialize.hpp"

namespace treeq {

namespace fs = std::filesystem;

namespace {

int guarded(std::ostream& err, const std::function<int()>& body) {
    try {
        return body();
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const nlohmann::json::exception& e) {
        err << "error: malformed document: " << e.what() << "\n";
        return kExitConfig;
    } catch (const NumericError& e) {
        err << "numeric failure: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const std::exception& e) {
        err << "failure: " << e.what() << "\n";
        return kExitFailure;
    }
}

std::string csv_preamble(const std::string& digest, std::uint64_t seed) {
    return "# " + std::string(kVersion) + " config_digest=" + digest + " master_seed=" + std::to_string(seed) + "\n";
}

Json manifest(const std::string& command, const ExperimentConfig& config, const std::vector<std::string>& outputs) {
    Json cfg = Json::object();
    for (const auto& [k, v] : config.to_map()) cfg[k] = v;
    return Json{
        {"format_version", 1},  {"command", command}, {"version", kVersion},
        {"config_digest", config.digest()}, {"master_seed", config.seed}, {"eval_seed", config.eval_seed},
        {"config", cfg},        {"outputs", outputs},
    };
}

std::vector<SelectionMode> modes_from(const ExperimentConfig& config, const std::optional<std::string>& flag) {
    if (!flag) return config.eval_modes;
    if (*flag == "greedy") return {SelectionMode::kGreedy};
    if (*flag == "sample") return {SelectionMode::kSample};
    if (*flag == "both") return {SelectionMode::kGreedy, SelectionMode::kSample};
    throw ValidationError("--mode must be greedy, sample or both");
}

std::string lower_trimmed(std::string s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return {};
    s = s.substr(first, s.find_last_not_of(" \t\r\n") - first + 1);
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

void print_object_table(const GameInstance& game, std::ostream& out) {
    const auto& schema = *game.schema;
    std::vector<std::size_t> width(schema.size());
    for (std::size_t a = 0; a < schema.size(); ++a) {
        width[a] = schema.attribute(a).name.size();
        for (const auto& v : schema.attribute(a).values) width[a] = std::max(width[a], v.size());
        width[a] = std::max(width[a], kUndefinedName.size());
    }
    out << std::setw(4) << "id";
    for (std::size_t a = 0; a < schema.size(); ++a) out << "  " << std::left << std::setw(static_cast<int>(width[a])) << schema.attribute(a).name << std::right;
    out << "\n";
    for (const auto& obj : game.objects) {
        out << std::setw(4) << obj.id;
        for (std::size_t a = 0; a < schema.size(); ++a)
            out << "  " << std::left << std::setw(static_cast<int>(width[a])) << value_name(schema, obj, a) << std::right;
        out << "\n";
    }
}

std::string describe(const GameInstance& game, ObjectId id) {
    std::string s;
    const auto& obj = game.objects.at(id);
    for (std::size_t a = 0; a < game.schema->size(); ++a) {
        if (a) s += ' ';
        s += game.schema->attribute(a).name + "=" + std::string(value_name(*game.schema, obj, a));
    }
    return s;
}

}  // namespace

ExperimentConfig resolve_config(const ConfigSource& source) {
    ExperimentConfig config = source.config_path ? load_config(*source.config_path) : ExperimentConfig{};
    for (const auto& o : source.overrides) apply_override(config, o);
    config.validate();
    return config;
}

int cmd_train(const ConfigSource& source, const fs::path& out_dir, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const ExperimentConfig config = resolve_config(source);
        const TrainConfig tc = config.train_config();
        const std::string digest = config.digest();
        fs::create_directories(out_dir);

        std::vector<std::string> outputs = {"log.csv", "checkpoint_final.json"};
        std::string log = csv_preamble(digest, config.seed) + csv_header() + "\n";
        const auto result = train(tc, [&](const EpochLog& row, const PolicyParams& params) {
            log += csv_row(row.epoch, row.report) + "\n";
            if (config.checkpoint_every > 0 && row.epoch % config.checkpoint_every == 0) {
                std::ostringstream name;
                name << "checkpoint_epoch_" << std::setw(4) << std::setfill('0') << row.epoch << ".json";
                write_json_file(out_dir / name.str(), to_json(Checkpoint{params, digest, config.seed, row.epoch}));
                outputs.push_back(name.str());
            }
        });
        write_text_file(out_dir / "log.csv", log);
        write_json_file(out_dir / "checkpoint_final.json",
                        to_json(Checkpoint{result.params, digest, config.seed, config.epochs}));
        write_json_file(out_dir / "manifest.json", manifest("train", config, outputs));

        out << "trained " << config.epochs << " epochs (digest " << digest << ")\n";
        if (!result.log.empty()) out << csv_header() << "\n" << csv_row(result.log.back().epoch, result.log.back().report) << "\n";
        return kExitOk;
    });
}

int cmd_eval(const ConfigSource& source, const EvalOptions& options, const fs::path& out_dir, std::ostream& out,
             std::ostream& err) {
    return guarded(err, [&] {
        ExperimentConfig config = resolve_config(source);
        if (options.games) config.eval_games = *options.games;
        if (options.seed) config.eval_seed = *options.seed;
        config.validate();
        const Checkpoint ck = checkpoint_from_json(read_json_file(options.checkpoint));
        const auto modes = modes_from(config, options.mode);
        const std::string digest = config.digest();
        fs::create_directories(out_dir);

        std::vector<std::string> outputs = {"report.csv"};
        std::string csv = csv_preamble(digest, config.eval_seed) + csv_header() + "\n";
        for (const auto mode : modes) {
            std::vector<EpisodeRecord> records;
            const auto report = evaluate(ck.params, config.world_spec(), config.rollout, config.eval_games, mode,
                                         config.eval_seed, &records, config.workers);
            csv += csv_row(ck.epoch, report) + "\n";
            if (options.write_replay) {
                ReplayDocument replay{digest, config.eval_seed, mode, ck.params, config.rollout, {}};
                for (std::size_t i = 0; i < records.size(); ++i) {
                    replay.episodes.push_back({config.world_spec().instantiate(
                                                   derive_seed(config.eval_seed, Stream::kEvalWorld, i)),
                                               derive_seed(config.eval_seed, Stream::kEvalRollout, i),
                                               std::move(records[i])});
                }
                const std::string name = "replay_" + std::string(to_string(mode)) + ".json";
                write_json_file(out_dir / name, to_json(replay));
                outputs.push_back(name);
            }
        }
        write_text_file(out_dir / "report.csv", csv);
        Json m = manifest("eval", config, outputs);
        m["checkpoint"] = options.checkpoint.string();
        m["checkpoint_digest"] = ck.training_config_digest;
        write_json_file(out_dir / "manifest_eval.json", m);
        out << csv;
        return kExitOk;
    });
}

int cmd_ablate(const ConfigSource& source, const fs::path& out_dir, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const ExperimentConfig config = resolve_config(source);
        const std::string digest = config.digest();
        fs::create_directories(out_dir / "checkpoints");

        const auto suite = ablation_suite(config.train_config());
        std::vector<std::string> outputs = {"runs.csv"};
        std::string runs = csv_preamble(digest, config.eval_seed) + "variant,train_seed," + csv_header() + "\n";
        // mode -> variant -> per-seed reports
        std::vector<std::vector<std::vector<EvalReport>>> by_mode(
            config.eval_modes.size(), std::vector<std::vector<EvalReport>>(suite.size()));

        for (std::size_t v = 0; v < suite.size(); ++v) {
            for (const auto seed : config.ablate_seeds) {
                TrainConfig tc = suite[v].config;
                tc.master_seed = seed;
                const auto trained = train(tc);
                write_json_file(out_dir / "checkpoints" / (suite[v].name + "_seed" + std::to_string(seed) + ".json"),
                                to_json(Checkpoint{trained.params, digest, seed, tc.epochs}));
                for (std::size_t m = 0; m < config.eval_modes.size(); ++m) {
                    const auto report = evaluate(trained.params, tc.world, tc.rollout, config.eval_games,
                                                 config.eval_modes[m], config.eval_seed, nullptr, config.workers);
                    runs += suite[v].name + "," + std::to_string(seed) + "," + csv_row(tc.epochs, report) + "\n";
                    by_mode[m][v].push_back(report);
                }
                out << suite[v].name << " seed " << seed << " done\n";
            }
        }
        write_text_file(out_dir / "runs.csv", runs);

        for (std::size_t m = 0; m < config.eval_modes.size(); ++m) {
            std::vector<NamedReport> named;
            for (std::size_t v = 0; v < suite.size(); ++v) named.push_back({suite[v].name, median_report(by_mode[m][v])});
            const std::string name = "ablation_" + std::string(to_string(config.eval_modes[m])) + ".csv";
            const std::string table = compare(named, "full").to_csv();
            write_text_file(out_dir / name, csv_preamble(digest, config.eval_seed) + table);
            outputs.push_back(name);
            out << "# " << name << " (median over " << config.ablate_seeds.size() << " seeds)\n" << table;
        }
        write_json_file(out_dir / "manifest.json", manifest("ablate", config, outputs));
        return kExitOk;
    });
}

int cmd_play(const ConfigSource& source, const std::optional<fs::path>& checkpoint, std::uint64_t seed,
             std::istream& in, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const ExperimentConfig config = resolve_config(source);
        const PolicyParams params = checkpoint ? checkpoint_from_json(read_json_file(*checkpoint)).params
                                               : PolicyParams::bisection_reference();
        // The target drawn here is never used or shown; the human picks one.
        const GameInstance game = config.world_spec().instantiate(seed);

        out << "Objects:\n";
        print_object_table(game, out);
        out << "Pick one object in secret. Answer each question with y, n or na.\n";

        DialogueState state(game);
        Rng rng(derive_seed(seed, Stream::kEvalRollout, 0));
        while (state.round_index() < config.rollout.j_max) {
            const auto choice = select_action(params, state, SelectionMode::kGreedy, rng);
            if (choice.action.is_stop()) {
                out << "I have enough information.\n";
                break;
            }
            const auto& q = choice.action.question();
            const auto& attr = game.schema->attribute(q.attribute);
            std::optional<Answer> answer;
            while (!answer) {
                out << "Q" << state.round_index() + 1 << ": is its " << attr.name << " "
                    << attr.values.at(static_cast<std::size_t>(q.value)) << "? [y/n/na] " << std::flush;
                std::string line;
                if (!std::getline(in, line)) {
                    out << "\nend of input, stopping.\n";
                    return kExitOk;
                }
                answer = parse_answer(lower_trimmed(line));
                if (!answer) out << "please answer y, n or na\n";
            }
            state.record({q, *answer});
        }

        Rng guess_rng(derive_seed(seed, Stream::kGuesser, 0));
        const ObjectId g = guess(game, state.history(), config.rollout.guesser, guess_rng);
        const auto consistent = consistent_set(state);
        out << "My guess: object " << g << " (" << describe(game, g) << ")\n";
        out << "Objects consistent with your answers:";
        if (consistent.empty()) out << " none (some answers contradict each other)";
        for (ObjectId id : consistent) out << ' ' << id;
        out << "\n";
        return kExitOk;
    });
}

int cmd_replay(const fs::path& replay_file, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const ReplayDocument replay = replay_from_json(read_json_file(replay_file));
        const auto mismatches = verify_replay(replay);
        out << replay.episodes.size() - mismatches.size() << "/" << replay.episodes.size()
            << " episodes reproduced exactly\n";
        for (auto i : mismatches) out << "mismatch: episode " << i << "\n";
        return mismatches.empty() ? kExitOk : kExitFailure;
    });
}

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Tree-structured question-asking games: training, evaluation, ablations, play", "treeq"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    ConfigSource source;
    fs::path out_dir = "out";
    std::optional<std::uint64_t> seed;
    EvalOptions eval;
    std::optional<fs::path> checkpoint;
    fs::path replay_file;

    const auto add_config = [&](CLI::App* sub) {
        sub->add_option("--config", source.config_path, "experiment config (key=value or JSON)")->check(CLI::ExistingFile);
        sub->add_option("--set", source.overrides, "override a config key (key=value), repeatable");
    };

    auto* train_cmd = app.add_subcommand("train", "train a policy");
    add_config(train_cmd);
    train_cmd->add_option("--out", out_dir, "output directory");
    train_cmd->add_option("--seed", seed, "master seed (overrides 'seed')");

    auto* eval_cmd = app.add_subcommand("eval", "evaluate a checkpoint");
    add_config(eval_cmd);
    eval_cmd->add_option("--checkpoint", eval.checkpoint, "checkpoint JSON")->required()->check(CLI::ExistingFile);
    eval_cmd->add_option("--out", out_dir, "output directory");
    eval_cmd->add_option("--mode", eval.mode, "greedy, sample or both");
    eval_cmd->add_option("--games", eval.games, "number of evaluation games");
    eval_cmd->add_option("--seed", eval.seed, "evaluation seed");
    eval_cmd->add_flag("--replay", eval.write_replay, "write per-game replay files");

    auto* ablate_cmd = app.add_subcommand("ablate", "run the reward ablation suite");
    add_config(ablate_cmd);
    ablate_cmd->add_option("--out", out_dir, "output directory");
    ablate_cmd->add_option("--seed", seed, "train a single seed instead of 'ablate.seeds'");

    auto* play_cmd = app.add_subcommand("play", "answer the agent's questions yourself");
    add_config(play_cmd);
    play_cmd->add_option("--checkpoint", checkpoint, "checkpoint JSON (default: hand-set bisection policy)")
        ->check(CLI::ExistingFile);
    play_cmd->add_option("--seed", seed, "world seed");

    auto* replay_cmd = app.add_subcommand("replay", "verify a replay file");
    replay_cmd->add_option("--replay", replay_file, "replay JSON")->required()->check(CLI::ExistingFile);

    auto* keys_cmd = app.add_subcommand("keys", "list config keys");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitConfig;
    }

    if (train_cmd->parsed()) {
        if (seed) source.overrides.push_back("seed=" + std::to_string(*seed));
        return cmd_train(source, out_dir, out, err);
    }
    if (eval_cmd->parsed()) return cmd_eval(source, eval, out_dir, out, err);
    if (ablate_cmd->parsed()) {
        if (seed) source.overrides.push_back("ablate.seeds=" + std::to_string(*seed));
        return cmd_ablate(source, out_dir, out, err);
    }
    if (play_cmd->parsed()) return cmd_play(source, checkpoint, seed.value_or(0), in, out, err);
    if (replay_cmd->parsed()) return cmd_replay(replay_file, out, err);
    if (keys_cmd->parsed()) {
        const ExperimentConfig defaults;
        const auto values = defaults.to_map();
        for (const auto& [key, doc] : config_key_docs())
            out << key << " (default " << values.at(key) << "): " << doc << "\n";
        return kExitOk;
    }
    return kExitConfig;
}

}  // namespace treeq
