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

#include "treeq/serialize.hpp"

#include <fstream>
#include <sstream>

#include "treeq/errors.hpp"

namespace treeq {

namespace {

void require_version(const Json& doc, const char* kind, int supported) {
    if (!doc.is_object() || !doc.contains("format_version"))
        throw ValidationError(std::string(kind) + " document has no format_version");
    const int v = doc.at("format_version").get<int>();
    if (v != supported)
        throw ValidationError(std::string("unsupported ") + kind + " format_version " + std::to_string(v) +
                              " (expected " + std::to_string(supported) + ")");
}

Json to_json(const Question& q) { return Json::array({q.attribute, q.value}); }

Question question_from_json(const Json& j) { return Question{j.at(0).get<std::size_t>(), j.at(1).get<int>()}; }

Answer answer_from_json(const Json& j) {
    const auto a = parse_answer(j.get<std::string>());
    if (!a) throw ValidationError("bad answer '" + j.get<std::string>() + "'");
    return *a;
}

Json to_json(const RoundStat& s) { return Json::array({s.k, s.l, s.yes_count, s.no_count, s.na_count}); }

RoundStat round_stat_from_json(const Json& j) {
    return RoundStat{j.at(0).get<std::size_t>(), j.at(1).get<std::size_t>(), j.at(2).get<std::size_t>(),
                     j.at(3).get<std::size_t>(), j.at(4).get<std::size_t>()};
}

SelectionMode mode_from_string(const std::string& s) {
    if (s == "greedy") return SelectionMode::kGreedy;
    if (s == "sample") return SelectionMode::kSample;
    throw ValidationError("unknown selection mode '" + s + "'");
}

}  // namespace

Json to_json(const Checkpoint& c) {
    return Json{
        {"format_version", kCheckpointFormatVersion},
        {"feature_names", c.params.feature_names},
        {"theta", c.params.theta},
        {"temperature", c.params.temperature},
        {"stop_enabled", c.params.stop_enabled},
        {"training_config_digest", c.training_config_digest},
        {"rng_seed", c.rng_seed},
        {"epoch", c.epoch},
    };
}

Checkpoint checkpoint_from_json(const Json& doc) {
    require_version(doc, "checkpoint", kCheckpointFormatVersion);
    Checkpoint c;
    c.params.feature_names = doc.at("feature_names").get<std::vector<std::string>>();
    c.params.theta = doc.at("theta").get<std::vector<double>>();
    c.params.temperature = doc.at("temperature").get<double>();
    c.params.stop_enabled = doc.at("stop_enabled").get<bool>();
    c.training_config_digest = doc.at("training_config_digest").get<std::string>();
    c.rng_seed = doc.at("rng_seed").get<std::uint64_t>();
    c.epoch = doc.at("epoch").get<std::size_t>();
    c.params.validate();
    return c;
}

Json to_json(const AttributeSchema& schema) {
    Json attrs = Json::array();
    for (const auto& a : schema.attributes())
        attrs.push_back({{"name", a.name}, {"values", a.values}, {"optional", a.optional}});
    return attrs;
}

SchemaPtr schema_from_json(const Json& doc) {
    std::vector<Attribute> attrs;
    for (const auto& a : doc) {
        attrs.push_back({a.at("name").get<std::string>(), a.at("values").get<std::vector<std::string>>(),
                         a.value("optional", false)});
    }
    return std::make_shared<const AttributeSchema>(std::move(attrs));
}

Json to_json(const GameInstance& game) {
    Json objects = Json::array();
    for (const auto& o : game.objects) objects.push_back(o.values);
    return Json{
        {"format_version", kGameFormatVersion},
        {"schema", to_json(*game.schema)},
        {"objects", objects},
        {"target_id", game.target_id},
        {"seed", game.seed},
    };
}

GameInstance game_from_json(const Json& doc) {
    require_version(doc, "game", kGameFormatVersion);
    GameInstance game;
    game.schema = schema_from_json(doc.at("schema"));
    const auto& objects = doc.at("objects");
    for (std::size_t i = 0; i < objects.size(); ++i)
        game.objects.push_back(ObjectSpec{i, objects[i].get<std::vector<int>>()});
    game.target_id = doc.at("target_id").get<ObjectId>();
    game.seed = doc.at("seed").get<std::uint64_t>();
    validate_game(game);
    return game;
}

Json to_json(const RolloutConfig& c) {
    return Json{
        {"j_max", c.j_max},
        {"reward",
         {{"alpha", c.reward.alpha},
          {"beta", c.reward.beta},
          {"gamma", c.reward.gamma},
          {"use_rs", c.reward.use_rs},
          {"include_alpha_with_rs", c.reward.include_alpha_with_rs},
          {"rb_aggregation", c.reward.rb_aggregation == RbAggregation::kSum ? "sum" : "mean"}}},
        {"oracle", {{"noise_rate", c.oracle.noise_rate}, {"seed", c.oracle.seed}}},
        {"guesser", {{"mode", std::string(to_string(c.guesser.mode))}, {"softness", c.guesser.softness}}},
    };
}

RolloutConfig rollout_config_from_json(const Json& doc) {
    RolloutConfig c;
    c.j_max = doc.at("j_max").get<std::size_t>();
    const auto& r = doc.at("reward");
    c.reward.alpha = r.at("alpha").get<double>();
    c.reward.beta = r.at("beta").get<double>();
    c.reward.gamma = r.at("gamma").get<double>();
    c.reward.use_rs = r.at("use_rs").get<bool>();
    c.reward.include_alpha_with_rs = r.at("include_alpha_with_rs").get<bool>();
    c.reward.rb_aggregation = r.at("rb_aggregation").get<std::string>() == "mean" ? RbAggregation::kMean
                                                                                  : RbAggregation::kSum;
    c.oracle.noise_rate = doc.at("oracle").at("noise_rate").get<double>();
    c.oracle.seed = doc.at("oracle").at("seed").get<std::uint64_t>();
    const auto mode = doc.at("guesser").at("mode").get<std::string>();
    c.guesser.mode = mode == "soft_consistency" ? GuesserMode::kSoftConsistency : GuesserMode::kConsistentUniform;
    c.guesser.softness = doc.at("guesser").at("softness").get<double>();
    c.validate();
    return c;
}

Json to_json(const EpisodeRecord& r) {
    Json actions = Json::array();
    for (const auto& a : r.actions) {
        actions.push_back({{"action", a.action.is_stop() ? Json("STOP") : to_json(a.action.question())},
                           {"log_prob", a.log_prob},
                           {"score_gradient", a.score_gradient}});
    }
    Json history = Json::array();
    for (const auto& e : r.history) history.push_back({to_json(e.question), std::string(to_string(e.answer))});
    Json rounds = Json::array();
    for (const auto& s : r.round_stats) rounds.push_back(to_json(s));
    return Json{
        {"game_seed", r.game_seed},
        {"target_id", r.target_id},
        {"n_objects", r.n_objects},
        {"actions", actions},
        {"history", history},
        {"round_stats", rounds},
        {"candidates_after", r.candidates_after},
        {"k_end", r.k_end},
        {"candidates_exhausted", r.candidates_exhausted},
        {"guess", r.guess},
        {"guess_correct", r.guess_correct},
        {"r_b", r.r_b},
        {"r_c", r.r_c},
        {"r_s", r.r_s},
        {"total_return", r.total_return},
        {"j_end", r.j_end},
    };
}

EpisodeRecord episode_from_json(const Json& doc) {
    EpisodeRecord r;
    r.game_seed = doc.at("game_seed").get<std::uint64_t>();
    r.target_id = doc.at("target_id").get<ObjectId>();
    r.n_objects = doc.at("n_objects").get<std::size_t>();
    for (const auto& a : doc.at("actions")) {
        ActionChoice c;
        const auto& act = a.at("action");
        c.action = act.is_string() ? Action::stop() : Action::ask(question_from_json(act));
        c.log_prob = a.at("log_prob").get<double>();
        c.score_gradient = a.at("score_gradient").get<std::vector<double>>();
        r.actions.push_back(std::move(c));
    }
    for (const auto& e : doc.at("history"))
        r.history.push_back({question_from_json(e.at(0)), answer_from_json(e.at(1))});
    for (const auto& s : doc.at("round_stats")) r.round_stats.push_back(round_stat_from_json(s));
    r.candidates_after = doc.at("candidates_after").get<std::vector<std::size_t>>();
    r.k_end = doc.at("k_end").get<std::size_t>();
    r.candidates_exhausted = doc.at("candidates_exhausted").get<bool>();
    r.guess = doc.at("guess").get<ObjectId>();
    r.guess_correct = doc.at("guess_correct").get<bool>();
    r.r_b = doc.at("r_b").get<double>();
    r.r_c = doc.at("r_c").get<double>();
    r.r_s = doc.at("r_s").get<double>();
    r.total_return = doc.at("total_return").get<double>();
    r.j_end = doc.at("j_end").get<std::size_t>();
    return r;
}

Json to_json(const ReplayDocument& replay) {
    Json episodes = Json::array();
    for (const auto& e : replay.episodes)
        episodes.push_back({{"game", to_json(e.game)}, {"rollout_seed", e.rollout_seed}, {"record", to_json(e.record)}});
    return Json{
        {"format_version", kReplayFormatVersion},
        {"config_digest", replay.config_digest},
        {"master_seed", replay.master_seed},
        {"mode", std::string(to_string(replay.mode))},
        {"policy", to_json(Checkpoint{replay.params, replay.config_digest, replay.master_seed, 0})},
        {"rollout", to_json(replay.rollout)},
        {"episodes", episodes},
    };
}

ReplayDocument replay_from_json(const Json& doc) {
    require_version(doc, "replay", kReplayFormatVersion);
    ReplayDocument r;
    r.config_digest = doc.at("config_digest").get<std::string>();
    r.master_seed = doc.at("master_seed").get<std::uint64_t>();
    r.mode = mode_from_string(doc.at("mode").get<std::string>());
    r.params = checkpoint_from_json(doc.at("policy")).params;
    r.rollout = rollout_config_from_json(doc.at("rollout"));
    for (const auto& e : doc.at("episodes")) {
        r.episodes.push_back(
            {game_from_json(e.at("game")), e.at("rollout_seed").get<std::uint64_t>(), episode_from_json(e.at("record"))});
    }
    return r;
}

std::vector<std::size_t> verify_replay(const ReplayDocument& replay) {
    std::vector<std::size_t> mismatches;
    for (std::size_t i = 0; i < replay.episodes.size(); ++i) {
        const auto& e = replay.episodes[i];
        Rng rng(e.rollout_seed);
        if (rollout(replay.params, e.game, replay.rollout, replay.mode, rng) != e.record) mismatches.push_back(i);
    }
    return mismatches;
}

Json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open " + path.string());
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ValidationError(path.string() + ": " + e.what());
    }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

void write_json_file(const std::filesystem::path& path, const Json& doc) { write_text_file(path, doc.dump(2) + "\n"); }

}  // namespace treeq
