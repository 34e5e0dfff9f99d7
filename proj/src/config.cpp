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

#include "treeq/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

#include "json.hpp"
#include "treeq/errors.hpp"

namespace treeq {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, std::string_view expected) {
    throw ValidationError("config key '" + std::string(key) + "': cannot parse '" + std::string(value) + "' as " +
                          std::string(expected));
}

template <class T>
T parse_integer(std::string_view key, std::string_view value) {
    T out{};
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc() || ptr != value.data() + value.size()) bad_value(key, value, "a non-negative integer");
    return out;
}

double parse_real(std::string_view key, std::string_view value) {
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc() || ptr != value.data() + value.size() || !std::isfinite(out))
        bad_value(key, value, "a finite real");
    return out;
}

bool parse_bool(std::string_view key, std::string_view value) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    bad_value(key, value, "a boolean");
}

SelectionMode parse_mode(std::string_view key, std::string_view value) {
    if (value == "greedy") return SelectionMode::kGreedy;
    if (value == "sample") return SelectionMode::kSample;
    bad_value(key, value, "greedy|sample");
}

std::string render(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string render(bool v) { return v ? "true" : "false"; }

template <class T>
std::string render_list(const std::vector<T>& items, const std::function<std::string(const T&)>& fn) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += ',';
        out += fn(items[i]);
    }
    return out;
}

struct KeySpec {
    std::string doc;
    std::function<void(ExperimentConfig&, std::string_view key, std::string_view value)> set;
    std::function<std::string(const ExperimentConfig&)> get;
};

#define TREEQ_SIZE_KEY(field) \
    [](ExperimentConfig& c, std::string_view k, std::string_view v) { c.field = parse_integer<std::size_t>(k, v); }, \
        [](const ExperimentConfig& c) { return std::to_string(c.field); }
#define TREEQ_U64_KEY(field) \
    [](ExperimentConfig& c, std::string_view k, std::string_view v) { c.field = parse_integer<std::uint64_t>(k, v); }, \
        [](const ExperimentConfig& c) { return std::to_string(c.field); }
#define TREEQ_REAL_KEY(field) \
    [](ExperimentConfig& c, std::string_view k, std::string_view v) { c.field = parse_real(k, v); }, \
        [](const ExperimentConfig& c) { return render(c.field); }
#define TREEQ_BOOL_KEY(field) \
    [](ExperimentConfig& c, std::string_view k, std::string_view v) { c.field = parse_bool(k, v); }, \
        [](const ExperimentConfig& c) { return render(c.field); }

const std::map<std::string, KeySpec>& key_table() {
    static const std::map<std::string, KeySpec> table = {
        {"seed", {"master seed for training worlds and rollouts", TREEQ_U64_KEY(seed)}},
        {"train.learning_rate", {"SGD step size", TREEQ_REAL_KEY(learning_rate)}},
        {"train.batch_size", {"episodes per policy-gradient update", TREEQ_SIZE_KEY(batch_size)}},
        {"train.epochs", {"training epochs", TREEQ_SIZE_KEY(epochs)}},
        {"train.games_per_epoch", {"games played per epoch", TREEQ_SIZE_KEY(games_per_epoch)}},
        {"train.baseline_decay", {"EMA decay of the return baseline, in [0,1)", TREEQ_REAL_KEY(baseline_decay)}},
        {"train.per_round_shaping", {"credit actions with reward-to-go", TREEQ_BOOL_KEY(per_round_shaping)}},
        {"train.fixed_world", {"reuse a single world during training", TREEQ_BOOL_KEY(fixed_world)}},
        {"train.workers",
         {"rollout threads (results do not depend on it)",
          [](ExperimentConfig& c, std::string_view k, std::string_view v) {
              c.workers = parse_integer<unsigned>(k, v);
          },
          [](const ExperimentConfig& c) { return std::to_string(c.workers); }}},
        {"policy.temperature", {"softmax temperature", TREEQ_REAL_KEY(temperature)}},
        {"policy.stop_enabled", {"allow the STOP action from round 2 on", TREEQ_BOOL_KEY(stop_enabled)}},
        {"game.j_max", {"maximum number of question rounds", TREEQ_SIZE_KEY(rollout.j_max)}},
        {"reward.alpha", {"success bonus inside r_c", TREEQ_REAL_KEY(rollout.reward.alpha)}},
        {"reward.beta", {"weight of the candidate-narrowing term of r_c", TREEQ_REAL_KEY(rollout.reward.beta)}},
        {"reward.gamma", {"weight of r_b", TREEQ_REAL_KEY(rollout.reward.gamma)}},
        {"reward.use_rs", {"add the 0-1 success reward r_s", TREEQ_BOOL_KEY(rollout.reward.use_rs)}},
        {"reward.include_alpha_with_rs",
         {"keep alpha in r_c when use_rs is set", TREEQ_BOOL_KEY(rollout.reward.include_alpha_with_rs)}},
        {"reward.rb_aggregation",
         {"sum|mean over rounds",
          [](ExperimentConfig& c, std::string_view k, std::string_view v) {
              if (v == "sum") c.rollout.reward.rb_aggregation = RbAggregation::kSum;
              else if (v == "mean") c.rollout.reward.rb_aggregation = RbAggregation::kMean;
              else bad_value(k, v, "sum|mean");
          },
          [](const ExperimentConfig& c) {
              return std::string(c.rollout.reward.rb_aggregation == RbAggregation::kSum ? "sum" : "mean");
          }}},
        {"oracle.noise_rate", {"probability of flipping a yes/no answer", TREEQ_REAL_KEY(rollout.oracle.noise_rate)}},
        {"oracle.seed", {"salt for the oracle noise stream", TREEQ_U64_KEY(rollout.oracle.seed)}},
        {"guesser.mode",
         {"consistent_uniform|soft_consistency",
          [](ExperimentConfig& c, std::string_view k, std::string_view v) {
              if (v == "consistent_uniform") c.rollout.guesser.mode = GuesserMode::kConsistentUniform;
              else if (v == "soft_consistency") c.rollout.guesser.mode = GuesserMode::kSoftConsistency;
              else bad_value(k, v, "consistent_uniform|soft_consistency");
          },
          [](const ExperimentConfig& c) { return std::string(to_string(c.rollout.guesser.mode)); }}},
        {"guesser.softness", {"inverse temperature of soft_consistency", TREEQ_REAL_KEY(rollout.guesser.softness)}},
        {"world.kind",
         {"random|bitworld",
          [](ExperimentConfig& c, std::string_view k, std::string_view v) {
              if (v == "random") c.world_kind = WorldSpec::Kind::kRandom;
              else if (v == "bitworld") c.world_kind = WorldSpec::Kind::kBitworld;
              else bad_value(k, v, "random|bitworld");
          },
          [](const ExperimentConfig& c) {
              return std::string(c.world_kind == WorldSpec::Kind::kRandom ? "random" : "bitworld");
          }}},
        {"world.n_objects", {"objects per random world", TREEQ_SIZE_KEY(n_objects)}},
        {"world.n_bits",
         {"bits of a bitworld (2^n_bits objects)",
          [](ExperimentConfig& c, std::string_view k, std::string_view v) { c.n_bits = parse_integer<int>(k, v); },
          [](const ExperimentConfig& c) { return std::to_string(c.n_bits); }}},
        {"world.schema",
         {"default | grid | name:v1,v2;name2?:a,b",
          [](ExperimentConfig& c, std::string_view, std::string_view v) { c.schema = std::string(v); },
          [](const ExperimentConfig& c) { return c.schema; }}},
        {"world.n_attributes", {"attributes of the grid schema", TREEQ_SIZE_KEY(n_attributes)}},
        {"world.n_values", {"values per attribute of the grid schema", TREEQ_SIZE_KEY(n_values)}},
        {"eval.n_games", {"evaluation games", TREEQ_SIZE_KEY(eval_games)}},
        {"eval.modes",
         {"comma list of greedy|sample",
          [](ExperimentConfig& c, std::string_view k, std::string_view v) {
              c.eval_modes.clear();
              for (auto item : split(v, ',')) c.eval_modes.push_back(parse_mode(k, item));
          },
          [](const ExperimentConfig& c) {
              return render_list<SelectionMode>(c.eval_modes,
                                                [](const SelectionMode& m) { return std::string(to_string(m)); });
          }}},
        {"eval.seed", {"master seed of the evaluation worlds", TREEQ_U64_KEY(eval_seed)}},
        {"checkpoint.every", {"write a checkpoint every N epochs (0: final only)", TREEQ_SIZE_KEY(checkpoint_every)}},
        {"ablate.seeds",
         {"comma list of training seeds for ablations",
          [](ExperimentConfig& c, std::string_view k, std::string_view v) {
              c.ablate_seeds.clear();
              for (auto item : split(v, ',')) c.ablate_seeds.push_back(parse_integer<std::uint64_t>(k, item));
          },
          [](const ExperimentConfig& c) {
              return render_list<std::uint64_t>(c.ablate_seeds,
                                                [](const std::uint64_t& s) { return std::to_string(s); });
          }}},
    };
    return table;
}

#undef TREEQ_SIZE_KEY
#undef TREEQ_U64_KEY
#undef TREEQ_REAL_KEY
#undef TREEQ_BOOL_KEY

}  // namespace

SchemaPtr parse_schema(std::string_view text) {
    std::vector<Attribute> attrs;
    for (auto part : split(text, ';')) {
        if (part.empty()) continue;
        const auto colon = part.find(':');
        if (colon == std::string_view::npos) throw ValidationError("schema attribute needs 'name:values': " + std::string(part));
        Attribute attr;
        auto name = trim(part.substr(0, colon));
        if (!name.empty() && name.back() == '?') {
            attr.optional = true;
            name.remove_suffix(1);
        }
        attr.name = std::string(name);
        for (auto v : split(part.substr(colon + 1), ',')) attr.values.emplace_back(v);
        attrs.push_back(std::move(attr));
    }
    if (attrs.empty()) throw ValidationError("schema must be non-empty");
    return std::make_shared<const AttributeSchema>(std::move(attrs));
}

void ExperimentConfig::validate() const {
    train_config().validate();
    if (eval_games < 1) throw ValidationError("eval.n_games must be positive");
    if (eval_modes.empty()) throw ValidationError("eval.modes must name at least one mode");
    if (ablate_seeds.empty()) throw ValidationError("ablate.seeds must name at least one seed");
    if (workers < 1) throw ValidationError("train.workers must be positive");
}

WorldSpec ExperimentConfig::world_spec() const {
    WorldSpec w;
    w.kind = world_kind;
    w.n_objects = n_objects;
    w.n_bits = n_bits;
    if (schema == "default") w.schema = default_schema();
    else if (schema == "grid") w.schema = make_grid_schema(n_attributes, n_values);
    else w.schema = parse_schema(schema);
    return w;
}

TrainConfig ExperimentConfig::train_config() const {
    TrainConfig t;
    t.learning_rate = learning_rate;
    t.batch_size = batch_size;
    t.epochs = epochs;
    t.games_per_epoch = games_per_epoch;
    t.baseline_decay = baseline_decay;
    t.master_seed = seed;
    t.per_round_shaping = per_round_shaping;
    t.fixed_world = fixed_world;
    t.temperature = temperature;
    t.stop_enabled = stop_enabled;
    t.workers = workers;
    t.rollout = rollout;
    t.world = world_spec();
    return t;
}

std::map<std::string, std::string> ExperimentConfig::to_map() const {
    std::map<std::string, std::string> out;
    for (const auto& [key, spec] : key_table()) out[key] = spec.get(*this);
    return out;
}

std::string ExperimentConfig::canonical_text() const {
    std::string out;
    for (const auto& [key, value] : to_map()) out += key + "=" + value + "\n";
    return out;
}

std::string ExperimentConfig::digest() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : canonical_text()) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

const std::map<std::string, std::string>& config_key_docs() {
    static const std::map<std::string, std::string> docs = [] {
        std::map<std::string, std::string> d;
        for (const auto& [key, spec] : key_table()) d[key] = spec.doc;
        return d;
    }();
    return docs;
}

void set_config_value(ExperimentConfig& config, std::string_view key, std::string_view value) {
    const auto& table = key_table();
    const auto it = table.find(std::string(key));
    if (it == table.end()) throw ValidationError("unknown config key '" + std::string(key) + "'");
    it->second.set(config, key, trim(value));
}

void apply_override(ExperimentConfig& config, std::string_view assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos) throw ValidationError("override must be key=value: " + std::string(assignment));
    set_config_value(config, trim(assignment.substr(0, eq)), assignment.substr(eq + 1));
}

ExperimentConfig parse_config_text(std::string_view text) {
    ExperimentConfig config;
    std::size_t line_no = 0;
    for (auto line : split(text, '\n')) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = trim(line.substr(0, hash));
        if (line.empty()) continue;
        try {
            apply_override(config, line);
        } catch (const ValidationError& e) {
            throw ValidationError("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return config;
}

namespace {

void flatten_json(const nlohmann::json& node, const std::string& prefix, ExperimentConfig& config) {
    if (node.is_object()) {
        for (const auto& [k, v] : node.items()) flatten_json(v, prefix.empty() ? k : prefix + "." + k, config);
        return;
    }
    std::string value;
    if (node.is_string()) {
        value = node.get<std::string>();
    } else if (node.is_array()) {
        for (std::size_t i = 0; i < node.size(); ++i) {
            if (i) value += ',';
            value += node[i].is_string() ? node[i].get<std::string>() : node[i].dump();
        }
    } else {
        value = node.dump();
    }
    set_config_value(config, prefix, value);
}

}  // namespace

ExperimentConfig parse_config_json(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(std::string("config JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ValidationError("config JSON must be an object");
    ExperimentConfig config;
    flatten_json(doc, "", config);
    return config;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open config " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    const std::string text = ss.str();
    const auto first = text.find_first_not_of(" \t\r\n");
    if (path.extension() == ".json" || (first != std::string::npos && text[first] == '{'))
        return parse_config_json(text);
    return parse_config_text(text);
}

}  // namespace treeq
