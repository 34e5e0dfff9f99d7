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

#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "treeq/config.hpp"
#include "treeq/errors.hpp"
#include "treeq/serialize.hpp"

using namespace treeq;

TEST_CASE("defaults") {
    const ExperimentConfig c;
    CHECK_NOTHROW(c.validate());
    const auto t = c.train_config();
    CHECK(t.learning_rate == 0.001);
    CHECK(t.batch_size == 64);
    CHECK(t.epochs == 150);
    CHECK(t.rollout.j_max == 5);
    CHECK(t.rollout.reward.alpha == 4.0);
    CHECK(t.rollout.reward.beta == 0.7);
    CHECK(t.world.object_count() == 16);
    CHECK(c.world_spec().schema->size() == 4);
}

TEST_CASE("key=value text") {
    const auto c = parse_config_text(
        "# comment\n"
        "seed = 7\n"
        "\n"
        "train.epochs=3\n"
        "reward.use_rs=true\n"
        "reward.rb_aggregation = mean\n"
        "game.j_max=6  # trailing\n"
        "world.kind=bitworld\n"
        "world.n_bits=4\n"
        "eval.modes=sample\n"
        "ablate.seeds=3,5\n");
    CHECK(c.seed == 7);
    CHECK(c.epochs == 3);
    CHECK(c.rollout.reward.use_rs);
    CHECK(c.rollout.reward.rb_aggregation == RbAggregation::kMean);
    CHECK(c.rollout.j_max == 6);
    CHECK(c.world_spec().object_count() == 16);
    CHECK(c.eval_modes == std::vector<SelectionMode>{SelectionMode::kSample});
    CHECK(c.ablate_seeds == std::vector<std::uint64_t>{3, 5});
}

TEST_CASE("rejections") {
    CHECK_THROWS_AS(parse_config_text("train.epoch=3\n"), ValidationError);
    CHECK_THROWS_AS(parse_config_text("train.epochs\n"), ValidationError);
    CHECK_THROWS_AS(parse_config_text("train.epochs=three\n"), ValidationError);
    CHECK_THROWS_AS(parse_config_text("reward.use_rs=maybe\n"), ValidationError);
    CHECK_THROWS_AS(parse_config_text("train.learning_rate=-1\n").validate(), ValidationError);
    CHECK_THROWS_AS(parse_config_text("game.j_max=0\n").validate(), ValidationError);
    CHECK_THROWS_AS(parse_config_json("{\"train\": {\"bogus\": 1}}"), ValidationError);
    CHECK_THROWS_AS(parse_config_json("[1, 2]"), ValidationError);
    CHECK_THROWS_AS(parse_config_json("{"), ValidationError);
    ExperimentConfig c;
    CHECK_THROWS_AS(apply_override(c, "seed"), ValidationError);
    CHECK_THROWS_AS(apply_override(c, "nope=1"), ValidationError);
}

TEST_CASE("json input matches text input") {
    const auto a = parse_config_json(R"({"seed": 3, "train": {"epochs": 2, "learning_rate": 0.01}, "reward": {"use_rs": true}})");
    const auto b = parse_config_text("seed=3\ntrain.epochs=2\ntrain.learning_rate=0.01\nreward.use_rs=true\n");
    CHECK(a.canonical_text() == b.canonical_text());
    CHECK(a.digest() == b.digest());
}

TEST_CASE("digest") {
    ExperimentConfig a;
    const std::string d = a.digest();
    CHECK(d.size() == 16);
    CHECK(d == ExperimentConfig{}.digest());
    apply_override(a, "reward.gamma=0.5");
    CHECK(a.digest() != d);
    CHECK(a.to_map().at("reward.gamma") == "0.5");

    // canonical text parses back to the same config
    const auto again = parse_config_text(a.canonical_text());
    CHECK(again.canonical_text() == a.canonical_text());
}

TEST_CASE("every documented key round-trips") {
    const ExperimentConfig c;
    const auto m = c.to_map();
    for (const auto& [key, doc] : config_key_docs()) {
        CHECK_MESSAGE(m.count(key) == 1, key);
        CHECK_FALSE(doc.empty());
        ExperimentConfig copy;
        CHECK_NOTHROW(set_config_value(copy, key, m.at(key)));
    }
    CHECK(m.size() == config_key_docs().size());
}

TEST_CASE("schema text") {
    const auto s = parse_schema("color:red,blue;size?:big,small,tiny");
    REQUIRE(s->size() == 2);
    CHECK(s->attributes()[1].optional);
    CHECK(s->attributes()[1].values.size() == 3);
    CHECK_THROWS(parse_schema("color"));
    CHECK_THROWS(parse_schema("color:red"));
    CHECK_THROWS(parse_schema("a:x,y;a:x,y"));
    auto c = parse_config_text("world.schema=grid\nworld.n_attributes=2\nworld.n_values=3\n");
    CHECK(c.world_spec().schema->question_count() == 6);
}

TEST_CASE("load_config picks the format") {
    const auto dir = std::filesystem::temp_directory_path() / "treeq_config_test";
    std::filesystem::create_directories(dir);
    {
        std::ofstream(dir / "a.cfg") << "seed=9\n";
        std::ofstream(dir / "b.json") << "{\"seed\": 9}";
    }
    CHECK(load_config(dir / "a.cfg").seed == 9);
    CHECK(load_config(dir / "b.json").seed == 9);
    CHECK_THROWS_AS(load_config(dir / "missing.cfg"), ValidationError);
    std::filesystem::remove_all(dir);
}

TEST_CASE("checkpoint json") {
    Checkpoint ck;
    ck.params.theta = {1, -2, 0.5, 0.25, -0.25, 3};
    ck.params.temperature = 0.5;
    ck.training_config_digest = "0123456789abcdef";
    ck.rng_seed = 11;
    ck.epoch = 150;
    const Json doc = to_json(ck);
    CHECK(doc.at("format_version") == kCheckpointFormatVersion);
    CHECK(checkpoint_from_json(doc) == ck);

    Json bad = doc;
    bad["format_version"] = 99;
    CHECK_THROWS_AS(checkpoint_from_json(bad), ValidationError);
    bad = doc;
    bad["feature_names"][0] = "other";
    CHECK_THROWS_AS(checkpoint_from_json(bad), ValidationError);
}

TEST_CASE("game and episode json") {
    const auto game = generate_world(21, 12, parse_schema("color:red,blue,green;size?:big,small"));
    CHECK(game_from_json(to_json(game)) == game);

    RolloutConfig cfg;
    cfg.reward.use_rs = true;
    cfg.oracle.noise_rate = 0.1;
    Rng rng(5);
    PolicyParams p;
    p.theta = {1, -1, 0.5, 0, 0, 1};
    const auto ep = rollout(p, game, cfg, SelectionMode::kSample, rng);
    CHECK(episode_from_json(to_json(ep)) == ep);
    const auto back = rollout_config_from_json(to_json(cfg));
    CHECK(back.oracle.noise_rate == 0.1);
    CHECK(back.reward.use_rs);
}
