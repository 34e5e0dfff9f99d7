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

#include "treeq/world.hpp"

#include <algorithm>
#include <set>

#include "treeq/errors.hpp"
#include "treeq/rng.hpp"

namespace treeq {

AttributeSchema::AttributeSchema(std::vector<Attribute> attributes) : attributes_(std::move(attributes)) {
    std::set<std::string_view> names;
    for (const auto& attr : attributes_) {
        if (attr.name.empty()) throw ValidationError("attribute name must be non-empty");
        if (!names.insert(attr.name).second) throw ValidationError("duplicate attribute name: " + attr.name);
        if (attr.values.size() < 2) throw ValidationError("attribute '" + attr.name + "' needs at least two values");
        std::set<std::string_view> values;
        for (const auto& v : attr.values) {
            if (v.empty() || v == kUndefinedName)
                throw ValidationError("attribute '" + attr.name + "' has an invalid value '" + v + "'");
            if (!values.insert(v).second)
                throw ValidationError("attribute '" + attr.name + "' repeats value '" + v + "'");
        }
    }
}

std::optional<std::size_t> AttributeSchema::find_attribute(std::string_view name) const {
    for (std::size_t i = 0; i < attributes_.size(); ++i) {
        if (attributes_[i].name == name) return i;
    }
    return std::nullopt;
}

std::optional<int> AttributeSchema::find_value(std::size_t attribute, std::string_view value) const {
    if (attribute >= attributes_.size()) return std::nullopt;
    const auto& values = attributes_[attribute].values;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] == value) return static_cast<int>(i);
    }
    return std::nullopt;
}

std::size_t AttributeSchema::question_count() const {
    std::size_t n = 0;
    for (const auto& attr : attributes_) n += attr.values.size();
    return n;
}

SchemaPtr make_grid_schema(std::size_t attribute_count, std::size_t value_count) {
    if (attribute_count == 0) throw ValidationError("schema needs at least one attribute");
    std::vector<Attribute> attrs;
    for (std::size_t a = 0; a < attribute_count; ++a) {
        Attribute attr{"attr" + std::to_string(a), {}, false};
        for (std::size_t v = 0; v < value_count; ++v) attr.values.push_back("v" + std::to_string(v));
        attrs.push_back(std::move(attr));
    }
    return std::make_shared<const AttributeSchema>(std::move(attrs));
}

SchemaPtr default_schema() {
    static const SchemaPtr schema = std::make_shared<const AttributeSchema>(std::vector<Attribute>{
        {"color", {"red", "green", "blue", "yellow"}, false},
        {"shape", {"cube", "sphere", "cylinder", "cone"}, false},
        {"size", {"tiny", "small", "medium", "large"}, false},
        {"material", {"metal", "rubber", "glass", "wood"}, false},
    });
    return schema;
}

std::string_view value_name(const AttributeSchema& schema, const ObjectSpec& object, std::size_t attribute) {
    const int v = object.values.at(attribute);
    if (v == kUndefinedValue) return kUndefinedName;
    return schema.attribute(attribute).values.at(static_cast<std::size_t>(v));
}

bool operator==(const GameInstance& a, const GameInstance& b) {
    const bool same_schema = a.schema == b.schema || (a.schema && b.schema && *a.schema == *b.schema);
    return same_schema && a.objects == b.objects && a.target_id == b.target_id && a.seed == b.seed;
}

void validate_game(const GameInstance& game) {
    if (!game.schema || game.schema->size() == 0) throw ValidationError("game has no schema");
    const auto n = game.objects.size();
    if (n < 2) throw ValidationError("game needs at least two objects");
    if (game.target_id >= n) throw ValidationError("target id out of range");
    for (std::size_t i = 0; i < n; ++i) {
        const auto& obj = game.objects[i];
        if (obj.id != i) throw ValidationError("object ids must be 0..N-1 in order");
        if (obj.values.size() != game.schema->size())
            throw ValidationError("object " + std::to_string(i) + " does not assign every attribute");
        for (std::size_t a = 0; a < obj.values.size(); ++a) {
            const int v = obj.values[a];
            const auto& attr = game.schema->attribute(a);
            if (v == kUndefinedValue) continue;
            if (v < 0 || static_cast<std::size_t>(v) >= attr.values.size())
                throw ValidationError("object " + std::to_string(i) + " has an out-of-range value for '" +
                                      attr.name + "'");
        }
    }
    const bool degenerate = std::all_of(game.objects.begin(), game.objects.end(),
                                        [&](const ObjectSpec& o) { return o.values == game.objects[0].values; });
    if (degenerate) throw ValidationError("all objects are identical");
}

Question make_question(const AttributeSchema& schema, std::string_view attribute, std::string_view value) {
    const auto a = schema.find_attribute(attribute);
    if (!a) throw ValidationError("unknown attribute '" + std::string(attribute) + "'");
    const auto v = schema.find_value(*a, value);
    if (!v) throw ValidationError("unknown value '" + std::string(value) + "' for '" + std::string(attribute) + "'");
    return Question{*a, *v};
}

std::string to_string(const AttributeSchema& schema, const Question& question) {
    const auto& attr = schema.attribute(question.attribute);
    return attr.name + "=" + attr.values.at(static_cast<std::size_t>(question.value));
}

std::string_view to_string(Answer answer) {
    switch (answer) {
        case Answer::kYes: return "yes";
        case Answer::kNo: return "no";
        case Answer::kNA: return "na";
    }
    return "na";
}

std::optional<Answer> parse_answer(std::string_view text) {
    if (text == "y" || text == "yes") return Answer::kYes;
    if (text == "n" || text == "no") return Answer::kNo;
    if (text == "na" || text == "n/a") return Answer::kNA;
    return std::nullopt;
}

GameInstance generate_world(std::uint64_t seed, std::size_t n_objects, SchemaPtr schema, TargetRule target_rule) {
    if (!schema || schema->size() == 0) throw ValidationError("schema must be non-empty");
    if (n_objects < 2) throw ValidationError("n_objects must be at least 2");

    Rng rng(seed);
    GameInstance game{schema, {}, 0, seed};
    game.objects.resize(n_objects);
    // Redraw on the (improbable) all-identical outcome.
    do {
        for (std::size_t i = 0; i < n_objects; ++i) {
            auto& obj = game.objects[i];
            obj.id = i;
            obj.values.assign(schema->size(), 0);
            for (std::size_t a = 0; a < schema->size(); ++a) {
                const auto& attr = schema->attribute(a);
                const std::size_t outcomes = attr.values.size() + (attr.optional ? 1 : 0);
                const std::size_t pick = rng.index(outcomes);
                obj.values[a] = pick == attr.values.size() ? kUndefinedValue : static_cast<int>(pick);
            }
        }
    } while (std::all_of(game.objects.begin(), game.objects.end(),
                         [&](const ObjectSpec& o) { return o.values == game.objects[0].values; }));

    switch (target_rule) {
        case TargetRule::kUniformRandom: game.target_id = rng.index(n_objects); break;
    }
    return game;
}

GameInstance make_bitworld(int n_bits, std::uint64_t seed) {
    if (n_bits < 1 || n_bits > 20) throw ValidationError("n_bits must be in [1, 20]");
    std::vector<Attribute> attrs;
    for (int i = 0; i < n_bits; ++i) attrs.push_back({"bit_" + std::to_string(i), {"0", "1"}, false});
    auto schema = std::make_shared<const AttributeSchema>(std::move(attrs));

    const std::size_t n = std::size_t{1} << n_bits;
    GameInstance game{schema, {}, 0, seed};
    game.objects.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
        ObjectSpec obj{j, {}};
        for (int i = 0; i < n_bits; ++i) obj.values.push_back(static_cast<int>((j >> i) & 1U));
        game.objects.push_back(std::move(obj));
    }
    Rng rng(derive_seed(seed, Stream::kWorldTarget, 0));
    game.target_id = rng.index(n);
    return game;
}

std::vector<Question> enumerate_questions(const AttributeSchema& schema) {
    std::vector<Question> out;
    out.reserve(schema.question_count());
    for (std::size_t a = 0; a < schema.size(); ++a) {
        for (std::size_t v = 0; v < schema.attribute(a).values.size(); ++v) {
            out.push_back(Question{a, static_cast<int>(v)});
        }
    }
    return out;
}

GameInstance WorldSpec::instantiate(std::uint64_t seed) const {
    switch (kind) {
        case Kind::kRandom: return generate_world(seed, n_objects, schema);
        case Kind::kBitworld: return make_bitworld(n_bits, seed);
    }
    throw ValidationError("unknown world kind");
}

std::size_t WorldSpec::object_count() const {
    return kind == Kind::kBitworld ? (std::size_t{1} << n_bits) : n_objects;
}

}  // namespace treeq
