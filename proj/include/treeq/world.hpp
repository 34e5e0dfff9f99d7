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

#ifndef TREEQ_WORLD_HPP_
#define TREEQ_WORLD_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace treeq {

using ObjectId = std::size_t;

// Value index stored for an attribute that does not apply to an object.
inline constexpr int kUndefinedValue = -1;
inline constexpr std::string_view kUndefinedName = "UNDEFINED";

struct Attribute {
    std::string name;
    std::vector<std::string> values;
    // Optional attributes may take UNDEFINED in generated worlds.
    bool optional = false;

    bool operator==(const Attribute&) const = default;
};

// Ordered, immutable list of categorical attributes. Every attribute has at
// least two distinct values; attribute names are unique.
class AttributeSchema {
  public:
    explicit AttributeSchema(std::vector<Attribute> attributes);

    const std::vector<Attribute>& attributes() const { return attributes_; }
    const Attribute& attribute(std::size_t i) const { return attributes_.at(i); }
    std::size_t size() const { return attributes_.size(); }

    std::optional<std::size_t> find_attribute(std::string_view name) const;
    std::optional<int> find_value(std::size_t attribute, std::string_view value) const;

    // Sum over attributes of the number of values.
    std::size_t question_count() const;

    bool operator==(const AttributeSchema&) const = default;

  private:
    std::vector<Attribute> attributes_;
};

using SchemaPtr = std::shared_ptr<const AttributeSchema>;

// attribute_count x value_count schema named attr0.., values v0..
SchemaPtr make_grid_schema(std::size_t attribute_count, std::size_t value_count);

// The 4 x 4 experiment schema: color, shape, size, material.
SchemaPtr default_schema();

struct ObjectSpec {
    ObjectId id = 0;
    // One value index per schema attribute, or kUndefinedValue.
    std::vector<int> values;

    bool operator==(const ObjectSpec&) const = default;
};

std::string_view value_name(const AttributeSchema& schema, const ObjectSpec& object, std::size_t attribute);

struct GameInstance {
    SchemaPtr schema;
    std::vector<ObjectSpec> objects;
    ObjectId target_id = 0;
    std::uint64_t seed = 0;

    std::size_t size() const { return objects.size(); }
    const ObjectSpec& target() const { return objects.at(target_id); }
};

bool operator==(const GameInstance& a, const GameInstance& b);

// Throws ValidationError unless every GameInstance invariant holds.
void validate_game(const GameInstance& game);

// Equality predicate "is <attribute> <value>?". Never refers to UNDEFINED.
struct Question {
    std::size_t attribute = 0;
    int value = 0;

    auto operator<=>(const Question&) const = default;
};

Question make_question(const AttributeSchema& schema, std::string_view attribute, std::string_view value);
std::string to_string(const AttributeSchema& schema, const Question& question);

enum class Answer { kYes, kNo, kNA };

std::string_view to_string(Answer answer);
std::optional<Answer> parse_answer(std::string_view text);

// A question together with the answer it received.
struct Exchange {
    Question question;
    Answer answer = Answer::kNA;

    bool operator==(const Exchange&) const = default;
};

enum class TargetRule { kUniformRandom };

// Attribute values uniform per object per attribute (UNDEFINED included as an
// extra outcome for optional attributes), target uniform. Pure in its inputs.
GameInstance generate_world(std::uint64_t seed, std::size_t n_objects, SchemaPtr schema,
                            TargetRule target_rule = TargetRule::kUniformRandom);

// 2^n_bits objects; object j carries bit i of j in attribute bit_i.
GameInstance make_bitworld(int n_bits, std::uint64_t seed = 0);

// One question per (attribute, value), in schema order.
std::vector<Question> enumerate_questions(const AttributeSchema& schema);

// Which family of worlds an experiment draws from.
struct WorldSpec {
    enum class Kind { kRandom, kBitworld };

    Kind kind = Kind::kRandom;
    std::size_t n_objects = 16;
    SchemaPtr schema = default_schema();
    int n_bits = 3;

    GameInstance instantiate(std::uint64_t seed) const;
    std::size_t object_count() const;
};

}  // namespace treeq

#endif  // TREEQ_WORLD_HPP_
