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

#ifndef TREEQ_ERRORS_HPP_
#define TREEQ_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace treeq {

// Bad arguments or configuration values. The CLI maps this to exit code 2.
class ValidationError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

// A question refers to an attribute the object does not carry.
class SchemaMismatchError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Internal bookkeeping violated an invariant that cannot fail with a truthful oracle.
class ConsistencyError : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

// Non-finite values during optimization. The CLI maps this to exit code 3.
class NumericError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace treeq

#endif  // TREEQ_ERRORS_HPP_
