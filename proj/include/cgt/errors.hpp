/*
 * Copyright 2026 The cgt Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef CGT_ERRORS_HPP
#define CGT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cgt {

/// Malformed or inconsistent user input (files, labels, flag values).
struct input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The request is well-formed but exceeds an exact-computation cap;
/// the message names the Monte Carlo remedy where one exists.
struct capacity_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace cgt

#endif  // CGT_ERRORS_HPP
